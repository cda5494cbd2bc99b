//! Command-line front end: score forecasts, verify propriety, repair
//! incoherent credences, scan density gaps, build witnesses, and emit
//! plot-ready figure data.
//!
//! Exit status: 0 on success/pass, 2 on a verified mathematical finding
//! (propriety violation, density gap, failed repair regime), 1 on tool
//! errors. All reports are JSON on standard output; figure data is CSV.

use std::fmt::Write as _;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use properscore::credence::Credence;
use properscore::dominance::{
    brier_projection, build_witness, check_condition_b, find_dominating_probability,
    ConditionBConfig, DominanceError, RepairConfig, WitnessCase, WitnessConfig,
};
use properscore::geometry::{build_sample, density_gap, DensityGapConfig};
use properscore::propriety::{check_propriety, ProprietyConfig, ProprietyMode};
use properscore::rules::{rule_report, RuleRegistry, ScoringRule};
use properscore::space::SampleSpace;

#[derive(Parser)]
#[command(name = "properscore", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct RuleArgs {
    /// Rule spec: brier | spherical | log | two-circle | boundary-bonus |
    /// s-alpha:base=<spec>,alpha=<a> | extended:base=<spec>,x=<file-or-json>
    #[arg(long)]
    rule: String,
    /// Number of outcomes when no credence file fixes the space.
    #[arg(long, default_value_t = 2)]
    outcomes: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Score a credence file under a rule.
    Score {
        #[command(flatten)]
        rule: RuleArgs,
        /// Path to a credence JSON file.
        #[arg(long)]
        credence: String,
    },
    /// Check propriety on a grid and/or the repair condition.
    Verify {
        #[command(flatten)]
        rule: RuleArgs,
        /// Propriety mode to check.
        #[arg(long, value_enum)]
        mode: Option<ModeArg>,
        /// Also run the aggregate repair-condition check.
        #[arg(long)]
        condition_b: bool,
        #[arg(long, default_value_t = 200)]
        resolution: usize,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
    /// Find a probability whose score strictly dominates a credence's.
    Repair {
        #[command(flatten)]
        rule: RuleArgs,
        #[arg(long)]
        credence: String,
        #[arg(long, value_enum, default_value_t = MethodArg::Pipeline)]
        method: MethodArg,
        #[arg(long, default_value_t = 1e-6)]
        margin: f64,
        #[arg(long, default_value_t = 100)]
        resolution: usize,
        #[arg(long, default_value_t = 3200)]
        max_resolution: usize,
    },
    /// Scan the positive-facing hull boundary for density gaps.
    Gap {
        #[command(flatten)]
        rule: RuleArgs,
        #[arg(long, default_value_t = 500)]
        resolution: usize,
        #[arg(long, default_value_t = 1000)]
        directions: usize,
        #[arg(long, default_value_t = 3)]
        face_samples: usize,
        /// Gaps above this exit with status 2.
        #[arg(long, default_value_t = 0.05)]
        gap_tol: f64,
        /// Boundary-refinement ladder size (0 = none).
        #[arg(long, default_value_t = 0)]
        refine: usize,
    },
    /// Build a counterexample witness for a repair-failure case.
    Witness {
        /// bi = self-score limit failure, bii = density-gap failure.
        #[arg(long, value_enum)]
        case: CaseArg,
        /// Rule spec; defaults to the canonical rule for the case.
        #[arg(long)]
        rule: Option<String>,
        #[arg(long, default_value_t = 2)]
        outcomes: usize,
        /// Print a VERIFIED / NOT VERIFIED summary line after the bundle.
        #[arg(long)]
        verify: bool,
        /// Verification grid resolution.
        #[arg(long, default_value_t = 2000)]
        resolution: usize,
    },
    /// Emit CSV figure data: sampled scores, bridging hull edge, witness.
    Figure {
        #[command(flatten)]
        rule: RuleArgs,
        #[arg(long, default_value_t = 500)]
        resolution: usize,
        #[arg(long, default_value_t = 1000)]
        directions: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Proper,
    Strict,
    QuasiStrict,
}

impl From<ModeArg> for ProprietyMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Proper => ProprietyMode::Proper,
            ModeArg::Strict => ProprietyMode::Strict,
            ModeArg::QuasiStrict => ProprietyMode::QuasiStrict,
        }
    }
}

#[derive(Clone, Copy, ValueEnum, PartialEq)]
enum MethodArg {
    Pipeline,
    Projection,
}

#[derive(Clone, Copy, ValueEnum)]
enum CaseArg {
    Bi,
    Bii,
}

/// 0 = success, 2 = verified mathematical finding, 1 = tool error.
struct Report {
    body: String,
    status: u8,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(report) => {
            println!("{}", report.body);
            ExitCode::from(report.status)
        }
        Err(err) => {
            let finding = matches!(
                err.downcast_ref::<DominanceError>(),
                Some(DominanceError::NoDominator { .. } | DominanceError::NoWitness(_))
            );
            let payload = json!({ "error": { "message": format!("{err:#}") } });
            println!("{}", serde_json::to_string_pretty(&payload).expect("error serializes"));
            ExitCode::from(if finding { 2 } else { 1 })
        }
    }
}

fn build_rule(spec: &str, space: &SampleSpace) -> anyhow::Result<Box<dyn ScoringRule>> {
    Ok(RuleRegistry::with_catalog().build(spec, space)?)
}

fn load_credence(path: &str) -> anyhow::Result<Credence> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| anyhow::anyhow!("cannot read credence file `{path}`: {e}"))?;
    Ok(Credence::from_json(&text)?)
}

fn pretty<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("report serializes")
}

fn run(command: Command) -> anyhow::Result<Report> {
    match command {
        Command::Score { rule, credence } => {
            let c = load_credence(&credence)?;
            let r = build_rule(&rule.rule, c.space())?;
            let score = r.score_credence(&c)?;
            let body = pretty(&json!({
                "rule": r.name(),
                "outcomes": c.space().labels(),
                "score": score,
            }));
            Ok(Report { body, status: 0 })
        }

        Command::Verify { rule, mode, condition_b, resolution, tol, seed } => {
            let space = SampleSpace::with_outcomes(rule.outcomes)?;
            let r = build_rule(&rule.rule, &space)?;
            let mut passed = true;
            let mut out = serde_json::Map::new();
            out.insert("rule_report".into(), serde_json::to_value(rule_report(r.as_ref(), resolution.min(64))?)?);
            if let Some(mode) = mode {
                let config = ProprietyConfig { resolution, tol, seed, ..Default::default() };
                let report = check_propriety(r.as_ref(), mode.into(), &config)?;
                passed &= report.passed;
                out.insert("propriety".into(), serde_json::to_value(&report)?);
            }
            if condition_b {
                let report = check_condition_b(r.as_ref(), &ConditionBConfig::default())?;
                passed &= report.overall.holds();
                out.insert("condition_b".into(), serde_json::to_value(&report)?);
            }
            Ok(Report {
                body: pretty(&serde_json::Value::Object(out)),
                status: if passed { 0 } else { 2 },
            })
        }

        Command::Repair { rule, credence, method, margin, resolution, max_resolution } => {
            let c = load_credence(&credence)?;
            let r = build_rule(&rule.rule, c.space())?;
            let result = match method {
                MethodArg::Projection => brier_projection(&c)?.1,
                MethodArg::Pipeline => {
                    let config = RepairConfig {
                        start_resolution: resolution,
                        max_resolution,
                        margin,
                        ..Default::default()
                    };
                    find_dominating_probability(r.as_ref(), &c, &config)?
                }
            };
            Ok(Report { body: pretty(&result), status: 0 })
        }

        Command::Gap { rule, resolution, directions, face_samples, gap_tol, refine } => {
            let space = SampleSpace::with_outcomes(rule.outcomes)?;
            let r = build_rule(&rule.rule, &space)?;
            let sample = build_sample(r.as_ref(), resolution, refine)?;
            let config = DensityGapConfig {
                direction_count: directions,
                face_samples,
                ..Default::default()
            };
            let report = density_gap(&sample, &space, &config)?;
            let status = if report.max_gap > gap_tol { 2 } else { 0 };
            Ok(Report { body: pretty(&report), status })
        }

        Command::Witness { case, rule, outcomes, verify, resolution } => {
            let space = SampleSpace::with_outcomes(outcomes)?;
            let (case, default_rule) = match case {
                CaseArg::Bi => (WitnessCase::SelfScoreLimit, "boundary-bonus"),
                CaseArg::Bii => (WitnessCase::DensityGap, "two-circle"),
            };
            let spec = rule.as_deref().unwrap_or(default_rule);
            let r = build_rule(spec, &space)?;
            let config = WitnessConfig { verify_resolution: resolution, ..Default::default() };
            let bundle = build_witness(case, r.as_ref(), &config)?;
            let mut body = pretty(&bundle);
            if verify {
                let _ = write!(
                    body,
                    "\n{}",
                    if bundle.verification.verified { "VERIFIED" } else { "NOT VERIFIED" }
                );
            }
            let status = if bundle.verification.verified { 0 } else { 2 };
            Ok(Report { body, status })
        }

        Command::Figure { rule, resolution, directions } => {
            let space = SampleSpace::with_outcomes(rule.outcomes)?;
            let r = build_rule(&rule.rule, &space)?;
            let sample = build_sample(r.as_ref(), resolution, 0)?;
            let config = DensityGapConfig { direction_count: directions, ..Default::default() };
            let report = density_gap(&sample, &space, &config)?;

            let n = space.len();
            let mut csv = String::from("role");
            for i in 1..=n {
                let _ = write!(csv, ",x{i}");
            }
            csv.push('\n');
            let mut row = |role: &str, coords: &[f64]| {
                let _ = write!(csv, "{role}");
                for c in coords {
                    let _ = write!(csv, ",{c}");
                }
                csv.push('\n');
            };
            for point in &sample.points {
                row("F", &point.score);
            }
            if let Some(witness) = &report.witness {
                row("hull_edge", &witness.bridge.0);
                row("hull_edge", &witness.bridge.1);
                row("witness", &witness.point);
                row("normal", &witness.certificate.normal);
            }
            Ok(Report { body: csv.trim_end().to_string(), status: 0 })
        }
    }
}
