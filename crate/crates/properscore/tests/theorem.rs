//! The two directions of the repair theory observed simultaneously: for
//! each cataloged rule (under a quasi-strictly proper extension), the
//! aggregate condition holds exactly when a battery of seeded incoherent
//! forecasts can all be repaired, and fails exactly when a verified
//! counterexample witness exists.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use properscore::credence::{validate_probability, Credence, Probability, COHERENCE_TOL};
use properscore::dominance::{
    build_witness, check_condition_b, find_dominating_probability, ConditionBConfig,
    DominanceError, RepairConfig, WitnessCase, WitnessConfig,
};
use properscore::ereal::ExtendedReal;
use properscore::rules::{
    extend_with_vector, BoundaryBonusRule, BrierRule, LogRule, ScoringRule, SphericalRule,
    TwoCircleRule,
};
use properscore::score::ScoreVector;
use properscore::space::SampleSpace;

fn space2() -> SampleSpace {
    SampleSpace::with_outcomes(2).unwrap()
}

/// Constant fill slightly below the uniform forecast's score; a
/// quasi-strictly proper extension for any proper rule with finite scores
/// at the uniform probability.
fn uniform_fill(rule: &dyn ScoringRule, drop: f64) -> ScoreVector {
    let uniform = Probability::uniform(rule.space().clone());
    let entries: Vec<ExtendedReal> = rule
        .score_probability(&uniform)
        .unwrap()
        .entries()
        .iter()
        .map(|e| ExtendedReal::finite(e.as_finite().unwrap() - drop))
        .collect();
    ScoreVector::new(rule.space().clone(), entries).unwrap()
}

fn battery(seed: u64, count: usize) -> Vec<Credence> {
    let sp = space2();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let w = rng.gen_range(0.05..0.95);
        let base = Probability::from_weights(sp.clone(), vec![w, 1.0 - w]).unwrap();
        let mut values = base.to_credence().values().to_vec();
        for v in values.iter_mut().skip(1).take(2) {
            *v += rng.gen_range(-0.3..0.3);
        }
        let c = Credence::new(sp.clone(), values).unwrap();
        if validate_probability(&c, COHERENCE_TOL).is_err() {
            out.push(c);
        }
    }
    out
}

struct CatalogEntry {
    base: Box<dyn ScoringRule>,
    extended: Box<dyn ScoringRule>,
    expect_holds: bool,
}

fn catalog() -> Vec<CatalogEntry> {
    let sp = space2();
    let mut entries = Vec::new();

    // quadratic rule scores credences natively
    entries.push(CatalogEntry {
        base: Box::new(BrierRule::new(sp.clone())),
        extended: Box::new(BrierRule::new(sp.clone())),
        expect_holds: true,
    });

    // spherical and logarithmic rules get a constant fill extension; the
    // singleton-formula extension of the spherical rule is not
    // quasi-strictly proper (proportional singleton vectors tie), so it is
    // outside the theory's premise
    let spherical = SphericalRule::new(sp.clone());
    let fill = uniform_fill(&spherical, 0.1);
    entries.push(CatalogEntry {
        base: Box::new(SphericalRule::new(sp.clone())),
        extended: Box::new(extend_with_vector(Box::new(spherical), fill).unwrap()),
        expect_holds: true,
    });

    let log = LogRule::new(sp.clone());
    let fill = uniform_fill(&log, 0.1);
    entries.push(CatalogEntry {
        base: Box::new(LogRule::new(sp.clone())),
        extended: Box::new(extend_with_vector(Box::new(log), fill).unwrap()),
        expect_holds: true,
    });

    // the two-arc rule extended by its bridge fill
    let bridge = (1.0 + 2f64.sqrt()) / 2.0 - 0.05;
    let fill = ScoreVector::from_f64(sp.clone(), &[bridge, bridge]).unwrap();
    entries.push(CatalogEntry {
        base: Box::new(TwoCircleRule::new(sp.clone()).unwrap()),
        extended: Box::new(
            extend_with_vector(Box::new(TwoCircleRule::new(sp.clone()).unwrap()), fill).unwrap(),
        ),
        expect_holds: false,
    });

    // the boundary-bonus rule extended by its scaled vertex fill
    let fill = ScoreVector::new(
        sp.clone(),
        vec![ExtendedReal::finite(-2.5), ExtendedReal::NegInf],
    )
    .unwrap();
    entries.push(CatalogEntry {
        base: Box::new(BoundaryBonusRule::new(sp.clone()).unwrap()),
        extended: Box::new(
            extend_with_vector(Box::new(BoundaryBonusRule::new(sp).unwrap()), fill).unwrap(),
        ),
        expect_holds: false,
    });

    entries
}

#[test]
fn condition_verdicts_match_repair_outcomes_and_witnesses() {
    let condition_config = ConditionBConfig {
        self_score_resolution: 60,
        gap_resolution: 300,
        gap_directions: 400,
        ..Default::default()
    };
    let repair_config =
        RepairConfig { start_resolution: 100, max_resolution: 400, ..Default::default() };
    let witness_config = WitnessConfig {
        verify_resolution: 500,
        gap_resolution: 300,
        gap_directions: 400,
        ..Default::default()
    };
    let credences = battery(42, 20);

    for entry in catalog() {
        let name = entry.base.name();
        let report = check_condition_b(entry.base.as_ref(), &condition_config).unwrap();
        assert_eq!(
            report.overall.holds(),
            entry.expect_holds,
            "{name}: condition verdict {:?}",
            report.overall
        );

        // forward direction: condition holds -> every battery member repairs
        let mut repaired = 0usize;
        let mut failed = 0usize;
        for c in &credences {
            match find_dominating_probability(entry.extended.as_ref(), c, &repair_config) {
                Ok(result) => {
                    assert!(result.reverify(entry.extended.as_ref()).unwrap() > 0.0);
                    repaired += 1;
                }
                Err(DominanceError::NoDominator { .. }) => failed += 1,
                Err(other) => panic!("{name}: unexpected repair error {other}"),
            }
        }
        if entry.expect_holds {
            assert_eq!(repaired, credences.len(), "{name}: {failed} repairs failed");
        } else {
            assert_eq!(failed, credences.len(), "{name}: {repaired} repairs succeeded");
        }

        // reverse direction: condition fails -> some witness bundle verifies
        let limit_witness =
            build_witness(WitnessCase::SelfScoreLimit, entry.base.as_ref(), &witness_config);
        let gap_witness =
            build_witness(WitnessCase::DensityGap, entry.base.as_ref(), &witness_config);
        let verified = [&limit_witness, &gap_witness]
            .iter()
            .any(|w| w.as_ref().map_or(false, |b| b.verification.verified));
        assert_eq!(
            verified, !entry.expect_holds,
            "{name}: witness existence must match the condition verdict"
        );

        println!(
            "{name}: condition {:?}, {repaired}/{} repaired, witness verified = {verified}",
            report.overall,
            credences.len()
        );
    }
}
