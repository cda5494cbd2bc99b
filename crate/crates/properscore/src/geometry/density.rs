//! Density scan of the positive-facing hull boundary.
//!
//! For each strictly positive probe direction, the supporting face of the
//! sampled hull is the set of near-maximizing sample points. Convex
//! combinations across the face lie on the boundary of the hull; their
//! sup-norm distance back to the sample measures how much positive-facing
//! boundary carries no scores. A gap that stays large under refinement is a
//! density failure, and its witness point is certified with the probe
//! direction as a positive normal.

use serde::{Deserialize, Serialize};

use crate::ereal::dot;
use crate::simplex::sample_simplex;
use crate::space::SampleSpace;

use super::{maximizers_within, FiniteScoreSample, GeometryError, NormalCertificate};

#[derive(Clone, Debug)]
pub struct DensityGapConfig {
    /// Lower bound on the number of probe directions; the actual grid is the
    /// smallest interior simplex lattice reaching it.
    pub direction_count: usize,
    /// Interior interpolation points sampled per face-vertex pair.
    pub face_samples: usize,
    /// Absolute floor added to the face tie tolerance.
    pub tol: f64,
    /// Most face vertices kept per direction (extremes always survive).
    pub max_face_vertices: usize,
    /// Sampled face points stored per record, worst first.
    pub stored_samples: usize,
}

impl Default for DensityGapConfig {
    fn default() -> Self {
        Self {
            direction_count: 1000,
            face_samples: 3,
            tol: 1e-9,
            max_face_vertices: 8,
            stored_samples: 4,
        }
    }
}

/// One probed direction and what its supporting face looked like.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FaceRecord {
    pub direction: Vec<f64>,
    pub support_value: f64,
    pub vertex_indices: Vec<usize>,
    /// Representative sampled face points with their distance to the sample,
    /// farthest first.
    pub samples: Vec<(Vec<f64>, f64)>,
    pub max_distance: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GapWitness {
    /// Distance-maximizing point of the bridging segment.
    pub point: Vec<f64>,
    pub distance: f64,
    pub certificate: NormalCertificate,
    /// Endpoints of the face segment bridging the hole.
    pub bridge: (Vec<f64>, Vec<f64>),
    /// Extreme vertices of the face the witness lies on.
    pub face_span: (Vec<f64>, Vec<f64>),
    /// Probe direction (simplex weights) whose face produced the witness.
    pub direction: Vec<f64>,
    /// Face tie tolerance in effect for that probe.
    pub tie: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GapReport {
    pub rule: String,
    pub resolution: usize,
    pub directions_scanned: usize,
    pub tie_tolerance_scale: f64,
    pub max_gap: f64,
    pub witness: Option<GapWitness>,
    pub faces: Vec<FaceRecord>,
}

/// Scans probe directions over the open simplex and reports the largest
/// sup-norm distance from a hull-boundary point back to the score sample.
///
/// The pairwise face combos act as a screen; the top faces are then refined
/// along their bridging segment (the widest consecutive hole between face
/// vertices), and the reported gap is the refined boundary distance. That
/// keeps the witness on the sampled hull boundary instead of a
/// tie-tolerance-deep chord.
pub fn density_gap(
    sample: &FiniteScoreSample,
    space: &SampleSpace,
    config: &DensityGapConfig,
) -> Result<GapReport, GeometryError> {
    if sample.points.is_empty() {
        return Err(GeometryError::EmptySample);
    }
    let n = sample.dim();
    assert!(config.direction_count >= n + 1, "need at least n+1 probe directions");

    let (directions, lattice) = direction_grid(space, config.direction_count);
    // An edge of the hull whose normal falls between lattice directions
    // spreads its endpoint values by at most ||dv||_1 * diameter, so the tie
    // tolerance must absorb that to see both endpoints from a nearby probe.
    let diameter = sample.linf_diameter();
    let lattice_slack = 2.0 / lattice as f64 * diameter;

    let mut report = GapReport {
        rule: sample.rule.clone(),
        resolution: sample.resolution,
        directions_scanned: directions.len(),
        tie_tolerance_scale: lattice_slack,
        max_gap: 0.0,
        witness: None,
        faces: Vec::new(),
    };

    // screening pass: pairwise combos over thinned faces
    let mut mix = vec![0.0f64; n];
    let mut ties = Vec::with_capacity(directions.len());
    for direction in &directions {
        let v = direction.as_slice();
        let sigma = sample.scores().map(|w| dot(v, w)).fold(f64::NEG_INFINITY, f64::max);
        let tie = config.tol + super::support_tie_tolerance(sigma) + lattice_slack;
        ties.push(tie);
        let face = maximizers_within(sample, v, sigma, tie);
        let kept = thin_face(sample, &face, config.max_face_vertices);

        let mut record = FaceRecord {
            direction: direction.clone(),
            support_value: sigma,
            vertex_indices: kept.clone(),
            samples: Vec::new(),
            max_distance: 0.0,
        };

        for a in 0..kept.len() {
            for b in a + 1..kept.len() {
                let wa = &sample.points[kept[a]].score;
                let wb = &sample.points[kept[b]].score;
                for s in 1..=config.face_samples {
                    let t = s as f64 / (config.face_samples + 1) as f64;
                    for i in 0..n {
                        mix[i] = (1.0 - t) * wa[i] + t * wb[i];
                    }
                    let d = sample.linf_distance_to(&mix);
                    if d > record.max_distance {
                        record.max_distance = d;
                    }
                    store_sample(&mut record.samples, &mix, d, config.stored_samples);
                }
            }
        }
        report.faces.push(record);
    }

    // refinement pass over the top screened faces
    let mut order: Vec<usize> = (0..report.faces.len()).collect();
    order.sort_by(|&a, &b| {
        report.faces[b].max_distance.total_cmp(&report.faces[a].max_distance)
    });
    for &f in order.iter().take(5) {
        if report.faces[f].max_distance == 0.0 {
            break;
        }
        let direction = report.faces[f].direction.clone();
        let tie = ties[f];
        let Some((lo, hi)) = bridge_segment(sample, &direction, tie) else { continue };
        let point = refine_along_segment(sample, &lo, &hi);
        let distance = sample.linf_distance_to(&point);
        if distance > report.max_gap {
            let certificate = NormalCertificate::from_direction(
                &point,
                &direction,
                sample,
                tie / min_component(&direction),
            )?;
            let kept = report.faces[f].vertex_indices.clone();
            report.max_gap = distance;
            report.witness = Some(GapWitness {
                point,
                distance,
                certificate,
                bridge: (lo, hi),
                face_span: face_span(sample, &kept),
                direction,
                tie,
            });
        }
    }
    Ok(report)
}

/// Maximizes the sup-norm distance to the sample along a segment: dense
/// scan, then ternary refinement in the best bracket.
pub fn refine_along_segment(sample: &FiniteScoreSample, lo: &[f64], hi: &[f64]) -> Vec<f64> {
    let n = lo.len();
    let at = |t: f64| -> Vec<f64> { (0..n).map(|i| (1.0 - t) * lo[i] + t * hi[i]).collect() };
    let score = |t: f64| -> f64 { sample.linf_distance_to(&at(t)) };

    let scans = 512;
    let mut best_t = 0.0;
    let mut best = f64::NEG_INFINITY;
    for s in 0..=scans {
        let t = s as f64 / scans as f64;
        let d = score(t);
        if d > best {
            best = d;
            best_t = t;
        }
    }
    let (mut a, mut b) = (
        (best_t - 2.0 / scans as f64).max(0.0),
        (best_t + 2.0 / scans as f64).min(1.0),
    );
    for _ in 0..80 {
        let m1 = a + (b - a) / 3.0;
        let m2 = b - (b - a) / 3.0;
        if score(m1) < score(m2) {
            a = m1;
        } else {
            b = m2;
        }
    }
    at(0.5 * (a + b))
}

fn min_component(v: &[f64]) -> f64 {
    v.iter().cloned().fold(f64::INFINITY, f64::min).max(f64::MIN_POSITIVE)
}

/// Interior lattice directions with at least `count` members; returns the
/// directions and the lattice resolution used.
fn direction_grid(space: &SampleSpace, count: usize) -> (Vec<Vec<f64>>, usize) {
    let n = space.len();
    let mut m = n.max(2);
    loop {
        let grid = sample_simplex(space, m, true);
        if grid.len() >= count {
            return (grid.into_iter().map(|p| p.weights().to_vec()).collect(), m);
        }
        m += 1;
        // interior counts grow combinatorially; jump in proportion for large n
        if n == 2 {
            m = m.max(count + 1);
        }
    }
}

/// Keeps at most `cap` face vertices, evenly spread along the face's widest
/// axis so the extremes always survive.
fn thin_face(sample: &FiniteScoreSample, face: &[usize], cap: usize) -> Vec<usize> {
    if face.len() <= cap.max(2) {
        return face.to_vec();
    }
    // widest pair under the sup norm
    let mut best = (0usize, 0usize, -1.0f64);
    for a in 0..face.len() {
        for b in a + 1..face.len() {
            let wa = &sample.points[face[a]].score;
            let wb = &sample.points[face[b]].score;
            let d = wa.iter().zip(wb).fold(0.0f64, |m, (x, y)| m.max((x - y).abs()));
            if d > best.2 {
                best = (a, b, d);
            }
        }
    }
    let axis: Vec<f64> = {
        let wa = &sample.points[face[best.0]].score;
        let wb = &sample.points[face[best.1]].score;
        wa.iter().zip(wb).map(|(x, y)| y - x).collect()
    };
    let mut order: Vec<usize> = face.to_vec();
    order.sort_by(|&i, &j| {
        dot(&axis, &sample.points[i].score).total_cmp(&dot(&axis, &sample.points[j].score))
    });
    (0..cap)
        .map(|s| order[s * (order.len() - 1) / (cap - 1)])
        .collect()
}

/// The pair of face vertices adjacent to the widest hole in the face: sort
/// the full face along its widest axis and take the largest consecutive
/// jump. For a genuine density gap this is the segment bridging it.
pub fn bridge_segment(
    sample: &FiniteScoreSample,
    direction: &[f64],
    tie: f64,
) -> Option<(Vec<f64>, Vec<f64>)> {
    let sigma = sample.scores().map(|w| dot(direction, w)).fold(f64::NEG_INFINITY, f64::max);
    let face = maximizers_within(sample, direction, sigma, tie);
    if face.len() < 2 {
        return None;
    }
    let mut widest = (0usize, 0usize, -1.0f64);
    for a in 0..face.len() {
        for b in a + 1..face.len() {
            let wa = &sample.points[face[a]].score;
            let wb = &sample.points[face[b]].score;
            let d = wa.iter().zip(wb).fold(0.0f64, |m, (x, y)| m.max((x - y).abs()));
            if d > widest.2 {
                widest = (a, b, d);
            }
        }
    }
    let axis: Vec<f64> = {
        let wa = &sample.points[face[widest.0]].score;
        let wb = &sample.points[face[widest.1]].score;
        wa.iter().zip(wb).map(|(x, y)| y - x).collect()
    };
    let mut order: Vec<usize> = face;
    order.sort_by(|&i, &j| {
        dot(&axis, &sample.points[i].score).total_cmp(&dot(&axis, &sample.points[j].score))
    });
    let mut best = (0usize, -1.0f64);
    for w in 0..order.len() - 1 {
        let jump = dot(&axis, &sample.points[order[w + 1]].score)
            - dot(&axis, &sample.points[order[w]].score);
        if jump > best.1 {
            best = (w, jump);
        }
    }
    Some((
        sample.points[order[best.0]].score.clone(),
        sample.points[order[best.0 + 1]].score.clone(),
    ))
}

fn face_span(sample: &FiniteScoreSample, kept: &[usize]) -> (Vec<f64>, Vec<f64>) {
    let mut best = (0usize, 0usize, -1.0f64);
    for a in 0..kept.len() {
        for b in a..kept.len() {
            let wa = &sample.points[kept[a]].score;
            let wb = &sample.points[kept[b]].score;
            let d = wa.iter().zip(wb).fold(0.0f64, |m, (x, y)| m.max((x - y).abs()));
            if d > best.2 {
                best = (a, b, d);
            }
        }
    }
    (sample.points[kept[best.0]].score.clone(), sample.points[kept[best.1]].score.clone())
}

fn store_sample(samples: &mut Vec<(Vec<f64>, f64)>, point: &[f64], d: f64, cap: usize) {
    let pos = samples.partition_point(|(_, existing)| *existing > d);
    if pos < cap {
        samples.insert(pos, (point.to_vec(), d));
        samples.truncate(cap);
    }
}
