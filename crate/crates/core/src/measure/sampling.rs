use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::numfmt::sci12;

use super::{MeasureError, PROBABILITY_TOL};

/// Outcome counts from repeated preparation and measurement.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasurementRecord {
    pub shots: u64,
    /// `counts[i]` is the number of shots that returned `|i>`.
    pub counts: Vec<u64>,
    pub probabilities: Vec<f64>,
    pub seed: u64,
}

impl MeasurementRecord {
    pub fn frequency(&self, outcome: usize) -> f64 {
        self.counts[outcome] as f64 / self.shots as f64
    }

    /// Line-oriented report: a header with seed and shots, then one
    /// `outcome count probability` line per basis index.
    pub fn to_report(&self) -> String {
        let mut s = format!("# measurement seed={} shots={}\n", self.seed, self.shots);
        s.push_str("# outcome count probability\n");
        for (i, (c, p)) in self.counts.iter().zip(&self.probabilities).enumerate() {
            writeln!(s, "{i} {c} {}", sci12(*p)).unwrap();
        }
        s
    }
}

fn validate(probabilities: &[f64]) -> Result<(), MeasureError> {
    if probabilities.is_empty() {
        return Err(MeasureError::InvalidProbabilities("empty".into()));
    }
    if let Some(i) = probabilities
        .iter()
        .position(|p| !p.is_finite() || *p < 0.0)
    {
        return Err(MeasureError::InvalidProbabilities(format!(
            "entry {i} is {}",
            probabilities[i]
        )));
    }
    let total: f64 = probabilities.iter().sum();
    if (total - 1.0).abs() > PROBABILITY_TOL {
        return Err(MeasureError::InvalidProbabilities(format!(
            "sum is {total}"
        )));
    }
    Ok(())
}

/// Draws `shots` outcomes from `probabilities`.
///
/// The generator is ChaCha8 seeded through `SeedableRng::seed_from_u64`.
/// Each shot draws `u = 1 - x` with `x` uniform in `[0, 1)` and returns the
/// first outcome whose right-closed bin `(cdf[i-1], cdf[i]]` contains `u`,
/// so zero-probability outcomes are never drawn. Rounding overflow past the
/// last bin falls to the last outcome with nonzero probability.
pub fn sample(
    probabilities: &[f64],
    shots: u64,
    seed: u64,
) -> Result<MeasurementRecord, MeasureError> {
    validate(probabilities)?;
    if shots == 0 {
        return Err(MeasureError::NoShots);
    }
    let cdf: Vec<f64> = probabilities
        .iter()
        .scan(0.0, |acc, p| {
            *acc += p;
            Some(*acc)
        })
        .collect();
    let fallback = probabilities
        .iter()
        .rposition(|&p| p > 0.0)
        .expect("probabilities sum to one");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut counts = vec![0u64; probabilities.len()];
    for _ in 0..shots {
        let u = 1.0 - rng.random::<f64>();
        let outcome = cdf.iter().position(|&c| u <= c).unwrap_or(fallback);
        counts[outcome] += 1;
    }
    Ok(MeasurementRecord {
        shots,
        counts,
        probabilities: probabilities.to_vec(),
        seed,
    })
}
