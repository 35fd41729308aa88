//! Seeded search for strict-positivity witnesses.
//!
//! A witness is a rational point at which every polynomial in a given
//! list is strictly positive. Since the positivity region is open, one
//! exactly verified point certifies that the region has nonempty
//! interior. Candidates are drawn from a deterministic seeded stream
//! over growing boxes `[-2^k, 2^k]^n`, so runs are reproducible; the
//! scan over each batch is data-parallel under the `parallel` feature
//! and picks the first match in generation order either way.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::exec;
use crate::poly::Polynomial;
use crate::rational::{serde_rational_vec, Rational};

/// Budget and randomness parameters for the witness search.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchConfig {
    /// Seed of the candidate stream.
    pub seed: u64,
    /// Boxes grow as `[-2^k, 2^k]^n` for `k = 0..=max_scale`.
    pub max_scale: u32,
    /// Candidates drawn per scale.
    pub samples_per_scale: u32,
    /// Upper bound on candidate coordinate denominators.
    pub denom_bound: u32,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            max_scale: 12,
            samples_per_scale: 512,
            denom_bound: 1 << 8,
        }
    }
}

impl SearchConfig {
    fn validate(&self) -> Result<(), Error> {
        if self.max_scale > 30 {
            return Err(Error::ScaleTooLarge(self.max_scale));
        }
        if self.samples_per_scale == 0 || self.denom_bound == 0 {
            return Err(Error::BadSearchConfig);
        }
        Ok(())
    }
}

/// An exactly verified strict-positivity point: `values[i]` is the
/// value of the i-th polynomial at `point`, and every value is
/// positive.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PositivityWitness {
    #[serde(with = "serde_rational_vec")]
    pub point: Vec<Rational>,
    #[serde(with = "serde_rational_vec")]
    pub values: Vec<Rational>,
}

fn sample_point(rng: &mut ChaCha8Rng, n: usize, scale: u32, denom_bound: u32) -> Vec<Rational> {
    (0..n)
        .map(|_| {
            let denom = rng.gen_range(1..=denom_bound as i64);
            let hi = (1i64 << scale) * denom;
            let numer = rng.gen_range(-hi..=hi);
            Rational::new(numer.into(), denom.into())
        })
        .collect()
}

/// Searches for a point where every part is strictly positive.
///
/// Returns `None` only when the budget is exhausted; callers must
/// surface that as "unknown", never as a refutation.
pub fn find_positivity_witness(
    parts: &[Polynomial],
    cfg: &SearchConfig,
) -> Result<Option<PositivityWitness>, Error> {
    if parts.is_empty() {
        return Err(Error::EmptyParts);
    }
    cfg.validate()?;
    let n = parts[0].n_vars();
    assert!(
        parts.iter().all(|p| p.n_vars() == n),
        "witness parts must share one variable count"
    );

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for scale in 0..=cfg.max_scale {
        // The candidate batch is generated up front so the stream does
        // not depend on how the scan is scheduled.
        let batch: Vec<Vec<Rational>> = (0..cfg.samples_per_scale)
            .map(|_| sample_point(&mut rng, n, scale, cfg.denom_bound))
            .collect();
        let hit = exec::first_match(batch.len() as u64, |i| {
            let point = &batch[i as usize];
            parts.iter().all(|p| {
                p.evaluate(point)
                    .expect("dimension checked above")
                    > Rational::from_integer(0.into())
            })
        });
        if let Some(i) = hit {
            let point = batch[i as usize].clone();
            let values: Vec<Rational> = parts
                .iter()
                .map(|p| p.evaluate(&point).expect("dimension checked above"))
                .collect();
            debug_assert!(values.iter().all(|v| v > &Rational::from_integer(0.into())));
            return Ok(Some(PositivityWitness { point, values }));
        }
    }
    Ok(None)
}
