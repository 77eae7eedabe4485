//! Random sweeps of the envelope identities, one row per sample.

use super::envelope::{check_decrement, check_dominance, check_scaling, DecrementOutcome, DominanceOutcome};
use crate::error::Result;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// Tolerance for the scaling identity.
pub const SCALING_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SweepKind {
    /// Scaling identity of `E` and its exponent system; `r` in `[1, 100]`.
    Scaling,
    /// `F` does not grow when one `d_i >= 3` drops by one.
    Decrement,
    /// `E` against `F` where every `n_i < n_j^{d_i}`.
    Dominance,
}

impl SweepKind {
    pub fn name(self) -> &'static str {
        match self {
            SweepKind::Scaling => "scaling",
            SweepKind::Decrement => "decrement",
            SweepKind::Dominance => "dominance",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SweepRow {
    pub k: usize,
    pub d_vec: Vec<u32>,
    pub n_vec: Vec<f64>,
    pub eps: f64,
    /// `r` for scaling, `lhs / rhs` for decrement, the ratio for dominance.
    pub value: Option<f64>,
    /// Largest residual of the scaling checks.
    pub residual: Option<f64>,
    pub flag: String,
}

/// Draws `samples` rows with `k` in `[2, 4]`, `d_i` in `[2, 6]` and `n_i`
/// log-uniform in `[2, 1e6]`. Deterministic in `seed`.
pub fn envelope_sweep(kind: SweepKind, samples: usize, eps: f64, seed: u64) -> Result<Vec<SweepRow>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rows = Vec::with_capacity(samples);
    for _ in 0..samples {
        let k = rng.random_range(2..=4usize);
        let d: Vec<u32> = (0..k).map(|_| rng.random_range(2..=6)).collect();
        let n: Vec<f64> = (0..k).map(|_| (rng.random_range(2f64.ln()..=1e6f64.ln())).exp()).collect();
        let row = |value, residual, flag: &str| SweepRow {
            k,
            d_vec: d.clone(),
            n_vec: n.clone(),
            eps,
            value,
            residual,
            flag: flag.to_string(),
        };
        rows.push(match kind {
            SweepKind::Scaling => {
                let r = rng.random_range(1.0..=100.0);
                let rep = check_scaling(&d, r, &n)?;
                let res = rep.residual.max(rep.matrix_residual);
                row(Some(r), Some(res), if res <= SCALING_TOL { "ok" } else { "fail" })
            }
            SweepKind::Decrement => {
                let cands: Vec<usize> = (0..k).filter(|&i| d[i] >= 3).collect();
                if cands.is_empty() {
                    row(None, None, "no-side")
                } else {
                    let i = cands[rng.random_range(0..cands.len())];
                    match check_decrement(&d, i, &n, eps)? {
                        DecrementOutcome::Holds { lhs, rhs } => row(Some(lhs / rhs), None, "holds"),
                        DecrementOutcome::Fails { lhs, rhs } => row(Some(lhs / rhs), None, "fails"),
                        DecrementOutcome::HypothesisNotMet => row(None, None, "hypothesis-not-met"),
                    }
                }
            }
            SweepKind::Dominance => match check_dominance(&d, &n, eps)? {
                DominanceOutcome::Ratio { ratio } => row(Some(ratio), None, "ratio"),
                DominanceOutcome::PreconditionNotMet => row(None, None, "precondition-not-met"),
            },
        });
    }
    Ok(rows)
}
