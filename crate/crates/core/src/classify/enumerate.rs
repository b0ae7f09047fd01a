use rayon::prelude::*;
use serde::Serialize;

use super::{minimal_a, Classifier, Verdict};
use crate::error::{Error, Result};
use crate::lattice::{Int, K3Context, MukaiVector};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub n: Int,
    pub v: MukaiVector,
    pub verdict: Verdict,
}

/// Failures of weak Brill-Noether with fixed `n` and `r`.
///
/// Only `n < r`, `d <= r floor(r/n) + 1` and `2 <= a <= floor((nd^2+1)/r)`
/// can fail, and for fixed `(r, d)` failures form an upper interval in `a`,
/// so each column is scanned downward until the first success.
fn scan_cell(n: Int, r: Int) -> Result<Vec<Counterexample>> {
    let ctx = K3Context::new(n)?;
    let mut classifier = Classifier::new(ctx);
    let mut out = Vec::new();
    for d in 1..=r * (r / n) + 1 {
        let top = minimal_a(&ctx, r, d)?;
        for a in (2..=top).rev() {
            let v = MukaiVector::new(r, d, a);
            let verdict = classifier.weak_bn(v)?;
            if verdict.wbn {
                break;
            }
            out.push(Counterexample { n, v, verdict });
        }
    }
    Ok(out)
}

/// Every `(n, v)` with `2 <= r <= max_rank`, `d > 0`, `v^2 >= -2` failing weak
/// Brill-Noether, ordered by `(n, r, d, a)`. Runs on the global rayon pool.
pub fn enumerate_counterexamples(max_rank: Int, n_filter: Option<Int>) -> Result<Vec<Counterexample>> {
    if max_rank < 2 {
        return Err(Error::InvalidParameter {
            name: "max_rank",
            value: max_rank,
        });
    }
    if let Some(n) = n_filter {
        K3Context::new(n)?;
    }
    let cells: Vec<(Int, Int)> = (2..=max_rank)
        .flat_map(|r| (1..r).map(move |n| (n, r)))
        .filter(|&(n, _)| n_filter.is_none_or(|f| f == n))
        .collect();
    let parts = cells
        .par_iter()
        .map(|&(n, r)| scan_cell(n, r))
        .collect::<Result<Vec<_>>>()?;
    let mut all: Vec<Counterexample> = parts.into_iter().flatten().collect();
    all.sort_by_key(|c| (c.n, c.v.r, c.v.d, c.v.a));
    Ok(all)
}

/// As [`enumerate_counterexamples`], on a dedicated pool of `workers` threads
/// (0 means one per logical CPU).
pub fn enumerate_counterexamples_with(
    max_rank: Int,
    n_filter: Option<Int>,
    workers: usize,
) -> Result<Vec<Counterexample>> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::WorkerPool(e.to_string()))?;
    pool.install(|| enumerate_counterexamples(max_rank, n_filter))
}
