use rayon::prelude::*;

use super::{select_best, Candidate, OptimalParams, SearchOutcome};
use crate::array::SensorArray;
use crate::coarray::{contiguous_dof, sum_coarray};
use crate::constructions::{kma, nested, KloveParams, NestedParams};
use crate::error::{Error, Result};

fn sum_dof(array: &SensorArray) -> Result<i64> {
    Ok(contiguous_dof(&sum_coarray(array)?)?.length)
}

fn best_of(
    params: Vec<OptimalParams>,
    build: impl Fn(OptimalParams) -> Result<SensorArray> + Sync,
) -> Result<Option<SearchOutcome>> {
    let candidates = params
        .into_par_iter()
        .map(|p| {
            let array = build(p)?;
            Ok(Candidate { params: p, objective: sum_dof(&array)?, array })
        })
        .collect::<Result<Vec<_>>>()?;
    select_best(candidates)
}

fn build(p: OptimalParams) -> Result<SensorArray> {
    match p {
        OptimalParams::Nested(q) => nested(q),
        OptimalParams::Klove(q) => kma(q),
        OptimalParams::Positions => unreachable!("sweeps only build parametric arrays"),
    }
}

/// Nested-array split of `n` sensors maximizing the sum co-array's contiguous DoFs.
///
/// Both subarrays are non-empty; the degenerate splits only reproduce the ULA, which
/// the split `(n - 1, 1)` already covers.
pub fn na_opt(n: usize) -> Result<SearchOutcome> {
    if n < 2 {
        return Err(Error::InvalidParameters(format!("nested array needs n >= 2, got {n}")));
    }
    let params = (1..n).map(|n1| OptimalParams::Nested(NestedParams::new(n1, n - n1))).collect();
    Ok(best_of(params, build)?.expect("at least one split"))
}

fn kma_params(n: usize) -> Vec<KloveParams> {
    let mut out = Vec::new();
    for n1 in 0..=n / 2 {
        for n3 in 0..=n {
            let used = 2 * n1 + n3 * (n1 + 1);
            if used >= n {
                break;
            }
            out.push(KloveParams::new(n1, n - used, n3));
        }
    }
    out
}

/// Kløve-Mossige parameters for `n` sensors maximizing the sum co-array's contiguous DoFs.
pub fn kma_opt(n: usize) -> Result<SearchOutcome> {
    if n < 2 {
        return Err(Error::InvalidParameters(format!("Kløve-Mossige array needs n >= 2, got {n}")));
    }
    let params = kma_params(n).into_iter().map(OptimalParams::Klove).collect();
    Ok(best_of(params, build)?.expect("N1 = N3 = 0 is always feasible"))
}

/// As [`kma_opt`], restricted to parameters whose array has the given aperture.
pub fn kma_opt_with_aperture(n: usize, aperture: i64) -> Result<SearchOutcome> {
    if n < 2 {
        return Err(Error::InvalidParameters(format!("Kløve-Mossige array needs n >= 2, got {n}")));
    }
    let params = kma_params(n)
        .into_iter()
        .filter(|&p| kma(p).is_ok_and(|a| a.aperture() == aperture))
        .map(OptimalParams::Klove)
        .collect();
    best_of(params, build)?
        .ok_or_else(|| Error::Infeasible(format!("no Kløve-Mossige array with {n} sensors and aperture {aperture}")))
}
