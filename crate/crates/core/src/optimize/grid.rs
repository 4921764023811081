use std::cmp::Ordering;

use rayon::prelude::*;

use super::{compare_tied, OptimalParams, SearchOutcome, TraceEntry};
use crate::array::SensorArray;
use crate::constructions::{ka, KloveParams};
use crate::error::{Error, Result};
use crate::metrics::varsigma;

struct Best {
    params: KloveParams,
    aperture: i64,
    array: SensorArray,
}

fn better(a: Best, b: Best) -> Result<Best> {
    Ok(match a.aperture.cmp(&b.aperture) {
        Ordering::Greater => a,
        Ordering::Less => b,
        Ordering::Equal => {
            if compare_tied(&b.array, &a.array)? == Ordering::Less {
                b
            } else {
                a
            }
        }
    })
}

fn feasible_points(n: usize, n1: usize) -> impl Iterator<Item = KloveParams> {
    (0..=(n - 4 * n1) / (n1 + 1)).filter_map(move |n3| {
        let rest = n - (n1 + 1) * n3;
        (rest.is_multiple_of(2) && rest / 2 > 2 * n1).then(|| KloveParams::new(n1, rest / 2 - 2 * n1, n3))
    })
}

fn search(n: usize, trace: bool) -> Result<SearchOutcome> {
    if n < 2 {
        return Err(Error::InvalidParameters(format!("grid search needs n >= 2, got {n}")));
    }
    let shards: Vec<(Option<Best>, Vec<TraceEntry>)> = (0..=(n - 2) / 4)
        .into_par_iter()
        .map(|n1| {
            let mut best: Option<Best> = None;
            let mut log = Vec::new();
            for p in feasible_points(n, n1) {
                let aperture = p.ka_aperture().expect("N2 >= 1");
                if trace {
                    log.push(TraceEntry { params: OptimalParams::Klove(p), aperture, objective: 2 * aperture + 1 });
                }
                // The regularizer is only needed when the aperture ties the incumbent.
                if best.as_ref().is_some_and(|b| aperture < b.aperture) {
                    continue;
                }
                let candidate = Best { params: p, aperture, array: ka(p)? };
                best = Some(match best {
                    Some(b) => better(b, candidate)?,
                    None => candidate,
                });
            }
            Ok((best, log))
        })
        .collect::<Result<_>>()?;
    let mut best: Option<Best> = None;
    let mut full_trace = Vec::new();
    for (shard, log) in shards {
        full_trace.extend(log);
        if let Some(s) = shard {
            best = Some(match best {
                Some(b) => better(b, s)?,
                None => s,
            });
        }
    }
    let best = best.ok_or_else(|| Error::Infeasible(format!("no Kløve parameters with {n} sensors")))?;
    Ok(SearchOutcome {
        params: OptimalParams::Klove(best.params),
        varsigma: varsigma(&best.array, best.aperture)?,
        contiguous_dof: 2 * best.aperture + 1,
        aperture: best.aperture,
        array: best.array,
        tied_optima: 1,
        objective_trace: trace.then_some(full_trace),
    })
}

/// Kløve parameters of maximal aperture for `n` sensors, over the full feasible grid.
///
/// Ties in aperture go to the smaller regularizer, then to the smaller positions.
pub fn ka_r_grid(n: usize) -> Result<SearchOutcome> {
    search(n, false)
}

/// As [`ka_r_grid`], also returning every evaluated grid point.
pub fn ka_r_grid_traced(n: usize) -> Result<SearchOutcome> {
    search(n, true)
}

/// Number of `(N1, N3)` points the grid search visits, and its `O(N log N)` bound.
pub fn grid_size_bound(n: usize) -> (usize, f64) {
    let actual = if n < 2 { 0 } else { (0..=(n - 2) / 4).map(|n1| (n - 4 * n1) / (n1 + 1) + 1).sum() };
    let nf = n as f64;
    (actual, (nf + 4.0) * (nf / 2.0 + 2.0).ln() - 3.0 * (nf + 2.0) / 4.0)
}
