//! Minimum-redundancy parameter selection.
//!
//! Every search ranks candidates the same way: larger objective first, then smaller
//! spacing regularizer, then the lexicographically smallest position sequence.

mod closed_form;
mod grid;
mod mra;
mod report;
mod sweep;
mod two_var;

use std::cmp::Ordering;

use serde::Serialize;

use crate::array::SensorArray;
use crate::constructions::{KloveParams, NestedParams};
use crate::error::Result;
use crate::metrics::{varsigma, Varsigma};

pub use closed_form::{cna_opt, ka_r_closed, ClosedFormTrace};
pub use grid::{grid_size_bound, ka_r_grid, ka_r_grid_traced};
pub use mra::{mra_optima, mra_search, mra_search_with, MraConfig, DEFAULT_MRA_LIMIT};
pub use report::{asymptotic_report, AsymptoticReport, RatioRow};
pub use sweep::{kma_opt, kma_opt_with_aperture, na_opt};
pub use two_var::solve_two_var;

/// Parameters that generated the winning array.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "family", rename_all = "lowercase")]
pub enum OptimalParams {
    Nested(NestedParams),
    Klove(KloveParams),
    /// Raw positions, as returned by the MRA search.
    Positions,
}

/// One evaluated candidate of a parameter search.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TraceEntry {
    pub params: OptimalParams,
    pub aperture: i64,
    pub objective: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchOutcome {
    pub params: OptimalParams,
    pub array: SensorArray,
    pub aperture: i64,
    /// Objective value: contiguous DoFs of the sum co-array.
    pub contiguous_dof: i64,
    /// Regularizer with the largest aperture among the tied optima as reference.
    pub varsigma: Varsigma,
    /// Number of distinct arrays attaining the optimal objective.
    pub tied_optima: usize,
    pub objective_trace: Option<Vec<TraceEntry>>,
}

/// A scored candidate before the final tie-break.
#[derive(Clone, Debug)]
pub(crate) struct Candidate {
    pub params: OptimalParams,
    pub array: SensorArray,
    pub objective: i64,
}

/// Picks the best of `candidates` by objective, then regularizer, then positions.
///
/// The regularizer reference is the largest aperture among the candidates tied on the
/// objective. Duplicate arrays are counted once.
pub(crate) fn select_best(candidates: Vec<Candidate>) -> Result<Option<SearchOutcome>> {
    let Some(best_objective) = candidates.iter().map(|c| c.objective).max() else {
        return Ok(None);
    };
    let mut tied: Vec<Candidate> = candidates.into_iter().filter(|c| c.objective == best_objective).collect();
    let reference = tied.iter().map(|c| c.array.aperture()).max().unwrap_or(0);
    let mut scored = tied.drain(..).map(|c| Ok((varsigma(&c.array, reference)?, c))).collect::<Result<Vec<_>>>()?;
    scored.sort_by(|(va, a), (vb, b)| {
        va.cmp(vb)
            .then_with(|| a.array.positions().cmp(b.array.positions()))
            .then_with(|| param_rank(&a.params).cmp(&param_rank(&b.params)))
    });
    let mut distinct = scored.iter().map(|(_, c)| c.array.positions()).collect::<Vec<_>>();
    distinct.dedup();
    let tied_optima = distinct.len();
    let (v, best) = scored.swap_remove(0);
    Ok(Some(SearchOutcome {
        params: best.params,
        aperture: best.array.aperture(),
        array: best.array,
        contiguous_dof: best.objective,
        varsigma: v,
        tied_optima,
        objective_trace: None,
    }))
}

fn param_rank(p: &OptimalParams) -> (usize, usize, usize) {
    match *p {
        OptimalParams::Nested(q) => (q.n1, q.n2, 0),
        OptimalParams::Klove(q) => (q.n1, q.n2, q.n3),
        OptimalParams::Positions => (0, 0, 0),
    }
}

/// Ordering used when only two candidates with equal objective need comparing.
pub(crate) fn compare_tied(a: &SensorArray, b: &SensorArray) -> Result<Ordering> {
    let reference = a.aperture().max(b.aperture());
    Ok(varsigma(a, reference)?.cmp(&varsigma(b, reference)?).then_with(|| a.positions().cmp(b.positions())))
}
