use std::sync::atomic::{AtomicI64, Ordering as AtomicOrdering};

use rayon::prelude::*;

use super::{select_best, Candidate, OptimalParams, SearchOutcome};
use crate::array::SensorArray;
use crate::error::{Error, Result};
use crate::metrics::varsigma;

pub const DEFAULT_MRA_LIMIT: usize = 12;

const WORDS: usize = 8;
const BITS: usize = WORDS * 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MraConfig {
    /// Largest sensor count the exhaustive search accepts.
    pub limit: usize,
}

impl Default for MraConfig {
    fn default() -> Self {
        Self { limit: DEFAULT_MRA_LIMIT }
    }
}

/// Fixed-width bitset over `0..BITS`.
#[derive(Clone, Copy)]
struct Bits([u64; WORDS]);

impl Bits {
    const EMPTY: Bits = Bits([0; WORDS]);

    fn set(&mut self, i: usize) {
        if i < BITS {
            self.0[i / 64] |= 1 << (i % 64);
        }
    }

    /// `self | (other << shift)`.
    fn or_shifted(&self, other: &Bits, shift: usize) -> Bits {
        let mut out = *self;
        let (words, bits) = (shift / 64, shift % 64);
        for i in (words..WORDS).rev() {
            let j = i - words;
            let mut v = other.0[j] << bits;
            if bits > 0 && j > 0 {
                v |= other.0[j - 1] >> (64 - bits);
            }
            out.0[i] |= v;
        }
        out
    }

    fn first_zero(&self) -> usize {
        for (i, w) in self.0.iter().enumerate() {
            if *w != u64::MAX {
                return i * 64 + w.trailing_ones() as usize;
            }
        }
        BITS
    }

    /// Number of clear bits in `0..end`.
    fn zeros_below(&self, end: usize) -> usize {
        let end = end.min(BITS);
        let mut ones = 0;
        for i in 0..end.div_ceil(64) {
            let w = if (i + 1) * 64 <= end { self.0[i] } else { self.0[i] & ((1u64 << (end % 64)) - 1) };
            ones += w.count_ones() as usize;
        }
        end - ones
    }
}

/// Partial array with its position and sum bitsets.
#[derive(Clone)]
struct State {
    elements: Vec<usize>,
    positions: Bits,
    sums: Bits,
}

impl State {
    fn new() -> Self {
        Self { elements: Vec::new(), positions: Bits::EMPTY, sums: Bits::EMPTY }
    }

    fn with(&self, x: usize) -> State {
        let mut positions = self.positions;
        positions.set(x);
        let mut sums = self.sums.or_shifted(&positions, x);
        sums.set(2 * x);
        let mut elements = self.elements.clone();
        elements.push(x);
        State { elements, positions, sums }
    }

    fn to_array(&self) -> SensorArray {
        SensorArray::from_positions(self.elements.iter().map(|&x| x as i64)).expect("valid positions")
    }
}

/// Upper bound on new sums from `r` more elements added to `k` existing ones.
fn capacity(k: usize, r: usize) -> usize {
    r * k + r * (r + 1) / 2
}

/// Arrays with `n` elements whose sum set covers `0..h` for the largest `h >= threshold`.
///
/// Each new element is at most the current first missing sum, since no later sum can
/// fill a hole below the smallest element still to be placed.
fn general_dfs(state: &State, n: usize, threshold: &AtomicI64, found: &mut Vec<(usize, State)>) {
    let k = state.elements.len();
    let hole = state.sums.first_zero();
    let target = threshold.load(AtomicOrdering::Relaxed) as usize;
    if k == n {
        if hole >= target {
            threshold.fetch_max(hole as i64, AtomicOrdering::Relaxed);
            found.push((hole, state.clone()));
        }
        return;
    }
    if state.sums.zeros_below(target) > capacity(k, n - k) {
        return;
    }
    let last = state.elements.last().copied().unwrap_or(0);
    for x in (last + 1..=hole.min(BITS / 2 - 1)).rev() {
        general_dfs(&state.with(x), n, threshold, found);
    }
}

/// Arrays with `n` elements in `0..=aperture` containing `{0, 1, aperture - 1, aperture}`
/// whose sum set is exactly `0..=2 * aperture`.
fn restricted_dfs(state: &State, n: usize, aperture: usize, found: &mut Vec<State>) {
    let k = state.elements.len();
    let span = 2 * aperture + 1;
    let missing = state.sums.zeros_below(span);
    if k == n {
        if missing == 0 {
            found.push(state.clone());
        }
        return;
    }
    let r = n - k;
    if missing > capacity(k, r) {
        return;
    }
    // Forced elements are stored first; free ones are placed in increasing order.
    let last = state.elements.iter().copied().filter(|&x| x >= 2 && x + 1 < aperture).max().unwrap_or(1);
    let hole = state.sums.first_zero();
    let max_free = aperture.saturating_sub(2);
    for x in last + 1..=hole.min(max_free) {
        if max_free + 1 - x < r {
            break;
        }
        restricted_dfs(&state.with(x), n, aperture, found);
    }
}

fn forced_state(n: usize, aperture: usize) -> Option<State> {
    let mut forced: Vec<usize> = vec![0, 1, aperture.saturating_sub(1), aperture];
    forced.sort_unstable();
    forced.dedup();
    if aperture == 0 {
        forced = vec![0];
    }
    if forced.len() > n {
        return None;
    }
    let mut state = State::new();
    for x in forced {
        state = state.with(x);
    }
    Some(state)
}

fn restricted_at(n: usize, aperture: usize) -> Vec<State> {
    let Some(base) = forced_state(n, aperture) else {
        return Vec::new();
    };
    if base.elements.len() == n {
        let mut found = Vec::new();
        restricted_dfs(&base, n, aperture, &mut found);
        return found;
    }
    let hi = base.sums.first_zero().min(aperture.saturating_sub(2));
    (2..=hi)
        .into_par_iter()
        .flat_map_iter(|x| {
            let mut found = Vec::new();
            restricted_dfs(&base.with(x), n, aperture, &mut found);
            found
        })
        .collect()
}

fn restricted_search(n: usize) -> Result<Vec<Candidate>> {
    let upper = (n * (n + 1) / 2 - 1) / 2;
    for aperture in (0..=upper).rev() {
        let found = restricted_at(n, aperture);
        if !found.is_empty() {
            return Ok(found
                .iter()
                .map(|s| Candidate {
                    params: OptimalParams::Positions,
                    array: s.to_array(),
                    objective: 2 * aperture as i64 + 1,
                })
                .collect());
        }
    }
    Err(Error::Infeasible(format!("no restricted array with {n} sensors")))
}

fn general_search(n: usize, seed: i64) -> Vec<Candidate> {
    let threshold = AtomicI64::new(seed);
    let mut prefixes = vec![State::new().with(0)];
    // Expand a few levels sequentially so the parallel shards are balanced.
    while prefixes.first().is_some_and(|s| s.elements.len() < n.min(4)) {
        prefixes = prefixes
            .iter()
            .flat_map(|s| {
                let last = *s.elements.last().unwrap();
                let hole = s.sums.first_zero();
                (last + 1..=hole).map(move |x| s.with(x))
            })
            .collect();
    }
    let found: Vec<(usize, State)> = prefixes
        .par_iter()
        .flat_map_iter(|s| {
            let mut found = Vec::new();
            general_dfs(s, n, &threshold, &mut found);
            found
        })
        .collect();
    let best = threshold.load(AtomicOrdering::Relaxed) as usize;
    found
        .into_iter()
        .filter(|(h, _)| *h == best)
        .map(|(h, s)| Candidate { params: OptimalParams::Positions, array: s.to_array(), objective: h as i64 })
        .collect()
}

/// Exhaustive minimum-redundancy array search with the default size limit.
pub fn mra_search(n: usize, restricted: bool) -> Result<SearchOutcome> {
    mra_search_with(n, restricted, &MraConfig::default())
}

/// Exhaustive minimum-redundancy array search.
///
/// The general problem maximizes `h` such that the sum set covers `0..h`. The restricted
/// problem also requires the sum set to be exactly `0..=2L`; it scans apertures downward
/// from the counting bound `2L + 1 <= n(n+1)/2` and stops at the first feasible one. Tied
/// optima are ranked by the regularizer with their largest aperture as reference.
pub fn mra_search_with(n: usize, restricted: bool, config: &MraConfig) -> Result<SearchOutcome> {
    Ok(select_best(optimal_candidates(n, restricted, config)?)?.expect("search always yields a candidate"))
}

/// Every optimal array of the search, best ranked first.
pub fn mra_optima(n: usize, restricted: bool, config: &MraConfig) -> Result<Vec<SensorArray>> {
    let candidates = optimal_candidates(n, restricted, config)?;
    let reference = candidates.iter().map(|c| c.array.aperture()).max().unwrap_or(0);
    let mut ranked =
        candidates.into_iter().map(|c| Ok((varsigma(&c.array, reference)?, c.array))).collect::<Result<Vec<_>>>()?;
    ranked.sort_by(|(va, a), (vb, b)| va.cmp(vb).then_with(|| a.positions().cmp(b.positions())));
    ranked.dedup_by(|(_, a), (_, b)| a == b);
    Ok(ranked.into_iter().map(|(_, a)| a).collect())
}

fn optimal_candidates(n: usize, restricted: bool, config: &MraConfig) -> Result<Vec<Candidate>> {
    if n == 0 {
        return Err(Error::InvalidParameters("array needs at least one sensor".into()));
    }
    if n > config.limit || n * (n + 1) / 2 >= BITS / 2 {
        return Err(Error::SearchSpaceTooLarge { n, limit: config.limit });
    }
    let restricted_optima = restricted_search(n)?;
    Ok(if restricted {
        restricted_optima
    } else {
        // Any restricted optimum is feasible for the general problem.
        general_search(n, restricted_optima[0].objective)
    })
}
