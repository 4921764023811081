//! Sum and difference co-arrays and their contiguity structure.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::array::SensorArray;
use crate::error::{Error, Result};

/// Apertures up to this size use a dense membership table; larger ones sort and dedup.
const DENSE_LIMIT: i64 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CoArrayKind {
    Sum,
    Difference,
}

/// Virtual array: strictly increasing integer positions of pairwise sums or differences.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CoArray {
    elements: Vec<i64>,
    kind: CoArrayKind,
}

/// A run `{offset, offset+1, ..., offset+length-1}` of consecutive co-array elements.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ContiguousRun {
    pub length: i64,
    pub offset: i64,
}

impl CoArray {
    pub fn elements(&self) -> &[i64] {
        &self.elements
    }

    pub fn kind(&self) -> CoArrayKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, value: i64) -> bool {
        self.elements.binary_search(&value).is_ok()
    }

    /// True when the elements form one unbroken integer interval.
    pub fn is_contiguous(&self) -> bool {
        match (self.elements.first(), self.elements.last()) {
            (Some(lo), Some(hi)) => (hi - lo + 1) as usize == self.elements.len(),
            _ => false,
        }
    }

    pub fn shifted(&self, offset: i64) -> CoArray {
        CoArray { elements: self.elements.iter().map(|e| e + offset).collect(), kind: self.kind }
    }
}

pub fn sum_coarray(array: &SensorArray) -> Result<CoArray> {
    let d = array.positions();
    if d.is_empty() {
        return Err(Error::EmptyArray);
    }
    let lo = d[0];
    let elements = collect_pairs(array, 2 * lo, 2 * array.aperture(), |a, b| a + b);
    Ok(CoArray { elements, kind: CoArrayKind::Sum })
}

pub fn diff_coarray(array: &SensorArray) -> Result<CoArray> {
    if array.is_empty() {
        return Err(Error::EmptyArray);
    }
    let l = array.aperture();
    let elements = collect_pairs(array, -l, 2 * l, |a, b| a - b);
    Ok(CoArray { elements, kind: CoArrayKind::Difference })
}

/// All values `op(a, b)` over ordered pairs, known to lie in `[base, base + span]`.
fn collect_pairs(array: &SensorArray, base: i64, span: i64, op: impl Fn(i64, i64) -> i64) -> Vec<i64> {
    let d = array.positions();
    if span <= 2 * DENSE_LIMIT {
        let mut present = vec![false; span as usize + 1];
        for &a in d {
            for &b in d {
                present[(op(a, b) - base) as usize] = true;
            }
        }
        present.iter().enumerate().filter(|(_, &p)| p).map(|(i, _)| base + i as i64).collect()
    } else {
        let mut values: Vec<i64> =
            d.iter().flat_map(|&a| d.iter().map(move |&b| (a, b))).map(|(a, b)| op(a, b)).collect();
        values.sort_unstable();
        values.dedup();
        values
    }
}

/// Longest run of consecutive elements; ties go to the smallest offset.
pub fn contiguous_dof(coarray: &CoArray) -> Result<ContiguousRun> {
    let e = coarray.elements();
    if e.is_empty() {
        return Err(Error::EmptyArray);
    }
    let mut best = ContiguousRun { length: 1, offset: e[0] };
    let mut start = 0;
    for i in 1..=e.len() {
        if i == e.len() || e[i] != e[i - 1] + 1 {
            let length = (i - start) as i64;
            if length > best.length {
                best = ContiguousRun { length, offset: e[start] };
            }
            start = i;
        }
    }
    Ok(best)
}

/// Smallest non-negative integer missing from the co-array.
pub fn first_hole(coarray: &CoArray) -> i64 {
    let e = coarray.elements();
    let start = e.partition_point(|&v| v < 0);
    let mut expected = 0;
    for &v in &e[start..] {
        if v != expected {
            break;
        }
        expected += 1;
    }
    expected
}

/// Number of ordered pairs `(n, m)` with `d_n + d_m = v`, for every `v` in the sum co-array.
pub fn sum_multiplicities(array: &SensorArray) -> BTreeMap<i64, usize> {
    let mut counts = BTreeMap::new();
    for &a in array.positions() {
        for &b in array.positions() {
            *counts.entry(a + b).or_insert(0) += 1;
        }
    }
    counts
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arr(p: &[i64]) -> SensorArray {
        SensorArray::new(p.to_vec()).unwrap()
    }

    /// Pairwise enumeration into a sorted, deduplicated list.
    fn brute(p: &[i64], op: impl Fn(i64, i64) -> i64) -> Vec<i64> {
        let mut v: Vec<i64> = p.iter().flat_map(|&a| p.iter().map(move |&b| (a, b))).map(|(a, b)| op(a, b)).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    #[test]
    fn sum_examples() {
        assert_eq!(sum_coarray(&arr(&[0, 1])).unwrap().elements(), &[0, 1, 2]);
        let mra7 = sum_coarray(&arr(&[0, 1, 2, 5, 8, 9, 10])).unwrap();
        assert_eq!(mra7.elements(), (0..=20).collect::<Vec<_>>().as_slice());
        assert!(mra7.is_contiguous());
        assert_eq!(sum_coarray(&arr(&[0, 1, 3])).unwrap().elements(), brute(&[0, 1, 3], |a, b| a + b).as_slice());
        assert_eq!(sum_coarray(&arr(&[0, 1, 3])).unwrap().elements(), &[0, 1, 2, 3, 4, 6]);
        assert_eq!(sum_coarray(&SensorArray::default()), Err(Error::EmptyArray));
    }

    #[test]
    fn diff_examples() {
        assert_eq!(diff_coarray(&arr(&[0, 2])).unwrap().elements(), &[-2, 0, 2]);
        assert_eq!(diff_coarray(&arr(&[0, 1, 3])).unwrap().elements(), &[-3, -2, -1, 0, 1, 2, 3]);
        let got = diff_coarray(&arr(&[0, 1, 4, 6])).unwrap();
        assert_eq!(got.elements(), brute(&[0, 1, 4, 6], |a, b| a - b).as_slice());
        // Golomb ruler: every difference is distinct and 1..=6 is covered.
        assert_eq!(got.elements(), (-6..=6).collect::<Vec<_>>().as_slice());
        assert_eq!(diff_coarray(&SensorArray::default()), Err(Error::EmptyArray));
    }

    #[test]
    fn contiguous_dof_examples() {
        for n in 1..8 {
            let ula = arr(&(0..n).collect::<Vec<_>>());
            let run = contiguous_dof(&sum_coarray(&ula).unwrap()).unwrap();
            assert_eq!(run, ContiguousRun { length: 2 * n - 1, offset: 0 });
        }
        let rmra = sum_coarray(&arr(&[0, 1, 2, 5, 8, 11, 12, 13])).unwrap();
        assert_eq!(contiguous_dof(&rmra).unwrap(), ContiguousRun { length: 27, offset: 0 });
        let gmra = sum_coarray(&arr(&[0, 1, 3, 5, 7, 8, 17, 18])).unwrap();
        assert_eq!(contiguous_dof(&gmra).unwrap(), ContiguousRun { length: 27, offset: 0 });
        assert!(!gmra.contains(27));
    }

    #[test]
    fn contiguous_dof_prefers_smallest_offset() {
        let c = CoArray { elements: vec![0, 1, 5, 6, 9], kind: CoArrayKind::Sum };
        assert_eq!(contiguous_dof(&c).unwrap(), ContiguousRun { length: 2, offset: 0 });
        let c = CoArray { elements: vec![0, 4, 5, 6], kind: CoArrayKind::Sum };
        assert_eq!(contiguous_dof(&c).unwrap(), ContiguousRun { length: 3, offset: 4 });
    }

    #[test]
    fn first_hole_examples() {
        assert_eq!(first_hole(&sum_coarray(&arr(&[0, 1, 3])).unwrap()), 5);
        assert_eq!(first_hole(&sum_coarray(&arr(&[0, 1, 2, 5, 8, 11, 12, 13])).unwrap()), 27);
        assert_eq!(first_hole(&diff_coarray(&arr(&[0, 1, 3])).unwrap()), 4);
    }

    #[test]
    fn multiplicities_count_ordered_pairs() {
        let m = sum_multiplicities(&arr(&[0, 1, 3]));
        assert_eq!(m[&0], 1);
        assert_eq!(m[&1], 2);
        assert_eq!(m[&4], 2);
        assert_eq!(m.values().sum::<usize>(), 9);
    }
}
