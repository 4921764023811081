//! Parametric array constructions and the symmetric generator framework.
//!
//! Every construction returns a normalized [`SensorArray`]. The closed-form
//! accessors on the parameter types follow the case analysis of each family
//! and are checked against the constructed sets in the tests.

use serde::{Deserialize, Serialize};

use crate::array::SensorArray;
use crate::coarray::{diff_coarray, first_hole, sum_coarray};
use crate::error::{Error, Result};

/// Dense ULA `N1` and sparse ULA `N2` sizes of the nested family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct NestedParams {
    pub n1: usize,
    pub n2: usize,
}

/// Parameters `(N1, N2, N3)` of the Kløve-Mossige generator and the Kløve array.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct KloveParams {
    pub n1: usize,
    pub n2: usize,
    pub n3: usize,
}

/// Generator `G` and shift `lambda` of the array `G ∪ (max G - G + lambda)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShiftedGenerator {
    pub generator: SensorArray,
    pub shift: i64,
}

/// Prefix, suffix and uniform mid section of a reduced-redundancy array.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RraParams {
    pub prefix: SensorArray,
    pub suffix: SensorArray,
    pub mid_spacing: i64,
    pub total_sensors: usize,
}

impl NestedParams {
    pub fn new(n1: usize, n2: usize) -> Self {
        Self { n1, n2 }
    }

    fn check(&self) -> Result<()> {
        if self.n1 == 0 && self.n2 == 0 {
            Err(Error::EmptyArray)
        } else {
            Ok(())
        }
    }

    /// CNA aperture `(N1+1)(N2+1) - 2`.
    pub fn cna_aperture(&self) -> Option<i64> {
        (self.n1 + self.n2 >= 1).then(|| ((self.n1 + 1) * (self.n2 + 1)) as i64 - 2)
    }

    pub fn cna_sensor_count(&self) -> usize {
        if self.n2 == 0 {
            self.n1
        } else {
            2 * self.n1 + self.n2
        }
    }

    pub fn cna_unit_spacings(&self) -> Option<u64> {
        let (n1, n2) = (self.n1 as u64, self.n2 as u64);
        match (n1, n2) {
            (0, 0) => None,
            (_, 0) => Some(n1 - 1),
            (0, _) => Some(n2 - 1),
            _ => Some(2 * n1),
        }
    }

    /// Shift `(N1+1)k + N1` for which the symmetric nested array is a CNA.
    pub fn cna_shift(&self, k: usize) -> i64 {
        ((self.n1 + 1) * k + self.n1) as i64
    }
}

impl KloveParams {
    pub fn new(n1: usize, n2: usize, n3: usize) -> Self {
        Self { n1, n2, n3 }
    }

    pub fn nested(&self) -> NestedParams {
        NestedParams::new(self.n1, self.n2)
    }

    fn check(&self) -> Result<()> {
        if self.n1 == 0 && self.n2 == 0 {
            Err(Error::InvalidParameters("Kløve-Mossige array is undefined for N1 = N2 = 0".into()))
        } else {
            Ok(())
        }
    }

    /// `max D_CNA` of the embedded CNA.
    pub fn cna_max(&self) -> i64 {
        self.nested().cna_aperture().unwrap_or(0)
    }

    /// Period `N1^2 + max D_CNA + 1` of the sparse mid section.
    pub fn period(&self) -> i64 {
        (self.n1 * self.n1) as i64 + self.cna_max() + 1
    }

    /// Kløve array aperture, valid for `N2 >= 1`.
    pub fn ka_aperture(&self) -> Option<i64> {
        let (n1, n2, n3) = (self.n1 as i64, self.n2 as i64, self.n3 as i64);
        (n2 >= 1).then(|| (n1 + 1) * (n3 * (n1 + n2) + 3 * n2 + 3) - 5)
    }

    /// Kløve array sensor count, valid for `N2 >= 1`.
    pub fn ka_sensor_count(&self) -> Option<usize> {
        (self.n2 >= 1).then(|| 2 * (2 * self.n1 + self.n2) + self.n3 * (self.n1 + 1))
    }

    /// Kløve array unit spacing count `S(1)`, valid for `N2 >= 1`.
    pub fn ka_unit_spacings(&self) -> Option<u64> {
        let (n1, n2, n3) = (self.n1 as u64, self.n2 as u64, self.n3 as u64);
        if n2 == 0 {
            return None;
        }
        Some(match (n1, n2) {
            (0, 1) => n3 + 1,
            (0, _) => 2 * (n2 - 1),
            (1, _) => n3 + 4,
            _ => 4 * n1,
        })
    }

    /// Kløve-Mossige generator sensor count, valid for `N2 >= 1`.
    pub fn kma_sensor_count(&self) -> Option<usize> {
        (self.n2 >= 1).then(|| 2 * self.n1 + self.n2 + self.n3 * (self.n1 + 1))
    }

    /// Shift `2 max D_CNA + 1 + (max D_CNA + N1^2) k` for which the symmetric KMA is a Kløve array.
    pub fn ka_shift(&self, k: usize) -> i64 {
        let m = self.cna_max();
        2 * m + 1 + (m + (self.n1 * self.n1) as i64) * k as i64
    }
}

impl ShiftedGenerator {
    pub fn new(generator: SensorArray, shift: i64) -> Result<Self> {
        if generator.is_empty() {
            return Err(Error::EmptyArray);
        }
        if !generator.is_normalized() {
            return Err(Error::NotNormalized);
        }
        if shift < 0 {
            return Err(Error::InvalidParameters(format!("shift must be non-negative, got {shift}")));
        }
        Ok(Self { generator, shift })
    }

    pub fn generator_max(&self) -> i64 {
        self.generator.max().unwrap_or(0)
    }

    /// Aperture `max G + lambda` of the symmetrized array.
    pub fn aperture(&self) -> i64 {
        self.generator_max() + self.shift
    }
}

fn range_array(start: i64, step: i64, count: usize) -> impl Iterator<Item = i64> {
    (0..count as i64).map(move |i| start + i * step)
}

/// `{0, ..., n-1}`.
pub fn ula(n: usize) -> Result<SensorArray> {
    if n == 0 {
        return Err(Error::InvalidParameters("ULA needs at least one sensor".into()));
    }
    SensorArray::from_positions(0..n as i64)
}

/// `D1 ∪ (D2 + N1)` with `D1 = {0:N1-1}` and `D2 = {0:N1+1:(N2-1)(N1+1)}`.
pub fn nested(p: NestedParams) -> Result<SensorArray> {
    p.check()?;
    let n1 = p.n1 as i64;
    let dense = range_array(0, 1, p.n1);
    let sparse = range_array(n1, n1 + 1, p.n2);
    SensorArray::from_positions(dense.chain(sparse))
}

/// Concatenated nested array `D1 ∪ (D2 + N1) ∪ (D1 + N2(N1+1))`.
pub fn cna(p: NestedParams) -> Result<SensorArray> {
    p.check()?;
    let n1 = p.n1 as i64;
    let tail = p.n2 as i64 * (n1 + 1);
    let positions = range_array(0, 1, p.n1).chain(range_array(n1, n1 + 1, p.n2)).chain(range_array(tail, 1, p.n1));
    SensorArray::from_positions(positions)
}

/// Sparse mid section `D3` (before its offset `2 max D_CNA + 1`).
fn klove_mid_section(p: KloveParams) -> impl Iterator<Item = i64> {
    let n1 = p.n1 as i64;
    let period = p.period();
    // {0:N1:N1^2}; the zero-step case N1 = 0 is the single point {0}.
    let block: Vec<i64> = if n1 == 0 { vec![0] } else { range_array(0, n1, p.n1 + 1).collect() };
    (0..p.n3 as i64).flat_map(move |i| block.clone().into_iter().map(move |b| b + i * period))
}

/// Kløve-Mossige generator `D_CNA ∪ (D3 + 2 max D_CNA + 1)`.
pub fn kma(p: KloveParams) -> Result<SensorArray> {
    p.check()?;
    let base = cna(p.nested())?;
    let offset = 2 * p.cna_max() + 1;
    let mid = SensorArray::from_positions(klove_mid_section(p).map(|v| v + offset))?;
    Ok(base.union(&mid))
}

/// Kløve array: the generator plus a second CNA at `(N3+2) max D_CNA + N3(N1^2+1) + 1`.
pub fn ka(p: KloveParams) -> Result<SensorArray> {
    let generator = kma(p)?;
    let base = cna(p.nested())?;
    let m = p.cna_max();
    let (n1, n3) = (p.n1 as i64, p.n3 as i64);
    let tail = base.shifted((n3 + 2) * m + n3 * (n1 * n1 + 1) + 1)?;
    Ok(generator.union(&tail))
}

/// `G ∪ (max G - G + lambda)`.
pub fn symmetrize(g: &ShiftedGenerator) -> Result<SensorArray> {
    let mirror = g.generator.mirrored(g.shift)?;
    Ok(g.generator.union(&mirror))
}

/// `P ∪ (M + max P) ∪ (S + max P + max M)` with `M = {0:M:(N-|P|-|S|+1)M}`.
pub fn rra(p: &RraParams) -> Result<SensorArray> {
    if p.prefix.is_empty() || p.suffix.is_empty() {
        return Err(Error::EmptyArray);
    }
    if !p.prefix.is_normalized() || !p.suffix.is_normalized() {
        return Err(Error::NotNormalized);
    }
    if p.mid_spacing < 1 {
        return Err(Error::InvalidParameters("mid spacing must be positive".into()));
    }
    let ends = p.prefix.len() + p.suffix.len();
    if p.total_sensors + 1 < ends {
        return Err(Error::InvalidParameters(format!(
            "inconsistent counts: {} sensors cannot hold a prefix of {} and a suffix of {}",
            p.total_sensors,
            p.prefix.len(),
            p.suffix.len()
        )));
    }
    let mid_count = p.total_sensors + 2 - ends;
    let p_max = p.prefix.max().unwrap_or(0);
    let m_max = (mid_count as i64 - 1) * p.mid_spacing;
    let mid = SensorArray::from_positions(range_array(p_max, p.mid_spacing, mid_count))?;
    let out = p.prefix.union(&mid).union(&p.suffix.shifted(p_max + m_max)?);
    if out.len() != p.total_sensors {
        return Err(Error::InvalidParameters(format!(
            "inconsistent counts: construction yields {} sensors, expected {}",
            out.len(),
            p.total_sensors
        )));
    }
    Ok(out)
}

/// Outcome of the two set inclusions that characterize a contiguous symmetric co-array.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionCheck {
    /// `(G-G) ∪ (G+G-L) ∪ (L-(G+G)) ⊇ {0:max G}`.
    pub c1: bool,
    /// `G+G ⊇ {0:lambda-1}`.
    pub c2: bool,
}

impl ConditionCheck {
    pub fn both(&self) -> bool {
        self.c1 && self.c2
    }
}

pub fn check_conditions(g: &ShiftedGenerator) -> Result<ConditionCheck> {
    let g_max = g.generator_max();
    let l = g.aperture();
    let sums = sum_coarray(&g.generator)?;
    let diffs = diff_coarray(&g.generator)?;
    let mut covered = vec![false; g_max as usize + 1];
    let mut mark = |v: i64| {
        if (0..=g_max).contains(&v) {
            covered[v as usize] = true;
        }
    };
    for &d in diffs.elements() {
        mark(d);
    }
    for &s in sums.elements() {
        mark(s - l);
        mark(l - s);
    }
    Ok(ConditionCheck { c1: covered.iter().all(|&c| c), c2: first_hole(&sums) >= g.shift })
}

/// Cheap shortcuts, each of which implies one of the two conditions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SufficientConditions {
    /// C1 holds because `G` has a contiguous difference co-array.
    pub c1_diff_contiguous: bool,
    /// C1 holds because `G` has a contiguous sum co-array and `lambda <= max G + 1`.
    pub c1_sum_contiguous_small_shift: bool,
    /// C2 holds because `lambda <= 1`.
    pub c2_shift_at_most_one: bool,
    /// C2 holds because `lambda <= 3` and `{0, 1} ⊆ G`.
    pub c2_shift_at_most_three: bool,
    /// C2 holds because `G` has a contiguous sum co-array and `lambda <= 2 max G + 1`.
    pub c2_sum_contiguous: bool,
}

impl SufficientConditions {
    pub fn implies_c1(&self) -> bool {
        self.c1_diff_contiguous || self.c1_sum_contiguous_small_shift
    }

    pub fn implies_c2(&self) -> bool {
        self.c2_shift_at_most_one || self.c2_shift_at_most_three || self.c2_sum_contiguous
    }
}

pub fn sufficient_conditions(g: &ShiftedGenerator) -> Result<SufficientConditions> {
    let g_max = g.generator_max();
    let lambda = g.shift;
    let sum_contiguous = sum_coarray(&g.generator)?.is_contiguous();
    let diff_contiguous = diff_coarray(&g.generator)?.is_contiguous();
    let has_unit_pair = g.generator.contains(0) && g.generator.contains(1);
    Ok(SufficientConditions {
        c1_diff_contiguous: diff_contiguous,
        c1_sum_contiguous_small_shift: sum_contiguous && lambda <= g_max + 1,
        c2_shift_at_most_one: lambda <= 1,
        c2_shift_at_most_three: lambda <= 3 && g.generator.len() >= 2 && has_unit_pair,
        c2_sum_contiguous: sum_contiguous && lambda <= 2 * g_max + 1,
    })
}

/// First hole of the nested array's sum co-array, i.e. the largest admissible shift.
pub fn na_first_hole(p: NestedParams) -> Result<i64> {
    p.check()?;
    let (n1, n2) = (p.n1 as i64, p.n2 as i64);
    Ok(if n1 == 0 || n2 == 0 { 2 * (n1 + n2) - 1 } else { n2 * (n1 + 1) + n1 })
}

/// First hole of the Kløve-Mossige generator's sum co-array.
///
/// With `h = N3 (max D_CNA + 1 + N1^2) + 2 max D_CNA + 1`: the generator is a ULA when
/// `N1 + N2 = 1`; the hole moves to `h + 1` when `N1 >= 2`, `N2 = 1` and the mid section
/// is non-empty; otherwise it is `h`.
pub fn kma_first_hole(p: KloveParams) -> Result<i64> {
    p.check()?;
    let m = p.cna_max();
    let h = p.n3 as i64 * p.period() + 2 * m + 1;
    Ok(if p.n1 + p.n2 == 1 {
        let g_max = kma(p)?.max().unwrap_or(0);
        2 * g_max + 1
    } else if p.n1 >= 2 && p.n2 == 1 && p.n3 >= 1 {
        h + 1
    } else {
        h
    })
}
