//! Scalar figures of merit of a physical array.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigUint;
use num_rational::{BigRational, Ratio};
use num_traits::{ToPrimitive, Zero};

use crate::array::SensorArray;
use crate::coarray::{contiguous_dof, first_hole, sum_coarray, CoArrayKind, ContiguousRun};
use crate::error::{Error, Result};

/// Exact value of the spacing regularizer
/// `sum_d S(d) * 10^(-d * width)`, with `width` the digit count of the reference aperture.
///
/// Every `S(d)` is at most the reference aperture, so each weight occupies its own
/// block of `width` decimal digits and the value is stored as those blocks.
#[derive(Clone, Debug)]
pub struct Varsigma {
    width: u32,
    terms: Vec<u64>,
}

impl Varsigma {
    pub fn zero() -> Self {
        Self { width: 1, terms: Vec::new() }
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    /// Digit blocks `S(1), S(2), ...` with trailing zero blocks removed.
    pub fn terms(&self) -> &[u64] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn to_rational(&self) -> BigRational {
        let mut numerator = BigUint::zero();
        let block = BigUint::from(10u32).pow(self.width);
        for &t in &self.terms {
            numerator = numerator * &block + BigUint::from(t);
        }
        let denominator = BigUint::from(10u32).pow(self.width * self.terms.len() as u32);
        BigRational::new(numerator.into(), denominator.into())
    }

    pub fn to_f64(&self) -> f64 {
        let scale = 10f64.powi(-(self.width as i32));
        let mut value = 0.0;
        let mut weight = 1.0;
        for &t in &self.terms {
            weight *= scale;
            if weight == 0.0 {
                break;
            }
            value += t as f64 * weight;
        }
        value
    }

    /// Full decimal expansion, e.g. `0.040203`.
    pub fn to_decimal_string(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let w = self.width as usize;
        let mut digits = String::with_capacity(2 + w * self.terms.len());
        digits.push_str("0.");
        for t in &self.terms {
            digits.push_str(&format!("{t:0w$}"));
        }
        while digits.ends_with('0') {
            digits.pop();
        }
        digits
    }

    /// At most `decimals` digits after the point, with a trailing ellipsis when cut.
    pub fn truncated(&self, decimals: usize) -> String {
        let full = self.to_decimal_string();
        if full.len() <= decimals + 2 {
            full
        } else {
            format!("{}…", &full[..decimals + 2])
        }
    }
}

impl Ord for Varsigma {
    fn cmp(&self, other: &Self) -> Ordering {
        if self.width == other.width {
            self.terms.cmp(&other.terms)
        } else {
            self.to_rational().cmp(&other.to_rational())
        }
    }
}

impl PartialOrd for Varsigma {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl PartialEq for Varsigma {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Varsigma {}

impl fmt::Display for Varsigma {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_decimal_string())
    }
}

/// Figures of merit of a normalized array.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArrayMetrics {
    pub n_sensors: usize,
    pub aperture: i64,
    pub contiguous_dof: ContiguousRun,
    pub first_hole: i64,
    pub redundancy: Ratio<u64>,
    pub total_dof: usize,
    /// `weights[d - 1] = S(d)` for `d = 1..=aperture`.
    pub weights: Vec<u64>,
    /// Regularizer with the array's own aperture as reference.
    pub varsigma: Varsigma,
    pub symmetric: bool,
}

impl ArrayMetrics {
    /// `S(d)`, zero outside `1..=aperture`.
    pub fn weight(&self, d: i64) -> u64 {
        if d >= 1 && d <= self.aperture {
            self.weights[(d - 1) as usize]
        } else {
            0
        }
    }

    pub fn unit_spacings(&self) -> u64 {
        self.weight(1)
    }
}

pub fn metrics(array: &SensorArray) -> Result<ArrayMetrics> {
    if array.is_empty() {
        return Err(Error::EmptyArray);
    }
    if !array.is_normalized() {
        return Err(Error::NotNormalized);
    }
    let sums = sum_coarray(array)?;
    let run = contiguous_dof(&sums)?;
    let aperture = array.aperture();
    let weights = weights(array);
    let varsigma = varsigma_from_weights(&weights, aperture.max(1))?;
    Ok(ArrayMetrics {
        n_sensors: array.len(),
        aperture,
        contiguous_dof: run,
        first_hole: first_hole(&sums),
        redundancy: redundancy(array.len(), run.length),
        total_dof: sums.len(),
        weights,
        varsigma,
        symmetric: is_symmetric(array),
    })
}

/// `N(N+1)/2` over `H`.
pub fn redundancy(n_sensors: usize, contiguous_dof: i64) -> Ratio<u64> {
    let n = n_sensors as u64;
    Ratio::new(n * (n + 1) / 2, contiguous_dof.max(1) as u64)
}

/// Unordered-pair counts `S(d)` for `d = 1..=aperture`.
pub fn weights(array: &SensorArray) -> Vec<u64> {
    let d = array.positions();
    let mut s = vec![0u64; array.aperture().max(0) as usize];
    for (i, &a) in d.iter().enumerate() {
        for &b in &d[i + 1..] {
            s[(b - a - 1) as usize] += 1;
        }
    }
    s
}

/// Spacing regularizer with digit width fixed by `reference_aperture`.
pub fn varsigma(array: &SensorArray, reference_aperture: i64) -> Result<Varsigma> {
    if array.is_empty() {
        return Err(Error::EmptyArray);
    }
    if array.aperture() == 0 {
        return Ok(Varsigma::zero());
    }
    varsigma_from_weights(&weights(array), reference_aperture).and_then(|v| {
        if reference_aperture < array.aperture() {
            Err(Error::ReferenceApertureTooSmall { reference: reference_aperture, aperture: array.aperture() })
        } else {
            Ok(v)
        }
    })
}

fn varsigma_from_weights(weights: &[u64], reference_aperture: i64) -> Result<Varsigma> {
    if reference_aperture < 1 {
        return Err(Error::InvalidParameters("reference aperture must be at least 1".into()));
    }
    let width = reference_aperture.to_string().len() as u32;
    let mut terms = weights.to_vec();
    while terms.last() == Some(&0) {
        terms.pop();
    }
    Ok(Varsigma { width, terms })
}

/// `D == max D - D`.
pub fn is_symmetric(array: &SensorArray) -> bool {
    let d = array.positions();
    let Some(&hi) = d.last() else {
        return true;
    };
    let lo = d[0];
    d.iter().zip(d.iter().rev()).all(|(&a, &b)| a - lo == hi - b)
}

/// Necessary end sensors for a contiguous co-array of the given kind.
///
/// Sum: `{0, 1, L-1, L}`. Difference: `{0, 1, L}` or its mirror `{0, L-1, L}`.
/// A single sensor at 0 passes trivially.
pub fn check_necessary_sensors(array: &SensorArray, kind: CoArrayKind) -> bool {
    let Some(l) = array.max() else {
        return false;
    };
    if array.positions() == [0] {
        return true;
    }
    let has = |p: i64| array.contains(p);
    match kind {
        CoArrayKind::Sum => has(0) && has(1) && has(l - 1) && has(l),
        CoArrayKind::Difference => has(0) && has(l) && (has(1) || has(l - 1)),
    }
}

pub fn ratio_to_f64(r: &Ratio<u64>) -> f64 {
    r.numer().to_f64().unwrap_or(f64::NAN) / r.denom().to_f64().unwrap_or(f64::NAN)
}
