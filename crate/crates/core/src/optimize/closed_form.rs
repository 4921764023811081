use num_rational::Ratio;
use serde::Serialize;

use crate::constructions::{KloveParams, NestedParams};
use crate::error::{Error, Result};

/// Intermediate quantities of the CNA parameter formula for `N = 4m + k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ClosedFormTrace {
    /// `(k + 1) mod 4 - 1`, in `{-1, 0, 1, 2}`.
    pub alpha: i64,
    /// `(alpha - 1)^2 / 8`.
    #[serde(serialize_with = "ratio_string")]
    pub beta: Ratio<i64>,
    pub k_residue: i64,
    pub m: i64,
}

fn ratio_string<S: serde::Serializer>(r: &Ratio<i64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(r)
}

impl ClosedFormTrace {
    pub fn new(n: usize) -> Self {
        let n = n as i64;
        let k_residue = n % 4;
        let alpha = (k_residue + 1) % 4 - 1;
        Self { alpha, beta: Ratio::new((alpha - 1) * (alpha - 1), 8), k_residue, m: (n - k_residue) / 4 }
    }

    /// `(N^2 + 6N - 7)/8 - beta`.
    pub fn aperture(&self, n: usize) -> Ratio<i64> {
        let n = n as i64;
        Ratio::new(n * n + 6 * n - 7, 8) - self.beta
    }

    /// `(N - alpha)/2`.
    pub fn unit_spacings(&self, n: usize) -> i64 {
        (n as i64 - self.alpha) / 2
    }
}

/// CNA parameters of maximal aperture for `n` sensors.
pub fn cna_opt(n: usize) -> Result<(NestedParams, ClosedFormTrace)> {
    if n == 0 {
        return Err(Error::InvalidParameters("CNA needs at least one sensor".into()));
    }
    let t = ClosedFormTrace::new(n);
    let n1 = (n as i64 - t.alpha) / 4;
    let n2 = (n as i64 + t.alpha) / 2;
    Ok((NestedParams::new(n1 as usize, n2 as usize), t))
}

/// Minimum-redundancy Kløve parameters for the sensor counts with a known closed form.
pub fn ka_r_closed(n: usize) -> Option<KloveParams> {
    matches!(n, 20 | 43 | 66 | 112 | 250)
        .then(|| KloveParams::new((n + 3) / 23, 5 * (n + 3) / 23, (9 * n - 42) / (n + 26)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::cna;
    use crate::metrics::weights;

    #[test]
    fn cna_examples() {
        let (p, t) = cna_opt(7).unwrap();
        assert_eq!(p, NestedParams::new(2, 3));
        assert_eq!(t.alpha, -1);
        assert_eq!(cna(p).unwrap().positions(), &[0, 1, 2, 5, 8, 9, 10]);
        assert_eq!(cna_opt(24).unwrap().0, NestedParams::new(6, 12));
        assert_eq!(cna(cna_opt(24).unwrap().0).unwrap().aperture(), 89);
        let (p, t) = cna_opt(4).unwrap();
        assert_eq!((p, t.alpha), (NestedParams::new(1, 2), 0));
        assert_eq!(p.cna_aperture(), Some(4));
    }

    #[test]
    fn trace_invariants() {
        for n in 1..=200usize {
            let (p, t) = cna_opt(n).unwrap();
            assert!((-1..=2).contains(&t.alpha));
            assert_eq!(4 * t.m + t.k_residue, n as i64);
            assert_eq!(2 * p.n1 + p.n2, n);
            assert_eq!(Ratio::from_integer(p.cna_aperture().unwrap()), t.aperture(n), "n={n}");
            if n >= 4 {
                assert_eq!(weights(&cna(p).unwrap())[0] as i64, t.unit_spacings(n), "n={n}");
            }
        }
    }

    #[test]
    fn cna_opt_matches_exhaustive_sweep() {
        for n in 1..=200usize {
            let best = (0..=n / 2).filter_map(|n1| NestedParams::new(n1, n - 2 * n1).cna_aperture()).max().unwrap();
            assert_eq!(cna_opt(n).unwrap().0.cna_aperture(), Some(best), "n={n}");
        }
    }

    #[test]
    fn ka_closed_values() {
        assert_eq!(ka_r_closed(20), Some(KloveParams::new(1, 5, 3)));
        assert_eq!(ka_r_closed(43), Some(KloveParams::new(2, 10, 5)));
        assert_eq!(ka_r_closed(250), Some(KloveParams::new(11, 55, 8)));
        assert_eq!(ka_r_closed(21), None);
    }
}
