//! Stored asymptotic constants and closed-form scaling rows per array family.
//!
//! The bound constants are literature values and are not re-derived here. The
//! relative ratios are computed from `(R∞, F∞)` pairs with interval arithmetic.

use num_rational::Ratio;
use serde::Serialize;

/// Closed interval of non-negative reals; `f64::INFINITY` is allowed as an endpoint.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub const fn point(v: f64) -> Self {
        Self { lo: v, hi: v }
    }

    pub const fn new(lo: f64, hi: f64) -> Self {
        Self { lo, hi }
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    fn div(self, other: Interval) -> Interval {
        Interval::new(safe_div(self.lo, other.hi), safe_div(self.hi, other.lo))
    }

    fn mul(self, other: Interval) -> Interval {
        Interval::new(safe_mul(self.lo, other.lo), safe_mul(self.hi, other.hi))
    }

    fn sqrt(self) -> Interval {
        Interval::new(self.lo.sqrt(), self.hi.sqrt())
    }

    fn clamp_lo(self, min: f64) -> Interval {
        Interval::new(self.lo.max(min), self.hi.max(min))
    }

    fn clamp_hi(self, max: f64) -> Interval {
        Interval::new(self.lo.min(max), self.hi.min(max))
    }

    /// Two-decimal rendering, `"0.60-0.96"` or `"2"`-style points.
    pub fn display(&self) -> String {
        fn one(v: f64) -> String {
            if v.is_infinite() {
                "inf".to_string()
            } else {
                let s = format!("{v:.2}");
                s.trim_end_matches('0').trim_end_matches('.').to_string()
            }
        }
        if self.is_point() {
            one(self.lo)
        } else {
            format!("{}-{}", one(self.lo), one(self.hi))
        }
    }
}

fn safe_div(a: f64, b: f64) -> f64 {
    if a.is_infinite() && b.is_infinite() {
        1.0
    } else {
        a / b
    }
}

fn safe_mul(a: f64, b: f64) -> f64 {
    if a == 0.0 || b == 0.0 {
        0.0
    } else {
        a * b
    }
}

/// Lower bound `1/0.917` on the general MRA asymptotic redundancy.
pub fn general_mra_lower() -> f64 {
    1.0 / 0.917
}

/// Upper bound `147/85` on the general MRA asymptotic redundancy.
pub fn general_mra_upper() -> f64 {
    147.0 / 85.0
}

/// Lower bound `11/(7+√5)` on the restricted MRA asymptotic redundancy.
pub fn restricted_mra_lower() -> f64 {
    11.0 / (7.0 + 5f64.sqrt())
}

/// Upper bound `23/12` on the restricted MRA asymptotic redundancy.
pub fn restricted_mra_upper() -> f64 {
    23.0 / 12.0
}

/// Rounded bound pairs as quoted: general `(1.090, 1.730)`, restricted `(1.190, 1.917)`.
pub const GENERAL_MRA_BOUNDS: (f64, f64) = (1.090, 1.730);
pub const RESTRICTED_MRA_BOUNDS: (f64, f64) = (1.190, 1.917);

pub fn ka_r_inf() -> Ratio<i64> {
    Ratio::new(23, 12)
}

pub fn cna_r_inf() -> Ratio<i64> {
    Ratio::from_integer(2)
}

pub fn kma_r_inf() -> Ratio<i64> {
    Ratio::new(7, 4)
}

pub fn kma_f_inf() -> Ratio<i64> {
    Ratio::new(7, 11)
}

fn ratio_f64(r: Ratio<i64>) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// Array families with tabulated scaling behaviour.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Family {
    GeneralMra,
    Nested,
    KloveMossige,
    RestrictedMra,
    ReducedRedundancy,
    ConcatenatedNested,
    KloveConstantSpacing,
    KloveMinimumRedundancy,
}

/// Text of one closed-form row.
#[derive(Clone, Debug, Serialize)]
pub struct FormulaRow {
    pub family: Family,
    pub name: &'static str,
    pub symmetric: &'static str,
    pub contiguous_sum_coarray: bool,
    pub contiguous_dof: &'static str,
    pub total_dof: &'static str,
    pub aperture: &'static str,
    pub sensors: &'static str,
    pub unit_spacings: &'static str,
}

impl Family {
    pub const ALL: [Family; 8] = [
        Family::GeneralMra,
        Family::Nested,
        Family::KloveMossige,
        Family::RestrictedMra,
        Family::ReducedRedundancy,
        Family::ConcatenatedNested,
        Family::KloveConstantSpacing,
        Family::KloveMinimumRedundancy,
    ];

    pub fn short_name(&self) -> &'static str {
        match self {
            Family::GeneralMra => "MRA",
            Family::Nested => "NA",
            Family::KloveMossige => "KMA",
            Family::RestrictedMra => "R-MRA",
            Family::ReducedRedundancy => "RRA",
            Family::ConcatenatedNested => "CNA",
            Family::KloveConstantSpacing => "KA_S",
            Family::KloveMinimumRedundancy => "KA_R",
        }
    }

    pub fn formulas(&self) -> FormulaRow {
        let row = |name, symmetric, contiguous_sum_coarray, h, total, l, n, s1| FormulaRow {
            family: *self,
            name,
            symmetric,
            contiguous_sum_coarray,
            contiguous_dof: h,
            total_dof: total,
            aperture: l,
            sensors: n,
            unit_spacings: s1,
        };
        match self {
            Family::GeneralMra => {
                row("General Minimum-Redundancy Array", "no", false, "n/a", "n/a", ">= (H-1)/2 and <= H", "n/a", ">= 1")
            }
            Family::Nested => {
                row("Nested Array", "no", false, "(N^2+4N)/4", "H+N/2-1", "(N^2+2N-4)/4", "sqrt(4L+5)-1", "N/2")
            }
            Family::KloveMossige => row(
                "Klove-Mossige Array",
                "no",
                false,
                "(2N^2+8N+1)/7",
                "H+6N/7+O(1)",
                "(11N^2+16N-61)/49",
                "(7 sqrt(11L+15)-8)/11",
                "2(N+2)/7",
            ),
            Family::RestrictedMra => {
                row("Restricted Minimum-Redundancy Array", "no", true, "n/a", "H", "(H-1)/2", "n/a", ">= 2")
            }
            Family::ReducedRedundancy => {
                row("Reduced-Redundancy Array", "yes", true, "30N-706", "H", "15N-353", "(L+353)/15", "10")
            }
            Family::ConcatenatedNested => row(
                "Concatenated Nested Array",
                "yes",
                true,
                "(N^2+6N-3)/4",
                "H",
                "(N^2+6N-7)/8",
                "2 sqrt(2) sqrt(L+2)-3",
                "N/2-1/2",
            ),
            Family::KloveConstantSpacing => row(
                "Constant unit spacing Klove Array",
                "yes",
                true,
                "(N^2+10N-83)/4",
                "H",
                "(N^2+10N-87)/8",
                "2 sqrt(2) sqrt(L+14)-5",
                "8",
            ),
            Family::KloveMinimumRedundancy => row(
                "Minimum-Redundancy Klove Array",
                "yes",
                true,
                "(6N^2+36N-15)/23",
                "H",
                "(3N^2+18N-19)/23",
                "sqrt(23/3) sqrt(L+2)-3",
                "4N/23+12/23",
            ),
        }
    }

    /// Tabulated contiguous DoFs `H(N)`, where a closed form exists.
    pub fn contiguous_dof(&self, n: f64) -> Option<f64> {
        Some(match self {
            Family::Nested => (n * n + 4.0 * n) / 4.0,
            Family::KloveMossige => (2.0 * n * n + 8.0 * n + 1.0) / 7.0,
            Family::ReducedRedundancy => 30.0 * n - 706.0,
            Family::ConcatenatedNested => (n * n + 6.0 * n - 3.0) / 4.0,
            Family::KloveConstantSpacing => (n * n + 10.0 * n - 83.0) / 4.0,
            Family::KloveMinimumRedundancy => (6.0 * n * n + 36.0 * n - 15.0) / 23.0,
            Family::GeneralMra | Family::RestrictedMra => return None,
        })
    }

    /// Tabulated aperture `L(N)`.
    pub fn aperture(&self, n: f64) -> Option<f64> {
        Some(match self {
            Family::Nested => (n * n + 2.0 * n - 4.0) / 4.0,
            Family::KloveMossige => (11.0 * n * n + 16.0 * n - 61.0) / 49.0,
            Family::ReducedRedundancy => 15.0 * n - 353.0,
            Family::ConcatenatedNested => (n * n + 6.0 * n - 7.0) / 8.0,
            Family::KloveConstantSpacing => (n * n + 10.0 * n - 87.0) / 8.0,
            Family::KloveMinimumRedundancy => (3.0 * n * n + 18.0 * n - 19.0) / 23.0,
            Family::GeneralMra | Family::RestrictedMra => return None,
        })
    }

    /// Tabulated sensor count `N(L)`.
    pub fn sensors(&self, l: f64) -> Option<f64> {
        Some(match self {
            Family::Nested => (4.0 * l + 5.0).sqrt() - 1.0,
            Family::KloveMossige => (7.0 * (11.0 * l + 15.0).sqrt() - 8.0) / 11.0,
            Family::ReducedRedundancy => (l + 353.0) / 15.0,
            Family::ConcatenatedNested => 2.0 * 2f64.sqrt() * (l + 2.0).sqrt() - 3.0,
            Family::KloveConstantSpacing => 2.0 * 2f64.sqrt() * (l + 14.0).sqrt() - 5.0,
            Family::KloveMinimumRedundancy => (23.0f64 / 3.0).sqrt() * (l + 2.0).sqrt() - 3.0,
            Family::GeneralMra | Family::RestrictedMra => return None,
        })
    }

    /// Tabulated unit spacing count `S(1)` as a function of `N`.
    pub fn unit_spacings(&self, n: f64) -> Option<f64> {
        Some(match self {
            Family::Nested => n / 2.0,
            Family::KloveMossige => 2.0 * (n + 2.0) / 7.0,
            Family::ReducedRedundancy => 10.0,
            Family::ConcatenatedNested => n / 2.0 - 0.5,
            Family::KloveConstantSpacing => 8.0,
            Family::KloveMinimumRedundancy => 4.0 * n / 23.0 + 12.0 / 23.0,
            Family::GeneralMra | Family::RestrictedMra => return None,
        })
    }

    /// `(R∞, F∞)` of the family.
    pub fn asymptotics(&self) -> (Interval, Interval) {
        let r2 = ratio_f64(cna_r_inf());
        match self {
            Family::GeneralMra => (Interval::new(general_mra_lower(), general_mra_upper()), Interval::new(0.5, 1.0)),
            Family::Nested => (Interval::point(r2), Interval::point(0.5)),
            Family::KloveMossige => (Interval::point(ratio_f64(kma_r_inf())), Interval::point(ratio_f64(kma_f_inf()))),
            Family::RestrictedMra => {
                (Interval::new(restricted_mra_lower(), restricted_mra_upper()), Interval::point(1.0))
            }
            Family::ReducedRedundancy => (Interval::point(f64::INFINITY), Interval::point(1.0)),
            Family::ConcatenatedNested | Family::KloveConstantSpacing => (Interval::point(r2), Interval::point(1.0)),
            Family::KloveMinimumRedundancy => (Interval::point(ratio_f64(ka_r_inf())), Interval::point(1.0)),
        }
    }
}

/// Limits of `H/H_ref`, `N/N_ref` and `L/L_ref` when the named quantity is shared and grows.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RelativeRatios {
    pub h_at_fixed_n: Interval,
    pub h_at_fixed_l: Interval,
    pub n_at_fixed_h: Interval,
    pub n_at_fixed_l: Interval,
    pub l_at_fixed_h: Interval,
    pub l_at_fixed_n: Interval,
}

/// Asymptotic ratios of `family` against `reference` from their `(R∞, F∞)` pairs.
///
/// A family compared with itself gives exactly 1 everywhere. The general MRA is at least as
/// good as the restricted one, so its ratios against the R-MRA are clamped accordingly.
pub fn relative_ratios(family: Family, reference: Family) -> RelativeRatios {
    if family == reference {
        let one = Interval::point(1.0);
        return RelativeRatios {
            h_at_fixed_n: one,
            h_at_fixed_l: one,
            n_at_fixed_h: one,
            n_at_fixed_l: one,
            l_at_fixed_h: one,
            l_at_fixed_n: one,
        };
    }
    let (r, f) = family.asymptotics();
    let (r_ref, f_ref) = reference.asymptotics();
    let mut out = RelativeRatios {
        h_at_fixed_n: r_ref.div(r),
        h_at_fixed_l: f.div(f_ref),
        n_at_fixed_h: r.div(r_ref).sqrt(),
        n_at_fixed_l: r.div(r_ref).sqrt().mul(f.div(f_ref).sqrt()),
        l_at_fixed_h: f_ref.div(f),
        l_at_fixed_n: r_ref.div(r).mul(f_ref.div(f)),
    };
    if family == Family::GeneralMra && reference == Family::RestrictedMra {
        out.h_at_fixed_n = out.h_at_fixed_n.clamp_lo(1.0);
        out.n_at_fixed_h = out.n_at_fixed_h.clamp_hi(1.0);
        out.n_at_fixed_l = out.n_at_fixed_l.clamp_hi(1.0);
        out.l_at_fixed_h = out.l_at_fixed_h.clamp_lo(1.0);
        out.l_at_fixed_n = out.l_at_fixed_n.clamp_lo(1.0);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bounds_are_ordered_and_rounded() {
        assert!(general_mra_lower() < general_mra_upper());
        assert!(restricted_mra_lower() < restricted_mra_upper());
        assert!(GENERAL_MRA_BOUNDS.0 < general_mra_lower() && general_mra_upper() < GENERAL_MRA_BOUNDS.1);
        assert!(RESTRICTED_MRA_BOUNDS.0 < restricted_mra_lower() && restricted_mra_upper() < RESTRICTED_MRA_BOUNDS.1);
    }

    fn round2(v: f64) -> f64 {
        if v.is_infinite() {
            v
        } else {
            (v * 100.0).round() / 100.0
        }
    }

    #[test]
    fn relative_table_reproduces_tabulated_endpoints() {
        use Family::*;
        let inf = f64::INFINITY;
        // (H|N→∞, H|L→∞, N|H→∞, N|L→∞, L|H→∞, L|N→∞) against the restricted MRA.
        let expected: [(Family, [(f64, f64); 6]); 8] = [
            (GeneralMra, [(1.0, 1.76), (0.5, 1.0), (0.75, 1.0), (0.53, 1.0), (1.0, 2.0), (1.0, 3.52)]),
            (Nested, [(0.60, 0.96), (0.5, 0.5), (1.02, 1.30), (0.72, 0.92), (2.0, 2.0), (1.19, 1.92)]),
            (KloveMossige, [(0.68, 1.10), (0.64, 0.64), (0.96, 1.21), (0.76, 0.97), (1.57, 1.57), (1.07, 1.72)]),
            (RestrictedMra, [(1.0, 1.0); 6]),
            (ReducedRedundancy, [(0.0, 0.0), (1.0, 1.0), (inf, inf), (inf, inf), (1.0, 1.0), (0.0, 0.0)]),
            (ConcatenatedNested, [(0.60, 0.96), (1.0, 1.0), (1.02, 1.30), (1.02, 1.30), (1.0, 1.0), (0.60, 0.96)]),
            (KloveConstantSpacing, [(0.60, 0.96), (1.0, 1.0), (1.02, 1.30), (1.02, 1.30), (1.0, 1.0), (0.60, 0.96)]),
            (KloveMinimumRedundancy, [(0.62, 1.0), (1.0, 1.0), (1.0, 1.27), (1.0, 1.27), (1.0, 1.0), (0.62, 1.0)]),
        ];
        for (family, cells) in expected {
            let r = relative_ratios(family, RestrictedMra);
            let got = [r.h_at_fixed_n, r.h_at_fixed_l, r.n_at_fixed_h, r.n_at_fixed_l, r.l_at_fixed_h, r.l_at_fixed_n];
            for (i, (g, (lo, hi))) in got.iter().zip(cells).enumerate() {
                assert_eq!((round2(g.lo), round2(g.hi)), (lo, hi), "{family:?} column {i}");
            }
        }
    }

    #[test]
    fn redundancy_and_fill_constants() {
        let (r, f) = Family::KloveMossige.asymptotics();
        assert_eq!((round2(r.lo), round2(f.lo)), (1.75, 0.64));
        let (r, _) = Family::KloveMinimumRedundancy.asymptotics();
        assert_eq!(round2(r.lo), 1.92);
        let (r, _) = Family::GeneralMra.asymptotics();
        assert_eq!((round2(r.lo), round2(r.hi)), (1.09, 1.73));
        let (r, _) = Family::RestrictedMra.asymptotics();
        assert_eq!((round2(r.lo), round2(r.hi)), (1.19, 1.92));
    }

    #[test]
    fn closed_form_rows_are_consistent() {
        // Contiguous families: H = 2L + 1.
        for f in [Family::ConcatenatedNested, Family::KloveConstantSpacing, Family::KloveMinimumRedundancy] {
            for n in [20.0, 43.0, 100.0] {
                let h = f.contiguous_dof(n).unwrap();
                let l = f.aperture(n).unwrap();
                assert!((h - (2.0 * l + 1.0)).abs() < 1e-9, "{f:?}");
            }
        }
        // N(L(N)) = N for the invertible rows.
        for f in [
            Family::ConcatenatedNested,
            Family::KloveMinimumRedundancy,
            Family::KloveMossige,
            Family::Nested,
            Family::ReducedRedundancy,
        ] {
            let n = 41.0;
            assert!((f.sensors(f.aperture(n).unwrap()).unwrap() - n).abs() < 1e-9, "{f:?}");
        }
        // Maximizing H forces H >= L.
        for f in Family::ALL {
            if let (Some(h), Some(l)) = (f.contiguous_dof(50.0), f.aperture(50.0)) {
                assert!(h >= l, "{f:?}");
            }
        }
        assert_eq!(Family::KloveMinimumRedundancy.formulas().contiguous_dof, "(6N^2+36N-15)/23");
        assert_eq!(Family::ReducedRedundancy.formulas().contiguous_dof, "30N-706");
    }
}
