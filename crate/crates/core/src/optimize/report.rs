use serde::Serialize;

use crate::asymptotic::{
    relative_ratios, Family, FormulaRow, Interval, RelativeRatios, GENERAL_MRA_BOUNDS, RESTRICTED_MRA_BOUNDS,
};

/// Asymptotic figures of one family, relative to the restricted MRA.
#[derive(Clone, Debug, Serialize)]
pub struct RatioRow {
    pub family: Family,
    pub name: &'static str,
    pub r_inf: Interval,
    pub f_inf: Interval,
    pub relative: RelativeRatios,
}

#[derive(Clone, Debug, Serialize)]
pub struct AsymptoticReport {
    pub formulas: Vec<FormulaRow>,
    pub ratios: Vec<RatioRow>,
    pub general_mra_bounds: (f64, f64),
    pub restricted_mra_bounds: (f64, f64),
}

/// Closed-form scaling rows of every family and their asymptotic ratios.
pub fn asymptotic_report() -> AsymptoticReport {
    let ratios = Family::ALL
        .iter()
        .map(|&family| {
            let (r_inf, f_inf) = family.asymptotics();
            RatioRow {
                family,
                name: family.short_name(),
                r_inf,
                f_inf,
                relative: relative_ratios(family, Family::RestrictedMra),
            }
        })
        .collect();
    AsymptoticReport {
        formulas: Family::ALL.iter().map(Family::formulas).collect(),
        ratios,
        general_mra_bounds: GENERAL_MRA_BOUNDS,
        restricted_mra_bounds: RESTRICTED_MRA_BOUNDS,
    }
}
