//! Data behind the summary tables and the per-`N` figure series.

use rayon::prelude::*;
use symarray::asymptotic::{relative_ratios, Family, Interval};
use symarray::constructions::{ka, ula, KloveParams};
use symarray::metrics::{ratio_to_f64, redundancy, weights};
use symarray::optimize::{
    asymptotic_report, cna_opt, ka_r_grid, kma_opt, mra_optima, mra_search_with, na_opt, MraConfig,
};
use symarray::{constructions, varsigma, SensorArray};

use crate::output::{quoted_positions, Table};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Which {
    #[value(name = "I")]
    I,
    #[value(name = "II")]
    II,
    #[value(name = "III")]
    III,
    #[value(name = "IV")]
    IV,
    Fig5,
    Fig6,
    Fig7,
}

pub fn table(which: Which, n_min: usize, n_max: usize, mra: &MraConfig) -> anyhow::Result<Table> {
    Ok(match which {
        Which::I => symbols(),
        Which::II => mra_examples(mra)?,
        Which::III => formulas(),
        Which::IV => ratios(),
        Which::Fig5 | Which::Fig6 | Which::Fig7 => series(which, n_min, n_max, mra)?,
    })
}

fn symbols() -> Table {
    let mut t = Table::new("symbols", &["symbol", "meaning", "range"]);
    for (s, m, r) in [
        ("|D_sum|", "total DoFs", "{N:2L+1}"),
        ("H", "contiguous DoFs", "{1:|D_sum|}"),
        ("R", "redundancy", "[1,inf)"),
        ("S(d)", "d-spacing multiplicity", "{0:min(N-1,L-d+1)}"),
        ("R_inf", "asymptotic redundancy", "[1,inf)"),
        ("F_inf", "asymptotic co-array filling ratio", "[0,1]"),
    ] {
        t.push(vec![s.into(), m.into(), r.into()]);
    }
    t
}

/// Eight-sensor optima: the restricted ties and the general winner, with the regularizer
/// referenced to the largest aperture among them.
fn mra_examples(mra: &MraConfig) -> anyhow::Result<Table> {
    let mut arrays: Vec<(SensorArray, bool)> = mra_optima(8, true, mra)?.into_iter().map(|a| (a, true)).collect();
    arrays.push((mra_search_with(8, false, mra)?.array, false));
    let reference = arrays.iter().map(|(a, _)| a.aperture()).max().unwrap_or(0);
    let mut t = Table::new("mra_n8", &["positions", "restricted", "H", "S(1)", "S(2)", "S(3)", "varsigma"]);
    for (a, restricted) in arrays {
        let m = symarray::metrics(&a)?;
        t.push(vec![
            quoted_positions(a.positions()),
            restricted.to_string(),
            m.first_hole.to_string(),
            m.weight(1).to_string(),
            m.weight(2).to_string(),
            m.weight(3).to_string(),
            varsigma(&a, reference)?.truncated(6),
        ]);
    }
    Ok(t)
}

fn formulas() -> Table {
    let mut t = Table::new(
        "closed_forms",
        &["array", "symmetric", "contiguous_sum_coarray", "H", "total_dof", "L", "N", "S(1)"],
    );
    for row in asymptotic_report().formulas {
        t.push(vec![
            row.family.short_name().into(),
            row.symmetric.into(),
            row.contiguous_sum_coarray.to_string(),
            row.contiguous_dof.into(),
            row.total_dof.into(),
            row.aperture.into(),
            row.sensors.into(),
            row.unit_spacings.into(),
        ]);
    }
    t
}

fn ratios() -> Table {
    let mut t = Table::new(
        "asymptotic_ratios",
        &["array", "R_inf", "F_inf", "H/H_ref|N", "H/H_ref|L", "N/N_ref|H", "N/N_ref|L", "L/L_ref|H", "L/L_ref|N"],
    );
    let cells = |i: &Interval| i.display();
    for family in Family::ALL {
        let (r, f) = family.asymptotics();
        let x = relative_ratios(family, Family::RestrictedMra);
        t.push(vec![
            family.short_name().into(),
            cells(&r),
            cells(&f),
            cells(&x.h_at_fixed_n),
            cells(&x.h_at_fixed_l),
            cells(&x.n_at_fixed_h),
            cells(&x.n_at_fixed_l),
            cells(&x.l_at_fixed_h),
            cells(&x.l_at_fixed_n),
        ]);
    }
    t
}

/// Max-aperture Kløve array with `N1 = 2`, which keeps `S(1) = 8`.
fn ka_constant_spacing(n: usize) -> Option<SensorArray> {
    (0..=n / 3)
        .filter_map(|n3| {
            let rest = n.checked_sub(3 * n3)?;
            (rest % 2 == 0 && rest / 2 > 4).then(|| KloveParams::new(2, rest / 2 - 4, n3))
        })
        .max_by_key(|p| (p.ka_aperture(), std::cmp::Reverse(p.n3)))
        .and_then(|p| ka(p).ok())
}

fn family_arrays(n: usize, mra: &MraConfig) -> anyhow::Result<Vec<(&'static str, SensorArray)>> {
    let mut out = vec![("ULA", ula(n)?)];
    if n >= 2 {
        out.push(("NA", na_opt(n)?.array));
        out.push(("KMA", kma_opt(n)?.array));
        out.push(("KA_R", ka_r_grid(n)?.array));
    }
    out.push(("CNA", constructions::cna(cna_opt(n)?.0)?));
    if let Some(a) = ka_constant_spacing(n) {
        out.push(("KA_S", a));
    }
    if n <= mra.limit {
        out.push(("R-MRA", mra_search_with(n, true, mra)?.array));
    }
    Ok(out)
}

fn series(which: Which, n_min: usize, n_max: usize, mra: &MraConfig) -> anyhow::Result<Table> {
    let (name, value) = match which {
        Which::Fig5 => ("aperture_vs_n", "L"),
        Which::Fig6 => ("redundancy_vs_n", "R"),
        _ => ("unit_spacings_vs_n", "S(1)"),
    };
    let mut t = Table::new(name, &["array", "N", value, "H", "positions"]);
    let per_n = (n_min.max(1)..=n_max)
        .into_par_iter()
        .map(|n| family_arrays(n, mra).map(|v| (n, v)))
        .collect::<anyhow::Result<Vec<_>>>()?;
    for (n, arrays) in per_n {
        for (family, a) in arrays {
            let m = symarray::metrics(&a)?;
            let cell = match which {
                Which::Fig5 => a.aperture().to_string(),
                Which::Fig6 => format!("{:.6}", ratio_to_f64(&redundancy(n, m.contiguous_dof.length))),
                _ => weights(&a).first().copied().unwrap_or(0).to_string(),
            };
            t.push(vec![
                family.into(),
                n.to_string(),
                cell,
                m.contiguous_dof.length.to_string(),
                quoted_positions(a.positions()),
            ]);
        }
    }
    Ok(t)
}
