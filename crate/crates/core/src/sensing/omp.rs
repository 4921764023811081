use std::collections::BTreeMap;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::Serialize;

use super::model::{khatri_rao_dictionary, Measurement, MeasurementModel};
use crate::error::{Error, Result};

/// Recovery dictionary over an angle grid.
///
/// The folded form keeps one row per sum co-array element `v`, scaled by `√w_v` where
/// `w_v` counts the ordered sensor pairs summing to `v`. Measurements are folded to the
/// class sums divided by `√w_v`. Inner products with dictionary columns, column norms and
/// least-squares fits are then identical to the full `N²`-row problem.
#[derive(Clone, Debug)]
pub struct Dictionary {
    matrix: DMatrix<Complex64>,
    grid: Vec<f64>,
    measurement_len: usize,
    /// Physical rows grouped by virtual position, for the folded form.
    classes: Option<Vec<Vec<usize>>>,
}

impl Dictionary {
    /// The `N² × V` Khatri-Rao dictionary.
    pub fn full(model: &MeasurementModel) -> Self {
        let n = model.array().len();
        Self {
            matrix: khatri_rao_dictionary(model),
            grid: model.grid().to_vec(),
            measurement_len: n * n,
            classes: None,
        }
    }

    /// One row per distinct sum of sensor positions.
    pub fn folded(model: &MeasurementModel) -> Self {
        let d = model.array().positions();
        let n = d.len();
        let mut by_sum: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
        for a in 0..n {
            for b in 0..n {
                by_sum.entry(d[a] + d[b]).or_default().push(a * n + b);
            }
        }
        let sums: Vec<(i64, f64)> = by_sum.iter().map(|(&v, rows)| (v, (rows.len() as f64).sqrt())).collect();
        let grid = model.grid();
        let matrix = DMatrix::from_fn(sums.len(), grid.len(), |r, i| model.phase(sums[r].0, grid[i]) * sums[r].1);
        Self { matrix, grid: grid.to_vec(), measurement_len: n * n, classes: Some(by_sum.into_values().collect()) }
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }

    pub fn grid(&self) -> &[f64] {
        &self.grid
    }

    /// Measurement in the dictionary's row space and the squared norm of the part orthogonal to it.
    fn fold(&self, x: &DVector<Complex64>) -> Result<(DVector<Complex64>, f64)> {
        if x.len() != self.measurement_len {
            return Err(Error::InvalidParameters(format!(
                "measurement has {} entries, expected {}",
                x.len(),
                self.measurement_len
            )));
        }
        let Some(classes) = &self.classes else {
            return Ok((x.clone(), 0.0));
        };
        let mut orthogonal = 0.0;
        let y = DVector::from_iterator(
            classes.len(),
            classes.iter().map(|rows| {
                let sum: Complex64 = rows.iter().map(|&r| x[r]).sum();
                let w = rows.len() as f64;
                orthogonal += rows.iter().map(|&r| x[r].norm_sqr()).sum::<f64>() - sum.norm_sqr() / w;
                sum / w.sqrt()
            }),
        );
        Ok((y, orthogonal.max(0.0)))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OmpResult {
    /// Grid indices in selection order.
    pub support: Vec<usize>,
    pub estimated_angles: Vec<f64>,
    #[serde(skip)]
    pub coefficients: Vec<Complex64>,
    /// Norm of the full-length residual after the final refit.
    pub residual_norm: f64,
    pub residual_history: Vec<f64>,
    /// Whether any refit fell back to a ridge-regularized solve.
    pub regularized: bool,
}

impl OmpResult {
    pub fn magnitudes(&self) -> Vec<f64> {
        self.coefficients.iter().map(|c| c.norm()).collect()
    }
}

/// Least-squares coefficients on the selected columns.
fn refit(matrix: &DMatrix<Complex64>, support: &[usize], y: &DVector<Complex64>) -> (DVector<Complex64>, bool) {
    let a = matrix.select_columns(support);
    let gram = a.ad_mul(&a);
    let rhs = a.ad_mul(y);
    if let Some(ch) = gram.clone().cholesky() {
        return (ch.solve(&rhs), false);
    }
    let k = support.len();
    let ridge = 1e-10 * gram.trace().re / k as f64;
    let mut reg = gram;
    for i in 0..k {
        reg[(i, i)] += Complex64::new(ridge, 0.0);
    }
    let ch = reg.cholesky().expect("ridge makes the Gram matrix positive definite");
    (ch.solve(&rhs), true)
}

fn residual(
    matrix: &DMatrix<Complex64>,
    support: &[usize],
    coefficients: &DVector<Complex64>,
    y: &DVector<Complex64>,
) -> DVector<Complex64> {
    y - matrix.select_columns(support) * coefficients
}

/// Orthogonal matching pursuit with `k` greedy selections.
///
/// Each step picks the column maximizing `|<a_i, r>| / ‖a_i‖`, lowest index on ties, then
/// refits all selected coefficients by least squares.
pub fn omp(measurement: &Measurement, dictionary: &Dictionary, k: usize) -> Result<OmpResult> {
    let v = dictionary.grid.len();
    if k > v {
        return Err(Error::InvalidParameters(format!("sparsity {k} exceeds grid size {v}")));
    }
    let (y, orthogonal) = dictionary.fold(&measurement.x)?;
    let matrix = &dictionary.matrix;
    let norms: Vec<f64> = matrix.column_iter().map(|c| c.norm()).collect();
    let mut selected = vec![false; v];
    let mut support = Vec::with_capacity(k);
    let mut coefficients = DVector::zeros(0);
    let mut r = y.clone();
    let mut history = Vec::with_capacity(k);
    let mut regularized = false;
    for _ in 0..k {
        let corr = matrix.ad_mul(&r);
        let mut best: Option<(usize, f64)> = None;
        for i in 0..v {
            if selected[i] || norms[i] == 0.0 {
                continue;
            }
            let score = corr[i].norm() / norms[i];
            if best.is_none_or(|(_, s)| score > s) {
                best = Some((i, score));
            }
        }
        let Some((i, _)) = best else { break };
        selected[i] = true;
        support.push(i);
        let (c, reg) = refit(matrix, &support, &y);
        regularized |= reg;
        r = residual(matrix, &support, &c, &y);
        coefficients = c;
        history.push((r.norm_squared() + orthogonal).sqrt());
    }
    Ok(finish(dictionary, support, coefficients, history, regularized))
}

/// Least-squares fit on a fixed support.
pub fn fit_support(measurement: &Measurement, dictionary: &Dictionary, support: &[usize]) -> Result<OmpResult> {
    if let Some(&i) = support.iter().find(|&&i| i >= dictionary.grid.len()) {
        return Err(Error::InvalidParameters(format!("grid index {i} out of range")));
    }
    let (y, orthogonal) = dictionary.fold(&measurement.x)?;
    let (c, regularized) = refit(&dictionary.matrix, support, &y);
    let r = residual(&dictionary.matrix, support, &c, &y);
    let norm = (r.norm_squared() + orthogonal).sqrt();
    Ok(finish(dictionary, support.to_vec(), c, vec![norm], regularized))
}

fn finish(
    dictionary: &Dictionary,
    support: Vec<usize>,
    coefficients: DVector<Complex64>,
    history: Vec<f64>,
    regularized: bool,
) -> OmpResult {
    OmpResult {
        estimated_angles: support.iter().map(|&i| dictionary.grid[i]).collect(),
        support,
        coefficients: coefficients.iter().copied().collect(),
        residual_norm: history.last().copied().unwrap_or(0.0),
        residual_history: history,
        regularized,
    }
}

/// Root-mean-square angle error in degrees, pairing both lists after sorting.
pub fn rmse(estimated: &[f64], truth: &[f64]) -> Result<f64> {
    if estimated.len() != truth.len() || truth.is_empty() {
        return Err(Error::InvalidParameters(format!(
            "cannot pair {} estimates with {} true angles",
            estimated.len(),
            truth.len()
        )));
    }
    let mut e = estimated.to_vec();
    let mut t = truth.to_vec();
    e.sort_by(f64::total_cmp);
    t.sort_by(f64::total_cmp);
    let mse = e.iter().zip(&t).map(|(a, b)| (a - b).powi(2)).sum::<f64>() / t.len() as f64;
    Ok(mse.sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::array::SensorArray;
    use crate::sensing::model::{simulate, uniform_grid, Scene};
    use approx::assert_relative_eq;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn setup(p: &[i64], points: usize) -> MeasurementModel {
        let grid = uniform_grid(points, -75.0, 75.0).unwrap();
        MeasurementModel::half_wavelength(SensorArray::new(p.to_vec()).unwrap(), grid).unwrap()
    }

    fn on_grid_scene(model: &MeasurementModel, idx: &[usize], seed: u64) -> Scene {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let angles = idx.iter().map(|&i| model.grid()[i]).collect();
        Scene::new(angles, super::super::model::random_phases(idx.len(), &mut rng)).unwrap()
    }

    #[test]
    fn single_scatterer_exact() {
        let m = setup(&[0, 1, 3, 7], 301);
        let scene = on_grid_scene(&m, &[120], 1);
        let x = simulate(&m, &scene, None, 0);
        let r = omp(&x, &Dictionary::folded(&m), 1).unwrap();
        assert_eq!(r.support, vec![120]);
        assert!(r.residual_norm <= 1e-9 * x.x.norm());
    }

    #[test]
    fn two_scatterers_with_ula() {
        let m = setup(&[0, 1, 2, 3, 4, 5, 6, 7], 151);
        let scene = on_grid_scene(&m, &[40, 100], 2);
        let x = simulate(&m, &scene, None, 0);
        let mut r = omp(&x, &Dictionary::full(&m), 2).unwrap();
        r.support.sort_unstable();
        assert_eq!(r.support, vec![40, 100]);
        assert!(r.residual_norm <= 1e-9 * x.x.norm());
    }

    #[test]
    fn folded_matches_full() {
        let m = setup(&[0, 1, 2, 5, 8, 9, 10], 401);
        let scene = on_grid_scene(&m, &[30, 90, 150, 210, 280, 350], 3);
        let x = simulate(&m, &scene, Some(5.0), 9);
        let full = omp(&x, &Dictionary::full(&m), 6).unwrap();
        let folded = omp(&x, &Dictionary::folded(&m), 6).unwrap();
        assert_eq!(full.support, folded.support);
        for (a, b) in full.coefficients.iter().zip(&folded.coefficients) {
            assert!((a - b).norm() < 1e-8);
        }
        for (a, b) in full.residual_history.iter().zip(&folded.residual_history) {
            assert_relative_eq!(a, b, max_relative = 1e-8);
        }
    }

    #[test]
    fn residual_non_increasing() {
        let m = setup(&[0, 1, 2, 5, 8, 9, 10], 401);
        let scene = on_grid_scene(&m, &[10, 80, 200, 220, 390], 4);
        let x = simulate(&m, &scene, Some(0.0), 5);
        let r = omp(&x, &Dictionary::folded(&m), 5).unwrap();
        assert_eq!(r.support.len(), 5);
        assert!(r.residual_history.windows(2).all(|w| w[1] <= w[0] * (1.0 + 1e-12)));
    }

    #[test]
    fn forced_true_support_is_exact() {
        let m = setup(&[0, 1, 2, 5, 8, 11, 12, 13], 501);
        let idx = [20, 70, 160, 250, 330, 480];
        let scene = on_grid_scene(&m, &idx, 6);
        let x = simulate(&m, &scene, None, 0);
        let r = fit_support(&x, &Dictionary::folded(&m), &idx).unwrap();
        assert!(r.residual_norm <= 1e-9 * x.x.norm());
        for (c, g) in r.coefficients.iter().zip(scene.coefficients()) {
            assert!((c - g).norm() < 1e-9);
        }
    }

    #[test]
    fn rank_deficient_refit_is_flagged() {
        // A single sensor makes every column identical.
        let m = setup(&[0], 11);
        let x = simulate(&m, &on_grid_scene(&m, &[5], 7), None, 0);
        let r = omp(&x, &Dictionary::full(&m), 2).unwrap();
        assert!(r.regularized);
        assert!(omp(&x, &Dictionary::full(&m), 12).is_err());
    }

    #[test]
    fn rmse_pairs_sorted() {
        assert_eq!(rmse(&[1.0, 2.0], &[2.0, 1.0]).unwrap(), 0.0);
        assert_relative_eq!(rmse(&[10.0], &[12.0]).unwrap(), 2.0);
        assert!(rmse(&[1.0], &[1.0, 2.0]).is_err());
    }
}
