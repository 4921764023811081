use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::array::SensorArray;
use crate::error::{Error, Result};

/// Far-field point scatterers with unit-modulus reflection coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct Scene {
    angles: Vec<f64>,
    coefficients: Vec<Complex64>,
}

impl Scene {
    pub fn new(angles: Vec<f64>, coefficients: Vec<Complex64>) -> Result<Self> {
        if angles.len() != coefficients.len() {
            return Err(Error::InvalidParameters(format!(
                "{} angles but {} coefficients",
                angles.len(),
                coefficients.len()
            )));
        }
        check_angles(&angles, "scene")?;
        if let Some(g) = coefficients.iter().find(|g| (g.norm() - 1.0).abs() > 1e-9) {
            return Err(Error::InvalidParameters(format!("coefficient {g} is not unit-modulus")));
        }
        Ok(Self { angles, coefficients })
    }

    /// `k` angles evenly spaced over `[lo, hi]`, each with coefficient `z/|z|`, `z ~ CN(0, 1)`.
    pub fn uniform<R: Rng + ?Sized>(k: usize, lo: f64, hi: f64, rng: &mut R) -> Result<Self> {
        Self::new(evenly_spaced(k, lo, hi), random_phases(k, rng))
    }

    /// Same angles, each moved to the nearest grid point.
    pub fn snapped(&self, grid: &[f64]) -> Result<Self> {
        Self::new(self.angles.iter().map(|&a| grid[nearest(grid, a)]).collect(), self.coefficients.clone())
    }

    pub fn angles(&self) -> &[f64] {
        &self.angles
    }

    pub fn coefficients(&self) -> &[Complex64] {
        &self.coefficients
    }

    pub fn k(&self) -> usize {
        self.angles.len()
    }
}

pub(crate) fn evenly_spaced(k: usize, lo: f64, hi: f64) -> Vec<f64> {
    match k {
        0 => Vec::new(),
        1 => vec![(lo + hi) / 2.0],
        _ => (0..k).map(|i| lo + (hi - lo) * i as f64 / (k - 1) as f64).collect(),
    }
}

pub(crate) fn random_phases<R: Rng + ?Sized>(k: usize, rng: &mut R) -> Vec<Complex64> {
    (0..k)
        .map(|_| {
            let z = complex_normal(rng, 1.0);
            z / z.norm()
        })
        .collect()
}

/// Circular complex normal sample with total variance `variance`.
fn complex_normal<R: Rng + ?Sized>(rng: &mut R, variance: f64) -> Complex64 {
    let s = (variance / 2.0).sqrt();
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(s * re, s * im)
}

pub(crate) fn nearest(grid: &[f64], angle: f64) -> usize {
    let i = grid.partition_point(|&g| g < angle);
    if i == 0 {
        0
    } else if i == grid.len() || angle - grid[i - 1] <= grid[i] - angle {
        i - 1
    } else {
        i
    }
}

fn check_angles(angles: &[f64], what: &str) -> Result<()> {
    if angles.iter().any(|a| !(-90.0..=90.0).contains(a)) {
        return Err(Error::InvalidParameters(format!("{what} angles must lie in [-90, 90] degrees")));
    }
    if angles.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidParameters(format!("{what} angles must be strictly increasing")));
    }
    Ok(())
}

/// `points` angles from `min` to `max` degrees inclusive.
pub fn uniform_grid(points: usize, min: f64, max: f64) -> Result<Vec<f64>> {
    if points == 0 || (points > 1 && min >= max) {
        return Err(Error::InvalidParameters(format!("grid of {points} points over [{min}, {max}]")));
    }
    let grid = evenly_spaced(points, min, max);
    check_angles(&grid, "grid")?;
    Ok(grid)
}

/// Physical array, element spacing in wavelengths and the angle grid in degrees.
#[derive(Clone, Debug, PartialEq)]
pub struct MeasurementModel {
    array: SensorArray,
    delta: f64,
    grid: Vec<f64>,
}

impl MeasurementModel {
    pub fn new(array: SensorArray, delta: f64, grid: Vec<f64>) -> Result<Self> {
        if array.is_empty() {
            return Err(Error::EmptyArray);
        }
        if !(delta > 0.0 && delta.is_finite()) {
            return Err(Error::InvalidParameters(format!("spacing {delta} must be positive")));
        }
        if grid.is_empty() {
            return Err(Error::InvalidParameters("empty angle grid".into()));
        }
        check_angles(&grid, "grid")?;
        Ok(Self { array, delta, grid })
    }

    /// Half-wavelength spacing.
    pub fn half_wavelength(array: SensorArray, grid: Vec<f64>) -> Result<Self> {
        Self::new(array, 0.5, grid)
    }

    pub fn array(&self) -> &SensorArray {
        &self.array
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn grid(&self) -> &[f64] {
        &self.grid
    }

    /// Phase `exp(j 2π p δ sin φ)` of virtual position `p` at angle `φ` in degrees.
    pub(crate) fn phase(&self, position: i64, angle_deg: f64) -> Complex64 {
        Complex64::from_polar(1.0, 2.0 * PI * position as f64 * self.delta * angle_deg.to_radians().sin())
    }
}

/// `N × |angles|` matrix with entries `exp(j 2π d_n δ sin φ_i)`.
pub fn steering_matrix(model: &MeasurementModel, angles: &[f64]) -> DMatrix<Complex64> {
    let d = model.array.positions();
    DMatrix::from_fn(d.len(), angles.len(), |n, i| model.phase(d[n], angles[i]))
}

/// `N² × V` Khatri-Rao dictionary; row `n N + m` holds `exp(j 2π (d_n + d_m) δ sin φ_i)`.
pub fn khatri_rao_dictionary(model: &MeasurementModel) -> DMatrix<Complex64> {
    let d = model.array.positions();
    let n = d.len();
    DMatrix::from_fn(n * n, model.grid.len(), |row, i| model.phase(d[row / n] + d[row % n], model.grid[i]))
}

/// Matched-filtered snapshot of length `N²`.
#[derive(Clone, Debug, PartialEq)]
pub struct Measurement {
    pub x: DVector<Complex64>,
    pub noise_variance: f64,
}

/// Per-entry noise variance `K · 10^(-SNR/10)`; `None` or `+inf` dB is noiseless.
pub fn noise_variance(k: usize, snr_db: Option<f64>) -> f64 {
    match snr_db {
        Some(s) if s.is_finite() => k as f64 * 10f64.powf(-s / 10.0),
        _ => 0.0,
    }
}

/// `x = (A ⊙ A) γ + n` with `n ~ CN(0, σ² I)`, reproducible from `seed`.
pub fn simulate(model: &MeasurementModel, scene: &Scene, snr_db: Option<f64>, seed: u64) -> Measurement {
    simulate_with_rng(model, scene, snr_db, &mut ChaCha8Rng::seed_from_u64(seed))
}

pub fn simulate_with_rng<R: Rng + ?Sized>(
    model: &MeasurementModel,
    scene: &Scene,
    snr_db: Option<f64>,
    rng: &mut R,
) -> Measurement {
    let d = model.array.positions();
    let n = d.len();
    let variance = noise_variance(scene.k(), snr_db);
    let x = DVector::from_fn(n * n, |row, _| {
        let p = d[row / n] + d[row % n];
        let signal: Complex64 = scene.angles.iter().zip(&scene.coefficients).map(|(&a, g)| model.phase(p, a) * g).sum();
        if variance > 0.0 {
            signal + complex_normal(rng, variance)
        } else {
            signal
        }
    });
    Measurement { x, noise_variance: variance }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coarray::{sum_coarray, sum_multiplicities};
    use approx::assert_relative_eq;
    use std::collections::HashSet;

    fn model(p: &[i64], grid: Vec<f64>) -> MeasurementModel {
        MeasurementModel::half_wavelength(SensorArray::new(p.to_vec()).unwrap(), grid).unwrap()
    }

    #[test]
    fn steering_special_cases() {
        let m = model(&[0], vec![-30.0, 10.0]);
        assert!(steering_matrix(&m, &[-30.0, 10.0]).iter().all(|z| (z - Complex64::new(1.0, 0.0)).norm() < 1e-15));
        let m = model(&[0, 1, 5], vec![0.0]);
        assert!(steering_matrix(&m, &[0.0]).iter().all(|z| (z - Complex64::new(1.0, 0.0)).norm() < 1e-15));
        let a = steering_matrix(&model(&[0, 1], vec![90.0]), &[90.0]);
        assert_relative_eq!(a[(1, 0)].re, -1.0, epsilon = 1e-12);
        assert!(a[(1, 0)].im.abs() < 1e-12);
    }

    #[test]
    fn dictionary_structure() {
        let grid = uniform_grid(7, -60.0, 60.0).unwrap();
        let single = model(&[0], grid.clone());
        assert_eq!(khatri_rao_dictionary(&single), steering_matrix(&single, &grid));

        let m = model(&[0, 1, 4, 6], grid);
        let d = khatri_rao_dictionary(&m);
        let n = 4;
        for a in 0..n {
            for b in 0..n {
                assert_eq!(d.row(a * n + b), d.row(b * n + a));
            }
        }
        let key = |r: usize| d.row(r).iter().map(|z| (z.re.to_bits(), z.im.to_bits())).collect::<Vec<_>>();
        let distinct: HashSet<Vec<(u64, u64)>> = (0..n * n).map(key).collect();
        assert_eq!(distinct.len(), sum_coarray(m.array()).unwrap().len());

        // Identical rows are exactly the ordered pairs landing on the same virtual position.
        let p = m.array().positions();
        for (v, count) in sum_multiplicities(m.array()) {
            let rows: Vec<usize> = (0..n * n).filter(|&r| p[r / n] + p[r % n] == v).collect();
            assert_eq!(rows.len(), count);
            let first = key(rows[0]);
            assert_eq!((0..n * n).filter(|&r| key(r) == first).count(), count, "v={v}");
        }
    }

    #[test]
    fn noiseless_simulation() {
        let m = model(&[0, 1, 3], uniform_grid(5, -40.0, 40.0).unwrap());
        let scene = Scene::new(vec![0.0], vec![Complex64::new(1.0, 0.0)]).unwrap();
        let x = simulate(&m, &scene, None, 1);
        assert_eq!(x.x.len(), 9);
        assert!(x.x.iter().all(|z| (z - Complex64::new(1.0, 0.0)).norm() < 1e-15));
        assert_eq!(x.noise_variance, 0.0);
    }

    #[test]
    fn noise_level_and_determinism() {
        assert_relative_eq!(noise_variance(65, Some(5.0)), 65.0 / 10f64.powf(0.5));
        assert_eq!(noise_variance(65, Some(f64::INFINITY)), 0.0);
        let m = model(&[0, 1, 2, 5], uniform_grid(11, -50.0, 50.0).unwrap());
        let scene = Scene::new(vec![-20.0, 30.0], vec![Complex64::new(0.0, 1.0), Complex64::new(-1.0, 0.0)]).unwrap();
        let a = simulate(&m, &scene, Some(5.0), 42);
        let b = simulate(&m, &scene, Some(5.0), 42);
        assert_eq!(a, b);
        assert_ne!(a, simulate(&m, &scene, Some(5.0), 43));
    }

    #[test]
    fn scene_validation() {
        assert!(Scene::new(vec![10.0, 5.0], vec![Complex64::new(1.0, 0.0); 2]).is_err());
        assert!(Scene::new(vec![0.0], vec![Complex64::new(2.0, 0.0)]).is_err());
        assert!(Scene::new(vec![95.0], vec![Complex64::new(1.0, 0.0)]).is_err());
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let s = Scene::uniform(65, -60.0, 60.0, &mut rng).unwrap();
        assert_eq!((s.k(), s.angles()[0], s.angles()[64]), (65, -60.0, 60.0));
        let grid = uniform_grid(2001, -75.0, 75.0).unwrap();
        let snapped = s.snapped(&grid).unwrap();
        assert!(snapped.angles().iter().all(|a| grid.contains(a)));
    }

    #[test]
    fn nearest_grid_point() {
        let g = [-1.0, 0.0, 1.0];
        assert_eq!(nearest(&g, -5.0), 0);
        assert_eq!(nearest(&g, 0.4), 1);
        assert_eq!(nearest(&g, 0.6), 2);
        assert_eq!(nearest(&g, 7.0), 2);
    }
}
