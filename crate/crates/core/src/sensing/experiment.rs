use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize, Serializer};

use super::model::{evenly_spaced, nearest, random_phases, simulate_with_rng, uniform_grid, MeasurementModel, Scene};
use super::omp::{omp, rmse, Dictionary};
use crate::array::SensorArray;
use crate::constructions::{cna, ka, kma, nested, ula, KloveParams, NestedParams};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    /// Default seed; a seed passed to [`run_experiment`] explicitly takes precedence.
    #[serde(default)]
    pub seed: Option<u64>,
    pub trials: usize,
    /// Element spacing in wavelengths.
    #[serde(default = "half")]
    pub delta: f64,
    /// Scene SNRs in dB; `inf` is noiseless.
    pub snr_db: Vec<f64>,
    pub grid: GridSpec,
    pub scene: SceneSpec,
    pub arrays: Vec<ArraySpec>,
}

fn half() -> f64 {
    0.5
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSpec {
    pub points: usize,
    pub min_deg: f64,
    pub max_deg: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SceneSpec {
    pub scatterers: usize,
    pub min_deg: f64,
    pub max_deg: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ArraySpec {
    pub name: String,
    #[serde(flatten)]
    pub source: ArraySource,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ArraySource {
    Ula { n: usize },
    Nested { n1: usize, n2: usize },
    Cna { n1: usize, n2: usize },
    Kma { n1: usize, n2: usize, n3: usize },
    Ka { n1: usize, n2: usize, n3: usize },
    Positions { positions: Vec<i64> },
}

impl ArraySource {
    pub fn build(&self) -> Result<SensorArray> {
        match self {
            ArraySource::Ula { n } => ula(*n),
            ArraySource::Nested { n1, n2 } => nested(NestedParams::new(*n1, *n2)),
            ArraySource::Cna { n1, n2 } => cna(NestedParams::new(*n1, *n2)),
            ArraySource::Kma { n1, n2, n3 } => kma(KloveParams::new(*n1, *n2, *n3)),
            ArraySource::Ka { n1, n2, n3 } => ka(KloveParams::new(*n1, *n2, *n3)),
            ArraySource::Positions { positions } => SensorArray::new(positions.clone()),
        }
    }
}

impl ExperimentConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        let config: Self = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<()> {
        let fail = |m: &str| Err(Error::Config(m.to_string()));
        if self.trials == 0 {
            return fail("trials must be at least 1");
        }
        if self.arrays.is_empty() {
            return fail("no arrays configured");
        }
        if self.snr_db.is_empty() || self.snr_db.iter().any(|s| s.is_nan() || *s == f64::NEG_INFINITY) {
            return fail("snr_db must be a non-empty list of dB values or inf");
        }
        if self.scene.scatterers == 0 || self.scene.scatterers > self.grid.points {
            return fail("scatterers must be between 1 and the number of grid points");
        }
        if self.arrays.len() >= 1 << 16 || self.snr_db.len() >= 1 << 16 {
            return fail("too many arrays or SNR levels");
        }
        Ok(())
    }
}

/// SNR in dB, serialized as a number or `"inf"`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Snr(pub f64);

impl Snr {
    fn db(self) -> Option<f64> {
        self.0.is_finite().then_some(self.0)
    }
}

impl fmt::Display for Snr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_finite() {
            write!(f, "{}", self.0)
        } else {
            f.write_str("inf")
        }
    }
}

impl Serialize for Snr {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        if self.0.is_finite() {
            s.serialize_f64(self.0)
        } else {
            s.serialize_str("inf")
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TrialRecord {
    pub trial: usize,
    pub array: String,
    pub snr_db: Snr,
    pub rmse_deg: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SummaryRow {
    pub array: String,
    pub snr_db: Snr,
    pub trials: usize,
    pub mean_rmse_deg: f64,
}

/// Recovered angles and magnitudes of the first trial.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Spectrum {
    pub array: String,
    pub snr_db: Snr,
    pub angles_deg: Vec<f64>,
    pub magnitudes: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExperimentReport {
    pub seed: u64,
    pub true_angles_deg: Vec<f64>,
    pub records: Vec<TrialRecord>,
    pub summary: Vec<SummaryRow>,
    pub spectra: Vec<Spectrum>,
}

impl ExperimentReport {
    pub fn mean_rmse(&self, array: &str, snr_db: f64) -> Option<f64> {
        self.summary.iter().find(|r| r.array == array && r.snr_db.0 == snr_db).map(|r| r.mean_rmse_deg)
    }

    /// `trial,array,snr_db,rmse_deg` rows with a header.
    pub fn records_csv(&self) -> String {
        let mut out = String::from("trial,array,snr_db,rmse_deg\n");
        for r in &self.records {
            out.push_str(&format!("{},{},{},{}\n", r.trial, csv_field(&r.array), r.snr_db, r.rmse_deg));
        }
        out
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Random stream for one trial: tag 0 draws the scene, other tags draw noise.
fn stream(seed: u64, trial: usize, tag: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((trial as u64) << 32) | tag);
    rng
}

/// Monte-Carlo OMP experiment.
///
/// Scatterer angles are evenly spaced and snapped to the grid; every trial redraws the
/// coefficient phases, shared by all arrays and SNRs, and draws fresh noise per array
/// and SNR. Trials run in parallel; results do not depend on the schedule.
pub fn run_experiment(config: &ExperimentConfig, seed: Option<u64>) -> Result<ExperimentReport> {
    config.validate()?;
    let seed = seed.or(config.seed).ok_or_else(|| Error::Config("no seed given".into()))?;
    let grid = uniform_grid(config.grid.points, config.grid.min_deg, config.grid.max_deg)?;
    let mut angles: Vec<f64> = evenly_spaced(config.scene.scatterers, config.scene.min_deg, config.scene.max_deg)
        .into_iter()
        .map(|a| grid[nearest(&grid, a)])
        .collect();
    let k = angles.len();
    angles.dedup();
    if angles.len() != k {
        return Err(Error::Config("grid too coarse: scatterers collide after snapping".into()));
    }
    let arrays = config
        .arrays
        .iter()
        .map(|spec| {
            let model = MeasurementModel::new(spec.source.build()?, config.delta, grid.clone())?;
            Ok((spec.name.clone(), Dictionary::folded(&model), model))
        })
        .collect::<Result<Vec<_>>>()?;

    let per_trial = (0..config.trials)
        .into_par_iter()
        .map(|trial| {
            let scene = Scene::new(angles.clone(), random_phases(k, &mut stream(seed, trial, 0)))?;
            let mut rows = Vec::new();
            for (ai, (name, dict, model)) in arrays.iter().enumerate() {
                for (si, &snr) in config.snr_db.iter().enumerate() {
                    let snr = Snr(snr);
                    let mut rng = stream(seed, trial, 1 + ((ai as u64) << 16) + si as u64);
                    let x = simulate_with_rng(model, &scene, snr.db(), &mut rng);
                    let fit = omp(&x, dict, k)?;
                    let err = rmse(&fit.estimated_angles, &angles)?;
                    let spectrum = (trial == 0).then(|| Spectrum {
                        array: name.clone(),
                        snr_db: snr,
                        angles_deg: fit.estimated_angles.clone(),
                        magnitudes: fit.magnitudes(),
                    });
                    rows.push((TrialRecord { trial, array: name.clone(), snr_db: snr, rmse_deg: err }, spectrum));
                }
            }
            Ok(rows)
        })
        .collect::<Result<Vec<_>>>()?;

    let mut records = Vec::new();
    let mut spectra = Vec::new();
    for (record, spectrum) in per_trial.into_iter().flatten() {
        records.push(record);
        spectra.extend(spectrum);
    }
    let summary = arrays
        .iter()
        .flat_map(|(name, _, _)| config.snr_db.iter().map(move |&s| (name.clone(), Snr(s))))
        .map(|(array, snr)| {
            let errs: Vec<f64> =
                records.iter().filter(|r| r.array == array && r.snr_db == snr).map(|r| r.rmse_deg).collect();
            SummaryRow {
                mean_rmse_deg: errs.iter().sum::<f64>() / errs.len() as f64,
                trials: errs.len(),
                array,
                snr_db: snr,
            }
        })
        .collect();
    Ok(ExperimentReport { seed, true_angles_deg: angles, records, summary, spectra })
}
