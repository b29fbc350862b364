//! Monte-Carlo execution of one scenario.

use std::fs::{self, File};
use std::io::BufWriter;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use super::scenario::Scenario;
use super::stats::{median, quantile, sample_variance};
use crate::basis::{Parity, ProlateBasis};
use crate::imaging::{
    decompose, image_operator, propagate_coeffs, FourierOperator, ImageField,
    ModeCoefficients, ObjectField, Plane, SpectrumField,
};
use crate::io::{write_comparison_csv, write_image_csv, write_object_csv, write_spectrum_csv};
use crate::noise::{photon_normalization, sample_measurement, NoiseModel};
use crate::reconstruction::{
    reconstruct, reconstruct_coeffs, reconstructed_variance, ReconstructionResult,
};
use crate::Result;

pub const CODE_VERSION: &str = concat!("superres ", env!("CARGO_PKG_VERSION"));

#[derive(Debug, Clone, Serialize)]
pub struct ModeSummary {
    pub k: usize,
    pub eigenvalue: f64,
    pub parity: Parity,
    pub ideal_re: f64,
    pub ideal_im: f64,
    /// Per-quadrature sample variance of the reconstructed coefficient over
    /// trials (null for a single trial).
    pub empirical_variance: Option<f64>,
    /// Closed-form per-quadrature variance under the scenario's model.
    pub theoretical_variance: f64,
    /// Closed-form variance had the same photon budget been coherent.
    pub coherent_variance: Option<f64>,
    /// `empirical_variance / coherent_variance`.
    pub variance_ratio_to_coherent: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct RunSummary {
    pub version: String,
    pub scenario: serde_json::Value,
    pub seed: u64,
    pub noise_kind: String,
    pub k_used: usize,
    pub trials: usize,
    pub tau: f64,
    pub photon_scale: Option<f64>,
    pub noiseless_factor: f64,
    pub noiseless_rms_error: f64,
    pub factors: Vec<f64>,
    pub rms_errors: Vec<f64>,
    pub median_factor: f64,
    pub q25_factor: f64,
    pub q75_factor: f64,
    pub modes: Vec<ModeSummary>,
    /// Not written to disk: outputs must be byte-identical across runs.
    #[serde(skip)]
    pub wall_time: Duration,
}

/// One Monte-Carlo trial. The spectrum is kept only for trials whose file
/// will be written.
#[derive(Debug, Clone)]
pub struct TrialOutcome {
    pub index: usize,
    pub coeffs: ModeCoefficients,
    pub factor: f64,
    pub rms_error: f64,
    pub spectrum: Option<SpectrumField>,
}

/// Everything computed for a scenario, before anything touches the disk.
#[derive(Debug, Clone)]
pub struct RunData {
    pub basis: ProlateBasis,
    pub object: ObjectField,
    pub image: ImageField,
    pub exact_spectrum: SpectrumField,
    pub ideal_object_coeffs: ModeCoefficients,
    pub ideal_fourier_coeffs: ModeCoefficients,
    pub photon_scale: Option<f64>,
    pub noiseless: ReconstructionResult,
    pub trials: Vec<TrialOutcome>,
    pub summary: RunSummary,
}

/// Runs all trials in memory.
///
/// Trials run on the current rayon pool; each draws from its own
/// `(seed, trial)` stream, so results do not depend on the thread count.
pub fn simulate(scenario: &Scenario) -> Result<RunData> {
    scenario.validate()?;
    let start = Instant::now();

    let full = ProlateBasis::build(scenario.basis.clone())?;
    let basis = full.truncate(scenario.k_reconstruct)?;
    let object = scenario.object.build(&basis)?;
    let xi = scenario.xi_grid();
    let op = FourierOperator::new(&basis, &xi)?;
    let exact = op.apply(&object)?;
    let image = image_operator(&object, &basis, &scenario.image_grid())?;

    let a = decompose(&object, &basis)?;
    let f = propagate_coeffs(&a, &basis, Plane::Fourier)?;
    let model = &scenario.noise;
    let photon_scale = match model.mean_photons() {
        Some(n) => Some(photon_normalization(&object, &basis, n)?),
        None => None,
    };

    let clean = sample_measurement(&f, &basis, &NoiseModel::noiseless(), None, 0)?;
    let noiseless = reconstruct(&clean, &basis, &op, &exact, scenario.tau)?;

    let keep = scenario.max_trial_files.unwrap_or(usize::MAX);
    let trials: Vec<TrialOutcome> = (0..scenario.trials)
        .into_par_iter()
        .map(|t| -> Result<TrialOutcome> {
            let measured = sample_measurement(&f, &basis, model, photon_scale, t as u64)?;
            let r = reconstruct(&measured, &basis, &op, &exact, scenario.tau)?;
            Ok(TrialOutcome {
                index: t,
                coeffs: r.recon_coeffs,
                factor: r.superres_factor,
                rms_error: r.rms_band_error,
                spectrum: (t < keep).then_some(r.recon_spectrum),
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let modes = mode_summaries(&basis, model, photon_scale, &a, &trials)?;
    let factors: Vec<f64> = trials.iter().map(|t| t.factor).collect();
    let summary = RunSummary {
        version: CODE_VERSION.to_string(),
        scenario: scenario.echo(),
        seed: model.seed,
        noise_kind: model.kind().to_string(),
        k_used: basis.num_modes(),
        trials: trials.len(),
        tau: scenario.tau,
        photon_scale,
        noiseless_factor: noiseless.superres_factor,
        noiseless_rms_error: noiseless.rms_band_error,
        rms_errors: trials.iter().map(|t| t.rms_error).collect(),
        median_factor: median(&factors).unwrap_or(0.0),
        q25_factor: quantile(&factors, 0.25).unwrap_or(0.0),
        q75_factor: quantile(&factors, 0.75).unwrap_or(0.0),
        factors,
        modes,
        wall_time: start.elapsed(),
    };

    Ok(RunData {
        basis,
        object,
        image,
        exact_spectrum: exact,
        ideal_object_coeffs: a,
        ideal_fourier_coeffs: f,
        photon_scale,
        noiseless,
        trials,
        summary,
    })
}

fn mode_summaries(
    basis: &ProlateBasis,
    model: &NoiseModel,
    photon_scale: Option<f64>,
    ideal: &ModeCoefficients,
    trials: &[TrialOutcome],
) -> Result<Vec<ModeSummary>> {
    let coherent = model
        .mean_photons()
        .map(|n| NoiseModel::coherent(n, model.seed));
    (0..basis.num_modes())
        .map(|k| {
            let re: Vec<f64> = trials.iter().map(|t| t.coeffs.values[k].re).collect();
            let im: Vec<f64> = trials.iter().map(|t| t.coeffs.values[k].im).collect();
            let empirical = sample_variance(&re)
                .zip(sample_variance(&im))
                .map(|(a, b)| 0.5 * (a + b));
            let (theoretical, coherent_variance) = match photon_scale {
                Some(scale) => (
                    reconstructed_variance(basis, model, scale, k)?,
                    match &coherent {
                        Some(m) => Some(reconstructed_variance(basis, m, scale, k)?),
                        None => None,
                    },
                ),
                None => (0.0, None),
            };
            Ok(ModeSummary {
                k,
                eigenvalue: basis.eigenvalues()[k],
                parity: basis.parities()[k],
                ideal_re: ideal.values[k].re,
                ideal_im: ideal.values[k].im,
                empirical_variance: empirical,
                theoretical_variance: theoretical,
                coherent_variance,
                variance_ratio_to_coherent: empirical
                    .zip(coherent_variance)
                    .map(|(e, c)| e / c),
            })
        })
        .collect()
}

/// File names produced by [`write_outputs`].
pub mod files {
    pub const OBJECT: &str = "object.csv";
    pub const IMAGE: &str = "image.csv";
    pub const EXACT_SPECTRUM: &str = "exact_spectrum.csv";
    pub const PUPIL_SPECTRUM: &str = "pupil_spectrum.csv";
    pub const NOISELESS: &str = "noiseless_reconstruction.csv";
    pub const SUMMARY: &str = "summary.json";

    pub fn trial(index: usize) -> String {
        format!("trial_{index:04}.csv")
    }
}

fn create(dir: &Path, name: &str) -> Result<BufWriter<File>> {
    Ok(BufWriter::new(File::create(dir.join(name))?))
}

/// Writes every output of a run into `dir` (created if missing) and returns
/// the paths written, in a fixed order.
pub fn write_outputs(data: &RunData, dir: &Path) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(dir)?;
    let mut written = Vec::new();
    let mut note = |name: &str| written.push(dir.join(name));

    write_object_csv(create(dir, files::OBJECT)?, data.basis.nodes(), &data.object)?;
    note(files::OBJECT);
    write_image_csv(create(dir, files::IMAGE)?, &data.image)?;
    note(files::IMAGE);
    write_spectrum_csv(create(dir, files::EXACT_SPECTRUM)?, &data.exact_spectrum)?;
    note(files::EXACT_SPECTRUM);
    write_spectrum_csv(
        create(dir, files::PUPIL_SPECTRUM)?,
        &data.exact_spectrum.restrict(1.0),
    )?;
    note(files::PUPIL_SPECTRUM);
    write_comparison_csv(
        create(dir, files::NOISELESS)?,
        &data.noiseless.recon_spectrum,
        &data.exact_spectrum,
    )?;
    note(files::NOISELESS);
    for t in &data.trials {
        if let Some(spectrum) = &t.spectrum {
            let name = files::trial(t.index);
            write_comparison_csv(create(dir, &name)?, spectrum, &data.exact_spectrum)?;
            note(&name);
        }
    }
    let mut summary = serde_json::to_string_pretty(&data.summary)?;
    summary.push('\n');
    fs::write(dir.join(files::SUMMARY), summary)?;
    note(files::SUMMARY);
    Ok(written)
}

/// [`simulate`] then [`write_outputs`] into `scenario.output_dir`.
pub fn run_scenario(scenario: &Scenario) -> Result<RunSummary> {
    let data = simulate(scenario)?;
    write_outputs(&data, &scenario.output_dir)?;
    Ok(data.summary)
}

/// Per-quadrature empirical variance of reconstructed coefficients over
/// `trials` independent measurements, without building spectra.
pub fn coefficient_variances(
    basis: &ProlateBasis,
    ideal_f: &ModeCoefficients,
    model: &NoiseModel,
    photon_scale: f64,
    trials: usize,
) -> Result<Vec<f64>> {
    let samples: Vec<Vec<Complex64>> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let m = sample_measurement(ideal_f, basis, model, Some(photon_scale), t as u64)?;
            Ok(reconstruct_coeffs(&m, basis)?.values)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((0..basis.num_modes())
        .map(|k| {
            let re: Vec<f64> = samples.iter().map(|s| s[k].re).collect();
            let im: Vec<f64> = samples.iter().map(|s| s[k].im).collect();
            let v = sample_variance(&re)
                .zip(sample_variance(&im))
                .map(|(a, b)| 0.5 * (a + b));
            v.unwrap_or(0.0)
        })
        .collect())
}
