//! Inversion of measured pupil coefficients and the analytically continued
//! spectrum.
//!
//! Dividing the detected coefficient by the transmission `iᵏ√λₖ` recovers
//! the object coefficient exactly when there is no noise. With noise, the
//! outside-object vacuum enters amplified by `√((1−λₖ)/λₖ)`, which is what
//! limits the number of useful modes.

use crate::basis::ProlateBasis;
use crate::imaging::{
    i_pow, synthesize, FourierOperator, ModeCoefficients, ObjectField, Plane, SpectrumField,
};
use crate::noise::{MeasuredCoefficients, NoiseModel};
use crate::{Error, Result};

/// Default RMS threshold for the superresolution factor.
pub const DEFAULT_TAU: f64 = 0.1;

/// `aₖ⁽ʳ⁾ = Fₖ / (iᵏ √λₖ)`.
pub fn reconstruct_coeffs(
    measured: &MeasuredCoefficients,
    basis: &ProlateBasis,
) -> Result<ModeCoefficients> {
    if measured.values.len() != basis.num_modes() {
        return Err(Error::GridMismatch(format!(
            "{} measured coefficients for a {}-mode basis",
            measured.values.len(),
            basis.num_modes()
        )));
    }
    let floor = basis.eigenvalue_floor();
    let values = measured
        .values
        .iter()
        .zip(basis.eigenvalues())
        .enumerate()
        .map(|(k, (fk, &lambda))| {
            if !(lambda > 0.0 && lambda > floor) {
                return Err(Error::EigenvalueUnderflow {
                    mode: k,
                    value: lambda,
                    threshold: floor,
                });
            }
            Ok(fk / (i_pow(k) * lambda.sqrt()))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ModeCoefficients::new(Plane::Object, values))
}

/// Closed-form per-quadrature variance of `aₖ⁽ʳ⁾` in dimensionless units:
/// `vₖ (λₖ + (1−λₖ)) / (λₖ A²)`, where `vₖ` is the channel quadrature
/// variance of the model.
pub fn reconstructed_variance(
    basis: &ProlateBasis,
    model: &NoiseModel,
    photon_scale: f64,
    k: usize,
) -> Result<f64> {
    let lambda = *basis.eigenvalues().get(k).ok_or(Error::ModeIndex {
        k,
        available: basis.num_modes(),
    })?;
    let v = model.quadrature_variance(k);
    Ok(v * (lambda + (1.0 - lambda)) / (lambda * photon_scale * photon_scale))
}

/// Object synthesized from `recon_coeffs`, transformed onto `xi_grid`.
/// Points with `|ξ| > 1` are the analytic continuation beyond the pupil.
pub fn extended_spectrum(
    recon_coeffs: &ModeCoefficients,
    basis: &ProlateBasis,
    xi_grid: &[f64],
) -> Result<SpectrumField> {
    let op = FourierOperator::new(basis, xi_grid)?;
    extended_spectrum_with(&op, recon_coeffs, basis)
}

/// [`extended_spectrum`] with a prebuilt transform.
pub fn extended_spectrum_with(
    op: &FourierOperator,
    recon_coeffs: &ModeCoefficients,
    basis: &ProlateBasis,
) -> Result<SpectrumField> {
    op.apply(&synthesize(recon_coeffs, basis)?)
}

fn check_same_grid(a: &SpectrumField, b: &SpectrumField) -> Result<()> {
    if a.xi() != b.xi() {
        return Err(Error::GridMismatch(
            "reconstructed and exact spectra are on different grids".into(),
        ));
    }
    Ok(())
}

fn band_contains(x: f64, half_width: f64) -> bool {
    x.abs() <= half_width * (1.0 + 1e-12) + 1e-12
}

/// Relative RMS error over `|ξ| ≤ xi_max`:
/// `√(∫|f_r − f|² dξ / ∫|f|² dξ)`, trapezoidal on the common grid.
pub fn rms_band_error(recon: &SpectrumField, exact: &SpectrumField, xi_max: f64) -> Result<f64> {
    check_same_grid(recon, exact)?;
    let (mut num, mut den) = (0.0, 0.0);
    let xi = exact.xi();
    for i in 1..xi.len() {
        if !(band_contains(xi[i - 1], xi_max) && band_contains(xi[i], xi_max)) {
            continue;
        }
        let h = 0.5 * (xi[i] - xi[i - 1]);
        num += h * ((recon.values()[i - 1] - exact.values()[i - 1]).norm_sqr()
            + (recon.values()[i] - exact.values()[i]).norm_sqr());
        den += h * (exact.values()[i - 1].norm_sqr() + exact.values()[i].norm_sqr());
    }
    if den <= 0.0 {
        return Err(Error::ZeroReference);
    }
    Ok((num / den).sqrt())
}

/// Largest band half-width Ξ on the grid for which
/// `rms_band_error(recon, exact, Ξ) ≤ tau`.
///
/// The pupil edge sits at ξ = 1, so Ξ is directly the resolution gain over
/// the Rayleigh limit. Returns 0 when no band qualifies.
pub fn superresolution_factor(recon: &SpectrumField, exact: &SpectrumField, tau: f64) -> Result<f64> {
    check_same_grid(recon, exact)?;
    if exact.values().iter().all(|v| v.norm_sqr() == 0.0) {
        return Err(Error::ZeroReference);
    }
    let xi = exact.xi();
    let n = xi.len();
    // cumulative trapezoid of both integrands
    let mut err_cum = vec![0.0; n];
    let mut ref_cum = vec![0.0; n];
    for i in 1..n {
        let h = 0.5 * (xi[i] - xi[i - 1]);
        let d = |j: usize| (recon.values()[j] - exact.values()[j]).norm_sqr();
        let r = |j: usize| exact.values()[j].norm_sqr();
        err_cum[i] = err_cum[i - 1] + h * (d(i - 1) + d(i));
        ref_cum[i] = ref_cum[i - 1] + h * (r(i - 1) + r(i));
    }

    let mut candidates: Vec<f64> = xi.iter().map(|x| x.abs()).collect();
    candidates.sort_by(f64::total_cmp);
    candidates.dedup();

    let mut best = 0.0;
    for &half in &candidates {
        let lo = xi.partition_point(|&x| !band_contains(x, half) && x < 0.0);
        let hi = xi.partition_point(|&x| x < 0.0 || band_contains(x, half));
        if hi < lo + 2 {
            continue;
        }
        let last = hi - 1;
        let den = ref_cum[last] - ref_cum[lo];
        if den <= 0.0 {
            continue;
        }
        let err = ((err_cum[last] - err_cum[lo]) / den).max(0.0).sqrt();
        if err <= tau {
            best = half;
        }
    }
    Ok(best)
}

/// Everything produced by one reconstruction.
#[derive(Debug, Clone)]
pub struct ReconstructionResult {
    pub recon_coeffs: ModeCoefficients,
    pub recon_object: ObjectField,
    pub recon_spectrum: SpectrumField,
    pub exact_spectrum: SpectrumField,
    pub rms_band_error: f64,
    pub superres_factor: f64,
    pub k_used: usize,
}

/// Inverts `measured`, continues the spectrum onto the grid of `op`, and
/// scores it against `exact` over the whole grid.
pub fn reconstruct(
    measured: &MeasuredCoefficients,
    basis: &ProlateBasis,
    op: &FourierOperator,
    exact: &SpectrumField,
    tau: f64,
) -> Result<ReconstructionResult> {
    let recon_coeffs = reconstruct_coeffs(measured, basis)?;
    let recon_object = synthesize(&recon_coeffs, basis)?;
    let recon_spectrum = op.apply(&recon_object)?;
    let xi_max = exact
        .xi()
        .iter()
        .fold(0.0f64, |m, x| m.max(x.abs()));
    let rms = rms_band_error(&recon_spectrum, exact, xi_max)?;
    let factor = superresolution_factor(&recon_spectrum, exact, tau)?;
    Ok(ReconstructionResult {
        k_used: recon_coeffs.len(),
        recon_coeffs,
        recon_object,
        recon_spectrum,
        exact_spectrum: exact.clone(),
        rms_band_error: rms,
        superres_factor: factor,
    })
}

/// Convenience: noiseless measurement of known object coefficients.
pub fn noiseless_measurement(f: &ModeCoefficients) -> MeasuredCoefficients {
    MeasuredCoefficients {
        values: f.values.clone(),
        model: NoiseModel::noiseless(),
        photon_scale: 1.0,
    }
}
