//! Semiclassical model of homodyne-detected pupil coefficients.
//!
//! The detected Fourier-plane mode `k` mixes the illuminated object mode
//! (transmission `iᵏ√λₖ`) with the vacuum mode that lives outside the object
//! (reflection `iᵏ√(1−λₖ)`), exactly like a beam splitter. For Gaussian
//! states under homodyne detection the operators can be replaced by their
//! classical means plus independent Gaussian quadrature noise:
//!
//! ```text
//! Fₖ = A·fₖ + iᵏ (√λₖ δaₖ + √(1−λₖ) δbₖ)
//! ```
//!
//! in photon units, where `A` converts the dimensionless object amplitude to
//! photons^{1/2}. Each quadrature of `δaₖ`, `δbₖ` has variance ¼ (vacuum and
//! coherent light) or ¼·e^{−2r} on squeezed modes.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::basis::ProlateBasis;
use crate::imaging::{i_pow, ModeCoefficients, ObjectField, Plane};
use crate::{Error, Result};

/// Quadrature variance of the vacuum, in photon units.
pub const VACUUM_QUADRATURE_VARIANCE: f64 = 0.25;

/// Illumination state of the object.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Illumination {
    Noiseless,
    Coherent {
        mean_photons: f64,
    },
    /// Multimode squeezed light; the detected quadrature of the first
    /// `squeezed_modes` modes (all retained modes when absent) is squeezed
    /// in both the object and the outside-object channel.
    Squeezed {
        mean_photons: f64,
        r: f64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        squeezed_modes: Option<usize>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NoiseModel {
    #[serde(flatten)]
    pub illumination: Illumination,
    #[serde(default)]
    pub seed: u64,
}

impl NoiseModel {
    pub fn noiseless() -> Self {
        Self {
            illumination: Illumination::Noiseless,
            seed: 0,
        }
    }

    pub fn coherent(mean_photons: f64, seed: u64) -> Self {
        Self {
            illumination: Illumination::Coherent { mean_photons },
            seed,
        }
    }

    pub fn squeezed(mean_photons: f64, r: f64, squeezed_modes: Option<usize>, seed: u64) -> Self {
        Self {
            illumination: Illumination::Squeezed {
                mean_photons,
                r,
                squeezed_modes,
            },
            seed,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self.illumination {
            Illumination::Noiseless => "noiseless",
            Illumination::Coherent { .. } => "coherent",
            Illumination::Squeezed { .. } => "squeezed",
        }
    }

    pub fn is_noiseless(&self) -> bool {
        matches!(self.illumination, Illumination::Noiseless)
    }

    pub fn mean_photons(&self) -> Option<f64> {
        match self.illumination {
            Illumination::Noiseless => None,
            Illumination::Coherent { mean_photons } | Illumination::Squeezed { mean_photons, .. } => {
                Some(mean_photons)
            }
        }
    }

    /// Checks the model against the number of modes it will be applied to.
    pub fn validate(&self, num_modes: usize) -> Result<()> {
        self.validate_parameters()?;
        if let Illumination::Squeezed {
            squeezed_modes: Some(m),
            ..
        } = self.illumination
        {
            if m > num_modes {
                return Err(Error::InvalidConfig(format!(
                    "squeezed_modes ({m}) exceeds the number of modes ({num_modes})"
                )));
            }
        }
        Ok(())
    }

    /// Photon number and squeezing parameter checks only.
    pub fn validate_parameters(&self) -> Result<()> {
        let photons_ok = |n: f64| n.is_finite() && n > 0.0;
        match self.illumination {
            Illumination::Noiseless => Ok(()),
            Illumination::Coherent { mean_photons } => {
                if photons_ok(mean_photons) {
                    Ok(())
                } else {
                    Err(Error::InvalidConfig(format!(
                        "mean_photons must be positive, got {mean_photons}"
                    )))
                }
            }
            Illumination::Squeezed { mean_photons, r, .. } => {
                if !photons_ok(mean_photons) {
                    return Err(Error::InvalidConfig(format!(
                        "mean_photons must be positive, got {mean_photons}"
                    )));
                }
                if !(r.is_finite() && r > 0.0) {
                    return Err(Error::InvalidConfig(format!(
                        "squeezing parameter r must be positive, got {r}"
                    )));
                }
                Ok(())
            }
        }
    }

    /// Per-quadrature noise variance of both input channels of mode `k`, in
    /// photon units.
    pub fn quadrature_variance(&self, k: usize) -> f64 {
        match self.illumination {
            Illumination::Noiseless => 0.0,
            Illumination::Coherent { .. } => VACUUM_QUADRATURE_VARIANCE,
            Illumination::Squeezed {
                r, squeezed_modes, ..
            } => {
                if squeezed_modes.is_none_or(|m| k < m) {
                    VACUUM_QUADRATURE_VARIANCE * (-2.0 * r).exp()
                } else {
                    VACUUM_QUADRATURE_VARIANCE
                }
            }
        }
    }
}

/// Homodyne outcomes `Fₖ / A` for one trial.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasuredCoefficients {
    pub values: Vec<Complex64>,
    pub model: NoiseModel,
    pub photon_scale: f64,
}

/// `A = √(⟨N⟩ / ∫|a|² ds)`, so that `A·a(s)` carries `⟨N⟩` photons.
pub fn photon_normalization(obj: &ObjectField, basis: &ProlateBasis, mean_photons: f64) -> Result<f64> {
    if !(mean_photons.is_finite() && mean_photons > 0.0) {
        return Err(Error::InvalidConfig(format!(
            "mean_photons must be positive, got {mean_photons}"
        )));
    }
    let energy = obj.energy(basis)?;
    if energy <= 0.0 {
        return Err(Error::ZeroEnergy);
    }
    Ok((mean_photons / energy).sqrt())
}

/// Independent RNG stream for one Monte-Carlo trial.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha20Rng {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// Draws one homodyne measurement of the ideal pupil coefficients.
///
/// Noise for mode `k` is drawn in the order Re δaₖ, Im δaₖ, Re δbₖ, Im δbₖ
/// from the stream of `(model.seed, trial)`.
pub fn sample_measurement(
    ideal_f: &ModeCoefficients,
    basis: &ProlateBasis,
    model: &NoiseModel,
    photon_scale: Option<f64>,
    trial: u64,
) -> Result<MeasuredCoefficients> {
    if ideal_f.plane != Plane::Fourier {
        return Err(Error::InvalidConfig(format!(
            "measurement needs Fourier-plane coefficients, got {:?}",
            ideal_f.plane
        )));
    }
    if ideal_f.len() != basis.num_modes() {
        return Err(Error::GridMismatch(format!(
            "{} coefficients for a {}-mode basis",
            ideal_f.len(),
            basis.num_modes()
        )));
    }
    model.validate_parameters()?;
    if model.is_noiseless() {
        return Ok(MeasuredCoefficients {
            values: ideal_f.values.clone(),
            model: model.clone(),
            photon_scale: 1.0,
        });
    }
    let scale = photon_scale.ok_or(Error::MissingPhotonScale(model.kind()))?;
    if !(scale.is_finite() && scale > 0.0) {
        return Err(Error::InvalidConfig(format!(
            "photon scale must be positive, got {scale}"
        )));
    }

    let mut rng = trial_rng(model.seed, trial);
    let mut gauss = |sd: f64| -> f64 {
        let z: f64 = StandardNormal.sample(&mut rng);
        z * sd
    };
    let values = ideal_f
        .values
        .iter()
        .zip(basis.eigenvalues())
        .enumerate()
        .map(|(k, (fk, &lambda))| {
            let sd = model.quadrature_variance(k).sqrt();
            let da = Complex64::new(gauss(sd), gauss(sd));
            let db = Complex64::new(gauss(sd), gauss(sd));
            let noise = i_pow(k) * (da * lambda.sqrt() + db * (1.0 - lambda).sqrt());
            (fk * scale + noise) / scale
        })
        .collect();
    Ok(MeasuredCoefficients {
        values,
        model: model.clone(),
        photon_scale: scale,
    })
}
