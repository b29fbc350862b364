//! Superresolution of diffraction-limited coherent images by prolate
//! spheroidal expansion, and the quantum noise that bounds it.
//!
//! A one-dimensional object of finite support `|s| ≤ 1` is imaged through a
//! pupil that passes spatial frequencies `|ξ| ≤ 1`. Because the object is
//! known to vanish outside its support, its spectrum is entire and can be
//! continued beyond the pupil by expanding in the eigenfunctions of the
//! sinc-kernel operator. Noise in the detected pupil coefficients is
//! amplified by `1/√λₖ`, which limits how far the continuation can go.
//!
//! - [`basis`]: eigenvalues and eigenfunctions of the sinc-kernel operator.
//! - [`imaging`]: object, pupil and image fields and the optics between them.
//! - [`noise`]: homodyne measurement under coherent or squeezed light.
//! - [`reconstruction`]: inversion, continued spectra, and error metrics.
//! - [`experiment`]: JSON scenarios, Monte-Carlo runs, sweeps, file output.

pub mod basis;
mod error;
pub mod experiment;
pub mod imaging;
pub mod io;
pub mod noise;
pub mod quadrature;
pub mod reconstruction;

pub use basis::{BasisConfig, Parity, ProlateBasis};
pub use error::{Error, Result};
pub use imaging::{ImageField, ModeCoefficients, ObjectField, Plane, SpectrumField};
pub use noise::{Illumination, MeasuredCoefficients, NoiseModel};
pub use reconstruction::ReconstructionResult;
