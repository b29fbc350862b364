//! Fields in the object, Fourier and image planes, the forward optics that
//! connects them, and expansion in the prolate basis.
//!
//! Coordinates are dimensionless: `s = 2x/X` in the object and image planes
//! and `ξ = 2y/d` in the pupil plane, so the object occupies `|s| ≤ 1` and
//! the pupil passes `|ξ| ≤ 1`. Object fields live on the basis quadrature
//! nodes; image and spectrum grids are chosen by the caller.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::basis::{sinc_kernel, ProlateBasis};
use crate::quadrature::trapezoid;
use crate::{Error, Result};

/// `iᵏ`.
pub fn i_pow(k: usize) -> Complex64 {
    match k % 4 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    }
}

/// Complex amplitude `a(s)` at the basis nodes. Zero outside `|s| ≤ 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct ObjectField {
    c: f64,
    samples: Vec<Complex64>,
}

impl ObjectField {
    pub fn new(basis: &ProlateBasis, samples: Vec<Complex64>) -> Result<Self> {
        if samples.len() != basis.grid_size() {
            return Err(Error::GridMismatch(format!(
                "object has {} samples, basis grid has {}",
                samples.len(),
                basis.grid_size()
            )));
        }
        Ok(Self {
            c: basis.c(),
            samples,
        })
    }

    pub fn from_fn(basis: &ProlateBasis, f: impl Fn(f64) -> Complex64) -> Self {
        Self {
            c: basis.c(),
            samples: basis.nodes().iter().map(|&s| f(s)).collect(),
        }
    }

    pub fn from_real(basis: &ProlateBasis, values: &[f64]) -> Result<Self> {
        Self::new(basis, values.iter().map(|&v| Complex64::new(v, 0.0)).collect())
    }

    pub fn zeros(basis: &ProlateBasis) -> Self {
        Self {
            c: basis.c(),
            samples: vec![Complex64::new(0.0, 0.0); basis.grid_size()],
        }
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn samples(&self) -> &[Complex64] {
        &self.samples
    }

    /// `∫₋₁¹ |a(s)|² ds` by basis quadrature.
    pub fn energy(&self, basis: &ProlateBasis) -> Result<f64> {
        self.check(basis)?;
        Ok(self
            .samples
            .iter()
            .zip(basis.weights())
            .map(|(a, w)| w * a.norm_sqr())
            .sum())
    }

    pub(crate) fn check(&self, basis: &ProlateBasis) -> Result<()> {
        if self.samples.len() != basis.grid_size() || self.c != basis.c() {
            return Err(Error::GridMismatch(format!(
                "object (c = {}, {} samples) was not built on this basis (c = {}, {} nodes)",
                self.c,
                self.samples.len(),
                basis.c(),
                basis.grid_size()
            )));
        }
        Ok(())
    }
}

fn check_grid(name: &str, grid: &[f64]) -> Result<()> {
    if grid.iter().any(|x| !x.is_finite()) {
        return Err(Error::InvalidConfig(format!("{name} grid has non-finite points")));
    }
    if grid.windows(2).any(|p| p[0] >= p[1]) {
        return Err(Error::InvalidConfig(format!(
            "{name} grid must be strictly increasing"
        )));
    }
    Ok(())
}

fn check_values(name: &str, grid: &[f64], values: &[Complex64]) -> Result<()> {
    if grid.len() != values.len() {
        return Err(Error::InvalidConfig(format!(
            "{name} has {} grid points but {} values",
            grid.len(),
            values.len()
        )));
    }
    if values.iter().any(|v| !v.is_finite()) {
        return Err(Error::InvalidConfig(format!("{name} has non-finite values")));
    }
    Ok(())
}

/// Pupil-plane amplitude `f(ξ)` on an arbitrary increasing grid.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumField {
    xi: Vec<f64>,
    values: Vec<Complex64>,
}

impl SpectrumField {
    pub fn new(xi: Vec<f64>, values: Vec<Complex64>) -> Result<Self> {
        check_grid("spectrum", &xi)?;
        check_values("spectrum", &xi, &values)?;
        Ok(Self { xi, values })
    }

    pub fn xi(&self) -> &[f64] {
        &self.xi
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    /// Same grid, values zeroed outside `|ξ| ≤ half_width`.
    pub fn band_limited(&self, half_width: f64) -> Self {
        let values = self
            .xi
            .iter()
            .zip(&self.values)
            .map(|(x, v)| if x.abs() <= half_width { *v } else { Complex64::new(0.0, 0.0) })
            .collect();
        Self {
            xi: self.xi.clone(),
            values,
        }
    }

    /// The points with `|ξ| ≤ half_width`.
    pub fn restrict(&self, half_width: f64) -> Self {
        let (xi, values) = self
            .xi
            .iter()
            .zip(&self.values)
            .filter(|(x, _)| x.abs() <= half_width)
            .map(|(x, v)| (*x, *v))
            .unzip();
        Self { xi, values }
    }
}

/// Image-plane amplitude `e(s)`; the grid may extend far beyond `[−1, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct ImageField {
    s: Vec<f64>,
    values: Vec<Complex64>,
}

impl ImageField {
    pub fn new(s: Vec<f64>, values: Vec<Complex64>) -> Result<Self> {
        check_grid("image", &s)?;
        check_values("image", &s, &values)?;
        Ok(Self { s, values })
    }

    pub fn s(&self) -> &[f64] {
        &self.s
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Plane {
    Object,
    Image,
    Fourier,
}

/// Expansion coefficients on the leading prolate modes.
#[derive(Debug, Clone, PartialEq)]
pub struct ModeCoefficients {
    pub plane: Plane,
    pub values: Vec<Complex64>,
}

impl ModeCoefficients {
    pub fn new(plane: Plane, values: Vec<Complex64>) -> Self {
        Self { plane, values }
    }

    pub fn zeros(plane: Plane, k: usize) -> Self {
        Self::new(plane, vec![Complex64::new(0.0, 0.0); k])
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    fn expect(&self, plane: Plane, basis: &ProlateBasis) -> Result<()> {
        if self.plane != plane {
            return Err(Error::InvalidConfig(format!(
                "expected {plane:?}-plane coefficients, got {:?}",
                self.plane
            )));
        }
        if self.values.len() != basis.num_modes() {
            return Err(Error::GridMismatch(format!(
                "{} coefficients for a {}-mode basis",
                self.values.len(),
                basis.num_modes()
            )));
        }
        Ok(())
    }
}

/// Two Gaussian peaks of width `sigma` at `±s0`, sampled at the nodes.
pub fn double_gaussian_object(basis: &ProlateBasis, s0: f64, sigma: f64) -> Result<ObjectField> {
    if !(s0 > 0.0 && s0 < 1.0) {
        return Err(Error::InvalidConfig(format!(
            "double-Gaussian half-separation must lie in (0, 1), got {s0}"
        )));
    }
    if !(sigma > 0.0 && sigma.is_finite()) {
        return Err(Error::InvalidConfig(format!(
            "double-Gaussian width must be positive, got {sigma}"
        )));
    }
    let two_var = 2.0 * sigma * sigma;
    Ok(ObjectField::from_fn(basis, |s| {
        let v = (-(s - s0).powi(2) / two_var).exp() + (-(s + s0).powi(2) / two_var).exp();
        Complex64::new(v, 0.0)
    }))
}

/// Lens L1 as a precomputed matrix on a fixed ξ grid:
/// `f(ξ) = √(c/2π) Σₙ wₙ a(sₙ) e^{i c sₙ ξ}`.
///
/// Worth building once when many objects share a grid (Monte-Carlo trials).
#[derive(Debug, Clone)]
pub struct FourierOperator {
    c: f64,
    grid_size: usize,
    xi: Vec<f64>,
    /// Row-major `xi.len() × grid_size`, quadrature weight and prefactor folded in.
    matrix: Vec<Complex64>,
}

impl FourierOperator {
    pub fn new(basis: &ProlateBasis, xi_grid: &[f64]) -> Result<Self> {
        check_grid("spectrum", xi_grid)?;
        let c = basis.c();
        let prefactor = (c / (2.0 * PI)).sqrt();
        let n = basis.grid_size();
        let mut matrix = Vec::with_capacity(xi_grid.len() * n);
        for &xi in xi_grid {
            for (&s, &w) in basis.nodes().iter().zip(basis.weights()) {
                matrix.push(Complex64::from_polar(prefactor * w, c * s * xi));
            }
        }
        Ok(Self {
            c,
            grid_size: n,
            xi: xi_grid.to_vec(),
            matrix,
        })
    }

    pub fn xi(&self) -> &[f64] {
        &self.xi
    }

    pub fn apply(&self, obj: &ObjectField) -> Result<SpectrumField> {
        if obj.c != self.c || obj.samples.len() != self.grid_size {
            return Err(Error::GridMismatch(
                "object was not built on the basis of this Fourier operator".into(),
            ));
        }
        let values = self
            .matrix
            .chunks_exact(self.grid_size)
            .map(|row| row.iter().zip(&obj.samples).map(|(m, a)| m * a).sum())
            .collect();
        Ok(SpectrumField {
            xi: self.xi.clone(),
            values,
        })
    }
}

/// Pupil-plane spectrum of `obj` on `xi_grid`. Valid for any ξ; outside the
/// pupil this is the full (untransmitted) spectrum.
pub fn fourier_transform(
    obj: &ObjectField,
    basis: &ProlateBasis,
    xi_grid: &[f64],
) -> Result<SpectrumField> {
    obj.check(basis)?;
    FourierOperator::new(basis, xi_grid)?.apply(obj)
}

/// Diffraction-limited image `e(s) = Σₙ wₙ K(s, sₙ) a(sₙ)`.
pub fn image_operator(obj: &ObjectField, basis: &ProlateBasis, s_grid: &[f64]) -> Result<ImageField> {
    obj.check(basis)?;
    check_grid("image", s_grid)?;
    let c = basis.c();
    let weighted: Vec<Complex64> = obj
        .samples
        .iter()
        .zip(basis.weights())
        .map(|(a, w)| a * w)
        .collect();
    let values = s_grid
        .iter()
        .map(|&s| {
            basis
                .nodes()
                .iter()
                .zip(&weighted)
                .map(|(&t, wa)| wa * sinc_kernel(c, s, t))
                .sum()
        })
        .collect();
    Ok(ImageField {
        s: s_grid.to_vec(),
        values,
    })
}

/// Object-plane coefficients `aₖ = ∫ a(s) φₖ(s) ds`.
pub fn decompose(obj: &ObjectField, basis: &ProlateBasis) -> Result<ModeCoefficients> {
    obj.check(basis)?;
    let values = basis
        .modes()
        .iter()
        .map(|phi| {
            phi.iter()
                .zip(basis.weights())
                .zip(&obj.samples)
                .map(|((p, w), a)| a * (p * w))
                .sum()
        })
        .collect();
    Ok(ModeCoefficients::new(Plane::Object, values))
}

/// `a(s) = Σₖ aₖ φₖ(s)` at the nodes.
pub fn synthesize(coeffs: &ModeCoefficients, basis: &ProlateBasis) -> Result<ObjectField> {
    coeffs.expect(Plane::Object, basis)?;
    let mut samples = vec![Complex64::new(0.0, 0.0); basis.grid_size()];
    for (ak, phi) in coeffs.values.iter().zip(basis.modes()) {
        for (out, p) in samples.iter_mut().zip(phi) {
            *out += ak * p;
        }
    }
    Ok(ObjectField {
        c: basis.c(),
        samples,
    })
}

/// Diagonal maps `eₖ = √λₖ aₖ` (image) and `fₖ = iᵏ √λₖ aₖ` (Fourier).
pub fn propagate_coeffs(
    a: &ModeCoefficients,
    basis: &ProlateBasis,
    plane: Plane,
) -> Result<ModeCoefficients> {
    a.expect(Plane::Object, basis)?;
    let values = a
        .values
        .iter()
        .zip(basis.eigenvalues())
        .enumerate()
        .map(|(k, (ak, lambda))| {
            let gain = lambda.sqrt();
            match plane {
                Plane::Image => ak * gain,
                Plane::Fourier => ak * i_pow(k) * gain,
                Plane::Object => *ak,
            }
        })
        .collect();
    Ok(ModeCoefficients::new(plane, values))
}

/// Fourier-plane coefficients `fₖ = ∫₋₁¹ f(ξ) φₖ(ξ) dξ` of a spectrum that
/// was sampled at the basis nodes.
pub fn decompose_pupil_spectrum(
    spectrum: &SpectrumField,
    basis: &ProlateBasis,
) -> Result<ModeCoefficients> {
    if spectrum.xi != basis.nodes() {
        return Err(Error::GridMismatch(
            "pupil spectrum must be sampled at the basis nodes".into(),
        ));
    }
    let values = basis
        .modes()
        .iter()
        .map(|phi| {
            phi.iter()
                .zip(basis.weights())
                .zip(&spectrum.values)
                .map(|((p, w), f)| f * (p * w))
                .sum()
        })
        .collect();
    Ok(ModeCoefficients::new(Plane::Fourier, values))
}

/// Image-plane coefficients `eₖ = ∫ e(s) ψₖ(s) ds` on a finite wide grid.
///
/// Only used to validate the diagonal map; production reconstruction goes
/// through the pupil. The integral is trapezoidal over the grid plus an
/// asymptotic tail term: far from the object both `e` and `ψₖ` behave like
/// `(α sin cs + β cos cs)/s`, so each missing tail contributes
/// `(αₑα_ψ + βₑβ_ψ) / 2L`. The tail is added only when both grid ends lie
/// beyond `|s| = 4`.
pub fn decompose_image(image: &ImageField, basis: &ProlateBasis) -> Result<ModeCoefficients> {
    let s = &image.s;
    if s.len() < 16 {
        return Err(Error::InvalidConfig(
            "image grid too short to decompose".into(),
        ));
    }
    let c = basis.c();
    let with_tail = s[0] < -4.0 && s[s.len() - 1] > 4.0;
    let image_tails = with_tail.then(|| {
        (
            fit_tail(c, s, &image.values, Side::Left),
            fit_tail(c, s, &image.values, Side::Right),
        )
    });

    let mut values = Vec::with_capacity(basis.num_modes());
    for (k, lambda) in basis.eigenvalues().iter().enumerate() {
        let psi: Vec<f64> = basis
            .evaluate_mode(k, s)?
            .into_iter()
            .map(|p| p * lambda.sqrt())
            .collect();
        let re: Vec<f64> = image.values.iter().zip(&psi).map(|(e, p)| e.re * p).collect();
        let im: Vec<f64> = image.values.iter().zip(&psi).map(|(e, p)| e.im * p).collect();
        let mut ek = Complex64::new(trapezoid(s, &re), trapezoid(s, &im));
        if let Some((left, right)) = &image_tails {
            let psi_c: Vec<Complex64> = psi.iter().map(|&p| Complex64::new(p, 0.0)).collect();
            for (side, e_tail) in [(Side::Left, left), (Side::Right, right)] {
                let p_tail = fit_tail(c, s, &psi_c, side);
                let l = match side {
                    Side::Left => -s[0],
                    Side::Right => s[s.len() - 1],
                };
                ek += (e_tail.0 * p_tail.0.re + e_tail.1 * p_tail.1.re) / (2.0 * l);
            }
        }
        values.push(ek);
    }
    Ok(ModeCoefficients::new(Plane::Image, values))
}

#[derive(Clone, Copy)]
enum Side {
    Left,
    Right,
}

/// Least-squares fit of `s·g(s) ≈ α sin(cs) + β cos(cs)` over the outer
/// tenth of one end of the grid.
fn fit_tail(c: f64, s: &[f64], g: &[Complex64], side: Side) -> (Complex64, Complex64) {
    let (lo, hi) = (s[0], s[s.len() - 1]);
    let inside = |x: f64| match side {
        Side::Left => x <= 0.9 * lo,
        Side::Right => x >= 0.9 * hi,
    };
    let (mut ss, mut sc, mut cc) = (0.0, 0.0, 0.0);
    let (mut ys, mut yc) = (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0));
    for (&x, &v) in s.iter().zip(g) {
        if !inside(x) {
            continue;
        }
        let (sn, cs) = (c * x).sin_cos();
        let y = v * x;
        ss += sn * sn;
        sc += sn * cs;
        cc += cs * cs;
        ys += y * sn;
        yc += y * cs;
    }
    let det = ss * cc - sc * sc;
    if det.abs() < 1e-300 {
        return (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0));
    }
    ((ys * cc - yc * sc) / det, (yc * ss - ys * sc) / det)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::BasisConfig;

    fn basis(k: usize) -> ProlateBasis {
        ProlateBasis::build(BasisConfig::new(1.0, 256, k)).unwrap()
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn i_pow_cycles() {
        assert_eq!(i_pow(0), c(1.0, 0.0));
        assert_eq!(i_pow(1), c(0.0, 1.0));
        assert_eq!(i_pow(2), c(-1.0, 0.0));
        assert_eq!(i_pow(3), c(0.0, -1.0));
        assert_eq!(i_pow(6), c(-1.0, 0.0));
    }

    #[test]
    fn double_gaussian_values() {
        let b = basis(2);
        let obj = double_gaussian_object(&b, 0.5, 0.1).unwrap();
        let n = b.grid_size();
        for i in 0..n {
            assert_eq!(obj.samples()[i], obj.samples()[n - 1 - i]);
            assert_eq!(obj.samples()[i].im, 0.0);
        }
        // closed form at arbitrary points through the same formula
        let f = |s: f64| (-(s - 0.5f64).powi(2) / 0.02).exp() + (-(s + 0.5f64).powi(2) / 0.02).exp();
        assert!((f(0.5) - (1.0 + (-50.0f64).exp())).abs() < 1e-15);
        assert!((f(0.0) - 2.0 * (-12.5f64).exp()).abs() < 1e-18);
        assert!((f(0.0) - 7.45e-6).abs() < 1e-8);
        assert!(double_gaussian_object(&b, 0.0, 0.1).is_err());
        assert!(double_gaussian_object(&b, 1.0, 0.1).is_err());
        assert!(double_gaussian_object(&b, 0.5, 0.0).is_err());
    }

    #[test]
    fn zero_object_maps_to_zero() {
        let b = basis(3);
        let z = ObjectField::zeros(&b);
        let f = fourier_transform(&z, &b, &[-3.0, 0.0, 5.0]).unwrap();
        assert!(f.values().iter().all(|v| v.norm() == 0.0));
        let e = image_operator(&z, &b, &[-2.0, 0.5]).unwrap();
        assert!(e.values().iter().all(|v| v.norm() == 0.0));
        let s = synthesize(&ModeCoefficients::zeros(Plane::Object, 3), &b).unwrap();
        assert!(s.samples().iter().all(|v| v.norm() == 0.0));
    }

    #[test]
    fn even_real_object_has_even_real_spectrum() {
        let b = basis(2);
        let obj = double_gaussian_object(&b, 0.5, 0.1).unwrap();
        let xi: Vec<f64> = (-40..=40).map(|i| i as f64 * 0.25).collect();
        let f = fourier_transform(&obj, &b, &xi).unwrap();
        let n = xi.len();
        for i in 0..n {
            assert!(f.values()[i].im.abs() < 1e-12);
            assert!((f.values()[i] - f.values()[n - 1 - i]).norm() < 1e-12);
        }
    }

    #[test]
    fn image_of_mode_is_scaled_mode() {
        let b = basis(4);
        for k in 0..4 {
            let obj = ObjectField::from_real(&b, b.mode(k).unwrap()).unwrap();
            let e = image_operator(&obj, &b, b.nodes()).unwrap();
            let lambda = b.eigenvalues()[k];
            for (ev, p) in e.values().iter().zip(b.mode(k).unwrap()) {
                assert!((ev - c(lambda * p, 0.0)).norm() < 1e-8);
            }
        }
    }

    #[test]
    fn decompose_mode_gives_unit_vector() {
        let b = basis(6);
        let obj = ObjectField::from_real(&b, b.mode(2).unwrap()).unwrap();
        let a = decompose(&obj, &b).unwrap();
        for (k, v) in a.values.iter().enumerate() {
            let expected = if k == 2 { 1.0 } else { 0.0 };
            assert!((v - c(expected, 0.0)).norm() < 1e-8);
        }
    }

    #[test]
    fn even_object_has_no_odd_coefficients() {
        let b = basis(6);
        let obj = double_gaussian_object(&b, 0.4, 0.2).unwrap();
        let a = decompose(&obj, &b).unwrap();
        for k in (1..6).step_by(2) {
            assert!(a.values[k].norm() < 1e-8);
        }
    }

    #[test]
    fn decompose_inverts_synthesize() {
        let b = basis(5);
        let coeffs = ModeCoefficients::new(
            Plane::Object,
            vec![c(1.0, -2.0), c(0.5, 0.0), c(0.0, 3.0), c(-1.0, 1.0), c(0.25, 0.75)],
        );
        let back = decompose(&synthesize(&coeffs, &b).unwrap(), &b).unwrap();
        for (x, y) in back.values.iter().zip(&coeffs.values) {
            assert!((x - y).norm() < 1e-8);
        }
    }

    #[test]
    fn propagate_examples() {
        let b = basis(4);
        let l = b.eigenvalues();
        let unit0 = ModeCoefficients::new(Plane::Object, vec![c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]);
        let f = propagate_coeffs(&unit0, &b, Plane::Fourier).unwrap();
        assert_eq!(f.plane, Plane::Fourier);
        assert!((f.values[0] - c(l[0].sqrt(), 0.0)).norm() < 1e-15);
        assert!(f.values[1..].iter().all(|v| v.norm() == 0.0));

        let unit1 = ModeCoefficients::new(Plane::Object, vec![c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]);
        let f = propagate_coeffs(&unit1, &b, Plane::Fourier).unwrap();
        assert!((f.values[1] - c(0.0, l[1].sqrt())).norm() < 1e-15);

        let a = ModeCoefficients::new(Plane::Object, vec![c(1.0, 2.0), c(-3.0, 0.5), c(0.1, 0.1), c(7.0, -1.0)]);
        let e = propagate_coeffs(&a, &b, Plane::Image).unwrap();
        let f = propagate_coeffs(&a, &b, Plane::Fourier).unwrap();
        for (ek, fk) in e.values.iter().zip(&f.values) {
            assert!((ek.norm() - fk.norm()).abs() < 1e-14);
        }
    }

    #[test]
    fn wrong_plane_or_length_rejected() {
        let b = basis(3);
        let f = ModeCoefficients::zeros(Plane::Fourier, 3);
        assert!(synthesize(&f, &b).is_err());
        assert!(propagate_coeffs(&f, &b, Plane::Image).is_err());
        let short = ModeCoefficients::zeros(Plane::Object, 2);
        assert!(synthesize(&short, &b).is_err());
    }

    #[test]
    fn object_from_other_basis_rejected() {
        let b = basis(3);
        let other = ProlateBasis::build(BasisConfig::new(2.0, 256, 3)).unwrap();
        let obj = ObjectField::zeros(&other);
        assert!(decompose(&obj, &b).is_err());
        assert!(ObjectField::new(&b, vec![c(0.0, 0.0); 10]).is_err());
    }

    #[test]
    fn spectrum_grid_validation() {
        assert!(SpectrumField::new(vec![0.0, 0.0], vec![c(0.0, 0.0); 2]).is_err());
        assert!(SpectrumField::new(vec![1.0, 0.0], vec![c(0.0, 0.0); 2]).is_err());
        assert!(SpectrumField::new(vec![0.0, 1.0], vec![c(f64::NAN, 0.0); 2]).is_err());
        assert!(SpectrumField::new(vec![0.0, 1.0], vec![c(0.0, 0.0)]).is_err());
        assert!(ImageField::new(vec![0.0, f64::INFINITY], vec![c(0.0, 0.0); 2]).is_err());
    }

    #[test]
    fn band_limiting() {
        let f = SpectrumField::new(vec![-2.0, -1.0, 0.0, 1.0, 2.0], vec![c(1.0, 1.0); 5]).unwrap();
        let bl = f.band_limited(1.0);
        assert_eq!(bl.values()[0], c(0.0, 0.0));
        assert_eq!(bl.values()[1], c(1.0, 1.0));
        assert_eq!(f.restrict(1.0).xi(), &[-1.0, 0.0, 1.0]);
    }
}
