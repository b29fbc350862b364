//! Eigenpairs of the finite-Fourier (sinc-kernel) integral operator.
//!
//! The operator
//!
//! ```text
//! (K a)(s) = ∫₋₁¹ sin[c(s − t)] / (π(s − t)) a(t) dt
//! ```
//!
//! is discretized by Gauss–Legendre Nyström on `grid_size` nodes and
//! symmetrized as `W^{1/2} K W^{1/2}`. The kernel commutes with the
//! reflection `s → −s`, so the symmetric matrix splits into an even and an
//! odd block which are diagonalized separately. Every mode therefore carries
//! an exact parity, and the two half-size solves are about four times cheaper
//! than one full solve.
//!
//! Eigenfunctions are normalized on `[−1, 1]`: `Σₙ wₙ φⱼ(sₙ) φₖ(sₙ) = δⱼₖ`.
//! They are the prolate spheroidal functions divided by `√λₖ`.

use std::f64::consts::{FRAC_1_SQRT_2, PI, SQRT_2};

use nalgebra::{DMatrix, SymmetricEigen};
use serde::{Deserialize, Serialize};

use crate::quadrature::gauss_legendre;
use crate::{Error, Result};

pub const DEFAULT_GRID_SIZE: usize = 512;
pub const MIN_GRID_SIZE: usize = 64;
/// Eigenvalues below this fraction of λ₀ are refused for reconstruction.
pub const DEFAULT_MIN_EIGEN_RATIO: f64 = 1e-300;
/// Samples smaller than this are skipped when fixing the eigenvector sign.
const SIGN_THRESHOLD: f64 = 1e-6;
const MAX_EIGEN_ITERATIONS: usize = 100_000;

fn default_grid_size() -> usize {
    DEFAULT_GRID_SIZE
}

fn default_min_eigen_ratio() -> f64 {
    DEFAULT_MIN_EIGEN_RATIO
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BasisConfig {
    /// Space-bandwidth product.
    pub c: f64,
    #[serde(default = "default_grid_size")]
    pub grid_size: usize,
    pub num_modes: usize,
    #[serde(default = "default_min_eigen_ratio")]
    pub min_eigen_ratio: f64,
}

impl BasisConfig {
    pub fn new(c: f64, grid_size: usize, num_modes: usize) -> Self {
        Self {
            c,
            grid_size,
            num_modes,
            min_eigen_ratio: DEFAULT_MIN_EIGEN_RATIO,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.c.is_finite() && self.c > 0.0) {
            return Err(Error::InvalidConfig(format!(
                "c must be a positive finite number, got {}",
                self.c
            )));
        }
        if self.grid_size < MIN_GRID_SIZE {
            return Err(Error::InvalidConfig(format!(
                "grid_size must be at least {MIN_GRID_SIZE}, got {}",
                self.grid_size
            )));
        }
        if self.num_modes == 0 || self.num_modes > self.grid_size {
            return Err(Error::InvalidConfig(format!(
                "num_modes must be in 1..={}, got {}",
                self.grid_size, self.num_modes
            )));
        }
        if !(self.min_eigen_ratio.is_finite() && self.min_eigen_ratio >= 0.0) {
            return Err(Error::InvalidConfig(format!(
                "min_eigen_ratio must be finite and non-negative, got {}",
                self.min_eigen_ratio
            )));
        }
        Ok(())
    }
}

/// `sin[c(s − t)] / (π(s − t))`, with the removable singularity filled in
/// by its limit `c/π`.
#[inline]
pub fn sinc_kernel(c: f64, s: f64, t: f64) -> f64 {
    let u = s - t;
    if u == 0.0 {
        c / PI
    } else {
        (c * u).sin() / (PI * u)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn sign(self) -> f64 {
        match self {
            Parity::Even => 1.0,
            Parity::Odd => -1.0,
        }
    }
}

/// Eigen-decomposition of the sinc-kernel operator for one space-bandwidth
/// product. Immutable once built.
#[derive(Debug, Clone)]
pub struct ProlateBasis {
    config: BasisConfig,
    nodes: Vec<f64>,
    weights: Vec<f64>,
    /// All `grid_size` eigenvalues, descending.
    spectrum: Vec<f64>,
    /// Retained modes, `modes[k][n] = φₖ(sₙ)`.
    modes: Vec<Vec<f64>>,
    parities: Vec<Parity>,
}

impl ProlateBasis {
    pub fn build(config: BasisConfig) -> Result<Self> {
        config.validate()?;
        let n = config.grid_size;
        let c = config.c;
        let (nodes, weights) = gauss_legendre(n);
        let sqrt_w: Vec<f64> = weights.iter().map(|w| w.sqrt()).collect();

        // Reflection pairs (j, n-1-j) for j < n/2; node n/2 is the centre
        // when n is odd.
        let pairs = n / 2;
        let centre = (n % 2 == 1).then_some(n / 2);
        let sym = |i: usize, j: usize| sqrt_w[i] * sinc_kernel(c, nodes[i], nodes[j]) * sqrt_w[j];

        let even_dim = pairs + usize::from(centre.is_some());
        let mut even = DMatrix::<f64>::zeros(even_dim, even_dim);
        let mut odd = DMatrix::<f64>::zeros(pairs, pairs);
        for a in 0..pairs {
            for b in a..pairs {
                let direct = sym(a, b);
                let mirrored = sym(a, n - 1 - b);
                even[(a, b)] = direct + mirrored;
                even[(b, a)] = direct + mirrored;
                odd[(a, b)] = direct - mirrored;
                odd[(b, a)] = direct - mirrored;
            }
        }
        if let Some(m) = centre {
            for a in 0..pairs {
                let v = SQRT_2 * sym(a, m);
                even[(a, pairs)] = v;
                even[(pairs, a)] = v;
            }
            even[(pairs, pairs)] = sym(m, m);
        }

        let mut eigenpairs: Vec<(f64, Parity, Vec<f64>)> = Vec::with_capacity(n);
        for (block, parity) in [(even, Parity::Even), (odd, Parity::Odd)] {
            if block.nrows() == 0 {
                continue;
            }
            let dim = block.nrows();
            let eig = SymmetricEigen::try_new(block, f64::EPSILON, MAX_EIGEN_ITERATIONS)
                .ok_or_else(|| {
                    Error::EigenSolve(format!(
                        "{parity:?} block of size {dim} (c = {c}, grid_size = {n}) did not converge \
                         within {MAX_EIGEN_ITERATIONS} iterations"
                    ))
                })?;
            for (idx, &lambda) in eig.eigenvalues.iter().enumerate() {
                let y = eig.eigenvectors.column(idx);
                let mut v = vec![0.0; n];
                for a in 0..pairs {
                    v[a] = y[a] * FRAC_1_SQRT_2;
                    v[n - 1 - a] = parity.sign() * y[a] * FRAC_1_SQRT_2;
                }
                if let Some(m) = centre {
                    if parity == Parity::Even {
                        v[m] = y[pairs];
                    }
                }
                eigenpairs.push((lambda, parity, v));
            }
        }
        if eigenpairs.iter().any(|(l, _, _)| !l.is_finite()) {
            return Err(Error::EigenSolve(
                "eigen-solver returned non-finite eigenvalues".into(),
            ));
        }
        eigenpairs.sort_by(|x, y| y.0.total_cmp(&x.0));

        let spectrum: Vec<f64> = eigenpairs.iter().map(|(l, _, _)| *l).collect();
        let max_safe = count_safe(&spectrum, config.min_eigen_ratio);
        if config.num_modes > max_safe {
            return Err(Error::TooManyModes {
                requested: config.num_modes,
                max_safe,
            });
        }

        let mut modes = Vec::with_capacity(config.num_modes);
        let mut parities = Vec::with_capacity(config.num_modes);
        for (_, parity, v) in eigenpairs.into_iter().take(config.num_modes) {
            let mut phi: Vec<f64> = v.iter().zip(&sqrt_w).map(|(vi, sw)| vi / sw).collect();
            let flip = phi
                .iter()
                .find(|p| p.abs() > SIGN_THRESHOLD)
                .is_some_and(|p| *p < 0.0);
            if flip {
                phi.iter_mut().for_each(|p| *p = -*p);
            }
            modes.push(phi);
            parities.push(parity);
        }

        Ok(Self {
            config,
            nodes,
            weights,
            spectrum,
            modes,
            parities,
        })
    }

    pub fn config(&self) -> &BasisConfig {
        &self.config
    }

    pub fn c(&self) -> f64 {
        self.config.c
    }

    pub fn grid_size(&self) -> usize {
        self.nodes.len()
    }

    pub fn num_modes(&self) -> usize {
        self.modes.len()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Eigenvalues of the retained modes, λ₀ > λ₁ > ….
    pub fn eigenvalues(&self) -> &[f64] {
        &self.spectrum[..self.modes.len()]
    }

    /// Every eigenvalue of the discretized operator, descending.
    pub fn spectrum(&self) -> &[f64] {
        &self.spectrum
    }

    pub fn parities(&self) -> &[Parity] {
        &self.parities
    }

    pub fn mode(&self, k: usize) -> Result<&[f64]> {
        self.modes
            .get(k)
            .map(Vec::as_slice)
            .ok_or(Error::ModeIndex {
                k,
                available: self.modes.len(),
            })
    }

    pub fn modes(&self) -> &[Vec<f64>] {
        &self.modes
    }

    /// Number of leading eigenvalues above `min_eigen_ratio · λ₀`.
    pub fn max_safe_modes(&self) -> usize {
        count_safe(&self.spectrum, self.config.min_eigen_ratio)
    }

    /// Smallest eigenvalue accepted as a divisor during reconstruction.
    pub fn eigenvalue_floor(&self) -> f64 {
        self.config.min_eigen_ratio * self.spectrum[0]
    }

    /// Nyström extension of mode `k` to arbitrary points,
    /// `φₖ(s) = λₖ⁻¹ Σₙ wₙ K(s, sₙ) φₖ(sₙ)`.
    ///
    /// Outside `[−1, 1]` this is `λₖ^{−1/2} ψₖ(s)`.
    pub fn evaluate_mode(&self, k: usize, points: &[f64]) -> Result<Vec<f64>> {
        let phi = self.mode(k)?;
        let lambda = self.spectrum[k];
        let c = self.config.c;
        let weighted: Vec<f64> = phi.iter().zip(&self.weights).map(|(p, w)| p * w).collect();
        Ok(points
            .iter()
            .map(|&s| {
                let sum: f64 = self
                    .nodes
                    .iter()
                    .zip(&weighted)
                    .map(|(&t, &wp)| sinc_kernel(c, s, t) * wp)
                    .sum();
                sum / lambda
            })
            .collect())
    }

    /// A copy with a different reconstruction threshold. The retained modes
    /// are unchanged, so some of them may now fall below the floor.
    pub fn with_min_eigen_ratio(&self, ratio: f64) -> Self {
        let mut out = self.clone();
        out.config.min_eigen_ratio = ratio;
        out
    }

    /// A copy keeping only the first `k` modes.
    pub fn truncate(&self, k: usize) -> Result<Self> {
        if k == 0 || k > self.modes.len() {
            return Err(Error::InvalidConfig(format!(
                "cannot truncate a {}-mode basis to {k} modes",
                self.modes.len()
            )));
        }
        let mut out = self.clone();
        out.config.num_modes = k;
        out.modes.truncate(k);
        out.parities.truncate(k);
        Ok(out)
    }

    pub fn dump(&self) -> BasisDump {
        BasisDump {
            c: self.config.c,
            grid_size: self.grid_size(),
            eigenvalues: self.eigenvalues().to_vec(),
            parities: self.parities.clone(),
            nodes: self.nodes.clone(),
            weights: self.weights.clone(),
            modes: self.modes.clone(),
        }
    }
}

fn count_safe(spectrum: &[f64], ratio: f64) -> usize {
    let floor = ratio * spectrum[0];
    spectrum
        .iter()
        .take_while(|&&l| l > 0.0 && l > floor)
        .count()
}

/// JSON-serializable snapshot of a basis.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BasisDump {
    pub c: f64,
    pub grid_size: usize,
    pub eigenvalues: Vec<f64>,
    pub parities: Vec<Parity>,
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub modes: Vec<Vec<f64>>,
}
