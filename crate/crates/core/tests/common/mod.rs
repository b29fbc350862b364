//! Reference computations that share no code with the library: composite
//! Simpson quadrature on a uniform grid and power iteration.
#![allow(dead_code)]

use std::f64::consts::PI;

use num_complex::Complex64;

/// Composite Simpson rule on `[a, b]` with `intervals` (even) subintervals.
pub fn simpson(a: f64, b: f64, intervals: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(intervals.is_multiple_of(2));
    let h = (b - a) / intervals as f64;
    let x = (0..=intervals).map(|i| a + i as f64 * h).collect();
    let w = (0..=intervals)
        .map(|i| {
            let m = if i == 0 || i == intervals {
                1.0
            } else if i % 2 == 1 {
                4.0
            } else {
                2.0
            };
            m * h / 3.0
        })
        .collect();
    (x, w)
}

pub fn kernel(c: f64, d: f64) -> f64 {
    if d == 0.0 {
        c / PI
    } else {
        (c * d).sin() / (PI * d)
    }
}

pub struct Eigenpair {
    pub c: f64,
    pub lambda: f64,
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    /// Eigenfunction at `nodes`, unit norm under `weights`.
    pub phi: Vec<f64>,
}

impl Eigenpair {
    /// Nyström extension to an arbitrary point.
    pub fn at(&self, s: f64) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .zip(&self.phi)
            .map(|((t, w), p)| w * kernel(self.c, s - t) * p)
            .sum::<f64>()
            / self.lambda
    }
}

/// Leading eigenpair within one parity class by power iteration on the
/// Simpson-discretized operator. Uniform nodes make the kernel Toeplitz, so
/// only `intervals + 1` kernel values are needed.
pub fn leading_eigenpair(c: f64, intervals: usize, odd: bool) -> Eigenpair {
    let (x, w) = simpson(-1.0, 1.0, intervals);
    let n = x.len();
    let h = 2.0 / intervals as f64;
    let toeplitz: Vec<f64> = (0..n).map(|d| kernel(c, d as f64 * h)).collect();
    let sw: Vec<f64> = w.iter().map(|v| v.sqrt()).collect();
    let apply = |u: &[f64]| -> Vec<f64> {
        let z: Vec<f64> = u.iter().zip(&sw).map(|(a, b)| a * b).collect();
        (0..n)
            .map(|i| {
                let acc: f64 = (0..n).map(|j| toeplitz[i.abs_diff(j)] * z[j]).sum();
                acc * sw[i]
            })
            .collect()
    };
    let mut u: Vec<f64> = x
        .iter()
        .zip(&sw)
        .map(|(s, r)| if odd { s * r } else { r * 1.0 })
        .collect();
    let norm = |v: &[f64]| v.iter().map(|a| a * a).sum::<f64>().sqrt();
    let nu = norm(&u);
    u.iter_mut().for_each(|a| *a /= nu);
    let mut lambda = 0.0;
    for _ in 0..60 {
        let v = apply(&u);
        let next: f64 = u.iter().zip(&v).map(|(a, b)| a * b).sum();
        let nv = norm(&v);
        u = v.into_iter().map(|a| a / nv).collect();
        let done = (next - lambda).abs() <= 1e-16 * next.abs();
        lambda = next;
        if done {
            break;
        }
    }
    let mut phi: Vec<f64> = u.iter().zip(&sw).map(|(a, r)| a / r).collect();
    let first = phi.iter().find(|p| p.abs() > 1e-6).copied().unwrap_or(1.0);
    if first < 0.0 {
        phi.iter_mut().for_each(|p| *p = -*p);
    }
    Eigenpair {
        c,
        lambda,
        nodes: x,
        weights: w,
        phi,
    }
}

pub fn double_gaussian(s: f64, s0: f64, sigma: f64) -> f64 {
    let v = 2.0 * sigma * sigma;
    (-(s - s0).powi(2) / v).exp() + (-(s + s0).powi(2) / v).exp()
}

/// `√(c/2π) ∫₋₁¹ a(s) e^{icsξ} ds` by Simpson.
pub fn fourier(c: f64, a: impl Fn(f64) -> f64, xi: f64, intervals: usize) -> Complex64 {
    let (x, w) = simpson(-1.0, 1.0, intervals);
    let sum: Complex64 = x
        .iter()
        .zip(&w)
        .map(|(&s, &wt)| Complex64::from_polar(wt * a(s), c * s * xi))
        .sum();
    sum * (c / (2.0 * PI)).sqrt()
}

/// Max absolute difference of two complex slices.
pub fn max_abs_diff(a: &[Complex64], b: &[Complex64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}
