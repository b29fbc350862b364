//! Declarative experiment description, parsed from a single JSON file.

use std::fmt;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::basis::{BasisConfig, ProlateBasis, MIN_GRID_SIZE};
use crate::imaging::{double_gaussian_object, ObjectField};
use crate::noise::{Illumination, NoiseModel};
use crate::reconstruction::DEFAULT_TAU;
use crate::{Error, Result};

fn default_xi_points() -> usize {
    2401
}

fn default_tau() -> f64 {
    DEFAULT_TAU
}

fn default_image_extent() -> f64 {
    4.0
}

fn default_image_points() -> usize {
    801
}

fn default_output_dir() -> PathBuf {
    PathBuf::from("out")
}

/// Test object placed in `|s| ≤ 1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum ObjectSpec {
    DoubleGaussian { s0: f64, sigma: f64 },
}

impl ObjectSpec {
    pub fn build(&self, basis: &ProlateBasis) -> Result<ObjectField> {
        match *self {
            ObjectSpec::DoubleGaussian { s0, sigma } => double_gaussian_object(basis, s0, sigma),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub basis: BasisConfig,
    pub object: ObjectSpec,
    pub noise: NoiseModel,
    /// Number of leading modes used in the reconstruction.
    #[serde(alias = "K_reconstruct")]
    pub k_reconstruct: usize,
    /// Half-range of the extended spectrum grid.
    pub xi_max: f64,
    #[serde(default = "default_xi_points")]
    pub xi_points: usize,
    pub trials: usize,
    #[serde(default = "default_tau")]
    pub tau: f64,
    /// Half-width of the image-plane grid written to `image.csv`.
    #[serde(default = "default_image_extent")]
    pub image_extent: f64,
    #[serde(default = "default_image_points")]
    pub image_points: usize,
    /// Per-trial spectrum files are written for the first this-many trials
    /// (all trials when absent).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_trial_files: Option<usize>,
    #[serde(default = "default_output_dir")]
    pub output_dir: PathBuf,
    /// The JSON document this scenario was parsed from, echoed verbatim
    /// into the run summary.
    #[serde(skip)]
    pub source: Option<serde_json::Value>,
}

/// One problem found while checking a scenario.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Diagnostic {
    /// Dotted path of the offending field, e.g. `basis.num_modes`.
    pub field: String,
    pub message: String,
    /// 1-based line in the source file, when known.
    pub line: Option<usize>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Diagnostics(pub Vec<Diagnostic>);

impl Diagnostics {
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Diagnostic> {
        self.0.iter()
    }

    pub fn has_field(&self, field: &str) -> bool {
        self.0.iter().any(|d| d.field == field)
    }
}

impl fmt::Display for Diagnostics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, d) in self.0.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            match d.line {
                Some(line) => write!(f, "line {line}: {}: {}", d.field, d.message)?,
                None => write!(f, "{}: {}", d.field, d.message)?,
            }
        }
        Ok(())
    }
}

/// Line of the key at `path` (dot-separated) in a JSON document, found by
/// locating each path segment in turn after the previous one.
fn locate_key(text: &str, path: &str) -> Option<usize> {
    let mut from = 0;
    for seg in path.split('.') {
        let needle = format!("\"{seg}\"");
        let mut search = from;
        loop {
            let pos = search + text[search..].find(&needle)?;
            let after = pos + needle.len();
            if text[after..].trim_start().starts_with(':') {
                from = after;
                break;
            }
            search = after;
        }
    }
    Some(text[..from].matches('\n').count() + 1)
}

impl Scenario {
    /// Parses and validates. Every problem found is reported, each with the
    /// line of the offending key.
    pub fn from_json_str(text: &str) -> std::result::Result<Self, Diagnostics> {
        let value: serde_json::Value = serde_json::from_str(text).map_err(|e| {
            Diagnostics(vec![Diagnostic {
                field: "<document>".into(),
                message: format!("malformed JSON: {e}"),
                line: Some(e.line()),
            }])
        })?;
        let mut scenario: Scenario = serde_json::from_value(value.clone()).map_err(|e| {
            let msg = e.to_string();
            // serde_json reports the field name but not the line for value errors
            let line = msg
                .split('`')
                .nth(1)
                .and_then(|key| locate_key(text, key));
            Diagnostics(vec![Diagnostic {
                field: "<schema>".into(),
                message: msg,
                line,
            }])
        })?;
        scenario.source = Some(value);
        let mut diags = scenario.check();
        for d in &mut diags.0 {
            d.line = locate_key(text, &d.field);
        }
        if diags.is_empty() {
            Ok(scenario)
        } else {
            Err(diags)
        }
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_json_str(&text).map_err(Error::Scenario)
    }

    /// Field-level invariant checks (no numerics).
    pub fn check(&self) -> Diagnostics {
        let mut out = Vec::new();
        let mut bad = |field: &str, message: String| {
            out.push(Diagnostic {
                field: field.into(),
                message,
                line: None,
            })
        };
        let b = &self.basis;
        if !(b.c.is_finite() && b.c > 0.0) {
            bad("basis.c", format!("space-bandwidth product must be positive, got {}", b.c));
        }
        if b.grid_size < MIN_GRID_SIZE {
            bad(
                "basis.grid_size",
                format!("must be at least {MIN_GRID_SIZE}, got {}", b.grid_size),
            );
        }
        if b.num_modes == 0 || b.num_modes > b.grid_size {
            bad(
                "basis.num_modes",
                format!("must be in 1..=grid_size ({}), got {}", b.grid_size, b.num_modes),
            );
        }
        if !(b.min_eigen_ratio.is_finite() && b.min_eigen_ratio >= 0.0) {
            bad(
                "basis.min_eigen_ratio",
                format!("must be finite and non-negative, got {}", b.min_eigen_ratio),
            );
        }
        match self.object {
            ObjectSpec::DoubleGaussian { s0, sigma } => {
                if !(s0 > 0.0 && s0 < 1.0) {
                    bad("object.s0", format!("must lie in (0, 1), got {s0}"));
                }
                if !(sigma.is_finite() && sigma > 0.0) {
                    bad("object.sigma", format!("must be positive, got {sigma}"));
                }
            }
        }
        match self.noise.illumination {
            Illumination::Noiseless => {}
            Illumination::Coherent { mean_photons } => {
                if !(mean_photons.is_finite() && mean_photons > 0.0) {
                    bad("noise.mean_photons", format!("must be positive, got {mean_photons}"));
                }
            }
            Illumination::Squeezed {
                mean_photons,
                r,
                squeezed_modes,
            } => {
                if !(mean_photons.is_finite() && mean_photons > 0.0) {
                    bad("noise.mean_photons", format!("must be positive, got {mean_photons}"));
                }
                if !(r.is_finite() && r > 0.0) {
                    bad("noise.r", format!("squeezing parameter must be positive, got {r}"));
                }
                if let Some(m) = squeezed_modes {
                    if m > b.num_modes {
                        bad(
                            "noise.squeezed_modes",
                            format!("{m} exceeds basis.num_modes ({})", b.num_modes),
                        );
                    }
                }
            }
        }
        if self.k_reconstruct == 0 || self.k_reconstruct > b.num_modes {
            bad(
                "k_reconstruct",
                format!(
                    "must be in 1..=basis.num_modes ({}), got {}",
                    b.num_modes, self.k_reconstruct
                ),
            );
        }
        if !(self.xi_max.is_finite() && self.xi_max >= 1.0) {
            bad("xi_max", format!("must be at least 1 (the pupil edge), got {}", self.xi_max));
        }
        if self.xi_points < 3 {
            bad("xi_points", format!("must be at least 3, got {}", self.xi_points));
        }
        if self.trials == 0 {
            bad("trials", "must be at least 1".into());
        }
        if !(self.tau.is_finite() && self.tau > 0.0) {
            bad("tau", format!("must be positive, got {}", self.tau));
        }
        if !(self.image_extent.is_finite() && self.image_extent > 0.0) {
            bad("image_extent", format!("must be positive, got {}", self.image_extent));
        }
        if self.image_points < 2 {
            bad("image_points", format!("must be at least 2, got {}", self.image_points));
        }
        Diagnostics(out)
    }

    /// Validated or an [`Error::Scenario`].
    pub fn validate(&self) -> Result<()> {
        let d = self.check();
        if d.is_empty() {
            Ok(())
        } else {
            Err(Error::Scenario(d))
        }
    }

    /// What goes into the summary's `scenario` field.
    pub fn echo(&self) -> serde_json::Value {
        match &self.source {
            Some(v) => v.clone(),
            None => serde_json::to_value(self).unwrap_or(serde_json::Value::Null),
        }
    }

    /// Symmetric grid `[−xi_max, xi_max]` with `xi_points` points.
    pub fn xi_grid(&self) -> Vec<f64> {
        symmetric_grid(self.xi_max, self.xi_points)
    }

    pub fn image_grid(&self) -> Vec<f64> {
        symmetric_grid(self.image_extent, self.image_points)
    }
}

/// Uniform grid on `[−half, half]` that is exactly antisymmetric.
pub fn symmetric_grid(half: f64, points: usize) -> Vec<f64> {
    if points < 2 {
        return vec![0.0; points];
    }
    let m = (points - 1) as f64;
    (0..points)
        .map(|i| half * (2.0 * i as f64 - m) / m)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    const VALID: &str = r#"{
  "basis": {"c": 1.0, "grid_size": 128, "num_modes": 6},
  "object": {"type": "double_gaussian", "s0": 0.5, "sigma": 0.1},
  "noise": {"kind": "coherent", "mean_photons": 1e12, "seed": 7},
  "k_reconstruct": 6,
  "xi_max": 12.0,
  "trials": 5,
  "output_dir": "out/test"
}"#;

    #[test]
    fn valid_file_has_no_diagnostics() {
        let s = Scenario::from_json_str(VALID).unwrap();
        assert_eq!(s.trials, 5);
        assert_eq!(s.tau, 0.1);
        assert_eq!(s.xi_points, 2401);
        assert_eq!(s.noise.seed, 7);
        assert!(s.check().is_empty());
        assert_eq!(s.echo(), serde_json::from_str::<serde_json::Value>(VALID).unwrap());
    }

    #[test]
    fn zero_trials_named_with_line() {
        let text = VALID.replace("\"trials\": 5", "\"trials\": 0");
        let d = Scenario::from_json_str(&text).unwrap_err();
        assert_eq!(d.len(), 1);
        let diag = &d.0[0];
        assert_eq!(diag.field, "trials");
        assert_eq!(diag.line, Some(7));
        assert!(d.to_string().starts_with("line 7: trials:"));
    }

    #[test]
    fn k_reconstruct_above_num_modes() {
        let text = VALID.replace("\"k_reconstruct\": 6", "\"k_reconstruct\": 9");
        let d = Scenario::from_json_str(&text).unwrap_err();
        assert!(d.has_field("k_reconstruct"));
        assert_eq!(d.0[0].line, Some(5));
    }

    #[test]
    fn several_problems_reported_together() {
        let text = VALID
            .replace("\"c\": 1.0", "\"c\": -1.0")
            .replace("\"s0\": 0.5", "\"s0\": 1.5")
            .replace("\"xi_max\": 12.0", "\"xi_max\": 0.5");
        let d = Scenario::from_json_str(&text).unwrap_err();
        assert!(d.has_field("basis.c"));
        assert!(d.has_field("object.s0"));
        assert!(d.has_field("xi_max"));
        let c_line = d.iter().find(|x| x.field == "basis.c").unwrap().line;
        assert_eq!(c_line, Some(2));
    }

    #[test]
    fn alias_and_squeezed_noise() {
        let text = VALID
            .replace("\"k_reconstruct\"", "\"K_reconstruct\"")
            .replace(
                r#"{"kind": "coherent", "mean_photons": 1e12, "seed": 7}"#,
                r#"{"kind": "squeezed", "mean_photons": 1e12, "r": 2.302585092994046, "squeezed_modes": 8}"#,
            );
        let d = Scenario::from_json_str(&text).unwrap_err();
        assert!(d.has_field("noise.squeezed_modes"));
    }

    #[test]
    fn malformed_json_reports_line() {
        let text = VALID.replace("\"xi_max\": 12.0,", "\"xi_max\": ,");
        let d = Scenario::from_json_str(&text).unwrap_err();
        assert_eq!(d.0[0].field, "<document>");
        assert_eq!(d.0[0].line, Some(6));
    }

    #[test]
    fn unknown_field_rejected() {
        let text = VALID.replace("\"trials\": 5,", "\"trials\": 5, \"bogus\": 1,");
        let d = Scenario::from_json_str(&text).unwrap_err();
        assert_eq!(d.0[0].field, "<schema>");
        assert!(d.0[0].message.contains("bogus"));
    }

    #[test]
    fn grid_is_antisymmetric() {
        let g = symmetric_grid(12.0, 2401);
        assert_eq!(g[0], -12.0);
        assert_eq!(g[2400], 12.0);
        assert_eq!(g[1200], 0.0);
        for i in 0..g.len() {
            assert_eq!(g[i], -g[g.len() - 1 - i]);
        }
    }
}
