//! One-parameter sweeps over scenarios.

use std::fs;
use std::io::BufWriter;
use std::path::PathBuf;
use std::str::FromStr;

use serde::Serialize;

use super::run::run_scenario;
use super::scenario::Scenario;
use crate::io::fmt_f64;
use crate::noise::{Illumination, NoiseModel};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepAxis {
    MeanPhotons,
    R,
    KReconstruct,
}

impl SweepAxis {
    pub fn name(self) -> &'static str {
        match self {
            SweepAxis::MeanPhotons => "mean_photons",
            SweepAxis::R => "r",
            SweepAxis::KReconstruct => "k_reconstruct",
        }
    }

    /// `base` with this axis set to `value`. Everything else, including the
    /// seed, is shared.
    pub fn apply(self, base: &Scenario, value: f64) -> Result<Scenario> {
        let mut s = base.clone();
        s.source = None;
        let seed = base.noise.seed;
        match self {
            SweepAxis::MeanPhotons => {
                s.noise.illumination = match base.noise.illumination.clone() {
                    Illumination::Noiseless => {
                        return Err(Error::InvalidConfig(
                            "a mean_photons sweep needs a coherent or squeezed base scenario".into(),
                        ))
                    }
                    Illumination::Coherent { .. } => Illumination::Coherent { mean_photons: value },
                    Illumination::Squeezed { r, squeezed_modes, .. } => Illumination::Squeezed {
                        mean_photons: value,
                        r,
                        squeezed_modes,
                    },
                };
            }
            SweepAxis::R => {
                let (photons, modes) = match base.noise.illumination {
                    Illumination::Noiseless => {
                        return Err(Error::InvalidConfig(
                            "an r sweep needs a coherent or squeezed base scenario".into(),
                        ))
                    }
                    Illumination::Coherent { mean_photons } => (mean_photons, None),
                    Illumination::Squeezed {
                        mean_photons,
                        squeezed_modes,
                        ..
                    } => (mean_photons, squeezed_modes),
                };
                s.noise = if value == 0.0 {
                    NoiseModel::coherent(photons, seed)
                } else {
                    NoiseModel::squeezed(photons, value, modes, seed)
                };
            }
            SweepAxis::KReconstruct => {
                if value.fract() != 0.0 || value < 1.0 {
                    return Err(Error::InvalidConfig(format!(
                        "k_reconstruct values must be positive integers, got {value}"
                    )));
                }
                s.k_reconstruct = value as usize;
            }
        }
        Ok(s)
    }
}

impl FromStr for SweepAxis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "mean_photons" => Ok(SweepAxis::MeanPhotons),
            "r" => Ok(SweepAxis::R),
            "k_reconstruct" | "K_reconstruct" => Ok(SweepAxis::KReconstruct),
            other => Err(Error::InvalidConfig(format!(
                "unknown sweep axis {other:?} (expected mean_photons, r or k_reconstruct)"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub value: f64,
    pub median_factor: f64,
    pub q25_factor: f64,
    pub q75_factor: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepTable {
    pub axis: SweepAxis,
    pub rows: Vec<SweepRow>,
}

impl SweepTable {
    pub fn to_csv(&self) -> Result<String> {
        let mut wtr = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(Vec::new());
        wtr.write_record(["value", "median_factor", "q25_factor", "q75_factor"])?;
        for r in &self.rows {
            wtr.write_record([
                fmt_f64(r.value),
                fmt_f64(r.median_factor),
                fmt_f64(r.q25_factor),
                fmt_f64(r.q75_factor),
            ])?;
        }
        let bytes = wtr.into_inner().map_err(|e| Error::Io(e.into_error()))?;
        Ok(String::from_utf8(bytes).expect("CSV output is ASCII"))
    }
}

/// Directory used for the `index`-th value of a sweep.
pub fn sweep_run_dir(base: &Scenario, axis: SweepAxis, index: usize) -> PathBuf {
    base.output_dir.join(format!("sweep_{}_{index:02}", axis.name()))
}

/// Runs the base scenario once per value, each into its own subdirectory of
/// `base.output_dir`, and writes `sweep_<axis>.csv` next to them.
pub fn sweep(base: &Scenario, axis: SweepAxis, values: &[f64]) -> Result<SweepTable> {
    if values.is_empty() {
        return Err(Error::InvalidConfig("sweep needs at least one value".into()));
    }
    let mut rows = Vec::with_capacity(values.len());
    for (i, &value) in values.iter().enumerate() {
        let mut scenario = axis.apply(base, value)?;
        scenario.output_dir = sweep_run_dir(base, axis, i);
        let summary = run_scenario(&scenario)?;
        rows.push(SweepRow {
            value,
            median_factor: summary.median_factor,
            q25_factor: summary.q25_factor,
            q75_factor: summary.q75_factor,
        });
    }
    let table = SweepTable { axis, rows };
    fs::create_dir_all(&base.output_dir)?;
    let path = base.output_dir.join(format!("sweep_{}.csv", axis.name()));
    std::io::Write::write_all(&mut BufWriter::new(fs::File::create(path)?), table.to_csv()?.as_bytes())?;
    Ok(table)
}
