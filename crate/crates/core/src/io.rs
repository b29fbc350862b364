//! CSV and JSON forms of fields and reconstruction results.
//!
//! CSV files are comma-delimited with a header row and LF line endings.
//! Floats use Rust's shortest round-trip formatting, so reading a file back
//! reproduces every value bit for bit.

use std::io::{Read, Write};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::imaging::{ImageField, ModeCoefficients, ObjectField, Plane, SpectrumField};
use crate::reconstruction::ReconstructionResult;
use crate::{Error, Result};

/// Shortest decimal that parses back to the same `f64`.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:?}")
}

fn writer<W: Write>(w: W) -> csv::Writer<W> {
    csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(w)
}

/// `coordinate,re,im` rows; `coordinate` is the header name of the first column.
pub fn write_field_csv<W: Write>(
    w: W,
    coordinate: &str,
    grid: &[f64],
    values: &[Complex64],
) -> Result<()> {
    let mut wtr = writer(w);
    wtr.write_record([coordinate, "re", "im"])?;
    for (x, v) in grid.iter().zip(values) {
        wtr.write_record([fmt_f64(*x), fmt_f64(v.re), fmt_f64(v.im)])?;
    }
    wtr.flush()?;
    Ok(())
}

pub fn write_spectrum_csv<W: Write>(w: W, spectrum: &SpectrumField) -> Result<()> {
    write_field_csv(w, "xi", spectrum.xi(), spectrum.values())
}

pub fn write_image_csv<W: Write>(w: W, image: &ImageField) -> Result<()> {
    write_field_csv(w, "s", image.s(), image.values())
}

pub fn write_object_csv<W: Write>(w: W, nodes: &[f64], obj: &ObjectField) -> Result<()> {
    write_field_csv(w, "s", nodes, obj.samples())
}

/// `xi,re_recon,im_recon,re_exact,im_exact`.
pub fn write_comparison_csv<W: Write>(
    w: W,
    recon: &SpectrumField,
    exact: &SpectrumField,
) -> Result<()> {
    if recon.xi() != exact.xi() {
        return Err(Error::GridMismatch(
            "reconstructed and exact spectra are on different grids".into(),
        ));
    }
    let mut wtr = writer(w);
    wtr.write_record(["xi", "re_recon", "im_recon", "re_exact", "im_exact"])?;
    for ((x, r), e) in exact.xi().iter().zip(recon.values()).zip(exact.values()) {
        wtr.write_record([
            fmt_f64(*x),
            fmt_f64(r.re),
            fmt_f64(r.im),
            fmt_f64(e.re),
            fmt_f64(e.im),
        ])?;
    }
    wtr.flush()?;
    Ok(())
}

fn read_rows<R: Read>(r: R, columns: usize) -> Result<Vec<Vec<f64>>> {
    let mut rdr = csv::ReaderBuilder::new().has_headers(true).from_reader(r);
    let mut rows = Vec::new();
    for (line, rec) in rdr.records().enumerate() {
        let rec = rec?;
        if rec.len() != columns {
            return Err(Error::InvalidConfig(format!(
                "CSV row {} has {} columns, expected {columns}",
                line + 2,
                rec.len()
            )));
        }
        let row = rec
            .iter()
            .map(|f| {
                f.trim().parse::<f64>().map_err(|e| {
                    Error::InvalidConfig(format!("CSV row {}: bad number {f:?}: {e}", line + 2))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        rows.push(row);
    }
    Ok(rows)
}

/// Reads a `coordinate,re,im` file as a spectrum.
pub fn read_spectrum_csv<R: Read>(r: R) -> Result<SpectrumField> {
    let rows = read_rows(r, 3)?;
    let xi = rows.iter().map(|r| r[0]).collect();
    let values = rows.iter().map(|r| Complex64::new(r[1], r[2])).collect();
    SpectrumField::new(xi, values)
}

/// Reads a comparison file back into (reconstructed, exact).
pub fn read_comparison_csv<R: Read>(r: R) -> Result<(SpectrumField, SpectrumField)> {
    let rows = read_rows(r, 5)?;
    let xi: Vec<f64> = rows.iter().map(|r| r[0]).collect();
    let recon = rows.iter().map(|r| Complex64::new(r[1], r[2])).collect();
    let exact = rows.iter().map(|r| Complex64::new(r[3], r[4])).collect();
    Ok((
        SpectrumField::new(xi.clone(), recon)?,
        SpectrumField::new(xi, exact)?,
    ))
}

/// JSON form shared by every sampled field.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FieldJson {
    pub coordinate: Vec<f64>,
    pub re: Vec<f64>,
    pub im: Vec<f64>,
}

impl FieldJson {
    pub fn new(grid: &[f64], values: &[Complex64]) -> Self {
        Self {
            coordinate: grid.to_vec(),
            re: values.iter().map(|v| v.re).collect(),
            im: values.iter().map(|v| v.im).collect(),
        }
    }

    fn values(&self) -> Result<Vec<Complex64>> {
        if self.re.len() != self.coordinate.len() || self.im.len() != self.coordinate.len() {
            return Err(Error::InvalidConfig(
                "field JSON arrays have different lengths".into(),
            ));
        }
        Ok(self
            .re
            .iter()
            .zip(&self.im)
            .map(|(&re, &im)| Complex64::new(re, im))
            .collect())
    }

    pub fn into_spectrum(self) -> Result<SpectrumField> {
        let values = self.values()?;
        SpectrumField::new(self.coordinate, values)
    }

    pub fn into_image(self) -> Result<ImageField> {
        let values = self.values()?;
        ImageField::new(self.coordinate, values)
    }
}

impl From<&SpectrumField> for FieldJson {
    fn from(f: &SpectrumField) -> Self {
        Self::new(f.xi(), f.values())
    }
}

impl From<&ImageField> for FieldJson {
    fn from(f: &ImageField) -> Self {
        Self::new(f.s(), f.values())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoefficientsJson {
    pub plane: Plane,
    pub re: Vec<f64>,
    pub im: Vec<f64>,
}

impl From<&ModeCoefficients> for CoefficientsJson {
    fn from(c: &ModeCoefficients) -> Self {
        Self {
            plane: c.plane,
            re: c.values.iter().map(|v| v.re).collect(),
            im: c.values.iter().map(|v| v.im).collect(),
        }
    }
}

impl CoefficientsJson {
    pub fn into_coefficients(self) -> Result<ModeCoefficients> {
        if self.re.len() != self.im.len() {
            return Err(Error::InvalidConfig(
                "coefficient JSON arrays have different lengths".into(),
            ));
        }
        Ok(ModeCoefficients::new(
            self.plane,
            self.re
                .into_iter()
                .zip(self.im)
                .map(|(re, im)| Complex64::new(re, im))
                .collect(),
        ))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReconstructionJson {
    pub k_used: usize,
    pub rms_band_error: f64,
    pub superres_factor: f64,
    pub recon_coeffs: CoefficientsJson,
    pub recon_object: FieldJson,
    pub recon_spectrum: FieldJson,
    pub exact_spectrum: FieldJson,
}

impl ReconstructionJson {
    pub fn new(result: &ReconstructionResult, nodes: &[f64]) -> Self {
        Self {
            k_used: result.k_used,
            rms_band_error: result.rms_band_error,
            superres_factor: result.superres_factor,
            recon_coeffs: (&result.recon_coeffs).into(),
            recon_object: FieldJson::new(nodes, result.recon_object.samples()),
            recon_spectrum: (&result.recon_spectrum).into(),
            exact_spectrum: (&result.exact_spectrum).into(),
        }
    }
}
