//! JSON tensor files.
//!
//! ```json
//! { "n": 4, "format": "lambda2_sym_dense", "coeffs": [ ... N*N numbers ... ], "label": "sphere" }
//! ```
//!
//! `coeffs` is the pair matrix flattened row-major over the lexicographic pair
//! basis `(0,1), (0,2), …`. Files failing the symmetry checks are rejected.

use std::io::{Read, Write};

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{CurvError, Result};
use crate::pairs::pair_count;
use crate::tensor::CurvatureTensor;
use crate::tolerance;

pub const FORMAT_TAG: &str = "lambda2_sym_dense";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TensorFile {
    pub n: usize,
    pub format: String,
    pub coeffs: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

impl TensorFile {
    pub fn from_tensor(r: &CurvatureTensor, label: Option<&str>) -> Self {
        let m = r.pair_matrix();
        let big_n = m.nrows();
        let coeffs = (0..big_n)
            .flat_map(|a| (0..big_n).map(move |b| m[(a, b)]))
            .collect();
        Self {
            n: r.dim(),
            format: FORMAT_TAG.to_string(),
            coeffs,
            label: label.map(str::to_string),
        }
    }

    pub fn to_tensor(&self) -> Result<CurvatureTensor> {
        if self.format != FORMAT_TAG {
            return Err(CurvError::Format(format!(
                "unsupported format {:?}, expected {FORMAT_TAG:?}",
                self.format
            )));
        }
        let big_n = pair_count(self.n);
        if self.coeffs.len() != big_n * big_n {
            return Err(CurvError::Format(format!(
                "expected {} coefficients for n = {}, found {}",
                big_n * big_n,
                self.n,
                self.coeffs.len()
            )));
        }
        let m = DMatrix::from_row_slice(big_n, big_n, &self.coeffs);
        CurvatureTensor::from_pair_matrix_with_tol(self.n, m, tolerance::VALIDATION_REL)
    }
}

pub fn tensor_to_json(r: &CurvatureTensor, label: Option<&str>) -> String {
    serde_json::to_string_pretty(&TensorFile::from_tensor(r, label))
        .expect("tensor file serialization cannot fail")
}

/// Parses a tensor file, returning the tensor and its optional label.
pub fn tensor_from_json(s: &str) -> Result<(CurvatureTensor, Option<String>)> {
    let file: TensorFile = serde_json::from_str(s).map_err(|e| CurvError::Format(e.to_string()))?;
    let r = file.to_tensor()?;
    Ok((r, file.label))
}

pub fn write_tensor<W: Write>(
    mut w: W,
    r: &CurvatureTensor,
    label: Option<&str>,
) -> std::io::Result<()> {
    w.write_all(tensor_to_json(r, label).as_bytes())?;
    w.write_all(b"\n")
}

pub fn read_tensor<R: Read>(mut rd: R) -> Result<(CurvatureTensor, Option<String>)> {
    let mut s = String::new();
    rd.read_to_string(&mut s)
        .map_err(|e| CurvError::Format(e.to_string()))?;
    tensor_from_json(&s)
}
