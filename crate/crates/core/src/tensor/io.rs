//! JSON matrix files: `{"dims": [d1, d2], "re": [[…]], "im": [[…]]}`.

use std::fs;
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::layout::SubsystemLayout;
use super::matrix::ComplexMatrix;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixFile {
    pub dims: Vec<usize>,
    pub re: Vec<Vec<f64>>,
    pub im: Vec<Vec<f64>>,
}

impl MatrixFile {
    pub fn from_matrix(m: &ComplexMatrix, dims: &[usize]) -> Self {
        let rows = |f: fn(&Complex64) -> f64| {
            (0..m.rows())
                .map(|i| (0..m.cols()).map(|j| f(&m[(i, j)])).collect())
                .collect()
        };
        Self {
            dims: dims.to_vec(),
            re: rows(|z| z.re),
            im: rows(|z| z.im),
        }
    }

    /// Validates shape and dims, returning the operator and its layout.
    pub fn into_operator(self) -> Result<(ComplexMatrix, SubsystemLayout)> {
        if self.re.len() != self.im.len() {
            return Err(Error::Format(format!(
                "re has {} rows but im has {}",
                self.re.len(),
                self.im.len()
            )));
        }
        let mut rows = Vec::with_capacity(self.re.len());
        for (i, (r, m)) in self.re.iter().zip(&self.im).enumerate() {
            if r.len() != m.len() {
                return Err(Error::Format(format!("row {i}: re and im lengths differ")));
            }
            rows.push(r.iter().zip(m).map(|(&a, &b)| Complex64::new(a, b)).collect());
        }
        let matrix = ComplexMatrix::from_rows(&rows).map_err(|e| Error::Format(e.to_string()))?;
        if !matrix.is_square() {
            return Err(Error::Format(format!(
                "matrix is {}x{}, expected square",
                matrix.rows(),
                matrix.cols()
            )));
        }
        let layout = SubsystemLayout::new(self.dims).map_err(|e| Error::Format(e.to_string()))?;
        if layout.total_dim() != matrix.rows() {
            return Err(Error::Format(format!(
                "dims {:?} multiply to {} but matrix dimension is {}",
                layout.dims(),
                layout.total_dim(),
                matrix.rows()
            )));
        }
        Ok((matrix, layout))
    }
}

pub fn read_matrix_json(text: &str) -> Result<(ComplexMatrix, SubsystemLayout)> {
    let file: MatrixFile = serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
    file.into_operator()
}

pub fn read_matrix_file(path: impl AsRef<Path>) -> Result<(ComplexMatrix, SubsystemLayout)> {
    read_matrix_json(&fs::read_to_string(path)?)
}

pub fn write_matrix_file(path: impl AsRef<Path>, m: &ComplexMatrix, dims: &[usize]) -> Result<()> {
    let text = serde_json::to_string_pretty(&MatrixFile::from_matrix(m, dims))?;
    fs::write(path, text)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_swap() {
        let text = r#"{"dims":[2,2],
            "re":[[1,0,0,0],[0,0,1,0],[0,1,0,0],[0,0,0,1]],
            "im":[[0,0,0,0],[0,0,0,0],[0,0,0,0],[0,0,0,0]]}"#;
        let (m, layout) = read_matrix_json(text).unwrap();
        assert_eq!(layout.dims(), &[2, 2]);
        assert_eq!(m[(1, 2)], Complex64::new(1.0, 0.0));
    }

    #[test]
    fn dims_must_match() {
        let text = r#"{"dims":[2,3],"re":[[1,0],[0,1]],"im":[[0,0],[0,0]]}"#;
        assert!(matches!(read_matrix_json(text), Err(Error::Format(_))));
    }

    #[test]
    fn dims_field_is_mandatory() {
        let text = r#"{"re":[[1]],"im":[[0]]}"#;
        assert!(read_matrix_json(text).is_err());
    }

    #[test]
    fn ragged_rows_rejected() {
        let text = r#"{"dims":[2],"re":[[1,0],[0]],"im":[[0,0],[0]]}"#;
        assert!(read_matrix_json(text).is_err());
    }
}
