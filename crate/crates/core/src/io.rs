//! JSON file formats shared by the CLI and the reports.
//!
//! Matrices: `{"rows": n, "cols": m, "entries": [[re, im], ...]}`, row-major.
//! Profiles: `{"values": [...]}`.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kernel::{c64, Matrix};
use crate::rearrangement::SingularProfile;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixFile {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<[f64; 2]>,
}

impl MatrixFile {
    pub fn from_matrix(a: &Matrix) -> Self {
        let mut entries = Vec::with_capacity(a.len());
        for i in 0..a.nrows() {
            for j in 0..a.ncols() {
                let z = a[(i, j)];
                entries.push([z.re, z.im]);
            }
        }
        Self { rows: a.nrows(), cols: a.ncols(), entries }
    }

    pub fn to_matrix(&self) -> Result<Matrix> {
        if self.rows == 0 || self.cols == 0 {
            return Err(Error::Invalid("matrix dimensions must be positive".into()));
        }
        if self.entries.len() != self.rows * self.cols {
            return Err(Error::ShapeMismatch(format!(
                "{} entries for a {}x{} matrix",
                self.entries.len(),
                self.rows,
                self.cols
            )));
        }
        if self.entries.iter().flatten().any(|x| !x.is_finite()) {
            return Err(Error::NonFinite);
        }
        let cols = self.cols;
        Ok(Matrix::from_fn(self.rows, cols, |i, j| {
            let [re, im] = self.entries[i * cols + j];
            c64(re, im)
        }))
    }
}

impl Serialize for SingularProfile {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            values: &'a [f64],
        }
        Repr { values: self.values() }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for SingularProfile {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            values: Vec<f64>,
        }
        let repr = Repr::deserialize(deserializer)?;
        SingularProfile::new(repr.values).map_err(serde::de::Error::custom)
    }
}

pub fn matrix_from_json(text: &str) -> Result<Matrix> {
    let file: MatrixFile = serde_json::from_str(text).map_err(|e| Error::Invalid(format!("matrix JSON: {e}")))?;
    file.to_matrix()
}

pub fn matrix_to_json(a: &Matrix) -> String {
    serde_json::to_string(&MatrixFile::from_matrix(a)).expect("matrix serialization is infallible")
}

/// Either input form accepted by `check`: a matrix file or a profile file.
pub fn profile_from_json(text: &str) -> Result<SingularProfile> {
    let value: serde_json::Value = serde_json::from_str(text).map_err(|e| Error::Invalid(format!("JSON: {e}")))?;
    if value.get("values").is_some() {
        serde_json::from_value(value).map_err(|e| Error::Invalid(format!("profile JSON: {e}")))
    } else {
        let file: MatrixFile =
            serde_json::from_value(value).map_err(|e| Error::Invalid(format!("matrix JSON: {e}")))?;
        SingularProfile::of_matrix(&file.to_matrix()?)
    }
}

pub fn read_matrix(path: &Path) -> Result<Matrix> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))?;
    matrix_from_json(&text)
}

pub fn read_profile(path: &Path) -> Result<SingularProfile> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))?;
    profile_from_json(&text)
}
