//! Operator file format.
//!
//! One JSON record per file:
//!
//! ```json
//! {"kind": "witness", "n": 2, "m": 3, "tag": "linear",
//!  "matrix": [[[0.0, 0.0], [0.0, 0.0]], [[1.0, 0.0], [0.0, 0.0]], [[0.0, 0.0], [1.0, 0.0]]],
//!  "meta": {"seed": 7, "generator": "shift"}}
//! ```
//!
//! `matrix` is row-major with `m` rows and `n` columns; complex entries are
//! `[re, im]`. A `vector` record is a single column (`n = 1`, `m` = length).
//! A `generator` record has no matrix; `meta` names the generator.

use std::fs;
use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};
use wigner::{CMatrix, Complex64, ComplexVector, GeneratorKind, GeneratorSpec, Linearity, Vector64, Witness64};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RecordKind {
    Witness,
    Vector,
    Generator,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Meta {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generator: Option<GeneratorKind>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub j: Option<usize>,
}

pub type Entry = [f64; 2];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OperatorFile {
    pub kind: RecordKind,
    pub n: usize,
    pub m: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tag: Option<Linearity>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<Vec<Vec<Entry>>>,
    #[serde(default)]
    pub meta: Meta,
}

pub fn matrix_entries(m: &CMatrix<f64>) -> Vec<Vec<Entry>> {
    (0..m.nrows())
        .map(|i| m.row(i).iter().map(|z| [z.re, z.im]).collect())
        .collect()
}

impl OperatorFile {
    pub fn from_witness(w: &Witness64, meta: Meta) -> Self {
        Self {
            kind: RecordKind::Witness,
            n: w.domain_dim(),
            m: w.codomain_dim(),
            tag: Some(w.tag()),
            matrix: Some(matrix_entries(w.matrix())),
            meta,
        }
    }

    pub fn from_vector(v: &Vector64) -> Self {
        Self {
            kind: RecordKind::Vector,
            n: 1,
            m: v.dim(),
            tag: None,
            matrix: Some(v.coords().iter().map(|z| vec![[z.re, z.im]]).collect()),
            meta: Meta::default(),
        }
    }

    pub fn from_generator(spec: &GeneratorSpec) -> Self {
        Self {
            kind: RecordKind::Generator,
            n: spec.n,
            m: spec.codomain_dim(),
            tag: spec.tag,
            matrix: None,
            meta: Meta {
                seed: Some(spec.seed),
                generator: Some(spec.kind),
                j: spec.j,
            },
        }
    }

    fn checked_matrix(&self) -> Result<CMatrix<f64>, CliError> {
        let rows = self
            .matrix
            .as_ref()
            .ok_or_else(|| CliError::input("field `matrix`: missing"))?;
        if rows.len() != self.m {
            return Err(CliError::input(format!(
                "field `matrix`: {} rows, but `m` is {}",
                rows.len(),
                self.m
            )));
        }
        if let Some(i) = rows.iter().position(|r| r.len() != self.n) {
            return Err(CliError::input(format!(
                "field `matrix`: row {i} has {} entries, but `n` is {}",
                rows[i].len(),
                self.n
            )));
        }
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&[re, im]| Complex64::new(re, im)).collect())
            .collect();
        CMatrix::from_rows(rows).map_err(|e| CliError::input(format!("field `matrix`: {e}")))
    }

    pub fn to_witness(&self) -> Result<Witness64, CliError> {
        if self.kind != RecordKind::Witness {
            return Err(CliError::input(format!("field `kind`: expected \"witness\", got {:?}", self.kind)));
        }
        let tag = self.tag.ok_or_else(|| CliError::input("field `tag`: missing"))?;
        let matrix = self.checked_matrix()?;
        Witness64::new(matrix, tag, &Default::default())
            .map_err(|e| CliError::input(format!("field `matrix`: {e}")))
    }

    pub fn to_vector(&self) -> Result<Vector64, CliError> {
        if self.kind != RecordKind::Vector {
            return Err(CliError::input(format!("field `kind`: expected \"vector\", got {:?}", self.kind)));
        }
        if self.n != 1 {
            return Err(CliError::input(format!("field `n`: a vector record has n = 1, got {}", self.n)));
        }
        let m = self.checked_matrix()?;
        ComplexVector::new(m.column(0)).map_err(|e| CliError::input(format!("field `matrix`: {e}")))
    }

    pub fn to_generator(&self) -> Result<GeneratorSpec, CliError> {
        if self.kind != RecordKind::Generator {
            return Err(CliError::input(format!(
                "field `kind`: expected \"generator\", got {:?}",
                self.kind
            )));
        }
        let kind = self
            .meta
            .generator
            .ok_or_else(|| CliError::input("field `meta.generator`: missing"))?;
        let spec = GeneratorSpec {
            kind,
            n: self.n,
            m: Some(self.m),
            seed: self.meta.seed.unwrap_or(0),
            j: self.meta.j,
            tag: self.tag,
        };
        spec.validate().map_err(CliError::input)?;
        Ok(spec)
    }

    pub fn to_json(&self) -> String {
        crate::json::to_pretty(self)
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        let de = &mut serde_json::Deserializer::from_str(text);
        serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            CliError::input(format!("field `{path}`: {}", e.into_inner()))
        })
    }

    pub fn read(path: &Path) -> Result<Self, CliError> {
        let text = fs::read_to_string(path).map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
        Self::parse(&text).map_err(|e| CliError::input(format!("{}: {}", path.display(), e.message)))
    }
}

/// Writes via a temporary file in the target directory and renames it.
pub fn write_atomic(path: &Path, contents: &str) -> Result<(), CliError> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let io_err = |e: std::io::Error| CliError::input(format!("{}: {e}", path.display()));
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io_err)?;
    tmp.write_all(contents.as_bytes()).map_err(io_err)?;
    tmp.write_all(b"\n").map_err(io_err)?;
    tmp.persist(path).map_err(|e| io_err(e.error))?;
    Ok(())
}
