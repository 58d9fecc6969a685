use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hilbert::{ComplexVector, Tolerances};
use crate::matrix::CMatrix;
use crate::scalar::Real;

/// Whether an isometry is complex-linear or conjugate-linear.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Linearity {
    Linear,
    Antilinear,
}

impl Linearity {
    pub fn as_str(self) -> &'static str {
        match self {
            Linearity::Linear => "linear",
            Linearity::Antilinear => "antilinear",
        }
    }
}

impl std::str::FromStr for Linearity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "linear" => Ok(Linearity::Linear),
            "antilinear" => Ok(Linearity::Antilinear),
            other => Err(Error::InvalidArgument(format!("unknown linearity {other:?}"))),
        }
    }
}

impl std::fmt::Display for Linearity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// An isometry `W: C^N -> C^M` given by a matrix with orthonormal columns.
///
/// A linear witness acts as `v -> A v`; an antilinear one conjugates the
/// coordinates first, `v -> A conj(v)`.
#[derive(Debug, Clone, PartialEq)]
pub struct IsometryWitness<T> {
    matrix: CMatrix<T>,
    tag: Linearity,
}

impl<T: Real> IsometryWitness<T> {
    /// Checks `A^*A = I` within `tol.eq`.
    pub fn new(matrix: CMatrix<T>, tag: Linearity, tol: &Tolerances<T>) -> Result<Self> {
        let defect = matrix.isometry_defect();
        if !(defect <= tol.eq) {
            return Err(Error::NotAnIsometry(defect.as_f64()));
        }
        Ok(Self { matrix, tag })
    }

    pub(crate) fn from_parts_unchecked(matrix: CMatrix<T>, tag: Linearity) -> Self {
        Self { matrix, tag }
    }

    pub fn identity(n: usize, tag: Linearity) -> Self {
        Self {
            matrix: CMatrix::identity(n),
            tag,
        }
    }

    pub fn matrix(&self) -> &CMatrix<T> {
        &self.matrix
    }

    pub fn tag(&self) -> Linearity {
        self.tag
    }

    pub fn domain_dim(&self) -> usize {
        self.matrix.ncols()
    }

    pub fn codomain_dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn isometry_defect(&self) -> T {
        self.matrix.isometry_defect()
    }

    pub fn apply(&self, v: &ComplexVector<T>) -> Result<ComplexVector<T>> {
        let out = match self.tag {
            Linearity::Linear => self.matrix.mul_vec(v.coords())?,
            Linearity::Antilinear => self.matrix.mul_vec(v.conj().coords())?,
        };
        Ok(ComplexVector::from_vec_unchecked(out))
    }

    /// Same witness with its global phase fixed: the first entry of the
    /// first column with modulus above `tol.zero` becomes real positive.
    pub fn gauge_fixed(&self, tol: &Tolerances<T>) -> Self {
        let first = self.matrix.column(0);
        let phase = first
            .iter()
            .find(|z| z.norm() > tol.zero)
            .map(|z| z.conj() / z.norm())
            .unwrap_or_else(|| Complex::new(T::one(), T::zero()));
        Self {
            matrix: self.matrix.scale(phase),
            tag: self.tag,
        }
    }
}

/// `W = V U`: `V` a linear `M x N` witness, `U` an `N x N` witness whose tag
/// becomes the tag of the composite.
pub fn compose_witness<T: Real>(v: &IsometryWitness<T>, u: &IsometryWitness<T>) -> Result<IsometryWitness<T>> {
    if v.tag != Linearity::Linear {
        return Err(Error::Internal("outer factor of a composite witness must be linear".into()));
    }
    if u.codomain_dim() != u.domain_dim() || v.domain_dim() != u.codomain_dim() {
        return Err(Error::Dimension(format!(
            "cannot compose {}x{} with {}x{}",
            v.codomain_dim(),
            v.domain_dim(),
            u.codomain_dim(),
            u.domain_dim()
        )));
    }
    Ok(IsometryWitness {
        matrix: v.matrix.matmul(&u.matrix)?,
        tag: u.tag,
    })
}
