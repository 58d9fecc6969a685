//! Small dense complex matrices, row-major.

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::hilbert::{dot, ComplexVector};
use crate::scalar::Real;

#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<Complex<T>>,
}

impl<T: Real> CMatrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Complex::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for k in 0..n {
            m[(k, k)] = Complex::one();
        }
        m
    }

    pub fn diagonal(entries: &[Complex<T>]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (k, &d) in entries.iter().enumerate() {
            m[(k, k)] = d;
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Complex<T>>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if nrows == 0 || ncols == 0 {
            return Err(Error::Dimension("matrix must be non-empty".into()));
        }
        if let Some(bad) = rows.iter().position(|r| r.len() != ncols) {
            return Err(Error::Dimension(format!(
                "row {bad} has {} entries, expected {ncols}",
                rows[bad].len()
            )));
        }
        let data: Vec<Complex<T>> = rows.into_iter().flatten().collect();
        if let Some(k) = data.iter().position(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite(k));
        }
        Ok(Self {
            rows: nrows,
            cols: ncols,
            data,
        })
    }

    pub fn from_columns(columns: &[ComplexVector<T>]) -> Result<Self> {
        let cols = columns.len();
        let rows = columns.first().map_or(0, ComplexVector::dim);
        if cols == 0 {
            return Err(Error::Dimension("matrix must be non-empty".into()));
        }
        let mut m = Self::zeros(rows, cols);
        for (j, c) in columns.iter().enumerate() {
            if c.dim() != rows {
                return Err(Error::dim(rows, c.dim()));
            }
            for (i, z) in c.coords().iter().enumerate() {
                m[(i, j)] = *z;
            }
        }
        Ok(m)
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Complex<T>] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Complex<T>> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn scale(&self, c: Complex<T>) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z * c).collect(),
        }
    }

    /// `A x`.
    pub fn mul_vec(&self, x: &[Complex<T>]) -> Result<Vec<Complex<T>>> {
        if x.len() != self.cols {
            return Err(Error::dim(self.cols, x.len()));
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(x)
                    .fold(Complex::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect())
    }

    /// `A^* y`.
    pub fn adjoint_mul_vec(&self, y: &[Complex<T>]) -> Result<Vec<Complex<T>>> {
        if y.len() != self.rows {
            return Err(Error::dim(self.rows, y.len()));
        }
        let mut out = vec![Complex::zero(); self.cols];
        for (i, yi) in y.iter().enumerate() {
            for (o, a) in out.iter_mut().zip(self.row(i)) {
                *o = *o + a.conj() * yi;
            }
        }
        Ok(out)
    }

    pub fn matmul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::dim(self.cols, rhs.rows));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    out[(i, j)] = out[(i, j)] + a * rhs[(k, j)];
                }
            }
        }
        Ok(out)
    }

    /// Gram matrix `A^* A` of the columns.
    pub fn gram(&self) -> Self {
        let columns: Vec<Vec<Complex<T>>> = (0..self.cols).map(|j| self.column(j)).collect();
        let mut g = Self::zeros(self.cols, self.cols);
        for a in 0..self.cols {
            for b in 0..self.cols {
                // (A^*A)_{ab} = <col_b, col_a>
                g[(a, b)] = dot(&columns[b], &columns[a]);
            }
        }
        g
    }

    /// `max |(A^*A - I)_{ab}|`.
    pub fn isometry_defect(&self) -> T {
        let g = self.gram();
        let mut worst = T::zero();
        for a in 0..self.cols {
            for b in 0..self.cols {
                let target = if a == b { Complex::one() } else { Complex::zero() };
                worst = worst.max((g[(a, b)] - target).norm());
            }
        }
        worst
    }

    pub fn max_abs_diff(&self, other: &Self) -> Result<T> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Dimension(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(self
            .data
            .iter()
            .zip(&other.data)
            .fold(T::zero(), |acc, (a, b)| acc.max((a - b).norm())))
    }

    /// Gram-Schmidt on the columns, with one reorthogonalization pass.
    ///
    /// The triangular factor implied by the procedure has a positive real
    /// diagonal, so applied to a complex Gaussian matrix the result is
    /// Haar distributed.
    pub fn orthonormalize_columns(&self) -> Result<Self> {
        let mut basis: Vec<Vec<Complex<T>>> = Vec::with_capacity(self.cols);
        for j in 0..self.cols {
            let mut col = self.column(j);
            for _ in 0..2 {
                for q in &basis {
                    let c = dot(&col, q);
                    for (x, qk) in col.iter_mut().zip(q) {
                        *x = *x - c * qk;
                    }
                }
            }
            let norm = col.iter().fold(T::zero(), |acc, z| acc + z.norm_sqr()).sqrt();
            if !(norm > T::epsilon()) {
                return Err(Error::Internal(format!("column {j} is linearly dependent")));
            }
            let inv = norm.recip();
            col.iter_mut().for_each(|z| *z = *z * inv);
            basis.push(col);
        }
        let cols: Vec<ComplexVector<T>> = basis.into_iter().map(ComplexVector::from_vec_unchecked).collect();
        Self::from_columns(&cols)
    }
}

impl<T> std::ops::Index<(usize, usize)> for CMatrix<T> {
    type Output = Complex<T>;

    fn index(&self, (i, j): (usize, usize)) -> &Complex<T> {
        &self.data[i * self.cols + j]
    }
}

impl<T> std::ops::IndexMut<(usize, usize)> for CMatrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex<T> {
        &mut self.data[i * self.cols + j]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type C = Complex<f64>;

    #[test]
    fn matmul_and_adjoint_agree_with_hand_computation() {
        let a = CMatrix::from_rows(vec![
            vec![C::new(1.0, 0.0), C::new(0.0, 1.0)],
            vec![C::new(2.0, -1.0), C::new(0.0, 0.0)],
            vec![C::new(0.0, 0.0), C::new(3.0, 0.0)],
        ])
        .unwrap();
        let x = [C::new(1.0, 1.0), C::new(0.0, -1.0)];
        let ax = a.mul_vec(&x).unwrap();
        assert_eq!(ax, vec![C::new(2.0, 1.0), C::new(3.0, 1.0), C::new(0.0, -3.0)]);
        let y = [C::new(1.0, 0.0), C::new(0.0, 1.0), C::new(1.0, 0.0)];
        // A^* y = (1 + (2+i)i, -i + 3) = (0 + 2i, 3 - i)
        assert_eq!(a.adjoint_mul_vec(&y).unwrap(), vec![C::new(0.0, 2.0), C::new(3.0, -1.0)]);
        let i2 = CMatrix::identity(2);
        assert_eq!(a.matmul(&i2).unwrap(), a);
        assert!(a.matmul(&a).is_err());
    }

    #[test]
    fn from_rows_rejects_ragged_input() {
        let r = CMatrix::<f64>::from_rows(vec![vec![C::new(1.0, 0.0)], vec![]]);
        assert!(matches!(r, Err(Error::Dimension(_))));
    }

    #[test]
    fn orthonormalized_columns_are_orthonormal() {
        let a = CMatrix::from_rows(vec![
            vec![C::new(1.0, 0.0), C::new(1.0, 1.0)],
            vec![C::new(1.0, 0.0), C::new(0.0, 2.0)],
            vec![C::new(0.0, 1.0), C::new(1.0, 0.0)],
        ])
        .unwrap();
        let q = a.orthonormalize_columns().unwrap();
        assert!(q.isometry_defect() < 1e-15);
        // positive real diagonal of R: <q_1, a_1> > 0
        let r11 = dot(&a.column(0), &q.column(0));
        assert!(r11.re > 0.0 && r11.im.abs() < 1e-15);
    }

    #[test]
    fn dependent_columns_are_rejected() {
        let a = CMatrix::from_rows(vec![
            vec![C::new(1.0, 0.0), C::new(2.0, 0.0)],
            vec![C::new(1.0, 0.0), C::new(2.0, 0.0)],
        ])
        .unwrap();
        assert!(a.orthonormalize_columns().is_err());
    }
}
