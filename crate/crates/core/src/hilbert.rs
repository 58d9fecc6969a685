//! Complex inner-product arithmetic on `C^N`, rank-one projections and the
//! gap metric between them.
//!
//! The inner product is linear in the first slot and conjugate-linear in the
//! second: `<v, w> = sum_k v_k * conj(w_k)`. A projection `P[v]` is stored
//! through its canonical representative: the unit vector spanning its range
//! whose first coordinate of modulus above `Tolerances::zero` is real and
//! strictly positive.

use std::ops::Index;

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Bare complex scalar; phases such as `delta` and `epsilon` live here.
pub type ComplexScalar<T> = Complex<T>;

/// Numerical thresholds shared by every module.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances<T> {
    /// Modulus below which a coordinate (or a vector norm) counts as zero.
    pub zero: T,
    /// Allowed deviation of a representative's norm from one.
    pub norm: T,
    /// Gap distance under which two projections are considered equal.
    pub eq: T,
    /// Maximum gap residual accepted when certifying a reconstructed witness.
    pub verify: T,
}

impl<T: Real> Tolerances<T> {
    pub fn new(zero: T, norm: T, eq: T, verify: T) -> Result<Self> {
        let all_positive = [zero, norm, eq, verify].iter().all(|t| *t > T::zero());
        if !all_positive || zero >= eq {
            return Err(Error::InvalidArgument(format!(
                "tolerances must be positive with zero < eq (zero={zero:e}, norm={norm:e}, eq={eq:e}, verify={verify:e})"
            )));
        }
        Ok(Self { zero, norm, eq, verify })
    }

    pub fn with_verify(self, verify: T) -> Result<Self> {
        Self::new(self.zero, self.norm, self.eq, verify)
    }
}

impl<T: Real> Default for Tolerances<T> {
    fn default() -> Self {
        let [zero, norm, eq, verify] = T::DEFAULT_TOLERANCES;
        Self {
            zero: T::lit(zero),
            norm: T::lit(norm),
            eq: T::lit(eq),
            verify: T::lit(verify),
        }
    }
}

/// Finite complex coordinate vector `(v_1, ..., v_N)` in the fixed basis.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexVector<T> {
    coords: Vec<Complex<T>>,
}

impl<T: Real> ComplexVector<T> {
    pub fn new(coords: Vec<Complex<T>>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::Dimension("vector must have at least one coordinate".into()));
        }
        if let Some(k) = coords.iter().position(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite(k));
        }
        Ok(Self { coords })
    }

    /// Builds a vector from real parts only.
    pub fn from_reals(values: &[T]) -> Result<Self> {
        Self::new(values.iter().map(|&x| Complex::new(x, T::zero())).collect())
    }

    /// Standard basis vector `e_k` (zero-based `k`).
    pub fn basis(dim: usize, k: usize) -> Result<Self> {
        if k >= dim {
            return Err(Error::Dimension(format!("basis index {k} out of range for dimension {dim}")));
        }
        let mut coords = vec![Complex::zero(); dim];
        coords[k] = Complex::one();
        Ok(Self { coords })
    }

    pub(crate) fn from_vec_unchecked(coords: Vec<Complex<T>>) -> Self {
        debug_assert!(!coords.is_empty());
        Self { coords }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Complex<T>] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<Complex<T>> {
        self.coords
    }

    pub fn norm_sqr(&self) -> T {
        self.coords.iter().fold(T::zero(), |acc, z| acc + z.norm_sqr())
    }

    pub fn norm(&self) -> T {
        self.norm_sqr().sqrt()
    }

    pub fn scale(&self, c: Complex<T>) -> Self {
        Self {
            coords: self.coords.iter().map(|z| z * c).collect(),
        }
    }

    /// Coordinate-wise complex conjugation in the fixed basis.
    pub fn conj(&self) -> Self {
        Self {
            coords: self.coords.iter().map(|z| z.conj()).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        check_dims(self.dim(), other.dim())?;
        Ok(Self {
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect(),
        })
    }

    /// Largest coordinate-wise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> Result<T> {
        check_dims(self.dim(), other.dim())?;
        Ok(self
            .coords
            .iter()
            .zip(&other.coords)
            .fold(T::zero(), |acc, (a, b)| acc.max((a - b).norm())))
    }
}

impl<T> Index<usize> for ComplexVector<T> {
    type Output = Complex<T>;

    fn index(&self, k: usize) -> &Complex<T> {
        &self.coords[k]
    }
}

fn check_dims(a: usize, b: usize) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::dim(a, b))
    }
}

/// `<v, w> = sum_k v_k conj(w_k)`.
pub fn inner_product<T: Real>(v: &ComplexVector<T>, w: &ComplexVector<T>) -> Result<Complex<T>> {
    check_dims(v.dim(), w.dim())?;
    Ok(dot(v.coords(), w.coords()))
}

#[inline]
pub(crate) fn dot<T: Real>(v: &[Complex<T>], w: &[Complex<T>]) -> Complex<T> {
    v.iter().zip(w).fold(Complex::zero(), |acc, (a, b)| acc + a * b.conj())
}

/// A point of `P_1(C^N)`, held as its canonical representative.
#[derive(Debug, Clone, PartialEq)]
pub struct RankOneProjection<T> {
    rep: ComplexVector<T>,
}

impl<T: Real> RankOneProjection<T> {
    /// `P[e_k]` (zero-based `k`).
    pub fn basis(dim: usize, k: usize) -> Result<Self> {
        Ok(Self {
            rep: ComplexVector::basis(dim, k)?,
        })
    }

    pub fn rep(&self) -> &ComplexVector<T> {
        &self.rep
    }

    pub fn into_rep(self) -> ComplexVector<T> {
        self.rep
    }

    pub fn dim(&self) -> usize {
        self.rep.dim()
    }

    /// Equality of projections: gap distance at most `tol.eq`.
    pub fn approx_eq(&self, other: &Self, tol: &Tolerances<T>) -> Result<bool> {
        Ok(gap_distance(self, other)? <= tol.eq)
    }
}

/// Normalizes `v` and fixes its phase so the first coordinate with modulus
/// above `tol.zero` is real positive.
pub fn canonicalize<T: Real>(v: &ComplexVector<T>, tol: &Tolerances<T>) -> Result<RankOneProjection<T>> {
    let norm = v.norm();
    if !(norm > tol.zero) {
        return Err(Error::ZeroVector(norm.as_f64()));
    }
    let inv = norm.recip();
    let mut coords: Vec<Complex<T>> = v.coords().iter().map(|z| z * inv).collect();
    let pivot = coords
        .iter()
        .position(|z| z.norm() > tol.zero)
        .ok_or_else(|| Error::ZeroVector(norm.as_f64()))?;
    let modulus = coords[pivot].norm();
    let phase = coords[pivot].conj() / modulus;
    for z in coords.iter_mut() {
        *z = *z * phase;
    }
    coords[pivot] = Complex::new(modulus, T::zero());
    Ok(RankOneProjection {
        rep: ComplexVector::from_vec_unchecked(coords),
    })
}

/// `tr P[v]P[w] = |<v, w>|^2`, clamped into `[0, 1]`.
pub fn transition_probability<T: Real>(p: &RankOneProjection<T>, q: &RankOneProjection<T>) -> Result<T> {
    let c = inner_product(p.rep(), q.rep())?;
    Ok(c.norm_sqr().min(T::one()))
}

/// Gap metric `||P[v] - P[w]|| = sqrt(1 - |<v, w>|^2)`.
///
/// Evaluated as the norm of the component of `w` orthogonal to `v`, which is
/// the same quantity without the cancellation in `1 - |<v, w>|^2` that would
/// otherwise floor the result near `sqrt(machine epsilon)`.
pub fn gap_distance<T: Real>(p: &RankOneProjection<T>, q: &RankOneProjection<T>) -> Result<T> {
    let v = p.rep().coords();
    let w = q.rep().coords();
    check_dims(v.len(), w.len())?;
    let c = dot(w, v);
    let radicand = T::one() - c.norm_sqr();
    let zero_tol = Tolerances::<T>::default().zero;
    if radicand < -zero_tol {
        return Err(Error::Internal(format!(
            "negative gap radicand {:e}: representatives are not unit vectors",
            radicand.as_f64()
        )));
    }
    let residual = w
        .iter()
        .zip(v)
        .fold(T::zero(), |acc, (wk, vk)| acc + (wk - c * vk).norm_sqr());
    Ok(residual.sqrt().min(T::one()))
}

#[cfg(test)]
mod tests {
    use super::*;

    type C = Complex<f64>;

    fn vec(coords: &[(f64, f64)]) -> ComplexVector<f64> {
        ComplexVector::new(coords.iter().map(|&(re, im)| C::new(re, im)).collect()).unwrap()
    }

    fn proj(coords: &[(f64, f64)]) -> RankOneProjection<f64> {
        canonicalize(&vec(coords), &Tolerances::default()).unwrap()
    }

    const H: f64 = std::f64::consts::FRAC_1_SQRT_2;

    #[test]
    fn inner_product_examples() {
        let e1 = ComplexVector::<f64>::basis(2, 0).unwrap();
        let e2 = ComplexVector::<f64>::basis(2, 1).unwrap();
        assert_eq!(inner_product(&e1, &e1).unwrap(), C::new(1.0, 0.0));
        assert_eq!(inner_product(&e1, &e2).unwrap(), C::new(0.0, 0.0));
        let v = vec(&[(H, 0.0), (0.0, H)]);
        assert!((inner_product(&v, &e1).unwrap().norm() - H).abs() < 1e-15);
    }

    #[test]
    fn inner_product_is_conjugate_linear_in_second_slot() {
        let v = vec(&[(1.0, 0.0)]);
        let w = vec(&[(0.0, 1.0)]);
        assert_eq!(inner_product(&v, &w).unwrap(), C::new(0.0, -1.0));
        assert_eq!(inner_product(&w, &v).unwrap(), C::new(0.0, 1.0));
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let a = ComplexVector::<f64>::basis(2, 0).unwrap();
        let b = ComplexVector::<f64>::basis(3, 0).unwrap();
        assert!(matches!(inner_product(&a, &b), Err(Error::Dimension(_))));
        let p = RankOneProjection::<f64>::basis(2, 0).unwrap();
        let q = RankOneProjection::<f64>::basis(3, 0).unwrap();
        assert!(matches!(transition_probability(&p, &q), Err(Error::Dimension(_))));
        assert!(matches!(gap_distance(&p, &q), Err(Error::Dimension(_))));
    }

    #[test]
    fn transition_and_gap_examples() {
        let e1 = RankOneProjection::<f64>::basis(3, 0).unwrap();
        let e2 = RankOneProjection::<f64>::basis(3, 1).unwrap();
        assert_eq!(transition_probability(&e1, &e1).unwrap(), 1.0);
        assert_eq!(transition_probability(&e1, &e2).unwrap(), 0.0);
        assert_eq!(gap_distance(&e1, &e1).unwrap(), 0.0);
        assert_eq!(gap_distance(&e1, &e2).unwrap(), 1.0);

        // |<v, w>|^2 = |(1 - i)/2|^2 = 1/2
        let v = proj(&[(H, 0.0), (0.0, 0.0), (H, 0.0)]);
        let w = proj(&[(H, 0.0), (0.0, 0.0), (0.0, H)]);
        assert!((transition_probability(&v, &w).unwrap() - 0.5).abs() < 1e-15);
        assert!((gap_distance(&v, &w).unwrap() - 0.5f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn canonicalize_examples() {
        let tol = Tolerances::default();
        let p = canonicalize(&vec(&[(0.0, 0.0), (0.0, 2.0), (0.0, 0.0)]), &tol).unwrap();
        assert_eq!(p.rep().coords(), vec(&[(0.0, 0.0), (1.0, 0.0), (0.0, 0.0)]).coords());

        let p = canonicalize(&vec(&[(0.0, H), (0.0, H)]), &tol).unwrap();
        assert!(p.rep().max_abs_diff(&vec(&[(H, 0.0), (H, 0.0)])).unwrap() < 1e-15);

        let s = 3f64.sqrt() / 2.0;
        let input = vec(&[(-0.5, 0.0), (0.0, s)]);
        let p = canonicalize(&input, &tol).unwrap();
        assert!(p.rep().max_abs_diff(&vec(&[(0.5, 0.0), (0.0, -s)])).unwrap() < 1e-15);
        let raw = RankOneProjection { rep: input };
        assert!(gap_distance(&raw, &p).unwrap() < 1e-15);
    }

    #[test]
    fn canonicalize_rejects_zero_vector() {
        let tol = Tolerances::default();
        let z = vec(&[(0.0, 0.0), (1e-12, 0.0)]);
        assert!(matches!(canonicalize(&z, &tol), Err(Error::ZeroVector(_))));
    }

    #[test]
    fn vector_rejects_non_finite_and_empty() {
        assert!(matches!(
            ComplexVector::new(vec![C::new(0.0, f64::NAN)]),
            Err(Error::NonFinite(0))
        ));
        assert!(matches!(ComplexVector::<f64>::new(vec![]), Err(Error::Dimension(_))));
    }

    #[test]
    fn gap_rejects_broken_representatives() {
        let big = RankOneProjection {
            rep: vec(&[(2.0, 0.0)]),
        };
        assert!(matches!(gap_distance(&big, &big), Err(Error::Internal(_))));
    }

    #[test]
    fn gap_resolves_tiny_angles() {
        let t: f64 = 1e-12;
        let p = proj(&[(1.0, 0.0), (0.0, 0.0)]);
        let q = proj(&[(t.cos(), 0.0), (t.sin(), 0.0)]);
        let gap = gap_distance(&p, &q).unwrap();
        assert!((gap - t).abs() < 1e-24, "gap {gap:e}");
    }

    #[test]
    fn tolerances_validate() {
        assert!(Tolerances::new(1e-9, 1e-9, 1e-7, 1e-8).is_ok());
        assert!(Tolerances::new(1e-6, 1e-9, 1e-7, 1e-8).is_err());
        assert!(Tolerances::new(1e-9, 0.0, 1e-7, 1e-8).is_err());
        let d = Tolerances::<f64>::default();
        assert_eq!((d.zero, d.norm, d.eq, d.verify), (1e-9, 1e-9, 1e-7, 1e-8));
    }
}
