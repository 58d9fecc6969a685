//! The resolving set `R` of `P_1(C^N)` and inversion of distance profiles.
//!
//! `R` consists of the basis projections `P[e_j]` and, for neighbouring
//! indices, `P[(e_j - e_{j+1})/sqrt2]` and `P[(e_j + i e_{j+1})/sqrt2]`. Gap
//! distances to `R` determine `|v_j|`, `|v_j - v_{j+1}|` and
//! `|v_j - i v_{j+1}|`; when no coordinate vanishes these moduli pin down
//! `P[v]` by solving for one coordinate at a time.

use num_complex::Complex;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::hilbert::{canonicalize, gap_distance, transition_probability, ComplexVector, RankOneProjection, Tolerances};
use crate::scalar::Real;

#[derive(Debug, Clone, PartialEq)]
pub struct ResolvingSet<T> {
    dim: usize,
    elements: Vec<RankOneProjection<T>>,
}

impl<T: Real> ResolvingSet<T> {
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Basis projections first, then the `(diff, idiff)` pair for each
    /// neighbouring index; `3N - 2` elements in total.
    pub fn elements(&self) -> &[RankOneProjection<T>] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// `P[e_j]`, zero-based.
    pub fn basis(&self, j: usize) -> &RankOneProjection<T> {
        &self.elements[j]
    }

    /// `P[(e_j - e_{j+1})/sqrt2]`, zero-based `j < N - 1`.
    pub fn diff(&self, j: usize) -> &RankOneProjection<T> {
        &self.elements[self.dim + 2 * j]
    }

    /// `P[(e_j + i e_{j+1})/sqrt2]`, zero-based `j < N - 1`.
    pub fn idiff(&self, j: usize) -> &RankOneProjection<T> {
        &self.elements[self.dim + 2 * j + 1]
    }
}

/// Unit vector `(e_j + c e_{j+1}) / sqrt2` in `C^n`, zero-based `j`.
pub(crate) fn pair_vector<T: Real>(n: usize, j: usize, c: Complex<T>) -> ComplexVector<T> {
    let r = T::FRAC_1_SQRT_2();
    let mut coords = vec![Complex::zero(); n];
    coords[j] = Complex::new(r, T::zero());
    coords[j + 1] = c * r;
    ComplexVector::from_vec_unchecked(coords)
}

pub fn build_resolving_set<T: Real>(n: usize) -> Result<ResolvingSet<T>> {
    if n == 0 {
        return Err(Error::Dimension("resolving set needs N >= 1".into()));
    }
    let tol = Tolerances::default();
    let mut elements = Vec::with_capacity(3 * n - 2);
    for j in 0..n {
        elements.push(RankOneProjection::basis(n, j)?);
    }
    let one = Complex::new(T::one(), T::zero());
    let i = Complex::new(T::zero(), T::one());
    for j in 0..n - 1 {
        elements.push(canonicalize(&pair_vector(n, j, -one), &tol)?);
        elements.push(canonicalize(&pair_vector(n, j, i), &tol)?);
    }
    Ok(ResolvingSet { dim: n, elements })
}

/// Moduli read off the distances to `R`: `|v_j|`, `|v_j - v_{j+1}|` and
/// `|v_j - i v_{j+1}|`.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceProfile<T> {
    pub moduli_basis: Vec<T>,
    pub moduli_diff: Vec<T>,
    pub moduli_idiff: Vec<T>,
}

impl<T: Real> DistanceProfile<T> {
    pub fn new(moduli_basis: Vec<T>, moduli_diff: Vec<T>, moduli_idiff: Vec<T>) -> Result<Self> {
        let n = moduli_basis.len();
        if n == 0 || moduli_diff.len() + 1 != n || moduli_idiff.len() + 1 != n {
            return Err(Error::Dimension(format!(
                "profile lists have lengths {}, {}, {}; expected N, N-1, N-1",
                n,
                moduli_diff.len(),
                moduli_idiff.len()
            )));
        }
        Ok(Self {
            moduli_basis,
            moduli_diff,
            moduli_idiff,
        })
    }

    /// Converts raw gap distances to the elements of `R` (in `R`'s order)
    /// into moduli: `|<v, h>| = sqrt(1 - d^2)`, rescaled by `sqrt2` for the
    /// pair elements.
    pub fn from_gap_distances(n: usize, gaps: &[T]) -> Result<Self> {
        if n == 0 || gaps.len() != 3 * n - 2 {
            return Err(Error::Dimension(format!(
                "expected {} gap readings, got {}",
                (3 * n).saturating_sub(2),
                gaps.len()
            )));
        }
        let modulus = |d: T| (T::one() - d * d).max(T::zero()).sqrt();
        let s = T::SQRT_2();
        let basis = gaps[..n].iter().map(|&d| modulus(d)).collect();
        let diff = (0..n - 1).map(|j| s * modulus(gaps[n + 2 * j])).collect();
        let idiff = (0..n - 1).map(|j| s * modulus(gaps[n + 2 * j + 1])).collect();
        Self::new(basis, diff, idiff)
    }

    pub fn dim(&self) -> usize {
        self.moduli_basis.len()
    }

    /// All `3N - 2` moduli in `R`'s element order.
    pub fn flattened(&self) -> Vec<T> {
        let mut out = self.moduli_basis.clone();
        for (d, i) in self.moduli_diff.iter().zip(&self.moduli_idiff) {
            out.push(*d);
            out.push(*i);
        }
        out
    }

    pub fn max_abs_diff(&self, other: &Self) -> Result<T> {
        if self.dim() != other.dim() {
            return Err(Error::dim(self.dim(), other.dim()));
        }
        Ok(self
            .flattened()
            .iter()
            .zip(other.flattened())
            .fold(T::zero(), |acc, (a, b)| acc.max((*a - b).abs())))
    }
}

/// Gap distances from `p` to every element of `r`.
pub fn gap_readings<T: Real>(p: &RankOneProjection<T>, r: &ResolvingSet<T>) -> Result<Vec<T>> {
    r.elements().iter().map(|h| gap_distance(p, h)).collect()
}

pub fn profile_of<T: Real>(p: &RankOneProjection<T>, r: &ResolvingSet<T>) -> Result<DistanceProfile<T>> {
    if p.dim() != r.dim() {
        return Err(Error::dim(r.dim(), p.dim()));
    }
    let n = r.dim();
    // sqrt(tr P[v]P[h]) is sqrt(1 - d^2) for the gap reading d, taken
    // without the round trip through d.
    let modulus = |h: &RankOneProjection<T>| transition_probability(p, h).map(|t| t.sqrt());
    let s = T::SQRT_2();
    let basis = (0..n).map(|j| modulus(r.basis(j))).collect::<Result<_>>()?;
    let diff = (0..n - 1).map(|j| modulus(r.diff(j)).map(|m| s * m)).collect::<Result<_>>()?;
    let idiff = (0..n - 1).map(|j| modulus(r.idiff(j)).map(|m| s * m)).collect::<Result<_>>()?;
    DistanceProfile::new(basis, diff, idiff)
}

/// The unique `b` with `|b| = m`, `|v_k - b| = m_diff`, `|v_k - i b| = m_idiff`.
///
/// With `z = v_k conj(b)` the two difference moduli are linear in `Re z`
/// and `Im z`:
/// `m_diff^2 = |v_k|^2 + m^2 - 2 Re z`, `m_idiff^2 = |v_k|^2 + m^2 - 2 Im z`,
/// and `b = conj(z) v_k / |v_k|^2`.
pub fn recover_next_coordinate<T: Real>(
    v_k: Complex<T>,
    m: T,
    m_diff: T,
    m_idiff: T,
    tol: &Tolerances<T>,
) -> Result<Complex<T>> {
    solve_step(v_k, v_k.norm(), m, m_diff, m_idiff, tol, 0)
}

/// `pivot` is the measured `|v_k|`. Only the phase of `v_k` is used, so
/// modulus rounding does not compound along the chain.
fn solve_step<T: Real>(
    v_k: Complex<T>,
    pivot: T,
    m: T,
    m_diff: T,
    m_idiff: T,
    tol: &Tolerances<T>,
    index: usize,
) -> Result<Complex<T>> {
    if !(pivot > tol.zero) || !(v_k.norm() > tol.zero) {
        return Err(Error::ZeroPivot(pivot.as_f64()));
    }
    if [m, m_diff, m_idiff].iter().any(|x| !(*x >= T::zero()) || !x.is_finite()) {
        return Err(Error::InconsistentProfile {
            index,
            residual: f64::INFINITY,
        });
    }
    let two = T::lit(2.0);
    let base = pivot * pivot + m * m;
    let z = Complex::new((base - m_diff * m_diff) / two, (base - m_idiff * m_idiff) / two);
    let b = z.conj() * (v_k / v_k.norm()) / pivot;
    let residual = (b.norm() - m).abs();
    if !(residual <= tol.eq) {
        return Err(Error::InconsistentProfile {
            index,
            residual: residual.as_f64(),
        });
    }
    Ok(b)
}

/// Inverts a profile of a projection in `D` (no vanishing coordinate).
///
/// `v_1` is taken real positive, then each following coordinate is solved
/// from its predecessor. Errors carry one-based coordinate indices.
pub fn recover_from_profile<T: Real>(
    profile: &DistanceProfile<T>,
    tol: &Tolerances<T>,
) -> Result<RankOneProjection<T>> {
    if let Some((k, &m)) = profile
        .moduli_basis
        .iter()
        .enumerate()
        .find(|(_, m)| !(**m > tol.zero))
    {
        return Err(Error::NotInDomain {
            index: k + 1,
            modulus: m.as_f64(),
        });
    }
    let total = profile.moduli_basis.iter().fold(T::zero(), |acc, m| acc + *m * *m);
    if !((total - T::one()).abs() <= tol.eq) {
        return Err(Error::InconsistentProfile {
            index: 1,
            residual: (total - T::one()).abs().as_f64(),
        });
    }
    let n = profile.dim();
    let mut coords = Vec::with_capacity(n);
    coords.push(Complex::new(profile.moduli_basis[0], T::zero()));
    for k in 0..n - 1 {
        let next = solve_step(
            coords[k],
            profile.moduli_basis[k],
            profile.moduli_basis[k + 1],
            profile.moduli_diff[k],
            profile.moduli_idiff[k],
            tol,
            k + 2,
        )?;
        coords.push(next);
    }
    canonicalize(&ComplexVector::new(coords)?, tol)
}
