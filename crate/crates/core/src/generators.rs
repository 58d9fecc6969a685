//! Test instances: maps induced by known isometries, the truncated shift,
//! and two maps that are not Wigner symmetries.

use std::marker::PhantomData;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hilbert::{canonicalize, ComplexVector, RankOneProjection, Tolerances};
use crate::matrix::CMatrix;
use crate::reconstruct::SymmetryMap;
use crate::sampling::{gaussian_complex, mix_seed, random_unit_phase, rng_from_seed};
use crate::scalar::Real;
use crate::witness::{IsometryWitness, Linearity};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GeneratorKind {
    HaarUnitary,
    HaarAntiunitary,
    RandomIsometry,
    Shift,
    PartialConjugation,
    Constant,
}

impl GeneratorKind {
    pub const ALL: [GeneratorKind; 6] = [
        GeneratorKind::HaarUnitary,
        GeneratorKind::HaarAntiunitary,
        GeneratorKind::RandomIsometry,
        GeneratorKind::Shift,
        GeneratorKind::PartialConjugation,
        GeneratorKind::Constant,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            GeneratorKind::HaarUnitary => "haar_unitary",
            GeneratorKind::HaarAntiunitary => "haar_antiunitary",
            GeneratorKind::RandomIsometry => "random_isometry",
            GeneratorKind::Shift => "shift",
            GeneratorKind::PartialConjugation => "partial_conjugation",
            GeneratorKind::Constant => "constant",
        }
    }

    /// Whether instances of this kind are induced by an isometry.
    pub fn is_induced(self) -> bool {
        !matches!(self, GeneratorKind::PartialConjugation | GeneratorKind::Constant)
    }
}

impl std::str::FromStr for GeneratorKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        GeneratorKind::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown generator kind {s:?}")))
    }
}

impl std::fmt::Display for GeneratorKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Recipe for a test instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorSpec {
    pub kind: GeneratorKind,
    pub n: usize,
    /// Codomain dimension; defaults to `n` (`n + 1` for the shift).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    #[serde(default)]
    pub seed: u64,
    /// One-based index after which the adversary conjugates coordinates.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub j: Option<usize>,
    /// Linearity of a `random_isometry` instance; defaults to linear.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tag: Option<Linearity>,
}

impl GeneratorSpec {
    pub fn new(kind: GeneratorKind, n: usize, seed: u64) -> Self {
        Self {
            kind,
            n,
            m: None,
            seed,
            j: None,
            tag: None,
        }
    }

    pub fn codomain_dim(&self) -> usize {
        match (self.kind, self.m) {
            (_, Some(m)) => m,
            (GeneratorKind::Shift, None) => self.n + 1,
            (_, None) => self.n,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let (n, m) = (self.n, self.codomain_dim());
        if n == 0 {
            return Err(Error::Dimension("n must be at least 1".into()));
        }
        match self.kind {
            GeneratorKind::HaarUnitary
            | GeneratorKind::HaarAntiunitary
            | GeneratorKind::PartialConjugation
            | GeneratorKind::Constant
                if m != n =>
            {
                return Err(Error::Dimension(format!("{} requires m = n (n={n}, m={m})", self.kind)));
            }
            GeneratorKind::Shift if m != n + 1 => {
                return Err(Error::Dimension(format!("shift requires m = n + 1 (n={n}, m={m})")));
            }
            GeneratorKind::RandomIsometry if m < n => {
                return Err(Error::Dimension(format!(
                    "no isometry from dimension {n} into dimension {m}"
                )));
            }
            _ => {}
        }
        if self.kind == GeneratorKind::PartialConjugation {
            let j = self
                .j
                .ok_or_else(|| Error::Dimension("partial_conjugation requires j".into()))?;
            check_adversary_params(n, j)?;
        }
        Ok(())
    }

    /// The isometry inducing the instance, when there is one.
    pub fn witness<T: Real>(&self) -> Result<Option<IsometryWitness<T>>> {
        self.validate()?;
        let w = match self.kind {
            GeneratorKind::HaarUnitary => haar_random_witness(self.n, Linearity::Linear, self.seed)?,
            GeneratorKind::HaarAntiunitary => haar_random_witness(self.n, Linearity::Antilinear, self.seed)?,
            GeneratorKind::RandomIsometry => random_isometry_witness(
                self.n,
                self.codomain_dim(),
                self.tag.unwrap_or(Linearity::Linear),
                self.seed,
            )?,
            GeneratorKind::Shift => shift_witness(self.n),
            GeneratorKind::PartialConjugation | GeneratorKind::Constant => return Ok(None),
        };
        Ok(Some(w))
    }

    pub fn build<T: Real>(&self) -> Result<Box<dyn SymmetryMap<T>>> {
        if let Some(w) = self.witness()? {
            return Ok(Box::new(symmetry_from_witness(w, mix_seed(self.seed, SCRAMBLE_STREAM))));
        }
        Ok(match self.kind {
            GeneratorKind::PartialConjugation => Box::new(partial_conjugation_adversary(
                self.n,
                self.j.expect("validated"),
            )?),
            _ => Box::new(ConstantMap::new(self.n)?),
        })
    }
}

const SCRAMBLE_STREAM: u64 = 0x7363_7261_6d62_6c65;

/// Haar-random unitary (or antiunitary) on `C^n`, deterministic per seed.
pub fn haar_random_witness<T: Real>(n: usize, tag: Linearity, seed: u64) -> Result<IsometryWitness<T>> {
    random_isometry_witness(n, n, tag, seed)
}

/// Random `m x n` matrix with orthonormal columns: Gram-Schmidt on a seeded
/// complex Gaussian matrix.
pub fn random_isometry_witness<T: Real>(n: usize, m: usize, tag: Linearity, seed: u64) -> Result<IsometryWitness<T>> {
    if n == 0 || m < n {
        return Err(Error::Dimension(format!(
            "no isometry from dimension {n} into dimension {m}"
        )));
    }
    let mut rng = rng_from_seed(seed);
    let mut g = CMatrix::zeros(m, n);
    for i in 0..m {
        for j in 0..n {
            g[(i, j)] = gaussian_complex(&mut rng);
        }
    }
    Ok(IsometryWitness::from_parts_unchecked(g.orthonormalize_columns()?, tag))
}

/// `e_k -> e_{k+1}` from `C^n` into `C^{n+1}`.
///
/// # Panics
/// If `n == 0`.
pub fn shift_witness<T: Real>(n: usize) -> IsometryWitness<T> {
    assert!(n >= 1, "shift needs n >= 1");
    let mut a = CMatrix::zeros(n + 1, n);
    for k in 0..n {
        a[(k + 1, k)] = num_complex::Complex::new(T::one(), T::zero());
    }
    IsometryWitness::from_parts_unchecked(a, Linearity::Linear)
}

/// `P[v] -> P[W v]`, with the image representative multiplied by a
/// pseudo-random unit phase before canonicalization. The phase depends only
/// on the scramble seed and the query, so results do not depend on query
/// order or threading.
#[derive(Debug, Clone)]
pub struct InducedSymmetry<T> {
    witness: IsometryWitness<T>,
    scramble_seed: u64,
    tol: Tolerances<T>,
}

impl<T: Real> InducedSymmetry<T> {
    pub fn witness(&self) -> &IsometryWitness<T> {
        &self.witness
    }
}

pub fn symmetry_from_witness<T: Real>(witness: IsometryWitness<T>, scramble_seed: u64) -> InducedSymmetry<T> {
    InducedSymmetry {
        witness,
        scramble_seed,
        tol: Tolerances::default(),
    }
}

fn query_seed<T: Real>(seed: u64, v: &ComplexVector<T>) -> u64 {
    v.coords().iter().fold(seed, |h, z| {
        mix_seed(mix_seed(h, z.re.as_f64().to_bits()), z.im.as_f64().to_bits())
    })
}

impl<T: Real> SymmetryMap<T> for InducedSymmetry<T> {
    fn domain_dim(&self) -> usize {
        self.witness.domain_dim()
    }

    fn codomain_dim(&self) -> usize {
        self.witness.codomain_dim()
    }

    fn query(&self, p: &RankOneProjection<T>) -> Result<RankOneProjection<T>> {
        let image = self.witness.apply(p.rep())?;
        let mut rng = rng_from_seed(query_seed(self.scramble_seed, p.rep()));
        let mu = random_unit_phase::<T, _>(&mut rng);
        canonicalize(&image.scale(mu), &self.tol)
    }
}

fn check_adversary_params(n: usize, j: usize) -> Result<()> {
    if n < 3 || j < 2 || j > n - 1 {
        return Err(Error::Dimension(format!(
            "partial_conjugation needs n >= 3 and 2 <= j <= n-1 (n={n}, j={j})"
        )));
    }
    Ok(())
}

/// Conjugates every coordinate after the `j`-th (one-based), on the
/// representative whose `j`-th coordinate is real positive. Fixes all basis
/// projections and every projection with real coordinates, yet breaks
/// transition probabilities across the boundary at `j`.
#[derive(Debug, Clone)]
pub struct PartialConjugation<T> {
    n: usize,
    j: usize,
    tol: Tolerances<T>,
}

pub fn partial_conjugation_adversary<T: Real>(n: usize, j: usize) -> Result<PartialConjugation<T>> {
    check_adversary_params(n, j)?;
    Ok(PartialConjugation {
        n,
        j,
        tol: Tolerances::default(),
    })
}

impl<T: Real> SymmetryMap<T> for PartialConjugation<T> {
    fn domain_dim(&self) -> usize {
        self.n
    }

    fn codomain_dim(&self) -> usize {
        self.n
    }

    fn query(&self, p: &RankOneProjection<T>) -> Result<RankOneProjection<T>> {
        if p.dim() != self.n {
            return Err(Error::dim(self.n, p.dim()));
        }
        // Conjugating a suffix depends on the representative; fix it by making
        // the j-th coordinate real positive (canonical phase when it vanishes).
        let pivot = p.rep()[self.j - 1];
        let phase = if pivot.norm() > self.tol.zero {
            pivot.conj() / pivot.norm()
        } else {
            num_complex::Complex::new(T::one(), T::zero())
        };
        let coords = p
            .rep()
            .coords()
            .iter()
            .enumerate()
            .map(|(k, z)| if k < self.j { z * phase } else { (z * phase).conj() })
            .collect();
        canonicalize(&ComplexVector::new(coords)?, &self.tol)
    }
}

/// Sends every projection to `P[e_1]`.
#[derive(Debug, Clone)]
pub struct ConstantMap<T> {
    n: usize,
    _scalar: PhantomData<T>,
}

impl<T: Real> ConstantMap<T> {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Dimension("n must be at least 1".into()));
        }
        Ok(Self {
            n,
            _scalar: PhantomData,
        })
    }
}

impl<T: Real> SymmetryMap<T> for ConstantMap<T> {
    fn domain_dim(&self) -> usize {
        self.n
    }

    fn codomain_dim(&self) -> usize {
        self.n
    }

    fn query(&self, p: &RankOneProjection<T>) -> Result<RankOneProjection<T>> {
        if p.dim() != self.n {
            return Err(Error::dim(self.n, p.dim()));
        }
        RankOneProjection::basis(self.n, 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hilbert::{gap_distance, inner_product};
    use crate::reconstruct::validate_symmetry;
    use crate::sampling::contradiction_pair;
    use num_complex::Complex;

    type C = Complex<f64>;
    const H: f64 = std::f64::consts::FRAC_1_SQRT_2;

    fn tol() -> Tolerances<f64> {
        Tolerances::default()
    }

    #[test]
    fn haar_examples() {
        let w = haar_random_witness::<f64>(1, Linearity::Linear, 3).unwrap();
        assert!((w.matrix()[(0, 0)].norm() - 1.0).abs() < 1e-15);

        let w = haar_random_witness::<f64>(4, Linearity::Linear, 42).unwrap();
        assert!(w.isometry_defect() <= 1e-12);
        let again = haar_random_witness::<f64>(4, Linearity::Linear, 42).unwrap();
        assert_eq!(w, again);
        let other = haar_random_witness::<f64>(4, Linearity::Linear, 43).unwrap();
        assert_ne!(w, other);
        assert!(haar_random_witness::<f64>(0, Linearity::Linear, 0).is_err());
    }

    #[test]
    fn random_isometry_examples() {
        let w = random_isometry_witness::<f64>(2, 4, Linearity::Antilinear, 8).unwrap();
        assert_eq!((w.codomain_dim(), w.domain_dim()), (4, 2));
        assert!(w.isometry_defect() <= 1e-12);
        assert_eq!(w.tag(), Linearity::Antilinear);
        assert!(matches!(
            random_isometry_witness::<f64>(3, 2, Linearity::Linear, 0),
            Err(Error::Dimension(_))
        ));
    }

    #[test]
    fn shift_examples() {
        let s = shift_witness::<f64>(1);
        assert_eq!(s.matrix().column(0), vec![C::new(0.0, 0.0), C::new(1.0, 0.0)]);
        let s = shift_witness::<f64>(3);
        for k in 0..3 {
            let out = s.apply(&ComplexVector::basis(3, k).unwrap()).unwrap();
            assert_eq!(out, ComplexVector::basis(4, k + 1).unwrap());
        }
        for n in 1..10 {
            assert_eq!(shift_witness::<f64>(n).isometry_defect(), 0.0);
        }
    }

    #[test]
    fn induced_symmetry_examples() {
        let id = symmetry_from_witness(IsometryWitness::<f64>::identity(3, Linearity::Linear), 77);
        let p = canonicalize(
            &ComplexVector::new(vec![C::new(0.2, 0.1), C::new(-0.3, 0.5), C::new(0.0, 0.7)]).unwrap(),
            &tol(),
        )
        .unwrap();
        assert!(gap_distance(&id.query(&p).unwrap(), &p).unwrap() < 1e-15);

        let s = symmetry_from_witness(shift_witness::<f64>(2), 1);
        let img = s.query(&RankOneProjection::basis(2, 0).unwrap()).unwrap();
        assert_eq!(img, RankOneProjection::basis(3, 1).unwrap());

        let f = symmetry_from_witness(random_isometry_witness::<f64>(3, 5, Linearity::Antilinear, 2).unwrap(), 4);
        assert!(validate_symmetry(&f, 1000, 6, &tol()).unwrap() <= 1e-12);
    }

    #[test]
    fn adversary_examples() {
        let adv = partial_conjugation_adversary::<f64>(4, 3).unwrap();
        for k in 0..4 {
            let e = RankOneProjection::basis(4, k).unwrap();
            assert_eq!(adv.query(&e).unwrap(), e);
        }
        let mut v = vec![C::new(0.0, 0.0); 4];
        v[2] = C::new(H, 0.0);
        v[3] = C::new(0.0, H);
        let p = canonicalize(&ComplexVector::new(v.clone()).unwrap(), &tol()).unwrap();
        v[3] = C::new(0.0, -H);
        let want = canonicalize(&ComplexVector::new(v).unwrap(), &tol()).unwrap();
        assert!(gap_distance(&adv.query(&p).unwrap(), &want).unwrap() < 1e-15);

        let (x, y) = contradiction_pair::<f64>(4, 3).unwrap();
        let fx = adv.query(&canonicalize(&x, &tol()).unwrap()).unwrap();
        let fy = adv.query(&canonicalize(&y, &tol()).unwrap()).unwrap();
        assert!((inner_product(&x, &y).unwrap().norm() - 2f64.sqrt() / 4.0).abs() < 1e-15);
        assert!((inner_product(fx.rep(), fy.rep()).unwrap().norm() - 10f64.sqrt() / 4.0).abs() < 1e-15);

        assert!(partial_conjugation_adversary::<f64>(2, 2).is_err());
        assert!(partial_conjugation_adversary::<f64>(4, 1).is_err());
        assert!(partial_conjugation_adversary::<f64>(4, 4).is_err());
    }

    #[test]
    fn spec_validation() {
        let mut s = GeneratorSpec::new(GeneratorKind::RandomIsometry, 3, 0);
        s.m = Some(2);
        assert!(matches!(s.validate(), Err(Error::Dimension(_))));
        let mut s = GeneratorSpec::new(GeneratorKind::HaarUnitary, 3, 0);
        s.m = Some(4);
        assert!(s.validate().is_err());
        let s = GeneratorSpec::new(GeneratorKind::PartialConjugation, 4, 0);
        assert!(s.validate().is_err());
        let s = GeneratorSpec::new(GeneratorKind::Shift, 3, 0);
        assert_eq!(s.codomain_dim(), 4);
        assert!(s.validate().is_ok());
        assert_eq!("haar_antiunitary".parse::<GeneratorKind>().unwrap(), GeneratorKind::HaarAntiunitary);
        assert!("nope".parse::<GeneratorKind>().is_err());
    }

    #[test]
    fn built_instances_are_deterministic() {
        let mut spec = GeneratorSpec::new(GeneratorKind::RandomIsometry, 3, 12);
        spec.m = Some(5);
        let a = spec.build::<f64>().unwrap();
        let b = spec.build::<f64>().unwrap();
        let p = canonicalize(
            &ComplexVector::new(vec![C::new(0.1, 0.2), C::new(0.3, -0.4), C::new(0.5, 0.6)]).unwrap(),
            &tol(),
        )
        .unwrap();
        assert_eq!(a.query(&p).unwrap(), b.query(&p).unwrap());
    }
}
