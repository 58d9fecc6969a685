//! Reconstruction of the isometry inducing a transition-probability
//! preserving map.
//!
//! Pipeline: read the images of the basis projections (the frame `g_j`),
//! build `V e_j = g_j`, pull the map back through `V^*` so every `P[e_j]`
//! is fixed, read the phases `delta_{j+1}`, `epsilon_{j+1}` from the images
//! of the neighbour pairs, decide linear vs antilinear from the first pair,
//! build the diagonal correction `U`, and check `W = V U` against the map on
//! random and fixed samples.

use num_complex::Complex;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::hilbert::{
    canonicalize, dot, gap_distance, inner_product, transition_probability, ComplexVector, RankOneProjection,
    Tolerances,
};
use crate::matrix::CMatrix;
use crate::resolving::{build_resolving_set, pair_vector};
use crate::sampling::{contradiction_pair, mix_seed, random_unit_vector, rng_from_seed};
use crate::scalar::Real;
use crate::witness::{compose_witness, IsometryWitness, Linearity};

/// Black-box map `P_1(C^N) -> P_1(C^M)`, assumed (not trusted) to preserve
/// transition probabilities. Queries may be issued from several threads.
pub trait SymmetryMap<T: Real>: Send + Sync {
    fn domain_dim(&self) -> usize;
    fn codomain_dim(&self) -> usize;
    fn query(&self, p: &RankOneProjection<T>) -> Result<RankOneProjection<T>>;
}

impl<T: Real, S: SymmetryMap<T> + ?Sized> SymmetryMap<T> for &S {
    fn domain_dim(&self) -> usize {
        (**self).domain_dim()
    }
    fn codomain_dim(&self) -> usize {
        (**self).codomain_dim()
    }
    fn query(&self, p: &RankOneProjection<T>) -> Result<RankOneProjection<T>> {
        (**self).query(p)
    }
}

impl<T: Real, S: SymmetryMap<T> + ?Sized> SymmetryMap<T> for Box<S> {
    fn domain_dim(&self) -> usize {
        (**self).domain_dim()
    }
    fn codomain_dim(&self) -> usize {
        (**self).codomain_dim()
    }
    fn query(&self, p: &RankOneProjection<T>) -> Result<RankOneProjection<T>> {
        (**self).query(p)
    }
}

fn query_checked<T: Real, F: SymmetryMap<T> + ?Sized>(
    f: &F,
    p: &RankOneProjection<T>,
) -> Result<RankOneProjection<T>> {
    if p.dim() != f.domain_dim() {
        return Err(Error::dim(f.domain_dim(), p.dim()));
    }
    let image = f.query(p)?;
    if image.dim() != f.codomain_dim() {
        return Err(Error::NotASymmetry(format!(
            "image has dimension {}, map declares codomain dimension {}",
            image.dim(),
            f.codomain_dim()
        )));
    }
    Ok(image)
}

/// Canonical representatives `g_j` of the images `f(P[e_j])`.
#[derive(Debug, Clone, PartialEq)]
pub struct Frame<T> {
    vectors: Vec<ComplexVector<T>>,
}

impl<T: Real> Frame<T> {
    pub fn new(vectors: Vec<ComplexVector<T>>, tol: &Tolerances<T>) -> Result<Self> {
        let m = CMatrix::from_columns(&vectors)?;
        let defect = m.isometry_defect();
        if !(defect <= tol.eq) {
            return Err(Error::NotASymmetry(format!(
                "images of the basis projections are not orthonormal (Gram deviation {:e})",
                defect.as_f64()
            )));
        }
        Ok(Self { vectors })
    }

    pub fn vectors(&self) -> &[ComplexVector<T>] {
        &self.vectors
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn ambient_dim(&self) -> usize {
        self.vectors[0].dim()
    }
}

pub fn extract_frame<T: Real, F: SymmetryMap<T> + ?Sized>(f: &F, tol: &Tolerances<T>) -> Result<Frame<T>> {
    let n = f.domain_dim();
    if n == 0 || f.codomain_dim() < n {
        return Err(Error::Dimension(format!(
            "symmetry needs 1 <= N <= M (N={n}, M={})",
            f.codomain_dim()
        )));
    }
    let vectors = (0..n)
        .map(|j| query_checked(f, &RankOneProjection::basis(n, j)?).map(RankOneProjection::into_rep))
        .collect::<Result<Vec<_>>>()?;
    Frame::new(vectors, tol)
}

/// The linear isometry `V e_j = g_j`.
pub fn build_v<T: Real>(frame: &Frame<T>, tol: &Tolerances<T>) -> Result<IsometryWitness<T>> {
    IsometryWitness::new(CMatrix::from_columns(frame.vectors())?, Linearity::Linear, tol)
}

/// `|1 - sum_j |<w, g_j>|^2|`; zero iff the unit vector `w` lies in the span
/// of the frame.
pub fn parseval_check<T: Real>(w: &ComplexVector<T>, frame: &Frame<T>) -> Result<T> {
    if w.dim() != frame.ambient_dim() {
        return Err(Error::dim(frame.ambient_dim(), w.dim()));
    }
    let captured = frame
        .vectors()
        .iter()
        .fold(T::zero(), |acc, g| acc + dot(w.coords(), g.coords()).norm_sqr());
    Ok((T::one() - captured).abs())
}

/// `P -> P[V^* rep(f(P))]`: the map expressed in frame coordinates. Fixes
/// every `P[e_j]` when `V` was built from `f`'s own frame.
pub struct Pullback<'a, T, F: ?Sized> {
    f: &'a F,
    v: &'a IsometryWitness<T>,
    frame: &'a Frame<T>,
    tol: Tolerances<T>,
}

impl<'a, T: Real, F: SymmetryMap<T> + ?Sized> Pullback<'a, T, F> {
    /// Query that also returns the Parseval residual of the raw image.
    pub fn query_with_parseval(&self, p: &RankOneProjection<T>) -> Result<(RankOneProjection<T>, T)> {
        let image = query_checked(self.f, p)?;
        let residual = parseval_check(image.rep(), self.frame)?;
        if !(residual <= self.tol.eq) {
            return Err(Error::Parseval(residual.as_f64()));
        }
        let coords = self.v.matrix().adjoint_mul_vec(image.rep().coords())?;
        let pulled = canonicalize(&ComplexVector::new(coords)?, &self.tol)?;
        Ok((pulled, residual))
    }
}

impl<'a, T: Real, F: SymmetryMap<T> + ?Sized> SymmetryMap<T> for Pullback<'a, T, F> {
    fn domain_dim(&self) -> usize {
        self.f.domain_dim()
    }

    fn codomain_dim(&self) -> usize {
        self.f.domain_dim()
    }

    fn query(&self, p: &RankOneProjection<T>) -> Result<RankOneProjection<T>> {
        self.query_with_parseval(p).map(|(q, _)| q)
    }
}

pub fn pullback<'a, T: Real, F: SymmetryMap<T> + ?Sized>(
    f: &'a F,
    v: &'a IsometryWitness<T>,
    frame: &'a Frame<T>,
    tol: &Tolerances<T>,
) -> Result<Pullback<'a, T, F>> {
    if v.tag() != Linearity::Linear
        || v.domain_dim() != f.domain_dim()
        || v.codomain_dim() != f.codomain_dim()
        || frame.len() != f.domain_dim()
    {
        return Err(Error::Dimension(format!(
            "pullback needs a linear {}x{} isometry and a matching frame",
            f.codomain_dim(),
            f.domain_dim()
        )));
    }
    Ok(Pullback {
        f,
        v,
        frame,
        tol: *tol,
    })
}

/// Phases read from the images of the neighbour pairs: the image of
/// `P[(e_j - e_{j+1})/sqrt2]` is `P[(e_j - delta_{j+1} e_{j+1})/sqrt2]` and
/// the image of `P[(e_j + i e_{j+1})/sqrt2]` is
/// `P[(e_j - epsilon_{j+1} e_{j+1})/sqrt2]`. Index `0` holds
/// `delta_2`/`epsilon_2`.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseChain<T> {
    pub delta: Vec<Complex<T>>,
    pub epsilon: Vec<Complex<T>>,
}

impl<T: Real> PhaseChain<T> {
    pub fn len(&self) -> usize {
        self.delta.len()
    }

    pub fn is_empty(&self) -> bool {
        self.delta.is_empty()
    }

    /// `| |1 + delta conj(epsilon)| - sqrt2 |` for each pair.
    pub fn relation_residuals(&self) -> Vec<T> {
        self.delta
            .iter()
            .zip(&self.epsilon)
            .map(|(d, e)| ((Complex::new(T::one(), T::zero()) + d * e.conj()).norm() - T::SQRT_2()).abs())
            .collect()
    }

    pub fn max_relation_residual(&self) -> T {
        self.relation_residuals().into_iter().fold(T::zero(), T::max)
    }

    /// `(|epsilon_2 - i delta_2|, |epsilon_2 + i delta_2|)`; `None` when `N = 1`.
    pub fn classification_evidence(&self) -> Option<(T, T)> {
        let (d, e) = (self.delta.first()?, self.epsilon.first()?);
        let i = Complex::new(T::zero(), T::one());
        Some(((e - i * d).norm(), (e + i * d).norm()))
    }
}

/// Reads `c` from an image `P[(e_j - c e_{j+1})/sqrt2]`.
fn read_pair_phase<T: Real>(image: &RankOneProjection<T>, j: usize, tol: &Tolerances<T>) -> Result<Complex<T>> {
    let r = image.rep().coords();
    let stray = r
        .iter()
        .enumerate()
        .filter(|(k, _)| *k != j && *k != j + 1)
        .fold(T::zero(), |acc, (_, z)| acc + z.norm_sqr())
        .sqrt();
    if !(stray <= tol.eq) {
        return Err(Error::NotASymmetry(format!(
            "image of pair {} has weight {:e} outside its two coordinates",
            j + 1,
            stray.as_f64()
        )));
    }
    let lead = r[j].norm();
    if !((lead - T::FRAC_1_SQRT_2()).abs() <= tol.eq) {
        return Err(Error::NotASymmetry(format!(
            "image of pair {} has leading modulus {:e}, expected 1/sqrt2",
            j + 1,
            lead.as_f64()
        )));
    }
    let phase = r[j].conj() / lead;
    let c = -(r[j + 1] * phase) * T::SQRT_2();
    let modulus = c.norm();
    if !((modulus - T::one()).abs() <= tol.eq) {
        return Err(Error::NotASymmetry(format!(
            "pair {} phase has modulus {:e}",
            j + 1,
            modulus.as_f64()
        )));
    }
    Ok(c / modulus)
}

/// `g` must fix every `P[e_j]` (a pullback).
pub fn extract_phase_chain<T: Real, G: SymmetryMap<T> + ?Sized>(g: &G, tol: &Tolerances<T>) -> Result<PhaseChain<T>> {
    let n = g.domain_dim();
    let one = Complex::new(T::one(), T::zero());
    let i = Complex::new(T::zero(), T::one());
    let mut delta = Vec::with_capacity(n.saturating_sub(1));
    let mut epsilon = Vec::with_capacity(n.saturating_sub(1));
    for j in 0..n.saturating_sub(1) {
        let diff = canonicalize(&pair_vector(n, j, -one), tol)?;
        let idiff = canonicalize(&pair_vector(n, j, i), tol)?;
        let d = read_pair_phase(&query_checked(g, &diff)?, j, tol)?;
        let e = read_pair_phase(&query_checked(g, &idiff)?, j, tol)?;
        let residual = ((one + d * e.conj()).norm() - T::SQRT_2()).abs();
        if !(residual <= tol.eq) {
            return Err(Error::PhaseRelation {
                index: j + 1,
                residual: residual.as_f64(),
            });
        }
        delta.push(d);
        epsilon.push(e);
    }
    Ok(PhaseChain { delta, epsilon })
}

/// `epsilon_2 = -i delta_2` for maps induced by unitaries and
/// `epsilon_2 = +i delta_2` for antiunitaries.
pub fn classify_linearity<T: Real>(chain: &PhaseChain<T>, tol: &Tolerances<T>) -> Result<Linearity> {
    let Some((minus, plus)) = chain.classification_evidence() else {
        return Ok(Linearity::Linear);
    };
    if !(minus.min(plus) <= tol.eq) {
        return Err(Error::PhaseRelation {
            index: 1,
            residual: minus.min(plus).as_f64(),
        });
    }
    Ok(if plus <= minus {
        Linearity::Linear
    } else {
        Linearity::Antilinear
    })
}

/// `U e_1 = e_1`, `U e_k = (delta_2 ... delta_k) e_k`.
pub fn build_u<T: Real>(chain: &PhaseChain<T>, tag: Linearity) -> IsometryWitness<T> {
    let mut entries = Vec::with_capacity(chain.len() + 1);
    let mut acc = Complex::new(T::one(), T::zero());
    entries.push(acc);
    for d in &chain.delta {
        acc = acc * d;
        entries.push(acc);
    }
    IsometryWitness::from_parts_unchecked(CMatrix::diagonal(&entries), tag)
}

/// Outcome of the full pipeline, before the pass/fail judgement.
#[derive(Debug, Clone, PartialEq)]
pub struct ReconstructionReport<T> {
    /// Reconstructed `W`, global phase fixed on its first column.
    pub witness: IsometryWitness<T>,
    pub max_gap_residual: T,
    pub mean_gap_residual: T,
    /// Worst Parseval residual over every image queried.
    pub parseval_residual: T,
    /// `(|epsilon_2 - i delta_2|, |epsilon_2 + i delta_2|)`.
    pub classification_evidence: Option<(T, T)>,
    pub phase_relation_residual: T,
    /// Worst `| |<f x, f y>| - |<x, y>| |` over the contradiction pairs.
    pub fixture_residual: T,
    pub sample_count: usize,
    pub chain: PhaseChain<T>,
}

impl<T: Real> ReconstructionReport<T> {
    pub fn is_certified(&self, tol: &Tolerances<T>) -> bool {
        self.max_gap_residual <= tol.verify
    }
}

/// Seeded verification samples followed by the fixed ones: every element of
/// the resolving set and, for `N >= 3`, every contradiction pair.
pub fn verification_samples<T: Real>(n: usize, sample_count: usize, seed: u64) -> Result<Vec<ComplexVector<T>>> {
    let mut rng = rng_from_seed(mix_seed(seed, 0x5a4d_504c_4553));
    let mut samples = (0..sample_count)
        .map(|_| random_unit_vector(n, &mut rng))
        .collect::<Result<Vec<_>>>()?;
    samples.extend(build_resolving_set::<T>(n)?.elements().iter().map(|p| p.rep().clone()));
    for j in 2..n {
        let (x, y) = contradiction_pair(n, j)?;
        samples.push(x);
        samples.push(y);
    }
    Ok(samples)
}

struct SampleCheck<T> {
    gap: T,
    parseval: T,
}

fn check_samples<T: Real, F: SymmetryMap<T> + ?Sized>(
    f: &F,
    w: &IsometryWitness<T>,
    frame: Option<&Frame<T>>,
    samples: &[ComplexVector<T>],
    tol: &Tolerances<T>,
) -> Result<Vec<SampleCheck<T>>> {
    if w.domain_dim() != f.domain_dim() || w.codomain_dim() != f.codomain_dim() {
        return Err(Error::Dimension(format!(
            "witness is {}x{}, map is {}x{}",
            w.codomain_dim(),
            w.domain_dim(),
            f.codomain_dim(),
            f.domain_dim()
        )));
    }
    samples
        .par_iter()
        .map(|v| {
            let p = canonicalize(v, tol)?;
            let image = query_checked(f, &p)?;
            let predicted = canonicalize(&w.apply(v)?, tol)?;
            let parseval = match frame {
                Some(fr) => parseval_check(image.rep(), fr)?,
                None => T::zero(),
            };
            Ok(SampleCheck {
                gap: gap_distance(&image, &predicted)?,
                parseval,
            })
        })
        .collect()
}

/// Max and mean of `gap(f(P[v]), P[W v])` over the samples.
pub fn verify_witness<T: Real, F: SymmetryMap<T> + ?Sized>(
    f: &F,
    w: &IsometryWitness<T>,
    samples: &[ComplexVector<T>],
    tol: &Tolerances<T>,
) -> Result<(T, T)> {
    let checks = check_samples(f, w, None, samples, tol)?;
    Ok(max_and_mean(checks.iter().map(|c| c.gap)))
}

fn max_and_mean<T: Real>(values: impl Iterator<Item = T>) -> (T, T) {
    let (mut max, mut sum, mut count) = (T::zero(), T::zero(), 0usize);
    for v in values {
        max = max.max(v);
        sum = sum + v;
        count += 1;
    }
    let mean = if count == 0 { T::zero() } else { sum / T::lit(count as f64) };
    (max, mean)
}

/// `(|<x, y>|, |<f x, f y>|)` for the contradiction pair at one-based `j`.
pub fn contradiction_moduli<T: Real, F: SymmetryMap<T> + ?Sized>(
    f: &F,
    j: usize,
    tol: &Tolerances<T>,
) -> Result<(T, T)> {
    let (x, y) = contradiction_pair::<T>(f.domain_dim(), j)?;
    let before = inner_product(&x, &y)?.norm();
    let fx = query_checked(f, &canonicalize(&x, tol)?)?;
    let fy = query_checked(f, &canonicalize(&y, tol)?)?;
    let after = inner_product(fx.rep(), fy.rep())?.norm();
    Ok((before, after))
}

fn fixture_residual<T: Real, F: SymmetryMap<T> + ?Sized>(f: &F, tol: &Tolerances<T>) -> Result<T> {
    (2..f.domain_dim())
        .map(|j| contradiction_moduli(f, j, tol).map(|(a, b)| (a - b).abs()))
        .try_fold(T::zero(), |acc, r| r.map(|r| acc.max(r)))
}

/// Runs every reconstruction step and measures the result, without
/// judging it against `tol.verify`.
pub fn run_pipeline<T: Real, F: SymmetryMap<T> + ?Sized>(
    f: &F,
    sample_count: usize,
    seed: u64,
    tol: &Tolerances<T>,
) -> Result<ReconstructionReport<T>> {
    if sample_count == 0 {
        return Err(Error::Dimension("sample_count must be at least 1".into()));
    }
    let n = f.domain_dim();
    let frame = extract_frame(f, tol)?;
    let v = build_v(&frame, tol)?;
    let g = pullback(f, &v, &frame, tol)?;

    // Parseval on the basis images themselves is trivially satisfied; the
    // pair images are the first real containment test.
    let mut parseval = T::zero();
    let one = Complex::new(T::one(), T::zero());
    let i = Complex::new(T::zero(), T::one());
    for j in 0..n.saturating_sub(1) {
        for c in [-one, i] {
            let (_, r) = g.query_with_parseval(&canonicalize(&pair_vector(n, j, c), tol)?)?;
            parseval = parseval.max(r);
        }
    }

    let chain = extract_phase_chain(&g, tol)?;
    let tag = classify_linearity(&chain, tol)?;
    let u = build_u(&chain, tag);
    let w = compose_witness(&v, &u)?.gauge_fixed(tol);

    let samples = verification_samples::<T>(n, sample_count, seed)?;
    let checks = check_samples(f, &w, Some(&frame), &samples, tol)?;
    let (max_gap, mean_gap) = max_and_mean(checks.iter().map(|c| c.gap));
    parseval = checks.iter().fold(parseval, |acc, c| acc.max(c.parseval));

    Ok(ReconstructionReport {
        max_gap_residual: max_gap,
        mean_gap_residual: mean_gap,
        parseval_residual: parseval,
        classification_evidence: chain.classification_evidence(),
        phase_relation_residual: chain.max_relation_residual(),
        fixture_residual: fixture_residual(f, tol)?,
        sample_count,
        chain,
        witness: w,
    })
}

/// Full reconstruction; fails with `Error::Verification` unless the witness
/// reproduces `f` on every sample within `tol.verify`.
pub fn reconstruct<T: Real, F: SymmetryMap<T> + ?Sized>(
    f: &F,
    sample_count: usize,
    seed: u64,
    tol: &Tolerances<T>,
) -> Result<ReconstructionReport<T>> {
    let report = run_pipeline(f, sample_count, seed, tol)?;
    if report.is_certified(tol) {
        Ok(report)
    } else {
        Err(Error::Verification {
            max_gap_residual: report.max_gap_residual.as_f64(),
            fixture_residual: report.fixture_residual.as_f64(),
        })
    }
}

/// Breakdown of a transition-probability check.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ValidationReport<T> {
    /// Worst `|tr P[v]P[w] - tr f(P[v])f(P[w])|` over everything checked.
    pub max_residual: T,
    pub random_residual: T,
    /// Worst residual over the contradiction pairs.
    pub fixture_residual: T,
    /// Worst residual over pairs of basis projections.
    pub basis_residual: T,
    pub pair_count: usize,
}

fn tp_residual<T: Real, F: SymmetryMap<T> + ?Sized>(
    f: &F,
    p: &RankOneProjection<T>,
    q: &RankOneProjection<T>,
) -> Result<T> {
    let before = transition_probability(p, q)?;
    let after = transition_probability(&query_checked(f, p)?, &query_checked(f, q)?)?;
    Ok((before - after).abs())
}

pub fn validate_symmetry_detailed<T: Real, F: SymmetryMap<T> + ?Sized>(
    f: &F,
    pair_count: usize,
    seed: u64,
    tol: &Tolerances<T>,
) -> Result<ValidationReport<T>> {
    let n = f.domain_dim();
    if pair_count == 0 {
        return Err(Error::Dimension("pair_count must be at least 1".into()));
    }
    let random_residual = (0..pair_count)
        .into_par_iter()
        .map(|k| {
            let mut rng = rng_from_seed(mix_seed(seed, k as u64));
            let p = canonicalize(&random_unit_vector(n, &mut rng)?, tol)?;
            let q = canonicalize(&random_unit_vector(n, &mut rng)?, tol)?;
            tp_residual(f, &p, &q)
        })
        .try_reduce(T::zero, |a, b| Ok(a.max(b)))?;

    let mut fixture = T::zero();
    for j in 2..n {
        let (x, y) = contradiction_pair::<T>(n, j)?;
        fixture = fixture.max(tp_residual(f, &canonicalize(&x, tol)?, &canonicalize(&y, tol)?)?);
    }

    let basis_images = (0..n)
        .map(|j| query_checked(f, &RankOneProjection::basis(n, j)?))
        .collect::<Result<Vec<_>>>()?;
    let mut basis = T::zero();
    for a in 0..n {
        for b in a + 1..n {
            basis = basis.max(transition_probability(&basis_images[a], &basis_images[b])?);
        }
    }

    Ok(ValidationReport {
        max_residual: random_residual.max(fixture).max(basis),
        random_residual,
        fixture_residual: fixture,
        basis_residual: basis,
        pair_count,
    })
}

/// Worst transition-probability discrepancy over seeded random pairs and
/// the fixed fixtures.
pub fn validate_symmetry<T: Real, F: SymmetryMap<T> + ?Sized>(
    f: &F,
    pair_count: usize,
    seed: u64,
    tol: &Tolerances<T>,
) -> Result<T> {
    validate_symmetry_detailed(f, pair_count, seed, tol).map(|r| r.max_residual)
}
