//! Seeded random vectors and the fixed vector pairs used as test fixtures.

use num_complex::Complex;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::hilbert::{ComplexVector, Tolerances};
use crate::scalar::Real;

pub type SeededRng = ChaCha8Rng;

pub fn rng_from_seed(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// splitmix64 finalizer; decorrelates nearby seeds.
pub fn mix_seed(a: u64, b: u64) -> u64 {
    let mut z = a ^ b.wrapping_add(0x9e37_79b9_7f4a_7c15).rotate_left(17);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

pub fn gaussian_complex<T: Real, R: Rng + ?Sized>(rng: &mut R) -> Complex<T> {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex::new(T::lit(re), T::lit(im))
}

pub fn random_unit_phase<T: Real, R: Rng + ?Sized>(rng: &mut R) -> Complex<T> {
    let theta: f64 = rng.random_range(0.0..std::f64::consts::TAU);
    Complex::new(T::lit(theta.cos()), T::lit(theta.sin()))
}

/// Normalized standard complex Gaussian: uniform on the unit sphere of `C^dim`.
pub fn random_unit_vector<T: Real, R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Result<ComplexVector<T>> {
    if dim == 0 {
        return Err(Error::Dimension("dimension must be positive".into()));
    }
    loop {
        let coords: Vec<Complex<T>> = (0..dim).map(|_| gaussian_complex(rng)).collect();
        let norm = coords.iter().fold(T::zero(), |acc, z| acc + z.norm_sqr()).sqrt();
        if norm > T::epsilon() {
            let inv = norm.recip();
            return ComplexVector::new(coords.into_iter().map(|z| z * inv).collect());
        }
    }
}

/// Random unit vector with every coordinate modulus above `tol.zero`.
pub fn random_in_domain<T: Real, R: Rng + ?Sized>(
    dim: usize,
    rng: &mut R,
    tol: &Tolerances<T>,
) -> Result<ComplexVector<T>> {
    loop {
        let v = random_unit_vector(dim, rng)?;
        if v.coords().iter().all(|z| z.norm() > tol.zero) {
            return Ok(v);
        }
    }
}

/// The pair `x = -1/2 e_{j-1} + 1/2 e_j + 1/sqrt2 e_{j+1}`,
/// `y = i/2 e_{j-1} + 1/2 e_j + i/sqrt2 e_{j+1}` in `C^n` (one-based `j`,
/// `2 <= j <= n - 1`). `|<x, y>| = sqrt2/4`, but conjugating the
/// coordinates after `e_j` turns it into `sqrt10/4`.
pub fn contradiction_pair<T: Real>(n: usize, j: usize) -> Result<(ComplexVector<T>, ComplexVector<T>)> {
    if n < 3 || j < 2 || j + 1 > n {
        return Err(Error::Dimension(format!(
            "contradiction pair needs n >= 3 and 2 <= j <= n-1 (n={n}, j={j})"
        )));
    }
    let half = T::lit(0.5);
    let r = T::FRAC_1_SQRT_2();
    let zero = T::zero();
    let mut x = vec![Complex::zero(); n];
    let mut y = vec![Complex::zero(); n];
    x[j - 2] = Complex::new(-half, zero);
    x[j - 1] = Complex::new(half, zero);
    x[j] = Complex::new(r, zero);
    y[j - 2] = Complex::new(zero, half);
    y[j - 1] = Complex::new(half, zero);
    y[j] = Complex::new(zero, r);
    Ok((ComplexVector::new(x)?, ComplexVector::new(y)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hilbert::inner_product;

    #[test]
    fn contradiction_pair_moduli() {
        let (x, y) = contradiction_pair::<f64>(3, 2).unwrap();
        assert!((x.norm() - 1.0).abs() < 1e-15 && (y.norm() - 1.0).abs() < 1e-15);
        let m = inner_product(&x, &y).unwrap().norm();
        assert!((m - 2f64.sqrt() / 4.0).abs() < 1e-15);
        assert!(contradiction_pair::<f64>(3, 3).is_err());
        assert!(contradiction_pair::<f64>(2, 2).is_err());
    }

    #[test]
    fn unit_vectors_are_deterministic_per_seed() {
        let a: ComplexVector<f64> = random_unit_vector(5, &mut rng_from_seed(9)).unwrap();
        let b: ComplexVector<f64> = random_unit_vector(5, &mut rng_from_seed(9)).unwrap();
        assert_eq!(a, b);
        assert!((a.norm() - 1.0).abs() < 1e-15);
    }
}
