//! Seeded generators for random ring elements and polynomials.
//!
//! Every randomized check in the crate draws from these so that a single
//! seed reproduces a whole run.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;

use crate::algebra::{DivisionRing, GaussianRational, Gf4, RationalQuaternion, TwistedField};
use crate::counterexample::BiPoly;
use crate::laurent::{Precision, SkewLaurentSeries};
use crate::poly::CentralPoly;

pub trait RandomElement: DivisionRing {
    fn random<R: Rng + ?Sized>(rng: &mut R) -> Self;

    fn random_nonzero<R: Rng + ?Sized>(rng: &mut R) -> Self {
        loop {
            let x = Self::random(rng);
            if x.is_zero() == Ok(false) {
                return x;
            }
        }
    }
}

/// Base fields that can feed random series coefficients.
pub trait RandomScalar: TwistedField {
    fn random_scalar<R: Rng + ?Sized>(rng: &mut R) -> Self;

    fn random_nonzero_scalar<R: Rng + ?Sized>(rng: &mut R) -> Self {
        loop {
            let x = Self::random_scalar(rng);
            if !x.is_zero() {
                return x;
            }
        }
    }
}

/// A rational `n/d` with `|n| ≤ height` and `1 ≤ d ≤ height`.
pub fn small_rational<R: Rng + ?Sized>(rng: &mut R, height: i64) -> BigRational {
    let n = rng.gen_range(-height..=height);
    let d = rng.gen_range(1..=height.max(1));
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl RandomScalar for Gf4 {
    fn random_scalar<R: Rng + ?Sized>(rng: &mut R) -> Self {
        Gf4::from_bits(rng.gen_range(0..4))
    }
}

impl RandomScalar for GaussianRational {
    fn random_scalar<R: Rng + ?Sized>(rng: &mut R) -> Self {
        GaussianRational::new(small_rational(rng, 3), small_rational(rng, 3))
    }
}

impl RandomElement for Gf4 {
    fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        Gf4::random_scalar(rng)
    }
}

impl RandomElement for GaussianRational {
    fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        GaussianRational::random_scalar(rng)
    }
}

impl RandomElement for RationalQuaternion {
    fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        RationalQuaternion::new(
            small_rational(rng, 3),
            small_rational(rng, 3),
            small_rational(rng, 3),
            small_rational(rng, 3),
        )
    }
}

/// An exact series with valuation in `val_lo..=val_hi` and up to `max_terms` terms.
pub fn random_series<K: RandomScalar, R: Rng + ?Sized>(
    rng: &mut R,
    val_lo: i64,
    val_hi: i64,
    max_terms: usize,
) -> SkewLaurentSeries<K> {
    let start = rng.gen_range(val_lo..=val_hi);
    let len = rng.gen_range(1..=max_terms.max(1));
    let terms = (0..len).map(|i| {
        let c = if i == 0 { K::random_nonzero_scalar(rng) } else { K::random_scalar(rng) };
        (start + i as i64, c)
    });
    SkewLaurentSeries::from_terms(terms.collect::<Vec<_>>(), Precision::Exact)
}

impl<K: RandomScalar> RandomElement for SkewLaurentSeries<K> {
    fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        if rng.gen_bool(0.1) {
            return SkewLaurentSeries::zero();
        }
        random_series(rng, -1, 1, 3)
    }
}

/// A polynomial of degree at most `max_degree` with random coefficients.
pub fn random_poly<D: RandomElement, R: Rng + ?Sized>(rng: &mut R, max_degree: usize) -> CentralPoly<D> {
    let deg = rng.gen_range(0..=max_degree);
    CentralPoly::from_coeffs((0..=deg).map(|_| D::random(rng)).collect())
}

/// A sparse element of `D[x, y]` with `x`- and `y`-degrees at most `max_degree`.
pub fn random_bipoly<D: RandomElement, R: Rng + ?Sized>(rng: &mut R, max_degree: usize, max_terms: usize) -> BiPoly<D> {
    let n = rng.gen_range(0..=max_terms);
    let terms: Vec<_> = (0..n)
        .map(|_| {
            let key = (rng.gen_range(0..=max_degree), rng.gen_range(0..=max_degree));
            (key, D::random_nonzero(rng))
        })
        .collect();
    BiPoly::from_terms(terms)
}
