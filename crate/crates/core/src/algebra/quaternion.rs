use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

use super::{rational, DivisionRing};
use crate::error::{Error, Result};
use crate::laurent::PrecisionPolicy;

/// `r + i·i + j·j + k·k` with rational components, `i² = j² = −1`, `ij = −ji = k`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalQuaternion {
    pub r: BigRational,
    pub i: BigRational,
    pub j: BigRational,
    pub k: BigRational,
}

impl RationalQuaternion {
    pub fn new(r: BigRational, i: BigRational, j: BigRational, k: BigRational) -> Self {
        RationalQuaternion { r, i, j, k }
    }

    pub fn from_ints(r: i64, i: i64, j: i64, k: i64) -> Self {
        RationalQuaternion::new(rational::small(r), rational::small(i), rational::small(j), rational::small(k))
    }

    pub fn scalar(r: BigRational) -> Self {
        RationalQuaternion::new(r, BigRational::zero(), BigRational::zero(), BigRational::zero())
    }

    pub fn unit_i() -> Self {
        RationalQuaternion::from_ints(0, 1, 0, 0)
    }

    pub fn unit_j() -> Self {
        RationalQuaternion::from_ints(0, 0, 1, 0)
    }

    pub fn unit_k() -> Self {
        RationalQuaternion::from_ints(0, 0, 0, 1)
    }

    pub fn basis() -> [RationalQuaternion; 4] {
        [RationalQuaternion::from_ints(1, 0, 0, 0), Self::unit_i(), Self::unit_j(), Self::unit_k()]
    }

    pub fn conj(&self) -> Self {
        RationalQuaternion::new(self.r.clone(), -self.i.clone(), -self.j.clone(), -self.k.clone())
    }

    /// `r² + i² + j² + k²`
    pub fn norm_sq(&self) -> BigRational {
        &self.r * &self.r + self.vector_norm_sq()
    }

    pub fn vector_norm_sq(&self) -> BigRational {
        &self.i * &self.i + &self.j * &self.j + &self.k * &self.k
    }

    pub fn is_zero(&self) -> bool {
        self.r.is_zero() && self.is_real()
    }

    /// True when the element lies in the center ℚ·1.
    pub fn is_real(&self) -> bool {
        self.i.is_zero() && self.j.is_zero() && self.k.is_zero()
    }

    pub fn scale(&self, s: &BigRational) -> Self {
        RationalQuaternion::new(&self.r * s, &self.i * s, &self.j * s, &self.k * s)
    }

    pub fn try_inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.norm_sq();
        Ok(self.conj().scale(&(BigRational::one() / n)))
    }

    /// `pq − qp`
    pub fn commutator_with(&self, q: &Self) -> Self {
        self.clone() * q.clone() - q.clone() * self.clone()
    }

    pub fn parse(parts: [&str; 4]) -> Result<Self> {
        Ok(RationalQuaternion::new(
            rational::parse(parts[0])?,
            rational::parse(parts[1])?,
            rational::parse(parts[2])?,
            rational::parse(parts[3])?,
        ))
    }
}

impl Add for RationalQuaternion {
    type Output = Self;
    fn add(self, q: Self) -> Self {
        RationalQuaternion::new(self.r + q.r, self.i + q.i, self.j + q.j, self.k + q.k)
    }
}

impl Sub for RationalQuaternion {
    type Output = Self;
    fn sub(self, q: Self) -> Self {
        RationalQuaternion::new(self.r - q.r, self.i - q.i, self.j - q.j, self.k - q.k)
    }
}

impl Neg for RationalQuaternion {
    type Output = Self;
    fn neg(self) -> Self {
        RationalQuaternion::new(-self.r, -self.i, -self.j, -self.k)
    }
}

impl Mul for RationalQuaternion {
    type Output = Self;
    fn mul(self, q: Self) -> Self {
        let p = self;
        RationalQuaternion::new(
            &p.r * &q.r - &p.i * &q.i - &p.j * &q.j - &p.k * &q.k,
            &p.r * &q.i + &p.i * &q.r + &p.j * &q.k - &p.k * &q.j,
            &p.r * &q.j - &p.i * &q.k + &p.j * &q.r + &p.k * &q.i,
            &p.r * &q.k + &p.i * &q.j - &p.j * &q.i + &p.k * &q.r,
        )
    }
}

impl DivisionRing for RationalQuaternion {
    fn zero() -> Self {
        RationalQuaternion::from_ints(0, 0, 0, 0)
    }
    fn one() -> Self {
        RationalQuaternion::from_ints(1, 0, 0, 0)
    }
    fn add(&self, rhs: &Self) -> Self {
        self.clone() + rhs.clone()
    }
    fn neg(&self) -> Self {
        -self.clone()
    }
    fn sub(&self, rhs: &Self) -> Self {
        self.clone() - rhs.clone()
    }
    fn mul(&self, rhs: &Self) -> Result<Self> {
        Ok(self.clone() * rhs.clone())
    }
    fn is_zero(&self) -> Result<bool> {
        Ok(RationalQuaternion::is_zero(self))
    }
    fn inv(&self, _policy: &PrecisionPolicy) -> Result<Self> {
        self.try_inverse()
    }
    fn exact_inverse(&self) -> Option<Self> {
        self.try_inverse().ok()
    }
    fn norm_conjugate(&self) -> Result<Self> {
        Ok(self.conj())
    }
    fn try_eq(&self, rhs: &Self) -> Result<bool> {
        Ok(self == rhs)
    }
}

impl fmt::Display for RationalQuaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (c, unit) in [(&self.r, ""), (&self.i, "i"), (&self.j, "j"), (&self.k, "k")] {
            if c.is_zero() {
                continue;
            }
            if wrote {
                f.write_str(" + ")?;
            }
            write!(f, "{c}{unit}")?;
            wrote = true;
        }
        if !wrote {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for RationalQuaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Quat[{}, {}, {}, {}]", self.r, self.i, self.j, self.k)
    }
}

impl Serialize for RationalQuaternion {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        [&self.r, &self.i, &self.j, &self.k].map(rational::format).serialize(s)
    }
}

impl<'de> Deserialize<'de> for RationalQuaternion {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let parts = <[String; 4]>::deserialize(d)?;
        RationalQuaternion::parse([&parts[0], &parts[1], &parts[2], &parts[3]]).map_err(de::Error::custom)
    }
}
