//! Exact base fields carrying an automorphism, rational quaternions, and the
//! division-ring abstraction the polynomial and ideal code is generic over.

mod gaussian;
mod gf4;
mod quaternion;
pub(crate) mod rational;

use std::fmt::{Debug, Display};
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::laurent::PrecisionPolicy;

pub use gaussian::GaussianRational;
pub use gf4::Gf4;
pub use quaternion::RationalQuaternion;

/// Which automorphism a base field carries, and its order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AutomorphismTag {
    pub kind: AutomorphismKind,
    pub order: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AutomorphismKind {
    /// `u ↦ u²`
    Frobenius,
    /// `u ↦ ū`
    Conjugation,
}

/// A commutative field with exact arithmetic.
pub trait Field:
    Clone
    + Eq
    + Debug
    + Display
    + Send
    + Sync
    + 'static
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn inv(&self) -> Result<Self>;
}

/// A field together with an automorphism `σ` of finite order.
pub trait TwistedField: Field + Serialize + for<'de> Deserialize<'de> {
    fn automorphism() -> AutomorphismTag;

    fn sigma(&self) -> Self;

    /// `σ^power(self)`; negative powers are reduced using the order of `σ`.
    fn apply_sigma(&self, power: i64) -> Self {
        let order = i64::from(Self::automorphism().order);
        let mut out = self.clone();
        for _ in 0..power.rem_euclid(order) {
            out = out.sigma();
        }
        out
    }

    /// All elements, when the field is finite.
    fn elements() -> Option<Vec<Self>> {
        None
    }

    /// Short identifier used in reports and instance files.
    fn field_name() -> &'static str;
}

/// An associative ring with 1 in which every nonzero element is invertible.
///
/// Multiplication and zero tests are fallible because truncated series can
/// lose the information needed to decide them.
pub trait DivisionRing: Clone + PartialEq + Debug + Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;

    fn add(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }
    fn mul(&self, rhs: &Self) -> Result<Self>;

    /// Exact zero test. Fails with `Inconclusive` only for values known to
    /// vanish up to their precision but not beyond it.
    fn is_zero(&self) -> Result<bool>;

    fn is_exact(&self) -> bool {
        true
    }

    fn inv(&self, policy: &PrecisionPolicy) -> Result<Self>;

    /// The inverse, when it has an exact finite representation.
    fn exact_inverse(&self) -> Option<Self>;

    /// An element `ū` such that `ū·self` is central (and nonzero when `self` is).
    ///
    /// Lets callers clear denominators: `self⁻¹ = (ū·self)⁻¹·ū` with a central factor.
    fn norm_conjugate(&self) -> Result<Self>;

    fn try_eq(&self, rhs: &Self) -> Result<bool> {
        self.sub(rhs).is_zero()
    }

    fn commutator(&self, rhs: &Self) -> Result<Self> {
        Ok(self.mul(rhs)?.sub(&rhs.mul(self)?))
    }

    fn commutes_with(&self, rhs: &Self) -> Result<bool> {
        self.commutator(rhs)?.is_zero()
    }

    fn pow(&self, exp: u32) -> Result<Self> {
        let mut out = Self::one();
        for _ in 0..exp {
            out = out.mul(self)?;
        }
        Ok(out)
    }
}

/// Commutative fields are division rings whose conjugate for norms is 1.
macro_rules! field_division_ring {
    ($ty:ty) => {
        impl DivisionRing for $ty {
            fn zero() -> Self {
                <Self as Zero>::zero()
            }
            fn one() -> Self {
                <Self as One>::one()
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
                Ok(Zero::is_zero(self))
            }
            fn inv(&self, _policy: &PrecisionPolicy) -> Result<Self> {
                Field::inv(self)
            }
            fn exact_inverse(&self) -> Option<Self> {
                Field::inv(self).ok()
            }
            fn norm_conjugate(&self) -> Result<Self> {
                Ok(<Self as One>::one())
            }
            fn try_eq(&self, rhs: &Self) -> Result<bool> {
                Ok(self == rhs)
            }
        }
    };
}

field_division_ring!(Gf4);
field_division_ring!(GaussianRational);
