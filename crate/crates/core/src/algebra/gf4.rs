use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

use super::{AutomorphismKind, AutomorphismTag, Field, TwistedField};
use crate::error::{Error, Result};

/// An element of GF(4) = GF(2)[w]/(w² + w + 1).
///
/// Bit 0 is the constant coefficient and bit 1 the coefficient of `w`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Gf4(u8);

impl Gf4 {
    pub const ZERO: Gf4 = Gf4(0);
    pub const ONE: Gf4 = Gf4(1);
    pub const W: Gf4 = Gf4(2);
    pub const W1: Gf4 = Gf4(3);

    pub const ALL: [Gf4; 4] = [Gf4::ZERO, Gf4::ONE, Gf4::W, Gf4::W1];

    pub fn from_bits(bits: u8) -> Gf4 {
        Gf4(bits & 3)
    }

    pub fn bits(self) -> u8 {
        self.0
    }

    /// Carry-less product reduced by w² = w + 1.
    fn mul_bits(a: u8, b: u8) -> u8 {
        let mut acc = 0u8;
        for i in 0..2 {
            if b >> i & 1 == 1 {
                acc ^= a << i;
            }
        }
        if acc & 4 != 0 {
            acc ^= 0b111;
        }
        acc
    }
}

impl Add for Gf4 {
    type Output = Gf4;
    // characteristic 2: addition is XOR of the bit pairs
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn add(self, rhs: Gf4) -> Gf4 {
        Gf4(self.0 ^ rhs.0)
    }
}

impl Sub for Gf4 {
    type Output = Gf4;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn sub(self, rhs: Gf4) -> Gf4 {
        Gf4(self.0 ^ rhs.0)
    }
}

impl Neg for Gf4 {
    type Output = Gf4;
    fn neg(self) -> Gf4 {
        self
    }
}

impl Mul for Gf4 {
    type Output = Gf4;
    fn mul(self, rhs: Gf4) -> Gf4 {
        Gf4(Gf4::mul_bits(self.0, rhs.0))
    }
}

impl Zero for Gf4 {
    fn zero() -> Gf4 {
        Gf4::ZERO
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl One for Gf4 {
    fn one() -> Gf4 {
        Gf4::ONE
    }
}

impl Field for Gf4 {
    fn inv(&self) -> Result<Gf4> {
        // e³ = 1 for e ≠ 0, so e⁻¹ = e².
        if self.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(*self * *self)
    }
}

impl TwistedField for Gf4 {
    fn automorphism() -> AutomorphismTag {
        AutomorphismTag { kind: AutomorphismKind::Frobenius, order: 2 }
    }

    fn sigma(&self) -> Gf4 {
        *self * *self
    }

    fn elements() -> Option<Vec<Gf4>> {
        Some(Gf4::ALL.to_vec())
    }

    fn field_name() -> &'static str {
        "gf4"
    }
}

impl fmt::Display for Gf4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self.0 {
            0 => "0",
            1 => "1",
            2 => "w",
            _ => "w+1",
        })
    }
}

impl fmt::Debug for Gf4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Gf4 {
    type Err = Error;

    fn from_str(s: &str) -> Result<Gf4> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        match compact.as_str() {
            "0" => Ok(Gf4::ZERO),
            "1" => Ok(Gf4::ONE),
            "w" => Ok(Gf4::W),
            "w+1" | "1+w" => Ok(Gf4::W1),
            _ => Err(Error::Parse(format!("not a GF(4) element: {s:?}"))),
        }
    }
}

impl Serialize for Gf4 {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Gf4 {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Gf4, D::Error> {
        let raw = String::deserialize(d)?;
        raw.parse().map_err(de::Error::custom)
    }
}
