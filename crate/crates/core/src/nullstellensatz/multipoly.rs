use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::algebra::DivisionRing;
use crate::error::{Error, Result};

/// An element of `D[x₁, …, xₙ]` with all variables central.
#[derive(Clone, PartialEq)]
pub struct MultiPoly<D> {
    arity: usize,
    terms: BTreeMap<Vec<u32>, D>,
}

impl<D: DivisionRing> MultiPoly<D> {
    pub fn zero(arity: usize) -> Self {
        MultiPoly { arity, terms: BTreeMap::new() }
    }

    pub fn constant(arity: usize, d: D) -> Self {
        Self::monomial(d, vec![0; arity])
    }

    pub fn monomial(d: D, exponents: Vec<u32>) -> Self {
        let mut out = Self::zero(exponents.len());
        out.add_term(exponents, &d);
        out
    }

    /// The variable `x_index` (0-based).
    pub fn var(arity: usize, index: usize) -> Self {
        let mut e = vec![0; arity];
        e[index] = 1;
        Self::monomial(D::one(), e)
    }

    /// `x_index − a`
    pub fn var_minus(arity: usize, index: usize, a: &D) -> Self {
        Self::var(arity, index).sub(&Self::constant(arity, a.clone()))
    }

    pub fn from_terms<I: IntoIterator<Item = (Vec<u32>, D)>>(arity: usize, terms: I) -> Result<Self> {
        let mut out = Self::zero(arity);
        for (e, d) in terms {
            if e.len() != arity {
                return Err(Error::ShapeMismatch(format!("exponent vector {e:?} for arity {arity}")));
            }
            out.add_term(e, &d);
        }
        Ok(out)
    }

    fn add_term(&mut self, e: Vec<u32>, d: &D) {
        let sum = match self.terms.get(&e) {
            Some(old) => old.add(d),
            None => d.clone(),
        };
        if sum.is_zero() == Ok(true) {
            self.terms.remove(&e);
        } else {
            self.terms.insert(e, sum);
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &D)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (e, d) in &rhs.terms {
            out.add_term(e.clone(), d);
        }
        out
    }

    pub fn neg(&self) -> Self {
        MultiPoly { arity: self.arity, terms: self.terms.iter().map(|(e, d)| (e.clone(), d.neg())).collect() }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        let mut out = Self::zero(self.arity.max(rhs.arity));
        for (e1, a) in &self.terms {
            for (e2, b) in &rhs.terms {
                let e =
                    (0..out.arity).map(|k| e1.get(k).copied().unwrap_or(0) + e2.get(k).copied().unwrap_or(0)).collect();
                out.add_term(e, &a.mul(b)?);
            }
        }
        Ok(out)
    }

    pub fn scale_left(&self, d: &D) -> Result<Self> {
        let mut out = Self::zero(self.arity);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), &d.mul(c)?);
        }
        Ok(out)
    }

    pub fn try_eq(&self, rhs: &Self) -> Result<bool> {
        for d in self.sub(rhs).terms.values() {
            if !d.is_zero()? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

impl<D: DivisionRing> fmt::Display for MultiPoly<D> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (n, (e, c)) in self.terms.iter().rev().enumerate() {
            if n > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({c})")?;
            for (k, &p) in e.iter().enumerate() {
                match p {
                    0 => {}
                    1 => write!(f, "·x{}", k + 1)?,
                    _ => write!(f, "·x{}^{p}", k + 1)?,
                }
            }
        }
        Ok(())
    }
}

impl<D: DivisionRing> fmt::Debug for MultiPoly<D> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Serialize, Deserialize)]
struct TermWire<D> {
    exponents: Vec<u32>,
    coeff: D,
}

#[derive(Serialize, Deserialize)]
struct MultiPolyWire<D> {
    arity: usize,
    terms: Vec<TermWire<D>>,
}

impl<D: DivisionRing + Serialize> Serialize for MultiPoly<D> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let terms = self.terms.iter().map(|(e, c)| TermWire { exponents: e.clone(), coeff: c.clone() }).collect();
        MultiPolyWire { arity: self.arity, terms }.serialize(s)
    }
}

impl<'de, D: DivisionRing + Deserialize<'de>> Deserialize<'de> for MultiPoly<D> {
    fn deserialize<De: Deserializer<'de>>(d: De) -> Result<Self, De::Error> {
        let wire = MultiPolyWire::<D>::deserialize(d)?;
        MultiPoly::from_terms(wire.arity, wire.terms.into_iter().map(|t| (t.exponents, t.coeff)))
            .map_err(serde::de::Error::custom)
    }
}
