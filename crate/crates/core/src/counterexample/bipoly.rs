use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::algebra::DivisionRing;
use crate::error::Result;
use crate::poly::CentralPoly;

/// An element of `D[x, y]` with both variables central.
///
/// Keys are `(deg_x, deg_y)`; exact zero coefficients are never stored.
#[derive(Clone, PartialEq)]
pub struct BiPoly<D> {
    terms: BTreeMap<(usize, usize), D>,
}

impl<D: DivisionRing> BiPoly<D> {
    pub fn zero() -> Self {
        BiPoly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(D::one())
    }

    pub fn constant(d: D) -> Self {
        Self::monomial(d, 0, 0)
    }

    pub fn x() -> Self {
        Self::monomial(D::one(), 1, 0)
    }

    pub fn y() -> Self {
        Self::monomial(D::one(), 0, 1)
    }

    pub fn monomial(d: D, deg_x: usize, deg_y: usize) -> Self {
        Self::from_terms([((deg_x, deg_y), d)])
    }

    /// `y − c`
    pub fn y_minus(c: &D) -> Self {
        Self::y().sub(&Self::constant(c.clone()))
    }

    pub fn from_terms<I: IntoIterator<Item = ((usize, usize), D)>>(terms: I) -> Self {
        let mut out = Self::zero();
        for (key, d) in terms {
            out.add_term(key, &d);
        }
        out
    }

    fn add_term(&mut self, key: (usize, usize), d: &D) {
        let sum = match self.terms.get(&key) {
            Some(old) => old.add(d),
            None => d.clone(),
        };
        if sum.is_zero() == Ok(true) {
            self.terms.remove(&key);
        } else {
            self.terms.insert(key, sum);
        }
    }

    /// Embeds a polynomial in `x` alone.
    pub fn from_x_poly(p: &CentralPoly<D>) -> Self {
        Self::from_terms(p.coeffs().iter().enumerate().map(|(i, c)| ((i, 0), c.clone())))
    }

    /// `Σ_j h_j(x)·y^j`
    pub fn from_y_coeffs(hs: &[CentralPoly<D>]) -> Self {
        Self::from_terms(
            hs.iter()
                .enumerate()
                .flat_map(|(j, h)| h.coeffs().iter().enumerate().map(move |(i, c)| ((i, j), c.clone()))),
        )
    }

    /// The coefficient of `y^j`, a polynomial in `x`.
    pub fn y_coeff(&self, j: usize) -> CentralPoly<D> {
        let deg_x = self.terms.keys().filter(|k| k.1 == j).map(|k| k.0).max();
        let Some(deg_x) = deg_x else {
            return CentralPoly::zero();
        };
        let mut coeffs = vec![D::zero(); deg_x + 1];
        for (&(i, jj), c) in &self.terms {
            if jj == j {
                coeffs[i] = c.clone();
            }
        }
        CentralPoly::from_coeffs(coeffs)
    }

    /// Returns `Some(p)` if no term involves `y`.
    pub fn as_x_poly(&self) -> Option<CentralPoly<D>> {
        self.terms.keys().all(|k| k.1 == 0).then(|| self.y_coeff(0))
    }

    pub fn y_degree(&self) -> Option<usize> {
        self.terms.keys().map(|k| k.1).max()
    }

    pub fn x_degree(&self) -> Option<usize> {
        self.terms.keys().map(|k| k.0).max()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_exact(&self) -> bool {
        self.terms.values().all(D::is_exact)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(usize, usize), &D)> {
        self.terms.iter()
    }

    pub fn coeff(&self, deg_x: usize, deg_y: usize) -> D {
        self.terms.get(&(deg_x, deg_y)).cloned().unwrap_or_else(D::zero)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (&key, d) in &rhs.terms {
            out.add_term(key, d);
        }
        out
    }

    pub fn neg(&self) -> Self {
        BiPoly { terms: self.terms.iter().map(|(&k, d)| (k, d.neg())).collect() }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        let mut out = Self::zero();
        for (&(i1, j1), a) in &self.terms {
            for (&(i2, j2), b) in &rhs.terms {
                out.add_term((i1 + i2, j1 + j2), &a.mul(b)?);
            }
        }
        Ok(out)
    }

    /// `d·self`
    pub fn scale_left(&self, d: &D) -> Result<Self> {
        let mut out = Self::zero();
        for (&key, c) in &self.terms {
            out.add_term(key, &d.mul(c)?);
        }
        Ok(out)
    }

    pub fn try_eq(&self, rhs: &Self) -> Result<bool> {
        let diff = self.sub(rhs);
        for d in diff.terms.values() {
            if !d.is_zero()? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

impl<D: DivisionRing> fmt::Display for BiPoly<D> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (n, (&(i, j), c)) in self.terms.iter().rev().enumerate() {
            if n > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({c})")?;
            match i {
                0 => {}
                1 => f.write_str("·x")?,
                _ => write!(f, "·x^{i}")?,
            }
            match j {
                0 => {}
                1 => f.write_str("·y")?,
                _ => write!(f, "·y^{j}")?,
            }
        }
        Ok(())
    }
}

impl<D: DivisionRing> fmt::Debug for BiPoly<D> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Wire form: `{"terms": [{"x": i, "y": j, "coeff": d}, …]}`.
#[derive(Serialize, Deserialize)]
struct TermWire<D> {
    x: usize,
    y: usize,
    coeff: D,
}

#[derive(Serialize, Deserialize)]
struct BiPolyWire<D> {
    terms: Vec<TermWire<D>>,
}

impl<D: DivisionRing + Serialize> Serialize for BiPoly<D> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let terms = self.terms.iter().map(|(&(x, y), c)| TermWire { x, y, coeff: c.clone() }).collect();
        BiPolyWire { terms }.serialize(s)
    }
}

impl<'de, D: DivisionRing + Deserialize<'de>> Deserialize<'de> for BiPoly<D> {
    fn deserialize<De: Deserializer<'de>>(d: De) -> Result<Self, De::Error> {
        let wire = BiPolyWire::<D>::deserialize(d)?;
        Ok(BiPoly::from_terms(wire.terms.into_iter().map(|t| ((t.x, t.y), t.coeff))))
    }
}
