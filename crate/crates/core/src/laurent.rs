//! The division ring `K((t, σ))` of skew Laurent series with `t·u = σ(u)·t`.
//!
//! Elements are stored as a finite coefficient window plus a precision tag.
//! Exact elements are skew Laurent polynomials with no unstated terms;
//! `KnownModulo(p)` elements are only trusted for exponents below `p`.
//! Products of exact elements stay exact; inverses of anything other than
//! a single term are truncated at the policy's working precision.

use std::fmt;

use num_traits::Zero;
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

use crate::algebra::{DivisionRing, Field, TwistedField};
use crate::error::{Error, Result};

/// Default absolute `t`-adic cutoff for inexact operations.
pub const DEFAULT_WORKING_PRECISION: i64 = 16;

/// Smallest working precision that still sees the coefficients used in verification.
pub const MIN_WORKING_PRECISION: i64 = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Precision {
    Exact,
    /// Coefficients are trusted only for exponents `< p`.
    KnownModulo(i64),
}

impl Precision {
    fn bound(self) -> Option<i64> {
        match self {
            Precision::Exact => None,
            Precision::KnownModulo(p) => Some(p),
        }
    }

    fn from_bound(bound: Option<i64>) -> Precision {
        bound.map_or(Precision::Exact, Precision::KnownModulo)
    }

    pub fn min(self, other: Precision) -> Precision {
        match (self, other) {
            (Precision::Exact, p) | (p, Precision::Exact) => p,
            (Precision::KnownModulo(a), Precision::KnownModulo(b)) => Precision::KnownModulo(a.min(b)),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrecisionPolicy {
    working_precision: i64,
}

impl PrecisionPolicy {
    pub fn new(working_precision: i64) -> Result<PrecisionPolicy> {
        if working_precision < MIN_WORKING_PRECISION {
            return Err(Error::PrecisionExhausted(format!(
                "working precision {working_precision} is below the minimum {MIN_WORKING_PRECISION}"
            )));
        }
        Ok(PrecisionPolicy { working_precision })
    }

    pub fn working_precision(&self) -> i64 {
        self.working_precision
    }
}

impl Default for PrecisionPolicy {
    fn default() -> Self {
        PrecisionPolicy { working_precision: DEFAULT_WORKING_PRECISION }
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
enum Terms<K> {
    IsZero,
    /// `coeffs[i]` is the coefficient of `t^(valuation + i)`; first and last entries are nonzero.
    Nonzero {
        valuation: i64,
        coeffs: Vec<K>,
    },
}

/// An element of `K((t, σ))`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SkewLaurentSeries<K> {
    terms: Terms<K>,
    precision: Precision,
}

/// Outcome of comparing `f·g` with `g·f`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CommutationReport<K> {
    Equal,
    /// Lowest exponent where `f·g` and `g·f` differ, with both coefficients.
    DiffersAtExponent {
        exponent: i64,
        lhs: K,
        rhs: K,
    },
}

impl<K: TwistedField> SkewLaurentSeries<K> {
    pub fn zero() -> Self {
        SkewLaurentSeries { terms: Terms::IsZero, precision: Precision::Exact }
    }

    /// `O(t^p)`: a value known to vanish below `p` and nothing more.
    pub fn big_o(p: i64) -> Self {
        SkewLaurentSeries { terms: Terms::IsZero, precision: Precision::KnownModulo(p) }
    }

    pub fn one() -> Self {
        Self::constant(K::one())
    }

    pub fn constant(k: K) -> Self {
        Self::monomial(k, 0)
    }

    pub fn monomial(k: K, exp: i64) -> Self {
        Self::canonical(exp, vec![k], Precision::Exact)
    }

    /// The variable `t`.
    pub fn t() -> Self {
        Self::monomial(K::one(), 1)
    }

    pub fn t_pow(exp: i64) -> Self {
        Self::monomial(K::one(), exp)
    }

    /// Builds an element from `(exponent, coefficient)` pairs; repeated exponents add up.
    pub fn from_terms<I: IntoIterator<Item = (i64, K)>>(terms: I, precision: Precision) -> Self {
        let terms: Vec<(i64, K)> = terms.into_iter().collect();
        let Some(lo) = terms.iter().map(|(e, _)| *e).min() else {
            return SkewLaurentSeries { terms: Terms::IsZero, precision };
        };
        let hi = terms.iter().map(|(e, _)| *e).max().unwrap_or(lo);
        let mut coeffs = vec![K::zero(); (hi - lo + 1) as usize];
        for (e, k) in terms {
            let slot = &mut coeffs[(e - lo) as usize];
            *slot = slot.clone() + k;
        }
        Self::canonical(lo, coeffs, precision)
    }

    /// Builds an element from a coefficient window starting at `valuation`.
    pub fn from_coeffs(valuation: i64, coeffs: Vec<K>, precision: Precision) -> Self {
        Self::canonical(valuation, coeffs, precision)
    }

    fn canonical(start: i64, mut coeffs: Vec<K>, precision: Precision) -> Self {
        if let Some(p) = precision.bound() {
            let keep = (p - start).clamp(0, coeffs.len() as i64) as usize;
            coeffs.truncate(keep);
        }
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        let Some(first) = coeffs.iter().position(|c| !c.is_zero()) else {
            return SkewLaurentSeries { terms: Terms::IsZero, precision };
        };
        coeffs.drain(..first);
        SkewLaurentSeries { terms: Terms::Nonzero { valuation: start + first as i64, coeffs }, precision }
    }

    pub fn precision(&self) -> Precision {
        self.precision
    }

    pub fn is_exact(&self) -> bool {
        self.precision == Precision::Exact
    }

    /// Exponent of the lowest nonzero term; `None` for zero (exact or `O(t^p)`).
    pub fn valuation(&self) -> Option<i64> {
        match &self.terms {
            Terms::IsZero => None,
            Terms::Nonzero { valuation, .. } => Some(*valuation),
        }
    }

    /// True for the exact zero only.
    pub fn is_exact_zero(&self) -> bool {
        matches!(self.terms, Terms::IsZero) && self.is_exact()
    }

    /// Coefficient of `t^exp`; exponents outside the window read as zero.
    pub fn coeff(&self, exp: i64) -> K {
        match &self.terms {
            Terms::Nonzero { valuation, coeffs } if exp >= *valuation => {
                coeffs.get((exp - valuation) as usize).cloned().unwrap_or_else(K::zero)
            }
            _ => K::zero(),
        }
    }

    pub fn leading_coeff(&self) -> Option<&K> {
        match &self.terms {
            Terms::IsZero => None,
            Terms::Nonzero { coeffs, .. } => coeffs.first(),
        }
    }

    /// Nonzero `(exponent, coefficient)` pairs in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &K)> {
        let (valuation, coeffs): (i64, &[K]) = match &self.terms {
            Terms::IsZero => (0, &[]),
            Terms::Nonzero { valuation, coeffs } => (*valuation, coeffs.as_slice()),
        };
        coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(move |(i, c)| (valuation + i as i64, c))
    }

    /// Exponent one past the last stored coefficient.
    fn top(&self) -> Option<i64> {
        match &self.terms {
            Terms::IsZero => None,
            Terms::Nonzero { valuation, coeffs } => Some(valuation + coeffs.len() as i64),
        }
    }

    pub fn is_monomial(&self) -> bool {
        self.terms().count() == 1
    }

    /// Restricts an element to precision `p` (never raises precision).
    pub fn truncate(&self, p: i64) -> Self {
        let precision = self.precision.min(Precision::KnownModulo(p));
        match &self.terms {
            Terms::IsZero => SkewLaurentSeries { terms: Terms::IsZero, precision },
            Terms::Nonzero { valuation, coeffs } => Self::canonical(*valuation, coeffs.clone(), precision),
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let precision = self.precision.min(rhs.precision);
        let (lo, hi) = match (self.valuation(), rhs.valuation()) {
            (None, None) => return SkewLaurentSeries { terms: Terms::IsZero, precision },
            (Some(a), None) => (a, self.top().unwrap_or(a)),
            (None, Some(b)) => (b, rhs.top().unwrap_or(b)),
            (Some(a), Some(b)) => (a.min(b), self.top().unwrap_or(a).max(rhs.top().unwrap_or(b))),
        };
        let coeffs = (lo..hi).map(|e| self.coeff(e) + rhs.coeff(e)).collect();
        Self::canonical(lo, coeffs, precision)
    }

    pub fn neg(&self) -> Self {
        match &self.terms {
            Terms::IsZero => self.clone(),
            Terms::Nonzero { valuation, coeffs } => SkewLaurentSeries {
                terms: Terms::Nonzero { valuation: *valuation, coeffs: coeffs.iter().map(|c| -c.clone()).collect() },
                precision: self.precision,
            },
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    /// Left multiplication by a field constant.
    pub fn scale(&self, k: &K) -> Self {
        match &self.terms {
            Terms::IsZero => self.clone(),
            Terms::Nonzero { valuation, coeffs } => {
                Self::canonical(*valuation, coeffs.iter().map(|c| k.clone() * c.clone()).collect(), self.precision)
            }
        }
    }

    /// Twisted product: the coefficient of `t^k` is `Σ_{i+j=k} f_i·σ^i(g_j)`.
    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        if self.is_exact_zero() || rhs.is_exact_zero() {
            return Ok(Self::zero());
        }
        let (Some(vf), Some(vg)) = (self.valuation(), rhs.valuation()) else {
            return Err(Error::PrecisionExhausted(
                "product with a value known only as O(t^p) has no trusted terms".into(),
            ));
        };
        let bound = match (self.precision.bound(), rhs.precision.bound()) {
            (None, None) => None,
            (None, Some(pg)) => Some(vf + pg),
            (Some(pf), None) => Some(pf + vg),
            (Some(pf), Some(pg)) => Some((vf + pg).min(pf + vg)),
        };
        let precision = Precision::from_bound(bound);
        let top = self.top().unwrap_or(vf) + rhs.top().unwrap_or(vg) - 1;
        let hi = bound.map_or(top, |b| b.min(top));
        let mut coeffs = vec![K::zero(); (hi - vf - vg).max(0) as usize];
        // σ^i depends only on i mod order, so twisted copies of g are cached.
        let order = i64::from(K::automorphism().order);
        let mut twisted: Vec<Option<Vec<(i64, K)>>> = vec![None; order as usize];
        for (i, fi) in self.terms() {
            let slot = &mut twisted[i.rem_euclid(order) as usize];
            let g = slot.get_or_insert_with(|| rhs.terms().map(|(j, gj)| (j, gj.apply_sigma(i))).collect());
            for (j, gj) in g.iter() {
                let e = i + j;
                if e >= hi {
                    break;
                }
                let c = &mut coeffs[(e - vf - vg) as usize];
                *c = c.clone() + fi.clone() * gj.clone();
            }
        }
        let out = Self::canonical(vf + vg, coeffs, precision);
        if out.valuation().is_none() {
            return Err(Error::PrecisionExhausted("product precision does not exceed its valuation".into()));
        }
        Ok(out)
    }

    /// Two-sided inverse, exact for single terms and truncated at the working
    /// precision otherwise.
    pub fn inverse(&self, policy: &PrecisionPolicy) -> Result<Self> {
        let Some(m) = self.valuation() else {
            return if self.is_exact() {
                Err(Error::DivisionByZero)
            } else {
                Err(Error::Inconclusive("cannot invert a value known only as O(t^p)".into()))
            };
        };
        if let Some(exact) = self.exact_inverse() {
            return Ok(exact);
        }
        let mut bound = policy.working_precision();
        if let Some(pf) = self.precision.bound() {
            bound = bound.min(pf - 2 * m);
        }
        if bound <= -m {
            return Err(Error::PrecisionExhausted(format!(
                "inverse has valuation {} but precision would be {bound}",
                -m
            )));
        }
        let lead_inv = Field::inv(&self.coeff(m))?;
        let len = (bound + m) as usize;
        let mut g: Vec<K> = Vec::with_capacity(len);
        g.push(lead_inv.apply_sigma(-m));
        for n in 1..len {
            let mut acc = K::zero();
            for i in 1..=n {
                let fi = self.coeff(m + i as i64);
                if fi.is_zero() {
                    continue;
                }
                acc = acc + fi * g[n - i].apply_sigma(m + i as i64);
            }
            g.push((lead_inv.clone() * -acc).apply_sigma(-m));
        }
        Ok(Self::canonical(-m, g, Precision::KnownModulo(bound)))
    }

    fn exact_inverse(&self) -> Option<Self> {
        if !self.is_exact() || !self.is_monomial() {
            return None;
        }
        let m = self.valuation()?;
        let inv = Field::inv(&self.coeff(m)).ok()?;
        Some(Self::monomial(inv.apply_sigma(-m), -m))
    }

    /// `b·a·b⁻¹`, with `a = self`.
    pub fn conjugate_by(&self, b: &Self, policy: &PrecisionPolicy) -> Result<Self> {
        let b_inv = b.inverse(policy)?;
        b.mul(self)?.mul(&b_inv)
    }

    /// Compares `self·g` and `g·self` up to their joint precision.
    pub fn commutes(&self, g: &Self) -> Result<CommutationReport<K>> {
        let lhs = self.mul(g)?;
        let rhs = g.mul(self)?;
        let diff = lhs.sub(&rhs);
        match diff.valuation() {
            Some(k) => Ok(CommutationReport::DiffersAtExponent { exponent: k, lhs: lhs.coeff(k), rhs: rhs.coeff(k) }),
            None if diff.is_exact() => Ok(CommutationReport::Equal),
            None => Err(Error::Inconclusive(format!(
                "products agree up to t^{} but inputs are inexact",
                diff.precision.bound().unwrap_or_default()
            ))),
        }
    }

    /// Applies `σ` to the coefficient of every even power and negates odd powers.
    ///
    /// For `σ` of order 2, `ū·u` lies in `K^σ((t²))`, which is central.
    fn norm_conjugate_order_two(&self) -> Self {
        let terms = self.terms().map(|(e, c)| if e.rem_euclid(2) == 0 { (e, c.sigma()) } else { (e, -c.clone()) });
        Self::from_terms(terms, Precision::Exact).with_precision(self.precision)
    }

    fn with_precision(mut self, precision: Precision) -> Self {
        self.precision = precision;
        self
    }
}

impl<K: TwistedField> DivisionRing for SkewLaurentSeries<K> {
    fn zero() -> Self {
        SkewLaurentSeries::zero()
    }
    fn one() -> Self {
        SkewLaurentSeries::one()
    }
    fn add(&self, rhs: &Self) -> Self {
        SkewLaurentSeries::add(self, rhs)
    }
    fn neg(&self) -> Self {
        SkewLaurentSeries::neg(self)
    }
    fn sub(&self, rhs: &Self) -> Self {
        SkewLaurentSeries::sub(self, rhs)
    }
    fn mul(&self, rhs: &Self) -> Result<Self> {
        SkewLaurentSeries::mul(self, rhs)
    }
    fn is_zero(&self) -> Result<bool> {
        match (&self.terms, self.precision) {
            (Terms::Nonzero { .. }, _) => Ok(false),
            (Terms::IsZero, Precision::Exact) => Ok(true),
            (Terms::IsZero, Precision::KnownModulo(p)) => {
                Err(Error::Inconclusive(format!("value is O(t^{p}): zero up to its precision")))
            }
        }
    }
    fn is_exact(&self) -> bool {
        SkewLaurentSeries::is_exact(self)
    }
    fn inv(&self, policy: &PrecisionPolicy) -> Result<Self> {
        self.inverse(policy)
    }
    fn exact_inverse(&self) -> Option<Self> {
        SkewLaurentSeries::exact_inverse(self)
    }
    fn norm_conjugate(&self) -> Result<Self> {
        match K::automorphism().order {
            1 => Ok(Self::one()),
            2 => Ok(self.norm_conjugate_order_two()),
            n => Err(Error::Unsupported(format!("norms for automorphisms of order {n}"))),
        }
    }
}

fn write_coeff<K: TwistedField>(f: &mut fmt::Formatter<'_>, c: &K, exp: i64) -> fmt::Result {
    let unit = c.is_one();
    match (exp, unit) {
        (0, _) => write!(f, "{c}"),
        (1, true) => f.write_str("t"),
        (1, false) => write!(f, "{c}·t"),
        (e, true) => write!(f, "t^{e}"),
        (e, false) => write!(f, "{c}·t^{e}"),
    }
}

impl<K: TwistedField> fmt::Display for SkewLaurentSeries<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in self.terms() {
            if !first {
                f.write_str(" + ")?;
            }
            write_coeff(f, c, e)?;
            first = false;
        }
        match self.precision {
            Precision::Exact if first => f.write_str("0"),
            Precision::Exact => Ok(()),
            Precision::KnownModulo(p) if first => write!(f, "O(t^{p})"),
            Precision::KnownModulo(p) => write!(f, " + O(t^{p})"),
        }
    }
}

impl<K: TwistedField> fmt::Debug for SkewLaurentSeries<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Wire form: `{"val": m, "coeffs": [...], "precision": "exact" | p}`.
#[derive(Serialize, Deserialize)]
struct SeriesWire<K> {
    val: i64,
    coeffs: Vec<K>,
    precision: PrecisionWire,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum PrecisionWire {
    Tag(String),
    Bound(i64),
}

impl<K: TwistedField> Serialize for SkewLaurentSeries<K> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let (val, coeffs) = match &self.terms {
            Terms::IsZero => (0, Vec::new()),
            Terms::Nonzero { valuation, coeffs } => (*valuation, coeffs.clone()),
        };
        let precision = match self.precision {
            Precision::Exact => PrecisionWire::Tag("exact".into()),
            Precision::KnownModulo(p) => PrecisionWire::Bound(p),
        };
        SeriesWire { val, coeffs, precision }.serialize(s)
    }
}

impl<'de, K: TwistedField> Deserialize<'de> for SkewLaurentSeries<K> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let wire = SeriesWire::<K>::deserialize(d)?;
        let precision = match wire.precision {
            PrecisionWire::Tag(t) if t == "exact" => Precision::Exact,
            PrecisionWire::Tag(t) => return Err(de::Error::custom(format!("unknown precision tag {t:?}"))),
            PrecisionWire::Bound(p) => Precision::KnownModulo(p),
        };
        Ok(Self::canonical(wire.val, wire.coeffs, precision))
    }
}
