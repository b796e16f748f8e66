//! Polynomials in one central variable over a division ring.
//!
//! Coefficients are always written on the left of the powers of `x`, and `x`
//! commutes with everything, so `(a·x^i)(b·x^j) = (ab)·x^(i+j)`.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::algebra::DivisionRing;
use crate::error::{Error, Result};
use crate::laurent::PrecisionPolicy;

/// An element of `D[x]`, lowest degree first.
#[derive(Clone, PartialEq)]
pub struct CentralPoly<D> {
    coeffs: Vec<D>,
}

impl<D: DivisionRing> CentralPoly<D> {
    pub fn zero() -> Self {
        CentralPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(D::one())
    }

    pub fn constant(d: D) -> Self {
        Self::from_coeffs(vec![d])
    }

    /// The variable `x`.
    pub fn x() -> Self {
        Self::monomial(D::one(), 1)
    }

    pub fn monomial(d: D, degree: usize) -> Self {
        let mut coeffs = vec![D::zero(); degree];
        coeffs.push(d);
        Self::from_coeffs(coeffs)
    }

    /// `x − a`
    pub fn x_minus(a: &D) -> Self {
        Self::from_coeffs(vec![a.neg(), D::one()])
    }

    /// `u·x − v`
    pub fn linear(u: &D, v: &D) -> Self {
        Self::from_coeffs(vec![v.neg(), u.clone()])
    }

    pub fn from_coeffs(mut coeffs: Vec<D>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero() == Ok(true)) {
            coeffs.pop();
        }
        CentralPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[D] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<D> {
        self.coeffs
    }

    /// Coefficient of `x^i`, zero past the degree.
    pub fn coeff(&self, i: usize) -> D {
        self.coeffs.get(i).cloned().unwrap_or_else(D::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading_coeff(&self) -> Option<&D> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> Result<bool> {
        match self.leading_coeff() {
            None => Ok(false),
            Some(lc) => lc.try_eq(&D::one()),
        }
    }

    pub fn is_exact(&self) -> bool {
        self.coeffs.iter().all(D::is_exact)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Self::from_coeffs((0..n).map(|i| self.coeff(i).add(&rhs.coeff(i))).collect())
    }

    pub fn neg(&self) -> Self {
        CentralPoly { coeffs: self.coeffs.iter().map(D::neg).collect() }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    /// Coefficient of `x^k` is `Σ_{i+j=k} f_i·g_j`.
    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        if self.is_zero() || rhs.is_zero() {
            return Ok(Self::zero());
        }
        let mut coeffs = vec![D::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j].add(&a.mul(b)?);
            }
        }
        Ok(Self::from_coeffs(coeffs))
    }

    /// `d·self`
    pub fn scale_left(&self, d: &D) -> Result<Self> {
        Ok(Self::from_coeffs(self.coeffs.iter().map(|c| d.mul(c)).collect::<Result<_>>()?))
    }

    /// `self·d`, i.e. every coefficient multiplied on the right.
    pub fn scale_right(&self, d: &D) -> Result<Self> {
        Ok(Self::from_coeffs(self.coeffs.iter().map(|c| c.mul(d)).collect::<Result<_>>()?))
    }

    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![D::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        CentralPoly { coeffs }
    }

    pub fn try_eq(&self, rhs: &Self) -> Result<bool> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        for i in 0..n {
            if !self.coeff(i).try_eq(&rhs.coeff(i))? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Left substitution `f(a) = Σ f_i·a^i`. Not a ring homomorphism in general.
    pub fn evaluate(&self, a: &D) -> Result<D> {
        // Horner from the right: ((f_n·a + f_{n−1})·a + …) keeps coefficients on the left.
        let mut acc = D::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(a)?.add(c);
        }
        Ok(acc)
    }

    /// Division with the divisor on the right: `self = quotient·d + remainder`
    /// with `deg remainder < deg d`.
    ///
    /// Only the leading coefficient of `d` is inverted; it is exact whenever
    /// that coefficient has an exact inverse (always for monic `d`).
    pub fn divide_right(&self, d: &Self, policy: &PrecisionPolicy) -> Result<(Self, Self)> {
        let Some(n) = d.degree() else {
            return Err(Error::DivisionByZero);
        };
        let lc = &d.coeffs[n];
        let lc_inv = match lc.exact_inverse() {
            Some(inv) => inv,
            None => lc.inv(policy)?,
        };
        let mut rem = self.coeffs.clone();
        let mut quot = vec![D::zero(); rem.len().saturating_sub(n)];
        for k in (n..rem.len()).rev() {
            match rem[k].is_zero() {
                Ok(true) => continue,
                Ok(false) => {}
                Err(_) => {
                    return Err(Error::Inconclusive(format!("coefficient of x^{k} vanishes only up to its precision")))
                }
            }
            let c = rem[k].mul(&lc_inv)?;
            for (i, di) in d.coeffs.iter().enumerate().take(n) {
                rem[k - n + i] = rem[k - n + i].sub(&c.mul(di)?);
            }
            rem[k] = D::zero();
            quot[k - n] = c;
        }
        rem.truncate(n);
        Ok((Self::from_coeffs(quot), Self::from_coeffs(rem)))
    }
}

/// Which side of the product formula applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FormulaBranch {
    /// `g(a) = 0`, so `(fg)(a)` must vanish.
    RightFactorVanishes,
    /// `g(a) ≠ 0`, so `(fg)(a) = f(g(a)·a·g(a)⁻¹)·g(a)`.
    Conjugated,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FormulaReport<D> {
    pub branch: FormulaBranch,
    /// `(fg)(a)`
    pub lhs: D,
    /// `f(a^{g(a)})·g(a)`, or zero in the vanishing branch. Truncated when
    /// `g(a)` has no exact inverse; the working precision is raised if the
    /// requested one would leave no trusted terms.
    pub rhs: D,
    /// Decided exactly, clearing the inverse of `g(a)` through its central norm.
    pub holds: bool,
}

/// Evaluates both sides of the product formula `(fg)(a) = f(a^{g(a)})·g(a)`.
///
/// For exact inputs the verdict never depends on truncation: with `ḡ` the
/// norm conjugate of `G = g(a)` and `n = ḡ·G` central,
/// `n^d·f(G·a·G⁻¹) = Σ f_i·n^(d−i)·(G·a·ḡ)^i`, so both sides are compared
/// after multiplying by `n^d`.
pub fn product_formula_check<D: DivisionRing>(
    f: &CentralPoly<D>,
    g: &CentralPoly<D>,
    a: &D,
    policy: &PrecisionPolicy,
) -> Result<FormulaReport<D>> {
    let lhs = f.mul(g)?.evaluate(a)?;
    let big_g = g.evaluate(a)?;
    if big_g.is_zero()? {
        let holds = lhs.is_zero()?;
        return Ok(FormulaReport { branch: FormulaBranch::RightFactorVanishes, lhs, rhs: D::zero(), holds });
    }

    if lhs.is_exact() && big_g.is_exact() && a.is_exact() {
        let g_bar = big_g.norm_conjugate()?;
        let norm = g_bar.mul(&big_g)?;
        let b = big_g.mul(a)?.mul(&g_bar)?;
        let d = f.degree().unwrap_or(0);
        let mut scaled = D::zero();
        let mut b_pow = D::one();
        for (i, fi) in f.coeffs().iter().enumerate() {
            let term = fi.mul(&norm.pow((d - i) as u32)?)?.mul(&b_pow)?;
            scaled = scaled.add(&term);
            b_pow = b_pow.mul(&b)?;
        }
        let rhs_scaled = scaled.mul(&big_g)?;
        let norm_d = norm.pow(d as u32)?;
        let holds = norm_d.mul(&lhs)?.try_eq(&rhs_scaled)?;
        let rhs = inverse_with_growth(&norm_d, policy)?.mul(&rhs_scaled)?;
        return Ok(FormulaReport { branch: FormulaBranch::Conjugated, lhs, rhs, holds });
    }

    let g_inv = match big_g.exact_inverse() {
        Some(inv) => inv,
        None => big_g.inv(policy)?,
    };
    let conj = big_g.mul(a)?.mul(&g_inv)?;
    let rhs = f.evaluate(&conj)?.mul(&big_g)?;
    let holds = lhs.try_eq(&rhs)?;
    Ok(FormulaReport { branch: FormulaBranch::Conjugated, lhs, rhs, holds })
}

/// Inverts a display value, raising the working precision when the
/// valuation of `x` leaves no trusted terms at the requested one.
fn inverse_with_growth<D: DivisionRing>(x: &D, policy: &PrecisionPolicy) -> Result<D> {
    if let Some(inv) = x.exact_inverse() {
        return Ok(inv);
    }
    let mut p = *policy;
    loop {
        match x.inv(&p) {
            Err(Error::PrecisionExhausted(_)) if p.working_precision() < 1024 => {
                p = PrecisionPolicy::new(p.working_precision() * 2)?;
            }
            other => return other,
        }
    }
}

/// Whether `x − v` is a right-hand factor of `f`, decided both by `f(v) = 0`
/// and by the remainder of division by `x − v`.
pub fn is_right_factor<D: DivisionRing>(f: &CentralPoly<D>, v: &D, policy: &PrecisionPolicy) -> Result<bool> {
    let value = f.evaluate(v)?;
    let (_, rem) = f.divide_right(&CentralPoly::x_minus(v), policy)?;
    if !rem.try_eq(&CentralPoly::constant(value.clone()))? {
        return Err(Error::CrossCheckMismatch(format!("remainder {rem} differs from the value {value} at {v}")));
    }
    value.is_zero()
}

/// `p1·q + p2·(x − v) = unit` with `unit` a nonzero constant.
///
/// When `q(v)` has an exact inverse the identity is normalized to `unit = 1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "D: DivisionRing + Serialize", deserialize = "D: DivisionRing + Deserialize<'de>"))]
pub struct BezoutWitness<D: DivisionRing> {
    pub p1: CentralPoly<D>,
    pub p2: CentralPoly<D>,
    pub unit: D,
}

#[derive(Debug, Clone, PartialEq)]
pub enum BezoutOutcome<D: DivisionRing> {
    Coprime(BezoutWitness<D>),
    /// `v` is a zero of `q`, so `x − v` right-divides it.
    NotCoprime,
}

impl<D: DivisionRing> BezoutWitness<D> {
    /// Re-expands the combination and checks it equals the nonzero constant `unit`.
    pub fn verify(&self, q: &CentralPoly<D>, v: &D) -> Result<()> {
        if self.unit.is_zero()? {
            return Err(Error::WitnessRejected("combination constant is zero".into()));
        }
        let lhs = self.p1.mul(q)?.add(&self.p2.mul(&CentralPoly::x_minus(v))?);
        if !lhs.try_eq(&CentralPoly::constant(self.unit.clone()))? {
            return Err(Error::WitnessRejected(format!("p1·q + p2·(x − v) = {lhs}, expected {}", self.unit)));
        }
        Ok(())
    }
}

/// Certifies `D[x]·q + D[x]·(x − v) = D[x]` when `q(v) ≠ 0`.
///
/// Writing `q = s·(x − v) + q(v)`, the identity is `q − s·(x − v) = q(v)`,
/// rescaled on the left by `q(v)⁻¹` when that inverse is exact.
pub fn bezout_with_linear<D: DivisionRing>(q: &CentralPoly<D>, v: &D) -> Result<BezoutOutcome<D>> {
    if q.degree().unwrap_or(0) < 1 || !q.is_monic()? {
        return Err(Error::ShapeMismatch(format!("expected a monic polynomial of degree ≥ 1, got {q}")));
    }
    let (s, rem) = q.divide_right(&CentralPoly::x_minus(v), &PrecisionPolicy::default())?;
    let qv = rem.coeff(0);
    if !qv.try_eq(&q.evaluate(v)?)? {
        return Err(Error::CrossCheckMismatch("remainder differs from q(v)".into()));
    }
    if qv.is_zero()? {
        return Ok(BezoutOutcome::NotCoprime);
    }
    let witness = match qv.exact_inverse() {
        Some(inv) => {
            BezoutWitness { p1: CentralPoly::constant(inv.clone()), p2: s.scale_left(&inv)?.neg(), unit: D::one() }
        }
        None => BezoutWitness { p1: CentralPoly::one(), p2: s.neg(), unit: qv },
    };
    witness.verify(q, v)?;
    Ok(BezoutOutcome::Coprime(witness))
}

impl<D: DivisionRing> fmt::Display for CentralPoly<D> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() == Ok(true) {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})·x")?,
                _ => write!(f, "({c})·x^{i}")?,
            }
        }
        Ok(())
    }
}

impl<D: DivisionRing> fmt::Debug for CentralPoly<D> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Serialize)]
struct PolyWireRef<'a, D> {
    coeffs: &'a [D],
}

#[derive(Deserialize)]
struct PolyWire<D> {
    coeffs: Vec<D>,
}

impl<D: DivisionRing + Serialize> Serialize for CentralPoly<D> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        PolyWireRef { coeffs: &self.coeffs }.serialize(s)
    }
}

impl<'de, D: DivisionRing + Deserialize<'de>> Deserialize<'de> for CentralPoly<D> {
    fn deserialize<De: Deserializer<'de>>(d: De) -> Result<Self, De::Error> {
        let wire = PolyWire::<D>::deserialize(d)?;
        Ok(CentralPoly::from_coeffs(wire.coeffs))
    }
}
