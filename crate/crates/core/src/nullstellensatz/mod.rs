//! Evaluation ideals `⟨x₁ − a₁, …, xₙ − aₙ⟩` in `D[x₁, …, xₙ]`: commuting
//! points, properness/maximality certificates, substitution, and the
//! quaternion obstruction check.

mod multipoly;
mod remark;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::algebra::DivisionRing;
use crate::error::{Error, Result};
use crate::laurent::PrecisionPolicy;
use crate::poly::CentralPoly;

pub use multipoly::MultiPoly;
pub use remark::{quaternion_remark_check, remark_sweep, RemarkConditions, RemarkReport, RemarkVerdict, SweepReport};

/// A point `(a₁, …, aₙ) ∈ Dⁿ` with `n ≥ 1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Point<D> {
    coords: Vec<D>,
}

impl<D: DivisionRing> Point<D> {
    pub fn new(coords: Vec<D>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::ShapeMismatch("a point needs at least one coordinate".into()));
        }
        Ok(Point { coords })
    }

    pub fn coords(&self) -> &[D] {
        &self.coords
    }

    pub fn arity(&self) -> usize {
        self.coords.len()
    }

    /// The generator `x_k − a_k`.
    pub fn generator(&self, k: usize) -> MultiPoly<D> {
        MultiPoly::var_minus(self.arity(), k, &self.coords[k])
    }

    /// The first pair `(i, j)`, `i < j`, with `a_i·a_j ≠ a_j·a_i`.
    pub fn noncommuting_pair(&self) -> Result<Option<(usize, usize)>> {
        for i in 0..self.arity() {
            for j in i + 1..self.arity() {
                if !self.coords[i].commutes_with(&self.coords[j])? {
                    return Ok(Some((i, j)));
                }
            }
        }
        Ok(None)
    }
}

pub fn is_commuting_point<D: DivisionRing>(p: &Point<D>) -> Result<bool> {
    Ok(p.noncommuting_pair()?.is_none())
}

/// The quotient by the evaluation ideal is `D` itself, with `x_k` acting by
/// right multiplication by `a_k`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModuleCertificate<D> {
    pub module_dimension: usize,
    pub actions: Vec<D>,
    pub actions_commute: bool,
    pub generators_annihilate: bool,
}

/// `Σ_k coeffs[k]·(x_k − a_k) = unit` with `unit` a nonzero constant.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "D: DivisionRing + Serialize", deserialize = "D: DivisionRing + Deserialize<'de>"))]
pub struct UnitWitness<D: DivisionRing> {
    pub pair: (usize, usize),
    /// `a_j·a_i − a_i·a_j`
    pub commutator: D,
    pub coeffs: Vec<MultiPoly<D>>,
    pub unit: D,
}

impl<D: DivisionRing> UnitWitness<D> {
    pub fn verify(&self, p: &Point<D>) -> Result<()> {
        if self.coeffs.len() != p.arity() {
            return Err(Error::WitnessRejected(format!("{} coefficients for arity {}", self.coeffs.len(), p.arity())));
        }
        if self.unit.is_zero()? {
            return Err(Error::WitnessRejected("combination constant is zero".into()));
        }
        let mut lhs = MultiPoly::zero(p.arity());
        for (k, h) in self.coeffs.iter().enumerate() {
            lhs = lhs.add(&h.mul(&p.generator(k))?);
        }
        if !lhs.try_eq(&MultiPoly::constant(p.arity(), self.unit.clone()))? {
            return Err(Error::WitnessRejected(format!("combination expands to {lhs}, expected {}", self.unit)));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(
    tag = "verdict",
    content = "certificate",
    rename_all = "snake_case",
    bound(serialize = "D: DivisionRing + Serialize", deserialize = "D: DivisionRing + Deserialize<'de>")
)]
pub enum EvaluationCertificate<D: DivisionRing> {
    ProperMaximal(ModuleCertificate<D>),
    Improper(UnitWitness<D>),
}

/// `(x_j − a_j)(x_i − a_i) − (x_i − a_i)(x_j − a_j)` expanded.
pub fn commutator_expansion<D: DivisionRing>(p: &Point<D>, i: usize, j: usize) -> Result<MultiPoly<D>> {
    let (gi, gj) = (p.generator(i), p.generator(j));
    Ok(gj.mul(&gi)?.sub(&gi.mul(&gj)?))
}

pub fn evaluation_ideal_certificate<D: DivisionRing>(p: &Point<D>) -> Result<EvaluationCertificate<D>> {
    let n = p.arity();
    let Some((i, j)) = p.noncommuting_pair()? else {
        let a = p.coords();
        for k in 0..n {
            // 1̄·a_k = a_k·1̄ is the image of x_k − a_k
            if !D::one().mul(&a[k])?.try_eq(&a[k].mul(&D::one())?)? {
                return Err(Error::CertificateFailed(format!("x{} − a{} does not annihilate 1̄", k + 1, k + 1)));
            }
            for l in 0..n {
                if !a[k].mul(&a[l])?.try_eq(&a[l].mul(&a[k])?)? {
                    return Err(Error::CertificateFailed(format!("actions of x{} and x{} differ", k + 1, l + 1)));
                }
            }
        }
        return Ok(EvaluationCertificate::ProperMaximal(ModuleCertificate {
            module_dimension: 1,
            actions: a.to_vec(),
            actions_commute: true,
            generators_annihilate: true,
        }));
    };

    let (ai, aj) = (&p.coords()[i], &p.coords()[j]);
    let kappa = aj.mul(ai)?.sub(&ai.mul(aj)?);
    let expansion = commutator_expansion(p, i, j)?;
    if !expansion.try_eq(&MultiPoly::constant(n, kappa.clone()))? {
        return Err(Error::CrossCheckMismatch(format!("commutator expands to {expansion}, expected {kappa}")));
    }
    let (scale, unit) = match kappa.exact_inverse() {
        Some(inv) => (inv, D::one()),
        None => (D::one(), kappa.clone()),
    };
    let mut coeffs = vec![MultiPoly::zero(n); n];
    coeffs[i] = p.generator(j).scale_left(&scale)?;
    coeffs[j] = p.generator(i).scale_left(&scale)?.neg();
    let witness = UnitWitness { pair: (i, j), commutator: kappa, coeffs, unit };
    witness.verify(p)?;
    Ok(EvaluationCertificate::Improper(witness))
}

/// `Σ c_α·a₁^α₁⋯aₙ^αₙ`, cross-checked against the reversed product order.
pub fn substitute_at_commuting_point<D: DivisionRing>(f: &MultiPoly<D>, p: &Point<D>) -> Result<D> {
    if f.arity() != p.arity() {
        return Err(Error::ShapeMismatch(format!("arity {} against a point of arity {}", f.arity(), p.arity())));
    }
    if !is_commuting_point(p)? {
        return Err(Error::NonCommutingPoint);
    }
    let mut total = D::zero();
    for (e, c) in f.terms() {
        let mut forward = D::one();
        let mut backward = D::one();
        for k in 0..p.arity() {
            forward = forward.mul(&p.coords()[k].pow(e[k])?)?;
            let r = p.arity() - 1 - k;
            backward = backward.mul(&p.coords()[r].pow(e[r])?)?;
        }
        if !forward.try_eq(&backward)? {
            return Err(Error::CrossCheckMismatch(format!("monomial {e:?} depends on the product order")));
        }
        total = total.add(&c.mul(&forward)?);
    }
    Ok(total)
}

/// The remainder of `f` modulo the evaluation ideal, obtained by dividing on
/// the right by `xₙ − aₙ`, then `xₙ₋₁ − aₙ₋₁`, and so on.
///
/// Each step groups terms by their exponents in the remaining variables and
/// divides the resulting univariate polynomial; the other variables are
/// central, so the per-group remainders assemble into the full remainder.
pub fn reduce_modulo_point<D: DivisionRing>(f: &MultiPoly<D>, p: &Point<D>) -> Result<D> {
    if f.arity() != p.arity() {
        return Err(Error::ShapeMismatch(format!("arity {} against a point of arity {}", f.arity(), p.arity())));
    }
    let policy = PrecisionPolicy::default();
    let n = p.arity();
    let mut current: BTreeMap<Vec<u32>, D> = f.terms().map(|(e, c)| (e.clone(), c.clone())).collect();
    for k in (0..n).rev() {
        let mut groups: BTreeMap<Vec<u32>, Vec<D>> = BTreeMap::new();
        for (e, c) in &current {
            let mut rest = e.clone();
            let deg = std::mem::replace(&mut rest[k], 0) as usize;
            let slot = groups.entry(rest).or_default();
            if slot.len() <= deg {
                slot.resize(deg + 1, D::zero());
            }
            slot[deg] = slot[deg].add(c);
        }
        let divisor = CentralPoly::x_minus(&p.coords()[k]);
        let mut next = BTreeMap::new();
        for (rest, coeffs) in groups {
            let (_, r) = CentralPoly::from_coeffs(coeffs).divide_right(&divisor, &policy)?;
            let r0 = r.coeff(0);
            if !r0.is_zero()? {
                next.insert(rest, r0);
            }
        }
        current = next;
    }
    Ok(current.remove(&vec![0; n]).unwrap_or_else(D::zero))
}
