use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{decide_membership, BiPoly, InstanceParams, Witness};
use crate::algebra::DivisionRing;
use crate::error::{Error, Result};
use crate::laurent::PrecisionPolicy;
use crate::poly::CentralPoly;
use crate::random::{random_poly, RandomElement};

/// Evidence for `D[x]·q ⊊ D[x]·(x − b) ⊊ D[x]` with `M ∩ D[x] = D[x]·q`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "D: DivisionRing + Serialize", deserialize = "D: DivisionRing + Deserialize<'de>"))]
pub struct ContractionReport<D: DivisionRing> {
    /// `q = (x − a)·(x − b)` re-expanded.
    pub q_factors: bool,
    pub q_member: bool,
    /// `x − b ∉ M`.
    pub x_minus_b_witness: Witness<D>,
    /// `1 ∉ M`.
    pub one_witness: Witness<D>,
    pub samples: usize,
    pub sampled_members: usize,
    /// Every sample agreed: member exactly when `q` right-divides it.
    pub membership_matches_divisibility: bool,
}

pub fn contraction_analysis<D: RandomElement, R: Rng + ?Sized>(
    params: &InstanceParams<D>,
    rng: &mut R,
    samples: usize,
) -> Result<ContractionReport<D>> {
    let policy = PrecisionPolicy::default();
    let product = CentralPoly::x_minus(&params.a).mul(&CentralPoly::x_minus(&params.b))?;
    if !product.try_eq(&params.q)? {
        return Err(Error::CrossCheckMismatch("q differs from (x − a)(x − b)".into()));
    }
    if !decide_membership(&params.q_gen(), params)?.is_member() {
        return Err(Error::CrossCheckMismatch("q is not reported as a member".into()));
    }
    let x_minus_b = decide_membership(&BiPoly::from_x_poly(&CentralPoly::x_minus(&params.b)), params)?;
    if x_minus_b.is_member() {
        return Err(Error::CrossCheckMismatch("x − b is reported as a member".into()));
    }
    let one = decide_membership(&BiPoly::one(), params)?;
    if one.is_member() {
        return Err(Error::CrossCheckMismatch("1 is reported as a member".into()));
    }

    let mut sampled_members = 0;
    for i in 0..samples {
        let h = if i % 2 == 0 { random_poly::<D, _>(rng, 2).mul(&params.q)? } else { random_poly::<D, _>(rng, 3) };
        let member = decide_membership(&BiPoly::from_x_poly(&h), params)?.is_member();
        let (_, rem) = h.divide_right(&params.q, &policy)?;
        if member != rem.is_zero() {
            return Err(Error::CrossCheckMismatch(format!("h = {h}: membership {member} but remainder {rem}")));
        }
        sampled_members += member as usize;
    }

    Ok(ContractionReport {
        q_factors: true,
        q_member: true,
        x_minus_b_witness: x_minus_b.witness().clone(),
        one_witness: one.witness().clone(),
        samples,
        sampled_members,
        membership_matches_divisibility: true,
    })
}
