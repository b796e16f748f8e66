use rand::Rng;
use serde::{Deserialize, Serialize};

use super::InstanceParams;
use crate::algebra::DivisionRing;
use crate::error::{Error, Result};
use crate::random::RandomElement;

type Matrix<D> = [[D; 2]; 2];
type Row<D> = [D; 2];

/// A nonzero left `D[x, y]`-module `V = D·1̄ ⊕ D·x̄` killed on `1̄` by both
/// generators of `M`. Vectors are rows; `x` and `y` act by `v ↦ v·A`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PropernessCertificate<D> {
    pub check_qc_commute: bool,
    pub module_dimension: usize,
    /// Action of `x`: `[[0, 1], [−q₀, −q₁]]`.
    pub action_x: Matrix<D>,
    /// Action of `y`: right multiplication by `c`.
    pub action_y: Matrix<D>,
    pub actions_commute: bool,
    pub scalar_samples: usize,
    pub q_annihilates_generator: bool,
    pub y_minus_c_annihilates_generator: bool,
}

fn row_times<D: DivisionRing>(v: &Row<D>, a: &Matrix<D>) -> Result<Row<D>> {
    Ok([v[0].mul(&a[0][0])?.add(&v[1].mul(&a[1][0])?), v[0].mul(&a[0][1])?.add(&v[1].mul(&a[1][1])?)])
}

fn mat_mul<D: DivisionRing>(a: &Matrix<D>, b: &Matrix<D>) -> Result<Matrix<D>> {
    Ok([row_times(&a[0], b)?, row_times(&a[1], b)?])
}

fn scale_row<D: DivisionRing>(d: &D, v: &Row<D>) -> Result<Row<D>> {
    Ok([d.mul(&v[0])?, d.mul(&v[1])?])
}

fn rows_eq<D: DivisionRing>(a: &Row<D>, b: &Row<D>) -> Result<bool> {
    Ok(a[0].try_eq(&b[0])? && a[1].try_eq(&b[1])?)
}

fn fail(msg: impl Into<String>) -> Error {
    Error::CertificateFailed(msg.into())
}

pub fn properness_certificate<D: RandomElement, R: Rng + ?Sized>(
    params: &InstanceParams<D>,
    rng: &mut R,
    samples: usize,
) -> Result<PropernessCertificate<D>> {
    let c = &params.c;
    let qc = params.q.scale_right(c)?;
    let cq = params.q.scale_left(c)?;
    if !qc.try_eq(&cq)? {
        return Err(fail(format!("q·c = {qc} differs from c·q = {cq}")));
    }

    let (q0, q1) = (params.q.coeff(0), params.q.coeff(1));
    let action_x: Matrix<D> = [[D::zero(), D::one()], [q0.neg(), q1.neg()]];
    let action_y: Matrix<D> = [[c.clone(), D::zero()], [D::zero(), c.clone()]];

    let xy = mat_mul(&action_x, &action_y)?;
    let yx = mat_mul(&action_y, &action_x)?;
    if !(rows_eq(&xy[0], &yx[0])? && rows_eq(&xy[1], &yx[1])?) {
        return Err(fail("the actions of x and y do not commute"));
    }

    for i in 0..samples {
        let d = D::random(rng);
        let v = [D::random(rng), D::random(rng)];
        for (name, a) in [("x", &action_x), ("y", &action_y)] {
            let lhs = row_times(&scale_row(&d, &v)?, a)?;
            let rhs = scale_row(&d, &row_times(&v, a)?)?;
            if !rows_eq(&lhs, &rhs)? {
                return Err(fail(format!("{name}-action is not D-linear on sample {i}")));
            }
        }
    }

    let e1: Row<D> = [D::one(), D::zero()];
    let x1 = row_times(&e1, &action_x)?;
    let x2 = row_times(&x1, &action_x)?;
    let q_e1 = [x2[0].add(&q1.mul(&x1[0])?).add(&q0.mul(&e1[0])?), x2[1].add(&q1.mul(&x1[1])?).add(&q0.mul(&e1[1])?)];
    if !rows_eq(&q_e1, &[D::zero(), D::zero()])? {
        return Err(fail("q does not annihilate 1̄"));
    }
    let y_e1 = row_times(&e1, &action_y)?;
    let c_e1 = scale_row(c, &e1)?;
    if !rows_eq(&y_e1, &c_e1)? {
        return Err(fail("y − c does not annihilate 1̄"));
    }

    Ok(PropernessCertificate {
        check_qc_commute: true,
        module_dimension: 2,
        action_x,
        action_y,
        actions_commute: true,
        scalar_samples: samples,
        q_annihilates_generator: true,
        y_minus_c_annihilates_generator: true,
    })
}
