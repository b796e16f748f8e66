use serde::{Deserialize, Serialize};

use super::{BiPoly, InstanceParams};
use crate::algebra::DivisionRing;
use crate::error::{Error, Result};
use crate::laurent::PrecisionPolicy;
use crate::poly::CentralPoly;

/// Writes `f = g·(y − c) + h` with `h` free of `y`.
///
/// With `f = Σ_j f_j(x)·y^j`, synthetic division from the top gives
/// `h = Σ_j f_j(x)·c^j`.
pub fn bipoly_divide_y<D: DivisionRing>(f: &BiPoly<D>, c: &D) -> Result<(BiPoly<D>, CentralPoly<D>)> {
    let Some(top) = f.y_degree() else {
        return Ok((BiPoly::zero(), CentralPoly::zero()));
    };
    let mut carry = f.y_coeff(top);
    let mut quotient = vec![CentralPoly::zero(); top];
    for j in (1..=top).rev() {
        quotient[j - 1] = carry.clone();
        carry = f.y_coeff(j - 1).add(&carry.scale_right(c)?);
    }
    Ok((BiPoly::from_y_coeffs(&quotient), carry))
}

/// The reduced representative `u·x − v` of `f` modulo `M`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormalFormLinear<D> {
    pub u: D,
    pub v: D,
}

impl<D: DivisionRing> NormalFormLinear<D> {
    pub fn as_poly(&self) -> CentralPoly<D> {
        CentralPoly::linear(&self.u, &self.v)
    }

    pub fn is_zero(&self) -> Result<bool> {
        Ok(self.u.is_zero()? && self.v.is_zero()?)
    }
}

/// `f = g·(y − c) + p·q + (u·x − v)`.
struct Reduction<D: DivisionRing> {
    g: BiPoly<D>,
    p: CentralPoly<D>,
    linear: NormalFormLinear<D>,
}

fn reduce<D: DivisionRing>(f: &BiPoly<D>, params: &InstanceParams<D>) -> Result<Reduction<D>> {
    let (g, h) = bipoly_divide_y(f, &params.c)?;
    let (p, r) = h.divide_right(&params.q, &PrecisionPolicy::default())?;
    let linear = NormalFormLinear { u: r.coeff(1), v: r.coeff(0).neg() };
    Ok(Reduction { g, p, linear })
}

pub fn normal_form<D: DivisionRing>(f: &BiPoly<D>, params: &InstanceParams<D>) -> Result<NormalFormLinear<D>> {
    Ok(reduce(f, params)?.linear)
}

/// How a unit combination was obtained.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum UnitKind<D> {
    /// The remainder is a nonzero constant.
    UnitRemainder,
    /// `w = u⁻¹v` is a zero of `q`; built from `(y−c)(x−w) − (x−w)(y−c) = cw − wc`.
    /// `kappa` is that commutator after clearing the denominator of `w`.
    CommutatorRoot { kappa: D },
    /// `w` is not a zero of `q`; built from a Bezout identity between `q` and `x − w`.
    EuclidCoprime,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(
    tag = "kind",
    rename_all = "snake_case",
    bound(serialize = "D: DivisionRing + Serialize", deserialize = "D: DivisionRing + Deserialize<'de>")
)]
pub enum Witness<D: DivisionRing> {
    /// `f = g1·q + g2·(y − c)`
    Member { g1: BiPoly<D>, g2: BiPoly<D> },
    /// `h0·q + h1·(y − c) + h2·f = unit`, a nonzero constant (`1` whenever it
    /// could be normalized exactly).
    UnitCombo { h0: BiPoly<D>, h1: BiPoly<D>, h2: BiPoly<D>, unit: D, via: UnitKind<D> },
}

impl<D: DivisionRing> Witness<D> {
    pub fn kind_name(&self) -> &'static str {
        match self {
            Witness::Member { .. } => "member",
            Witness::UnitCombo { via: UnitKind::UnitRemainder, .. } => "unit_remainder",
            Witness::UnitCombo { via: UnitKind::CommutatorRoot { .. }, .. } => "commutator_root",
            Witness::UnitCombo { via: UnitKind::EuclidCoprime, .. } => "euclid_coprime",
        }
    }

    /// Re-expands the witness against `f` and the generators of `M`.
    pub fn verify(&self, f: &BiPoly<D>, params: &InstanceParams<D>) -> Result<()> {
        let q = params.q_gen();
        let y = params.y_gen();
        match self {
            Witness::Member { g1, g2 } => {
                let lhs = g1.mul(&q)?.add(&g2.mul(&y)?);
                if !lhs.try_eq(f)? {
                    return Err(Error::WitnessRejected(format!("g1·q + g2·(y − c) = {lhs}, expected {f}")));
                }
            }
            Witness::UnitCombo { h0, h1, h2, unit, via } => {
                if unit.is_zero()? {
                    return Err(Error::WitnessRejected("combination constant is zero".into()));
                }
                if let UnitKind::CommutatorRoot { kappa } = via {
                    if kappa.is_zero()? {
                        return Err(Error::WitnessRejected("commutator constant is zero".into()));
                    }
                }
                let lhs = h0.mul(&q)?.add(&h1.mul(&y)?).add(&h2.mul(f)?);
                if !lhs.try_eq(&BiPoly::constant(unit.clone()))? {
                    return Err(Error::WitnessRejected(format!("h0·q + h1·(y − c) + h2·f = {lhs}, expected {unit}")));
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(
    tag = "verdict",
    content = "witness",
    rename_all = "snake_case",
    bound(serialize = "D: DivisionRing + Serialize", deserialize = "D: DivisionRing + Deserialize<'de>")
)]
pub enum Membership<D: DivisionRing> {
    Member(Witness<D>),
    NotMember(Witness<D>),
}

impl<D: DivisionRing> Membership<D> {
    pub fn is_member(&self) -> bool {
        matches!(self, Membership::Member(_))
    }

    pub fn witness(&self) -> &Witness<D> {
        match self {
            Membership::Member(w) | Membership::NotMember(w) => w,
        }
    }
}

/// Left-multiplies every part of a unit combination by `unit⁻¹` when that
/// inverse is exact.
fn normalize<D: DivisionRing>(
    h0: BiPoly<D>,
    h1: BiPoly<D>,
    h2: BiPoly<D>,
    unit: D,
    via: UnitKind<D>,
) -> Result<Witness<D>> {
    Ok(match unit.exact_inverse() {
        Some(s) => Witness::UnitCombo {
            h0: h0.scale_left(&s)?,
            h1: h1.scale_left(&s)?,
            h2: h2.scale_left(&s)?,
            unit: D::one(),
            via,
        },
        None => Witness::UnitCombo { h0, h1, h2, unit, via },
    })
}

/// Decides `f ∈ M` and returns a verified witness either way.
///
/// From `f = g·(y−c) + p·q + r` with `r = u·x − v`:
/// * `r = 0`: `f = p·q + g·(y−c)`.
/// * `u = 0`: `r = −v` is a nonzero constant.
/// * `u ≠ 0`: with `ū` such that `n = ū·u` is central, `ū·r = n·x − z` where
///   `z = ū·v = n·w`, and `ρ = z² + q₁·n·z + q₀·n² = n²·q(w)`.
///   - `ρ ≠ 0`: `L = n·x + (n·q₁ + z)` satisfies `n²·q − L·ū·r = ρ`.
///   - `ρ = 0`: `(y−c)·ū·r − ū·r·(y−c) = c·z − z·c`, nonzero exactly when
///     `w` does not commute with `c`.
pub fn decide_membership<D: DivisionRing>(f: &BiPoly<D>, params: &InstanceParams<D>) -> Result<Membership<D>> {
    let Reduction { g, p, linear } = reduce(f, params)?;
    let NormalFormLinear { u, v } = linear;
    let p_bi = BiPoly::from_x_poly(&p);

    let outcome = if u.is_zero()? {
        if v.is_zero()? {
            Membership::Member(Witness::Member { g1: p_bi, g2: g })
        } else {
            Membership::NotMember(normalize(p_bi.neg(), g.neg(), BiPoly::one(), v.neg(), UnitKind::UnitRemainder)?)
        }
    } else {
        let u_bar = match u.exact_inverse() {
            Some(inv) => inv,
            None => u.norm_conjugate()?,
        };
        let n = u_bar.mul(&u)?;
        let z = u_bar.mul(&v)?;
        let (q0, q1) = (params.q.coeff(0), params.q.coeff(1));
        let rho = z.mul(&z)?.add(&q1.mul(&n)?.mul(&z)?).add(&q0.mul(&n)?.mul(&n)?);
        let u_bar_bi = BiPoly::constant(u_bar.clone());

        let witness = if !rho.is_zero()? {
            let ell = BiPoly::from_x_poly(&CentralPoly::from_coeffs(vec![n.mul(&q1)?.add(&z), n.clone()]));
            let ell_u = ell.mul(&u_bar_bi)?;
            let h0 = BiPoly::constant(n.mul(&n)?).add(&ell_u.mul(&p_bi)?);
            let h1 = ell_u.mul(&g)?;
            let h2 = ell_u.neg();
            normalize(h0, h1, h2, rho, UnitKind::EuclidCoprime)?
        } else {
            let kappa = params.c.mul(&z)?.sub(&z.mul(&params.c)?);
            if kappa.is_zero()? {
                return Err(Error::ConditionViolation(format!(
                    "the zero u⁻¹v of q commutes with c (u = {u}, v = {v})"
                )));
            }
            let y_u = params.y_gen().mul(&u_bar_bi)?;
            let r_bi = BiPoly::from_x_poly(&CentralPoly::linear(&u, &v));
            let h0 = y_u.mul(&p_bi)?.neg();
            let h1 = y_u.mul(&g)?.add(&u_bar_bi.mul(&r_bi)?).neg();
            let h2 = y_u;
            normalize(h0, h1, h2, kappa.clone(), UnitKind::CommutatorRoot { kappa })?
        };
        Membership::NotMember(witness)
    };
    outcome.witness().verify(f, params)?;
    Ok(outcome)
}

#[cfg(test)]
mod tests {
    use super::super::{gaussian_instance, gf4_instance};
    use super::*;
    use crate::algebra::{GaussianRational, Gf4};
    use crate::laurent::SkewLaurentSeries;

    type S4 = SkewLaurentSeries<Gf4>;
    type Sq = SkewLaurentSeries<GaussianRational>;

    #[test]
    fn divide_by_y() {
        let c = S4::constant(Gf4::W);
        let (g, h) = bipoly_divide_y(&BiPoly::y(), &c).unwrap();
        assert_eq!((g, h), (BiPoly::one(), CentralPoly::constant(c.clone())));
        let (g, h) = bipoly_divide_y(&BiPoly::y_minus(&c), &c).unwrap();
        assert_eq!((g, h), (BiPoly::one(), CentralPoly::zero()));
        let fx = CentralPoly::from_coeffs(vec![S4::t(), S4::one()]);
        let (g, h) = bipoly_divide_y(&BiPoly::from_x_poly(&fx), &c).unwrap();
        assert_eq!((g, h), (BiPoly::zero(), fx));

        // t·x·y² = (t·x·y + t·x·w)(y − w) + t·w²·x, and t·w² = σ(w+1)·t = w·t
        let f = BiPoly::monomial(S4::t(), 1, 2);
        let (g, h) = bipoly_divide_y(&f, &c).unwrap();
        let back = g.mul(&BiPoly::y_minus(&c)).unwrap().add(&BiPoly::from_x_poly(&h));
        assert_eq!(back, f);
        assert_eq!(h, CentralPoly::monomial(S4::monomial(Gf4::W, 1), 1));
    }

    #[test]
    fn normal_forms() {
        let p = gaussian_instance();
        let nf = normal_form(&p.q_gen(), &p).unwrap();
        assert!(nf.is_zero().unwrap());
        let nf = normal_form(&BiPoly::one(), &p).unwrap();
        assert_eq!(nf, NormalFormLinear { u: Sq::zero(), v: Sq::one().neg() });

        let p = gf4_instance();
        let wt = S4::monomial(Gf4::W, 1);
        let f = BiPoly::from_x_poly(&CentralPoly::x_minus(&wt));
        assert_eq!(normal_form(&f, &p).unwrap(), NormalFormLinear { u: S4::one(), v: wt });
    }

    #[test]
    fn commutator_root_case() {
        let p = gf4_instance();
        let wt = S4::monomial(Gf4::W, 1);
        let f = BiPoly::from_x_poly(&CentralPoly::x_minus(&wt));
        let m = decide_membership(&f, &p).unwrap();
        let Membership::NotMember(Witness::UnitCombo { unit, via: UnitKind::CommutatorRoot { kappa }, .. }) = &m else {
            panic!("expected a commutator witness, got {m:?}");
        };
        // c·w − w·c = w²t − w·σ(w)·t = (w+1)t − t = w·t
        assert_eq!(*kappa, wt);
        assert_eq!(*unit, S4::one());
    }

    #[test]
    fn unit_remainder_and_member() {
        let p = gf4_instance();
        let c = BiPoly::constant(p.c.clone());
        let m = decide_membership(&c, &p).unwrap();
        assert_eq!(m.witness().kind_name(), "unit_remainder");

        let y = decide_membership(&BiPoly::y(), &p).unwrap();
        assert_eq!(y.witness().kind_name(), "unit_remainder");

        let zero = decide_membership(&BiPoly::zero(), &p).unwrap();
        assert_eq!(zero, Membership::Member(Witness::Member { g1: BiPoly::zero(), g2: BiPoly::zero() }));

        let g1 = BiPoly::monomial(S4::t_pow(-1), 1, 1);
        let g2 = BiPoly::from_terms([((2, 0), S4::constant(Gf4::W)), ((0, 0), S4::t())]);
        let f = g1.mul(&p.q_gen()).unwrap().add(&g2.mul(&p.y_gen()).unwrap());
        assert!(decide_membership(&f, &p).unwrap().is_member());
    }

    #[test]
    fn coprime_case_without_exact_normalization() {
        let p = gaussian_instance();
        // x − (1 + t): q(1 + t) = 1 + t + σ-twisted terms, not a monomial
        let v = Sq::one().add(&Sq::t());
        let f = BiPoly::from_x_poly(&CentralPoly::x_minus(&v));
        let m = decide_membership(&f, &p).unwrap();
        assert_eq!(m.witness().kind_name(), "euclid_coprime");

        // non-monomial leading coefficient goes through the central norm
        let u = Sq::one().add(&Sq::monomial(GaussianRational::i(), 1));
        let f = BiPoly::from_x_poly(&CentralPoly::linear(&u, &Sq::t_pow(3)));
        let m = decide_membership(&f, &p).unwrap();
        assert!(!m.is_member());
    }

    #[test]
    fn central_root_violates_condition() {
        let mut p = gf4_instance();
        p.c = S4::one();
        let f = BiPoly::from_x_poly(&CentralPoly::x_minus(&S4::t()));
        assert!(matches!(decide_membership(&f, &p), Err(Error::ConditionViolation(_))));
    }

    #[test]
    fn corrupted_witness_is_rejected() {
        let p = gf4_instance();
        let f = BiPoly::from_x_poly(&CentralPoly::x_minus(&S4::t()));
        let m = decide_membership(&f, &p).unwrap();
        let Witness::UnitCombo { h0, h1, mut h2, unit, via } = m.witness().clone() else { panic!() };
        h2 = h2.add(&BiPoly::monomial(S4::t(), 0, 0));
        let bad = Witness::UnitCombo { h0, h1, h2, unit, via };
        assert!(matches!(bad.verify(&f, &p), Err(Error::WitnessRejected(_))));
    }

    #[test]
    fn witness_json_round_trip() {
        let p = gf4_instance();
        let f = BiPoly::from_x_poly(&CentralPoly::x_minus(&S4::t()));
        let m = decide_membership(&f, &p).unwrap();
        let json = serde_json::to_value(&m).unwrap();
        assert_eq!(json["verdict"], "not_member");
        assert_eq!(json["witness"]["kind"], "unit_combo");
        assert_eq!(json["witness"]["via"]["type"], "commutator_root");
        let back: Membership<S4> = serde_json::from_value(json).unwrap();
        back.witness().verify(&f, &p).unwrap();
    }
}
