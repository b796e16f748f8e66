use serde::{Deserialize, Serialize};

use super::InstanceParams;
use crate::algebra::{DivisionRing, TwistedField};
use crate::error::{Error, Result};
use crate::laurent::{CommutationReport, Precision, SkewLaurentSeries};

/// Both sides of one identity and whether they agree.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdentityCheck<D> {
    pub lhs: D,
    pub rhs: D,
    pub holds: bool,
}

impl<D: DivisionRing> IdentityCheck<D> {
    fn compare(lhs: D, rhs: D) -> Result<Self> {
        let holds = lhs.try_eq(&rhs)?;
        Ok(IdentityCheck { lhs, rhs, holds })
    }
}

/// Condition (a) `(ab)c = c(ab)` and condition (b) `c(a+b) = (a+b)c`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConditionReport<D> {
    pub a: IdentityCheck<D>,
    pub b: IdentityCheck<D>,
}

impl<D> ConditionReport<D> {
    pub fn both_hold(&self) -> bool {
        self.a.holds && self.b.holds
    }
}

pub fn check_conditions_ab<D: DivisionRing>(params: &InstanceParams<D>) -> Result<ConditionReport<D>> {
    let (a, b, c) = (&params.a, &params.b, &params.c);
    let ab = a.mul(b)?;
    let sum = a.add(b);
    Ok(ConditionReport {
        a: IdentityCheck::compare(ab.mul(c)?, c.mul(&ab)?)?,
        b: IdentityCheck::compare(c.mul(&sum)?, sum.mul(c)?)?,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StructuralVerdict {
    Pass,
    /// `σ(c) = c`: every root of `x² − t²` of the form `f₁·t + …` then
    /// commutes with `c` at the `t` coefficient and the argument gives nothing.
    FailSigmaFixesC,
}

/// Structural proof that no zero of `x² − t²` commutes with a constant `c`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(deserialize = "K: TwistedField"))]
pub struct StructuralReport<K: TwistedField> {
    pub verdict: StructuralVerdict,
    pub c: K,
    pub c_sigma: K,
    pub c_sigma2_equals_c: bool,
    /// Leading coefficients `f₁` for which the `t`-coefficients of `f·c` and
    /// `c·f` were compared mechanically.
    pub checked_leading_coeffs: usize,
    pub trace: Vec<String>,
}

/// Checks condition (c) for `q = x² − t²` and a constant `c ∈ K`.
///
/// Any zero `f` has `f² = t²`, so `2·val(f) = 2` by valuation additivity and
/// `f = f₁·t + …` with `f₁ ≠ 0`. The `t`-coefficient of `f·c` is `f₁·σ(c)`,
/// that of `c·f` is `c·f₁`; these differ exactly when `σ(c) ≠ c`.
pub fn condition_c_structural<K: TwistedField>(
    params: &InstanceParams<SkewLaurentSeries<K>>,
) -> Result<StructuralReport<K>> {
    let t2 = SkewLaurentSeries::<K>::t_pow(2);
    let shape_ok = params.q.degree() == Some(2)
        && params.q.coeff(1).try_eq(&SkewLaurentSeries::zero())?
        && params.q.coeff(0).try_eq(&t2.neg())?;
    if !shape_ok {
        return Err(Error::ShapeMismatch(format!("expected x² − t², got {}", params.q)));
    }
    let c_series = &params.c;
    if !c_series.is_exact() || c_series.terms().any(|(e, _)| e != 0) {
        return Err(Error::ShapeMismatch(format!("c must be a constant of the base field, got {c_series}")));
    }
    let c = c_series.coeff(0);
    let c_sigma = c.sigma();
    let c_sigma2_equals_c = c.apply_sigma(2) == c;

    let mut trace = vec![
        "zero f of x² − t²: f² = t² and val(f²) = 2·val(f), so val(f) = 1 and f₁ ≠ 0".to_string(),
        "t-coefficient of f·c is f₁·σ(c); t-coefficient of c·f is c·f₁".to_string(),
    ];

    if c_sigma == c {
        trace.push(format!("σ(c) = c = {c}: the coefficients agree and no obstruction is found"));
        return Ok(StructuralReport {
            verdict: StructuralVerdict::FailSigmaFixesC,
            c,
            c_sigma,
            c_sigma2_equals_c,
            checked_leading_coeffs: 0,
            trace,
        });
    }
    trace.push(format!("σ(c) = {c_sigma} ≠ {c} = c, hence f₁·(σ(c) − c) ≠ 0 for f₁ ≠ 0"));
    if c_sigma2_equals_c {
        trace.push("σ²(c) = c, so c commutes with t²".to_string());
    }

    // Mechanical confirmation of the t-coefficient claim for sample leading coefficients.
    let samples: Vec<K> = match K::elements() {
        Some(all) => all.into_iter().filter(|e| !e.is_zero()).collect(),
        None => vec![K::one(), c.clone(), c.clone() + K::one(), c.clone() * c.clone() + K::one()]
            .into_iter()
            .filter(|e| !e.is_zero())
            .collect(),
    };
    for f1 in &samples {
        // a truncated series stands for every zero with this leading coefficient
        let f = SkewLaurentSeries::monomial(f1.clone(), 1).truncate(2);
        match f.commutes(c_series)? {
            CommutationReport::DiffersAtExponent { exponent: 1, lhs, rhs }
                if lhs == f1.clone() * c_sigma.clone() && rhs == c.clone() * f1.clone() => {}
            other => {
                return Err(Error::CrossCheckMismatch(format!("f₁ = {f1}: expected a difference at t¹, got {other:?}")))
            }
        }
    }
    trace.push(format!("confirmed f·c ≠ c·f at t¹ for {} leading coefficients", samples.len()));

    Ok(StructuralReport {
        verdict: StructuralVerdict::Pass,
        c,
        c_sigma,
        c_sigma2_equals_c,
        checked_leading_coeffs: samples.len(),
        trace,
    })
}

/// A prefix `f₁·t + … + f_d·t^d` of a possible zero of `x² − t²`, known modulo `t^(d+1)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(deserialize = "K: TwistedField"))]
pub struct RootPrefix<K: TwistedField> {
    pub prefix: SkewLaurentSeries<K>,
    pub commutation: CommutationReport<K>,
}

/// Enumerates every coefficient prefix `(f₁, …, f_depth)` solving
/// `Σ_{i+j=k, i,j≥1} f_i·σ^i(f_j) = [k = 2]` for `2 ≤ k ≤ depth + 1`, level by
/// level over a finite `K`, and compares each prefix with `c`.
pub fn condition_c_enumerative<K: TwistedField>(
    params: &InstanceParams<SkewLaurentSeries<K>>,
    depth: usize,
) -> Result<Vec<RootPrefix<K>>> {
    if depth == 0 {
        return Err(Error::InvalidDepth(depth));
    }
    let field = K::elements().ok_or(Error::FieldNotFinite)?;
    let t2 = SkewLaurentSeries::<K>::t_pow(2);
    if !(params.q.degree() == Some(2)
        && params.q.coeff(1).try_eq(&SkewLaurentSeries::zero())?
        && params.q.coeff(0).try_eq(&t2.neg())?)
    {
        return Err(Error::ShapeMismatch(format!("expected x² − t², got {}", params.q)));
    }

    // prefixes[n] holds f_1..f_n; index 0 of each vector is f_1
    let mut prefixes: Vec<Vec<K>> = vec![Vec::new()];
    for level in 1..=depth {
        let k = level + 1;
        let target = if k == 2 { K::one() } else { K::zero() };
        let mut next = Vec::new();
        for prefix in &prefixes {
            for cand in &field {
                let mut f = prefix.clone();
                f.push(cand.clone());
                let mut sum = K::zero();
                for i in 1..k {
                    let j = k - i;
                    sum = sum + f[i - 1].clone() * f[j - 1].apply_sigma(i as i64);
                }
                if sum == target {
                    next.push(f);
                }
            }
        }
        prefixes = next;
    }

    prefixes
        .into_iter()
        .map(|coeffs| {
            let prefix = SkewLaurentSeries::from_coeffs(1, coeffs, Precision::KnownModulo(depth as i64 + 1));
            let commutation = prefix.commutes(&params.c)?;
            Ok(RootPrefix { prefix, commutation })
        })
        .collect()
}
