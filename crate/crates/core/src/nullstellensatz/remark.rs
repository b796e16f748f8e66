use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::rational::{small, sqrt_exact};
use crate::algebra::RationalQuaternion as Q;
use crate::error::{Error, Result};
use crate::random::{small_rational, RandomElement};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RemarkConditions {
    /// `(ab)c = c(ab)`
    pub a: bool,
    /// `c(a+b) = (a+b)c`
    pub b: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RemarkVerdict {
    /// A zero of `(x−a)(x−b)` commuting with `c` was found and checked.
    FailsC,
    ConditionsNotMet,
    /// The quadratic has no zero in `ℚ(c)`; deciding (c) would need a real closure.
    Undetermined,
}

impl RemarkVerdict {
    pub fn label(self) -> &'static str {
        match self {
            RemarkVerdict::FailsC => "fails_c",
            RemarkVerdict::ConditionsNotMet => "conditions_not_met",
            RemarkVerdict::Undetermined => "undetermined",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[allow(non_snake_case)]
pub struct RemarkReport {
    pub a: Q,
    pub b: Q,
    pub c: Q,
    pub conditions_ab: RemarkConditions,
    pub c_central: bool,
    pub p_in_Qc: bool,
    pub root_in_Qc: Option<Q>,
    /// A zero of `(x−a)(x−b)` with `r·c = c·r`, checked exactly.
    pub commuting_root: Option<Q>,
    pub verdict: RemarkVerdict,
}

/// Elements `x₀ + x₁·ĉ` of `ℚ(ĉ)` with `ĉ² = −n`.
#[derive(Clone, Debug, PartialEq)]
struct Quadratic {
    x0: BigRational,
    x1: BigRational,
}

struct QuadraticField {
    hat: Q,
    n: BigRational,
}

impl QuadraticField {
    fn coords(&self, e: &Q) -> Option<Quadratic> {
        let lambda = (&e.i * &self.hat.i + &e.j * &self.hat.j + &e.k * &self.hat.k) / &self.n;
        let back = self.embed(&Quadratic { x0: e.r.clone(), x1: lambda.clone() });
        (back == *e).then(|| Quadratic { x0: e.r.clone(), x1: lambda })
    }

    fn embed(&self, x: &Quadratic) -> Q {
        Q::scalar(x.x0.clone()) + self.hat.scale(&x.x1)
    }

    fn mul(&self, x: &Quadratic, y: &Quadratic) -> Quadratic {
        Quadratic { x0: &x.x0 * &y.x0 - &self.n * &x.x1 * &y.x1, x1: &x.x0 * &y.x1 + &x.x1 * &y.x0 }
    }

    /// Some `s` with `s² = d`, if one exists in `ℚ(ĉ)`.
    fn sqrt(&self, d: &Quadratic) -> Option<Quadratic> {
        let two = small(2);
        if d.x1.is_zero() {
            if let Some(alpha) = sqrt_exact(&d.x0) {
                return Some(Quadratic { x0: alpha, x1: BigRational::zero() });
            }
            let beta = sqrt_exact(&(-&d.x0 / &self.n))?;
            return Some(Quadratic { x0: BigRational::zero(), x1: beta });
        }
        // α² − nβ² = d₀ and 2αβ = d₁ give α² = (d₀ + √(d₀² + n·d₁²))/2
        let root = sqrt_exact(&(&d.x0 * &d.x0 + &self.n * &d.x1 * &d.x1))?;
        let alpha = sqrt_exact(&((&d.x0 + root) / &two))?;
        if alpha.is_zero() {
            return None;
        }
        let beta = &d.x1 / (two * &alpha);
        Some(Quadratic { x0: alpha, x1: beta })
    }
}

fn vector_part(q: &Q) -> Q {
    Q::new(BigRational::zero(), q.i.clone(), q.j.clone(), q.k.clone())
}

/// `r² − (a+b)·r + ab`
fn p_at(a: &Q, b: &Q, r: &Q) -> Q {
    r.clone() * r.clone() - (a.clone() + b.clone()) * r.clone() + a.clone() * b.clone()
}

/// Tests whether `a, b, c` can meet conditions (a)–(c) over the quaternions.
///
/// Under (a) and (b) with `c` non-central, `a + b` and `ab` lie in the
/// centralizer `ℚ(c)`, so `p = (x−a)(x−b)` has coefficients in a commutative
/// field; a zero of `p` inside `ℚ(c)` then commutes with `c`.
pub fn quaternion_remark_check(a: &Q, b: &Q, c: &Q) -> Result<RemarkReport> {
    let ab = a.clone() * b.clone();
    let sum = a.clone() + b.clone();
    let conditions_ab = RemarkConditions {
        a: ab.clone() * c.clone() == c.clone() * ab.clone(),
        b: c.clone() * sum.clone() == sum.clone() * c.clone(),
    };
    let c_central = c.is_real();
    let mut report = RemarkReport {
        a: a.clone(),
        b: b.clone(),
        c: c.clone(),
        conditions_ab,
        c_central,
        p_in_Qc: false,
        root_in_Qc: None,
        commuting_root: None,
        verdict: RemarkVerdict::ConditionsNotMet,
    };
    if !(conditions_ab.a && conditions_ab.b) {
        return Ok(report);
    }

    if c_central {
        // b is always a zero of (x − a)(x − b), and it commutes with central c
        if !p_at(a, b, b).is_zero() {
            return Err(Error::CrossCheckMismatch(format!("b = {b} is not a zero of (x − a)(x − b)")));
        }
        report.p_in_Qc = sum.is_real() && ab.is_real();
        report.commuting_root = Some(b.clone());
        report.verdict = RemarkVerdict::FailsC;
        return Ok(report);
    }

    let field = QuadraticField { hat: vector_part(c), n: c.vector_norm_sq() };
    let (Some(s), Some(m)) = (field.coords(&sum), field.coords(&ab)) else {
        return Err(Error::CrossCheckMismatch("a + b or ab commutes with c but lies outside ℚ(c)".into()));
    };
    report.p_in_Qc = true;

    let four = Quadratic { x0: small(4), x1: BigRational::zero() };
    let s2 = field.mul(&s, &s);
    let four_m = field.mul(&four, &m);
    let disc = Quadratic { x0: &s2.x0 - &four_m.x0, x1: &s2.x1 - &four_m.x1 };
    let Some(sq) = field.sqrt(&disc) else {
        report.verdict = RemarkVerdict::Undetermined;
        return Ok(report);
    };
    let half = BigRational::one() / small(2);
    let r = field.embed(&Quadratic { x0: (&s.x0 + &sq.x0) * &half, x1: (&s.x1 + &sq.x1) * &half });
    if !p_at(a, b, &r).is_zero() {
        return Err(Error::CrossCheckMismatch(format!("{r} is not a zero of (x − a)(x − b)")));
    }
    if r.clone() * c.clone() != c.clone() * r.clone() {
        return Err(Error::CrossCheckMismatch(format!("{r} ∈ ℚ(c) does not commute with c")));
    }
    report.root_in_Qc = Some(r.clone());
    report.commuting_root = Some(r);
    report.verdict = RemarkVerdict::FailsC;
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepReport {
    pub trials: usize,
    pub seed: u64,
    pub histogram: BTreeMap<String, usize>,
    pub sampler_histogram: BTreeMap<String, usize>,
    /// Trials certified to satisfy (a), (b) and (c) together.
    pub full_certifications: usize,
    /// `fails_c` trials whose commuting root was re-checked.
    pub roots_verified: usize,
    pub errors: Vec<String>,
    pub examples: Vec<RemarkReport>,
}

const SAMPLERS: [&str; 3] = ["uniform", "conjugate_pair", "commuting"];

fn sample_triple<R: Rng>(index: usize, rng: &mut R) -> (Q, Q, Q) {
    let c = Q::random(rng);
    match index % SAMPLERS.len() {
        0 => (Q::random(rng), Q::random(rng), c),
        1 => {
            let b = Q::random(rng);
            (b.conj(), b, c)
        }
        _ => {
            let mut lin = || Q::scalar(small_rational(rng, 3)) + c.scale(&small_rational(rng, 3));
            (lin(), lin(), c.clone())
        }
    }
}

/// Checks `trials` random small-height triples; deterministic in `seed`.
pub fn remark_sweep(trials: usize, seed: u64) -> SweepReport {
    let results: Vec<(usize, Result<RemarkReport>)> = (0..trials)
        .into_par_iter()
        .map(|index| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(index as u64);
            let (a, b, c) = sample_triple(index, &mut rng);
            (index, quaternion_remark_check(&a, &b, &c))
        })
        .collect();

    let mut histogram = BTreeMap::new();
    let mut sampler_histogram = BTreeMap::new();
    let mut roots_verified = 0;
    let mut errors = Vec::new();
    let mut examples = Vec::new();
    let mut shown: BTreeMap<RemarkVerdict, usize> = BTreeMap::new();
    for (index, result) in results {
        *sampler_histogram.entry(SAMPLERS[index % SAMPLERS.len()].to_string()).or_insert(0) += 1;
        match result {
            Ok(report) => {
                *histogram.entry(report.verdict.label().to_string()).or_insert(0) += 1;
                if report.verdict == RemarkVerdict::FailsC {
                    let root = report.commuting_root.as_ref();
                    let ok = root.is_some_and(|r| {
                        p_at(&report.a, &report.b, r).is_zero()
                            && r.clone() * report.c.clone() == report.c.clone() * r.clone()
                    });
                    if ok {
                        roots_verified += 1;
                    } else {
                        errors.push(format!("trial {index}: root of a fails_c verdict did not re-check"));
                    }
                }
                let count = shown.entry(report.verdict).or_insert(0);
                if *count < 3 {
                    *count += 1;
                    examples.push(report);
                }
            }
            Err(e) => errors.push(format!("trial {index}: {e}")),
        }
    }
    SweepReport { trials, seed, histogram, sampler_histogram, full_certifications: 0, roots_verified, errors, examples }
}
