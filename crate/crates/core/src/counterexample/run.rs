use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{
    check_conditions_ab, condition_c_enumerative, condition_c_structural, contraction_analysis, decide_membership,
    normal_form, properness_certificate, BiPoly, ConditionReport, ContractionReport, InstanceParams, NormalFormLinear,
    PropernessCertificate, RootPrefix, StructuralReport, StructuralVerdict,
};
use crate::algebra::TwistedField;
use crate::error::Result;
use crate::laurent::{CommutationReport, PrecisionPolicy, SkewLaurentSeries};
use crate::poly::{is_right_factor, CentralPoly};
use crate::random::{random_bipoly, RandomElement, RandomScalar};

use super::Witness;

/// Notes on two readings of the case analysis that the implementation fixes.
pub const ANNOTATIONS: [&str; 2] = [
    "linear remainder u·x − v with u ≠ 0 is normalized by left multiplication with u⁻¹ to x − u⁻¹·v",
    "in the root case the tested non-commutation is v·c ≠ c·v for the zero v = u⁻¹·v of q",
];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunOptions {
    pub trials: usize,
    pub enum_depth: usize,
    pub seed: u64,
    pub contraction_samples: usize,
    pub scalar_samples: usize,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions { trials: 1000, enum_depth: 4, seed: 0, contraction_samples: 100, scalar_samples: 32 }
    }
}

type Series<K> = SkewLaurentSeries<K>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Overall {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(deserialize = "K: TwistedField"))]
pub struct EnumerationSummary<K: TwistedField> {
    pub depth: usize,
    pub prefix_count: usize,
    pub level_one: Vec<K>,
    pub all_differ_at_t: bool,
    pub prefixes: Vec<RootPrefix<K>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(deserialize = "K: TwistedField"))]
pub struct ConditionsSection<K: TwistedField> {
    pub ab: ConditionReport<Series<K>>,
    pub c_structural: Option<StructuralReport<K>>,
    pub c_structural_error: Option<String>,
    pub c_enumerative: Option<EnumerationSummary<K>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(deserialize = "K: TwistedField"))]
pub struct TrialRecord<K: TwistedField> {
    pub index: usize,
    pub strategy: String,
    pub input: BiPoly<Series<K>>,
    pub normal_form: Option<NormalFormLinear<Series<K>>>,
    pub verdict: String,
    pub witness_kind: Option<String>,
    pub witness: Option<Witness<Series<K>>>,
    pub verified: bool,
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(deserialize = "K: TwistedField"))]
pub struct VerificationReport<K: TwistedField> {
    pub instance: String,
    pub field: String,
    pub a: Series<K>,
    pub b: Series<K>,
    pub c: Series<K>,
    pub q: CentralPoly<Series<K>>,
    pub options: RunOptions,
    pub working_precision: i64,
    pub conditions: ConditionsSection<K>,
    pub properness: Option<PropernessCertificate<Series<K>>>,
    pub maximality_trials: Vec<TrialRecord<K>>,
    pub contraction: Option<ContractionReport<Series<K>>>,
    pub annotations: Vec<String>,
    pub failures: Vec<String>,
    pub overall: Overall,
}

const STRATEGIES: [&str; 5] = ["member", "unit_remainder", "root", "coprime", "random"];

/// Known zeros of `q` among `a`, `b` and a few multiples `e·t`.
fn known_roots<K: RandomScalar>(
    params: &InstanceParams<Series<K>>,
    policy: &PrecisionPolicy,
) -> Result<Vec<Series<K>>> {
    let c0 = params.c.coeff(0);
    let mut scalars = K::elements().unwrap_or_else(|| vec![K::one(), c0.clone(), c0.sigma()]);
    scalars.retain(|e| !e.is_zero());
    let mut candidates = vec![params.a.clone(), params.b.clone()];
    for e in scalars {
        let et = Series::monomial(e, 1);
        candidates.push(et.neg());
        candidates.push(et);
    }
    let mut roots: Vec<Series<K>> = Vec::new();
    for cand in candidates {
        if !roots.contains(&cand) && is_right_factor(&params.q, &cand, policy)? {
            roots.push(cand);
        }
    }
    Ok(roots)
}

fn trial_input<K: RandomScalar>(
    index: usize,
    params: &InstanceParams<Series<K>>,
    roots: &[Series<K>],
    rng: &mut ChaCha8Rng,
) -> Result<BiPoly<Series<K>>> {
    let member = random_bipoly::<Series<K>, _>(rng, 2, 3)
        .mul(&params.q_gen())?
        .add(&random_bipoly::<Series<K>, _>(rng, 2, 3).mul(&params.y_gen())?);
    let d = Series::<K>::random_nonzero(rng);
    Ok(match index % STRATEGIES.len() {
        0 => member,
        1 => member.add(&BiPoly::constant(d)),
        2 if !roots.is_empty() => {
            let zeta = &roots[rng.gen_range(0..roots.len())];
            member.add(&BiPoly::from_x_poly(&CentralPoly::x_minus(zeta).scale_left(&d)?))
        }
        2 | 3 => {
            let s = Series::<K>::random(rng);
            member.add(&BiPoly::from_x_poly(&CentralPoly::x_minus(&s).scale_left(&d)?))
        }
        _ => random_bipoly(rng, 2, 4),
    })
}

fn run_trial<K: RandomScalar>(
    index: usize,
    params: &InstanceParams<Series<K>>,
    roots: &[Series<K>],
    seed: u64,
) -> TrialRecord<K> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    let strategy = STRATEGIES[index % STRATEGIES.len()].to_string();
    let input = match trial_input(index, params, roots, &mut rng) {
        Ok(f) => f,
        Err(e) => {
            return TrialRecord {
                index,
                strategy,
                input: BiPoly::zero(),
                normal_form: None,
                verdict: "error".into(),
                witness_kind: None,
                witness: None,
                verified: false,
                error: Some(e.to_string()),
            }
        }
    };
    let normal = normal_form(&input, params).ok();
    match decide_membership(&input, params) {
        Ok(m) => {
            let witness = m.witness().clone();
            let verified = witness.verify(&input, params).is_ok();
            TrialRecord {
                index,
                strategy,
                input,
                normal_form: normal,
                verdict: if m.is_member() { "member" } else { "not_member" }.into(),
                witness_kind: Some(witness.kind_name().into()),
                witness: Some(witness),
                verified,
                error: None,
            }
        }
        Err(e) => TrialRecord {
            index,
            strategy,
            input,
            normal_form: normal,
            verdict: "error".into(),
            witness_kind: None,
            witness: None,
            verified: false,
            error: Some(e.to_string()),
        },
    }
}

fn auxiliary_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Runs every check on one instance. Deterministic in `opts.seed`.
pub fn run_counterexample<K: RandomScalar>(
    name: &str,
    params: &InstanceParams<Series<K>>,
    opts: &RunOptions,
    policy: &PrecisionPolicy,
) -> Result<VerificationReport<K>> {
    let mut failures = Vec::new();

    let ab = check_conditions_ab(params)?;
    if !ab.a.holds {
        failures.push("condition (a): (ab)c ≠ c(ab)".to_string());
    }
    if !ab.b.holds {
        failures.push("condition (b): c(a+b) ≠ (a+b)c".to_string());
    }

    let (c_structural, c_structural_error) = match condition_c_structural(params) {
        Ok(r) => (Some(r), None),
        Err(e) => (None, Some(e.to_string())),
    };
    let c_ok = match (&c_structural, &c_structural_error) {
        (Some(r), _) if r.verdict == StructuralVerdict::Pass => true,
        (Some(_), _) => {
            failures.push("condition (c): σ(c) = c, so a zero of q commutes with c".to_string());
            false
        }
        (None, err) => {
            failures.push(format!("condition (c): not certified ({})", err.as_deref().unwrap_or("unknown")));
            false
        }
    };

    let c_enumerative = if c_ok && K::elements().is_some() {
        let prefixes = condition_c_enumerative(params, opts.enum_depth)?;
        let all_differ_at_t =
            prefixes.iter().all(|r| matches!(r.commutation, CommutationReport::DiffersAtExponent { exponent: 1, .. }));
        if prefixes.is_empty() || !all_differ_at_t {
            failures.push("condition (c): root enumeration found a prefix agreeing with c at t¹".to_string());
        }
        let mut level_one: Vec<K> = Vec::new();
        for r in &prefixes {
            let f1 = r.prefix.coeff(1);
            if !level_one.contains(&f1) {
                level_one.push(f1);
            }
        }
        Some(EnumerationSummary {
            depth: opts.enum_depth,
            prefix_count: prefixes.len(),
            level_one,
            all_differ_at_t,
            prefixes,
        })
    } else {
        None
    };

    let properness = if ab.both_hold() {
        match properness_certificate(params, &mut auxiliary_rng(opts.seed, u64::MAX), opts.scalar_samples) {
            Ok(cert) => Some(cert),
            Err(e) => {
                failures.push(format!("properness: {e}"));
                None
            }
        }
    } else {
        None
    };

    let conditions_hold = ab.both_hold() && c_ok;
    let (maximality_trials, contraction) = if conditions_hold {
        let roots = known_roots(params, policy)?;
        let trials: Vec<TrialRecord<K>> =
            (0..opts.trials).into_par_iter().map(|i| run_trial(i, params, &roots, opts.seed)).collect();
        let bad = trials.iter().filter(|t| !t.verified).count();
        if bad > 0 {
            failures.push(format!("maximality: {bad} of {} trials without a verified witness", trials.len()));
        }
        let contraction =
            match contraction_analysis(params, &mut auxiliary_rng(opts.seed, u64::MAX - 1), opts.contraction_samples) {
                Ok(r) => Some(r),
                Err(e) => {
                    failures.push(format!("contraction: {e}"));
                    None
                }
            };
        (trials, contraction)
    } else {
        failures.push("maximality and contraction skipped: conditions (a)–(c) not all certified".to_string());
        (Vec::new(), None)
    };

    let overall = if failures.is_empty() { Overall::Pass } else { Overall::Fail };
    Ok(VerificationReport {
        instance: name.to_string(),
        field: K::field_name().to_string(),
        a: params.a.clone(),
        b: params.b.clone(),
        c: params.c.clone(),
        q: params.q.clone(),
        options: opts.clone(),
        working_precision: policy.working_precision(),
        conditions: ConditionsSection { ab, c_structural, c_structural_error, c_enumerative },
        properness,
        maximality_trials,
        contraction,
        annotations: ANNOTATIONS.iter().map(|s| s.to_string()).collect(),
        failures,
        overall,
    })
}

impl<K: TwistedField> VerificationReport<K> {
    /// Re-verifies every witness in the report against its own instance data.
    pub fn reverify(&self) -> Result<usize> {
        let params = InstanceParams::new(self.a.clone(), self.b.clone(), self.c.clone())?;
        let mut count = 0;
        for t in &self.maximality_trials {
            if let Some(w) = &t.witness {
                w.verify(&t.input, &params)?;
                count += 1;
            }
        }
        if let Some(c) = &self.contraction {
            let xb = BiPoly::from_x_poly(&CentralPoly::x_minus(&params.b));
            c.x_minus_b_witness.verify(&xb, &params)?;
            c.one_witness.verify(&BiPoly::one(), &params)?;
            count += 2;
        }
        Ok(count)
    }
}
