//! End-to-end acceptance suite. Runs without the libtest harness so each
//! criterion prints exactly one PASS/FAIL line.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use maxideal_core::counterexample::{condition_c_enumerative, StructuralVerdict};
use maxideal_core::nullstellensatz::commutator_expansion;
use maxideal_core::random::{random_bipoly, random_poly, random_series, RandomElement, RandomScalar};
use maxideal_core::{
    decide_membership, evaluation_ideal_certificate, gaussian_instance, gf4_instance, product_formula_check,
    remark_sweep, BiPoly, CentralPoly, CommutationReport, DivisionRing, EvaluationCertificate, FormulaBranch,
    GaussianRational, Gf4, InstanceParams, MultiPoly, Overall, Point, PrecisionPolicy, RationalQuaternion,
    SkewLaurentSeries, TwistedField, VerificationReport, Witness,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Series<K> = SkewLaurentSeries<K>;
type Outcome = Result<String, String>;
type Criterion = (&'static str, u64, fn() -> Outcome);

const BIN: &str = env!("CARGO_BIN_EXE_maxideal");

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn run_cli(args: &[&str]) -> Result<(i32, String), String> {
    let out = Command::new(BIN).args(args).output().map_err(|e| format!("spawn: {e}"))?;
    let code = out.status.code().ok_or("killed by signal")?;
    Ok((code, String::from_utf8_lossy(&out.stdout).into_owned()))
}

// 1. headline reproduction through the binary

fn check_report<K: TwistedField>(path: &Path, trials: usize) -> Outcome {
    let raw = std::fs::read_to_string(path).map_err(|e| e.to_string())?;
    let r: VerificationReport<K> = serde_json::from_str(&raw).map_err(|e| format!("report parse: {e}"))?;
    ensure(r.overall == Overall::Pass, || format!("overall fail: {:?}", r.failures))?;
    ensure(r.conditions.ab.both_hold(), || "conditions (a), (b)".into())?;
    let c = r.conditions.c_structural.as_ref().ok_or("no structural (c) report")?;
    ensure(c.verdict == StructuralVerdict::Pass && c.c_sigma != c.c && c.c_sigma2_equals_c, || {
        "structural (c)".into()
    })?;
    let p = r.properness.as_ref().ok_or("no properness certificate")?;
    ensure(
        p.check_qc_commute && p.actions_commute && p.q_annihilates_generator && p.y_minus_c_annihilates_generator,
        || "properness".into(),
    )?;
    ensure(r.maximality_trials.len() == trials && r.maximality_trials.iter().all(|t| t.verified), || {
        "maximality trials".into()
    })?;
    let ct = r.contraction.as_ref().ok_or("no contraction report")?;
    ensure(ct.q_factors && ct.q_member && ct.membership_matches_divisibility, || "contraction".into())?;
    ensure(!ct.x_minus_b_witness.is_member() && !ct.one_witness.is_member(), || "x − b or 1 in M".into())?;
    // independent re-expansion of every witness read back from the file
    let reverified = r.reverify().map_err(|e| e.to_string())?;
    Ok(format!("{} witnesses re-expanded", reverified))
}

trait WitnessKind {
    fn is_member(&self) -> bool;
}

impl<D: DivisionRing> WitnessKind for Witness<D> {
    fn is_member(&self) -> bool {
        matches!(self, Witness::Member { .. })
    }
}

fn criterion_1() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut details = Vec::new();
    for instance in ["gf4", "gaussian"] {
        let path = dir.path().join(format!("{instance}.json"));
        let start = Instant::now();
        let (code, _) =
            run_cli(&["verify", "--instance", instance, "--format", "json", "--out", path.to_str().unwrap()])?;
        let elapsed = start.elapsed();
        ensure(code == 0, || format!("{instance}: exit {code}"))?;
        ensure(elapsed < Duration::from_secs(10), || format!("{instance}: {elapsed:.2?} over budget"))?;
        let detail = match instance {
            "gf4" => check_report::<Gf4>(&path, 1000)?,
            _ => check_report::<GaussianRational>(&path, 1000)?,
        };
        details.push(format!("{instance} {elapsed:.1?}, {detail}"));
    }
    let custom = dir.path().join("c1.json");
    let one = r#"{"val":0,"coeffs":["1"],"precision":"exact"}"#;
    let t = r#"{"val":1,"coeffs":["1"],"precision":"exact"}"#;
    std::fs::write(&custom, format!(r#"{{"field":"gf4","a":{t},"b":{t},"c":{one}}}"#)).map_err(|e| e.to_string())?;
    let (code, out) = run_cli(&["verify", "--instance", &format!("custom:{}", custom.display()), "--trials", "10"])?;
    ensure(code == 1 && out.contains("condition (c)   FAILED"), || format!("c = 1 gave exit {code}"))?;
    details.push("c = 1 fails at (c)".into());
    Ok(details.join("; "))
}

// 2. product formula, checked against the fraction-free form Σ f_i·g(a)·a^i

fn naive_value<D: DivisionRing>(f: &CentralPoly<D>, v: &D) -> D {
    f.coeffs().iter().enumerate().fold(D::zero(), |acc, (i, c)| acc.add(&c.mul(&v.pow(i as u32).unwrap()).unwrap()))
}

fn product_formula_oracle<K: RandomScalar>(samples: usize, seed: u64) -> Result<(usize, usize), String> {
    let policy = PrecisionPolicy::default();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut vanishing, mut conjugated) = (0, 0);
    for i in 0..samples {
        let f = random_poly::<Series<K>, _>(&mut rng, 3);
        let a: Series<K> = random_series(&mut rng, -1, 1, 2);
        let g = if i % 4 == 0 {
            random_poly::<Series<K>, _>(&mut rng, 1).mul(&CentralPoly::x_minus(&a)).unwrap()
        } else {
            random_poly(&mut rng, 2)
        };
        let fg_a = naive_value(&f.mul(&g).unwrap(), &a);
        let g_a = naive_value(&g, &a);
        let report = product_formula_check(&f, &g, &a, &policy).map_err(|e| e.to_string())?;
        ensure(report.holds, || format!("formula fails for f = {f}, g = {g}, a = {a}"))?;
        if g_a.is_exact_zero() {
            ensure(report.branch == FormulaBranch::RightFactorVanishes && fg_a.is_exact_zero(), || {
                format!("vanishing branch for g = {g}, a = {a}")
            })?;
            vanishing += 1;
        } else {
            let rhs = f.coeffs().iter().enumerate().fold(Series::zero(), |acc, (i, c)| {
                acc.add(&c.mul(&g_a).unwrap().mul(&a.pow(i as u32).unwrap()).unwrap())
            });
            ensure(report.branch == FormulaBranch::Conjugated && fg_a == rhs, || {
                format!("oracle mismatch for f = {f}, g = {g}, a = {a}")
            })?;
            conjugated += 1;
        }
    }
    Ok((vanishing, conjugated))
}

fn criterion_2() -> Outcome {
    let (v4, c4) = product_formula_oracle::<Gf4>(1000, 21)?;
    let (vq, cq) = product_formula_oracle::<GaussianRational>(1000, 22)?;
    // (x·w)(t) = w·t but x(t)·w(t) = t·w = (w+1)·t
    type S4 = Series<Gf4>;
    let f = CentralPoly::<S4>::x();
    let g = CentralPoly::constant(S4::constant(Gf4::W));
    let a = S4::t();
    let lhs = f.mul(&g).unwrap().evaluate(&a).unwrap();
    let naive = f.evaluate(&a).unwrap().mul(&g.evaluate(&a).unwrap()).unwrap();
    ensure(lhs != naive, || "multiplicativity counterexample vanished".into())?;
    Ok(format!("gf4 {v4} vanishing + {c4} conjugated, gaussian {vq} + {cq}; (x·w)(t) ≠ x(t)·w(t)"))
}

// 3. division

fn division_samples<K: RandomScalar>(samples: usize, rng: &mut ChaCha8Rng) -> Result<(), String> {
    let policy = PrecisionPolicy::default();
    for _ in 0..samples {
        let f = random_poly::<Series<K>, _>(rng, 5);
        let deg = rng.gen_range(1..=3);
        let mut coeffs: Vec<_> = (0..deg).map(|_| Series::<K>::random(rng)).collect();
        coeffs.push(Series::monomial(K::random_nonzero_scalar(rng), rng.gen_range(-2..=2)));
        let d = CentralPoly::from_coeffs(coeffs);
        let (q, r) = f.divide_right(&d, &policy).map_err(|e| e.to_string())?;
        ensure(q.mul(&d).unwrap().add(&r) == f, || format!("f ≠ q·d + r for f = {f}, d = {d}"))?;
        ensure(r.degree().is_none_or(|dr| dr < deg), || format!("deg r ≥ deg d for f = {f}, d = {d}"))?;
    }
    for _ in 0..samples / 5 {
        let f = random_poly::<Series<K>, _>(rng, 4);
        let v = Series::<K>::random(rng);
        let (_, r) = f.divide_right(&CentralPoly::x_minus(&v), &policy).map_err(|e| e.to_string())?;
        ensure(r.coeff(0) == naive_value(&f, &v) && r.degree().unwrap_or(0) == 0, || {
            format!("remainder ≠ value for f = {f}, v = {v}")
        })?;
    }
    Ok(())
}

fn criterion_3() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    division_samples::<Gf4>(500, &mut rng)?;
    division_samples::<GaussianRational>(500, &mut rng)?;
    Ok("1000 divisions exact, 200 remainders equal values".into())
}

// 4. root enumeration

fn criterion_4() -> Outcome {
    let params = gf4_instance();
    let prefixes = condition_c_enumerative(&params, 4).map_err(|e| e.to_string())?;
    ensure(!prefixes.is_empty(), || "no prefixes".into())?;
    let mut level_one: Vec<Gf4> = prefixes.iter().map(|p| p.prefix.coeff(1)).collect();
    level_one.sort();
    level_one.dedup();
    // (e·t)² = e·σ(e)·t², so level one needs e·σ(e) = 1
    let brute: Vec<Gf4> = Gf4::ALL.into_iter().filter(|e| *e * e.sigma() == Gf4::ONE).collect();
    ensure(level_one == brute && brute == vec![Gf4::ONE, Gf4::W, Gf4::W1], || format!("level one {level_one:?}"))?;
    for p in &prefixes {
        let direct = p.prefix.commutes(&params.c).map_err(|e| e.to_string())?;
        ensure(
            matches!(direct, CommutationReport::DiffersAtExponent { exponent: 1, .. }) && direct == p.commutation,
            || format!("prefix {} commutation {direct:?}", p.prefix),
        )?;
    }
    Ok(format!("{} prefixes, level one {{1, w, w+1}}, all differ at t", prefixes.len()))
}

// 5. corrupted witnesses

fn perturb<D: RandomElement>(p: &BiPoly<D>, rng: &mut ChaCha8Rng) -> BiPoly<D> {
    let slots: Vec<(usize, usize)> = p.terms().map(|(k, _)| *k).collect();
    let (i, j) = if slots.is_empty() { (0, 0) } else { slots[rng.gen_range(0..slots.len())] };
    p.add(&BiPoly::monomial(D::random_nonzero(rng), i, j))
}

fn corrupt<D: RandomElement>(w: &Witness<D>, rng: &mut ChaCha8Rng) -> Witness<D> {
    let mut w = w.clone();
    match &mut w {
        Witness::Member { g1, g2 } => {
            if rng.gen_bool(0.5) {
                *g1 = perturb(g1, rng);
            } else {
                *g2 = perturb(g2, rng);
            }
        }
        Witness::UnitCombo { h0, h1, h2, .. } => match rng.gen_range(0..3) {
            0 => *h0 = perturb(h0, rng),
            1 => *h1 = perturb(h1, rng),
            _ => *h2 = perturb(h2, rng),
        },
    }
    w
}

fn corrupted_rejections<K: RandomScalar>(
    params: &InstanceParams<Series<K>>,
    cases: usize,
    seed: u64,
) -> Result<usize, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rejected = 0;
    for i in 0..cases {
        let f = if i % 2 == 0 {
            let g1 = random_bipoly::<Series<K>, _>(&mut rng, 2, 3);
            g1.mul(&params.q_gen()).unwrap()
        } else {
            random_bipoly::<Series<K>, _>(&mut rng, 2, 4)
        };
        let w = decide_membership(&f, params).map_err(|e| e.to_string())?.witness().clone();
        w.verify(&f, params).map_err(|e| format!("genuine witness rejected: {e}"))?;
        if corrupt(&w, &mut rng).verify(&f, params).is_err() {
            rejected += 1;
        }
    }
    Ok(rejected)
}

fn criterion_5() -> Outcome {
    let r4 = corrupted_rejections(&gf4_instance(), 50, 51)?;
    let rq = corrupted_rejections(&gaussian_instance(), 50, 52)?;
    ensure(r4 + rq == 100, || format!("{}/100 rejected", r4 + rq))?;
    Ok("100/100 corrupted witnesses rejected".into())
}

// 6. evaluation ideals at points

fn random_point<D: RandomElement>(rng: &mut ChaCha8Rng, commuting: bool) -> Point<D> {
    let n = rng.gen_range(1..=4);
    let base = D::random(rng);
    let coords =
        (0..n).map(|_| if commuting { base.pow(rng.gen_range(0..3)).unwrap() } else { D::random(rng) }).collect();
    Point::new(coords).unwrap()
}

fn point_certificates<D: RandomElement>(samples: usize, seed: u64) -> Result<(usize, usize), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut proper, mut improper) = (0, 0);
    for s in 0..samples {
        let p: Point<D> = random_point(&mut rng, s % 2 == 0);
        let c = p.coords();
        let mut noncommuting = None;
        for i in 0..c.len() {
            for j in i + 1..c.len() {
                if noncommuting.is_none() && c[i].mul(&c[j]).unwrap() != c[j].mul(&c[i]).unwrap() {
                    noncommuting = Some((i, j));
                }
            }
        }
        match (evaluation_ideal_certificate(&p).map_err(|e| e.to_string())?, noncommuting) {
            (EvaluationCertificate::ProperMaximal(_), None) => proper += 1,
            (EvaluationCertificate::Improper(w), Some(_)) => {
                w.verify(&p).map_err(|e| e.to_string())?;
                let (i, j) = w.pair;
                let n = p.arity();
                let (xi, xj) = (MultiPoly::var_minus(n, i, &c[i]), MultiPoly::var_minus(n, j, &c[j]));
                // (x_i − a_i)(x_j − a_j) − (x_j − a_j)(x_i − a_i) = a_i a_j − a_j a_i
                let direct = xi.mul(&xj).unwrap().sub(&xj.mul(&xi).unwrap());
                let kappa = c[i].mul(&c[j]).unwrap().sub(&c[j].mul(&c[i]).unwrap());
                ensure(
                    !kappa.is_zero().unwrap() && direct.try_eq(&MultiPoly::constant(n, kappa.clone())).unwrap(),
                    || "commutator does not expand to a constant".into(),
                )?;
                let expansion = commutator_expansion(&p, i, j).map_err(|e| e.to_string())?;
                ensure(expansion.try_eq(&MultiPoly::constant(n, kappa.neg())).unwrap(), || {
                    "commutator expansion mismatch".into()
                })?;
                improper += 1;
            }
            (cert, _) => return Err(format!("wrong verdict {cert:?}")),
        }
    }
    Ok((proper, improper))
}

fn criterion_6() -> Outcome {
    let (pq, iq) = point_certificates::<RationalQuaternion>(500, 61)?;
    let (p4, i4) = point_certificates::<Series<Gf4>>(500, 62)?;
    Ok(format!("quaternions {pq} maximal + {iq} unit; gf4 series {p4} + {i4}"))
}

// 7. quaternion sweep

fn criterion_7() -> Outcome {
    let r = remark_sweep(10_000, 71);
    ensure(r.errors.is_empty(), || format!("errors: {:?}", r.errors))?;
    ensure(r.full_certifications == 0, || format!("{} full certifications", r.full_certifications))?;
    let fails_c = r.histogram.get("fails_c").copied().unwrap_or(0);
    ensure(r.roots_verified == fails_c && fails_c > 0, || format!("{} of {fails_c} roots verified", r.roots_verified))?;
    for ex in r.examples.iter().filter(|e| e.commuting_root.is_some()) {
        let root = ex.commuting_root.as_ref().unwrap();
        let q_root = root.mul(root).unwrap().sub(&ex.a.add(&ex.b).mul(root).unwrap()).add(&ex.a.mul(&ex.b).unwrap());
        ensure(root.mul(&ex.c).unwrap() == ex.c.mul(root).unwrap() && q_root.is_zero(), || {
            format!("bad root {root} for {} {} {}", ex.a, ex.b, ex.c)
        })?;
    }
    Ok(format!("0 of 10000 certified, {fails_c} commuting roots verified"))
}

// 8. byte-identical reports

fn criterion_8() -> Outcome {
    let runs: [&[&str]; 3] = [
        &["verify", "--instance", "gf4", "--seed", "8", "--format", "json"],
        &["verify", "--instance", "gaussian", "--seed", "8", "--trials", "200", "--format", "json"],
        &["remark-sweep", "--trials", "2000", "--seed", "8", "--format", "json"],
    ];
    for args in runs {
        let (c1, a) = run_cli(args)?;
        let (c2, b) = run_cli(args)?;
        ensure(c1 == 0 && c2 == 0 && !a.is_empty() && a == b, || format!("{args:?} not reproducible"))?;
    }
    let (_, other) = run_cli(&["verify", "--instance", "gf4", "--seed", "9", "--format", "json"])?;
    let (_, base) = run_cli(runs[0])?;
    ensure(other != base, || "seed has no effect".into())?;
    Ok("3 commands byte-identical across runs".into())
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("counterexample reproduction", 20, criterion_1),
        ("product formula", 30, criterion_2),
        ("division invariants", 10, criterion_3),
        ("root enumeration", 5, criterion_4),
        ("witness corruption", 10, criterion_5),
        ("evaluation ideals", 20, criterion_6),
        ("quaternion sweep", 60, criterion_7),
        ("determinism", 60, criterion_8),
    ];
    let mut failed = 0;
    for (n, (name, budget, f)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let outcome = outcome.and_then(|d| {
            if elapsed > Duration::from_secs(budget) {
                Err(format!("{elapsed:.2?} over {budget} s budget"))
            } else {
                Ok(d)
            }
        });
        match outcome {
            Ok(d) => println!("criterion {} {name}: PASS ({elapsed:.2?}) {d}", n + 1),
            Err(e) => {
                failed += 1;
                println!("criterion {} {name}: FAIL ({elapsed:.2?}) {e}", n + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
