use maxideal_core::nullstellensatz::{
    commutator_expansion, is_commuting_point, reduce_modulo_point, substitute_at_commuting_point, RemarkVerdict,
};
use maxideal_core::random::{small_rational, RandomElement};
use maxideal_core::{
    evaluation_ideal_certificate, quaternion_remark_check, remark_sweep, DivisionRing, Error, EvaluationCertificate,
    Gf4, MultiPoly, Point, RationalQuaternion as Q, SkewLaurentSeries,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type S4 = SkewLaurentSeries<Gf4>;

/// Half of the points are built to commute: every coordinate is a
/// polynomial in the first one.
fn random_point<D: RandomElement, R: Rng>(rng: &mut R, commuting: bool) -> Point<D> {
    let n = rng.gen_range(1..=4);
    let base = D::random(rng);
    let coords = (0..n)
        .map(|_| {
            if commuting {
                let k = rng.gen_range(0..3u32);
                let s = D::one().add(&D::one()).pow(rng.gen_range(0..2)).unwrap();
                base.pow(k).unwrap().mul(&s).unwrap()
            } else {
                D::random(rng)
            }
        })
        .collect();
    Point::new(coords).unwrap()
}

fn certificates_match_commutativity<D: RandomElement>(samples: usize, seed: u64) -> (usize, usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut proper, mut improper) = (0, 0);
    for i in 0..samples {
        let p: Point<D> = random_point(&mut rng, i % 2 == 0);
        let commuting = is_commuting_point(&p).unwrap();
        match evaluation_ideal_certificate(&p).unwrap() {
            EvaluationCertificate::ProperMaximal(cert) => {
                assert!(commuting);
                assert_eq!(cert.actions, p.coords());
                proper += 1;
            }
            EvaluationCertificate::Improper(w) => {
                assert!(!commuting);
                w.verify(&p).unwrap();
                let (i, j) = w.pair;
                let expansion = commutator_expansion(&p, i, j).unwrap();
                let (ai, aj) = (&p.coords()[i], &p.coords()[j]);
                let kappa = aj.mul(ai).unwrap().sub(&ai.mul(aj).unwrap());
                assert!(expansion.try_eq(&MultiPoly::constant(p.arity(), kappa)).unwrap());
                improper += 1;
            }
        }
    }
    (proper, improper)
}

#[test]
fn evaluation_ideals_500() {
    let (p, i) = certificates_match_commutativity::<Q>(500, 1);
    assert!(p > 100 && i > 100);
    let (p, i) = certificates_match_commutativity::<S4>(500, 2);
    assert!(p > 100 && i > 100);
}

fn random_multipoly<D: RandomElement, R: Rng>(rng: &mut R, arity: usize) -> MultiPoly<D> {
    let terms: Vec<_> =
        (0..rng.gen_range(0..5)).map(|_| ((0..arity).map(|_| rng.gen_range(0..3)).collect(), D::random(rng))).collect();
    MultiPoly::from_terms(arity, terms).unwrap()
}

#[test]
fn substitution_matches_iterated_division() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..200 {
        let p: Point<Q> = random_point(&mut rng, true);
        let f = random_multipoly::<Q, _>(&mut rng, p.arity());
        assert_eq!(substitute_at_commuting_point(&f, &p).unwrap(), reduce_modulo_point(&f, &p).unwrap());
        for k in 0..p.arity() {
            assert!(substitute_at_commuting_point(&p.generator(k), &p).unwrap().is_zero());
        }
    }
    for _ in 0..100 {
        let p: Point<S4> = random_point(&mut rng, true);
        let f = random_multipoly::<S4, _>(&mut rng, p.arity());
        assert_eq!(substitute_at_commuting_point(&f, &p).unwrap(), reduce_modulo_point(&f, &p).unwrap());
    }
}

#[test]
fn point_examples() {
    let (i, j) = (Q::unit_i(), Q::unit_j());
    assert!(is_commuting_point(&Point::new(vec![i.clone(), i.clone()]).unwrap()).unwrap());
    assert!(!is_commuting_point(&Point::new(vec![i.clone(), j.clone()]).unwrap()).unwrap());
    assert!(!is_commuting_point(&Point::new(vec![S4::t(), S4::constant(Gf4::W)]).unwrap()).unwrap());

    let ij = Point::new(vec![i.clone(), j.clone()]).unwrap();
    let EvaluationCertificate::Improper(w) = evaluation_ideal_certificate(&ij).unwrap() else { panic!() };
    assert_eq!(w.commutator, Q::from_ints(0, 0, 0, -2));
    assert!(matches!(
        evaluation_ideal_certificate(&Point::new(vec![Q::from_ints(2, -1, 0, 5)]).unwrap()).unwrap(),
        EvaluationCertificate::ProperMaximal(_)
    ));
    assert_eq!(substitute_at_commuting_point(&MultiPoly::constant(2, Q::one()), &ij), Err(Error::NonCommutingPoint));
}

#[test]
fn remark_examples() {
    let i = Q::unit_i();
    let r = quaternion_remark_check(&i, &i.neg(), &i).unwrap();
    assert_eq!(r.verdict, RemarkVerdict::FailsC);
    assert_eq!(r.root_in_Qc, Some(i.clone()));

    let r = quaternion_remark_check(&Q::unit_j(), &Q::unit_k(), &i).unwrap();
    assert!(r.conditions_ab.a && !r.conditions_ab.b);
    assert_eq!(r.verdict, RemarkVerdict::ConditionsNotMet);

    let r = quaternion_remark_check(&Q::unit_j(), &Q::unit_k(), &Q::from_ints(3, 0, 0, 0)).unwrap();
    assert!(r.c_central);
    assert_eq!(r.verdict, RemarkVerdict::FailsC);
}

#[test]
fn remark_roots_commute_with_c() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut fails_c = 0;
    for _ in 0..300 {
        let c = Q::random(&mut rng);
        let mut lin = || Q::scalar(small_rational(&mut rng, 4)).add(&c.scale(&small_rational(&mut rng, 4)));
        let (a, b) = (lin(), lin());
        let r = quaternion_remark_check(&a, &b, &c).unwrap();
        // a and b lie in ℚ(c), so b itself is a commuting zero and the
        // discriminant is a square there
        assert_eq!(r.verdict, RemarkVerdict::FailsC, "{a} {b} {c}");
        let root = r.commuting_root.unwrap();
        assert_eq!(root.mul(&c).unwrap(), c.mul(&root).unwrap());
        fails_c += 1;
    }
    assert_eq!(fails_c, 300);
    let sweep = remark_sweep(600, 9);
    assert_eq!(sweep.full_certifications, 0);
    assert!(sweep.errors.is_empty());
}
