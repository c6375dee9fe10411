use std::sync::Arc;

use kcat_core::exactla::FieldSpec;
use kcat_core::ideals::{ideal_from_generators, representable_ideal_module, triangular_ideal, TwoSidedIdeal};
use kcat_core::kcat::{a2, dual_numbers, enveloping, one_point_extension, opposite, point, random_category, tensor_category};
use kcat_core::modcat::*;
use kcat_core::{Error, FiniteKCategory};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const Q: FieldSpec = FieldSpec::Rationals;

fn rc(c: FiniteKCategory) -> Arc<FiniteKCategory> {
    Arc::new(c)
}

#[test]
fn representables() {
    let c = rc(a2(Q));
    assert_eq!(representable(c.clone(), 0, Side::Left).unwrap().dims(), [1, 1]);
    assert_eq!(representable(c.clone(), 1, Side::Left).unwrap().dims(), [0, 1]);
    assert_eq!(representable(c.clone(), 0, Side::Right).unwrap().dims(), [1, 0]);
    assert!(matches!(representable(c, 2, Side::Left), Err(Error::UnknownObject(_))));
    let d = rc(dual_numbers(Q));
    let p = representable(d, 0, Side::Left).unwrap();
    assert_eq!(p.dim(0), 2);
    let x = p.act(0, 0, 1);
    assert!(!x.is_zero());
    assert!(x.mul(x).is_zero());
}

#[test]
fn hom_examples() {
    let c = rc(a2(Q));
    let p1 = representable(c.clone(), 0, Side::Left).unwrap();
    let p2 = representable(c.clone(), 1, Side::Left).unwrap();
    assert_eq!(module_hom(&p1, &p1).unwrap().len(), 1);
    assert_eq!(module_hom(&p1, &p2).unwrap().len(), 0);
    assert_eq!(module_hom(&p2, &p1).unwrap().len(), 1);
    let s1 = simple(c.clone(), 0, Side::Left).unwrap();
    let s2 = simple(c.clone(), 1, Side::Left).unwrap();
    assert_eq!(module_hom(&s1, &s2).unwrap().len(), 0);
    for phi in module_hom(&p2, &p1).unwrap() {
        assert!(phi.check(&p2, &p1));
    }
    let other = rc(a2(FieldSpec::Prime(3)));
    let q = representable(other, 0, Side::Left).unwrap();
    assert!(matches!(module_hom(&p1, &q), Err(Error::BaseMismatch)));
}

#[test]
fn tensor_examples() {
    let c = rc(a2(Q));
    let m = simple(c.clone(), 0, Side::Left).unwrap().direct_sum(&representable(c.clone(), 0, Side::Left).unwrap()).unwrap();
    for x in 0..2 {
        let r = representable(c.clone(), x, Side::Right).unwrap();
        assert_eq!(tensor_over_cat(&r, &m).unwrap().dim, m.dim(x));
    }
    let k = rc(point(Q));
    let kl = representable(k.clone(), 0, Side::Left).unwrap();
    let kr = representable(k, 0, Side::Right).unwrap();
    assert_eq!(tensor_over_cat(&kr, &kl).unwrap().dim, 1);
    let s2r = simple(c.clone(), 1, Side::Right).unwrap();
    let s1l = simple(c, 0, Side::Left).unwrap();
    assert_eq!(tensor_over_cat(&s2r, &s1l).unwrap().dim, 0);
}

#[test]
fn outer_tensor_examples() {
    let c = rc(a2(Q));
    let m = representable(c.clone(), 0, Side::Right).unwrap();
    let n = representable(c.clone(), 0, Side::Left).unwrap();
    let b = outer_tensor(&m, &n).unwrap();
    // object (x', x) has index 2x' + x
    assert_eq!(b.dim(1), 1);
    assert_eq!(b.dims(), [1, 1, 0, 0]);
    assert!(is_projective(&b));
    let env = rc(enveloping(&c));
    let rep = representable(env, 0, Side::Left).unwrap();
    assert_eq!(rep.dims(), b.dims());
    let z = CatModule::zero(c.clone(), Side::Right);
    assert!(outer_tensor(&z, &n).unwrap().is_zero());
}

#[test]
fn projectivity_examples() {
    let c = rc(a2(Q));
    assert!(is_projective(&representable(c.clone(), 0, Side::Left).unwrap()));
    assert!(!is_projective(&simple(c.clone(), 0, Side::Left).unwrap()));
    assert!(is_projective(&simple(c.clone(), 1, Side::Left).unwrap()));
    let k = point(Q);
    let lam = rc(one_point_extension(&k, &representable(rc(k.clone()), 0, Side::Left).unwrap()).unwrap());
    let i = triangular_ideal(lam.clone()).unwrap();
    for x in 0..lam.num_objects() {
        assert!(is_projective(&representable_ideal_module(&i, x).unwrap()));
    }
}

#[test]
fn resolution_examples() {
    let c = rc(a2(Q));
    let p = representable(c.clone(), 0, Side::Left).unwrap();
    let r = projective_resolution(&p, 4).unwrap();
    assert_eq!(r.length(), 0);
    r.verify().unwrap();

    let s1 = simple(c.clone(), 0, Side::Left).unwrap();
    let r = projective_resolution(&s1, 4).unwrap();
    r.verify().unwrap();
    assert_eq!(r.gens, vec![vec![0], vec![1]]);

    let d = rc(dual_numbers(Q));
    let s = simple(d, 0, Side::Left).unwrap();
    let r = projective_resolution(&s, 5).unwrap();
    r.verify().unwrap();
    assert_eq!(r.gens, vec![vec![0]; 6]);
}

#[test]
fn ext_examples() {
    let c = rc(a2(Q));
    let s1 = simple(c.clone(), 0, Side::Left).unwrap();
    let s2 = simple(c.clone(), 1, Side::Left).unwrap();
    let p1 = representable(c.clone(), 0, Side::Left).unwrap();
    assert_eq!(ext(&p1, &s1, 3).unwrap(), vec![1, 0, 0, 0]);
    assert_eq!(ext(&s1, &s2, 3).unwrap(), vec![0, 1, 0, 0]);
    assert_eq!(ext(&s2, &s1, 3).unwrap(), vec![0, 0, 0, 0]);
    let d = rc(dual_numbers(Q));
    let s = simple(d.clone(), 0, Side::Left).unwrap();
    assert_eq!(ext(&s, &s, 4).unwrap(), vec![1; 5]);
    let sr = simple(d, 0, Side::Right).unwrap();
    assert_eq!(tor(&sr, &s, 4).unwrap(), vec![1; 5]);
    assert_eq!(ext(&sr, &sr, 2).unwrap(), vec![1; 3]);
}

#[test]
fn tor_examples() {
    let c = rc(a2(Q));
    let m = simple(c.clone(), 0, Side::Left).unwrap();
    for x in 0..2 {
        let r = representable(c.clone(), x, Side::Right).unwrap();
        let t = tor(&r, &m, 3).unwrap();
        assert_eq!(t[0], m.dim(x));
        assert!(t[1..].iter().all(|&v| v == 0));
    }
    let s2r = simple(c.clone(), 1, Side::Right).unwrap();
    assert_eq!(tor(&s2r, &m, 2).unwrap(), vec![0, 1, 0]);
}

#[test]
fn duality_examples() {
    let c = rc(a2(Q));
    let s1 = simple(c.clone(), 0, Side::Left).unwrap();
    assert_eq!(dualize(&s1), simple(c.clone(), 0, Side::Right).unwrap());
    let p1 = representable(c.clone(), 0, Side::Left).unwrap();
    let i1 = dualize(&p1);
    assert_eq!((i1.side(), i1.dims()), (Side::Right, &[1usize, 1][..]));
    assert_eq!(dualize(&i1), p1);
}

#[test]
fn big_ext_examples() {
    let c = rc(a2(Q));
    let m = representable(c.clone(), 0, Side::Left).unwrap();
    let zero = big_ext_functor(&TwoSidedIdeal::zero(c.clone()), &m, 2).unwrap();
    assert_eq!(zero, vec![vec![1, 0, 0], vec![1, 0, 0]]);
    let whole = big_ext_functor(&TwoSidedIdeal::whole(c.clone()), &m, 2).unwrap();
    assert!(whole.iter().flatten().all(|&v| v == 0));

    let k = point(Q);
    let lam = rc(one_point_extension(&k, &representable(rc(k.clone()), 0, Side::Left).unwrap()).unwrap());
    let i = triangular_ideal(lam.clone()).unwrap();
    // modules pulled back from U are those vanishing on the T-objects
    let pulled = simple(lam.clone(), 1, Side::Left).unwrap();
    for row in big_ext_functor(&i, &pulled, 3).unwrap() {
        assert!(row[1..].iter().all(|&v| v == 0));
    }
    for row in big_tor_functor(&i, &pulled, 3).unwrap() {
        assert!(row[1..].iter().all(|&v| v == 0));
    }
    let a = ideal_from_generators(c.clone(), &[(0, 1, c.basis(0, 1, 0))]).unwrap();
    let s2 = simple(c, 1, Side::Left).unwrap();
    assert_eq!(big_ext_functor(&a, &s2, 2).unwrap()[0], vec![0, 1, 0]);
}

#[test]
fn boxtimes_with_representable_is_evaluation() {
    let c = rc(a2(Q));
    let d = a2(Q);
    let base = rc(tensor_category(&opposite(&c), &d).unwrap());
    let f = simple(c.clone(), 0, Side::Left).unwrap().direct_sum(&representable(c.clone(), 0, Side::Left).unwrap()).unwrap();
    for o in 0..base.num_objects() {
        let (a, b) = (o / 2, o % 2);
        let g = representable(base.clone(), o, Side::Left).unwrap();
        let fg = boxtimes(&f, &g).unwrap();
        for y in 0..2 {
            assert_eq!(fg.dim(y), f.dim(a) * d.dim(b, y));
        }
    }
}

#[test]
fn regular_bimodule_dims() {
    let c = a2(Q);
    let r = regular_bimodule(&c);
    assert_eq!(r.dims(), [1, 1, 0, 1]);
    let d = dual_numbers(Q);
    let r = regular_bimodule(&d);
    assert_eq!(r.dims(), [2]);
    assert!(!is_projective(&r));
    assert!(is_projective(&regular_bimodule(&point(Q))));
}

#[test]
fn not_basic_simple() {
    // K x K as a single object: End is not local
    let mut b = kcat_core::kcat::CategoryBuilder::new(Q);
    b.object("*").unwrap().hom("*", "*", &["e", "f"]).unwrap();
    b.comp("e", "e", kcat_core::kcat::term("e")).comp("f", "f", kcat_core::kcat::term("f"));
    b.comp("e", "f", vec![]).comp("f", "e", vec![]);
    let one = num_rational::BigRational::from_integer(1.into());
    b.identity("*", vec![(one.clone(), "e".into()), (one, "f".into())]);
    let c = rc(b.build().unwrap());
    assert!(matches!(simple(c, 0, Side::Left), Err(Error::NotBasic(_))));
}

fn random_pair(seed: u64) -> (Arc<FiniteKCategory>, CatModule, CatModule) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let c = rc(random_category(Q, &mut rng, 8));
    let m = random_module(c.clone(), Side::Left, &mut rng);
    let n = random_module(c.clone(), Side::Right, &mut rng);
    (c, m, n)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn yoneda_and_coyoneda(seed in any::<u64>()) {
        let (c, m, n) = random_pair(seed);
        for x in 0..c.num_objects() {
            let p = representable(c.clone(), x, Side::Left).unwrap();
            prop_assert_eq!(module_hom(&p, &m).unwrap().len(), m.dim(x));
            let r = representable(c.clone(), x, Side::Right).unwrap();
            prop_assert_eq!(tensor_over_cat(&r, &m).unwrap().dim, m.dim(x));
            prop_assert_eq!(module_hom(&r, &n).unwrap().len(), n.dim(x));
        }
    }

    #[test]
    fn resolutions_verify_and_degree_zero(seed in any::<u64>()) {
        let (_, m, n) = random_pair(seed);
        let r = projective_resolution(&m, 3).unwrap();
        prop_assert!(r.verify().is_ok());
        let e = ext(&m, &m, 2).unwrap();
        prop_assert_eq!(e[0], module_hom(&m, &m).unwrap().len());
        let t = tor(&n, &m, 2).unwrap();
        prop_assert_eq!(t[0], tensor_over_cat(&n, &m).unwrap().dim);
    }

    #[test]
    fn duality_bridge(seed in any::<u64>()) {
        let (_, m, n) = random_pair(seed);
        prop_assert_eq!(ext(&m, &dualize(&n), 3).unwrap(), tor(&n, &m, 3).unwrap());
        prop_assert_eq!(dualize(&dualize(&m)), m);
    }
}
