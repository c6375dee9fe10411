use std::sync::Arc;

use kcat_core::exactla::FieldSpec;
use kcat_core::hochschild::{
    bar_dims, bar_resolution, center, hochschild_cochain_complex, hochschild_cohomology, hochschild_cohomology_with,
};
use kcat_core::kcat::{a2, a3, dual_numbers, enveloping, kronecker, point, product_kk, random_category};
use kcat_core::modcat::{ext, free_module, module_hom, regular_bimodule, representable, Side};
use kcat_core::Error;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const Q: FieldSpec = FieldSpec::Rationals;
const P: FieldSpec = FieldSpec::Prime(32003);

#[test]
fn bar_term_sizes() {
    assert!(bar_dims(&point(Q), 4).iter().all(|t| t.bimodule_dim == 1));
    assert_eq!(bar_dims(&a2(Q), 0)[0].bimodule_dim, 4);
}

#[test]
fn regular_cochain_spaces() {
    let k = point(Q);
    let cx = hochschild_cochain_complex(&k, &regular_bimodule(&k), 3).unwrap();
    assert!(cx.dims.iter().all(|&d| d == 1));
    let a = a2(Q);
    assert_eq!(hochschild_cochain_complex(&a, &regular_bimodule(&a), 1).unwrap().dims[0], 2);
}

#[test]
fn dual_number_cochains_match_materialized_bar_terms() {
    let c = dual_numbers(P);
    let reg = regular_bimodule(&c);
    let cx = hochschild_cochain_complex(&c, &reg, 3).unwrap();
    let bar = bar_resolution(&c, 3);
    for n in 0..=3 {
        assert_eq!(cx.dims[n], 1 << (n + 1));
        assert_eq!(module_hom(&bar.term(n), &reg).unwrap().len(), cx.dims[n]);
    }
}

#[test]
fn known_cohomology() {
    assert_eq!(hochschild_cohomology(&point(Q), 3), vec![1, 0, 0, 0]);
    assert_eq!(hochschild_cohomology(&a2(Q), 3), vec![1, 0, 0, 0]);
    assert_eq!(hochschild_cohomology(&a3(Q), 3), vec![1, 0, 0, 0]);
    assert_eq!(hochschild_cohomology(&product_kk(Q), 3), vec![2, 0, 0, 0]);
    assert_eq!(hochschild_cohomology(&kronecker(Q), 3), vec![1, 3, 0, 0]);
    // the dual numbers are commutative, so H⁰ is all of K[x]/x²
    assert_eq!(hochschild_cohomology(&dual_numbers(P), 3), vec![2, 1, 1, 1]);
    assert_eq!(hochschild_cohomology(&dual_numbers(FieldSpec::Prime(2)), 3), vec![2, 2, 2, 2]);
}

#[test]
fn centers() {
    for c in [point(Q), a2(Q), product_kk(Q), kronecker(Q), dual_numbers(Q), a3(Q)] {
        assert_eq!(center(&c).cols(), hochschild_cohomology(&c, 0)[0]);
    }
    assert_eq!(center(&product_kk(Q)).cols(), 2);
}

#[test]
fn bar_resolution_is_exact() {
    for c in [a2(Q), dual_numbers(Q), kronecker(Q)] {
        bar_resolution(&c, 2).verify().unwrap();
    }
}

#[test]
fn coefficients_are_checked() {
    let c = a2(Q);
    let wrong = representable(Arc::new(c.clone()), 0, Side::Left).unwrap();
    assert!(matches!(
        hochschild_cochain_complex(&c, &wrong, 2),
        Err(Error::InvalidCoefficient(_))
    ));
    let env = Arc::new(enveloping(&c));
    let free = free_module(&env, &[0]);
    hochschild_cohomology_with(&c, &free, 2).unwrap();
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn cochains_square_to_zero(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = random_category(P, &mut rng, 6);
        let cx = hochschild_cochain_complex(&c, &regular_bimodule(&c), 4).unwrap();
        prop_assert!(cx.is_complex(), "{:?}", cx.square_zero_failures());
    }

    #[test]
    fn cochains_agree_with_enveloping_ext(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = random_category(P, &mut rng, 5);
        let reg = regular_bimodule(&c);
        prop_assert_eq!(hochschild_cohomology(&c, 3), ext(&reg, &reg, 3).unwrap());
        prop_assert_eq!(center(&c).cols(), hochschild_cohomology(&c, 0)[0]);
    }
}
