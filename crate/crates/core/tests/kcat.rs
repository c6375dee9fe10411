use std::sync::Arc;

use kcat_core::exactla::{FieldSpec, Mat};
use kcat_core::ideals::{ideal_from_generators, triangular_ideal, TwoSidedIdeal};
use kcat_core::kcat::quiver::{quiver_category, Quiver, Relation, DEFAULT_PATH_BOUND};
use kcat_core::kcat::{
    a2, drop_zero_objects, dual_numbers, enveloping, one_point_extension, opposite, point, quotient, random_category,
    tensor_category, triangular_matrix, Bimodule, CategoryParts, FiniteKCategory, KFunctor,
};
use kcat_core::modcat::{representable, CatModule, Side};
use kcat_core::Error;
use num_traits::One;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const Q: FieldSpec = FieldSpec::Rationals;

fn hom_dims(c: &FiniteKCategory) -> Vec<Vec<usize>> {
    let n = c.num_objects();
    (0..n).map(|x| (0..n).map(|y| c.dim(x, y)).collect()).collect()
}

#[test]
fn standard_categories_validate() {
    for c in [point(Q), a2(Q), dual_numbers(Q), a2(FieldSpec::Prime(5))] {
        assert!(c.validate().is_valid(), "{}", c.validate());
    }
}

#[test]
fn corrupted_unit_law_is_reported() {
    let c = a2(Q);
    let mut parts: CategoryParts = c.into_parts();
    // a ∘ e1 = 0
    parts.comp[0][0][1] = Mat::zeros(Q, 1, 1);
    let bad = FiniteKCategory::unchecked(parts.clone());
    let report = bad.validate();
    assert!(!report.is_valid());
    assert!(report.to_string().contains("(e1, a)"), "{report}");
    assert!(matches!(FiniteKCategory::new(parts), Err(Error::InvalidCategory(_))));
}

#[test]
fn opposite_examples() {
    assert_eq!(opposite(&point(Q)), point(Q));
    let op = opposite(&a2(Q));
    assert_eq!(op.dim(1, 0), 1);
    assert_eq!(op.dim(0, 1), 0);
    assert_eq!(op.hom_labels(1, 0), ["a"]);
    assert_eq!(opposite(&dual_numbers(Q)), dual_numbers(Q));
    assert_eq!(opposite(&op), a2(Q));
}

#[test]
fn tensor_and_enveloping_dims() {
    let k = point(Q);
    let kk = tensor_category(&k, &k).unwrap();
    assert_eq!((kk.num_objects(), kk.dim(0, 0)), (1, 1));
    let a = a2(Q);
    assert_eq!(hom_dims(&tensor_category(&a, &k).unwrap()), hom_dims(&a));
    let e = tensor_category(&opposite(&a), &a).unwrap();
    assert!(e.validate().is_valid());
    assert_eq!(e.num_objects(), 4);
    // object (x, y) has index 2x + y
    assert_eq!(e.dim(0, 3), 0);
    assert_eq!(e.dim(2, 1), 1);
    assert_eq!(enveloping(&a).total_hom_dim(), 9);
    assert_eq!(enveloping(&k).total_hom_dim(), 1);
    let d = enveloping(&dual_numbers(Q));
    assert_eq!((d.num_objects(), d.dim(0, 0)), (1, 4));
    assert!(d.validate().is_valid());
    assert!(matches!(
        tensor_category(&a, &a2(FieldSpec::Prime(7))),
        Err(Error::FieldMismatch(..))
    ));
}

fn k_bimodule(dim: usize) -> Bimodule {
    let k = point(Q);
    Bimodule::from_fn(
        &k,
        &k,
        vec![vec![dim]],
        |_, _, _, _| Some(Mat::identity(Q, dim)),
        |_, _, _, _| Some(Mat::identity(Q, dim)),
    )
    .unwrap()
}

#[test]
fn triangular_examples() {
    let k = point(Q);
    let lam = triangular_matrix(&k, &k, &k_bimodule(1)).unwrap();
    assert!(lam.validate().is_valid());
    // [K 0; K K] has the Hom pattern of A2
    assert_eq!(hom_dims(&lam), hom_dims(&a2(Q)));
    let zero = triangular_matrix(&k, &k, &Bimodule::zero(&k, &k).unwrap()).unwrap();
    assert_eq!(hom_dims(&zero), vec![vec![1, 0], vec![0, 1]]);

    let u = Arc::new(a2(Q));
    let m = CatModule::from_fn(u.clone(), Side::Left, vec![1, 0], |x, y, _| {
        if x == 0 && y == 0 {
            Mat::identity(Q, 1)
        } else {
            Mat::zeros(Q, usize::from(y == 0), usize::from(x == 0))
        }
    })
    .unwrap();
    let bm = Bimodule::from_left_module(&m, &k).unwrap();
    let lam = triangular_matrix(&k, &u, &bm).unwrap();
    assert!(lam.validate().is_valid());
    assert_eq!(lam.total_hom_dim(), 5);
}

#[test]
fn one_point_extension_examples() {
    let k = Arc::new(point(Q));
    let m1 = representable(k.clone(), 0, Side::Left).unwrap();
    assert_eq!(hom_dims(&one_point_extension(&k, &m1).unwrap()), hom_dims(&a2(Q)));
    let m2 = m1.direct_sum(&m1).unwrap();
    let kron = one_point_extension(&k, &m2).unwrap();
    assert_eq!(kron.dim(0, 1), 2);
    let u = Arc::new(a2(Q));
    let p1 = representable(u.clone(), 0, Side::Left).unwrap();
    let lam = one_point_extension(&u, &p1).unwrap();
    assert!(lam.validate().is_valid());
    assert_eq!(lam.num_objects(), 3);
    assert_eq!(lam.total_hom_dim(), 6);
}

#[test]
fn quotient_examples() {
    let c = Arc::new(a2(Q));
    let i = ideal_from_generators(c.clone(), &[(0, 1, c.basis(0, 1, 0))]).unwrap();
    let (q, phi) = quotient(&c, &i).unwrap();
    assert!(q.validate().is_valid());
    assert_eq!(hom_dims(&q), vec![vec![1, 0], vec![0, 1]]);
    assert!(phi.apply(0, 1, &c.basis(0, 1, 0)).is_zero());
    phi.check().unwrap();

    let (q0, phi0) = quotient(&c, &TwoSidedIdeal::zero(c.clone())).unwrap();
    assert_eq!(q0, *c);
    let id = KFunctor::identity(c.clone());
    assert_eq!(phi0.morphism_map, id.morphism_map);

    let k = point(Q);
    let lam = Arc::new(triangular_matrix(&k, &k, &k_bimodule(1)).unwrap());
    let ti = triangular_ideal(lam.clone()).unwrap();
    let (ql, _) = quotient(&lam, &ti).unwrap();
    assert!(ql.validate().is_valid());
    assert_eq!(hom_dims(&drop_zero_objects(&ql)), hom_dims(&k));
}

#[test]
fn quotient_dims_subtract() {
    let lam = Arc::new(one_point_extension(&a2(Q), &representable(Arc::new(a2(Q)), 0, Side::Left).unwrap()).unwrap());
    let i = triangular_ideal(lam.clone()).unwrap();
    let (q, _) = quotient(&lam, &i).unwrap();
    for x in 0..lam.num_objects() {
        for y in 0..lam.num_objects() {
            assert_eq!(q.dim(x, y), lam.dim(x, y) - i.dim(x, y));
        }
    }
}

#[test]
fn quiver_presentations() {
    let mut q = Quiver::new(&["1", "2"]);
    q.arrow("a", 0, 1);
    let c = quiver_category(Q, q, &[], DEFAULT_PATH_BOUND).unwrap();
    assert_eq!(hom_dims(&c), hom_dims(&a2(Q)));

    let mut q = Quiver::new(&["*"]);
    q.arrow("x", 0, 0);
    let xx = q.path(0, &[0, 0]).unwrap();
    let rel = Relation {
        terms: vec![(One::one(), xx)],
    };
    let c = quiver_category(Q, q.clone(), &[rel], DEFAULT_PATH_BOUND).unwrap();
    assert_eq!(c.dim(0, 0), 2);
    assert_eq!(c.hom_labels(0, 0), ["1_*", "x"]);

    let free = quiver_category(Q, q, &[], DEFAULT_PATH_BOUND);
    assert!(matches!(free, Err(Error::Finiteness(_))));
}

#[test]
fn commutative_square_quiver() {
    let mut q = Quiver::new(&["1", "2", "3", "4"]);
    q.arrow("a", 0, 1).arrow("b", 1, 3).arrow("c", 0, 2).arrow("d", 2, 3);
    let ba = q.path(0, &[0, 1]).unwrap();
    let dc = q.path(0, &[2, 3]).unwrap();
    let rel = Relation {
        terms: vec![(One::one(), ba), (-num_rational::BigRational::one(), dc)],
    };
    let c = quiver_category(Q, q, &[rel], DEFAULT_PATH_BOUND).unwrap();
    assert_eq!(c.dim(0, 3), 1);
    assert_eq!(c.total_hom_dim(), 9);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn random_categories_are_valid(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = random_category(Q, &mut rng, 12);
        prop_assert!(c.validate().is_valid());
        prop_assert_eq!(opposite(&opposite(&c)), c.clone());
        let e = enveloping(&c);
        prop_assert!(e.validate().is_valid());
        let n = c.num_objects();
        for o1 in 0..n * n {
            for o2 in 0..n * n {
                let (x, y, x2, y2) = (o1 / n, o1 % n, o2 / n, o2 % n);
                prop_assert_eq!(e.dim(o1, o2), c.dim(x2, x) * c.dim(y, y2));
            }
        }
    }
}
