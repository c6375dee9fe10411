//! Shared fixtures for the acceptance suite.

use std::sync::Arc;

use kcat_core::exactla::Mat;
use kcat_core::kcat::{a2, a3, dual_numbers, kronecker, point, product_kk, Bimodule};
use kcat_core::modcat::{dualize, representable, simple};
use kcat_core::{CatModule, FieldSpec, FiniteKCategory, Side};

pub const Q: FieldSpec = FieldSpec::Rationals;
pub const GF: FieldSpec = FieldSpec::Prime(32003);

/// The named small categories every criterion starts from.
pub fn standard_categories() -> Vec<(&'static str, FiniteKCategory)> {
    vec![
        ("K", point(Q)),
        ("K×K", product_kk(Q)),
        ("A2", a2(Q)),
        ("A3", a3(Q)),
        ("Kronecker", kronecker(Q)),
        ("K[x]/x²", dual_numbers(GF)),
    ]
}

/// `K^dim` as a `K`-`K` bimodule.
pub fn k_bimodule(field: FieldSpec, dim: usize) -> Bimodule {
    let k = point(field);
    let id = || Some(Mat::identity(field, dim));
    Bimodule::from_fn(&k, &k, vec![vec![dim]], |_, _, _, _| id(), |_, _, _, _| id()).expect("identity actions")
}

/// `K` as a `K`-`T` bimodule, with `T` acting through the coefficient of the identity.
///
/// Only a module when the non-identity basis vectors of `t` span an ideal, as for a
/// basic category presented by paths.
pub fn augmentation_bimodule(t: &FiniteKCategory) -> Bimodule {
    let field = t.field();
    let k = point(field);
    let dims = vec![vec![1; t.num_objects()]];
    Bimodule::from_fn(
        &k,
        t,
        dims,
        |_, _, _, _| Some(Mat::identity(field, 1)),
        |t1, t2, j, _| {
            let id = t1 == t2 && t.hom_labels(t1, t2)[j] == t.identity_label(t1);
            Some(Mat::identity(field, 1).scale(&field.from_i64(i64::from(id))))
        },
    )
    .expect("augmentation is a bimodule")
}

/// Representables, simples and duals of representables, on both sides.
pub fn module_matrix(c: &Arc<FiniteKCategory>) -> Vec<(String, CatModule)> {
    let mut out = Vec::new();
    for x in 0..c.num_objects() {
        let name = c.object_name(x);
        for side in [Side::Left, Side::Right] {
            let p = representable(c.clone(), x, side).expect("object exists");
            out.push((format!("D P({name})"), dualize(&p)));
            out.push((format!("P({name})"), p));
            if let Ok(s) = simple(c.clone(), x, side) {
                out.push((format!("S({name})"), s));
            }
        }
    }
    for (name, m) in &mut out {
        name.push_str(if m.side() == Side::Left { " left" } else { " right" });
    }
    out
}
