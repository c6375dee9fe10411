use crate::error::{Error, Result};
use crate::exactla::{FieldSpec, Mat};
use crate::modcat::{CatModule, Side};

use super::bimodule::Bimodule;
use super::category::{term, CategoryBuilder, CategoryParts, Construction, FiniteKCategory, TriangularBlocks};

/// The one-object category with `Hom(*,*) = K`.
pub fn point(field: FieldSpec) -> FiniteKCategory {
    let mut b = CategoryBuilder::new(field);
    b.object("*").unwrap().hom("*", "*", &["1"]).unwrap().identity_basis("*", "1");
    b.build().expect("point category")
}

/// Path category of `1 → 2` with arrow `a`.
pub fn a2(field: FieldSpec) -> FiniteKCategory {
    let mut b = CategoryBuilder::new(field);
    b.object("1").unwrap().object("2").unwrap();
    b.hom("1", "1", &["e1"]).unwrap().hom("2", "2", &["e2"]).unwrap().hom("1", "2", &["a"]).unwrap();
    b.identity_basis("1", "e1").identity_basis("2", "e2");
    b.build().expect("A2 category")
}

/// Path category of `1 → 2 → 3` with arrows `a`, `b` and composite `ba`.
pub fn a3(field: FieldSpec) -> FiniteKCategory {
    let mut b = CategoryBuilder::new(field);
    for o in ["1", "2", "3"] {
        b.object(o).unwrap();
    }
    b.hom("1", "1", &["e1"]).unwrap().hom("2", "2", &["e2"]).unwrap().hom("3", "3", &["e3"]).unwrap();
    b.hom("1", "2", &["a"]).unwrap().hom("2", "3", &["b"]).unwrap().hom("1", "3", &["ba"]).unwrap();
    b.identity_basis("1", "e1").identity_basis("2", "e2").identity_basis("3", "e3");
    b.comp("b", "a", term("ba"));
    b.build().expect("A3 category")
}

/// Two objects with two parallel arrows `a, b: 1 → 2`.
pub fn kronecker(field: FieldSpec) -> FiniteKCategory {
    let mut b = CategoryBuilder::new(field);
    b.object("1").unwrap().object("2").unwrap();
    b.hom("1", "1", &["e1"]).unwrap().hom("2", "2", &["e2"]).unwrap().hom("1", "2", &["a", "b"]).unwrap();
    b.identity_basis("1", "e1").identity_basis("2", "e2");
    b.build().expect("Kronecker category")
}

/// `K[x]/(x²)` as a one-object category.
pub fn dual_numbers(field: FieldSpec) -> FiniteKCategory {
    let mut b = CategoryBuilder::new(field);
    b.object("*").unwrap().hom("*", "*", &["1", "x"]).unwrap().identity_basis("*", "1");
    b.build().expect("dual numbers")
}

/// `K × K`: two objects, identities only.
pub fn product_kk(field: FieldSpec) -> FiniteKCategory {
    let mut b = CategoryBuilder::new(field);
    b.object("1").unwrap().object("2").unwrap();
    b.hom("1", "1", &["e1"]).unwrap().hom("2", "2", &["e2"]).unwrap();
    b.identity_basis("1", "e1").identity_basis("2", "e2");
    b.build().expect("K x K")
}

/// `Hom_op(x,y) = Hom(y,x)` with reversed composition; labels are kept.
pub fn opposite(c: &FiniteKCategory) -> FiniteKCategory {
    let n = c.num_objects();
    let hom = (0..n).map(|x| (0..n).map(|y| c.hom[y][x].clone()).collect()).collect();
    let comp = (0..n)
        .map(|x| {
            (0..n)
                .map(|y| {
                    (0..n)
                        .map(|z| {
                            // op: f ∈ C(y,x), g ∈ C(z,y); g ∘op f = f ∘ g in C(z,x).
                            let df = c.dim(y, x);
                            let dg = c.dim(z, y);
                            let mut perm = vec![0; df * dg];
                            for jg in 0..dg {
                                for i_f in 0..df {
                                    perm[jg * df + i_f] = i_f * dg + jg;
                                }
                            }
                            c.comp[z][y][x].permute_cols(&perm)
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    FiniteKCategory::unchecked(CategoryParts {
        field: c.field,
        objects: c.objects.clone(),
        hom,
        comp,
        identity: c.identity.clone(),
    })
}

/// `C ⊗_K D`: object `(a,b)` has index `a·|D| + b`; basis `f⊗g` has index `i·dim_D + j`.
pub fn tensor_category(c: &FiniteKCategory, d: &FiniteKCategory) -> Result<FiniteKCategory> {
    if c.field != d.field {
        return Err(Error::FieldMismatch(c.field, d.field));
    }
    let (nc, nd) = (c.num_objects(), d.num_objects());
    let n = nc * nd;
    let split = |x: usize| (x / nd, x % nd);
    let objects = (0..n)
        .map(|x| {
            let (a, b) = split(x);
            format!("({},{})", c.objects[a], d.objects[b])
        })
        .collect();
    let hom: Vec<Vec<Vec<String>>> = (0..n)
        .map(|x| {
            (0..n)
                .map(|y| {
                    let ((a1, b1), (a2, b2)) = (split(x), split(y));
                    c.hom[a1][a2]
                        .iter()
                        .flat_map(|f| d.hom[b1][b2].iter().map(move |g| format!("{f}⊗{g}")))
                        .collect()
                })
                .collect()
        })
        .collect();
    let mut comp = Vec::with_capacity(n);
    for x in 0..n {
        let mut row = Vec::with_capacity(n);
        for y in 0..n {
            let mut cell = Vec::with_capacity(n);
            for z in 0..n {
                let ((a1, b1), (a2, b2), (a3, b3)) = (split(x), split(y), split(z));
                let k = c.comp[a1][a2][a3].kron(&d.comp[b1][b2][b3]);
                let (dc12, dc23) = (c.dim(a1, a2), c.dim(a2, a3));
                let (dd12, dd23) = (d.dim(b1, b2), d.dim(b2, b3));
                let dxy = dc12 * dd12;
                let mut perm = vec![0; dc23 * dd23 * dxy];
                for jc in 0..dc23 {
                    for jd in 0..dd23 {
                        for ic in 0..dc12 {
                            for id in 0..dd12 {
                                let new = (jc * dd23 + jd) * dxy + ic * dd12 + id;
                                let old = (jc * dc12 + ic) * (dd23 * dd12) + jd * dd12 + id;
                                perm[new] = old;
                            }
                        }
                    }
                }
                cell.push(k.permute_cols(&perm));
            }
            row.push(cell);
        }
        comp.push(row);
    }
    let identity = (0..n)
        .map(|x| {
            let (a, b) = split(x);
            c.identity[a].kron(&d.identity[b])
        })
        .collect();
    let t = FiniteKCategory::unchecked(CategoryParts {
        field: c.field,
        objects,
        hom,
        comp,
        identity,
    });
    Ok(t.with_construction(Construction::Tensor {
        left: Box::new(c.clone()),
        right: Box::new(d.clone()),
    }))
}

/// `C^e = C^op ⊗ C`; object `(x,y)` has index `x·n + y`.
pub fn enveloping(c: &FiniteKCategory) -> FiniteKCategory {
    tensor_category(&opposite(c), c).expect("same field")
}

/// Triangular matrix category `[T 0; M U]` in the block model: objects of
/// `t` followed by objects of `u`, with `Hom(T_a, U_b) = M(b, a)` and
/// `Hom(U, T) = 0`.
pub fn triangular_matrix(t: &FiniteKCategory, u: &FiniteKCategory, m: &Bimodule) -> Result<FiniteKCategory> {
    if t.field != u.field {
        return Err(Error::FieldMismatch(t.field, u.field));
    }
    if m.field() != t.field {
        return Err(Error::FieldMismatch(m.field(), t.field));
    }
    if m.t() != t || m.u() != u {
        return Err(Error::InvalidBimodule("bimodule is not defined over the given categories".into()));
    }
    let field = t.field;
    let (nt, nu) = (t.num_objects(), u.num_objects());
    let n = nt + nu;
    let is_t = |x: usize| x < nt;
    let objects = t
        .objects
        .iter()
        .map(|o| format!("T:{o}"))
        .chain(u.objects.iter().map(|o| format!("U:{o}")))
        .collect();
    let hom: Vec<Vec<Vec<String>>> = (0..n)
        .map(|x| {
            (0..n)
                .map(|y| match (is_t(x), is_t(y)) {
                    (true, true) => t.hom[x][y].iter().map(|l| format!("T:{l}")).collect(),
                    (false, false) => u.hom[x - nt][y - nt].iter().map(|l| format!("U:{l}")).collect(),
                    (true, false) => (0..m.dim(y - nt, x))
                        .map(|k| format!("m{k}[{},{}]", u.objects[y - nt], t.objects[x]))
                        .collect(),
                    (false, true) => Vec::new(),
                })
                .collect()
        })
        .collect();
    let dim = |x: usize, y: usize| hom[x][y].len();
    let mut comp = Vec::with_capacity(n);
    for x in 0..n {
        let mut row = Vec::with_capacity(n);
        for y in 0..n {
            let mut cell = Vec::with_capacity(n);
            for z in 0..n {
                let mat = match (is_t(x), is_t(y), is_t(z)) {
                    (true, true, true) => t.comp[x][y][z].clone(),
                    (false, false, false) => u.comp[x - nt][y - nt][z - nt].clone(),
                    (true, true, false) => {
                        // m ∘ s for s: T_x → T_y, m ∈ M(z, y): right action of s.
                        let (a, b, c) = (x, y, z - nt);
                        let ds = t.dim(a, b);
                        let mut out = Mat::zeros(field, dim(x, z), dim(y, z) * dim(x, y));
                        for i in 0..ds {
                            let r = &m.ract[a][b][i][c];
                            for j in 0..m.dim(c, b) {
                                out.set_block(0, j * ds + i, &r.col(j));
                            }
                        }
                        out
                    }
                    (true, false, false) => {
                        // g ∘ m for m ∈ M(y, x), g: U_y → U_z: left action of g.
                        let (a, b, c) = (x, y - nt, z - nt);
                        let dm = m.dim(b, a);
                        let mut out = Mat::zeros(field, dim(x, z), dim(y, z) * dim(x, y));
                        for j in 0..u.dim(b, c) {
                            let l = &m.lact[b][c][j][a];
                            for i in 0..dm {
                                out.set_block(0, j * dm + i, &l.col(i));
                            }
                        }
                        out
                    }
                    _ => Mat::zeros(field, dim(x, z), dim(y, z) * dim(x, y)),
                };
                cell.push(mat);
            }
            row.push(cell);
        }
        comp.push(row);
    }
    let identity = t.identity.iter().chain(u.identity.iter()).cloned().collect();
    let lambda = FiniteKCategory::unchecked(CategoryParts {
        field,
        objects,
        hom,
        comp,
        identity,
    });
    let report = lambda.validate();
    if !report.is_valid() {
        return Err(Error::InvalidCategory(report.to_string()));
    }
    Ok(lambda.with_construction(Construction::Triangular(Box::new(TriangularBlocks {
        t: t.clone(),
        u: u.clone(),
        m: m.clone(),
    }))))
}

/// One-point extension `[K 0; M U]` of `u` by a left module `m`.
pub fn one_point_extension(u: &FiniteKCategory, m: &CatModule) -> Result<FiniteKCategory> {
    if m.side() != Side::Left {
        return Err(Error::InvalidModule("one-point extension needs a left module".into()));
    }
    if m.base().as_ref() != u {
        return Err(Error::InvalidModule("module is not defined over the given category".into()));
    }
    let k = point(u.field);
    let bm = Bimodule::from_left_module(m, &k)?;
    triangular_matrix(&k, u, &bm)
}

/// Full subcategory on the given objects (in the given order).
pub fn full_subcategory(c: &FiniteKCategory, keep: &[usize]) -> FiniteKCategory {
    let hom = keep.iter().map(|&x| keep.iter().map(|&y| c.hom[x][y].clone()).collect()).collect();
    let comp = keep
        .iter()
        .map(|&x| keep.iter().map(|&y| keep.iter().map(|&z| c.comp[x][y][z].clone()).collect()).collect())
        .collect();
    FiniteKCategory::unchecked(CategoryParts {
        field: c.field,
        objects: keep.iter().map(|&x| c.objects[x].clone()).collect(),
        hom,
        comp,
        identity: keep.iter().map(|&x| c.identity[x].clone()).collect(),
    })
}

/// Removes zero objects (those with `End = 0`); they carry no homological information.
pub fn drop_zero_objects(c: &FiniteKCategory) -> FiniteKCategory {
    let keep: Vec<usize> = (0..c.num_objects()).filter(|&x| c.dim(x, x) > 0).collect();
    full_subcategory(c, &keep)
}
