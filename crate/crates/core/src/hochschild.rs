//! Bar resolution, Hochschild–Mitchell cochains and cohomology.

use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactla::{FieldSpec, Mat, Scalar};
use crate::kcat::{enveloping, FiniteKCategory};
use crate::modcat::{ext_from_resolution, regular_bimodule_over, CatModule, Resolution, Side};

/// Size data of one term `S_n` of the bar resolution.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BarTerm {
    pub degree: usize,
    /// Number of `(n+1)`-tuples of objects with nonzero inner tensor.
    pub tuples: usize,
    /// `Σ_t dim C(p₁,p₂) ⊗ … ⊗ C(p_n,p_{n+1})`.
    pub inner_dim: usize,
    /// Total dimension of `S_n` as a bimodule.
    pub bimodule_dim: usize,
}

/// Tuples `(p_0, …, p_n)` with every consecutive Hom space nonzero, in lexicographic order.
#[derive(Clone, Debug)]
struct Tuples {
    list: Vec<Vec<usize>>,
    /// `dims[t][i] = dim C(p_i, p_{i+1})`.
    dims: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
}

impl Tuples {
    fn new(c: &FiniteKCategory, len: usize) -> Self {
        let n = c.num_objects();
        let mut list = Vec::new();
        let mut stack: Vec<Vec<usize>> = (0..n).rev().map(|x| vec![x]).collect();
        while let Some(t) = stack.pop() {
            if t.len() == len {
                list.push(t);
                continue;
            }
            let last = *t.last().unwrap();
            for y in (0..n).rev() {
                if c.dim(last, y) > 0 {
                    let mut u = t.clone();
                    u.push(y);
                    stack.push(u);
                }
            }
        }
        let dims = list
            .iter()
            .map(|t| t.windows(2).map(|w| c.dim(w[0], w[1])).collect())
            .collect();
        let index = list.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect();
        Tuples { list, dims, index }
    }

    fn inner_dim(&self, t: usize) -> usize {
        self.dims[t].iter().product()
    }
}

/// Mixed-radix index, first factor most significant.
fn multi_index(b: &[usize], radix: &[usize]) -> usize {
    b.iter().zip(radix).fold(0, |acc, (&d, &r)| acc * r + d)
}

fn digits(mut k: usize, radix: &[usize]) -> Vec<usize> {
    let mut out = vec![0; radix.len()];
    for i in (0..radix.len()).rev() {
        out[i] = k % radix[i];
        k /= radix[i];
    }
    out
}

/// Term sizes of `S_0 … S_N`.
pub fn bar_dims(c: &FiniteKCategory, max_deg: usize) -> Vec<BarTerm> {
    let n = c.num_objects();
    let into: Vec<usize> = (0..n).map(|p| (0..n).map(|x| c.dim(x, p)).sum()).collect();
    let out: Vec<usize> = (0..n).map(|p| (0..n).map(|y| c.dim(p, y)).sum()).collect();
    (0..=max_deg)
        .map(|deg| {
            let tu = Tuples::new(c, deg + 1);
            let inner: Vec<usize> = (0..tu.list.len()).map(|t| tu.inner_dim(t)).collect();
            BarTerm {
                degree: deg,
                tuples: tu.list.len(),
                inner_dim: inner.iter().sum(),
                bimodule_dim: tu
                    .list
                    .iter()
                    .zip(&inner)
                    .map(|(t, d)| d * into[t[0]] * out[*t.last().unwrap()])
                    .sum(),
            }
        })
        .collect()
}

/// A finite cochain complex `C^0 → C^1 → … → C^{N+1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CochainComplex {
    pub field: FieldSpec,
    /// `dims[n] = dim C^n`.
    pub dims: Vec<usize>,
    /// `diffs[n] : C^n → C^{n+1}`.
    pub diffs: Vec<Mat>,
}

impl CochainComplex {
    /// Degrees `n` (with `d^{n+1} ∘ d^n ≠ 0`) where the complex fails.
    pub fn square_zero_failures(&self) -> Vec<usize> {
        self.diffs
            .windows(2)
            .enumerate()
            .filter(|(_, w)| !w[1].mul(&w[0]).is_zero())
            .map(|(n, _)| n)
            .collect()
    }

    pub fn is_complex(&self) -> bool {
        self.square_zero_failures().is_empty()
    }

    /// Cohomology dimensions in every degree that has an outgoing differential.
    pub fn cohomology(&self) -> Vec<usize> {
        let ranks: Vec<usize> = self.diffs.iter().map(Mat::rank).collect();
        (0..self.diffs.len())
            .map(|n| self.dims[n] - ranks[n] - if n > 0 { ranks[n - 1] } else { 0 })
            .collect()
    }
}

fn add_scaled_identity(m: &mut Mat, r0: usize, c0: usize, n: usize, s: &Scalar) {
    let f = m.field();
    for i in 0..n {
        let cur = m.get(r0 + i, c0 + i);
        m.set(r0 + i, c0 + i, &f.add(&cur, s));
    }
}

fn check_coefficient(c: &FiniteKCategory, coeff: &CatModule) -> Result<()> {
    let n = c.num_objects();
    let e = coeff.base();
    if coeff.side() != Side::Left || e.num_objects() != n * n || e.field() != c.field() {
        return Err(Error::InvalidCoefficient(
            "expected a left module over the enveloping category".into(),
        ));
    }
    for o1 in 0..n * n {
        for o2 in 0..n * n {
            let (x, y, x2, y2) = (o1 / n, o1 % n, o2 / n, o2 % n);
            if e.dim(o1, o2) != c.dim(x2, x) * c.dim(y, y2) {
                return Err(Error::InvalidCoefficient(
                    "base is not the enveloping category of the given category".into(),
                ));
            }
        }
    }
    Ok(())
}

/// Reduced cochains `Hom_{C^e}(S_•(C), M) ≅ ⊕_t Hom_K(C(p_0,p_1) ⊗ … ⊗ C(p_{n-1},p_n), M(p_0,p_n))`
/// in degrees `0 … N+1`, with the unnormalized alternating-sum differential.
///
/// A cochain on tuple `t` is stored column-major: entry `(row, col)` of the
/// `dim M × dim inner` matrix sits at `col·dim M + row`.
pub fn hochschild_cochain_complex(c: &FiniteKCategory, coeff: &CatModule, max_deg: usize) -> Result<CochainComplex> {
    check_coefficient(c, coeff)?;
    let field = c.field();
    let n = c.num_objects();
    let e = |x: usize, y: usize| x * n + y;
    let levels: Vec<Tuples> = (0..=max_deg + 1).map(|deg| Tuples::new(c, deg + 1)).collect();
    let block = |lv: &Tuples, t: usize| coeff.dim(e(lv.list[t][0], *lv.list[t].last().unwrap()));
    let offsets: Vec<Vec<usize>> = levels
        .iter()
        .map(|lv| {
            let mut o = vec![0];
            for t in 0..lv.list.len() {
                o.push(o.last().unwrap() + lv.inner_dim(t) * block(lv, t));
            }
            o
        })
        .collect();
    let dims: Vec<usize> = offsets.iter().map(|o| *o.last().unwrap()).collect();
    let one = field.one();
    let mut diffs = Vec::with_capacity(max_deg + 1);
    for deg in 0..=max_deg {
        let (src, tgt) = (&levels[deg], &levels[deg + 1]);
        let mut d = Mat::zeros(field, dims[deg + 1], dims[deg]);
        for (ti, t) in tgt.list.iter().enumerate() {
            let radix = &tgt.dims[ti];
            let dm = block(tgt, ti);
            if dm == 0 {
                continue;
            }
            let (p0, plast) = (t[0], t[deg + 1]);
            for col in 0..tgt.inner_dim(ti) {
                let b = digits(col, radix);
                let row0 = offsets[deg + 1][ti] + col * dm;
                // φ(β_2, …) ∘ β_1
                let s = src.index[&t[1..].to_vec()];
                let sm = block(src, s);
                if sm > 0 {
                    let v = c.basis(p0, t[1], b[0]).kron(c.identity(plast));
                    let l = coeff.act_vec(e(t[1], plast), e(p0, plast), &v);
                    let scol = multi_index(&b[1..], &src.dims[s]);
                    d.add_block(row0, offsets[deg][s] + scol * sm, &l);
                }
                // inner faces
                for i in 1..=deg {
                    let comp = c.compose_basis(t[i - 1], t[i], t[i + 1], b[i], b[i - 1]);
                    if comp.is_zero() {
                        continue;
                    }
                    let mut u = t.clone();
                    u.remove(i);
                    let s = src.index[&u];
                    let sign = if i % 2 == 0 { one.clone() } else { field.neg(&one) };
                    for k in 0..comp.rows() {
                        if comp.is_zero_at(k, 0) {
                            continue;
                        }
                        let mut bb = b.clone();
                        bb.splice(i - 1..=i, [k]);
                        let scol = multi_index(&bb, &src.dims[s]);
                        let coef = field.mul(&sign, &comp.get(k, 0));
                        add_scaled_identity(&mut d, row0, offsets[deg][s] + scol * dm, dm, &coef);
                    }
                }
                // (−1)^{n+1} β_{n+1} ∘ φ(…, β_n)
                let s = src.index[&t[..=deg].to_vec()];
                let sm = block(src, s);
                if sm > 0 {
                    let v = c.identity(p0).kron(&c.basis(t[deg], plast, b[deg]));
                    let mut l = coeff.act_vec(e(p0, t[deg]), e(p0, plast), &v);
                    if deg % 2 == 0 {
                        l = l.neg();
                    }
                    let scol = multi_index(&b[..deg], &src.dims[s]);
                    d.add_block(row0, offsets[deg][s] + scol * sm, &l);
                }
            }
        }
        diffs.push(d);
    }
    Ok(CochainComplex { field, dims, diffs })
}

/// `H^0 … H^N` with coefficients in the regular bimodule.
pub fn hochschild_cohomology(c: &FiniteKCategory, max_deg: usize) -> Vec<usize> {
    let env = Arc::new(enveloping(c));
    let reg = regular_bimodule_over(c, env);
    hochschild_cochain_complex(c, &reg, max_deg)
        .expect("regular bimodule is a valid coefficient")
        .cohomology()
}

/// `H^0 … H^N` with coefficients in a bimodule.
pub fn hochschild_cohomology_with(c: &FiniteKCategory, coeff: &CatModule, max_deg: usize) -> Result<Vec<usize>> {
    Ok(hochschild_cochain_complex(c, coeff, max_deg)?.cohomology())
}

/// Basis of the center: families `(z_x ∈ C(x,x))` with `f ∘ z_x = z_y ∘ f` for every basis `f`.
/// Columns are stacked coordinates over all objects.
pub fn center(c: &FiniteKCategory) -> Mat {
    let field = c.field();
    let n = c.num_objects();
    let mut off = vec![0];
    for x in 0..n {
        off.push(off[x] + c.dim(x, x));
    }
    let total = off[n];
    let mut rows = Vec::new();
    for x in 0..n {
        for y in 0..n {
            for k in 0..c.dim(x, y) {
                let f = c.basis(x, y, k);
                let mut r = Mat::zeros(field, c.dim(x, y), total);
                r.add_block(0, off[x], &c.left_mult(x, x, y, &f));
                r.add_block(0, off[y], &c.right_mult(x, y, y, &f).neg());
                rows.push(r);
            }
        }
    }
    let refs: Vec<&Mat> = rows.iter().collect();
    Mat::vstack(field, total, &refs).kernel_basis()
}

/// The bar resolution `S_N → … → S_0 → C` materialized as free bimodules.
///
/// Generators of `S_n` are pairs (tuple, inner basis element), placed at the
/// enveloping object `(p_1, p_{n+1})`.
pub fn bar_resolution(c: &FiniteKCategory, max_deg: usize) -> Resolution {
    let field = c.field();
    let n = c.num_objects();
    let env = Arc::new(enveloping(c));
    let e = |x: usize, y: usize| x * n + y;
    let levels: Vec<Tuples> = (0..=max_deg).map(|deg| Tuples::new(c, deg + 1)).collect();
    let gen_off: Vec<Vec<usize>> = levels
        .iter()
        .map(|lv| {
            let mut o = vec![0];
            for t in 0..lv.list.len() {
                o.push(o.last().unwrap() + lv.inner_dim(t));
            }
            o
        })
        .collect();
    let gens: Vec<Vec<usize>> = levels
        .iter()
        .map(|lv| {
            lv.list
                .iter()
                .enumerate()
                .flat_map(|(t, tu)| std::iter::repeat(e(tu[0], *tu.last().unwrap())).take(lv.inner_dim(t)))
                .collect()
        })
        .collect();
    let one = field.one();
    let mut diffs = Vec::with_capacity(max_deg);
    for deg in 1..=max_deg {
        let (src, tgt) = (&levels[deg], &levels[deg - 1]);
        let mut cols = Vec::new();
        for (ti, t) in src.list.iter().enumerate() {
            let (p1, plast) = (t[0], t[deg]);
            let z = e(p1, plast);
            let mut goff = vec![0];
            for &g in &gens[deg - 1] {
                goff.push(goff.last().unwrap() + env.dim(g, z));
            }
            for col in 0..src.inner_dim(ti) {
                let b = digits(col, &src.dims[ti]);
                let mut v = Mat::zeros(field, *goff.last().unwrap(), 1);
                let mut put = |u: &[usize], bb: &[usize], elem: &Mat| {
                    let s = tgt.index[u];
                    let g = gen_off[deg - 1][s] + multi_index(bb, &tgt.dims[s]);
                    v.add_block(goff[g], 0, elem);
                };
                put(&t[1..], &b[1..], &c.basis(p1, t[1], b[0]).kron(c.identity(plast)));
                let ids = c.identity(p1).kron(c.identity(plast));
                for i in 1..deg {
                    let comp = c.compose_basis(t[i - 1], t[i], t[i + 1], b[i], b[i - 1]);
                    let mut u = t.clone();
                    u.remove(i);
                    let sign = if i % 2 == 0 { one.clone() } else { field.neg(&one) };
                    for k in 0..comp.rows() {
                        if comp.is_zero_at(k, 0) {
                            continue;
                        }
                        let mut bb = b.clone();
                        bb.splice(i - 1..=i, [k]);
                        put(&u, &bb, &ids.scale(&field.mul(&sign, &comp.get(k, 0))));
                    }
                }
                let mut last = c.identity(p1).kron(&c.basis(t[deg - 1], plast, b[deg - 1]));
                if deg % 2 == 1 {
                    last = last.neg();
                }
                put(&t[..deg], &b[..deg - 1], &last);
                cols.push(v);
            }
        }
        diffs.push(cols);
    }
    let module = regular_bimodule_over(c, env);
    let augmentation = levels[0].list.iter().map(|t| c.identity(t[0]).clone()).collect();
    Resolution {
        module,
        gens,
        diffs,
        augmentation,
        complete: false,
    }
}

/// `Ext^n_{C^e}(C, C)` computed from the materialized bar resolution.
pub fn bar_cohomology(c: &FiniteKCategory, max_deg: usize) -> Vec<usize> {
    let res = bar_resolution(c, max_deg + 1);
    let coeff = res.module.clone();
    ext_from_resolution(&res, &coeff, max_deg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::FieldSpec;
    use crate::kcat::{a2, dual_numbers, point, product_kk};

    #[test]
    fn bar_sizes() {
        let k = point(FieldSpec::Rationals);
        assert!(bar_dims(&k, 4).iter().all(|t| t.bimodule_dim == 1 && t.inner_dim == 1));
        let a = a2(FieldSpec::Rationals);
        assert_eq!(bar_dims(&a, 0)[0].bimodule_dim, 4);
    }

    #[test]
    fn cochain_space_dims() {
        let k = point(FieldSpec::Rationals);
        let env = Arc::new(enveloping(&k));
        let cx = hochschild_cochain_complex(&k, &regular_bimodule_over(&k, env), 3).unwrap();
        assert_eq!(cx.dims, vec![1; 5]);
        let a = a2(FieldSpec::Rationals);
        let env = Arc::new(enveloping(&a));
        let cx = hochschild_cochain_complex(&a, &regular_bimodule_over(&a, env), 1).unwrap();
        assert_eq!(cx.dims[0], 2);
        let d = dual_numbers(FieldSpec::Rationals);
        let env = Arc::new(enveloping(&d));
        let cx = hochschild_cochain_complex(&d, &regular_bimodule_over(&d, env), 3).unwrap();
        assert_eq!(cx.dims, vec![2, 4, 8, 16, 32]);
        assert!(cx.is_complex());
    }

    #[test]
    fn centers() {
        assert_eq!(center(&point(FieldSpec::Rationals)).cols(), 1);
        assert_eq!(center(&a2(FieldSpec::Rationals)).cols(), 1);
        assert_eq!(center(&product_kk(FieldSpec::Rationals)).cols(), 2);
        assert_eq!(center(&dual_numbers(FieldSpec::Rationals)).cols(), 2);
    }

    #[test]
    fn bar_resolution_is_exact_in_low_degrees() {
        for c in [a2(FieldSpec::Rationals), dual_numbers(FieldSpec::Rationals)] {
            bar_resolution(&c, 2).verify().unwrap();
        }
    }
}
