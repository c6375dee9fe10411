use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactla::Mat;
use crate::ideals::TwoSidedIdeal;
use crate::kcat::{opposite, FiniteKCategory};

use super::module::{module_hom, representable, same_base, CatModule, ModuleMap, Side};

/// Default truncation degree for resolutions, Ext and Tor.
pub const DEFAULT_MAX_DEG: usize = 4;

/// `⊕_j C(x_j, −)` for a list of generator objects.
pub fn free_module(c: &Arc<FiniteKCategory>, gens: &[usize]) -> CatModule {
    let mut out = CatModule::zero(c.clone(), Side::Left);
    for &x in gens {
        out = out.direct_sum(&representable(c.clone(), x, Side::Left).expect("object exists")).expect("same base");
    }
    out
}

/// Offsets of the summands `C(x_j, z)` inside `⊕_j C(x_j, z)`.
fn free_offsets(c: &FiniteKCategory, gens: &[usize], z: usize) -> Vec<usize> {
    let mut off = Vec::with_capacity(gens.len() + 1);
    let mut t = 0;
    for &x in gens {
        off.push(t);
        t += c.dim(x, z);
    }
    off.push(t);
    off
}

/// A generating set `(x_j, v_j ∈ M(x_j))` of a left module.
///
/// Generators are added object by object outside the span of what is already
/// generated, then dropped one at a time when the rest still generate.
pub fn cover(m: &CatModule) -> Vec<(usize, Mat)> {
    let n = m.base().num_objects();
    let field = m.field();
    let mut gens: Vec<(usize, Mat)> = Vec::new();
    for x in 0..n {
        let spans = m.generated(&gens);
        let mut span = spans[x].clone();
        for i in 0..m.dim(x) {
            let e = Mat::unit(field, m.dim(x), i);
            if span.contains_columns(&e) {
                continue;
            }
            gens.push((x, e));
            span = m.generated(&gens)[x].clone();
        }
    }
    let mut j = gens.len();
    while j > 0 {
        j -= 1;
        let mut rest = gens.clone();
        rest.remove(j);
        let spans = m.generated(&rest);
        if (0..n).all(|x| spans[x].cols() == m.dim(x)) {
            gens = rest;
        }
    }
    gens
}

/// A truncated projective resolution `P_N → … → P_0 → M → 0` of a left module.
///
/// `gens[k]` lists the generator objects of `P_k`. For `k ≥ 1`, `diffs[k-1][j]`
/// is the image of the identity of the `j`-th generator of `P_k`, as a
/// column vector in `P_{k-1}(x_j)`. `augmentation[j] ∈ M(x_j)` is the image of
/// the `j`-th generator of `P_0`.
#[derive(Clone, Debug)]
pub struct Resolution {
    pub module: CatModule,
    pub gens: Vec<Vec<usize>>,
    pub diffs: Vec<Vec<Mat>>,
    pub augmentation: Vec<Mat>,
    /// Whether the top differential is injective, so the resolution is finished.
    pub complete: bool,
}

impl Resolution {
    pub fn base(&self) -> &Arc<FiniteKCategory> {
        self.module.base()
    }

    /// Highest degree present.
    pub fn length(&self) -> usize {
        self.gens.len() - 1
    }

    pub fn rank(&self, k: usize) -> usize {
        self.gens[k].len()
    }

    pub fn term(&self, k: usize) -> CatModule {
        free_module(self.base(), &self.gens[k])
    }

    /// Component `(i, j)` of `d_k`: the morphism `y_i → x_j` of the `i`-th generator of `P_{k-1}` to the `j`-th of `P_k`.
    pub fn diff_entry(&self, k: usize, i: usize, j: usize) -> Mat {
        let c = self.base();
        let (src, tgt) = (&self.gens[k], &self.gens[k - 1]);
        let x = src[j];
        let off = free_offsets(c, tgt, x);
        self.diffs[k - 1][j].submatrix(off[i], c.dim(tgt[i], x), 0, 1)
    }

    /// `d_k : P_k → P_{k-1}` evaluated at object `z`.
    pub fn diff_at(&self, k: usize, z: usize) -> Mat {
        let c = self.base();
        let field = c.field();
        let (src, tgt) = (&self.gens[k], &self.gens[k - 1]);
        let (so, to) = (free_offsets(c, src, z), free_offsets(c, tgt, z));
        let mut out = Mat::zeros(field, to[tgt.len()], so[src.len()]);
        for (j, &x) in src.iter().enumerate() {
            for (i, &y) in tgt.iter().enumerate() {
                let d = self.diff_entry(k, i, j);
                if d.is_zero() {
                    continue;
                }
                out.set_block(to[i], so[j], &c.right_mult(y, x, z, &d));
            }
        }
        out
    }

    /// `P_0 → M` evaluated at object `z`.
    pub fn augmentation_at(&self, z: usize) -> Mat {
        let c = self.base();
        let field = c.field();
        let gens = &self.gens[0];
        let so = free_offsets(c, gens, z);
        let m = &self.module;
        let mut out = Mat::zeros(field, m.dim(z), so[gens.len()]);
        for (j, &x) in gens.iter().enumerate() {
            for k in 0..c.dim(x, z) {
                let col = m.act(x, z, k).mul(&self.augmentation[j]);
                out.set_block(0, so[j] + k, &col);
            }
        }
        out
    }

    pub fn diff(&self, k: usize) -> ModuleMap {
        ModuleMap {
            comp: (0..self.base().num_objects()).map(|z| self.diff_at(k, z)).collect(),
        }
    }

    pub fn augmentation_map(&self) -> ModuleMap {
        ModuleMap {
            comp: (0..self.base().num_objects()).map(|z| self.augmentation_at(z)).collect(),
        }
    }

    /// Checks that the maps are module maps, composites vanish, the augmentation
    /// is onto and the complex is exact in every degree below the top.
    pub fn verify(&self) -> Result<()> {
        let c = self.base();
        let n = c.num_objects();
        let bad = |s: String| Err(Error::InvalidModule(s));
        if !self.augmentation_map().check(&self.term(0), &self.module) {
            return bad("augmentation is not a module map".into());
        }
        for k in 1..=self.length() {
            if !self.diff(k).check(&self.term(k), &self.term(k - 1)) {
                return bad(format!("d_{k} is not a module map"));
            }
        }
        for z in 0..n {
            let eps = self.augmentation_at(z);
            if eps.rank() != self.module.dim(z) {
                return bad(format!("augmentation is not onto at {}", c.object_name(z)));
            }
            let mut prev = eps;
            for k in 1..=self.length() {
                let d = self.diff_at(k, z);
                if !prev.mul(&d).is_zero() {
                    return bad(format!("composite through degree {k} is nonzero"));
                }
                if prev.cols() - prev.rank() != d.rank() {
                    return bad(format!("not exact at degree {} over {}", k - 1, c.object_name(z)));
                }
                prev = d;
            }
        }
        Ok(())
    }
}

/// Resolution of a left module up to degree `max_deg`.
pub fn projective_resolution(m: &CatModule, max_deg: usize) -> Result<Resolution> {
    if m.side() != Side::Left {
        return Err(Error::SideMismatch("resolutions are built for left modules".into()));
    }
    let c = m.base().clone();
    let n = c.num_objects();
    let top = cover(m);
    let mut gens = vec![top.iter().map(|(x, _)| *x).collect::<Vec<_>>()];
    let augmentation: Vec<Mat> = top.into_iter().map(|(_, v)| v).collect();
    let mut res = Resolution {
        module: m.clone(),
        gens: gens.clone(),
        diffs: Vec::new(),
        augmentation,
        complete: false,
    };
    let mut prev_map: Vec<Mat> = (0..n).map(|z| res.augmentation_at(z)).collect();
    for k in 1..=max_deg {
        let p = free_module(&c, &gens[k - 1]);
        let spans: Vec<Mat> = prev_map.iter().map(Mat::kernel_basis).collect();
        if spans.iter().all(|s| s.cols() == 0) {
            res.complete = true;
            break;
        }
        let kernel = p.submodule(&spans)?;
        let kspans: Vec<Mat> = (0..n).map(|z| spans[z].column_space()).collect();
        let g = cover(&kernel);
        gens.push(g.iter().map(|(x, _)| *x).collect());
        res.gens = gens.clone();
        res.diffs.push(g.iter().map(|(x, v)| kspans[*x].mul(v)).collect());
        prev_map = (0..n).map(|z| res.diff_at(k, z)).collect();
    }
    res.gens = gens;
    if !res.complete {
        res.complete = (0..n).all(|z| prev_map[z].rank() == prev_map[z].cols());
    }
    Ok(res)
}

fn cohomology_dims(maps: &[Mat], dims: &[usize]) -> Vec<usize> {
    // maps[k]: C^k → C^{k+1}
    (0..dims.len())
        .map(|k| {
            let out_rank = if k < maps.len() { maps[k].rank() } else { 0 };
            let in_rank = if k > 0 { maps[k - 1].rank() } else { 0 };
            dims[k] - out_rank - in_rank
        })
        .collect()
}

/// Both modules as left modules over a common base.
fn as_left_pair(m: &CatModule, n: &CatModule) -> Result<(CatModule, CatModule)> {
    if !same_base(m.base(), n.base()) || m.side() != n.side() {
        return Err(Error::BaseMismatch);
    }
    match m.side() {
        Side::Left => Ok((m.clone(), n.clone())),
        Side::Right => {
            let op = Arc::new(opposite(m.base()));
            Ok((m.flip_over(op.clone()), n.flip_over(op)))
        }
    }
}

/// `Hom(P_•, N)` from a resolution: cochain dims and coboundary matrices.
pub fn hom_complex(res: &Resolution, n: &CatModule) -> (Vec<usize>, Vec<Mat>) {
    let c = res.base();
    let field = c.field();
    let len = res.length();
    let dims: Vec<usize> = (0..=len).map(|k| res.gens[k].iter().map(|&x| n.dim(x)).sum()).collect();
    let offs = |k: usize| {
        let mut o = vec![0];
        for &x in &res.gens[k] {
            o.push(o.last().unwrap() + n.dim(x));
        }
        o
    };
    let maps = (0..len)
        .map(|k| {
            let (oi, oj) = (offs(k), offs(k + 1));
            let mut delta = Mat::zeros(field, dims[k + 1], dims[k]);
            for (j, &x) in res.gens[k + 1].iter().enumerate() {
                for (i, &y) in res.gens[k].iter().enumerate() {
                    let d = res.diff_entry(k + 1, i, j);
                    if !d.is_zero() {
                        delta.set_block(oj[j], oi[i], &n.act_vec(y, x, &d));
                    }
                }
            }
            delta
        })
        .collect();
    (dims, maps)
}

/// `Ext^0 … Ext^N` of two modules on the same side.
pub fn ext(m: &CatModule, n: &CatModule, max_deg: usize) -> Result<Vec<usize>> {
    let (m, n) = as_left_pair(m, n)?;
    let res = projective_resolution(&m, max_deg + 1)?;
    Ok(ext_from_resolution(&res, &n, max_deg))
}

/// Ext dims from an existing resolution of the first argument.
pub fn ext_from_resolution(res: &Resolution, n: &CatModule, max_deg: usize) -> Vec<usize> {
    let (dims, maps) = hom_complex(res, n);
    let mut out = cohomology_dims(&maps, &dims);
    out.resize(max_deg + 1, 0);
    out.truncate(max_deg + 1);
    out
}

/// `N ⊗ P_•` from a resolution of a left module and a right module `N`.
pub fn tensor_complex(n: &CatModule, res: &Resolution) -> (Vec<usize>, Vec<Mat>) {
    let c = res.base();
    let field = c.field();
    let len = res.length();
    let dims: Vec<usize> = (0..=len).map(|k| res.gens[k].iter().map(|&x| n.dim(x)).sum()).collect();
    let offs = |k: usize| {
        let mut o = vec![0];
        for &x in &res.gens[k] {
            o.push(o.last().unwrap() + n.dim(x));
        }
        o
    };
    let maps = (0..len)
        .map(|k| {
            // boundary N ⊗ P_{k+1} → N ⊗ P_k
            let (oi, oj) = (offs(k), offs(k + 1));
            let mut b = Mat::zeros(field, dims[k], dims[k + 1]);
            for (j, &x) in res.gens[k + 1].iter().enumerate() {
                for (i, &y) in res.gens[k].iter().enumerate() {
                    let d = res.diff_entry(k + 1, i, j);
                    if !d.is_zero() {
                        b.set_block(oi[i], oj[j], &n.act_vec(y, x, &d));
                    }
                }
            }
            b
        })
        .collect();
    (dims, maps)
}

/// `Tor_0 … Tor_N` of a right module `n` and a left module `m`.
pub fn tor(n: &CatModule, m: &CatModule, max_deg: usize) -> Result<Vec<usize>> {
    if !same_base(n.base(), m.base()) {
        return Err(Error::BaseMismatch);
    }
    if n.side() != Side::Right || m.side() != Side::Left {
        return Err(Error::SideMismatch("Tor takes a right module and a left module".into()));
    }
    let res = projective_resolution(m, max_deg + 1)?;
    Ok(tor_from_resolution(n, &res, max_deg))
}

pub fn tor_from_resolution(n: &CatModule, res: &Resolution, max_deg: usize) -> Vec<usize> {
    let (dims, maps) = tensor_complex(n, res);
    // homology: ker(C_k → C_{k-1}) / im(C_{k+1} → C_k); maps[k]: C_{k+1} → C_k
    let mut out: Vec<usize> = (0..dims.len())
        .map(|k| {
            let out_rank = if k > 0 { maps[k - 1].rank() } else { 0 };
            let in_rank = if k < maps.len() { maps[k].rank() } else { 0 };
            dims[k] - out_rank - in_rank
        })
        .collect();
    out.resize(max_deg + 1, 0);
    out.truncate(max_deg + 1);
    out
}

/// Whether the canonical cover `⊕_x C(x,−)^{dim M(x)} → M` splits.
pub fn is_projective(m: &CatModule) -> bool {
    let m = m.to_left();
    let c = m.base().clone();
    let n = c.num_objects();
    let field = c.field();
    let mut gens = Vec::new();
    let mut elems = Vec::new();
    for x in 0..n {
        for i in 0..m.dim(x) {
            gens.push(x);
            elems.push(Mat::unit(field, m.dim(x), i));
        }
    }
    let p = free_module(&c, &gens);
    let res = Resolution {
        module: m.clone(),
        gens: vec![gens],
        diffs: Vec::new(),
        augmentation: elems,
        complete: false,
    };
    let pi: Vec<Mat> = (0..n).map(|z| res.augmentation_at(z)).collect();
    let homs = module_hom(&m, &p).expect("same base");
    let rows: usize = (0..n).map(|z| m.dim(z) * m.dim(z)).sum();
    let cols: Vec<Mat> = homs
        .iter()
        .map(|phi| {
            let parts: Vec<Mat> = (0..n).map(|z| pi[z].mul(&phi.comp[z]).vectorize()).collect();
            let refs: Vec<&Mat> = parts.iter().collect();
            Mat::vstack(field, 1, &refs)
        })
        .collect();
    let refs: Vec<&Mat> = cols.iter().collect();
    let system = Mat::hstack(field, rows, &refs);
    let ids: Vec<Mat> = (0..n).map(|z| Mat::identity(field, m.dim(z)).vectorize()).collect();
    let refs: Vec<&Mat> = ids.iter().collect();
    let target = Mat::vstack(field, 1, &refs);
    matches!(system.solve(&target), Ok(Some(_)))
}

/// `C(x,−)/I(x,−)` as a left module.
pub fn representable_quotient(i: &TwoSidedIdeal, x: usize, side: Side) -> Result<CatModule> {
    let c = i.parent().clone();
    let n = c.num_objects();
    let rep = representable(c, x, side)?;
    let spans: Vec<Mat> = match side {
        Side::Left => (0..n).map(|y| i.span(x, y).clone()).collect(),
        Side::Right => (0..n).map(|y| i.span(y, x).clone()).collect(),
    };
    rep.quotient(&spans)
}

/// Rows `Ext^i(C(x,−)/I(x,−), M)` for each object `x`.
pub fn big_ext_functor(i: &TwoSidedIdeal, m: &CatModule, max_deg: usize) -> Result<Vec<Vec<usize>>> {
    if !same_base(i.parent(), m.base()) {
        return Err(Error::InvalidIdeal("ideal and module live over different categories".into()));
    }
    if m.side() != Side::Left {
        return Err(Error::SideMismatch("expected a left module".into()));
    }
    (0..m.base().num_objects())
        .map(|x| ext(&representable_quotient(i, x, Side::Left)?, m, max_deg))
        .collect()
}

/// Rows `Tor_i(C(−,x)/I(−,x), M)` for each object `x`.
pub fn big_tor_functor(i: &TwoSidedIdeal, m: &CatModule, max_deg: usize) -> Result<Vec<Vec<usize>>> {
    if !same_base(i.parent(), m.base()) {
        return Err(Error::InvalidIdeal("ideal and module live over different categories".into()));
    }
    if m.side() != Side::Left {
        return Err(Error::SideMismatch("expected a left module".into()));
    }
    let res = projective_resolution(m, max_deg + 1)?;
    (0..m.base().num_objects())
        .map(|x| Ok(tor_from_resolution(&representable_quotient(i, x, Side::Right)?, &res, max_deg)))
        .collect()
}
