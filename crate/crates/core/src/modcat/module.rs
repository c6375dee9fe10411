use std::sync::Arc;

use rand::Rng;

use crate::error::{Error, Result};
use crate::exactla::{FieldSpec, Mat};
use crate::kcat::{enveloping, opposite, quotient_data, tensor_category, Construction, FiniteKCategory, KFunctor};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn flip(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }
}

/// A finite-dimensional module over a finite category.
///
/// `act[x][y][k]` is the action of the `k`-th basis morphism `x → y`: a
/// `dim M(y) × dim M(x)` matrix for left modules and a `dim M(x) × dim M(y)`
/// matrix for right modules.
#[derive(Clone, Debug)]
pub struct CatModule {
    base: Arc<FiniteKCategory>,
    side: Side,
    dims: Vec<usize>,
    act: Vec<Vec<Vec<Mat>>>,
}

impl PartialEq for CatModule {
    fn eq(&self, other: &Self) -> bool {
        self.side == other.side && self.dims == other.dims && self.act == other.act && same_base(&self.base, &other.base)
    }
}

pub(crate) fn same_base(a: &Arc<FiniteKCategory>, b: &Arc<FiniteKCategory>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// A morphism of modules, one matrix per object.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleMap {
    pub comp: Vec<Mat>,
}

impl ModuleMap {
    /// Checks shapes and the intertwining relation on every basis morphism.
    pub fn check(&self, source: &CatModule, target: &CatModule) -> bool {
        let c = source.base();
        let n = c.num_objects();
        if self.comp.len() != n {
            return false;
        }
        if (0..n).any(|x| self.comp[x].shape() != (target.dim(x), source.dim(x))) {
            return false;
        }
        for x in 0..n {
            for y in 0..n {
                for k in 0..c.dim(x, y) {
                    let ok = match source.side() {
                        Side::Left => target.act(x, y, k).mul(&self.comp[x]) == self.comp[y].mul(source.act(x, y, k)),
                        Side::Right => target.act(x, y, k).mul(&self.comp[y]) == self.comp[x].mul(source.act(x, y, k)),
                    };
                    if !ok {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn compose(&self, then: &ModuleMap) -> ModuleMap {
        ModuleMap {
            comp: self.comp.iter().zip(&then.comp).map(|(a, b)| b.mul(a)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.comp.iter().all(Mat::is_zero)
    }
}

impl CatModule {
    /// Validates shapes, identities and functoriality.
    pub fn new(base: Arc<FiniteKCategory>, side: Side, dims: Vec<usize>, act: Vec<Vec<Vec<Mat>>>) -> Result<Self> {
        let m = CatModule { base, side, dims, act };
        m.check()?;
        Ok(m)
    }

    /// Builds the action table from a closure over basis morphisms `(x, y, k)`.
    pub fn from_fn(
        base: Arc<FiniteKCategory>,
        side: Side,
        dims: Vec<usize>,
        mut f: impl FnMut(usize, usize, usize) -> Mat,
    ) -> Result<Self> {
        let n = base.num_objects();
        if dims.len() != n {
            return Err(Error::InvalidModule("one dimension per object is required".into()));
        }
        let act = (0..n)
            .map(|x| (0..n).map(|y| (0..base.dim(x, y)).map(|k| f(x, y, k)).collect()).collect())
            .collect();
        Self::new(base, side, dims, act)
    }

    pub(crate) fn from_parts_unchecked(
        base: Arc<FiniteKCategory>,
        side: Side,
        dims: Vec<usize>,
        act: Vec<Vec<Vec<Mat>>>,
    ) -> Self {
        CatModule { base, side, dims, act }
    }

    pub fn zero(base: Arc<FiniteKCategory>, side: Side) -> Self {
        let n = base.num_objects();
        let f = base.field();
        let act = (0..n)
            .map(|x| (0..n).map(|y| (0..base.dim(x, y)).map(|_| Mat::zeros(f, 0, 0)).collect()).collect())
            .collect();
        CatModule {
            base,
            side,
            dims: vec![0; n],
            act,
        }
    }

    pub fn base(&self) -> &Arc<FiniteKCategory> {
        &self.base
    }

    pub fn field(&self) -> FieldSpec {
        self.base.field()
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn dim(&self, x: usize) -> usize {
        self.dims[x]
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    /// Action of the `k`-th basis morphism `x → y`.
    pub fn act(&self, x: usize, y: usize, k: usize) -> &Mat {
        &self.act[x][y][k]
    }

    /// Action of an arbitrary morphism vector `v ∈ C(x,y)`.
    pub fn act_vec(&self, x: usize, y: usize, v: &Mat) -> Mat {
        let (r, c) = match self.side {
            Side::Left => (self.dims[y], self.dims[x]),
            Side::Right => (self.dims[x], self.dims[y]),
        };
        let mut out = Mat::zeros(self.field(), r, c);
        for k in 0..v.rows() {
            if !v.is_zero_at(k, 0) {
                out = out.add(&self.act[x][y][k].scale(&v.get(k, 0)));
            }
        }
        out
    }

    fn check(&self) -> Result<()> {
        let c = &self.base;
        let n = c.num_objects();
        let bad = |s: String| Err(Error::InvalidModule(s));
        if self.dims.len() != n || self.act.len() != n {
            return bad("tables do not match the object count".into());
        }
        for x in 0..n {
            for y in 0..n {
                if self.act[x].len() != n || self.act[x][y].len() != c.dim(x, y) {
                    return bad("action table has wrong shape".into());
                }
                let want = match self.side {
                    Side::Left => (self.dims[y], self.dims[x]),
                    Side::Right => (self.dims[x], self.dims[y]),
                };
                for k in 0..c.dim(x, y) {
                    let a = &self.act[x][y][k];
                    if a.shape() != want || a.field() != c.field() {
                        return bad(format!(
                            "action of {} has shape {:?}, expected {:?}",
                            c.hom_labels(x, y)[k],
                            a.shape(),
                            want
                        ));
                    }
                }
            }
        }
        for x in 0..n {
            if !self.act_vec(x, x, c.identity(x)).is_identity() {
                return bad(format!("identity of {} does not act as the identity", c.object_name(x)));
            }
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    for j in 0..c.dim(y, z) {
                        for i in 0..c.dim(x, y) {
                            let gf = c.compose_basis(x, y, z, j, i);
                            let lhs = self.act_vec(x, z, &gf);
                            let rhs = match self.side {
                                Side::Left => self.act[y][z][j].mul(&self.act[x][y][i]),
                                Side::Right => self.act[x][y][i].mul(&self.act[y][z][j]),
                            };
                            if lhs != rhs {
                                return bad(format!(
                                    "action is not functorial at ({}, {})",
                                    c.hom_labels(x, y)[i],
                                    c.hom_labels(y, z)[j]
                                ));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// A right module over `C` as a left module over `C^op` (and vice versa, given the base).
    pub fn to_left(&self) -> CatModule {
        match self.side {
            Side::Left => self.clone(),
            Side::Right => self.flip_over(Arc::new(opposite(&self.base))),
        }
    }

    /// Reinterprets over the opposite category `op`, flipping the side.
    pub fn flip_over(&self, op: Arc<FiniteKCategory>) -> CatModule {
        let n = self.base.num_objects();
        let act = (0..n)
            .map(|x| (0..n).map(|y| self.act[y][x].clone()).collect())
            .collect();
        CatModule {
            base: op,
            side: self.side.flip(),
            dims: self.dims.clone(),
            act,
        }
    }

    /// Restriction to the subspaces spanned by the columns of `spans[x]`.
    pub fn submodule(&self, spans: &[Mat]) -> Result<CatModule> {
        let c = &self.base;
        let n = c.num_objects();
        let spans: Vec<Mat> = spans.iter().map(Mat::column_space).collect();
        let dims = spans.iter().map(Mat::cols).collect();
        CatModule::from_fn(c.clone(), self.side, dims, |x, y, k| {
            let (from, to) = match self.side {
                Side::Left => (x, y),
                Side::Right => (y, x),
            };
            let img = self.act[x][y][k].mul(&spans[from]);
            spans[to]
                .solve(&img)
                .expect("shapes agree")
                .unwrap_or_else(|| panic!("subspaces are not a submodule (object {})", c.object_name(to.min(n - 1))))
        })
    }

    /// Quotient by the submodule spanned by the columns of `spans[x]`.
    pub fn quotient(&self, spans: &[Mat]) -> Result<CatModule> {
        let c = &self.base;
        let data: Vec<_> = spans.iter().map(|s| quotient_data(&s.column_space())).collect();
        let dims = data.iter().map(|d| d.coords.len()).collect();
        CatModule::from_fn(c.clone(), self.side, dims, |x, y, k| {
            let (from, to) = match self.side {
                Side::Left => (x, y),
                Side::Right => (y, x),
            };
            data[to].projection.mul(&self.act[x][y][k]).mul(&data[from].section)
        })
    }

    /// Submodule generated by elements `(x, v)` with `v ∈ M(x)`.
    pub fn generated(&self, elems: &[(usize, Mat)]) -> Vec<Mat> {
        let c = &self.base;
        let n = c.num_objects();
        let f = self.field();
        let mut spans: Vec<Mat> = (0..n).map(|y| Mat::zeros(f, self.dims[y], 0)).collect();
        for (x, v) in elems {
            for y in 0..n {
                let dim = match self.side {
                    Side::Left => c.dim(*x, y),
                    Side::Right => c.dim(y, *x),
                };
                let mut parts = vec![spans[y].clone()];
                for k in 0..dim {
                    parts.push(match self.side {
                        Side::Left => self.act[*x][y][k].mul(v),
                        Side::Right => self.act[y][*x][k].mul(v),
                    });
                }
                let refs: Vec<&Mat> = parts.iter().collect();
                spans[y] = Mat::hstack(f, self.dims[y], &refs).column_space();
            }
        }
        spans
    }

    pub fn direct_sum(&self, other: &CatModule) -> Result<CatModule> {
        if !same_base(&self.base, &other.base) || self.side != other.side {
            return Err(Error::BaseMismatch);
        }
        let f = self.field();
        let dims = self.dims.iter().zip(&other.dims).map(|(a, b)| a + b).collect();
        CatModule::from_fn(self.base.clone(), self.side, dims, |x, y, k| {
            Mat::block_diag(f, &[&self.act[x][y][k], &other.act[x][y][k]])
        })
    }

    /// Direct sum of `k` copies.
    pub fn power(&self, k: usize) -> CatModule {
        let mut out = CatModule::zero(self.base.clone(), self.side);
        for _ in 0..k {
            out = out.direct_sum(self).expect("same base");
        }
        out
    }
}

/// The representable `C(x,−)` (left) or `C(−,x)` (right).
pub fn representable(c: Arc<FiniteKCategory>, x: usize, side: Side) -> Result<CatModule> {
    let n = c.num_objects();
    if x >= n {
        return Err(Error::UnknownObject(format!("#{x}")));
    }
    match side {
        Side::Left => {
            let dims = (0..n).map(|y| c.dim(x, y)).collect();
            let cc = c.clone();
            CatModule::from_fn(c, side, dims, |y, z, k| cc.left_mult(x, y, z, &cc.basis(y, z, k)))
        }
        Side::Right => {
            let dims = (0..n).map(|y| c.dim(y, x)).collect();
            let cc = c.clone();
            CatModule::from_fn(c, side, dims, |y, z, k| cc.right_mult(y, z, x, &cc.basis(y, z, k)))
        }
    }
}

/// Scalar by which `f ∈ End(x)` acts on the simple top of `C(x,−)`.
fn character(c: &FiniteKCategory, x: usize) -> Result<Vec<crate::exactla::Scalar>> {
    let d = c.dim(x, x);
    let f = c.field();
    let mut chi = Vec::with_capacity(d);
    for k in 0..d {
        let l = c.left_mult(x, x, x, &c.basis(x, x, k));
        let p = f.characteristic() as usize;
        let candidates: Vec<crate::exactla::Scalar> = if p == 0 || d % p != 0 {
            let mut tr = f.zero();
            for i in 0..d {
                tr = f.add(&tr, &l.get(i, i));
            }
            vec![f.mul(&tr, &f.inv(&f.from_i64(d as i64)).expect("d invertible"))]
        } else {
            (0..p as i64).map(|v| f.from_i64(v)).collect()
        };
        let found = candidates.into_iter().find(|lam| {
            let mut nil = l.sub(&Mat::identity(f, d).scale(lam));
            let base = nil.clone();
            for _ in 1..d {
                nil = nil.mul(&base);
            }
            nil.is_zero()
        });
        match found {
            Some(lam) => chi.push(lam),
            None => {
                return Err(Error::NotBasic(format!(
                    "End({}) is not local with residue field K",
                    c.object_name(x)
                )))
            }
        }
    }
    Ok(chi)
}

/// The simple module concentrated at `x` (requires `End(x)` local with residue field `K`).
pub fn simple(c: Arc<FiniteKCategory>, x: usize, side: Side) -> Result<CatModule> {
    let n = c.num_objects();
    if x >= n {
        return Err(Error::UnknownObject(format!("#{x}")));
    }
    if c.dim(x, x) == 0 {
        return Err(Error::NotBasic(format!("{} is a zero object", c.object_name(x))));
    }
    let chi = character(&c, x)?;
    let f = c.field();
    let dims: Vec<usize> = (0..n).map(|y| usize::from(y == x)).collect();
    let dd = dims.clone();
    CatModule::from_fn(c, side, dims, |y, z, k| {
        let (r, cc) = match side {
            Side::Left => (dd[z], dd[y]),
            Side::Right => (dd[y], dd[z]),
        };
        if y == x && z == x {
            Mat::from_scalars(f, 1, 1, &[chi[k].clone()])
        } else {
            Mat::zeros(f, r, cc)
        }
    })
    .map_err(|e| Error::NotBasic(format!("simple at object #{x} is not a module: {e}")))
}

/// The regular bimodule `(x,y) ↦ C(x,y)` as a left module over `C^e`.
pub fn regular_bimodule(c: &FiniteKCategory) -> CatModule {
    let env = Arc::new(enveloping(c));
    regular_bimodule_over(c, env)
}

/// As [`regular_bimodule`], reusing an already built enveloping category.
pub fn regular_bimodule_over(c: &FiniteKCategory, env: Arc<FiniteKCategory>) -> CatModule {
    let n = c.num_objects();
    let dims = (0..n * n).map(|o| c.dim(o / n, o % n)).collect();
    CatModule::from_fn(env, Side::Left, dims, |o1, o2, k| {
        let ((x, y), (x2, y2)) = ((o1 / n, o1 % n), (o2 / n, o2 % n));
        // basis (f^op ⊗ g) with f ∈ C(x2, x), g ∈ C(y, y2)
        let dg = c.dim(y, y2);
        let (i, j) = (k / dg, k % dg);
        let rf = c.right_mult(x2, x, y, &c.basis(x2, x, i));
        let lg = c.left_mult(x2, y, y2, &c.basis(y, y2, j));
        lg.mul(&rf)
    })
    .expect("regular bimodule is functorial")
}

/// Linear dual with transposed actions; the side flips.
pub fn dualize(m: &CatModule) -> CatModule {
    let n = m.base.num_objects();
    let act = (0..n)
        .map(|x| (0..n).map(|y| m.act[x][y].iter().map(Mat::transpose).collect()).collect())
        .collect();
    CatModule {
        base: m.base.clone(),
        side: m.side.flip(),
        dims: m.dims.clone(),
        act,
    }
}

/// Result of `N ⊗_C M`.
#[derive(Clone, Debug)]
pub struct TensorProduct {
    pub dim: usize,
    /// `dim × Σ_x dim N(x)·dim M(x)` projection onto the quotient.
    pub projection: Mat,
    /// `Σ_x dim N(x)·dim M(x) × dim` section of the projection.
    pub section: Mat,
    pub offsets: Vec<usize>,
}

/// Coend `N ⊗_C M` of a right module `N` and a left module `M`.
pub fn tensor_over_cat(n: &CatModule, m: &CatModule) -> Result<TensorProduct> {
    if !same_base(&n.base, &m.base) {
        return Err(Error::BaseMismatch);
    }
    if n.side != Side::Right || m.side != Side::Left {
        return Err(Error::SideMismatch("expected a right module and a left module".into()));
    }
    let c = &n.base;
    let f = c.field();
    let k = c.num_objects();
    let mut offsets = Vec::with_capacity(k + 1);
    let mut total = 0;
    for x in 0..k {
        offsets.push(total);
        total += n.dims[x] * m.dims[x];
    }
    offsets.push(total);
    let mut rels = Vec::new();
    for x in 0..k {
        for y in 0..k {
            let cols = n.dims[y] * m.dims[x];
            if cols == 0 {
                continue;
            }
            for b in 0..c.dim(x, y) {
                // n·f ⊗ m − n ⊗ f·m for n ∈ N(y), m ∈ M(x)
                let mut r = Mat::zeros(f, total, cols);
                r.add_block(offsets[x], 0, &n.act[x][y][b].kron(&Mat::identity(f, m.dims[x])));
                r.add_block(offsets[y], 0, &Mat::identity(f, n.dims[y]).kron(&m.act[x][y][b]).neg());
                rels.push(r);
            }
        }
    }
    let refs: Vec<&Mat> = rels.iter().collect();
    let rel = Mat::hstack(f, total, &refs).column_space();
    let data = quotient_data(&rel);
    Ok(TensorProduct {
        dim: data.coords.len(),
        projection: data.projection,
        section: data.section,
        offsets,
    })
}

/// Basis of `Hom(M, N)`; each element is a module map.
pub fn module_hom(m: &CatModule, n: &CatModule) -> Result<Vec<ModuleMap>> {
    if !same_base(&m.base, &n.base) || m.side != n.side {
        return Err(Error::BaseMismatch);
    }
    let c = &m.base;
    let f = c.field();
    let k = c.num_objects();
    let mut offsets = Vec::with_capacity(k + 1);
    let mut total = 0;
    for x in 0..k {
        offsets.push(total);
        total += n.dims[x] * m.dims[x];
    }
    let mut rows = Vec::new();
    for x in 0..k {
        for y in 0..k {
            for b in 0..c.dim(x, y) {
                // left: N_f X_x − X_y M_f = 0;  right: N_f X_y − X_x M_f = 0
                let (src, dst) = match m.side {
                    Side::Left => (x, y),
                    Side::Right => (y, x),
                };
                let r = n.dims[dst] * m.dims[src];
                if r == 0 {
                    continue;
                }
                let mut block = Mat::zeros(f, r, total);
                let na = &n.act[x][y][b];
                let ma = &m.act[x][y][b];
                block.add_block(0, offsets[src], &Mat::identity(f, m.dims[src]).kron(na));
                block.add_block(0, offsets[dst], &ma.transpose().kron(&Mat::identity(f, n.dims[dst])).neg());
                rows.push(block);
            }
        }
    }
    let refs: Vec<&Mat> = rows.iter().collect();
    let system = Mat::vstack(f, total, &refs);
    let ker = system.kernel_basis();
    Ok((0..ker.cols())
        .map(|j| ModuleMap {
            comp: (0..k)
                .map(|x| {
                    ker.submatrix(offsets[x], n.dims[x] * m.dims[x], j, 1)
                        .unvectorize(n.dims[x], m.dims[x])
                })
                .collect(),
        })
        .collect())
}

/// `M ⊗̄ N`: a right `C`-module and a left `D`-module give a left module over `C^op ⊗ D`.
pub fn outer_tensor(m: &CatModule, n: &CatModule) -> Result<CatModule> {
    if m.side != Side::Right || n.side != Side::Left {
        return Err(Error::SideMismatch("outer tensor takes a right and a left module".into()));
    }
    let (c, d) = (&m.base, &n.base);
    let base = if same_base(c, d) {
        Arc::new(enveloping(c))
    } else {
        Arc::new(tensor_category(&opposite(c), d)?)
    };
    outer_tensor_over(m, n, base)
}

/// As [`outer_tensor`], with the tensor category supplied.
pub fn outer_tensor_over(m: &CatModule, n: &CatModule, base: Arc<FiniteKCategory>) -> Result<CatModule> {
    let (c, d) = (&m.base, &n.base);
    let nd = d.num_objects();
    if base.num_objects() != c.num_objects() * nd {
        return Err(Error::BaseMismatch);
    }
    let dims = (0..base.num_objects()).map(|o| m.dims[o / nd] * n.dims[o % nd]).collect();
    CatModule::from_fn(base, Side::Left, dims, |o1, o2, k| {
        let ((a, b), (a2, b2)) = ((o1 / nd, o1 % nd), (o2 / nd, o2 % nd));
        let dd = d.dim(b, b2);
        let (i, j) = (k / dd, k % dd);
        // f ∈ C(a2, a) acts M(a) → M(a2)
        m.act[a2][a][i].kron(&n.act[b][b2][j])
    })
}

fn tensor_factors(base: &FiniteKCategory) -> Result<(FiniteKCategory, FiniteKCategory)> {
    match base.construction() {
        Some(Construction::Tensor { left, right }) => Ok(((**left).clone(), (**right).clone())),
        _ => Err(Error::BaseMismatch),
    }
}

/// `F ⊠_C G` for `F` a left `C`-module and `G` a left `C^op ⊗ D`-module: the left `D`-module `d ↦ F ⊗_C G(−,d)`.
pub fn boxtimes(f: &CatModule, g: &CatModule) -> Result<CatModule> {
    if f.side != Side::Left || g.side != Side::Left {
        return Err(Error::SideMismatch("⊠ takes left modules".into()));
    }
    let (cop, d) = tensor_factors(&g.base)?;
    let c = &f.base;
    if opposite(c) != cop {
        return Err(Error::BaseMismatch);
    }
    let nd = d.num_objects();
    let d = Arc::new(d);
    let slices: Vec<CatModule> = (0..nd).map(|b| slice_right(g, c.clone(), b, nd)).collect();
    let tensors: Vec<TensorProduct> = slices
        .iter()
        .map(|s| tensor_over_cat(s, f))
        .collect::<Result<_>>()?;
    let dims = tensors.iter().map(|t| t.dim).collect();
    let field = c.field();
    let nc = c.num_objects();
    CatModule::from_fn(d.clone(), Side::Left, dims, |b1, b2, k| {
        // 1 ⊗ h on each summand G(a,b1) ⊗ F(a) → G(a,b2) ⊗ F(a)
        let (t1, t2) = (&tensors[b1], &tensors[b2]);
        let mut big = Mat::zeros(field, t2.projection.cols(), t1.projection.cols());
        for a in 0..nc {
            let idx = |b: usize| a * nd + b;
            let h = d.dim(b1, b2);
            if f.dims[a] == 0 || cop.dim(a, a) == 0 {
                continue;
            }
            // basis of (C^op ⊗ D)((a,b1),(a,b2)) is i·h + j; act with 1_a ⊗ h_k
            let mut acc = Mat::zeros(field, g.dims[idx(b2)], g.dims[idx(b1)]);
            let ida = cop.identity(a);
            for i in 0..cop.dim(a, a) {
                if !ida.is_zero_at(i, 0) {
                    acc = acc.add(&g.act[idx(b1)][idx(b2)][i * h + k].scale(&ida.get(i, 0)));
                }
            }
            big.set_block(t2.offsets[a], t1.offsets[a], &acc.kron(&Mat::identity(field, f.dims[a])));
        }
        t2.projection.mul(&big).mul(&t1.section)
    })
}

/// The right `C`-module `a ↦ G(a, b)` from a left module over `C^op ⊗ D`.
fn slice_right(g: &CatModule, c: Arc<FiniteKCategory>, b: usize, nd: usize) -> CatModule {
    let (_, d) = tensor_factors(&g.base).expect("tensor base");
    let nc = c.num_objects();
    let field = c.field();
    let dims: Vec<usize> = (0..nc).map(|a| g.dims[a * nd + b]).collect();
    let idb = d.identity(b).clone();
    let hb = d.dim(b, b);
    let act = (0..nc)
        .map(|x| {
            (0..nc)
                .map(|y| {
                    (0..c.dim(x, y))
                        .map(|k| {
                            // f: x → y in C is f^op: y → x in C^op; acts G(y,b) → G(x,b)
                            let mut acc = Mat::zeros(field, dims[x], dims[y]);
                            for j in 0..hb {
                                if !idb.is_zero_at(j, 0) {
                                    acc = acc.add(&g.act[y * nd + b][x * nd + b][k * hb + j].scale(&idb.get(j, 0)));
                                }
                            }
                            acc
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    CatModule::from_parts_unchecked(c, Side::Right, dims, act)
}

/// The left `D`-module `b ↦ G(a, b)` from a left module over `C^op ⊗ D`.
fn slice_left(g: &CatModule, cop: &FiniteKCategory, d: Arc<FiniteKCategory>, a: usize) -> CatModule {
    let nd = d.num_objects();
    let field = d.field();
    let dims: Vec<usize> = (0..nd).map(|b| g.dims[a * nd + b]).collect();
    let ida = cop.identity(a).clone();
    let ha = cop.dim(a, a);
    let act = (0..nd)
        .map(|x| {
            (0..nd)
                .map(|y| {
                    (0..d.dim(x, y))
                        .map(|k| {
                            let mut acc = Mat::zeros(field, dims[y], dims[x]);
                            for i in 0..ha {
                                if !ida.is_zero_at(i, 0) {
                                    acc = acc.add(&g.act[a * nd + x][a * nd + y][i * d.dim(x, y) + k].scale(&ida.get(i, 0)));
                                }
                            }
                            acc
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    CatModule::from_parts_unchecked(d, Side::Left, dims, act)
}

/// `G(−, b)` as a right `C`-module, for `G` a left module over `C^op ⊗ D`.
pub fn column_module(g: &CatModule, c: Arc<FiniteKCategory>, b: usize) -> Result<CatModule> {
    let (cop, d) = tensor_factors(&g.base)?;
    if g.side != Side::Left || opposite(&c) != cop || b >= d.num_objects() {
        return Err(Error::BaseMismatch);
    }
    Ok(slice_right(g, c, b, d.num_objects()))
}

/// `G(a, −)` as a left `D`-module, for `G` a left module over `C^op ⊗ D`.
pub fn row_module(g: &CatModule, a: usize) -> Result<CatModule> {
    let (cop, d) = tensor_factors(&g.base)?;
    if g.side != Side::Left || a >= cop.num_objects() {
        return Err(Error::BaseMismatch);
    }
    Ok(slice_left(g, &cop, Arc::new(d), a))
}

/// `G ⊠_D H` for `G` a left `C^op ⊗ D`-module and `H` a right `D`-module: the right `C`-module `a ↦ G(a,−) ⊗_D H`.
pub fn boxtimes_right(g: &CatModule, h: &CatModule, c: Arc<FiniteKCategory>) -> Result<CatModule> {
    if g.side != Side::Left || h.side != Side::Right {
        return Err(Error::SideMismatch("expected a left module over C^op ⊗ D and a right D-module".into()));
    }
    let (cop, d) = tensor_factors(&g.base)?;
    if !same_base(&Arc::new(d.clone()), &h.base) || opposite(&c) != cop {
        return Err(Error::BaseMismatch);
    }
    let d = h.base.clone();
    let (nc, nd) = (c.num_objects(), d.num_objects());
    let field = c.field();
    let slices: Vec<CatModule> = (0..nc).map(|a| slice_left(g, &cop, d.clone(), a)).collect();
    let tensors: Vec<TensorProduct> = slices
        .iter()
        .map(|s| tensor_over_cat(h, s))
        .collect::<Result<_>>()?;
    let dims = tensors.iter().map(|t| t.dim).collect();
    CatModule::from_fn(c.clone(), Side::Right, dims, |a1, a2, k| {
        // f: a1 → a2 in C acts G(a2, b) → G(a1, b) via f^op ⊗ 1_b
        let (t1, t2) = (&tensors[a1], &tensors[a2]);
        let mut big = Mat::zeros(field, t1.projection.cols(), t2.projection.cols());
        for b in 0..nd {
            let hb = d.dim(b, b);
            if h.dims[b] == 0 || hb == 0 {
                continue;
            }
            let idb = d.identity(b);
            let mut acc = Mat::zeros(field, g.dims[a1 * nd + b], g.dims[a2 * nd + b]);
            for j in 0..hb {
                if !idb.is_zero_at(j, 0) {
                    acc = acc.add(&g.act[a2 * nd + b][a1 * nd + b][k * hb + j].scale(&idb.get(j, 0)));
                }
            }
            big.set_block(t1.offsets[b], t2.offsets[b], &Mat::identity(field, h.dims[b]).kron(&acc));
        }
        t1.projection.mul(&big).mul(&t2.section)
    })
}

/// `Hom_K(F(−), K^a)` for a left module `F`: the right module `D(F)^a`.
pub fn hom_into_vector_space(f: &CatModule, a: usize) -> CatModule {
    dualize(f).power(a)
}

/// A random module: a quotient or submodule of a small random free module.
pub fn random_module<R: Rng>(c: Arc<FiniteKCategory>, side: Side, rng: &mut R) -> CatModule {
    let n = c.num_objects();
    let field = c.field();
    let mut free = CatModule::zero(c.clone(), side);
    let gens = rng.gen_range(1..=2);
    for _ in 0..gens {
        let x = rng.gen_range(0..n);
        let r = representable(c.clone(), x, side).expect("object exists");
        free = free.direct_sum(&r).expect("same base");
    }
    let mut elems = Vec::new();
    for _ in 0..rng.gen_range(0..=2) {
        let x = rng.gen_range(0..n);
        if free.dim(x) == 0 {
            continue;
        }
        let vals: Vec<i64> = (0..free.dim(x)).map(|_| rng.gen_range(-1..=1)).collect();
        let v = Mat::from_i64_rows(field, &vals.iter().map(|&v| vec![v]).collect::<Vec<_>>());
        elems.push((x, v));
    }
    let sub = free.generated(&elems);
    if rng.gen_bool(0.5) {
        free.quotient(&sub).expect("quotient module")
    } else if sub.iter().all(|s| s.cols() == 0) {
        free
    } else {
        free.submodule(&sub).expect("submodule")
    }
}

/// Restriction `F ∘ Φ` of a module along a K-functor into its base.
pub fn pullback(f: &CatModule, phi: &KFunctor) -> Result<CatModule> {
    if !same_base(f.base(), &phi.target) {
        return Err(Error::BaseMismatch);
    }
    let c = &phi.source;
    let om = &phi.object_map;
    let dims = (0..c.num_objects()).map(|x| f.dim(om[x])).collect();
    CatModule::from_fn(c.clone(), f.side(), dims, |x, y, k| {
        f.act_vec(om[x], om[y], &phi.apply(x, y, &c.basis(x, y, k)))
    })
}
