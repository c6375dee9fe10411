use crate::error::{Error, Result};
use crate::exactla::{FieldSpec, Mat};
use crate::modcat::{CatModule, Side};

use super::category::FiniteKCategory;

/// A `U`-`T` bimodule `M(u, t)`: covariant in `u`, contravariant in `t`.
///
/// `lact[u1][u2][k][t]` is the action of the `k`-th basis morphism
/// `u1 → u2`, a `dim M(u2,t) × dim M(u1,t)` matrix; `ract[t1][t2][k][u]` is
/// the action of the `k`-th basis morphism `t1 → t2`, a
/// `dim M(u,t1) × dim M(u,t2)` matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bimodule {
    pub(crate) u: FiniteKCategory,
    pub(crate) t: FiniteKCategory,
    pub(crate) dims: Vec<Vec<usize>>,
    pub(crate) lact: Vec<Vec<Vec<Vec<Mat>>>>,
    pub(crate) ract: Vec<Vec<Vec<Vec<Mat>>>>,
}

impl Bimodule {
    /// Validates shapes, functoriality of both actions and that they commute.
    pub fn new(
        u: FiniteKCategory,
        t: FiniteKCategory,
        dims: Vec<Vec<usize>>,
        lact: Vec<Vec<Vec<Vec<Mat>>>>,
        ract: Vec<Vec<Vec<Vec<Mat>>>>,
    ) -> Result<Self> {
        if u.field != t.field {
            return Err(Error::FieldMismatch(u.field, t.field));
        }
        let b = Bimodule { u, t, dims, lact, ract };
        b.check()?;
        Ok(b)
    }

    /// The zero bimodule.
    pub fn zero(u: &FiniteKCategory, t: &FiniteKCategory) -> Result<Self> {
        let dims = vec![vec![0; t.num_objects()]; u.num_objects()];
        Self::from_fn(u, t, dims, |_, _, _, _| None, |_, _, _, _| None)
    }

    /// Builds a bimodule from closures returning action matrices; `None` means zero.
    pub fn from_fn(
        u: &FiniteKCategory,
        t: &FiniteKCategory,
        dims: Vec<Vec<usize>>,
        mut left: impl FnMut(usize, usize, usize, usize) -> Option<Mat>,
        mut right: impl FnMut(usize, usize, usize, usize) -> Option<Mat>,
    ) -> Result<Self> {
        let field = u.field;
        let (nu, nt) = (u.num_objects(), t.num_objects());
        if dims.len() != nu || dims.iter().any(|r| r.len() != nt) {
            return Err(Error::InvalidBimodule("dimension table has wrong shape".into()));
        }
        let lact = (0..nu)
            .map(|u1| {
                (0..nu)
                    .map(|u2| {
                        (0..u.dim(u1, u2))
                            .map(|k| {
                                (0..nt)
                                    .map(|tt| {
                                        left(u1, u2, k, tt).unwrap_or_else(|| Mat::zeros(field, dims[u2][tt], dims[u1][tt]))
                                    })
                                    .collect()
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        let ract = (0..nt)
            .map(|t1| {
                (0..nt)
                    .map(|t2| {
                        (0..t.dim(t1, t2))
                            .map(|k| {
                                (0..nu)
                                    .map(|uu| {
                                        right(t1, t2, k, uu).unwrap_or_else(|| Mat::zeros(field, dims[uu][t1], dims[uu][t2]))
                                    })
                                    .collect()
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        Bimodule::new(u.clone(), t.clone(), dims, lact, ract)
    }

    /// A left `U`-module viewed as a `U`-`T` bimodule, where `T` is the one-object category `K`.
    pub fn from_left_module(m: &CatModule, k: &FiniteKCategory) -> Result<Self> {
        if m.side() != Side::Left {
            return Err(Error::InvalidModule("expected a left module".into()));
        }
        if k.num_objects() != 1 || k.dim(0, 0) != 1 {
            return Err(Error::InvalidBimodule("second category must be the one-object category K".into()));
        }
        let u = m.base();
        let dims = (0..u.num_objects()).map(|x| vec![m.dim(x)]).collect();
        let field = u.field;
        let id_coeff = k.identity(0).get(0, 0);
        let inv = field.inv(&id_coeff).expect("identity coordinate is nonzero");
        Self::from_fn(
            u,
            k,
            dims,
            |u1, u2, j, _| Some(m.act(u1, u2, j).clone()),
            |_, _, _, uu| Some(Mat::identity(field, m.dim(uu)).scale(&inv)),
        )
    }

    pub fn field(&self) -> FieldSpec {
        self.u.field
    }

    pub fn u(&self) -> &FiniteKCategory {
        &self.u
    }

    pub fn t(&self) -> &FiniteKCategory {
        &self.t
    }

    /// `dim M(u, t)`.
    pub fn dim(&self, u: usize, t: usize) -> usize {
        self.dims[u][t]
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().flatten().sum()
    }

    pub fn left_action(&self, u1: usize, u2: usize, k: usize, t: usize) -> &Mat {
        &self.lact[u1][u2][k][t]
    }

    pub fn right_action(&self, t1: usize, t2: usize, k: usize, u: usize) -> &Mat {
        &self.ract[t1][t2][k][u]
    }

    /// Action of an arbitrary morphism vector `v ∈ U(u1,u2)` on `M(u1,t)`.
    pub fn left_action_vec(&self, u1: usize, u2: usize, v: &Mat, t: usize) -> Mat {
        let mut out = Mat::zeros(self.field(), self.dims[u2][t], self.dims[u1][t]);
        for k in 0..v.rows() {
            if !v.is_zero_at(k, 0) {
                out = out.add(&self.lact[u1][u2][k][t].scale(&v.get(k, 0)));
            }
        }
        out
    }

    /// Action of an arbitrary morphism vector `v ∈ T(t1,t2)` on `M(u,t2)`.
    pub fn right_action_vec(&self, t1: usize, t2: usize, v: &Mat, u: usize) -> Mat {
        let mut out = Mat::zeros(self.field(), self.dims[u][t1], self.dims[u][t2]);
        for k in 0..v.rows() {
            if !v.is_zero_at(k, 0) {
                out = out.add(&self.ract[t1][t2][k][u].scale(&v.get(k, 0)));
            }
        }
        out
    }

    fn check(&self) -> Result<()> {
        let bad = |s: String| Err(Error::InvalidBimodule(s));
        let (u, t) = (&self.u, &self.t);
        let (nu, nt) = (u.num_objects(), t.num_objects());
        if self.dims.len() != nu || self.dims.iter().any(|r| r.len() != nt) {
            return bad("dimension table has wrong shape".into());
        }
        if self.lact.len() != nu || self.ract.len() != nt {
            return bad("action tables have wrong shape".into());
        }
        for u1 in 0..nu {
            for u2 in 0..nu {
                if self.lact[u1].len() != nu || self.lact[u1][u2].len() != u.dim(u1, u2) {
                    return bad("left action table has wrong shape".into());
                }
                for k in 0..u.dim(u1, u2) {
                    for tt in 0..nt {
                        let a = &self.lact[u1][u2][k][tt];
                        if a.shape() != (self.dims[u2][tt], self.dims[u1][tt]) || a.field() != self.field() {
                            return bad(format!("left action of {} has wrong shape", u.hom[u1][u2][k]));
                        }
                    }
                }
            }
        }
        for t1 in 0..nt {
            for t2 in 0..nt {
                if self.ract[t1].len() != nt || self.ract[t1][t2].len() != t.dim(t1, t2) {
                    return bad("right action table has wrong shape".into());
                }
                for k in 0..t.dim(t1, t2) {
                    for uu in 0..nu {
                        let a = &self.ract[t1][t2][k][uu];
                        if a.shape() != (self.dims[uu][t1], self.dims[uu][t2]) || a.field() != self.field() {
                            return bad(format!("right action of {} has wrong shape", t.hom[t1][t2][k]));
                        }
                    }
                }
            }
        }
        for tt in 0..nt {
            for uu in 0..nu {
                if !self.left_action_vec(uu, uu, u.identity(uu), tt).is_identity() {
                    return bad(format!("identity of {} does not act as the identity", u.objects[uu]));
                }
                if !self.right_action_vec(tt, tt, t.identity(tt), uu).is_identity() {
                    return bad(format!("identity of {} does not act as the identity", t.objects[tt]));
                }
            }
        }
        for x in 0..nu {
            for y in 0..nu {
                for z in 0..nu {
                    for j in 0..u.dim(y, z) {
                        for i in 0..u.dim(x, y) {
                            let gf = u.compose_basis(x, y, z, j, i);
                            for tt in 0..nt {
                                let lhs = self.left_action_vec(x, z, &gf, tt);
                                let rhs = self.lact[y][z][j][tt].mul(&self.lact[x][y][i][tt]);
                                if lhs != rhs {
                                    return bad(format!(
                                        "left action is not functorial at ({}, {})",
                                        u.hom[x][y][i], u.hom[y][z][j]
                                    ));
                                }
                            }
                        }
                    }
                }
            }
        }
        for x in 0..nt {
            for y in 0..nt {
                for z in 0..nt {
                    for j in 0..t.dim(y, z) {
                        for i in 0..t.dim(x, y) {
                            let gf = t.compose_basis(x, y, z, j, i);
                            for uu in 0..nu {
                                let lhs = self.right_action_vec(x, z, &gf, uu);
                                let rhs = self.ract[x][y][i][uu].mul(&self.ract[y][z][j][uu]);
                                if lhs != rhs {
                                    return bad(format!(
                                        "right action is not functorial at ({}, {})",
                                        t.hom[x][y][i], t.hom[y][z][j]
                                    ));
                                }
                            }
                        }
                    }
                }
            }
        }
        for u1 in 0..nu {
            for u2 in 0..nu {
                for kg in 0..u.dim(u1, u2) {
                    for t1 in 0..nt {
                        for t2 in 0..nt {
                            for ks in 0..t.dim(t1, t2) {
                                let a = self.lact[u1][u2][kg][t1].mul(&self.ract[t1][t2][ks][u1]);
                                let b = self.ract[t1][t2][ks][u2].mul(&self.lact[u1][u2][kg][t2]);
                                if a != b {
                                    return bad(format!(
                                        "actions of {} and {} do not commute",
                                        u.hom[u1][u2][kg], t.hom[t1][t2][ks]
                                    ));
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }
}
