//! Two-sided ideals of finite K-categories.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactla::Mat;
use crate::kcat::{opposite, FiniteKCategory};
use crate::modcat::{CatModule, Side};

/// A two-sided ideal; `span(x,y)` holds an echelonized basis of `I(x,y)` as columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoSidedIdeal {
    parent: Arc<FiniteKCategory>,
    spans: Vec<Vec<Mat>>,
}

impl TwoSidedIdeal {
    /// Wraps spans after echelonizing them and checking closure.
    pub fn from_spans(parent: Arc<FiniteKCategory>, spans: Vec<Vec<Mat>>) -> Result<Self> {
        let n = parent.num_objects();
        if spans.len() != n || spans.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidIdeal("span table has wrong shape".into()));
        }
        for x in 0..n {
            for y in 0..n {
                if spans[x][y].rows() != parent.dim(x, y) {
                    return Err(Error::InvalidIdeal(format!(
                        "span at ({}, {}) has the wrong number of rows",
                        parent.object_name(x),
                        parent.object_name(y)
                    )));
                }
            }
        }
        let spans = spans
            .into_iter()
            .map(|row| row.into_iter().map(|s| s.column_space()).collect())
            .collect();
        let i = TwoSidedIdeal { parent, spans };
        i.check()?;
        Ok(i)
    }

    pub fn zero(parent: Arc<FiniteKCategory>) -> Self {
        let n = parent.num_objects();
        let f = parent.field();
        let spans = (0..n)
            .map(|x| (0..n).map(|y| Mat::zeros(f, parent.dim(x, y), 0)).collect())
            .collect();
        TwoSidedIdeal { parent, spans }
    }

    /// The ideal of all morphisms.
    pub fn whole(parent: Arc<FiniteKCategory>) -> Self {
        let n = parent.num_objects();
        let f = parent.field();
        let spans = (0..n)
            .map(|x| (0..n).map(|y| Mat::identity(f, parent.dim(x, y))).collect())
            .collect();
        TwoSidedIdeal { parent, spans }
    }

    pub fn parent(&self) -> &Arc<FiniteKCategory> {
        &self.parent
    }

    pub fn span(&self, x: usize, y: usize) -> &Mat {
        &self.spans[x][y]
    }

    pub fn dim(&self, x: usize, y: usize) -> usize {
        self.spans[x][y].cols()
    }

    pub fn total_dim(&self) -> usize {
        self.spans.iter().flatten().map(Mat::cols).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    /// Re-verifies full column rank and closure under composition on both sides.
    pub fn check(&self) -> Result<()> {
        let c = &self.parent;
        let n = c.num_objects();
        for x in 0..n {
            for y in 0..n {
                let s = &self.spans[x][y];
                if s.rank() != s.cols() {
                    return Err(Error::InvalidIdeal("span is not linearly independent".into()));
                }
                if s.cols() == 0 {
                    continue;
                }
                for z in 0..n {
                    for k in 0..c.dim(y, z) {
                        let img = c.left_mult(x, y, z, &c.basis(y, z, k)).mul(s);
                        if !self.spans[x][z].contains_columns(&img) {
                            return Err(Error::InvalidIdeal(format!(
                                "not closed under postcomposition with {}",
                                c.hom_labels(y, z)[k]
                            )));
                        }
                    }
                    for k in 0..c.dim(z, x) {
                        let img = c.right_mult(z, x, y, &c.basis(z, x, k)).mul(s);
                        if !self.spans[z][y].contains_columns(&img) {
                            return Err(Error::InvalidIdeal(format!(
                                "not closed under precomposition with {}",
                                c.hom_labels(z, x)[k]
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// Smallest two-sided ideal containing the given morphisms `(x, y, coordinates)`.
pub fn ideal_from_generators(c: Arc<FiniteKCategory>, gens: &[(usize, usize, Mat)]) -> Result<TwoSidedIdeal> {
    let n = c.num_objects();
    let f = c.field();
    let mut spans: Vec<Vec<Mat>> = (0..n)
        .map(|x| (0..n).map(|y| Mat::zeros(f, c.dim(x, y), 0)).collect())
        .collect();
    for (x, y, v) in gens {
        let (x, y) = (*x, *y);
        if x >= n || y >= n {
            return Err(Error::UnknownObject(format!("#{}", x.max(y))));
        }
        if v.rows() != c.dim(x, y) || v.cols() != 1 {
            return Err(Error::CoordinateMismatch {
                x: c.object_name(x).to_string(),
                y: c.object_name(y).to_string(),
                expected: c.dim(x, y),
                got: v.rows(),
            });
        }
        spans[x][y] = Mat::hstack(f, c.dim(x, y), &[&spans[x][y], v]).column_space();
    }
    let cap = c.total_hom_dim() + 1;
    let mut rounds = 0;
    loop {
        let mut grew = false;
        for x in 0..n {
            for y in 0..n {
                if spans[x][y].cols() == 0 {
                    continue;
                }
                for z in 0..n {
                    let mut post = vec![spans[x][z].clone()];
                    for k in 0..c.dim(y, z) {
                        post.push(c.left_mult(x, y, z, &c.basis(y, z, k)).mul(&spans[x][y]));
                    }
                    let refs: Vec<&Mat> = post.iter().collect();
                    let joined = Mat::hstack(f, c.dim(x, z), &refs).column_space();
                    if joined.cols() > spans[x][z].cols() {
                        spans[x][z] = joined;
                        grew = true;
                    }
                    let mut pre = vec![spans[z][y].clone()];
                    for k in 0..c.dim(z, x) {
                        pre.push(c.right_mult(z, x, y, &c.basis(z, x, k)).mul(&spans[x][y]));
                    }
                    let refs: Vec<&Mat> = pre.iter().collect();
                    let joined = Mat::hstack(f, c.dim(z, y), &refs).column_space();
                    if joined.cols() > spans[z][y].cols() {
                        spans[z][y] = joined;
                        grew = true;
                    }
                }
            }
        }
        if !grew {
            break;
        }
        rounds += 1;
        assert!(rounds <= cap, "ideal saturation exceeded its iteration cap");
    }
    TwoSidedIdeal::from_spans(c, spans)
}

/// `I·J`: spans of all `g ∘ f` with `f ∈ J(x,y)`, `g ∈ I(y,z)`.
pub fn ideal_product(i: &TwoSidedIdeal, j: &TwoSidedIdeal) -> Result<TwoSidedIdeal> {
    if i.parent != j.parent && *i.parent != *j.parent {
        return Err(Error::BaseMismatch);
    }
    let c = &i.parent;
    let n = c.num_objects();
    let f = c.field();
    let spans = (0..n)
        .map(|x| {
            (0..n)
                .map(|z| {
                    let parts: Vec<Mat> = (0..n)
                        .map(|y| c.comp_matrix(x, y, z).mul(&i.span(y, z).kron(j.span(x, y))))
                        .collect();
                    let refs: Vec<&Mat> = parts.iter().collect();
                    Mat::hstack(f, c.dim(x, z), &refs)
                })
                .collect()
        })
        .collect();
    TwoSidedIdeal::from_spans(c.clone(), spans)
}

/// Whether `I·I = I`.
pub fn is_idempotent(i: &TwoSidedIdeal) -> bool {
    ideal_product(i, i).map(|p| p == *i).unwrap_or(false)
}

/// The kernel of the projection of a triangular matrix category onto its `U` block.
pub fn triangular_ideal(lambda: Arc<FiniteKCategory>) -> Result<TwoSidedIdeal> {
    let nt = lambda.triangular_blocks().ok_or(Error::NotTriangular)?.t.num_objects();
    let n = lambda.num_objects();
    let f = lambda.field();
    let spans = (0..n)
        .map(|x| {
            (0..n)
                .map(|y| {
                    if x < nt {
                        Mat::identity(f, lambda.dim(x, y))
                    } else {
                        Mat::zeros(f, lambda.dim(x, y), 0)
                    }
                })
                .collect()
        })
        .collect();
    TwoSidedIdeal::from_spans(lambda, spans)
}

/// The left module `y ↦ I(x,y)` with action by postcomposition.
pub fn representable_ideal_module(i: &TwoSidedIdeal, x: usize) -> Result<CatModule> {
    let c = i.parent();
    let n = c.num_objects();
    if x >= n {
        return Err(Error::UnknownObject(format!("#{x}")));
    }
    let dims = (0..n).map(|y| i.dim(x, y)).collect();
    CatModule::from_fn(c.clone(), Side::Left, dims, |y, z, k| {
        let img = c.left_mult(x, y, z, &c.basis(y, z, k)).mul(i.span(x, y));
        i.span(x, z).solve_exact(&img)
    })
}

/// The same ideal seen inside the opposite category.
pub fn opposite_ideal(i: &TwoSidedIdeal) -> TwoSidedIdeal {
    let op = Arc::new(opposite(i.parent()));
    let n = op.num_objects();
    let spans = (0..n).map(|x| (0..n).map(|y| i.span(y, x).clone()).collect()).collect();
    TwoSidedIdeal { parent: op, spans }
}
