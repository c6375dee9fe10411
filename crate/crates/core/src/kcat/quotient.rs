use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactla::Mat;
use crate::ideals::TwoSidedIdeal;

use super::category::{CategoryParts, FiniteKCategory};

/// A K-linear functor between finite categories.
///
/// `morphism_map[x][y]` is the `dim T(Fx,Fy) × dim S(x,y)` matrix of the
/// linear map on Hom spaces.
#[derive(Clone, Debug)]
pub struct KFunctor {
    pub source: Arc<FiniteKCategory>,
    pub target: Arc<FiniteKCategory>,
    pub object_map: Vec<usize>,
    pub morphism_map: Vec<Vec<Mat>>,
}

impl KFunctor {
    pub fn identity(c: Arc<FiniteKCategory>) -> Self {
        let n = c.num_objects();
        let morphism_map = (0..n)
            .map(|x| (0..n).map(|y| Mat::identity(c.field(), c.dim(x, y))).collect())
            .collect();
        KFunctor {
            source: c.clone(),
            target: c,
            object_map: (0..n).collect(),
            morphism_map,
        }
    }

    /// Image of a morphism vector `v ∈ S(x,y)`.
    pub fn apply(&self, x: usize, y: usize, v: &Mat) -> Mat {
        self.morphism_map[x][y].mul(v)
    }

    /// Checks preservation of identities and of composition on all basis pairs.
    pub fn check(&self) -> Result<()> {
        let (s, t) = (&self.source, &self.target);
        let n = s.num_objects();
        let fo = &self.object_map;
        for x in 0..n {
            if self.apply(x, x, s.identity(x)) != *t.identity(fo[x]) {
                return Err(Error::Malformed(format!("functor does not preserve the identity of {}", s.object_name(x))));
            }
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    for j in 0..s.dim(y, z) {
                        for i in 0..s.dim(x, y) {
                            let lhs = self.apply(x, z, &s.compose_basis(x, y, z, j, i));
                            let fg = self.apply(y, z, &s.basis(y, z, j));
                            let ff = self.apply(x, y, &s.basis(x, y, i));
                            let rhs = t.compose(fo[x], fo[y], fo[z], &fg, &ff);
                            if lhs != rhs {
                                return Err(Error::Malformed(format!(
                                    "functor does not preserve the composite of {} and {}",
                                    s.hom_labels(x, y)[i],
                                    s.hom_labels(y, z)[j]
                                )));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// Section and projection for the quotient `C(x,y) / I(x,y)`.
#[derive(Clone, Debug)]
pub(crate) struct QuotientData {
    /// Coordinates of `C(x,y)` kept as the quotient basis.
    pub coords: Vec<usize>,
    /// `d × q` inclusion of the kept coordinates.
    pub section: Mat,
    /// `q × d` projection killing `I(x,y)`.
    pub projection: Mat,
}

pub(crate) fn quotient_data(span: &Mat) -> QuotientData {
    let field = span.field();
    let d = span.rows();
    let coords = span.complement_coordinates();
    let section = Mat::identity(field, d).select_cols(&coords);
    let k = d - coords.len();
    let basis = Mat::hstack(field, d, &[span, &section]);
    let inv = basis.inverse().expect("ideal basis completed by unit vectors is invertible");
    let projection = inv.submatrix(k, coords.len(), 0, d);
    QuotientData {
        coords,
        section,
        projection,
    }
}

/// The quotient `C/I` with bases chosen among the standard basis vectors of
/// each `C(x,y)`, together with the projection functor.
pub fn quotient(c: &FiniteKCategory, ideal: &TwoSidedIdeal) -> Result<(FiniteKCategory, KFunctor)> {
    if ideal.parent().as_ref() != c {
        return Err(Error::InvalidIdeal("ideal belongs to a different category".into()));
    }
    ideal.check()?;
    let n = c.num_objects();
    let data: Vec<Vec<QuotientData>> = (0..n)
        .map(|x| (0..n).map(|y| quotient_data(ideal.span(x, y))).collect())
        .collect();
    let hom = (0..n)
        .map(|x| {
            (0..n)
                .map(|y| data[x][y].coords.iter().map(|&k| c.hom[x][y][k].clone()).collect())
                .collect()
        })
        .collect();
    let comp = (0..n)
        .map(|x| {
            (0..n)
                .map(|y| {
                    (0..n)
                        .map(|z| {
                            data[x][z]
                                .projection
                                .mul(&c.comp[x][y][z])
                                .mul(&data[y][z].section.kron(&data[x][y].section))
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    let identity = (0..n).map(|x| data[x][x].projection.mul(&c.identity[x])).collect();
    let q = FiniteKCategory::unchecked(CategoryParts {
        field: c.field,
        objects: c.objects.clone(),
        hom,
        comp,
        identity,
    });
    let q = Arc::new(q);
    let functor = KFunctor {
        source: ideal.parent().clone(),
        target: q.clone(),
        object_map: (0..n).collect(),
        morphism_map: (0..n)
            .map(|x| (0..n).map(|y| data[x][y].projection.clone()).collect())
            .collect(),
    };
    Ok(((*q).clone(), functor))
}
