use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::exactla::{FieldSpec, Mat, Scalar};

use super::bimodule::Bimodule;

/// A finite K-linear category given by structure constants.
///
/// `comp[x][y][z]` has shape `dim(x,z) × (dim(y,z)·dim(x,y))`; column
/// `j·dim(x,y) + i` holds the coordinates of `g_j ∘ f_i` for the basis
/// morphisms `f_i: x → y` and `g_j: y → z`.
#[derive(Clone, Debug)]
pub struct FiniteKCategory {
    pub(crate) field: FieldSpec,
    pub(crate) objects: Vec<String>,
    pub(crate) hom: Vec<Vec<Vec<String>>>,
    pub(crate) comp: Vec<Vec<Vec<Mat>>>,
    pub(crate) identity: Vec<Mat>,
    pub(crate) construction: Option<Construction>,
}

/// Metadata retained by constructions that later operations need.
#[derive(Clone, Debug)]
pub enum Construction {
    Tensor {
        left: Box<FiniteKCategory>,
        right: Box<FiniteKCategory>,
    },
    Triangular(Box<TriangularBlocks>),
}

/// Block data of a triangular matrix category: objects `0..t.len()` come
/// from `t`, the rest from `u`.
#[derive(Clone, Debug)]
pub struct TriangularBlocks {
    pub t: FiniteKCategory,
    pub u: FiniteKCategory,
    pub m: Bimodule,
}

impl PartialEq for FiniteKCategory {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field
            && self.objects == other.objects
            && self.hom == other.hom
            && self.comp == other.comp
            && self.identity == other.identity
    }
}

impl Eq for FiniteKCategory {}

/// Raw data from which a category is assembled.
#[derive(Clone, Debug)]
pub struct CategoryParts {
    pub field: FieldSpec,
    pub objects: Vec<String>,
    pub hom: Vec<Vec<Vec<String>>>,
    pub comp: Vec<Vec<Vec<Mat>>>,
    pub identity: Vec<Mat>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UnitSide {
    /// `1_y ∘ f = f`
    Left,
    /// `f ∘ 1_x = f`
    Right,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    Shape(String),
    UnitLaw {
        side: UnitSide,
        identity: String,
        morphism: String,
    },
    Associativity {
        f: String,
        g: String,
        h: String,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Shape(s) => write!(f, "shape: {s}"),
            Violation::UnitLaw { side, identity, morphism } => match side {
                UnitSide::Left => write!(f, "unit law fails at ({identity}, {morphism}): {identity}∘{morphism} ≠ {morphism}"),
                UnitSide::Right => write!(f, "unit law fails at ({identity}, {morphism}): {morphism}∘{identity} ≠ {morphism}"),
            },
            Violation::Associativity { f: a, g, h } => {
                write!(f, "associativity fails at ({a}, {g}, {h}): ({h}∘{g})∘{a} ≠ {h}∘({g}∘{a})")
            }
        }
    }
}

/// Every violated axiom; empty iff the category is valid.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return write!(f, "valid");
        }
        let lines: Vec<String> = self.violations.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", lines.join("; "))
    }
}

impl FiniteKCategory {
    /// Assembles and validates a category.
    pub fn new(parts: CategoryParts) -> Result<Self> {
        let c = Self::unchecked(parts);
        let report = c.validate();
        if report.is_valid() {
            Ok(c)
        } else {
            Err(Error::InvalidCategory(report.to_string()))
        }
    }

    /// Assembles a category without checking the axioms; see [`FiniteKCategory::validate`].
    pub fn unchecked(parts: CategoryParts) -> Self {
        FiniteKCategory {
            field: parts.field,
            objects: parts.objects,
            hom: parts.hom,
            comp: parts.comp,
            identity: parts.identity,
            construction: None,
        }
    }

    pub fn into_parts(self) -> CategoryParts {
        CategoryParts {
            field: self.field,
            objects: self.objects,
            hom: self.hom,
            comp: self.comp,
            identity: self.identity,
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn object_name(&self, x: usize) -> &str {
        &self.objects[x]
    }

    pub fn object_index(&self, name: &str) -> Result<usize> {
        self.objects
            .iter()
            .position(|o| o == name)
            .ok_or_else(|| Error::UnknownObject(name.to_string()))
    }

    pub fn dim(&self, x: usize, y: usize) -> usize {
        self.hom[x][y].len()
    }

    pub fn hom_labels(&self, x: usize, y: usize) -> &[String] {
        &self.hom[x][y]
    }

    pub fn total_hom_dim(&self) -> usize {
        self.hom.iter().flatten().map(Vec::len).sum()
    }

    /// Finds a basis morphism by label, returning `(x, y, index)`.
    pub fn find_morphism(&self, label: &str) -> Option<(usize, usize, usize)> {
        let n = self.num_objects();
        for x in 0..n {
            for y in 0..n {
                if let Some(k) = self.hom[x][y].iter().position(|l| l == label) {
                    return Some((x, y, k));
                }
            }
        }
        None
    }

    /// Structure constants for `Hom(y,z) × Hom(x,y) → Hom(x,z)`.
    pub fn comp_matrix(&self, x: usize, y: usize, z: usize) -> &Mat {
        &self.comp[x][y][z]
    }

    /// Coordinates of `1_x` in `Hom(x,x)`.
    pub fn identity(&self, x: usize) -> &Mat {
        &self.identity[x]
    }

    pub fn construction(&self) -> Option<&Construction> {
        self.construction.as_ref()
    }

    pub fn triangular_blocks(&self) -> Option<&TriangularBlocks> {
        match &self.construction {
            Some(Construction::Triangular(b)) => Some(b),
            _ => None,
        }
    }

    pub(crate) fn with_construction(mut self, c: Construction) -> Self {
        self.construction = Some(c);
        self
    }

    /// Standard basis vector of `Hom(x,y)`.
    pub fn basis(&self, x: usize, y: usize, i: usize) -> Mat {
        Mat::unit(self.field, self.dim(x, y), i)
    }

    /// `g ∘ f` for coordinate columns `f ∈ Hom(x,y)`, `g ∈ Hom(y,z)`.
    pub fn compose(&self, x: usize, y: usize, z: usize, g: &Mat, f: &Mat) -> Mat {
        self.comp[x][y][z].mul(&g.kron(f))
    }

    /// Coordinates of `g_j ∘ f_i` for basis morphisms.
    pub fn compose_basis(&self, x: usize, y: usize, z: usize, j: usize, i: usize) -> Mat {
        self.comp[x][y][z].col(j * self.dim(x, y) + i)
    }

    /// Matrix of `f ↦ g ∘ f` from `Hom(x,y)` to `Hom(x,z)`.
    pub fn left_mult(&self, x: usize, y: usize, z: usize, g: &Mat) -> Mat {
        let dxy = self.dim(x, y);
        self.comp[x][y][z].mul(&g.kron(&Mat::identity(self.field, dxy)))
    }

    /// Matrix of `g ↦ g ∘ f` from `Hom(y,z)` to `Hom(x,z)`.
    pub fn right_mult(&self, x: usize, y: usize, z: usize, f: &Mat) -> Mat {
        let dyz = self.dim(y, z);
        self.comp[x][y][z].mul(&Mat::identity(self.field, dyz).kron(f))
    }

    /// Label of the identity at `x` when it is a basis vector, else `1_x`.
    pub fn identity_label(&self, x: usize) -> String {
        let id = &self.identity[x];
        let nz: Vec<usize> = (0..id.rows()).filter(|&i| !id.is_zero_at(i, 0)).collect();
        if nz.len() == 1 && id.get(nz[0], 0) == Scalar::from_integer(1.into()) {
            self.hom[x][x][nz[0]].clone()
        } else {
            format!("1_{}", self.objects[x])
        }
    }

    /// Checks shapes, both unit laws and associativity on all basis triples.
    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        let n = self.objects.len();
        if n == 0 {
            violations.push(Violation::Shape("category has no objects".into()));
            return ValidationReport { violations };
        }
        if self.hom.len() != n || self.hom.iter().any(|r| r.len() != n) {
            violations.push(Violation::Shape("Hom table is not n×n".into()));
            return ValidationReport { violations };
        }
        if self.identity.len() != n {
            violations.push(Violation::Shape("identity list length differs from object count".into()));
            return ValidationReport { violations };
        }
        if self.comp.len() != n || self.comp.iter().any(|a| a.len() != n || a.iter().any(|b| b.len() != n)) {
            violations.push(Violation::Shape("composition table is not n×n×n".into()));
            return ValidationReport { violations };
        }
        for x in 0..n {
            let id = &self.identity[x];
            if id.shape() != (self.dim(x, x), 1) || id.field() != self.field {
                violations.push(Violation::Shape(format!("identity at {} has wrong shape", self.objects[x])));
            }
            for y in 0..n {
                for z in 0..n {
                    let c = &self.comp[x][y][z];
                    let want = (self.dim(x, z), self.dim(y, z) * self.dim(x, y));
                    if c.shape() != want || c.field() != self.field {
                        violations.push(Violation::Shape(format!(
                            "composition {}→{}→{} has shape {:?}, expected {:?}",
                            self.objects[x],
                            self.objects[y],
                            self.objects[z],
                            c.shape(),
                            want
                        )));
                    }
                }
            }
        }
        if !violations.is_empty() {
            return ValidationReport { violations };
        }
        for x in 0..n {
            for y in 0..n {
                let d = self.dim(x, y);
                if d == 0 {
                    continue;
                }
                let left = self.left_mult(x, y, y, &self.identity[y]);
                let right = self.right_mult(x, x, y, &self.identity[x]);
                for i in 0..d {
                    let e = self.basis(x, y, i);
                    if left.col(i) != e {
                        violations.push(Violation::UnitLaw {
                            side: UnitSide::Left,
                            identity: self.identity_label(y),
                            morphism: self.hom[x][y][i].clone(),
                        });
                    }
                    if right.col(i) != e {
                        violations.push(Violation::UnitLaw {
                            side: UnitSide::Right,
                            identity: self.identity_label(x),
                            morphism: self.hom[x][y][i].clone(),
                        });
                    }
                }
            }
        }
        // (h∘g)∘f = h∘(g∘f), compared as operators on Hom(w,x).
        for w in 0..n {
            for x in 0..n {
                let dwx = self.dim(w, x);
                if dwx == 0 {
                    continue;
                }
                for y in 0..n {
                    for z in 0..n {
                        for jg in 0..self.dim(x, y) {
                            let g = self.basis(x, y, jg);
                            let lg = self.left_mult(w, x, y, &g);
                            for jh in 0..self.dim(y, z) {
                                let h = self.basis(y, z, jh);
                                let hg = self.compose(x, y, z, &h, &g);
                                let lhs = self.left_mult(w, x, z, &hg);
                                let rhs = self.left_mult(w, y, z, &h).mul(&lg);
                                if lhs != rhs {
                                    for i in 0..dwx {
                                        if lhs.col(i) != rhs.col(i) {
                                            violations.push(Violation::Associativity {
                                                f: self.hom[w][x][i].clone(),
                                                g: self.hom[x][y][jg].clone(),
                                                h: self.hom[y][z][jh].clone(),
                                            });
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        ValidationReport { violations }
    }
}

/// Free-function form of [`FiniteKCategory::validate`].
pub fn validate(c: &FiniteKCategory) -> ValidationReport {
    c.validate()
}

/// Linear combination of named basis morphisms.
pub type LinComb = Vec<(Scalar, String)>;

/// Incremental construction of a category from named objects and morphisms.
///
/// Morphism labels must be unique across the whole category. Composites that
/// are never specified are zero. Declaring a basis morphism as an identity
/// fills in all composites with it automatically.
#[derive(Clone, Debug)]
pub struct CategoryBuilder {
    field: FieldSpec,
    objects: Vec<String>,
    homs: BTreeMap<(usize, usize), Vec<String>>,
    comps: Vec<(String, String, LinComb)>,
    ids: Vec<(String, LinComb)>,
    id_basis: Vec<(String, String)>,
}

impl CategoryBuilder {
    pub fn new(field: FieldSpec) -> Self {
        CategoryBuilder {
            field,
            objects: Vec::new(),
            homs: BTreeMap::new(),
            comps: Vec::new(),
            ids: Vec::new(),
            id_basis: Vec::new(),
        }
    }

    pub fn object(&mut self, name: &str) -> Result<&mut Self> {
        if self.objects.iter().any(|o| o == name) {
            return Err(Error::Duplicate(name.to_string()));
        }
        self.objects.push(name.to_string());
        Ok(self)
    }

    fn obj(&self, name: &str) -> Result<usize> {
        self.objects
            .iter()
            .position(|o| o == name)
            .ok_or_else(|| Error::UnknownObject(name.to_string()))
    }

    /// Sets the basis labels of `Hom(x,y)`.
    pub fn hom(&mut self, x: &str, y: &str, labels: &[&str]) -> Result<&mut Self> {
        let key = (self.obj(x)?, self.obj(y)?);
        if self.homs.contains_key(&key) {
            return Err(Error::Duplicate(format!("hom {x} {y}")));
        }
        for l in labels {
            if self.homs.values().flatten().any(|e| e == l) || labels.iter().filter(|m| *m == l).count() > 1 {
                return Err(Error::Duplicate((*l).to_string()));
            }
        }
        self.homs.insert(key, labels.iter().map(|s| s.to_string()).collect());
        Ok(self)
    }

    /// Declares `g ∘ f = value`.
    pub fn comp(&mut self, g: &str, f: &str, value: LinComb) -> &mut Self {
        self.comps.push((g.to_string(), f.to_string(), value));
        self
    }

    /// Declares the identity of `x` as a linear combination.
    pub fn identity(&mut self, x: &str, value: LinComb) -> &mut Self {
        self.ids.push((x.to_string(), value));
        self
    }

    /// Declares that the basis morphism `label` is the identity of `x`.
    pub fn identity_basis(&mut self, x: &str, label: &str) -> &mut Self {
        self.id_basis.push((x.to_string(), label.to_string()));
        self
    }

    fn locate(&self, label: &str) -> Result<(usize, usize, usize)> {
        for (&(x, y), labels) in &self.homs {
            if let Some(k) = labels.iter().position(|l| l == label) {
                return Ok((x, y, k));
            }
        }
        Err(Error::UnknownMorphism(label.to_string()))
    }

    fn dim(&self, x: usize, y: usize) -> usize {
        self.homs.get(&(x, y)).map_or(0, Vec::len)
    }

    fn coords(&self, x: usize, y: usize, value: &LinComb) -> Result<Mat> {
        let mut v = Mat::zeros(self.field, self.dim(x, y), 1);
        for (coeff, label) in value {
            let (a, b, k) = self.locate(label)?;
            if (a, b) != (x, y) {
                return Err(Error::Malformed(format!(
                    "`{label}` is not a morphism {} → {}",
                    self.objects[x], self.objects[y]
                )));
            }
            if !self.field.admits(coeff) {
                return Err(Error::Malformed(format!("coefficient {coeff} is not defined in {}", self.field)));
            }
            let cur = v.get(k, 0);
            v.set(k, 0, &self.field.add(&cur, &self.field.reduce(coeff)));
        }
        Ok(v)
    }

    /// Resolves names and assembles the category without validating axioms.
    pub fn build_unchecked(&self) -> Result<FiniteKCategory> {
        let n = self.objects.len();
        if n == 0 {
            return Err(Error::Malformed("category has no objects".into()));
        }
        let field = self.field;
        let hom: Vec<Vec<Vec<String>>> = (0..n)
            .map(|x| (0..n).map(|y| self.homs.get(&(x, y)).cloned().unwrap_or_default()).collect())
            .collect();
        let mut comp: Vec<Vec<Vec<Mat>>> = (0..n)
            .map(|x| {
                (0..n)
                    .map(|y| {
                        (0..n)
                            .map(|z| Mat::zeros(field, self.dim(x, z), self.dim(y, z) * self.dim(x, y)))
                            .collect()
                    })
                    .collect()
            })
            .collect();
        let mut identity: Vec<Option<Mat>> = vec![None; n];
        for (x, label) in &self.id_basis {
            let xi = self.obj(x)?;
            let (a, b, k) = self.locate(label)?;
            if (a, b) != (xi, xi) {
                return Err(Error::Malformed(format!("`{label}` is not an endomorphism of {x}")));
            }
            identity[xi] = Some(Mat::unit(field, self.dim(xi, xi), k));
            // k is the identity: g ∘ k = g for g out of x, k ∘ f = f for f into x.
            for z in 0..n {
                for j in 0..self.dim(xi, z) {
                    let col = j * self.dim(xi, xi) + k;
                    comp[xi][xi][z].set_block(0, col, &Mat::unit(field, self.dim(xi, z), j));
                }
            }
            for w in 0..n {
                let dwx = self.dim(w, xi);
                for i in 0..dwx {
                    let col = k * dwx + i;
                    comp[w][xi][xi].set_block(0, col, &Mat::unit(field, dwx, i));
                }
            }
        }
        for (x, value) in &self.ids {
            let xi = self.obj(x)?;
            identity[xi] = Some(self.coords(xi, xi, value)?);
        }
        for (g, f, value) in &self.comps {
            let (y, z, j) = self.locate(g)?;
            let (x, y2, i) = self.locate(f)?;
            if y != y2 {
                return Err(Error::Malformed(format!("`{g}` and `{f}` are not composable")));
            }
            let v = self.coords(x, z, value)?;
            comp[x][y][z].set_block(0, j * self.dim(x, y) + i, &v);
        }
        let identity = identity
            .into_iter()
            .enumerate()
            .map(|(x, id)| {
                id.or_else(|| (self.dim(x, x) == 0).then(|| Mat::zeros(field, 0, 1)))
                    .ok_or_else(|| Error::Malformed(format!("no identity declared for {}", self.objects[x])))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(FiniteKCategory::unchecked(CategoryParts {
            field,
            objects: self.objects.clone(),
            hom,
            comp,
            identity,
        }))
    }

    /// Resolves names, assembles and validates.
    pub fn build(&self) -> Result<FiniteKCategory> {
        let c = self.build_unchecked()?;
        let report = c.validate();
        if report.is_valid() {
            Ok(c)
        } else {
            Err(Error::InvalidCategory(report.to_string()))
        }
    }
}

/// Shorthand for a single basis morphism with coefficient 1.
pub fn term(label: &str) -> LinComb {
    vec![(Scalar::from_integer(1.into()), label.to_string())]
}
