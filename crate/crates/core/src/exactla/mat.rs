//! Dense matrices over a [`FieldSpec`].
//!
//! Over the rationals elimination is fraction-free (integer Bareiss-style
//! Gauss–Jordan) and only the final echelon form is divided out; over GF(p)
//! plain Gauss–Jordan on machine words. Pivoting is always "leftmost nonzero
//! column, topmost nonzero row" so every result is reproducible.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::field::{inv_mod, scalar_to_string, FieldSpec, Scalar};
use super::LinalgError;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Store {
    Q(Vec<BigRational>),
    P(Vec<u32>),
}

/// Dense row-major matrix with canonical entries.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mat {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    store: Store,
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub rref: Mat,
    pub pivots: Vec<usize>,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

impl Mat {
    pub fn zeros(field: FieldSpec, rows: usize, cols: usize) -> Self {
        let store = match field {
            FieldSpec::Rationals => Store::Q(vec![BigRational::zero(); rows * cols]),
            FieldSpec::Prime(_) => Store::P(vec![0; rows * cols]),
        };
        Mat { field, rows, cols, store }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        let mut m = Mat::zeros(field, n, n);
        for i in 0..n {
            m.set_one(i, i);
        }
        m
    }

    /// Builds a matrix from integer rows; all rows must have equal length.
    pub fn from_i64_rows(field: FieldSpec, rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut m = Mat::zeros(field, r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, &v) in row.iter().enumerate() {
                if v != 0 {
                    m.set(i, j, &field.from_i64(v));
                }
            }
        }
        m
    }

    /// Row-major scalars, reduced into the field.
    pub fn from_scalars(field: FieldSpec, rows: usize, cols: usize, entries: &[Scalar]) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count mismatch");
        let mut m = Mat::zeros(field, rows, cols);
        for (k, v) in entries.iter().enumerate() {
            if !v.is_zero() {
                m.set(k / cols.max(1), k % cols.max(1), v);
            }
        }
        m
    }

    /// Column vector from scalars.
    pub fn column(field: FieldSpec, entries: &[Scalar]) -> Self {
        Mat::from_scalars(field, entries.len(), 1, entries)
    }

    /// Standard basis column `e_i` of length `n`.
    pub fn unit(field: FieldSpec, n: usize, i: usize) -> Self {
        let mut m = Mat::zeros(field, n, 1);
        m.set_one(i, 0);
        m
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    fn p(&self) -> u64 {
        self.field.characteristic() as u64
    }

    pub fn get(&self, i: usize, j: usize) -> Scalar {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        let k = i * self.cols + j;
        match &self.store {
            Store::Q(v) => v[k].clone(),
            Store::P(v) => Scalar::from_integer(BigInt::from(v[k])),
        }
    }

    pub fn is_zero_at(&self, i: usize, j: usize) -> bool {
        let k = i * self.cols + j;
        match &self.store {
            Store::Q(v) => v[k].is_zero(),
            Store::P(v) => v[k] == 0,
        }
    }

    pub fn set(&mut self, i: usize, j: usize, value: &Scalar) {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        let k = i * self.cols + j;
        let field = self.field;
        match &mut self.store {
            Store::Q(v) => v[k] = value.clone(),
            Store::P(v) => {
                v[k] = field
                    .residue(value)
                    .unwrap_or_else(|| panic!("{value} is not defined in {field}"))
            }
        }
    }

    fn set_one(&mut self, i: usize, j: usize) {
        let k = i * self.cols + j;
        match &mut self.store {
            Store::Q(v) => v[k] = BigRational::one(),
            Store::P(v) => v[k] = 1,
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.store {
            Store::Q(v) => v.iter().all(Zero::is_zero),
            Store::P(v) => v.iter().all(|&x| x == 0),
        }
    }

    pub fn is_identity(&self) -> bool {
        if self.rows != self.cols {
            return false;
        }
        (0..self.rows).all(|i| {
            (0..self.cols).all(|j| {
                let k = i * self.cols + j;
                match &self.store {
                    Store::Q(v) => {
                        if i == j {
                            v[k].is_one()
                        } else {
                            v[k].is_zero()
                        }
                    }
                    Store::P(v) => v[k] == u32::from(i == j),
                }
            })
        })
    }

    fn check_field(&self, other: &Mat) {
        assert_eq!(self.field, other.field, "field mismatch between matrices");
    }

    pub fn transpose(&self) -> Mat {
        let (r, c) = (self.rows, self.cols);
        let store = match &self.store {
            Store::Q(v) => {
                let mut out = Vec::with_capacity(r * c);
                for j in 0..c {
                    for i in 0..r {
                        out.push(v[i * c + j].clone());
                    }
                }
                Store::Q(out)
            }
            Store::P(v) => {
                let mut out = Vec::with_capacity(r * c);
                for j in 0..c {
                    for i in 0..r {
                        out.push(v[i * c + j]);
                    }
                }
                Store::P(out)
            }
        };
        Mat { field: self.field, rows: c, cols: r, store }
    }

    /// Matrix product `self · other`.
    pub fn mul(&self, other: &Mat) -> Mat {
        self.check_field(other);
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let (n, m, k) = (self.rows, other.cols, self.cols);
        let store = match (&self.store, &other.store) {
            (Store::Q(a), Store::Q(b)) => {
                let mut out = vec![BigRational::zero(); n * m];
                for i in 0..n {
                    for t in 0..k {
                        let x = &a[i * k + t];
                        if x.is_zero() {
                            continue;
                        }
                        for j in 0..m {
                            let y = &b[t * m + j];
                            if !y.is_zero() {
                                out[i * m + j] += x * y;
                            }
                        }
                    }
                }
                Store::Q(out)
            }
            (Store::P(a), Store::P(b)) => {
                let p = self.p();
                let mut acc = vec![0u64; m];
                let mut out = Vec::with_capacity(n * m);
                for i in 0..n {
                    acc.iter_mut().for_each(|x| *x = 0);
                    for t in 0..k {
                        let x = a[i * k + t] as u64;
                        if x == 0 {
                            continue;
                        }
                        let row = &b[t * m..(t + 1) * m];
                        for (slot, &y) in acc.iter_mut().zip(row) {
                            if y != 0 {
                                *slot = (*slot + x * y as u64) % p;
                            }
                        }
                    }
                    out.extend(acc.iter().map(|&x| x as u32));
                }
                Store::P(out)
            }
            _ => unreachable!(),
        };
        Mat { field: self.field, rows: n, cols: m, store }
    }

    fn zip_with(&self, other: &Mat, sign: i64) -> Mat {
        self.check_field(other);
        assert_eq!(self.shape(), other.shape(), "shape mismatch");
        let store = match (&self.store, &other.store) {
            (Store::Q(a), Store::Q(b)) => Store::Q(
                a.iter()
                    .zip(b)
                    .map(|(x, y)| if sign > 0 { x + y } else { x - y })
                    .collect(),
            ),
            (Store::P(a), Store::P(b)) => {
                let p = self.p();
                Store::P(
                    a.iter()
                        .zip(b)
                        .map(|(&x, &y)| {
                            if sign > 0 {
                                ((x as u64 + y as u64) % p) as u32
                            } else {
                                ((x as u64 + p - y as u64) % p) as u32
                            }
                        })
                        .collect(),
                )
            }
            _ => unreachable!(),
        };
        Mat { field: self.field, rows: self.rows, cols: self.cols, store }
    }

    pub fn add(&self, other: &Mat) -> Mat {
        self.zip_with(other, 1)
    }

    pub fn sub(&self, other: &Mat) -> Mat {
        self.zip_with(other, -1)
    }

    pub fn neg(&self) -> Mat {
        self.scale(&self.field.from_i64(-1))
    }

    pub fn scale(&self, s: &Scalar) -> Mat {
        let store = match &self.store {
            Store::Q(v) => Store::Q(v.iter().map(|x| x * s).collect()),
            Store::P(v) => {
                let p = self.p();
                let s = self.field.residue(s).expect("scalar outside field") as u64;
                Store::P(v.iter().map(|&x| (x as u64 * s % p) as u32).collect())
            }
        };
        Mat { field: self.field, rows: self.rows, cols: self.cols, store }
    }

    /// Kronecker product; index `(i, k)` of the result row space is `i * other.rows + k`.
    pub fn kron(&self, other: &Mat) -> Mat {
        self.check_field(other);
        let (r1, c1, r2, c2) = (self.rows, self.cols, other.rows, other.cols);
        let mut out = Mat::zeros(self.field, r1 * r2, c1 * c2);
        let oc = c1 * c2;
        match (&self.store, &other.store, &mut out.store) {
            (Store::Q(a), Store::Q(b), Store::Q(o)) => {
                for i in 0..r1 {
                    for j in 0..c1 {
                        let x = &a[i * c1 + j];
                        if x.is_zero() {
                            continue;
                        }
                        for k in 0..r2 {
                            for l in 0..c2 {
                                let y = &b[k * c2 + l];
                                if !y.is_zero() {
                                    o[(i * r2 + k) * oc + j * c2 + l] = x * y;
                                }
                            }
                        }
                    }
                }
            }
            (Store::P(a), Store::P(b), Store::P(o)) => {
                let p = self.field.characteristic() as u64;
                for i in 0..r1 {
                    for j in 0..c1 {
                        let x = a[i * c1 + j] as u64;
                        if x == 0 {
                            continue;
                        }
                        for k in 0..r2 {
                            for l in 0..c2 {
                                let y = b[k * c2 + l] as u64;
                                if y != 0 {
                                    o[(i * r2 + k) * oc + j * c2 + l] = (x * y % p) as u32;
                                }
                            }
                        }
                    }
                }
            }
            _ => unreachable!(),
        }
        out
    }

    /// Horizontal concatenation of matrices with equal row counts.
    pub fn hstack(field: FieldSpec, rows: usize, parts: &[&Mat]) -> Mat {
        let cols = parts.iter().map(|m| m.cols).sum();
        let mut out = Mat::zeros(field, rows, cols);
        let mut c0 = 0;
        for m in parts {
            assert_eq!(m.rows, rows, "hstack row mismatch");
            out.set_block(0, c0, m);
            c0 += m.cols;
        }
        out
    }

    /// Vertical concatenation of matrices with equal column counts.
    pub fn vstack(field: FieldSpec, cols: usize, parts: &[&Mat]) -> Mat {
        let rows = parts.iter().map(|m| m.rows).sum();
        let mut out = Mat::zeros(field, rows, cols);
        let mut r0 = 0;
        for m in parts {
            assert_eq!(m.cols, cols, "vstack column mismatch");
            out.set_block(r0, 0, m);
            r0 += m.rows;
        }
        out
    }

    pub fn block_diag(field: FieldSpec, parts: &[&Mat]) -> Mat {
        let rows = parts.iter().map(|m| m.rows).sum();
        let cols = parts.iter().map(|m| m.cols).sum();
        let mut out = Mat::zeros(field, rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for m in parts {
            out.set_block(r0, c0, m);
            r0 += m.rows;
            c0 += m.cols;
        }
        out
    }

    /// Overwrites the block starting at `(r0, c0)` with `block`.
    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Mat) {
        self.check_field(block);
        assert!(r0 + block.rows <= self.rows && c0 + block.cols <= self.cols, "block out of range");
        let (bc, sc) = (block.cols, self.cols);
        match (&mut self.store, &block.store) {
            (Store::Q(a), Store::Q(b)) => {
                for i in 0..block.rows {
                    a[(r0 + i) * sc + c0..(r0 + i) * sc + c0 + bc].clone_from_slice(&b[i * bc..(i + 1) * bc]);
                }
            }
            (Store::P(a), Store::P(b)) => {
                for i in 0..block.rows {
                    a[(r0 + i) * sc + c0..(r0 + i) * sc + c0 + bc].copy_from_slice(&b[i * bc..(i + 1) * bc]);
                }
            }
            _ => unreachable!(),
        }
    }

    /// Adds `block` into the block starting at `(r0, c0)`.
    pub fn add_block(&mut self, r0: usize, c0: usize, block: &Mat) {
        self.check_field(block);
        assert!(r0 + block.rows <= self.rows && c0 + block.cols <= self.cols, "block out of range");
        let (bc, sc) = (block.cols, self.cols);
        let p = self.field.characteristic() as u64;
        match (&mut self.store, &block.store) {
            (Store::Q(a), Store::Q(b)) => {
                for i in 0..block.rows {
                    for j in 0..bc {
                        let y = &b[i * bc + j];
                        if !y.is_zero() {
                            a[(r0 + i) * sc + c0 + j] += y;
                        }
                    }
                }
            }
            (Store::P(a), Store::P(b)) => {
                for i in 0..block.rows {
                    for j in 0..bc {
                        let y = b[i * bc + j] as u64;
                        if y != 0 {
                            let slot = &mut a[(r0 + i) * sc + c0 + j];
                            *slot = ((*slot as u64 + y) % p) as u32;
                        }
                    }
                }
            }
            _ => unreachable!(),
        }
    }

    pub fn submatrix(&self, r0: usize, rows: usize, c0: usize, cols: usize) -> Mat {
        assert!(r0 + rows <= self.rows && c0 + cols <= self.cols, "submatrix out of range");
        let rs: Vec<usize> = (r0..r0 + rows).collect();
        let cs: Vec<usize> = (c0..c0 + cols).collect();
        self.select(&rs, &cs)
    }

    pub fn select_cols(&self, cols: &[usize]) -> Mat {
        let rs: Vec<usize> = (0..self.rows).collect();
        self.select(&rs, cols)
    }

    pub fn select_rows(&self, rows: &[usize]) -> Mat {
        let cs: Vec<usize> = (0..self.cols).collect();
        self.select(rows, &cs)
    }

    /// Gathers the given rows and columns (in the given orders).
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Mat {
        let c = self.cols;
        let store = match &self.store {
            Store::Q(v) => Store::Q(
                rows.iter()
                    .flat_map(|&i| cols.iter().map(move |&j| v[i * c + j].clone()))
                    .collect(),
            ),
            Store::P(v) => Store::P(rows.iter().flat_map(|&i| cols.iter().map(move |&j| v[i * c + j])).collect()),
        };
        Mat { field: self.field, rows: rows.len(), cols: cols.len(), store }
    }

    pub fn col(&self, j: usize) -> Mat {
        self.select_cols(&[j])
    }

    /// Column-major vectorisation, so that `vec(A X B) = (Bᵀ ⊗ A) vec(X)`.
    pub fn vectorize(&self) -> Mat {
        let flat = self.transpose();
        Mat { field: self.field, rows: self.rows * self.cols, cols: 1, store: flat.store }
    }

    /// Inverse of [`Mat::vectorize`].
    pub fn unvectorize(&self, rows: usize, cols: usize) -> Mat {
        assert_eq!(self.cols, 1, "expected a column vector");
        assert_eq!(self.rows, rows * cols, "length mismatch");
        let t = Mat { field: self.field, rows: cols, cols: rows, store: self.store.clone() };
        t.transpose()
    }

    /// Reduced row echelon form with deterministic pivoting.
    pub fn rref(&self) -> Echelon {
        match &self.store {
            Store::Q(v) => rref_rational(self.field, self.rows, self.cols, v, true),
            Store::P(v) => rref_prime(self.field, self.rows, self.cols, v.clone(), true),
        }
    }

    pub fn rank(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        match &self.store {
            Store::Q(v) => rref_rational(self.field, self.rows, self.cols, v, false).rank(),
            Store::P(v) => rref_prime(self.field, self.rows, self.cols, v.clone(), false).rank(),
        }
    }

    /// Columns form the canonical basis of the null space (one column per free variable).
    pub fn kernel_basis(&self) -> Mat {
        let e = self.rref();
        let free: Vec<usize> = {
            let mut is_pivot = vec![false; self.cols];
            e.pivots.iter().for_each(|&c| is_pivot[c] = true);
            (0..self.cols).filter(|&c| !is_pivot[c]).collect()
        };
        let mut out = Mat::zeros(self.field, self.cols, free.len());
        for (k, &f) in free.iter().enumerate() {
            out.set_one(f, k);
            for (r, &pc) in e.pivots.iter().enumerate() {
                if !e.rref.is_zero_at(r, f) {
                    out.set(pc, k, &self.field.neg(&e.rref.get(r, f)));
                }
            }
        }
        out
    }

    /// Canonical basis (echelonized) of the column space.
    pub fn column_space(&self) -> Mat {
        let e = self.transpose().rref();
        let rank = e.rank();
        e.rref.submatrix(0, rank, 0, self.rows).transpose()
    }

    /// Coordinates `j` whose unit vectors complete the column space to a basis of the ambient space.
    pub fn complement_coordinates(&self) -> Vec<usize> {
        let e = self.transpose().rref();
        let mut is_pivot = vec![false; self.rows];
        e.pivots.iter().for_each(|&c| is_pivot[c] = true);
        (0..self.rows).filter(|&j| !is_pivot[j]).collect()
    }

    /// Canonical particular solution of `self · x = b`, or `None` when inconsistent.
    pub fn solve(&self, b: &Mat) -> Result<Option<Mat>, LinalgError> {
        if self.rows != b.rows {
            return Err(LinalgError::DimensionMismatch {
                left: self.shape(),
                right: b.shape(),
            });
        }
        if self.field != b.field {
            return Err(LinalgError::FieldMismatch(self.field, b.field));
        }
        let n = self.cols;
        let aug = Mat::hstack(self.field, self.rows, &[self, b]);
        let e = aug.rref();
        if e.pivots.iter().any(|&c| c >= n) {
            return Ok(None);
        }
        let mut x = Mat::zeros(self.field, n, b.cols);
        for (r, &pc) in e.pivots.iter().enumerate() {
            x.set_block(pc, 0, &e.rref.submatrix(r, 1, n, b.cols));
        }
        Ok(Some(x))
    }

    /// Like [`Mat::solve`] but treats inconsistency as a bug in the caller.
    pub fn solve_exact(&self, b: &Mat) -> Mat {
        self.solve(b)
            .expect("shape mismatch in solve")
            .expect("linear system expected to be consistent")
    }

    pub fn inverse(&self) -> Option<Mat> {
        if self.rows != self.cols {
            return None;
        }
        if self.rank() != self.rows {
            return None;
        }
        self.solve(&Mat::identity(self.field, self.rows)).ok().flatten()
    }

    /// Permutes columns: column `j` of the result is column `perm[j]` of `self`.
    pub fn permute_cols(&self, perm: &[usize]) -> Mat {
        self.select_cols(perm)
    }

    /// Whether every column of `other` lies in the column space of `self`.
    pub fn contains_columns(&self, other: &Mat) -> bool {
        if other.cols == 0 {
            return true;
        }
        let joint = Mat::hstack(self.field, self.rows, &[self, other]);
        joint.rank() == self.rank()
    }

    pub fn entries(&self) -> Vec<Scalar> {
        (0..self.rows)
            .flat_map(|i| (0..self.cols).map(move |j| (i, j)))
            .map(|(i, j)| self.get(i, j))
            .collect()
    }

    /// Rows as printable strings.
    pub fn to_string_rows(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| scalar_to_string(&self.get(i, j))).collect())
            .collect()
    }
}

impl fmt::Display for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, row) in self.to_string_rows().iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "[{}]", row.join(","))?;
        }
        write!(f, "]")
    }
}

/// `dim(A/B)` for `B ⊆ A`, both given by spanning columns.
pub fn subquotient_dim(span_a: &Mat, span_b: &Mat) -> Result<usize, LinalgError> {
    if span_a.rows() != span_b.rows() {
        return Err(LinalgError::DimensionMismatch {
            left: span_a.shape(),
            right: span_b.shape(),
        });
    }
    if !span_a.contains_columns(span_b) {
        return Err(LinalgError::ContainmentViolation);
    }
    Ok(span_a.rank() - span_b.rank())
}

fn rref_prime(field: FieldSpec, rows: usize, cols: usize, mut a: Vec<u32>, full: bool) -> Echelon {
    let p = field.characteristic() as u64;
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(piv) = (r..rows).find(|&i| a[i * cols + c] != 0) else {
            continue;
        };
        if piv != r {
            for j in 0..cols {
                a.swap(piv * cols + j, r * cols + j);
            }
        }
        let inv = inv_mod(a[r * cols + c] as u64, p);
        for j in c..cols {
            a[r * cols + j] = (a[r * cols + j] as u64 * inv % p) as u32;
        }
        let start = if full { 0 } else { r + 1 };
        for i in start..rows {
            if i == r {
                continue;
            }
            let f = a[i * cols + c] as u64;
            if f == 0 {
                continue;
            }
            let neg = p - f;
            for j in c..cols {
                let y = a[r * cols + j] as u64;
                if y != 0 {
                    let slot = &mut a[i * cols + j];
                    *slot = ((*slot as u64 + neg * y) % p) as u32;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    Echelon {
        rref: Mat { field, rows, cols, store: Store::P(a) },
        pivots,
    }
}

/// Fraction-free Gauss–Jordan over the integers after clearing row denominators.
///
/// Invariant after processing the k-th pivot: every pivot entry equals the
/// current pivot value, and each division by the previous pivot is exact.
fn rref_rational(field: FieldSpec, rows: usize, cols: usize, v: &[BigRational], full: bool) -> Echelon {
    let mut a: Vec<Vec<BigInt>> = (0..rows)
        .map(|i| {
            let row = &v[i * cols..(i + 1) * cols];
            let lcm = row
                .iter()
                .filter(|x| !x.is_zero())
                .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            row.iter().map(|x| x.numer() * (&lcm / x.denom())).collect()
        })
        .collect();
    let mut prev = BigInt::one();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(piv) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(piv, r);
        let pivot_row = a[r].clone();
        let pv = pivot_row[c].clone();
        let start = if full { 0 } else { r + 1 };
        for (i, row) in a.iter_mut().enumerate().skip(start) {
            if i == r {
                continue;
            }
            let f = row[c].clone();
            if f.is_zero() && row.iter().all(Zero::is_zero) {
                continue;
            }
            for j in 0..cols {
                if j < c && row[j].is_zero() {
                    continue;
                }
                let num = &pv * &row[j] - &f * &pivot_row[j];
                let (q, rem) = num.div_rem(&prev);
                debug_assert!(rem.is_zero(), "fraction-free division must be exact");
                row[j] = q;
            }
        }
        prev = pv;
        pivots.push(c);
        r += 1;
    }
    let rank = pivots.len();
    let mut store = vec![BigRational::zero(); rows * cols];
    if full {
        for (i, row) in a.iter().take(rank).enumerate() {
            for (j, x) in row.iter().enumerate() {
                if !x.is_zero() {
                    store[i * cols + j] = BigRational::new(x.clone(), prev.clone());
                }
            }
        }
    } else {
        // Forward-only elimination: rows are echelon but not normalised; only
        // the pivot pattern is meaningful to callers.
        for (i, row) in a.iter().take(rank).enumerate() {
            for (j, x) in row.iter().enumerate() {
                if !x.is_zero() {
                    store[i * cols + j] = BigRational::from_integer(x.clone());
                }
            }
        }
    }
    Echelon {
        rref: Mat { field, rows, cols, store: Store::Q(store) },
        pivots,
    }
}

/// Exact integer content of a scalar as `i64` when it fits; used by tests and printers.
pub fn scalar_as_i64(q: &Scalar) -> Option<i64> {
    if q.is_integer() {
        q.numer().to_i64()
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const Q: FieldSpec = FieldSpec::Rationals;
    const F5: FieldSpec = FieldSpec::Prime(5);

    fn m(field: FieldSpec, rows: &[&[i64]]) -> Mat {
        Mat::from_i64_rows(field, &rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
    }

    #[test]
    fn rank_examples() {
        assert_eq!(Mat::identity(Q, 2).rank(), 2);
        assert_eq!(Mat::zeros(Q, 2, 2).rank(), 0);
        assert_eq!(m(Q, &[&[1, 2], &[2, 4]]).rank(), 1);
        assert_eq!(Mat::zeros(Q, 0, 3).rank(), 0);
    }

    #[test]
    fn kernel_examples() {
        let k = m(Q, &[&[1, 1]]).kernel_basis();
        assert_eq!(k, m(Q, &[&[-1], &[1]]));
        assert_eq!(Mat::identity(Q, 3).kernel_basis().cols(), 0);
        let k5 = m(F5, &[&[1, 2], &[2, 4]]).kernel_basis();
        assert_eq!(k5.cols(), 1);
        assert!(m(F5, &[&[1, 2], &[2, 4]]).mul(&k5).is_zero());
    }

    #[test]
    fn solve_examples() {
        let b = m(Q, &[&[3, -1], &[7, 2]]);
        assert_eq!(Mat::identity(Q, 2).solve(&b).unwrap().unwrap(), b);
        assert_eq!(m(Q, &[&[1], &[0]]).solve(&m(Q, &[&[0], &[1]])).unwrap(), None);
        assert_eq!(m(F5, &[&[2]]).solve(&m(F5, &[&[1]])).unwrap().unwrap(), m(F5, &[&[3]]));
        assert!(matches!(
            Mat::identity(Q, 2).solve(&Mat::zeros(Q, 3, 1)),
            Err(LinalgError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn subquotient_examples() {
        let id2 = Mat::identity(Q, 2);
        assert_eq!(subquotient_dim(&id2, &id2.col(0)).unwrap(), 1);
        assert_eq!(subquotient_dim(&id2, &id2).unwrap(), 0);
        assert_eq!(subquotient_dim(&Mat::identity(Q, 3), &Mat::zeros(Q, 3, 1)).unwrap(), 3);
        assert_eq!(
            subquotient_dim(&id2.col(0), &id2.col(1)),
            Err(LinalgError::ContainmentViolation)
        );
    }

    #[test]
    fn rational_rref_is_reduced() {
        let a = m(Q, &[&[2, 4, 1], &[3, 1, 0], &[5, 5, 1]]);
        let e = a.rref();
        assert_eq!(e.pivots, vec![0, 1]);
        let half = Scalar::new(1.into(), 10.into());
        assert_eq!(e.rref.get(0, 0), Scalar::one());
        assert_eq!(e.rref.get(0, 2), -half.clone());
        assert!(e.rref.get(2, 2).is_zero());
    }

    #[test]
    fn vectorize_identity() {
        let a = m(Q, &[&[1, 2], &[0, 3]]);
        let x = m(Q, &[&[1, -1, 2], &[4, 0, 1]]);
        let b = m(Q, &[&[2, 0], &[1, 1], &[0, 5]]);
        let lhs = a.mul(&x).mul(&b).vectorize();
        let rhs = b.transpose().kron(&a).mul(&x.vectorize());
        assert_eq!(lhs, rhs);
        assert_eq!(x.vectorize().unvectorize(2, 3), x);
    }

    #[test]
    fn inverse_round_trip() {
        let a = m(Q, &[&[2, 1], &[7, 4]]);
        assert!(a.mul(&a.inverse().unwrap()).is_identity());
        assert!(m(Q, &[&[1, 2], &[2, 4]]).inverse().is_none());
    }

    fn arb_mat(field: FieldSpec) -> impl Strategy<Value = Mat> {
        (1usize..6, 1usize..6).prop_flat_map(move |(r, c)| {
            prop::collection::vec(-3i64..4, r * c).prop_map(move |v| {
                let rows: Vec<Vec<i64>> = v.chunks(c).map(|ch| ch.to_vec()).collect();
                Mat::from_i64_rows(field, &rows)
            })
        })
    }

    proptest! {
        #[test]
        fn rank_transpose_q(a in arb_mat(Q)) {
            prop_assert_eq!(a.rank(), a.transpose().rank());
        }

        #[test]
        fn rank_transpose_p(a in arb_mat(FieldSpec::Prime(7))) {
            prop_assert_eq!(a.rank(), a.transpose().rank());
        }

        #[test]
        fn rank_nullity(a in arb_mat(Q), b in arb_mat(FieldSpec::Prime(3))) {
            for x in [&a, &b] {
                let k = x.kernel_basis();
                prop_assert_eq!(x.cols(), x.rank() + k.cols());
                prop_assert!(x.mul(&k).is_zero());
                prop_assert_eq!(k.rank(), k.cols());
            }
        }

        #[test]
        fn solve_reproduces(a in arb_mat(Q), seed in 0i64..50) {
            let b = a.mul(&Mat::from_i64_rows(Q, &(0..a.cols()).map(|i| vec![(i as i64 * 7 + seed) % 5 - 2]).collect::<Vec<_>>()));
            let x = a.solve(&b).unwrap().expect("consistent by construction");
            prop_assert_eq!(a.mul(&x), b);
        }

        #[test]
        fn deterministic(a in arb_mat(Q)) {
            let e1 = a.rref();
            let e2 = a.clone().rref();
            prop_assert_eq!(e1.rref, e2.rref);
            prop_assert_eq!(e1.pivots, e2.pivots);
            prop_assert_eq!(a.kernel_basis(), a.kernel_basis());
        }

        #[test]
        fn full_and_forward_rank_agree(a in arb_mat(Q)) {
            prop_assert_eq!(a.rank(), a.rref().rank());
        }
    }
}
