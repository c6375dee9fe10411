//! Path categories of quivers with relations.
//!
//! Paths are stored in traversal order (first arrow first). Relations are
//! completed to a Gröbner basis of the two-sided ideal they generate, under
//! the length-then-lexicographic order; normal words give the Hom bases.
//! A presentation is accepted only when every path of length `L + 1` reduces,
//! so the quotient is spanned by paths of length at most `L`.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use crate::error::{Error, Result};
use num_traits::Zero;

use crate::exactla::{FieldSpec, Mat, Scalar};

use super::category::{CategoryParts, FiniteKCategory};

/// Default bound on the length of normal paths.
pub const DEFAULT_PATH_BOUND: usize = 12;

/// Cap on the number of Gröbner basis elements before giving up.
const MAX_BASIS: usize = 5000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub src: usize,
    pub dst: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Quiver {
    pub objects: Vec<String>,
    pub arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn new(objects: &[&str]) -> Self {
        Quiver {
            objects: objects.iter().map(|s| s.to_string()).collect(),
            arrows: Vec::new(),
        }
    }

    pub fn arrow(&mut self, name: &str, src: usize, dst: usize) -> &mut Self {
        self.arrows.push(Arrow {
            name: name.to_string(),
            src,
            dst,
        });
        self
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    /// Path from arrow names in traversal order; `None` if they do not compose.
    pub fn path(&self, src: usize, arrows: &[usize]) -> Option<QPath> {
        let mut at = src;
        for &a in arrows {
            if self.arrows[a].src != at {
                return None;
            }
            at = self.arrows[a].dst;
        }
        Some(QPath {
            src,
            dst: at,
            arrows: arrows.to_vec(),
        })
    }

    /// Right-to-left label, `1_x` for trivial paths.
    pub fn label(&self, p: &QPath) -> String {
        if p.arrows.is_empty() {
            format!("1_{}", self.objects[p.src])
        } else {
            p.arrows
                .iter()
                .rev()
                .map(|&a| self.arrows[a].name.as_str())
                .collect::<Vec<_>>()
                .join("*")
        }
    }
}

/// A path in traversal order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QPath {
    pub src: usize,
    pub dst: usize,
    pub arrows: Vec<usize>,
}

impl QPath {
    pub fn trivial(x: usize) -> Self {
        QPath {
            src: x,
            dst: x,
            arrows: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }
}

impl Ord for QPath {
    fn cmp(&self, other: &Self) -> Ordering {
        self.arrows
            .len()
            .cmp(&other.arrows.len())
            .then_with(|| self.arrows.cmp(&other.arrows))
            .then_with(|| self.src.cmp(&other.src))
            .then_with(|| self.dst.cmp(&other.dst))
    }
}

impl PartialOrd for QPath {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A relation `Σ c_i p_i = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub terms: Vec<(Scalar, QPath)>,
}

type Poly = BTreeMap<QPath, Scalar>;

struct Gb<'a> {
    field: FieldSpec,
    quiver: &'a Quiver,
    basis: Vec<Poly>,
}

fn vertex_at(q: &Quiver, p: &QPath, k: usize) -> usize {
    if k == 0 {
        p.src
    } else {
        q.arrows[p.arrows[k - 1]].dst
    }
}

fn tip(p: &Poly) -> &QPath {
    p.keys().next_back().expect("nonzero polynomial")
}

impl<'a> Gb<'a> {
    fn add_term(&self, p: &mut Poly, path: QPath, c: &Scalar) {
        let v = match p.get(&path) {
            Some(cur) => self.field.add(cur, c),
            None => c.clone(),
        };
        if v.is_zero() {
            p.remove(&path);
        } else {
            p.insert(path, v);
        }
    }

    /// Position at which the word `w` occurs inside `t`.
    fn divides(&self, w: &QPath, t: &QPath) -> Option<usize> {
        if w.is_empty() {
            return (0..=t.len()).find(|&k| vertex_at(self.quiver, t, k) == w.src);
        }
        if w.len() > t.len() {
            return None;
        }
        (0..=t.len() - w.len()).find(|&k| t.arrows[k..k + w.len()] == w.arrows[..])
    }

    fn monic(&self, mut p: Poly) -> Poly {
        if let Some(lead) = p.values().next_back().cloned() {
            let inv = self.field.inv(&lead).expect("nonzero leading coefficient");
            for v in p.values_mut() {
                *v = self.field.mul(v, &inv);
            }
        }
        p
    }

    /// Full reduction of `p` modulo `basis` (skipping index `skip`).
    fn reduce(&self, mut p: Poly, skip: Option<usize>) -> Poly {
        loop {
            let mut hit = None;
            'terms: for t in p.keys().rev() {
                for (gi, g) in self.basis.iter().enumerate() {
                    if Some(gi) == skip {
                        continue;
                    }
                    if let Some(k) = self.divides(tip(g), t) {
                        hit = Some((t.clone(), gi, k));
                        break 'terms;
                    }
                }
            }
            let Some((t, gi, k)) = hit else {
                return p;
            };
            let c = p[&t].clone();
            let g = &self.basis[gi];
            let wlen = tip(g).len();
            let prefix = &t.arrows[..k];
            let suffix = &t.arrows[k + wlen..];
            for (q, gc) in g.iter() {
                let mut arrows = prefix.to_vec();
                arrows.extend_from_slice(&q.arrows);
                arrows.extend_from_slice(suffix);
                let path = QPath {
                    src: t.src,
                    dst: t.dst,
                    arrows,
                };
                let delta = self.field.neg(&self.field.mul(&c, gc));
                self.add_term(&mut p, path, &delta);
            }
        }
    }

    fn interreduce(&mut self) {
        loop {
            let mut changed = false;
            let mut i = 0;
            while i < self.basis.len() {
                let p = self.basis[i].clone();
                let r = self.reduce(p.clone(), Some(i));
                if r.is_empty() {
                    self.basis.remove(i);
                    changed = true;
                    continue;
                }
                let r = self.monic(r);
                if r != p {
                    self.basis[i] = r;
                    changed = true;
                }
                i += 1;
            }
            if !changed {
                break;
            }
        }
        self.basis.sort_by(|a, b| tip(a).cmp(tip(b)));
    }

    fn shift(&self, p: &Poly, left: &[usize], right: &[usize], src: usize, dst: usize) -> Poly {
        let mut out = Poly::new();
        for (q, c) in p {
            let mut arrows = left.to_vec();
            arrows.extend_from_slice(&q.arrows);
            arrows.extend_from_slice(right);
            self.add_term(&mut out, QPath { src, dst, arrows }, c);
        }
        out
    }

    /// S-polynomials from suffix/prefix overlaps of tips, shortest ambiguity first.
    fn overlaps(&self, cap: usize) -> Vec<(usize, Poly)> {
        let mut out = Vec::new();
        for g1 in &self.basis {
            for g2 in &self.basis {
                let (w1, w2) = (tip(g1), tip(g2));
                if w1.is_empty() || w2.is_empty() {
                    continue;
                }
                for l in 1..w1.len().min(w2.len()) {
                    if w1.arrows[w1.len() - l..] != w2.arrows[..l] {
                        continue;
                    }
                    let amb = w1.len() + w2.len() - l;
                    if amb > cap {
                        continue;
                    }
                    let u = &w1.arrows[..w1.len() - l];
                    let v = &w2.arrows[l..];
                    let a = self.shift(g1, &[], v, w1.src, w2.dst);
                    let b = self.shift(g2, u, &[], w1.src, w2.dst);
                    let mut s = a;
                    let minus_one = self.field.from_i64(-1);
                    for (q, c) in b {
                        self.add_term(&mut s, q, &self.field.mul(&c, &minus_one));
                    }
                    out.push((amb, s));
                }
            }
        }
        out.sort_by_key(|(amb, _)| *amb);
        out
    }
}

/// Normal-form machinery for a finite quiver presentation.
#[derive(Clone, Debug)]
pub struct PathAlgebra {
    field: FieldSpec,
    quiver: Quiver,
    basis: Vec<Poly>,
    words: Vec<Vec<Vec<QPath>>>,
}

impl PathAlgebra {
    /// Completes the relations and certifies finiteness at `bound`.
    pub fn new(field: FieldSpec, quiver: Quiver, relations: &[Relation], bound: usize) -> Result<Self> {
        let n = quiver.objects.len();
        if n == 0 {
            return Err(Error::Malformed("quiver has no objects".into()));
        }
        for a in &quiver.arrows {
            if a.src >= n || a.dst >= n {
                return Err(Error::Malformed(format!("arrow {} has an unknown endpoint", a.name)));
            }
        }
        let mut gb = Gb {
            field,
            quiver: &quiver,
            basis: Vec::new(),
        };
        for r in relations {
            let mut p = Poly::new();
            let mut ends = None;
            for (c, path) in &r.terms {
                if quiver.path(path.src, &path.arrows).as_ref() != Some(path) {
                    return Err(Error::Malformed(format!("`{}` is not a path", quiver.label(path))));
                }
                if *ends.get_or_insert((path.src, path.dst)) != (path.src, path.dst) {
                    return Err(Error::Malformed("relation mixes paths with different endpoints".into()));
                }
                if !field.admits(c) {
                    return Err(Error::Malformed(format!("coefficient {c} is not defined in {field}")));
                }
                gb.add_term(&mut p, path.clone(), &field.reduce(c));
            }
            if !p.is_empty() {
                let p = gb.monic(p);
                gb.basis.push(p);
            }
        }
        gb.interreduce();
        let cap = 2 * bound + 2;
        loop {
            let mut added = false;
            for (_, s) in gb.overlaps(cap) {
                let r = gb.reduce(s, None);
                if !r.is_empty() {
                    let r = gb.monic(r);
                    gb.basis.push(r);
                    gb.interreduce();
                    added = true;
                    break;
                }
            }
            if gb.basis.len() > MAX_BASIS {
                return Err(Error::Finiteness(format!(
                    "Gröbner basis exceeded {MAX_BASIS} elements before stabilising"
                )));
            }
            if !added {
                break;
            }
        }
        if let Some(g) = gb.basis.iter().find(|g| tip(g).len() > bound + 1) {
            return Err(Error::Finiteness(format!(
                "reduced relation with leading path `{}` is longer than {}",
                quiver.label(tip(g)),
                bound + 1
            )));
        }
        // Irreducible paths, grown one arrow at a time.
        let mut words = vec![vec![Vec::new(); n]; n];
        let mut frontier: Vec<QPath> = (0..n).map(QPath::trivial).collect();
        let mut length = 0;
        while !frontier.is_empty() {
            frontier.retain(|p| gb.basis.iter().all(|g| gb.divides(tip(g), p).is_none()));
            if length == bound + 1 {
                if let Some(p) = frontier.first() {
                    return Err(Error::Finiteness(format!(
                        "path `{}` of length {} does not reduce; paths grow without bound",
                        quiver.label(p),
                        bound + 1
                    )));
                }
                break;
            }
            let mut next = Vec::new();
            for p in &frontier {
                words[p.src][p.dst].push(p.clone());
                for (ai, a) in quiver.arrows.iter().enumerate() {
                    if a.src == p.dst {
                        let mut arrows = p.arrows.clone();
                        arrows.push(ai);
                        next.push(QPath {
                            src: p.src,
                            dst: a.dst,
                            arrows,
                        });
                    }
                }
            }
            frontier = next;
            length += 1;
        }
        for row in &mut words {
            for cell in row.iter_mut() {
                cell.sort();
            }
        }
        let basis = gb.basis;
        Ok(PathAlgebra {
            field,
            quiver,
            basis,
            words,
        })
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    /// Number of elements in the reduced Gröbner basis.
    pub fn groebner_size(&self) -> usize {
        self.basis.len()
    }

    /// Normal form of a linear combination of paths from `x` to `y`, as coordinates.
    pub fn coordinates(&self, x: usize, y: usize, terms: &[(Scalar, QPath)]) -> Result<Mat> {
        let gb = Gb {
            field: self.field,
            quiver: &self.quiver,
            basis: self.basis.clone(),
        };
        let mut p = Poly::new();
        for (c, path) in terms {
            if (path.src, path.dst) != (x, y) {
                return Err(Error::Malformed(format!(
                    "`{}` is not a path {} → {}",
                    self.quiver.label(path),
                    self.quiver.objects[x],
                    self.quiver.objects[y]
                )));
            }
            gb.add_term(&mut p, path.clone(), &self.field.reduce(c));
        }
        let r = gb.reduce(p, None);
        let words = &self.words[x][y];
        let mut v = Mat::zeros(self.field, words.len(), 1);
        for (path, c) in r {
            let k = words
                .iter()
                .position(|w| *w == path)
                .expect("normal form is a combination of normal words");
            v.set(k, 0, &c);
        }
        Ok(v)
    }

    /// The presented category: Hom bases are normal words, labelled right-to-left.
    pub fn category(&self) -> FiniteKCategory {
        let n = self.quiver.objects.len();
        let field = self.field;
        let one = field.one();
        let hom: Vec<Vec<Vec<String>>> = (0..n)
            .map(|x| (0..n).map(|y| self.words[x][y].iter().map(|p| self.quiver.label(p)).collect()).collect())
            .collect();
        let mut comp = Vec::with_capacity(n);
        for x in 0..n {
            let mut row = Vec::with_capacity(n);
            for y in 0..n {
                let mut cell = Vec::with_capacity(n);
                for z in 0..n {
                    let (fs, gs) = (&self.words[x][y], &self.words[y][z]);
                    let mut m = Mat::zeros(field, self.words[x][z].len(), fs.len() * gs.len());
                    for (j, g) in gs.iter().enumerate() {
                        for (i, f) in fs.iter().enumerate() {
                            let mut arrows = f.arrows.clone();
                            arrows.extend_from_slice(&g.arrows);
                            let path = QPath { src: x, dst: z, arrows };
                            let v = self
                                .coordinates(x, z, &[(one.clone(), path)])
                                .expect("endpoints match");
                            m.set_block(0, j * fs.len() + i, &v);
                        }
                    }
                    cell.push(m);
                }
                row.push(cell);
            }
            comp.push(row);
        }
        let identity = (0..n)
            .map(|x| {
                self.coordinates(x, x, &[(one.clone(), QPath::trivial(x))])
                    .expect("trivial path")
            })
            .collect();
        FiniteKCategory::unchecked(CategoryParts {
            field,
            objects: self.quiver.objects.clone(),
            hom,
            comp,
            identity,
        })
    }
}

/// Convenience wrapper: presents and validates the category of a quiver with relations.
pub fn quiver_category(field: FieldSpec, quiver: Quiver, relations: &[Relation], bound: usize) -> Result<FiniteKCategory> {
    let c = PathAlgebra::new(field, quiver, relations, bound)?.category();
    let report = c.validate();
    if report.is_valid() {
        Ok(c)
    } else {
        Err(Error::InvalidCategory(report.to_string()))
    }
}
