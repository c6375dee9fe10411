//! Seeded random generation of small valid categories.

use rand::Rng;

use crate::exactla::{FieldSpec, Mat};

use super::category::{CategoryParts, FiniteKCategory};

fn random_matrix<R: Rng>(field: FieldSpec, rng: &mut R, rows: usize, cols: usize) -> Mat {
    let vals: Vec<Vec<i64>> = (0..rows)
        .map(|_| (0..cols).map(|_| rng.gen_range(-1..=2)).collect())
        .collect();
    if rows == 0 || cols == 0 {
        return Mat::zeros(field, rows, cols);
    }
    Mat::from_i64_rows(field, &vals)
}

/// A random two-object category realised inside matrices: `Hom(x,y)` is the
/// subspace of `K^{n_y × n_x}` generated under composition by identities and a
/// few random matrices. Retries until the total Hom dimension is at most
/// `max_total_dim`.
pub fn random_category<R: Rng>(field: FieldSpec, rng: &mut R, max_total_dim: usize) -> FiniteKCategory {
    loop {
        if let Some(c) = attempt(field, rng, max_total_dim) {
            return c;
        }
    }
}

fn attempt<R: Rng>(field: FieldSpec, rng: &mut R, max_total_dim: usize) -> Option<FiniteKCategory> {
    let sizes = [rng.gen_range(1..=2usize), rng.gen_range(1..=2usize)];
    let n = 2;
    // spans[x][y]: columns are row-major flattenings of n_y × n_x matrices.
    let mut spans: Vec<Vec<Mat>> = (0..n)
        .map(|x| (0..n).map(|y| Mat::zeros(field, sizes[y] * sizes[x], 0)).collect())
        .collect();
    let flat = |m: &Mat| Mat::column(field, &m.entries());
    let unflat = |v: &Mat, r: usize, c: usize| Mat::from_scalars(field, r, c, &v.entries());
    for x in 0..n {
        spans[x][x] = flat(&Mat::identity(field, sizes[x]));
    }
    let mut gens = vec![(0, 1, random_matrix(field, rng, sizes[1], sizes[0]))];
    if rng.gen_bool(0.5) {
        gens.push((0, 1, random_matrix(field, rng, sizes[1], sizes[0])));
    }
    for x in 0..n {
        if sizes[x] == 2 && rng.gen_bool(0.5) {
            let mut m = Mat::zeros(field, 2, 2);
            m.set(0, 1, &field.from_i64(rng.gen_range(1..=2)));
            gens.push((x, x, m));
        }
    }
    if rng.gen_bool(0.25) {
        gens.push((1, 0, random_matrix(field, rng, sizes[0], sizes[1])));
    }
    for (x, y, g) in gens {
        let v = flat(&g);
        let joined = Mat::hstack(field, v.rows(), &[&spans[x][y], &v]);
        spans[x][y] = joined.column_space();
    }
    loop {
        let total: usize = spans.iter().flatten().map(Mat::cols).sum();
        if total > max_total_dim {
            return None;
        }
        let mut grew = false;
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    for j in 0..spans[y][z].cols() {
                        for i in 0..spans[x][y].cols() {
                            let a = unflat(&spans[x][y].col(i), sizes[y], sizes[x]);
                            let b = unflat(&spans[y][z].col(j), sizes[z], sizes[y]);
                            let v = flat(&b.mul(&a));
                            if !spans[x][z].contains_columns(&v) {
                                let joined = Mat::hstack(field, v.rows(), &[&spans[x][z], &v]);
                                spans[x][z] = joined.column_space();
                                grew = true;
                            }
                        }
                    }
                }
            }
        }
        if !grew {
            break;
        }
    }
    let objects = vec!["1".to_string(), "2".to_string()];
    let hom: Vec<Vec<Vec<String>>> = (0..n)
        .map(|x| {
            (0..n)
                .map(|y| (0..spans[x][y].cols()).map(|k| format!("r{}{}_{k}", x + 1, y + 1)).collect())
                .collect()
        })
        .collect();
    let comp = (0..n)
        .map(|x| {
            (0..n)
                .map(|y| {
                    (0..n)
                        .map(|z| {
                            let (dxy, dyz) = (spans[x][y].cols(), spans[y][z].cols());
                            let mut m = Mat::zeros(field, spans[x][z].cols(), dyz * dxy);
                            for j in 0..dyz {
                                for i in 0..dxy {
                                    let a = unflat(&spans[x][y].col(i), sizes[y], sizes[x]);
                                    let b = unflat(&spans[y][z].col(j), sizes[z], sizes[y]);
                                    let coords = spans[x][z].solve_exact(&flat(&b.mul(&a)));
                                    m.set_block(0, j * dxy + i, &coords);
                                }
                            }
                            m
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    let identity = (0..n)
        .map(|x| spans[x][x].solve_exact(&flat(&Mat::identity(field, sizes[x]))))
        .collect();
    Some(FiniteKCategory::unchecked(CategoryParts {
        field,
        objects,
        hom,
        comp,
        identity,
    }))
}
