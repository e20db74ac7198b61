//! Naive reference implementations used by the test suites.
//!
//! Everything here is deliberately written the slow, obvious way: constraint
//! rows are assembled by direct loops over raw tensor entries (no operator
//! matrices), and ranks come from a textbook Gauss-Jordan elimination rather
//! than the fraction-free path in [`crate::linalg`]. Nothing in the library
//! calls this module; the solvers are checked against it, never through it.

#![allow(clippy::needless_range_loop)] // indexed loops match the matrix notation

use crate::algebra::{AlgebraSpec, ProductKind};
use crate::field::Scalar;
use crate::solver::MapParity;

/// Rank by plain Gauss-Jordan elimination with scalar inverses.
pub fn rank(mut rows: Vec<Vec<Scalar>>) -> usize {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..ncols {
        if rank == rows.len() {
            break;
        }
        let Some(pr) = (rank..rows.len()).find(|&r| !rows[r][c].is_zero()) else {
            continue;
        };
        rows.swap(rank, pr);
        let inv = rows[rank][c].inv().expect("nonzero pivot");
        for j in 0..ncols {
            rows[rank][j] = &rows[rank][j] * &inv;
        }
        for r in 0..rows.len() {
            if r != rank && !rows[r][c].is_zero() {
                let f = rows[r][c].clone();
                for j in 0..ncols {
                    rows[r][j] = &rows[r][j] - &(&f * &rows[rank][j]);
                }
            }
        }
        rank += 1;
    }
    rank
}

pub fn nullity(rows: Vec<Vec<Scalar>>, ncols: usize) -> usize {
    ncols - rank(rows)
}

fn tensor_entry(a: &AlgebraSpec, which: ProductKind, i: usize, j: usize, k: usize) -> Scalar {
    match which {
        ProductKind::Primary => a.table().get(i, j, k).clone(),
        ProductKind::Second => a.table2().expect("second table").get(i, j, k).clone(),
    }
}

/// Rows of φ(b_i b_j) = δ(φ(b_i)b_j + b_i φ(b_j)), unknowns `F[r][c]` at r·n+c.
pub fn delta_derivation_rows(a: &AlgebraSpec, delta: &Scalar, which: ProductKind) -> Vec<Vec<Scalar>> {
    let n = a.dim();
    let field = a.field();
    let mut rows = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for m in 0..n {
                let mut row = vec![field.zero(); n * n];
                for k in 0..n {
                    row[m * n + k] = &row[m * n + k] + &tensor_entry(a, which, i, j, k);
                }
                for l in 0..n {
                    let t1 = delta * &tensor_entry(a, which, l, j, m);
                    row[l * n + i] = &row[l * n + i] - &t1;
                    let t2 = delta * &tensor_entry(a, which, i, l, m);
                    row[l * n + j] = &row[l * n + j] - &t2;
                }
                rows.push(row);
            }
        }
    }
    rows
}

/// Rows of χ(ab) = χ(a)b and χ(ab) = aχ(b).
pub fn centroid_rows(a: &AlgebraSpec) -> Vec<Vec<Scalar>> {
    let n = a.dim();
    let field = a.field();
    let mut rows = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for m in 0..n {
                let mut r1 = vec![field.zero(); n * n];
                let mut r2 = vec![field.zero(); n * n];
                for k in 0..n {
                    let c = tensor_entry(a, ProductKind::Primary, i, j, k);
                    r1[m * n + k] = &r1[m * n + k] + &c;
                    r2[m * n + k] = &r2[m * n + k] + &c;
                }
                for l in 0..n {
                    let t1 = tensor_entry(a, ProductKind::Primary, l, j, m);
                    r1[l * n + i] = &r1[l * n + i] - &t1;
                    let t2 = tensor_entry(a, ProductKind::Primary, i, l, m);
                    r2[l * n + j] = &r2[l * n + j] - &t2;
                }
                rows.push(r1);
                rows.push(r2);
            }
        }
    }
    rows
}

/// Rows of the pair system: φ a δ-derivation plus both chains of the coupled
/// identity; unknowns [χ ; φ], each n² wide.
pub fn generalized_rows(a: &AlgebraSpec, delta: &Scalar) -> Vec<Vec<Scalar>> {
    let n = a.dim();
    let field = a.field();
    let off = n * n;
    let mut rows = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for m in 0..n {
                let mut r0 = vec![field.zero(); 2 * n * n];
                let mut r1 = vec![field.zero(); 2 * n * n];
                let mut r2 = vec![field.zero(); 2 * n * n];
                for k in 0..n {
                    let c = tensor_entry(a, ProductKind::Primary, i, j, k);
                    r0[off + m * n + k] = &r0[off + m * n + k] + &c;
                    r1[m * n + k] = &r1[m * n + k] + &c;
                    r2[m * n + k] = &r2[m * n + k] + &c;
                }
                for l in 0..n {
                    let left = delta * &tensor_entry(a, ProductKind::Primary, l, j, m);
                    let right = delta * &tensor_entry(a, ProductKind::Primary, i, l, m);
                    // phi(ab) = d phi(a)b + d a phi(b)
                    r0[off + l * n + i] = &r0[off + l * n + i] - &left;
                    r0[off + l * n + j] = &r0[off + l * n + j] - &right;
                    // chi(ab) = d chi(a)b + d a phi(b)
                    r1[l * n + i] = &r1[l * n + i] - &left;
                    r1[off + l * n + j] = &r1[off + l * n + j] - &right;
                    // chi(ab) = d phi(a)b + d a chi(b)
                    r2[off + l * n + i] = &r2[off + l * n + i] - &left;
                    r2[l * n + j] = &r2[l * n + j] - &right;
                }
                rows.push(r0);
                rows.push(r1);
                rows.push(r2);
            }
        }
    }
    rows
}

/// Rows of the even/odd superderivation system, parity constraints included.
pub fn superderivation_rows(a: &AlgebraSpec, delta: &Scalar, parity: MapParity) -> Vec<Vec<Scalar>> {
    let n = a.dim();
    let field = a.field();
    let g = a.grading().expect("graded algebra").to_vec();
    let mut rows = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for m in 0..n {
                let mut row = vec![field.zero(); n * n];
                for k in 0..n {
                    row[m * n + k] = &row[m * n + k] + &tensor_entry(a, ProductKind::Primary, i, j, k);
                }
                let sign = match parity {
                    MapParity::Even => field.one(),
                    MapParity::Odd => field.from_i64(if g[i] == 1 { -1 } else { 1 }),
                };
                for l in 0..n {
                    let t1 = delta * &tensor_entry(a, ProductKind::Primary, l, j, m);
                    row[l * n + i] = &row[l * n + i] - &t1;
                    let t2 = &(delta * &sign) * &tensor_entry(a, ProductKind::Primary, i, l, m);
                    row[l * n + j] = &row[l * n + j] - &t2;
                }
                rows.push(row);
            }
        }
    }
    for r in 0..n {
        for c in 0..n {
            let forbidden = match parity {
                MapParity::Even => g[r] != g[c],
                MapParity::Odd => g[r] == g[c],
            };
            if forbidden {
                let mut row = vec![field.zero(); n * n];
                row[r * n + c] = field.one();
                rows.push(row);
            }
        }
    }
    rows
}

/// Rows of {x : b_i · x = 0 for all i}.
pub fn left_annihilator_rows(a: &AlgebraSpec) -> Vec<Vec<Scalar>> {
    let n = a.dim();
    let field = a.field();
    let mut rows = Vec::new();
    for i in 0..n {
        for m in 0..n {
            let mut row = vec![field.zero(); n];
            for (j, slot) in row.iter_mut().enumerate() {
                *slot = tensor_entry(a, ProductKind::Primary, i, j, m);
            }
            rows.push(row);
        }
    }
    rows
}

/// Residual of a vectorized solution against oracle-assembled rows.
pub fn rows_kill_vector(rows: &[Vec<Scalar>], v: &[Scalar]) -> bool {
    rows.iter().all(|row| {
        let mut acc: Option<Scalar> = None;
        for (a, b) in row.iter().zip(v) {
            if !a.is_zero() && !b.is_zero() {
                let t = a * b;
                acc = Some(match acc {
                    Some(s) => &s + &t,
                    None => t,
                });
            }
        }
        acc.is_none_or(|s| s.is_zero())
    })
}
