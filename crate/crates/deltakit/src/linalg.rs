//! Dense exact linear algebra: RREF, rank, nullspace, inverse.
//!
//! Over ℚ the elimination is fraction-free (Bareiss-style two-row determinant
//! updates on a denominator-cleared integer grid), so intermediate entries are
//! minors of the input rather than arbitrarily deep fractions; the result is
//! normalized to reduced row echelon form at the end. Over F_p a plain
//! Gauss-Jordan with modular inverses produces the RREF directly.
//!
//! Pivoting is deterministic (first nonzero entry in column order), so every
//! derived basis is reproducible across runs.

#![allow(clippy::needless_range_loop)] // indexed loops match the matrix notation

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::field::{FieldConfig, Scalar};

/// Row-major dense matrix with all entries in one field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    field: FieldConfig,
    entries: Vec<Scalar>,
}

/// An endomorphism in the chosen basis: an n×n matrix acting on coordinate
/// columns, `phi(v) = M v`.
pub type LinearMap = Matrix;

impl Matrix {
    pub fn zero(rows: usize, cols: usize, field: FieldConfig) -> Self {
        Matrix {
            rows,
            cols,
            field,
            entries: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(n: usize, field: FieldConfig) -> Self {
        let mut m = Matrix::zero(n, n, field);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, field: FieldConfig, f: impl Fn(usize, usize) -> Scalar) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                let s = f(r, c);
                assert_eq!(s.field(), field, "entry field differs from matrix field");
                entries.push(s);
            }
        }
        Matrix { rows, cols, field, entries }
    }

    /// Builds a matrix from rows, rejecting ragged shapes and mixed fields.
    pub fn from_rows(field: FieldConfig, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut entries = Vec::with_capacity(nrows * ncols);
        for row in &rows {
            if row.len() != ncols {
                return Err(Error::ShapeMismatch(format!(
                    "ragged rows: expected {ncols} columns, found {}",
                    row.len()
                )));
            }
            for s in row {
                if s.field() != field {
                    return Err(Error::FieldMismatch(format!(
                        "entry in {:?} placed in a matrix over {:?}",
                        s.field(),
                        field
                    )));
                }
                entries.push(s.clone());
            }
        }
        Ok(Matrix { rows: nrows, cols: ncols, field, entries })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> FieldConfig {
        self.field
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        assert_eq!(v.field(), self.field, "entry field differs from matrix field");
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    /// Row-major flattening, the vectorization used by the solvers.
    pub fn flatten(&self) -> Vec<Scalar> {
        self.entries.clone()
    }

    pub fn from_flat(rows: usize, cols: usize, field: FieldConfig, entries: Vec<Scalar>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!(
                "expected {} entries, found {}",
                rows * cols,
                entries.len()
            )));
        }
        for s in &entries {
            if s.field() != field {
                return Err(Error::FieldMismatch("mixed fields in flat entries".into()));
            }
        }
        Ok(Matrix { rows, cols, field, entries })
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, self.field, |r, c| self.get(c, r).clone())
    }

    pub fn add(&self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "matrix add shape");
        Matrix::from_fn(self.rows, self.cols, self.field, |r, c| self.get(r, c) + rhs.get(r, c))
    }

    pub fn sub(&self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "matrix sub shape");
        Matrix::from_fn(self.rows, self.cols, self.field, |r, c| self.get(r, c) - rhs.get(r, c))
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        Matrix::from_fn(self.rows, self.cols, self.field, |r, c| self.get(r, c) * s)
    }

    pub fn mul(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "matrix mul shape");
        assert_eq!(self.field, rhs.field, "matrix mul field");
        Matrix::from_fn(self.rows, rhs.cols, self.field, |r, c| {
            let mut acc = self.field.zero();
            for k in 0..self.cols {
                if !self.get(r, k).is_zero() && !rhs.get(k, c).is_zero() {
                    acc = &acc + &(self.get(r, k) * rhs.get(k, c));
                }
            }
            acc
        })
    }

    pub fn matvec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols, "matvec length");
        (0..self.rows)
            .map(|r| {
                let mut acc = self.field.zero();
                for c in 0..self.cols {
                    if !self.get(r, c).is_zero() && !v[c].is_zero() {
                        acc = &acc + &(self.get(r, c) * &v[c]);
                    }
                }
                acc
            })
            .collect()
    }

    /// Reduced row echelon form plus the pivot column indices.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        match self.field {
            FieldConfig::Rational => self.rref_rational(),
            FieldConfig::Prime(p) => self.rref_prime(p),
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel {v : M v = 0}, read off the RREF free columns.
    pub fn nullspace(&self) -> Vec<Vec<Scalar>> {
        let (r, pivots) = self.rref();
        let pivot_set: Vec<bool> = {
            let mut v = vec![false; self.cols];
            for &c in &pivots {
                v[c] = true;
            }
            v
        };
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_set[free] {
                continue;
            }
            let mut v = vec![self.field.zero(); self.cols];
            v[free] = self.field.one();
            for (ri, &pc) in pivots.iter().enumerate() {
                v[pc] = -r.get(ri, free);
            }
            basis.push(v);
        }
        basis
    }

    /// Inverse via Gauss-Jordan on the augmented identity; singular input errors.
    pub fn inverse(&self) -> Result<Matrix> {
        if self.rows != self.cols {
            return Err(Error::ShapeMismatch("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let aug = Matrix::from_fn(n, 2 * n, self.field, |r, c| {
            if c < n {
                self.get(r, c).clone()
            } else if c - n == r {
                self.field.one()
            } else {
                self.field.zero()
            }
        });
        let (red, pivots) = aug.rref();
        if pivots.len() < n || pivots.iter().enumerate().any(|(i, &c)| c != i) {
            return Err(Error::SingularMatrix);
        }
        Ok(Matrix::from_fn(n, n, self.field, |r, c| red.get(r, n + c).clone()))
    }

    fn rref_prime(&self, p: u64) -> (Matrix, Vec<usize>) {
        let residue = |s: &Scalar| match s {
            Scalar::Prime { residue, .. } => *residue,
            _ => unreachable!(),
        };
        let mut a: Vec<Vec<u64>> = (0..self.rows)
            .map(|r| self.row(r).iter().map(residue).collect())
            .collect();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| a[i][c] != 0) else {
                continue;
            };
            a.swap(r, pr);
            let inv = Scalar::Prime { residue: a[r][c], modulus: p }
                .inv()
                .expect("nonzero pivot");
            let inv = residue(&inv);
            for j in c..self.cols {
                a[r][j] = ((a[r][j] as u128 * inv as u128) % p as u128) as u64;
            }
            for i in 0..self.rows {
                if i != r && a[i][c] != 0 {
                    let f = a[i][c];
                    for j in c..self.cols {
                        let t = (f as u128 * a[r][j] as u128) % p as u128;
                        a[i][j] = ((a[i][j] as u128 + p as u128 - t) % p as u128) as u64;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        let m = Matrix::from_fn(self.rows, self.cols, self.field, |i, j| Scalar::Prime {
            residue: a[i][j],
            modulus: p,
        });
        (m, pivots)
    }

    fn rref_rational(&self) -> (Matrix, Vec<usize>) {
        let rational = |s: &Scalar| match s {
            Scalar::Rational(r) => r.clone(),
            _ => unreachable!(),
        };
        // Clear denominators row by row; row scaling leaves the RREF unchanged.
        let mut a: Vec<Vec<BigInt>> = (0..self.rows)
            .map(|r| {
                let row: Vec<BigRational> = self.row(r).iter().map(rational).collect();
                let lcm = row
                    .iter()
                    .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
                row.iter()
                    .map(|x| x.numer() * (&lcm / x.denom()))
                    .collect()
            })
            .collect();

        // Fraction-free forward elimination; entries stay minors of the input.
        let mut pivots = Vec::new();
        let mut prev = BigInt::one();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| !a[i][c].is_zero()) else {
                continue;
            };
            a.swap(r, pr);
            for i in r + 1..self.rows {
                let f = a[i][c].clone();
                for j in c..self.cols {
                    let t = &a[r][c] * &a[i][j] - &f * &a[r][j];
                    debug_assert!((&t % &prev).is_zero(), "Bareiss division must be exact");
                    a[i][j] = t / &prev;
                }
            }
            prev = a[r][c].clone();
            pivots.push(c);
            r += 1;
        }

        // Normalize the integer echelon form to RREF over the rationals.
        let mut m: Vec<Vec<BigRational>> = a
            .into_iter()
            .map(|row| row.into_iter().map(BigRational::from_integer).collect())
            .collect();
        for (ri, &pc) in pivots.iter().enumerate().rev() {
            let pv = m[ri][pc].clone();
            for j in pc..self.cols {
                m[ri][j] = &m[ri][j] / &pv;
            }
            for i in 0..ri {
                if !m[i][pc].is_zero() {
                    let f = m[i][pc].clone();
                    for j in pc..self.cols {
                        m[i][j] = &m[i][j] - &(&f * &m[ri][j]);
                    }
                }
            }
        }
        let out = Matrix::from_fn(self.rows, self.cols, self.field, |i, j| {
            Scalar::Rational(m[i][j].clone())
        });
        (out, pivots)
    }
}

/// A linear subspace of k^ambient held as canonical RREF row vectors.
#[derive(Debug, Clone)]
pub struct Subspace {
    ambient: usize,
    field: FieldConfig,
    basis: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl Subspace {
    /// Canonicalizes a spanning set into an RREF basis.
    pub fn from_vectors(ambient: usize, field: FieldConfig, vectors: &[Vec<Scalar>]) -> Self {
        for v in vectors {
            assert_eq!(v.len(), ambient, "spanning vector length");
        }
        if vectors.is_empty() {
            return Subspace { ambient, field, basis: Vec::new(), pivots: Vec::new() };
        }
        let m = Matrix::from_rows(field, vectors.to_vec()).expect("uniform field");
        let (r, pivots) = m.rref();
        let basis = (0..pivots.len()).map(|i| r.row(i).to_vec()).collect();
        Subspace { ambient, field, basis, pivots }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.basis
    }

    /// Exact membership: reduce against the RREF basis and test for zero.
    pub fn contains(&self, v: &[Scalar]) -> bool {
        assert_eq!(v.len(), self.ambient, "vector length");
        let mut w = v.to_vec();
        for (row, &pc) in self.basis.iter().zip(&self.pivots) {
            if !w[pc].is_zero() {
                let f = w[pc].clone();
                for (wj, rj) in w.iter_mut().zip(row) {
                    *wj = &*wj - &(&f * rj);
                }
            }
        }
        w.iter().all(Scalar::is_zero)
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    /// Intersection via the kernel of [U^T | -V^T] on coefficient vectors.
    pub fn intersect(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient, "ambient dimension");
        let (du, dv) = (self.dim(), other.dim());
        if du == 0 || dv == 0 {
            return Subspace::from_vectors(self.ambient, self.field, &[]);
        }
        let m = Matrix::from_fn(self.ambient, du + dv, self.field, |r, c| {
            if c < du {
                self.basis[c][r].clone()
            } else {
                -&other.basis[c - du][r]
            }
        });
        let vectors: Vec<Vec<Scalar>> = m
            .nullspace()
            .into_iter()
            .map(|coeffs| {
                (0..self.ambient)
                    .map(|r| {
                        let mut acc = self.field.zero();
                        for (i, b) in self.basis.iter().enumerate() {
                            if !coeffs[i].is_zero() && !b[r].is_zero() {
                                acc = &acc + &(&coeffs[i] * &b[r]);
                            }
                        }
                        acc
                    })
                    .collect()
            })
            .collect();
        Subspace::from_vectors(self.ambient, self.field, &vectors)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldConfig {
        FieldConfig::Rational
    }

    fn qm(rows: &[&[i64]]) -> Matrix {
        Matrix::from_fn(rows.len(), rows[0].len(), q(), |r, c| q().from_i64(rows[r][c]))
    }

    #[test]
    fn rref_identity_is_fixed_point() {
        let m = Matrix::identity(3, q());
        let (r, pivots) = m.rref();
        assert_eq!(r, m);
        assert_eq!(pivots, vec![0, 1, 2]);
    }

    #[test]
    fn rref_rank_one_dependence() {
        let m = qm(&[&[1, 2], &[2, 4]]);
        let (r, pivots) = m.rref();
        assert_eq!(r, qm(&[&[1, 2], &[0, 0]]));
        assert_eq!(pivots, vec![0]);
        assert_eq!(m.rank(), 1);

        let f5 = FieldConfig::prime(5).unwrap();
        let m5 = Matrix::from_fn(2, 2, f5, |r, c| f5.from_i64([[1, 2], [2, 4]][r][c]));
        let (r5, pivots5) = m5.rref();
        assert_eq!(pivots5, vec![0]);
        assert_eq!(r5.get(0, 0), &f5.from_i64(1));
        assert_eq!(r5.get(0, 1), &f5.from_i64(2));
        assert!(r5.get(1, 0).is_zero() && r5.get(1, 1).is_zero());
    }

    #[test]
    fn nullspace_examples() {
        let zero = Matrix::zero(2, 2, q());
        assert_eq!(zero.nullspace().len(), 2);

        let m = qm(&[&[1, 2], &[2, 4]]);
        let ns = m.nullspace();
        assert_eq!(ns.len(), 1);
        assert_eq!(ns[0], vec![q().from_i64(-2), q().from_i64(1)]);

        let inv = qm(&[&[1, 1], &[0, 3]]);
        assert!(inv.nullspace().is_empty());
    }

    #[test]
    fn rank_examples() {
        assert_eq!(Matrix::identity(4, q()).rank(), 4);
        assert_eq!(Matrix::zero(3, 5, q()).rank(), 0);
        assert_eq!(qm(&[&[1, 2], &[2, 4]]).rank(), 1);
    }

    #[test]
    fn rref_is_idempotent() {
        let m = qm(&[&[2, 4, 1], &[3, 6, 0], &[1, 2, 7]]);
        let (r1, _) = m.rref();
        let (r2, _) = r1.rref();
        assert_eq!(r1, r2);
    }

    #[test]
    fn fraction_entries_reduce_exactly() {
        let m = Matrix::from_fn(2, 3, q(), |r, c| {
            q().parse(["1/2", "1/3", "1/6", "1/4", "1/5", "1/7"][r * 3 + c]).unwrap()
        });
        let (r, pivots) = m.rref();
        assert_eq!(pivots, vec![0, 1]);
        // every nullspace vector is killed exactly
        for v in m.nullspace() {
            assert!(m.matvec(&v).iter().all(Scalar::is_zero));
        }
        let (r2, _) = r.rref();
        assert_eq!(r, r2);
    }

    #[test]
    fn mixed_field_matrix_rejected() {
        let rows = vec![vec![q().one(), FieldConfig::prime(5).unwrap().one()]];
        assert!(matches!(Matrix::from_rows(q(), rows), Err(Error::FieldMismatch(_))));
    }

    #[test]
    fn inverse_round_trip() {
        let m = qm(&[&[1, 2], &[3, 5]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(2, q()));
        assert!(qm(&[&[1, 2], &[2, 4]]).inverse().is_err());

        let f7 = FieldConfig::prime(7).unwrap();
        let m7 = Matrix::from_fn(2, 2, f7, |r, c| f7.from_i64([[1, 2], [3, 5]][r][c]));
        assert_eq!(m7.mul(&m7.inverse().unwrap()), Matrix::identity(2, f7));
    }

    #[test]
    fn subspace_membership_and_intersection() {
        let u = Subspace::from_vectors(
            3,
            q(),
            &[
                vec![q().from_i64(1), q().from_i64(0), q().from_i64(1)],
                vec![q().from_i64(0), q().from_i64(1), q().from_i64(1)],
            ],
        );
        let v = Subspace::from_vectors(
            3,
            q(),
            &[
                vec![q().from_i64(1), q().from_i64(1), q().from_i64(2)],
                vec![q().from_i64(1), q().from_i64(0), q().from_i64(0)],
            ],
        );
        assert_eq!(u.dim(), 2);
        assert!(u.contains(&[q().from_i64(1), q().from_i64(1), q().from_i64(2)]));
        assert!(!u.contains(&[q().from_i64(1), q().from_i64(0), q().from_i64(0)]));
        let w = u.intersect(&v);
        assert_eq!(w.dim(), 1);
        assert!(u.contains(&w.basis()[0]));
        assert!(v.contains(&w.basis()[0]));
    }

    #[test]
    fn empty_shapes_are_legal() {
        let m = Matrix::zero(0, 0, q());
        assert_eq!(m.rank(), 0);
        assert!(m.nullspace().is_empty());
        let wide = Matrix::zero(0, 3, q());
        assert_eq!(wide.nullspace().len(), 3);
    }
}
