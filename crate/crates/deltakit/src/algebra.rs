//! Structure-constant (super)algebras and their elementary operations.
//!
//! An algebra is a dimension, a field, an n×n×n tensor `c[i][j][k]` meaning
//! `b_i · b_j = Σ_k c[i][j][k] b_k`, an optional ℤ₂-grading, and an optional
//! second bilinear product used by the double constructions. The superalgebra
//! law `G_i G_j ⊆ G_{i+j mod 2}` is validated whenever a grading is present.

use crate::error::{Error, Result};
use crate::field::{FieldConfig, Scalar};
use crate::linalg::{LinearMap, Matrix};

/// Which bilinear product an operation refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProductKind {
    Primary,
    Second,
}

/// Side for annihilator computations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
    TwoSided,
}

/// Parity of an element with respect to the grading, derived from support.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
    Mixed,
}

/// Dense n×n×n structure tensor over one field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tensor {
    dim: usize,
    field: FieldConfig,
    entries: Vec<Scalar>,
}

impl Tensor {
    pub fn zero(dim: usize, field: FieldConfig) -> Self {
        Tensor { dim, field, entries: vec![field.zero(); dim * dim * dim] }
    }

    pub fn from_fn(dim: usize, field: FieldConfig, f: impl Fn(usize, usize, usize) -> Scalar) -> Self {
        let mut t = Tensor::zero(dim, field);
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    t.set(i, j, k, f(i, j, k));
                }
            }
        }
        t
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn field(&self) -> FieldConfig {
        self.field
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.entries[(i * self.dim + j) * self.dim + k]
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, v: Scalar) {
        assert_eq!(v.field(), self.field, "tensor entry field");
        self.entries[(i * self.dim + j) * self.dim + k] = v;
    }

    /// Coordinates of the product `b_i · b_j`.
    pub fn product(&self, i: usize, j: usize) -> &[Scalar] {
        &self.entries[(i * self.dim + j) * self.dim..(i * self.dim + j + 1) * self.dim]
    }
}

/// An element of an algebra: a coordinate vector in the working basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Element {
    coords: Vec<Scalar>,
}

impl Element {
    pub fn from_coords(algebra: &AlgebraSpec, coords: Vec<Scalar>) -> Result<Self> {
        if coords.len() != algebra.dim() {
            return Err(Error::ShapeMismatch(format!(
                "element has {} coordinates in a {}-dimensional algebra",
                coords.len(),
                algebra.dim()
            )));
        }
        for s in &coords {
            if s.field() != algebra.field() {
                return Err(Error::FieldMismatch("element coordinates outside the algebra's field".into()));
            }
        }
        Ok(Element { coords })
    }

    pub fn zero(algebra: &AlgebraSpec) -> Self {
        Element { coords: vec![algebra.field().zero(); algebra.dim()] }
    }

    /// Wraps already-validated coordinates (crate internal).
    pub(crate) fn from_raw(coords: Vec<Scalar>) -> Self {
        Element { coords }
    }

    pub fn basis(algebra: &AlgebraSpec, i: usize) -> Self {
        let mut e = Element::zero(algebra);
        e.coords[i] = algebra.field().one();
        e
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<Scalar> {
        self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Scalar::is_zero)
    }

    pub fn add(&self, rhs: &Element) -> Element {
        assert_eq!(self.coords.len(), rhs.coords.len(), "element add length");
        Element {
            coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, rhs: &Element) -> Element {
        assert_eq!(self.coords.len(), rhs.coords.len(), "element sub length");
        Element {
            coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, s: &Scalar) -> Element {
        Element { coords: self.coords.iter().map(|a| a * s).collect() }
    }

    /// Parity from support: `Even`/`Odd` for homogeneous support, `Mixed`
    /// otherwise, `None` on ungraded algebras. The zero element counts as even.
    pub fn parity(&self, algebra: &AlgebraSpec) -> Option<Parity> {
        let grading = algebra.grading()?;
        let mut seen_even = false;
        let mut seen_odd = false;
        for (c, g) in self.coords.iter().zip(grading) {
            if !c.is_zero() {
                if *g == 0 {
                    seen_even = true;
                } else {
                    seen_odd = true;
                }
            }
        }
        Some(match (seen_even, seen_odd) {
            (true, true) => Parity::Mixed,
            (false, true) => Parity::Odd,
            _ => Parity::Even,
        })
    }
}

/// A finite-dimensional algebra presented by structure constants.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraSpec {
    field: FieldConfig,
    dim: usize,
    names: Vec<String>,
    grading: Option<Vec<u8>>,
    table: Tensor,
    table2: Option<Tensor>,
}

impl AlgebraSpec {
    pub fn new(
        field: FieldConfig,
        names: Vec<String>,
        grading: Option<Vec<u8>>,
        table: Tensor,
        table2: Option<Tensor>,
    ) -> Result<Self> {
        let dim = table.dim();
        if names.len() != dim {
            return Err(Error::ShapeMismatch(format!(
                "{} names for a {dim}-dimensional algebra",
                names.len()
            )));
        }
        if table.field() != field {
            return Err(Error::FieldMismatch("table is over a different field".into()));
        }
        if let Some(g) = &grading {
            if g.len() != dim {
                return Err(Error::ShapeMismatch("grading length differs from dimension".into()));
            }
            if g.iter().any(|&x| x > 1) {
                return Err(Error::Parse("grading entries must be 0 or 1".into()));
            }
        }
        if let Some(t2) = &table2 {
            if t2.dim() != dim {
                return Err(Error::ShapeMismatch("second table has a different dimension".into()));
            }
            if t2.field() != field {
                return Err(Error::FieldMismatch("second table is over a different field".into()));
            }
        }
        let spec = AlgebraSpec { field, dim, names, grading, table, table2 };
        spec.assert_grading_consistent()?;
        Ok(spec)
    }

    /// Every nonzero `c[i][j][k]` must respect parity(k) = parity(i)+parity(j).
    fn assert_grading_consistent(&self) -> Result<()> {
        let Some(g) = &self.grading else { return Ok(()) };
        let tables = [Some(&self.table), self.table2.as_ref()];
        for t in tables.into_iter().flatten() {
            for i in 0..self.dim {
                for j in 0..self.dim {
                    for k in 0..self.dim {
                        if !t.get(i, j, k).is_zero() && g[k] != (g[i] + g[j]) % 2 {
                            return Err(Error::GradingInconsistent { i, j, k });
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn field(&self) -> FieldConfig {
        self.field
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn grading(&self) -> Option<&[u8]> {
        self.grading.as_deref()
    }

    pub fn is_graded(&self) -> bool {
        self.grading.is_some()
    }

    pub fn table(&self) -> &Tensor {
        &self.table
    }

    pub fn table2(&self) -> Option<&Tensor> {
        self.table2.as_ref()
    }

    /// Replaces the second product; used to set brackets before doubling.
    pub fn with_table2(mut self, table2: Tensor) -> Result<Self> {
        if table2.dim() != self.dim || table2.field() != self.field {
            return Err(Error::ShapeMismatch("second table shape or field mismatch".into()));
        }
        self.table2 = Some(table2);
        self.assert_grading_consistent()?;
        Ok(self)
    }

    fn tensor(&self, which: ProductKind) -> Result<&Tensor> {
        match which {
            ProductKind::Primary => Ok(&self.table),
            ProductKind::Second => self.table2.as_ref().ok_or(Error::MissingSecondProduct),
        }
    }

    /// Bilinear extension of the selected structure tensor.
    pub fn multiply(&self, u: &Element, v: &Element, which: ProductKind) -> Result<Element> {
        let t = self.tensor(which)?;
        if u.coords.len() != self.dim || v.coords.len() != self.dim {
            return Err(Error::ShapeMismatch("element dimension mismatch".into()));
        }
        let mut out = vec![self.field.zero(); self.dim];
        for i in 0..self.dim {
            if u.coords[i].is_zero() {
                continue;
            }
            for j in 0..self.dim {
                if v.coords[j].is_zero() {
                    continue;
                }
                let f = &u.coords[i] * &v.coords[j];
                for (k, c) in t.product(i, j).iter().enumerate() {
                    if !c.is_zero() {
                        out[k] = &out[k] + &(&f * c);
                    }
                }
            }
        }
        Ok(Element { coords: out })
    }

    /// Product of two basis vectors as an element.
    pub fn basis_product(&self, i: usize, j: usize, which: ProductKind) -> Result<Element> {
        let t = self.tensor(which)?;
        Ok(Element { coords: t.product(i, j).to_vec() })
    }

    /// Left multiplication operator `L_i : x ↦ b_i · x` as a matrix.
    pub fn left_mul_operator(&self, i: usize, which: ProductKind) -> Result<LinearMap> {
        let t = self.tensor(which)?;
        Ok(Matrix::from_fn(self.dim, self.dim, self.field, |m, j| t.get(i, j, m).clone()))
    }

    /// Right multiplication operator `R_j : x ↦ x · b_j` as a matrix.
    pub fn right_mul_operator(&self, j: usize, which: ProductKind) -> Result<LinearMap> {
        let t = self.tensor(which)?;
        Ok(Matrix::from_fn(self.dim, self.dim, self.field, |m, i| t.get(i, j, m).clone()))
    }

    /// Basis of the requested annihilator, via the nullspace of stacked
    /// multiplication operators.
    pub fn annihilator(&self, side: Side) -> Vec<Element> {
        let mut blocks: Vec<LinearMap> = Vec::new();
        for i in 0..self.dim {
            match side {
                Side::Left => blocks.push(self.left_mul_operator(i, ProductKind::Primary).unwrap()),
                Side::Right => blocks.push(self.right_mul_operator(i, ProductKind::Primary).unwrap()),
                Side::TwoSided => {
                    blocks.push(self.left_mul_operator(i, ProductKind::Primary).unwrap());
                    blocks.push(self.right_mul_operator(i, ProductKind::Primary).unwrap());
                }
            }
        }
        let stacked = Matrix::from_fn(blocks.len() * self.dim, self.dim, self.field, |r, c| {
            blocks[r / self.dim].get(r % self.dim, c).clone()
        });
        stacked
            .nullspace()
            .into_iter()
            .map(|coords| Element { coords })
            .collect()
    }

    /// The symmetrized algebra A⁺ with `a ⊙ b = ½(ab + ba)`.
    pub fn plus_algebra(&self) -> AlgebraSpec {
        let half = self.field.half();
        let table = Tensor::from_fn(self.dim, self.field, |i, j, k| {
            &(self.table.get(i, j, k) + self.table.get(j, i, k)) * &half
        });
        AlgebraSpec {
            field: self.field,
            dim: self.dim,
            names: self.names.clone(),
            grading: self.grading.clone(),
            table,
            table2: None,
        }
    }

    /// Block-diagonal direct sum; products across summands vanish.
    ///
    /// Gradings concatenate (an ungraded summand counts as all-even when the
    /// other is graded); the second product survives only when both summands
    /// carry one.
    pub fn direct_sum(&self, other: &AlgebraSpec) -> Result<AlgebraSpec> {
        if self.field != other.field {
            return Err(Error::FieldMismatch("direct sum of algebras over different fields".into()));
        }
        let (na, nb) = (self.dim, other.dim);
        let n = na + nb;
        let block = |ta: &Tensor, tb: &Tensor| {
            Tensor::from_fn(n, self.field, |i, j, k| {
                if i < na && j < na && k < na {
                    ta.get(i, j, k).clone()
                } else if i >= na && j >= na && k >= na {
                    tb.get(i - na, j - na, k - na).clone()
                } else {
                    self.field.zero()
                }
            })
        };
        let table = block(&self.table, &other.table);
        let table2 = match (&self.table2, &other.table2) {
            (Some(a), Some(b)) => Some(block(a, b)),
            _ => None,
        };
        let grading = if self.grading.is_some() || other.grading.is_some() {
            let mut g = self.grading.clone().unwrap_or_else(|| vec![0; na]);
            g.extend(other.grading.clone().unwrap_or_else(|| vec![0; nb]));
            Some(g)
        } else {
            None
        };
        let mut names = self.names.clone();
        names.extend(other.names.iter().cloned());
        AlgebraSpec::new(self.field, names, grading, table, table2)
    }

    /// Solves `e·x = x·e = x` for all basis x; returns the unit if one exists.
    pub fn unit_element(&self) -> Option<Element> {
        let n = self.dim;
        // Unknown e with rows (j, m): sum_i e_i c[i][j][m] = delta_jm (left)
        // and sum_i e_i c[j][i][m] = delta_jm (right); augmented solve.
        let aug = Matrix::from_fn(2 * n * n, n + 1, self.field, |r, c| {
            let (jm, right_side) = (r / 2, r % 2 == 1);
            let (j, m) = (jm / n, jm % n);
            if c == n {
                if j == m {
                    self.field.one()
                } else {
                    self.field.zero()
                }
            } else if right_side {
                self.table.get(j, c, m).clone()
            } else {
                self.table.get(c, j, m).clone()
            }
        });
        let (red, pivots) = aug.rref();
        if pivots.contains(&n) {
            return None; // inconsistent system
        }
        let mut coords = vec![self.field.zero(); n];
        for (ri, &pc) in pivots.iter().enumerate() {
            coords[pc] = red.get(ri, n).clone();
        }
        let candidate = Element { coords };
        // Verify directly; a genuine unit is unique.
        for j in 0..n {
            let bj = Element::basis(self, j);
            let left = self.multiply(&candidate, &bj, ProductKind::Primary).unwrap();
            let right = self.multiply(&bj, &candidate, ProductKind::Primary).unwrap();
            if left != bj || right != bj {
                return None;
            }
        }
        Some(candidate)
    }

    /// Conjugates the structure tensor(s) by an invertible matrix P whose
    /// columns are the new basis vectors in old coordinates.
    ///
    /// The grading is kept only when the transformed tensors still satisfy it;
    /// otherwise the result is ungraded.
    pub fn change_basis(&self, p: &Matrix) -> Result<AlgebraSpec> {
        if p.rows() != self.dim || p.cols() != self.dim {
            return Err(Error::ShapeMismatch("change of basis matrix must be n×n".into()));
        }
        if p.field() != self.field {
            return Err(Error::FieldMismatch("change of basis over a different field".into()));
        }
        let q = p.inverse()?; // errors on singular P
        let transform = |t: &Tensor| -> Tensor {
            let mut out = Tensor::zero(self.dim, self.field);
            for i in 0..self.dim {
                for j in 0..self.dim {
                    // product of new basis vectors, in old coordinates
                    let mut w = vec![self.field.zero(); self.dim];
                    for a in 0..self.dim {
                        if p.get(a, i).is_zero() {
                            continue;
                        }
                        for b in 0..self.dim {
                            if p.get(b, j).is_zero() {
                                continue;
                            }
                            let f = p.get(a, i) * p.get(b, j);
                            for (k, c) in t.product(a, b).iter().enumerate() {
                                if !c.is_zero() {
                                    w[k] = &w[k] + &(&f * c);
                                }
                            }
                        }
                    }
                    for (k, v) in q.matvec(&w).into_iter().enumerate() {
                        out.set(i, j, k, v);
                    }
                }
            }
            out
        };
        let table = transform(&self.table);
        let table2 = self.table2.as_ref().map(transform);
        match AlgebraSpec::new(self.field, self.names.clone(), self.grading.clone(), table.clone(), table2.clone()) {
            Ok(a) => Ok(a),
            Err(Error::GradingInconsistent { .. }) => {
                AlgebraSpec::new(self.field, self.names.clone(), None, table, table2)
            }
            Err(e) => Err(e),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn q() -> FieldConfig {
        FieldConfig::Rational
    }

    #[test]
    fn abelian_products_vanish() {
        let a = catalog::abelian(2);
        let u = Element::from_coords(&a, vec![q().from_i64(3), q().from_i64(-1)]).unwrap();
        let v = Element::from_coords(&a, vec![q().from_i64(2), q().from_i64(7)]).unwrap();
        assert!(a.multiply(&u, &v, ProductKind::Primary).unwrap().is_zero());
        assert_eq!(a.annihilator(Side::Left).len(), 2);
    }

    #[test]
    fn missing_second_product_errors() {
        let a = catalog::abelian(2);
        let u = Element::basis(&a, 0);
        assert!(matches!(
            a.multiply(&u, &u, ProductKind::Second),
            Err(Error::MissingSecondProduct)
        ));
    }

    #[test]
    fn k3_half_action_on_odd_part() {
        let a = catalog::kaplansky_k3();
        let e = Element::basis(&a, 0);
        let z = Element::basis(&a, 1);
        let ez = a.multiply(&e, &z, ProductKind::Primary).unwrap();
        assert_eq!(ez, z.scale(&q().half()));
    }

    #[test]
    fn grading_violation_rejected() {
        let mut t = Tensor::zero(2, q());
        t.set(0, 0, 1, q().one()); // even*even landing in odd part
        let err = AlgebraSpec::new(q(), vec!["a".into(), "b".into()], Some(vec![0, 1]), t, None);
        assert!(matches!(err, Err(Error::GradingInconsistent { i: 0, j: 0, k: 1 })));
    }

    #[test]
    fn plus_algebra_of_sl2_is_zero() {
        let plus = catalog::sl2().plus_algebra();
        for i in 0..3 {
            for j in 0..3 {
                assert!(plus.basis_product(i, j, ProductKind::Primary).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn plus_algebra_fixes_commutative_input() {
        let m2_plus = catalog::m2().plus_algebra();
        assert_eq!(m2_plus.plus_algebra().table(), m2_plus.table());
    }

    #[test]
    fn annihilator_of_simple_algebra_is_zero() {
        assert!(catalog::sl2().annihilator(Side::Left).is_empty());
        assert!(catalog::sl2().annihilator(Side::TwoSided).is_empty());
    }

    #[test]
    fn one_sided_annihilators_differ() {
        // x acts as a left unit, y multiplies everything to zero from the left
        let mut t = Tensor::zero(2, q());
        t.set(0, 0, 0, q().one());
        t.set(0, 1, 1, q().one());
        let a = AlgebraSpec::new(q(), vec!["x".into(), "y".into()], None, t, None).unwrap();
        assert!(a.annihilator(Side::Left).is_empty());
        let right = a.annihilator(Side::Right);
        assert_eq!(right.len(), 1);
        assert_eq!(right[0], Element::basis(&a, 1));
        assert!(a.annihilator(Side::TwoSided).is_empty());
    }

    #[test]
    fn direct_sum_shapes_and_annihilator() {
        let s = catalog::sl2().direct_sum(&catalog::abelian(1)).unwrap();
        assert_eq!(s.dim(), 4);
        assert_eq!(s.annihilator(Side::Left).len(), 1);
        // products across summands vanish
        let u = Element::basis(&s, 0);
        let v = Element::basis(&s, 3);
        assert!(s.multiply(&u, &v, ProductKind::Primary).unwrap().is_zero());

        let ann_a = catalog::abelian(2).annihilator(Side::Left).len();
        let sum = catalog::abelian(2).direct_sum(&catalog::sl2()).unwrap();
        assert_eq!(sum.annihilator(Side::Left).len(), ann_a);

        // graded + ungraded: the ungraded summand counts as all-even
        let mixed = catalog::kaplansky_k3().direct_sum(&catalog::abelian(1)).unwrap();
        assert_eq!(mixed.grading(), Some(&[0, 1, 1, 0][..]));
    }

    #[test]
    fn unit_elements() {
        let m2 = catalog::m2();
        let unit = m2.unit_element().unwrap();
        assert_eq!(
            unit.coords(),
            &[q().one(), q().zero(), q().zero(), q().one()]
        );
        assert!(catalog::sl2().unit_element().is_none());
        assert!(catalog::abelian(3).unit_element().is_none());
    }

    #[test]
    fn change_basis_identity_and_round_trip() {
        let a = catalog::sl2();
        let p = Matrix::identity(3, q());
        assert_eq!(a.change_basis(&p).unwrap().table(), a.table());

        let p = Matrix::from_fn(3, 3, q(), |r, c| {
            q().from_i64([[1, 1, 0], [0, 1, 0], [2, 0, 1]][r][c])
        });
        let back = a.change_basis(&p).unwrap().change_basis(&p.inverse().unwrap()).unwrap();
        assert_eq!(back.table(), a.table());

        let singular = Matrix::zero(3, 3, q());
        assert!(matches!(a.change_basis(&singular), Err(Error::SingularMatrix)));
    }

    #[test]
    fn change_basis_preserves_identity_verdicts() {
        use crate::identities::{check_identities, Identity};
        let p = Matrix::from_fn(3, 3, q(), |r, c| {
            q().from_i64([[1, 2, 0], [0, 1, -1], [1, 0, 1]][r][c])
        });
        let sl2_changed = catalog::sl2().change_basis(&p).unwrap();
        assert!(check_identities(&sl2_changed, &[Identity::Anticommutative, Identity::Jacobi])
            .unwrap()
            .all_hold());
        assert!(!check_identities(&sl2_changed, &[Identity::Associative]).unwrap().all_hold());

        let p4 = Matrix::from_fn(4, 4, q(), |r, c| {
            q().from_i64([[1, 0, 0, 1], [0, 1, 1, 0], [0, 0, 1, 0], [0, 0, 0, 1]][r][c])
        });
        let m2_changed = catalog::m2().change_basis(&p4).unwrap();
        assert!(check_identities(&m2_changed, &[Identity::Associative]).unwrap().all_hold());
        assert_eq!(m2_changed.annihilator(Side::Left).len(), 0);
    }

    #[test]
    fn parity_from_support() {
        let a = catalog::kaplansky_k3();
        assert_eq!(Element::basis(&a, 0).parity(&a), Some(Parity::Even));
        assert_eq!(Element::basis(&a, 1).parity(&a), Some(Parity::Odd));
        let mixed = Element::basis(&a, 0).add(&Element::basis(&a, 1));
        assert_eq!(mixed.parity(&a), Some(Parity::Mixed));
        assert_eq!(Element::basis(&catalog::sl2(), 0).parity(&catalog::sl2()), None);
    }

    #[test]
    fn zero_dimensional_algebra_is_legal() {
        let a = AlgebraSpec::new(q(), vec![], None, Tensor::zero(0, q()), None).unwrap();
        assert_eq!(a.dim(), 0);
        assert!(a.annihilator(Side::Left).is_empty());
    }
}
