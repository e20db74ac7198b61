//! Kantor-style doubles and the correspondence between even δ-superderivations
//! of the double and δ-derivations of the base algebra.
//!
//! Given an algebra A with a second bilinear operation {,}, the double
//! K(A) = A ⊕ Ax is the 2n-dimensional superalgebra with even part A, odd part
//! a copy of A, and products
//!
//! ```text
//! a·b = ab,   a·(bx) = (ab)x,   (ax)·b = (ab)x,   (ax)·(bx) = {a,b}.
//! ```
//!
//! The mixed rule (ax)·b = (ab)x is the reading under which φ((ax)b) = φ(a(bx))
//! is well-posed; for anticommutative A it coincides with the bracket form
//! `ax·b = [a,b]x` of the Lie double.

use crate::algebra::{AlgebraSpec, ProductKind, Tensor};
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::identities::{check_identities, Identity};
use crate::linalg::{LinearMap, Matrix, Subspace};
use crate::solver::{delta_derivations_wrt, delta_superderivations, is_delta_derivation, MapParity, SolutionSpace};

/// A doubled algebra together with its base; the first n coordinates of the
/// double are the even copy of the base, the last n the odd copy.
#[derive(Debug, Clone)]
pub struct DoubleSpec {
    base: AlgebraSpec,
    double: AlgebraSpec,
}

impl DoubleSpec {
    pub fn base(&self) -> &AlgebraSpec {
        &self.base
    }

    pub fn double(&self) -> &AlgebraSpec {
        &self.double
    }

    pub fn into_double(self) -> AlgebraSpec {
        self.double
    }

    /// Index of base vector i inside the even half.
    pub fn even_index(&self, i: usize) -> usize {
        i
    }

    /// Index of base vector i inside the odd half.
    pub fn odd_index(&self, i: usize) -> usize {
        self.base.dim() + i
    }
}

fn build_double(base: &AlgebraSpec, bracket: &Tensor) -> Result<DoubleSpec> {
    let n = base.dim();
    let field = base.field();
    let table = Tensor::from_fn(2 * n, field, |i, j, k| {
        let (i_odd, i0) = (i >= n, i % n);
        let (j_odd, j0) = (j >= n, j % n);
        let (k_odd, k0) = (k >= n, k % n);
        let want_odd = i_odd != j_odd;
        if k_odd != want_odd {
            return field.zero();
        }
        if i_odd && j_odd {
            bracket.get(i0, j0, k0).clone()
        } else {
            base.table().get(i0, j0, k0).clone()
        }
    });
    let mut names: Vec<String> = base.names().to_vec();
    names.extend(base.names().iter().map(|s| format!("{s}x")));
    let grading = Some([vec![0u8; n], vec![1u8; n]].concat());
    let double = AlgebraSpec::new(field, names, grading, table, None)?;
    Ok(DoubleSpec { base: base.clone(), double })
}

/// The generalized double K(A) = A ⊕ Ax over the algebra's second product.
pub fn kantor_double(a: &AlgebraSpec) -> Result<DoubleSpec> {
    let bracket = a.table2().ok_or(Error::MissingSecondProduct)?.clone();
    build_double(a, &bracket)
}

/// The double of a Lie algebra with the bracket reused as the odd·odd product:
/// `a·b = [a,b], a·bx = [a,b]x, ax·b = [a,b]x, ax·bx = [a,b]`.
///
/// The input must pass the Lie checks, and the result is again a Lie algebra
/// when viewed ungraded.
pub fn lie_double(a: &AlgebraSpec) -> Result<DoubleSpec> {
    let report = check_identities(a, &[Identity::Anticommutative, Identity::Jacobi])?;
    if !report.all_hold() {
        let failing: Vec<&str> = report
            .verdicts
            .iter()
            .filter(|v| !v.holds)
            .map(|v| v.identity.name())
            .collect();
        return Err(Error::NotLie(failing.join(", ")));
    }
    build_double(a, a.table())
}

/// Extends a map ψ on A to the double by ψ(ax) = ψ(a)x, i.e. diag(ψ, ψ).
pub fn extend_map(psi: &LinearMap, double: &DoubleSpec) -> Result<LinearMap> {
    let n = double.base().dim();
    if psi.rows() != n || psi.cols() != n {
        return Err(Error::ShapeMismatch(format!(
            "map is {}×{}, base algebra has dimension {n}",
            psi.rows(),
            psi.cols()
        )));
    }
    if psi.field() != double.base().field() {
        return Err(Error::FieldMismatch("extension over a different field".into()));
    }
    Ok(Matrix::from_fn(2 * n, 2 * n, psi.field(), |r, c| {
        if (r < n) == (c < n) {
            psi.get(r % n, c % n).clone()
        } else {
            psi.field().zero()
        }
    }))
}

/// Outcome of comparing Δ_δ(A) ∩ Δ_δ(A,{,}) with the even δ-superderivations
/// of K(A).
#[derive(Debug, Clone)]
pub struct CorrespondenceReport {
    pub delta: Scalar,
    pub dim_intersection: usize,
    pub dim_even_space: usize,
    /// Every extended basis member re-checks as an even δ-superderivation.
    pub extensions_are_superderivations: bool,
    /// The extended intersection spans the whole even space.
    pub bijective: bool,
}

/// Solves both sides of the even-superderivation correspondence and reports
/// whether extension is a bijection (expected on catalog algebras with
/// Ann(A) = 0; not asserted, since primality is not verified in general).
pub fn even_correspondence(a: &AlgebraSpec, delta: &Scalar) -> Result<CorrespondenceReport> {
    if a.table2().is_none() {
        return Err(Error::MissingSecondProduct);
    }
    let n = a.dim();
    let double = kantor_double(a)?;
    let primary = delta_derivations_wrt(a, delta, ProductKind::Primary)?;
    let second = delta_derivations_wrt(a, delta, ProductKind::Second)?;
    let intersection: Subspace = primary.span(a).intersect(&second.span(a));

    let even: SolutionSpace = delta_superderivations(double.double(), delta, MapParity::Even)?;
    let even_span = even.span(double.double());

    let mut extensions_ok = true;
    let mut all_in_even = true;
    for v in intersection.basis() {
        let psi = Matrix::from_flat(n, n, a.field(), v.clone()).expect("vectorized map");
        let ext = extend_map(&psi, &double)?;
        if !is_delta_derivation(&ext, double.double(), delta).holds {
            extensions_ok = false;
        }
        if !even_span.contains(&ext.flatten()) {
            all_in_even = false;
        }
    }
    let bijective =
        extensions_ok && all_in_even && intersection.dim() == even.dim();
    Ok(CorrespondenceReport {
        delta: delta.clone(),
        dim_intersection: intersection.dim(),
        dim_even_space: even.dim(),
        extensions_are_superderivations: extensions_ok,
        bijective,
    })
}
