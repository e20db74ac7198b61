//! Linear-system solvers for δ-derivations, δ-superderivations, centroids and
//! generalized δ-derivation pairs.
//!
//! Each defining identity is bilinear in the algebra arguments, so requiring
//! it on all basis pairs is equivalent to requiring it everywhere. The solvers
//! translate the identity on each basis pair into rows of one exact linear
//! system over the vectorized unknown map(s) and read the solution space off
//! the nullspace. Unknown maps are vectorized row-major; constraint rows are
//! emitted in lexicographic (i, j, output coordinate) order; emitted bases are
//! RREF-normalized so results are deterministic.

#![allow(clippy::needless_range_loop)] // indexed loops match the matrix notation

use crate::algebra::{AlgebraSpec, Element, ProductKind};
use crate::error::{Error, Result};
use crate::field::{FieldConfig, Scalar};
use crate::linalg::{LinearMap, Matrix, Subspace};

/// Parity of an unknown superderivation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MapParity {
    Even,
    Odd,
}

/// Which solution space a basis was solved for.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SpaceKind {
    DeltaDer,
    SuperDer(MapParity),
    Centroid,
    GeneralizedPairs,
}

impl SpaceKind {
    pub fn name(&self) -> &'static str {
        match self {
            SpaceKind::DeltaDer => "delta-derivations",
            SpaceKind::SuperDer(MapParity::Even) => "even-delta-superderivations",
            SpaceKind::SuperDer(MapParity::Odd) => "odd-delta-superderivations",
            SpaceKind::Centroid => "centroid",
            SpaceKind::GeneralizedPairs => "generalized-delta-derivations",
        }
    }
}

#[derive(Debug, Clone)]
pub enum SolutionBasis {
    Maps(Vec<LinearMap>),
    Pairs(Vec<(LinearMap, LinearMap)>),
}

/// A solved linear space of maps (or of (χ, φ) pairs), basis RREF-normalized.
#[derive(Debug, Clone)]
pub struct SolutionSpace {
    pub kind: SpaceKind,
    pub delta: Option<Scalar>,
    pub basis: SolutionBasis,
}

impl SolutionSpace {
    pub fn dim(&self) -> usize {
        match &self.basis {
            SolutionBasis::Maps(v) => v.len(),
            SolutionBasis::Pairs(v) => v.len(),
        }
    }

    pub fn maps(&self) -> &[LinearMap] {
        match &self.basis {
            SolutionBasis::Maps(v) => v,
            SolutionBasis::Pairs(_) => panic!("solution space holds pairs, not single maps"),
        }
    }

    pub fn pairs(&self) -> &[(LinearMap, LinearMap)] {
        match &self.basis {
            SolutionBasis::Pairs(v) => v,
            SolutionBasis::Maps(_) => panic!("solution space holds single maps, not pairs"),
        }
    }

    /// Vectorized basis members (row-major; pairs concatenate χ then φ).
    pub fn vectorized(&self) -> Vec<Vec<Scalar>> {
        match &self.basis {
            SolutionBasis::Maps(v) => v.iter().map(Matrix::flatten).collect(),
            SolutionBasis::Pairs(v) => v
                .iter()
                .map(|(chi, phi)| {
                    let mut w = chi.flatten();
                    w.extend(phi.flatten());
                    w
                })
                .collect(),
        }
    }

    /// The span as a subspace of the vectorized ambient space.
    pub fn span(&self, a: &AlgebraSpec) -> Subspace {
        let n = a.dim();
        let ambient = match self.basis {
            SolutionBasis::Maps(_) => n * n,
            SolutionBasis::Pairs(_) => 2 * n * n,
        };
        Subspace::from_vectors(ambient, a.field(), &self.vectorized())
    }
}

// ---------------------------------------------------------------------------
// Constraint-row assembly
//
// Unknown maps U_s are indexed by slot s (one slot for single-map systems,
// slots 0 = χ and 1 = φ for pair systems). Entry U[r][c] sits at vectorized
// position slot·n² + r·n + c. Two accumulation primitives cover every
// identity: the m-th coordinate of U_s(w) for a known coordinate vector w,
// and the m-th coordinate of Op·U_s(e_t) for a known operator matrix Op.
// ---------------------------------------------------------------------------

struct SystemBuilder {
    n: usize,
    slots: usize,
    rows: Vec<Vec<Scalar>>,
    field: FieldConfig,
}

impl SystemBuilder {
    fn new(a: &AlgebraSpec, slots: usize) -> Self {
        SystemBuilder { n: a.dim(), slots, rows: Vec::new(), field: a.field() }
    }

    fn blank_row(&self) -> Vec<Scalar> {
        vec![self.field.zero(); self.slots * self.n * self.n]
    }

    fn push(&mut self, row: Vec<Scalar>) {
        self.rows.push(row);
    }

    /// += factor · (U_slot applied to w)_m
    fn acc_map_of_vector(&self, row: &mut [Scalar], slot: usize, m: usize, w: &[Scalar], factor: &Scalar) {
        for (c, wc) in w.iter().enumerate() {
            if !wc.is_zero() {
                let idx = slot * self.n * self.n + m * self.n + c;
                row[idx] = &row[idx] + &(factor * wc);
            }
        }
    }

    /// += factor · (Op · U_slot(e_t))_m
    fn acc_operator_of_map(&self, row: &mut [Scalar], slot: usize, m: usize, op: &Matrix, t: usize, factor: &Scalar) {
        for l in 0..self.n {
            let coeff = op.get(m, l);
            if !coeff.is_zero() {
                let idx = slot * self.n * self.n + l * self.n + t;
                row[idx] = &row[idx] + &(factor * coeff);
            }
        }
    }

    fn into_matrix(self) -> Matrix {
        let width = self.slots * self.n * self.n;
        Matrix::from_fn(self.rows.len(), width, self.field, |r, c| self.rows[r][c].clone())
    }
}

fn operators(a: &AlgebraSpec, which: ProductKind) -> Result<(Vec<Matrix>, Vec<Matrix>)> {
    let n = a.dim();
    let left: Result<Vec<_>> = (0..n).map(|i| a.left_mul_operator(i, which)).collect();
    let right: Result<Vec<_>> = (0..n).map(|j| a.right_mul_operator(j, which)).collect();
    Ok((left?, right?))
}

fn maps_space(kind: SpaceKind, delta: Option<Scalar>, a: &AlgebraSpec, system: Matrix) -> SolutionSpace {
    let n = a.dim();
    let canonical = Subspace::from_vectors(n * n, a.field(), &system.nullspace());
    let maps = canonical
        .basis()
        .iter()
        .map(|v| Matrix::from_flat(n, n, a.field(), v.clone()).expect("vectorized map shape"))
        .collect();
    SolutionSpace { kind, delta, basis: SolutionBasis::Maps(maps) }
}

/// All linear φ with φ(xy) = δ(φ(x)y + xφ(y)) on the primary product.
pub fn delta_derivations(a: &AlgebraSpec, delta: &Scalar) -> SolutionSpace {
    delta_derivations_wrt(a, delta, ProductKind::Primary).expect("primary product always present")
}

/// Same system with respect to the chosen product table.
pub fn delta_derivations_wrt(a: &AlgebraSpec, delta: &Scalar, which: ProductKind) -> Result<SolutionSpace> {
    assert_eq!(delta.field(), a.field(), "delta must live in the algebra's field");
    let n = a.dim();
    let (left, right) = operators(a, which)?;
    let mut sys = SystemBuilder::new(a, 1);
    let neg_delta = -delta;
    for i in 0..n {
        for j in 0..n {
            let w = a.basis_product(i, j, which)?;
            for m in 0..n {
                let mut row = sys.blank_row();
                sys.acc_map_of_vector(&mut row, 0, m, w.coords(), &a.field().one());
                sys.acc_operator_of_map(&mut row, 0, m, &right[j], i, &neg_delta);
                sys.acc_operator_of_map(&mut row, 0, m, &left[i], j, &neg_delta);
                sys.push(row);
            }
        }
    }
    Ok(maps_space(SpaceKind::DeltaDer, Some(delta.clone()), a, sys.into_matrix()))
}

/// Even or odd δ-superderivations of a graded algebra.
///
/// Even maps preserve parity and satisfy the plain identity on homogeneous
/// pairs. Odd maps reverse parity and satisfy the Koszul-signed identity
/// φ(xy) = δ(φ(x)y + (−1)^{p(x)} xφ(y)); the sign convention is isolated in
/// `odd_sign`.
pub fn delta_superderivations(a: &AlgebraSpec, delta: &Scalar, parity: MapParity) -> Result<SolutionSpace> {
    assert_eq!(delta.field(), a.field(), "delta must live in the algebra's field");
    let grading = a.grading().ok_or(Error::UngradedAlgebra)?.to_vec();
    let n = a.dim();
    let (left, right) = operators(a, ProductKind::Primary)?;
    let mut sys = SystemBuilder::new(a, 1);
    for i in 0..n {
        for j in 0..n {
            let w = a.basis_product(i, j, ProductKind::Primary)?;
            for m in 0..n {
                let mut row = sys.blank_row();
                sys.acc_map_of_vector(&mut row, 0, m, w.coords(), &a.field().one());
                sys.acc_operator_of_map(&mut row, 0, m, &right[j], i, &(-delta));
                let second = match parity {
                    MapParity::Even => -delta,
                    MapParity::Odd => -&(delta * &odd_sign(a, grading[i])),
                };
                sys.acc_operator_of_map(&mut row, 0, m, &left[i], j, &second);
                sys.push(row);
            }
        }
    }
    // parity constraints: even maps preserve the grading, odd maps reverse it
    for r in 0..n {
        for c in 0..n {
            let forbidden = match parity {
                MapParity::Even => grading[r] != grading[c],
                MapParity::Odd => grading[r] == grading[c],
            };
            if forbidden {
                let mut row = sys.blank_row();
                row[r * n + c] = a.field().one();
                sys.push(row);
            }
        }
    }
    Ok(maps_space(
        SpaceKind::SuperDer(parity),
        Some(delta.clone()),
        a,
        sys.into_matrix(),
    ))
}

/// (−1)^{p(x)} for the odd-map Leibniz rule.
fn odd_sign(a: &AlgebraSpec, parity_of_x: u8) -> Scalar {
    a.field().from_i64(if parity_of_x == 1 { -1 } else { 1 })
}

/// The centroid: maps with χ(ab) = χ(a)b = aχ(b).
pub fn centroid(a: &AlgebraSpec) -> SolutionSpace {
    let n = a.dim();
    let (left, right) = operators(a, ProductKind::Primary).expect("primary product");
    let mut sys = SystemBuilder::new(a, 1);
    let minus_one = a.field().from_i64(-1);
    for i in 0..n {
        for j in 0..n {
            let w = a.basis_product(i, j, ProductKind::Primary).unwrap();
            for m in 0..n {
                let mut r1 = sys.blank_row();
                sys.acc_map_of_vector(&mut r1, 0, m, w.coords(), &a.field().one());
                sys.acc_operator_of_map(&mut r1, 0, m, &right[j], i, &minus_one);
                sys.push(r1);
                let mut r2 = sys.blank_row();
                sys.acc_map_of_vector(&mut r2, 0, m, w.coords(), &a.field().one());
                sys.acc_operator_of_map(&mut r2, 0, m, &left[i], j, &minus_one);
                sys.push(r2);
            }
        }
    }
    maps_space(SpaceKind::Centroid, None, a, sys.into_matrix())
}

/// Pairs (χ, φ) where φ is a δ-derivation and
/// χ(ab) = δχ(a)b + δaφ(b) = δφ(a)b + δaχ(b).
///
/// The unknown vector concatenates χ then φ.
pub fn generalized_delta_derivations(a: &AlgebraSpec, delta: &Scalar) -> SolutionSpace {
    assert_eq!(delta.field(), a.field(), "delta must live in the algebra's field");
    let n = a.dim();
    let (left, right) = operators(a, ProductKind::Primary).expect("primary product");
    let mut sys = SystemBuilder::new(a, 2);
    let one = a.field().one();
    let neg_delta = -delta;
    const CHI: usize = 0;
    const PHI: usize = 1;
    for i in 0..n {
        for j in 0..n {
            let w = a.basis_product(i, j, ProductKind::Primary).unwrap();
            for m in 0..n {
                // φ(ab) = δφ(a)b + δaφ(b)
                let mut r0 = sys.blank_row();
                sys.acc_map_of_vector(&mut r0, PHI, m, w.coords(), &one);
                sys.acc_operator_of_map(&mut r0, PHI, m, &right[j], i, &neg_delta);
                sys.acc_operator_of_map(&mut r0, PHI, m, &left[i], j, &neg_delta);
                sys.push(r0);
                // χ(ab) = δχ(a)b + δaφ(b)
                let mut r1 = sys.blank_row();
                sys.acc_map_of_vector(&mut r1, CHI, m, w.coords(), &one);
                sys.acc_operator_of_map(&mut r1, CHI, m, &right[j], i, &neg_delta);
                sys.acc_operator_of_map(&mut r1, PHI, m, &left[i], j, &neg_delta);
                sys.push(r1);
                // χ(ab) = δφ(a)b + δaχ(b)
                let mut r2 = sys.blank_row();
                sys.acc_map_of_vector(&mut r2, CHI, m, w.coords(), &one);
                sys.acc_operator_of_map(&mut r2, PHI, m, &right[j], i, &neg_delta);
                sys.acc_operator_of_map(&mut r2, CHI, m, &left[i], j, &neg_delta);
                sys.push(r2);
            }
        }
    }
    let canonical = Subspace::from_vectors(2 * n * n, a.field(), &sys.into_matrix().nullspace());
    let pairs = canonical
        .basis()
        .iter()
        .map(|v| {
            let chi = Matrix::from_flat(n, n, a.field(), v[..n * n].to_vec()).unwrap();
            let phi = Matrix::from_flat(n, n, a.field(), v[n * n..].to_vec()).unwrap();
            (chi, phi)
        })
        .collect();
    SolutionSpace {
        kind: SpaceKind::GeneralizedPairs,
        delta: Some(delta.clone()),
        basis: SolutionBasis::Pairs(pairs),
    }
}

/// χ_φ = χ − φ.
pub fn chi_phi(chi: &LinearMap, phi: &LinearMap) -> LinearMap {
    chi.sub(phi)
}

/// The three closure identities a valid pair must satisfy.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChiPhiLaw {
    /// χ_φ(ab) = δ a χ_φ(b)
    DeltaTimesRightImage,
    /// χ_φ(ab) = δ χ_φ(a) b
    DeltaTimesLeftImage,
    /// χ_φ(ab) = (δ/2)(χ_φ(a)b + aχ_φ(b))
    HalfDeltaLeibniz,
}

impl ChiPhiLaw {
    pub fn describe(&self) -> &'static str {
        match self {
            ChiPhiLaw::DeltaTimesRightImage => "chi_phi(ab) = delta * a*chi_phi(b)",
            ChiPhiLaw::DeltaTimesLeftImage => "chi_phi(ab) = delta * chi_phi(a)*b",
            ChiPhiLaw::HalfDeltaLeibniz => "chi_phi is a (delta/2)-derivation",
        }
    }
}

#[derive(Debug, Clone)]
pub struct ChiPhiFailure {
    pub law: ChiPhiLaw,
    pub pair: (usize, usize),
    pub residual: Element,
}

#[derive(Debug, Clone)]
pub struct ChiPhiReport {
    pub holds: bool,
    pub failures: Vec<ChiPhiFailure>,
}

/// Verifies, on all basis pairs, the one-sided identities and the
/// (δ/2)-derivation identity for χ_φ = χ − φ.
pub fn chi_phi_check(chi: &LinearMap, phi: &LinearMap, a: &AlgebraSpec, delta: &Scalar) -> ChiPhiReport {
    let n = a.dim();
    let t = chi_phi(chi, phi);
    let half_delta = delta * &a.field().half();
    let mut failures = Vec::new();
    let mut record = |law: ChiPhiLaw, i: usize, j: usize, residual: Element| {
        if failures.iter().all(|f: &ChiPhiFailure| f.law != law) {
            failures.push(ChiPhiFailure { law, pair: (i, j), residual });
        }
    };
    for i in 0..n {
        for j in 0..n {
            let bi = Element::basis(a, i);
            let bj = Element::basis(a, j);
            let lhs = apply(&t, &a.basis_product(i, j, ProductKind::Primary).unwrap());
            let t_bi = apply(&t, &bi);
            let t_bj = apply(&t, &bj);
            let right_img = a.multiply(&bi, &t_bj, ProductKind::Primary).unwrap();
            let left_img = a.multiply(&t_bi, &bj, ProductKind::Primary).unwrap();

            let r1 = lhs.sub(&right_img.scale(delta));
            if !r1.is_zero() {
                record(ChiPhiLaw::DeltaTimesRightImage, i, j, r1);
            }
            let r2 = lhs.sub(&left_img.scale(delta));
            if !r2.is_zero() {
                record(ChiPhiLaw::DeltaTimesLeftImage, i, j, r2);
            }
            let r3 = lhs.sub(&left_img.add(&right_img).scale(&half_delta));
            if !r3.is_zero() {
                record(ChiPhiLaw::HalfDeltaLeibniz, i, j, r3);
            }
        }
    }
    ChiPhiReport { holds: failures.is_empty(), failures }
}

fn apply(map: &LinearMap, x: &Element) -> Element {
    Element::from_raw(map.matvec(x.coords()))
}

/// Verdict of the Eq.-(1) membership test, with a failing basis pair when it
/// fails.
#[derive(Debug, Clone)]
pub struct DerivationCheck {
    pub holds: bool,
    pub witness: Option<(usize, usize, Element)>,
}

/// Evaluates φ(xy) = δ(φ(x)y + xφ(y)) on all basis pairs of the chosen product.
pub fn is_delta_derivation_wrt(
    map: &LinearMap,
    a: &AlgebraSpec,
    delta: &Scalar,
    which: ProductKind,
) -> Result<DerivationCheck> {
    let n = a.dim();
    if map.rows() != n || map.cols() != n {
        return Err(Error::ShapeMismatch("map dimension differs from the algebra".into()));
    }
    for i in 0..n {
        for j in 0..n {
            let bi = Element::basis(a, i);
            let bj = Element::basis(a, j);
            let lhs = apply(map, &a.basis_product(i, j, which)?);
            let rhs = a
                .multiply(&apply(map, &bi), &bj, which)?
                .add(&a.multiply(&bi, &apply(map, &bj), which)?)
                .scale(delta);
            let r = lhs.sub(&rhs);
            if !r.is_zero() {
                return Ok(DerivationCheck { holds: false, witness: Some((i, j, r)) });
            }
        }
    }
    Ok(DerivationCheck { holds: true, witness: None })
}

pub fn is_delta_derivation(map: &LinearMap, a: &AlgebraSpec, delta: &Scalar) -> DerivationCheck {
    is_delta_derivation_wrt(map, a, delta, ProductKind::Primary).expect("primary product")
}

// ---------------------------------------------------------------------------
// Classification
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Trivial,
    Nontrivial,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TrivialityReason {
    DeltaIsZeroOrOne,
    InCentroid,
    IsDeltaDerivation,
    ChiPhiZero,
    Other,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Classification {
    pub verdict: Verdict,
    pub reason: TrivialityReason,
}

/// A member of a solution space, borrowed for classification.
#[derive(Debug, Clone, Copy)]
pub enum Member<'a> {
    Map(&'a LinearMap),
    Pair { chi: &'a LinearMap, phi: &'a LinearMap },
}

/// Triviality: δ ∈ {0,1}; for (super)derivations, membership in the centroid
/// span; for generalized maps, χ_φ = 0 or χ itself a δ-derivation.
pub fn classify(member: Member<'_>, kind: &SpaceKind, a: &AlgebraSpec, delta: &Scalar) -> Classification {
    classify_with_centroid(member, kind, a, delta, &centroid(a).span(a))
}

/// Classifies every basis member of a solved space, computing the centroid once.
pub fn classify_space(space: &SolutionSpace, a: &AlgebraSpec) -> Vec<Classification> {
    let delta = space.delta.clone().unwrap_or_else(|| a.field().one());
    let gamma = centroid(a).span(a);
    match &space.basis {
        SolutionBasis::Maps(maps) => maps
            .iter()
            .map(|m| classify_with_centroid(Member::Map(m), &space.kind, a, &delta, &gamma))
            .collect(),
        SolutionBasis::Pairs(pairs) => pairs
            .iter()
            .map(|(chi, phi)| {
                classify_with_centroid(Member::Pair { chi, phi }, &space.kind, a, &delta, &gamma)
            })
            .collect(),
    }
}

fn classify_with_centroid(
    member: Member<'_>,
    kind: &SpaceKind,
    a: &AlgebraSpec,
    delta: &Scalar,
    gamma: &Subspace,
) -> Classification {
    let trivial = |reason| Classification { verdict: Verdict::Trivial, reason };
    if matches!(kind, SpaceKind::Centroid) {
        return trivial(TrivialityReason::InCentroid);
    }
    if delta.is_zero() || delta.is_one() {
        return trivial(TrivialityReason::DeltaIsZeroOrOne);
    }
    match (member, kind) {
        (Member::Map(m), SpaceKind::DeltaDer | SpaceKind::SuperDer(_)) => {
            if gamma.contains(&m.flatten()) {
                trivial(TrivialityReason::InCentroid)
            } else {
                Classification { verdict: Verdict::Nontrivial, reason: TrivialityReason::Other }
            }
        }
        (Member::Pair { chi, phi }, SpaceKind::GeneralizedPairs) => {
            if chi_phi(chi, phi).is_zero() {
                trivial(TrivialityReason::ChiPhiZero)
            } else if is_delta_derivation(chi, a, delta).holds {
                trivial(TrivialityReason::IsDeltaDerivation)
            } else {
                Classification { verdict: Verdict::Nontrivial, reason: TrivialityReason::Other }
            }
        }
        _ => panic!("member shape does not match the space kind"),
    }
}
