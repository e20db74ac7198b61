//! The infinite-dimensional Witt algebra W₁ and the windowed ½-derivation
//! checks.
//!
//! W₁ is the derivation algebra of the one-variable polynomial ring, with
//! basis e_i = x^{i+1} d/dx for i ≥ −1 and bracket [e_i, e_j] = (j − i)
//! e_{i+j}. Elements here are finitely supported rational coordinate vectors
//! over that basis. The solvers never run on W₁; instead, candidate maps are
//! *verified* on a finite index window, which is all the concrete examples
//! need.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::{FieldConfig, Scalar};

fn q() -> FieldConfig {
    FieldConfig::Rational
}

/// A finitely supported rational vector over the basis {e_i : i ≥ −1};
/// explicit zeros are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GradedWittElement {
    terms: BTreeMap<i64, Scalar>,
}

impl GradedWittElement {
    pub fn zero() -> Self {
        GradedWittElement { terms: BTreeMap::new() }
    }

    pub fn basis(i: i64) -> Result<Self> {
        if i < -1 {
            return Err(Error::WittIndex(i));
        }
        let mut terms = BTreeMap::new();
        terms.insert(i, q().one());
        Ok(GradedWittElement { terms })
    }

    pub fn from_terms(pairs: impl IntoIterator<Item = (i64, Scalar)>) -> Result<Self> {
        let mut terms = BTreeMap::new();
        for (i, c) in pairs {
            if i < -1 {
                return Err(Error::WittIndex(i));
            }
            if c.field() != q() {
                return Err(Error::FieldMismatch("Witt coefficients are rational".into()));
            }
            if !c.is_zero() {
                let entry = terms.entry(i).or_insert_with(|| q().zero());
                *entry = &*entry + &c;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        Ok(GradedWittElement { terms })
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, i: i64) -> Scalar {
        self.terms.get(&i).cloned().unwrap_or_else(|| q().zero())
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Scalar)> {
        self.terms.iter().map(|(i, c)| (*i, c))
    }

    pub fn support(&self) -> Vec<i64> {
        self.terms.keys().copied().collect()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (i, c) in &rhs.terms {
            let entry = terms.entry(*i).or_insert_with(|| q().zero());
            *entry = &*entry + c;
        }
        terms.retain(|_, c| !c.is_zero());
        GradedWittElement { terms }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.scale(&q().from_i64(-1)))
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        if s.is_zero() {
            return GradedWittElement::zero();
        }
        GradedWittElement {
            terms: self.terms.iter().map(|(i, c)| (*i, c * s)).collect(),
        }
    }
}

impl fmt::Display for GradedWittElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if c.is_one() {
                write!(f, "e{i}")?;
            } else {
                write!(f, "({c})*e{i}")?;
            }
        }
        Ok(())
    }
}

/// [e_i, e_j] = (j − i) e_{i+j}, extended bilinearly. The index i+j only drops
/// below −1 when i = j = −1, where the coefficient vanishes, so the bracket is
/// closed.
pub fn witt_bracket(u: &GradedWittElement, v: &GradedWittElement) -> GradedWittElement {
    let mut terms: BTreeMap<i64, Scalar> = BTreeMap::new();
    for (i, a) in &u.terms {
        for (j, b) in &v.terms {
            let factor = q().from_i64(j - i);
            if factor.is_zero() {
                continue;
            }
            let coef = &(a * b) * &factor;
            let entry = terms.entry(i + j).or_insert_with(|| q().zero());
            *entry = &*entry + &coef;
        }
    }
    terms.retain(|_, c| !c.is_zero());
    GradedWittElement { terms }
}

const S3: [([usize; 3], i64); 6] = [
    ([0, 1, 2], 1),
    ([0, 2, 1], -1),
    ([1, 0, 2], -1),
    ([1, 2, 0], 1),
    ([2, 0, 1], 1),
    ([2, 1, 0], -1),
];

/// The degree-4 standard Lie polynomial as an operator:
/// R(y) = Σ_{σ∈S₃} sgn(σ) [[[y, x_{σ(1)}], x_{σ(2)}], x_{σ(3)}]
/// with juxtaposed products read left-normed.
#[derive(Debug, Clone)]
pub struct StandardPolyMap {
    xs: [GradedWittElement; 3],
}

impl StandardPolyMap {
    pub fn new(x1: GradedWittElement, x2: GradedWittElement, x3: GradedWittElement) -> Self {
        StandardPolyMap { xs: [x1, x2, x3] }
    }

    pub fn from_basis_tuple(i: i64, j: i64, k: i64) -> Result<Self> {
        Ok(StandardPolyMap::new(
            GradedWittElement::basis(i)?,
            GradedWittElement::basis(j)?,
            GradedWittElement::basis(k)?,
        ))
    }

    pub fn apply(&self, y: &GradedWittElement) -> GradedWittElement {
        let mut acc = GradedWittElement::zero();
        for (perm, sign) in S3 {
            let mut t = y.clone();
            for &idx in &perm {
                t = witt_bracket(&t, &self.xs[idx]);
            }
            acc = acc.add(&t.scale(&q().from_i64(sign)));
        }
        acc
    }
}

/// A finite verification window: basis indices −1 ≤ i ≤ max_index.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WittWindow {
    max_index: i64,
}

impl WittWindow {
    pub fn new(max_index: i64) -> Result<Self> {
        if max_index < 1 {
            return Err(Error::WindowTooSmall(max_index));
        }
        Ok(WittWindow { max_index })
    }

    pub fn max_index(&self) -> i64 {
        self.max_index
    }

    pub fn indices(&self) -> impl Iterator<Item = i64> {
        -1..=self.max_index
    }
}

/// A window pair where the ½-identity failed, with its residual.
#[derive(Debug, Clone)]
pub struct WindowWitness {
    pub pair: (i64, i64),
    pub residual: GradedWittElement,
}

/// Verdict of the windowed ½-derivation check.
#[derive(Debug, Clone)]
pub struct WindowReport {
    pub max_index: i64,
    pub holds: bool,
    /// The failing pair with the largest residual support (ties broken by
    /// index order); None when every pair passes.
    pub worst_witness: Option<WindowWitness>,
    /// Whether the map is nonzero somewhere on the window.
    pub nonzero_on_window: bool,
    /// Whether the map restricted to the window is a scalar multiple of the
    /// identity — the triviality proxy.
    pub scalar_on_window: bool,
}

/// Checks R([e_i, e_j]) = ½([R(e_i), e_j] + [e_i, R(e_j)]) exactly for all
/// −1 ≤ i, j ≤ N, and reports whether R looks scalar on the window.
pub fn check_half_derivation_window(
    op: impl Fn(&GradedWittElement) -> GradedWittElement,
    window: WittWindow,
) -> WindowReport {
    let n = window.max_index;
    let half = q().half();
    // images of basis vectors up to 2N, since [e_i, e_j] reaches e_{i+j}
    let mut images: BTreeMap<i64, GradedWittElement> = BTreeMap::new();
    for i in -1..=(2 * n) {
        images.insert(i, op(&GradedWittElement::basis(i).expect("window index")));
    }

    let mut worst: Option<WindowWitness> = None;
    for i in window.indices() {
        for j in window.indices() {
            // [e_i, e_j] = (j - i) e_{i+j}; the factor vanishes in the only
            // case (i = j = -1) where i+j would leave the basis range
            let factor = q().from_i64(j - i);
            let lhs = if factor.is_zero() {
                GradedWittElement::zero()
            } else {
                images[&(i + j)].scale(&factor)
            };
            let ei = GradedWittElement::basis(i).unwrap();
            let ej = GradedWittElement::basis(j).unwrap();
            let rhs = witt_bracket(&images[&i], &ej)
                .add(&witt_bracket(&ei, &images[&j]))
                .scale(&half);
            let residual = lhs.sub(&rhs);
            if !residual.is_zero() {
                let bigger = worst
                    .as_ref()
                    .is_none_or(|w| residual.support().len() > w.residual.support().len());
                if bigger {
                    worst = Some(WindowWitness { pair: (i, j), residual });
                }
            }
        }
    }

    let mut nonzero = false;
    let mut scalar = true;
    let mut lambda: Option<Scalar> = None;
    for i in window.indices() {
        let img = &images[&i];
        if !img.is_zero() {
            nonzero = true;
        }
        if img.support().iter().any(|&s| s != i) {
            scalar = false;
            continue;
        }
        let coef = img.coeff(i);
        match &lambda {
            None => lambda = Some(coef),
            Some(l) => {
                if *l != coef {
                    scalar = false;
                }
            }
        }
    }

    WindowReport {
        max_index: n,
        holds: worst.is_none(),
        worst_witness: worst,
        nonzero_on_window: nonzero,
        scalar_on_window: scalar,
    }
}

/// One scanned tuple of the search companion.
#[derive(Debug, Clone)]
pub struct TupleSearchResult {
    pub tuple: (i64, i64, i64),
    pub report: WindowReport,
}

impl TupleSearchResult {
    /// Nonzero, non-scalar and passing: the profile of a genuinely nontrivial
    /// windowed ½-derivation.
    pub fn is_nontrivial_pass(&self) -> bool {
        self.report.holds && self.report.nonzero_on_window && !self.report.scalar_on_window
    }
}

/// Scans all basis tuples e_i < e_j < e_k with indices in [−1, 2] and runs the
/// window check on each standard-polynomial map.
pub fn search_half_derivation_tuples(window: WittWindow) -> Vec<TupleSearchResult> {
    let mut out = Vec::new();
    for i in -1..=2i64 {
        for j in (i + 1)..=2 {
            for k in (j + 1)..=2 {
                let map = StandardPolyMap::from_basis_tuple(i, j, k).expect("indices >= -1");
                let report = check_half_derivation_window(|y| map.apply(y), window);
                out.push(TupleSearchResult { tuple: (i, j, k), report });
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(i: i64) -> GradedWittElement {
        GradedWittElement::basis(i).unwrap()
    }

    #[test]
    fn bracket_basics() {
        // [e_{-1}, e_1] = 2 e_0
        assert_eq!(witt_bracket(&e(-1), &e(1)), e(0).scale(&q().from_i64(2)));
        // [e_i, e_i] = 0
        assert!(witt_bracket(&e(3), &e(3)).is_zero());
        // [e_0, e_2] = 2 e_2
        assert_eq!(witt_bracket(&e(0), &e(2)), e(2).scale(&q().from_i64(2)));
        // the only way below -1 is (−1, −1), which cancels
        assert!(witt_bracket(&e(-1), &e(-1)).is_zero());
    }

    #[test]
    fn bracket_is_anticommutative_and_jacobi_on_windows() {
        for i in -1..=4i64 {
            for j in -1..=4 {
                assert!(witt_bracket(&e(i), &e(j)).add(&witt_bracket(&e(j), &e(i))).is_zero());
                for k in -1..=4 {
                    let s = witt_bracket(&witt_bracket(&e(i), &e(j)), &e(k))
                        .add(&witt_bracket(&witt_bracket(&e(j), &e(k)), &e(i)))
                        .add(&witt_bracket(&witt_bracket(&e(k), &e(i)), &e(j)));
                    assert!(s.is_zero(), "jacobi fails at ({i},{j},{k})");
                }
            }
        }
    }

    #[test]
    fn invalid_indices_rejected() {
        assert!(GradedWittElement::basis(-2).is_err());
        assert!(WittWindow::new(0).is_err());
        assert!(WittWindow::new(1).is_ok());
    }

    #[test]
    fn repeated_argument_kills_the_standard_polynomial() {
        let map = StandardPolyMap::new(e(-1), e(-1), e(1));
        for i in -1..=8 {
            assert!(map.apply(&e(i)).is_zero());
        }
    }

    #[test]
    fn standard_polynomial_frozen_values() {
        // direct expansion oracle: the six signed left-normed terms, written out
        let expand = |y: &GradedWittElement, xs: &[GradedWittElement; 3]| {
            let br = witt_bracket;
            let t = |a: usize, b: usize, c: usize| br(&br(&br(y, &xs[a]), &xs[b]), &xs[c]);
            t(0, 1, 2)
                .sub(&t(0, 2, 1))
                .sub(&t(1, 0, 2))
                .add(&t(1, 2, 0))
                .add(&t(2, 0, 1))
                .sub(&t(2, 1, 0))
        };
        let xs = [e(-1), e(0), e(1)];
        let map = StandardPolyMap::new(xs[0].clone(), xs[1].clone(), xs[2].clone());
        for i in -1..=6 {
            assert_eq!(map.apply(&e(i)), expand(&e(i), &xs));
        }
        // frozen: this tuple restricts to −4·id on the window
        assert_eq!(map.apply(&e(-1)), e(-1).scale(&q().from_i64(-4)));
        assert_eq!(map.apply(&e(5)), e(5).scale(&q().from_i64(-4)));
        // and the (−1,0,2) tuple shifts degree by one: R(e_i) = −12 e_{i+1}
        let shifted = StandardPolyMap::new(e(-1), e(0), e(2));
        assert_eq!(shifted.apply(&e(0)), e(1).scale(&q().from_i64(-12)));
        assert_eq!(shifted.apply(&e(3)), e(4).scale(&q().from_i64(-12)));
    }

    #[test]
    fn linearity_of_the_standard_polynomial() {
        let map = StandardPolyMap::new(e(-1), e(0), e(2));
        let u = e(0).scale(&q().from_i64(3)).add(&e(2));
        let v = e(1).sub(&e(4).scale(&q().half()));
        assert_eq!(map.apply(&u.add(&v)), map.apply(&u).add(&map.apply(&v)));
    }

    #[test]
    fn identity_and_zero_pass_the_window_check() {
        let window = WittWindow::new(8).unwrap();
        let id_report = check_half_derivation_window(|y| y.clone(), window);
        assert!(id_report.holds);
        assert!(id_report.scalar_on_window);
        assert!(id_report.nonzero_on_window);

        let zero_report = check_half_derivation_window(|_| GradedWittElement::zero(), window);
        assert!(zero_report.holds);
        assert!(zero_report.scalar_on_window);
        assert!(!zero_report.nonzero_on_window);
    }

    #[test]
    fn shift_maps_pass_the_window_check() {
        // multiplication by x shifts every index by one and is a 1/2-derivation
        let shift = |y: &GradedWittElement| {
            GradedWittElement::from_terms(y.terms().map(|(i, c)| (i + 1, c.clone()))).unwrap()
        };
        let report = check_half_derivation_window(shift, WittWindow::new(6).unwrap());
        assert!(report.holds);
        assert!(!report.scalar_on_window);
    }

    #[test]
    fn window_check_detects_failures() {
        // projection onto the e_0 component is not a 1/2-derivation
        let bad = |y: &GradedWittElement| e(0).scale(&y.coeff(0));
        let report = check_half_derivation_window(bad, WittWindow::new(4).unwrap());
        assert!(!report.holds);
        let w = report.worst_witness.unwrap();
        assert!(!w.residual.is_zero());
    }

    #[test]
    fn search_finds_a_nontrivial_tuple_at_window_eight() {
        let results = search_half_derivation_tuples(WittWindow::new(8).unwrap());
        assert_eq!(results.len(), 4);
        // (−1,0,1) passes but restricts to a scalar map
        let first = results.iter().find(|r| r.tuple == (-1, 0, 1)).unwrap();
        assert!(first.report.holds);
        assert!(first.report.scalar_on_window);
        assert!(!first.is_nontrivial_pass());
        // (−1,0,2) is the first genuinely nontrivial pass
        let hit = results.iter().find(|r| r.is_nontrivial_pass()).unwrap();
        assert_eq!(hit.tuple, (-1, 0, 2));
    }
}
