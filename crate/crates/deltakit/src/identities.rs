//! Exhaustive identity verification over basis tuples.
//!
//! Identities that are multilinear in every argument hold on the whole algebra
//! iff they hold on basis tuples, so the checks below enumerate basis pairs,
//! triples or quadruples. The Jordan identity `(x²y)x = x²(yx)` is cubic in x;
//! it is checked through its full linearization over basis quadruples plus a
//! direct sweep of a deterministic coordinate grid (values 0, ±1, 2) in the x
//! slot, with y ranging over the basis since the identity is linear in y.

use crate::algebra::{AlgebraSpec, Element, ProductKind};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Identity {
    Anticommutative,
    Jacobi,
    SuperAnticommutative,
    SuperJacobi,
    Associative,
    LeftAlternative,
    RightAlternative,
    Commutative,
    Supercommutative,
    Jordan,
}

impl Identity {
    pub const ALL: [Identity; 10] = [
        Identity::Anticommutative,
        Identity::Jacobi,
        Identity::SuperAnticommutative,
        Identity::SuperJacobi,
        Identity::Associative,
        Identity::LeftAlternative,
        Identity::RightAlternative,
        Identity::Commutative,
        Identity::Supercommutative,
        Identity::Jordan,
    ];

    pub fn requires_grading(&self) -> bool {
        matches!(
            self,
            Identity::SuperAnticommutative | Identity::SuperJacobi | Identity::Supercommutative
        )
    }

    pub fn name(&self) -> &'static str {
        match self {
            Identity::Anticommutative => "anticommutative",
            Identity::Jacobi => "jacobi",
            Identity::SuperAnticommutative => "super-anticommutative",
            Identity::SuperJacobi => "super-jacobi",
            Identity::Associative => "associative",
            Identity::LeftAlternative => "left-alternative",
            Identity::RightAlternative => "right-alternative",
            Identity::Commutative => "commutative",
            Identity::Supercommutative => "supercommutative",
            Identity::Jordan => "jordan",
        }
    }

    pub fn parse(s: &str) -> Result<Identity> {
        Identity::ALL
            .iter()
            .copied()
            .find(|i| i.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown identity {s:?}")))
    }
}

/// A concrete counterexample: the arguments and the nonzero residual they
/// produce when the identity is re-evaluated.
#[derive(Debug, Clone)]
pub struct Witness {
    pub args: Vec<Element>,
    pub residual: Element,
}

#[derive(Debug, Clone)]
pub struct IdentityVerdict {
    pub identity: Identity,
    pub holds: bool,
    pub witness: Option<Witness>,
}

#[derive(Debug, Clone)]
pub struct IdentityReport {
    pub verdicts: Vec<IdentityVerdict>,
}

impl IdentityReport {
    pub fn all_hold(&self) -> bool {
        self.verdicts.iter().all(|v| v.holds)
    }

    pub fn verdict(&self, identity: Identity) -> Option<&IdentityVerdict> {
        self.verdicts.iter().find(|v| v.identity == identity)
    }
}

/// Checks the requested identities on the primary product.
pub fn check_identities(algebra: &AlgebraSpec, set: &[Identity]) -> Result<IdentityReport> {
    let mut verdicts = Vec::with_capacity(set.len());
    for &identity in set {
        if identity.requires_grading() && !algebra.is_graded() {
            return Err(Error::UngradedAlgebra);
        }
        verdicts.push(check_one(algebra, identity));
    }
    Ok(IdentityReport { verdicts })
}

fn check_one(a: &AlgebraSpec, identity: Identity) -> IdentityVerdict {
    let witness = match identity {
        Identity::Anticommutative => pair_residual(a, |x, y| {
            Ok(mul(a, x, y)?.add(&mul(a, y, x)?))
        }),
        Identity::Commutative => pair_residual(a, |x, y| {
            Ok(mul(a, x, y)?.sub(&mul(a, y, x)?))
        }),
        Identity::Supercommutative => signed_pair_residual(a, 1),
        Identity::SuperAnticommutative => signed_pair_residual(a, -1),
        Identity::Jacobi => triple_residual(a, |x, y, z| {
            let t1 = mul(a, &mul(a, x, y)?, z)?;
            let t2 = mul(a, &mul(a, y, z)?, x)?;
            let t3 = mul(a, &mul(a, z, x)?, y)?;
            Ok(t1.add(&t2).add(&t3))
        }),
        Identity::SuperJacobi => super_jacobi_residual(a),
        Identity::Associative => triple_residual(a, |x, y, z| associator(a, x, y, z)),
        Identity::LeftAlternative => triple_residual(a, |x, y, z| {
            Ok(associator(a, x, y, z)?.add(&associator(a, y, x, z)?))
        }),
        Identity::RightAlternative => triple_residual(a, |x, y, z| {
            Ok(associator(a, x, y, z)?.add(&associator(a, x, z, y)?))
        }),
        Identity::Jordan => jordan_residual(a),
    };
    IdentityVerdict { identity, holds: witness.is_none(), witness }
}

fn mul(a: &AlgebraSpec, x: &Element, y: &Element) -> Result<Element> {
    a.multiply(x, y, ProductKind::Primary)
}

fn associator(a: &AlgebraSpec, x: &Element, y: &Element, z: &Element) -> Result<Element> {
    Ok(mul(a, &mul(a, x, y)?, z)?.sub(&mul(a, x, &mul(a, y, z)?)?))
}

fn pair_residual(
    a: &AlgebraSpec,
    f: impl Fn(&Element, &Element) -> Result<Element>,
) -> Option<Witness> {
    let n = a.dim();
    for i in 0..n {
        for j in 0..n {
            let (x, y) = (Element::basis(a, i), Element::basis(a, j));
            let r = f(&x, &y).expect("primary product always present");
            if !r.is_zero() {
                return Some(Witness { args: vec![x, y], residual: r });
            }
        }
    }
    None
}

/// xy - sign · (-1)^{p(x)p(y)} yx = 0 on homogeneous basis pairs.
fn signed_pair_residual(a: &AlgebraSpec, sign: i64) -> Option<Witness> {
    let g = a.grading().expect("grading checked by caller");
    let n = a.dim();
    for i in 0..n {
        for j in 0..n {
            let (x, y) = (Element::basis(a, i), Element::basis(a, j));
            let koszul = if g[i] == 1 && g[j] == 1 { -1i64 } else { 1 };
            let factor = a.field().from_i64(sign * koszul);
            let r = mul(a, &x, &y)
                .unwrap()
                .sub(&mul(a, &y, &x).unwrap().scale(&factor));
            if !r.is_zero() {
                return Some(Witness { args: vec![x, y], residual: r });
            }
        }
    }
    None
}

fn triple_residual(
    a: &AlgebraSpec,
    f: impl Fn(&Element, &Element, &Element) -> Result<Element>,
) -> Option<Witness> {
    let n = a.dim();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let (x, y, z) = (Element::basis(a, i), Element::basis(a, j), Element::basis(a, k));
                let r = f(&x, &y, &z).expect("primary product always present");
                if !r.is_zero() {
                    return Some(Witness { args: vec![x, y, z], residual: r });
                }
            }
        }
    }
    None
}

/// (xy)z - (xz)y - (-1)^{p(x)p(z)} x(yz) = 0 on homogeneous basis triples.
fn super_jacobi_residual(a: &AlgebraSpec) -> Option<Witness> {
    let g = a.grading().expect("grading checked by caller");
    let n = a.dim();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let (x, y, z) = (Element::basis(a, i), Element::basis(a, j), Element::basis(a, k));
                let koszul = if g[i] == 1 && g[k] == 1 { -1i64 } else { 1 };
                let t1 = mul(a, &mul(a, &x, &y).unwrap(), &z).unwrap();
                let t2 = mul(a, &mul(a, &x, &z).unwrap(), &y).unwrap();
                let t3 = mul(a, &x, &mul(a, &y, &z).unwrap())
                    .unwrap()
                    .scale(&a.field().from_i64(koszul));
                let r = t1.sub(&t2).sub(&t3);
                if !r.is_zero() {
                    return Some(Witness { args: vec![x, y, z], residual: r });
                }
            }
        }
    }
    None
}

const S3: [([usize; 3], i64); 6] = [
    ([0, 1, 2], 1),
    ([0, 2, 1], -1),
    ([1, 0, 2], -1),
    ([1, 2, 0], 1),
    ([2, 0, 1], 1),
    ([2, 1, 0], -1),
];

/// Jordan identity: full linearization over basis quadruples, then the direct
/// grid sweep that remains sound in characteristic 3.
fn jordan_residual(a: &AlgebraSpec) -> Option<Witness> {
    let n = a.dim();
    // Linearization of x ↦ (x²y)x - x²(yx) over (x1,x2,x3), y running over the basis.
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    let xs = [Element::basis(a, i), Element::basis(a, j), Element::basis(a, k)];
                    let y = Element::basis(a, l);
                    let mut acc = Element::zero(a);
                    for (perm, sign) in S3 {
                        let p = mul(a, &xs[perm[0]], &xs[perm[1]]).unwrap();
                        let t = mul(a, &mul(a, &p, &y).unwrap(), &xs[perm[2]])
                            .unwrap()
                            .sub(&mul(a, &p, &mul(a, &y, &xs[perm[2]]).unwrap()).unwrap());
                        acc = acc.add(&t.scale(&a.field().from_i64(sign)));
                    }
                    if !acc.is_zero() {
                        return Some(Witness {
                            args: vec![xs[0].clone(), xs[1].clone(), xs[2].clone(), y],
                            residual: acc,
                        });
                    }
                }
            }
        }
    }
    // Direct evaluation on grid x, basis y (the identity is linear in y).
    for x in coordinate_grid(a) {
        let xx = mul(a, &x, &x).unwrap();
        for l in 0..n {
            let y = Element::basis(a, l);
            let lhs = mul(a, &mul(a, &xx, &y).unwrap(), &x).unwrap();
            let rhs = mul(a, &xx, &mul(a, &y, &x).unwrap()).unwrap();
            let r = lhs.sub(&rhs);
            if !r.is_zero() {
                return Some(Witness { args: vec![x, y], residual: r });
            }
        }
    }
    None
}

const GRID_VALUES: [i64; 4] = [0, 1, -1, 2];

/// Deterministic small-coordinate elements: the full {0, ±1, 2}^n grid for
/// small n, elements of support ≤ 2 with the same values for larger n.
fn coordinate_grid(a: &AlgebraSpec) -> Vec<Element> {
    let n = a.dim();
    let field = a.field();
    let mut out = Vec::new();
    if n <= 4 {
        let total = GRID_VALUES.len().pow(n as u32);
        for mut idx in 0..total {
            let mut coords = Vec::with_capacity(n);
            for _ in 0..n {
                coords.push(field.from_i64(GRID_VALUES[idx % GRID_VALUES.len()]));
                idx /= GRID_VALUES.len();
            }
            out.push(Element::from_coords(a, coords).unwrap());
        }
    } else {
        for i in 0..n {
            for j in i..n {
                for &vi in &GRID_VALUES[1..] {
                    for &vj in &GRID_VALUES[1..] {
                        if i == j && vi != vj {
                            continue;
                        }
                        let mut coords = vec![field.zero(); n];
                        coords[i] = field.from_i64(vi);
                        coords[j] = field.from_i64(vj);
                        out.push(Element::from_coords(a, coords).unwrap());
                    }
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn sl2_is_lie() {
        let report =
            check_identities(&catalog::sl2(), &[Identity::Anticommutative, Identity::Jacobi]).unwrap();
        assert!(report.all_hold());
    }

    #[test]
    fn m2_is_associative_and_plus_is_jordan() {
        let m2 = catalog::m2();
        assert!(check_identities(&m2, &[Identity::Associative]).unwrap().all_hold());
        let plus = m2.plus_algebra();
        assert!(check_identities(&plus, &[Identity::Commutative, Identity::Jordan])
            .unwrap()
            .all_hold());
    }

    #[test]
    fn k3_supercommutative_but_not_lie() {
        let k3 = catalog::kaplansky_k3();
        let report = check_identities(&k3, &[Identity::Supercommutative, Identity::Jacobi]).unwrap();
        assert!(report.verdict(Identity::Supercommutative).unwrap().holds);
        let jacobi = report.verdict(Identity::Jacobi).unwrap();
        assert!(!jacobi.holds);
        // the witness re-evaluates to its (nonzero) residual
        let w = jacobi.witness.as_ref().unwrap();
        assert!(!w.residual.is_zero());
        assert_eq!(w.args.len(), 3);
        let (x, y, z) = (&w.args[0], &w.args[1], &w.args[2]);
        let recomputed = mul(&k3, &mul(&k3, x, y).unwrap(), z)
            .unwrap()
            .add(&mul(&k3, &mul(&k3, y, z).unwrap(), x).unwrap())
            .add(&mul(&k3, &mul(&k3, z, x).unwrap(), y).unwrap());
        assert_eq!(recomputed, w.residual);
    }

    #[test]
    fn super_jacobi_and_super_anticommutativity_verdicts() {
        // K3 is supercommutative but satisfies neither of the Lie-type super identities
        let k3 = catalog::kaplansky_k3();
        let report =
            check_identities(&k3, &[Identity::SuperJacobi, Identity::SuperAnticommutative]).unwrap();
        assert!(!report.verdict(Identity::SuperJacobi).unwrap().holds);
        assert!(!report.verdict(Identity::SuperAnticommutative).unwrap().holds);

        // a graded algebra with zero products passes every super identity
        let zero = crate::double::kantor_double(
            &catalog::abelian(1)
                .with_table2(crate::algebra::Tensor::zero(1, crate::FieldConfig::Rational))
                .unwrap(),
        )
        .unwrap()
        .into_double();
        let report = check_identities(
            &zero,
            &[Identity::SuperJacobi, Identity::SuperAnticommutative, Identity::Supercommutative],
        )
        .unwrap();
        assert!(report.all_hold());
    }

    #[test]
    fn super_identity_on_ungraded_algebra_errors() {
        assert!(matches!(
            check_identities(&catalog::sl2(), &[Identity::Supercommutative]),
            Err(Error::UngradedAlgebra)
        ));
    }

    #[test]
    fn sl2_fails_associativity_with_witness() {
        let report = check_identities(&catalog::sl2(), &[Identity::Associative]).unwrap();
        let v = report.verdict(Identity::Associative).unwrap();
        assert!(!v.holds);
        assert!(v.witness.is_some());
    }

    #[test]
    fn alternativity_of_associative_algebra() {
        let report = check_identities(
            &catalog::m2(),
            &[Identity::LeftAlternative, Identity::RightAlternative],
        )
        .unwrap();
        assert!(report.all_hold());
    }

    #[test]
    fn parse_identity_names() {
        assert_eq!(Identity::parse("jacobi").unwrap(), Identity::Jacobi);
        assert!(Identity::parse("nope").is_err());
    }
}
