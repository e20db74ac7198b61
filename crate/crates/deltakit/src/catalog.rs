//! Built-in algebras: sl₂, the 2×2 matrix algebra, modular Witt algebras, the
//! Kaplansky superalgebra K₃, abelian fixtures, and the five-parameter
//! antiderivation family of sl₂.

use crate::algebra::{AlgebraSpec, Tensor};
use crate::error::{Error, Result};
use crate::field::{FieldConfig, Scalar};
use crate::linalg::{LinearMap, Matrix};

fn q() -> FieldConfig {
    FieldConfig::Rational
}

/// sl₂ over ℚ under the identification `[[a,b],[c,−a]] ↦ (a,b,c)`.
///
/// The product is the one induced by the 2×2 matrix commutator, whose first
/// component is bz − cy; the basis (h, e, f) satisfies `[h,e] = 2e`,
/// `[h,f] = −2f`, `[e,f] = h`. See [`sl2_printed_variant`] for the alternate
/// table with first component bx − cy, kept for comparison: the two differ,
/// and only the commutator-derived table admits the antiderivation family.
pub fn sl2() -> AlgebraSpec {
    sl2_from_first_component(|a, b, c, x, y, z| {
        let _ = (a, x);
        &(b * z) - &(c * y)
    })
}

/// The alternate sl₂ table with first product component bx − cy, exactly as
/// printed in the source describing the antiderivation family. It is not
/// anticommutative, so it cannot be the intended commutator table; it exists
/// so the choice between the two conventions stays an empirical question.
pub fn sl2_printed_variant() -> AlgebraSpec {
    sl2_from_first_component(|a, b, c, x, y, z| {
        let _ = (a, z);
        &(b * x) - &(c * y)
    })
}

fn sl2_from_first_component(
    first: impl Fn(&Scalar, &Scalar, &Scalar, &Scalar, &Scalar, &Scalar) -> Scalar,
) -> AlgebraSpec {
    let field = q();
    let two = field.from_i64(2);
    let table = Tensor::from_fn(3, field, |i, j, k| {
        // (a,b,c) = e_i, (x,y,z) = e_j
        let coord = |idx: usize, which: usize| {
            if idx == which {
                field.one()
            } else {
                field.zero()
            }
        };
        let (a, b, c) = (coord(i, 0), coord(i, 1), coord(i, 2));
        let (x, y, z) = (coord(j, 0), coord(j, 1), coord(j, 2));
        match k {
            0 => first(&a, &b, &c, &x, &y, &z),
            1 => &(&two * &(&a * &y)) - &(&two * &(&b * &x)),
            _ => &(&two * &(&c * &x)) - &(&two * &(&a * &z)),
        }
    });
    AlgebraSpec::new(field, vec!["h".into(), "e".into(), "f".into()], None, table, None)
        .expect("fixed catalog table")
}

/// The five-parameter antiderivation family of sl₂:
/// [[−2a, b, c], [2c, a, d], [2b, e, a]].
pub fn antider_sl2_family(
    a: &Scalar,
    b: &Scalar,
    c: &Scalar,
    d: &Scalar,
    e: &Scalar,
) -> Result<LinearMap> {
    for s in [a, b, c, d, e] {
        if s.field() != q() {
            return Err(Error::FieldMismatch("family parameters must be rational".into()));
        }
    }
    let two = q().from_i64(2);
    let rows = vec![
        vec![-&(&two * a), b.clone(), c.clone()],
        vec![&two * c, a.clone(), d.clone()],
        vec![&two * b, e.clone(), a.clone()],
    ];
    Matrix::from_rows(q(), rows)
}

/// The 2×2 matrix algebra over ℚ on the matrix units e11, e12, e21, e22.
pub fn m2() -> AlgebraSpec {
    let field = q();
    // basis index ↦ (row, col) of the matrix unit
    let unit = [(0, 0), (0, 1), (1, 0), (1, 1)];
    let table = Tensor::from_fn(4, field, |i, j, k| {
        let (a, b) = unit[i];
        let (c, d) = unit[j];
        if b == c && unit[k] == (a, d) {
            field.one()
        } else {
            field.zero()
        }
    });
    AlgebraSpec::new(
        field,
        vec!["e11".into(), "e12".into(), "e21".into(), "e22".into()],
        None,
        table,
        None,
    )
    .expect("fixed catalog table")
}

/// The p-dimensional modular Witt algebra over F_p (p ≥ 5): basis
/// e_{-1}, …, e_{p-2} with [e_i, e_j] = (j − i) e_{i+j} truncated outside
/// the index range.
pub fn witt_modular(p: u64) -> Result<AlgebraSpec> {
    let field = FieldConfig::prime(p)?;
    if p < 5 {
        return Err(Error::InvalidPrime(p));
    }
    let n = p as usize;
    let table = Tensor::from_fn(n, field, |i, j, k| {
        let (a, b) = (i as i64 - 1, j as i64 - 1);
        let s = a + b;
        if s == k as i64 - 1 && -1 <= s && s <= p as i64 - 2 {
            field.from_i64(b - a)
        } else {
            field.zero()
        }
    });
    let names = (0..n).map(|i| format!("e{}", i as i64 - 1)).collect();
    AlgebraSpec::new(field, names, None, table, None)
}

/// The 3-dimensional Kaplansky superalgebra K₃ over ℚ: even part span{e},
/// odd part span{z, w}, with e² = e, ez = ze = ½z, ew = we = ½w, zw = e,
/// wz = −e.
pub fn kaplansky_k3() -> AlgebraSpec {
    let field = q();
    let mut table = Tensor::zero(3, field);
    let half = field.half();
    table.set(0, 0, 0, field.one());
    table.set(0, 1, 1, half.clone());
    table.set(1, 0, 1, half.clone());
    table.set(0, 2, 2, half.clone());
    table.set(2, 0, 2, half);
    table.set(1, 2, 0, field.one());
    table.set(2, 1, 0, field.from_i64(-1));
    AlgebraSpec::new(
        field,
        vec!["e".into(), "z".into(), "w".into()],
        Some(vec![0, 1, 1]),
        table,
        None,
    )
    .expect("fixed catalog table")
}

/// The n-dimensional algebra with all products zero, over ℚ.
pub fn abelian(n: usize) -> AlgebraSpec {
    let field = q();
    let names = (0..n).map(|i| format!("a{i}")).collect();
    AlgebraSpec::new(field, names, None, Tensor::zero(n, field), None).expect("zero table")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Element, ProductKind, Side};
    use crate::identities::{check_identities, Identity};
    use crate::solver::is_delta_derivation;

    /// 2×2 traceless matrix oracle for the sl₂ table: multiplies commutators
    /// directly under [[a,b],[c,−a]] ↦ (a,b,c).
    fn commutator_oracle(u: &[i64; 3], v: &[i64; 3]) -> [i64; 3] {
        let m = |t: &[i64; 3]| [[t[0], t[1]], [t[2], -t[0]]];
        let (x, y) = (m(u), m(v));
        let mut prod = [[0i64; 2]; 2];
        let mut back = [[0i64; 2]; 2];
        for r in 0..2 {
            for c in 0..2 {
                for t in 0..2 {
                    prod[r][c] += x[r][t] * y[t][c];
                    back[r][c] += y[r][t] * x[t][c];
                }
            }
        }
        [
            prod[0][0] - back[0][0],
            prod[0][1] - back[0][1],
            prod[1][0] - back[1][0],
        ]
    }

    #[test]
    fn sl2_matches_the_commutator_oracle_on_all_pairs() {
        let a = sl2();
        let basis = [[1i64, 0, 0], [0, 1, 0], [0, 0, 1]];
        for i in 0..3 {
            for j in 0..3 {
                let expected = commutator_oracle(&basis[i], &basis[j]);
                let got = a.basis_product(i, j, ProductKind::Primary).unwrap();
                for (k, want) in expected.iter().enumerate() {
                    assert_eq!(got.coords()[k], q().from_i64(*want), "({i},{j}) component {k}");
                }
            }
        }
    }

    #[test]
    fn sl2_bracket_table() {
        let a = sl2();
        let h = Element::basis(&a, 0);
        let e = Element::basis(&a, 1);
        let f = Element::basis(&a, 2);
        assert_eq!(a.multiply(&e, &f, ProductKind::Primary).unwrap(), h);
        assert_eq!(
            a.multiply(&h, &e, ProductKind::Primary).unwrap(),
            e.scale(&q().from_i64(2))
        );
        assert_eq!(
            a.multiply(&h, &f, ProductKind::Primary).unwrap(),
            f.scale(&q().from_i64(-2))
        );
        assert!(check_identities(&a, &[Identity::Anticommutative, Identity::Jacobi])
            .unwrap()
            .all_hold());
    }

    #[test]
    fn printed_variant_differs_and_is_not_anticommutative() {
        let printed = sl2_printed_variant();
        assert_ne!(printed.table(), sl2().table());
        let report = check_identities(&printed, &[Identity::Anticommutative]).unwrap();
        assert!(!report.all_hold());
    }

    #[test]
    fn antider_family_members() {
        let a = sl2();
        let zero = antider_sl2_family(&q().zero(), &q().zero(), &q().zero(), &q().zero(), &q().zero()).unwrap();
        assert!(zero.is_zero());
        assert!(is_delta_derivation(&zero, &a, &q().from_i64(-1)).holds);

        let diag = antider_sl2_family(&q().one(), &q().zero(), &q().zero(), &q().zero(), &q().zero()).unwrap();
        assert_eq!(diag.get(0, 0), &q().from_i64(-2));
        assert!(is_delta_derivation(&diag, &a, &q().from_i64(-1)).holds);

        let generic = antider_sl2_family(&q().one(), &q().one(), &q().one(), &q().one(), &q().one()).unwrap();
        assert!(is_delta_derivation(&generic, &a, &q().from_i64(-1)).holds);
    }

    #[test]
    fn family_generators_inject_into_the_antiderivation_space() {
        let a = sl2();
        let space = crate::solver::delta_derivations(&a, &q().from_i64(-1));
        assert_eq!(space.dim(), 5);
        let gens: Vec<Vec<Scalar>> = (0..5)
            .map(|slot| {
                let p: Vec<Scalar> = (0..5)
                    .map(|i| if i == slot { q().one() } else { q().zero() })
                    .collect();
                antider_sl2_family(&p[0], &p[1], &p[2], &p[3], &p[4]).unwrap().flatten()
            })
            .collect();
        let gen_span = crate::linalg::Subspace::from_vectors(9, q(), &gens);
        assert_eq!(gen_span.dim(), 5);
        assert!(space.span(&a).contains_subspace(&gen_span));
    }

    #[test]
    fn m2_products_and_associativity() {
        let a = m2();
        let e11 = Element::basis(&a, 0);
        let e12 = Element::basis(&a, 1);
        assert_eq!(a.multiply(&e11, &e12, ProductKind::Primary).unwrap(), e12);
        assert!(a.multiply(&e12, &e12, ProductKind::Primary).unwrap().is_zero());
        assert!(check_identities(&a, &[Identity::Associative]).unwrap().all_hold());
        // unital, so nothing annihilates
        assert!(a.annihilator(Side::Left).is_empty());
    }

    #[test]
    fn witt_modular_structure() {
        let a = witt_modular(5).unwrap();
        let f5 = a.field();
        assert_eq!(a.dim(), 5);
        // [e_{-1}, e_1] = 2 e_0: indices 0 and 2 of the basis
        let got = a.basis_product(0, 2, ProductKind::Primary).unwrap();
        let mut expected = Element::zero(&a);
        expected = expected.add(&Element::basis(&a, 1).scale(&f5.from_i64(2)));
        assert_eq!(got, expected);
        assert!(check_identities(&a, &[Identity::Anticommutative, Identity::Jacobi])
            .unwrap()
            .all_hold());
        assert!(a.annihilator(Side::Left).is_empty());
    }

    #[test]
    fn witt_modular_rejects_bad_parameters() {
        assert!(matches!(witt_modular(3), Err(Error::InvalidPrime(3))));
        assert!(matches!(witt_modular(6), Err(Error::InvalidPrime(6))));
        assert!(matches!(witt_modular(2), Err(Error::InvalidPrime(2))));
        assert!(witt_modular(7).is_ok());
    }

    #[test]
    fn k3_defining_products() {
        let a = kaplansky_k3();
        let e = Element::basis(&a, 0);
        let z = Element::basis(&a, 1);
        let w = Element::basis(&a, 2);
        // 2(e·z) = z
        let ez = a.multiply(&e, &z, ProductKind::Primary).unwrap();
        assert_eq!(ez.scale(&q().from_i64(2)), z);
        // z·w = e
        assert_eq!(a.multiply(&z, &w, ProductKind::Primary).unwrap(), e);
        assert!(check_identities(&a, &[Identity::Supercommutative]).unwrap().all_hold());
    }

    #[test]
    fn abelian_fixture() {
        let a = abelian(3);
        assert_eq!(a.dim(), 3);
        assert_eq!(a.annihilator(Side::TwoSided).len(), 3);
    }
}
