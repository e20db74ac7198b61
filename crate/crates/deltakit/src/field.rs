//! Exact coefficient arithmetic over ℚ and prime fields F_p (p odd).
//!
//! Every scalar knows which field it lives in; matrices and algebras enforce
//! that all their entries share one [`FieldConfig`]. Characteristic 2 is
//! rejected at construction time and never reappears downstream.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Coefficient field: the rationals, or F_p for an odd prime p.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldConfig {
    Rational,
    Prime(u64),
}

impl FieldConfig {
    /// Builds the prime-field configuration, rejecting 2 and composites.
    pub fn prime(p: u64) -> Result<Self> {
        if p == 2 || !is_prime_u64(p) {
            return Err(Error::InvalidPrime(p));
        }
        Ok(FieldConfig::Prime(p))
    }

    pub fn zero(&self) -> Scalar {
        match self {
            FieldConfig::Rational => Scalar::Rational(BigRational::zero()),
            FieldConfig::Prime(p) => Scalar::Prime { residue: 0, modulus: *p },
        }
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        match self {
            FieldConfig::Rational => Scalar::Rational(BigRational::from_integer(BigInt::from(v))),
            FieldConfig::Prime(p) => Scalar::Prime { residue: reduce_i64(v, *p), modulus: *p },
        }
    }

    /// Builds num/den in this field; over F_p the denominator is inverted mod p.
    pub fn ratio(&self, num: i64, den: i64) -> Result<Scalar> {
        if den == 0 {
            return Err(Error::DivisionByZero);
        }
        self.from_i64(num).div(&self.from_i64(den))
    }

    /// The element 1/2, which exists because the characteristic is never 2.
    pub fn half(&self) -> Scalar {
        self.ratio(1, 2).expect("characteristic != 2")
    }

    /// Parses a scalar string: an integer ("-3") or a fraction ("3/2").
    ///
    /// Over F_p fractions denote modular division, so "1/2" is the inverse of
    /// 2 mod p; arbitrary-precision integers are reduced mod p.
    pub fn parse(&self, s: &str) -> Result<Scalar> {
        let s = s.trim();
        let (num_str, den_str) = match s.split_once('/') {
            Some((a, b)) => (a.trim(), Some(b.trim())),
            None => (s, None),
        };
        let num = BigInt::from_str(num_str)
            .map_err(|_| Error::Parse(format!("bad scalar {s:?}")))?;
        let den = match den_str {
            Some(d) => BigInt::from_str(d).map_err(|_| Error::Parse(format!("bad scalar {s:?}")))?,
            None => BigInt::one(),
        };
        if den.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        match self {
            FieldConfig::Rational => Ok(Scalar::Rational(BigRational::new(num, den))),
            FieldConfig::Prime(p) => {
                let n = reduce_bigint(&num, *p);
                let d = reduce_bigint(&den, *p);
                if d == 0 {
                    return Err(Error::Parse(format!("{s:?} has denominator divisible by {p}")));
                }
                let inv = mod_inverse(d, *p).ok_or(Error::DivisionByZero)?;
                Ok(Scalar::Prime { residue: mod_mul(n, inv, *p), modulus: *p })
            }
        }
    }
}

fn reduce_i64(v: i64, p: u64) -> u64 {
    let m = p as i128;
    (((v as i128 % m) + m) % m) as u64
}

fn reduce_bigint(v: &BigInt, p: u64) -> u64 {
    let m = BigInt::from(p);
    let r = ((v % &m) + &m) % &m;
    // r is in [0, p), fits u64
    let (_, digits) = r.to_u64_digits();
    digits.first().copied().unwrap_or(0)
}

fn mod_mul(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn mod_pow(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mod_mul(acc, base, p);
        }
        base = mod_mul(base, base, p);
        exp >>= 1;
    }
    acc
}

fn mod_inverse(a: u64, p: u64) -> Option<u64> {
    if a == 0 {
        return None;
    }
    // p is prime, so a^(p-2) is the inverse
    Some(mod_pow(a, p - 2, p))
}

/// Deterministic Miller-Rabin for u64.
fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == q {
            return true;
        }
        if n.is_multiple_of(q) {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d & 1 == 0 {
        d >>= 1;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = mod_pow(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mod_mul(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// A field element: a rational in lowest terms with positive denominator, or
/// a reduced residue mod p.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Scalar {
    Rational(BigRational),
    Prime { residue: u64, modulus: u64 },
}

impl Scalar {
    pub fn field(&self) -> FieldConfig {
        match self {
            Scalar::Rational(_) => FieldConfig::Rational,
            Scalar::Prime { modulus, .. } => FieldConfig::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Prime { residue, .. } => *residue == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_one(),
            Scalar::Prime { residue, .. } => *residue == 1,
        }
    }

    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match self {
            Scalar::Rational(r) => Scalar::Rational(r.recip()),
            Scalar::Prime { residue, modulus } => Scalar::Prime {
                residue: mod_inverse(*residue, *modulus).expect("nonzero residue"),
                modulus: *modulus,
            },
        })
    }

    pub fn div(&self, rhs: &Scalar) -> Result<Scalar> {
        Ok(self * &rhs.inv()?)
    }

    fn assert_same_field(&self, other: &Scalar) {
        assert_eq!(
            self.field(),
            other.field(),
            "scalar arithmetic across distinct fields"
        );
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self.assert_same_field(rhs);
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Prime { residue: a, modulus: p }, Scalar::Prime { residue: b, .. }) => {
                Scalar::Prime { residue: (a + b) % p, modulus: *p }
            }
            _ => unreachable!(),
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self.assert_same_field(rhs);
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a - b),
            (Scalar::Prime { residue: a, modulus: p }, Scalar::Prime { residue: b, .. }) => {
                Scalar::Prime { residue: (a + p - b) % p, modulus: *p }
            }
            _ => unreachable!(),
        }
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        self.assert_same_field(rhs);
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Prime { residue: a, modulus: p }, Scalar::Prime { residue: b, .. }) => {
                Scalar::Prime { residue: mod_mul(*a, *b, *p), modulus: *p }
            }
            _ => unreachable!(),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Prime { residue, modulus } => Scalar::Prime {
                residue: (modulus - residue) % modulus,
                modulus: *modulus,
            },
        }
    }
}

impl fmt::Display for Scalar {
    /// Canonical form: "num/den" with the denominator omitted when it is 1;
    /// prime-field elements print as their reduced residue.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Prime { residue, .. } => write!(f, "{residue}"),
        }
    }
}

/// Lowest-terms invariant for rationals; prime residues are always reduced.
pub fn is_normalized(s: &Scalar) -> bool {
    match s {
        Scalar::Rational(r) => {
            if r.is_zero() {
                return r.denom().is_one();
            }
            r.denom().is_positive()
                && num_integer::Integer::gcd(r.numer(), r.denom()).is_one()
        }
        Scalar::Prime { residue, modulus } => residue < modulus,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_characteristic_two_and_composites() {
        assert!(FieldConfig::prime(2).is_err());
        assert!(FieldConfig::prime(9).is_err());
        assert!(FieldConfig::prime(1).is_err());
        assert!(FieldConfig::prime(5).is_ok());
        assert!(FieldConfig::prime(7919).is_ok());
    }

    #[test]
    fn parse_and_display_round_trip() {
        let q = FieldConfig::Rational;
        for s in ["0", "-1", "3/2", "-7/3", "100000000000000000000"] {
            let v = q.parse(s).unwrap();
            assert_eq!(v.to_string(), s);
        }
        // non-canonical input normalizes
        assert_eq!(q.parse("4/6").unwrap().to_string(), "2/3");
        assert_eq!(q.parse("-4/2").unwrap().to_string(), "-2");

        let f5 = FieldConfig::prime(5).unwrap();
        assert_eq!(f5.parse("7").unwrap().to_string(), "2");
        assert_eq!(f5.parse("-1").unwrap().to_string(), "4");
        // 1/2 = inverse of 2 mod 5 = 3
        assert_eq!(f5.parse("1/2").unwrap().to_string(), "3");
        assert!(f5.parse("1/5").is_err());
    }

    #[test]
    fn half_exists_in_every_field() {
        assert_eq!(FieldConfig::Rational.half().to_string(), "1/2");
        assert_eq!(FieldConfig::prime(5).unwrap().half().to_string(), "3");
        assert_eq!(FieldConfig::prime(7).unwrap().half().to_string(), "4");
    }

    #[test]
    fn prime_arithmetic() {
        let f5 = FieldConfig::prime(5).unwrap();
        let a = f5.from_i64(3);
        let b = f5.from_i64(4);
        assert_eq!((&a + &b).to_string(), "2");
        assert_eq!((&a * &b).to_string(), "2");
        assert_eq!((&a - &b).to_string(), "4");
        assert_eq!((-&a).to_string(), "2");
        assert_eq!(a.inv().unwrap().to_string(), "2");
        assert!(f5.zero().inv().is_err());
    }

    #[test]
    #[should_panic(expected = "distinct fields")]
    fn mixed_field_arithmetic_panics() {
        let a = FieldConfig::Rational.one();
        let b = FieldConfig::prime(5).unwrap().one();
        let _ = &a + &b;
    }
}
