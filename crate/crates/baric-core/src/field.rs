//! Exact scalar arithmetic over the rationals and over prime fields F_p.
//!
//! Every other module is generic over [`Field`]. A field value is a small
//! context object (zero-sized for Q, one word for F_p) that interprets plain
//! element data: arbitrary-precision [`BigRational`]s over Q, canonical `u64`
//! residues over F_p. The prime modulus is runtime data, which is why the
//! generic surface is a context trait rather than bare scalar bounds.

use std::fmt;

use num::bigint::{BigInt, Sign};
use num::rational::BigRational;
use num::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Runtime description of a scalar field: Q or F_p with p prime, p >= 5.
///
/// Characteristics 2 and 3 are excluded so that polarization of degree-4
/// identities (which divides by factors of 4!) is always valid.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Rationals,
    Prime(u64),
}

impl FieldSpec {
    pub fn validate(&self) -> Result<()> {
        match *self {
            FieldSpec::Rationals => Ok(()),
            FieldSpec::Prime(p) => {
                if !is_prime(p) {
                    Err(Error::NotPrime(p))
                } else if p < 5 {
                    Err(Error::CharacteristicTooSmall(p))
                } else {
                    Ok(())
                }
            }
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::Prime(p) => write!(f, "F{p}"),
        }
    }
}

/// Context trait for exact field arithmetic.
///
/// Operations are total except `inv`/`div`, which reject zero divisors.
/// Implementations must normalize: equal elements compare equal with `==`.
pub trait Field: Clone + PartialEq + fmt::Debug + Send + Sync + 'static {
    type Elem: Clone + PartialEq + fmt::Debug + Send + Sync + 'static;

    fn spec(&self) -> FieldSpec;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, n: i64) -> Self::Elem;

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem>;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    fn is_zero(&self, a: &Self::Elem) -> bool;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    /// 0 for Q, p for F_p.
    fn characteristic(&self) -> u64;

    /// Number of field elements when finite; `None` over Q.
    fn element_count(&self) -> Option<u64>;

    /// The `index`-th element under a fixed enumeration of a finite field.
    ///
    /// Panics over infinite fields; guard with [`Field::element_count`].
    fn element_at(&self, index: u64) -> Self::Elem;

    /// Parse scalar text: optional sign, decimal integer, optional `/` and
    /// positive decimal denominator, e.g. `-3/8`.
    fn parse(&self, text: &str) -> Result<Self::Elem>;

    fn format(&self, a: &Self::Elem) -> String;

    /// The scalar 1/2; always defined since characteristic 2 is excluded.
    fn half(&self) -> Self::Elem {
        self.inv(&self.from_i64(2)).expect("characteristic != 2")
    }
}

/// The rational numbers with arbitrary-precision arithmetic.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn spec(&self) -> FieldSpec {
        FieldSpec::Rationals
    }

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }

    fn one(&self) -> BigRational {
        BigRational::one()
    }

    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }

    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }

    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }

    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }

    fn inv(&self, a: &BigRational) -> Result<BigRational> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(a.recip())
    }

    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }

    fn characteristic(&self) -> u64 {
        0
    }

    fn element_count(&self) -> Option<u64> {
        None
    }

    fn element_at(&self, _index: u64) -> BigRational {
        unreachable!("the rationals are not enumerable")
    }

    fn parse(&self, text: &str) -> Result<BigRational> {
        let (num, den) = parse_ratio_text(text)?;
        Ok(BigRational::new(num, den))
    }

    fn format(&self, a: &BigRational) -> String {
        if a.denom().is_one() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }
}

/// The prime field F_p for a runtime prime p >= 5; elements are canonical
/// residues in `0..p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        FieldSpec::Prime(p).validate()?;
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    /// Reduce a rational with denominator coprime to p.
    pub fn from_rational(&self, q: &BigRational) -> Result<u64> {
        let num = bigint_mod(q.numer(), self.p);
        let den = bigint_mod(q.denom(), self.p);
        if den == 0 {
            return Err(Error::ScalarParse {
                text: self.format_rational(q),
                reason: format!("denominator divisible by {}", self.p),
            });
        }
        Ok(mul_mod(num, inv_mod(den, self.p), self.p))
    }

    fn format_rational(&self, q: &BigRational) -> String {
        format!("{q}")
    }

    fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1u64;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = mul_mod(acc, base, self.p);
            }
            base = mul_mod(base, base, self.p);
            exp >>= 1;
        }
        acc
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn spec(&self) -> FieldSpec {
        FieldSpec::Prime(self.p)
    }

    fn zero(&self) -> u64 {
        0
    }

    fn one(&self) -> u64 {
        1
    }

    fn from_i64(&self, n: i64) -> u64 {
        n.rem_euclid(self.p as i64) as u64
    }

    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }

    fn mul(&self, a: &u64, b: &u64) -> u64 {
        mul_mod(*a, *b, self.p)
    }

    fn inv(&self, a: &u64) -> Result<u64> {
        if *a == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(*a, self.p - 2))
    }

    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }

    fn characteristic(&self) -> u64 {
        self.p
    }

    fn element_count(&self) -> Option<u64> {
        Some(self.p)
    }

    fn element_at(&self, index: u64) -> u64 {
        debug_assert!(index < self.p);
        index
    }

    fn parse(&self, text: &str) -> Result<u64> {
        let (num, den) = parse_ratio_text(text)?;
        let n = bigint_mod(&num, self.p);
        let d = bigint_mod(&den, self.p);
        if d == 0 {
            return Err(Error::ScalarParse {
                text: text.to_owned(),
                reason: format!("denominator divisible by {}", self.p),
            });
        }
        Ok(mul_mod(n, inv_mod(d, self.p), self.p))
    }

    fn format(&self, a: &u64) -> String {
        a.to_string()
    }
}

/// `i64::rem_euclid` for big integers against a u64 modulus.
fn bigint_mod(n: &BigInt, p: u64) -> u64 {
    let m = n % BigInt::from(p);
    let (sign, digits) = m.to_u64_digits();
    let r = digits.first().copied().unwrap_or(0);
    match sign {
        Sign::Minus => p - r,
        _ => r,
    }
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn inv_mod(a: u64, p: u64) -> u64 {
    // Fermat: a^(p-2) mod p.
    let mut acc = 1u64;
    let mut base = a % p;
    let mut exp = p - 2;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Split `[+-]?digits(/digits)?` into numerator and positive denominator.
fn parse_ratio_text(text: &str) -> Result<(BigInt, BigInt)> {
    let err = |reason: &str| Error::ScalarParse {
        text: text.to_owned(),
        reason: reason.to_owned(),
    };
    let (num_text, den_text) = match text.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (text, None),
    };
    let (sign, digits) = match num_text.strip_prefix('-') {
        Some(rest) => (-1, rest),
        None => (1, num_text.strip_prefix('+').unwrap_or(num_text)),
    };
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(err("expected a decimal integer"));
    }
    let num = digits.parse::<BigInt>().expect("digits") * BigInt::from(sign);
    let den = match den_text {
        None => BigInt::one(),
        Some(d) => {
            if d.is_empty() || !d.bytes().all(|b| b.is_ascii_digit()) {
                return Err(err("denominator must be a positive decimal integer"));
            }
            let den: BigInt = d.parse().expect("digits");
            if den.is_zero() {
                return Err(err("denominator must be positive"));
            }
            den
        }
    };
    debug_assert!(den.is_positive());
    Ok((num, den))
}

/// Deterministic Miller-Rabin for u64.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn pow_mod(mut base: u64, mut exp: u64, n: u64) -> u64 {
    let mut acc = 1u64;
    base %= n;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, n);
        }
        base = mul_mod(base, base, n);
        exp >>= 1;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(text: &str) -> BigRational {
        Rationals.parse(text).unwrap()
    }

    #[test]
    fn rational_arithmetic() {
        let f = Rationals;
        assert_eq!(f.add(&q("1/2"), &q("1/3")), q("5/6"));
        assert_eq!(f.mul(&q("3/4"), &q("4/3")), f.one());
        assert_eq!(f.sub(&q("1"), &q("5/2")), q("-3/2"));
        assert_eq!(f.div(&q("1"), &q("-2")).unwrap(), q("-1/2"));
        assert!(matches!(
            f.inv(&f.zero()),
            Err(Error::DivisionByZero)
        ));
    }

    #[test]
    fn prime_field_arithmetic() {
        let f = PrimeField::new(5).unwrap();
        assert_eq!(f.mul(&3, &4), 2);
        assert_eq!(f.add(&3, &4), 2);
        assert_eq!(f.neg(&2), 3);
        assert_eq!(f.sub(&1, &3), 3);
        assert_eq!(f.inv(&2).unwrap(), 3);
        assert_eq!(f.half(), 3);
        assert!(matches!(f.inv(&0), Err(Error::DivisionByZero)));
    }

    #[test]
    fn field_spec_validation() {
        assert!(FieldSpec::Prime(5).validate().is_ok());
        assert!(FieldSpec::Prime(7919).validate().is_ok());
        assert!(matches!(
            FieldSpec::Prime(3).validate(),
            Err(Error::CharacteristicTooSmall(3))
        ));
        assert!(matches!(
            FieldSpec::Prime(9).validate(),
            Err(Error::NotPrime(9))
        ));
        assert!(matches!(
            FieldSpec::Prime(0).validate(),
            Err(Error::NotPrime(0))
        ));
    }

    #[test]
    fn scalar_text_round_trip() {
        let f = Rationals;
        for text in ["0", "1", "-3/8", "22/7", "-100000000000000000001"] {
            let v = f.parse(text).unwrap();
            assert_eq!(f.parse(&f.format(&v)).unwrap(), v);
        }
        // Normalization: reduced form, positive denominator, zero as 0.
        assert_eq!(f.format(&f.parse("4/6").unwrap()), "2/3");
        assert_eq!(f.format(&f.parse("0/7").unwrap()), "0");
        assert_eq!(f.format(&f.parse("+3").unwrap()), "3");
    }

    #[test]
    fn scalar_text_rejects_garbage() {
        for text in ["", "1.5", "1/0", "/2", "1/", "a", "1/-2", "--1", "2/2/2"] {
            assert!(Rationals.parse(text).is_err(), "accepted {text:?}");
        }
    }

    #[test]
    fn prime_field_parse_reduces() {
        let f = PrimeField::new(5).unwrap();
        assert_eq!(f.parse("7").unwrap(), 2);
        assert_eq!(f.parse("-1").unwrap(), 4);
        assert_eq!(f.parse("1/2").unwrap(), 3);
        assert!(f.parse("1/5").is_err());
    }

    #[test]
    fn rational_lift() {
        let f = PrimeField::new(5).unwrap();
        let half = Rationals.parse("1/2").unwrap();
        assert_eq!(f.from_rational(&half).unwrap(), 3);
        let neg2 = Rationals.parse("-2").unwrap();
        assert_eq!(f.from_rational(&neg2).unwrap(), 3);
        let fifth = Rationals.parse("1/5").unwrap();
        assert!(f.from_rational(&fifth).is_err());
    }

    #[test]
    fn primality() {
        assert!(is_prime(2));
        assert!(is_prime(5));
        assert!(is_prime(1_000_000_007));
        assert!(is_prime(18_446_744_073_709_551_557)); // largest u64 prime
        assert!(!is_prime(1));
        assert!(!is_prime(561)); // Carmichael
        assert!(!is_prime(25));
    }
}
