//! Exact field elements: rationals and residues modulo a prime.

use alloc::boxed::Box;
use alloc::string::{String, ToString};
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{CheckedAdd, CheckedDiv, CheckedMul, CheckedSub, One, Signed, ToPrimitive, Zero};

use crate::error::Error;

/// Largest supported prime modulus (primality is decided by trial division).
pub const MAX_PRIME: u64 = 1 << 32;

/// The ground field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Field {
    Rational,
    Prime(u64),
}

/// A rational number, stored on machine words until it outgrows them.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Rat {
    Small(Ratio<i64>),
    Big(Box<Ratio<BigInt>>),
}

/// An element of a [`Field`]. The variant always matches the field it came from.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Q(Rat),
    P(u64),
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Rat {
    fn big(&self) -> Ratio<BigInt> {
        match self {
            Rat::Small(r) => Ratio::new_raw(BigInt::from(*r.numer()), BigInt::from(*r.denom())),
            Rat::Big(b) => (**b).clone(),
        }
    }

    fn from_big(r: Ratio<BigInt>) -> Rat {
        match (r.numer().to_i64(), r.denom().to_i64()) {
            (Some(n), Some(d)) if n != i64::MIN && d != i64::MIN => Rat::Small(Ratio::new_raw(n, d)),
            _ => Rat::Big(Box::new(r)),
        }
    }

    fn is_zero(&self) -> bool {
        match self {
            Rat::Small(r) => r.numer().is_zero(),
            Rat::Big(b) => b.numer().is_zero(),
        }
    }

    fn is_one(&self) -> bool {
        match self {
            Rat::Small(r) => *r.numer() == 1 && *r.denom() == 1,
            Rat::Big(b) => b.is_one(),
        }
    }

    fn binop(
        a: &Rat,
        b: &Rat,
        small: impl Fn(&Ratio<i64>, &Ratio<i64>) -> Option<Ratio<i64>>,
        big: impl Fn(Ratio<BigInt>, Ratio<BigInt>) -> Ratio<BigInt>,
    ) -> Rat {
        if let (Rat::Small(x), Rat::Small(y)) = (a, b) {
            if let Some(r) = small(x, y) {
                if *r.numer() != i64::MIN && *r.denom() != i64::MIN {
                    return Rat::Small(r);
                }
            }
        }
        Rat::from_big(big(a.big(), b.big()))
    }

    fn add(&self, o: &Rat) -> Rat {
        Rat::binop(self, o, |x, y| x.checked_add(y), |x, y| x + y)
    }
    fn sub(&self, o: &Rat) -> Rat {
        Rat::binop(self, o, |x, y| x.checked_sub(y), |x, y| x - y)
    }
    fn mul(&self, o: &Rat) -> Rat {
        Rat::binop(self, o, |x, y| x.checked_mul(y), |x, y| x * y)
    }
    fn div(&self, o: &Rat) -> Rat {
        Rat::binop(self, o, |x, y| x.checked_div(y), |x, y| x / y)
    }
    fn neg(&self) -> Rat {
        match self {
            Rat::Small(r) if *r.numer() != i64::MIN => Rat::Small(-*r),
            _ => Rat::from_big(-self.big()),
        }
    }

    /// Numerator and denominator as decimal strings.
    pub fn parts(&self) -> (String, String) {
        match self {
            Rat::Small(r) => (r.numer().to_string(), r.denom().to_string()),
            Rat::Big(b) => (b.numer().to_string(), b.denom().to_string()),
        }
    }
}

impl Field {
    /// The prime field F_p; rejects composite or oversized moduli.
    pub fn prime(p: u64) -> Result<Field, Error> {
        if p >= MAX_PRIME || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Field::Prime(p))
    }

    pub fn zero(&self) -> Scalar {
        match self {
            Field::Rational => Scalar::Q(Rat::Small(Ratio::zero())),
            Field::Prime(_) => Scalar::P(0),
        }
    }

    pub fn one(&self) -> Scalar {
        match self {
            Field::Rational => Scalar::Q(Rat::Small(Ratio::one())),
            Field::Prime(_) => Scalar::P(1),
        }
    }

    pub fn int(&self, n: i64) -> Scalar {
        match self {
            Field::Rational => Scalar::Q(Rat::Small(Ratio::from_integer(n))),
            Field::Prime(p) => Scalar::P((n as i128).rem_euclid(*p as i128) as u64),
        }
    }

    /// `num / den`; fails when the denominator vanishes in this field.
    pub fn ratio(&self, num: &BigInt, den: &BigInt) -> Result<Scalar, Error> {
        match self {
            Field::Rational => {
                if den.is_zero() {
                    return Err(Error::ZeroDenominator);
                }
                Ok(Scalar::Q(Rat::from_big(Ratio::new(num.clone(), den.clone()))))
            }
            Field::Prime(p) => {
                let pb = BigInt::from(*p);
                let n = num.mod_floor(&pb).to_u64().unwrap_or(0);
                let d = den.mod_floor(&pb).to_u64().unwrap_or(0);
                if d == 0 {
                    return Err(Error::ZeroDenominator);
                }
                Ok(self.div(&Scalar::P(n), &Scalar::P(d)))
            }
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (Field::Rational, Scalar::Q(x), Scalar::Q(y)) => Scalar::Q(x.add(y)),
            (Field::Prime(p), Scalar::P(x), Scalar::P(y)) => Scalar::P(((*x as u128 + *y as u128) % *p as u128) as u64),
            _ => panic!("scalar does not belong to {:?}", self),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (Field::Rational, Scalar::Q(x), Scalar::Q(y)) => Scalar::Q(x.sub(y)),
            (Field::Prime(p), Scalar::P(x), Scalar::P(y)) => Scalar::P(((*x as u128 + *p as u128 - *y as u128) % *p as u128) as u64),
            _ => panic!("scalar does not belong to {:?}", self),
        }
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (Field::Rational, Scalar::Q(x), Scalar::Q(y)) => Scalar::Q(x.mul(y)),
            (Field::Prime(p), Scalar::P(x), Scalar::P(y)) => Scalar::P(((*x as u128 * *y as u128) % *p as u128) as u64),
            _ => panic!("scalar does not belong to {:?}", self),
        }
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match (self, a) {
            (Field::Rational, Scalar::Q(x)) => Scalar::Q(x.neg()),
            (Field::Prime(p), Scalar::P(x)) => Scalar::P((*p - *x) % *p),
            _ => panic!("scalar does not belong to {:?}", self),
        }
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self, a: &Scalar) -> Option<Scalar> {
        if a.is_zero() {
            return None;
        }
        Some(match (self, a) {
            (Field::Rational, Scalar::Q(x)) => Scalar::Q(Rat::Small(Ratio::one()).div(x)),
            (Field::Prime(p), Scalar::P(x)) => Scalar::P(pow_mod(*x, *p - 2, *p)),
            _ => panic!("scalar does not belong to {:?}", self),
        })
    }

    /// `a / b`; panics on division by zero.
    pub fn div(&self, a: &Scalar, b: &Scalar) -> Scalar {
        let inv = self.inv(b).expect("division by zero");
        self.mul(a, &inv)
    }

    pub fn contains(&self, a: &Scalar) -> bool {
        match (self, a) {
            (Field::Rational, Scalar::Q(_)) => true,
            (Field::Prime(p), Scalar::P(x)) => x < p,
            _ => false,
        }
    }
}

fn pow_mod(b: u64, mut e: u64, m: u64) -> u64 {
    let m = m as u128;
    let mut r: u128 = 1;
    let mut base = b as u128 % m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * base % m;
        }
        base = base * base % m;
        e >>= 1;
    }
    r as u64
}

impl Scalar {
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Q(r) => r.is_zero(),
            Scalar::P(x) => *x == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Q(r) => r.is_one(),
            Scalar::P(x) => *x == 1,
        }
    }

    /// Numerator/denominator strings (residues have denominator 1).
    pub fn parts(&self) -> (String, String) {
        match self {
            Scalar::Q(r) => r.parts(),
            Scalar::P(x) => (x.to_string(), "1".to_string()),
        }
    }

    /// Whether the value is a negative rational.
    pub fn is_negative(&self) -> bool {
        match self {
            Scalar::Q(Rat::Small(r)) => r.is_negative(),
            Scalar::Q(Rat::Big(b)) => b.is_negative(),
            Scalar::P(_) => false,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (n, d) = self.parts();
        if d == "1" {
            write!(f, "{}", n)
        } else {
            write!(f, "{}/{}", n, d)
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "Q"),
            Field::Prime(p) => write!(f, "Fp:{}", p),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_overflow_promotes_and_demotes() {
        let q = Field::Rational;
        let big = q.int(i64::MAX);
        let sq = q.mul(&big, &big);
        assert!(matches!(sq, Scalar::Q(Rat::Big(_))));
        let back = q.div(&sq, &big);
        assert_eq!(back, big);
        assert!(matches!(back, Scalar::Q(Rat::Small(_))));
    }

    #[test]
    fn prime_field_inverse() {
        let f = Field::prime(7).unwrap();
        for n in 1..7 {
            let a = f.int(n);
            assert!(f.mul(&a, &f.inv(&a).unwrap()).is_one());
        }
        assert!(Field::prime(9).is_err());
        assert_eq!(f.int(-1), Scalar::P(6));
    }

    #[test]
    fn ratio_is_reduced() {
        let q = Field::Rational;
        let s = q.ratio(&BigInt::from(4), &BigInt::from(-6)).unwrap();
        assert_eq!(s.parts(), ("-2".into(), "3".into()));
        assert!(q.ratio(&BigInt::from(1), &BigInt::from(0)).is_err());
    }
}
