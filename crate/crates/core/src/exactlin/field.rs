use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Ground field of a computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldSpec {
    /// `F_p` for a prime `2 <= p < 2^31`.
    Prime(u32),
    Rationals,
}

/// A field element. Prime-field elements are canonical residues `0..p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Mod(u32),
    Rat(BigRational),
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

impl FieldSpec {
    pub fn prime(p: u64) -> Result<Self> {
        if p < (1 << 31) && is_prime(p) {
            Ok(FieldSpec::Prime(p as u32))
        } else {
            Err(Error::InvalidPrime(p))
        }
    }

    pub fn characteristic(&self) -> u32 {
        match self {
            FieldSpec::Prime(p) => *p,
            FieldSpec::Rationals => 0,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, FieldSpec::Prime(_))
    }

    /// Number of elements, when finite.
    pub fn order(&self) -> Option<u64> {
        match self {
            FieldSpec::Prime(p) => Some(*p as u64),
            FieldSpec::Rationals => None,
        }
    }

    /// All elements in canonical order `0, 1, ..., p-1`; `None` over `Q`.
    pub fn elements(&self) -> Option<Vec<Scalar>> {
        match self {
            FieldSpec::Prime(p) => Some((0..*p).map(Scalar::Mod).collect()),
            FieldSpec::Rationals => None,
        }
    }

    pub fn zero(&self) -> Scalar {
        match self {
            FieldSpec::Prime(_) => Scalar::Mod(0),
            FieldSpec::Rationals => Scalar::Rat(BigRational::zero()),
        }
    }

    pub fn one(&self) -> Scalar {
        match self {
            FieldSpec::Prime(_) => Scalar::Mod(1),
            FieldSpec::Rationals => Scalar::Rat(BigRational::one()),
        }
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        match self {
            FieldSpec::Prime(p) => Scalar::Mod(v.rem_euclid(*p as i64) as u32),
            FieldSpec::Rationals => Scalar::Rat(BigRational::from_integer(BigInt::from(v))),
        }
    }

    pub fn from_bigint(&self, v: &BigInt) -> Scalar {
        match self {
            FieldSpec::Prime(p) => {
                let r = v.mod_floor_u32(*p);
                Scalar::Mod(r)
            }
            FieldSpec::Rationals => Scalar::Rat(BigRational::from_integer(v.clone())),
        }
    }

    /// `num / den` as a field element; fails when `den` vanishes in the field.
    pub fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Result<Scalar> {
        if den.is_zero() {
            return Err(Error::InvalidScalar("zero denominator".into()));
        }
        match self {
            FieldSpec::Prime(_) => {
                let d = self.from_bigint(den);
                let inv = self
                    .inv(&d)
                    .ok_or_else(|| Error::InvalidScalar(format!("denominator {den} vanishes in {self}")))?;
                Ok(self.mul(&self.from_bigint(num), &inv))
            }
            FieldSpec::Rationals => Ok(Scalar::Rat(BigRational::new(num.clone(), den.clone()))),
        }
    }

    pub fn contains(&self, s: &Scalar) -> bool {
        match (self, s) {
            (FieldSpec::Prime(p), Scalar::Mod(v)) => v < p,
            (FieldSpec::Rationals, Scalar::Rat(_)) => true,
            _ => false,
        }
    }

    pub fn is_zero(&self, s: &Scalar) -> bool {
        match s {
            Scalar::Mod(v) => *v == 0,
            Scalar::Rat(r) => r.is_zero(),
        }
    }

    pub fn is_one(&self, s: &Scalar) -> bool {
        match s {
            Scalar::Mod(v) => *v == 1,
            Scalar::Rat(r) => r.is_one(),
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (FieldSpec::Prime(p), Scalar::Mod(x), Scalar::Mod(y)) => {
                Scalar::Mod(((*x as u64 + *y as u64) % *p as u64) as u32)
            }
            (FieldSpec::Rationals, Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x + y),
            _ => panic!("scalar does not belong to {self}"),
        }
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match (self, a) {
            (FieldSpec::Prime(p), Scalar::Mod(x)) => Scalar::Mod(if *x == 0 { 0 } else { p - x }),
            (FieldSpec::Rationals, Scalar::Rat(x)) => Scalar::Rat(-x),
            _ => panic!("scalar does not belong to {self}"),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (FieldSpec::Prime(p), Scalar::Mod(x), Scalar::Mod(y)) => {
                Scalar::Mod(((*x as u64 * *y as u64) % *p as u64) as u32)
            }
            (FieldSpec::Rationals, Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x * y),
            _ => panic!("scalar does not belong to {self}"),
        }
    }

    pub fn inv(&self, a: &Scalar) -> Option<Scalar> {
        if self.is_zero(a) {
            return None;
        }
        match (self, a) {
            (FieldSpec::Prime(p), Scalar::Mod(x)) => {
                Some(Scalar::Mod(pow_mod(*x as u64, *p as u64 - 2, *p as u64) as u32))
            }
            (FieldSpec::Rationals, Scalar::Rat(x)) => Some(Scalar::Rat(x.recip())),
            _ => panic!("scalar does not belong to {self}"),
        }
    }

    pub fn div(&self, a: &Scalar, b: &Scalar) -> Option<Scalar> {
        self.inv(b).map(|ib| self.mul(a, &ib))
    }

    /// Canonical text: residues as decimals, rationals as `n` or `n/d`.
    pub fn format(&self, s: &Scalar) -> String {
        s.to_string()
    }

    /// Parses the canonical text of an element. Prime-field inputs must be
    /// canonical residues.
    pub fn parse(&self, text: &str) -> Result<Scalar> {
        let bad = || Error::InvalidScalar(format!("'{text}' is not an element of {self}"));
        match self {
            FieldSpec::Prime(p) => {
                let v: u64 = text.parse().map_err(|_| bad())?;
                if v >= *p as u64 {
                    return Err(bad());
                }
                Ok(Scalar::Mod(v as u32))
            }
            FieldSpec::Rationals => {
                let (n, d) = match text.split_once('/') {
                    Some((n, d)) => (n, d),
                    None => (text, "1"),
                };
                let n: BigInt = n.parse().map_err(|_| bad())?;
                let d: BigInt = d.parse().map_err(|_| bad())?;
                self.from_ratio(&n, &d)
            }
        }
    }
}

trait ModFloorU32 {
    fn mod_floor_u32(&self, p: u32) -> u32;
}

impl ModFloorU32 for BigInt {
    fn mod_floor_u32(&self, p: u32) -> u32 {
        let m = BigInt::from(p);
        let mut r = self % &m;
        if r.is_negative() {
            r += &m;
        }
        r.to_u32().expect("residue fits")
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Prime(p) => write!(f, "F_{p}"),
            FieldSpec::Rationals => write!(f, "Q"),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Mod(v) => write!(f, "{v}"),
            Scalar::Rat(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_composite_and_out_of_range() {
        assert!(FieldSpec::prime(2).is_ok());
        assert!(FieldSpec::prime(2147483647).is_ok());
        assert_eq!(FieldSpec::prime(1), Err(Error::InvalidPrime(1)));
        assert_eq!(FieldSpec::prime(9), Err(Error::InvalidPrime(9)));
        assert!(FieldSpec::prime(1u64 << 31).is_err());
    }

    #[test]
    fn prime_field_arithmetic() {
        let f = FieldSpec::Prime(7);
        let three = f.from_i64(3);
        assert_eq!(f.mul(&three, &f.inv(&three).unwrap()), f.one());
        assert_eq!(f.from_i64(-1), Scalar::Mod(6));
        assert_eq!(f.neg(&f.zero()), f.zero());
        assert!(f.inv(&f.zero()).is_none());
    }

    #[test]
    fn parse_and_format() {
        let q = FieldSpec::Rationals;
        let x = q.parse("-6/4").unwrap();
        assert_eq!(x.to_string(), "-3/2");
        assert_eq!(q.parse("5").unwrap().to_string(), "5");
        assert!(q.parse("1/0").is_err());
        let f = FieldSpec::Prime(5);
        assert!(f.parse("5").is_err());
        assert_eq!(f.parse("4").unwrap(), Scalar::Mod(4));
        assert_eq!(
            f.from_ratio(&BigInt::from(1), &BigInt::from(2)).unwrap(),
            Scalar::Mod(3)
        );
    }
}
