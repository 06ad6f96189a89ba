//! Exact coefficient arithmetic over the supported commutative unital rings.

use crate::error::{Error, Result};
use num::{BigInt, BigRational, One, Signed, Zero};
use std::fmt;

/// Descriptor of the coefficient ring. All arithmetic is exact; the zero
/// test is decidable in every case.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Ring {
    Integers,
    /// Z/nZ with n >= 2 (not necessarily prime).
    IntegersMod(u64),
    Rationals,
    /// GF(p) with p prime.
    PrimeField(u64),
}

impl Ring {
    pub fn is_field(&self) -> bool {
        matches!(self, Ring::Rationals | Ring::PrimeField(_))
    }

    pub fn zero(&self) -> Coeff {
        match self {
            Ring::Integers => Coeff::Int(BigInt::zero()),
            Ring::IntegersMod(_) | Ring::PrimeField(_) => Coeff::Mod(0),
            Ring::Rationals => Coeff::Rat(BigRational::zero()),
        }
    }

    pub fn one(&self) -> Coeff {
        match self {
            Ring::Integers => Coeff::Int(BigInt::one()),
            Ring::IntegersMod(_) | Ring::PrimeField(_) => Coeff::Mod(1),
            Ring::Rationals => Coeff::Rat(BigRational::one()),
        }
    }

    pub fn from_i64(&self, n: i64) -> Coeff {
        match self {
            Ring::Integers => Coeff::Int(BigInt::from(n)),
            Ring::IntegersMod(m) | Ring::PrimeField(m) => {
                Coeff::Mod((n.rem_euclid(*m as i64)) as u64)
            }
            Ring::Rationals => Coeff::Rat(BigRational::from(BigInt::from(n))),
        }
    }

    fn modulus(&self) -> Option<u64> {
        match self {
            Ring::IntegersMod(m) | Ring::PrimeField(m) => Some(*m),
            _ => None,
        }
    }

    fn check(&self, a: &Coeff) -> Result<()> {
        let ok = matches!(
            (self, a),
            (Ring::Integers, Coeff::Int(_))
                | (Ring::IntegersMod(_), Coeff::Mod(_))
                | (Ring::PrimeField(_), Coeff::Mod(_))
                | (Ring::Rationals, Coeff::Rat(_))
        );
        if ok {
            Ok(())
        } else {
            Err(Error::RingMismatch {
                expected: format!("{self}"),
                got: format!("{a:?}"),
            })
        }
    }

    pub fn add(&self, a: &Coeff, b: &Coeff) -> Coeff {
        debug_assert!(self.check(a).is_ok() && self.check(b).is_ok());
        match (a, b) {
            (Coeff::Int(x), Coeff::Int(y)) => Coeff::Int(x + y),
            (Coeff::Mod(x), Coeff::Mod(y)) => {
                let m = self.modulus().expect("modular coeff in non-modular ring");
                Coeff::Mod((x + y) % m)
            }
            (Coeff::Rat(x), Coeff::Rat(y)) => Coeff::Rat(x + y),
            _ => unreachable!("mixed coefficient kinds"),
        }
    }

    pub fn neg(&self, a: &Coeff) -> Coeff {
        match a {
            Coeff::Int(x) => Coeff::Int(-x),
            Coeff::Mod(x) => {
                let m = self.modulus().expect("modular coeff in non-modular ring");
                Coeff::Mod((m - (x % m)) % m)
            }
            Coeff::Rat(x) => Coeff::Rat(-x),
        }
    }

    pub fn sub(&self, a: &Coeff, b: &Coeff) -> Coeff {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Coeff, b: &Coeff) -> Coeff {
        match (a, b) {
            (Coeff::Int(x), Coeff::Int(y)) => Coeff::Int(x * y),
            (Coeff::Mod(x), Coeff::Mod(y)) => {
                let m = self.modulus().expect("modular coeff in non-modular ring") as u128;
                Coeff::Mod(((*x as u128 * *y as u128) % m) as u64)
            }
            (Coeff::Rat(x), Coeff::Rat(y)) => Coeff::Rat(x * y),
            _ => unreachable!("mixed coefficient kinds"),
        }
    }

    pub fn is_zero(&self, a: &Coeff) -> bool {
        match a {
            Coeff::Int(x) => x.is_zero(),
            Coeff::Mod(x) => *x == 0,
            Coeff::Rat(x) => x.is_zero(),
        }
    }

    pub fn is_one(&self, a: &Coeff) -> bool {
        match a {
            Coeff::Int(x) => x.is_one(),
            Coeff::Mod(x) => *x == 1,
            Coeff::Rat(x) => x.is_one(),
        }
    }

    /// Multiplicative inverse; defined only over fields.
    pub fn inv(&self, a: &Coeff) -> Result<Coeff> {
        match (self, a) {
            (Ring::Rationals, Coeff::Rat(x)) => {
                if x.is_zero() {
                    Err(Error::ZeroElement)
                } else {
                    Ok(Coeff::Rat(x.recip()))
                }
            }
            (Ring::PrimeField(p), Coeff::Mod(x)) => {
                if *x == 0 {
                    return Err(Error::ZeroElement);
                }
                // Fermat: x^(p-2) mod p.
                let mut result: u128 = 1;
                let mut base = *x as u128 % *p as u128;
                let mut exp = *p - 2;
                let m = *p as u128;
                while exp > 0 {
                    if exp & 1 == 1 {
                        result = result * base % m;
                    }
                    base = base * base % m;
                    exp >>= 1;
                }
                Ok(Coeff::Mod(result as u64))
            }
            _ => Err(Error::Unsupported(format!("inverse over {self}"))),
        }
    }

    /// Canonical printed form of a coefficient.
    pub fn format(&self, a: &Coeff) -> String {
        match a {
            Coeff::Int(x) => x.to_string(),
            Coeff::Mod(x) => x.to_string(),
            Coeff::Rat(x) => {
                if x.denom().is_one() {
                    x.numer().to_string()
                } else {
                    format!("{}/{}", x.numer(), x.denom())
                }
            }
        }
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ring::Integers => write!(f, "Z"),
            Ring::IntegersMod(n) => write!(f, "Zmod:{n}"),
            Ring::Rationals => write!(f, "Q"),
            Ring::PrimeField(p) => write!(f, "GF:{p}"),
        }
    }
}

/// An exact coefficient value; its ring is tracked externally.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Coeff {
    Int(BigInt),
    Mod(u64),
    Rat(BigRational),
}

impl Coeff {
    /// Sign-aware formatting helper: (is_negative, magnitude string).
    pub fn signed_parts(&self) -> (bool, String) {
        match self {
            Coeff::Int(x) => (x.is_negative(), x.abs().to_string()),
            Coeff::Mod(x) => (false, x.to_string()),
            Coeff::Rat(x) => {
                let neg = x.is_negative();
                let a = x.abs();
                if a.denom().is_one() {
                    (neg, a.numer().to_string())
                } else {
                    (neg, format!("{}/{}", a.numer(), a.denom()))
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modular_arithmetic_wraps() {
        let r = Ring::IntegersMod(4);
        let a = r.from_i64(3);
        let b = r.from_i64(2);
        assert_eq!(r.add(&a, &b), r.from_i64(1));
        assert_eq!(r.mul(&a, &b), r.from_i64(2));
        assert_eq!(r.neg(&a), r.from_i64(1));
    }

    #[test]
    fn gf_inverse() {
        let r = Ring::PrimeField(7);
        for x in 1..7 {
            let a = r.from_i64(x);
            let inv = r.inv(&a).unwrap();
            assert!(r.is_one(&r.mul(&a, &inv)));
        }
    }

    #[test]
    fn rational_inverse() {
        let r = Ring::Rationals;
        let a = r.from_i64(-3);
        let inv = r.inv(&a).unwrap();
        assert!(r.is_one(&r.mul(&a, &inv)));
        assert!(r.inv(&r.zero()).is_err());
    }

    #[test]
    fn negative_from_i64_mod() {
        let r = Ring::IntegersMod(5);
        assert_eq!(r.from_i64(-1), r.from_i64(4));
    }
}
