//! Scalars of a prime field or of the rationals.
//!
//! Every modular value carries its modulus, so a value can never silently
//! meet a value of another field. Operator overloads panic on a modulus
//! mismatch; the `try_*` methods and [`check_domain`] report it as an error.

use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::ExactError;

/// The field a scalar lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Domain {
    Prime(u64),
    Rationals,
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Domain::Prime(p) => write!(f, "F_{p}"),
            Domain::Rationals => write!(f, "Q"),
        }
    }
}

/// Exact field arithmetic shared by the modular and rational backends.
///
/// `Ctx` is whatever is needed to build constants (the prime for `Fp`,
/// nothing for the rationals).
pub trait FieldScalar:
    Clone
    + PartialEq
    + Eq
    + Hash
    + fmt::Debug
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    type Ctx: Clone + PartialEq + fmt::Debug + Send + Sync;

    fn ctx(&self) -> Self::Ctx;
    fn domain(&self) -> Domain;
    fn from_i64(ctx: &Self::Ctx, v: i64) -> Self;
    fn is_zero(&self) -> bool;
    /// Multiplicative inverse, `None` for zero.
    fn inv(&self) -> Option<Self>;

    fn zero(ctx: &Self::Ctx) -> Self {
        Self::from_i64(ctx, 0)
    }

    fn one(ctx: &Self::Ctx) -> Self {
        Self::from_i64(ctx, 1)
    }

    fn is_one(&self) -> bool {
        *self == Self::one(&self.ctx())
    }

    fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.ctx());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            base = base.clone() * base;
            e >>= 1;
        }
        acc
    }
}

/// Returns the common domain of `values`, or a mismatch error.
pub fn check_domain<'a, F: FieldScalar + 'a>(
    values: impl IntoIterator<Item = &'a F>,
) -> Result<Option<Domain>, ExactError> {
    let mut seen: Option<Domain> = None;
    for v in values {
        let d = v.domain();
        match seen {
            None => seen = Some(d),
            Some(s) if s != d => return Err(ExactError::DomainMismatch(s, d)),
            _ => {}
        }
    }
    Ok(seen)
}

/// Context for [`Fp`]: the prime modulus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    /// Builds the field F_p. The modulus must be a prime below 2^31.
    pub fn new(p: u64) -> Result<Self, ExactError> {
        if !(2..(1 << 31)).contains(&p) || !is_prime(p) {
            return Err(ExactError::NotPrime(p));
        }
        Ok(Self { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn elem(&self, v: i64) -> Fp {
        Fp::from_i64(self, v)
    }

    /// All elements 0, 1, ..., p-1 in order.
    pub fn elements(&self) -> impl Iterator<Item = Fp> + '_ {
        (0..self.p).map(move |v| Fp {
            value: v,
            modulus: self.p,
        })
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// An element of F_p together with p.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Fp {
    value: u64,
    modulus: u64,
}

impl Fp {
    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Centered representative in (-p/2, p/2].
    pub fn centered(&self) -> i64 {
        let v = self.value as i64;
        let p = self.modulus as i64;
        if v > p / 2 {
            v - p
        } else {
            v
        }
    }

    fn same_field(&self, other: &Fp) -> Result<(), ExactError> {
        if self.modulus == other.modulus {
            Ok(())
        } else {
            Err(ExactError::DomainMismatch(self.domain(), other.domain()))
        }
    }

    pub fn try_add(self, other: Fp) -> Result<Fp, ExactError> {
        self.same_field(&other)?;
        Ok(self + other)
    }

    pub fn try_mul(self, other: Fp) -> Result<Fp, ExactError> {
        self.same_field(&other)?;
        Ok(self * other)
    }

    fn assert_same(&self, other: &Fp) {
        assert!(
            self.modulus == other.modulus,
            "mixing moduli {} and {}",
            self.modulus,
            other.modulus
        );
    }
}

impl fmt::Debug for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Add for Fp {
    type Output = Fp;
    fn add(self, o: Fp) -> Fp {
        self.assert_same(&o);
        let s = self.value + o.value;
        Fp {
            value: if s >= self.modulus {
                s - self.modulus
            } else {
                s
            },
            modulus: self.modulus,
        }
    }
}

impl Sub for Fp {
    type Output = Fp;
    fn sub(self, o: Fp) -> Fp {
        self.assert_same(&o);
        let v = if self.value >= o.value {
            self.value - o.value
        } else {
            self.value + self.modulus - o.value
        };
        Fp {
            value: v,
            modulus: self.modulus,
        }
    }
}

impl Mul for Fp {
    type Output = Fp;
    fn mul(self, o: Fp) -> Fp {
        self.assert_same(&o);
        Fp {
            value: self.value * o.value % self.modulus,
            modulus: self.modulus,
        }
    }
}

impl Neg for Fp {
    type Output = Fp;
    fn neg(self) -> Fp {
        Fp {
            value: if self.value == 0 {
                0
            } else {
                self.modulus - self.value
            },
            modulus: self.modulus,
        }
    }
}

impl FieldScalar for Fp {
    type Ctx = PrimeField;

    fn ctx(&self) -> PrimeField {
        PrimeField { p: self.modulus }
    }

    fn domain(&self) -> Domain {
        Domain::Prime(self.modulus)
    }

    fn from_i64(ctx: &PrimeField, v: i64) -> Self {
        Fp {
            value: v.rem_euclid(ctx.p as i64) as u64,
            modulus: ctx.p,
        }
    }

    fn is_zero(&self) -> bool {
        self.value == 0
    }

    fn inv(&self) -> Option<Self> {
        if self.value == 0 {
            None
        } else {
            Some(self.pow(self.modulus - 2))
        }
    }
}

impl FieldScalar for BigRational {
    type Ctx = ();

    fn ctx(&self) {}

    fn domain(&self) -> Domain {
        Domain::Rationals
    }

    fn from_i64(_: &(), v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }

    fn is_one(&self) -> bool {
        One::is_one(self)
    }
}

/// Reduces a rational into F_p, failing when p divides the denominator.
pub fn reduce_rational(q: &BigRational, field: &PrimeField) -> Option<Fp> {
    let p = BigInt::from(field.modulus());
    let num = q.numer() % &p;
    let den = q.denom() % &p;
    let to_fp = |b: BigInt| {
        let b = if b.is_negative() { b + &p } else { b };
        let v: u64 = b.try_into().expect("residue fits in u64");
        field.elem(v as i64)
    };
    let den = to_fp(den);
    den.inv().map(|d| to_fp(num) * d)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_times_self_is_one() {
        let f = PrimeField::new(10007).unwrap();
        for v in 1..200 {
            let a = f.elem(v * 37);
            assert!((a * a.inv().unwrap()).is_one());
        }
        assert!(f.elem(0).inv().is_none());
    }

    #[test]
    fn mixing_moduli_is_rejected() {
        let a = PrimeField::new(11).unwrap().elem(3);
        let b = PrimeField::new(13).unwrap().elem(3);
        assert!(matches!(a.try_add(b), Err(ExactError::DomainMismatch(..))));
        assert!(a.try_mul(a).is_ok());
        assert!(std::panic::catch_unwind(|| a + b).is_err());
    }

    #[test]
    fn rejects_composite_modulus() {
        assert!(PrimeField::new(1001).is_err());
        assert!(PrimeField::new(1009).is_ok());
    }

    #[test]
    fn rational_reduction() {
        let f = PrimeField::new(7).unwrap();
        let q = BigRational::new(BigInt::from(3), BigInt::from(2));
        assert_eq!(reduce_rational(&q, &f).unwrap().value(), 5);
        let bad = BigRational::new(BigInt::from(1), BigInt::from(7));
        assert!(reduce_rational(&bad, &f).is_none());
    }

    #[test]
    fn centered_representative() {
        let f = PrimeField::new(11).unwrap();
        assert_eq!(f.elem(10).centered(), -1);
        assert_eq!(f.elem(5).centered(), 5);
    }
}
