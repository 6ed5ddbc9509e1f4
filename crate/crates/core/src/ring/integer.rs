//! Arbitrary-precision signed integers.
//!
//! Values that fit in an `i64` are kept inline; anything larger spills into a
//! [`num_bigint::BigInt`]. The representation is canonical (a `Large` value
//! never fits in `i64`) so derived equality is value equality.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_traits::{ToPrimitive, Zero};

use super::{take, Ring, Tag};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub enum BigInteger {
    Small(i64),
    Large(BigInt),
}

impl BigInteger {
    pub const ZERO: BigInteger = BigInteger::Small(0);

    fn normalize(v: BigInt) -> Self {
        match v.to_i64() {
            Some(s) => BigInteger::Small(s),
            None => BigInteger::Large(v),
        }
    }

    pub fn to_bigint(&self) -> BigInt {
        match self {
            BigInteger::Small(s) => BigInt::from(*s),
            BigInteger::Large(b) => b.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, BigInteger::Small(0))
    }

    pub fn signum(&self) -> i32 {
        match self {
            BigInteger::Small(s) => s.signum() as i32,
            BigInteger::Large(b) => match b.sign() {
                Sign::Minus => -1,
                Sign::NoSign => 0,
                Sign::Plus => 1,
            },
        }
    }

    pub fn to_i64(&self) -> Option<i64> {
        match self {
            BigInteger::Small(s) => Some(*s),
            BigInteger::Large(_) => None,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            BigInteger::Small(s) => *s as f64,
            BigInteger::Large(b) => b.to_f64().unwrap_or(f64::NAN),
        }
    }

    pub fn pow(&self, e: u32) -> BigInteger {
        let mut acc = BigInteger::from(1);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn add_assign_ref(&mut self, rhs: &BigInteger) {
        if let (BigInteger::Small(a), BigInteger::Small(b)) = (&*self, rhs) {
            if let Some(s) = a.checked_add(*b) {
                *self = BigInteger::Small(s);
                return;
            }
        }
        *self = &*self + rhs;
    }

    pub fn sub_assign_ref(&mut self, rhs: &BigInteger) {
        if let (BigInteger::Small(a), BigInteger::Small(b)) = (&*self, rhs) {
            if let Some(s) = a.checked_sub(*b) {
                *self = BigInteger::Small(s);
                return;
            }
        }
        *self = &*self - rhs;
    }
}

impl Default for BigInteger {
    fn default() -> Self {
        BigInteger::ZERO
    }
}

impl From<i64> for BigInteger {
    fn from(v: i64) -> Self {
        BigInteger::Small(v)
    }
}

impl From<BigInt> for BigInteger {
    fn from(v: BigInt) -> Self {
        BigInteger::normalize(v)
    }
}

impl fmt::Debug for BigInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for BigInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BigInteger::Small(s) => write!(f, "{s}"),
            BigInteger::Large(b) => write!(f, "{b}"),
        }
    }
}

impl PartialOrd for BigInteger {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for BigInteger {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (BigInteger::Small(a), BigInteger::Small(b)) => a.cmp(b),
            _ => self.to_bigint().cmp(&other.to_bigint()),
        }
    }
}

impl Add for &BigInteger {
    type Output = BigInteger;

    fn add(self, rhs: &BigInteger) -> BigInteger {
        if let (BigInteger::Small(a), BigInteger::Small(b)) = (self, rhs) {
            if let Some(s) = a.checked_add(*b) {
                return BigInteger::Small(s);
            }
        }
        BigInteger::normalize(self.to_bigint() + rhs.to_bigint())
    }
}

impl Sub for &BigInteger {
    type Output = BigInteger;

    fn sub(self, rhs: &BigInteger) -> BigInteger {
        if let (BigInteger::Small(a), BigInteger::Small(b)) = (self, rhs) {
            if let Some(s) = a.checked_sub(*b) {
                return BigInteger::Small(s);
            }
        }
        BigInteger::normalize(self.to_bigint() - rhs.to_bigint())
    }
}

impl Mul for &BigInteger {
    type Output = BigInteger;

    fn mul(self, rhs: &BigInteger) -> BigInteger {
        if let (BigInteger::Small(a), BigInteger::Small(b)) = (self, rhs) {
            if let Some(s) = a.checked_mul(*b) {
                return BigInteger::Small(s);
            }
        }
        BigInteger::normalize(self.to_bigint() * rhs.to_bigint())
    }
}

impl Neg for &BigInteger {
    type Output = BigInteger;

    fn neg(self) -> BigInteger {
        match self {
            BigInteger::Small(s) => match s.checked_neg() {
                Some(n) => BigInteger::Small(n),
                None => BigInteger::normalize(-BigInt::from(*s)),
            },
            BigInteger::Large(b) => BigInteger::normalize(-b),
        }
    }
}

impl Add for BigInteger {
    type Output = BigInteger;
    fn add(self, rhs: BigInteger) -> BigInteger {
        &self + &rhs
    }
}

impl Sub for BigInteger {
    type Output = BigInteger;
    fn sub(self, rhs: BigInteger) -> BigInteger {
        &self - &rhs
    }
}

impl Mul for BigInteger {
    type Output = BigInteger;
    fn mul(self, rhs: BigInteger) -> BigInteger {
        &self * &rhs
    }
}

impl Neg for BigInteger {
    type Output = BigInteger;
    fn neg(self) -> BigInteger {
        -&self
    }
}

/// The ring of integers.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Integers;

impl Ring for Integers {
    type Elem = BigInteger;

    fn zero(&self) -> BigInteger {
        BigInteger::ZERO
    }

    fn one(&self) -> BigInteger {
        BigInteger::Small(1)
    }

    fn is_zero(&self, a: &BigInteger) -> bool {
        a.is_zero()
    }

    fn add(&self, a: &BigInteger, b: &BigInteger) -> BigInteger {
        a + b
    }

    fn sub(&self, a: &BigInteger, b: &BigInteger) -> BigInteger {
        a - b
    }

    fn neg(&self, a: &BigInteger) -> BigInteger {
        -a
    }

    fn mul(&self, a: &BigInteger, b: &BigInteger) -> BigInteger {
        a * b
    }

    #[inline]
    fn add_assign(&self, a: &mut BigInteger, b: &BigInteger) {
        a.add_assign_ref(b);
    }

    #[inline]
    fn sub_assign(&self, a: &mut BigInteger, b: &BigInteger) {
        a.sub_assign_ref(b);
    }

    #[inline]
    fn mul_add_assign(&self, acc: &mut BigInteger, a: &BigInteger, b: &BigInteger) {
        if let (BigInteger::Small(x), BigInteger::Small(y), BigInteger::Small(z)) = (&*acc, a, b) {
            if let Some(s) = y.checked_mul(*z).and_then(|p| x.checked_add(p)) {
                *acc = BigInteger::Small(s);
                return;
            }
        }
        let p = a * b;
        acc.add_assign_ref(&p);
    }

    #[inline]
    fn mul_sub_assign(&self, acc: &mut BigInteger, a: &BigInteger, b: &BigInteger) {
        if let (BigInteger::Small(x), BigInteger::Small(y), BigInteger::Small(z)) = (&*acc, a, b) {
            if let Some(s) = y.checked_mul(*z).and_then(|p| x.checked_sub(p)) {
                *acc = BigInteger::Small(s);
                return;
            }
        }
        let p = a * b;
        acc.sub_assign_ref(&p);
    }

    fn is_char2(&self) -> bool {
        false
    }

    fn from_i64(&self, v: i64) -> BigInteger {
        BigInteger::Small(v)
    }

    fn embed_index(&self, i: u64) -> Result<BigInteger> {
        Ok(BigInteger::normalize(BigInt::from(i)))
    }

    /// Uniform sign: the integer ring samples from {-1, 1}.
    fn sample(&self, seed: u64, tag: &Tag) -> BigInteger {
        if super::prf_u64(seed, tag) & 1 == 1 {
            BigInteger::Small(-1)
        } else {
            BigInteger::Small(1)
        }
    }

    fn write_elem(&self, a: &BigInteger, out: &mut Vec<u8>) {
        let bytes = match a {
            BigInteger::Small(0) => Vec::new(),
            BigInteger::Small(s) => BigInt::from(*s).to_signed_bytes_le(),
            BigInteger::Large(b) => b.to_signed_bytes_le(),
        };
        out.extend_from_slice(&(bytes.len() as u32).to_le_bytes());
        out.extend_from_slice(&bytes);
    }

    fn read_elem(&self, input: &mut &[u8]) -> Result<BigInteger> {
        let len = u32::from_le_bytes(take(input, 4)?.try_into().unwrap()) as usize;
        if len == 0 {
            return Ok(BigInteger::ZERO);
        }
        let bytes = take(input, len)?;
        let v = BigInt::from_signed_bytes_le(bytes);
        if v.is_zero() {
            return Err(Error::Format("non-canonical zero".into()));
        }
        Ok(BigInteger::normalize(v))
    }
}
