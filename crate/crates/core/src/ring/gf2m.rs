//! The binary extension field GF(2^d), 2 <= d <= 63.
//!
//! Elements are stored as the coefficient bits of a polynomial over GF(2)
//! of degree < d. Addition is XOR. Multiplication is carry-less
//! multiplication followed by reduction modulo an irreducible polynomial of
//! degree d; for d <= 16 log/antilog tables are used instead.

use std::fmt;
use std::sync::Arc;

use super::{take, Ring, Tag};
use crate::error::{Error, Result};

pub const DEFAULT_FIELD_DEGREE: u32 = 16;

const TABLE_MAX_DEGREE: u32 = 16;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct Gf2mElement(pub u64);

impl fmt::Debug for Gf2mElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:#x}", self.0)
    }
}

impl fmt::Display for Gf2mElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

struct Tables {
    log: Vec<u32>,
    // exp is doubled so that log a + log b never needs a reduction
    exp: Vec<u64>,
}

/// Field context: degree, modulus (including the leading x^d bit), and
/// optional lookup tables.
#[derive(Clone)]
pub struct Gf2m {
    degree: u32,
    modulus: u64,
    tables: Option<Arc<Tables>>,
}

impl fmt::Debug for Gf2m {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Gf2m")
            .field("degree", &self.degree)
            .field("modulus", &format_args!("{:#x}", self.modulus))
            .finish()
    }
}

impl PartialEq for Gf2m {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree && self.modulus == other.modulus
    }
}

impl Eq for Gf2m {}

impl Gf2m {
    /// Field of size 2^d with the smallest irreducible modulus of degree d.
    pub fn new(degree: u32) -> Result<Self> {
        check_degree(degree)?;
        let high = 1u64 << degree;
        // every irreducible polynomial of degree >= 2 has a constant term
        let mut low = 1u64;
        loop {
            let candidate = high | low;
            if is_irreducible(candidate, degree) {
                return Ok(Self::build(degree, candidate));
            }
            low += 2;
        }
    }

    /// Field with an explicit modulus, given with or without its leading bit.
    pub fn with_modulus(degree: u32, modulus: u64) -> Result<Self> {
        check_degree(degree)?;
        let high = 1u64 << degree;
        let modulus = modulus | high;
        if modulus >> degree != 1 || !is_irreducible(modulus, degree) {
            return Err(Error::Reducible(modulus, degree));
        }
        Ok(Self::build(degree, modulus))
    }

    /// Field of degree `degree` that is checked to hold at least `needed`
    /// elements.
    pub fn with_capacity(degree: u32, needed: u64) -> Result<Self> {
        let f = Self::new(degree)?;
        f.require_size(needed)?;
        Ok(f)
    }

    fn build(degree: u32, modulus: u64) -> Self {
        let mut f = Gf2m {
            degree,
            modulus,
            tables: None,
        };
        if degree <= TABLE_MAX_DEGREE {
            f.tables = Some(Arc::new(f.build_tables()));
        }
        f
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Number of field elements, saturating at `u64::MAX`.
    pub fn size(&self) -> u64 {
        1u64 << self.degree
    }

    pub fn require_size(&self, needed: u64) -> Result<()> {
        if self.size() < needed {
            return Err(Error::FieldTooSmall {
                degree: self.degree,
                needed,
            });
        }
        Ok(())
    }

    pub fn element(&self, bits: u64) -> Gf2mElement {
        Gf2mElement(bits & self.mask())
    }

    fn mask(&self) -> u64 {
        (1u64 << self.degree) - 1
    }

    fn mul_slow(&self, a: u64, b: u64) -> u64 {
        mulmod(a, b, self.modulus, self.degree)
    }

    fn build_tables(&self) -> Tables {
        let order = (1u64 << self.degree) - 1;
        let factors = prime_factors(order);
        let generator = (2..=order)
            .find(|&g| {
                factors
                    .iter()
                    .all(|&p| self.pow_slow(g, order / p) != 1)
            })
            .expect("multiplicative group of a finite field is cyclic");
        let size = 1usize << self.degree;
        let mut log = vec![0u32; size];
        let mut exp = vec![0u64; 2 * size];
        let mut x = 1u64;
        for i in 0..order as usize {
            exp[i] = x;
            log[x as usize] = i as u32;
            x = self.mul_slow(x, generator);
        }
        for i in order as usize..2 * size {
            exp[i] = exp[i - order as usize];
        }
        Tables { log, exp }
    }

    fn pow_slow(&self, mut base: u64, mut e: u64) -> u64 {
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_slow(acc, base);
            }
            base = self.mul_slow(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn pow(&self, a: &Gf2mElement, e: u64) -> Gf2mElement {
        Gf2mElement(self.pow_slow(a.0, e))
    }

    pub fn inv(&self, a: &Gf2mElement) -> Result<Gf2mElement> {
        if a.0 == 0 {
            return Err(Error::ZeroInverse);
        }
        if let Some(t) = &self.tables {
            let order = (1u64 << self.degree) - 1;
            let l = t.log[a.0 as usize] as u64;
            return Ok(Gf2mElement(t.exp[((order - l) % order) as usize]));
        }
        // a^(2^d - 2) = a^-1
        Ok(Gf2mElement(self.pow_slow(a.0, (1u64 << self.degree) - 2)))
    }
}

fn check_degree(degree: u32) -> Result<()> {
    if !(2..=63).contains(&degree) {
        return Err(Error::FieldDegree(degree));
    }
    Ok(())
}

/// Carry-less product of two 64-bit words.
pub(crate) fn clmul(a: u64, b: u64) -> u128 {
    let mut acc = 0u128;
    let a = a as u128;
    let mut b = b;
    let mut shift = 0;
    while b != 0 {
        if b & 1 == 1 {
            acc ^= a << shift;
        }
        b >>= 1;
        shift += 1;
    }
    acc
}

/// Reduce a polynomial of degree < 2*degree modulo `modulus`.
fn reduce(mut x: u128, modulus: u64, degree: u32) -> u64 {
    let m = modulus as u128;
    let mut top = 127 - x.leading_zeros().min(127) as i32;
    while x != 0 && top >= degree as i32 {
        x ^= m << (top - degree as i32);
        if x == 0 {
            break;
        }
        top = 127 - x.leading_zeros() as i32;
    }
    x as u64
}

fn mulmod(a: u64, b: u64, modulus: u64, degree: u32) -> u64 {
    reduce(clmul(a, b), modulus, degree)
}

fn poly_degree(p: u64) -> i32 {
    63 - p.leading_zeros() as i32
}

fn poly_mod(mut a: u64, b: u64) -> u64 {
    let db = poly_degree(b);
    while a != 0 && poly_degree(a) >= db {
        a ^= b << (poly_degree(a) - db);
    }
    a
}

fn poly_gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = poly_mod(a, b);
        a = b;
        b = r;
    }
    a
}

/// Rabin's irreducibility test over GF(2): `f` of degree `n` is irreducible
/// iff `x^(2^n) = x (mod f)` and `gcd(x^(2^(n/q)) - x, f) = 1` for every
/// prime `q | n`.
pub(crate) fn is_irreducible(f: u64, n: u32) -> bool {
    if poly_degree(f) != n as i32 || f & 1 == 0 {
        return false;
    }
    let x = 0b10u64;
    let frob = |times: u32| {
        let mut a = x;
        for _ in 0..times {
            a = mulmod(a, a, f, n);
        }
        a
    };
    if frob(n) != x {
        return false;
    }
    for q in prime_factors(n as u64) {
        let h = frob(n / q as u32) ^ x;
        if poly_gcd(f, h) != 1 {
            return false;
        }
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

impl Ring for Gf2m {
    type Elem = Gf2mElement;

    fn zero(&self) -> Gf2mElement {
        Gf2mElement(0)
    }

    fn one(&self) -> Gf2mElement {
        Gf2mElement(1)
    }

    fn is_zero(&self, a: &Gf2mElement) -> bool {
        a.0 == 0
    }

    #[inline]
    fn add(&self, a: &Gf2mElement, b: &Gf2mElement) -> Gf2mElement {
        Gf2mElement(a.0 ^ b.0)
    }

    #[inline]
    fn sub(&self, a: &Gf2mElement, b: &Gf2mElement) -> Gf2mElement {
        Gf2mElement(a.0 ^ b.0)
    }

    fn neg(&self, a: &Gf2mElement) -> Gf2mElement {
        *a
    }

    #[inline]
    fn mul(&self, a: &Gf2mElement, b: &Gf2mElement) -> Gf2mElement {
        if a.0 == 0 || b.0 == 0 {
            return Gf2mElement(0);
        }
        match &self.tables {
            Some(t) => Gf2mElement(t.exp[(t.log[a.0 as usize] + t.log[b.0 as usize]) as usize]),
            None => Gf2mElement(self.mul_slow(a.0, b.0)),
        }
    }

    #[inline]
    fn add_assign(&self, a: &mut Gf2mElement, b: &Gf2mElement) {
        a.0 ^= b.0;
    }

    #[inline]
    fn sub_assign(&self, a: &mut Gf2mElement, b: &Gf2mElement) {
        a.0 ^= b.0;
    }

    #[inline]
    fn mul_add_assign(&self, acc: &mut Gf2mElement, a: &Gf2mElement, b: &Gf2mElement) {
        acc.0 ^= self.mul(a, b).0;
    }

    #[inline]
    fn mul_sub_assign(&self, acc: &mut Gf2mElement, a: &Gf2mElement, b: &Gf2mElement) {
        acc.0 ^= self.mul(a, b).0;
    }

    fn is_char2(&self) -> bool {
        true
    }

    fn from_i64(&self, v: i64) -> Gf2mElement {
        Gf2mElement((v & 1) as u64)
    }

    fn embed_index(&self, i: u64) -> Result<Gf2mElement> {
        if self.degree < 64 && i >> self.degree != 0 {
            return Err(Error::FieldTooSmall {
                degree: self.degree,
                needed: i.saturating_add(1),
            });
        }
        Ok(Gf2mElement(i))
    }

    fn sample(&self, seed: u64, tag: &Tag) -> Gf2mElement {
        Gf2mElement(super::prf_u64(seed, tag) & self.mask())
    }

    fn write_elem(&self, a: &Gf2mElement, out: &mut Vec<u8>) {
        let width = self.degree.div_ceil(8) as usize;
        out.extend_from_slice(&a.0.to_le_bytes()[..width]);
    }

    fn read_elem(&self, input: &mut &[u8]) -> Result<Gf2mElement> {
        let width = self.degree.div_ceil(8) as usize;
        let bytes = take(input, width)?;
        let mut buf = [0u8; 8];
        buf[..width].copy_from_slice(bytes);
        let v = u64::from_le_bytes(buf);
        if v & !self.mask() != 0 {
            return Err(Error::Format(format!("field element {v:#x} out of range")));
        }
        Ok(Gf2mElement(v))
    }
}
