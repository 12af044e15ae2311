//! Coefficient rings.
//!
//! Rings are runtime objects (the modulus of `Z/m` is only known at run
//! time), so elements are plain values and every operation goes through the
//! ring. This keeps elements small and `Copy`-friendly for the finite rings
//! while the same polynomial and matrix code runs over `Q`, `Z`, `Z/m` and
//! `F_{p^f}`.

use std::fmt;
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{is_prime_u64, Int, Rat};

/// A commutative ring with identity.
pub trait Ring: Clone + fmt::Debug + PartialEq + Send + Sync {
    type Elem: Clone + fmt::Debug + PartialEq + Eq + Hash + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    /// Image of an integer under the canonical map `Z -> R`.
    fn from_int(&self, n: &Int) -> Self::Elem;

    /// Multiplicative inverse if `a` is a unit.
    fn unit_inverse(&self, a: &Self::Elem) -> Option<Self::Elem>;

    fn render(&self, a: &Self::Elem) -> String;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        *a == self.zero()
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn is_unit(&self, a: &Self::Elem) -> bool {
        self.unit_inverse(a).is_some()
    }

    fn from_i64(&self, n: i64) -> Self::Elem {
        self.from_int(&Int::from(n))
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }
}

/// Marker for rings in which every nonzero element is a unit.
pub trait Field: Ring {
    fn inv(&self, a: &Self::Elem) -> Self::Elem {
        self.unit_inverse(a).expect("division by zero in a field")
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.mul(a, &self.inv(b))
    }
}

/// The rationals.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Rationals;

impl Ring for Rationals {
    type Elem = Rat;

    fn zero(&self) -> Rat {
        Rat::zero()
    }
    fn one(&self) -> Rat {
        Rat::one()
    }
    fn add(&self, a: &Rat, b: &Rat) -> Rat {
        a + b
    }
    fn neg(&self, a: &Rat) -> Rat {
        -a
    }
    fn sub(&self, a: &Rat, b: &Rat) -> Rat {
        a - b
    }
    fn mul(&self, a: &Rat, b: &Rat) -> Rat {
        a * b
    }
    fn from_int(&self, n: &Int) -> Rat {
        Rat::from_integer(n.clone())
    }
    fn unit_inverse(&self, a: &Rat) -> Option<Rat> {
        (!a.is_zero()).then(|| a.recip())
    }
    fn is_zero(&self, a: &Rat) -> bool {
        a.is_zero()
    }
    fn render(&self, a: &Rat) -> String {
        a.to_string()
    }
}

impl Field for Rationals {}

/// The integers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Integers;

impl Ring for Integers {
    type Elem = Int;

    fn zero(&self) -> Int {
        Int::zero()
    }
    fn one(&self) -> Int {
        Int::one()
    }
    fn add(&self, a: &Int, b: &Int) -> Int {
        a + b
    }
    fn neg(&self, a: &Int) -> Int {
        -a
    }
    fn sub(&self, a: &Int, b: &Int) -> Int {
        a - b
    }
    fn mul(&self, a: &Int, b: &Int) -> Int {
        a * b
    }
    fn from_int(&self, n: &Int) -> Int {
        n.clone()
    }
    fn unit_inverse(&self, a: &Int) -> Option<Int> {
        (a.abs().is_one()).then(|| a.clone())
    }
    fn render(&self, a: &Int) -> String {
        a.to_string()
    }
}

/// The residue ring `Z/m` with canonical representatives in `[0, m)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Zmod {
    modulus: u64,
}

impl Zmod {
    pub fn new(modulus: u64) -> Self {
        assert!(modulus >= 1, "modulus must be positive");
        assert!(modulus < (1u64 << 63), "modulus too large");
        Zmod { modulus }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn reduce_i64(&self, a: i64) -> u64 {
        a.rem_euclid(self.modulus as i64) as u64
    }

    pub fn reduce_int(&self, a: &Int) -> u64 {
        let m = BigInt::from(self.modulus);
        let r = a.mod_floor(&m);
        u64::try_from(r).expect("residue fits in u64")
    }

    /// Reduces a rational whose denominator is prime to the modulus.
    pub fn reduce_rat(&self, a: &Rat) -> Option<u64> {
        let den = self.reduce_int(a.denom());
        let inv = self.unit_inverse(&den)?;
        Some(self.mul(&self.reduce_int(a.numer()), &inv))
    }
}

/// Modular inverse of `a` modulo `m`, if it exists.
pub fn inverse_mod(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    let (mut old_r, mut r) = (a as i128 % m as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    (old_r == 1).then(|| old_s.rem_euclid(m as i128) as u64)
}

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

impl Ring for Zmod {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.modulus
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.modulus {
            s - self.modulus
        } else {
            s
        }
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.modulus - a
        }
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.modulus - b
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        mul_mod(*a, *b, self.modulus)
    }
    fn from_int(&self, n: &Int) -> u64 {
        self.reduce_int(n)
    }
    fn from_i64(&self, n: i64) -> u64 {
        self.reduce_i64(n)
    }
    fn unit_inverse(&self, a: &u64) -> Option<u64> {
        inverse_mod(*a, self.modulus)
    }
    fn render(&self, a: &u64) -> String {
        a.to_string()
    }
}

/// A prime field `F_p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField(Zmod);

impl PrimeField {
    /// Returns `None` unless `p` is prime.
    pub fn new(p: u64) -> Option<Self> {
        is_prime_u64(p).then(|| PrimeField(Zmod::new(p)))
    }

    pub fn p(&self) -> u64 {
        self.0.modulus
    }

    pub fn as_zmod(&self) -> Zmod {
        self.0
    }

    pub fn reduce_rat(&self, a: &Rat) -> Option<u64> {
        self.0.reduce_rat(a)
    }
}

impl Ring for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        self.0.add(a, b)
    }
    fn neg(&self, a: &u64) -> u64 {
        self.0.neg(a)
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        self.0.sub(a, b)
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        self.0.mul(a, b)
    }
    fn from_int(&self, n: &Int) -> u64 {
        self.0.from_int(n)
    }
    fn from_i64(&self, n: i64) -> u64 {
        self.0.reduce_i64(n)
    }
    fn unit_inverse(&self, a: &u64) -> Option<u64> {
        self.0.unit_inverse(a)
    }
    fn render(&self, a: &u64) -> String {
        a.to_string()
    }
}

impl Field for PrimeField {}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zmod_inverse() {
        assert_eq!(inverse_mod(2, 5), Some(3));
        assert_eq!(inverse_mod(2, 4), None);
        assert_eq!(inverse_mod(5, 6), Some(5));
        assert_eq!(Zmod::new(1).one(), 0);
    }

    #[test]
    fn reduce_rational() {
        let r = Zmod::new(5);
        assert_eq!(r.reduce_rat(&Rat::new(1.into(), 2.into())), Some(3));
        assert_eq!(Zmod::new(4).reduce_rat(&Rat::new(1.into(), 2.into())), None);
        assert_eq!(r.reduce_rat(&Rat::new((-3).into(), 1.into())), Some(2));
    }

    #[test]
    fn prime_field_rejects_composites() {
        assert!(PrimeField::new(9).is_none());
        assert!(PrimeField::new(1).is_none());
        assert_eq!(PrimeField::new(13).unwrap().p(), 13);
    }
}
