//! Finite extension fields `F_p[x]/(g)`.

use super::factor::is_irreducible_mod_p;
use super::poly::{DensePoly, PolyRing};
use super::ring::{Field, PrimeField, Ring};
use super::Int;

/// `F_{p^f}` presented as `F_p[x]/(g)` with `g` monic irreducible of degree `f`.
#[derive(Clone, Debug, PartialEq)]
pub struct ExtField {
    ring: PolyRing<PrimeField>,
    modulus: DensePoly<u64>,
}

impl ExtField {
    /// Returns `None` unless `modulus` is irreducible over `F_p`.
    pub fn new(field: PrimeField, modulus: DensePoly<u64>) -> Option<Self> {
        if !is_irreducible_mod_p(&field, &modulus) {
            return None;
        }
        let ring = PolyRing::new(field);
        let modulus = ring.monic(&modulus);
        Some(ExtField { ring, modulus })
    }

    pub fn p(&self) -> u64 {
        self.ring.base().p()
    }

    pub fn degree(&self) -> usize {
        self.modulus.degree().unwrap()
    }

    pub fn modulus(&self) -> &DensePoly<u64> {
        &self.modulus
    }

    /// Number of elements, `p^f`.
    pub fn size(&self) -> Int {
        Int::from(self.p()).pow(self.degree() as u32)
    }

    pub fn is_prime_field(&self) -> bool {
        self.degree() == 1
    }

    /// Reduces an arbitrary polynomial into canonical form.
    pub fn element(&self, coeffs: Vec<u64>) -> DensePoly<u64> {
        let f = self.ring.from_coeffs(coeffs.into_iter().map(|c| c % self.p()).collect());
        self.ring.rem(&f, &self.modulus)
    }

    /// The class of `x`.
    pub fn generator(&self) -> DensePoly<u64> {
        self.ring.rem(&self.ring.x(), &self.modulus)
    }

    /// All elements in lexicographic order of coefficient vectors.
    pub fn elements(&self) -> Vec<DensePoly<u64>> {
        let p = self.p();
        let f = self.degree();
        let total = p.pow(f as u32);
        (0..total)
            .map(|mut k| {
                let mut v = Vec::with_capacity(f);
                for _ in 0..f {
                    v.push(k % p);
                    k /= p;
                }
                self.ring.from_coeffs(v)
            })
            .collect()
    }
}

impl Ring for ExtField {
    type Elem = DensePoly<u64>;

    fn zero(&self) -> Self::Elem {
        self.ring.zero()
    }
    fn one(&self) -> Self::Elem {
        self.ring.one()
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.ring.add(a, b)
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        self.ring.neg(a)
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.ring.mul_mod(a, b, &self.modulus)
    }
    fn from_int(&self, n: &Int) -> Self::Elem {
        self.ring.from_int(n)
    }
    fn unit_inverse(&self, a: &Self::Elem) -> Option<Self::Elem> {
        if a.is_zero() {
            return None;
        }
        let (g, s, _) = self.ring.ext_gcd(a, &self.modulus);
        (g == self.ring.one()).then(|| self.ring.rem(&s, &self.modulus))
    }
    fn render(&self, a: &Self::Elem) -> String {
        a.render_var("x")
    }
}

impl Field for ExtField {}
