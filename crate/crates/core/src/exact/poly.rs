//! Dense univariate polynomials.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::ring::{Field, Ring};
use super::Int;

/// Coefficient list, constant term first, with no trailing zeros.
///
/// The zero polynomial has an empty coefficient list. Construction through
/// [`PolyRing`] keeps the representation normalized.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DensePoly<E> {
    coeffs: Vec<E>,
}

impl<E> DensePoly<E> {
    pub fn coeffs(&self) -> &[E] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<E> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&E> {
        self.coeffs.last()
    }
}

impl DensePoly<u64> {
    pub fn render_var(&self, var: &str) -> String {
        render_terms(self.coeffs.iter().map(|c| (*c == 0, *c == 1, c.to_string())).collect(), var)
    }
}

impl DensePoly<Int> {
    pub fn render_var(&self, var: &str) -> String {
        render_signed(self.coeffs.iter().map(|c| c.to_string()).collect(), var)
    }
}

fn render_terms(terms: Vec<(bool, bool, String)>, var: &str) -> String {
    let mut parts = Vec::new();
    for (i, (zero, one, s)) in terms.into_iter().enumerate().rev() {
        if zero {
            continue;
        }
        let mono = match i {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{i}"),
        };
        parts.push(match (i, one) {
            (0, _) => s,
            (_, true) => mono,
            _ => format!("{s}*{mono}"),
        });
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

fn render_signed(coeffs: Vec<String>, var: &str) -> String {
    let mut out = String::new();
    for (i, c) in coeffs.iter().enumerate().rev() {
        if c == "0" {
            continue;
        }
        let (neg, mag) = match c.strip_prefix('-') {
            Some(m) => (true, m.to_string()),
            None => (false, c.clone()),
        };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mono = match i {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{i}"),
        };
        if i == 0 {
            out.push_str(&mag);
        } else if mag == "1" {
            out.push_str(&mono);
        } else {
            out.push_str(&format!("{mag}*{mono}"));
        }
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

impl fmt::Display for DensePoly<u64> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render_var("x"))
    }
}

/// Polynomials over a coefficient ring; itself a ring.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyRing<R: Ring> {
    base: R,
}

impl<R: Ring> PolyRing<R> {
    pub fn new(base: R) -> Self {
        PolyRing { base }
    }

    pub fn base(&self) -> &R {
        &self.base
    }

    /// Builds a polynomial, stripping trailing zeros.
    pub fn from_coeffs(&self, mut coeffs: Vec<R::Elem>) -> DensePoly<R::Elem> {
        while coeffs.last().is_some_and(|c| self.base.is_zero(c)) {
            coeffs.pop();
        }
        DensePoly { coeffs }
    }

    pub fn from_i64s(&self, coeffs: &[i64]) -> DensePoly<R::Elem> {
        self.from_coeffs(coeffs.iter().map(|&c| self.base.from_i64(c)).collect())
    }

    pub fn constant(&self, c: R::Elem) -> DensePoly<R::Elem> {
        self.from_coeffs(vec![c])
    }

    /// `x`
    pub fn x(&self) -> DensePoly<R::Elem> {
        self.from_coeffs(vec![self.base.zero(), self.base.one()])
    }

    /// `c * x^k`
    pub fn monomial(&self, c: R::Elem, k: usize) -> DensePoly<R::Elem> {
        let mut v = vec![self.base.zero(); k];
        v.push(c);
        self.from_coeffs(v)
    }

    pub fn coeff(&self, f: &DensePoly<R::Elem>, i: usize) -> R::Elem {
        f.coeffs.get(i).cloned().unwrap_or_else(|| self.base.zero())
    }

    pub fn scale(&self, f: &DensePoly<R::Elem>, c: &R::Elem) -> DensePoly<R::Elem> {
        self.from_coeffs(f.coeffs.iter().map(|a| self.base.mul(a, c)).collect())
    }

    pub fn derivative(&self, f: &DensePoly<R::Elem>) -> DensePoly<R::Elem> {
        self.from_coeffs(
            f.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| self.base.mul(c, &self.base.from_i64(i as i64)))
                .collect(),
        )
    }

    /// Horner evaluation.
    pub fn eval(&self, f: &DensePoly<R::Elem>, x: &R::Elem) -> R::Elem {
        f.coeffs
            .iter()
            .rev()
            .fold(self.base.zero(), |acc, c| self.base.add(&self.base.mul(&acc, x), c))
    }

    /// Maps coefficients into another ring.
    pub fn map_into<S: Ring>(
        &self,
        target: &PolyRing<S>,
        f: &DensePoly<R::Elem>,
        map: impl Fn(&R::Elem) -> S::Elem,
    ) -> DensePoly<S::Elem> {
        target.from_coeffs(f.coeffs.iter().map(map).collect())
    }

    /// Division with remainder by a polynomial whose leading coefficient
    /// is a unit. Panics if `d` is zero or its leading coefficient is not a unit.
    pub fn div_rem(
        &self,
        f: &DensePoly<R::Elem>,
        d: &DensePoly<R::Elem>,
    ) -> (DensePoly<R::Elem>, DensePoly<R::Elem>) {
        let dd = d.degree().expect("division by the zero polynomial");
        let lead_inv = self
            .base
            .unit_inverse(d.leading().unwrap())
            .expect("leading coefficient of divisor must be a unit");
        let mut rem = f.coeffs.clone();
        if rem.len() <= dd {
            return (self.zero(), f.clone());
        }
        let mut quot = vec![self.base.zero(); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let c = self.base.mul(&rem[i], &lead_inv);
            if self.base.is_zero(&c) {
                continue;
            }
            let shift = i - dd;
            for (j, dc) in d.coeffs.iter().enumerate() {
                let t = self.base.mul(&c, dc);
                rem[shift + j] = self.base.sub(&rem[shift + j], &t);
            }
            quot[shift] = c;
        }
        rem.truncate(dd);
        (self.from_coeffs(quot), self.from_coeffs(rem))
    }

    pub fn rem(&self, f: &DensePoly<R::Elem>, d: &DensePoly<R::Elem>) -> DensePoly<R::Elem> {
        self.div_rem(f, d).1
    }

    /// `f * g mod m`
    pub fn mul_mod(
        &self,
        f: &DensePoly<R::Elem>,
        g: &DensePoly<R::Elem>,
        m: &DensePoly<R::Elem>,
    ) -> DensePoly<R::Elem> {
        self.rem(&self.mul(f, g), m)
    }

    /// `f^e mod m` by square-and-multiply; `e` may exceed `u64` range.
    pub fn pow_mod(
        &self,
        f: &DensePoly<R::Elem>,
        e: &Int,
        m: &DensePoly<R::Elem>,
    ) -> DensePoly<R::Elem> {
        let mut acc = self.rem(&self.one(), m);
        let base = self.rem(f, m);
        for i in (0..e.bits()).rev() {
            acc = self.mul_mod(&acc, &acc, m);
            if e.bit(i) {
                acc = self.mul_mod(&acc, &base, m);
            }
        }
        acc
    }

    /// Substitutes `g` for the variable: `f(g(x))`.
    pub fn compose(&self, f: &DensePoly<R::Elem>, g: &DensePoly<R::Elem>) -> DensePoly<R::Elem> {
        f.coeffs.iter().rev().fold(self.zero(), |acc, c| {
            self.add(&self.mul(&acc, g), &self.constant(c.clone()))
        })
    }
}

impl<R: Field> PolyRing<R> {
    pub fn monic(&self, f: &DensePoly<R::Elem>) -> DensePoly<R::Elem> {
        match f.leading() {
            None => f.clone(),
            Some(l) => self.scale(f, &self.base.inv(l)),
        }
    }

    pub fn is_monic(&self, f: &DensePoly<R::Elem>) -> bool {
        f.leading().is_some_and(|l| self.base.is_one(l))
    }

    /// Monic greatest common divisor. `gcd(f, 0) = monic(f)`.
    pub fn gcd(&self, a: &DensePoly<R::Elem>, b: &DensePoly<R::Elem>) -> DensePoly<R::Elem> {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let r = self.rem(&a, &b);
            a = b;
            b = r;
        }
        self.monic(&a)
    }

    /// Extended gcd: returns `(g, s, t)` with `s*a + t*b = g`, `g` monic.
    pub fn ext_gcd(
        &self,
        a: &DensePoly<R::Elem>,
        b: &DensePoly<R::Elem>,
    ) -> (DensePoly<R::Elem>, DensePoly<R::Elem>, DensePoly<R::Elem>) {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (self.one(), self.zero());
        let (mut t0, mut t1) = (self.zero(), self.one());
        while !r1.is_zero() {
            let (q, r) = self.div_rem(&r0, &r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = self.sub(&s0, &self.mul(&q, &s1));
            s0 = std::mem::replace(&mut s1, s);
            let t = self.sub(&t0, &self.mul(&q, &t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        match r0.leading() {
            None => (r0, s0, t0),
            Some(l) => {
                let li = self.base.inv(l);
                (self.scale(&r0, &li), self.scale(&s0, &li), self.scale(&t0, &li))
            }
        }
    }

    /// True when `d` divides `f` exactly.
    pub fn divides(&self, d: &DensePoly<R::Elem>, f: &DensePoly<R::Elem>) -> bool {
        if d.is_zero() {
            return f.is_zero();
        }
        self.rem(f, d).is_zero()
    }
}

impl<R: Ring> Ring for PolyRing<R> {
    type Elem = DensePoly<R::Elem>;

    fn zero(&self) -> Self::Elem {
        DensePoly { coeffs: Vec::new() }
    }

    fn one(&self) -> Self::Elem {
        self.from_coeffs(vec![self.base.one()])
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let n = a.coeffs.len().max(b.coeffs.len());
        self.from_coeffs(
            (0..n)
                .map(|i| match (a.coeffs.get(i), b.coeffs.get(i)) {
                    (Some(x), Some(y)) => self.base.add(x, y),
                    (Some(x), None) | (None, Some(x)) => x.clone(),
                    (None, None) => unreachable!(),
                })
                .collect(),
        )
    }

    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        DensePoly {
            coeffs: a.coeffs.iter().map(|c| self.base.neg(c)).collect(),
        }
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        if a.is_zero() || b.is_zero() {
            return self.zero();
        }
        let mut out = vec![self.base.zero(); a.coeffs.len() + b.coeffs.len() - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            if self.base.is_zero(x) {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                out[i + j] = self.base.add(&out[i + j], &self.base.mul(x, y));
            }
        }
        self.from_coeffs(out)
    }

    fn from_int(&self, n: &Int) -> Self::Elem {
        self.from_coeffs(vec![self.base.from_int(n)])
    }

    fn unit_inverse(&self, a: &Self::Elem) -> Option<Self::Elem> {
        // Units of R[x] for a reduced ring are the constant units; the rings
        // used here are reduced.
        if a.coeffs.len() == 1 {
            self.base.unit_inverse(&a.coeffs[0]).map(|c| self.constant(c))
        } else {
            None
        }
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.is_zero()
    }

    fn render(&self, a: &Self::Elem) -> String {
        let parts: Vec<String> = a.coeffs.iter().map(|c| self.base.render(c)).collect();
        format!("[{}]", parts.join(", "))
    }
}
