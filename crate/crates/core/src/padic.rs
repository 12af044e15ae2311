//! Fixed-precision p-adic integers and numbers.
//!
//! A [`PadicInt`] is a residue mod `p^N` stored as its `N` base-`p` digits.
//! Operations demand matching `p` and `N`; there is no lazy precision.

use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::exact::{is_prime_u64, DensePoly, Integers, Int, PolyRing, Rat};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PadicError {
    #[error("NotUnit: leading digit is zero")]
    NotUnit,
    #[error("PrecisionMismatch: operands have (p, N) = ({0}, {1}) and ({2}, {3})")]
    PrecisionMismatch(u64, usize, u64, usize),
    #[error("SingularRoot: derivative vanishes mod p at the starting root")]
    SingularRoot,
    #[error("NotARoot: f(r0) is not 0 mod p")]
    NotARoot,
    #[error("NotPrime: {0}")]
    NotPrime(u64),
    #[error("ZeroPrecision: precision must be at least 1")]
    ZeroPrecision,
    #[error("NotIntegral: denominator divisible by p")]
    NotIntegral,
}

/// `v_p(x)`; `Infinite` for zero. Finite values order below `Infinite`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Valuation {
    Finite(i64),
    Infinite,
}

impl Valuation {
    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }
}

impl std::ops::Add for Valuation {
    type Output = Valuation;
    fn add(self, rhs: Valuation) -> Valuation {
        match (self, rhs) {
            (Valuation::Finite(a), Valuation::Finite(b)) => Valuation::Finite(a + b),
            _ => Valuation::Infinite,
        }
    }
}

fn vp_int(n: &Int, p: u64) -> i64 {
    let p = Int::from(p);
    let mut n = n.abs();
    let mut v = 0;
    while n.is_multiple_of(&p) {
        n /= &p;
        v += 1;
    }
    v
}

/// p-adic valuation of a rational number.
pub fn vp(x: &Rat, p: u64) -> Valuation {
    if x.is_zero() {
        return Valuation::Infinite;
    }
    Valuation::Finite(vp_int(x.numer(), p) - vp_int(x.denom(), p))
}

/// Truncated p-adic integer `a_0 + a_1 p + ... + a_{N-1} p^{N-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct PadicInt {
    p: u64,
    digits: Vec<u64>,
}

impl PadicInt {
    fn modulus(p: u64, n: usize) -> Int {
        Int::from(p).pow(n as u32)
    }

    fn check(p: u64, n: usize) -> Result<(), PadicError> {
        if !is_prime_u64(p) {
            return Err(PadicError::NotPrime(p));
        }
        if n == 0 {
            return Err(PadicError::ZeroPrecision);
        }
        Ok(())
    }

    /// The image of an integer in `Z/p^N`.
    pub fn from_int(a: &Int, p: u64, precision: usize) -> Result<Self, PadicError> {
        Self::check(p, precision)?;
        Ok(Self::from_residue(a, p, precision))
    }

    pub fn from_i64(a: i64, p: u64, precision: usize) -> Result<Self, PadicError> {
        Self::from_int(&Int::from(a), p, precision)
    }

    /// The image of a p-integral rational.
    pub fn from_rat(a: &Rat, p: u64, precision: usize) -> Result<Self, PadicError> {
        Self::check(p, precision)?;
        let m = Self::modulus(p, precision);
        let den = a.denom().mod_floor(&m);
        let inv = mod_inverse(&den, &m).ok_or(PadicError::NotIntegral)?;
        Ok(Self::from_residue(&(a.numer() * inv), p, precision))
    }

    fn from_residue(a: &Int, p: u64, precision: usize) -> Self {
        let pb = Int::from(p);
        let mut r = a.mod_floor(&Self::modulus(p, precision));
        let mut digits = Vec::with_capacity(precision);
        for _ in 0..precision {
            let (q, d) = r.div_rem(&pb);
            digits.push(d.to_u64().unwrap());
            r = q;
        }
        PadicInt { p, digits }
    }

    pub fn from_digits(p: u64, digits: Vec<u64>) -> Result<Self, PadicError> {
        Self::check(p, digits.len())?;
        assert!(digits.iter().all(|&d| d < p), "digits must lie in [0, p)");
        Ok(PadicInt { p, digits })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn precision(&self) -> usize {
        self.digits.len()
    }

    pub fn digits(&self) -> &[u64] {
        &self.digits
    }

    pub fn is_zero(&self) -> bool {
        self.digits.iter().all(|&d| d == 0)
    }

    pub fn is_unit(&self) -> bool {
        self.digits[0] != 0
    }

    /// Canonical representative in `[0, p^N)`.
    pub fn value(&self) -> Int {
        let pb = Int::from(self.p);
        self.digits
            .iter()
            .rev()
            .fold(Int::zero(), |acc, &d| acc * &pb + Int::from(d))
    }

    /// Valuation of the truncated value; `None` when all digits vanish.
    pub fn valuation(&self) -> Option<usize> {
        self.digits.iter().position(|&d| d != 0)
    }

    fn compatible(&self, other: &PadicInt) -> Result<(), PadicError> {
        if self.p != other.p || self.precision() != other.precision() {
            return Err(PadicError::PrecisionMismatch(
                self.p,
                self.precision(),
                other.p,
                other.precision(),
            ));
        }
        Ok(())
    }

    fn rebuild(&self, v: Int) -> PadicInt {
        Self::from_residue(&v, self.p, self.precision())
    }

    pub fn add(&self, other: &PadicInt) -> Result<PadicInt, PadicError> {
        self.compatible(other)?;
        // digit-wise with carries
        let mut carry = 0u64;
        let digits = self
            .digits
            .iter()
            .zip(&other.digits)
            .map(|(&a, &b)| {
                let s = a as u128 + b as u128 + carry as u128;
                carry = (s / self.p as u128) as u64;
                (s % self.p as u128) as u64
            })
            .collect();
        Ok(PadicInt { p: self.p, digits })
    }

    pub fn neg(&self) -> PadicInt {
        self.rebuild(-self.value())
    }

    pub fn sub(&self, other: &PadicInt) -> Result<PadicInt, PadicError> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &PadicInt) -> Result<PadicInt, PadicError> {
        self.compatible(other)?;
        Ok(self.rebuild(self.value() * other.value()))
    }

    pub fn inv(&self) -> Result<PadicInt, PadicError> {
        if !self.is_unit() {
            return Err(PadicError::NotUnit);
        }
        let m = Self::modulus(self.p, self.precision());
        let inv = mod_inverse(&self.value(), &m).expect("unit digit implies invertible");
        Ok(self.rebuild(inv))
    }

    /// Keeps the first `n` digits (reduction `Z/p^N -> Z/p^n`).
    pub fn truncate(&self, n: usize) -> PadicInt {
        assert!(n >= 1 && n <= self.precision(), "truncation must lower precision");
        PadicInt {
            p: self.p,
            digits: self.digits[..n].to_vec(),
        }
    }
}

/// Renders `a_0 + a_1·p + a_2·p² + …`.
impl fmt::Display for PadicInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .digits
            .iter()
            .enumerate()
            .map(|(i, d)| match i {
                0 => d.to_string(),
                1 => format!("{d}·{}", self.p),
                _ => format!("{d}·{}{}", self.p, superscript(i)),
            })
            .collect();
        write!(f, "{} + …", terms.join(" + "))
    }
}

fn superscript(n: usize) -> String {
    const SUP: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
    n.to_string()
        .chars()
        .map(|c| SUP[c.to_digit(10).unwrap() as usize])
        .collect()
}

/// `p^t * u` with `u` a unit, or zero.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum PadicNumber {
    Zero { p: u64, precision: usize },
    Value { valuation: i64, unit: PadicInt },
}

impl PadicNumber {
    /// Expands a rational: `x = p^t y` with `y` a unit carrying `precision`
    /// digits.
    pub fn from_rat(x: &Rat, p: u64, precision: usize) -> Result<Self, PadicError> {
        PadicInt::check(p, precision)?;
        match vp(x, p) {
            Valuation::Infinite => Ok(PadicNumber::Zero { p, precision }),
            Valuation::Finite(t) => {
                let pt = Rat::from_integer(Int::from(p).pow(t.unsigned_abs() as u32));
                let y = if t >= 0 { x / pt } else { x * pt };
                Ok(PadicNumber::Value {
                    valuation: t,
                    unit: PadicInt::from_rat(&y, p, precision)?,
                })
            }
        }
    }

    pub fn valuation(&self) -> Valuation {
        match self {
            PadicNumber::Zero { .. } => Valuation::Infinite,
            PadicNumber::Value { valuation, .. } => Valuation::Finite(*valuation),
        }
    }
}

impl fmt::Display for PadicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PadicNumber::Zero { .. } => f.write_str("0"),
            PadicNumber::Value { valuation: 0, unit } => write!(f, "{unit}"),
            PadicNumber::Value { valuation, unit } => {
                write!(f, "{}^{} · ({unit})", unit.p(), valuation)
            }
        }
    }
}

/// Inverse of `a` modulo `m` for big integers.
pub fn mod_inverse(a: &Int, m: &Int) -> Option<Int> {
    let g = a.extended_gcd(m);
    g.gcd.is_one().then(|| g.x.mod_floor(m))
}

/// Lifts a simple root `r0` of `f mod p` to a root mod `p^N` by Newton
/// iteration, doubling the precision each step.
pub fn hensel_lift(f: &DensePoly<Int>, r0: &Int, p: u64, precision: usize) -> Result<Int, PadicError> {
    PadicInt::check(p, precision)?;
    let zx = PolyRing::new(Integers);
    let pb = Int::from(p);
    let df = zx.derivative(f);
    let mut r = r0.mod_floor(&pb);
    if !zx.eval(f, &r).is_multiple_of(&pb) {
        return Err(PadicError::NotARoot);
    }
    if zx.eval(&df, &r).is_multiple_of(&pb) {
        return Err(PadicError::SingularRoot);
    }
    let mut k = 1usize;
    while k < precision {
        k = (2 * k).min(precision);
        let m = pb.pow(k as u32);
        let d = zx.eval(&df, &r).mod_floor(&m);
        let dinv = mod_inverse(&d, &m).expect("derivative is a unit");
        r = (&r - zx.eval(f, &r) * dinv).mod_floor(&m);
    }
    Ok(r)
}

/// One arithmetic step applied in [`tower_consistency`].
#[derive(Debug, Clone)]
pub enum TowerOp {
    Add(PadicInt),
    Mul(PadicInt),
    Neg,
    Inv,
}

/// True when truncating to `n` digits commutes with every step of `ops`:
/// applying the log at full precision and truncating agrees with truncating
/// first and applying the truncated log.
pub fn tower_consistency(x: &PadicInt, ops: &[TowerOp], n: usize) -> Result<bool, PadicError> {
    let mut hi = x.clone();
    let mut lo = x.truncate(n);
    for op in ops {
        (hi, lo) = match op {
            TowerOp::Add(y) => (hi.add(y)?, lo.add(&y.truncate(n))?),
            TowerOp::Mul(y) => (hi.mul(y)?, lo.mul(&y.truncate(n))?),
            TowerOp::Neg => (hi.neg(), lo.neg()),
            TowerOp::Inv => (hi.inv()?, lo.inv()?),
        };
        if hi.truncate(n) != lo {
            return Ok(false);
        }
    }
    Ok(true)
}
