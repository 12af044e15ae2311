//! Number fields `Q[x]/(m(x))`: element arithmetic in the power basis, the
//! regular representation, factorization of rational primes through the
//! order `Z[alpha]`, CRT decompositions and split-prime density scans.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::exact::{
    factor_poly_mod_p, primes_up_to, sturm_real_root_count, DensePoly, ExtField, FpPoly,
    Integers, Int, Matrix, PolyRing, PrimeField, Rat, Rationals, Ring, Zmod,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum NfError {
    #[error("NotMonic: minimal polynomial must be monic of degree >= 1")]
    NotMonic,
    #[error("ReducibleMinPoly: {0}")]
    ReducibleMinPoly(String),
    #[error("DivisionByZero")]
    DivisionByZero,
    #[error("WrongLength: expected {expected} coordinates, got {got}")]
    WrongLength { expected: usize, got: usize },
    #[error("NotPrime: {0} is not prime")]
    NotPrime(u64),
    #[error("Unverified: factorization of ({0}) through Z[alpha] is not certified")]
    Unverified(u64),
    #[error("CatalogParse: line {line}: {msg}")]
    CatalogParse { line: usize, msg: String },
    #[error("UnknownField: {0}")]
    UnknownField(String),
}

/// `Q[x]/(m)` with `m` monic, integral and irreducible.
#[derive(Clone, Debug, PartialEq)]
pub struct NumberField {
    name: String,
    min_poly: DensePoly<Int>,
    disc: Int,
    galois: bool,
    power_basis_maximal: bool,
    real_embeddings: usize,
    complex_pairs: usize,
}

/// Coordinates in the power basis `1, alpha, ..., alpha^(d-1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct NFElement {
    coords: Vec<Rat>,
}

impl NFElement {
    pub fn coords(&self) -> &[Rat] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }
}

/// One prime ideal over `p`, described through a factor of `m mod p`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrimeIdealFactor {
    pub p: u64,
    /// Ramification index.
    pub e: u32,
    /// Residue degree.
    pub f: u32,
    pub factor_poly: FpPoly,
    pub verified: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdealFactorization {
    pub p: u64,
    pub factors: Vec<PrimeIdealFactor>,
}

impl IdealFactorization {
    /// `sum e_i f_i`, equal to the field degree.
    pub fn degree_sum(&self) -> u32 {
        self.factors.iter().map(|f| f.e * f.f).sum()
    }

    pub fn verified(&self) -> bool {
        self.factors.iter().all(|f| f.verified)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ChebotarevReport {
    pub field: String,
    pub bound: u64,
    pub split: u64,
    pub total: u64,
    pub ratio: f64,
    pub ratio_exact: String,
    pub expected: f64,
    pub expected_exact: String,
    pub galois: bool,
    /// `"galois"` or `"sample only"`.
    pub label: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CrtComponent {
    pub e: u32,
    pub f: u32,
    pub modulus_poly: Vec<u64>,
    pub size: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CrtReport {
    pub p: u64,
    pub n: u32,
    pub ring_size: String,
    pub components: Vec<CrtComponent>,
    pub product_size: String,
    pub sizes_match: bool,
    /// `None` when the ring is too large to enumerate.
    pub bijective: Option<bool>,
}

/// Rings up to this size are enumerated by `crt_check`.
const CRT_ENUMERATION_LIMIT: u64 = 1 << 22;

impl NumberField {
    /// Validates `m` (monic, integral, irreducible, nonzero discriminant)
    /// and computes the discriminant and signature.
    pub fn new(
        name: &str,
        coeffs: &[Int],
        galois: bool,
        power_basis_maximal: bool,
    ) -> Result<Self, NfError> {
        let zx = PolyRing::new(Integers);
        let m = zx.from_coeffs(coeffs.to_vec());
        if m.degree().unwrap_or(0) == 0 || !m.leading().unwrap().is_one() {
            return Err(NfError::NotMonic);
        }
        let disc = discriminant(&m);
        if disc.is_zero() {
            return Err(NfError::ReducibleMinPoly("repeated root (zero discriminant)".into()));
        }
        check_irreducible(&m, &disc)?;
        let mq = to_rational(&m);
        let s = sturm_real_root_count(&mq).expect("squarefree since disc != 0");
        let d = m.degree().unwrap();
        Ok(NumberField {
            name: name.to_string(),
            min_poly: m,
            disc,
            galois,
            power_basis_maximal,
            real_embeddings: s,
            complex_pairs: (d - s) / 2,
        })
    }

    pub fn from_i64s(
        name: &str,
        coeffs: &[i64],
        galois: bool,
        power_basis_maximal: bool,
    ) -> Result<Self, NfError> {
        let c: Vec<Int> = coeffs.iter().map(|&c| Int::from(c)).collect();
        NumberField::new(name, &c, galois, power_basis_maximal)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn degree(&self) -> usize {
        self.min_poly.degree().unwrap()
    }

    pub fn min_poly(&self) -> &DensePoly<Int> {
        &self.min_poly
    }

    pub fn discriminant(&self) -> &Int {
        &self.disc
    }

    pub fn is_galois(&self) -> bool {
        self.galois
    }

    pub fn power_basis_maximal(&self) -> bool {
        self.power_basis_maximal
    }

    /// `(s, t)`: real embeddings and pairs of complex embeddings.
    pub fn signature(&self) -> (usize, usize) {
        (self.real_embeddings, self.complex_pairs)
    }

    pub fn element(&self, coords: Vec<Rat>) -> Result<NFElement, NfError> {
        if coords.len() != self.degree() {
            return Err(NfError::WrongLength {
                expected: self.degree(),
                got: coords.len(),
            });
        }
        Ok(NFElement { coords })
    }

    pub fn from_rational(&self, c: Rat) -> NFElement {
        let mut coords = vec![Rat::zero(); self.degree()];
        coords[0] = c;
        NFElement { coords }
    }

    pub fn zero(&self) -> NFElement {
        self.from_rational(Rat::zero())
    }

    pub fn one(&self) -> NFElement {
        self.from_rational(Rat::one())
    }

    /// The generator `alpha`, the class of `x`.
    pub fn alpha(&self) -> NFElement {
        let mut coords = vec![Rat::zero(); self.degree()];
        if self.degree() == 1 {
            coords[0] = -Rat::from_integer(self.min_poly.coeffs()[0].clone());
        } else {
            coords[1] = Rat::one();
        }
        NFElement { coords }
    }

    fn qx(&self) -> PolyRing<Rationals> {
        PolyRing::new(Rationals)
    }

    fn modulus_q(&self) -> DensePoly<Rat> {
        to_rational(&self.min_poly)
    }

    fn to_poly(&self, a: &NFElement) -> DensePoly<Rat> {
        self.qx().from_coeffs(a.coords.clone())
    }

    fn from_poly(&self, f: &DensePoly<Rat>) -> NFElement {
        let r = self.qx().rem(f, &self.modulus_q());
        let mut coords = r.into_coeffs();
        coords.resize(self.degree(), Rat::zero());
        NFElement { coords }
    }

    pub fn add(&self, a: &NFElement, b: &NFElement) -> NFElement {
        NFElement {
            coords: a.coords.iter().zip(&b.coords).map(|(x, y)| x + y).collect(),
        }
    }

    pub fn sub(&self, a: &NFElement, b: &NFElement) -> NFElement {
        NFElement {
            coords: a.coords.iter().zip(&b.coords).map(|(x, y)| x - y).collect(),
        }
    }

    pub fn neg(&self, a: &NFElement) -> NFElement {
        NFElement {
            coords: a.coords.iter().map(|x| -x).collect(),
        }
    }

    pub fn nf_mul(&self, a: &NFElement, b: &NFElement) -> NFElement {
        let qx = self.qx();
        self.from_poly(&qx.mul(&self.to_poly(a), &self.to_poly(b)))
    }

    /// Inverse through the extended Euclidean algorithm with `m`.
    pub fn nf_inverse(&self, a: &NFElement) -> Result<NFElement, NfError> {
        if a.is_zero() {
            return Err(NfError::DivisionByZero);
        }
        let qx = self.qx();
        let (g, s, _) = qx.ext_gcd(&self.to_poly(a), &self.modulus_q());
        debug_assert!(g == qx.one(), "m irreducible so gcd is 1");
        Ok(self.from_poly(&s))
    }

    pub fn pow(&self, a: &NFElement, e: u32) -> NFElement {
        (0..e).fold(self.one(), |acc, _| self.nf_mul(&acc, a))
    }

    /// Matrix of `y -> h*y` in the power basis (column `j` holds the
    /// coordinates of `h * alpha^j`).
    pub fn regular_representation(&self, h: &NFElement) -> Matrix<Rat> {
        let d = self.degree();
        let cols: Vec<NFElement> = (0..d)
            .map(|j| {
                let mut basis = vec![Rat::zero(); d];
                basis[j] = Rat::one();
                self.nf_mul(h, &NFElement { coords: basis })
            })
            .collect();
        Matrix::from_vec(
            d,
            (0..d * d).map(|k| cols[k % d].coords[k / d].clone()).collect(),
        )
    }

    pub fn norm(&self, h: &NFElement) -> Rat {
        self.regular_representation(h).det(&Rationals)
    }

    /// Factorization of `(p)` read off from `m mod p`.
    pub fn factor_prime(&self, p: u64) -> Result<IdealFactorization, NfError> {
        let field = PrimeField::new(p).ok_or(NfError::NotPrime(p))?;
        let fp = PolyRing::new(field);
        let m_bar = fp.from_coeffs(self.min_poly.coeffs().iter().map(|c| field.from_int(c)).collect());
        let pp = Int::from(p) * Int::from(p);
        let verified = self.power_basis_maximal || !self.disc.is_multiple_of(&pp);
        let factors = factor_poly_mod_p(&field, &m_bar)
            .into_iter()
            .map(|(g, e)| PrimeIdealFactor {
                p,
                e,
                f: g.degree().unwrap() as u32,
                factor_poly: g,
                verified,
            })
            .collect();
        Ok(IdealFactorization { p, factors })
    }

    /// True iff `(p)` is a product of `d` distinct primes of residue degree 1.
    pub fn is_split(&self, p: u64) -> Result<bool, NfError> {
        let fac = self.factor_prime(p)?;
        Ok(fac.factors.len() == self.degree() && fac.factors.iter().all(|f| f.e == 1 && f.f == 1))
    }

    /// Counts split primes among the primes `p <= bound` not dividing the
    /// discriminant. Per-prime work runs in parallel; results merge in
    /// ascending prime order.
    pub fn chebotarev_scan(&self, bound: u64) -> ChebotarevReport {
        let primes: Vec<u64> = primes_up_to(bound)
            .into_iter()
            .filter(|&p| !self.disc.is_multiple_of(&Int::from(p)))
            .collect();
        let flags: Vec<bool> = primes
            .par_iter()
            .map(|&p| self.is_split(p).expect("sieve output is prime"))
            .collect();
        let split = flags.iter().filter(|&&b| b).count() as u64;
        let total = primes.len() as u64;
        let ratio_exact = if total == 0 {
            "0".to_string()
        } else {
            Rat::new(split.into(), total.into()).to_string()
        };
        let d = self.degree() as u64;
        ChebotarevReport {
            field: self.name.clone(),
            bound,
            split,
            total,
            ratio: if total == 0 { 0.0 } else { split as f64 / total as f64 },
            ratio_exact,
            expected: 1.0 / d as f64,
            expected_exact: format!("1/{d}"),
            galois: self.galois,
            label: if self.galois { "galois" } else { "sample only" }.into(),
        }
    }

    /// Checks `Z[alpha]/(p^n) = prod (Z/p^n)[x]/(G_i)` where `G_i` lifts
    /// `g_i^(e_i)`: sizes always, and bijectivity of the reduction map by
    /// enumeration when the ring is small.
    pub fn crt_check(&self, p: u64, n: u32) -> Result<CrtReport, NfError> {
        let fac = self.factor_prime(p)?;
        if !fac.verified() {
            return Err(NfError::Unverified(p));
        }
        let d = self.degree() as u32;
        let pi = Int::from(p);
        let ring_size = pi.pow(n * d);
        if n == 0 {
            return Ok(CrtReport {
                p,
                n,
                ring_size: "1".into(),
                components: Vec::new(),
                product_size: "1".into(),
                sizes_match: true,
                bijective: Some(true),
            });
        }
        let enumerable = n * d <= 16 && ring_size <= Int::from(CRT_ENUMERATION_LIMIT);
        let field = PrimeField::new(p).unwrap();
        let fp = PolyRing::new(field);
        let powers: Vec<FpPoly> = fac
            .factors
            .iter()
            .map(|f| fp.pow(&f.factor_poly, f.e as u64))
            .collect();
        // Component moduli are lifted to p^n when it fits a machine word,
        // otherwise reported mod p.
        let pn = p.checked_pow(n).filter(|&q| q < 1 << 62);
        let lifted = match pn {
            Some(_) => lift_coprime_factors(&self.min_poly, &powers, p, n),
            None => powers.iter().map(|g| g.coeffs().to_vec()).collect(),
        };
        let components: Vec<CrtComponent> = fac
            .factors
            .iter()
            .zip(&lifted)
            .map(|(f, g)| CrtComponent {
                e: f.e,
                f: f.f,
                modulus_poly: g.clone(),
                size: pi.pow(n * f.e * f.f).to_string(),
            })
            .collect();
        let product: Int = fac.factors.iter().map(|f| pi.pow(n * f.e * f.f)).product();
        let bijective = enumerable.then(|| {
            let pn = pn.expect("enumerable rings are small");
            let zn = PolyRing::new(Zmod::new(pn));
            let mods: Vec<DensePoly<u64>> = lifted.iter().map(|g| zn.from_coeffs(g.clone())).collect();
            let total = pn.pow(d) as usize;
            let mut seen = HashSet::with_capacity(total);
            (0..total).all(|mut k| {
                let mut v = Vec::with_capacity(d as usize);
                for _ in 0..d {
                    v.push(k as u64 % pn);
                    k /= pn as usize;
                }
                let a = zn.from_coeffs(v);
                let image: Vec<DensePoly<u64>> = mods.iter().map(|g| zn.rem(&a, g)).collect();
                seen.insert(image)
            })
        });
        Ok(CrtReport {
            p,
            n,
            ring_size: ring_size.to_string(),
            components,
            product_size: product.to_string(),
            sizes_match: product == ring_size,
            bijective,
        })
    }
}

impl fmt::Display for NFElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

/// Field arithmetic, so that matrices over `k` reuse the generic matrix code.
impl Ring for NumberField {
    type Elem = NFElement;

    fn zero(&self) -> NFElement {
        NumberField::zero(self)
    }
    fn one(&self) -> NFElement {
        NumberField::one(self)
    }
    fn add(&self, a: &NFElement, b: &NFElement) -> NFElement {
        NumberField::add(self, a, b)
    }
    fn neg(&self, a: &NFElement) -> NFElement {
        NumberField::neg(self, a)
    }
    fn sub(&self, a: &NFElement, b: &NFElement) -> NFElement {
        NumberField::sub(self, a, b)
    }
    fn mul(&self, a: &NFElement, b: &NFElement) -> NFElement {
        self.nf_mul(a, b)
    }
    fn from_int(&self, n: &Int) -> NFElement {
        self.from_rational(Rat::from_integer(n.clone()))
    }
    fn unit_inverse(&self, a: &NFElement) -> Option<NFElement> {
        self.nf_inverse(a).ok()
    }
    fn is_zero(&self, a: &NFElement) -> bool {
        a.is_zero()
    }
    fn render(&self, a: &NFElement) -> String {
        a.to_string()
    }
}

impl crate::exact::Field for NumberField {}

/// The residue field `O/p = F_p[x]/(g)` of a prime factor.
pub fn residue_field(factor: &PrimeIdealFactor) -> ExtField {
    let field = PrimeField::new(factor.p).expect("factor prime");
    ExtField::new(field, factor.factor_poly.clone()).expect("factor polynomial is irreducible")
}

fn to_rational(m: &DensePoly<Int>) -> DensePoly<Rat> {
    PolyRing::new(Rationals).from_coeffs(m.coeffs().iter().map(|c| Rat::from_integer(c.clone())).collect())
}

/// Discriminant of a monic integer polynomial:
/// `(-1)^(d(d-1)/2) * Res(m, m')`.
pub fn discriminant(m: &DensePoly<Int>) -> Int {
    let zx = PolyRing::new(Integers);
    let d = m.degree().expect("nonzero polynomial");
    if d == 0 {
        return Int::one();
    }
    let dm = zx.derivative(m);
    let res = resultant(m, &dm);
    if (d * (d - 1) / 2) % 2 == 1 {
        -res
    } else {
        res
    }
}

/// Resultant via the Sylvester determinant (division-free).
pub fn resultant(f: &DensePoly<Int>, g: &DensePoly<Int>) -> Int {
    let (df, dg) = (f.degree().unwrap(), g.degree().unwrap());
    let size = df + dg;
    if size == 0 {
        return Int::one();
    }
    let mut rows = Vec::with_capacity(size);
    let fc: Vec<Int> = f.coeffs().iter().rev().cloned().collect();
    let gc: Vec<Int> = g.coeffs().iter().rev().cloned().collect();
    for i in 0..dg {
        let mut r = vec![Int::zero(); size];
        r[i..i + df + 1].clone_from_slice(&fc);
        rows.push(r);
    }
    for i in 0..df {
        let mut r = vec![Int::zero(); size];
        r[i..i + dg + 1].clone_from_slice(&gc);
        rows.push(r);
    }
    Matrix::from_rows(rows).det(&Integers)
}

/// Certifies irreducibility: no rational root, and the factor-degree
/// patterns modulo several good primes leave no room for a proper factor.
fn check_irreducible(m: &DensePoly<Int>, disc: &Int) -> Result<(), NfError> {
    let d = m.degree().unwrap();
    if d == 1 {
        return Ok(());
    }
    if let Some(r) = rational_root(m) {
        return Err(NfError::ReducibleMinPoly(format!("rational root {r}")));
    }
    // possible[k]: a factor of degree k over Q is still conceivable.
    let mut possible = vec![true; d + 1];
    possible[1] = false;
    possible[d - 1] = false;
    let mut tried = 0;
    for p in primes_up_to(2000) {
        if disc.is_multiple_of(&Int::from(p)) {
            continue;
        }
        let field = PrimeField::new(p).unwrap();
        let fp = PolyRing::new(field);
        let mb = fp.from_coeffs(m.coeffs().iter().map(|c| field.from_int(c)).collect());
        let mut sums = vec![false; d + 1];
        sums[0] = true;
        for (g, e) in factor_poly_mod_p(&field, &mb) {
            let k = g.degree().unwrap();
            for _ in 0..e {
                for s in (k..=d).rev() {
                    if sums[s - k] {
                        sums[s] = true;
                    }
                }
            }
        }
        for k in 1..d {
            possible[k] &= sums[k];
        }
        tried += 1;
        if !possible[1..d].iter().any(|&b| b) {
            return Ok(());
        }
        if tried >= 24 {
            break;
        }
    }
    Err(NfError::ReducibleMinPoly(
        "factor degree patterns modulo small primes admit a proper factor".into(),
    ))
}

fn rational_root(m: &DensePoly<Int>) -> Option<Int> {
    let zx = PolyRing::new(Integers);
    let c0 = m.coeffs()[0].abs();
    if c0.is_zero() {
        return Some(Int::zero());
    }
    // Monic: rational roots are integer divisors of the constant term.
    let bound = c0.sqrt();
    let mut k = Int::one();
    while k <= bound {
        if c0.is_multiple_of(&k) {
            for cand in [k.clone(), &c0 / &k] {
                for r in [cand.clone(), -cand] {
                    if zx.eval(m, &r).is_zero() {
                        return Some(r);
                    }
                }
            }
        }
        k += 1;
    }
    None
}

/// Lifts the pairwise coprime factorization `m = prod g_i mod p` to
/// `mod p^n` by linear Hensel steps. Returns coefficient vectors mod `p^n`.
fn lift_coprime_factors(m: &DensePoly<Int>, factors: &[FpPoly], p: u64, n: u32) -> Vec<Vec<u64>> {
    let pn = p.pow(n);
    let zn = PolyRing::new(Zmod::new(pn));
    let m_n = zn.from_coeffs(m.coeffs().iter().map(|c| Zmod::new(pn).from_int(c)).collect());
    let mut out = Vec::new();
    let mut rest = m_n;
    for (i, g) in factors.iter().enumerate() {
        if i + 1 == factors.len() {
            out.push(rest.coeffs().to_vec());
            break;
        }
        let h_bar = factors[i + 1..]
            .iter()
            .fold(PolyRing::new(PrimeField::new(p).unwrap()).one(), |acc, f| {
                PolyRing::new(PrimeField::new(p).unwrap()).mul(&acc, f)
            });
        let (gl, hl) = hensel_two_factor(&rest, g, &h_bar, p, n);
        out.push(gl.coeffs().to_vec());
        rest = hl;
    }
    out
}

/// Lifts `f = g*h mod p` (g monic, coprime to h) to `mod p^n`.
fn hensel_two_factor(
    f: &DensePoly<u64>,
    g: &FpPoly,
    h: &FpPoly,
    p: u64,
    n: u32,
) -> (DensePoly<u64>, DensePoly<u64>) {
    let field = PrimeField::new(p).unwrap();
    let fp = PolyRing::new(field);
    let (one, s, t) = fp.ext_gcd(g, h);
    assert!(one == fp.one(), "factors must be coprime mod p");
    let pn = p.pow(n);
    let zn = PolyRing::new(Zmod::new(pn));
    let mut gl = zn.from_coeffs(g.coeffs().to_vec());
    let mut hl = zn.from_coeffs(h.coeffs().to_vec());
    let mut pk = 1u64;
    for _ in 1..n {
        pk *= p;
        let err = zn.sub(f, &zn.mul(&gl, &hl));
        let e = fp.from_coeffs(err.coeffs().iter().map(|c| (c / pk) % p).collect());
        let (q, dg) = fp.div_rem(&fp.mul(&t, &e), g);
        let dh = fp.add(&fp.mul(&s, &e), &fp.mul(&q, h));
        let lift = |d: &FpPoly| zn.from_coeffs(d.coeffs().iter().map(|c| c * pk).collect());
        gl = zn.add(&gl, &lift(&dg));
        hl = zn.add(&hl, &lift(&dh));
    }
    (gl, hl)
}

/// One catalog record.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSpec {
    pub name: String,
    /// Constant term first.
    pub poly: Vec<i64>,
    pub galois: bool,
    pub maximal: bool,
}

impl FieldSpec {
    pub fn build(&self) -> Result<NumberField, NfError> {
        NumberField::from_i64s(&self.name, &self.poly, self.galois, self.maximal)
    }
}

/// Field catalog in a line-oriented `key=value` format, one field per line:
///
/// ```text
/// # name, min-poly coefficients (constant first), flags
/// name=qi poly=1,0,1 galois=true maximal=true
/// ```
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FieldCatalog {
    pub fields: Vec<FieldSpec>,
}

impl FieldCatalog {
    /// `Q(i)`, `Q(sqrt 2)`, `Q(cbrt 2)`, `Q(zeta_5)`.
    pub fn builtin() -> Self {
        let spec = |name: &str, poly: &[i64], galois| FieldSpec {
            name: name.into(),
            poly: poly.to_vec(),
            galois,
            maximal: true,
        };
        FieldCatalog {
            fields: vec![
                spec("qi", &[1, 0, 1], true),
                spec("qsqrt2", &[-2, 0, 1], true),
                spec("qcbrt2", &[-2, 0, 0, 1], false),
                spec("qzeta5", &[1, 1, 1, 1, 1], true),
            ],
        }
    }

    pub fn get(&self, name: &str) -> Result<&FieldSpec, NfError> {
        self.fields
            .iter()
            .find(|f| f.name == name)
            .ok_or_else(|| NfError::UnknownField(name.to_string()))
    }

    pub fn render(&self) -> String {
        self.fields
            .iter()
            .map(|f| {
                let poly: Vec<String> = f.poly.iter().map(|c| c.to_string()).collect();
                format!(
                    "name={} poly={} galois={} maximal={}\n",
                    f.name,
                    poly.join(","),
                    f.galois,
                    f.maximal
                )
            })
            .collect()
    }
}

impl FromStr for FieldCatalog {
    type Err = NfError;

    fn from_str(text: &str) -> Result<Self, NfError> {
        let mut fields = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let err = |msg: String| NfError::CatalogParse { line: idx + 1, msg };
            let (mut name, mut poly, mut galois, mut maximal) = (None, None, false, false);
            for tok in line.split_whitespace() {
                let (k, v) = tok
                    .split_once('=')
                    .ok_or_else(|| err(format!("expected key=value, got {tok:?}")))?;
                let flag = |v: &str| match v {
                    "true" | "1" | "yes" => Ok(true),
                    "false" | "0" | "no" => Ok(false),
                    _ => Err(err(format!("bad flag {v:?}"))),
                };
                match k {
                    "name" => name = Some(v.to_string()),
                    "poly" => {
                        poly = Some(
                            v.split(',')
                                .map(|c| c.trim().parse::<i64>())
                                .collect::<Result<Vec<_>, _>>()
                                .map_err(|e| err(format!("bad coefficient: {e}")))?,
                        )
                    }
                    "galois" => galois = flag(v)?,
                    "maximal" => maximal = flag(v)?,
                    _ => return Err(err(format!("unknown key {k:?}"))),
                }
            }
            fields.push(FieldSpec {
                name: name.ok_or_else(|| err("missing name".into()))?,
                poly: poly.ok_or_else(|| err("missing poly".into()))?,
                galois,
                maximal,
            });
        }
        Ok(FieldCatalog { fields })
    }
}
