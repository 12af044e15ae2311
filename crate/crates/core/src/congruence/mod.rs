//! Finitely generated matrix groups over S-integers and their images in
//! `GL_n(Z/m)`: reduction of generators, closure, `|SL_n(Z/m)|`, and
//! surjectivity scans over primes.

mod closure;
mod modmat;
mod quasisimple;

pub use closure::{bfs_closure, layered_order, ClosureSummary, FiniteClosure, DEFAULT_CAP, ELEMENT_LIMIT};
pub use modmat::{entry_width_bytes, Codec, ModMatrix, MAX_N};
pub use quasisimple::{quasisimple_check, QuasisimpleReport, QUASISIMPLE_MAX_P};

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::exact::{factor_u64, is_prime_u64, prime_divisors, primes_up_to, Int, Matrix, Rat, Rationals};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CongError {
    #[error("NonInvertibleDenominator: {0} divides both a denominator and the modulus")]
    NonInvertibleDenominator(u64),
    #[error("Truncated: closure mod {m} exceeded the cap of {cap} elements")]
    Truncated { m: u64, cap: usize },
    #[error("NotSpecialLinear: a generator has determinant {0}")]
    NotSpecialLinear(String),
    #[error("Singular: generator {0} is not invertible")]
    Singular(usize),
    #[error("ModulusTooLarge: matrices of size {n} mod {m} are not supported")]
    ModulusTooLarge { n: usize, m: u64 },
    #[error("SizeMismatch: generators must share one size")]
    SizeMismatch,
    #[error("InvalidModulus: {0}")]
    InvalidModulus(u64),
    #[error("NotPrime: {0}")]
    NotPrime(u64),
    #[error("PrimeInS: {0} divides a generator denominator")]
    PrimeInS(u64),
    #[error("GeneratorParse: line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("UnknownGroup: {0}")]
    UnknownGroup(String),
    #[error("NoGenerators")]
    NoGenerators,
}

/// A group `<g_1, ..., g_r> <= GL_n(Z_S)` where `S` is the set of primes
/// in the denominators of the generators and their inverses.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SIntegerGroup {
    n: usize,
    generators: Vec<Matrix<Rat>>,
    s: Vec<u64>,
    label: String,
}

impl SIntegerGroup {
    pub fn new(generators: Vec<Matrix<Rat>>, label: impl Into<String>) -> Result<Self, CongError> {
        let n = generators.first().ok_or(CongError::NoGenerators)?.size();
        if generators.iter().any(|g| g.size() != n) {
            return Err(CongError::SizeMismatch);
        }
        let mut s = Vec::new();
        for (i, g) in generators.iter().enumerate() {
            let inv = g.inverse(&Rationals).map_err(|_| CongError::Singular(i))?;
            for c in g.entries().iter().chain(inv.entries()) {
                for p in prime_divisors(c.denom()) {
                    if !s.contains(&p) {
                        s.push(p);
                    }
                }
            }
        }
        s.sort_unstable();
        Ok(SIntegerGroup {
            n,
            generators,
            s,
            label: label.into(),
        })
    }

    pub fn from_i64_rows(gens: &[Vec<Vec<i64>>], label: &str) -> Result<Self, CongError> {
        let gens = gens
            .iter()
            .map(|rows| {
                Matrix::from_rows(
                    rows.iter()
                        .map(|r| r.iter().map(|&c| Rat::from_integer(Int::from(c))).collect())
                        .collect(),
                )
            })
            .collect();
        SIntegerGroup::new(gens, label)
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[Matrix<Rat>] {
        &self.generators
    }

    pub fn s_primes(&self) -> &[u64] {
        &self.s
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// True when every generator has determinant 1.
    pub fn in_special_linear(&self) -> bool {
        self.generators.iter().all(|g| g.det(&Rationals).is_one())
    }

    fn check_special_linear(&self) -> Result<(), CongError> {
        for g in &self.generators {
            let d = g.det(&Rationals);
            if !d.is_one() {
                return Err(CongError::NotSpecialLinear(d.to_string()));
            }
        }
        Ok(())
    }

    /// Generators and their inverses.
    pub fn symmetric_generators(&self) -> Vec<Matrix<Rat>> {
        let mut out = Vec::new();
        for g in &self.generators {
            out.push(g.clone());
            let inv = g.inverse(&Rationals).expect("checked on construction");
            out.push(inv);
        }
        out
    }
}

/// Reduces every generator entrywise mod `m`, inverting denominators.
pub fn reduce_generators(g: &SIntegerGroup, m: u64) -> Result<Vec<ModMatrix>, CongError> {
    if m == 0 {
        return Err(CongError::InvalidModulus(m));
    }
    g.generators.iter().map(|x| reduce_matrix(x, m)).collect()
}

/// Entrywise reduction of a rational matrix mod `m`.
pub fn reduce_matrix(x: &Matrix<Rat>, m: u64) -> Result<ModMatrix, CongError> {
    let mi = Int::from(m);
    let mut entries = Vec::with_capacity(x.entries().len());
    for c in x.entries() {
        let den = c.denom();
        let g = num_integer::Integer::gcd(den, &mi);
        if !g.is_one() {
            let p = prime_divisors(&g)[0];
            return Err(CongError::NonInvertibleDenominator(p));
        }
        let num = mod_u64(c.numer(), m);
        let dinv = modmat::inv_mod(mod_u64(den, m), m).expect("coprime denominator");
        entries.push(((num as u128 * dinv as u128) % m as u128) as u64);
    }
    Ok(ModMatrix::new(x.size(), m, entries))
}

fn mod_u64(a: &Int, m: u64) -> u64 {
    let mi = Int::from(m);
    let r = ((a % &mi) + &mi) % &mi;
    r.to_u64().unwrap()
}

/// `|SL_n(Z/m)|`.
pub fn order_sl(n: usize, m: u64) -> Int {
    assert!(n >= 1 && m >= 1);
    let mut total = Int::one();
    for (p, k) in factor_u64(m) {
        let pi = Int::from(p);
        let mut fp = pi.pow((n * (n - 1) / 2) as u32);
        for i in 2..=n as u32 {
            fp *= pi.pow(i) - 1u32;
        }
        total *= fp * pi.pow((k - 1) * (n * n - 1) as u32);
    }
    total
}

/// Index of the principal congruence subgroup `Gamma(m)` in `SL_n(Z)`,
/// which equals `|SL_n(Z/m)|` because reduction is onto.
pub fn principal_congruence_index(n: usize, m: u64) -> Int {
    order_sl(n, m)
}

/// The transvections `I + E_ij`, `i != j`, in lexicographic order of
/// `(i, j)`.
pub fn elementary_generators_sl(n: usize, m: u64) -> Vec<ModMatrix> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                let mut e = ModMatrix::identity(n, m).entries().to_vec();
                e[i * n + j] = 1 % m;
                out.push(ModMatrix::new(n, m, e));
            }
        }
    }
    out
}

/// The same transvections as rational matrices.
pub fn elementary_group(n: usize) -> SIntegerGroup {
    let gens = elementary_generators_sl(n, 1 << 20)
        .iter()
        .map(|g| g.as_matrix().map(|&c| Rat::from_integer(Int::from(c))))
        .collect();
    SIntegerGroup::new(gens, format!("E_{n}")).expect("transvections are invertible")
}

/// Image of the group at one modulus `m = p^k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ImageRecord {
    pub m: u64,
    #[serde(serialize_with = "ser_opt_u128")]
    pub image_order: Option<u128>,
    #[serde(serialize_with = "ser_int")]
    pub target_order: Int,
    /// `None` when the closure was truncated.
    pub surjective: Option<bool>,
    pub truncated: bool,
    /// Quasisimplicity of the image, evaluated for surjective `SL_2`
    /// images at primes up to 13.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub quasisimple: Option<bool>,
}

/// Exact-or-truncated image of `G` in `SL_n(Z/p^k)`. For `k >= 2` and
/// targets larger than `cap` the order is counted layer by layer (see
/// [`layered_order`]).
pub fn image_record(g: &SIntegerGroup, p: u64, k: u32, cap: usize) -> Result<ImageRecord, CongError> {
    if !is_prime_u64(p) {
        return Err(CongError::NotPrime(p));
    }
    if g.s.contains(&p) {
        return Err(CongError::PrimeInS(p));
    }
    g.check_special_linear()?;
    let m = p.checked_pow(k).ok_or(CongError::ModulusTooLarge { n: g.n, m: u64::MAX })?;
    let target = order_sl(g.n, m);
    let gens = reduce_generators(g, m)?;
    let use_bfs = k == 1 || target <= Int::from(cap);
    let (order, closure) = if use_bfs {
        let c = bfs_closure(g.n, m, &gens, cap)?;
        if c.truncated() {
            (None, None)
        } else {
            (Some(c.order() as u128), Some(c))
        }
    } else {
        (layered_order(g.n, p, k, &gens, cap)?, None)
    };
    let surjective = order.map(|o| Int::from(o) == target);
    let quasisimple = match (&closure, surjective) {
        (Some(c), Some(true)) if g.n == 2 && k == 1 && (5..=QUASISIMPLE_MAX_P).contains(&p) => {
            quasisimple_check(c, cap).ok().map(|r| r.quasisimple)
        }
        _ => None,
    };
    Ok(ImageRecord {
        m,
        image_order: order,
        target_order: target,
        surjective,
        truncated: order.is_none(),
        quasisimple,
    })
}

/// Surjectivity of `G -> SL_n(Z/p^k)` decided by exact order comparison.
/// A truncated closure is an error here.
pub fn is_surjective_image(g: &SIntegerGroup, p: u64, k: u32, cap: usize) -> Result<ImageRecord, CongError> {
    let rec = image_record(g, p, k, cap)?;
    if rec.truncated {
        return Err(CongError::Truncated { m: rec.m, cap });
    }
    Ok(rec)
}

/// Image of `G` in `SL_n(Z/m)` for an arbitrary modulus, by plain BFS.
/// `m` must be coprime to every prime in `S`.
pub fn image_at_modulus(g: &SIntegerGroup, m: u64, cap: usize) -> Result<ImageRecord, CongError> {
    if m < 2 {
        return Err(CongError::InvalidModulus(m));
    }
    if let Some(&(p, _)) = factor_u64(m).iter().find(|(p, _)| g.s.contains(p)) {
        return Err(CongError::PrimeInS(p));
    }
    g.check_special_linear()?;
    let target = order_sl(g.n, m);
    let gens = reduce_generators(g, m)?;
    let c = bfs_closure(g.n, m, &gens, cap)?;
    let order = (!c.truncated()).then(|| c.order() as u128);
    Ok(ImageRecord {
        m,
        image_order: order,
        surjective: order.map(|o| Int::from(o) == target),
        target_order: target,
        truncated: c.truncated(),
        quasisimple: None,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanSummary {
    pub primes_scanned: usize,
    pub surjective: usize,
    pub exceptional: usize,
    pub truncated: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CongruenceReport {
    pub group: String,
    #[serde(rename = "S")]
    pub s: Vec<u64>,
    pub n: usize,
    pub prime_bound: u64,
    pub exponent: u32,
    pub cap: usize,
    pub records: Vec<ImageRecord>,
    /// Primes with an exactly computed, non-surjective image.
    pub exceptional_primes: Vec<u64>,
    /// Primes whose closure hit the cap; these are not classified.
    pub truncated_primes: Vec<u64>,
    pub summary: ScanSummary,
}

/// `image_record` for every prime `p <= bound` outside `S`, run in
/// parallel and merged in ascending order.
pub fn strong_approx_scan(g: &SIntegerGroup, bound: u64, k: u32, cap: usize) -> Result<CongruenceReport, CongError> {
    g.check_special_linear()?;
    let primes: Vec<u64> = primes_up_to(bound)
        .into_iter()
        .filter(|p| !g.s.contains(p))
        .collect();
    let records: Vec<ImageRecord> = primes
        .par_iter()
        .map(|&p| image_record(g, p, k, cap))
        .collect::<Result<_, _>>()?;
    let mut exceptional = Vec::new();
    let mut truncated = Vec::new();
    for (p, r) in primes.iter().zip(&records) {
        match r.surjective {
            Some(false) => exceptional.push(*p),
            None => truncated.push(*p),
            Some(true) => {}
        }
    }
    let summary = ScanSummary {
        primes_scanned: records.len(),
        surjective: records.iter().filter(|r| r.surjective == Some(true)).count(),
        exceptional: exceptional.len(),
        truncated: truncated.len(),
    };
    Ok(CongruenceReport {
        group: g.label.clone(),
        s: g.s.clone(),
        n: g.n,
        prime_bound: bound,
        exponent: k,
        cap,
        records,
        exceptional_primes: exceptional,
        truncated_primes: truncated,
        summary,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SampleSetResult {
    pub label: String,
    pub generating_primes: Vec<u64>,
    /// Primes where the closure was truncated, so generation is unknown.
    pub undecided_primes: Vec<u64>,
    /// Generates at some prime outside the bad set and at every prime up
    /// to the bound outside the bad set.
    pub witness: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OneForAllReport {
    pub n: usize,
    pub prime_bound: u64,
    pub bad_set: Vec<u64>,
    pub sets: Vec<SampleSetResult>,
}

/// For each sample set, the primes `p <= bound` at which its image
/// generates `SL_n(F_p)`.
pub fn one_for_all_scan(
    sets: &[SIntegerGroup],
    bound: u64,
    bad: &[u64],
    cap: usize,
) -> Result<OneForAllReport, CongError> {
    let n = sets.first().ok_or(CongError::NoGenerators)?.n;
    if sets.iter().any(|s| s.n != n) {
        return Err(CongError::SizeMismatch);
    }
    let primes = primes_up_to(bound);
    let mut results = Vec::new();
    for set in sets {
        let recs: Vec<(u64, Option<bool>)> = primes
            .par_iter()
            .map(|&p| {
                if set.s.contains(&p) {
                    return Ok((p, Some(false)));
                }
                image_record(set, p, 1, cap).map(|r| (p, r.surjective))
            })
            .collect::<Result<_, CongError>>()?;
        let generating: Vec<u64> = recs.iter().filter(|r| r.1 == Some(true)).map(|r| r.0).collect();
        let undecided: Vec<u64> = recs.iter().filter(|r| r.1.is_none()).map(|r| r.0).collect();
        let good: Vec<u64> = primes.iter().copied().filter(|p| !bad.contains(p)).collect();
        let witness = good.iter().any(|p| generating.contains(p)) && good.iter().all(|p| generating.contains(p));
        results.push(SampleSetResult {
            label: set.label.clone(),
            generating_primes: generating,
            undecided_primes: undecided,
            witness,
        });
    }
    let mut bad_set = bad.to_vec();
    bad_set.sort_unstable();
    bad_set.dedup();
    Ok(OneForAllReport {
        n,
        prime_bound: bound,
        bad_set,
        sets: results,
    })
}

/// Built-in groups addressable by name.
pub const BUILTIN_GROUPS: &[&str] = &[
    "sanov",
    "sl2z",
    "elementary2",
    "elementary3",
    "triangular",
    "unipotent",
    "borel",
    "minus_identity",
    "identity",
];

pub fn builtin_group(name: &str) -> Result<SIntegerGroup, CongError> {
    let ints = |gens: &[[[i64; 2]; 2]]| -> Vec<Vec<Vec<i64>>> {
        gens.iter().map(|g| g.iter().map(|r| r.to_vec()).collect()).collect()
    };
    match name {
        "sanov" => SIntegerGroup::from_i64_rows(&ints(&[[[1, 2], [0, 1]], [[1, 0], [2, 1]]]), "sanov"),
        "sl2z" => SIntegerGroup::from_i64_rows(&ints(&[[[1, 1], [0, 1]], [[0, -1], [1, 0]]]), "sl2z"),
        "elementary2" => Ok(elementary_group(2).relabel("elementary2")),
        "elementary3" => Ok(elementary_group(3).relabel("elementary3")),
        "triangular" => SIntegerGroup::from_i64_rows(&ints(&[[[1, 1], [0, 1]], [[1, 2], [0, 1]]]), "triangular"),
        "unipotent" => SIntegerGroup::from_i64_rows(&ints(&[[[1, 1], [0, 1]]]), "unipotent"),
        "borel" => {
            let t = Matrix::from_rows(vec![
                vec![Rat::from_integer(2.into()), Rat::zero()],
                vec![Rat::zero(), Rat::new(1.into(), 2.into())],
            ]);
            let u = Matrix::from_rows(vec![
                vec![Rat::one(), Rat::one()],
                vec![Rat::zero(), Rat::one()],
            ]);
            SIntegerGroup::new(vec![u, t], "borel")
        }
        "minus_identity" => SIntegerGroup::from_i64_rows(&ints(&[[[-1, 0], [0, -1]]]), "minus_identity"),
        "identity" => SIntegerGroup::from_i64_rows(&ints(&[[[1, 0], [0, 1]]]), "identity"),
        other => Err(CongError::UnknownGroup(other.to_string())),
    }
}

impl SIntegerGroup {
    pub fn relabel(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }
}

/// Generator file: optional `label=` line, then matrices as blocks of
/// rows of rationals `a/b`, separated by blank lines. `#` starts a
/// comment.
impl FromStr for SIntegerGroup {
    type Err = CongError;

    fn from_str(s: &str) -> Result<Self, CongError> {
        let mut label = String::from("G");
        let mut blocks: Vec<Vec<Vec<Rat>>> = Vec::new();
        let mut current: Vec<Vec<Rat>> = Vec::new();
        let mut block_start = 0;
        let flush = |cur: &mut Vec<Vec<Rat>>, start: usize, blocks: &mut Vec<Vec<Vec<Rat>>>| {
            if cur.is_empty() {
                return Ok(());
            }
            let n = cur.len();
            if cur.iter().any(|r| r.len() != n) {
                return Err(CongError::Parse {
                    line: start,
                    msg: format!("matrix starting here is not {n}x{n}"),
                });
            }
            blocks.push(std::mem::take(cur));
            Ok(())
        };
        for (idx, raw) in s.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap().trim();
            if let Some(v) = line.strip_prefix("label=") {
                label = v.trim().to_string();
                continue;
            }
            if line.is_empty() {
                flush(&mut current, block_start, &mut blocks)?;
                continue;
            }
            if current.is_empty() {
                block_start = line_no;
            }
            let row: Vec<Rat> = line
                .split_whitespace()
                .map(|t| t.parse::<Rat>())
                .collect::<Result<_, _>>()
                .map_err(|_| CongError::Parse {
                    line: line_no,
                    msg: format!("bad entry in {line:?}"),
                })?;
            current.push(row);
        }
        flush(&mut current, block_start, &mut blocks)?;
        let gens = blocks.into_iter().map(Matrix::from_rows).collect();
        SIntegerGroup::new(gens, label)
    }
}

impl fmt::Display for SIntegerGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "label={}", self.label)?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            for row in g.rows() {
                let r: Vec<String> = row.iter().map(|c| c.to_string()).collect();
                writeln!(f, "{}", r.join(" "))?;
            }
        }
        Ok(())
    }
}

/// Canonical bytes of a rational generator list, used for cache keys.
pub fn canonical_group_bytes(g: &SIntegerGroup) -> Vec<u8> {
    g.to_string().into_bytes()
}

pub(crate) fn ser_int<S: Serializer>(x: &Int, s: S) -> Result<S::Ok, S::Error> {
    match x.to_u64() {
        Some(v) if !x.is_negative() => s.serialize_u64(v),
        _ => s.serialize_str(&x.to_string()),
    }
}

fn ser_opt_u128<S: Serializer>(x: &Option<u128>, s: S) -> Result<S::Ok, S::Error> {
    match x {
        None => s.serialize_none(),
        Some(v) => match u64::try_from(*v) {
            Ok(v) => s.serialize_u64(v),
            Err(_) => s.serialize_str(&v.to_string()),
        },
    }
}

/// Elementwise `Z/m -> Z/d` for `d | m`, applied to a whole closure.
pub fn reduce_closure(c: &FiniteClosure, d: u64) -> Option<Vec<ModMatrix>> {
    let mut out: Vec<ModMatrix> = c.elements()?.iter().map(|g| g.reduce_to(d)).collect();
    out.sort();
    out.dedup();
    Some(out)
}
