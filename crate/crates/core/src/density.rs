//! Unipotent elements and one-parameter subgroups over `F_p`, the subgroup
//! generated by unipotents, adjoint spans, and a Zariski-density verdict
//! for subgroups of `SL_2`.

use std::collections::HashSet;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::algebraic_group::{adjoint_matrix, sl2_standard, GroupError, LieAlgebraData};
use crate::congruence::{
    bfs_closure, strong_approx_scan, CongError, FiniteClosure, ModMatrix, SIntegerGroup,
};
use crate::exact::{inverse_mod, Int, Matrix, Rat, Rationals, Ring, SpanBasis};
use crate::number_field::{NFElement, NumberField};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DensityError {
    #[error("NotUnipotent: (g - I)^n != 0")]
    NotUnipotent,
    #[error("PrimeTooSmall: need p > n, got p = {p}, n = {n}")]
    PrimeTooSmall { p: u64, n: usize },
    #[error("NotSl2: the verdict needs 2x2 generators of determinant 1")]
    NotSl2,
    #[error("Truncated: the element set of the group is not available")]
    Truncated,
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Congruence(#[from] CongError),
}

/// Result of the unipotency test.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Unipotency {
    pub unipotent: bool,
    /// Least `k` with `(g - I)^k = 0`, when unipotent.
    pub index: Option<usize>,
}

/// `(g - I)^n = 0` over any ring, with the least such exponent.
pub fn is_unipotent<R: Ring>(ring: &R, g: &Matrix<R::Elem>) -> Unipotency {
    let n = g.size();
    let nil = g.sub(&Matrix::identity(ring, n), ring);
    let zero = Matrix::zero(ring, n);
    let mut power = Matrix::identity(ring, n);
    for k in 1..=n {
        power = power.mul(&nil, ring);
        if power == zero {
            return Unipotency {
                unipotent: true,
                index: Some(k),
            };
        }
    }
    Unipotency {
        unipotent: false,
        index: None,
    }
}

/// Unipotency of a matrix over `Z/m`. For prime `m = p >= n` this agrees
/// with `g^p = I`, which is asserted in debug builds.
pub fn is_unipotent_mod(g: &ModMatrix) -> Unipotency {
    let ring = crate::exact::Zmod::new(g.modulus());
    let u = is_unipotent(&ring, &g.as_matrix());
    debug_assert!(
        !(crate::exact::is_prime_u64(g.modulus()) && g.modulus() as usize >= g.size())
            || u.unipotent == g.pow(g.modulus()).is_identity()
    );
    u
}

/// `t -> g^t` for a unipotent `g` over `F_p` with `p > n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OneParamSubgroup {
    p: u64,
    g: ModMatrix,
    nu: usize,
    // (g - I)^i for i < nu
    powers: Vec<ModMatrix>,
}

impl OneParamSubgroup {
    pub fn new(g: ModMatrix) -> Result<Self, DensityError> {
        let p = g.modulus();
        let n = g.size();
        if !crate::exact::is_prime_u64(p) || p as usize <= n {
            return Err(DensityError::PrimeTooSmall { p, n });
        }
        let u = is_unipotent_mod(&g);
        let nu = u.index.ok_or(DensityError::NotUnipotent)?;
        let id = ModMatrix::identity(n, p);
        let nil = ModMatrix::new(
            n,
            p,
            g.entries()
                .iter()
                .zip(id.entries())
                .map(|(a, b)| (a + p - b) % p)
                .collect(),
        );
        let mut powers = vec![id];
        for i in 1..nu {
            let next = powers[i - 1].mul(&nil);
            powers.push(next);
        }
        Ok(OneParamSubgroup { p, g, nu, powers })
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn base(&self) -> &ModMatrix {
        &self.g
    }

    pub fn nilpotency_index(&self) -> usize {
        self.nu
    }

    /// Every point `g^t`, `t = 0..p`.
    pub fn points(&self) -> Vec<ModMatrix> {
        (0..self.p).map(|t| one_param_point(self, t)).collect()
    }
}

/// `g^t = sum_{i < nu} binom(t, i) (g - I)^i` with the binomials computed
/// in `F_p` from the representative of `t` in `[0, p)`.
pub fn one_param_point(x: &OneParamSubgroup, t: u64) -> ModMatrix {
    let p = x.p;
    let t = t % p;
    let n = x.g.size();
    let mut acc = vec![0u64; n * n];
    let mut binom = 1u64;
    for (i, pw) in x.powers.iter().enumerate() {
        if i > 0 {
            // binom(t, i) = binom(t, i-1) * (t - i + 1) / i
            let num = (t + p - (i as u64 - 1) % p) % p;
            let inv = inverse_mod(i as u64 % p, p).expect("i < p");
            binom = binom * num % p * inv % p;
        }
        for (a, e) in acc.iter_mut().zip(pw.entries()) {
            *a = (*a + binom * e) % p;
        }
    }
    ModMatrix::new(n, p, acc)
}

/// Subgroup generated by all unipotent elements of an enumerated group.
pub fn gamma_plus(c: &FiniteClosure, cap: usize) -> Result<FiniteClosure, DensityError> {
    let els = c.elements().ok_or(DensityError::Truncated)?;
    let gens: Vec<ModMatrix> = els
        .into_iter()
        .filter(|g| !g.is_identity() && is_unipotent_mod(g).unipotent)
        .collect();
    Ok(bfs_closure(c.size(), c.modulus(), &gens, cap)?)
}

/// Subgroup generated by the one-parameter groups `X_g` of every
/// unipotent element `g` reachable by a word of length at most `max_len`
/// in the generators and their inverses.
pub fn unipotent_closure_subgroup(
    n: usize,
    p: u64,
    gens: &[ModMatrix],
    max_len: usize,
    cap: usize,
) -> Result<FiniteClosure, DensityError> {
    if !crate::exact::is_prime_u64(p) || p as usize <= n {
        return Err(DensityError::PrimeTooSmall { p, n });
    }
    let mut sym: Vec<ModMatrix> = Vec::new();
    for g in gens {
        sym.push(g.clone());
        sym.push(g.inverse().ok_or(CongError::Singular(0))?);
    }
    let mut seen: HashSet<ModMatrix> = HashSet::from([ModMatrix::identity(n, p)]);
    let mut frontier = vec![ModMatrix::identity(n, p)];
    let mut unipotents = Vec::new();
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &frontier {
            for s in &sym {
                let y = w.mul(s);
                if seen.insert(y.clone()) {
                    if is_unipotent_mod(&y).unipotent {
                        unipotents.push(y.clone());
                    }
                    next.push(y);
                }
            }
        }
        frontier = next;
    }
    let mut points: Vec<ModMatrix> = Vec::new();
    for u in unipotents {
        points.extend(OneParamSubgroup::new(u)?.points());
    }
    points.sort();
    points.dedup();
    points.retain(|g| !g.is_identity());
    Ok(bfs_closure(n, p, &points, cap)?)
}

/// Span of `Ad(w)` over words `w`, as a subspace of `End(L)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AdSpan {
    pub span_dim: usize,
    /// Dimension of the span of words of length `<= l`, for `l = 0, 1, ...`.
    pub dims_by_length: Vec<usize>,
    /// First `l` with `dim V_l = dim V_{l+1}`.
    pub stabilization_length: usize,
}

/// `V_0 = span{I}`, `V_l = V_{l-1} + V_{l-1} Ad(s)` over the symmetric
/// generating set, which is the span of `Ad(w)` for words of length
/// `<= l`. Stops once two consecutive lengths give the same dimension.
pub fn ad_span(l: &LieAlgebraData, gens: &[Matrix<Rat>]) -> Result<AdSpan, DensityError> {
    let d = l.dimension();
    let mut ads = Vec::new();
    for g in gens {
        let a = adjoint_matrix(g, l)?;
        let ai = a.inverse(&Rationals).map_err(|_| GroupError::NotInvertible)?;
        ads.push(a);
        ads.push(ai);
    }
    let mut span = SpanBasis::new(Rationals, d * d);
    let id = Matrix::identity(&Rationals, d.max(1));
    let mut basis: Vec<Matrix<Rat>> = Vec::new();
    if d > 0 {
        span.insert(id.entries());
        basis.push(id);
    }
    let mut dims = vec![span.rank()];
    let mut layer = basis.clone();
    loop {
        let mut new_layer = Vec::new();
        for b in &layer {
            for a in &ads {
                let prod = b.mul(a, &Rationals);
                if span.insert(prod.entries()) {
                    new_layer.push(prod);
                }
            }
        }
        dims.push(span.rank());
        let k = dims.len();
        if dims[k - 1] == dims[k - 2] {
            return Ok(AdSpan {
                span_dim: span.rank(),
                stabilization_length: k - 2,
                dims_by_length: dims,
            });
        }
        layer = new_layer;
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    DenseEvidence,
    NotDense,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    /// Rows of the word's matrix.
    pub element: Vec<Vec<String>>,
    pub word: String,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DensityVerdict {
    pub group: String,
    pub ad_span_dim: usize,
    pub full_span: bool,
    pub stabilization_length: usize,
    pub infinite_order_witness: Option<Witness>,
    /// A vector fixed up to scalars by every generator, if any.
    pub common_eigenvector: Option<String>,
    pub verdict: Verdict,
    pub notes: Vec<String>,
}

/// Default bound on word length in the witness search.
pub const DEFAULT_MAX_WORD_LEN: usize = 8;

/// Density evidence for a subgroup of `SL_2(Q)`.
///
/// `NOT_DENSE` when the generators share an eigenvector over Q or a
/// quadratic field (the group is triangularizable, hence soluble).
/// `DENSE_EVIDENCE` when the adjoint span is all of `End(sl_2)` and some
/// word of length `<= max_len` has infinite order (`|tr| > 2`, or
/// `+-` a nontrivial unipotent). `INCONCLUSIVE` otherwise.
pub fn density_verdict(g: &SIntegerGroup, max_len: usize) -> Result<DensityVerdict, DensityError> {
    if g.size() != 2 || !g.in_special_linear() {
        return Err(DensityError::NotSl2);
    }
    let l = sl2_standard();
    let span = ad_span(&l, g.generators())?;
    let full = span.span_dim == l.dimension() * l.dimension();
    let eigen = common_eigenvector(g.generators());
    let witness = find_witness(g, max_len);
    let mut notes = vec![format!(
        "ad span dimension {} of {} after words of length {}",
        span.span_dim,
        l.dimension() * l.dimension(),
        span.stabilization_length
    )];
    let verdict = if let Some(v) = &eigen {
        notes.push(format!(
            "generators share the eigenvector {v}, so the group is triangularizable and soluble"
        ));
        Verdict::NotDense
    } else if full && witness.is_some() {
        notes.push("full span: by Burnside the adjoint action is absolutely irreducible".into());
        notes.push(
            "an infinite-order element makes the Zariski closure positive-dimensional with irreducible adjoint action, which in SL_2 forces SL_2"
                .into(),
        );
        Verdict::DenseEvidence
    } else {
        if witness.is_none() {
            notes.push(format!("no infinite-order word of length <= {max_len} found"));
        }
        Verdict::Inconclusive
    };
    Ok(DensityVerdict {
        group: g.label().to_string(),
        ad_span_dim: span.span_dim,
        full_span: full,
        stabilization_length: span.stabilization_length,
        infinite_order_witness: witness,
        common_eigenvector: eigen,
        verdict,
        notes,
    })
}

fn find_witness(g: &SIntegerGroup, max_len: usize) -> Option<Witness> {
    let q = Rationals;
    let id = Matrix::identity(&q, 2);
    let minus_id = id.scale(&-Rat::one(), &q);
    let mut names = Vec::new();
    let mut sym = Vec::new();
    for (i, x) in g.generators().iter().enumerate() {
        names.push(format!("g{}", i + 1));
        sym.push(x.clone());
        names.push(format!("g{}^-1", i + 1));
        sym.push(x.inverse(&q).expect("invertible"));
    }
    let two = Rat::from_integer(Int::from(2));
    let mut seen: HashSet<Matrix<Rat>> = HashSet::from([id.clone()]);
    let mut frontier: Vec<(Matrix<Rat>, String)> = vec![(id.clone(), String::new())];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for (w, name) in &frontier {
            for (s, sname) in sym.iter().zip(&names) {
                let y = w.mul(s, &q);
                if !seen.insert(y.clone()) {
                    continue;
                }
                let word = if name.is_empty() { sname.clone() } else { format!("{name}*{sname}") };
                let tr = y.trace(&q);
                let reason = if tr.abs() > two {
                    Some(format!("|trace| = {} > 2", tr.abs()))
                } else if y != id && is_unipotent(&q, &y).unipotent {
                    Some("nontrivial unipotent".to_string())
                } else if y != minus_id && is_unipotent(&q, &y.scale(&-Rat::one(), &q)).unipotent {
                    Some("negative of a nontrivial unipotent".to_string())
                } else {
                    None
                };
                if let Some(reason) = reason {
                    return Some(Witness {
                        element: y.rows().iter().map(|r| r.iter().map(|c| c.to_string()).collect()).collect(),
                        word,
                        reason,
                    });
                }
                next.push((y, word));
            }
        }
        frontier = next;
    }
    None
}

/// A common eigenvector of 2x2 rational matrices, searched among the
/// eigenvectors of the first non-scalar matrix over Q or over
/// `Q(sqrt D)`, `D` the discriminant of its characteristic polynomial.
pub fn common_eigenvector(gens: &[Matrix<Rat>]) -> Option<String> {
    let is_scalar = |m: &Matrix<Rat>| m.get(0, 1).is_zero() && m.get(1, 0).is_zero() && m.get(0, 0) == m.get(1, 1);
    let Some(g) = gens.iter().find(|m| !is_scalar(m)) else {
        return Some("(1, 0) over Q".to_string());
    };
    let tr = g.trace(&Rationals);
    let det = g.det(&Rationals);
    let disc = &tr * &tr - Rat::from_integer(Int::from(4)) * det;
    // D = num/den^2 after clearing: sqrt(disc) = sqrt(num * den) / den
    let radicand = disc.numer() * disc.denom();
    let scale = Rat::new(Int::one(), disc.denom().clone());
    let root = integer_sqrt_exact(&radicand);
    let field = match &root {
        Some(_) => NumberField::from_i64s("Q", &[0, 1], true, true).expect("Q"),
        None => NumberField::new("Q(sqrt D)", &[-radicand.clone(), Int::zero(), Int::one()], true, false)
            .expect("non-square radicand gives a quadratic field"),
    };
    let k = &field;
    let c = |x: &Rat| k.from_rational(x.clone());
    let sqrt_disc = match &root {
        Some(r) => c(&(Rat::from_integer(r.clone()) * &scale)),
        None => k.nf_mul(&k.alpha(), &c(&scale)),
    };
    let half = Rat::new(Int::one(), Int::from(2));
    let mut candidates: Vec<[NFElement; 2]> = Vec::new();
    for sign in [1i64, -1] {
        let s = k.nf_mul(&sqrt_disc, &c(&Rat::from_integer(Int::from(sign))));
        let lambda = k.nf_mul(&k.add(&c(&tr), &s), &c(&half));
        let (a, b, cc, d) = (g.get(0, 0), g.get(0, 1), g.get(1, 0), g.get(1, 1));
        let v = if !b.is_zero() {
            [c(b), k.sub(&lambda, &c(a))]
        } else if !cc.is_zero() {
            [k.sub(&lambda, &c(d)), c(cc)]
        } else if lambda == c(a) {
            [k.one(), k.zero()]
        } else {
            [k.zero(), k.one()]
        };
        candidates.push(v);
    }
    'cand: for v in candidates {
        for h in gens {
            let hv0 = k.add(&k.nf_mul(&c(h.get(0, 0)), &v[0]), &k.nf_mul(&c(h.get(0, 1)), &v[1]));
            let hv1 = k.add(&k.nf_mul(&c(h.get(1, 0)), &v[0]), &k.nf_mul(&c(h.get(1, 1)), &v[1]));
            let cross = k.sub(&k.nf_mul(&v[0], &hv1), &k.nf_mul(&v[1], &hv0));
            if !cross.is_zero() {
                continue 'cand;
            }
        }
        return Some(format!(
            "({}, {}) over {}",
            render_elem(&v[0]),
            render_elem(&v[1]),
            render_field(k, &root, &radicand)
        ));
    }
    None
}

/// `c0 + c1*a`, dropping zero terms; rationals print plainly.
fn render_elem(x: &NFElement) -> String {
    let c = x.coords();
    let mut parts = Vec::new();
    if !c[0].is_zero() || c.len() == 1 || c[1].is_zero() {
        parts.push(c[0].to_string());
    }
    if c.len() > 1 && !c[1].is_zero() {
        parts.push(if c[1].is_one() { "a".to_string() } else { format!("{}*a", c[1]) });
    }
    parts.join(" + ")
}

fn render_field(k: &NumberField, root: &Option<Int>, radicand: &Int) -> String {
    match root {
        Some(_) => "Q".to_string(),
        None => format!("Q(a), a^2 = {radicand} [{}]", k.name()),
    }
}

fn integer_sqrt_exact(n: &Int) -> Option<Int> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LubotzkyPrime {
    pub p: u64,
    pub surjective: Option<bool>,
    pub image_order: Option<u64>,
    /// `|PSL_2(F_p)| = |SL_2(F_p)| / gcd(2, p - 1)` when surjective.
    pub psl2_order: Option<u64>,
    pub quasisimple: Option<bool>,
    pub order_divisible_by_p: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LubotzkyReport {
    pub group: String,
    pub prime_bound: u64,
    pub density: DensityVerdict,
    pub primes: Vec<LubotzkyPrime>,
    pub surjective_primes: Vec<u64>,
    /// Set for `NOT_DENSE`: why the group is soluble.
    pub soluble_witness: Option<String>,
}

/// Density verdict together with the images mod every prime `p <= bound`
/// outside `S`.
pub fn lubotzky_scan(g: &SIntegerGroup, bound: u64, max_len: usize, cap: usize) -> Result<LubotzkyReport, DensityError> {
    let density = density_verdict(g, max_len)?;
    let scan = strong_approx_scan(g, bound, 1, cap)?;
    let primes: Vec<LubotzkyPrime> = scan
        .records
        .iter()
        .map(|r| {
            let p = r.m;
            let order = r.image_order.map(|o| o as u64);
            let surj = r.surjective == Some(true);
            LubotzkyPrime {
                p,
                surjective: r.surjective,
                image_order: order,
                psl2_order: if surj { order.map(|o| if p == 2 { o } else { o / 2 }) } else { None },
                quasisimple: r.quasisimple,
                order_divisible_by_p: order.map(|o| o % p == 0),
            }
        })
        .collect();
    let surjective_primes = primes.iter().filter(|r| r.surjective == Some(true)).map(|r| r.p).collect();
    let soluble_witness = (density.verdict == Verdict::NotDense).then(|| {
        density
            .common_eigenvector
            .clone()
            .map(|v| format!("common eigenvector {v}"))
            .unwrap_or_default()
    });
    Ok(LubotzkyReport {
        group: g.label().to_string(),
        prime_bound: bound,
        density,
        primes,
        surjective_primes,
        soluble_witness,
    })
}
