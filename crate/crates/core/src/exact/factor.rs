//! Factorization of univariate polynomials over prime fields.
//!
//! Squarefree decomposition, then distinct-degree splitting, then
//! Cantor–Zassenhaus equal-degree splitting. Linear factors of small inputs
//! are found by an exhaustive root search instead of random splitting.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::poly::{DensePoly, PolyRing};
use super::ring::{PrimeField, Ring};
use super::Int;

pub type FpPoly = DensePoly<u64>;

/// Below this value of `p * deg` linear factors come from trying every residue.
const ROOT_SEARCH_LIMIT: u64 = 10_000;

/// Factors a nonzero polynomial over `F_p` into monic irreducibles with
/// multiplicities, in canonical order (degree, then coefficients constant
/// term first). The product of the factors equals `f` up to its leading
/// coefficient.
pub fn factor_poly_mod_p(field: &PrimeField, f: &FpPoly) -> Vec<(FpPoly, u32)> {
    assert!(!f.is_zero(), "cannot factor the zero polynomial");
    let ring = PolyRing::new(*field);
    let f = ring.monic(f);
    let mut out = Vec::new();
    for (part, mult) in squarefree_decomposition(&ring, &f) {
        for (block, d) in distinct_degree(&ring, &part) {
            for g in equal_degree(&ring, &block, d) {
                out.push((g, mult));
            }
        }
    }
    out.sort_by(|a, b| canonical_cmp(&a.0, &b.0).then(a.1.cmp(&b.1)));
    out
}

/// Ordering by degree, then coefficient vector (constant term first).
pub fn canonical_cmp(a: &FpPoly, b: &FpPoly) -> std::cmp::Ordering {
    a.degree()
        .cmp(&b.degree())
        .then_with(|| a.coeffs().cmp(b.coeffs()))
}

/// True when `f` (nonconstant) is irreducible over `F_p`.
pub fn is_irreducible_mod_p(field: &PrimeField, f: &FpPoly) -> bool {
    match f.degree() {
        None | Some(0) => false,
        Some(_) => {
            let fs = factor_poly_mod_p(field, f);
            fs.len() == 1 && fs[0].1 == 1
        }
    }
}

/// Squarefree decomposition of a monic polynomial: pairwise coprime
/// squarefree parts with their multiplicities.
pub fn squarefree_decomposition(ring: &PolyRing<PrimeField>, f: &FpPoly) -> Vec<(FpPoly, u32)> {
    let p = ring.base().p();
    let mut out = Vec::new();
    if f.degree().unwrap_or(0) == 0 {
        return out;
    }
    let one = ring.one();
    let mut c = ring.gcd(f, &ring.derivative(f));
    let mut w = ring.div_rem(f, &c).0;
    let mut i = 1u32;
    while w != one {
        let y = ring.gcd(&w, &c);
        let fac = ring.div_rem(&w, &y).0;
        if fac != one {
            out.push((fac, i));
        }
        w = y;
        c = ring.div_rem(&c, &w).0;
        i += 1;
    }
    if c != one {
        // c is a p-th power: a^p = a on F_p so take every p-th coefficient.
        let root: Vec<u64> = c.coeffs().iter().step_by(p as usize).copied().collect();
        let root = ring.from_coeffs(root);
        for (g, m) in squarefree_decomposition(ring, &root) {
            out.push((g, m * p as u32));
        }
    }
    out
}

/// Splits a squarefree monic polynomial into products of irreducibles of
/// equal degree. Returns `(product, degree)` pairs.
fn distinct_degree(ring: &PolyRing<PrimeField>, f: &FpPoly) -> Vec<(FpPoly, usize)> {
    let p = Int::from(ring.base().p());
    let x = ring.x();
    let one = ring.one();
    let mut out = Vec::new();
    let mut g = f.clone();
    let mut h = ring.rem(&x, &g);
    let mut i = 1;
    while g.degree().unwrap_or(0) >= 2 * i {
        h = ring.pow_mod(&h, &p, &g);
        let d = ring.gcd(&g, &ring.sub(&h, &x));
        if d != one {
            g = ring.div_rem(&g, &d).0;
            h = ring.rem(&h, &g);
            out.push((d, i));
        }
        i += 1;
    }
    if let Some(dg) = g.degree().filter(|&d| d > 0) {
        out.push((g, dg));
    }
    out
}

fn equal_degree(ring: &PolyRing<PrimeField>, f: &FpPoly, d: usize) -> Vec<FpPoly> {
    let n = f.degree().unwrap_or(0);
    if n == d {
        return vec![f.clone()];
    }
    let p = ring.base().p();
    if d == 1 && p.saturating_mul(n as u64) <= ROOT_SEARCH_LIMIT {
        return (0..p)
            .filter(|r| ring.eval(f, r) == 0)
            .map(|r| ring.from_coeffs(vec![ring.base().neg(&r), 1]))
            .collect();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(p ^ ((n as u64) << 32) ^ d as u64);
    let mut out = Vec::new();
    let mut stack = vec![f.clone()];
    while let Some(g) = stack.pop() {
        if g.degree() == Some(d) {
            out.push(g);
            continue;
        }
        loop {
            let t = split_once(ring, &g, d, &mut rng);
            let td = t.degree().unwrap_or(0);
            if td > 0 && td < g.degree().unwrap() {
                let other = ring.div_rem(&g, &t).0;
                stack.push(t);
                stack.push(other);
                break;
            }
        }
    }
    out
}

/// One Cantor–Zassenhaus attempt: a gcd that may be a proper factor.
fn split_once(ring: &PolyRing<PrimeField>, g: &FpPoly, d: usize, rng: &mut ChaCha8Rng) -> FpPoly {
    let p = ring.base().p();
    let n = g.degree().unwrap();
    let a = ring.from_coeffs((0..n).map(|_| rng.gen_range(0..p)).collect());
    if a.degree().unwrap_or(0) == 0 {
        return ring.one();
    }
    if p == 2 {
        // Trace map a + a^2 + ... + a^(2^(d-1)).
        let mut term = ring.rem(&a, g);
        let mut acc = term.clone();
        for _ in 1..d {
            term = ring.mul_mod(&term, &term, g);
            acc = ring.add(&acc, &term);
        }
        ring.gcd(g, &acc)
    } else {
        let e = (Int::from(p).pow(d as u32) - 1u32) / 2u32;
        let b = ring.sub(&ring.pow_mod(&a, &e, g), &ring.one());
        ring.gcd(g, &b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp(p: u64) -> (PrimeField, PolyRing<PrimeField>) {
        let f = PrimeField::new(p).unwrap();
        (f, PolyRing::new(f))
    }

    #[test]
    fn x2_plus_1_mod_5_splits() {
        let (f, r) = fp(5);
        let got = factor_poly_mod_p(&f, &r.from_i64s(&[1, 0, 1]));
        assert_eq!(got, vec![(r.from_i64s(&[2, 1]), 1), (r.from_i64s(&[3, 1]), 1)]);
    }

    #[test]
    fn x2_plus_1_mod_3_inert() {
        let (f, r) = fp(3);
        let got = factor_poly_mod_p(&f, &r.from_i64s(&[1, 0, 1]));
        assert_eq!(got, vec![(r.from_i64s(&[1, 0, 1]), 1)]);
    }

    #[test]
    fn x2_plus_1_mod_2_ramified() {
        let (f, r) = fp(2);
        let got = factor_poly_mod_p(&f, &r.from_i64s(&[1, 0, 1]));
        assert_eq!(got, vec![(r.from_i64s(&[1, 1]), 2)]);
    }

    #[test]
    fn pth_power_input() {
        // (x + 1)^3 * (x^2 + 1) over F_3: x^3 + 1 is a cube.
        let (f, r) = fp(3);
        let a = r.pow(&r.from_i64s(&[1, 1]), 3);
        let g = r.mul(&a, &r.from_i64s(&[1, 0, 1]));
        let got = factor_poly_mod_p(&f, &g);
        assert_eq!(got, vec![(r.from_i64s(&[1, 1]), 3), (r.from_i64s(&[1, 0, 1]), 1)]);
    }

    #[test]
    fn large_prime_uses_random_splitting() {
        // p * deg above the root-search limit
        let (f, r) = fp(100_003);
        let roots = [5i64, 17, 99_000, 12_345];
        let g = roots
            .iter()
            .fold(r.one(), |acc, &c| r.mul(&acc, &r.from_i64s(&[-c, 1])));
        let got = factor_poly_mod_p(&f, &g);
        assert_eq!(got.len(), 4);
        assert!(got.iter().all(|(h, m)| h.degree() == Some(1) && *m == 1));
        let mut rs: Vec<u64> = got.iter().map(|(h, _)| f.neg(&h.coeffs()[0])).collect();
        rs.sort();
        assert_eq!(rs, vec![5, 17, 12_345, 99_000]);
    }

    #[test]
    fn irreducibility() {
        let (f, r) = fp(2);
        assert!(is_irreducible_mod_p(&f, &r.from_i64s(&[1, 1, 1])));
        assert!(!is_irreducible_mod_p(&f, &r.from_i64s(&[1, 0, 1])));
        assert!(is_irreducible_mod_p(&f, &r.from_i64s(&[1, 1, 0, 0, 1])));
    }
}
