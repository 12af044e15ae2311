//! Exact arithmetic substrate: big integers and rationals, coefficient
//! rings, dense polynomials, factorization over `F_p`, real root counting
//! and square matrices.

mod ext_field;
mod factor;
mod matrix;
mod poly;
mod ring;
mod sturm;

pub use ext_field::ExtField;
pub use factor::{canonical_cmp, factor_poly_mod_p, is_irreducible_mod_p, squarefree_decomposition, FpPoly};
pub use matrix::{kernel, rank, rref, Matrix, SpanBasis};
pub use poly::{DensePoly, PolyRing};
pub use ring::{inverse_mod, mul_mod, Field, Integers, PrimeField, Rationals, Ring, Zmod};
pub use sturm::sturm_real_root_count;

use num_traits::{One, Zero};

pub type Int = num_bigint::BigInt;
pub type Rat = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExactError {
    #[error("NonSquarefree: polynomial shares a factor with its derivative")]
    NonSquarefree,
    #[error("NotInvertible: determinant is not a unit")]
    NotInvertible,
}

/// Rational from an integer pair. Panics on a zero denominator.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(Int::from(n), Int::from(d))
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(Int::from(n))
}

/// Deterministic Miller–Rabin for all `u64`.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod_u64(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

pub fn pow_mod_u64(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, m);
        }
        a = mul_mod(a, a, m);
        e >>= 1;
    }
    acc
}

/// Primes `<= bound`, ascending (sieve of Eratosthenes).
pub fn primes_up_to(bound: u64) -> Vec<u64> {
    if bound < 2 {
        return Vec::new();
    }
    let n = bound as usize;
    let mut sieve = vec![true; n + 1];
    sieve[0] = false;
    sieve[1] = false;
    let mut i = 2;
    while i * i <= n {
        if sieve[i] {
            for j in (i * i..=n).step_by(i) {
                sieve[j] = false;
            }
        }
        i += 1;
    }
    sieve
        .iter()
        .enumerate()
        .filter(|(_, &b)| b)
        .map(|(i, _)| i as u64)
        .collect()
}

/// Prime factorization of a positive integer by trial division, as
/// ascending `(prime, exponent)` pairs.
pub fn factor_u64(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Distinct prime divisors of a nonzero big integer. Panics if a cofactor
/// above `2^64` survives trial division to `10^6`.
pub fn prime_divisors(n: &Int) -> Vec<u64> {
    let mut n = num_traits::Signed::abs(n);
    assert!(!n.is_zero(), "zero has no prime factorization");
    let mut out = Vec::new();
    let mut p = 2u64;
    while Int::from(p) * Int::from(p) <= n && p <= 1_000_000 {
        let bp = Int::from(p);
        if (&n % &bp).is_zero() {
            out.push(p);
            while (&n % &bp).is_zero() {
                n /= &bp;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if !n.is_one() {
        let rest = u64::try_from(n).expect("cofactor too large to factor");
        out.extend(factor_u64(rest).into_iter().map(|(q, _)| q));
    }
    out.sort_unstable();
    out.dedup();
    out
}
