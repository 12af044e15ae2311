mod common;

use arithgroup::exact::{
    factor_poly_mod_p, sturm_real_root_count, squarefree_decomposition, DensePoly, Int, Matrix, PolyRing, PrimeField,
    Rat, Rationals, Ring, Zmod,
};
use num_traits::Zero;
use proptest::prelude::*;

const SMALL_PRIMES: [u64; 6] = [2, 3, 5, 7, 11, 13];

fn fp_poly(p: u64, coeffs: &[u64]) -> DensePoly<u64> {
    PolyRing::new(PrimeField::new(p).unwrap()).from_coeffs(coeffs.iter().map(|c| c % p).collect())
}

/// Every monic polynomial of degree `1..=max_deg` over `F_p`.
fn all_monic(p: u64, max_deg: usize) -> Vec<DensePoly<u64>> {
    let mut out = Vec::new();
    for d in 1..=max_deg {
        let count = p.pow(d as u32);
        for code in 0..count {
            let mut c = Vec::with_capacity(d + 1);
            let mut x = code;
            for _ in 0..d {
                c.push(x % p);
                x /= p;
            }
            c.push(1);
            out.push(fp_poly(p, &c));
        }
    }
    out
}

proptest! {
    #![proptest_config(common::config(200))]

    #[test]
    fn factors_rebuild_the_product(
        pi in 0usize..6,
        f in prop::collection::vec(0u64..13, 1..=7),
        g in prop::collection::vec(0u64..13, 1..=7),
    ) {
        let p = SMALL_PRIMES[pi];
        let field = PrimeField::new(p).unwrap();
        let ring = PolyRing::new(field);
        let fg = ring.mul(&fp_poly(p, &f), &fp_poly(p, &g));
        prop_assume!(fg.degree().unwrap_or(0) >= 1);
        let mut rebuilt = ring.one();
        for (h, e) in factor_poly_mod_p(&field, &fg) {
            prop_assert!(ring.is_monic(&h));
            for _ in 0..e {
                rebuilt = ring.mul(&rebuilt, &h);
            }
        }
        prop_assert_eq!(rebuilt, ring.monic(&fg));
    }

    #[test]
    fn squarefree_parts_rebuild(pi in 0usize..6, f in prop::collection::vec(0u64..13, 2..=7)) {
        let p = SMALL_PRIMES[pi];
        let field = PrimeField::new(p).unwrap();
        let ring = PolyRing::new(field);
        let f = fp_poly(p, &f);
        prop_assume!(f.degree().unwrap_or(0) >= 1);
        let f = ring.monic(&f);
        let mut rebuilt = ring.one();
        for (h, e) in squarefree_decomposition(&ring, &f) {
            for _ in 0..e {
                rebuilt = ring.mul(&rebuilt, &h);
            }
        }
        prop_assert_eq!(rebuilt, ring.monic(&f));
    }

    #[test]
    fn gcd_is_greatest(
        small in prop::bool::ANY,
        a in prop::collection::vec(0u64..5, 1..=5),
        b in prop::collection::vec(0u64..5, 1..=5),
    ) {
        let p = if small { 3 } else { 5 };
        let ring = PolyRing::new(PrimeField::new(p).unwrap());
        let (a, b) = (fp_poly(p, &a), fp_poly(p, &b));
        prop_assume!(!a.is_zero() || !b.is_zero());
        let g = ring.gcd(&a, &b);
        prop_assert!(ring.rem(&a, &g).is_zero());
        prop_assert!(ring.rem(&b, &g).is_zero());
        for d in all_monic(p, 4) {
            if ring.rem(&a, &d).is_zero() && ring.rem(&b, &d).is_zero() {
                prop_assert!(ring.rem(&g, &d).is_zero(), "{} divides both but not the gcd {}", d, g);
            }
        }
    }

    #[test]
    fn rational_inverse(n in 1usize..=4, entries in prop::collection::vec((-9i64..=9, 1i64..=4), 16)) {
        let m = Matrix::from_vec(
            n,
            entries[..n * n].iter().map(|&(a, b)| Rat::new(Int::from(a), Int::from(b))).collect(),
        );
        prop_assume!(!m.det(&Rationals).is_zero());
        let inv = m.inverse(&Rationals).unwrap();
        prop_assert!(inv.mul(&m, &Rationals).is_identity(&Rationals));
        prop_assert!(m.mul(&inv, &Rationals).is_identity(&Rationals));
    }

    #[test]
    fn prime_field_inverse(pi in 0usize..6, n in 1usize..=4, entries in prop::collection::vec(0u64..13, 16)) {
        let p = SMALL_PRIMES[pi];
        let f = PrimeField::new(p).unwrap();
        let m = Matrix::from_vec(n, entries[..n * n].iter().map(|c| c % p).collect());
        prop_assume!(m.det(&f) != 0);
        prop_assert!(m.inverse(&f).unwrap().mul(&m, &f).is_identity(&f));
    }

    #[test]
    fn zmod_inverse(m in 2u64..60, n in 1usize..=3, entries in prop::collection::vec(0u64..60, 9)) {
        let z = Zmod::new(m);
        let a = Matrix::from_vec(n, entries[..n * n].iter().map(|c| c % m).collect());
        let unit = num_integer::Integer::gcd(&a.det(&z), &m) == 1;
        match a.inverse(&z) {
            Ok(inv) => {
                prop_assert!(unit);
                prop_assert!(inv.mul(&a, &z).is_identity(&z));
            }
            Err(_) => prop_assert!(!unit),
        }
    }
}

/// Sign changes and exact zeros of `f` on the grid `k / 4096`,
/// `|k / 4096| <= 10`, using integer arithmetic. With coefficients of
/// absolute value at most 9 every real root lies in `(-10, 10)`.
fn grid_root_count(coeffs: &[i64]) -> usize {
    const N: i128 = 4096;
    let d = coeffs.len() as u32 - 1;
    let eval = |k: i128| -> i128 {
        coeffs
            .iter()
            .enumerate()
            .map(|(i, &a)| a as i128 * k.pow(i as u32) * N.pow(d - i as u32))
            .sum()
    };
    let mut count = 0;
    let mut last_sign = 0i128;
    for k in -10 * N..=10 * N {
        let s = eval(k).signum();
        if s == 0 {
            count += 1;
            last_sign = 0;
            continue;
        }
        if last_sign != 0 && s != last_sign {
            count += 1;
        }
        last_sign = s;
    }
    count
}

proptest! {
    #![proptest_config(common::config(50))]

    #[test]
    fn sturm_matches_grid_scan(cubic in prop::bool::ANY, c in prop::collection::vec(-9i64..=9, 5)) {
        let mut coeffs = if cubic { c[..4].to_vec() } else { c.clone() };
        let last = coeffs.len() - 1;
        if coeffs[last] == 0 {
            coeffs[last] = 1;
        }
        let f = PolyRing::new(Rationals).from_coeffs(coeffs.iter().map(|&a| common::q(a)).collect());
        match sturm_real_root_count(&f) {
            // repeated roots are rejected, which is the squarefree filter
            Err(_) => prop_assume!(false),
            Ok(n) => prop_assert_eq!(n, grid_root_count(&coeffs), "{:?}", coeffs),
        }
    }
}
