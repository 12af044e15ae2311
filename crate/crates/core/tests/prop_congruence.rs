mod common;

use arithgroup::congruence::{
    bfs_closure, builtin_group, elementary_generators_sl, order_sl, reduce_closure, reduce_matrix, ModMatrix,
    DEFAULT_CAP,
};
use arithgroup::exact::{Int, Matrix, Rat, Rationals};
use common::{qm, sl2z_word};
use num_integer::Integer;
use proptest::prelude::*;

fn bfs_order(n: usize, m: u64) -> u64 {
    bfs_closure(n, m, &elementary_generators_sl(n, m), DEFAULT_CAP).unwrap().order()
}

/// `|SL_2(Z/m)|` by enumerating all `m^4` matrices.
fn brute_sl2(m: u64) -> u64 {
    let mut count = 0;
    for a in 0..m {
        for b in 0..m {
            for c in 0..m {
                for d in 0..m {
                    if (a * d + m * m - b * c) % m == 1 % m {
                        count += 1;
                    }
                }
            }
        }
    }
    count
}

#[test]
fn order_formula_matches_enumeration() {
    for m in [2u64, 3, 4, 5, 8, 9] {
        assert_eq!(order_sl(2, m), Int::from(brute_sl2(m)), "m={m}");
    }
}

#[test]
fn order_formula_matches_bfs() {
    for p in [2u64, 3, 5, 7, 11, 13] {
        assert_eq!(bfs_order(2, p), p * (p - 1) * (p + 1));
        assert_eq!(order_sl(2, p), Int::from(bfs_order(2, p)));
    }
    for p in [2u64, 3, 5] {
        assert_eq!(bfs_order(2, p * p) / bfs_order(2, p), p.pow(3));
        assert_eq!(order_sl(2, p * p) / order_sl(2, p), Int::from(p.pow(3)));
    }
}

#[test]
fn crt_multiplicativity() {
    for m1 in 2u64..=30 {
        for m2 in 2u64..=30 {
            if m1 * m2 > 60 || m1.gcd(&m2) != 1 || m1 > m2 {
                continue;
            }
            assert_eq!(bfs_order(2, m1 * m2), bfs_order(2, m1) * bfs_order(2, m2), "{m1} x {m2}");
        }
    }
}

#[test]
fn image_mod_p_is_the_truncation_of_image_mod_p2() {
    let sanov = builtin_group("sanov").unwrap();
    for p in [2u64, 3, 5] {
        let gens = |m: u64| -> Vec<ModMatrix> {
            sanov.generators().iter().map(|g| reduce_matrix(g, m).unwrap()).collect()
        };
        let low = bfs_closure(2, p, &gens(p), DEFAULT_CAP).unwrap();
        let high = bfs_closure(2, p * p, &gens(p * p), DEFAULT_CAP).unwrap();
        assert_eq!(reduce_closure(&high, p).unwrap(), low.elements().unwrap(), "p={p}");
    }
}

/// Words in `(1 1;0 1)`, `(1 0;1 1)` and `diag(2, 1/2)`, with inverses.
fn mixed_word(word: &[u8]) -> Matrix<Rat> {
    let d = Matrix::from_rows(vec![
        vec![Rat::from_integer(2.into()), Rat::from_integer(0.into())],
        vec![Rat::from_integer(0.into()), Rat::new(1.into(), 2.into())],
    ]);
    let d_inv = d.inverse(&Rationals).unwrap();
    let mut acc = Matrix::identity(&Rationals, 2);
    for &w in word {
        let g = match w % 6 {
            4 => d.clone(),
            5 => d_inv.clone(),
            k => sl2z_word(&[k]),
        };
        acc = acc.mul(&g, &Rationals);
    }
    acc
}

proptest! {
    #![proptest_config(common::config(100))]

    #[test]
    fn reduction_is_functorial(
        w1 in prop::collection::vec(0u8..6, 0..8),
        w2 in prop::collection::vec(0u8..6, 0..8),
    ) {
        let (a, b) = (mixed_word(&w1), mixed_word(&w2));
        let ab = a.mul(&b, &Rationals);
        let a_inv = a.inverse(&Rationals).unwrap();
        for m in (2u64..=50).filter(|m| m % 2 == 1) {
            let r = |x: &Matrix<Rat>| reduce_matrix(x, m).unwrap();
            prop_assert_eq!(r(&ab), r(&a).mul(&r(&b)));
            prop_assert_eq!(r(&a_inv), r(&a).inverse().unwrap());
        }
    }

    #[test]
    fn reduction_of_integral_words(w in prop::collection::vec(0u8..4, 0..10), m in 2u64..=50) {
        let g = sl2z_word(&w);
        let r = reduce_matrix(&g, m).unwrap();
        // oracle: reduce each integer entry by hand
        for (got, want) in r.entries().iter().zip(g.entries()) {
            let v = want.numer().mod_floor(&Int::from(m));
            prop_assert_eq!(Int::from(*got), v);
        }
        prop_assert_eq!(r.det(), 1 % m);
    }
}

#[test]
fn sanov_lives_in_gamma_2() {
    let sanov = builtin_group("sanov").unwrap();
    for g in sanov.generators() {
        assert!(reduce_matrix(g, 2).unwrap().is_identity());
    }
    assert_eq!(sanov.generators()[0], qm(&[&[1, 2], &[0, 1]]));
}
