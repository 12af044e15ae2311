mod common;

use arithgroup::algebraic_group::{sl2_standard, LieAlgebraData};
use arithgroup::congruence::{bfs_closure, builtin_group, elementary_generators_sl, ModMatrix, DEFAULT_CAP};
use arithgroup::density::{
    ad_span, gamma_plus, lubotzky_scan, one_param_point, unipotent_closure_subgroup, OneParamSubgroup,
};
use arithgroup::exact::{Int, Matrix, Rat, Rationals};
use common::{q, qm, sl2z_word};
use num_traits::Zero;
use proptest::prelude::*;

/// `(g - I)^n = 0`, checked by direct multiplication.
fn naive_unipotent(g: &ModMatrix) -> bool {
    let (n, p) = (g.size(), g.modulus());
    let nil: Vec<u64> = (0..n * n)
        .map(|k| (g.entries()[k] + p - u64::from(k / n == k % n)) % p)
        .collect();
    let nil = ModMatrix::new(n, p, nil);
    let mut acc = nil.clone();
    for _ in 1..n {
        acc = acc.mul(&nil);
    }
    acc.entries().iter().all(|&e| e == 0)
}

#[test]
fn one_parameter_law_on_all_sl2_unipotents() {
    for p in [5u64, 7, 11] {
        let group = bfs_closure(2, p, &elementary_generators_sl(2, p), DEFAULT_CAP).unwrap();
        let unipotents: Vec<ModMatrix> = group.elements().unwrap().into_iter().filter(naive_unipotent).collect();
        assert_eq!(unipotents.len() as u64, p * p, "p={p}");
        for g in unipotents {
            let x = OneParamSubgroup::new(g.clone()).unwrap();
            for s in 0..p {
                let gs = one_param_point(&x, s);
                assert_eq!(gs, g.pow(s));
                for t in 0..p {
                    assert_eq!(gs.mul(&one_param_point(&x, t)), one_param_point(&x, (s + t) % p));
                }
            }
        }
    }
}

fn sl3_unipotent(p: u64, upper: [u64; 3], conj: &[(usize, usize, u64)]) -> ModMatrix {
    let u = ModMatrix::new(3, p, vec![1, upper[0], upper[1], 0, 1, upper[2], 0, 0, 1]);
    let mut c = ModMatrix::identity(3, p);
    for &(i, j, v) in conj {
        if i != j {
            let mut e = ModMatrix::identity(3, p).entries().to_vec();
            e[i * 3 + j] = v % p;
            c = c.mul(&ModMatrix::new(3, p, e));
        }
    }
    c.mul(&u).mul(&c.inverse().unwrap())
}

proptest! {
    #![proptest_config(common::config(50))]

    #[test]
    fn one_parameter_law_on_sl3(
        pi in 0usize..3,
        upper in prop::array::uniform3(0u64..11),
        conj in prop::collection::vec((0usize..3, 0usize..3, 0u64..11), 0..6),
    ) {
        let p = [5u64, 7, 11][pi];
        let g = sl3_unipotent(p, upper.map(|v| v % p), &conj);
        prop_assert!(naive_unipotent(&g));
        let x = OneParamSubgroup::new(g.clone()).unwrap();
        for s in 0..p {
            prop_assert_eq!(one_param_point(&x, s), g.pow(s));
            for t in 0..p {
                prop_assert_eq!(
                    one_param_point(&x, s).mul(&one_param_point(&x, t)),
                    one_param_point(&x, (s + t) % p)
                );
            }
        }
    }
}

#[test]
fn gamma_plus_of_sl2_is_everything() {
    for p in [5u64, 7, 11, 13] {
        let g = bfs_closure(2, p, &elementary_generators_sl(2, p), DEFAULT_CAP).unwrap();
        let plus = gamma_plus(&g, DEFAULT_CAP).unwrap();
        assert_eq!(plus.order(), p * (p * p - 1));
        assert_eq!(plus.codes(), g.codes());
    }
}

fn transvection(n: usize, p: u64, i: usize, j: usize, c: u64) -> ModMatrix {
    let mut e = ModMatrix::identity(n, p).entries().to_vec();
    e[i * n + j] = c % p;
    ModMatrix::new(n, p, e)
}

#[test]
fn nori_equality_for_transvection_groups() {
    let mut cases: Vec<(usize, u64, Vec<ModMatrix>)> = Vec::new();
    for p in [5u64, 7, 11] {
        cases.push((2, p, elementary_generators_sl(2, p)));
        cases.push((2, p, vec![transvection(2, p, 0, 1, 1)]));
        cases.push((2, p, vec![transvection(2, p, 0, 1, 2), transvection(2, p, 1, 0, 3)]));
        // unitriangular, and an SL_2 block, inside SL_3
        cases.push((3, p, vec![transvection(3, p, 0, 1, 1), transvection(3, p, 1, 2, 1)]));
        cases.push((3, p, vec![transvection(3, p, 0, 1, 1), transvection(3, p, 1, 0, 1)]));
        cases.push((3, p, vec![transvection(3, p, 0, 2, 1), transvection(3, p, 1, 2, 1)]));
    }
    // SL_2 block plus a root group, of order p^3 (p^2 - 1)
    cases.push((3, 5, vec![transvection(3, 5, 0, 1, 1), transvection(3, 5, 1, 0, 1), transvection(3, 5, 1, 2, 1)]));
    for (n, p, gens) in cases {
        let full = bfs_closure(n, p, &gens, DEFAULT_CAP).unwrap();
        let plus = gamma_plus(&full, DEFAULT_CAP).unwrap();
        let uni = unipotent_closure_subgroup(n, p, &gens, 2, DEFAULT_CAP).unwrap();
        assert_eq!(uni.codes(), plus.codes(), "n={n} p={p}");
        assert_eq!(plus.order(), full.order());
    }
}

/// Coordinates of a traceless 2x2 matrix in the basis of `sl2_standard`.
fn coords(l: &LieAlgebraData, x: &Matrix<Rat>) -> Vec<Rat> {
    l.coordinates(x).expect("traceless")
}

/// Rank over Q by plain fraction elimination.
fn naive_rank(mut rows: Vec<Vec<Rat>>) -> usize {
    let mut rank = 0;
    let cols = rows.first().map_or(0, Vec::len);
    for c in 0..cols {
        let Some(piv) = (rank..rows.len()).find(|&r| !rows[r][c].is_zero()) else {
            continue;
        };
        rows.swap(rank, piv);
        for r in 0..rows.len() {
            if r != rank && !rows[r][c].is_zero() {
                let f = &rows[r][c] / &rows[rank][c];
                let pivot_row = rows[rank].clone();
                for (x, y) in rows[r].iter_mut().zip(&pivot_row) {
                    *x -= &f * y;
                }
            }
        }
        rank += 1;
    }
    rank
}

#[test]
fn borel_pair_span_by_brute_force() {
    let l = sl2_standard();
    let a = qm(&[&[1, 1], &[0, 1]]);
    let d = Matrix::from_rows(vec![vec![q(2), q(0)], vec![q(0), Rat::new(Int::from(1), Int::from(2))]]);
    let sym = [a.clone(), a.inverse(&Rationals).unwrap(), d.clone(), d.inverse(&Rationals).unwrap()];
    // every word of length <= 4, Ad(w) written out by conjugating the basis
    let mut words = vec![Matrix::identity(&Rationals, 2)];
    let mut frontier = words.clone();
    for _ in 0..4 {
        let next: Vec<Matrix<Rat>> = frontier
            .iter()
            .flat_map(|w| sym.iter().map(move |s| w.mul(s, &Rationals)))
            .collect();
        words.extend(next.iter().cloned());
        frontier = next;
    }
    let rows: Vec<Vec<Rat>> = words
        .iter()
        .map(|w| {
            let wi = w.inverse(&Rationals).unwrap();
            l.basis()
                .iter()
                .flat_map(|b| coords(&l, &w.mul(b, &Rationals).mul(&wi, &Rationals)))
                .collect()
        })
        .collect();
    let brute = naive_rank(rows);
    assert_eq!(brute, 6);
    assert_eq!(ad_span(&l, &[a, d]).unwrap().span_dim, brute);
}

#[test]
fn span_dimensions_of_reference_sets() {
    let l = sl2_standard();
    let sanov = builtin_group("sanov").unwrap();
    assert_eq!(ad_span(&l, sanov.generators()).unwrap().span_dim, 9);
    assert_eq!(ad_span(&l, &[qm(&[&[1, 0], &[0, 1]])]).unwrap().span_dim, 1);
}

proptest! {
    #![proptest_config(common::config(40))]

    #[test]
    fn ad_span_is_monotone_and_conjugation_invariant(
        w1 in prop::collection::vec(0u8..4, 1..5),
        w2 in prop::collection::vec(0u8..4, 0..5),
        c in prop::array::uniform4((-5i64..6, 1i64..4)),
    ) {
        let l = sl2_standard();
        let gens = vec![sl2z_word(&w1), sl2z_word(&w2)];
        let s = ad_span(&l, &gens).unwrap();
        prop_assert!(s.dims_by_length.windows(2).all(|w| w[0] <= w[1]));
        prop_assert_eq!(*s.dims_by_length.last().unwrap(), s.span_dim);
        let cm = Matrix::from_vec(2, c.iter().map(|&(a, b)| Rat::new(Int::from(a), Int::from(b))).collect());
        prop_assume!(!cm.det(&Rationals).is_zero());
        let ci = cm.inverse(&Rationals).unwrap();
        let conj: Vec<Matrix<Rat>> = gens.iter().map(|g| cm.mul(g, &Rationals).mul(&ci, &Rationals)).collect();
        prop_assert_eq!(ad_span(&l, &conj).unwrap().span_dim, s.span_dim);
    }
}

#[test]
fn surjective_primes_have_order_divisible_by_p() {
    for name in ["sanov", "sl2z", "triangular", "borel"] {
        let g = builtin_group(name).unwrap();
        let r = lubotzky_scan(&g, 31, 6, DEFAULT_CAP).unwrap();
        for rec in &r.primes {
            if rec.surjective == Some(true) {
                let order = rec.image_order.unwrap();
                assert_eq!(order % rec.p, 0, "{name} p={}", rec.p);
                assert_eq!(rec.order_divisible_by_p, Some(true));
            }
        }
    }
}
