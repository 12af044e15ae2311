mod common;

use arithgroup::algebraic_group::{
    adjoint_matrix, builtin_presentation, reduce_mod_p, restriction_of_scalars, ros_point, sl_group,
    tangent_space_at_identity, GroupPresentation, BUILTIN_GROUPS,
};
use std::sync::OnceLock;

use arithgroup::exact::{Int, Matrix, Rat, Rationals};
use arithgroup::number_field::{FieldCatalog, NumberField};
use common::{q, qm, sl2z_word};
use num_traits::{One, Zero};
use proptest::prelude::*;

fn field(name: &str) -> NumberField {
    FieldCatalog::builtin().get(name).unwrap().build().unwrap()
}

fn r(a: i64, b: i64) -> Rat {
    Rat::new(Int::from(a), Int::from(b))
}

#[test]
fn sl_tangent_spaces() {
    for n in 2..=5 {
        let l = tangent_space_at_identity(&sl_group(n).unwrap()).unwrap();
        assert_eq!(l.dimension(), n * n - 1);
        for b in l.basis() {
            assert!(b.trace(&Rationals).is_zero());
        }
        assert!(l.jacobi_holds());
    }
}

#[test]
fn catalog_lie_algebras_satisfy_jacobi() {
    for name in BUILTIN_GROUPS {
        let g = builtin_presentation(name).unwrap();
        let l = tangent_space_at_identity(&g).unwrap();
        assert!(l.jacobi_holds(), "{name}");
    }
}

/// A member of the named catalog group built from `seed`.
fn member(name: &str, seed: &[(i64, i64)]) -> Matrix<Rat> {
    let s = |i: usize| r(seed[i % seed.len()].0, seed[i % seed.len()].1);
    let elementary_word = |n: usize| {
        let mut acc = Matrix::identity(&Rationals, n);
        for (step, _) in seed.iter().enumerate() {
            let (i, j) = (step % n, (step / n + 1 + step) % n);
            if i == j {
                continue;
            }
            acc = acc.mul(&Matrix::identity(&Rationals, n).with_entry(i, j, s(step)), &Rationals);
        }
        acc
    };
    match name {
        "sl2" | "sp2" => elementary_word(2),
        "sl3" => elementary_word(3),
        "sl4" => elementary_word(4),
        "sl5" => elementary_word(5),
        "o2" => {
            // rational point on the circle, possibly times a reflection
            let t = s(0);
            let den = Rat::one() + &t * &t;
            let (c, sn) = ((Rat::one() - &t * &t) / &den, (q(2) * &t) / &den);
            let rot = Matrix::from_rows(vec![vec![c.clone(), -sn.clone()], vec![sn, c]]);
            if seed[0].0 % 2 == 0 {
                rot
            } else {
                rot.mul(&qm(&[&[1, 0], &[0, -1]]), &Rationals)
            }
        }
        "u2" => Matrix::from_rows(vec![vec![q(1), s(0)], vec![q(0), q(1)]]),
        "u3" => Matrix::from_rows(vec![
            vec![q(1), s(0), s(1)],
            vec![q(0), q(1), s(2)],
            vec![q(0), q(0), q(1)],
        ]),
        "gm" => {
            let a = s(0);
            Matrix::from_rows(vec![vec![if a.is_zero() { q(3) } else { a }]])
        }
        "gl2" => {
            let m = Matrix::from_rows(vec![vec![s(0), s(1)], vec![s(2), s(3)]]);
            if m.det(&Rationals).is_zero() {
                qm(&[&[2, 1], &[1, 1]])
            } else {
                m
            }
        }
        _ => unreachable!(),
    }
}

fn arb_seed() -> impl Strategy<Value = Vec<(i64, i64)>> {
    prop::collection::vec((-7i64..8, 1i64..5), 4..10)
}

fn ros_sl2_qi() -> &'static GroupPresentation {
    static ROS: OnceLock<GroupPresentation> = OnceLock::new();
    ROS.get_or_init(|| restriction_of_scalars(&sl_group(2).unwrap(), &field("qi")))
}

/// Random `SL_2(Z[i])` element as a word in elementary matrices.
fn gaussian_sl2(k: &NumberField, word: &[(bool, i64, i64)]) -> Matrix<arithgroup::number_field::NFElement> {
    let one = k.one();
    let zero = k.zero();
    let mut acc = Matrix::identity(k, 2);
    for &(upper, a, b) in word {
        let c = k.element(vec![q(a), q(b)]).unwrap();
        let e = if upper {
            Matrix::from_rows(vec![vec![one.clone(), c], vec![zero.clone(), one.clone()]])
        } else {
            Matrix::from_rows(vec![vec![one.clone(), zero.clone()], vec![c, one.clone()]])
        };
        acc = acc.mul(&e, k);
    }
    acc
}

proptest! {
    #![proptest_config(common::config(100))]

    #[test]
    fn adjoint_is_multiplicative(
        w1 in prop::collection::vec(0u8..4, 0..7),
        w2 in prop::collection::vec(0u8..4, 0..7),
    ) {
        let l = tangent_space_at_identity(&sl_group(2).unwrap()).unwrap();
        let (g, h) = (sl2z_word(&w1), sl2z_word(&w2));
        let ad = |x: &Matrix<Rat>| adjoint_matrix(x, &l).unwrap();
        prop_assert_eq!(ad(&g.mul(&h, &Rationals)), ad(&g).mul(&ad(&h), &Rationals));
        prop_assert_eq!(ad(&g.inverse(&Rationals).unwrap()), ad(&g).inverse(&Rationals).unwrap());
    }

    #[test]
    fn ros_point_is_a_functor(
        w1 in prop::collection::vec((prop::bool::ANY, -3i64..4, -3i64..4), 1..5),
        w2 in prop::collection::vec((prop::bool::ANY, -3i64..4, -3i64..4), 1..5),
    ) {
        let k = field("qi");
        let (x, y) = (gaussian_sl2(&k, &w1), gaussian_sl2(&k, &w2));
        let xy = x.mul(&y, &k);
        prop_assert_eq!(ros_point(&k, &xy), ros_point(&k, &x).mul(&ros_point(&k, &y), &Rationals));
        let x_inv = x.inverse(&k).unwrap();
        prop_assert_eq!(ros_point(&k, &x_inv), ros_point(&k, &x).inverse(&Rationals).unwrap());
        let ros = ros_sl2_qi();
        prop_assert!(ros.contains(&ros_point(&k, &x)));
        prop_assert!(ros.contains(&ros_point(&k, &xy)));
    }

    #[test]
    fn ros_gm_over_qsqrt2(a in (-30i64..30, 1i64..7), b in (-30i64..30, 1i64..7), noise in (1i64..9, 1i64..5)) {
        let k = field("qsqrt2");
        let ros = restriction_of_scalars(&builtin_presentation("gm").unwrap(), &k);
        let (a, b) = (r(a.0, a.1), r(b.0, b.1));
        prop_assume!(&a * &a != q(2) * &b * &b);
        let on = Matrix::from_rows(vec![vec![a.clone(), q(2) * &b], vec![b.clone(), a.clone()]]);
        prop_assert!(ros.contains(&on));
        // move the lower-left entry off the locus
        let off = on.with_entry(1, 0, &b + r(noise.0, noise.1));
        prop_assume!(!off.det(&Rationals).is_zero());
        prop_assert!(!ros.contains(&off));
    }
}

proptest! {
    #![proptest_config(common::config(50))]

    #[test]
    fn catalog_membership_is_closed(which in 0usize..BUILTIN_GROUPS.len(), s1 in arb_seed(), s2 in arb_seed()) {
        let name = BUILTIN_GROUPS[which];
        let g = builtin_presentation(name).unwrap();
        let (x, y) = (member(name, &s1), member(name, &s2));
        prop_assert!(g.contains(&x), "{} {:?}", name, x);
        prop_assert!(g.contains(&x.mul(&y, &Rationals)));
        prop_assert!(g.contains(&x.inverse(&Rationals).unwrap()));
    }

    #[test]
    fn reduction_keeps_integral_members(which in 0usize..BUILTIN_GROUPS.len(), s in arb_seed(), pi in 0usize..4) {
        let p = [5u64, 7, 11, 13][pi];
        let name = BUILTIN_GROUPS[which];
        let g = builtin_presentation(name).unwrap();
        let red = reduce_mod_p(&g, p).unwrap();
        let x = member(name, &s);
        let field = arithgroup::exact::PrimeField::new(p).unwrap();
        let entries: Option<Vec<u64>> = x.entries().iter().map(|c| field.reduce_rat(c)).collect();
        if let Some(e) = entries {
            prop_assert!(red.satisfied_by(&e));
        }
    }
}

#[test]
fn adjoint_of_diagonal_by_hand() {
    // g = diag(4, 1/4): Ad scales e by 16, f by 1/16, fixes h
    let l = tangent_space_at_identity(&sl_group(2).unwrap()).unwrap();
    let g = Matrix::from_rows(vec![vec![q(4), q(0)], vec![q(0), r(1, 4)]]);
    let ad = adjoint_matrix(&g, &l).unwrap();
    for (i, b) in l.basis().iter().enumerate() {
        let expected = if !b.get(0, 1).is_zero() {
            q(16)
        } else if !b.get(1, 0).is_zero() {
            r(1, 16)
        } else {
            q(1)
        };
        assert_eq!(ad.get(i, i), &expected);
    }
}
