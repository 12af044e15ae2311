#![allow(dead_code)]

use arithgroup::exact::{Int, Matrix, Rat, Rationals};
use proptest::test_runner::{Config, RngSeed};

/// Fixed seed so every run checks the same cases.
pub fn config(cases: u32) -> Config {
    Config {
        cases,
        rng_seed: RngSeed::Fixed(0x5eed_2024),
        failure_persistence: None,
        ..Config::default()
    }
}

pub fn q(n: i64) -> Rat {
    Rat::from_integer(Int::from(n))
}

pub fn qm(rows: &[&[i64]]) -> Matrix<Rat> {
    Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&c| q(c)).collect()).collect())
}

/// Product of `(1 1;0 1)^{±1}` and `(1 0;1 1)^{±1}` along `word`
/// (letters 0..4).
pub fn sl2z_word(word: &[u8]) -> Matrix<Rat> {
    let gens = [
        qm(&[&[1, 1], &[0, 1]]),
        qm(&[&[1, -1], &[0, 1]]),
        qm(&[&[1, 0], &[1, 1]]),
        qm(&[&[1, 0], &[-1, 1]]),
    ];
    let mut acc = Matrix::identity(&Rationals, 2);
    for &w in word {
        acc = acc.mul(&gens[(w % 4) as usize], &Rationals);
    }
    acc
}
