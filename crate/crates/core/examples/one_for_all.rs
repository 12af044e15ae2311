//! Primes at which each sample set generates SL_2(F_p).

use arithgroup::congruence::{builtin_group, one_for_all_scan, DEFAULT_CAP};

fn main() {
    let sets: Vec<_> = ["sanov", "sl2z", "elementary2", "triangular"]
        .iter()
        .map(|n| builtin_group(n).unwrap())
        .collect();
    let r = one_for_all_scan(&sets, 31, &[2], DEFAULT_CAP).unwrap();
    for s in &r.sets {
        println!("{:<12} witness {:<5} generating at {:?}", s.label, s.witness, s.generating_primes);
    }
}
