//! Images of SL_2(Z) in SL_2(Z/p^2) for every prime p <= 31.

use arithgroup::congruence::{builtin_group, strong_approx_scan, DEFAULT_CAP};

fn main() {
    let g = builtin_group("sl2z").expect("built-in group");
    let report = strong_approx_scan(&g, 31, 2, DEFAULT_CAP).expect("scan");
    println!("{:>6} {:>14} {:>14} surjective", "m", "image", "target");
    for r in &report.records {
        let image = r.image_order.map_or("-".to_string(), |o| o.to_string());
        println!("{:>6} {:>14} {:>14} {:?}", r.m, image, r.target_order, r.surjective);
    }
    println!("exceptional primes: {:?}", report.exceptional_primes);
}
