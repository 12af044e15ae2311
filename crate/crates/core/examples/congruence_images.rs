//! Images of a few groups modulo small m, and principal congruence indices.

use arithgroup::congruence::{builtin_group, image_at_modulus, principal_congruence_index, DEFAULT_CAP};

fn main() {
    for name in ["sanov", "sl2z", "triangular"] {
        let g = builtin_group(name).unwrap();
        for m in [3u64, 4, 6, 8, 9, 10, 12] {
            let r = image_at_modulus(&g, m, DEFAULT_CAP).unwrap();
            println!(
                "{name:<10} m = {m:>2}: |image| = {:>6}  |SL_2(Z/m)| = {:>6}  onto: {:?}",
                r.image_order.unwrap_or(0),
                r.target_order,
                r.surjective
            );
        }
    }
    for m in [2u64, 4, 12, 30] {
        println!("[SL_2(Z) : Gamma({m})] = {}", principal_congruence_index(2, m));
    }
}
