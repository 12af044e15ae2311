//! SL_2(F_p) is quasisimple for p >= 5, not for p = 2, 3.

use arithgroup::congruence::{bfs_closure, elementary_generators_sl, quasisimple_check, DEFAULT_CAP};

fn main() {
    for p in [2u64, 3, 5, 7, 11, 13] {
        let g = bfs_closure(2, p, &elementary_generators_sl(2, p), DEFAULT_CAP).unwrap();
        let r = quasisimple_check(&g, DEFAULT_CAP).unwrap();
        println!(
            "p = {p:>2}: |G| = {:>5}  |Z| = {}  |G/Z| = {:>5}  perfect {:<5}  G/Z simple {:<5}  classes {}",
            r.order, r.center_order, r.quotient_order, r.perfect, r.quotient_simple, r.conjugacy_classes
        );
    }
}
