//! Density verdict combined with the mod-p scan: the Sanov group maps onto
//! PSL_2(p) for every odd p, the triangular group onto none.

use arithgroup::congruence::{builtin_group, DEFAULT_CAP};
use arithgroup::density::{lubotzky_scan, DEFAULT_MAX_WORD_LEN};

fn main() {
    for name in ["sanov", "triangular"] {
        let g = builtin_group(name).unwrap();
        let r = lubotzky_scan(&g, 31, DEFAULT_MAX_WORD_LEN, DEFAULT_CAP).unwrap();
        println!("{name}: {:?}", r.density.verdict);
        for p in &r.primes {
            println!(
                "  p = {:>2}  onto {:?}  |PSL_2| {:?}  quasisimple {:?}",
                p.p, p.surjective, p.psl2_order, p.quasisimple
            );
        }
        if let Some(w) = &r.soluble_witness {
            println!("  soluble witness: {w}");
        }
    }
}
