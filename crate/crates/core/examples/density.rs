//! Zariski-density evidence for a few subgroups of SL_2(Z).

use arithgroup::congruence::builtin_group;
use arithgroup::density::{density_verdict, DEFAULT_MAX_WORD_LEN};

fn main() {
    for name in ["sanov", "sl2z", "triangular", "borel", "minus_identity", "identity"] {
        let g = builtin_group(name).unwrap();
        let v = density_verdict(&g, DEFAULT_MAX_WORD_LEN).unwrap();
        println!("{name:<15} {:?}  ad span {}", v.verdict, v.ad_span_dim);
        if let Some(w) = &v.infinite_order_witness {
            println!("{:<15} witness {} ({})", "", w.word, w.reason);
        }
        if let Some(e) = &v.common_eigenvector {
            println!("{:<15} common eigenvector {e}", "");
        }
    }
}
