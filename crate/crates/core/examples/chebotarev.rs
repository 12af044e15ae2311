//! Proportion of totally split primes against 1/[K:Q].

use arithgroup::number_field::FieldCatalog;

fn main() {
    let catalog = FieldCatalog::builtin();
    println!("{:>8} {:>8} {:>8} {:>8} {:>8}", "field", "X", "split", "ratio", "expect");
    for name in ["qi", "qsqrt2", "qcbrt2", "qzeta5"] {
        let k = catalog.get(name).unwrap().build().unwrap();
        for bound in [1_000u64, 10_000, 100_000] {
            let r = k.chebotarev_scan(bound);
            println!(
                "{:>8} {:>8} {:>8} {:>8.4} {:>8.4} {}",
                name, bound, r.split, r.ratio, r.expected, r.label
            );
        }
    }
}
