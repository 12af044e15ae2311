//! How rational primes factor in the catalog fields.

use arithgroup::number_field::FieldCatalog;

fn main() {
    let catalog = FieldCatalog::builtin();
    for spec in &catalog.fields {
        let k = spec.build().expect("catalog field");
        let (r1, r2) = k.signature();
        println!(
            "{}: {}  degree {}  signature ({r1}, {r2})  disc {}",
            k.name(),
            k.min_poly().render_var("x"),
            k.degree(),
            k.discriminant()
        );
        for p in [2u64, 3, 5, 7, 11, 13, 31] {
            let fac = k.factor_prime(p).expect("prime");
            let parts: Vec<String> = fac
                .factors
                .iter()
                .map(|f| format!("(e={}, f={}, {})", f.e, f.f, f.factor_poly.render_var("x")))
                .collect();
            println!("  p = {p:>2}: {}", parts.join(" "));
        }
    }
}
