//! Factoring over F_p and counting real roots with Sturm sequences.

use arithgroup::exact::{factor_poly_mod_p, sturm_real_root_count, PolyRing, PrimeField, Rationals};

fn main() {
    let x4_plus_1 = [1i64, 0, 0, 0, 1];
    for p in [2u64, 3, 5, 13, 17] {
        let field = PrimeField::new(p).unwrap();
        let f = PolyRing::new(field).from_i64s(&x4_plus_1);
        let parts: Vec<String> = factor_poly_mod_p(&field, &f)
            .iter()
            .map(|(g, e)| if *e == 1 { format!("({})", g.render_var("x")) } else { format!("({})^{e}", g.render_var("x")) })
            .collect();
        println!("x^4 + 1 mod {p:>2} = {}", parts.join(" "));
    }
    for coeffs in [[-2i64, 0, 0, 1], [1, -3, 0, 1], [-1, 0, 0, 1]] {
        let f = PolyRing::new(Rationals).from_i64s(&coeffs);
        println!("{:?}: {} real roots", coeffs, sturm_real_root_count(&f).unwrap());
    }
}
