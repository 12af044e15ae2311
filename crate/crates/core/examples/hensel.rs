//! A square root of -1 in Z_5, and a few rational expansions.

use arithgroup::exact::{rat, Int, Integers, PolyRing};
use arithgroup::padic::{hensel_lift, vp, PadicInt, PadicNumber};

fn main() {
    let f = PolyRing::new(Integers).from_i64s(&[1, 0, 1]);
    for r0 in [2, 3] {
        let r = hensel_lift(&f, &Int::from(r0), 5, 20).expect("simple root");
        let digits = PadicInt::from_int(&r, 5, 20).unwrap();
        println!("root near {r0}: {digits}");
        let check = (&r * &r + 1u32) % Int::from(5u32).pow(20);
        println!("  r^2 + 1 mod 5^20 = {check}");
    }
    for x in [rat(-1, 1), rat(1, 3), rat(50, 7), rat(2, 25)] {
        println!("{x} = {}   (v_5 = {:?})", PadicNumber::from_rat(&x, 5, 8).unwrap(), vp(&x, 5));
    }
}
