//! One-parameter subgroups g^t and the subgroup generated by unipotents.

use arithgroup::congruence::{bfs_closure, elementary_generators_sl, ModMatrix, DEFAULT_CAP};
use arithgroup::density::{gamma_plus, one_param_point, unipotent_closure_subgroup, OneParamSubgroup};

fn main() {
    let p = 7;
    let g = ModMatrix::from_i64s(3, p, &[1, 1, 0, 0, 1, 1, 0, 0, 1]);
    let x = OneParamSubgroup::new(g).unwrap();
    println!("nilpotency index {}", x.nilpotency_index());
    for t in [0, 1, 2, 6] {
        println!("g^{t} = {:?}", one_param_point(&x, t).entries());
    }
    for p in [5u64, 7, 11, 13] {
        let sl2 = bfs_closure(2, p, &elementary_generators_sl(2, p), DEFAULT_CAP).unwrap();
        let plus = gamma_plus(&sl2, DEFAULT_CAP).unwrap();
        let uni = unipotent_closure_subgroup(2, p, &elementary_generators_sl(2, p), 2, DEFAULT_CAP).unwrap();
        println!("p = {p:>2}: |SL_2| = {}  |Gamma+| = {}  |unipotent closure| = {}", sl2.order(), plus.order(), uni.order());
    }
}
