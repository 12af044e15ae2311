//! Tangent spaces at the identity of the catalog groups.

use arithgroup::algebraic_group::{builtin_presentation, is_solvable_lie, tangent_space_at_identity, BUILTIN_GROUPS};

fn main() {
    for name in BUILTIN_GROUPS {
        let g = builtin_presentation(name).unwrap();
        let l = tangent_space_at_identity(&g).unwrap();
        let s = is_solvable_lie(&l);
        println!(
            "{:<5} {:<6} dim {:>2}  jacobi {}  solvable {}  derived series {:?}",
            name,
            g.label(),
            l.dimension(),
            l.jacobi_holds(),
            s.solvable,
            s.series_dims
        );
    }
    let sl2 = tangent_space_at_identity(&builtin_presentation("sl2").unwrap()).unwrap();
    for (i, row) in sl2.structure_constants().iter().enumerate() {
        for (j, c) in row.iter().enumerate() {
            let c: Vec<String> = c.iter().map(ToString::to_string).collect();
            println!("[b{i}, b{j}] = ({})", c.join(", "));
        }
    }
}
