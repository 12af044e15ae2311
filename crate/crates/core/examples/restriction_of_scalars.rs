//! R_{K/Q} of G_m and SL_2, and a point pushed through the functor.

use arithgroup::algebraic_group::{builtin_presentation, restriction_of_scalars, ros_point, sl_group};
use arithgroup::exact::{rat, Matrix};
use arithgroup::number_field::FieldCatalog;

fn main() {
    let catalog = FieldCatalog::builtin();
    let k = catalog.get("qsqrt2").unwrap().build().unwrap();
    let gm = restriction_of_scalars(&builtin_presentation("gm").unwrap(), &k);
    println!("{} over {} variables:", gm.label(), gm.size() * gm.size());
    for e in gm.render_equations() {
        println!("  {e} = 0");
    }
    // 3 + 2 sqrt2 is a unit
    let u = Matrix::from_rows(vec![vec![rat(3, 1), rat(4, 1)], vec![rat(2, 1), rat(3, 1)]]);
    println!("(3 4; 2 3) in R(G_m): {}", gm.contains(&u));

    let qi = catalog.get("qi").unwrap().build().unwrap();
    let sl2 = restriction_of_scalars(&sl_group(2).unwrap(), &qi);
    println!("{}: {} equations in {} variables", sl2.label(), sl2.polys().len(), sl2.size() * sl2.size());
    let i = qi.alpha();
    let one = qi.one();
    let x = Matrix::from_rows(vec![vec![one.clone(), i.clone()], vec![qi.zero(), one]]);
    let image = ros_point(&qi, &x);
    for row in image.rows() {
        let r: Vec<String> = row.iter().map(ToString::to_string).collect();
        println!("  {}", r.join(" "));
    }
    println!("point lies on R(SL_2): {}", sl2.contains(&image));
}
