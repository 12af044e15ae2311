//! Restriction of scalars from a number field `K` of degree `d` down to Q.

use num_traits::Zero;

use super::{var_index, GroupPresentation, MPoly, MPolyRing};
use crate::exact::{kernel, Matrix, Rat, Rationals};
use crate::number_field::{NFElement, NumberField};

/// Presentation of `R_{K/Q}(G)` in the `(nd)^2` entries `z_ab` of an
/// `nd x nd` rational matrix (row-major). Each variable `x_ij` of `G`
/// becomes the `d x d` block in block position `(i, j)`.
///
/// Two families of equations:
/// 1. every `P_j` with blocks substituted for its variables and `c * I_d`
///    for each coefficient `c`, giving `d^2` scalar equations;
/// 2. linear functionals vanishing on the image of `K` in `M_d(Q)`,
///    imposed on every block.
pub fn restriction_of_scalars(g: &GroupPresentation, k: &NumberField) -> GroupPresentation {
    let n = g.size();
    let d = k.degree();
    let big = n * d;
    let nv = big * big;
    let ring = MPolyRing { nvars: nv };
    let block = |i: usize, j: usize| -> Matrix<MPoly> {
        Matrix::from_vec(
            d,
            (0..d * d)
                .map(|st| MPoly::var(nv, var_index(big, i * d + st / d, j * d + st % d)))
                .collect(),
        )
    };
    let blocks: Vec<Matrix<MPoly>> = (0..n * n).map(|v| block(v / n, v % n)).collect();

    let mut polys = Vec::new();
    for p in g.polys() {
        let mut acc = Matrix::zero(&ring, d);
        for (e, c) in p.terms() {
            let mut term = Matrix::identity(&ring, d).scale(&MPoly::constant(nv, c.clone()), &ring);
            for (v, &k) in e.iter().enumerate() {
                for _ in 0..k {
                    term = term.mul(&blocks[v], &ring);
                }
            }
            acc = acc.add(&term, &ring);
        }
        polys.extend(acc.entries().iter().cloned());
    }

    // functionals on M_d(Q) killing rho(alpha^i) for i < d
    let image: Vec<Vec<Rat>> = (0..d)
        .map(|i| {
            k.regular_representation(&k.pow(&k.alpha(), i as u32))
                .entries()
                .to_vec()
        })
        .collect();
    let functionals = kernel(&Rationals, &image, d * d);
    for b in &blocks {
        for f in &functionals {
            let lin = f
                .iter()
                .zip(b.entries())
                .filter(|(c, _)| !c.is_zero())
                .fold(MPoly::zero(nv), |acc, (c, z)| acc.add(&z.scale(c)));
            polys.push(lin);
        }
    }
    GroupPresentation::new(big, polys, format!("R_{}({})", k.name(), g.label()))
        .expect("restriction of scalars keeps the identity")
}

/// Blockwise regular representation `M_n(K) -> M_{nd}(Q)`.
pub fn ros_point(k: &NumberField, x: &Matrix<NFElement>) -> Matrix<Rat> {
    let n = x.size();
    let d = k.degree();
    let blocks: Vec<Matrix<Rat>> = x.entries().iter().map(|h| k.regular_representation(h)).collect();
    let big = n * d;
    Matrix::from_vec(
        big,
        (0..big * big)
            .map(|idx| {
                let (a, b) = (idx / big, idx % big);
                blocks[(a / d) * n + b / d].get(a % d, b % d).clone()
            })
            .collect(),
    )
}
