//! Tangent spaces at the identity and their Lie algebra structure.

use num_traits::{One, Zero};

use super::{identity_point, GroupError, GroupPresentation};
use crate::exact::{kernel, rref, Matrix, Rat, Rationals, SpanBasis};

/// `AB - BA`.
pub fn lie_bracket(a: &Matrix<Rat>, b: &Matrix<Rat>) -> Matrix<Rat> {
    a.lie_bracket(b, &Rationals)
}

/// A Lie subalgebra of `gl_n(Q)` with a fixed basis.
#[derive(Clone, Debug, PartialEq)]
pub struct LieAlgebraData {
    n: usize,
    basis: Vec<Matrix<Rat>>,
    /// `constants[i][j][k]`: coefficient of basis `k` in `[b_i, b_j]`.
    constants: Vec<Vec<Vec<Rat>>>,
    // rref of the rows [vec(b_i) | e_i], used to read off coordinates
    reduced: Vec<Vec<Rat>>,
    pivots: Vec<usize>,
}

impl LieAlgebraData {
    /// Checks independence and bracket closure, then tabulates structure
    /// constants.
    pub fn from_basis(n: usize, basis: Vec<Matrix<Rat>>) -> Result<Self, GroupError> {
        if let Some(b) = basis.iter().find(|b| b.size() != n) {
            return Err(GroupError::SizeMismatch {
                expected: n,
                got: b.size(),
            });
        }
        let dim = basis.len();
        let nn = n * n;
        let rows: Vec<Vec<Rat>> = basis
            .iter()
            .enumerate()
            .map(|(i, b)| {
                let mut row = b.entries().to_vec();
                row.extend((0..dim).map(|k| if k == i { Rat::one() } else { Rat::zero() }));
                row
            })
            .collect();
        let (reduced, pivots) = rref(&Rationals, &rows);
        if pivots.iter().filter(|&&c| c < nn).count() != dim {
            return Err(GroupError::DependentBasis);
        }
        let mut out = LieAlgebraData {
            n,
            basis,
            constants: Vec::new(),
            reduced,
            pivots,
        };
        let mut constants = vec![vec![Vec::new(); dim]; dim];
        for i in 0..dim {
            for j in 0..dim {
                let br = lie_bracket(&out.basis[i], &out.basis[j]);
                constants[i][j] = out.coordinates(&br).ok_or(GroupError::BracketNotClosed)?;
            }
        }
        out.constants = constants;
        Ok(out)
    }

    pub fn matrix_size(&self) -> usize {
        self.n
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Matrix<Rat>] {
        &self.basis
    }

    pub fn structure_constants(&self) -> &[Vec<Vec<Rat>>] {
        &self.constants
    }

    /// Coordinates of `x` in the basis, or `None` outside the span.
    pub fn coordinates(&self, x: &Matrix<Rat>) -> Option<Vec<Rat>> {
        let nn = self.n * self.n;
        if x.size() != self.n {
            return None;
        }
        let mut residual = x.entries().to_vec();
        let mut coords = vec![Rat::zero(); self.dimension()];
        for (row, &pc) in self.reduced.iter().zip(&self.pivots) {
            if pc >= nn {
                break;
            }
            let f = residual[pc].clone();
            if f.is_zero() {
                continue;
            }
            for (r, v) in residual.iter_mut().zip(&row[..nn]) {
                *r -= &f * v;
            }
            for (c, v) in coords.iter_mut().zip(&row[nn..]) {
                *c += &f * v;
            }
        }
        residual.iter().all(Zero::is_zero).then_some(coords)
    }

    /// Matrix with the given coordinates.
    pub fn combination(&self, coords: &[Rat]) -> Matrix<Rat> {
        coords
            .iter()
            .zip(&self.basis)
            .fold(Matrix::zero(&Rationals, self.n), |acc, (c, b)| {
                acc.add(&b.scale(c, &Rationals), &Rationals)
            })
    }

    /// Jacobi identity on every basis triple, evaluated from the structure
    /// constants.
    pub fn jacobi_holds(&self) -> bool {
        let d = self.dimension();
        let c = &self.constants;
        // [[x,y],z] in coordinates; structure constants are mostly zero
        let br = |u: &[Rat], z: usize| -> Vec<Rat> {
            let mut out = vec![Rat::zero(); d];
            for (m, um) in u.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                for (o, cm) in out.iter_mut().zip(&c[m][z]) {
                    if !cm.is_zero() {
                        *o += um * cm;
                    }
                }
            }
            out
        };
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    let a = br(&c[i][j], k);
                    let b = br(&c[j][k], i);
                    let e = br(&c[k][i], j);
                    if (0..d).any(|m| !(&a[m] + &b[m] + &e[m]).is_zero()) {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// `sl_2` in the basis `e = (0 1; 0 0)`, `f = (0 0; 1 0)`, `h = (1 0; 0 -1)`.
pub fn sl2_standard() -> LieAlgebraData {
    let m = |a: [i64; 4]| Matrix::from_vec(2, a.iter().map(|&c| Rat::from_integer(c.into())).collect());
    LieAlgebraData::from_basis(2, vec![m([0, 1, 0, 0]), m([0, 0, 1, 0]), m([1, 0, 0, -1])])
        .expect("sl_2 is a Lie algebra")
}

/// Kernel of the Jacobian of the defining equations at the identity.
pub fn tangent_space_at_identity(g: &GroupPresentation) -> Result<LieAlgebraData, GroupError> {
    let n = g.size();
    let id = identity_point(n);
    let jac: Vec<Vec<Rat>> = g.polys().iter().map(|p| p.gradient_at(&id)).collect();
    let basis: Vec<Matrix<Rat>> = if jac.is_empty() {
        (0..n * n)
            .map(|v| {
                Matrix::from_vec(
                    n,
                    (0..n * n).map(|k| if k == v { Rat::one() } else { Rat::zero() }).collect(),
                )
            })
            .collect()
    } else {
        kernel(&Rationals, &jac, n * n)
            .into_iter()
            .map(|v| Matrix::from_vec(n, v))
            .collect()
    };
    LieAlgebraData::from_basis(n, basis)
}

/// Outcome of the derived-series computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solvability {
    pub solvable: bool,
    /// Number of bracket steps until the series reaches 0 (solvable case)
    /// or stabilizes (otherwise).
    pub derived_length: usize,
    /// Dimensions `dim L, dim [L,L], ...`.
    pub series_dims: Vec<usize>,
}

/// Derived series `L, [L,L], ...` computed by spans of brackets.
pub fn is_solvable_lie(l: &LieAlgebraData) -> Solvability {
    let mut current: Vec<Matrix<Rat>> = l.basis().to_vec();
    let mut dims = vec![current.len()];
    loop {
        if current.is_empty() {
            return Solvability {
                solvable: true,
                derived_length: dims.len() - 1,
                series_dims: dims,
            };
        }
        let mut span = SpanBasis::new(Rationals, l.n * l.n);
        let mut next = Vec::new();
        for (i, a) in current.iter().enumerate() {
            for b in &current[i + 1..] {
                let c = lie_bracket(a, b);
                if span.insert(c.entries()) {
                    next.push(c);
                }
            }
        }
        if next.len() == current.len() {
            return Solvability {
                solvable: false,
                derived_length: dims.len() - 1,
                series_dims: dims,
            };
        }
        dims.push(next.len());
        current = next;
    }
}

/// Matrix of `X -> g X g^-1` on `L` in its basis (column `j` holds the
/// image of basis element `j`), so that `Ad(gh) = Ad(g) Ad(h)`.
pub fn adjoint_matrix(g: &Matrix<Rat>, l: &LieAlgebraData) -> Result<Matrix<Rat>, GroupError> {
    if g.size() != l.n {
        return Err(GroupError::SizeMismatch {
            expected: l.n,
            got: g.size(),
        });
    }
    let ginv = g.inverse(&Rationals).map_err(|_| GroupError::NotInvertible)?;
    let d = l.dimension();
    let mut cols = Vec::with_capacity(d);
    for b in l.basis() {
        let y = g.mul(b, &Rationals).mul(&ginv, &Rationals);
        cols.push(l.coordinates(&y).ok_or(GroupError::NotStabilizing)?);
    }
    Ok(Matrix::from_vec(
        d,
        (0..d * d).map(|k| cols[k % d][k / d].clone()).collect(),
    ))
}
