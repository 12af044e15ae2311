//! Square matrices over a runtime ring, plus rectangular elimination over
//! fields.

use serde::{Deserialize, Serialize};

use super::ring::{Field, Ring};
use super::ExactError;

/// An `n x n` matrix stored row-major. Values are immutable; every
/// operation returns a new matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Matrix<E> {
    n: usize,
    entries: Vec<E>,
}

impl<E: Clone + PartialEq> Matrix<E> {
    /// Builds a matrix from row-major entries. Panics unless the length is
    /// a perfect square `n*n` with `n >= 1`.
    pub fn from_vec(n: usize, entries: Vec<E>) -> Self {
        assert!(n >= 1 && entries.len() == n * n, "matrix must be square");
        Matrix { n, entries }
    }

    pub fn from_rows(rows: Vec<Vec<E>>) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        Matrix::from_vec(n, rows.into_iter().flatten().collect())
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &E {
        &self.entries[i * self.n + j]
    }

    pub fn entries(&self) -> &[E] {
        &self.entries
    }

    pub fn rows(&self) -> Vec<Vec<E>> {
        self.entries.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let n = self.n;
        Matrix::from_vec(
            n,
            (0..n * n).map(|k| self.get(k % n, k / n).clone()).collect(),
        )
    }

    /// Copy with one entry replaced.
    pub fn with_entry(&self, i: usize, j: usize, v: E) -> Self {
        let mut entries = self.entries.clone();
        entries[i * self.n + j] = v;
        Matrix { n: self.n, entries }
    }

    pub fn map<F, T: Clone>(&self, f: F) -> Matrix<T>
    where
        F: Fn(&E) -> T,
    {
        Matrix {
            n: self.n,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn try_map<F, T: Clone, Err>(&self, f: F) -> Result<Matrix<T>, Err>
    where
        F: Fn(&E) -> Result<T, Err>,
    {
        Ok(Matrix {
            n: self.n,
            entries: self.entries.iter().map(f).collect::<Result<_, _>>()?,
        })
    }

    pub fn identity<R: Ring<Elem = E>>(ring: &R, n: usize) -> Self {
        Matrix::from_vec(
            n,
            (0..n * n)
                .map(|k| if k / n == k % n { ring.one() } else { ring.zero() })
                .collect(),
        )
    }

    pub fn zero<R: Ring<Elem = E>>(ring: &R, n: usize) -> Self {
        Matrix::from_vec(n, vec![ring.zero(); n * n])
    }

    /// `I + E_ij`, an elementary transvection.
    pub fn elementary<R: Ring<Elem = E>>(ring: &R, n: usize, i: usize, j: usize) -> Self {
        let id = Matrix::identity(ring, n);
        let v = ring.add(id.get(i, j), &ring.one());
        id.with_entry(i, j, v)
    }

    pub fn diagonal<R: Ring<Elem = E>>(ring: &R, diag: &[E]) -> Self {
        let n = diag.len();
        (0..n).fold(Matrix::zero(ring, n), |m, i| m.with_entry(i, i, diag[i].clone()))
    }

    pub fn is_identity<R: Ring<Elem = E>>(&self, ring: &R) -> bool {
        *self == Matrix::identity(ring, self.n)
    }

    pub fn add<R: Ring<Elem = E>>(&self, other: &Self, ring: &R) -> Self {
        assert_eq!(self.n, other.n);
        Matrix {
            n: self.n,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| ring.add(a, b))
                .collect(),
        }
    }

    pub fn sub<R: Ring<Elem = E>>(&self, other: &Self, ring: &R) -> Self {
        assert_eq!(self.n, other.n);
        Matrix {
            n: self.n,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| ring.sub(a, b))
                .collect(),
        }
    }

    pub fn scale<R: Ring<Elem = E>>(&self, c: &E, ring: &R) -> Self {
        self.map(|a| ring.mul(a, c))
    }

    pub fn mul<R: Ring<Elem = E>>(&self, other: &Self, ring: &R) -> Self {
        assert_eq!(self.n, other.n, "matrix sizes differ");
        let n = self.n;
        let mut out = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = ring.zero();
                for k in 0..n {
                    acc = ring.add(&acc, &ring.mul(self.get(i, k), other.get(k, j)));
                }
                out.push(acc);
            }
        }
        Matrix { n, entries: out }
    }

    pub fn pow<R: Ring<Elem = E>>(&self, mut e: u64, ring: &R) -> Self {
        let mut base = self.clone();
        let mut acc = Matrix::identity(ring, self.n);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base, ring);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base, ring);
            }
        }
        acc
    }

    pub fn trace<R: Ring<Elem = E>>(&self, ring: &R) -> E {
        (0..self.n).fold(ring.zero(), |acc, i| ring.add(&acc, self.get(i, i)))
    }

    /// Coefficients `[1, c_1, ..., c_n]` of `det(xI - A)`, highest degree
    /// first, by the division-free Samuelson–Berkowitz recursion. Valid over
    /// any commutative ring.
    pub fn charpoly<R: Ring<Elem = E>>(&self, ring: &R) -> Vec<E> {
        let n = self.n;
        let mut p = vec![ring.one(), ring.neg(self.get(0, 0))];
        for r in 1..n {
            // Leading (r+1)x(r+1) block = [[A_r, c], [row, a]].
            let a = self.get(r, r);
            let col: Vec<E> = (0..r).map(|i| self.get(i, r).clone()).collect();
            let row: Vec<E> = (0..r).map(|j| self.get(r, j).clone()).collect();
            let mut t = vec![ring.one(), ring.neg(a)];
            let mut v = col;
            for _ in 0..r {
                let dot = row
                    .iter()
                    .zip(&v)
                    .fold(ring.zero(), |acc, (x, y)| ring.add(&acc, &ring.mul(x, y)));
                t.push(ring.neg(&dot));
                v = (0..r)
                    .map(|i| {
                        (0..r).fold(ring.zero(), |acc, k| {
                            ring.add(&acc, &ring.mul(self.get(i, k), &v[k]))
                        })
                    })
                    .collect();
            }
            // Multiply the (r+2)x(r+1) lower-triangular Toeplitz matrix by p.
            let next: Vec<E> = (0..r + 2)
                .map(|i| {
                    (0..=i.min(r)).fold(ring.zero(), |acc, j| {
                        ring.add(&acc, &ring.mul(&t[i - j], &p[j]))
                    })
                })
                .collect();
            p = next;
        }
        p
    }

    pub fn det<R: Ring<Elem = E>>(&self, ring: &R) -> E {
        let c = self.charpoly(ring);
        let last = c[self.n].clone();
        if self.n % 2 == 1 {
            ring.neg(&last)
        } else {
            last
        }
    }

    /// Inverse via Cayley–Hamilton; works over any commutative ring in
    /// which the determinant is a unit.
    pub fn inverse<R: Ring<Elem = E>>(&self, ring: &R) -> Result<Self, ExactError> {
        let n = self.n;
        let c = self.charpoly(ring);
        let cn_inv = ring
            .unit_inverse(&c[n])
            .ok_or(ExactError::NotInvertible)?;
        // A^{n-1} + c_1 A^{n-2} + ... + c_{n-1} I, by Horner.
        let id = Matrix::identity(ring, n);
        let mut acc = id.clone();
        for ci in c.iter().take(n).skip(1) {
            acc = acc.mul(self, ring).add(&id.scale(ci, ring), ring);
        }
        Ok(acc.scale(&ring.neg(&cn_inv), ring))
    }

    pub fn lie_bracket<R: Ring<Elem = E>>(&self, other: &Self, ring: &R) -> Self {
        self.mul(other, ring).sub(&other.mul(self, ring), ring)
    }
}

/// Reduced row echelon form of a rectangular matrix over a field.
/// Returns the nonzero rows and their pivot columns.
pub fn rref<R: Field>(ring: &R, rows: &[Vec<R::Elem>]) -> (Vec<Vec<R::Elem>>, Vec<usize>) {
    let mut m: Vec<Vec<R::Elem>> = rows.to_vec();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == m.len() {
            break;
        }
        let Some(pr) = (r..m.len()).find(|&i| !ring.is_zero(&m[i][c])) else {
            continue;
        };
        m.swap(r, pr);
        let inv = ring.inv(&m[r][c]);
        for x in m[r].iter_mut() {
            *x = ring.mul(x, &inv);
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || ring.is_zero(&row[c]) {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                *x = ring.sub(x, &ring.mul(&f, y));
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    (m, pivots)
}

pub fn rank<R: Field>(ring: &R, rows: &[Vec<R::Elem>]) -> usize {
    rref(ring, rows).1.len()
}

/// Basis of `{v : M v = 0}` for an `rows x ncols` matrix, one vector per
/// free column with a 1 in that column and 0 in the other free columns.
pub fn kernel<R: Field>(ring: &R, rows: &[Vec<R::Elem>], ncols: usize) -> Vec<Vec<R::Elem>> {
    let (red, pivots) = rref(ring, rows);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![ring.zero(); ncols];
            v[f] = ring.one();
            for (row, &pc) in red.iter().zip(&pivots) {
                v[pc] = ring.neg(&row[f]);
            }
            v
        })
        .collect()
}

/// Incrementally maintained row-reduced basis of a subspace, for span
/// computations that add one vector at a time.
#[derive(Clone, Debug)]
pub struct SpanBasis<R: Field> {
    ring: R,
    dim: usize,
    rows: Vec<Vec<R::Elem>>,
    pivots: Vec<usize>,
}

impl<R: Field> SpanBasis<R> {
    pub fn new(ring: R, dim: usize) -> Self {
        SpanBasis {
            ring,
            dim,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    /// Reduces `v` against the basis; the result is zero iff `v` lies in
    /// the span.
    pub fn reduce(&self, v: &[R::Elem]) -> Vec<R::Elem> {
        let mut v = v.to_vec();
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            if self.ring.is_zero(&v[pc]) {
                continue;
            }
            let f = v[pc].clone();
            for (x, y) in v.iter_mut().zip(row) {
                *x = self.ring.sub(x, &self.ring.mul(&f, y));
            }
        }
        v
    }

    pub fn contains(&self, v: &[R::Elem]) -> bool {
        self.reduce(v).iter().all(|x| self.ring.is_zero(x))
    }

    /// Adds `v`; returns true if the span grew.
    pub fn insert(&mut self, v: &[R::Elem]) -> bool {
        assert_eq!(v.len(), self.dim);
        let mut v = self.reduce(v);
        let Some(pc) = v.iter().position(|x| !self.ring.is_zero(x)) else {
            return false;
        };
        let inv = self.ring.inv(&v[pc]);
        for x in v.iter_mut() {
            *x = self.ring.mul(x, &inv);
        }
        for row in self.rows.iter_mut() {
            if self.ring.is_zero(&row[pc]) {
                continue;
            }
            let f = row[pc].clone();
            for (x, y) in row.iter_mut().zip(&v) {
                *x = self.ring.sub(x, &self.ring.mul(&f, y));
            }
        }
        self.rows.push(v);
        self.pivots.push(pc);
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{Integers, Rat, Rationals, Zmod};

    fn q(a: i64) -> Rat {
        Rat::from_integer(a.into())
    }

    #[test]
    fn det_identity() {
        assert_eq!(Matrix::identity(&Rationals, 3).det(&Rationals), q(1));
    }

    #[test]
    fn unipotent_inverse_over_z() {
        let a = Matrix::from_rows(vec![vec![1.into(), 1.into()], vec![0.into(), 1.into()]]);
        let inv = a.inverse(&Integers).unwrap();
        assert_eq!(
            inv,
            Matrix::from_rows(vec![vec![1.into(), (-1).into()], vec![0.into(), 1.into()]])
        );
    }

    #[test]
    fn inverse_mod_5() {
        let r = Zmod::new(5);
        let a = Matrix::from_rows(vec![vec![2u64, 0], vec![0, 1]]);
        assert_eq!(a.inverse(&r).unwrap(), Matrix::from_rows(vec![vec![3, 0], vec![0, 1]]));
    }

    #[test]
    fn not_invertible_over_z_mod_m() {
        let r = Zmod::new(6);
        let a = Matrix::from_rows(vec![vec![2u64, 0], vec![0, 1]]);
        assert_eq!(a.inverse(&r), Err(ExactError::NotInvertible));
        let b = Matrix::from_rows(vec![vec![2i64.into(), 0.into()], vec![0.into(), 1.into()]]);
        assert_eq!(b.inverse(&Integers), Err(ExactError::NotInvertible));
    }

    #[test]
    fn det_matches_cofactor_3x3() {
        let a = Matrix::from_rows(vec![
            vec![q(2), q(-1), q(3)],
            vec![q(0), q(4), q(5)],
            vec![q(1), q(7), q(-2)],
        ]);
        // 2(4*-2 - 5*7) + 1(0*-2 - 5*1) + 3(0*7 - 4*1)
        assert_eq!(a.det(&Rationals), q(2 * (-8 - 35) - 5 + 3 * (-4)));
    }

    #[test]
    fn kernel_of_trace_functional() {
        let rows = vec![vec![q(1), q(0), q(0), q(1)]];
        let k = kernel(&Rationals, &rows, 4);
        assert_eq!(k.len(), 3);
        for v in &k {
            assert_eq!(&v[0] + &v[3], q(0));
        }
    }

    #[test]
    fn span_basis_tracks_rank() {
        let mut s = SpanBasis::new(Rationals, 3);
        assert!(s.insert(&[q(1), q(2), q(3)]));
        assert!(!s.insert(&[q(2), q(4), q(6)]));
        assert!(s.insert(&[q(0), q(1), q(0)]));
        assert!(s.contains(&[q(1), q(0), q(3)]));
        assert!(!s.contains(&[q(0), q(0), q(1)]));
        assert_eq!(s.rank(), 2);
    }
}
