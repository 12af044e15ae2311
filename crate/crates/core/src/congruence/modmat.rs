//! Small square matrices over `Z/m`, packed into a `u128` for hashing.

use std::fmt;

use serde::{Serialize, Serializer};

use super::CongError;
use crate::exact::{inverse_mod, Matrix, Zmod};

pub const MAX_N: usize = 4;

/// Row-major matrix over `Z/m` with entries in `[0, m)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ModMatrix {
    n: usize,
    m: u64,
    entries: Vec<u64>,
}

impl ModMatrix {
    pub fn new(n: usize, m: u64, entries: Vec<u64>) -> Self {
        assert_eq!(entries.len(), n * n);
        assert!(m >= 1);
        let entries = entries.into_iter().map(|e| e % m).collect();
        ModMatrix { n, m, entries }
    }

    pub fn from_i64s(n: usize, m: u64, entries: &[i64]) -> Self {
        let z = Zmod::new(m);
        ModMatrix::new(n, m, entries.iter().map(|&e| z.reduce_i64(e)).collect())
    }

    pub fn identity(n: usize, m: u64) -> Self {
        ModMatrix::new(n, m, (0..n * n).map(|k| u64::from(k / n == k % n)).collect())
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn modulus(&self) -> u64 {
        self.m
    }

    pub fn entries(&self) -> &[u64] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries[i * self.n + j]
    }

    pub fn is_identity(&self) -> bool {
        *self == ModMatrix::identity(self.n, self.m)
    }

    pub fn mul(&self, other: &ModMatrix) -> ModMatrix {
        assert_eq!((self.n, self.m), (other.n, other.m));
        let n = self.n;
        let m = self.m as u128;
        let mut out = vec![0u64; n * n];
        for i in 0..n {
            for j in 0..n {
                let s: u128 = (0..n)
                    .map(|k| self.entries[i * n + k] as u128 * other.entries[k * n + j] as u128 % m)
                    .sum();
                out[i * n + j] = (s % m) as u64;
            }
        }
        ModMatrix {
            n,
            m: self.m,
            entries: out,
        }
    }

    pub fn pow(&self, mut e: u64) -> ModMatrix {
        let mut base = self.clone();
        let mut acc = ModMatrix::identity(self.n, self.m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    pub fn det(&self) -> u64 {
        let z = Zmod::new(self.m);
        self.as_matrix().det(&z)
    }

    /// Inverse when the determinant is a unit mod `m`.
    pub fn inverse(&self) -> Option<ModMatrix> {
        let z = Zmod::new(self.m);
        let inv = self.as_matrix().inverse(&z).ok()?;
        Some(ModMatrix {
            n: self.n,
            m: self.m,
            entries: inv.entries().to_vec(),
        })
    }

    /// `g h g^-1 h^-1`.
    pub fn commutator(&self, other: &ModMatrix) -> ModMatrix {
        let gi = self.inverse().expect("invertible");
        let hi = other.inverse().expect("invertible");
        self.mul(other).mul(&gi).mul(&hi)
    }

    pub fn as_matrix(&self) -> Matrix<u64> {
        Matrix::from_vec(self.n, self.entries.clone())
    }

    /// Entrywise reduction to a divisor `d` of `m`.
    pub fn reduce_to(&self, d: u64) -> ModMatrix {
        assert!(self.m % d == 0, "{d} does not divide {}", self.m);
        ModMatrix::new(self.n, d, self.entries.clone())
    }

    /// Canonical bytes: each entry big-endian in the fewest bytes that hold
    /// `m - 1`, row-major.
    pub fn encode(&self) -> Vec<u8> {
        let width = entry_width_bytes(self.m);
        let mut out = Vec::with_capacity(width * self.entries.len());
        for e in &self.entries {
            out.extend_from_slice(&e.to_be_bytes()[8 - width..]);
        }
        out
    }
}

pub fn entry_width_bytes(m: u64) -> usize {
    let bits = 64 - (m.saturating_sub(1)).leading_zeros() as usize;
    bits.div_ceil(8).max(1)
}

impl fmt::Display for ModMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..self.n)
            .map(|i| {
                (0..self.n)
                    .map(|j| self.get(i, j).to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect();
        write!(f, "({})", rows.join("; "))
    }
}

impl Serialize for ModMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<&[u64]> = self.entries.chunks(self.n).collect();
        rows.serialize(s)
    }
}

/// Bijection between matrices over `Z/m` and `u128` codes. The first
/// entry occupies the most significant bits, so code order is the
/// row-major lexicographic order of entries.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Codec {
    n: usize,
    m: u64,
    bits: u32,
}

impl Codec {
    pub fn new(n: usize, m: u64) -> Result<Self, CongError> {
        let bits = (64 - m.saturating_sub(1).leading_zeros()).max(1);
        if n == 0 || n > MAX_N || (n * n) as u32 * bits > 128 {
            return Err(CongError::ModulusTooLarge { n, m });
        }
        Ok(Codec { n, m, bits })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn modulus(&self) -> u64 {
        self.m
    }

    pub fn pack(&self, g: &ModMatrix) -> u128 {
        self.pack_entries(g.entries())
    }

    pub fn pack_entries(&self, e: &[u64]) -> u128 {
        e.iter().fold(0u128, |acc, &x| (acc << self.bits) | x as u128)
    }

    pub fn unpack_into(&self, code: u128, out: &mut [u64; 16]) {
        let nn = self.n * self.n;
        let mask = (1u128 << self.bits) - 1;
        let mut c = code;
        for k in (0..nn).rev() {
            out[k] = (c & mask) as u64;
            c >>= self.bits;
        }
    }

    pub fn unpack(&self, code: u128) -> ModMatrix {
        let mut buf = [0u64; 16];
        self.unpack_into(code, &mut buf);
        ModMatrix {
            n: self.n,
            m: self.m,
            entries: buf[..self.n * self.n].to_vec(),
        }
    }

    pub fn identity(&self) -> u128 {
        self.pack(&ModMatrix::identity(self.n, self.m))
    }

    /// Product of two codes.
    pub fn mul(&self, a: u128, b: u128) -> u128 {
        let mut x = [0u64; 16];
        let mut y = [0u64; 16];
        self.unpack_into(a, &mut x);
        self.unpack_into(b, &mut y);
        let n = self.n;
        let m = self.m as u128;
        let mut out = 0u128;
        for i in 0..n {
            for j in 0..n {
                let mut s = 0u128;
                for k in 0..n {
                    s += x[i * n + k] as u128 * y[k * n + j] as u128;
                }
                out = (out << self.bits) | (s % m);
            }
        }
        out
    }
}

/// Inverse of `a` modulo `m`, as a checked helper for denominators.
pub(crate) fn inv_mod(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    inverse_mod(a % m, m)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn packing_round_trip_and_product() {
        let c = Codec::new(2, 961).unwrap();
        let a = ModMatrix::from_i64s(2, 961, &[1, 5, -3, 2]);
        let b = ModMatrix::from_i64s(2, 961, &[7, 0, 900, 1]);
        assert_eq!(c.unpack(c.pack(&a)), a);
        assert_eq!(c.unpack(c.mul(c.pack(&a), c.pack(&b))), a.mul(&b));
    }

    #[test]
    fn code_order_is_lexicographic() {
        let c = Codec::new(2, 5).unwrap();
        let a = ModMatrix::from_i64s(2, 5, &[0, 4, 4, 4]);
        let b = ModMatrix::from_i64s(2, 5, &[1, 0, 0, 0]);
        assert!(c.pack(&a) < c.pack(&b));
        assert!(a < b);
    }

    #[test]
    fn encoding_width() {
        assert_eq!(entry_width_bytes(2), 1);
        assert_eq!(entry_width_bytes(256), 1);
        assert_eq!(entry_width_bytes(257), 2);
        let g = ModMatrix::from_i64s(2, 300, &[1, 299, 0, 1]);
        assert_eq!(g.encode(), vec![0, 1, 1, 43, 0, 0, 0, 1]);
    }

    #[test]
    fn too_wide_modulus() {
        assert!(Codec::new(4, 256).is_ok());
        assert!(Codec::new(4, 257).is_err());
    }

    #[test]
    fn inverse_and_commutator() {
        let g = ModMatrix::from_i64s(2, 7, &[2, 1, 1, 1]);
        assert!(g.mul(&g.inverse().unwrap()).is_identity());
        let h = ModMatrix::from_i64s(2, 7, &[1, 1, 0, 1]);
        assert_eq!(g.commutator(&h).det(), 1);
    }
}
