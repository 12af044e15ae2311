//! Subgroups of `GL_n(Z/m)` generated by a finite set, by exhaustive
//! breadth-first search.

use std::collections::{HashMap, HashSet, VecDeque};

use serde::Serialize;

use super::modmat::{Codec, ModMatrix};
use super::CongError;
use crate::exact::{rank, PrimeField};

/// Default bound on the number of elements a closure may visit.
pub const DEFAULT_CAP: usize = 2_000_000;

/// Above this many elements only the order is kept.
pub const ELEMENT_LIMIT: usize = 100_000;

/// Result of a closure computation.
#[derive(Clone, Debug)]
pub struct FiniteClosure {
    codec: Codec,
    generators: Vec<ModMatrix>,
    /// Sorted codes; `None` in order-only mode or when truncated.
    elements: Option<Vec<u128>>,
    order: u64,
    truncated: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClosureSummary {
    pub modulus: u64,
    pub size: usize,
    pub order: u64,
    pub truncated: bool,
    pub generators: Vec<ModMatrix>,
}

impl FiniteClosure {
    pub fn modulus(&self) -> u64 {
        self.codec.modulus()
    }

    pub fn size(&self) -> usize {
        self.codec.size()
    }

    /// Exact order when not truncated; otherwise the number of elements
    /// seen before stopping.
    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn truncated(&self) -> bool {
        self.truncated
    }

    pub fn generators(&self) -> &[ModMatrix] {
        &self.generators
    }

    pub fn codec(&self) -> &Codec {
        &self.codec
    }

    pub fn has_elements(&self) -> bool {
        self.elements.is_some()
    }

    pub fn codes(&self) -> Option<&[u128]> {
        self.elements.as_deref()
    }

    /// Elements in canonical order, if retained.
    pub fn elements(&self) -> Option<Vec<ModMatrix>> {
        self.elements
            .as_ref()
            .map(|v| v.iter().map(|&c| self.codec.unpack(c)).collect())
    }

    pub fn contains(&self, g: &ModMatrix) -> Option<bool> {
        let code = self.codec.pack(g);
        self.elements.as_ref().map(|v| v.binary_search(&code).is_ok())
    }

    pub fn summary(&self) -> ClosureSummary {
        ClosureSummary {
            modulus: self.modulus(),
            size: self.size(),
            order: self.order,
            truncated: self.truncated,
            generators: self.generators.clone(),
        }
    }

    /// Concatenated canonical encodings of the elements.
    pub fn encode(&self) -> Option<Vec<u8>> {
        self.elements.as_ref().map(|v| {
            v.iter()
                .flat_map(|&c| self.codec.unpack(c).encode())
                .collect()
        })
    }
}

/// Closure of `gens` under right multiplication, starting from the
/// identity. In a finite group this is the generated subgroup. At most
/// `cap` elements are visited.
pub fn bfs_closure(n: usize, m: u64, gens: &[ModMatrix], cap: usize) -> Result<FiniteClosure, CongError> {
    let codec = Codec::new(n, m)?;
    for g in gens {
        if g.size() != n || g.modulus() != m {
            return Err(CongError::SizeMismatch);
        }
    }
    let gen_codes: Vec<u128> = gens.iter().map(|g| codec.pack(g)).collect();
    let (seen, truncated) = closure_codes(&codec, &gen_codes, cap);
    let order = seen.len() as u64;
    let elements = if truncated || seen.len() > ELEMENT_LIMIT {
        None
    } else {
        let mut v: Vec<u128> = seen.into_iter().collect();
        v.sort_unstable();
        Some(v)
    };
    Ok(FiniteClosure {
        codec,
        generators: gens.to_vec(),
        elements,
        order,
        truncated,
    })
}

pub(crate) fn closure_codes(codec: &Codec, gens: &[u128], cap: usize) -> (HashSet<u128>, bool) {
    let id = codec.identity();
    let mut seen = HashSet::new();
    seen.insert(id);
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for &s in gens {
            let y = codec.mul(x, s);
            if seen.contains(&y) {
                continue;
            }
            if seen.len() >= cap {
                return (seen, true);
            }
            seen.insert(y);
            queue.push_back(y);
        }
    }
    (seen, false)
}

/// Order of the group generated by `gens` in `GL_n(Z/p^k)`, `k >= 2`,
/// computed as `|H_1| * |K|` where `H_1` is the image mod `p` and `K` the
/// kernel of reduction mod `p` inside the group. `K` is generated by the
/// elements `t(h) s t(hs)^-1` for a set `t` of lifts of `H_1`. For `k = 2`
/// the kernel is an `F_p`-subspace of `M_n(F_p)` via `I + pA -> A`, so its
/// order is `p^rank`; for larger `k` it is enumerated under `cap`.
///
/// Returns `None` when some intermediate set exceeds `cap`.
pub fn layered_order(n: usize, p: u64, k: u32, gens: &[ModMatrix], cap: usize) -> Result<Option<u128>, CongError> {
    assert!(k >= 2);
    let m = p.checked_pow(k).ok_or(CongError::ModulusTooLarge { n, m: u64::MAX })?;
    let big = Codec::new(n, m)?;
    let small = Codec::new(n, p)?;
    let lifts: Vec<u128> = gens.iter().map(|g| big.pack(g)).collect();
    let reduced: Vec<u128> = gens.iter().map(|g| small.pack(&g.reduce_to(p))).collect();

    // BFS mod p, remembering a lift for every element found
    let mut lift_of: HashMap<u128, u128> = HashMap::new();
    let id_small = small.identity();
    lift_of.insert(id_small, big.identity());
    let mut queue = VecDeque::from([id_small]);
    let mut order_h1: u128 = 1;
    while let Some(x) = queue.pop_front() {
        let tx = lift_of[&x];
        for (s, &s_small) in lifts.iter().zip(&reduced) {
            let y = small.mul(x, s_small);
            if !lift_of.contains_key(&y) {
                if lift_of.len() >= cap {
                    return Ok(None);
                }
                lift_of.insert(y, big.mul(tx, *s));
                queue.push_back(y);
                order_h1 += 1;
            }
        }
    }

    // Schreier generators of the kernel
    let mut inverse_cache: HashMap<u128, u128> = HashMap::new();
    let mut schreier: HashSet<u128> = HashSet::new();
    let id_big = big.identity();
    for (&x, &tx) in &lift_of {
        for (s, &s_small) in lifts.iter().zip(&reduced) {
            let y = small.mul(x, s_small);
            let ty = lift_of[&y];
            let ty_inv = *inverse_cache
                .entry(ty)
                .or_insert_with(|| big.pack(&big.unpack(ty).inverse().expect("unit determinant")));
            let g = big.mul(big.mul(tx, *s), ty_inv);
            if g != id_big {
                schreier.insert(g);
            }
        }
    }

    let kernel_order: u128 = if k == 2 {
        let field = PrimeField::new(p).ok_or(CongError::NotPrime(p))?;
        let mut buf = [0u64; 16];
        let rows: Vec<Vec<u64>> = schreier
            .iter()
            .map(|&g| {
                big.unpack_into(g, &mut buf);
                (0..n * n)
                    .map(|idx| {
                        let diag = u64::from(idx / n == idx % n);
                        // entry = diag + p * a
                        ((buf[idx] + m - diag) % m) / p
                    })
                    .collect()
            })
            .collect();
        let r = if rows.is_empty() { 0 } else { rank(&field, &rows) };
        (p as u128).pow(r as u32)
    } else {
        let mut gens: Vec<u128> = schreier.into_iter().collect();
        gens.sort_unstable();
        let (seen, truncated) = closure_codes(&big, &gens, cap);
        if truncated {
            return Ok(None);
        }
        seen.len() as u128
    };
    Ok(Some(order_h1 * kernel_order))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn elementary(m: u64) -> Vec<ModMatrix> {
        vec![
            ModMatrix::from_i64s(2, m, &[1, 1, 0, 1]),
            ModMatrix::from_i64s(2, m, &[1, 0, 1, 1]),
        ]
    }

    #[test]
    fn trivial_and_small_closures() {
        let id = ModMatrix::identity(2, 5);
        assert_eq!(bfs_closure(2, 5, &[id], DEFAULT_CAP).unwrap().order(), 1);
        assert_eq!(bfs_closure(2, 3, &elementary(3), DEFAULT_CAP).unwrap().order(), 24);
        assert_eq!(bfs_closure(2, 5, &elementary(5), DEFAULT_CAP).unwrap().order(), 120);
    }

    #[test]
    fn truncation_is_a_state() {
        let c = bfs_closure(2, 7, &elementary(7), 100).unwrap();
        assert!(c.truncated());
        assert!(!c.has_elements());
    }

    #[test]
    fn elements_are_sorted_and_searchable() {
        let c = bfs_closure(2, 3, &elementary(3), DEFAULT_CAP).unwrap();
        let els = c.elements().unwrap();
        assert!(els.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(c.contains(&ModMatrix::from_i64s(2, 3, &[0, 2, 1, 0])), Some(true));
        assert_eq!(c.contains(&ModMatrix::from_i64s(2, 3, &[2, 0, 0, 1])), Some(false));
    }

    #[test]
    fn layered_matches_bfs() {
        for p in [2u64, 3, 5, 7] {
            for k in [2u32, 3] {
                let m = p.pow(k);
                if m > 100 {
                    continue;
                }
                let bfs = bfs_closure(2, m, &elementary(m), DEFAULT_CAP).unwrap().order() as u128;
                let lay = layered_order(2, p, k, &elementary(m), DEFAULT_CAP).unwrap().unwrap();
                assert_eq!(bfs, lay, "p={p} k={k}");
            }
        }
        // a proper subgroup: the Sanov pair lies in the kernel mod 2
        let sanov = vec![
            ModMatrix::from_i64s(2, 9, &[1, 2, 0, 1]),
            ModMatrix::from_i64s(2, 9, &[1, 0, 2, 1]),
        ];
        let bfs = bfs_closure(2, 9, &sanov, DEFAULT_CAP).unwrap().order() as u128;
        assert_eq!(layered_order(2, 3, 2, &sanov, DEFAULT_CAP).unwrap(), Some(bfs));
        let sanov4: Vec<ModMatrix> = sanov.iter().map(|g| ModMatrix::new(2, 4, g.entries().to_vec())).collect();
        let bfs = bfs_closure(2, 4, &sanov4, DEFAULT_CAP).unwrap().order() as u128;
        assert_eq!(layered_order(2, 2, 2, &sanov4, DEFAULT_CAP).unwrap(), Some(bfs));
    }
}
