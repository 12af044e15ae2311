//! Exhaustive perfectness and simplicity checks on small enumerated groups.

use std::collections::{HashSet, VecDeque};

use serde::Serialize;

use super::closure::{closure_codes, FiniteClosure};
use super::CongError;

/// Largest prime for which the check is run in scans.
pub const QUASISIMPLE_MAX_P: u64 = 13;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuasisimpleReport {
    pub modulus: u64,
    pub order: u64,
    pub center_order: u64,
    pub perfect: bool,
    pub quotient_order: u64,
    pub quotient_simple: bool,
    pub quasisimple: bool,
    pub conjugacy_classes: usize,
}

/// Decides whether the enumerated group `G` is perfect and `G/Z(G)` is
/// simple. `[G,G]` is the normal closure of the generator commutators;
/// simplicity is checked by taking, for one element `x` outside the
/// centre in each conjugacy class, the normal closure of `x` together
/// with the centre and comparing its order with `|G|`.
///
/// Requires the element set and `modulus * |G| <= cap`.
pub fn quasisimple_check(c: &FiniteClosure, cap: usize) -> Result<QuasisimpleReport, CongError> {
    let m = c.modulus();
    let too_big = CongError::Truncated { m, cap };
    let els = c.codes().ok_or(too_big.clone())?;
    if (m as u128) * (els.len() as u128) > cap as u128 {
        return Err(too_big);
    }
    let codec = *c.codec();
    let gens: Vec<u128> = c.generators().iter().map(|g| codec.pack(g)).collect();
    let inv_of = |x: u128| codec.pack(&codec.unpack(x).inverse().expect("group element"));
    let gen_inv: Vec<u128> = gens.iter().map(|&g| inv_of(g)).collect();
    let order = els.len() as u64;

    let center: Vec<u128> = els
        .iter()
        .copied()
        .filter(|&z| gens.iter().all(|&s| codec.mul(z, s) == codec.mul(s, z)))
        .collect();

    // conjugacy class of x under the generators
    let class_of = |x: u128| -> Vec<u128> {
        let mut seen = HashSet::from([x]);
        let mut queue = VecDeque::from([x]);
        while let Some(y) = queue.pop_front() {
            for (s, si) in gens.iter().zip(&gen_inv) {
                let z = codec.mul(codec.mul(*s, y), *si);
                if seen.insert(z) {
                    queue.push_back(z);
                }
            }
        }
        let mut v: Vec<u128> = seen.into_iter().collect();
        v.sort_unstable();
        v
    };
    let normal_closure_order = |seeds: &[u128], extra: &[u128]| -> usize {
        let mut g: Vec<u128> = seeds.iter().flat_map(|&x| class_of(x)).collect();
        g.extend_from_slice(extra);
        g.sort_unstable();
        g.dedup();
        closure_codes(&codec, &g, cap).0.len()
    };

    let mut commutators = Vec::new();
    for (a, ai) in gens.iter().zip(&gen_inv) {
        for (b, bi) in gens.iter().zip(&gen_inv) {
            commutators.push(codec.mul(codec.mul(codec.mul(*a, *b), *ai), *bi));
        }
    }
    let perfect = normal_closure_order(&commutators, &[]) as u64 == order;

    let mut classified: HashSet<u128> = HashSet::new();
    let mut classes = 0;
    let mut simple = order / center.len() as u64 > 1;
    for &x in els {
        if classified.contains(&x) {
            continue;
        }
        let cls = class_of(x);
        classes += 1;
        classified.extend(cls.iter().copied());
        if !simple || center.binary_search(&x).is_ok() {
            continue;
        }
        if normal_closure_order(&[x], &center) as u64 != order {
            simple = false;
        }
    }

    Ok(QuasisimpleReport {
        modulus: m,
        order,
        center_order: center.len() as u64,
        perfect,
        quotient_order: order / center.len() as u64,
        quotient_simple: simple,
        quasisimple: perfect && simple,
        conjugacy_classes: classes,
    })
}
