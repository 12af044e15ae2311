//! Real root counting by Sturm sequences.

use num_traits::{Signed, Zero};

use super::poly::{DensePoly, PolyRing};
use super::ring::{Rationals, Ring};
use super::{ExactError, Rat};

/// Number of distinct real roots of a squarefree polynomial over `Q`.
pub fn sturm_real_root_count(f: &DensePoly<Rat>) -> Result<usize, ExactError> {
    let ring = PolyRing::new(Rationals);
    let df = ring.derivative(f);
    if f.degree().unwrap_or(0) == 0 {
        return Ok(0);
    }
    if ring.gcd(f, &df).degree().unwrap_or(0) > 0 {
        return Err(ExactError::NonSquarefree);
    }
    let mut seq = vec![f.clone(), df];
    loop {
        let n = seq.len();
        let r = ring.rem(&seq[n - 2], &seq[n - 1]);
        if r.is_zero() {
            break;
        }
        seq.push(ring.neg(&r));
    }
    let at_pos_inf: Vec<i8> = seq.iter().map(|p| sign(p.leading().unwrap())).collect();
    let at_neg_inf: Vec<i8> = seq
        .iter()
        .map(|p| {
            let s = sign(p.leading().unwrap());
            if p.degree().unwrap() % 2 == 1 {
                -s
            } else {
                s
            }
        })
        .collect();
    Ok(sign_changes(&at_neg_inf) - sign_changes(&at_pos_inf))
}

fn sign(x: &Rat) -> i8 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

fn sign_changes(signs: &[i8]) -> usize {
    let nz: Vec<i8> = signs.iter().copied().filter(|&s| s != 0).collect();
    nz.windows(2).filter(|w| w[0] != w[1]).count()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(c: &[i64]) -> DensePoly<Rat> {
        PolyRing::new(Rationals).from_i64s(c)
    }

    #[test]
    fn quadratics() {
        assert_eq!(sturm_real_root_count(&poly(&[-2, 0, 1])), Ok(2));
        assert_eq!(sturm_real_root_count(&poly(&[1, 0, 1])), Ok(0));
    }

    #[test]
    fn cube_root_of_two() {
        assert_eq!(sturm_real_root_count(&poly(&[-2, 0, 0, 1])), Ok(1));
    }

    #[test]
    fn rejects_repeated_roots() {
        assert_eq!(
            sturm_real_root_count(&poly(&[1, 2, 1])),
            Err(ExactError::NonSquarefree)
        );
    }
}
