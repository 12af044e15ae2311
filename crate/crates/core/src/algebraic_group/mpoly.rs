//! Sparse multivariate polynomials with rational coefficients.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::exact::{Int, PrimeField, Rat, Ring};

/// Exponent vector -> nonzero coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Rat>,
}

impl MPoly {
    pub fn zero(nvars: usize) -> Self {
        MPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rat) -> Self {
        let mut p = MPoly::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn var(nvars: usize, v: usize) -> Self {
        let mut e = vec![0; nvars];
        e[v] = 1;
        MPoly::from_terms(nvars, [(e, Rat::one())])
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Vec<u32>, Rat)>) -> Self {
        let mut p = MPoly::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent vector length");
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, e: Vec<u32>, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    pub fn add(&self, other: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> MPoly {
        MPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &MPoly) -> MPoly {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Rat) -> MPoly {
        if c.is_zero() {
            return MPoly::zero(self.nvars);
        }
        MPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    pub fn mul(&self, other: &MPoly) -> MPoly {
        let mut out = MPoly::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }

    /// Value at a rational point.
    pub fn eval(&self, point: &[Rat]) -> Rat {
        assert_eq!(point.len(), self.nvars);
        self.terms
            .iter()
            .map(|(e, c)| {
                e.iter()
                    .zip(point)
                    .filter(|(k, _)| **k > 0)
                    .fold(c.clone(), |acc, (k, x)| acc * num_traits::pow(x.clone(), *k as usize))
            })
            .sum()
    }

    /// Partial derivatives at a rational point.
    pub fn gradient_at(&self, point: &[Rat]) -> Vec<Rat> {
        (0..self.nvars)
            .map(|v| {
                self.terms
                    .iter()
                    .filter(|(e, _)| e[v] > 0)
                    .map(|(e, c)| {
                        let mut acc = c * Rat::from_integer(Int::from(e[v]));
                        for (w, (&k, x)) in e.iter().zip(point).enumerate() {
                            let k = if w == v { k - 1 } else { k };
                            if k > 0 {
                                acc *= num_traits::pow(x.clone(), k as usize);
                            }
                        }
                        acc
                    })
                    .sum()
            })
            .collect()
    }

    /// Coefficients reduced mod `p`; `None` if a denominator is divisible by `p`.
    pub fn reduce_mod(&self, field: &PrimeField) -> Option<ModPoly> {
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            let r = field.reduce_rat(c)?;
            if r != 0 {
                terms.insert(e.clone(), r);
            }
        }
        Some(ModPoly {
            p: field.p(),
            terms,
        })
    }

    /// Renders with variables named by `name(v)`.
    pub fn render_with(&self, name: impl Fn(usize) -> String) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        // highest total degree first, then reverse lexicographic
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|a, b| {
            let da: u32 = a.0.iter().sum();
            let db: u32 = b.0.iter().sum();
            db.cmp(&da).then(b.0.cmp(a.0))
        });
        for (i, (e, c)) in terms.into_iter().enumerate() {
            let neg = *c < Rat::zero();
            let mag = if neg { -c.clone() } else { c.clone() };
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, k)| **k > 0)
                .map(|(v, k)| if *k == 1 { name(v) } else { format!("{}^{k}", name(v)) })
                .collect();
            if mono.is_empty() {
                out.push_str(&mag.to_string());
            } else if mag.is_one() {
                out.push_str(&mono.join("*"));
            } else {
                out.push_str(&format!("{mag}*{}", mono.join("*")));
            }
        }
        out
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render_with(|v| format!("v{v}")))
    }
}

/// Polynomial over `F_p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModPoly {
    p: u64,
    terms: BTreeMap<Vec<u32>, u64>,
}

impl ModPoly {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &u64)> {
        self.terms.iter()
    }

    pub fn eval(&self, point: &[u64]) -> u64 {
        let f = PrimeField::new(self.p).unwrap();
        self.terms.iter().fold(0, |acc, (e, c)| {
            let t = e
                .iter()
                .zip(point)
                .fold(*c, |t, (k, x)| f.mul(&t, &f.pow(x, *k as u64)));
            f.add(&acc, &t)
        })
    }
}

/// `Q[x_1..x_n]` as a ring, so matrices of polynomials reuse the matrix code.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MPolyRing {
    pub nvars: usize,
}

impl Ring for MPolyRing {
    type Elem = MPoly;

    fn zero(&self) -> MPoly {
        MPoly::zero(self.nvars)
    }
    fn one(&self) -> MPoly {
        MPoly::constant(self.nvars, Rat::one())
    }
    fn add(&self, a: &MPoly, b: &MPoly) -> MPoly {
        a.add(b)
    }
    fn neg(&self, a: &MPoly) -> MPoly {
        a.neg()
    }
    fn sub(&self, a: &MPoly, b: &MPoly) -> MPoly {
        a.sub(b)
    }
    fn mul(&self, a: &MPoly, b: &MPoly) -> MPoly {
        a.mul(b)
    }
    fn from_int(&self, n: &Int) -> MPoly {
        MPoly::constant(self.nvars, Rat::from_integer(n.clone()))
    }
    fn unit_inverse(&self, a: &MPoly) -> Option<MPoly> {
        if a.total_degree() == 0 && !a.is_zero() {
            let c = a.terms.values().next().unwrap();
            Some(MPoly::constant(self.nvars, c.recip()))
        } else {
            None
        }
    }
    fn is_zero(&self, a: &MPoly) -> bool {
        a.is_zero()
    }
    fn render(&self, a: &MPoly) -> String {
        a.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, rat_int};

    #[test]
    fn cancellation_removes_terms() {
        let x = MPoly::var(2, 0);
        let y = MPoly::var(2, 1);
        let p = x.add(&y).sub(&x);
        assert_eq!(p, y);
        assert!(x.sub(&x).is_zero());
    }

    #[test]
    fn eval_and_gradient() {
        // f = x^2 y - 3 y + 1/2
        let f = MPoly::from_terms(
            2,
            [
                (vec![2, 1], rat_int(1)),
                (vec![0, 1], rat_int(-3)),
                (vec![0, 0], rat(1, 2)),
            ],
        );
        let pt = [rat_int(2), rat_int(5)];
        assert_eq!(f.eval(&pt), rat(20 - 15, 1) + rat(1, 2));
        assert_eq!(f.gradient_at(&pt), vec![rat_int(20), rat_int(4 - 3)]);
    }

    #[test]
    fn render() {
        let f = MPoly::from_terms(2, [(vec![1, 1], rat_int(1)), (vec![0, 0], rat_int(-1))]);
        assert_eq!(f.render_with(|v| ["a", "b"][v].to_string()), "a*b - 1");
    }

    #[test]
    fn reduce_mod_p() {
        let f = MPoly::from_terms(1, [(vec![1], rat(1, 3))]);
        let f5 = PrimeField::new(5).unwrap();
        assert_eq!(f.reduce_mod(&f5).unwrap().eval(&[3]), 1);
        assert!(f.reduce_mod(&PrimeField::new(3).unwrap()).is_none());
    }
}
