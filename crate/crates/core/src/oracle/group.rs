//! The group `exp(g ⊗ R)`: coefficient vectors with the truncated Baker–Campbell–Hausdorff
//! product.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::table::TableRing;
use crate::error::{Error, Result};
use crate::lie::{ExtendedAlgebra, LieAlgebraZ};
use crate::rings::FiniteRing;

/// Word in the letters `X = 0`, `Y = 1`; evaluated right-normed.
pub type Word = Vec<u8>;

/// Dynkin's series `log(e^X e^Y) = Σ_n (-1)^{n+1}/n Σ [X^{a1} Y^{b1} ... X^{an} Y^{bn}] /
/// (Σ(a_i + b_i) · Π a_i! b_i!)`, with the sum over `a_i + b_i ≥ 1`, truncated at total degree
/// `class`. Returns the combined coefficient of each word.
pub fn bch_coefficients(class: usize) -> BTreeMap<Word, BigRational> {
    let mut out: BTreeMap<Word, BigRational> = BTreeMap::new();
    let fact = |k: usize| -> BigInt { (1..=k).fold(BigInt::one(), |a, i| a * BigInt::from(i)) };
    for n in 1..=class {
        // all n-tuples of pairs (a_i, b_i) with a_i + b_i ≥ 1 and total ≤ class
        let mut stack: Vec<(Vec<(usize, usize)>, usize)> = vec![(Vec::new(), 0)];
        while let Some((pairs, total)) = stack.pop() {
            if pairs.len() == n {
                let mut word = Word::new();
                let mut denom = BigInt::from(n * total);
                for &(a, b) in &pairs {
                    word.extend(std::iter::repeat(0).take(a));
                    word.extend(std::iter::repeat(1).take(b));
                    denom *= fact(a) * fact(b);
                }
                let sign = if n % 2 == 1 { BigInt::one() } else { -BigInt::one() };
                *out.entry(word).or_insert_with(BigRational::zero) += BigRational::new(sign, denom);
                continue;
            }
            for a in 0..=class - total {
                for b in 0..=class - total - a {
                    if a + b == 0 {
                        continue;
                    }
                    let mut next = pairs.clone();
                    next.push((a, b));
                    stack.push((next, total + a + b));
                }
            }
        }
    }
    out.retain(|w, c| !c.is_zero() && !trivially_zero(w));
    out
}

/// Right-normed words ending in a repeated letter, or of length ≥ 2 built from one letter,
/// vanish identically.
fn trivially_zero(w: &[u8]) -> bool {
    w.len() >= 2 && w[w.len() - 1] == w[w.len() - 2]
}

/// The finite p-group `exp(g_R)` for a ring tabulated by [`TableRing`].
pub struct PGroup<'a> {
    ring: &'a TableRing,
    algebra: ExtendedAlgebra<u32>,
    terms: Vec<(Word, u32)>,
    order: u64,
}

impl<'a> PGroup<'a> {
    pub fn new(g: &LieAlgebraZ, ring: &'a TableRing) -> Result<Self> {
        g.validate()?;
        let algebra = g.scalar_extend(ring)?;
        let class = algebra.class;
        let mut terms = Vec::new();
        for (w, c) in bch_coefficients(class) {
            terms.push((w, rational_into_ring(ring, &c)?));
        }
        let order = ring
            .size()
            .checked_pow(g.rank() as u32)
            .ok_or_else(|| Error::SizeLimit("group order exceeds 64 bits".into()))?;
        Ok(PGroup { ring, algebra, terms, order })
    }

    pub fn ring(&self) -> &TableRing {
        self.ring
    }

    pub fn algebra(&self) -> &ExtendedAlgebra<u32> {
        &self.algebra
    }

    pub fn rank(&self) -> usize {
        self.algebra.rank
    }

    pub fn class(&self) -> usize {
        self.algebra.class
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn identity(&self) -> Vec<u32> {
        vec![0; self.rank()]
    }

    pub fn inverse(&self, x: &[u32]) -> Vec<u32> {
        x.iter().map(|a| self.ring.neg(a)).collect()
    }

    pub fn bracket(&self, x: &[u32], y: &[u32]) -> Vec<u32> {
        self.algebra.bracket(self.ring, x, y)
    }

    /// Coordinates of the element with the given index (coordinate 0 least significant).
    pub fn element(&self, mut index: u64) -> Vec<u32> {
        let s = self.ring.size();
        (0..self.rank())
            .map(|_| {
                let d = index % s;
                index /= s;
                d as u32
            })
            .collect()
    }

    pub fn index(&self, x: &[u32]) -> u64 {
        let s = self.ring.size();
        x.iter().rev().fold(0u64, |acc, &d| acc * s + d as u64)
    }

    /// `x ∗ y` by the truncated series.
    pub fn multiply(&self, x: &[u32], y: &[u32]) -> Vec<u32> {
        let r = self.rank();
        let ring = self.ring;
        let mut memo: BTreeMap<&[u8], Vec<u32>> = BTreeMap::new();
        let mut out = vec![0u32; r];
        for (w, c) in &self.terms {
            let v = self.word_value(w, x, y, &mut memo);
            for (o, &vi) in out.iter_mut().zip(&v) {
                if vi != 0 {
                    *o = ring.add(o, &ring.mul(c, &vi));
                }
            }
        }
        out
    }

    fn word_value<'w>(
        &self,
        w: &'w [u8],
        x: &[u32],
        y: &[u32],
        memo: &mut BTreeMap<&'w [u8], Vec<u32>>,
    ) -> Vec<u32> {
        if let Some(v) = memo.get(w) {
            return v.clone();
        }
        let letter = if w[0] == 0 { x } else { y };
        let v = if w.len() == 1 {
            letter.to_vec()
        } else {
            let inner = self.word_value(&w[1..], x, y, memo);
            self.bracket(letter, &inner)
        };
        memo.insert(w, v.clone());
        v
    }
}

/// `num / den` in the ring; the denominator must be a unit.
fn rational_into_ring<R: FiniteRing>(ring: &R, c: &BigRational) -> Result<R::Elem> {
    let p = BigInt::from(ring.prime());
    let reduce = |n: &BigInt| -> i64 {
        let m = BigInt::from(ring.size());
        n.mod_floor(&m).to_i64().expect("reduced below ring size")
    };
    let not_unit = || Error::Invariant(format!("denominator of {c} is divisible by {p}"));
    if c.denom().is_multiple_of(&p) {
        return Err(not_unit());
    }
    let num = ring.from_int(reduce(c.numer()));
    let inv = ring.unit_inverse(&ring.from_int(reduce(c.denom()))).ok_or_else(not_unit)?;
    Ok(ring.mul(&num, &inv))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn low_order_coefficients() {
        let c = bch_coefficients(3);
        assert_eq!(c[&vec![0u8]], BigRational::one());
        assert_eq!(c[&vec![1u8]], BigRational::one());
        let c_of = |w: &[u8]| c.get(w).cloned().unwrap_or_else(BigRational::zero);
        let r = |n: i64, d: i64| BigRational::new(n.into(), d.into());
        // X + Y + [X,Y]/2 + [X,[X,Y]]/12 - [Y,[X,Y]]/12, after [Y,X] = -[X,Y]
        assert_eq!(c_of(&[0, 1]) - c_of(&[1, 0]), r(1, 2));
        assert_eq!(c_of(&[0, 0, 1]) - c_of(&[0, 1, 0]), r(1, 12));
        assert_eq!(c_of(&[1, 0, 1]) - c_of(&[1, 1, 0]), r(-1, 12));
    }

    #[test]
    fn heisenberg_product() {
        let f5 = TableRing::from_params(5, 1, 1, 1).unwrap();
        let g = PGroup::new(&LieAlgebraZ::heisenberg(), &f5).unwrap();
        assert_eq!(g.multiply(&[1, 0, 0], &[0, 1, 0]), vec![1, 1, 3]);
        assert_eq!(g.multiply(&[2, 0, 1], &[3, 0, 4]), vec![0, 0, 0]);
        let x = [1, 2, 3];
        assert_eq!(g.multiply(&x, &g.inverse(&x)), g.identity());
    }
}
