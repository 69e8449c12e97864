//! Finite fields, finite chain rings, and linear algebra over them.

pub mod chain;
pub mod field;
pub mod poly_fp;

use std::fmt::Debug;
use std::hash::Hash;

pub use chain::{ChainRing, RingElement};
pub use field::{ff_rank, is_prime, FiniteField};

/// Common interface of the coefficient rings used by the engines and the oracle.
///
/// Every ring here is a finite chain ring with parameters `(d, p, e, f)`; a field is the case
/// `d = e = 1`.
pub trait FiniteRing: Sync + Send {
    type Elem: Clone + PartialEq + Eq + Hash + Debug + Send + Sync;

    fn prime(&self) -> u64;
    fn residue_degree(&self) -> u32;
    fn ramification(&self) -> u32;
    /// Nilpotency length `d` of the maximal ideal.
    fn length(&self) -> u32;
    fn size(&self) -> u64;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_int(&self, n: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    /// Valuation capped at `d`.
    fn level(&self, a: &Self::Elem) -> u32;
    fn unit_inverse(&self, a: &Self::Elem) -> Option<Self::Elem>;
    /// Some `y` with `π^k y = a`, assuming `level(a) ≥ k`.
    fn div_pi_pow(&self, a: &Self::Elem, k: u32) -> Self::Elem;
    /// Bijection `0..size() -> elements`.
    fn element(&self, index: u64) -> Self::Elem;
    fn index(&self, a: &Self::Elem) -> u64;
    /// Appends the `e*f` digits over `F_p` of the image of `a` in `R/πR^e = R/pR`.
    fn residue_digits(&self, a: &Self::Elem, out: &mut Vec<u32>);
}

/// Exponent `k` with `#ker(M: R^cols -> R^rows) = p^k`.
///
/// Diagonal reduction: the entry of least level divides every other entry, so it can clear its
/// column; the elementary divisors `π^{a_i}` then determine the kernel size.
pub fn matrix_kernel_exponent<R: FiniteRing>(ring: &R, m: &[Vec<R::Elem>]) -> u64 {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut a: Vec<Vec<R::Elem>> = m.to_vec();
    kernel_exponent_in_place(ring, &mut a, rows, cols)
}

pub(crate) fn kernel_exponent_in_place<R: FiniteRing>(
    ring: &R,
    a: &mut [Vec<R::Elem>],
    rows: usize,
    cols: usize,
) -> u64 {
    let d = ring.length();
    let f = ring.residue_degree() as u64;
    let mut col_used = vec![false; cols];
    let mut levels_sum = 0u64;
    let mut pivots = 0u64;
    let mut r = 0;
    while r < rows {
        let mut best: Option<(usize, usize, u32)> = None;
        for i in r..rows {
            for (j, used) in col_used.iter().enumerate() {
                if *used {
                    continue;
                }
                let lv = ring.level(&a[i][j]);
                if lv < d && best.map_or(true, |(_, _, b)| lv < b) {
                    best = Some((i, j, lv));
                    if lv == 0 {
                        break;
                    }
                }
            }
            if best.is_some_and(|b| b.2 == 0) {
                break;
            }
        }
        let Some((pi, pj, lv)) = best else { break };
        a.swap(r, pi);
        let unit = ring.div_pi_pow(&a[r][pj], lv);
        let uinv = ring.unit_inverse(&unit).expect("pivot quotient is a unit");
        for i in r + 1..rows {
            if ring.is_zero(&a[i][pj]) {
                continue;
            }
            let t = ring.mul(&ring.div_pi_pow(&a[i][pj], lv), &uinv);
            for j in 0..cols {
                if col_used[j] {
                    continue;
                }
                let s = ring.mul(&t, &a[r][j]);
                a[i][j] = ring.sub(&a[i][j], &s);
            }
        }
        col_used[pj] = true;
        levels_sum += lv as u64;
        pivots += 1;
        r += 1;
    }
    f * levels_sum + f * d as u64 * (cols as u64 - pivots)
}
