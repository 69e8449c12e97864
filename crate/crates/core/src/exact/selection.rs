use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rings::FiniteField;

/// Incrementally maintained row-echelon basis over a finite field, used as the independence
/// oracle of the matroid greedy.
#[derive(Debug, Clone)]
pub struct IndependenceTracker<'a> {
    field: &'a FiniteField,
    dim: usize,
    rows: Vec<Vec<u32>>,
    pivots: Vec<usize>,
    scratch: Vec<u32>,
}

impl<'a> IndependenceTracker<'a> {
    pub fn new(field: &'a FiniteField, dim: usize) -> Self {
        IndependenceTracker { field, dim, rows: Vec::new(), pivots: Vec::new(), scratch: vec![0; dim] }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.dim
    }

    fn reduce_into_scratch(&mut self, v: &[u32]) -> Option<usize> {
        let k = self.field;
        self.scratch.copy_from_slice(v);
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            let c = self.scratch[pc];
            if c != 0 {
                for j in pc..self.dim {
                    if row[j] != 0 {
                        self.scratch[j] = k.sub(self.scratch[j], k.mul(c, row[j]));
                    }
                }
            }
        }
        self.scratch.iter().position(|&x| x != 0)
    }

    /// True if `v` lies in the current span.
    pub fn contains(&mut self, v: &[u32]) -> bool {
        self.reduce_into_scratch(v).is_none()
    }

    /// Adds `v` if it is independent of the current rows; reports whether it was added.
    pub fn try_insert(&mut self, v: &[u32]) -> bool {
        debug_assert_eq!(v.len(), self.dim);
        let Some(pc) = self.reduce_into_scratch(v) else { return false };
        let k = self.field;
        let inv = k.inv(self.scratch[pc]);
        let row: Vec<u32> = self.scratch.iter().map(|&x| k.mul(x, inv)).collect();
        let pos = self.pivots.partition_point(|&p| p < pc);
        self.rows.insert(pos, row);
        self.pivots.insert(pos, pc);
        true
    }
}

/// A minimum-weight spanning selection.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Selection {
    /// Indices of the selected points, in the order the greedy accepted them.
    pub indices: Vec<usize>,
    pub total_weight: u128,
}

/// Minimum-weight set of `target_dim` points with independent projections over `F_p`.
///
/// Matroid greedy: points are scanned by non-decreasing weight, ties by index, and kept when
/// independent of those already kept.
pub fn min_weight_selection(
    weights: &[u64],
    projections: &[Vec<u32>],
    p: u64,
    target_dim: usize,
) -> Result<Selection> {
    if weights.len() != projections.len() {
        return Err(Error::DimensionMismatch("one weight per point is required".into()));
    }
    if let Some(bad) = projections.iter().find(|v| v.len() != target_dim) {
        return Err(Error::DimensionMismatch(format!(
            "projection of length {} for target dimension {target_dim}",
            bad.len()
        )));
    }
    let field = FiniteField::new(p, 1)?;
    let mut order: Vec<usize> = (0..weights.len()).collect();
    order.sort_by_key(|&i| (weights[i], i));
    let mut tracker = IndependenceTracker::new(&field, target_dim);
    let mut sel = Selection { indices: Vec::new(), total_weight: 0 };
    for i in order {
        if tracker.is_full() {
            break;
        }
        let v: Vec<u32> = projections[i].iter().map(|&x| x % p as u32).collect();
        if tracker.try_insert(&v) {
            sel.indices.push(i);
            sel.total_weight += weights[i] as u128;
        }
    }
    if !tracker.is_full() {
        return Err(Error::Infeasible(format!(
            "projections span dimension {} < {target_dim}",
            tracker.rank()
        )));
    }
    Ok(sel)
}

/// Splits a basis `S` of `V^k` (`dim V = block_dim`) into blocks `B_1..B_k` such that the
/// `ℓ`-th coordinate projection of `B_ℓ` is a basis of `V`.
///
/// Exhaustive subset search, pruned by the Laplace expansion along the first block: the
/// complement of a valid first block must again be a basis of the remaining blocks.
pub fn partition_basis(
    s: &[Vec<u32>],
    p: u64,
    k: usize,
    block_dim: usize,
) -> Result<Vec<Vec<usize>>> {
    let n = k * block_dim;
    if n > 12 {
        return Err(Error::SizeLimit(format!("k*block_dim = {n} exceeds the limit of 12")));
    }
    if s.len() != n || s.iter().any(|v| v.len() != n) {
        return Err(Error::DimensionMismatch(format!(
            "expected {n} vectors of length {n}"
        )));
    }
    let field = FiniteField::new(p, 1)?;
    let reduced: Vec<Vec<u32>> = s.iter().map(|v| v.iter().map(|&x| x % p as u32).collect()).collect();
    if field.rank(&reduced) != n {
        return Err(Error::RankDeficiency("the vectors do not form a basis".into()));
    }
    let all: Vec<usize> = (0..n).collect();
    let mut out = Vec::new();
    if split_blocks(&field, &reduced, &all, 0, k, block_dim, &mut out) {
        Ok(out)
    } else {
        Err(Error::Invariant("no block partition found for a basis".into()))
    }
}

fn projected_rank(field: &FiniteField, s: &[Vec<u32>], idx: &[usize], from: usize, to: usize) -> usize {
    let m: Vec<Vec<u32>> = idx.iter().map(|&i| s[i][from..to].to_vec()).collect();
    field.rank(&m)
}

fn split_blocks(
    field: &FiniteField,
    s: &[Vec<u32>],
    remaining: &[usize],
    block: usize,
    k: usize,
    bd: usize,
    out: &mut Vec<Vec<usize>>,
) -> bool {
    if block == k {
        return remaining.is_empty();
    }
    let lo = block * bd;
    let hi = lo + bd;
    let n = k * bd;
    let mut chosen = Vec::with_capacity(bd);
    let mut found = false;
    for_each_subset(remaining, bd, &mut chosen, 0, &mut |subset| {
        if projected_rank(field, s, subset, lo, hi) != bd {
            return false;
        }
        let rest: Vec<usize> = remaining.iter().copied().filter(|i| !subset.contains(i)).collect();
        if projected_rank(field, s, &rest, hi, n) != rest.len() {
            return false;
        }
        out.push(subset.to_vec());
        if split_blocks(field, s, &rest, block + 1, k, bd, out) {
            found = true;
            return true;
        }
        out.pop();
        false
    });
    found
}

/// Calls `visit` on each `size`-subset of `items` in lexicographic order until it returns true.
fn for_each_subset(
    items: &[usize],
    size: usize,
    chosen: &mut Vec<usize>,
    start: usize,
    visit: &mut dyn FnMut(&[usize]) -> bool,
) -> bool {
    if chosen.len() == size {
        return visit(chosen);
    }
    for i in start..items.len() {
        if items.len() - i < size - chosen.len() {
            break;
        }
        chosen.push(items[i]);
        if for_each_subset(items, size, chosen, i + 1, visit) {
            chosen.pop();
            return true;
        }
        chosen.pop();
    }
    false
}

/// Evaluates `Σ a_ℓ x_ℓ ≥ Σ x_ℓ` for `a` with `Σ a_ℓ = m` whose tail sums
/// `a_ℓ + ... + a_{m-1}` are at most `m - ℓ`, and non-increasing `x`.
pub fn check_ineq(a: &[BigRational], x: &[BigRational]) -> Result<bool> {
    let m = a.len();
    if x.len() != m {
        return Err(Error::DimensionMismatch("a and x must have equal length".into()));
    }
    if a.iter().any(|v| v.is_negative()) {
        return Err(Error::Precondition("a has a negative entry".into()));
    }
    let total: BigRational = a.iter().sum();
    if total != BigRational::from_integer((m as i64).into()) {
        return Err(Error::Precondition(format!("Σa = {total}, expected {m}")));
    }
    let mut tail = BigRational::zero();
    for l in (0..m).rev() {
        tail += &a[l];
        if tail > BigRational::from_integer(((m - l) as i64).into()) {
            return Err(Error::Precondition(format!("tail sum from index {l} is {tail} > {}", m - l)));
        }
    }
    if x.windows(2).any(|w| w[1] > w[0]) {
        return Err(Error::Precondition("x is not non-increasing".into()));
    }
    let lhs: BigRational = a.iter().zip(x).map(|(u, v)| u * v).sum();
    let rhs: BigRational = x.iter().sum();
    Ok(lhs >= rhs)
}

/// Convenience wrapper for integer inputs.
pub fn check_ineq_int(a: &[i64], x: &[i64]) -> Result<bool> {
    let conv = |v: &[i64]| -> Vec<BigRational> {
        v.iter().map(|&t| BigRational::from_integer(t.into())).collect()
    };
    check_ineq(&conv(a), &conv(x))
}

pub fn rational(num: i64, den: i64) -> BigRational {
    BigRational::new(num.into(), den.into())
}
