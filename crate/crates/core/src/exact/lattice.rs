use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::intmatrix::{hermite_form, integer_kernel, IntMatrix};
use crate::error::{Error, Result};

/// A sublattice of `Z^ambient`, stored by its Hermite basis (echelon rows, positive pivots).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Lattice {
    ambient: usize,
    basis: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
}

impl Lattice {
    pub fn zero(ambient: usize) -> Self {
        Lattice { ambient, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        let gens: Vec<Vec<BigInt>> = (0..ambient).map(|i| unit(ambient, i)).collect();
        Self::from_generators(ambient, &gens).expect("unit vectors have the right length")
    }

    pub fn from_generators(ambient: usize, gens: &[Vec<BigInt>]) -> Result<Self> {
        if gens.is_empty() {
            return Ok(Self::zero(ambient));
        }
        let m = IntMatrix::from_rows(ambient, gens)?;
        let hf = hermite_form(&m);
        Ok(Lattice { ambient, basis: hf.basis(), pivots: hf.pivots })
    }

    pub fn from_i64_generators(ambient: usize, gens: &[Vec<i64>]) -> Result<Self> {
        let big: Vec<Vec<BigInt>> =
            gens.iter().map(|g| g.iter().map(|&x| BigInt::from(x)).collect()).collect();
        Self::from_generators(ambient, &big)
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<BigInt>] {
        &self.basis
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    /// Integer coordinates of `v` in the Hermite basis, or `None` if `v` is not in the lattice.
    pub fn coordinates(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        if v.len() != self.ambient {
            return None;
        }
        let mut rest = v.to_vec();
        let mut coords = Vec::with_capacity(self.basis.len());
        for (row, &pc) in self.basis.iter().zip(&self.pivots) {
            let (q, r) = rest[pc].div_rem(&row[pc]);
            if !r.is_zero() {
                return None;
            }
            if !q.is_zero() {
                for (x, b) in rest.iter_mut().zip(row) {
                    *x -= &q * b;
                }
            }
            coords.push(q);
        }
        rest.iter().all(|x| x.is_zero()).then_some(coords)
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn contains_lattice(&self, other: &Lattice) -> bool {
        other.basis.iter().all(|b| self.contains(b))
    }

    pub fn sum(&self, other: &Lattice) -> Result<Lattice> {
        check_ambient(self, other)?;
        let mut gens = self.basis.clone();
        gens.extend(other.basis.iter().cloned());
        Lattice::from_generators(self.ambient, &gens)
    }

    pub fn intersect(&self, other: &Lattice) -> Result<Lattice> {
        check_ambient(self, other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Lattice::zero(self.ambient));
        }
        // (a, b) with a*B1 - b*B2 = 0 gives the common vectors a*B1
        let b1 = IntMatrix::from_rows(self.ambient, &self.basis)?;
        let neg: Vec<Vec<BigInt>> =
            other.basis.iter().map(|r| r.iter().map(|x| -x).collect()).collect();
        let stacked = b1.vstack(&IntMatrix::from_rows(self.ambient, &neg)?)?;
        let kernel = hermite_form(&stacked).left_kernel();
        let r1 = self.rank();
        let gens: Vec<Vec<BigInt>> = kernel
            .iter()
            .map(|k| {
                let mut v = vec![BigInt::zero(); self.ambient];
                for (a, row) in k[..r1].iter().zip(&self.basis) {
                    if !a.is_zero() {
                        for (x, b) in v.iter_mut().zip(row) {
                            *x += a * b;
                        }
                    }
                }
                v
            })
            .collect();
        Lattice::from_generators(self.ambient, &gens)
    }

    /// The smallest saturated lattice containing this one: `(L ⊗ Q) ∩ Z^n`.
    pub fn saturation(&self) -> Lattice {
        if self.is_zero() {
            return self.clone();
        }
        let b = IntMatrix::from_rows(self.ambient, &self.basis).expect("basis rows have ambient length");
        let orth = integer_kernel(&b);
        if orth.is_empty() {
            return Lattice::full(self.ambient);
        }
        let c = IntMatrix::from_rows(self.ambient, &orth).expect("kernel rows have ambient length");
        Lattice::from_generators(self.ambient, &integer_kernel(&c)).expect("kernel rows have ambient length")
    }

    pub fn is_saturated(&self) -> bool {
        self.saturation() == *self
    }

    /// Elements of `within` having a nonzero multiple in this lattice.
    pub fn saturation_within(&self, within: &Lattice) -> Result<Lattice> {
        self.saturation().intersect(within)
    }

    /// Index `[self : sub]` when `sub` has full rank in `self`, else `None`.
    pub fn index_of(&self, sub: &Lattice) -> Option<BigInt> {
        if sub.rank() != self.rank() || !self.contains_lattice(sub) {
            return None;
        }
        let coords: Vec<Vec<BigInt>> = sub.basis.iter().map(|b| self.coordinates(b).unwrap()).collect();
        let m = IntMatrix::from_rows(self.rank(), &coords).ok()?;
        Some(m.det().ok()?.abs())
    }
}

fn check_ambient(a: &Lattice, b: &Lattice) -> Result<()> {
    if a.ambient != b.ambient {
        return Err(Error::DimensionMismatch(format!(
            "lattices in Z^{} and Z^{}",
            a.ambient, b.ambient
        )));
    }
    Ok(())
}

pub fn unit(n: usize, i: usize) -> Vec<BigInt> {
    let mut v = vec![BigInt::zero(); n];
    v[i] = BigInt::one();
    v
}

/// The abelian group `A/B` with `B ≤ A ≤ Z^ambient_rank`.
///
/// `quot_generators` generate `A` (the group being divided) and `sub_generators` generate `B`.
#[derive(Debug, Clone)]
pub struct Subquotient {
    pub ambient_rank: usize,
    pub sub_generators: Vec<Vec<BigInt>>,
    pub quot_generators: Vec<Vec<BigInt>>,
}

/// Output of [`semibasis`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemibasisResult {
    /// Vectors of `A` whose images form a basis of `(A/B)/torsion`.
    pub vectors: Vec<Vec<BigInt>>,
    /// Invariant factors (> 1) of the torsion subgroup of `A/B`.
    pub torsion: Vec<BigInt>,
    /// Exponent of the torsion subgroup (1 when trivial).
    pub exponent: BigInt,
}

pub fn semibasis(s: &Subquotient) -> Result<SemibasisResult> {
    for g in s.sub_generators.iter().chain(&s.quot_generators) {
        if g.len() != s.ambient_rank {
            return Err(Error::DimensionMismatch(format!(
                "generator of length {} in ambient rank {}",
                g.len(),
                s.ambient_rank
            )));
        }
    }
    let a = Lattice::from_generators(s.ambient_rank, &s.quot_generators)?;
    let b = Lattice::from_generators(s.ambient_rank, &s.sub_generators)?;
    semibasis_of(&a, &b)
}

/// Semibasis of `a/b` for lattices `b ≤ a`.
///
/// Candidates are tried greedily in a fixed order (unit vectors, then the Hermite basis of `a`)
/// so that simple representatives are preferred; Smith-form vectors are the fallback.
pub fn semibasis_of(a: &Lattice, b: &Lattice) -> Result<SemibasisResult> {
    check_ambient(a, b)?;
    if !a.contains_lattice(b) {
        return Err(Error::Precondition("subgroup is not contained in the ambient group".into()));
    }
    let n = a.ambient();
    // torsion invariants from the Smith form of b expressed in a-coordinates
    let coords: Vec<Vec<BigInt>> = b.basis().iter().map(|v| a.coordinates(v).unwrap()).collect();
    let mut torsion = Vec::new();
    let mut smith_vectors = Vec::new();
    if a.rank() > 0 {
        let c = IntMatrix::from_rows(a.rank(), &coords)?;
        let snf = c.smith_normal_form();
        torsion = snf.diagonal.iter().filter(|d| **d > BigInt::one()).cloned().collect();
        // rows of right^{-1} give the adapted basis of a; the free part sits beyond the rank
        let rinv = inverse_unimodular(&snf.right)?;
        let r = snf.rank();
        for i in r..a.rank() {
            let mut v = vec![BigInt::zero(); n];
            for (k, row) in a.basis().iter().enumerate() {
                let coef = &rinv[(i, k)];
                if !coef.is_zero() {
                    for (x, y) in v.iter_mut().zip(row) {
                        *x += coef * y;
                    }
                }
            }
            smith_vectors.push(v);
        }
    }
    let exponent = torsion.iter().fold(BigInt::one(), |acc, t| acc.lcm(t));
    let target = a.rank() - b.rank();

    let b_sat = b.saturation_within(a)?;
    let mut candidates: Vec<Vec<BigInt>> = (0..n).map(|i| unit(n, i)).collect();
    candidates.extend(a.basis().iter().cloned());
    let mut chosen: Vec<Vec<BigInt>> = Vec::new();
    let mut current = b_sat.clone();
    for cand in candidates {
        if chosen.len() == target {
            break;
        }
        if !a.contains(&cand) || current.contains(&cand) {
            continue;
        }
        let next = current.sum(&Lattice::from_generators(n, &[cand.clone()])?)?;
        if next.rank() == current.rank() + 1 && next.saturation_within(a)? == next {
            chosen.push(cand);
            current = next;
        }
    }
    let vectors = if chosen.len() == target && current == *a { chosen } else { smith_vectors };
    Ok(SemibasisResult { vectors, torsion, exponent })
}

/// Inverse of a unimodular matrix, computed exactly.
pub fn inverse_unimodular(m: &IntMatrix) -> Result<IntMatrix> {
    let n = m.rows();
    let rows: Vec<Vec<BigRational>> = (0..n)
        .map(|i| m.row(i).iter().map(|x| BigRational::from_integer(x.clone())).collect())
        .collect();
    let inv = invert_rational(rows).ok_or_else(|| Error::Invariant("singular transform".into()))?;
    let mut out = IntMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            if !inv[i][j].is_integer() {
                return Err(Error::Invariant("transform is not unimodular".into()));
            }
            out[(i, j)] = inv[i][j].to_integer();
        }
    }
    Ok(out)
}

fn invert_rational(mut a: Vec<Vec<BigRational>>) -> Option<Vec<Vec<BigRational>>> {
    let n = a.len();
    let mut inv: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { BigRational::one() } else { BigRational::zero() })
                .collect()
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        inv.swap(col, piv);
        let p = a[col][col].clone();
        for j in 0..n {
            a[col][j] = &a[col][j] / &p;
            inv[col][j] = &inv[col][j] / &p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for j in 0..n {
                    let t = &f * &a[col][j];
                    a[r][j] -= t;
                    let t = &f * &inv[col][j];
                    inv[r][j] -= t;
                }
            }
        }
    }
    Some(inv)
}

/// Solves `c · rows = target` over the rationals. Rows must be linearly independent.
/// Returns `None` when the target is not in their rational span.
pub fn solve_rational(rows: &[Vec<BigInt>], target: &[BigInt]) -> Option<Vec<BigRational>> {
    let k = rows.len();
    let n = target.len();
    // Gaussian elimination on the transposed system: n equations in k unknowns
    let mut aug: Vec<Vec<BigRational>> = (0..n)
        .map(|j| {
            let mut r: Vec<BigRational> =
                rows.iter().map(|row| BigRational::from_integer(row[j].clone())).collect();
            r.push(BigRational::from_integer(target[j].clone()));
            r
        })
        .collect();
    let mut pivot_cols = Vec::new();
    let mut row = 0;
    for col in 0..k {
        let Some(p) = (row..n).find(|&r| !aug[r][col].is_zero()) else { continue };
        aug.swap(row, p);
        let pv = aug[row][col].clone();
        for x in aug[row].iter_mut() {
            *x = &*x / &pv;
        }
        for r in 0..n {
            if r != row && !aug[r][col].is_zero() {
                let f = aug[r][col].clone();
                for j in 0..=k {
                    let t = &f * &aug[row][j];
                    aug[r][j] -= t;
                }
            }
        }
        pivot_cols.push(col);
        row += 1;
    }
    if pivot_cols.len() < k {
        return None;
    }
    if aug[row..].iter().any(|r| !r[k].is_zero()) {
        return None;
    }
    let mut sol = vec![BigRational::zero(); k];
    for (r, &c) in pivot_cols.iter().enumerate() {
        sol[c] = aug[r][k].clone();
    }
    Some(sol)
}

/// Returns true if every entry is divisible by `d`.
pub fn all_divisible(v: &[BigInt], d: &BigInt) -> bool {
    v.iter().all(|x| x.is_multiple_of(d))
}

pub fn is_negative_vec(v: &[BigInt]) -> bool {
    v.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative())
}
