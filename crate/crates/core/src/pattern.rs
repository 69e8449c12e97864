//! Pattern Lie rings spanned by matrix units `e_ij` for the comparable pairs `i ≺ j` of a
//! partial order, and their closed-form faithful dimension.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fdim::{FdimResult, Method, RingParams};
use crate::lie::LieAlgebraZ;
use crate::rings::is_prime;

/// A strict partial order on `{0, .., n-1}`, transitively closed and labelled so that
/// `i ≺ j` implies `i < j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poset {
    n: usize,
    relation: BTreeSet<(usize, usize)>,
    /// `relabel[old] = new` for the 0-based labels given at ingestion.
    relabel: Vec<usize>,
}

/// On-disk poset format with 1-based labels.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetFile {
    pub n: usize,
    pub relations: Vec<[usize; 2]>,
}

impl Poset {
    /// Ingests arbitrary covering or order relations (0-based pairs `(i, j)` meaning `i ≺ j`).
    pub fn from_relations(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut less = vec![vec![false; n]; n];
        for &(i, j) in pairs {
            if i >= n || j >= n {
                return Err(Error::Parse(format!("relation ({}, {}) outside 1..{n}", i + 1, j + 1)));
            }
            less[i][j] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if less[i][k] {
                    for j in 0..n {
                        if less[k][j] {
                            less[i][j] = true;
                        }
                    }
                }
            }
        }
        if let Some(i) = (0..n).find(|&i| less[i][i]) {
            return Err(Error::Parse(format!("relations contain a cycle through {}", i + 1)));
        }
        // topological relabelling, preferring the smallest available old label
        let mut indegree: Vec<usize> = (0..n).map(|j| (0..n).filter(|&i| less[i][j]).count()).collect();
        let mut relabel = vec![usize::MAX; n];
        let mut placed = vec![false; n];
        for new in 0..n {
            let old = (0..n)
                .find(|&v| !placed[v] && indegree[v] == 0)
                .expect("acyclic relation has a minimal element");
            placed[old] = true;
            relabel[old] = new;
            for j in 0..n {
                if less[old][j] {
                    indegree[j] -= 1;
                }
            }
        }
        let mut relation = BTreeSet::new();
        for i in 0..n {
            for j in 0..n {
                if less[i][j] {
                    relation.insert((relabel[i], relabel[j]));
                }
            }
        }
        Ok(Poset { n, relation, relabel })
    }

    pub fn from_file(file: &PosetFile) -> Result<Self> {
        let mut pairs = Vec::with_capacity(file.relations.len());
        for r in &file.relations {
            if r[0] == 0 || r[1] == 0 {
                return Err(Error::Parse("poset labels are 1-based".into()));
            }
            pairs.push((r[0] - 1, r[1] - 1));
        }
        Self::from_relations(file.n, &pairs)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: PosetFile = serde_json::from_str(text)
            .map_err(|e| Error::Parse(format!("line {}, column {}: {e}", e.line(), e.column())))?;
        Self::from_file(&file)
    }

    /// Total order `0 ≺ 1 ≺ ... ≺ n-1`.
    pub fn chain(n: usize) -> Self {
        let pairs: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
        Self::from_relations(n, &pairs).expect("a chain is acyclic")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// The relabelling applied at ingestion: `relabel()[old] = new` (0-based).
    pub fn relabel(&self) -> &[usize] {
        &self.relabel
    }

    pub fn less(&self, i: usize, j: usize) -> bool {
        self.relation.contains(&(i, j))
    }

    /// Comparable pairs in the order `(i, j)` ascending; this is the basis order of the algebra.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.relation.iter().copied().collect()
    }

    /// Number of `k` with `i ≺ k ≺ j`.
    pub fn alpha(&self, i: usize, j: usize) -> Result<usize> {
        if !self.less(i, j) {
            return Err(Error::Domain(format!("{} is not below {}", i + 1, j + 1)));
        }
        Ok((0..self.n).filter(|&k| self.less(i, k) && self.less(k, j)).count())
    }

    /// Pairs `(i, j)` with `i ≺ j`, `i` minimal and `j` maximal.
    pub fn extreme_pairs(&self) -> Vec<(usize, usize)> {
        let minimal = |i: usize| (0..self.n).all(|k| !self.less(k, i));
        let maximal = |j: usize| (0..self.n).all(|k| !self.less(j, k));
        self.pairs().into_iter().filter(|&(i, j)| minimal(i) && maximal(j)).collect()
    }

    pub fn max_alpha(&self) -> usize {
        self.pairs().iter().map(|&(i, j)| self.alpha(i, j).unwrap()).max().unwrap_or(0)
    }

    pub fn to_file(&self) -> PosetFile {
        PosetFile { n: self.n, relations: self.pairs().iter().map(|&(i, j)| [i + 1, j + 1]).collect() }
    }
}

/// The Lie ring with basis `e_ij` (`i ≺ j`) and `[e_ij, e_kl] = δ_jk e_il - δ_li e_kj`.
pub fn pattern_algebra(poset: &Poset) -> LieAlgebraZ {
    let pairs = poset.pairs();
    let pos = |a: usize, b: usize| pairs.iter().position(|&x| x == (a, b));
    let names = pairs.iter().map(|&(i, j)| format!("e({},{})", i + 1, j + 1)).collect();
    let mut brackets = Vec::new();
    for (x, &(i, j)) in pairs.iter().enumerate() {
        for (y, &(k, l)) in pairs.iter().enumerate().skip(x + 1) {
            let mut v = Vec::new();
            if j == k {
                v.push((pos(i, l).expect("order is transitive"), 1));
            }
            if l == i {
                v.push((pos(k, j).expect("order is transitive"), -1));
            }
            if !v.is_empty() {
                brackets.push(((x, y), v));
            }
        }
    }
    LieAlgebraZ::new(format!("pattern{}", poset.n()), names, brackets).expect("pattern brackets are well formed")
}

/// `Σ_{ℓ<e} Σ_{(i,j) extreme} f p^{f(d-ℓ)α(i,j)}`; requires `p > max α + 1` and `d ≥ e`.
pub fn pattern_fdim(poset: &Poset, params: RingParams) -> Result<FdimResult> {
    let RingParams { p, f, e, d } = params;
    if !is_prime(p) {
        return Err(Error::Parameter(format!("{p} is not prime")));
    }
    let max_alpha = poset.max_alpha();
    if p <= max_alpha as u64 + 1 {
        return Err(Error::Threshold(format!(
            "the closed form needs p > max α + 1 = {}, got p = {p}",
            max_alpha + 1
        )));
    }
    if d < e {
        return Err(Error::Precondition(format!("closed form needs d ≥ e (d = {d}, e = {e})")));
    }
    let overflow = || Error::Parameter("value exceeds 128-bit range".into());
    let mut value: u128 = 0;
    for l in 0..e {
        for (i, j) in poset.extreme_pairs() {
            let a = poset.alpha(i, j)? as u32;
            let exp = f.checked_mul(d - l).and_then(|x| x.checked_mul(a)).ok_or_else(overflow)?;
            let term = (p as u128).checked_pow(exp).ok_or_else(overflow)?;
            value = value.checked_add(term.checked_mul(f as u128).ok_or_else(overflow)?).ok_or_else(overflow)?;
        }
    }
    Ok(FdimResult {
        algebra: pattern_algebra(poset).name().to_string(),
        ring: params,
        value,
        method: Method::ClosedFormPattern,
        witness: Vec::new(),
        flags: Vec::new(),
        fq_restricted_value: None,
    })
}
