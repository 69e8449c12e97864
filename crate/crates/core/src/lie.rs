//! Nilpotent Lie rings given by integer structure constants on a free Z-basis.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{integer_kernel, IntMatrix, Lattice};
use crate::rings::FiniteRing;

/// Sparse vector: `(basis index, coefficient)` pairs with distinct indices and nonzero coefficients.
pub type SparseVec = Vec<(usize, i64)>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieAlgebraZ {
    name: String,
    basis_names: Vec<String>,
    /// `[e_i, e_j]` for `i < j`; missing pairs bracket to zero.
    brackets: BTreeMap<(usize, usize), SparseVec>,
}

fn normalize(v: &mut SparseVec) {
    let mut acc: BTreeMap<usize, i64> = BTreeMap::new();
    for &(k, c) in v.iter() {
        *acc.entry(k).or_insert(0) += c;
    }
    *v = acc.into_iter().filter(|&(_, c)| c != 0).collect();
}

impl LieAlgebraZ {
    /// Builds an algebra from brackets of basis pairs (0-based). Pairs may be given in either
    /// order; `[e_j, e_i] = -[e_i, e_j]` is applied. Conflicting duplicates are rejected.
    pub fn new(
        name: impl Into<String>,
        basis_names: Vec<String>,
        brackets: impl IntoIterator<Item = ((usize, usize), SparseVec)>,
    ) -> Result<Self> {
        let rank = basis_names.len();
        let mut table: BTreeMap<(usize, usize), SparseVec> = BTreeMap::new();
        for ((i, j), mut v) in brackets {
            if i >= rank || j >= rank || v.iter().any(|&(k, _)| k >= rank) {
                return Err(Error::DimensionMismatch(format!(
                    "bracket ({i}, {j}) refers to a basis index outside 0..{rank}"
                )));
            }
            normalize(&mut v);
            if i == j {
                if !v.is_empty() {
                    return Err(Error::Parse(format!("[e{0}, e{0}] must vanish", i + 1)));
                }
                continue;
            }
            let (key, val) = if i < j {
                ((i, j), v)
            } else {
                ((j, i), v.into_iter().map(|(k, c)| (k, -c)).collect())
            };
            if let Some(prev) = table.get(&key) {
                if *prev != val {
                    return Err(Error::Parse(format!(
                        "conflicting brackets given for pair ({}, {})",
                        key.0 + 1,
                        key.1 + 1
                    )));
                }
            }
            if !val.is_empty() {
                table.insert(key, val);
            }
        }
        Ok(LieAlgebraZ { name: name.into(), basis_names, brackets: table })
    }

    pub fn abelian(rank: usize) -> Self {
        let names = (1..=rank).map(|i| format!("x{i}")).collect();
        LieAlgebraZ { name: format!("abelian{rank}"), basis_names: names, brackets: BTreeMap::new() }
    }

    /// The Heisenberg algebra `x, y, z` with `[x, y] = z`.
    pub fn heisenberg() -> Self {
        LieAlgebraZ::new(
            "heisenberg",
            vec!["x".into(), "y".into(), "z".into()],
            [((0, 1), vec![(2, 1)])],
        )
        .expect("valid table")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn set_name(&mut self, name: impl Into<String>) {
        self.name = name.into();
    }

    pub fn rank(&self) -> usize {
        self.basis_names.len()
    }

    pub fn basis_names(&self) -> &[String] {
        &self.basis_names
    }

    /// Nonzero brackets `[e_i, e_j]`, `i < j`.
    pub fn brackets(&self) -> &BTreeMap<(usize, usize), SparseVec> {
        &self.brackets
    }

    /// `[e_i, e_j]` as a dense vector.
    pub fn bracket_basis(&self, i: usize, j: usize) -> Vec<i64> {
        let mut out = vec![0i64; self.rank()];
        let (key, sign) = if i < j { ((i, j), 1) } else { ((j, i), -1) };
        if let Some(v) = self.brackets.get(&key) {
            for &(k, c) in v {
                out[k] += sign * c;
            }
        }
        out
    }

    /// Bracket of two integer vectors.
    pub fn bracket(&self, x: &[i64], y: &[i64]) -> Vec<i64> {
        let mut out = vec![0i64; self.rank()];
        for (&(i, j), v) in &self.brackets {
            let c = x[i] * y[j] - x[j] * y[i];
            if c != 0 {
                for &(k, s) in v {
                    out[k] += c * s;
                }
            }
        }
        out
    }

    fn bracket_big(&self, x: &[BigInt], y: &[BigInt]) -> Vec<BigInt> {
        let mut out = vec![BigInt::from(0); self.rank()];
        for (&(i, j), v) in &self.brackets {
            let c = &x[i] * &y[j] - &x[j] * &y[i];
            if c != BigInt::from(0) {
                for &(k, s) in v {
                    out[k] += &c * s;
                }
            }
        }
        out
    }

    /// Checks the Jacobi identity on all basis triples and nilpotency; returns the class.
    pub fn validate(&self) -> Result<usize> {
        let r = self.rank();
        let unit = |i: usize| {
            let mut v = vec![0i64; r];
            v[i] = 1;
            v
        };
        for i in 0..r {
            for j in i + 1..r {
                for k in j + 1..r {
                    let (ei, ej, ek) = (unit(i), unit(j), unit(k));
                    let a = self.bracket(&ei, &self.bracket(&ej, &ek));
                    let b = self.bracket(&ej, &self.bracket(&ek, &ei));
                    let c = self.bracket(&ek, &self.bracket(&ei, &ej));
                    if (0..r).any(|t| a[t] + b[t] + c[t] != 0) {
                        return Err(Error::Jacobi(i + 1, j + 1, k + 1));
                    }
                }
            }
        }
        Ok(self.lower_central_series()?.len())
    }

    /// Terms `γ_1 = g, γ_2 = [g, g], ...` down to (excluding) zero.
    ///
    /// Fails if the series stops decreasing in rank before reaching zero.
    pub fn lower_central_series(&self) -> Result<Vec<Lattice>> {
        let r = self.rank();
        let mut series = Vec::new();
        let mut current = Lattice::full(r);
        while !current.is_zero() {
            let mut gens = Vec::new();
            for b in current.basis() {
                for i in 0..r {
                    let mut ei = vec![BigInt::from(0); r];
                    ei[i] = BigInt::from(1);
                    let v = self.bracket_big(&ei, b);
                    if v.iter().any(|x| *x != BigInt::from(0)) {
                        gens.push(v);
                    }
                }
            }
            let next = Lattice::from_generators(r, &gens)?;
            if next.rank() == current.rank() {
                return Err(Error::NotNilpotent(format!(
                    "lower central series stabilizes at rank {}",
                    current.rank()
                )));
            }
            series.push(current);
            current = next;
        }
        Ok(series)
    }

    pub fn class(&self) -> Result<usize> {
        Ok(self.lower_central_series()?.len())
    }

    /// Center (saturated), derived lattice (as generated), their intersection, and the series.
    pub fn structural_data(&self) -> Result<StructuralData> {
        let r = self.rank();
        let lcs = self.lower_central_series()?;
        // x is central iff [x, e_j] = 0 for all j: a linear system with r*r equations
        let mut rows = Vec::with_capacity(r * r);
        for j in 0..r {
            for k in 0..r {
                rows.push((0..r).map(|i| BigInt::from(self.bracket_basis(i, j)[k])).collect::<Vec<_>>());
            }
        }
        let center = if r == 0 {
            Lattice::zero(0)
        } else {
            let m = IntMatrix::from_rows(r, &rows)?;
            Lattice::from_generators(r, &integer_kernel(&m))?
        };
        let gens: Vec<Vec<BigInt>> = self
            .brackets
            .values()
            .map(|v| {
                let mut d = vec![BigInt::from(0); r];
                for &(k, c) in v {
                    d[k] = BigInt::from(c);
                }
                d
            })
            .collect();
        let derived = Lattice::from_generators(r, &gens)?;
        let center_cap_derived = center.intersect(&derived)?;
        Ok(StructuralData { class: lcs.len(), center, derived, center_cap_derived, lcs })
    }

    /// Structure constants reduced into `ring`; requires the residue characteristic to exceed
    /// the nilpotency class.
    pub fn scalar_extend<R: FiniteRing>(&self, ring: &R) -> Result<ExtendedAlgebra<R::Elem>> {
        let class = self.class()?;
        let p = ring.prime();
        if p <= class as u64 {
            return Err(Error::Lazard { p, class });
        }
        let r = self.rank();
        let mut table = Vec::with_capacity(r * r);
        for i in 0..r {
            for j in 0..r {
                let v = self.bracket_basis(i, j);
                table.push(
                    v.iter()
                        .enumerate()
                        .filter_map(|(k, &c)| {
                            let x = ring.from_int(c);
                            (!ring.is_zero(&x)).then_some((k, x))
                        })
                        .collect(),
                );
            }
        }
        Ok(ExtendedAlgebra { rank: r, class, table })
    }

    /// Same algebra with the basis reordered: new basis vector `k` is old vector `perm[k]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<LieAlgebraZ> {
        let r = self.rank();
        let mut inv = vec![usize::MAX; r];
        for (new, &old) in perm.iter().enumerate() {
            if old >= r || inv[old] != usize::MAX {
                return Err(Error::Parameter("not a permutation".into()));
            }
            inv[old] = new;
        }
        if perm.len() != r {
            return Err(Error::Parameter("not a permutation".into()));
        }
        let names = perm.iter().map(|&o| self.basis_names[o].clone()).collect();
        let brackets = self.brackets.iter().map(|(&(i, j), v)| {
            ((inv[i], inv[j]), v.iter().map(|&(k, c)| (inv[k], c)).collect::<SparseVec>())
        });
        LieAlgebraZ::new(self.name.clone(), names, brackets)
    }

    /// Serializable file representation (1-based indices).
    pub fn to_file(&self) -> AlgebraFile {
        let brackets = self
            .brackets
            .iter()
            .map(|(&(i, j), v)| {
                (format!("{},{}", i + 1, j + 1), v.iter().map(|&(k, c)| [k as i64 + 1, c]).collect())
            })
            .collect();
        AlgebraFile {
            name: self.name.clone(),
            rank: self.rank(),
            basis: self.basis_names.clone(),
            brackets,
        }
    }

    pub fn from_file(file: &AlgebraFile) -> Result<Self> {
        let names = if file.basis.is_empty() {
            (1..=file.rank).map(|i| format!("e{i}")).collect()
        } else {
            file.basis.clone()
        };
        if names.len() != file.rank {
            return Err(Error::Parse(format!(
                "rank is {} but {} basis names were given",
                file.rank,
                names.len()
            )));
        }
        let mut brackets = Vec::new();
        for (key, terms) in &file.brackets {
            let parts: Vec<&str> = key.split(',').map(str::trim).collect();
            let parse = |s: &str| -> Result<usize> {
                let v: usize = s
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad bracket key \"{key}\"")))?;
                if v == 0 || v > file.rank {
                    return Err(Error::Parse(format!("index {v} in key \"{key}\" is out of range")));
                }
                Ok(v - 1)
            };
            if parts.len() != 2 {
                return Err(Error::Parse(format!("bracket key \"{key}\" must look like \"i,j\"")));
            }
            let (i, j) = (parse(parts[0])?, parse(parts[1])?);
            let mut v = Vec::new();
            for t in terms {
                let k = usize::try_from(t[0])
                    .ok()
                    .filter(|&k| k >= 1 && k <= file.rank)
                    .ok_or_else(|| Error::Parse(format!("term index {} in key \"{key}\" is out of range", t[0])))?;
                v.push((k - 1, t[1]));
            }
            brackets.push(((i, j), v));
        }
        LieAlgebraZ::new(file.name.clone(), names, brackets)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: AlgebraFile = serde_json::from_str(text).map_err(|e| {
            Error::Parse(format!("line {}, column {}: {e}", e.line(), e.column()))
        })?;
        Self::from_file(&file)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("algebra files always serialize")
    }
}

/// On-disk algebra format: brackets keyed by `"i,j"` (1-based) with `[k, coefficient]` terms.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraFile {
    #[serde(default)]
    pub name: String,
    pub rank: usize,
    #[serde(default)]
    pub basis: Vec<String>,
    #[serde(default)]
    pub brackets: BTreeMap<String, Vec<[i64; 2]>>,
}

#[derive(Debug, Clone)]
pub struct StructuralData {
    pub center: Lattice,
    pub derived: Lattice,
    pub center_cap_derived: Lattice,
    pub lcs: Vec<Lattice>,
    pub class: usize,
}

/// Structure constants of `g ⊗ R`: `table[i * rank + j]` lists the nonzero terms of `[e_i, e_j]`.
#[derive(Debug, Clone)]
pub struct ExtendedAlgebra<E> {
    pub rank: usize,
    pub class: usize,
    pub table: Vec<Vec<(usize, E)>>,
}

impl<E: Clone> ExtendedAlgebra<E> {
    pub fn terms(&self, i: usize, j: usize) -> &[(usize, E)] {
        &self.table[i * self.rank + j]
    }

    /// `[x, y]` for coefficient vectors over the ring.
    pub fn bracket<R: FiniteRing<Elem = E>>(&self, ring: &R, x: &[E], y: &[E]) -> Vec<E> {
        let mut out = vec![ring.zero(); self.rank];
        for i in 0..self.rank {
            if ring.is_zero(&x[i]) {
                continue;
            }
            for j in 0..self.rank {
                if i == j || ring.is_zero(&y[j]) {
                    continue;
                }
                let terms = self.terms(i, j);
                if terms.is_empty() {
                    continue;
                }
                let c = ring.mul(&x[i], &y[j]);
                for (k, s) in terms {
                    out[*k] = ring.add(&out[*k], &ring.mul(&c, s));
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::ChainRing;

    #[test]
    fn heisenberg_structure() {
        let h = LieAlgebraZ::heisenberg();
        assert_eq!(h.validate().unwrap(), 2);
        let s = h.structural_data().unwrap();
        assert_eq!(s.center.rank(), 1);
        assert_eq!(s.derived.rank(), 1);
        assert_eq!(s.center, s.derived);
        assert_eq!(LieAlgebraZ::abelian(3).validate().unwrap(), 1);
    }

    #[test]
    fn non_nilpotent_rejected() {
        let g = LieAlgebraZ::new("sl2-like", vec!["x".into(), "y".into()], [((0, 1), vec![(0, 2)])])
            .unwrap();
        assert!(matches!(g.validate(), Err(Error::NotNilpotent(_))));
    }

    #[test]
    fn jacobi_failure_is_reported() {
        // [a,[b,c]] + [b,[c,a]] + [c,[a,b]] = [a,d] = e
        let names = ["a", "b", "c", "d", "e"].iter().map(|s| s.to_string()).collect();
        let g = LieAlgebraZ::new(
            "broken",
            names,
            [((0, 1), vec![(2, 1)]), ((1, 2), vec![(3, 1)]), ((0, 3), vec![(4, 1)])],
        )
        .unwrap();
        assert_eq!(g.validate(), Err(Error::Jacobi(1, 2, 3)));
    }

    #[test]
    fn json_roundtrip() {
        let h = LieAlgebraZ::heisenberg();
        let back = LieAlgebraZ::from_json(&h.to_json()).unwrap();
        assert_eq!(h, back);
        assert!(matches!(LieAlgebraZ::from_json("{\"rank\": 2,"), Err(Error::Parse(_))));
    }

    #[test]
    fn scalar_extension() {
        let h = LieAlgebraZ::heisenberg();
        let f5 = ChainRing::new(5, 1, 1, 1).unwrap();
        let ext = h.scalar_extend(&f5).unwrap();
        assert_eq!(ext.terms(0, 1), &[(2, f5.one())]);
        let g = LieAlgebraZ::new("six", vec!["x".into(), "y".into(), "z".into()], [((0, 1), vec![(2, 6)])])
            .unwrap();
        let z25 = ChainRing::new(5, 1, 1, 2).unwrap();
        assert_eq!(g.scalar_extend(&z25).unwrap().terms(0, 1), &[(2, z25.from_i64(6))]);
        let f2 = ChainRing::new(2, 1, 1, 1).unwrap();
        assert!(matches!(h.scalar_extend(&f2), Err(Error::Lazard { p: 2, class: 2 })));
    }
}
