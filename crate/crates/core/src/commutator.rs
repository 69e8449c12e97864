//! The commutator matrix of a nilpotent Lie ring: a skew-symmetric matrix of linear forms
//! recording the brackets of coset representatives of `g/Z(g)` in a semibasis of `[g, g]`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{semibasis_of, solve_rational, Lattice};
use crate::lie::LieAlgebraZ;
use crate::rings::FiniteRing;

/// Semibases and structure constants behind the commutator matrix.
///
/// `w[..l1]` is a basis of `Z(g) ∩ [g, g]`, `w[l1..]` completes it to a semibasis of `[g, g]`,
/// `z` is a semibasis of `Z(g)` modulo the intersection, `v = K v'` with `v'` a semibasis of
/// `g/Z(g)`, and `u` a semibasis of `g/(Z(g) + [g, g])`.
#[derive(Debug, Clone, Serialize)]
pub struct CommutatorData {
    pub w: Vec<Vec<BigInt>>,
    pub z: Vec<Vec<BigInt>>,
    pub v_prime: Vec<Vec<BigInt>>,
    pub v: Vec<Vec<BigInt>>,
    pub u: Vec<Vec<BigInt>>,
    /// Exponent of the torsion of `[g, g] / (Z(g) ∩ [g, g])`.
    pub k: BigInt,
    /// Invariant factors of that torsion subgroup.
    pub torsion: Vec<BigInt>,
    /// `lambda[i][j][k]` with `[v_i, v_j] = Σ_k lambda[i][j][k] w_k`.
    pub lambda: Vec<Vec<Vec<BigInt>>>,
    pub l1: usize,
    pub l2: usize,
    pub l3: usize,
    pub m: usize,
    pub n: usize,
}

/// Skew-symmetric `n × n` matrix whose entries are integer linear forms in `T_1..T_m`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SymbolicSkewMatrix {
    pub n: usize,
    pub m: usize,
    /// `entries[i][j]` maps a variable index (0-based) to its coefficient.
    pub entries: Vec<Vec<BTreeMap<usize, i64>>>,
}

/// Builds the commutator data from the Lie ring's own center and derived lattice.
pub fn build_commutator_data(g: &LieAlgebraZ) -> Result<(CommutatorData, SymbolicSkewMatrix)> {
    g.validate()?;
    let s = g.structural_data()?;
    build_from_lattices(g, &s.center, &s.derived)
}

/// The construction for explicitly supplied lattices standing in for `Z(g)` and `[g, g]`.
///
/// The supplied center must be a sublattice of the true center; it need not be saturated,
/// which lets callers exercise the torsion scaling by `K`.
pub fn build_from_lattices(
    g: &LieAlgebraZ,
    center: &Lattice,
    derived: &Lattice,
) -> Result<(CommutatorData, SymbolicSkewMatrix)> {
    let r = g.rank();
    let full = Lattice::full(r);
    let inter = center.intersect(derived)?;
    let mut w: Vec<Vec<BigInt>> = inter.basis().to_vec();
    let l1 = w.len();
    let rest = semibasis_of(derived, &inter)?;
    w.extend(rest.vectors.iter().cloned());
    let m = w.len();
    if m != derived.rank() {
        return Err(Error::Invariant("semibasis of the derived lattice has the wrong size".into()));
    }
    let k = rest.exponent.clone();
    let z = semibasis_of(center, &inter)?.vectors;
    let v_prime = semibasis_of(&full, center)?.vectors;
    let u = semibasis_of(&full, &center.sum(derived)?)?.vectors;
    let n = v_prime.len();
    let v: Vec<Vec<BigInt>> = v_prime.iter().map(|x| x.iter().map(|c| c * &k).collect()).collect();

    let mut lambda = vec![vec![vec![BigInt::zero(); m]; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let br = bracket_big(g, &v[i], &v[j]);
            if br.iter().all(|x| x.is_zero()) {
                continue;
            }
            let sol = solve_rational(&w, &br).ok_or_else(|| {
                Error::Invariant(format!("[v{}, v{}] is not in the span of the w-semibasis", i + 1, j + 1))
            })?;
            for (t, c) in sol.into_iter().enumerate() {
                if !c.is_integer() {
                    return Err(Error::Invariant(format!(
                        "non-integral structure constant for [v{}, v{}]",
                        i + 1,
                        j + 1
                    )));
                }
                let c = c.to_integer();
                lambda[j][i][t] = -c.clone();
                lambda[i][j][t] = c;
            }
        }
    }

    let mut entries = vec![vec![BTreeMap::new(); n]; n];
    for i in 0..n {
        for j in 0..n {
            for t in 0..m {
                let c = &lambda[i][j][t];
                if !c.is_zero() {
                    let c = c.to_i64().ok_or_else(|| {
                        Error::Parameter("structure constant exceeds 64-bit range".into())
                    })?;
                    entries[i][j].insert(t, c);
                }
            }
        }
    }
    let data = CommutatorData {
        w,
        z,
        v_prime,
        v,
        u,
        k,
        torsion: rest.torsion,
        lambda,
        l1,
        l2: 0,
        l3: 0,
        m,
        n,
    };
    let l2 = data.z.len();
    let l3 = data.u.len();
    Ok((CommutatorData { l2, l3, ..data }, SymbolicSkewMatrix { n, m, entries }))
}

fn bracket_big(g: &LieAlgebraZ, x: &[BigInt], y: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); g.rank()];
    for (&(i, j), terms) in g.brackets() {
        let c = &x[i] * &y[j] - &x[j] * &y[i];
        if !c.is_zero() {
            for &(k, s) in terms {
                out[k] += &c * s;
            }
        }
    }
    out
}

impl SymbolicSkewMatrix {
    /// Entrywise substitution `T_k -> point[k]`.
    pub fn evaluate<R: FiniteRing>(&self, ring: &R, point: &[R::Elem]) -> Result<Vec<Vec<R::Elem>>> {
        if point.len() != self.m {
            return Err(Error::DimensionMismatch(format!(
                "point has {} coordinates, the matrix has {} variables",
                point.len(),
                self.m
            )));
        }
        Ok(self
            .entries
            .iter()
            .map(|row| {
                row.iter()
                    .map(|form| {
                        form.iter().fold(ring.zero(), |acc, (&t, &c)| {
                            ring.add(&acc, &ring.mul(&ring.from_int(c), &point[t]))
                        })
                    })
                    .collect()
            })
            .collect())
    }

    /// Upper-triangle entries with coefficients mapped into `ring`, for fast repeated evaluation.
    pub fn compile<R: FiniteRing>(&self, ring: &R) -> CompiledSkew<R::Elem> {
        let mut upper = Vec::new();
        for i in 0..self.n {
            for j in i + 1..self.n {
                let terms: Vec<(usize, R::Elem)> = self.entries[i][j]
                    .iter()
                    .map(|(&t, &c)| (t, ring.from_int(c)))
                    .filter(|(_, c)| !ring.is_zero(c))
                    .collect();
                if !terms.is_empty() {
                    upper.push((i, j, terms));
                }
            }
        }
        CompiledSkew { n: self.n, upper }
    }
}

impl fmt::Display for SymbolicSkewMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, row) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "[")?;
            for (j, form) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", format_form(form))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// Renders a linear form such as `T1-2*T3`.
pub fn format_form(form: &BTreeMap<usize, i64>) -> String {
    if form.is_empty() {
        return "0".into();
    }
    let mut s = String::new();
    for (idx, (&t, &c)) in form.iter().enumerate() {
        let sign = if c < 0 { "-" } else if idx > 0 { "+" } else { "" };
        let mag = c.unsigned_abs();
        if mag == 1 {
            s.push_str(&format!("{sign}T{}", t + 1));
        } else {
            s.push_str(&format!("{sign}{mag}*T{}", t + 1));
        }
    }
    s
}

/// Commutator matrix with coefficients already in a ring; only the upper triangle is stored.
#[derive(Debug, Clone)]
pub struct CompiledSkew<E> {
    pub n: usize,
    pub upper: Vec<(usize, usize, Vec<(usize, E)>)>,
}

impl<E: Clone> CompiledSkew<E> {
    /// Writes `F(point)` into `out` (an `n × n` buffer).
    pub fn evaluate_into<R: FiniteRing<Elem = E>>(&self, ring: &R, point: &[E], out: &mut [Vec<E>]) {
        for row in out.iter_mut() {
            for x in row.iter_mut() {
                *x = ring.zero();
            }
        }
        for (i, j, terms) in &self.upper {
            let mut acc = ring.zero();
            for (t, c) in terms {
                if !ring.is_zero(&point[*t]) {
                    acc = ring.add(&acc, &ring.mul(c, &point[*t]));
                }
            }
            out[*j][*i] = ring.neg(&acc);
            out[*i][*j] = acc;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::intmatrix::big_vec;
    use crate::rings::FiniteField;

    #[test]
    fn heisenberg_matrix() {
        let (cd, f) = build_commutator_data(&LieAlgebraZ::heisenberg()).unwrap();
        // g / (Z + [g, g]) is spanned by x and y
        assert_eq!((cd.l1, cd.l2, cd.l3, cd.m, cd.n), (1, 0, 2, 1, 2));
        assert_eq!(cd.k, BigInt::from(1));
        assert_eq!(f.to_string(), "[[0,T1],[-T1,0]]");
        let f5 = FiniteField::new(5, 1).unwrap();
        assert_eq!(f.evaluate(&f5, &[3]).unwrap(), vec![vec![0, 3], vec![2, 0]]);
        assert_eq!(f.evaluate(&f5, &[0]).unwrap(), vec![vec![0, 0], vec![0, 0]]);
        assert!(f.evaluate(&f5, &[1, 2]).is_err());
    }

    #[test]
    fn abelian_matrix_is_empty() {
        let (cd, f) = build_commutator_data(&LieAlgebraZ::abelian(3)).unwrap();
        assert_eq!((cd.l1, cd.l2, cd.m, cd.n), (0, 3, 0, 0));
        assert_eq!(f.n, 0);
    }

    /// x, y1, y2, y3 with [x, y1] = y2, [x, y2] = y3 and a stand-in center 2·Z y3, so that
    /// [g, g] / (center ∩ [g, g]) has torsion Z/2.
    #[test]
    fn torsion_scaling_by_k() {
        let g = LieAlgebraZ::new(
            "filiform4",
            vec!["x".into(), "y1".into(), "y2".into(), "y3".into()],
            [((0, 1), vec![(2, 1)]), ((0, 2), vec![(3, 1)])],
        )
        .unwrap();
        let center = Lattice::from_generators(4, &[big_vec(&[0, 0, 0, 2])]).unwrap();
        let derived = g.structural_data().unwrap().derived;
        let (cd, _) = build_from_lattices(&g, &center, &derived).unwrap();
        assert_eq!(cd.k, BigInt::from(2));
        assert_eq!(cd.w[0], big_vec(&[0, 0, 0, 2]));
        assert_eq!(cd.w[1], big_vec(&[0, 0, 1, 0]));
        assert_eq!(cd.v_prime, vec![big_vec(&[1, 0, 0, 0]), big_vec(&[0, 1, 0, 0]), big_vec(&[0, 0, 1, 0])]);
        // λ = K^2 η, where η are the rational coordinates of [v'_i, v'_j] in the w-basis
        let k2 = &cd.k * &cd.k;
        for i in 0..cd.n {
            for j in 0..cd.n {
                let br = bracket_big(&g, &cd.v_prime[i], &cd.v_prime[j]);
                let eta = solve_rational(&cd.w, &br).unwrap();
                for t in 0..cd.m {
                    let expect = &eta[t] * num_rational::BigRational::from_integer(k2.clone());
                    assert_eq!(num_rational::BigRational::from_integer(cd.lambda[i][j][t].clone()), expect);
                }
            }
        }
        assert_eq!(cd.lambda[0][1][1], BigInt::from(4));
        assert_eq!(cd.lambda[0][2][0], BigInt::from(2));
    }
}
