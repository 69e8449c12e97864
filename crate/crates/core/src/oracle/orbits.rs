//! Coadjoint orbits of `exp(g_R)` on the characters `θ_b(x) = ψ(Σ b_i x_i)` of `g_R`.
//!
//! Each orbit `Θ` gives an irreducible representation of dimension `|Θ|^{1/2}`, and its kernel
//! is `{x : θ(x) = 1 for all θ ∈ Θ}`.

use std::collections::BTreeMap;

use serde::Serialize;

use super::table::TableRing;
use crate::error::{Error, Result};
use crate::lie::{ExtendedAlgebra, LieAlgebraZ};
use crate::rings::{matrix_kernel_exponent, FiniteField, FiniteRing};

pub const DEFAULT_ORACLE_BUDGET: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Orbit {
    /// Coordinates of the smallest-index character in the orbit.
    pub representative: Vec<u32>,
    pub rep_index: u64,
    pub size: u64,
    pub dim: u64,
    /// `dim = p^dim_exponent`.
    pub dim_exponent: u32,
    /// `ψ(⟨b, z_k⟩) / p^{d-1}` on the `F_p`-basis `z_k` of `Ω_1(Z)`.
    pub central_restriction: Vec<u32>,
}

#[derive(Debug, Clone)]
pub struct OrbitTable {
    pub rank: usize,
    pub group_order: u64,
    pub orbits: Vec<Orbit>,
    /// Character indices grouped by orbit: orbit `i` is `members[offsets[i]..offsets[i+1]]`.
    members: Vec<u32>,
    offsets: Vec<usize>,
    /// Indices of the central elements, ascending (so the identity comes first).
    pub center: Vec<u64>,
    /// `F_p`-basis of `Ω_1(Z) = {z ∈ Z : p z = 0}`.
    pub omega_basis: Vec<Vec<u32>>,
}

/// Coordinates of index `idx` in base `s`, coordinate 0 least significant.
pub(crate) fn decode(mut idx: u64, s: u64, out: &mut [u32]) {
    for slot in out.iter_mut() {
        *slot = (idx % s) as u32;
        idx /= s;
    }
}

pub(crate) fn encode(x: &[u32], s: u64) -> u64 {
    x.iter().rev().fold(0u64, |acc, &d| acc * s + d as u64)
}

/// `[e_k, e_j]` coefficient tables as dense `λ[k][j][i]`.
fn structure_constants(alg: &ExtendedAlgebra<u32>) -> Vec<Vec<Vec<u32>>> {
    let r = alg.rank;
    let mut lam = vec![vec![vec![0u32; r]; r]; r];
    for (k, row) in lam.iter_mut().enumerate() {
        for (j, col) in row.iter_mut().enumerate() {
            for (i, c) in alg.terms(k, j) {
                col[*i] = *c;
            }
        }
    }
    lam
}

fn mat_mul(ring: &TableRing, a: &[Vec<u32>], b: &[Vec<u32>]) -> Vec<Vec<u32>> {
    let n = a.len();
    let mut out = vec![vec![0u32; n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k] == 0 {
                continue;
            }
            for j in 0..n {
                if b[k][j] != 0 {
                    out[i][j] = ring.add_idx(out[i][j], ring.mul_idx(a[i][k], b[k][j]));
                }
            }
        }
    }
    out
}

/// `(exp ad_x)^T` for `x = c·e_i`, or `None` when `x` is central.
fn coadjoint_generator(
    ring: &TableRing,
    lam: &[Vec<Vec<u32>>],
    class: usize,
    i: usize,
    c: u32,
) -> Option<Vec<Vec<u32>>> {
    let r = lam.len();
    // ad[k][j] = coefficient k of [c e_i, e_j]
    let mut ad = vec![vec![0u32; r]; r];
    let mut nonzero = false;
    for j in 0..r {
        for k in 0..r {
            let v = ring.mul_idx(c, lam[i][j][k]);
            ad[k][j] = v;
            nonzero |= v != 0;
        }
    }
    if !nonzero {
        return None;
    }
    let mut exp = vec![vec![0u32; r]; r];
    for (k, row) in exp.iter_mut().enumerate() {
        row[k] = ring.one();
    }
    let mut power = ad.clone();
    let mut fact = 1i64;
    for k in 1..=class {
        fact *= k as i64;
        let inv = ring.unit_inverse(&ring.from_int(fact)).expect("k! is a unit below the class bound");
        for a in 0..r {
            for b in 0..r {
                if power[a][b] != 0 {
                    exp[a][b] = ring.add_idx(exp[a][b], ring.mul_idx(power[a][b], inv));
                }
            }
        }
        power = mat_mul(ring, &power, &ad);
    }
    Some((0..r).map(|a| (0..r).map(|b| exp[b][a]).collect()).collect())
}

pub fn coadjoint_orbits(g: &LieAlgebraZ, ring: &TableRing, budget: u64) -> Result<OrbitTable> {
    g.validate()?;
    let alg = g.scalar_extend(ring)?;
    let r = alg.rank;
    let s = ring.size();
    let n = s
        .checked_pow(r as u32)
        .filter(|&n| n <= budget)
        .ok_or(Error::Budget { required: (s as u128).saturating_pow(r as u32), budget: budget as u128 })?;
    let lam = structure_constants(&alg);
    let p = ring.prime();
    let (f, d) = (ring.residue_degree(), ring.length());

    let mut gens = Vec::new();
    for i in 0..r {
        for j in 0..f {
            if let Some(m) = coadjoint_generator(ring, &lam, alg.class, i, ring.t_power(j)) {
                gens.push(m);
            }
        }
    }

    let center = central_elements(ring, &lam, n);
    let omega_basis = omega_one_basis(ring, &center, r);

    let mut orbit_of = vec![u32::MAX; n as usize];
    let mut members = Vec::with_capacity(n as usize);
    let mut offsets = vec![0usize];
    let mut orbits = Vec::new();
    let mut b = vec![0u32; r];
    let mut nb = vec![0u32; r];
    let full_exponent = f as u64 * d as u64 * r as u64;
    for start in 0..n {
        if orbit_of[start as usize] != u32::MAX {
            continue;
        }
        let id = orbits.len() as u32;
        let first = members.len();
        orbit_of[start as usize] = id;
        members.push(start as u32);
        let mut head = first;
        while head < members.len() {
            decode(members[head] as u64, s, &mut b);
            head += 1;
            for m in &gens {
                for (slot, row) in nb.iter_mut().zip(m) {
                    *slot = ring.dot(row, &b);
                }
                let idx = encode(&nb, s) as usize;
                if orbit_of[idx] == u32::MAX {
                    orbit_of[idx] = id;
                    members.push(idx as u32);
                }
            }
        }
        let size = (members.len() - first) as u64;
        offsets.push(members.len());

        decode(start, s, &mut b);
        // stabilizer: x with Σ_i b_i [x, e_j]_i = 0 for every j
        let m: Vec<Vec<u32>> = (0..r)
            .map(|j| (0..r).map(|k| ring.dot(&b, &lam[k][j])).collect())
            .collect();
        let kexp = matrix_kernel_exponent(ring, &m);
        let twice = full_exponent - kexp;
        if twice % 2 == 1 || (p as u128).pow(twice as u32) != size as u128 {
            return Err(Error::Invariant(format!(
                "orbit of character {start} has size {size} but the stabilizer has index p^{twice}"
            )));
        }
        let dim_exponent = (twice / 2) as u32;
        let central_restriction = omega_basis
            .iter()
            .map(|z| ring.psi(ring.dot(&b, z)) / (ring.character_modulus() / p as u32))
            .collect();
        orbits.push(Orbit {
            representative: b.clone(),
            rep_index: start,
            size,
            dim: p.pow(dim_exponent),
            dim_exponent,
            central_restriction,
        });
    }
    let total: u128 = orbits.iter().map(|o| (o.dim as u128).pow(2)).sum();
    if total != n as u128 {
        return Err(Error::Invariant(format!("Σ dim² = {total} differs from |G| = {n}")));
    }
    Ok(OrbitTable { rank: r, group_order: n, orbits, members, offsets, center, omega_basis })
}

/// `x` with `[x, e_j] = 0` for all `j`, by enumeration.
fn central_elements(ring: &TableRing, lam: &[Vec<Vec<u32>>], n: u64) -> Vec<u64> {
    let r = lam.len();
    let s = ring.size();
    let mut x = vec![0u32; r];
    let mut out = Vec::new();
    'elements: for idx in 0..n {
        decode(idx, s, &mut x);
        for j in 0..r {
            for i in 0..r {
                let mut acc = 0u32;
                for (k, &xk) in x.iter().enumerate() {
                    if xk != 0 && lam[k][j][i] != 0 {
                        acc = ring.add_idx(acc, ring.mul_idx(xk, lam[k][j][i]));
                    }
                }
                if acc != 0 {
                    continue 'elements;
                }
            }
        }
        out.push(idx);
    }
    out
}

/// Greedy `F_p`-basis of the central elements killed by `p`, growing the span explicitly.
fn omega_one_basis(ring: &TableRing, center: &[u64], r: usize) -> Vec<Vec<u32>> {
    let s = ring.size();
    let p = ring.prime() as u32;
    let mut span: std::collections::BTreeSet<u64> = [0u64].into_iter().collect();
    let mut basis = Vec::new();
    let mut z = vec![0u32; r];
    for &idx in center {
        decode(idx, s, &mut z);
        if z.iter().any(|&c| ring.times_p(c) != 0) || span.contains(&idx) {
            continue;
        }
        let mut grown = span.clone();
        let mut w = vec![0u32; r];
        for &old in &span {
            decode(old, s, &mut w);
            for _ in 1..p {
                for (a, &b) in w.iter_mut().zip(&z) {
                    *a = ring.add_idx(*a, b);
                }
                grown.insert(encode(&w, s));
            }
        }
        span = grown;
        basis.push(z.clone());
    }
    basis
}

impl OrbitTable {
    pub fn members(&self, orbit: usize) -> &[u32] {
        &self.members[self.offsets[orbit]..self.offsets[orbit + 1]]
    }

    pub fn r_g(&self) -> usize {
        self.omega_basis.len()
    }

    /// Whether `θ(x) = 1` for every `θ` in the orbit.
    pub fn kernel_contains(&self, ring: &TableRing, orbit: usize, x: &[u32]) -> bool {
        let s = ring.size();
        let mut b = vec![0u32; self.rank];
        self.members(orbit).iter().all(|&m| {
            decode(m as u64, s, &mut b);
            ring.psi(ring.dot(&b, x)) == 0
        })
    }

    /// The kernel of the orbit's representation, as element indices.
    pub fn kernel(&self, ring: &TableRing, orbit: usize) -> Vec<u64> {
        let s = ring.size();
        let mut x = vec![0u32; self.rank];
        (0..self.group_order)
            .filter(|&idx| {
                decode(idx, s, &mut x);
                self.kernel_contains(ring, orbit, &x)
            })
            .collect()
    }

    pub fn summary(&self) -> OrbitSummary {
        let mut histogram: BTreeMap<u64, usize> = BTreeMap::new();
        for o in &self.orbits {
            *histogram.entry(o.dim).or_default() += 1;
        }
        OrbitSummary {
            group_order: self.group_order,
            orbit_count: self.orbits.len(),
            dimension_histogram: histogram.into_iter().collect(),
            r_g: self.r_g(),
            orbits: self.orbits.clone(),
        }
    }
}

/// Serializable dump: orbit count, dimension histogram, per-orbit data.
#[derive(Debug, Clone, Serialize)]
pub struct OrbitSummary {
    pub group_order: u64,
    pub orbit_count: usize,
    /// `(dimension, number of orbits)`, ascending.
    pub dimension_histogram: Vec<(u64, usize)>,
    pub r_g: usize,
    pub orbits: Vec<Orbit>,
}

/// Rank over `F_p` of the central restrictions of the given orbits.
pub fn restriction_rank(table: &OrbitTable, p: u64, orbits: &[usize]) -> Result<usize> {
    let fp = FiniteField::new(p, 1)?;
    let rows: Vec<Vec<u32>> = orbits.iter().map(|&i| table.orbits[i].central_restriction.clone()).collect();
    if table.r_g() == 0 {
        return Ok(0);
    }
    Ok(fp.rank(&rows))
}
