//! Exact minimal faithful dimension by search over sums of irreducible representations.
//!
//! A sum of irreducibles of a p-group is faithful iff the common kernel meets the center
//! trivially, since every nontrivial normal subgroup of a p-group meets the center. The search
//! therefore tracks only kernels restricted to `Z(G)`, which is the same set as `Z(g_R)`.

use std::collections::HashMap;

use serde::Serialize;

use super::orbits::{coadjoint_orbits, decode, restriction_rank, OrbitTable};
use super::table::TableRing;
use crate::error::{Error, Result};
use crate::fdim::{FdimResult, Method, RingParams, WitnessEntry};
use crate::lie::LieAlgebraZ;
use crate::rings::FiniteRing;

#[derive(Debug, Clone, Serialize)]
pub struct OracleReport {
    pub result: FdimResult,
    /// `dim_{F_p} Ω_1(Z(G))`, the minimal number of irreducible summands.
    pub r_g: usize,
    /// Orbit indices of the optimal summands.
    pub chosen: Vec<usize>,
    /// The optimum has exactly `r_g` summands.
    pub uses_r_g_summands: bool,
    /// Their central restrictions are linearly independent over `F_p`.
    pub restrictions_independent: bool,
    pub orbit_count: usize,
}

type Bits = Vec<u64>;

fn bits_and(a: &Bits, b: &Bits) -> Bits {
    a.iter().zip(b).map(|(x, y)| x & y).collect()
}

/// Smallest set bit other than bit 0 (the identity).
fn first_nonidentity(a: &Bits) -> Option<usize> {
    for (w, &word) in a.iter().enumerate() {
        let word = if w == 0 { word & !1 } else { word };
        if word != 0 {
            return Some(w * 64 + word.trailing_zeros() as usize);
        }
    }
    None
}

fn has_bit(a: &Bits, i: usize) -> bool {
    a[i / 64] >> (i % 64) & 1 == 1
}

struct Candidate {
    orbit: usize,
    dim: u64,
    kernel: Bits,
}

struct Search<'a> {
    cands: &'a [Candidate],
    /// Central elements of order dividing `p`.
    omega: Bits,
    p: u64,
    min_dim: u64,
    best: u64,
    best_set: Vec<usize>,
    current: Vec<usize>,
}

impl Search<'_> {
    /// `dim_{F_p}` of `Ω_1` of the kernel. Each further summand lowers it by at most one, since
    /// its central character restricted to `Ω_1` has a kernel of codimension at most one.
    fn summands_needed(&self, kernel: &Bits) -> u64 {
        let mut count = bits_and(kernel, &self.omega).iter().map(|w| w.count_ones() as u64).sum::<u64>();
        let mut k = 0;
        while count > 1 {
            count /= self.p;
            k += 1;
        }
        k
    }

    fn run(&mut self, kernel: &Bits, partial: u64) {
        let need = self.summands_needed(kernel);
        if partial.saturating_add(need.saturating_mul(self.min_dim)) >= self.best {
            return;
        }
        // the cheapest completion after one more summand of dimension `c.dim`
        let rest = need.saturating_sub(1).saturating_mul(self.min_dim);
        let Some(z) = first_nonidentity(kernel) else {
            if partial < self.best {
                self.best = partial;
                self.best_set = self.current.clone();
            }
            return;
        };
        // some summand must act nontrivially on z; candidates are sorted by dimension
        for (ci, c) in self.cands.iter().enumerate() {
            if partial.saturating_add(c.dim).saturating_add(rest) >= self.best {
                break;
            }
            if has_bit(&c.kernel, z) {
                continue;
            }
            self.current.push(ci);
            let next = bits_and(kernel, &c.kernel);
            self.run(&next, partial + c.dim);
            self.current.pop();
        }
    }
}

pub fn fdim_bruteforce(g: &LieAlgebraZ, ring: &TableRing, budget: u64) -> Result<OracleReport> {
    let table = coadjoint_orbits(g, ring, budget)?;
    fdim_from_table(g, ring, &table)
}

pub fn fdim_from_table(g: &LieAlgebraZ, ring: &TableRing, table: &OrbitTable) -> Result<OracleReport> {
    let s = ring.size();
    let r = table.rank;
    let zlen = table.center.len();
    let words = zlen.div_ceil(64);
    let centers: Vec<Vec<u32>> = table
        .center
        .iter()
        .map(|&idx| {
            let mut z = vec![0u32; r];
            decode(idx, s, &mut z);
            z
        })
        .collect();

    // central kernel of each orbit; θ is constant on the orbit over central elements
    let mut best_by_kernel: HashMap<Bits, usize> = HashMap::new();
    let full: Bits = {
        let mut b = vec![0u64; words];
        for i in 0..zlen {
            b[i / 64] |= 1 << (i % 64);
        }
        b
    };
    for (oi, o) in table.orbits.iter().enumerate() {
        let mut k = vec![0u64; words];
        for (zi, z) in centers.iter().enumerate() {
            if ring.psi(ring.dot(&o.representative, z)) == 0 {
                k[zi / 64] |= 1 << (zi % 64);
            }
        }
        if k == full {
            continue;
        }
        best_by_kernel
            .entry(k)
            .and_modify(|cur| {
                let c = &table.orbits[*cur];
                if (o.dim, o.rep_index) < (c.dim, c.rep_index) {
                    *cur = oi;
                }
            })
            .or_insert(oi);
    }
    let mut cands: Vec<Candidate> = best_by_kernel
        .into_iter()
        .map(|(kernel, orbit)| Candidate { orbit, dim: table.orbits[orbit].dim, kernel })
        .collect();
    cands.sort_by_key(|c| (c.dim, table.orbits[c.orbit].rep_index));

    let p = ring.prime();
    let mut omega = vec![0u64; words];
    for (zi, z) in centers.iter().enumerate() {
        if z.iter().all(|&c| ring.times_p(c) == 0) {
            omega[zi / 64] |= 1 << (zi % 64);
        }
    }
    let min_dim = cands.first().map_or(1, |c| c.dim);
    let mut search =
        Search { cands: &cands, omega, p, min_dim, best: u64::MAX, best_set: Vec::new(), current: Vec::new() };
    search.run(&full, 0);
    if search.best == u64::MAX {
        return Err(Error::Invariant("no faithful sum of irreducibles exists".into()));
    }
    let mut chosen: Vec<usize> = search.best_set.iter().map(|&ci| cands[ci].orbit).collect();
    chosen.sort_by_key(|&o| table.orbits[o].rep_index);

    // the full kernels of the chosen summands must intersect trivially
    let mut x = vec![0u32; r];
    for idx in 1..table.group_order {
        decode(idx, s, &mut x);
        if chosen.iter().all(|&o| table.kernel_contains(ring, o, &x)) {
            return Err(Error::Invariant(format!("element {idx} lies in every chosen kernel")));
        }
    }

    let r_g = table.r_g();
    let rank = restriction_rank(table, p, &chosen)?;
    let witness = chosen
        .iter()
        .map(|&o| {
            let orb = &table.orbits[o];
            WitnessEntry {
                point: orb.representative.iter().map(|&c| c as u64).collect(),
                weight_exponent: orb.dim_exponent,
                multiplicity: 1,
            }
        })
        .collect();
    let params = RingParams { p, f: ring.residue_degree(), e: 1, d: ring.length() };
    Ok(OracleReport {
        result: FdimResult {
            algebra: g.name().to_string(),
            ring: params,
            value: search.best as u128,
            method: Method::Oracle,
            witness,
            flags: Vec::new(),
            fq_restricted_value: None,
        },
        r_g,
        uses_r_g_summands: chosen.len() == r_g,
        restrictions_independent: rank == chosen.len(),
        chosen,
        orbit_count: table.orbits.len(),
    })
}

/// Oracle for ring parameters; only unramified rings (`e = 1`) are supported.
pub fn oracle_fdim(g: &LieAlgebraZ, params: RingParams, budget: u64) -> Result<OracleReport> {
    let ring = TableRing::from_params(params.p, params.f, params.e, params.d)?;
    fdim_bruteforce(g, &ring, budget)
}
