//! Faithful dimension by enumerating evaluation points of the commutator matrix.
//!
//! Over a field `F_q` a point `x ∈ F_q^m` of rank `r` contributes `q^{r/2}`, and a faithful
//! representation of minimal dimension corresponds to a minimum-weight set of points whose
//! central coordinates `x_1..x_{l1}` span `F_q^{l1}`. Over a chain ring the weight is read off
//! the kernel size of `F(x)` and independence is tested on the `F_p` digits of the central
//! coordinates modulo `p`.

use rayon::prelude::*;

use super::result::{EngineConfig, FdimResult, Method, RingParams, WitnessEntry, FLAG_SMALL_PRIME};
use crate::commutator::{build_commutator_data, CommutatorData, SymbolicSkewMatrix};
use crate::error::{Error, Result};
use crate::exact::IndependenceTracker;
use crate::lie::LieAlgebraZ;
use crate::rings::{kernel_exponent_in_place, ChainRing, FiniteField, FiniteRing};

const CHUNK: usize = 4096;

/// Dispatches to the field or ring engine.
pub fn fdim(g: &LieAlgebraZ, params: RingParams, cfg: &EngineConfig) -> Result<FdimResult> {
    if params.is_field() {
        fdim_field(g, params.p, params.f, cfg)
    } else {
        let ring = ChainRing::new(params.p, params.f, params.e, params.d)?;
        fdim_ring(g, &ring, cfg)
    }
}

/// Validation, Lazard check and commutator data shared by both engines.
fn prepare(g: &LieAlgebraZ, p: u64) -> Result<(usize, CommutatorData, SymbolicSkewMatrix)> {
    let class = g.validate()?;
    if p as u128 <= class as u128 {
        return Err(Error::Lazard { p, class });
    }
    let (cd, sym) = build_commutator_data(g)?;
    Ok((class, cd, sym))
}

fn flags_for(p: u64, class: usize, cd: &CommutatorData) -> Vec<String> {
    let small = p as u128 <= (cd.l1 + cd.l2) as u128 || p as u128 <= class as u128 + 1;
    if small {
        vec![FLAG_SMALL_PRIME.to_string()]
    } else {
        Vec::new()
    }
}

fn point_count(size: u64, m: usize, budget: u128) -> Result<u128> {
    let required = (size as u128).checked_pow(m as u32).unwrap_or(u128::MAX);
    if required > budget {
        return Err(Error::Budget { required, budget });
    }
    Ok(required)
}

/// Writes the base-`base` digits of `idx` into `out`, least significant first.
fn decode(mut idx: u64, base: u64, out: &mut [u64]) {
    for slot in out.iter_mut() {
        *slot = idx % base;
        idx /= base;
    }
}

/// Field engine over `F_{p^f}`.
///
/// Rank is invariant under scaling, so only projective representatives are evaluated: the
/// points whose last nonzero coordinate is 1, i.e. indices in `[q^k, 2q^k)` for `k < m`.
pub fn fdim_field(g: &LieAlgebraZ, p: u64, f: u32, cfg: &EngineConfig) -> Result<FdimResult> {
    let field = FiniteField::new(p, f)?;
    let (class, cd, sym) = prepare(g, p)?;
    let q = field.q() as u64;
    let params = RingParams::field(p, f);
    let flags = flags_for(p, class, &cd);
    let fw = f as u128;
    let mut result = FdimResult {
        algebra: g.name().to_string(),
        ring: params,
        value: fw * cd.l2 as u128,
        method: Method::EngineField,
        witness: Vec::new(),
        flags,
        fq_restricted_value: None,
    };
    if cd.l1 == 0 {
        return Ok(result);
    }
    point_count(q, cd.m, cfg.budget)?;
    let compiled = sym.compile(&field);
    let (m, l1) = (cd.m, cd.l1);
    let central_mask = q.pow(l1 as u32);
    let ranks: Vec<Vec<u8>> = (0..m)
        .map(|k| {
            let base = q.pow(k as u32);
            let mut seg = vec![u8::MAX; base as usize];
            seg.par_chunks_mut(CHUNK).enumerate().for_each(|(ci, chunk)| {
                let mut digits = vec![0u64; m];
                let mut point = vec![0u32; m];
                let mut mat = vec![vec![0u32; compiled.n]; compiled.n];
                for (t, slot) in chunk.iter_mut().enumerate() {
                    let idx = base + (ci * CHUNK + t) as u64;
                    if idx % central_mask == 0 {
                        continue; // central coordinates vanish: never selected
                    }
                    decode(idx, q, &mut digits);
                    for (x, &dgt) in point.iter_mut().zip(&digits) {
                        *x = dgt as u32;
                    }
                    compiled.evaluate_into(&field, &point, &mut mat);
                    *slot = field.rank_in_place(&mut mat) as u8;
                }
            });
            seg
        })
        .collect();

    let mut tracker = IndependenceTracker::new(&field, l1);
    let mut digits = vec![0u64; m];
    let mut proj = vec![0u32; l1];
    let mut sum: u128 = 0;
    'classes: for r in (0..=cd.n as u8).step_by(2) {
        for (k, seg) in ranks.iter().enumerate() {
            let base = q.pow(k as u32);
            for (t, &rk) in seg.iter().enumerate() {
                if rk != r {
                    continue;
                }
                let idx = base + t as u64;
                decode(idx, q, &mut digits);
                for (x, &dgt) in proj.iter_mut().zip(&digits) {
                    *x = dgt as u32;
                }
                if tracker.try_insert(&proj) {
                    let w = f * (r as u32 / 2);
                    sum += (q as u128).pow(r as u32 / 2);
                    result.witness.push(WitnessEntry { point: digits.clone(), weight_exponent: w, multiplicity: f });
                    if tracker.is_full() {
                        break 'classes;
                    }
                }
            }
        }
    }
    if !tracker.is_full() {
        return Err(Error::Invariant("central coordinates of the points do not span".into()));
    }
    result.value += fw * sum;
    Ok(result)
}

/// Ring engine over a chain ring `R` with `d ≥ e`.
///
/// `#ker F(x) = p^k` gives the weight exponent `(f d n - k)/2`. Independence is over `F_p` on
/// the digits `c_{i,j} mod p` (`i < e`, `j < f`) of the central coordinates, with target
/// dimension `f e l1`. The same scan restricted to `F_q`-independence of the `e l1` residue
/// codes is reported as `fq_restricted_value`.
pub fn fdim_ring(g: &LieAlgebraZ, ring: &ChainRing, cfg: &EngineConfig) -> Result<FdimResult> {
    let (p, f, e, d) = (ring.p(), ring.f(), ring.e(), ring.d());
    if d < e {
        return Err(Error::Precondition(format!("the ring engine needs d ≥ e (d = {d}, e = {e})")));
    }
    let (class, cd, sym) = prepare(g, p)?;
    let params = RingParams { p, f, e, d };
    let flags = flags_for(p, class, &cd);
    let (m, n, l1) = (cd.m, cd.n, cd.l1);
    let base_value = f as u128 * cd.l2 as u128 * e as u128;
    let mut result = FdimResult {
        algebra: g.name().to_string(),
        ring: params,
        value: base_value,
        method: Method::EngineRing,
        witness: Vec::new(),
        flags,
        fq_restricted_value: Some(base_value),
    };
    if l1 == 0 {
        return Ok(result);
    }
    let size = ring.size();
    let total = point_count(size, m, cfg.budget)? as usize;
    let compiled = sym.compile(ring);
    let full = f as u64 * d as u64 * n as u64;
    let central_mask = size.pow(l1 as u32);
    let mut weights = vec![u16::MAX; total];
    let bad_parity = std::sync::atomic::AtomicBool::new(false);
    weights.par_chunks_mut(CHUNK).enumerate().for_each(|(ci, chunk)| {
        let mut digits = vec![0u64; m];
        let mut mat = vec![vec![ring.zero(); n]; n];
        let mut point = vec![ring.zero(); m];
        for (t, slot) in chunk.iter_mut().enumerate() {
            let idx = (ci * CHUNK + t) as u64;
            if idx % central_mask == 0 {
                continue;
            }
            decode(idx, size, &mut digits);
            for (x, &dgt) in point.iter_mut().zip(&digits) {
                *x = ring.element(dgt);
            }
            compiled.evaluate_into(ring, &point, &mut mat);
            let k = kernel_exponent_in_place(ring, &mut mat, n, n);
            let twice = full - k;
            if twice % 2 == 1 {
                bad_parity.store(true, std::sync::atomic::Ordering::Relaxed);
            }
            *slot = (twice / 2) as u16;
        }
    });
    if bad_parity.into_inner() {
        return Err(Error::Invariant("kernel size of a skew matrix is not a square".into()));
    }

    let mut classes: Vec<u16> = weights.iter().copied().filter(|&w| w != u16::MAX).collect();
    classes.sort_unstable();
    classes.dedup();

    let fp = FiniteField::new(p, 1)?;
    let fq = FiniteField::new(p, f)?;
    let mut fp_tracker = IndependenceTracker::new(&fp, f as usize * e as usize * l1);
    let mut fq_tracker = IndependenceTracker::new(&fq, e as usize * l1);
    let mut digits = vec![0u64; m];
    let mut residue = Vec::with_capacity(f as usize * e as usize * l1);
    let mut codes = vec![0u32; e as usize * l1];
    let (mut fp_sum, mut fq_sum) = (0u128, 0u128);
    for &w in &classes {
        if fp_tracker.is_full() && fq_tracker.is_full() {
            break;
        }
        let contribution = (p as u128).pow(w as u32);
        for (idx, _) in weights.iter().enumerate().filter(|(_, &x)| x == w) {
            decode(idx as u64, size, &mut digits);
            residue.clear();
            for &dgt in &digits[..l1] {
                ring.residue_digits(&ring.element(dgt), &mut residue);
            }
            if !fp_tracker.is_full() && fp_tracker.try_insert(&residue) {
                fp_sum += contribution;
                result.witness.push(WitnessEntry { point: digits.clone(), weight_exponent: w as u32, multiplicity: 1 });
            }
            if !fq_tracker.is_full() {
                for (c, chunk) in codes.iter_mut().zip(residue.chunks(f as usize)) {
                    *c = chunk.iter().rev().fold(0u32, |acc, &x| acc * p as u32 + x);
                }
                if fq_tracker.try_insert(&codes) {
                    fq_sum += contribution;
                }
            }
            if fp_tracker.is_full() && fq_tracker.is_full() {
                break;
            }
        }
    }
    if !fp_tracker.is_full() || !fq_tracker.is_full() {
        return Err(Error::Invariant("central coordinates of the points do not span".into()));
    }
    result.value += fp_sum;
    result.fq_restricted_value = Some(base_value + f as u128 * fq_sum);
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn heisenberg_values() {
        let h = LieAlgebraZ::heisenberg();
        let cfg = EngineConfig::default();
        let v = |p, f, e, d| fdim(&h, RingParams { p, f, e, d }, &cfg).unwrap();
        assert_eq!(v(5, 1, 1, 1).value, 5);
        assert_eq!(v(7, 1, 1, 1).value, 7);
        assert_eq!(v(5, 2, 1, 1).value, 50);
        assert_eq!(v(5, 1, 1, 2).value, 25);
        assert_eq!(v(5, 1, 2, 2).value, 30);
        assert_eq!(v(5, 1, 2, 3).value, 150);
        let r = v(5, 1, 1, 1);
        assert_eq!(r.witness_total(), r.value);
        assert!(r.flags.is_empty());
        assert_eq!(v(3, 1, 1, 1).flags, vec![FLAG_SMALL_PRIME.to_string()]);
    }

    #[test]
    fn abelian_and_errors() {
        let a = LieAlgebraZ::abelian(3);
        let cfg = EngineConfig::default();
        assert_eq!(fdim(&a, RingParams::field(5, 2), &cfg).unwrap().value, 6);
        assert_eq!(fdim(&a, RingParams { p: 5, f: 1, e: 2, d: 2 }, &cfg).unwrap().value, 6);
        let h = LieAlgebraZ::heisenberg();
        assert!(matches!(fdim(&h, RingParams::field(2, 1), &cfg), Err(Error::Lazard { .. })));
        let tiny = EngineConfig { budget: 3 };
        assert!(matches!(fdim(&h, RingParams::field(5, 1), &tiny), Err(Error::Budget { .. })));
        assert!(matches!(
            fdim(&h, RingParams { p: 5, f: 1, e: 3, d: 2 }, &cfg),
            Err(Error::Precondition(_))
        ));
    }
}
