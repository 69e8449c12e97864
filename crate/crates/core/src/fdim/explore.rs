//! Parameter sweeps and the polynomial shape `g(T) = l2 + Σ_i T^{a_i}` of field results.

use std::collections::BTreeMap;

use serde::Serialize;

use super::engine::fdim;
use super::result::{EngineConfig, FdimResult, RingParams};
use crate::commutator::build_commutator_data;
use crate::error::{Error, Result};
use crate::lie::LieAlgebraZ;

/// Exponents `a_1 ≤ ... ≤ a_{l1}` of `g(T) = l2 + Σ T^{a_i}`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct MuVector(pub Vec<u32>);

impl MuVector {
    /// `g(t)` for the given `l2`.
    pub fn eval(&self, l2: usize, t: u128) -> Option<u128> {
        self.0.iter().try_fold(l2 as u128, |acc, &a| acc.checked_add(t.checked_pow(a)?))
    }

    /// Renders `g` with like powers collected, highest first, e.g. `2T^2+T+1`.
    pub fn polynomial(&self, l2: usize) -> String {
        let mut counts: BTreeMap<u32, usize> = BTreeMap::new();
        for &a in &self.0 {
            *counts.entry(a).or_default() += 1;
        }
        *counts.entry(0).or_default() += l2;
        let mut terms = Vec::new();
        for (&a, &c) in counts.iter().rev() {
            if c == 0 {
                continue;
            }
            let coeff = if c == 1 && a > 0 { String::new() } else { c.to_string() };
            terms.push(match a {
                0 => coeff,
                1 => format!("{coeff}T"),
                _ => format!("{coeff}T^{a}"),
            });
        }
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join("+")
        }
    }
}

/// Recovers `μ` from one field value `f·g(q)`: `value/f - l2` is read in base `q`, digit `k`
/// counting the exponents equal to `k`. Requires `q > l1` so that the digits cannot carry.
pub fn fit_mu_value(l1: usize, l2: usize, n: usize, value: u128, q: u64, f: u32) -> Option<MuVector> {
    if (q as u128) <= l1 as u128 || value % f as u128 != 0 {
        return None;
    }
    let mut rest = (value / f as u128).checked_sub(l2 as u128)?;
    // digits give the exponents in ascending order
    let mut mu = Vec::new();
    let mut k = 0u32;
    while rest > 0 {
        let digit = rest % q as u128;
        if digit > 0 && 2 * k as usize > n {
            return None;
        }
        mu.extend(std::iter::repeat(k).take(digit as usize));
        rest /= q as u128;
        k += 1;
    }
    if mu.len() != l1 {
        return None;
    }
    Some(MuVector(mu))
}

#[derive(Debug, Clone, Serialize)]
pub struct FitCell {
    pub p: u64,
    pub f: u32,
    pub value: u128,
    pub mu: Option<MuVector>,
    pub polynomial: Option<String>,
}

/// Field results grouped by the fitted `μ`.
#[derive(Debug, Clone, Serialize)]
pub struct FitReport {
    pub l1: usize,
    pub l2: usize,
    pub cells: Vec<FitCell>,
    /// Each distinct `μ` with the `(p, f)` cells it fits.
    pub classes: Vec<(MuVector, Vec<(u64, u32)>)>,
    /// Cells no `μ` fits (or that are not field results).
    pub unfitted: Vec<(u64, u32)>,
}

pub fn fit_mu(g: &LieAlgebraZ, results: &[FdimResult]) -> Result<FitReport> {
    let (cd, _) = build_commutator_data(g)?;
    let mut cells = Vec::new();
    let mut classes: BTreeMap<MuVector, Vec<(u64, u32)>> = BTreeMap::new();
    let mut unfitted = Vec::new();
    for r in results {
        let RingParams { p, f, .. } = r.ring;
        let mu = if r.ring.is_field() {
            fit_mu_value(cd.l1, cd.l2, cd.n, r.value, r.ring.q(), f)
        } else {
            None
        };
        match &mu {
            Some(m) => classes.entry(m.clone()).or_default().push((p, f)),
            None => unfitted.push((p, f)),
        }
        let polynomial = mu.as_ref().map(|m| m.polynomial(cd.l2));
        cells.push(FitCell { p, f, value: r.value, mu, polynomial });
    }
    Ok(FitReport { l1: cd.l1, l2: cd.l2, cells, classes: classes.into_iter().collect(), unfitted })
}

/// Where a ring result sits between the proven bounds.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    /// `f·g(p^{fd})`.
    pub lower: u128,
    /// `f·Σ_{ℓ<e} g(p^{f(d-ℓ)})`, the conjectured exact value.
    pub upper: u128,
    pub value: u128,
    pub attains_upper: bool,
}

/// Checks `f·g(p^{fd}) ≤ value ≤ f·Σ_{ℓ<e} g(p^{f(d-ℓ)})`; a violation is an invariant error.
pub fn check_bounds(mu: &MuVector, l2: usize, result: &FdimResult) -> Result<BoundReport> {
    let RingParams { p, f, e, d } = result.ring;
    if d < e {
        return Err(Error::Precondition(format!("bounds need d ≥ e (d = {d}, e = {e})")));
    }
    let overflow = || Error::Parameter("bound exceeds 128-bit range".into());
    let g_at = |level: u32| -> Result<u128> {
        let t = (p as u128).checked_pow(f * level).ok_or_else(overflow)?;
        mu.eval(l2, t).and_then(|v| v.checked_mul(f as u128)).ok_or_else(overflow)
    };
    let lower = g_at(d)?;
    let mut upper = 0u128;
    for l in 0..e {
        upper = upper.checked_add(g_at(d - l)?).ok_or_else(overflow)?;
    }
    let value = result.value;
    if value < lower || value > upper {
        return Err(Error::Invariant(format!(
            "value {value} outside [{lower}, {upper}] for ring ({p}, {f}, {e}, {d})"
        )));
    }
    Ok(BoundReport { lower, upper, value, attains_upper: value == upper })
}

/// One cell of a sweep; failures are kept rather than aborting the sweep.
#[derive(Debug, Clone, Serialize)]
pub struct ExploreCell {
    pub ring: RingParams,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub result: Option<FdimResult>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

/// Runs the engine on every ring in `rings`.
pub fn explore(g: &LieAlgebraZ, rings: &[RingParams], cfg: &EngineConfig) -> Vec<ExploreCell> {
    rings
        .iter()
        .map(|&ring| match fdim(g, ring, cfg) {
            Ok(r) => ExploreCell { ring, result: Some(r), error: None },
            Err(e) => ExploreCell { ring, result: None, error: Some(e.to_string()) },
        })
        .collect()
}
