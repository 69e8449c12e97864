//! Monic integer polynomials modulo primes: discriminants, factorization degree patterns,
//! and the sets of `n` for which `h mod p` has a root in `F_{p^n}`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::IntMatrix;
use crate::rings::is_prime;
use crate::rings::poly_fp::{self, Poly};

/// Monic polynomial with integer coefficients, constant term first.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MonicIntPoly {
    coeffs: Vec<i64>,
}

impl MonicIntPoly {
    pub fn new(coeffs: Vec<i64>) -> Result<Self> {
        let mut c = coeffs;
        while c.len() > 1 && c.last() == Some(&0) {
            c.pop();
        }
        if c.len() < 2 {
            return Err(Error::Parse("polynomial must have degree at least 1".into()));
        }
        if c.last() != Some(&1) {
            return Err(Error::Parse("polynomial must be monic".into()));
        }
        Ok(MonicIntPoly { coeffs: c })
    }

    /// Parses comma-separated coefficients, constant term first, e.g. `1,0,1` for `x^2+1`.
    pub fn parse(text: &str) -> Result<Self> {
        let coeffs = text
            .split(',')
            .map(|s| s.trim().parse::<i64>().map_err(|e| Error::Parse(format!("coefficient {s:?}: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        Self::new(coeffs)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coefficients(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn derivative(&self) -> Vec<i64> {
        self.coeffs.iter().enumerate().skip(1).map(|(i, &c)| c * i as i64).collect()
    }

    pub fn reduce(&self, p: u64) -> Poly {
        poly_fp::from_ints(&self.coeffs, p)
    }
}

impl fmt::Display for MonicIntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else if first { "" } else { "+" };
            let mag = c.unsigned_abs();
            let coeff = if mag == 1 && i > 0 { String::new() } else { mag.to_string() };
            let mono = match i {
                0 => String::new(),
                1 => "x".into(),
                _ => format!("x^{i}"),
            };
            write!(f, "{sign}{coeff}{mono}")?;
            first = false;
        }
        Ok(())
    }
}

/// `(-1)^{n(n-1)/2} Res(h, h')`, with the resultant as a Sylvester determinant.
pub fn discriminant(h: &MonicIntPoly) -> BigInt {
    let n = h.degree();
    let dh = h.derivative();
    let size = 2 * n - 1;
    let mut rows = Vec::with_capacity(size);
    let high_first = |c: &[i64]| -> Vec<i64> { c.iter().rev().copied().collect() };
    let hc = high_first(h.coefficients());
    let dc = high_first(&dh);
    for shift in 0..n - 1 {
        let mut r = vec![0i64; size];
        r[shift..shift + hc.len()].copy_from_slice(&hc);
        rows.push(r);
    }
    for shift in 0..n {
        let mut r = vec![0i64; size];
        r[shift..shift + dc.len()].copy_from_slice(&dc);
        rows.push(r);
    }
    let res = IntMatrix::from_i64_rows(size, &rows)
        .and_then(|m| m.det())
        .expect("Sylvester matrix is square");
    if (n * (n - 1) / 2) % 2 == 1 {
        -res
    } else {
        res
    }
}

/// Degrees of the irreducible factors of `h mod p`, with multiplicity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FactorReport {
    /// Ascending.
    pub degrees: Vec<usize>,
    /// `p | Disc(h)`.
    pub ramified: bool,
}

pub fn factor_degrees(h: &MonicIntPoly, p: u64) -> Result<FactorReport> {
    check_prime(p)?;
    let disc = discriminant(h);
    let mut degrees = Vec::new();
    for (g, mult) in poly_fp::squarefree_factorization(&h.reduce(p), p) {
        for (deg, count) in poly_fp::distinct_degree_counts(&g, p) {
            degrees.extend(std::iter::repeat(deg).take(count * mult));
        }
    }
    degrees.sort_unstable();
    Ok(FactorReport { degrees, ramified: divides(p, &disc) })
}

fn divides(p: u64, n: &BigInt) -> bool {
    n.is_multiple_of(&BigInt::from(p))
}

fn check_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::Parameter(format!("{p} is not prime")))
    }
}

/// Whether `h mod p` has a root in `F_{p^n}`: `gcd(h, x^{p^n} - x)` is nontrivial.
pub fn has_root_in(h: &MonicIntPoly, p: u64, n: u32) -> Result<bool> {
    check_prime(p)?;
    if n == 0 {
        return Err(Error::Parameter("n must be at least 1".into()));
    }
    let hb = h.reduce(p);
    let xq = poly_fp::frobenius_power_of_x(&hb, n, p);
    let diff = poly_fp::sub(&xq, &[0, 1], p);
    let g = poly_fp::gcd(&hb, &diff, p);
    Ok(poly_fp::degree(&g).unwrap_or(0) >= 1)
}

/// Minimal generators `{n_i}` of `S_p(h) = ⋃ n_i Z`: the distinct factor degrees with
/// multiples of smaller ones removed. Requires `p ∤ Disc(h)`.
pub fn sp_generators(h: &MonicIntPoly, p: u64) -> Result<Vec<usize>> {
    let report = factor_degrees(h, p)?;
    if report.ramified {
        return Err(Error::Ramified { p, disc: discriminant(h).to_string() });
    }
    let mut distinct = report.degrees.clone();
    distinct.dedup();
    let mut gens: Vec<usize> = Vec::new();
    for d in distinct {
        if !gens.iter().any(|g| d % g == 0) {
            gens.push(d);
        }
    }
    let max = *gens.iter().max().expect("degree ≥ 1");
    for n in 1..=2 * max {
        let expected = gens.iter().any(|g| n % g == 0);
        if has_root_in(h, p, n as u32)? != expected {
            return Err(Error::Invariant(format!(
                "root test in F_(p^{n}) disagrees with the factor degrees of {h} mod {p}"
            )));
        }
    }
    Ok(gens)
}

/// Primes up to `n` by the sieve of Eratosthenes.
pub fn primes_up_to(n: u64) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let n = n as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FrobeniusRow {
    pub p: u64,
    pub degrees: Vec<usize>,
    pub ramified: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct FrobeniusSample {
    pub rows: Vec<FrobeniusRow>,
    pub unramified: usize,
    /// Each degree pattern among unramified primes with its count and relative frequency.
    pub frequencies: Vec<(Vec<usize>, usize, f64)>,
}

pub fn frobenius_sample(h: &MonicIntPoly, p_max: u64) -> Result<FrobeniusSample> {
    if p_max < 2 {
        return Err(Error::Parameter("p_max must be at least 2".into()));
    }
    let rows: Vec<FrobeniusRow> = primes_up_to(p_max)
        .into_iter()
        .map(|p| {
            let r = factor_degrees(h, p)?;
            Ok(FrobeniusRow { p, degrees: r.degrees, ramified: r.ramified })
        })
        .collect::<Result<_>>()?;
    let mut counts: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    for r in rows.iter().filter(|r| !r.ramified) {
        *counts.entry(r.degrees.clone()).or_default() += 1;
    }
    let unramified: usize = counts.values().sum();
    let frequencies = counts
        .into_iter()
        .map(|(k, c)| {
            let freq = if unramified == 0 { 0.0 } else { c as f64 / unramified as f64 };
            (k, c, freq)
        })
        .collect();
    Ok(FrobeniusSample { rows, unramified, frequencies })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(c: &[i64]) -> MonicIntPoly {
        MonicIntPoly::new(c.to_vec()).unwrap()
    }

    #[test]
    fn discriminants() {
        assert_eq!(discriminant(&poly(&[1, 0, 1])), BigInt::from(-4));
        assert_eq!(discriminant(&poly(&[-2, 0, 0, 1])), BigInt::from(-108));
        assert_eq!(discriminant(&poly(&[7, 1])), BigInt::from(1));
    }

    #[test]
    fn degrees_and_roots() {
        let h = poly(&[1, 0, 1]);
        assert_eq!(factor_degrees(&h, 5).unwrap(), FactorReport { degrees: vec![1, 1], ramified: false });
        assert_eq!(factor_degrees(&h, 3).unwrap(), FactorReport { degrees: vec![2], ramified: false });
        assert_eq!(factor_degrees(&h, 2).unwrap(), FactorReport { degrees: vec![1, 1], ramified: true });
        assert!(has_root_in(&h, 3, 2).unwrap());
        assert!(!has_root_in(&h, 3, 3).unwrap());
        assert!(has_root_in(&poly(&[0, 3, 1]), 7, 1).unwrap());
        assert_eq!(sp_generators(&h, 5).unwrap(), vec![1]);
        assert_eq!(sp_generators(&h, 3).unwrap(), vec![2]);
        assert_eq!(sp_generators(&poly(&[-2, 0, 0, 1]), 7).unwrap(), vec![3]);
        assert!(matches!(sp_generators(&h, 2), Err(Error::Ramified { .. })));
    }

    #[test]
    fn parsing() {
        assert_eq!(MonicIntPoly::parse("1, 0, 1").unwrap().to_string(), "x^2+1");
        assert!(MonicIntPoly::parse("1,2").is_err());
        assert!(MonicIntPoly::parse("5").is_err());
        assert_eq!(primes_up_to(20), vec![2, 3, 5, 7, 11, 13, 17, 19]);
    }
}
