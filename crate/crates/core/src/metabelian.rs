//! Free metabelian nilpotent Lie rings `m_{n,c}` on generators `v_1..v_n`.
//!
//! Sequences are 1-based. The basis is `v_s = [v_{s1}, [v_{s2}, ..., [v_{s(k-1)}, v_{sk}]]]`
//! over the Hall sequences `s` of lengths `1..=c`: `s1 ≥ ... ≥ s(k-1) < sk`.

use num_integer::binomial;

use crate::error::{Error, Result};
use crate::fdim::{FdimResult, Method, RingParams, FLAG_SMALL_PRIME};
use crate::lie::LieAlgebraZ;
use crate::rings::{is_prime, FiniteField};

pub type HallSequence = Vec<usize>;

/// Decreasing sequences of length `k` over `[n]`, in lexicographic order.
pub fn decreasing_sequences(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(max: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for x in 1..=max {
            cur.push(x);
            rec(x, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, k, &mut Vec::with_capacity(k), &mut out);
    out
}

/// Hall sequences of length `k` over `[n]`, in lexicographic order.
pub fn hall_sequences(n: usize, k: usize) -> Vec<HallSequence> {
    if k == 1 {
        return (1..=n).map(|i| vec![i]).collect();
    }
    let mut out = Vec::new();
    for prefix in decreasing_sequences(n, k - 1) {
        let last = *prefix.last().expect("k ≥ 2");
        for y in last + 1..=n {
            let mut s = prefix.clone();
            s.push(y);
            out.push(s);
        }
    }
    out
}

pub fn is_hall(s: &[usize]) -> bool {
    match s.len() {
        0 => false,
        1 => true,
        k => s[..k - 1].windows(2).all(|w| w[0] >= w[1]) && s[k - 2] < s[k - 1],
    }
}

/// `#H(n, k)`: `n` for `k = 1`, else `(k-1) C(k+n-2, k)`.
pub fn hall_count(n: usize, k: usize) -> usize {
    if k == 1 {
        n
    } else {
        (k - 1) * binomial(k + n - 2, k)
    }
}

/// Expands the right-normed word `[v_{w1}, [..., [v_{w(K-1)}, v_{wK}]]]` (length ≥ 2) in the
/// Hall basis.
///
/// In a metabelian ring `[a, [a', a'']] = [a', [a, a'']]` for `a''` in the derived ring, so
/// the outer letters form a multiset `P` acting on the inner pair `(x, y)`. With `x < y` the
/// word is already Hall when `min P ≥ x`; otherwise, for `a = min P`, Jacobi gives
/// `[a, [x, y]] = [x, [a, y]] - [y, [a, x]]`, and both results are Hall.
pub fn normal_form(word: &[usize]) -> Vec<(HallSequence, i64)> {
    let k = word.len();
    assert!(k >= 2, "normal_form needs a word of length at least 2");
    let (mut x, mut y) = (word[k - 2], word[k - 1]);
    let mut sign = 1;
    if x == y {
        return Vec::new();
    }
    if x > y {
        std::mem::swap(&mut x, &mut y);
        sign = -1;
    }
    let mut prefix: Vec<usize> = word[..k - 2].to_vec();
    prefix.sort_unstable_by(|a, b| b.cmp(a));
    let hall = |mut outer: Vec<usize>, a: usize, b: usize| -> HallSequence {
        outer.sort_unstable_by(|u, v| v.cmp(u));
        outer.push(a);
        outer.push(b);
        outer
    };
    match prefix.last() {
        Some(&a) if a < x => {
            let mut rest = prefix.clone();
            rest.pop();
            let mut with_x = rest.clone();
            with_x.push(x);
            let mut with_y = rest;
            with_y.push(y);
            vec![(hall(with_x, a, y), sign), (hall(with_y, a, x), -sign)]
        }
        _ => vec![(hall(prefix, x, y), sign)],
    }
}

/// `[v_a, v_j]` for a Hall sequence `j`, truncated at class `c`.
pub fn metabelian_bracket(a: usize, j: &[usize], c: usize) -> Vec<(HallSequence, i64)> {
    if j.len() + 1 > c {
        return Vec::new();
    }
    let mut word = Vec::with_capacity(j.len() + 1);
    word.push(a);
    word.extend_from_slice(j);
    normal_form(&word)
}

/// Bracket of two Hall basis elements of `m_{n,c}`.
pub fn hall_bracket(s: &[usize], t: &[usize], c: usize) -> Vec<(HallSequence, i64)> {
    match (s.len(), t.len()) {
        (1, 1) => {
            if s[0] == t[0] || c < 2 {
                Vec::new()
            } else {
                normal_form(&[s[0], t[0]])
            }
        }
        (1, _) => metabelian_bracket(s[0], t, c),
        (_, 1) => metabelian_bracket(t[0], s, c).into_iter().map(|(h, k)| (h, -k)).collect(),
        _ => Vec::new(),
    }
}

/// The Hall basis of `m_{n,c}`: by length, then lexicographic.
pub fn hall_basis(n: usize, c: usize) -> Vec<HallSequence> {
    (1..=c).flat_map(|k| hall_sequences(n, k)).collect()
}

pub fn sequence_name(s: &[usize]) -> String {
    let parts: Vec<String> = s.iter().map(|x| x.to_string()).collect();
    if s.len() == 1 {
        format!("v{}", parts[0])
    } else {
        format!("v({})", parts.join(","))
    }
}

pub fn metabelian_algebra(n: usize, c: usize) -> Result<LieAlgebraZ> {
    if n < 2 || c < 2 {
        return Err(Error::Parameter(format!("m_(n,c) needs n ≥ 2 and c ≥ 2, got n = {n}, c = {c}")));
    }
    let basis = hall_basis(n, c);
    let pos = |h: &HallSequence| basis.binary_search_by(|b| (b.len(), b).cmp(&(h.len(), h))).ok();
    let mut brackets = Vec::new();
    for (i, s) in basis.iter().enumerate() {
        for (j, t) in basis.iter().enumerate().skip(i + 1) {
            let terms = hall_bracket(s, t, c);
            if terms.is_empty() {
                continue;
            }
            let mut v = Vec::with_capacity(terms.len());
            for (h, k) in terms {
                let idx = pos(&h).ok_or_else(|| Error::Invariant(format!("{h:?} is not a basis sequence")))?;
                v.push((idx, k));
            }
            brackets.push(((i, j), v));
        }
    }
    let names = basis.iter().map(|s| sequence_name(s)).collect();
    LieAlgebraZ::new(format!("m_{n}_{c}"), names, brackets)
}

/// The family `T_s = (Π_{k ≤ c-2} α_{s_k}) · (α_{s(c-1)} λ_{s_c - 1} - α_{s_c} λ_{s(c-1) - 1})`,
/// indexed by `H(n, c)`, for which the block of the commutator matrix with rows `H(n,1)` and
/// columns `H(n,c-1)` has rank at most one.
pub fn rank1_witness(field: &FiniteField, n: usize, c: usize, alphas: &[u32], lambdas: &[u32]) -> Result<Vec<u32>> {
    if c < 2 {
        return Err(Error::Parameter("c must be at least 2".into()));
    }
    if alphas.len() != n || lambdas.len() != n {
        return Err(Error::DimensionMismatch(format!("expected {n} alphas and {n} lambdas")));
    }
    Ok(hall_sequences(n, c)
        .iter()
        .map(|s| {
            let prod = s[..c - 2].iter().fold(1u32, |acc, &i| field.mul(acc, alphas[i - 1]));
            let (x, y) = (s[c - 2], s[c - 1]);
            let det = field.sub(field.mul(alphas[x - 1], lambdas[y - 1]), field.mul(alphas[y - 1], lambdas[x - 1]));
            field.mul(prod, det)
        })
        .collect())
}

/// Rows `H(n,1)`, columns `H(n,c-1)`: entry `(i, j)` is the linear form of `[v_i, v_j]` in the
/// top-degree variables `T_s` (`s ∈ H(n,c)`), evaluated at `t`.
pub fn rank1_submatrix(field: &FiniteField, n: usize, c: usize, t: &[u32]) -> Result<Vec<Vec<u32>>> {
    let top = hall_sequences(n, c);
    if t.len() != top.len() {
        return Err(Error::DimensionMismatch(format!("expected {} values of T", top.len())));
    }
    let cols = hall_sequences(n, c - 1);
    Ok((1..=n)
        .map(|i| {
            cols.iter()
                .map(|j| {
                    metabelian_bracket(i, j, c).iter().fold(0u32, |acc, (h, k)| {
                        let idx = top.binary_search(h).expect("bracket lands in H(n,c)");
                        field.add(acc, field.mul(field.from_i64(*k), t[idx]))
                    })
                })
                .collect()
        })
        .collect())
}

/// `(c-1) C(n+c-2, c) Σ_{ℓ<e} f p^{f(d-ℓ)}`.
pub fn metabelian_fdim(n: usize, c: usize, params: RingParams) -> Result<FdimResult> {
    let RingParams { p, f, e, d } = params;
    if n < 2 || c < 2 {
        return Err(Error::Parameter(format!("m_(n,c) needs n ≥ 2 and c ≥ 2, got n = {n}, c = {c}")));
    }
    if !is_prime(p) {
        return Err(Error::Parameter(format!("{p} is not prime")));
    }
    if p <= c as u64 {
        return Err(Error::Lazard { p, class: c });
    }
    if d < e {
        return Err(Error::Precondition(format!("closed form needs d ≥ e (d = {d}, e = {e})")));
    }
    let overflow = || Error::Parameter("value exceeds 128-bit range".into());
    let count = hall_count(n, c) as u128;
    let mut sum: u128 = 0;
    for l in 0..e {
        let term = (p as u128).checked_pow(f * (d - l)).ok_or_else(overflow)?;
        sum = sum.checked_add(term).ok_or_else(overflow)?;
    }
    let value = count
        .checked_mul(f as u128)
        .and_then(|x| x.checked_mul(sum))
        .ok_or_else(overflow)?;
    let mut flags = Vec::new();
    if p as u128 <= count || p <= c as u64 + 1 {
        flags.push(FLAG_SMALL_PRIME.to_string());
    }
    Ok(FdimResult {
        algebra: format!("m_{n}_{c}"),
        ring: params,
        value,
        method: Method::ClosedFormMetabelian,
        witness: Vec::new(),
        flags,
        fq_restricted_value: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sequences() {
        assert_eq!(hall_sequences(2, 3), vec![vec![1, 1, 2], vec![2, 1, 2]]);
        assert_eq!(decreasing_sequences(2, 2), vec![vec![1, 1], vec![2, 1], vec![2, 2]]);
        assert_eq!(hall_sequences(3, 2), vec![vec![1, 2], vec![1, 3], vec![2, 3]]);
    }

    #[test]
    fn bracket_examples() {
        assert_eq!(metabelian_bracket(1, &[3, 1, 2], 5), vec![(vec![3, 1, 1, 2], 1)]);
        assert_eq!(metabelian_bracket(1, &[3, 2, 3], 5), vec![(vec![3, 2, 1, 3], 1), (vec![3, 3, 1, 2], -1)]);
        assert!(hall_bracket(&[1, 2], &[1, 1, 2], 5).is_empty());
        assert!(metabelian_bracket(1, &[1, 2], 2).is_empty());
    }

    #[test]
    fn algebras() {
        let m23 = metabelian_algebra(2, 3).unwrap();
        assert_eq!(m23.rank(), 5);
        assert_eq!(m23.basis_names(), &["v1", "v2", "v(1,2)", "v(1,1,2)", "v(2,1,2)"]);
        assert_eq!(m23.validate().unwrap(), 3);
        let m22 = metabelian_algebra(2, 2).unwrap();
        assert_eq!(m22.rank(), 3);
        assert_eq!(m22.validate().unwrap(), 2);
    }

    #[test]
    fn closed_form() {
        let v = |n, c, p, f, e, d| metabelian_fdim(n, c, RingParams { p, f, e, d }).unwrap().value;
        assert_eq!(v(2, 3, 5, 1, 1, 1), 10);
        assert_eq!(v(2, 2, 5, 2, 1, 1), 50);
        assert_eq!(v(2, 3, 5, 1, 2, 2), 60);
        assert!(matches!(metabelian_fdim(2, 3, RingParams::field(3, 1)), Err(Error::Lazard { .. })));
    }

    #[test]
    fn rank1_example() {
        let f5 = FiniteField::new(5, 1).unwrap();
        let t = rank1_witness(&f5, 2, 3, &[1, 2], &[0, 1]).unwrap();
        assert_eq!(t, vec![1, 2]);
        let m = rank1_submatrix(&f5, 2, 3, &t).unwrap();
        assert_eq!(m, vec![vec![1], vec![2]]);
    }
}
