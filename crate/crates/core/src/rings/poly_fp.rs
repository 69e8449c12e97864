//! Dense univariate polynomials over a prime field `F_p`, coefficients lowest degree first.

pub type Poly = Vec<u64>;

fn mod_pow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, p);
        }
        b = mul_mod(b, b, p);
        e >>= 1;
    }
    r
}

#[inline]
pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(a % p != 0);
    mod_pow(a, p - 2, p)
}

pub fn trim(mut a: Poly) -> Poly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

/// Degree, with the zero polynomial reported as `None`.
pub fn degree(a: &[u64]) -> Option<usize> {
    a.iter().rposition(|&c| c != 0)
}

pub fn from_ints(coeffs: &[i64], p: u64) -> Poly {
    trim(coeffs.iter().map(|&c| c.rem_euclid(p as i64) as u64).collect())
}

pub fn add(a: &[u64], b: &[u64], p: u64) -> Poly {
    let n = a.len().max(b.len());
    trim((0..n)
        .map(|i| (a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0)) % p)
        .collect())
}

pub fn sub(a: &[u64], b: &[u64], p: u64) -> Poly {
    let n = a.len().max(b.len());
    trim((0..n)
        .map(|i| (a.get(i).copied().unwrap_or(0) + p - b.get(i).copied().unwrap_or(0) % p) % p)
        .collect())
}

pub fn mul(a: &[u64], b: &[u64], p: u64) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + mul_mod(x, y, p)) % p;
        }
    }
    trim(out)
}

/// Quotient and remainder; `b` must be nonzero.
pub fn divrem(a: &[u64], b: &[u64], p: u64) -> (Poly, Poly) {
    let db = degree(b).expect("division by the zero polynomial");
    let inv_lead = inv_mod(b[db], p);
    let mut r = trim(a.to_vec());
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut q = vec![0u64; r.len() - db];
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let c = mul_mod(r[dr], inv_lead, p);
        let shift = dr - db;
        q[shift] = c;
        for (k, &bk) in b[..=db].iter().enumerate() {
            let t = mul_mod(c, bk, p);
            r[shift + k] = (r[shift + k] + p - t) % p;
        }
        r = trim(r);
    }
    (trim(q), r)
}

pub fn rem(a: &[u64], b: &[u64], p: u64) -> Poly {
    divrem(a, b, p).1
}

pub fn make_monic(a: &[u64], p: u64) -> Poly {
    match degree(a) {
        None => Vec::new(),
        Some(d) => {
            let inv = inv_mod(a[d], p);
            a[..=d].iter().map(|&c| mul_mod(c, inv, p)).collect()
        }
    }
}

/// Monic greatest common divisor (zero if both inputs are zero).
pub fn gcd(a: &[u64], b: &[u64], p: u64) -> Poly {
    let mut x = trim(a.to_vec());
    let mut y = trim(b.to_vec());
    while !y.is_empty() {
        let r = rem(&x, &y, p);
        x = y;
        y = r;
    }
    make_monic(&x, p)
}

pub fn derivative(a: &[u64], p: u64) -> Poly {
    trim(a.iter().enumerate().skip(1).map(|(i, &c)| mul_mod(c, (i as u64) % p, p)).collect())
}

pub fn mul_mod_poly(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Poly {
    rem(&mul(a, b, p), m, p)
}

/// `a^e mod m`.
pub fn pow_mod(a: &[u64], mut e: u128, m: &[u64], p: u64) -> Poly {
    let mut result = rem(&[1], m, p);
    let mut base = rem(a, m, p);
    while e > 0 {
        if e & 1 == 1 {
            result = mul_mod_poly(&result, &base, m, p);
        }
        base = mul_mod_poly(&base, &base, m, p);
        e >>= 1;
    }
    result
}

/// `x^(p^k) mod m`, by `k` successive Frobenius powers.
pub fn frobenius_power_of_x(m: &[u64], k: u32, p: u64) -> Poly {
    let mut h = rem(&[0, 1], m, p);
    for _ in 0..k {
        h = pow_mod(&h, p as u128, m, p);
    }
    h
}

pub fn is_one(a: &[u64]) -> bool {
    a.len() == 1 && a[0] == 1
}

/// Irreducibility over `F_p` via gcd with `x^(p^i) - x` for `i ≤ deg/2`.
pub fn is_irreducible(m: &[u64], p: u64) -> bool {
    let Some(n) = degree(m) else { return false };
    if n == 0 {
        return false;
    }
    let m = make_monic(m, p);
    let x = vec![0, 1];
    let mut h = rem(&x, &m, p);
    for _ in 1..=n / 2 {
        h = pow_mod(&h, p as u128, &m, p);
        let g = gcd(&m, &sub(&h, &x, p), p);
        if !is_one(&g) {
            return false;
        }
    }
    true
}

/// First monic irreducible polynomial of degree `f` over `F_p`, searching coefficient codes
/// `c_0 + c_1 p + ... + c_{f-1} p^{f-1}` in increasing order.
pub fn first_irreducible(p: u64, f: u32) -> Poly {
    let f = f as usize;
    let total = p.checked_pow(f as u32).expect("search space fits in u64");
    for code in 0..total {
        let mut c = Vec::with_capacity(f + 1);
        let mut x = code;
        for _ in 0..f {
            c.push(x % p);
            x /= p;
        }
        c.push(1);
        if is_irreducible(&c, p) {
            return c;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

/// Square-free factorization: pairs `(g, multiplicity)` with `g` monic square-free.
pub fn squarefree_factorization(a: &[u64], p: u64) -> Vec<(Poly, usize)> {
    let f = make_monic(a, p);
    if degree(&f).unwrap_or(0) == 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    let fd = derivative(&f, p);
    let mut c = gcd(&f, &fd, p);
    let mut w = divrem(&f, &c, p).0;
    let mut i = 1;
    while !is_one(&w) {
        let y = gcd(&w, &c, p);
        let fac = divrem(&w, &y, p).0;
        if degree(&fac).unwrap_or(0) > 0 {
            out.push((fac, i));
        }
        w = y;
        c = divrem(&c, &w, p).0;
        i += 1;
    }
    if degree(&c).unwrap_or(0) > 0 {
        // c is a p-th power: take the p-th root coefficientwise (Frobenius is the identity on F_p)
        let root: Poly = c.iter().step_by(p as usize).copied().collect();
        for (g, j) in squarefree_factorization(&root, p) {
            out.push((g, j * p as usize));
        }
    }
    out
}

/// Distinct-degree factorization of a monic square-free polynomial: pairs `(degree, count)`.
pub fn distinct_degree_counts(a: &[u64], p: u64) -> Vec<(usize, usize)> {
    let mut g = make_monic(a, p);
    let mut out = Vec::new();
    let x = vec![0, 1];
    let mut h = rem(&x, &g, p);
    let mut i = 1;
    while degree(&g).unwrap_or(0) >= 2 * i {
        h = pow_mod(&h, p as u128, &g, p);
        let d = gcd(&g, &sub(&h, &x, p), p);
        let dd = degree(&d).unwrap_or(0);
        if dd > 0 {
            out.push((i, dd / i));
            g = divrem(&g, &d, p).0;
            h = rem(&h, &g, p);
        }
        i += 1;
    }
    let dg = degree(&g).unwrap_or(0);
    if dg > 0 {
        out.push((dg, 1));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic() {
        let p = 5;
        let a = from_ints(&[1, 0, 1], p);
        let b = from_ints(&[-2, 1], p);
        let (q, r) = divrem(&a, &b, p);
        assert_eq!(add(&mul(&q, &b, p), &r, p), a);
        // x = 2 is a root of x^2 + 1 mod 5
        assert!(r.is_empty());
    }

    #[test]
    fn irreducibility() {
        assert!(is_irreducible(&[1, 0, 1], 3));
        assert!(!is_irreducible(&[1, 0, 1], 5));
        assert_eq!(first_irreducible(5, 1), vec![0, 1]);
        let m = first_irreducible(3, 2);
        assert_eq!(m.len(), 3);
        assert!(is_irreducible(&m, 3));
    }

    #[test]
    fn factorization_shapes() {
        // (x+1)^2 (x^2+1) over F_3
        let f = mul(&mul(&[1, 1], &[1, 1], 3), &[1, 0, 1], 3);
        let sff = squarefree_factorization(&f, 3);
        let mut degs = Vec::new();
        for (g, m) in sff {
            for (d, c) in distinct_degree_counts(&g, 3) {
                for _ in 0..c * m {
                    degs.push(d);
                }
            }
        }
        degs.sort();
        assert_eq!(degs, vec![1, 1, 2]);
    }
}
