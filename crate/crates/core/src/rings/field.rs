use super::poly_fp::{self, first_irreducible};
use super::FiniteRing;
use crate::error::{Error, Result};

const TABLE_LIMIT: u64 = 1 << 16;
const ADD_TABLE_LIMIT: u64 = 1024;

/// The finite field `F_q`, `q = p^f`, realized as `F_p[t]/(modulus)`.
///
/// Elements are `u32` codes `c_0 + c_1 p + ... + c_{f-1} p^{f-1}` holding the coefficients of
/// `c_0 + c_1 t + ... + c_{f-1} t^{f-1}`.
#[derive(Debug, Clone)]
pub struct FiniteField {
    p: u32,
    f: u32,
    q: u32,
    modulus: Vec<u64>,
    log: Vec<u32>,
    exp: Vec<u32>,
    add_table: Vec<u32>,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl FiniteField {
    pub fn new(p: u64, f: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::Parameter(format!("{p} is not prime")));
        }
        if f == 0 {
            return Err(Error::Parameter("extension degree must be positive".into()));
        }
        let q = p
            .checked_pow(f)
            .filter(|&q| q < (1u64 << 31))
            .ok_or_else(|| Error::Parameter(format!("field of order {p}^{f} is too large")))?;
        let modulus = first_irreducible(p, f);
        let mut field = FiniteField {
            p: p as u32,
            f,
            q: q as u32,
            modulus,
            log: Vec::new(),
            exp: Vec::new(),
            add_table: Vec::new(),
        };
        if f > 1 && q <= TABLE_LIMIT {
            field.build_log_tables();
            if q <= ADD_TABLE_LIMIT {
                let qq = q as usize;
                let mut t = vec![0u32; qq * qq];
                for a in 0..qq {
                    for b in 0..qq {
                        t[a * qq + b] = field.add_digits(a as u32, b as u32);
                    }
                }
                field.add_table = t;
            }
        }
        Ok(field)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn f(&self) -> u32 {
        self.f
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// The defining polynomial, lowest coefficient first (monic of degree `f`).
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    fn digits(&self, mut a: u32) -> Vec<u64> {
        let mut d = Vec::with_capacity(self.f as usize);
        for _ in 0..self.f {
            d.push((a % self.p) as u64);
            a /= self.p;
        }
        d
    }

    fn from_digits(&self, d: &[u64]) -> u32 {
        d.iter().rev().fold(0u32, |acc, &x| acc * self.p + x as u32)
    }

    fn add_digits(&self, mut a: u32, mut b: u32) -> u32 {
        let mut out = 0u32;
        let mut scale = 1u32;
        for _ in 0..self.f {
            let s = (a % self.p + b % self.p) % self.p;
            out += s * scale;
            scale = scale.wrapping_mul(self.p);
            a /= self.p;
            b /= self.p;
        }
        out
    }

    fn neg_digits(&self, mut a: u32) -> u32 {
        let mut out = 0u32;
        let mut scale = 1u32;
        for _ in 0..self.f {
            let s = (self.p - a % self.p) % self.p;
            out += s * scale;
            scale = scale.wrapping_mul(self.p);
            a /= self.p;
        }
        out
    }

    fn mul_poly(&self, a: u32, b: u32) -> u32 {
        let p = self.p as u64;
        let prod = poly_fp::mul(&self.digits(a), &self.digits(b), p);
        let r = poly_fp::rem(&prod, &self.modulus, p);
        let mut d = r;
        d.resize(self.f as usize, 0);
        self.from_digits(&d)
    }

    fn build_log_tables(&mut self) {
        let order = self.q as u64 - 1;
        let factors = prime_factors(order);
        let gen = (2..self.q)
            .find(|&g| factors.iter().all(|&r| self.pow_slow(g, order / r) != 1))
            .unwrap_or(1);
        let mut exp = vec![0u32; order as usize];
        let mut log = vec![0u32; self.q as usize];
        let mut x = 1u32;
        for (i, slot) in exp.iter_mut().enumerate() {
            *slot = x;
            log[x as usize] = i as u32;
            x = self.mul_poly(x, gen);
        }
        self.exp = exp;
        self.log = log;
    }

    fn pow_slow(&self, mut b: u32, mut e: u64) -> u32 {
        let mut r = 1u32;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul_poly(r, b);
            }
            b = self.mul_poly(b, b);
            e >>= 1;
        }
        r
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        if self.f == 1 {
            let s = a + b;
            if s >= self.p {
                s - self.p
            } else {
                s
            }
        } else if !self.add_table.is_empty() {
            self.add_table[a as usize * self.q as usize + b as usize]
        } else {
            self.add_digits(a, b)
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if self.f == 1 {
            if a == 0 {
                0
            } else {
                self.p - a
            }
        } else {
            self.neg_digits(a)
        }
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if self.f == 1 {
            ((a as u64 * b as u64) % self.p as u64) as u32
        } else if a == 0 || b == 0 {
            0
        } else if !self.log.is_empty() {
            let s = self.log[a as usize] as u64 + self.log[b as usize] as u64;
            self.exp[(s % (self.q as u64 - 1)) as usize]
        } else {
            self.mul_poly(a, b)
        }
    }

    pub fn pow(&self, mut b: u32, mut e: u64) -> u32 {
        let mut r = 1u32;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        r
    }

    /// Multiplicative inverse; `a` must be nonzero.
    pub fn inv(&self, a: u32) -> u32 {
        assert!(a != 0, "inverse of zero");
        if !self.log.is_empty() {
            let l = self.log[a as usize];
            self.exp[((self.q - 1 - l) % (self.q - 1)) as usize]
        } else {
            self.pow(a, self.q as u64 - 2)
        }
    }

    /// Image of an integer under `Z -> F_p -> F_q`.
    pub fn from_i64(&self, n: i64) -> u32 {
        n.rem_euclid(self.p as i64) as u32
    }

    /// Rank of a matrix (rows of equal length) by Gaussian elimination.
    pub fn rank(&self, m: &[Vec<u32>]) -> usize {
        let mut a: Vec<Vec<u32>> = m.to_vec();
        self.rank_in_place(&mut a)
    }

    pub fn rank_in_place(&self, a: &mut [Vec<u32>]) -> usize {
        let rows = a.len();
        let cols = a.first().map_or(0, |r| r.len());
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(piv) = (r..rows).find(|&i| a[i][c] != 0) else { continue };
            a.swap(r, piv);
            let inv = self.inv(a[r][c]);
            for i in r + 1..rows {
                if a[i][c] != 0 {
                    let factor = self.mul(a[i][c], inv);
                    for j in c..cols {
                        let t = self.mul(factor, a[r][j]);
                        a[i][j] = self.sub(a[i][j], t);
                    }
                }
            }
            r += 1;
        }
        r
    }

    /// Field trace `F_q -> F_p` of an element.
    pub fn trace(&self, a: u32) -> u32 {
        let mut s = 0u32;
        let mut x = a;
        for _ in 0..self.f {
            s = self.add(s, x);
            x = self.pow(x, self.p as u64);
        }
        s
    }
}

/// Rank of a matrix over `F_q` given as rows of element codes.
pub fn ff_rank(field: &FiniteField, m: &[Vec<u32>]) -> usize {
    field.rank(m)
}

pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

impl FiniteRing for FiniteField {
    type Elem = u32;

    fn prime(&self) -> u64 {
        self.p as u64
    }
    fn residue_degree(&self) -> u32 {
        self.f
    }
    fn ramification(&self) -> u32 {
        1
    }
    fn length(&self) -> u32 {
        1
    }
    fn size(&self) -> u64 {
        self.q as u64
    }
    fn zero(&self) -> u32 {
        0
    }
    fn one(&self) -> u32 {
        1
    }
    fn from_int(&self, n: i64) -> u32 {
        self.from_i64(n)
    }
    fn add(&self, a: &u32, b: &u32) -> u32 {
        FiniteField::add(self, *a, *b)
    }
    fn sub(&self, a: &u32, b: &u32) -> u32 {
        FiniteField::sub(self, *a, *b)
    }
    fn neg(&self, a: &u32) -> u32 {
        FiniteField::neg(self, *a)
    }
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        FiniteField::mul(self, *a, *b)
    }
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
    fn level(&self, a: &u32) -> u32 {
        u32::from(*a == 0)
    }
    fn unit_inverse(&self, a: &u32) -> Option<u32> {
        (*a != 0).then(|| self.inv(*a))
    }
    fn div_pi_pow(&self, a: &u32, k: u32) -> u32 {
        if k == 0 {
            *a
        } else {
            0
        }
    }
    fn element(&self, index: u64) -> u32 {
        index as u32
    }
    fn index(&self, a: &u32) -> u64 {
        *a as u64
    }
    fn residue_digits(&self, a: &u32, out: &mut Vec<u32>) {
        let mut x = *a;
        for _ in 0..self.f {
            out.push(x % self.p);
            x /= self.p;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_rank_examples() {
        let f5 = FiniteField::new(5, 1).unwrap();
        assert_eq!(f5.rank(&[vec![0, 1], vec![4, 0]]), 2);
        assert_eq!(f5.rank(&[vec![0, 0], vec![0, 0]]), 0);
        assert_eq!(f5.rank(&[vec![0, 1, 2], vec![4, 0, 0], vec![3, 0, 0]]), 2);
    }

    #[test]
    fn extension_field_axioms() {
        for (p, f) in [(2u64, 3u32), (3, 2), (5, 2), (7, 2), (3, 3)] {
            let k = FiniteField::new(p, f).unwrap();
            let q = k.q();
            for a in 0..q {
                assert_eq!(k.add(a, k.neg(a)), 0);
                assert_eq!(k.mul(a, 1), a);
                if a != 0 {
                    assert_eq!(k.mul(a, k.inv(a)), 1);
                    assert_eq!(k.pow(a, q as u64 - 1), 1);
                }
                for b in 0..q {
                    assert_eq!(k.mul(a, b), k.mul_poly(a, b));
                    assert_eq!(k.add(a, b), k.add_digits(a, b));
                    assert!(k.trace(a) < p as u32);
                }
            }
        }
    }

    #[test]
    fn non_prime_rejected() {
        assert!(FiniteField::new(6, 1).is_err());
    }
}
