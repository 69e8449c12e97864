use smallvec::SmallVec;

use super::field::is_prime;
use super::poly_fp::first_irreducible;
use super::FiniteRing;
use crate::error::{Error, Result};

/// Element of a [`ChainRing`]: coefficient `j` of `c_i` lives at position `i * f + j`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RingElement {
    pub(crate) c: SmallVec<[u64; 8]>,
}

impl RingElement {
    /// Flat coefficient list (`c_{i,j}` at position `i * f + j`).
    pub fn coefficients(&self) -> &[u64] {
        &self.c
    }
}

/// Finite chain ring with parameters `(d, p, e, f)`, modelled as
/// `GR(p^m, f)[π] / (π^e - p, π^d)` where `GR` is the unramified Galois ring.
///
/// An element is `Σ_{i < min(e,d)} c_i π^i` with `c_i` reduced modulo `p^{m_i}`,
/// `m_i = ⌈(d - i)/e⌉`.
#[derive(Debug, Clone)]
pub struct ChainRing {
    p: u64,
    f: u32,
    e: u32,
    d: u32,
    len: usize,
    moduli: Vec<u64>,
    modulus: Vec<u64>,
    big_mod: u64,
    size: u64,
}

impl ChainRing {
    pub fn new(p: u64, f: u32, e: u32, d: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::Parameter(format!("{p} is not prime")));
        }
        if f == 0 || e == 0 || d == 0 {
            return Err(Error::Parameter("ring parameters f, e, d must be positive".into()));
        }
        if f > 16 {
            return Err(Error::Parameter("residue degree above 16 is not supported".into()));
        }
        let len = e.min(d) as usize;
        let exps: Vec<u32> = (0..len as u32).map(|i| (d - i).div_ceil(e)).collect();
        let moduli = exps
            .iter()
            .map(|&m| p.checked_pow(m))
            .collect::<Option<Vec<u64>>>()
            .filter(|m| m[0] < (1 << 31))
            .ok_or_else(|| Error::Parameter("coefficient modulus too large".into()))?;
        let size = (f as u64)
            .checked_mul(d as u64)
            .and_then(|fd| u32::try_from(fd).ok())
            .and_then(|fd| p.checked_pow(fd))
            .filter(|&s| s < (1u64 << 62))
            .ok_or_else(|| Error::Parameter(format!("ring of order {p}^({f}*{d}) is too large")))?;
        let modulus = first_irreducible(p, f);
        Ok(ChainRing { p, f, e, d, len, big_mod: moduli[0], moduli, modulus, size })
    }

    pub fn p(&self) -> u64 {
        self.p
    }
    pub fn f(&self) -> u32 {
        self.f
    }
    pub fn e(&self) -> u32 {
        self.e
    }
    pub fn d(&self) -> u32 {
        self.d
    }

    /// Monic lift of the residue field modulus, lowest coefficient first.
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    /// Number of stored π-adic coefficients, `min(e, d)`.
    pub fn num_coefficients(&self) -> usize {
        self.len
    }

    /// The modulus `p^{m_i}` of coefficient `i`.
    pub fn coefficient_modulus(&self, i: usize) -> u64 {
        self.moduli[i]
    }

    /// The uniformizer π.
    pub fn pi(&self) -> RingElement {
        if self.e == 1 {
            self.from_i64(self.p as i64)
        } else if self.d == 1 {
            self.zero_elem()
        } else {
            let mut x = self.zero_elem();
            x.c[self.f as usize] = 1;
            x
        }
    }

    fn zero_elem(&self) -> RingElement {
        RingElement { c: SmallVec::from_elem(0, self.len * self.f as usize) }
    }

    pub fn from_i64(&self, n: i64) -> RingElement {
        let mut x = self.zero_elem();
        x.c[0] = n.rem_euclid(self.big_mod as i64) as u64;
        x
    }

    /// Builds an element from `π`-adic coefficients, each a list of `f` integers.
    pub fn from_coefficients(&self, coeffs: &[Vec<i64>]) -> RingElement {
        let f = self.f as usize;
        let mut x = self.zero_elem();
        for (i, ci) in coeffs.iter().enumerate().take(self.len) {
            for (j, &v) in ci.iter().enumerate().take(f) {
                x.c[i * f + j] = v.rem_euclid(self.moduli[i] as i64) as u64;
            }
        }
        x
    }

    /// Product in the unramified part modulo `p^{m_0}`: `a * b mod (modulus)`.
    fn gr_mul(&self, a: &[u64], b: &[u64], out: &mut [u64; 16]) {
        let f = self.f as usize;
        let m = self.big_mod as u128;
        let mut acc = [0u128; 32];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                acc[i + j] = (acc[i + j] + x as u128 * y as u128) % m;
            }
        }
        for k in (f..2 * f - 1).rev() {
            let c = acc[k];
            if c == 0 {
                continue;
            }
            acc[k] = 0;
            for t in 0..f {
                let sub = c * self.modulus[t] as u128 % m;
                acc[k - f + t] = (acc[k - f + t] + m - sub) % m;
            }
        }
        for t in 0..f {
            out[t] = acc[t] as u64;
        }
    }

    pub fn mul_elems(&self, a: &RingElement, b: &RingElement) -> RingElement {
        let f = self.f as usize;
        let e = self.e as usize;
        let mut out = self.zero_elem();
        if f == 1 {
            for i in 0..self.len {
                let x = a.c[i];
                if x == 0 {
                    continue;
                }
                for j in 0..self.len {
                    let y = b.c[j];
                    if y == 0 {
                        continue;
                    }
                    let r = i + j;
                    let (q, pos) = (r / e, r % e);
                    if pos >= self.len {
                        continue;
                    }
                    let m = self.moduli[pos];
                    let Some(scale) = self.p_pow_below(q as u32, m) else { continue };
                    let prod = (x as u128 * y as u128 % m as u128) * scale as u128 % m as u128;
                    out.c[pos] = ((out.c[pos] as u128 + prod) % m as u128) as u64;
                }
            }
            return out;
        }
        let mut prod = [0u64; 16];
        for i in 0..self.len {
            let ai = &a.c[i * f..(i + 1) * f];
            if ai.iter().all(|&x| x == 0) {
                continue;
            }
            for j in 0..self.len {
                let bj = &b.c[j * f..(j + 1) * f];
                if bj.iter().all(|&x| x == 0) {
                    continue;
                }
                let r = i + j;
                let (q, pos) = (r / e, r % e);
                if pos >= self.len {
                    continue;
                }
                let m = self.moduli[pos];
                let Some(scale) = self.p_pow_below(q as u32, m) else { continue };
                self.gr_mul(ai, bj, &mut prod);
                for t in 0..f {
                    let v = (prod[t] % m) as u128 * scale as u128 % m as u128;
                    let slot = &mut out.c[pos * f + t];
                    *slot = ((*slot as u128 + v) % m as u128) as u64;
                }
            }
        }
        out
    }

    /// `p^k` if it is nonzero modulo `m`, else `None`.
    fn p_pow_below(&self, k: u32, m: u64) -> Option<u64> {
        let v = self.p.checked_pow(k)?;
        (v < m).then_some(v)
    }

    fn valuation_u64(&self, mut x: u64) -> u32 {
        let mut v = 0;
        while x % self.p == 0 {
            x /= self.p;
            v += 1;
        }
        v
    }

    pub fn level_of(&self, x: &RingElement) -> u32 {
        let f = self.f as usize;
        let mut best = self.d;
        for i in 0..self.len {
            let v = x.c[i * f..(i + 1) * f]
                .iter()
                .filter(|&&c| c != 0)
                .map(|&c| self.valuation_u64(c))
                .min();
            if let Some(v) = v {
                best = best.min(i as u32 + self.e * v);
            }
        }
        best
    }

    pub fn pow_elem(&self, x: &RingElement, mut k: u64) -> RingElement {
        let mut result = self.from_i64(1);
        let mut base = x.clone();
        while k > 0 {
            if k & 1 == 1 {
                result = self.mul_elems(&result, &base);
            }
            base = self.mul_elems(&base, &base);
            k >>= 1;
        }
        result
    }

    /// Order of the unit group, `p^{fd} - p^{f(d-1)}`.
    pub fn unit_group_order(&self) -> u64 {
        self.size - self.size / self.p.pow(self.f)
    }

    /// A preimage of `x` under multiplication by π (requires `level(x) ≥ 1` to be exact).
    pub fn div_pi(&self, x: &RingElement) -> RingElement {
        let f = self.f as usize;
        let mut out = self.zero_elem();
        for i in 1..self.len {
            for t in 0..f {
                out.c[(i - 1) * f + t] = x.c[i * f + t] % self.moduli[i - 1];
            }
        }
        let top = self.e as usize - 1;
        if top < self.len {
            for t in 0..f {
                let v = x.c[t] / self.p;
                let slot = &mut out.c[top * f + t];
                *slot = (*slot + v) % self.moduli[top];
            }
        }
        out
    }

    /// The element `c_{i,j}` reduced modulo `p`, for `i < e`, as `F_p` digits of `x mod π^e`.
    pub fn residue_digits_of(&self, x: &RingElement, out: &mut Vec<u32>) {
        let f = self.f as usize;
        let k = (self.e as usize).min(self.len);
        for i in 0..k {
            for t in 0..f {
                out.push((x.c[i * f + t] % self.p) as u32);
            }
        }
        for _ in k..self.e as usize {
            for _ in 0..f {
                out.push(0);
            }
        }
    }
}

impl FiniteRing for ChainRing {
    type Elem = RingElement;

    fn prime(&self) -> u64 {
        self.p
    }
    fn residue_degree(&self) -> u32 {
        self.f
    }
    fn ramification(&self) -> u32 {
        self.e
    }
    fn length(&self) -> u32 {
        self.d
    }
    fn size(&self) -> u64 {
        self.size
    }
    fn zero(&self) -> RingElement {
        self.zero_elem()
    }
    fn one(&self) -> RingElement {
        self.from_i64(1)
    }
    fn from_int(&self, n: i64) -> RingElement {
        self.from_i64(n)
    }
    fn add(&self, a: &RingElement, b: &RingElement) -> RingElement {
        let f = self.f as usize;
        let mut out = a.clone();
        for (k, slot) in out.c.iter_mut().enumerate() {
            let m = self.moduli[k / f];
            *slot = (*slot + b.c[k]) % m;
        }
        out
    }
    fn sub(&self, a: &RingElement, b: &RingElement) -> RingElement {
        let f = self.f as usize;
        let mut out = a.clone();
        for (k, slot) in out.c.iter_mut().enumerate() {
            let m = self.moduli[k / f];
            *slot = (*slot + m - b.c[k]) % m;
        }
        out
    }
    fn neg(&self, a: &RingElement) -> RingElement {
        let f = self.f as usize;
        let mut out = a.clone();
        for (k, slot) in out.c.iter_mut().enumerate() {
            let m = self.moduli[k / f];
            *slot = (m - *slot) % m;
        }
        out
    }
    fn mul(&self, a: &RingElement, b: &RingElement) -> RingElement {
        self.mul_elems(a, b)
    }
    fn is_zero(&self, a: &RingElement) -> bool {
        a.c.iter().all(|&x| x == 0)
    }
    fn level(&self, a: &RingElement) -> u32 {
        self.level_of(a)
    }
    fn unit_inverse(&self, a: &RingElement) -> Option<RingElement> {
        if self.level_of(a) != 0 {
            return None;
        }
        Some(self.pow_elem(a, self.unit_group_order() - 1))
    }
    fn div_pi_pow(&self, a: &RingElement, k: u32) -> RingElement {
        let mut x = a.clone();
        for _ in 0..k {
            x = self.div_pi(&x);
        }
        x
    }
    fn element(&self, mut index: u64) -> RingElement {
        let f = self.f as usize;
        let mut x = self.zero_elem();
        for (k, slot) in x.c.iter_mut().enumerate() {
            let m = self.moduli[k / f];
            *slot = index % m;
            index /= m;
        }
        x
    }
    fn index(&self, a: &RingElement) -> u64 {
        let f = self.f as usize;
        let mut idx = 0u64;
        for k in (0..a.c.len()).rev() {
            idx = idx * self.moduli[k / f] + a.c[k];
        }
        idx
    }
    fn residue_digits(&self, a: &RingElement, out: &mut Vec<u32>) {
        self.residue_digits_of(a, out)
    }
}
