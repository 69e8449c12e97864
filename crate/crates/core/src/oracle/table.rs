use super::super::rings::{ChainRing, FiniteRing};
use crate::error::{Error, Result};

/// Largest ring the oracle tabulates; `size²` entries per operation table.
pub const MAX_TABLE_RING: u64 = 1024;

/// An unramified chain ring `GR(p^d, f)` (including `F_q` and `Z/p^d`) with elements as
/// indices and all arithmetic tabulated, plus the additive character `ψ = Tr` to `Z/p^d`.
#[derive(Debug, Clone)]
pub struct TableRing {
    chain: ChainRing,
    size: u32,
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    inv: Vec<u32>,
    level: Vec<u8>,
    psi: Vec<u32>,
    pd: u32,
}

impl TableRing {
    pub fn new(chain: ChainRing) -> Result<Self> {
        if chain.e() != 1 {
            return Err(Error::UnsupportedRing(format!(
                "the oracle needs an unramified ring (e = 1), got e = {}",
                chain.e()
            )));
        }
        let s = chain.size();
        if s > MAX_TABLE_RING {
            return Err(Error::SizeLimit(format!("ring of order {s} exceeds the oracle limit {MAX_TABLE_RING}")));
        }
        let size = s as u32;
        let elems: Vec<_> = (0..s).map(|i| chain.element(i)).collect();
        let idx = |x: &_| chain.index(x) as u32;
        let n = size as usize;
        let mut add = vec![0u32; n * n];
        let mut mul = vec![0u32; n * n];
        for i in 0..n {
            for j in 0..n {
                add[i * n + j] = idx(&chain.add(&elems[i], &elems[j]));
                mul[i * n + j] = idx(&chain.mul(&elems[i], &elems[j]));
            }
        }
        let neg = elems.iter().map(|x| idx(&chain.neg(x))).collect();
        let inv = elems
            .iter()
            .map(|x| chain.unit_inverse(x).map_or(u32::MAX, |y| idx(&y)))
            .collect();
        let level = elems.iter().map(|x| chain.level(x) as u8).collect();

        // Tr(t^j) as the trace of multiplication by t^j on the basis 1, t, ..., t^{f-1}
        let f = chain.f() as usize;
        let pd = chain.coefficient_modulus(0);
        let basis: Vec<_> = (0..f)
            .map(|j| {
                let mut c = vec![0i64; f];
                c[j] = 1;
                chain.from_coefficients(&[c])
            })
            .collect();
        let traces: Vec<u64> = (0..f)
            .map(|j| {
                (0..f).fold(0u64, |acc, k| (acc + chain.mul(&basis[j], &basis[k]).coefficients()[k]) % pd)
            })
            .collect();
        let psi = elems
            .iter()
            .map(|x| {
                let c = x.coefficients();
                (0..f).fold(0u64, |acc, j| (acc + c[j] * traces[j]) % pd) as u32
            })
            .collect();
        Ok(TableRing { chain, size, add, mul, neg, inv, level, psi, pd: pd as u32 })
    }

    pub fn from_params(p: u64, f: u32, e: u32, d: u32) -> Result<Self> {
        Self::new(ChainRing::new(p, f, e, d)?)
    }

    pub fn chain(&self) -> &ChainRing {
        &self.chain
    }

    /// `p^d`, the order of the character values.
    pub fn character_modulus(&self) -> u32 {
        self.pd
    }

    /// `ψ(a) ∈ Z/p^d`.
    #[inline]
    pub fn psi(&self, a: u32) -> u32 {
        self.psi[a as usize]
    }

    #[inline]
    pub fn add_idx(&self, a: u32, b: u32) -> u32 {
        self.add[(a * self.size + b) as usize]
    }

    #[inline]
    pub fn mul_idx(&self, a: u32, b: u32) -> u32 {
        self.mul[(a * self.size + b) as usize]
    }

    /// `Σ a_i b_i`.
    pub fn dot(&self, a: &[u32], b: &[u32]) -> u32 {
        a.iter().zip(b).fold(0, |acc, (&x, &y)| if x == 0 || y == 0 { acc } else { self.add_idx(acc, self.mul_idx(x, y)) })
    }

    /// Element `t^j` (`t` the image of the residue field generator).
    pub fn t_power(&self, j: u32) -> u32 {
        let f = self.chain.f() as usize;
        let mut c = vec![0i64; f];
        c[j as usize] = 1;
        self.chain.index(&self.chain.from_coefficients(&[c])) as u32
    }

    /// `p · a`.
    pub fn times_p(&self, a: u32) -> u32 {
        let p = self.from_int(self.chain.p() as i64);
        self.mul_idx(p, a)
    }
}

impl FiniteRing for TableRing {
    type Elem = u32;

    fn prime(&self) -> u64 {
        self.chain.p()
    }
    fn residue_degree(&self) -> u32 {
        self.chain.f()
    }
    fn ramification(&self) -> u32 {
        1
    }
    fn length(&self) -> u32 {
        self.chain.d()
    }
    fn size(&self) -> u64 {
        self.size as u64
    }
    fn zero(&self) -> u32 {
        0
    }
    fn one(&self) -> u32 {
        self.chain.index(&self.chain.one()) as u32
    }
    fn from_int(&self, n: i64) -> u32 {
        self.chain.index(&self.chain.from_i64(n)) as u32
    }
    fn add(&self, a: &u32, b: &u32) -> u32 {
        self.add_idx(*a, *b)
    }
    fn sub(&self, a: &u32, b: &u32) -> u32 {
        self.add_idx(*a, self.neg[*b as usize])
    }
    fn neg(&self, a: &u32) -> u32 {
        self.neg[*a as usize]
    }
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        self.mul_idx(*a, *b)
    }
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
    fn level(&self, a: &u32) -> u32 {
        self.level[*a as usize] as u32
    }
    fn unit_inverse(&self, a: &u32) -> Option<u32> {
        let v = self.inv[*a as usize];
        (v != u32::MAX).then_some(v)
    }
    fn div_pi_pow(&self, a: &u32, k: u32) -> u32 {
        let x = self.chain.div_pi_pow(&self.chain.element(*a as u64), k);
        self.chain.index(&x) as u32
    }
    fn element(&self, index: u64) -> u32 {
        index as u32
    }
    fn index(&self, a: &u32) -> u64 {
        *a as u64
    }
    fn residue_digits(&self, a: &u32, out: &mut Vec<u32>) {
        self.chain.residue_digits(&self.chain.element(*a as u64), out)
    }
}
