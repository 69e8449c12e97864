use serde::{Deserialize, Serialize};

/// Parameters `(p, f, e, d)` of a finite chain ring; a field has `e = d = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RingParams {
    pub p: u64,
    pub f: u32,
    pub e: u32,
    pub d: u32,
}

impl RingParams {
    pub fn field(p: u64, f: u32) -> Self {
        RingParams { p, f, e: 1, d: 1 }
    }

    pub fn is_field(&self) -> bool {
        self.e == 1 && self.d == 1
    }

    /// `q = p^f`, the residue field size.
    pub fn q(&self) -> u64 {
        self.p.pow(self.f)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    EngineField,
    EngineRing,
    ClosedFormPattern,
    ClosedFormMetabelian,
    Oracle,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::EngineField => "engine-field",
            Method::EngineRing => "engine-ring",
            Method::ClosedFormPattern => "closed-form-pattern",
            Method::ClosedFormMetabelian => "closed-form-metabelian",
            Method::Oracle => "oracle",
        }
    }
}

/// One selected evaluation point (engine methods) or orbit (oracle).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessEntry {
    /// Element indices of the point's coordinates, or the orbit representative's coordinates.
    pub point: Vec<u64>,
    /// The contribution is `multiplicity * p^weight_exponent`.
    pub weight_exponent: u32,
    pub multiplicity: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FdimResult {
    pub algebra: String,
    pub ring: RingParams,
    pub value: u128,
    pub method: Method,
    pub witness: Vec<WitnessEntry>,
    pub flags: Vec<String>,
    /// Ring engine only: the value when the selection is restricted to `F_q`-bases.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fq_restricted_value: Option<u128>,
}

impl FdimResult {
    /// Sum of the witness contributions.
    pub fn witness_total(&self) -> u128 {
        self.witness
            .iter()
            .map(|w| w.multiplicity as u128 * (self.ring.p as u128).pow(w.weight_exponent))
            .sum()
    }
}

/// Set when p is small relative to the algebra (p ≤ l1 + l2 or p ≤ class + 1), where the
/// formulas are only known to hold for sufficiently large p.
pub const FLAG_SMALL_PRIME: &str = "below-guaranteed-range";

/// Enumeration limits shared by the engines.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EngineConfig {
    /// Maximum number of evaluation points `|R|^m`.
    pub budget: u128,
}

pub const DEFAULT_BUDGET: u128 = 20_000_000;

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig { budget: DEFAULT_BUDGET }
    }
}
