use std::path::Path;

use fdim_core::commutator::build_commutator_data;
use fdim_core::dedekind::{factor_degrees, frobenius_sample, sp_generators, FrobeniusSample, MonicIntPoly};
use fdim_core::fdim::{
    check_bounds, explore as sweep, fdim as engine, fit_mu, BoundReport, EngineConfig, ExploreCell, FdimResult,
    FitReport, Method, MuVector, RingParams,
};
use fdim_core::lie::{AlgebraFile, LieAlgebraZ};
use fdim_core::metabelian::{metabelian_algebra, metabelian_fdim};
use fdim_core::oracle::{coadjoint_orbits, oracle_fdim, OrbitSummary, TableRing};
use fdim_core::pattern::{pattern_algebra, pattern_fdim, Poset};
use fdim_core::ErrorKind;
use serde::Serialize;

use crate::{Context, Failure, RingArgs, Source};

/// Every document a command can print.
#[derive(Serialize, Debug)]
#[serde(untagged)]
pub enum Output {
    Info(InfoReport),
    Fdim(FdimReport),
    Explore(ExploreReport),
    Splitting(SplittingReport),
    SplittingTable(SplittingTable),
    ValidateAlgebra(ValidateAlgebra),
    ValidatePoset(ValidatePoset),
    Algebra(AlgebraFile),
    Written(Written),
    Orbits(OrbitsReport),
}

type Outcome = Result<(Output, u8), Failure>;

/// A known closed form for the loaded algebra.
enum ClosedForm {
    Pattern(Poset),
    Metabelian(usize, usize),
}

fn load(ctx: &mut Context, src: &Source) -> Result<(LieAlgebraZ, Option<ClosedForm>), Failure> {
    if let Some(path) = &src.algebra {
        let text = ctx.read(path)?;
        Ok((LieAlgebraZ::from_json(&text)?, None))
    } else if let Some(path) = &src.pattern {
        let poset = Poset::from_json(&ctx.read(path)?)?;
        Ok((pattern_algebra(&poset), Some(ClosedForm::Pattern(poset))))
    } else {
        let nc = src.metabelian.as_deref().unwrap_or_default();
        let (n, c) = (nc[0], nc[1]);
        Ok((metabelian_algebra(n, c)?, Some(ClosedForm::Metabelian(n, c))))
    }
}

fn params(r: RingArgs) -> RingParams {
    RingParams { p: r.p, f: r.f, e: r.e, d: r.d }
}

fn warn_flags(res: &FdimResult) {
    for flag in &res.flags {
        eprintln!("warning: {}: {flag}", res.method.as_str());
    }
}

#[derive(Serialize, Debug)]
pub struct InfoReport {
    pub name: String,
    pub rank: usize,
    pub class: usize,
    pub center_rank: usize,
    pub derived_rank: usize,
    pub l1: usize,
    pub l2: usize,
    pub l3: usize,
    pub m: usize,
    pub n: usize,
    /// Exponent of the torsion of the derived ring modulo its central part.
    pub torsion_exponent: String,
    pub torsion: Vec<String>,
    pub matrix: String,
    pub summary: String,
}

pub fn info(ctx: &mut Context, path: &Path) -> Outcome {
    let g = LieAlgebraZ::from_json(&ctx.read(path)?)?;
    let class = g.validate()?;
    let s = g.structural_data()?;
    let (cd, f) = build_commutator_data(&g)?;
    let matrix = if cd.n == 0 { "empty".to_string() } else { f.to_string() };
    let summary = format!(
        "class {class}, l1={} l2={} m={} n={}, F{}",
        cd.l1,
        cd.l2,
        cd.m,
        cd.n,
        if cd.n == 0 { " empty".to_string() } else { format!("={matrix}") }
    );
    Ok((
        Output::Info(InfoReport {
            name: g.name().to_string(),
            rank: g.rank(),
            class,
            center_rank: s.center.rank(),
            derived_rank: s.derived.rank(),
            l1: cd.l1,
            l2: cd.l2,
            l3: cd.l3,
            m: cd.m,
            n: cd.n,
            torsion_exponent: cd.k.to_string(),
            torsion: cd.torsion.iter().map(|t| t.to_string()).collect(),
            matrix,
            summary,
        }),
        0,
    ))
}

#[derive(Serialize, Debug)]
pub struct Skipped {
    pub method: &'static str,
    pub reason: String,
}

#[derive(Serialize, Debug)]
pub struct OracleChecks {
    pub r_g: usize,
    pub orbit_count: usize,
    pub uses_r_g_summands: bool,
    pub restrictions_independent: bool,
}

#[derive(Serialize, Debug)]
pub struct FdimReport {
    pub algebra: String,
    pub ring: RingParams,
    pub value: u128,
    pub results: Vec<FdimResult>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleChecks>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub skipped: Vec<Skipped>,
    /// Present when more than one method ran.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub agreement: Option<bool>,
}

pub fn fdim(ctx: &mut Context, src: &Source, ring: RingArgs, oracle: bool, all_methods: bool) -> Outcome {
    let (g, closed) = load(ctx, src)?;
    let params = params(ring);
    let cfg = EngineConfig { budget: ctx.budgets.engine };
    let mut results = Vec::new();
    let mut skipped = Vec::new();

    if all_methods {
        match &closed {
            Some(form) => {
                let (method, res) = match form {
                    ClosedForm::Pattern(poset) => ("closed-form-pattern", pattern_fdim(poset, params)),
                    ClosedForm::Metabelian(n, c) => ("closed-form-metabelian", metabelian_fdim(*n, *c, params)),
                };
                match res {
                    Ok(r) => results.push(r),
                    Err(e) => skipped.push(Skipped { method, reason: e.to_string() }),
                }
            }
            None => skipped.push(Skipped { method: "closed-form", reason: "no closed form for this algebra".into() }),
        }
    }

    results.push(engine(&g, params, &cfg)?);

    let mut checks = None;
    if oracle || all_methods {
        match oracle_fdim(&g, params, ctx.budgets.oracle) {
            Ok(rep) => {
                checks = Some(OracleChecks {
                    r_g: rep.r_g,
                    orbit_count: rep.orbit_count,
                    uses_r_g_summands: rep.uses_r_g_summands,
                    restrictions_independent: rep.restrictions_independent,
                });
                results.push(rep.result);
            }
            Err(e) if oracle => return Err(e.into()),
            Err(e) => skipped.push(Skipped { method: "oracle", reason: e.to_string() }),
        }
    }

    results.iter().for_each(warn_flags);
    let engine_value = results
        .iter()
        .find(|r| matches!(r.method, Method::EngineField | Method::EngineRing))
        .map_or(0, |r| r.value);
    let agreement = (results.len() > 1).then(|| results.iter().all(|r| r.value == engine_value));
    let oracle_ok = checks.as_ref().map_or(true, |c| c.uses_r_g_summands && c.restrictions_independent);
    let mut code = 0;
    if agreement == Some(false) {
        let values: Vec<String> = results.iter().map(|r| format!("{}={}", r.method.as_str(), r.value)).collect();
        eprintln!("error: methods disagree: {}", values.join(", "));
        code = 4;
    }
    if !oracle_ok {
        eprintln!("error: the optimal orbit selection does not have the expected shape");
        code = 4;
    }
    Ok((
        Output::Fdim(FdimReport {
            algebra: g.name().to_string(),
            ring: params,
            value: engine_value,
            results,
            oracle: checks,
            skipped,
            agreement,
        }),
        code,
    ))
}

#[derive(Serialize, Debug)]
pub struct RingCell {
    pub ring: RingParams,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<u128>,
    /// `μ` fitted on the residue field, used for the bounds.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mu: Option<MuVector>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bounds: Option<BoundReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Serialize, Debug)]
pub struct ExploreReport {
    pub algebra: String,
    pub fields: Vec<ExploreCell>,
    pub fit: FitReport,
    /// One polynomial fits every field cell that was computed.
    pub single_class: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub rings: Vec<RingCell>,
}

pub fn explore(ctx: &mut Context, src: &Source, primes: &[u64], fs: &[u32], es: &[u32], ds: &[u32]) -> Outcome {
    let (g, _) = load(ctx, src)?;
    g.validate()?;
    let cfg = EngineConfig { budget: ctx.budgets.engine };
    let field_grid: Vec<RingParams> =
        primes.iter().flat_map(|&p| fs.iter().map(move |&f| RingParams::field(p, f))).collect();
    let fields = sweep(&g, &field_grid, &cfg);
    let ok: Vec<FdimResult> = fields.iter().filter_map(|c| c.result.clone()).collect();
    let fit = fit_mu(&g, &ok)?;
    let failed = fields.len() - ok.len();
    if failed > 0 {
        eprintln!("warning: {failed} field cell(s) failed and are marked in the table");
    }

    let mut rings = Vec::new();
    let mut violated = false;
    if !es.is_empty() || !ds.is_empty() {
        let es = if es.is_empty() { &[1][..] } else { es };
        let ds = if ds.is_empty() { &[1][..] } else { ds };
        for &p in primes {
            for &f in fs {
                let mu = fit.cells.iter().find(|c| c.p == p && c.f == f).and_then(|c| c.mu.clone());
                for &e in es {
                    for &d in ds {
                        let ring = RingParams { p, f, e, d };
                        if d < e || ring.is_field() {
                            continue;
                        }
                        let mut cell = RingCell { ring, value: None, mu: mu.clone(), bounds: None, error: None };
                        match engine(&g, ring, &cfg) {
                            Ok(res) => {
                                cell.value = Some(res.value);
                                if let Some(mu) = &mu {
                                    match check_bounds(mu, fit.l2, &res) {
                                        Ok(b) => cell.bounds = Some(b),
                                        Err(e) => {
                                            violated |= e.kind() == ErrorKind::Invariant;
                                            cell.error = Some(e.to_string());
                                        }
                                    }
                                }
                            }
                            Err(e) => cell.error = Some(e.to_string()),
                        }
                        rings.push(cell);
                    }
                }
            }
        }
    }
    if violated {
        eprintln!("error: a ring value lies outside the proven bounds");
    }
    Ok((
        Output::Explore(ExploreReport {
            algebra: g.name().to_string(),
            single_class: fit.classes.len() == 1 && fit.unfitted.is_empty(),
            fields,
            fit,
            rings,
        }),
        if violated { 4 } else { 0 },
    ))
}

#[derive(Serialize, Debug)]
pub struct SplittingReport {
    pub polynomial: String,
    pub coefficients: Vec<i64>,
    pub p: u64,
    pub degrees: Vec<usize>,
    pub ramified: bool,
    /// Degrees of the residue fields of the primes above `p` (unramified `p` only).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sp_generators: Option<Vec<usize>>,
}

#[derive(Serialize, Debug)]
pub struct SplittingTable {
    pub polynomial: String,
    pub coefficients: Vec<i64>,
    pub p_max: u64,
    #[serde(flatten)]
    pub sample: FrobeniusSample,
}

pub fn splitting(poly: &str, p: Option<u64>, p_max: Option<u64>) -> Outcome {
    let h = MonicIntPoly::parse(poly)?;
    let polynomial = h.to_string();
    let coefficients = h.coefficients().to_vec();
    if let Some(p) = p {
        let r = factor_degrees(&h, p)?;
        let sp = if r.ramified { None } else { Some(sp_generators(&h, p)?) };
        Ok((
            Output::Splitting(SplittingReport {
                polynomial,
                coefficients,
                p,
                degrees: r.degrees,
                ramified: r.ramified,
                sp_generators: sp,
            }),
            0,
        ))
    } else {
        let p_max = p_max.unwrap_or_default();
        let sample = frobenius_sample(&h, p_max)?;
        Ok((Output::SplittingTable(SplittingTable { polynomial, coefficients, p_max, sample }), 0))
    }
}

#[derive(Serialize, Debug)]
pub struct ValidateAlgebra {
    pub name: String,
    pub rank: usize,
    pub class: usize,
    pub valid: bool,
}

#[derive(Serialize, Debug)]
pub struct ValidatePoset {
    pub n: usize,
    /// Number of pairs `i ≺ j`, the rank of the pattern ring.
    pub pairs: usize,
    pub extreme_pairs: usize,
    pub max_alpha: usize,
    pub class: usize,
    pub valid: bool,
}

pub fn validate(ctx: &mut Context, path: &Path, poset: bool) -> Outcome {
    let text = ctx.read(path)?;
    if poset {
        let p = Poset::from_json(&text)?;
        let class = pattern_algebra(&p).validate()?;
        return Ok((
            Output::ValidatePoset(ValidatePoset {
                n: p.n(),
                pairs: p.pairs().len(),
                extreme_pairs: p.extreme_pairs().len(),
                max_alpha: p.max_alpha(),
                class,
                valid: true,
            }),
            0,
        ));
    }
    let g = LieAlgebraZ::from_json(&text)?;
    let class = g.validate()?;
    Ok((Output::ValidateAlgebra(ValidateAlgebra { name: g.name().to_string(), rank: g.rank(), class, valid: true }), 0))
}

#[derive(Serialize, Debug)]
pub struct Written {
    pub name: String,
    pub rank: usize,
    pub path: String,
}

fn emit(g: LieAlgebraZ, output: Option<&Path>) -> Outcome {
    match output {
        None => Ok((Output::Algebra(g.to_file()), 0)),
        Some(path) => {
            std::fs::write(path, g.to_json() + "\n")
                .map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
            Ok((Output::Written(Written { name: g.name().to_string(), rank: g.rank(), path: path.display().to_string() }), 0))
        }
    }
}

pub fn metabelian_gen(n: usize, c: usize, output: Option<&Path>) -> Outcome {
    emit(metabelian_algebra(n, c)?, output)
}

pub fn pattern_gen(ctx: &mut Context, poset: Option<&Path>, chain: Option<usize>, output: Option<&Path>) -> Outcome {
    let poset = match (poset, chain) {
        (Some(path), _) => Poset::from_json(&ctx.read(path)?)?,
        (None, Some(n)) => Poset::chain(n),
        (None, None) => return Err(Failure::usage("give a poset file or --chain")),
    };
    emit(pattern_algebra(&poset), output)
}

#[derive(Serialize, Debug)]
pub struct OrbitsReport {
    pub algebra: String,
    pub ring: RingParams,
    #[serde(flatten)]
    pub summary: OrbitSummary,
}

pub fn orbits(ctx: &mut Context, src: &Source, ring: RingArgs) -> Outcome {
    let (g, _) = load(ctx, src)?;
    let params = params(ring);
    let table_ring = TableRing::from_params(params.p, params.f, params.e, params.d)?;
    let table = coadjoint_orbits(&g, &table_ring, ctx.budgets.oracle)?;
    Ok((Output::Orbits(OrbitsReport { algebra: g.name().to_string(), ring: params, summary: table.summary() }), 0))
}
