//! Evaluation of manifest claims into run reports.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::algebra::series::TruncatedSeries;
use crate::fgl::{check_axioms, support_congruent, FglContext, FglError, FglMode};
use crate::hkr::brute::{count_splittings, count_subspaces};
use crate::hkr::{
    check_laws, coproduct_twist_check, enumerate_orbits, orbit_size_counts, socle_char_check, CharFn, HkrError,
    RepContext,
};
use crate::kring::cache::saturate_cached;
use crate::kring::classes::{divisor_relation_check, fix_report, soc_soc};
use crate::kring::indecomposable::indecomposable_quotient;
use crate::kring::qring::q_ring;
use crate::kring::{socle, Budget, KringError, QuotientAlgebra};
use crate::numerics::{gauss_binom, is_prime, ChromaticParams, NkTable, NumericsError};
use crate::ssmodel::{alpha_check, em_convergence, homology_vs_next_page, series_identities, Bounds, SsError};

use super::manifest::{CaseParams, Expectation, VerificationCase};
use super::CliError;

pub const CLAIMS: &[&str] = &[
    "fgl-axioms",
    "tanabe-dim",
    "socle-indecomposables",
    "soc-soc",
    "divisor-relation",
    "q-ring",
    "ss-homology",
    "ss-poincare",
    "ss-series",
    "ss-alpha",
    "nk-identities",
    "orbit-counts",
    "hc-twist",
    "coproduct-twist",
    "socle-char",
    "gauss-brute",
    "rho-compose",
];

pub const DEFAULT_PARAMS: (u64, u32, u32, u64) = (3, 1, 1, 4);

#[derive(Debug, Error)]
pub enum CaseError {
    #[error(transparent)]
    Fgl(#[from] FglError),
    #[error(transparent)]
    Kring(#[from] KringError),
    #[error(transparent)]
    Ss(#[from] SsError),
    #[error(transparent)]
    Hkr(#[from] HkrError),
    #[error(transparent)]
    Numerics(#[from] NumericsError),
    #[error("value {0} does not fit the machine word")]
    Overflow(String),
}

/// Run-dependent fields, kept apart so the rest of a report is reproducible.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Timing {
    pub wall_ms: u64,
    pub cache_hits: u32,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub case: String,
    pub claim: String,
    pub citation: String,
    pub params: CaseParams,
    /// Parameters were changed from the manifest, so exact expectations
    /// were not applied.
    pub overridden: bool,
    pub pass: bool,
    pub checks: BTreeMap<String, bool>,
    pub measured: Map<String, Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub timing: Timing,
}

/// A case with its parameters resolved and validated.
#[derive(Clone, Debug)]
pub struct PreparedCase {
    pub case: VerificationCase,
    pub params: CaseParams,
    pub chromatic: Option<ChromaticParams>,
    pub overridden: bool,
}

#[derive(Clone, Debug, Default)]
pub struct RunContext {
    pub cache_dir: Option<PathBuf>,
    pub budget: Option<u64>,
}

fn needs_chromatic(claim: &str) -> bool {
    !matches!(claim, "fgl-axioms" | "rho-compose" | "gauss-brute")
}

/// Apply flag overrides and validate; invalid parameters are reported
/// before anything runs.
pub fn prepare(case: &VerificationCase, overrides: &CaseParams) -> Result<PreparedCase, CliError> {
    if !CLAIMS.contains(&case.claim.as_str()) {
        return Err(CliError::Manifest(format!("case {} has unknown claim {}", case.id, case.claim)));
    }
    let mut params = case.params.clone();
    let overridden = params.overlay(overrides);
    let (p0, n0, r0, q0) = DEFAULT_PARAMS;
    let chromatic = if needs_chromatic(&case.claim) {
        params.p.get_or_insert(p0);
        params.n.get_or_insert(n0);
        params.r.get_or_insert(r0);
        params.q.get_or_insert(q0);
        let c = ChromaticParams::new(params.p.unwrap(), params.n.unwrap(), params.r.unwrap(), params.q.unwrap())
            .map_err(|e| CliError::InvalidParams(format!("{}: {e}", case.id)))?;
        Some(c)
    } else {
        None
    };
    if matches!(case.claim.as_str(), "fgl-axioms" | "rho-compose") {
        let p = *params.p.get_or_insert(p0);
        let n = *params.n.get_or_insert(n0);
        if !is_prime(p) || n == 0 {
            return Err(CliError::InvalidParams(format!("{}: need a prime p and n >= 1", case.id)));
        }
    }
    Ok(PreparedCase { case: case.clone(), params, chromatic, overridden })
}

#[derive(Default)]
struct Outcome {
    checks: BTreeMap<String, bool>,
    measured: Map<String, Value>,
    witness: Option<Value>,
    cache_hits: u32,
}

impl Outcome {
    fn check(&mut self, name: &str, ok: bool) {
        self.checks.insert(name.to_string(), ok);
    }

    fn measure(&mut self, name: &str, v: impl Serialize) {
        self.measured.insert(name.to_string(), serde_json::to_value(v).expect("serializable"));
    }

    fn witness_if_none(&mut self, v: Value) {
        if self.witness.is_none() {
            self.witness = Some(v);
        }
    }
}

pub fn run_case(prep: &PreparedCase, rc: &RunContext) -> RunReport {
    let start = Instant::now();
    let result = evaluate(prep, rc);
    let wall_ms = start.elapsed().as_millis() as u64;
    let case = &prep.case;
    let (mut outcome, error) = match result {
        Ok(o) => (o, None),
        Err(e) => (Outcome::default(), Some(e.to_string())),
    };
    if error.is_none() {
        apply_expectation(prep, &mut outcome);
    }
    let pass = error.is_none() && outcome.checks.values().all(|&b| b);
    if !pass && error.is_none() {
        let failed: Vec<&String> = outcome.checks.iter().filter(|(_, &b)| !b).map(|(k, _)| k).collect();
        outcome.witness_if_none(json!({ "failed_checks": failed }));
    }
    RunReport {
        case: case.id.clone(),
        claim: case.claim.clone(),
        citation: case.citation.clone(),
        params: prep.params.clone(),
        overridden: prep.overridden,
        pass,
        checks: outcome.checks,
        measured: outcome.measured,
        witness: outcome.witness,
        error,
        timing: Timing { wall_ms, cache_hits: outcome.cache_hits },
    }
}

fn apply_expectation(prep: &PreparedCase, o: &mut Outcome) {
    match &prep.case.expected {
        Expectation::Property => {}
        Expectation::Exact { field, value } => {
            if prep.overridden {
                return;
            }
            let got = o.measured.get(field).cloned().unwrap_or(Value::Null);
            let ok = got == *value;
            o.check("expected", ok);
            if !ok {
                o.witness = Some(json!({ "field": field, "expected": value, "measured": got }));
            }
        }
        Expectation::UnitMultiple { field } => {
            let p = prep.params.p.unwrap_or(DEFAULT_PARAMS.0);
            let got = o.measured.get(field).cloned().unwrap_or(Value::Null);
            let ok = got.as_u64().is_some_and(|x| x % p != 0);
            o.check("expected", ok);
            if !ok {
                o.witness = Some(json!({ "field": field, "measured": got }));
            }
        }
    }
}

fn budget(prep: &PreparedCase, rc: &RunContext) -> Budget {
    let secs = rc.budget.or(prep.params.budget);
    Budget { deadline: secs.map(|s| Instant::now() + Duration::from_secs(s)), ..Budget::default() }
}

/// The saturated Tanabe quotient through the cache, or an error if the
/// budget runs out first.
fn gl_ring(prep: &PreparedCase, rc: &RunContext, o: &mut Outcome) -> Result<QuotientAlgebra, CaseError> {
    let params = prep.chromatic.expect("validated");
    let d = prep.params.d.unwrap_or(params.p as usize);
    let (alg, report, hit) = saturate_cached(&params, d, budget(prep, rc), rc.cache_dir.as_deref())?;
    o.cache_hits += hit as u32;
    if !report.saturated() {
        return Err(KringError::Unsaturated { bound: report.bound, dim: alg.dim() }.into());
    }
    Ok(alg)
}

fn to_u64(x: &BigUint) -> Result<u64, CaseError> {
    u64::try_from(x).map_err(|_| CaseError::Overflow(x.to_string()))
}

fn evaluate(prep: &PreparedCase, rc: &RunContext) -> Result<Outcome, CaseError> {
    let mut o = Outcome::default();
    let cp = &prep.params;
    let params = prep.chromatic;
    match prep.case.claim.as_str() {
        "fgl-axioms" => {
            let (p, n) = (cp.p.unwrap(), cp.n.unwrap());
            let order = cp.trunc.unwrap_or(60);
            let ctx = FglContext::new(p, n, order, FglMode::ModP)?;
            let axioms = check_axioms(&ctx.sum_reduced()?, p);
            o.check("unit", axioms.unit);
            o.check("commutative", axioms.commutative);
            o.check("associative", axioms.associative);
            o.check("sum_support_mod_p_minus_1", axioms.support_mod_p_minus_1);
            o.measure("sum_support_mod_p", axioms.support_mod_p);
            let ps = ctx.m_series(p as i64)?.series;
            let power = TruncatedSeries::monomial(ps.ring.clone(), p.pow(n) as usize, order);
            o.check("p_series_is_power", ps == power);
            o.check("p_series_support_mod_p_minus_1", support_congruent(&ps, p));
            let mut wdegrees = Vec::new();
            for k in 1..=2u32 {
                let expected = p.pow(n * k) as usize;
                let ctx = FglContext::new(p, n, order.max(expected + 1), FglMode::ModP)?;
                let w = ctx.m_series(p.pow(k) as i64)?.wdegree;
                o.check(&format!("wdegree_p^{k}"), w == Some(expected));
                wdegrees.push(w);
            }
            o.measure("wdegrees", wdegrees);
            o.measure("order", order);
        }
        "tanabe-dim" => {
            let params = params.expect("validated");
            let d = cp.d.unwrap_or(1);
            let (alg, report, hit) = saturate_cached(&params, d, budget(prep, rc), rc.cache_dir.as_deref())?;
            o.cache_hits += hit as u32;
            o.measure("dimension", alg.dim());
            o.measure("ps_coefficient", report.ps_coefficient);
            o.measure("bound", report.bound);
            o.measure("status", if report.closed { "saturated" } else { "unsaturated" });
            o.check("closed", report.closed);
            o.check("stable", report.stable);
            o.check("nilpotent", report.nilpotent);
            o.check("ps_match", report.ps_match);
            if !report.saturated() {
                o.witness = Some(json!({ "history": report.history }));
            }
        }
        "socle-indecomposables" => {
            let alg = gl_ring(prep, rc, &mut o)?;
            let soc = socle(&alg)?;
            o.check("socle_one_dimensional", soc.dim() == 1);
            let ss = soc_soc(&alg)?;
            o.check("socle_is_top_power", ss.socle_matches_power);
            o.measure("socle_generator", &ss.socle_generator);
            let ind = indecomposable_quotient(&alg)?.report;
            o.check("indecomposables", ind.all_ok());
            o.measure("dim_ibar", ind.dim_ibar);
            o.measure("dim_quotient", ind.dim_quotient);
            o.measure("n_k", ind.n_k);
            o.measure("ibar_generator", &ind.ibar_generator);
            o.check("ibar_principal", ind.ibar_principal);
            o.check("ibar_free_rank_one", ind.ibar_free_rank_one);
            let fix = fix_report(&alg)?;
            o.check("ann_euler_is_fix_ideal", fix.ann_euler_is_fix_ideal);
            o.measure("ann_euler_dim", fix.ann_euler_dim);
        }
        "soc-soc" => {
            let alg = gl_ring(prep, rc, &mut o)?;
            let ss = soc_soc(&alg)?;
            o.check("socle_is_top_power", ss.socle_matches_power);
            o.measure("lambda", ss.lambda);
            o.measure("lhs", &ss.lhs);
            o.measure("socle_generator", &ss.socle_generator);
            if ss.lambda.is_none() {
                o.witness = Some(json!({ "lhs": ss.lhs }));
            }
        }
        "divisor-relation" => {
            let alg = gl_ring(prep, rc, &mut o)?;
            let report = divisor_relation_check(&alg)?;
            o.check("holds", report.holds);
            o.measure("extension_dim", report.extension_dim);
            if let Some(w) = report.witness {
                o.witness = Some(json!({ "product_coefficients": w }));
            }
        }
        "q-ring" => {
            let params = params.expect("validated");
            let q = q_ring(&params, cp.k.unwrap_or(1), cp.precision.unwrap_or(6))?;
            o.check("presentation", q.all_ok());
            o.check("degree_is_n_k", q.degree as u64 == q.n_k);
            o.check("weierstrass", q.weierstrass);
            o.check("s_leading", q.s_leading_ok);
            o.measure("degree", q.degree);
            o.measure("n_k", q.n_k);
            o.measure("g", &q.g);
            o.measure("constant_valuation", q.constant_valuation);
        }
        "ss-homology" => {
            let params = params.expect("validated");
            let report = homology_vs_next_page(&params, cp.k.unwrap_or(0), ss_bounds(cp))?;
            o.check("homology_is_next_page", report.dims_agree());
            o.check("theta_cycles", report.theta.all_cycles);
            o.check("theta_independent", report.theta.independent);
            o.measure("delta_squared_checked", report.delta_squared_checked);
            o.measure("tridegrees", report.entries.len());
            o.measure("theta_images", report.theta.images_checked);
            if let Some(bad) = report.mismatches().first() {
                o.witness = Some(serde_json::to_value(bad).expect("serializable"));
            } else if let Some(f) = report.theta.failures.first() {
                o.witness = Some(json!({ "theta": f }));
            }
        }
        "ss-poincare" => {
            let params = params.expect("validated");
            let report = em_convergence(&params, ss_bounds(cp))?;
            o.check("pages", report.pages.iter().all(|p| p.all_ok()));
            o.check("stable_equals_infinity", report.stable_equals_infinity);
            o.check("totals_match", report.totals.iter().all(|t| t.matches));
            o.measure("stable_page", report.stable_page);
            o.measure("totals", report.totals.iter().map(|t| t.total_dim).collect::<Vec<_>>());
            if let Some(t) = report.stable_mismatches.first() {
                o.witness = Some(json!({ "tridegree": t }));
            } else if let Some(t) = report.totals.iter().find(|t| !t.matches) {
                o.witness = Some(serde_json::to_value(t).expect("serializable"));
            }
        }
        "ss-series" => {
            let params = params.expect("validated");
            let report = series_identities(&params, cp.k.unwrap_or(0), cp.trunc.unwrap_or(30))?;
            o.check("delta_identity", report.delta_identity);
            o.check("theta_identity", report.theta_identity);
            if let Some(j) = report.failures.first() {
                o.witness = Some(json!({ "coefficient": j }));
            }
        }
        "ss-alpha" => {
            let params = params.expect("validated");
            let report = alpha_check(&params, cp.k.unwrap_or(1), cp.trunc.unwrap_or(12) as u64)?;
            o.check("alpha", report.all_ok());
            o.measure("report", &report);
        }
        "nk-identities" => {
            let params = params.expect("validated");
            let kmax = cp.kmax.or(cp.k).unwrap_or(8) as usize;
            let table = NkTable::new(params, kmax + 1)?;
            let names = ["A", "B", "C", "D", "E"];
            let mut ok = [true; 5];
            for k in 0..=kmax {
                for (i, &flag) in table.identities_at(k).iter().enumerate() {
                    if !flag && ok[i] {
                        ok[i] = false;
                        o.witness_if_none(json!({ "identity": names[i], "k": k }));
                    }
                }
            }
            for (name, flag) in names.iter().zip(ok) {
                o.check(&format!("identity_{name}"), flag);
            }
            o.measure("n_k", table.n[..=kmax].iter().map(|x| x.to_string()).collect::<Vec<_>>());
        }
        "orbit-counts" => {
            let params = params.expect("validated");
            let level = cp.level.unwrap_or(params.r + 2);
            let counts = orbit_size_counts(&enumerate_orbits(&params, level)?, params.p);
            let span = level.saturating_sub(params.r) as usize;
            let table = NkTable::new(params, span)?;
            let expected: Vec<Option<u64>> = (0..=span).map(|k| table.n_u64(k)).collect();
            let got: Vec<Option<u64>> = (0..=span).map(|k| counts.get(k).copied()).collect();
            o.check("counts_match_n_k", got == expected);
            o.measure("level", level);
            o.measure("counts", &counts);
            if got != expected {
                let k = got.iter().zip(&expected).position(|(a, b)| a != b);
                o.witness = Some(json!({ "k": k }));
            }
        }
        "hc-twist" => {
            let params = params.expect("validated");
            let ctx = RepContext::new(&params, cp.level.unwrap_or(2), cp.d.unwrap_or(5) as u32)?;
            let laws = check_laws(&ctx)?;
            o.check("convolution_unital", laws.convolution_unital);
            o.check("convolution_commutative", laws.convolution_commutative);
            o.check("convolution_associative", laws.convolution_associative);
            o.check("hc_unital", laws.hc_unital);
            o.check("hc_associative", laws.hc_associative);
            o.check("hc_equals_twisted", laws.hc_equals_twisted);
            o.check("chi_multiplicative", laws.chi_multiplicative);
            o.check("decomposition_relation", laws.decomposition_relation);
            o.measure("classes", laws.classes);
            if let Some(f) = laws.failures.first() {
                o.witness = Some(json!({ "class": f }));
            }
        }
        "coproduct-twist" => {
            let params = params.expect("validated");
            let dmax = cp.d.unwrap_or(4) as u32;
            let ctx = RepContext::new(&params, cp.level.unwrap_or(2), dmax)?;
            let mut pairs = 0usize;
            let mut holds = true;
            'outer: for a in &ctx.classes {
                for b in &ctx.classes {
                    if ctx.dim(a) + ctx.dim(b) > dmax as u64 {
                        continue;
                    }
                    let report = coproduct_twist_check(&ctx, &CharFn::delta(&ctx, a)?, &CharFn::delta(&ctx, b)?, dmax)?;
                    pairs += report.pairs_checked;
                    if !report.holds {
                        holds = false;
                        o.witness = Some(json!({
                            "f": ctx.format(a),
                            "g": ctx.format(b),
                            "pair": report.witness,
                        }));
                        break 'outer;
                    }
                }
            }
            o.check("holds", holds);
            o.measure("pairs_checked", pairs);
            o.measure("classes", ctx.classes.len());
        }
        "socle-char" => {
            let params = params.expect("validated");
            let dmax = cp.d.unwrap_or(3) as u32;
            let ctx = RepContext::new(&params, cp.level.unwrap_or(2), dmax)?;
            for d in 0..=dmax {
                let ok = socle_char_check(&ctx, d);
                o.check(&format!("d{d}"), ok);
                if !ok {
                    o.witness_if_none(json!({ "d": d }));
                }
            }
        }
        "gauss-brute" => {
            let mmax = cp.d.unwrap_or(3) as u32;
            let mut compared = 0usize;
            let mut ok = true;
            for q in 2..=4u64 {
                for m in 0..=mmax {
                    for a in 0..=m {
                        let big_q = BigUint::from(q);
                        let g = to_u64(&gauss_binom(m, a, &big_q))?;
                        let split = g * q.pow(a * (m - a));
                        let subs = count_subspaces(q, m, a)? as u64;
                        let splits = count_splittings(q, m, a)? as u64;
                        compared += 1;
                        if subs != g || splits != split {
                            ok = false;
                            o.witness_if_none(json!({ "q": q, "m": m, "a": a, "subspaces": subs, "gauss": g }));
                        }
                    }
                }
            }
            o.check("counts_match", ok);
            o.measure("triples_compared", compared);
        }
        "rho-compose" => {
            let (p, n) = (cp.p.unwrap(), cp.n.unwrap());
            let (_, report) = crate::ssmodel::rho_star(p, n, 1, cp.trunc.unwrap_or(30));
            o.check("coefficient_form", report.coefficient_form);
            o.check("composition", report.composition);
            if let Some(f) = report.failures.first() {
                o.witness = Some(json!({ "generator": f }));
            }
        }
        other => unreachable!("claim {other} validated in prepare"),
    }
    Ok(o)
}

fn ss_bounds(cp: &CaseParams) -> Bounds {
    let [internal, groupoid] = cp.bounds.unwrap_or([40, 3]);
    Bounds { internal, groupoid }
}
