//! Output of the `fgl`, `kring`, `ss` and `char` subcommands.

use std::io::Write;
use std::time::{Duration, Instant};

use serde::Serialize;
use serde_json::json;

use crate::fgl::{FglContext, FglMode};
use crate::hkr::{
    check_laws, convolve, coproduct_twist_check, enumerate_orbits, hc_product, socle_char_check, CharFn, RepContext,
};
use crate::kring::cache::saturate_cached;
use crate::kring::classes::soc_soc;
use crate::kring::quotient::format_monomial;
use crate::kring::{socle, Budget};
use crate::numerics::ChromaticParams;
use crate::ssmodel::{homology_vs_next_page, Bounds};

use super::cases::{CaseError, DEFAULT_PARAMS};
use super::{CharTable, CliError, Flags, Format, EXIT_FAIL, EXIT_PASS};

fn chromatic(flags: &Flags) -> Result<ChromaticParams, CliError> {
    let (p, n, r, q) = DEFAULT_PARAMS;
    ChromaticParams::new(flags.p.unwrap_or(p), flags.n.unwrap_or(n), flags.r.unwrap_or(r), flags.q.unwrap_or(q))
        .map_err(|e| CliError::InvalidParams(e.to_string()))
}

fn write_json(out: &mut dyn Write, value: &impl Serialize) -> Result<(), CliError> {
    writeln!(out, "{}", serde_json::to_string_pretty(value)?)?;
    Ok(())
}

fn write_csv<const N: usize>(out: &mut dyn Write, header: [&str; N], rows: Vec<[String; N]>) -> Result<(), CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for row in rows {
        w.write_record(row)?;
    }
    out.write_all(&w.into_inner().map_err(|e| CliError::Io(e.into_error()))?)?;
    Ok(())
}

#[derive(Serialize)]
struct FglTable {
    p: u64,
    n: u32,
    order: usize,
    /// Coefficients are taken modulo this.
    modulus: u64,
    /// Logarithm at `u = 0`, exact rationals.
    log: Vec<String>,
    m: i64,
    series: Vec<u64>,
    wdegree: Option<usize>,
}

pub fn fgl(flags: &Flags, m: Option<i64>, out: &mut dyn Write) -> Result<i32, CliError> {
    let p = flags.p.unwrap_or(DEFAULT_PARAMS.0);
    let n = flags.n.unwrap_or(DEFAULT_PARAMS.1);
    if !crate::numerics::is_prime(p) || n == 0 {
        return Err(CliError::InvalidParams(format!("need a prime p and n >= 1, got p = {p}, n = {n}")));
    }
    let order = flags.trunc.unwrap_or(20);
    let mode = match flags.precision {
        Some(a) => FglMode::ModPPower(a),
        None => FglMode::ModP,
    };
    let ctx = FglContext::new(p, n, order, mode).map_err(CaseError::from)?;
    let m = m.unwrap_or(p as i64);
    let data = ctx.m_series(m).map_err(CaseError::from)?;
    let table = FglTable {
        p,
        n,
        order,
        modulus: data.series.ring.modulus,
        log: ctx.log_u0().coeffs().iter().map(|c| c.to_string()).collect(),
        m,
        series: data.series.coeffs().to_vec(),
        wdegree: data.wdegree,
    };
    match flags.format.unwrap_or(Format::Json) {
        Format::Csv => {
            let rows = (0..order).map(|i| [i.to_string(), table.log[i].clone(), table.series[i].to_string()]).collect();
            write_csv(out, ["i", "log", "series"], rows)?;
        }
        _ => write_json(out, &table)?,
    }
    Ok(EXIT_PASS)
}

#[derive(Serialize)]
struct SocleTerm {
    monomial: String,
    coeff: u64,
}

#[derive(Serialize)]
struct KringRow {
    d: usize,
    dim: usize,
    ps_coeff: u64,
    #[serde(rename = "match")]
    matches: bool,
    bound: u32,
    status: &'static str,
    socle_generator: Vec<SocleTerm>,
    /// `(fix - 1)^d = lambda * c_d^{Nbar_k - 1}` when `d = p^k`.
    lambda: Option<u64>,
}

pub fn kring(flags: &Flags, out: &mut dyn Write) -> Result<i32, CliError> {
    let params = chromatic(flags)?;
    let dmax = flags.d.unwrap_or(4);
    let deadline = flags.budget.map(|s| Instant::now() + Duration::from_secs(s));
    let budget = Budget { deadline, ..Budget::default() };
    let mut rows = Vec::new();
    for d in 0..=dmax {
        let (alg, report, _) =
            saturate_cached(&params, d, budget, flags.cache_dir.as_deref()).map_err(CaseError::from)?;
        let mut socle_generator = Vec::new();
        let mut lambda = None;
        if report.saturated() {
            let soc = socle(&alg).map_err(CaseError::from)?;
            if let Some(g) = soc.basis().first() {
                socle_generator = g
                    .coords
                    .iter()
                    .enumerate()
                    .filter(|(_, &c)| c != 0)
                    .map(|(i, &coeff)| SocleTerm { monomial: format_monomial(&alg.basis[i], &alg.names), coeff })
                    .collect();
            }
            if d > 0 && params.p.pow(params.level_of(d as u64)) == d as u64 {
                lambda = soc_soc(&alg).map_err(CaseError::from)?.lambda;
            }
        }
        rows.push(KringRow {
            d,
            dim: alg.dim(),
            ps_coeff: report.ps_coefficient,
            matches: report.ps_match,
            bound: report.bound,
            status: if report.closed { "saturated" } else { "unsaturated" },
            socle_generator,
            lambda,
        });
    }
    let ok = rows.iter().all(|r| r.matches && r.status == "saturated");
    match flags.format.unwrap_or(Format::Json) {
        Format::Csv => {
            let table = rows
                .iter()
                .map(|r| [r.d.to_string(), r.dim.to_string(), r.ps_coeff.to_string(), r.matches.to_string()])
                .collect();
            write_csv(out, ["d", "dim", "ps_coeff", "match"], table)?;
        }
        _ => write_json(out, &rows)?,
    }
    Ok(if ok { EXIT_PASS } else { EXIT_FAIL })
}

pub fn ss(flags: &Flags, out: &mut dyn Write) -> Result<i32, CliError> {
    let params = chromatic(flags)?;
    let [internal, groupoid] = flags.bounds.map(|b| b.0).unwrap_or([40, 3]);
    let k = flags.k.unwrap_or(0);
    let report = homology_vs_next_page(&params, k, Bounds { internal, groupoid }).map_err(CaseError::from)?;
    let ok = report.all_ok();
    match flags.format.unwrap_or(Format::Json) {
        Format::Csv => {
            let rows = report
                .entries
                .iter()
                .map(|e| {
                    [
                        e.tridegree.internal.to_string(),
                        e.tridegree.bott.to_string(),
                        e.tridegree.groupoid.to_string(),
                        e.page_dim.to_string(),
                        e.homology_dim.to_string(),
                        e.next_page_dim.to_string(),
                        e.agree.to_string(),
                    ]
                })
                .collect();
            write_csv(
                out,
                ["internal", "bott", "groupoid", "page_dim", "homology_dim", "next_page_dim", "match"],
                rows,
            )?;
        }
        _ => write_json(out, &json!({ "pass": ok, "report": report }))?,
    }
    Ok(if ok { EXIT_PASS } else { EXIT_FAIL })
}

#[derive(Serialize)]
struct ValueEntry {
    class: String,
    value: String,
}

fn entries(ctx: &RepContext, f: &CharFn) -> Vec<ValueEntry> {
    f.values.iter().map(|(c, v)| ValueEntry { class: ctx.format(c), value: v.to_string() }).collect()
}

#[derive(Serialize)]
struct ProductRow {
    left: String,
    right: String,
    convolution: Vec<ValueEntry>,
    harish_chandra: Vec<ValueEntry>,
}

pub fn char_table(flags: &Flags, table: CharTable, out: &mut dyn Write) -> Result<i32, CliError> {
    let params = chromatic(flags)?;
    let level = flags.level.unwrap_or(params.r + 1);
    let format = flags.format.unwrap_or(Format::Json);
    match table {
        CharTable::Orbits => {
            let orbits = enumerate_orbits(&params, level).map_err(CaseError::from)?;
            if format == Format::Csv {
                let rows = orbits.iter().map(|o| [o.label(), o.size.to_string()]).collect();
                write_csv(out, ["representative", "size"], rows)?;
            } else {
                let list: Vec<_> =
                    orbits.iter().map(|o| json!({ "representative": o.representative, "size": o.size })).collect();
                write_json(out, &list)?;
            }
            Ok(EXIT_PASS)
        }
        CharTable::Products => {
            let dmax = flags.d.unwrap_or(3) as u32;
            let ctx = RepContext::new(&params, level, dmax).map_err(CaseError::from)?;
            let mut rows = Vec::new();
            for a in &ctx.classes {
                for b in &ctx.classes {
                    if ctx.dim(a) + ctx.dim(b) > dmax as u64 || a.is_zero() || b.is_zero() {
                        continue;
                    }
                    let f = CharFn::delta(&ctx, a).map_err(CaseError::from)?;
                    let g = CharFn::delta(&ctx, b).map_err(CaseError::from)?;
                    rows.push(ProductRow {
                        left: ctx.format(a),
                        right: ctx.format(b),
                        convolution: entries(&ctx, &convolve(&ctx, &f, &g)),
                        harish_chandra: entries(&ctx, &hc_product(&ctx, &f, &g)),
                    });
                }
            }
            if format == Format::Csv {
                let flat = rows
                    .iter()
                    .flat_map(|r| {
                        let conv = r.convolution.iter().map(move |e| {
                            [r.left.clone(), r.right.clone(), "convolution".into(), e.class.clone(), e.value.clone()]
                        });
                        let hc = r.harish_chandra.iter().map(move |e| {
                            [r.left.clone(), r.right.clone(), "harish_chandra".into(), e.class.clone(), e.value.clone()]
                        });
                        conv.chain(hc)
                    })
                    .collect();
                write_csv(out, ["left", "right", "product", "class", "value"], flat)?;
            } else {
                write_json(out, &rows)?;
            }
            Ok(EXIT_PASS)
        }
        CharTable::Verify => {
            let dmax = flags.d.unwrap_or(5) as u32;
            let ctx = RepContext::new(&params, level.max(params.r + 1), dmax).map_err(CaseError::from)?;
            let laws = check_laws(&ctx).map_err(CaseError::from)?;
            let fix = CharFn::fix(&ctx);
            let pair_dim = dmax.min(4);
            let coproduct = coproduct_twist_check(&ctx, &fix, &fix, pair_dim).map_err(CaseError::from)?;
            let socle: Vec<bool> = (0..=dmax.min(3)).map(|d| socle_char_check(&ctx, d)).collect();
            let ok = laws.all_ok() && coproduct.holds && socle.iter().all(|&b| b);
            if format == Format::Csv {
                let mut rows: Vec<[String; 2]> = vec![
                    ["laws".into(), laws.all_ok().to_string()],
                    ["coproduct_twist".into(), coproduct.holds.to_string()],
                ];
                rows.extend(socle.iter().enumerate().map(|(d, b)| [format!("socle_d{d}"), b.to_string()]));
                write_csv(out, ["check", "pass"], rows)?;
            } else {
                write_json(out, &json!({ "pass": ok, "laws": laws, "coproduct": coproduct, "socle_char": socle }))?;
            }
            Ok(if ok { EXIT_PASS } else { EXIT_FAIL })
        }
    }
}
