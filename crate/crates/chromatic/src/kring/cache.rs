//! On-disk cache of saturated algebras. Each file holds a JSON payload and
//! the SHA-256 of its serialization; a mismatch is treated as a miss.

use std::collections::HashMap;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::algebra::linalg::Echelon;
use crate::algebra::{monomials_up_to, Monomial};
use crate::numerics::ChromaticParams;

use super::gl::{c_ring, saturate, Budget, SaturationReport};
use super::quotient::{QuotientAlgebra, Reducer};
use super::KringError;

pub const CACHE_VERSION: u32 = 1;

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
struct Payload {
    version: u32,
    params: ChromaticParams,
    d: usize,
    bound: u32,
    basis: Vec<Vec<u32>>,
    /// Relation rows as `(pivot column, sparse entries)`.
    rows: Vec<(usize, Vec<(usize, u64)>)>,
    dim: usize,
    saturated: bool,
    report: SaturationReport,
}

#[derive(Serialize, Deserialize)]
struct CacheFile {
    checksum: String,
    payload: Payload,
}

fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

fn checksum(payload: &Payload) -> Result<String, KringError> {
    let text = serde_json::to_string(payload).map_err(|e| KringError::Cache(e.to_string()))?;
    Ok(hex(&Sha256::digest(text.as_bytes())))
}

fn key_prefix(params: &ChromaticParams, d: usize) -> String {
    format!("kring-v{CACHE_VERSION}-p{}-n{}-r{}-q{}-d{d}-B", params.p, params.n, params.r, params.q)
}

fn path_for(dir: &Path, params: &ChromaticParams, d: usize, bound: u32) -> PathBuf {
    dir.join(format!("{}{bound}.json", key_prefix(params, d)))
}

fn to_payload(alg: &QuotientAlgebra, report: &SaturationReport) -> Result<Payload, KringError> {
    let Reducer::Linear { bound, echelon, .. } = &alg.reducer else {
        return Err(KringError::Cache("only relation-built algebras are cached".into()));
    };
    let rows = echelon
        .rows
        .iter()
        .zip(&echelon.pivots)
        .map(|(r, &c)| (c, r.iter().enumerate().filter(|(_, &x)| x != 0).map(|(i, &x)| (i, x)).collect()))
        .collect();
    Ok(Payload {
        version: CACHE_VERSION,
        params: alg.params,
        d: alg.d,
        bound: *bound,
        basis: alg.basis.iter().map(|m| m.to_vec(alg.d)).collect(),
        rows,
        dim: alg.dim(),
        saturated: report.saturated(),
        report: report.clone(),
    })
}

fn from_payload(payload: &Payload) -> Result<QuotientAlgebra, KringError> {
    let ring = c_ring(payload.params.p, payload.d, payload.bound)?;
    let mut monomials = monomials_up_to(&ring.weights, payload.bound);
    monomials.reverse();
    let ncols = monomials.len();
    let columns: HashMap<Monomial, usize> = monomials.iter().enumerate().map(|(i, m)| (*m, i)).collect();
    let mut echelon = Echelon::new(payload.params.p, ncols);
    for (_, entries) in &payload.rows {
        let mut row = vec![0u64; ncols];
        for &(i, x) in entries {
            if i >= ncols {
                return Err(KringError::Cache("row index out of range".into()));
            }
            row[i] = x;
        }
        echelon.insert(row);
    }
    echelon.finish();
    let basis: Vec<Monomial> = payload.basis.iter().map(|e| Monomial::from_exps(e)).collect();
    let mut free: Vec<Monomial> = echelon.free_columns().into_iter().map(|c| monomials[c]).collect();
    free.reverse();
    if free != basis || basis.len() != payload.dim {
        return Err(KringError::Cache("basis does not match relation rows".into()));
    }
    Ok(QuotientAlgebra::assemble(
        payload.params,
        payload.d,
        ring.names.clone(),
        ring.weights.clone(),
        basis,
        Reducer::Linear { bound: payload.bound, columns, monomials, echelon },
    ))
}

/// Store a saturated algebra. Writes go through a temporary file and an
/// atomic rename so concurrent readers never see partial records.
pub fn store(dir: &Path, alg: &QuotientAlgebra, report: &SaturationReport) -> Result<PathBuf, KringError> {
    fs::create_dir_all(dir).map_err(|e| KringError::Cache(e.to_string()))?;
    let payload = to_payload(alg, report)?;
    let file = CacheFile { checksum: checksum(&payload)?, payload };
    let text = serde_json::to_string(&file).map_err(|e| KringError::Cache(e.to_string()))?;
    let path = path_for(dir, &alg.params, alg.d, report.bound);
    let tmp = path.with_extension(format!("tmp{}", std::process::id()));
    fs::write(&tmp, text).map_err(|e| KringError::Cache(e.to_string()))?;
    fs::rename(&tmp, &path).map_err(|e| KringError::Cache(e.to_string()))?;
    Ok(path)
}

/// Look up a saturated algebra; corrupt or mismatched files count as misses.
pub fn load(dir: &Path, params: &ChromaticParams, d: usize) -> Option<(QuotientAlgebra, SaturationReport)> {
    let prefix = key_prefix(params, d);
    let mut candidates: Vec<PathBuf> = fs::read_dir(dir)
        .ok()?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| {
            p.file_name()
                .and_then(|n| n.to_str())
                .is_some_and(|n| n.starts_with(&prefix) && n.ends_with(".json"))
        })
        .collect();
    candidates.sort();
    candidates.into_iter().find_map(|path| {
        let text = fs::read_to_string(&path).ok()?;
        let file: CacheFile = serde_json::from_str(&text).ok()?;
        let payload = file.payload;
        if checksum(&payload).ok()? != file.checksum
            || payload.version != CACHE_VERSION
            || payload.params != *params
            || payload.d != d
            || !payload.saturated
        {
            return None;
        }
        let alg = from_payload(&payload).ok()?;
        Some((alg, payload.report))
    })
}

/// Saturate through the cache. Returns the algebra, its report and whether
/// it came from disk.
pub fn saturate_cached(
    params: &ChromaticParams,
    d: usize,
    budget: Budget,
    dir: Option<&Path>,
) -> Result<(QuotientAlgebra, SaturationReport, bool), KringError> {
    if let Some(dir) = dir {
        if let Some((alg, report)) = load(dir, params, d) {
            return Ok((alg, report, true));
        }
    }
    let (alg, report) = saturate(params, d, None, budget)?;
    if let Some(dir) = dir {
        if report.saturated() && d > 0 {
            store(dir, &alg, &report)?;
        }
    }
    Ok((alg, report, false))
}
