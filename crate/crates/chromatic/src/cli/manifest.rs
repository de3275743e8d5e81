//! Verification cases as data. The built-in manifest is compiled in; a file
//! with the same schema can replace it.

use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::CliError;

pub const MANIFEST_VERSION: u32 = 1;

const BUILTIN: &str = include_str!("manifest.json");

/// Parameters a case may fix. Flags on the command line override them.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CaseParams {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kmax: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub level: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trunc: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub precision: Option<u32>,
    /// `[internal, groupoid]`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bounds: Option<[u64; 2]>,
    /// Seconds.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub budget: Option<u64>,
}

impl CaseParams {
    /// Fields set in `other` replace those in `self`. Returns whether
    /// anything changed.
    pub fn overlay(&mut self, other: &CaseParams) -> bool {
        let before = self.clone();
        macro_rules! take {
            ($($f:ident),*) => { $( if other.$f.is_some() { self.$f = other.$f; } )* };
        }
        take!(p, n, r, q, d, k, kmax, level, trunc, precision, bounds, budget);
        *self != before
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Expectation {
    /// Every check of the claim holds.
    Property,
    /// A measured value equals a fixed one, on top of the checks.
    Exact { field: String, value: Value },
    /// A measured value is a unit of `F_p`; the value itself is reported.
    UnitMultiple { field: String },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerificationCase {
    pub id: String,
    pub claim: String,
    pub params: CaseParams,
    pub expected: Expectation,
    pub citation: String,
    /// Optional cases run only when named explicitly.
    #[serde(default)]
    pub optional: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Manifest {
    pub version: u32,
    pub cases: Vec<VerificationCase>,
}

impl Manifest {
    pub fn builtin() -> Self {
        Self::parse(BUILTIN).expect("built-in manifest is valid")
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        let m: Manifest = serde_json::from_str(text).map_err(|e| CliError::Manifest(e.to_string()))?;
        if m.version != MANIFEST_VERSION {
            return Err(CliError::Manifest(format!("unsupported manifest version {}", m.version)));
        }
        let mut ids: Vec<&str> = m.cases.iter().map(|c| c.id.as_str()).collect();
        ids.sort_unstable();
        if let Some(w) = ids.windows(2).find(|w| w[0] == w[1]) {
            return Err(CliError::Manifest(format!("duplicate case id {}", w[0])));
        }
        Ok(m)
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Manifest(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    /// Cases matching the selection, sorted by id. `all` picks every
    /// non-optional case; other names match ids exactly.
    pub fn select(&self, names: &[String]) -> Result<Vec<VerificationCase>, CliError> {
        let mut out: Vec<VerificationCase> = Vec::new();
        for name in names {
            if name == "all" {
                out.extend(self.cases.iter().filter(|c| !c.optional).cloned());
                continue;
            }
            let case = self.cases.iter().find(|c| &c.id == name).ok_or_else(|| CliError::UnknownCase(name.clone()))?;
            out.push(case.clone());
        }
        out.sort_by(|a, b| a.id.cmp(&b.id));
        out.dedup_by(|a, b| a.id == b.id);
        Ok(out)
    }
}
