//! The mod-`p` representation ring `K^0(BGL_d(F_q))` as an explicit finite
//! `F_p`-algebra, with its ideals, characteristic classes, indecomposables
//! and the `Z/p^a` presentation of the primitive quotient.

pub mod cache;
pub mod classes;
pub mod gl;
pub mod ideals;
pub mod indecomposable;
pub mod qring;
pub mod quotient;
pub mod torus;

use thiserror::Error;

use crate::algebra::AlgebraError;
use crate::fgl::FglError;
use crate::numerics::{ChromaticParams, NkTable, NumericsError};

pub use gl::{build_at_bound, build_gl_ring, saturate, Budget, SaturationReport};
pub use ideals::{annihilator, ideal_generated, socle, Subspace};
pub use quotient::{AlgebraElement, QuotientAlgebra};

#[derive(Debug, Error)]
pub enum KringError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Fgl(#[from] FglError),
    #[error(transparent)]
    Numerics(#[from] NumericsError),
    #[error("bound {bound} too small: quotient not saturated (dimension {dim} so far)")]
    Unsaturated { bound: u32, dim: usize },
    #[error("saturation checks failed: {0:?}")]
    SaturationCheck(Box<SaturationReport>),
    #[error("socle has dimension {socle_dim}, expected 1")]
    NotFrobenius { socle_dim: usize },
    #[error("torus ring of dimension {0} is too large")]
    Infeasible(u128),
    #[error("d = {0} is not a power of p")]
    NotPrimePower(usize),
    #[error("identity failed: {0}")]
    Identity(String),
    #[error("algebra structure: {0}")]
    Structure(String),
    #[error("cache: {0}")]
    Cache(String),
}

/// `N_k`, `Nbar_k` and `Nbar_{k-1}` (zero for `k = 0`) as machine integers.
pub(crate) struct Family {
    pub n: u64,
    pub nbar: u64,
    pub nbar_prev: u64,
}

pub(crate) fn family(params: &ChromaticParams, k: u32) -> Result<Family, KringError> {
    let table = NkTable::new(*params, k as usize)?;
    let k = k as usize;
    let get = |v: Option<u64>| v.ok_or_else(|| KringError::Structure("N_k exceeds 64 bits".into()));
    Ok(Family {
        n: get(table.n_u64(k))?,
        nbar: get(table.nbar_u64(k))?,
        nbar_prev: if k == 0 { 0 } else { get(table.nbar_u64(k - 1))? },
    })
}
