//! Character calculus for representations of the profinite group generated
//! by Frobenius: orbits, counting classes, and the convolution and
//! Harish-Chandra products on exact rational class functions.

pub mod brute;
pub mod charfn;
pub mod orbits;
pub mod rep;

use thiserror::Error;

use crate::numerics::NumericsError;

pub use charfn::{
    check_laws, convolve, coproduct_twist_check, hc_product, socle_char, socle_char_check, twisted_convolve, CharFn,
    LawReport,
};
pub use orbits::{enumerate_orbits, orbit_size_counts, OrbitLabel};
pub use rep::{RepClass, RepContext};

#[derive(Debug, Error)]
pub enum HkrError {
    #[error(transparent)]
    Numerics(#[from] NumericsError),
    #[error("infeasible enumeration: {0}")]
    Infeasible(String),
    #[error("orbit of {0} does not have the predicted shape")]
    OrbitShape(String),
    #[error("level {level} too small, need at least {needed}")]
    LevelTooSmall { level: u32, needed: u32 },
    #[error("representation of dimension {dim} outside the domain (dmax = {dmax})")]
    OutOfDomain { dim: u64, dmax: u32 },
    #[error("class has {0} multiplicities, wrong width")]
    Shape(usize),
    #[error("weight is not biexponential: {0}")]
    NotBiexponential(String),
    #[error("no brute-force field of order {0}")]
    BadField(u64),
}
