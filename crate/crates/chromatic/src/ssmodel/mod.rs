//! An algebraic model of the Eilenberg-Moore pages for the `K`-theory of
//! the groupoid of representations: pages `S[k]`, their differentials, the
//! comparison `H(S[k]) = S[k+1]` and convergence to `S[inf]`.

pub mod alpha;
pub mod convergence;
pub mod homology;
pub mod identities;
pub mod mono;
pub mod page;
pub mod rho;

use thiserror::Error;

use crate::numerics::NumericsError;

pub use alpha::{alpha_check, AlphaReport};
pub use convergence::{em_convergence, ConvergenceReport};
pub use homology::{homology_vs_next_page, HomologyReport, Theta};
pub use identities::{series_identities, SeriesIdentityReport};
pub use mono::{Mono, SPoly};
pub use page::{Bounds, GenKind, PageIndex, SSGenerator, SSPage, Tridegree};
pub use rho::{rho_star, RhoMap, RhoReport};

#[derive(Debug, Error)]
pub enum SsError {
    #[error(transparent)]
    Numerics(#[from] NumericsError),
    #[error("delta^2 is nonzero on {0}")]
    DeltaSquared(String),
    #[error("outside the stored range: {0}")]
    OutOfRange(String),
    #[error("too large: {0}")]
    TooLarge(String),
}
