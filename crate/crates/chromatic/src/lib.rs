pub mod algebra;
pub mod cli;
pub mod fgl;
pub mod hkr;
pub mod kring;
pub mod numerics;
pub mod ssmodel;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    struct Introduction;
    #[doc = include_str!("../../../book/src/numerics.md")]
    struct Numerics;
    #[doc = include_str!("../../../book/src/algebra.md")]
    struct Algebra;
    #[doc = include_str!("../../../book/src/fgl.md")]
    struct Fgl;
    #[doc = include_str!("../../../book/src/kring.md")]
    struct Kring;
    #[doc = include_str!("../../../book/src/ssmodel.md")]
    struct Ssmodel;
    #[doc = include_str!("../../../book/src/characters.md")]
    struct Characters;
    #[doc = include_str!("../../../book/src/cli.md")]
    struct Cli;
}
