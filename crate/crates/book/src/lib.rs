//! The guide's chapters, compiled as doctests so every snippet in `book/`
//! runs under `cargo test`.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/matrices.md")]
pub mod matrices {}
#[doc = include_str!("../../../book/src/spectra.md")]
pub mod spectra {}
#[doc = include_str!("../../../book/src/domain.md")]
pub mod domain {}
#[doc = include_str!("../../../book/src/quadrature.md")]
pub mod quadrature {}
#[doc = include_str!("../../../book/src/solving.md")]
pub mod solving {}
#[doc = include_str!("../../../book/src/algebras.md")]
pub mod algebras {}
#[doc = include_str!("../../../book/src/certificates.md")]
pub mod certificates {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
