//! The chapters of `book/` as modules, so `cargo test --doc` runs their snippets.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/diagrams.md")]
pub mod diagrams {}
#[doc = include_str!("../../../book/src/tangent.md")]
pub mod tangent {}
#[doc = include_str!("../../../book/src/strata.md")]
pub mod strata {}
#[doc = include_str!("../../../book/src/wallcrossing.md")]
pub mod wallcrossing {}
#[doc = include_str!("../../../book/src/correspondence.md")]
pub mod correspondence {}
#[doc = include_str!("../../../book/src/series.md")]
pub mod series {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
