//! Runs the code blocks of the guide in `book/src` and of the README as
//! doc-tests, one module per chapter, so the prose cannot drift from the
//! library.

#[doc = include_str!("../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../book/src/graphs.md")]
pub mod graphs {}
#[doc = include_str!("../../book/src/first-fit.md")]
pub mod first_fit {}
#[doc = include_str!("../../book/src/bounds.md")]
pub mod bounds {}
#[doc = include_str!("../../book/src/exact-and-heuristics.md")]
pub mod exact_and_heuristics {}
#[doc = include_str!("../../book/src/brkga.md")]
pub mod brkga {}
#[doc = include_str!("../../book/src/local-search.md")]
pub mod local_search {}
#[doc = include_str!("../../book/src/ip-models.md")]
pub mod ip_models {}
#[doc = include_str!("../../book/src/cli.md")]
pub mod cli {}
#[doc = include_str!("../../README.md")]
pub mod readme {}
