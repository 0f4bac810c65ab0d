//! The corrbound guide, embedded chapter by chapter so that every Rust
//! code block in `book/src/` is compiled and executed by `cargo test`.
//!
//! The rendered version of these pages is built with `mdbook build book`;
//! this crate exists so the two never drift: a guide snippet that stops
//! compiling fails the workspace test suite.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/quickstart.md")]
pub mod quickstart {}

#[doc = include_str!("../../../book/src/mathematical-background.md")]
pub mod mathematical_background {}

#[doc = include_str!("../../../book/src/weights.md")]
pub mod weights {}

#[doc = include_str!("../../../book/src/certification.md")]
pub mod certification {}

#[doc = include_str!("../../../book/src/solvers.md")]
pub mod solvers {}

#[doc = include_str!("../../../book/src/reports.md")]
pub mod reports {}

#[doc = include_str!("../../../book/src/reproduction.md")]
pub mod reproduction {}
