//! Text formats, SVG rendering and command dispatch for `cobcalc`.
//!
//! - [`document`]: presentation files (`[objects]`, `[complex L L′]`, …, `[diagram]`).
//! - [`word_text`]: words as S-expressions.
//! - [`svg`]: static renderings of diagrams.
//! - [`run`]: the commands behind the `cobcalc` binary and their [`RunReport`]s.

pub mod diagram_text;
pub mod document;
mod error;
pub mod report;
pub mod run;
pub mod svg;
pub mod text;
pub mod word_text;

pub use error::{CliError, Pos, Result};
pub use report::RunReport;
