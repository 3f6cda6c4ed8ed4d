//! Command-line front end for `plconj`.
//!
//! Maps are read from breakpoint files (see [`format`]), results are
//! [`ResultDocument`]s printed as text or JSON, and graphs are rendered to
//! SVG. Exit codes: 0 for an affirmative answer, 1 for a definite negative,
//! 2 for usage or input errors.

pub mod app;
pub mod document;
pub mod format;
pub mod svg;

pub use app::{run, Outcome, OutputFormat};
pub use document::{Field, ResultDocument};
pub use format::{format_rational, parse_map, parse_rational, serialize_map, ParseError};
