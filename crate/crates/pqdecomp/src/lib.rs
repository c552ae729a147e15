//! Command-line front end: reads problem files, runs the classifier, the
//! witness builder, the verifier, the atlas and the brute-force oracle, and
//! prints text or JSON.
//!
//! Exit codes: 0 for YES (or a valid pair, or an empty oracle report), 1 for
//! NO, 2 for Unknown, 3 when a witness could not be built, 64 for usage and
//! parse errors, 65 for well-formed but unusable input, 66 for unreadable
//! files and 70 for internal errors.

pub mod app;
pub mod input;
pub mod report;

pub use app::{run, run_to, Cli};
pub use input::{parse, AnyProblem, ParseError, Problem};
