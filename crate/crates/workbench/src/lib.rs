//! Spec files, JSON reports and the `cifsuper` command line on top of
//! `cifsuper-core`.

pub mod cli;
pub mod json;
pub mod spec;

pub use spec::{parse_spec, parse_spec_bytes, serialize, SpecError, SpecErrorKind, Workspace};
