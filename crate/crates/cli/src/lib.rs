//! Library surface of the `hyperlie` CLI: the verification pipeline and
//! the report types, kept separate from argument parsing so integration
//! tests can drive them directly.

pub mod pipeline;
pub mod report;
