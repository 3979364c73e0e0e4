//! Expression parsing and canonical JSON output shared by the `derperm`
//! binary and its test suites.

pub mod json;
pub mod parser;
