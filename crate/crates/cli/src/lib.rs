//! Command-line companion to `cycpres-core`: JSON and CSV reports, a
//! content-addressed record cache, Graphviz output and the verification
//! suites.

pub mod cache;
pub mod dot;
pub mod reference;
pub mod report;
pub mod suites;
