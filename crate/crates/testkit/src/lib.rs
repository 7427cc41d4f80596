//! Verification support for `posterize`: reference implementations,
//! seeded input generators, golden regression cases and the property suite.

pub mod gen;
pub mod golden;
pub mod oracle;
pub mod suite;

pub use golden::{digest, GoldenCase};
pub use oracle::{oracle_bilateral, oracle_quantize_value};
pub use suite::{run_property_suite, run_property_suite_with, PropertyReport, SuiteOptions};
