//! Command-line surface for the reversed Dickson polynomial library:
//! evaluation tables, power sums (closed form vs oracle), verification
//! suites, the desirable-pair search, and field-realization info.

pub mod commands;
pub mod report;
pub mod suites;
