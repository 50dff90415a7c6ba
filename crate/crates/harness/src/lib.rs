//! Verification harness for the lightbulb toggle process: exact
//! independent oracles, Monte Carlo checks with pinned budgets, and report
//! plumbing shared by the CLI and the test suites.

pub mod oracle;
pub mod report;
pub mod suite;
