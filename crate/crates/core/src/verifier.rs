//! Relation verification suites and structured reports.

/// Placeholder.
#[derive(Debug)]
pub struct VerificationReport;
