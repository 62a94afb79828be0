//! Self-check suites.
