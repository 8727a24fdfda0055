//! Metric files, the builtin corpus, reports and the randomized oracle.

pub mod oracle;
pub mod report;
pub mod spec;

pub use spec::{builtin, MetricSpec, SpecError, BUILTINS};
