//! Reports and catalog checks behind the `germlab` binary.

pub mod render;
pub mod report;
pub mod verify;

pub use render::render_human;
pub use report::{analyze_germ, analyze_unfolding, AnalysisReport};
pub use verify::{verify_catalog, VerifyOptions, VerifySummary};
