//! Exhaustive searches over rooted local configurations.

pub mod appearance;
pub mod canon;
pub mod config;
pub mod enumerate;
pub mod reference;
pub mod report;
pub mod stage2;
pub mod verify;

pub use appearance::{appearances, to_dot, Appearance};
pub use canon::{canonical_config, canonical_form, config_from_canonical, is_canonical, CanonicalForm, LeveledGraph};
pub use config::{ConfigError, Level2Vertex, LocalConfig, RootRule};
pub use enumerate::{enumerate_configs, enumerate_slice, shards, Shard, SliceSpec, WalkCounts};
pub use reference::{reference_forms, reference_number, reference_patterns};
pub use report::{BreakdownRow, Check, PatternRecord, PrecisionStats, SearchReport, Tally};
pub use stage2::{completions, verify_statement1_stage2};
pub use verify::{
    config_goodness, verify_statement1_stage1, verify_statement2, SearchError, SearchOptions, Stage1Result,
};
