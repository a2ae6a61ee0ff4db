//! Exhaustive small-case ground truth: enumerations of labelled trees and
//! treed bridges, an independent map generator by polygon gluing, and the
//! verification reports the rest of the workspace measures itself against.
//! Everything here is exact; nothing is sampled.

pub mod bijection;
pub mod bridges;
pub mod gluing;
pub mod sums;
pub mod trees;

pub use bijection::{verify_bijection, BijectionReport};
pub use bridges::enumerate_treed_bridges;
pub use gluing::quadrangulations_by_gluing;
pub use sums::{verify_partition_sums, SumRow, SumsReport};
pub use trees::{count_labelled_trees, enumerate_labelled_trees, LtKind};

/// Enumeration ceiling for labelled trees (edges).
pub const TREE_BOUND: usize = 8;
/// Enumeration ceiling for treed bridges (n + p).
pub const BRIDGE_BOUND: usize = 6;

#[derive(Debug, thiserror::Error)]
pub enum OracleError {
    #[error("enumeration bound exceeded: {0}")]
    Bound(String),
    /// A ground-truth assertion failed; the witnessing instance, when one
    /// exists, is serialized so the failure can be replayed.
    #[error("oracle assertion failed: {message}")]
    Assertion { message: String, witness: Option<String> },
    #[error(transparent)]
    Schaeffer(#[from] schaeffer::SchaefferError),
    #[error(transparent)]
    TreedBridge(#[from] treed_bridge::TbError),
}

pub(crate) fn assert_or(cond: bool, message: impl FnOnce() -> String) -> Result<(), OracleError> {
    if cond {
        Ok(())
    } else {
        Err(OracleError::Assertion { message: message(), witness: None })
    }
}
