pub mod bridge;
pub mod map;
pub mod tree;

pub use bridge::Bridge;
pub use map::{BallMap, CanonicalForm, Dart, HalfEdge, Quadrangulation, VertexId, WindowedMap, NIL};
pub use tree::{LabelledTree, PlaneTree, TreeJson};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum CoreError {
    #[error("invalid tree: {0}")]
    InvalidTree(String),
    #[error("invalid bridge: {0}")]
    InvalidBridge(String),
    #[error("invalid map: {0}")]
    InvalidMap(String),
    #[error("window too small: {0}")]
    WindowTooSmall(String),
}
