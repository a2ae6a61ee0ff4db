//! Schaeffer-type correspondences between treed bridges and quadrangulations
//! with boundary: finite pointed/positive images, window images of the
//! half-planar limits, and a certified ball sampler for the uniform infinite
//! half-planar quadrangulation.

mod assemble;
mod ball;
mod corners;
mod finite;
mod successor;
mod window;

pub use assemble::{assemble, Assembly, DELTA};
pub use ball::{
    sample_ball_volumes, sample_uihpq_ball, BallConfig, UihpqBall, VolumeReport,
};
pub use corners::{collect_finite, collect_window, CompactCorner};
pub use finite::{phi_pointed, phi_positive};
pub use successor::{build_successors, ScanMode, SuccTarget, SuccessorMap};
pub use window::{
    assemble_positive_window, phi_infinite_positive_window, phi_unconstrained_window,
    WindowImage,
};

#[derive(Debug, thiserror::Error)]
pub enum SchaefferError {
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("unresolved successor: {0}")]
    Unresolved(String),
    #[error("window horizon too small: {0}")]
    Horizon(String),
    #[error(transparent)]
    Core(#[from] planar_core::CoreError),
    #[error(transparent)]
    TreedBridge(#[from] treed_bridge::TbError),
    #[error(transparent)]
    Laws(#[from] laws::LawsError),
}
