pub mod bridge_dp;
pub mod kernel;
pub mod pruned;
pub mod samplers;
pub mod series;
pub mod stream;
pub mod weights;

pub use bridge_dp::KernelTable;
pub use pruned::{PChild, PNode, PrunedTree, SampleCounters};

#[derive(Debug, thiserror::Error)]
pub enum LawsError {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("rejection cap exceeded: {0}")]
    RejectionCap(String),
}

pub type Rational = num_rational::BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(n.into())
}
