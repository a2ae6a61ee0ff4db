//! Bridges: ±1 label sequences along the boundary contour. Finite bridges
//! are cyclic of even length 2p; windows are two-sided truncations of
//! infinite bridges with position 0 at the origin.

use crate::CoreError;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Bridge {
    /// labels x₀..x_{2p−1}, x₀ = 0, indices cyclic mod 2p.
    Finite { labels: Vec<i64> },
    /// labels x_{−L}..x_{R}; labels[origin] = x₀ = 0; marks a truncation.
    Window { labels: Vec<i64>, origin: usize },
}

impl Bridge {
    pub fn finite(labels: Vec<i64>) -> Result<Self, CoreError> {
        let b = Bridge::Finite { labels };
        b.check()?;
        Ok(b)
    }

    pub fn window(labels: Vec<i64>, origin: usize) -> Result<Self, CoreError> {
        let b = Bridge::Window { labels, origin };
        b.check()?;
        Ok(b)
    }

    pub fn check(&self) -> Result<(), CoreError> {
        match self {
            Bridge::Finite { labels } => {
                if labels.is_empty() || labels.len() % 2 != 0 {
                    return Err(CoreError::InvalidBridge("finite length must be even ≥ 2".into()));
                }
                if labels[0] != 0 {
                    return Err(CoreError::InvalidBridge("x₀ must be 0".into()));
                }
                for i in 0..labels.len() {
                    let j = (i + 1) % labels.len();
                    if (labels[j] - labels[i]).abs() != 1 {
                        return Err(CoreError::InvalidBridge(format!("step at {i} not ±1")));
                    }
                }
                Ok(())
            }
            Bridge::Window { labels, origin } => {
                if *origin >= labels.len() {
                    return Err(CoreError::InvalidBridge("origin outside window".into()));
                }
                if labels[*origin] != 0 {
                    return Err(CoreError::InvalidBridge("x₀ must be 0".into()));
                }
                for i in 0..labels.len() - 1 {
                    if (labels[i + 1] - labels[i]).abs() != 1 {
                        return Err(CoreError::InvalidBridge(format!("step at {i} not ±1")));
                    }
                }
                Ok(())
            }
        }
    }

    pub fn len(&self) -> usize {
        match self {
            Bridge::Finite { labels } | Bridge::Window { labels, .. } => labels.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Inclusive position range: [0, 2p−1] cyclic, or [−L, R] for windows.
    pub fn pos_range(&self) -> (i64, i64) {
        match self {
            Bridge::Finite { labels } => (0, labels.len() as i64 - 1),
            Bridge::Window { labels, origin } => {
                (-(*origin as i64), labels.len() as i64 - 1 - *origin as i64)
            }
        }
    }

    pub fn label(&self, pos: i64) -> i64 {
        match self {
            Bridge::Finite { labels } => {
                labels[pos.rem_euclid(labels.len() as i64) as usize]
            }
            Bridge::Window { labels, origin } => labels[(pos + *origin as i64) as usize],
        }
    }

    /// Positions i with x_{i+1} = x_i − 1. Cyclic for finite bridges; for
    /// windows the last position is excluded (its step is unknown).
    pub fn down_steps(&self) -> Vec<i64> {
        let (lo, hi) = self.pos_range();
        let last = match self {
            Bridge::Finite { .. } => hi,
            Bridge::Window { .. } => hi - 1,
        };
        (lo..=last).filter(|&i| self.label(i + 1) == self.label(i) - 1).collect()
    }

    pub fn is_nonnegative(&self) -> bool {
        match self {
            Bridge::Finite { labels } | Bridge::Window { labels, .. } => {
                labels.iter().all(|&x| x >= 0)
            }
        }
    }
}
