//! The successor of a corner labelled h is the next corner labelled h − 1 in
//! contour order; corners at the global minimum label link to the added
//! vertex δ instead. Finite contours scan cyclically and always resolve; on a
//! window the scan wraps through ∞ to the leftmost candidate, and a corner
//! with no candidate anywhere stays unresolved.

use std::collections::BTreeMap;

use crate::corners::CompactCorner;
use crate::SchaefferError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SuccTarget {
    Corner(usize),
    Delta,
    Unresolved,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScanMode {
    Cyclic,
    Window,
}

#[derive(Clone, Debug)]
pub struct SuccessorMap {
    pub succ: Vec<SuccTarget>,
    /// Chord passes the cut point (cyclic wrap, or through ∞ on a window).
    pub wrapped: Vec<bool>,
    /// δ sits one below the smallest real corner label.
    pub delta_label: i64,
    /// Corner indices per label, ascending.
    pub by_label: BTreeMap<i64, Vec<usize>>,
}

pub fn build_successors(
    corners: &[CompactCorner],
    mode: ScanMode,
) -> Result<SuccessorMap, SchaefferError> {
    if corners.is_empty() {
        return Err(SchaefferError::Malformed("no real corners".into()));
    }
    let mut by_label: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
    for (i, c) in corners.iter().enumerate() {
        by_label.entry(c.label).or_default().push(i);
    }
    let min_label = *by_label.keys().next().unwrap();
    let mut succ = vec![SuccTarget::Unresolved; corners.len()];
    let mut wrapped = vec![false; corners.len()];
    for (i, c) in corners.iter().enumerate() {
        if c.label == min_label {
            succ[i] = SuccTarget::Delta;
            continue;
        }
        match by_label.get(&(c.label - 1)) {
            Some(list) => {
                let k = list.partition_point(|&j| j <= i);
                if k < list.len() {
                    succ[i] = SuccTarget::Corner(list[k]);
                } else {
                    succ[i] = SuccTarget::Corner(list[0]);
                    wrapped[i] = true;
                }
            }
            // Every label in [min, max] is realized on a valid finite
            // contour, so a hole is a structural error there; on a window it
            // is the statistical-mode unresolved case.
            None => match mode {
                ScanMode::Cyclic => {
                    return Err(SchaefferError::Unresolved(format!(
                        "cyclic contour skips label {}",
                        c.label - 1
                    )))
                }
                ScanMode::Window => {}
            },
        }
    }
    Ok(SuccessorMap { succ, wrapped, delta_label: min_label - 1, by_label })
}
