//! From corners and successors to a rooted map. One chord per resolved
//! corner; erasing bridge and tree edges leaves exactly the chords, so the
//! chord set is the edge set. Rotations come from the disk embedding with
//! the trees inside the contour circle and the chords outside: around a real
//! vertex, counterclockwise means per-corner groups in REVERSE contour order
//! (a vertex hub inside the disk meets its corners with the inner disk's
//! orientation), each group [outgoing chord, then incoming chords by
//! ascending cyclic gap (source − target) mod C] (sweeping from the forward
//! tangent to the backward tangent; the out-chord always has the smallest
//! gap because labels drop by at most one between consecutive corners);
//! around δ, which lives outside the circle, the orientation flips, so its
//! rotation is the reverse darts in source contour order.

use std::collections::HashMap;

use planar_core::{Dart, Quadrangulation, VertexId, NIL};

use crate::corners::CompactCorner;
use crate::successor::{SuccTarget, SuccessorMap};
use crate::SchaefferError;

/// δ is always vertex id 0.
pub const DELTA: VertexId = 0;

#[derive(Clone, Debug)]
pub struct Assembly {
    pub map: Quadrangulation,
    /// Vertex id → label; index 0 is δ.
    pub labels: Vec<i64>,
    /// Vertex id → (bridge position, tree node) of its first corner; δ → (0, NIL).
    pub vertex_host: Vec<(i64, u32)>,
    pub vertex_of_corner: Vec<VertexId>,
    /// Corner → forward dart of its chord; NIL when unresolved.
    pub forward_dart: Vec<Dart>,
    pub corners: Vec<CompactCorner>,
    pub succ: SuccessorMap,
    pub root_vertex: VertexId,
}

impl Assembly {
    pub fn delta_label(&self) -> i64 {
        self.labels[DELTA as usize]
    }
}

/// The root edge is the image of the bridge edge (0, 1), orientation
/// preserved: the forward chord of the last corner at position 0 when 0 is a
/// down-step, else the reverse chord of the first corner at position ≥ 1
/// labelled x₁ (scanning on around the cut when none follows).
fn root_dart(
    corners: &[CompactCorner],
    succ: &SuccessorMap,
    forward_dart: &[Dart],
    x1: i64,
    x0_down: bool,
) -> Result<Dart, SchaefferError> {
    let idx = if x0_down {
        let k = corners.partition_point(|c| c.pos <= 0);
        if k == 0 || corners[k - 1].pos != 0 {
            return Err(SchaefferError::Malformed(
                "down-step at position 0 carries no corners".into(),
            ));
        }
        k - 1
    } else {
        let list = succ
            .by_label
            .get(&x1)
            .ok_or_else(|| SchaefferError::Malformed(format!("no corner labelled {x1}")))?;
        let start = corners.partition_point(|c| c.pos < 1);
        let k = list.partition_point(|&j| j < start);
        if k < list.len() {
            list[k]
        } else {
            list[0]
        }
    };
    match forward_dart[idx] {
        NIL => Err(SchaefferError::Unresolved("root corner has no chord".into())),
        d if x0_down => Ok(d),
        d => Ok(d + 1),
    }
}

pub fn assemble(
    corners: Vec<CompactCorner>,
    succ_map: SuccessorMap,
    x1: i64,
    x0_down: bool,
) -> Result<Assembly, SchaefferError> {
    let ncor = corners.len();
    assert!(ncor < (u32::MAX / 2) as usize, "corner count overflows dart ids");

    // δ = 0, real vertices in order of first corner appearance.
    let mut vertex_of_corner = vec![NIL; ncor];
    let mut key_to_vertex: HashMap<(i64, u32), VertexId> = HashMap::new();
    let mut labels = vec![succ_map.delta_label];
    let mut vertex_host = vec![(0i64, NIL)];
    for (i, c) in corners.iter().enumerate() {
        let v = *key_to_vertex.entry((c.pos, c.node)).or_insert_with(|| {
            labels.push(c.label);
            vertex_host.push((c.pos, c.node));
            (labels.len() - 1) as VertexId
        });
        debug_assert_eq!(labels[v as usize], c.label, "corner label disagrees with its vertex");
        vertex_of_corner[i] = v;
    }

    let mut forward_dart = vec![NIL; ncor];
    let mut nq: u32 = 0;
    for i in 0..ncor {
        if succ_map.succ[i] != SuccTarget::Unresolved {
            forward_dart[i] = 2 * nq;
            nq += 1;
        }
    }
    if nq == 0 {
        return Err(SchaefferError::Malformed("no resolved chords".into()));
    }

    let mut incoming: Vec<Vec<usize>> = vec![Vec::new(); ncor];
    let mut delta_sources: Vec<usize> = Vec::new();
    for i in 0..ncor {
        match succ_map.succ[i] {
            SuccTarget::Corner(t) => incoming[t].push(i),
            SuccTarget::Delta => delta_sources.push(i),
            SuccTarget::Unresolved => {}
        }
    }

    let nv = labels.len() as u32;
    let mut rotations: Vec<Vec<Dart>> = vec![Vec::new(); nv as usize];
    rotations[DELTA as usize] = delta_sources.iter().map(|&c| forward_dart[c] + 1).collect();
    for i in (0..ncor).rev() {
        let v = vertex_of_corner[i] as usize;
        if forward_dart[i] != NIL {
            rotations[v].push(forward_dart[i]);
        }
        let ins = &incoming[i];
        let split = ins.partition_point(|&a| a < i);
        for &a in ins[split..].iter().chain(ins[..split].iter()) {
            rotations[v].push(forward_dart[a] + 1);
        }
    }

    let mut twin = vec![NIL; 2 * nq as usize];
    for q in 0..nq {
        twin[(2 * q) as usize] = 2 * q + 1;
        twin[(2 * q + 1) as usize] = 2 * q;
    }

    let root = root_dart(&corners, &succ_map, &forward_dart, x1, x0_down)?;
    let map = Quadrangulation::from_rotations(nv, &rotations, &twin, root)?;
    let root_vertex = map.origin(root);
    Ok(Assembly {
        map,
        labels,
        vertex_host,
        vertex_of_corner,
        forward_dart,
        corners,
        succ: succ_map,
        root_vertex,
    })
}
