//! Rooted planar quadrangulations with boundary, as half-edge (dart) tables.
//! Faces are next-orbits and are walked keeping the face on the LEFT; the
//! outer face is the next-orbit of twin(root), i.e. the outer face lies to
//! the right of the root dart.

use crate::CoreError;
use serde::{Deserialize, Serialize};
use std::collections::VecDeque;

pub type Dart = u32;
pub type VertexId = u32;
pub const NIL: u32 = u32::MAX;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HalfEdge {
    pub twin: u32,
    pub next: u32,
    pub origin: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Quadrangulation {
    pub vertices: u32,
    pub half_edges: Vec<HalfEdge>,
    /// Root dart; NIL only for the degenerate single-vertex map.
    pub root: u32,
    /// Smallest dart of the outer next-orbit; NIL when edgeless.
    pub outer_face: u32,
}

/// Root-preserving BFS relabelling of darts; equal encodings ⟺ equal rooted maps.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct CanonicalForm {
    pub vertices: u32,
    pub code: Vec<(u32, u32)>,
}

impl Quadrangulation {
    pub fn single_vertex() -> Self {
        Quadrangulation { vertices: 1, half_edges: vec![], root: NIL, outer_face: NIL }
    }

    pub fn edge_count(&self) -> usize {
        self.half_edges.len() / 2
    }

    /// Build from per-vertex counterclockwise rotations. `next(h) = σ⁻¹(twin(h))`
    /// evaluated at the head of h.
    pub fn from_rotations(
        vertices: u32,
        rotations: &[Vec<Dart>],
        twin: &[Dart],
        root: Dart,
    ) -> Result<Self, CoreError> {
        let n = twin.len();
        let mut origin = vec![NIL; n];
        let mut pos_in_rot = vec![(NIL, NIL); n]; // (vertex, index)
        for (v, rot) in rotations.iter().enumerate() {
            for (i, &d) in rot.iter().enumerate() {
                if (d as usize) >= n || origin[d as usize] != NIL {
                    return Err(CoreError::InvalidMap(format!("rotation misuse of dart {d}")));
                }
                origin[d as usize] = v as u32;
                pos_in_rot[d as usize] = (v as u32, i as u32);
            }
        }
        if origin.iter().any(|&o| o == NIL) {
            return Err(CoreError::InvalidMap("dart missing from rotations".into()));
        }
        let mut half_edges: Vec<HalfEdge> = (0..n)
            .map(|d| HalfEdge { twin: twin[d], next: NIL, origin: origin[d] })
            .collect();
        for d in 0..n {
            let t = twin[d] as usize;
            if t >= n || twin[t] as usize != d || t == d {
                return Err(CoreError::InvalidMap(format!("twin not an involution at {d}")));
            }
            let (v, i) = pos_in_rot[t];
            let rot = &rotations[v as usize];
            let prev_i = (i as usize + rot.len() - 1) % rot.len();
            half_edges[d].next = rot[prev_i];
        }
        let root_twin = half_edges[root as usize].twin;
        let q = Quadrangulation { vertices, half_edges, root, outer_face: NIL };
        let outer = q.face_orbit(root_twin).into_iter().min().unwrap();
        Ok(Quadrangulation { outer_face: outer, ..q })
    }

    pub fn twin(&self, d: Dart) -> Dart {
        self.half_edges[d as usize].twin
    }
    pub fn next(&self, d: Dart) -> Dart {
        self.half_edges[d as usize].next
    }
    pub fn origin(&self, d: Dart) -> VertexId {
        self.half_edges[d as usize].origin
    }
    pub fn head(&self, d: Dart) -> VertexId {
        self.origin(self.twin(d))
    }

    pub fn prev_table(&self) -> Vec<Dart> {
        let mut prev = vec![NIL; self.half_edges.len()];
        for (d, he) in self.half_edges.iter().enumerate() {
            prev[he.next as usize] = d as u32;
        }
        prev
    }

    pub fn face_orbit(&self, start: Dart) -> Vec<Dart> {
        let mut out = vec![start];
        let mut d = self.next(start);
        while d != start {
            out.push(d);
            d = self.next(d);
        }
        out
    }

    /// Same map re-rooted at `root`; the outer face becomes the next-orbit of
    /// twin(root), so the new root must bound the intended outer face on its right.
    pub fn rerooted(&self, root: Dart) -> Quadrangulation {
        assert!((root as usize) < self.half_edges.len(), "rerooted: dart out of range");
        let outer = self.face_orbit(self.twin(root)).into_iter().min().unwrap();
        Quadrangulation { root, outer_face: outer, ..self.clone() }
    }

    pub fn faces(&self) -> Vec<Vec<Dart>> {
        let mut seen = vec![false; self.half_edges.len()];
        let mut out = vec![];
        for d in 0..self.half_edges.len() as u32 {
            if !seen[d as usize] {
                let orbit = self.face_orbit(d);
                for &x in &orbit {
                    seen[x as usize] = true;
                }
                out.push(orbit);
            }
        }
        out
    }

    /// Counterclockwise rotation at each vertex, from σ(d) = twin(prev(d)).
    pub fn rotations(&self) -> Vec<Vec<Dart>> {
        let prev = self.prev_table();
        let mut rot: Vec<Vec<Dart>> = vec![vec![]; self.vertices as usize];
        let mut seen = vec![false; self.half_edges.len()];
        for d0 in 0..self.half_edges.len() as u32 {
            if seen[d0 as usize] {
                continue;
            }
            let v = self.origin(d0) as usize;
            let mut d = d0;
            loop {
                rot[v].push(d);
                seen[d as usize] = true;
                d = self.twin(prev[d as usize]);
                if d == d0 {
                    break;
                }
            }
        }
        rot
    }

    pub fn area(&self) -> usize {
        self.faces().len() - 1
    }

    pub fn perimeter(&self) -> usize {
        if self.half_edges.is_empty() {
            0
        } else {
            self.face_orbit(self.outer_face).len()
        }
    }

    /// All non-outer faces degree 4, Euler count, involution, connectivity.
    pub fn validate_finite(&self) -> Result<(), CoreError> {
        let n = self.half_edges.len();
        if n == 0 {
            return if self.vertices == 1 {
                Ok(())
            } else {
                Err(CoreError::InvalidMap("edgeless map must have 1 vertex".into()))
            };
        }
        if n % 2 != 0 {
            return Err(CoreError::InvalidMap("odd dart count".into()));
        }
        let mut next_seen = vec![false; n];
        for (d, he) in self.half_edges.iter().enumerate() {
            let t = he.twin as usize;
            if t >= n || self.half_edges[t].twin as usize != d || t == d {
                return Err(CoreError::InvalidMap(format!("twin broken at {d}")));
            }
            if he.next as usize >= n || next_seen[he.next as usize] {
                return Err(CoreError::InvalidMap(format!("next not a permutation at {d}")));
            }
            next_seen[he.next as usize] = true;
            if he.origin >= self.vertices {
                return Err(CoreError::InvalidMap(format!("origin out of range at {d}")));
            }
        }
        // connectivity over darts via {next, twin}
        let mut seen = vec![false; n];
        let mut stack = vec![0u32];
        seen[0] = true;
        let mut count = 0;
        while let Some(d) = stack.pop() {
            count += 1;
            for e in [self.next(d), self.twin(d)] {
                if !seen[e as usize] {
                    seen[e as usize] = true;
                    stack.push(e);
                }
            }
        }
        if count != n {
            return Err(CoreError::InvalidMap("disconnected".into()));
        }
        let outer_orbit = self.face_orbit(self.twin(self.root));
        if outer_orbit.iter().min() != Some(&self.outer_face) {
            return Err(CoreError::InvalidMap("outer_face is not the orbit of twin(root)".into()));
        }
        let faces = self.faces();
        let mut inner = 0usize;
        for f in &faces {
            if f.iter().min() == Some(&self.outer_face) {
                continue;
            }
            if f.len() != 4 {
                return Err(CoreError::InvalidMap(format!("inner face of degree {}", f.len())));
            }
            inner += 1;
        }
        let e = n / 2;
        let v = self.vertices as usize;
        let f = faces.len();
        if v + f != e + 2 {
            return Err(CoreError::InvalidMap(format!("Euler: V={v} E={e} F={f}")));
        }
        // V = n_quads + p + 1 with perimeter 2p, E = 2n + p
        let p2 = outer_orbit.len();
        if p2 % 2 != 0 || v != inner + p2 / 2 + 1 || e != 2 * inner + p2 / 2 {
            return Err(CoreError::InvalidMap(format!(
                "counts: V={v} E={e} inner={inner} perimeter={p2}"
            )));
        }
        Ok(())
    }

    pub fn graph_distances_from_root(&self) -> Vec<u32> {
        self.graph_distances_from(self.origin(self.root))
    }

    pub fn graph_distances_from(&self, v0: VertexId) -> Vec<u32> {
        let mut adj: Vec<Vec<u32>> = vec![vec![]; self.vertices as usize];
        for he in &self.half_edges {
            adj[he.origin as usize].push(self.half_edges[he.twin as usize].origin);
        }
        let mut dist = vec![u32::MAX; self.vertices as usize];
        let mut q = VecDeque::new();
        dist[v0 as usize] = 0;
        q.push_back(v0);
        while let Some(v) = q.pop_front() {
            for &w in &adj[v as usize] {
                if dist[w as usize] == u32::MAX {
                    dist[w as usize] = dist[v as usize] + 1;
                    q.push_back(w);
                }
            }
        }
        dist
    }

    /// Induced submap on vertices at distance ≤ r from `center`, rotations
    /// restricted in place. Returns the submap and the image of `center`.
    pub fn ball_from(&self, center: VertexId, r: u32) -> (Quadrangulation, VertexId) {
        let dist = self.graph_distances_from(center);
        let keep_v: Vec<bool> = dist.iter().map(|&d| d <= r).collect();
        let mut vmap = vec![NIL; self.vertices as usize];
        let mut nv = 0u32;
        for v in 0..self.vertices as usize {
            if keep_v[v] {
                vmap[v] = nv;
                nv += 1;
            }
        }
        let keep_d: Vec<bool> = (0..self.half_edges.len() as u32)
            .map(|d| keep_v[self.origin(d) as usize] && keep_v[self.head(d) as usize])
            .collect();
        let mut dmap = vec![NIL; self.half_edges.len()];
        let mut nd = 0u32;
        for d in 0..self.half_edges.len() {
            if keep_d[d] {
                dmap[d] = nd;
                nd += 1;
            }
        }
        if nd == 0 {
            return (Quadrangulation::single_vertex(), 0);
        }
        let mut rotations: Vec<Vec<Dart>> = vec![vec![]; nv as usize];
        for (v, rot) in self.rotations().into_iter().enumerate() {
            if !keep_v[v] {
                continue;
            }
            rotations[vmap[v] as usize] =
                rot.into_iter().filter(|&d| keep_d[d as usize]).map(|d| dmap[d as usize]).collect();
        }
        let mut twin = vec![NIL; nd as usize];
        for d in 0..self.half_edges.len() {
            if keep_d[d] {
                twin[dmap[d] as usize] = dmap[self.twin(d as u32) as usize];
            }
        }
        let root = if self.root != NIL && keep_d[self.root as usize] {
            dmap[self.root as usize]
        } else {
            // fall back to the smallest kept dart at the center, if any
            rotations[vmap[center as usize] as usize].first().copied().unwrap_or(0)
        };
        let q = Quadrangulation::from_rotations(nv, &rotations, &twin, root)
            .expect("induced submap is well-formed");
        (q, vmap[center as usize])
    }

    pub fn ball(&self, r: u32) -> BallMap {
        let (map, _) = self.ball_from(self.origin(self.root), r);
        BallMap { map, radius: r, residual_risk: 0.0 }
    }

    pub fn canonical_form(&self) -> CanonicalForm {
        if self.half_edges.is_empty() {
            return CanonicalForm { vertices: self.vertices, code: vec![] };
        }
        self.canonical_from(self.root, false)
    }

    /// BFS relabelling from `start`; `mirrored` encodes the σ-reversed map
    /// (next_flip(h) = twin(prev(twin(h)))) without rerooting.
    pub fn canonical_from(&self, start: Dart, mirrored: bool) -> CanonicalForm {
        let n = self.half_edges.len();
        let prev = if mirrored { self.prev_table() } else { vec![] };
        let nx = |d: Dart| -> Dart {
            if mirrored {
                self.twin(prev[self.twin(d) as usize])
            } else {
                self.next(d)
            }
        };
        let mut id = vec![NIL; n];
        let mut order = Vec::with_capacity(n);
        let mut qq = VecDeque::new();
        id[start as usize] = 0;
        order.push(start);
        qq.push_back(start);
        while let Some(d) = qq.pop_front() {
            for e in [nx(d), self.twin(d)] {
                if id[e as usize] == NIL {
                    id[e as usize] = order.len() as u32;
                    order.push(e);
                    qq.push_back(e);
                }
            }
        }
        let code = order
            .iter()
            .map(|&d| (id[nx(d) as usize], id[self.twin(d) as usize]))
            .collect();
        CanonicalForm { vertices: self.vertices, code }
    }

    /// Minimum rooted code over darts at `v`: class of the map pointed at v.
    pub fn pointed_canonical(&self, v: VertexId, mirrored: bool) -> CanonicalForm {
        if self.half_edges.is_empty() {
            return CanonicalForm { vertices: self.vertices, code: vec![] };
        }
        (0..self.half_edges.len() as u32)
            .filter(|&d| self.origin(d) == v)
            .map(|d| self.canonical_from(d, mirrored))
            .min()
            .expect("pointed vertex must have a dart")
    }

    /// Mirror image, rerooted on the next edge counterclockwise around the
    /// image of the root vertex. σ′ = σ⁻¹, next′(h) = twin(prev(twin(h))).
    pub fn flip(&self) -> Quadrangulation {
        if self.half_edges.is_empty() {
            return self.clone();
        }
        let prev = self.prev_table();
        let half_edges: Vec<HalfEdge> = (0..self.half_edges.len())
            .map(|d| HalfEdge {
                twin: self.twin(d as u32),
                next: self.twin(prev[self.twin(d as u32) as usize]),
                origin: self.origin(d as u32),
            })
            .collect();
        let root = self.next(self.twin(self.root));
        let q = Quadrangulation { vertices: self.vertices, half_edges, root, outer_face: 0 };
        let outer = q.face_orbit(q.twin(root)).into_iter().min().unwrap();
        Quadrangulation { outer_face: outer, ..q }
    }
}

/// 0 for identical maps, else (1 + max(0, sup{r ≥ 1 : [q]_r = [q′]_r}))^{-1}.
pub fn local_distance(q: &Quadrangulation, q2: &Quadrangulation) -> f64 {
    if q.canonical_form() == q2.canonical_form() {
        return 0.0;
    }
    let rmax = (q.vertices.max(q2.vertices)) + 1;
    let mut sup = 0u32;
    for r in 1..=rmax {
        if q.ball(r).map.canonical_form() == q2.ball(r).map.canonical_form() {
            sup = r;
        } else {
            break;
        }
    }
    1.0 / (1.0 + sup as f64)
}

#[derive(Clone, Debug)]
pub struct BallMap {
    pub map: Quadrangulation,
    pub radius: u32,
    /// Upper bound on the probability that the true object differs in this ball.
    pub residual_risk: f64,
}

/// Finite truncation of an infinite map; only balls within `trusted_radius`
/// reflect the infinite object.
#[derive(Clone, Debug)]
pub struct WindowedMap {
    pub map: Quadrangulation,
    pub trusted_radius: u32,
    pub residual_risk: f64,
}

impl WindowedMap {
    pub fn ball(&self, r: u32) -> Result<BallMap, CoreError> {
        if r > self.trusted_radius {
            return Err(CoreError::WindowTooSmall(format!(
                "requested radius {r} exceeds trusted radius {}",
                self.trusted_radius
            )));
        }
        let (map, _) = self.map.ball_from(self.map.origin(self.map.root), r);
        Ok(BallMap { map, radius: r, residual_risk: self.residual_risk })
    }
}
