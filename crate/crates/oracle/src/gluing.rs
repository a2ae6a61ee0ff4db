//! Independent rooted-quadrangulation generation: one digon plus n squares,
//! every perfect gluing of their sides, kept when the glued surface is a
//! connected sphere, deduplicated by rooted canonical form. Faces of the
//! result are the polygons by construction, so the Euler count V = n + 2 is
//! the entire genus test. Shares nothing with the chord construction: this
//! is the bijection suite's second opinion.

use std::collections::BTreeSet;

use planar_core::{CanonicalForm, Dart, Quadrangulation};
use rayon::prelude::*;

/// All distinct rooted quadrangulations with n inner quadrangles and a digon
/// outer face, rooted so the digon lies on the right of the root dart.
pub fn quadrangulations_by_gluing(n: usize) -> BTreeSet<CanonicalForm> {
    let ndarts = 4 * n + 2;
    // next-in-face around each polygon: digon {0,1}, quad i at base 2+4i
    let mut nf = vec![0u32; ndarts];
    let mut nf_inv = vec![0u32; ndarts];
    nf[0] = 1;
    nf[1] = 0;
    for q in 0..n {
        let b = 2 + 4 * q;
        for s in 0..4 {
            nf[b + s] = (b + (s + 1) % 4) as u32;
        }
    }
    for d in 0..ndarts {
        nf_inv[nf[d] as usize] = d as u32;
    }

    // branch on dart 0's partner, explore the rest of the matching serially
    (1..ndarts)
        .into_par_iter()
        .map(|first| {
            let mut pairing = vec![u32::MAX; ndarts];
            pairing[0] = first as u32;
            pairing[first] = 0;
            let mut found = BTreeSet::new();
            complete(&mut pairing, &nf_inv, n, &mut found);
            found
        })
        .reduce(BTreeSet::new, |mut a, b| {
            a.extend(b);
            a
        })
}

fn complete(
    pairing: &mut Vec<u32>,
    nf_inv: &[u32],
    n: usize,
    out: &mut BTreeSet<CanonicalForm>,
) {
    let free = pairing.iter().position(|&p| p == u32::MAX);
    let Some(d) = free else {
        if let Some(code) = realize(pairing, nf_inv, n) {
            out.insert(code);
        }
        return;
    };
    for e in d + 1..pairing.len() {
        if pairing[e] == u32::MAX {
            pairing[d] = e as u32;
            pairing[e] = d as u32;
            complete(pairing, nf_inv, n, out);
            pairing[d] = u32::MAX;
            pairing[e] = u32::MAX;
        }
    }
}

/// Check sphere + connectivity, then build the map and return its rooted
/// canonical form. Faces are the polygons, so only Euler can go wrong.
fn realize(pairing: &[u32], nf_inv: &[u32], n: usize) -> Option<CanonicalForm> {
    let ndarts = pairing.len();
    // rotation successor σ with polygon faces: next(d) = σ⁻¹(twin(d))
    let sigma: Vec<u32> = (0..ndarts).map(|x| pairing[nf_inv[x] as usize]).collect();

    // connectivity under ⟨σ, twin⟩
    let mut seen = vec![false; ndarts];
    let mut stack = vec![0u32];
    seen[0] = true;
    let mut reached = 0;
    while let Some(x) = stack.pop() {
        reached += 1;
        for y in [sigma[x as usize], pairing[x as usize]] {
            if !seen[y as usize] {
                seen[y as usize] = true;
                stack.push(y);
            }
        }
    }
    if reached != ndarts {
        return None;
    }

    // vertices = σ-orbits; sphere ⟺ V − E + F = 2 ⟺ V = n + 2
    let mut rotations: Vec<Vec<Dart>> = Vec::new();
    let mut orbit_of = vec![u32::MAX; ndarts];
    for start in 0..ndarts {
        if orbit_of[start] != u32::MAX {
            continue;
        }
        let v = rotations.len() as u32;
        let mut rot = Vec::new();
        let mut x = start as u32;
        while orbit_of[x as usize] == u32::MAX {
            orbit_of[x as usize] = v;
            rot.push(x);
            x = sigma[x as usize];
        }
        rotations.push(rot);
    }
    if rotations.len() != n + 2 {
        return None;
    }

    let root = pairing[0];
    let map = Quadrangulation::from_rotations(rotations.len() as u32, &rotations, pairing, root)
        .expect("gluing data is a complete rotation system");
    debug_assert!(map.validate_finite().is_ok(), "polygon faces must survive realization");
    Some(map.canonical_from(root, false))
}
