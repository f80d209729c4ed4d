//! Relabeling-invariant encoding of connected surfaces.
//!
//! A breadth-first relabeling from a root dart numbers faces in the order
//! they are discovered while scanning darts in increasing new label, with the
//! discovering dart's partner becoming side 0 of the new face. The resulting
//! partner table (the code) determines the rooted surface. The canonical form
//! is the least code over roots drawn from the rarest class of dart
//! signatures, which is itself invariant under relabeling.

use crate::error::{Error, Result};
use crate::surface::{face_of, side_of, GluedSurface, VertexTable, NO_DART};

/// Local invariant of a dart: tail degree, head degree, boundary flag.
fn signature(s: &GluedSurface, v: &VertexTable, d: usize) -> (usize, usize, bool) {
    (v.degree(v.tail(d)), v.degree(v.head(d)), s.partner(d).is_none())
}

/// Darts eligible as canonical roots.
pub(crate) fn root_class(s: &GluedSurface, v: &VertexTable) -> Vec<usize> {
    let mut counts = std::collections::BTreeMap::new();
    for d in 0..s.dart_count() {
        *counts.entry(signature(s, v, d)).or_insert(0usize) += 1;
    }
    let best = counts
        .iter()
        .min_by_key(|(sig, n)| (**n, **sig))
        .map(|(sig, _)| *sig)
        .expect("nonempty surface");
    (0..s.dart_count()).filter(|&d| signature(s, v, d) == best).collect()
}

/// BFS code from `root`. When `bound` is given, returns `None` as soon as the
/// code is known to exceed it.
pub(crate) fn bfs_code(s: &GluedSurface, root: usize, bound: Option<&[u32]>) -> Option<Vec<u32>> {
    let t = s.face_count();
    let mut new_face = vec![u32::MAX; t];
    let mut offset = vec![0u8; t];
    let mut order = Vec::with_capacity(t);
    new_face[face_of(root)] = 0;
    offset[face_of(root)] = side_of(root) as u8;
    order.push(face_of(root));
    let mut code = Vec::with_capacity(3 * t);
    let mut tight = bound.is_some();
    let mut i = 0;
    while i < 3 * order.len() {
        let old_face = order[i / 3];
        let old = 3 * old_face + (i % 3 + offset[old_face] as usize) % 3;
        let value = match s.partner(old) {
            None => NO_DART,
            Some(p) => {
                let pf = face_of(p);
                if new_face[pf] == u32::MAX {
                    new_face[pf] = order.len() as u32;
                    offset[pf] = side_of(p) as u8;
                    order.push(pf);
                }
                3 * new_face[pf] + ((side_of(p) + 3 - offset[pf] as usize) % 3) as u32
            }
        };
        if tight {
            let b = bound.unwrap()[i];
            if value > b {
                return None;
            }
            if value < b {
                tight = false;
            }
        }
        code.push(value);
        i += 1;
    }
    Some(code)
}

/// Least BFS code over the canonical root class.
pub fn canonical_code(s: &GluedSurface) -> Result<Vec<u32>> {
    if s.face_count() == 0 {
        return Err(Error::Empty);
    }
    let (_, comps) = s.component_labels();
    if comps != 1 {
        return Err(Error::Disconnected(comps));
    }
    let v = s.vertices();
    let mut best: Option<Vec<u32>> = None;
    for root in root_class(s, &v) {
        if let Some(code) = bfs_code(s, root, best.as_deref()) {
            best = Some(code);
        }
    }
    Ok(best.expect("root class is nonempty"))
}

/// The surface relabeled by its canonical code.
pub fn canonical_surface(s: &GluedSurface) -> Result<GluedSurface> {
    Ok(GluedSurface::from_raw(canonical_code(s)?))
}

/// Canonical TSF bytes: equal iff the surfaces are orientation-preserving
/// simplicially isomorphic.
pub fn canonical_form(s: &GluedSurface) -> Result<Vec<u8>> {
    Ok(canonical_surface(s)?.to_tsf().into_bytes())
}

/// Isomorphism test for possibly disconnected surfaces: compares the sorted
/// multisets of component canonical forms.
pub fn is_isomorphic(a: &GluedSurface, b: &GluedSurface) -> bool {
    if a.face_count() != b.face_count() {
        return false;
    }
    let forms = |s: &GluedSurface| {
        let mut f: Vec<_> = s.connected_components().iter().map(|c| canonical_code(c).expect("component")).collect();
        f.sort();
        f
    };
    a.face_count() == 0 || forms(a) == forms(b)
}

/// Applies a face permutation and per-face rotation. Face `f` becomes face
/// `perm[f]`, with old side `s` moved to new side `(s + rot[f]) % 3`.
pub fn relabel(s: &GluedSurface, perm: &[usize], rot: &[usize]) -> GluedSurface {
    let map = |d: usize| 3 * perm[face_of(d)] + (side_of(d) + rot[face_of(d)]) % 3;
    let mut partner = vec![NO_DART; s.dart_count()];
    for d in 0..s.dart_count() {
        if let Some(p) = s.partner(d) {
            partner[map(d)] = map(p) as u32;
        }
    }
    GluedSurface::from_raw(partner)
}
