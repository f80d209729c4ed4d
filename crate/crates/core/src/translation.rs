//! Combinatorial translation structures, their periods, and the locally
//! bounded translation-surface test.
//!
//! A structure is stored as one weight per dart: the direction of the dart's
//! edge leaving its tail vertex. Side `s` of face `f` carries `r(f) + 2s`, so
//! the seed face has the Type-A pattern (ζ⁰, ζ², ζ⁴), and a glued partner
//! carries the opposite direction.

use std::collections::VecDeque;

use crate::eisenstein::{Eisenstein, Root6};
use crate::error::{Error, Result};
use crate::surface::{face_of, side_of, GluedSurface, VertexTable};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FaceType {
    A,
    B,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TranslationStructure {
    weights: Vec<Root6>,
}

impl TranslationStructure {
    /// Weight of a dart at its tail vertex.
    pub fn weight(&self, dart: usize) -> Root6 {
        self.weights[dart]
    }

    pub fn weights(&self) -> &[Root6] {
        &self.weights
    }

    pub fn face_count(&self) -> usize {
        self.weights.len() / 3
    }

    /// The structure multiplied by ζ^k.
    pub fn rotated(&self, k: i64) -> Self {
        let z = Root6::new(k);
        Self { weights: self.weights.iter().map(|&w| w * z).collect() }
    }

    /// The structure whose face `f` carries the rotation class `class[f]`.
    pub(crate) fn from_face_classes(class: &[u8]) -> Self {
        Self { weights: (0..3 * class.len()).map(|d| Root6::new(class[face_of(d)] as i64 + 2 * side_of(d) as i64)).collect() }
    }

    pub fn face_type(&self, face: usize) -> FaceType {
        if self.weights[3 * face].exponent().is_multiple_of(2) {
            FaceType::A
        } else {
            FaceType::B
        }
    }

    /// Checks both local conditions against `s`.
    pub fn is_valid_on(&self, s: &GluedSurface) -> bool {
        if self.weights.len() != s.dart_count() {
            return false;
        }
        let glue = (0..s.dart_count()).all(|d| s.partner(d).is_none_or(|p| self.weights[p] == -self.weights[d]));
        // at corner s+1 the edge back to corner s is one step counterclockwise
        // from the edge forward to corner s+2
        let faces = (0..s.face_count()).all(|f| {
            (0..3).all(|i| {
                let d = 3 * f + i;
                let e = 3 * f + (i + 1) % 3;
                -self.weights[d] == self.weights[e] * Root6::new(1)
            })
        });
        glue && faces
    }
}

fn require_closed_connected(s: &GluedSurface) -> Result<()> {
    if s.face_count() == 0 {
        return Err(Error::Empty);
    }
    if !s.is_closed() {
        return Err(Error::HasBoundary);
    }
    let (_, n) = s.component_labels();
    if n != 1 {
        return Err(Error::Disconnected(n));
    }
    Ok(())
}

/// Per-face rotation classes reached by propagating across every glued edge
/// from face 0, or `None` if some edge disagrees.
fn propagate(s: &GluedSurface) -> Option<Vec<u8>> {
    let mut class = vec![u8::MAX; s.face_count()];
    class[0] = 0;
    let mut queue = VecDeque::from([0usize]);
    while let Some(f) = queue.pop_front() {
        for side in 0..3 {
            let Some(p) = s.partner(3 * f + side) else { continue };
            let expected = (class[f] as usize + 2 * side + 9 - 2 * side_of(p)) % 6;
            let g = face_of(p);
            if class[g] == u8::MAX {
                class[g] = expected as u8;
                queue.push_back(g);
            } else if class[g] as usize != expected {
                return None;
            }
        }
    }
    Some(class)
}

/// All combinatorial translation structures on a closed connected surface:
/// either none or the six rotations of a single one.
pub fn detect_structures(s: &GluedSurface) -> Result<Vec<TranslationStructure>> {
    require_closed_connected(s)?;
    let Some(class) = propagate(s) else { return Ok(Vec::new()) };
    let base = TranslationStructure::from_face_classes(&class);
    debug_assert!(base.is_valid_on(s));
    assert!(
        s.vertices().iter().all(|v| v.degree % 6 == 0),
        "translation structure on a surface with a vertex degree not divisible by 6"
    );
    Ok((0..6).map(|k| base.rotated(k)).collect())
}

pub fn admits_translation_structure(s: &GluedSurface) -> bool {
    detect_structures(s).is_ok_and(|v| !v.is_empty())
}

pub fn face_types(st: &TranslationStructure) -> Vec<FaceType> {
    (0..st.face_count()).map(|f| st.face_type(f)).collect()
}

/// Sum of dart weights along a walk whose consecutive darts share endpoints.
pub fn edge_path_period(v: &VertexTable, st: &TranslationStructure, path: &[usize]) -> Result<Eisenstein> {
    for (i, w) in path.windows(2).enumerate() {
        if v.head(w[0]) != v.tail(w[1]) {
            return Err(Error::DisconnectedWalk(i, i + 1));
        }
    }
    Ok(path.iter().fold(Eisenstein::ZERO, |acc, &d| acc + st.weight(d).to_eisenstein()))
}

/// Potentials along a spanning tree of the 1-skeleton and holonomies of the
/// remaining edges.
#[derive(Clone, Debug)]
pub struct PeriodMap {
    pub base: usize,
    /// Period of the tree path from the base to each vertex.
    pub potential: Vec<Eisenstein>,
    /// Tree dart arriving at each vertex (none for the base).
    pub tree_dart: Vec<Option<usize>>,
    /// `(dart, holonomy)` for one dart of every co-tree edge; the holonomy is
    /// the period of the loop tree path, dart, tree path back.
    pub cotree: Vec<(usize, Eisenstein)>,
}

pub fn period_map(s: &GluedSurface, v: &VertexTable, st: &TranslationStructure, base: usize) -> PeriodMap {
    let mut potential = vec![Eisenstein::ZERO; v.len()];
    let mut tree_dart = vec![None; v.len()];
    let mut seen = vec![false; v.len()];
    let mut tree_edge = vec![false; s.dart_count()];
    seen[base] = true;
    let mut queue = VecDeque::from([base]);
    while let Some(x) = queue.pop_front() {
        for &d in &v.report(x).corners {
            let y = v.head(d);
            if !seen[y] {
                seen[y] = true;
                potential[y] = potential[x] + st.weight(d).to_eisenstein();
                tree_dart[y] = Some(d);
                tree_edge[d] = true;
                if let Some(p) = s.partner(d) {
                    tree_edge[p] = true;
                }
                queue.push_back(y);
            }
        }
    }
    let cotree = (0..s.dart_count())
        .filter(|&d| !tree_edge[d] && s.partner(d).is_none_or(|p| d < p))
        .map(|d| (d, potential[v.tail(d)] + st.weight(d).to_eisenstein() - potential[v.head(d)]))
        .collect();
    PeriodMap { base, potential, tree_dart, cotree }
}

impl PeriodMap {
    /// Darts of the tree path from the base to `vertex`.
    pub fn tree_path(&self, v: &VertexTable, vertex: usize) -> Vec<usize> {
        let mut path = Vec::new();
        let mut x = vertex;
        while let Some(d) = self.tree_dart[x] {
            path.push(d);
            x = v.tail(d);
        }
        path.reverse();
        path
    }
}

/// Outcome of the locally bounded translation-surface test.
#[derive(Clone, Debug)]
pub struct TranLbReport {
    pub max_degree: usize,
    pub degree_ok: bool,
    pub above_six: Vec<usize>,
    /// V_{>6} vertices whose potential relative to the base is outside 3L.
    pub bad_potentials: Vec<usize>,
    /// Co-tree darts whose loop holonomy is outside 3L.
    pub bad_loops: Vec<usize>,
    pub generators_checked: usize,
}

impl TranLbReport {
    pub fn passed(&self) -> bool {
        self.degree_ok && self.bad_potentials.is_empty() && self.bad_loops.is_empty()
    }
}

pub const TRAN_LB_MAX_DEGREE: usize = 42;

/// Degree cap of 42, and every generator of relative homology rel V_{>6}
/// has period in 3ℤ + 3ωℤ.
pub fn is_locally_bounded_tran(s: &GluedSurface, st: &TranslationStructure) -> Result<TranLbReport> {
    require_closed_connected(s)?;
    if !st.is_valid_on(s) {
        return Err(Error::InvalidStructure(s.dart_count()));
    }
    let v = s.vertices();
    let above_six = v.above_six();
    let base = above_six.first().copied().unwrap_or(0);
    let pm = period_map(s, &v, st, base);
    let bad_potentials = above_six.iter().copied().filter(|&x| !pm.potential[x].in_sublattice(3)).collect();
    let bad_loops = pm.cotree.iter().filter(|(_, h)| !h.in_sublattice(3)).map(|&(d, _)| d).collect();
    let max_degree = v.max_degree();
    Ok(TranLbReport {
        max_degree,
        degree_ok: max_degree <= TRAN_LB_MAX_DEGREE,
        generators_checked: above_six.len().saturating_sub(1) + pm.cotree.len(),
        above_six,
        bad_potentials,
        bad_loops,
    })
}

/// Flat area in units of √3/4, the area of one unit triangle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct FlatArea {
    pub quarter_root3_units: u64,
}

impl FlatArea {
    pub fn to_f64(self) -> f64 {
        self.quarter_root3_units as f64 * 3f64.sqrt() / 4.0
    }
}

impl std::fmt::Display for FlatArea {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}*sqrt(3)/4", self.quarter_root3_units)
    }
}

pub fn flat_area(s: &GluedSurface) -> FlatArea {
    FlatArea { quarter_root3_units: s.face_count() as u64 }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::subdivide::subdivide;
    use crate::surface::{hexagonal_torus, next, pillowcase};

    #[test]
    fn hexagonal_torus_has_six() {
        let t = hexagonal_torus();
        let sts = detect_structures(&t).unwrap();
        assert_eq!(sts.len(), 6);
        assert!(sts.iter().all(|st| st.is_valid_on(&t)));
        assert_eq!(face_types(&sts[0]), vec![FaceType::A, FaceType::B]);
    }

    #[test]
    fn pillowcase_has_none() {
        assert!(detect_structures(&pillowcase()).unwrap().is_empty());
    }

    #[test]
    fn boundary_is_rejected() {
        assert_eq!(detect_structures(&GluedSurface::new(1, []).unwrap()), Err(Error::HasBoundary));
    }

    #[test]
    fn subdivided_torus_types_balance() {
        let s = subdivide(&hexagonal_torus(), 2).unwrap();
        let sts = detect_structures(&s).unwrap();
        let types = face_types(&sts[0]);
        assert_eq!(types.iter().filter(|t| **t == FaceType::A).count(), 4);
        for f in 0..s.face_count() {
            for side in 0..3 {
                let p = s.partner(3 * f + side).unwrap();
                assert_ne!(types[f], types[face_of(p)]);
            }
        }
        let swapped = face_types(&sts[1]);
        let same = face_types(&sts[2]);
        assert!(types.iter().zip(&swapped).all(|(a, b)| a != b));
        assert_eq!(types, same);
    }

    #[test]
    fn periods_of_simple_walks() {
        let t = hexagonal_torus();
        let v = t.vertices();
        let st = &detect_structures(&t).unwrap()[0];
        assert_eq!(edge_path_period(&v, st, &[]).unwrap(), Eisenstein::ZERO);
        for d in 0..6 {
            assert_eq!(edge_path_period(&v, st, &[d]).unwrap().norm(), 1);
            let p = t.partner(d).unwrap();
            assert_eq!(edge_path_period(&v, st, &[d, p]).unwrap(), Eisenstein::ZERO);
        }
    }

    #[test]
    fn walk_must_connect() {
        let s = subdivide(&hexagonal_torus(), 2).unwrap();
        let v = s.vertices();
        let st = &detect_structures(&s).unwrap()[0];
        let d = 0;
        let bad = (0..s.dart_count()).find(|&e| v.tail(e) != v.head(d)).unwrap();
        assert_eq!(edge_path_period(&v, st, &[d, bad]), Err(Error::DisconnectedWalk(0, 1)));
    }

    #[test]
    fn vertex_link_periods_vanish() {
        let s = subdivide(&hexagonal_torus(), 3).unwrap();
        let v = s.vertices();
        let st = &detect_structures(&s).unwrap()[0];
        for r in v.iter() {
            // the far sides of the fan, in rotation order
            let mut c = r.corners[0];
            let mut link = Vec::new();
            for _ in 0..r.degree {
                link.push(next(c));
                c = s.rotate_ccw(c).unwrap();
            }
            assert_eq!(edge_path_period(&v, st, &link).unwrap(), Eisenstein::ZERO);
        }
    }

    #[test]
    fn torus_fails_lb_but_its_triple_passes() {
        let t = hexagonal_torus();
        let st = &detect_structures(&t).unwrap()[0];
        let r = is_locally_bounded_tran(&t, st).unwrap();
        assert!(r.above_six.is_empty() && !r.passed());
        let s3 = subdivide(&t, 3).unwrap();
        let st3 = &detect_structures(&s3).unwrap()[0];
        assert!(is_locally_bounded_tran(&s3, st3).unwrap().passed());
    }

    #[test]
    fn area_counts_triangles() {
        assert_eq!(flat_area(&hexagonal_torus()).quarter_root3_units, 2);
        assert_eq!(flat_area(&subdivide(&hexagonal_torus(), 3).unwrap()).quarter_root3_units, 18);
        assert_eq!(flat_area(&hexagonal_torus()).to_string(), "2*sqrt(3)/4");
    }
}
