//! The fan disk TD_d and the layered bounded-degree disk TH_d.

use std::ops::Range;

use crate::error::{Error, Result};
use crate::surface::{GluedSurface, VertexTable};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DiskKind {
    Fan,
    Hyperbolic,
}

/// A triangulated disk with `d` boundary edges around a marked center.
#[derive(Clone, Debug)]
pub struct TriangulatedDisk {
    pub kind: DiskKind,
    pub d: usize,
    pub surface: GluedSurface,
    /// Dart leaving the center toward the first vertex of the innermost ring.
    pub center_dart: usize,
    /// `boundary[j]` runs from boundary vertex `j` to vertex `j + 1`, with the
    /// disk on its left.
    pub boundary: Vec<usize>,
    /// Ring sizes `d_0 = d, d_1, …, d_{k-1}`; a single entry for a fan.
    pub layers: Vec<usize>,
    /// Faces of `TA_1, …, TA_k`; the last range is the central fan.
    pub layer_faces: Vec<Range<usize>>,
    /// `rings[i][j]` is a dart whose tail is `x_{i,j}`.
    pub rings: Vec<Vec<usize>>,
}

/// Builds the fan of `d` triangles. Face `f` has corners center, `r_f`,
/// `r_{f+1}`; the boundary dart of face `f` is `3f + 1`.
pub fn build_td(d: usize) -> Result<TriangulatedDisk> {
    if d < 2 {
        return Err(Error::InvalidParameter(format!("TD_d needs d >= 2, got {d}")));
    }
    let pairs = (0..d).map(|f| (3 * f + 2, 3 * ((f + 1) % d)));
    let surface = GluedSurface::new(d, pairs)?.with_provenance(format!("TD_{d}"));
    Ok(TriangulatedDisk {
        kind: DiskKind::Fan,
        d,
        surface,
        center_dart: 0,
        boundary: (0..d).map(|f| 3 * f + 1).collect(),
        layers: vec![d],
        layer_faces: std::iter::once(0..d).collect(),
        rings: vec![(0..d).map(|f| 3 * f + 1).collect()],
    })
}

/// Inner neighbours of each outer vertex of an annulus with `outer` outer
/// vertices, listed in counterclockwise order.
pub fn cross_edges(outer: usize) -> Vec<Vec<usize>> {
    let even = outer.is_multiple_of(2);
    (0..outer)
        .map(|j| {
            if even {
                match j {
                    _ if j == outer - 1 => vec![(outer - 2) / 2, 0],
                    _ if j % 2 == 0 => vec![j / 2],
                    _ => vec![(j - 1) / 2, j.div_ceil(2)],
                }
            } else {
                match j {
                    _ if j == outer - 1 => vec![0],
                    _ if j == outer - 2 => vec![(outer - 3) / 2, 0],
                    _ if j % 2 == 0 => vec![j / 2],
                    _ => vec![(j - 1) / 2, j.div_ceil(2)],
                }
            }
        })
        .collect()
}

/// Ring sizes of TH_d: halve until at most 7.
pub fn th_layers(d: usize) -> Vec<usize> {
    let mut layers = vec![d];
    while *layers.last().unwrap() > 7 {
        layers.push(layers.last().unwrap() / 2);
    }
    layers
}

/// Face count of TH_d without building it.
pub fn th_face_count(d: usize) -> usize {
    let l = th_layers(d);
    l.windows(2).map(|w| w[0] + w[1]).sum::<usize>() + l.last().unwrap()
}

/// Builds TH_d from its annuli `TA_1, …, TA_{k-1}` and the central fan
/// `TA_k = TD_{d_{k-1}}`.
pub fn build_th(d: usize) -> Result<TriangulatedDisk> {
    if d < 8 {
        return Err(Error::InvalidParameter(format!("TH_d needs d >= 8, got {d}")));
    }
    let layers = th_layers(d);
    let mut offset = Vec::with_capacity(layers.len());
    let mut next_label = 0;
    for &n in &layers {
        offset.push(next_label);
        next_label += n;
    }
    let center = next_label;
    let label = |i: usize, j: usize| offset[i] + j;

    let mut triangles: Vec<[usize; 3]> = Vec::with_capacity(th_face_count(d));
    let mut layer_faces = Vec::with_capacity(layers.len());
    for i in 1..layers.len() {
        let (outer, inner) = (layers[i - 1], layers[i]);
        let seq: Vec<(usize, usize)> = cross_edges(outer)
            .into_iter()
            .enumerate()
            .flat_map(|(o, ins)| ins.into_iter().map(move |x| (o, x)))
            .collect();
        let start = triangles.len();
        for t in 0..seq.len() {
            let (o0, i0) = seq[t];
            let (o1, i1) = seq[(t + 1) % seq.len()];
            if o1 != o0 {
                debug_assert_eq!((i1, o1), (i0, (o0 + 1) % outer));
                triangles.push([label(i - 1, o0), label(i - 1, o1), label(i, i0)]);
            } else {
                debug_assert_eq!(i1, (i0 + 1) % inner);
                triangles.push([label(i, i1), label(i, i0), label(i - 1, o0)]);
            }
        }
        layer_faces.push(start..triangles.len());
    }
    let last = layers.len() - 1;
    let n = layers[last];
    let fan_start = triangles.len();
    for f in 0..n {
        triangles.push([center, label(last, f), label(last, (f + 1) % n)]);
    }
    layer_faces.push(fan_start..triangles.len());

    let surface = GluedSurface::from_triangles(&triangles)?.with_provenance(format!("TH_{d}"));
    let mut dart_of = vec![usize::MAX; center + 1];
    let mut boundary = vec![usize::MAX; d];
    for (f, tri) in triangles.iter().enumerate() {
        for s in 0..3 {
            dart_of[tri[s]] = dart_of[tri[s]].min(3 * f + s);
            if tri[s] < d && tri[(s + 1) % 3] == (tri[s] + 1) % d && surface.partner(3 * f + s).is_none() {
                boundary[tri[s]] = 3 * f + s;
            }
        }
    }
    debug_assert!(boundary.iter().all(|&b| b != usize::MAX));
    let rings = layers.iter().enumerate().map(|(i, &m)| (0..m).map(|j| dart_of[label(i, j)]).collect()).collect();
    Ok(TriangulatedDisk {
        kind: DiskKind::Hyperbolic,
        d,
        surface,
        center_dart: 3 * fan_start,
        boundary,
        layers,
        layer_faces,
        rings,
    })
}

/// Measured facts about a TH_d against its degree lemma.
#[derive(Clone, Debug)]
pub struct ThReport {
    pub d: usize,
    pub faces: usize,
    pub vertices: usize,
    pub chi: i64,
    pub boundary_edges: usize,
    pub boundary_cycles: usize,
    pub max_interior_degree: usize,
    pub max_boundary_degree: usize,
    /// For each annulus `TA_i`, `i >= 2`: whether some outer vertex has degree 7.
    pub degree_seven_per_layer: Vec<bool>,
}

impl ThReport {
    pub fn is_disk(&self) -> bool {
        self.chi == 1 && self.boundary_cycles == 1 && self.boundary_edges == self.d
    }

    pub fn degree_bounds_hold(&self) -> bool {
        self.max_interior_degree <= 7 && self.max_boundary_degree <= 4
    }

    pub fn every_layer_has_degree_seven(&self) -> bool {
        self.degree_seven_per_layer.iter().all(|&b| b)
    }
}

pub fn th_report(disk: &TriangulatedDisk) -> ThReport {
    let s = &disk.surface;
    let v: VertexTable = s.vertices();
    assert!(s.is_connected(), "disk is connected");
    let chi = v.len() as i64 - s.edge_count() as i64 + s.face_count() as i64;
    let max_deg = |boundary: bool| v.iter().filter(|r| r.boundary == boundary).map(|r| r.degree).max().unwrap_or(0);
    // the outer boundary of TA_i is ring i - 1
    let degree_seven_per_layer = (2..=disk.layers.len())
        .map(|i| disk.rings[i - 1].iter().any(|&d| v.degree(v.tail(d)) == 7))
        .collect();
    ThReport {
        d: disk.d,
        faces: s.face_count(),
        vertices: v.len(),
        chi,
        boundary_edges: s.boundary_darts().count(),
        boundary_cycles: s.boundary_cycles().len(),
        max_interior_degree: max_deg(false),
        max_boundary_degree: max_deg(true),
        degree_seven_per_layer,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn td8_counts() {
        let td = build_td(8).unwrap();
        let v = td.surface.vertices();
        assert_eq!((td.surface.face_count(), v.len()), (8, 9));
        assert_eq!(td.surface.boundary_darts().count(), 8);
        assert_eq!(v.degree(v.tail(td.center_dart)), 8);
        assert!(v.iter().filter(|r| r.boundary).all(|r| r.degree == 3));
        assert_eq!(td.surface.euler().unwrap().chi, 1);
    }

    #[test]
    fn td_rejects_degenerate() {
        assert!(build_td(1).is_err());
        let td2 = build_td(2).unwrap();
        assert_eq!(td2.surface.euler().unwrap().chi, 1);
    }

    #[test]
    fn cross_edge_counts() {
        for outer in 8..40 {
            let c = cross_edges(outer);
            let total: usize = c.iter().map(Vec::len).sum();
            assert_eq!(total, outer + outer / 2);
            for (j, ins) in c.iter().enumerate() {
                let expected = if outer % 2 == 1 && j == outer - 1 { 1 } else { 1 + j % 2 };
                assert_eq!(ins.len(), expected, "outer {outer} j {j}");
            }
        }
    }

    #[test]
    fn th8_and_th16() {
        let t8 = build_th(8).unwrap();
        assert_eq!(t8.layers, vec![8, 4]);
        let r = th_report(&t8);
        assert_eq!((r.faces, r.vertices), (16, 13));
        assert!(r.is_disk() && r.degree_bounds_hold());
        let t16 = build_th(16).unwrap();
        assert_eq!(t16.layers, vec![16, 8, 4]);
        assert_eq!(t16.surface.face_count(), 40);
        assert_eq!(th_face_count(16), 40);
    }

    #[test]
    fn th9_odd_case() {
        let t9 = build_th(9).unwrap();
        assert_eq!(t9.layers, vec![9, 4]);
        let r = th_report(&t9);
        assert!(r.is_disk() && r.degree_bounds_hold());
        let v = t9.surface.vertices();
        let outer: Vec<_> = t9.rings[0].iter().map(|&d| v.degree(v.tail(d))).collect();
        assert_eq!(outer, vec![3, 4, 3, 4, 3, 4, 3, 4, 3]);
    }

    #[test]
    fn boundary_darts_chain() {
        for d in [8, 9, 15, 33] {
            let t = build_th(d).unwrap();
            let v = t.surface.vertices();
            for j in 0..d {
                let b = t.boundary[j];
                assert!(t.surface.partner(b).is_none());
                assert_eq!(v.head(b), v.tail(t.boundary[(j + 1) % d]));
                assert_eq!(v.tail(b), v.tail(t.rings[0][j]));
            }
            assert_eq!(v.degree(v.tail(t.center_dart)), *t.layers.last().unwrap());
        }
    }
}
