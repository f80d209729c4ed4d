//! k-subdivision of every face into k² unit triangles, and its inverse.

use crate::error::{Error, Result};
use crate::surface::{face_of, side_of, GluedSurface, NO_DART};

/// Where a local dart of the subdivided model triangle is glued.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LocalLink {
    /// Glued to another local dart.
    Inner(usize),
    /// On side `side` of the big triangle, `segment` steps from its start corner.
    Rim { side: usize, segment: usize },
}

/// The k-subdivision of a single counterclockwise triangle with corners
/// `(0,0)`, `(k,0)`, `(0,k)` in lattice coordinates.
#[derive(Clone, Debug)]
pub struct SubdivisionLayout {
    pub k: usize,
    /// Lattice points at the three corners of each local face.
    pub faces: Vec<[(usize, usize); 3]>,
    pub links: Vec<LocalLink>,
    /// `rim[side][segment]` is the local dart on that rim segment.
    pub rim: [Vec<usize>; 3],
}

impl SubdivisionLayout {
    pub fn new(k: usize) -> Self {
        let mut faces = Vec::with_capacity(k * k);
        for j in 0..k {
            for i in 0..k - j {
                faces.push([(i, j), (i + 1, j), (i, j + 1)]);
            }
        }
        for j in 0..k.saturating_sub(1) {
            for i in 0..k - 1 - j {
                faces.push([(i + 1, j), (i + 1, j + 1), (i, j + 1)]);
            }
        }
        debug_assert_eq!(faces.len(), k * k);

        let mut by_edge = std::collections::HashMap::new();
        for (f, tri) in faces.iter().enumerate() {
            for s in 0..3 {
                by_edge.insert((tri[s], tri[(s + 1) % 3]), 3 * f + s);
            }
        }
        let rim_edge = |side: usize, t: usize| -> ((usize, usize), (usize, usize)) {
            match side {
                0 => ((t, 0), (t + 1, 0)),
                1 => ((k - t, t), (k - t - 1, t + 1)),
                _ => ((0, k - t), (0, k - t - 1)),
            }
        };
        let mut links = vec![LocalLink::Inner(usize::MAX); 3 * k * k];
        let mut rim: [Vec<usize>; 3] = Default::default();
        for (side, row) in rim.iter_mut().enumerate() {
            for t in 0..k {
                let d = by_edge[&rim_edge(side, t)];
                links[d] = LocalLink::Rim { side, segment: t };
                row.push(d);
            }
        }
        for (&(a, b), &d) in &by_edge {
            if let Some(&p) = by_edge.get(&(b, a)) {
                links[d] = LocalLink::Inner(p);
            }
        }
        debug_assert!(links.iter().all(|l| *l != LocalLink::Inner(usize::MAX)));
        Self { k, faces, links, rim }
    }

    pub fn faces_per_block(&self) -> usize {
        self.k * self.k
    }

    /// True when the lattice point is a corner of the big triangle.
    pub fn is_corner(&self, p: (usize, usize)) -> bool {
        p == (0, 0) || p == (self.k, 0) || p == (0, self.k)
    }
}

/// Replaces every face by its k-subdivision. Face `f` becomes faces
/// `k²f .. k²(f+1)` in layout order.
pub fn subdivide(surface: &GluedSurface, k: usize) -> Result<GluedSurface> {
    if k < 2 {
        return Err(Error::InvalidParameter(format!("subdivision factor must be at least 2, got {k}")));
    }
    let layout = SubdivisionLayout::new(k);
    let block = 3 * k * k;
    let mut partner = vec![NO_DART; block * surface.face_count()];
    for f in 0..surface.face_count() {
        for (ld, link) in layout.links.iter().enumerate() {
            let d = block * f + ld;
            partner[d] = match *link {
                LocalLink::Inner(p) => (block * f + p) as u32,
                LocalLink::Rim { side, segment } => match surface.partner(3 * f + side) {
                    Some(p) => (block * face_of(p) + layout.rim[side_of(p)][k - 1 - segment]) as u32,
                    None => NO_DART,
                },
            };
        }
    }
    let note = match surface.provenance() {
        Some(p) => format!("{k}-subdivision of {p}"),
        None => format!("{k}-subdivision"),
    };
    Ok(GluedSurface::from_raw(partner).with_provenance(note))
}

/// Inverts [`subdivide`] for a surface whose faces are still grouped in
/// layout-ordered blocks of k². Fails if any block deviates from the layout.
pub fn unsubdivide(fine: &GluedSurface, k: usize) -> Result<GluedSurface> {
    let layout = SubdivisionLayout::new(k);
    let per = layout.faces_per_block();
    if k < 2 || !fine.face_count().is_multiple_of(per) {
        return Err(Error::Provenance(format!("{} faces do not form blocks of {per}", fine.face_count())));
    }
    let block = 3 * per;
    let coarse_faces = fine.face_count() / per;
    let mut partner = vec![NO_DART; 3 * coarse_faces];
    for f in 0..coarse_faces {
        for (ld, link) in layout.links.iter().enumerate() {
            let d = block * f + ld;
            if let LocalLink::Inner(p) = *link {
                if fine.partner(d) != Some(block * f + p) {
                    return Err(Error::Provenance(format!("block {f} interior differs at dart {d}")));
                }
            }
        }
        for side in 0..3 {
            let mut glued = Vec::with_capacity(k);
            for (segment, &ld) in layout.rim[side].iter().enumerate() {
                let coarse = match fine.partner(block * f + ld) {
                    None => None,
                    Some(q) => match layout.links[q % block] {
                        LocalLink::Rim { side: s2, segment: t2 } if t2 == k - 1 - segment => Some(3 * (q / block) + s2),
                        _ => return Err(Error::Provenance(format!("rim of block {f} side {side} crosses into a non-matching segment"))),
                    },
                };
                glued.push(coarse);
            }
            if glued.iter().any(|g| *g != glued[0]) {
                return Err(Error::Provenance(format!("rim of block {f} side {side} is glued inconsistently")));
            }
            partner[3 * f + side] = glued[0].map_or(NO_DART, |c| c as u32);
        }
    }
    Ok(GluedSurface::from_raw(partner))
}
