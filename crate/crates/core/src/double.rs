//! Conformal double of a surface with boundary.

use crate::error::{Error, Result};
use crate::surface::{face_of, side_of, GluedSurface, NO_DART};

/// The double together with its orientation-reversing involution.
#[derive(Clone, Debug)]
pub struct Double {
    pub surface: GluedSurface,
    /// `mirror[d]` is the dart covering the same edge as `d` in the other copy,
    /// traversed in the opposite direction.
    pub mirror: Vec<usize>,
}

#[inline]
fn mirror_side(side: usize) -> usize {
    2 - side
}

/// Glues `surface` to its mirror image along the boundary. Face `f` of the
/// mirror copy is face `T + f`, with corners `0, 2, 1` of the original.
pub fn conformal_double(surface: &GluedSurface) -> Result<Double> {
    if surface.is_closed() {
        return Err(Error::Closed);
    }
    let t = surface.face_count();
    let mirror_dart = |d: usize| 3 * (face_of(d) + t) + mirror_side(side_of(d));
    let mut partner = vec![NO_DART; 6 * t];
    for d in 0..3 * t {
        let m = mirror_dart(d);
        match surface.partner(d) {
            Some(p) => {
                partner[d] = p as u32;
                partner[m] = mirror_dart(p) as u32;
            }
            None => {
                partner[d] = m as u32;
                partner[m] = d as u32;
            }
        }
    }
    let mut mirror = vec![0; 6 * t];
    for d in 0..3 * t {
        let m = mirror_dart(d);
        mirror[d] = m;
        mirror[m] = d;
    }
    let note = match surface.provenance() {
        Some(p) => format!("double of {p}"),
        None => "double".to_string(),
    };
    Ok(Double { surface: GluedSurface::from_raw(partner).with_provenance(note), mirror })
}

impl Double {
    /// Checks that `mirror` is an involution commuting with the gluing and
    /// fixing every edge of the old boundary.
    pub fn mirror_is_symmetry(&self, original: &GluedSurface) -> bool {
        let s = &self.surface;
        let involution = (0..s.dart_count()).all(|d| self.mirror[self.mirror[d]] == d);
        let commutes = (0..s.dart_count()).all(|d| match s.partner(d) {
            Some(p) => s.partner(self.mirror[d]) == Some(self.mirror[p]),
            None => false,
        });
        let fixes_boundary = original.boundary_darts().all(|d| s.partner(d) == Some(self.mirror[d]));
        involution && commutes && fixes_boundary
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::subdivide::subdivide;
    use crate::surface::hexagonal_torus;

    #[test]
    fn single_triangle_doubles_to_pillowcase() {
        let tri = GluedSurface::new(1, []).unwrap();
        let d = conformal_double(&tri).unwrap();
        let e = d.surface.euler().unwrap();
        assert_eq!((d.surface.face_count(), e.genus, e.vertices), (2, 0, 3));
        assert!(d.mirror_is_symmetry(&tri));
    }

    #[test]
    fn closed_input_is_rejected() {
        assert!(matches!(conformal_double(&hexagonal_torus()), Err(Error::Closed)));
    }

    #[test]
    fn genus_formula_on_annulus() {
        // strip of 6 triangles closed up into an annulus
        let tris = [
            [0, 1, 3], [1, 4, 3], [1, 2, 4], [2, 5, 4], [2, 0, 5], [0, 3, 5],
        ];
        let annulus = GluedSurface::from_triangles(&tris).unwrap();
        let e = annulus.euler().unwrap();
        assert_eq!((e.genus, e.boundary_components), (0, 2));
        let d = conformal_double(&annulus).unwrap();
        assert_eq!(d.surface.genus().unwrap(), 1);
        assert!(d.mirror_is_symmetry(&annulus));
    }

    #[test]
    fn subdivided_triangle_double() {
        let tri = subdivide(&GluedSurface::new(1, []).unwrap(), 3).unwrap();
        let d = conformal_double(&tri).unwrap();
        assert!(d.surface.is_closed());
        assert_eq!(d.surface.genus().unwrap(), 0);
        assert!(d.mirror_is_symmetry(&tri));
    }
}
