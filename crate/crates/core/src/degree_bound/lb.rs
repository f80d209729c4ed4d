//! Recognising 3-subdivisions of degree-bounded surfaces.

use crate::subdivide::{LocalLink, SubdivisionLayout};
use crate::surface::{face_of, side_of, GluedSurface, VertexTable, NO_DART};

pub const LB_FACTOR: usize = 3;
pub const LB_MAX_DEGREE: usize = 7;

/// A coarse surface whose 3-subdivision is the input, with the face map.
#[derive(Clone, Debug)]
pub struct Coarsening {
    pub coarse: GluedSurface,
    /// For each fine face: `(macro face, local face, rotation)`; fine dart
    /// `3f + (s + rotation) % 3` plays local side `s`.
    pub role: Vec<(usize, usize, usize)>,
    /// Fine vertices sitting at macro corners.
    pub macro_vertex: Vec<bool>,
}

#[derive(Clone, Debug)]
pub struct LbCertificate {
    pub max_degree: usize,
    pub degree_ok: bool,
    pub divisible: bool,
    pub coarsening: Option<Coarsening>,
}

impl LbCertificate {
    pub fn passed(&self) -> bool {
        self.degree_ok && self.coarsening.is_some()
    }
}

type Role = (usize, usize, usize);

/// Assigns roles to a whole macro triangle from one face through interior
/// links. Returns its faces.
fn fill_macro(s: &GluedSurface, layout: &SubdivisionLayout, role: &mut [Role], seed: usize, seed_role: Role) -> Option<Vec<usize>> {
    let m = seed_role.0;
    role[seed] = seed_role;
    let mut members = vec![seed];
    let mut i = 0;
    while i < members.len() {
        let f = members[i];
        i += 1;
        let (_, lf, r) = role[f];
        for ls in 0..3 {
            let LocalLink::Inner(lp) = layout.links[3 * lf + ls] else { continue };
            let y = s.partner(3 * f + (ls + r) % 3)?;
            let want = (m, face_of(lp), (side_of(y) + 3 - side_of(lp)) % 3);
            let g = face_of(y);
            if role[g].0 == usize::MAX {
                role[g] = want;
                members.push(g);
            } else if role[g] != want {
                return None;
            }
        }
    }
    (members.len() == layout.faces_per_block()).then_some(members)
}

/// Propagates the role of face 0 through the whole surface. Macro triangles
/// are completed as soon as they are entered, so an unassigned face across a
/// rim always belongs to a new one.
fn try_seed(s: &GluedSurface, layout: &SubdivisionLayout, local: usize, rot: usize) -> Option<Coarsening> {
    let k = layout.k;
    let per = k * k;
    let mut role = vec![(usize::MAX, 0usize, 0usize); s.face_count()];
    let mut members = vec![fill_macro(s, layout, &mut role, 0, (0, local, rot))?];
    // macro side glued to each (macro, side), filled as rims are crossed
    let mut macro_partner: Vec<[u32; 3]> = vec![[u32::MAX; 3]];
    let mut m = 0;
    while m < members.len() {
        for fi in 0..per {
            let f = members[m][fi];
            let (_, lf, r) = role[f];
            for ls in 0..3 {
                let LocalLink::Rim { side, segment } = layout.links[3 * lf + ls] else { continue };
                let y = s.partner(3 * f + (ls + r) % 3)?;
                let g = face_of(y);
                let target = if role[g].0 == usize::MAX {
                    // a new macro triangle, entered along its side 0
                    let lp = layout.rim[0][k - 1 - segment];
                    let nm = members.len();
                    let want = (nm, face_of(lp), (side_of(y) + 3 - side_of(lp)) % 3);
                    members.push(fill_macro(s, layout, &mut role, g, want)?);
                    macro_partner.push([u32::MAX; 3]);
                    3 * nm
                } else {
                    let (gm, glf, grot) = role[g];
                    match layout.links[3 * glf + (side_of(y) + 3 - grot) % 3] {
                        LocalLink::Rim { side: s2, segment: t2 } if t2 == k - 1 - segment => 3 * gm + s2,
                        _ => return None,
                    }
                };
                let slot = &mut macro_partner[m][side];
                if *slot == u32::MAX {
                    *slot = target as u32;
                } else if *slot != target as u32 {
                    return None;
                }
            }
        }
        m += 1;
    }
    let macro_count = macro_partner.len();
    if role.iter().any(|r| r.0 == usize::MAX) || macro_count * per != s.face_count() {
        return None;
    }
    // every macro face must own exactly one copy of each local face
    let mut seen = vec![false; s.face_count()];
    for &(m, lf, _) in &role {
        if std::mem::replace(&mut seen[m * per + lf], true) {
            return None;
        }
    }
    let partner: Vec<u32> = macro_partner.iter().flatten().copied().collect();
    for (d, &p) in partner.iter().enumerate() {
        if p == NO_DART || p as usize == d || partner[p as usize] != d as u32 {
            return None;
        }
    }
    let coarse = GluedSurface::from_raw(partner);
    let v = s.vertices();
    let mut macro_vertex = vec![false; v.len()];
    for (f, &(_, lf, r)) in role.iter().enumerate() {
        for ls in 0..3 {
            if layout.is_corner(layout.faces[lf][ls]) {
                macro_vertex[v.tail(3 * f + (ls + r) % 3)] = true;
            }
        }
    }
    Some(Coarsening { coarse, role, macro_vertex })
}

/// Searches for a closed coarse surface whose 3-subdivision is `s`.
pub fn find_coarsening(s: &GluedSurface) -> Option<Coarsening> {
    let layout = SubdivisionLayout::new(LB_FACTOR);
    if !s.is_closed() || s.face_count() == 0 || !s.face_count().is_multiple_of(layout.faces_per_block()) {
        return None;
    }
    (0..layout.faces_per_block()).flat_map(|lf| (0..3).map(move |r| (lf, r))).find_map(|(lf, r)| try_seed(s, &layout, lf, r))
}

/// Degree cap 7 and a 3-subdivision structure.
pub fn check_tri_lb(s: &GluedSurface) -> LbCertificate {
    let v = s.vertices();
    let max_degree = v.max_degree();
    let divisible = s.face_count().is_multiple_of(LB_FACTOR * LB_FACTOR);
    let degree_ok = max_degree <= LB_MAX_DEGREE;
    let coarsening = if degree_ok && divisible { find_coarsening(s) } else { None };
    LbCertificate { max_degree, degree_ok, divisible, coarsening }
}

#[derive(Clone, Debug)]
pub struct SeparationReport {
    /// Smallest edge distance between distinct V_{≠6} vertices (capped at 3).
    pub min_distance: usize,
    /// V_{≠6} vertices carrying a loop or a double edge.
    pub short_loops: Vec<usize>,
    /// V_{≠6} vertices that are not macro corners.
    pub off_corner: Vec<usize>,
}

impl SeparationReport {
    pub fn passed(&self) -> bool {
        self.min_distance >= 3 && self.short_loops.is_empty() && self.off_corner.is_empty()
    }
}

/// Combinatorial stand-in for the flat-length bound between cone points, on
/// a closed surface.
pub fn separation_check(s: &GluedSurface, coarsening: Option<&Coarsening>) -> SeparationReport {
    let v: VertexTable = s.vertices();
    let singular = v.not_six();
    let mut is_singular = vec![false; v.len()];
    for &x in &singular {
        is_singular[x] = true;
    }
    let mut min_distance = 3;
    let mut short_loops = Vec::new();
    for &x in &singular {
        let first: Vec<usize> = v.report(x).corners.iter().map(|&c| v.head(c)).collect();
        let mut sorted = first.clone();
        sorted.sort_unstable();
        if sorted.contains(&x) || sorted.windows(2).any(|w| w[0] == w[1]) {
            short_loops.push(x);
        }
        for &y in &first {
            if y != x && is_singular[y] {
                min_distance = min_distance.min(1);
            }
            for &c in &v.report(y).corners {
                let z = v.head(c);
                if z != x && is_singular[z] {
                    min_distance = min_distance.min(2);
                }
            }
        }
    }
    let off_corner = match coarsening {
        Some(c) => singular.iter().copied().filter(|&x| !c.macro_vertex[x]).collect(),
        None => singular.clone(),
    };
    SeparationReport { min_distance, short_loops, off_corner }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canonical::is_isomorphic;
    use crate::subdivide::subdivide;
    use crate::surface::{hexagonal_torus, pillowcase};

    #[test]
    fn torus_is_not_lb() {
        let c = check_tri_lb(&hexagonal_torus());
        assert!(!c.divisible && !c.passed());
    }

    #[test]
    fn subdivisions_are_recognised() {
        for base in [hexagonal_torus(), pillowcase(), subdivide(&pillowcase(), 2).unwrap()] {
            let fine = subdivide(&base, 3).unwrap();
            let cert = check_tri_lb(&fine);
            assert!(cert.passed());
            let coarse = &cert.coarsening.as_ref().unwrap().coarse;
            assert!(is_isomorphic(coarse, &base));
            assert_eq!(subdivide(coarse, 3).unwrap().face_count(), fine.face_count());
            assert!(separation_check(&fine, cert.coarsening.as_ref()).passed());
        }
    }

    #[test]
    fn flipped_edge_is_not_a_subdivision() {
        assert!(check_tri_lb(&subdivide(&hexagonal_torus(), 6).unwrap()).passed());
        // flip one edge of the flat 3x3 torus: two 5s and two 7s, adjacent
        let flat = subdivide(&hexagonal_torus(), 3).unwrap();
        let v = flat.vertices();
        let mut tris: Vec<[usize; 3]> =
            (0..flat.face_count()).map(|f| [v.tail(3 * f), v.tail(3 * f + 1), v.tail(3 * f + 2)]).collect();
        let p = flat.partner(0).unwrap();
        let (a, b, c) = (tris[0][0], tris[0][1], tris[0][2]);
        let d = v.tail(crate::surface::prev(p));
        tris[0] = [c, a, d];
        tris[face_of(p)] = [d, b, c];
        let flipped = GluedSurface::from_triangles(&tris).unwrap();
        let cert = check_tri_lb(&flipped);
        assert_eq!(cert.max_degree, 7);
        assert!(cert.divisible && !cert.passed());
        assert!(!separation_check(&flipped, None).passed());
    }

    #[test]
    fn adjacent_cone_points_fail_separation() {
        let p = pillowcase();
        let r = separation_check(&p, None);
        assert_eq!(r.min_distance, 1);
        assert!(!r.passed());
    }
}
