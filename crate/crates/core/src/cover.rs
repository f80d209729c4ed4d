//! The canonical 6-sheeted branched cover on which dz⁶ has a global sixth
//! root.
//!
//! Every face is identified with the unit triangle up to a rotation by a
//! multiple of π/3. Fixing a rotation class per face by a breadth-first
//! search, crossing a dart shifts the class by an element of ℤ/6; sheets are
//! labelled by ℤ/6 and cover face `6f + k` is sheet `k` over face `f`.

use std::collections::{BTreeMap, VecDeque};

use crate::canonical::canonical_form;
use crate::degree_bound::check_tri_lb;
use crate::error::{Error, Result};
use crate::surface::{face_of, prev, side_of, GluedSurface, VertexTable};
use crate::translation::{detect_structures, is_locally_bounded_tran, TranslationStructure};

pub const SHEETS: usize = 6;

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 { a } else { gcd(b, a % b) }
}

/// Rotation class per face and the sheet shift per dart.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Holonomy6 {
    pub face_class: Vec<u8>,
    /// Crossing dart `d` from sheet `k` lands on sheet `k + transition[d]`.
    pub transition: Vec<u8>,
}

impl Holonomy6 {
    /// Total shift picked up circling a vertex counterclockwise; equals its
    /// degree mod 6.
    pub fn monodromy(&self, v: &VertexTable, vertex: usize) -> u8 {
        let sum: usize = v.report(vertex).corners.iter().map(|&c| self.transition[prev(c)] as usize).sum();
        (sum % SHEETS) as u8
    }
}

pub fn holonomy_cocycle(s: &GluedSurface) -> Result<Holonomy6> {
    if s.face_count() == 0 {
        return Err(Error::Empty);
    }
    if !s.is_closed() {
        return Err(Error::HasBoundary);
    }
    let mut face_class = vec![u8::MAX; s.face_count()];
    let mut queue = VecDeque::new();
    for root in 0..s.face_count() {
        if face_class[root] != u8::MAX {
            continue;
        }
        face_class[root] = 0;
        queue.push_back(root);
        while let Some(f) = queue.pop_front() {
            for side in 0..3 {
                let p = s.partner(3 * f + side).expect("closed");
                let g = face_of(p);
                if face_class[g] == u8::MAX {
                    face_class[g] = ((face_class[f] as usize + 2 * side + 9 - 2 * side_of(p)) % 6) as u8;
                    queue.push_back(g);
                }
            }
        }
    }
    let transition = (0..s.dart_count())
        .map(|d| {
            let p = s.partner(d).expect("closed");
            let shift = face_class[face_of(d)] as usize + 2 * side_of(d) + 9 + 12 - 2 * side_of(p) - face_class[face_of(p)] as usize;
            (shift % 6) as u8
        })
        .collect();
    Ok(Holonomy6 { face_class, transition })
}

/// Branching over one base vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ramification {
    pub vertex: usize,
    pub degree: usize,
    pub monodromy: u8,
    /// Ramification index 6 / gcd(6, degree) at every preimage.
    pub index: usize,
    /// Preimages over all six sheets.
    pub preimages: usize,
}

#[derive(Clone, Debug)]
pub struct CoverComponent {
    pub surface: GluedSurface,
    /// Cover face of each local face.
    pub faces: Vec<usize>,
    /// Number of sheets in the component.
    pub degree: usize,
    pub structure: TranslationStructure,
    pub canonical: Vec<u8>,
}

#[derive(Clone, Debug)]
pub struct BranchedCover {
    pub base_faces: usize,
    pub holonomy: Holonomy6,
    /// Total space, face `6f + k` over face `f`.
    pub total: GluedSurface,
    /// Components ordered by canonical form.
    pub components: Vec<CoverComponent>,
    pub ramification: Vec<Ramification>,
}

impl BranchedCover {
    /// Base dart under a cover dart.
    pub fn project(&self, dart: usize) -> usize {
        3 * (face_of(dart) / SHEETS) + side_of(dart)
    }
}

pub fn canonical_cover(s: &GluedSurface) -> Result<BranchedCover> {
    let (_, n) = s.component_labels();
    if n > 1 {
        return Err(Error::Disconnected(n));
    }
    let h = holonomy_cocycle(s)?;
    let t = s.face_count();
    let mut pairs = Vec::with_capacity(9 * t);
    for d in 0..s.dart_count() {
        let p = s.partner(d).expect("closed");
        for k in 0..SHEETS {
            let a = 3 * (SHEETS * face_of(d) + k) + side_of(d);
            let kp = (k + h.transition[d] as usize) % SHEETS;
            let b = 3 * (SHEETS * face_of(p) + kp) + side_of(p);
            if a < b {
                pairs.push((a, b));
            }
        }
    }
    let total = GluedSurface::new(SHEETS * t, pairs)?;

    let (labels, count) = total.component_labels();
    let mut members = vec![Vec::new(); count];
    for (f, &c) in labels.iter().enumerate() {
        members[c].push(f);
    }
    let mut components = Vec::with_capacity(count);
    for faces in members {
        let mut local = BTreeMap::new();
        for (i, &f) in faces.iter().enumerate() {
            local.insert(f, i);
        }
        let mut pairs = Vec::new();
        for (i, &f) in faces.iter().enumerate() {
            for side in 0..3 {
                let p = total.partner(3 * f + side).expect("closed");
                let j = 3 * local[&face_of(p)] + side_of(p);
                if 3 * i + side < j {
                    pairs.push((3 * i + side, j));
                }
            }
        }
        let surface = GluedSurface::new(faces.len(), pairs)?;
        let class: Vec<u8> =
            faces.iter().map(|&f| ((h.face_class[f / SHEETS] as usize + f % SHEETS) % 6) as u8).collect();
        let structure = TranslationStructure::from_face_classes(&class);
        let canonical = canonical_form(&surface)?;
        components.push(CoverComponent { degree: faces.len() / t, surface, faces, structure, canonical });
    }
    components.sort_by(|a, b| a.canonical.cmp(&b.canonical).then(a.faces[0].cmp(&b.faces[0])));

    let v = s.vertices();
    let ramification = v
        .iter()
        .map(|r| {
            let g = gcd(SHEETS, r.degree);
            Ramification { vertex: r.id, degree: r.degree, monodromy: h.monodromy(&v, r.id), index: SHEETS / g, preimages: g }
        })
        .collect();
    Ok(BranchedCover { base_faces: t, holonomy: h, total, components, ramification })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentReport {
    pub degree: usize,
    pub faces: usize,
    pub genus: u64,
    /// Base vertices with nontrivial monodromy.
    pub branch_points: usize,
    /// Their preimages in this component.
    pub critical_points: usize,
    /// Both sides of 2g̃ − 2 + n′ = d(2g − 2) + dn.
    pub rh: (i64, i64),
    pub structures: usize,
    /// Set when the base passes the Tri_lb test.
    pub tran_lb: Option<bool>,
}

#[derive(Clone, Debug)]
pub struct CoverReport {
    pub base_genus: u64,
    pub base_not_six: usize,
    pub base_tri_lb: bool,
    pub chi_cover: i64,
    pub chi_expected: i64,
    pub components: Vec<ComponentReport>,
}

/// Re-derives the cover identities from scratch and compares them with the
/// stored data. The first violated identity is returned as an error.
pub fn verify_cover(s: &GluedSurface, c: &BranchedCover) -> Result<CoverReport> {
    let fail = |m: String| Err(Error::CoverCheck(m));
    let t = s.face_count();
    let total = &c.total;
    if total.face_count() != SHEETS * t || c.base_faces != t {
        return fail(format!("cover has {} faces over {t}", total.face_count()));
    }
    for d in 0..total.dart_count() {
        let p = total.partner(d).expect("closed");
        if s.partner(c.project(d)) != Some(c.project(p)) {
            return fail(format!("cover dart {d} does not project to a glued pair"));
        }
    }

    let base = s.euler()?;
    let v = s.vertices();
    let tv = total.vertices();
    let mut over: Vec<Vec<usize>> = vec![Vec::new(); v.len()];
    for x in 0..tv.len() {
        let d = tv.report(x).corners[0];
        over[v.tail(c.project(d))].push(x);
    }
    for (r, ram) in v.iter().zip(&c.ramification) {
        let lcm = r.degree * SHEETS / gcd(r.degree, SHEETS);
        if let Some(&x) = over[r.id].iter().find(|&&x| tv.degree(x) != lcm) {
            return fail(format!("cover vertex {x} over vertex {} has degree {}, expected {lcm}", r.id, tv.degree(x)));
        }
        // cycle structure of k -> k + monodromy on ℤ/6
        let m = c.holonomy.monodromy(&v, r.id) as usize;
        if m != r.degree % SHEETS {
            return fail(format!("monodromy {m} at vertex {} of degree {}", r.id, r.degree));
        }
        let cycle = SHEETS / gcd(m, SHEETS);
        if ram.index != cycle || ram.preimages != SHEETS / cycle || over[r.id].len() != SHEETS / cycle {
            return fail(format!("ramification at vertex {} disagrees: {ram:?}, cycle length {cycle}", r.id));
        }
    }

    let components = &c.components;
    if components.is_empty() || components.len() > SHEETS {
        return fail(format!("{} components", components.len()));
    }
    let expected_count = c.holonomy.transition.iter().fold(SHEETS, |g, &x| gcd(g, x as usize));
    if components.len() != expected_count {
        return fail(format!("{} components but the sheet shifts generate index {expected_count}", components.len()));
    }
    if components.iter().map(|k| k.degree).sum::<usize>() != SHEETS {
        return fail("component degrees do not sum to 6".into());
    }

    let chi_cover = tv.len() as i64 - total.edge_count() as i64 + total.face_count() as i64;
    let chi_expected =
        SHEETS as i64 * base.chi - v.iter().map(|r| (SHEETS - gcd(SHEETS, r.degree)) as i64).sum::<i64>();
    if chi_cover != chi_expected {
        return fail(format!("cover chi {chi_cover}, expected {chi_expected}"));
    }

    let g = base.genus as i64;
    let m = v.not_six().len() as i64;
    let branch: Vec<usize> = v.iter().filter(|r| r.degree % SHEETS != 0).map(|r| r.id).collect();
    let base_tri_lb = check_tri_lb(s).passed();
    let mut reports = Vec::with_capacity(components.len());
    for (i, k) in components.iter().enumerate() {
        let cs = &k.surface;
        if cs.face_count() != k.degree * t || k.faces.len() != cs.face_count() {
            return fail(format!("component {i} has {} faces for degree {}", cs.face_count(), k.degree));
        }
        let e = cs.euler()?;
        let cv = cs.vertices();
        let is_critical: Vec<bool> = (0..cv.len())
            .map(|x| {
                let d = cv.report(x).corners[0];
                let cover_dart = 3 * k.faces[face_of(d)] + side_of(d);
                branch.binary_search(&v.tail(c.project(cover_dart))).is_ok()
            })
            .collect();
        let critical = is_critical.iter().filter(|&&b| b).count();
        let d = k.degree as i64;
        let n = branch.len() as i64;
        let rh = (2 * e.genus as i64 - 2 + critical as i64, d * (2 * g - 2) + d * n);
        if rh.0 != rh.1 {
            return fail(format!("component {i}: Riemann-Hurwitz {} != {}", rh.0, rh.1));
        }
        if e.genus as i64 > 6 * g + 5 * m || cs.face_count() > SHEETS * t {
            return fail(format!("component {i}: genus {} or faces {} too large", e.genus, cs.face_count()));
        }
        if let Some(x) = cv.iter().find(|r| r.degree % SHEETS != 0) {
            return fail(format!("component {i}: vertex {} of degree {}", x.id, x.degree));
        }
        if !k.structure.is_valid_on(cs) {
            return fail(format!("component {i}: stored structure is not a translation structure"));
        }
        let structures = detect_structures(cs)?.len();
        if structures != SHEETS {
            return fail(format!("component {i}: {structures} structures"));
        }
        let tran_lb = if base_tri_lb {
            let ok = is_locally_bounded_tran(cs, &k.structure)?.passed();
            if !ok {
                return fail(format!("component {i} of a Tri_lb base is not Tran_lb"));
            }
            Some(ok)
        } else {
            None
        };
        reports.push(ComponentReport {
            degree: k.degree,
            faces: cs.face_count(),
            genus: e.genus,
            branch_points: branch.len(),
            critical_points: critical,
            rh,
            structures,
            tran_lb,
        });
    }
    Ok(CoverReport {
        base_genus: base.genus,
        base_not_six: m as usize,
        base_tri_lb,
        chi_cover,
        chi_expected,
        components: reports,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::{hexagonal_torus, pillowcase};

    #[test]
    fn monodromy_is_degree_mod_six() {
        let s = GluedSurface::new(4, [(0, 11), (1, 4), (2, 5), (3, 8), (6, 10), (7, 9)]).unwrap();
        let h = holonomy_cocycle(&s).unwrap();
        let v = s.vertices();
        for r in v.iter() {
            assert_eq!(h.monodromy(&v, r.id) as usize, r.degree % 6);
        }
    }

    #[test]
    fn torus_splits_into_six_copies() {
        let t = hexagonal_torus();
        let c = canonical_cover(&t).unwrap();
        assert_eq!(c.components.len(), 6);
        assert!(c.components.iter().all(|k| k.degree == 1 && k.canonical == canonical_form(&t).unwrap()));
        let r = verify_cover(&t, &c).unwrap();
        assert!(r.components.iter().all(|k| k.rh == (0, 0)));
    }

    #[test]
    fn pillowcase_cover_is_connected() {
        let p = pillowcase();
        let c = canonical_cover(&p).unwrap();
        let r = verify_cover(&p, &c).unwrap();
        // three degree-2 vertices, each with two preimages of index 3
        assert!(c.ramification.iter().all(|x| x.degree == 2 && x.index == 3 && x.preimages == 2));
        assert_eq!(r.chi_cover, 6 * 2 - 3 * 4);
        assert_eq!(r.components.iter().map(|k| k.degree).sum::<usize>(), 6);
    }
}
