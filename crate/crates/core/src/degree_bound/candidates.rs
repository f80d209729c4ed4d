//! Which layered disks could be centered at a vertex.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::surface::{face_of, side_of, GluedSurface, VertexTable};

use super::disk::{build_th, th_face_count, TriangulatedDisk};

/// An orientation-preserving embedding of a disk, as a face map with
/// per-face rotation and the induced vertex map.
#[derive(Clone, Debug)]
pub struct Embedding {
    pub faces: Vec<(usize, usize)>,
    pub vertices: Vec<usize>,
}

/// Tries to place `disk` with its center dart on `dart`.
pub fn embed_disk(s: &GluedSurface, v: &VertexTable, disk: &TriangulatedDisk, dart: usize) -> Option<Embedding> {
    let ds = &disk.surface;
    let dv = ds.vertices();
    let mut faces = vec![(usize::MAX, 0usize); ds.face_count()];
    let mut owner = BTreeMap::new();
    let mut vmap = vec![usize::MAX; dv.len()];
    let mut vused = BTreeMap::new();
    let start = face_of(disk.center_dart);
    faces[start] = (face_of(dart), (side_of(dart) + 3 - side_of(disk.center_dart)) % 3);
    owner.insert(face_of(dart), start);
    let mut queue = VecDeque::from([start]);
    while let Some(f) = queue.pop_front() {
        let (g, rot) = faces[f];
        for side in 0..3 {
            let x = 3 * f + side;
            let y = 3 * g + (side + rot) % 3;
            let (a, b) = (dv.tail(x), v.tail(y));
            if vmap[a] == usize::MAX {
                if vused.insert(b, a).is_some() {
                    return None;
                }
                vmap[a] = b;
            } else if vmap[a] != b {
                return None;
            }
            let Some(px) = ds.partner(x) else { continue };
            let py = s.partner(y)?;
            let want = (face_of(py), (side_of(py) + 3 - side_of(px)) % 3);
            let pf = face_of(px);
            if faces[pf].0 == usize::MAX {
                if owner.insert(want.0, pf).is_some() {
                    return None;
                }
                faces[pf] = want;
                queue.push_back(pf);
            } else if faces[pf] != want {
                return None;
            }
        }
    }
    Some(Embedding { faces, vertices: vmap })
}

/// Every boundary vertex of the closed star of the image has degree 6.
pub fn star_boundary_is_flat(s: &GluedSurface, v: &VertexTable, e: &Embedding) -> bool {
    let inside: BTreeSet<usize> = e.vertices.iter().copied().collect();
    let mut star = vec![false; s.face_count()];
    for &x in &inside {
        for &c in &v.report(x).corners {
            star[face_of(c)] = true;
        }
    }
    let mut checked = BTreeSet::new();
    for f in (0..s.face_count()).filter(|&f| star[f]) {
        for side in 0..3 {
            let u = v.tail(3 * f + side);
            if inside.contains(&u) || !checked.insert(u) {
                continue;
            }
            let on_rim = v.report(u).corners.iter().any(|&c| !star[face_of(c)]);
            if on_rim && v.degree(u) != 6 {
                return false;
            }
        }
    }
    true
}

#[derive(Clone, Debug, Default)]
pub struct CenterCandidates {
    /// Values of d for which TH_d embeds at the vertex.
    pub embedded: BTreeSet<usize>,
    /// The subset whose surrounding star rim is flat.
    pub plausible: BTreeSet<usize>,
}

/// For each vertex of degree 4 to 7 (the possible center degrees), the d ≥ 8
/// for which TH_d sits centered
/// there. Disks are grown outward a layer at a time: TH_{2n} and TH_{2n+1}
/// contain TH_n as their inner layers, so a failed n prunes both.
pub fn th_center_candidates(s: &GluedSurface) -> BTreeMap<usize, CenterCandidates> {
    let v = s.vertices();
    let mut out = BTreeMap::new();
    // disks with an all-flat interior (TH_12) embed anywhere flat and are not
    // recorded, though larger disks grown from them still are
    let mut cache: BTreeMap<usize, (TriangulatedDisk, bool)> = BTreeMap::new();
    for r in v.iter().filter(|r| (4..=7).contains(&r.degree)) {
        let mut found = CenterCandidates::default();
        for &c in &r.corners {
            let mut frontier: Vec<usize> = vec![2 * r.degree, 2 * r.degree + 1];
            while let Some(d) = frontier.pop() {
                if th_face_count(d) > s.face_count() {
                    continue;
                }
                let (disk, flat) = cache.entry(d).or_insert_with(|| {
                    let disk = build_th(d).expect("d >= 8");
                    let flat = disk.surface.vertices().iter().all(|x| x.boundary || x.degree == 6);
                    (disk, flat)
                });
                let Some(e) = embed_disk(s, &v, disk, c) else { continue };
                if !*flat {
                    found.embedded.insert(d);
                    if star_boundary_is_flat(s, &v, &e) {
                        found.plausible.insert(d);
                    }
                }
                frontier.extend([2 * d, 2 * d + 1]);
            }
        }
        if !found.embedded.is_empty() {
            out.insert(r.id, found);
        }
    }
    out
}
