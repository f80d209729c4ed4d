//! The bounded-degree map: 4-subdivide, swap every fan of degree above 7 for
//! the layered disk with the same boundary, then 3-subdivide.

use crate::error::{Error, Result};
use crate::subdivide::{subdivide, unsubdivide};
use crate::surface::{face_of, next, prev, GluedSurface, VertexTable, NO_DART};

use super::disk::{build_th, TriangulatedDisk};

pub const FIRST_SUBDIVISION: usize = 4;
pub const SECOND_SUBDIVISION: usize = 3;
pub const MAX_FAN_DEGREE: usize = 7;

/// faces(B(S)) ≤ σT: 16T after the first subdivision, at most 2 deg v extra
/// faces per replaced fan (Σ deg = 3T), times 9.
pub const SIGMA_BOUND: f64 = 198.0;

/// |V_{≠6}(B(S))| ≤ μ(|V_{≠6}(S)| + g). A glued TH_d adds fewer than d
/// non-flat vertices, and Σ_{deg v > 7} deg v ≤ 12(g − 1) + 6|V_{≠6}(S)|.
pub const MU_BOUND: f64 = 12.0;

/// One fan replaced in the 4-subdivided surface.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Replacement {
    /// Vertex id of the center in the 4-subdivision.
    pub center: usize,
    /// Darts `c_0, …, c_{d-1}` leaving the center, counterclockwise, with
    /// `c_0` the smallest.
    pub corners: Vec<usize>,
    /// First face of the inserted disk in the intermediate surface.
    pub face_offset: usize,
}

impl Replacement {
    pub fn degree(&self) -> usize {
        self.corners.len()
    }
}

/// Everything needed to undo the map exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PipelineProvenance {
    pub original_faces: usize,
    pub replacements: Vec<Replacement>,
}

#[derive(Clone, Debug)]
pub struct BoundedDegree {
    /// 4-subdivision of the input.
    pub s1: GluedSurface,
    /// After the fan swaps.
    pub s2: GluedSurface,
    /// Final surface B(S).
    pub output: GluedSurface,
    pub provenance: PipelineProvenance,
}

/// The fan of an interior vertex, checked to be an embedded disk.
fn fan_at(s: &GluedSurface, v: &VertexTable, center: usize) -> Result<Vec<usize>> {
    let r = v.report(center);
    let corners = r.corners.clone();
    let mut faces: Vec<usize> = corners.iter().map(|&c| face_of(c)).collect();
    let mut ring: Vec<usize> = corners.iter().map(|&c| v.head(c)).collect();
    faces.sort_unstable();
    ring.sort_unstable();
    let distinct = |x: &[usize]| x.windows(2).all(|w| w[0] != w[1]);
    if r.boundary || !distinct(&faces) || !distinct(&ring) || ring.binary_search(&center).is_ok() {
        return Err(Error::StarOverlap(center));
    }
    // the outer edges must leave the fan
    for &c in &corners {
        let p = s.partner(next(c)).ok_or(Error::HasBoundary)?;
        if faces.binary_search(&face_of(p)).is_ok() {
            return Err(Error::StarOverlap(center));
        }
    }
    Ok(corners)
}

/// Applies the map B and records how to undo it.
pub fn bounded_degree_map(s: &GluedSurface) -> Result<BoundedDegree> {
    if !s.is_closed() {
        return Err(Error::HasBoundary);
    }
    let (_, comps) = s.component_labels();
    if comps != 1 {
        return Err(Error::Disconnected(comps));
    }
    let s1 = subdivide(s, FIRST_SUBDIVISION)?;
    let v1 = s1.vertices();

    let mut fans = Vec::new();
    let mut in_star = vec![false; v1.len()];
    for r in v1.iter().filter(|r| r.degree > MAX_FAN_DEGREE) {
        let corners = fan_at(&s1, &v1, r.id)?;
        // closed stars must be vertex-disjoint
        for x in std::iter::once(r.id).chain(corners.iter().map(|&c| v1.head(c))) {
            if std::mem::replace(&mut in_star[x], true) {
                return Err(Error::StarOverlap(x));
            }
        }
        fans.push((r.id, corners));
    }

    let mut fan_face = vec![false; s1.face_count()];
    for (_, corners) in &fans {
        for &c in corners {
            fan_face[face_of(c)] = true;
        }
    }
    let mut new_index = vec![usize::MAX; s1.face_count()];
    let mut kept = 0;
    for f in 0..s1.face_count() {
        if !fan_face[f] {
            new_index[f] = kept;
            kept += 1;
        }
    }

    let mut disks: Vec<(Replacement, TriangulatedDisk)> = Vec::with_capacity(fans.len());
    let mut offset = kept;
    for (center, corners) in fans {
        let disk = build_th(corners.len())?;
        let n = disk.surface.face_count();
        disks.push((Replacement { center, corners, face_offset: offset }, disk));
        offset += n;
    }

    // where each outer fan dart of S1 lands in S2
    let mut outer_target = vec![usize::MAX; s1.dart_count()];
    for (rep, disk) in &disks {
        for (j, &c) in rep.corners.iter().enumerate() {
            outer_target[next(c)] = 3 * rep.face_offset + disk.boundary[j];
        }
    }
    let map_dart = |d: usize| -> usize {
        if fan_face[face_of(d)] {
            outer_target[d]
        } else {
            3 * new_index[face_of(d)] + d % 3
        }
    };

    let mut partner = vec![NO_DART; 3 * offset];
    for d in 0..s1.dart_count() {
        if fan_face[face_of(d)] {
            continue;
        }
        let p = s1.partner(d).expect("closed surface");
        partner[map_dart(d)] = map_dart(p) as u32;
    }
    for (rep, disk) in &disks {
        let base = 3 * rep.face_offset;
        for x in 0..disk.surface.dart_count() {
            if let Some(p) = disk.surface.partner(x) {
                partner[base + x] = (base + p) as u32;
            }
        }
        for (j, &c) in rep.corners.iter().enumerate() {
            let outside = s1.partner(next(c)).expect("closed surface");
            partner[base + disk.boundary[j]] = map_dart(outside) as u32;
        }
    }
    debug_assert!(partner.iter().all(|&p| p != NO_DART));

    let centers: Vec<String> = disks.iter().map(|(r, _)| format!("{}:{}", r.center, r.degree())).collect();
    let s2 = GluedSurface::from_raw(partner).with_provenance(format!(
        "TH replacement at [{}] in {}",
        centers.join(","),
        s1.provenance().unwrap_or("4-subdivision")
    ));
    let output = subdivide(&s2, SECOND_SUBDIVISION)?;
    let provenance =
        PipelineProvenance { original_faces: s.face_count(), replacements: disks.into_iter().map(|(r, _)| r).collect() };
    Ok(BoundedDegree { s1, s2, output, provenance })
}

/// Undoes the fan swaps: rebuilds the 4-subdivided surface from the
/// intermediate one.
pub fn reinstate_fans(s2: &GluedSurface, prov: &PipelineProvenance) -> Result<GluedSurface> {
    let s1_faces = prov.original_faces * FIRST_SUBDIVISION * FIRST_SUBDIVISION;
    let mut fan_face = vec![false; s1_faces];
    for rep in &prov.replacements {
        for &c in &rep.corners {
            let f = face_of(c);
            if f >= s1_faces || std::mem::replace(&mut fan_face[f], true) {
                return Err(Error::Provenance(format!("fan face {f} is invalid or repeated")));
            }
        }
    }
    let kept: Vec<usize> = (0..s1_faces).filter(|&f| !fan_face[f]).collect();
    // S2 dart of each TH boundary edge -> S1 outer fan dart
    let mut back = std::collections::HashMap::new();
    let mut th_end = kept.len();
    for rep in &prov.replacements {
        let disk = build_th(rep.degree())?;
        if rep.face_offset != th_end {
            return Err(Error::Provenance(format!("disk at center {} starts at face {}", rep.center, rep.face_offset)));
        }
        th_end += disk.surface.face_count();
        for (j, &c) in rep.corners.iter().enumerate() {
            back.insert(3 * rep.face_offset + disk.boundary[j], next(c));
        }
    }
    if th_end != s2.face_count() {
        return Err(Error::Provenance(format!("expected {th_end} faces, found {}", s2.face_count())));
    }
    let to_s1 = |x: usize| -> Result<usize> {
        if face_of(x) < kept.len() {
            Ok(3 * kept[face_of(x)] + x % 3)
        } else {
            back.get(&x).copied().ok_or_else(|| Error::Provenance(format!("dart {x} leaves a disk off its boundary")))
        }
    };

    let mut partner = vec![NO_DART; 3 * s1_faces];
    for x in 0..3 * kept.len() {
        let p = s2.partner(x).ok_or(Error::HasBoundary)?;
        let (a, b) = (to_s1(x)?, to_s1(p)?);
        partner[a] = b as u32;
        partner[b] = a as u32;
    }
    for rep in &prov.replacements {
        let d = rep.degree();
        for f in 0..d {
            let (a, b) = (prev(rep.corners[f]), rep.corners[(f + 1) % d]);
            partner[a] = b as u32;
            partner[b] = a as u32;
        }
        for &c in &rep.corners {
            if partner[next(c)] == NO_DART {
                return Err(Error::Provenance(format!("outer dart {} is unglued", next(c))));
            }
        }
    }
    if partner.contains(&NO_DART) {
        return Err(Error::Provenance("reconstructed gluing is not total".into()));
    }
    let s1 = GluedSurface::from_raw(partner);
    Ok(s1)
}

/// Recovers the input from B(S) and the recorded provenance.
pub fn invert(output: &GluedSurface, prov: &PipelineProvenance) -> Result<GluedSurface> {
    let s2 = unsubdivide(output, SECOND_SUBDIVISION)?;
    let s1 = reinstate_fans(&s2, prov)?;
    unsubdivide(&s1, FIRST_SUBDIVISION)
}

/// Measured constants and condition checks for one run of the map.
#[derive(Clone, Debug)]
pub struct PipelineReport {
    pub input_faces: usize,
    pub output_faces: usize,
    pub input_genus: u64,
    pub output_genus: u64,
    pub input_not_six: usize,
    pub output_not_six: usize,
    pub max_degree: usize,
    pub replacements: usize,
    pub round_trip: bool,
}

impl PipelineReport {
    /// faces(B(S)) / T.
    pub fn sigma(&self) -> f64 {
        self.output_faces as f64 / self.input_faces as f64
    }

    /// |V_{≠6}(B(S))| / (|V_{≠6}(S)| + g).
    pub fn mu(&self) -> f64 {
        let denom = self.input_not_six as u64 + self.input_genus;
        if denom == 0 {
            0.0
        } else {
            self.output_not_six as f64 / denom as f64
        }
    }

    pub fn conditions_hold(&self) -> bool {
        self.max_degree <= MAX_FAN_DEGREE && self.input_genus == self.output_genus && self.round_trip
    }

    pub fn within_bounds(&self) -> bool {
        self.sigma() <= SIGMA_BOUND && self.mu() <= MU_BOUND
    }
}

pub fn pipeline_report(input: &GluedSurface, run: &BoundedDegree) -> Result<PipelineReport> {
    let vin = input.vertices();
    let vout = run.output.vertices();
    let round_trip = invert(&run.output, &run.provenance).is_ok_and(|s| s.to_tsf() == input.to_tsf());
    Ok(PipelineReport {
        input_faces: input.face_count(),
        output_faces: run.output.face_count(),
        input_genus: input.genus()?,
        output_genus: run.output.genus()?,
        input_not_six: vin.not_six().len(),
        output_not_six: vout.not_six().len(),
        max_degree: vout.max_degree(),
        replacements: run.provenance.replacements.len(),
        round_trip,
    })
}
