//! Decomposition of a translation surface into flat parallelograms cut out
//! by edge trajectories leaving the cone points.
//!
//! Directions are dart weights: 0 is direction 1, 1 is e^{iπ/3} and 4 is
//! −e^{iπ/3}. Trajectories in direction 1 form A₀; those in the other two
//! directions form A₁ and A₂ and stop when they reach A₀.

use std::collections::VecDeque;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::surface::{face_of, next, GluedSurface, VertexTable};
use crate::translation::{period_map, FlatArea, TranslationStructure};

/// Edge membership per dart; both darts of an edge are marked together.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrajectoryComplex {
    pub a0: Vec<bool>,
    pub a1: Vec<bool>,
    pub a2: Vec<bool>,
    pub vertex_in_a0: Vec<bool>,
}

impl TrajectoryComplex {
    pub fn contains(&self, dart: usize) -> bool {
        self.a0[dart] || self.a1[dart] || self.a2[dart]
    }
}

fn exponent(st: &TranslationStructure, d: usize) -> u8 {
    st.weight(d).exponent()
}

fn check_input(s: &GluedSurface, st: &TranslationStructure) -> Result<(VertexTable, Vec<usize>)> {
    if !s.is_closed() {
        return Err(Error::HasBoundary);
    }
    if !st.is_valid_on(s) {
        return Err(Error::InvalidStructure(s.dart_count()));
    }
    let g = s.genus()?;
    if g < 2 {
        return Err(Error::GenusTooSmall(g));
    }
    let v = s.vertices();
    let seeds = v.above_six();
    if seeds.is_empty() {
        return Err(Error::NoHighDegreeVertex);
    }
    Ok((v, seeds))
}

/// Follows darts of weight `dir` from the worklist until nothing changes.
/// `may_extend` decides whether a vertex already reached keeps going.
fn grow(
    s: &GluedSurface,
    v: &VertexTable,
    st: &TranslationStructure,
    dir: u8,
    seeds: &[usize],
    may_extend: impl Fn(usize) -> bool,
    rng: Option<&mut ChaCha8Rng>,
) -> (Vec<bool>, Vec<bool>) {
    let mut edge = vec![false; s.dart_count()];
    let mut vertex = vec![false; v.len()];
    let mut work: Vec<usize> = seeds.to_vec();
    if let Some(r) = rng {
        work.shuffle(r);
    }
    for &x in seeds {
        vertex[x] = true;
    }
    let mut work = VecDeque::from(work);
    while let Some(x) = work.pop_back() {
        let is_seed = seeds.binary_search(&x).is_ok();
        if !is_seed && !may_extend(x) {
            continue;
        }
        for &d in &v.report(x).corners {
            if exponent(st, d) != dir || edge[d] {
                continue;
            }
            edge[d] = true;
            edge[s.partner(d).expect("closed")] = true;
            let y = v.head(d);
            if !vertex[y] {
                vertex[y] = true;
                work.push_front(y);
            }
        }
    }
    (edge, vertex)
}

fn trajectories(s: &GluedSurface, st: &TranslationStructure, shuffle: Option<u64>) -> Result<TrajectoryComplex> {
    let (v, seeds) = check_input(s, st)?;
    let mut rng = shuffle.map(ChaCha8Rng::seed_from_u64);
    let (a0, vertex_in_a0) = grow(s, &v, st, 0, &seeds, |_| true, rng.as_mut());
    let (a1, _) = grow(s, &v, st, 1, &seeds, |x| !vertex_in_a0[x], rng.as_mut());
    let (a2, _) = grow(s, &v, st, 4, &seeds, |x| !vertex_in_a0[x], rng.as_mut());
    Ok(TrajectoryComplex { a0, a1, a2, vertex_in_a0 })
}

/// The complexes A₀, A₁, A₂ on a translation surface of genus at least 2.
pub fn build_trajectories(s: &GluedSurface, st: &TranslationStructure) -> Result<TrajectoryComplex> {
    trajectories(s, st, None)
}

/// Same fixpoint, computed with the worklists shuffled by `seed`.
pub fn build_trajectories_shuffled(s: &GluedSurface, st: &TranslationStructure, seed: u64) -> Result<TrajectoryComplex> {
    trajectories(s, st, Some(seed))
}

/// A maximal straight run of A-edges between two vertices of B.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolytopeEdge {
    pub from: usize,
    pub to: usize,
    pub direction: u8,
    pub darts: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct PolytopeB {
    pub vertices: Vec<usize>,
    pub is_vertex: Vec<bool>,
    pub edges: Vec<PolytopeEdge>,
    /// Faces of S in each region.
    pub faces: Vec<Vec<usize>>,
    pub region_of_face: Vec<usize>,
}

pub fn build_polytope(s: &GluedSurface, st: &TranslationStructure, a: &TrajectoryComplex) -> Result<PolytopeB> {
    let v = s.vertices();
    let is_vertex: Vec<bool> = (0..v.len())
        .map(|x| {
            let out = &v.report(x).corners;
            let has = |dirs: [u8; 2]| out.iter().any(|&d| a.contains(d) && dirs.contains(&exponent(st, d)));
            has([0, 3]) && has([1, 4])
        })
        .collect();
    let vertices: Vec<usize> = (0..v.len()).filter(|&x| is_vertex[x]).collect();

    let mut covered = vec![false; s.dart_count()];
    let mut edges = Vec::new();
    for &x in &vertices {
        for &d in &v.report(x).corners {
            if !a.contains(d) || covered[d] {
                continue;
            }
            let dir = exponent(st, d);
            let mut darts = vec![d];
            let mut y = v.head(d);
            while !is_vertex[y] {
                let cont = v.report(y).corners.iter().copied().find(|&e| exponent(st, e) == dir && a.contains(e));
                let Some(e) = cont else {
                    return Err(Error::Development(format!("run in direction {dir} dead-ends at vertex {y}")));
                };
                darts.push(e);
                y = v.head(e);
                if darts.len() > s.dart_count() {
                    return Err(Error::Development(format!("run from vertex {x} never reaches a vertex of B")));
                }
            }
            for &e in &darts {
                covered[e] = true;
                covered[s.partner(e).expect("closed")] = true;
            }
            edges.push(PolytopeEdge { from: x, to: y, direction: dir, darts });
        }
    }
    if let Some(d) = (0..s.dart_count()).find(|&d| a.contains(d) && !covered[d]) {
        return Err(Error::Development(format!("A-edge at dart {d} lies on no edge of B")));
    }

    let mut region_of_face = vec![usize::MAX; s.face_count()];
    let mut faces = Vec::new();
    for f0 in 0..s.face_count() {
        if region_of_face[f0] != usize::MAX {
            continue;
        }
        let id = faces.len();
        region_of_face[f0] = id;
        let mut members = vec![f0];
        let mut i = 0;
        while i < members.len() {
            let f = members[i];
            i += 1;
            for d in 3 * f..3 * f + 3 {
                if a.contains(d) {
                    continue;
                }
                let g = face_of(s.partner(d).expect("closed"));
                if region_of_face[g] == usize::MAX {
                    region_of_face[g] = id;
                    members.push(g);
                }
            }
        }
        members.sort_unstable();
        faces.push(members);
    }
    Ok(PolytopeB { vertices, is_vertex, edges, faces, region_of_face })
}

/// A corner of a developed face: the vertex and the incoming and outgoing
/// directions of the boundary walk.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Corner {
    pub vertex: usize,
    pub incoming: u8,
    pub outgoing: u8,
}

impl Corner {
    /// Turning angle in units of π/3.
    pub fn turn(&self) -> u8 {
        (self.outgoing + 6 - self.incoming) % 6
    }
}

/// Direction pairs at a corner allowed with the face on the left.
pub const ALLOWED_CORNERS: [(u8, u8); 4] = [(3, 4), (1, 3), (0, 1), (4, 0)];

#[derive(Clone, Debug)]
pub struct FaceGeometry {
    pub id: usize,
    /// Boundary darts in order, face on the left.
    pub boundary: Vec<usize>,
    pub corners: Vec<Corner>,
    /// Side length in directions ±1.
    pub length: usize,
    /// Side length in directions ±e^{iπ/3}.
    pub width: usize,
    pub triangles: usize,
}

impl FaceGeometry {
    pub fn area(&self) -> FlatArea {
        FlatArea { quarter_root3_units: 2 * (self.length * self.width) as u64 }
    }
}

/// Walks the boundary of region `id` and checks that it is a flat
/// parallelogram.
pub fn develop_face(
    s: &GluedSurface,
    v: &VertexTable,
    st: &TranslationStructure,
    a: &TrajectoryComplex,
    b: &PolytopeB,
    id: usize,
) -> Result<FaceGeometry> {
    let fail = |m: String| Err(Error::Development(format!("face {id}: {m}")));
    let region = &b.faces[id];
    let on_boundary: Vec<usize> =
        region.iter().flat_map(|&f| 3 * f..3 * f + 3).filter(|&d| a.contains(d)).collect();
    let Some(&start) = on_boundary.first() else {
        return fail("region has no boundary".into());
    };
    let mut boundary = vec![start];
    let mut d = start;
    loop {
        let mut x = next(d);
        while !a.contains(x) {
            x = next(s.partner(x).expect("closed"));
        }
        if x == start {
            break;
        }
        boundary.push(x);
        d = x;
        if boundary.len() > on_boundary.len() {
            return fail("boundary walk does not close".into());
        }
    }
    if boundary.len() != on_boundary.len() {
        return fail(format!("boundary has several components ({} of {} darts)", boundary.len(), on_boundary.len()));
    }

    let n = boundary.len();
    let mut corners = Vec::new();
    let mut first_corner = None;
    for i in 0..n {
        let (din, dout) = (boundary[(i + n - 1) % n], boundary[i]);
        let (cin, cout) = (exponent(st, din), exponent(st, dout));
        if cin != cout {
            corners.push(Corner { vertex: v.tail(dout), incoming: cin, outgoing: cout });
            first_corner.get_or_insert(i);
        }
    }
    if corners.len() != 4 {
        return fail(format!("{} corners", corners.len()));
    }
    for c in &corners {
        if !ALLOWED_CORNERS.contains(&(c.incoming, c.outgoing)) {
            return fail(format!("corner at vertex {} turns {}->{}", c.vertex, c.incoming, c.outgoing));
        }
    }
    let turns: Vec<u8> = corners.iter().map(Corner::turn).collect();
    if turns.iter().map(|&t| t as usize).sum::<usize>() != 6 || turns.windows(2).any(|w| w[0] == w[1]) {
        return fail(format!("turning angles {turns:?}"));
    }
    let closure = boundary.iter().fold(crate::eisenstein::Eisenstein::ZERO, |acc, &d| acc + st.weight(d).to_eisenstein());
    if closure != crate::eisenstein::Eisenstein::ZERO {
        return fail(format!("boundary develops to {closure}"));
    }

    // side lengths from the runs between consecutive corners
    let start = first_corner.unwrap();
    let mut sides = Vec::with_capacity(4);
    let mut len = 0;
    for i in 0..n {
        let j = (start + i) % n;
        if i > 0 && exponent(st, boundary[j]) != exponent(st, boundary[(j + n - 1) % n]) {
            sides.push((exponent(st, boundary[(j + n - 1) % n]), len));
            len = 0;
        }
        len += 1;
    }
    sides.push((exponent(st, boundary[(start + n - 1) % n]), len));
    let length = sides.iter().find(|(dir, _)| dir % 3 == 0).map(|s| s.1).unwrap_or(0);
    let width = sides.iter().find(|(dir, _)| dir % 3 != 0).map(|s| s.1).unwrap_or(0);

    // no cone point strictly inside
    let on_rim: std::collections::BTreeSet<usize> = boundary.iter().map(|&d| v.tail(d)).collect();
    for &f in region {
        for d in 3 * f..3 * f + 3 {
            let x = v.tail(d);
            if v.degree(x) > 6 && !on_rim.contains(&x) {
                return fail(format!("cone point {x} inside"));
            }
        }
    }
    Ok(FaceGeometry { id, boundary, corners, length, width, triangles: region.len() })
}

/// Results of the structure lemmas on one decomposition.
#[derive(Clone, Debug, Default)]
pub struct LemmaChecks {
    /// A-edges carry only the four axis directions.
    pub axis_directions: bool,
    /// Every axis-direction edge at a cone point lies in A.
    pub cone_edges_in_a: bool,
    /// Every ±1 edge at a vertex of B lies in A.
    pub vertex_edges_in_a: bool,
    /// Periods between vertices of B lie in 3ℤ + 3ωℤ.
    pub periods_in_3l: bool,
    pub lengths_at_least_three: bool,
    pub cone_corner_per_face: bool,
    /// |F(B)| ≤ 12(g − 1).
    pub face_count_bound: bool,
    /// Triangle counts 2ℓw per face and their sum T.
    pub tiles: bool,
}

impl LemmaChecks {
    pub fn all(&self) -> bool {
        self.axis_directions
            && self.cone_edges_in_a
            && self.vertex_edges_in_a
            && self.periods_in_3l
            && self.lengths_at_least_three
            && self.cone_corner_per_face
            && self.face_count_bound
            && self.tiles
    }
}

#[derive(Clone, Debug)]
pub struct Decomposition {
    pub genus: u64,
    pub complex: TrajectoryComplex,
    pub polytope: PolytopeB,
    pub faces: Vec<FaceGeometry>,
    pub checks: LemmaChecks,
}

impl Decomposition {
    pub fn total_area(&self) -> FlatArea {
        FlatArea { quarter_root3_units: self.faces.iter().map(|f| f.area().quarter_root3_units).sum() }
    }
}

/// Builds A, B and every face geometry, and evaluates the structure lemmas.
pub fn decompose(s: &GluedSurface, st: &TranslationStructure) -> Result<Decomposition> {
    let complex = build_trajectories(s, st)?;
    let polytope = build_polytope(s, st, &complex)?;
    let v = s.vertices();
    let faces =
        (0..polytope.faces.len()).map(|id| develop_face(s, &v, st, &complex, &polytope, id)).collect::<Result<Vec<_>>>()?;
    let genus = s.genus()?;
    let cones = v.above_six();
    let axis = |d: usize| matches!(exponent(st, d), 0 | 1 | 3 | 4);

    let pm = period_map(s, &v, st, cones[0]);
    let checks = LemmaChecks {
        axis_directions: (0..s.dart_count()).filter(|&d| complex.contains(d)).all(axis),
        cone_edges_in_a: cones.iter().all(|&x| v.report(x).corners.iter().filter(|&&d| axis(d)).all(|&d| complex.contains(d))),
        vertex_edges_in_a: polytope.vertices.iter().all(|&x| {
            v.report(x).corners.iter().filter(|&&d| exponent(st, d).is_multiple_of(3)).all(|&d| complex.contains(d))
        }),
        periods_in_3l: polytope.vertices.iter().all(|&x| pm.potential[x].in_sublattice(3)),
        lengths_at_least_three: faces.iter().all(|f| f.length >= 3 && f.width >= 3),
        cone_corner_per_face: faces.iter().all(|f| f.corners.iter().any(|c| v.degree(c.vertex) > 6)),
        face_count_bound: faces.len() as u64 <= 12 * (genus - 1),
        tiles: faces.iter().all(|f| f.triangles == 2 * f.length * f.width)
            && faces.iter().map(|f| f.triangles).sum::<usize>() == s.face_count(),
    };
    Ok(Decomposition { genus, complex, polytope, faces, checks })
}
