//! Oriented surfaces glued from unit equilateral triangles.
//!
//! Face `f` owns darts `3f`, `3f+1`, `3f+2`. Dart `3f+s` is side `s` of the
//! face, running counterclockwise from corner `s` to corner `s+1 (mod 3)`.
//! A gluing pairs two darts so that one traversed forward is the other
//! traversed backward; unpaired darts are boundary edges. The tail corner of a
//! dart doubles as the corner identifier, so corners and darts share indices.

use std::fmt::Write as _;

use crate::error::{Error, Result};

pub(crate) const NO_DART: u32 = u32::MAX;

#[inline]
pub fn face_of(dart: usize) -> usize {
    dart / 3
}

#[inline]
pub fn side_of(dart: usize) -> usize {
    dart % 3
}

/// Next dart counterclockwise within the same face.
#[inline]
pub fn next(dart: usize) -> usize {
    if dart % 3 == 2 {
        dart - 2
    } else {
        dart + 1
    }
}

#[inline]
pub fn prev(dart: usize) -> usize {
    if dart.is_multiple_of(3) {
        dart + 2
    } else {
        dart - 1
    }
}

#[derive(Clone, Debug)]
pub struct GluedSurface {
    face_count: usize,
    partner: Vec<u32>,
    provenance: Option<String>,
}

impl PartialEq for GluedSurface {
    fn eq(&self, other: &Self) -> bool {
        self.face_count == other.face_count && self.partner == other.partner
    }
}

impl Eq for GluedSurface {}

impl GluedSurface {
    /// Builds a surface from a list of glued dart pairs.
    pub fn new(face_count: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let darts = 3 * face_count;
        let mut partner = vec![NO_DART; darts];
        for (a, b) in pairs {
            for d in [a, b] {
                if d >= darts {
                    return Err(Error::DartOutOfRange { dart: d, face_count });
                }
            }
            if a == b {
                return Err(Error::FixedDart(a));
            }
            for d in [a, b] {
                if partner[d] != NO_DART {
                    return Err(Error::NotInvolution(d));
                }
            }
            partner[a] = b as u32;
            partner[b] = a as u32;
        }
        Ok(Self { face_count, partner, provenance: None })
    }

    /// Builds a surface from a full partner table (`None` marks boundary).
    pub fn from_partners(partners: &[Option<usize>]) -> Result<Self> {
        if !partners.len().is_multiple_of(3) {
            return Err(Error::InvalidParameter(format!(
                "partner table length {} is not a multiple of 3",
                partners.len()
            )));
        }
        let face_count = partners.len() / 3;
        let mut pairs = Vec::new();
        for (d, p) in partners.iter().enumerate() {
            if let Some(p) = *p {
                if p >= partners.len() {
                    return Err(Error::DartOutOfRange { dart: p, face_count });
                }
                if p == d {
                    return Err(Error::FixedDart(d));
                }
                if partners[p] != Some(d) {
                    return Err(Error::NotInvolution(p));
                }
                if d < p {
                    pairs.push((d, p));
                }
            }
        }
        Self::new(face_count, pairs)
    }

    /// Unchecked constructor for tables produced by this crate.
    pub(crate) fn from_raw(partner: Vec<u32>) -> Self {
        debug_assert!(partner.len().is_multiple_of(3));
        debug_assert!(partner.iter().enumerate().all(|(d, &p)| {
            p == NO_DART || (p as usize != d && partner[p as usize] == d as u32)
        }));
        Self { face_count: partner.len() / 3, partner, provenance: None }
    }

    /// Builds a surface from oriented vertex triples. Each triple is listed
    /// counterclockwise; directed edges `(a, b)` and `(b, a)` are glued.
    pub fn from_triangles(triangles: &[[usize; 3]]) -> Result<Self> {
        // relabel vertices densely, then bucket darts by tail
        let max = triangles.iter().flatten().copied().max().unwrap_or(0);
        let (labels, dense): (Vec<usize>, Vec<[usize; 3]>) = if max < 3 * triangles.len() + 3 {
            ((0..=max).collect(), triangles.to_vec())
        } else {
            let mut labels: Vec<usize> = triangles.iter().flatten().copied().collect();
            labels.sort_unstable();
            labels.dedup();
            let id = |x: usize| labels.binary_search(&x).expect("label present");
            let dense = triangles.iter().map(|t| [id(t[0]), id(t[1]), id(t[2])]).collect();
            (labels, dense)
        };
        let mut start = vec![0usize; labels.len() + 1];
        for t in &dense {
            for &x in t {
                start[x + 1] += 1;
            }
        }
        for i in 0..labels.len() {
            start[i + 1] += start[i];
        }
        let mut fill = start.clone();
        let mut out = vec![(0usize, 0usize); 3 * dense.len()];
        for (f, t) in dense.iter().enumerate() {
            for s in 0..3 {
                out[fill[t[s]]] = (t[(s + 1) % 3], 3 * f + s);
                fill[t[s]] += 1;
            }
        }
        let from = |a: usize| &out[start[a]..start[a + 1]];
        let mut partner = vec![NO_DART; 3 * dense.len()];
        for (a, t) in dense.iter().enumerate().flat_map(|(f, t)| (0..3).map(move |s| (3 * f + s, t))) {
            let (x, y) = (t[a % 3], t[(a % 3 + 1) % 3]);
            if from(x).iter().filter(|&&(h, _)| h == y).count() > 1 {
                return Err(Error::BadTriangleList(labels[x], labels[y]));
            }
            if let Some(&(_, p)) = from(y).iter().find(|&&(h, _)| h == x) {
                partner[a] = p as u32;
            }
        }
        Ok(Self::from_raw(partner))
    }

    pub fn face_count(&self) -> usize {
        self.face_count
    }

    pub fn dart_count(&self) -> usize {
        self.partner.len()
    }

    #[inline]
    pub fn partner(&self, dart: usize) -> Option<usize> {
        match self.partner[dart] {
            NO_DART => None,
            p => Some(p as usize),
        }
    }

    pub fn is_closed(&self) -> bool {
        self.partner.iter().all(|&p| p != NO_DART)
    }

    pub fn boundary_darts(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.dart_count()).filter(move |&d| self.partner[d] == NO_DART)
    }

    pub fn provenance(&self) -> Option<&str> {
        self.provenance.as_deref()
    }

    pub fn with_provenance(mut self, note: impl Into<String>) -> Self {
        self.provenance = Some(note.into());
        self
    }

    /// Next outgoing dart counterclockwise around the tail vertex.
    #[inline]
    pub fn rotate_ccw(&self, dart: usize) -> Option<usize> {
        self.partner(prev(dart))
    }

    /// Next outgoing dart clockwise around the tail vertex.
    #[inline]
    pub fn rotate_cw(&self, dart: usize) -> Option<usize> {
        self.partner(dart).map(next)
    }

    /// Glued pairs `(a, b)` with `a < b`, ascending.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        (0..self.dart_count())
            .filter_map(|d| self.partner(d).filter(|&p| d < p).map(|p| (d, p)))
            .collect()
    }

    /// Canonical TSF serialization for this labeling.
    pub fn to_tsf(&self) -> String {
        let mut out = String::with_capacity(16 + 12 * self.dart_count() / 2);
        out.push_str("tsf v1\n");
        let _ = writeln!(out, "T {}", self.face_count);
        for (a, b) in self.pairs() {
            let _ = writeln!(out, "g {a} {b}");
        }
        out
    }

    pub fn parse_tsf(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());

        let (n, header) = lines.next().ok_or(Error::Parse { line: 1, reason: "empty input".into() })?;
        if header.split_whitespace().collect::<Vec<_>>() != ["tsf", "v1"] {
            return Err(Error::Parse { line: n, reason: format!("expected `tsf v1`, found `{header}`") });
        }
        let (n, count) = lines.next().ok_or(Error::Parse { line: n + 1, reason: "missing `T` line".into() })?;
        let face_count = match count.split_whitespace().collect::<Vec<_>>()[..] {
            ["T", t] => t
                .parse::<usize>()
                .map_err(|e| Error::Parse { line: n, reason: format!("bad face count `{t}`: {e}") })?,
            _ => return Err(Error::Parse { line: n, reason: format!("expected `T <int>`, found `{count}`") }),
        };
        let mut pairs = Vec::new();
        for (n, line) in lines {
            let fields: Vec<_> = line.split_whitespace().collect();
            match fields[..] {
                ["g", a, b] => {
                    let parse = |s: &str| {
                        s.parse::<usize>()
                            .map_err(|e| Error::Parse { line: n, reason: format!("bad dart `{s}`: {e}") })
                    };
                    pairs.push((parse(a)?, parse(b)?));
                }
                _ => return Err(Error::Parse { line: n, reason: format!("expected `g <a> <b>`, found `{line}`") }),
            }
        }
        Self::new(face_count, pairs)
    }

    /// Outgoing darts around `dart`'s tail vertex, counterclockwise, and
    /// whether that vertex lies on the boundary. For boundary vertices the
    /// list starts at the most clockwise corner.
    pub fn corner_orbit(&self, dart: usize) -> (Vec<usize>, bool) {
        let mut start = dart;
        let mut boundary = false;
        loop {
            match self.rotate_cw(start) {
                Some(x) if x == dart => break,
                Some(x) => start = x,
                None => {
                    boundary = true;
                    break;
                }
            }
        }
        let first = if boundary { start } else { dart };
        let mut corners = vec![first];
        let mut cur = first;
        while let Some(x) = self.rotate_ccw(cur) {
            if x == first {
                break;
            }
            corners.push(x);
            cur = x;
        }
        (corners, boundary)
    }

    pub fn vertices(&self) -> VertexTable {
        let mut vertex_of = vec![u32::MAX; self.dart_count()];
        let mut reports = Vec::new();
        for d in 0..self.dart_count() {
            if vertex_of[d] != u32::MAX {
                continue;
            }
            let id = reports.len();
            let (corners, boundary) = self.corner_orbit(d);
            for &c in &corners {
                vertex_of[c] = id as u32;
            }
            let degree = corners.len() + usize::from(boundary);
            reports.push(VertexReport { id, degree, boundary, corners });
        }
        VertexTable { vertex_of, reports }
    }

    pub fn edge_count(&self) -> usize {
        let boundary = self.partner.iter().filter(|&&p| p == NO_DART).count();
        (self.dart_count() - boundary) / 2 + boundary
    }

    /// Boundary cycles as lists of boundary darts, surface on the left.
    pub fn boundary_cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.dart_count()];
        let mut cycles = Vec::new();
        for d in self.boundary_darts() {
            if seen[d] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut cur = d;
            while !seen[cur] {
                seen[cur] = true;
                cycle.push(cur);
                cur = self.next_boundary(cur);
            }
            cycles.push(cycle);
        }
        cycles
    }

    /// Boundary dart following `dart` along the boundary.
    pub fn next_boundary(&self, dart: usize) -> usize {
        let mut x = next(dart);
        while let Some(p) = self.partner(x) {
            x = next(p);
        }
        x
    }

    /// Face labels of connected components, in order of smallest face.
    pub fn component_labels(&self) -> (Vec<usize>, usize) {
        let mut label = vec![usize::MAX; self.face_count];
        let mut count = 0;
        let mut stack = Vec::new();
        for f in 0..self.face_count {
            if label[f] != usize::MAX {
                continue;
            }
            label[f] = count;
            stack.push(f);
            while let Some(g) = stack.pop() {
                for s in 0..3 {
                    if let Some(p) = self.partner(3 * g + s) {
                        let h = face_of(p);
                        if label[h] == usize::MAX {
                            label[h] = count;
                            stack.push(h);
                        }
                    }
                }
            }
            count += 1;
        }
        (label, count)
    }

    pub fn is_connected(&self) -> bool {
        self.face_count > 0 && self.component_labels().1 == 1
    }

    /// Splits into components. Faces keep their relative order and sides.
    pub fn connected_components(&self) -> Vec<GluedSurface> {
        let (label, count) = self.component_labels();
        if count == 1 {
            return vec![self.clone()];
        }
        let mut new_index = vec![0usize; self.face_count];
        let mut sizes = vec![0usize; count];
        for f in 0..self.face_count {
            new_index[f] = sizes[label[f]];
            sizes[label[f]] += 1;
        }
        let mut tables: Vec<Vec<u32>> = sizes.iter().map(|&n| vec![NO_DART; 3 * n]).collect();
        for d in 0..self.dart_count() {
            if let Some(p) = self.partner(d) {
                let f = face_of(d);
                let nd = 3 * new_index[f] + side_of(d);
                let np = 3 * new_index[face_of(p)] + side_of(p);
                tables[label[f]][nd] = np as u32;
            }
        }
        tables.into_iter().map(GluedSurface::from_raw).collect()
    }

    /// Euler data. Requires a connected surface.
    pub fn euler(&self) -> Result<EulerReport> {
        if self.face_count == 0 {
            return Err(Error::Empty);
        }
        let (_, comps) = self.component_labels();
        if comps != 1 {
            return Err(Error::Disconnected(comps));
        }
        let vertices = self.vertices().len();
        let edges = self.edge_count();
        let faces = self.face_count;
        let chi = vertices as i64 - edges as i64 + faces as i64;
        let boundary_components = self.boundary_cycles().len();
        let twice_genus = 2 - chi - boundary_components as i64;
        debug_assert!(twice_genus >= 0 && twice_genus % 2 == 0);
        let genus = (twice_genus / 2) as u64;

        let mut warnings = Vec::new();
        if boundary_components == 0 {
            let t = faces as u64;
            if !t.is_multiple_of(2) {
                warnings.push(format!("closed surface with odd T = {t}"));
            }
            if 4 * genus > t + 4 {
                warnings.push(format!("T = {t} violates T >= 4g - 4 for g = {genus}"));
            }
            if 2 * genus > t {
                warnings.push(format!("g/T = {genus}/{t} exceeds 1/2"));
            }
        }
        Ok(EulerReport { vertices, edges, faces, chi, genus, boundary_components, warnings })
    }

    pub fn genus(&self) -> Result<u64> {
        Ok(self.euler()?.genus)
    }

    /// Head vertex of a dart, as the tail of the next dart in its face.
    #[inline]
    pub fn head_corner(&self, dart: usize) -> usize {
        next(dart)
    }
}

pub fn load_surface(bytes: &[u8]) -> Result<GluedSurface> {
    let text = std::str::from_utf8(bytes).map_err(|e| Error::Parse { line: 1, reason: format!("not UTF-8: {e}") })?;
    GluedSurface::parse_tsf(text)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EulerReport {
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
    pub chi: i64,
    pub genus: u64,
    pub boundary_components: usize,
    /// Violations of the closed-surface counting constraints; always empty
    /// for valid closed surfaces.
    pub warnings: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexReport {
    pub id: usize,
    /// Edges emanating from the vertex; boundary vertices count their fan plus one.
    pub degree: usize,
    pub boundary: bool,
    /// Outgoing darts, counterclockwise.
    pub corners: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct VertexTable {
    vertex_of: Vec<u32>,
    reports: Vec<VertexReport>,
}

impl VertexTable {
    pub fn len(&self) -> usize {
        self.reports.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reports.is_empty()
    }

    /// Vertex at the tail of `dart`.
    #[inline]
    pub fn tail(&self, dart: usize) -> usize {
        self.vertex_of[dart] as usize
    }

    #[inline]
    pub fn head(&self, dart: usize) -> usize {
        self.vertex_of[next(dart)] as usize
    }

    #[inline]
    pub fn degree(&self, vertex: usize) -> usize {
        self.reports[vertex].degree
    }

    pub fn report(&self, vertex: usize) -> &VertexReport {
        &self.reports[vertex]
    }

    pub fn iter(&self) -> impl Iterator<Item = &VertexReport> {
        self.reports.iter()
    }

    pub fn max_degree(&self) -> usize {
        self.reports.iter().map(|r| r.degree).max().unwrap_or(0)
    }

    pub fn above_six(&self) -> Vec<usize> {
        self.filter_ids(|d| d > 6)
    }

    pub fn not_six(&self) -> Vec<usize> {
        self.filter_ids(|d| d != 6)
    }

    pub fn below_six(&self) -> Vec<usize> {
        self.filter_ids(|d| d < 6)
    }

    fn filter_ids(&self, keep: impl Fn(usize) -> bool) -> Vec<usize> {
        self.reports.iter().filter(|r| keep(r.degree)).map(|r| r.id).collect()
    }

    /// Degree histogram `(degree, count)`, ascending.
    pub fn histogram(&self) -> Vec<(usize, usize)> {
        let mut h = std::collections::BTreeMap::new();
        for r in &self.reports {
            *h.entry(r.degree).or_insert(0usize) += 1;
        }
        h.into_iter().collect()
    }
}

/// Two triangles glued along all three sides so that one vertex results.
pub fn hexagonal_torus() -> GluedSurface {
    GluedSurface::new(2, [(0, 4), (1, 5), (2, 3)])
        .expect("static gluing")
        .with_provenance("hexagonal torus")
}

/// Two triangles glued along matching sides: a sphere with three degree-2 vertices.
pub fn pillowcase() -> GluedSurface {
    GluedSurface::new(2, [(0, 5), (1, 4), (2, 3)])
        .expect("static gluing")
        .with_provenance("pillowcase sphere")
}
