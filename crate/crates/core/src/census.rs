//! Exhaustive enumeration of closed connected glued surfaces with few faces.
//!
//! The search builds breadth-first codes directly: the smallest unpaired dart
//! is glued either to another unpaired dart of a face already reached or to
//! side 0 of the next new face. Every leaf is then a rooted code of a
//! connected surface, and it is kept exactly when it equals the canonical
//! code, so each class is produced once without a global table.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;

use crate::canonical::canonical_code;
use crate::degree_bound::check_tri_lb;
use crate::error::{Error, Result};
use crate::surface::{GluedSurface, NO_DART};
use crate::translation::admits_translation_structure;

pub const DEFAULT_CENSUS_CAP: usize = 10;
pub const CAP_ENV: &str = "EQUILAT_MAX_T";

/// The census cap, from `EQUILAT_MAX_T` when set.
pub fn census_cap() -> usize {
    std::env::var(CAP_ENV).ok().and_then(|v| v.trim().parse().ok()).unwrap_or(DEFAULT_CENSUS_CAP)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CensusOptions {
    pub jobs: usize,
    pub cap: usize,
}

impl Default for CensusOptions {
    fn default() -> Self {
        Self { jobs: std::thread::available_parallelism().map_or(1, |n| n.get()), cap: census_cap() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CensusFilter {
    /// Admits a combinatorial translation structure.
    Tran,
    /// Passes the Tri_lb test.
    Lb,
}

impl CensusFilter {
    pub fn matches(self, s: &GluedSurface) -> bool {
        match self {
            CensusFilter::Tran => admits_translation_structure(s),
            CensusFilter::Lb => check_tri_lb(s).passed(),
        }
    }
}

/// Partial code: `code[d]` is the partner of dart `d` or `NO_DART`.
#[derive(Clone)]
struct Partial {
    code: Vec<u32>,
    faces_used: usize,
    next: usize,
}

impl Partial {
    fn new(t: usize) -> Self {
        Self { code: vec![NO_DART; 3 * t], faces_used: 1, next: 0 }
    }

    fn first_open(&self) -> Option<usize> {
        (self.next..self.code.len()).find(|&d| self.code[d] == NO_DART)
    }

    /// Children in increasing partner order; `None` for a complete code.
    fn children(&self) -> Option<Vec<Partial>> {
        let d = self.first_open()?;
        let t = self.code.len() / 3;
        let reached = 3 * self.faces_used;
        let mut out = Vec::new();
        if d >= reached {
            // the reached faces are closed off; the rest would be a second component
            return Some(out);
        }
        for e in d + 1..reached {
            if self.code[e] == NO_DART {
                let mut c = self.clone();
                c.code[d] = e as u32;
                c.code[e] = d as u32;
                c.next = d + 1;
                out.push(c);
            }
        }
        if self.faces_used < t {
            let mut c = self.clone();
            c.code[d] = reached as u32;
            c.code[reached] = d as u32;
            c.faces_used += 1;
            c.next = d + 1;
            out.push(c);
        }
        Some(out)
    }
}

fn search(p: Partial, out: &mut Vec<Vec<u32>>) {
    match p.children() {
        None => {
            let s = GluedSurface::from_raw(p.code.clone());
            if canonical_code(&s).is_ok_and(|c| c == p.code) {
                out.push(p.code);
            }
        }
        Some(children) => {
            for c in children {
                search(c, out);
            }
        }
    }
}

fn check_t(t: usize, opts: &CensusOptions) -> Result<()> {
    if t % 2 == 1 {
        return Err(Error::OddFaceCount(t));
    }
    if t < 2 {
        return Err(Error::InvalidParameter(format!("census needs T >= 2, got {t}")));
    }
    if t > opts.cap {
        return Err(Error::CensusCap { requested: t, cap: opts.cap });
    }
    Ok(())
}

fn pool(jobs: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Error::InvalidParameter(format!("thread pool: {e}")))
}

/// Canonical codes of all classes with `t` faces, sorted.
fn all_codes(t: usize, jobs: usize) -> Result<Vec<Vec<u32>>> {
    // split the tree into enough independent subtrees to keep workers busy
    let mut frontier = vec![Partial::new(t)];
    let mut done = Vec::new();
    while frontier.len() < 64 * jobs.max(1) {
        let mut grown = Vec::new();
        let mut progressed = false;
        for p in frontier {
            match p.children() {
                Some(c) => {
                    progressed = true;
                    grown.extend(c);
                }
                None => done.push(p),
            }
        }
        frontier = grown;
        if !progressed {
            break;
        }
    }
    frontier.extend(done);
    let mut codes: Vec<Vec<u32>> = pool(jobs)?.install(|| {
        frontier
            .into_par_iter()
            .map(|p| {
                let mut out = Vec::new();
                search(p, &mut out);
                out
            })
            .flatten()
            .collect()
    });
    codes.sort_unstable();
    Ok(codes)
}

/// One representative per isomorphism class of closed connected surfaces
/// with `t` faces, in canonical labeling, sorted by canonical form.
pub fn enumerate_surfaces(t: usize, filter: Option<CensusFilter>, opts: &CensusOptions) -> Result<Vec<GluedSurface>> {
    check_t(t, opts)?;
    let surfaces: Vec<GluedSurface> = all_codes(t, opts.jobs)?.into_iter().map(GluedSurface::from_raw).collect();
    let keep: Vec<bool> = match filter {
        None => vec![true; surfaces.len()],
        Some(f) => pool(opts.jobs)?.install(|| surfaces.par_iter().map(|s| f.matches(s)).collect()),
    };
    Ok(surfaces.into_iter().zip(keep).filter_map(|(s, k)| k.then_some(s)).collect())
}

/// Whether the 1-skeleton has a loop or two edges with the same endpoints.
pub fn has_loop_or_multi_edge(s: &GluedSurface) -> bool {
    let v = s.vertices();
    let mut seen = BTreeSet::new();
    for (a, _) in s.pairs() {
        let (x, y) = (v.tail(a), v.head(a));
        if x == y || !seen.insert((x.min(y), x.max(y))) {
            return true;
        }
    }
    false
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusRow {
    pub t: usize,
    pub genus: u64,
    pub count: usize,
    pub tran_count: usize,
    pub lb_count: usize,
    /// Classes whose 1-skeleton is a simple graph.
    pub simple_count: usize,
    /// Number of classes by maximum vertex degree.
    pub max_degree_histogram: BTreeMap<usize, usize>,
}

#[derive(Clone, Debug)]
struct Facts {
    genus: u64,
    tran: bool,
    lb: bool,
    simple: bool,
    max_degree: usize,
}

/// Rows for every even T up to `t_max` and every genus that occurs, over the
/// classes passing `filter`.
pub fn count_table(t_max: usize, filter: Option<CensusFilter>, opts: &CensusOptions) -> Result<Vec<CensusRow>> {
    if t_max > opts.cap {
        return Err(Error::CensusCap { requested: t_max, cap: opts.cap });
    }
    let mut rows = Vec::new();
    for t in (2..=t_max).step_by(2) {
        let surfaces = enumerate_surfaces(t, filter, opts)?;
        let facts: Vec<Facts> = pool(opts.jobs)?.install(|| {
            surfaces
                .par_iter()
                .map(|s| Facts {
                    genus: s.genus().expect("census surfaces are connected"),
                    tran: CensusFilter::Tran.matches(s),
                    lb: CensusFilter::Lb.matches(s),
                    simple: !has_loop_or_multi_edge(s),
                    max_degree: s.vertices().max_degree(),
                })
                .collect()
        });
        let mut by_genus: BTreeMap<u64, CensusRow> = BTreeMap::new();
        for f in facts {
            let row = by_genus.entry(f.genus).or_insert_with(|| CensusRow {
                t,
                genus: f.genus,
                count: 0,
                tran_count: 0,
                lb_count: 0,
                simple_count: 0,
                max_degree_histogram: BTreeMap::new(),
            });
            row.count += 1;
            row.tran_count += f.tran as usize;
            row.lb_count += f.lb as usize;
            row.simple_count += f.simple as usize;
            *row.max_degree_histogram.entry(f.max_degree).or_default() += 1;
        }
        rows.extend(by_genus.into_values());
    }
    Ok(rows)
}

pub const CSV_HEADER: &str = "T,genus,count,tran_count,lb_count";

pub fn to_csv(rows: &[CensusRow]) -> String {
    let mut out = format!("{CSV_HEADER}\n");
    for r in rows {
        out.push_str(&format!("{},{},{},{},{}\n", r.t, r.genus, r.count, r.tran_count, r.lb_count));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::hexagonal_torus;

    fn opts(jobs: usize) -> CensusOptions {
        CensusOptions { jobs, cap: DEFAULT_CENSUS_CAP }
    }

    #[test]
    fn rejects_bad_t() {
        assert_eq!(enumerate_surfaces(3, None, &opts(1)).unwrap_err(), Error::OddFaceCount(3));
        assert!(matches!(enumerate_surfaces(12, None, &opts(1)), Err(Error::CensusCap { requested: 12, cap: 10 })));
    }

    #[test]
    fn t2_contains_torus() {
        let list = enumerate_surfaces(2, None, &opts(2)).unwrap();
        let torus = canonical_code(&hexagonal_torus()).unwrap();
        assert!(list.iter().any(|s| canonical_code(s).unwrap() == torus));
        let tran = enumerate_surfaces(2, Some(CensusFilter::Tran), &opts(2)).unwrap();
        assert!(!tran.is_empty());
    }

    #[test]
    fn csv_shape() {
        let rows = count_table(4, None, &opts(2)).unwrap();
        let csv = to_csv(&rows);
        assert!(csv.starts_with("T,genus,count,tran_count,lb_count\n"));
        assert_eq!(csv.lines().count(), rows.len() + 1);
    }
}
