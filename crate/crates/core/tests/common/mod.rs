//! Corpora and brute-force oracles shared by the integration tests. The
//! oracles deliberately avoid the library's canonical forms.
#![allow(dead_code)]

use std::sync::LazyLock;

use equilat::census::{enumerate_surfaces, CensusOptions};
use equilat::cover::canonical_cover;
use equilat::degree_bound::bounded_degree_map;
use equilat::random::random_surface;
use equilat::subdivide::subdivide;
use equilat::translation::admits_translation_structure;
use equilat::GluedSurface;

pub fn census_opts(jobs: usize) -> CensusOptions {
    CensusOptions { jobs, cap: 10 }
}

pub fn census(t: usize) -> Vec<GluedSurface> {
    enumerate_surfaces(t, None, &census_opts(2)).unwrap()
}

/// All census classes with 2 ≤ T ≤ `tmax`.
pub fn census_upto(tmax: usize) -> Vec<GluedSurface> {
    (2..=tmax).step_by(2).flat_map(census).collect()
}

/// `n` random surfaces with T cycling through 8, 10, …, 40.
pub fn random_corpus(n: usize, seed0: u64) -> Vec<GluedSurface> {
    (0..n).map(|i| random_surface(8 + 2 * (i % 17), seed0 + i as u64, 10_000).unwrap()).collect()
}

/// 200 surfaces: the whole census up to T = 6 and random ones up to T = 40.
pub fn theorem_corpus() -> Vec<GluedSurface> {
    let mut c = census_upto(6);
    let rest = 200 - c.len();
    c.extend(random_corpus(rest, 1000));
    c
}

/// The genus-2 surface with a single vertex of degree 18.
pub fn genus_two_fixture() -> GluedSurface {
    GluedSurface::new(6, [(0, 13), (1, 16), (2, 12), (3, 11), (4, 15), (5, 7), (6, 10), (8, 9), (14, 17)]).unwrap()
}

pub static TRAN_LB: LazyLock<Vec<GluedSurface>> = LazyLock::new(tran_lb_corpus);

/// Locally bounded translation surfaces of genus at least 2: 3-subdivisions
/// of census translation surfaces, and components of the canonical covers
/// of bounded-degree images.
pub fn tran_lb_corpus() -> Vec<GluedSurface> {
    let mut out: Vec<GluedSurface> = census_upto(8)
        .into_iter()
        .filter(|s| s.genus().unwrap() >= 2 && admits_translation_structure(s))
        .map(|s| subdivide(&s, 3).unwrap())
        .collect();
    let mut bases = vec![genus_two_fixture()];
    bases.extend(census(4).into_iter().filter(|s| s.vertices().max_degree() > 7).take(3));
    bases.push(random_surface(10, 7, 10_000).unwrap());
    for s in bases {
        let b = bounded_degree_map(&s).unwrap().output;
        for k in canonical_cover(&b).unwrap().components {
            if k.surface.genus().unwrap() >= 2 {
                out.push(k.surface);
            }
        }
    }
    out
}

/// Exhaustive search for a face bijection with rotations carrying `a` to `b`.
pub fn brute_isomorphic(a: &GluedSurface, b: &GluedSurface) -> bool {
    let t = a.face_count();
    if t != b.face_count() {
        return false;
    }
    let mut map = vec![None; t];
    let mut used = vec![false; t];
    extend(a, b, 0, &mut map, &mut used)
}

/// `map[f] = (g, r)`: side `s` of face `f` goes to side `(s + r) % 3` of `g`.
fn extend(a: &GluedSurface, b: &GluedSurface, f: usize, map: &mut [Option<(usize, usize)>], used: &mut [bool]) -> bool {
    let t = a.face_count();
    if f == t {
        return (0..a.dart_count()).all(|d| {
            let img = |d: usize| {
                let (g, r) = map[d / 3].unwrap();
                3 * g + (d % 3 + r) % 3
            };
            b.partner(img(d)) == a.partner(d).map(img)
        });
    }
    for g in 0..t {
        if used[g] {
            continue;
        }
        for r in 0..3 {
            map[f] = Some((g, r));
            used[g] = true;
            if extend(a, b, f + 1, map, used) {
                return true;
            }
            used[g] = false;
        }
    }
    map[f] = None;
    false
}

/// Every fixed-point-free involution on `3t` darts.
pub fn all_gluings(t: usize) -> Vec<GluedSurface> {
    fn go(partner: &mut Vec<Option<usize>>, out: &mut Vec<Vec<Option<usize>>>) {
        let Some(d) = partner.iter().position(Option::is_none) else {
            out.push(partner.clone());
            return;
        };
        for e in d + 1..partner.len() {
            if partner[e].is_none() {
                partner[d] = Some(e);
                partner[e] = Some(d);
                go(partner, out);
                partner[d] = None;
                partner[e] = None;
            }
        }
    }
    let mut raw = Vec::new();
    go(&mut vec![None; 3 * t], &mut raw);
    raw.iter().map(|p| GluedSurface::from_partners(p).unwrap()).collect()
}

/// Isomorphism classes of connected closed surfaces with `t` faces, found by
/// exhaustive gluing and pairwise brute-force isomorphism.
pub fn brute_census(t: usize) -> Vec<GluedSurface> {
    let mut classes: Vec<GluedSurface> = Vec::new();
    for s in all_gluings(t).into_iter().filter(GluedSurface::is_connected) {
        if !classes.iter().any(|c| brute_isomorphic(c, &s)) {
            classes.push(s);
        }
    }
    classes
}

/// Number of sheet orbits under the group generated by the given shifts.
pub fn sheet_orbits(shifts: &[u8]) -> usize {
    let mut reached = [false; 6];
    reached[0] = true;
    let mut changed = true;
    while changed {
        changed = false;
        for k in 0..6 {
            if reached[k] {
                for &h in shifts {
                    let j = (k + h as usize) % 6;
                    if !reached[j] {
                        reached[j] = true;
                        changed = true;
                    }
                }
            }
        }
    }
    6 / reached.iter().filter(|&&r| r).count()
}
