mod common;

use equilat::canonical::{canonical_form, relabel};
use equilat::cover::{canonical_cover, holonomy_cocycle, verify_cover};
use equilat::degree_bound::bounded_degree_map;
use equilat::random::random_surface;
use equilat::surface::{hexagonal_torus, pillowcase, GluedSurface};
use equilat::translation::admits_translation_structure;
use proptest::prelude::*;

/// Cycle lengths of k -> k + m on ℤ/6.
fn sheet_cycles(m: usize) -> Vec<usize> {
    let mut seen = [false; 6];
    let mut out = Vec::new();
    for k in 0..6 {
        let mut len = 0;
        let mut j = k;
        while !seen[j] {
            seen[j] = true;
            j = (j + m) % 6;
            len += 1;
        }
        if len > 0 {
            out.push(len);
        }
    }
    out
}

#[test]
fn monodromy_cycle_structure() {
    // degrees 2 and 10 on a torus, and a degree-7/5 flip
    let s = GluedSurface::new(4, [(0, 11), (1, 4), (2, 5), (3, 8), (6, 10), (7, 9)]).unwrap();
    let h = holonomy_cocycle(&s).unwrap();
    let v = s.vertices();
    for r in v.iter() {
        let m = h.monodromy(&v, r.id) as usize;
        assert_eq!(m, r.degree % 6);
    }
    assert_eq!(sheet_cycles(0), vec![1; 6]);
    assert_eq!(sheet_cycles(7 % 6), vec![6]);
    assert_eq!(sheet_cycles(8 % 6), vec![3, 3]);
}

#[test]
fn degree_eight_vertex_has_index_three() {
    let s = common::census(4).into_iter().find(|s| s.vertices().iter().any(|r| r.degree == 8)).unwrap();
    let c = canonical_cover(&s).unwrap();
    verify_cover(&s, &c).unwrap();
    for r in c.ramification.iter().filter(|r| r.degree == 8) {
        assert_eq!((r.index, r.preimages), (3, 2));
    }
}

#[test]
fn translation_surfaces_split() {
    for s in common::census_upto(8).into_iter().filter(admits_translation_structure) {
        let c = canonical_cover(&s).unwrap();
        let r = verify_cover(&s, &c).unwrap();
        assert_eq!(c.components.len(), 6);
        let form = canonical_form(&s).unwrap();
        assert!(c.components.iter().all(|k| k.degree == 1 && k.canonical == form));
        assert!(r.components.iter().all(|k| k.genus == r.base_genus));
    }
}

#[test]
fn pillowcase_matches_sheet_orbit_oracle() {
    let p = pillowcase();
    let c = canonical_cover(&p).unwrap();
    verify_cover(&p, &c).unwrap();
    assert_eq!(c.components.len(), common::sheet_orbits(&c.holonomy.transition));
}

#[test]
fn corpus_covers_verify() {
    let mut corpus = common::census_upto(6);
    corpus.extend(common::random_corpus(60, 50));
    for s in &corpus {
        let c = canonical_cover(s).unwrap();
        let r = verify_cover(s, &c).unwrap();
        assert!(c.components.len() <= 6);
        assert_eq!(c.components.len(), common::sheet_orbits(&c.holonomy.transition));
        assert_eq!(c.components.iter().map(|k| k.degree).sum::<usize>(), 6);
        assert!(c.total.vertices().iter().all(|x| x.degree % 6 == 0));
        assert!(r.components.iter().all(|k| k.rh.0 == k.rh.1 && k.structures == 6));
    }
}

#[test]
fn tri_lb_bases_give_tran_lb_components() {
    for s in [hexagonal_torus(), pillowcase(), common::genus_two_fixture()] {
        let b = bounded_degree_map(&s).unwrap().output;
        let r = verify_cover(&b, &canonical_cover(&b).unwrap()).unwrap();
        assert!(r.base_tri_lb);
        assert!(r.components.iter().all(|k| k.tran_lb == Some(true)));
    }
}

#[test]
fn tampered_cover_is_caught() {
    let s = random_surface(8, 3, 1000).unwrap();
    let mut c = canonical_cover(&s).unwrap();
    c.ramification[0].index += 1;
    assert!(verify_cover(&s, &c).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn cover_is_natural_under_relabeling(seed in 0u64..1000, shuffle in any::<u64>()) {
        use rand::{SeedableRng, seq::SliceRandom, RngExt};
        let s = random_surface(10, seed, 1000).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(shuffle);
        let mut perm: Vec<usize> = (0..10).collect();
        perm.shuffle(&mut rng);
        let rot: Vec<usize> = (0..10).map(|_| rng.random_range(0..3)).collect();
        let forms = |s: &GluedSurface| canonical_cover(s).unwrap().components.into_iter().map(|k| k.canonical).collect::<Vec<_>>();
        prop_assert_eq!(forms(&s), forms(&relabel(&s, &perm, &rot)));
    }
}
