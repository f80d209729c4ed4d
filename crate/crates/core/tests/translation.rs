mod common;

use equilat::eisenstein::Root6;
use equilat::subdivide::subdivide;
use equilat::surface::{hexagonal_torus, next, pillowcase};
use equilat::translation::{
    detect_structures, edge_path_period, face_types, flat_area, is_locally_bounded_tran, period_map, FaceType,
};
use equilat::eisenstein::Eisenstein;
use proptest::prelude::*;

#[test]
fn structure_counts() {
    assert_eq!(detect_structures(&hexagonal_torus()).unwrap().len(), 6);
    assert!(detect_structures(&pillowcase()).unwrap().is_empty());
    for s in common::census_upto(6) {
        let n = detect_structures(&s).unwrap().len();
        assert!(n == 0 || n == 6);
        if s.vertices().iter().any(|r| r.degree % 2 == 1) {
            assert_eq!(n, 0);
        }
    }
}

#[test]
fn six_structures_are_rotations() {
    for s in common::census_upto(8).into_iter().filter(equilat::translation::admits_translation_structure) {
        let sts = detect_structures(&s).unwrap();
        for (k, st) in sts.iter().enumerate() {
            assert!(st.is_valid_on(&s));
            for d in 0..s.dart_count() {
                assert_eq!(st.weight(d), sts[0].weight(d) * Root6::new(k as i64));
            }
        }
        assert!(s.vertices().iter().all(|r| r.degree % 6 == 0));
    }
}

#[test]
fn face_type_examples() {
    let t = hexagonal_torus();
    let st = &detect_structures(&t).unwrap()[0];
    let types = face_types(st);
    assert_eq!(types.iter().filter(|&&x| x == FaceType::A).count(), 1);

    let t2 = subdivide(&t, 2).unwrap();
    let types = face_types(&detect_structures(&t2).unwrap()[0]);
    assert_eq!(types.iter().filter(|&&x| x == FaceType::A).count(), 4);

    let base = face_types(st);
    let swapped = face_types(&st.rotated(1));
    let kept = face_types(&st.rotated(2));
    assert!(base.iter().zip(&swapped).all(|(a, b)| a != b));
    assert_eq!(base, kept);
}

#[test]
fn path_period_examples() {
    let t = hexagonal_torus();
    let v = t.vertices();
    let st = &detect_structures(&t).unwrap()[0];
    assert_eq!(edge_path_period(&v, st, &[]).unwrap(), Eisenstein::ZERO);
    for d in 0..t.dart_count() {
        let p = edge_path_period(&v, st, &[d]).unwrap();
        assert_eq!(p.norm(), 1);
        assert_eq!(edge_path_period(&v, st, &[d, t.partner(d).unwrap()]).unwrap(), Eisenstein::ZERO);
    }
}

#[test]
fn vertex_links_close_up() {
    for s in common::TRAN_LB.iter().take(6) {
        let v = s.vertices();
        let st = &detect_structures(s).unwrap()[0];
        for r in v.iter() {
            // the far sides of the faces around the vertex, in order
            let link: Vec<usize> = r.corners.iter().map(|&c| next(c)).collect();
            assert_eq!(edge_path_period(&v, st, &link).unwrap(), Eisenstein::ZERO);
        }
    }
}

#[test]
fn loop_holonomies_are_sums_of_edge_periods() {
    let s = subdivide(&common::census(6).into_iter().find(|s| s.genus().unwrap() == 2 && equilat::translation::admits_translation_structure(s)).unwrap(), 3).unwrap();
    let v = s.vertices();
    let st = &detect_structures(&s).unwrap()[0];
    let pm = period_map(&s, &v, st, 0);
    assert_eq!(pm.cotree.len(), s.edge_count() - (v.len() - 1));
    for &(d, h) in &pm.cotree {
        let mut walk = pm.tree_path(&v, v.tail(d));
        walk.push(d);
        let back: Vec<usize> = pm.tree_path(&v, v.head(d)).into_iter().rev().map(|e| s.partner(e).unwrap()).collect();
        walk.extend(back);
        assert_eq!(edge_path_period(&v, st, &walk).unwrap(), h);
    }
}

#[test]
fn lb_examples() {
    let t = hexagonal_torus();
    let st = &detect_structures(&t).unwrap()[0];
    assert!(!is_locally_bounded_tran(&t, st).unwrap().passed());
    for s in common::census_upto(8) {
        if !equilat::translation::admits_translation_structure(&s) || s.vertices().max_degree() > 14 {
            continue;
        }
        let fine = subdivide(&s, 3).unwrap();
        let fst = &detect_structures(&fine).unwrap()[0];
        assert!(is_locally_bounded_tran(&fine, fst).unwrap().passed());
    }
}

#[test]
fn cover_components_of_bounded_images_are_tran_lb() {
    for s in common::TRAN_LB.iter() {
        let st = &detect_structures(s).unwrap()[0];
        assert!(is_locally_bounded_tran(s, st).unwrap().passed());
    }
}

#[test]
fn area_examples() {
    assert_eq!(flat_area(&hexagonal_torus()).quarter_root3_units, 2);
    let s = subdivide(&pillowcase(), 5).unwrap();
    assert_eq!(flat_area(&s).quarter_root3_units, 25 * 2);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn backtracks_do_not_change_loop_periods(seed in 0u64..300, at in 0usize..100) {
        let s = &common::TRAN_LB[seed as usize % 8];
        let v = s.vertices();
        let st = &detect_structures(s).unwrap()[0];
        let pm = period_map(s, &v, st, 0);
        let (d, h) = pm.cotree[at % pm.cotree.len()];
        let mut walk = pm.tree_path(&v, v.tail(d));
        walk.push(d);
        walk.extend(pm.tree_path(&v, v.head(d)).into_iter().rev().map(|e| s.partner(e).unwrap()));
        let i = at % walk.len();
        let x = walk[i];
        walk.splice(i..i, [x, s.partner(x).unwrap()]);
        prop_assert_eq!(edge_path_period(&v, st, &walk).unwrap(), h);
    }
}
