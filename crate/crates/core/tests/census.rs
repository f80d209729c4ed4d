mod common;

use equilat::canonical::{canonical_code, canonical_form};
use equilat::census::{count_table, enumerate_surfaces, to_csv, CensusFilter, CensusOptions};
use equilat::surface::{hexagonal_torus, load_surface};
use equilat::Error;

#[test]
fn small_censuses_match_brute_force() {
    for t in [2, 4] {
        let fast = common::census(t);
        let slow = common::brute_census(t);
        assert_eq!(fast.len(), slow.len(), "T={t}");
        for s in &slow {
            assert_eq!(fast.iter().filter(|f| common::brute_isomorphic(f, s)).count(), 1);
        }
    }
}

#[test]
fn known_class_counts() {
    let counts: Vec<usize> = [2, 4, 6, 8].iter().map(|&t| common::census(t).len()).collect();
    assert_eq!(counts, vec![3, 11, 81, 1228]);
}

#[test]
fn torus_is_in_the_t2_list() {
    let torus = canonical_code(&hexagonal_torus()).unwrap();
    let list = common::census(2);
    let hit = list.iter().find(|s| canonical_code(s).unwrap() == torus).unwrap();
    assert_eq!((hit.genus().unwrap(), hit.vertices().len()), (1, 1));
}

#[test]
fn output_is_sorted_and_round_trips() {
    let list = common::census(6);
    let forms: Vec<Vec<u32>> = list.iter().map(|s| canonical_code(s).unwrap()).collect();
    assert!(forms.windows(2).all(|w| w[0] < w[1]));
    for s in &list {
        let back = load_surface(&canonical_form(s).unwrap()).unwrap();
        assert_eq!(canonical_form(&back).unwrap(), canonical_form(s).unwrap());
        assert!(s.face_count() + 4 >= 4 * s.genus().unwrap() as usize);
    }
}

#[test]
fn tables_do_not_depend_on_workers() {
    let one = count_table(8, None, &common::census_opts(1)).unwrap();
    let many = count_table(8, None, &common::census_opts(8)).unwrap();
    assert_eq!(one, many);
    assert_eq!(to_csv(&one), to_csv(&many));
}

#[test]
fn genus_column_is_bounded() {
    for row in count_table(8, None, &common::census_opts(2)).unwrap() {
        assert!(row.genus as usize <= (row.t + 4) / 4);
        assert!(row.tran_count <= row.count && row.simple_count <= row.count);
    }
    let t2 = count_table(2, None, &common::census_opts(1)).unwrap();
    assert_eq!(t2.iter().map(|r| r.count).sum::<usize>(), common::brute_census(2).len());
    assert!(t2.iter().map(|r| r.tran_count).sum::<usize>() >= 1);
}

#[test]
fn filters_and_caps() {
    let opts = common::census_opts(2);
    let tran = enumerate_surfaces(6, Some(CensusFilter::Tran), &opts).unwrap();
    assert_eq!(tran.len(), 3);
    let rows = count_table(6, Some(CensusFilter::Tran), &opts).unwrap();
    assert!(rows.iter().all(|r| r.count == r.tran_count));
    assert_eq!(enumerate_surfaces(5, None, &opts).unwrap_err(), Error::OddFaceCount(5));
    let low = CensusOptions { jobs: 1, cap: 4 };
    assert_eq!(enumerate_surfaces(6, None, &low).unwrap_err(), Error::CensusCap { requested: 6, cap: 4 });
}
