use equilat::eisenstein::{Eisenstein, Root6};
use proptest::prelude::*;

#[test]
fn worked_products() {
    let w = Eisenstein::OMEGA;
    assert_eq!(w * w, w - Eisenstein::ONE);
    assert_eq!(Root6::new(3).to_eisenstein(), -Eisenstein::ONE);
    assert_eq!((Eisenstein::ONE + w) * (Eisenstein::ONE - w), Eisenstein::new(2, -1));
}

#[test]
fn sublattice_examples() {
    assert!(Eisenstein::new(3, -6).in_sublattice(3));
    assert!(!Eisenstein::new(1, 0).in_sublattice(3));
    for k in 0..6 {
        assert!(Root6::new(k).to_eisenstein().in_sublattice(1));
    }
}

#[test]
fn root_table() {
    let expected = [(1, 0), (0, 1), (-1, 1), (-1, 0), (0, -1), (1, -1)];
    for (k, &(a, b)) in expected.iter().enumerate() {
        assert_eq!(Root6::new(k as i64).to_eisenstein(), Eisenstein::new(a, b));
    }
    assert_eq!(Root6::new(6), Root6::new(0));
}

proptest! {
    #[test]
    fn norm_is_zero_only_at_zero(a in -1000i64..1000, b in -1000i64..1000) {
        let x = Eisenstein::new(a, b);
        prop_assert!(x.norm() >= 0);
        prop_assert_eq!(x.norm() == 0, x == Eisenstein::ZERO);
    }

    #[test]
    fn norm_matches_complex_modulus(a in -1000i64..1000, b in -1000i64..1000) {
        let (re, im) = Eisenstein::new(a, b).to_complex();
        let n = Eisenstein::new(a, b).norm() as f64;
        prop_assert!((re * re + im * im - n).abs() <= 1e-9 * n.max(1.0));
    }

    #[test]
    fn roots_multiply_like_exponents(j in 0i64..6, k in 0i64..6) {
        prop_assert_eq!((Root6::new(j) * Root6::new(k)).to_eisenstein(), Root6::new(j).to_eisenstein() * Root6::new(k).to_eisenstein());
    }
}
