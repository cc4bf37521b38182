//! Sanity checks of the test oracle against tabulated Jones polynomials.

mod oracle;

use oracle::*;

fn poly(terms: &[(i64, i64)]) -> Poly {
    terms.iter().copied().collect()
}

#[test]
fn unknot_is_one_loop() {
    assert_eq!(unnormalized_jones(&[], 1), poly(&[(-1, 1), (1, 1)]));
}

#[test]
fn left_trefoil_matches_table() {
    // V(t) = -t^-4 + t^-3 + t^-1 with q^2 = t^-1 convention mirrored: q^-2 + q^-6 - q^-8
    let j = divide_by_loop(&unnormalized_jones(&TREFOIL, 0));
    assert_eq!(j, poly(&[(-8, -1), (-6, 1), (-2, 1)]), "{}", render(&j));
}

#[test]
fn figure_eight_matches_table() {
    let j = divide_by_loop(&unnormalized_jones(&FIGURE_EIGHT, 0));
    assert_eq!(j, poly(&[(-4, 1), (-2, -1), (0, 1), (2, -1), (4, 1)]), "{}", render(&j));
}

#[test]
fn hopf_link_is_alternating_and_divisible() {
    let jh = unnormalized_jones(&HOPF, 0);
    let j = divide_by_loop(&jh);
    println!("hopf: {} -> {}", render(&jh), render(&j));
    assert_eq!(j.len(), 2);
}

#[test]
fn kinked_unknot_reduces_to_loop() {
    // over strand leaves through position 1 (positive) or position 3 (negative)
    for (pd, sign) in [([[1, 1, 2, 2]], true), ([[1, 2, 2, 1]], false)] {
        let j = unnormalized_jones_signed(&pd, &[sign], 0);
        assert_eq!(j, poly(&[(-1, 1), (1, 1)]), "{pd:?}: {}", render(&j));
    }
}
