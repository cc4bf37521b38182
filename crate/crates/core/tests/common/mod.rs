//! Hand-entered skein elements shared by the integration tests.

#![allow(dead_code)]

use skein::{enumerate_smoothings, LaurentPoly, OrientedSmoothing, Rational, SkeinElement};

pub fn poly(s: &str) -> LaurentPoly {
    s.parse().unwrap()
}

fn smoothing(k: usize, p: u8, pairs: &[(usize, usize)]) -> OrientedSmoothing {
    OrientedSmoothing::new(k, p, pairs.iter().copied()).unwrap()
}

/// Value of the negative 1-crossing tangle.
pub fn p1() -> SkeinElement {
    SkeinElement::normalize(
        2,
        0,
        [
            (OrientedSmoothing::minimal(2, 0), poly("-q^-2")),
            (OrientedSmoothing::maximal(2, 0), poly("q^-1")),
        ],
    )
    .unwrap()
}

/// Four-strand element: the minimal smoothing, three smoothings of
/// rotation -1/2 and one of rotation +1/2.
pub fn p2() -> SkeinElement {
    let minimal = OrientedSmoothing::minimal(4, 0);
    let mut terms = vec![(minimal.clone(), poly("q^-1 - 2q"))];
    let basis = enumerate_smoothings(4, 0);
    let low: Vec<_> = basis
        .iter()
        .filter(|s| s.rotation_number() == Rational::new(-1, 2))
        .take(3)
        .cloned()
        .collect();
    let high = basis
        .iter()
        .find(|s| s.rotation_number() == Rational::new(1, 2))
        .cloned()
        .unwrap();
    for s in low {
        terms.push((s, poly("q^2")));
    }
    terms.push((high, poly("-q^3")));
    SkeinElement::normalize(4, 0, terms).unwrap()
}

/// Three-strand element on all five basis smoothings.
pub fn p3() -> SkeinElement {
    SkeinElement::normalize(
        3,
        0,
        [
            (OrientedSmoothing::minimal(3, 0), poly("q^-2 - 2 + 3q^2 - 2q^4")),
            (smoothing(3, 0, &[(0, 1), (2, 5), (4, 3)]), poly("-q^3 + q^5")),
            (smoothing(3, 0, &[(0, 3), (2, 1), (4, 5)]), poly("q - q^3 + q^5")),
            (smoothing(3, 0, &[(0, 5), (2, 3), (4, 1)]), poly("-q^3 + q^5")),
            (OrientedSmoothing::maximal(3, 0), poly("q^4 - q^6")),
        ],
    )
    .unwrap()
}

/// The closure of `p3` by the negative curl at slots 0, 1.
pub fn p3_closed() -> SkeinElement {
    SkeinElement::normalize(
        2,
        0,
        [
            (OrientedSmoothing::minimal(2, 0), poly("q^-3 - q^-1 + 2q - q^3")),
            (OrientedSmoothing::maximal(2, 0), poly("-q^2 + q^4")),
        ],
    )
    .unwrap()
}
