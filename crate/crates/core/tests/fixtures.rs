mod common;

use common::*;
use skein::planar::basic_unary;
use skein::{OrientedSmoothing, Rational, SkeinElement, TangleDiagram};

#[test]
fn negative_crossing_value() {
    let text = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/tests/fixtures/negative_crossing.tangle")).unwrap();
    let t: TangleDiagram = text.parse().unwrap();
    let j = t.jones().unwrap();
    assert_eq!(j, p1());
    assert_eq!(OrientedSmoothing::minimal(2, 0).rotation_number(), Rational::new(-1, 2));
    assert_eq!(OrientedSmoothing::maximal(2, 0).rotation_number(), Rational::new(1, 2));
    assert!(j.is_coherently_alternating());
}

#[test]
fn p2_is_alternating() {
    assert!(p2().is_alternating_element(false), "{}", p2());
    assert_eq!(p2().len(), 5);
}

#[test]
fn p3_is_coherent_and_closes_as_expected() {
    let p = p3();
    assert!(p.is_alternating_element(true), "{p}");
    let report = p.coherence_report();
    assert!(report.failure.is_none(), "{report:?}");
    let u = basic_unary(3, 0, 0).unwrap();
    let closed = SkeinElement::apply_operator(&u, &[&p]).unwrap();
    assert_eq!(closed, p3_closed());
    assert_eq!(p.close_adjacent(0).unwrap(), p3_closed());
}

#[test]
fn p3_json_fixture_matches() {
    let text = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/tests/fixtures/p3.json")).unwrap();
    let e: SkeinElement = serde_json::from_str(&text).unwrap();
    assert_eq!(e, p3());
}
