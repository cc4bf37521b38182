//! Link values locked against the brute-force oracle.
//!
//! Golden files hold `{"jhat": {..}, "j": {..}}` maps from exponent to
//! coefficient. Set `SKEIN_BLESS=1` to rewrite them from the oracle.

mod oracle;

use std::collections::BTreeMap;
use std::path::PathBuf;

use oracle::*;
use skein::{LaurentPoly, TangleDiagram};

fn dir(sub: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests").join(sub)
}

fn oracle_values(pd: &[[usize; 4]]) -> (Poly, Poly) {
    let jhat = unnormalized_jones(pd, 0);
    let j = divide_by_loop(&jhat);
    (jhat, j)
}

fn golden(name: &str, pd: &[[usize; 4]]) -> (Poly, Poly) {
    let path = dir("golden").join(format!("{name}.json"));
    let (jhat, j) = oracle_values(pd);
    if std::env::var_os("SKEIN_BLESS").is_some() {
        let mut doc = BTreeMap::new();
        doc.insert("jhat", jhat.clone());
        doc.insert("j", j.clone());
        std::fs::write(&path, serde_json::to_string_pretty(&doc).unwrap() + "\n").unwrap();
    }
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    let mut doc: BTreeMap<String, Poly> = serde_json::from_str(&text).unwrap();
    let stored = (doc.remove("jhat").unwrap(), doc.remove("j").unwrap());
    assert_eq!(stored, (jhat, j), "oracle disagrees with golden file {name}");
    stored
}

fn to_laurent(p: &Poly) -> LaurentPoly {
    LaurentPoly::from_terms(p.iter().map(|(&e, &c)| (c, e)))
}

fn library_values(name: &str) -> (LaurentPoly, LaurentPoly) {
    let text = std::fs::read_to_string(dir("fixtures").join(format!("{name}.tangle"))).unwrap();
    let t: TangleDiagram = text.parse().unwrap();
    t.evaluate_link().unwrap()
}

#[test]
fn links_match_golden_files() {
    for (name, pd) in [
        ("trefoil", &TREFOIL[..]),
        ("figure_eight", &FIGURE_EIGHT[..]),
        ("hopf", &HOPF[..]),
    ] {
        let (jhat, j) = golden(name, pd);
        let (lib_jhat, lib_j) = library_values(name);
        assert_eq!(lib_jhat, to_laurent(&jhat), "{name}");
        assert_eq!(lib_j, to_laurent(&j), "{name}");
        assert!(lib_j.is_alternating(), "{name}: {lib_j}");
    }
}

#[test]
fn unknots_give_the_loop_value() {
    for name in ["unknot", "kinked_unknot"] {
        let (jhat, j) = library_values(name);
        assert_eq!(jhat, LaurentPoly::loop_value(), "{name}");
        assert_eq!(j, LaurentPoly::one(), "{name}");
    }
}
