//! Acceptance run: one PASS/FAIL line per criterion with its time budget.
//! Runs as a plain binary so the lines are always printed.

mod common;

use std::cell::RefCell;
use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::*;
use skein::planar::basic_unary;
use skein::verify;
use skein::{enumerate_smoothings, LaurentPoly, OrientedSmoothing, Rational, SkeinElement, TangleDiagram};

const SEED: u64 = 7;

type Outcome = Result<String, String>;
type Criterion<'a> = (usize, &'static str, Duration, Box<dyn Fn() -> Outcome + 'a>);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn suite(report: verify::SuiteReport) -> Outcome {
    if report.all_passed() {
        Ok(format!("{}/{} exact", report.passed, report.cases))
    } else {
        Err(report.to_string())
    }
}

fn fixture(name: &str) -> TangleDiagram {
    let path = format!("{}/tests/fixtures/{name}.tangle", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(&path).unwrap().parse().unwrap()
}

fn fixtures_exact() -> Outcome {
    let j = fixture("negative_crossing").jones().map_err(|e| e.to_string())?;
    ensure(j == p1(), || format!("negative crossing gives {j}"))?;
    let (min, max) = (OrientedSmoothing::minimal(2, 0), OrientedSmoothing::maximal(2, 0));
    ensure(
        min.rotation_number() == Rational::new(-1, 2) && max.rotation_number() == Rational::new(1, 2),
        || "rotation numbers of the 2-strand smoothings".into(),
    )?;
    ensure(p2().is_alternating_element(false), || format!("P2 not alternating: {}", p2()))?;
    ensure(p3().is_alternating_element(false), || format!("P3 not alternating: {}", p3()))?;
    let u = basic_unary(3, 0, 0).map_err(|e| e.to_string())?;
    let closed = SkeinElement::apply_operator(&u, &[&p3()]).map_err(|e| e.to_string())?;
    ensure(closed == p3_closed(), || format!("closure of P3 gives {closed}"))?;
    Ok("P1, P2, P3 and C(P3) exact".into())
}

fn golden(name: &str) -> (LaurentPoly, LaurentPoly) {
    let path = format!("{}/tests/golden/{name}.json", env!("CARGO_MANIFEST_DIR"));
    let doc: BTreeMap<String, LaurentPoly> = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    (doc["jhat"].clone(), doc["j"].clone())
}

fn links() -> Outcome {
    let loop_value = LaurentPoly::loop_value();
    for name in ["unknot", "kinked_unknot"] {
        let (jhat, _) = fixture(name).evaluate_link().map_err(|e| format!("{name}: {e}"))?;
        ensure(jhat == loop_value, || format!("{name}: {jhat}"))?;
    }
    for name in ["hopf", "trefoil", "figure_eight"] {
        let (jhat, j) = fixture(name).evaluate_link().map_err(|e| format!("{name}: {e}"))?;
        ensure((jhat.clone(), j.clone()) == golden(name), || format!("{name}: {jhat} / {j}"))?;
        ensure(j.is_alternating(), || format!("{name}: J = {j} not alternating"))?;
    }
    Ok("unknot, Hopf, trefoil, figure-eight".into())
}

fn catalan() -> Outcome {
    let sizes: Vec<usize> = (1..=5)
        .map(|k| enumerate_smoothings(k, 0).len().min(enumerate_smoothings(k, 1).len()))
        .collect();
    ensure(sizes == [1, 2, 5, 14, 42], || format!("sizes {sizes:?}"))?;
    Ok(format!("{sizes:?}"))
}

fn main() -> ExitCode {
    // criterion 6 draws its pool from criterion 5's outputs
    let pool = RefCell::new(Vec::new());
    let criteria: Vec<Criterion> = vec![
        (1, "fixture exactness", Duration::from_secs(1), Box::new(fixtures_exact)),
        (
            2,
            "rotation additivity",
            Duration::from_secs(30),
            Box::new(|| suite(verify::rotation_additivity(SEED, 1000, 16))),
        ),
        (
            3,
            "basic operator constants",
            Duration::from_secs(5),
            Box::new(|| suite(verify::basic_constants(5))),
        ),
        (
            4,
            "morphism property",
            Duration::from_secs(120),
            Box::new(|| suite(verify::morphism(SEED, 200, 6))),
        ),
        (
            5,
            "grammar tangles coherently alternating",
            Duration::from_secs(600),
            Box::new(|| {
                let (report, elements) = verify::theorem2(SEED, 1200, 6, 4);
                *pool.borrow_mut() = elements;
                suite(report)
            }),
        ),
        (
            6,
            "basic operators preserve coherence",
            Duration::from_secs(600),
            Box::new(|| suite(verify::theorem1(SEED, 100, &pool.borrow(), 5))),
        ),
        (7, "link values", Duration::from_secs(10), Box::new(links)),
        (8, "basis sizes", Duration::from_secs(1), Box::new(catalan)),
        (
            9,
            "decomposition soundness",
            Duration::from_secs(300),
            Box::new(|| suite(verify::decompose_soundness(SEED, 1000, 3, 12))),
        ),
    ];
    let mut failed = 0;
    for (n, name, budget, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let (verdict, detail) = match outcome {
            Ok(detail) if elapsed <= budget => ("PASS", detail),
            Ok(detail) => ("FAIL", format!("{detail}, over the {budget:?} budget")),
            Err(detail) => ("FAIL", detail),
        };
        if verdict == "FAIL" {
            failed += 1;
        }
        println!("criterion {n} {verdict}: {name} ({elapsed:.2?}) {detail}");
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
