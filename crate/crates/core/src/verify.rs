//! Seeded verification suites. Each returns a report with the number of
//! cases, the number that held exactly, and a dump of every counterexample.

use std::fmt;

use rand::Rng;

use crate::generate::{
    random_basic_binary, random_basic_unary, random_grammar_tangle, random_input_specs, random_smoothing,
    random_type_a, random_type_a_recipe, seeded,
};
use crate::planar::{basic_binary, basic_unary, decompose_to_basic, unary_sign, DiscSpec, PlanarArcDiagram};
use crate::skein::SkeinElement;
use crate::smoothing::{enumerate_smoothings, OrientedSmoothing, Rational, RegionSign};
use crate::tangle::TangleDiagram;

#[derive(Clone, Debug, Default)]
pub struct SuiteReport {
    pub name: String,
    pub cases: usize,
    pub passed: usize,
    pub failures: Vec<String>,
}

impl SuiteReport {
    fn new(name: &str) -> Self {
        SuiteReport {
            name: name.to_string(),
            ..Default::default()
        }
    }

    fn record(&mut self, outcome: Result<(), String>) {
        self.cases += 1;
        match outcome {
            Ok(()) => self.passed += 1,
            Err(dump) => self.failures.push(dump),
        }
    }

    pub fn all_passed(&self) -> bool {
        self.cases > 0 && self.passed == self.cases
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}/{} exact", self.name, self.passed, self.cases)?;
        for dump in &self.failures {
            write!(f, "\n  counterexample: {dump}")?;
        }
        Ok(())
    }
}

fn json<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string(value).unwrap_or_else(|e| format!("<unserializable: {e}>"))
}

/// Enumerate every tuple of loop-free smoothings for the given discs.
pub fn basis_tuples(inputs: &[DiscSpec]) -> Vec<Vec<OrientedSmoothing>> {
    let mut tuples = vec![Vec::new()];
    for spec in inputs {
        let basis = enumerate_smoothings(spec.strands(), spec.parity);
        tuples = tuples
            .into_iter()
            .flat_map(|t| {
                basis.iter().map(move |s| {
                    let mut t = t.clone();
                    t.push(s.clone());
                    t
                })
            })
            .collect();
    }
    tuples
}

/// `R(D(σ)) = R_D + Σ R(σ_i)` on random type-A diagrams whose input discs
/// carry at most `max_slots` boundary points in total.
pub fn rotation_additivity(seed: u64, cases: usize, max_slots: usize) -> SuiteReport {
    let mut report = SuiteReport::new("rotation-additivity");
    let mut rng = seeded(seed);
    for _ in 0..cases {
        let d = rng.gen_range(1..=(max_slots / 2).min(4));
        let specs = random_input_specs(&mut rng, d, max_slots);
        let total: usize = specs.iter().map(|s| s.strands()).sum();
        let diagram = random_type_a(&mut rng, &specs, total);
        let sigmas: Vec<_> = specs
            .iter()
            .map(|s| random_smoothing(&mut rng, s.strands(), s.parity))
            .collect();
        report.record(check_additivity(&diagram, &sigmas));
    }
    report
}

pub fn check_additivity(d: &PlanarArcDiagram, sigmas: &[OrientedSmoothing]) -> Result<(), String> {
    let dump = || format!("diagram {} smoothings {}", json(d), json(&sigmas));
    let r_d = d.rotation_associated_number().map_err(|e| format!("{e}: {}", dump()))?;
    let result = d.apply(sigmas).map_err(|e| format!("{e}: {}", dump()))?;
    let expected = r_d + sigmas.iter().map(|s| s.rotation_number()).sum::<Rational>();
    if !(r_d * Rational::from_integer(2)).is_integer() {
        return Err(format!("R_D = {r_d} is not a half-integer: {}", dump()));
    }
    if result.rotation_number() != expected {
        return Err(format!(
            "R(apply) = {} but R_D + sum = {}: {}",
            result.rotation_number(),
            expected,
            dump()
        ));
    }
    Ok(())
}

/// `R_D` of every basic diagram whose input discs have at most `max_k` strands.
pub fn basic_constants(max_k: usize) -> SuiteReport {
    let mut report = SuiteReport::new("basic-constants");
    for k in 2..=max_k {
        for p in 0..2u8 {
            for j in 0..2 * k {
                let u = basic_unary(k, j, p).expect("legal unary");
                let expected = match unary_sign(j, p) {
                    RegionSign::Positive => Rational::new(1, 2),
                    RegionSign::Negative => Rational::new(-1, 2),
                };
                report.record(match u.rotation_associated_number() {
                    Ok(r) if r == expected => Ok(()),
                    Ok(r) => Err(format!("unary R_D = {r}, expected {expected}: {}", json(&u))),
                    Err(e) => Err(format!("{e}: {}", json(&u))),
                });
            }
        }
    }
    for k1 in 1..=max_k {
        for k2 in 1..=max_k {
            for p1 in 0..2u8 {
                for p2 in 0..2u8 {
                    for a in 0..2 * k1 {
                        for b in 0..2 * k2 {
                            let Ok(d) = basic_binary(k1, p1, a, k2, p2, b) else {
                                continue;
                            };
                            report.record(match d.rotation_associated_number() {
                                Ok(r) if r == Rational::from_integer(0) => Ok(()),
                                Ok(r) => Err(format!("binary R_D = {r}: {}", json(&d))),
                                Err(e) => Err(format!("{e}: {}", json(&d))),
                            });
                        }
                    }
                }
            }
        }
    }
    report
}

/// `jones(D(T_1, ..)) = D(jones(T_1), ..)` on random grammar tangles with
/// at most `max_crossings` crossings in total.
pub fn morphism(seed: u64, cases: usize, max_crossings: usize) -> SuiteReport {
    let mut report = SuiteReport::new("morphism");
    let mut rng = seeded(seed);
    for _ in 0..cases {
        let d = rng.gen_range(1..=3.min(max_crossings));
        // split the crossing budget, at least one per tangle
        let total = rng.gen_range(d..=max_crossings);
        let mut counts = vec![1usize; d];
        for _ in d..total {
            let i = rng.gen_range(0..d);
            counts[i] += 1;
        }
        let tangles: Vec<TangleDiagram> = counts
            .iter()
            .map(|&n| random_grammar_tangle(&mut rng, n, 3))
            .collect();
        let specs: Vec<DiscSpec> = tangles
            .iter()
            .map(|t| {
                let g = t.gravity_orient().expect("grammar tangles are alternating");
                DiscSpec::new(t.boundary().len(), g.in_parity)
            })
            .collect();
        let diagram = random_type_a(&mut rng, &specs, 4);
        report.record(check_morphism(&diagram, &tangles));
    }
    report
}

pub fn check_morphism(d: &PlanarArcDiagram, tangles: &[TangleDiagram]) -> Result<(), String> {
    let dump = || {
        let texts: Vec<String> = tangles.iter().map(|t| t.to_string()).collect();
        format!("diagram {} tangles {:?}", json(d), texts)
    };
    let glued = TangleDiagram::compose(d, tangles).map_err(|e| format!("{e}: {}", dump()))?;
    let lhs = glued.jones().map_err(|e| format!("{e}: {}", dump()))?;
    let values = tangles
        .iter()
        .map(|t| t.jones())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| format!("{e}: {}", dump()))?;
    let refs: Vec<&SkeinElement> = values.iter().collect();
    let rhs = SkeinElement::apply_operator(d, &refs).map_err(|e| format!("{e}: {}", dump()))?;
    if lhs != rhs {
        return Err(format!("jones(compose) = {lhs} but apply = {rhs}: {}", dump()));
    }
    Ok(())
}

/// Grammar tangles for the coherence suites: `cases` tangles cycling
/// through crossing counts `1..=max_crossings`, at most `max_k` strands.
pub fn grammar_corpus(seed: u64, cases: usize, max_crossings: usize, max_k: usize) -> Vec<TangleDiagram> {
    let mut rng = seeded(seed);
    (0..cases)
        .map(|i| random_grammar_tangle(&mut rng, 1 + i % max_crossings, max_k))
        .collect()
}

/// Every grammar tangle has a coherently alternating Jones invariant.
/// Also returns the invariants, which feed [`theorem1`].
pub fn theorem2(seed: u64, cases: usize, max_crossings: usize, max_k: usize) -> (SuiteReport, Vec<SkeinElement>) {
    let mut report = SuiteReport::new("theorem2");
    let mut elements = Vec::new();
    for t in grammar_corpus(seed, cases, max_crossings, max_k) {
        let outcome = match t.jones() {
            Err(e) => Err(format!("{e}: {t}")),
            Ok(j) => match j.coherence_report().failure {
                None => {
                    elements.push(j);
                    Ok(())
                }
                Some((depth, closure, why)) => Err(format!(
                    "closure at depth {depth} {} is not alternating ({why}); tangle:\n{t}",
                    json(&closure)
                )),
            },
        };
        report.record(outcome);
    }
    (report, elements)
}

/// Basic operators applied to coherently alternating elements give
/// coherently alternating elements. Pairs are drawn from `pool`; binary
/// composites are restricted to at most `max_out_k` output strands.
pub fn theorem1(seed: u64, pairs: usize, pool: &[SkeinElement], max_out_k: usize) -> SuiteReport {
    let mut report = SuiteReport::new("theorem1");
    let mut rng = seeded(seed);
    let candidates: Vec<(usize, usize)> = (0..pool.len())
        .flat_map(|i| (0..pool.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| pool[i].k() + pool[j].k() - 1 <= max_out_k)
        .collect();
    if candidates.is_empty() {
        return report;
    }
    for _ in 0..pairs {
        let (i, j) = candidates[rng.gen_range(0..candidates.len())];
        let (p, q) = (&pool[i], &pool[j]);
        let spec = |e: &SkeinElement| DiscSpec::new(2 * e.k(), e.in_parity());
        let op = random_basic_binary(&mut rng, spec(p), spec(q));
        let mut outcome = check_coherent_image(&op, &[p, q]);
        if outcome.is_ok() && p.k() >= 2 {
            let u = random_basic_unary(&mut rng, spec(p));
            outcome = check_coherent_image(&u, &[p]);
        }
        report.record(outcome);
    }
    report
}

fn check_coherent_image(op: &PlanarArcDiagram, inputs: &[&SkeinElement]) -> Result<(), String> {
    let dump = || format!("operator {} inputs {}", json(op), json(&inputs));
    let image = SkeinElement::apply_operator(op, inputs).map_err(|e| format!("{e}: {}", dump()))?;
    match image.coherence_report().failure {
        None => Ok(()),
        Some((depth, closure, why)) => Err(format!(
            "closure at depth {depth} {} is not alternating ({why}): {}",
            json(&closure),
            dump()
        )),
    }
}

/// Recipes from `decompose_to_basic` act like the diagram on every basis
/// tuple. Diagrams have at most `max_d` inputs carrying at most
/// `max_slots` boundary points in total.
pub fn decompose_soundness(seed: u64, cases: usize, max_d: usize, max_slots: usize) -> SuiteReport {
    let mut report = SuiteReport::new("decompose");
    let mut rng = seeded(seed);
    for _ in 0..cases {
        let d = rng.gen_range(1..=max_d.min(max_slots / 2));
        let specs = random_input_specs(&mut rng, d, max_slots);
        let total: usize = specs.iter().map(|s| s.strands()).sum();
        let diagram = random_type_a_recipe(&mut rng, &specs, total)
            .evaluate(&specs)
            .expect("generated recipe composes");
        report.record(check_decomposition(&diagram));
    }
    report
}

pub fn check_decomposition(d: &PlanarArcDiagram) -> Result<(), String> {
    let recipe = decompose_to_basic(d).map_err(|e| format!("{e}: {}", json(d)))?;
    if recipe.operations().iter().any(|op| op.input_count() > 2) {
        return Err(format!("non-basic operation in recipe {recipe:?} for {}", json(d)));
    }
    for tuple in basis_tuples(d.inputs()) {
        let direct = d.apply(&tuple).map_err(|e| format!("{e}: {}", json(d)))?;
        let staged = recipe.apply(&tuple).map_err(|e| format!("{e}: {}", json(d)))?;
        if direct != staged {
            return Err(format!(
                "recipe gives {staged} but diagram gives {direct} on {}: {}",
                json(&tuple),
                json(d)
            ));
        }
    }
    Ok(())
}
