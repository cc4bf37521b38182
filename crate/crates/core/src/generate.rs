//! Seeded random generators for diagrams, smoothings and tangles.
//!
//! Type-A diagrams are grown as random composition trees of basic diagrams,
//! so every generated diagram is of type A by construction. Tangles are
//! 1-crossing tangles plugged into such diagrams.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::planar::{basic_binary, basic_unary, radial, DiscSpec, PlanarArcDiagram, Recipe};
use crate::smoothing::{enumerate_smoothings, OrientedSmoothing};
use crate::tangle::{CrossingSign, TangleDiagram};

pub type SeededRng = ChaCha8Rng;

pub fn seeded(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_parity(rng: &mut impl Rng) -> u8 {
    rng.gen_range(0..2)
}

/// Uniformly chosen loop-free smoothing.
pub fn random_smoothing(rng: &mut impl Rng, k: usize, in_parity: u8) -> OrientedSmoothing {
    enumerate_smoothings(k, in_parity)
        .choose(rng)
        .expect("at least one smoothing")
        .clone()
}

/// Random input discs: `d` discs with `k_i >= 1` and `sum 2k_i <= max_slots`.
pub fn random_input_specs(rng: &mut impl Rng, d: usize, max_slots: usize) -> Vec<DiscSpec> {
    assert!(2 * d <= max_slots, "not enough room for {d} discs");
    let mut ks = vec![1usize; d];
    let budget = max_slots / 2 - d;
    let extra = rng.gen_range(0..=budget);
    for _ in 0..extra {
        let i = rng.gen_range(0..d);
        ks[i] += 1;
    }
    ks.into_iter()
        .map(|k| DiscSpec::new(2 * k, random_parity(rng)))
        .collect()
}

/// Basic unary diagram on a disc of shape `spec`, random closing slots.
pub fn random_basic_unary(rng: &mut impl Rng, spec: DiscSpec) -> PlanarArcDiagram {
    let j = rng.gen_range(0..spec.slots);
    basic_unary(spec.strands(), j, spec.parity).expect("disc has at least 4 slots")
}

/// Basic binary diagram joining random compatible slots of two discs.
pub fn random_basic_binary(rng: &mut impl Rng, first: DiscSpec, second: DiscSpec) -> PlanarArcDiagram {
    let a = rng.gen_range(0..first.slots);
    // slot b of the second disc must have the opposite role to slot a
    let leaves_first = a % 2 != first.parity as usize;
    let b_class = if leaves_first {
        second.parity as usize
    } else {
        1 - second.parity as usize
    };
    let b = 2 * rng.gen_range(0..second.strands()) + b_class;
    basic_binary(first.strands(), first.parity, a, second.strands(), second.parity, b)
        .expect("compatible slots")
}

/// A random composition tree of basic diagrams over the given inputs whose
/// output has between 1 and `max_out_strands` strands.
pub fn random_type_a_recipe(rng: &mut impl Rng, inputs: &[DiscSpec], max_out_strands: usize) -> Recipe {
    assert!(!inputs.is_empty() && max_out_strands >= 1);
    let mut pool: Vec<(Recipe, DiscSpec)> = inputs
        .iter()
        .enumerate()
        .map(|(i, s)| (Recipe::Input(i), *s))
        .collect();
    loop {
        let closable: Vec<usize> = (0..pool.len()).filter(|&i| pool[i].1.strands() >= 2).collect();
        let must_close = pool.len() == 1 && pool[0].1.strands() > max_out_strands;
        let close = must_close || (!closable.is_empty() && rng.gen_bool(0.3));
        if close && !closable.is_empty() {
            let i = *closable.choose(rng).unwrap();
            let (r, spec) = pool.remove(i);
            let op = random_basic_unary(rng, spec);
            let out = op.out();
            pool.insert(i, (Recipe::Apply { op, args: vec![r] }, out));
        } else if pool.len() > 1 {
            let i = rng.gen_range(0..pool.len());
            let (r1, s1) = pool.remove(i);
            let j = rng.gen_range(0..pool.len());
            let (r2, s2) = pool.remove(j);
            let op = random_basic_binary(rng, s1, s2);
            let out = op.out();
            pool.push((Recipe::Apply { op, args: vec![r1, r2] }, out));
        } else {
            break;
        }
    }
    let (root, spec) = pool.pop().unwrap();
    let shift = rng.gen_range(0..spec.slots);
    match root {
        Recipe::Apply { op, args } => Recipe::Apply {
            op: op.rotate_output(shift),
            args,
        },
        leaf => Recipe::Apply {
            op: radial(spec.strands(), spec.parity, shift),
            args: vec![leaf],
        },
    }
}

/// Random type-A diagram with the given input discs.
pub fn random_type_a(rng: &mut impl Rng, inputs: &[DiscSpec], max_out_strands: usize) -> PlanarArcDiagram {
    random_type_a_recipe(rng, inputs, max_out_strands)
        .evaluate(inputs)
        .expect("recipes of basic diagrams compose")
}

pub fn random_sign(rng: &mut impl Rng) -> CrossingSign {
    if rng.gen_bool(0.5) {
        CrossingSign::Positive
    } else {
        CrossingSign::Negative
    }
}

/// Non-split alternating tangle built from `n` 1-crossing tangles inside a
/// random type-A diagram with at most `max_k` output strands.
pub fn random_grammar_tangle(rng: &mut impl Rng, n: usize, max_k: usize) -> TangleDiagram {
    let parities: Vec<u8> = (0..n).map(|_| random_parity(rng)).collect();
    let specs: Vec<DiscSpec> = parities.iter().map(|&p| DiscSpec::new(4, p)).collect();
    let d = random_type_a(rng, &specs, max_k);
    let pieces: Vec<TangleDiagram> = parities
        .iter()
        .map(|&p| TangleDiagram::one_crossing(Some(random_sign(rng)), p))
        .collect();
    TangleDiagram::compose(&d, &pieces).expect("grammar tangles glue")
}
