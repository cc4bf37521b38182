//! Splitting a type-A diagram into basic unary and binary pieces.
//!
//! Binary pieces are peeled first: any arc between two different input discs
//! is the neighbourhood of a basic binary diagram, and contracting it merges
//! the two discs. With one disc left, curls on adjacent slots are peeled one
//! at a time. What remains is a radial diagram, which is folded into the
//! outermost peeled piece as a renumbering of its output slots.

use std::fmt;

use super::basic::{basic_binary, basic_unary, radial};
use super::{Disc, DiscSpec, Endpoint, PlanarArcDiagram, PlanarError};
use crate::smoothing::OrientedSmoothing;

/// Tree of compositions. `Input(i)` stands for input disc `i` of the
/// decomposed diagram.
#[derive(Clone, PartialEq, Eq)]
pub enum Recipe {
    Input(usize),
    Apply { op: PlanarArcDiagram, args: Vec<Recipe> },
}

impl Recipe {
    /// Every operation in the tree, outermost first.
    pub fn operations(&self) -> Vec<&PlanarArcDiagram> {
        let mut out = Vec::new();
        let mut stack = vec![self];
        while let Some(r) = stack.pop() {
            if let Recipe::Apply { op, args } = r {
                out.push(op);
                stack.extend(args.iter().rev());
            }
        }
        out
    }

    /// Act on smoothings operation by operation, innermost first.
    pub fn apply(&self, smoothings: &[OrientedSmoothing]) -> Result<OrientedSmoothing, PlanarError> {
        match self {
            Recipe::Input(i) => smoothings.get(*i).cloned().ok_or(PlanarError::NoSuchInput(*i)),
            Recipe::Apply { op, args } => {
                let inner = args
                    .iter()
                    .map(|a| a.apply(smoothings))
                    .collect::<Result<Vec<_>, _>>()?;
                op.apply(&inner)
            }
        }
    }

    /// Compose the tree back into one diagram with inputs in label order.
    pub fn evaluate(&self, inputs: &[DiscSpec]) -> Result<PlanarArcDiagram, PlanarError> {
        let (d, leaves) = self.evaluate_inner(inputs)?;
        let mut order = vec![0; leaves.len()];
        for (pos, &label) in leaves.iter().enumerate() {
            if label >= order.len() {
                return Err(PlanarError::NoSuchInput(label));
            }
            order[label] = pos;
        }
        Ok(d.permute_inputs(&order))
    }

    fn evaluate_inner(&self, inputs: &[DiscSpec]) -> Result<(PlanarArcDiagram, Vec<usize>), PlanarError> {
        match self {
            Recipe::Input(i) => {
                let spec = *inputs.get(*i).ok_or(PlanarError::NoSuchInput(*i))?;
                Ok((radial(spec.strands(), spec.parity, 0), vec![*i]))
            }
            Recipe::Apply { op, args } => {
                if args.len() != op.input_count() {
                    return Err(PlanarError::Mismatch("recipe arity".into()));
                }
                let mut acc = op.clone();
                let mut leaves = Vec::new();
                let parts = args
                    .iter()
                    .map(|a| a.evaluate_inner(inputs))
                    .collect::<Result<Vec<_>, _>>()?;
                for (j, (sub, _)) in parts.iter().enumerate().rev() {
                    acc = acc.compose(j, sub)?;
                }
                for (_, l) in parts {
                    leaves.extend(l);
                }
                Ok((acc, leaves))
            }
        }
    }
}

impl fmt::Debug for Recipe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Recipe::Input(i) => write!(f, "in{}", i + 1),
            Recipe::Apply { op, args } => {
                write!(f, "{op:?}(")?;
                for (n, a) in args.iter().enumerate() {
                    if n > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{a:?}")?;
                }
                write!(f, ")")
            }
        }
    }
}

/// Express a type-A diagram as a composition of basic diagrams.
///
/// Every operation in the result is a basic unary or binary diagram, possibly
/// with its output slots renumbered; the only exception is a bare radial
/// diagram with a nontrivial shift, which is returned as a single radial
/// operation.
pub fn decompose_to_basic(d: &PlanarArcDiagram) -> Result<Recipe, PlanarError> {
    if let Some(why) = d.type_a_violation() {
        return Err(PlanarError::NotTypeA(why));
    }
    let leaves = (0..d.input_count()).map(Recipe::Input).collect();
    peel(d.clone(), leaves)
}

fn peel(d: PlanarArcDiagram, mut leaves: Vec<Recipe>) -> Result<Recipe, PlanarError> {
    if let Some(&(x, y)) = d.arcs.iter().find(|(a, b)| {
        matches!((a.disc, b.disc), (Disc::In(i), Disc::In(j)) if i != j)
    }) {
        let (Disc::In(i), Disc::In(j)) = (x.disc, y.disc) else {
            unreachable!()
        };
        // arcs are stored smaller endpoint first, so i < j
        let (si, sj) = (d.inputs[i], d.inputs[j]);
        let op = basic_binary(si.strands(), si.parity, x.slot, sj.strands(), sj.parity, y.slot)?;
        let merged = merge_discs(&d, i, x.slot, j, y.slot, op.out());
        let right = leaves.remove(j);
        let left = std::mem::replace(&mut leaves[i], Recipe::Input(usize::MAX));
        leaves[i] = Recipe::Apply {
            op,
            args: vec![left, right],
        };
        return peel(merged, leaves);
    }
    debug_assert_eq!(leaves.len(), 1);
    let mut leaf = leaves.pop().expect("one disc left");
    let mut d = d;
    let mut chain = Vec::new();
    while let Some(j) = first_adjacent_curl(&d) {
        let spec = d.inputs[0];
        let op = basic_unary(spec.strands(), j, spec.parity)?;
        d = strip_curl(&d, j, op.out());
        chain.push(op);
    }
    // d is now radial: output slot m meets input slot m + shift
    let shift = d
        .arcs
        .iter()
        .find(|(a, b)| a.disc == Disc::Out && b.slot == 0 && b.disc == Disc::In(0))
        .map(|(a, _)| (d.out.slots - a.slot) % d.out.slots)
        .unwrap_or(0);
    let rest = radial(d.out.strands(), d.inputs[0].parity, shift);
    debug_assert_eq!(rest, d);
    for op in chain {
        leaf = Recipe::Apply { op, args: vec![leaf] };
    }
    if shift == 0 {
        return Ok(leaf);
    }
    Ok(match leaf {
        Recipe::Apply { op, args } => Recipe::Apply {
            op: op.rotate_output(shift),
            args,
        },
        input => Recipe::Apply {
            op: rest,
            args: vec![input],
        },
    })
}

/// Contract the arc `(i, a) - (j, b)`; the merged disc takes index `i`.
fn merge_discs(
    d: &PlanarArcDiagram,
    i: usize,
    a: usize,
    j: usize,
    b: usize,
    merged: DiscSpec,
) -> PlanarArcDiagram {
    let (ni, nj) = (d.inputs[i].slots, d.inputs[j].slots);
    let map = |e: Endpoint| match e.disc {
        Disc::In(x) if x == i => Endpoint::input(i, (e.slot + ni - a - 1) % ni),
        Disc::In(x) if x == j => Endpoint::input(i, ni - 1 + (e.slot + nj - b - 1) % nj),
        Disc::In(x) if x > j => Endpoint::input(x - 1, e.slot),
        _ => e,
    };
    let mut inputs = d.inputs.clone();
    inputs.remove(j);
    inputs[i] = merged;
    let drop = (Endpoint::input(i, a), Endpoint::input(j, b));
    PlanarArcDiagram::from_parts(
        d.out,
        inputs,
        d.arcs.iter().filter(|&&arc| arc != drop).map(|&(p, q)| (map(p), map(q))),
        d.pos_loops,
        d.neg_loops,
    )
}

fn first_adjacent_curl(d: &PlanarArcDiagram) -> Option<usize> {
    let n = d.inputs[0].slots;
    if n < 4 {
        return None;
    }
    let partner = d.partner_map();
    (0..n).find(|&j| partner[&Endpoint::input(0, j)] == Endpoint::input(0, (j + 1) % n))
}

/// Remove the curl at `j, j + 1`; new slot `m` is old slot `j + 2 + m`.
fn strip_curl(d: &PlanarArcDiagram, j: usize, reduced: DiscSpec) -> PlanarArcDiagram {
    let n = d.inputs[0].slots;
    let map = |e: Endpoint| match e.disc {
        Disc::In(_) => Endpoint::input(0, (e.slot + 2 * n - j - 2) % n),
        Disc::Out => e,
    };
    let curl = |e: Endpoint| e.disc == Disc::In(0) && (e.slot == j || e.slot == (j + 1) % n);
    PlanarArcDiagram::from_parts(
        d.out,
        vec![reduced],
        d.arcs.iter().filter(|(p, _)| !curl(*p)).map(|&(p, q)| (map(p), map(q))),
        d.pos_loops,
        d.neg_loops,
    )
}
