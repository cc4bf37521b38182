//! Radial, basic unary and basic binary diagrams.

use super::{DiscSpec, Endpoint, PlanarArcDiagram, PlanarError};
use crate::smoothing::RegionSign;

/// One input disc with `2k` slots wired straight out: output slot `m` meets
/// input slot `m + shift`.
pub fn radial(k: usize, in_parity: u8, shift: usize) -> PlanarArcDiagram {
    let n = 2 * k;
    let id = PlanarArcDiagram::from_parts(
        DiscSpec::new(n, in_parity),
        vec![DiscSpec::new(n, in_parity)],
        (0..n).map(|j| (Endpoint::out(j), Endpoint::input(0, j))),
        0,
        0,
    );
    id.rotate_output(shift)
}

/// Sign of the curl of a basic unary diagram on a disc with in-point parity
/// `in_parity`, closing slots `j` and `j + 1`.
pub fn unary_sign(j: usize, in_parity: u8) -> RegionSign {
    if j % 2 == in_parity as usize {
        RegionSign::Negative
    } else {
        RegionSign::Positive
    }
}

/// Basic unary diagram: a `2k`-slot disc whose slots `j`, `j + 1` are joined
/// by a curl; output slot `m` meets input slot `j + 2 + m`.
pub fn basic_unary(k: usize, j: usize, in_parity: u8) -> Result<PlanarArcDiagram, PlanarError> {
    if k < 2 {
        return Err(PlanarError::IllegalSlots(format!(
            "a unary closure needs at least 4 slots, got {}",
            2 * k
        )));
    }
    let n = 2 * k;
    if j >= n {
        return Err(PlanarError::IllegalSlots(format!("slot {j} out of range for {n} slots")));
    }
    let mut arcs = vec![(Endpoint::input(0, j), Endpoint::input(0, (j + 1) % n))];
    arcs.extend((0..n - 2).map(|m| (Endpoint::out(m), Endpoint::input(0, (j + 2 + m) % n))));
    let out_parity = ((in_parity as usize + j) % 2) as u8;
    PlanarArcDiagram::new(
        DiscSpec::new(n - 2, out_parity),
        vec![DiscSpec::new(n, in_parity)],
        arcs,
        0,
    )
}

/// Basic binary diagram: slot `a` of the first disc joined to slot `b` of the
/// second. Output slots run over the first disc from `a + 1` to `a - 1`, then
/// over the second from `b + 1` to `b - 1`.
pub fn basic_binary(
    k1: usize,
    p1: u8,
    a: usize,
    k2: usize,
    p2: u8,
    b: usize,
) -> Result<PlanarArcDiagram, PlanarError> {
    binary_no_curl(k1, p1, a, k2, p2, b, 1)
}

/// Two-disc diagram without curls and with `l` parallel interconnecting arcs
/// `(a + t) - (b - t)`, `t < l`. Output slots run over the first disc from
/// `a + l` to `a - 1`, then over the second from `b + 1` to `b - l`.
pub fn binary_no_curl(
    k1: usize,
    p1: u8,
    a: usize,
    k2: usize,
    p2: u8,
    b: usize,
    l: usize,
) -> Result<PlanarArcDiagram, PlanarError> {
    let (n1, n2) = (2 * k1, 2 * k2);
    if l == 0 || l > n1.min(n2) {
        return Err(PlanarError::IllegalSlots(format!(
            "cannot run {l} arcs between discs of {n1} and {n2} slots"
        )));
    }
    if a >= n1 || b >= n2 {
        return Err(PlanarError::IllegalSlots(format!("slots ({a}, {b}) out of range")));
    }
    // arc leaves the first disc at an out-point iff it reaches the second at an in-point
    let leaves_first = a % 2 != p1 as usize;
    let enters_second = b % 2 == p2 as usize;
    if leaves_first != enters_second {
        return Err(PlanarError::IllegalSlots(format!(
            "slots {a} and {b} cannot be joined consistently with the orientations"
        )));
    }
    let mut arcs: Vec<_> = (0..l)
        .map(|t| (Endpoint::input(0, (a + t) % n1), Endpoint::input(1, (b + n2 - t) % n2)))
        .collect();
    let mut m = 0;
    for s in l..n1 {
        arcs.push((Endpoint::out(m), Endpoint::input(0, (a + s) % n1)));
        m += 1;
    }
    for s in 1..=n2 - l {
        arcs.push((Endpoint::out(m), Endpoint::input(1, (b + s) % n2)));
        m += 1;
    }
    let out_parity = ((a + l + p1 as usize) % 2) as u8;
    PlanarArcDiagram::new(
        DiscSpec::new(m, out_parity),
        vec![DiscSpec::new(n1, p1), DiscSpec::new(n2, p2)],
        arcs,
        0,
    )
}
