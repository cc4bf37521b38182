//! Operadic composition and the action on smoothings.

use std::collections::{BTreeMap, BTreeSet};

use super::regions::RegionGraph;
use super::{Disc, Endpoint, PlanarArcDiagram, PlanarError};
use crate::smoothing::{OrientedSmoothing, RegionSign};

/// A dart of the picture being glued: piece 0 is the host, piece `i + 1`
/// fills input disc `i`.
type Dart = (usize, Endpoint);

impl PlanarArcDiagram {
    /// Plug `inner` into input disc `i` (0-based): `self ∘_i inner`.
    ///
    /// Input discs of the result are those of `self` before `i`, then those of
    /// `inner`, then the rest of `self`. Strands closing up into loops are
    /// recorded with their orientation.
    pub fn compose(&self, i: usize, inner: &PlanarArcDiagram) -> Result<PlanarArcDiagram, PlanarError> {
        if i >= self.inputs.len() {
            return Err(PlanarError::NoSuchInput(i));
        }
        let identities: Vec<PlanarArcDiagram> = self
            .inputs
            .iter()
            .map(|s| super::radial(s.strands(), s.parity, 0))
            .collect();
        let plugs: Vec<&PlanarArcDiagram> = (0..self.inputs.len())
            .map(|j| if j == i { inner } else { &identities[j] })
            .collect();
        self.substitute(&plugs)
    }

    /// Fill every input disc at once. Gluing simultaneously keeps the host
    /// connected while loops are closed, so their orientation stays readable
    /// even when some intermediate partial composite would fall apart.
    pub fn substitute(&self, plugs: &[&PlanarArcDiagram]) -> Result<PlanarArcDiagram, PlanarError> {
        self.ensure_valid()?;
        if plugs.len() != self.inputs.len() {
            return Err(PlanarError::Mismatch(format!(
                "diagram has {} input discs, got {} diagrams",
                self.inputs.len(),
                plugs.len()
            )));
        }
        for (i, (hole, plug)) in self.inputs.iter().zip(plugs).enumerate() {
            plug.ensure_valid()?;
            if *hole != plug.out {
                return Err(PlanarError::Mismatch(format!(
                    "input disc {} has {} slots with parity {}, plugged diagram has {} slots with parity {}",
                    i + 1,
                    hole.slots,
                    hole.parity,
                    plug.out.slots,
                    plug.out.parity
                )));
            }
        }
        let pieces: Vec<&PlanarArcDiagram> = std::iter::once(self).chain(plugs.iter().copied()).collect();
        let mut offsets = Vec::with_capacity(plugs.len());
        let mut acc = 0;
        for p in plugs {
            offsets.push(acc);
            acc += p.inputs.len();
        }
        let partners: Vec<_> = pieces.iter().map(|p| p.partner_map()).collect();
        let partner = |(s, e): Dart| (s, partners[s][&e]);
        let glued = |(s, e): Dart| (s == 0) != (e.disc == Disc::Out);
        let across = |(s, e): Dart| match (s, e.disc) {
            (0, Disc::In(i)) => (i + 1, Endpoint::out(e.slot)),
            (_, _) => (0, Endpoint::input(s - 1, e.slot)),
        };
        let relabel = |(s, e): Dart| match e.disc {
            Disc::Out => e,
            Disc::In(j) => Endpoint::input(offsets[s - 1] + j, e.slot),
        };

        // faces of all pieces, numbered consecutively
        let mut face_of: BTreeMap<Dart, usize> = BTreeMap::new();
        let mut n_faces = 0;
        let mut outer_faces = Vec::new();
        for (side, piece) in pieces.iter().enumerate() {
            for face in piece.trace_faces() {
                if side == 0 && face.iter().any(|d| d.disc == Disc::Out) {
                    outer_faces.push(n_faces);
                }
                for d in face {
                    face_of.insert((side, d), n_faces);
                }
                n_faces += 1;
            }
        }
        let mut regions = RegionGraph::new(n_faces);
        for f in outer_faces {
            regions.mark_outer(f);
        }
        for (i, hole) in self.inputs.iter().enumerate() {
            let n = hole.slots;
            for g in 0..n {
                let host = face_of[&(0, Endpoint::input(i, g))];
                let guest = face_of[&(i + 1, Endpoint::out((g + 1) % n))];
                regions.union(host, guest);
            }
        }
        let add_curve = |regions: &mut RegionGraph, a: Dart| {
            let b = partner(a);
            let (tail, head) = if pieces[a.0].departs(a.1) { (a, b) } else { (b, a) };
            regions.add_curve(face_of[&tail], face_of[&head])
        };

        let all_darts: Vec<Dart> = pieces
            .iter()
            .enumerate()
            .flat_map(|(s, p)| p.all_endpoints().map(move |e| (s, e)))
            .collect();
        let mut visited = BTreeSet::new();
        let mut arcs = Vec::new();
        for &x in &all_darts {
            if glued(x) || visited.contains(&x) {
                continue;
            }
            add_curve(&mut regions, x);
            let mut cur = x;
            let end = loop {
                let y = partner(cur);
                visited.insert(cur);
                visited.insert(y);
                if glued(y) {
                    cur = across(y);
                } else {
                    break y;
                }
            };
            arcs.push((relabel(x), relabel(end)));
        }
        let mut loop_curves = Vec::new();
        for &x in &all_darts {
            if visited.contains(&x) {
                continue;
            }
            loop_curves.push(add_curve(&mut regions, x));
            let mut cur = x;
            loop {
                let y = partner(cur);
                visited.insert(cur);
                visited.insert(y);
                cur = across(y);
                if cur == x {
                    break;
                }
            }
        }
        let mut pos: u32 = pieces.iter().map(|p| p.pos_loops).sum();
        let mut neg: u32 = pieces.iter().map(|p| p.neg_loops).sum();
        for c in loop_curves {
            match regions.loop_sign(c)? {
                RegionSign::Positive => pos += 1,
                RegionSign::Negative => neg += 1,
            }
        }

        let inputs: Vec<_> = plugs.iter().flat_map(|p| p.inputs.iter().copied()).collect();
        let out = PlanarArcDiagram::from_parts(self.out, inputs, arcs, pos, neg);
        debug_assert!(out.validate(), "{:?}", out.diagnostics());
        Ok(out)
    }

    /// Insert one smoothing into every input disc.
    pub fn apply(&self, smoothings: &[OrientedSmoothing]) -> Result<OrientedSmoothing, PlanarError> {
        if smoothings.len() != self.inputs.len() {
            return Err(PlanarError::Mismatch(format!(
                "diagram has {} input discs, got {} smoothings",
                self.inputs.len(),
                smoothings.len()
            )));
        }
        if self.out.slots == 0 {
            return Err(PlanarError::Mismatch("result would have no boundary".into()));
        }
        let plugs: Vec<PlanarArcDiagram> = smoothings.iter().map(PlanarArcDiagram::from_smoothing).collect();
        let refs: Vec<&PlanarArcDiagram> = plugs.iter().collect();
        self.substitute(&refs)?.to_smoothing()
    }
}
