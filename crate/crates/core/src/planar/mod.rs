//! Planar arc diagrams stored as combinatorial maps.
//!
//! Every disc carries `2k` slots numbered counterclockwise (in the plane)
//! from its marked point, slot 0. Arcs join slots; a diagram never stores
//! coordinates. Its planar embedding is the one determined by the cyclic slot
//! orders: faces are traced with the rule "arrive at an output slot `q`,
//! leave by `q + 1`; arrive at an input slot `q`, leave by `q - 1`", which
//! keeps the face on the left of every traversed arc. A diagram is accepted
//! only when every connected piece passes the Euler check `V - E + F = 2`.
//!
//! Orientation: the output disc's in-points are where the resulting strands
//! start, so arcs *leave* them; an input disc's in-points are where the
//! inserted smoothing's strands start, so arcs *arrive* there.

mod basic;
mod compose;
mod decompose;
mod regions;

pub use basic::{basic_binary, basic_unary, binary_no_curl, radial, unary_sign};
pub use decompose::{decompose_to_basic, Recipe};

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::smoothing::{OrientedSmoothing, Rational, RegionSign, SmoothingError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PlanarError {
    #[error("invalid diagram: {}", .0.join("; "))]
    Invalid(Vec<String>),
    #[error("diagram is not of type A: {0}")]
    NotTypeA(String),
    #[error("input disc {0} does not exist")]
    NoSuchInput(usize),
    #[error("boundary mismatch: {0}")]
    Mismatch(String),
    #[error("illegal slot choice: {0}")]
    IllegalSlots(String),
    #[error("loop orientation is not determined by the combinatorial data")]
    AmbiguousEmbedding,
    #[error(transparent)]
    Smoothing(#[from] SmoothingError),
}

/// Disc of a diagram: the output disc or input disc `i` (0-based).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Disc {
    Out,
    In(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Endpoint {
    pub disc: Disc,
    pub slot: usize,
}

impl Endpoint {
    pub fn out(slot: usize) -> Self {
        Endpoint { disc: Disc::Out, slot }
    }

    pub fn input(i: usize, slot: usize) -> Self {
        Endpoint { disc: Disc::In(i), slot }
    }
}

impl fmt::Display for Endpoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.disc {
            Disc::Out => write!(f, "out:{}", self.slot),
            Disc::In(i) => write!(f, "in{}:{}", i + 1, self.slot),
        }
    }
}

/// Slot count and orientation bit of one boundary circle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DiscSpec {
    pub slots: usize,
    pub parity: u8,
}

impl DiscSpec {
    pub fn new(slots: usize, parity: u8) -> Self {
        DiscSpec { slots, parity }
    }

    pub fn strands(&self) -> usize {
        self.slots / 2
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PlanarArcDiagram {
    out: DiscSpec,
    inputs: Vec<DiscSpec>,
    /// Each arc stored with its smaller endpoint first; list sorted.
    arcs: Vec<(Endpoint, Endpoint)>,
    pos_loops: u32,
    neg_loops: u32,
}

/// Face of a diagram: the darts (endpoints left along an arc) around it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub darts: Vec<Endpoint>,
    pub sign: RegionSign,
    pub touches_outer: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceDecomposition {
    pub faces: Vec<Face>,
}

impl FaceDecomposition {
    /// Negative faces that do not meet the output boundary.
    pub fn negative_internal(&self) -> usize {
        self.faces
            .iter()
            .filter(|f| !f.touches_outer && f.sign == RegionSign::Negative)
            .count()
    }
}

impl PlanarArcDiagram {
    /// Validated constructor.
    pub fn new(
        out: DiscSpec,
        inputs: Vec<DiscSpec>,
        arcs: impl IntoIterator<Item = (Endpoint, Endpoint)>,
        loops: u32,
    ) -> Result<Self, PlanarError> {
        let d = Self::from_parts(out, inputs, arcs, 0, loops);
        let problems = d.diagnostics();
        if problems.is_empty() {
            Ok(d)
        } else {
            Err(PlanarError::Invalid(problems))
        }
    }

    /// Unvalidated constructor with signed loop counts.
    pub fn from_parts(
        out: DiscSpec,
        inputs: Vec<DiscSpec>,
        arcs: impl IntoIterator<Item = (Endpoint, Endpoint)>,
        pos_loops: u32,
        neg_loops: u32,
    ) -> Self {
        let mut arcs: Vec<_> = arcs
            .into_iter()
            .map(|(a, b)| if a <= b { (a, b) } else { (b, a) })
            .collect();
        arcs.sort_unstable();
        PlanarArcDiagram {
            out,
            inputs,
            arcs,
            pos_loops,
            neg_loops,
        }
    }

    /// A smoothing viewed as a 0-input diagram.
    pub fn from_smoothing(s: &OrientedSmoothing) -> Self {
        Self::from_parts(
            DiscSpec::new(s.boundary_len(), s.in_parity()),
            Vec::new(),
            s.pairs().iter().map(|&(a, b)| (Endpoint::out(a), Endpoint::out(b))),
            s.pos_loops(),
            s.neg_loops(),
        )
    }

    /// The smoothing of a 0-input diagram.
    pub fn to_smoothing(&self) -> Result<OrientedSmoothing, PlanarError> {
        if !self.inputs.is_empty() {
            return Err(PlanarError::Mismatch("diagram still has input discs".into()));
        }
        let pairs = self.arcs.iter().map(|&(a, b)| {
            if self.departs(a) {
                (a.slot, b.slot)
            } else {
                (b.slot, a.slot)
            }
        });
        let s = OrientedSmoothing::new(self.out.strands(), self.out.parity, pairs)?;
        Ok(s.with_loops(self.pos_loops, self.neg_loops))
    }

    pub fn out(&self) -> DiscSpec {
        self.out
    }

    pub fn inputs(&self) -> &[DiscSpec] {
        &self.inputs
    }

    pub fn input_count(&self) -> usize {
        self.inputs.len()
    }

    pub fn arcs(&self) -> &[(Endpoint, Endpoint)] {
        &self.arcs
    }

    pub fn pos_loops(&self) -> u32 {
        self.pos_loops
    }

    pub fn neg_loops(&self) -> u32 {
        self.neg_loops
    }

    pub fn loops(&self) -> u32 {
        self.pos_loops + self.neg_loops
    }

    pub(crate) fn spec(&self, disc: Disc) -> Option<DiscSpec> {
        match disc {
            Disc::Out => Some(self.out),
            Disc::In(i) => self.inputs.get(i).copied(),
        }
    }

    /// True when the arc at `e` is oriented away from `e`.
    pub fn departs(&self, e: Endpoint) -> bool {
        let spec = self.spec(e.disc).expect("endpoint disc exists");
        let is_in_point = e.slot % 2 == spec.parity as usize;
        match e.disc {
            Disc::Out => is_in_point,
            Disc::In(_) => !is_in_point,
        }
    }

    /// Map from each endpoint to the other end of its arc.
    pub fn partner_map(&self) -> BTreeMap<Endpoint, Endpoint> {
        let mut m = BTreeMap::new();
        for &(a, b) in &self.arcs {
            m.insert(a, b);
            m.insert(b, a);
        }
        m
    }

    /// Next dart around the face: after arriving at `e`, the endpoint we leave by.
    pub(crate) fn turn(&self, e: Endpoint) -> Endpoint {
        let n = self.spec(e.disc).expect("endpoint disc exists").slots;
        let slot = match e.disc {
            Disc::Out => (e.slot + 1) % n,
            Disc::In(_) => (e.slot + n - 1) % n,
        };
        Endpoint { disc: e.disc, slot }
    }

    fn all_endpoints(&self) -> impl Iterator<Item = Endpoint> + '_ {
        let outs = (0..self.out.slots).map(Endpoint::out);
        let ins = self
            .inputs
            .iter()
            .enumerate()
            .flat_map(|(i, s)| (0..s.slots).map(move |j| Endpoint::input(i, j)));
        outs.chain(ins)
    }

    /// Trace face orbits without validity checks. Requires a perfect slot cover.
    pub(crate) fn trace_faces(&self) -> Vec<Vec<Endpoint>> {
        let partner = self.partner_map();
        let mut seen = BTreeSet::new();
        let mut faces = Vec::new();
        for start in self.all_endpoints() {
            if seen.contains(&start) {
                continue;
            }
            let mut orbit = Vec::new();
            let mut e = start;
            while seen.insert(e) {
                orbit.push(e);
                e = self.turn(partner[&e]);
            }
            faces.push(orbit);
        }
        faces
    }

    /// Connected pieces of the disc/arc graph; discs without arcs are their
    /// own pieces. Returns the component id of every disc (output first).
    pub(crate) fn disc_components(&self) -> Vec<usize> {
        let n = self.inputs.len() + 1;
        let id = |d: Disc| match d {
            Disc::Out => 0,
            Disc::In(i) => i + 1,
        };
        let mut parent: Vec<usize> = (0..n).collect();
        for &(a, b) in &self.arcs {
            let (ra, rb) = (find(&mut parent, id(a.disc)), find(&mut parent, id(b.disc)));
            parent[ra] = rb;
        }
        (0..n).map(|i| find(&mut parent, i)).collect()
    }

    /// Every violated invariant.
    pub fn diagnostics(&self) -> Vec<String> {
        let mut out = Vec::new();
        let discs = std::iter::once((Disc::Out, self.out))
            .chain(self.inputs.iter().enumerate().map(|(i, s)| (Disc::In(i), *s)));
        for (disc, spec) in discs {
            if spec.slots % 2 != 0 {
                out.push(format!("{disc:?} has an odd number of slots"));
            }
            if spec.parity > 1 {
                out.push(format!("{disc:?} has parity {}", spec.parity));
            }
        }
        let mut used = BTreeMap::new();
        for &(a, b) in &self.arcs {
            for e in [a, b] {
                match self.spec(e.disc) {
                    None => out.push(format!("{e} refers to a missing disc")),
                    Some(s) if e.slot >= s.slots => out.push(format!("{e} is out of range")),
                    _ => *used.entry(e).or_insert(0usize) += 1,
                }
            }
            if a == b {
                out.push(format!("arc joins {a} to itself"));
            }
        }
        if !out.is_empty() {
            return out;
        }
        for e in self.all_endpoints() {
            match used.get(&e).copied().unwrap_or(0) {
                1 => {}
                0 => out.push(format!("slot {e} is unused")),
                n => out.push(format!("slot {e} is used {n} times")),
            }
        }
        if !out.is_empty() {
            return out;
        }
        for &(a, b) in &self.arcs {
            if self.departs(a) == self.departs(b) {
                out.push(format!(
                    "arc {a} - {b} has inconsistent orientation (both ends {})",
                    if self.departs(a) { "outgoing" } else { "incoming" }
                ));
            }
        }
        if !out.is_empty() {
            return out;
        }
        // Euler check per connected piece
        let comp = self.disc_components();
        let disc_id = |d: Disc| match d {
            Disc::Out => 0,
            Disc::In(i) => i + 1,
        };
        let mut v: BTreeMap<usize, i64> = BTreeMap::new();
        let mut e: BTreeMap<usize, i64> = BTreeMap::new();
        let mut f: BTreeMap<usize, i64> = BTreeMap::new();
        for c in &comp {
            *v.entry(*c).or_default() += 1;
        }
        for &(a, _) in &self.arcs {
            *e.entry(comp[disc_id(a.disc)]).or_default() += 1;
        }
        for face in self.trace_faces() {
            *f.entry(comp[disc_id(face[0].disc)]).or_default() += 1;
        }
        for (c, vc) in &v {
            let ec = e.get(c).copied().unwrap_or(0);
            let fc = if ec == 0 { 1 } else { f.get(c).copied().unwrap_or(0) };
            if vc - ec + fc != 2 {
                out.push(format!(
                    "cyclic slot orders are not planar (V - E + F = {} on one piece)",
                    vc - ec + fc
                ));
            }
        }
        out
    }

    pub fn validate(&self) -> bool {
        self.diagnostics().is_empty()
    }

    fn ensure_valid(&self) -> Result<(), PlanarError> {
        let problems = self.diagnostics();
        if problems.is_empty() {
            Ok(())
        } else {
            Err(PlanarError::Invalid(problems))
        }
    }

    /// Faces with their signs; a face is positive when the arcs around it
    /// run counterclockwise.
    pub fn faces(&self) -> Result<FaceDecomposition, PlanarError> {
        self.ensure_valid()?;
        let faces = self
            .trace_faces()
            .into_iter()
            .map(|darts| {
                let sign = if self.departs(darts[0]) {
                    RegionSign::Positive
                } else {
                    RegionSign::Negative
                };
                debug_assert!(darts.iter().all(|&d| self.departs(d) == self.departs(darts[0])));
                let touches_outer = darts.iter().any(|d| d.disc == Disc::Out);
                Face {
                    darts,
                    sign,
                    touches_outer,
                }
            })
            .collect();
        Ok(FaceDecomposition { faces })
    }

    /// Why the diagram fails to be of type A, if it does.
    pub fn type_a_violation(&self) -> Option<String> {
        if let Err(e) = self.ensure_valid() {
            return Some(e.to_string());
        }
        if self.out.slots == 0 {
            return Some("no strings end on the output boundary".into());
        }
        if self.inputs.is_empty() {
            return Some("no input discs".into());
        }
        if self.loops() > 0 {
            return Some("free loops are disconnected from the input discs".into());
        }
        // nodes: input discs, then arcs
        let d = self.inputs.len();
        let mut parent: Vec<usize> = (0..d + self.arcs.len()).collect();
        for (ai, &(a, b)) in self.arcs.iter().enumerate() {
            for e in [a, b] {
                if let Disc::In(i) = e.disc {
                    let (r1, r2) = (find(&mut parent, i), find(&mut parent, d + ai));
                    parent[r1] = r2;
                }
            }
        }
        let root = find(&mut parent, 0);
        if (0..parent.len()).any(|x| find(&mut parent, x) != root) {
            return Some("arcs and input discs are not connected".into());
        }
        None
    }

    pub fn is_type_a(&self) -> bool {
        self.type_a_violation().is_none()
    }

    fn ensure_type_a(&self) -> Result<(), PlanarError> {
        match self.type_a_violation() {
            None => Ok(()),
            Some(why) => Err(PlanarError::NotTypeA(why)),
        }
    }

    /// Number of arcs with both ends on input discs.
    pub fn interconnections(&self) -> usize {
        self.arcs
            .iter()
            .filter(|(a, b)| a.disc != Disc::Out && b.disc != Disc::Out)
            .count()
    }

    /// `(i_D, w_D)`: non-boundary arcs and negative internal faces.
    pub fn counts(&self) -> Result<(usize, usize), PlanarError> {
        self.ensure_type_a()?;
        Ok((self.interconnections(), self.faces()?.negative_internal()))
    }

    /// `R_D = (1 + i_D - d) / 2 - w_D`.
    pub fn rotation_associated_number(&self) -> Result<Rational, PlanarError> {
        let (i_d, w_d) = self.counts()?;
        let d = self.inputs.len() as i64;
        Ok(Rational::new(1 + i_d as i64 - d, 2) - Rational::from_integer(w_d as i64))
    }

    /// Renumber the output slots so that old slot `s` becomes `s - shift`.
    pub fn rotate_output(&self, shift: usize) -> Self {
        let n = self.out.slots;
        if n == 0 {
            return self.clone();
        }
        let m = |e: Endpoint| match e.disc {
            Disc::Out => Endpoint::out((e.slot + n - shift % n) % n),
            _ => e,
        };
        let parity = ((self.out.parity as usize + shift) % 2) as u8;
        Self::from_parts(
            DiscSpec::new(n, parity),
            self.inputs.clone(),
            self.arcs.iter().map(|&(a, b)| (m(a), m(b))),
            self.pos_loops,
            self.neg_loops,
        )
    }

    /// Reorder input discs: new disc `j` is old disc `order[j]`.
    pub fn permute_inputs(&self, order: &[usize]) -> Self {
        let mut inverse = vec![0; order.len()];
        for (new, &old) in order.iter().enumerate() {
            inverse[old] = new;
        }
        let m = |e: Endpoint| match e.disc {
            Disc::In(i) => Endpoint::input(inverse[i], e.slot),
            Disc::Out => e,
        };
        Self::from_parts(
            self.out,
            order.iter().map(|&i| self.inputs[i]).collect(),
            self.arcs.iter().map(|&(a, b)| (m(a), m(b))),
            self.pos_loops,
            self.neg_loops,
        )
    }

    /// Arcs with both ends on input disc `i`.
    pub fn curls_on(&self, i: usize) -> Vec<(Endpoint, Endpoint)> {
        self.arcs
            .iter()
            .filter(|(a, b)| a.disc == Disc::In(i) && b.disc == Disc::In(i))
            .copied()
            .collect()
    }

    pub fn has_curls(&self) -> bool {
        (0..self.inputs.len()).any(|i| !self.curls_on(i).is_empty())
    }
}

pub(crate) fn find(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    let mut y = x;
    while parent[y] != r {
        let n = parent[y];
        parent[y] = r;
        y = n;
    }
    r
}

impl fmt::Debug for PlanarArcDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Diagram(out={}/{}", self.out.slots, self.out.parity)?;
        for (i, s) in self.inputs.iter().enumerate() {
            write!(f, ", in{}={}/{}", i + 1, s.slots, s.parity)?;
        }
        write!(f, "; ")?;
        for (a, b) in &self.arcs {
            write!(f, "{a}-{b} ")?;
        }
        write!(f, "loops=+{}/-{})", self.pos_loops, self.neg_loops)
    }
}

// JSON form: {"d":2,"out":{"slots":4,"parity":0},"in":[...],
//             "arcs":[[["out",0],["in1",1]],...],"loops":0}
// "positive_loops" appears only when some free loops run counterclockwise.

#[derive(Serialize, Deserialize)]
struct DiagramRepr {
    d: usize,
    out: DiscSpec,
    #[serde(rename = "in")]
    inputs: Vec<DiscSpec>,
    arcs: Vec<[(String, usize); 2]>,
    loops: u32,
    #[serde(default, skip_serializing_if = "is_zero")]
    positive_loops: u32,
}

fn is_zero(n: &u32) -> bool {
    *n == 0
}

fn disc_label(d: Disc) -> String {
    match d {
        Disc::Out => "out".to_string(),
        Disc::In(i) => format!("in{}", i + 1),
    }
}

fn parse_disc_label(s: &str) -> Result<Disc, String> {
    if s == "out" {
        return Ok(Disc::Out);
    }
    s.strip_prefix("in")
        .and_then(|n| n.parse::<usize>().ok())
        .filter(|&n| n >= 1)
        .map(|n| Disc::In(n - 1))
        .ok_or_else(|| format!("bad disc label {s:?}"))
}

impl Serialize for PlanarArcDiagram {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        DiagramRepr {
            d: self.inputs.len(),
            out: self.out,
            inputs: self.inputs.clone(),
            arcs: self
                .arcs
                .iter()
                .map(|(a, b)| [(disc_label(a.disc), a.slot), (disc_label(b.disc), b.slot)])
                .collect(),
            loops: self.loops(),
            positive_loops: self.pos_loops,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for PlanarArcDiagram {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let r = DiagramRepr::deserialize(deserializer)?;
        if r.d != r.inputs.len() {
            return Err(D::Error::custom(format!(
                "d = {} but {} input discs listed",
                r.d,
                r.inputs.len()
            )));
        }
        if r.positive_loops > r.loops {
            return Err(D::Error::custom("positive_loops exceeds loops"));
        }
        let mut arcs = Vec::with_capacity(r.arcs.len());
        for [(da, sa), (db, sb)] in r.arcs {
            let a = parse_disc_label(&da).map_err(D::Error::custom)?;
            let b = parse_disc_label(&db).map_err(D::Error::custom)?;
            arcs.push((Endpoint { disc: a, slot: sa }, Endpoint { disc: b, slot: sb }));
        }
        let d = PlanarArcDiagram::from_parts(r.out, r.inputs, arcs, r.positive_loops, r.loops - r.positive_loops);
        let problems = d.diagnostics();
        if !problems.is_empty() {
            return Err(D::Error::custom(PlanarError::Invalid(problems)));
        }
        Ok(d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn identity(k: usize) -> PlanarArcDiagram {
        radial(k, 0, 0)
    }

    #[test]
    fn identity_is_valid_type_a() {
        let d = identity(2);
        assert!(d.validate(), "{:?}", d.diagnostics());
        assert!(d.is_type_a());
        let faces = d.faces().unwrap();
        assert_eq!(faces.faces.len(), 4);
        assert!(faces.faces.iter().all(|f| f.touches_outer));
        assert_eq!(d.counts().unwrap(), (0, 0));
        assert_eq!(d.rotation_associated_number().unwrap(), Rational::from_integer(0));
    }

    #[test]
    fn unused_slot_is_rejected() {
        let d = PlanarArcDiagram::from_parts(
            DiscSpec::new(4, 0),
            vec![DiscSpec::new(4, 0)],
            (0..3).map(|j| (Endpoint::out(j), Endpoint::input(0, j))),
            0,
            0,
        );
        let diag = d.diagnostics();
        assert!(diag.iter().any(|m| m.contains("unused")), "{diag:?}");
    }

    #[test]
    fn twisted_cyclic_order_is_not_planar() {
        // out slots 0..4 joined to input slots in reversed cyclic order
        // (0->0, 1->3, 2->2, 3->1) keeps orientations consistent but needs
        // a handle
        let d = PlanarArcDiagram::from_parts(
            DiscSpec::new(4, 0),
            vec![DiscSpec::new(4, 0)],
            [(0, 0), (1, 3), (2, 2), (3, 1)]
                .into_iter()
                .map(|(o, i)| (Endpoint::out(o), Endpoint::input(0, i))),
            0,
            0,
        );
        let diag = d.diagnostics();
        assert!(diag.iter().any(|m| m.contains("not planar")), "{diag:?}");
    }

    #[test]
    fn bad_orientation_is_rejected() {
        let d = PlanarArcDiagram::from_parts(
            DiscSpec::new(2, 0),
            vec![DiscSpec::new(2, 1)],
            (0..2).map(|j| (Endpoint::out(j), Endpoint::input(0, j))),
            0,
            0,
        );
        assert!(d.diagnostics().iter().any(|m| m.contains("orientation")));
    }

    #[test]
    fn zero_output_strings_is_not_type_a() {
        // a 1-input diagram closing both slots of a 2-slot disc
        let d = PlanarArcDiagram::new(
            DiscSpec::new(0, 0),
            vec![DiscSpec::new(2, 0)],
            [(Endpoint::input(0, 0), Endpoint::input(0, 1))],
            0,
        )
        .unwrap();
        assert!(d.validate());
        assert!(!d.is_type_a());
    }

    #[test]
    fn disconnected_pair_is_not_type_a() {
        // two discs, each wired straight to the output, no interconnection
        let arcs = [
            (Endpoint::out(0), Endpoint::input(0, 0)),
            (Endpoint::out(1), Endpoint::input(0, 1)),
            (Endpoint::out(2), Endpoint::input(1, 0)),
            (Endpoint::out(3), Endpoint::input(1, 1)),
        ];
        let d = PlanarArcDiagram::new(
            DiscSpec::new(4, 0),
            vec![DiscSpec::new(2, 0), DiscSpec::new(2, 0)],
            arcs,
            0,
        )
        .unwrap();
        assert!(d.validate());
        assert!(d.type_a_violation().unwrap().contains("not connected"));
    }

    #[test]
    fn json_round_trip_is_bit_exact() {
        let d = basic_binary(2, 0, 1, 1, 0, 0).unwrap();
        let json = serde_json::to_string(&d).unwrap();
        let back: PlanarArcDiagram = serde_json::from_str(&json).unwrap();
        assert_eq!(back, d);
        assert_eq!(serde_json::to_string(&back).unwrap(), json);
        let id = serde_json::to_string(&identity(1)).unwrap();
        assert_eq!(
            id,
            r#"{"d":1,"out":{"slots":2,"parity":0},"in":[{"slots":2,"parity":0}],"arcs":[[["out",0],["in1",0]],[["out",1],["in1",1]]],"loops":0}"#
        );
    }

    #[test]
    fn smoothing_as_diagram_round_trip() {
        for s in crate::smoothing::enumerate_smoothings(3, 1) {
            let d = PlanarArcDiagram::from_smoothing(&s);
            assert!(d.validate(), "{s}");
            assert_eq!(d.to_smoothing().unwrap(), s);
        }
    }
}
