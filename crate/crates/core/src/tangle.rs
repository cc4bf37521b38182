//! Alternating tangle diagrams, their gravity orientation and the Jones
//! state sum into the skein module.
//!
//! Text format:
//!
//! ```text
//! tangle k=2
//! X 1 2 3 4
//! B 1 2 3 4
//! ```
//!
//! A crossing line lists four edge labels counterclockwise starting from the
//! incoming under-strand edge, so positions 0 and 2 are under, 1 and 3 over.
//! An optional trailing `+` or `-` fixes the crossing sign; without it the
//! sign is derived from the strand orientation (under strands run from
//! position 0 to 2, over strands inherit the orientation of their
//! component). The boundary line lists `2k` labels counterclockwise.
//! Every label occurs exactly twice. Blank lines and `#` comments are ignored.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::laurent::{LaurentError, LaurentPoly};
use crate::planar::{Disc, PlanarArcDiagram};
use crate::skein::{SkeinElement, SkeinError};
use crate::smoothing::{OrientedSmoothing, SmoothingError};

/// Default bound on the number of crossings in a state sum.
pub const DEFAULT_MAX_CROSSINGS: usize = 16;

/// `SKEIN_MAX_CROSSINGS` if set and valid, otherwise the default.
pub fn max_crossings_from_env() -> usize {
    std::env::var("SKEIN_MAX_CROSSINGS")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_MAX_CROSSINGS)
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TangleError {
    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid tangle: {}", .0.join("; "))]
    Invalid(Vec<String>),
    #[error("tangle is not alternating: {0}")]
    NotAlternating(String),
    #[error("tangle is split")]
    Split,
    #[error("{crossings} crossings exceed the limit of {cap}")]
    TooManyCrossings { crossings: usize, cap: usize },
    #[error("strand orientation is inconsistent: {0}")]
    Orientation(String),
    #[error("mismatch: {0}")]
    Mismatch(String),
    #[error(transparent)]
    Skein(#[from] SkeinError),
    #[error(transparent)]
    Laurent(#[from] LaurentError),
    #[error(transparent)]
    Smoothing(#[from] SmoothingError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CrossingSign {
    #[serde(rename = "+")]
    Positive,
    #[serde(rename = "-")]
    Negative,
}

impl CrossingSign {
    fn token(self) -> &'static str {
        match self {
            CrossingSign::Positive => "+",
            CrossingSign::Negative => "-",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Crossing {
    pub edges: [usize; 4],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sign: Option<CrossingSign>,
}

/// Place where an edge ends: a boundary slot or a crossing position.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum End {
    Boundary(usize),
    Crossing(usize, usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "TangleRepr", into = "TangleRepr")]
pub struct TangleDiagram {
    k: usize,
    crossings: Vec<Crossing>,
    boundary: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct TangleRepr {
    k: usize,
    crossings: Vec<Crossing>,
    boundary: Vec<usize>,
}

impl TryFrom<TangleRepr> for TangleDiagram {
    type Error = TangleError;
    fn try_from(r: TangleRepr) -> Result<Self, TangleError> {
        TangleDiagram::new(r.k, r.crossings, r.boundary)
    }
}

impl From<TangleDiagram> for TangleRepr {
    fn from(t: TangleDiagram) -> Self {
        TangleRepr {
            k: t.k,
            crossings: t.crossings,
            boundary: t.boundary,
        }
    }
}

/// Boundary classification read off the gravity orientation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GravityOrientation {
    /// For every edge label: the end its arrow leaves from and the end it
    /// points to. Edges between two boundary slots are omitted.
    pub arrows: BTreeMap<usize, (End, End)>,
    /// True for boundary slots where strands start.
    pub in_points: Vec<bool>,
    pub in_parity: u8,
}

impl TangleDiagram {
    /// Validated constructor (planarity and label usage only).
    pub fn new(k: usize, crossings: Vec<Crossing>, boundary: Vec<usize>) -> Result<Self, TangleError> {
        let t = TangleDiagram {
            k,
            crossings,
            boundary,
        };
        let problems = t.diagnostics();
        if problems.is_empty() {
            Ok(t)
        } else {
            Err(TangleError::Invalid(problems))
        }
    }

    /// The 1-crossing tangle with in-point parity `in_parity`.
    pub fn one_crossing(sign: Option<CrossingSign>, in_parity: u8) -> Self {
        let boundary = if in_parity == 0 {
            vec![1, 2, 3, 4]
        } else {
            vec![2, 3, 4, 1]
        };
        TangleDiagram {
            k: 2,
            crossings: vec![Crossing {
                edges: [1, 2, 3, 4],
                sign,
            }],
            boundary,
        }
    }

    /// A single crossingless arc.
    pub fn arc() -> Self {
        TangleDiagram {
            k: 1,
            crossings: Vec::new(),
            boundary: vec![1, 1],
        }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn boundary(&self) -> &[usize] {
        &self.boundary
    }

    fn ends(&self) -> impl Iterator<Item = (End, usize)> + '_ {
        let b = self.boundary.iter().enumerate().map(|(s, &e)| (End::Boundary(s), e));
        let c = self
            .crossings
            .iter()
            .enumerate()
            .flat_map(|(c, x)| x.edges.iter().enumerate().map(move |(p, &e)| (End::Crossing(c, p), e)));
        b.chain(c)
    }

    fn label_ends(&self) -> BTreeMap<usize, Vec<End>> {
        let mut m: BTreeMap<usize, Vec<End>> = BTreeMap::new();
        for (end, label) in self.ends() {
            m.entry(label).or_default().push(end);
        }
        m
    }

    /// Map from each end to the other end of its edge. Requires valid labels.
    fn partner_map(&self) -> BTreeMap<End, End> {
        let mut m = BTreeMap::new();
        for ends in self.label_ends().values() {
            m.insert(ends[0], ends[1]);
            m.insert(ends[1], ends[0]);
        }
        m
    }

    fn label_at(&self, end: End) -> usize {
        match end {
            End::Boundary(s) => self.boundary[s],
            End::Crossing(c, p) => self.crossings[c].edges[p],
        }
    }

    pub fn diagnostics(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.boundary.len() != 2 * self.k {
            out.push(format!(
                "boundary lists {} labels but k={} needs {}",
                self.boundary.len(),
                self.k,
                2 * self.k
            ));
        }
        for (label, ends) in self.label_ends() {
            if ends.len() != 2 {
                out.push(format!("edge {label} has {} ends", ends.len()));
            }
        }
        if !out.is_empty() {
            return out;
        }
        // Euler check per component; crossings turn like input discs,
        // the boundary like an output disc
        let partner = self.partner_map();
        let n = self.crossings.len();
        let vertex = |e: End| match e {
            End::Boundary(_) => n,
            End::Crossing(c, _) => c,
        };
        let mut parent: Vec<usize> = (0..=n).collect();
        for (&a, &b) in &partner {
            let (ra, rb) = (crate::planar::find(&mut parent, vertex(a)), crate::planar::find(&mut parent, vertex(b)));
            parent[ra] = rb;
        }
        let turn = |e: End| match e {
            End::Boundary(s) => End::Boundary((s + 1) % self.boundary.len()),
            End::Crossing(c, p) => End::Crossing(c, (p + 3) % 4),
        };
        let mut faces: BTreeMap<usize, i64> = BTreeMap::new();
        let mut seen = BTreeSet::new();
        for (start, _) in self.ends() {
            if seen.contains(&start) {
                continue;
            }
            let mut e = start;
            while seen.insert(e) {
                e = turn(partner[&e]);
            }
            *faces.entry(crate::planar::find(&mut parent, vertex(start))).or_default() += 1;
        }
        let mut verts: BTreeMap<usize, i64> = BTreeMap::new();
        let mut edges: BTreeMap<usize, i64> = BTreeMap::new();
        for v in 0..=n {
            *verts.entry(crate::planar::find(&mut parent, v)).or_default() += 1;
        }
        for (&a, _) in partner.iter().filter(|(a, b)| a < b) {
            *edges.entry(crate::planar::find(&mut parent, vertex(a))).or_default() += 1;
        }
        for (c, v) in verts {
            let e = edges.get(&c).copied().unwrap_or(0);
            let f = if e == 0 { 1 } else { faces.get(&c).copied().unwrap_or(0) };
            if v - e + f != 2 {
                out.push(format!("crossing data is not planar (V - E + F = {})", v - e + f));
            }
        }
        out
    }

    pub fn validate(&self) -> bool {
        self.diagnostics().is_empty()
    }

    fn ensure_valid(&self) -> Result<(), TangleError> {
        let problems = self.diagnostics();
        if problems.is_empty() {
            Ok(())
        } else {
            Err(TangleError::Invalid(problems))
        }
    }

    /// The first edge joining two over ends or two under ends, if any.
    fn alternation_violation(&self) -> Option<String> {
        let partner = self.partner_map();
        for (&a, &b) in &partner {
            if let (End::Crossing(c1, p1), End::Crossing(c2, p2)) = (a, b) {
                if a < b && p1 % 2 == p2 % 2 {
                    let kind = if p1 % 2 == 0 { "under" } else { "over" };
                    return Some(format!(
                        "edge {} joins two {kind} ends (crossings {} and {})",
                        self.label_at(a),
                        c1 + 1,
                        c2 + 1
                    ));
                }
            }
        }
        None
    }

    /// Valid and alternating along every strand.
    pub fn is_alternating_diagram(&self) -> bool {
        self.validate() && self.alternation_violation().is_none()
    }

    /// Crossings and edges form one connected piece (the boundary circle
    /// does not count as a connection).
    pub fn is_non_split(&self) -> bool {
        if !self.validate() {
            return false;
        }
        let partner = self.partner_map();
        let n = self.crossings.len();
        if n == 0 {
            return partner.len() == 2;
        }
        let mut parent: Vec<usize> = (0..n).collect();
        for (&a, &b) in &partner {
            match (a, b) {
                (End::Crossing(c1, _), End::Crossing(c2, _)) => {
                    let (r1, r2) = (crate::planar::find(&mut parent, c1), crate::planar::find(&mut parent, c2));
                    parent[r1] = r2;
                }
                (End::Boundary(_), End::Boundary(_)) => return false,
                _ => {}
            }
        }
        let root = crate::planar::find(&mut parent, 0);
        (0..n).all(|c| crate::planar::find(&mut parent, c) == root)
    }

    fn ensure_jones_ready(&self) -> Result<(), TangleError> {
        self.ensure_valid()?;
        if let Some(why) = self.alternation_violation() {
            return Err(TangleError::NotAlternating(why));
        }
        if !self.is_non_split() {
            return Err(TangleError::Split);
        }
        Ok(())
    }

    /// Arrows into under ends and out of over ends, and the resulting
    /// boundary classification.
    pub fn gravity_orient(&self) -> Result<GravityOrientation, TangleError> {
        self.ensure_jones_ready()?;
        let mut arrows = BTreeMap::new();
        for (label, ends) in self.label_ends() {
            let (a, b) = (ends[0], ends[1]);
            let into = |e: End| matches!(e, End::Crossing(_, p) if p % 2 == 0);
            let arrow = match (a, b) {
                (End::Boundary(_), End::Boundary(_)) => continue,
                _ if into(b) || (matches!(a, End::Crossing(_, p) if p % 2 == 1)) => (a, b),
                _ => (b, a),
            };
            arrows.insert(label, arrow);
        }
        let mut in_points = vec![false; self.boundary.len()];
        for (s, flag) in in_points.iter_mut().enumerate() {
            let label = self.boundary[s];
            *flag = match arrows.get(&label) {
                Some((from, _)) => *from == End::Boundary(s),
                // lone crossingless arc: slot 0 starts the strand
                None => s % 2 == 0,
            };
        }
        let in_parity = match in_points.iter().position(|&f| f) {
            Some(p) => (p % 2) as u8,
            None => 0,
        };
        for (s, &f) in in_points.iter().enumerate() {
            if f != (s % 2 == in_parity as usize) {
                return Err(TangleError::NotAlternating(
                    "boundary in- and out-strands do not alternate".into(),
                ));
            }
        }
        Ok(GravityOrientation {
            arrows,
            in_points,
            in_parity,
        })
    }

    /// Signs forced by the strand orientation, ignoring explicit sign tokens.
    pub fn derived_signs(&self) -> Result<Vec<CrossingSign>, TangleError> {
        self.ensure_valid()?;
        let partner = self.partner_map();
        let n = self.crossings.len();
        let mut signs: Vec<Option<CrossingSign>> = vec![None; n];
        let mut visited: BTreeSet<End> = BTreeSet::new();

        // walk one component from `start`, an end we arrive at
        let walk = |start: End, visited: &mut BTreeSet<End>| -> Vec<(usize, usize)> {
            let mut passages = Vec::new();
            let mut e = start;
            loop {
                visited.insert(e);
                match e {
                    End::Boundary(_) => {
                        if e != start {
                            break;
                        }
                        let next = partner[&e];
                        if let End::Boundary(_) = next {
                            visited.insert(next);
                            break;
                        }
                        e = next;
                    }
                    End::Crossing(c, p) => {
                        passages.push((c, p));
                        let exit = End::Crossing(c, (p + 2) % 4);
                        visited.insert(exit);
                        e = partner[&exit];
                        if e == start {
                            break;
                        }
                    }
                }
            }
            passages
        };

        let mut starts: Vec<End> = (0..self.boundary.len()).map(End::Boundary).collect();
        starts.extend((0..n).flat_map(|c| (0..4).map(move |p| End::Crossing(c, p))));
        for start in starts {
            if visited.contains(&start) {
                continue;
            }
            let passages = walk(start, &mut visited);
            // arrival positions: under passages must all arrive at 0 (forward)
            // or all at 2 (backward)
            let unders: BTreeSet<usize> = passages.iter().filter(|(_, p)| p % 2 == 0).map(|(_, p)| *p).collect();
            let forward = match unders.len() {
                0 => {
                    // over-only component: orient the first crossing from 1 to 3
                    passages.first().map(|&(_, p)| p == 1).unwrap_or(true)
                }
                1 => unders.contains(&0),
                _ => {
                    return Err(TangleError::Orientation(format!(
                        "a component passes under in both directions (starting at {start:?})"
                    )))
                }
            };
            for &(c, p) in passages.iter().filter(|(_, p)| p % 2 == 1) {
                let arrive = if forward { p } else { (p + 2) % 4 };
                signs[c] = Some(if arrive == 1 {
                    CrossingSign::Negative
                } else {
                    CrossingSign::Positive
                });
            }
        }
        Ok(signs.into_iter().map(|s| s.expect("every crossing has an over strand")).collect())
    }

    /// Sign used by the state sum: explicit token if present, else derived.
    pub fn effective_signs(&self) -> Result<Vec<CrossingSign>, TangleError> {
        if self.crossings.iter().all(|c| c.sign.is_some()) {
            return Ok(self.crossings.iter().map(|c| c.sign.unwrap()).collect());
        }
        let derived = self.derived_signs()?;
        Ok(self
            .crossings
            .iter()
            .zip(derived)
            .map(|(c, d)| c.sign.unwrap_or(d))
            .collect())
    }

    /// Jones invariant with the crossing limit from the environment.
    pub fn jones(&self) -> Result<SkeinElement, TangleError> {
        self.jones_capped(max_crossings_from_env())
    }

    pub fn jones_capped(&self, cap: usize) -> Result<SkeinElement, TangleError> {
        if self.k == 0 {
            return Err(TangleError::Mismatch("a closed diagram has no skein element; evaluate it as a link".into()));
        }
        let gravity = self.gravity_orient()?;
        let (raw, _) = self.state_sum(cap, Some(&gravity))?;
        Ok(SkeinElement::normalize(self.k, gravity.in_parity, raw)?)
    }

    /// Sum over all resolutions. Returns the loop-free terms (boundary
    /// present) or the scalar value (closed diagram).
    fn state_sum(
        &self,
        cap: usize,
        gravity: Option<&GravityOrientation>,
    ) -> Result<(Vec<(OrientedSmoothing, LaurentPoly)>, LaurentPoly), TangleError> {
        let n = self.crossings.len();
        if n > cap {
            return Err(TangleError::TooManyCrossings { crossings: n, cap });
        }
        let signs = self.effective_signs()?;
        let nb = self.boundary.len();
        let index = |e: End| match e {
            End::Boundary(s) => s,
            End::Crossing(c, p) => nb + 4 * c + p,
        };
        let total = nb + 4 * n;
        let mut base: Vec<usize> = (0..total).collect();
        for (a, b) in self.partner_map() {
            let (ra, rb) = (crate::planar::find(&mut base, index(a)), crate::planar::find(&mut base, index(b)));
            base[ra] = rb;
        }
        let mut loop_powers = vec![LaurentPoly::one()];
        let mut terms: BTreeMap<(OrientedSmoothing, u32), LaurentPoly> = BTreeMap::new();
        let mut scalar = LaurentPoly::zero();
        for state in 0u64..(1u64 << n) {
            let mut parent = base.clone();
            let mut sign = 1i64;
            let mut exponent = 0i64;
            for (c, s) in signs.iter().enumerate() {
                let bit = (state >> c) & 1;
                let pairs = if bit == 0 { [(0, 1), (2, 3)] } else { [(0, 3), (1, 2)] };
                for (u, v) in pairs {
                    let (ru, rv) = (
                        crate::planar::find(&mut parent, nb + 4 * c + u),
                        crate::planar::find(&mut parent, nb + 4 * c + v),
                    );
                    parent[ru] = rv;
                }
                let (sg, e) = match (s, bit) {
                    (CrossingSign::Positive, 0) => (1, 1),
                    (CrossingSign::Positive, _) => (-1, 2),
                    (CrossingSign::Negative, 0) => (-1, -2),
                    (CrossingSign::Negative, _) => (1, -1),
                };
                sign *= sg;
                exponent += e;
            }
            let roots: Vec<usize> = (0..total).map(|x| crate::planar::find(&mut parent, x)).collect();
            let boundary_roots: BTreeSet<usize> = roots[..nb].iter().copied().collect();
            let all_roots: BTreeSet<usize> = roots.iter().copied().collect();
            let loops = (all_roots.len() - boundary_roots.len()) as u32;
            let coeff = LaurentPoly::monomial(sign, exponent);
            match gravity {
                Some(g) => {
                    let mut by_root: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
                    for s in 0..nb {
                        by_root.entry(roots[s]).or_default().push(s);
                    }
                    let pairs = by_root.values().map(|v| {
                        if g.in_points[v[0]] {
                            (v[0], v[1])
                        } else {
                            (v[1], v[0])
                        }
                    });
                    let smoothing = OrientedSmoothing::new(self.k, g.in_parity, pairs)?;
                    let slot = terms.entry((smoothing, loops)).or_default();
                    *slot = &*slot + &coeff;
                }
                None => {
                    while loop_powers.len() <= loops as usize {
                        let next = loop_powers.last().unwrap() * &LaurentPoly::loop_value();
                        loop_powers.push(next);
                    }
                    scalar = &scalar + &(&coeff * &loop_powers[loops as usize]);
                }
            }
        }
        let raw = terms
            .into_iter()
            .map(|((s, loops), c)| (s.with_loops(0, loops), c))
            .collect();
        Ok((raw, scalar))
    }

    /// Link value: `(Ĵ, J)` with `J = Ĵ / (q + q^-1)`.
    ///
    /// A 1-strand tangle is closed by joining its two boundary points; a
    /// diagram with `k = 0` is already closed.
    pub fn evaluate_link(&self) -> Result<(LaurentPoly, LaurentPoly), TangleError> {
        self.evaluate_link_capped(max_crossings_from_env())
    }

    pub fn evaluate_link_capped(&self, cap: usize) -> Result<(LaurentPoly, LaurentPoly), TangleError> {
        let unnormalized = match self.k {
            0 => {
                self.ensure_jones_ready()?;
                self.state_sum(cap, None)?.1
            }
            1 => {
                let element = self.jones_capped(cap)?;
                let coeff: LaurentPoly = element.terms().map(|(_, c)| c.clone()).sum();
                &coeff * &LaurentPoly::loop_value()
            }
            k => {
                return Err(TangleError::Mismatch(format!(
                    "a {k}-strand tangle does not close to a link"
                )))
            }
        };
        let normalized = unnormalized.div_exact(&LaurentPoly::loop_value())?;
        Ok((unnormalized, normalized))
    }

    /// Insert tangles into the input discs of `d`. Crossings keep their
    /// effective signs; edges are relabelled `1, 2, ...` in order of first
    /// appearance.
    pub fn compose(d: &PlanarArcDiagram, tangles: &[TangleDiagram]) -> Result<TangleDiagram, TangleError> {
        if !d.validate() {
            return Err(TangleError::Mismatch(format!("invalid diagram: {}", d.diagnostics().join("; "))));
        }
        if tangles.len() != d.input_count() {
            return Err(TangleError::Mismatch(format!(
                "diagram has {} inputs, got {} tangles",
                d.input_count(),
                tangles.len()
            )));
        }
        for (i, (t, spec)) in tangles.iter().zip(d.inputs()).enumerate() {
            let g = t.gravity_orient()?;
            if t.boundary.len() != spec.slots || g.in_parity != spec.parity {
                return Err(TangleError::Mismatch(format!(
                    "input {} expects {} slots with parity {}, tangle has {} with parity {}",
                    i + 1,
                    spec.slots,
                    spec.parity,
                    t.boundary.len(),
                    g.in_parity
                )));
            }
        }
        if d.loops() > 0 {
            return Err(TangleError::Mismatch("diagram carries free loops".into()));
        }
        // ends are (tangle index, end); output slots use OUT as tangle index
        type G = (usize, End);
        const OUT: usize = usize::MAX;
        let mut inner: BTreeMap<G, G> = BTreeMap::new();
        let mut signs = Vec::new();
        for (ti, t) in tangles.iter().enumerate() {
            signs.push(t.effective_signs()?);
            for (a, b) in t.partner_map() {
                inner.insert((ti, a), (ti, b));
            }
        }
        let to_g = |e: crate::planar::Endpoint| match e.disc {
            Disc::Out => (OUT, End::Boundary(e.slot)),
            Disc::In(i) => (i, End::Boundary(e.slot)),
        };
        let mut outer: BTreeMap<G, G> = BTreeMap::new();
        for &(a, b) in d.arcs() {
            outer.insert(to_g(a), to_g(b));
            outer.insert(to_g(b), to_g(a));
        }
        let is_terminal = |g: &G| g.0 == OUT || matches!(g.1, End::Crossing(..));
        let terminals: Vec<G> = tangles
            .iter()
            .enumerate()
            .flat_map(|(ti, t)| {
                (0..t.crossings.len()).flat_map(move |c| (0..4).map(move |p| (ti, End::Crossing(c, p))))
            })
            .chain((0..d.out().slots).map(|s| (OUT, End::Boundary(s))))
            .collect();
        let mut label_of: BTreeMap<G, usize> = BTreeMap::new();
        let mut passed = 0;
        for &start in &terminals {
            if label_of.contains_key(&start) {
                continue;
            }
            let mut via_inner = start.0 != OUT;
            let mut cur = if via_inner { inner[&start] } else { outer[&start] };
            while !is_terminal(&cur) {
                passed += 1;
                cur = if via_inner { outer[&cur] } else { inner[&cur] };
                via_inner = !via_inner;
            }
            let label = label_of.len() / 2 + 1;
            label_of.insert(start, label);
            label_of.insert(cur, label);
        }
        let tangle_slots: usize = tangles.iter().map(|t| t.boundary.len()).sum();
        if passed != tangle_slots {
            return Err(TangleError::Mismatch("gluing leaves a crossingless closed component".into()));
        }
        let mut out_crossings = Vec::new();
        for (ti, t) in tangles.iter().enumerate() {
            for c in 0..t.crossings.len() {
                let sign = signs[ti][c];
                let edges = [0, 1, 2, 3].map(|p| label_of[&(ti, End::Crossing(c, p))]);
                out_crossings.push(Crossing {
                    edges,
                    sign: Some(sign),
                });
            }
        }
        let boundary = (0..d.out().slots).map(|s| label_of[&(OUT, End::Boundary(s))]).collect();
        let glued = TangleDiagram::new(d.out().strands(), out_crossings, boundary)?;
        if glued.crossings.is_empty() && glued.boundary.is_empty() {
            return Err(TangleError::Mismatch("empty result".into()));
        }
        Ok(glued.canonical_labels())
    }

    /// Same tangle with edges renumbered `1, 2, ...` by first appearance
    /// (crossings in order, then boundary).
    pub fn canonical_labels(&self) -> TangleDiagram {
        let mut map = BTreeMap::new();
        let mut next = 1;
        let mut relabel = |l: usize| {
            *map.entry(l).or_insert_with(|| {
                let v = next;
                next += 1;
                v
            })
        };
        let crossings = self
            .crossings
            .iter()
            .map(|c| Crossing {
                edges: c.edges.map(&mut relabel),
                sign: c.sign,
            })
            .collect();
        let boundary = self.boundary.iter().map(|&l| relabel(l)).collect();
        TangleDiagram {
            k: self.k,
            crossings,
            boundary,
        }
    }

    /// Drop sign tokens that agree with the derived signs. When no
    /// orientation can be derived every token is kept.
    pub fn minimal_signs(&self) -> TangleDiagram {
        let mut t = self.clone();
        if let Ok(derived) = self.derived_signs() {
            for (c, d) in t.crossings.iter_mut().zip(derived) {
                if c.sign == Some(d) {
                    c.sign = None;
                }
            }
        }
        t
    }
}

impl fmt::Display for TangleDiagram {
    /// Text format; sign tokens only where they differ from the derived sign.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let t = self.minimal_signs();
        writeln!(f, "tangle k={}", t.k)?;
        for c in &t.crossings {
            let [a, b, cc, d] = c.edges;
            write!(f, "X {a} {b} {cc} {d}")?;
            if let Some(s) = c.sign {
                write!(f, " {}", s.token())?;
            }
            writeln!(f)?;
        }
        if t.k > 0 {
            write!(f, "B")?;
            for l in &t.boundary {
                write!(f, " {l}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

impl FromStr for TangleDiagram {
    type Err = TangleError;

    fn from_str(s: &str) -> Result<Self, TangleError> {
        let err = |line: usize, column: usize, message: String| TangleError::Parse {
            line,
            column,
            message,
        };
        let mut k = None;
        let mut crossings = Vec::new();
        let mut boundary: Option<Vec<usize>> = None;
        let mut last_line = 0;
        for (ln, raw) in s.lines().enumerate() {
            let line_no = ln + 1;
            last_line = line_no;
            let content = raw.split('#').next().unwrap_or("");
            // tokens with 1-based columns
            let mut tokens = Vec::new();
            let mut start = None;
            for (i, ch) in content.char_indices() {
                if ch.is_whitespace() {
                    if let Some(st) = start.take() {
                        tokens.push((st + 1, &content[st..i]));
                    }
                } else if start.is_none() {
                    start = Some(i);
                }
            }
            if let Some(st) = start {
                tokens.push((st + 1, &content[st..]));
            }
            let Some(&(col, head)) = tokens.first() else {
                continue;
            };
            let parse_label = |(c, tok): (usize, &str)| {
                tok.parse::<usize>()
                    .map_err(|_| err(line_no, c, format!("expected an edge label, found {tok:?}")))
            };
            match (k.is_some(), head) {
                (false, "tangle") => {
                    let (c, arg) = tokens
                        .get(1)
                        .copied()
                        .ok_or_else(|| err(line_no, col + 6, "expected k=<number>".into()))?;
                    let value = arg
                        .strip_prefix("k=")
                        .and_then(|v| v.parse::<usize>().ok())
                        .ok_or_else(|| err(line_no, c, format!("expected k=<number>, found {arg:?}")))?;
                    if let Some(&(c, extra)) = tokens.get(2) {
                        return Err(err(line_no, c, format!("unexpected {extra:?}")));
                    }
                    k = Some(value);
                }
                (false, _) => return Err(err(line_no, col, "expected header `tangle k=<k>`".into())),
                (true, "X") => {
                    if tokens.len() < 5 {
                        return Err(err(line_no, col, "a crossing needs four edge labels".into()));
                    }
                    let mut edges = [0; 4];
                    for (slot, tok) in edges.iter_mut().zip(&tokens[1..5]) {
                        *slot = parse_label(*tok)?;
                    }
                    let sign = match tokens.get(5) {
                        None => None,
                        Some(&(_, "+")) => Some(CrossingSign::Positive),
                        Some(&(_, "-")) => Some(CrossingSign::Negative),
                        Some(&(c, other)) => {
                            return Err(err(line_no, c, format!("expected `+` or `-`, found {other:?}")))
                        }
                    };
                    if let Some(&(c, extra)) = tokens.get(6) {
                        return Err(err(line_no, c, format!("unexpected {extra:?}")));
                    }
                    crossings.push(Crossing { edges, sign });
                }
                (true, "B") => {
                    if boundary.is_some() {
                        return Err(err(line_no, col, "second boundary line".into()));
                    }
                    boundary = Some(tokens[1..].iter().map(|t| parse_label(*t)).collect::<Result<_, _>>()?);
                }
                (true, "tangle") => return Err(err(line_no, col, "second header".into())),
                (true, other) => return Err(err(line_no, col, format!("unknown line type {other:?}"))),
            }
        }
        let k = k.ok_or_else(|| err(last_line.max(1), 1, "missing header `tangle k=<k>`".into()))?;
        let boundary = match boundary {
            Some(b) => b,
            None if k == 0 => Vec::new(),
            None => return Err(err(last_line.max(1), 1, "missing boundary line".into())),
        };
        TangleDiagram::new(k, crossings, boundary)
    }
}
