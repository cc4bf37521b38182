//! Oriented crossingless smoothings and their rotation numbers.
//!
//! Boundary points of a `k`-strand smoothing are numbered `0..2k`
//! counterclockwise. Orientations alternate around the boundary, so a single
//! bit says which points are in-points: with `in_parity = 0` the even points
//! are where strands start. A strand is stored as `(in, out)`.

use std::collections::BTreeSet;
use std::fmt;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Exact rational number used for rotation numbers.
pub type Rational = Ratio<i64>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SmoothingError {
    #[error("invalid smoothing: {}", .0.join("; "))]
    Invalid(Vec<String>),
    #[error("({0}, {1}) is not a strand of this smoothing")]
    UnknownStrand(usize, usize),
    #[error("exchanging ends of ({0}, {1}) and ({2}, {3}) produces crossing strands")]
    CrossingExchange(usize, usize, usize, usize),
}

/// Sign of a region: positive when its boundary is oriented counterclockwise.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RegionSign {
    Positive,
    Negative,
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "SmoothingRepr", into = "SmoothingRepr")]
pub struct OrientedSmoothing {
    k: usize,
    in_parity: u8,
    /// Strands `(in, out)` sorted by in-point.
    pairs: Vec<(usize, usize)>,
    pos_loops: u32,
    neg_loops: u32,
}

#[derive(Serialize, Deserialize)]
struct SmoothingRepr {
    k: usize,
    in_parity: u8,
    pairs: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "is_zero")]
    pos_loops: u32,
    #[serde(default, skip_serializing_if = "is_zero")]
    neg_loops: u32,
}

fn is_zero(n: &u32) -> bool {
    *n == 0
}

impl TryFrom<SmoothingRepr> for OrientedSmoothing {
    type Error = SmoothingError;
    fn try_from(r: SmoothingRepr) -> Result<Self, Self::Error> {
        let s = OrientedSmoothing::new(r.k, r.in_parity, r.pairs.iter().map(|p| (p[0], p[1])))?;
        Ok(s.with_loops(r.pos_loops, r.neg_loops))
    }
}

impl From<OrientedSmoothing> for SmoothingRepr {
    fn from(s: OrientedSmoothing) -> Self {
        SmoothingRepr {
            k: s.k,
            in_parity: s.in_parity,
            pairs: s.pairs.iter().map(|&(a, b)| [a, b]).collect(),
            pos_loops: s.pos_loops,
            neg_loops: s.neg_loops,
        }
    }
}

fn chords_cross((a, b): (usize, usize), (c, d): (usize, usize)) -> bool {
    let (lo, hi) = (a.min(b), a.max(b));
    let inside = |x: usize| lo < x && x < hi;
    inside(c) != inside(d)
}

impl OrientedSmoothing {
    /// Validated constructor.
    pub fn new(
        k: usize,
        in_parity: u8,
        pairs: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, SmoothingError> {
        let s = Self::from_parts(k, in_parity, pairs);
        let problems = s.diagnostics();
        if problems.is_empty() {
            Ok(s)
        } else {
            Err(SmoothingError::Invalid(problems))
        }
    }

    /// Unvalidated constructor; pair with [`validate`](Self::validate).
    pub fn from_parts(k: usize, in_parity: u8, pairs: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut pairs: Vec<_> = pairs.into_iter().collect();
        pairs.sort_unstable();
        OrientedSmoothing {
            k,
            in_parity,
            pairs,
            pos_loops: 0,
            neg_loops: 0,
        }
    }

    pub fn with_loops(mut self, pos_loops: u32, neg_loops: u32) -> Self {
        self.pos_loops = pos_loops;
        self.neg_loops = neg_loops;
        self
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn in_parity(&self) -> u8 {
        self.in_parity
    }

    pub fn boundary_len(&self) -> usize {
        2 * self.k
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
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

    /// Same smoothing with its loops dropped.
    pub fn without_loops(&self) -> Self {
        self.clone().with_loops(0, 0)
    }

    pub fn is_in_point(&self, point: usize) -> bool {
        point % 2 == self.in_parity as usize
    }

    /// The point joined to `point` by a strand.
    pub fn partner(&self, point: usize) -> usize {
        self.pairs
            .iter()
            .find_map(|&(a, b)| {
                if a == point {
                    Some(b)
                } else if b == point {
                    Some(a)
                } else {
                    None
                }
            })
            .expect("point on the boundary")
    }

    /// Every violated invariant, in a human-readable form.
    pub fn diagnostics(&self) -> Vec<String> {
        let mut out = Vec::new();
        let n = 2 * self.k;
        if self.k == 0 {
            out.push("k must be positive".to_string());
        }
        if self.in_parity > 1 {
            out.push(format!("in_parity must be 0 or 1, got {}", self.in_parity));
        }
        if self.pairs.len() != self.k {
            out.push(format!("expected {} strands, found {}", self.k, self.pairs.len()));
        }
        let mut seen = BTreeSet::new();
        for &(a, b) in &self.pairs {
            for p in [a, b] {
                if p >= n {
                    out.push(format!("point {p} is outside 0..{n}"));
                } else if !seen.insert(p) {
                    out.push(format!("point {p} is used twice"));
                }
            }
            if a < n && !self.is_in_point(a) {
                out.push(format!("strand ({a}, {b}) starts at out-point {a}"));
            }
            if b < n && self.is_in_point(b) {
                out.push(format!("strand ({a}, {b}) ends at in-point {b}"));
            }
        }
        for (i, &s) in self.pairs.iter().enumerate() {
            for &t in &self.pairs[i + 1..] {
                if chords_cross(s, t) {
                    out.push(format!("strands {s:?} and {t:?} cross"));
                }
            }
        }
        out
    }

    pub fn validate(&self) -> bool {
        self.diagnostics().is_empty()
    }

    fn find_strand(&self, strand: (usize, usize)) -> Result<(), SmoothingError> {
        if self.pairs.contains(&strand) {
            Ok(())
        } else {
            Err(SmoothingError::UnknownStrand(strand.0, strand.1))
        }
    }

    /// `((b - a) mod 2k - k) / 2k` for the strand `(a, b)`.
    pub fn strand_rotation(&self, strand: (usize, usize)) -> Result<Rational, SmoothingError> {
        self.find_strand(strand)?;
        Ok(self.rotation_of(strand))
    }

    fn rotation_of(&self, (a, b): (usize, usize)) -> Rational {
        let n = 2 * self.k as i64;
        let steps = (b as i64 - a as i64).rem_euclid(n);
        Rational::new(steps - self.k as i64, n)
    }

    /// Sum of strand rotations, plus one per counterclockwise loop and
    /// minus one per clockwise loop.
    pub fn rotation_number(&self) -> Rational {
        let strands: Rational = self.pairs.iter().map(|&s| self.rotation_of(s)).sum();
        strands + Rational::from_integer(self.pos_loops as i64 - self.neg_loops as i64)
    }

    /// Every strand ends immediately clockwise of where it starts and every
    /// loop is clockwise.
    pub fn is_minimal(&self) -> bool {
        let n = 2 * self.k;
        self.pos_loops == 0 && self.pairs.iter().all(|&(a, b)| (b + n - a) % n == 1)
    }

    /// Mirror of [`is_minimal`](Self::is_minimal).
    pub fn is_maximal(&self) -> bool {
        let n = 2 * self.k;
        self.neg_loops == 0 && self.pairs.iter().all(|&(a, b)| (b + n - a) % n == n - 1)
    }

    /// Replace strands `(i1, j1)`, `(i2, j2)` by `(i1, j2)`, `(i2, j1)`.
    pub fn exchange_ends(
        &self,
        first: (usize, usize),
        second: (usize, usize),
    ) -> Result<OrientedSmoothing, SmoothingError> {
        self.find_strand(first)?;
        self.find_strand(second)?;
        if first == second {
            return Err(SmoothingError::UnknownStrand(second.0, second.1));
        }
        let (i1, j1) = first;
        let (i2, j2) = second;
        let pairs = self
            .pairs
            .iter()
            .filter(|&&p| p != first && p != second)
            .copied()
            .chain([(i1, j2), (i2, j1)]);
        let out = Self::from_parts(self.k, self.in_parity, pairs)
            .with_loops(self.pos_loops, self.neg_loops);
        if chords_cross((i1, j2), (i2, j1)) || !out.validate() {
            return Err(SmoothingError::CrossingExchange(i1, j1, i2, j2));
        }
        Ok(out)
    }

    /// Regions of the loop-free picture, each given by the strands on its
    /// boundary and its sign.
    ///
    /// The region holding the boundary arc between points `p` and `p+1`
    /// continues along the strand at `p+1`; it lies to the left of that
    /// strand (positive) exactly when `p+1` is an in-point.
    pub fn regions(&self) -> Vec<(RegionSign, Vec<(usize, usize)>)> {
        let n = 2 * self.k;
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut strands = Vec::new();
            let mut gap = start;
            while !seen[gap] {
                seen[gap] = true;
                let next_point = (gap + 1) % n;
                let other = self.partner(next_point);
                strands.push(self.strand_at(next_point));
                gap = other;
            }
            strands.sort_unstable();
            strands.dedup();
            let sign = if self.is_in_point((start + 1) % n) {
                RegionSign::Positive
            } else {
                RegionSign::Negative
            };
            out.push((sign, strands));
        }
        out
    }

    /// Sign of a region bounded by both strands, if there is one.
    pub fn shared_region(&self, first: (usize, usize), second: (usize, usize)) -> Option<RegionSign> {
        self.regions()
            .into_iter()
            .find(|(_, strands)| strands.contains(&first) && strands.contains(&second))
            .map(|(sign, _)| sign)
    }

    fn strand_at(&self, point: usize) -> (usize, usize) {
        *self
            .pairs
            .iter()
            .find(|&&(a, b)| a == point || b == point)
            .expect("point on the boundary")
    }

    /// Renumber the boundary so that old point `p` becomes `p - shift`.
    pub fn rotated(&self, shift: usize) -> Self {
        let n = 2 * self.k;
        let m = |p: usize| (p + n - shift % n) % n;
        let parity = (self.in_parity as usize + shift) % 2;
        Self::from_parts(self.k, parity as u8, self.pairs.iter().map(|&(a, b)| (m(a), m(b))))
            .with_loops(self.pos_loops, self.neg_loops)
    }

    /// Join points `j` and `j + 1` by a curl outside the disc. The result
    /// has `k - 1` strands, numbered so that old point `j + 2` becomes 0.
    /// A strand running between the two points becomes a loop, clockwise
    /// exactly when `j` is an in-point.
    pub fn close_adjacent(&self, j: usize) -> Self {
        assert!(self.k >= 2, "closing needs at least two strands");
        let n = 2 * self.k;
        let (a, b) = (j % n, (j + 1) % n);
        let (in_pt, out_pt) = if self.is_in_point(a) { (a, b) } else { (b, a) };
        let (mut pos, mut neg) = (self.pos_loops, self.neg_loops);
        let mut pairs = Vec::with_capacity(self.k - 1);
        if self.pairs.contains(&(in_pt, out_pt)) {
            if in_pt == a {
                neg += 1;
            } else {
                pos += 1;
            }
            pairs.extend(self.pairs.iter().copied().filter(|&p| p != (in_pt, out_pt)));
        } else {
            let x = self.partner(out_pt);
            let y = self.partner(in_pt);
            pairs.extend(
                self.pairs
                    .iter()
                    .copied()
                    .filter(|&(s, t)| t != out_pt && s != in_pt),
            );
            pairs.push((x, y));
        }
        let m = |p: usize| (p + 2 * n - a - 2) % n;
        let parity = ((self.in_parity as usize + a) % 2) as u8;
        Self::from_parts(self.k - 1, parity, pairs.into_iter().map(|(s, t)| (m(s), m(t))))
            .with_loops(pos, neg)
    }

    pub fn minimal(k: usize, in_parity: u8) -> Self {
        let n = 2 * k;
        let p = in_parity as usize;
        Self::from_parts(k, in_parity, (0..k).map(|i| (2 * i + p, (2 * i + p + 1) % n)))
    }

    pub fn maximal(k: usize, in_parity: u8) -> Self {
        let n = 2 * k;
        let p = in_parity as usize;
        Self::from_parts(k, in_parity, (0..k).map(|i| (2 * i + p, (2 * i + p + n - 1) % n)))
    }
}

impl fmt::Debug for OrientedSmoothing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// `[k=2 p=0 (0,1)(2,3)]`, with `+n`/`-n` loop counts when present.
impl fmt::Display for OrientedSmoothing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[k={} p={} ", self.k, self.in_parity)?;
        for (a, b) in &self.pairs {
            write!(f, "({a},{b})")?;
        }
        if self.pos_loops > 0 {
            write!(f, " +{}", self.pos_loops)?;
        }
        if self.neg_loops > 0 {
            write!(f, " -{}", self.neg_loops)?;
        }
        write!(f, "]")
    }
}

/// All non-crossing perfect matchings of `lo..hi` (an even-length range).
fn matchings(lo: usize, hi: usize) -> Vec<Vec<(usize, usize)>> {
    if lo >= hi {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    let mut j = lo + 1;
    while j < hi {
        for inner in matchings(lo + 1, j) {
            for outer in matchings(j + 1, hi) {
                let mut m = Vec::with_capacity((hi - lo) / 2);
                m.push((lo, j));
                m.extend_from_slice(&inner);
                m.extend_from_slice(&outer);
                out.push(m);
            }
        }
        j += 2;
    }
    out
}

/// Loop-free oriented smoothings on `2k` points, in canonical order.
pub fn enumerate_smoothings(k: usize, in_parity: u8) -> Vec<OrientedSmoothing> {
    assert!(k >= 1, "k must be positive");
    let mut out: Vec<_> = matchings(0, 2 * k)
        .into_iter()
        .map(|m| {
            let oriented = m.into_iter().map(|(a, b)| {
                if a % 2 == in_parity as usize {
                    (a, b)
                } else {
                    (b, a)
                }
            });
            OrientedSmoothing::from_parts(k, in_parity, oriented)
        })
        .collect();
    out.sort();
    out
}
