//! Elements of the oriented skein module: Laurent-polynomial combinations of
//! loop-free smoothings with a fixed number of strands.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::laurent::{LaurentPoly, ParityClass};
use crate::planar::{PlanarArcDiagram, PlanarError};
use crate::smoothing::{OrientedSmoothing, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SkeinError {
    #[error("term mismatch: {0}")]
    Mismatch(String),
    #[error("closure depth {depth} out of range for {k} strands")]
    DepthOutOfRange { depth: usize, k: usize },
    #[error(transparent)]
    Planar(#[from] PlanarError),
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SkeinElement {
    k: usize,
    in_parity: u8,
    terms: BTreeMap<OrientedSmoothing, LaurentPoly>,
}

/// Why an element fails to be alternating.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlternationFailure {
    Coefficient {
        smoothing: OrientedSmoothing,
        coeff: LaurentPoly,
    },
    /// Parity classes of the two coefficients do not follow the rotation
    /// numbers: `class_a - class_b` should be `-(R_a - R_b)` mod 4.
    Pair {
        first: OrientedSmoothing,
        second: OrientedSmoothing,
        classes: (ParityClass, ParityClass),
        rotations: (Rational, Rational),
    },
    MissingMinimal,
    MissingMaximal,
}

impl fmt::Display for AlternationFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlternationFailure::Coefficient { smoothing, coeff } => {
                write!(f, "coefficient {coeff} of {smoothing} is not alternating")
            }
            AlternationFailure::Pair {
                first,
                second,
                classes,
                rotations,
            } => write!(
                f,
                "terms {first} (class {}, R = {}) and {second} (class {}, R = {}) break the parity law",
                classes.0, rotations.0, classes.1, rotations.1
            ),
            AlternationFailure::MissingMinimal => write!(f, "no term on a minimal smoothing"),
            AlternationFailure::MissingMaximal => write!(f, "no term on a maximal smoothing"),
        }
    }
}

/// Result of the coherence check: how many distinct closures were examined
/// at each depth and the first failing closure, if any.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoherenceReport {
    pub census: Vec<usize>,
    pub failure: Option<(usize, SkeinElement, AlternationFailure)>,
}

impl CoherenceReport {
    pub fn is_coherent(&self) -> bool {
        self.failure.is_none()
    }
}

impl SkeinElement {
    pub fn zero(k: usize, in_parity: u8) -> Self {
        SkeinElement {
            k,
            in_parity,
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(smoothing: OrientedSmoothing, coeff: LaurentPoly) -> Self {
        let mut e = Self::zero(smoothing.k(), smoothing.in_parity());
        e.add_term(smoothing, coeff);
        e
    }

    /// Remove loops (each worth `q + q^-1`, whatever its orientation),
    /// combine like terms and drop zero coefficients.
    pub fn normalize(
        k: usize,
        in_parity: u8,
        raw: impl IntoIterator<Item = (OrientedSmoothing, LaurentPoly)>,
    ) -> Result<Self, SkeinError> {
        let mut e = Self::zero(k, in_parity);
        for (s, c) in raw {
            if s.k() != k || s.in_parity() != in_parity {
                return Err(SkeinError::Mismatch(format!(
                    "smoothing {s} does not have k={k}, parity {in_parity}"
                )));
            }
            e.add_term(s, c);
        }
        Ok(e)
    }

    fn add_term(&mut self, s: OrientedSmoothing, c: LaurentPoly) {
        let c = if s.loops() > 0 {
            &c * &LaurentPoly::loop_value().pow(s.loops())
        } else {
            c
        };
        if c.is_zero() {
            return;
        }
        let key = s.without_loops();
        let sum = match self.terms.remove(&key) {
            Some(old) => &old + &c,
            None => c,
        };
        if !sum.is_zero() {
            self.terms.insert(key, sum);
        }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn in_parity(&self) -> u8 {
        self.in_parity
    }

    pub fn terms(&self) -> impl Iterator<Item = (&OrientedSmoothing, &LaurentPoly)> + '_ {
        self.terms.iter()
    }

    pub fn coeff(&self, s: &OrientedSmoothing) -> LaurentPoly {
        self.terms.get(s).cloned().unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &LaurentPoly) -> Self {
        let mut e = Self::zero(self.k, self.in_parity);
        for (s, a) in &self.terms {
            e.add_term(s.clone(), a * c);
        }
        e
    }

    fn check_compatible(&self, other: &Self) -> Result<(), SkeinError> {
        if self.k != other.k || self.in_parity != other.in_parity {
            return Err(SkeinError::Mismatch(format!(
                "cannot combine k={} parity {} with k={} parity {}",
                self.k, self.in_parity, other.k, other.in_parity
            )));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, SkeinError> {
        self.check_compatible(other)?;
        let mut e = self.clone();
        for (s, c) in &other.terms {
            e.add_term(s.clone(), c.clone());
        }
        Ok(e)
    }

    /// Insert one element per input disc of `d` and expand multilinearly.
    pub fn apply_operator(d: &PlanarArcDiagram, elements: &[&SkeinElement]) -> Result<Self, SkeinError> {
        if elements.len() != d.input_count() {
            return Err(SkeinError::Mismatch(format!(
                "diagram has {} inputs, got {} elements",
                d.input_count(),
                elements.len()
            )));
        }
        for (i, (e, spec)) in elements.iter().zip(d.inputs()).enumerate() {
            if 2 * e.k != spec.slots || e.in_parity != spec.parity {
                return Err(SkeinError::Mismatch(format!(
                    "input {} expects {} slots with parity {}, element has k={} parity {}",
                    i + 1,
                    spec.slots,
                    spec.parity,
                    e.k,
                    e.in_parity
                )));
            }
        }
        let out = d.out();
        if out.slots == 0 {
            return Err(SkeinError::Mismatch("operator has no output strands".into()));
        }
        let mut result = Self::zero(out.strands(), out.parity);
        let lists: Vec<Vec<(&OrientedSmoothing, &LaurentPoly)>> =
            elements.iter().map(|e| e.terms.iter().collect()).collect();
        if lists.iter().any(|l| l.is_empty()) {
            return Ok(result);
        }
        let mut index = vec![0usize; lists.len()];
        loop {
            let tuple: Vec<OrientedSmoothing> =
                index.iter().zip(&lists).map(|(&i, l)| l[i].0.clone()).collect();
            let coeff = index
                .iter()
                .zip(&lists)
                .fold(LaurentPoly::one(), |acc, (&i, l)| &acc * l[i].1);
            let s = d.apply(&tuple)?;
            result.add_term(s, coeff);
            // odometer
            let mut pos = 0;
            loop {
                if pos == lists.len() {
                    return Ok(result);
                }
                index[pos] += 1;
                if index[pos] < lists[pos].len() {
                    break;
                }
                index[pos] = 0;
                pos += 1;
            }
        }
    }

    /// Close points `j`, `j + 1` with a basic unary operator (the curl
    /// outside the disc), numbering the result from old point `j + 2`.
    pub fn close_adjacent(&self, j: usize) -> Result<Self, SkeinError> {
        if self.k < 2 || j >= 2 * self.k {
            return Err(SkeinError::Mismatch(format!(
                "cannot close points {j}, {} of a {}-strand element",
                j + 1,
                self.k
            )));
        }
        let parity = ((self.in_parity as usize + j) % 2) as u8;
        let mut e = Self::zero(self.k - 1, parity);
        for (s, c) in &self.terms {
            e.add_term(s.close_adjacent(j), c.clone());
        }
        Ok(e)
    }

    /// Every element obtained by closing one adjacent pair.
    pub fn unary_closures(&self) -> Vec<Self> {
        if self.k < 2 {
            return Vec::new();
        }
        let set: BTreeSet<Self> = (0..2 * self.k)
            .map(|j| self.close_adjacent(j).expect("legal closure"))
            .collect();
        set.into_iter().collect()
    }

    /// All distinct elements reached by `depth` successive unary closures.
    pub fn partial_closures(&self, depth: usize) -> Result<Vec<Self>, SkeinError> {
        if depth >= self.k.max(1) {
            return Err(SkeinError::DepthOutOfRange { depth, k: self.k });
        }
        let mut level: BTreeSet<Self> = BTreeSet::from([self.clone()]);
        for _ in 0..depth {
            level = level.iter().flat_map(|e| e.unary_closures()).collect();
        }
        Ok(level.into_iter().collect())
    }

    /// First violation of the alternating-element definition, if any.
    pub fn alternation_failure(&self, strict: bool) -> Option<AlternationFailure> {
        let mut reference: Option<(&OrientedSmoothing, ParityClass, Rational)> = None;
        for (s, c) in &self.terms {
            let class = match c.parity_class() {
                Ok(class) => class,
                Err(_) => {
                    return Some(AlternationFailure::Coefficient {
                        smoothing: s.clone(),
                        coeff: c.clone(),
                    })
                }
            };
            let r = s.rotation_number();
            match reference {
                None => reference = Some((s, class, r)),
                Some((s0, class0, r0)) => {
                    let diff = r - r0;
                    let lawful = diff.is_integer()
                        && ParityClass::new(class.residue() as i64 - class0.residue() as i64)
                            == ParityClass::new(-diff.to_integer());
                    if !lawful {
                        return Some(AlternationFailure::Pair {
                            first: s0.clone(),
                            second: s.clone(),
                            classes: (class0, class),
                            rotations: (r0, r),
                        });
                    }
                }
            }
        }
        if strict {
            if !self.terms.keys().any(|s| s.is_minimal()) {
                return Some(AlternationFailure::MissingMinimal);
            }
            if !self.terms.keys().any(|s| s.is_maximal()) {
                return Some(AlternationFailure::MissingMaximal);
            }
        }
        None
    }

    pub fn is_alternating_element(&self, strict: bool) -> bool {
        self.alternation_failure(strict).is_none()
    }

    /// Check every partial closure at every depth `0..k`, stopping at the
    /// first non-alternating one.
    pub fn coherence_report(&self) -> CoherenceReport {
        let mut census = Vec::new();
        let mut level: BTreeSet<Self> = BTreeSet::from([self.clone()]);
        for depth in 0..self.k.max(1) {
            if depth > 0 {
                level = level.iter().flat_map(|e| e.unary_closures()).collect();
            }
            census.push(level.len());
            for e in &level {
                if let Some(why) = e.alternation_failure(false) {
                    return CoherenceReport {
                        census,
                        failure: Some((depth, e.clone(), why)),
                    };
                }
            }
        }
        CoherenceReport {
            census,
            failure: None,
        }
    }

    pub fn is_coherently_alternating(&self) -> bool {
        self.coherence_report().is_coherent()
    }
}

impl Add for &SkeinElement {
    type Output = SkeinElement;
    /// Panics on mismatched strand counts; see [`SkeinElement::try_add`].
    fn add(self, rhs: &SkeinElement) -> SkeinElement {
        self.try_add(rhs).expect("compatible skein elements")
    }
}

impl Neg for &SkeinElement {
    type Output = SkeinElement;
    fn neg(self) -> SkeinElement {
        self.scale(&LaurentPoly::from(-1))
    }
}

impl Sub for &SkeinElement {
    type Output = SkeinElement;
    fn sub(self, rhs: &SkeinElement) -> SkeinElement {
        self + &(-rhs)
    }
}

impl fmt::Debug for SkeinElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// `(A_0)[σ_0] + (A_1)[σ_1] + ...` in canonical term order; `0` when empty.
impl fmt::Display for SkeinElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (s, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c}){s}")?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    smoothing: OrientedSmoothing,
    coeff: LaurentPoly,
}

#[derive(Serialize, Deserialize)]
struct ElementRepr {
    k: usize,
    parity: u8,
    terms: Vec<TermRepr>,
}

impl Serialize for SkeinElement {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        ElementRepr {
            k: self.k,
            parity: self.in_parity,
            terms: self
                .terms
                .iter()
                .map(|(s, c)| TermRepr {
                    smoothing: s.clone(),
                    coeff: c.clone(),
                })
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for SkeinElement {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let r = ElementRepr::deserialize(deserializer)?;
        SkeinElement::normalize(r.k, r.parity, r.terms.into_iter().map(|t| (t.smoothing, t.coeff)))
            .map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::planar::basic_unary;
    use crate::smoothing::enumerate_smoothings;

    fn p(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    fn p1() -> SkeinElement {
        SkeinElement::normalize(
            2,
            0,
            [
                (OrientedSmoothing::minimal(2, 0), p("-q^-2")),
                (OrientedSmoothing::maximal(2, 0), p("q^-1")),
            ],
        )
        .unwrap()
    }

    #[test]
    fn loops_become_factors() {
        let s = OrientedSmoothing::minimal(1, 0);
        let e = SkeinElement::normalize(1, 0, [(s.clone().with_loops(1, 0), LaurentPoly::one())]).unwrap();
        assert_eq!(e.coeff(&s), LaurentPoly::loop_value());
        let e = SkeinElement::normalize(1, 0, [(s.clone().with_loops(0, 2), LaurentPoly::one())]).unwrap();
        assert_eq!(e.coeff(&s), LaurentPoly::loop_value().pow(2));
    }

    #[test]
    fn cancellation_empties() {
        let s = OrientedSmoothing::minimal(2, 1);
        let e = SkeinElement::normalize(2, 1, [(s.clone(), p("q - 3")), (s, p("3 - q"))]).unwrap();
        assert!(e.is_empty());
        assert_eq!(e.to_string(), "0");
    }

    #[test]
    fn mismatched_terms_rejected() {
        let r = SkeinElement::normalize(2, 0, [(OrientedSmoothing::minimal(2, 1), p("1"))]);
        assert!(matches!(r, Err(SkeinError::Mismatch(_))));
    }

    #[test]
    fn fast_closure_matches_diagram_action() {
        for k in 2..=5 {
            for par in 0..2u8 {
                for j in 0..2 * k {
                    let u = basic_unary(k, j, par).unwrap();
                    for s in enumerate_smoothings(k, par) {
                        assert_eq!(s.close_adjacent(j), u.apply(std::slice::from_ref(&s)).unwrap(), "{s} at {j}");
                    }
                }
            }
        }
    }

    #[test]
    fn p1_alternating_and_sign_flip_is_not() {
        assert!(p1().is_alternating_element(false));
        assert!(p1().is_alternating_element(true));
        let flipped = SkeinElement::normalize(
            2,
            0,
            [
                (OrientedSmoothing::minimal(2, 0), p("q^-2")),
                (OrientedSmoothing::maximal(2, 0), p("q^-1")),
            ],
        )
        .unwrap();
        assert!(matches!(
            flipped.alternation_failure(false),
            Some(AlternationFailure::Pair { .. })
        ));
        let report = flipped.coherence_report();
        assert_eq!(report.failure.as_ref().map(|f| f.0), Some(0));
    }

    #[test]
    fn p1_closure_is_the_arc() {
        let arc = SkeinElement::monomial(OrientedSmoothing::minimal(1, 1), LaurentPoly::one());
        let closed = p1().close_adjacent(1).unwrap();
        assert_eq!(closed, arc);
        assert!(p1().unary_closures().contains(&arc));
        assert_eq!(p1().partial_closures(0).unwrap(), vec![p1()]);
        assert!(p1().partial_closures(2).is_err());
        assert!(p1().is_coherently_alternating());
    }

    #[test]
    fn apply_operator_agrees_with_fast_closure() {
        let u = basic_unary(2, 3, 0).unwrap();
        assert_eq!(
            SkeinElement::apply_operator(&u, &[&p1()]).unwrap(),
            p1().close_adjacent(3).unwrap()
        );
    }

    #[test]
    fn json_round_trip() {
        let json = serde_json::to_string(&p1()).unwrap();
        assert_eq!(
            json,
            r#"{"k":2,"parity":0,"terms":[{"smoothing":{"k":2,"in_parity":0,"pairs":[[0,1],[2,3]]},"coeff":{"-2":-1}},{"smoothing":{"k":2,"in_parity":0,"pairs":[[0,3],[2,1]]},"coeff":{"-1":1}}]}"#
        );
        let back: SkeinElement = serde_json::from_str(&json).unwrap();
        assert_eq!(back, p1());
    }
}
