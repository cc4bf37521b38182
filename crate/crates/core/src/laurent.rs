//! Exact Laurent polynomials in one variable `q` over the integers.
//!
//! Besides ring arithmetic this module decides when a polynomial is
//! *alternating* (signs flip at every step of 2 in the exponent, interior
//! zero coefficients allowed) and computes its [`ParityClass`]: the residue
//! mod 4 shared by every exponent carrying a positive coefficient. Two
//! nonzero alternating polynomials have the same parity exactly when their
//! classes agree.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LaurentError {
    #[error("operation requires a nonzero polynomial")]
    Zero,
    #[error("polynomial is not alternating: {0}")]
    NotAlternating(String),
    #[error("{dividend} is not divisible by {divisor}")]
    NotDivisible { dividend: String, divisor: String },
    #[error("cannot parse polynomial {input:?}: {reason}")]
    Parse { input: String, reason: String },
}

/// Exact element of Z[q, q^-1]. Zero coefficients are never stored.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, BigInt>,
}

/// Residue mod 4 of the positively signed exponents of an alternating
/// polynomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ParityClass(u8);

impl ParityClass {
    pub fn new(residue: i64) -> Self {
        ParityClass(residue.rem_euclid(4) as u8)
    }

    pub fn residue(self) -> u8 {
        self.0
    }

    /// Class of the monomial `sign * q^exponent`.
    pub fn of_monomial(sign: i8, exponent: i64) -> Self {
        if sign > 0 {
            ParityClass::new(exponent)
        } else {
            ParityClass::new(exponent + 2)
        }
    }

    /// Shift by `delta` (mod 4).
    pub fn shifted(self, delta: i64) -> Self {
        ParityClass::new(self.0 as i64 + delta)
    }
}

impl fmt::Display for ParityClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A single term `sign * magnitude * q^exponent`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub sign: i8,
    pub magnitude: BigInt,
    pub exponent: i64,
}

impl Term {
    fn from_entry(exponent: i64, c: &BigInt) -> Self {
        Term {
            sign: if c.is_negative() { -1 } else { 1 },
            magnitude: c.abs(),
            exponent,
        }
    }

    pub fn parity_class(&self) -> ParityClass {
        ParityClass::of_monomial(self.sign, self.exponent)
    }
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    pub fn monomial(coeff: impl Into<BigInt>, exponent: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(coeff.into(), exponent);
        p
    }

    /// The value `q + q^-1` of a removed loop.
    pub fn loop_value() -> Self {
        Self::from_terms([(1, -1), (1, 1)])
    }

    /// Build from `(coefficient, exponent)` pairs; repeated exponents add up.
    pub fn from_terms<C: Into<BigInt>>(terms: impl IntoIterator<Item = (C, i64)>) -> Self {
        let mut p = Self::zero();
        for (c, e) in terms {
            p.add_term(c.into(), e);
        }
        p
    }

    fn add_term(&mut self, c: BigInt, e: i64) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(e).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, exponent: i64) -> BigInt {
        self.coeffs.get(&exponent).cloned().unwrap_or_default()
    }

    /// Stored `(exponent, coefficient)` pairs in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> + '_ {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn min_exponent(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_exponent(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    /// Multiply by `q^shift`.
    pub fn shift(&self, shift: i64) -> Self {
        LaurentPoly {
            coeffs: self
                .coeffs
                .iter()
                .map(|(e, c)| {
                    let e2 = e.checked_add(shift).expect("exponent overflow");
                    (e2, c.clone())
                })
                .collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Alternating in the sense of the normal form
    /// `(-1)^r q^t sum_j (-1)^j a_j q^{2j}` with `a_j >= 0`.
    /// The zero polynomial counts as alternating.
    pub fn is_alternating(&self) -> bool {
        let mut classes = self
            .coeffs
            .iter()
            .map(|(e, c)| Term::from_entry(*e, c).parity_class());
        match classes.next() {
            None => true,
            Some(first) => classes.all(|c| c == first),
        }
    }

    pub fn parity_class(&self) -> Result<ParityClass, LaurentError> {
        let (e, c) = self.coeffs.iter().next().ok_or(LaurentError::Zero)?;
        if !self.is_alternating() {
            return Err(LaurentError::NotAlternating(self.to_string()));
        }
        Ok(Term::from_entry(*e, c).parity_class())
    }

    /// Terms at the minimal and maximal stored exponents.
    pub fn leading_terms(&self) -> Result<(Term, Term), LaurentError> {
        let (lo_e, lo_c) = self.coeffs.iter().next().ok_or(LaurentError::Zero)?;
        let (hi_e, hi_c) = self.coeffs.iter().next_back().ok_or(LaurentError::Zero)?;
        Ok((Term::from_entry(*lo_e, lo_c), Term::from_entry(*hi_e, hi_c)))
    }

    /// Exact quotient `self / divisor`, or an error when the division leaves
    /// a remainder.
    pub fn div_exact(&self, divisor: &LaurentPoly) -> Result<LaurentPoly, LaurentError> {
        let (&d_lo, d_lead) = divisor.coeffs.iter().next().ok_or(LaurentError::Zero)?;
        let d_span = divisor.max_exponent().unwrap() - d_lo;
        let not_divisible = || LaurentError::NotDivisible {
            dividend: self.to_string(),
            divisor: divisor.to_string(),
        };
        let mut rem = self.clone();
        let mut quot = LaurentPoly::zero();
        while let Some((&r_lo, r_lead)) = rem.coeffs.iter().next() {
            if rem.max_exponent().unwrap() - r_lo < d_span {
                return Err(not_divisible());
            }
            let (q, r) = r_lead.div_rem(d_lead);
            if !r.is_zero() {
                return Err(not_divisible());
            }
            let step = LaurentPoly::monomial(q, r_lo - d_lo);
            rem = &rem - &(&step * divisor);
            quot = &quot + &step;
        }
        Ok(quot)
    }
}

impl From<i64> for LaurentPoly {
    fn from(c: i64) -> Self {
        LaurentPoly::monomial(c, 0)
    }
}

impl<'a> Add<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.coeffs {
            out.add_term(c.clone(), *e);
        }
        out
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: LaurentPoly) -> LaurentPoly {
        &self + &rhs
    }
}

impl<'a> Sub<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.coeffs {
            out.add_term(-c, *e);
        }
        out
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: LaurentPoly) -> LaurentPoly {
        &self - &rhs
    }
}

impl<'a> Mul<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (ea, ca) in &self.coeffs {
            for (eb, cb) in &rhs.coeffs {
                let e = ea.checked_add(*eb).expect("exponent overflow");
                out.add_term(ca * cb, e);
            }
        }
        out
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl std::iter::Sum for LaurentPoly {
    fn sum<I: Iterator<Item = LaurentPoly>>(iter: I) -> Self {
        iter.fold(LaurentPoly::zero(), |a, b| &a + &b)
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, magnitude: &BigInt, e: i64) -> fmt::Result {
    match e {
        0 => write!(f, "{magnitude}"),
        _ => {
            if !magnitude.is_one() {
                write!(f, "{magnitude}")?;
            }
            if e == 1 {
                write!(f, "q")
            } else {
                write!(f, "q^{e}")
            }
        }
    }
}

/// Canonical rendering, ascending exponents: `-q^-2 + q^-1`, `3 - 2q + q^3`.
impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.coeffs.iter().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            write_monomial(f, &c.abs(), *e)?;
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

impl FromStr for LaurentPoly {
    type Err = LaurentError;

    /// Accepts the canonical rendering and a little more: any term order,
    /// optional `*` between coefficient and `q`, free whitespace.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = |reason: &str| LaurentError::Parse {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(err("empty input"));
        }
        if compact == "0" {
            return Ok(LaurentPoly::zero());
        }
        // split into signed terms; a '-' right after '^' belongs to the exponent
        let mut terms = Vec::new();
        let mut current = String::new();
        let mut prev = None;
        for ch in compact.chars() {
            if (ch == '+' || ch == '-') && prev != Some('^') && !current.is_empty() {
                terms.push(std::mem::take(&mut current));
            }
            current.push(ch);
            prev = Some(ch);
        }
        terms.push(current);

        let mut poly = LaurentPoly::zero();
        for t in terms {
            let (negative, body) = match t.as_bytes().first() {
                Some(b'-') => (true, &t[1..]),
                Some(b'+') => (false, &t[1..]),
                _ => (false, &t[..]),
            };
            if body.is_empty() {
                return Err(err("dangling sign"));
            }
            let (coeff_str, exponent) = match body.find('q') {
                None => (body, 0),
                Some(pos) => {
                    let rest = &body[pos + 1..];
                    let e = if rest.is_empty() {
                        1
                    } else if let Some(exp) = rest.strip_prefix('^') {
                        exp.parse::<i64>().map_err(|_| err("bad exponent"))?
                    } else {
                        return Err(err("unexpected text after q"));
                    };
                    (body[..pos].trim_end_matches('*'), e)
                }
            };
            let mut coeff = if coeff_str.is_empty() {
                BigInt::one()
            } else {
                coeff_str
                    .parse::<BigInt>()
                    .map_err(|_| err("bad coefficient"))?
            };
            if coeff.is_negative() {
                return Err(err("sign inside coefficient"));
            }
            if negative {
                coeff = -coeff;
            }
            poly.add_term(coeff, exponent);
        }
        Ok(poly)
    }
}

/// JSON form: object mapping exponent strings to integer coefficients,
/// ascending exponent order, e.g. `{"-2":-1,"-1":1}`.
impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut map = serializer.serialize_map(Some(self.coeffs.len()))?;
        for (e, c) in &self.coeffs {
            let number: serde_json::Number = c
                .to_string()
                .parse()
                .map_err(serde::ser::Error::custom)?;
            map.serialize_entry(&e.to_string(), &number)?;
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let raw: BTreeMap<String, serde_json::Number> = BTreeMap::deserialize(deserializer)?;
        let mut poly = LaurentPoly::zero();
        for (e, c) in raw {
            let e: i64 = e.parse().map_err(D::Error::custom)?;
            let c: BigInt = c.to_string().parse().map_err(D::Error::custom)?;
            if c.is_zero() {
                return Err(D::Error::custom("zero coefficients are not stored"));
            }
            poly.add_term(c, e);
        }
        Ok(poly)
    }
}
