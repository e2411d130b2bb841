//! Sparse trivariate polynomials over Q, the raw material for the geometric
//! side of the story: cone quadrics, harmonic polynomials, and solid
//! harmonics all live in this ring.
//!
//! Terms are kept in a BTreeMap keyed by exponent triples, so iteration and
//! the line format are canonical. The line format writes every term as
//! `coeff x^i y^j z^k` (all exponents explicit, coefficients as `p` or
//! `p/q`) joined by ` + `, with the zero polynomial as `0`; `FromStr`
//! accepts exactly that grammar.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::Error;

/// Coordinate directions, used to pick variables and partials.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::X, Axis::Y, Axis::Z];

    fn index(self) -> usize {
        match self {
            Axis::X => 0,
            Axis::Y => 1,
            Axis::Z => 2,
        }
    }
}

/// Sparse polynomial in Q[x, y, z]. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct TriPoly {
    terms: BTreeMap<(u32, u32, u32), BigRational>,
}

impl TriPoly {
    pub fn zero() -> Self {
        TriPoly::default()
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        let mut p = TriPoly::zero();
        p.add_term((0, 0, 0), c);
        p
    }

    pub fn var(axis: Axis) -> Self {
        let mut exps = [0u32; 3];
        exps[axis.index()] = 1;
        Self::monomial((exps[0], exps[1], exps[2]), BigRational::one())
    }

    pub fn monomial(exps: (u32, u32, u32), c: BigRational) -> Self {
        let mut p = TriPoly::zero();
        p.add_term(exps, c);
        p
    }

    /// Add `c * x^i y^j z^k` in place, dropping the entry if it cancels.
    pub fn add_term(&mut self, exps: (u32, u32, u32), c: BigRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exps).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&exps);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in canonical (ascending exponent) order.
    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32, u32), &BigRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: (u32, u32, u32)) -> BigRational {
        self.terms
            .get(&exps)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn scale(&self, c: &BigRational) -> TriPoly {
        if c.is_zero() {
            return TriPoly::zero();
        }
        TriPoly {
            terms: self
                .terms
                .iter()
                .map(|(&e, v)| (e, v * c))
                .collect(),
        }
    }

    /// Total degree of the largest term, `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|&(i, j, k)| i + j + k).max()
    }

    /// `Some(d)` when every term has total degree d; `None` for mixed
    /// degrees and for the zero polynomial.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degrees = self.terms.keys().map(|&(i, j, k)| i + j + k);
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    pub fn partial(&self, axis: Axis) -> TriPoly {
        let mut out = TriPoly::zero();
        for (&(i, j, k), c) in &self.terms {
            let mut exps = [i, j, k];
            let e = exps[axis.index()];
            if e == 0 {
                continue;
            }
            exps[axis.index()] = e - 1;
            out.add_term(
                (exps[0], exps[1], exps[2]),
                c * BigRational::from(BigInt::from(e)),
            );
        }
        out
    }

    /// Sum of the three unmixed second partials.
    pub fn laplacian(&self) -> TriPoly {
        let mut out = TriPoly::zero();
        for axis in Axis::ALL {
            out = &out + &self.partial(axis).partial(axis);
        }
        out
    }

    pub fn eval(&self, x: &BigRational, y: &BigRational, z: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for (&(i, j, k), c) in &self.terms {
            acc += c * x.pow(i as i32) * y.pow(j as i32) * z.pow(k as i32);
        }
        acc
    }
}

impl std::ops::Add for &TriPoly {
    type Output = TriPoly;
    fn add(self, rhs: &TriPoly) -> TriPoly {
        let mut out = self.clone();
        for (&e, c) in &rhs.terms {
            out.add_term(e, c.clone());
        }
        out
    }
}

impl std::ops::Sub for &TriPoly {
    type Output = TriPoly;
    fn sub(self, rhs: &TriPoly) -> TriPoly {
        let mut out = self.clone();
        for (&e, c) in &rhs.terms {
            out.add_term(e, -c.clone());
        }
        out
    }
}

impl std::ops::Mul for &TriPoly {
    type Output = TriPoly;
    fn mul(self, rhs: &TriPoly) -> TriPoly {
        let mut out = TriPoly::zero();
        for (&(a, b, c), u) in &self.terms {
            for (&(d, e, g), v) in &rhs.terms {
                out.add_term((a + d, b + e, c + g), u * v);
            }
        }
        out
    }
}

impl std::ops::Neg for &TriPoly {
    type Output = TriPoly;
    fn neg(self) -> TriPoly {
        TriPoly {
            terms: self.terms.iter().map(|(&e, c)| (e, -c)).collect(),
        }
    }
}

impl fmt::Display for TriPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&(i, j, k), c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{c} x^{i} y^{j} z^{k}")?;
        }
        Ok(())
    }
}

fn parse_rational(tok: &str) -> Result<BigRational, Error> {
    let bad = || Error::Parse(format!("bad coefficient {tok:?}"));
    match tok.split_once('/') {
        Some((n, d)) => {
            let num = BigInt::from_str(n).map_err(|_| bad())?;
            let den = BigInt::from_str(d).map_err(|_| bad())?;
            if den.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {tok:?}")));
            }
            Ok(BigRational::new(num, den))
        }
        None => Ok(BigRational::from(BigInt::from_str(tok).map_err(|_| bad())?)),
    }
}

fn parse_exponent(tok: &str, var: char) -> Result<u32, Error> {
    tok.strip_prefix(var)
        .and_then(|rest| rest.strip_prefix('^'))
        .and_then(|digits| digits.parse().ok())
        .ok_or_else(|| Error::Parse(format!("expected {var}^<exp>, got {tok:?}")))
}

impl FromStr for TriPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<TriPoly, Error> {
        let s = s.trim();
        if s == "0" {
            return Ok(TriPoly::zero());
        }
        let mut poly = TriPoly::zero();
        for term in s.split(" + ") {
            let tokens: Vec<&str> = term.split_whitespace().collect();
            let [c, xi, yj, zk] = tokens[..] else {
                return Err(Error::Parse(format!(
                    "term {term:?} is not of the form `coeff x^i y^j z^k`"
                )));
            };
            poly.add_term(
                (
                    parse_exponent(xi, 'x')?,
                    parse_exponent(yj, 'y')?,
                    parse_exponent(zk, 'z')?,
                ),
                parse_rational(c)?,
            );
        }
        Ok(poly)
    }
}
