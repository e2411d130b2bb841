//! Ground-truth oracle for the divisibility question: associated Legendre
//! functions built as exact rational polynomials, and the direct test of
//! whether P2 divides P_l^m.
//!
//! Construction is by the classical derivative route, P_l^m proportional to
//! (1-x^2)^(m/2) * d^m/dx^m P_l, which keeps everything inside Q[x] and stays
//! independent of the transform pipeline in [`crate::holt`]. For odd m the
//! stored polynomial part is P_l^m with one factor sqrt(1-x^2) removed, so
//! "P2 divides" always refers to an honest polynomial. Divisibility by
//! P2 = (3x^2-1)/2 is decided by evaluating the even part at x^2 = 1/3,
//! which never leaves the rationals.
//!
//! Normalization: comparisons against other representations (e.g. the
//! integral expansion through [`cos_power_coeff`]) hold up to one nonzero
//! rational constant per (l, m); divisibility is insensitive to it.

use num_bigint::BigInt;
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

/// Dense univariate polynomial with exact rational coefficients.
///
/// Trailing zero coefficients are stripped on construction; the zero
/// polynomial has an empty coefficient vector and degree `None`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniPoly {
    coeffs: Vec<BigRational>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c])
    }

    pub fn x() -> Self {
        Self::monomial(1, BigRational::one())
    }

    pub fn monomial(degree: usize, c: BigRational) -> Self {
        let mut coeffs = vec![BigRational::zero(); degree + 1];
        coeffs[degree] = c;
        Self::new(coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with `None` standing in for "minus infinity" on zero.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of x^i (zero beyond the stored range).
    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn scale(&self, c: &BigRational) -> UniPoly {
        if c.is_zero() {
            return UniPoly::zero();
        }
        UniPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn derivative(&self) -> UniPoly {
        if self.coeffs.len() <= 1 {
            return UniPoly::zero();
        }
        UniPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigRational::from(BigInt::from(i)))
                .collect(),
        )
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn pow(&self, e: u32) -> UniPoly {
        let mut acc = UniPoly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &UniPoly) -> (UniPoly, UniPoly) {
        let d_deg = divisor.degree().expect("division by the zero polynomial");
        let d_lead = divisor.coeffs[d_deg].clone();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![
            BigRational::zero();
            self.coeffs.len().saturating_sub(d_deg)
        ];
        while rem.len() > d_deg {
            let r_deg = rem.len() - 1;
            let factor = rem[r_deg].clone() / d_lead.clone();
            if !factor.is_zero() {
                quot[r_deg - d_deg] = factor.clone();
                for (i, dc) in divisor.coeffs.iter().enumerate() {
                    let idx = r_deg - d_deg + i;
                    rem[idx] = rem[idx].clone() - &factor * dc;
                }
            }
            rem.pop();
        }
        (UniPoly::new(quot), UniPoly::new(rem))
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..len).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..len).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut coeffs =
            vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        UniPoly::new(coeffs)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c} x")?,
                _ => write!(f, "{c} x^{i}")?,
            }
        }
        Ok(())
    }
}

/// The exact value of (1/pi) * integral_0^pi cos^n(phi) cos(m*phi) dphi:
/// 2^(-n) * C(n, (n+m)/2) when m <= n and m = n (mod 2), zero otherwise.
pub fn cos_power_coeff(n: u64, m: u64) -> BigRational {
    if m > n || !(n + m).is_multiple_of(2) {
        return BigRational::zero();
    }
    let num = binomial(BigInt::from(n), BigInt::from((n + m) / 2));
    BigRational::new(num, BigInt::one() << n)
}

/// Legendre polynomial P_l by the three-term recurrence
/// (k+1) P_(k+1) = (2k+1) x P_k - k P_(k-1).
pub fn legendre_poly(l: u64) -> UniPoly {
    let mut prev = UniPoly::one();
    if l == 0 {
        return prev;
    }
    let mut cur = UniPoly::x();
    let x = UniPoly::x();
    for k in 1..l {
        let a = BigRational::new(BigInt::from(2 * k + 1), BigInt::from(k + 1));
        let b = BigRational::new(BigInt::from(k), BigInt::from(k + 1));
        let next = &(&x * &cur).scale(&a) - &prev.scale(&b);
        prev = cur;
        cur = next;
    }
    cur
}

/// Associated Legendre function of degree l and order m, held through its
/// polynomial part.
///
/// For even m the part is the classical polynomial P_l^m itself (up to the
/// fixed real normalization); for odd m it is P_l^m with the single loose
/// factor sqrt(1-x^2) removed. Only exponents congruent to `delta` mod 2
/// occur, where `delta = (l - m) mod 2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AssocLegendre {
    l: u64,
    m: u64,
    delta: u8,
    poly_part: UniPoly,
}

impl AssocLegendre {
    pub fn l(&self) -> u64 {
        self.l
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn delta(&self) -> u8 {
        self.delta
    }

    pub fn poly_part(&self) -> &UniPoly {
        &self.poly_part
    }

    /// The even polynomial E with poly_part(x) = x^delta * E(x^2).
    pub fn square_part(&self) -> UniPoly {
        let delta = self.delta as usize;
        let coeffs = self.poly_part.coeffs();
        let mut even = Vec::new();
        for (i, c) in coeffs.iter().enumerate() {
            if i % 2 == delta % 2 {
                even.push(c.clone());
            } else {
                debug_assert!(c.is_zero(), "parity violation in poly_part");
            }
        }
        UniPoly::new(even)
    }
}

/// Build the exact polynomial part of P_l^m.
pub fn assoc_legendre(l: u64, m: u64) -> Result<AssocLegendre> {
    if m > l {
        return Err(Error::BadRange(format!(
            "need m <= l for associated Legendre, got l={l}, m={m}"
        )));
    }
    let mut part = legendre_poly(l);
    for _ in 0..m {
        part = part.derivative();
    }
    let sin_sq_power = (m / 2) as u32;
    if sin_sq_power > 0 {
        // (1 - x^2)^floor(m/2)
        let one_minus_x2 = UniPoly::new(vec![
            BigRational::one(),
            BigRational::zero(),
            -BigRational::one(),
        ]);
        part = &part * &one_minus_x2.pow(sin_sq_power);
    }
    Ok(AssocLegendre {
        l,
        m,
        delta: ((l - m) % 2) as u8,
        poly_part: part,
    })
}

/// Does P2 divide P_l^m (for odd m: divide P_l^m / sqrt(1-x^2))?
///
/// Since the polynomial part is x^delta times an even polynomial, both roots
/// of 3x^2 - 1 vanish together, so the decision reduces to evaluating the
/// even part at x^2 = 1/3 in exact arithmetic.
pub fn divides_p2(l: u64, m: u64) -> Result<bool> {
    let al = assoc_legendre(l, m)?;
    let third = BigRational::new(BigInt::one(), BigInt::from(3));
    Ok(al.square_part().eval(&third).is_zero())
}
