//! Exact arithmetic primitives: the dyadic valuation v2 and the residue
//! ring Z/2^N with inversion of odd elements.
//!
//! Rationals are carried by [`BigRational`], which keeps values in lowest
//! terms with a positive denominator, so "is this a dyadic integer" is a
//! single parity test on the stored denominator. All modular values in this
//! crate are obtained by exact rational computation followed by [`reduce_mod`];
//! nothing is ever rounded.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// The dyadic valuation of a rational: the exponent of 2 in its reduced
/// numerator minus the exponent in its reduced denominator, with `Infinite`
/// reserved for zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Valuation {
    Finite(i64),
    Infinite,
}

impl Valuation {
    pub fn is_infinite(&self) -> bool {
        matches!(self, Valuation::Infinite)
    }

    /// The finite value, if any.
    pub fn finite(&self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(*v),
            Valuation::Infinite => None,
        }
    }
}

impl PartialOrd for Valuation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Valuation {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Valuation::Infinite, Valuation::Infinite) => Ordering::Equal,
            (Valuation::Infinite, Valuation::Finite(_)) => Ordering::Greater,
            (Valuation::Finite(_), Valuation::Infinite) => Ordering::Less,
            (Valuation::Finite(a), Valuation::Finite(b)) => a.cmp(b),
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => write!(f, "infinite"),
        }
    }
}

/// Dyadic valuation of an integer. `v2_int(0)` is `Infinite`.
pub fn v2_int(n: &BigInt) -> Valuation {
    match n.trailing_zeros() {
        Some(t) => Valuation::Finite(t as i64),
        None => Valuation::Infinite,
    }
}

/// Dyadic valuation of a rational, `v2(m/n) = v2(m) - v2(n)`.
pub fn v2(q: &BigRational) -> Valuation {
    if q.is_zero() {
        return Valuation::Infinite;
    }
    let num = q.numer().trailing_zeros().expect("nonzero numerator");
    let den = q.denom().trailing_zeros().expect("nonzero denominator");
    Valuation::Finite(num as i64 - den as i64)
}

/// True when the reduced denominator of `q` is odd, i.e. `v2(q) >= 0`.
pub fn is_dyadic_integer(q: &BigRational) -> bool {
    q.denom().is_odd()
}

/// An element of Z/2^N together with its modulus exponent N.
///
/// The value is always kept reduced into `[0, 2^N)`. Arithmetic between
/// residues requires matching moduli.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DyadicResidue {
    mod_exp: u32,
    value: BigUint,
}

impl DyadicResidue {
    /// Reduce an arbitrary integer into `[0, 2^N)`.
    pub fn new(value: impl Into<BigInt>, mod_exp: u32) -> Self {
        assert!(mod_exp >= 1, "modulus exponent must be positive");
        let modulus = BigInt::one() << mod_exp;
        let reduced = value.into().mod_floor(&modulus);
        DyadicResidue {
            mod_exp,
            value: reduced.to_biguint().expect("mod_floor is non-negative"),
        }
    }

    pub fn mod_exp(&self) -> u32 {
        self.mod_exp
    }

    pub fn value(&self) -> &BigUint {
        &self.value
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    pub fn is_odd(&self) -> bool {
        self.value.is_odd()
    }

    pub fn add(&self, other: &DyadicResidue) -> DyadicResidue {
        assert_eq!(self.mod_exp, other.mod_exp, "modulus mismatch");
        DyadicResidue::new(BigInt::from(&self.value + &other.value), self.mod_exp)
    }

    pub fn sub(&self, other: &DyadicResidue) -> DyadicResidue {
        assert_eq!(self.mod_exp, other.mod_exp, "modulus mismatch");
        DyadicResidue::new(
            BigInt::from(self.value.clone()) - BigInt::from(other.value.clone()),
            self.mod_exp,
        )
    }

    pub fn mul(&self, other: &DyadicResidue) -> DyadicResidue {
        assert_eq!(self.mod_exp, other.mod_exp, "modulus mismatch");
        DyadicResidue::new(BigInt::from(&self.value * &other.value), self.mod_exp)
    }

    /// Inverse of an odd residue; `r.inv()?.mul(&r)` is 1.
    pub fn inv(&self) -> Result<DyadicResidue> {
        if !self.is_odd() {
            return Err(Error::EvenResidue {
                value: self.value.to_string(),
                mod_exp: self.mod_exp,
            });
        }
        let modulus = BigInt::one() << self.mod_exp;
        let egcd = BigInt::from(self.value.clone()).extended_gcd(&modulus);
        debug_assert!(egcd.gcd.is_one());
        Ok(DyadicResidue::new(egcd.x, self.mod_exp))
    }

    /// Forget high bits, dropping to a smaller modulus exponent.
    pub fn reduce_to(&self, mod_exp: u32) -> DyadicResidue {
        assert!(
            mod_exp >= 1 && mod_exp <= self.mod_exp,
            "can only reduce to a smaller positive modulus"
        );
        let mask = (BigUint::one() << mod_exp) - BigUint::one();
        DyadicResidue {
            mod_exp,
            value: &self.value & &mask,
        }
    }
}

impl fmt::Display for DyadicResidue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod 2^{})", self.value, self.mod_exp)
    }
}

/// Reduce a dyadic-integer rational into Z/2^N by multiplying the numerator
/// with the inverse of the (odd) denominator.
pub fn reduce_mod(q: &BigRational, mod_exp: u32) -> Result<DyadicResidue> {
    if mod_exp < 1 {
        return Err(Error::BadModulus(mod_exp));
    }
    if !is_dyadic_integer(q) {
        return Err(Error::EvenDenominator(q.to_string()));
    }
    let num = DyadicResidue::new(q.numer().clone(), mod_exp);
    let den = DyadicResidue::new(q.denom().clone(), mod_exp);
    let den_inv = den.inv().expect("reduced denominator is odd");
    Ok(num.mul(&den_inv))
}
