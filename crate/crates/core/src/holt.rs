//! The transform route: each associated Legendre function is compressed into
//! a short coefficient sequence sigma_l^m(k), and divisibility by P2 becomes
//! the vanishing of the plain sum H_l^m(-2) = sum_k sigma_l^m(k).
//!
//! Everything here is exact. Full values are rationals; modular values live
//! in Z/2^N through [`DyadicResidue`] and exploit the valuation bound
//! v2(sigma_l^m(k)) >= v2(k!): terms past the last k with v2(k!) < N cannot
//! touch the residue, so [`h_mod`] sums a fixed short prefix no matter how
//! large l is. That is what makes bit-lifting to astronomical degrees cheap.
//!
//! Two independent ways to produce sigma are kept on purpose: the closed
//! binomial form ([`sigma`]) and the term-ratio recurrence ([`sigma_table`]).
//! The tests pin them against each other.

use num_bigint::{BigInt, BigUint};
use num_integer::{binomial, Integer};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact::{reduce_mod, DyadicResidue};

/// Which of the two closed forms applies, by the parity of l + m.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParityCase {
    /// l + m even: sigma(k) = (-2)^k C(a,k) C(b,k) / C(2k,k).
    Even,
    /// l + m odd: the same with an extra 1/(2k+1).
    Odd,
}

impl ParityCase {
    pub fn of(l: u64, m: u64) -> ParityCase {
        // l + m and l - m have the same parity; use the subtraction to
        // stay clear of overflow near u64::MAX.
        if (l - m).is_multiple_of(2) {
            ParityCase::Even
        } else {
            ParityCase::Odd
        }
    }
}

fn check_order(l: u64, m: u64) -> Result<()> {
    if m > l {
        return Err(Error::BadRange(format!(
            "need m <= l for the coefficient sequence, got l={l}, m={m}"
        )));
    }
    Ok(())
}

/// Closed form for sigma_l^m(k); `k` must not exceed floor((l-m)/2).
///
/// With a = floor((l-m)/2) and b = floor((l+m)/2):
/// sigma(k) = (-2)^k C(a,k) C(b,k) / C(2k,k), divided by one more factor
/// (2k+1) when l + m is odd.
pub fn sigma(l: u64, m: u64, k: u64) -> Result<BigRational> {
    check_order(l, m)?;
    let a = BigUint::from((l - m) / 2);
    // (l + m) / 2 without overflow: BigUint addition
    let b = (BigUint::from(l) + BigUint::from(m)) / 2u32;
    if BigUint::from(k) > a {
        return Err(Error::BadRange(format!(
            "k={k} exceeds floor((l-m)/2)={a} at l={l}, m={m}"
        )));
    }
    let a = BigInt::from(a);
    let b = BigInt::from(b);
    let kk = BigInt::from(k);
    let mut num = binomial(a, kk.clone()) * binomial(b, kk.clone());
    if k % 2 == 1 {
        num = -num;
    }
    num <<= k; // the 2^k of (-2)^k
    let mut den = binomial(&kk * 2, kk.clone());
    if let ParityCase::Odd = ParityCase::of(l, m) {
        den *= kk * 2 + 1;
    }
    Ok(BigRational::new(num, den))
}

/// Successor step of the term-ratio recurrence, shared by the full table and
/// the truncated modular sum. `a` and `b` are the floor halves of l -+ m.
fn sigma_step(
    cur: &BigRational,
    k: u64,
    a: &BigInt,
    b: &BigInt,
    parity: ParityCase,
) -> BigRational {
    let kk = BigInt::from(k);
    let num = (a - &kk) * (b - &kk);
    let odd_factor = match parity {
        ParityCase::Even => &kk * 2 + 1,
        ParityCase::Odd => &kk * 2 + 3,
    };
    let den = (kk + 1) * odd_factor;
    -(cur * BigRational::new(num, den))
}

/// The full sequence sigma_l^m(0), ..., sigma_l^m(floor((l-m)/2)), built by
/// the term-ratio recurrence from sigma(0) = 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigmaTable {
    l: u64,
    m: u64,
    values: Vec<BigRational>,
}

impl SigmaTable {
    pub fn l(&self) -> u64 {
        self.l
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn values(&self) -> &[BigRational] {
        &self.values
    }

    pub fn get(&self, k: u64) -> Option<&BigRational> {
        self.values.get(k as usize)
    }
}

pub fn sigma_table(l: u64, m: u64) -> Result<SigmaTable> {
    check_order(l, m)?;
    let a_small = (l - m) / 2;
    let a = BigInt::from(a_small);
    let b = BigInt::from((BigUint::from(l) + BigUint::from(m)) / 2u32);
    let parity = ParityCase::of(l, m);
    let mut values = Vec::with_capacity(a_small as usize + 1);
    let mut cur = BigRational::one();
    values.push(cur.clone());
    for k in 0..a_small {
        cur = sigma_step(&cur, k, &a, &b, parity);
        values.push(cur.clone());
    }
    Ok(SigmaTable { l, m, values })
}

/// Exact value of the transform at z = -2, where the weight (-z/2)^k
/// degenerates to 1 and only the coefficient sum survives.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HValue {
    l: u64,
    m: u64,
    value: BigRational,
}

impl HValue {
    pub fn l(&self) -> u64 {
        self.l
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn value(&self) -> &BigRational {
        &self.value
    }

    /// True exactly when P2 divides the polynomial part of P_l^m.
    pub fn vanishes(&self) -> bool {
        self.value.is_zero()
    }
}

/// H_l^m(-2) as an exact rational: the plain sum of the sigma table.
pub fn h_at_minus2(l: u64, m: u64) -> Result<HValue> {
    let table = sigma_table(l, m)?;
    let value = table.values().iter().sum();
    Ok(HValue { l, m, value })
}

/// Largest k whose term can still matter mod 2^n, i.e. the largest k with
/// v2(k!) < n. Grows like n + log2(n): n = 3 keeps k <= 3, n = 10 keeps
/// k <= 11, n = 64 keeps k <= 67.
pub fn kmax_for_modulus(n: u32) -> u64 {
    let mut k: u64 = 0;
    // v2(k!) = k - popcount(k) is nondecreasing in k
    while (k + 1) - u64::from((k + 1).count_ones()) < u64::from(n) {
        k += 1;
    }
    k
}

/// Truncated modular transform value: H_l^m(-2) reduced into Z/2^n, summing
/// only the prefix of terms whose 2-adic valuation can be below n.
///
/// Every kept term is computed as an exact rational (odd denominator, by the
/// valuation bound) and the sum is reduced once at the end. The cost depends
/// on n alone, not on the size of l.
pub fn h_mod_big(l: &BigUint, m: u64, n: u32) -> Result<DyadicResidue> {
    if n < 1 {
        return Err(Error::BadModulus(n));
    }
    if BigUint::from(m) > *l {
        return Err(Error::BadRange(format!(
            "need m <= l for the coefficient sequence, got l={l}, m={m}"
        )));
    }
    let a_big = (l - m) / 2u32;
    let b = BigInt::from((l + m) / 2u32);
    let a = BigInt::from(a_big.clone());
    let kcap = kmax_for_modulus(n);
    let klimit = if a_big <= BigUint::from(kcap) {
        a_big.to_u64().expect("bounded by kcap")
    } else {
        kcap
    };
    // parity of l - m from the big value
    let parity = if (l - m).is_even() {
        ParityCase::Even
    } else {
        ParityCase::Odd
    };
    let mut cur = BigRational::one();
    let mut sum = BigRational::one();
    for k in 0..klimit {
        cur = sigma_step(&cur, k, &a, &b, parity);
        debug_assert!(
            cur.denom().is_odd(),
            "kept sigma term must be a dyadic integer"
        );
        sum += &cur;
    }
    reduce_mod(&sum, n)
}

/// [`h_mod_big`] for machine-sized degrees.
pub fn h_mod(l: u64, m: u64, n: u32) -> Result<DyadicResidue> {
    h_mod_big(&BigUint::from(l), m, n)
}
