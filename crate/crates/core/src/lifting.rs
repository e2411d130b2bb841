//! Bit-by-bit refinement of the vanishing locus in the 2-adic integers.
//!
//! For even order m the degrees l with truncated transform value 0 mod 2^n
//! form a single residue class mod 2^n (for odd m there are none at all).
//! The class mod 8 is rigid: l = 2 (mod 8) when m = 0 (mod 4) and l = 5
//! (mod 8) when m = 2 (mod 4). From there each extra bit is determined by
//! one modular evaluation, because for degrees inside that mod-8 class,
//! shifting by 2^n (n >= 3) moves the value by exactly 2^n mod 2^(n+1).
//! (Off the class no such regularity holds, and none is needed.) The limit of the chain is a 2-adic
//! degree at which the family vanishes to infinite depth.
//!
//! Everything is replayable: [`dyadic_root`] returns the full trace of lift
//! decisions, [`exhaustive_verify`] brute-forces a window of degrees against
//! the predicted class, and [`stability_check`] probes the congruences the
//! construction relies on at randomized points.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exact::DyadicResidue;
use crate::holt::{h_mod, h_mod_big};

/// The anchor residue mod 8 of the root class: 2 when m = 0 (mod 4), 5 when
/// m = 2 (mod 4). Odd m never vanishes, at any modulus.
pub fn root_class(m: u64) -> Result<u64> {
    if m % 2 == 1 {
        return Err(Error::OddM(m));
    }
    Ok(if m.is_multiple_of(4) { 2 } else { 5 })
}

/// The unique residue class mod 8 that can contain vanishing degrees, or
/// `None` for odd m.
pub fn low_bits(m: u64) -> Option<DyadicResidue> {
    root_class(m).ok().map(|r| DyadicResidue::new(r, 3))
}

/// Smallest admissible degree l >= m with l = root (mod 2^bits). This is the
/// degree at which the class is actually evaluated during lifting.
pub fn representative(root: &BigUint, m: u64, bits: u32) -> BigUint {
    let modulus = BigUint::one() << bits;
    let m_big = BigUint::from(m);
    if *root >= m_big {
        root.clone()
    } else {
        let deficit = &m_big - root;
        root + deficit.div_ceil(&modulus) * modulus
    }
}

/// One recorded lift decision: how the approximation mod 2^bits was extended
/// to mod 2^(bits+1).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftStepRecord {
    pub m: u64,
    /// Modulus exponent before the step.
    pub bits: u32,
    /// Approximate root mod 2^bits entering the step.
    pub root: BigUint,
    /// Degree at which the class was evaluated.
    pub representative: BigUint,
    /// Truncated transform value at the representative, mod 2^(bits+1).
    pub residue: DyadicResidue,
    /// Bit number `bits` of that residue.
    pub bit: u8,
    /// Parity of (representative - root) / 2^bits; nonzero when the
    /// representative sits an odd number of periods above the root.
    pub parity_offset: u8,
    /// The chosen next bit (bit XOR parity_offset).
    pub correction: u8,
    /// Approximate root mod 2^(bits+1) leaving the step.
    pub new_root: BigUint,
}

/// Extend a root approximation by one bit.
///
/// With r the current root mod 2^n and l0 the representative degree, every
/// degree l = r + 2^n q (q = 0, 1 mod 2) in the mod-8 root class satisfies
/// H_l = H_l0 + 2^n (q - q0) (mod 2^(n+1)), q0 the parity offset of l0, so
/// exactly one choice of q kills bit n. Requires n >= 3; the congruence has
/// exceptions below that. Class membership is implied by the [`Error::NotARoot`]
/// guard: vanishing mod 2^n forces the right residue mod 8.
pub fn lift_step(m: u64, root: &BigUint, bits: u32) -> Result<LiftStepRecord> {
    if bits < 3 {
        return Err(Error::BadModulus(bits));
    }
    if m % 2 == 1 {
        return Err(Error::OddM(m));
    }
    let modulus = BigUint::one() << bits;
    if *root >= modulus {
        return Err(Error::BadRange(format!(
            "root {root} is not reduced mod 2^{bits}"
        )));
    }
    let rep = representative(root, m, bits);
    let residue = h_mod_big(&rep, m, bits + 1)?;
    if !residue.reduce_to(bits).value().is_zero() {
        return Err(Error::NotARoot {
            residue: root.to_string(),
            mod_exp: bits,
            h_value: residue.reduce_to(bits).value().to_string(),
        });
    }
    let bit = u8::from(residue.value().bit(u64::from(bits)));
    let parity_offset = u8::from(((&rep - root) >> bits).is_odd());
    let correction = bit ^ parity_offset;
    let new_root = root + modulus * correction;
    Ok(LiftStepRecord {
        m,
        bits,
        root: root.clone(),
        representative: rep,
        residue,
        bit,
        parity_offset,
        correction,
        new_root,
    })
}

/// A partial 2-adic root: the unique residue class mod 2^bits on which the
/// degree family vanishes, together with the trace that produced it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DyadicRootApprox {
    pub m: u64,
    pub bits: u32,
    pub root: BigUint,
    pub trace: Vec<LiftStepRecord>,
}

impl DyadicRootApprox {
    pub fn residue(&self) -> DyadicResidue {
        DyadicResidue::new(num_bigint::BigInt::from(self.root.clone()), self.bits)
    }
}

/// Compute the root class mod 2^target_bits for even m, starting from the
/// rigid class mod 8 and lifting one bit at a time. The result is verified:
/// the truncated transform value at the representative degree is checked to
/// vanish at full precision before returning.
pub fn dyadic_root(m: u64, target_bits: u32) -> Result<DyadicRootApprox> {
    if target_bits < 3 {
        return Err(Error::BadModulus(target_bits));
    }
    let mut root = BigUint::from(root_class(m)?);
    let mut trace = Vec::with_capacity((target_bits - 3) as usize);
    for bits in 3..target_bits {
        let step = lift_step(m, &root, bits)?;
        root = step.new_root.clone();
        trace.push(step);
    }
    let rep = representative(&root, m, target_bits);
    let check = h_mod_big(&rep, m, target_bits)?;
    if !check.value().is_zero() {
        return Err(Error::NotARoot {
            residue: root.to_string(),
            mod_exp: target_bits,
            h_value: check.value().to_string(),
        });
    }
    Ok(DyadicRootApprox {
        m,
        bits: target_bits,
        root,
        trace,
    })
}

/// Result of brute-forcing one lifting step over a window of degrees.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanReport {
    pub m: u64,
    /// The level being refined: zeros mod 2^bits are screened for survival
    /// mod 2^(bits+1).
    pub bits: u32,
    /// First degree scanned (always m: lower degrees are out of range).
    pub start: u64,
    pub window: u64,
    /// Degrees in the window whose truncated value is 0 mod 2^bits.
    pub coarse: Vec<u64>,
    /// Among the coarse hits, the degrees still 0 mod 2^(bits+1).
    pub solutions: Vec<u64>,
    /// The residue class mod 2^(bits+1) the lift predicts.
    pub predicted: BigUint,
    /// True when the coarse hits are exactly one class mod 2^bits, exactly
    /// one class among them survives refinement, and both match the lift.
    pub consistent: bool,
}

/// Check one lifting step by brute force. Every degree in `[m, m + window)`
/// is evaluated mod 2^(bits+1); the report lists the zeros mod 2^bits, the
/// subset that survives mod 2^(bits+1), and whether the survivors form
/// exactly the single class mod 2^(bits+1) that [`lift_step`] predicts. The
/// window must be able to contain a full refined class. Runs on the rayon
/// pool.
pub fn exhaustive_verify(m: u64, bits: u32, window: u64) -> Result<ScanReport> {
    if !(3..=62).contains(&bits) {
        return Err(Error::BadModulus(bits));
    }
    root_class(m)?;
    let start = m;
    let end = start
        .checked_add(window)
        .ok_or_else(|| Error::BadRange(format!("window overflows from {start}")))?;
    if window < (1u64 << (bits + 1)) {
        return Err(Error::BadRange(format!(
            "window {window} cannot contain a class mod 2^{}",
            bits + 1
        )));
    }
    let values = (start..end)
        .into_par_iter()
        .map(|l| h_mod(l, m, bits + 1).map(|r| (l, r)))
        .collect::<Result<Vec<_>>>()?;
    let mut coarse = Vec::new();
    let mut solutions = Vec::new();
    for (l, residue) in values {
        if residue.reduce_to(bits).value().is_zero() {
            coarse.push(l);
            if residue.value().is_zero() {
                solutions.push(l);
            }
        }
    }
    let predicted = dyadic_root(m, bits + 1)?.root;

    let class_in_window = |root: &BigUint, exp: u32| {
        let modulus = BigUint::one() << exp;
        let end_big = BigUint::from(end);
        let mut hits = Vec::new();
        let mut l = representative(root, m, exp);
        while l < end_big {
            hits.push(u64::try_from(&l).expect("bounded by end"));
            l += &modulus;
        }
        hits
    };
    let coarse_root = &predicted % (BigUint::one() << bits);
    let consistent = coarse == class_in_window(&coarse_root, bits)
        && solutions == class_in_window(&predicted, bits + 1);
    Ok(ScanReport {
        m,
        bits,
        start,
        window,
        coarse,
        solutions,
        predicted,
        consistent,
    })
}

/// Outcome of randomized congruence probing at one order and modulus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilityReport {
    pub m: u64,
    /// Modulus exponent of the probed congruence.
    pub bits: u32,
    /// Number of sampled pairs.
    pub pairs: u64,
    pub seed: u64,
    pub failures: Vec<String>,
}

impl StabilityReport {
    /// True when at least one pair was checked and none failed.
    pub fn holds(&self) -> bool {
        self.pairs > 0 && self.failures.is_empty()
    }

    /// True when no pair was checked at all: an empty sample certifies
    /// nothing and is reported as such, not as a pass.
    pub fn vacuous(&self) -> bool {
        self.pairs == 0
    }
}

/// Randomized probe of the congruence the lift rests on: degrees congruent
/// mod 2^bits and lying in the mod-8 root class of m have equal truncated
/// values mod 2^bits. Pairs are drawn from a seeded generator, so identical
/// calls give identical reports. Off the root class the congruence is simply
/// false, and the lift never looks there.
pub fn stability_check(m: u64, bits: u32, pairs: u64, seed: u64) -> Result<StabilityReport> {
    if !(3..=62).contains(&bits) {
        return Err(Error::BadModulus(bits));
    }
    let anchor = representative(&BigUint::from(root_class(m)?), m, 3);
    let anchor = u64::try_from(&anchor).expect("anchor is within 8 of m");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    for _ in 0..pairs {
        let l = anchor + 8 * rng.random_range(0..2000u64);
        let shifted = l + (1u64 << bits) * rng.random_range(0..2000u64);
        let here = h_mod(l, m, bits)?;
        let there = h_mod(shifted, m, bits)?;
        if here != there {
            failures.push(format!(
                "H({l}) = {here} but H({shifted}) = {there} at order {m}"
            ));
        }
    }
    Ok(StabilityReport {
        m,
        bits,
        pairs,
        seed,
        failures,
    })
}
