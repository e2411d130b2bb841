//! The invariant suite behind `dyadic-cone selftest`: one fast,
//! deterministic check per module-level guarantee, runnable in an installed
//! binary without the test harness. Each check returns a message naming the
//! first violated invariant, so failures are attributable from the
//! machine-readable output alone.

use dyadic_cone::harmonic::{divides_cone, harmonic_multiplier_space, solid_harmonic, ConeQuadric};
use dyadic_cone::holt::{h_at_minus2, h_mod, sigma, sigma_table};
use dyadic_cone::legendre::divides_p2;
use dyadic_cone::lifting::{dyadic_root, exhaustive_verify, stability_check};
use dyadic_cone::tripoly::TriPoly;
use dyadic_cone::{reduce_mod, v2, BigUint};
use num_traits::{One, Zero};

pub type Check = (&'static str, fn() -> Result<(), String>);

/// All checks, in a fixed order.
pub fn checks() -> Vec<Check> {
    vec![
        ("series-terms", series_terms),
        ("valuation-floor", valuation_floor),
        ("oracle-equivalence", oracle_equivalence),
        ("odd-orders", odd_orders),
        ("mod8-classes", mod8_classes),
        ("truncated-evaluation", truncated_evaluation),
        ("integer-roots", integer_roots),
        ("lift-windows", lift_windows),
        ("congruence-stability", congruence_stability),
        ("multiplier-dimensions", multiplier_dimensions),
        ("solid-harmonics", solid_harmonics),
        ("polynomial-roundtrip", polynomial_roundtrip),
    ]
}

fn lib(e: dyadic_cone::Error) -> String {
    format!("library error: {e}")
}

/// Ratio-recurrence tables agree with the closed form and start at 1.
fn series_terms() -> Result<(), String> {
    for l in 0..=25u64 {
        for m in 0..=l {
            let table = sigma_table(l, m).map_err(lib)?;
            if !table.values()[0].is_one() {
                return Err(format!("first term is not 1 at l={l}, m={m}"));
            }
            for (k, entry) in table.values().iter().enumerate() {
                let direct = sigma(l, m, k as u64).map_err(lib)?;
                if *entry != direct {
                    return Err(format!(
                        "recurrence and closed form split at l={l}, m={m}, k={k}"
                    ));
                }
            }
        }
    }
    Ok(())
}

/// Term k is divisible by 2 at least v2(k!) times.
fn valuation_floor() -> Result<(), String> {
    for l in 0..=40u64 {
        for m in 0..=l {
            let table = sigma_table(l, m).map_err(lib)?;
            for (k, entry) in table.values().iter().enumerate() {
                let floor = (k - k.count_ones() as usize) as i64;
                if v2(entry).finite().is_some_and(|val| val < floor) {
                    return Err(format!("valuation below floor at l={l}, m={m}, k={k}"));
                }
            }
        }
    }
    Ok(())
}

/// The exact transform value vanishes iff the quadratic divides, and only
/// at (2, 0) and (5, 2) in range.
fn oracle_equivalence() -> Result<(), String> {
    let mut roots = Vec::new();
    for l in 0..=30u64 {
        for m in 0..=l {
            let vanishes = h_at_minus2(l, m).map_err(lib)?.vanishes();
            if vanishes != divides_p2(l, m).map_err(lib)? {
                return Err(format!("vanishing and divisibility split at l={l}, m={m}"));
            }
            if vanishes {
                roots.push((l, m));
            }
        }
    }
    if roots != [(2, 0), (5, 2)] {
        return Err(format!("unexpected root set {roots:?}"));
    }
    Ok(())
}

/// Odd orders give a 2-adic unit: 1 mod 2 everywhere.
fn odd_orders() -> Result<(), String> {
    for m in (1..=60u64).step_by(2) {
        for l in m..=60 {
            if !h_mod(l, m, 1).map_err(lib)?.value().is_one() {
                return Err(format!("even value at l={l}, m={m}"));
            }
        }
    }
    Ok(())
}

/// Mod 8, zeros sit exactly on l = 2 (order 0 mod 4) or l = 5 (order 2
/// mod 4).
fn mod8_classes() -> Result<(), String> {
    for (m, class) in [(0u64, 2u64), (4, 2), (2, 5), (6, 5)] {
        for l in m..=256 {
            let zero = h_mod(l, m, 3).map_err(lib)?.value().is_zero();
            if zero != (l % 8 == class) {
                return Err(format!("mod-8 class wrong at l={l}, m={m}"));
            }
        }
    }
    Ok(())
}

/// The truncated evaluation agrees with reducing the exact value.
fn truncated_evaluation() -> Result<(), String> {
    for l in 0..=30u64 {
        for m in 0..=l {
            let exact = h_at_minus2(l, m).map_err(lib)?;
            let direct = h_mod(l, m, 5).map_err(lib)?;
            if reduce_mod(exact.value(), 5).map_err(lib)? != direct {
                return Err(format!("truncation drifts at l={l}, m={m}"));
            }
        }
    }
    Ok(())
}

/// The two integer roots are fixed points of the lift.
fn integer_roots() -> Result<(), String> {
    let r0 = dyadic_root(0, 16).map_err(lib)?;
    let r2 = dyadic_root(2, 16).map_err(lib)?;
    if r0.root != BigUint::from(2u32) || r2.root != BigUint::from(5u32) {
        return Err(format!("integer roots moved: {} and {}", r0.root, r2.root));
    }
    if !r0.trace.iter().chain(&r2.trace).all(|s| s.correction == 0) {
        return Err("nonzero correction on an exact root".to_string());
    }
    Ok(())
}

/// Brute-force windows agree with the lift prediction.
fn lift_windows() -> Result<(), String> {
    for m in [0u64, 2, 4] {
        for bits in 3..=5u32 {
            let report = exhaustive_verify(m, bits, 1u64 << (bits + 2)).map_err(lib)?;
            if !report.consistent {
                return Err(format!("window scan disagrees at m={m}, bits={bits}"));
            }
        }
    }
    Ok(())
}

/// Congruent in-class degrees have congruent values.
fn congruence_stability() -> Result<(), String> {
    for m in [0u64, 2, 4, 6] {
        let report = stability_check(m, 5, 50, 1).map_err(lib)?;
        if !report.holds() {
            return Err(format!("congruence fails at m={m}: {:?}", report.failures));
        }
    }
    Ok(())
}

/// Multiplier dimensions: 3 for the circular cone, 2 off it.
fn multiplier_dimensions() -> Result<(), String> {
    for (b, expected) in [(1u64, 3usize), (2, 2)] {
        let q = ConeQuadric::integer(b).map_err(lib)?;
        let dim = harmonic_multiplier_space(&q, 8).total_dim();
        if dim != expected {
            return Err(format!("dimension {dim} at b={b}, expected {expected}"));
        }
    }
    Ok(())
}

/// Solid harmonics are harmonic, homogeneous, and factor through the cone
/// exactly when the 1-d criterion says so.
fn solid_harmonics() -> Result<(), String> {
    let q = ConeQuadric::integer(1).map_err(lib)?;
    for l in 0..=10u64 {
        for m in 0..=l {
            let sh = solid_harmonic(l, m).map_err(lib)?;
            let expected = divides_p2(l, m).map_err(lib)?;
            for part in [&sh.real, &sh.imag] {
                if part.is_zero() {
                    continue;
                }
                if !part.laplacian().is_zero() {
                    return Err(format!("not harmonic at l={l}, m={m}"));
                }
                if part.homogeneous_degree() != Some(l as u32) {
                    return Err(format!("not homogeneous of degree l at l={l}, m={m}"));
                }
                if divides_cone(part, &q).is_some() != expected {
                    return Err(format!("cone divisibility splits at l={l}, m={m}"));
                }
            }
        }
    }
    Ok(())
}

/// The canonical polynomial strings parse back to the same polynomials.
fn polynomial_roundtrip() -> Result<(), String> {
    let q2 = ConeQuadric::integer(2).map_err(lib)?;
    let samples = [
        TriPoly::zero(),
        TriPoly::one(),
        q2.poly().clone(),
        solid_harmonic(5, 2).map_err(lib)?.real,
    ];
    for p in samples {
        let back: TriPoly = p
            .to_string()
            .parse()
            .map_err(|e: dyadic_cone::Error| format!("parse failure: {e}"))?;
        if back != p {
            return Err(format!("round trip changed {p}"));
        }
    }
    Ok(())
}
