//! End-to-end acceptance suite. Each test checks one headline claim of the
//! library over an exhaustive or randomized range and prints a one-line
//! verdict (visible with `--nocapture`; the per-test ok/FAILED line carries
//! the same information either way). Everything here goes through the public
//! API only.

use dyadic_cone::harmonic::{divides_cone, harmonic_multiplier_space, solid_harmonic, ConeQuadric};
use dyadic_cone::holt::{h_at_minus2, h_mod, sigma, sigma_table};
use dyadic_cone::legendre::{cos_power_coeff, divides_p2};
use dyadic_cone::lifting::{dyadic_root, exhaustive_verify, lift_step, stability_check};
use dyadic_cone::tripoly::TriPoly;
use dyadic_cone::{reduce_mod, v2, BigInt, BigRational, BigUint, DyadicResidue};
use num_traits::{One, Zero};

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn verdict(line: &str) {
    println!("pass: {line}");
}

/// The exact transform value vanishes precisely when the quadratic divides
/// the Legendre polynomial part, and over l <= 60 that happens only at
/// (l, m) = (2, 0) and (5, 2).
#[test]
fn t01_exact_vanishing_is_divisibility() {
    let mut roots = Vec::new();
    for l in 0..=60u64 {
        for m in 0..=l {
            let vanishes = h_at_minus2(l, m).unwrap().vanishes();
            let divides = divides_p2(l, m).unwrap();
            assert_eq!(
                divides, vanishes,
                "divisibility and vanishing disagree at l={l}, m={m}"
            );
            if vanishes {
                roots.push((l, m));
            }
        }
    }
    assert_eq!(roots, vec![(2, 0), (5, 2)]);
    verdict("vanishing = divisibility for all l <= 60; roots exactly (2,0), (5,2)");
}

/// For odd order the transform value is a 2-adic unit: it is 1 mod 2 for
/// every degree, so no root can exist at any precision.
#[test]
fn t02_odd_orders_never_vanish() {
    for m in (1..=200u64).step_by(2) {
        for l in m..=200 {
            let r = h_mod(l, m, 1).unwrap();
            assert!(
                r.value().is_one(),
                "value is even at l={l}, m={m}: {r}"
            );
        }
    }
    verdict("odd orders: value = 1 (mod 2) for all m <= l <= 200");
}

/// Three bits of any root are forced: the value vanishes mod 8 exactly on
/// the class l = 2 (mod 8) when m = 0 (mod 4), and l = 5 (mod 8) when
/// m = 2 (mod 4).
#[test]
fn t03_vanishing_class_mod_8() {
    for (orders, class) in [([0u64, 4, 8, 12], 2u64), ([2, 6, 10, 14], 5)] {
        for m in orders {
            for l in m..=1024 {
                let zero = h_mod(l, m, 3).unwrap().value().is_zero();
                assert_eq!(
                    zero,
                    l % 8 == class,
                    "mod-8 classification fails at l={l}, m={m}"
                );
            }
        }
    }
    verdict("mod-8 zero classes over l <= 1024: 2 (m = 0 mod 4), 5 (m = 2 mod 4)");
}

/// Brute-force windows confirm every lifting step: among the zeros mod 2^N,
/// exactly one class mod 2^(N+1) survives, and it is the predicted one.
#[test]
fn t04_each_lift_step_is_unique() {
    for m in [0u64, 2, 4, 6, 8, 10, 12] {
        for bits in 3..=8u32 {
            let report = exhaustive_verify(m, bits, 1u64 << (bits + 2)).unwrap();
            assert!(
                report.consistent,
                "scan disagrees with lift at m={m}, bits={bits}: {report:?}"
            );
            assert!(!report.solutions.is_empty());
        }
    }
    verdict("window scans match the lift for m in 0..=12 even, 3..=8 bits");
}

/// Degrees congruent mod 2^N inside the root class have equal values mod
/// 2^N; 200 random pairs per order and modulus.
#[test]
fn t05_congruent_degrees_agree() {
    for m in [0u64, 2, 4, 6] {
        for bits in 3..=10u32 {
            let seed = 0xACCE55 ^ (m << 8) ^ u64::from(bits);
            let report = stability_check(m, bits, 200, seed).unwrap();
            assert!(
                report.holds(),
                "congruence fails at m={m}, bits={bits}: {:?}",
                report.failures
            );
        }
    }
    verdict("congruence stability holds on 200 pairs per (m, bits), 3..=10 bits");
}

/// The two integer roots are fixed points of the lift: the chains for m = 0
/// and m = 2 never take a correction, so the 2-adic roots are plain 2 and 5.
#[test]
fn t06_integer_roots_stay_fixed() {
    let r0 = dyadic_root(0, 20).unwrap();
    assert_eq!(r0.root, BigUint::from(2u32));
    assert!(r0.trace.iter().all(|s| s.correction == 0));
    let r2 = dyadic_root(2, 20).unwrap();
    assert_eq!(r2.root, BigUint::from(5u32));
    assert!(r2.trace.iter().all(|s| s.correction == 0));
    verdict("20-bit roots for m = 0, 2 are exactly 2 and 5 with all-zero corrections");
}

/// Frozen spot values, each recomputed independently before being written
/// down here.
#[test]
fn t07_frozen_spot_values() {
    assert_eq!(sigma(10, 0, 2).unwrap(), rat(200, 3));
    assert_eq!(*h_at_minus2(10, 0).unwrap().value(), rat(520, 63));
    assert_eq!(h_mod(10, 0, 4).unwrap(), DyadicResidue::new(8, 4));
    assert_eq!(*h_at_minus2(6, 4).unwrap().value(), rat(-4, 1));
    let step = lift_step(4, &BigUint::from(2u32), 3).unwrap();
    assert_eq!(step.new_root, BigUint::from(2u32));
    verdict("spot values: sigma(10,0,2), H(10,0), H(10,0) mod 16, H(6,4), one lift step");
}

/// Multiplier spaces for the cone family x^2 + b y^2 - (b+1) z^2 up to
/// degree 12: dimension 3 in the circular case b = 1, dimension 2 for
/// b in {2, 3, 5/2}, concentrated in degrees 0 and 3.
#[test]
fn t08_multiplier_space_dimensions() {
    let cases = [
        (rat(1, 1), 3usize, 2usize),
        (rat(2, 1), 2, 1),
        (rat(3, 1), 2, 1),
        (rat(5, 2), 2, 1),
    ];
    for (b, total, cubic) in cases {
        let q = ConeQuadric::new(b.clone()).unwrap();
        let space = harmonic_multiplier_space(&q, 12);
        assert_eq!(space.total_dim(), total, "total dimension at b={b}");
        for component in &space.components {
            let expected = match component.degree {
                0 => 1,
                3 => cubic,
                _ => 0,
            };
            assert_eq!(
                component.basis.len(),
                expected,
                "dimension at b={b}, degree {}",
                component.degree
            );
        }
    }
    verdict("multiplier dimensions to degree 12: 3 at b=1; 2 at b=2, 3, 5/2");
}

/// Solid harmonics factor through the circular cone exactly when the
/// corresponding Legendre part is divisible, and the degree-5 order-2 pair
/// of quotients spans the cubic multiplier space.
#[test]
fn t09_solid_harmonics_factor_on_the_cone() {
    let q = ConeQuadric::integer(1).unwrap();
    for l in 0..=20u64 {
        for m in 0..=l {
            let expected = divides_p2(l, m).unwrap();
            let sh = solid_harmonic(l, m).unwrap();
            for part in [&sh.real, &sh.imag] {
                if part.is_zero() {
                    continue;
                }
                assert_eq!(
                    divides_cone(part, &q).is_some(),
                    expected,
                    "cone divisibility disagrees at l={l}, m={m}"
                );
            }
        }
    }
    let sh = solid_harmonic(5, 2).unwrap();
    let x2_minus_y2_z = {
        let mut p = TriPoly::monomial((2, 0, 1), rat(1, 1));
        p.add_term((0, 2, 1), rat(-1, 1));
        p
    };
    let xyz = TriPoly::monomial((1, 1, 1), rat(1, 1));
    assert_eq!(
        divides_cone(&sh.real, &q).unwrap(),
        x2_minus_y2_z.scale(&rat(-105, 2))
    );
    assert_eq!(divides_cone(&sh.imag, &q).unwrap(), xyz.scale(&rat(-105, 1)));
    verdict("cone divisibility mirrors the 1-d criterion for l <= 20; (5,2) spans the cubics");
}

/// Supporting identities: the valuation floor on series terms, the k = 2
/// congruence in the residual order class, and the closed form for the
/// cosine-power expansion coefficients.
#[test]
fn t10_supporting_identities() {
    for l in 0..=100u64 {
        for m in 0..=l {
            let table = sigma_table(l, m).unwrap();
            for (k, entry) in table.values().iter().enumerate() {
                let k = k as u64;
                if k > 50 {
                    break;
                }
                let floor = (k - u64::from(k.count_ones())) as i64;
                let ok = match v2(entry).finite() {
                    None => true,
                    Some(val) => val >= floor,
                };
                assert!(ok, "valuation below floor at l={l}, m={m}, k={k}");
            }
        }
    }

    for m in (2..=200u64).step_by(4) {
        for l in (m + 3..=200).step_by(4) {
            if (l - m) / 2 < 2 {
                continue;
            }
            let s = sigma(l, m, 2).unwrap();
            assert!(
                reduce_mod(&s, 2).unwrap().value().is_zero(),
                "second term not divisible by 4 at l={l}, m={m}"
            );
        }
    }

    for n in 0..=20u64 {
        for m in 0..=20u64 {
            assert_eq!(
                cos_power_coeff(n, m),
                cos_product_oracle(n, m),
                "cosine coefficient mismatch at n={n}, m={m}"
            );
        }
    }
    verdict("valuation floor (l <= 100), second-term congruence (l <= 200), cosine coefficients (n <= 20)");
}

/// Expand cos^n in the basis {cos(k phi)} by repeated angle addition,
/// independently of any binomial formula, and fold to the two-sided
/// convention used by `cos_power_coeff`.
fn cos_product_oracle(n: u64, m: u64) -> BigRational {
    let mut basis = vec![BigRational::one()];
    for _ in 0..n {
        let mut next = vec![BigRational::zero(); basis.len() + 1];
        for (k, c) in basis.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let half = c / rat(2, 1);
            next[k + 1] += &half;
            let lower = if k == 0 { 1 } else { k - 1 };
            next[lower] += &half;
        }
        basis = next;
    }
    let cm = basis
        .get(m as usize)
        .cloned()
        .unwrap_or_else(BigRational::zero);
    if m == 0 {
        cm
    } else {
        cm / rat(2, 1)
    }
}
