//! The geometric face of the divisibility question: quadric cones
//! x^2 + b y^2 - (b+1) z^2, harmonic polynomials, and solid harmonics.
//!
//! The quadric is itself harmonic for every b, so a product q * f is
//! harmonic exactly when the gradients of q and f are orthogonal as
//! polynomials ([`grad_dot`] vanishes). The multipliers f with that property
//! form a graded space computed here by exact rational elimination; for the
//! round cone (b = 1) it is spanned by 1, xyz and (x^2 - y^2) z, and the two
//! cubic generators are precisely the harmonics attached to the degrees
//! where the Legendre side vanishes.
//!
//! [`solid_harmonic`] carries the one-dimensional picture over: it rebuilds
//! P_l^m as a homogeneous polynomial in three variables, and divisibility by
//! the b = 1 cone mirrors divisibility by P2 on the interval.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::legendre::legendre_poly;
use crate::tripoly::{Axis, TriPoly};

/// The quadric x^2 + b y^2 - (b+1) z^2 with rational b >= 1. All members
/// are harmonic, irreducible, and cut a real cone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeQuadric {
    b: BigRational,
    poly: TriPoly,
}

impl ConeQuadric {
    pub fn new(b: BigRational) -> Result<Self> {
        if b < BigRational::one() {
            return Err(Error::BadRange(format!(
                "cone parameter must be >= 1, got {b}"
            )));
        }
        let mut poly = TriPoly::monomial((2, 0, 0), BigRational::one());
        poly.add_term((0, 2, 0), b.clone());
        poly.add_term((0, 0, 2), -(&b + BigRational::one()));
        Ok(ConeQuadric { b, poly })
    }

    /// Shorthand for whole-number parameters.
    pub fn integer(b: u64) -> Result<Self> {
        Self::new(BigRational::from(BigInt::from(b)))
    }

    pub fn b(&self) -> &BigRational {
        &self.b
    }

    pub fn poly(&self) -> &TriPoly {
        &self.poly
    }
}

/// The gradient pairing sum_axis (d q / d axis) (d f / d axis). A harmonic f
/// keeps q * f harmonic exactly when this vanishes.
pub fn grad_dot(q: &ConeQuadric, f: &TriPoly) -> TriPoly {
    let mut out = TriPoly::zero();
    for axis in Axis::ALL {
        out = &out + &(&q.poly.partial(axis) * &f.partial(axis));
    }
    out
}

/// All exponent triples of total degree d, highest x then y powers first.
fn monomials_of_degree(d: u32) -> Vec<(u32, u32, u32)> {
    let mut out = Vec::new();
    for i in (0..=d).rev() {
        for j in (0..=d - i).rev() {
            out.push((i, j, d - i - j));
        }
    }
    out
}

/// Basis of the nullspace of the matrix (rows of length `ncols`), by
/// fraction-free-in-spirit Gauss-Jordan over Q. Each basis vector carries a
/// 1 in "its" free column and 0 in every other free column, so linear
/// independence is structural.
fn nullspace(mut rows: Vec<Vec<BigRational>>, ncols: usize) -> Vec<Vec<BigRational>> {
    let mut pivot_of_col: Vec<Option<usize>> = vec![None; ncols];
    let mut next_row = 0;
    for col in 0..ncols {
        let Some(pivot) = (next_row..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(next_row, pivot);
        let inv = rows[next_row][col].recip();
        for entry in rows[next_row].iter_mut() {
            *entry *= &inv;
        }
        let pivot_row = rows[next_row].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != next_row && !row[col].is_zero() {
                let factor = row[col].clone();
                for (entry, p) in row.iter_mut().zip(&pivot_row) {
                    *entry -= &factor * p;
                }
            }
        }
        pivot_of_col[col] = Some(next_row);
        next_row += 1;
        if next_row == rows.len() {
            break;
        }
    }
    let mut basis = Vec::new();
    for free in 0..ncols {
        if pivot_of_col[free].is_some() {
            continue;
        }
        let mut v = vec![BigRational::zero(); ncols];
        v[free] = BigRational::one();
        for col in 0..ncols {
            if let Some(row) = pivot_of_col[col] {
                v[col] = -rows[row][free].clone();
            }
        }
        basis.push(v);
    }
    basis
}

/// Rescale to coprime integer coefficients with the leading (largest
/// exponent triple) coefficient positive. Divisibility questions and spans
/// are insensitive to this; printed output is much easier on the eyes.
fn integer_primitive(p: &TriPoly) -> TriPoly {
    if p.is_zero() {
        return TriPoly::zero();
    }
    let mut denom_lcm = BigInt::one();
    for (_, c) in p.terms() {
        denom_lcm = denom_lcm.lcm(c.denom());
    }
    let cleared = p.scale(&BigRational::from(denom_lcm));
    let mut content = BigInt::zero();
    for (_, c) in cleared.terms() {
        debug_assert!(c.denom().is_one());
        content = content.gcd(c.numer());
    }
    let mut scale = BigRational::from(content).recip();
    let leading = cleared.terms().last().expect("nonzero").1;
    if (leading * &scale).is_negative() {
        scale = -scale;
    }
    cleared.scale(&scale)
}

/// Basis of the homogeneous harmonic polynomials of total degree d
/// (dimension 2d + 1 for d >= 1, dimension 1 at d = 0), as the exact
/// nullspace of the Laplacian on the monomial basis.
pub fn harmonic_basis(degree: u32) -> Vec<TriPoly> {
    let cols = monomials_of_degree(degree);
    let constraints = if degree >= 2 {
        monomials_of_degree(degree - 2)
    } else {
        Vec::new()
    };
    let mut rows = vec![vec![BigRational::zero(); cols.len()]; constraints.len()];
    for (c, &exps) in cols.iter().enumerate() {
        let image = TriPoly::monomial(exps, BigRational::one()).laplacian();
        for (&e, v) in image.terms() {
            let r = constraints
                .iter()
                .position(|&x| x == e)
                .expect("laplacian image stays in degree d - 2");
            rows[r][c] = v.clone();
        }
    }
    nullspace(rows, cols.len())
        .into_iter()
        .map(|v| {
            let mut p = TriPoly::zero();
            for (c, coeff) in v.into_iter().enumerate() {
                p.add_term(cols[c], coeff);
            }
            integer_primitive(&p)
        })
        .collect()
}

/// Basis of the degree-d homogeneous harmonics f with grad_dot(q, f) = 0,
/// i.e. those whose product with the quadric is again harmonic.
pub fn multiplier_space_at_degree(q: &ConeQuadric, degree: u32) -> Vec<TriPoly> {
    let harmonics = harmonic_basis(degree);
    let constraints = monomials_of_degree(degree);
    let mut rows = vec![vec![BigRational::zero(); harmonics.len()]; constraints.len()];
    for (c, h) in harmonics.iter().enumerate() {
        let image = grad_dot(q, h);
        for (&e, v) in image.terms() {
            let r = constraints
                .iter()
                .position(|&x| x == e)
                .expect("pairing stays in degree d");
            rows[r][c] = v.clone();
        }
    }
    nullspace(rows, harmonics.len())
        .into_iter()
        .map(|v| {
            let mut p = TriPoly::zero();
            for (c, coeff) in v.into_iter().enumerate() {
                p = &p + &harmonics[c].scale(&coeff);
            }
            integer_primitive(&p)
        })
        .collect()
}

/// One graded slice of the multiplier space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeComponent {
    pub degree: u32,
    pub basis: Vec<TriPoly>,
}

/// The multiplier space of a cone quadric up to a degree bound. For b = 1
/// the total dimension is 3 (degrees 0 and 3); for every b > 1 it is 2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiplierSpace {
    pub b: BigRational,
    pub components: Vec<DegreeComponent>,
}

impl MultiplierSpace {
    pub fn total_dim(&self) -> usize {
        self.components.iter().map(|c| c.basis.len()).sum()
    }

    /// All basis elements across degrees, in degree order.
    pub fn basis(&self) -> impl Iterator<Item = &TriPoly> {
        self.components.iter().flat_map(|c| c.basis.iter())
    }
}

pub fn harmonic_multiplier_space(q: &ConeQuadric, max_degree: u32) -> MultiplierSpace {
    let components = (0..=max_degree)
        .map(|degree| DegreeComponent {
            degree,
            basis: multiplier_space_at_degree(q, degree),
        })
        .collect();
    MultiplierSpace {
        b: q.b().clone(),
        components,
    }
}

fn tri_pow(p: &TriPoly, e: u32) -> TriPoly {
    let mut acc = TriPoly::one();
    for _ in 0..e {
        acc = &acc * p;
    }
    acc
}

/// Real and imaginary parts of the degree-l solid harmonic of order m:
/// the homogeneous polynomial (x + iy)^m sum_i q_i z^i (x^2+y^2+z^2)^((l-m-i)/2)
/// with q the m-th derivative of the Legendre polynomial P_l. Restricted to
/// the unit sphere this is P_l^m(z) e^(i m phi) in spherical coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolidHarmonic {
    pub l: u64,
    pub m: u64,
    pub real: TriPoly,
    pub imag: TriPoly,
}

pub fn solid_harmonic(l: u64, m: u64) -> Result<SolidHarmonic> {
    if m > l {
        return Err(Error::BadRange(format!(
            "need m <= l for a solid harmonic, got l={l}, m={m}"
        )));
    }
    let small = |v: u64| {
        u32::try_from(v).map_err(|_| Error::BadRange(format!("degree {v} too large")))
    };
    small(l)?;
    let mut q = legendre_poly(l);
    for _ in 0..m {
        q = q.derivative();
    }
    let mut r2 = TriPoly::monomial((2, 0, 0), BigRational::one());
    r2.add_term((0, 2, 0), BigRational::one());
    r2.add_term((0, 0, 2), BigRational::one());
    let mut radial = TriPoly::zero();
    for (i, c) in q.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        // exponent parity matches l - m, so the division is exact
        let half = small((l - m - i as u64) / 2)?;
        let term = TriPoly::monomial((0, 0, i as u32), c.clone());
        radial = &radial + &(&term * &tri_pow(&r2, half));
    }
    let x = TriPoly::var(Axis::X);
    let y = TriPoly::var(Axis::Y);
    let mut re = TriPoly::one();
    let mut im = TriPoly::zero();
    for _ in 0..m {
        let next_re = &(&re * &x) - &(&im * &y);
        let next_im = &(&re * &y) + &(&im * &x);
        re = next_re;
        im = next_im;
    }
    Ok(SolidHarmonic {
        l,
        m,
        real: &re * &radial,
        imag: &im * &radial,
    })
}

/// Division of f by the quadric under the lex order x > y > z, where the
/// divisor's leading term is the monic x^2: returns (quotient, remainder)
/// with f = quotient * quadric + remainder and the remainder of x-degree at
/// most 1. The remainder equals f on the cone.
pub fn cone_div_rem(f: &TriPoly, q: &ConeQuadric) -> (TriPoly, TriPoly) {
    let mut rem = f.clone();
    let mut quot = TriPoly::zero();
    loop {
        let target = rem
            .terms()
            .filter(|(exps, _)| exps.0 >= 2)
            .max_by_key(|(exps, _)| **exps)
            .map(|(exps, c)| (*exps, c.clone()));
        let Some(((i, j, k), c)) = target else {
            break;
        };
        let t = TriPoly::monomial((i - 2, j, k), c);
        rem = &rem - &(&t * q.poly());
        quot = &quot + &t;
    }
    (quot, rem)
}

/// Remainder of f modulo the quadric; zero exactly when f vanishes on the
/// cone.
pub fn cone_reduce(f: &TriPoly, q: &ConeQuadric) -> TriPoly {
    cone_div_rem(f, q).1
}

/// The exact quotient f / quadric when the division is exact, `None`
/// otherwise. Because the quadric is irreducible, `Some` is equivalent to f
/// vanishing identically on the cone.
pub fn divides_cone(f: &TriPoly, q: &ConeQuadric) -> Option<TriPoly> {
    let (quot, rem) = cone_div_rem(f, q);
    rem.is_zero().then_some(quot)
}
