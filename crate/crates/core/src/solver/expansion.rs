//! Solving `x - alpha = eps * gamma^q` by expanding `(U + V*sqrt(d))^q`.
//!
//! With `alpha = (-a + sqrt(D))/2`, `sqrt(D) = s*sqrt(d)` and
//! `gamma = (U + V*sqrt(d))/2`, the element `x - alpha` has doubled
//! coordinates `(2x + a, -s)`. Writing `(U + V*sqrt(d))^q = A + B*sqrt(d)`
//! and the unit as `(e1 + e2*sqrt(d))/2`, the equation becomes
//!
//! ```text
//! e1*B + e2*A      = -s * 2^q
//! e1*A + e2*d*B    = 2^q * (2x + a)
//! ```
//!
//! For the trivial unit (`e1 = 2`, `e2 = 0`) the first line reads
//! `B = -s * 2^(q-1)`, and `V` divides the right-hand side.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use num_integer::Integer;

use super::{Completeness, SearchVariable, Solution};
use crate::classnum::class_number;
use crate::poly::IntPoly;
use crate::qint::{unit_classes, FieldDisc, QuadInt};
use crate::{Error, MonicQuadratic, Result};

fn binomial(n: u32, k: u32) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Coefficient of `sqrt(d)` in `(U + V*sqrt(d))^q`, as a polynomial in `U`:
/// `sum over odd k of C(q,k) U^(q-k) V^k d^((k-1)/2)`.
pub fn imag_coeff_poly(q: u32, d: i64, v: &BigInt) -> IntPoly {
    expansion_poly(q, d, v, 1)
}

/// Rational part of `(U + V*sqrt(d))^q`, as a polynomial in `U`.
pub fn real_coeff_poly(q: u32, d: i64, v: &BigInt) -> IntPoly {
    expansion_poly(q, d, v, 0)
}

/// `sum over even k of C(q,k) U^(q-k) V^k d^(k/2)`.
pub fn real_coeff(q: u32, d: i64, u: &BigInt, v: &BigInt) -> BigInt {
    real_coeff_poly(q, d, v).eval(u)
}

fn expansion_poly(q: u32, d: i64, v: &BigInt, parity: u32) -> IntPoly {
    let d = BigInt::from(d);
    let mut coeffs = vec![BigInt::zero(); q as usize + 1];
    for k in (parity..=q).step_by(2) {
        let term = binomial(q, k) * v.pow(k) * d.pow(k / 2);
        coeffs[(q - k) as usize] = term;
    }
    IntPoly::new(coeffs)
}

/// Field data for an in-scope discriminant: generator `d` and scale `s`.
fn field_of(f: &MonicQuadratic) -> Result<(FieldDisc, i64, i64)> {
    let disc = f.small_discriminant()?;
    let (field, s) = FieldDisc::from_discriminant(disc)
        .map_err(|_| Error::UnsupportedBranch(format!("D = {disc} is not fundamental")))?;
    Ok((field, s, disc))
}

/// Solutions of `x - alpha = unit * gamma^q` with `gamma`'s second coordinate
/// ranging over `vs`.
fn solve_with_unit(
    f: &MonicQuadratic,
    q: u32,
    field: FieldDisc,
    s: i64,
    unit: &QuadInt,
    vs: impl Iterator<Item = BigInt>,
) -> Vec<Solution> {
    let d = field.d();
    let two_q = BigInt::one() << q;
    let rhs = &two_q * s;
    let (e1, e2) = (unit.u(), unit.v());
    let mut out = Vec::new();
    for v in vs {
        let imag = imag_coeff_poly(q, d, &v);
        let mut poly = scale(&imag, e1);
        if !e2.is_zero() {
            poly = add(&poly, &scale(&real_coeff_poly(q, d, &v), e2));
        }
        let poly = poly.add_constant(&rhs);
        if poly.is_zero() {
            continue;
        }
        for u in poly.integer_roots() {
            let Ok(gamma) = QuadInt::new(u, v.clone(), field) else {
                continue;
            };
            let lhs = unit.mul(&gamma.pow(q as u64)).expect("same field");
            debug_assert_eq!(lhs.v(), &BigInt::from(-s));
            // lhs = (2x + a, -s)
            let twice_x = lhs.u() - &f.a;
            if twice_x.is_odd() {
                continue;
            }
            let x = twice_x / 2;
            if let Some(sol) = Solution::new(f, x, gamma.norm(), q) {
                out.push(sol);
            }
        }
    }
    out
}

fn scale(p: &IntPoly, c: &BigInt) -> IntPoly {
    IntPoly::new(p.coeffs().iter().map(|x| x * c).collect())
}

fn add(p: &IntPoly, r: &IntPoly) -> IntPoly {
    let n = p.coeffs().len().max(r.coeffs().len());
    IntPoly::new(
        (0..n)
            .map(|i| {
                p.coeffs().get(i).cloned().unwrap_or_default()
                    + r.coeffs().get(i).cloned().unwrap_or_default()
            })
            .collect(),
    )
}

/// `+-2^e` for `0 <= e <= max_exp`.
fn signed_powers_of_two(max_exp: u32) -> impl Iterator<Item = BigInt> {
    (0..=max_exp).flat_map(|e| {
        let p = BigInt::one() << e;
        [-&p, p]
    })
}

fn is_odd_prime(q: u32) -> bool {
    q >= 3 && (2..q).take_while(|d| d * d <= q).all(|d| q % d != 0)
}

/// All solutions of `y^q = f(x)` for an odd prime `q`, when the ring of
/// integers has class number one and every unit is a `q`-th power.
///
/// Returns every solution including `|y| <= 1`; the result is complete.
pub fn solve_odd_q(f: &MonicQuadratic, q: u32) -> Result<Vec<Solution>> {
    if !is_odd_prime(q) {
        return Err(Error::UnsupportedBranch(format!("{q} is not an odd prime")));
    }
    let (field, s, disc) = field_of(f)?;
    if class_number(disc)? != 1 {
        return Err(Error::UnsupportedBranch(format!(
            "class number of D = {disc} is not 1"
        )));
    }
    let classes = unit_classes(field, q as u64);
    if classes.reps.len() != 1 {
        return Err(Error::UnsupportedBranch(format!(
            "units of Q(sqrt({})) are not all {q}-th powers",
            field.d()
        )));
    }
    // V * B'(U) = -s * 2^(q-1)
    let max_exp = q - 1 + (s == 2) as u32;
    let unit = QuadInt::one(field);
    let mut sols = solve_with_unit(f, q, field, s, &unit, signed_powers_of_two(max_exp));
    super::normalize(&mut sols);
    Ok(sols)
}

/// Solutions of `y^3 = f(x)` for `D(f) = -3`, searching each unit class.
///
/// The trivial class needs only `V | 4`; the classes of `w` and `w^2` have a
/// binary cubic equation in `(U, V)`, searched for `|V| <= bound` with `U`
/// unrestricted.
pub fn solve_d3_q3(f: &MonicQuadratic, bound: u64) -> Result<(Vec<Solution>, Completeness)> {
    let (field, s, disc) = field_of(f)?;
    if disc != -3 {
        return Err(Error::UnsupportedBranch(format!("expected D = -3, got {disc}")));
    }
    let q = 3;
    let mut sols = Vec::new();
    for unit in unit_classes(field, q as u64).reps {
        if unit.v().is_zero() {
            let max_exp = q - 1 + (s == 2) as u32;
            sols.extend(solve_with_unit(f, q, field, s, &unit, signed_powers_of_two(max_exp)));
        } else {
            let n = bound as i64;
            sols.extend(solve_with_unit(f, q, field, s, &unit, (-n..=n).map(BigInt::from)));
        }
    }
    super::normalize(&mut sols);
    Ok((
        sols,
        Completeness::CompleteUpToBound {
            bound,
            over: SearchVariable::GeneratorV,
        },
    ))
}
