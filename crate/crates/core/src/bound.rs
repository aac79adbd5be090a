//! Which prime exponents `q` can give solutions of `y^q = f(x)` with `|y| > 1`.
//!
//! Two regimes are covered:
//!
//! - `D(f)` in `{-3, -4, -7, -8, -11, -19, -43, -67, -163}`: the ring of
//!   integers has unique factorisation, `x - alpha = gamma^q` up to units, and
//!   `u_q(gamma, conj gamma) = +-1`. Beyond `q = 2, 3` only the rows of the
//!   exception table with `b = D(f)` and prime `n` can contribute.
//! - `D(f)` squarefree with class number `h > 1`: only `q = 2, 3` and the
//!   primes dividing `h` need checking.

use std::collections::BTreeMap;

use num_traits::Signed;

use crate::classnum::{class_number, prime_factors};
use crate::lucas::{bhv_exceptions, lucas_u, LucasSpec};
use crate::{Error, MonicQuadratic, Result};

/// Discriminants whose ring of integers is a unique factorisation domain.
pub const SPECIAL_DISCRIMINANTS: [i64; 9] = [-3, -4, -7, -8, -11, -19, -43, -67, -163];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Regime {
    SpecialList,
    ClassNumber,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CheckStatus {
    ProvablyComplete,
    BoundedSearchOnly,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ExponentCheck {
    pub q: u32,
    pub status: CheckStatus,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExponentPlan {
    pub disc: i64,
    pub regime: Regime,
    pub class_number: Option<u64>,
    pub q0: Option<u32>,
    pub checks: Vec<ExponentCheck>,
    /// Set for `D = -4`: `y^q = x^2 + 1` has no solution with `|y| > 1`.
    pub no_solutions: bool,
}

impl ExponentPlan {
    pub fn check_set(&self) -> Vec<u32> {
        self.checks.iter().map(|c| c.q).collect()
    }

    pub fn status(&self, q: u32) -> Option<CheckStatus> {
        self.checks.iter().find(|c| c.q == q).map(|c| c.status)
    }
}

/// `q0` per discriminant; a value of 4 means no prime exponent above 3.
pub fn q0_table() -> BTreeMap<i64, u32> {
    BTreeMap::from([(-7, 13), (-19, 7), (-11, 5), (-43, 4), (-67, 4), (-163, 4)])
}

/// Primes `q > 3` left open by the exception table for discriminant `disc`:
/// rows `(n, P, b)` with `b = disc`, `n` prime and `u_n(P, b) = +-1`.
pub fn exceptional_exponents(disc: i64) -> Vec<u32> {
    let mut out: Vec<u32> = bhv_exceptions()
        .iter()
        .filter(|e| e.b == disc && is_prime(e.n))
        .filter(|e| {
            LucasSpec::new(e.p, e.b)
                .map(|s| lucas_u(&s, e.n).abs() == 1.into())
                .unwrap_or(false)
        })
        .map(|e| e.n)
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

fn is_prime(n: u32) -> bool {
    n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

pub fn plan(f: &MonicQuadratic) -> Result<ExponentPlan> {
    plan_for_discriminant(f.small_discriminant()?)
}

pub fn plan_for_discriminant(disc: i64) -> Result<ExponentPlan> {
    let unsupported = || Error::UnsupportedDiscriminant(disc.to_string());
    if disc >= 0 {
        return Err(unsupported());
    }
    if SPECIAL_DISCRIMINANTS.contains(&disc) {
        return Ok(special_plan(disc));
    }
    // Negative squarefree discriminants are 1 mod 4, hence fundamental.
    let h = class_number(disc).map_err(|_| unsupported())?;
    if disc % 4 == 0 {
        return Err(unsupported());
    }
    let mut qs = vec![2u64, 3];
    qs.extend(prime_factors(h));
    qs.sort_unstable();
    qs.dedup();
    let checks = qs
        .into_iter()
        .map(|q| ExponentCheck {
            q: q as u32,
            status: if q == 2 {
                CheckStatus::ProvablyComplete
            } else {
                CheckStatus::BoundedSearchOnly
            },
        })
        .collect();
    Ok(ExponentPlan {
        disc,
        regime: Regime::ClassNumber,
        class_number: Some(h),
        q0: None,
        checks,
        no_solutions: false,
    })
}

fn special_plan(disc: i64) -> ExponentPlan {
    let base = ExponentPlan {
        disc,
        regime: Regime::SpecialList,
        class_number: Some(1),
        q0: q0_table().get(&disc).copied(),
        checks: Vec::new(),
        no_solutions: false,
    };
    if disc == -4 {
        return ExponentPlan {
            no_solutions: true,
            ..base
        };
    }
    let mut qs = vec![2, 3];
    qs.extend(exceptional_exponents(disc));
    let checks = qs
        .into_iter()
        .map(|q| ExponentCheck {
            q,
            // The q = 3 search for D = -3 runs over a bounded generator range.
            status: if disc == -3 && q == 3 {
                CheckStatus::BoundedSearchOnly
            } else {
                CheckStatus::ProvablyComplete
            },
        })
        .collect();
    ExponentPlan { checks, ..base }
}
