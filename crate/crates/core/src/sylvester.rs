//! Generalised Sylvester sequences: iterates of `g_m(x) = x^2 - mx + m`.
//!
//! A term at index `n >= 1` is `g(t)` for the previous term `t`, so it is a
//! perfect power exactly when `t` is an `x` coordinate of a solution of
//! `y^q = g(x)` with `|y| > 1`. Those coordinates come from [`solve_all`];
//! walking them backwards through the preimages of `g` gives every seed whose
//! orbit ever reaches a perfect power.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};

use crate::solver::{perfect_power, solve_all, Completeness, SolveOptions};
use crate::{Error, MonicQuadratic, Result};

/// Default number of generated terms.
pub const DEFAULT_TERMS: usize = 12;
/// Hard cap on the size of a generated term, in decimal digits.
pub const DIGIT_CAP: usize = 1_000_000;
/// Backward levels explored before giving up on a certificate.
const MAX_LEVELS: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SylvesterSeq {
    pub m: u64,
    pub a: BigInt,
    pub terms: Vec<BigInt>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PowerHit {
    pub index: usize,
    pub base: BigInt,
    pub exponent: u32,
}

/// Why the hit list of a scan is complete.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    /// `levels[k]` holds every seed `a` for which `f^(k+1)(a)` is a perfect
    /// power. The last level is empty.
    pub levels: Vec<Vec<BigInt>>,
    /// Weakest completeness over the exponents used for `levels[0]`.
    pub completeness: Completeness,
}

impl Certificate {
    /// Indices `n >= 1` at which the orbit of `a` is a perfect power.
    pub fn hit_indices(&self, a: &BigInt) -> Vec<usize> {
        self.levels
            .iter()
            .enumerate()
            .filter(|(_, level)| level.contains(a))
            .map(|(k, _)| k + 1)
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerScan {
    pub hits: Vec<PowerHit>,
    /// `None` when every term was tested on its own.
    pub certificate: Option<Certificate>,
}

pub fn g(m: u64) -> MonicQuadratic {
    MonicQuadratic::new(-BigInt::from(m), BigInt::from(m))
}

fn validate(m: u64, a: &BigInt) -> Result<()> {
    if m == 0 || m == 4 {
        return Err(Error::InvalidSeed(format!("type m = {m} is excluded")));
    }
    if *a <= BigInt::from(m) {
        return Err(Error::InvalidSeed(format!("seed {a} must exceed m = {m}")));
    }
    if !a.gcd(&BigInt::from(m)).is_one() {
        return Err(Error::InvalidSeed(format!("seed {a} is not coprime to m = {m}")));
    }
    Ok(())
}

fn digits_upper(n: &BigInt) -> usize {
    (n.bits() as f64 * std::f64::consts::LOG10_2).ceil() as usize + 1
}

/// First `count` terms of `f^n(a)`, with the digit cap applied.
fn orbit(f: &MonicQuadratic, a: &BigInt, count: usize) -> Result<Vec<BigInt>> {
    let mut terms = Vec::with_capacity(count);
    let mut t = a.clone();
    for index in 0..count {
        if index > 0 {
            if 2 * digits_upper(&t) > DIGIT_CAP {
                return Err(Error::GrowthCapExceeded {
                    index,
                    limit: DIGIT_CAP,
                });
            }
            t = f.eval(&t);
        }
        terms.push(t.clone());
    }
    Ok(terms)
}

pub fn generate(m: u64, a: impl Into<BigInt>, count: usize) -> Result<SylvesterSeq> {
    let a = a.into();
    validate(m, &a)?;
    if count == 0 {
        return Err(Error::InvalidSeed("count must be at least 1".into()));
    }
    let terms = orbit(&g(m), &a, count)?;
    debug_assert!(terms.windows(2).all(|w| w[0] < w[1]));
    Ok(SylvesterSeq { m, a, terms })
}

/// Checks `G_n = m + (a - m) * G_0 * ... * G_{n-1}` for every generated `n`,
/// and that the terms are pairwise coprime.
pub fn check_mohanty(seq: &SylvesterSeq) -> bool {
    let m = BigInt::from(seq.m);
    let mut product = BigInt::one();
    for t in &seq.terms {
        if *t != &m + (&seq.a - &m) * &product {
            return false;
        }
        product *= t;
    }
    seq.terms.iter().enumerate().all(|(i, s)| {
        seq.terms[i + 1..].iter().all(|t| s.gcd(t).is_one())
    })
}

/// Integer `t >= m/2` with `g_m(t) = c`; the other root is `m - t`.
pub fn preimage_exists(m: u64, c: &BigInt) -> Option<BigInt> {
    let m = BigInt::from(m);
    let disc: BigInt = &m * &m - 4 * &m + 4 * c;
    if disc.is_negative() {
        return None;
    }
    let r = disc.sqrt();
    if &r * &r != disc || !(&m + &r).is_even() {
        return None;
    }
    Some((m + r) / 2)
}

/// Builds the backward levels from the solution set of `y^q = f(x)`.
pub fn certificate(f: &MonicQuadratic, opts: &SolveOptions) -> Result<Certificate> {
    let set = solve_all(f, opts)?;
    let completeness = set
        .exponents
        .iter()
        .map(|e| e.completeness)
        .find(|c| *c != Completeness::ProvablyComplete)
        .unwrap_or(Completeness::ProvablyComplete);
    let mut level: Vec<BigInt> = set.solutions.iter().map(|s| s.x.clone()).collect();
    level.sort();
    level.dedup();
    let mut levels = vec![level];
    while !levels.last().unwrap().is_empty() {
        if levels.len() > MAX_LEVELS {
            return Err(Error::UnsupportedBranch(format!(
                "preimage levels did not terminate within {MAX_LEVELS} steps"
            )));
        }
        let mut next: Vec<BigInt> = levels
            .last()
            .unwrap()
            .iter()
            .flat_map(|c| f.preimages(c))
            .collect();
        next.sort();
        next.dedup();
        levels.push(next);
    }
    Ok(Certificate {
        levels,
        completeness,
    })
}

fn hit_at(index: usize, term: &BigInt) -> Option<PowerHit> {
    perfect_power(term).map(|(base, exponent)| PowerHit {
        index,
        base,
        exponent,
    })
}

/// Hits of an orbit given its certificate: index 0 is tested directly, later
/// indices only where the certificate allows one.
pub fn certified_hits(terms: &[BigInt], cert: &Certificate) -> Vec<PowerHit> {
    let a = &terms[0];
    let mut hits: Vec<PowerHit> = hit_at(0, a).into_iter().collect();
    for n in cert.hit_indices(a) {
        if let Some(term) = terms.get(n) {
            hits.extend(hit_at(n, term));
        }
    }
    hits
}

/// Perfect-power terms among the first `count`. Types 1, 2 and 3 carry a
/// certificate; other types test each term.
pub fn scan_powers(m: u64, a: impl Into<BigInt>, count: usize) -> Result<PowerScan> {
    scan_powers_with(m, a, count, &SolveOptions::default())
}

pub fn scan_powers_with(
    m: u64,
    a: impl Into<BigInt>,
    count: usize,
    opts: &SolveOptions,
) -> Result<PowerScan> {
    let seq = generate(m, a, count)?;
    if !(1..=3).contains(&m) {
        let hits = seq
            .terms
            .iter()
            .enumerate()
            .filter_map(|(n, t)| hit_at(n, t))
            .collect();
        return Ok(PowerScan {
            hits,
            certificate: None,
        });
    }
    let cert = certificate(&g(m), opts)?;
    Ok(PowerScan {
        hits: certified_hits(&seq.terms, &cert),
        certificate: Some(cert),
    })
}

/// Orbit of an arbitrary seed under `f`, with its perfect-power terms at
/// indices `n >= 1`.
pub fn iterate_general(
    f: &MonicQuadratic,
    a: impl Into<BigInt>,
    count: usize,
) -> Result<(Vec<BigInt>, PowerScan)> {
    let a = a.into();
    let cert = certificate(f, &SolveOptions::default())?;
    let terms = orbit(f, &a, count.max(1))?;
    let hits = cert
        .hit_indices(&a)
        .into_iter()
        .filter_map(|n| terms.get(n).and_then(|t| hit_at(n, t)))
        .collect();
    Ok((
        terms,
        PowerScan {
            hits,
            certificate: Some(cert),
        },
    ))
}
