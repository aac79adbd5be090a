//! Lucas sequences `u_n = (alpha^n - conj(alpha)^n) / (alpha - conj(alpha))`
//! for `alpha = (P + sqrt(b)) / 2`, primitive prime divisors, and the table of
//! pairs `(n, P, b)` with `4 < n <= 30` whose `n`-th term has none.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::{Error, Result};

/// A Lucas pair given by its trace `P` and discriminant `b = P^2 - 4Q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LucasSpec {
    p: i64,
    b: i64,
    q: i64,
}

impl LucasSpec {
    pub fn new(p: i64, b: i64) -> Result<Self> {
        let invalid = |reason| Error::InvalidLucasPair { p, b, reason };
        if b == 0 {
            return Err(invalid("zero discriminant"));
        }
        let diff = p as i128 * p as i128 - b as i128;
        if diff.rem_euclid(4) != 0 {
            return Err(invalid("P^2 - b is not divisible by 4"));
        }
        let q = i64::try_from(diff / 4).map_err(|_| invalid("norm out of range"))?;
        if p == 0 || q == 0 {
            return Err(invalid("trace and norm must be nonzero"));
        }
        if p.gcd(&q) != 1 {
            return Err(invalid("trace and norm are not coprime"));
        }
        // alpha / conj(alpha) is a root of unity iff P^2 = kQ for k in 1..=4.
        let p2 = p as i128 * p as i128;
        if (1..=4).any(|k| p2 == k * q as i128) {
            return Err(invalid("degenerate pair"));
        }
        Ok(LucasSpec { p, b, q })
    }

    pub fn from_trace_norm(p: i64, q: i64) -> Result<Self> {
        let b = p
            .checked_mul(p)
            .and_then(|p2| p2.checked_sub(q.checked_mul(4)?))
            .ok_or(Error::InvalidLucasPair {
                p,
                b: 0,
                reason: "discriminant out of range",
            })?;
        Self::new(p, b)
    }

    pub fn trace(&self) -> i64 {
        self.p
    }

    pub fn disc(&self) -> i64 {
        self.b
    }

    pub fn norm(&self) -> i64 {
        self.q
    }

    /// Representative under `(P, b) ~ (-P, b)`.
    pub fn canonical(&self) -> LucasSpec {
        LucasSpec {
            p: self.p.abs(),
            ..*self
        }
    }
}

/// `u_0, u_1, ..., u_n`.
pub fn lucas_terms(spec: &LucasSpec, n: u32) -> Vec<BigInt> {
    let p = BigInt::from(spec.p);
    let q = BigInt::from(spec.q);
    let mut terms = Vec::with_capacity(n as usize + 1);
    terms.push(BigInt::zero());
    if n >= 1 {
        terms.push(BigInt::one());
    }
    for k in 2..=n as usize {
        let next = &p * &terms[k - 1] - &q * &terms[k - 2];
        terms.push(next);
    }
    terms
}

pub fn lucas_u(spec: &LucasSpec, n: u32) -> BigInt {
    lucas_terms(spec, n).pop().expect("u_0 always present")
}

/// Limits for primitive divisor testing.
///
/// Whether a primitive prime exists is decided exactly by stripping every
/// prime shared with an earlier term; trial division is only used to name the
/// smallest primitive prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FactorBudget {
    /// Terms with more bits than this are refused.
    pub max_bits: u64,
    /// Largest trial divisor tried when naming a witness.
    pub trial_bound: u64,
}

impl Default for FactorBudget {
    fn default() -> Self {
        FactorBudget {
            max_bits: 128,
            trial_bound: 1 << 20,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimitiveDivisor {
    pub present: bool,
    /// Smallest primitive prime, when it could be found within the budget.
    pub witness: Option<BigInt>,
}

pub fn has_primitive_prime_divisor(
    spec: &LucasSpec,
    n: u32,
    budget: &FactorBudget,
) -> Result<PrimitiveDivisor> {
    let terms = lucas_terms(spec, n);
    primitive_part_of(&terms, n, budget)
}

fn primitive_part_of(terms: &[BigInt], n: u32, budget: &FactorBudget) -> Result<PrimitiveDivisor> {
    let target = terms[n as usize].abs();
    let bits = target.bits();
    if bits > budget.max_bits {
        return Err(Error::FactoringLimitExceeded {
            n,
            bits,
            limit: budget.max_bits,
        });
    }
    if n == 0 || target.is_zero() {
        return Ok(PrimitiveDivisor {
            present: false,
            witness: None,
        });
    }
    let mut rest = target;
    for earlier in terms[1..n as usize].iter().filter(|t| !t.is_zero()) {
        loop {
            let g = rest.gcd(earlier);
            if g.is_one() {
                break;
            }
            rest /= g;
        }
    }
    if rest.is_one() {
        return Ok(PrimitiveDivisor {
            present: false,
            witness: None,
        });
    }
    Ok(PrimitiveDivisor {
        present: true,
        witness: smallest_prime_factor(&rest, budget.trial_bound),
    })
}

fn smallest_prime_factor(n: &BigInt, bound: u64) -> Option<BigInt> {
    if let Some(small) = n.to_u64() {
        let mut p = 2u64;
        while p <= bound && p.saturating_mul(p) <= small {
            if small % p == 0 {
                return Some(p.into());
            }
            p += if p == 2 { 1 } else { 2 };
        }
        if p.saturating_mul(p) > small {
            return Some(n.clone());
        }
        return None;
    }
    let mut p = 2u64;
    while p <= bound {
        if (n % p).is_zero() {
            return Some(p.into());
        }
        p += if p == 2 { 1 } else { 2 };
    }
    let b = BigInt::from(bound);
    if &b * &b >= *n {
        Some(n.clone())
    } else {
        None
    }
}

/// One row of the exception table: `u_n` of the pair `((P + sqrt(b))/2, ...)`
/// has no primitive prime divisor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BhvEntry {
    pub n: u32,
    pub p: i64,
    pub b: i64,
}

const fn row(n: u32, p: i64, b: i64) -> BhvEntry {
    BhvEntry { n, p, b }
}

static BHV_TABLE: [BhvEntry; 19] = [
    row(5, 1, -7),
    row(5, 1, -11),
    row(5, 12, -76),
    row(5, 12, -1364),
    row(7, 1, -19),
    row(8, 2, -24),
    row(8, 1, -7),
    row(10, 2, -8),
    row(10, 5, -3),
    row(10, 5, -47),
    row(12, 1, 5),
    row(12, 1, -7),
    row(12, 1, -11),
    row(12, 2, -56),
    row(12, 1, -15),
    row(12, 1, -19),
    row(13, 1, -7),
    row(18, 1, -7),
    row(30, 1, -7),
];

/// All exceptional `(n, P, b)` for `4 < n <= 30`, `n != 6`, up to `P -> -P`.
pub fn bhv_exceptions() -> &'static [BhvEntry] {
    &BHV_TABLE
}

pub fn bhv_rows_for(n: u32) -> Vec<BhvEntry> {
    BHV_TABLE.iter().copied().filter(|e| e.n == n).collect()
}

/// Parameters of a desk-scale sweep over imaginary Lucas pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BhvSweep {
    /// Bound on `|P|`.
    pub max_trace: i64,
    /// Bound on `Q`; only `b < 0` is swept so `Q > 0`.
    pub max_norm: i64,
    pub indices: Vec<u32>,
    pub budget: FactorBudget,
}

impl BhvSweep {
    /// Every `n` with `4 < n <= n_max` except 6.
    pub fn up_to(max_trace: i64, max_norm: i64, n_max: u32) -> Self {
        BhvSweep {
            max_trace,
            max_norm,
            indices: (5..=n_max).filter(|&n| n != 6).collect(),
            budget: FactorBudget::default(),
        }
    }

    pub fn with_indices(max_trace: i64, max_norm: i64, indices: &[u32]) -> Self {
        BhvSweep {
            max_trace,
            max_norm,
            indices: indices.to_vec(),
            budget: FactorBudget::default(),
        }
    }

    fn admissible(&self) -> impl Iterator<Item = LucasSpec> + '_ {
        (1..=self.max_trace).flat_map(move |p| {
            (1..=self.max_norm).filter_map(move |q| {
                let b = p * p - 4 * q;
                if b >= 0 {
                    return None;
                }
                LucasSpec::new(p, b).ok()
            })
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BhvReport {
    pub pairs_checked: usize,
    /// Defective `(n, P, b)` found, with `P > 0`.
    pub found: BTreeSet<BhvEntry>,
    /// Table rows inside the swept region.
    pub expected: BTreeSet<BhvEntry>,
}

impl BhvReport {
    pub fn matches(&self) -> bool {
        self.found == self.expected
    }

    pub fn missing(&self) -> Vec<BhvEntry> {
        self.expected.difference(&self.found).copied().collect()
    }

    pub fn unexpected(&self) -> Vec<BhvEntry> {
        self.found.difference(&self.expected).copied().collect()
    }
}

/// Recomputes the exception table inside the sweep region.
///
/// Pairs with `P < 0` are equivalent to `(-P, b)` and have terms of equal
/// absolute value, so only `P > 0` is enumerated.
pub fn verify_bhv_rows(sweep: &BhvSweep) -> Result<BhvReport> {
    let n_max = sweep.indices.iter().copied().max().unwrap_or(0);
    let mut found = BTreeSet::new();
    let mut pairs_checked = 0;
    for spec in sweep.admissible() {
        pairs_checked += 1;
        let terms = lucas_terms(&spec, n_max);
        for &n in &sweep.indices {
            if !primitive_part_of(&terms, n, &sweep.budget)?.present {
                found.insert(BhvEntry {
                    n,
                    p: spec.p,
                    b: spec.b,
                });
            }
        }
    }
    let expected = BHV_TABLE
        .iter()
        .copied()
        .filter(|e| {
            e.b < 0
                && sweep.indices.contains(&e.n)
                && e.p.abs() <= sweep.max_trace
                && (e.p * e.p - e.b) / 4 <= sweep.max_norm
        })
        .map(|e| BhvEntry { p: e.p.abs(), ..e })
        .collect();
    Ok(BhvReport {
        pairs_checked,
        found,
        expected,
    })
}
