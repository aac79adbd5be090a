//! Integer solutions of `y^q = x^2 + ax + b` for every exponent in the plan.

mod expansion;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub use expansion::{imag_coeff_poly, real_coeff, real_coeff_poly, solve_d3_q3, solve_odd_q};

use crate::bound::{plan, CheckStatus, ExponentPlan, Regime};
use crate::{Error, MonicQuadratic, Result, DEFAULT_SEARCH_BOUND};

/// A verified point: `y^q = f(x)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Solution {
    pub q: u32,
    pub x: BigInt,
    pub y: BigInt,
}

impl Solution {
    /// `None` unless `y^q = f(x)` holds exactly.
    pub fn new(f: &MonicQuadratic, x: BigInt, y: BigInt, q: u32) -> Option<Solution> {
        (y.pow(q) == f.eval(&x)).then_some(Solution { q, x, y })
    }

    pub fn is_trivial(&self) -> bool {
        self.y.abs() <= BigInt::one()
    }
}

impl fmt::Display for Solution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(x, y, q) = ({}, {}, {})", self.x, self.y, self.q)
    }
}

/// Which variable a bounded search ranged over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SearchVariable {
    /// `|x| <= bound`.
    X,
    /// `|V| <= bound` for `gamma = (U + V*sqrt(d))/2`, with `U` unrestricted.
    GeneratorV,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Completeness {
    ProvablyComplete,
    CompleteUpToBound { bound: u64, over: SearchVariable },
}

impl fmt::Display for Completeness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Completeness::ProvablyComplete => write!(f, "provably complete"),
            Completeness::CompleteUpToBound { bound, over } => {
                let var = match over {
                    SearchVariable::X => "|x|",
                    SearchVariable::GeneratorV => "|V|",
                };
                write!(f, "complete for {var} <= {bound}")
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExponentOutcome {
    pub q: u32,
    pub completeness: Completeness,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolutionSet {
    pub f: MonicQuadratic,
    pub plan: ExponentPlan,
    /// Sorted by `(q, x, y)`, without duplicates.
    pub solutions: Vec<Solution>,
    pub exponents: Vec<ExponentOutcome>,
}

impl SolutionSet {
    pub fn for_exponent(&self, q: u32) -> impl Iterator<Item = &Solution> {
        self.solutions.iter().filter(move |s| s.q == q)
    }

    /// Distinct `(y, q)` pairs.
    pub fn power_pairs(&self) -> Vec<(BigInt, u32)> {
        let mut pairs: Vec<(BigInt, u32)> =
            self.solutions.iter().map(|s| (s.y.clone(), s.q)).collect();
        pairs.sort();
        pairs.dedup();
        pairs
    }

    pub fn is_provably_complete(&self) -> bool {
        self.exponents
            .iter()
            .all(|e| e.completeness == Completeness::ProvablyComplete)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolveOptions {
    pub search_bound: u64,
    pub include_trivial: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            search_bound: DEFAULT_SEARCH_BOUND,
            include_trivial: false,
        }
    }
}

fn normalize(sols: &mut Vec<Solution>) {
    sols.sort();
    sols.dedup();
}

/// Positive divisors of `n`, ascending.
fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// All solutions of `y^2 = f(x)`: with `X = 2x + a`,
/// `(2y - X)(2y + X) = -D`.
pub fn solve_q2(f: &MonicQuadratic) -> Result<Vec<Solution>> {
    let disc = f.discriminant();
    let n = (-&disc)
        .to_u64()
        .filter(|&n| n > 0)
        .ok_or_else(|| Error::UnsupportedDiscriminant(disc.to_string()))?;
    let mut out = Vec::new();
    for d in divisors(n) {
        let e = n / d;
        for (d, e) in [(d as i128, e as i128), (-(d as i128), -(e as i128))] {
            if (d + e) % 4 != 0 || (e - d) % 2 != 0 {
                continue;
            }
            let y = BigInt::from((d + e) / 4);
            let twice_x = BigInt::from((e - d) / 2) - &f.a;
            if twice_x.is_odd() {
                continue;
            }
            if let Some(s) = Solution::new(f, twice_x / 2, y, 2) {
                out.push(s);
            }
        }
    }
    normalize(&mut out);
    Ok(out)
}

/// Every solution with `|x| <= bound`, by exact `q`-th root extraction.
pub fn brute_force(f: &MonicQuadratic, q: u32, bound: u64) -> Vec<Solution> {
    let n = bound as i64;
    let mut out = Vec::new();
    for x in -n..=n {
        let x = BigInt::from(x);
        let value = f.eval(&x);
        if value.is_negative() && q % 2 == 0 {
            continue;
        }
        let root = value.nth_root(q);
        if root.pow(q) != value {
            continue;
        }
        if q % 2 == 0 && !root.is_zero() {
            out.push(Solution {
                q,
                x: x.clone(),
                y: -&root,
            });
        }
        out.push(Solution { q, x, y: root });
    }
    normalize(&mut out);
    out
}

/// Drops solutions with `|y| <= 1`.
pub fn nontrivial(sols: Vec<Solution>) -> Vec<Solution> {
    sols.into_iter().filter(|s| !s.is_trivial()).collect()
}

/// Runs every exponent of [`plan`] through its solver.
pub fn solve_all(f: &MonicQuadratic, opts: &SolveOptions) -> Result<SolutionSet> {
    let plan = plan(f)?;
    let mut solutions = Vec::new();
    let mut exponents = Vec::new();
    for check in &plan.checks {
        let q = check.q;
        let (sols, completeness) = if q == 2 {
            (solve_q2(f)?, Completeness::ProvablyComplete)
        } else {
            match (plan.regime, check.status) {
                (Regime::SpecialList, CheckStatus::ProvablyComplete) => {
                    (solve_odd_q(f, q)?, Completeness::ProvablyComplete)
                }
                (Regime::SpecialList, CheckStatus::BoundedSearchOnly) if plan.disc == -3 => {
                    solve_d3_q3(f, opts.search_bound)?
                }
                _ => (
                    brute_force(f, q, opts.search_bound),
                    Completeness::CompleteUpToBound {
                        bound: opts.search_bound,
                        over: SearchVariable::X,
                    },
                ),
            }
        };
        solutions.extend(sols);
        exponents.push(ExponentOutcome { q, completeness });
    }
    if !opts.include_trivial {
        solutions = nontrivial(solutions);
    }
    normalize(&mut solutions);
    Ok(SolutionSet {
        f: f.clone(),
        plan,
        solutions,
        exponents,
    })
}

/// `(t, k)` with `t^k = n` and `k >= 2` maximal, for `n >= 2`.
pub fn perfect_power(n: &BigInt) -> Option<(BigInt, u32)> {
    if *n < BigInt::from(2) {
        return None;
    }
    let mut base = n.clone();
    let mut exp = 1u32;
    'outer: loop {
        let bits = base.bits();
        let mut k = 2u64;
        while k <= bits {
            if is_prime_u64(k) {
                let root = base.nth_root(k as u32);
                if root.pow(k as u32) == base {
                    base = root;
                    exp *= k as u32;
                    continue 'outer;
                }
            }
            k += 1;
        }
        break;
    }
    (exp > 1).then_some((base, exp))
}

fn is_prime_u64(n: u64) -> bool {
    n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0)
}
