//! Dense univariate integer polynomials and exact integer root finding.
//!
//! Roots are located without floating point: the forward difference
//! `p(k+1) - p(k)` splits the integers into runs on which `p` is monotone,
//! recursively down to constants, and each run is bisected for a sign change.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Coefficients stored lowest degree first, without trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc *= x;
            acc += c;
        }
        acc
    }

    /// Adds `c` to the constant term.
    pub fn add_constant(&self, c: &BigInt) -> IntPoly {
        let mut coeffs = self.coeffs.clone();
        if coeffs.is_empty() {
            coeffs.push(BigInt::zero());
        }
        coeffs[0] += c;
        IntPoly::new(coeffs)
    }

    /// Divides every coefficient by `d`; `None` unless all divisions are exact.
    pub fn div_exact(&self, d: &BigInt) -> Option<IntPoly> {
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            if !(c % d).is_zero() {
                return None;
            }
            out.push(c / d);
        }
        Some(IntPoly::new(out))
    }

    /// `p(x + 1)` via repeated synthetic division.
    fn shift_by_one(&self) -> IntPoly {
        let mut c = self.coeffs.clone();
        let n = c.len();
        for i in 0..n {
            for j in (i..n.saturating_sub(1)).rev() {
                let hi = c[j + 1].clone();
                c[j] += hi;
            }
        }
        IntPoly::new(c)
    }

    /// `p(x + 1) - p(x)`, of degree one less.
    pub fn forward_difference(&self) -> IntPoly {
        let shifted = self.shift_by_one();
        let n = shifted.coeffs.len().max(self.coeffs.len());
        let coeffs = (0..n)
            .map(|i| {
                let a = shifted.coeffs.get(i).cloned().unwrap_or_default();
                let b = self.coeffs.get(i).cloned().unwrap_or_default();
                a - b
            })
            .collect();
        IntPoly::new(coeffs)
    }

    /// An integer `B` with every complex root strictly inside `|z| < B`.
    ///
    /// Fujiwara's bound `2 * max_k |c_{n-k} / c_n|^{1/k}`, with each term
    /// rounded up.
    pub fn root_bound(&self) -> BigInt {
        let Some(n) = self.degree() else {
            return BigInt::one();
        };
        let lead = self.coeffs[n].abs();
        let mut best = BigInt::zero();
        for k in 1..=n {
            let c = self.coeffs[n - k].abs();
            if c.is_zero() {
                continue;
            }
            let ratio = (&c + &lead - 1u32) / &lead;
            let r = ratio.nth_root(k as u32) + 1u32;
            if r > best {
                best = r;
            }
        }
        best * 2 + 1u32
    }

    /// All integer roots, ascending, each reported once.
    ///
    /// Zero roots are stripped first; the remaining candidates must divide the
    /// constant term and lie within [`IntPoly::root_bound`].
    pub fn integer_roots(&self) -> Vec<BigInt> {
        assert!(!self.is_zero(), "integer_roots of the zero polynomial");
        let lowest = self
            .coeffs
            .iter()
            .position(|c| !c.is_zero())
            .expect("nonzero polynomial");
        let stripped = IntPoly::new(self.coeffs[lowest..].to_vec());
        let mut roots = Vec::new();
        if stripped.degree() != Some(0) {
            let bound = stripped.root_bound();
            let constant = &stripped.coeffs[0];
            roots = stripped
                .integer_roots_in(&-&bound, &bound)
                .into_iter()
                .filter(|t| (constant % t).is_zero())
                .collect();
        }
        if lowest > 0 {
            roots.push(BigInt::zero());
            roots.sort();
        }
        roots
    }

    /// Integer roots in `[lo, hi]`, ascending.
    pub fn integer_roots_in(&self, lo: &BigInt, hi: &BigInt) -> Vec<BigInt> {
        assert!(!self.is_zero(), "integer_roots of the zero polynomial");
        if lo > hi {
            return Vec::new();
        }
        let mut candidates = vec![lo.clone(), hi.clone()];
        for k in sign_changes(self, lo, hi) {
            candidates.push(&k + 1u32);
            candidates.push(k);
        }
        candidates.sort();
        candidates.dedup();
        let mut roots: Vec<BigInt> = Vec::new();
        for c in candidates {
            let mut t = c;
            while &t <= hi && self.eval(&t).is_zero() {
                if roots.last() != Some(&t) {
                    roots.push(t.clone());
                }
                t += 1u32;
            }
        }
        roots.sort();
        roots.dedup();
        roots
    }
}

fn sign(x: &BigInt) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

/// Every `k` in `[lo, hi - 1]` with `sign p(k) != sign p(k + 1)`, ascending.
fn sign_changes(p: &IntPoly, lo: &BigInt, hi: &BigInt) -> Vec<BigInt> {
    if lo >= hi || p.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    // p is monotone on the integers between consecutive breakpoints.
    let diff = p.forward_difference();
    let hi_minus_one = hi - 1u32;
    let mut breaks = vec![lo.clone()];
    for k in sign_changes(&diff, lo, &hi_minus_one) {
        breaks.push(k + 1u32);
    }
    breaks.push(hi.clone());
    breaks.dedup();

    let mut out = Vec::new();
    for w in breaks.windows(2) {
        monotone_sign_changes(p, &w[0], &w[1], &mut out);
    }
    out.dedup();
    out
}

/// Sign changes of `p` on `[start, end]`, where `p` is monotone.
fn monotone_sign_changes(p: &IntPoly, start: &BigInt, end: &BigInt, out: &mut Vec<BigInt>) {
    let mut s = start.clone();
    // A monotone sign sequence changes at most twice (through zero).
    while &s < end {
        let s0 = sign(&p.eval(&s));
        if sign(&p.eval(end)) == s0 {
            return;
        }
        // smallest k in (s, end] with sign p(k) != s0
        let (mut lo, mut hi) = (s.clone(), end.clone());
        while &hi - &lo > BigInt::one() {
            let mid: BigInt = (&lo + &hi).div_floor(&BigInt::from(2));
            if sign(&p.eval(&mid)) == s0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        out.push(lo);
        s = hi;
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{}", c.abs())?,
                1 => write!(f, "{}*U", c.abs())?,
                _ => write!(f, "{}*U^{i}", c.abs())?,
            }
        }
        Ok(())
    }
}
