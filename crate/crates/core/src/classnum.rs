//! Class numbers of imaginary quadratic fields, counted as reduced positive
//! definite binary quadratic forms `ax^2 + bxy + cy^2` of discriminant `D`.

use crate::{Error, Result};

/// A reduced form: `|b| <= a <= c`, with `b >= 0` when `|b| = a` or `a = c`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ReducedForm {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl ReducedForm {
    pub fn discriminant(&self) -> i64 {
        self.b * self.b - 4 * self.a * self.c
    }

    pub fn is_reduced(&self) -> bool {
        self.a > 0
            && self.b.abs() <= self.a
            && self.a <= self.c
            && (self.b >= 0 || (self.b.abs() != self.a && self.a != self.c))
    }
}

/// True for `D < 0` that is either squarefree and `1 (mod 4)`, or `4m` with
/// `m` squarefree and `m = 2, 3 (mod 4)`.
pub fn is_fundamental(disc: i64) -> bool {
    if disc >= 0 {
        return false;
    }
    match disc.rem_euclid(4) {
        1 => squarefree(disc.unsigned_abs()),
        0 => {
            let m = disc / 4;
            matches!(m.rem_euclid(4), 2 | 3) && squarefree(m.unsigned_abs())
        }
        _ => false,
    }
}

fn squarefree(n: u64) -> bool {
    let mut n = n;
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return false;
            }
        }
        p += 1;
    }
    n != 0
}

/// Every reduced form of discriminant `disc`, sorted by `(a, b)`.
pub fn reduced_forms(disc: i64) -> Result<Vec<ReducedForm>> {
    if !is_fundamental(disc) {
        return Err(Error::NotFundamental(disc));
    }
    let abs = disc.unsigned_abs() as i128;
    let mut forms = Vec::new();
    let mut a: i64 = 1;
    // a <= sqrt(|D| / 3)
    while 3 * (a as i128) * (a as i128) <= abs {
        for b in -a + 1..=a {
            if (b - disc).rem_euclid(2) != 0 {
                continue;
            }
            let num = b as i128 * b as i128 - disc as i128;
            let den = 4 * a as i128;
            if num % den != 0 {
                continue;
            }
            let c = (num / den) as i64;
            let form = ReducedForm { a, b, c };
            if form.is_reduced() {
                forms.push(form);
            }
        }
        a += 1;
    }
    Ok(forms)
}

pub fn class_number(disc: i64) -> Result<u64> {
    Ok(reduced_forms(disc)?.len() as u64)
}

/// Distinct prime divisors of `n` in ascending order.
pub fn prime_factors(n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut n = n;
    let mut p = 2u64;
    while p.saturating_mul(p) <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn greatest_prime_factor(n: u64) -> Option<u64> {
    prime_factors(n).last().copied()
}
