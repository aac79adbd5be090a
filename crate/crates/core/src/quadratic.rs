use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::{Error, Result};

/// The polynomial `x^2 + a*x + b`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MonicQuadratic {
    pub a: BigInt,
    pub b: BigInt,
}

impl MonicQuadratic {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>) -> Self {
        MonicQuadratic {
            a: a.into(),
            b: b.into(),
        }
    }

    /// `a^2 - 4b`.
    pub fn discriminant(&self) -> BigInt {
        &self.a * &self.a - &self.b * 4
    }

    /// The discriminant as a machine integer, or `UnsupportedDiscriminant`.
    pub fn small_discriminant(&self) -> Result<i64> {
        let d = self.discriminant();
        d.to_i64()
            .ok_or_else(|| Error::UnsupportedDiscriminant(d.to_string()))
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        (x + &self.a) * x + &self.b
    }

    /// `g(x) = f(x + k)`, which has the same discriminant.
    pub fn shifted(&self, k: &BigInt) -> MonicQuadratic {
        MonicQuadratic {
            a: &self.a + k * 2,
            b: self.eval(k),
        }
    }

    /// Integers `t` with `f(t) = c`, ascending.
    pub fn preimages(&self, c: &BigInt) -> Vec<BigInt> {
        // t^2 + a t + (b - c) = 0
        let disc: BigInt = &self.a * &self.a - (&self.b - c) * 4;
        if disc.is_negative() {
            return Vec::new();
        }
        let r = disc.sqrt();
        if &r * &r != disc {
            return Vec::new();
        }
        let mut out: Vec<BigInt> = [-&self.a - &r, -&self.a + &r]
            .into_iter()
            .filter(|n| n.is_even())
            .map(|n| n / 2)
            .collect();
        out.dedup();
        out
    }
}

impl fmt::Display for MonicQuadratic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x^2")?;
        for (coef, var) in [(&self.a, "*x"), (&self.b, "")] {
            if coef.is_zero() {
                continue;
            }
            let sign = if coef.is_negative() { '-' } else { '+' };
            write!(f, " {sign} {}{var}", coef.abs())?;
        }
        Ok(())
    }
}

/// Parses `"a,b"`.
impl FromStr for MonicQuadratic {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        let [a, b] = parts.as_slice() else {
            return Err(format!("expected two comma-separated integers, got {s:?}"));
        };
        let parse = |t: &str| {
            t.parse::<BigInt>()
                .map_err(|_| format!("not an integer: {t:?}"))
        };
        Ok(MonicQuadratic::new(parse(a)?, parse(b)?))
    }
}
