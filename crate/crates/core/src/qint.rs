//! Integers of an imaginary quadratic field `Q(sqrt(d))`.
//!
//! Every element is stored by doubled coordinates `(u, v)` standing for
//! `(u + v*sqrt(d)) / 2`. When `d = 1 (mod 4)` the ring is
//! `Z[(1 + sqrt(d))/2]` and membership means `u = v (mod 2)`; otherwise the
//! ring is `Z[sqrt(d)]` and both coordinates must be even.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

/// A squarefree negative field generator `d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldDisc {
    d: i64,
}

impl FieldDisc {
    pub fn new(d: i64) -> Result<Self> {
        if d >= 0 || !is_squarefree(d.unsigned_abs()) {
            return Err(Error::InvalidFieldDisc(d));
        }
        Ok(FieldDisc { d })
    }

    /// Splits a discriminant `D = s^2 * d` of a monic quadratic into the field
    /// generator `d` and the scale `s`, which is 1 when `D = 1 (mod 4)` and 2
    /// when `D = 4d` with `d = 2, 3 (mod 4)`.
    pub fn from_discriminant(disc: i64) -> Result<(Self, i64)> {
        if disc.rem_euclid(4) == 1 {
            return Ok((FieldDisc::new(disc)?, 1));
        }
        if disc % 4 == 0 {
            let d = disc / 4;
            if matches!(d.rem_euclid(4), 2 | 3) {
                return Ok((FieldDisc::new(d)?, 2));
            }
        }
        Err(Error::NotFundamental(disc))
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    pub fn halves_allowed(&self) -> bool {
        self.d.rem_euclid(4) == 1
    }

    /// The discriminant of the field: `d` or `4d`.
    pub fn field_discriminant(&self) -> i64 {
        if self.halves_allowed() {
            self.d
        } else {
            4 * self.d
        }
    }

    /// All units of the ring, listed as `1, w, w^2, ...` followed by their
    /// negatives, where `w` generates the units modulo `-1`.
    pub fn units(&self) -> Vec<QuadInt> {
        let coords: &[(i64, i64)] = match self.d {
            -1 => &[(2, 0), (0, 2), (-2, 0), (0, -2)],
            -3 => &[(2, 0), (-1, 1), (-1, -1), (-2, 0), (1, -1), (1, 1)],
            _ => &[(2, 0), (-2, 0)],
        };
        coords
            .iter()
            .map(|&(u, v)| QuadInt::from_parts(BigInt::from(u), BigInt::from(v), *self))
            .collect()
    }
}

fn is_squarefree(n: u64) -> bool {
    if n == 0 {
        return false;
    }
    let mut n = n;
    let mut p = 2u64;
    while p.saturating_mul(p) <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return false;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    true
}

/// The element `(u + v*sqrt(d)) / 2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuadInt {
    u: BigInt,
    v: BigInt,
    disc: FieldDisc,
}

impl QuadInt {
    pub fn new(u: BigInt, v: BigInt, disc: FieldDisc) -> Result<Self> {
        let ok = if disc.halves_allowed() {
            u.is_even() == v.is_even()
        } else {
            u.is_even() && v.is_even()
        };
        if !ok {
            return Err(Error::ParityViolation {
                u: u.to_string(),
                v: v.to_string(),
                d: disc.d,
            });
        }
        Ok(Self::from_parts(u, v, disc))
    }

    fn from_parts(u: BigInt, v: BigInt, disc: FieldDisc) -> Self {
        QuadInt { u, v, disc }
    }

    /// The rational integer `n`.
    pub fn from_integer(n: BigInt, disc: FieldDisc) -> Self {
        Self::from_parts(n * 2, BigInt::zero(), disc)
    }

    pub fn zero(disc: FieldDisc) -> Self {
        Self::from_parts(BigInt::zero(), BigInt::zero(), disc)
    }

    pub fn one(disc: FieldDisc) -> Self {
        Self::from_parts(BigInt::from(2), BigInt::zero(), disc)
    }

    /// Doubled rational coordinate.
    pub fn u(&self) -> &BigInt {
        &self.u
    }

    /// Doubled coefficient of `sqrt(d)`.
    pub fn v(&self) -> &BigInt {
        &self.v
    }

    pub fn disc(&self) -> FieldDisc {
        self.disc
    }

    pub fn is_zero(&self) -> bool {
        self.u.is_zero() && self.v.is_zero()
    }

    fn same_field(&self, other: &QuadInt) -> Result<()> {
        if self.disc != other.disc {
            return Err(Error::DiscMismatch(self.disc.d, other.disc.d));
        }
        Ok(())
    }

    pub fn add(&self, other: &QuadInt) -> Result<QuadInt> {
        self.same_field(other)?;
        Ok(Self::from_parts(&self.u + &other.u, &self.v + &other.v, self.disc))
    }

    pub fn sub(&self, other: &QuadInt) -> Result<QuadInt> {
        self.same_field(other)?;
        Ok(Self::from_parts(&self.u - &other.u, &self.v - &other.v, self.disc))
    }

    pub fn neg(&self) -> QuadInt {
        Self::from_parts(-&self.u, -&self.v, self.disc)
    }

    pub fn mul(&self, other: &QuadInt) -> Result<QuadInt> {
        self.same_field(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &QuadInt) -> QuadInt {
        let d = BigInt::from(self.disc.d);
        let u = &self.u * &other.u + d * &self.v * &other.v;
        let v = &self.u * &other.v + &self.v * &other.u;
        // Both sums are even for ring elements.
        Self::from_parts(u >> 1u32, v >> 1u32, self.disc)
    }

    /// `self^n` by binary exponentiation.
    pub fn pow(&self, mut n: u64) -> QuadInt {
        let mut acc = Self::one(self.disc);
        let mut base = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul_unchecked(&base);
            }
        }
        acc
    }

    pub fn conj(&self) -> QuadInt {
        Self::from_parts(self.u.clone(), -&self.v, self.disc)
    }

    /// `x * conj(x)`, always a nonnegative rational integer.
    pub fn norm(&self) -> BigInt {
        (&self.u * &self.u - BigInt::from(self.disc.d) * &self.v * &self.v) >> 2u32
    }

    /// `x + conj(x)`.
    pub fn trace(&self) -> BigInt {
        self.u.clone()
    }

    pub fn is_unit(&self) -> bool {
        self.norm().is_one()
    }
}

impl fmt::Display for QuadInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.v.is_negative() { '-' } else { '+' };
        write!(f, "({} {} {}*sqrt({}))/2", self.u, sign, self.v.abs(), self.disc.d)
    }
}

/// Coset representatives of the unit group modulo its `q`-th powers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnitClassSet {
    pub reps: Vec<QuadInt>,
}

pub fn unit_classes(disc: FieldDisc, q: u64) -> UnitClassSet {
    let units = disc.units();
    let powers: Vec<QuadInt> = units.iter().map(|e| e.pow(q)).collect();
    let mut covered: Vec<QuadInt> = Vec::new();
    let mut reps = Vec::new();
    for unit in &units {
        if covered.contains(unit) {
            continue;
        }
        for p in &powers {
            let member = unit.mul_unchecked(p);
            if !covered.contains(&member) {
                covered.push(member);
            }
        }
        reps.push(unit.clone());
    }
    UnitClassSet { reps }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn qi(u: i64, v: i64, d: i64) -> QuadInt {
        QuadInt::new(u.into(), v.into(), FieldDisc::new(d).unwrap()).unwrap()
    }

    #[test]
    fn field_disc_validation() {
        assert!(FieldDisc::new(-7).unwrap().halves_allowed());
        assert!(!FieldDisc::new(-2).unwrap().halves_allowed());
        assert!(!FieldDisc::new(-1).unwrap().halves_allowed());
        assert_eq!(FieldDisc::new(-12), Err(Error::InvalidFieldDisc(-12)));
        assert_eq!(FieldDisc::new(5), Err(Error::InvalidFieldDisc(5)));
        assert_eq!(FieldDisc::new(0), Err(Error::InvalidFieldDisc(0)));
        assert_eq!(
            FieldDisc::from_discriminant(-8).unwrap(),
            (FieldDisc::new(-2).unwrap(), 2)
        );
        assert_eq!(
            FieldDisc::from_discriminant(-4).unwrap(),
            (FieldDisc::new(-1).unwrap(), 2)
        );
        assert_eq!(
            FieldDisc::from_discriminant(-23).unwrap(),
            (FieldDisc::new(-23).unwrap(), 1)
        );
        assert!(FieldDisc::from_discriminant(-16).is_err());
        assert!(FieldDisc::from_discriminant(-12).is_err());
    }

    #[test]
    fn make_examples() {
        let alpha = qi(1, 1, -7);
        assert_eq!(alpha.trace(), 1.into());
        assert_eq!(alpha.norm(), 2.into());
        assert!(qi(0, 0, -7).is_zero());
        let d7 = FieldDisc::new(-7).unwrap();
        assert!(matches!(
            QuadInt::new(1.into(), 0.into(), d7),
            Err(Error::ParityViolation { .. })
        ));
        let d2 = FieldDisc::new(-2).unwrap();
        assert!(QuadInt::new(1.into(), 1.into(), d2).is_err());
        assert!(QuadInt::new(2.into(), 4.into(), d2).is_ok());
    }

    #[test]
    fn arithmetic_examples() {
        let alpha = qi(1, 1, -7);
        assert_eq!(alpha.mul(&alpha.conj()).unwrap(), qi(4, 0, -7));
        assert_eq!(alpha.pow(2), qi(-3, 1, -7));
        assert_eq!(alpha.pow(0), QuadInt::one(alpha.disc()));
        assert_eq!(
            alpha.mul(&qi(1, 1, -11)),
            Err(Error::DiscMismatch(-7, -11))
        );
        assert_eq!(alpha.add(&qi(1, -1, -7)).unwrap(), qi(2, 0, -7));
    }

    #[test]
    fn conj_and_norms() {
        assert_eq!(qi(1, 1, -7).conj(), qi(1, -1, -7));
        assert_eq!(qi(10, 0, -7).conj(), qi(10, 0, -7));
        assert_eq!(qi(1, 1, -11).norm(), 3.into());
        assert_eq!(qi(1, 1, -19).trace(), 1.into());
        // 1 + sqrt(-2) has norm 3
        assert_eq!(qi(2, 2, -2).norm(), 3.into());
    }

    #[test]
    fn unit_class_examples() {
        let d7 = FieldDisc::new(-7).unwrap();
        assert_eq!(unit_classes(d7, 13).reps, vec![QuadInt::one(d7)]);
        let d3 = FieldDisc::new(-3).unwrap();
        assert_eq!(
            unit_classes(d3, 3).reps,
            vec![QuadInt::one(d3), qi(-1, 1, -3), qi(-1, -1, -3)]
        );
        assert_eq!(unit_classes(d3, 5).reps, vec![QuadInt::one(d3)]);
        assert_eq!(unit_classes(d3, 2).reps.len(), 2);
        let d1 = FieldDisc::new(-1).unwrap();
        assert_eq!(unit_classes(d1, 3).reps, vec![QuadInt::one(d1)]);
        assert_eq!(unit_classes(d1, 2).reps.len(), 2);
        for set in [unit_classes(d3, 3), unit_classes(d1, 2)] {
            assert!(set.reps.iter().all(QuadInt::is_unit));
        }
    }

    #[test]
    fn unit_group_sizes() {
        assert_eq!(FieldDisc::new(-3).unwrap().units().len(), 6);
        assert_eq!(FieldDisc::new(-1).unwrap().units().len(), 4);
        assert_eq!(FieldDisc::new(-5).unwrap().units().len(), 2);
        for d in [-1, -3, -5] {
            assert!(FieldDisc::new(d).unwrap().units().iter().all(QuadInt::is_unit));
        }
    }

    fn element() -> impl Strategy<Value = QuadInt> {
        (
            prop::sample::select(vec![-1i64, -2, -3, -7, -11, -19, -23, -163]),
            -10_000i64..10_000,
            -10_000i64..10_000,
        )
            .prop_map(|(d, u, v)| {
                let disc = FieldDisc::new(d).unwrap();
                let (u, v) = if disc.halves_allowed() {
                    (u, v - (v - u).rem_euclid(2))
                } else {
                    (2 * u, 2 * v)
                };
                QuadInt::new(u.into(), v.into(), disc).unwrap()
            })
    }

    fn pair() -> impl Strategy<Value = (QuadInt, QuadInt)> {
        element().prop_flat_map(|x| {
            let disc = x.disc();
            (Just(x), (-5000i64..5000, -5000i64..5000)).prop_map(move |(x, (u, v))| {
                let (u, v) = if disc.halves_allowed() {
                    (u, v - (v - u).rem_euclid(2))
                } else {
                    (2 * u, 2 * v)
                };
                (x, QuadInt::new(u.into(), v.into(), disc).unwrap())
            })
        })
    }

    proptest! {
        #[test]
        fn norm_is_multiplicative((x, y) in pair()) {
            prop_assert_eq!(x.mul(&y).unwrap().norm(), x.norm() * y.norm());
        }

        #[test]
        fn conj_is_a_ring_homomorphism((x, y) in pair()) {
            prop_assert_eq!(x.mul(&y).unwrap().conj(), x.conj().mul(&y.conj()).unwrap());
            prop_assert_eq!(x.add(&y).unwrap().conj(), x.conj().add(&y.conj()).unwrap());
            prop_assert_eq!(x.conj().conj(), x);
        }

        #[test]
        fn conj_commutes_with_pow(x in element(), n in 0u64..12) {
            prop_assert_eq!(x.pow(n).conj(), x.conj().pow(n));
        }

        #[test]
        fn pow_matches_iterated_mul(x in element(), n in 0u64..9) {
            let mut acc = QuadInt::one(x.disc());
            for _ in 0..n {
                acc = acc.mul(&x).unwrap();
            }
            prop_assert_eq!(x.pow(n), acc);
        }

        #[test]
        fn trace_norm_discriminant_identity(x in element()) {
            let lhs = x.trace() * x.trace() - x.norm() * 4;
            prop_assert_eq!(lhs, BigInt::from(x.disc().d()) * x.v() * x.v());
            prop_assert!(!x.norm().is_negative());
            prop_assert_eq!(x.norm().is_zero(), x.is_zero());
        }

        #[test]
        fn closure_preserves_parity((x, y) in pair(), n in 0u64..6) {
            for z in [x.add(&y).unwrap(), x.mul(&y).unwrap(), x.pow(n), x.sub(&y).unwrap()] {
                prop_assert!(QuadInt::new(z.u().clone(), z.v().clone(), z.disc()).is_ok());
            }
        }
    }
}
