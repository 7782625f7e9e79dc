//! Formal products `prod n^e(n)` over integer bases with rational exponents.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Div, Mul, MulAssign};

use num_bigint::BigUint;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::interval::Interval;

/// Rational exponent.
pub type Exponent = Ratio<i64>;

/// The edge factor `f(a, b) = (2^a + 2^b - 1)^(1/(ab))` for `a, b >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Factor {
    pub a: u32,
    pub b: u32,
}

impl Factor {
    pub fn new(a: u32, b: u32) -> Self {
        assert!(a >= 1 && b >= 1, "f(a, b) needs positive degrees, got ({a}, {b})");
        assert!(a < 62 && b < 62, "degree too large for a u64 base");
        Factor { a, b }
    }

    pub fn base(self) -> u64 {
        (1u64 << self.a) + (1u64 << self.b) - 1
    }

    pub fn exponent(self) -> Exponent {
        Ratio::new(1, i64::from(self.a) * i64::from(self.b))
    }
}

/// Formal product over distinct integer bases `n >= 2`, none with a zero
/// exponent. The empty product is 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct FactorProduct {
    exps: BTreeMap<u64, Exponent>,
}

impl FactorProduct {
    pub fn one() -> Self {
        FactorProduct::default()
    }

    /// `2^k`, the isolated-vertex contribution.
    pub fn pow2(k: u64) -> Self {
        let mut p = FactorProduct::one();
        p.push(2, Ratio::from_integer(k as i64));
        p
    }

    pub fn factor(f: Factor) -> Self {
        let mut p = FactorProduct::one();
        p.push_factor(f, 1);
        p
    }

    /// `base^exponent`; a base of 1 contributes nothing.
    pub fn power(base: u64, exponent: Exponent) -> Self {
        let mut p = FactorProduct::one();
        p.push(base, exponent);
        p
    }

    /// Multiplies in `f^count`.
    pub fn push_factor(&mut self, f: Factor, count: u32) {
        if count > 0 {
            self.push(f.base(), f.exponent() * Ratio::from_integer(count as i64));
        }
    }

    /// Multiplies in `base^exponent`.
    pub fn push(&mut self, base: u64, exponent: Exponent) {
        assert!(base >= 1, "base must be positive");
        if base == 1 || exponent.is_zero() {
            return;
        }
        let entry = self.exps.entry(base).or_insert_with(Ratio::zero);
        *entry += exponent;
        if entry.is_zero() {
            self.exps.remove(&base);
        }
    }

    pub fn exponents(&self) -> impl Iterator<Item = (u64, Exponent)> + '_ {
        self.exps.iter().map(|(&b, &e)| (b, e))
    }

    pub fn exponent_of(&self, base: u64) -> Exponent {
        self.exps.get(&base).copied().unwrap_or_else(Ratio::zero)
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn inverse(&self) -> Self {
        FactorProduct {
            exps: self.exps.iter().map(|(&b, &e)| (b, -e)).collect(),
        }
    }

    /// Least common multiple of the exponent denominators.
    pub fn clearing_power(&self) -> u64 {
        self.exps.values().fold(1u64, |l, e| l.lcm(&(*e.denom() as u64)))
    }

    /// Splits `value^power` into `numerator / denominator` with both sides
    /// exact integers. `power` must be a multiple of [`Self::clearing_power`].
    pub fn cleared(&self, power: u64) -> (BigUint, BigUint) {
        let mut num = BigUint::one();
        let mut den = BigUint::one();
        for (&base, &e) in &self.exps {
            let scaled = e * Ratio::from_integer(power as i64);
            assert!(scaled.is_integer(), "power does not clear exponent {e}");
            let k = scaled.to_integer();
            let b = BigUint::from(base);
            if k > 0 {
                num *= b.pow(k as u32);
            } else {
                den *= b.pow((-k) as u32);
            }
        }
        (num, den)
    }

    /// Exact integer value when the product is a nonnegative integer power
    /// of primes, e.g. `9^(1/2) = 3`.
    pub fn as_integer(&self) -> Option<BigUint> {
        let mut primes: BTreeMap<u64, Exponent> = BTreeMap::new();
        for (&base, &e) in &self.exps {
            for (p, k) in factorize(base) {
                let slot = primes.entry(p).or_insert_with(Ratio::zero);
                *slot += e * Ratio::from_integer(k as i64);
            }
        }
        let mut value = BigUint::one();
        for (p, e) in primes {
            if e.is_zero() {
                continue;
            }
            if !e.is_integer() || e.is_negative() {
                return None;
            }
            value *= BigUint::from(p).pow(e.to_integer() as u32);
        }
        Some(value)
    }

    /// Directed-rounding enclosure at `bits` fractional bits.
    pub fn enclose(&self, bits: u32) -> Interval {
        self.exps.iter().fold(Interval::one(bits), |acc, (&base, &e)| {
            acc.mul(&Interval::rational_power(base, e, bits))
        })
    }

    /// Floating approximation, for display only.
    pub fn approx(&self) -> f64 {
        self.exps
            .iter()
            .map(|(&b, e)| (b as f64).powf(*e.numer() as f64 / *e.denom() as f64))
            .product()
    }
}

impl Mul<&FactorProduct> for &FactorProduct {
    type Output = FactorProduct;

    fn mul(self, rhs: &FactorProduct) -> FactorProduct {
        let mut out = self.clone();
        out *= rhs;
        out
    }
}

impl MulAssign<&FactorProduct> for FactorProduct {
    fn mul_assign(&mut self, rhs: &FactorProduct) {
        for (&b, &e) in &rhs.exps {
            self.push(b, e);
        }
    }
}

impl Div<&FactorProduct> for &FactorProduct {
    type Output = FactorProduct;

    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &FactorProduct) -> FactorProduct {
        self * &rhs.inverse()
    }
}

impl fmt::Display for FactorProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exps.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self
            .exps
            .iter()
            .map(|(b, e)| {
                if e.is_one() {
                    b.to_string()
                } else if e.is_integer() {
                    format!("{b}^{e}")
                } else {
                    format!("{b}^({e})")
                }
            })
            .collect();
        f.write_str(&parts.join("*"))
    }
}

fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut k = 0;
            while n.is_multiple_of(p) {
                n /= p;
                k += 1;
            }
            out.push((p, k));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}
