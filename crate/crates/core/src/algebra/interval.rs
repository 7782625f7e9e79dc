//! Fixed-point enclosures with directed rounding over big integers.
//!
//! An [`Interval`] at scale `s` encloses a nonnegative real `r` as
//! `lo / 2^s <= r <= hi / 2^s`. Lower endpoints are always rounded down and
//! upper endpoints up, so every operation returns a valid enclosure.

use std::cell::RefCell;
use std::collections::HashMap;
use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, ToPrimitive, Zero};

#[derive(Clone, PartialEq, Eq)]
pub struct Interval {
    lo: BigUint,
    hi: BigUint,
    scale: u32,
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]@{}", self.lo_decimal(12), self.hi_decimal(12), self.scale)
    }
}

const CACHE_LIMIT: usize = 1 << 16;

thread_local! {
    static POWER_CACHE: RefCell<HashMap<(u64, i64, i64, u32), Interval>> = RefCell::new(HashMap::new());
}

impl Interval {
    /// Degenerate enclosure of an integer.
    pub fn integer(n: &BigUint, scale: u32) -> Self {
        let v = n << scale;
        Interval {
            lo: v.clone(),
            hi: v,
            scale,
        }
    }

    pub fn one(scale: u32) -> Self {
        Interval::integer(&BigUint::one(), scale)
    }

    pub fn scale(&self) -> u32 {
        self.scale
    }

    /// Raw scaled lower endpoint.
    pub fn lo_raw(&self) -> &BigUint {
        &self.lo
    }

    /// Raw scaled upper endpoint.
    pub fn hi_raw(&self) -> &BigUint {
        &self.hi
    }

    /// Enclosure of `base^exponent` for a rational exponent.
    pub fn rational_power(base: u64, exponent: Ratio<i64>, scale: u32) -> Self {
        let key = (base, *exponent.numer(), *exponent.denom(), scale);
        if let Some(hit) = POWER_CACHE.with(|c| c.borrow().get(&key).cloned()) {
            return hit;
        }
        let value = Self::rational_power_uncached(base, exponent, scale);
        POWER_CACHE.with(|c| {
            let mut c = c.borrow_mut();
            if c.len() >= CACHE_LIMIT {
                c.clear();
            }
            c.insert(key, value.clone());
        });
        value
    }

    fn rational_power_uncached(base: u64, exponent: Ratio<i64>, scale: u32) -> Self {
        assert!(base >= 1, "base must be positive");
        let p = *exponent.numer();
        let q = *exponent.denom();
        assert!(q > 0);
        let q32 = u32::try_from(q).expect("exponent denominator fits in u32");
        let base = BigUint::from(base);
        let shift = (scale as u64) * (q as u64);
        if p >= 0 {
            // (base^p * 2^(scale q))^(1/q) = base^(p/q) * 2^scale
            let x = base.pow(p as u32) << shift;
            let lo = x.nth_root(q32);
            let hi = if lo.pow(q32) == x { lo.clone() } else { &lo + 1u32 };
            Interval { lo, hi, scale }
        } else {
            let num = BigUint::one() << shift;
            let den = base.pow((-p) as u32);
            let (floor, rem) = num.div_rem(&den);
            let ceil = if rem.is_zero() { floor.clone() } else { &floor + 1u32 };
            let lo = floor.nth_root(q32);
            let r = ceil.nth_root(q32);
            let hi = if r.pow(q32) < ceil { r + 1u32 } else { r };
            Interval { lo, hi, scale }
        }
    }

    pub fn mul(&self, other: &Interval) -> Interval {
        assert_eq!(self.scale, other.scale, "scale mismatch");
        let s = self.scale;
        let lo = (&self.lo * &other.lo) >> s;
        let hi_full = &self.hi * &other.hi;
        let mut hi = &hi_full >> s;
        if (&hi << s) != hi_full {
            hi += 1u32;
        }
        Interval { lo, hi, scale: s }
    }

    pub fn add(&self, other: &Interval) -> Interval {
        assert_eq!(self.scale, other.scale, "scale mismatch");
        Interval {
            lo: &self.lo + &other.lo,
            hi: &self.hi + &other.hi,
            scale: self.scale,
        }
    }

    /// Every point of `self` exceeds every point of `other`.
    pub fn certainly_greater(&self, other: &Interval) -> bool {
        assert_eq!(self.scale, other.scale, "scale mismatch");
        self.lo > other.hi
    }

    pub fn certainly_less(&self, other: &Interval) -> bool {
        other.certainly_greater(self)
    }

    /// `true` when the (real) value `r` lies inside the enclosure.
    pub fn contains_f64(&self, r: f64) -> bool {
        self.lo_f64() <= r && r <= self.hi_f64()
    }

    pub fn lo_f64(&self) -> f64 {
        scaled_to_f64(&self.lo, self.scale)
    }

    pub fn hi_f64(&self) -> f64 {
        scaled_to_f64(&self.hi, self.scale)
    }

    /// Width divided by the lower endpoint, as a float (infinite at zero).
    pub fn relative_width(&self) -> f64 {
        if self.lo.is_zero() {
            return f64::INFINITY;
        }
        let w = &self.hi - &self.lo;
        w.to_f64().unwrap_or(f64::INFINITY) / self.lo.to_f64().unwrap_or(f64::INFINITY)
    }

    /// Lower endpoint in decimal, rounded down to `digits` places.
    pub fn lo_decimal(&self, digits: usize) -> String {
        scaled_to_decimal(&self.lo, self.scale, digits, false)
    }

    /// Upper endpoint in decimal, rounded up to `digits` places.
    pub fn hi_decimal(&self, digits: usize) -> String {
        scaled_to_decimal(&self.hi, self.scale, digits, true)
    }
}

fn scaled_to_f64(v: &BigUint, scale: u32) -> f64 {
    let bits = v.bits();
    if bits <= 1000 {
        v.to_f64().unwrap_or(f64::INFINITY) / 2f64.powi(scale as i32)
    } else {
        let drop = bits - 900;
        let top = (v >> drop).to_f64().unwrap_or(f64::INFINITY);
        top * 2f64.powi(drop as i32 - scale as i32)
    }
}

fn scaled_to_decimal(v: &BigUint, scale: u32, digits: usize, round_up: bool) -> String {
    let int_part = v >> scale;
    let frac_mask = (BigUint::one() << scale) - 1u32;
    let frac = v & frac_mask;
    let ten_pow = BigUint::from(10u32).pow(digits as u32);
    let scaled = frac * &ten_pow;
    let mut frac_digits = &scaled >> scale;
    let exact = (&frac_digits << scale) == scaled;
    let mut int_part = int_part;
    if round_up && !exact {
        frac_digits += 1u32;
        if frac_digits == ten_pow {
            frac_digits = BigUint::zero();
            int_part += 1u32;
        }
    }
    if digits == 0 {
        return int_part.to_string();
    }
    format!("{}.{:0>width$}", int_part, frac_digits.to_string(), width = digits)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sqrt_five_is_enclosed() {
        let iv = Interval::rational_power(5, Ratio::new(1, 2), 64);
        // sqrt(5) = 2.2360679774997896964...
        assert_eq!(iv.lo_decimal(18), "2.236067977499789696");
        assert_eq!(iv.hi_decimal(18), "2.236067977499789697");
        assert!(iv.hi_raw() - iv.lo_raw() <= BigUint::one());
    }

    #[test]
    fn exact_powers_are_degenerate() {
        let iv = Interval::rational_power(9, Ratio::new(1, 2), 32);
        assert_eq!(iv.lo_raw(), iv.hi_raw());
        assert_eq!(iv.lo_decimal(3), "3.000");
        let inv = Interval::rational_power(4, Ratio::new(-1, 2), 32);
        assert_eq!(inv.lo_decimal(4), "0.5000");
        assert_eq!(inv.lo_raw(), inv.hi_raw());
    }

    #[test]
    fn negative_exponent_is_enclosed() {
        let iv = Interval::rational_power(7, Ratio::new(-3, 4), 80);
        // 7^(-3/4) = 0.23236808024254082045...
        assert_eq!(iv.lo_decimal(20), "0.23236808024254082045");
        assert_eq!(iv.hi_decimal(20), "0.23236808024254082046");
        assert!(iv.lo_raw() <= iv.hi_raw());
    }

    #[test]
    fn products_bracket_float_value() {
        let a = Interval::rational_power(5, Ratio::new(1, 2), 128);
        let b = Interval::rational_power(7, Ratio::new(1, 4), 128);
        let p = a.mul(&b);
        // 3.63713576256412965815899...
        assert_eq!(p.lo_decimal(30), "3.637135762564129658158995674160");
        assert_eq!(p.hi_decimal(30), "3.637135762564129658158995674161");
    }

    #[test]
    fn decimal_rounding_directions() {
        let iv = Interval::rational_power(2, Ratio::new(1, 2), 64);
        assert_eq!(iv.lo_decimal(5), "1.41421");
        assert_eq!(iv.hi_decimal(5), "1.41422");
    }
}
