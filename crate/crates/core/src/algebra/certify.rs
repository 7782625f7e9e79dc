//! Certified comparisons between formal products and sums of products.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigUint;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::interval::Interval;
use super::product::FactorProduct;

/// Outcome of comparing a left-hand side with a right-hand side.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Outcome {
    StrictlyGreater,
    Equal,
    StrictlyLess,
    Undecided,
}

impl Outcome {
    /// `lhs >= rhs` was certified.
    pub fn holds(self) -> bool {
        matches!(self, Outcome::StrictlyGreater | Outcome::Equal)
    }

    fn from_ordering(o: Ordering) -> Self {
        match o {
            Ordering::Greater => Outcome::StrictlyGreater,
            Ordering::Equal => Outcome::Equal,
            Ordering::Less => Outcome::StrictlyLess,
        }
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::StrictlyGreater => "strictly greater",
            Outcome::Equal => "equal",
            Outcome::StrictlyLess => "strictly less",
            Outcome::Undecided => "undecided",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Exact,
    Interval,
}

/// Data backing a verdict.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certificate {
    /// Both sides evaluated to exact integers.
    Integers { lhs: BigUint, rhs: BigUint },
    /// Both sides raised to `power`, giving exact integers.
    ClearedPowers { power: u64, lhs: BigUint, rhs: BigUint },
    /// Enclosures that separate (or, for `Undecided`, the last ones tried).
    Intervals { lhs: Interval, rhs: Interval },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub outcome: Outcome,
    pub certificate: Certificate,
}

impl Verdict {
    pub fn method(&self) -> Method {
        match self.certificate {
            Certificate::Intervals { .. } => Method::Interval,
            _ => Method::Exact,
        }
    }

    pub fn precision_bits(&self) -> Option<u32> {
        match &self.certificate {
            Certificate::Intervals { lhs, .. } => Some(lhs.scale()),
            _ => None,
        }
    }
}

/// Interval precision schedule: start, doubling up to the cap.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Precision {
    pub start_bits: u32,
    pub cap_bits: u32,
}

impl Default for Precision {
    fn default() -> Self {
        Precision {
            start_bits: 128,
            cap_bits: 8192,
        }
    }
}

impl Precision {
    pub fn new(start_bits: u32, cap_bits: u32) -> Self {
        assert!(start_bits >= 1 && start_bits <= cap_bits, "need 1 <= start <= cap");
        Precision { start_bits, cap_bits }
    }

    fn schedule(self) -> impl Iterator<Item = u32> {
        let cap = self.cap_bits;
        std::iter::successors(Some(self.start_bits.min(cap)), move |&p| {
            (p < cap).then(|| p.saturating_mul(2).min(cap))
        })
    }
}

/// Exact ordering of two pure products. Common bases cancel, the quotient's
/// exponents are cleared with the lcm of their denominators, and the two
/// resulting integers are compared.
pub fn compare_pure_products(p: &FactorProduct, q: &FactorProduct) -> Verdict {
    let quotient = p / q;
    let power = quotient.clearing_power();
    let (lhs, rhs) = quotient.cleared(power);
    Verdict {
        outcome: Outcome::from_ordering(lhs.cmp(&rhs)),
        certificate: Certificate::ClearedPowers { power, lhs, rhs },
    }
}

/// Decides `a` versus `b + c`.
pub fn certify_sum_inequality(
    a: &FactorProduct,
    b: &FactorProduct,
    c: &FactorProduct,
    equality_expected: bool,
    precision: Precision,
) -> Verdict {
    certify_against_sum(a, &[b.clone(), c.clone()], equality_expected, precision)
}

/// Decides `lhs` versus the sum of `rhs`.
///
/// Integer-valued sides are compared exactly; otherwise enclosures are
/// refined until they separate or the precision cap is reached. Equality is
/// only ever reported from an exact integer identity. `equality_expected`
/// moves the exact attempt ahead of the enclosures.
pub fn certify_against_sum(
    lhs: &FactorProduct,
    rhs: &[FactorProduct],
    equality_expected: bool,
    precision: Precision,
) -> Verdict {
    if equality_expected {
        if let Some(v) = exact_sum_comparison(lhs, rhs) {
            return v;
        }
    }
    let mut last = None;
    for bits in precision.schedule() {
        let l = lhs.enclose(bits);
        let r = rhs
            .iter()
            .map(|p| p.enclose(bits))
            .reduce(|x, y| x.add(&y))
            .unwrap_or_else(|| Interval::integer(&BigUint::zero(), bits));
        let outcome = if l.certainly_greater(&r) {
            Some(Outcome::StrictlyGreater)
        } else if l.certainly_less(&r) {
            Some(Outcome::StrictlyLess)
        } else {
            None
        };
        if let Some(outcome) = outcome {
            return Verdict {
                outcome,
                certificate: Certificate::Intervals { lhs: l, rhs: r },
            };
        }
        last = Some((l, r));
    }
    if !equality_expected {
        if let Some(v) = exact_sum_comparison(lhs, rhs) {
            return v;
        }
    }
    let (l, r) = last.expect("schedule is never empty");
    Verdict {
        outcome: Outcome::Undecided,
        certificate: Certificate::Intervals { lhs: l, rhs: r },
    }
}

/// A factor shared by every term: each base of the first term with the
/// smallest exponent it has across the terms (absent counts as zero).
fn common_part(terms: &[&FactorProduct]) -> FactorProduct {
    let mut common = FactorProduct::one();
    if let Some(first) = terms.first() {
        for (base, _) in first.exponents() {
            let e = terms.iter().map(|t| t.exponent_of(base)).min().expect("nonempty");
            common.push(base, e);
        }
    }
    common
}

/// Exact comparison once a common factor is divided out of every term;
/// `None` unless all quotients are integers.
fn exact_sum_comparison(lhs: &FactorProduct, rhs: &[FactorProduct]) -> Option<Verdict> {
    let mut terms: Vec<&FactorProduct> = vec![lhs];
    terms.extend(rhs);
    let common = common_part(&terms);
    let l = (lhs / &common).as_integer()?;
    let mut r = BigUint::zero();
    for p in rhs {
        r += (p / &common).as_integer()?;
    }
    Some(Verdict {
        outcome: Outcome::from_ordering(l.cmp(&r)),
        certificate: Certificate::Integers { lhs: l, rhs: r },
    })
}

/// Decides the product `p` versus the integer `n`. Tries enclosures first
/// and falls back to exact clearing, so the result is never undecided.
pub fn compare_with_integer(p: &FactorProduct, n: &BigUint, precision: Precision) -> Verdict {
    let bits = precision.start_bits.min(precision.cap_bits);
    let l = p.enclose(bits);
    let r = Interval::integer(n, bits);
    if l.certainly_greater(&r) || l.certainly_less(&r) {
        let outcome = if l.certainly_greater(&r) {
            Outcome::StrictlyGreater
        } else {
            Outcome::StrictlyLess
        };
        return Verdict {
            outcome,
            certificate: Certificate::Intervals { lhs: l, rhs: r },
        };
    }
    let power = p.clearing_power();
    let (num, den) = p.cleared(power);
    let lhs = num;
    let rhs = n.pow(power as u32) * den;
    Verdict {
        outcome: Outcome::from_ordering(lhs.cmp(&rhs)),
        certificate: Certificate::ClearedPowers { power, lhs, rhs },
    }
}

/// Serializable summary of one certified comparison.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerdictRecord {
    pub lhs: String,
    pub rhs: Vec<String>,
    pub method: Method,
    pub precision_bits: Option<u32>,
    pub outcome: Outcome,
}

impl VerdictRecord {
    pub fn new(lhs: &FactorProduct, rhs: &[FactorProduct], verdict: &Verdict) -> Self {
        VerdictRecord {
            lhs: lhs.to_string(),
            rhs: rhs.iter().map(ToString::to_string).collect(),
            method: verdict.method(),
            precision_bits: verdict.precision_bits(),
            outcome: verdict.outcome,
        }
    }
}
