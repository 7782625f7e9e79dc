//! Exhaustive check of the edge-factor monotonicity fact
//! `f(a-a',b) f(a,b-b') >= f(a-a',b-b') f(a,b)` for `0 < a' < a <= delta`
//! and `0 < b' < b <= delta`. Level-3 padding relies on it.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::certify::{compare_pure_products, Certificate, Outcome};
use super::product::{Factor, FactorProduct};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("the factor fact needs delta >= 2 (got {0})")]
pub struct FactDeltaError(pub u32);

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactTuple {
    pub a: u32,
    pub a_prime: u32,
    pub b: u32,
    pub b_prime: u32,
    /// Both sides were raised to this power before comparing integers.
    pub clearing_power: u64,
    pub outcome: Outcome,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactCheckReport {
    pub delta: u32,
    pub tuples: Vec<FactTuple>,
    pub failures: usize,
    pub pass: bool,
}

/// Checks one tuple exactly.
pub fn fact_tuple(a: u32, a_prime: u32, b: u32, b_prime: u32) -> FactTuple {
    assert!(0 < a_prime && a_prime < a, "need 0 < a' < a");
    assert!(0 < b_prime && b_prime < b, "need 0 < b' < b");
    let mut lhs = FactorProduct::factor(Factor::new(a - a_prime, b));
    lhs *= &FactorProduct::factor(Factor::new(a, b - b_prime));
    let mut rhs = FactorProduct::factor(Factor::new(a - a_prime, b - b_prime));
    rhs *= &FactorProduct::factor(Factor::new(a, b));
    let verdict = compare_pure_products(&lhs, &rhs);
    let clearing_power = match verdict.certificate {
        Certificate::ClearedPowers { power, .. } => power,
        _ => unreachable!("pure comparisons are cleared exactly"),
    };
    FactTuple {
        a,
        a_prime,
        b,
        b_prime,
        clearing_power,
        outcome: verdict.outcome,
    }
}

/// All tuples up to `delta`. Only `delta <= 5` is needed by the searches;
/// larger values are an unguaranteed sweep.
pub fn check_f_fact(delta: u32) -> Result<FactCheckReport, FactDeltaError> {
    if delta < 2 {
        return Err(FactDeltaError(delta));
    }
    let mut tuples = Vec::new();
    for a in 2..=delta {
        for a_prime in 1..a {
            for b in 2..=delta {
                for b_prime in 1..b {
                    tuples.push(fact_tuple(a, a_prime, b, b_prime));
                }
            }
        }
    }
    let failures = tuples.iter().filter(|t| !t.outcome.holds()).count();
    Ok(FactCheckReport {
        delta,
        pass: failures == 0,
        tuples,
        failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hand_checked_tuple() {
        // 5^4 = 625 against 3^4 * 7 = 567 after raising to the 4th power
        let t = fact_tuple(2, 1, 2, 1);
        assert_eq!(t.clearing_power, 4);
        assert_eq!(t.outcome, Outcome::StrictlyGreater);
    }

    #[test]
    fn delta_five_passes() {
        let r = check_f_fact(5).unwrap();
        assert_eq!(r.tuples.len(), 100);
        assert!(r.pass);
    }

    #[test]
    fn rejects_tiny_delta() {
        assert!(check_f_fact(1).is_err());
    }

    #[test]
    #[should_panic]
    fn degenerate_tuple_rejected() {
        fact_tuple(2, 2, 2, 1);
    }
}
