//! The d-regular case, checked with integers only.
//!
//! Rooted anywhere in a d-regular bipartite graph, the inequality reduces to
//! `(2^(d+1) - 1)^(k - (d-1)) * 2^(d(d-1)) >= prod_i (2^d + 2^(x_i) - 1)`
//! over level-2 profiles: `k` level-2 vertices, `x_i` of them going down to
//! level 3, with `sum x_i = kd - d(d-1)`.

use std::time::Duration;
use std::time::Instant;

use num_bigint::BigUint;
use num_traits::{One, Pow};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{Outcome, Precision};
use crate::search::{Level2Vertex, LocalConfig};

pub const MAX_REGULAR_DEGREE: u32 = 5;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("regular degree {0} outside 1..={MAX_REGULAR_DEGREE}")]
pub struct RegularDegreeError(pub u32);

fn check_d(d: u32) -> Result<(), RegularDegreeError> {
    if (1..=MAX_REGULAR_DEGREE).contains(&d) {
        Ok(())
    } else {
        Err(RegularDegreeError(d))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RegularProfile {
    pub d: u32,
    pub k: u32,
    /// Non-increasing level-3 edge counts of the level-2 vertices.
    pub xs: Vec<u32>,
}

impl RegularProfile {
    /// The all-zero profile with `k = d - 1`: the root's component is `K_{d,d}`.
    pub fn is_extremal(&self) -> bool {
        self.k + 1 == self.d && self.xs.iter().all(|&x| x == 0)
    }

    pub fn lhs(&self) -> BigUint {
        let d = self.d;
        let big = BigUint::from((1u64 << (d + 1)) - 1);
        big.pow(self.k + 1 - d) << (d * (d - 1))
    }

    pub fn rhs(&self) -> BigUint {
        self.xs.iter().fold(BigUint::one(), |acc, &x| acc * g(self.d, x))
    }

    /// The configuration this profile describes: the root, its `d`
    /// neighbours and `k` level-2 vertices, each level-2 vertex `i` seeing
    /// `d - x_i` neighbours of the root. Level-2 neighbourhoods are spread
    /// round-robin; the reduced inequality does not depend on which
    /// neighbours they are.
    pub fn to_config(&self) -> Option<LocalConfig> {
        let d = self.d as usize;
        let mut load = vec![0usize; d];
        let mut l2 = Vec::with_capacity(self.k as usize);
        for &x in &self.xs {
            let m = d - x as usize;
            // fill the least loaded level-1 vertices first
            let mut order: Vec<usize> = (0..d).collect();
            order.sort_by_key(|&u| (load[u], u));
            let mut mask = 0u8;
            for &u in order.iter().take(m) {
                mask |= 1 << u;
                load[u] += 1;
            }
            l2.push(Level2Vertex::new(mask, self.d as u8));
        }
        if load.iter().any(|&l| l != d - 1) {
            return None;
        }
        LocalConfig::new(self.d as u8, vec![self.d as u8; d], l2).ok()
    }
}

/// `g(x) = 2^d + 2^x - 1`.
pub fn g(d: u32, x: u32) -> BigUint {
    (BigUint::one() << d) + (BigUint::one() << x) - 1u32
}

/// All profiles for degree `d`, each once, `k` ascending then
/// lexicographically descending.
pub fn enumerate_profiles(d: u32) -> Result<Vec<RegularProfile>, RegularDegreeError> {
    check_d(d)?;
    let mut out = Vec::new();
    for k in (d - 1)..=(d * (d - 1)) {
        let sum = k * d - d * (d - 1);
        let mut xs = Vec::with_capacity(k as usize);
        partitions(k, sum, d - 1, &mut xs, &mut |xs| {
            out.push(RegularProfile { d, k, xs: xs.to_vec() })
        });
    }
    Ok(out)
}

/// Non-increasing sequences of length `len`, parts at most `max`, summing to `sum`.
fn partitions(len: u32, sum: u32, max: u32, xs: &mut Vec<u32>, visit: &mut dyn FnMut(&[u32])) {
    if len == 0 {
        if sum == 0 {
            visit(xs);
        }
        return;
    }
    if sum > len * max {
        return;
    }
    for x in (0..=max.min(sum)).rev() {
        xs.push(x);
        partitions(len - 1, sum - x, x, xs, visit);
        xs.pop();
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProfileVerdict {
    pub profile: RegularProfile,
    pub lhs: String,
    pub rhs: String,
    pub outcome: Outcome,
}

pub fn check_profile(p: &RegularProfile) -> ProfileVerdict {
    let lhs = p.lhs();
    let rhs = p.rhs();
    let outcome = match lhs.cmp(&rhs) {
        std::cmp::Ordering::Greater => Outcome::StrictlyGreater,
        std::cmp::Ordering::Equal => Outcome::Equal,
        std::cmp::Ordering::Less => Outcome::StrictlyLess,
    };
    ProfileVerdict {
        profile: p.clone(),
        lhs: lhs.to_string(),
        rhs: rhs.to_string(),
        outcome,
    }
}

/// `g(x+2) g(x) > g(x+1)^2` for `0 <= x <= d-2`, i.e. `g(x+1)/g(x)` is
/// strictly increasing on `0..=d`.
pub fn check_g_ratio_monotone(d: u32) -> Result<bool, RegularDegreeError> {
    check_d(d)?;
    Ok((0..d.saturating_sub(1)).all(|x| g(d, x + 2) * g(d, x) > g(d, x + 1).pow(2u32)))
}

/// Exchange step: moving one unit from `x_j` to `x_i` with `x_i >= x_j`
/// strictly increases `g(x_i) g(x_j)`.
pub fn exchange_increases(d: u32, xi: u32, xj: u32) -> bool {
    assert!(xi >= xj && xj >= 1 && xi < d, "need d > x_i >= x_j >= 1");
    g(d, xi + 1) * g(d, xj - 1) > g(d, xi) * g(d, xj)
}

/// The profile with the same `k` and sum whose entries are all `d - 1` or
/// `0` except at most one.
pub fn extremal_string(p: &RegularProfile) -> Vec<u32> {
    let top = p.d - 1;
    let mut left = p.xs.iter().sum::<u32>();
    (0..p.k)
        .map(|_| {
            let x = left.min(top);
            left -= x;
            x
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegularReport {
    pub d: u32,
    pub profiles: u64,
    pub equalities: u64,
    pub strict: u64,
    pub failing: Vec<ProfileVerdict>,
    pub stray_equalities: Vec<ProfileVerdict>,
    pub g_ratio_monotone: bool,
    /// Profiles whose configuration verdict disagrees with the integer one.
    pub config_disagreements: Vec<RegularProfile>,
    pub verdict: bool,
    #[serde(skip)]
    pub wall_time: Duration,
}

/// Checks every profile of degree `d` exactly and cross-checks each one
/// against the general configuration machinery.
pub fn verify_regular(d: u32, precision: Precision) -> Result<RegularReport, RegularDegreeError> {
    let start = Instant::now();
    let profiles = enumerate_profiles(d)?;
    let mut report = RegularReport {
        d,
        profiles: profiles.len() as u64,
        equalities: 0,
        strict: 0,
        failing: Vec::new(),
        stray_equalities: Vec::new(),
        g_ratio_monotone: check_g_ratio_monotone(d)?,
        config_disagreements: Vec::new(),
        verdict: false,
        wall_time: Duration::ZERO,
    };
    let mut extremal_equal = false;
    for p in &profiles {
        let v = check_profile(p);
        match v.outcome {
            Outcome::StrictlyGreater => report.strict += 1,
            Outcome::Equal => {
                report.equalities += 1;
                if p.is_extremal() {
                    extremal_equal = true;
                } else {
                    report.stray_equalities.push(v.clone());
                }
            }
            _ => report.failing.push(v.clone()),
        }
        if let Some(cfg) = p.to_config() {
            if cfg.goodness(precision).outcome != v.outcome {
                report.config_disagreements.push(p.clone());
            }
        }
    }
    report.verdict = report.failing.is_empty()
        && report.stray_equalities.is_empty()
        && extremal_equal
        && report.g_ratio_monotone
        && report.config_disagreements.is_empty();
    report.wall_time = start.elapsed();
    Ok(report)
}
