//! Orderly enumeration of rooted configurations.
//!
//! The space splits into shards keyed by root degree and a non-increasing
//! level-1 degree tuple. Inside a shard the level-2 vertices form a multiset
//! of (level-1 mask, degree) types whose masks cover level-1 vertex `u`
//! exactly `a_u - 1` times. Each multiset is produced once, and only the
//! canonical representative of its isomorphism class is kept.

use serde::{Deserialize, Serialize};

use super::canon::is_canonical;
use super::config::{Level2Vertex, LocalConfig, RootRule};

/// Root degree, degree rule and padding degree of one search slice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SliceSpec {
    pub d0: u8,
    pub delta_eff: u8,
    pub rule: RootRule,
}

impl SliceSpec {
    /// Degree bounds `(lo, hi)` allowed for level-1 and level-2 vertices.
    fn degree_bounds(&self) -> (u8, u8) {
        match self.rule {
            RootRule::MaxDegreeRoot => (1, self.d0),
            RootRule::MinDegreeRoot => (self.d0.max(1), self.delta_eff),
        }
    }
}

/// A slice restricted to one level-1 degree tuple.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Shard {
    pub spec: SliceSpec,
    pub l1_degrees: Vec<u8>,
}

/// Counts reported by a shard walk.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct WalkCounts {
    /// Every multiset visited, canonical or not.
    pub enumerated: u64,
    /// Canonical representatives passed to the visitor.
    pub distinct: u64,
}

impl WalkCounts {
    pub fn merge(self, other: WalkCounts) -> WalkCounts {
        WalkCounts {
            enumerated: self.enumerated + other.enumerated,
            distinct: self.distinct + other.distinct,
        }
    }
}

/// All shards of a slice in deterministic order.
pub fn shards(spec: SliceSpec) -> Vec<Shard> {
    let d0 = spec.d0 as usize;
    let (lo, hi) = spec.degree_bounds();
    let mut out = Vec::new();
    if d0 == 0 {
        out.push(Shard {
            spec,
            l1_degrees: Vec::new(),
        });
        return out;
    }
    let mut tuple = Vec::with_capacity(d0);
    fn rec(d0: usize, lo: u8, hi: u8, tuple: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if tuple.len() == d0 {
            out.push(tuple.clone());
            return;
        }
        let top = tuple.last().copied().unwrap_or(hi);
        for a in (lo..=top).rev() {
            tuple.push(a);
            rec(d0, lo, hi, tuple, out);
            tuple.pop();
        }
    }
    let mut tuples = Vec::new();
    if lo <= hi {
        rec(d0, lo, hi, &mut tuple, &mut tuples);
    }
    out.extend(tuples.into_iter().map(|l1_degrees| Shard { spec, l1_degrees }));
    out
}

/// Calls `visit` with every multiset over `masks` (as per-type counts)
/// covering position `i` exactly `demand[i]` times.
pub fn for_each_cover(masks: &[u32], demand: &[u8], visit: &mut dyn FnMut(&[u8])) {
    let positions = demand.len();
    // last type index touching each position, for early pruning
    let mut last = vec![None; positions];
    for (t, &m) in masks.iter().enumerate() {
        for (p, slot) in last.iter_mut().enumerate() {
            if m >> p & 1 == 1 {
                *slot = Some(t);
            }
        }
    }
    if demand.iter().zip(&last).any(|(&d, l)| d > 0 && l.is_none()) {
        return;
    }
    let mut remaining = demand.to_vec();
    let mut counts = vec![0u8; masks.len()];
    cover_rec(masks, &last, 0, &mut remaining, &mut counts, visit);
}

fn cover_rec(
    masks: &[u32],
    last: &[Option<usize>],
    t: usize,
    remaining: &mut [u8],
    counts: &mut [u8],
    visit: &mut dyn FnMut(&[u8]),
) {
    if remaining.iter().all(|&r| r == 0) {
        visit(counts);
        return;
    }
    if t == masks.len() {
        return;
    }
    let m = masks[t];
    let cap = (0..remaining.len())
        .filter(|&p| m >> p & 1 == 1)
        .map(|p| remaining[p])
        .min()
        .unwrap_or(0);
    for c in (0..=cap).rev() {
        for (p, r) in remaining.iter_mut().enumerate() {
            if m >> p & 1 == 1 {
                *r -= c;
            }
        }
        let feasible = remaining
            .iter()
            .zip(last)
            .all(|(&r, l)| r == 0 || l.is_some_and(|l| l > t));
        if feasible {
            counts[t] = c;
            cover_rec(masks, last, t + 1, remaining, counts, visit);
            counts[t] = 0;
        }
        for (p, r) in remaining.iter_mut().enumerate() {
            if m >> p & 1 == 1 {
                *r += c;
            }
        }
    }
}

impl Shard {
    /// Level-2 vertex types allowed in this shard, in ascending order.
    fn types(&self) -> Vec<Level2Vertex> {
        let d0 = self.l1_degrees.len();
        let (lo, hi) = self.spec.degree_bounds();
        let mut out = Vec::new();
        for mask in 1u16..(1u16 << d0) {
            let mask = mask as u8;
            let up = mask.count_ones() as u8;
            for b in up.max(lo)..=hi {
                out.push(Level2Vertex::new(mask, b));
            }
        }
        out.sort_unstable();
        out
    }

    /// Walks every canonical configuration of the shard in a fixed order.
    pub fn walk(&self, visit: &mut dyn FnMut(LocalConfig)) -> WalkCounts {
        let mut counts = WalkCounts::default();
        let types = self.types();
        let masks: Vec<u32> = types.iter().map(|t| u32::from(t.neighbors)).collect();
        let demand: Vec<u8> = self.l1_degrees.iter().map(|&a| a - 1).collect();
        for_each_cover(&masks, &demand, &mut |mult| {
            counts.enumerated += 1;
            let mut l2 = Vec::new();
            for (ty, &c) in types.iter().zip(mult) {
                for _ in 0..c {
                    l2.push(*ty);
                }
            }
            let cfg = LocalConfig {
                delta_eff: self.spec.delta_eff,
                l1_degrees: self.l1_degrees.clone(),
                l2,
            };
            if is_canonical(&cfg) {
                counts.distinct += 1;
                visit(cfg);
            }
        });
        counts
    }

    pub fn configs(&self) -> (Vec<LocalConfig>, WalkCounts) {
        let mut out = Vec::new();
        let counts = self.walk(&mut |c| out.push(c));
        (out, counts)
    }
}

/// Canonical configurations with root degree `d0`.
pub fn enumerate_slice(spec: SliceSpec) -> Vec<LocalConfig> {
    shards(spec).iter().flat_map(|s| s.configs().0).collect()
}

/// The padding degree used by `rule` for root degree `d0` when the graph's
/// maximum degree is `delta`.
pub fn padding_for(rule: RootRule, d0: u8, delta: u8) -> u8 {
    match rule {
        RootRule::MaxDegreeRoot => d0,
        RootRule::MinDegreeRoot => delta,
    }
}

/// Every canonical configuration for root degrees `0..=delta` under `rule`.
pub fn enumerate_configs(delta: u8, rule: RootRule) -> Vec<LocalConfig> {
    (0..=delta)
        .flat_map(|d0| {
            enumerate_slice(SliceSpec {
                d0,
                delta_eff: padding_for(rule, d0, delta),
                rule,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::search::canon::canonical_form;
    use std::collections::HashSet;

    fn max_slice(d0: u8) -> Vec<LocalConfig> {
        enumerate_slice(SliceSpec {
            d0,
            delta_eff: d0,
            rule: RootRule::MaxDegreeRoot,
        })
    }

    #[test]
    fn small_slices() {
        assert_eq!(max_slice(0).len(), 1);
        assert_eq!(max_slice(1).len(), 1);
        assert_eq!(enumerate_configs(1, RootRule::MaxDegreeRoot).len(), 2);
        // d0 = 2: L1 (1,1); (2,1) with b in {1,2}; (2,2) with one shared
        // vertex b=2 or two private ones of degree 1/2 each
        let two = max_slice(2);
        let described: Vec<String> = two.iter().map(|c| c.describe()).collect();
        assert!(described.contains(&"d0=2 L1=[1,1] L2=[] pad=2".to_string()));
        assert!(described.contains(&"d0=2 L1=[2,2] L2=[{0,1}:2] pad=2".to_string()));
        assert_eq!(two.len(), 1 + 2 + 1 + 3);
    }

    #[test]
    fn outputs_are_valid_distinct_and_satisfy_rule() {
        for (rule, delta) in [(RootRule::MaxDegreeRoot, 3), (RootRule::MinDegreeRoot, 4)] {
            let cfgs = enumerate_configs(delta, rule);
            let mut seen = HashSet::new();
            for c in &cfgs {
                c.validate().unwrap();
                assert!(c.satisfies(rule), "{c}");
                assert!(seen.insert(canonical_form(c)), "duplicate {c}");
            }
        }
    }

    #[test]
    fn cover_counts() {
        // two positions, masks {0}, {1}, {0,1}; demand (1,1): two ways
        let mut n = 0;
        for_each_cover(&[0b01, 0b10, 0b11], &[1, 1], &mut |_| n += 1);
        assert_eq!(n, 2);
        let mut none = 0;
        for_each_cover(&[0b01], &[0, 1], &mut |_| none += 1);
        assert_eq!(none, 0);
    }
}
