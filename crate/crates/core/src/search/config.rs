//! Rooted local configurations: everything within distance two of the root
//! plus the number of edges each level-2 vertex sends to level 3.
//!
//! Level-3 vertices are taken to have degree `delta_eff` (padding), so the
//! reduced inequality depends only on the data stored here.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{Factor, FactorProduct, Precision, Verdict};
use crate::good::{GoodError, GoodnessInstance};
use crate::graph::Graph;

/// Largest root degree representable (level-1 sets are `u8` masks).
pub const MAX_ROOT_DEGREE: usize = 8;

/// A level-2 vertex: its level-1 neighbours as a bit mask over level-1
/// indices, and its total degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Level2Vertex {
    pub neighbors: u8,
    pub degree: u8,
}

impl Level2Vertex {
    pub fn new(neighbors: u8, degree: u8) -> Self {
        Level2Vertex { neighbors, degree }
    }

    /// Number of level-1 neighbours.
    pub fn up(self) -> u8 {
        self.neighbors.count_ones() as u8
    }

    /// Number of level-3 neighbours.
    pub fn down(self) -> u8 {
        self.degree - self.up()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RootRule {
    /// Every degree is at most the root degree.
    MaxDegreeRoot,
    /// Every degree is at least the root degree.
    MinDegreeRoot,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConfigError {
    #[error("root degree {0} exceeds {MAX_ROOT_DEGREE}")]
    RootDegreeTooLarge(usize),
    #[error("level-1 vertex {index} has degree {degree} outside [1, {delta}]")]
    Level1Degree { index: usize, degree: u8, delta: u8 },
    #[error("level-2 vertex {index} has no level-1 neighbour")]
    Level2Orphan { index: usize },
    #[error("level-2 vertex {index} refers to level-1 vertices outside the root's {d0} neighbours")]
    Level2Mask { index: usize, d0: usize },
    #[error("level-2 vertex {index} has degree {degree} but {up} level-1 neighbours (cap {delta})")]
    Level2Degree {
        index: usize,
        degree: u8,
        up: u8,
        delta: u8,
    },
    #[error("level-1 vertex {index} has degree {degree} but {found} level-2 neighbours")]
    Coverage { index: usize, degree: u8, found: u8 },
    #[error("level-3 padding degree {delta} is below the required minimum {needed}")]
    Padding { delta: u8, needed: u8 },
}

/// Levels 0-2 around a root, with level-3 edge counts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LocalConfig {
    /// Degree assumed for every level-3 vertex.
    pub delta_eff: u8,
    /// Degrees of the root's neighbours; the root degree is the length.
    pub l1_degrees: Vec<u8>,
    pub l2: Vec<Level2Vertex>,
}

impl LocalConfig {
    pub fn new(delta_eff: u8, l1_degrees: Vec<u8>, mut l2: Vec<Level2Vertex>) -> Result<Self, ConfigError> {
        l2.sort_unstable();
        let cfg = LocalConfig {
            delta_eff,
            l1_degrees,
            l2,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    /// The isolated root.
    pub fn isolated(delta_eff: u8) -> Self {
        LocalConfig {
            delta_eff,
            l1_degrees: Vec::new(),
            l2: Vec::new(),
        }
    }

    pub fn root_degree(&self) -> usize {
        self.l1_degrees.len()
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        let d0 = self.root_degree();
        if d0 > MAX_ROOT_DEGREE {
            return Err(ConfigError::RootDegreeTooLarge(d0));
        }
        let delta = self.delta_eff;
        for (index, &degree) in self.l1_degrees.iter().enumerate() {
            if degree == 0 || degree > delta.max(d0 as u8) {
                return Err(ConfigError::Level1Degree { index, degree, delta });
            }
        }
        let full: u16 = (1u16 << d0) - 1;
        let mut covered = vec![0u8; d0];
        let mut needs_padding = 0u8;
        for (index, v) in self.l2.iter().enumerate() {
            if v.neighbors == 0 {
                return Err(ConfigError::Level2Orphan { index });
            }
            if u16::from(v.neighbors) & !full != 0 {
                return Err(ConfigError::Level2Mask { index, d0 });
            }
            if v.degree < v.up() || v.degree > delta.max(d0 as u8) {
                return Err(ConfigError::Level2Degree {
                    index,
                    degree: v.degree,
                    up: v.up(),
                    delta,
                });
            }
            if v.down() > 0 {
                needs_padding = 1;
            }
            for (u, c) in covered.iter_mut().enumerate() {
                if v.neighbors >> u & 1 == 1 {
                    *c += 1;
                }
            }
        }
        if delta < needs_padding {
            return Err(ConfigError::Padding { delta, needed: 1 });
        }
        for (index, (&degree, &found)) in self.l1_degrees.iter().zip(&covered).enumerate() {
            if degree - 1 != found {
                return Err(ConfigError::Coverage { index, degree, found });
            }
        }
        Ok(())
    }

    /// Whether every degree respects the root rule.
    pub fn satisfies(&self, rule: RootRule) -> bool {
        let d0 = self.root_degree() as u8;
        let degrees = self.l1_degrees.iter().copied().chain(self.l2.iter().map(|v| v.degree));
        let padded = self.l2.iter().any(|v| v.down() > 0);
        match rule {
            RootRule::MaxDegreeRoot => {
                let mut ok = degrees.into_iter().all(|d| d <= d0);
                if padded {
                    ok &= self.delta_eff <= d0;
                }
                ok
            }
            RootRule::MinDegreeRoot => {
                let mut ok = degrees.into_iter().all(|d| d >= d0);
                if padded {
                    ok &= self.delta_eff >= d0;
                }
                ok
            }
        }
    }

    /// No level-3 vertices, and levels 0-2 induce a single vertex or a
    /// complete bipartite graph.
    pub fn is_complete_bipartite_pattern(&self) -> bool {
        let d0 = self.root_degree();
        if d0 == 0 {
            return true;
        }
        let full = ((1u16 << d0) - 1) as u8;
        let k = self.l2.len() as u8;
        self.l2.iter().all(|v| v.neighbors == full && v.degree == d0 as u8)
            && self.l1_degrees.iter().all(|&a| a == k + 1)
    }

    /// The whole component is closed at level 2 and `d0`-regular.
    pub fn is_closed_regular(&self) -> bool {
        let d0 = self.root_degree() as u8;
        d0 >= 1 && self.l1_degrees.iter().all(|&a| a == d0) && self.l2.iter().all(|v| v.degree == d0 && v.down() == 0)
    }

    /// Makes level-3 padding explicit: every level-3 endpoint has degree
    /// `delta_eff`. The stored fields already encode this, so the result is
    /// the same configuration.
    pub fn pad_level3(&self) -> LocalConfig {
        self.clone()
    }

    /// `A`, `B` and `C` of the reduced inequality.
    pub fn terms(&self) -> GoodnessInstance {
        let d0 = self.root_degree() as u32;
        let delta = u32::from(self.delta_eff);
        let a_deg: Vec<u32> = self.l1_degrees.iter().map(|&a| u32::from(a)).collect();
        let mut a = FactorProduct::pow2(u64::from(d0 == 0));
        let mut b = FactorProduct::pow2(a_deg.iter().filter(|&&x| x == 1).count() as u64);
        let mut c = FactorProduct::pow2(self.l2.iter().filter(|v| v.down() == 0).count() as u64);
        for &ad in &a_deg {
            a.push_factor(Factor::new(d0, ad), 1);
        }
        for v in &self.l2 {
            let bv = u32::from(v.degree);
            for (u, &ad) in a_deg.iter().enumerate() {
                if v.neighbors >> u & 1 == 1 {
                    a.push_factor(Factor::new(ad, bv), 1);
                    b.push_factor(Factor::new(ad - 1, bv), 1);
                }
            }
            let t = u32::from(v.down());
            if t > 0 {
                let f = Factor::new(bv, delta);
                a.push_factor(f, t);
                b.push_factor(f, t);
                c.push_factor(Factor::new(bv - u32::from(v.up()), delta), t);
            }
        }
        GoodnessInstance {
            a,
            b,
            c,
            equality_expected: self.is_complete_bipartite_pattern(),
        }
    }

    /// Certifies the reduced inequality for this configuration.
    pub fn goodness(&self, precision: Precision) -> Verdict {
        self.terms().certify(precision)
    }

    /// A concrete graph realizing the configuration with root 0: each
    /// level-2 vertex gets private level-3 neighbours, each of which is
    /// padded to degree `delta_eff` with private leaves.
    pub fn realize(&self) -> Graph {
        let d0 = self.root_degree();
        let mut edges = Vec::new();
        let l1 = |u: usize| 1 + u;
        let mut next = 1 + d0;
        for u in 0..d0 {
            edges.push((0, l1(u)));
        }
        let l2_start = next;
        next += self.l2.len();
        for (i, v) in self.l2.iter().enumerate() {
            for u in 0..d0 {
                if v.neighbors >> u & 1 == 1 {
                    edges.push((l1(u), l2_start + i));
                }
            }
        }
        for (i, v) in self.l2.iter().enumerate() {
            for _ in 0..v.down() {
                let w = next;
                next += 1;
                edges.push((l2_start + i, w));
                for _ in 1..self.delta_eff {
                    edges.push((w, next));
                    next += 1;
                }
            }
        }
        // level-1 vertices without level-2 neighbours are leaves already
        Graph::from_edges(next, edges).expect("realization is simple")
    }

    /// Extracts the configuration around `x` in a concrete graph, taking
    /// `delta_eff` as the level-3 padding degree.
    pub fn from_graph(g: &Graph, x: usize, delta_eff: u8) -> Result<LocalConfig, GoodError> {
        let ld = crate::good::level_decomposition(g, x)?;
        let mut l1 = ld.vertices_at(1);
        if l1.len() > MAX_ROOT_DEGREE {
            return Err(GoodError::Degree(crate::algebra::DegreeBoundError {
                found: l1.len(),
                bound: MAX_ROOT_DEGREE,
            }));
        }
        l1.sort_by_key(|&u| (std::cmp::Reverse(g.degree(u)), u));
        let index_of = |w: usize| l1.iter().position(|&u| u == w);
        let l2 = ld
            .vertices_at(2)
            .into_iter()
            .map(|v| {
                let neighbors = g
                    .neighbors(v)
                    .iter()
                    .filter_map(|&w| index_of(w))
                    .fold(0u8, |m, i| m | (1 << i));
                Level2Vertex::new(neighbors, g.degree(v) as u8)
            })
            .collect();
        let degrees = l1.iter().map(|&u| g.degree(u) as u8).collect();
        let mut cfg = LocalConfig {
            delta_eff,
            l1_degrees: degrees,
            l2,
        };
        cfg.l2.sort_unstable();
        Ok(cfg)
    }

    /// Compact human-readable rendering, e.g.
    /// `d0=2 L1=[2,2] L2=[{0,1}:3] pad=5`.
    pub fn describe(&self) -> String {
        let l1: Vec<String> = self.l1_degrees.iter().map(u8::to_string).collect();
        let l2: Vec<String> = self
            .l2
            .iter()
            .map(|v| {
                let members: Vec<String> = (0..8)
                    .filter(|u| v.neighbors >> u & 1 == 1)
                    .map(|u| u.to_string())
                    .collect();
                format!("{{{}}}:{}", members.join(","), v.degree)
            })
            .collect();
        format!(
            "d0={} L1=[{}] L2=[{}] pad={}",
            self.root_degree(),
            l1.join(","),
            l2.join(" "),
            self.delta_eff
        )
    }
}

impl fmt::Display for LocalConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.describe())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Outcome;
    use crate::good::is_good;

    fn p() -> Precision {
        Precision::default()
    }

    #[test]
    fn padding_example_terms() {
        // one level-2 vertex of degree 2 with a single level-3 edge, padded to 5
        let cfg = LocalConfig::new(5, vec![2], vec![Level2Vertex::new(0b1, 2)]).unwrap();
        let t = cfg.pad_level3().terms();
        let f25 = FactorProduct::factor(Factor::new(2, 5));
        assert_eq!(t.a.exponent_of(Factor::new(2, 5).base()), f25.exponent_of(35));
        assert_eq!(t.b.exponent_of(35), f25.exponent_of(35));
        assert_eq!(t.c, FactorProduct::factor(Factor::new(1, 5)));
    }

    #[test]
    fn no_level3_edges_means_no_padding() {
        let cfg = LocalConfig::new(3, vec![2, 2], vec![Level2Vertex::new(0b11, 2)]).unwrap();
        let t = cfg.terms();
        assert!(t.a.exponents().all(|(b, _)| b != Factor::new(2, 3).base()));
        assert_eq!(cfg.pad_level3(), cfg);
    }

    #[test]
    fn complete_bipartite_configs_are_tight() {
        for d in 1..=5u8 {
            let full = ((1u16 << d) - 1) as u8;
            let l2 = vec![Level2Vertex::new(full, d); (d - 1) as usize];
            let cfg = LocalConfig::new(d, vec![d; d as usize], l2).unwrap();
            assert!(cfg.is_complete_bipartite_pattern());
            assert_eq!(cfg.goodness(p()).outcome, Outcome::Equal);
        }
        assert_eq!(LocalConfig::isolated(0).goodness(p()).outcome, Outcome::Equal);
    }

    #[test]
    fn path_with_leaves_neighbourhood_fails() {
        // root of degree 1, neighbour of degree 2, level-2 vertex of degree 2
        // whose level-3 neighbour has degree 4
        let cfg = LocalConfig::new(4, vec![2], vec![Level2Vertex::new(0b1, 2)]).unwrap();
        assert_eq!(cfg.goodness(p()).outcome, Outcome::StrictlyLess);
    }

    #[test]
    fn validation_errors() {
        assert!(matches!(
            LocalConfig::new(3, vec![2], vec![]),
            Err(ConfigError::Coverage { .. })
        ));
        assert!(matches!(
            LocalConfig::new(3, vec![2], vec![Level2Vertex::new(0, 1)]),
            Err(ConfigError::Level2Orphan { .. })
        ));
        assert!(matches!(
            LocalConfig::new(3, vec![2], vec![Level2Vertex::new(0b10, 1)]),
            Err(ConfigError::Level2Mask { .. })
        ));
        assert!(matches!(
            LocalConfig::new(
                3,
                vec![3, 2],
                vec![Level2Vertex::new(0b11, 1), Level2Vertex::new(0b1, 1)]
            ),
            Err(ConfigError::Level2Degree { .. })
        ));
    }

    #[test]
    fn realization_roundtrip_and_agreement() {
        let cfg = LocalConfig::new(
            4,
            vec![4, 2, 2],
            vec![
                Level2Vertex::new(0b011, 3),
                Level2Vertex::new(0b101, 2),
                Level2Vertex::new(0b001, 4),
            ],
        )
        .unwrap();
        let g = cfg.realize();
        assert_eq!(LocalConfig::from_graph(&g, 0, 4).unwrap(), cfg);
        assert_eq!(is_good(&g, 0, p()).unwrap().outcome, cfg.goodness(p()).outcome);
    }

    #[test]
    fn rule_checks() {
        let cfg = LocalConfig::new(2, vec![2, 1], vec![Level2Vertex::new(0b01, 2)]).unwrap();
        assert!(cfg.satisfies(RootRule::MaxDegreeRoot));
        assert!(!cfg.satisfies(RootRule::MinDegreeRoot));
    }
}
