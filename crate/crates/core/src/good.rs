//! Good vertices: `x` is good for `G` when
//! `Pi(G) >= Pi(G - x) + Pi(G - x - N(x))`.
//!
//! Factors from edges at distance three or more from `x` appear on both
//! sides and cancel, so the reduced check only needs the BFS levels 0..=3
//! around the root. [`is_good_fullgraph`] evaluates the uncancelled form
//! and serves as an oracle for [`is_good`].

use std::collections::VecDeque;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{
    certify_sum_inequality, compare_with_integer, pi_product, DegreeBoundError, Factor, FactorProduct, Method, Outcome,
    Precision, Verdict,
};
use crate::count::{count_independent_sets, CountError};
use crate::graph::{ComponentShape, Graph, GraphError, OddCycle};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GoodError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Degree(#[from] DegreeBoundError),
    #[error(transparent)]
    Count(#[from] CountError),
    #[error("component of the root is not bipartite (odd cycle {:?})", .0.cycle)]
    NotBipartite(OddCycle),
    #[error("graph is not bipartite (odd cycle {:?})", .0.cycle)]
    GraphNotBipartite(OddCycle),
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error("no good vertex found among the probed candidates: {trace:?}")]
    NoGoodVertex { trace: Vec<ProbeResult> },
}

/// Deepest level retained around the root.
pub const MAX_LEVEL: u32 = 4;

/// BFS layering of the root's component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelDecomposition {
    pub root: usize,
    /// Edge distance from the root, for vertices within [`MAX_LEVEL`].
    pub level: Vec<Option<u32>>,
    pub degree: Vec<usize>,
    /// Edges as (lower level, higher level).
    pub e01: Vec<(usize, usize)>,
    pub e12: Vec<(usize, usize)>,
    pub e23: Vec<(usize, usize)>,
    /// Number of level-1 neighbours, nonzero only for level-2 vertices.
    pub level1_neighbors: Vec<usize>,
    /// `iso(G')` for the root's component `G'`.
    pub iso_component: u64,
    /// `iso(G' - x)`.
    pub iso_minus_root: u64,
    /// `iso(G' - x - N(x))`.
    pub iso_minus_closed: u64,
    pub shape: ComponentShape,
}

impl LevelDecomposition {
    pub fn vertices_at(&self, level: u32) -> Vec<usize> {
        (0..self.level.len())
            .filter(|&v| self.level[v] == Some(level))
            .collect()
    }
}

/// The three terms `A >= B + C` of the reduced inequality.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoodnessInstance {
    pub a: FactorProduct,
    pub b: FactorProduct,
    pub c: FactorProduct,
    pub equality_expected: bool,
}

impl GoodnessInstance {
    pub fn certify(&self, precision: Precision) -> Verdict {
        certify_sum_inequality(&self.a, &self.b, &self.c, self.equality_expected, precision)
    }
}

/// BFS levels around `x`; the component of `x` must be bipartite.
pub fn level_decomposition(g: &Graph, x: usize) -> Result<LevelDecomposition, GoodError> {
    let shape = g.component_shape(x)?;
    let n = g.n();
    let mut dist = vec![u32::MAX; n];
    dist[x] = 0;
    let mut order = vec![x];
    let mut queue = VecDeque::from([x]);
    while let Some(u) = queue.pop_front() {
        for &w in g.neighbors(u) {
            if dist[w] == u32::MAX {
                dist[w] = dist[u] + 1;
                order.push(w);
                queue.push_back(w);
            }
        }
    }
    for &u in &order {
        for &w in g.neighbors(u) {
            if dist[w] == dist[u] {
                // same level: the component contains an odd cycle
                let comp = g.component_of(x);
                let mut keep = crate::graph::VertexSet::empty(n);
                for v in comp {
                    keep.insert(v);
                }
                let sub = g.induced(&keep);
                let odd = sub.graph.bipartition().expect_err("edge inside a BFS level");
                let cycle = odd.cycle.iter().map(|&v| sub.map.old_index(v)).collect();
                return Err(GoodError::NotBipartite(OddCycle { cycle }));
            }
        }
    }

    let level: Vec<Option<u32>> = dist.iter().map(|&d| (d <= MAX_LEVEL).then_some(d)).collect();
    let degree: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut e01 = Vec::new();
    let mut e12 = Vec::new();
    let mut e23 = Vec::new();
    let mut level1_neighbors = vec![0; n];
    for &u in &order {
        for &w in g.neighbors(u) {
            if dist[w] != dist[u] + 1 {
                continue;
            }
            match dist[u] {
                0 => e01.push((u, w)),
                1 => {
                    e12.push((u, w));
                    level1_neighbors[w] += 1;
                }
                2 => e23.push((u, w)),
                _ => {}
            }
        }
    }
    let iso_component = u64::from(degree[x] == 0);
    let iso_minus_root = order.iter().filter(|&&v| dist[v] == 1 && degree[v] == 1).count() as u64;
    let iso_minus_closed = order
        .iter()
        .filter(|&&v| dist[v] == 2 && degree[v] == level1_neighbors[v])
        .count() as u64;
    Ok(LevelDecomposition {
        root: x,
        level,
        degree,
        e01,
        e12,
        e23,
        level1_neighbors,
        iso_component,
        iso_minus_root,
        iso_minus_closed,
        shape,
    })
}

fn edge_factor(a: usize, b: usize) -> Factor {
    Factor::new(a as u32, b as u32)
}

/// Assembles `A`, `B` and `C` from a decomposition.
pub fn goodness_terms(ld: &LevelDecomposition) -> GoodnessInstance {
    let d = &ld.degree;
    let mut a = FactorProduct::pow2(ld.iso_component);
    let mut b = FactorProduct::pow2(ld.iso_minus_root);
    let mut c = FactorProduct::pow2(ld.iso_minus_closed);
    for &(u, v) in ld.e01.iter().chain(&ld.e12) {
        a.push_factor(edge_factor(d[u], d[v]), 1);
    }
    for &(u, v) in &ld.e12 {
        b.push_factor(edge_factor(d[u] - 1, d[v]), 1);
    }
    for &(u, v) in &ld.e23 {
        let full = edge_factor(d[u], d[v]);
        a.push_factor(full, 1);
        b.push_factor(full, 1);
        // u has a level-3 neighbour, so it keeps positive degree in G - x - N(x)
        c.push_factor(edge_factor(d[u] - ld.level1_neighbors[u], d[v]), 1);
    }
    GoodnessInstance {
        a,
        b,
        c,
        equality_expected: ld.shape.is_extremal(),
    }
}

/// Certifies the reduced inequality at `x`.
pub fn is_good(g: &Graph, x: usize, precision: Precision) -> Result<Verdict, GoodError> {
    let ld = level_decomposition(g, x)?;
    if g.max_degree() > crate::algebra::DEFAULT_MAX_DEGREE {
        return Err(DegreeBoundError {
            found: g.max_degree(),
            bound: crate::algebra::DEFAULT_MAX_DEGREE,
        }
        .into());
    }
    Ok(goodness_terms(&ld).certify(precision))
}

/// The uncancelled terms `Pi(G)`, `Pi(G - x)`, `Pi(G - x - N(x))`.
pub fn fullgraph_terms(g: &Graph, x: usize) -> Result<GoodnessInstance, GoodError> {
    let shape = g.component_shape(x)?;
    let (minus_x, minus_closed) = g.delete_closed(x)?;
    Ok(GoodnessInstance {
        a: pi_product(g)?,
        b: pi_product(&minus_x.graph)?,
        c: pi_product(&minus_closed.graph)?,
        equality_expected: shape.is_extremal(),
    })
}

/// Certifies `Pi(G) >= Pi(G - x) + Pi(G - x - N(x))` without cancellation.
pub fn is_good_fullgraph(g: &Graph, x: usize, precision: Precision) -> Result<Verdict, GoodError> {
    Ok(fullgraph_terms(g, x)?.certify(precision))
}

/// Which rule proposed a candidate vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Probe {
    MaxDegree,
    MinDegree,
    NeighborOfMinDegree,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProbeResult {
    pub vertex: usize,
    pub probe: Probe,
    pub outcome: Outcome,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoodVertex {
    pub vertex: usize,
    pub verdict: Verdict,
    pub trace: Vec<ProbeResult>,
}

/// Tries a maximum-degree vertex, then a minimum-degree vertex `v`, then
/// the neighbours of `v`, returning the first one certified good.
pub fn find_good_vertex(g: &Graph, precision: Precision) -> Result<GoodVertex, GoodError> {
    if g.n() == 0 {
        return Err(GoodError::EmptyGraph);
    }
    g.bipartition().map_err(GoodError::GraphNotBipartite)?;
    let max_v = (0..g.n())
        .max_by_key(|&v| (g.degree(v), std::cmp::Reverse(v)))
        .expect("nonempty");
    let min_v = (0..g.n()).min_by_key(|&v| (g.degree(v), v)).expect("nonempty");
    let mut candidates = vec![(max_v, Probe::MaxDegree), (min_v, Probe::MinDegree)];
    candidates.extend(g.neighbors(min_v).iter().map(|&w| (w, Probe::NeighborOfMinDegree)));
    let mut trace = Vec::new();
    for (vertex, probe) in candidates {
        let verdict = is_good(g, vertex, precision)?;
        trace.push(ProbeResult {
            vertex,
            probe,
            outcome: verdict.outcome,
        });
        if verdict.outcome.holds() {
            return Ok(GoodVertex { vertex, verdict, trace });
        }
    }
    Err(GoodError::NoGoodVertex { trace })
}

/// Outcome of checking `ind(G) <= Pi(G)` on one graph.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KahnReport {
    pub n: usize,
    pub edges: usize,
    pub ind: String,
    pub pi: String,
    /// 128-bit enclosure of `Pi(G)` in decimal.
    pub pi_enclosure: [String; 2],
    /// `Pi(G)` compared against `ind(G)`.
    pub outcome: Outcome,
    pub method: Method,
    pub bound_holds: bool,
    pub bipartite: bool,
    /// Every component is complete bipartite or a single vertex.
    pub extremal_structure: bool,
}

/// Counts `ind(G)`, builds `Pi(G)` and certifies the bound.
pub fn check_kahn_bound(g: &Graph, precision: Precision) -> Result<KahnReport, GoodError> {
    let pi = pi_product(g)?;
    let ind: BigUint = count_independent_sets(g)?;
    let verdict = compare_with_integer(&pi, &ind, precision);
    let enclosure = pi.enclose(128);
    Ok(KahnReport {
        n: g.n(),
        edges: g.edge_count(),
        ind: ind.to_string(),
        pi: pi.to_string(),
        pi_enclosure: [enclosure.lo_decimal(12), enclosure.hi_decimal(12)],
        outcome: verdict.outcome,
        method: verdict.method(),
        bound_holds: verdict.outcome.holds(),
        bipartite: g.is_bipartite(),
        extremal_structure: g.is_union_of_extremal_components(),
    })
}
