//! Seeded random and structured test graphs.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::Graph;

/// Deterministic graph source; equal seeds give equal sequences.
#[derive(Debug, Clone)]
pub struct Corpus {
    rng: ChaCha8Rng,
}

impl Corpus {
    pub fn new(seed: u64) -> Self {
        Corpus {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// `n` vertices; each candidate pair, in random order, becomes an edge
    /// with probability `density` unless an endpoint is already at
    /// `max_degree`.
    pub fn graph(&mut self, n: usize, max_degree: usize, density: f64) -> Graph {
        let mut pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        self.fill(n, &mut pairs, max_degree, density)
    }

    /// Bipartite graph on `n` vertices with random sides.
    pub fn bipartite(&mut self, n: usize, max_degree: usize, density: f64) -> Graph {
        let side: Vec<bool> = (0..n).map(|_| self.rng.gen()).collect();
        let mut pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .filter(|&(u, v)| side[u] != side[v])
            .collect();
        self.fill(n, &mut pairs, max_degree, density)
    }

    fn fill(&mut self, n: usize, pairs: &mut [(usize, usize)], max_degree: usize, density: f64) -> Graph {
        pairs.shuffle(&mut self.rng);
        let mut deg = vec![0usize; n];
        let mut edges = Vec::new();
        for &(u, v) in pairs.iter() {
            if deg[u] < max_degree && deg[v] < max_degree && self.rng.gen_bool(density) {
                deg[u] += 1;
                deg[v] += 1;
                edges.push((u, v));
            }
        }
        Graph::from_edges(n, edges).expect("generated edges are simple")
    }

    /// Random size in `0..=max_n` and random density.
    pub fn any_graph(&mut self, max_n: usize, max_degree: usize) -> Graph {
        let n = self.rng.gen_range(0..=max_n);
        let density = self.rng.gen_range(0.05..0.95);
        self.graph(n, max_degree, density)
    }

    /// Random bipartite graph with at least one vertex.
    pub fn any_bipartite(&mut self, max_n: usize, max_degree: usize) -> Graph {
        let n = self.rng.gen_range(1..=max_n.max(1));
        let density = self.rng.gen_range(0.1..1.0);
        self.bipartite(n, max_degree, density)
    }

    pub fn vertex(&mut self, g: &Graph) -> Option<usize> {
        (g.n() > 0).then(|| self.rng.gen_range(0..g.n()))
    }

    pub fn below(&mut self, n: usize) -> usize {
        self.rng.gen_range(0..n)
    }
}

/// Hand-picked graphs covering the equality cases and common shapes.
pub fn structured_graphs() -> Vec<(String, Graph)> {
    let mut out: Vec<(String, Graph)> = vec![
        ("empty".into(), Graph::empty(0)),
        ("single vertex".into(), Graph::empty(1)),
        ("P4".into(), Graph::path(4)),
        ("C3".into(), Graph::cycle(3)),
        ("C6".into(), Graph::cycle(6)),
        ("C7".into(), Graph::cycle(7)),
        ("cube".into(), cube()),
        ("path with leaves".into(), path_with_leaves()),
    ];
    for a in 1..=5 {
        for b in a..=5 {
            out.push((format!("K{a},{b}"), Graph::complete_bipartite(a, b)));
        }
    }
    out.push((
        "K1,1 + K2,2 + point".into(),
        Graph::complete_bipartite(1, 1)
            .disjoint_union(&Graph::complete_bipartite(2, 2))
            .disjoint_union(&Graph::empty(1)),
    ));
    out
}

/// The 3-cube.
pub fn cube() -> Graph {
    let mut edges = Vec::new();
    for v in 0..8usize {
        for bit in 0..3 {
            let w = v ^ (1 << bit);
            if v < w {
                edges.push((v, w));
            }
        }
    }
    Graph::from_edges(8, edges).expect("cube is simple")
}

/// The root `x = 0` is not good: path `x - a - b - c` with leaves `d, e, f`
/// hanging off `c`.
pub fn path_with_leaves() -> Graph {
    Graph::from_edges(7, vec![(0, 1), (1, 2), (2, 3), (3, 4), (3, 5), (3, 6)]).expect("simple")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeds_reproduce() {
        let a: Vec<Graph> = {
            let mut c = Corpus::new(7);
            (0..20).map(|_| c.any_graph(10, 4)).collect()
        };
        let b: Vec<Graph> = {
            let mut c = Corpus::new(7);
            (0..20).map(|_| c.any_graph(10, 4)).collect()
        };
        assert_eq!(a, b);
    }

    #[test]
    fn degree_caps_and_bipartiteness() {
        let mut c = Corpus::new(1);
        for _ in 0..200 {
            let g = c.any_graph(12, 3);
            assert!(g.max_degree() <= 3);
            let h = c.any_bipartite(12, 5);
            assert!(h.max_degree() <= 5 && h.is_bipartite());
        }
    }
}
