//! Benchmark fixtures for the verification engine.

use kahn_core::corpus::{cube, Corpus};
use kahn_core::search::{Level2Vertex, LocalConfig};
use kahn_core::Graph;

/// Disjoint union of `copies` 3-cubes.
pub fn cubes(copies: usize) -> Graph {
    (1..copies).fold(cube(), |g, _| g.disjoint_union(&cube()))
}

/// Seeded random graphs of maximum degree 5 on `n` vertices.
pub fn random_graphs(seed: u64, count: usize, n: usize) -> Vec<Graph> {
    let mut c = Corpus::new(seed);
    (0..count).map(|_| c.graph(n, 5, 0.4)).collect()
}

/// A dense minimum-degree configuration: root of degree 3, all level-1
/// vertices of degree 5, every level-2 vertex sharing two of them.
pub fn dense_config() -> LocalConfig {
    let l2 = vec![
        Level2Vertex::new(0b011, 4),
        Level2Vertex::new(0b011, 3),
        Level2Vertex::new(0b101, 5),
        Level2Vertex::new(0b110, 3),
        Level2Vertex::new(0b110, 4),
        Level2Vertex::new(0b101, 3),
    ];
    LocalConfig::new(5, vec![5, 5, 5], l2).expect("valid configuration")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_are_well_formed() {
        assert_eq!(cubes(3).n(), 24);
        assert!(random_graphs(1, 5, 20).iter().all(|g| g.max_degree() <= 5));
        assert_eq!(dense_config().root_degree(), 3);
    }
}
