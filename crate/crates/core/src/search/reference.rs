//! The fourteen exceptional appearances at maximum degree 5, drawn as
//! leveled graphs rooted at vertex 0 (the minimum-degree vertex).

use super::canon::{CanonicalForm, LeveledGraph};

type Drawing = (&'static [u8], &'static [(usize, usize)]);

const DRAWINGS: [Drawing; 14] = [
    (&[0, 1, 2, 3], &[(0, 1), (1, 2), (2, 3)]),
    (&[0, 1, 2, 2, 3], &[(0, 1), (1, 2), (1, 3), (2, 4)]),
    (&[0, 1, 2, 2, 3, 3], &[(0, 1), (1, 2), (1, 3), (2, 4), (3, 5)]),
    (&[0, 1, 2, 2, 3], &[(0, 1), (1, 2), (1, 3), (2, 4), (3, 4)]),
    (
        &[0, 1, 1, 2, 2, 3, 3, 3, 3],
        &[(0, 1), (0, 2), (1, 3), (2, 4), (3, 5), (3, 6), (4, 7), (4, 8)],
    ),
    (
        &[0, 1, 1, 2, 2, 3, 3, 3],
        &[(0, 1), (0, 2), (1, 3), (2, 4), (3, 5), (3, 6), (4, 6), (4, 7)],
    ),
    (
        &[0, 1, 1, 2, 2, 3, 3],
        &[(0, 1), (0, 2), (1, 3), (2, 4), (3, 5), (4, 5), (3, 6), (4, 6)],
    ),
    (&[0, 1, 1, 2, 3], &[(0, 1), (0, 2), (1, 3), (2, 3), (3, 4)]),
    (
        &[0, 1, 1, 2, 2, 3],
        &[(0, 1), (0, 2), (1, 3), (2, 3), (1, 4), (2, 4), (3, 5)],
    ),
    (
        &[0, 1, 1, 2, 2, 3, 3],
        &[(0, 1), (0, 2), (1, 3), (2, 3), (1, 4), (2, 4), (3, 5), (4, 6)],
    ),
    (
        &[0, 1, 1, 2, 2, 3],
        &[(0, 1), (0, 2), (1, 3), (2, 3), (1, 4), (2, 4), (3, 5), (4, 5)],
    ),
    (
        &[0, 1, 1, 1, 2, 2, 3],
        &[
            (0, 1),
            (0, 2),
            (0, 3),
            (1, 4),
            (2, 4),
            (3, 4),
            (1, 5),
            (2, 5),
            (3, 5),
            (4, 6),
        ],
    ),
    (
        &[0, 1, 1, 1, 2, 2, 3, 3],
        &[
            (0, 1),
            (0, 2),
            (0, 3),
            (1, 4),
            (2, 4),
            (3, 4),
            (1, 5),
            (2, 5),
            (3, 5),
            (4, 6),
            (5, 7),
        ],
    ),
    (
        &[0, 1, 1, 1, 2, 2, 3],
        &[
            (0, 1),
            (0, 2),
            (0, 3),
            (1, 4),
            (2, 4),
            (3, 4),
            (1, 5),
            (2, 5),
            (3, 5),
            (4, 6),
            (5, 6),
        ],
    ),
];

pub const REFERENCE_LEN: usize = DRAWINGS.len();

/// The reference drawings, numbered 1 to 14 in list order.
pub fn reference_patterns() -> Vec<LeveledGraph> {
    DRAWINGS
        .iter()
        .map(|(levels, edges)| LeveledGraph::from_edges(levels.to_vec(), edges))
        .collect()
}

pub fn reference_forms() -> Vec<CanonicalForm> {
    reference_patterns().iter().map(LeveledGraph::canonical_form).collect()
}

/// 1-based number of the drawing isomorphic to `form`, if any.
pub fn reference_number(form: &CanonicalForm) -> Option<usize> {
    reference_forms().iter().position(|f| f == form).map(|i| i + 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn drawings_are_distinct_and_leveled() {
        let pats = reference_patterns();
        let forms: HashSet<_> = pats.iter().map(|p| p.canonical_form()).collect();
        assert_eq!(forms.len(), REFERENCE_LEN);
        for p in &pats {
            for (u, v) in p.edges() {
                assert_eq!(p.level[u].abs_diff(p.level[v]), 1);
            }
            assert!(p.to_graph().is_bipartite());
        }
    }
}
