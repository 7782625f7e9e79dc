//! Undirected simple graphs and the structural operations used by the
//! counting, bound and search modules.

use std::collections::VecDeque;
use std::fmt;

use thiserror::Error;

/// Errors raised while building or parsing a [`Graph`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("line {line}: self-loop at vertex {vertex}")]
    SelfLoop { line: usize, vertex: usize },
    #[error("line {line}: duplicate edge {u} {v}")]
    DuplicateEdge { line: usize, u: usize, v: usize },
    #[error("line {line}: vertex {vertex} out of range for n = {n}")]
    VertexOutOfRange { line: usize, vertex: usize, n: usize },
    #[error("line {line}: malformed input: {reason}")]
    Malformed { line: usize, reason: String },
    #[error("missing `n <count>` header")]
    MissingHeader,
    #[error("vertex {vertex} out of range for n = {n}")]
    NoSuchVertex { vertex: usize, n: usize },
}

/// Undirected simple graph on vertices `0..n` with sorted adjacency lists.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n())
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

/// Old/new index correspondence produced when vertices are removed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relabeling {
    old_to_new: Vec<Option<usize>>,
    new_to_old: Vec<usize>,
}

impl Relabeling {
    pub fn new_index(&self, old: usize) -> Option<usize> {
        self.old_to_new.get(old).copied().flatten()
    }

    pub fn old_index(&self, new: usize) -> usize {
        self.new_to_old[new]
    }

    /// Original indices of the kept vertices, in new-index order.
    pub fn kept(&self) -> &[usize] {
        &self.new_to_old
    }
}

/// A graph obtained by deleting vertices, together with its re-indexing map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Deletion {
    pub graph: Graph,
    pub map: Relabeling,
}

/// Membership set over the vertex range of a fixed host graph.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VertexSet {
    bits: Vec<bool>,
}

impl VertexSet {
    pub fn empty(n: usize) -> Self {
        VertexSet { bits: vec![false; n] }
    }

    pub fn full(n: usize) -> Self {
        VertexSet { bits: vec![true; n] }
    }

    pub fn host_size(&self) -> usize {
        self.bits.len()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.bits.get(v).copied().unwrap_or(false)
    }

    pub fn insert(&mut self, v: usize) {
        self.bits[v] = true;
    }

    pub fn remove(&mut self, v: usize) {
        self.bits[v] = false;
    }

    pub fn len(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    pub fn is_empty(&self) -> bool {
        !self.bits.iter().any(|&b| b)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.iter().enumerate().filter_map(|(i, &b)| b.then_some(i))
    }
}

/// Two-colouring of a bipartite graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bipartition {
    side: Vec<u8>,
}

impl Bipartition {
    pub fn side(&self, v: usize) -> u8 {
        self.side[v]
    }

    pub fn sides(&self) -> &[u8] {
        &self.side
    }

    /// Vertices on side 0 and side 1.
    pub fn parts(&self) -> (Vec<usize>, Vec<usize>) {
        let mut zero = Vec::new();
        let mut one = Vec::new();
        for (v, &s) in self.side.iter().enumerate() {
            if s == 0 {
                zero.push(v)
            } else {
                one.push(v)
            }
        }
        (zero, one)
    }
}

/// Odd closed walk proving that a graph is not bipartite. Consecutive
/// entries are adjacent and the last entry is adjacent to the first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OddCycle {
    pub cycle: Vec<usize>,
}

/// Shape of the connected component containing a vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ComponentShape {
    Isolated,
    CompleteBipartite { a: usize, b: usize },
    Other,
}

impl ComponentShape {
    /// True for the shapes on which the bound and the good-vertex
    /// inequality are tight.
    pub fn is_extremal(self) -> bool {
        !matches!(self, ComponentShape::Other)
    }
}

impl Graph {
    /// Graph on `n` vertices with no edges.
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
        }
    }

    /// Builds a graph from an edge list, rejecting loops, repeats and
    /// out-of-range endpoints. Errors report the 1-based edge position.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::empty(n);
        for (i, (u, v)) in edges.into_iter().enumerate() {
            g.try_add_edge(u, v, i + 1)?;
        }
        Ok(g)
    }

    fn try_add_edge(&mut self, u: usize, v: usize, line: usize) -> Result<(), GraphError> {
        let n = self.n();
        for w in [u, v] {
            if w >= n {
                return Err(GraphError::VertexOutOfRange { line, vertex: w, n });
            }
        }
        if u == v {
            return Err(GraphError::SelfLoop { line, vertex: u });
        }
        match self.adj[u].binary_search(&v) {
            Ok(_) => {
                let (u, v) = (u.min(v), u.max(v));
                Err(GraphError::DuplicateEdge { line, u, v })
            }
            Err(pos) => {
                self.adj[u].insert(pos, v);
                let pos = self.adj[v].binary_search(&u).unwrap_err();
                self.adj[v].insert(pos, u);
                Ok(())
            }
        }
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj.get(u).map(|a| a.binary_search(&v).is_ok()).unwrap_or(false)
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    /// Number of isolated vertices.
    pub fn iso_count(&self) -> usize {
        self.adj.iter().filter(|a| a.is_empty()).count()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, a)| a.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    fn check_vertex(&self, x: usize) -> Result<(), GraphError> {
        if x < self.n() {
            Ok(())
        } else {
            Err(GraphError::NoSuchVertex { vertex: x, n: self.n() })
        }
    }

    /// Subgraph induced by `keep`, re-indexed densely in increasing order.
    pub fn induced(&self, keep: &VertexSet) -> Deletion {
        let mut old_to_new = vec![None; self.n()];
        let mut new_to_old = Vec::new();
        for (v, slot) in old_to_new.iter_mut().enumerate() {
            if keep.contains(v) {
                *slot = Some(new_to_old.len());
                new_to_old.push(v);
            }
        }
        let adj = new_to_old
            .iter()
            .map(|&old| {
                // old_to_new is monotone so the mapped list stays sorted
                self.adj[old].iter().filter_map(|&w| old_to_new[w]).collect()
            })
            .collect();
        Deletion {
            graph: Graph { adj },
            map: Relabeling { old_to_new, new_to_old },
        }
    }

    /// `G - x`.
    pub fn delete_vertex(&self, x: usize) -> Result<Deletion, GraphError> {
        self.check_vertex(x)?;
        let mut keep = VertexSet::full(self.n());
        keep.remove(x);
        Ok(self.induced(&keep))
    }

    /// `(G - x, G - x - N(x))`.
    pub fn delete_closed(&self, x: usize) -> Result<(Deletion, Deletion), GraphError> {
        self.check_vertex(x)?;
        let mut keep = VertexSet::full(self.n());
        keep.remove(x);
        let minus_x = self.induced(&keep);
        for &w in &self.adj[x] {
            keep.remove(w);
        }
        Ok((minus_x, self.induced(&keep)))
    }

    /// Component label per vertex, labels assigned in order of lowest vertex.
    pub fn component_labels(&self) -> (Vec<usize>, usize) {
        let mut label = vec![usize::MAX; self.n()];
        let mut count = 0;
        let mut queue = VecDeque::new();
        for s in 0..self.n() {
            if label[s] != usize::MAX {
                continue;
            }
            label[s] = count;
            queue.push_back(s);
            while let Some(u) = queue.pop_front() {
                for &w in &self.adj[u] {
                    if label[w] == usize::MAX {
                        label[w] = count;
                        queue.push_back(w);
                    }
                }
            }
            count += 1;
        }
        (label, count)
    }

    /// Connected components, each with its new-to-old vertex map.
    pub fn components(&self) -> Vec<(Graph, Vec<usize>)> {
        let (label, count) = self.component_labels();
        (0..count)
            .map(|c| {
                let mut keep = VertexSet::empty(self.n());
                for (v, &l) in label.iter().enumerate() {
                    if l == c {
                        keep.insert(v);
                    }
                }
                let d = self.induced(&keep);
                (d.graph, d.map.new_to_old)
            })
            .collect()
    }

    /// Vertices of the component containing `x`, in increasing order.
    pub fn component_of(&self, x: usize) -> Vec<usize> {
        let mut seen = vec![false; self.n()];
        seen[x] = true;
        let mut queue = VecDeque::from([x]);
        while let Some(u) = queue.pop_front() {
            for &w in &self.adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        (0..self.n()).filter(|&v| seen[v]).collect()
    }

    /// Two-colouring by BFS, or an odd cycle when none exists.
    pub fn bipartition(&self) -> Result<Bipartition, OddCycle> {
        let n = self.n();
        let mut side = vec![u8::MAX; n];
        let mut parent = vec![usize::MAX; n];
        let mut depth = vec![0usize; n];
        let mut queue = VecDeque::new();
        for s in 0..n {
            if side[s] != u8::MAX {
                continue;
            }
            side[s] = 0;
            queue.push_back(s);
            while let Some(u) = queue.pop_front() {
                for &w in &self.adj[u] {
                    if side[w] == u8::MAX {
                        side[w] = 1 - side[u];
                        parent[w] = u;
                        depth[w] = depth[u] + 1;
                        queue.push_back(w);
                    } else if side[w] == side[u] {
                        return Err(OddCycle {
                            cycle: tree_cycle(&parent, &depth, u, w),
                        });
                    }
                }
            }
        }
        Ok(Bipartition { side })
    }

    pub fn is_bipartite(&self) -> bool {
        self.bipartition().is_ok()
    }

    /// Tensor product with `K2`: vertex `(v, i)` has index `2v + i`.
    pub fn tensor_k2(&self) -> Graph {
        let mut adj = vec![Vec::new(); 2 * self.n()];
        for (v, nbrs) in self.adj.iter().enumerate() {
            adj[2 * v] = nbrs.iter().map(|&w| 2 * w + 1).collect();
            adj[2 * v + 1] = nbrs.iter().map(|&w| 2 * w).collect();
        }
        Graph { adj }
    }

    /// Disjoint union; the vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let shift = self.n();
        let mut adj = self.adj.clone();
        adj.extend(other.adj.iter().map(|a| a.iter().map(|&w| w + shift).collect()));
        Graph { adj }
    }

    /// Classifies the component containing `x`.
    pub fn component_shape(&self, x: usize) -> Result<ComponentShape, GraphError> {
        self.check_vertex(x)?;
        if self.adj[x].is_empty() {
            return Ok(ComponentShape::Isolated);
        }
        let comp = self.component_of(x);
        let mut keep = VertexSet::empty(self.n());
        for &v in &comp {
            keep.insert(v);
        }
        let sub = self.induced(&keep).graph;
        let Ok(bip) = sub.bipartition() else {
            return Ok(ComponentShape::Other);
        };
        let (zero, one) = bip.parts();
        if zero.len() * one.len() == sub.edge_count() {
            let (a, b) = (zero.len().min(one.len()), zero.len().max(one.len()));
            Ok(ComponentShape::CompleteBipartite { a, b })
        } else {
            Ok(ComponentShape::Other)
        }
    }

    /// `true` iff the component of `x` is some `K_{a,b}`; an isolated
    /// vertex is reported separately by [`Graph::component_shape`].
    pub fn is_complete_bipartite_component(&self, x: usize) -> Result<bool, GraphError> {
        Ok(matches!(
            self.component_shape(x)?,
            ComponentShape::CompleteBipartite { .. }
        ))
    }

    /// Every component is a complete bipartite graph or a single vertex.
    pub fn is_union_of_extremal_components(&self) -> bool {
        self.components()
            .iter()
            .all(|(c, _)| c.component_shape(0).map(ComponentShape::is_extremal).unwrap_or(false))
    }

    /// Serializes to the edge-list text format.
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("n {}\n", self.n());
        for (u, v) in self.edges() {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }

    /// Parses the edge-list text format: `#` comment lines, an `n <count>`
    /// header, then one `u v` pair per line.
    pub fn parse_edge_list(text: &str) -> Result<Self, GraphError> {
        let mut graph: Option<Graph> = None;
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let trimmed = raw.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let tokens: Vec<&str> = trimmed.split_whitespace().collect();
            match graph.as_mut() {
                None => {
                    if tokens.len() != 2 || tokens[0] != "n" {
                        return Err(GraphError::Malformed {
                            line,
                            reason: format!("expected `n <count>`, found `{trimmed}`"),
                        });
                    }
                    let n = parse_index(tokens[1], line)?;
                    graph = Some(Graph::empty(n));
                }
                Some(g) => {
                    if tokens.len() != 2 {
                        return Err(GraphError::Malformed {
                            line,
                            reason: format!("expected `u v`, found `{trimmed}`"),
                        });
                    }
                    let u = parse_index(tokens[0], line)?;
                    let v = parse_index(tokens[1], line)?;
                    g.try_add_edge(u, v, line)?;
                }
            }
        }
        graph.ok_or(GraphError::MissingHeader)
    }

    /// `K_{a,b}`; side `a` occupies indices `0..a`.
    pub fn complete_bipartite(a: usize, b: usize) -> Graph {
        assert!(a >= 1 && b >= 1, "complete_bipartite needs a, b >= 1");
        let edges = (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v)));
        Graph::from_edges(a + b, edges).expect("K_{a,b} is simple")
    }

    pub fn path(n: usize) -> Graph {
        Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).expect("path is simple")
    }

    pub fn cycle(n: usize) -> Graph {
        assert!(n >= 3, "cycles need at least 3 vertices");
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).expect("cycle is simple")
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_edge_list())
    }
}

impl std::str::FromStr for Graph {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Graph::parse_edge_list(s)
    }
}

fn parse_index(token: &str, line: usize) -> Result<usize, GraphError> {
    token.parse().map_err(|_| GraphError::Malformed {
        line,
        reason: format!("`{token}` is not a nonnegative integer"),
    })
}

/// Closes the BFS tree paths from `u` and `w` (same colour, adjacent) into a cycle.
fn tree_cycle(parent: &[usize], depth: &[usize], u: usize, w: usize) -> Vec<usize> {
    let (mut a, mut b) = (u, w);
    let mut left = vec![a];
    let mut right = vec![b];
    while depth[a] > depth[b] {
        a = parent[a];
        left.push(a);
    }
    while depth[b] > depth[a] {
        b = parent[b];
        right.push(b);
    }
    while a != b {
        a = parent[a];
        b = parent[b];
        left.push(a);
        right.push(b);
    }
    right.pop();
    right.reverse();
    left.extend(right);
    left
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path_with_leaves() -> Graph {
        // x=0, a=1, b=2, c=3, pendants 4,5,6
        Graph::from_edges(7, [(0, 1), (1, 2), (2, 3), (3, 4), (3, 5), (3, 6)]).unwrap()
    }

    #[test]
    fn parse_smallest_cases() {
        let k2: Graph = "n 2\n0 1".parse().unwrap();
        assert_eq!(k2, Graph::complete_bipartite(1, 1));
        let single: Graph = "n 1".parse().unwrap();
        assert_eq!(single.n(), 1);
        assert_eq!(single.iso_count(), 1);
    }

    #[test]
    fn parse_rejections_name_the_line() {
        assert_eq!(
            Graph::parse_edge_list("n 3\n0 1\n0 1"),
            Err(GraphError::DuplicateEdge { line: 3, u: 0, v: 1 })
        );
        assert_eq!(
            Graph::parse_edge_list("# c\nn 3\n2 2\n"),
            Err(GraphError::SelfLoop { line: 3, vertex: 2 })
        );
        assert_eq!(
            Graph::parse_edge_list("n 3\n0 3\n"),
            Err(GraphError::VertexOutOfRange {
                line: 2,
                vertex: 3,
                n: 3
            })
        );
        assert!(matches!(
            Graph::parse_edge_list("n 3\n0 x\n"),
            Err(GraphError::Malformed { line: 2, .. })
        ));
        assert!(matches!(
            Graph::parse_edge_list("n 3\n0 1 2\n"),
            Err(GraphError::Malformed { line: 2, .. })
        ));
        assert_eq!(Graph::parse_edge_list("# only\n"), Err(GraphError::MissingHeader));
    }

    #[test]
    fn serializer_is_lexicographic() {
        let g = Graph::from_edges(4, [(3, 2), (1, 0), (0, 2)]).unwrap();
        assert_eq!(g.to_edge_list(), "n 4\n0 1\n0 2\n2 3\n");
    }

    #[test]
    fn complete_bipartite_shapes() {
        let k23 = Graph::complete_bipartite(2, 3);
        assert_eq!((k23.n(), k23.edge_count()), (5, 6));
        let mut degs: Vec<_> = (0..5).map(|v| k23.degree(v)).collect();
        degs.sort_unstable_by(|a, b| b.cmp(a));
        assert_eq!(degs, vec![3, 3, 2, 2, 2]);
        let k55 = Graph::complete_bipartite(5, 5);
        assert_eq!(k55.edge_count(), 25);
        assert!((0..10).all(|v| k55.degree(v) == 5));
    }

    #[test]
    fn delete_closed_examples() {
        let k2 = Graph::complete_bipartite(1, 1);
        let (a, b) = k2.delete_closed(0).unwrap();
        assert_eq!(a.graph, Graph::empty(1));
        assert_eq!(b.graph, Graph::empty(0));

        let k22 = Graph::complete_bipartite(2, 2);
        for x in 0..4 {
            let (a, b) = k22.delete_closed(x).unwrap();
            assert_eq!(a.graph.n(), 3);
            assert_eq!(a.graph.edge_count(), 2);
            assert_eq!(a.graph.max_degree(), 2);
            assert_eq!(b.graph, Graph::empty(1));
        }

        let g = path_with_leaves();
        let (minus_x, minus_closed) = g.delete_closed(0).unwrap();
        // a-b-c with c carrying three pendants
        assert_eq!(
            minus_x.graph,
            Graph::from_edges(6, [(0, 1), (1, 2), (2, 3), (2, 4), (2, 5)]).unwrap()
        );
        assert_eq!(minus_x.map.new_index(0), None);
        assert_eq!(minus_x.map.new_index(3), Some(2));
        // b-c with c-d, c-e, c-f
        assert_eq!(
            minus_closed.graph,
            Graph::from_edges(5, [(0, 1), (1, 2), (1, 3), (1, 4)]).unwrap()
        );
        assert_eq!(minus_closed.map.kept(), &[2, 3, 4, 5, 6]);
        assert!(g.delete_closed(7).is_err());
    }

    #[test]
    fn components_examples() {
        let two = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        let comps = two.components();
        assert_eq!(comps.len(), 2);
        assert!(comps.iter().all(|(c, _)| *c == Graph::complete_bipartite(1, 1)));
        assert_eq!(comps[1].1, vec![2, 3]);
        assert!(Graph::empty(0).components().is_empty());
        assert_eq!(Graph::complete_bipartite(2, 3).components().len(), 1);
    }

    #[test]
    fn bipartition_examples() {
        let c4 = Graph::cycle(4);
        let bip = c4.bipartition().unwrap();
        assert_eq!(bip.parts(), (vec![0, 2], vec![1, 3]));
        let odd = Graph::cycle(3).bipartition().unwrap_err();
        assert_eq!(odd.cycle.len(), 3);
        assert!(Graph::empty(0).bipartition().is_ok());
    }

    #[test]
    fn odd_cycle_witness_is_closed_walk() {
        let g = Graph::from_edges(7, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 0)]).unwrap();
        let w = g.bipartition().unwrap_err().cycle;
        assert_eq!(w.len() % 2, 1);
        for i in 0..w.len() {
            assert!(g.has_edge(w[i], w[(i + 1) % w.len()]));
        }
    }

    #[test]
    fn tensor_examples() {
        let k2 = Graph::complete_bipartite(1, 1);
        let t = k2.tensor_k2();
        assert_eq!(t.n(), 4);
        assert_eq!(t.edge_count(), 2);
        assert_eq!(t.components().len(), 2);

        let c6 = Graph::cycle(3).tensor_k2();
        assert_eq!(c6.n(), 6);
        assert!((0..6).all(|v| c6.degree(v) == 2));
        assert_eq!(c6.components().len(), 1);

        let single = Graph::empty(1).tensor_k2();
        assert_eq!(single, Graph::empty(2));
        assert_eq!(single.iso_count(), 2);
    }

    #[test]
    fn component_shape_examples() {
        let k23 = Graph::complete_bipartite(2, 3);
        for x in 0..5 {
            assert!(k23.is_complete_bipartite_component(x).unwrap());
        }
        let p4 = Graph::path(4);
        assert!((0..4).all(|x| !p4.is_complete_bipartite_component(x).unwrap()));
        assert_eq!(Graph::empty(1).component_shape(0).unwrap(), ComponentShape::Isolated);
        let tri = Graph::cycle(3);
        assert_eq!(tri.component_shape(0).unwrap(), ComponentShape::Other);
    }
}
