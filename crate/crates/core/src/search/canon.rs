//! Exact canonical forms for rooted configurations and small leveled graphs.
//!
//! Both forms are the lexicographically least encoding over every relabeling
//! compatible with an isomorphism-invariant ordered partition, so equal forms
//! mean isomorphic objects and vice versa.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::config::{Level2Vertex, LocalConfig};

/// Relabeling-invariant encoding.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm(pub Vec<u8>);

impl CanonicalForm {
    pub fn to_hex(&self) -> String {
        self.0.iter().map(|b| format!("{b:02x}")).collect()
    }

    pub fn from_hex(s: &str) -> Option<Self> {
        if !s.len().is_multiple_of(2) {
            return None;
        }
        (0..s.len())
            .step_by(2)
            .map(|i| u8::from_str_radix(&s[i..i + 2], 16).ok())
            .collect::<Option<Vec<u8>>>()
            .map(CanonicalForm)
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

impl Serialize for CanonicalForm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_hex())
    }
}

impl<'de> Deserialize<'de> for CanonicalForm {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        CanonicalForm::from_hex(&s).ok_or_else(|| serde::de::Error::custom("bad canonical form"))
    }
}

/// Calls `visit` with every permutation of `items` (Heap's algorithm).
fn for_each_permutation(items: &mut [usize], visit: &mut dyn FnMut(&[usize])) {
    fn heap(k: usize, items: &mut [usize], visit: &mut dyn FnMut(&[usize])) {
        if k <= 1 {
            visit(items);
            return;
        }
        heap(k - 1, items, visit);
        for i in 0..k - 1 {
            if k.is_multiple_of(2) {
                items.swap(i, k - 1);
            } else {
                items.swap(0, k - 1);
            }
            heap(k - 1, items, visit);
        }
    }
    let k = items.len();
    heap(k, items, visit);
}

/// Calls `visit` with each labeling that permutes vertices only inside
/// their cell; `cells` are consecutive runs of the output order.
fn for_each_cell_labeling(cells: &[Vec<usize>], visit: &mut dyn FnMut(&[usize])) {
    fn rec(cells: &[Vec<usize>], idx: usize, order: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize])) {
        if idx == cells.len() {
            visit(order);
            return;
        }
        let mut cell = cells[idx].clone();
        for_each_permutation(&mut cell, &mut |perm| {
            let base = order.len();
            order.extend_from_slice(perm);
            rec(cells, idx + 1, order, visit);
            order.truncate(base);
        });
    }
    let mut order = Vec::new();
    rec(cells, 0, &mut order, visit);
}

fn remap_mask(mask: u8, new_index_of_old: &[usize]) -> u8 {
    let mut out = 0u8;
    for (old, &new) in new_index_of_old.iter().enumerate() {
        if mask >> old & 1 == 1 {
            out |= 1 << new;
        }
    }
    out
}

/// Level-2 list under a level-1 relabeling `order` (new position -> old index).
fn relabeled_l2(cfg: &LocalConfig, order: &[usize]) -> Vec<Level2Vertex> {
    let mut new_of_old = vec![0; order.len()];
    for (new, &old) in order.iter().enumerate() {
        new_of_old[old] = new;
    }
    let mut l2: Vec<Level2Vertex> = cfg
        .l2
        .iter()
        .map(|v| Level2Vertex::new(remap_mask(v.neighbors, &new_of_old), v.degree))
        .collect();
    l2.sort_unstable();
    l2
}

/// Level-1 vertices grouped into runs of equal degree, highest first.
fn degree_cells(cfg: &LocalConfig) -> Vec<Vec<usize>> {
    let mut idx: Vec<usize> = (0..cfg.root_degree()).collect();
    idx.sort_by_key(|&u| (std::cmp::Reverse(cfg.l1_degrees[u]), u));
    let mut cells: Vec<Vec<usize>> = Vec::new();
    for u in idx {
        match cells.last_mut() {
            Some(cell) if cfg.l1_degrees[cell[0]] == cfg.l1_degrees[u] => cell.push(u),
            _ => cells.push(vec![u]),
        }
    }
    cells
}

/// The canonical relabeling of a configuration: level-1 degrees
/// non-increasing and the least sorted level-2 list.
pub fn canonical_config(cfg: &LocalConfig) -> LocalConfig {
    let cells = degree_cells(cfg);
    let mut best: Option<Vec<Level2Vertex>> = None;
    for_each_cell_labeling(&cells, &mut |order| {
        let l2 = relabeled_l2(cfg, order);
        if best.as_ref().is_none_or(|b| l2 < *b) {
            best = Some(l2);
        }
    });
    let mut degrees = cfg.l1_degrees.clone();
    degrees.sort_unstable_by(|a, b| b.cmp(a));
    LocalConfig {
        delta_eff: cfg.delta_eff,
        l1_degrees: degrees,
        l2: best.unwrap_or_default(),
    }
}

/// `true` when `cfg` (with sorted level-2 list) is already canonical.
/// Stops at the first relabeling that beats it.
pub fn is_canonical(cfg: &LocalConfig) -> bool {
    if cfg.l1_degrees.windows(2).any(|w| w[0] < w[1]) {
        return false;
    }
    let cells = degree_cells(cfg);
    let mut canonical = true;
    for_each_cell_labeling(&cells, &mut |order| {
        if canonical && relabeled_l2(cfg, order) < cfg.l2 {
            canonical = false;
        }
    });
    canonical
}

fn encode_config(cfg: &LocalConfig) -> Vec<u8> {
    let mut out = Vec::with_capacity(3 + cfg.root_degree() + 2 * cfg.l2.len());
    out.push(cfg.delta_eff);
    out.push(cfg.root_degree() as u8);
    out.extend_from_slice(&cfg.l1_degrees);
    out.push(cfg.l2.len() as u8);
    for v in &cfg.l2 {
        out.push(v.neighbors);
        out.push(v.degree);
    }
    out
}

/// Canonical form of a configuration under root-preserving isomorphism.
pub fn canonical_form(cfg: &LocalConfig) -> CanonicalForm {
    CanonicalForm(encode_config(&canonical_config(cfg)))
}

/// Inverse of [`canonical_form`]; `None` on malformed bytes.
pub fn config_from_canonical(form: &CanonicalForm) -> Option<LocalConfig> {
    let bytes = &form.0;
    let delta_eff = *bytes.first()?;
    let d0 = *bytes.get(1)? as usize;
    let l1 = bytes.get(2..2 + d0)?.to_vec();
    let len = *bytes.get(2 + d0)? as usize;
    let rest = bytes.get(3 + d0..)?;
    if rest.len() != 2 * len {
        return None;
    }
    let l2 = rest.chunks(2).map(|c| Level2Vertex::new(c[0], c[1])).collect();
    LocalConfig::new(delta_eff, l1, l2).ok()
}

/// Small rooted graph whose vertices carry a BFS level; vertex 0 is the root.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LeveledGraph {
    pub level: Vec<u8>,
    pub adj: Vec<Vec<usize>>,
}

/// Labelings tried before refusing to canonicalize a leveled graph.
pub const LEVELED_LABELING_LIMIT: u64 = 5_000_000;

impl LeveledGraph {
    pub fn from_edges(level: Vec<u8>, edges: &[(usize, usize)]) -> Self {
        let mut adj = vec![Vec::new(); level.len()];
        for &(u, v) in edges {
            assert!(u != v && !adj[u].contains(&v), "edge list must be simple");
            adj[u].push(v);
            adj[v].push(u);
        }
        for a in &mut adj {
            a.sort_unstable();
        }
        LeveledGraph { level, adj }
    }

    pub fn n(&self) -> usize {
        self.level.len()
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (u, a) in self.adj.iter().enumerate() {
            for &v in a {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Colour refinement seeded with (level, degree); returns cells in an
    /// isomorphism-invariant order.
    fn refined_cells(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut color: Vec<usize> = {
            let keys: Vec<(u8, usize)> = (0..n).map(|v| (self.level[v], self.adj[v].len())).collect();
            rank(&keys)
        };
        loop {
            let keys: Vec<(usize, Vec<usize>)> = (0..n)
                .map(|v| {
                    let mut nb: Vec<usize> = self.adj[v].iter().map(|&w| color[w]).collect();
                    nb.sort_unstable();
                    (color[v], nb)
                })
                .collect();
            let next = rank(&keys);
            let before = color.iter().max().map_or(0, |m| m + 1);
            let after = next.iter().max().map_or(0, |m| m + 1);
            color = next;
            if after == before {
                break;
            }
        }
        let classes = color.iter().max().map_or(0, |m| m + 1);
        let mut cells = vec![Vec::new(); classes];
        for v in 0..n {
            cells[color[v]].push(v);
        }
        cells
    }

    fn encode(&self, order: &[usize]) -> Vec<u8> {
        let n = self.n();
        let mut out = Vec::with_capacity(1 + n + n * n / 8 + 1);
        out.push(n as u8);
        out.extend(order.iter().map(|&v| self.level[v]));
        let mut byte = 0u8;
        let mut bit = 0;
        for i in 0..n {
            for j in i + 1..n {
                if self.adj[order[i]].binary_search(&order[j]).is_ok() {
                    byte |= 1 << bit;
                }
                bit += 1;
                if bit == 8 {
                    out.push(byte);
                    byte = 0;
                    bit = 0;
                }
            }
        }
        if bit > 0 {
            out.push(byte);
        }
        out
    }

    /// Canonical form under level-preserving isomorphism fixing the root.
    pub fn canonical_form(&self) -> CanonicalForm {
        let cells = self.refined_cells();
        let labelings: u64 = cells
            .iter()
            .map(|c| (1..=c.len() as u64).product::<u64>())
            .fold(1u64, |a, b| a.saturating_mul(b));
        assert!(
            labelings <= LEVELED_LABELING_LIMIT,
            "leveled graph too symmetric to canonicalize ({labelings} labelings)"
        );
        let mut best: Option<Vec<u8>> = None;
        for_each_cell_labeling(&cells, &mut |order| {
            let code = self.encode(order);
            if best.as_ref().is_none_or(|b| code < *b) {
                best = Some(code);
            }
        });
        CanonicalForm(best.unwrap_or_default())
    }

    /// Rebuilds a leveled graph from its canonical form.
    pub fn from_canonical(form: &CanonicalForm) -> Option<LeveledGraph> {
        let bytes = &form.0;
        let n = *bytes.first()? as usize;
        let level = bytes.get(1..1 + n)?.to_vec();
        let bits = &bytes[1 + n..];
        if bits.len() != (n * n.saturating_sub(1) / 2).div_ceil(8) {
            return None;
        }
        let mut edges = Vec::new();
        let mut k = 0;
        for i in 0..n {
            for j in i + 1..n {
                if bits[k / 8] >> (k % 8) & 1 == 1 {
                    edges.push((i, j));
                }
                k += 1;
            }
        }
        Some(LeveledGraph::from_edges(level, &edges))
    }

    pub fn to_graph(&self) -> crate::graph::Graph {
        crate::graph::Graph::from_edges(self.n(), self.edges()).expect("leveled graph is simple")
    }
}

fn rank<K: Ord + Clone>(keys: &[K]) -> Vec<usize> {
    let mut sorted: Vec<K> = keys.to_vec();
    sorted.sort();
    sorted.dedup();
    keys.iter()
        .map(|k| sorted.binary_search(k).expect("key present"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn permutation_count() {
        let mut items = vec![0, 1, 2, 3];
        let mut seen = std::collections::HashSet::new();
        for_each_permutation(&mut items, &mut |p| {
            seen.insert(p.to_vec());
        });
        assert_eq!(seen.len(), 24);
    }

    #[test]
    fn swapping_equal_degree_level1_vertices() {
        let a = LocalConfig::new(
            5,
            vec![2, 2],
            vec![Level2Vertex::new(0b01, 3), Level2Vertex::new(0b10, 2)],
        )
        .unwrap();
        let b = LocalConfig::new(
            5,
            vec![2, 2],
            vec![Level2Vertex::new(0b10, 3), Level2Vertex::new(0b01, 2)],
        )
        .unwrap();
        assert_eq!(canonical_form(&a), canonical_form(&b));
        assert_ne!(a, b);
        assert!(is_canonical(&canonical_config(&a)));
    }

    #[test]
    fn level2_degree_distinguishes() {
        let a = LocalConfig::new(5, vec![2], vec![Level2Vertex::new(0b1, 3)]).unwrap();
        let b = LocalConfig::new(5, vec![2], vec![Level2Vertex::new(0b1, 4)]).unwrap();
        assert_ne!(canonical_form(&a), canonical_form(&b));
    }

    #[test]
    fn hex_roundtrip() {
        let f = canonical_form(&LocalConfig::isolated(5));
        assert_eq!(CanonicalForm::from_hex(&f.to_hex()), Some(f));
    }

    #[test]
    fn config_decodes() {
        let a = LocalConfig::new(
            5,
            vec![3, 2],
            vec![Level2Vertex::new(0b11, 4), Level2Vertex::new(0b01, 2)],
        )
        .unwrap();
        let f = canonical_form(&a);
        assert_eq!(config_from_canonical(&f).map(|c| canonical_form(&c)), Some(f.clone()));
        let mut cut = f;
        cut.0.pop();
        assert_eq!(config_from_canonical(&cut), None);
    }

    #[test]
    fn leveled_graph_relabeling() {
        // path root-a-b plus a pendant on a, labelled two ways
        let g1 = LeveledGraph::from_edges(vec![0, 1, 2, 2], &[(0, 1), (1, 2), (1, 3)]);
        let g2 = LeveledGraph::from_edges(vec![0, 2, 1, 2], &[(0, 2), (2, 1), (2, 3)]);
        assert_eq!(g1.canonical_form(), g2.canonical_form());
        let g3 = LeveledGraph::from_edges(vec![0, 1, 2, 3], &[(0, 1), (1, 2), (2, 3)]);
        assert_ne!(g1.canonical_form(), g3.canonical_form());
        let back = LeveledGraph::from_canonical(&g2.canonical_form()).unwrap();
        assert_eq!(back.canonical_form(), g1.canonical_form());
    }
}
