//! Appearances: the subgraph induced by levels 0-3 around a root.
//!
//! A configuration records only how many level-3 edges each level-2 vertex
//! has. The same configuration can therefore appear in several ways,
//! depending on which level-2 vertices share level-3 neighbours.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::canon::{canonical_form, CanonicalForm, LeveledGraph};
use super::config::LocalConfig;
use super::enumerate::for_each_cover;

/// One appearance with the configuration it comes from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Appearance {
    pub canonical: CanonicalForm,
    pub config: CanonicalForm,
    pub config_description: String,
    /// Number of the matching reference drawing, when there is one.
    pub reference: Option<usize>,
    pub graph: LeveledGraph,
}

/// Every appearance of `cfg`, deduplicated and sorted by canonical form.
/// Level-3 vertices adjacent to more than `delta_eff` level-2 vertices are
/// not realizable and are skipped.
pub fn appearances(cfg: &LocalConfig) -> Vec<(CanonicalForm, LeveledGraph)> {
    let d0 = cfg.root_degree();
    let k = cfg.l2.len();
    assert!(k <= 16, "too many level-2 vertices to expand");
    let demand: Vec<u8> = cfg.l2.iter().map(|v| v.down()).collect();
    let masks: Vec<u32> = (1u32..(1 << k))
        .filter(|m| m.count_ones() <= u32::from(cfg.delta_eff.max(1)))
        .collect();
    let mut found = BTreeMap::new();
    for_each_cover(&masks, &demand, &mut |counts| {
        let mut level = vec![0u8];
        level.extend(std::iter::repeat_n(1, d0));
        level.extend(std::iter::repeat_n(2, k));
        let mut edges = Vec::new();
        for u in 0..d0 {
            edges.push((0, 1 + u));
        }
        for (i, v) in cfg.l2.iter().enumerate() {
            for u in 0..d0 {
                if v.neighbors >> u & 1 == 1 {
                    edges.push((1 + u, 1 + d0 + i));
                }
            }
        }
        #[allow(clippy::same_item_push)]
        for (&m, &c) in masks.iter().zip(counts) {
            for _ in 0..c {
                let w = level.len();
                level.push(3);
                for i in 0..k {
                    if m >> i & 1 == 1 {
                        edges.push((1 + d0 + i, w));
                    }
                }
            }
        }
        let g = LeveledGraph::from_edges(level, &edges);
        found.entry(g.canonical_form()).or_insert(g);
    });
    found.into_iter().collect()
}

/// Appearances of each configuration in `cfgs`, matched against the
/// reference drawings through `number`.
pub fn collect_appearances(cfgs: &[LocalConfig], number: impl Fn(&CanonicalForm) -> Option<usize>) -> Vec<Appearance> {
    let mut out: Vec<Appearance> = Vec::new();
    for cfg in cfgs {
        for (form, graph) in appearances(cfg) {
            if out.iter().any(|a| a.canonical == form) {
                continue;
            }
            out.push(Appearance {
                reference: number(&form),
                canonical: form,
                config: canonical_form(cfg),
                config_description: cfg.describe(),
                graph,
            });
        }
    }
    out.sort_by(|a, b| {
        (a.reference.unwrap_or(usize::MAX), &a.canonical).cmp(&(b.reference.unwrap_or(usize::MAX), &b.canonical))
    });
    out
}

/// Graphviz drawing with the root on top and one rank per level.
pub fn to_dot(g: &LeveledGraph, name: &str) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "graph \"{name}\" {{");
    let _ = writeln!(s, "  rankdir=TB;");
    let _ = writeln!(s, "  node [shape=circle, label=\"\", width=0.25];");
    let top = g.level.iter().copied().max().unwrap_or(0);
    for lvl in 0..=top {
        let members: Vec<String> = (0..g.n())
            .filter(|&v| g.level[v] == lvl)
            .map(|v| format!("v{v}"))
            .collect();
        if members.is_empty() {
            continue;
        }
        let _ = writeln!(s, "  {{ rank=same; {}; }}", members.join("; "));
    }
    let _ = writeln!(s, "  v0 [label=\"x\", shape=doublecircle];");
    for (u, v) in g.edges() {
        let _ = writeln!(s, "  v{u} -- v{v};");
    }
    s.push_str("}\n");
    s
}
