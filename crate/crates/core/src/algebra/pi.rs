//! The product `Pi(G) = 2^iso(G) * prod_{uv in E} f(d(u), d(v))`.

use thiserror::Error;

use super::product::{Factor, FactorProduct};
use crate::graph::Graph;

/// Degree guard matching the verified regime.
pub const DEFAULT_MAX_DEGREE: usize = 5;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("maximum degree {found} exceeds the configured bound {bound}")]
pub struct DegreeBoundError {
    pub found: usize,
    pub bound: usize,
}

/// `Pi(G)` for graphs of maximum degree at most 5.
pub fn pi_product(g: &Graph) -> Result<FactorProduct, DegreeBoundError> {
    pi_product_bounded(g, DEFAULT_MAX_DEGREE)
}

pub fn pi_product_bounded(g: &Graph, max_degree: usize) -> Result<FactorProduct, DegreeBoundError> {
    let found = g.max_degree();
    if found > max_degree {
        return Err(DegreeBoundError {
            found,
            bound: max_degree,
        });
    }
    let mut p = FactorProduct::pow2(g.iso_count() as u64);
    for (u, v) in g.edges() {
        p.push_factor(Factor::new(g.degree(u) as u32, g.degree(v) as u32), 1);
    }
    Ok(p)
}
