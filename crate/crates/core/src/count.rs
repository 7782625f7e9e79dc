//! Exact counting of independent sets.
//!
//! `ind(G) = ind(G - x) + ind(G - x - N(x))` applied per connected component,
//! branching on a maximum-degree vertex, with the components of every
//! subproblem multiplied together.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::One;
use thiserror::Error;

use crate::graph::Graph;

/// Default cap on branching nodes.
pub const DEFAULT_NODE_BUDGET: u64 = 10_000_000;

/// Largest graph accepted by [`count_bruteforce`].
pub const BRUTEFORCE_MAX_VERTICES: usize = 30;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CountError {
    #[error("graph too large: more than {budget} branching nodes needed")]
    BudgetExceeded { budget: u64 },
    #[error("brute force refuses n = {n} (limit {BRUTEFORCE_MAX_VERTICES})")]
    TooManyVertices { n: usize },
}

/// Number of independent sets of `g`, with the default node budget.
pub fn count_independent_sets(g: &Graph) -> Result<BigUint, CountError> {
    count_with_budget(g, DEFAULT_NODE_BUDGET)
}

/// Number of independent sets of `g`; fails rather than approximating when
/// more than `budget` branching nodes would be needed.
pub fn count_with_budget(g: &Graph, budget: u64) -> Result<BigUint, CountError> {
    let mut counter = Counter::new(g, budget);
    let all = Bits::full(g.n());
    counter.count(&all)
}

/// Enumerates all `2^n` subsets. Test oracle only.
pub fn count_bruteforce(g: &Graph) -> Result<BigUint, CountError> {
    let n = g.n();
    if n > BRUTEFORCE_MAX_VERTICES {
        return Err(CountError::TooManyVertices { n });
    }
    let masks: Vec<u32> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0u32, |m, &w| m | (1 << w)))
        .collect();
    let mut total: u64 = 0;
    for set in 0u64..(1u64 << n) {
        let s = set as u32;
        let independent = (0..n).all(|v| s & (1 << v) == 0 || masks[v] & s == 0);
        if independent {
            total += 1;
        }
    }
    Ok(BigUint::from(total))
}

#[derive(Clone, PartialEq, Eq, Hash)]
struct Bits(Vec<u64>);

impl Bits {
    fn empty(n: usize) -> Self {
        Bits(vec![0; n.div_ceil(64)])
    }

    fn full(n: usize) -> Self {
        let mut b = Bits::empty(n);
        for v in 0..n {
            b.insert(v);
        }
        b
    }

    fn insert(&mut self, v: usize) {
        self.0[v / 64] |= 1 << (v % 64);
    }

    fn remove(&mut self, v: usize) {
        self.0[v / 64] &= !(1 << (v % 64));
    }

    fn contains(&self, v: usize) -> bool {
        self.0[v / 64] >> (v % 64) & 1 == 1
    }

    fn len(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn first(&self) -> Option<usize> {
        self.0
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, &w)| i * 64 + w.trailing_zeros() as usize)
    }

    fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let t = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(i * 64 + t)
                }
            })
        })
    }
}

struct Counter<'g> {
    g: &'g Graph,
    budget: u64,
    nodes: u64,
    memo: HashMap<Bits, BigUint>,
}

impl<'g> Counter<'g> {
    fn new(g: &'g Graph, budget: u64) -> Self {
        Counter {
            g,
            budget,
            nodes: 0,
            memo: HashMap::new(),
        }
    }

    fn degree_in(&self, v: usize, set: &Bits) -> usize {
        self.g.neighbors(v).iter().filter(|&&w| set.contains(w)).count()
    }

    fn split(&self, set: &Bits) -> Vec<Bits> {
        let mut rest = set.clone();
        let mut comps = Vec::new();
        while let Some(start) = rest.first() {
            let mut comp = Bits::empty(self.g.n());
            let mut stack = vec![start];
            rest.remove(start);
            comp.insert(start);
            while let Some(u) = stack.pop() {
                for &w in self.g.neighbors(u) {
                    if rest.contains(w) {
                        rest.remove(w);
                        comp.insert(w);
                        stack.push(w);
                    }
                }
            }
            comps.push(comp);
        }
        comps
    }

    fn count(&mut self, set: &Bits) -> Result<BigUint, CountError> {
        let mut product = BigUint::one();
        for comp in self.split(set) {
            product *= self.count_connected(comp)?;
        }
        Ok(product)
    }

    fn count_connected(&mut self, comp: Bits) -> Result<BigUint, CountError> {
        match comp.len() {
            0 => return Ok(BigUint::one()),
            1 => return Ok(BigUint::from(2u32)),
            2 => return Ok(BigUint::from(3u32)),
            _ => {}
        }
        if let Some(hit) = self.memo.get(&comp) {
            return Ok(hit.clone());
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(CountError::BudgetExceeded { budget: self.budget });
        }
        // highest degree inside the component, lowest index on ties
        let mut pivot = usize::MAX;
        let mut best = 0;
        for v in comp.iter() {
            let d = self.degree_in(v, &comp);
            if pivot == usize::MAX || d > best {
                pivot = v;
                best = d;
            }
        }
        let mut without = comp.clone();
        without.remove(pivot);
        let mut closed = without.clone();
        for &w in self.g.neighbors(pivot) {
            if closed.contains(w) {
                closed.remove(w);
            }
        }
        let value = self.count(&without)? + self.count(&closed)?;
        self.memo.insert(comp, value.clone());
        Ok(value)
    }
}

/// Checks `count(G) = count(G - x) + count(G - x - N(x))` for one vertex.
pub fn recursion_identity_holds(g: &Graph, x: usize) -> Result<bool, CountError> {
    let (minus_x, minus_closed) = g.delete_closed(x).expect("vertex in range");
    let lhs = count_independent_sets(g)?;
    let rhs = count_independent_sets(&minus_x.graph)? + count_independent_sets(&minus_closed.graph)?;
    Ok(lhs == rhs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    #[test]
    fn complete_bipartite_values() {
        for d in 1..=5u32 {
            let g = Graph::complete_bipartite(d as usize, d as usize);
            assert_eq!(count_independent_sets(&g).unwrap(), big((1 << (d + 1)) - 1));
        }
    }

    #[test]
    fn small_values() {
        assert_eq!(count_independent_sets(&Graph::empty(0)).unwrap(), big(1));
        assert_eq!(count_independent_sets(&Graph::path(4)).unwrap(), big(8));
        assert_eq!(count_bruteforce(&Graph::complete_bipartite(1, 1)).unwrap(), big(3));
        assert_eq!(count_bruteforce(&Graph::cycle(3)).unwrap(), big(4));
        assert_eq!(count_bruteforce(&Graph::cycle(6)).unwrap(), big(18));
        assert_eq!(count_bruteforce(&Graph::path(4)).unwrap(), big(8));
    }

    #[test]
    fn isolated_vertices_double() {
        assert_eq!(count_independent_sets(&Graph::empty(10)).unwrap(), big(1024));
    }

    #[test]
    fn bruteforce_guard() {
        assert_eq!(
            count_bruteforce(&Graph::empty(31)),
            Err(CountError::TooManyVertices { n: 31 })
        );
    }

    #[test]
    fn budget_is_enforced() {
        let g = Graph::cycle(40);
        assert_eq!(count_with_budget(&g, 3), Err(CountError::BudgetExceeded { budget: 3 }));
        // Lucas number L_40
        assert_eq!(
            count_independent_sets(&g).unwrap(),
            "228826127".parse::<BigUint>().unwrap()
        );
    }
}
