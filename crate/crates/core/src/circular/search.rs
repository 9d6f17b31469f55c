//! Backtracking homomorphism search into the circulant target on `Z_k`.
//!
//! Domains are `u64` color masks, so `k <= 64`. Vertices are chosen by smallest
//! domain, ties broken by the number of unassigned neighbors. Every assignment
//! forward-checks its neighbors and any co-class constraints touching the vertex.

use crate::error::{Error, Result};
use crate::graph::Graph;

pub(crate) const MAX_COLORS: u32 = 64;

/// If `source` takes `color`, then `target` must take `color` too.
#[derive(Clone, Copy, Debug)]
pub(crate) struct CoClass {
    pub source: usize,
    pub target: usize,
    pub color: u32,
}

pub(crate) struct Problem<'a> {
    graph: &'a Graph,
    k: u32,
    compatible: Vec<u64>,
    domains: Vec<u64>,
    co_class: Vec<Vec<CoClass>>,
}

#[derive(Debug)]
pub(crate) struct Outcome {
    pub colors: Option<Vec<u32>>,
    pub nodes: u64,
}

pub(crate) fn full_mask(k: u32) -> u64 {
    if k == 64 {
        u64::MAX
    } else {
        (1u64 << k) - 1
    }
}

impl<'a> Problem<'a> {
    pub fn new(graph: &'a Graph, k: u32, d: u32) -> Result<Self> {
        if d == 0 || k < 2 * d {
            return Err(Error::InvalidRatio { k, d });
        }
        if k > MAX_COLORS {
            return Err(Error::GuardExceeded {
                what: "number of colors",
                limit: MAX_COLORS as usize,
                actual: k as usize,
            });
        }
        let compatible = (0..k)
            .map(|c| {
                (0..k)
                    .filter(|&e| {
                        let diff = c.abs_diff(e);
                        diff >= d && diff <= k - d
                    })
                    .fold(0u64, |m, e| m | 1 << e)
            })
            .collect();
        Ok(Problem {
            graph,
            k,
            compatible,
            domains: vec![full_mask(k); graph.order()],
            co_class: vec![Vec::new(); graph.order()],
        })
    }

    pub fn restrict(&mut self, v: usize, mask: u64) {
        self.domains[v] &= mask;
    }

    pub fn add_co_class(&mut self, c: CoClass) {
        self.co_class[c.source].push(c);
        if c.target != c.source {
            self.co_class[c.target].push(c);
        }
    }

    pub fn solve(self) -> Outcome {
        let n = self.graph.order();
        let mut state = State {
            problem: &self,
            domains: self.domains.clone(),
            assigned: vec![false; n],
            trail: Vec::new(),
            nodes: 0,
        };
        // constraints whose source is already pinned to its trigger color
        let mut ok = state.domains.iter().all(|&m| m != 0);
        for v in 0..n {
            if ok && state.domains[v].count_ones() == 1 {
                let c = state.domains[v].trailing_zeros();
                for cc in &self.co_class[v] {
                    if cc.source == v && cc.color == c {
                        ok &= state.narrow(cc.target, 1 << c);
                    }
                }
            }
        }
        let found = ok && state.search(n);
        let colors = found.then(|| {
            state
                .domains
                .iter()
                .map(|m| {
                    debug_assert_eq!(m.count_ones(), 1);
                    m.trailing_zeros()
                })
                .collect()
        });
        Outcome {
            colors,
            nodes: state.nodes,
        }
    }
}

struct State<'p, 'a> {
    problem: &'p Problem<'a>,
    domains: Vec<u64>,
    assigned: Vec<bool>,
    trail: Vec<(usize, u64)>,
    nodes: u64,
}

impl State<'_, '_> {
    fn narrow(&mut self, v: usize, mask: u64) -> bool {
        let old = self.domains[v];
        let new = old & mask;
        if new != old {
            self.trail.push((v, old));
            self.domains[v] = new;
        }
        new != 0
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let (v, old) = self.trail.pop().expect("trail above mark");
            self.domains[v] = old;
        }
    }

    fn pick(&self) -> usize {
        let g = self.problem.graph;
        let mut best = usize::MAX;
        let mut best_key = (u32::MAX, 0usize);
        for v in 0..self.domains.len() {
            if self.assigned[v] {
                continue;
            }
            let size = self.domains[v].count_ones();
            if size > best_key.0 {
                continue;
            }
            let free = g
                .neighbors(crate::graph::VertexId::new(v))
                .iter()
                .filter(|w| !self.assigned[w.index()])
                .count();
            if size < best_key.0 || free > best_key.1 {
                best = v;
                best_key = (size, free);
            }
        }
        best
    }

    fn assign(&mut self, v: usize, c: u32) -> bool {
        if !self.narrow(v, 1 << c) {
            return false;
        }
        let compat = self.problem.compatible[c as usize];
        for w in self.problem.graph.neighbors(crate::graph::VertexId::new(v)) {
            if !self.narrow(w.index(), compat) {
                return false;
            }
        }
        for i in 0..self.problem.co_class[v].len() {
            let cc = self.problem.co_class[v][i];
            let ok = if cc.source == v {
                cc.color != c || self.narrow(cc.target, 1 << c)
            } else {
                c == cc.color || self.narrow(cc.source, !(1u64 << cc.color))
            };
            if !ok {
                return false;
            }
        }
        true
    }

    fn search(&mut self, remaining: usize) -> bool {
        self.nodes += 1;
        if remaining == 0 {
            return true;
        }
        let v = self.pick();
        let mut options = self.domains[v];
        self.assigned[v] = true;
        while options != 0 {
            let c = options.trailing_zeros();
            options &= options - 1;
            let mark = self.trail.len();
            if self.assign(v, c) && self.search(remaining - 1) {
                return true;
            }
            self.undo(mark);
        }
        self.assigned[v] = false;
        debug_assert!(self.problem.k > 0);
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete_graph, cycle_graph};

    #[test]
    fn masks() {
        assert_eq!(full_mask(3), 0b111);
        assert_eq!(full_mask(64), u64::MAX);
        let g = complete_graph(2).unwrap();
        let p = Problem::new(&g, 5, 2).unwrap();
        assert_eq!(p.compatible[0], 0b01100);
        assert_eq!(p.compatible[2], 0b10001);
    }

    #[test]
    fn finds_and_refutes() {
        let c5 = cycle_graph(5).unwrap();
        assert!(Problem::new(&c5, 5, 2).unwrap().solve().colors.is_some());
        assert!(Problem::new(&c5, 7, 3).unwrap().solve().colors.is_none());
        assert!(Problem::new(&c5, 4, 2).unwrap().solve().colors.is_none());
        assert!(Problem::new(&c5, 3, 2).is_err());
        assert!(Problem::new(&c5, 65, 1).is_err());
    }

    #[test]
    fn co_class_constraints_hold() {
        // a path 0-1-2 with "0 colored 1 forces 2 colored 1"
        let g = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        let mut p = Problem::new(&g, 3, 1).unwrap();
        p.restrict(0, 1 << 1);
        p.add_co_class(CoClass {
            source: 0,
            target: 2,
            color: 1,
        });
        let colors = p.solve().colors.unwrap();
        assert_eq!(colors[0], 1);
        assert_eq!(colors[2], 1);

        let mut p = Problem::new(&g, 3, 1).unwrap();
        p.restrict(0, 1 << 1);
        p.restrict(2, 1 << 2);
        p.add_co_class(CoClass {
            source: 0,
            target: 2,
            color: 1,
        });
        assert!(p.solve().colors.is_none());
    }
}
