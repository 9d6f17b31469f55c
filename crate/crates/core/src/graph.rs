//! Finite simple undirected graphs over dense vertex ids.
//!
//! A [`Graph`] is immutable once built. Vertex ids are `0..order`; names, if any,
//! live in a separate table (see [`crate::mycielski`]).

use std::collections::BTreeSet;
use std::fmt;
use std::io::{BufRead, Write};

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct VertexId(usize);

impl VertexId {
    pub const fn new(index: usize) -> Self {
        VertexId(index)
    }

    pub const fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// An ordered set of vertex ids.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct VertexSet(BTreeSet<VertexId>);

impl VertexSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.0.contains(&v)
    }

    pub fn insert(&mut self, v: VertexId) -> bool {
        self.0.insert(v)
    }

    pub fn remove(&mut self, v: VertexId) -> bool {
        self.0.remove(&v)
    }

    pub fn iter(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.0.iter().copied()
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.0.is_disjoint(&other.0)
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        VertexSet(self.0.union(&other.0).copied().collect())
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        VertexSet(self.0.intersection(&other.0).copied().collect())
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        VertexSet(self.0.difference(&other.0).copied().collect())
    }
}

impl FromIterator<VertexId> for VertexSet {
    fn from_iter<I: IntoIterator<Item = VertexId>>(iter: I) -> Self {
        VertexSet(iter.into_iter().collect())
    }
}

impl Extend<VertexId> for VertexSet {
    fn extend<I: IntoIterator<Item = VertexId>>(&mut self, iter: I) {
        self.0.extend(iter)
    }
}

impl<'a> IntoIterator for &'a VertexSet {
    type Item = VertexId;
    type IntoIter = std::iter::Copied<std::collections::btree_set::Iter<'a, VertexId>>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter().copied()
    }
}

/// Finite simple undirected graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<VertexId>>,
    rows: Vec<FixedBitSet>,
    edge_count: usize,
}

impl Graph {
    /// Builds a graph on `0..order`, rejecting loops, duplicates and unknown endpoints.
    pub fn from_edges<I>(order: usize, edges: I) -> Result<Graph>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut rows = vec![FixedBitSet::with_capacity(order); order];
        let mut edge_count = 0;
        for (u, v) in edges {
            if u >= order {
                return Err(Error::UnknownVertex(u));
            }
            if v >= order {
                return Err(Error::UnknownVertex(v));
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            if rows[u].contains(v) {
                return Err(Error::DuplicateEdge(u.min(v), u.max(v)));
            }
            rows[u].insert(v);
            rows[v].insert(u);
            edge_count += 1;
        }
        let adj = rows
            .iter()
            .map(|r| r.ones().map(VertexId).collect())
            .collect();
        Ok(Graph {
            adj,
            rows,
            edge_count,
        })
    }

    pub fn edgeless(order: usize) -> Graph {
        Graph::from_edges(order, std::iter::empty()).expect("no edges to reject")
    }

    pub fn order(&self) -> usize {
        self.adj.len()
    }

    pub fn size(&self) -> usize {
        self.edge_count
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> {
        (0..self.order()).map(VertexId)
    }

    pub fn vertex_set(&self) -> VertexSet {
        self.vertices().collect()
    }

    pub fn contains(&self, v: VertexId) -> bool {
        v.0 < self.order()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.adj.iter().enumerate().flat_map(|(u, ns)| {
            ns.iter()
                .filter(move |w| w.0 > u)
                .map(move |&w| (VertexId(u), w))
        })
    }

    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.adj[v.0]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adj[v.0].len()
    }

    pub fn adjacent(&self, u: VertexId, v: VertexId) -> bool {
        self.rows[u.0].contains(v.0)
    }

    pub(crate) fn row(&self, v: usize) -> &FixedBitSet {
        &self.rows[v]
    }

    pub fn complement(&self) -> Graph {
        let n = self.order();
        let edges = (0..n).flat_map(|u| {
            (u + 1..n)
                .filter(move |&v| !self.rows[u].contains(v))
                .map(move |v| (u, v))
        });
        Graph::from_edges(n, edges).expect("complement of a simple graph is simple")
    }

    fn check_member(&self, v: VertexId) -> Result<()> {
        if self.contains(v) {
            Ok(())
        } else {
            Err(Error::UnknownVertex(v.0))
        }
    }

    fn check_set(&self, s: &VertexSet) -> Result<()> {
        s.iter().try_for_each(|v| self.check_member(v))
    }
}

pub fn complete_graph(n: usize) -> Result<Graph> {
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
}

/// Cycle `0-1-..-(n-1)-0`, `n >= 3`.
pub fn cycle_graph(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::OutOfRange {
            what: "cycle length",
            value: n as i64,
            min: 3,
            max: i64::MAX,
        });
    }
    Graph::from_edges(n, (0..n).map(|u| (u, (u + 1) % n)))
}

/// Union of the neighborhoods of the members of `s`. May intersect `s`.
pub fn neighborhood(g: &Graph, s: &VertexSet) -> Result<VertexSet> {
    g.check_set(s)?;
    Ok(s.iter()
        .flat_map(|v| g.neighbors(v).iter().copied())
        .collect())
}

pub fn is_independent(g: &Graph, s: &VertexSet) -> Result<bool> {
    g.check_set(s)?;
    Ok(s.iter()
        .all(|v| g.neighbors(v).iter().all(|w| !s.contains(*w))))
}

/// Exact independence number, by branch and bound on the max-degree vertex.
pub fn independence_number(g: &Graph) -> Result<usize> {
    Ok(maximum_independent_set(g)?.len())
}

/// A maximum independent set, lexicographically first among those the search reaches.
pub fn maximum_independent_set(g: &Graph) -> Result<VertexSet> {
    if g.order() == 0 {
        return Err(Error::EmptyGraph);
    }
    let mut cand = FixedBitSet::with_capacity(g.order());
    cand.insert_range(..);
    let mut best = Vec::new();
    let mut current = Vec::new();
    mis_branch(g, cand, &mut current, &mut best);
    Ok(best.into_iter().map(VertexId).collect())
}

fn mis_branch(g: &Graph, mut cand: FixedBitSet, current: &mut Vec<usize>, best: &mut Vec<usize>) {
    let remaining = cand.count_ones(..);
    if current.len() + remaining <= best.len() {
        return;
    }
    let mut pick = None;
    let mut pick_deg = 0;
    for v in cand.ones() {
        let deg = g.row(v).intersection(&cand).count();
        if pick.is_none() || deg > pick_deg {
            pick = Some(v);
            pick_deg = deg;
        }
    }
    let Some(v) = pick else {
        if current.len() > best.len() {
            *best = current.clone();
        }
        return;
    };
    if pick_deg == 0 {
        let mut all = current.clone();
        all.extend(cand.ones());
        if all.len() > best.len() {
            *best = all;
        }
        return;
    }
    let mut with_v = cand.clone();
    with_v.difference_with(g.row(v));
    with_v.set(v, false);
    current.push(v);
    mis_branch(g, with_v, current, best);
    current.pop();
    cand.set(v, false);
    mis_branch(g, cand, current, best);
}

pub fn maximum_clique(g: &Graph) -> Result<VertexSet> {
    maximum_independent_set(&g.complement())
}

/// Exact chromatic number by DSATUR-ordered backtracking with increasing palette size.
///
/// Kept independent of the circular search so it can serve as a cross-check.
pub fn chromatic_number(g: &Graph) -> usize {
    let n = g.order();
    if n == 0 {
        return 0;
    }
    let lower = maximum_clique(g).map(|c| c.len()).unwrap_or(1);
    (lower..=n)
        .find(|&k| proper_coloring(g, k).is_some())
        .expect("n colors always suffice")
}

/// A proper coloring with at most `k` colors, if one exists.
pub fn proper_coloring(g: &Graph, k: usize) -> Option<Vec<usize>> {
    let n = g.order();
    let mut colors = vec![usize::MAX; n];
    // blocked[v][c] counts colored neighbors of v that use c
    let mut blocked = vec![vec![0u32; k]; n];
    if dsatur(g, k, 0, &mut colors, &mut blocked, 0) {
        Some(colors)
    } else {
        None
    }
}

fn dsatur(
    g: &Graph,
    k: usize,
    colored: usize,
    colors: &mut [usize],
    blocked: &mut [Vec<u32>],
    used: usize,
) -> bool {
    let n = g.order();
    if colored == n {
        return true;
    }
    let mut pick = usize::MAX;
    let mut key = (0usize, 0usize);
    for v in 0..n {
        if colors[v] != usize::MAX {
            continue;
        }
        let sat = blocked[v].iter().filter(|&&c| c > 0).count();
        let deg = g.degree(VertexId(v));
        if pick == usize::MAX || (sat, deg) > key {
            pick = v;
            key = (sat, deg);
        }
    }
    let v = pick;
    // a fresh color is interchangeable with any other unused one
    let limit = (used + 1).min(k);
    for c in 0..limit {
        if blocked[v][c] > 0 {
            continue;
        }
        colors[v] = c;
        for w in g.neighbors(VertexId(v)) {
            blocked[w.0][c] += 1;
        }
        if dsatur(g, k, colored + 1, colors, blocked, used.max(c + 1)) {
            return true;
        }
        for w in g.neighbors(VertexId(v)) {
            blocked[w.0][c] -= 1;
        }
        colors[v] = usize::MAX;
    }
    false
}

/// Reads the `p <n> <m>` / `e <u> <v>` edge-list format (1-based ids).
///
/// Lines starting with `c` are comments. `p edge <n> <m>` is accepted as well.
pub fn read_edge_list<R: BufRead>(reader: R) -> Result<Graph> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        let lineno = idx + 1;
        let parse_err = |msg: &str| Error::Parse {
            line: lineno,
            msg: msg.to_string(),
        };
        let mut fields = line.split_whitespace();
        match fields.next() {
            None | Some("c") => continue,
            Some("p") => {
                if header.is_some() {
                    return Err(parse_err("repeated header"));
                }
                let mut rest: Vec<&str> = fields.collect();
                if rest.first() == Some(&"edge") {
                    rest.remove(0);
                }
                if rest.len() != 2 {
                    return Err(parse_err("expected `p <num_vertices> <num_edges>`"));
                }
                let n = rest[0].parse().map_err(|_| parse_err("bad vertex count"))?;
                let m = rest[1].parse().map_err(|_| parse_err("bad edge count"))?;
                header = Some((n, m));
            }
            Some("e") => {
                let (n, _) = header.ok_or_else(|| parse_err("edge before header"))?;
                let ends: Vec<usize> = fields
                    .map(|f| f.parse::<usize>())
                    .collect::<std::result::Result<_, _>>()
                    .map_err(|_| parse_err("bad vertex id"))?;
                if ends.len() != 2 {
                    return Err(parse_err("expected `e <u> <v>`"));
                }
                for &x in &ends {
                    if x == 0 || x > n {
                        return Err(parse_err(&format!("vertex {x} outside 1..={n}")));
                    }
                }
                edges.push((ends[0] - 1, ends[1] - 1));
            }
            Some(other) => return Err(parse_err(&format!("unknown line type `{other}`"))),
        }
    }
    let (n, m) = header.ok_or(Error::Parse {
        line: 0,
        msg: "missing `p` header".into(),
    })?;
    if edges.len() != m {
        return Err(Error::Parse {
            line: 0,
            msg: format!("header declares {m} edges, found {}", edges.len()),
        });
    }
    Graph::from_edges(n, edges)
}

pub fn write_edge_list<W: Write>(g: &Graph, mut out: W) -> Result<()> {
    writeln!(out, "p {} {}", g.order(), g.size())?;
    for (u, v) in g.edges() {
        writeln!(out, "e {} {}", u.0 + 1, v.0 + 1)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(ids: &[usize]) -> VertexSet {
        ids.iter().map(|&i| VertexId::new(i)).collect()
    }

    fn brute_alpha(g: &Graph) -> usize {
        let n = g.order();
        (0u32..1 << n)
            .filter(|mask| {
                g.edges()
                    .all(|(u, v)| mask & (1 << u.index()) == 0 || mask & (1 << v.index()) == 0)
            })
            .map(|mask| mask.count_ones() as usize)
            .max()
            .unwrap()
    }

    #[test]
    fn complete_graph_sizes() {
        assert_eq!(complete_graph(1).unwrap().size(), 0);
        assert_eq!(complete_graph(3).unwrap().size(), 3);
        assert_eq!(complete_graph(5).unwrap().size(), 10);
        assert!(matches!(complete_graph(0), Err(Error::EmptyGraph)));
    }

    #[test]
    fn rejects_bad_edges() {
        assert!(matches!(
            Graph::from_edges(2, [(0, 0)]),
            Err(Error::SelfLoop(0))
        ));
        assert!(matches!(
            Graph::from_edges(2, [(0, 1), (1, 0)]),
            Err(Error::DuplicateEdge(0, 1))
        ));
        assert!(matches!(
            Graph::from_edges(2, [(0, 2)]),
            Err(Error::UnknownVertex(2))
        ));
    }

    #[test]
    fn neighborhoods() {
        let k3 = complete_graph(3).unwrap();
        assert_eq!(neighborhood(&k3, &set(&[0])).unwrap(), set(&[1, 2]));
        assert!(neighborhood(&k3, &VertexSet::new()).unwrap().is_empty());
        let c5 = cycle_graph(5).unwrap();
        assert_eq!(neighborhood(&c5, &set(&[0])).unwrap(), set(&[1, 4]));
        assert!(matches!(
            neighborhood(&c5, &set(&[5])),
            Err(Error::UnknownVertex(5))
        ));
    }

    #[test]
    fn independence() {
        let k3 = complete_graph(3).unwrap();
        assert!(!is_independent(&k3, &set(&[0, 1])).unwrap());
        assert!(is_independent(&k3, &set(&[2])).unwrap());
        assert!(is_independent(&k3, &VertexSet::new()).unwrap());
        assert_eq!(independence_number(&complete_graph(6).unwrap()).unwrap(), 1);
        assert_eq!(independence_number(&cycle_graph(5).unwrap()).unwrap(), 2);
        assert!(matches!(
            independence_number(&Graph::edgeless(0)),
            Err(Error::EmptyGraph)
        ));
    }

    #[test]
    fn chromatic_numbers() {
        assert_eq!(chromatic_number(&complete_graph(4).unwrap()), 4);
        assert_eq!(chromatic_number(&cycle_graph(5).unwrap()), 3);
        assert_eq!(chromatic_number(&cycle_graph(6).unwrap()), 2);
        assert_eq!(chromatic_number(&Graph::edgeless(3)), 1);
    }

    #[test]
    fn edge_list_round_trip() {
        let c5 = cycle_graph(5).unwrap();
        let mut buf = Vec::new();
        write_edge_list(&c5, &mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert_eq!(text, "p 5 5\ne 1 2\ne 1 5\ne 2 3\ne 3 4\ne 4 5\n");
        assert_eq!(read_edge_list(&buf[..]).unwrap(), c5);
    }

    #[test]
    fn edge_list_errors() {
        assert!(read_edge_list("e 1 2\n".as_bytes()).is_err());
        assert!(read_edge_list("p 2 1\ne 1 3\n".as_bytes()).is_err());
        assert!(read_edge_list("p 2 2\ne 1 2\n".as_bytes()).is_err());
        assert!(read_edge_list("p edge 3 1\nc hi\ne 1 2\n".as_bytes()).is_ok());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn small_graph(max_n: usize) -> impl Strategy<Value = Graph> {
            (1..=max_n).prop_flat_map(|n| {
                let pairs: Vec<(usize, usize)> = (0..n)
                    .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                    .collect();
                let m = pairs.len();
                proptest::collection::vec(any::<bool>(), m).prop_map(move |keep| {
                    let edges = pairs.iter().zip(keep).filter(|(_, k)| *k).map(|(e, _)| *e);
                    Graph::from_edges(n, edges).unwrap()
                })
            })
        }

        proptest! {
            #[test]
            fn neighborhood_is_monotone(g in small_graph(10), a in any::<u16>(), b in any::<u16>()) {
                let n = g.order();
                let s: VertexSet = (0..n).filter(|i| a & (1 << i) != 0).map(VertexId::new).collect();
                let extra: VertexSet = (0..n).filter(|i| b & (1 << i) != 0).map(VertexId::new).collect();
                let t = s.union(&extra);
                let ns = neighborhood(&g, &s).unwrap();
                let nt = neighborhood(&g, &t).unwrap();
                prop_assert!(ns.is_subset(&nt));
            }

            #[test]
            fn independence_matches_pair_scan(g in small_graph(12), mask in any::<u16>()) {
                let n = g.order();
                let ids: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
                let s: VertexSet = ids.iter().map(|&i| VertexId::new(i)).collect();
                let brute = ids.iter().all(|&u| ids.iter().all(|&v| !g.adjacent(VertexId::new(u), VertexId::new(v))));
                prop_assert_eq!(is_independent(&g, &s).unwrap(), brute);
            }

            #[test]
            fn alpha_matches_enumeration(g in small_graph(14)) {
                let best = maximum_independent_set(&g).unwrap();
                prop_assert!(is_independent(&g, &best).unwrap());
                prop_assert_eq!(best.len(), brute_alpha(&g));
            }
        }
    }
}
