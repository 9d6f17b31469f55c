//! `(k,d)`-colorings, `(k,d)`-partitions and the exact circular chromatic number.
//!
//! A `(k,d)`-coloring maps vertices into `Z_k` so that adjacent vertices get colors
//! at circular distance at least `d`. Equivalently it is a homomorphism into the
//! circulant graph on `Z_k` with difference set `[d, k-d]`, which is how the
//! search works.

mod normal_form;
mod search;
mod solver;

pub use normal_form::{check_normal_form, find_normal_form, NormalForm, NormalFormReport};
pub use solver::{
    candidate_ratios, circular_chromatic_number, circular_chromatic_number_with, CertificateJson,
    ChiCCertificate, RatioJson, Rejection, SolverOptions,
};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{is_independent, neighborhood, Graph, VertexId, VertexSet};

fn check_ratio(k: u32, d: u32) -> Result<()> {
    if d == 0 || k < 2 * d {
        Err(Error::InvalidRatio { k, d })
    } else {
        Ok(())
    }
}

/// A total map `V(G) -> Z_k` tagged with its `(k,d)` parameters.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KdColoring {
    k: u32,
    d: u32,
    colors: Vec<u32>,
}

impl KdColoring {
    pub fn new(k: u32, d: u32, colors: Vec<u32>) -> Result<Self> {
        check_ratio(k, d)?;
        if let Some(c) = colors.iter().find(|&&c| c >= k) {
            return Err(Error::InvalidColoring(format!("color {c} outside Z_{k}")));
        }
        Ok(KdColoring { k, d, colors })
    }

    /// The all-zero `(1,1)` coloring used for edgeless graphs.
    pub(crate) fn trivial(order: usize) -> Self {
        KdColoring {
            k: 1,
            d: 1,
            colors: vec![0; order],
        }
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn colors(&self) -> &[u32] {
        &self.colors
    }

    pub fn color(&self, v: VertexId) -> u32 {
        self.colors[v.index()]
    }

    /// Rotates every color by `shift` (mod k). Rotations preserve validity.
    pub fn rotated(&self, shift: u32) -> KdColoring {
        KdColoring {
            k: self.k,
            d: self.d,
            colors: self.colors.iter().map(|c| (c + shift) % self.k).collect(),
        }
    }
}

fn circular_ok(k: u32, d: u32, a: u32, b: u32) -> bool {
    let diff = a.abs_diff(b);
    diff >= d && diff <= k - d
}

/// Circulant graph on `Z_k`: `i ~ j` iff `d <= |i-j| <= k-d`.
pub fn circulant_target(k: u32, d: u32) -> Result<Graph> {
    check_ratio(k, d)?;
    let edges = (0..k).flat_map(|i| {
        (i + 1..k)
            .filter(move |&j| circular_ok(k, d, i, j))
            .map(move |j| (i as usize, j as usize))
    });
    Graph::from_edges(k as usize, edges)
}

fn check_total(g: &Graph, c: &KdColoring) -> Result<()> {
    if c.colors.len() != g.order() {
        return Err(Error::InvalidColoring(format!(
            "assignment covers {} of {} vertices",
            c.colors.len(),
            g.order()
        )));
    }
    Ok(())
}

/// Edges violating the circular distance constraint.
pub fn coloring_violations(g: &Graph, c: &KdColoring) -> Result<Vec<(VertexId, VertexId)>> {
    check_total(g, c)?;
    Ok(g.edges()
        .filter(|&(u, v)| !circular_ok(c.k, c.d, c.color(u), c.color(v)))
        .collect())
}

pub fn verify_coloring(g: &Graph, c: &KdColoring) -> Result<bool> {
    Ok(coloring_violations(g, c)?.is_empty())
}

/// Partition `(X_0, ..., X_{k-1})` of `V(G)` where every `d` cyclically
/// consecutive classes form an independent set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KdPartition {
    k: u32,
    d: u32,
    classes: Vec<VertexSet>,
    class_of: Vec<u32>,
}

impl KdPartition {
    pub fn new(g: &Graph, k: u32, d: u32, classes: Vec<VertexSet>) -> Result<Self> {
        check_ratio(k, d)?;
        if classes.len() != k as usize {
            return Err(Error::InvalidPartition(format!(
                "{} classes for k = {k}",
                classes.len()
            )));
        }
        let mut class_of = vec![u32::MAX; g.order()];
        for (i, class) in classes.iter().enumerate() {
            for v in class {
                if !g.contains(v) {
                    return Err(Error::UnknownVertex(v.index()));
                }
                if class_of[v.index()] != u32::MAX {
                    return Err(Error::InvalidPartition(format!(
                        "vertex {v} in two classes"
                    )));
                }
                class_of[v.index()] = i as u32;
            }
        }
        if let Some(v) = class_of.iter().position(|&c| c == u32::MAX) {
            return Err(Error::InvalidPartition(format!("vertex {v} uncovered")));
        }
        let p = KdPartition {
            k,
            d,
            classes,
            class_of,
        };
        for j in 0..k {
            let window = p.window(j as i64, d);
            if !is_independent(g, &window)? {
                return Err(Error::InvalidPartition(format!(
                    "classes {j}..{} are not independent",
                    (j + d - 1) % k
                )));
            }
        }
        Ok(p)
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn classes(&self) -> &[VertexSet] {
        &self.classes
    }

    /// `X_i`, index taken mod k.
    pub fn class(&self, i: i64) -> &VertexSet {
        &self.classes[i.rem_euclid(self.k as i64) as usize]
    }

    /// Index of the class containing `v`, if `v` is covered.
    pub fn class_of(&self, v: VertexId) -> Option<u32> {
        self.class_of.get(v.index()).copied()
    }

    /// `X_start ∪ ... ∪ X_{start+len-1}` (mod k).
    pub fn window(&self, start: i64, len: u32) -> VertexSet {
        let mut out = VertexSet::new();
        for off in 0..len as i64 {
            out.extend(self.class(start + off).iter());
        }
        out
    }
}

pub fn coloring_to_partition(g: &Graph, c: &KdColoring) -> Result<KdPartition> {
    let bad = coloring_violations(g, c)?;
    if let Some((u, v)) = bad.first() {
        return Err(Error::InvalidColoring(format!(
            "edge {u}-{v} violates the distance bound"
        )));
    }
    let mut classes = vec![VertexSet::new(); c.k as usize];
    for v in g.vertices() {
        classes[c.color(v) as usize].insert(v);
    }
    KdPartition::new(g, c.k, c.d, classes)
}

pub fn partition_to_coloring(g: &Graph, p: &KdPartition) -> Result<KdColoring> {
    if p.class_of.len() != g.order() {
        return Err(Error::InvalidPartition(
            "partition belongs to another graph".into(),
        ));
    }
    let c = KdColoring::new(p.k, p.d, p.class_of.clone())?;
    if !verify_coloring(g, &c)? {
        return Err(Error::InvalidPartition(
            "windows are not independent in this graph".into(),
        ));
    }
    Ok(c)
}

/// Witness `(k,d)`-coloring if one exists. Exact.
pub fn is_kd_colorable(g: &Graph, k: u32, d: u32) -> Result<Option<KdColoring>> {
    let outcome = solver::feasibility(g, k, d, true)?;
    Ok(outcome
        .colors
        .map(|colors| KdColoring::new(k, d, colors).expect("search returns colors in Z_k")))
}

/// The d-field `δ(x) = X_{j-d+1} ∪ ... ∪ X_{j+d-1}` where `x ∈ X_j`.
pub fn d_field(p: &KdPartition, x: VertexId) -> Result<VertexSet> {
    let j = p.class_of(x).ok_or(Error::UnknownVertex(x.index()))? as i64;
    let d = p.d as i64;
    Ok(p.window(j - d + 1, (2 * d - 1) as u32))
}

/// Violations of "every class is nonempty and `N(X_i) ∩ X_{i+d} ≠ ∅`".
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Lemma1Report {
    pub empty_classes: Vec<u32>,
    pub unlinked_classes: Vec<u32>,
}

impl Lemma1Report {
    pub fn is_clean(&self) -> bool {
        self.empty_classes.is_empty() && self.unlinked_classes.is_empty()
    }
}

pub fn check_lemma1(p: &KdPartition, g: &Graph) -> Result<Lemma1Report> {
    let mut report = Lemma1Report::default();
    for i in 0..p.k {
        let xi = p.class(i as i64);
        if xi.is_empty() {
            report.empty_classes.push(i);
        }
        let reach = neighborhood(g, xi)?;
        if reach.is_disjoint(p.class(i as i64 + p.d as i64)) {
            report.unlinked_classes.push(i);
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete_graph, cycle_graph};

    fn ids(v: &[usize]) -> VertexSet {
        v.iter().map(|&i| VertexId::new(i)).collect()
    }

    #[test]
    fn circulant_targets() {
        let k5 = circulant_target(5, 1).unwrap();
        assert_eq!(k5, complete_graph(5).unwrap());
        let c = circulant_target(5, 2).unwrap();
        let edges: Vec<(usize, usize)> = c.edges().map(|(a, b)| (a.index(), b.index())).collect();
        assert_eq!(edges, [(0, 2), (0, 3), (1, 3), (1, 4), (2, 4)]);
        let m = circulant_target(4, 2).unwrap();
        let edges: Vec<(usize, usize)> = m.edges().map(|(a, b)| (a.index(), b.index())).collect();
        assert_eq!(edges, [(0, 2), (1, 3)]);
        assert!(matches!(
            circulant_target(3, 2),
            Err(Error::InvalidRatio { .. })
        ));
    }

    #[test]
    fn verify_examples() {
        let k3 = complete_graph(3).unwrap();
        assert!(verify_coloring(&k3, &KdColoring::new(3, 1, vec![0, 1, 2]).unwrap()).unwrap());
        let c5 = cycle_graph(5).unwrap();
        let good = KdColoring::new(5, 2, vec![0, 2, 4, 1, 3]).unwrap();
        assert!(verify_coloring(&c5, &good).unwrap());
        let bad = KdColoring::new(5, 2, vec![0, 1, 2, 3, 4]).unwrap();
        assert!(!verify_coloring(&c5, &bad).unwrap());
        let partial = KdColoring::new(5, 2, vec![0, 2]).unwrap();
        assert!(verify_coloring(&c5, &partial).is_err());
        assert!(KdColoring::new(5, 2, vec![5]).is_err());
    }

    #[test]
    fn partition_duality_examples() {
        let c5 = cycle_graph(5).unwrap();
        let c = KdColoring::new(5, 2, vec![0, 2, 4, 1, 3]).unwrap();
        let p = coloring_to_partition(&c5, &c).unwrap();
        assert!(p.classes().iter().all(|x| x.len() == 1));
        assert_eq!(partition_to_coloring(&c5, &p).unwrap(), c);

        let sparse = KdColoring::new(7, 2, vec![0, 2, 4, 0, 2]).unwrap();
        let p = coloring_to_partition(&c5, &sparse).unwrap();
        assert!(p.class(1).is_empty());
        assert_eq!(partition_to_coloring(&c5, &p).unwrap(), sparse);

        let bad = vec![ids(&[0, 1]), ids(&[2]), ids(&[3]), ids(&[4]), ids(&[])];
        assert!(KdPartition::new(&c5, 5, 2, bad).is_err());
        let overlap = vec![ids(&[0]), ids(&[0, 2]), ids(&[1]), ids(&[3]), ids(&[4])];
        assert!(KdPartition::new(&c5, 5, 1, overlap).is_err());
        let uncovered = vec![ids(&[0]), ids(&[2]), ids(&[1]), ids(&[3]), ids(&[])];
        assert!(KdPartition::new(&c5, 5, 1, uncovered).is_err());
    }

    #[test]
    fn colorability() {
        let c5 = cycle_graph(5).unwrap();
        let w = is_kd_colorable(&c5, 5, 2).unwrap().unwrap();
        assert!(verify_coloring(&c5, &w).unwrap());
        assert!(is_kd_colorable(&c5, 7, 3).unwrap().is_none());
        for n in 1..=6u32 {
            let kn = complete_graph(n as usize).unwrap();
            if n >= 2 {
                assert!(is_kd_colorable(&kn, n, 1).unwrap().is_some());
            }
            for k in 2..n {
                assert!(is_kd_colorable(&kn, k, 1).unwrap().is_none());
            }
        }
    }

    #[test]
    fn d_fields() {
        let c5 = cycle_graph(5).unwrap();
        let p = coloring_to_partition(&c5, &KdColoring::new(5, 2, vec![0, 2, 4, 1, 3]).unwrap())
            .unwrap();
        let x = VertexId::new(0);
        let field = d_field(&p, x).unwrap();
        assert_eq!(field, p.class(4).union(p.class(0)).union(p.class(1)));
        let q = coloring_to_partition(&c5, &KdColoring::new(3, 1, vec![0, 1, 0, 1, 2]).unwrap())
            .unwrap();
        assert_eq!(d_field(&q, x).unwrap(), *q.class(0));
        assert!(d_field(&q, VertexId::new(9)).is_err());
    }

    #[test]
    fn lemma1_reports() {
        let c5 = cycle_graph(5).unwrap();
        let opt = coloring_to_partition(&c5, &KdColoring::new(5, 2, vec![0, 2, 4, 1, 3]).unwrap())
            .unwrap();
        assert!(check_lemma1(&opt, &c5).unwrap().is_clean());
        for n in 2..=5 {
            let kn = complete_graph(n).unwrap();
            let c = KdColoring::new(n as u32, 1, (0..n as u32).collect()).unwrap();
            let p = coloring_to_partition(&kn, &c).unwrap();
            assert!(check_lemma1(&p, &kn).unwrap().is_clean());
        }
        let loose =
            coloring_to_partition(&c5, &KdColoring::new(6, 2, vec![0, 2, 4, 0, 2]).unwrap())
                .unwrap();
        let r = check_lemma1(&loose, &c5).unwrap();
        assert_eq!(r.empty_classes, [1, 3, 5]);
        assert!(!r.is_clean());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn instance() -> impl Strategy<Value = (Graph, u32, u32, Vec<u32>)> {
            (2usize..=10, 1u32..=3, 0u32..=6).prop_flat_map(|(n, d, extra)| {
                let k = 2 * d + extra;
                let pairs: Vec<(usize, usize)> = (0..n)
                    .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                    .collect();
                let m = pairs.len();
                (
                    proptest::collection::vec(prop::bool::weighted(0.3), m),
                    proptest::collection::vec(0..k, n),
                )
                    .prop_map(move |(keep, colors)| {
                        let edges = pairs.iter().zip(keep).filter(|(_, k)| *k).map(|(e, _)| *e);
                        (Graph::from_edges(n, edges).unwrap(), k, d, colors)
                    })
            })
        }

        proptest! {
            #[test]
            fn coloring_validity_matches_partition_validity((g, k, d, colors) in instance()) {
                let c = KdColoring::new(k, d, colors).unwrap();
                let valid = verify_coloring(&g, &c).unwrap();
                let mut classes = vec![VertexSet::new(); k as usize];
                for v in g.vertices() {
                    classes[c.color(v) as usize].insert(v);
                }
                let as_partition = KdPartition::new(&g, k, d, classes);
                prop_assert_eq!(valid, as_partition.is_ok());
                if let Ok(p) = as_partition {
                    prop_assert_eq!(partition_to_coloring(&g, &p).unwrap(), c.clone());
                    for x in g.vertices() {
                        let field = d_field(&p, x).unwrap();
                        let nx = neighborhood(&g, &[x].into_iter().collect()).unwrap();
                        prop_assert!(field.is_disjoint(&nx));
                    }
                }
            }
        }
    }
}
