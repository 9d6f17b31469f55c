//! Exact circular chromatic number by ascending candidate search.
//!
//! The optimum is `min k/d` over feasible `(k,d)` with `k <= |V|` and
//! `d <= α(G)`. Candidates are the reduced fractions in that box, tested in
//! ascending order; the first feasible one is optimal and every earlier one is
//! recorded as rejected together with the size of the search that refuted it.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::search::{full_mask, Outcome, Problem, MAX_COLORS};
use super::KdColoring;
use crate::error::{Error, Result};
use crate::graph::{chromatic_number, independence_number, maximum_clique, Graph};
use crate::mycielski::VertexName;

/// Every reduced `k/d` with `1 <= d <= max_d` and `2d <= k <= max_k`, ascending.
pub fn candidate_ratios(max_k: u32, max_d: u32) -> Vec<(u32, u32)> {
    let mut out: Vec<(u32, u32)> = (1..=max_d)
        .flat_map(|d| (2 * d..=max_k).map(move |k| (k, d)))
        .filter(|&(k, d)| k.gcd(&d) == 1)
        .collect();
    out.sort_by(|a, b| cmp_ratio(*a, *b).then(a.0.cmp(&b.0)));
    out
}

fn cmp_ratio((k1, d1): (u32, u32), (k2, d2): (u32, u32)) -> Ordering {
    (k1 as u64 * d2 as u64).cmp(&(k2 as u64 * d1 as u64))
}

/// Vertices pinned to break the rotation and reflection symmetry of `Z_k`.
#[derive(Clone, Copy, Debug)]
struct Anchors {
    first: usize,
    second: Option<usize>,
}

fn anchors(g: &Graph) -> Result<Anchors> {
    let clique: Vec<usize> = maximum_clique(g)?.iter().map(|v| v.index()).collect();
    Ok(Anchors {
        first: clique[0],
        second: clique.get(1).copied(),
    })
}

fn run(g: &Graph, k: u32, d: u32, anchors: Option<Anchors>) -> Result<Outcome> {
    let mut p = Problem::new(g, k, d)?;
    if let Some(a) = anchors {
        // rotate so the first anchor is 0, then reflect so the second is <= k/2
        p.restrict(a.first, 1);
        if let Some(s) = a.second {
            p.restrict(s, full_mask(k / 2 + 1));
        }
    }
    Ok(p.solve())
}

pub(crate) fn feasibility(g: &Graph, k: u32, d: u32, symmetry: bool) -> Result<Outcome> {
    let a = if symmetry && g.order() > 0 {
        Some(anchors(g)?)
    } else {
        None
    };
    run(g, k, d, a)
}

#[derive(Clone, Copy, Debug)]
pub struct SolverOptions {
    /// Pin one maximum clique edge to break the dihedral symmetry of `Z_k`.
    pub symmetry: bool,
    /// Also compute `χ(G)` with the independent proper-coloring search.
    pub compute_chi: bool,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions {
            symmetry: true,
            compute_chi: true,
        }
    }
}

/// A refuted candidate and the number of search nodes the refutation took.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rejection {
    pub k: u32,
    pub d: u32,
    pub nodes: u64,
}

#[derive(Clone, Debug)]
pub struct ChiCCertificate {
    pub optimal_k: u32,
    pub optimal_d: u32,
    pub witness: KdColoring,
    pub rejected: Vec<Rejection>,
    pub alpha: usize,
    pub chi: Option<usize>,
    /// Edgeless graphs get the conventional value 1 = 1/1.
    pub edgeless: bool,
}

impl ChiCCertificate {
    pub fn ratio(&self) -> (u32, u32) {
        (self.optimal_k, self.optimal_d)
    }

    /// Serializable form, with the witness keyed by vertex name.
    pub fn to_json(&self, graph: &str, names: &[VertexName]) -> CertificateJson {
        CertificateJson {
            graph: graph.to_string(),
            order: self.witness.colors().len(),
            alpha: self.alpha,
            chi: self.chi,
            edgeless: self.edgeless,
            optimal: RatioJson {
                k: self.optimal_k,
                d: self.optimal_d,
            },
            witness: names
                .iter()
                .cloned()
                .zip(self.witness.colors().iter().copied())
                .collect(),
            rejected: self.rejected.clone(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RatioJson {
    pub k: u32,
    pub d: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateJson {
    pub graph: String,
    pub order: usize,
    pub alpha: usize,
    pub chi: Option<usize>,
    #[serde(default)]
    pub edgeless: bool,
    pub optimal: RatioJson,
    pub witness: BTreeMap<VertexName, u32>,
    pub rejected: Vec<Rejection>,
}

pub fn circular_chromatic_number(g: &Graph) -> Result<ChiCCertificate> {
    circular_chromatic_number_with(g, SolverOptions::default())
}

pub fn circular_chromatic_number_with(g: &Graph, opts: SolverOptions) -> Result<ChiCCertificate> {
    let n = g.order();
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    if n > MAX_COLORS as usize {
        return Err(Error::GuardExceeded {
            what: "solver order",
            limit: MAX_COLORS as usize,
            actual: n,
        });
    }
    let alpha = independence_number(g)?;
    let chi = opts.compute_chi.then(|| chromatic_number(g));
    if g.size() == 0 {
        return Ok(ChiCCertificate {
            optimal_k: 1,
            optimal_d: 1,
            witness: KdColoring::trivial(n),
            rejected: Vec::new(),
            alpha,
            chi,
            edgeless: true,
        });
    }
    let a = opts.symmetry.then(|| anchors(g)).transpose()?;
    let mut rejected = Vec::new();
    for (k, d) in candidate_ratios(n as u32, alpha as u32) {
        let outcome = run(g, k, d, a)?;
        match outcome.colors {
            Some(colors) => {
                return Ok(ChiCCertificate {
                    optimal_k: k,
                    optimal_d: d,
                    witness: KdColoring::new(k, d, colors)?,
                    rejected,
                    alpha,
                    chi,
                    edgeless: false,
                })
            }
            None => rejected.push(Rejection {
                k,
                d,
                nodes: outcome.nodes,
            }),
        }
    }
    unreachable!("(|V|, 1) is always feasible for a graph with an edge")
}
