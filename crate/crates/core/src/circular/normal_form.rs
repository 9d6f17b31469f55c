//! Normal forms of `(k,d)`-partitions of `M^t(G) = M(M^{t-1}(G))`.
//!
//! Condition 1 places the newest root `u_t` in `X_0`, either alone
//! ([`NormalForm::RootAlone`]) or among others ([`NormalForm::RootInClassZero`]).
//! Condition 2 asks for a single middle class `X_i`, `d <= i <= k-d`, such that
//! every vertex of `M^{t-1}(G)` in `X_i` has its twin in `X_i` as well.

use serde::Serialize;

use super::search::{full_mask, CoClass, Problem};
use super::{partition_to_coloring, KdColoring, KdPartition};
use crate::error::{Error, Result};
use crate::graph::VertexSet;
use crate::mycielski::NamedGraph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum NormalForm {
    /// `u_t ∈ X_0`.
    RootInClassZero,
    /// `X_0 = {u_t}`.
    RootAlone,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NormalFormReport {
    pub form: NormalForm,
    pub root_condition: bool,
    /// Every `i ∈ [d, k-d]` for which the twin condition holds.
    pub twin_classes: Vec<u32>,
}

impl NormalFormReport {
    pub fn passes(&self) -> bool {
        self.root_condition && !self.twin_classes.is_empty()
    }
}

fn require_step(gt: &NamedGraph) -> Result<()> {
    if gt.t() == 0 {
        return Err(Error::OutOfRange {
            what: "iteration t",
            value: 0,
            min: 1,
            max: i64::MAX,
        });
    }
    Ok(())
}

pub fn check_normal_form(
    p: &KdPartition,
    gt: &NamedGraph,
    form: NormalForm,
) -> Result<NormalFormReport> {
    require_step(gt)?;
    // validates that p belongs to this graph
    partition_to_coloring(gt.graph(), p)?;
    let u = gt.top_root().expect("t >= 1 has a top root");
    let x0 = p.class(0);
    let root_condition = match form {
        NormalForm::RootInClassZero => x0.contains(u),
        NormalForm::RootAlone => x0.len() == 1 && x0.contains(u),
    };
    let previous = gt.previous_vertices();
    let twin_classes = (p.d()..=p.k() - p.d())
        .filter(|&i| {
            p.class(i as i64)
                .intersection(&previous)
                .iter()
                .all(|x| gt.twin(x).is_some_and(|tw| p.class_of(tw) == Some(i)))
        })
        .collect();
    Ok(NormalFormReport {
        form,
        root_condition,
        twin_classes,
    })
}

/// A `(k,d)`-partition with `X_0 = {u_t}` and a twin-closed middle class.
///
/// Searches directly under the constraints, trying each middle index in turn.
/// `None` means no such partition exists.
pub fn find_normal_form(gt: &NamedGraph, k: u32, d: u32) -> Result<Option<KdPartition>> {
    require_step(gt)?;
    let g = gt.graph();
    let u = gt.top_root().expect("t >= 1 has a top root").index();
    let previous: VertexSet = gt.previous_vertices();
    for i in d..=k.saturating_sub(d) {
        let mut p = Problem::new(g, k, d)?;
        for v in 0..g.order() {
            p.restrict(v, if v == u { 1 } else { full_mask(k) & !1 });
        }
        for x in &previous {
            let twin = gt.twin(x).expect("previous vertices have twins");
            p.add_co_class(CoClass {
                source: x.index(),
                target: twin.index(),
                color: i,
            });
        }
        if let Some(colors) = p.solve().colors {
            let c = KdColoring::new(k, d, colors)?;
            return super::coloring_to_partition(g, &c).map(Some);
        }
    }
    Ok(None)
}
