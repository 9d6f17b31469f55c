//! Checks tying solver output to the bounds on `χ_c(M^t(K_n))`.
//!
//! All arithmetic is exact: thresholds are `Ratio<i128>`.

use num_integer::Integer;
use num_rational::Ratio;
use serde::Serialize;
use serde_json::{json, Value};

use crate::circular::{
    check_normal_form, circular_chromatic_number, coloring_to_partition, d_field, ChiCCertificate,
    KdPartition, NormalForm,
};
use crate::error::{Error, Result};
use crate::forest::{build_f_circle, find_directed_triple, CutSet, RootLabel};
use crate::graph::{complete_graph, VertexSet};
use crate::mycielski::{h_inverse, iterated_mycielskian, root_set, NamedGraph};

pub type Rational = Ratio<i128>;

/// Largest `t` for which `2^t` arithmetic stays comfortably inside `i128`.
pub const MAX_THRESHOLD_T: u32 = 120;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Holds,
    Fails,
    Vacuous,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Relation {
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = "<")]
    Lt,
    #[serde(rename = "==")]
    Eq,
}

impl Relation {
    fn eval(self, lhs: Rational, rhs: Rational) -> bool {
        match self {
            Relation::Le => lhs <= rhs,
            Relation::Lt => lhs < rhs,
            Relation::Eq => lhs == rhs,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Inequality {
    pub label: &'static str,
    pub lhs: Rational,
    pub relation: Relation,
    pub rhs: Rational,
}

impl Inequality {
    pub fn new(label: &'static str, lhs: Rational, relation: Relation, rhs: Rational) -> Self {
        Inequality {
            label,
            lhs,
            relation,
            rhs,
        }
    }

    pub fn holds(&self) -> bool {
        self.relation.eval(self.lhs, self.rhs)
    }

    fn to_json(&self) -> Value {
        json!({
            "label": self.label,
            "lhs": self.lhs.to_string(),
            "relation": self.relation,
            "rhs": self.rhs.to_string(),
            "holds": self.holds(),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundReport {
    pub lemma: &'static str,
    pub t: u32,
    pub n: usize,
    pub k: u32,
    pub d: u32,
    pub checks: Vec<Inequality>,
    /// `false` when the instance is outside the statement's hypotheses.
    pub applies: bool,
}

impl BoundReport {
    pub fn verdict(&self) -> Verdict {
        if !self.applies {
            Verdict::Vacuous
        } else if self.checks.iter().all(Inequality::holds) {
            Verdict::Holds
        } else {
            Verdict::Fails
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "lemma": self.lemma,
            "instance": { "t": self.t, "n": self.n },
            "values": {
                "k": self.k,
                "d": self.d,
                "checks": self.checks.iter().map(Inequality::to_json).collect::<Vec<_>>(),
            },
            "verdict": self.verdict(),
        })
    }
}

fn int(v: i128) -> Rational {
    Rational::from_integer(v)
}

fn pow2(e: u32) -> Result<i128> {
    if e > MAX_THRESHOLD_T {
        return Err(Error::OutOfRange {
            what: "t",
            value: e as i64,
            min: 0,
            max: MAX_THRESHOLD_T as i64,
        });
    }
    Ok(1i128 << e)
}

/// `(n-3)(d-1) <= 2^t - 2` for the reduced optimum `k/d` of `M^t(K_n)`.
pub fn lemma2_check(t: u32, n: usize, k: u32, d: u32) -> Result<BoundReport> {
    if k.gcd(&d) != 1 {
        return Err(Error::NotReduced { k, d });
    }
    if n < 2 {
        return Err(Error::OutOfRange {
            what: "n",
            value: n as i64,
            min: 2,
            max: i64::MAX,
        });
    }
    let lhs = (n as i128 - 3) * (d as i128 - 1);
    let rhs = pow2(t)? - 2;
    Ok(BoundReport {
        lemma: "lemma2",
        t,
        n,
        k,
        d,
        checks: vec![Inequality::new(
            "(n-3)(d-1) <= 2^t-2",
            int(lhs),
            Relation::Le,
            int(rhs),
        )],
        applies: true,
    })
}

/// `(11/12)·2^{t-1} + 2t + 1/3`.
pub fn theorem1_threshold(t: u32) -> Result<Rational> {
    let half = if t == 0 {
        Rational::new(1, 2)
    } else {
        int(pow2(t - 1)?)
    };
    Ok(Rational::new(11, 12) * half + int(2 * t as i128) + Rational::new(1, 3))
}

/// `2^{t-1} + 2t - 2`.
pub fn liu_threshold(t: u32) -> Result<i128> {
    if t == 0 {
        return Err(Error::OutOfRange {
            what: "t",
            value: 0,
            min: 1,
            max: MAX_THRESHOLD_T as i64,
        });
    }
    Ok(pow2(t - 1)? + 2 * t as i128 - 2)
}

/// Smallest integer `n` with `n >= bound`.
pub fn minimal_n(bound: Rational) -> i128 {
    bound.ceil().to_integer()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ThresholdRow {
    pub t: u32,
    #[serde(serialize_with = "ratio_str")]
    pub bound: Rational,
    pub min_n_bound: i128,
    pub liu_min_n: i128,
    pub strictly_better: bool,
}

fn ratio_str<S: serde::Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(r)
}

pub fn threshold_row(t: u32) -> Result<ThresholdRow> {
    let bound = theorem1_threshold(t)?;
    let min_n_bound = minimal_n(bound);
    let liu_min_n = liu_threshold(t)?;
    Ok(ThresholdRow {
        t,
        bound,
        min_n_bound,
        liu_min_n,
        strictly_better: min_n_bound < liu_min_n,
    })
}

pub fn threshold_table(max_t: u32) -> Result<Vec<ThresholdRow>> {
    (1..=max_t).map(threshold_row).collect()
}

/// First `t` from which the minimal `n` of the new bound is strictly below Liu's
/// for every `t' <= max_t`.
pub fn threshold_crossover(max_t: u32) -> Result<Option<u32>> {
    let rows = threshold_table(max_t)?;
    let tail = rows.iter().rev().take_while(|r| r.strictly_better).count();
    Ok((tail > 0).then(|| max_t + 1 - tail as u32))
}

/// Builds `M^t(K_n)` and computes its certificate, refusing graphs above `guard` vertices.
pub fn solve_instance(t: u32, n: usize, guard: usize) -> Result<(NamedGraph, ChiCCertificate)> {
    let order = (1usize << t) * (n + 1) - 1;
    if order > guard {
        return Err(Error::GuardExceeded {
            what: "M^t(K_n) order",
            limit: guard,
            actual: order,
        });
    }
    let gt = iterated_mycielskian(&complete_graph(n)?, t);
    let cert = circular_chromatic_number(gt.graph())?;
    Ok((gt, cert))
}

pub const DEFAULT_GUARD: usize = 25;

/// `χ_c(M^t(K_n)) = n + t`, applicable when `n >= t + 2`.
pub fn conjecture_verdict(t: u32, n: usize, cert: &ChiCCertificate) -> BoundReport {
    let target = int(n as i128 + t as i128);
    let chi_c = Rational::new(cert.optimal_k as i128, cert.optimal_d as i128);
    let mut checks = vec![Inequality::new("chi_c = n+t", chi_c, Relation::Eq, target)];
    if let Some(chi) = cert.chi {
        checks.push(Inequality::new(
            "chi = n+t",
            int(chi as i128),
            Relation::Eq,
            target,
        ));
    }
    BoundReport {
        lemma: "conjecture",
        t,
        n,
        k: cert.optimal_k,
        d: cert.optimal_d,
        checks,
        applies: n >= t as usize + 2,
    }
}

pub fn conjecture_check(t: u32, n: usize, guard: usize) -> Result<BoundReport> {
    let (_, cert) = solve_instance(t, n, guard)?;
    Ok(conjecture_verdict(t, n, &cert))
}

/// `χ(G) - 1 < χ_c(G) <= χ(G)`.
pub fn property1_checks(cert: &ChiCCertificate) -> Vec<Inequality> {
    let Some(chi) = cert.chi else {
        return Vec::new();
    };
    let ratio = Rational::new(cert.optimal_k as i128, cert.optimal_d as i128);
    vec![
        Inequality::new("chi-1 < chi_c", int(chi as i128 - 1), Relation::Lt, ratio),
        Inequality::new("chi_c <= chi", ratio, Relation::Le, int(chi as i128)),
    ]
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum NormalFormTag {
    RootAlone,
    RootInClassZero,
    None,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Lemma9Report {
    pub t: u32,
    pub n: usize,
    pub k: u32,
    pub d: u32,
    pub normal_form: NormalFormTag,
    /// Level-`t` roots satisfying `C(v) ⊆ δ(v) ∩ R ⊆ {v, h⁻¹(v)}`.
    pub qualifying: Vec<String>,
    pub triple: Option<[String; 3]>,
    pub verdict: Verdict,
}

impl Lemma9Report {
    pub fn to_json(&self) -> Value {
        json!({
            "lemma": "lemma9",
            "instance": { "t": self.t, "n": self.n },
            "values": {
                "k": self.k,
                "d": self.d,
                "normal_form": self.normal_form,
                "qualifying": self.qualifying,
                "triple": self.triple,
            },
            "verdict": self.verdict,
        })
    }
}

/// Collects the level-`t` roots meeting the class hypothesis and looks for an
/// `F°_t` directed triple among them. A triple is reported as `Fails`.
pub fn lemma9_hypothesis_scan(gt: &NamedGraph, p: &KdPartition) -> Result<Lemma9Report> {
    let t = gt.t();
    let mut report = Lemma9Report {
        t,
        n: gt.base_n(),
        k: p.k(),
        d: p.d(),
        normal_form: NormalFormTag::None,
        qualifying: Vec::new(),
        triple: None,
        verdict: Verdict::Vacuous,
    };
    if t < 3 || p.d() != 2 {
        return Ok(report);
    }
    report.normal_form = if check_normal_form(p, gt, NormalForm::RootAlone)?.passes() {
        NormalFormTag::RootAlone
    } else if check_normal_form(p, gt, NormalForm::RootInClassZero)?.passes() {
        NormalFormTag::RootInClassZero
    } else {
        NormalFormTag::None
    };
    let roots = root_set(gt);
    let fc = build_f_circle(t)?;
    let mut qualifying = CutSet::default();
    for label in fc.labels() {
        let name = label.to_vertex_name().expect("F°_t uses u labels");
        let v = gt.require(&name)?;
        let back = gt.require(&h_inverse(&name).expect("suffix is nonempty"))?;
        let own = p.class(p.class_of(v).expect("partition covers the graph") as i64);
        let field_roots = d_field(p, v)?.intersection(&roots);
        let allowed: VertexSet = [v, back].into_iter().collect();
        if own.is_subset(&field_roots) && field_roots.is_subset(&allowed) {
            qualifying
                .0
                .insert(RootLabel::from_vertex_name(&name).expect("root name"));
        }
    }
    report.qualifying = qualifying.iter().map(ToString::to_string).collect();
    if qualifying.len() < 3 {
        return Ok(report);
    }
    report.triple = find_directed_triple(&fc, &qualifying)?
        .map(|(a, b, c)| [a.to_string(), b.to_string(), c.to_string()]);
    report.verdict = if report.triple.is_some() {
        Verdict::Fails
    } else {
        Verdict::Holds
    };
    Ok(report)
}

pub fn lemma9_scan_certificate(gt: &NamedGraph, cert: &ChiCCertificate) -> Result<Lemma9Report> {
    if cert.edgeless {
        return lemma9_hypothesis_scan_vacuous(gt, cert);
    }
    let p = coloring_to_partition(gt.graph(), &cert.witness)?;
    lemma9_hypothesis_scan(gt, &p)
}

fn lemma9_hypothesis_scan_vacuous(gt: &NamedGraph, cert: &ChiCCertificate) -> Result<Lemma9Report> {
    Ok(Lemma9Report {
        t: gt.t(),
        n: gt.base_n(),
        k: cert.optimal_k,
        d: cert.optimal_d,
        normal_form: NormalFormTag::None,
        qualifying: Vec::new(),
        triple: None,
        verdict: Verdict::Vacuous,
    })
}
