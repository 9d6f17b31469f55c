//! Root digraphs on the level-`t` roots of `M^t(G)`, and their 3-cut sets.
//!
//! `F°_t` has the level-`t` roots other than `u_t` as vertices and an arc
//! `u^{.. a} -> u^{.. j (a-j)}` for every split of the last suffix entry `a >= 2`.
//! Dropping the last suffix entry of every vertex gives the isomorphic `F_t`, in
//! which every arc appends one entry. `F_t` is a disjoint union of outtrees
//! `F(i)` rooted at `u_i`, `1 <= i <= t-1`.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;

use fixedbitset::FixedBitSet;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::{neighborhood, VertexSet};
use crate::mycielski::{h_inverse, initial_derived_set, NameKind, NamedGraph, VertexName};

/// `u` for roots of `M^t(G)`, `v` for the disjoint copy `F'(i)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Namespace {
    U,
    V,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RootLabel {
    pub ns: Namespace,
    pub level: u32,
    pub suffix: Vec<u32>,
}

impl RootLabel {
    pub fn u(level: u32, suffix: impl Into<Vec<u32>>) -> Self {
        RootLabel {
            ns: Namespace::U,
            level,
            suffix: suffix.into(),
        }
    }

    pub fn v(level: u32, suffix: impl Into<Vec<u32>>) -> Self {
        RootLabel {
            ns: Namespace::V,
            level,
            suffix: suffix.into(),
        }
    }

    pub fn total(&self) -> u32 {
        self.level + self.suffix.iter().sum::<u32>()
    }

    fn drop_last(&self) -> RootLabel {
        let mut out = self.clone();
        out.suffix.pop();
        out
    }

    /// The matching vertex name, for `u` labels.
    pub fn to_vertex_name(&self) -> Option<VertexName> {
        (self.ns == Namespace::U).then(|| VertexName::root(self.level, self.suffix.clone()))
    }

    pub fn from_vertex_name(name: &VertexName) -> Option<RootLabel> {
        match name.kind {
            NameKind::Root(level) => Some(RootLabel::u(level, name.suffix.clone())),
            NameKind::Initial(_) => None,
        }
    }
}

impl fmt::Display for RootLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let head = match self.ns {
            Namespace::U => 'u',
            Namespace::V => 'v',
        };
        write!(f, "{head}{}", self.level)?;
        if !self.suffix.is_empty() {
            let parts: Vec<String> = self.suffix.iter().map(u32::to_string).collect();
            write!(f, "^{}", parts.join("."))?;
        }
        Ok(())
    }
}

impl Serialize for RootLabel {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Flavor {
    /// `F°_t`, vertices are level-`t` roots.
    Original,
    /// `F_t` and its subgraphs, vertices have total at most `t-1`.
    Relabeled,
}

/// A digraph over root labels. Vertex ids follow the sorted label order.
#[derive(Clone, Debug)]
pub struct RootDigraph {
    t: u32,
    flavor: Flavor,
    labels: Vec<RootLabel>,
    index: HashMap<RootLabel, usize>,
    out: Vec<Vec<usize>>,
    inc: Vec<Vec<usize>>,
    arc_count: usize,
}

impl RootDigraph {
    pub fn new<I>(t: u32, flavor: Flavor, labels: Vec<RootLabel>, arcs: I) -> Result<RootDigraph>
    where
        I: IntoIterator<Item = (RootLabel, RootLabel)>,
    {
        let mut labels = labels;
        labels.sort();
        labels.dedup();
        let index: HashMap<RootLabel, usize> = labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.clone(), i))
            .collect();
        let n = labels.len();
        let mut out = vec![Vec::new(); n];
        let mut inc = vec![Vec::new(); n];
        let mut seen = BTreeSet::new();
        for (a, b) in arcs {
            let ia = *index
                .get(&a)
                .ok_or_else(|| Error::UnknownName(a.to_string()))?;
            let ib = *index
                .get(&b)
                .ok_or_else(|| Error::UnknownName(b.to_string()))?;
            if seen.insert((ia, ib)) {
                out[ia].push(ib);
                inc[ib].push(ia);
            }
        }
        for list in out.iter_mut().chain(inc.iter_mut()) {
            list.sort_unstable();
        }
        Ok(RootDigraph {
            t,
            flavor,
            labels,
            index,
            out,
            inc,
            arc_count: seen.len(),
        })
    }

    pub fn t(&self) -> u32 {
        self.t
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn order(&self) -> usize {
        self.labels.len()
    }

    pub fn arc_count(&self) -> usize {
        self.arc_count
    }

    pub fn labels(&self) -> &[RootLabel] {
        &self.labels
    }

    pub fn id(&self, label: &RootLabel) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub fn contains(&self, label: &RootLabel) -> bool {
        self.index.contains_key(label)
    }

    /// Arcs in lexicographic order of `(tail, head)` ids.
    pub fn arcs(&self) -> impl Iterator<Item = (&RootLabel, &RootLabel)> + '_ {
        self.out
            .iter()
            .enumerate()
            .flat_map(move |(a, hs)| hs.iter().map(move |&b| (&self.labels[a], &self.labels[b])))
    }

    pub fn has_arc(&self, a: &RootLabel, b: &RootLabel) -> bool {
        match (self.id(a), self.id(b)) {
            (Some(ia), Some(ib)) => self.out[ia].binary_search(&ib).is_ok(),
            _ => false,
        }
    }

    pub fn indegree(&self, label: &RootLabel) -> Option<usize> {
        self.id(label).map(|i| self.inc[i].len())
    }

    /// Copy with one arc removed.
    pub fn without_arc(&self, a: &RootLabel, b: &RootLabel) -> RootDigraph {
        let arcs: Vec<(RootLabel, RootLabel)> = self
            .arcs()
            .filter(|(x, y)| !(*x == a && *y == b))
            .map(|(x, y)| (x.clone(), y.clone()))
            .collect();
        RootDigraph::new(self.t, self.flavor, self.labels.clone(), arcs).expect("labels unchanged")
    }

    fn weak_component_of(&self, start: usize) -> Vec<usize> {
        let mut seen = vec![false; self.order()];
        let mut queue = VecDeque::from([start]);
        seen[start] = true;
        let mut out = Vec::new();
        while let Some(x) = queue.pop_front() {
            out.push(x);
            for &y in self.out[x].iter().chain(&self.inc[x]) {
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        out.sort_unstable();
        out
    }

    fn induced(&self, keep: &[usize]) -> RootDigraph {
        let set: BTreeSet<usize> = keep.iter().copied().collect();
        let labels = keep.iter().map(|&i| self.labels[i].clone()).collect();
        let arcs: Vec<(RootLabel, RootLabel)> = keep
            .iter()
            .flat_map(|&a| {
                self.out[a]
                    .iter()
                    .filter(|b| set.contains(b))
                    .map(move |&b| (self.labels[a].clone(), self.labels[b].clone()))
            })
            .collect();
        RootDigraph::new(self.t, self.flavor, labels, arcs).expect("subset of labels")
    }

    /// Strict descendant sets, one bitset per vertex.
    pub fn reachability(&self) -> Reachability {
        let n = self.order();
        let mut succ = vec![FixedBitSet::with_capacity(n); n];
        for (v, row) in succ.iter_mut().enumerate() {
            let mut queue: VecDeque<usize> = self.out[v].iter().copied().collect();
            while let Some(x) = queue.pop_front() {
                if !row.contains(x) {
                    row.insert(x);
                    queue.extend(self.out[x].iter().copied());
                }
            }
        }
        let mut pred = vec![FixedBitSet::with_capacity(n); n];
        for (v, row) in succ.iter().enumerate() {
            for w in row.ones() {
                pred[w].insert(v);
            }
        }
        Reachability { succ, pred }
    }

    pub fn to_dot(&self, name: &str) -> String {
        let mut s = format!("digraph \"{name}\" {{\n");
        for l in &self.labels {
            s.push_str(&format!("  \"{l}\";\n"));
        }
        for (a, b) in self.arcs() {
            s.push_str(&format!("  \"{a}\" -> \"{b}\";\n"));
        }
        s.push_str("}\n");
        s
    }

    fn ids_of<'a, I>(&self, labels: I) -> Result<Vec<usize>>
    where
        I: IntoIterator<Item = &'a RootLabel>,
    {
        labels
            .into_iter()
            .map(|l| self.id(l).ok_or_else(|| Error::UnknownName(l.to_string())))
            .collect()
    }
}

/// Strict reachability: `succ[v]` are the vertices reachable from `v` by a path of length >= 1.
#[derive(Clone, Debug)]
pub struct Reachability {
    succ: Vec<FixedBitSet>,
    pred: Vec<FixedBitSet>,
}

impl Reachability {
    pub fn reaches(&self, a: usize, b: usize) -> bool {
        self.succ[a].contains(b)
    }

    /// A triple `(u, v, w)` inside `within`, `v` being an inner vertex of a `u -> w` path.
    ///
    /// Assumes an acyclic digraph, where chaining `u -> v` and `v -> w` gives a path.
    fn triple_in(&self, within: &FixedBitSet) -> Option<(usize, usize, usize)> {
        within.ones().find_map(|v| {
            let u = self.pred[v].intersection(within).next()?;
            let w = self.succ[v].intersection(within).next()?;
            Some((u, v, w))
        })
    }

    fn masks(&self) -> (Vec<u64>, Vec<u64>) {
        let to_mask = |b: &FixedBitSet| b.ones().fold(0u64, |m, i| m | 1 << i);
        (
            self.pred.iter().map(to_mask).collect(),
            self.succ.iter().map(to_mask).collect(),
        )
    }
}

fn mask_has_triple(pred: &[u64], succ: &[u64], within: u64) -> bool {
    let mut rest = within;
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        if pred[v] & within != 0 && succ[v] & within != 0 {
            return true;
        }
    }
    false
}

fn require_t(t: u32, min: u32) -> Result<()> {
    if t < min {
        return Err(Error::OutOfRange {
            what: "t",
            value: t as i64,
            min: min as i64,
            max: i64::MAX,
        });
    }
    Ok(())
}

/// All compositions of `total` into positive parts.
fn compositions(total: u32) -> Vec<Vec<u32>> {
    if total == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in 1..=total {
        for mut rest in compositions(total - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// `F°_t`.
pub fn build_f_circle(t: u32) -> Result<RootDigraph> {
    require_t(t, 1)?;
    let labels: Vec<RootLabel> = (1..t)
        .flat_map(|level| {
            compositions(t - level)
                .into_iter()
                .map(move |s| RootLabel::u(level, s))
        })
        .collect();
    let mut arcs = Vec::new();
    for l in &labels {
        let last = *l
            .suffix
            .last()
            .expect("level-t roots below u_t have a suffix");
        for j in 1..last {
            let mut head = l.drop_last();
            head.suffix.push(j);
            head.suffix.push(last - j);
            arcs.push((l.clone(), head));
        }
    }
    RootDigraph::new(t, Flavor::Original, labels, arcs)
}

/// `F_t`: drops the final suffix entry of every vertex of `F°_t`.
pub fn relabel_to_f(fc: &RootDigraph) -> Result<RootDigraph> {
    if fc.flavor != Flavor::Original {
        return Err(Error::InvalidNamedGraph("relabel expects F°_t".into()));
    }
    let labels = fc.labels.iter().map(RootLabel::drop_last).collect();
    let arcs: Vec<_> = fc
        .arcs()
        .map(|(a, b)| (a.drop_last(), b.drop_last()))
        .collect();
    RootDigraph::new(fc.t, Flavor::Relabeled, labels, arcs)
}

pub fn build_f(t: u32) -> Result<RootDigraph> {
    relabel_to_f(&build_f_circle(t)?)
}

/// `F(i)`: the weak component of `F_t` containing `u_i`.
pub fn component(f: &RootDigraph, i: u32) -> Result<RootDigraph> {
    if f.flavor != Flavor::Relabeled {
        return Err(Error::InvalidNamedGraph(
            "components are taken in F_t".into(),
        ));
    }
    if i < 1 || i + 1 > f.t {
        return Err(Error::OutOfRange {
            what: "component index",
            value: i as i64,
            min: 1,
            max: f.t as i64 - 1,
        });
    }
    let root = f
        .id(&RootLabel::u(i, []))
        .ok_or_else(|| Error::UnknownName(format!("u{i}")))?;
    Ok(f.induced(&f.weak_component_of(root)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OuttreeViolation {
    Empty,
    Disconnected,
    Indegree { sources: usize, bad: Vec<String> },
}

impl fmt::Display for OuttreeViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OuttreeViolation::Empty => write!(f, "empty digraph"),
            OuttreeViolation::Disconnected => write!(f, "not weakly connected"),
            OuttreeViolation::Indegree { sources, bad } => write!(
                f,
                "{sources} vertices of indegree 0; indegree above 1 at {}",
                bad.join(", ")
            ),
        }
    }
}

/// The root of `d` if `d` is weakly connected with one source and every other
/// vertex of indegree 1.
pub fn outtree_root(d: &RootDigraph) -> std::result::Result<RootLabel, OuttreeViolation> {
    if d.order() == 0 {
        return Err(OuttreeViolation::Empty);
    }
    if d.weak_component_of(0).len() != d.order() {
        return Err(OuttreeViolation::Disconnected);
    }
    let sources: Vec<usize> = (0..d.order()).filter(|&v| d.inc[v].is_empty()).collect();
    let bad: Vec<String> = (0..d.order())
        .filter(|&v| d.inc[v].len() > 1)
        .map(|v| d.labels[v].to_string())
        .collect();
    if sources.len() != 1 || !bad.is_empty() {
        return Err(OuttreeViolation::Indegree {
            sources: sources.len(),
            bad,
        });
    }
    Ok(d.labels[sources[0]].clone())
}

pub fn is_outtree(d: &RootDigraph) -> bool {
    outtree_root(d).is_ok()
}

/// `F(j) ⊔ F'(j)`: `F(j)`, a copy in the `v` namespace, and the arc `(u_j, v_j)`.
pub fn union_with_copy(fj: &RootDigraph) -> Result<RootDigraph> {
    let root = outtree_root(fj).map_err(|e| Error::InvalidNamedGraph(e.to_string()))?;
    let prime = |l: &RootLabel| RootLabel {
        ns: Namespace::V,
        ..l.clone()
    };
    let mut labels = fj.labels.clone();
    labels.extend(fj.labels.iter().map(prime));
    let mut arcs: Vec<(RootLabel, RootLabel)> = fj
        .arcs()
        .flat_map(|(a, b)| [(a.clone(), b.clone()), (prime(a), prime(b))])
        .collect();
    arcs.push((root.clone(), prime(&root)));
    RootDigraph::new(fj.t, fj.flavor, labels, arcs)
}

/// The map `g: V(F(i)) -> V(F(i+1) ⊔ F'(i+1))`.
pub fn iso_g(i: u32, t: u32) -> Result<BTreeMap<RootLabel, RootLabel>> {
    if t < 3 || i < 1 || i + 2 > t {
        return Err(Error::OutOfRange {
            what: "iso index i",
            value: i as i64,
            min: 1,
            max: t as i64 - 2,
        });
    }
    let fi = component(&build_f(t)?, i)?;
    Ok(fi
        .labels
        .iter()
        .map(|x| {
            let image = match x.suffix.split_first() {
                None => RootLabel::u(i + 1, []),
                Some((1, rest)) => RootLabel::v(i + 1, rest.to_vec()),
                Some((&first, rest)) => {
                    let mut s = vec![first - 1];
                    s.extend_from_slice(rest);
                    RootLabel::u(i + 1, s)
                }
            };
            (x.clone(), image)
        })
        .collect())
}

/// True iff `map` is a bijection `V(d1) -> V(d2)` carrying arcs onto arcs.
pub fn verify_iso(
    d1: &RootDigraph,
    d2: &RootDigraph,
    map: &BTreeMap<RootLabel, RootLabel>,
) -> bool {
    if d1.order() != d2.order() || d1.arc_count() != d2.arc_count() || map.len() != d1.order() {
        return false;
    }
    if !d1
        .labels
        .iter()
        .all(|l| map.get(l).is_some_and(|m| d2.contains(m)))
    {
        return false;
    }
    let image: BTreeSet<&RootLabel> = map.values().collect();
    if image.len() != d2.order() {
        return false;
    }
    d1.arcs().all(|(a, b)| d2.has_arc(&map[a], &map[b]))
}

/// A set of vertices of a root digraph, kept in label order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct CutSet(pub BTreeSet<RootLabel>);

impl CutSet {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &RootLabel> {
        self.0.iter()
    }
}

impl FromIterator<RootLabel> for CutSet {
    fn from_iter<I: IntoIterator<Item = RootLabel>>(iter: I) -> Self {
        CutSet(iter.into_iter().collect())
    }
}

pub type Triple = (RootLabel, RootLabel, RootLabel);

/// A directed triple with all three vertices in `within`, if any.
pub fn find_directed_triple(d: &RootDigraph, within: &CutSet) -> Result<Option<Triple>> {
    let ids = d.ids_of(within.iter())?;
    let mut mask = FixedBitSet::with_capacity(d.order());
    ids.into_iter().for_each(|i| mask.insert(i));
    let reach = d.reachability();
    Ok(reach.triple_in(&mask).map(|(u, v, w)| {
        (
            d.labels[u].clone(),
            d.labels[v].clone(),
            d.labels[w].clone(),
        )
    }))
}

/// True iff removing `s` leaves no directed triple.
pub fn is_3cut(d: &RootDigraph, s: &CutSet) -> Result<bool> {
    d.ids_of(s.iter())?;
    let rest: CutSet = d
        .labels
        .iter()
        .filter(|l| !s.0.contains(*l))
        .cloned()
        .collect();
    Ok(find_directed_triple(d, &rest)?.is_none())
}

pub const BRUTE_FORCE_LIMIT: usize = 31;

/// Advances `idx` to the next `r`-combination of `0..n` in lexicographic order.
fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let r = idx.len();
    let Some(pos) = (0..r).rev().find(|&p| idx[p] < n - r + p) else {
        return false;
    };
    idx[pos] += 1;
    for q in pos + 1..r {
        idx[q] = idx[q - 1] + 1;
    }
    true
}

/// Smallest 3-cut of size at most `max_size`, lexicographically least among
/// those of minimum size. `None` if every 3-cut is larger.
pub fn smallest_3cut_up_to(d: &RootDigraph, max_size: usize) -> Result<Option<CutSet>> {
    let n = d.order();
    if n > BRUTE_FORCE_LIMIT {
        return Err(Error::GuardExceeded {
            what: "brute-force 3-cut search (use canonical_3cut)",
            limit: BRUTE_FORCE_LIMIT,
            actual: n,
        });
    }
    let (pred, succ) = d.reachability().masks();
    let all = if n == 0 { 0 } else { u64::MAX >> (64 - n) };
    for size in 0..=max_size.min(n) {
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            let cut = idx.iter().fold(0u64, |m, &i| m | 1 << i);
            if !mask_has_triple(&pred, &succ, all & !cut) {
                return Ok(Some(idx.iter().map(|&i| d.labels[i].clone()).collect()));
            }
            if !next_combination(&mut idx, n) {
                break;
            }
        }
    }
    Ok(None)
}

/// A minimum 3-cut found by exhaustive search in order of increasing size.
pub fn min_3cut_bruteforce(d: &RootDigraph) -> Result<CutSet> {
    Ok(smallest_3cut_up_to(d, d.order())?.expect("the full vertex set is a 3-cut"))
}

/// The cut of `F_t` made of every vertex of total at most `t-3`.
pub fn canonical_3cut(t: u32) -> Result<CutSet> {
    require_t(t, 3)?;
    Ok(build_f(t)?
        .labels
        .into_iter()
        .filter(|l| l.total() + 3 <= t)
        .collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScanMode {
    Exhaustive,
    Sampled { samples: u64, seed: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Corollary1Report {
    pub t: u32,
    pub order: usize,
    /// Sets strictly larger than this must contain a triple.
    pub threshold: usize,
    pub exhaustive: bool,
    pub checked: u64,
    pub with_triple: u64,
    pub counterexamples: Vec<CutSet>,
}

impl Corollary1Report {
    pub fn confirmed(&self) -> bool {
        self.counterexamples.is_empty() && self.with_triple == self.checked
    }
}

/// Checks that every `U ⊆ V(F°_t)` with `|U| > 3·2^{t-3}` contains a directed triple.
///
/// Exhaustive mode enumerates complements of `U` by size.
pub fn corollary1_scan(t: u32, mode: ScanMode) -> Result<Corollary1Report> {
    require_t(t, 4)?;
    let fc = build_f_circle(t)?;
    let n = fc.order();
    if n > 63 {
        return Err(Error::GuardExceeded {
            what: "corollary scan order",
            limit: 63,
            actual: n,
        });
    }
    let threshold = 3usize << (t - 3);
    let (pred, succ) = fc.reachability().masks();
    let all = u64::MAX >> (64 - n);
    let mut report = Corollary1Report {
        t,
        order: n,
        threshold,
        exhaustive: mode == ScanMode::Exhaustive,
        checked: 0,
        with_triple: 0,
        counterexamples: Vec::new(),
    };
    let record = |within: u64, report: &mut Corollary1Report| {
        report.checked += 1;
        if mask_has_triple(&pred, &succ, within) {
            report.with_triple += 1;
        } else {
            report.counterexamples.push(
                (0..n)
                    .filter(|i| within & (1 << i) != 0)
                    .map(|i| fc.labels[i].clone())
                    .collect(),
            );
        }
    };
    // complement sizes 0 ..= n - threshold - 1
    let max_removed = n.saturating_sub(threshold + 1);
    match mode {
        ScanMode::Exhaustive => {
            for size in 0..=max_removed {
                let mut idx: Vec<usize> = (0..size).collect();
                loop {
                    let cut = idx.iter().fold(0u64, |m, &i| m | 1 << i);
                    record(all & !cut, &mut report);
                    if !next_combination(&mut idx, n) {
                        break;
                    }
                }
            }
        }
        ScanMode::Sampled { samples, seed } => {
            let mut rng = StdRng::seed_from_u64(seed);
            for _ in 0..samples {
                let size = rng.gen_range(0..=max_removed);
                let cut = rand::seq::index::sample(&mut rng, n, size)
                    .into_iter()
                    .fold(0u64, |m, i| m | 1 << i);
                record(all & !cut, &mut report);
            }
        }
    }
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Lemma8Violation {
    pub from: String,
    pub to: String,
    pub which: &'static str,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Lemma8Report {
    pub t: u32,
    pub base_n: usize,
    pub pairs_checked: usize,
    pub violations: Vec<Lemma8Violation>,
}

/// For every pair of level-`t` roots joined by a directed `F°_t` path `v1 -> v2`,
/// checks `N(v2) ∩ T ⊆ N(v1)` and `N({v2, h⁻¹v2}) ∩ T ⊆ N({v1, h⁻¹v1})`,
/// with `T` the derived vertices of the initial vertices.
pub fn lemma8_containment(gt: &NamedGraph) -> Result<Lemma8Report> {
    require_t(gt.t(), 1)?;
    let fc = build_f_circle(gt.t())?;
    let reach = fc.reachability();
    let derived = initial_derived_set(gt);
    let g = gt.graph();
    let id_of = |l: &RootLabel| gt.require(&l.to_vertex_name().expect("u namespace"));
    let single = |l: &RootLabel| -> Result<VertexSet> { Ok([id_of(l)?].into_iter().collect()) };
    let paired = |l: &RootLabel| -> Result<VertexSet> {
        let name = l.to_vertex_name().expect("u namespace");
        let back = h_inverse(&name).expect("level-t roots below u_t have a suffix");
        Ok([gt.require(&name)?, gt.require(&back)?]
            .into_iter()
            .collect())
    };
    let mut report = Lemma8Report {
        t: gt.t(),
        base_n: gt.base_n(),
        pairs_checked: 0,
        violations: Vec::new(),
    };
    for a in 0..fc.order() {
        for b in 0..fc.order() {
            if !reach.reaches(a, b) {
                continue;
            }
            let (v1, v2) = (&fc.labels[a], &fc.labels[b]);
            report.pairs_checked += 1;
            let checks = [
                ("single", single(v1)?, single(v2)?),
                ("with_h_inverse", paired(v1)?, paired(v2)?),
            ];
            for (which, s1, s2) in checks {
                let lhs = neighborhood(g, &s2)?.intersection(&derived);
                if !lhs.is_subset(&neighborhood(g, &s1)?) {
                    report.violations.push(Lemma8Violation {
                        from: v1.to_string(),
                        to: v2.to_string(),
                        which,
                    });
                }
            }
        }
    }
    Ok(report)
}
