//! Branching search for a feedback arc set of size ≤ k, guided by a feedback
//! vertex set hint W.
//!
//! Each node drops hint vertices that lie on no cycle, then tries every
//! remaining w ∈ W: split w into w⁻/w⁺ and branch on every important
//! (w⁺, (W∖w)∪{w⁻})-cut S within budget, recursing on the graph minus S with
//! hint W∖w and budget k−|S|. The hint keeps the recursion depth at |W| and
//! caps the number of leaves by an explicit function of k.

use crate::cuts::CutProblem;
use crate::expand::{expand_vertex, ArcOrigin};
use crate::graph::{ArcSet, GraphView, VertexId, VertexSet};
use crate::MAX_K;
use num_bigint::BigUint;
use std::collections::BTreeMap;
use std::ops::ControlFlow;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DfasvError {
    #[error("hint contains removed vertex {0}")]
    DeadHintVertex(VertexId),
    #[error("hint is not a feedback vertex set of the graph")]
    HintNotDfvs,
    #[error("budget {k} exceeds the supported maximum {max}")]
    BudgetTooLarge { k: usize, max: usize },
}

/// A (graph view, hint W, budget k) bundle. The constructor verifies that W
/// really is a feedback vertex set of the view; the solver relies on it.
#[derive(Debug)]
pub struct DfasvInstance<'g> {
    view: GraphView<'g>,
    w: VertexSet,
    k: usize,
}

impl<'g> DfasvInstance<'g> {
    pub fn new(view: GraphView<'g>, w: VertexSet, k: usize) -> Result<Self, DfasvError> {
        if k > MAX_K {
            return Err(DfasvError::BudgetTooLarge { k, max: MAX_K });
        }
        for v in w.iter() {
            if !view.is_live_vertex(v) {
                return Err(DfasvError::DeadHintVertex(v));
            }
        }
        let mut probe = view.clone();
        probe.remove_vertex_set(&w);
        if !probe.is_acyclic() {
            return Err(DfasvError::HintNotDfvs);
        }
        Ok(DfasvInstance { view, w, k })
    }

    pub fn view(&self) -> &GraphView<'g> {
        &self.view
    }

    pub fn hint(&self) -> &VertexSet {
        &self.w
    }

    pub fn k(&self) -> usize {
        self.k
    }
}

/// The hint-vertex and cut-size choices along the path to one search leaf.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeafTrace {
    pub vertices: Vec<VertexId>,
    pub cut_sizes: Vec<usize>,
}

/// Search-tree telemetry for one or more solver runs. Leaves are nodes that
/// made no recursive call; the histogram counts branches by the size of the
/// cut they committed to.
#[derive(Debug, Clone, Default)]
pub struct SearchStats {
    pub nodes: u64,
    pub leaves: u64,
    pub max_depth: usize,
    pub cut_size_histogram: BTreeMap<usize, u64>,
    pub reduction_removals: u64,
    /// Populated only when requested via [`SearchStats::with_traces`].
    pub leaf_traces: Option<Vec<LeafTrace>>,
}

impl SearchStats {
    pub fn new() -> Self {
        SearchStats::default()
    }

    pub fn with_traces() -> Self {
        SearchStats { leaf_traces: Some(Vec::new()), ..SearchStats::default() }
    }

    /// Total branches taken; always equals the histogram mass.
    pub fn branches_taken(&self) -> u64 {
        self.cut_size_histogram.values().sum()
    }

    /// Folds another run's counters into this accumulator.
    pub fn merge(&mut self, other: SearchStats) {
        self.nodes += other.nodes;
        self.leaves += other.leaves;
        self.max_depth = self.max_depth.max(other.max_depth);
        for (size, count) in other.cut_size_histogram {
            *self.cut_size_histogram.entry(size).or_insert(0) += count;
        }
        self.reduction_removals += other.reduction_removals;
        if let (Some(dst), Some(src)) = (self.leaf_traces.as_mut(), other.leaf_traces) {
            dst.extend(src);
        }
    }
}

/// W minus every vertex lying on no cycle of the view: a vertex survives iff
/// its strongly connected component has at least two vertices or it carries
/// a live self-loop. Idempotent, and never empties a genuine hint of a
/// cyclic view.
pub fn reduce_hint(view: &GraphView<'_>, w: &VertexSet) -> VertexSet {
    let sccs = view.scc_partition();
    let mut out = VertexSet::new(w.universe());
    for v in w.iter() {
        if !view.is_live_vertex(v) {
            continue;
        }
        if view.has_live_self_loop(v) || sccs.component_len(v) >= 2 {
            out.insert(v);
        }
    }
    out
}

struct TracePath {
    vertices: Vec<VertexId>,
    cut_sizes: Vec<usize>,
    enabled: bool,
}

fn record_leaf(stats: &mut SearchStats, trace: &TracePath) {
    stats.leaves += 1;
    if let Some(traces) = stats.leaf_traces.as_mut() {
        traces.push(LeafTrace {
            vertices: trace.vertices.clone(),
            cut_sizes: trace.cut_sizes.clone(),
        });
    }
}

/// Finds a feedback arc set of size ≤ k of the instance's view, or None when
/// no such set exists. Telemetry is merged into `stats`; pass
/// [`SearchStats::with_traces`] to also capture per-leaf traces.
pub fn solve_dfasv(inst: &DfasvInstance<'_>, stats: &mut SearchStats) -> Option<ArcSet> {
    let mut local = if stats.leaf_traces.is_some() {
        SearchStats::with_traces()
    } else {
        SearchStats::new()
    };
    let mut work = inst.view.clone();
    let mut trace = TracePath {
        vertices: Vec::new(),
        cut_sizes: Vec::new(),
        enabled: local.leaf_traces.is_some(),
    };
    let result = solve_rec(&mut work, &inst.w, inst.k, 0, &mut local, &mut trace);

    if let Some(f) = result.as_ref() {
        debug_assert!(f.len() <= inst.k);
        let mut probe = inst.view.clone();
        probe.remove_arc_set(f);
        debug_assert!(probe.is_acyclic(), "returned arc set must break every cycle");
    }
    if inst.w.len() <= inst.k + 1 {
        debug_assert!(
            BigUint::from(local.leaves) <= leaf_bound(inst.k).bound,
            "leaf count {} exceeds the bound for k={}",
            local.leaves,
            inst.k
        );
    }
    stats.merge(local);
    result
}

fn solve_rec(
    view: &mut GraphView<'_>,
    w: &VertexSet,
    k: usize,
    depth: usize,
    stats: &mut SearchStats,
    trace: &mut TracePath,
) -> Option<ArcSet> {
    stats.nodes += 1;
    stats.max_depth = stats.max_depth.max(depth);

    if view.is_acyclic() {
        record_leaf(stats, trace);
        return Some(ArcSet::new(view.base().arc_count()));
    }
    if k == 0 {
        record_leaf(stats, trace);
        return None;
    }

    let reduced = reduce_hint(view, w);
    stats.reduction_removals += (w.len() - reduced.len()) as u64;

    let mut calls_here = 0u64;
    let mut answer = None;
    let (mat, arc_back) = view.materialize();
    for wv in reduced.to_sorted_vec() {
        let (exp, emap) = expand_vertex(&mat, wv);
        let split = emap.split(wv).expect("wv was expanded");
        let x = VertexSet::from_ids(exp.vertex_count(), [split.plus]);
        // target side: the other hint vertices plus w⁻, which keeps id wv
        let mut y = VertexSet::new(exp.vertex_count());
        y.extend(reduced.iter());
        let problem = CutProblem::new(GraphView::new(&exp), x, y, k)
            .expect("the split keeps X and Y disjoint, nonempty, and live");

        let outcome = problem.try_for_each_important_cut(|cut| {
            debug_assert!(!cut.arcs.is_empty(), "a hint vertex on a cycle forces a nonempty cut");
            let mut mapped = ArcSet::new(view.base().arc_count());
            for a in cut.arcs.iter() {
                match emap.origin(a) {
                    ArcOrigin::Image(j) => {
                        mapped.insert(arc_back[j.index()]);
                    }
                    ArcOrigin::Bridge(v) => {
                        unreachable!("bridge of {v:?} cannot separate its own plus side")
                    }
                }
            }
            debug_assert_eq!(mapped.len(), cut.arcs.len());

            let size = cut.arcs.len();
            *stats.cut_size_histogram.entry(size).or_insert(0) += 1;
            calls_here += 1;

            let mut rest = reduced.clone();
            rest.remove(wv);
            view.remove_arc_set(&mapped);
            debug_assert!(
                {
                    let mut probe = view.clone();
                    probe.remove_vertex_set(&rest);
                    probe.is_acyclic()
                },
                "the remaining hint must stay a feedback vertex set after the cut"
            );
            if trace.enabled {
                trace.vertices.push(wv);
                trace.cut_sizes.push(size);
            }
            let sub = solve_rec(view, &rest, k - size, depth + 1, stats, trace);
            if trace.enabled {
                trace.vertices.pop();
                trace.cut_sizes.pop();
            }
            view.restore_arc_set(&mapped);

            match sub {
                Some(mut f) => {
                    f.extend(mapped.iter());
                    ControlFlow::Break(f)
                }
                None => ControlFlow::Continue(()),
            }
        });

        if let Some(f) = outcome {
            answer = Some(f);
            break;
        }
    }

    if calls_here == 0 {
        record_leaf(stats, trace);
    }
    answer
}

/// Exact ceiling on the number of search-tree leaves for budget k (when the
/// hint is no larger than k+1):
/// Σ_{a=1}^{k} (k+1)!/(k+1−a)! · C(a, max(0, 2a−k)) · 4^{2(k−a)},
/// with 1 for k = 0 (the tree is a single leaf).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeafBound {
    pub k: usize,
    pub bound: BigUint,
}

pub fn leaf_bound(k: usize) -> LeafBound {
    if k == 0 {
        return LeafBound { k, bound: BigUint::from(1u32) };
    }
    let mut total = BigUint::from(0u32);
    for a in 1..=k {
        let mut term = BigUint::from(1u32);
        for i in (k + 2 - a)..=(k + 1) {
            term *= i;
        }
        term *= binomial(a, (2 * a).saturating_sub(k));
        term <<= 4 * (k - a);
        total += term;
    }
    LeafBound { k, bound: total }
}

fn binomial(n: usize, r: usize) -> BigUint {
    if r > n {
        return BigUint::from(0u32);
    }
    let mut num = BigUint::from(1u32);
    for i in (n - r + 1)..=n {
        num *= i;
    }
    let mut den = BigUint::from(1u32);
    for i in 1..=r {
        den *= i;
    }
    num / den
}

#[derive(Debug, Error, PartialEq)]
#[error("epsilon {0} is outside the open interval (0, 1/2)")]
pub struct GammaRangeError(pub f64);

/// ε^{−ε}·(1−ε)^{−(1−ε)} for ε in the open interval (0, 1/2). Increases
/// monotonically from 1 (at ε→0) toward 2 (at ε→1/2); reported alongside
/// search statistics.
pub fn gamma_epsilon(eps: f64) -> Result<f64, GammaRangeError> {
    if !(eps > 0.0 && eps < 0.5) {
        return Err(GammaRangeError(eps));
    }
    Ok(eps.powf(-eps) * (1.0 - eps).powf(-(1.0 - eps)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{ArcId, DiGraph};
    use crate::oracle::{brute_min_dfas, brute_min_dfvs};

    fn graph(n: usize, arcs: &[(usize, usize)]) -> DiGraph {
        DiGraph::new(n, arcs).unwrap()
    }

    fn vset(n: usize, vs: &[usize]) -> VertexSet {
        VertexSet::from_ids(n, vs.iter().map(|&v| VertexId::new(v)))
    }

    fn instance<'g>(g: &'g DiGraph, w: &[usize], k: usize) -> DfasvInstance<'g> {
        DfasvInstance::new(GraphView::new(g), vset(g.vertex_count(), w), k).unwrap()
    }

    #[test]
    fn constructor_contracts() {
        let g = graph(2, &[(0, 1), (1, 0)]);
        let err = DfasvInstance::new(GraphView::new(&g), vset(2, &[]), 1).unwrap_err();
        assert_eq!(err, DfasvError::HintNotDfvs);

        let err = DfasvInstance::new(GraphView::new(&g), vset(2, &[0]), 65).unwrap_err();
        assert_eq!(err, DfasvError::BudgetTooLarge { k: 65, max: MAX_K });

        let mut view = GraphView::new(&g);
        view.remove_vertex(VertexId::new(0));
        let err = DfasvInstance::new(view, vset(2, &[0]), 1).unwrap_err();
        assert_eq!(err, DfasvError::DeadHintVertex(VertexId::new(0)));
    }

    #[test]
    fn reduce_hint_examples() {
        let dag = graph(3, &[(0, 1), (1, 2)]);
        let view = GraphView::new(&dag);
        assert!(reduce_hint(&view, &vset(3, &[0, 2])).is_empty());

        // 2-cycle plus isolated vertex c=2
        let g = graph(3, &[(0, 1), (1, 0)]);
        let view = GraphView::new(&g);
        assert_eq!(reduce_hint(&view, &vset(3, &[0, 2])), vset(3, &[0]));
        assert_eq!(reduce_hint(&view, &vset(3, &[0, 1])), vset(3, &[0, 1]));

        let loop_g = graph(2, &[(1, 1)]);
        let view = GraphView::new(&loop_g);
        assert_eq!(reduce_hint(&view, &vset(2, &[1])), vset(2, &[1]));
    }

    #[test]
    fn solve_acyclic_returns_empty() {
        let g = graph(3, &[(0, 1), (1, 2)]);
        let inst = instance(&g, &[], 0);
        let mut stats = SearchStats::new();
        let f = solve_dfasv(&inst, &mut stats).unwrap();
        assert!(f.is_empty());
        assert_eq!(stats.nodes, 1);
        assert_eq!(stats.leaves, 1);
    }

    #[test]
    fn solve_two_cycle() {
        let g = graph(2, &[(0, 1), (1, 0)]);
        let mut stats = SearchStats::new();
        assert!(solve_dfasv(&instance(&g, &[0], 0), &mut stats).is_none());

        let f = solve_dfasv(&instance(&g, &[0], 1), &mut stats).unwrap();
        assert_eq!(f.len(), 1);
    }

    #[test]
    fn solve_two_disjoint_cycles_needs_two_arcs() {
        let g = graph(4, &[(0, 1), (1, 0), (2, 3), (3, 2)]);
        let mut stats = SearchStats::new();
        assert!(solve_dfasv(&instance(&g, &[0, 2], 1), &mut stats).is_none());
        let f = solve_dfasv(&instance(&g, &[0, 2], 2), &mut stats).unwrap();
        assert_eq!(f.len(), 2);
    }

    #[test]
    fn solve_matches_brute_on_small_mixes() {
        let cases: Vec<DiGraph> = vec![
            graph(3, &[(0, 1), (1, 2), (2, 0)]),
            graph(3, &[(0, 1), (1, 0), (1, 2), (2, 1), (2, 0), (0, 2)]),
            graph(4, &[(0, 1), (1, 2), (2, 3), (3, 0), (1, 0), (3, 2)]),
            graph(2, &[(0, 1), (1, 0), (0, 1), (1, 0)]),
            graph(3, &[(0, 0), (0, 1), (1, 2), (2, 0)]),
        ];
        for g in &cases {
            let (opt, _) = brute_min_dfas(g);
            let (_, hint) = brute_min_dfvs(g);
            for k in 0..=opt + 1 {
                let inst =
                    DfasvInstance::new(GraphView::new(g), hint.clone(), k).unwrap();
                let mut stats = SearchStats::new();
                let got = solve_dfasv(&inst, &mut stats);
                assert_eq!(got.is_some(), opt <= k, "graph {g:?} k={k}");
                assert!(stats.leaves <= stats.nodes);
            }
        }
    }

    #[test]
    fn histogram_counts_branches() {
        let g = graph(3, &[(0, 1), (1, 0), (1, 2), (2, 1)]);
        let inst = instance(&g, &[1], 2);
        let mut stats = SearchStats::new();
        solve_dfasv(&inst, &mut stats).unwrap();
        assert_eq!(stats.branches_taken(), stats.cut_size_histogram.values().sum::<u64>());
        assert!(stats.branches_taken() > 0);
    }

    #[test]
    fn traces_satisfy_budget_arithmetic() {
        let g = graph(4, &[(0, 1), (1, 0), (1, 2), (2, 1), (2, 3), (3, 2)]);
        let inst = instance(&g, &[1, 2], 3);
        let mut stats = SearchStats::with_traces();
        solve_dfasv(&inst, &mut stats);
        let traces = stats.leaf_traces.as_ref().unwrap();
        assert_eq!(traces.len() as u64, stats.leaves);
        for t in traces {
            assert_eq!(t.vertices.len(), t.cut_sizes.len());
            assert!(t.cut_sizes.iter().all(|&x| x >= 1));
            assert!(t.cut_sizes.iter().sum::<usize>() <= 3);
        }
    }

    #[test]
    fn stats_merge_aggregates() {
        let mut a = SearchStats::new();
        a.nodes = 3;
        a.leaves = 2;
        a.max_depth = 1;
        a.cut_size_histogram.insert(1, 2);
        let mut b = SearchStats::new();
        b.nodes = 5;
        b.leaves = 1;
        b.max_depth = 4;
        b.cut_size_histogram.insert(1, 1);
        b.cut_size_histogram.insert(2, 7);
        b.reduction_removals = 2;
        a.merge(b);
        assert_eq!(a.nodes, 8);
        assert_eq!(a.leaves, 3);
        assert_eq!(a.max_depth, 4);
        assert_eq!(a.cut_size_histogram[&1], 3);
        assert_eq!(a.cut_size_histogram[&2], 7);
        assert_eq!(a.reduction_removals, 2);
    }

    #[test]
    fn leaf_bound_small_values() {
        assert_eq!(leaf_bound(0).bound, BigUint::from(1u32));
        assert_eq!(leaf_bound(1).bound, BigUint::from(2u32));
        assert_eq!(leaf_bound(2).bound, BigUint::from(54u32));
        // growth sanity plus no overflow far beyond test scale
        let mut prev = leaf_bound(0).bound;
        for k in 1..=20 {
            let next = leaf_bound(k).bound;
            assert!(next > prev);
            prev = next;
        }
    }

    #[test]
    fn gamma_epsilon_values() {
        // cross-check against an independent coding of the same quantity
        let by_entropy =
            |e: f64| (-e * e.ln() - (1.0 - e) * (1.0 - e).ln()).exp();
        for eps in [0.01, 0.1, 0.25, 0.33, 0.49] {
            let got = gamma_epsilon(eps).unwrap();
            assert!((got - by_entropy(eps)).abs() < 1e-12);
        }
        assert!((gamma_epsilon(0.25).unwrap() - 1.7547654).abs() < 1e-6);
        // monotone rise from 1 toward the boundary value 2
        assert!(gamma_epsilon(1e-9).unwrap() < 1.000001);
        assert!((gamma_epsilon(0.4999999).unwrap() - 2.0).abs() < 1e-5);
        let grid: Vec<f64> = (1..50).map(|i| i as f64 / 100.0).collect();
        for pair in grid.windows(2) {
            assert!(gamma_epsilon(pair[0]).unwrap() < gamma_epsilon(pair[1]).unwrap());
        }
    }

    #[test]
    fn gamma_epsilon_rejects_out_of_range() {
        for eps in [0.0, 0.5, -0.1, 1.0, f64::NAN] {
            assert!(gamma_epsilon(eps).is_err());
        }
    }

    #[test]
    fn solver_deterministic() {
        let g = graph(5, &[(0, 1), (1, 0), (1, 2), (2, 3), (3, 1), (3, 4), (4, 3), (4, 0)]);
        let (_, hint) = brute_min_dfvs(&g);
        let solve = || {
            let inst = DfasvInstance::new(GraphView::new(&g), hint.clone(), 3).unwrap();
            let mut stats = SearchStats::new();
            let f = solve_dfasv(&inst, &mut stats);
            (f.map(|s| s.to_sorted_vec()), stats.nodes, stats.leaves)
        };
        assert_eq!(solve(), solve());
    }

    #[test]
    fn returned_arcs_reference_the_base_graph() {
        let g = graph(2, &[(0, 1), (1, 0)]);
        let inst = instance(&g, &[0], 1);
        let mut stats = SearchStats::new();
        let f = solve_dfasv(&inst, &mut stats).unwrap();
        for a in f.iter() {
            assert!(a.index() < g.arc_count());
        }
        let _ = ArcId::new(0);
    }
}
