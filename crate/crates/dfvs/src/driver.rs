//! Full feedback vertex set search by iterative compression over vertex
//! prefixes: grow the graph one vertex at a time, keep a solution of size
//! ≤ k for the current prefix, and re-compress whenever adding a vertex
//! pushes the solution to k+1. A failed compression step is conclusive,
//! since any solution of the whole graph restricted to a prefix solves that
//! prefix.

use crate::compression::{solve_compression, CompressionInstance};
use crate::dfasv::SearchStats;
use crate::graph::{DiGraph, GraphView, VertexId, VertexSet};
use crate::MAX_K;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum QueryError {
    #[error("budget {k} exceeds the supported maximum {max}")]
    BudgetTooLarge { k: usize, max: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveMode {
    Decision,
    Construct,
    Minimize,
}

/// A validated solve request. In `Minimize` mode `k` acts as the ceiling on
/// the optimum.
#[derive(Debug)]
pub struct DfvsQuery<'g> {
    pub g: &'g DiGraph,
    pub k: usize,
    pub mode: SolveMode,
}

impl<'g> DfvsQuery<'g> {
    pub fn new(g: &'g DiGraph, k: usize, mode: SolveMode) -> Result<Self, QueryError> {
        if k > MAX_K {
            return Err(QueryError::BudgetTooLarge { k, max: MAX_K });
        }
        Ok(DfvsQuery { g, k, mode })
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct DriverOptions {
    /// Solve each strongly connected component separately and combine the
    /// per-component minima. Changes neither answers nor witnesses' validity,
    /// only the work done.
    pub scc_split: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QueryOutcome {
    Feasible(VertexSet),
    Infeasible,
    Minimum { opt: usize, witness: VertexSet },
}

/// Decides whether the graph has a feedback vertex set of size ≤ k and
/// returns one when it does.
pub fn solve_dfvs(g: &DiGraph, k: usize) -> Result<Option<VertexSet>, QueryError> {
    let mut stats = SearchStats::new();
    solve_dfvs_full(g, k, DriverOptions::default(), &mut stats)
}

pub fn solve_dfvs_full(
    g: &DiGraph,
    k: usize,
    opts: DriverOptions,
    stats: &mut SearchStats,
) -> Result<Option<VertexSet>, QueryError> {
    if k > MAX_K {
        return Err(QueryError::BudgetTooLarge { k, max: MAX_K });
    }
    let result = if opts.scc_split {
        solve_by_components(g, k, stats)
    } else {
        compress_prefixes(g, k, stats)
    };
    if let Some(s) = result.as_ref() {
        debug_assert!(s.len() <= k);
        let mut probe = GraphView::new(g);
        probe.remove_vertex_set(s);
        debug_assert!(probe.is_acyclic(), "witness must break every cycle");
    }
    Ok(result)
}

/// Smallest k ≤ k_max admitting a feedback vertex set, with a witness of
/// exactly that size; None when even k_max is not enough.
pub fn minimize_dfvs(g: &DiGraph, k_max: usize) -> Result<Option<(usize, VertexSet)>, QueryError> {
    let mut stats = SearchStats::new();
    minimize_dfvs_full(g, k_max, DriverOptions::default(), &mut stats)
}

pub fn minimize_dfvs_full(
    g: &DiGraph,
    k_max: usize,
    opts: DriverOptions,
    stats: &mut SearchStats,
) -> Result<Option<(usize, VertexSet)>, QueryError> {
    if k_max > MAX_K {
        return Err(QueryError::BudgetTooLarge { k: k_max, max: MAX_K });
    }
    for k in 0..=k_max {
        if let Some(witness) = solve_dfvs_full(g, k, opts, stats)? {
            debug_assert_eq!(witness.len(), k, "first feasible budget is met exactly");
            return Ok(Some((k, witness)));
        }
    }
    Ok(None)
}

pub fn solve_query(
    q: &DfvsQuery<'_>,
    opts: DriverOptions,
    stats: &mut SearchStats,
) -> QueryOutcome {
    match q.mode {
        SolveMode::Decision | SolveMode::Construct => {
            match solve_dfvs_full(q.g, q.k, opts, stats).expect("query was validated") {
                Some(s) => QueryOutcome::Feasible(s),
                None => QueryOutcome::Infeasible,
            }
        }
        SolveMode::Minimize => {
            match minimize_dfvs_full(q.g, q.k, opts, stats).expect("query was validated") {
                Some((opt, witness)) => QueryOutcome::Minimum { opt, witness },
                None => QueryOutcome::Infeasible,
            }
        }
    }
}

/// The prefix loop. Prefix i (vertices 0..i) keeps a solution S_i with
/// |S_i| ≤ k: trivially the whole prefix while i ≤ k, then W = S_{i−1} plus
/// the new vertex is a solution of size ≤ k+1 for prefix i, and one
/// compression step shrinks it back under k or proves prefix i infeasible.
fn compress_prefixes(g: &DiGraph, k: usize, stats: &mut SearchStats) -> Option<VertexSet> {
    let n = g.vertex_count();
    let mut s = VertexSet::new(n);
    if n <= k {
        s.extend(g.vertices());
        return Some(s);
    }
    for v in 0..k {
        s.insert(VertexId::new(v));
    }
    for i in k + 1..=n {
        let mut w = s.clone();
        w.insert(VertexId::new(i - 1));
        if w.len() <= k {
            s = w;
            continue;
        }
        let mut prefix = VertexSet::new(n);
        prefix.extend((0..i).map(VertexId::new));
        let (sub, vmap) = g.induced_compact(&prefix);
        debug_assert!(
            vmap.iter().enumerate().all(|(idx, v)| v.index() == idx),
            "a prefix keeps vertex ids"
        );
        let w_sub = VertexSet::from_ids(i, w.iter());
        let inst = CompressionInstance::new(&sub, w_sub, k)
            .expect("W is a solution of the prefix of size at most k+1");
        match solve_compression(&inst, stats) {
            Some(shrunk) => {
                s = VertexSet::from_ids(n, shrunk.iter());
            }
            None => return None,
        }
    }
    Some(s)
}

/// Minimizes each strongly connected component separately under the leftover
/// budget and concatenates the witnesses. Cycles never leave a component, so
/// the component minima sum to the overall minimum.
fn solve_by_components(g: &DiGraph, k: usize, stats: &mut SearchStats) -> Option<VertexSet> {
    let parts = GraphView::new(g).scc_partition();
    let mut acc = VertexSet::new(g.vertex_count());
    for comp in parts.components() {
        if comp.len() == 1 && !has_self_loop(g, comp[0]) {
            continue;
        }
        let mut members = VertexSet::new(g.vertex_count());
        members.extend(comp.iter().copied());
        let (sub, vmap) = g.induced_compact(&members);
        let budget = k - acc.len();
        let mut found = None;
        for kc in 0..=budget {
            if let Some(s) = compress_prefixes(&sub, kc, stats) {
                found = Some(s);
                break;
            }
        }
        let local = found?;
        acc.extend(local.iter().map(|v| vmap[v.index()]));
    }
    Some(acc)
}

fn has_self_loop(g: &DiGraph, v: VertexId) -> bool {
    g.out_arcs(v).iter().any(|&(head, _)| head == v)
}
