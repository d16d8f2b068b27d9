//! Reduces one compression step of the feedback vertex set search to the
//! arc-set search: given a graph with a witness feedback vertex set W of size
//! at most k+1, split every vertex into an in-copy and an out-copy joined by
//! a bridge arc, solve the arc problem with hint {v⁺ : v ∈ W}, and read a
//! vertex set back off the returned arcs.

use crate::dfasv::{solve_dfasv, DfasvInstance, SearchStats};
use crate::expand::{expand_all, ArcOrigin, ExpansionMap};
use crate::graph::{ArcSet, DiGraph, GraphView, VertexSet};
use crate::MAX_K;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CompressionError {
    #[error("witness is not a feedback vertex set of the graph")]
    WitnessNotDfvs,
    #[error("witness has {len} vertices, more than budget {k} plus one")]
    WitnessTooLarge { len: usize, k: usize },
    #[error("budget {k} exceeds the supported maximum {max}")]
    BudgetTooLarge { k: usize, max: usize },
}

/// A compression step: find a feedback vertex set of size ≤ k given a witness
/// W with |W| ≤ k+1.
#[derive(Debug)]
pub struct CompressionInstance<'g> {
    g: &'g DiGraph,
    w: VertexSet,
    k: usize,
}

impl<'g> CompressionInstance<'g> {
    pub fn new(g: &'g DiGraph, w: VertexSet, k: usize) -> Result<Self, CompressionError> {
        if k > MAX_K {
            return Err(CompressionError::BudgetTooLarge { k, max: MAX_K });
        }
        if w.len() > k + 1 {
            return Err(CompressionError::WitnessTooLarge { len: w.len(), k });
        }
        let mut probe = GraphView::new(g);
        probe.remove_vertex_set(&w);
        if !probe.is_acyclic() {
            return Err(CompressionError::WitnessNotDfvs);
        }
        Ok(CompressionInstance { g, w, k })
    }

    pub fn graph(&self) -> &'g DiGraph {
        self.g
    }

    pub fn witness(&self) -> &VertexSet {
        &self.w
    }

    pub fn k(&self) -> usize {
        self.k
    }
}

/// The arc-search problem produced from a compression instance: the expanded
/// graph, the bookkeeping to map arcs back, the hint {v⁺ : v ∈ W}, and the
/// unchanged budget.
pub struct ExpandedDfasv {
    pub graph: DiGraph,
    pub map: ExpansionMap,
    pub w_prime: VertexSet,
    pub k: usize,
}

impl ExpandedDfasv {
    pub fn instance(&self) -> DfasvInstance<'_> {
        DfasvInstance::new(GraphView::new(&self.graph), self.w_prime.clone(), self.k)
            .expect("the expanded hint separates every expanded cycle")
    }
}

/// Splits every vertex of the instance graph. Every cycle of the original
/// passes a witness vertex, so its image passes that vertex's bridge and in
/// particular its out-copy: {v⁺ : v ∈ W} is a valid hint.
pub fn to_dfasv(inst: &CompressionInstance<'_>) -> ExpandedDfasv {
    let (graph, map) = expand_all(inst.g);
    let mut w_prime = VertexSet::new(graph.vertex_count());
    for v in inst.w.iter() {
        w_prime.insert(map.split(v).expect("every vertex was split").plus);
    }
    ExpandedDfasv { graph, map, w_prime, k: inst.k }
}

/// Maps an arc set of the expanded graph back to vertices of the original:
/// a bridge arc of v selects v itself, the image of an original arc selects
/// that arc's head. Never grows the set, and preserves the hitting property
/// because every original cycle's image is hit by the arc set.
pub fn lift_solution(g: &DiGraph, map: &ExpansionMap, s_prime: &ArcSet) -> VertexSet {
    let mut s = VertexSet::new(g.vertex_count());
    for a in s_prime.iter() {
        match map.origin(a) {
            ArcOrigin::Image(j) => {
                s.insert(g.head(j));
            }
            ArcOrigin::Bridge(v) => {
                s.insert(v);
            }
        }
    }
    debug_assert!(s.len() <= s_prime.len());
    s
}

/// Runs one compression step end to end. Returns a feedback vertex set of
/// size ≤ k when one exists, None otherwise.
pub fn solve_compression(
    inst: &CompressionInstance<'_>,
    stats: &mut SearchStats,
) -> Option<VertexSet> {
    let exp = to_dfasv(inst);
    let dinst = exp.instance();
    let f = solve_dfasv(&dinst, stats)?;
    let s = lift_solution(inst.g, &exp.map, &f);
    debug_assert!(s.len() <= inst.k);
    debug_assert!(
        {
            let mut probe = GraphView::new(inst.g);
            probe.remove_vertex_set(&s);
            probe.is_acyclic()
        },
        "lifted set must be a feedback vertex set"
    );
    Some(s)
}
