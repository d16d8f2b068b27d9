//! Arc cuts between vertex sets: unit-capacity max-flow, the closest and
//! farthest minimum cuts, an importance test, and enumeration of all
//! important cuts within a budget.
//!
//! An (X,Y)-cut is important when it is inclusion-minimal and no cut of at
//! most its size leaves a strictly larger X-reachable residual. The number
//! of important cuts of size ≤ k is at most 4^k, which is what makes
//! branching over them affordable.

use crate::graph::{ArcId, ArcSet, GraphView, VertexId, VertexSet};
use std::collections::BTreeSet;
use std::ops::ControlFlow;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CutProblemError {
    #[error("X and Y overlap at vertex {0}")]
    OverlappingSides(VertexId),
    #[error("X and Y must both be nonempty")]
    EmptySide,
    #[error("endpoint set contains removed vertex {0}")]
    DeadEndpoint(VertexId),
}

/// An (X,Y)-cut query against one view, with a size budget.
#[derive(Debug)]
pub struct CutProblem<'g> {
    view: GraphView<'g>,
    x: VertexSet,
    y: VertexSet,
    budget: usize,
}

/// Minimum-cut answer: the cut size and both extremal minimum cuts. Each cut
/// is the out-frontier of its reach set.
#[derive(Debug, Clone)]
pub struct MinCutResult {
    pub lambda: usize,
    pub closest_reach: VertexSet,
    pub farthest_reach: VertexSet,
    pub closest_cut: ArcSet,
    pub farthest_cut: ArcSet,
}

/// An important cut together with the X-reachable set it leaves behind.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImportantCut {
    pub arcs: ArcSet,
    pub reach: VertexSet,
}

impl<'g> CutProblem<'g> {
    pub fn new(
        view: GraphView<'g>,
        x: VertexSet,
        y: VertexSet,
        budget: usize,
    ) -> Result<Self, CutProblemError> {
        if x.is_empty() || y.is_empty() {
            return Err(CutProblemError::EmptySide);
        }
        for v in x.iter() {
            if y.contains(v) {
                return Err(CutProblemError::OverlappingSides(v));
            }
        }
        for v in x.iter().chain(y.iter()) {
            if !view.is_live_vertex(v) {
                return Err(CutProblemError::DeadEndpoint(v));
            }
        }
        Ok(CutProblem { view, x, y, budget })
    }

    pub fn view(&self) -> &GraphView<'g> {
        &self.view
    }

    pub fn x(&self) -> &VertexSet {
        &self.x
    }

    pub fn y(&self) -> &VertexSet {
        &self.y
    }

    pub fn budget(&self) -> usize {
        self.budget
    }

    /// Minimum (X,Y)-cut size with both extremal cuts, or None when it
    /// exceeds the budget (detected after budget+1 augmentations).
    pub fn min_cut(&self) -> Option<MinCutResult> {
        min_cut_impl(&self.view, &self.x, &self.y, self.budget)
    }

    /// Whether the (X,Y)-cut `arcs` is important. Panics if `arcs` is not a
    /// cut made of live arcs (contract violation).
    ///
    /// Check: with R the X-reachable set after deleting `arcs`, the cut must
    /// equal the out-frontier of R, and must be the farthest minimum
    /// (R,Y)-cut at its own size. Cuts are compared as arc sets; comparing
    /// reach sets instead would misjudge instances where the residual keeps
    /// vertices that cannot reach Y anyway.
    pub fn is_important(&self, arcs: &ArcSet) -> bool {
        for a in arcs.iter() {
            assert!(self.view.is_live_arc(a), "is_important: arc {a:?} is not live");
        }
        let reach = self.view.reachable_excluding(&self.x, Some(arcs));
        for yv in self.y.iter() {
            assert!(!reach.contains(yv), "is_important: the given set is not an (X,Y)-cut");
        }
        let frontier = out_frontier(&self.view, &reach);
        if frontier != *arcs {
            return false;
        }
        if arcs.is_empty() {
            return true; // Y unreachable; the empty cut is the unique important cut
        }
        let mc = min_cut_impl(&self.view, &reach, &self.y, arcs.len())
            .expect("a cut of this size exists, so the minimum cannot exceed it");
        mc.lambda == arcs.len() && mc.farthest_cut == *arcs
    }

    /// Visits every important (X,Y)-cut of size at most the budget, each
    /// exactly once, in a deterministic order; stops early when the callback
    /// breaks.
    ///
    /// Branching: take the farthest minimum cut, pick its smallest-id arc
    /// (u,v), and either include it (delete it, budget−1, X grows to the
    /// farthest reach) or exclude it (X grows to the farthest reach plus v).
    /// Leaves where Y became unreachable emit the picked arcs; candidates
    /// are filtered through `is_important` and deduplicated.
    pub fn try_for_each_important_cut<B>(
        &self,
        mut f: impl FnMut(&ImportantCut) -> ControlFlow<B>,
    ) -> Option<B> {
        let mut work = self.view.clone();
        let mut picked = Vec::new();
        let mut seen = BTreeSet::new();
        match self.recurse(&mut work, self.x.clone(), self.budget, &mut picked, &mut seen, &mut f)
        {
            ControlFlow::Break(b) => Some(b),
            ControlFlow::Continue(()) => None,
        }
    }

    fn recurse<B>(
        &self,
        work: &mut GraphView<'_>,
        x: VertexSet,
        budget: usize,
        picked: &mut Vec<ArcId>,
        seen: &mut BTreeSet<Vec<ArcId>>,
        f: &mut impl FnMut(&ImportantCut) -> ControlFlow<B>,
    ) -> ControlFlow<B> {
        let Some(mc) = min_cut_impl(work, &x, &self.y, budget) else {
            return ControlFlow::Continue(());
        };
        if mc.lambda == 0 {
            let mut key = picked.clone();
            key.sort();
            if seen.insert(key.clone()) {
                let arcs = ArcSet::from_ids(self.view.base().arc_count(), key);
                if self.is_important(&arcs) {
                    let reach = self.view.reachable_excluding(&self.x, Some(&arcs));
                    return f(&ImportantCut { arcs, reach });
                }
            }
            return ControlFlow::Continue(());
        }

        let arc = mc.farthest_cut.iter().next().expect("lambda > 0 so the cut is nonempty");
        let head = self.view.base().head(arc);

        work.remove_arc(arc);
        picked.push(arc);
        let taken = self.recurse(work, mc.farthest_reach.clone(), budget - 1, picked, seen, f);
        picked.pop();
        work.restore_arc(arc);
        if taken.is_break() {
            return taken;
        }

        if !self.y.contains(head) {
            let mut grown = mc.farthest_reach;
            grown.insert(head);
            let skipped = self.recurse(work, grown, budget, picked, seen, f);
            if skipped.is_break() {
                return skipped;
            }
        }
        ControlFlow::Continue(())
    }

    /// All important (X,Y)-cuts of size at most the budget, sorted by their
    /// canonical arc-id sequences.
    pub fn enumerate_important_cuts(&self) -> Vec<ImportantCut> {
        let mut cuts = Vec::new();
        let early: Option<std::convert::Infallible> = self.try_for_each_important_cut(|c| {
            cuts.push(c.clone());
            ControlFlow::Continue(())
        });
        debug_assert!(early.is_none());
        cuts.sort_by_key(|c| c.arcs.to_sorted_vec());
        cuts
    }

    /// An important cut no larger than the (X,Y)-cut `s` whose residual
    /// reach contains that of `s`. One always exists; the first hit in
    /// enumeration order is returned. Panics if `s` is not a cut.
    pub fn dominating_important_cut(&self, s: &ArcSet) -> ImportantCut {
        let base_reach = self.view.reachable_excluding(&self.x, Some(s));
        for yv in self.y.iter() {
            assert!(
                !base_reach.contains(yv),
                "dominating_important_cut: the given set is not an (X,Y)-cut"
            );
        }
        let sub = CutProblem {
            view: self.view.clone(),
            x: self.x.clone(),
            y: self.y.clone(),
            budget: s.len(),
        };
        sub.try_for_each_important_cut(|c| {
            if base_reach.is_subset_of(&c.reach) {
                ControlFlow::Break(c.clone())
            } else {
                ControlFlow::Continue(())
            }
        })
        .expect("every cut is dominated by some important cut of at most its size")
    }
}

/// Live arcs leaving `r`: tail inside, head outside.
fn out_frontier(view: &GraphView<'_>, r: &VertexSet) -> ArcSet {
    let mut out = ArcSet::new(view.base().arc_count());
    for (a, (t, h)) in view.live_arcs() {
        if r.contains(t) && !r.contains(h) {
            out.insert(a);
        }
    }
    out
}

/// One BFS over the residual graph from `sources`; returns the reached set.
/// Residual arcs: unflowed live arcs forward, flowed live arcs backward.
fn residual_reach(view: &GraphView<'_>, sources: &VertexSet, flow: &[bool]) -> VertexSet {
    let mut seen = VertexSet::new(view.base().vertex_count());
    let mut queue: Vec<VertexId> = Vec::new();
    for v in sources.iter() {
        if seen.insert(v) {
            queue.push(v);
        }
    }
    while let Some(v) = queue.pop() {
        for (w, a) in view.live_out_arcs(v) {
            if !flow[a.index()] && seen.insert(w) {
                queue.push(w);
            }
        }
        for (w, a) in view.live_in_arcs(v) {
            if flow[a.index()] && seen.insert(w) {
                queue.push(w);
            }
        }
    }
    seen
}

/// Vertices that can reach `sinks` in the residual graph.
fn residual_coreach(view: &GraphView<'_>, sinks: &VertexSet, flow: &[bool]) -> VertexSet {
    let mut seen = VertexSet::new(view.base().vertex_count());
    let mut queue: Vec<VertexId> = Vec::new();
    for v in sinks.iter() {
        if seen.insert(v) {
            queue.push(v);
        }
    }
    while let Some(v) = queue.pop() {
        for (w, a) in view.live_in_arcs(v) {
            if !flow[a.index()] && seen.insert(w) {
                queue.push(w);
            }
        }
        for (w, a) in view.live_out_arcs(v) {
            if flow[a.index()] && seen.insert(w) {
                queue.push(w);
            }
        }
    }
    seen
}

/// One augmenting BFS from X to Y; flips the found path into `flow` and
/// reports whether one existed.
fn augment(view: &GraphView<'_>, x: &VertexSet, y: &VertexSet, flow: &mut [bool]) -> bool {
    let n = view.base().vertex_count();
    let mut parent: Vec<Option<(ArcId, bool)>> = vec![None; n];
    let mut visited = VertexSet::new(n);
    let mut queue = std::collections::VecDeque::new();
    for v in x.iter() {
        visited.insert(v);
        queue.push_back(v);
    }
    let mut hit: Option<VertexId> = None;
    'bfs: while let Some(v) = queue.pop_front() {
        for (w, a) in view.live_out_arcs(v) {
            if !flow[a.index()] && visited.insert(w) {
                parent[w.index()] = Some((a, true));
                if y.contains(w) {
                    hit = Some(w);
                    break 'bfs;
                }
                queue.push_back(w);
            }
        }
        for (w, a) in view.live_in_arcs(v) {
            if flow[a.index()] && visited.insert(w) {
                parent[w.index()] = Some((a, false));
                if y.contains(w) {
                    hit = Some(w);
                    break 'bfs;
                }
                queue.push_back(w);
            }
        }
    }
    let Some(mut v) = hit else { return false };
    while let Some((a, forward)) = parent[v.index()] {
        flow[a.index()] = forward;
        v = if forward { view.base().tail(a) } else { view.base().head(a) };
    }
    true
}

pub(crate) fn min_cut_impl(
    view: &GraphView<'_>,
    x: &VertexSet,
    y: &VertexSet,
    budget: usize,
) -> Option<MinCutResult> {
    let mut flow = vec![false; view.base().arc_count()];
    let mut lambda = 0usize;
    while augment(view, x, y, &mut flow) {
        lambda += 1;
        if lambda > budget {
            return None;
        }
    }
    let closest_reach = residual_reach(view, x, &flow);
    let coreach = residual_coreach(view, y, &flow);
    let mut farthest_reach = VertexSet::new(view.base().vertex_count());
    for v in view.live_vertices() {
        if !coreach.contains(v) {
            farthest_reach.insert(v);
        }
    }
    let closest_cut = out_frontier(view, &closest_reach);
    let farthest_cut = out_frontier(view, &farthest_reach);
    debug_assert_eq!(closest_cut.len(), lambda);
    debug_assert_eq!(farthest_cut.len(), lambda);
    debug_assert!(closest_reach.is_subset_of(&farthest_reach));
    Some(MinCutResult { lambda, closest_reach, farthest_reach, closest_cut, farthest_cut })
}
