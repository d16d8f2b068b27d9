//! Immutable directed multigraph with overlay deletions.
//!
//! `DiGraph` never changes after construction. All algorithms run over a
//! `GraphView`, which layers removal masks for arcs and vertices on top of a
//! shared base graph. Deleting and restoring through the masks is how the
//! branching search keeps O(n+m) state across recursion.

use crate::set::{DenseId, IdSet};
use std::fmt;
use thiserror::Error;

/// Index of a vertex, dense in `[0, n)` and stable for the graph's lifetime.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(u32);

impl VertexId {
    pub fn new(index: usize) -> Self {
        VertexId(index as u32)
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Debug for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}", self.0)
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Index of an arc, dense in `[0, m)`. Parallel arcs get distinct ids, which
/// is what lets cuts and branching delete a specific copy.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ArcId(u32);

impl ArcId {
    pub fn new(index: usize) -> Self {
        ArcId(index as u32)
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Debug for ArcId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "a{}", self.0)
    }
}

impl DenseId for VertexId {
    fn index(self) -> usize {
        self.0 as usize
    }

    fn from_index(index: usize) -> Self {
        VertexId(index as u32)
    }
}

impl DenseId for ArcId {
    fn index(self) -> usize {
        self.0 as usize
    }

    fn from_index(index: usize) -> Self {
        ArcId(index as u32)
    }
}

pub type VertexSet = IdSet<VertexId>;
pub type ArcSet = IdSet<ArcId>;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("arc {arc}: endpoint {endpoint} out of range (graph has {n} vertices)")]
    EndpointOutOfRange { arc: usize, endpoint: usize, n: usize },
}

/// Raised by [`GraphView::topological_order`] when the view has a cycle.
#[derive(Debug, Error, PartialEq, Eq)]
#[error("view contains a directed cycle")]
pub struct CyclicGraph;

/// Immutable directed multigraph. Self-loops and parallel arcs are legal.
#[derive(Clone, PartialEq, Eq)]
pub struct DiGraph {
    n: usize,
    arcs: Vec<(VertexId, VertexId)>,
    out_adj: Vec<Vec<(VertexId, ArcId)>>,
    in_adj: Vec<Vec<(VertexId, ArcId)>>,
}

impl DiGraph {
    /// Builds a graph from an arc list. Arc ids are assigned in input order.
    pub fn new(n: usize, arc_list: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut arcs = Vec::with_capacity(arc_list.len());
        let mut out_adj = vec![Vec::new(); n];
        let mut in_adj = vec![Vec::new(); n];
        for (i, &(tail, head)) in arc_list.iter().enumerate() {
            for endpoint in [tail, head] {
                if endpoint >= n {
                    return Err(GraphError::EndpointOutOfRange { arc: i, endpoint, n });
                }
            }
            let (t, h) = (VertexId::new(tail), VertexId::new(head));
            let id = ArcId::new(i);
            arcs.push((t, h));
            out_adj[tail].push((h, id));
            in_adj[head].push((t, id));
        }
        Ok(DiGraph { n, arcs, out_adj, in_adj })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn arc(&self, a: ArcId) -> (VertexId, VertexId) {
        self.arcs[a.index()]
    }

    pub fn tail(&self, a: ArcId) -> VertexId {
        self.arcs[a.index()].0
    }

    pub fn head(&self, a: ArcId) -> VertexId {
        self.arcs[a.index()].1
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> {
        (0..self.n).map(VertexId::new)
    }

    pub fn arc_ids(&self) -> impl Iterator<Item = ArcId> {
        (0..self.arcs.len()).map(ArcId::new)
    }

    pub fn out_arcs(&self, v: VertexId) -> &[(VertexId, ArcId)] {
        &self.out_adj[v.index()]
    }

    pub fn in_arcs(&self, v: VertexId) -> &[(VertexId, ArcId)] {
        &self.in_adj[v.index()]
    }

    /// Compacted subgraph induced by `vertices`. Returns the subgraph and the
    /// map from new vertex ids to old ones (ascending in old id).
    pub fn induced_compact(&self, vertices: &VertexSet) -> (DiGraph, Vec<VertexId>) {
        let old_of_new: Vec<VertexId> = vertices.iter().collect();
        let mut new_of_old = vec![usize::MAX; self.n];
        for (new, old) in old_of_new.iter().enumerate() {
            new_of_old[old.index()] = new;
        }
        let arc_list: Vec<(usize, usize)> = self
            .arcs
            .iter()
            .filter(|(t, h)| vertices.contains(*t) && vertices.contains(*h))
            .map(|(t, h)| (new_of_old[t.index()], new_of_old[h.index()]))
            .collect();
        let sub = DiGraph::new(old_of_new.len(), &arc_list).expect("remapped ids are in range");
        (sub, old_of_new)
    }
}

impl fmt::Debug for DiGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DiGraph(n={}, arcs={:?})", self.n, self.arcs)
    }
}

/// Partition of the live vertices of a view into strongly connected
/// components. Components are indexed in the order Tarjan's algorithm
/// finishes them (reverse topological order of the condensation).
pub struct SccPartition {
    components: Vec<Vec<VertexId>>,
    component_of: Vec<Option<usize>>,
}

impl SccPartition {
    pub fn components(&self) -> &[Vec<VertexId>] {
        &self.components
    }

    pub fn component_of(&self, v: VertexId) -> Option<usize> {
        self.component_of[v.index()]
    }

    pub fn component_len(&self, v: VertexId) -> usize {
        self.component_of(v).map_or(0, |c| self.components[c].len())
    }
}

/// Overlay of removal masks on an immutable base graph.
///
/// Every query behaves exactly as on the materialized subgraph obtained by
/// deleting `removed_arcs`, then `removed_vertices` together with their
/// incident arcs. Removals are undone by the caller (`restore_*`); the base
/// graph is never copied.
#[derive(Clone, Debug)]
pub struct GraphView<'g> {
    base: &'g DiGraph,
    removed_arcs: ArcSet,
    removed_vertices: VertexSet,
}

impl<'g> GraphView<'g> {
    pub fn new(base: &'g DiGraph) -> Self {
        GraphView {
            removed_arcs: ArcSet::new(base.arc_count()),
            removed_vertices: VertexSet::new(base.vertex_count()),
            base,
        }
    }

    pub fn base(&self) -> &'g DiGraph {
        self.base
    }

    pub fn is_live_vertex(&self, v: VertexId) -> bool {
        !self.removed_vertices.contains(v)
    }

    /// An arc is live iff it is not removed and both endpoints are live.
    pub fn is_live_arc(&self, a: ArcId) -> bool {
        if self.removed_arcs.contains(a) {
            return false;
        }
        let (t, h) = self.base.arc(a);
        self.is_live_vertex(t) && self.is_live_vertex(h)
    }

    pub fn live_vertex_count(&self) -> usize {
        self.base.vertex_count() - self.removed_vertices.len()
    }

    pub fn live_vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.base.vertices().filter(|&v| self.is_live_vertex(v))
    }

    /// Live arcs in ascending `ArcId` order.
    pub fn live_arcs(&self) -> impl Iterator<Item = (ArcId, (VertexId, VertexId))> + '_ {
        self.base
            .arc_ids()
            .filter(|&a| self.is_live_arc(a))
            .map(|a| (a, self.base.arc(a)))
    }

    pub fn live_out_arcs(&self, v: VertexId) -> impl Iterator<Item = (VertexId, ArcId)> + '_ {
        self.base
            .out_arcs(v)
            .iter()
            .copied()
            .filter(|&(_, a)| self.is_live_arc(a))
    }

    pub fn live_in_arcs(&self, v: VertexId) -> impl Iterator<Item = (VertexId, ArcId)> + '_ {
        self.base
            .in_arcs(v)
            .iter()
            .copied()
            .filter(|&(_, a)| self.is_live_arc(a))
    }

    pub fn remove_arc(&mut self, a: ArcId) {
        let fresh = self.removed_arcs.insert(a);
        debug_assert!(fresh, "arc removed twice: {a:?}");
    }

    pub fn restore_arc(&mut self, a: ArcId) {
        let hit = self.removed_arcs.remove(a);
        debug_assert!(hit, "restoring an arc that was not removed: {a:?}");
    }

    pub fn remove_arc_set(&mut self, arcs: &ArcSet) {
        for a in arcs.iter() {
            self.remove_arc(a);
        }
    }

    pub fn restore_arc_set(&mut self, arcs: &ArcSet) {
        for a in arcs.iter() {
            self.restore_arc(a);
        }
    }

    pub fn remove_vertex(&mut self, v: VertexId) {
        let fresh = self.removed_vertices.insert(v);
        debug_assert!(fresh, "vertex removed twice: {v:?}");
    }

    pub fn restore_vertex(&mut self, v: VertexId) {
        let hit = self.removed_vertices.remove(v);
        debug_assert!(hit, "restoring a vertex that was not removed: {v:?}");
    }

    pub fn remove_vertex_set(&mut self, vertices: &VertexSet) {
        for v in vertices.iter() {
            self.remove_vertex(v);
        }
    }

    pub fn restore_vertex_set(&mut self, vertices: &VertexSet) {
        for v in vertices.iter() {
            self.restore_vertex(v);
        }
    }

    /// Copies the live subgraph into a standalone graph, keeping vertex ids
    /// (removed vertices become isolated). Returns the map from new arc ids
    /// to base arc ids.
    pub fn materialize(&self) -> (DiGraph, Vec<ArcId>) {
        let mut arc_list = Vec::new();
        let mut arc_back = Vec::new();
        for (a, (t, h)) in self.live_arcs() {
            arc_list.push((t.index(), h.index()));
            arc_back.push(a);
        }
        let g = DiGraph::new(self.base.vertex_count(), &arc_list).expect("base ids are in range");
        (g, arc_back)
    }

    /// Like [`materialize`](Self::materialize) but drops removed vertices and
    /// compacts ids. Also returns the new-to-old vertex map.
    pub fn materialize_compact(&self) -> (DiGraph, Vec<VertexId>, Vec<ArcId>) {
        let live = VertexSet::from_ids(self.base.vertex_count(), self.live_vertices());
        let mut new_of_old = vec![usize::MAX; self.base.vertex_count()];
        let old_of_new: Vec<VertexId> = live.iter().collect();
        for (new, old) in old_of_new.iter().enumerate() {
            new_of_old[old.index()] = new;
        }
        let mut arc_list = Vec::new();
        let mut arc_back = Vec::new();
        for (a, (t, h)) in self.live_arcs() {
            arc_list.push((new_of_old[t.index()], new_of_old[h.index()]));
            arc_back.push(a);
        }
        let g = DiGraph::new(old_of_new.len(), &arc_list).expect("remapped ids are in range");
        (g, old_of_new, arc_back)
    }

    /// Strongly connected components of the live subgraph.
    ///
    /// Tarjan with an explicit stack; recursion would overflow on large
    /// inputs.
    pub fn scc_partition(&self) -> SccPartition {
        let n = self.base.vertex_count();
        let mut index_of = vec![usize::MAX; n];
        let mut low = vec![0usize; n];
        let mut on_stack = vec![false; n];
        let mut stack: Vec<VertexId> = Vec::new();
        let mut next_index = 0usize;
        let mut components: Vec<Vec<VertexId>> = Vec::new();
        let mut component_of: Vec<Option<usize>> = vec![None; n];

        // Work frames: (vertex, position in its out-adjacency list).
        let mut frames: Vec<(VertexId, usize)> = Vec::new();

        for root in self.live_vertices() {
            if index_of[root.index()] != usize::MAX {
                continue;
            }
            frames.push((root, 0));
            index_of[root.index()] = next_index;
            low[root.index()] = next_index;
            next_index += 1;
            stack.push(root);
            on_stack[root.index()] = true;

            while let Some(top) = frames.len().checked_sub(1) {
                let (v, mut pos) = frames[top];
                let adj = self.base.out_arcs(v);
                let mut descended = false;
                while pos < adj.len() {
                    let (w, a) = adj[pos];
                    pos += 1;
                    if !self.is_live_arc(a) {
                        continue;
                    }
                    if index_of[w.index()] == usize::MAX {
                        frames[top].1 = pos;
                        index_of[w.index()] = next_index;
                        low[w.index()] = next_index;
                        next_index += 1;
                        stack.push(w);
                        on_stack[w.index()] = true;
                        frames.push((w, 0));
                        descended = true;
                        break;
                    } else if on_stack[w.index()] {
                        low[v.index()] = low[v.index()].min(index_of[w.index()]);
                    }
                }
                if descended {
                    continue;
                }
                frames.pop();
                if low[v.index()] == index_of[v.index()] {
                    let comp_id = components.len();
                    let mut comp = Vec::new();
                    loop {
                        let w = stack.pop().expect("tarjan stack underflow");
                        on_stack[w.index()] = false;
                        component_of[w.index()] = Some(comp_id);
                        comp.push(w);
                        if w == v {
                            break;
                        }
                    }
                    comp.reverse();
                    components.push(comp);
                }
                if let Some(&(parent, _)) = frames.last() {
                    low[parent.index()] = low[parent.index()].min(low[v.index()]);
                }
            }
        }
        SccPartition { components, component_of }
    }

    /// True iff the view has no directed cycle. A self-loop is a cycle.
    pub fn is_acyclic(&self) -> bool {
        self.kahn(false).is_ok()
    }

    /// True iff `v` lies on some directed cycle: its component has at least
    /// two vertices, or it carries a live self-loop.
    pub fn on_cycle(&self, v: VertexId) -> bool {
        debug_assert!(self.is_live_vertex(v), "on_cycle queried for a dead vertex");
        if self.has_live_self_loop(v) {
            return true;
        }
        self.scc_partition().component_len(v) >= 2
    }

    pub fn has_live_self_loop(&self, v: VertexId) -> bool {
        self.live_out_arcs(v).any(|(w, _)| w == v)
    }

    /// Topological order of the live vertices (Kahn's algorithm, queue seeded
    /// in ascending vertex id).
    pub fn topological_order(&self) -> Result<Vec<VertexId>, CyclicGraph> {
        self.kahn(true).map(|order| order.expect("order was requested"))
    }

    fn kahn(&self, collect: bool) -> Result<Option<Vec<VertexId>>, CyclicGraph> {
        let n = self.base.vertex_count();
        let mut in_deg = vec![0usize; n];
        let mut live_count = 0usize;
        for v in self.live_vertices() {
            live_count += 1;
            in_deg[v.index()] = self.live_in_arcs(v).count();
        }
        let mut queue: std::collections::VecDeque<VertexId> = self
            .live_vertices()
            .filter(|v| in_deg[v.index()] == 0)
            .collect();
        let mut order = if collect { Some(Vec::with_capacity(live_count)) } else { None };
        let mut emitted = 0usize;
        while let Some(v) = queue.pop_front() {
            emitted += 1;
            if let Some(order) = order.as_mut() {
                order.push(v);
            }
            for (w, _) in self.live_out_arcs(v) {
                if w == v {
                    continue; // self-loop already keeps v out of the queue
                }
                in_deg[w.index()] -= 1;
                if in_deg[w.index()] == 0 {
                    queue.push_back(w);
                }
            }
        }
        if emitted == live_count {
            Ok(order)
        } else {
            Err(CyclicGraph)
        }
    }

    /// All vertices reachable from `sources` along live arcs, including the
    /// sources themselves.
    pub fn reachable_from(&self, sources: &VertexSet) -> VertexSet {
        self.reachable_excluding(sources, None)
    }

    /// Reachability with an extra set of arcs treated as deleted. Used for
    /// cut checks without mutating the view.
    pub fn reachable_excluding(&self, sources: &VertexSet, excluded: Option<&ArcSet>) -> VertexSet {
        let mut seen = VertexSet::new(self.base.vertex_count());
        let mut queue: Vec<VertexId> = Vec::new();
        for v in sources.iter() {
            debug_assert!(self.is_live_vertex(v), "source {v:?} is not live");
            if seen.insert(v) {
                queue.push(v);
            }
        }
        while let Some(v) = queue.pop() {
            for (w, a) in self.live_out_arcs(v) {
                if let Some(ex) = excluded {
                    if ex.contains(a) {
                        continue;
                    }
                }
                if seen.insert(w) {
                    queue.push(w);
                }
            }
        }
        seen
    }
}
