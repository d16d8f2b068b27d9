//! Vertex expansion: splitting a vertex v into v⁻ (keeps the in-arcs) and v⁺
//! (takes over the out-arcs), joined by the bridge arc (v⁻, v⁺).
//!
//! Deleting the bridge in the expanded graph has the same effect on cycles as
//! deleting v in the original, which is what turns vertex-deletion problems
//! into arc-deletion problems.

use crate::graph::{ArcId, DiGraph, VertexId};

/// The two halves of one expanded vertex plus the arc that joins them.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VertexSplit {
    pub minus: VertexId,
    pub plus: VertexId,
    pub bridge: ArcId,
}

/// Where an arc of the expanded graph came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArcOrigin {
    /// Image of an original arc (same tail/head up to renaming).
    Image(ArcId),
    /// The bridge (v⁻, v⁺) introduced for this original vertex.
    Bridge(VertexId),
}

/// Bookkeeping for one expansion: which original vertices were split, the
/// image of every original arc, and the origin of every expanded arc.
#[derive(Debug, Clone)]
pub struct ExpansionMap {
    splits: Vec<Option<VertexSplit>>,
    arc_image: Vec<ArcId>,
    origin: Vec<ArcOrigin>,
}

impl ExpansionMap {
    /// The split of original vertex `v`, if it was expanded.
    pub fn split(&self, v: VertexId) -> Option<VertexSplit> {
        self.splits[v.index()]
    }

    /// Image in the expanded graph of original arc `a`.
    pub fn image(&self, a: ArcId) -> ArcId {
        self.arc_image[a.index()]
    }

    /// Origin of expanded arc `a`.
    pub fn origin(&self, a: ArcId) -> ArcOrigin {
        self.origin[a.index()]
    }

    /// Original arc behind expanded arc `a`, or None for a bridge.
    pub fn original_arc(&self, a: ArcId) -> Option<ArcId> {
        match self.origin(a) {
            ArcOrigin::Image(orig) => Some(orig),
            ArcOrigin::Bridge(_) => None,
        }
    }
}

/// Splits the single vertex `w`. The half keeping the in-arcs reuses id `w`;
/// the out-half gets the fresh id n; the bridge gets the fresh ArcId m.
/// All original arcs keep their ArcIds. A self-loop (w,w) becomes (w⁺,w⁻),
/// forming a 2-cycle with the bridge.
pub fn expand_vertex(g: &DiGraph, w: VertexId) -> (DiGraph, ExpansionMap) {
    let n = g.vertex_count();
    let m = g.arc_count();
    assert!(w.index() < n, "expand_vertex: {w:?} out of range");
    let w_plus = VertexId::new(n);

    let mut arc_list = Vec::with_capacity(m + 1);
    let mut origin = Vec::with_capacity(m + 1);
    for a in g.arc_ids() {
        let (t, h) = g.arc(a);
        let tail = if t == w { w_plus } else { t };
        arc_list.push((tail.index(), h.index()));
        origin.push(ArcOrigin::Image(a));
    }
    arc_list.push((w.index(), w_plus.index()));
    origin.push(ArcOrigin::Bridge(w));

    let expanded = DiGraph::new(n + 1, &arc_list).expect("expanded ids are in range");
    let mut splits = vec![None; n];
    splits[w.index()] = Some(VertexSplit { minus: w, plus: w_plus, bridge: ArcId::new(m) });
    let map = ExpansionMap {
        splits,
        arc_image: g.arc_ids().collect(),
        origin,
    };
    (expanded, map)
}

/// Splits every vertex: v⁻ = 2v, v⁺ = 2v+1. Original arc j = (u,v) becomes
/// (u⁺, v⁻) keeping ArcId j; the bridge of v gets ArcId m+v. The result has
/// 2n vertices and m+n arcs, and its cycles correspond one-to-one to the
/// cycles of the input (each original cycle picks up the bridges of its
/// vertices).
pub fn expand_all(g: &DiGraph) -> (DiGraph, ExpansionMap) {
    let n = g.vertex_count();
    let m = g.arc_count();
    let minus = |v: VertexId| 2 * v.index();
    let plus = |v: VertexId| 2 * v.index() + 1;

    let mut arc_list = Vec::with_capacity(m + n);
    let mut origin = Vec::with_capacity(m + n);
    for a in g.arc_ids() {
        let (t, h) = g.arc(a);
        arc_list.push((plus(t), minus(h)));
        origin.push(ArcOrigin::Image(a));
    }
    let mut splits = Vec::with_capacity(n);
    for v in g.vertices() {
        arc_list.push((minus(v), plus(v)));
        origin.push(ArcOrigin::Bridge(v));
        splits.push(Some(VertexSplit {
            minus: VertexId::new(minus(v)),
            plus: VertexId::new(plus(v)),
            bridge: ArcId::new(m + v.index()),
        }));
    }

    let expanded = DiGraph::new(2 * n, &arc_list).expect("expanded ids are in range");
    let map = ExpansionMap {
        splits,
        arc_image: g.arc_ids().collect(),
        origin,
    };
    (expanded, map)
}
