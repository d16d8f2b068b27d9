//! Brute-force ground truth and instance generators.
//!
//! Everything here trades time for obviousness: literal definitions, subset
//! enumeration, and reproducible random instances. The fast algorithms are
//! tested against these, never the other way around.

use crate::graph::{ArcId, ArcSet, DiGraph, GraphView, VertexId, VertexSet};
use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::{BTreeSet, HashMap};

/// All simple cycles of `g` as canonical sorted arc-id sets. Parallel arcs
/// yield distinct cycles; a self-loop is a cycle of length 1.
///
/// Each cycle is found once, rooted at its smallest vertex; intended for
/// small graphs (cost is proportional to the number of simple paths).
pub fn simple_cycles(g: &DiGraph) -> BTreeSet<Vec<ArcId>> {
    fn dfs(
        g: &DiGraph,
        start: VertexId,
        v: VertexId,
        on_path: &mut Vec<bool>,
        path_arcs: &mut Vec<ArcId>,
        out: &mut BTreeSet<Vec<ArcId>>,
    ) {
        for &(w, a) in g.out_arcs(v) {
            if w == start {
                let mut cycle = path_arcs.clone();
                cycle.push(a);
                cycle.sort();
                out.insert(cycle);
            } else if w.index() > start.index() && !on_path[w.index()] {
                on_path[w.index()] = true;
                path_arcs.push(a);
                dfs(g, start, w, on_path, path_arcs, out);
                path_arcs.pop();
                on_path[w.index()] = false;
            }
        }
    }

    let mut out = BTreeSet::new();
    let mut on_path = vec![false; g.vertex_count()];
    let mut path_arcs = Vec::new();
    for start in g.vertices() {
        dfs(g, start, start, &mut on_path, &mut path_arcs, &mut out);
    }
    out
}

/// Same result as [`simple_cycles`], by testing every arc subset for being a
/// single simple cycle. The independent route used to validate the DFS one.
pub fn cycles_by_arc_subsets(g: &DiGraph) -> BTreeSet<Vec<ArcId>> {
    let m = g.arc_count();
    assert!(m <= 20, "cycles_by_arc_subsets: {m} arcs exceeds the guard of 20");
    let n = g.vertex_count();
    let mut out = BTreeSet::new();
    'subset: for mask in 1u32..(1 << m) {
        let mut out_arc = vec![None; n];
        let mut in_deg = vec![0u32; n];
        let mut count = 0u32;
        for j in 0..m {
            if mask & (1 << j) == 0 {
                continue;
            }
            count += 1;
            let (t, h) = g.arc(ArcId::new(j));
            if out_arc[t.index()].is_some() {
                continue 'subset; // out-degree 2
            }
            out_arc[t.index()] = Some((h, ArcId::new(j)));
            in_deg[h.index()] += 1;
            if in_deg[h.index()] > 1 {
                continue 'subset;
            }
        }
        // every touched vertex now has out-degree 1 and in-degree ≤ 1;
        // walk from one tail and demand a single closed tour
        let start = (0..n).find(|&v| out_arc[v].is_some()).unwrap();
        if in_deg[start] != 1 {
            continue;
        }
        let mut v = start;
        let mut walked = 0u32;
        let mut cycle = Vec::new();
        loop {
            let Some((w, a)) = out_arc[v] else { continue 'subset };
            cycle.push(a);
            walked += 1;
            v = w.index();
            if v == start {
                break;
            }
            if walked > count {
                continue 'subset;
            }
        }
        if walked == count {
            cycle.sort();
            out.insert(cycle);
        }
    }
    out
}

/// Minimum directed feedback vertex set by subset enumeration, ascending
/// size, first witness in lexicographic order.
pub fn brute_min_dfvs(g: &DiGraph) -> (usize, VertexSet) {
    let n = g.vertex_count();
    assert!(n <= 16, "brute_min_dfvs: {n} vertices exceeds the guard of 16");
    let mut view = GraphView::new(g);
    for size in 0..=n {
        for combo in (0..n).combinations(size) {
            let set = VertexSet::from_ids(n, combo.iter().map(|&v| VertexId::new(v)));
            view.remove_vertex_set(&set);
            let acyclic = view.is_acyclic();
            view.restore_vertex_set(&set);
            if acyclic {
                return (size, set);
            }
        }
    }
    unreachable!("removing every vertex leaves an acyclic graph")
}

/// Minimum directed feedback arc set by subset enumeration, ascending size.
pub fn brute_min_dfas(g: &DiGraph) -> (usize, ArcSet) {
    let m = g.arc_count();
    assert!(m <= 20, "brute_min_dfas: {m} arcs exceeds the guard of 20");
    let mut view = GraphView::new(g);
    for size in 0..=m {
        for combo in (0..m).combinations(size) {
            let set = ArcSet::from_ids(m, combo.iter().map(|&a| ArcId::new(a)));
            view.remove_arc_set(&set);
            let acyclic = view.is_acyclic();
            view.restore_arc_set(&set);
            if acyclic {
                return (size, set);
            }
        }
    }
    unreachable!("removing every arc leaves an acyclic graph")
}

/// Minimum dfas size via the maximum-acyclic-subgraph ordering DP: place the
/// vertices one by one, keeping every arc that points into the newest vertex
/// from earlier ones. Handles graphs too dense for [`brute_min_dfas`];
/// returns the size only.
pub fn min_dfas_size_by_ordering(g: &DiGraph) -> usize {
    let n = g.vertex_count();
    assert!(n <= 16, "min_dfas_size_by_ordering: {n} vertices exceeds the guard of 16");
    if n == 0 {
        return 0;
    }
    let mut mult = vec![vec![0u32; n]; n];
    for a in g.arc_ids() {
        let (t, h) = g.arc(a);
        if t != h {
            mult[t.index()][h.index()] += 1;
        }
    }
    let full = 1usize << n;
    let mut dp = vec![0u32; full];
    for mask in 1..full {
        let mut best = 0;
        for v in 0..n {
            if mask & (1 << v) == 0 {
                continue;
            }
            let rest = mask & !(1 << v);
            let mut gain = dp[rest];
            for u in 0..n {
                if rest & (1 << u) != 0 {
                    gain += mult[u][v];
                }
            }
            best = best.max(gain);
        }
        dp[mask] = best;
    }
    g.arc_count() - dp[full - 1] as usize
}

fn vertex_mask(set: &VertexSet) -> u32 {
    set.iter().fold(0u32, |acc, v| acc | (1 << v.index()))
}

/// Reachable-vertex bitmask from `sources` when the arcs in `removed` are
/// deleted. Bit-parallel fixpoint; the workhorse of the cut oracle.
fn reach_mask(arcs: &[(usize, usize)], removed: u32, sources: u32) -> u32 {
    let mut r = sources;
    loop {
        let mut next = r;
        for (j, &(t, h)) in arcs.iter().enumerate() {
            if removed & (1 << j) == 0 && r & (1 << t) != 0 {
                next |= 1 << h;
            }
        }
        if next == r {
            return r;
        }
        r = next;
    }
}

/// All important (X,Y)-cuts of size at most `k`, by the literal definition:
/// a cut with no proper subset that cuts, such that no cut of at most its
/// size leaves a strictly larger X-reachable set. Canonical sorted arc-id
/// form.
pub fn brute_important_cuts(
    g: &DiGraph,
    x: &VertexSet,
    y: &VertexSet,
    k: usize,
) -> BTreeSet<Vec<ArcId>> {
    let n = g.vertex_count();
    let m = g.arc_count();
    assert!(m <= 20, "brute_important_cuts: {m} arcs exceeds the guard of 20");
    assert!(n <= 16, "brute_important_cuts: {n} vertices exceeds the guard of 16");
    let arcs: Vec<(usize, usize)> = g
        .arc_ids()
        .map(|a| {
            let (t, h) = g.arc(a);
            (t.index(), h.index())
        })
        .collect();
    let x_mask = vertex_mask(x);
    let y_mask = vertex_mask(y);
    assert!(x_mask & y_mask == 0 && x_mask != 0 && y_mask != 0, "X, Y must be disjoint and nonempty");
    let k = k.min(m);

    // reach of every subset of size ≤ k, and the cut subsets among them
    let mut reach_of: HashMap<u32, u32> = HashMap::new();
    let mut cuts: Vec<(u32, u32, u32)> = Vec::new(); // (mask, size, reach)
    for mask in 0u32..(1 << m) {
        let size = mask.count_ones();
        if size as usize > k {
            continue;
        }
        let r = reach_mask(&arcs, mask, x_mask);
        reach_of.insert(mask, r);
        if r & y_mask == 0 {
            cuts.push((mask, size, r));
        }
    }

    let mut out = BTreeSet::new();
    'candidate: for &(f_mask, f_size, f_reach) in &cuts {
        // inclusion-minimality: dropping any single arc must reconnect Y
        // (cut-ness is monotone under supersets, so single drops suffice)
        for j in 0..m {
            if f_mask & (1 << j) != 0 && reach_of[&(f_mask & !(1 << j))] & y_mask == 0 {
                continue 'candidate;
            }
        }
        // no cut of at most this size may reach strictly more from X
        for &(other, o_size, o_reach) in &cuts {
            if other != f_mask && o_size <= f_size && o_reach & f_reach == f_reach && o_reach != f_reach
            {
                continue 'candidate;
            }
        }
        let ids: Vec<ArcId> = (0..m).filter(|j| f_mask & (1 << j) != 0).map(ArcId::new).collect();
        out.insert(ids);
    }
    out
}

/// Every digraph on `n` vertices, as subsets of the lexicographic arc slots
/// (ordered pairs, with loops when requested). 4096 loop-free graphs at n=4.
pub fn all_digraphs(n: usize, include_loops: bool) -> impl Iterator<Item = DiGraph> {
    let mut slots = Vec::new();
    for u in 0..n {
        for v in 0..n {
            if u != v || include_loops {
                slots.push((u, v));
            }
        }
    }
    assert!(slots.len() <= 25, "all_digraphs: {} arc slots is too many to sweep", slots.len());
    (0u64..(1 << slots.len())).map(move |mask| {
        let arcs: Vec<(usize, usize)> = slots
            .iter()
            .enumerate()
            .filter(|(j, _)| mask & (1 << j) != 0)
            .map(|(_, &s)| s)
            .collect();
        DiGraph::new(n, &arcs).expect("slot endpoints are in range")
    })
}

/// Instance family for the random generator.
#[derive(Debug, Clone, PartialEq)]
pub enum GenKind {
    /// Every ordered pair independently with probability `p`.
    ErdosRenyi { p: f64, include_loops: bool },
    /// One arc per unordered pair, direction by fair coin.
    Tournament,
    /// Random DAG plus back-arcs whose heads all lie in a hidden vertex set
    /// of size `planted_k`; that set is a feedback vertex set, so the
    /// optimum is at most `planted_k`.
    PlantedDfvs { planted_k: usize, p: f64 },
}

/// Reproducible generator request: equal specs yield equal graphs, on every
/// platform.
#[derive(Debug, Clone, PartialEq)]
pub struct GenSpec {
    pub kind: GenKind,
    pub n: usize,
    pub seed: u64,
}

/// Generates the requested graph, plus the hidden witness for planted
/// instances.
pub fn generate(spec: &GenSpec) -> (DiGraph, Option<VertexSet>) {
    let n = spec.n;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut arcs: Vec<(usize, usize)> = Vec::new();
    match spec.kind {
        GenKind::ErdosRenyi { p, include_loops } => {
            for u in 0..n {
                for v in 0..n {
                    if (u != v || include_loops) && rng.gen_bool(p) {
                        arcs.push((u, v));
                    }
                }
            }
            (DiGraph::new(n, &arcs).unwrap(), None)
        }
        GenKind::Tournament => {
            for u in 0..n {
                for v in (u + 1)..n {
                    if rng.gen_bool(0.5) {
                        arcs.push((u, v));
                    } else {
                        arcs.push((v, u));
                    }
                }
            }
            (DiGraph::new(n, &arcs).unwrap(), None)
        }
        GenKind::PlantedDfvs { planted_k, p } => {
            assert!(planted_k <= n, "planted_k must not exceed n");
            let mut order: Vec<usize> = (0..n).collect();
            order.shuffle(&mut rng);
            let mut pos = vec![0usize; n];
            for (i, &v) in order.iter().enumerate() {
                pos[v] = i;
            }
            let planted_ids = rand::seq::index::sample(&mut rng, n, planted_k);
            let planted =
                VertexSet::from_ids(n, planted_ids.iter().map(VertexId::new));
            for u in 0..n {
                for v in 0..n {
                    if u == v {
                        continue;
                    }
                    let allowed = pos[u] < pos[v] || planted.contains(VertexId::new(v));
                    if allowed && rng.gen_bool(p) {
                        arcs.push((u, v));
                    }
                }
            }
            (DiGraph::new(n, &arcs).unwrap(), Some(planted))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(n: usize, arcs: &[(usize, usize)]) -> DiGraph {
        DiGraph::new(n, arcs).unwrap()
    }

    fn vset(n: usize, vs: &[usize]) -> VertexSet {
        VertexSet::from_ids(n, vs.iter().map(|&v| VertexId::new(v)))
    }

    #[test]
    fn cycle_enumerators_agree() {
        let cases: Vec<DiGraph> = vec![
            graph(3, &[(0, 1), (1, 2)]),
            graph(1, &[(0, 0)]),
            graph(2, &[(0, 1), (1, 0), (0, 1)]),
            graph(3, &[(0, 1), (1, 2), (2, 0), (1, 0), (2, 2)]),
            graph(4, &[(0, 1), (1, 2), (2, 3), (3, 0), (1, 0), (2, 1)]),
        ];
        for g in &cases {
            assert_eq!(simple_cycles(g), cycles_by_arc_subsets(g));
        }
    }

    #[test]
    fn min_dfvs_examples() {
        let dag = graph(3, &[(0, 1), (1, 2)]);
        assert_eq!(brute_min_dfvs(&dag), (0, vset(3, &[])));

        let two_cycle = graph(2, &[(0, 1), (1, 0)]);
        assert_eq!(brute_min_dfvs(&two_cycle), (1, vset(2, &[0])));

        let pair = graph(4, &[(0, 1), (1, 0), (2, 3), (3, 2)]);
        let (size, witness) = brute_min_dfvs(&pair);
        assert_eq!(size, 2);
        assert_eq!(witness, vset(4, &[0, 2]));
    }

    #[test]
    fn min_dfas_examples() {
        assert_eq!(brute_min_dfas(&graph(3, &[(0, 1), (1, 2)])).0, 0);
        assert_eq!(brute_min_dfas(&graph(2, &[(0, 1), (1, 0)])).0, 1);
        assert_eq!(brute_min_dfas(&graph(3, &[(0, 1), (1, 2), (2, 0)])).0, 1);
    }

    #[test]
    fn ordering_dp_matches_subset_brute() {
        let cases: Vec<DiGraph> = vec![
            graph(3, &[(0, 1), (1, 2)]),
            graph(2, &[(0, 1), (1, 0)]),
            graph(3, &[(0, 1), (1, 2), (2, 0)]),
            graph(2, &[(0, 1), (1, 0), (0, 1), (1, 0)]),
            graph(3, &[(0, 0), (0, 1), (1, 0), (1, 2), (2, 1), (2, 0), (0, 2)]),
            graph(4, &[(0, 1), (1, 0), (1, 2), (2, 3), (3, 1), (3, 0), (0, 3)]),
        ];
        for g in &cases {
            assert_eq!(min_dfas_size_by_ordering(g), brute_min_dfas(g).0, "graph {g:?}");
        }
    }

    #[test]
    fn important_cut_oracle_path() {
        // s=0 → a=1 → t=2
        let g = graph(3, &[(0, 1), (1, 2)]);
        let cuts = brute_important_cuts(&g, &vset(3, &[0]), &vset(3, &[2]), 1);
        assert_eq!(cuts, BTreeSet::from([vec![ArcId::new(1)]]));
    }

    #[test]
    fn important_cut_oracle_unreachable_gives_empty_cut() {
        let g = graph(2, &[(1, 0)]);
        let cuts = brute_important_cuts(&g, &vset(2, &[0]), &vset(2, &[1]), 3);
        assert_eq!(cuts, BTreeSet::from([vec![]]));
    }

    #[test]
    fn important_cut_oracle_zero_budget() {
        let g = graph(2, &[(0, 1)]);
        let cuts = brute_important_cuts(&g, &vset(2, &[0]), &vset(2, &[1]), 0);
        assert!(cuts.is_empty());
    }

    #[test]
    fn important_cut_oracle_diamond() {
        // s=0, a=1, b=2, t=3
        let g = graph(4, &[(0, 1), (1, 3), (0, 2), (2, 3)]);
        let cuts = brute_important_cuts(&g, &vset(4, &[0]), &vset(4, &[3]), 2);
        assert_eq!(cuts, BTreeSet::from([vec![ArcId::new(1), ArcId::new(3)]]));
    }

    #[test]
    fn all_digraphs_counts() {
        assert_eq!(all_digraphs(2, false).count(), 4);
        assert_eq!(all_digraphs(2, true).count(), 16);
        assert_eq!(all_digraphs(4, false).count(), 4096);
    }

    #[test]
    fn generator_erdos_renyi_extremes() {
        let empty = generate(&GenSpec {
            kind: GenKind::ErdosRenyi { p: 0.0, include_loops: false },
            n: 5,
            seed: 7,
        });
        assert_eq!(empty.0.arc_count(), 0);

        let complete = generate(&GenSpec {
            kind: GenKind::ErdosRenyi { p: 1.0, include_loops: false },
            n: 3,
            seed: 7,
        });
        assert_eq!(complete.0.arc_count(), 6);
    }

    #[test]
    fn generator_deterministic() {
        let spec = GenSpec {
            kind: GenKind::ErdosRenyi { p: 0.37, include_loops: true },
            n: 9,
            seed: 123456789,
        };
        assert_eq!(generate(&spec).0, generate(&spec).0);
    }

    #[test]
    fn generator_tournament_arc_count() {
        let (g, _) = generate(&GenSpec { kind: GenKind::Tournament, n: 7, seed: 3 });
        assert_eq!(g.arc_count(), 21);
    }

    #[test]
    fn generator_planted_witness_is_dfvs() {
        let (g, witness) = generate(&GenSpec {
            kind: GenKind::PlantedDfvs { planted_k: 3, p: 0.3 },
            n: 12,
            seed: 42,
        });
        let witness = witness.unwrap();
        assert_eq!(witness.len(), 3);
        let mut view = GraphView::new(&g);
        view.remove_vertex_set(&witness);
        assert!(view.is_acyclic());
    }
}
