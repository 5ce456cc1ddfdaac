//! The matroids M(G, B, L, F) and M(G, B, χ): circuits, rank, independence,
//! bases, closure, cocircuits and framework conditions.

use std::collections::HashMap;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bias::{minimal_transversals, BiasedGraph};
use crate::bitset::{EdgeSet, VertexSet};
use crate::bracelets::{check_proper, Bracelet, BraceletFunction, BraceletValue};
use crate::error::{Error, Result};
use crate::graph::{components, Cycle, CycleSpace, Multigraph, UnionFind};
use crate::tripartition::{CycleClass, Side, Tripartition};

/// A clutter of circuits over the ground set `0..ground_size`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CircuitFamily {
    ground_size: usize,
    circuits: Vec<EdgeSet>,
}

impl CircuitFamily {
    /// Sorts and deduplicates; the caller guarantees incomparability.
    pub fn new(ground_size: usize, mut circuits: Vec<EdgeSet>) -> Self {
        circuits.sort();
        circuits.dedup();
        Self { ground_size, circuits }
    }

    /// Keeps the inclusion-minimal non-empty members of `sets`.
    pub fn from_minimal(ground_size: usize, mut sets: Vec<EdgeSet>) -> Self {
        sets.retain(|s| !s.is_empty());
        sets.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        sets.dedup();
        let mut kept: Vec<EdgeSet> = Vec::new();
        for s in sets {
            if !kept.iter().any(|k| k.is_subset(&s)) {
                kept.push(s);
            }
        }
        Self::new(ground_size, kept)
    }

    pub fn ground_size(&self) -> usize {
        self.ground_size
    }

    pub fn ground_set(&self) -> EdgeSet {
        EdgeSet::full(self.ground_size)
    }

    pub fn circuits(&self) -> &[EdgeSet] {
        &self.circuits
    }

    pub fn len(&self) -> usize {
        self.circuits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.circuits.is_empty()
    }

    pub fn contains(&self, c: &EdgeSet) -> bool {
        self.circuits.binary_search(c).is_ok()
    }

    pub fn is_dependent(&self, x: &EdgeSet) -> bool {
        self.circuits.iter().any(|c| c.is_subset(x))
    }

    pub fn is_independent(&self, x: &EdgeSet) -> bool {
        !self.is_dependent(x)
    }

    /// Greedy rank; exact whenever the family is the circuit set of a matroid.
    pub fn rank(&self, x: &EdgeSet) -> usize {
        let relevant: Vec<&EdgeSet> = self.circuits.iter().filter(|c| c.is_subset(x)).collect();
        let mut basis = EdgeSet::new();
        for e in x {
            basis.insert(e);
            if relevant.iter().any(|c| c.contains(e) && c.is_subset(&basis)) {
                basis.remove(e);
            }
        }
        basis.len()
    }

    /// Matroid loops: elements forming a circuit on their own.
    pub fn loops(&self) -> EdgeSet {
        self.circuits
            .iter()
            .filter(|c| c.len() == 1)
            .map(|c| c.first().unwrap())
            .collect()
    }

    /// Circuits contained in `x`, ground set unchanged.
    pub fn restrict(&self, x: &EdgeSet) -> CircuitFamily {
        CircuitFamily {
            ground_size: self.ground_size,
            circuits: self.circuits.iter().filter(|c| c.is_subset(x)).cloned().collect(),
        }
    }
}

/// `x` together with every `e` lying in a circuit inside `x ∪ {e}`.
pub fn closure(cf: &CircuitFamily, x: &EdgeSet) -> EdgeSet {
    let mut out = x.clone();
    for c in cf.circuits() {
        let outside = c.difference(x);
        if outside.len() == 1 {
            out.union_with(&outside);
        }
    }
    out
}

/// Undirected link adjacency `(neighbour, edge)` of a graph.
pub(crate) fn link_adjacency(g: &Multigraph) -> Vec<Vec<(usize, usize)>> {
    let mut adj = vec![Vec::new(); g.vertex_count()];
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        if u != v {
            adj[u].push((v, e));
            adj[v].push((u, e));
        }
    }
    adj
}

/// Edge sets of the paths from `from` to `to` whose internal vertices avoid
/// both sets. Paths have at least one edge and `from`, `to` are disjoint.
pub(crate) fn linking_paths(adj: &[Vec<(usize, usize)>], from: &VertexSet, to: &VertexSet) -> Vec<EdgeSet> {
    fn dfs(
        adj: &[Vec<(usize, usize)>],
        u: usize,
        from: &VertexSet,
        to: &VertexSet,
        visited: &mut Vec<bool>,
        path: &mut EdgeSet,
        out: &mut Vec<EdgeSet>,
    ) {
        for &(w, e) in &adj[u] {
            if to.contains(w) {
                let mut p = path.clone();
                p.insert(e);
                out.push(p);
            } else if !from.contains(w) && !visited[w] {
                visited[w] = true;
                path.insert(e);
                dfs(adj, w, from, to, visited, path, out);
                path.remove(e);
                visited[w] = false;
            }
        }
    }
    let mut out = Vec::new();
    let mut visited = vec![false; adj.len()];
    for s in from {
        dfs(adj, s, from, to, &mut visited, &mut EdgeSet::new(), &mut out);
    }
    out
}

/// The circuits common to every biased-graphic matroid on `bg` (balanced
/// cycles, thetas with no balanced cycle, tight handcuffs) plus bracelets
/// `{i, j}` for which `bracelet` holds and loose handcuffs over bracelets for
/// which `handcuff` holds.
fn assemble(
    bg: &BiasedGraph,
    bracelet: &(dyn Fn(usize, usize) -> bool + Sync),
    handcuff: &(dyn Fn(usize, usize) -> bool + Sync),
) -> CircuitFamily {
    let space: &CycleSpace = bg.space();
    let g = space.graph();
    let adj = link_adjacency(g);
    let unbalanced = bg.unbalanced_cycle_indices();
    let mut circuits: Vec<EdgeSet> = bg.balanced_cycles();
    let rest: Vec<EdgeSet> = unbalanced
        .par_iter()
        .enumerate()
        .flat_map_iter(|(p, &i)| {
            let ci: &Cycle = space.cycle(i);
            let mut out = Vec::new();
            for &j in &unbalanced[p + 1..] {
                let cj = space.cycle(j);
                if ci.edges().intersects(cj.edges()) {
                    if let Some(k) = space.theta_third(i, j) {
                        if k > j && !bg.is_cycle_balanced(k) {
                            out.push(ci.edges().union(cj.edges()));
                        }
                    }
                } else if ci.meets(cj) {
                    if ci.vertices().intersection_len(cj.vertices()) == 1 {
                        out.push(ci.edges().union(cj.edges()));
                    }
                } else {
                    let pair = ci.edges().union(cj.edges());
                    if bracelet(i, j) {
                        out.push(pair.clone());
                    }
                    if handcuff(i, j) {
                        for path in linking_paths(&adj, ci.vertices(), cj.vertices()) {
                            out.push(pair.union(&path));
                        }
                    }
                }
            }
            out
        })
        .collect();
    circuits.extend(rest);
    CircuitFamily::new(g.edge_count(), circuits)
}

/// Circuits of M(G, B, L, F): balanced cycles, thetas with no cycle in B,
/// tight handcuffs, bracelets in L × L and loose handcuffs over bracelets in
/// F × F.
pub fn circuits(t: &Tripartition) -> Result<CircuitFamily> {
    t.require_proper()?;
    let bg = t.biased_graph();
    let both = |class: CycleClass| move |i: usize, j: usize| t.class(i) == class && t.class(j) == class;
    Ok(assemble(&bg, &both(CycleClass::Lift), &both(CycleClass::Frame)))
}

pub fn frame_circuits(bg: &BiasedGraph) -> CircuitFamily {
    assemble(bg, &|_, _| false, &|_, _| true)
}

pub fn lift_circuits(bg: &BiasedGraph) -> CircuitFamily {
    assemble(bg, &|_, _| true, &|_, _| false)
}

/// C(G, B, χ) for a proper bracelet function.
pub fn circuits_chi(bg: &BiasedGraph, chi: &BraceletFunction) -> Result<CircuitFamily> {
    check_proper(bg, chi)?;
    circuits_chi_unchecked(bg, chi)
}

/// C(G, B, χ) without the propriety check; χ must still be total.
pub fn circuits_chi_unchecked(bg: &BiasedGraph, chi: &BraceletFunction) -> Result<CircuitFamily> {
    let space = bg.space();
    let mut values: HashMap<(usize, usize), BraceletValue> = HashMap::new();
    for (i, j) in crate::bracelets::bracelet_pairs(bg) {
        let b = Bracelet::new(space.cycle(i).edges().clone(), space.cycle(j).edges().clone());
        let v = chi.get(&b).ok_or(Error::BraceletFunctionNotTotal(b))?;
        values.insert((i, j), v);
    }
    let dependent = |i, j| values[&(i, j)] == BraceletValue::Dependent;
    let independent = |i, j| values[&(i, j)] == BraceletValue::Independent;
    Ok(assemble(bg, &dependent, &independent))
}

/// A matroid rank function on `0..ground_size`.
pub trait RankFunction {
    fn ground_size(&self) -> usize;
    fn rank(&self, x: &EdgeSet) -> usize;
}

impl RankFunction for CircuitFamily {
    fn ground_size(&self) -> usize {
        self.ground_size
    }

    fn rank(&self, x: &EdgeSet) -> usize {
        CircuitFamily::rank(self, x)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RankKind {
    Quasi,
    Frame,
    Lift,
}

/// Closed-form rank over a cycle space with classified cycles.
#[derive(Clone, Debug)]
pub struct RankOracle {
    space: Arc<CycleSpace>,
    classes: Vec<CycleClass>,
    kind: RankKind,
}

/// Quantities entering the rank formulas.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SubgraphCounts {
    pub vertices: usize,
    pub components: usize,
    pub balanced_components: usize,
    pub has_lift_cycle: bool,
    pub has_frame_cycle: bool,
}

impl SubgraphCounts {
    pub fn has_unbalanced_cycle(&self) -> bool {
        self.has_lift_cycle || self.has_frame_cycle
    }
}

impl RankOracle {
    pub fn new(t: &Tripartition) -> Self {
        Self {
            space: t.space().clone(),
            classes: t.classes().to_vec(),
            kind: RankKind::Quasi,
        }
    }

    /// The frame matroid F(G, B).
    pub fn frame(bg: &BiasedGraph) -> Self {
        Self::from_bias(bg, RankKind::Frame)
    }

    /// The lift matroid L(G, B).
    pub fn lift(bg: &BiasedGraph) -> Self {
        Self::from_bias(bg, RankKind::Lift)
    }

    fn from_bias(bg: &BiasedGraph, kind: RankKind) -> Self {
        let classes = bg
            .balanced_flags()
            .iter()
            .map(|&b| if b { CycleClass::Balanced } else { CycleClass::Frame })
            .collect();
        Self {
            space: bg.space().clone(),
            classes,
            kind,
        }
    }

    pub fn kind(&self) -> RankKind {
        self.kind
    }

    pub fn graph(&self) -> &Multigraph {
        self.space.graph()
    }

    pub fn counts(&self, x: &EdgeSet) -> SubgraphCounts {
        let g = self.space.graph();
        let mut uf = UnionFind::new(g.vertex_count());
        let mut vertices = VertexSet::new();
        let mut components = 0usize;
        for e in x {
            let (u, v) = g.endpoints(e);
            for w in [u, v] {
                if vertices.insert(w) {
                    components += 1;
                }
            }
            if uf.union(u, v) {
                components -= 1;
            }
        }
        let mut unbalanced_roots = VertexSet::new();
        let (mut has_l, mut has_f) = (false, false);
        for (i, c) in self.space.cycles().iter().enumerate() {
            if self.classes[i] == CycleClass::Balanced || !c.edges().is_subset(x) {
                continue;
            }
            match self.classes[i] {
                CycleClass::Lift => has_l = true,
                _ => has_f = true,
            }
            unbalanced_roots.insert(uf.find(c.vertices().first().unwrap()));
        }
        SubgraphCounts {
            vertices: vertices.len(),
            components,
            balanced_components: components - unbalanced_roots.len(),
            has_lift_cycle: has_l,
            has_frame_cycle: has_f,
        }
    }

    /// `|V(X)| - b(X)`.
    pub fn rank_frame(&self, x: &EdgeSet) -> usize {
        let c = self.counts(x);
        c.vertices - c.balanced_components
    }

    /// `|V(X)| - c(X) + l(X)` with `l(X) = 1` iff `G[X]` has an unbalanced cycle.
    pub fn rank_lift(&self, x: &EdgeSet) -> usize {
        let c = self.counts(x);
        c.vertices - c.components + usize::from(c.has_unbalanced_cycle())
    }

    /// Frame rank if `G[X]` has a cycle in F, otherwise
    /// `|V(X)| - c(X) + l(X)` with `l(X) = 1` iff `G[X]` has a cycle in L.
    pub fn rank(&self, x: &EdgeSet) -> usize {
        let c = self.counts(x);
        match self.kind {
            RankKind::Frame => c.vertices - c.balanced_components,
            RankKind::Lift => c.vertices - c.components + usize::from(c.has_unbalanced_cycle()),
            RankKind::Quasi => {
                if c.has_frame_cycle {
                    c.vertices - c.balanced_components
                } else {
                    c.vertices - c.components + usize::from(c.has_lift_cycle)
                }
            }
        }
    }
}

impl RankFunction for RankOracle {
    fn ground_size(&self) -> usize {
        self.space.graph().edge_count()
    }

    fn rank(&self, x: &EdgeSet) -> usize {
        RankOracle::rank(self, x)
    }
}

/// Independence by subgraph structure: `G[X]` is a forest, or has exactly one
/// cycle and it is in L, or each component has at most one cycle and every
/// cycle is in F.
pub fn is_independent(t: &Tripartition, x: &EdgeSet) -> bool {
    let space = t.space();
    let inside: Vec<usize> = space.cycles_within(x).collect();
    match inside.as_slice() {
        [] => true,
        [i] if t.class(*i) == CycleClass::Lift => true,
        _ => {
            if inside.iter().any(|&i| t.class(i) != CycleClass::Frame) {
                return false;
            }
            // At most one cycle per component.
            let g = t.graph();
            let mut uf = UnionFind::new(g.vertex_count());
            for e in x {
                let (u, v) = g.endpoints(e);
                uf.union(u, v);
            }
            let mut seen = VertexSet::new();
            inside
                .iter()
                .all(|&i| seen.insert(uf.find(space.cycle(i).vertices().first().unwrap())))
        }
    }
}

/// Default bound on `|E|` for exhaustive base enumeration.
pub const DEFAULT_BASES_CAP: usize = 24;

/// All bases, each of size `r(E)`.
pub fn bases(t: &Tripartition, cap: usize) -> Result<Vec<EdgeSet>> {
    t.require_proper()?;
    let m = t.graph().edge_count();
    if m > cap {
        return Err(Error::GroundSetTooLarge { size: m, cap });
    }
    let r = RankOracle::new(t).rank(&t.graph().edge_set());
    let mut out = Vec::new();
    fn rec(t: &Tripartition, m: usize, r: usize, e: usize, cur: &mut EdgeSet, out: &mut Vec<EdgeSet>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        if e == m || cur.len() + (m - e) < r {
            return;
        }
        cur.insert(e);
        if is_independent(t, cur) {
            rec(t, m, r, e + 1, cur, out);
        }
        cur.remove(e);
        rec(t, m, r, e + 1, cur, out);
    }
    rec(t, m, r, 0, &mut EdgeSet::new(), &mut out);
    out.sort();
    Ok(out)
}

/// Which of the four cocircuit forms produced a candidate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CocircuitForm {
    BalancingSet,
    BalancedUnbalancedBond,
    LiftBond,
    FrameSatellites,
}

/// Default bound on `|V|` for the vertex-subset scans in [`cocircuits`].
pub const COCIRCUIT_VERTEX_CAP: usize = 20;

/// Cocircuits of a proper tripartition with neither side degenerate, built
/// from the four structural forms and each confirmed as the complement of a
/// hyperplane with the closed-form rank.
pub fn cocircuits(t: &Tripartition) -> Result<Vec<EdgeSet>> {
    let mut out: Vec<EdgeSet> = cocircuit_candidates(t)?
        .into_iter()
        .filter(|(_, c)| is_cocircuit_by_rank(&RankOracle::new(t), c))
        .map(|(_, c)| c)
        .collect();
    out.sort();
    out.dedup();
    Ok(out)
}

/// `E - C` has rank `r(E) - 1` and adding back any element of `C` restores it.
pub fn is_cocircuit_by_rank(rank: &impl RankFunction, c: &EdgeSet) -> bool {
    let ground = EdgeSet::full(rank.ground_size());
    let r = rank.rank(&ground);
    let rest = ground.difference(c);
    if c.is_empty() || rank.rank(&rest) + 1 != r {
        return false;
    }
    c.iter().all(|e| {
        let mut y = rest.clone();
        y.insert(e);
        rank.rank(&y) == r
    })
}

/// The unfiltered structural candidates, tagged by form.
pub fn cocircuit_candidates(t: &Tripartition) -> Result<Vec<(CocircuitForm, EdgeSet)>> {
    t.require_proper()?;
    for side in [Side::L, Side::F] {
        if t.is_degenerate(side) {
            return Err(Error::DegenerateTripartition(side));
        }
    }
    let g = t.graph();
    let n = g.vertex_count();
    if n > COCIRCUIT_VERTEX_CAP {
        return Err(Error::GroundSetTooLarge {
            size: n,
            cap: COCIRCUIT_VERTEX_CAP,
        });
    }
    let all = g.all_vertices();
    if components(g, &g.edge_set()).len() != 1 || g.vertices_of(&g.edge_set()) != all {
        return Err(Error::DisconnectedGraph);
    }
    let bg = t.biased_graph();
    let space = t.space();
    let m = g.edge_count();
    let unbalanced_within = |x: &EdgeSet| -> Vec<usize> {
        space
            .cycles_within(x)
            .filter(|&i| t.class(i) != CycleClass::Balanced)
            .collect()
    };

    let mut out: Vec<(CocircuitForm, EdgeSet)> = crate::bias::minimal_balancing_sets(&bg, None)?
        .into_iter()
        .map(|c| (CocircuitForm::BalancingSet, c))
        .collect();

    for mask in 1u64..(1u64 << n) - 1 {
        let s = VertexSet::from_mask(mask);
        let x_edges = g.induced_edges(&s);
        if !vertex_set_connected(g, &s, &x_edges) {
            continue;
        }
        let rest = all.difference(&s);
        let cut: EdgeSet = (0..m)
            .filter(|&e| {
                let (u, v) = g.endpoints(e);
                s.contains(u) != s.contains(v)
            })
            .collect();
        let y_edges = g.induced_edges(&rest);
        let x_unbalanced = unbalanced_within(&x_edges);
        let y_unbalanced = unbalanced_within(&y_edges);

        // Bonds, each visited once from the side containing vertex 0.
        if mask & 1 == 1 && vertex_set_connected(g, &rest, &y_edges) {
            match (x_unbalanced.is_empty(), y_unbalanced.is_empty()) {
                (true, false) | (false, true) => out.push((CocircuitForm::BalancedUnbalancedBond, cut.clone())),
                (false, false) => {
                    if x_unbalanced
                        .iter()
                        .chain(&y_unbalanced)
                        .all(|&i| t.class(i) == CycleClass::Lift)
                    {
                        out.push((CocircuitForm::LiftBond, cut.clone()));
                    }
                }
                (true, true) => {}
            }
        }

        // X = G[S]; every component of G[V - S] unbalanced with its unbalanced
        // cycles in F.
        let ys = vertex_components(g, &rest);
        let ys_ok = ys.iter().all(|y| {
            let unb = unbalanced_within(&g.induced_edges(y));
            !unb.is_empty() && unb.iter().all(|&i| t.class(i) == CycleClass::Frame)
        });
        if !ys_ok {
            continue;
        }
        // B is empty exactly when X is already balanced.
        let balancing = if x_unbalanced.is_empty() {
            vec![EdgeSet::new()]
        } else {
            let sets: Vec<&EdgeSet> = x_unbalanced.iter().map(|&i| space.cycle(i).edges()).collect();
            minimal_transversals(sets, m)?
        };
        for b in balancing {
            out.push((CocircuitForm::FrameSatellites, cut.union(&b)));
        }
    }
    Ok(out)
}

/// Whether the vertex set `s` induces a connected subgraph, using the edges
/// `edges` (all inside `s`).
fn vertex_set_connected(g: &Multigraph, s: &VertexSet, edges: &EdgeSet) -> bool {
    let Some(first) = s.first() else {
        return false;
    };
    let mut uf = UnionFind::new(g.vertex_count());
    for e in edges {
        let (u, v) = g.endpoints(e);
        uf.union(u, v);
    }
    let r = uf.find(first);
    s.iter().all(|v| uf.find(v) == r)
}

/// Vertex sets of the components of `G[s]`, isolated vertices included.
fn vertex_components(g: &Multigraph, s: &VertexSet) -> Vec<VertexSet> {
    let mut uf = UnionFind::new(g.vertex_count());
    for e in &g.induced_edges(s) {
        let (u, v) = g.endpoints(e);
        uf.union(u, v);
    }
    let mut by_root: std::collections::BTreeMap<usize, VertexSet> = Default::default();
    for v in s {
        by_root.entry(uf.find(v)).or_default().insert(v);
    }
    by_root.into_values().collect()
}

/// A failed framework condition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "condition", rename_all = "snake_case")]
pub enum FrameworkViolation {
    GroundSet {
        matroid: usize,
        graph: usize,
    },
    ComponentRank {
        component: EdgeSet,
        rank: usize,
        vertices: usize,
    },
    Closure {
        vertex: usize,
        element: usize,
    },
    CircuitComponents {
        circuit: EdgeSet,
        components: usize,
    },
}

/// Checks that `g` is a framework for the matroid with circuits `cf`:
/// matching ground sets, `r(E(H)) <= |V(H)|` per component `H`,
/// `cl(E(G - v)) ⊆ E(G - v) ∪ loops(v)` for every vertex, and at most two
/// components induced by every circuit.
pub fn framework_check(cf: &CircuitFamily, g: &Multigraph) -> Vec<FrameworkViolation> {
    let mut out = Vec::new();
    if cf.ground_size() != g.edge_count() {
        out.push(FrameworkViolation::GroundSet {
            matroid: cf.ground_size(),
            graph: g.edge_count(),
        });
        return out;
    }
    for comp in components(g, &g.edge_set()) {
        let rank = cf.rank(&comp);
        let vertices = g.vertices_of(&comp).len();
        if rank > vertices {
            out.push(FrameworkViolation::ComponentRank {
                component: comp,
                rank,
                vertices,
            });
        }
    }
    for v in 0..g.vertex_count() {
        let incident = g.incident(v);
        let away = g.edge_set().difference(&incident);
        let allowed = away.union(&g.loops_at(v));
        let cl = closure(cf, &away);
        if let Some(element) = cl.difference(&allowed).first() {
            out.push(FrameworkViolation::Closure { vertex: v, element });
        }
    }
    for c in cf.circuits() {
        let k = components(g, c).len();
        if k > 2 {
            out.push(FrameworkViolation::CircuitComponents {
                circuit: c.clone(),
                components: k,
            });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::DEFAULT_CYCLE_LIMIT;

    fn space(g: Multigraph) -> Arc<CycleSpace> {
        CycleSpace::new(g, DEFAULT_CYCLE_LIMIT).unwrap()
    }

    fn set(v: &[usize]) -> EdgeSet {
        v.iter().copied().collect()
    }

    /// Brute-force rank from a circuit family: largest circuit-free subset.
    fn brute_rank(cf: &CircuitFamily, x: &EdgeSet) -> usize {
        let elems = x.to_vec();
        let mut best = 0;
        for mask in 0u64..1 << elems.len() {
            let s: EdgeSet = elems
                .iter()
                .enumerate()
                .filter(|(k, _)| mask >> k & 1 == 1)
                .map(|(_, &e)| e)
                .collect();
            if cf.is_independent(&s) {
                best = best.max(s.len());
            }
        }
        best
    }

    #[test]
    fn balanced_graph_gives_graphic_matroid() {
        let sp = space(Multigraph::complete(4));
        let bg = BiasedGraph::all_balanced(sp.clone());
        let t = Tripartition::degenerate(&bg, Side::F);
        let cf = circuits(&t).unwrap();
        let cycles: Vec<EdgeSet> = sp.cycles().iter().map(|c| c.edges().clone()).collect();
        assert_eq!(cf.circuits(), cycles.as_slice());
        assert_eq!(RankOracle::new(&t).rank(&t.graph().edge_set()), 3);
    }

    #[test]
    fn rank_examples() {
        let sp = space(Multigraph::complete(4));
        let bg = BiasedGraph::empty_bias(sp);
        let t = Tripartition::degenerate(&bg, Side::F);
        let oracle = RankOracle::new(&t);
        assert_eq!(oracle.rank(&t.graph().edge_set()), 4);
        assert_eq!(oracle.rank(&EdgeSet::new()), 0);
    }

    #[test]
    fn k6_degenerate_sides() {
        let bg = BiasedGraph::empty_bias(space(Multigraph::complete(6)));
        let frame = circuits(&Tripartition::degenerate(&bg, Side::F)).unwrap();
        let lift = circuits(&Tripartition::degenerate(&bg, Side::L)).unwrap();
        let g = bg.graph();
        let shape = |c: &EdgeSet| crate::graph::classify_subgraph(g, c);
        assert!(!frame
            .circuits()
            .iter()
            .any(|c| matches!(shape(c), crate::graph::SubgraphShape::Bracelet { .. })));
        assert!(frame
            .circuits()
            .iter()
            .any(|c| matches!(shape(c), crate::graph::SubgraphShape::LooseHandcuff { .. })));
        assert!(lift
            .circuits()
            .iter()
            .any(|c| matches!(shape(c), crate::graph::SubgraphShape::Bracelet { .. })));
        assert!(!lift
            .circuits()
            .iter()
            .any(|c| matches!(shape(c), crate::graph::SubgraphShape::LooseHandcuff { .. })));
        assert_eq!(frame, frame_circuits(&bg));
        assert_eq!(lift, lift_circuits(&bg));
        assert_eq!(
            RankOracle::new(&Tripartition::degenerate(&bg, Side::F)).rank(&g.edge_set()),
            6
        );
    }

    #[test]
    fn rank_matches_circuits_on_small_multigraph() {
        let g = Multigraph::new(4, vec![(0, 1), (0, 1), (1, 2), (2, 3), (3, 0), (2, 2), (0, 0), (1, 3)]).unwrap();
        let bg = BiasedGraph::empty_bias(space(g));
        for t in crate::tripartition::proper_tripartitions(&bg, 8).unwrap() {
            let cf = circuits(&t).unwrap();
            let oracle = RankOracle::new(&t);
            for mask in 0u64..1 << 8 {
                let x = EdgeSet::from_mask(mask);
                assert_eq!(oracle.rank(&x), brute_rank(&cf, &x), "{x:?}");
                assert_eq!(is_independent(&t, &x), cf.is_independent(&x), "{x:?}");
            }
        }
    }

    #[test]
    fn independence_examples() {
        let g = Multigraph::new(6, vec![(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (2, 3)]).unwrap();
        let bg = BiasedGraph::empty_bias(space(g));
        let l = Tripartition::degenerate(&bg, Side::L);
        let f = Tripartition::degenerate(&bg, Side::F);
        let bracelet = set(&[0, 1, 2, 3, 4, 5]);
        assert!(!is_independent(&l, &bracelet));
        assert!(is_independent(&f, &bracelet));
        assert!(is_independent(&l, &set(&[0, 1, 6, 3])));
    }

    #[test]
    fn bases_have_full_rank() {
        let bg = BiasedGraph::empty_bias(space(Multigraph::complete(4)));
        let t = Tripartition::degenerate(&bg, Side::F);
        let bs = bases(&t, 12).unwrap();
        // With no balanced cycles the bases of K_4 are its spanning unicyclic
        // subgraphs.
        let direct = (0u64..1 << 6)
            .filter(|m| m.count_ones() == 4)
            .map(EdgeSet::from_mask)
            .filter(|x| {
                let g = t.graph();
                g.vertices_of(x).len() == 4 && crate::graph::components(g, x).len() == 1
            })
            .count();
        assert_eq!(bs.len(), direct);
        assert!(matches!(bases(&t, 3), Err(Error::GroundSetTooLarge { .. })));
    }

    #[test]
    fn closure_examples() {
        let bg = BiasedGraph::all_balanced(space(Multigraph::new(3, vec![(0, 1), (1, 2), (2, 0), (1, 1)]).unwrap()));
        let cf = circuits(&Tripartition::degenerate(&bg, Side::F)).unwrap();
        assert_eq!(closure(&cf, &EdgeSet::new()), set(&[3]));
        assert_eq!(cf.loops(), set(&[3]));
        assert_eq!(closure(&cf, &set(&[0, 1])), set(&[0, 1, 2, 3]));
        let x = set(&[0]);
        assert_eq!(closure(&cf, &closure(&cf, &x)), closure(&cf, &x));
    }

    #[test]
    fn framework_of_balanced_graph() {
        let bg = BiasedGraph::all_balanced(space(Multigraph::complete(4)));
        let cf = circuits(&Tripartition::degenerate(&bg, Side::F)).unwrap();
        assert!(framework_check(&cf, bg.graph()).is_empty());
        let wrong = CircuitFamily::new(5, vec![]);
        assert!(!framework_check(&wrong, bg.graph()).is_empty());
    }

    fn brute_cocircuits(oracle: &RankOracle, m: usize) -> Vec<EdgeSet> {
        let ground = EdgeSet::full(m);
        let r = oracle.rank(&ground);
        let sets = (1u64..1 << m)
            .map(EdgeSet::from_mask)
            .filter(|c| oracle.rank(&ground.difference(c)) < r)
            .collect();
        CircuitFamily::from_minimal(m, sets).circuits().to_vec()
    }

    /// Doubled 4-cycle a b d c: digons ab, cd in L and ac, bd in F, so both
    /// sides hold a vertex-disjoint pair while every L cycle meets every F
    /// cycle.
    fn doubled_square(extra: &[(usize, usize)]) -> BiasedGraph {
        let mut edges = vec![(0, 1), (0, 1), (2, 3), (2, 3), (0, 2), (0, 2), (1, 3), (1, 3)];
        edges.extend_from_slice(extra);
        BiasedGraph::empty_bias(space(Multigraph::new(4, edges).unwrap()))
    }

    #[test]
    fn cocircuits_match_brute_force() {
        use rand::SeedableRng;
        let mut checked = 0;
        for extra in [&[][..], &[(1, 2)], &[(1, 2), (0, 3)]] {
            let bg = doubled_square(extra);
            let m = bg.graph().edge_count();
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
            for _ in 0..40 {
                let t = crate::tripartition::random_proper_tripartition(&bg, &mut rng);
                if !t.is_nondegenerate() {
                    continue;
                }
                let oracle = RankOracle::new(&t);
                assert_eq!(cocircuits(&t).unwrap(), brute_cocircuits(&oracle, m));
                checked += 1;
            }
        }
        assert!(checked > 10, "{checked}");
    }

    #[test]
    fn degenerate_inputs_refused_by_cocircuits() {
        let bg = BiasedGraph::empty_bias(space(Multigraph::complete(4)));
        assert!(matches!(
            cocircuits(&Tripartition::degenerate(&bg, Side::F)),
            Err(Error::DegenerateTripartition(Side::L))
        ));
    }

    #[test]
    fn structural_candidates_all_pass_rank_check() {
        use rand::SeedableRng;
        let bg = doubled_square(&[(1, 2), (0, 3)]);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let mut forms = std::collections::BTreeSet::new();
        for _ in 0..40 {
            let t = crate::tripartition::random_proper_tripartition(&bg, &mut rng);
            if !t.is_nondegenerate() {
                continue;
            }
            let oracle = RankOracle::new(&t);
            for (form, c) in cocircuit_candidates(&t).unwrap() {
                assert!(is_cocircuit_by_rank(&oracle, &c), "{form:?} {c:?}");
                forms.insert(format!("{form:?}"));
            }
        }
        assert_eq!(forms.len(), 4);
    }
}
