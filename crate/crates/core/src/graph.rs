//! Multigraphs, cycle enumeration and structural classification of edge sets.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::bitset::{EdgeSet, VertexSet};
use crate::error::{Error, Result};

/// Default bound on the number of cycles [`enumerate_cycles`] will materialise.
pub const DEFAULT_CYCLE_LIMIT: usize = 1_000_000;

/// An undirected multigraph. Loops are edges `(v, v)`; parallel edges are
/// repeated entries. An edge is identified by its position in the list.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "crate::io::GraphJson", into = "crate::io::GraphJson")]
pub struct Multigraph {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
}

impl Multigraph {
    pub fn new(vertex_count: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        for (i, &(u, v)) in edges.iter().enumerate() {
            if u >= vertex_count || v >= vertex_count {
                return Err(Error::InvalidGraph(format!(
                    "edge {i} = ({u}, {v}) has an endpoint outside 0..{vertex_count}"
                )));
            }
        }
        Ok(Self { vertex_count, edges })
    }

    pub fn complete(n: usize) -> Self {
        let mut edges = Vec::with_capacity(n * n.saturating_sub(1) / 2);
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        Self { vertex_count: n, edges }
    }

    /// The cycle `0 - 1 - ... - (n-1) - 0`; for `n == 1` a single loop and for
    /// `n == 2` a digon.
    pub fn cycle(n: usize) -> Self {
        let edges = (0..n).map(|i| (i.min((i + 1) % n), i.max((i + 1) % n))).collect();
        Self { vertex_count: n, edges }
    }

    pub fn path(n: usize) -> Self {
        Self {
            vertex_count: n,
            edges: (1..n).map(|i| (i - 1, i)).collect(),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn endpoints(&self, e: usize) -> (usize, usize) {
        self.edges[e]
    }

    pub fn is_loop(&self, e: usize) -> bool {
        let (u, v) = self.edges[e];
        u == v
    }

    pub fn edge_set(&self) -> EdgeSet {
        EdgeSet::full(self.edges.len())
    }

    pub fn all_vertices(&self) -> VertexSet {
        VertexSet::full(self.vertex_count)
    }

    pub fn check_edge_set(&self, x: &EdgeSet) -> Result<()> {
        match x.last() {
            Some(m) if m >= self.edges.len() => Err(Error::InvalidEdge {
                edge: m,
                edge_count: self.edges.len(),
            }),
            _ => Ok(()),
        }
    }

    /// `V(X)`: vertices incident with an edge of `x`.
    pub fn vertices_of(&self, x: &EdgeSet) -> VertexSet {
        let mut vs = VertexSet::new();
        for e in x {
            let (u, v) = self.edges[e];
            vs.insert(u);
            vs.insert(v);
        }
        vs
    }

    /// All edges incident with `v`, loops included.
    pub fn incident(&self, v: usize) -> EdgeSet {
        self.edges
            .iter()
            .enumerate()
            .filter(|(_, &(a, b))| a == v || b == v)
            .map(|(i, _)| i)
            .collect()
    }

    /// The star at `v`: non-loop edges incident with `v`.
    pub fn star(&self, v: usize) -> EdgeSet {
        self.edges
            .iter()
            .enumerate()
            .filter(|(_, &(a, b))| a != b && (a == v || b == v))
            .map(|(i, _)| i)
            .collect()
    }

    pub fn loops_at(&self, v: usize) -> EdgeSet {
        self.edges
            .iter()
            .enumerate()
            .filter(|(_, &(a, b))| a == v && b == v)
            .map(|(i, _)| i)
            .collect()
    }

    /// Edges with both ends in `vs`.
    pub fn induced_edges(&self, vs: &VertexSet) -> EdgeSet {
        self.edges
            .iter()
            .enumerate()
            .filter(|(_, &(a, b))| vs.contains(a) && vs.contains(b))
            .map(|(i, _)| i)
            .collect()
    }

    /// Degree of every vertex in `G[X]`; a loop counts twice.
    pub fn degrees(&self, x: &EdgeSet) -> Vec<usize> {
        let mut deg = vec![0; self.vertex_count];
        for e in x {
            let (u, v) = self.edges[e];
            deg[u] += 1;
            deg[v] += 1;
        }
        deg
    }

    fn link_adjacency(&self, x: &EdgeSet) -> Vec<Vec<(usize, usize)>> {
        let mut adj = vec![Vec::new(); self.vertex_count];
        for e in x {
            let (u, v) = self.edges[e];
            if u != v {
                adj[u].push((v, e));
                adj[v].push((u, e));
            }
        }
        adj
    }
}

/// A connected 2-regular edge set. Loops are cycles of size one and a pair of
/// parallel edges is a cycle of size two.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Cycle {
    edges: EdgeSet,
    #[serde(skip)]
    vertices: VertexSet,
}

impl Cycle {
    /// Checks the cycle invariant and builds the cycle.
    pub fn from_edges(g: &Multigraph, edges: EdgeSet) -> Result<Self> {
        g.check_edge_set(&edges)?;
        if !is_cycle(g, &edges) {
            return Err(Error::NotACycle(edges));
        }
        let vertices = g.vertices_of(&edges);
        Ok(Self { edges, vertices })
    }

    pub(crate) fn new_unchecked(g: &Multigraph, edges: EdgeSet) -> Self {
        let vertices = g.vertices_of(&edges);
        Self { edges, vertices }
    }

    pub fn edges(&self) -> &EdgeSet {
        &self.edges
    }

    pub fn vertices(&self) -> &VertexSet {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn meets(&self, other: &Cycle) -> bool {
        self.vertices.intersects(&other.vertices)
    }
}

impl Ord for Cycle {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.edges.cmp(&other.edges)
    }
}

impl PartialOrd for Cycle {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Whether `x` is non-empty, connected and every vertex of `V(X)` has degree 2.
pub fn is_cycle(g: &Multigraph, x: &EdgeSet) -> bool {
    if x.is_empty() {
        return false;
    }
    let deg = g.degrees(x);
    g.vertices_of(x).iter().all(|v| deg[v] == 2) && components(g, x).len() == 1
}

/// Every cycle of `g`, sorted by edge set.
pub fn enumerate_cycles(g: &Multigraph, limit: usize) -> Result<Vec<Cycle>> {
    enumerate_cycles_within(g, &g.edge_set(), None, limit)
}

/// Cycles of the subgraph `G[X]`, optionally restricted to at most `max_len`
/// edges. The search runs block by block.
pub fn enumerate_cycles_within(
    g: &Multigraph,
    x: &EdgeSet,
    max_len: Option<usize>,
    limit: usize,
) -> Result<Vec<Cycle>> {
    let max_len = max_len.unwrap_or(usize::MAX);
    let mut out: Vec<EdgeSet> = Vec::new();
    let push = |out: &mut Vec<EdgeSet>, c: EdgeSet| -> Result<()> {
        if out.len() >= limit {
            return Err(Error::CycleLimitExceeded { limit });
        }
        out.push(c);
        Ok(())
    };

    for e in x {
        if g.is_loop(e) && max_len >= 1 {
            push(&mut out, EdgeSet::singleton(e))?;
        }
    }

    for block in blocks_within(g, x) {
        if block.len() < 2 || g.is_loop(block.first().unwrap()) {
            continue;
        }
        // Underlying simple graph of the block, with the parallel classes kept.
        let mut parallel: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
        for e in &block {
            let (u, v) = g.endpoints(e);
            parallel.entry((u.min(v), u.max(v))).or_default().push(e);
        }
        if max_len >= 2 {
            for class in parallel.values() {
                for i in 0..class.len() {
                    for j in i + 1..class.len() {
                        push(&mut out, [class[i], class[j]].into_iter().collect())?;
                    }
                }
            }
        }
        if max_len < 3 {
            continue;
        }
        let mut nbrs: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for &(u, v) in parallel.keys() {
            nbrs.entry(u).or_default().push(v);
            nbrs.entry(v).or_default().push(u);
        }
        let mut search = SimpleCycleSearch {
            nbrs: &nbrs,
            parallel: &parallel,
            path: Vec::new(),
            on_path: vec![false; g.vertex_count()],
            max_len,
        };
        for &s in nbrs.keys() {
            search.path.push(s);
            search.on_path[s] = true;
            search.extend(s, &mut |c| push(&mut out, c))?;
            search.on_path[s] = false;
            search.path.pop();
        }
    }

    out.sort();
    Ok(out.into_iter().map(|edges| Cycle::new_unchecked(g, edges)).collect())
}

struct SimpleCycleSearch<'a> {
    nbrs: &'a BTreeMap<usize, Vec<usize>>,
    parallel: &'a BTreeMap<(usize, usize), Vec<usize>>,
    path: Vec<usize>,
    on_path: Vec<bool>,
    max_len: usize,
}

impl SimpleCycleSearch<'_> {
    /// Extends the current path from its last vertex. Cycles are reported from
    /// their least vertex `path[0]`, in the direction with `path[1] < last`.
    fn extend(&mut self, start: usize, emit: &mut dyn FnMut(EdgeSet) -> Result<()>) -> Result<()> {
        let u = *self.path.last().unwrap();
        let nbrs = self.nbrs;
        for &w in &nbrs[&u] {
            if w == start && self.path.len() >= 3 && self.path[1] < u {
                self.emit_choices(emit)?;
            }
            if w <= start || self.on_path[w] || self.path.len() >= self.max_len {
                continue;
            }
            self.path.push(w);
            self.on_path[w] = true;
            self.extend(start, emit)?;
            self.on_path[w] = false;
            self.path.pop();
        }
        Ok(())
    }

    fn emit_choices(&self, emit: &mut dyn FnMut(EdgeSet) -> Result<()>) -> Result<()> {
        let k = self.path.len();
        let classes: Vec<&Vec<usize>> = (0..k)
            .map(|i| {
                let (a, b) = (self.path[i], self.path[(i + 1) % k]);
                &self.parallel[&(a.min(b), a.max(b))]
            })
            .collect();
        let mut choice = vec![0usize; k];
        loop {
            emit(classes.iter().zip(&choice).map(|(c, &i)| c[i]).collect())?;
            let mut i = 0;
            while i < k {
                choice[i] += 1;
                if choice[i] < classes[i].len() {
                    break;
                }
                choice[i] = 0;
                i += 1;
            }
            if i == k {
                return Ok(());
            }
        }
    }
}

/// A graph together with its materialised cycles, indexed by edge set.
#[derive(Clone, Debug)]
pub struct CycleSpace {
    graph: Multigraph,
    cycles: Vec<Cycle>,
    lookup: HashMap<EdgeSet, usize>,
    complete: bool,
}

impl CycleSpace {
    pub fn new(graph: Multigraph, limit: usize) -> Result<Arc<Self>> {
        let cycles = enumerate_cycles(&graph, limit)?;
        Ok(Arc::new(Self::build(graph, cycles, true)))
    }

    /// Only cycles with at most `max_len` edges. Operations that rely on the
    /// whole cycle space (theta closure, propriety) treat missing cycles as
    /// absent; see [`CycleSpace::is_complete`].
    pub fn with_max_len(graph: Multigraph, max_len: usize, limit: usize) -> Result<Arc<Self>> {
        let cycles = enumerate_cycles_within(&graph, &graph.edge_set(), Some(max_len), limit)?;
        let complete = max_len >= graph.edge_count();
        Ok(Arc::new(Self::build(graph, cycles, complete)))
    }

    /// From cycle edge sets already known to be the cycles of `graph`.
    pub(crate) fn from_cycle_sets(graph: Multigraph, mut sets: Vec<EdgeSet>, complete: bool) -> Arc<Self> {
        sets.sort();
        sets.dedup();
        let cycles = sets.into_iter().map(|e| Cycle::new_unchecked(&graph, e)).collect();
        Arc::new(Self::build(graph, cycles, complete))
    }

    fn build(graph: Multigraph, cycles: Vec<Cycle>, complete: bool) -> Self {
        let lookup = cycles.iter().enumerate().map(|(i, c)| (c.edges().clone(), i)).collect();
        Self {
            graph,
            cycles,
            lookup,
            complete,
        }
    }

    pub fn graph(&self) -> &Multigraph {
        &self.graph
    }

    pub fn cycles(&self) -> &[Cycle] {
        &self.cycles
    }

    pub fn cycle(&self, i: usize) -> &Cycle {
        &self.cycles[i]
    }

    pub fn len(&self) -> usize {
        self.cycles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cycles.is_empty()
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn index_of(&self, edges: &EdgeSet) -> Option<usize> {
        self.lookup.get(edges).copied()
    }

    /// Index of `edges`, or `NotACycle`.
    pub fn require(&self, edges: &EdgeSet) -> Result<usize> {
        self.index_of(edges).ok_or_else(|| Error::NotACycle(edges.clone()))
    }

    /// Indices of cycles contained in `x`.
    pub fn cycles_within<'a>(&'a self, x: &'a EdgeSet) -> impl Iterator<Item = usize> + 'a {
        self.cycles
            .iter()
            .enumerate()
            .filter(move |(_, c)| c.edges().is_subset(x))
            .map(|(i, _)| i)
    }

    /// If cycles `i` and `j` share an edge and together form a theta, the
    /// index of its third cycle.
    pub fn theta_third(&self, i: usize, j: usize) -> Option<usize> {
        let (a, b) = (&self.cycles[i], &self.cycles[j]);
        if i == j || !a.edges().intersects(b.edges()) {
            return None;
        }
        // The union of two cycles is connected once they share an edge.
        let beta = a.edges().union_len(b.edges()) + 1 - a.vertices().union_len(b.vertices());
        if beta != 2 {
            return None;
        }
        self.index_of(&a.edges().symmetric_difference(b.edges()))
    }

    /// All thetas as sorted index triples.
    pub fn thetas(&self) -> Vec<[usize; 3]> {
        let mut out = Vec::new();
        for i in 0..self.cycles.len() {
            for j in i + 1..self.cycles.len() {
                if let Some(k) = self.theta_third(i, j) {
                    if k > j {
                        out.push([i, j, k]);
                    }
                }
            }
        }
        out
    }
}

/// Partition of `x` into the edge sets of the components of `G[X]`, ordered by
/// least edge. Vertices not incident with `x` play no role.
pub fn components(g: &Multigraph, x: &EdgeSet) -> Vec<EdgeSet> {
    let mut uf = UnionFind::new(g.vertex_count());
    for e in x {
        let (u, v) = g.endpoints(e);
        uf.union(u, v);
    }
    let mut by_root: BTreeMap<usize, (usize, EdgeSet)> = BTreeMap::new();
    for e in x {
        let r = uf.find(g.endpoints(e).0);
        by_root.entry(r).or_insert_with(|| (e, EdgeSet::new())).1.insert(e);
    }
    let mut comps: Vec<(usize, EdgeSet)> = by_root.into_values().collect();
    comps.sort_by_key(|(first, _)| *first);
    comps.into_iter().map(|(_, s)| s).collect()
}

/// `c(X)`.
pub fn component_count(g: &Multigraph, x: &EdgeSet) -> usize {
    let mut uf = UnionFind::new(g.vertex_count());
    let mut count = 0;
    let mut seen = VertexSet::new();
    for e in x {
        let (u, v) = g.endpoints(e);
        for w in [u, v] {
            if seen.insert(w) {
                count += 1;
            }
        }
        if uf.union(u, v) {
            count -= 1;
        }
    }
    count
}

/// `β(X) = |X| - |V(X)| + c(X)`.
pub fn cyclomatic_number(g: &Multigraph, x: &EdgeSet) -> usize {
    x.len() + component_count(g, x) - g.vertices_of(x).len()
}

/// Structural type of an edge-induced subgraph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "shape", rename_all = "snake_case")]
pub enum SubgraphShape {
    Forest,
    SingleCycle,
    Theta { branch_vertices: (usize, usize) },
    TightHandcuff { cycles: [EdgeSet; 2], vertex: usize },
    LooseHandcuff { cycles: [EdgeSet; 2], path: EdgeSet },
    Bracelet { cycles: [EdgeSet; 2] },
    Other,
}

pub fn classify_subgraph(g: &Multigraph, x: &EdgeSet) -> SubgraphShape {
    let comps = components(g, x);
    let beta = cyclomatic_number(g, x);
    if beta == 0 {
        return SubgraphShape::Forest;
    }
    let deg = g.degrees(x);
    let vs = g.vertices_of(x);
    let count_deg = |d: usize| vs.iter().filter(|&v| deg[v] == d).count();

    if comps.len() == 2 && comps.iter().all(|c| is_cycle(g, c)) {
        return SubgraphShape::Bracelet {
            cycles: [comps[0].clone(), comps[1].clone()],
        };
    }
    if comps.len() != 1 {
        return SubgraphShape::Other;
    }
    if beta == 1 && count_deg(2) == vs.len() {
        return SubgraphShape::SingleCycle;
    }
    if beta != 2 {
        return SubgraphShape::Other;
    }
    if count_deg(4) == 1 && count_deg(2) == vs.len() - 1 {
        let vertex = vs.iter().find(|&v| deg[v] == 4).unwrap();
        let cycles = enumerate_cycles_within(g, x, None, 3).unwrap_or_default();
        if let [a, b] = cycles.as_slice() {
            if a.edges().is_disjoint(b.edges()) {
                return SubgraphShape::TightHandcuff {
                    cycles: [a.edges().clone(), b.edges().clone()],
                    vertex,
                };
            }
        }
        return SubgraphShape::Other;
    }
    if count_deg(3) == 2 && count_deg(2) == vs.len() - 2 {
        let bridges = bridges_within(g, x);
        let mut branch = vs.iter().filter(|&v| deg[v] == 3);
        let (a, b) = (branch.next().unwrap(), branch.next().unwrap());
        if bridges.is_empty() {
            return SubgraphShape::Theta {
                branch_vertices: (a, b),
            };
        }
        let rest = components(g, &x.difference(&bridges));
        if rest.len() == 2 && rest.iter().all(|c| is_cycle(g, c)) {
            return SubgraphShape::LooseHandcuff {
                cycles: [rest[0].clone(), rest[1].clone()],
                path: bridges,
            };
        }
    }
    SubgraphShape::Other
}

/// Edges of `x` whose removal disconnects their component of `G[X]`.
pub fn bridges_within(g: &Multigraph, x: &EdgeSet) -> EdgeSet {
    let base = component_count(g, x);
    x.iter()
        .filter(|&e| {
            if g.is_loop(e) {
                return false;
            }
            let mut y = x.clone();
            y.remove(e);
            let (u, v) = g.endpoints(e);
            // Removing e may also drop an endpoint from V(X).
            let lost = [u, v].iter().filter(|&&w| !g.vertices_of(&y).contains(w)).count();
            component_count(g, &y) + lost > base
        })
        .collect()
}

/// Blocks of `g`: maximal 2-connected pieces. Each loop is a block of its own.
pub fn blocks(g: &Multigraph) -> Vec<EdgeSet> {
    blocks_within(g, &g.edge_set())
}

pub fn blocks_within(g: &Multigraph, x: &EdgeSet) -> Vec<EdgeSet> {
    let adj = g.link_adjacency(x);
    let n = g.vertex_count();
    let mut state = BlockSearch {
        adj: &adj,
        disc: vec![usize::MAX; n],
        low: vec![0; n],
        timer: 0,
        stack: Vec::new(),
        blocks: Vec::new(),
    };
    for r in 0..n {
        if state.disc[r] == usize::MAX && !adj[r].is_empty() {
            state.visit(r, None);
        }
    }
    let mut out = state.blocks;
    out.extend(x.iter().filter(|&e| g.is_loop(e)).map(EdgeSet::singleton));
    out.sort();
    out
}

struct BlockSearch<'a> {
    adj: &'a [Vec<(usize, usize)>],
    disc: Vec<usize>,
    low: Vec<usize>,
    timer: usize,
    stack: Vec<usize>,
    blocks: Vec<EdgeSet>,
}

impl BlockSearch<'_> {
    fn visit(&mut self, u: usize, parent_edge: Option<usize>) {
        self.disc[u] = self.timer;
        self.low[u] = self.timer;
        self.timer += 1;
        for &(w, e) in &self.adj[u] {
            if Some(e) == parent_edge {
                continue;
            }
            if self.disc[w] == usize::MAX {
                self.stack.push(e);
                self.visit(w, Some(e));
                self.low[u] = self.low[u].min(self.low[w]);
                if self.low[w] >= self.disc[u] {
                    let mut block = EdgeSet::new();
                    while let Some(f) = self.stack.pop() {
                        block.insert(f);
                        if f == e {
                            break;
                        }
                    }
                    self.blocks.push(block);
                }
            } else if self.disc[w] < self.disc[u] {
                self.stack.push(e);
                self.low[u] = self.low[u].min(self.disc[w]);
            }
        }
    }
}

/// Vertices lying in two or more (non-loop) blocks.
pub fn cut_vertices(g: &Multigraph) -> Vec<usize> {
    let mut count = vec![0usize; g.vertex_count()];
    for b in blocks(g) {
        if b.len() == 1 && g.is_loop(b.first().unwrap()) {
            continue;
        }
        for v in &g.vertices_of(&b) {
            count[v] += 1;
        }
    }
    (0..g.vertex_count()).filter(|&v| count[v] >= 2).collect()
}

/// Number of components of `G - removed`, isolated vertices included.
pub fn vertex_component_count(g: &Multigraph, removed: &VertexSet) -> usize {
    let n = g.vertex_count();
    let mut uf = UnionFind::new(n);
    let mut count = n - removed.iter().filter(|&v| v < n).count();
    for &(u, v) in g.edges() {
        if !removed.contains(u) && !removed.contains(v) && uf.union(u, v) {
            count -= 1;
        }
    }
    count
}

pub fn is_connected(g: &Multigraph) -> bool {
    vertex_component_count(g, &VertexSet::new()) <= 1
}

/// `g` has more than `k` vertices and stays connected after deleting any
/// fewer than `k` of them. Exhaustive over removal sets.
pub fn is_k_connected(g: &Multigraph, k: usize) -> bool {
    let n = g.vertex_count();
    if n <= k {
        return false;
    }
    let mut removal: Vec<usize> = Vec::new();
    fn rec(g: &Multigraph, k: usize, from: usize, removal: &mut Vec<usize>) -> bool {
        let removed: VertexSet = removal.iter().copied().collect();
        if vertex_component_count(g, &removed) != 1 {
            return false;
        }
        if removal.len() + 1 >= k {
            return true;
        }
        for v in from..g.vertex_count() {
            removal.push(v);
            let ok = rec(g, k, v + 1, removal);
            removal.pop();
            if !ok {
                return false;
            }
        }
        true
    }
    rec(g, k, 0, &mut removal)
}

pub fn is_2_connected(g: &Multigraph) -> bool {
    is_k_connected(g, 2)
}

pub fn is_4_connected(g: &Multigraph) -> bool {
    is_k_connected(g, 4)
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns true if the two classes were distinct.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra.max(rb)] = ra.min(rb);
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(v: &[usize]) -> EdgeSet {
        v.iter().copied().collect()
    }

    /// Every non-empty edge subset satisfying the cycle invariant.
    fn brute_force_cycles(g: &Multigraph) -> Vec<EdgeSet> {
        let m = g.edge_count();
        let mut out: Vec<EdgeSet> = (1u64..1 << m)
            .map(EdgeSet::from_mask)
            .filter(|x| is_cycle(g, x))
            .collect();
        out.sort();
        out
    }

    fn two_triangles_at_vertex() -> Multigraph {
        Multigraph::new(5, vec![(0, 1), (1, 2), (0, 2), (0, 3), (3, 4), (0, 4)]).unwrap()
    }

    #[test]
    fn triangle_and_loop() {
        let tri = Multigraph::cycle(3);
        assert_eq!(enumerate_cycles(&tri, 10).unwrap().len(), 1);
        let lp = Multigraph::new(1, vec![(0, 0)]).unwrap();
        let cycles = enumerate_cycles(&lp, 10).unwrap();
        assert_eq!(cycles.len(), 1);
        assert_eq!(cycles[0].len(), 1);
    }

    #[test]
    fn k4_has_seven_cycles() {
        let k4 = Multigraph::complete(4);
        let brute = brute_force_cycles(&k4);
        assert_eq!(brute.len(), 7);
        let got: Vec<EdgeSet> = enumerate_cycles(&k4, 100)
            .unwrap()
            .into_iter()
            .map(|c| c.edges().clone())
            .collect();
        assert_eq!(got, brute);
    }

    #[test]
    fn multigraph_cycles_match_brute_force() {
        let g = Multigraph::new(
            4,
            vec![(0, 1), (0, 1), (1, 2), (2, 0), (2, 2), (2, 3), (3, 0), (3, 0), (1, 1)],
        )
        .unwrap();
        let got: Vec<EdgeSet> = enumerate_cycles(&g, 1000)
            .unwrap()
            .into_iter()
            .map(|c| c.edges().clone())
            .collect();
        assert_eq!(got, brute_force_cycles(&g));
    }

    #[test]
    fn cycle_limit_is_enforced() {
        let k5 = Multigraph::complete(5);
        match enumerate_cycles(&k5, 10) {
            Err(Error::CycleLimitExceeded { limit: 10 }) => {}
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn max_len_restricts_cycles() {
        let k5 = Multigraph::complete(5);
        let short = enumerate_cycles_within(&k5, &k5.edge_set(), Some(3), 1000).unwrap();
        assert_eq!(short.len(), 10);
        assert!(short.iter().all(|c| c.len() == 3));
    }

    #[test]
    fn component_examples() {
        let g = Multigraph::new(6, vec![(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]).unwrap();
        assert_eq!(components(&g, &g.edge_set()).len(), 2);
        let k4 = Multigraph::complete(4);
        assert_eq!(components(&k4, &set(&[0, 1, 2])).len(), 1);
        assert!(components(&k4, &EdgeSet::new()).is_empty());
    }

    #[test]
    fn cyclomatic_examples() {
        let k4 = Multigraph::complete(4);
        assert_eq!(cyclomatic_number(&k4, &set(&[0, 1, 2])), 0);
        assert_eq!(cyclomatic_number(&k4, &k4.edge_set()), 3);
        // edges 0=(0,1) 1=(0,2) 3=(1,2) 4=(1,3) 5=(2,3): theta on {0,1,2,3}
        assert_eq!(cyclomatic_number(&k4, &set(&[0, 1, 3, 4, 5])), 2);
    }

    #[test]
    fn classify_examples() {
        let g = Multigraph::new(8, vec![(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (2, 6), (6, 3)]).unwrap();
        assert!(matches!(
            classify_subgraph(&g, &set(&[0, 1, 2, 3, 4, 5])),
            SubgraphShape::Bracelet { .. }
        ));
        match classify_subgraph(&g, &g.edge_set()) {
            SubgraphShape::LooseHandcuff { cycles, path } => {
                assert_eq!(path, set(&[6, 7]));
                assert_eq!(cycles, [set(&[0, 1, 2]), set(&[3, 4, 5])]);
            }
            other => panic!("{other:?}"),
        }
        let h = two_triangles_at_vertex();
        assert!(matches!(
            classify_subgraph(&h, &h.edge_set()),
            SubgraphShape::TightHandcuff { vertex: 0, .. }
        ));
        let k4 = Multigraph::complete(4);
        assert!(matches!(
            classify_subgraph(&k4, &set(&[0, 1, 3, 4, 5])),
            SubgraphShape::Theta { .. }
        ));
        assert_eq!(classify_subgraph(&k4, &k4.edge_set()), SubgraphShape::Other);
        assert_eq!(classify_subgraph(&k4, &set(&[0, 1])), SubgraphShape::Forest);
        // loop, pendant edge, disjoint loop
        let odd = Multigraph::new(3, vec![(0, 0), (0, 1), (2, 2)]).unwrap();
        assert_eq!(classify_subgraph(&odd, &odd.edge_set()), SubgraphShape::Other);
        // loose handcuff built from loops
        let lh = Multigraph::new(2, vec![(0, 0), (0, 1), (1, 1)]).unwrap();
        assert!(matches!(
            classify_subgraph(&lh, &lh.edge_set()),
            SubgraphShape::LooseHandcuff { .. }
        ));
    }

    #[test]
    fn cut_vertex_examples() {
        assert_eq!(cut_vertices(&two_triangles_at_vertex()), vec![0]);
        assert!(is_2_connected(&Multigraph::complete(4)));
        assert!(!is_2_connected(&Multigraph::path(3)));
        assert!(!is_4_connected(&Multigraph::complete(4)));
        assert!(is_4_connected(&Multigraph::complete(5)));
        assert_eq!(cut_vertices(&Multigraph::path(4)), vec![1, 2]);
    }

    #[test]
    fn cut_vertices_match_removal() {
        let graphs = [
            two_triangles_at_vertex(),
            Multigraph::path(5),
            Multigraph::complete(5),
            Multigraph::new(6, vec![(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5), (5, 3), (1, 1)]).unwrap(),
        ];
        for g in &graphs {
            let base = vertex_component_count(g, &VertexSet::new());
            let brute: Vec<usize> = (0..g.vertex_count())
                .filter(|&v| vertex_component_count(g, &VertexSet::singleton(v)) > base)
                .collect();
            assert_eq!(cut_vertices(g), brute);
        }
    }

    #[test]
    fn cycles_are_unicyclic_and_canonical() {
        let g = Multigraph::complete(5);
        let cycles = enumerate_cycles(&g, 1000).unwrap();
        assert_eq!(cycles, enumerate_cycles(&g, 1000).unwrap());
        for w in cycles.windows(2) {
            assert!(w[0] < w[1]);
        }
        for (i, c) in cycles.iter().enumerate() {
            assert_eq!(cyclomatic_number(&g, c.edges()), 1);
            assert_eq!(classify_subgraph(&g, c.edges()), SubgraphShape::SingleCycle);
            for d in &cycles[i + 1..] {
                let u = c.edges().union(d.edges());
                let beta = cyclomatic_number(&g, &u);
                assert!(beta >= 2);
                if components(&g, &u).len() >= 2 {
                    assert!(beta >= 2);
                }
            }
        }
    }

    #[test]
    fn cyclomatic_number_is_additive_over_components() {
        let g = Multigraph::complete(6);
        for mask in [0b111_0000_1011u64, 0b101_0101_0101_0101, 0x7fff, 0b1001_0010_0100] {
            let x = EdgeSet::from_mask(mask);
            let sum: usize = components(&g, &x).iter().map(|c| cyclomatic_number(&g, c)).sum();
            assert_eq!(cyclomatic_number(&g, &x), sum);
        }
    }
}
