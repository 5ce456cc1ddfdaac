//! Minors, link-sums, loop-sums and broken handcuff matroids.

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::bias::BiasedGraph;
use crate::bitset::{EdgeSet, VertexSet};
use crate::bracelets::BraceletFunction;
use crate::error::{Error, Result};
use crate::graph::{CycleSpace, Multigraph, DEFAULT_CYCLE_LIMIT};
use crate::matroid::{circuits_chi, frame_circuits, lift_circuits, link_adjacency, linking_paths, CircuitFamily};
use crate::tripartition::{CycleClass, Tripartition};

/// Old edge index to new edge index; `None` for removed edges.
pub type EdgeMap = Vec<Option<usize>>;

fn remap(x: &EdgeSet, map: &EdgeMap) -> EdgeSet {
    x.iter().filter_map(|e| map[e]).collect()
}

/// Map that drops the edges of `removed` and closes the gaps.
fn compacting_map(size: usize, removed: &EdgeSet) -> EdgeMap {
    let mut next = 0;
    (0..size)
        .map(|e| {
            if removed.contains(e) {
                None
            } else {
                next += 1;
                Some(next - 1)
            }
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MinorOp {
    Delete,
    Contract,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinorStep {
    pub operation: MinorOp,
    pub edge: usize,
}

/// A minor of a tripartitioned graph with the map from the original edges.
#[derive(Clone, Debug)]
pub struct Minor {
    pub tripartition: Tripartition,
    pub edge_map: EdgeMap,
}

/// `(G, B, L, F) \ e`: cycles avoiding `e` keep their class.
pub fn delete(t: &Tripartition, e: usize) -> Result<Minor> {
    let g = t.graph();
    g.check_edge_set(&EdgeSet::singleton(e))?;
    let map = compacting_map(g.edge_count(), &EdgeSet::singleton(e));
    let edges = (0..g.edge_count())
        .filter(|&f| f != e)
        .map(|f| g.endpoints(f))
        .collect();
    let minor_graph = Multigraph::new(g.vertex_count(), edges)?;
    let kept = t
        .space()
        .cycles()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.edges().contains(e))
        .map(|(i, c)| (remap(c.edges(), &map), t.class(i)));
    rebuild(t, minor_graph, kept.collect(), map)
}

/// `(G, B, L, F) / e` for a link `e`. A cycle `C` of `G/e` takes the class of
/// `C` if that is a cycle of `G` and of `C ∪ e` otherwise.
pub fn contract(t: &Tripartition, e: usize) -> Result<Minor> {
    let g = t.graph();
    g.check_edge_set(&EdgeSet::singleton(e))?;
    if g.is_loop(e) {
        return Err(Error::LoopContraction { edge: e });
    }
    let (a, b) = g.endpoints(e);
    let (keep, gone) = (a.min(b), a.max(b));
    let vmap = |w: usize| match w.cmp(&gone) {
        std::cmp::Ordering::Less => w,
        std::cmp::Ordering::Equal => keep,
        std::cmp::Ordering::Greater => w - 1,
    };
    let map = compacting_map(g.edge_count(), &EdgeSet::singleton(e));
    let edges = (0..g.edge_count())
        .filter(|&f| f != e)
        .map(|f| {
            let (u, v) = g.endpoints(f);
            (vmap(u), vmap(v))
        })
        .collect();
    let minor_graph = Multigraph::new(g.vertex_count() - 1, edges)?;
    let kept = t
        .space()
        .cycles()
        .iter()
        .enumerate()
        .filter(|(_, c)| c.edges().contains(e) || !(c.vertices().contains(a) && c.vertices().contains(b)))
        .map(|(i, c)| (remap(c.edges(), &map), t.class(i)));
    rebuild(t, minor_graph, kept.collect(), map)
}

fn rebuild(
    t: &Tripartition,
    graph: Multigraph,
    classified: Vec<(EdgeSet, CycleClass)>,
    edge_map: EdgeMap,
) -> Result<Minor> {
    let by_set: HashMap<EdgeSet, CycleClass> = classified.iter().cloned().collect();
    let space = CycleSpace::from_cycle_sets(
        graph,
        classified.into_iter().map(|(c, _)| c).collect(),
        t.space().is_complete(),
    );
    let classes = space.cycles().iter().map(|c| by_set[c.edges()]).collect();
    Ok(Minor {
        tripartition: Tripartition::new(space, classes)?,
        edge_map,
    })
}

/// Applies the steps in order; edges are named by their original indices.
pub fn minor(t: &Tripartition, steps: &[MinorStep]) -> Result<Minor> {
    let m = t.graph().edge_count();
    let mut seen = BTreeSet::new();
    for s in steps {
        t.graph().check_edge_set(&EdgeSet::singleton(s.edge))?;
        if !seen.insert(s.edge) {
            return Err(Error::OverlappingMinorSets);
        }
    }
    let mut current = Minor {
        tripartition: t.clone(),
        edge_map: (0..m).map(Some).collect(),
    };
    for s in steps {
        let e = current.edge_map[s.edge].expect("each edge is removed at most once");
        let step = match s.operation {
            MinorOp::Delete => delete(&current.tripartition, e),
            MinorOp::Contract => contract(&current.tripartition, e),
        }
        .map_err(|err| match err {
            Error::LoopContraction { .. } => Error::LoopContraction { edge: s.edge },
            other => other,
        })?;
        let edge_map = current
            .edge_map
            .iter()
            .map(|x| x.and_then(|i| step.edge_map[i]))
            .collect();
        current = Minor {
            tripartition: step.tripartition,
            edge_map,
        };
    }
    Ok(current)
}

/// Circuits of `M \ D / C` computed on the circuit family, relabelled stably.
pub fn minor_circuits(
    cf: &CircuitFamily,
    deletions: &EdgeSet,
    contractions: &EdgeSet,
) -> Result<(CircuitFamily, EdgeMap)> {
    if deletions.intersects(contractions) {
        return Err(Error::OverlappingMinorSets);
    }
    let n = cf.ground_size();
    let removed = deletions.union(contractions);
    if let Some(e) = removed.last().filter(|&e| e >= n) {
        return Err(Error::InvalidEdge { edge: e, edge_count: n });
    }
    let map = compacting_map(n, &removed);
    let contracted: Vec<EdgeSet> = cf.circuits().iter().map(|c| c.difference(contractions)).collect();
    let minimal = CircuitFamily::from_minimal(n, contracted);
    let sets = minimal
        .circuits()
        .iter()
        .filter(|c| !c.intersects(deletions))
        .map(|c| remap(c, &map))
        .collect();
    Ok((CircuitFamily::new(n - removed.len(), sets), map))
}

/// Edge maps of the two summands into a sum.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SumMaps {
    pub first: EdgeMap,
    pub second: EdgeMap,
}

fn sum_maps(m1: usize, e1: usize, m2: usize, e2: usize) -> SumMaps {
    let first = compacting_map(m1, &EdgeSet::singleton(e1));
    let offset = m1 - 1;
    let second = compacting_map(m2, &EdgeSet::singleton(e2))
        .into_iter()
        .map(|x| x.map(|i| i + offset))
        .collect();
    SumMaps { first, second }
}

/// Circuit-level 2-sum on basepoints `e1` and `e2`:
/// `{C1 : e ∉ C1} ∪ {C2 : e ∉ C2} ∪ {(C1 - e) ∪ (C2 - e)}`.
pub fn circuit_two_sum(
    cf1: &CircuitFamily,
    e1: usize,
    cf2: &CircuitFamily,
    e2: usize,
) -> Result<(CircuitFamily, SumMaps)> {
    for (cf, e) in [(cf1, e1), (cf2, e2)] {
        if e >= cf.ground_size() {
            return Err(Error::InvalidEdge {
                edge: e,
                edge_count: cf.ground_size(),
            });
        }
    }
    let maps = sum_maps(cf1.ground_size(), e1, cf2.ground_size(), e2);
    let (with1, without1): (Vec<&EdgeSet>, Vec<&EdgeSet>) = cf1.circuits().iter().partition(|c| c.contains(e1));
    let (with2, without2): (Vec<&EdgeSet>, Vec<&EdgeSet>) = cf2.circuits().iter().partition(|c| c.contains(e2));
    let mut out: Vec<EdgeSet> = without1.iter().map(|c| remap(c, &maps.first)).collect();
    out.extend(without2.iter().map(|c| remap(c, &maps.second)));
    for c1 in &with1 {
        let a = remap(c1, &maps.first);
        for c2 in &with2 {
            out.push(a.union(&remap(c2, &maps.second)));
        }
    }
    let size = cf1.ground_size() + cf2.ground_size() - 2;
    Ok((CircuitFamily::new(size, out), maps))
}

/// Glues `g2` onto `g1` through `identify` (pairs of a `g2` vertex and the
/// `g1` vertex it becomes), dropping edges `e1` and `e2`.
fn glue(g1: &Multigraph, e1: usize, g2: &Multigraph, e2: usize, identify: &[(usize, usize)]) -> Result<Multigraph> {
    let mut next = g1.vertex_count();
    let vmap: Vec<usize> = (0..g2.vertex_count())
        .map(|w| match identify.iter().find(|(x, _)| *x == w) {
            Some(&(_, target)) => target,
            None => {
                next += 1;
                next - 1
            }
        })
        .collect();
    let mut edges: Vec<(usize, usize)> = (0..g1.edge_count())
        .filter(|&f| f != e1)
        .map(|f| g1.endpoints(f))
        .collect();
    edges.extend((0..g2.edge_count()).filter(|&f| f != e2).map(|f| {
        let (u, v) = g2.endpoints(f);
        (vmap[u], vmap[v])
    }));
    Multigraph::new(next, edges)
}

#[derive(Clone, Debug)]
pub struct LinkSum {
    pub tripartition: Tripartition,
    pub maps: SumMaps,
}

/// Link-sum of `(G1, B, L, F)` with the cycle matroid of `g2` on links `e1`
/// and `e2`: the ends of `e2` are identified with those of `e1` in order and
/// both edges deleted. Cycles inside `G1` keep their class, cycles inside
/// `g2` are balanced, and a cycle `P1 ∪ P2` crossing the join takes the class
/// of `P1 ∪ e1`.
pub fn link_sum(t1: &Tripartition, e1: usize, g2: &Multigraph, e2: usize) -> Result<LinkSum> {
    let g1 = t1.graph();
    g1.check_edge_set(&EdgeSet::singleton(e1))?;
    g2.check_edge_set(&EdgeSet::singleton(e2))?;
    if g1.is_loop(e1) {
        return Err(Error::BasepointNotLink { edge: e1 });
    }
    if g2.is_loop(e2) {
        return Err(Error::BasepointNotLink { edge: e2 });
    }
    let (u1, v1) = g1.endpoints(e1);
    let (u2, v2) = g2.endpoints(e2);
    let glued = glue(g1, e1, g2, e2, &[(u2, u1), (v2, v1)])?;
    let maps = sum_maps(g1.edge_count(), e1, g2.edge_count(), e2);
    let back1: HashMap<usize, usize> = maps
        .first
        .iter()
        .enumerate()
        .filter_map(|(o, n)| n.map(|n| (n, o)))
        .collect();
    let space = CycleSpace::new(glued, DEFAULT_CYCLE_LIMIT)?;
    let mut classes = Vec::with_capacity(space.len());
    for c in space.cycles() {
        let part1: EdgeSet = c.edges().iter().filter_map(|f| back1.get(&f).copied()).collect();
        let class = if part1.is_empty() {
            CycleClass::Balanced
        } else if part1.len() == c.len() {
            t1.class(t1.space().require(&part1)?)
        } else {
            let mut closed = part1;
            closed.insert(e1);
            t1.class(t1.space().require(&closed)?)
        };
        classes.push(class);
    }
    Ok(LinkSum {
        tripartition: Tripartition::new(space, classes)?,
        maps,
    })
}

#[derive(Clone, Debug)]
pub struct LoopSum {
    pub graph: Multigraph,
    pub circuits: CircuitFamily,
    pub maps: SumMaps,
}

fn require_unbalanced_loop(bg: &BiasedGraph, e: usize) -> Result<usize> {
    let g = bg.graph();
    g.check_edge_set(&EdgeSet::singleton(e))?;
    match bg.space().index_of(&EdgeSet::singleton(e)) {
        Some(i) if g.is_loop(e) && !bg.is_cycle_balanced(i) => Ok(g.endpoints(e).0),
        _ => Err(Error::BasepointNotUnbalancedLoop { edge: e }),
    }
}

/// Loop-sum of `M(G1, B1, χ1)` and `M(G2, B2, χ2)` on unbalanced loops `e1`,
/// `e2`: the loop vertices are identified and both loops deleted. The
/// circuits are the circuit-level 2-sum.
pub fn loop_sum(
    bg1: &BiasedGraph,
    e1: usize,
    chi1: &BraceletFunction,
    bg2: &BiasedGraph,
    e2: usize,
    chi2: &BraceletFunction,
) -> Result<LoopSum> {
    let w1 = require_unbalanced_loop(bg1, e1)?;
    let w2 = require_unbalanced_loop(bg2, e2)?;
    let cf1 = circuits_chi(bg1, chi1)?;
    let cf2 = circuits_chi(bg2, chi2)?;
    let (circuits, maps) = circuit_two_sum(&cf1, e1, &cf2, e2)?;
    let graph = glue(bg1.graph(), e1, bg2.graph(), e2, &[(w2, w1)])?;
    Ok(LoopSum { graph, circuits, maps })
}

/// A biased graph hung from vertex `vertex` of the core by its vertex `attach`.
#[derive(Clone, Debug)]
pub struct Satellite {
    pub vertex: usize,
    pub attach: usize,
    pub bias: BiasedGraph,
}

#[derive(Clone, Debug)]
pub struct BrokenHandcuff {
    pub graph: Multigraph,
    pub circuits: CircuitFamily,
    /// First glued edge index of each satellite; core edges keep their indices.
    pub offsets: Vec<usize>,
}

/// The broken handcuff matroid of a core `(G, B)` and satellites `(G_v, B_v)`:
/// frame circuits of the core, lift circuits of each satellite, `C ∪ C' ∪ P`
/// for unbalanced `C` in the core, `C'` in `G_v` and a `v`-`C` path `P` in the
/// core, and `C_v ∪ C_w ∪ P` for a `v`-`w` path `P` in the core.
pub fn broken_handcuff(core: &BiasedGraph, satellites: &[Satellite]) -> Result<BrokenHandcuff> {
    let g = core.graph();
    let mut used = VertexSet::new();
    for s in satellites {
        if s.vertex >= g.vertex_count() {
            return Err(Error::ParameterOutOfRange(format!("satellite vertex {}", s.vertex)));
        }
        if s.attach >= s.bias.graph().vertex_count() {
            return Err(Error::ParameterOutOfRange(format!("attach vertex {}", s.attach)));
        }
        if !used.insert(s.vertex) {
            return Err(Error::SatelliteCollision { vertex: s.vertex });
        }
    }

    let mut vertex_count = g.vertex_count();
    let mut edges: Vec<(usize, usize)> = g.edges().to_vec();
    let mut offsets = Vec::with_capacity(satellites.len());
    for s in satellites {
        offsets.push(edges.len());
        let base = vertex_count;
        let vmap = |w: usize| match w.cmp(&s.attach) {
            std::cmp::Ordering::Less => base + w,
            std::cmp::Ordering::Equal => s.vertex,
            std::cmp::Ordering::Greater => base + w - 1,
        };
        edges.extend(s.bias.graph().edges().iter().map(|&(u, v)| (vmap(u), vmap(v))));
        vertex_count += s.bias.graph().vertex_count() - 1;
    }
    let graph = Multigraph::new(vertex_count, edges)?;

    let shift = |x: &EdgeSet, by: usize| -> EdgeSet { x.iter().map(|e| e + by).collect() };
    let unbalanced = |bg: &BiasedGraph, by: usize| -> Vec<EdgeSet> {
        bg.unbalanced_cycle_indices()
            .into_iter()
            .map(|i| shift(bg.space().cycle(i).edges(), by))
            .collect()
    };
    let mut out: Vec<EdgeSet> = frame_circuits(core).circuits().to_vec();
    for (s, &off) in satellites.iter().zip(&offsets) {
        out.extend(lift_circuits(&s.bias).circuits().iter().map(|c| shift(c, off)));
    }
    let adj = link_adjacency(g);
    let core_unbalanced: Vec<usize> = core.unbalanced_cycle_indices();
    let sat_unbalanced: Vec<Vec<EdgeSet>> = satellites
        .iter()
        .zip(&offsets)
        .map(|(s, &off)| unbalanced(&s.bias, off))
        .collect();
    for (s, outer) in satellites.iter().zip(&sat_unbalanced) {
        let start = VertexSet::singleton(s.vertex);
        for &i in &core_unbalanced {
            let c = core.space().cycle(i);
            let paths = if c.vertices().contains(s.vertex) {
                vec![EdgeSet::new()]
            } else {
                linking_paths(&adj, &start, c.vertices())
            };
            for p in &paths {
                let base = c.edges().union(p);
                out.extend(outer.iter().map(|d| base.union(d)));
            }
        }
    }
    for (a, sa) in satellites.iter().enumerate() {
        for (b, sb) in satellites.iter().enumerate().skip(a + 1) {
            let paths = linking_paths(&adj, &VertexSet::singleton(sa.vertex), &VertexSet::singleton(sb.vertex));
            for p in &paths {
                for ca in &sat_unbalanced[a] {
                    let base = p.union(ca);
                    out.extend(sat_unbalanced[b].iter().map(|cb| base.union(cb)));
                }
            }
        }
    }
    Ok(BrokenHandcuff {
        circuits: CircuitFamily::new(graph.edge_count(), out),
        graph,
        offsets,
    })
}
