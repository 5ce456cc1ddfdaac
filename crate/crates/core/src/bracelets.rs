//! Bracelets, the bracelet graph, and bracelet functions.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bias::BiasedGraph;
use crate::bitset::EdgeSet;
use crate::error::{Error, Result};
use crate::graph::{cyclomatic_number, Cycle, CycleSpace, UnionFind};

/// An unordered pair of vertex-disjoint unbalanced cycles, stored with
/// `cycle_a < cycle_b`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Bracelet {
    pub cycle_a: EdgeSet,
    pub cycle_b: EdgeSet,
}

impl Bracelet {
    pub fn new(a: EdgeSet, b: EdgeSet) -> Self {
        if a <= b {
            Self { cycle_a: a, cycle_b: b }
        } else {
            Self { cycle_a: b, cycle_b: a }
        }
    }

    pub fn edges(&self) -> EdgeSet {
        self.cycle_a.union(&self.cycle_b)
    }

    pub fn contains_cycle(&self, c: &EdgeSet) -> bool {
        &self.cycle_a == c || &self.cycle_b == c
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BraceletValue {
    Dependent,
    Independent,
}

impl BraceletValue {
    pub fn flipped(self) -> Self {
        match self {
            Self::Dependent => Self::Independent,
            Self::Independent => Self::Dependent,
        }
    }
}

/// Values assigned to bracelets. Totality is checked against a biased graph
/// by [`check_proper`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BraceletFunction {
    values: BTreeMap<Bracelet, BraceletValue>,
}

impl BraceletFunction {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn constant(bg: &BiasedGraph, value: BraceletValue) -> Self {
        Self::from_fn(bg, |_| value)
    }

    pub fn from_fn(bg: &BiasedGraph, f: impl Fn(&Bracelet) -> BraceletValue) -> Self {
        enumerate_bracelets(bg)
            .into_iter()
            .map(|b| {
                let v = f(&b);
                (b, v)
            })
            .collect()
    }

    pub fn get(&self, b: &Bracelet) -> Option<BraceletValue> {
        self.values.get(b).copied()
    }

    pub fn set(&mut self, b: Bracelet, value: BraceletValue) {
        self.values.insert(b, value);
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Bracelet, BraceletValue)> {
        self.values.iter().map(|(b, &v)| (b, v))
    }
}

impl FromIterator<(Bracelet, BraceletValue)> for BraceletFunction {
    fn from_iter<I: IntoIterator<Item = (Bracelet, BraceletValue)>>(iter: I) -> Self {
        Self {
            values: iter.into_iter().collect(),
        }
    }
}

/// Index pairs `(i, j)`, `i < j`, of vertex-disjoint unbalanced cycles.
pub fn bracelet_pairs(bg: &BiasedGraph) -> Vec<(usize, usize)> {
    let space = bg.space();
    let unbalanced = bg.unbalanced_cycle_indices();
    let mut pairs: Vec<(usize, usize)> = unbalanced
        .par_iter()
        .enumerate()
        .flat_map_iter(|(p, &i)| {
            let ci = space.cycle(i);
            unbalanced[p + 1..]
                .iter()
                .filter(move |&&j| !ci.meets(space.cycle(j)))
                .map(move |&j| (i, j))
        })
        .collect();
    pairs.sort_unstable();
    pairs
}

fn bracelet_of(space: &CycleSpace, (i, j): (usize, usize)) -> Bracelet {
    Bracelet::new(space.cycle(i).edges().clone(), space.cycle(j).edges().clone())
}

/// All bracelets in canonical order.
pub fn enumerate_bracelets(bg: &BiasedGraph) -> Vec<Bracelet> {
    let space = bg.space();
    let mut out: Vec<Bracelet> = bracelet_pairs(bg).into_iter().map(|p| bracelet_of(space, p)).collect();
    out.sort();
    out
}

/// Cyclomatic number of the union of two cycles.
fn pair_beta(a: &Cycle, b: &Cycle) -> usize {
    let e = a.edges().union_len(b.edges());
    let v = a.vertices().union_len(b.vertices());
    let c = if a.meets(b) { 1 } else { 2 };
    e + c - v
}

#[derive(Clone, Debug)]
pub struct BraceletGraph {
    nodes: Vec<Bracelet>,
    pairs: Vec<(usize, usize)>,
    adjacency: Vec<(usize, usize)>,
    component: Vec<usize>,
    component_count: usize,
}

impl BraceletGraph {
    pub fn nodes(&self) -> &[Bracelet] {
        &self.nodes
    }

    /// Cycle indices of each node, parallel to [`BraceletGraph::nodes`].
    pub fn cycle_pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    /// Edges `(i, j)` with `i < j`, sorted.
    pub fn adjacency(&self) -> &[(usize, usize)] {
        &self.adjacency
    }

    pub fn component_of(&self, node: usize) -> usize {
        self.component[node]
    }

    pub fn component_count(&self) -> usize {
        self.component_count
    }

    /// Node indices grouped by component, components ordered by least node.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.component_count];
        for (i, &c) in self.component.iter().enumerate() {
            out[c].push(i);
        }
        out
    }

    pub fn index_of(&self, b: &Bracelet) -> Option<usize> {
        self.nodes.binary_search(b).ok()
    }

    pub fn is_isolated(&self, node: usize) -> bool {
        !self.adjacency.iter().any(|&(i, j)| i == node || j == node)
    }
}

fn assemble(space: &CycleSpace, pairs: Vec<(usize, usize)>, mut adjacency: Vec<(usize, usize)>) -> BraceletGraph {
    let nodes: Vec<Bracelet> = pairs.iter().map(|&p| bracelet_of(space, p)).collect();
    adjacency.sort_unstable();
    adjacency.dedup();
    let mut uf = UnionFind::new(nodes.len());
    for &(i, j) in &adjacency {
        uf.union(i, j);
    }
    let mut label = BTreeMap::new();
    let component: Vec<usize> = (0..nodes.len())
        .map(|i| {
            let r = uf.find(i);
            let next = label.len();
            *label.entry(r).or_insert(next)
        })
        .collect();
    BraceletGraph {
        nodes,
        pairs,
        adjacency,
        component,
        component_count: label.len(),
    }
}

/// Sorted bracelet pairs in node order (canonical by edge sets).
fn sorted_pairs(bg: &BiasedGraph) -> Vec<(usize, usize)> {
    let space = bg.space();
    let mut pairs = bracelet_pairs(bg);
    pairs.sort_by_cached_key(|&p| bracelet_of(space, p));
    pairs
}

/// The bracelet graph: bracelets `B`, `B'` are adjacent iff `β(B ∪ B') = 3`.
///
/// Adjacent bracelets always share a cycle `C`, and then
/// `β(B ∪ B') = 1 + β(D ∪ D')` for the other two cycles, so only pairs
/// through a common cycle are examined.
pub fn bracelet_graph(bg: &BiasedGraph) -> BraceletGraph {
    let space = bg.space();
    let pairs = sorted_pairs(bg);
    let mut through: BTreeMap<usize, Vec<(usize, usize)>> = BTreeMap::new();
    for (node, &(i, j)) in pairs.iter().enumerate() {
        through.entry(i).or_default().push((j, node));
        through.entry(j).or_default().push((i, node));
    }
    let groups: Vec<&Vec<(usize, usize)>> = through.values().collect();
    let adjacency: Vec<(usize, usize)> = groups
        .par_iter()
        .flat_map_iter(|partners| {
            let mut edges = Vec::new();
            for (p, &(d1, n1)) in partners.iter().enumerate() {
                for &(d2, n2) in &partners[p + 1..] {
                    if pair_beta(space.cycle(d1), space.cycle(d2)) == 2 {
                        edges.push((n1.min(n2), n1.max(n2)));
                    }
                }
            }
            edges
        })
        .collect();
    assemble(space, pairs, adjacency)
}

/// The bracelet graph computed from the definition over all node pairs.
pub fn bracelet_graph_bruteforce(bg: &BiasedGraph) -> BraceletGraph {
    let space = bg.space();
    let g = bg.graph();
    let pairs = sorted_pairs(bg);
    let unions: Vec<EdgeSet> = pairs
        .iter()
        .map(|&(i, j)| space.cycle(i).edges().union(space.cycle(j).edges()))
        .collect();
    let mut adjacency = Vec::new();
    for a in 0..unions.len() {
        for b in a + 1..unions.len() {
            if cyclomatic_number(g, &unions[a].union(&unions[b])) == 3 {
                adjacency.push((a, b));
            }
        }
    }
    assemble(space, pairs, adjacency)
}

/// `Ok` iff `chi` is total and constant on every bracelet-graph component.
/// A non-constant component is reported through an adjacent pair with
/// different values.
pub fn check_proper(bg: &BiasedGraph, chi: &BraceletFunction) -> Result<()> {
    check_proper_in(&bracelet_graph(bg), chi)
}

pub fn check_proper_in(bgraph: &BraceletGraph, chi: &BraceletFunction) -> Result<()> {
    let mut values = Vec::with_capacity(bgraph.nodes().len());
    for b in bgraph.nodes() {
        values.push(chi.get(b).ok_or_else(|| Error::BraceletFunctionNotTotal(b.clone()))?);
    }
    for &(i, j) in bgraph.adjacency() {
        if values[i] != values[j] {
            return Err(Error::ImproperChi {
                first: bgraph.nodes()[i].clone(),
                second: bgraph.nodes()[j].clone(),
            });
        }
    }
    Ok(())
}

/// `Ok` iff `chi` assigns a value to every bracelet of `bg` and to nothing else.
pub fn check_total(bg: &BiasedGraph, chi: &BraceletFunction) -> Result<()> {
    let all = enumerate_bracelets(bg);
    for b in &all {
        if chi.get(b).is_none() {
            return Err(Error::BraceletFunctionNotTotal(b.clone()));
        }
    }
    if chi.len() != all.len() {
        let extra = chi
            .iter()
            .map(|(b, _)| b)
            .find(|b| all.binary_search(b).is_err())
            .expect("an unmatched entry");
        return Err(Error::NotABracelet((extra.cycle_a.clone(), extra.cycle_b.clone())));
    }
    Ok(())
}

pub fn is_proper(bg: &BiasedGraph, chi: &BraceletFunction) -> bool {
    check_proper(bg, chi).is_ok()
}
