//! Biased graphs: a cycle space with a theta-closed set of balanced cycles.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::bitset::{EdgeSet, VertexSet};
use crate::error::{Error, Result};
use crate::graph::{CycleSpace, Multigraph, UnionFind};

/// A theta containing exactly two balanced cycles.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ThetaWitness {
    pub theta: EdgeSet,
    /// The three cycles of the theta; the first two are balanced.
    pub cycles: [EdgeSet; 3],
}

impl fmt::Display for ThetaWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "theta {:?} has balanced cycles {:?}, {:?} and unbalanced cycle {:?}",
            self.theta, self.cycles[0], self.cycles[1], self.cycles[2]
        )
    }
}

/// Returns the first theta with exactly two balanced cycles, if any.
pub fn check_theta_property(space: &CycleSpace, balanced: &[bool]) -> Result<(), ThetaWitness> {
    let idx: Vec<usize> = (0..space.len()).filter(|&i| balanced[i]).collect();
    for (p, &i) in idx.iter().enumerate() {
        for &j in &idx[p + 1..] {
            if let Some(k) = space.theta_third(i, j) {
                if !balanced[k] {
                    let c = |x: usize| space.cycle(x).edges().clone();
                    return Err(ThetaWitness {
                        theta: c(i).union(&c(j)),
                        cycles: [c(i), c(j), c(k)],
                    });
                }
            }
        }
    }
    Ok(())
}

#[derive(Clone, Debug)]
pub struct BiasedGraph {
    space: Arc<CycleSpace>,
    balanced: Vec<bool>,
}

impl BiasedGraph {
    /// Validates the theta property.
    pub fn new(space: Arc<CycleSpace>, balanced: Vec<bool>) -> Result<Self> {
        if balanced.len() != space.len() {
            return Err(Error::NotAPartition(format!(
                "{} balance flags for {} cycles",
                balanced.len(),
                space.len()
            )));
        }
        check_theta_property(&space, &balanced).map_err(|w| Error::ThetaViolation(Box::new(w)))?;
        Ok(Self { space, balanced })
    }

    pub(crate) fn new_unchecked(space: Arc<CycleSpace>, balanced: Vec<bool>) -> Self {
        Self { space, balanced }
    }

    pub fn from_predicate(space: Arc<CycleSpace>, pred: impl Fn(&EdgeSet) -> bool) -> Result<Self> {
        let balanced = space.cycles().iter().map(|c| pred(c.edges())).collect();
        Self::new(space, balanced)
    }

    /// Builds from an explicit list of balanced cycles.
    pub fn from_balanced_cycles(space: Arc<CycleSpace>, cycles: &[EdgeSet]) -> Result<Self> {
        let mut balanced = vec![false; space.len()];
        for c in cycles {
            balanced[space.require(c)?] = true;
        }
        Self::new(space, balanced)
    }

    pub fn all_balanced(space: Arc<CycleSpace>) -> Self {
        let n = space.len();
        Self::new_unchecked(space, vec![true; n])
    }

    pub fn empty_bias(space: Arc<CycleSpace>) -> Self {
        let n = space.len();
        Self::new_unchecked(space, vec![false; n])
    }

    pub fn space(&self) -> &Arc<CycleSpace> {
        &self.space
    }

    pub fn graph(&self) -> &Multigraph {
        self.space.graph()
    }

    pub fn balanced_flags(&self) -> &[bool] {
        &self.balanced
    }

    pub fn is_cycle_balanced(&self, i: usize) -> bool {
        self.balanced[i]
    }

    pub fn balanced_cycles(&self) -> Vec<EdgeSet> {
        self.indices(true)
    }

    pub fn unbalanced_cycle_indices(&self) -> Vec<usize> {
        (0..self.space.len()).filter(|&i| !self.balanced[i]).collect()
    }

    fn indices(&self, flag: bool) -> Vec<EdgeSet> {
        (0..self.space.len())
            .filter(|&i| self.balanced[i] == flag)
            .map(|i| self.space.cycle(i).edges().clone())
            .collect()
    }

    /// Whether every cycle of `G[X]` is balanced.
    pub fn is_balanced(&self, x: &EdgeSet) -> bool {
        self.space.cycles_within(x).all(|i| self.balanced[i])
    }

    /// `b(X)`: components of `G[X]` containing no unbalanced cycle.
    pub fn balanced_components(&self, x: &EdgeSet) -> usize {
        let g = self.graph();
        let mut uf = UnionFind::new(g.vertex_count());
        for e in x {
            let (u, v) = g.endpoints(e);
            uf.union(u, v);
        }
        let mut roots = VertexSet::new();
        for v in &g.vertices_of(x) {
            roots.insert(uf.find(v));
        }
        let mut unbalanced_roots = VertexSet::new();
        for i in self.space.cycles_within(x) {
            if !self.balanced[i] {
                let v = self.space.cycle(i).vertices().first().unwrap();
                unbalanced_roots.insert(uf.find(v));
            }
        }
        roots.len() - unbalanced_roots.len()
    }

    /// Whether `x` meets every unbalanced cycle while some cycle is unbalanced.
    pub fn is_balancing_set(&self, x: &EdgeSet) -> bool {
        let mut any = false;
        for i in self.unbalanced_cycle_indices() {
            any = true;
            if !self.space.cycle(i).edges().intersects(x) {
                return false;
            }
        }
        any
    }

    pub fn is_graph_balanced(&self) -> bool {
        self.balanced.iter().all(|&b| b)
    }
}

/// Minimal balancing sets, i.e. the minimal transversals of the unbalanced
/// cycles, computed by Berge's incremental method. Candidates larger than `cap`
/// are discarded; if any had to be discarded the result would be incomplete
/// and `SearchCapExceeded` is returned instead.
pub fn minimal_balancing_sets(bg: &BiasedGraph, cap: Option<usize>) -> Result<Vec<EdgeSet>> {
    let cap = cap.unwrap_or(bg.graph().edge_count());
    let hyperedges: Vec<&EdgeSet> = bg
        .unbalanced_cycle_indices()
        .into_iter()
        .map(|i| bg.space().cycle(i).edges())
        .collect();
    if hyperedges.is_empty() {
        return Err(Error::GraphBalanced);
    }
    let out = minimal_transversals(hyperedges, cap)?;
    if out.iter().any(|t| t.len() > 6) {
        log::warn!("minimal balancing sets of size above 6 present");
    }
    Ok(out)
}

/// Minimal sets meeting every member of `hyperedges`, sorted.
pub(crate) fn minimal_transversals(mut hyperedges: Vec<&EdgeSet>, cap: usize) -> Result<Vec<EdgeSet>> {
    hyperedges.sort_by_key(|h| h.len());
    let mut transversals: Vec<EdgeSet> = vec![EdgeSet::new()];
    for h in hyperedges {
        let mut next: Vec<EdgeSet> = Vec::new();
        let mut grown: Vec<EdgeSet> = Vec::new();
        for t in transversals {
            if t.intersects(h) {
                next.push(t);
            } else {
                for e in h {
                    let mut u = t.clone();
                    u.insert(e);
                    if u.len() > cap {
                        return Err(Error::SearchCapExceeded { cap });
                    }
                    grown.push(u);
                }
            }
        }
        // Kept sets are pairwise incomparable already; only grown ones can be
        // dominated.
        grown.sort_by_key(|s| s.len());
        grown.dedup();
        let mut accepted: Vec<EdgeSet> = Vec::new();
        for u in grown {
            if next.iter().chain(accepted.iter()).any(|t| t.is_subset(&u)) {
                continue;
            }
            accepted.push(u);
        }
        next.extend(accepted);
        transversals = next;
    }
    transversals.sort();
    Ok(transversals)
}

/// Vertices whose incident edges form a balancing set.
pub fn balancing_vertices(bg: &BiasedGraph) -> Vec<usize> {
    let g = bg.graph();
    (0..g.vertex_count())
        .filter(|&v| bg.is_balancing_set(&g.incident(v)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::DEFAULT_CYCLE_LIMIT;

    fn set(v: &[usize]) -> EdgeSet {
        v.iter().copied().collect()
    }

    fn space(g: Multigraph) -> Arc<CycleSpace> {
        CycleSpace::new(g, DEFAULT_CYCLE_LIMIT).unwrap()
    }

    /// Brute-force minimal balancing sets over all edge subsets.
    pub(crate) fn brute_minimal_balancing(bg: &BiasedGraph) -> Vec<EdgeSet> {
        let m = bg.graph().edge_count();
        let balancing: Vec<EdgeSet> = (0u64..1 << m)
            .map(EdgeSet::from_mask)
            .filter(|x| bg.is_balancing_set(x))
            .collect();
        let mut out: Vec<EdgeSet> = balancing
            .iter()
            .filter(|x| {
                x.iter().all(|e| {
                    let mut y = (*x).clone();
                    y.remove(e);
                    !bg.is_balancing_set(&y)
                })
            })
            .cloned()
            .collect();
        out.sort();
        out
    }

    #[test]
    fn theta_property_examples() {
        let k4 = space(Multigraph::complete(4));
        assert!(check_theta_property(&k4, &vec![true; k4.len()]).is_ok());
        assert!(check_theta_property(&k4, &vec![false; k4.len()]).is_ok());

        // theta: 0-1 via edges 0, 1 and path 0-2-1 via edges 2, 3
        let theta = space(Multigraph::new(3, vec![(0, 1), (0, 1), (0, 2), (2, 1)]).unwrap());
        assert_eq!(theta.len(), 3);
        let outer = theta.index_of(&set(&[0, 2, 3])).unwrap();
        let other = theta.index_of(&set(&[1, 2, 3])).unwrap();
        let mut flags = vec![false; 3];
        flags[outer] = true;
        flags[other] = true;
        let w = check_theta_property(&theta, &flags).unwrap_err();
        assert_eq!(w.theta, set(&[0, 1, 2, 3]));
        let balanced_count = w.cycles.iter().filter(|c| flags[theta.index_of(c).unwrap()]).count();
        assert_eq!(balanced_count, 2);
        assert!(matches!(BiasedGraph::new(theta, flags), Err(Error::ThetaViolation(_))));
    }

    #[test]
    fn balanced_components_examples() {
        let g = Multigraph::new(6, vec![(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]).unwrap();
        let sp = space(g);
        let bg = BiasedGraph::from_balanced_cycles(sp, &[set(&[3, 4, 5])]).unwrap();
        assert_eq!(bg.balanced_components(&set(&[0, 1, 2])), 0);
        assert_eq!(bg.balanced_components(&set(&[0, 1, 2, 3, 4, 5])), 1);
        assert_eq!(bg.balanced_components(&set(&[0, 1, 3])), 2);
        assert!(bg.is_balanced(&set(&[0, 1, 3, 4, 5])));
        assert!(!bg.is_balanced(&set(&[0, 1, 2])));
    }

    #[test]
    fn balancing_set_examples() {
        // unbalanced loop at 0, balanced triangle
        let g = Multigraph::new(3, vec![(0, 0), (0, 1), (1, 2), (2, 0)]).unwrap();
        let bg = BiasedGraph::from_balanced_cycles(space(g), &[set(&[1, 2, 3])]).unwrap();
        assert_eq!(minimal_balancing_sets(&bg, None).unwrap(), vec![set(&[0])]);

        let tri = BiasedGraph::empty_bias(space(Multigraph::cycle(3)));
        assert_eq!(
            minimal_balancing_sets(&tri, None).unwrap(),
            vec![set(&[0]), set(&[1]), set(&[2])]
        );

        let all = BiasedGraph::all_balanced(space(Multigraph::complete(4)));
        assert!(matches!(minimal_balancing_sets(&all, None), Err(Error::GraphBalanced)));
    }

    #[test]
    fn minimal_balancing_sets_match_brute_force() {
        for n in 3..=5 {
            let bg = BiasedGraph::empty_bias(space(Multigraph::complete(n)));
            assert_eq!(minimal_balancing_sets(&bg, None).unwrap(), brute_minimal_balancing(&bg));
        }
        let g = Multigraph::new(4, vec![(0, 1), (0, 1), (1, 2), (2, 3), (3, 0), (2, 2), (1, 3)]).unwrap();
        let sp = space(g);
        let bg = BiasedGraph::from_predicate(sp, |c| c.len() % 2 == 0 && !c.contains(5)).unwrap();
        assert_eq!(minimal_balancing_sets(&bg, None).unwrap(), brute_minimal_balancing(&bg));
    }

    #[test]
    fn cap_is_reported() {
        let bg = BiasedGraph::empty_bias(space(Multigraph::complete(5)));
        assert!(matches!(
            minimal_balancing_sets(&bg, Some(2)),
            Err(Error::SearchCapExceeded { cap: 2 })
        ));
    }

    #[test]
    fn balancing_vertex_examples() {
        let two_loops = Multigraph::new(1, vec![(0, 0), (0, 0)]).unwrap();
        let sp = space(two_loops);
        let bg = BiasedGraph::empty_bias(sp);
        assert_eq!(balancing_vertices(&bg), vec![0]);

        let g = Multigraph::new(6, vec![(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]).unwrap();
        let bg = BiasedGraph::empty_bias(space(g));
        assert!(balancing_vertices(&bg).is_empty());
    }
}
