//! Tripartitions (B, L, F) of the cycles of a graph.

use std::fmt;
use std::sync::{Arc, OnceLock};

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::bias::{check_theta_property, BiasedGraph, ThetaWitness};
use crate::bitset::EdgeSet;
use crate::bracelets::{bracelet_pairs, check_proper, Bracelet, BraceletFunction, BraceletValue};
use crate::error::{Error, Result};
use crate::graph::{components, CycleSpace, Multigraph, UnionFind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CycleClass {
    #[serde(rename = "B")]
    Balanced,
    #[serde(rename = "L")]
    Lift,
    #[serde(rename = "F")]
    Frame,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    L,
    F,
}

impl Side {
    pub fn class(self) -> CycleClass {
        match self {
            Side::L => CycleClass::Lift,
            Side::F => CycleClass::Frame,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::L => "L",
            Side::F => "F",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "violation", rename_all = "snake_case")]
pub enum ProperViolation {
    Theta(ThetaWitness),
    /// A cycle of L and a cycle of F with no common vertex.
    Meet {
        lift: EdgeSet,
        frame: EdgeSet,
    },
}

impl fmt::Display for ProperViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Theta(w) => write!(f, "{w}"),
            Self::Meet { lift, frame } => {
                write!(f, "L-cycle {lift:?} and F-cycle {frame:?} are vertex-disjoint")
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct Tripartition {
    space: Arc<CycleSpace>,
    classes: Vec<CycleClass>,
    proper: OnceLock<Option<ProperViolation>>,
}

impl PartialEq for Tripartition {
    fn eq(&self, other: &Self) -> bool {
        self.space.graph() == other.space.graph() && self.classes == other.classes
    }
}

impl Tripartition {
    /// Builds and validates propriety.
    pub fn new(space: Arc<CycleSpace>, classes: Vec<CycleClass>) -> Result<Self> {
        let t = Self::new_unchecked(space, classes)?;
        if let Err(v) = t.validate_proper() {
            return Err(Error::ImproperTripartition(v));
        }
        Ok(t)
    }

    /// Builds a partition without checking propriety.
    pub fn new_unchecked(space: Arc<CycleSpace>, classes: Vec<CycleClass>) -> Result<Self> {
        if classes.len() != space.len() {
            return Err(Error::NotAPartition(format!(
                "{} classes for {} cycles",
                classes.len(),
                space.len()
            )));
        }
        Ok(Self {
            space,
            classes,
            proper: OnceLock::new(),
        })
    }

    /// From explicit lists. Every cycle of the graph must occur in exactly one
    /// list.
    pub fn from_sets(space: Arc<CycleSpace>, b: &[EdgeSet], l: &[EdgeSet], f: &[EdgeSet]) -> Result<Self> {
        let mut classes: Vec<Option<CycleClass>> = vec![None; space.len()];
        for (list, class) in [(b, CycleClass::Balanced), (l, CycleClass::Lift), (f, CycleClass::Frame)] {
            for c in list {
                let i = space.require(c)?;
                if classes[i].replace(class).is_some() {
                    return Err(Error::NotAPartition(format!("cycle {c:?} listed twice")));
                }
            }
        }
        let classes = classes
            .into_iter()
            .enumerate()
            .map(|(i, c)| {
                c.ok_or_else(|| Error::NotAPartition(format!("cycle {:?} is unassigned", space.cycle(i).edges())))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(space, classes)
    }

    /// Unbalanced cycles go to L when `in_lift` holds, to F otherwise.
    pub fn from_bias(bg: &BiasedGraph, in_lift: impl Fn(usize) -> bool) -> Result<Self> {
        let classes = (0..bg.space().len())
            .map(|i| {
                if bg.is_cycle_balanced(i) {
                    CycleClass::Balanced
                } else if in_lift(i) {
                    CycleClass::Lift
                } else {
                    CycleClass::Frame
                }
            })
            .collect();
        Self::new(bg.space().clone(), classes)
    }

    /// All unbalanced cycles on one side; always proper for a biased graph.
    pub fn degenerate(bg: &BiasedGraph, side: Side) -> Self {
        let classes = (0..bg.space().len())
            .map(|i| {
                if bg.is_cycle_balanced(i) {
                    CycleClass::Balanced
                } else {
                    side.class()
                }
            })
            .collect();
        let t = Self::new_unchecked(bg.space().clone(), classes).unwrap();
        let _ = t.proper.set(None);
        t
    }

    pub fn space(&self) -> &Arc<CycleSpace> {
        &self.space
    }

    pub fn graph(&self) -> &Multigraph {
        self.space.graph()
    }

    pub fn classes(&self) -> &[CycleClass] {
        &self.classes
    }

    pub fn class(&self, i: usize) -> CycleClass {
        self.classes[i]
    }

    pub fn class_of(&self, cycle: &EdgeSet) -> Option<CycleClass> {
        self.space.index_of(cycle).map(|i| self.classes[i])
    }

    pub fn indices(&self, class: CycleClass) -> Vec<usize> {
        (0..self.classes.len()).filter(|&i| self.classes[i] == class).collect()
    }

    pub fn cycles_in(&self, class: CycleClass) -> Vec<EdgeSet> {
        self.indices(class)
            .into_iter()
            .map(|i| self.space.cycle(i).edges().clone())
            .collect()
    }

    pub fn biased_graph(&self) -> BiasedGraph {
        BiasedGraph::new_unchecked(
            self.space.clone(),
            self.classes.iter().map(|&c| c == CycleClass::Balanced).collect(),
        )
    }

    /// Theta property of B, then the meet condition between L and F.
    pub fn validate_proper(&self) -> Result<(), ProperViolation> {
        match self.proper.get_or_init(|| self.find_violation()) {
            None => Ok(()),
            Some(v) => Err(v.clone()),
        }
    }

    pub fn is_proper(&self) -> bool {
        self.validate_proper().is_ok()
    }

    fn find_violation(&self) -> Option<ProperViolation> {
        let balanced: Vec<bool> = self.classes.iter().map(|&c| c == CycleClass::Balanced).collect();
        if let Err(w) = check_theta_property(&self.space, &balanced) {
            return Some(ProperViolation::Theta(w));
        }
        let lift = self.indices(CycleClass::Lift);
        let frame = self.indices(CycleClass::Frame);
        for &i in &lift {
            for &j in &frame {
                if !self.space.cycle(i).meets(self.space.cycle(j)) {
                    return Some(ProperViolation::Meet {
                        lift: self.space.cycle(i).edges().clone(),
                        frame: self.space.cycle(j).edges().clone(),
                    });
                }
            }
        }
        None
    }

    pub(crate) fn require_proper(&self) -> Result<()> {
        self.validate_proper().map_err(Error::ImproperTripartition)
    }

    /// True iff the side is empty or has no two vertex-disjoint cycles.
    pub fn is_degenerate(&self, side: Side) -> bool {
        let idx = self.indices(side.class());
        for (p, &i) in idx.iter().enumerate() {
            for &j in &idx[p + 1..] {
                if !self.space.cycle(i).meets(self.space.cycle(j)) {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_nondegenerate(&self) -> bool {
        !self.is_degenerate(Side::L) && !self.is_degenerate(Side::F)
    }
}

/// Dependent on bracelets with both cycles in L, independent on those with
/// both cycles in F.
pub fn chi_from_tripartition(t: &Tripartition) -> Result<BraceletFunction> {
    t.require_proper()?;
    let space = t.space();
    Ok(bracelet_pairs(&t.biased_graph())
        .into_iter()
        .map(|(i, j)| {
            let value = if t.class(i) == CycleClass::Lift {
                debug_assert_eq!(t.class(j), CycleClass::Lift);
                BraceletValue::Dependent
            } else {
                BraceletValue::Independent
            };
            let b = Bracelet::new(space.cycle(i).edges().clone(), space.cycle(j).edges().clone());
            (b, value)
        })
        .collect())
}

/// L is the set of unbalanced cycles lying in some dependent bracelet; every
/// other unbalanced cycle goes to F.
pub fn tripartition_from_chi(bg: &BiasedGraph, chi: &BraceletFunction) -> Result<Tripartition> {
    check_proper(bg, chi)?;
    let g = bg.graph();
    if components(g, &g.edge_set()).len() > 1 {
        return Err(Error::DisconnectedGraph);
    }
    let space = bg.space();
    let mut lift = vec![false; space.len()];
    for (b, v) in chi.iter() {
        if v == BraceletValue::Dependent {
            for c in [&b.cycle_a, &b.cycle_b] {
                lift[space.require(c)?] = true;
            }
        }
    }
    Tripartition::from_bias(bg, |i| lift[i])
}

/// Groups of unbalanced cycles that must share a side: the components of the
/// graph joining two unbalanced cycles when they are vertex-disjoint.
pub fn forced_groups(bg: &BiasedGraph) -> Vec<Vec<usize>> {
    let unbalanced = bg.unbalanced_cycle_indices();
    let pos = |i: usize| unbalanced.binary_search(&i).unwrap();
    let mut uf = UnionFind::new(unbalanced.len());
    for (i, j) in bracelet_pairs(bg) {
        uf.union(pos(i), pos(j));
    }
    let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for (p, &i) in unbalanced.iter().enumerate() {
        groups.entry(uf.find(p)).or_default().push(i);
    }
    let mut out: Vec<Vec<usize>> = groups.into_values().collect();
    out.sort();
    out
}

/// Every proper tripartition with bias `bg`. A split of the unbalanced cycles
/// is proper iff each forced group lies wholly on one side, so there are
/// `2^groups` of them; more than `cap` groups is refused.
pub fn proper_tripartitions(bg: &BiasedGraph, cap: usize) -> Result<Vec<Tripartition>> {
    let groups = forced_groups(bg);
    if groups.len() > cap {
        return Err(Error::SearchCapExceeded { cap });
    }
    let mut out = Vec::with_capacity(1 << groups.len());
    for mask in 0u64..1 << groups.len() {
        out.push(split_by_mask(bg, &groups, mask));
    }
    Ok(out)
}

fn split_by_mask(bg: &BiasedGraph, groups: &[Vec<usize>], mask: u64) -> Tripartition {
    let mut classes: Vec<CycleClass> = (0..bg.space().len())
        .map(|i| {
            if bg.is_cycle_balanced(i) {
                CycleClass::Balanced
            } else {
                CycleClass::Frame
            }
        })
        .collect();
    for (k, group) in groups.iter().enumerate() {
        if mask >> k & 1 == 1 {
            for &i in group {
                classes[i] = CycleClass::Lift;
            }
        }
    }
    Tripartition::new_unchecked(bg.space().clone(), classes).unwrap()
}

/// A uniformly random proper L/F split of the unbalanced cycles of `bg`.
pub fn random_proper_tripartition(bg: &BiasedGraph, rng: &mut impl Rng) -> Tripartition {
    let groups = forced_groups(bg);
    let mut classes: Vec<CycleClass> = (0..bg.space().len())
        .map(|i| {
            if bg.is_cycle_balanced(i) {
                CycleClass::Balanced
            } else {
                CycleClass::Frame
            }
        })
        .collect();
    for group in &groups {
        if rng.random_bool(0.5) {
            for &i in group {
                classes[i] = CycleClass::Lift;
            }
        }
    }
    Tripartition::new_unchecked(bg.space().clone(), classes).unwrap()
}
