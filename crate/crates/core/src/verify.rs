//! Brute-force oracles and property checks.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bias::BiasedGraph;
use crate::bitset::EdgeSet;
use crate::bracelets::{bracelet_pairs, check_proper, Bracelet};
use crate::error::{Error, Result};
use crate::graph::{
    blocks, classify_subgraph, components, cut_vertices, is_2_connected, CycleSpace, Multigraph, SubgraphShape,
    UnionFind,
};
use crate::io::Instance;
use crate::matroid::{
    bases, circuits, circuits_chi_unchecked, cocircuits, frame_circuits, framework_check, is_independent,
    lift_circuits, CircuitFamily, FrameworkViolation, RankFunction, RankOracle,
};
use crate::tripartition::{CycleClass, Side, Tripartition};

/// Largest ground set for the subset tables behind the exhaustive checks.
pub const DEFAULT_TABLE_CAP: usize = 24;
/// Largest ground set for exhaustive rank-axiom checks; larger ones are sampled.
pub const DEFAULT_RANK_CAP: usize = 14;
/// Number of sampled triples `(X, a, b)` beyond the rank cap.
pub const RANK_SAMPLES: usize = 20_000;
/// Bound on Ingleton evaluations in a quadruple scan.
pub const INGLETON_EVAL_CAP: usize = 10_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Pass,
    Fail,
    /// The instance is outside the check's caps.
    Skipped,
}

/// A counterexample found by a check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    EmptyCircuit,
    NestedCircuits {
        smaller: EdgeSet,
        larger: EdgeSet,
    },
    /// No circuit inside `(first ∪ second) - element`.
    Elimination {
        first: EdgeSet,
        second: EdgeSet,
        element: usize,
    },
    RankOfEmptySet {
        rank: usize,
    },
    /// `r(set + element) - r(set)` is not 0 or 1.
    UnitIncrease {
        set: EdgeSet,
        element: usize,
        before: usize,
        after: usize,
    },
    /// `r(set + a) + r(set + b) < r(set + a + b) + r(set)`.
    Submodularity {
        set: EdgeSet,
        a: usize,
        b: usize,
    },
    Ingleton(IngletonWitness),
    GraphDisconnected {
        components: usize,
    },
    CutVertex {
        vertex: usize,
    },
    /// The restriction to `block` is neither frame nor lift.
    Block {
        block: EdgeSet,
    },
    Framework(FrameworkViolation),
    /// A circuit that is none of the allowed subgraph shapes.
    Shape {
        circuit: EdgeSet,
    },
    /// Two computations disagree on `set`.
    Discrepancy {
        set: EdgeSet,
    },
    ImproperChi {
        first: Bracelet,
        second: Bracelet,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    #[serde(rename = "name")]
    pub check: String,
    pub instance: String,
    pub result: Outcome,
    pub witness: Option<Witness>,
    pub seed: Option<u64>,
    pub elapsed_ms: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl VerificationReport {
    fn new(check: &str, started: Instant, witness: Option<Witness>) -> Self {
        Self {
            check: check.to_owned(),
            instance: String::new(),
            result: if witness.is_some() {
                Outcome::Fail
            } else {
                Outcome::Pass
            },
            witness,
            seed: None,
            elapsed_ms: started.elapsed().as_millis() as u64,
            detail: None,
        }
    }

    pub fn skipped(check: &str, detail: impl Into<String>) -> Self {
        Self {
            check: check.to_owned(),
            instance: String::new(),
            result: Outcome::Skipped,
            witness: None,
            seed: None,
            elapsed_ms: 0,
            detail: Some(detail.into()),
        }
    }

    /// Pass or fail according to `witness`, timed from `started`.
    pub fn from_witness(check: &str, started: Instant, witness: Option<Witness>) -> Self {
        Self::new(check, started, witness)
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }

    pub fn on(mut self, instance: impl Into<String>) -> Self {
        self.instance = instance.into();
        self
    }

    pub fn passed(&self) -> bool {
        self.result == Outcome::Pass
    }

    pub fn failed(&self) -> bool {
        self.result == Outcome::Fail
    }
}

/// For every subset of the ground set (as a bit mask), whether it contains a
/// circuit.
pub struct DependencyTable {
    ground_size: usize,
    dependent: Vec<bool>,
}

impl DependencyTable {
    pub fn new(cf: &CircuitFamily, cap: usize) -> Result<Self> {
        let n = cf.ground_size();
        if n > cap.min(30) {
            return Err(Error::GroundSetTooLarge { size: n, cap });
        }
        let mut dependent = vec![false; 1 << n];
        for c in cf.circuits() {
            dependent[c.to_mask() as usize] = true;
        }
        for bit in 0..n {
            let step = 1usize << bit;
            for mask in 0..dependent.len() {
                if mask & step == 0 && dependent[mask] {
                    dependent[mask | step] = true;
                }
            }
        }
        Ok(Self {
            ground_size: n,
            dependent,
        })
    }

    pub fn ground_size(&self) -> usize {
        self.ground_size
    }

    pub fn is_dependent_mask(&self, mask: u64) -> bool {
        self.dependent[mask as usize]
    }

    pub fn is_dependent(&self, x: &EdgeSet) -> bool {
        self.is_dependent_mask(x.to_mask())
    }

    /// Rank of every subset from first principles: a dependent set has the
    /// rank of one of its single-element deletions.
    pub fn ranks(&self) -> Vec<u8> {
        let mut rank = vec![0u8; self.dependent.len()];
        for mask in 1..rank.len() {
            rank[mask] = if !self.dependent[mask] {
                mask.count_ones() as u8
            } else {
                let mut best = 0;
                let mut rest = mask;
                while rest != 0 {
                    let bit = rest & rest.wrapping_neg();
                    best = best.max(rank[mask ^ bit]);
                    rest ^= bit;
                }
                best
            };
        }
        rank
    }
}

/// Circuit axioms: no empty member, no member inside another, and weak
/// elimination for every pair and every common element.
pub fn circuit_axioms(cf: &CircuitFamily, cap: usize) -> Result<VerificationReport> {
    let started = Instant::now();
    let table = DependencyTable::new(cf, cap)?;
    let masks: Vec<u64> = cf.circuits().iter().map(|c| c.to_mask()).collect();
    let witness = if masks.contains(&0) {
        Some(Witness::EmptyCircuit)
    } else {
        (0..masks.len()).into_par_iter().find_map_first(|i| {
            let a = masks[i];
            masks[i + 1..].iter().find_map(|&b| {
                let common = a & b;
                if common == 0 {
                    return None;
                }
                if common == a || common == b {
                    let (smaller, larger) = if common == a { (a, b) } else { (b, a) };
                    return Some(Witness::NestedCircuits {
                        smaller: EdgeSet::from_mask(smaller),
                        larger: EdgeSet::from_mask(larger),
                    });
                }
                let union = a | b;
                let mut rest = common;
                while rest != 0 {
                    let bit = rest & rest.wrapping_neg();
                    if !table.is_dependent_mask(union ^ bit) {
                        return Some(Witness::Elimination {
                            first: EdgeSet::from_mask(a),
                            second: EdgeSet::from_mask(b),
                            element: bit.trailing_zeros() as usize,
                        });
                    }
                    rest ^= bit;
                }
                None
            })
        })
    };
    let mut report = VerificationReport::new("circuit_axioms", started, witness);
    report.detail = Some(format!("{} circuits on {} elements", cf.len(), cf.ground_size()));
    Ok(report)
}

/// Whether `w` still refutes the circuit axioms for `cf`.
pub fn witness_refutes_circuits(cf: &CircuitFamily, w: &Witness) -> bool {
    match w {
        Witness::EmptyCircuit => cf.contains(&EdgeSet::new()),
        Witness::NestedCircuits { smaller, larger } => {
            cf.contains(smaller) && cf.contains(larger) && smaller.is_subset(larger) && smaller != larger
        }
        Witness::Elimination { first, second, element } => {
            let mut rest = first.union(second);
            rest.remove(*element);
            cf.contains(first)
                && cf.contains(second)
                && first.contains(*element)
                && second.contains(*element)
                && cf.is_independent(&rest)
        }
        _ => false,
    }
}

/// Rank axioms over subsets of `ground`: `r(∅) = 0`, unit increase (hence
/// monotonicity) and local submodularity. Exhaustive up to `cap` elements,
/// otherwise `RANK_SAMPLES` triples drawn with `seed`.
pub fn rank_axioms<R: RankFunction + Sync>(r: &R, ground: &EdgeSet, cap: usize, seed: u64) -> VerificationReport {
    let started = Instant::now();
    let elems = ground.to_vec();
    let n = elems.len();
    let to_set = |mask: u64| -> EdgeSet {
        elems
            .iter()
            .enumerate()
            .filter(|(k, _)| mask >> k & 1 == 1)
            .map(|(_, &e)| e)
            .collect()
    };
    let empty_rank = r.rank(&EdgeSet::new());
    if empty_rank != 0 {
        return VerificationReport::new(
            "rank_axioms",
            started,
            Some(Witness::RankOfEmptySet { rank: empty_rank }),
        );
    }
    let check = |x: u64, a: usize, b: usize, rank: &dyn Fn(u64) -> usize| -> Option<Witness> {
        let (ba, bb) = (1u64 << a, 1u64 << b);
        let (rx, ra) = (rank(x), rank(x | ba));
        if ra < rx || ra > rx + 1 {
            return Some(Witness::UnitIncrease {
                set: to_set(x),
                element: elems[a],
                before: rx,
                after: ra,
            });
        }
        if a != b && rank(x | ba) + rank(x | bb) < rank(x | ba | bb) + rx {
            return Some(Witness::Submodularity {
                set: to_set(x),
                a: elems[a],
                b: elems[b],
            });
        }
        None
    };
    if n <= cap {
        let table: Vec<usize> = (0..1u64 << n).into_par_iter().map(|m| r.rank(&to_set(m))).collect();
        let lookup = |m: u64| table[m as usize];
        let witness = (0..1u64 << n).into_par_iter().find_map_first(|x| {
            (0..n).filter(|&a| x >> a & 1 == 0).find_map(|a| {
                (a..n)
                    .filter(|&b| x >> b & 1 == 0)
                    .find_map(|b| check(x, a, b, &lookup))
            })
        });
        let mut report = VerificationReport::new("rank_axioms", started, witness);
        report.detail = Some(format!("exhaustive over {} subsets", 1u64 << n));
        report
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let samples: Vec<(u64, usize, usize)> = (0..RANK_SAMPLES)
            .map(|_| {
                let x: u64 = rng.random::<u64>() & ((1u64 << n) - 1);
                (x, rng.random_range(0..n), rng.random_range(0..n))
            })
            .collect();
        let rank = |m: u64| r.rank(&to_set(m));
        let witness = samples.into_par_iter().find_map_first(|(x, a, b)| {
            let x = x & !(1u64 << a) & !(1u64 << b);
            check(x, a, b, &rank)
        });
        let mut report = VerificationReport::new("rank_axioms", started, witness);
        report.seed = Some(seed);
        report.detail = Some(format!("{RANK_SAMPLES} sampled triples"));
        report
    }
}

/// Cocircuits as complements of hyperplanes, from the circuits alone.
pub fn cocircuits_bruteforce(cf: &CircuitFamily, cap: usize) -> Result<Vec<EdgeSet>> {
    let table = DependencyTable::new(cf, cap)?;
    let rank = table.ranks();
    let n = cf.ground_size();
    let full = (1u64 << n) - 1;
    let r = rank[full as usize];
    if r == 0 {
        return Ok(Vec::new());
    }
    let mut out: Vec<EdgeSet> = (0..=full)
        .into_par_iter()
        .filter(|&h| rank[h as usize] + 1 == r && (0..n).all(|e| h >> e & 1 == 1 || rank[(h | 1 << e) as usize] == r))
        .map(|h| EdgeSet::from_mask(full & !h))
        .collect();
    out.sort();
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IngletonWitness {
    pub a: EdgeSet,
    pub b: EdgeSet,
    pub c: EdgeSet,
    pub d: EdgeSet,
    pub value: i64,
}

/// `r(A∪B) + r(A∪C) + r(A∪D) + r(B∪C) + r(B∪D)
///  - r(A) - r(B) - r(A∪B∪C) - r(A∪B∪D) - r(C∪D)`; negative is a violation.
pub fn ingleton_check(r: &impl RankFunction, a: &EdgeSet, b: &EdgeSet, c: &EdgeSet, d: &EdgeSet) -> i64 {
    let rk = |x: &EdgeSet| r.rank(x) as i64;
    let ab = a.union(b);
    rk(&ab) + rk(&a.union(c)) + rk(&a.union(d)) + rk(&b.union(c)) + rk(&b.union(d))
        - rk(a)
        - rk(b)
        - rk(&ab.union(c))
        - rk(&ab.union(d))
        - rk(&c.union(d))
}

/// Scans pairs of vertex-disjoint L-cycles against pairs of vertex-disjoint
/// F-cycles for an Ingleton violation.
pub fn ingleton_search(t: &Tripartition) -> Result<Option<IngletonWitness>> {
    t.require_proper()?;
    let oracle = RankOracle::new(t);
    let space = t.space();
    let disjoint_pairs = |class: CycleClass| -> Vec<(usize, usize)> {
        let idx = t.indices(class);
        let mut out = Vec::new();
        for (p, &i) in idx.iter().enumerate() {
            for &j in &idx[p + 1..] {
                if !space.cycle(i).meets(space.cycle(j)) {
                    out.push((i, j));
                }
            }
        }
        out
    };
    let lifts = disjoint_pairs(CycleClass::Lift);
    let frames = disjoint_pairs(CycleClass::Frame);
    let mut evaluations = 0usize;
    for &(a, b) in &lifts {
        for &(c, d) in &frames {
            evaluations += 1;
            if evaluations > INGLETON_EVAL_CAP {
                return Err(Error::SearchCapExceeded { cap: INGLETON_EVAL_CAP });
            }
            let sets = [a, b, c, d].map(|i| space.cycle(i).edges().clone());
            let value = ingleton_check(&oracle, &sets[0], &sets[1], &sets[2], &sets[3]);
            if value < 0 {
                let [a, b, c, d] = sets;
                return Ok(Some(IngletonWitness { a, b, c, d, value }));
            }
        }
    }
    Ok(None)
}

/// Every quadruple of subsets of a small ground set, up to the symmetries
/// `A ↔ B` and `C ↔ D`. Returns the most negative value found, if any.
pub fn ingleton_exhaustive(cf: &CircuitFamily, cap: usize) -> Result<Option<IngletonWitness>> {
    let n = cf.ground_size();
    let subsets = 1usize << n;
    let pairs = subsets * (subsets + 1) / 2;
    if pairs.saturating_mul(pairs) > INGLETON_EVAL_CAP || n > cap {
        return Err(Error::SearchCapExceeded { cap: INGLETON_EVAL_CAP });
    }
    let rank = DependencyTable::new(cf, cap)?.ranks();
    let rk = |m: usize| rank[m] as i64;
    let unordered: Vec<(usize, usize)> = (0..subsets).flat_map(|x| (x..subsets).map(move |y| (x, y))).collect();
    let worst = unordered
        .par_iter()
        .filter_map(|&(a, b)| {
            let mut best: Option<(i64, usize, usize)> = None;
            for &(c, d) in &unordered {
                let v = rk(a | b) + rk(a | c) + rk(a | d) + rk(b | c) + rk(b | d)
                    - rk(a)
                    - rk(b)
                    - rk(a | b | c)
                    - rk(a | b | d)
                    - rk(c | d);
                if v < 0 && best.is_none_or(|(w, _, _)| v < w) {
                    best = Some((v, c, d));
                }
            }
            best.map(|(v, c, d)| (v, a, b, c, d))
        })
        .min();
    let set = |m: usize| EdgeSet::from_mask(m as u64);
    Ok(worst.map(|(value, a, b, c, d)| IngletonWitness {
        a: set(a),
        b: set(b),
        c: set(c),
        d: set(d),
        value,
    }))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FrameLift {
    Frame,
    Lift,
    Both,
    Neither,
}

impl FrameLift {
    fn from_flags(frame: bool, lift: bool) -> Self {
        match (frame, lift) {
            (true, true) => FrameLift::Both,
            (true, false) => FrameLift::Frame,
            (false, true) => FrameLift::Lift,
            (false, false) => FrameLift::Neither,
        }
    }
}

/// Whether `circuits(t)` equals the frame or lift circuits of `(G, B)`. The two
/// families differ from `circuits(t)` exactly through bracelets: it equals the
/// frame family iff no bracelet has both cycles in L, and the lift family iff
/// no bracelet has both cycles in F.
pub fn classify_frame_lift(t: &Tripartition) -> Result<FrameLift> {
    t.require_proper()?;
    let pairs = bracelet_pairs(&t.biased_graph());
    let has = |class: CycleClass| pairs.iter().any(|&(i, _)| t.class(i) == class);
    Ok(FrameLift::from_flags(!has(CycleClass::Lift), !has(CycleClass::Frame)))
}

/// [`classify_frame_lift`] by explicit comparison of circuit families.
pub fn classify_frame_lift_by_sets(t: &Tripartition) -> Result<FrameLift> {
    let cf = circuits(t)?;
    let bg = t.biased_graph();
    Ok(FrameLift::from_flags(
        cf == frame_circuits(&bg),
        cf == lift_circuits(&bg),
    ))
}

/// Connected components of the matroid: elements sharing a circuit are
/// related, closed transitively. Each matroid loop and coloop stands alone.
pub fn matroid_components(cf: &CircuitFamily) -> Vec<EdgeSet> {
    let n = cf.ground_size();
    let mut uf = UnionFind::new(n);
    for c in cf.circuits() {
        if let Some(first) = c.first() {
            for e in c {
                uf.union(first, e);
            }
        }
    }
    let mut by_root: std::collections::BTreeMap<usize, EdgeSet> = Default::default();
    for e in 0..n {
        by_root.entry(uf.find(e)).or_default().insert(e);
    }
    let mut out: Vec<EdgeSet> = by_root.into_values().collect();
    out.sort();
    out
}

pub fn is_matroid_connected(cf: &CircuitFamily) -> bool {
    matroid_components(cf).len() <= 1
}

/// If the matroid is connected: `G` is connected when F is non-degenerate,
/// and 2-connected when neither side is degenerate.
pub fn connectivity_checks(t: &Tripartition) -> Result<VerificationReport> {
    let started = Instant::now();
    let cf = circuits(t)?;
    let g = t.graph();
    if !is_matroid_connected(&cf) {
        let mut report = VerificationReport::new("connectivity", started, None);
        report.detail = Some("matroid disconnected; no graph condition applies".into());
        return Ok(report);
    }
    let f_nondeg = !t.is_degenerate(Side::F);
    let both = f_nondeg && !t.is_degenerate(Side::L);
    let comps = components(g, &g.edge_set()).len();
    let witness = if f_nondeg && comps > 1 {
        Some(Witness::GraphDisconnected { components: comps })
    } else if both && !is_2_connected(g) {
        Some(match cut_vertices(g).first() {
            Some(&vertex) => Witness::CutVertex { vertex },
            None => Witness::GraphDisconnected { components: comps },
        })
    } else {
        None
    };
    let mut report = VerificationReport::new("connectivity", started, witness);
    report.detail = Some(format!("F non-degenerate: {f_nondeg}; both non-degenerate: {both}"));
    Ok(report)
}

/// Circuits whose subgraph is none of: a cycle, a theta, tight or loose
/// handcuffs, a bracelet.
pub fn shape_violations(cf: &CircuitFamily, g: &Multigraph) -> Vec<EdgeSet> {
    cf.circuits()
        .iter()
        .filter(|c| matches!(classify_subgraph(g, c), SubgraphShape::Other | SubgraphShape::Forest))
        .cloned()
        .collect()
}

/// For a connected matroid on `g` with a cut vertex, the restriction to each
/// block's edges must be the frame or the lift matroid of that block, biased
/// by the block cycles that are circuits.
pub fn block_check(cf: &CircuitFamily, g: &Multigraph) -> Result<VerificationReport> {
    let started = Instant::now();
    let all_blocks = blocks(g);
    if !is_matroid_connected(cf) || all_blocks.len() < 2 {
        let mut report = VerificationReport::new("block_restrictions", started, None);
        report.detail = Some("matroid disconnected or graph 2-connected; nothing to check".into());
        return Ok(report);
    }
    for block in &all_blocks {
        let edges: Vec<usize> = block.to_vec();
        let sub = Multigraph::new(g.vertex_count(), edges.iter().map(|&e| g.endpoints(e)).collect())?;
        let relabel = |c: &EdgeSet| -> EdgeSet { c.iter().map(|e| edges.binary_search(&e).unwrap()).collect() };
        let restricted = CircuitFamily::new(edges.len(), cf.restrict(block).circuits().iter().map(relabel).collect());
        let space = CycleSpace::new(sub, crate::graph::DEFAULT_CYCLE_LIMIT)?;
        let bg = BiasedGraph::from_predicate(space, |c| restricted.contains(c))?;
        if restricted != frame_circuits(&bg) && restricted != lift_circuits(&bg) {
            return Ok(VerificationReport::new(
                "block_restrictions",
                started,
                Some(Witness::Block { block: block.clone() }),
            ));
        }
    }
    Ok(VerificationReport::new("block_restrictions", started, None))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Fast,
    Full,
}

/// Runs the checks of `suite` on an instance, whose tripartition is proper by
/// construction. With a bracelet function only propriety of χ and the checks
/// that need no tripartition run. Exhaustive checks are skipped
/// above `cap` elements. Reports come back in a fixed order.
pub fn run_suite(inst: &Instance, suite: Suite, seed: u64, cap: usize) -> Result<Vec<VerificationReport>> {
    let g = inst.graph();
    let m = g.edge_count();
    let small = m <= cap.min(30);
    let too_big = |check: &str| VerificationReport::skipped(check, format!("{m} elements exceed the cap of {cap}"));
    let mut out = Vec::new();

    let (cf, t) = match &inst.chi {
        Some(chi) if inst.tripartition.is_none() => {
            let started = Instant::now();
            let witness = match check_proper(&inst.bias, chi) {
                Err(Error::ImproperChi { first, second }) => Some(Witness::ImproperChi { first, second }),
                Err(e) => return Err(e),
                Ok(()) => None,
            };
            out.push(VerificationReport::new("proper_chi", started, witness));
            (circuits_chi_unchecked(&inst.bias, chi)?, None)
        }
        _ => {
            let t = inst.require_tripartition()?;
            (circuits(&t)?, Some(t))
        }
    };

    out.push(if small {
        circuit_axioms(&cf, cap)?
    } else {
        too_big("circuit_axioms")
    });
    let ground = g.edge_set();
    let mut rank = match &t {
        Some(t) => rank_axioms(&RankOracle::new(t), &ground, DEFAULT_RANK_CAP, seed),
        None => rank_axioms(&cf, &ground, DEFAULT_RANK_CAP, seed),
    };
    if rank.seed.is_none() {
        rank.seed = Some(seed);
    }
    out.push(rank);

    let started = Instant::now();
    let witness = framework_check(&cf, g).into_iter().next().map(Witness::Framework);
    out.push(VerificationReport::new("framework", started, witness));

    if suite == Suite::Fast {
        return Ok(out);
    }

    let started = Instant::now();
    let witness = shape_violations(&cf, g)
        .into_iter()
        .next()
        .map(|circuit| Witness::Shape { circuit });
    out.push(VerificationReport::new("circuit_shapes", started, witness));

    let Some(t) = t else {
        return Ok(out);
    };

    let started = Instant::now();
    let oracle = RankOracle::new(&t);
    let witness = if small {
        let table = DependencyTable::new(&cf, cap)?;
        (0..1u64 << m)
            .into_par_iter()
            .find_first(|&mask| {
                let x = EdgeSet::from_mask(mask);
                is_independent(&t, &x) == table.is_dependent_mask(mask)
            })
            .map(|mask| Witness::Discrepancy {
                set: EdgeSet::from_mask(mask),
            })
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..RANK_SAMPLES)
            .map(|_| (0..m).filter(|_| rng.random_bool(0.5)).collect::<EdgeSet>())
            .find(|x| is_independent(&t, x) != cf.is_independent(x))
            .map(|set| Witness::Discrepancy { set })
    };
    let mut report = VerificationReport::new("independence", started, witness);
    if !small {
        report.seed = Some(seed);
        report.detail = Some(format!("{RANK_SAMPLES} sampled subsets"));
    }
    out.push(report);

    if small {
        let started = Instant::now();
        let r = oracle.rank(&ground);
        let all = bases(&t, cap)?;
        let table = DependencyTable::new(&cf, cap)?;
        let count = (0..1u64 << m)
            .into_par_iter()
            .filter(|&mask| mask.count_ones() as usize == r && !table.is_dependent_mask(mask))
            .count();
        let witness = all
            .iter()
            .find(|b| b.len() != r || table.is_dependent(b))
            .cloned()
            .map(|set| Witness::Discrepancy { set });
        let witness = witness.or_else(|| (count != all.len()).then(|| Witness::Discrepancy { set: ground.clone() }));
        out.push(
            VerificationReport::new("bases", started, witness)
                .with_detail(format!("{} bases, {count} maximal independent sets", all.len())),
        );

        let started = Instant::now();
        let mut ours = cocircuits(&t)?;
        ours.sort();
        let brute = cocircuits_bruteforce(&cf, cap)?;
        let witness = ours
            .iter()
            .find(|c| brute.binary_search(c).is_err())
            .or_else(|| brute.iter().find(|c| ours.binary_search(c).is_err()))
            .cloned()
            .map(|set| Witness::Discrepancy { set });
        out.push(VerificationReport::new("cocircuits", started, witness));
    } else {
        out.push(too_big("bases"));
        out.push(too_big("cocircuits"));
    }

    out.push(connectivity_checks(&t)?);
    out.push(block_check(&cf, g)?);

    let started = Instant::now();
    let structural = classify_frame_lift(&t)?;
    let by_sets = classify_frame_lift_by_sets(&t)?;
    let witness = (structural != by_sets).then(|| Witness::Discrepancy { set: ground.clone() });
    out.push(
        VerificationReport::new("frame_lift_classification", started, witness).with_detail(format!("{structural:?}")),
    );
    Ok(out)
}
