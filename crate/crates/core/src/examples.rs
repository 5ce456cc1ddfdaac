//! Generators for the standard instances and small fixtures.

use std::sync::Arc;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::bias::BiasedGraph;
use crate::bitset::EdgeSet;
use crate::error::{Error, Result};
use crate::graph::{is_cycle, Cycle, CycleSpace, Multigraph, DEFAULT_CYCLE_LIMIT};
use crate::tripartition::{random_proper_tripartition, CycleClass, Side, Tripartition};

/// Largest `n` accepted by [`complete_empty_bias`].
pub const COMPLETE_CAP: usize = 8;
/// Largest `a + b` accepted by [`kab_plus_cycles`].
pub const KAB_CAP: usize = 8;

fn empty_bias(g: Multigraph) -> Result<BiasedGraph> {
    Ok(BiasedGraph::empty_bias(CycleSpace::new(g, DEFAULT_CYCLE_LIMIT)?))
}

/// `(K_n, ∅)` with every cycle on `side`: the frame matroid for `Side::F`, the
/// lift matroid for `Side::L`.
pub fn complete_empty_bias(n: usize, side: Side) -> Result<Tripartition> {
    if !(3..=COMPLETE_CAP).contains(&n) {
        return Err(Error::ParameterOutOfRange(format!(
            "n = {n}, expected 3..={COMPLETE_CAP}"
        )));
    }
    Ok(Tripartition::degenerate(&empty_bias(Multigraph::complete(n))?, side))
}

/// Given a 4-cycle `e1 e2 e3 e4` in cyclic order: cycles meeting it in an even
/// number of edges are balanced, those meeting it in just `e1` or just `e3`
/// are in L, and those meeting it in just `e2`, just `e4` or in three edges
/// are in F.
pub fn four_cycle_parity(g: Multigraph, c: [usize; 4]) -> Result<Tripartition> {
    let set: EdgeSet = c.iter().copied().collect();
    if c.iter().any(|&e| e >= g.edge_count()) || set.len() != 4 || !is_cycle(&g, &set) {
        return Err(Error::NotAFourCycle(c));
    }
    for k in 0..4 {
        let (a, b) = (g.endpoints(c[k]), g.endpoints(c[(k + 1) % 4]));
        if a.0 != b.0 && a.0 != b.1 && a.1 != b.0 && a.1 != b.1 {
            return Err(Error::NotAFourCycle(c));
        }
    }
    let space = CycleSpace::new(g, DEFAULT_CYCLE_LIMIT)?;
    let classes = space
        .cycles()
        .iter()
        .map(|cy| {
            let meet = cy.edges().intersection(&set);
            match meet.len() {
                0 | 2 | 4 => CycleClass::Balanced,
                3 => CycleClass::Frame,
                _ if meet.contains(c[0]) || meet.contains(c[2]) => CycleClass::Lift,
                _ => CycleClass::Frame,
            }
        })
        .collect();
    Tripartition::new(space, classes)
}

/// The 4-cycle `0 1 2 3` of `K_n` as edge indices in cyclic order.
pub fn complete_four_cycle(n: usize) -> Result<(Multigraph, [usize; 4])> {
    if n < 4 {
        return Err(Error::ParameterOutOfRange(format!("n = {n}, expected at least 4")));
    }
    let g = Multigraph::complete(n);
    let idx = |u: usize, v: usize| {
        g.edges()
            .iter()
            .position(|&(a, b)| (a, b) == (u.min(v), u.max(v)))
            .expect("complete graph edge")
    };
    let c = [idx(0, 1), idx(1, 2), idx(2, 3), idx(3, 0)];
    Ok((g, c))
}

/// `K_{a,b}` on parts `0..a` and `a..a+b`, edges listed part by part, then an
/// `a`-cycle on the first part and a `b`-cycle on the second.
pub fn kab_graph(a: usize, b: usize) -> Result<Multigraph> {
    if a < 3 || b < 3 || a + b > KAB_CAP {
        return Err(Error::ParameterOutOfRange(format!(
            "a = {a}, b = {b}; expected a, b >= 3 and a + b <= {KAB_CAP}"
        )));
    }
    let mut edges = Vec::new();
    for i in 0..a {
        for j in 0..b {
            edges.push((i, a + j));
        }
    }
    edges.extend((0..a).map(|i| (i, (i + 1) % a)));
    edges.extend((0..b).map(|j| (a + j, a + (j + 1) % b)));
    Multigraph::new(a + b, edges)
}

/// Edge sets of the two added cycles of [`kab_graph`].
pub fn kab_added_cycles(a: usize, b: usize) -> (EdgeSet, EdgeSet) {
    let first = a * b;
    ((first..first + a).collect(), (first + a..first + a + b).collect())
}

/// `K_{a,b}` plus the two added cycles, no balanced cycles, the added cycles
/// on `side` and every other cycle on the other side.
pub fn kab_plus_cycles(a: usize, b: usize, side: Side) -> Result<Tripartition> {
    let bg = empty_bias(kab_graph(a, b)?)?;
    let (c1, c2) = kab_added_cycles(a, b);
    let space = bg.space().clone();
    let special = |i: usize| {
        let e = space.cycle(i).edges();
        *e == c1 || *e == c2
    };
    Tripartition::from_bias(&bg, |i| special(i) == (side == Side::L))
}

/// The `2m × 2m` torus grid with the homology class of each cycle.
#[derive(Clone, Debug)]
pub struct TorusGrid {
    pub m: usize,
    pub bias: BiasedGraph,
    /// Indexed like the cycles of the space.
    pub homology: Vec<(i64, i64)>,
}

impl TorusGrid {
    pub fn side(&self) -> usize {
        2 * self.m
    }

    pub fn space(&self) -> &Arc<CycleSpace> {
        self.bias.space()
    }
}

/// Vertex `(i, j)` is `i * 2m + j`. For each vertex the edge to `(i, j + 1)`
/// comes first, then the edge to `(i + 1, j)`, indices taken mod `2m`.
pub fn torus_graph(m: usize) -> Result<Multigraph> {
    if m < 2 {
        return Err(Error::ParameterOutOfRange(format!("m = {m}, expected at least 2")));
    }
    let s = 2 * m;
    let v = |i: usize, j: usize| (i % s) * s + (j % s);
    let mut edges = Vec::with_capacity(2 * s * s);
    for i in 0..s {
        for j in 0..s {
            edges.push((v(i, j), v(i, j + 1)));
            edges.push((v(i, j), v(i + 1, j)));
        }
    }
    Multigraph::new(s * s, edges)
}

/// Torus grid with the contractible cycles balanced. With `max_len` only
/// cycles of at most that length are enumerated; the space is then flagged
/// incomplete.
pub fn torus_grid(m: usize, max_len: Option<usize>) -> Result<TorusGrid> {
    let g = torus_graph(m)?;
    let space = match max_len {
        Some(k) => CycleSpace::with_max_len(g, k, DEFAULT_CYCLE_LIMIT)?,
        None => CycleSpace::new(g, DEFAULT_CYCLE_LIMIT)?,
    };
    let homology: Vec<(i64, i64)> = space
        .cycles()
        .iter()
        .map(|c| homology_class(space.graph(), m, c))
        .collect();
    let balanced: Vec<EdgeSet> = space
        .cycles()
        .iter()
        .zip(&homology)
        .filter(|(_, &h)| h == (0, 0))
        .map(|(c, _)| c.edges().clone())
        .collect();
    let bias = BiasedGraph::from_balanced_cycles(space, &balanced)?;
    Ok(TorusGrid { m, bias, homology })
}

/// Winding numbers of a cycle of [`torus_graph`]: the signed sum of edge
/// displacements divided by `2m`, with the first nonzero coordinate made
/// positive.
pub fn homology_class(g: &Multigraph, m: usize, c: &Cycle) -> (i64, i64) {
    let s = 2 * m;
    let coords = |v: usize| (v / s, v % s);
    // Walk the cycle, summing the displacement of each step.
    let edges = c.edges().to_vec();
    let start = g.endpoints(edges[0]).0;
    let mut used = vec![false; edges.len()];
    let (mut at, mut dx, mut dy) = (start, 0i64, 0i64);
    for _ in 0..edges.len() {
        let k = (0..edges.len())
            .find(|&k| {
                let (u, v) = g.endpoints(edges[k]);
                !used[k] && (u == at || v == at)
            })
            .expect("cycle edges form a closed walk");
        used[k] = true;
        let (u, v) = g.endpoints(edges[k]);
        let next = if u == at { v } else { u };
        let ((i0, j0), (i1, j1)) = (coords(at), coords(next));
        let step = |a: usize, b: usize| -> i64 {
            let d = (b + s - a) % s;
            if d == 1 {
                1
            } else if d == s - 1 {
                -1
            } else {
                0
            }
        };
        dx += step(j0, j1);
        dy += step(i0, i1);
        at = next;
    }
    let (a, b) = (dx / s as i64, dy / s as i64);
    if a < 0 || (a == 0 && b < 0) {
        (-a, -b)
    } else {
        (a, b)
    }
}

/// Two digons `ab`, `cd` and two digons `ac`, `bd` on four vertices: the
/// smallest convenient graph whose empty-bias proper tripartitions include
/// non-degenerate ones.
pub fn doubled_square() -> Multigraph {
    Multigraph::new(4, vec![(0, 1), (0, 1), (2, 3), (2, 3), (0, 2), (0, 2), (1, 3), (1, 3)]).expect("valid fixture")
}

/// [`doubled_square`] with digons `ab`, `cd` in L and every other cycle in F.
pub fn doubled_square_tripartition() -> Result<Tripartition> {
    let bg = empty_bias(doubled_square())?;
    let lift = [EdgeSet::from_mask(0b11), EdgeSet::from_mask(0b1100)];
    let space = bg.space().clone();
    Tripartition::from_bias(&bg, |i| lift.contains(space.cycle(i).edges()))
}

fn random_multigraph(rng: &mut impl Rng, n: usize, m: usize, loop_p: f64) -> Result<Multigraph> {
    if n == 0 {
        return Err(Error::ParameterOutOfRange("n = 0".into()));
    }
    let edges = (0..m)
        .map(|_| {
            let u = rng.random_range(0..n);
            if n == 1 || rng.random_bool(loop_p) {
                (u, u)
            } else {
                let v = (u + rng.random_range(1..n)) % n;
                (u.min(v), u.max(v))
            }
        })
        .collect();
    Multigraph::new(n, edges)
}

/// A random multigraph on `n` vertices with `m` edges (loops allowed with
/// probability `loop_p` per edge) and a random proper tripartition of its
/// cycles over the empty bias.
pub fn random_instance(rng: &mut impl Rng, n: usize, m: usize, loop_p: f64) -> Result<Tripartition> {
    let bg = empty_bias(random_multigraph(rng, n, m, loop_p)?)?;
    Ok(random_proper_tripartition(&bg, rng))
}

/// As [`random_instance`], but each edge gets a random sign and the balanced
/// cycles are those with an even number of negative edges.
pub fn random_signed_instance(rng: &mut impl Rng, n: usize, m: usize, loop_p: f64) -> Result<Tripartition> {
    let g = random_multigraph(rng, n, m, loop_p)?;
    let negative: EdgeSet = (0..m).filter(|_| rng.random_bool(0.5)).collect();
    let space = CycleSpace::new(g, DEFAULT_CYCLE_LIMIT)?;
    let bg = BiasedGraph::from_predicate(space, |c| c.intersection_len(&negative) % 2 == 0)?;
    Ok(random_proper_tripartition(&bg, rng))
}

/// Named generator parameters, as used by the command line.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "example", rename_all = "snake_case")]
pub enum ExampleSpec {
    Complete {
        n: usize,
        side: Side,
    },
    FourCycleParity {
        n: usize,
    },
    Kab {
        a: usize,
        b: usize,
        side: Side,
    },
    DoubledSquare,
    Random {
        n: usize,
        m: usize,
        seed: u64,
        #[serde(default)]
        signed: bool,
    },
}

pub fn generate(spec: &ExampleSpec) -> Result<Tripartition> {
    use rand::SeedableRng;
    match *spec {
        ExampleSpec::Complete { n, side } => complete_empty_bias(n, side),
        ExampleSpec::FourCycleParity { n } => {
            let (g, c) = complete_four_cycle(n)?;
            four_cycle_parity(g, c)
        }
        ExampleSpec::Kab { a, b, side } => kab_plus_cycles(a, b, side),
        ExampleSpec::DoubledSquare => doubled_square_tripartition(),
        ExampleSpec::Random { n, m, seed, signed } => {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            if signed {
                random_signed_instance(&mut rng, n, m, 0.15)
            } else {
                random_instance(&mut rng, n, m, 0.15)
            }
        }
    }
}
