//! JSON documents for graphs, biases, bracelet functions and tripartitions.
//!
//! A document may hold any subset of the parts. Several documents can be
//! merged into one [`Bundle`], which is then resolved against the cycle space
//! of its graph.

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::bias::BiasedGraph;
use crate::bitset::EdgeSet;
use crate::bracelets::{Bracelet, BraceletFunction, BraceletValue};
use crate::error::{Error, Result};
use crate::examples::{four_cycle_parity, homology_class, torus_graph};
use crate::graph::{CycleSpace, Multigraph, DEFAULT_CYCLE_LIMIT};
use crate::tripartition::{tripartition_from_chi, CycleClass, Tripartition};

/// Wire form of a [`Multigraph`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphJson {
    pub vertices: usize,
    pub edges: Vec<[usize; 2]>,
}

impl From<Multigraph> for GraphJson {
    fn from(g: Multigraph) -> Self {
        Self {
            vertices: g.vertex_count(),
            edges: g.edges().iter().map(|&(u, v)| [u, v]).collect(),
        }
    }
}

impl TryFrom<GraphJson> for Multigraph {
    type Error = Error;

    fn try_from(g: GraphJson) -> Result<Self> {
        Multigraph::new(g.vertices, g.edges.into_iter().map(|[u, v]| (u, v)).collect())
    }
}

/// A named generator with its parameters.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Rule {
    pub rule: String,
    #[serde(default, skip_serializing_if = "Map::is_empty")]
    pub params: Map<String, Value>,
}

impl Rule {
    pub fn new(rule: &str, params: Value) -> Self {
        let params = match params {
            Value::Object(m) => m,
            _ => Map::new(),
        };
        Self {
            rule: rule.to_string(),
            params,
        }
    }

    fn param<T: for<'de> Deserialize<'de>>(&self, key: &str) -> Result<T> {
        let v = self
            .params
            .get(key)
            .ok_or_else(|| Error::Format(format!("rule {:?} needs parameter {key:?}", self.rule)))?;
        serde_json::from_value(v.clone())
            .map_err(|e| Error::Format(format!("rule {:?}, parameter {key:?}: {e}", self.rule)))
    }

    fn unknown(&self, what: &str) -> Error {
        Error::Format(format!("unknown {what} rule {:?}", self.rule))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum BiasJson {
    Explicit { balanced_cycles: Vec<EdgeSet> },
    Rule(Rule),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum TripartitionJson {
    Explicit {
        #[serde(rename = "B")]
        b: Vec<EdgeSet>,
        #[serde(rename = "L")]
        l: Vec<EdgeSet>,
        #[serde(rename = "F")]
        f: Vec<EdgeSet>,
    },
    Rule(Rule),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChiEntry {
    pub cycle_a: EdgeSet,
    pub cycle_b: EdgeSet,
    pub value: BraceletValue,
}

pub fn chi_to_json(chi: &BraceletFunction) -> Vec<ChiEntry> {
    chi.iter()
        .map(|(b, value)| ChiEntry {
            cycle_a: b.cycle_a.clone(),
            cycle_b: b.cycle_b.clone(),
            value,
        })
        .collect()
}

pub fn chi_from_json(entries: &[ChiEntry]) -> BraceletFunction {
    entries
        .iter()
        .map(|e| (Bracelet::new(e.cycle_a.clone(), e.cycle_b.clone()), e.value))
        .collect()
}

pub fn tripartition_to_json(t: &Tripartition) -> TripartitionJson {
    TripartitionJson::Explicit {
        b: t.cycles_in(CycleClass::Balanced),
        l: t.cycles_in(CycleClass::Lift),
        f: t.cycles_in(CycleClass::Frame),
    }
}

/// Sorted list of sorted edge-index lists.
pub fn edge_sets_to_json(sets: &[EdgeSet]) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = sets.iter().map(EdgeSet::to_vec).collect();
    out.sort();
    out.dedup();
    out
}

/// Any combination of the documented parts. Other keys, such as the
/// `edge_map` written next to a minor or a sum, are ignored on input.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Bundle {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub graph: Option<Multigraph>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bias: Option<BiasJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tripartition: Option<TripartitionJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chi: Option<Vec<ChiEntry>>,
}

/// A resolved bundle. Exactly one of `tripartition` and `chi` is set when
/// the bundle named either.
#[derive(Clone, Debug)]
pub struct Instance {
    pub bias: BiasedGraph,
    pub tripartition: Option<Tripartition>,
    pub chi: Option<BraceletFunction>,
}

impl Instance {
    pub fn graph(&self) -> &Multigraph {
        self.bias.graph()
    }
}

impl Bundle {
    pub fn from_tripartition(t: &Tripartition) -> Self {
        Self {
            graph: Some(t.graph().clone()),
            bias: Some(BiasJson::Explicit {
                balanced_cycles: t.cycles_in(CycleClass::Balanced),
            }),
            tripartition: Some(tripartition_to_json(t)),
            chi: None,
        }
    }

    pub fn from_biased_graph(bg: &BiasedGraph) -> Self {
        Self {
            graph: Some(bg.graph().clone()),
            bias: Some(BiasJson::Explicit {
                balanced_cycles: bg.balanced_cycles(),
            }),
            ..Self::default()
        }
    }

    /// Parses a document holding either a bundle or a single part. Bare
    /// bias and tripartition rules are told apart by the rule name.
    pub fn parse(text: &str) -> Result<Self> {
        let v: Value = serde_json::from_str(text)?;
        let part = |e: serde_json::Error| Error::Format(e.to_string());
        let graph = |v: Value| -> Result<Multigraph> {
            Multigraph::try_from(serde_json::from_value::<GraphJson>(v).map_err(part)?)
        };
        match v {
            Value::Array(_) => Ok(Self {
                chi: Some(serde_json::from_value(v).map_err(part)?),
                ..Self::default()
            }),
            Value::Object(m) if m.contains_key("vertices") => Ok(Self {
                graph: Some(graph(Value::Object(m))?),
                ..Self::default()
            }),
            Value::Object(m) if m.contains_key("balanced_cycles") => Ok(Self {
                bias: Some(serde_json::from_value(Value::Object(m)).map_err(part)?),
                ..Self::default()
            }),
            Value::Object(m) if m.contains_key("B") || m.contains_key("L") || m.contains_key("F") => Ok(Self {
                tripartition: Some(serde_json::from_value(Value::Object(m)).map_err(part)?),
                ..Self::default()
            }),
            Value::Object(m) if m.contains_key("rule") => {
                let r: Rule = serde_json::from_value(Value::Object(m)).map_err(part)?;
                if BIAS_RULES.contains(&r.rule.as_str()) {
                    Ok(Self {
                        bias: Some(BiasJson::Rule(r)),
                        ..Self::default()
                    })
                } else if TRIPARTITION_RULES.contains(&r.rule.as_str()) {
                    Ok(Self {
                        tripartition: Some(TripartitionJson::Rule(r)),
                        ..Self::default()
                    })
                } else {
                    Err(r.unknown("bias or tripartition"))
                }
            }
            Value::Object(mut m) => {
                let g = m.remove("graph").map(graph).transpose()?;
                let mut bundle: Bundle = serde_json::from_value(Value::Object(m)).map_err(part)?;
                bundle.graph = g;
                Ok(bundle)
            }
            _ => Err(Error::Format("expected a JSON object or array".into())),
        }
    }

    /// Fills parts missing here from `other`; a part given twice is an error.
    pub fn merge(&mut self, other: Bundle) -> Result<()> {
        fn take<T>(slot: &mut Option<T>, v: Option<T>, name: &str) -> Result<()> {
            match (slot.is_some(), v) {
                (true, Some(_)) => Err(Error::Format(format!("{name} given more than once"))),
                (false, Some(v)) => {
                    *slot = Some(v);
                    Ok(())
                }
                (_, None) => Ok(()),
            }
        }
        take(&mut self.graph, other.graph, "graph")?;
        take(&mut self.bias, other.bias, "bias")?;
        take(&mut self.tripartition, other.tripartition, "tripartition")?;
        take(&mut self.chi, other.chi, "chi")
    }

    /// Enumerates cycles of the graph (at most `cycle_limit`) and compiles
    /// every part to extensional form. A missing bias is read off the
    /// tripartition when there is one and is empty otherwise; `frame` and
    /// `lift` then see the empty bias. The
    /// tripartition is checked for propriety; χ only for totality.
    pub fn resolve(&self, cycle_limit: usize) -> Result<Instance> {
        let g = self
            .graph
            .clone()
            .ok_or_else(|| Error::Format("missing graph".into()))?;
        if self.tripartition.is_some() && self.chi.is_some() {
            return Err(Error::Format(
                "give a tripartition or a bracelet function, not both".into(),
            ));
        }
        let space = CycleSpace::new(g, cycle_limit)?;
        let (bias, tripartition) = match (&self.bias, &self.tripartition) {
            (Some(bj), tj) => {
                let bias = compile_bias(&space, bj)?;
                let t = tj.as_ref().map(|tj| compile_tripartition(&bias, tj)).transpose()?;
                (bias, t)
            }
            (None, Some(tj)) => {
                let provisional = BiasedGraph::empty_bias(space.clone());
                let t = match tj {
                    TripartitionJson::Explicit { b, l, f } => Tripartition::from_sets(space.clone(), b, l, f)?,
                    TripartitionJson::Rule(_) => compile_tripartition(&provisional, tj)?,
                };
                (t.biased_graph(), Some(t))
            }
            (None, None) => (BiasedGraph::empty_bias(space.clone()), None),
        };
        if let Some(t) = &tripartition {
            let same_b = t
                .classes()
                .iter()
                .zip(bias.balanced_flags())
                .all(|(&c, &b)| (c == CycleClass::Balanced) == b);
            if !same_b {
                return Err(Error::NotAPartition(
                    "B differs from the balanced cycles of the bias".into(),
                ));
            }
            if let Err(v) = t.validate_proper() {
                return Err(Error::ImproperTripartition(v));
            }
        }
        let chi = match &self.chi {
            Some(entries) => {
                let chi = chi_from_json(entries);
                crate::bracelets::check_total(&bias, &chi)?;
                Some(chi)
            }
            None => None,
        };
        Ok(Instance {
            bias,
            tripartition,
            chi,
        })
    }
}

/// Bias rules: `empty`, `all_balanced`, `contractible {m}` (torus grid),
/// and, inside a bundle, `four_cycle_parity {cycle}`.
pub const BIAS_RULES: &[&str] = &["empty", "all_balanced", "contractible"];
/// Tripartition rules: `frame`, `lift`, `four_cycle_parity {cycle}`.
pub const TRIPARTITION_RULES: &[&str] = &["frame", "lift", "four_cycle_parity"];

pub fn compile_bias(space: &Arc<CycleSpace>, b: &BiasJson) -> Result<BiasedGraph> {
    match b {
        BiasJson::Explicit { balanced_cycles } => BiasedGraph::from_balanced_cycles(space.clone(), balanced_cycles),
        BiasJson::Rule(r) => match r.rule.as_str() {
            "empty" => Ok(BiasedGraph::empty_bias(space.clone())),
            "all_balanced" => Ok(BiasedGraph::all_balanced(space.clone())),
            "contractible" => {
                let m: usize = r.param("m")?;
                if torus_graph(m)? != *space.graph() {
                    return Err(Error::Format(format!("graph is not the torus grid with m = {m}")));
                }
                let g = space.graph();
                let balanced = space
                    .cycles()
                    .iter()
                    .map(|c| homology_class(g, m, c) == (0, 0))
                    .collect();
                BiasedGraph::new(space.clone(), balanced)
            }
            "four_cycle_parity" => {
                let c: [usize; 4] = r.param("cycle")?;
                Ok(four_cycle_parity(space.graph().clone(), c)?.biased_graph())
            }
            _ => Err(r.unknown("bias")),
        },
    }
}

pub fn compile_tripartition(bias: &BiasedGraph, t: &TripartitionJson) -> Result<Tripartition> {
    match t {
        TripartitionJson::Explicit { b, l, f } => Tripartition::from_sets(bias.space().clone(), b, l, f),
        TripartitionJson::Rule(r) => match r.rule.as_str() {
            "frame" => Tripartition::from_bias(bias, |_| false),
            "lift" => Tripartition::from_bias(bias, |_| true),
            "four_cycle_parity" => {
                let c: [usize; 4] = r.param("cycle")?;
                four_cycle_parity(bias.graph().clone(), c)
            }
            _ => Err(r.unknown("tripartition")),
        },
    }
}

impl Instance {
    /// The tripartition, recovered from χ if that is what was given, or the
    /// all-F tripartition if neither was.
    pub fn require_tripartition(&self) -> Result<Tripartition> {
        match (&self.tripartition, &self.chi) {
            (Some(t), _) => Ok(t.clone()),
            (None, Some(chi)) => tripartition_from_chi(&self.bias, chi),
            (None, None) => Tripartition::from_bias(&self.bias, |_| false),
        }
    }
}

/// Parses and merges documents.
pub fn load_bundle<'a>(texts: impl IntoIterator<Item = &'a str>) -> Result<Bundle> {
    let mut bundle = Bundle::default();
    for t in texts {
        bundle.merge(Bundle::parse(t)?)?;
    }
    Ok(bundle)
}

pub fn load_instance<'a>(texts: impl IntoIterator<Item = &'a str>) -> Result<Instance> {
    load_bundle(texts)?.resolve(DEFAULT_CYCLE_LIMIT)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bracelets::BraceletFunction;
    use crate::examples::{complete_four_cycle, doubled_square_tripartition, torus_grid};
    use crate::tripartition::chi_from_tripartition;

    #[test]
    fn graph_wire_format() {
        let g = Multigraph::new(2, vec![(0, 1), (0, 1), (1, 1)]).unwrap();
        let s = serde_json::to_string(&g).unwrap();
        assert_eq!(s, r#"{"vertices":2,"edges":[[0,1],[0,1],[1,1]]}"#);
        assert_eq!(serde_json::from_str::<Multigraph>(&s).unwrap(), g);
        assert!(serde_json::from_str::<Multigraph>(r#"{"vertices":1,"edges":[[0,1]]}"#).is_err());
    }

    #[test]
    fn tripartition_round_trip() {
        let t = doubled_square_tripartition().unwrap();
        let text = serde_json::to_string(&Bundle::from_tripartition(&t)).unwrap();
        let inst = load_instance([text.as_str()]).unwrap();
        assert_eq!(inst.tripartition.unwrap(), t);
    }

    #[test]
    fn separate_documents_merge() {
        let t = doubled_square_tripartition().unwrap();
        let g = serde_json::to_string(t.graph()).unwrap();
        let tj = serde_json::to_string(&tripartition_to_json(&t)).unwrap();
        let inst = load_instance([g.as_str(), tj.as_str()]).unwrap();
        assert_eq!(inst.tripartition.unwrap(), t);
        assert!(matches!(load_instance([g.as_str(), g.as_str()]), Err(Error::Format(_))));
    }

    #[test]
    fn chi_round_trip() {
        let t = doubled_square_tripartition().unwrap();
        let chi = chi_from_tripartition(&t).unwrap();
        let entries = chi_to_json(&chi);
        let text = serde_json::to_string(&entries).unwrap();
        assert!(text.contains(r#""value":"dependent""#) || text.contains(r#""value":"independent""#));
        let back: Vec<ChiEntry> = serde_json::from_str(&text).unwrap();
        assert_eq!(chi_from_json(&back), chi);
        let g = serde_json::to_string(t.graph()).unwrap();
        let b = serde_json::to_string(&BiasJson::Explicit {
            balanced_cycles: t.cycles_in(CycleClass::Balanced),
        })
        .unwrap();
        let inst = load_instance([g.as_str(), b.as_str(), text.as_str()]).unwrap();
        assert_eq!(inst.require_tripartition().unwrap(), t);
        let p = serde_json::to_string(&chi_to_json(&BraceletFunction::new())).unwrap();
        assert!(matches!(
            load_instance([g.as_str(), b.as_str(), p.as_str()]),
            Err(Error::BraceletFunctionNotTotal(_))
        ));
    }

    #[test]
    fn rules_compile() {
        let (g, c) = complete_four_cycle(5).unwrap();
        let doc = serde_json::json!({
            "graph": g,
            "tripartition": {"rule": "four_cycle_parity", "params": {"cycle": c}},
            "bias": {"rule": "four_cycle_parity", "params": {"cycle": c}},
        });
        let inst = load_instance([doc.to_string().as_str()]).unwrap();
        assert_eq!(inst.tripartition.unwrap(), four_cycle_parity(g.clone(), c).unwrap());

        let bare = serde_json::json!({"rule": "lift"}).to_string();
        let gs = serde_json::to_string(&g).unwrap();
        let inst = load_instance([gs.as_str(), bare.as_str()]).unwrap();
        assert!(inst.tripartition.unwrap().is_degenerate(crate::tripartition::Side::F));
        let bare = serde_json::json!({"rule": "four_cycle_parity", "params": {"cycle": c}}).to_string();
        let inst = load_instance([gs.as_str(), bare.as_str()]).unwrap();
        assert_eq!(inst.tripartition.unwrap(), four_cycle_parity(g.clone(), c).unwrap());
        let bad = serde_json::json!({"rule": "nope"}).to_string();
        assert!(load_instance([gs.as_str(), bad.as_str()]).is_err());
    }

    #[test]
    fn contractible_rule_matches_generator() {
        let grid = torus_grid(2, Some(4)).unwrap();
        let space = grid.space().clone();
        let b = compile_bias(
            &space,
            &BiasJson::Rule(Rule::new("contractible", serde_json::json!({"m": 2}))),
        )
        .unwrap();
        assert_eq!(b.balanced_flags(), grid.bias.balanced_flags());
        let wrong = compile_bias(
            &space,
            &BiasJson::Rule(Rule::new("contractible", serde_json::json!({"m": 3}))),
        );
        assert!(wrong.is_err());
    }

    #[test]
    fn edge_set_lists_are_sorted() {
        let sets: Vec<EdgeSet> = vec![[3, 1].into_iter().collect(), [0, 2].into_iter().collect()];
        assert_eq!(edge_sets_to_json(&sets), vec![vec![0, 2], vec![1, 3]]);
    }
}
