//! Instance files: JSON with bitmask-indexed tables, `"-inf"` for `−∞`,
//! and rationals as `"num/den"` strings.
//!
//! ```json
//! {
//!   "n": 2,
//!   "names": ["s1", "s2"],
//!   "spec": { "kind": "table", "values": [0, 0, 1, 3] }
//! }
//! ```
//!
//! `spec` may also be `{"kind": "graph", "edges": [[0, 1], ...]}` (number of
//! edges induced by `X`) or `{"kind": "modular", "weights": [...], "base": spec}`
//! (`base(X) + w(X)`). An optional `"cost"` array holds one rational per element.

use std::path::Path;

use num::BigRational;
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::setfn::vector::{format_rational, rational_from_json};
use crate::setfn::{Ext, GroundSet, Subset, SupermodularOracle};

/// Pairs sampled by the supermodularity check above the exhaustive limit.
const SUPERMODULAR_SAMPLES: usize = 20_000;
const EXHAUSTIVE_CHECK_MAX_N: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PSpec {
    Table(Vec<Ext>),
    /// Induced edge count of a multigraph.
    Graph(Vec<(usize, usize)>),
    /// `base + w̃`.
    Modular {
        weights: Vec<i64>,
        base: Box<PSpec>,
    },
}

impl PSpec {
    pub fn eval(&self, x: Subset) -> Ext {
        match self {
            PSpec::Table(t) => t[x.bits() as usize],
            PSpec::Graph(edges) => Ext::Finite(
                edges
                    .iter()
                    .filter(|&&(i, j)| x.contains(i) && x.contains(j))
                    .count() as i128,
            ),
            PSpec::Modular { weights, base } => {
                let w: i128 = x.iter().map(|s| weights[s] as i128).sum();
                base.eval(x) + Ext::Finite(w)
            }
        }
    }

    fn check_shape(&self, n: usize) -> Result<()> {
        match self {
            PSpec::Table(t) => {
                if t.len() != 1 << n {
                    return Err(Error::TableLength {
                        n,
                        expected: 1 << n,
                        got: t.len(),
                    });
                }
            }
            PSpec::Graph(edges) => {
                if let Some(&(i, j)) = edges.iter().find(|&&(i, j)| i >= n || j >= n) {
                    return Err(Error::ElementOutOfRange(i.max(j)));
                }
            }
            PSpec::Modular { weights, base } => {
                if weights.len() != n {
                    return Err(Error::Dimension {
                        expected: n,
                        got: weights.len(),
                    });
                }
                base.check_shape(n)?;
            }
        }
        Ok(())
    }

    fn to_json(&self) -> Value {
        match self {
            PSpec::Table(t) => json!({
                "kind": "table",
                "values": t.iter().map(ext_to_json).collect::<Vec<_>>(),
            }),
            PSpec::Graph(edges) => json!({
                "kind": "graph",
                "edges": edges.iter().map(|&(i, j)| json!([i, j])).collect::<Vec<_>>(),
            }),
            PSpec::Modular { weights, base } => json!({
                "kind": "modular",
                "weights": weights,
                "base": base.to_json(),
            }),
        }
    }

    fn from_json(v: &Value) -> Result<Self> {
        let obj = v
            .as_object()
            .ok_or_else(|| parse_err("spec must be an object"))?;
        let kind = obj
            .get("kind")
            .and_then(Value::as_str)
            .ok_or_else(|| parse_err("spec.kind must be a string"))?;
        match kind {
            "table" => {
                let values = array(obj, "values")?;
                Ok(PSpec::Table(
                    values.iter().map(ext_from_json).collect::<Result<_>>()?,
                ))
            }
            "graph" => {
                let edges = array(obj, "edges")?
                    .iter()
                    .map(|e| match e.as_array().map(Vec::as_slice) {
                        Some([i, j]) => Ok((index(i)?, index(j)?)),
                        _ => Err(parse_err("each edge must be a pair [i, j]")),
                    })
                    .collect::<Result<_>>()?;
                Ok(PSpec::Graph(edges))
            }
            "modular" => {
                let weights = array(obj, "weights")?
                    .iter()
                    .map(|w| {
                        w.as_i64()
                            .ok_or_else(|| parse_err("weights must be integers"))
                    })
                    .collect::<Result<_>>()?;
                let base = obj
                    .get("base")
                    .ok_or_else(|| parse_err("modular spec needs a base"))?;
                Ok(PSpec::Modular {
                    weights,
                    base: Box::new(PSpec::from_json(base)?),
                })
            }
            other => Err(parse_err(&format!("unknown spec kind {other:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub names: Vec<String>,
    pub spec: PSpec,
    pub cost: Option<Vec<BigRational>>,
}

impl Instance {
    pub fn new(n: usize, spec: PSpec) -> Result<Self> {
        let inst = Instance {
            names: GroundSet::new(n)?.names,
            spec,
            cost: None,
        };
        inst.spec.check_shape(n)?;
        Ok(inst)
    }

    pub fn n(&self) -> usize {
        self.names.len()
    }

    pub fn ground(&self) -> Result<GroundSet> {
        GroundSet::with_names(self.names.clone())
    }

    /// Builds the oracle. Checks `p(∅) = 0` and finite `p(S)` but not supermodularity.
    pub fn oracle(&self) -> Result<SupermodularOracle> {
        let ground = self.ground()?;
        match &self.spec {
            PSpec::Table(t) => SupermodularOracle::from_table(ground, t.clone()),
            spec => {
                let spec = spec.clone();
                SupermodularOracle::from_fn(ground, move |x| spec.eval(x))
            }
        }
    }

    /// Full validation. Returns the oracle and any warnings.
    pub fn validate(&self) -> Result<(SupermodularOracle, Vec<String>)> {
        self.spec.check_shape(self.n())?;
        if let Some(c) = &self.cost {
            if c.len() != self.n() {
                return Err(Error::Dimension {
                    expected: self.n(),
                    got: c.len(),
                });
            }
        }
        let p = self.oracle()?;
        p.check_supermodular(SUPERMODULAR_SAMPLES)?;
        let mut warnings = Vec::new();
        if self.n() > EXHAUSTIVE_CHECK_MAX_N {
            warnings.push(format!(
                "supermodularity checked on {SUPERMODULAR_SAMPLES} sampled pairs only (n > {EXHAUSTIVE_CHECK_MAX_N})"
            ));
        }
        Ok((p, warnings))
    }

    pub fn to_json(&self) -> Value {
        let mut obj = Map::new();
        obj.insert("n".into(), json!(self.n()));
        obj.insert("names".into(), json!(self.names));
        obj.insert("spec".into(), self.spec.to_json());
        if let Some(c) = &self.cost {
            obj.insert(
                "cost".into(),
                json!(c.iter().map(format_rational).collect::<Vec<_>>()),
            );
        }
        Value::Object(obj)
    }

    /// Canonical text form: sorted keys, two-space indentation, trailing newline.
    pub fn to_json_string(&self) -> String {
        let mut s =
            serde_json::to_string_pretty(&self.to_json()).expect("JSON values always serialize");
        s.push('\n');
        s
    }

    /// Parses without the supermodularity check; see [`parse_instance`].
    pub fn from_json_str(text: &str) -> Result<Self> {
        let v: Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let obj = v
            .as_object()
            .ok_or_else(|| parse_err("top level must be an object"))?;
        let n = obj
            .get("n")
            .and_then(Value::as_u64)
            .ok_or_else(|| parse_err("n must be a nonnegative integer"))? as usize;
        let names = match obj.get("names") {
            None => GroundSet::new(n)?.names,
            Some(v) => v
                .as_array()
                .ok_or_else(|| parse_err("names must be an array"))?
                .iter()
                .map(|s| {
                    s.as_str()
                        .map(str::to_owned)
                        .ok_or_else(|| parse_err("names must be strings"))
                })
                .collect::<Result<_>>()?,
        };
        if names.len() != n {
            return Err(Error::Dimension {
                expected: n,
                got: names.len(),
            });
        }
        let spec = PSpec::from_json(obj.get("spec").ok_or_else(|| parse_err("missing spec"))?)?;
        spec.check_shape(n)?;
        let cost = match obj.get("cost") {
            None | Some(Value::Null) => None,
            Some(v) => Some(parse_cost(v)?),
        };
        Ok(Instance { names, spec, cost })
    }
}

/// A rational vector given as a JSON array of integers or `"num/den"` strings.
pub fn parse_cost(v: &Value) -> Result<Vec<BigRational>> {
    v.as_array()
        .ok_or_else(|| parse_err("cost must be an array"))?
        .iter()
        .map(rational_from_json)
        .collect()
}

/// Reads and fully validates an instance file.
pub fn parse_instance(path: &Path) -> Result<(Instance, SupermodularOracle, Vec<String>)> {
    let text =
        std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    let inst = Instance::from_json_str(&text)?;
    let (p, warnings) = inst.validate()?;
    Ok((inst, p, warnings))
}

fn parse_err(msg: &str) -> Error {
    Error::Parse(msg.to_owned())
}

fn array<'a>(obj: &'a Map<String, Value>, key: &str) -> Result<&'a Vec<Value>> {
    obj.get(key)
        .and_then(Value::as_array)
        .ok_or_else(|| parse_err(&format!("{key} must be an array")))
}

fn index(v: &Value) -> Result<usize> {
    v.as_u64()
        .map(|i| i as usize)
        .ok_or_else(|| parse_err("element indices must be nonnegative integers"))
}

fn ext_to_json(v: &Ext) -> Value {
    match v {
        Ext::Finite(x) => match i64::try_from(*x) {
            Ok(x) => json!(x),
            Err(_) => json!(x.to_string()),
        },
        Ext::NegInf => json!("-inf"),
        Ext::PosInf => json!("+inf"),
    }
}

fn ext_from_json(v: &Value) -> Result<Ext> {
    match v {
        Value::Number(x) => x
            .as_i64()
            .map(Ext::from)
            .ok_or_else(|| parse_err(&format!("table value {x} is not an integer"))),
        Value::String(s) if s == "-inf" => Ok(Ext::NegInf),
        Value::String(s) => s.parse::<i128>().map(Ext::Finite).map_err(|_| {
            parse_err(&format!(
                "table value {s:?} is neither an integer nor \"-inf\""
            ))
        }),
        other => Err(parse_err(&format!("table value {other} is not an integer"))),
    }
}
