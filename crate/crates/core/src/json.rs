//! JSON encodings of the engine's inputs and outputs.
//!
//! Parsers walk a [`Node`], which tracks the JSON path of the value it wraps,
//! so that every schema or validation failure names its location. Objects
//! are emitted with sorted keys.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};

use crate::abelian::{FgAbGroup, Homomorphism, IntMatrix};
use crate::cochain::{CechComplex, Cochain, CohomologyClass, SimplicialComplex};
use crate::error::{Error, Result};
use crate::exactseq::ShortExactSequence;
use crate::liftgerbe::{CentralExtension, FiniteGroup, TransitionCocycle};
use crate::tower::{TowerClasses, TowerSpec};

/// A JSON value together with its path from the document root.
#[derive(Clone, Debug)]
pub struct Node<'a> {
    value: &'a Value,
    path: String,
}

impl<'a> Node<'a> {
    pub fn root(value: &'a Value) -> Self {
        Node {
            value,
            path: "$".into(),
        }
    }

    pub fn value(&self) -> &'a Value {
        self.value
    }

    pub fn path(&self) -> &str {
        &self.path
    }

    pub fn error(&self, message: impl Into<String>) -> Error {
        Error::Schema {
            path: self.path.clone(),
            message: message.into(),
        }
    }

    /// Attaches this node's path to a domain error.
    pub fn at<T>(&self, r: Result<T>) -> Result<T> {
        r.map_err(|e| match e {
            Error::Schema { .. } | Error::At { .. } => e,
            e => Error::At {
                path: self.path.clone(),
                source: Box::new(e),
            },
        })
    }

    fn child(&self, key: &str, value: &'a Value) -> Node<'a> {
        let simple = !key.is_empty() && key.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
        let path = if simple {
            format!("{}.{key}", self.path)
        } else {
            format!("{}[{key:?}]", self.path)
        };
        Node { value, path }
    }

    pub fn object(&self) -> Result<&'a Map<String, Value>> {
        self.value.as_object().ok_or_else(|| self.error("expected an object"))
    }

    pub fn get(&self, key: &str) -> Result<Node<'a>> {
        self.opt(key)?.ok_or_else(|| self.error(format!("missing field \"{key}\"")))
    }

    pub fn opt(&self, key: &str) -> Result<Option<Node<'a>>> {
        Ok(self.object()?.get(key).filter(|v| !v.is_null()).map(|v| self.child(key, v)))
    }

    pub fn entries(&self) -> Result<Vec<(&'a str, Node<'a>)>> {
        Ok(self.object()?.iter().map(|(k, v)| (k.as_str(), self.child(k, v))).collect())
    }

    pub fn array(&self) -> Result<Vec<Node<'a>>> {
        let items = self.value.as_array().ok_or_else(|| self.error("expected an array"))?;
        Ok(items
            .iter()
            .enumerate()
            .map(|(i, v)| Node {
                value: v,
                path: format!("{}[{i}]", self.path),
            })
            .collect())
    }

    pub fn str(&self) -> Result<&'a str> {
        self.value.as_str().ok_or_else(|| self.error("expected a string"))
    }

    pub fn bool(&self) -> Result<bool> {
        self.value.as_bool().ok_or_else(|| self.error("expected a boolean"))
    }

    pub fn bigint(&self) -> Result<BigInt> {
        match self.value {
            Value::Number(n) => {
                if let Some(i) = n.as_i64() {
                    Ok(BigInt::from(i))
                } else if let Some(u) = n.as_u64() {
                    Ok(BigInt::from(u))
                } else {
                    Err(self.error("expected an integer"))
                }
            }
            Value::String(s) => s.trim().parse().map_err(|_| self.error("expected an integer")),
            _ => Err(self.error("expected an integer")),
        }
    }

    pub fn usize(&self) -> Result<usize> {
        self.value
            .as_u64()
            .and_then(|u| usize::try_from(u).ok())
            .ok_or_else(|| self.error("expected a non-negative integer"))
    }

    pub fn usize_array(&self) -> Result<Vec<usize>> {
        self.array()?.iter().map(Node::usize).collect()
    }

    pub fn bigint_array(&self) -> Result<Vec<BigInt>> {
        self.array()?.iter().map(Node::bigint).collect()
    }
}

/// Integers that fit in 64 bits are numbers; larger ones are strings.
pub fn bigint_value(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(i) => Value::from(i),
        None => Value::String(x.to_string()),
    }
}

pub fn bigints_value(xs: &[BigInt]) -> Value {
    Value::Array(xs.iter().map(bigint_value).collect())
}

/// Reads `{"free_rank": k, "torsion": [d, ...]}` or a string such as
/// `"Z^2 + Z/2 + Z/4"`. Generators keep the order written.
pub fn parse_group(node: &Node) -> Result<FgAbGroup> {
    let mut moduli = Vec::new();
    if let Value::String(s) = node.value() {
        let s = s.trim();
        if s == "0" {
            return Ok(FgAbGroup::trivial());
        }
        for term in s.split('+').map(str::trim) {
            if term == "Z" {
                moduli.push(BigInt::from(0));
            } else if let Some(k) = term.strip_prefix("Z^") {
                let k: usize = k.parse().map_err(|_| node.error(format!("bad rank in \"{term}\"")))?;
                moduli.extend((0..k).map(|_| BigInt::from(0)));
            } else if let Some(d) = term.strip_prefix("Z/") {
                let d: BigInt = d.parse().map_err(|_| node.error(format!("bad modulus in \"{term}\"")))?;
                if d < BigInt::from(2) {
                    return Err(node.error(format!("modulus in \"{term}\" must be at least 2")));
                }
                moduli.push(d);
            } else {
                return Err(node.error(format!("cannot read group term \"{term}\"")));
            }
        }
    } else {
        let free = node.get("free_rank")?.usize()?;
        moduli.extend((0..free).map(|_| BigInt::from(0)));
        let torsion = match node.opt("torsion")? {
            Some(t) => t.array()?,
            None => Vec::new(),
        };
        for t in torsion {
            let d = t.bigint()?;
            if d < BigInt::from(2) {
                return Err(t.error("torsion coefficients must be at least 2"));
            }
            moduli.push(d);
        }
    }
    node.at(FgAbGroup::from_moduli(moduli))
}

pub fn group_value(g: &FgAbGroup) -> Value {
    Value::String(g.to_string())
}

pub fn parse_matrix(node: &Node, rows: usize, cols: usize) -> Result<IntMatrix> {
    let row_nodes = node.array()?;
    if row_nodes.len() != rows {
        return Err(node.error(format!("expected {rows} rows, found {}", row_nodes.len())));
    }
    let mut entries = Vec::with_capacity(rows);
    for r in &row_nodes {
        let row = r.bigint_array()?;
        if row.len() != cols {
            return Err(r.error(format!("expected {cols} entries, found {}", row.len())));
        }
        entries.push(row);
    }
    Ok(IntMatrix::from_rows(entries, cols))
}

pub fn matrix_value(m: &IntMatrix) -> Value {
    Value::Array(m.to_rows().iter().map(|r| bigints_value(r)).collect())
}

pub fn parse_homomorphism(node: &Node) -> Result<Homomorphism> {
    let source = parse_group(&node.get("source")?)?;
    let target = parse_group(&node.get("target")?)?;
    let m = parse_matrix(&node.get("matrix")?, target.generator_count(), source.generator_count())?;
    node.at(Homomorphism::new(source, target, m))
}

pub fn homomorphism_value(h: &Homomorphism) -> Value {
    json!({
        "source": group_value(h.source()),
        "target": group_value(h.target()),
        "matrix": matrix_value(h.matrix()),
    })
}

pub fn parse_complex(node: &Node) -> Result<SimplicialComplex> {
    let vertex_count = node.get("vertex_count")?.usize()?;
    let facets = node.get("facets")?;
    let facets: Vec<Vec<usize>> = facets.array()?.iter().map(Node::usize_array).collect::<Result<_>>()?;
    node.get("facets").and_then(|f| f.at(SimplicialComplex::from_facets(vertex_count, &facets)))
}

pub fn complex_value(x: &SimplicialComplex) -> Value {
    json!({
        "vertex_count": x.vertex_count(),
        "facets": x.facets(),
    })
}

/// Reads `{"degree": p, "values": {"i0,...,ip": [..], ...}}`. Simplices
/// not listed carry zero.
pub fn parse_cochain(node: &Node, complex: &CechComplex) -> Result<Cochain> {
    let degree = node.get("degree")?.usize()?;
    let values_node = node.get("values")?;
    let mut values = BTreeMap::new();
    for (key, v) in values_node.entries()? {
        let simplex = SimplicialComplex::parse_key(key)
            .ok_or_else(|| v.error(format!("cannot read simplex key \"{key}\"")))?;
        if simplex.len() != degree + 1 {
            return Err(v.error(format!("simplex {key} does not have degree {degree}")));
        }
        let coords = v.bigint_array()?;
        let one = BTreeMap::from([(simplex, coords)]);
        v.at(complex.cochain_from_values(degree, &one))?;
        values.extend(one);
    }
    node.at(complex.cochain_from_values(degree, &values))
}

pub fn cochain_value(complex: &CechComplex, c: &Cochain) -> Value {
    let values: Map<String, Value> = complex
        .values(c)
        .into_iter()
        .map(|(s, v)| (SimplicialComplex::key(&s), bigints_value(&v)))
        .collect();
    json!({ "degree": c.degree(), "values": values })
}

pub fn class_value(class: &CohomologyClass) -> Value {
    json!({
        "degree": class.degree,
        "group": group_value(&class.group),
        "coords": bigints_value(&class.coords),
    })
}

pub fn parse_ses(node: &Node) -> Result<ShortExactSequence> {
    let a = parse_group(&node.get("A")?)?;
    let b = parse_group(&node.get("B")?)?;
    let c = parse_group(&node.get("C")?)?;
    let iota = parse_matrix(&node.get("iota")?, b.generator_count(), a.generator_count())?;
    let pi = parse_matrix(&node.get("pi")?, c.generator_count(), b.generator_count())?;
    node.at(ShortExactSequence::new(a, b, c, iota, pi))
}

pub fn ses_value(s: &ShortExactSequence) -> Value {
    json!({
        "A": group_value(s.a()),
        "B": group_value(s.b()),
        "C": group_value(s.c()),
        "iota": matrix_value(s.iota().matrix()),
        "pi": matrix_value(s.pi().matrix()),
    })
}

/// Reads `{"complex", "c2", "sequences"}`. The coefficient group of `c2`
/// is the `C` term of the first sequence, or the optional `"base"` group.
pub fn parse_tower_spec(node: &Node) -> Result<TowerSpec> {
    let site = parse_complex(&node.get("complex")?)?;
    let sequences: Vec<ShortExactSequence> = node
        .get("sequences")?
        .array()?
        .iter()
        .map(parse_ses)
        .collect::<Result<_>>()?;
    let base = match (node.opt("base")?, sequences.first()) {
        (Some(b), _) => parse_group(&b)?,
        (None, Some(s)) => s.c().clone(),
        (None, None) => return Err(node.error("missing field \"base\" (required when there are no sequences)")),
    };
    let complex = node.at(CechComplex::new(&site, &base))?;
    let c2 = parse_cochain(&node.get("c2")?, &complex)?;
    node.at(TowerSpec::new(site, base, c2, sequences))
}

pub fn tower_value(t: &TowerClasses) -> Value {
    let stages: Vec<Value> = t
        .stages
        .iter()
        .map(|s| {
            let complex = CechComplex::new(&t.site, &s.band).expect("stage complexes were built before");
            json!({
                "degree": s.degree,
                "band": group_value(&s.band),
                "group": group_value(&s.group),
                "coords": bigints_value(&s.coords),
                "representative": cochain_value(&complex, &s.representative),
            })
        })
        .collect();
    json!({ "stages": stages })
}

pub fn parse_finite_group(node: &Node) -> Result<FiniteGroup> {
    let order = node.get("order")?.usize()?;
    let table_node = node.get("table")?;
    let table: Vec<Vec<usize>> = table_node.array()?.iter().map(Node::usize_array).collect::<Result<_>>()?;
    if table.len() != order {
        return Err(table_node.error(format!("expected {order} rows, found {}", table.len())));
    }
    let identity = node.get("identity")?.usize()?;
    node.at(FiniteGroup::new(table, identity))
}

pub fn finite_group_value(g: &FiniteGroup) -> Value {
    json!({
        "order": g.order(),
        "table": g.table(),
        "identity": g.identity(),
    })
}

pub fn parse_extension(node: &Node) -> Result<CentralExtension> {
    let g = parse_finite_group(&node.get("G")?)?;
    let q = parse_finite_group(&node.get("Q")?)?;
    let l = node.get("L_elements")?.usize_array()?;
    let pi = node.get("pi")?.usize_array()?;
    node.at(CentralExtension::new(g, l, pi, q))
}

pub fn extension_value(e: &CentralExtension) -> Value {
    json!({
        "G": finite_group_value(e.g()),
        "L_elements": e.l_elements(),
        "pi": e.pi(),
        "Q": finite_group_value(e.q()),
    })
}

/// Reads a map from edge keys `"i,j"` to group elements.
pub fn parse_edge_map(node: &Node) -> Result<BTreeMap<(usize, usize), usize>> {
    let mut edges = BTreeMap::new();
    for (key, v) in node.entries()? {
        match SimplicialComplex::parse_key(key).as_deref() {
            Some(&[i, j]) if i != j => {
                edges.insert((i, j), v.usize()?);
            }
            _ => return Err(v.error(format!("\"{key}\" is not an edge key \"i,j\""))),
        }
    }
    Ok(edges)
}

pub fn parse_transition(node: &Node, site: &SimplicialComplex, q: &FiniteGroup) -> Result<TransitionCocycle> {
    let edges = parse_edge_map(node)?;
    node.at(TransitionCocycle::new(site, q, &edges))
}

/// Values in edge order, keyed `"i,j"`.
pub fn edge_values(site: &SimplicialComplex, values: &[usize]) -> Value {
    let map: Map<String, Value> = site
        .simplices(1)
        .iter()
        .zip(values)
        .map(|(e, &v)| (SimplicialComplex::key(e), Value::from(v)))
        .collect();
    Value::Object(map)
}
