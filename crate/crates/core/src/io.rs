//! JSON and DOT formats.
//!
//! Maps keep insertion order, so every writer here emits keys in a fixed
//! order and output is byte-deterministic.

use serde::Deserialize;
use serde_json::{json, Map, Value};

use crate::arrow::{format_mask, parse_mask, ArrowDiagram};
use crate::eqgraph::EquivGraph;
use crate::error::{Error, Result};
use crate::ncalg::NCElement;
use crate::poset::{Elem, Poset, Word};
use crate::symfun::{PolyT, SymExpr};
use crate::tableaux::PTableau;

fn parse_err(e: impl std::fmt::Display) -> Error {
    Error::Parse(e.to_string())
}

/// Comma separated letters, e.g. `1,2,3,4`. Empty input is the empty list.
pub fn parse_list(s: &str) -> Result<Vec<Elem>> {
    s.split(',')
        .map(str::trim)
        .filter(|x| !x.is_empty())
        .map(|x| x.parse::<Elem>().map_err(|e| Error::Parse(format!("{x:?}: {e}"))))
        .collect()
}

pub fn parse_usize_list(s: &str) -> Result<Vec<usize>> {
    Ok(parse_list(s)?.into_iter().map(usize::from).collect())
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PosetJson {
    n: usize,
    #[serde(default)]
    relations: Vec<(Elem, Elem)>,
    #[serde(default)]
    order: Option<Vec<Elem>>,
    #[serde(default)]
    #[allow(dead_code)]
    id: Option<Value>,
}

/// `{"n": 4, "relations": [[1,3],[2,4]], "order": [1,2,3,4]}`; relations are
/// `a -> b` pairs, closed transitively. `order` is checked to be a natural
/// unit interval order.
pub fn poset_from_json(s: &str) -> Result<Poset> {
    let raw: PosetJson = serde_json::from_str(s).map_err(parse_err)?;
    let p = Poset::from_relations(raw.n, &raw.relations)?;
    match raw.order {
        Some(order) => p.with_order(&order),
        None => Ok(p),
    }
}

pub fn poset_to_json(p: &Poset) -> Value {
    let mut m = Map::new();
    m.insert("n".into(), json!(p.n()));
    m.insert("relations".into(), json!(p.covers()));
    if let Some(order) = p.order() {
        m.insert("order".into(), json!(order));
    }
    Value::Object(m)
}

pub fn poly_to_json(c: &PolyT) -> Value {
    json!(c.coeffs())
}

pub fn poly_from_json(v: &Value) -> Result<PolyT> {
    let coeffs: Vec<i64> = serde_json::from_value(v.clone()).map_err(parse_err)?;
    Ok(PolyT::from_coeffs(coeffs))
}

fn partition_key(lambda: &[usize]) -> String {
    format!("[{}]", lambda.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
}

/// Terms keyed by `"[3,1]"`, largest partition first.
pub fn sym_terms_to_json(f: &SymExpr) -> Value {
    let mut m = Map::new();
    for (lambda, c) in f.terms.iter().rev() {
        m.insert(partition_key(lambda), poly_to_json(c));
    }
    Value::Object(m)
}

pub fn sym_to_json(f: &SymExpr) -> Value {
    json!({
        "degree": f.degree,
        "basis": f.basis.tag(),
        "terms": sym_terms_to_json(f),
    })
}

/// `{"poset": id, "terms": [{"word": [3,1], "coef": [1]}]}`.
pub fn nc_to_json(f: &NCElement, poset_id: &Value) -> Value {
    let terms: Vec<Value> = f
        .terms()
        .iter()
        .map(|(w, c)| json!({"word": w, "coef": poly_to_json(c)}))
        .collect();
    json!({"poset": poset_id, "terms": terms})
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct NcTermJson {
    word: Word,
    coef: Value,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct NcJson {
    #[serde(default)]
    poset: Value,
    terms: Vec<NcTermJson>,
}

/// Returns the poset id and the element. A bare integer is accepted as a
/// constant coefficient.
pub fn nc_from_json(s: &str) -> Result<(Value, NCElement)> {
    let raw: NcJson = serde_json::from_str(s).map_err(parse_err)?;
    let mut f = NCElement::zero();
    for t in raw.terms {
        let c = match &t.coef {
            Value::Number(n) => PolyT::constant(n.as_i64().ok_or_else(|| parse_err("coefficient is not an integer"))?),
            v => poly_from_json(v)?,
        };
        f.add_term(t.word, &c);
    }
    Ok((raw.poset, f))
}

/// `{"d": 3, "edges": {"1,2": "en", "2,3": "r"}}`; unlisted edges are free.
pub fn diagram_from_json(s: &str) -> Result<ArrowDiagram> {
    #[derive(Deserialize)]
    #[serde(deny_unknown_fields)]
    struct Raw {
        d: usize,
        #[serde(default)]
        edges: Map<String, Value>,
    }
    let raw: Raw = serde_json::from_str(s).map_err(parse_err)?;
    let mut m = ArrowDiagram::free(raw.d);
    for (key, v) in &raw.edges {
        let ij = parse_usize_list(key)?;
        let [i, j] = ij[..] else {
            return Err(Error::Parse(format!("edge key {key:?} is not \"i,j\"")));
        };
        let s = v.as_str().ok_or_else(|| parse_err(format!("edge {key:?} is not a string")))?;
        m.set(i, j, parse_mask(s)?).map_err(|e| Error::Parse(e.to_string()))?;
    }
    Ok(m)
}

/// Lists only the non-free edges.
pub fn diagram_to_json(m: &ArrowDiagram) -> Value {
    let mut edges = Map::new();
    for (i, j, mask) in m.edges() {
        if mask != crate::arrow::FREE {
            edges.insert(format!("{i},{j}"), json!(format_mask(mask)));
        }
    }
    json!({"d": m.d(), "edges": edges})
}

/// `{"shape": [2,1], "rows": [[1,3],[2]]}`.
pub fn tableau_from_json(s: &str) -> Result<PTableau> {
    #[derive(Deserialize)]
    #[serde(deny_unknown_fields)]
    struct Raw {
        shape: Vec<usize>,
        rows: Vec<Vec<Elem>>,
    }
    let raw: Raw = serde_json::from_str(s).map_err(parse_err)?;
    let t = PTableau::from_rows(&raw.rows)?;
    if t.shape() != raw.shape {
        return Err(Error::Shape(format!("rows do not have shape {:?}", raw.shape)));
    }
    Ok(t)
}

pub fn tableau_to_json(t: &PTableau) -> Value {
    let rows: Vec<Vec<Option<Elem>>> = t.rows();
    json!({"shape": t.shape(), "rows": rows})
}

/// Vertices, labeled edges, components and (when given) their `F_Γ`.
pub fn graph_to_json(g: &EquivGraph, fs: Option<&[SymExpr]>) -> Value {
    let edges: Vec<Value> = g
        .edges
        .iter()
        .map(|(i, j, l)| json!({"from": g.vertices[*i], "to": g.vertices[*j], "pos": l.pos, "kind": l.kind.tag()}))
        .collect();
    let comps: Vec<Value> = (0..g.num_components())
        .map(|c| {
            let mut m = Map::new();
            m.insert("representative".into(), json!(g.representative(c)));
            m.insert("size".into(), json!(g.components[c].len()));
            m.insert("words".into(), json!(g.component_words(c)));
            if let Some(fs) = fs {
                m.insert("f".into(), sym_to_json(&fs[c]));
            }
            Value::Object(m)
        })
        .collect();
    json!({
        "ideal": g.kind.tag(),
        "vertices": g.vertices,
        "edges": edges,
        "components": comps,
    })
}

fn word_label(w: &[Elem]) -> String {
    if w.iter().all(|&x| x < 10) {
        w.iter().map(|x| x.to_string()).collect()
    } else {
        w.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(".")
    }
}

/// Graphviz rendering, one cluster per component.
pub fn graph_to_dot(g: &EquivGraph) -> String {
    let mut out = format!("graph {} {{\n  node [shape=box];\n", g.kind.tag());
    for c in 0..g.num_components() {
        out.push_str(&format!("  subgraph cluster_{c} {{\n"));
        for &v in &g.components[c] {
            out.push_str(&format!("    \"{}\";\n", word_label(&g.vertices[v])));
        }
        out.push_str("  }\n");
    }
    for (i, j, l) in &g.edges {
        out.push_str(&format!(
            "  \"{}\" -- \"{}\" [label=\"{}{}\"];\n",
            word_label(&g.vertices[*i]),
            word_label(&g.vertices[*j]),
            l.kind.tag(),
            l.pos
        ));
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eqgraph::graph_for_content;
    use crate::poset::Content;
    use crate::quotient::IdealKind;
    use crate::symfun::Basis;

    #[test]
    fn poset_round_trip() {
        let p = poset_from_json(r#"{"n": 4, "relations": [[1,3],[1,4],[2,4]]}"#).unwrap();
        assert!(p.lt(1, 4) && !p.lt(2, 3));
        assert_eq!(poset_from_json(&poset_to_json(&p).to_string()).unwrap(), p);
        let q = poset_from_json(r#"{"n": 3, "relations": [[1,3]], "order": [1,2,3]}"#).unwrap();
        assert_eq!(q.order(), Some(vec![1, 2, 3]));
        assert!(matches!(poset_from_json(r#"{"n": 2, "relations": [[1,2],[2,1]]}"#), Err(Error::Cycle(_))));
        assert!(matches!(poset_from_json("{"), Err(Error::Parse(_))));
    }

    #[test]
    fn sym_terms_order() {
        let f = SymExpr::from_ints(Basis::S, 4, &[(&[4], 8), (&[3, 1], 4), (&[2, 2], 2)]);
        assert_eq!(sym_terms_to_json(&f).to_string(), r#"{"[4]":[8],"[3,1]":[4],"[2,2]":[2]}"#);
    }

    #[test]
    fn nc_round_trip() {
        let (id, f) = nc_from_json(r#"{"poset": "p", "terms": [{"word": [3,1], "coef": [1]}, {"word": [1,3], "coef": -2}]}"#).unwrap();
        assert_eq!(id, json!("p"));
        assert_eq!(f.coef(&[1, 3]), PolyT::constant(-2));
        assert_eq!(nc_from_json(&nc_to_json(&f, &id).to_string()).unwrap().1, f);
    }

    #[test]
    fn diagram_round_trip() {
        let m = diagram_from_json(r#"{"d": 3, "edges": {"1,2": "en", "1,3": "en", "2,3": "r"}}"#).unwrap();
        assert_eq!(diagram_from_json(&diagram_to_json(&m).to_string()).unwrap(), m);
        assert!(diagram_from_json(r#"{"d": 2, "edges": {"1,2": "rl"}}"#).is_err());
        assert!(diagram_from_json(r#"{"d": 2, "edges": {"1,3": "r"}}"#).is_err());
    }

    #[test]
    fn tableau_round_trip() {
        let t = tableau_from_json(r#"{"shape": [2,1], "rows": [[1,3],[2]]}"#).unwrap();
        assert_eq!(tableau_from_json(&tableau_to_json(&t).to_string()).unwrap(), t);
        assert!(tableau_from_json(r#"{"shape": [3], "rows": [[1,3],[2]]}"#).is_err());
    }

    #[test]
    fn dot_export() {
        let p = Poset::p_k(2, 4);
        let g = graph_for_content(&p, &Content::new(vec![1, 2, 3]), None, IdealKind::Plac).unwrap();
        let dot = graph_to_dot(&g);
        assert!(dot.contains("\"231\" -- \"312\""));
        assert_eq!(graph_to_json(&g, None)["components"].as_array().unwrap().len(), g.num_components());
    }
}
