//! `json-edges` and graph6 encodings.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::str::FromStr;

use serde::ser::SerializeMap;
use serde::{Deserialize, Serialize, Serializer};

use super::{Graph, GraphError};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraphFormat {
    JsonEdges,
    Graph6,
}

impl FromStr for GraphFormat {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "json" | "json-edges" => Ok(GraphFormat::JsonEdges),
            "graph6" | "g6" => Ok(GraphFormat::Graph6),
            other => Err(GraphError::Malformed(format!("unknown graph format {other:?}"))),
        }
    }
}

const GRAPH6_MAX: usize = 62;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonGraphIn {
    n: usize,
    edges: Vec<[usize; 2]>,
    #[serde(default)]
    labels: Option<BTreeMap<String, String>>,
}

#[derive(Serialize)]
struct JsonGraphOut<'a> {
    n: usize,
    edges: Vec<[usize; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    labels: Option<Labels<'a>>,
}

/// Labels emitted in increasing vertex order.
struct Labels<'a>(&'a Graph);

impl Serialize for Labels<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let g = self.0;
        let count = (0..g.n()).filter(|&v| g.label(v).is_some()).count();
        let mut map = s.serialize_map(Some(count))?;
        for v in 0..g.n() {
            if let Some(l) = g.label(v) {
                map.serialize_entry(&v.to_string(), l)?;
            }
        }
        map.end()
    }
}

pub fn parse_graph(input: &str, format: GraphFormat) -> Result<Graph, GraphError> {
    match format {
        GraphFormat::JsonEdges => parse_json(input),
        GraphFormat::Graph6 => parse_graph6(input),
    }
}

/// JSON when the text starts with `{`, graph6 otherwise.
pub fn parse_graph_auto(input: &str) -> Result<Graph, GraphError> {
    if input.trim_start().starts_with('{') {
        parse_json(input)
    } else {
        parse_graph6(input)
    }
}

pub fn serialize_graph(g: &Graph, format: GraphFormat) -> Result<String, GraphError> {
    match format {
        GraphFormat::JsonEdges => Ok(to_json(g)),
        GraphFormat::Graph6 => to_graph6(g),
    }
}

fn parse_json(input: &str) -> Result<Graph, GraphError> {
    let raw: JsonGraphIn =
        serde_json::from_str(input).map_err(|e| GraphError::Malformed(e.to_string()))?;
    json_value_to_graph(raw)
}

fn json_value_to_graph(raw: JsonGraphIn) -> Result<Graph, GraphError> {
    let mut g = Graph::empty(raw.n);
    for [a, b] in raw.edges {
        g.add_edge(a, b)?;
    }
    if let Some(labels) = raw.labels {
        for (k, tag) in labels {
            let v: usize = k
                .parse()
                .map_err(|_| GraphError::Malformed(format!("label key {k:?} is not a vertex id")))?;
            if v >= raw.n {
                return Err(GraphError::VertexOutOfRange { vertex: v, n: raw.n });
            }
            g.set_label(v, tag);
        }
    }
    Ok(g)
}

/// Parses the `json-edges` object from an already decoded JSON value.
pub fn graph_from_json_value(value: serde_json::Value) -> Result<Graph, GraphError> {
    let raw: JsonGraphIn =
        serde_json::from_value(value).map_err(|e| GraphError::Malformed(e.to_string()))?;
    json_value_to_graph(raw)
}

pub fn graph_to_json_value(g: &Graph) -> serde_json::Value {
    serde_json::to_value(json_out(g)).expect("graph serializes")
}

fn json_out(g: &Graph) -> JsonGraphOut<'_> {
    JsonGraphOut {
        n: g.n(),
        edges: g.edges().into_iter().map(|(a, b)| [a, b]).collect(),
        labels: g.has_labels().then_some(Labels(g)),
    }
}

fn to_json(g: &Graph) -> String {
    serde_json::to_string(&json_out(g)).expect("graph serializes")
}

fn parse_graph6(input: &str) -> Result<Graph, GraphError> {
    let mut s = input.trim();
    if let Some(rest) = s.strip_prefix(">>graph6<<") {
        s = rest;
    }
    let bytes = s.as_bytes();
    if bytes.is_empty() {
        return Err(GraphError::Malformed("empty graph6 string".into()));
    }
    if bytes.iter().any(|&b| !(63..=126).contains(&b)) {
        return Err(GraphError::Malformed("graph6 byte outside 63..=126".into()));
    }
    if bytes[0] == 126 {
        return Err(GraphError::Malformed(format!(
            "graph6 inputs above {GRAPH6_MAX} vertices are not supported"
        )));
    }
    let n = (bytes[0] - 63) as usize;
    let body = &bytes[1..];
    let needed_bits = n * n.saturating_sub(1) / 2;
    let needed = needed_bits.div_ceil(6);
    if body.len() != needed {
        return Err(GraphError::Malformed(format!(
            "graph6 body has {} bytes, expected {needed}",
            body.len()
        )));
    }
    let bit = |k: usize| -> bool {
        let byte = body[k / 6] - 63;
        byte >> (5 - k % 6) & 1 == 1
    };
    let mut g = Graph::empty(n);
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bit(k) {
                g.add_edge(i, j)?;
            }
            k += 1;
        }
    }
    for pad in needed_bits..needed * 6 {
        if bit(pad) {
            return Err(GraphError::Malformed("nonzero graph6 padding".into()));
        }
    }
    Ok(g)
}

fn to_graph6(g: &Graph) -> Result<String, GraphError> {
    let n = g.n();
    if n > GRAPH6_MAX {
        return Err(GraphError::TooLarge(n));
    }
    let mut out = String::new();
    out.push((n as u8 + 63) as char);
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push((acc + 63) as char);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        acc <<= 6 - filled;
        out.push((acc + 63) as char);
    }
    Ok(out)
}

/// Human-readable adjacency listing, one line per vertex.
pub fn adjacency_listing(g: &Graph) -> String {
    let mut s = String::new();
    for v in 0..g.n() {
        let _ = writeln!(s, "{}: {:?}", g.display_name(v), g.neighbors(v));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, cycle};

    #[test]
    fn json_c4() {
        let g = parse_graph(r#"{"n":4,"edges":[[0,1],[1,2],[2,3],[3,0]]}"#, GraphFormat::JsonEdges)
            .unwrap();
        assert_eq!(g.n(), 4);
        assert_eq!(g.edge_count(), 4);
        assert_eq!(g, cycle(4));
    }

    #[test]
    fn json_k1() {
        let g = parse_graph(r#"{"n":1,"edges":[]}"#, GraphFormat::JsonEdges).unwrap();
        assert_eq!((g.n(), g.edge_count()), (1, 0));
    }

    #[test]
    fn json_errors() {
        let dup = r#"{"n":3,"edges":[[0,1],[1,0]]}"#;
        assert_eq!(parse_graph(dup, GraphFormat::JsonEdges), Err(GraphError::DuplicateEdge(0, 1)));
        let lp = r#"{"n":3,"edges":[[1,1]]}"#;
        assert_eq!(parse_graph(lp, GraphFormat::JsonEdges), Err(GraphError::SelfLoop(1)));
        let oob = r#"{"n":3,"edges":[[0,7]]}"#;
        assert!(matches!(
            parse_graph(oob, GraphFormat::JsonEdges),
            Err(GraphError::VertexOutOfRange { vertex: 7, n: 3 })
        ));
        assert!(matches!(
            parse_graph("{\"n\":3,", GraphFormat::JsonEdges),
            Err(GraphError::Malformed(_))
        ));
    }

    #[test]
    fn json_is_byte_stable() {
        let mut g = Graph::from_edges(3, &[(2, 1), (0, 2)]).unwrap();
        g.set_label(2, "c");
        g.set_label(0, "a");
        assert_eq!(
            serialize_graph(&g, GraphFormat::JsonEdges).unwrap(),
            r#"{"n":3,"edges":[[0,2],[1,2]],"labels":{"0":"a","2":"c"}}"#
        );
    }

    #[test]
    fn graph6_k4_by_hand() {
        // n = 4 -> 'C'; six upper-triangle bits all set -> 63 + 63 = '~'.
        let g = parse_graph("C~", GraphFormat::Graph6).unwrap();
        assert_eq!((g.n(), g.edge_count()), (4, 6));
        assert_eq!(g, complete(4));
        assert_eq!(serialize_graph(&complete(4), GraphFormat::Graph6).unwrap(), "C~");
    }

    #[test]
    fn graph6_c4_by_hand() {
        // Column-wise bits for C4 (0-1,1-2,2-3,0-3): (0,1)=1 (0,2)=0 (1,2)=1 (0,3)=1 (1,3)=0 (2,3)=1
        // -> 101101b = 45 -> char 108 'l'.
        assert_eq!(serialize_graph(&cycle(4), GraphFormat::Graph6).unwrap(), "Cl");
        assert_eq!(parse_graph("Cl", GraphFormat::Graph6).unwrap(), cycle(4));
    }

    #[test]
    fn graph6_rejects_garbage() {
        assert!(parse_graph("", GraphFormat::Graph6).is_err());
        assert!(parse_graph("C~~", GraphFormat::Graph6).is_err());
        assert!(parse_graph("C\u{1}", GraphFormat::Graph6).is_err());
    }
}
