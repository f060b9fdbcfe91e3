//! Finite multigraphs standing in for topological graphs.
//!
//! A [`TopoGraph`] is a connected multigraph with at least one edge; loops
//! and parallel edges are allowed. [`reduce`] suppresses inessential
//! degree-2 vertices so that only points every homeomorphism must respect
//! remain as vertices.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("duplicate vertex id `{0}`")]
    DuplicateVertex(String),
    #[error("duplicate edge id `{0}`")]
    DuplicateEdge(String),
    #[error("edge `{edge}` references unknown vertex `{vertex}`")]
    DanglingEndpoint { edge: String, vertex: String },
    #[error("graph is not connected")]
    Disconnected,
    #[error("graph has no edges")]
    NoEdges,
    #[error("family `{family}` requires n >= {min}, got {n}")]
    ParameterOutOfBounds {
        family: &'static str,
        n: usize,
        min: usize,
    },
    #[error("unknown graph family `{0}`")]
    UnknownFamily(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Edge {
    pub id: String,
    pub u: usize,
    pub v: usize,
}

impl Edge {
    pub fn is_loop(&self) -> bool {
        self.u == self.v
    }

    /// The endpoint opposite to `x`. For a loop this is `x` itself.
    pub fn other(&self, x: usize) -> usize {
        if self.u == x {
            self.v
        } else {
            self.u
        }
    }
}

/// A validated connected multigraph with at least one edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TopoGraph {
    vertices: Vec<String>,
    edges: Vec<Edge>,
}

#[derive(Serialize, Deserialize)]
struct GraphFile {
    vertices: Vec<String>,
    edges: Vec<(String, String, String)>,
}

impl TopoGraph {
    /// Builds a graph from vertex ids and `(edge id, u, v)` triples.
    pub fn new<V, E>(vertices: V, edges: E) -> Result<Self, GraphError>
    where
        V: IntoIterator,
        V::Item: Into<String>,
        E: IntoIterator<Item = (String, String, String)>,
    {
        let vertices: Vec<String> = vertices.into_iter().map(Into::into).collect();
        let mut index = BTreeMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if index.insert(v.as_str(), i).is_some() {
                return Err(GraphError::DuplicateVertex(v.clone()));
            }
        }
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for (id, u, v) in edges {
            if !seen.insert(id.clone()) {
                return Err(GraphError::DuplicateEdge(id));
            }
            let lookup = |x: &str| {
                index
                    .get(x)
                    .copied()
                    .ok_or_else(|| GraphError::DanglingEndpoint {
                        edge: id.clone(),
                        vertex: x.to_string(),
                    })
            };
            let (u, v) = (lookup(&u)?, lookup(&v)?);
            out.push(Edge { id, u, v });
        }
        Self::from_parts(vertices, out)
    }

    /// Builds a graph from already-indexed edges, running the same validation
    /// as [`TopoGraph::new`].
    pub fn from_parts(vertices: Vec<String>, edges: Vec<Edge>) -> Result<Self, GraphError> {
        let mut names = BTreeSet::new();
        for v in &vertices {
            if !names.insert(v.as_str()) {
                return Err(GraphError::DuplicateVertex(v.clone()));
            }
        }
        let mut ids = BTreeSet::new();
        for e in &edges {
            if !ids.insert(e.id.as_str()) {
                return Err(GraphError::DuplicateEdge(e.id.clone()));
            }
            for x in [e.u, e.v] {
                if x >= vertices.len() {
                    return Err(GraphError::DanglingEndpoint {
                        edge: e.id.clone(),
                        vertex: format!("#{x}"),
                    });
                }
            }
        }
        if edges.is_empty() {
            return Err(GraphError::NoEdges);
        }
        let g = TopoGraph { vertices, edges };
        if !g.is_connected() {
            return Err(GraphError::Disconnected);
        }
        Ok(g)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertex_index(&self, id: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == id)
    }

    pub fn edge_index(&self, id: &str) -> Option<usize> {
        self.edges.iter().position(|e| e.id == id)
    }

    /// Degree with loops counted twice.
    pub fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .map(|e| (e.u == v) as usize + (e.v == v) as usize)
            .sum()
    }

    /// Edge indices incident to `v`; a loop appears once.
    pub fn incident(&self, v: usize) -> Vec<usize> {
        self.edges
            .iter()
            .enumerate()
            .filter(|(_, e)| e.u == v || e.v == v)
            .map(|(i, _)| i)
            .collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertices.len() as i64 - self.edges.len() as i64
    }

    /// True when every edge is a non-loop and no two edges share endpoints.
    pub fn is_simple(&self) -> bool {
        let mut pairs = BTreeSet::new();
        self.edges
            .iter()
            .all(|e| !e.is_loop() && pairs.insert((e.u.min(e.v), e.u.max(e.v))))
    }

    fn is_connected(&self) -> bool {
        let n = self.vertices.len();
        if n == 0 {
            return false;
        }
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let next = p[y];
                p[y] = r;
                y = next;
            }
            r
        }
        for e in &self.edges {
            let (a, b) = (find(&mut parent, e.u), find(&mut parent, e.v));
            parent[a] = b;
        }
        let root = find(&mut parent, 0);
        (1..n).all(|v| find(&mut parent, v) == root)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_file()).expect("graph serialization cannot fail")
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(self.to_file()).expect("graph serialization cannot fail")
    }

    fn to_file(&self) -> GraphFile {
        GraphFile {
            vertices: self.vertices.clone(),
            edges: self
                .edges
                .iter()
                .map(|e| {
                    (
                        e.id.clone(),
                        self.vertices[e.u].clone(),
                        self.vertices[e.v].clone(),
                    )
                })
                .collect(),
        }
    }
}

impl Serialize for TopoGraph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_file().serialize(s)
    }
}

/// Parses the JSON graph format `{"vertices": [...], "edges": [[id, u, v], ...]}`.
pub fn parse_graph(text: &str) -> Result<TopoGraph, GraphError> {
    let file: GraphFile = serde_json::from_str(text).map_err(|e| GraphError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    TopoGraph::new(file.vertices, file.edges)
}

/// The graph families used throughout the crate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FamilyId {
    Interval,
    Circle,
    Star(usize),
    Xn(usize),
    Yn(usize),
    Zn(usize),
    Wn(usize),
    Lollipop,
}

impl FamilyId {
    fn check(self) -> Result<(), GraphError> {
        let (family, n, min) = match self {
            FamilyId::Star(n) => ("star", n, 3),
            FamilyId::Xn(n) => ("xn", n, 3),
            FamilyId::Yn(n) => ("yn", n, 3),
            FamilyId::Zn(n) => ("zn", n, 3),
            FamilyId::Wn(n) => ("wn", n, 4),
            _ => return Ok(()),
        };
        if n < min {
            return Err(GraphError::ParameterOutOfBounds { family, n, min });
        }
        Ok(())
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyId::Interval => write!(f, "interval"),
            FamilyId::Circle => write!(f, "circle"),
            FamilyId::Lollipop => write!(f, "lollipop"),
            FamilyId::Star(n) => write!(f, "star:{n}"),
            FamilyId::Xn(n) => write!(f, "xn:{n}"),
            FamilyId::Yn(n) => write!(f, "yn:{n}"),
            FamilyId::Zn(n) => write!(f, "zn:{n}"),
            FamilyId::Wn(n) => write!(f, "wn:{n}"),
        }
    }
}

impl FromStr for FamilyId {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let lower = s.trim().to_ascii_lowercase();
        let (name, param) = match lower.split_once(':') {
            Some((a, b)) => (a, Some(b)),
            None => (lower.as_str(), None),
        };
        let n = || {
            param
                .and_then(|p| p.parse::<usize>().ok())
                .ok_or_else(|| GraphError::UnknownFamily(s.to_string()))
        };
        let id = match name {
            "interval" => FamilyId::Interval,
            "circle" => FamilyId::Circle,
            "lollipop" => FamilyId::Lollipop,
            "star" => FamilyId::Star(n()?),
            "xn" => FamilyId::Xn(n()?),
            "yn" => FamilyId::Yn(n()?),
            "zn" => FamilyId::Zn(n()?),
            "wn" => FamilyId::Wn(n()?),
            _ => return Err(GraphError::UnknownFamily(s.to_string())),
        };
        id.check()?;
        Ok(id)
    }
}

struct Builder {
    vertices: Vec<String>,
    edges: Vec<(String, String, String)>,
}

impl Builder {
    fn new() -> Self {
        Builder {
            vertices: Vec::new(),
            edges: Vec::new(),
        }
    }

    fn vertex(&mut self, id: impl Into<String>) {
        self.vertices.push(id.into());
    }

    fn edge(&mut self, id: impl Into<String>, u: impl Into<String>, v: impl Into<String>) {
        self.edges.push((id.into(), u.into(), v.into()));
    }

    fn build(self) -> TopoGraph {
        TopoGraph::new(self.vertices, self.edges).expect("family generators emit valid graphs")
    }
}

/// Path on vertices `3..=n`, vertex `i` carrying `i` pendant leaves.
fn caterpillar(b: &mut Builder, n: usize) {
    for i in 3..=n {
        b.vertex(i.to_string());
    }
    for i in 3..=n {
        for j in 1..=i {
            b.vertex(format!("a{i}_{j}"));
        }
    }
    for i in 3..n {
        b.edge(format!("p{i}"), i.to_string(), (i + 1).to_string());
    }
    for i in 3..=n {
        for j in 1..=i {
            b.edge(format!("l{i}_{j}"), i.to_string(), format!("a{i}_{j}"));
        }
    }
}

pub fn make_family(id: FamilyId) -> Result<TopoGraph, GraphError> {
    id.check()?;
    let mut b = Builder::new();
    match id {
        FamilyId::Interval => {
            b.vertex("0");
            b.vertex("1");
            b.edge("e", "0", "1");
        }
        FamilyId::Circle => {
            b.vertex("v");
            b.edge("l", "v", "v");
        }
        FamilyId::Lollipop => {
            b.vertex("v");
            b.vertex("u");
            b.edge("loop", "v", "v");
            b.edge("stick", "v", "u");
        }
        FamilyId::Star(n) => {
            for i in 0..=n {
                b.vertex(i.to_string());
            }
            for i in 1..=n {
                b.edge(format!("e{i}"), "0", i.to_string());
            }
        }
        FamilyId::Xn(n) => caterpillar(&mut b, n),
        FamilyId::Yn(n) => {
            caterpillar(&mut b, n);
            b.edge("loop3", "3", "3");
        }
        FamilyId::Zn(n) => {
            caterpillar(&mut b, n);
            b.vertex("c");
            b.edge("stick", "c", "3");
            b.edge("loopc", "c", "c");
        }
        FamilyId::Wn(n) => {
            caterpillar(&mut b, n);
            b.edge("loop3", "3", "3");
            b.edge("loop4", "4", "4");
        }
    }
    Ok(b.build())
}

/// A graph with its inessential vertices suppressed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducedGraph {
    pub graph: TopoGraph,
    pub is_circle: bool,
    /// Original edge id to the id of the reduced edge containing it.
    pub suppression_map: BTreeMap<String, String>,
}

impl ReducedGraph {
    /// Wraps a graph whose degree-2 vertices are deliberate (e.g. colored
    /// subdivision points); no suppression is performed.
    pub fn marked(graph: TopoGraph) -> Self {
        let suppression_map = graph
            .edges()
            .iter()
            .map(|e| (e.id.clone(), e.id.clone()))
            .collect();
        ReducedGraph {
            graph,
            is_circle: false,
            suppression_map,
        }
    }

    pub fn resolve_edge(&self, original_id: &str) -> Option<usize> {
        let id = self.suppression_map.get(original_id)?;
        self.graph.edge_index(id)
    }
}

/// Suppresses every unprotected degree-2 vertex. A graph in which every
/// vertex is unprotected and of degree 2 collapses to one vertex with one
/// loop and `is_circle = true`.
pub fn reduce(g: &TopoGraph, protected: &BTreeSet<String>) -> ReducedGraph {
    let n = g.vertex_count();
    let keep_flag: Vec<bool> = g.vertices().iter().map(|v| protected.contains(v)).collect();
    let mut alive_v = vec![true; n];
    let mut edges: Vec<Option<Edge>> = g.edges().iter().cloned().map(Some).collect();
    let mut owner: Vec<usize> = (0..edges.len()).collect();

    loop {
        let mut changed = false;
        for w in 0..n {
            if !alive_v[w] || keep_flag[w] {
                continue;
            }
            let inc: Vec<usize> = edges
                .iter()
                .enumerate()
                .filter_map(|(i, e)| e.as_ref().filter(|e| e.u == w || e.v == w).map(|_| i))
                .collect();
            if inc.len() != 2 {
                continue;
            }
            let (i, j) = (inc[0], inc[1]);
            let (ei, ej) = (edges[i].clone().unwrap(), edges[j].clone().unwrap());
            if ei.is_loop() || ej.is_loop() {
                continue;
            }
            let (x, y) = (ei.other(w), ej.other(w));
            edges[i] = Some(Edge {
                id: ei.id,
                u: x,
                v: y,
            });
            edges[j] = None;
            for o in owner.iter_mut() {
                if *o == j {
                    *o = i;
                }
            }
            alive_v[w] = false;
            changed = true;
        }
        if !changed {
            break;
        }
    }

    let remap: Vec<Option<usize>> = {
        let mut next = 0;
        alive_v
            .iter()
            .map(|&a| {
                a.then(|| {
                    next += 1;
                    next - 1
                })
            })
            .collect()
    };
    let vertices: Vec<String> = g
        .vertices()
        .iter()
        .zip(&alive_v)
        .filter(|(_, &a)| a)
        .map(|(v, _)| v.clone())
        .collect();
    let new_edges: Vec<Edge> = edges
        .iter()
        .flatten()
        .map(|e| Edge {
            id: e.id.clone(),
            u: remap[e.u].unwrap(),
            v: remap[e.v].unwrap(),
        })
        .collect();
    let suppression_map = g
        .edges()
        .iter()
        .enumerate()
        .map(|(i, e)| (e.id.clone(), edges[owner[i]].as_ref().unwrap().id.clone()))
        .collect();
    let graph = TopoGraph::from_parts(vertices, new_edges)
        .expect("suppression preserves connectivity and edges");
    let is_circle = graph.vertex_count() == 1
        && graph.edge_count() == 1
        && graph.edges()[0].is_loop()
        && !keep_flag[g.vertex_index(&graph.vertices()[0]).unwrap()];
    ReducedGraph {
        graph,
        is_circle,
        suppression_map,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(v: &[&str], e: &[(&str, &str, &str)]) -> Result<TopoGraph, GraphError> {
        TopoGraph::new(
            v.iter().copied(),
            e.iter()
                .map(|(a, b, c)| (a.to_string(), b.to_string(), c.to_string())),
        )
    }

    #[test]
    fn parses_examples() {
        let interval = parse_graph(r#"{"vertices":["a","b"],"edges":[["e1","a","b"]]}"#).unwrap();
        assert_eq!((interval.vertex_count(), interval.edge_count()), (2, 1));
        let circle = parse_graph(r#"{"vertices":["v"],"edges":[["l","v","v"]]}"#).unwrap();
        assert!(circle.edges()[0].is_loop());
        assert_eq!(circle.degree(0), 2);
        let theta = parse_graph(
            r#"{"vertices":["a","b"],"edges":[["e1","a","b"],["e2","a","b"],["e3","a","b"]]}"#,
        )
        .unwrap();
        assert_eq!(theta.degree(0), 3);
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(
            parse_graph(r#"{"vertices":["a"], "edges": [}"#),
            Err(GraphError::Syntax { line: 1, .. })
        ));
        assert_eq!(
            g(&["a", "a"], &[("e", "a", "a")]),
            Err(GraphError::DuplicateVertex("a".into()))
        );
        assert_eq!(
            g(&["a", "b"], &[("e", "a", "b"), ("e", "b", "a")]),
            Err(GraphError::DuplicateEdge("e".into()))
        );
        assert!(matches!(
            g(&["a"], &[("e", "a", "z")]),
            Err(GraphError::DanglingEndpoint { .. })
        ));
        assert_eq!(
            g(&["a", "b", "c"], &[("e", "a", "b")]),
            Err(GraphError::Disconnected)
        );
        assert_eq!(g(&["a"], &[]), Err(GraphError::NoEdges));
    }

    #[test]
    fn family_shapes() {
        let s3 = make_family(FamilyId::Star(3)).unwrap();
        assert_eq!((s3.vertex_count(), s3.edge_count()), (4, 3));
        let x3 = make_family(FamilyId::Xn(3)).unwrap();
        assert_eq!((x3.vertex_count(), x3.edge_count()), (4, 3));
        let w4 = make_family(FamilyId::Wn(4)).unwrap();
        // 3 + 4 leaf edges, one path edge, two loops
        assert_eq!(w4.edge_count(), 10);
        let x5 = make_family(FamilyId::Xn(5)).unwrap();
        assert_eq!(x5.vertex_count(), 3 + 3 + 4 + 5);
        assert!(make_family(FamilyId::Wn(3)).is_err());
        assert!(make_family(FamilyId::Star(2)).is_err());
    }

    #[test]
    fn family_ids_parse() {
        assert_eq!("star:6".parse::<FamilyId>().unwrap(), FamilyId::Star(6));
        assert_eq!("XN:5".parse::<FamilyId>().unwrap(), FamilyId::Xn(5));
        assert_eq!("circle".parse::<FamilyId>().unwrap(), FamilyId::Circle);
        assert!("star".parse::<FamilyId>().is_err());
        assert!("wn:3".parse::<FamilyId>().is_err());
        assert!("blob:3".parse::<FamilyId>().is_err());
        for id in [FamilyId::Zn(4), FamilyId::Lollipop, FamilyId::Interval] {
            assert_eq!(id.to_string().parse::<FamilyId>().unwrap(), id);
        }
    }

    #[test]
    fn reduce_path() {
        let p = g(&["a", "b", "c"], &[("e1", "a", "b"), ("e2", "b", "c")]).unwrap();
        let r = reduce(&p, &BTreeSet::new());
        assert!(!r.is_circle);
        assert_eq!(r.graph.vertices(), &["a".to_string(), "c".to_string()]);
        assert_eq!(r.graph.edge_count(), 1);
        assert_eq!(r.suppression_map["e2"], "e1");
    }

    #[test]
    fn reduce_cycle_to_circle() {
        let c4 = g(
            &["a", "b", "c", "d"],
            &[
                ("e1", "a", "b"),
                ("e2", "b", "c"),
                ("e3", "c", "d"),
                ("e4", "d", "a"),
            ],
        )
        .unwrap();
        let r = reduce(&c4, &BTreeSet::new());
        assert!(r.is_circle);
        assert_eq!((r.graph.vertex_count(), r.graph.edge_count()), (1, 1));
        assert!(r.suppression_map.values().all(|v| v == "e1"));

        let protected: BTreeSet<String> = ["b".to_string()].into();
        let r = reduce(&c4, &protected);
        assert!(!r.is_circle);
        assert_eq!(r.graph.vertices(), &["b".to_string()]);
    }

    #[test]
    fn reduce_star_unchanged() {
        let s = make_family(FamilyId::Star(3)).unwrap();
        let r = reduce(&s, &BTreeSet::new());
        assert_eq!(r.graph, s);
    }

    #[test]
    fn families_are_reduced() {
        for id in [
            FamilyId::Interval,
            FamilyId::Lollipop,
            FamilyId::Star(5),
            FamilyId::Xn(4),
            FamilyId::Yn(4),
            FamilyId::Zn(4),
            FamilyId::Wn(5),
        ] {
            let g = make_family(id).unwrap();
            let r = reduce(&g, &BTreeSet::new());
            assert_eq!(r.graph, g, "{id}");
            assert!(!r.is_circle);
        }
        let c = make_family(FamilyId::Circle).unwrap();
        assert!(reduce(&c, &BTreeSet::new()).is_circle);
    }

    #[test]
    fn json_round_trip() {
        let g = make_family(FamilyId::Zn(3)).unwrap();
        assert_eq!(parse_graph(&g.to_json()).unwrap(), g);
    }
}
