//! Orbit-closure families and heights.
//!
//! For a group acting on a graph through a [`ColoredGraph`], every orbit is
//! a vertex orbit, the interiors of an edge orbit, or the points of a
//! decoration orbit. Closed invariant sets are exactly the unions of orbits
//! that contain the closure of each of their orbits, i.e. the down-sets of
//! the containment order on closures. Adding one orbit at a time along a
//! linear extension produces a strict chain through every down-set size, so
//! the height of a finite family is the number of cells minus one.

use std::collections::BTreeSet;
use std::fmt::{self, Write as _};
use std::ops::Add;

use serde::{Deserialize, Serialize};

use crate::aut::{automorphisms, decoration_orbits, edge_orbits, vertex_orbits, ColoredGraph};
use crate::graph::{reduce, TopoGraph};

/// An element of ℕ ∪ {+∞}.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Height {
    Finite(u64),
    Infinite,
}

impl Height {
    pub fn finite(self) -> Option<u64> {
        match self {
            Height::Finite(h) => Some(h),
            Height::Infinite => None,
        }
    }
}

impl Add<u64> for Height {
    type Output = Height;

    fn add(self, rhs: u64) -> Height {
        match self {
            Height::Finite(h) => Height::Finite(h + rhs),
            Height::Infinite => Height::Infinite,
        }
    }
}

impl fmt::Display for Height {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Height::Finite(h) => write!(f, "{h}"),
            Height::Infinite => write!(f, "inf"),
        }
    }
}

impl std::str::FromStr for Height {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "inf" | "+inf" | "infinity" | "+infinity" | "∞" | "+∞" => Ok(Height::Infinite),
            t => t
                .parse::<u64>()
                .map(Height::Finite)
                .map_err(|_| format!("`{s}` is neither a natural number nor `inf`")),
        }
    }
}

impl Serialize for Height {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Height::Finite(h) => s.serialize_u64(*h),
            Height::Infinite => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Height {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            N(u64),
            S(String),
        }
        match Raw::deserialize(d)? {
            Raw::N(n) => Ok(Height::Finite(n)),
            Raw::S(s) => s.parse().map_err(serde::de::Error::custom),
        }
    }
}

/// `{base, base + 1, ...} ∪ {+∞}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhSet {
    pub base: u64,
}

impl PhSet {
    pub fn contains(&self, t: Height) -> bool {
        match t {
            Height::Infinite => true,
            Height::Finite(t) => t >= self.base,
        }
    }
}

impl fmt::Display for PhSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}, {}, ...}} ∪ {{+inf}}", self.base, self.base + 1)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CellKind {
    VertexOrbit,
    EdgeOrbitClosure,
    DecorationClosure,
    WholeCircle,
}

/// Point classes of the symbolic space: vertices, open edges minus their
/// decoration points, and decoration point sets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Atom {
    Vertex(usize),
    Edge(usize),
    Decoration(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosureCell {
    pub kind: CellKind,
    /// The orbit itself.
    pub members: BTreeSet<Atom>,
    /// The orbit's closure.
    pub hull: BTreeSet<Atom>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosureFamily {
    pub cells: Vec<ClosureCell>,
    /// Strict containment pairs `(lower, upper)` between closures.
    pub containment: Vec<(usize, usize)>,
    pub source: ColoredGraph,
}

impl ClosureFamily {
    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn contains(&self, lower: usize, upper: usize) -> bool {
        self.containment.contains(&(lower, upper))
    }

    /// Covering pairs of the containment order.
    pub fn hasse_edges(&self) -> Vec<(usize, usize)> {
        self.containment
            .iter()
            .copied()
            .filter(|&(a, b)| {
                !(0..self.cells.len()).any(|m| self.contains(a, m) && self.contains(m, b))
            })
            .collect()
    }

    pub fn count_by_kind(&self, kind: CellKind) -> usize {
        self.cells.iter().filter(|c| c.kind == kind).count()
    }
}

pub fn closure_family(c: &ColoredGraph) -> ClosureFamily {
    let g = &c.reduced().graph;
    if c.reduced().is_circle && c.is_plain() {
        let atoms: BTreeSet<Atom> = [Atom::Vertex(0), Atom::Edge(0)].into();
        return ClosureFamily {
            cells: vec![ClosureCell {
                kind: CellKind::WholeCircle,
                members: atoms.clone(),
                hull: atoms,
            }],
            containment: Vec::new(),
            source: c.clone(),
        };
    }
    let marked;
    let work = if c.reduced().is_circle {
        marked = c.as_marked();
        &marked
    } else {
        c
    };
    let group = automorphisms(work).expect("non-circle input");
    let mut cells = Vec::new();
    for orbit in vertex_orbits(&group, work) {
        let atoms: BTreeSet<Atom> = orbit.into_iter().map(Atom::Vertex).collect();
        cells.push(ClosureCell {
            kind: CellKind::VertexOrbit,
            members: atoms.clone(),
            hull: atoms,
        });
    }
    let decos = work.decorations();
    for orbit in edge_orbits(&group, work) {
        let members: BTreeSet<Atom> = orbit.iter().map(|&e| Atom::Edge(e)).collect();
        let mut hull = members.clone();
        for &e in &orbit {
            hull.insert(Atom::Vertex(g.edges()[e].u));
            hull.insert(Atom::Vertex(g.edges()[e].v));
            hull.extend(
                decos
                    .iter()
                    .enumerate()
                    .filter(|(_, d)| d.edge == e)
                    .map(|(i, _)| Atom::Decoration(i)),
            );
        }
        cells.push(ClosureCell {
            kind: CellKind::EdgeOrbitClosure,
            members,
            hull,
        });
    }
    for orbit in decoration_orbits(&group, work) {
        let members: BTreeSet<Atom> = orbit.iter().map(|&d| Atom::Decoration(d)).collect();
        let mut hull = members.clone();
        for &d in &orbit {
            let e = &g.edges()[decos[d].edge];
            hull.insert(Atom::Vertex(e.u));
            hull.insert(Atom::Vertex(e.v));
        }
        cells.push(ClosureCell {
            kind: CellKind::DecorationClosure,
            members,
            hull,
        });
    }
    let mut containment = Vec::new();
    for (i, a) in cells.iter().enumerate() {
        for (j, b) in cells.iter().enumerate() {
            if i != j && a.hull.is_subset(&b.hull) {
                containment.push((i, j));
            }
        }
    }
    ClosureFamily {
        cells,
        containment,
        source: c.clone(),
    }
}

pub fn height_of(f: &ClosureFamily) -> Height {
    Height::Finite(f.cells.len() as u64 - 1)
}

pub fn base_family(g: &TopoGraph) -> ClosureFamily {
    closure_family(&ColoredGraph::trivial(reduce(g, &BTreeSet::new())))
}

/// Height of the full homeomorphism group.
pub fn base_height(g: &TopoGraph) -> Height {
    height_of(&base_family(g))
}

pub fn ph_set(g: &TopoGraph) -> PhSet {
    PhSet {
        base: base_height(g).finite().expect("graph families are finite"),
    }
}

fn kind_label(k: CellKind) -> &'static str {
    match k {
        CellKind::VertexOrbit => "vertex orbit",
        CellKind::EdgeOrbitClosure => "edge orbit closure",
        CellKind::DecorationClosure => "decoration closure",
        CellKind::WholeCircle => "whole circle",
    }
}

/// Hasse diagram of the containment order in DOT.
pub fn poset_dot(f: &ClosureFamily) -> String {
    let mut out = String::from("digraph closures {\n  rankdir=BT;\n  node [shape=box];\n");
    for (i, c) in f.cells.iter().enumerate() {
        let _ = writeln!(
            out,
            "  c{i} [label=\"{} ({} members)\"];",
            kind_label(c.kind),
            c.members.len()
        );
    }
    for (a, b) in f.hasse_edges() {
        let _ = writeln!(out, "  c{a} -> c{b};");
    }
    out.push_str("}\n");
    out
}
