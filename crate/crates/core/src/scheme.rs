//! Declarative subgroup constructions and the target-height planner.
//!
//! A [`Scheme`] names a subgroup of the homeomorphism group by the
//! combinatorial structure it must preserve: marked subdivision points
//! (colored by level), an optional palette involution reversing the levels,
//! and sequence decorations. [`apply_scheme`] builds the colored graph whose
//! automorphism group is the shadow of that subgroup.

use std::collections::BTreeSet;
use std::fmt;

use num_rational::Rational64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::aut::{automorphisms, edge_orbits, vertex_orbits, Color, ColoredGraph, Decoration};
use crate::closure::{base_height, closure_family, height_of, ph_set, Height};
use crate::graph::{reduce, Edge, ReducedGraph, TopoGraph};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SchemeError {
    #[error("scheme does not apply to this graph: {0}")]
    Incompatible(String),
    #[error("edge `{0}` not found")]
    OrbitNotFound(String),
    #[error("invalid parameter: {0}")]
    BadParameter(String),
    #[error("height {target} is below the minimum height {base}; it is not achievable on this graph")]
    BelowBase { target: u64, base: u64 },
    #[error("internal error: {0}")]
    Internal(String),
}

/// Rotation angle for circle rotations: an exact rational (in lowest terms)
/// or a named irrational.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum RotationAngle {
    Rational(#[serde(with = "ratio_string")] Rational64),
    Irrational(String),
}

impl RotationAngle {
    pub fn rational(p: i64, q: i64) -> Result<Self, SchemeError> {
        if q == 0 {
            return Err(SchemeError::BadParameter("zero denominator".into()));
        }
        Ok(RotationAngle::Rational(Rational64::new(p, q)))
    }
}

mod ratio_string {
    use num_rational::Rational64;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational64, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&r.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational64, D::Error> {
        let text = String::deserialize(d)?;
        let r: Rational64 = text.trim().parse().map_err(serde::de::Error::custom)?;
        Ok(r)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "variant")]
pub enum Scheme {
    FullHomeo,
    Trivial,
    /// Marks at levels `1..m` on every edge of a separated orbit, fixed
    /// level-wise.
    FixMarks {
        #[serde(rename = "edgeOrbit", default, skip_serializing_if = "Option::is_none")]
        edge_orbit: Option<String>,
        m: u32,
    },
    /// As `FixMarks`, with a palette involution sending level `j` to `m - j`.
    FlipMarks {
        #[serde(rename = "edgeOrbit", default, skip_serializing_if = "Option::is_none")]
        edge_orbit: Option<String>,
        m: u32,
    },
    /// As `FixMarks`, plus one sequence decoration on each first sub-edge.
    MarksWithSequence {
        #[serde(rename = "edgeOrbit", default, skip_serializing_if = "Option::is_none")]
        edge_orbit: Option<String>,
        m: u32,
    },
    /// Marks on a single edge, each mark and both endpoints fixed.
    PinnedMarks {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        edge: Option<String>,
        m: u32,
    },
    /// As `PinnedMarks`, plus a sequence decoration on the first sub-edge.
    PinnedMarksWithSequence {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        edge: Option<String>,
        m: u32,
    },
    /// Star only: one common decoration on every edge.
    LeafRotation,
    /// Circle only: `n` marks with the reflection of the mark levels.
    CircleMarks { n: u32 },
    /// Circle only: the cyclic group of a rotation.
    Rotation { angle: RotationAngle },
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let orbit = |o: &Option<String>| o.clone().unwrap_or_else(|| "auto".into());
        match self {
            Scheme::FullHomeo => write!(f, "FullHomeo"),
            Scheme::Trivial => write!(f, "Trivial"),
            Scheme::FixMarks { edge_orbit, m } => write!(f, "FixMarks({}, m={m})", orbit(edge_orbit)),
            Scheme::FlipMarks { edge_orbit, m } => {
                write!(f, "FlipMarks({}, m={m})", orbit(edge_orbit))
            }
            Scheme::MarksWithSequence { edge_orbit, m } => {
                write!(f, "MarksWithSequence({}, m={m})", orbit(edge_orbit))
            }
            Scheme::PinnedMarks { edge, m } => write!(f, "PinnedMarks({}, m={m})", orbit(edge)),
            Scheme::PinnedMarksWithSequence { edge, m } => {
                write!(f, "PinnedMarksWithSequence({}, m={m})", orbit(edge))
            }
            Scheme::LeafRotation => write!(f, "LeafRotation"),
            Scheme::CircleMarks { n } => write!(f, "CircleMarks({n})"),
            Scheme::Rotation { angle } => match angle {
                RotationAngle::Rational(r) => write!(f, "Rotation({r})"),
                RotationAngle::Irrational(s) => write!(f, "Rotation({s})"),
            },
        }
    }
}

/// Whether the two endpoint orbits of an edge orbit differ (`Separated`)
/// or coincide (`Joined`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum OrbitCase {
    Separated,
    Joined,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeOrbitInfo {
    /// Edge indices of the reduced graph, ascending.
    pub edges: Vec<usize>,
    pub case: OrbitCase,
    /// `(edge, from, to)`: where level 0 and level `m` sit on each edge.
    pub orientation: Vec<(usize, usize, usize)>,
}

/// Edge orbits of the full group on a non-circle reduced graph, ordered by
/// their smallest edge index.
pub fn edge_orbit_table(r: &ReducedGraph) -> Vec<EdgeOrbitInfo> {
    let c = ColoredGraph::trivial(r.clone());
    let group = automorphisms(&c).expect("non-circle graph");
    let mut vorbit = vec![0; r.graph.vertex_count()];
    for (k, o) in vertex_orbits(&group, &c).iter().enumerate() {
        for &v in o {
            vorbit[v] = k;
        }
    }
    let edges = r.graph.edges();
    edge_orbits(&group, &c)
        .into_iter()
        .map(|orbit| {
            let first = &edges[orbit[0]];
            let case = if vorbit[first.u] == vorbit[first.v] {
                OrbitCase::Joined
            } else {
                OrbitCase::Separated
            };
            let orientation = match case {
                OrbitCase::Separated => orbit
                    .iter()
                    .map(|&e| {
                        let Edge { u, v, .. } = edges[e];
                        if vorbit[u] == vorbit[first.u] {
                            (e, u, v)
                        } else {
                            (e, v, u)
                        }
                    })
                    .collect(),
                OrbitCase::Joined => {
                    // carry the first edge's direction along the generators
                    let mut dir: Vec<Option<(usize, usize)>> = vec![None; edges.len()];
                    dir[orbit[0]] = Some((first.u, first.v));
                    let mut queue = vec![orbit[0]];
                    while let Some(e) = queue.pop() {
                        let (a, b) = dir[e].unwrap();
                        for g in &group.generators {
                            let img = g.edges[e];
                            if dir[img].is_none() {
                                dir[img] = Some((g.vertices[a], g.vertices[b]));
                                queue.push(img);
                            }
                        }
                    }
                    orbit
                        .iter()
                        .map(|&e| {
                            let (a, b) = dir[e].expect("orbit is connected under generators");
                            (e, a, b)
                        })
                        .collect()
                }
            };
            EdgeOrbitInfo {
                edges: orbit,
                case,
                orientation,
            }
        })
        .collect()
}

fn resolve_orbit<'a>(
    r: &ReducedGraph,
    table: &'a [EdgeOrbitInfo],
    reference: &Option<String>,
    case: OrbitCase,
) -> Result<&'a EdgeOrbitInfo, SchemeError> {
    match reference {
        Some(id) => {
            let e = r
                .resolve_edge(id)
                .ok_or_else(|| SchemeError::OrbitNotFound(id.clone()))?;
            let info = table.iter().find(|o| o.edges.contains(&e)).unwrap();
            if info.case != case {
                return Err(SchemeError::Incompatible(format!(
                    "the orbit of edge `{id}` has {} endpoint orbits",
                    match info.case {
                        OrbitCase::Separated => "distinct",
                        OrbitCase::Joined => "equal",
                    }
                )));
            }
            Ok(info)
        }
        None => table.iter().find(|o| o.case == case).ok_or_else(|| {
            SchemeError::Incompatible(format!("no edge orbit of kind {case:?}"))
        }),
    }
}

struct Subdivision<'a> {
    orientation: &'a [(usize, usize, usize)],
    m: u32,
    decorate: bool,
    pin_endpoints: bool,
    flip: bool,
}

/// Colors: 0 base, `1..m` mark levels, `m..2m` sub-edge levels, `2m`
/// decoration label, `2m+1`/`2m+2` pinned endpoints.
fn subdivide(r: &ReducedGraph, plan: Subdivision<'_>) -> Result<ColoredGraph, SchemeError> {
    let m = plan.m;
    if m < 1 {
        return Err(SchemeError::BadParameter("m must be at least 1".into()));
    }
    let g = &r.graph;
    let mark_color = |j: u32| j;
    let sub_color = |k: u32| m - 1 + k;
    let label = 2 * m;
    let palette = 2 * m + 3;

    let mut vertices: Vec<String> = g.vertices().to_vec();
    let mut vcolor: Vec<Color> = vec![0; vertices.len()];
    let mut edges = Vec::new();
    let mut ecolor = Vec::new();
    let mut decorations = Vec::new();
    for (i, e) in g.edges().iter().enumerate() {
        let Some(&(_, from, to)) = plan.orientation.iter().find(|o| o.0 == i) else {
            edges.push(e.clone());
            ecolor.push(0);
            continue;
        };
        if plan.pin_endpoints {
            vcolor[from] = 2 * m + 1;
            if to != from {
                vcolor[to] = 2 * m + 2;
            }
        }
        let mut points = vec![from];
        for j in 1..m {
            points.push(vertices.len());
            vertices.push(format!("{}@{j}", e.id));
            vcolor.push(mark_color(j));
        }
        points.push(to);
        for k in 1..=m {
            if k == 1 && plan.decorate {
                decorations.push(Decoration {
                    edge: edges.len(),
                    label,
                });
            }
            edges.push(Edge {
                id: format!("{}#{k}", e.id),
                u: points[k as usize - 1],
                v: points[k as usize],
            });
            ecolor.push(sub_color(k));
        }
    }
    let mut symmetry = Vec::new();
    if plan.flip {
        let mut sigma: Vec<Color> = (0..palette).collect();
        for j in 1..m {
            sigma[mark_color(j) as usize] = mark_color(m - j);
        }
        for k in 1..=m {
            sigma[sub_color(k) as usize] = sub_color(m + 1 - k);
        }
        symmetry.push(sigma);
    }
    let graph = TopoGraph::from_parts(vertices, edges)
        .map_err(|e| SchemeError::Internal(format!("subdivision failed: {e}")))?;
    ColoredGraph::new(
        ReducedGraph::marked(graph),
        vcolor,
        ecolor,
        palette,
        symmetry,
        decorations,
    )
    .map_err(|e| SchemeError::Internal(e.to_string()))
}

fn circle_marks(r: &ReducedGraph, n: u32) -> Result<ColoredGraph, SchemeError> {
    if n < 1 {
        return Err(SchemeError::BadParameter("n must be at least 1".into()));
    }
    let base = &r.graph.vertices()[0];
    let loop_id = &r.graph.edges()[0].id;
    let mut vertices = vec![base.clone()];
    vertices.extend((1..n).map(|j| format!("{base}@{j}")));
    let edges: Vec<Edge> = (1..=n)
        .map(|k| Edge {
            id: format!("{loop_id}#{k}"),
            u: (k - 1) as usize,
            v: (k % n) as usize,
        })
        .collect();
    let mark = |j: u32| j + 1;
    let sub = |k: u32| n + k;
    let palette = 2 * n + 1;
    let mut sigma: Vec<Color> = (0..palette).collect();
    for j in 0..n {
        sigma[mark(j) as usize] = mark((n - j) % n);
    }
    for k in 1..=n {
        sigma[sub(k) as usize] = sub(n + 1 - k);
    }
    let graph = TopoGraph::from_parts(vertices, edges)
        .map_err(|e| SchemeError::Internal(e.to_string()))?;
    ColoredGraph::new(
        ReducedGraph::marked(graph),
        (0..n).map(mark).collect(),
        (1..=n).map(sub).collect(),
        palette,
        vec![sigma],
        vec![],
    )
    .map_err(|e| SchemeError::Internal(e.to_string()))
}

/// The center of a star `K_{1,n}`, `n >= 3`.
fn star_center(r: &ReducedGraph) -> Option<usize> {
    let g = &r.graph;
    if r.is_circle || g.edge_count() < 3 || g.edges().iter().any(Edge::is_loop) {
        return None;
    }
    let center = (0..g.vertex_count()).find(|&v| g.degree(v) >= 3)?;
    let ok = g.edge_count() == g.vertex_count() - 1
        && g.edges().iter().all(|e| e.u == center || e.v == center)
        && (0..g.vertex_count()).all(|v| v == center || g.degree(v) == 1);
    ok.then_some(center)
}

fn require_circle(r: &ReducedGraph, what: &str) -> Result<(), SchemeError> {
    if r.is_circle {
        Ok(())
    } else {
        Err(SchemeError::Incompatible(format!("{what} applies only to the circle")))
    }
}

fn require_not_circle(r: &ReducedGraph, what: &str) -> Result<(), SchemeError> {
    if r.is_circle {
        Err(SchemeError::Incompatible(format!("{what} does not apply to the circle")))
    } else {
        Ok(())
    }
}

/// Builds the colored graph realizing `s` on `g`.
///
/// `Trivial` yields the discrete coloring and `Rotation` the plain circle;
/// both are evaluated symbolically by [`scheme_height`].
pub fn apply_scheme(g: &TopoGraph, s: &Scheme) -> Result<ColoredGraph, SchemeError> {
    let r = reduce(g, &BTreeSet::new());
    match s {
        Scheme::FullHomeo => Ok(ColoredGraph::trivial(r)),
        Scheme::Trivial => {
            let (n, m) = (r.graph.vertex_count() as u32, r.graph.edge_count() as u32);
            ColoredGraph::new(
                r,
                (0..n).collect(),
                (n..n + m).collect(),
                n + m,
                vec![],
                vec![],
            )
            .map_err(|e| SchemeError::Internal(e.to_string()))
        }
        Scheme::Rotation { .. } => {
            require_circle(&r, "Rotation")?;
            Ok(ColoredGraph::trivial(r))
        }
        Scheme::CircleMarks { n } => {
            require_circle(&r, "CircleMarks")?;
            circle_marks(&r, *n)
        }
        Scheme::LeafRotation => {
            star_center(&r)
                .ok_or_else(|| SchemeError::Incompatible("LeafRotation needs a star".into()))?;
            let m = r.graph.edge_count();
            let decorations = (0..m).map(|edge| Decoration { edge, label: 1 }).collect();
            ColoredGraph::new(
                r.clone(),
                vec![0; r.graph.vertex_count()],
                vec![0; m],
                2,
                vec![],
                decorations,
            )
            .map_err(|e| SchemeError::Internal(e.to_string()))
        }
        Scheme::FixMarks { edge_orbit, m } | Scheme::MarksWithSequence { edge_orbit, m } => {
            require_not_circle(&r, "marking an edge orbit")?;
            let table = edge_orbit_table(&r);
            let info = resolve_orbit(&r, &table, edge_orbit, OrbitCase::Separated)?;
            subdivide(
                &r,
                Subdivision {
                    orientation: &info.orientation,
                    m: *m,
                    decorate: matches!(s, Scheme::MarksWithSequence { .. }),
                    pin_endpoints: false,
                    flip: false,
                },
            )
        }
        Scheme::FlipMarks { edge_orbit, m } => {
            require_not_circle(&r, "FlipMarks")?;
            let table = edge_orbit_table(&r);
            let info = resolve_orbit(&r, &table, edge_orbit, OrbitCase::Joined)?;
            subdivide(
                &r,
                Subdivision {
                    orientation: &info.orientation,
                    m: *m,
                    decorate: false,
                    pin_endpoints: false,
                    flip: true,
                },
            )
        }
        Scheme::PinnedMarks { edge, m } | Scheme::PinnedMarksWithSequence { edge, m } => {
            require_not_circle(&r, "pinning an edge")?;
            let e = match edge {
                Some(id) => r
                    .resolve_edge(id)
                    .ok_or_else(|| SchemeError::OrbitNotFound(id.clone()))?,
                None => 0,
            };
            let Edge { u, v, .. } = r.graph.edges()[e];
            subdivide(
                &r,
                Subdivision {
                    orientation: &[(e, u, v)],
                    m: *m,
                    decorate: matches!(s, Scheme::PinnedMarksWithSequence { .. }),
                    pin_endpoints: true,
                    flip: false,
                },
            )
        }
    }
}

/// Height of the subgroup described by `s`, computed by the orbit engine
/// except for the symbolic `Trivial` and `Rotation` cases.
pub fn scheme_height(g: &TopoGraph, s: &Scheme) -> Result<Height, SchemeError> {
    match s {
        // every point is its own closed invariant set and a graph is infinite
        Scheme::Trivial => Ok(Height::Infinite),
        Scheme::Rotation { angle } => {
            require_circle(&reduce(g, &BTreeSet::new()), "Rotation")?;
            Ok(match angle {
                RotationAngle::Rational(_) => Height::Infinite,
                RotationAngle::Irrational(_) => Height::Finite(0),
            })
        }
        _ => Ok(height_of(&closure_family(&apply_scheme(g, s)?))),
    }
}

/// The closed-form height of `s` on `g` from the known construction counts,
/// or `None` where no closed form is known.
pub fn closed_form(g: &TopoGraph, s: &Scheme) -> Option<Height> {
    let base = base_height(g).finite()?;
    let r = reduce(g, &BTreeSet::new());
    let m = |m: &u32| *m as u64;
    match s {
        Scheme::FullHomeo => Some(Height::Finite(base)),
        Scheme::Trivial => Some(Height::Infinite),
        Scheme::Rotation { angle } => Some(match angle {
            RotationAngle::Rational(_) => Height::Infinite,
            RotationAngle::Irrational(_) => Height::Finite(0),
        }),
        Scheme::FixMarks { m: k, .. } if *k >= 1 => Some(Height::Finite(base + 2 * m(k) - 2)),
        Scheme::MarksWithSequence { m: k, .. } if *k >= 1 => {
            Some(Height::Finite(base + 2 * m(k) - 1))
        }
        Scheme::FlipMarks { m: k, .. } if *k >= 1 => Some(Height::Finite(base + m(k) - 1)),
        Scheme::CircleMarks { n } if *n >= 1 => Some(Height::Finite(*n as u64)),
        Scheme::LeafRotation => star_center(&r).map(|_| Height::Finite(3)),
        Scheme::PinnedMarks { m: p, .. } if *p >= 1 => {
            star_center(&r).map(|_| Height::Finite(2 * m(p) + 2))
        }
        Scheme::PinnedMarksWithSequence { m: p, .. } if *p >= 1 => {
            star_center(&r).map(|_| Height::Finite(2 * m(p) + 3))
        }
        _ => None,
    }
}

/// A scheme whose height on `g` is exactly `t`.
pub fn plan(g: &TopoGraph, t: Height) -> Result<Scheme, SchemeError> {
    let base = ph_set(g).base;
    let t = match t {
        Height::Infinite => return Ok(Scheme::Trivial),
        Height::Finite(t) if t < base => return Err(SchemeError::BelowBase { target: t, base }),
        Height::Finite(t) if t == base => return Ok(Scheme::FullHomeo),
        Height::Finite(t) => t,
    };
    let r = reduce(g, &BTreeSet::new());
    if r.is_circle {
        return Ok(Scheme::CircleMarks { n: t as u32 });
    }
    let extra = (t - base) as u32;
    let table = edge_orbit_table(&r);
    let separated = table.iter().filter(|o| o.case == OrbitCase::Separated);
    let joined = table.iter().filter(|o| o.case == OrbitCase::Joined);
    for info in separated.chain(joined) {
        let edge_orbit = Some(r.graph.edges()[info.edges[0]].id.clone());
        let s = match info.case {
            OrbitCase::Separated if extra.is_multiple_of(2) => Scheme::FixMarks {
                edge_orbit,
                m: (extra + 2) / 2,
            },
            OrbitCase::Separated => Scheme::MarksWithSequence {
                edge_orbit,
                m: extra.div_ceil(2),
            },
            OrbitCase::Joined => Scheme::FlipMarks {
                edge_orbit,
                m: extra + 1,
            },
        };
        if scheme_height(g, &s)? == Height::Finite(t) {
            return Ok(s);
        }
    }
    Err(SchemeError::Internal(format!(
        "no edge orbit realizes height {t}"
    )))
}

/// The circle scheme lifting the flip-marked interval with `n` marks.
pub fn lift_to_circle(n: u32) -> Result<Scheme, SchemeError> {
    if n < 1 {
        return Err(SchemeError::BadParameter("n must be at least 1".into()));
    }
    Ok(Scheme::CircleMarks { n })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closure::CellKind;
    use crate::graph::{make_family, FamilyId};

    fn fam(id: FamilyId) -> TopoGraph {
        make_family(id).unwrap()
    }

    fn height(id: FamilyId, s: Scheme) -> Height {
        scheme_height(&fam(id), &s).unwrap()
    }

    #[test]
    fn interval_flip_marks() {
        let g = fam(FamilyId::Interval);
        let c = apply_scheme(&g, &Scheme::FlipMarks { edge_orbit: None, m: 5 }).unwrap();
        assert_eq!(c.reduced().graph.vertex_count(), 2 + 4);
        assert_eq!(c.color_symmetry().len(), 1);
        assert_eq!(
            height(FamilyId::Interval, Scheme::FlipMarks { edge_orbit: None, m: 6 }),
            Height::Finite(6)
        );
    }

    #[test]
    fn star_pinned_marks_separate_leaf() {
        let g = fam(FamilyId::Star(3));
        let s = Scheme::PinnedMarks {
            edge: Some("e1".into()),
            m: 3,
        };
        let f = closure_family(&apply_scheme(&g, &s).unwrap());
        // {0}, {1}, two marks, three sub-edges, {2,3}, remaining arms
        assert_eq!(f.len(), 2 * 3 + 3);
        let leaves: Vec<usize> = f
            .cells
            .iter()
            .filter(|c| c.kind == CellKind::VertexOrbit)
            .map(|c| c.members.len())
            .collect();
        assert!(leaves.contains(&2));
    }

    #[test]
    fn star_leaf_rotation() {
        let c = apply_scheme(&fam(FamilyId::Star(4)), &Scheme::LeafRotation).unwrap();
        assert_eq!(c.decorations().len(), 4);
        let f = closure_family(&c);
        assert_eq!(f.count_by_kind(CellKind::DecorationClosure), 1);
        assert_eq!(height(FamilyId::Star(4), Scheme::LeafRotation), Height::Finite(3));
        assert!(apply_scheme(&fam(FamilyId::Xn(4)), &Scheme::LeafRotation).is_err());
    }

    #[test]
    fn marks_with_sequence_on_star() {
        let s = Scheme::MarksWithSequence { edge_orbit: None, m: 3 };
        assert_eq!(height(FamilyId::Star(5), s), Height::Finite(7));
    }

    #[test]
    fn rotations() {
        let r = |p, q| Scheme::Rotation {
            angle: RotationAngle::rational(p, q).unwrap(),
        };
        assert_eq!(height(FamilyId::Circle, r(1, 3)), Height::Infinite);
        let irr = Scheme::Rotation {
            angle: RotationAngle::Irrational("sqrt2".into()),
        };
        assert_eq!(height(FamilyId::Circle, irr.clone()), Height::Finite(0));
        assert!(scheme_height(&fam(FamilyId::Interval), &irr).is_err());
    }

    #[test]
    fn planner_examples() {
        assert_eq!(plan(&fam(FamilyId::Star(3)), Height::Finite(2)).unwrap(), Scheme::FullHomeo);
        assert_eq!(
            plan(&fam(FamilyId::Interval), Height::Finite(5)).unwrap(),
            Scheme::FlipMarks {
                edge_orbit: Some("e".into()),
                m: 5
            }
        );
        let s = plan(&fam(FamilyId::Xn(4)), Height::Finite(9)).unwrap();
        assert!(matches!(s, Scheme::MarksWithSequence { m: 2, .. }));
        assert_eq!(height(FamilyId::Xn(4), s), Height::Finite(9));
        assert_eq!(
            plan(&fam(FamilyId::Interval), Height::Finite(0)),
            Err(SchemeError::BelowBase { target: 0, base: 1 })
        );
        assert_eq!(plan(&fam(FamilyId::Circle), Height::Infinite).unwrap(), Scheme::Trivial);
        assert_eq!(
            plan(&fam(FamilyId::Circle), Height::Finite(4)).unwrap(),
            Scheme::CircleMarks { n: 4 }
        );
    }

    #[test]
    fn circle_lift() {
        for (n, h) in [(1, 1), (2, 2), (7, 7)] {
            let s = lift_to_circle(n).unwrap();
            assert_eq!(height(FamilyId::Circle, s), Height::Finite(h));
        }
        let f = closure_family(&apply_scheme(&fam(FamilyId::Circle), &lift_to_circle(2).unwrap()).unwrap());
        assert_eq!(f.len(), 3);
        assert!(lift_to_circle(0).is_err());
    }

    #[test]
    fn incompatible_variants() {
        let star = fam(FamilyId::Star(3));
        assert!(matches!(
            apply_scheme(&star, &Scheme::FlipMarks { edge_orbit: None, m: 2 }),
            Err(SchemeError::Incompatible(_))
        ));
        assert!(matches!(
            apply_scheme(&star, &Scheme::FixMarks { edge_orbit: Some("nope".into()), m: 2 }),
            Err(SchemeError::OrbitNotFound(_))
        ));
        assert!(matches!(
            apply_scheme(&star, &Scheme::FixMarks { edge_orbit: None, m: 0 }),
            Err(SchemeError::BadParameter(_))
        ));
        assert!(apply_scheme(&star, &Scheme::CircleMarks { n: 2 }).is_err());
        let interval = fam(FamilyId::Interval);
        assert!(matches!(
            apply_scheme(&interval, &Scheme::FixMarks { edge_orbit: Some("e".into()), m: 2 }),
            Err(SchemeError::Incompatible(_))
        ));
    }

    #[test]
    fn json_encoding() {
        let s = Scheme::FixMarks {
            edge_orbit: Some("e1".into()),
            m: 3,
        };
        let text = serde_json::to_string(&s).unwrap();
        assert_eq!(text, r#"{"variant":"FixMarks","edgeOrbit":"e1","m":3}"#);
        let r: Scheme = serde_json::from_str(r#"{"variant":"Rotation","angle":{"rational":"2/6"}}"#).unwrap();
        assert_eq!(
            r,
            Scheme::Rotation {
                angle: RotationAngle::rational(1, 3).unwrap()
            }
        );
        let t: Scheme = serde_json::from_str(r#"{"variant":"Trivial"}"#).unwrap();
        assert_eq!(t, Scheme::Trivial);
    }
}
