//! Automorphisms of colored multigraphs.
//!
//! An automorphism is a triple (vertex permutation, edge permutation, palette
//! permutation) that preserves incidence, maps every color class through the
//! palette permutation, and carries decorations to decorations with permuted
//! labels. The palette permutation is global: one element of the declared
//! color symmetry group applies to every vertex, edge and decoration at once.
//!
//! The search is individualization-refinement. The group order is the product
//! of the basic orbit lengths along a stabilizer chain, times the number of
//! realizable palette permutations, times the permutations of
//! interchangeable parallel edges.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::ReducedGraph;
use crate::unionfind::UnionFind;

pub type Color = u32;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AutError {
    #[error("the canonical circle has no essential vertices; handle it before calling the engine")]
    CircleInput,
    #[error("inconsistent palette: {0}")]
    InconsistentPalette(String),
    #[error("invalid coloring: {0}")]
    InvalidColoring(String),
}

/// A bi-infinite sequence inside `edge` accumulating at both of its endpoints.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Decoration {
    pub edge: usize,
    pub label: Color,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoredGraph {
    reduced: ReducedGraph,
    vertex_color: Vec<Color>,
    edge_color: Vec<Color>,
    palette_size: u32,
    color_symmetry: Vec<Vec<Color>>,
    decorations: Vec<Decoration>,
}

impl ColoredGraph {
    pub fn new(
        reduced: ReducedGraph,
        vertex_color: Vec<Color>,
        edge_color: Vec<Color>,
        palette_size: u32,
        color_symmetry: Vec<Vec<Color>>,
        decorations: Vec<Decoration>,
    ) -> Result<Self, AutError> {
        let g = &reduced.graph;
        if vertex_color.len() != g.vertex_count() {
            return Err(AutError::InvalidColoring(format!(
                "{} vertex colors for {} vertices",
                vertex_color.len(),
                g.vertex_count()
            )));
        }
        if edge_color.len() != g.edge_count() {
            return Err(AutError::InvalidColoring(format!(
                "{} edge colors for {} edges",
                edge_color.len(),
                g.edge_count()
            )));
        }
        if let Some(c) = vertex_color
            .iter()
            .chain(&edge_color)
            .find(|&&c| c >= palette_size)
        {
            return Err(AutError::InvalidColoring(format!(
                "color {c} outside palette of size {palette_size}"
            )));
        }
        for gen in &color_symmetry {
            let mut seen = vec![false; palette_size as usize];
            if gen.len() != palette_size as usize {
                return Err(AutError::InconsistentPalette(format!(
                    "generator of length {} on palette of size {palette_size}",
                    gen.len()
                )));
            }
            for &c in gen {
                if c >= palette_size || std::mem::replace(&mut seen[c as usize], true) {
                    return Err(AutError::InconsistentPalette(
                        "generator is not a bijection".into(),
                    ));
                }
            }
        }
        let mut keys = BTreeSet::new();
        for d in &decorations {
            if d.edge >= g.edge_count() {
                return Err(AutError::InvalidColoring(format!(
                    "decoration on missing edge #{}",
                    d.edge
                )));
            }
            if d.label >= palette_size {
                return Err(AutError::InvalidColoring(format!(
                    "decoration label {} outside palette",
                    d.label
                )));
            }
            if !keys.insert((d.edge, d.label)) {
                return Err(AutError::InvalidColoring(format!(
                    "two decorations with label {} on edge #{}",
                    d.label, d.edge
                )));
            }
        }
        Ok(ColoredGraph {
            reduced,
            vertex_color,
            edge_color,
            palette_size,
            color_symmetry,
            decorations,
        })
    }

    /// Every vertex and edge colored 0, no palette symmetry, no decorations.
    pub fn trivial(reduced: ReducedGraph) -> Self {
        let (n, m) = (reduced.graph.vertex_count(), reduced.graph.edge_count());
        ColoredGraph {
            reduced,
            vertex_color: vec![0; n],
            edge_color: vec![0; m],
            palette_size: 1,
            color_symmetry: Vec::new(),
            decorations: Vec::new(),
        }
    }

    pub fn reduced(&self) -> &ReducedGraph {
        &self.reduced
    }

    pub fn vertex_color(&self) -> &[Color] {
        &self.vertex_color
    }

    pub fn edge_color(&self) -> &[Color] {
        &self.edge_color
    }

    pub fn palette_size(&self) -> u32 {
        self.palette_size
    }

    pub fn color_symmetry(&self) -> &[Vec<Color>] {
        &self.color_symmetry
    }

    pub fn decorations(&self) -> &[Decoration] {
        &self.decorations
    }

    pub fn is_plain(&self) -> bool {
        self.decorations.is_empty()
            && self.vertex_color.iter().chain(&self.edge_color).all(|&c| c == 0)
    }

    /// Same graph and palette with the color symmetry dropped.
    pub fn without_symmetry(&self) -> Self {
        ColoredGraph {
            color_symmetry: Vec::new(),
            ..self.clone()
        }
    }

    /// Gives vertex `v` a fresh color of its own; the palette symmetry fixes it.
    pub fn individualize_vertex(&self, v: usize) -> Self {
        let fresh = self.palette_size;
        let mut out = self.clone();
        out.palette_size += 1;
        out.vertex_color[v] = fresh;
        for g in &mut out.color_symmetry {
            g.push(fresh);
        }
        out
    }

    /// Forgets the circle flag so the single vertex is treated as a marked point.
    pub(crate) fn as_marked(&self) -> Self {
        let mut out = self.clone();
        out.reduced.is_circle = false;
        out
    }

    /// All elements of the palette group, identity first.
    pub fn palette_elements(&self) -> Vec<Vec<Color>> {
        let id: Vec<Color> = (0..self.palette_size).collect();
        let mut seen = BTreeSet::new();
        seen.insert(id.clone());
        let mut out = vec![id];
        let mut i = 0;
        while i < out.len() {
            for g in &self.color_symmetry {
                let next: Vec<Color> = out[i].iter().map(|&c| g[c as usize]).collect();
                if seen.insert(next.clone()) {
                    out.push(next);
                }
            }
            i += 1;
        }
        out
    }

    pub(crate) fn edge_type(&self, e: usize, sigma: &[Color]) -> EdgeType {
        let mut labels: Vec<Color> = self
            .decorations
            .iter()
            .filter(|d| d.edge == e)
            .map(|d| sigma[d.label as usize])
            .collect();
        labels.sort_unstable();
        (sigma[self.edge_color[e] as usize], labels)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Automorphism {
    pub vertices: Vec<usize>,
    pub edges: Vec<usize>,
    pub colors: Vec<Color>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AutGroup {
    pub generators: Vec<Automorphism>,
    pub order: BigUint,
}

pub(crate) type EdgeType = (Color, Vec<Color>);

/// Checks incidence, color and decoration compatibility of one triple.
pub fn is_automorphism(c: &ColoredGraph, a: &Automorphism) -> bool {
    let g = &c.reduced.graph;
    let (n, m) = (g.vertex_count(), g.edge_count());
    if a.vertices.len() != n || a.edges.len() != m || a.colors.len() != c.palette_size as usize {
        return false;
    }
    let is_perm = |p: &[usize], k: usize| {
        let mut seen = vec![false; k];
        p.iter()
            .all(|&x| x < k && !std::mem::replace(&mut seen[x], true))
    };
    if !is_perm(&a.vertices, n) || !is_perm(&a.edges, m) {
        return false;
    }
    if !c.palette_elements().contains(&a.colors) {
        return false;
    }
    let sigma = &a.colors;
    for (v, &img) in a.vertices.iter().enumerate() {
        if c.vertex_color[img] != sigma[c.vertex_color[v] as usize] {
            return false;
        }
    }
    for (e, &img) in a.edges.iter().enumerate() {
        let (src, dst) = (&g.edges()[e], &g.edges()[img]);
        let (pu, pv) = (a.vertices[src.u], a.vertices[src.v]);
        let matches = (dst.u == pu && dst.v == pv) || (dst.u == pv && dst.v == pu);
        if !matches || c.edge_color[img] != sigma[c.edge_color[e] as usize] {
            return false;
        }
    }
    let decos: BTreeSet<(usize, Color)> =
        c.decorations.iter().map(|d| (d.edge, d.label)).collect();
    c.decorations
        .iter()
        .all(|d| decos.contains(&(a.edges[d.edge], sigma[d.label as usize])))
}

/// Adjacency view with pair multisets interned into labels.
pub(crate) struct View {
    n: usize,
    vcolor: Vec<u32>,
    adj: Vec<Vec<(usize, u32)>>,
    loop_label: Vec<u32>,
    pair: HashMap<(usize, usize), u32>,
}

impl View {
    fn from_colored(c: &ColoredGraph, sigma: &[Color], interner: &mut BTreeMap<Vec<EdgeType>, u32>) -> Self {
        let g = &c.reduced.graph;
        let mut multis: BTreeMap<(usize, usize), Vec<EdgeType>> = BTreeMap::new();
        for (i, e) in g.edges().iter().enumerate() {
            multis
                .entry((e.u.min(e.v), e.u.max(e.v)))
                .or_default()
                .push(c.edge_type(i, sigma));
        }
        let labelled = multis.into_iter().map(|(k, mut v)| {
            v.sort();
            let next = interner.len() as u32 + 1;
            (k, *interner.entry(v).or_insert(next))
        });
        let vcolor = c.vertex_color.iter().map(|&x| sigma[x as usize]).collect();
        View::assemble(g.vertex_count(), vcolor, labelled)
    }

    pub(crate) fn from_multiplicities(n: usize, mult: &BTreeMap<(usize, usize), u32>) -> Self {
        View::assemble(n, vec![0; n], mult.iter().map(|(&k, &m)| (k, m)))
    }

    fn assemble(
        n: usize,
        vcolor: Vec<u32>,
        pairs: impl Iterator<Item = ((usize, usize), u32)>,
    ) -> Self {
        let mut adj = vec![Vec::new(); n];
        let mut loop_label = vec![0; n];
        let mut pair = HashMap::new();
        for ((u, v), label) in pairs {
            pair.insert((u, v), label);
            if u == v {
                loop_label[u] = label;
            } else {
                adj[u].push((v, label));
                adj[v].push((u, label));
            }
        }
        View {
            n,
            vcolor,
            adj,
            loop_label,
            pair,
        }
    }

    fn label(&self, u: usize, v: usize) -> u32 {
        self.pair.get(&(u.min(v), u.max(v))).copied().unwrap_or(0)
    }

    /// Whether the transposition of `x` and `y` preserves every label.
    fn twins(&self, x: usize, y: usize) -> bool {
        self.loop_label[x] == self.loop_label[y]
            && (0..self.n)
                .filter(|&z| z != x && z != y)
                .all(|z| self.label(x, z) == self.label(y, z))
    }
}

/// Joint color refinement of several views; ids are assigned in sorted
/// signature order so equal inputs give equal outputs across calls.
fn refine(views: &[&View], mut colors: Vec<Vec<u32>>) -> Vec<Vec<u32>> {
    let count = |cs: &Vec<Vec<u32>>| cs.iter().flatten().collect::<BTreeSet<_>>().len();
    let mut classes = count(&colors);
    loop {
        let sigs: Vec<Vec<Vec<u32>>> = views
            .iter()
            .zip(&colors)
            .map(|(view, cur)| {
                (0..view.n)
                    .map(|x| {
                        let mut nb: Vec<(u32, u32)> =
                            view.adj[x].iter().map(|&(y, l)| (l, cur[y])).collect();
                        nb.sort_unstable();
                        let mut sig = Vec::with_capacity(2 + 2 * nb.len());
                        sig.push(cur[x]);
                        sig.push(view.loop_label[x]);
                        sig.extend(nb.into_iter().flat_map(|(l, c)| [l, c]));
                        sig
                    })
                    .collect()
            })
            .collect();
        let ids: BTreeMap<&Vec<u32>, u32> = sigs
            .iter()
            .flatten()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .enumerate()
            .map(|(i, s)| (s, i as u32))
            .collect();
        let next: Vec<Vec<u32>> = sigs
            .iter()
            .map(|vs| vs.iter().map(|s| ids[s]).collect())
            .collect();
        let next_classes = ids.len();
        colors = next;
        if next_classes == classes {
            return colors;
        }
        classes = next_classes;
    }
}

fn histogram(cs: &[u32]) -> BTreeMap<u32, usize> {
    let mut h = BTreeMap::new();
    for &c in cs {
        *h.entry(c).or_insert(0) += 1;
    }
    h
}

/// First vertex of the smallest color class of size > 1.
fn target_cell(cs: &[u32]) -> Option<(u32, usize)> {
    let h = histogram(cs);
    let color = h.iter().find(|(_, &k)| k > 1).map(|(&c, _)| c)?;
    let first = cs.iter().position(|&c| c == color)?;
    Some((color, first))
}

fn verify_iso(src: &View, dst: &View, pi: &[usize]) -> bool {
    (0..src.n).all(|x| src.vcolor[x] == dst.vcolor[pi[x]])
        && src
            .pair
            .iter()
            .all(|(&(u, v), &l)| dst.label(pi[u], pi[v]) == l)
        && src.pair.len() == dst.pair.len()
}

/// An isomorphism `src -> dst` honoring the prescribed vertex pairs.
fn find_iso(src: &View, dst: &View, fixed: &[(usize, usize)]) -> Option<Vec<usize>> {
    if src.n != dst.n {
        return None;
    }
    let mut cs = src.vcolor.clone();
    let mut cd = dst.vcolor.clone();
    let top = cs.iter().chain(&cd).max().copied().unwrap_or(0) + 1;
    for (k, &(a, b)) in fixed.iter().enumerate() {
        cs[a] = top + k as u32;
        cd[b] = top + k as u32;
    }
    search_iso(src, dst, cs, cd)
}

fn search_iso(src: &View, dst: &View, cs: Vec<u32>, cd: Vec<u32>) -> Option<Vec<usize>> {
    let mut refined = refine(&[src, dst], vec![cs, cd]);
    let cd = refined.pop().unwrap();
    let cs = refined.pop().unwrap();
    if histogram(&cs) != histogram(&cd) {
        return None;
    }
    match target_cell(&cs) {
        None => {
            let mut at = HashMap::new();
            for (y, &c) in cd.iter().enumerate() {
                at.insert(c, y);
            }
            let pi: Vec<usize> = cs.iter().map(|c| at[c]).collect();
            verify_iso(src, dst, &pi).then_some(pi)
        }
        Some((color, a)) => {
            let fresh = cs.iter().chain(&cd).max().copied().unwrap() + 1;
            for b in (0..dst.n).filter(|&b| cd[b] == color) {
                let (mut s2, mut d2) = (cs.clone(), cd.clone());
                s2[a] = fresh;
                d2[b] = fresh;
                if let Some(pi) = search_iso(src, dst, s2, d2) {
                    return Some(pi);
                }
            }
            None
        }
    }
}

fn factorial(k: usize) -> BigUint {
    (1..=k as u64).fold(BigUint::one(), |acc, i| acc * i)
}

/// Groups edge indices by endpoint pair and type.
fn edge_classes(c: &ColoredGraph, sigma: &[Color]) -> BTreeMap<((usize, usize), EdgeType), Vec<usize>> {
    let mut out: BTreeMap<_, Vec<usize>> = BTreeMap::new();
    for (i, e) in c.reduced.graph.edges().iter().enumerate() {
        out.entry(((e.u.min(e.v), e.u.max(e.v)), c.edge_type(i, sigma)))
            .or_default()
            .push(i);
    }
    out
}

fn lift(c: &ColoredGraph, pi: Vec<usize>, sigma: Vec<Color>) -> Automorphism {
    let identity: Vec<Color> = (0..c.palette_size).collect();
    let targets = edge_classes(c, &identity);
    let mut edges = vec![usize::MAX; c.reduced.graph.edge_count()];
    for (((u, v), ty), list) in edge_classes(c, &identity) {
        let (pu, pv) = (pi[u], pi[v]);
        let key = ((pu.min(pv), pu.max(pv)), (sigma[ty.0 as usize], {
            let mut l: Vec<Color> = ty.1.iter().map(|&x| sigma[x as usize]).collect();
            l.sort_unstable();
            l
        }));
        let image = &targets[&key];
        for (&e, &f) in list.iter().zip(image) {
            edges[e] = f;
        }
    }
    Automorphism {
        vertices: pi,
        edges,
        colors: sigma,
    }
}

/// The full group of color-compatible automorphisms of `c`.
pub fn automorphisms(c: &ColoredGraph) -> Result<AutGroup, AutError> {
    if c.reduced.is_circle {
        return Err(AutError::CircleInput);
    }
    let n = c.reduced.graph.vertex_count();
    let identity: Vec<Color> = (0..c.palette_size).collect();
    let mut interner = BTreeMap::new();
    let plain = View::from_colored(c, &identity, &mut interner);

    let mut generators = Vec::new();
    let mut order = BigUint::one();

    let mut base: Vec<usize> = Vec::new();
    loop {
        let mut cs = plain.vcolor.clone();
        let top = cs.iter().max().copied().unwrap_or(0) + 1;
        for (k, &b) in base.iter().enumerate() {
            cs[b] = top + k as u32;
        }
        let cs = refine(&[&plain], vec![cs]).pop().unwrap();
        let Some((color, v)) = target_cell(&cs) else {
            break;
        };
        let mut uf = UnionFind::new(n);
        for w in (0..n).filter(|&w| cs[w] == color && w != v) {
            if uf.same(v, w) {
                continue;
            }
            let fixed: Vec<(usize, usize)> =
                base.iter().map(|&b| (b, b)).chain([(v, w)]).collect();
            if let Some(pi) = find_iso(&plain, &plain, &fixed) {
                for (x, &y) in pi.iter().enumerate() {
                    uf.union(x, y);
                }
                generators.push(lift(c, pi, identity.clone()));
            }
        }
        let orbit = (0..n).filter(|&w| cs[w] == color && uf.same(v, w)).count();
        order *= orbit as u64;
        base.push(v);
    }

    let mut realizable = 1u64;
    for sigma in c.palette_elements().into_iter().skip(1) {
        let shifted = View::from_colored(c, &sigma, &mut interner);
        if let Some(pi) = find_iso(&shifted, &plain, &[]) {
            realizable += 1;
            generators.push(lift(c, pi, sigma));
        }
    }
    order *= realizable;

    for list in edge_classes(c, &identity).values() {
        order *= factorial(list.len());
        if list.len() > 1 {
            let mut swap: Vec<usize> = (0..c.reduced.graph.edge_count()).collect();
            swap.swap(list[0], list[1]);
            let mut cycle: Vec<usize> = (0..c.reduced.graph.edge_count()).collect();
            for (k, &e) in list.iter().enumerate() {
                cycle[e] = list[(k + 1) % list.len()];
            }
            for edges in [swap, cycle] {
                generators.push(Automorphism {
                    vertices: (0..n).collect(),
                    edges,
                    colors: identity.clone(),
                });
            }
        }
    }
    generators.dedup();
    Ok(AutGroup { generators, order })
}

pub fn vertex_orbits(a: &AutGroup, c: &ColoredGraph) -> Vec<Vec<usize>> {
    let mut uf = UnionFind::new(c.reduced.graph.vertex_count());
    for g in &a.generators {
        for (x, &y) in g.vertices.iter().enumerate() {
            uf.union(x, y);
        }
    }
    uf.blocks()
}

pub fn edge_orbits(a: &AutGroup, c: &ColoredGraph) -> Vec<Vec<usize>> {
    let mut uf = UnionFind::new(c.reduced.graph.edge_count());
    for g in &a.generators {
        for (x, &y) in g.edges.iter().enumerate() {
            uf.union(x, y);
        }
    }
    uf.blocks()
}

/// Orbits of decoration indices (positions in `c.decorations()`).
pub fn decoration_orbits(a: &AutGroup, c: &ColoredGraph) -> Vec<Vec<usize>> {
    let index: HashMap<(usize, Color), usize> = c
        .decorations
        .iter()
        .enumerate()
        .map(|(i, d)| ((d.edge, d.label), i))
        .collect();
    let mut uf = UnionFind::new(c.decorations.len());
    for g in &a.generators {
        for (i, d) in c.decorations.iter().enumerate() {
            let j = index[&(g.edges[d.edge], g.colors[d.label as usize])];
            uf.union(i, j);
        }
    }
    uf.blocks()
}

/// Canonical code of an uncolored multigraph given by pair multiplicities.
///
/// Explores the whole individualization-refinement tree and keeps the
/// smallest multiplicity matrix seen at a discrete leaf.
pub(crate) fn canonical_code(n: usize, mult: &BTreeMap<(usize, usize), u32>) -> Vec<u32> {
    let view = View::from_multiplicities(n, mult);
    let mut best: Option<Vec<u32>> = None;
    canon_walk(&view, vec![0; n], &mut best);
    best.expect("a discrete leaf always exists")
}

fn canon_walk(view: &View, cs: Vec<u32>, best: &mut Option<Vec<u32>>) {
    let cs = refine(&[view], vec![cs]).pop().unwrap();
    match target_cell(&cs) {
        None => {
            let mut order: Vec<usize> = (0..view.n).collect();
            order.sort_by_key(|&x| cs[x]);
            let mut code = vec![view.n as u32];
            for i in 0..view.n {
                for j in i..view.n {
                    code.push(view.label(order[i], order[j]));
                }
            }
            if best.as_ref().is_none_or(|b| code < *b) {
                *best = Some(code);
            }
        }
        Some((color, _)) => {
            let fresh = cs.iter().max().copied().unwrap() + 1;
            let mut explored: Vec<usize> = Vec::new();
            for x in (0..view.n).filter(|&x| cs[x] == color) {
                // swapping twins is an automorphism, so their subtrees agree
                if explored.iter().any(|&y| view.twins(x, y)) {
                    continue;
                }
                explored.push(x);
                let mut next = cs.clone();
                next[x] = fresh;
                canon_walk(view, next, best);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{make_family, parse_graph, reduce, FamilyId};

    fn plain(id: FamilyId) -> ColoredGraph {
        ColoredGraph::trivial(reduce(&make_family(id).unwrap(), &BTreeSet::new()))
    }

    fn theta() -> ColoredGraph {
        let g = parse_graph(
            r#"{"vertices":["a","b"],"edges":[["e1","a","b"],["e2","a","b"],["e3","a","b"]]}"#,
        )
        .unwrap();
        ColoredGraph::trivial(reduce(&g, &BTreeSet::new()))
    }

    #[test]
    fn orders() {
        let s3 = plain(FamilyId::Star(3));
        assert_eq!(automorphisms(&s3).unwrap().order, BigUint::from(6u32));
        let i = plain(FamilyId::Interval);
        assert_eq!(automorphisms(&i).unwrap().order, BigUint::from(2u32));
        let x4 = plain(FamilyId::Xn(4));
        assert_eq!(automorphisms(&x4).unwrap().order, BigUint::from(144u32));
        assert_eq!(automorphisms(&theta()).unwrap().order, BigUint::from(12u32));
    }

    #[test]
    fn orbits() {
        let s3 = plain(FamilyId::Star(3));
        let a = automorphisms(&s3).unwrap();
        assert_eq!(vertex_orbits(&a, &s3), vec![vec![0], vec![1, 2, 3]]);
        assert_eq!(edge_orbits(&a, &s3), vec![vec![0, 1, 2]]);

        let i = plain(FamilyId::Interval);
        let a = automorphisms(&i).unwrap();
        assert_eq!(vertex_orbits(&a, &i), vec![vec![0, 1]]);

        let t = theta();
        let a = automorphisms(&t).unwrap();
        assert_eq!(vertex_orbits(&a, &t), vec![vec![0, 1]]);
        assert_eq!(edge_orbits(&a, &t), vec![vec![0, 1, 2]]);

        let x4 = plain(FamilyId::Xn(4));
        let a = automorphisms(&x4).unwrap();
        let sizes: Vec<usize> = edge_orbits(&a, &x4).iter().map(Vec::len).collect();
        assert_eq!(sizes, vec![1, 3, 4]);
    }

    #[test]
    fn generators_are_valid() {
        for id in [FamilyId::Xn(5), FamilyId::Wn(4), FamilyId::Zn(3), FamilyId::Lollipop] {
            let c = plain(id);
            let a = automorphisms(&c).unwrap();
            assert!(a.generators.iter().all(|g| is_automorphism(&c, g)), "{id}");
        }
    }

    #[test]
    fn circle_rejected() {
        let c = plain(FamilyId::Circle);
        assert_eq!(automorphisms(&c), Err(AutError::CircleInput));
    }

    #[test]
    fn palette_flip_realized() {
        // interval subdivided twice, marks colored 1 and 2, flip swaps them
        let g = parse_graph(
            r#"{"vertices":["a","x","y","b"],"edges":[["s1","a","x"],["s2","x","y"],["s3","y","b"]]}"#,
        )
        .unwrap();
        let r = ReducedGraph::marked(g);
        let flip = vec![0, 2, 1, 4, 3, 5];
        let c = ColoredGraph::new(r, vec![0, 1, 2, 0], vec![3, 5, 4], 6, vec![flip], vec![])
            .unwrap();
        let a = automorphisms(&c).unwrap();
        assert_eq!(a.order, BigUint::from(2u32));
        assert_eq!(vertex_orbits(&a, &c), vec![vec![0, 3], vec![1, 2]]);
        let a2 = automorphisms(&c.without_symmetry()).unwrap();
        assert_eq!(a2.order, BigUint::one());
    }

    #[test]
    fn palette_validation() {
        let r = reduce(&make_family(FamilyId::Interval).unwrap(), &BTreeSet::new());
        assert!(matches!(
            ColoredGraph::new(r.clone(), vec![0, 0], vec![0], 2, vec![vec![0, 0]], vec![]),
            Err(AutError::InconsistentPalette(_))
        ));
        assert!(matches!(
            ColoredGraph::new(r.clone(), vec![0, 3], vec![0], 2, vec![], vec![]),
            Err(AutError::InvalidColoring(_))
        ));
        let d = Decoration { edge: 0, label: 1 };
        assert!(matches!(
            ColoredGraph::new(r, vec![0, 0], vec![0], 2, vec![], vec![d, d]),
            Err(AutError::InvalidColoring(_))
        ));
    }

    #[test]
    fn canonical_code_is_invariant() {
        let a: BTreeMap<(usize, usize), u32> = [((0, 1), 1), ((1, 2), 2), ((2, 2), 1)].into();
        let b: BTreeMap<(usize, usize), u32> = [((1, 2), 1), ((0, 2), 2), ((0, 0), 1)].into();
        let c: BTreeMap<(usize, usize), u32> = [((0, 1), 2), ((1, 2), 1), ((2, 2), 1)].into();
        assert_eq!(canonical_code(3, &a), canonical_code(3, &b));
        assert_ne!(canonical_code(3, &a), canonical_code(3, &c));
    }
}
