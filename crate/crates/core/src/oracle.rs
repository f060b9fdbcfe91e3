//! Brute-force validators: exhaustive chain search on the closure lattice,
//! exhaustive automorphism enumeration, and small-multigraph witness search.
//!
//! The chain search works on the symbolic cell lattice rather than on a
//! metric discretization of the edges. Subdividing an edge into finitely
//! many atoms cannot model the transitivity of homeomorphisms inside an
//! open edge (an order-preserving finite map fixing the endpoints is the
//! identity), so cells are the right finite shadow of the space.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigUint;
use serde::Serialize;
use thiserror::Error;

use crate::aut::{canonical_code, AutError, AutGroup, Automorphism, Color, ColoredGraph};
use crate::closure::{base_height, closure_family, height_of, Atom, ClosureFamily, Height};
use crate::graph::{Edge, TopoGraph};
use crate::report::{published_claim, PublishedClaim};
use crate::scheme::{apply_scheme, closed_form, scheme_height, Scheme, SchemeError};

/// Largest family the chain search accepts.
pub const MAX_CHAIN_CELLS: usize = 18;
pub const MAX_SEARCH_VERTICES: usize = 6;
pub const MAX_SEARCH_EDGES: usize = 8;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("family has {cells} cells; exhaustive chain search is limited to {limit}")]
    TooManyCells { cells: usize, limit: usize },
    #[error("enumeration needs up to {needed} candidates, above the limit {limit}")]
    EnumerationBound { needed: BigUint, limit: u64 },
    #[error("search bounds vmax={vmax}, emax={emax} exceed the exhaustive limits")]
    SearchBounds { vmax: usize, emax: usize },
    #[error("scheme has infinite height; there is no finite chain to search")]
    InfiniteHeight,
    #[error(transparent)]
    Scheme(#[from] SchemeError),
    #[error(transparent)]
    Aut(#[from] AutError),
}

/// A strictly increasing chain of closed unions of cells, ending at the whole
/// space. Sets are ascending cell indices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChainCertificate {
    pub sets: Vec<Vec<usize>>,
}

impl ChainCertificate {
    pub fn length(&self) -> usize {
        self.sets.len().saturating_sub(1)
    }
}

/// Longest chain of nonempty closed invariant unions of cells, by dynamic
/// programming over subsets.
pub fn chain_height(f: &ClosureFamily) -> Result<(Height, ChainCertificate), OracleError> {
    let n = f.cells.len();
    if n > MAX_CHAIN_CELLS {
        return Err(OracleError::TooManyCells {
            cells: n,
            limit: MAX_CHAIN_CELLS,
        });
    }
    if n == 0 {
        return Ok((Height::Finite(0), ChainCertificate { sets: vec![] }));
    }
    let owner: BTreeMap<Atom, usize> = f
        .cells
        .iter()
        .enumerate()
        .flat_map(|(i, c)| c.members.iter().map(move |&a| (a, i)))
        .collect();
    // cells whose points lie in the closure of cell i
    let req: Vec<u32> = f
        .cells
        .iter()
        .map(|c| c.hull.iter().fold(0u32, |m, a| m | 1 << owner[a]))
        .collect();
    // smallest closed set containing cell i
    let cl: Vec<u32> = (0..n)
        .map(|i| {
            let mut s = 1u32 << i;
            loop {
                let next = (0..n).filter(|&j| s >> j & 1 == 1).fold(s, |m, j| m | req[j]);
                if next == s {
                    break s;
                }
                s = next;
            }
        })
        .collect();
    let full: u32 = if n == 32 { u32::MAX } else { (1 << n) - 1 };
    let closed = |s: u32| (0..n).all(|j| s >> j & 1 == 0 || req[j] & !s == 0);

    // longest[s]: longest chain from closed s up to the full set
    let mut longest: Vec<i32> = vec![-1; full as usize + 1];
    let mut step: Vec<u32> = vec![0; full as usize + 1];
    longest[full as usize] = 0;
    for s in (1..full).rev() {
        if !closed(s) {
            continue;
        }
        for i in (0..n).filter(|&i| s >> i & 1 == 0) {
            let t = s | cl[i];
            if longest[t as usize] >= 0 && longest[t as usize] + 1 > longest[s as usize] {
                longest[s as usize] = longest[t as usize] + 1;
                step[s as usize] = t;
            }
        }
    }
    let start = (0..n)
        .map(|i| cl[i])
        .max_by_key(|&s| (longest[s as usize], std::cmp::Reverse(s)))
        .unwrap();
    let mut sets = Vec::new();
    let mut s = start;
    loop {
        sets.push((0..n).filter(|&j| s >> j & 1 == 1).collect());
        if s == full {
            break;
        }
        s = step[s as usize];
    }
    let len = longest[start as usize] as u64;
    Ok((Height::Finite(len), ChainCertificate { sets }))
}

/// Checks a chain certificate against the family's point sets directly.
pub fn verify_chain(f: &ClosureFamily, cert: &ChainCertificate) -> bool {
    let points = |set: &[usize]| -> Option<BTreeSet<Atom>> {
        let mut out = BTreeSet::new();
        for &i in set {
            out.extend(f.cells.get(i)?.members.iter().copied());
        }
        Some(out)
    };
    let all: BTreeSet<Atom> = f.cells.iter().flat_map(|c| c.members.iter().copied()).collect();
    let mut prev: Option<BTreeSet<Atom>> = None;
    for set in &cert.sets {
        let Some(y) = points(set) else { return false };
        if y.is_empty() {
            return false;
        }
        if !set.iter().all(|&i| f.cells[i].hull.is_subset(&y)) {
            return false;
        }
        if let Some(p) = &prev {
            if !(p.is_subset(&y) && p.len() < y.len()) {
                return false;
            }
        }
        prev = Some(y);
    }
    prev.as_ref() == Some(&all)
}

/// Pair multiplicities `(min, max) -> count` of a multigraph.
pub(crate) fn multiplicities(g: &TopoGraph) -> BTreeMap<(usize, usize), u32> {
    let mut m = BTreeMap::new();
    for e in g.edges() {
        *m.entry((e.u.min(e.v), e.u.max(e.v))).or_insert(0) += 1;
    }
    m
}

fn factorial(k: usize) -> BigUint {
    (1..=k as u64).fold(BigUint::from(1u32), |acc, x| acc * x)
}

fn edge_kind(c: &ColoredGraph, e: usize, sigma: &[Color]) -> (Color, Vec<Color>) {
    let mut labels: Vec<Color> = c
        .decorations()
        .iter()
        .filter(|d| d.edge == e)
        .map(|d| sigma[d.label as usize])
        .collect();
    labels.sort_unstable();
    (sigma[c.edge_color()[e] as usize], labels)
}

/// Multiset of edge kinds between two vertices, after applying `sigma`.
fn bundle(c: &ColoredGraph, a: usize, b: usize, sigma: &[Color]) -> Vec<(Color, Vec<Color>)> {
    let mut out: Vec<_> = c
        .reduced()
        .graph
        .edges()
        .iter()
        .enumerate()
        .filter(|(_, e)| (e.u == a && e.v == b) || (e.u == b && e.v == a))
        .map(|(i, _)| edge_kind(c, i, sigma))
        .collect();
    out.sort();
    out
}

/// Every automorphism of `c`, by direct enumeration of vertex bijections,
/// palette symmetries and edge matchings.
pub fn enumerate_automorphisms(c: &ColoredGraph, limit: u64) -> Result<AutGroup, OracleError> {
    if c.reduced().is_circle {
        return Err(AutError::CircleInput.into());
    }
    let g = &c.reduced().graph;
    let n = g.vertex_count();
    let palette = c.palette_elements();
    let needed = factorial(n)
        * multiplicities(g)
            .values()
            .fold(BigUint::from(1u32), |acc, &k| acc * factorial(k as usize))
        * BigUint::from(palette.len());
    if needed > BigUint::from(limit) {
        return Err(OracleError::EnumerationBound { needed, limit });
    }
    let identity: Vec<Color> = (0..c.palette_size()).collect();
    let mut elements = Vec::new();
    for sigma in &palette {
        let mut pi = vec![usize::MAX; n];
        let mut used = vec![false; n];
        assign(c, sigma, &identity, 0, &mut pi, &mut used, &mut elements);
    }
    let order = BigUint::from(elements.len());
    Ok(AutGroup {
        generators: elements,
        order,
    })
}

fn assign(
    c: &ColoredGraph,
    sigma: &[Color],
    identity: &[Color],
    i: usize,
    pi: &mut Vec<usize>,
    used: &mut Vec<bool>,
    out: &mut Vec<Automorphism>,
) {
    let g = &c.reduced().graph;
    let n = g.vertex_count();
    if i == n {
        expand_edges(c, sigma, identity, pi, out);
        return;
    }
    for w in 0..n {
        if used[w] || sigma[c.vertex_color()[i] as usize] != c.vertex_color()[w] {
            continue;
        }
        pi[i] = w;
        let fits = (0..=i).all(|j| bundle(c, i, j, sigma) == bundle(c, w, pi[j], identity));
        if fits {
            used[w] = true;
            assign(c, sigma, identity, i + 1, pi, used, out);
            used[w] = false;
        }
        pi[i] = usize::MAX;
    }
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(k - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, k - 1);
            out.push(q);
        }
    }
    out
}

fn expand_edges(
    c: &ColoredGraph,
    sigma: &[Color],
    identity: &[Color],
    pi: &[usize],
    out: &mut Vec<Automorphism>,
) {
    let edges = c.reduced().graph.edges();
    let mut classes: BTreeMap<_, Vec<usize>> = BTreeMap::new();
    for (i, e) in edges.iter().enumerate() {
        classes
            .entry(((e.u.min(e.v), e.u.max(e.v)), edge_kind(c, i, identity)))
            .or_default()
            .push(i);
    }
    // each source class maps onto a target class of equal size
    let mut plans: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
    for (((a, b), _), list) in &classes {
        let (pa, pb) = (pi[*a], pi[*b]);
        let kind = edge_kind(c, list[0], sigma);
        let target = &classes[&((pa.min(pb), pa.max(pb)), kind)];
        plans.push((list.clone(), target.clone()));
    }
    let mut partial = vec![usize::MAX; edges.len()];
    choose(&plans, 0, &mut partial, &mut |edge_map| {
        out.push(Automorphism {
            vertices: pi.to_vec(),
            edges: edge_map.to_vec(),
            colors: sigma.to_vec(),
        })
    });
}

fn choose(
    plans: &[(Vec<usize>, Vec<usize>)],
    k: usize,
    partial: &mut Vec<usize>,
    emit: &mut dyn FnMut(&[usize]),
) {
    let Some((src, dst)) = plans.get(k) else {
        emit(partial);
        return;
    };
    for p in permutations(src.len()) {
        for (x, &y) in p.iter().enumerate() {
            partial[src[x]] = dst[y];
        }
        choose(plans, k + 1, partial, emit);
    }
}

/// Partition of `0..n` into orbits of an explicit element list.
pub fn orbits_of(n: usize, images: impl Iterator<Item = Vec<usize>>) -> Vec<Vec<usize>> {
    let images: Vec<Vec<usize>> = images.collect();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for x in 0..n {
        if seen[x] {
            continue;
        }
        let orbit: BTreeSet<usize> = images.iter().map(|img| img[x]).chain([x]).collect();
        for &y in &orbit {
            seen[y] = true;
        }
        out.push(orbit.into_iter().collect());
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CrossCheck {
    pub engine: Height,
    #[serde(rename = "paperFormula")]
    pub closed_form: Option<Height>,
    pub chain_search: Height,
    /// Engine, closed form (where known) and chain search coincide.
    pub agree: bool,
    pub certificate: ChainCertificate,
    /// Published base height of a matching named graph, compared with the engine.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub published_claim: Option<PublishedClaim>,
}

/// Recomputes the height of `s` on `g` by the orbit engine, the closed
/// form, and the exhaustive chain search.
pub fn cross_check(g: &TopoGraph, s: &Scheme) -> Result<CrossCheck, OracleError> {
    let engine = scheme_height(g, s)?;
    if engine == Height::Infinite {
        return Err(OracleError::InfiniteHeight);
    }
    let family = closure_family(&apply_scheme(g, s)?);
    let (chain_search, certificate) = chain_height(&family)?;
    let closed_form = closed_form(g, s);
    let agree = engine == chain_search
        && height_of(&family) == engine
        && verify_chain(&family, &certificate)
        && closed_form.is_none_or(|p| p == engine);
    let published_claim = match s {
        Scheme::FullHomeo => published_claim(g, engine),
        _ => None,
    };
    Ok(CrossCheck {
        engine,
        closed_form,
        chain_search,
        agree,
        certificate,
        published_claim,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SearchResult {
    pub target: u64,
    pub witness: Option<TopoGraph>,
    pub vmax: usize,
    pub emax: usize,
    /// Isomorphism classes whose base height was evaluated.
    pub classes_examined: usize,
    /// Isomorphism classes generated, including unexamined ones.
    pub classes_generated: usize,
}

type Multigraph = (usize, BTreeMap<(usize, usize), u32>);

fn to_topo((n, mult): &Multigraph) -> TopoGraph {
    let mut edges = Vec::new();
    for (&(u, v), &k) in mult {
        for _ in 0..k {
            edges.push(Edge {
                id: format!("e{}", edges.len()),
                u,
                v,
            });
        }
    }
    TopoGraph::from_parts((0..*n).map(|i| i.to_string()).collect(), edges)
        .expect("augmentation keeps graphs connected")
}

/// Connected multigraphs with one more edge, up to isomorphism.
fn augment(level: &[Multigraph], vmax: usize) -> Vec<Multigraph> {
    let mut next: BTreeMap<Vec<u32>, Multigraph> = BTreeMap::new();
    for (n, mult) in level {
        let mut add = |m: Multigraph| {
            let code = canonical_code(m.0, &m.1);
            next.entry(code).or_insert(m);
        };
        for u in 0..*n {
            for v in u..*n {
                let mut m = mult.clone();
                *m.entry((u, v)).or_insert(0) += 1;
                add((*n, m));
            }
            if *n < vmax {
                let mut m = mult.clone();
                m.insert((u, *n), 1);
                add((n + 1, m));
            }
        }
    }
    next.into_values().collect()
}

/// Every connected multigraph with at most `vmax` vertices and between one
/// and `emax` edges, one per isomorphism class, grouped by edge count.
pub fn multigraph_classes(vmax: usize, emax: usize) -> Vec<Vec<TopoGraph>> {
    let mut level: Vec<Multigraph> = vec![(1, BTreeMap::new())];
    let mut out = Vec::new();
    for _ in 1..=emax {
        level = augment(&level, vmax.max(1));
        out.push(level.iter().map(to_topo).collect());
    }
    out
}

/// First connected multigraph (fewest edges, simple before non-simple,
/// fewest vertices, then canonical code) whose full homeomorphism group has
/// height `p`.
pub fn search_min_height(p: u64, vmax: usize, emax: usize) -> Result<SearchResult, OracleError> {
    if vmax > MAX_SEARCH_VERTICES || emax > MAX_SEARCH_EDGES || vmax == 0 {
        return Err(OracleError::SearchBounds { vmax, emax });
    }
    let mut result = SearchResult {
        target: p,
        witness: None,
        vmax,
        emax,
        classes_examined: 0,
        classes_generated: 0,
    };
    let mut level: Vec<Multigraph> = vec![(1, BTreeMap::new())];
    for _ in 1..=emax {
        level = augment(&level, vmax);
        result.classes_generated += level.len();
        let mut ordered: Vec<(bool, usize, Vec<u32>, &Multigraph)> = level
            .iter()
            .map(|m| {
                let simple = m.1.iter().all(|(&(u, v), &k)| u != v && k == 1);
                (!simple, m.0, canonical_code(m.0, &m.1), m)
            })
            .collect();
        ordered.sort();
        for (_, _, _, m) in ordered {
            result.classes_examined += 1;
            let g = to_topo(m);
            if base_height(&g) == Height::Finite(p) {
                result.witness = Some(g);
                return Ok(result);
            }
        }
    }
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::aut::{automorphisms, edge_orbits, vertex_orbits};
    use crate::closure::base_family;
    use crate::graph::{make_family, parse_graph, reduce, FamilyId};

    fn fam(id: FamilyId) -> TopoGraph {
        make_family(id).unwrap()
    }

    fn plain(g: &TopoGraph) -> ColoredGraph {
        ColoredGraph::trivial(reduce(g, &BTreeSet::new()))
    }

    fn theta() -> TopoGraph {
        parse_graph(r#"{"vertices":["a","b"],"edges":[["e1","a","b"],["e2","a","b"],["e3","a","b"]]}"#)
            .unwrap()
    }

    #[test]
    fn star_chain() {
        let f = base_family(&fam(FamilyId::Star(3)));
        let (h, cert) = chain_height(&f).unwrap();
        assert_eq!(h, Height::Finite(2));
        assert_eq!(cert.sets, vec![vec![0], vec![0, 1], vec![0, 1, 2]]);
        assert!(verify_chain(&f, &cert));
    }

    #[test]
    fn circle_and_xn_chain() {
        let f = base_family(&fam(FamilyId::Circle));
        let (h, cert) = chain_height(&f).unwrap();
        assert_eq!(h, Height::Finite(0));
        assert_eq!(cert.sets.len(), 1);
        let f = base_family(&fam(FamilyId::Xn(4)));
        let (h, cert) = chain_height(&f).unwrap();
        assert_eq!(h, Height::Finite(6));
        assert_eq!(cert.sets.len(), 7);
        assert!(verify_chain(&f, &cert));
    }

    #[test]
    fn verifier_rejects_bad_chains() {
        let f = base_family(&fam(FamilyId::Star(3)));
        let bad = |sets: Vec<Vec<usize>>| !verify_chain(&f, &ChainCertificate { sets });
        // open arms are not closed without their endpoints
        assert!(bad(vec![vec![2], vec![0, 1, 2]]));
        assert!(!bad(vec![vec![1], vec![0, 1, 2]]));
        assert!(bad(vec![vec![0], vec![0], vec![0, 1, 2]]));
        assert!(bad(vec![vec![0], vec![0, 1]]));
        assert!(bad(vec![vec![], vec![0, 1, 2]]));
        assert!(bad(vec![vec![0], vec![0, 7]]));
    }

    #[test]
    fn too_many_cells() {
        let f = base_family(&fam(FamilyId::Wn(6)));
        assert_eq!(f.len(), 17);
        assert!(chain_height(&f).is_ok());
        let f = base_family(&fam(FamilyId::Xn(8)));
        assert!(matches!(chain_height(&f), Err(OracleError::TooManyCells { .. })));
    }

    #[test]
    fn enumeration_matches_engine() {
        for g in [
            fam(FamilyId::Interval),
            fam(FamilyId::Star(4)),
            theta(),
            fam(FamilyId::Lollipop),
            fam(FamilyId::Xn(4)),
        ] {
            let c = plain(&g);
            let all = enumerate_automorphisms(&c, 10_000_000).unwrap();
            let engine = automorphisms(&c).unwrap();
            assert_eq!(all.order, engine.order);
            let n = c.reduced().graph.vertex_count();
            let m = c.reduced().graph.edge_count();
            assert_eq!(
                orbits_of(n, all.generators.iter().map(|a| a.vertices.clone())),
                vertex_orbits(&engine, &c)
            );
            assert_eq!(
                orbits_of(m, all.generators.iter().map(|a| a.edges.clone())),
                edge_orbits(&engine, &c)
            );
        }
        let c = plain(&fam(FamilyId::Star(4)));
        assert_eq!(enumerate_automorphisms(&c, 10_000).unwrap().order, BigUint::from(24u32));
        assert_eq!(
            enumerate_automorphisms(&plain(&theta()), 100).unwrap().order,
            BigUint::from(12u32)
        );
        assert!(matches!(
            enumerate_automorphisms(&c, 10),
            Err(OracleError::EnumerationBound { .. })
        ));
    }

    #[test]
    fn cross_checks() {
        let x = cross_check(&fam(FamilyId::Interval), &Scheme::FlipMarks { edge_orbit: None, m: 3 })
            .unwrap();
        assert_eq!((x.engine, x.chain_search), (Height::Finite(3), Height::Finite(3)));
        assert!(x.agree);
        let pinned = Scheme::PinnedMarks { edge: None, m: 2 };
        let x = cross_check(&fam(FamilyId::Star(5)), &pinned).unwrap();
        assert_eq!(x.closed_form, Some(Height::Finite(6)));
        assert!(x.agree && x.engine == Height::Finite(6));

        let x = cross_check(&fam(FamilyId::Lollipop), &Scheme::FullHomeo).unwrap();
        assert_eq!((x.engine, x.chain_search), (Height::Finite(3), Height::Finite(3)));
        assert!(x.agree);
        let claim = x.published_claim.unwrap();
        assert_eq!(claim.value, 4);
        assert!(!claim.matches);

        assert_eq!(
            cross_check(&fam(FamilyId::Circle), &Scheme::Trivial),
            Err(OracleError::InfiniteHeight)
        );
    }

    #[test]
    fn search_small_witnesses() {
        let w = |p| search_min_height(p, 4, 4).unwrap().witness.unwrap();
        let circle = w(0);
        assert_eq!((circle.vertex_count(), circle.edge_count()), (1, 1));
        let k2 = w(1);
        assert_eq!((k2.vertex_count(), k2.edge_count()), (2, 1));
        let star = w(2);
        assert_eq!((star.vertex_count(), star.edge_count()), (4, 3));
        assert!(star.is_simple());
        let lollipop = w(3);
        assert_eq!((lollipop.vertex_count(), lollipop.edge_count()), (2, 2));
        assert_eq!(base_family(&lollipop).len(), 4);
        assert!(search_min_height(2, 7, 4).is_err());
    }

    #[test]
    fn class_counts() {
        // connected multigraphs with loops: 2 with one edge, 4 with two, 11 with three
        let counts: Vec<usize> = multigraph_classes(6, 3).iter().map(Vec::len).collect();
        assert_eq!(counts, vec![2, 4, 11]);
    }

    #[test]
    fn search_is_deterministic() {
        let a = search_min_height(4, 5, 5).unwrap();
        let b = search_min_height(4, 5, 5).unwrap();
        assert_eq!(a, b);
    }
}
