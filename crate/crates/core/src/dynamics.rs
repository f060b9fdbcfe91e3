//! Exact piecewise-linear homeomorphisms of [0,1] and certificates that the
//! cyclic group they generate has infinite height.
//!
//! For increasing `f` without a fixed interval, a gap between consecutive
//! fixed points is a fundamental domain: each orbit in it is strictly
//! monotone and meets `[x1, f(x1))` exactly once. Points chosen inside that
//! half-open window therefore have pairwise distinct orbit closures. A
//! decreasing `f` is handled through `f∘f` on the half beyond its fixed point.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DynamicsError {
    #[error("invalid rational `{0}`")]
    Rational(String),
    #[error("not a homeomorphism of [0,1]: {0}")]
    NotHomeomorphism(String),
    #[error("malformed certificate: {0}")]
    MalformedCertificate(String),
    #[error("invalid parameter: {0}")]
    BadParameter(String),
}

pub type Q = BigRational;

fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn parse_rational(s: &str) -> Result<Q, DynamicsError> {
    Q::from_str(s.trim()).map_err(|_| DynamicsError::Rational(s.to_string()))
}

/// A PL homeomorphism of [0,1] given by its breakpoints `(t_i, f(t_i))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PLHomeo {
    points: Vec<(Q, Q)>,
}

impl PLHomeo {
    pub fn new(points: Vec<(Q, Q)>) -> Result<Self, DynamicsError> {
        let bad = |m: &str| Err(DynamicsError::NotHomeomorphism(m.to_string()));
        if points.len() < 2 {
            return bad("need at least two breakpoints");
        }
        let (first, last) = (&points[0], &points[points.len() - 1]);
        if !first.0.is_zero() || last.0 != q(1) {
            return bad("breakpoints must start at 0 and end at 1");
        }
        if !points.windows(2).all(|w| w[0].0 < w[1].0) {
            return bad("breakpoints must be strictly increasing");
        }
        let increasing = first.1.is_zero() && last.1 == q(1);
        let decreasing = first.1 == q(1) && last.1.is_zero();
        if !increasing && !decreasing {
            return bad("endpoints must map onto {0, 1}");
        }
        let monotone = points.windows(2).all(|w| {
            if increasing {
                w[0].1 < w[1].1
            } else {
                w[0].1 > w[1].1
            }
        });
        if !monotone {
            return bad("values must be strictly monotone");
        }
        Ok(PLHomeo { points })
    }

    /// Parses `[("0","0"), ("1/2","1/4"), ("1","1")]`-style pairs.
    pub fn from_strs<S: AsRef<str>>(pairs: &[(S, S)]) -> Result<Self, DynamicsError> {
        let points = pairs
            .iter()
            .map(|(a, b)| Ok((parse_rational(a.as_ref())?, parse_rational(b.as_ref())?)))
            .collect::<Result<_, DynamicsError>>()?;
        PLHomeo::new(points)
    }

    pub fn identity() -> Self {
        PLHomeo {
            points: vec![(q(0), q(0)), (q(1), q(1))],
        }
    }

    pub fn points(&self) -> &[(Q, Q)] {
        &self.points
    }

    pub fn is_increasing(&self) -> bool {
        self.points[0].1.is_zero()
    }

    fn interpolate(pts: &[(Q, Q)], x: &Q) -> Q {
        let i = pts
            .windows(2)
            .position(|w| *x <= w[1].0)
            .unwrap_or(pts.len() - 2);
        let ((x0, y0), (x1, y1)) = (&pts[i], &pts[i + 1]);
        y0 + (y1 - y0) * (x - x0) / (x1 - x0)
    }

    /// `f(x)` for `x` in [0,1].
    pub fn eval(&self, x: &Q) -> Q {
        Self::interpolate(&self.points, x)
    }

    pub fn inverse(&self) -> Self {
        let mut points: Vec<(Q, Q)> = self.points.iter().map(|(a, b)| (b.clone(), a.clone())).collect();
        points.sort();
        PLHomeo { points }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &PLHomeo) -> Self {
        let inv = other.inverse();
        let mut ts: Vec<Q> = other.points.iter().map(|p| p.0.clone()).collect();
        ts.extend(self.points.iter().map(|p| inv.eval(&p.0)));
        ts.sort();
        ts.dedup();
        let points = ts
            .into_iter()
            .map(|t| {
                let y = self.eval(&other.eval(&t));
                (t, y)
            })
            .collect();
        PLHomeo { points }
    }
}

impl fmt::Display for PLHomeo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.points.iter().map(|(a, b)| format!("({a}, {b})")).collect();
        write!(f, "{}", parts.join(" "))
    }
}

#[derive(Serialize, Deserialize)]
struct PLWire {
    points: Vec<[String; 2]>,
}

impl Serialize for PLHomeo {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        PLWire {
            points: self.points.iter().map(|(a, b)| [a.to_string(), b.to_string()]).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for PLHomeo {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let wire = PLWire::deserialize(d)?;
        let pairs: Vec<(String, String)> = wire.points.into_iter().map(|[a, b]| (a, b)).collect();
        PLHomeo::from_strs(&pairs).map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FixedSet {
    Point(Q),
    Interval(Q, Q),
}

impl FixedSet {
    fn start(&self) -> &Q {
        match self {
            FixedSet::Point(a) | FixedSet::Interval(a, _) => a,
        }
    }

    fn end(&self) -> &Q {
        match self {
            FixedSet::Point(a) | FixedSet::Interval(_, a) => a,
        }
    }

    pub fn contains(&self, x: &Q) -> bool {
        self.start() <= x && x <= self.end()
    }
}

impl fmt::Display for FixedSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FixedSet::Point(a) => write!(f, "{a}"),
            FixedSet::Interval(a, b) => write!(f, "[{a}, {b}]"),
        }
    }
}

/// Fixed points of `f`, ascending, with adjacent fixed segments merged.
pub fn fixed_points(f: &PLHomeo) -> Vec<FixedSet> {
    let mut found: Vec<FixedSet> = Vec::new();
    for w in f.points.windows(2) {
        let ((x0, y0), (x1, y1)) = (&w[0], &w[1]);
        let (h0, h1) = (y0 - x0, y1 - x1);
        if h0.is_zero() && h1.is_zero() {
            found.push(FixedSet::Interval(x0.clone(), x1.clone()));
        } else if h0.is_zero() {
            found.push(FixedSet::Point(x0.clone()));
        } else if h1.is_zero() {
            found.push(FixedSet::Point(x1.clone()));
        } else if h0.is_positive() != h1.is_positive() {
            let x = x0 + &h0 * (x1 - x0) / (&h0 - &h1);
            found.push(FixedSet::Point(x));
        }
    }
    let mut out: Vec<FixedSet> = Vec::new();
    for s in found {
        match out.last_mut() {
            Some(prev) if s.start() <= prev.end() => {
                let end = s.end().max(prev.end()).clone();
                let start = prev.start().clone();
                *prev = if start == end {
                    FixedSet::Point(start)
                } else {
                    FixedSet::Interval(start, end)
                };
            }
            _ => out.push(s),
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CertificateMode {
    Increasing,
    DecreasingViaSquare,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitSample {
    /// `g(x), g²(x), …, g^d(x)`.
    pub forward: Vec<Q>,
    /// `g⁻¹(x), …, g^{-d}(x)`.
    pub backward: Vec<Q>,
}

/// `N` points of [0,1] with pairwise distinct orbit closures under `⟨f⟩`.
///
/// `g` below is `f` in `Increasing` mode and `f∘f` otherwise. A degenerate
/// certificate lists fixed points of `g`, each its own closure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InfinityCertificate {
    pub mode: CertificateMode,
    pub degenerate: bool,
    /// `(x1, g(x1))`, absent for degenerate certificates.
    pub gap: Option<(Q, Q)>,
    pub points: Vec<Q>,
    pub orbits: Vec<OrbitSample>,
    pub depth: usize,
}

#[derive(Serialize, Deserialize)]
struct OrbitWire {
    forward: Vec<String>,
    backward: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct CertificateWire {
    mode: CertificateMode,
    degenerate: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    gap: Option<[String; 2]>,
    points: Vec<String>,
    orbits: Vec<OrbitWire>,
    depth: usize,
}

fn strs(v: &[Q]) -> Vec<String> {
    v.iter().map(|x| x.to_string()).collect()
}

fn parse_all(v: &[String]) -> Result<Vec<Q>, DynamicsError> {
    v.iter().map(|s| parse_rational(s)).collect()
}

impl Serialize for InfinityCertificate {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        CertificateWire {
            mode: self.mode,
            degenerate: self.degenerate,
            gap: self.gap.as_ref().map(|(a, b)| [a.to_string(), b.to_string()]),
            points: strs(&self.points),
            orbits: self
                .orbits
                .iter()
                .map(|o| OrbitWire {
                    forward: strs(&o.forward),
                    backward: strs(&o.backward),
                })
                .collect(),
            depth: self.depth,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for InfinityCertificate {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let w = CertificateWire::deserialize(d)?;
        let convert = || -> Result<InfinityCertificate, DynamicsError> {
            Ok(InfinityCertificate {
                mode: w.mode,
                degenerate: w.degenerate,
                gap: match &w.gap {
                    Some([a, b]) => Some((parse_rational(a)?, parse_rational(b)?)),
                    None => None,
                },
                points: parse_all(&w.points)?,
                orbits: w
                    .orbits
                    .iter()
                    .map(|o| {
                        Ok(OrbitSample {
                            forward: parse_all(&o.forward)?,
                            backward: parse_all(&o.backward)?,
                        })
                    })
                    .collect::<Result<_, DynamicsError>>()?,
                depth: w.depth,
            })
        };
        convert().map_err(serde::de::Error::custom)
    }
}

fn sample(g: &PLHomeo, g_inv: &PLHomeo, x: &Q, depth: usize) -> OrbitSample {
    let iterate = |h: &PLHomeo| {
        let mut out = Vec::with_capacity(depth);
        let mut y = x.clone();
        for _ in 0..depth {
            y = h.eval(&y);
            out.push(y.clone());
        }
        out
    };
    OrbitSample {
        forward: iterate(g),
        backward: iterate(g_inv),
    }
}

fn midpoint(a: &Q, b: &Q) -> Q {
    (a + b) / q(2)
}

/// The map whose orbits the certificate tracks, and the region it lives on.
fn working_map(f: &PLHomeo) -> (CertificateMode, PLHomeo, Q) {
    if f.is_increasing() {
        (CertificateMode::Increasing, f.clone(), q(0))
    } else {
        let c = match fixed_points(f).first() {
            Some(FixedSet::Point(c)) => c.clone(),
            _ => unreachable!("a decreasing homeomorphism has exactly one fixed point"),
        };
        (CertificateMode::DecreasingViaSquare, f.compose(f), c)
    }
}

/// Builds `n` points with pairwise distinct closures, sampling orbits to `depth`.
pub fn infinity_certificate(
    f: &PLHomeo,
    n: usize,
    depth: usize,
) -> Result<InfinityCertificate, DynamicsError> {
    if n < 1 || depth < 1 {
        return Err(DynamicsError::BadParameter("N and d must be at least 1".into()));
    }
    let (mode, g, lo) = working_map(f);
    let g_inv = g.inverse();
    let fixed: Vec<FixedSet> = fixed_points(&g)
        .into_iter()
        .filter_map(|s| match s {
            FixedSet::Interval(a, b) if b > lo => Some(if a < lo {
                FixedSet::Interval(lo.clone(), b)
            } else {
                FixedSet::Interval(a, b)
            }),
            FixedSet::Point(a) if a >= lo => Some(FixedSet::Point(a)),
            _ => None,
        })
        .collect();
    let degenerate = |points: Vec<Q>| InfinityCertificate {
        mode,
        degenerate: true,
        gap: None,
        orbits: points.iter().map(|x| sample(&g, &g_inv, x, depth)).collect(),
        points,
        depth,
    };
    if let Some(FixedSet::Interval(a, b)) = fixed.iter().find(|s| matches!(s, FixedSet::Interval(..))) {
        let step = (b - a) / q(n as i64 + 1);
        let points = (1..=n as i64).map(|k| a + &step * q(k)).collect();
        return Ok(degenerate(points));
    }
    if fixed.len() >= n {
        let points = fixed.iter().take(n).map(|s| s.start().clone()).collect();
        return Ok(degenerate(points));
    }
    let (p, r) = fixed
        .windows(2)
        .map(|w| (w[0].end().clone(), w[1].start().clone()))
        .next()
        .expect("fixed points include both ends of the region");
    let x1 = midpoint(&p, &r);
    let y = g.eval(&x1);
    let mut points = vec![x1.clone()];
    let mut orbits = vec![sample(&g, &g_inv, &x1, depth)];
    let mut last = x1.clone();
    while points.len() < n {
        let mut candidate = midpoint(&last, &y);
        while orbits
            .iter()
            .any(|o| o.forward.contains(&candidate) || o.backward.contains(&candidate))
        {
            candidate = midpoint(&candidate, &y);
        }
        orbits.push(sample(&g, &g_inv, &candidate, depth));
        points.push(candidate.clone());
        last = candidate;
    }
    Ok(InfinityCertificate {
        mode,
        degenerate: false,
        gap: Some((x1, y)),
        points,
        orbits,
        depth,
    })
}

fn between_open(x: &Q, a: &Q, b: &Q) -> bool {
    (a < x && x < b) || (b < x && x < a)
}

/// In the half-open window `[a, b)` oriented from `a` towards `b`.
fn in_window(x: &Q, a: &Q, b: &Q) -> bool {
    x == a || between_open(x, a, b)
}

fn strictly_monotone(seq: &[Q]) -> bool {
    seq.windows(2).all(|w| w[0] < w[1]) || seq.windows(2).all(|w| w[0] > w[1])
}

/// Recomputes all orbit samples and checks every certificate condition.
pub fn verify_certificate(f: &PLHomeo, c: &InfinityCertificate) -> Result<bool, DynamicsError> {
    let malformed = |m: &str| Err(DynamicsError::MalformedCertificate(m.to_string()));
    if c.points.is_empty() {
        return malformed("no points");
    }
    if c.depth < 1 {
        return malformed("depth must be at least 1");
    }
    if c.orbits.len() != c.points.len() {
        return malformed("one orbit sample per point required");
    }
    if c.orbits.iter().any(|o| o.forward.len() != c.depth || o.backward.len() != c.depth) {
        return malformed("orbit samples must have the stated depth");
    }
    if c.degenerate == c.gap.is_some() {
        return malformed("gap must be present exactly when the certificate is not degenerate");
    }
    let zero = q(0);
    let one = q(1);
    if c.points.iter().any(|x| *x < zero || *x > one) {
        return Ok(false);
    }
    let (g, lo) = match (c.mode, f.is_increasing()) {
        (CertificateMode::Increasing, true) => (f.clone(), zero.clone()),
        (CertificateMode::DecreasingViaSquare, false) => {
            let c0 = fixed_points(f)[0].start().clone();
            (f.compose(f), c0)
        }
        _ => return Ok(false),
    };
    let g_inv = g.inverse();

    // orbit samples recomputed step by step
    for (x, o) in c.points.iter().zip(&c.orbits) {
        let (mut fw, mut bw) = (x.clone(), x.clone());
        for k in 0..c.depth {
            fw = g.eval(&fw);
            bw = g_inv.eval(&bw);
            if fw != o.forward[k] || bw != o.backward[k] {
                return Ok(false);
            }
        }
    }
    for (i, x) in c.points.iter().enumerate() {
        if *x < lo || c.points[..i].contains(x) {
            return Ok(false);
        }
        if c.mode == CertificateMode::DecreasingViaSquare && *x == lo && i > 0 {
            return Ok(false);
        }
    }

    if c.degenerate {
        return Ok(c.points.iter().all(|x| g.eval(x) == *x));
    }

    let (x1, y) = c.gap.as_ref().unwrap();
    if c.points[0] != *x1 || g.eval(x1) != *y || x1 == y {
        return Ok(false);
    }
    if !c.points[1..].iter().all(|x| between_open(x, x1, y)) {
        return Ok(false);
    }
    if !strictly_monotone(&c.points) {
        return Ok(false);
    }
    for (x, o) in c.points.iter().zip(&c.orbits) {
        if g.eval(x) == *x {
            return Ok(false);
        }
        let mut orbit: Vec<Q> = o.backward.iter().rev().cloned().collect();
        orbit.push(x.clone());
        orbit.extend(o.forward.iter().cloned());
        // monotone orbits meet the window exactly once, at x itself
        if !strictly_monotone(&orbit) {
            return Ok(false);
        }
        if orbit.iter().filter(|z| in_window(z, x1, y)).count() != 1 {
            return Ok(false);
        }
    }
    for i in 0..c.points.len() {
        for j in i + 1..c.points.len() {
            let xj = &c.points[j];
            let o = &c.orbits[i];
            if o.forward.contains(xj) || o.backward.contains(xj) {
                return Ok(false);
            }
            if c.mode == CertificateMode::DecreasingViaSquare {
                let fx = f.eval(&c.points[i]);
                if fx == *xj || g.eval(&fx) == *xj {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pl(pairs: &[(&str, &str)]) -> PLHomeo {
        PLHomeo::from_strs(pairs).unwrap()
    }

    fn r(s: &str) -> Q {
        parse_rational(s).unwrap()
    }

    fn slopes(f: &PLHomeo) -> Vec<Q> {
        f.points
            .windows(2)
            .map(|w| (&w[1].1 - &w[0].1) / (&w[1].0 - &w[0].0))
            .collect()
    }

    fn squash() -> PLHomeo {
        pl(&[("0", "0"), ("1/2", "1/4"), ("1", "1")])
    }

    #[test]
    fn validation() {
        assert!(PLHomeo::from_strs(&[("0", "0")]).is_err());
        assert!(PLHomeo::from_strs(&[("0", "0"), ("1/2", "1/2"), ("1/2", "3/4"), ("1", "1")]).is_err());
        assert!(PLHomeo::from_strs(&[("0", "0"), ("1/2", "3/4"), ("1", "1/2")]).is_err());
        assert!(PLHomeo::from_strs(&[("0", "1/2"), ("1", "1")]).is_err());
        assert!(matches!(
            PLHomeo::from_strs(&[("0", "x"), ("1", "1")]),
            Err(DynamicsError::Rational(_))
        ));
        assert!(slopes(&squash()).iter().all(|s| s.is_positive()));
    }

    #[test]
    fn fixed_point_examples() {
        let flip = pl(&[("0", "1"), ("1", "0")]);
        assert_eq!(fixed_points(&flip), vec![FixedSet::Point(r("1/2"))]);
        assert_eq!(
            fixed_points(&PLHomeo::identity()),
            vec![FixedSet::Interval(r("0"), r("1"))]
        );
        assert_eq!(
            fixed_points(&squash()),
            vec![FixedSet::Point(r("0")), FixedSet::Point(r("1"))]
        );
        let partial = pl(&[("0", "0"), ("1/4", "1/4"), ("1/2", "1/2"), ("3/4", "5/8"), ("1", "1")]);
        assert_eq!(
            fixed_points(&partial),
            vec![FixedSet::Interval(r("0"), r("1/2")), FixedSet::Point(r("1"))]
        );
    }

    #[test]
    fn compose_and_inverse() {
        let f = squash();
        let id = f.compose(&f.inverse());
        for x in ["0", "1/7", "1/3", "5/8", "1"] {
            assert_eq!(id.eval(&r(x)), r(x));
            assert_eq!(f.compose(&f).eval(&r(x)), f.eval(&f.eval(&r(x))));
        }
        let flip = pl(&[("0", "1"), ("1", "0")]);
        assert_eq!(fixed_points(&flip.compose(&flip)), fixed_points(&PLHomeo::identity()));
    }

    #[test]
    fn identity_is_degenerate() {
        let c = infinity_certificate(&PLHomeo::identity(), 5, 3).unwrap();
        assert!(c.degenerate);
        let expected: Vec<Q> = (1..=5).map(|k| r(&format!("{k}/6"))).collect();
        assert_eq!(c.points, expected);
        assert!(verify_certificate(&PLHomeo::identity(), &c).unwrap());
    }

    #[test]
    fn squash_certificate() {
        let f = squash();
        let c = infinity_certificate(&f, 5, 20).unwrap();
        assert_eq!(c.mode, CertificateMode::Increasing);
        assert!(!c.degenerate);
        let (x1, y) = c.gap.clone().unwrap();
        assert_eq!(x1, r("1/2"));
        assert_eq!(y, r("1/4"));
        assert_eq!(c.points.len(), 5);
        assert!(verify_certificate(&f, &c).unwrap());
    }

    #[test]
    fn flip_goes_through_square() {
        let flip = pl(&[("0", "1"), ("1", "0")]);
        let c = infinity_certificate(&flip, 3, 5).unwrap();
        assert_eq!(c.mode, CertificateMode::DecreasingViaSquare);
        assert!(c.degenerate);
        assert!(c.points.iter().all(|x| *x > r("1/2")));
        assert!(verify_certificate(&flip, &c).unwrap());

        let f = pl(&[("0", "1"), ("1/2", "1/4"), ("1", "0")]);
        let c = infinity_certificate(&f, 6, 10).unwrap();
        assert_eq!(c.mode, CertificateMode::DecreasingViaSquare);
        assert!(verify_certificate(&f, &c).unwrap());
    }

    #[test]
    fn tampered_certificates_fail() {
        let f = squash();
        let c = infinity_certificate(&f, 5, 20).unwrap();
        let x1 = c.points[0].clone();
        let mut gap_hit = c.clone();
        gap_hit.points[1] = f.eval(&x1);
        assert!(!verify_certificate(&f, &gap_hit).unwrap());
        let mut collision = c.clone();
        collision.points[2] = f.eval(&f.eval(&x1));
        assert!(!verify_certificate(&f, &collision).unwrap());
        let mut short = c.clone();
        short.orbits.pop();
        assert!(verify_certificate(&f, &short).is_err());
        let mut wrong_mode = c;
        wrong_mode.mode = CertificateMode::DecreasingViaSquare;
        assert!(!verify_certificate(&f, &wrong_mode).unwrap());
    }

    #[test]
    fn json_round_trip() {
        let f: PLHomeo =
            serde_json::from_str(r#"{"points":[["0","0"],["1/2","1/4"],["1","1"]]}"#).unwrap();
        assert_eq!(f, squash());
        let text = serde_json::to_string(&f).unwrap();
        assert_eq!(text, r#"{"points":[["0","0"],["1/2","1/4"],["1","1"]]}"#);
        let c = infinity_certificate(&f, 3, 4).unwrap();
        let back: InfinityCertificate =
            serde_json::from_str(&serde_json::to_string(&c).unwrap()).unwrap();
        assert_eq!(back, c);
    }
}
