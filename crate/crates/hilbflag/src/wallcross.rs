//! Walls, sliding transformations and orbits of fixed points.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::series::QPoly;
use crate::tangent::{basis_pair, basis_single, basis_triple, Kind, TangentVector};
use crate::weights::{pos_count, s_minus, s_plus, sign_under, Rational, Side, Sign, TorusSpec};
use crate::young::{enumerate_flags2, enumerate_flags3, enumerate_partitions, Cell, Flag2, Flag3, YoungDiagram};

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum SlideError {
    #[error("vector {0:?} does not vanish at the wall")]
    NonZeroWeight((i32, i32)),
    #[error("sliding did not reach a diagram")]
    Stuck,
    #[error("sliding broke the flag")]
    BrokenFlag,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Degree {
    Single,
    Pair,
    Triple,
}

impl Degree {
    pub const ALL: [Degree; 3] = [Degree::Single, Degree::Pair, Degree::Triple];

    /// Size of the largest diagram in play.
    pub fn top_size(self, n: usize) -> usize {
        match self {
            Degree::Single => n,
            Degree::Pair => n + 1,
            Degree::Triple => n + 2,
        }
    }
}

impl FromStr for Degree {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "single" => Ok(Degree::Single),
            "pair" => Ok(Degree::Pair),
            "triple" => Ok(Degree::Triple),
            _ => Err(format!("unknown degree `{s}`")),
        }
    }
}

/// A torus fixed point of a (flag) Hilbert scheme.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Point {
    Single(YoungDiagram),
    Pair(Flag2),
    Triple(Flag3),
}

impl Point {
    pub fn basis(&self) -> Vec<TangentVector> {
        match self {
            Point::Single(d) => basis_single(d),
            Point::Pair(f) => basis_pair(f),
            Point::Triple(t) => basis_triple(t),
        }
    }

    pub fn degree(&self) -> Degree {
        match self {
            Point::Single(_) => Degree::Single,
            Point::Pair(_) => Degree::Pair,
            Point::Triple(_) => Degree::Triple,
        }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Single(d) => write!(f, "{d}"),
            Point::Pair(p) => write!(f, "{}+{:?}", p.base(), (p.added().u, p.added().v)),
            Point::Triple(t) => write!(
                f,
                "{}+{:?}+{:?}",
                t.base(),
                (t.first().u, t.first().v),
                (t.second().u, t.second().v)
            ),
        }
    }
}

impl Serialize for Point {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Point::Single(d) => d.serialize(s),
            Point::Pair(p) => p.serialize(s),
            Point::Triple(t) => t.serialize(s),
        }
    }
}

pub fn fixed_points(n: usize, degree: Degree) -> Vec<Point> {
    match degree {
        Degree::Single => enumerate_partitions(n).iter().cloned().map(Point::Single).collect(),
        Degree::Pair => enumerate_flags2(n).into_iter().map(Point::Pair).collect(),
        Degree::Triple => enumerate_flags3(n).into_iter().map(Point::Triple).collect(),
    }
}

/// Ratios `-Δx/Δy > 1` realised by some basis vector at some fixed point.
pub fn walls(n: usize, degree: Degree) -> Vec<Rational> {
    let mut out = BTreeSet::new();
    for p in fixed_points(n, degree) {
        for v in p.basis() {
            let (dx, dy) = v.weight();
            if dy != 0 {
                let w = Rational::new(-dx as i64, dy as i64);
                if w > Rational::from_integer(1) {
                    out.insert(w);
                }
            }
        }
    }
    out.into_iter().collect()
}

/// Current position to original label; absent means unmoved.
#[derive(Clone, Debug, Default)]
struct Labels(HashMap<Cell, Cell>);

impl Labels {
    fn at(&self, p: Cell) -> Cell {
        self.0.get(&p).copied().unwrap_or(p)
    }

    fn swap(&mut self, p: Cell, q: Cell) {
        let (a, b) = (self.at(p), self.at(q));
        self.0.insert(p, b);
        self.0.insert(q, a);
    }

    fn position_of(&self, label: Cell) -> Cell {
        self.0.iter().find(|&(_, &l)| l == label).map(|(&p, _)| p).unwrap_or(label)
    }

    fn moved(&self, label: Cell) -> bool {
        self.position_of(label) != label
    }

    fn transpose(&self) -> Labels {
        Labels(self.0.iter().map(|(p, l)| (p.transpose(), l.transpose())).collect())
    }
}

/// Outcome of sliding a single diagram.
#[derive(Clone, Debug)]
pub struct Slid {
    pub diagram: YoungDiagram,
    /// The generator and target of the inverse sliding.
    pub inverse: (Cell, Cell),
    /// Every intermediate configuration, the input first.
    pub steps: Vec<BTreeSet<Cell>>,
    labels: Labels,
}

impl Slid {
    /// Where the box (or hole) originally at `c` ended up.
    pub fn position_of(&self, c: Cell) -> Cell {
        self.labels.position_of(c)
    }

    pub fn moved(&self, c: Cell) -> bool {
        self.labels.moved(c)
    }

    fn transpose(self) -> Slid {
        Slid {
            diagram: self.diagram.transpose(),
            inverse: (self.inverse.0.transpose(), self.inverse.1.transpose()),
            steps: self.steps.into_iter().map(|s| s.into_iter().map(Cell::transpose).collect()).collect(),
            labels: self.labels.transpose(),
        }
    }
}

fn add(c: Cell, d: (i32, i32)) -> Cell {
    c.shift(d.0, d.1)
}

/// 8-connected components, highest first.
fn components(cells: &BTreeSet<Cell>) -> Vec<BTreeSet<Cell>> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for &c in cells {
        if seen.contains(&c) {
            continue;
        }
        let mut comp = BTreeSet::new();
        let mut stack = vec![c];
        seen.insert(c);
        while let Some(x) = stack.pop() {
            comp.insert(x);
            for du in -1..=1 {
                for dv in -1..=1 {
                    let y = x.shift(du, dv);
                    if cells.contains(&y) && seen.insert(y) {
                        stack.push(y);
                    }
                }
            }
        }
        out.push(comp);
    }
    out.sort_by_key(|c| std::cmp::Reverse(c.iter().map(|x| x.v).max()));
    out
}

/// Boxes of `cur` in rows `[lo, hi)` whose translate by `d` is an empty
/// cell no further left than `floor_u`, i.e. the part of the image of
/// `f_{α,β}` still to be filled.
fn attracted(cur: &BTreeSet<Cell>, d: (i32, i32), floor_u: i32, lo: i32, hi: i32) -> BTreeSet<Cell> {
    cur.iter()
        .copied()
        .filter(|&g| {
            let t = add(g, d);
            g.v >= lo && g.v < hi && t.in_quadrant() && t.u >= floor_u && !cur.contains(&t)
        })
        .collect()
}

/// Sliding of a diagram along a zero-weight `f_{α,β}` with `β` above `α`.
fn slide_up(gamma: &YoungDiagram, alpha: Cell, beta: Cell) -> Result<Slid, SlideError> {
    let d = alpha.minus(beta);
    debug_assert!(d.0 > 0 && d.1 < 0);
    let gens = gamma.generators();
    let mut cur: BTreeSet<Cell> = gamma.cells().into_iter().collect();
    let mut labels = Labels::default();
    let mut steps = vec![cur.clone()];
    let young = |s: &BTreeSet<Cell>| YoungDiagram::from_cells(s.iter().copied());
    let limit = 4 * (gamma.size() + 2) * (gamma.size() + 2);

    let first = attracted(&cur, d, alpha.u, i32::MIN, i32::MAX);
    let mut comp = components(&first).into_iter().next().ok_or(SlideError::Stuck)?;
    let lowest = comp.iter().map(|c| c.v).min().unwrap();
    let mut alpha_k = *gens
        .iter()
        .filter(|&&g| comp.contains(&add(g, (-d.0, -d.1))))
        .min_by_key(|g| (g.v - d.1 - lowest).abs())
        .ok_or(SlideError::Stuck)?;
    let mut beta_k = add(alpha_k, (-d.0, -d.1));

    for _ in 0..limit {
        // slide the component once
        let mut moved: BTreeSet<Cell> = BTreeSet::new();
        for &g in &comp {
            cur.remove(&g);
        }
        for &g in &comp {
            let t = add(g, d);
            cur.insert(t);
            labels.swap(g, t);
            moved.insert(t);
        }
        steps.push(cur.clone());
        if let Some(y) = young(&cur) {
            return Ok(Slid { diagram: y, inverse: (beta_k, alpha_k), steps, labels });
        }
        // keep pushing slid boxes down, never below the row of α^k
        loop {
            let mut order: Vec<Cell> = moved.iter().copied().collect();
            order.sort_by_key(|c| (c.v, c.u));
            let mut any = false;
            for g in order {
                let t = add(g, d);
                if t.in_quadrant() && t.v >= alpha_k.v && !cur.contains(&t) {
                    cur.remove(&g);
                    cur.insert(t);
                    labels.swap(g, t);
                    moved.remove(&g);
                    moved.insert(t);
                    any = true;
                }
            }
            if !any {
                break;
            }
            steps.push(cur.clone());
            if let Some(y) = young(&cur) {
                return Ok(Slid { diagram: y, inverse: (beta_k, alpha_k), steps, labels });
            }
        }
        // restart from the next generator down
        let next = gens.iter().filter(|g| g.v < alpha_k.v).max_by_key(|g| g.v).ok_or(SlideError::Stuck)?;
        let beta_next = add(*next, (-d.0, -d.1));
        let band = attracted(&cur, d, alpha.u, beta_next.v, beta_k.v);
        comp = components(&band).into_iter().next().ok_or(SlideError::Stuck)?;
        alpha_k = *next;
        beta_k = beta_next;
    }
    Err(SlideError::Stuck)
}

/// `T_{α,β}(Γ)` for a zero-weight translation from generator `alpha` to
/// box `beta`.
pub fn slide_diagram(gamma: &YoungDiagram, alpha: Cell, beta: Cell) -> Result<Slid, SlideError> {
    let (dx, dy) = beta.minus(alpha);
    if dx * dy >= 0 {
        return Err(SlideError::NonZeroWeight((dx, dy)));
    }
    if dy > 0 {
        slide_up(gamma, alpha, beta)
    } else {
        slide_up(&gamma.transpose(), alpha.transpose(), beta.transpose()).map(Slid::transpose)
    }
}

fn wall_torus(w: Rational) -> TorusSpec {
    TorusSpec::at_wall(w, Side::Exact)
}

/// Image of a fixed point under the sliding of a zero-weight basis vector.
pub fn slide(x: &Point, v: &TangentVector, w: Rational) -> Result<Point, SlideError> {
    if sign_under(v, &wall_torus(w)) != Sign::Zero {
        return Err(SlideError::NonZeroWeight(v.weight()));
    }
    let broken = |_| SlideError::BrokenFlag;
    match (x, v.kind) {
        (Point::Single(d), _) => Ok(Point::Single(slide_diagram(d, v.src, v.tgt)?.diagram)),
        (Point::Pair(f), Kind::H2) => Flag2::new(f.base().clone(), v.src).map(Point::Pair).map_err(broken),
        (Point::Pair(f), _) => {
            let aj = f.added();
            let r1 = slide_diagram(f.base(), v.src, v.tgt)?;
            if r1.moved(aj) {
                return Flag2::new(r1.diagram.clone(), r1.position_of(aj)).map(Point::Pair).map_err(broken);
            }
            let r2 = slide_diagram(f.top(), v.src, v.tgt)?;
            let mark = r2.position_of(aj);
            let base = r2.diagram.without_cell(mark).map_err(broken)?;
            Flag2::new(base, mark).map(Point::Pair).map_err(broken)
        }
        (Point::Triple(t), Kind::H3) => {
            Flag3::new(t.base().clone(), t.first(), v.src).map(Point::Triple).map_err(broken)
        }
        (Point::Triple(t), Kind::H2) if v.src == t.second() => {
            Flag3::new(t.base().clone(), t.second(), t.first()).map(Point::Triple).map_err(broken)
        }
        (Point::Triple(t), Kind::H2) => {
            let r3 = slide_diagram(t.top(), v.src, v.tgt)?;
            triple_from_top(&r3, t)
        }
        (Point::Triple(t), Kind::F) => {
            let (aj, al) = (t.first(), t.second());
            // preferred decoding first, then the other diagrams
            let r1 = slide_diagram(t.base(), v.src, v.tgt)?;
            let via1 = || {
                Flag3::new(r1.diagram.clone(), r1.position_of(aj), r1.position_of(al))
                    .map(Point::Triple)
                    .map_err(broken)
            };
            let r2 = slide_diagram(t.middle(), v.src, v.tgt);
            let via2 = || -> Result<Point, SlideError> {
                let r2 = r2.clone()?;
                let first = r2.position_of(aj);
                let base = r2.diagram.without_cell(first).map_err(broken)?;
                Flag3::new(base, first, r2.position_of(al)).map(Point::Triple).map_err(broken)
            };
            let r3 = slide_diagram(t.top(), v.src, v.tgt);
            let via3 = || triple_from_top(&r3.clone()?, t);
            // every level slides on its own
            let each = || -> Result<Point, SlideError> {
                let (d1, d2, d3) = (&r1.diagram, &r2.clone()?.diagram, &r3.clone()?.diagram);
                let first = single_difference(d1, d2).ok_or(SlideError::BrokenFlag)?;
                let second = single_difference(d2, d3).ok_or(SlideError::BrokenFlag)?;
                Flag3::new(d1.clone(), first, second).map(Point::Triple).map_err(broken)
            };
            // outer levels slide, the middle box follows its label
            let ends = || -> Result<Point, SlideError> {
                let d3 = r3.clone()?.diagram;
                let first = r1.position_of(aj);
                let mid = r1.diagram.with_cell(first).map_err(broken)?;
                let second = single_difference(&mid, &d3).ok_or(SlideError::BrokenFlag)?;
                Flag3::new(r1.diagram.clone(), first, second).map(Point::Triple).map_err(broken)
            };
            let moved2 = r2.as_ref().map(|r| r.moved(al)).unwrap_or(false);
            let order: [&dyn Fn() -> Result<Point, SlideError>; 5] = if r1.moved(aj) {
                [&each, &ends, &via1, &via2, &via3]
            } else if moved2 {
                [&each, &ends, &via2, &via3, &via1]
            } else {
                [&each, &ends, &via3, &via2, &via1]
            };
            // any same-weight vectors on the three levels that keep the flag nested
            let any = || -> Result<Point, SlideError> {
                let level = |d: &YoungDiagram| -> Vec<YoungDiagram> {
                    let mut out: Vec<YoungDiagram> = basis_single(d)
                        .into_iter()
                        .filter(|u| u.weight() == v.weight())
                        .filter_map(|u| slide_diagram(d, u.src, u.tgt).ok())
                        .map(|s| s.diagram)
                        .collect();
                    out.dedup();
                    out
                };
                let (l2, l3) = (level(t.middle()), level(t.top()));
                for d1 in level(t.base()) {
                    for d2 in &l2 {
                        let Some(first) = single_difference(&d1, d2) else { continue };
                        for d3 in &l3 {
                            if let Some(second) = single_difference(d2, d3) {
                                if let Ok(f) = Flag3::new(d1.clone(), first, second) {
                                    return Ok(Point::Triple(f));
                                }
                            }
                        }
                    }
                }
                Err(SlideError::BrokenFlag)
            };
            let mut last = SlideError::BrokenFlag;
            for f in order.into_iter().chain([&any as &dyn Fn() -> Result<Point, SlideError>]) {
                match f() {
                    Ok(p) => return Ok(p),
                    Err(e) => last = e,
                }
            }
            Err(last)
        }
    }
}

fn single_difference(small: &YoungDiagram, big: &YoungDiagram) -> Option<Cell> {
    if big.size() != small.size() + 1 {
        return None;
    }
    let extra: Vec<Cell> = big.cells().into_iter().filter(|c| !small.contains(*c)).collect();
    (extra.len() == 1).then(|| extra[0])
}

fn triple_from_top(r3: &Slid, t: &Flag3) -> Result<Point, SlideError> {
    let (first, second) = (r3.position_of(t.first()), r3.position_of(t.second()));
    let base = r3
        .diagram
        .without_cell(second)
        .and_then(|m| m.without_cell(first))
        .map_err(|_| SlideError::BrokenFlag)?;
    Flag3::new(base, first, second).map(Point::Triple).map_err(|_| SlideError::BrokenFlag)
}

pub fn zero_vectors(x: &Point, w: Rational) -> Vec<TangentVector> {
    let t = wall_torus(w);
    x.basis().into_iter().filter(|v| sign_under(v, &t) == Sign::Zero).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct Edge {
    pub from: usize,
    pub to: usize,
    pub vector: TangentVector,
}

#[derive(Clone, Debug, Serialize)]
pub struct Orbit {
    #[serde(serialize_with = "ser_ratio")]
    pub wall: Rational,
    pub members: Vec<Point>,
}

fn ser_ratio<S: serde::Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

/// The sliding graph at a wall: nodes are all fixed points.
#[derive(Clone, Debug, Serialize)]
pub struct SlideGraph {
    pub nodes: Vec<Point>,
    pub edges: Vec<Edge>,
    /// Slidings that failed, as `(node, vector, error)`.
    pub failures: Vec<(usize, TangentVector, String)>,
}

pub fn slide_graph(n: usize, degree: Degree, w: Rational) -> SlideGraph {
    let nodes = fixed_points(n, degree);
    let index: HashMap<&Point, usize> = nodes.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let mut edges = Vec::new();
    let mut failures = Vec::new();
    for (i, x) in nodes.iter().enumerate() {
        for v in zero_vectors(x, w) {
            match slide(x, &v, w) {
                Ok(y) => match index.get(&y) {
                    Some(&j) => edges.push(Edge { from: i, to: j, vector: v }),
                    None => failures.push((i, v, "left the fixed point set".into())),
                },
                Err(e) => failures.push((i, v, e.to_string())),
            }
        }
    }
    SlideGraph { nodes, edges, failures }
}

impl SlideGraph {
    /// Connected components, members in enumeration order.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.nodes.len()];
        for e in &self.edges {
            adj[e.from].push(e.to);
            adj[e.to].push(e.from);
        }
        let mut comp = vec![usize::MAX; self.nodes.len()];
        let mut out = Vec::new();
        for s in 0..self.nodes.len() {
            if comp[s] != usize::MAX {
                continue;
            }
            let mut members = vec![];
            let mut queue = VecDeque::from([s]);
            comp[s] = out.len();
            while let Some(x) = queue.pop_front() {
                members.push(x);
                for &y in &adj[x] {
                    if comp[y] == usize::MAX {
                        comp[y] = out.len();
                        queue.push_back(y);
                    }
                }
            }
            members.sort();
            out.push(members);
        }
        out
    }

    /// Every edge has a reverse edge.
    pub fn invertible(&self) -> Vec<(usize, usize)> {
        let pairs: BTreeSet<(usize, usize)> = self.edges.iter().map(|e| (e.from, e.to)).collect();
        pairs.iter().copied().filter(|&(a, b)| !pairs.contains(&(b, a))).collect()
    }
}

pub fn orbits(n: usize, degree: Degree, w: Rational) -> Vec<Orbit> {
    let g = slide_graph(n, degree, w);
    g.components()
        .into_iter()
        .map(|c| Orbit { wall: w, members: c.into_iter().map(|i| g.nodes[i].clone()).collect() })
        .collect()
}

/// Multiset of `b·u + a·v` over the boxes of every diagram in the point,
/// for `W = a/b`; constant along slidings.
pub fn weight_signature(x: &Point, w: Rational) -> Vec<Vec<i64>> {
    let (a, b) = (*w.numer(), *w.denom());
    let sig = |d: &YoungDiagram| {
        let mut s: Vec<i64> = d.cells().iter().map(|c| b * c.u as i64 + a * c.v as i64).collect();
        s.sort();
        s
    };
    match x {
        Point::Single(d) => vec![sig(d)],
        Point::Pair(f) => vec![sig(f.base()), sig(f.top())],
        Point::Triple(t) => vec![sig(t.base()), sig(t.middle()), sig(t.top())],
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct OrbitSummary {
    pub size: usize,
    pub pos: usize,
    /// `(s⁺, s⁻)` per member.
    pub s: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct WallReport {
    pub n: usize,
    pub degree: Degree,
    #[serde(serialize_with = "ser_ratio")]
    pub wall: Rational,
    pub orbits: Vec<OrbitSummary>,
    pub poly_plus: QPoly,
    pub poly_minus: QPoly,
    /// Orbits that mix signatures, or signatures split over several orbits.
    pub signature_mismatches: usize,
    pub violations: Vec<String>,
}

impl WallReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

fn histogram(vals: impl Iterator<Item = usize>) -> BTreeMap<usize, usize> {
    let mut h = BTreeMap::new();
    for v in vals {
        *h.entry(v).or_insert(0) += 1;
    }
    h
}

pub fn verify_wall(n: usize, degree: Degree, w: Rational) -> WallReport {
    let g = slide_graph(n, degree, w);
    let mut violations: Vec<String> = g
        .failures
        .iter()
        .map(|(i, v, e)| format!("{} along {:?}: {e}", g.nodes[*i], v.weight()))
        .collect();
    for (a, b) in g.invertible() {
        // with a repeated weight the orbit curve is not determined by the vector
        let simple = |i: usize, wt: (i32, i32)| g.nodes[i].basis().iter().filter(|v| v.weight() == wt).count() == 1;
        let wts: BTreeSet<(i32, i32)> =
            g.edges.iter().filter(|e| e.from == a && e.to == b).map(|e| e.vector.weight()).collect();
        if wts.iter().any(|&(x, y)| simple(a, (x, y)) && simple(b, (-x, -y))) {
            violations.push(format!("no sliding back from {} to {}", g.nodes[b], g.nodes[a]));
        }
    }
    let exact = wall_torus(w);
    let plus = TorusSpec::at_wall(w, Side::Plus);
    let minus = TorusSpec::at_wall(w, Side::Minus);
    let mut summaries = Vec::new();
    let mut signature_mismatches = 0;
    let comps = g.components();
    for comp in &comps {
        let stats: Vec<(usize, usize, usize, usize, usize)> = comp
            .iter()
            .map(|&i| {
                let b = g.nodes[i].basis();
                (pos_count(&b, &exact), s_plus(&b, w), s_minus(&b, w), pos_count(&b, &plus), pos_count(&b, &minus))
            })
            .collect();
        let label = g.nodes[comp[0]].to_string();
        let pos: BTreeSet<usize> = stats.iter().map(|s| s.0).collect();
        if pos.len() > 1 {
            violations.push(format!("orbit of {label}: pos_W takes values {pos:?}"));
        }
        let tot: BTreeSet<usize> = stats.iter().map(|s| s.1 + s.2).collect();
        if tot.len() > 1 {
            violations.push(format!("orbit of {label}: s+ + s- takes values {tot:?}"));
        }
        if histogram(stats.iter().map(|s| s.1)) != histogram(stats.iter().map(|s| s.2)) {
            violations.push(format!("orbit of {label}: s+ and s- histograms differ"));
        }
        for s in &stats {
            if s.3 != s.0 + s.1 || s.4 != s.0 + s.2 {
                violations.push(format!("orbit of {label}: pos at W± is not pos_W + s±"));
            }
        }
        let sigs: BTreeSet<Vec<Vec<i64>>> = comp.iter().map(|&i| weight_signature(&g.nodes[i], w)).collect();
        if sigs.len() > 1 {
            signature_mismatches += 1;
            violations.push(format!("orbit of {label}: weight signature not constant"));
        }
        summaries.push(OrbitSummary {
            size: comp.len(),
            pos: stats[0].0,
            s: stats.iter().map(|s| (s.1, s.2)).collect(),
        });
    }
    // orbits and signatures should give the same partition
    let distinct: BTreeSet<Vec<Vec<i64>>> = g.nodes.iter().map(|x| weight_signature(x, w)).collect();
    if distinct.len() != comps.len() {
        signature_mismatches += comps.len().abs_diff(distinct.len());
    }
    let poly = |t: &TorusSpec| QPoly::from_exponents(g.nodes.iter().map(|x| pos_count(&x.basis(), t)));
    let (poly_plus, poly_minus) = (poly(&plus), poly(&minus));
    if poly_plus != poly_minus {
        violations.push(format!("polynomial changes across the wall: {poly_plus} vs {poly_minus}"));
    }
    WallReport { n, degree, wall: w, orbits: summaries, poly_plus, poly_minus, signature_mismatches, violations }
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepReport {
    pub n: usize,
    pub degree: Degree,
    pub walls: Vec<WallReport>,
    pub poly_infty: QPoly,
    pub poly_oneplus: QPoly,
    pub violations: Vec<String>,
}

impl SweepReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty() && self.walls.iter().all(WallReport::ok)
    }
}

/// Crosses every wall from the far side down to just above 1, checking that
/// the polynomial never changes and that the counts between consecutive
/// walls agree point by point.
pub fn sweep(n: usize, degree: Degree) -> SweepReport {
    let ws = walls(n, degree);
    let size = degree.top_size(n);
    let points = fixed_points(n, degree);
    let bases: Vec<Vec<TangentVector>> = points.iter().map(Point::basis).collect();
    let counts = |t: &TorusSpec| -> Vec<usize> { bases.iter().map(|b| pos_count(b, t)).collect() };
    let poly = |c: &[usize]| QPoly::from_exponents(c.iter().copied());

    let reports: Vec<WallReport> = ws.par_iter().rev().map(|&w| verify_wall(n, degree, w)).collect();
    let mut violations = Vec::new();
    let infty = counts(&TorusSpec::infinity(size));
    let oneplus = counts(&TorusSpec::oneplus(size));
    // from above the highest wall down to just above 1
    let mut above = infty.clone();
    for w in ws.iter().rev() {
        let plus = counts(&TorusSpec::at_wall(*w, Side::Plus));
        if plus != above {
            violations.push(format!("counts just above {w} differ from the chamber above"));
        }
        if poly(&plus) != poly(&counts(&TorusSpec::at_wall(*w, Side::Minus))) {
            violations.push(format!("polynomial changes across {w}"));
        }
        above = counts(&TorusSpec::at_wall(*w, Side::Minus));
    }
    if above != oneplus {
        violations.push("counts below the lowest wall differ from the torus near 1".into());
    }
    let (poly_infty, poly_oneplus) = (poly(&infty), poly(&oneplus));
    if poly_infty != poly_oneplus {
        violations.push(format!("end polynomials differ: {poly_infty} vs {poly_oneplus}"));
    }
    SweepReport { n, degree, walls: reports, poly_infty, poly_oneplus, violations }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn yd(h: &[usize]) -> YoungDiagram {
        YoungDiagram::from_column_heights(h.to_vec()).unwrap()
    }

    fn rows(r: &[usize]) -> YoungDiagram {
        YoungDiagram::from_row_lengths(r.to_vec()).unwrap()
    }

    fn int(k: i64) -> Rational {
        Rational::from_integer(k)
    }

    #[test]
    fn small_walls() {
        assert_eq!(walls(3, Degree::Single), vec![int(2)]);
        assert!(walls(1, Degree::Single).is_empty());
        assert!(walls(10, Degree::Single).contains(&int(2)));
    }

    #[test]
    fn n3_slide() {
        // f from x^2 to y on the hook
        let d = slide_diagram(&yd(&[2, 1]), Cell::new(2, 0), Cell::new(0, 1)).unwrap();
        assert_eq!(d.diagram, yd(&[1, 1, 1]));
        let back = slide_diagram(&d.diagram, d.inverse.0, d.inverse.1).unwrap();
        assert_eq!(back.diagram, yd(&[2, 1]));
    }

    #[test]
    fn one_box_example() {
        // rows 4, 3, 1 with α = (4, 0), β = (0, 2)
        let d = slide_diagram(&rows(&[4, 3, 1]), Cell::new(4, 0), Cell::new(0, 2)).unwrap();
        assert_eq!(d.diagram, rows(&[5, 3]));
    }

    #[test]
    fn four_panel_example() {
        let gamma = rows(&[13, 12, 10, 10, 5, 4, 4, 4, 3, 1]);
        let s = slide_diagram(&gamma, Cell::new(4, 5), Cell::new(0, 7)).unwrap();
        assert_eq!(s.diagram.rows(), vec![19, 17, 9, 8, 6, 6, 1]);
        assert_eq!(s.diagram.columns(), &[7, 6, 6, 6, 6, 6, 4, 4, 3, 2, 2, 2, 2, 2, 2, 2, 2, 1, 1]);
        assert_eq!(s.inverse, (Cell::new(9, 2), Cell::new(13, 0)));
        let snapshot_rows: Vec<Vec<usize>> = s
            .steps
            .iter()
            .map(|c| {
                let mut r = vec![0; 20];
                for x in c {
                    r[x.v as usize] += 1;
                }
                while r.last() == Some(&0) {
                    r.pop();
                }
                r
            })
            .collect();
        assert!(snapshot_rows.contains(&vec![13, 12, 10, 10, 11, 9, 1]));
        assert!(snapshot_rows.contains(&vec![13, 12, 15, 13, 6, 6, 1]));
        let back = slide_diagram(&s.diagram, s.inverse.0, s.inverse.1).unwrap();
        assert_eq!(back.diagram, gamma);
    }

    #[test]
    fn n3_orbits() {
        let os = orbits(3, Degree::Single, int(2));
        let mut sets: Vec<Vec<Point>> = os.into_iter().map(|o| o.members).collect();
        sets.sort();
        let single = |h: &[usize]| Point::Single(yd(h));
        let mut expected = vec![vec![single(&[3])], vec![single(&[1, 1, 1]), single(&[2, 1])]];
        for e in &mut expected {
            e.sort();
        }
        expected.sort();
        assert_eq!(sets, expected);
    }

    #[test]
    fn n10_orbit() {
        let expected: BTreeSet<Point> = [
            &[4, 3, 2, 1][..],
            &[4, 3, 1, 1, 1],
            &[4, 2, 2, 2],
            &[3, 3, 3, 1],
            &[4, 2, 1, 1, 1, 1],
            &[3, 2, 1, 1, 1, 1, 1],
            &[2, 2, 2, 2, 2],
            &[2, 2, 2, 1, 1, 1, 1],
        ]
        .iter()
        .map(|h| Point::Single(yd(h)))
        .collect();
        let os = orbits(10, Degree::Single, int(2));
        let orbit = os.iter().find(|o| o.members.contains(&Point::Single(yd(&[4, 3, 2, 1])))).unwrap();
        let got: BTreeSet<Point> = orbit.members.iter().cloned().collect();
        assert_eq!(got, expected);
        let mut dist: Vec<(usize, usize)> = orbit
            .members
            .iter()
            .map(|x| {
                let b = x.basis();
                assert_eq!(pos_count(&b, &wall_torus(int(2))), 3);
                (s_plus(&b, int(2)), s_minus(&b, int(2)))
            })
            .collect();
        dist.sort();
        assert_eq!(dist, vec![(0, 3), (1, 2), (1, 2), (1, 2), (2, 1), (2, 1), (2, 1), (3, 0)]);
        assert!(verify_wall(10, Degree::Single, int(2)).ok());
    }

    #[test]
    fn rejects_nonzero_vectors() {
        let x = Point::Single(yd(&[2, 1]));
        let v = TangentVector::new(Kind::F, Cell::new(0, 2), Cell::new(1, 0));
        assert!(matches!(slide(&x, &v, int(2)), Err(SlideError::NonZeroWeight(_))));
    }

    #[test]
    fn all_walls_small() {
        for degree in Degree::ALL {
            for n in 1..=5 {
                let rep = sweep(n, degree);
                assert!(rep.ok(), "{degree:?} n={n}: {:?} {:?}", rep.violations, rep
                    .walls
                    .iter()
                    .flat_map(|w| w.violations.clone())
                    .take(5)
                    .collect::<Vec<_>>());
            }
        }
    }
}
