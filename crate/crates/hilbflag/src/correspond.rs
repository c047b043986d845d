//! Marked pairs `(Y, S)`, the two-to-one map from 3-step flags onto them,
//! and the section used for the gap-two nested pairs.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::Serialize;

use crate::series::QPoly;
use crate::weights::{pos_infty_triple, pos_oneplus_triple};
use crate::young::{enumerate_flags3, enumerate_partitions, Cell, Flag3, YoungDiagram};

/// A diagram with two of its removable boxes marked.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct MarkedPair {
    y: YoungDiagram,
    s: [Cell; 2],
}

impl MarkedPair {
    /// Returns `None` unless both cells are distinct removable boxes of `y`.
    pub fn new(y: YoungDiagram, a: Cell, b: Cell) -> Option<Self> {
        if a == b || !y.is_removable(a) || !y.is_removable(b) {
            return None;
        }
        let s = if a.u > b.u { [a, b] } else { [b, a] };
        Some(MarkedPair { y, s })
    }

    pub fn y(&self) -> &YoungDiagram {
        &self.y
    }

    /// Marked boxes, right one first.
    pub fn marked(&self) -> [Cell; 2] {
        self.s
    }

    pub fn level(&self) -> YoungDiagram {
        self.y.without_cell(self.s[0]).and_then(|d| d.without_cell(self.s[1])).expect("marked boxes are corners")
    }
}

/// All marked pairs with `|Y| = m + 2`.
pub fn enumerate_tr(m: usize) -> Vec<MarkedPair> {
    let mut out = Vec::new();
    for y in enumerate_partitions(m + 2).iter() {
        let cs = y.corners().unwrap_or_default();
        for (i, &a) in cs.iter().enumerate() {
            for &b in &cs[i + 1..] {
                out.extend(MarkedPair::new(y.clone(), a, b));
            }
        }
    }
    out
}

pub fn pos_tr(p: &MarkedPair, m: usize) -> usize {
    m + 1 - p.y.len()
}

pub fn tr_poly(m: usize) -> QPoly {
    QPoly::from_exponents(enumerate_tr(m).iter().map(|p| pos_tr(p, m)))
}

/// The 3-step flag `(Γ₁, Γ₂, Γ₃) = (λ∖β, λ, λ∪α)`.
fn level_flag(lambda: &YoungDiagram, beta: Cell, alpha: Cell) -> Flag3 {
    let base = lambda.without_cell(beta).expect("corner");
    Flag3::new(base, beta, alpha).expect("corner then generator")
}

/// The two flags sent to `p`. With generators `α_0..α_s` and corners
/// `β_0..β_{s-1}` of the level, both numbered from the right, the pair
/// `(α_a, α_b)` with `a > b` comes from `(α_a, β_{a-b-1})` and
/// `(α_b, β_{a-1})`.
pub fn bn_preimage(p: &MarkedPair) -> (Flag3, Flag3) {
    let lambda = p.level();
    let gens = lambda.generators();
    let corners = lambda.corners().expect("a level with two generators is nonempty");
    let index = |c: Cell| gens.iter().position(|&g| g == c).expect("marked boxes are generators of the level");
    // the right marked box has the smaller index
    let (b, a) = (index(p.s[0]), index(p.s[1]));
    (level_flag(&lambda, corners[a - b - 1], gens[a]), level_flag(&lambda, corners[a - 1], gens[b]))
}

pub fn bn_image(t: &Flag3) -> Option<MarkedPair> {
    bn_index(t.middle()).get(t).cloned()
}

fn bn_index(lambda: &YoungDiagram) -> BTreeMap<Flag3, MarkedPair> {
    let gens = lambda.generators();
    let mut out = BTreeMap::new();
    for (i, &a) in gens.iter().enumerate() {
        for &b in &gens[i + 1..] {
            let y = lambda.with_cell(a).and_then(|d| d.with_cell(b)).expect("distinct generators");
            let p = MarkedPair::new(y, a, b).expect("generators become corners");
            let (f, g) = bn_preimage(&p);
            out.insert(f, p.clone());
            out.insert(g, p);
        }
    }
    out
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct BnReport {
    pub n: usize,
    pub flags: usize,
    pub pairs: usize,
    pub fibers_ok: usize,
    /// Flags hit twice or never, and fibers whose values are not `{r, r+1}`.
    pub violations: Vec<String>,
}

impl BnReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty() && self.flags == 2 * self.pairs && self.fibers_ok == self.pairs
    }
}

/// Checks the map on flags with `|Γ₂| = n`, i.e. pairs with `|Y| = n + 2`.
pub fn verify_bn(n: usize) -> BnReport {
    let per_level: Vec<(usize, usize, usize, Vec<String>)> = enumerate_partitions(n)
        .par_iter()
        .map(|lambda| {
            let mut violations = Vec::new();
            let mut hit = BTreeSet::new();
            let mut pairs = 0;
            let mut fibers_ok = 0;
            let gens = lambda.generators();
            for (i, &a) in gens.iter().enumerate() {
                for &b in &gens[i + 1..] {
                    let y = lambda.with_cell(a).and_then(|d| d.with_cell(b)).unwrap();
                    let p = MarkedPair::new(y, a, b).unwrap();
                    pairs += 1;
                    let (f, g) = bn_preimage(&p);
                    let r = pos_tr(&p, n);
                    let mut vals = [pos_infty_triple(&f), pos_infty_triple(&g)];
                    vals.sort();
                    if vals == [r, r + 1] {
                        fibers_ok += 1;
                    } else {
                        violations.push(format!("{lambda} {a:?}{b:?}: pos {vals:?} against {r}"));
                    }
                    for t in [f, g] {
                        if !hit.insert(t.clone()) {
                            violations.push(format!("{lambda}: flag hit twice {:?}", (t.first(), t.second())));
                        }
                    }
                }
            }
            let expected = level_flags(lambda);
            if hit != expected {
                violations.push(format!("{lambda}: preimages miss {} flags", expected.difference(&hit).count()));
            }
            (expected.len(), pairs, fibers_ok, violations)
        })
        .collect();
    let mut report = BnReport { n, ..Default::default() };
    for (f, p, ok, v) in per_level {
        report.flags += f;
        report.pairs += p;
        report.fibers_ok += ok;
        report.violations.extend(v);
    }
    report
}

fn level_flags(lambda: &YoungDiagram) -> BTreeSet<Flag3> {
    let mut out = BTreeSet::new();
    for beta in lambda.corners().unwrap_or_default() {
        for alpha in lambda.generators() {
            out.insert(level_flag(lambda, beta, alpha));
        }
    }
    out
}

/// Nested diagrams of sizes `n` and `n + 2`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Pair13 {
    inner: YoungDiagram,
    outer: YoungDiagram,
}

impl Pair13 {
    pub fn new(inner: YoungDiagram, outer: YoungDiagram) -> Option<Self> {
        let ok = outer.size() == inner.size() + 2 && inner.cells().into_iter().all(|c| outer.contains(c));
        ok.then_some(Pair13 { inner, outer })
    }

    pub fn inner(&self) -> &YoungDiagram {
        &self.inner
    }

    pub fn outer(&self) -> &YoungDiagram {
        &self.outer
    }

    pub fn difference(&self) -> Vec<Cell> {
        self.outer.cells().into_iter().filter(|&c| !self.inner.contains(c)).collect()
    }
}

pub fn enumerate_pair13(n: usize) -> Vec<Pair13> {
    let set: BTreeSet<Pair13> = enumerate_flags3(n)
        .into_iter()
        .map(|t| Pair13 { inner: t.base().clone(), outer: t.top().clone() })
        .collect();
    set.into_iter().collect()
}

/// Middle box of least degree, then least `v`.
pub fn sn(p: &Pair13) -> Flag3 {
    let diff = p.difference();
    let first = *diff.iter().min_by_key(|c| (c.deg(), c.v)).expect("two boxes");
    let second = *diff.iter().find(|&&c| c != first).expect("two boxes");
    Flag3::new(p.inner.clone(), first, second).expect("the lower box is addable first")
}

pub fn poincare_pair13(n: usize) -> QPoly {
    QPoly::from_exponents(enumerate_pair13(n).iter().map(|p| pos_oneplus_triple(&sn(p))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::{product_family, Family};

    fn yd(h: &[usize]) -> YoungDiagram {
        YoungDiagram::from_column_heights(h.to_vec()).unwrap()
    }

    #[test]
    fn small_tr() {
        assert!(enumerate_tr(0).is_empty());
        let one = enumerate_tr(1);
        assert_eq!(one.len(), 1);
        assert_eq!(one[0].y(), &yd(&[2, 1]));
        assert_eq!(one[0].marked(), [Cell::new(1, 0), Cell::new(0, 1)]);
        let two = enumerate_tr(2);
        let shapes: BTreeSet<Vec<usize>> = two.iter().map(|p| p.y().columns().to_vec()).collect();
        assert_eq!(shapes, [vec![2, 1, 1], vec![3, 1]].into_iter().collect());
        for p in &two {
            let expect = if p.y().columns() == [3, 1] { 1 } else { 0 };
            assert_eq!(pos_tr(p, 2), expect);
        }
        assert_eq!(tr_poly(2), "1 + q".parse().unwrap());
    }

    #[test]
    fn marked_pairs_are_well_formed() {
        for m in 0..=10 {
            for p in enumerate_tr(m) {
                let [a, b] = p.marked();
                assert!(a.u != b.u && a.v != b.v);
                assert!(p.y().len() <= m + 1);
                assert_eq!(p.level().size(), m);
            }
        }
    }

    #[test]
    fn tr_series() {
        let s = product_family(Family::Tr, 10);
        for n in 0..10 {
            assert_eq!(s.coeff(n), &tr_poly(n + 1), "n = {n}");
        }
    }

    #[test]
    fn worked_preimages() {
        // corners β_2, β_1, β_0 from left to right; generators α_3..α_0
        let lambda = yd(&[4, 3, 1]);
        let gens = lambda.generators();
        let corners = lambda.corners().unwrap();
        assert_eq!((gens.len(), corners.len()), (4, 3));
        let pair = |a: usize, b: usize| {
            let y = lambda.with_cell(gens[a]).unwrap().with_cell(gens[b]).unwrap();
            MarkedPair::new(y, gens[a], gens[b]).unwrap()
        };
        let n = lambda.size();

        let p = pair(3, 2);
        let (f, g) = bn_preimage(&p);
        assert_eq!((f.first(), f.second()), (corners[0], gens[3]));
        assert_eq!((g.first(), g.second()), (corners[2], gens[2]));
        let r = pos_tr(&p, n);
        assert_eq!((pos_infty_triple(&f), pos_infty_triple(&g)), (r + 1, r));

        let p = pair(2, 0);
        let (f, g) = bn_preimage(&p);
        assert_eq!((f.first(), f.second()), (corners[1], gens[2]));
        assert_eq!((g.first(), g.second()), (corners[1], gens[0]));
        let r = pos_tr(&p, n);
        assert_eq!((pos_infty_triple(&f), pos_infty_triple(&g)), (r + 1, r));
    }

    #[test]
    fn bn_is_two_to_one() {
        for n in 0..=8 {
            let rep = verify_bn(n);
            assert!(rep.ok(), "{rep:?}");
            assert_eq!(rep.pairs, enumerate_tr(n).len());
            let flags = if n == 0 { 0 } else { enumerate_flags3(n - 1).len() };
            assert_eq!(rep.flags, flags);
        }
    }

    #[test]
    fn bn_inverse_lookup() {
        for t in enumerate_flags3(4) {
            let p = bn_image(&t).unwrap();
            let (f, g) = bn_preimage(&p);
            assert!(f == t || g == t);
        }
    }

    #[test]
    fn triple_polynomial_through_bn() {
        let s = product_family(Family::Threeflag, 8);
        for n in 0..8 {
            let lhs = QPoly::from_exponents(enumerate_flags3(n).iter().map(pos_infty_triple));
            let rhs = &"1 + q".parse::<QPoly>().unwrap() * &tr_poly(n + 1);
            assert_eq!(lhs, rhs, "n = {n}");
            assert_eq!(s.coeff(n), &lhs);
        }
    }

    #[test]
    fn section() {
        let p = Pair13::new(yd(&[1]), yd(&[2, 1])).unwrap();
        assert_eq!(sn(&p).first(), Cell::new(1, 0));
        let p = Pair13::new(yd(&[1]), yd(&[3])).unwrap();
        assert_eq!(sn(&p).first(), Cell::new(0, 1));
        for n in 0..=7 {
            for p in enumerate_pair13(n) {
                let t = sn(&p);
                assert_eq!((t.base(), t.top()), (p.inner(), p.outer()));
            }
        }
    }

    #[test]
    fn pair13_polynomials() {
        assert_eq!(poincare_pair13(0), "1 + q".parse().unwrap());
        assert_eq!(poincare_pair13(1), "1 + q + q^2".parse().unwrap());
        let s = product_family(Family::Pair13, 8);
        for n in 0..8 {
            assert_eq!(s.coeff(n), &poincare_pair13(n), "n = {n}");
        }
    }
}
