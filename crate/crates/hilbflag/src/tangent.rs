//! Weight bases of tangent spaces at torus fixed points.
//!
//! A vector is reduced to its kind, its source generator and target box;
//! the weight is `target - source`. The extensions of an `f_{α,β}` to the
//! higher steps of a flag have the same weight and are not stored.

use std::collections::BTreeSet;

use serde::{Serialize, Serializer};

use crate::young::{p_gap, q_gap, Cell, Flag2, Flag3, StepCase, YoungDiagram};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Kind {
    /// Translation `f_{α,β}` of the smallest diagram.
    F,
    /// `h_{α'_i, α_j}`: a generator of `Γ₂` onto the first added box.
    H2,
    /// `h_{α''_i, α'_l}`: a generator of `Γ₃` onto the second added box.
    H3,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TangentVector {
    pub kind: Kind,
    pub src: Cell,
    pub tgt: Cell,
}

impl TangentVector {
    pub fn new(kind: Kind, src: Cell, tgt: Cell) -> Self {
        TangentVector { kind, src, tgt }
    }

    /// `(Δx, Δy) = tgt - src`.
    pub fn weight(&self) -> (i32, i32) {
        self.tgt.minus(self.src)
    }

    /// Change of total degree.
    pub fn degree(&self) -> i32 {
        let (dx, dy) = self.weight();
        dx + dy
    }
}

impl Serialize for TangentVector {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let (dx, dy) = self.weight();
        let mut st = s.serialize_struct("TangentVector", 4)?;
        st.serialize_field("kind", &self.kind)?;
        st.serialize_field("src", &self.src)?;
        st.serialize_field("tgt", &self.tgt)?;
        st.serialize_field("w", &[dx, dy])?;
        st.end()
    }
}

/// A set of `(generator, target)` pairs, kept sorted.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ObstructionSet {
    pub pairs: BTreeSet<(Cell, Cell)>,
}

impl ObstructionSet {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn contains(&self, src: Cell, tgt: Cell) -> bool {
        self.pairs.contains(&(src, tgt))
    }
}

impl FromIterator<(Cell, Cell)> for ObstructionSet {
    fn from_iter<I: IntoIterator<Item = (Cell, Cell)>>(iter: I) -> Self {
        ObstructionSet { pairs: iter.into_iter().collect() }
    }
}

/// `P_{α_i}` and `Q_{α_i}` for the `i`-th generator of `Γ`.
pub fn pq_sets(d: &YoungDiagram, i: usize) -> (Vec<Cell>, Vec<Cell>) {
    let gens = d.generators();
    let a = gens[i];
    let cells = d.cells();
    let p = match p_gap(&gens, i) {
        Some(p) => cells
            .iter()
            .copied()
            .filter(|b| b.u < a.u && !d.contains(b.shift(0, p)))
            .collect(),
        None => Vec::new(),
    };
    let q = match q_gap(&gens, i) {
        Some(q) => cells
            .iter()
            .copied()
            .filter(|b| b.v < a.v && !d.contains(b.shift(q, 0)))
            .collect(),
        None => Vec::new(),
    };
    (p, q)
}

/// `B(Γ)`: every `f_{α,β}` with `β ∈ P_α ∪ Q_α`.
pub fn basis_single(d: &YoungDiagram) -> Vec<TangentVector> {
    let gens = d.generators();
    let mut out = Vec::with_capacity(2 * d.size());
    for (i, &a) in gens.iter().enumerate() {
        let (p, q) = pq_sets(d, i);
        out.extend(p.into_iter().chain(q).map(|b| TangentVector::new(Kind::F, a, b)));
    }
    out
}

/// Pairs of `B(Γ₁)` that do not extend across `Γ₁ ⊂ Γ₁ ∪ {α_j}`.
pub fn obs12(f: &Flag2) -> ObstructionSet {
    let gens = f.base().generators();
    let j = f.j();
    let aj = f.added();
    let (x_skip, y_skip) = match f.case() {
        StepCase::OneA => (0, 1),
        StepCase::OneB => (1, 0),
        StepCase::Two => (0, 0),
        StepCase::Three => (1, 1),
    };
    let mut pairs = BTreeSet::new();
    for (i, &a) in gens.iter().enumerate() {
        if i > j + x_skip {
            let q = q_gap(&gens, i).expect("i > 0");
            pairs.insert((a, aj.shift(-q, 0)));
        }
        if i + y_skip < j {
            let p = p_gap(&gens, i).expect("i < s");
            pairs.insert((a, aj.shift(0, -p)));
        }
    }
    ObstructionSet { pairs }
}

/// The same construction one step up: `Obs(Γ₂, Γ₃)`.
pub fn obs23(t: &Flag3) -> ObstructionSet {
    obs12(t.upper())
}

/// The obstruction of `Γ₂ ⊂ Γ₃` produced by the earlier step, which must
/// not be pulled back to `B(Γ₁)`.
pub fn notp(t: &Flag3) -> ObstructionSet {
    let aj = t.first();
    let al = t.second();
    let o23 = obs23(t);
    if t.is_case_b() {
        return o23.pairs.iter().copied().filter(|&(_, b)| b == aj).collect();
    }
    let gens1 = t.base().generators();
    let gens2 = t.middle().generators();
    let j = t.lower().j();
    let case = t.lower().case();
    let idx2 = |g: Cell| gens2.iter().position(|&x| x == g).expect("generator of the middle diagram");
    let pair = if aj.u > al.u {
        let g = match case {
            StepCase::OneA | StepCase::Three => gens1[j - 1],
            StepCase::OneB | StepCase::Two => aj.shift(1, 0),
        };
        let p = p_gap(&gens2, idx2(g)).expect("not the last generator");
        (g, al.shift(0, -p))
    } else {
        let g = match case {
            StepCase::OneA | StepCase::Two => aj.shift(0, 1),
            StepCase::OneB | StepCase::Three => gens1[j + 1],
        };
        let q = q_gap(&gens2, idx2(g)).expect("not the first generator");
        (g, al.shift(-q, 0))
    };
    debug_assert!(o23.pairs.contains(&pair), "NotP element must lie in Obs23");
    [pair].into_iter().collect()
}

/// Translation taking a generator of `Γ₂` back to one of `Γ₁`.
fn prec_shift(t: &Flag3, src: Cell) -> (i32, i32) {
    let aj = t.first();
    if src == aj.shift(1, 0) {
        (1, 0)
    } else if src == aj.shift(0, 1) {
        (0, 1)
    } else {
        (0, 0)
    }
}

/// Pull-back of `Obs(Γ₂, Γ₃) ∖ NotP` to pairs of `B(Γ₁)`.
pub fn pobs(t: &Flag3) -> ObstructionSet {
    let skip = notp(t);
    obs23(t)
        .pairs
        .into_iter()
        .filter(|&(a, b)| !skip.contains(a, b))
        .map(|(a, b)| {
            let (du, dv) = prec_shift(t, a);
            (a.shift(-du, -dv), b.shift(-du, -dv))
        })
        .collect()
}

/// `B(Γ₁, Γ₂)`; has `2n + 2` elements.
pub fn basis_pair(f: &Flag2) -> Vec<TangentVector> {
    let obs = obs12(f);
    let mut out: Vec<TangentVector> = basis_single(f.base())
        .into_iter()
        .filter(|v| !obs.contains(v.src, v.tgt))
        .collect();
    out.extend(f.top().generators().into_iter().map(|g| TangentVector::new(Kind::H2, g, f.added())));
    out
}

/// `B(Γ₁, Γ₂, Γ₃)`; `2n + 5` elements in case a, `2n + 4` in case b.
pub fn basis_triple(t: &Flag3) -> Vec<TangentVector> {
    let o12 = obs12(t.lower());
    let o23 = obs23(t);
    let po = pobs(t);
    let mut out: Vec<TangentVector> = basis_single(t.base())
        .into_iter()
        .filter(|v| !o12.contains(v.src, v.tgt) && !po.contains(v.src, v.tgt))
        .collect();
    out.extend(
        t.middle()
            .generators()
            .into_iter()
            .filter(|&g| !o23.contains(g, t.first()))
            .map(|g| TangentVector::new(Kind::H2, g, t.first())),
    );
    out.extend(t.top().generators().into_iter().map(|g| TangentVector::new(Kind::H3, g, t.second())));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::young::{enumerate_flags2, enumerate_flags3, enumerate_partitions};

    fn yd(h: &[usize]) -> YoungDiagram {
        YoungDiagram::from_column_heights(h.to_vec()).unwrap()
    }

    #[test]
    fn pq_small() {
        let (p, q) = pq_sets(&yd(&[1]), 0);
        assert_eq!((p, q), (vec![Cell::new(0, 0)], vec![]));
        // the maximal ideal squared: nothing sends x^2 to 1
        let m2 = yd(&[2, 1]);
        let (p, q) = pq_sets(&m2, 0);
        assert!(!p.contains(&Cell::new(0, 0)) && !q.contains(&Cell::new(0, 0)));
    }

    #[test]
    fn pq_totals() {
        for n in 0..=8 {
            for d in enumerate_partitions(n).iter() {
                let s = d.generators().len();
                let (mut np, mut nq) = (0, 0);
                for i in 0..s {
                    let (p, q) = pq_sets(d, i);
                    np += p.len();
                    nq += q.len();
                }
                assert_eq!((np, nq), (n, n), "{d}");
            }
        }
    }

    #[test]
    fn single_sizes() {
        assert_eq!(basis_single(&yd(&[1])).len(), 2);
        assert_eq!(basis_single(&yd(&[2, 1])).len(), 6);
        assert!(enumerate_partitions(8).iter().all(|d| basis_single(d).len() == 16));
    }

    #[test]
    fn obs_example_m2() {
        let f = Flag2::new(yd(&[2, 1]), Cell::new(0, 2)).unwrap();
        assert!(obs12(&f).contains(Cell::new(2, 0), Cell::new(0, 1)));
    }

    #[test]
    fn obs_single_column_case2() {
        let f = Flag2::new(yd(&[4]), Cell::new(1, 0)).unwrap();
        assert_eq!(f.case(), StepCase::Two);
        let s1 = f.base().generators().len() - 1;
        assert_eq!(obs12(&f).len(), s1);
        assert_eq!(obs12(&f).len(), f.top().generators().len() - 2);
    }

    #[test]
    fn obs_corner_case2() {
        let f = Flag2::new(yd(&[3, 3]), Cell::new(2, 0)).unwrap();
        assert_eq!((f.j(), f.case()), (0, StepCase::Two));
        let gens = f.base().generators();
        let want: BTreeSet<_> =
            (1..gens.len()).map(|i| (gens[i], f.added().shift(-q_gap(&gens, i).unwrap(), 0))).collect();
        assert_eq!(obs12(&f).pairs, want);
    }

    #[test]
    fn obs_pairs_lie_in_single_basis() {
        for n in 0..=6 {
            for f in enumerate_flags2(n) {
                let b: BTreeSet<_> = basis_single(f.base()).iter().map(|v| (v.src, v.tgt)).collect();
                let o = obs12(&f);
                assert!(o.pairs.iter().all(|p| b.contains(p)), "{f:?}");
                assert_eq!(o.len() + 2, f.top().generators().len(), "{f:?}");
            }
        }
    }

    #[test]
    fn pair_sizes() {
        let f = Flag2::new(yd(&[1]), Cell::new(0, 1)).unwrap();
        assert_eq!(basis_pair(&f).len(), 4);
        for n in 0..=6 {
            for f in enumerate_flags2(n) {
                let b = basis_pair(&f);
                assert_eq!(b.len(), 2 * n + 2);
                let h = b.iter().filter(|v| v.kind == Kind::H2).count();
                assert_eq!(h, f.top().generators().len());
            }
        }
    }

    #[test]
    fn triple_notp_and_pobs() {
        for n in 0..=6 {
            for t in enumerate_flags3(n) {
                let np = notp(&t);
                if !t.is_case_b() {
                    assert_eq!(np.len(), 1);
                }
                let po = pobs(&t);
                assert_eq!(po.len(), obs23(&t).len() - np.len(), "{t:?}");
                let b1: BTreeSet<_> = basis_single(t.base()).iter().map(|v| (v.src, v.tgt)).collect();
                let o12 = obs12(t.lower());
                for p in &po.pairs {
                    assert!(b1.contains(p) && !o12.pairs.contains(p), "{t:?} {p:?}");
                }
            }
        }
    }

    #[test]
    fn notp_case_a_geometric_rule() {
        // g is the generator of Γ₂ nearest to α_j on the far side from α'_l
        for n in 0..=6 {
            for t in enumerate_flags3(n).into_iter().filter(|t| !t.is_case_b()) {
                let (aj, al) = (t.first(), t.second());
                let gens2 = t.middle().generators();
                let g = if aj.u > al.u {
                    gens2.iter().copied().filter(|g| g.u > aj.u).min_by_key(|g| g.u)
                } else {
                    gens2.iter().copied().filter(|g| g.v > aj.v).min_by_key(|g| g.v)
                }
                .unwrap();
                let (src, _) = *notp(&t).pairs.iter().next().unwrap();
                assert_eq!(src, g, "{t:?}");
            }
        }
    }

    #[test]
    fn triple_sizes() {
        let t = Flag3::new(yd(&[1]), Cell::new(0, 1), Cell::new(0, 2)).unwrap();
        assert!(t.is_case_b());
        assert_eq!(basis_triple(&t).len(), 6);
        for n in 0..=6 {
            for t in enumerate_flags3(n) {
                let want = if t.is_case_b() { 2 * n + 4 } else { 2 * n + 5 };
                assert_eq!(basis_triple(&t).len(), want, "{t:?}");
            }
        }
    }

    #[test]
    fn json_dump() {
        let b = basis_single(&yd(&[1]));
        assert_eq!(
            serde_json::to_string(&b[0]).unwrap(),
            r#"{"kind":"F","src":[1,0],"tgt":[0,0],"w":[-1,0]}"#
        );
    }
}
