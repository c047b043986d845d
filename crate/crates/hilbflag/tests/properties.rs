use std::collections::BTreeSet;

use hilbflag::correspond::{enumerate_pair13, sn};
use hilbflag::series::{QPoly, ZSeries};
use hilbflag::strata::{dim_gt, dim_mt, normal_pattern_diagram, type_of};
use hilbflag::tangent::{basis_pair, basis_single, basis_triple, notp, TangentVector};
use hilbflag::weights::*;
use hilbflag::young::{Flag2, Flag3, YoungDiagram};
use proptest::prelude::*;

fn diagram() -> impl Strategy<Value = YoungDiagram> {
    prop::collection::vec(1usize..7, 0..7).prop_map(|mut h| {
        h.sort_unstable_by(|a, b| b.cmp(a));
        YoungDiagram::from_column_heights(h).unwrap()
    })
}

fn flag2() -> impl Strategy<Value = Flag2> {
    (diagram(), any::<prop::sample::Index>()).prop_map(|(d, i)| {
        let g = d.generators();
        let a = g[i.index(g.len())];
        Flag2::new(d, a).unwrap()
    })
}

fn flag3() -> impl Strategy<Value = Flag3> {
    (flag2(), any::<prop::sample::Index>()).prop_map(|(f, i)| {
        let g = f.top().generators();
        let b = g[i.index(g.len())];
        Flag3::new(f.base().clone(), f.added(), b).unwrap()
    })
}

fn distinct(b: &[TangentVector]) -> bool {
    let keys: BTreeSet<_> = b.iter().map(|v| (format!("{:?}", v.kind), v.src, v.tgt)).collect();
    keys.len() == b.len()
}

fn qpoly() -> impl Strategy<Value = QPoly> {
    prop::collection::vec(-3i64..4, 0..4).prop_map(QPoly::from_coeffs)
}

fn zseries(order: usize) -> impl Strategy<Value = ZSeries> {
    prop::collection::vec(qpoly(), order + 1).prop_map(move |c| ZSeries::new(order, c))
}

proptest! {
    #[test]
    fn transpose_symmetries(d in diagram()) {
        let t = d.transpose();
        prop_assert_eq!(t.diagonal_sequence(), d.diagonal_sequence());
        for c in d.cells() {
            prop_assert_eq!(t.hook_difference(c.transpose()).unwrap(), -d.hook_difference(c).unwrap());
        }
    }

    #[test]
    fn generators_alternate(d in diagram()) {
        let g = d.generators();
        for w in g.windows(2) {
            prop_assert!(w[0].u > w[1].u && w[0].v < w[1].v);
        }
        for c in &g {
            prop_assert!(d.with_cell(*c).is_ok());
        }
        for c in d.corners().unwrap_or_default() {
            prop_assert!(d.without_cell(c).is_ok());
        }
    }

    #[test]
    fn basis_sizes(f in flag3()) {
        let n = f.n();
        let b1 = basis_single(f.base());
        let b2 = basis_pair(f.lower());
        let b3 = basis_triple(&f);
        prop_assert_eq!(b1.len(), 2 * n);
        prop_assert_eq!(b2.len(), 2 * n + 2);
        prop_assert_eq!(b3.len(), 2 * n + if f.is_case_b() { 4 } else { 5 });
        prop_assert!(distinct(&b1) && distinct(&b2) && distinct(&b3));
        prop_assert!(b3.iter().all(|v| v.weight() != (0, 0)));
        if !f.is_case_b() {
            prop_assert_eq!(notp(&f).len(), 1);
        }
    }

    #[test]
    fn single_pos_forms(d in diagram()) {
        let n = d.size().max(1);
        let b = basis_single(&d);
        prop_assert_eq!(pos_infty_single(&d), pos_count(&b, &TorusSpec::infinity(n)));
        prop_assert_eq!(pos_oneplus_single_m(&d), pos_count(&b, &TorusSpec::oneplus(n)));
        prop_assert_eq!(pos_oneplus_single_g(&d), tangent_count(&b, Stratum::G, true));
    }

    #[test]
    fn pair_pos_forms(f in flag2()) {
        let b = basis_pair(&f);
        let n = f.n() + 1;
        prop_assert_eq!(pos_infty_pair(&f), pos_count(&b, &TorusSpec::infinity(n)));
        prop_assert_eq!(pos_oneplus_pair_marks(&f), pos_count(&b, &TorusSpec::oneplus(n)));
    }

    #[test]
    fn triple_pos_forms(t in flag3()) {
        let b = basis_triple(&t);
        let n = t.n() + 2;
        let direct = pos_count(&b, &TorusSpec::oneplus(n));
        prop_assert_eq!(pos_infty_triple(&t), pos_count(&b, &TorusSpec::infinity(n)));
        prop_assert_eq!(pos_oneplus_triple(&t), direct);
        prop_assert_eq!(pos_oneplus_triple_marks(&t), direct);
    }

    #[test]
    fn types_round_trip(d in diagram()) {
        let t = type_of(&d);
        prop_assert!(t.is_admissible());
        prop_assert_eq!(type_of(&normal_pattern_diagram(&t).unwrap()), t.clone());
        prop_assert!(dim_mt(&t) >= dim_gt(&t));
    }

    #[test]
    fn series_ring_laws(a in zseries(4), b in zseries(4), c in zseries(4)) {
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
    }

    #[test]
    fn wall_identities(d in diagram(), num in 2i64..9, den in 1i64..4) {
        let w = Rational::new(num, den);
        prop_assume!(w > Rational::from_integer(1));
        let b = basis_single(&d);
        let at = pos_count(&b, &TorusSpec::at_wall(w, Side::Exact));
        prop_assert_eq!(pos_count(&b, &TorusSpec::at_wall(w, Side::Plus)), at + s_plus(&b, w));
        prop_assert_eq!(pos_count(&b, &TorusSpec::at_wall(w, Side::Minus)), at + s_minus(&b, w));
    }
}

#[test]
fn sections_are_flags() {
    for n in 0..=9 {
        for p in enumerate_pair13(n) {
            let t = sn(&p);
            assert_eq!((t.base(), t.top()), (p.inner(), p.outer()));
        }
    }
}
