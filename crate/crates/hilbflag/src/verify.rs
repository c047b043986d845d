//! The ten acceptance criteria as runnable checks.

use std::collections::BTreeSet;
use std::fmt;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::chi::{chi_checks, ChiFamily};
use crate::correspond::{enumerate_tr, poincare_pair13, pos_tr, tr_poly, verify_bn};
use crate::series::{product_family, Family, QPoly};
use crate::strata::{admissible_flag_types, admissible_types, dim_flag, dim_mt, poincare_stratum, HSFlagType, HSType};
use crate::tangent::{basis_pair, basis_single, basis_triple};
use crate::wallcross::{orbits, sweep, verify_wall, Degree, Point};
use crate::weights::*;
use crate::young::{enumerate_flags2, enumerate_flags3, enumerate_partitions, YoungDiagram};

/// Largest `n` per criterion.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct Limits {
    pub single: usize,
    pub pair: usize,
    pub basis: usize,
    pub forms: usize,
    pub triple: usize,
    pub pair13: usize,
    pub walls: usize,
    pub bn: usize,
    pub strata: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { single: 12, pair: 12, basis: 8, forms: 8, triple: 8, pair13: 8, walls: 7, bn: 9, strata: 8 }
    }
}

impl Limits {
    /// Every range cut at `max_n`. Fixed goldens are still checked.
    pub fn capped(max_n: usize) -> Self {
        let d = Limits::default();
        let c = |x: usize| x.min(max_n);
        Limits {
            single: c(d.single),
            pair: c(d.pair),
            basis: c(d.basis),
            forms: c(d.forms),
            triple: c(d.triple),
            pair13: c(d.pair13),
            walls: c(d.walls),
            bn: c(d.bn),
            strata: c(d.strata),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CriterionResult {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub millis: u128,
}

impl fmt::Display for CriterionResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "[{verdict}] {:>2}. {}: {} ({} ms)", self.id, self.name, self.detail, self.millis)
    }
}

pub const NAMES: [&str; 10] = [
    "single polynomials",
    "pair polynomials",
    "basis cardinalities",
    "closed forms vs direct counts",
    "triple polynomials",
    "pairs with a gap",
    "wall crossing",
    "b_n correspondence",
    "stratum dimensions",
    "chi cross-checks",
];

type Outcome = Result<String, String>;

fn check(cond: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what())
    }
}

pub fn run(id: usize, lim: &Limits) -> CriterionResult {
    assert!((1..=10).contains(&id), "criteria are numbered 1 to 10");
    let start = Instant::now();
    let out = match id {
        1 => single_polys(lim.single),
        2 => pair_polys(lim.pair),
        3 => cardinalities(lim.basis),
        4 => closed_forms(lim.forms),
        5 => triple_polys(lim.triple),
        6 => pair13(lim.pair13),
        7 => wall_crossing(lim.walls),
        8 => correspondence(lim.bn),
        9 => stratum_dims(lim.strata),
        _ => chi(),
    };
    let (passed, detail) = match out {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    CriterionResult { id, name: NAMES[id - 1], passed, detail, millis: start.elapsed().as_millis() }
}

pub fn run_all(lim: &Limits) -> Vec<CriterionResult> {
    (1..=10).map(|id| run(id, lim)).collect()
}

fn single_polys(max: usize) -> Outcome {
    let series = product_family(Family::Goettsche, max);
    for n in 0..=max {
        let parts = enumerate_partitions(n);
        let by_length = QPoly::from_exponents(parts.iter().map(|d| n - d.len()));
        let by_hooks = QPoly::from_exponents(parts.iter().map(pos_oneplus_single_m));
        let by_strata: QPoly =
            admissible_types(n).into_iter().map(|t| poincare_stratum(&HSFlagType::new(vec![t]), Stratum::M)).sum();
        let expected = series.coeff(n);
        for (label, p) in [("length", &by_length), ("hooks", &by_hooks), ("strata", &by_strata)] {
            check(p == expected, || format!("n={n}: {label} sum {p} vs series {expected}"))?;
        }
    }
    Ok(format!("n <= {max}, four expressions agree"))
}

fn pair_polys(max: usize) -> Outcome {
    let series = product_family(Family::Cheah, max);
    for n in 0..=max {
        let p = QPoly::from_exponents(enumerate_flags2(n).iter().map(pos_infty_pair));
        check(&p == series.coeff(n), || format!("n={n}: {p} vs {}", series.coeff(n)))?;
    }
    Ok(format!("n <= {max}"))
}

fn cardinalities(max: usize) -> Outcome {
    let mut seen = 0usize;
    for n in 0..=max {
        for d in enumerate_partitions(n).iter() {
            check(basis_single(d).len() == 2 * n, || format!("single {d}"))?;
        }
        for f in enumerate_flags2(n) {
            check(basis_pair(&f).len() == 2 * n + 2, || format!("pair {} + {:?}", f.base(), f.added()))?;
        }
        for t in enumerate_flags3(n) {
            let want = 2 * n + if t.is_case_b() { 4 } else { 5 };
            check(basis_triple(&t).len() == want, || format!("triple {} {:?} {:?}", t.base(), t.first(), t.second()))?;
            seen += 1;
        }
    }
    Ok(format!("n <= {max}, {seen} triples"))
}

fn closed_forms(max: usize) -> Outcome {
    let mut points = 0usize;
    for n in 0..=max {
        let (inf, one) = (TorusSpec::infinity(n.max(1)), TorusSpec::oneplus(n.max(1)));
        for d in enumerate_partitions(n).iter() {
            let b = basis_single(d);
            check(pos_infty_single(d) == pos_count(&b, &inf), || format!("single infinity {d}"))?;
            check(pos_oneplus_single_m(d) == pos_count(&b, &one), || format!("single 1+ {d}"))?;
            check(pos_oneplus_single_g(d) == tangent_count(&b, Stratum::G, true), || format!("single G {d}"))?;
            points += 1;
        }
        let (inf, one) = (TorusSpec::infinity(n + 1), TorusSpec::oneplus(n + 1));
        let bad = enumerate_flags2(n).into_par_iter().find_any(|f| {
            let b = basis_pair(f);
            pos_infty_pair(f) != pos_count(&b, &inf)
                || pos_oneplus_pair_marks(f) != pos_count(&b, &one)
                || pos_oneplus_pair_marks_g(f) != tangent_count(&b, Stratum::G, true)
        });
        check(bad.is_none(), || format!("pair {:?}", bad.map(|f| (f.base().to_string(), f.added()))))?;
        points += enumerate_flags2(n).len();
        let (inf, one) = (TorusSpec::infinity(n + 2), TorusSpec::oneplus(n + 2));
        let triples = enumerate_flags3(n);
        let bad = triples.par_iter().find_any(|t| {
            let b = basis_triple(t);
            let direct = pos_count(&b, &one);
            pos_infty_triple(t) != pos_count(&b, &inf)
                || pos_oneplus_triple(t) != direct
                || pos_oneplus_triple_marks(t) != direct
                || pos_oneplus_triple_marks_g(t) != tangent_count(&b, Stratum::G, true)
        });
        check(bad.is_none(), || format!("triple {:?}", bad.map(|t| (t.base().to_string(), t.first(), t.second()))))?;
        points += triples.len();
    }
    Ok(format!("n <= {max}, {points} fixed points"))
}

fn triple_polys(max: usize) -> Outcome {
    let series = product_family(Family::Threeflag, max);
    let one_plus_q = QPoly::from_coeffs([1, 1]);
    for n in 0..=max {
        let triples = enumerate_flags3(n);
        let one = TorusSpec::oneplus(n + 2);
        let by_oneplus = QPoly::from_exponents(triples.iter().map(|t| pos_count(&basis_triple(t), &one)));
        let by_infty = QPoly::from_exponents(triples.iter().map(pos_infty_triple));
        let by_tr = &one_plus_q * &tr_poly(n + 1);
        let expected = series.coeff(n);
        for (label, p) in [("1+", &by_oneplus), ("infinity", &by_infty), ("tr", &by_tr)] {
            check(p == expected, || format!("n={n}: {label} gives {p}, series {expected}"))?;
        }
    }
    Ok(format!("n <= {max}"))
}

fn pair13(max: usize) -> Outcome {
    let series = product_family(Family::Pair13, max.max(1));
    check(series.coeff(0) == &QPoly::from_coeffs([1, 1]), || "z^0 is not 1 + q".into())?;
    check(series.coeff(1) == &QPoly::from_coeffs([1, 1, 1]), || "z^1 is not 1 + q + q^2".into())?;
    for n in 0..=max {
        let p = poincare_pair13(n);
        check(&p == series.coeff(n), || format!("n={n}: {p} vs {}", series.coeff(n)))?;
    }
    Ok(format!("n <= {max}, spot values z^0, z^1"))
}

fn yd(h: &[usize]) -> Point {
    Point::Single(YoungDiagram::from_column_heights(h.to_vec()).expect("golden diagram"))
}

fn wall_crossing(max: usize) -> Outcome {
    let mut walls = 0;
    let one_plus_q = QPoly::from_coeffs([1, 1]);
    for degree in Degree::ALL {
        let reports: Vec<_> = (1..=max).into_par_iter().map(|n| sweep(n, degree)).collect();
        for r in reports {
            walls += r.walls.len();
            let first = r.violations.iter().chain(r.walls.iter().flat_map(|w| &w.violations)).next();
            check(r.ok(), || format!("{degree:?} n={}: {}", r.n, first.cloned().unwrap_or_default()))?;
            check(r.poly_infty == r.poly_oneplus, || format!("{degree:?} n={}: tori disagree", r.n))?;
            if degree == Degree::Triple {
                let want = &one_plus_q * &tr_poly(r.n + 1);
                check(r.poly_oneplus == want, || format!("triple n={}: sweep {} vs {want}", r.n, r.poly_oneplus))?;
            }
        }
    }
    let two = Rational::from_integer(2);
    // two orbits at n = 3
    let mut got: Vec<BTreeSet<Point>> =
        orbits(3, Degree::Single, two).into_iter().map(|o| o.members.into_iter().collect()).collect();
    got.sort();
    let mut want = vec![BTreeSet::from([yd(&[3])]), BTreeSet::from([yd(&[2, 1]), yd(&[1, 1, 1])])];
    want.sort();
    check(got == want, || "n=3 orbits differ".into())?;
    // the eight-element orbit at n = 10
    let staircase = yd(&[4, 3, 2, 1]);
    let orbit = orbits(10, Degree::Single, two)
        .into_iter()
        .find(|o| o.members.contains(&staircase))
        .ok_or("no orbit through the staircase")?;
    let members: BTreeSet<Point> = orbit.members.iter().cloned().collect();
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
    .map(|h| yd(h))
    .collect();
    check(members == expected, || format!("n=10 orbit has {} members", members.len()))?;
    let mut dist: Vec<(usize, usize)> =
        orbit.members.iter().map(|x| (s_plus(&x.basis(), two), s_minus(&x.basis(), two))).collect();
    dist.sort();
    check(dist == [(0, 3), (1, 2), (1, 2), (1, 2), (2, 1), (2, 1), (2, 1), (3, 0)], || format!("distribution {dist:?}"))?;
    let r = verify_wall(10, Degree::Single, two);
    check(r.ok(), || format!("n=10 W=2: {}", r.violations.first().cloned().unwrap_or_default()))?;
    Ok(format!("n <= {max}, {walls} walls over three degrees; n=3 and n=10 goldens"))
}

fn correspondence(max: usize) -> Outcome {
    let one_plus_q = QPoly::from_coeffs([1, 1]);
    let reports: Vec<_> = (1..=max).into_par_iter().map(verify_bn).collect();
    for r in reports {
        check(r.ok(), || format!("n={}: {}", r.n, r.violations.first().cloned().unwrap_or_default()))?;
        let n = r.n;
        // each pair contributes q^r + q^(r+1)
        let via_fibres: QPoly = enumerate_tr(n).iter().map(|p| &one_plus_q * &QPoly::monomial(pos_tr(p, n))).sum();
        let direct = QPoly::from_exponents(enumerate_flags3(n - 1).iter().map(pos_infty_triple));
        check(via_fibres == direct, || format!("n={n}: fibres give {via_fibres}, flags give {direct}"))?;
    }
    Ok(format!("n <= {max}, exactly 2:1 with fibre values {{r, r+1}}"))
}

fn stratum_dims(max: usize) -> Outcome {
    let ty = |t: &[usize]| HSType::new(t.to_vec());
    let ft = |ts: &[&[usize]]| HSFlagType::new(ts.iter().map(|t| ty(t)).collect());
    check(dim_mt(&ty(&[1, 2, 1])) == 2, || "(1,2,1)".into())?;
    check(dim_mt(&ty(&[1, 1, 1, 1])) == 3, || "(1,1,1,1)".into())?;
    let goldens: [(&[&[usize]], usize); 8] = [
        (&[&[1, 1, 1, 1], &[1, 1, 1, 1, 1]], 4),
        (&[&[1, 1, 1, 1], &[1, 2, 1, 1]], 3),
        (&[&[1, 2, 1], &[1, 2, 1, 1]], 3),
        (&[&[1, 2, 1], &[1, 2, 2]], 3),
        (&[&[1, 1, 1, 1], &[1, 1, 1, 1, 1], &[1, 1, 1, 1, 1, 1]], 5),
        (&[&[1, 2, 1], &[1, 2, 1, 1], &[1, 2, 1, 1, 1]], 4),
        (&[&[1, 2, 1], &[1, 2, 2], &[1, 2, 2, 1]], 5),
        (&[&[1, 2, 1], &[1, 2, 2], &[1, 2, 3]], 3),
    ];
    for (parts, want) in goldens {
        let t = ft(parts);
        let got = dim_flag(&t, Stratum::M).map_err(|e| e.to_string())?;
        check(got == want, || format!("{t}: {got}, expected {want}"))?;
    }
    let mut types = 0;
    for depth in 1..=3 {
        for n in 0..=max.saturating_sub(depth - 1) {
            let all = admissible_flag_types(n, depth);
            types += all.len();
            for family in [Stratum::M, Stratum::G] {
                let err = all.par_iter().find_map_any(|t| dim_flag(t, family).err());
                check(err.is_none(), || err.map(|e| e.to_string()).unwrap_or_default())?;
            }
        }
    }
    Ok(format!("goldens; {types} types up to size {max} constant across fixed points"))
}

/// Mismatches the reference data is known to contain; the chain counts
/// behind them are confirmed independently in the tests.
pub const KNOWN_CHI_DISCREPANCIES: [(ChiFamily, usize, i64, u64); 2] =
    [(ChiFamily::Flag4, 3, 48, 52), (ChiFamily::Flag7, 1, 231, 232)];

fn chi() -> Outcome {
    let mut reported = Vec::new();
    let mut total = 0;
    for fam in ChiFamily::ALL {
        for c in chi_checks(fam) {
            total += 1;
            if !c.matches() {
                let at_one = i64::try_from(&c.at_one).map_err(|e| e.to_string())?;
                reported.push((c.family, c.n, at_one, c.chains));
            }
        }
    }
    let text: Vec<String> =
        reported.iter().map(|(f, n, p, c)| format!("{f} n={n}: P(1)={p} vs {c} chains")).collect();
    check(reported == KNOWN_CHI_DISCREPANCIES, || format!("unexpected discrepancy set: {}", text.join("; ")))?;
    Ok(format!("{} of {total} match; discrepancies reported: {}", total - reported.len(), text.join("; ")))
}
