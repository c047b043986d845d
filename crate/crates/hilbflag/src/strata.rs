//! Hilbert-Samuel types, their strata and dimensions.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::series::QPoly;
use crate::weights::{
    pos_oneplus_pair_marks, pos_oneplus_pair_marks_g, pos_oneplus_single_g, pos_oneplus_single_m,
    pos_oneplus_triple, pos_oneplus_triple_marks_g, tangent_dim_pair, tangent_dim_triple, Stratum,
};
use crate::young::{enumerate_flags2, enumerate_flags3, enumerate_partitions, Cell, Flag2, Flag3, YoungDiagram};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum StrataError {
    #[error("type {0} is not admissible")]
    NotAdmissible(String),
    #[error("no fixed point has type {0}")]
    Empty(String),
    #[error("tangent dimension varies across {ty}: {values:?}")]
    NotConstant { ty: String, values: Vec<usize> },
}

/// Sequence of antidiagonal counts, trailing zeros trimmed.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct HSType(Vec<usize>);

impl HSType {
    pub fn new(mut t: Vec<usize>) -> Self {
        while t.last() == Some(&0) {
            t.pop();
        }
        HSType(t)
    }

    pub fn t(&self, i: isize) -> usize {
        if i < 0 {
            0
        } else {
            self.0.get(i as usize).copied().unwrap_or(0)
        }
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    /// First index with `t_d < d + 1`.
    pub fn initial_degree(&self) -> usize {
        (0..).find(|&d| self.t(d as isize) < d + 1).unwrap()
    }

    pub fn is_admissible(&self) -> bool {
        let d = self.initial_degree();
        (0..d).all(|i| self.0[i] == i + 1)
            && self.0[d.min(self.0.len())..].windows(2).all(|w| w[0] >= w[1])
    }
}

impl fmt::Display for HSType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|t| t.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

pub fn is_admissible(t: &[usize]) -> bool {
    HSType::new(t.to_vec()).is_admissible()
}

/// All admissible types of size `n`: a staircase followed by a partition of
/// the remainder into parts at most `d`.
pub fn admissible_types(n: usize) -> Vec<HSType> {
    fn tails(r: usize, max: usize, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if r == 0 {
            out.push(acc.clone());
            return;
        }
        for p in (1..=max.min(r)).rev() {
            acc.push(p);
            tails(r - p, p, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    let mut d = 0;
    while d * (d + 1) / 2 <= n {
        let mut ts = Vec::new();
        tails(n - d * (d + 1) / 2, d, &mut Vec::new(), &mut ts);
        for tail in ts {
            let mut t: Vec<usize> = (1..=d).collect();
            t.extend(tail);
            out.push(HSType::new(t));
        }
        d += 1;
    }
    out.sort();
    out
}

pub fn type_of(d: &YoungDiagram) -> HSType {
    HSType::new(d.diagonal_sequence())
}

/// On antidiagonal `j`, the `t_j` cells with the highest `v`.
pub fn normal_pattern_diagram(t: &HSType) -> Result<YoungDiagram, StrataError> {
    if !t.is_admissible() {
        return Err(StrataError::NotAdmissible(t.to_string()));
    }
    let cells = t.0.iter().enumerate().flat_map(|(j, &tj)| (0..tj).map(move |u| Cell::new(u as i32, (j - u) as i32)));
    Ok(YoungDiagram::from_cells(cells).expect("admissible types pack into a diagram"))
}

pub fn dim_mt(t: &HSType) -> usize {
    let n = t.size() as i64;
    let drop = |j: isize| t.t(j - 1) as i64 - t.t(j) as i64;
    let s: i64 = (1..=t.0.len() as isize).map(|j| drop(j) * (drop(j) + 1) / 2).sum();
    (n - s) as usize
}

pub fn dim_gt(t: &HSType) -> usize {
    if t.0.is_empty() {
        return 0;
    }
    let d = t.initial_degree() as isize;
    let s: i64 = (d..=t.0.len() as isize)
        .map(|j| (t.t(j - 1) as i64 - t.t(j) as i64 + 1) * (t.t(j) as i64 - t.t(j + 1) as i64))
        .sum();
    s as usize
}

pub fn dim_stratum(t: &HSType, family: Stratum) -> usize {
    match family {
        Stratum::M => dim_mt(t),
        Stratum::G => dim_gt(t),
    }
}

/// Two or three nested types of consecutive sizes.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct HSFlagType {
    parts: Vec<HSType>,
}

impl HSFlagType {
    pub fn new(parts: Vec<HSType>) -> Self {
        assert!(!parts.is_empty());
        HSFlagType { parts }
    }

    pub fn parts(&self) -> &[HSType] {
        &self.parts
    }

    pub fn n(&self) -> usize {
        self.parts[0].size()
    }

    /// The index where each step adds one, if every step does so at a
    /// single index.
    pub fn jumps(&self) -> Option<Vec<usize>> {
        self.parts
            .windows(2)
            .map(|w| {
                let len = w[0].0.len().max(w[1].0.len());
                let diffs: Vec<(usize, i64)> = (0..len)
                    .map(|i| (i, w[1].t(i as isize) as i64 - w[0].t(i as isize) as i64))
                    .filter(|&(_, d)| d != 0)
                    .collect();
                match diffs.as_slice() {
                    [(i, 1)] => Some(*i),
                    _ => None,
                }
            })
            .collect()
    }

    pub fn is_admissible(&self) -> bool {
        self.parts.iter().all(HSType::is_admissible) && self.jumps().is_some()
    }
}

impl fmt::Display for HSFlagType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(|t| t.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

pub fn flag2_type(f: &Flag2) -> HSFlagType {
    HSFlagType::new(vec![type_of(f.base()), type_of(f.top())])
}

pub fn flag3_type(t: &Flag3) -> HSFlagType {
    HSFlagType::new(vec![type_of(t.base()), type_of(t.middle()), type_of(t.top())])
}

/// Admissible flag types of length `depth` starting at size `n`.
pub fn admissible_flag_types(n: usize, depth: usize) -> Vec<HSFlagType> {
    assert!((1..=3).contains(&depth));
    let mut chains: Vec<Vec<HSType>> = admissible_types(n).into_iter().map(|t| vec![t]).collect();
    for k in 1..depth {
        let next = admissible_types(n + k);
        chains = chains
            .into_iter()
            .flat_map(|c| {
                next.iter()
                    .filter_map(|t| {
                        let mut c2 = c.clone();
                        c2.push(t.clone());
                        HSFlagType::new(c2.clone()).is_admissible().then_some(c2)
                    })
                    .collect::<Vec<_>>()
            })
            .collect();
    }
    chains.into_iter().map(HSFlagType::new).collect()
}

fn fixed_pairs(ft: &HSFlagType) -> Vec<Flag2> {
    enumerate_flags2(ft.n()).into_iter().filter(|f| &flag2_type(f) == ft).collect()
}

fn fixed_triples(ft: &HSFlagType) -> Vec<Flag3> {
    enumerate_flags3(ft.n()).into_iter().filter(|f| &flag3_type(f) == ft).collect()
}

fn is_normal(d: &YoungDiagram) -> bool {
    normal_pattern_diagram(&type_of(d)).is_ok_and(|p| &p == d)
}

fn constant_at<F: Clone>(
    ft: &HSFlagType,
    points: Vec<F>,
    parts: impl Fn(&F) -> Vec<&YoungDiagram>,
    dim: impl Fn(&F) -> usize,
) -> Result<usize, StrataError> {
    if !ft.is_admissible() {
        return Err(StrataError::NotAdmissible(ft.to_string()));
    }
    let anchor = points
        .iter()
        .find(|p| parts(p).into_iter().all(is_normal))
        .or(points.first())
        .ok_or_else(|| StrataError::Empty(ft.to_string()))?;
    let value = dim(anchor);
    let mut values: Vec<usize> = points.iter().map(&dim).collect();
    values.sort();
    values.dedup();
    if values.len() > 1 {
        return Err(StrataError::NotConstant { ty: ft.to_string(), values });
    }
    Ok(value)
}

/// Tangent dimension of the stratum of a 2-step type, at its normal pattern
/// and checked at every other fixed point.
pub fn dim_flag2(ft: &HSFlagType, family: Stratum) -> Result<usize, StrataError> {
    let base = dim_stratum(&ft.parts[0], family);
    constant_at(ft, fixed_pairs(ft), |f| vec![f.base(), f.top()], |f| tangent_dim_pair(f, base, family))
}

pub fn dim_flag3(ft: &HSFlagType, family: Stratum) -> Result<usize, StrataError> {
    let base = dim_stratum(&ft.parts[0], family);
    constant_at(
        ft,
        fixed_triples(ft),
        |t| vec![t.base(), t.middle(), t.top()],
        |t| tangent_dim_triple(t, base, family),
    )
}

pub fn dim_flag(ft: &HSFlagType, family: Stratum) -> Result<usize, StrataError> {
    match ft.parts.len() {
        1 => Ok(dim_stratum(&ft.parts[0], family)),
        2 => dim_flag2(ft, family),
        _ => dim_flag3(ft, family),
    }
}

/// A closed form for 3-step strata from marks on the type alone; kept for comparison only.
pub fn closed_form_triple(ft: &HSFlagType, family: Stratum) -> Option<i64> {
    let jumps = ft.jumps()?;
    let (m, m2) = (jumps[0] as isize, jumps[1] as isize);
    let t = &ft.parts[0];
    let d = t.initial_degree() as isize;
    let len = t.0.len() as isize;
    let ti = |i: isize| t.t(i) as i64;
    let extra = i64::from(m2 >= m + 2);
    Some(match family {
        Stratum::M => {
            let s: i64 = (d..=len).map(|j| (ti(j - 1) - ti(j)) * (ti(j - 1) - ti(j) + 1) / 2).sum();
            (ft.n() as i64 - 1) + s + (ti(m - 1) - ti(m)) + (ti(m2 - 1) - ti(m2)) + extra
        }
        Stratum::G => {
            let s: i64 = (d..=len).map(|j| (ti(j - 1) - ti(j) + 1) * (ti(j) - ti(j + 1))).sum();
            s + (ti(m - 1) - ti(m) - 1) - (ti(m - 2) - ti(m - 1)) + (ti(m2 - 1) - ti(m2))
                - (ti(m2 - 2) - ti(m2 - 1))
                + extra
        }
    })
}

pub fn poincare_type(t: &HSType, family: Stratum) -> QPoly {
    let pos = match family {
        Stratum::M => pos_oneplus_single_m,
        Stratum::G => pos_oneplus_single_g,
    };
    QPoly::from_exponents(enumerate_partitions(t.size()).iter().filter(|d| &type_of(d) == t).map(pos))
}

pub fn poincare_stratum(ft: &HSFlagType, family: Stratum) -> QPoly {
    match (ft.parts.len(), family) {
        (1, _) => poincare_type(&ft.parts[0], family),
        (2, Stratum::M) => QPoly::from_exponents(fixed_pairs(ft).iter().map(pos_oneplus_pair_marks)),
        (2, Stratum::G) => QPoly::from_exponents(fixed_pairs(ft).iter().map(pos_oneplus_pair_marks_g)),
        (_, Stratum::M) => QPoly::from_exponents(fixed_triples(ft).iter().map(pos_oneplus_triple)),
        (_, Stratum::G) => QPoly::from_exponents(fixed_triples(ft).iter().map(pos_oneplus_triple_marks_g)),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct StratumRecord {
    #[serde(rename = "type")]
    pub ty: HSFlagType,
    #[serde(rename = "dim_M")]
    pub dim_m: Option<usize>,
    #[serde(rename = "dim_G")]
    pub dim_g: Option<usize>,
    pub poincare_m: QPoly,
    pub fixed_point_count: usize,
    /// The closed form for 3-step types, when it differs from `dim_M`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub closed_form_m: Option<i64>,
}

pub fn strata_table(n: usize, depth: usize) -> Vec<StratumRecord> {
    admissible_flag_types(n, depth)
        .into_par_iter()
        .map(|ft| {
            let poincare_m = poincare_stratum(&ft, Stratum::M);
            let fixed_point_count = poincare_m.eval_one().try_into().unwrap_or(0);
            let dim_m = dim_flag(&ft, Stratum::M).ok();
            let closed_form_m = (depth == 3)
                .then(|| closed_form_triple(&ft, Stratum::M))
                .flatten()
                .filter(|&c| Some(c) != dim_m.map(|d| d as i64));
            StratumRecord {
                dim_g: dim_flag(&ft, Stratum::G).ok(),
                dim_m,
                poincare_m,
                fixed_point_count,
                closed_form_m,
                ty: ft,
            }
        })
        .collect()
}

/// Number of fixed points per type, for checking the stratification covers
/// everything.
pub fn type_histogram(n: usize) -> BTreeMap<HSType, usize> {
    let mut h = BTreeMap::new();
    for d in enumerate_partitions(n).iter() {
        *h.entry(type_of(d)).or_insert(0) += 1;
    }
    h
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tangent::{basis_pair, basis_single, basis_triple};
    use crate::weights::tangent_count;
    use std::collections::BTreeSet;

    fn ty(t: &[usize]) -> HSType {
        HSType::new(t.to_vec())
    }

    fn fty(ts: &[&[usize]]) -> HSFlagType {
        HSFlagType::new(ts.iter().map(|t| ty(t)).collect())
    }

    #[test]
    fn admissibility() {
        assert!(is_admissible(&[1, 2, 1]));
        assert!(!is_admissible(&[1, 3]));
        assert!(!is_admissible(&[1, 1, 2]));
        assert!(is_admissible(&[]));
        assert!(is_admissible(&[1, 2, 2, 1, 0]));
        assert_eq!(admissible_types(4), vec![ty(&[1, 1, 1, 1]), ty(&[1, 2, 1])]);
    }

    #[test]
    fn admissible_means_nonempty() {
        for n in 0..=10 {
            let found: BTreeSet<HSType> = type_histogram(n).into_keys().collect();
            let listed: BTreeSet<HSType> = admissible_types(n).into_iter().collect();
            assert_eq!(found, listed, "n = {n}");
        }
        for n in 0..=5 {
            let found: BTreeSet<HSFlagType> = enumerate_flags3(n).iter().map(flag3_type).collect();
            let listed: BTreeSet<HSFlagType> = admissible_flag_types(n, 3).into_iter().collect();
            assert_eq!(found, listed, "n = {n}");
        }
    }

    #[test]
    fn types_of_diagrams() {
        assert_eq!(type_of(&YoungDiagram::from_column_heights(vec![1, 1, 1]).unwrap()), ty(&[1, 1, 1]));
        assert_eq!(type_of(&YoungDiagram::from_column_heights(vec![2, 1]).unwrap()), ty(&[1, 2]));
        assert_eq!(type_of(&YoungDiagram::empty()), ty(&[]));
    }

    #[test]
    fn normal_patterns() {
        assert_eq!(normal_pattern_diagram(&ty(&[1, 1, 1, 1])).unwrap().columns(), &[4]);
        assert_eq!(normal_pattern_diagram(&ty(&[1, 2, 1])).unwrap().columns(), &[3, 1]);
        assert_eq!(normal_pattern_diagram(&ty(&[1, 2, 3])).unwrap().columns(), &[3, 2, 1]);
        assert!(normal_pattern_diagram(&ty(&[1, 3])).is_err());
        for n in 0..=12 {
            for t in admissible_types(n) {
                assert_eq!(type_of(&normal_pattern_diagram(&t).unwrap()), t);
            }
        }
    }

    #[test]
    fn single_dims() {
        assert_eq!((dim_mt(&ty(&[1, 2, 1])), dim_gt(&ty(&[1, 2, 1]))), (2, 2));
        assert_eq!((dim_mt(&ty(&[1, 1, 1, 1])), dim_gt(&ty(&[1, 1, 1, 1]))), (3, 1));
        for n in 2..=9 {
            assert_eq!(dim_mt(&ty(&vec![1; n])), n - 1);
            assert_eq!(dim_gt(&ty(&vec![1; n])), 1);
        }
        // full powers of the maximal ideal are isolated points
        for d in 1..=4 {
            let t = ty(&(1..=d).collect::<Vec<_>>());
            assert_eq!((dim_mt(&t), dim_gt(&t)), (0, 0));
        }
    }

    #[test]
    fn single_dims_match_tangent_counts() {
        for n in 1..=9 {
            for d in enumerate_partitions(n).iter() {
                let b = basis_single(d);
                let t = type_of(d);
                assert_eq!(tangent_count(&b, Stratum::M, false), dim_mt(&t), "{d}");
                assert_eq!(tangent_count(&b, Stratum::G, false), dim_gt(&t), "{d}");
                assert!(dim_mt(&t) >= dim_gt(&t));
            }
        }
    }

    #[test]
    fn flag_dims_match_tangent_counts() {
        for n in 0..=6 {
            for f in enumerate_flags2(n) {
                let b = basis_pair(&f);
                let t = flag2_type(&f);
                assert_eq!(tangent_count(&b, Stratum::M, false), dim_flag2(&t, Stratum::M).unwrap(), "{t}");
                assert_eq!(tangent_count(&b, Stratum::G, false), dim_flag2(&t, Stratum::G).unwrap(), "{t}");
            }
            for f in enumerate_flags3(n) {
                let b = basis_triple(&f);
                let t = flag3_type(&f);
                assert_eq!(tangent_count(&b, Stratum::M, false), dim_flag3(&t, Stratum::M).unwrap(), "{t}");
                assert_eq!(tangent_count(&b, Stratum::G, false), dim_flag3(&t, Stratum::G).unwrap(), "{t}");
            }
        }
    }

    #[test]
    fn flag_goldens() {
        let one = |k| vec![1; k];
        let p = |a: &[usize], b: &[usize]| dim_flag2(&fty(&[a, b]), Stratum::M).unwrap();
        assert_eq!(p(&one(4), &one(5)), 4);
        assert_eq!(p(&one(4), &[1, 2, 1, 1]), 3);
        assert_eq!(p(&[1, 2, 1], &[1, 2, 1, 1]), 3);
        assert_eq!(p(&[1, 2, 1], &[1, 2, 2]), 3);
        let t = |a: &[usize], b: &[usize], c: &[usize]| dim_flag3(&fty(&[a, b, c]), Stratum::M).unwrap();
        assert_eq!(t(&one(4), &one(5), &one(6)), 5);
        assert_eq!(t(&[1, 2, 1], &[1, 2, 1, 1], &[1, 2, 1, 1, 1]), 4);
        // an affine line beyond the two projective fibres
        assert_eq!(t(&[1, 2, 1], &[1, 2, 2], &[1, 2, 2, 1]), 5);
        assert_eq!(t(&[1, 2, 1], &[1, 2, 2], &[1, 2, 3]), 3);
    }

    #[test]
    fn strata_partition_totals() {
        for n in 0..=8 {
            let total: QPoly = admissible_types(n).iter().map(|t| poincare_type(t, Stratum::M)).sum();
            let direct = QPoly::from_exponents(enumerate_partitions(n).iter().map(|d| d.size() - d.len()));
            assert_eq!(total, direct);
        }
        for n in 0..=4 {
            let total: QPoly = strata_table(n, 3).iter().map(|r| r.poincare_m.clone()).sum();
            let direct = QPoly::from_exponents(enumerate_flags3(n).iter().map(crate::weights::pos_infty_triple));
            assert_eq!(total, direct);
        }
    }

    #[test]
    fn curvilinear_counts() {
        for n in 2..=8 {
            let p = poincare_type(&ty(&vec![1; n]), Stratum::M);
            assert_eq!(p.eval_one(), 2.into());
        }
    }
}
