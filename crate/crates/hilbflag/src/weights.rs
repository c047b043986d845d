//! One-parameter tori, signs of tangent weights, and closed forms for the
//! number of positive weights at a fixed point.

use std::cmp::Ordering;

use num_rational::Ratio;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::tangent::TangentVector;
use crate::young::{Cell, Flag2, Flag3, YoungDiagram};

pub type Rational = Ratio<i64>;

/// Which way a zero at the wall is read.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Side {
    Exact,
    /// Just above the wall, `W + ε`.
    Plus,
    /// Just below the wall, `W - ε`.
    Minus,
}

/// The subtorus with `x` of weight 1 and `y` of weight `ratio`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct TorusSpec {
    pub ratio: Rational,
    pub side: Side,
}

impl TorusSpec {
    pub fn new(ratio: Rational, side: Side) -> Self {
        assert!(ratio > Rational::one(), "torus ratio must exceed 1");
        TorusSpec { ratio, side }
    }

    /// Generic for every weight with coordinates bounded by `n`; on the
    /// far side of all walls.
    pub fn infinity(n: usize) -> Self {
        TorusSpec::new(Rational::from_integer(n as i64 + 1), Side::Exact)
    }

    /// Generic for every weight with coordinates bounded by `n`; between 1
    /// and the smallest wall.
    pub fn oneplus(n: usize) -> Self {
        let n = n.max(1) as i64;
        TorusSpec::new(Rational::new(2 * n + 1, 2 * n), Side::Exact)
    }

    pub fn at_wall(w: Rational, side: Side) -> Self {
        TorusSpec::new(w, side)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl From<Ordering> for Sign {
    fn from(o: Ordering) -> Self {
        match o {
            Ordering::Less => Sign::Negative,
            Ordering::Equal => Sign::Zero,
            Ordering::Greater => Sign::Positive,
        }
    }
}

/// Sign of `Δx + W·Δy`.
pub fn sign_of_weight(w: (i32, i32), t: &TorusSpec) -> Sign {
    let val = Rational::from_integer(w.0 as i64) + t.ratio * (w.1 as i64);
    if !val.is_zero() {
        return if val.is_positive() { Sign::Positive } else { Sign::Negative };
    }
    let dy = w.1.cmp(&0);
    match t.side {
        Side::Exact => Sign::Zero,
        Side::Plus => dy.into(),
        Side::Minus => dy.reverse().into(),
    }
}

pub fn sign_under(v: &TangentVector, t: &TorusSpec) -> Sign {
    sign_of_weight(v.weight(), t)
}

pub fn pos_count(basis: &[TangentVector], t: &TorusSpec) -> usize {
    basis.iter().filter(|v| sign_under(v, t) == Sign::Positive).count()
}

fn zero_at(v: &TangentVector, w: Rational) -> bool {
    sign_under(v, &TorusSpec::at_wall(w, Side::Exact)) == Sign::Zero
}

/// Vectors vanishing at `W` that become positive just above it.
pub fn s_plus(basis: &[TangentVector], w: Rational) -> usize {
    basis.iter().filter(|v| zero_at(v, w) && v.weight().1 > 0).count()
}

/// Vectors vanishing at `W` that become positive just below it.
pub fn s_minus(basis: &[TangentVector], w: Rational) -> usize {
    basis.iter().filter(|v| zero_at(v, w) && v.weight().1 < 0).count()
}

/// Inhomogeneous (`M`) or homogeneous (`G`) strata.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Stratum {
    M,
    G,
}

/// Count of basis vectors tangent to the stratum: degree non-decreasing
/// for `M`, degree preserving for `G`; `positive_only` keeps the ones
/// positive for the torus just above ratio 1.
pub fn tangent_count(basis: &[TangentVector], family: Stratum, positive_only: bool) -> usize {
    basis
        .iter()
        .filter(|v| {
            let deg = v.degree();
            let dy = v.weight().1;
            let tangent = match family {
                Stratum::M => deg >= 0,
                Stratum::G => deg == 0,
            };
            tangent && (!positive_only || deg > 0 || dy > 0)
        })
        .count()
}

pub fn pos_infty_single(d: &YoungDiagram) -> usize {
    d.size() - d.len()
}

fn count_hooks(d: &YoungDiagram, pred: impl Fn(i32) -> bool) -> usize {
    d.hook_differences().into_iter().filter(|&(_, h)| pred(h)).count()
}

/// `n - #{h ∈ {0, 1}}`.
pub fn pos_oneplus_single_m(d: &YoungDiagram) -> usize {
    d.size() - count_hooks(d, |h| h == 0 || h == 1)
}

/// `#{h = -1}`: positive directions inside the homogeneous stratum.
pub fn pos_oneplus_single_g(d: &YoungDiagram) -> usize {
    count_hooks(d, |h| h == -1)
}

pub fn pos_infty_pair(f: &Flag2) -> usize {
    f.n() + 1 - f.top().len()
}

pub fn pos_infty_triple(t: &Flag3) -> usize {
    let bonus = usize::from(t.second().v >= t.first().v + 2);
    t.n() + 2 - t.top().len() + bonus
}

/// Bullets at the generators of the larger diagram and stars at the lcm of
/// consecutive ones, counted against the antidiagonal of the added box.
pub fn bullet_star(f: &Flag2, family: Stratum, positive_only: bool) -> (usize, usize) {
    let gens = f.top().generators();
    let stars: Vec<Cell> = gens.windows(2).map(|w| Cell::new(w[0].u, w[1].v)).collect();
    let a = f.added();
    let counts = |c: &Cell| mark_counts(*c, a, family, positive_only);
    (gens.iter().filter(|c| counts(c)).count(), stars.iter().filter(|c| counts(c)).count())
}

fn mark_counts(mark: Cell, a: Cell, family: Stratum, positive_only: bool) -> bool {
    let below = mark.deg() < a.deg();
    let on = mark.deg() == a.deg() && (!positive_only || mark.u > a.u);
    match family {
        Stratum::M => below || on,
        Stratum::G => on,
    }
}

/// The mark at `xy·α_j`, present only in case a, read against `α'_l`.
pub fn diamond(t: &Flag3, family: Stratum, positive_only: bool) -> usize {
    if t.is_case_b() {
        return 0;
    }
    usize::from(mark_counts(t.first().shift(1, 1), t.second(), family, positive_only))
}

/// Four-term hook formula for the cell dimension of a 3-step flag.
pub fn pos_oneplus_triple(t: &Flag3) -> usize {
    let (aj, al) = (t.first(), t.second());
    let h1 = t.base().hook_differences();
    let h2 = t.middle().hook_differences();
    let first = h1.iter().filter(|&&(_, h)| h != 0 && h != 1).count();
    let second = h1.iter().filter(|&&(c, h)| (h == 0 && c.u == aj.u) || (h == 1 && c.v == aj.v)).count();
    let third = h2.iter().filter(|&&(c, h)| (h == 0 && c.u == al.u) || (h == 1 && c.v == al.v)).count();
    let fourth = usize::from(al.deg() > aj.deg() + 2 || (al.deg() == aj.deg() + 2 && al.v > aj.v));
    first + second + third + fourth
}

/// `T⁺M(Γ₁) + •M⁺ - ⋆M⁺` for a 2-step flag.
pub fn pos_oneplus_pair_marks(f: &Flag2) -> usize {
    let (b, s) = bullet_star(f, Stratum::M, true);
    pos_oneplus_single_m(f.base()) + b - s
}

fn signed_marks(t: &Flag3, family: Stratum, positive_only: bool) -> i64 {
    let (b1, s1) = bullet_star(t.lower(), family, positive_only);
    let (b2, s2) = bullet_star(t.upper(), family, positive_only);
    b1 as i64 + b2 as i64 - s1 as i64 - s2 as i64 + diamond(t, family, positive_only) as i64
}

/// The marks form for a 3-step flag: `T⁺M(Γ₁)` plus bullets minus stars for
/// both steps plus the diamond.
pub fn pos_oneplus_triple_marks(t: &Flag3) -> usize {
    (pos_oneplus_single_m(t.base()) as i64 + signed_marks(t, Stratum::M, true)) as usize
}

/// Homogeneous counterpart of [`pos_oneplus_triple_marks`].
pub fn pos_oneplus_triple_marks_g(t: &Flag3) -> usize {
    (pos_oneplus_single_g(t.base()) as i64 + signed_marks(t, Stratum::G, true)) as usize
}

pub fn pos_oneplus_pair_marks_g(f: &Flag2) -> usize {
    let (b, s) = bullet_star(f, Stratum::G, true);
    pos_oneplus_single_g(f.base()) + b - s
}

/// Tangent dimension of the stratum through a 2-step flag, from the marks.
pub fn tangent_dim_pair(f: &Flag2, base_dim: usize, family: Stratum) -> usize {
    let (b, s) = bullet_star(f, family, false);
    base_dim + b - s
}

/// Tangent dimension of the stratum through a 3-step flag, from the marks.
pub fn tangent_dim_triple(t: &Flag3, base_dim: usize, family: Stratum) -> usize {
    (base_dim as i64 + signed_marks(t, family, false)) as usize
}
