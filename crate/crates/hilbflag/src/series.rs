//! Exact polynomials in `q` and truncated power series in `z` over them.

use std::fmt;
use std::ops::{Add, Mul, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Polynomial in `q` with integer coefficients, index = exponent.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct QPoly {
    coeffs: Vec<BigInt>,
}

impl QPoly {
    pub fn zero() -> Self {
        QPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        QPoly::monomial(0)
    }

    /// `q^k`.
    pub fn monomial(k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = BigInt::one();
        QPoly { coeffs }
    }

    pub fn from_coeffs<I, T>(coeffs: I) -> Self
    where
        I: IntoIterator<Item = T>,
        T: Into<BigInt>,
    {
        let mut p = QPoly { coeffs: coeffs.into_iter().map(Into::into).collect() };
        p.trim();
        p
    }

    /// `Σ q^e` over the exponents, with multiplicity.
    pub fn from_exponents<I: IntoIterator<Item = usize>>(exps: I) -> Self {
        let mut counts: Vec<u64> = Vec::new();
        for e in exps {
            if counts.len() <= e {
                counts.resize(e + 1, 0);
            }
            counts[e] += 1;
        }
        QPoly::from_coeffs(counts)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }

    pub fn scale(&self, c: &BigInt) -> QPoly {
        QPoly::from_coeffs(self.coeffs.iter().map(|a| a * c))
    }
}

/// JSON: little-endian coefficient array; entries beyond `i64` become strings.
impl Serialize for QPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = s.serialize_seq(Some(self.coeffs.len()))?;
        for c in &self.coeffs {
            match c.to_i64() {
                Some(v) => seq.serialize_element(&v)?,
                None => seq.serialize_element(&c.to_string())?,
            }
        }
        seq.end()
    }
}

impl Add for &QPoly {
    type Output = QPoly;
    fn add(self, rhs: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        QPoly::from_coeffs((0..n).map(|k| self.coeff(k) + rhs.coeff(k)))
    }
}

impl Sub for &QPoly {
    type Output = QPoly;
    fn sub(self, rhs: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        QPoly::from_coeffs((0..n).map(|k| self.coeff(k) - rhs.coeff(k)))
    }
}

impl Mul for &QPoly {
    type Output = QPoly;
    fn mul(self, rhs: &QPoly) -> QPoly {
        if self.is_zero() || rhs.is_zero() {
            return QPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        QPoly::from_coeffs(out)
    }
}

impl std::iter::Sum for QPoly {
    fn sum<I: Iterator<Item = QPoly>>(iter: I) -> QPoly {
        iter.fold(QPoly::zero(), |acc, p| &acc + &p)
    }
}

/// Text form `1 + 2*q + q^2`; unit coefficients are dropped.
impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let var = match k {
                0 => String::new(),
                1 => "q".to_string(),
                _ => format!("q^{k}"),
            };
            if k == 0 {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{var}")?;
            } else {
                write!(f, "{mag}*{var}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot parse polynomial term {0:?}")]
pub struct ParsePolyError(pub String);

impl FromStr for QPoly {
    type Err = ParsePolyError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut terms: Vec<(bool, String)> = Vec::new();
        let mut cur = String::new();
        let mut neg = false;
        for (i, ch) in compact.chars().enumerate() {
            if (ch == '+' || ch == '-') && i > 0 && !cur.ends_with('^') {
                terms.push((neg, std::mem::take(&mut cur)));
                neg = ch == '-';
            } else if ch == '-' && i == 0 {
                neg = true;
            } else {
                cur.push(ch);
            }
        }
        terms.push((neg, cur));
        let mut acc = QPoly::zero();
        for (neg, t) in terms {
            let bad = || ParsePolyError(t.clone());
            let (coef, exp) = match t.find('q') {
                None => (t.parse::<BigInt>().map_err(|_| bad())?, 0usize),
                Some(pos) => {
                    let head = t[..pos].trim_end_matches('*');
                    let coef = if head.is_empty() {
                        BigInt::one()
                    } else {
                        head.parse::<BigInt>().map_err(|_| bad())?
                    };
                    let tail = &t[pos + 1..];
                    let exp = if tail.is_empty() {
                        1
                    } else {
                        tail.strip_prefix('^').ok_or_else(bad)?.parse().map_err(|_| bad())?
                    };
                    (coef, exp)
                }
            };
            let coef = if neg { -coef } else { coef };
            acc = &acc + &QPoly::monomial(exp).scale(&coef);
        }
        Ok(acc)
    }
}

/// Power series in `z` with `QPoly` coefficients, truncated after `z^order`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ZSeries {
    order: usize,
    coeffs: Vec<QPoly>,
}

impl ZSeries {
    pub fn new(order: usize, mut coeffs: Vec<QPoly>) -> Self {
        coeffs.resize(order + 1, QPoly::zero());
        ZSeries { order, coeffs }
    }

    pub fn one(order: usize) -> Self {
        ZSeries::new(order, vec![QPoly::one()])
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeff(&self, n: usize) -> &QPoly {
        &self.coeffs[n]
    }

    pub fn coeffs(&self) -> &[QPoly] {
        &self.coeffs
    }

    pub fn mul(&self, rhs: &ZSeries) -> ZSeries {
        let order = self.order.min(rhs.order);
        let mut out = vec![QPoly::zero(); order + 1];
        for i in 0..=order {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=order - i {
                if !rhs.coeffs[j].is_zero() {
                    out[i + j] = &out[i + j] + &(&self.coeffs[i] * &rhs.coeffs[j]);
                }
            }
        }
        ZSeries::new(order, out)
    }

    pub fn add(&self, rhs: &ZSeries) -> ZSeries {
        let order = self.order.min(rhs.order);
        ZSeries::new(order, (0..=order).map(|n| &self.coeffs[n] + &rhs.coeffs[n]).collect())
    }

    /// Multiply every coefficient by a polynomial in `q`.
    pub fn scale(&self, p: &QPoly) -> ZSeries {
        ZSeries::new(self.order, self.coeffs.iter().map(|c| c * p).collect())
    }

    /// Multiply by `c·z^a·q^b`.
    pub fn shift(&self, a: usize, b: usize, c: i64) -> ZSeries {
        let mono = QPoly::monomial(b).scale(&BigInt::from(c));
        let mut out = vec![QPoly::zero(); self.order + 1];
        for n in 0..=self.order {
            if n + a <= self.order {
                out[n + a] = &self.coeffs[n] * &mono;
            }
        }
        ZSeries::new(self.order, out)
    }
}

/// Expansion of `1/(1 - z^a q^b)` up to `z^order`.
pub fn geometric_factor(a: usize, b: usize, order: usize) -> ZSeries {
    assert!(a >= 1, "z-exponent must be positive");
    let mut coeffs = vec![QPoly::zero(); order + 1];
    for k in 0..=order / a {
        coeffs[a * k] = QPoly::monomial(b * k);
    }
    ZSeries::new(order, coeffs)
}

/// The five generating functions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Goettsche,
    Cheah,
    Threeflag,
    Pair13,
    Tr,
}

impl Family {
    pub const ALL: [Family; 5] =
        [Family::Goettsche, Family::Cheah, Family::Threeflag, Family::Pair13, Family::Tr];

    pub fn name(self) -> &'static str {
        match self {
            Family::Goettsche => "goettsche",
            Family::Cheah => "cheah",
            Family::Threeflag => "threeflag",
            Family::Pair13 => "pair13",
            Family::Tr => "tr",
        }
    }
}

impl FromStr for Family {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| format!("unknown series family {s:?}"))
    }
}

/// `∏_{k=1}^{order} 1/(1 - z^k q^{k-1})`.
fn euler_product(order: usize) -> ZSeries {
    (1..=order).fold(ZSeries::one(order), |acc, k| acc.mul(&geometric_factor(k, k - 1, order)))
}

/// The named product, truncated after `z^order`.
///
/// `Tr` is indexed so that its `z^n` coefficient enumerates pairs whose
/// diagram has `n + 3` boxes.
pub fn product_family(family: Family, order: usize) -> ZSeries {
    let base = euler_product(order);
    let both = || base.mul(&geometric_factor(1, 1, order)).mul(&geometric_factor(2, 2, order));
    match family {
        Family::Goettsche => base,
        Family::Cheah => base.mul(&geometric_factor(1, 1, order)),
        Family::Threeflag => both().scale(&QPoly::from_coeffs([1, 1])),
        Family::Pair13 => {
            let numer = ZSeries::one(order).scale(&QPoly::from_coeffs([1, 1])).add(&ZSeries::one(order).shift(1, 1, -1));
            both().mul(&numer)
        }
        Family::Tr => both(),
    }
}

/// Outcome of comparing a series against enumerated polynomials.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Comparison {
    pub checked: usize,
    pub first_mismatch: Option<Mismatch>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub degree: usize,
    pub expected: String,
    pub found: String,
}

impl Comparison {
    pub fn ok(&self) -> bool {
        self.first_mismatch.is_none()
    }
}

pub fn compare(series: &ZSeries, enumerated: &[QPoly]) -> Comparison {
    let checked = enumerated.len().min(series.order() + 1);
    let first_mismatch = (0..checked).find(|&n| series.coeff(n) != &enumerated[n]).map(|n| Mismatch {
        degree: n,
        expected: series.coeff(n).to_string(),
        found: enumerated[n].to_string(),
    });
    Comparison { checked, first_mismatch }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> QPoly {
        QPoly::from_coeffs(c.iter().copied())
    }

    #[test]
    fn text_format() {
        assert_eq!(p(&[1, 1, 1]).to_string(), "1 + q + q^2");
        assert_eq!(p(&[1, 3, 4, 2]).to_string(), "1 + 3*q + 4*q^2 + 2*q^3");
        assert_eq!(p(&[0, -1, 2]).to_string(), "-q + 2*q^2");
        assert_eq!(QPoly::zero().to_string(), "0");
        for s in ["1 + q + q^2", "1 + 3*q + 4*q^2 + 2*q^3", "-q + 2*q^2", "0", "5"] {
            assert_eq!(s.parse::<QPoly>().unwrap().to_string(), s);
        }
        assert_eq!("1+3q+4q^2".parse::<QPoly>().unwrap(), p(&[1, 3, 4]));
        assert!("1 + x".parse::<QPoly>().is_err());
    }

    #[test]
    fn trimming_and_eval() {
        assert_eq!(p(&[1, 2, 0, 0]).coeffs().len(), 2);
        assert_eq!(p(&[1, 3, 4, 2]).eval_one(), BigInt::from(10));
        assert_eq!(&p(&[1, 1]) * &p(&[1, 1]), p(&[1, 2, 1]));
    }

    #[test]
    fn geometric() {
        let g = geometric_factor(1, 0, 5);
        assert!(g.coeffs().iter().all(|c| *c == QPoly::one()));
        let g = geometric_factor(1, 1, 5);
        assert!((0..=5).all(|n| *g.coeff(n) == QPoly::monomial(n)));
        let g = geometric_factor(2, 2, 5);
        assert!((0..=5).all(|n| g.coeff(n).is_zero() == (n % 2 == 1)));
    }

    #[test]
    fn family_spot_values() {
        assert_eq!(*product_family(Family::Goettsche, 6).coeff(3), p(&[1, 1, 1]));
        assert_eq!(*product_family(Family::Threeflag, 3).coeff(0), p(&[1, 1]));
        assert_eq!(*product_family(Family::Pair13, 3).coeff(0), p(&[1, 1]));
        assert_eq!(*product_family(Family::Pair13, 3).coeff(1), p(&[1, 1, 1]));
    }

    #[test]
    fn compare_localizes() {
        let s = product_family(Family::Goettsche, 4);
        let mut polys: Vec<QPoly> = s.coeffs().to_vec();
        assert!(compare(&s, &polys).ok());
        polys[3] = p(&[1, 2, 1]);
        assert_eq!(compare(&s, &polys).first_mismatch.unwrap().degree, 3);
    }
}
