//! Univariate polynomials with exact rational coefficients and the algebra of
//! integer-valued polynomials.
//!
//! An integer-valued polynomial `f` has integer coordinates `a_k` in the
//! binomial basis `binom(x, k)`, and `a_k` is the `k`-th forward difference of
//! `f` at zero. The gcd of all values `f(Z)` equals the gcd of these
//! coordinates, and also the gcd of `f` over any `deg f + 1` consecutive
//! integers.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rational::{self, from_big, is_integer, q, Q};

/// Degree of a polynomial or polynomial sequence. The zero polynomial (and
/// the identity sequence) has degree `NegInfinity`, which orders below every
/// finite degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    NegInfinity,
    Finite(usize),
}

impl Degree {
    pub fn finite(self) -> Option<usize> {
        match self {
            Degree::NegInfinity => None,
            Degree::Finite(d) => Some(d),
        }
    }

    /// Finite degree, with `-inf` mapped to zero.
    pub fn or_zero(self) -> usize {
        self.finite().unwrap_or(0)
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInfinity => write!(f, "-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

impl Serialize for Degree {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Degree::NegInfinity => s.serialize_str("-inf"),
            Degree::Finite(d) => s.serialize_u64(*d as u64),
        }
    }
}

/// Univariate polynomial over the rationals, coefficients in ascending
/// degree. Trailing zeros are never stored, so the zero polynomial has an
/// empty coefficient vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<Q>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(q(1))
    }

    pub fn x() -> Self {
        Poly::monomial(q(1), 1)
    }

    pub fn constant(c: Q) -> Self {
        Poly::from_coeffs(vec![c])
    }

    pub fn monomial(c: Q, k: usize) -> Self {
        let mut coeffs = vec![Q::zero(); k + 1];
        coeffs[k] = c;
        Poly::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<Q>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Poly::from_coeffs(coeffs.iter().map(|&c| q(c)).collect())
    }

    /// The binomial polynomial `binom(x, k) = x(x-1)...(x-k+1)/k!`.
    pub fn binomial(k: usize) -> Self {
        let mut p = Poly::one();
        for i in 0..k {
            let factor = Poly::from_coeffs(vec![q(-(i as i64)), q(1)]);
            p = &p * &factor;
        }
        let fact: BigInt = (1..=k as u64).map(BigInt::from).product();
        p.scale(&Q::new(BigInt::one(), fact))
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Q {
        self.coeffs.get(k).cloned().unwrap_or_else(Q::zero)
    }

    pub fn degree(&self) -> Degree {
        match self.coeffs.len() {
            0 => Degree::NegInfinity,
            n => Degree::Finite(n - 1),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading_coeff(&self) -> Q {
        self.coeffs.last().cloned().unwrap_or_else(Q::zero)
    }

    pub fn eval(&self, x: &Q) -> Q {
        self.coeffs
            .iter()
            .rev()
            .fold(Q::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_int(&self, x: i64) -> Q {
        self.eval(&q(x))
    }

    pub fn eval_big(&self, x: &BigInt) -> Q {
        self.eval(&from_big(x.clone()))
    }

    /// Value at an integer, asserting that it is an integer.
    pub fn eval_integer(&self, x: i64) -> Option<BigInt> {
        let v = self.eval_int(x);
        is_integer(&v).then(|| v.to_integer())
    }

    pub fn scale(&self, c: &Q) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn derivative(&self) -> Poly {
        Poly::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * q(k as i64))
                .collect(),
        )
    }

    pub fn nth_derivative(&self, k: usize) -> Poly {
        (0..k).fold(self.clone(), |p, _| p.derivative())
    }

    /// `self(inner(x))` by Horner's scheme.
    pub fn compose(&self, inner: &Poly) -> Poly {
        self.coeffs.iter().rev().fold(Poly::zero(), |acc, c| {
            &(&acc * inner) + &Poly::constant(c.clone())
        })
    }

    /// Substitution `x -> a x + b`.
    pub fn compose_affine(&self, a: &Q, b: &Q) -> Poly {
        self.compose(&Poly::from_coeffs(vec![b.clone(), a.clone()]))
    }

    /// True iff `f(0), ..., f(deg f)` are integers, which forces `f(Z) ⊆ Z`.
    pub fn is_integer_valued(&self) -> bool {
        (0..self.coeffs.len() as i64).all(|x| is_integer(&self.eval_int(x)))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            match k {
                0 => write!(f, "{a}")?,
                _ => {
                    if !a.is_one() {
                        write!(f, "{a}*")?;
                    }
                    if k == 1 {
                        write!(f, "x")?;
                    } else {
                        write!(f, "x^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::from_coeffs((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::from_coeffs((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Q::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::from_coeffs(out)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut strs: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        if strs.is_empty() {
            strs.push("0".into());
        }
        strs.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Poly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Wrap(#[serde(with = "crate::rational::serde_q::vec")] Vec<Q>);
        let Wrap(coeffs) = Wrap::deserialize(d)?;
        Ok(Poly::from_coeffs(coeffs))
    }
}

/// Coordinates of an integer-valued polynomial against `binom(x, k)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct BinomialBasisPoly {
    #[serde(serialize_with = "ser_bigints")]
    pub coeffs: Vec<BigInt>,
}

fn ser_bigints<S: Serializer>(xs: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    let strs: Vec<String> = xs.iter().map(|x| x.to_string()).collect();
    strs.serialize(s)
}

impl BinomialBasisPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        BinomialBasisPoly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        BinomialBasisPoly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }
}

/// The node set `P_{a,d} = {a, a+1, ..., a+d}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LagrangeNodeSet {
    pub start: i64,
    pub degree: usize,
}

impl LagrangeNodeSet {
    pub fn new(start: i64, degree: usize) -> Self {
        LagrangeNodeSet { start, degree }
    }

    pub fn nodes(&self) -> impl Iterator<Item = i64> + '_ {
        (0..=self.degree as i64).map(move |i| self.start + i)
    }

    /// The Lagrange basis polynomial `l_i(x; P)`.
    pub fn basis(&self, i: usize) -> Poly {
        let xi = self.start + i as i64;
        self.nodes()
            .filter(|&xk| xk != xi)
            .fold(Poly::one(), |acc, xk| {
                let factor = Poly::from_coeffs(vec![q(-xk), q(1)]).scale(&Q::new(
                    BigInt::one(),
                    BigInt::from(xi - xk),
                ));
                &acc * &factor
            })
    }
}

/// Forward differences `Δ^k f(0)` for `k = 0..=deg f`.
fn forward_differences(f: &Poly) -> Vec<Q> {
    let mut row: Vec<Q> = (0..f.coeffs().len() as i64).map(|x| f.eval_int(x)).collect();
    let mut out = Vec::with_capacity(row.len());
    while !row.is_empty() {
        out.push(row[0].clone());
        row = row.windows(2).map(|w| &w[1] - &w[0]).collect();
    }
    out
}

pub fn to_binomial_basis(f: &Poly) -> Result<BinomialBasisPoly> {
    let diffs = forward_differences(f);
    if let Some(bad) = diffs.iter().position(|c| !is_integer(c)) {
        return Err(Error::NotIntegerValued(format!(
            "{f}: binomial coordinate a_{bad} = {}",
            diffs[bad]
        )));
    }
    Ok(BinomialBasisPoly::new(
        diffs.into_iter().map(|c| c.to_integer()).collect(),
    ))
}

pub fn from_binomial_basis(p: &BinomialBasisPoly) -> Poly {
    p.coeffs
        .iter()
        .enumerate()
        .fold(Poly::zero(), |acc, (k, a)| {
            &acc + &Poly::binomial(k).scale(&from_big(a.clone()))
        })
}

pub fn is_integer_valued(f: &Poly) -> bool {
    f.is_integer_valued()
}

fn require_integer_valued(f: &Poly) -> Result<()> {
    if f.is_integer_valued() {
        Ok(())
    } else {
        Err(Error::NotIntegerValued(f.to_string()))
    }
}

/// `gcd f(Z)` computed from the binomial coordinates.
pub fn gcd_values_binomial(f: &Poly) -> Result<BigInt> {
    let basis = to_binomial_basis(f)?;
    Ok(rational::gcd_all(&basis.coeffs))
}

/// `gcd f(P_{a,d})` over the `d + 1` consecutive integers starting at `a`.
pub fn gcd_values_lagrange(f: &Poly, a: i64) -> Result<BigInt> {
    require_integer_valued(f)?;
    let d = match f.degree() {
        Degree::NegInfinity => return Ok(BigInt::zero()),
        Degree::Finite(d) => d,
    };
    let nodes = LagrangeNodeSet::new(a, d);
    Ok(nodes
        .nodes()
        .map(|x| f.eval_int(x).to_integer())
        .fold(BigInt::zero(), |acc, v| acc.gcd(&v)))
}

/// Searches `0 <= m1 < m2 <= search_bound` for a pair of coprime values,
/// which certifies `gcd f(N_0) = 1`.
pub fn gcd_is_one_by_pair(f: &Poly, search_bound: i64) -> Option<(i64, i64)> {
    if !f.is_integer_valued() || search_bound < 1 {
        return None;
    }
    let values: Vec<BigInt> = (0..=search_bound)
        .map(|x| f.eval_int(x).to_integer())
        .collect();
    for m2 in 1..values.len() {
        for m1 in 0..m2 {
            if values[m1].gcd(&values[m2]).is_one() {
                return Some((m1 as i64, m2 as i64));
            }
        }
    }
    None
}

/// The unique polynomial of degree `<= values.len() - 1` with
/// `f(start + i) = values[i]`. Integer values give an integer-valued result.
pub fn lagrange_interpolate(values: &[Q], start: i64) -> Poly {
    if values.is_empty() {
        return Poly::zero();
    }
    let nodes = LagrangeNodeSet::new(start, values.len() - 1);
    values
        .iter()
        .enumerate()
        .filter(|(_, v)| !v.is_zero())
        .fold(Poly::zero(), |acc, (i, v)| &acc + &nodes.basis(i).scale(v))
}

pub fn lagrange_interpolate_ints(values: &[i64], start: i64) -> Poly {
    let qs: Vec<Q> = values.iter().map(|&v| q(v)).collect();
    lagrange_interpolate(&qs, start)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;

    fn triangular() -> Poly {
        // x(x+1)/2
        Poly::from_coeffs(vec![q(0), frac(1, 2), frac(1, 2)])
    }

    #[test]
    fn zero_polynomial_has_negative_infinite_degree() {
        assert_eq!(Poly::zero().degree(), Degree::NegInfinity);
        assert!(Degree::NegInfinity < Degree::Finite(0));
        assert_eq!(Poly::from_ints(&[1, 0, 0]).degree(), Degree::Finite(0));
    }

    #[test]
    fn binomial_basis_examples() {
        let sq = Poly::from_ints(&[0, 0, 1]);
        assert_eq!(to_binomial_basis(&sq).unwrap(), BinomialBasisPoly::from_ints(&[0, 1, 2]));
        assert_eq!(
            to_binomial_basis(&Poly::binomial(3)).unwrap(),
            BinomialBasisPoly::from_ints(&[0, 0, 0, 1])
        );
        assert_eq!(to_binomial_basis(&triangular()).unwrap(), BinomialBasisPoly::from_ints(&[0, 1, 1]));
        assert_eq!(Poly::binomial(3), Poly::from_coeffs(vec![q(0), frac(1, 3), frac(-1, 2), frac(1, 6)]));
    }

    #[test]
    fn from_binomial_basis_examples() {
        assert_eq!(from_binomial_basis(&BinomialBasisPoly::from_ints(&[0, 1, 2])), Poly::from_ints(&[0, 0, 1]));
        assert_eq!(from_binomial_basis(&BinomialBasisPoly::from_ints(&[5])), Poly::from_ints(&[5]));
        assert_eq!(from_binomial_basis(&BinomialBasisPoly::from_ints(&[0, 1, 1])), triangular());
    }

    #[test]
    fn non_integer_valued_is_rejected() {
        let half_x = Poly::from_coeffs(vec![q(0), frac(1, 2)]);
        assert!(!is_integer_valued(&half_x));
        assert!(is_integer_valued(&triangular()));
        assert!(is_integer_valued(&Poly::zero()));
        assert!(matches!(to_binomial_basis(&half_x), Err(Error::NotIntegerValued(_))));
        assert!(matches!(gcd_values_binomial(&half_x), Err(Error::NotIntegerValued(_))));
        assert!(matches!(gcd_values_lagrange(&half_x, 0), Err(Error::NotIntegerValued(_))));
    }

    #[test]
    fn gcd_examples() {
        let x2x = Poly::from_ints(&[0, 1, 1]);
        assert_eq!(gcd_values_binomial(&x2x).unwrap(), BigInt::from(2));
        assert_eq!(gcd_values_binomial(&Poly::from_ints(&[0, 0, 1])).unwrap(), BigInt::from(1));
        assert_eq!(gcd_values_binomial(&Poly::from_ints(&[6])).unwrap(), BigInt::from(6));
        assert_eq!(gcd_values_binomial(&Poly::zero()).unwrap(), BigInt::from(0));

        assert_eq!(gcd_values_lagrange(&Poly::from_ints(&[0, 0, 1]), 0).unwrap(), BigInt::from(1));
        assert_eq!(gcd_values_lagrange(&x2x, 3).unwrap(), BigInt::from(2));
        assert_eq!(gcd_values_lagrange(&Poly::zero(), 5).unwrap(), BigInt::from(0));
        assert_eq!(gcd_values_lagrange(&x2x, -7).unwrap(), BigInt::from(2));
    }

    #[test]
    fn coprime_pair_search() {
        let (m1, m2) = gcd_is_one_by_pair(&Poly::from_ints(&[1, 0, 1]), 10).unwrap();
        let f = Poly::from_ints(&[1, 0, 1]);
        assert!(f.eval_integer(m1).unwrap().gcd(&f.eval_integer(m2).unwrap()).is_one());
        assert_eq!(gcd_is_one_by_pair(&Poly::from_ints(&[0, 2]), 10), None);
        assert_eq!(gcd_is_one_by_pair(&Poly::from_ints(&[1]), 10), Some((0, 1)));
    }

    #[test]
    fn interpolation_examples() {
        assert_eq!(lagrange_interpolate_ints(&[0, 1, 4], 0), Poly::from_ints(&[0, 0, 1]));
        assert_eq!(lagrange_interpolate_ints(&[7], 0), Poly::from_ints(&[7]));
        assert_eq!(lagrange_interpolate_ints(&[0, 1, 3], 0), triangular());
        // shifted window reproduces the same polynomial
        let f = Poly::from_ints(&[3, -2, 0, 1]);
        let vals: Vec<Q> = (5..9).map(|x| f.eval_int(x)).collect();
        assert_eq!(lagrange_interpolate(&vals, 5), f);
    }

    #[test]
    fn lagrange_basis_is_kronecker() {
        let nodes = LagrangeNodeSet::new(-2, 3);
        for i in 0..=3 {
            let l = nodes.basis(i);
            for (j, x) in nodes.nodes().enumerate() {
                assert_eq!(l.eval_int(x), q((i == j) as i64));
            }
        }
    }

    #[test]
    fn calculus_helpers() {
        let f = Poly::from_ints(&[1, 2, 3]);
        assert_eq!(f.derivative(), Poly::from_ints(&[2, 6]));
        assert_eq!(f.nth_derivative(2), Poly::from_ints(&[6]));
        // f(2x+1) = 1 + 2(2x+1) + 3(2x+1)^2 = 6 + 16x + 12x^2
        assert_eq!(f.compose_affine(&q(2), &q(1)), Poly::from_ints(&[6, 16, 12]));
        assert_eq!(f.to_string(), "3*x^2 + 2*x + 1");
    }

    #[test]
    fn json_round_trip() {
        let f = triangular();
        let s = serde_json::to_string(&f).unwrap();
        assert_eq!(s, r#"["0","1/2","1/2"]"#);
        let back: Poly = serde_json::from_str(&s).unwrap();
        assert_eq!(back, f);
        let with_ints: Poly = serde_json::from_str(r#"[0, "0", 1]"#).unwrap();
        assert_eq!(with_ints, Poly::from_ints(&[0, 0, 1]));
    }
}
