//! Sparse multivariate polynomials over the rationals.
//!
//! Terms live in a `BTreeMap` keyed by exponent vectors, so iteration order
//! is lexicographic with `x1` most significant and the last key is the
//! lex-leading monomial. Zero coefficients are never stored.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::intpoly::{Degree, Poly};
use crate::rational::{q, Q};

pub type Exponents = Vec<u32>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Exponents, Q>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Q) -> Self {
        let mut p = MultiPoly::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn one(nvars: usize) -> Self {
        MultiPoly::constant(nvars, Q::one())
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index out of range");
        let mut e = vec![0; nvars];
        e[i] = 1;
        MultiPoly::monomial(e, Q::one())
    }

    pub fn monomial(exps: Exponents, c: Q) -> Self {
        let mut p = MultiPoly::zero(exps.len());
        p.add_term(exps, c);
        p
    }

    /// Embeds `f` as a polynomial in variable `var` of an `nvars`-variable ring.
    pub fn from_univariate(f: &Poly, var: usize, nvars: usize) -> Self {
        let mut p = MultiPoly::zero(nvars);
        for (k, c) in f.coeffs().iter().enumerate() {
            let mut e = vec![0; nvars];
            e[var] = k as u32;
            p.add_term(e, c.clone());
        }
        p
    }

    /// Power sum `x_1^k + ... + x_n^k` (equal to `n` for `k = 0`).
    pub fn power_sum(nvars: usize, k: u32) -> Self {
        let mut p = MultiPoly::zero(nvars);
        for i in 0..nvars {
            let mut e = vec![0; nvars];
            e[i] = k;
            p.add_term(e, Q::one());
        }
        p
    }

    /// Elementary symmetric polynomial `e_k` in `nvars` variables.
    pub fn elementary(nvars: usize, k: usize) -> Self {
        // e_k is the x^k coefficient of Π (1 + x_i t); build it incrementally.
        let mut es: Vec<MultiPoly> = vec![MultiPoly::one(nvars)];
        for i in 0..nvars {
            let xi = MultiPoly::var(nvars, i);
            let mut next = es.clone();
            next.push(MultiPoly::zero(nvars));
            for j in 1..next.len() {
                next[j] = &next[j] + &(&es[j - 1] * &xi);
            }
            next.truncate(k + 1);
            es = next;
        }
        es.get(k).cloned().unwrap_or_else(|| MultiPoly::zero(nvars))
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &Q)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, exps: &[u32]) -> Q {
        self.terms.get(exps).cloned().unwrap_or_else(Q::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, exps: Exponents, c: Q) {
        assert_eq!(exps.len(), self.nvars, "exponent length mismatch");
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exps).or_insert_with(Q::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn total_degree(&self) -> Degree {
        self.terms
            .keys()
            .map(|e| e.iter().map(|&x| x as usize).sum())
            .max()
            .map_or(Degree::NegInfinity, Degree::Finite)
    }

    pub fn leading_term(&self) -> Option<(&Exponents, &Q)> {
        self.terms.iter().next_back()
    }

    pub fn scale(&self, c: &Q) -> MultiPoly {
        let mut p = MultiPoly::zero(self.nvars);
        for (e, v) in &self.terms {
            p.add_term(e.clone(), v * c);
        }
        p
    }

    pub fn pow(&self, k: u32) -> MultiPoly {
        (0..k).fold(MultiPoly::one(self.nvars), |acc, _| &acc * self)
    }

    pub fn eval(&self, point: &[Q]) -> Q {
        assert_eq!(point.len(), self.nvars, "point dimension mismatch");
        self.terms
            .iter()
            .map(|(e, c)| {
                e.iter()
                    .zip(point)
                    .fold(c.clone(), |acc, (&k, x)| acc * num_traits::pow(x.clone(), k as usize))
            })
            .sum()
    }

    pub fn eval_ints(&self, point: &[i64]) -> Q {
        let qs: Vec<Q> = point.iter().map(|&x| q(x)).collect();
        self.eval(&qs)
    }

    /// Renames variable `i` to `perm[i]`.
    pub fn permute(&self, perm: &[usize]) -> MultiPoly {
        assert_eq!(perm.len(), self.nvars);
        let mut p = MultiPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut ne = vec![0; self.nvars];
            for (i, &k) in e.iter().enumerate() {
                ne[perm[i]] = k;
            }
            p.add_term(ne, c.clone());
        }
        p
    }

    pub fn swap_vars(&self, i: usize, j: usize) -> MultiPoly {
        let mut perm: Vec<usize> = (0..self.nvars).collect();
        perm.swap(i, j);
        self.permute(&perm)
    }

    /// First adjacent transposition that changes the polynomial, if any.
    /// Adjacent transpositions generate the symmetric group.
    pub fn asymmetry(&self) -> Option<(usize, usize)> {
        (0..self.nvars.saturating_sub(1)).find_map(|i| (self.swap_vars(i, i + 1) != *self).then_some((i, i + 1)))
    }

    pub fn is_symmetric(&self) -> bool {
        self.asymmetry().is_none()
    }

    /// Substitutes `images[i]` for variable `i`; all images share one ring.
    pub fn substitute(&self, images: &[MultiPoly]) -> MultiPoly {
        assert_eq!(images.len(), self.nvars);
        let target = images.first().map_or(0, MultiPoly::nvars);
        let mut out = MultiPoly::zero(target);
        let mut powers: Vec<Vec<MultiPoly>> = images.iter().map(|p| vec![MultiPoly::one(p.nvars)]).collect();
        for (e, c) in &self.terms {
            let mut term = MultiPoly::constant(target, c.clone());
            for (i, &k) in e.iter().enumerate() {
                while powers[i].len() <= k as usize {
                    let next = &powers[i][powers[i].len() - 1] * &images[i];
                    powers[i].push(next);
                }
                term = &term * &powers[i][k as usize];
            }
            out = &out + &term;
        }
        out
    }

    /// Constant term and linear coefficients when the total degree is at most
    /// one.
    pub fn affine_parts(&self) -> Option<(Q, Vec<Q>)> {
        if self.total_degree() > Degree::Finite(1) {
            return None;
        }
        let constant = self.coeff(&vec![0; self.nvars]);
        let linear = (0..self.nvars)
            .map(|i| {
                let mut e = vec![0; self.nvars];
                e[i] = 1;
                self.coeff(&e)
            })
            .collect();
        Some((constant, linear))
    }

    /// Restriction to the diagonal `x_1 = ... = x_n = x`.
    pub fn diagonal(&self) -> Poly {
        let deg = self.total_degree().or_zero();
        let mut coeffs = vec![Q::zero(); deg + 1];
        for (e, c) in &self.terms {
            let k: u32 = e.iter().sum();
            coeffs[k as usize] += c;
        }
        Poly::from_coeffs(coeffs)
    }
}

fn same_ring(a: &MultiPoly, b: &MultiPoly) {
    assert_eq!(a.nvars, b.nvars, "polynomials live in different rings");
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        same_ring(self, rhs);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        same_ring(self, rhs);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        same_ring(self, rhs);
        let mut acc: BTreeMap<Exponents, Q> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e: Exponents = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                *acc.entry(e).or_insert_with(Q::zero) += ca * cb;
            }
        }
        acc.retain(|_, v| !v.is_zero());
        MultiPoly { nvars: self.nvars, terms: acc }
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.scale(&q(-1))
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_with(f, "x")
    }
}

impl MultiPoly {
    /// Formats with variables named `{prefix}1, {prefix}2, ...`.
    pub fn display_with(&self, prefix: &str) -> String {
        struct D<'a>(&'a MultiPoly, &'a str);
        impl fmt::Display for D<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                self.0.fmt_with(f, self.1)
            }
        }
        D(self, prefix).to_string()
    }

    fn fmt_with(&self, f: &mut fmt::Formatter<'_>, prefix: &str) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (n, (e, c)) in self.terms.iter().rev().enumerate() {
            if n == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let a = c.abs();
            let vars: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| {
                    if k == 1 {
                        format!("{prefix}{}", i + 1)
                    } else {
                        format!("{prefix}{}^{k}", i + 1)
                    }
                })
                .collect();
            if vars.is_empty() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{a}*{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}
