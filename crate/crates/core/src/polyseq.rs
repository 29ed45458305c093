//! Polynomial sequences into `H_{2n+1}(Z)` and unitriangular groups.
//!
//! [`HeisPolySeq`] stores the coordinate polynomials of `x ↦ (a(x), b(x),
//! c(x))`. Ordered products `g(x_1)⋯g(x_L)` are computed symbolically as
//! [`HeisMultiPoly`] values, and the palindromic product
//! `g(x_1)⋯g(x_L)g(x_L)⋯g(x_1)` gives the symmetrized sequence whose entries
//! are then rewritten in power sums.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::heisenberg::HeisPoint;
use crate::intpoly::{Degree, Poly};
use crate::mpoly::MultiPoly;
use crate::rational::{half, q, Q};

fn poly_dot(u: &[Poly], v: &[Poly]) -> Poly {
    u.iter().zip(v).fold(Poly::zero(), |acc, (x, y)| &acc + &(x * y))
}

fn mpoly_dot(nvars: usize, u: &[MultiPoly], v: &[MultiPoly]) -> MultiPoly {
    u.iter().zip(v).fold(MultiPoly::zero(nvars), |acc, (x, y)| &acc + &(x * y))
}

#[derive(Serialize, Deserialize)]
struct RawSeq {
    n: usize,
    a: Vec<Poly>,
    b: Vec<Poly>,
    c: Poly,
}

/// Polynomial sequence `x ↦ (a(x), b(x), c(x))` into `H_{2n+1}(Z)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawSeq", into = "RawSeq")]
pub struct HeisPolySeq {
    a: Vec<Poly>,
    b: Vec<Poly>,
    c: Poly,
}

impl TryFrom<RawSeq> for HeisPolySeq {
    type Error = Error;
    fn try_from(r: RawSeq) -> Result<Self> {
        if r.a.len() != r.n || r.b.len() != r.n {
            return Err(Error::DimensionMismatch { left: r.n, right: r.a.len().max(r.b.len()) });
        }
        HeisPolySeq::new(r.a, r.b, r.c)
    }
}

impl From<HeisPolySeq> for RawSeq {
    fn from(g: HeisPolySeq) -> Self {
        RawSeq { n: g.n(), a: g.a, b: g.b, c: g.c }
    }
}

impl HeisPolySeq {
    /// Rejects entries that are not integer-valued, since the sequence must
    /// land in the integral group.
    pub fn new(a: Vec<Poly>, b: Vec<Poly>, c: Poly) -> Result<Self> {
        if a.len() != b.len() {
            return Err(Error::DimensionMismatch { left: a.len(), right: b.len() });
        }
        if a.is_empty() {
            return Err(Error::InvalidArgument("n must be positive".into()));
        }
        if let Some(bad) = a.iter().chain(&b).chain(std::iter::once(&c)).find(|p| !p.is_integer_valued()) {
            return Err(Error::NotIntegerValued(bad.to_string()));
        }
        Ok(HeisPolySeq { a, b, c })
    }

    /// `H_3` sequence from ascending integer coefficient lists.
    pub fn h3(a: &[i64], b: &[i64], c: &[i64]) -> Result<Self> {
        HeisPolySeq::new(vec![Poly::from_ints(a)], vec![Poly::from_ints(b)], Poly::from_ints(c))
    }

    pub fn constant(p: &HeisPoint) -> Result<Self> {
        HeisPolySeq::new(
            p.a.iter().cloned().map(Poly::constant).collect(),
            p.b.iter().cloned().map(Poly::constant).collect(),
            Poly::constant(p.c.clone()),
        )
    }

    pub fn n(&self) -> usize {
        self.a.len()
    }

    pub fn a(&self) -> &[Poly] {
        &self.a
    }

    pub fn b(&self) -> &[Poly] {
        &self.b
    }

    pub fn c(&self) -> &Poly {
        &self.c
    }

    /// Central Lie coordinate `d = c - a·b / 2`.
    pub fn d(&self) -> Poly {
        &self.c - &poly_dot(&self.a, &self.b).scale(&half())
    }

    pub fn entries(&self) -> impl Iterator<Item = &Poly> {
        self.a.iter().chain(&self.b).chain(std::iter::once(&self.c))
    }

    /// Coordinates of `log g(x)`: `a`, then `b`, then `d`.
    pub fn log_components(&self) -> Vec<Poly> {
        self.a.iter().chain(&self.b).cloned().chain(std::iter::once(self.d())).collect()
    }

    pub fn max_entry_degree(&self) -> Degree {
        self.entries().map(Poly::degree).max().unwrap_or(Degree::NegInfinity)
    }

    pub fn is_constant(&self) -> bool {
        self.entries().all(Poly::is_constant)
    }

    pub fn eval(&self, x: i64) -> HeisPoint {
        self.eval_q(&q(x))
    }

    pub fn eval_q(&self, x: &Q) -> HeisPoint {
        HeisPoint {
            a: self.a.iter().map(|p| p.eval(x)).collect(),
            b: self.b.iter().map(|p| p.eval(x)).collect(),
            c: self.c.eval(x),
        }
    }

    /// Pointwise product `x ↦ g(x) h(x)`.
    pub fn mul(&self, other: &HeisPolySeq) -> Result<HeisPolySeq> {
        if self.n() != other.n() {
            return Err(Error::DimensionMismatch { left: self.n(), right: other.n() });
        }
        Ok(HeisPolySeq {
            a: self.a.iter().zip(&other.a).map(|(x, y)| x + y).collect(),
            b: self.b.iter().zip(&other.b).map(|(x, y)| x + y).collect(),
            c: &(&self.c + &other.c) + &poly_dot(&self.a, &other.b),
        })
    }

    /// Substitutes `x ↦ a x + b` in every entry.
    pub fn affine_translate(&self, a: i64, b: i64) -> Result<HeisPolySeq> {
        if a < 1 || b < 0 {
            return Err(Error::InvalidArgument(format!("translation ({a}, {b}) needs a >= 1 and b >= 0")));
        }
        let (aq, bq) = (q(a), q(b));
        Ok(HeisPolySeq {
            a: self.a.iter().map(|p| p.compose_affine(&aq, &bq)).collect(),
            b: self.b.iter().map(|p| p.compose_affine(&aq, &bq)).collect(),
            c: self.c.compose_affine(&aq, &bq),
        })
    }

    /// `x ↦ g(a_1 x + b_1) ⋯ g(a_m x + b_m)`.
    pub fn translate_product(&self, pairs: &[(i64, i64)]) -> Result<HeisPolySeq> {
        let mut acc = HeisPolySeq::constant(&HeisPoint::identity(self.n()))?;
        for &(a, b) in pairs {
            acc = acc.mul(&self.affine_translate(a, b)?)?;
        }
        Ok(acc)
    }

    /// Matrix form as an `(n+2) x (n+2)` unitriangular sequence.
    pub fn to_unitri(&self) -> UniTriPolySeq {
        let n = self.n();
        let mut entries = BTreeMap::new();
        for i in 0..n {
            entries.insert((0, 1 + i), self.a[i].clone());
            entries.insert((1 + i, n + 1), self.b[i].clone());
        }
        entries.insert((0, n + 1), self.c.clone());
        UniTriPolySeq { size: n + 2, entries }
    }

    /// Embeds the sequence in variable `var` of an `nvars`-variable ring.
    pub fn at_var(&self, var: usize, nvars: usize) -> HeisMultiPoly {
        let lift = |p: &Poly| MultiPoly::from_univariate(p, var, nvars);
        HeisMultiPoly {
            a: self.a.iter().map(lift).collect(),
            b: self.b.iter().map(lift).collect(),
            c: lift(&self.c),
        }
    }

    /// Probe bound for [`degree`] that is sound for this sequence: its
    /// chain degree bound (at least 1).
    pub fn degree_probe(&self) -> usize {
        degree_bound_b(self).chain_bound.or_zero().max(1)
    }
}

/// Symbolic group element whose coordinates are multivariate polynomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeisMultiPoly {
    pub a: Vec<MultiPoly>,
    pub b: Vec<MultiPoly>,
    pub c: MultiPoly,
}

impl HeisMultiPoly {
    pub fn identity(n: usize, nvars: usize) -> Self {
        HeisMultiPoly {
            a: vec![MultiPoly::zero(nvars); n],
            b: vec![MultiPoly::zero(nvars); n],
            c: MultiPoly::zero(nvars),
        }
    }

    pub fn n(&self) -> usize {
        self.a.len()
    }

    pub fn nvars(&self) -> usize {
        self.c.nvars()
    }

    pub fn mul(&self, other: &HeisMultiPoly) -> HeisMultiPoly {
        let nv = self.nvars();
        HeisMultiPoly {
            a: self.a.iter().zip(&other.a).map(|(x, y)| x + y).collect(),
            b: self.b.iter().zip(&other.b).map(|(x, y)| x + y).collect(),
            c: &(&self.c + &other.c) + &mpoly_dot(nv, &self.a, &other.b),
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = &MultiPoly> {
        self.a.iter().chain(&self.b).chain(std::iter::once(&self.c))
    }

    /// `log` coordinates `(a, b, c - a·b / 2)`.
    pub fn log_entries(&self) -> Vec<MultiPoly> {
        let d = &self.c - &mpoly_dot(self.nvars(), &self.a, &self.b).scale(&half());
        self.a.iter().chain(&self.b).cloned().chain(std::iter::once(d)).collect()
    }

    pub fn eval(&self, point: &[Q]) -> HeisPoint {
        HeisPoint {
            a: self.a.iter().map(|p| p.eval(point)).collect(),
            b: self.b.iter().map(|p| p.eval(point)).collect(),
            c: self.c.eval(point),
        }
    }

    pub fn eval_ints(&self, point: &[i64]) -> HeisPoint {
        let qs: Vec<Q> = point.iter().map(|&x| q(x)).collect();
        self.eval(&qs)
    }

    pub fn total_degree(&self) -> Degree {
        self.entries().map(MultiPoly::total_degree).max().unwrap_or(Degree::NegInfinity)
    }

    /// First adjacent transposition that changes some entry.
    pub fn asymmetry(&self) -> Option<(usize, usize)> {
        self.entries().find_map(MultiPoly::asymmetry)
    }

    pub fn is_symmetric(&self) -> bool {
        self.asymmetry().is_none()
    }

    pub fn permute(&self, perm: &[usize]) -> HeisMultiPoly {
        HeisMultiPoly {
            a: self.a.iter().map(|p| p.permute(perm)).collect(),
            b: self.b.iter().map(|p| p.permute(perm)).collect(),
            c: self.c.permute(perm),
        }
    }

    /// Restriction to the diagonal `x_1 = ... = x_L = x`.
    pub fn diagonal(&self) -> Result<HeisPolySeq> {
        HeisPolySeq::new(
            self.a.iter().map(MultiPoly::diagonal).collect(),
            self.b.iter().map(MultiPoly::diagonal).collect(),
            self.c.diagonal(),
        )
    }
}

/// `(x_1, ..., x_L) ↦ g(x_1) ⋯ g(x_L)`.
pub fn ordered_product(g: &HeisPolySeq, l: usize) -> HeisMultiPoly {
    (0..l).fold(HeisMultiPoly::identity(g.n(), l), |acc, i| acc.mul(&g.at_var(i, l)))
}

/// Palindromic product `g(x_1) ⋯ g(x_L) g(x_L) ⋯ g(x_1)`, symmetric in the
/// `x_i` and equal to `exp(2 Σ log g(x_i))`.
pub fn symmetrize(g: &HeisPolySeq, l: usize) -> HeisMultiPoly {
    let factors: Vec<HeisMultiPoly> = (0..l).map(|i| g.at_var(i, l)).collect();
    factors
        .iter()
        .chain(factors.iter().rev())
        .fold(HeisMultiPoly::identity(g.n(), l), |acc, f| acc.mul(f))
}

/// Polynomial sequence into the unitriangular group `U_size(Z)`; only the
/// strictly upper entries are stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniTriPolySeq {
    size: usize,
    entries: BTreeMap<(usize, usize), Poly>,
}

impl UniTriPolySeq {
    pub fn new(size: usize, entries: BTreeMap<(usize, usize), Poly>) -> Result<Self> {
        for (&(i, j), p) in &entries {
            if i >= j || j >= size {
                return Err(Error::InvalidArgument(format!("({i}, {j}) is not strictly upper in size {size}")));
            }
            if !p.is_integer_valued() {
                return Err(Error::NotIntegerValued(p.to_string()));
            }
        }
        let entries = entries.into_iter().filter(|(_, p)| !p.is_zero()).collect();
        Ok(UniTriPolySeq { size, entries })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn entry(&self, i: usize, j: usize) -> Poly {
        if i == j {
            return Poly::one();
        }
        self.entries.get(&(i, j)).cloned().unwrap_or_default()
    }

    pub fn entry_degree(&self, i: usize, j: usize) -> Degree {
        self.entries.get(&(i, j)).map_or(Degree::NegInfinity, Poly::degree)
    }

    pub fn eval(&self, x: i64) -> Vec<Vec<BigInt>> {
        (0..self.size)
            .map(|i| {
                (0..self.size)
                    .map(|j| match i.cmp(&j) {
                        std::cmp::Ordering::Greater => BigInt::zero(),
                        std::cmp::Ordering::Equal => BigInt::one(),
                        std::cmp::Ordering::Less => self.entry(i, j).eval_int(x).to_integer(),
                    })
                    .collect()
            })
            .collect()
    }

    /// Symbolic `g(x_1) ⋯ g(x_L)` as a full matrix of polynomials.
    pub fn ordered_product(&self, l: usize) -> Vec<Vec<MultiPoly>> {
        let n = self.size;
        let mut acc: Vec<Vec<MultiPoly>> = (0..n)
            .map(|i| (0..n).map(|j| if i == j { MultiPoly::one(l) } else { MultiPoly::zero(l) }).collect())
            .collect();
        for var in 0..l {
            let factor: Vec<Vec<MultiPoly>> = (0..n)
                .map(|i| (0..n).map(|j| MultiPoly::from_univariate(&self.entry(i, j), var, l)).collect())
                .collect();
            let mut next = vec![vec![MultiPoly::zero(l); n]; n];
            for i in 0..n {
                for j in i..n {
                    let mut s = MultiPoly::zero(l);
                    for k in i..=j {
                        if !acc[i][k].is_zero() && !factor[k][j].is_zero() {
                            s = &s + &(&acc[i][k] * &factor[k][j]);
                        }
                    }
                    next[i][j] = s;
                }
            }
            acc = next;
        }
        acc
    }

    /// Largest total degree over chains `i < l_1 < ... < j`, the sum of the
    /// entry degrees along the chain.
    pub fn chain_bound(&self) -> Degree {
        let n = self.size;
        // best[i][j]: heaviest chain from i to j
        let mut best = vec![vec![Degree::NegInfinity; n]; n];
        for gap in 1..n {
            for i in 0..n - gap {
                let j = i + gap;
                let mut b = self.entry_degree(i, j);
                for k in i + 1..j {
                    if let (Degree::Finite(x), Degree::Finite(y)) = (best[i][k], best[k][j]) {
                        b = b.max(Degree::Finite(x + y));
                    }
                }
                best[i][j] = b;
            }
        }
        best.iter().flatten().copied().max().unwrap_or(Degree::NegInfinity)
    }

    /// Chain bound, realized bound and the least `L` realizing it.
    pub fn degree_bound(&self) -> DegreeBound {
        let longest = self.size.saturating_sub(1).max(1);
        let realized: Vec<Degree> = (1..=longest)
            .map(|l| {
                self.ordered_product(l)
                    .iter()
                    .enumerate()
                    .flat_map(|(i, row)| row.iter().skip(i + 1))
                    .map(MultiPoly::total_degree)
                    .max()
                    .unwrap_or(Degree::NegInfinity)
            })
            .collect();
        finish_bound(self.chain_bound(), &realized)
    }
}

/// Output of [`degree_bound_b`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeBound {
    /// Maximum of entry-degree sums along chains.
    pub chain_bound: Degree,
    /// Maximum total degree actually attained by ordered-product entries.
    pub realized: Degree,
    /// Least number of factors at which `realized` is attained.
    pub l_prime: usize,
}

impl DegreeBound {
    /// The bound as a count of power sums (0 for the identity sequence).
    pub fn b(&self) -> usize {
        self.realized.or_zero()
    }
}

fn finish_bound(chain_bound: Degree, realized_by_l: &[Degree]) -> DegreeBound {
    let realized = realized_by_l.iter().copied().max().unwrap_or(Degree::NegInfinity);
    let l_prime = realized_by_l.iter().position(|&d| d == realized).map_or(1, |i| i + 1);
    DegreeBound { chain_bound, realized, l_prime }
}

/// Degree bound for a Heisenberg sequence. Chains in the matrix picture have
/// length at most two, so products of one and two factors suffice.
pub fn degree_bound_b(g: &HeisPolySeq) -> DegreeBound {
    let chain = g.to_unitri().chain_bound();
    let realized: Vec<Degree> = (1..=2).map(|l| ordered_product(g, l).total_degree()).collect();
    finish_bound(chain, &realized)
}

/// Rewrites a symmetric polynomial in the power sums `s_1, ..., s_B`.
///
/// The polynomial is first written in elementary symmetric polynomials by
/// repeatedly cancelling the lex-leading term, then each `e_k` is expressed
/// in power sums by Newton's identities `k e_k = Σ (-1)^{i-1} e_{k-i} s_i`.
/// The result is a polynomial in `B` variables.
pub fn power_sum_decompose(p: &MultiPoly, b: usize) -> Result<MultiPoly> {
    if let Some((i, j)) = p.asymmetry() {
        return Err(Error::NotSymmetric(i + 1, j + 1));
    }
    let deg = p.total_degree().or_zero();
    if deg > b {
        return Err(Error::InvalidArgument(format!("total degree {deg} exceeds {b} power sums")));
    }
    let l = p.nvars();
    let kmax = deg.min(l);
    let elem: Vec<MultiPoly> = (0..=kmax).map(|k| MultiPoly::elementary(l, k)).collect();
    let mut elem_powers: Vec<Vec<MultiPoly>> = elem.iter().map(|e| vec![MultiPoly::one(l), e.clone()]).collect();

    // e-exponents β_k (k = 1..=kmax) -> coefficient
    let mut in_elementary: BTreeMap<Vec<u32>, Q> = BTreeMap::new();
    let mut rest = p.clone();
    while let Some((lead, c)) = rest.leading_term().map(|(e, c)| (e.clone(), c.clone())) {
        let mut beta = vec![0u32; kmax];
        let mut term = MultiPoly::constant(l, c.clone());
        for k in 1..=kmax {
            let next = if k < l { lead[k] } else { 0 };
            let bk = lead[k - 1] - next;
            beta[k - 1] = bk;
            if bk > 0 {
                let pw = &mut elem_powers[k];
                while pw.len() <= bk as usize {
                    let more = &pw[pw.len() - 1] * &elem[k];
                    pw.push(more);
                }
                term = &term * &pw[bk as usize];
            }
        }
        rest = &rest - &term;
        *in_elementary.entry(beta).or_insert_with(Q::zero) += c;
    }

    // Newton: e_k as polynomials in s_1..s_b
    let mut e_in_s: Vec<MultiPoly> = vec![MultiPoly::one(b)];
    for k in 1..=kmax {
        let mut acc = MultiPoly::zero(b);
        for i in 1..=k {
            let sign = if i % 2 == 1 { q(1) } else { q(-1) };
            let term = &e_in_s[k - i] * &MultiPoly::var(b, i - 1);
            acc = &acc + &term.scale(&sign);
        }
        e_in_s.push(acc.scale(&Q::new(BigInt::one(), BigInt::from(k))));
    }

    let mut out = MultiPoly::zero(b);
    for (beta, c) in in_elementary {
        if c.is_zero() {
            continue;
        }
        let mut term = MultiPoly::constant(b, c);
        for (k, &bk) in beta.iter().enumerate() {
            if bk > 0 {
                term = &term * &e_in_s[k + 1].pow(bk);
            }
        }
        out = &out + &term;
    }
    Ok(out)
}

/// Which side a finite difference multiplies on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    /// `t ↦ g(s + t) g(t)^{-1}`
    Left,
    /// `t ↦ g(t)^{-1} g(s + t)`
    Right,
}

/// A sequence `N0 → H_{2n+1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSequence {
    Poly(HeisPolySeq),
    /// Values at `0, 1, ..., len - 1`.
    Table(Vec<HeisPoint>),
    Difference { inner: Box<GroupSequence>, shift: u64, side: Side },
}

impl GroupSequence {
    pub fn eval(&self, t: u64) -> Result<HeisPoint> {
        match self {
            GroupSequence::Poly(g) => Ok(g.eval(t as i64)),
            GroupSequence::Table(vals) => vals
                .get(t as usize)
                .cloned()
                .ok_or(Error::OutOfRange { index: t, len: vals.len() }),
            GroupSequence::Difference { inner, shift, side } => {
                let later = inner.eval(t + shift)?;
                let now = inner.eval(t)?;
                match side {
                    Side::Left => later.mul(&now.inv()),
                    Side::Right => now.inv().mul(&later),
                }
            }
        }
    }
}

pub fn finite_difference(g: &GroupSequence, shift: u64, side: Side) -> GroupSequence {
    GroupSequence::Difference { inner: Box::new(g.clone()), shift, side }
}

fn difference_values(vals: &[HeisPoint], shift: usize, side: Side) -> Vec<HeisPoint> {
    (0..vals.len().saturating_sub(shift))
        .map(|t| {
            let (later, now) = (&vals[t + shift], &vals[t]);
            match side {
                Side::Left => later.mul(&now.inv()),
                Side::Right => now.inv().mul(later),
            }
            .expect("values share one group")
        })
        .collect()
}

/// Least `d` such that every `(d+1)`-fold mixed left/right difference with
/// shifts in `1..=probe` vanishes on `0..=probe`.
///
/// Values are sampled once on `0..=probe (probe + 2)`, enough for `probe + 1`
/// nested differences. Differences that are already identity on their whole
/// sampled range are not expanded further.
pub fn degree(g: &GroupSequence, probe: usize) -> Result<Degree> {
    let probe = probe.max(1);
    let span = probe * (probe + 2);
    let vals: Vec<HeisPoint> = (0..=span as u64).map(|t| g.eval(t)).collect::<Result<_>>()?;
    let window_is_identity = |v: &[HeisPoint]| v.iter().take(probe + 1).all(HeisPoint::is_identity);
    if window_is_identity(&vals) {
        return Ok(Degree::NegInfinity);
    }
    // frontier: difference value vectors of the current order not yet
    // known to vanish
    let mut frontier = vec![vals];
    for d in 0..=probe {
        let mut next = Vec::new();
        let mut all_vanish = true;
        for v in &frontier {
            for shift in 1..=probe {
                for side in [Side::Left, Side::Right] {
                    let w = difference_values(v, shift, side);
                    if w.len() <= probe {
                        return Err(Error::BoundTooSmall(probe));
                    }
                    if !window_is_identity(&w) {
                        all_vanish = false;
                    }
                    if !w.iter().all(HeisPoint::is_identity) {
                        next.push(w);
                    }
                }
            }
        }
        if all_vanish {
            return Ok(Degree::Finite(d));
        }
        frontier = next;
    }
    Err(Error::BoundTooSmall(probe))
}

/// Result of [`affine_multiplicative_check`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AffineReport {
    pub bound: u64,
    pub left_multiplicative: bool,
    pub right_multiplicative: bool,
    /// Least `i` with `l_i != l_1^i`.
    pub left_failure: Option<u64>,
    pub right_failure: Option<u64>,
    /// Some `(n, m)` with `n >= 1`, `m != 0` and `g_0^n = l_1^m`, if found
    /// with `|n|, |m| <= bound`.
    pub power_relation: Option<(i64, i64)>,
}

/// Tests whether `l_i = g_0^{-1} g_i` and `r_i = g_i g_0^{-1}` are powers of
/// `l_1` and `r_1` for `i <= bound`.
pub fn affine_multiplicative_check(g: &GroupSequence, bound: u64) -> Result<AffineReport> {
    let g0 = g.eval(0)?;
    let g0_inv = g0.inv();
    let bound = bound.max(1);
    let vals: Vec<HeisPoint> = (0..=bound).map(|i| g.eval(i)).collect::<Result<_>>()?;
    let l: Vec<HeisPoint> = vals.iter().map(|x| g0_inv.mul(x)).collect::<Result<_>>()?;
    let r: Vec<HeisPoint> = vals.iter().map(|x| x.mul(&g0_inv)).collect::<Result<_>>()?;
    let first_failure = |seq: &[HeisPoint]| (0..=bound).find(|&i| seq[i as usize] != seq[1].pow(i as i64));
    let left_failure = first_failure(&l);
    let right_failure = first_failure(&r);
    let b = bound as i64;
    let power_relation = (1..=b).find_map(|n| {
        let lhs = g0.pow(n);
        (1..=b).flat_map(|m| [m, -m]).find(|&m| l[1].pow(m) == lhs).map(|m| (n, m))
    });
    Ok(AffineReport {
        bound,
        left_multiplicative: left_failure.is_none(),
        right_multiplicative: right_failure.is_none(),
        left_failure,
        right_failure,
        power_relation,
    })
}
