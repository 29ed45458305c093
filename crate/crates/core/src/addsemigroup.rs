//! Numerical semigroups, windowed sumsets and coverage of polynomial value
//! sets.
//!
//! Every question about an infinite set is answered relative to an explicit
//! window or bound, and the window is carried in the result.

use std::cmp::Reverse;
use std::collections::{BTreeSet, BinaryHeap, HashSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::intpoly::{Degree, Poly};

/// Sorted, distinct, nonempty set of integer generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GeneratorSet {
    gens: Vec<i64>,
}

impl GeneratorSet {
    pub fn new(mut gens: Vec<i64>) -> Result<Self> {
        if gens.is_empty() {
            return Err(Error::InvalidGenerators("empty generator set".into()));
        }
        gens.sort_unstable();
        gens.dedup();
        Ok(GeneratorSet { gens })
    }

    pub fn gens(&self) -> &[i64] {
        &self.gens
    }

    pub fn gcd(&self) -> i64 {
        self.gens.iter().fold(0i64, |g, &a| g.gcd(&a))
    }

    fn require_positive(&self) -> Result<()> {
        match self.gens.iter().find(|&&a| a <= 0) {
            Some(a) => Err(Error::InvalidGenerators(format!("generator {a} is not positive"))),
            None => Ok(()),
        }
    }

    /// Smallest representable value in each residue class modulo the least
    /// generator (Dijkstra over `Z/a_1`). `None` marks an unreachable class.
    fn residue_table(&self) -> Vec<Option<i64>> {
        let m = self.gens[0] as usize;
        let mut dist: Vec<Option<i64>> = vec![None; m];
        let mut heap = BinaryHeap::new();
        dist[0] = Some(0);
        heap.push(Reverse((0i64, 0usize)));
        while let Some(Reverse((d, r))) = heap.pop() {
            if dist[r] != Some(d) {
                continue;
            }
            for &a in &self.gens[1..] {
                let nd = d + a;
                let nr = (r + a as usize) % m;
                if dist[nr].map_or(true, |old| nd < old) {
                    dist[nr] = Some(nd);
                    heap.push(Reverse((nd, nr)));
                }
            }
        }
        dist
    }
}

/// Largest integer that is not a nonnegative integer combination of the
/// generators; `-1` when every nonnegative integer is representable.
pub fn frobenius_number(s: &GeneratorSet) -> Result<i64> {
    s.require_positive()?;
    let g = s.gcd();
    if g != 1 {
        return Err(Error::GcdNotOne(g.to_string()));
    }
    let table = s.residue_table();
    let worst = table.iter().map(|d| d.expect("gcd 1 reaches every residue")).max().unwrap_or(0);
    Ok(worst - s.gens[0])
}

/// Whether `t` is a nonnegative integer combination of the generators (the
/// empty sum represents 0).
pub fn representable(s: &GeneratorSet, t: i64) -> Result<bool> {
    s.require_positive()?;
    if t < 0 {
        return Err(Error::InvalidArgument(format!("target {t} is negative")));
    }
    let table = s.residue_table();
    let r = (t % s.gens[0]) as usize;
    Ok(table[r].is_some_and(|d| t >= d))
}

/// Componentwise box `[lo, hi]` used to truncate sumsets. A scalar window is
/// the one-dimensional case.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SumsetWindow {
    pub lo: Vec<i64>,
    pub hi: Vec<i64>,
    /// Caller-supplied bound on the magnitude of every summand, needed to
    /// prune soundly when summands have mixed signs.
    pub summand_bound: Option<i64>,
}

impl SumsetWindow {
    pub fn interval(lo: i64, hi: i64) -> Self {
        SumsetWindow { lo: vec![lo], hi: vec![hi], summand_bound: None }
    }

    pub fn boxed(lo: Vec<i64>, hi: Vec<i64>) -> Result<Self> {
        if lo.len() != hi.len() {
            return Err(Error::DimensionMismatch { left: lo.len(), right: hi.len() });
        }
        Ok(SumsetWindow { lo, hi, summand_bound: None })
    }

    pub fn with_summand_bound(mut self, bound: i64) -> Self {
        self.summand_bound = Some(bound.abs());
        self
    }

    pub fn dim(&self) -> usize {
        self.lo.len()
    }

    pub fn contains(&self, v: &[i64]) -> bool {
        v.iter().zip(&self.lo).zip(&self.hi).all(|((x, lo), hi)| lo <= x && x <= hi)
    }
}

/// Exact `kA ∩ window` for a scalar set `A`.
pub fn sumset_iterate(a: &[i64], k: usize, window: &SumsetWindow) -> Result<BTreeSet<i64>> {
    let vecs: Vec<Vec<i64>> = a.iter().map(|&x| vec![x]).collect();
    Ok(sumset_iterate_vec(&vecs, k, window)?.into_iter().map(|v| v[0]).collect())
}

/// Exact `kA ∩ window` for a set of integer vectors.
///
/// With componentwise nonnegative summands, partial sums are pruned against
/// `hi`; with nonpositive summands, against `lo`. Mixed signs need the
/// window's summand bound `b`: a partial sum `p` with `r` summands still to
/// add survives only if `p - r b <= hi` and `p + r b >= lo` in every
/// coordinate.
pub fn sumset_iterate_vec(a: &[Vec<i64>], k: usize, window: &SumsetWindow) -> Result<BTreeSet<Vec<i64>>> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be at least 1".into()));
    }
    let dim = window.dim();
    if let Some(bad) = a.iter().find(|v| v.len() != dim) {
        return Err(Error::DimensionMismatch { left: bad.len(), right: dim });
    }
    let nonneg = a.iter().flatten().all(|&x| x >= 0);
    let nonpos = a.iter().flatten().all(|&x| x <= 0);
    let summands: Vec<&Vec<i64>> = match (nonneg, nonpos, window.summand_bound) {
        (true, _, _) => a.iter().filter(|v| v.iter().zip(&window.hi).all(|(x, h)| x <= h)).collect(),
        (_, true, _) => a.iter().filter(|v| v.iter().zip(&window.lo).all(|(x, l)| x >= l)).collect(),
        (_, _, Some(b)) => a.iter().filter(|v| v.iter().all(|x| x.abs() <= b)).collect(),
        _ => return Err(Error::UnsupportedPruning),
    };
    let keep = |p: &[i64], remaining: i64| -> bool {
        if nonneg {
            p.iter().zip(&window.hi).all(|(x, h)| x <= h)
        } else if nonpos {
            p.iter().zip(&window.lo).all(|(x, l)| x >= l)
        } else {
            let b = window.summand_bound.unwrap_or(0);
            p.iter()
                .zip(&window.lo)
                .zip(&window.hi)
                .all(|((x, l), h)| x - remaining * b <= *h && x + remaining * b >= *l)
        }
    };
    let mut layer: HashSet<Vec<i64>> = HashSet::new();
    layer.insert(vec![0; dim]);
    for step in 1..=k {
        let remaining = (k - step) as i64;
        let mut next = HashSet::with_capacity(layer.len());
        for p in &layer {
            for s in &summands {
                let v: Vec<i64> = p.iter().zip(s.iter()).map(|(x, y)| x + y).collect();
                if keep(&v, remaining) {
                    next.insert(v);
                }
            }
        }
        layer = next;
    }
    Ok(layer.into_iter().filter(|v| window.contains(v)).collect())
}

/// Outcome of [`coverage_bound_search`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Coverage {
    /// Every window element of the generated semigroup is a sum of at most
    /// `summands` values. `window` is `[0, hi]` for nonnegative value sets and
    /// `[-hi, 0]` for nonpositive ones.
    Covered { summands: usize, window: (i64, i64) },
    NotCovered { witness: CoverageWitness },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CoverageWitness {
    /// `f` is the nonzero constant `value`; `k f(N0) = {k value}` so the
    /// multiples `value * N` escape every finite union.
    NonzeroConstant {
        #[serde(with = "big_str")]
        value: BigInt,
    },
    /// `f` takes both signs on `N0`. `extreme` is the minimum (or maximum when
    /// the leading coefficient is negative), attained at `at`; the generated
    /// semigroup is then a subgroup no finite union of sumsets exhausts.
    SignChange {
        #[serde(with = "big_str")]
        extreme: BigInt,
        at: u64,
    },
}

mod big_str {
    use num_bigint::BigInt;
    use serde::Serializer;

    pub fn serialize<S: Serializer>(x: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&x.to_string())
    }
}

/// Smallest `X` such that `|f(x)| > m` for all integers `x > X`, from the
/// Cauchy bound of `f ∓ m`.
fn escape_bound(f: &Poly, m: &BigInt) -> u64 {
    let lc = f.leading_coeff();
    let d = f.degree().or_zero();
    let mut bound = crate::rational::q(0);
    for (i, c) in f.coeffs().iter().enumerate().take(d) {
        let mut c = c.clone();
        if i == 0 {
            c = c.abs() + crate::rational::from_big(m.abs());
        }
        let r = (c / &lc).abs();
        if r > bound {
            bound = r;
        }
    }
    (bound.ceil().to_integer() + 1u32).to_u64().unwrap_or(u64::MAX)
}

/// Classifies the semigroup generated by `f(N0)` as covered by finitely many
/// sumsets or not. For covered cases the reported count is the minimum needed
/// within the window.
pub fn coverage_bound_search(f: &Poly, window_hi: i64) -> Result<Coverage> {
    if !f.is_integer_valued() {
        return Err(Error::NotIntegerValued(f.to_string()));
    }
    let hi = window_hi.max(0);
    match f.degree() {
        Degree::NegInfinity => return Ok(Coverage::Covered { summands: 1, window: (0, hi) }),
        Degree::Finite(0) => {
            let value = f.coeff(0).to_integer();
            return Ok(Coverage::NotCovered { witness: CoverageWitness::NonzeroConstant { value } });
        }
        Degree::Finite(_) => {}
    }
    let sign = if f.leading_coeff().is_positive() { 1 } else { -1 };
    let g = if sign > 0 { f.clone() } else { -f };
    // Past the bound g is positive and increasing beyond hi, so the scan
    // range below sees every value that can matter.
    let scan_to = escape_bound(&g, &BigInt::from(hi));
    let mut min: Option<(BigInt, u64)> = None;
    let mut values = BTreeSet::new();
    for x in 0..=scan_to {
        let v = g.eval_integer(x as i64).expect("integer-valued");
        if min.as_ref().map_or(true, |(m, _)| &v < m) {
            min = Some((v.clone(), x));
        }
        if !v.is_negative() && v <= BigInt::from(hi) {
            values.insert(v.to_i64().expect("bounded by window"));
        }
    }
    let (m, at) = min.expect("scan is nonempty");
    if m.is_negative() {
        let extreme = if sign > 0 { m } else { -m };
        return Ok(Coverage::NotCovered { witness: CoverageWitness::SignChange { extreme, at } });
    }
    let best = min_summands_table(&values.into_iter().collect::<Vec<_>>(), hi);
    let summands = best.iter().flatten().copied().max().unwrap_or(1).max(1);
    let window = if sign > 0 { (0, hi) } else { (-hi, 0) };
    Ok(Coverage::Covered { summands, window })
}

/// `best[t]` = least `k >= 1` with `t` a sum of `k` values from `vals`
/// (nonnegative), for `0 <= t <= hi`.
pub(crate) fn min_summands_table(vals: &[i64], hi: i64) -> Vec<Option<usize>> {
    let n = hi as usize + 1;
    // padded[t] allows the empty sum at 0
    let mut padded: Vec<Option<usize>> = vec![None; n];
    padded[0] = Some(0);
    let positive: Vec<usize> = vals.iter().filter(|&&v| v > 0).map(|&v| v as usize).collect();
    for t in 1..n {
        padded[t] = positive
            .iter()
            .filter(|&&v| v <= t)
            .filter_map(|&v| padded[t - v].map(|k| k + 1))
            .min();
    }
    let mut best = padded;
    best[0] = vals.contains(&0).then_some(1);
    best
}

/// Least `k` with `target = f(x_1) + ... + f(x_k)` for a vector of
/// polynomials `f`, arguments in `0..=x_bound`. `None` when no representation
/// exists within the bound.
///
/// The layered search prunes componentwise against `target`, which is only
/// sound when every value is componentwise nonnegative.
pub fn vector_min_summands(f: &[Poly], target: &[i64], x_bound: i64) -> Result<Option<usize>> {
    if f.len() != target.len() {
        return Err(Error::DimensionMismatch { left: f.len(), right: target.len() });
    }
    if let Some(bad) = f.iter().find(|p| !p.is_integer_valued()) {
        return Err(Error::NotIntegerValued(bad.to_string()));
    }
    let mut values: BTreeSet<Vec<i64>> = BTreeSet::new();
    for x in 0..=x_bound.max(0) {
        let mut v = Vec::with_capacity(f.len());
        let mut too_big = false;
        for p in f {
            let y = p.eval_integer(x).expect("integer-valued");
            if y.is_negative() {
                return Err(Error::UnsupportedPruning);
            }
            match y.to_i64() {
                Some(y) => v.push(y),
                None => too_big = true,
            }
        }
        if !too_big && v.iter().zip(target).all(|(a, t)| a <= t) {
            values.insert(v);
        }
    }
    if target.iter().any(|&t| t < 0) {
        return Ok(None);
    }
    let zero = vec![0; target.len()];
    let mut layer: BTreeSet<Vec<i64>> = BTreeSet::from([zero]);
    for k in 1.. {
        let mut next = BTreeSet::new();
        for p in &layer {
            for v in &values {
                let s: Vec<i64> = p.iter().zip(v).map(|(a, b)| a + b).collect();
                if s.iter().zip(target).all(|(a, t)| a <= t) {
                    next.insert(s);
                }
            }
        }
        if next.contains(target) {
            return Ok(Some(k));
        }
        if next.is_empty() || next == layer {
            return Ok(None);
        }
        layer = next;
    }
    unreachable!()
}
