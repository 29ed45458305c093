//! Simultaneous power sums: domain membership and a bounded exact solver.
//!
//! A domain fixes the number of summands `N`, a modulus `A` and rational
//! constants `i_1`, `(i_ν, J_ν)`. A target `(s_1, ..., s_n)` lies in it when
//! every `s_ν` is divisible by `A`, `s_1 > i_1` and
//! `i_ν s_1^ν < s_ν < J_ν s_1^ν` for `ν >= 2`.

use std::collections::BTreeMap;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{parse_q, serde_q, Q};

const PRESETS: &str = include_str!("../data/kamke_presets.toml");

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Bound {
    #[serde(with = "serde_q")]
    pub lower: Q,
    #[serde(with = "serde_q")]
    pub upper: Q,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KamkeDomain {
    /// Number of power sums.
    pub degrees: usize,
    /// Number of summands `N`.
    pub summands: usize,
    /// Divisibility modulus `A`.
    pub modulus: i64,
    #[serde(with = "serde_q")]
    pub i1: Q,
    /// `(i_ν, J_ν)` for `ν = 2..=degrees`.
    pub bounds: Vec<Bound>,
}

#[derive(Deserialize)]
struct PresetFile {
    presets: BTreeMap<String, RawPreset>,
}

#[derive(Deserialize)]
struct RawPreset {
    #[serde(default)]
    aliases: Vec<String>,
    degrees: usize,
    summands: usize,
    modulus: i64,
    i1: String,
    bounds: Vec<Vec<String>>,
}

impl KamkeDomain {
    pub fn new(degrees: usize, summands: usize, modulus: i64, i1: Q, bounds: Vec<(Q, Q)>) -> Result<Self> {
        if degrees == 0 || summands == 0 {
            return Err(Error::InvalidDomain("degree count and summand count must be positive".into()));
        }
        if modulus <= 0 {
            return Err(Error::InvalidDomain(format!("modulus {modulus} must be positive")));
        }
        if !i1.is_positive() {
            return Err(Error::InvalidDomain(format!("i1 = {i1} must be positive")));
        }
        if bounds.len() + 1 != degrees {
            return Err(Error::InvalidDomain(format!("{} bound pairs for {degrees} power sums", bounds.len())));
        }
        for (k, (lo, hi)) in bounds.iter().enumerate() {
            if !lo.is_positive() || lo >= hi {
                return Err(Error::InvalidDomain(format!("need 0 < i_{0} < J_{0}, got {lo} and {hi}", k + 2)));
            }
        }
        let bounds = bounds.into_iter().map(|(lower, upper)| Bound { lower, upper }).collect();
        Ok(KamkeDomain { degrees, summands, modulus, i1, bounds })
    }

    /// The two-power-sum domain `N = 5, A = 2, i_1 = 7, i_2 = 1/4,
    /// J_2 = 1/3 - eps` with `0 < eps < 1/12`.
    pub fn two_power(eps: Q) -> Result<Self> {
        let twelfth = Q::new(BigInt::from(1), BigInt::from(12));
        if !eps.is_positive() || eps >= twelfth {
            return Err(Error::InvalidDomain(format!("eps = {eps} must lie in (0, 1/12)")));
        }
        let third = Q::new(BigInt::from(1), BigInt::from(3));
        let quarter = Q::new(BigInt::from(1), BigInt::from(4));
        KamkeDomain::new(2, 5, 2, Q::from_integer(BigInt::from(7)), vec![(quarter, third - eps)])
    }

    pub fn preset_names() -> Vec<String> {
        let file: PresetFile = toml::from_str(PRESETS).expect("bundled presets parse");
        file.presets.keys().cloned().collect()
    }

    /// Looks up a bundled preset by name or alias.
    pub fn preset(name: &str) -> Result<Self> {
        let file: PresetFile = toml::from_str(PRESETS).map_err(|e| Error::Parse(e.to_string()))?;
        let raw = file
            .presets
            .iter()
            .find(|(k, v)| *k == name || v.aliases.iter().any(|a| a == name))
            .map(|(_, v)| v)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown preset {name:?}")))?;
        let mut bounds = Vec::new();
        for b in &raw.bounds {
            let (lo, hi, eps) = match b.as_slice() {
                [lo, hi] => (parse_q(lo)?, parse_q(hi)?, Q::zero()),
                [lo, hi, eps] => (parse_q(lo)?, parse_q(hi)?, parse_q(eps)?),
                _ => return Err(Error::Parse(format!("bound entry {b:?} needs 2 or 3 values"))),
            };
            bounds.push((lo, hi - eps));
        }
        KamkeDomain::new(raw.degrees, raw.summands, raw.modulus, parse_q(&raw.i1)?, bounds)
    }

    pub fn contains(&self, t: &PowerSumTarget) -> bool {
        if t.s.len() != self.degrees || t.s.iter().any(|&x| x < 0 || x % self.modulus != 0) {
            return false;
        }
        let s1 = Q::from_integer(BigInt::from(t.s[0]));
        if s1 <= self.i1 {
            return false;
        }
        self.bounds.iter().enumerate().all(|(k, b)| {
            let nu = k + 2;
            let p = num_traits::pow(s1.clone(), nu);
            let s = Q::from_integer(BigInt::from(t.s[nu - 1]));
            &b.lower * &p < s && s < &b.upper * &p
        })
    }

    /// Every target in the domain with `s_1 <= s1_max`, ordered by `s_1` and
    /// then lexicographically.
    pub fn enumerate(&self, s1_max: i64) -> Vec<PowerSumTarget> {
        let a = self.modulus;
        let first = (self.i1.floor().to_integer() + 1u32).max(BigInt::zero());
        let first: i64 = i64::try_from(first).unwrap_or(i64::MAX);
        let start = ceil_div(first, a) * a;
        let mut out = Vec::new();
        let mut s1 = start;
        while s1 <= s1_max {
            let s1q = Q::from_integer(BigInt::from(s1));
            let ranges: Vec<(i64, i64)> = self
                .bounds
                .iter()
                .enumerate()
                .map(|(k, b)| {
                    let p = num_traits::pow(s1q.clone(), k + 2);
                    // strict bounds: smallest multiple of A above lower*p,
                    // largest below upper*p
                    let lo = (&b.lower * &p).floor().to_integer() + 1;
                    let hi = (&b.upper * &p).ceil().to_integer() - 1;
                    let lo = i64::try_from(lo).unwrap_or(i64::MAX);
                    let hi = i64::try_from(hi).unwrap_or(i64::MAX);
                    (ceil_div(lo, a) * a, hi.div_euclid(a) * a)
                })
                .collect();
            let mut tails: Vec<Vec<i64>> = vec![vec![s1]];
            for &(lo, hi) in &ranges {
                let mut next = Vec::new();
                for t in &tails {
                    let mut v = lo;
                    while v <= hi {
                        let mut t = t.clone();
                        t.push(v);
                        next.push(t);
                        v += a;
                    }
                }
                tails = next;
            }
            out.extend(tails.into_iter().map(|s| PowerSumTarget { s }));
            s1 += a;
        }
        out
    }
}

/// Power-sum values `(s_1, ..., s_n)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PowerSumTarget {
    pub s: Vec<i64>,
}

impl PowerSumTarget {
    pub fn new(s: Vec<i64>) -> Result<Self> {
        if let Some(bad) = s.iter().find(|&&x| x < 0) {
            return Err(Error::InvalidArgument(format!("power sum {bad} is negative")));
        }
        Ok(PowerSumTarget { s })
    }

    /// Power sums of `x` for `ν = 1..=n`.
    pub fn of(x: &[i64], n: usize) -> Self {
        let s = (1..=n as u32).map(|nu| x.iter().map(|&v| (v as i128).pow(nu)).sum::<i128>() as i64).collect();
        PowerSumTarget { s }
    }
}

fn ceil_div(x: i64, a: i64) -> i64 {
    -((-x).div_euclid(a))
}

/// `x^k`, or `None` past `i128`.
fn checked_pow(x: i128, k: u32) -> Option<i128> {
    x.checked_pow(k)
}

/// Smallest `x >= 0` with `x^k >= v`.
fn iroot_ceil(v: i128, k: u32) -> i128 {
    if v <= 0 {
        return 0;
    }
    let (mut lo, mut hi) = (0i128, 1i128);
    while checked_pow(hi, k).is_some_and(|p| p < v) {
        hi *= 2;
    }
    while lo < hi {
        let mid = (lo + hi) / 2;
        if checked_pow(mid, k).is_some_and(|p| p < v) {
            lo = mid + 1;
        } else {
            hi = mid;
        }
    }
    lo
}

/// Necessary conditions for `r` nonnegative integers to have power sums
/// `rem`.
fn feasible(rem: &[i128], r: usize) -> bool {
    if rem.iter().any(|&v| v < 0) {
        return false;
    }
    let r1 = rem[0];
    if r == 0 {
        return rem.iter().all(|&v| v == 0);
    }
    for (k, &rv) in rem.iter().enumerate().skip(1) {
        let nu = k as u32 + 1;
        // y^ν ≡ y (mod 2)
        if (rv - r1) % 2 != 0 {
            return false;
        }
        if let Some(p) = checked_pow(r1, nu) {
            // Σ y^ν <= (Σ y)^ν
            if rv > p {
                return false;
            }
            // power mean: r^{ν-1} Σ y^ν >= (Σ y)^ν
            if let Some(scale) = checked_pow(r as i128, nu - 1) {
                if let Some(lhs) = rv.checked_mul(scale) {
                    if lhs < p {
                        return false;
                    }
                }
            }
        }
    }
    true
}

fn search(rem: &mut [i128], r: usize, cap: i128, out: &mut Vec<i64>) -> bool {
    if !feasible(rem, r) {
        return false;
    }
    if rem[0] == 0 {
        out.extend(std::iter::repeat(0).take(r));
        return true;
    }
    if r == 1 {
        let x = rem[0];
        let ok = x <= cap && rem.iter().enumerate().all(|(k, &v)| checked_pow(x, k as u32 + 1) == Some(v));
        if ok {
            out.push(x as i64);
        }
        return ok;
    }
    let n = rem.len();
    let mut hi = cap.min(rem[0]);
    for (k, &v) in rem.iter().enumerate().skip(1) {
        // x^ν <= R_ν
        let mut root = iroot_ceil(v, k as u32 + 1);
        if checked_pow(root, k as u32 + 1).is_none_or(|p| p > v) {
            root -= 1;
        }
        hi = hi.min(root);
    }
    // every remaining summand is at most x, so r x^ν >= R_ν
    let lo = (0..n)
        .map(|k| iroot_ceil((rem[k] + r as i128 - 1) / r as i128, k as u32 + 1))
        .max()
        .unwrap_or(0);
    let mut x = hi;
    while x >= lo.max(1) {
        let mut p = 1i128;
        for v in rem.iter_mut() {
            p *= x;
            *v -= p;
        }
        out.push(x as i64);
        if search(rem, r - 1, x, out) {
            return true;
        }
        out.pop();
        let mut p = 1i128;
        for v in rem.iter_mut() {
            p *= x;
            *v += p;
        }
        x -= 1;
    }
    false
}

/// `N` nonnegative integers, sorted descending, whose `ν`-th power sums are
/// `t.s[ν-1]`, each at most `x_bound` (default `s_1`). `None` when the
/// exhaustive search finds nothing.
pub fn solve_power_sums(t: &PowerSumTarget, summands: usize, x_bound: Option<i64>) -> Option<Vec<i64>> {
    if t.s.is_empty() {
        return Some(vec![0; summands]);
    }
    if t.s.iter().any(|&v| v < 0) {
        return None;
    }
    let mut rem: Vec<i128> = t.s.iter().map(|&v| v as i128).collect();
    let cap = x_bound.unwrap_or(t.s[0]).max(0) as i128;
    let mut out = Vec::with_capacity(summands);
    search(&mut rem, summands, cap, &mut out).then_some(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DomainReport {
    pub domain: KamkeDomain,
    pub s1_max: i64,
    pub checked: usize,
    /// Targets without a solution, sorted.
    pub failures: Vec<PowerSumTarget>,
    pub elapsed_ms: u128,
}

impl DomainReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Solves every domain target with `s_1 <= s1_max`; targets are checked in
/// parallel and failures reported in enumeration order.
pub fn verify_domain(domain: &KamkeDomain, s1_max: i64) -> DomainReport {
    let start = Instant::now();
    let targets = domain.enumerate(s1_max);
    let failures: Vec<PowerSumTarget> = targets
        .par_iter()
        .filter(|t| solve_power_sums(t, domain.summands, None).is_none())
        .cloned()
        .collect();
    DomainReport {
        domain: domain.clone(),
        s1_max,
        checked: targets.len(),
        failures,
        elapsed_ms: start.elapsed().as_millis(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;

    fn t(s: &[i64]) -> PowerSumTarget {
        PowerSumTarget::new(s.to_vec()).unwrap()
    }

    #[test]
    fn preset_matches_constructor() {
        let d = KamkeDomain::preset("kamke-n2").unwrap();
        assert_eq!(d, KamkeDomain::two_power(frac(1, 24)).unwrap());
        assert_eq!(KamkeDomain::preset("paper-n2").unwrap(), d);
        assert!(KamkeDomain::preset("nope").is_err());
        assert_eq!(d.bounds[0].upper, frac(7, 24));
    }

    #[test]
    fn membership() {
        let d = KamkeDomain::preset("kamke-n2").unwrap();
        assert!(d.contains(&t(&[20, 110])));
        assert!(!d.contains(&t(&[6, 10])));
        assert!(!d.contains(&t(&[20, 90])));
        assert!(!d.contains(&t(&[20, 111])));
        assert!(!d.contains(&t(&[20, 100])));
    }

    #[test]
    fn invalid_domains() {
        assert!(KamkeDomain::new(2, 5, 2, frac(7, 1), vec![(frac(1, 3), frac(1, 4))]).is_err());
        assert!(KamkeDomain::new(2, 5, 2, frac(7, 1), vec![]).is_err());
        assert!(KamkeDomain::new(2, 5, 0, frac(7, 1), vec![(frac(1, 4), frac(1, 3))]).is_err());
        assert!(KamkeDomain::two_power(frac(1, 12)).is_err());
    }

    #[test]
    fn solver_examples() {
        assert_eq!(solve_power_sums(&t(&[0, 0]), 5, None), Some(vec![0; 5]));
        let x = solve_power_sums(&t(&[20, 110]), 5, None).unwrap();
        assert_eq!(PowerSumTarget::of(&x, 2), t(&[20, 110]));
        assert_eq!(x.len(), 5);
        let x = solve_power_sums(&t(&[10, 30]), 5, None).unwrap();
        assert_eq!(PowerSumTarget::of(&x, 2), t(&[10, 30]));
        assert_eq!(solve_power_sums(&t(&[2, 4]), 1, None), Some(vec![2]));
        assert_eq!(solve_power_sums(&t(&[4, 12]), 2, None), None);
        assert_eq!(solve_power_sums(&t(&[3, 5, 9]), 2, None), Some(vec![2, 1]));
    }

    #[test]
    fn enumeration_is_ordered_and_inside() {
        let d = KamkeDomain::preset("kamke-n2").unwrap();
        let all = d.enumerate(24);
        assert!(!all.is_empty());
        assert!(all.iter().all(|x| d.contains(x)));
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        // brute-force count for comparison
        let brute = (0..=24i64)
            .flat_map(|s1| (0..=24 * 24).map(move |s2| t(&[s1, s2])))
            .filter(|x| d.contains(x))
            .count();
        assert_eq!(all.len(), brute);
        assert!(d.enumerate(7).is_empty());
    }

    #[test]
    fn small_domain_verifies() {
        let d = KamkeDomain::preset("kamke-n2").unwrap();
        let rep = verify_domain(&d, 30);
        assert!(rep.passed(), "{:?}", rep.failures);
        assert!(rep.checked > 0);
    }
}
