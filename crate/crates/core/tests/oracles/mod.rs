//! Independent reference implementations for the property and acceptance
//! tests. Nothing here calls the library's algorithms; group elements are
//! handled as explicit unitriangular matrices and searches are exhaustive.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use waring_core::{HeisPoint, HeisPolySeq, Poly, TranslateProductSpec};

pub type Rat = BigRational;
pub type Mat = Vec<Vec<Rat>>;

pub fn r(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn identity(k: usize) -> Mat {
    (0..k).map(|i| (0..k).map(|j| if i == j { Rat::one() } else { Rat::zero() }).collect()).collect()
}

pub fn mat_mul(x: &Mat, y: &Mat) -> Mat {
    let k = x.len();
    (0..k)
        .map(|i| (0..k).map(|j| (0..k).fold(Rat::zero(), |acc, t| acc + &x[i][t] * &y[t][j])).collect())
        .collect()
}

pub fn mat_add(x: &Mat, y: &Mat) -> Mat {
    x.iter().zip(y).map(|(p, q)| p.iter().zip(q).map(|(a, b)| a + b).collect()).collect()
}

pub fn mat_sub(x: &Mat, y: &Mat) -> Mat {
    x.iter().zip(y).map(|(p, q)| p.iter().zip(q).map(|(a, b)| a - b).collect()).collect()
}

pub fn mat_scale(x: &Mat, c: &Rat) -> Mat {
    x.iter().map(|row| row.iter().map(|a| a * c).collect()).collect()
}

/// `(n+2) x (n+2)` upper unitriangular matrix: first row `(1, a, c)`, last
/// column `(c, b, 1)`.
pub fn to_matrix(p: &HeisPoint) -> Mat {
    let n = p.n();
    let mut m = identity(n + 2);
    for i in 0..n {
        m[0][i + 1] = p.a[i].clone();
        m[i + 1][n + 1] = p.b[i].clone();
    }
    m[0][n + 1] = p.c.clone();
    m
}

pub fn from_matrix(m: &Mat) -> HeisPoint {
    let n = m.len() - 2;
    let a = (0..n).map(|i| m[0][i + 1].clone()).collect();
    let b = (0..n).map(|i| m[i + 1][n + 1].clone()).collect();
    HeisPoint::new(a, b, m[0][n + 1].clone()).unwrap()
}

/// Strictly upper triangular matrix of a Lie element `(a, b, d)`.
pub fn lie_matrix(a: &[Rat], b: &[Rat], d: &Rat) -> Mat {
    let n = a.len();
    let mut m = identity(n + 2);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = Rat::zero();
    }
    for i in 0..n {
        m[0][i + 1] = a[i].clone();
        m[i + 1][n + 1] = b[i].clone();
    }
    m[0][n + 1] = d.clone();
    m
}

/// `log(I + N) = N - N^2/2`, exact because `N^3 = 0`.
pub fn mat_log(m: &Mat) -> Mat {
    let nil = mat_sub(m, &identity(m.len()));
    let sq = mat_mul(&nil, &nil);
    mat_sub(&nil, &mat_scale(&sq, &Rat::new(BigInt::one(), BigInt::from(2))))
}

/// `exp(X) = I + X + X^2/2`.
pub fn mat_exp(x: &Mat) -> Mat {
    let sq = mat_mul(x, x);
    mat_add(&mat_add(&identity(x.len()), x), &mat_scale(&sq, &Rat::new(BigInt::one(), BigInt::from(2))))
}

/// `(a, b, d)` read off a strictly upper triangular matrix.
pub fn lie_coords(x: &Mat) -> Vec<Rat> {
    let n = x.len() - 2;
    let mut v: Vec<Rat> = (0..n).map(|i| x[0][i + 1].clone()).collect();
    v.extend((0..n).map(|i| x[i + 1][n + 1].clone()));
    v.push(x[0][n + 1].clone());
    v
}

pub fn product(points: &[HeisPoint], n: usize) -> HeisPoint {
    let m = points.iter().fold(identity(n + 2), |acc, p| mat_mul(&acc, &to_matrix(p)));
    from_matrix(&m)
}

/// `exp(2 Σ log p_i)` through matrices.
pub fn doubled_log_sum(points: &[HeisPoint], n: usize) -> HeisPoint {
    let k = n + 2;
    let zero: Mat = vec![vec![Rat::zero(); k]; k];
    let sum = points.iter().fold(zero, |acc, p| mat_add(&acc, &mat_log(&to_matrix(p))));
    from_matrix(&mat_exp(&mat_scale(&sum, &r(2))))
}

pub fn random_point<R: Rng>(rng: &mut R, n: usize, bound: i64) -> HeisPoint {
    let a: Vec<i64> = (0..n).map(|_| rng.gen_range(-bound..=bound)).collect();
    let b: Vec<i64> = (0..n).map(|_| rng.gen_range(-bound..=bound)).collect();
    HeisPoint::from_ints(&a, &b, rng.gen_range(-bound..=bound))
}

/// Plain Gaussian elimination rank.
pub fn rank(m: &[Vec<Rat>]) -> usize {
    let mut a: Mat = m.to_vec();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(rank, p);
        for i in 0..rows {
            if i != rank && !a[i][c].is_zero() {
                let f = &a[i][c] / &a[rank][c];
                for j in c..cols {
                    let t = &f * &a[rank][j];
                    a[i][j] -= t;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Coefficients (constant first) of the unique polynomial of degree `<= k`
/// through `(x_i, y_i)`, by solving the Vandermonde system.
pub fn interpolate(xs: &[i64], ys: &[Rat]) -> Vec<Rat> {
    let k = xs.len();
    let mut a: Mat = xs
        .iter()
        .zip(ys)
        .map(|(&x, y)| {
            let mut row: Vec<Rat> = (0..k).map(|j| r(x).pow(j as i32)).collect();
            row.push(y.clone());
            row
        })
        .collect();
    for c in 0..k {
        let p = (c..k).find(|&i| !a[i][c].is_zero()).expect("distinct nodes");
        a.swap(c, p);
        let pivot = a[c][c].clone();
        for j in c..=k {
            a[c][j] = &a[c][j] / &pivot;
        }
        for i in 0..k {
            if i != c && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in c..=k {
                    let t = &f * &a[c][j];
                    a[i][j] -= t;
                }
            }
        }
    }
    a.into_iter().map(|row| row[k].clone()).collect()
}

/// Random integer-valued polynomial of degree `<= deg` built from binomial
/// coefficients `C(x, k)` with random integer weights.
pub fn random_integer_valued<R: Rng>(rng: &mut R, deg: usize, bound: i64) -> Poly {
    let mut f = Poly::zero();
    for k in 0..=deg {
        let w = rng.gen_range(-bound..=bound);
        f = &f + &Poly::binomial(k).scale(&r(w));
    }
    f
}

pub fn gcd_of_values(f: &Poly, upto: i64) -> BigInt {
    let mut g = BigInt::zero();
    for x in 0..=upto {
        let v = f.eval_int(x);
        assert!(v.is_integer());
        g = g.gcd(&v.to_integer());
    }
    g
}

/// Largest non-representable integer by reachability up to `limit`.
pub fn frobenius_exhaustive(gens: &[i64], limit: usize) -> i64 {
    let mut reach = vec![false; limit + 1];
    reach[0] = true;
    for t in 1..=limit {
        reach[t] = gens.iter().any(|&g| g as usize <= t && reach[t - g as usize]);
    }
    (0..=limit).rev().find(|&t| !reach[t]).map_or(-1, |t| t as i64)
}

pub fn representable_exhaustive(gens: &[i64], t: i64) -> bool {
    if t < 0 {
        return false;
    }
    let mut reach = vec![false; t as usize + 1];
    reach[0] = true;
    for s in 1..=t as usize {
        reach[s] = gens.iter().any(|&g| g as usize <= s && reach[s - g as usize]);
    }
    reach[t as usize]
}

/// Breadth-first least `k` with `target` a sum of `k` vectors from `vals`.
pub fn min_summands_bfs(vals: &[Vec<i64>], target: &[i64], max_k: usize) -> Option<usize> {
    let mut layer: HashSet<Vec<i64>> = HashSet::new();
    layer.insert(vec![0; target.len()]);
    for k in 1..=max_k {
        let mut next = HashSet::new();
        for p in &layer {
            for v in vals {
                let s: Vec<i64> = p.iter().zip(v).map(|(a, b)| a + b).collect();
                if s.iter().zip(target).all(|(a, t)| a <= t) {
                    next.insert(s);
                }
            }
        }
        if next.contains(target) {
            return Some(k);
        }
        layer = next;
    }
    None
}

/// Whether `s` are the first `s.len()` power sums of some `N` nonnegative
/// integers, by enumerating every nonincreasing tuple with entries `<= s_1`.
pub fn power_sums_naive(s: &[i64], n: usize) -> bool {
    fn rec(s: &[i64], left: usize, top: i64, acc: &mut Vec<i64>) -> bool {
        if left == 0 {
            return acc.iter().all(|&v| v == 0);
        }
        for x in 0..=top.min(acc[0]) {
            let mut ok = true;
            let mut p = 1i64;
            for v in acc.iter_mut() {
                p *= x;
                *v -= p;
                ok &= *v >= 0;
            }
            let found = ok && rec(s, left - 1, x, acc);
            let mut p = 1i64;
            for v in acc.iter_mut() {
                p *= x;
                *v += p;
            }
            if found {
                return true;
            }
        }
        false
    }
    let mut acc = s.to_vec();
    rec(s, n, s[0], &mut acc)
}

/// Sums of exactly `k` elements of `a` (with repetition) that land in
/// `[lo, hi]`, enumerated without pruning.
pub fn sumset_exhaustive(a: &[i64], k: usize, lo: i64, hi: i64) -> BTreeSet<i64> {
    let mut layer: BTreeSet<i64> = BTreeSet::from([0]);
    for _ in 0..k {
        layer = layer.iter().flat_map(|x| a.iter().map(move |y| x + y)).collect();
    }
    layer.into_iter().filter(|v| (lo..=hi).contains(v)).collect()
}

pub fn is_nonneg(x: &Rat) -> bool {
    !x.is_negative()
}

/// Rank of the derivative matrix of `log h` at 0, recomputed from matrix
/// products at integer nodes and exact interpolation.
pub fn interpolated_rank(g: &HeisPolySeq, spec: &TranslateProductSpec) -> usize {
    let n = g.n();
    let deg = g.max_entry_degree().or_zero();
    let nodes: Vec<i64> = (0..=(2 * deg + 2) as i64).collect();
    let logs: Vec<Vec<Rat>> = nodes
        .iter()
        .map(|&x| {
            let factors: Vec<HeisPoint> = spec.pairs.iter().map(|&(a, b)| g.eval(a * x + b)).collect();
            lie_coords(&mat_log(&to_matrix(&product(&factors, n))))
        })
        .collect();
    let coeffs: Vec<Vec<Rat>> =
        (0..2 * n + 1).map(|j| interpolate(&nodes, &logs.iter().map(|v| v[j].clone()).collect::<Vec<_>>())).collect();
    let matrix: Vec<Vec<Rat>> = (1..nodes.len()).map(|k| coeffs.iter().map(|c| c[k].clone()).collect()).collect();
    rank(&matrix)
}

/// Unique solution of a square system `m x = v`, or `None` when singular.
pub fn solve_square(m: &[Vec<Rat>], v: &[Rat]) -> Option<Vec<Rat>> {
    let k = m.len();
    let mut a: Mat = m.iter().zip(v).map(|(row, y)| row.iter().cloned().chain([y.clone()]).collect()).collect();
    for c in 0..k {
        let p = (c..k).find(|&i| !a[i][c].is_zero())?;
        a.swap(c, p);
        let pivot = a[c][c].clone();
        for j in c..=k {
            a[c][j] = &a[c][j] / &pivot;
        }
        for i in 0..k {
            if i != c && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in c..=k {
                    let t = &f * &a[c][j];
                    a[i][j] -= t;
                }
            }
        }
    }
    Some(a.into_iter().map(|row| row[k].clone()).collect())
}
