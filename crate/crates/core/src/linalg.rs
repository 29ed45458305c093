//! Exact linear algebra over `Q` and `Z`.
//!
//! Matrices are plain row-major `Vec<Vec<Q>>`. Rank uses fraction-free
//! (Bareiss) elimination on an integer-scaled copy; solving and null spaces
//! use reduced row echelon form over the rationals. [`IntegerLattice`] keeps
//! a column Hermite form together with the unimodular transform so that
//! lattice membership comes with integer coordinates.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rational::{common_denominator, from_big, Q};

pub type QMatrix = Vec<Vec<Q>>;

fn ncols(m: &[Vec<Q>]) -> usize {
    m.first().map_or(0, Vec::len)
}

/// Rank over `Q` by Bareiss elimination on rows scaled to integers.
pub fn rank(m: &[Vec<Q>]) -> usize {
    let cols = ncols(m);
    let mut a: Vec<Vec<BigInt>> = m
        .iter()
        .map(|row| {
            let den = common_denominator(row);
            row.iter().map(|x| (x * from_big(den.clone())).to_integer()).collect()
        })
        .collect();
    let rows = a.len();
    let mut r = 0;
    let mut prev = BigInt::one();
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        for i in r + 1..rows {
            for j in c + 1..cols {
                let v = &a[r][c] * &a[i][j] - &a[i][c] * &a[r][j];
                a[i][j] = v / &prev;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        r += 1;
    }
    r
}

/// Reduced row echelon form; returns the pivot columns.
pub fn rref(m: &mut [Vec<Q>]) -> Vec<usize> {
    let rows = m.len();
    let cols = ncols(m);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    let v = &f * &m[r][j];
                    m[i][j] -= v;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// One solution of `a x = b` (free variables set to zero), if consistent.
pub fn solve(a: &[Vec<Q>], b: &[Q]) -> Option<Vec<Q>> {
    assert_eq!(a.len(), b.len(), "row count mismatch");
    let unknowns = ncols(a);
    let mut aug: QMatrix = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.last() == Some(&unknowns) {
        return None;
    }
    let mut x = vec![Q::zero(); unknowns];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = aug[r][unknowns].clone();
    }
    Some(x)
}

/// Basis of the right null space `{x : a x = 0}`.
pub fn nullspace(a: &[Vec<Q>]) -> Vec<Vec<Q>> {
    let cols = ncols(a);
    let mut m = a.to_vec();
    let pivots = rref(&mut m);
    (0..cols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![Q::zero(); cols];
            v[free] = Q::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -m[r][free].clone();
            }
            v
        })
        .collect()
}

pub fn inverse(a: &[Vec<Q>]) -> Option<QMatrix> {
    let n = a.len();
    if a.iter().any(|row| row.len() != n) {
        return None;
    }
    let mut aug: QMatrix = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Q::one() } else { Q::zero() }));
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(aug.into_iter().map(|row| row[n..].to_vec()).collect())
}

pub fn transpose(a: &[Vec<Q>]) -> QMatrix {
    let cols = ncols(a);
    (0..cols).map(|j| a.iter().map(|row| row[j].clone()).collect()).collect()
}

pub fn mat_vec(a: &[Vec<Q>], x: &[Q]) -> Vec<Q> {
    a.iter()
        .map(|row| row.iter().zip(x).map(|(p, q)| p * q).sum())
        .collect()
}

/// Lattice spanned over `Z` by rational generator vectors in `Q^m`.
///
/// Internally the generators are scaled by a common denominator and the
/// generator matrix `G` (columns = generators) is brought to column echelon
/// form `G U = [E | 0]` with `U` unimodular.
#[derive(Clone, Debug)]
pub struct IntegerLattice {
    dim: usize,
    denom: BigInt,
    /// Column echelon form, `dim x rank`, stored column-major.
    echelon: Vec<Vec<BigInt>>,
    /// Pivot row of each echelon column.
    pivot_rows: Vec<usize>,
    /// First `rank` columns of the unimodular transform, column-major.
    transform: Vec<Vec<BigInt>>,
    generators: usize,
}

impl IntegerLattice {
    pub fn from_generators(dim: usize, gens: &[Vec<Q>]) -> Self {
        assert!(gens.iter().all(|g| g.len() == dim), "generator length mismatch");
        let k = gens.len();
        let denom = common_denominator(gens.iter().flatten());
        let dq = from_big(denom.clone());
        let mut cols: Vec<Vec<BigInt>> = gens
            .iter()
            .map(|g| g.iter().map(|x| (x * &dq).to_integer()).collect())
            .collect();
        let mut u: Vec<Vec<BigInt>> = (0..k)
            .map(|j| (0..k).map(|i| BigInt::from((i == j) as i32)).collect())
            .collect();
        let mut pivot_rows = Vec::new();
        let mut p = 0;
        for row in 0..dim {
            if p == k {
                break;
            }
            for j in p + 1..k {
                if cols[j][row].is_zero() {
                    continue;
                }
                let a = cols[p][row].clone();
                let b = cols[j][row].clone();
                let e = a.extended_gcd(&b);
                let (g, x, y) = (e.gcd, e.x, e.y);
                let (ag, bg) = (&a / &g, &b / &g);
                combine(&mut cols, p, j, &x, &y, &bg, &ag);
                combine(&mut u, p, j, &x, &y, &bg, &ag);
            }
            if !cols[p][row].is_zero() {
                if cols[p][row].is_negative() {
                    for v in cols[p].iter_mut() {
                        *v = -v.clone();
                    }
                    for v in u[p].iter_mut() {
                        *v = -v.clone();
                    }
                }
                pivot_rows.push(row);
                p += 1;
            }
        }
        cols.truncate(p);
        u.truncate(p);
        IntegerLattice {
            dim,
            denom,
            echelon: cols,
            pivot_rows,
            transform: u,
            generators: k,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.echelon.len()
    }

    pub fn is_full_rank(&self) -> bool {
        self.rank() == self.dim
    }

    /// Integer coefficients `t` with `Σ t_j gen_j = v`, if `v` is in the
    /// lattice.
    pub fn coordinates(&self, v: &[Q]) -> Option<Vec<BigInt>> {
        assert_eq!(v.len(), self.dim);
        let dq = from_big(self.denom.clone());
        let mut target = Vec::with_capacity(self.dim);
        for x in v {
            let s = x * &dq;
            if !s.denom().is_one() {
                return None;
            }
            target.push(s.to_integer());
        }
        let r = self.rank();
        let mut y = vec![BigInt::zero(); r];
        for q in 0..r {
            let row = self.pivot_rows[q];
            let mut rest = target[row].clone();
            for (qq, yq) in y.iter().enumerate().take(q) {
                rest -= &self.echelon[qq][row] * yq;
            }
            let (quot, rem) = rest.div_rem(&self.echelon[q][row]);
            if !rem.is_zero() {
                return None;
            }
            y[q] = quot;
        }
        for (row, t) in target.iter().enumerate() {
            let got: BigInt = (0..r).map(|q| &self.echelon[q][row] * &y[q]).sum();
            if &got != t {
                return None;
            }
        }
        Some(
            (0..self.generators)
                .map(|i| (0..r).map(|q| &self.transform[q][i] * &y[q]).sum())
                .collect(),
        )
    }

    pub fn contains(&self, v: &[Q]) -> bool {
        self.coordinates(v).is_some()
    }

    /// Smallest positive integer `D` with `D Z^m` inside the lattice; `None`
    /// unless the lattice has full rank.
    pub fn scalar_exponent(&self) -> Option<BigInt> {
        if !self.is_full_rank() {
            return None;
        }
        // Basis matrix (rows = coordinates) is echelon / denom; D is the lcm
        // of denominators of its inverse.
        let basis: QMatrix = (0..self.dim)
            .map(|row| {
                (0..self.dim)
                    .map(|c| Q::new(self.echelon[c][row].clone(), self.denom.clone()))
                    .collect()
            })
            .collect();
        let inv = inverse(&basis)?;
        Some(common_denominator(inv.iter().flatten()))
    }

    /// Smallest `k >= 1` with `k v` in the lattice (full rank only).
    pub fn order_of(&self, v: &[Q]) -> Option<BigInt> {
        if !self.is_full_rank() {
            return None;
        }
        let basis: QMatrix = (0..self.dim)
            .map(|row| {
                (0..self.dim)
                    .map(|c| Q::new(self.echelon[c][row].clone(), self.denom.clone()))
                    .collect()
            })
            .collect();
        let inv = inverse(&basis)?;
        let coords = mat_vec(&inv, v);
        Some(common_denominator(&coords))
    }
}

/// Column operation `(c_p, c_j) <- (x c_p + y c_j, bg c_p - ag c_j)`, which
/// has determinant -1.
fn combine(
    cols: &mut [Vec<BigInt>],
    p: usize,
    j: usize,
    x: &BigInt,
    y: &BigInt,
    bg: &BigInt,
    ag: &BigInt,
) {
    let n = cols[p].len();
    for i in 0..n {
        let cp = cols[p][i].clone();
        let cj = cols[j][i].clone();
        cols[p][i] = x * &cp + y * &cj;
        cols[j][i] = bg * &cp - ag * &cj;
    }
}
