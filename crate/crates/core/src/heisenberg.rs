//! The Heisenberg group `H_{2n+1}` over the rationals and its Lie algebra.
//!
//! A point `(a, b, c)` has `a, b` in `Q^n` and central coordinate `c`, with
//! group law `(a, b, c)(a', b', c') = (a + a', b + b', c + c' + a·b')`. Lie
//! elements `(a, b, d)` use the central coordinate `d = c - a·b / 2`, which
//! makes `log` and `exp` coordinate shifts and BCH stop after one bracket.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{from_big, half, is_integer, q, serde_q, Q};

fn dot(u: &[Q], v: &[Q]) -> Q {
    u.iter().zip(v).map(|(x, y)| x * y).sum()
}

fn add(u: &[Q], v: &[Q]) -> Vec<Q> {
    u.iter().zip(v).map(|(x, y)| x + y).collect()
}

fn scaled(u: &[Q], k: &Q) -> Vec<Q> {
    u.iter().map(|x| x * k).collect()
}

fn check_same(n: usize, m: usize) -> Result<()> {
    if n == m {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { left: n, right: m })
    }
}

#[derive(Serialize, Deserialize)]
struct RawPoint {
    n: usize,
    #[serde(with = "serde_q::vec")]
    a: Vec<Q>,
    #[serde(with = "serde_q::vec")]
    b: Vec<Q>,
    #[serde(with = "serde_q")]
    c: Q,
}

/// Group element `(a, b, c)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawPoint", into = "RawPoint")]
pub struct HeisPoint {
    pub a: Vec<Q>,
    pub b: Vec<Q>,
    pub c: Q,
}

impl TryFrom<RawPoint> for HeisPoint {
    type Error = Error;
    fn try_from(r: RawPoint) -> Result<Self> {
        if r.n == 0 {
            return Err(Error::InvalidArgument("n must be positive".into()));
        }
        check_same(r.n, r.a.len())?;
        check_same(r.n, r.b.len())?;
        Ok(HeisPoint { a: r.a, b: r.b, c: r.c })
    }
}

impl From<HeisPoint> for RawPoint {
    fn from(p: HeisPoint) -> Self {
        RawPoint { n: p.n(), a: p.a, b: p.b, c: p.c }
    }
}

impl HeisPoint {
    pub fn new(a: Vec<Q>, b: Vec<Q>, c: Q) -> Result<Self> {
        check_same(a.len(), b.len())?;
        if a.is_empty() {
            return Err(Error::InvalidArgument("n must be positive".into()));
        }
        Ok(HeisPoint { a, b, c })
    }

    pub fn identity(n: usize) -> Self {
        HeisPoint { a: vec![Q::zero(); n], b: vec![Q::zero(); n], c: Q::zero() }
    }

    pub fn from_ints(a: &[i64], b: &[i64], c: i64) -> Self {
        assert_eq!(a.len(), b.len(), "a and b must have equal length");
        HeisPoint { a: a.iter().map(|&x| q(x)).collect(), b: b.iter().map(|&x| q(x)).collect(), c: q(c) }
    }

    /// Single-coordinate constructor for `H_3`.
    pub fn h3(a: i64, b: i64, c: i64) -> Self {
        HeisPoint::from_ints(&[a], &[b], c)
    }

    pub fn n(&self) -> usize {
        self.a.len()
    }

    pub fn is_identity(&self) -> bool {
        self.c.is_zero() && self.a.iter().chain(&self.b).all(Zero::is_zero)
    }

    pub fn is_integral(&self) -> bool {
        self.coords().all(is_integer)
    }

    pub fn coords(&self) -> impl Iterator<Item = &Q> {
        self.a.iter().chain(&self.b).chain(std::iter::once(&self.c))
    }

    pub fn mul(&self, other: &HeisPoint) -> Result<HeisPoint> {
        check_same(self.n(), other.n())?;
        Ok(HeisPoint {
            a: add(&self.a, &other.a),
            b: add(&self.b, &other.b),
            c: &self.c + &other.c + dot(&self.a, &other.b),
        })
    }

    pub fn inv(&self) -> HeisPoint {
        HeisPoint {
            a: self.a.iter().map(|x| -x).collect(),
            b: self.b.iter().map(|x| -x).collect(),
            c: -&self.c + dot(&self.a, &self.b),
        }
    }

    /// `x y x^{-1} y^{-1}`, which is central with value `ω((a, b), (a', b'))`.
    pub fn commutator(&self, other: &HeisPoint) -> Result<HeisPoint> {
        check_same(self.n(), other.n())?;
        let mut out = HeisPoint::identity(self.n());
        out.c = dot(&self.a, &other.b) - dot(&other.a, &self.b);
        Ok(out)
    }

    /// `x y x^{-1}`.
    pub fn conjugate(&self, y: &HeisPoint) -> Result<HeisPoint> {
        Ok(self.mul(y)?.mul(&self.inv())?)
    }

    /// Integer power; `x^k = (k a, k b, k c + k(k-1)/2 a·b)` for all `k`.
    pub fn pow(&self, k: i64) -> HeisPoint {
        let kq = q(k);
        let tri = Q::new(BigInt::from(k) * BigInt::from(k - 1), BigInt::from(2));
        HeisPoint {
            a: scaled(&self.a, &kq),
            b: scaled(&self.b, &kq),
            c: &self.c * &kq + tri * dot(&self.a, &self.b),
        }
    }

    pub fn log(&self) -> HeisLie {
        HeisLie { a: self.a.clone(), b: self.b.clone(), d: &self.c - half() * dot(&self.a, &self.b) }
    }

    /// Coordinates `(a, b, c - a·b / 2)` as a flat vector of length `2n + 1`.
    pub fn delta(&self) -> Vec<Q> {
        self.log().to_vec()
    }

    /// Inverse of [`HeisPoint::delta`].
    pub fn iota(v: &[Q]) -> Result<HeisPoint> {
        Ok(HeisLie::from_vec(v)?.exp())
    }

    pub fn to_vec(&self) -> Vec<Q> {
        self.coords().cloned().collect()
    }

    pub fn from_vec(v: &[Q]) -> Result<HeisPoint> {
        if v.len() < 3 || v.len() % 2 == 0 {
            return Err(Error::InvalidArgument(format!("length {} is not 2n+1 with n >= 1", v.len())));
        }
        let n = (v.len() - 1) / 2;
        Ok(HeisPoint { a: v[..n].to_vec(), b: v[n..2 * n].to_vec(), c: v[2 * n].clone() })
    }
}

#[derive(Serialize, Deserialize)]
struct RawLie {
    n: usize,
    #[serde(with = "serde_q::vec")]
    a: Vec<Q>,
    #[serde(with = "serde_q::vec")]
    b: Vec<Q>,
    #[serde(with = "serde_q")]
    d: Q,
}

/// Lie algebra element `(a, b, d)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawLie", into = "RawLie")]
pub struct HeisLie {
    pub a: Vec<Q>,
    pub b: Vec<Q>,
    pub d: Q,
}

impl TryFrom<RawLie> for HeisLie {
    type Error = Error;
    fn try_from(r: RawLie) -> Result<Self> {
        if r.n == 0 {
            return Err(Error::InvalidArgument("n must be positive".into()));
        }
        check_same(r.n, r.a.len())?;
        check_same(r.n, r.b.len())?;
        Ok(HeisLie { a: r.a, b: r.b, d: r.d })
    }
}

impl From<HeisLie> for RawLie {
    fn from(p: HeisLie) -> Self {
        RawLie { n: p.n(), a: p.a, b: p.b, d: p.d }
    }
}

impl HeisLie {
    pub fn zero(n: usize) -> Self {
        HeisLie { a: vec![Q::zero(); n], b: vec![Q::zero(); n], d: Q::zero() }
    }

    pub fn from_ints(a: &[i64], b: &[i64], d: i64) -> Self {
        assert_eq!(a.len(), b.len(), "a and b must have equal length");
        HeisLie { a: a.iter().map(|&x| q(x)).collect(), b: b.iter().map(|&x| q(x)).collect(), d: q(d) }
    }

    pub fn n(&self) -> usize {
        self.a.len()
    }

    pub fn is_zero(&self) -> bool {
        self.d.is_zero() && self.a.iter().chain(&self.b).all(Zero::is_zero)
    }

    pub fn exp(&self) -> HeisPoint {
        HeisPoint { a: self.a.clone(), b: self.b.clone(), c: &self.d + half() * dot(&self.a, &self.b) }
    }

    pub fn add(&self, other: &HeisLie) -> Result<HeisLie> {
        check_same(self.n(), other.n())?;
        Ok(HeisLie { a: add(&self.a, &other.a), b: add(&self.b, &other.b), d: &self.d + &other.d })
    }

    pub fn scale(&self, k: &Q) -> HeisLie {
        HeisLie { a: scaled(&self.a, k), b: scaled(&self.b, k), d: &self.d * k }
    }

    pub fn neg(&self) -> HeisLie {
        self.scale(&q(-1))
    }

    /// `[X, Y] = (0, 0, ω)`.
    pub fn bracket(&self, other: &HeisLie) -> Result<HeisLie> {
        check_same(self.n(), other.n())?;
        let mut out = HeisLie::zero(self.n());
        out.d = dot(&self.a, &other.b) - dot(&other.a, &self.b);
        Ok(out)
    }

    /// `X + Y + [X, Y] / 2`, exact in nilpotency class 2.
    pub fn bch(&self, other: &HeisLie) -> Result<HeisLie> {
        let half_bracket = self.bracket(other)?.scale(&half());
        self.add(other)?.add(&half_bracket)
    }

    pub fn to_vec(&self) -> Vec<Q> {
        self.a.iter().chain(&self.b).chain(std::iter::once(&self.d)).cloned().collect()
    }

    pub fn from_vec(v: &[Q]) -> Result<HeisLie> {
        let p = HeisPoint::from_vec(v)?;
        Ok(HeisLie { a: p.a, b: p.b, d: p.c })
    }
}

/// `u^T Ω v` with `Ω = [[0, I], [-I, 0]]`.
pub fn symplectic_form(u: &[Q], v: &[Q]) -> Result<Q> {
    check_same(u.len(), v.len())?;
    if u.len() % 2 != 0 {
        return Err(Error::InvalidArgument(format!("odd length {}", u.len())));
    }
    let n = u.len() / 2;
    Ok(dot(&u[..n], &v[n..]) - dot(&u[n..], &v[..n]))
}

/// The congruence subgroup `H_{2n+1}(DZ)`: integral points with every
/// coordinate divisible by `D`. `D` must be even and positive.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CongruenceLattice {
    pub n: usize,
    #[serde(serialize_with = "big_as_str")]
    pub d: BigInt,
}

fn big_as_str<S: serde::Serializer>(x: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

impl CongruenceLattice {
    pub fn new(n: usize, d: BigInt) -> Result<Self> {
        if !d.is_positive() || d.is_odd() {
            return Err(Error::InvalidModulus(d.to_string()));
        }
        Ok(CongruenceLattice { n, d })
    }

    pub fn contains(&self, x: &HeisPoint) -> Result<bool> {
        check_same(self.n, x.n())?;
        self.contains_coords(&x.to_vec())
    }

    /// Membership of a coordinate vector in `D Z^{2n+1}`.
    pub fn contains_coords(&self, v: &[Q]) -> Result<bool> {
        if !v.iter().all(is_integer) {
            return Err(Error::NotIntegral);
        }
        Ok(v.iter().all(|x| x.to_integer().is_multiple_of(&self.d)))
    }

    /// Some nonidentity generators of the subgroup: `D` times each unit
    /// coordinate vector.
    pub fn generators(&self) -> Vec<HeisPoint> {
        let dim = 2 * self.n + 1;
        (0..dim)
            .map(|i| {
                let mut v = vec![Q::zero(); dim];
                v[i] = from_big(self.d.clone());
                HeisPoint::from_vec(&v).expect("odd length")
            })
            .collect()
    }

    pub fn d_q(&self) -> Q {
        from_big(self.d.clone())
    }
}

impl Default for CongruenceLattice {
    fn default() -> Self {
        CongruenceLattice { n: 1, d: BigInt::from(2) }
    }
}

/// Membership ignoring `D`'s parity requirement, for reporting.
pub fn divisible_by(v: &[Q], d: &BigInt) -> bool {
    v.iter().all(|x| is_integer(x) && x.to_integer().is_multiple_of(d))
}
