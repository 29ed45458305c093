//! Derivative matrices of `log g`, degeneracy certificates and the search
//! for affine-translate products that restore full rank.
//!
//! Row `k` (1-based) of the matrix holds the formal `k`-th derivatives of
//! `(a_1, ..., a_n, b_1, ..., b_n, d)` at a point. Full rank `2n + 1` is
//! what the pipeline needs; when the central coordinate `d` is an affine
//! combination of the others the rank drops to `2n`, and a product of
//! translates `g(a_1 x + b) ⋯ g(a_m x + b)` is searched for instead.

use serde::Serialize;

use crate::error::Result;
use crate::intpoly::Poly;
use crate::linalg::{self, QMatrix};
use crate::polyseq::{degree_bound_b, HeisPolySeq};
use crate::rational::{q, serde_q, Q};

/// `B x (2n+1)` matrix of derivatives of `log g` at `x0`, plus the row of
/// values used for the augmented matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JacobianMatrix {
    pub n: usize,
    pub x0: i64,
    #[serde(with = "serde_q::vec")]
    pub values: Vec<Q>,
    #[serde(serialize_with = "serde_q::matrix::serialize")]
    pub rows: QMatrix,
}

impl JacobianMatrix {
    fn from_columns(n: usize, x0: i64, cols: &[Poly], b: usize) -> Self {
        let x = q(x0);
        let values = cols.iter().map(|p| p.eval(&x)).collect();
        let mut derivs: Vec<Poly> = cols.to_vec();
        let mut rows = Vec::with_capacity(b);
        for _ in 0..b {
            derivs = derivs.iter().map(Poly::derivative).collect();
            rows.push(derivs.iter().map(|p| p.eval(&x)).collect());
        }
        JacobianMatrix { n, x0, values, rows }
    }

    pub fn b(&self) -> usize {
        self.rows.len()
    }

    pub fn cols(&self) -> usize {
        2 * self.n + 1
    }

    /// First `2n` columns.
    pub fn j0(&self) -> QMatrix {
        self.rows.iter().map(|r| r[..2 * self.n].to_vec()).collect()
    }

    /// The value row stacked on top of the derivative rows.
    pub fn j1(&self) -> QMatrix {
        std::iter::once(self.values.clone()).chain(self.rows.iter().cloned()).collect()
    }

    pub fn last_column(&self) -> Vec<Q> {
        self.rows.iter().map(|r| r[2 * self.n].clone()).collect()
    }

    pub fn rank(&self) -> usize {
        linalg::rank(&self.rows)
    }

    pub fn rank_j0(&self) -> usize {
        linalg::rank(&self.j0())
    }

    pub fn rank_j1(&self) -> usize {
        linalg::rank(&self.j1())
    }

    pub fn is_full_rank(&self) -> bool {
        self.rank() == self.cols()
    }

    /// `diag(s_1, ..., s_B) * self`.
    pub fn scale_rows(&self, factors: &[Q]) -> QMatrix {
        self.rows
            .iter()
            .zip(factors)
            .map(|(r, f)| r.iter().map(|x| x * f).collect())
            .collect()
    }
}

/// Derivatives of the `log g` coordinates at `x0`, rows `1..=b`.
pub fn jacobian_of_log(g: &HeisPolySeq, x0: i64, b: usize) -> JacobianMatrix {
    JacobianMatrix::from_columns(g.n(), x0, &g.log_components(), b)
}

/// Rank of the coefficient matrix of the abelianized sequence `(a, b)`,
/// using coefficients of degree at least one.
pub fn abelianized_rank(g: &HeisPolySeq) -> usize {
    let cols: Vec<&Poly> = g.a().iter().chain(g.b()).collect();
    let deg = cols.iter().map(|p| p.degree().or_zero()).max().unwrap_or(0);
    let rows: QMatrix = (1..=deg).map(|k| cols.iter().map(|p| p.coeff(k)).collect()).collect();
    linalg::rank(&rows)
}

/// `d(x) = u·a(x) + v·b(x) + w` as an exact polynomial identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegeneracyCertificate {
    #[serde(with = "serde_q::vec")]
    pub u: Vec<Q>,
    #[serde(with = "serde_q::vec")]
    pub v: Vec<Q>,
    #[serde(with = "serde_q")]
    pub w: Q,
}

impl DegeneracyCertificate {
    pub fn verify(&self, g: &HeisPolySeq) -> bool {
        let mut rhs = Poly::constant(self.w.clone());
        for (coef, p) in self.u.iter().zip(g.a()).chain(self.v.iter().zip(g.b())) {
            rhs = &rhs + &p.scale(coef);
        }
        rhs == g.d()
    }
}

/// Certificate that `d` lies in the span of `a_1..a_n, b_1..b_n, 1`, or
/// `None` when it does not.
pub fn detect_degenerate(g: &HeisPolySeq) -> Option<DegeneracyCertificate> {
    let d = g.d();
    let mut basis: Vec<Poly> = g.a().iter().chain(g.b()).cloned().collect();
    basis.push(Poly::one());
    let deg = basis.iter().chain(std::iter::once(&d)).map(|p| p.degree().or_zero()).max().unwrap_or(0);
    let m: QMatrix = (0..=deg).map(|k| basis.iter().map(|p| p.coeff(k)).collect()).collect();
    let rhs: Vec<Q> = (0..=deg).map(|k| d.coeff(k)).collect();
    let sol = linalg::solve(&m, &rhs)?;
    let n = g.n();
    Some(DegeneracyCertificate { u: sol[..n].to_vec(), v: sol[n..2 * n].to_vec(), w: sol[2 * n].clone() })
}

/// Derivative matrix of `[log g(a_1 x + b_1), log g(a_2 x + b_2)] / 2`. Only
/// the central column can be nonzero.
pub fn commutator_jacobian(g: &HeisPolySeq, spec1: (i64, i64), spec2: (i64, i64), x0: i64, b: usize) -> Result<JacobianMatrix> {
    let g1 = g.affine_translate(spec1.0, spec1.1)?;
    let g2 = g.affine_translate(spec2.0, spec2.1)?;
    let dot = |u: &[Poly], v: &[Poly]| u.iter().zip(v).fold(Poly::zero(), |acc, (x, y)| &acc + &(x * y));
    let central = (&dot(g1.a(), g2.b()) - &dot(g2.a(), g1.b())).scale(&crate::rational::half());
    let n = g.n();
    let mut cols = vec![Poly::zero(); 2 * n];
    cols.push(central);
    Ok(JacobianMatrix::from_columns(n, x0, &cols, b))
}

/// Pairs `(a_i, b_i)` defining `h(x) = g(a_1 x + b_1) ⋯ g(a_m x + b_m)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TranslateProductSpec {
    pub pairs: Vec<(i64, i64)>,
}

impl TranslateProductSpec {
    pub fn new(pairs: Vec<(i64, i64)>) -> Result<Self> {
        if pairs.is_empty() {
            return Err(crate::Error::InvalidArgument("translate product needs at least one pair".into()));
        }
        if let Some(&(a, b)) = pairs.iter().find(|&&(a, b)| a < 1 || b < 0) {
            return Err(crate::Error::InvalidArgument(format!("pair ({a}, {b}) needs a >= 1 and b >= 0")));
        }
        Ok(TranslateProductSpec { pairs })
    }

    pub fn identity() -> Self {
        TranslateProductSpec { pairs: vec![(1, 0)] }
    }

    pub fn m(&self) -> usize {
        self.pairs.len()
    }

    pub fn apply(&self, g: &HeisPolySeq) -> Result<HeisPolySeq> {
        g.translate_product(&self.pairs)
    }

    pub fn is_identity(&self) -> bool {
        self.pairs == [(1, 0)]
    }
}

/// Rows used for the rank test of `h`: its degree bound, but never fewer
/// than the largest degree among the `log h` coordinates.
pub fn jacobian_rows(h: &HeisPolySeq) -> usize {
    let realized = degree_bound_b(h).b();
    let log_deg = h.log_components().iter().map(|p| p.degree().or_zero()).max().unwrap_or(0);
    realized.max(log_deg)
}

/// Whether `jacobian_of_log(h, 0, B)` has rank `2n + 1`.
pub fn has_full_rank_at_zero(h: &HeisPolySeq) -> bool {
    jacobian_of_log(h, 0, jacobian_rows(h)).is_full_rank()
}

/// First translate product with a full-rank derivative matrix at 0.
///
/// Candidates run over `m = 1..=m_max`, then the shared shift
/// `b = 0..=coeff_bound`, then nondecreasing tuples `a_1 <= ... <= a_m` in
/// `1..=coeff_bound`, lexicographically.
pub fn lemma4deg_search(g: &HeisPolySeq, m_max: usize, coeff_bound: i64) -> Result<Option<TranslateProductSpec>> {
    lemma4deg_search_with(g, m_max, coeff_bound, false)
}

/// As [`lemma4deg_search`]; with `per_pair_b` each pair gets its own shift,
/// enumerated lexicographically after the `a` tuple.
pub fn lemma4deg_search_with(
    g: &HeisPolySeq,
    m_max: usize,
    coeff_bound: i64,
    per_pair_b: bool,
) -> Result<Option<TranslateProductSpec>> {
    for m in 1..=m_max {
        let shift_choices: Vec<Vec<i64>> = if per_pair_b {
            all_tuples(m, 0, coeff_bound)
        } else {
            (0..=coeff_bound).map(|b| vec![b; m]).collect()
        };
        let a_tuples = nondecreasing_tuples(m, 1, coeff_bound);
        if per_pair_b {
            for a in &a_tuples {
                for bs in &shift_choices {
                    if let Some(spec) = try_candidate(g, a, bs)? {
                        return Ok(Some(spec));
                    }
                }
            }
        } else {
            for bs in &shift_choices {
                for a in &a_tuples {
                    if let Some(spec) = try_candidate(g, a, bs)? {
                        return Ok(Some(spec));
                    }
                }
            }
        }
    }
    Ok(None)
}

fn try_candidate(g: &HeisPolySeq, a: &[i64], bs: &[i64]) -> Result<Option<TranslateProductSpec>> {
    let pairs: Vec<(i64, i64)> = a.iter().copied().zip(bs.iter().copied()).collect();
    let spec = TranslateProductSpec::new(pairs)?;
    let h = spec.apply(g)?;
    Ok(has_full_rank_at_zero(&h).then_some(spec))
}

fn nondecreasing_tuples(m: usize, lo: i64, hi: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(m);
    fn rec(m: usize, lo: i64, hi: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if cur.len() == m {
            out.push(cur.clone());
            return;
        }
        let start = cur.last().copied().unwrap_or(lo);
        for v in start..=hi {
            cur.push(v);
            rec(m, lo, hi, cur, out);
            cur.pop();
        }
    }
    rec(m, lo, hi, &mut cur, &mut out);
    out
}

fn all_tuples(m: usize, lo: i64, hi: i64) -> Vec<Vec<i64>> {
    (0..m).fold(vec![Vec::new()], |acc, _| {
        acc.iter()
            .flat_map(|t| {
                (lo..=hi).map(move |v| {
                    let mut t = t.clone();
                    t.push(v);
                    t
                })
            })
            .collect()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;

    fn parabola() -> HeisPolySeq {
        HeisPolySeq::h3(&[0, 1], &[0, 0, 1], &[]).unwrap()
    }

    fn degenerate() -> HeisPolySeq {
        let c = Poly::from_coeffs(vec![q(0), frac(1, 2), q(0), frac(1, 2)]);
        HeisPolySeq::new(vec![Poly::x()], vec![Poly::from_ints(&[0, 0, 1])], c).unwrap()
    }

    #[test]
    fn jacobian_of_parabola() {
        let j = jacobian_of_log(&parabola(), 0, 3);
        assert_eq!(
            j.rows,
            vec![vec![q(1), q(0), q(0)], vec![q(0), q(2), q(0)], vec![q(0), q(0), q(-3)]]
        );
        assert_eq!(j.rank(), 3);
        assert_eq!(j.rank_j0(), 2);
        let constant = HeisPolySeq::h3(&[3], &[1], &[4]).unwrap();
        assert_eq!(jacobian_of_log(&constant, 2, 3).rank(), 0);
    }

    #[test]
    fn chain_rule_scaling() {
        let g = degenerate();
        for (a, b) in [(1, 0), (2, 1), (3, 4)] {
            let lhs = jacobian_of_log(&g.affine_translate(a, b).unwrap(), 0, 4);
            let scales: Vec<Q> = (1..=4).map(|k| num_traits::pow(q(a), k)).collect();
            assert_eq!(lhs.rows, jacobian_of_log(&g, b, 4).scale_rows(&scales));
        }
    }

    #[test]
    fn degeneracy() {
        let cert = detect_degenerate(&degenerate()).unwrap();
        assert_eq!(cert, DegeneracyCertificate { u: vec![frac(1, 2)], v: vec![q(0)], w: q(0) });
        assert!(cert.verify(&degenerate()));
        assert!(detect_degenerate(&parabola()).is_none());
        let cubic = HeisPolySeq::h3(&[0, 1], &[0, 0, 1], &[0, 0, 0, 1]).unwrap();
        assert!(detect_degenerate(&cubic).is_none());
    }

    #[test]
    fn commutator_columns() {
        let g = parabola();
        let same = commutator_jacobian(&g, (2, 1), (2, 1), 0, 3).unwrap();
        assert_eq!(same.rank(), 0);
        let c = commutator_jacobian(&g, (1, 0), (2, 0), 0, 3).unwrap();
        assert_eq!(c.last_column(), vec![q(0), q(0), q(6)]);
        assert!(c.j0().iter().flatten().all(|x| *x == q(0)));
    }

    #[test]
    fn lemma_search() {
        let g = degenerate();
        assert!(!has_full_rank_at_zero(&g));
        let spec = lemma4deg_search(&g, 3, 3).unwrap().unwrap();
        assert_eq!(spec.pairs, vec![(1, 0), (2, 0)]);
        let h = spec.apply(&g).unwrap();
        let want = vec![Poly::from_ints(&[0, 3]), Poly::from_ints(&[0, 0, 5]), Poly::from_coeffs(vec![q(0), frac(3, 2), q(0), q(1)])];
        assert_eq!(h.log_components(), want);

        assert_eq!(lemma4deg_search(&parabola(), 2, 2).unwrap(), Some(TranslateProductSpec::identity()));

        let flat = HeisPolySeq::h3(&[0, 1], &[], &[]).unwrap();
        assert_eq!(lemma4deg_search(&flat, 2, 2).unwrap(), None);
    }

    #[test]
    fn tuple_enumeration() {
        assert_eq!(nondecreasing_tuples(2, 1, 3).len(), 6);
        assert_eq!(nondecreasing_tuples(2, 1, 3)[1], vec![1, 2]);
        assert_eq!(all_tuples(2, 0, 2).len(), 9);
    }
}
