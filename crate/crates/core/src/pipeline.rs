//! End-to-end witness generation for Waring-type representability in
//! `H_{2n+1}(Z)`.
//!
//! For a sequence `g` with full-rank derivative matrix, the palindromic
//! product of `L` copies satisfies
//! `δ(g(x_1)⋯g(x_L)g(x_L)⋯g(x_1)) = c_0 + K s(x)`, where `s(x)` collects the
//! power sums `s_1..s_B` of the arguments. Every point of the congruence
//! subgroup `H_{2n+1}(DZ)` whose affine preimage `s` consists of power sums
//! of `L` nonnegative integers is therefore a product of exactly `2L`
//! sequence values. The pipeline computes `B`, `L`, `c_0`, `K` and `D`,
//! then samples such targets and re-verifies every witness by multiplying
//! it out.
//!
//! Target sampling runs in one of two modes. With user-supplied domain
//! constants for `B` power sums, targets come from the domain and are solved
//! with its summand count. Without them, targets are images of explicit
//! argument tuples; this exercises the lattice inversion and the solver but
//! carries no solvability guarantee for the rest of the subgroup.

use std::collections::{BTreeSet, HashMap};
use std::time::Instant;

use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::heisenberg::{CongruenceLattice, HeisPoint};
use crate::intpoly::Degree;
use crate::kamke::{solve_power_sums, KamkeDomain, PowerSumTarget};
use crate::linalg::{self, IntegerLattice, QMatrix};
use crate::polyseq::{degree_bound_b, power_sum_decompose, symmetrize, HeisPolySeq};
use crate::rankcheck::{
    abelianized_rank, detect_degenerate, has_full_rank_at_zero, lemma4deg_search, DegeneracyCertificate,
    TranslateProductSpec,
};
use crate::rational::{q, serde_q, Q};

/// Outcome of [`check_hypotheses`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HypothesisReport {
    pub passed: bool,
    /// Rank of the degree `>= 1` coefficient matrix of `(a, b)`.
    pub abelian_rank: usize,
    pub required_rank: usize,
    pub max_degree: Degree,
    /// When the rank is deficient: weights `λ` with `λ·(a, b)` constant.
    #[serde(with = "serde_q::vec")]
    pub kernel: Vec<Q>,
    pub message: String,
}

/// The abelianized sequence `(a, b)` must have a coefficient matrix of rank
/// `2n`, which also forces its degree to be at least `2n`.
pub fn check_hypotheses(g: &HeisPolySeq) -> HypothesisReport {
    let n = g.n();
    let required = 2 * n;
    let rank = abelianized_rank(g);
    let max_degree = g.a().iter().chain(g.b()).map(|p| p.degree()).max().unwrap_or(Degree::NegInfinity);
    let degree_ok = max_degree.or_zero() >= required && max_degree != Degree::NegInfinity;
    let passed = rank == required && degree_ok;
    let kernel = if rank < required {
        let cols: Vec<_> = g.a().iter().chain(g.b()).collect();
        let deg = max_degree.or_zero();
        let m: QMatrix = (1..=deg).map(|k| cols.iter().map(|p| p.coeff(k)).collect()).collect();
        if m.is_empty() {
            let mut v = vec![Q::zero(); required];
            v[0] = Q::one();
            v
        } else {
            linalg::nullspace(&m).into_iter().next().unwrap_or_default()
        }
    } else {
        Vec::new()
    };
    let message = if passed {
        format!("abelianized rank {rank} = 2n and degree {max_degree} >= 2n")
    } else if rank < required {
        format!("abelianized rank {rank} < {required}: some combination of the a and b entries is constant")
    } else {
        format!("degree {max_degree} < {required}")
    };
    HypothesisReport { passed, abelian_rank: rank, required_rank: required, max_degree, kernel, message }
}

/// A parsed sequence together with its hypothesis check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SequenceSpec {
    pub seq: HeisPolySeq,
    pub hypotheses: HypothesisReport,
}

impl SequenceSpec {
    pub fn new(seq: HeisPolySeq) -> Self {
        let hypotheses = check_hypotheses(&seq);
        SequenceSpec { seq, hypotheses }
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let seq: HeisPolySeq = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        Ok(SequenceSpec::new(seq))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PipelineConfig {
    /// Number of targets to emit.
    pub samples: usize,
    /// Largest sequence argument in sampled or solved witnesses.
    pub x_bound: i64,
    /// Divisibility modulus `A` when no domain is supplied.
    pub modulus: i64,
    /// Domain constants for `B` power sums.
    #[serde(skip)]
    pub domain: Option<KamkeDomain>,
    /// Cap on `s_1` when enumerating domain targets.
    pub s1_max: i64,
    /// Fall back to sampling when no domain constants are supplied.
    pub allow_sampling: bool,
    /// Translate-product search bounds for degenerate sequences.
    pub m_max: usize,
    pub coeff_bound: i64,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            samples: 50,
            x_bound: 10,
            modulus: 2,
            domain: None,
            s1_max: 60,
            allow_sampling: true,
            m_max: 3,
            coeff_bound: 3,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SamplingMode {
    Domain,
    WitnessSampling,
}

/// One emitted target with its witness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PipelineSample {
    pub target: HeisPoint,
    /// Affine preimage `(s_1, ..., s_B)`.
    pub s: Vec<i64>,
    /// Arguments `y_1 >= ... >= y_L` of the symmetrized sequence.
    pub power_sum_solution: Vec<i64>,
    /// Sequence arguments whose ordered product is the target (length `M`).
    pub witness: Vec<i64>,
    pub verified: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PipelineReport {
    pub n: usize,
    pub hypotheses: HypothesisReport,
    pub degenerate: Option<DegeneracyCertificate>,
    pub translate_spec: Option<TranslateProductSpec>,
    /// Number of power sums.
    pub b: usize,
    pub l_prime: usize,
    /// Summand count demanded by the domain, if any.
    pub l_double_prime: Option<usize>,
    /// Order of the constant term modulo the coefficient lattice.
    pub constant_order: String,
    pub l: usize,
    pub modulus: i64,
    /// Number of sequence values per witness.
    pub m: usize,
    /// Congruence modulus of the covered subgroup.
    pub d: String,
    #[serde(with = "serde_q::vec")]
    pub affine_constant: Vec<Q>,
    #[serde(serialize_with = "serde_q::matrix::serialize")]
    pub affine_matrix: QMatrix,
    pub mode: SamplingMode,
    pub mode_note: String,
    pub samples: Vec<PipelineSample>,
    pub verified: usize,
    pub failed: usize,
    pub elapsed_ms: u128,
}

impl PipelineReport {
    pub fn all_verified(&self) -> bool {
        self.failed == 0
    }

    pub fn lattice(&self) -> CongruenceLattice {
        CongruenceLattice::new(self.n, self.d.parse().expect("modulus is an integer")).expect("modulus is even")
    }
}

/// The affine map `s ↦ δ(g̃)` for `L` arguments and `B` power sums, from the
/// symbolic palindromic product.
pub fn affine_power_sum_map(h: &HeisPolySeq, l: usize, b: usize) -> Result<(Vec<Q>, QMatrix)> {
    let sym = symmetrize(h, l);
    let mut constant = Vec::new();
    let mut rows = Vec::new();
    for entry in sym.log_entries() {
        let p = power_sum_decompose(&entry, b)?;
        let (c, lin) = p.affine_parts().ok_or(Error::NotAffine(p.total_degree().or_zero()))?;
        constant.push(c);
        rows.push(lin);
    }
    Ok((constant, rows))
}

/// `2 K_j` columns read off from the coefficients of `log h`.
fn log_coefficient_columns(h: &HeisPolySeq, b: usize) -> Vec<Vec<Q>> {
    let comps = h.log_components();
    (0..=b).map(|j| comps.iter().map(|p| p.coeff(j) * q(2)).collect()).collect()
}

fn round_up(x: usize, step: usize) -> usize {
    x.div_ceil(step) * step
}

/// Runs the full pipeline on a sequence that passed [`check_hypotheses`].
pub fn run_pipeline(spec: &SequenceSpec, config: &PipelineConfig) -> Result<PipelineReport> {
    let start = Instant::now();
    if !spec.hypotheses.passed {
        return Err(Error::HypothesesFailed(spec.hypotheses.message.clone()));
    }
    let g = &spec.seq;
    let n = g.n();
    let dim = 2 * n + 1;

    let degenerate = detect_degenerate(g);
    let (h, translate_spec) = if degenerate.is_some() || !has_full_rank_at_zero(g) {
        let found = lemma4deg_search(g, config.m_max, config.coeff_bound)?.ok_or(Error::DegenerateUnresolved)?;
        (found.apply(g)?, Some(found))
    } else {
        (g.clone(), None)
    };
    let m_factor = translate_spec.as_ref().map_or(1, TranslateProductSpec::m);

    let bound = degree_bound_b(&h);
    let b = bound.b();
    let (mode, modulus, l_double_prime, mode_note) = match &config.domain {
        Some(dom) => {
            if dom.degrees != b {
                return Err(Error::InvalidDomain(format!(
                    "domain constrains {} power sums but the sequence needs {b}",
                    dom.degrees
                )));
            }
            let note = format!("targets drawn from the supplied domain for {b} power sums with s1 <= {}", config.s1_max);
            (SamplingMode::Domain, dom.modulus, Some(dom.summands), note)
        }
        None if config.allow_sampling => {
            let note = format!(
                "no domain constants for {b} power sums: targets are images of sampled argument tuples \
                 with entries <= {}; witnesses are exact but cover only the sampled targets",
                config.x_bound
            );
            (SamplingMode::WitnessSampling, config.modulus, None, note)
        }
        None => return Err(Error::KamkeConstantsMissing(b)),
    };
    if modulus <= 0 {
        return Err(Error::InvalidArgument(format!("modulus {modulus} must be positive")));
    }

    // Coefficient lattice Λ = span_Z{2A K_j : j = 1..B} and the order of the
    // constant 2 K_0 modulo it.
    let cols = log_coefficient_columns(&h, b);
    let aq = q(modulus);
    let gens: Vec<Vec<Q>> = cols[1..].iter().map(|c| c.iter().map(|x| x * &aq).collect()).collect();
    let lattice = IntegerLattice::from_generators(dim, &gens);
    if !lattice.is_full_rank() {
        return Err(Error::HypothesesFailed(format!(
            "coefficient lattice has rank {} < {dim}",
            lattice.rank()
        )));
    }
    let order = lattice.order_of(&cols[0]).expect("full rank");
    let order_usize = usize::try_from(&order).map_err(|_| Error::InvalidArgument("constant order too large".into()))?;
    let step = (modulus as usize).lcm(&order_usize);
    let floor = bound.l_prime.max(l_double_prime.unwrap_or(1)).max(b).max(1);
    let l = round_up(floor, step);

    let mut d = lattice.scalar_exponent().expect("full rank");
    if d.is_odd() {
        d *= 2;
    }
    let congruence = CongruenceLattice::new(n, d.clone())?;

    let (affine_constant, affine_matrix) = affine_power_sum_map(&h, l, b)?;
    let expected_constant: Vec<Q> = cols[0].iter().map(|x| x * q(l as i64)).collect();
    debug_assert_eq!(affine_constant, expected_constant);
    // s-space generators, so that lattice coordinates are s / A
    let s_lattice_gens: Vec<Vec<Q>> = (0..b)
        .map(|j| affine_matrix.iter().map(|row| &row[j] * &aq).collect())
        .collect();
    let s_lattice = IntegerLattice::from_generators(dim, &s_lattice_gens);

    let candidates: Vec<(HeisPoint, Vec<i64>, Option<Vec<i64>>)> = match mode {
        SamplingMode::WitnessSampling => sample_from_tuples(&affine_constant, &affine_matrix, l, b, modulus, config, &congruence),
        SamplingMode::Domain => {
            let dom = config.domain.as_ref().expect("domain mode");
            sample_from_domain(&affine_constant, &affine_matrix, dom, config, &congruence)
        }
    };

    let summands = match mode {
        SamplingMode::Domain => config.domain.as_ref().map_or(l, |d| d.summands),
        SamplingMode::WitnessSampling => l,
    };
    let samples: Vec<PipelineSample> = candidates
        .into_par_iter()
        .map(|(target, s, sampled)| {
            // Recover s from the target through the lattice, then solve.
            let v: Vec<Q> = target.delta().iter().zip(&affine_constant).map(|(x, c)| x - c).collect();
            let recovered: Option<Vec<i64>> = s_lattice
                .coordinates(&v)
                .and_then(|t| t.iter().map(|c| i64::try_from(c * modulus).ok()).collect());
            let mut s_used = recovered.filter(|r| r.iter().all(|&x| x >= 0)).unwrap_or_else(|| s.clone());
            let solution = solve_power_sums(&PowerSumTarget { s: s_used.clone() }, summands, Some(config.x_bound))
                .or_else(|| {
                    // the sampled tuple realizes `s`, which maps to the same target
                    s_used = s.clone();
                    sampled
                })
                .map(|mut y| {
                    y.resize(l, 0);
                    y
                });
            let (solution, witness, verified) = match solution {
                Some(y) => {
                    let witness = expand_witness(&y, translate_spec.as_ref());
                    let verified = verify_witness(g, &witness, &target);
                    (y, witness, verified)
                }
                None => (Vec::new(), Vec::new(), false),
            };
            PipelineSample { target, s: s_used, power_sum_solution: solution, witness, verified }
        })
        .collect();

    let verified = samples.iter().filter(|s| s.verified).count();
    let failed = samples.len() - verified;
    Ok(PipelineReport {
        n,
        hypotheses: spec.hypotheses.clone(),
        degenerate,
        translate_spec,
        b,
        l_prime: bound.l_prime,
        l_double_prime,
        constant_order: order.to_string(),
        l,
        modulus,
        m: 2 * l * m_factor,
        d: d.to_string(),
        affine_constant,
        affine_matrix,
        mode,
        mode_note,
        samples,
        verified,
        failed,
        elapsed_ms: start.elapsed().as_millis(),
    })
}

fn image(constant: &[Q], matrix: &QMatrix, s: &[i64]) -> Vec<Q> {
    let sq: Vec<Q> = s.iter().map(|&x| q(x)).collect();
    linalg::mat_vec(matrix, &sq).into_iter().zip(constant).map(|(x, c)| x + c).collect()
}

/// Targets from descending argument tuples, sorted by `s_1` then lex.
fn sample_from_tuples(
    constant: &[Q],
    matrix: &QMatrix,
    l: usize,
    b: usize,
    modulus: i64,
    config: &PipelineConfig,
    congruence: &CongruenceLattice,
) -> Vec<(HeisPoint, Vec<i64>, Option<Vec<i64>>)> {
    let mut by_s: BTreeSet<(i64, Vec<i64>, Vec<i64>)> = BTreeSet::new();
    let mut seen = BTreeSet::new();
    let mut tuple = Vec::with_capacity(l);
    descending_tuples(l, config.x_bound.max(0), &mut tuple, &mut |x| {
        let s = PowerSumTarget::of(x, b).s;
        if s.iter().all(|v| v % modulus == 0) && seen.insert(s.clone()) {
            by_s.insert((s[0], s, x.to_vec()));
        }
    });
    let mut out = Vec::new();
    for (_, s, x) in by_s {
        if out.len() >= config.samples {
            break;
        }
        let delta = image(constant, matrix, &s);
        if congruence.contains_coords(&delta).unwrap_or(false) {
            let target = HeisPoint::iota(&delta).expect("odd dimension");
            out.push((target, s, Some(x)));
        }
    }
    out
}

fn descending_tuples(len: usize, max: i64, cur: &mut Vec<i64>, visit: &mut dyn FnMut(&[i64])) {
    if cur.len() == len {
        visit(cur);
        return;
    }
    let top = cur.last().copied().unwrap_or(max);
    for v in (0..=top).rev() {
        cur.push(v);
        descending_tuples(len, max, cur, visit);
        cur.pop();
    }
}

fn sample_from_domain(
    constant: &[Q],
    matrix: &QMatrix,
    dom: &KamkeDomain,
    config: &PipelineConfig,
    congruence: &CongruenceLattice,
) -> Vec<(HeisPoint, Vec<i64>, Option<Vec<i64>>)> {
    dom.enumerate(config.s1_max)
        .into_iter()
        .filter_map(|t| {
            let delta = image(constant, matrix, &t.s);
            congruence
                .contains_coords(&delta)
                .unwrap_or(false)
                .then(|| (HeisPoint::iota(&delta).expect("odd dimension"), t.s, None))
        })
        .take(config.samples)
        .collect()
}

/// Palindrome `y_1..y_L, y_L..y_1`, with each `y` expanded to the translate
/// arguments `a_i y + b_i` when a translate product is in use.
pub fn expand_witness(y: &[i64], spec: Option<&TranslateProductSpec>) -> Vec<i64> {
    let palindrome = y.iter().chain(y.iter().rev());
    match spec {
        None => palindrome.copied().collect(),
        Some(spec) => palindrome
            .flat_map(|&v| spec.pairs.iter().map(move |&(a, b)| a * v + b))
            .collect(),
    }
}

/// Multiplies `g(w_1) ⋯ g(w_k)` and compares with `target`.
pub fn verify_witness(g: &HeisPolySeq, witness: &[i64], target: &HeisPoint) -> bool {
    let mut acc = HeisPoint::identity(g.n());
    for &w in witness {
        acc = match acc.mul(&g.eval(w)) {
            Ok(p) => p,
            Err(_) => return false,
        };
    }
    &acc == target
}

/// Shortest `(x_1, ..., x_k)`, `k <= max_len`, `0 <= x_i <= x_bound`, with
/// `g(x_1) ⋯ g(x_k) = target`, by meet in the middle.
pub fn brute_force_witness(g: &HeisPolySeq, target: &HeisPoint, max_len: usize, x_bound: i64) -> Option<Vec<i64>> {
    if target.n() != g.n() {
        return None;
    }
    let values: Vec<HeisPoint> = (0..=x_bound.max(0)).map(|x| g.eval(x)).collect();
    let products = |len: usize| -> Vec<(Vec<i64>, HeisPoint)> {
        let mut layer = vec![(Vec::new(), HeisPoint::identity(g.n()))];
        for _ in 0..len {
            layer = layer
                .iter()
                .flat_map(|(args, p)| {
                    values.iter().enumerate().map(move |(x, v)| {
                        let mut a = args.clone();
                        a.push(x as i64);
                        (a, p.mul(v).expect("same n"))
                    })
                })
                .collect();
        }
        layer
    };
    for k in 0..=max_len {
        let (k1, k2) = (k / 2, k - k / 2);
        let mut left: HashMap<HeisPoint, Vec<i64>> = HashMap::new();
        for (args, p) in products(k1) {
            left.entry(p).or_insert(args);
        }
        let mut best: Option<Vec<i64>> = None;
        for (args, r) in products(k2) {
            let need = target.mul(&r.inv()).expect("same n");
            if let Some(l) = left.get(&need) {
                let mut w = l.clone();
                w.extend(args);
                if best.as_ref().is_none_or(|b| &w < b) {
                    best = Some(w);
                }
            }
        }
        if best.is_some() {
            return best;
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intpoly::Poly;
    use crate::rational::frac;

    fn parabola() -> HeisPolySeq {
        HeisPolySeq::h3(&[0, 1], &[0, 0, 1], &[]).unwrap()
    }

    #[test]
    fn hypotheses() {
        assert!(check_hypotheses(&parabola()).passed);
        let prop = HeisPolySeq::h3(&[0, 1], &[0, 1], &[]).unwrap();
        let rep = check_hypotheses(&prop);
        assert!(!rep.passed);
        assert_eq!(rep.abelian_rank, 1);
        assert_eq!(rep.kernel, vec![q(-1), q(1)]);
        let constant = HeisPolySeq::h3(&[1], &[2], &[3]).unwrap();
        assert!(!check_hypotheses(&constant).passed);
    }

    #[test]
    fn parabola_pipeline() {
        let spec = SequenceSpec::new(parabola());
        let rep = run_pipeline(&spec, &PipelineConfig::default()).unwrap();
        assert_eq!(rep.b, 3);
        assert_eq!(rep.l, 4);
        assert_eq!(rep.m, 8);
        assert_eq!(rep.d, "4");
        assert_eq!(rep.affine_matrix, vec![vec![q(2), q(0), q(0)], vec![q(0), q(2), q(0)], vec![q(0), q(0), q(-1)]]);
        assert!(rep.samples.len() >= 50, "{}", rep.samples.len());
        assert!(rep.all_verified());
        let lat = rep.lattice();
        for s in &rep.samples {
            assert_eq!(lat.contains(&s.target), Ok(true));
            assert_eq!(s.witness.len(), rep.m);
        }
    }

    #[test]
    fn degenerate_pipeline_routes_through_translates() {
        let c = Poly::from_coeffs(vec![q(0), frac(1, 2), q(0), frac(1, 2)]);
        let g = HeisPolySeq::new(vec![Poly::x()], vec![Poly::from_ints(&[0, 0, 1])], c).unwrap();
        let cfg = PipelineConfig { samples: 5, x_bound: 12, ..PipelineConfig::default() };
        let rep = run_pipeline(&SequenceSpec::new(g), &cfg).unwrap();
        assert_eq!(rep.translate_spec.as_ref().unwrap().pairs, vec![(1, 0), (2, 0)]);
        assert!(rep.degenerate.is_some());
        assert_eq!(rep.m, 2 * rep.l * 2);
        assert!(rep.all_verified());
    }

    #[test]
    fn refuses_failed_hypotheses() {
        let spec = SequenceSpec::new(HeisPolySeq::h3(&[0, 1], &[0, 1], &[]).unwrap());
        assert!(matches!(run_pipeline(&spec, &PipelineConfig::default()), Err(Error::HypothesesFailed(_))));
        let cfg = PipelineConfig { allow_sampling: false, ..PipelineConfig::default() };
        assert_eq!(run_pipeline(&SequenceSpec::new(parabola()), &cfg), Err(Error::KamkeConstantsMissing(3)));
    }

    #[test]
    fn brute_force() {
        let g = parabola();
        assert_eq!(brute_force_witness(&g, &g.eval(3), 1, 5), Some(vec![3]));
        let t = g.eval(1).mul(&g.eval(2)).unwrap();
        assert_eq!(brute_force_witness(&g, &t, 2, 5), Some(vec![1, 2]));
        assert_eq!(brute_force_witness(&g, &HeisPoint::identity(1), 0, 5), Some(vec![]));
        assert_eq!(brute_force_witness(&g, &HeisPoint::h3(0, 0, 1), 2, 3), None);
    }
}
