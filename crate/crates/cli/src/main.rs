//! `waring`: command-line access to the waring-core algorithms.
//!
//! Structured inputs (polynomials, sequences, group elements) are JSON,
//! given inline, as a file path, or on stdin with `-`. Rationals may be JSON
//! integers or strings such as `"3/2"`.

use std::io::Read;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use waring_core::addsemigroup::{
    coverage_bound_search, frobenius_number, representable, sumset_iterate, vector_min_summands,
};
use waring_core::intpoly::{gcd_is_one_by_pair, gcd_values_binomial, gcd_values_lagrange, to_binomial_basis};
use waring_core::kamke::{solve_power_sums, verify_domain};
use waring_core::pipeline::{brute_force_witness, check_hypotheses, run_pipeline, verify_witness};
use waring_core::polyseq::{degree_bound_b, power_sum_decompose, symmetrize};
use waring_core::rankcheck::{detect_degenerate, jacobian_of_log, jacobian_rows, lemma4deg_search};
use waring_core::rational::parse_q;
use waring_core::{
    GeneratorSet, HeisLie, HeisPoint, HeisPolySeq, KamkeDomain, PipelineConfig, Poly, PowerSumTarget, SequenceSpec,
    SumsetWindow, Q,
};

#[derive(Parser)]
#[command(name = "waring", version, about = "Exact Waring-type computations in discrete Heisenberg groups")]
struct Cli {
    /// Emit JSON instead of the text summary.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for randomized corpora.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Generic search bound; each subcommand documents its use.
    #[arg(long, global = true)]
    bound: Option<i64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Integer-valuedness, binomial coordinates and the gcd of all values.
    Gcd {
        /// Ascending coefficients, e.g. '["0","1/2","1/2"]'.
        poly: String,
        /// Window starts for the interpolation gcd.
        #[arg(long, value_delimiter = ',', default_value = "0")]
        windows: Vec<i64>,
    },
    /// Frobenius number of a numerical semigroup.
    Frobenius {
        /// Generators, e.g. 6,9,20.
        #[arg(value_delimiter = ',', required = true)]
        gens: Vec<i64>,
        /// Also test representability of these integers.
        #[arg(long, value_delimiter = ',')]
        check: Vec<i64>,
    },
    /// k-fold sumset of a finite set inside a window.
    Sumset {
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        set: Vec<i64>,
        #[arg(long)]
        k: usize,
        #[arg(long, allow_hyphen_values = true, default_value_t = 0)]
        lo: i64,
        #[arg(long, allow_hyphen_values = true)]
        hi: i64,
        /// Bound on summand magnitude, required for mixed signs.
        #[arg(long)]
        summand_bound: Option<i64>,
    },
    /// Finite-sumset coverage of the semigroup generated by f(N0), or the
    /// least summand count for a vector target.
    Coverage {
        /// One polynomial, or several with --target.
        #[arg(required = true)]
        polys: Vec<String>,
        /// Target vector for the vector problem, e.g. 5,5.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        target: Vec<i64>,
    },
    /// Group and Lie algebra operations.
    Heis {
        #[command(subcommand)]
        op: HeisOp,
    },
    /// Sequence summary: hypotheses, degree bound, values and power-sum form.
    Seq {
        seq: Option<String>,
        /// Number of arguments of the symmetrized product.
        #[arg(long, default_value_t = 2)]
        l: usize,
    },
    /// Derivative matrix of log g at a point and its ranks.
    Rank {
        seq: Option<String>,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        x0: i64,
        /// Rows; defaults to the sequence's degree bound.
        #[arg(long)]
        rows: Option<usize>,
    },
    /// Degeneracy certificate and translate-product search.
    Degenerate {
        seq: Option<String>,
        #[arg(long, default_value_t = 3)]
        m_max: usize,
    },
    /// Solve s_nu = x_1^nu + ... + x_N^nu in nonnegative integers.
    KamkeSolve {
        #[arg(long, value_delimiter = ',', required = true)]
        s: Vec<i64>,
        #[arg(long)]
        n: usize,
    },
    /// Solve every target of a domain up to an s1 cap.
    KamkeVerify {
        #[command(flatten)]
        domain: DomainArgs,
        #[arg(long, default_value_t = 60)]
        s1_max: i64,
    },
    /// End-to-end witness generation.
    Pipeline {
        seq: Option<String>,
        #[arg(long, default_value_t = 50)]
        samples: usize,
        /// Divisibility modulus when no domain is supplied.
        #[arg(long, default_value_t = 2)]
        modulus: i64,
        #[command(flatten)]
        domain: DomainArgs,
        #[arg(long, default_value_t = 60)]
        s1_max: i64,
        /// Fail instead of sampling when no domain matches.
        #[arg(long)]
        no_sampling: bool,
        #[arg(long, default_value_t = 3)]
        m_max: usize,
    },
    /// Brute-force shortest product of sequence values equal to a target.
    Witness {
        seq: String,
        #[arg(long)]
        target: String,
        #[arg(long)]
        max_len: usize,
    },
}

#[derive(Subcommand)]
enum HeisOp {
    Mul { x: String, y: String },
    Inv { x: String },
    Log { x: String },
    /// Input is a Lie element {"n","a","b","d"}.
    Exp { x: String },
    Commutator { x: String, y: String },
    Pow {
        x: String,
        #[arg(allow_hyphen_values = true)]
        k: i64,
    },
    /// BCH product of two Lie elements.
    Bch { x: String, y: String },
    /// Random integral elements with coordinates in [-bound, bound].
    Random {
        #[arg(long, default_value_t = 1)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        count: usize,
    },
}

#[derive(Args, Clone)]
struct DomainArgs {
    /// Bundled domain constants by name or alias.
    #[arg(long)]
    preset: Option<String>,
    /// Custom domain: number of summands.
    #[arg(long)]
    summands: Option<usize>,
    /// Custom domain: divisibility modulus of every s_nu.
    #[arg(long)]
    domain_modulus: Option<i64>,
    /// Custom domain: strict lower bound on s1.
    #[arg(long)]
    i1: Option<String>,
    /// Custom domain: lo:hi pairs for s_nu / s1^nu, nu = 2, 3, ...
    #[arg(long, value_delimiter = ',')]
    bounds: Vec<String>,
}

impl DomainArgs {
    fn resolve(&self) -> Result<Option<KamkeDomain>> {
        if let Some(name) = &self.preset {
            return Ok(Some(KamkeDomain::preset(name)?));
        }
        if self.bounds.is_empty() && self.summands.is_none() {
            return Ok(None);
        }
        let summands = self.summands.context("--summands is required for a custom domain")?;
        let modulus = self.domain_modulus.unwrap_or(1);
        let i1 = parse_q(self.i1.as_deref().unwrap_or("0"))?;
        let bounds = self
            .bounds
            .iter()
            .map(|b| {
                let (lo, hi) = b.split_once(':').with_context(|| format!("bound {b:?} is not lo:hi"))?;
                Ok((parse_q(lo)?, parse_q(hi)?))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Some(KamkeDomain::new(bounds.len() + 1, summands, modulus, i1, bounds)?))
    }
}

/// Inline JSON, `-` for stdin, or a file path.
fn read_input(arg: Option<&str>) -> Result<String> {
    match arg {
        None | Some("-") => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).context("reading stdin")?;
            Ok(s)
        }
        Some(s) if s.trim_start().starts_with(['{', '[']) => Ok(s.to_string()),
        Some(path) => std::fs::read_to_string(path).with_context(|| format!("reading {path}")),
    }
}

fn parse<T: serde::de::DeserializeOwned>(arg: Option<&str>, what: &str) -> Result<T> {
    let text = read_input(arg)?;
    serde_json::from_str(&text).with_context(|| format!("parsing {what}"))
}

fn q_list(xs: &[Q]) -> String {
    xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}

fn point_str(p: &HeisPoint) -> String {
    format!("a=({}) b=({}) c={}", q_list(&p.a), q_list(&p.b), p.c)
}

struct Output {
    json: bool,
}

impl Output {
    fn emit(&self, value: &Value, text: impl FnOnce() -> String) {
        if self.json {
            println!("{}", serde_json::to_string_pretty(value).expect("serializable"));
        } else {
            println!("{}", text());
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

/// Returns `Ok(false)` when a verification step failed.
fn run(cli: &Cli) -> Result<bool> {
    let out = Output { json: cli.json };
    match &cli.command {
        Command::Gcd { poly, windows } => {
            let f: Poly = parse(Some(poly), "polynomial")?;
            let integer_valued = f.is_integer_valued();
            if !integer_valued {
                out.emit(&json!({ "poly": f, "integer_valued": false }), || {
                    format!("{f} is not integer-valued")
                });
                return Ok(true);
            }
            let basis = to_binomial_basis(&f)?;
            let gcd = gcd_values_binomial(&f)?;
            let lagrange = windows
                .iter()
                .map(|&a| Ok((a, gcd_values_lagrange(&f, a)?)))
                .collect::<Result<Vec<_>>>()?;
            let pair = gcd_is_one_by_pair(&f, cli.bound.unwrap_or(100));
            let agree = lagrange.iter().all(|(_, g)| *g == gcd);
            let value = json!({
                "poly": f,
                "integer_valued": true,
                "binomial_basis": basis,
                "gcd": gcd.to_string(),
                "lagrange": lagrange.iter().map(|(a, g)| json!({"start": a, "gcd": g.to_string()})).collect::<Vec<_>>(),
                "coprime_pair": pair,
            });
            out.emit(&value, || {
                let mut s = format!("f = {f}\nintegral binomial coordinates: {basis:?}\ngcd of values: {gcd}");
                for (a, g) in &lagrange {
                    s.push_str(&format!("\nwindow at {a}: gcd {g}"));
                }
                if let Some((x, y)) = pair {
                    s.push_str(&format!("\ngcd(f({x}), f({y})) = 1"));
                }
                s
            });
            Ok(agree)
        }
        Command::Frobenius { gens, check } => {
            let set = GeneratorSet::new(gens.clone())?;
            let g = frobenius_number(&set)?;
            let checks = check.iter().map(|&t| Ok((t, representable(&set, t)?))).collect::<Result<Vec<_>>>()?;
            let value = json!({
                "generators": set.gens(),
                "frobenius": g,
                "checks": checks.iter().map(|(t, r)| json!({"n": t, "representable": r})).collect::<Vec<_>>(),
            });
            out.emit(&value, || {
                let mut s = format!("generators {:?}: Frobenius number {g}", set.gens());
                for (t, r) in &checks {
                    s.push_str(&format!("\n{t}: {}", if *r { "representable" } else { "not representable" }));
                }
                s
            });
            Ok(true)
        }
        Command::Sumset { set, k, lo, hi, summand_bound } => {
            let mut window = SumsetWindow::interval(*lo, *hi);
            if let Some(b) = summand_bound.or(cli.bound) {
                window = window.with_summand_bound(b);
            }
            let sums = sumset_iterate(set, *k, &window)?;
            let value = json!({ "k": k, "window": [lo, hi], "size": sums.len(), "elements": sums });
            out.emit(&value, || {
                let list: Vec<String> = sums.iter().map(ToString::to_string).collect();
                format!("{k}A within [{lo}, {hi}]: {} elements\n{}", sums.len(), list.join(" "))
            });
            Ok(true)
        }
        Command::Coverage { polys, target } => {
            let fs = polys.iter().map(|p| parse::<Poly>(Some(p), "polynomial")).collect::<Result<Vec<_>>>()?;
            if target.is_empty() {
                if fs.len() != 1 {
                    bail!("several polynomials need --target");
                }
                let hi = cli.bound.unwrap_or(200);
                let cov = coverage_bound_search(&fs[0], hi)?;
                out.emit(&serde_json::to_value(&cov)?, || format!("{}: {cov:?}", fs[0]));
            } else {
                let x_bound = cli.bound.unwrap_or_else(|| target.iter().copied().max().unwrap_or(0));
                let k = vector_min_summands(&fs, target, x_bound)?;
                let value = json!({ "target": target, "x_bound": x_bound, "min_summands": k });
                out.emit(&value, || match k {
                    Some(k) => format!("{target:?} needs {k} summands"),
                    None => format!("{target:?} has no representation with arguments <= {x_bound}"),
                });
            }
            Ok(true)
        }
        Command::Heis { op } => heis(op, cli, &out),
        Command::Seq { seq, l } => {
            let g: HeisPolySeq = parse(seq.as_deref(), "sequence")?;
            let hyp = check_hypotheses(&g);
            let bound = degree_bound_b(&g);
            let x_max = cli.bound.unwrap_or(5);
            let values: Vec<HeisPoint> = (0..=x_max).map(|x| g.eval(x)).collect();
            let sym = symmetrize(&g, *l);
            let b = bound.b().max(1);
            let decomposed = sym
                .log_entries()
                .iter()
                .map(|e| power_sum_decompose(e, b).map(|p| p.display_with("s")))
                .collect::<waring_core::Result<Vec<_>>>()?;
            let value = json!({
                "seq": g,
                "hypotheses": hyp,
                "degree_bound": bound,
                "values": values,
                "symmetrized_log_in_power_sums": decomposed,
            });
            out.emit(&value, || {
                let mut s = format!("hypotheses: {}\nB = {} (L' = {})", hyp.message, bound.b(), bound.l_prime);
                for (x, v) in values.iter().enumerate() {
                    s.push_str(&format!("\ng({x}) = {}", point_str(v)));
                }
                s.push_str(&format!("\nlog of the palindromic product of {l} arguments:"));
                for d in &decomposed {
                    s.push_str(&format!("\n  {d}"));
                }
                s
            });
            Ok(true)
        }
        Command::Rank { seq, x0, rows } => {
            let g: HeisPolySeq = parse(seq.as_deref(), "sequence")?;
            let rows = rows.unwrap_or_else(|| jacobian_rows(&g));
            let jac = jacobian_of_log(&g, *x0, rows);
            let value = json!({
                "jacobian": jac,
                "rank": jac.rank(),
                "rank_ab": jac.rank_j0(),
                "rank_augmented": jac.rank_j1(),
                "full_rank": jac.is_full_rank(),
            });
            out.emit(&value, || {
                let mut s = format!("derivatives of log g at {x0}:");
                for row in &jac.rows {
                    s.push_str(&format!("\n  [{}]", q_list(row)));
                }
                s.push_str(&format!("\nrank {} of {} (a,b part {})", jac.rank(), jac.cols(), jac.rank_j0()));
                s
            });
            Ok(true)
        }
        Command::Degenerate { seq, m_max } => {
            let g: HeisPolySeq = parse(seq.as_deref(), "sequence")?;
            let cert = detect_degenerate(&g);
            let coeff_bound = cli.bound.unwrap_or(3);
            let spec = if cert.is_some() { lemma4deg_search(&g, *m_max, coeff_bound)? } else { None };
            let h_rank = match &spec {
                Some(sp) => {
                    let h = sp.apply(&g)?;
                    Some(jacobian_of_log(&h, 0, jacobian_rows(&h)).rank())
                }
                None => None,
            };
            let value = json!({ "certificate": cert, "translate_spec": spec, "translated_rank": h_rank });
            out.emit(&value, || match (&cert, &spec) {
                (None, _) => "not degenerate: d is independent of a, b and constants".to_string(),
                (Some(c), Some(sp)) => format!(
                    "degenerate: d = ({}).a + ({}).b + {}\ntranslate product {:?} has rank {}",
                    q_list(&c.u),
                    q_list(&c.v),
                    c.w,
                    sp.pairs,
                    h_rank.unwrap_or(0)
                ),
                (Some(c), None) => format!(
                    "degenerate: d = ({}).a + ({}).b + {}\nno translate product within the search bounds",
                    q_list(&c.u),
                    q_list(&c.v),
                    c.w
                ),
            });
            Ok(cert.is_none() || spec.is_some())
        }
        Command::KamkeSolve { s, n } => {
            let t = PowerSumTarget::new(s.clone())?;
            let sol = solve_power_sums(&t, *n, cli.bound);
            let value = json!({ "s": s, "summands": n, "solution": sol });
            out.emit(&value, || match &sol {
                Some(x) => format!("{s:?} = power sums of {x:?}"),
                None => format!("{s:?}: no solution with {n} summands"),
            });
            Ok(true)
        }
        Command::KamkeVerify { domain, s1_max } => {
            let dom = domain.resolve()?.context("give --preset or a custom domain")?;
            let report = verify_domain(&dom, *s1_max);
            out.emit(&serde_json::to_value(&report)?, || {
                let mut s = format!(
                    "checked {} targets with s1 <= {s1_max}: {} failures in {} ms",
                    report.checked,
                    report.failures.len(),
                    report.elapsed_ms
                );
                for f in report.failures.iter().take(20) {
                    s.push_str(&format!("\n  unsolved {:?}", f.s));
                }
                s
            });
            Ok(report.passed())
        }
        Command::Pipeline { seq, samples, modulus, domain, s1_max, no_sampling, m_max } => {
            let g: HeisPolySeq = parse(seq.as_deref(), "sequence")?;
            let spec = SequenceSpec::new(g);
            if !spec.hypotheses.passed {
                bail!("hypotheses failed: {}", spec.hypotheses.message);
            }
            let config = PipelineConfig {
                samples: *samples,
                x_bound: cli.bound.unwrap_or(PipelineConfig::default().x_bound),
                modulus: *modulus,
                domain: domain.resolve()?,
                s1_max: *s1_max,
                allow_sampling: !no_sampling,
                m_max: *m_max,
                ..PipelineConfig::default()
            };
            let report = run_pipeline(&spec, &config)?;
            let summary = format!(
                "B = {}, L = {}, A = {}, M = {}, D = {}; {} of {} witnesses verified ({} ms)\nmode: {}",
                report.b,
                report.l,
                report.modulus,
                report.m,
                report.d,
                report.verified,
                report.samples.len(),
                report.elapsed_ms,
                report.mode_note
            );
            if cli.json {
                eprintln!("{summary}");
            }
            out.emit(&serde_json::to_value(&report)?, || {
                let mut s = summary.clone();
                if let Some(sp) = &report.translate_spec {
                    s.push_str(&format!("\ntranslate product {:?}", sp.pairs));
                }
                for smp in &report.samples {
                    s.push_str(&format!(
                        "\n{} {} = product at {:?}",
                        if smp.verified { "ok  " } else { "FAIL" },
                        point_str(&smp.target),
                        smp.witness
                    ));
                }
                s
            });
            Ok(report.all_verified())
        }
        Command::Witness { seq, target, max_len } => {
            let g: HeisPolySeq = parse(Some(seq), "sequence")?;
            let t: HeisPoint = parse(Some(target), "target")?;
            if !t.is_integral() {
                bail!("target must be integral");
            }
            let x_bound = cli.bound.unwrap_or(6);
            let w = brute_force_witness(&g, &t, *max_len, x_bound);
            let verified = w.as_ref().is_some_and(|w| verify_witness(&g, w, &t));
            let value = json!({ "target": t, "max_len": max_len, "x_bound": x_bound, "witness": w, "verified": verified });
            out.emit(&value, || match &w {
                Some(w) => format!("{} = product at {w:?} ({} factors)", point_str(&t), w.len()),
                None => format!("no product of at most {max_len} values with arguments <= {x_bound}"),
            });
            Ok(w.is_none() || verified)
        }
    }
}

fn heis(op: &HeisOp, cli: &Cli, out: &Output) -> Result<bool> {
    let point = |s: &str| parse::<HeisPoint>(Some(s), "group element");
    let lie = |s: &str| parse::<HeisLie>(Some(s), "Lie element");
    let (value, text): (Value, String) = match op {
        HeisOp::Mul { x, y } => {
            let p = point(x)?.mul(&point(y)?)?;
            (serde_json::to_value(&p)?, point_str(&p))
        }
        HeisOp::Inv { x } => {
            let p = point(x)?.inv();
            (serde_json::to_value(&p)?, point_str(&p))
        }
        HeisOp::Log { x } => {
            let l = point(x)?.log();
            let text = format!("a=({}) b=({}) d={}", q_list(&l.a), q_list(&l.b), l.d);
            (serde_json::to_value(&l)?, text)
        }
        HeisOp::Exp { x } => {
            let p = lie(x)?.exp();
            (serde_json::to_value(&p)?, point_str(&p))
        }
        HeisOp::Commutator { x, y } => {
            let p = point(x)?.commutator(&point(y)?)?;
            (serde_json::to_value(&p)?, point_str(&p))
        }
        HeisOp::Pow { x, k } => {
            let p = point(x)?.pow(*k);
            (serde_json::to_value(&p)?, point_str(&p))
        }
        HeisOp::Bch { x, y } => {
            let l = lie(x)?.bch(&lie(y)?)?;
            let text = format!("a=({}) b=({}) d={}", q_list(&l.a), q_list(&l.b), l.d);
            (serde_json::to_value(&l)?, text)
        }
        HeisOp::Random { n, count } => {
            let bound = cli.bound.unwrap_or(10);
            let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
            let pts: Vec<HeisPoint> = (0..*count)
                .map(|_| {
                    let a: Vec<i64> = (0..*n).map(|_| rng.gen_range(-bound..=bound)).collect();
                    let b: Vec<i64> = (0..*n).map(|_| rng.gen_range(-bound..=bound)).collect();
                    HeisPoint::from_ints(&a, &b, rng.gen_range(-bound..=bound))
                })
                .collect();
            let text = pts.iter().map(point_str).collect::<Vec<_>>().join("\n");
            (serde_json::to_value(&pts)?, text)
        }
    };
    out.emit(&value, || text);
    Ok(true)
}
