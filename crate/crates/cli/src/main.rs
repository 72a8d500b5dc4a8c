//! `approxspec`: every library operation as a reproducible command.

mod output;

use std::process::ExitCode;

use approxspec::cantor::{
    cover_intervals, extrema, hausdorff_bounds, ifs_cover, sumset_interval, CantorSpec,
    DEFAULT_COVER_BUDGET,
};
use approxspec::literal::{parse_literal, Literal};
use approxspec::repro::{self, ReproConfig, ReproReport};
use approxspec::spectrum::{
    approx_sequence, euler, euler_digit, legendre_filter, markov_constant, quad_accumulation_set,
    secondary_convergent_terms, stream_accumulation, term_enclosures, MarkovMode, TermValue,
    DEFAULT_CLUSTER_RADIUS,
};
use approxspec::well::{coeff_fraction, eigenvalues, min_abs_hit, pu_spectrum, singular_scan};
use approxspec::words::{target_hit_scan, word_to_alpha, HitKind, ScanOptions, WordGenerator};
use approxspec::{Error, Exact, Exec};
use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::json;

use output::{Output, Table};

#[derive(Parser, Debug)]
#[command(
    name = "approxspec",
    version,
    about = "Continued fractions, approximation spectra and Cantor-set bounds"
)]
struct Cli {
    #[command(flatten)]
    config: RunConfig,
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args, Debug, Clone)]
struct RunConfig {
    /// Decimal digits for printed values.
    #[arg(long, global = true, env = "APPROXSPEC_PRECISION", default_value_t = 50,
          value_parser = clap::value_parser!(u32).range(10..))]
    precision: u32,
    /// Depth of term tables and scans; each command has its own default.
    #[arg(long, global = true, env = "APPROXSPEC_DEPTH", value_parser = clap::value_parser!(u64).range(1..))]
    depth: Option<u64>,
    /// Tolerance for target scans and clustering.
    #[arg(long, global = true, env = "APPROXSPEC_TOL", value_parser = positive_f64)]
    tol: Option<f64>,
    #[arg(long, global = true, env = "APPROXSPEC_FORMAT", value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Worker threads; 1 runs everything sequentially.
    #[arg(long, global = true, env = "APPROXSPEC_WORKERS", value_parser = clap::value_parser!(u64).range(1..))]
    workers: Option<u64>,
    /// Seed for randomized reproduction scripts.
    #[arg(long, global = true, env = "APPROXSPEC_SEED", default_value_t = 1)]
    seed: u64,
}

impl RunConfig {
    fn depth_or(&self, default: usize) -> usize {
        self.depth.map_or(default, |d| d as usize)
    }

    fn exec(&self) -> Exec {
        if self.workers == Some(1) {
            Exec::Sequential
        } else {
            Exec::Parallel
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

fn positive_f64(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(x) if x > 0.0 && x.is_finite() => Ok(x),
        Ok(_) => Err("must be positive".into()),
        Err(e) => Err(e.to_string()),
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Continued fraction of a number literal.
    CfExpand { x: String },
    /// Exact value of a continued-fraction literal.
    CfEval { cf: String },
    /// Convergents p_N/q_N for N ≤ depth (default 10).
    Convergents { x: String },
    /// Terms t_N = q_N²(p_N/q_N − α) for N ≤ depth (default 20).
    ApproxSeq { x: String },
    /// Accumulation points of t_N: exact for quadratic input, clustered otherwise.
    QuadAccum { x: String },
    /// Markov constant, exact for quadratic input unless --numeric.
    Markov {
        x: String,
        #[arg(long)]
        numeric: bool,
    },
    /// Secondary convergent term after convergent N.
    Secondary {
        x: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        a: i64,
    },
    /// All p/q with |α − p/q| < 1/(2q²), q ≤ qmax, tagged with their convergent index.
    Legendre {
        x: String,
        #[arg(long, default_value_t = 1000)]
        qmax: u64,
    },
    /// Digits of e and its approximation terms up to depth (default 30).
    Euler,
    /// Prefix of a constructed word.
    WordGen {
        #[arg(value_enum)]
        word: WordArg,
        #[arg(long, default_value_t = 100)]
        len: usize,
    },
    /// Closest approximation terms of α = [0; word] to each target.
    WordScan {
        #[arg(value_enum)]
        word: WordArg,
        #[arg(
            long,
            value_delimiter = ',',
            allow_hyphen_values = true,
            required = true
        )]
        targets: Vec<f64>,
        /// Also try secondary convergents.
        #[arg(long)]
        secondary: bool,
        /// Largest multiplier z applied to (k, m).
        #[arg(long, default_value_t = 1)]
        zmax: u32,
    },
    /// Extrema of F(A) = {[0; a1, a2, …] : a_i ∈ A}.
    CantorExtrema {
        #[arg(long, value_delimiter = ',', required = true)]
        alphabet: Vec<i64>,
    },
    /// Endpoints of F + F and, with --cover, the depth-n IFS cover of F.
    CantorSum {
        #[arg(long, value_delimiter = ',', required = true)]
        alphabet: Vec<i64>,
        #[arg(long)]
        cover: Option<u32>,
    },
    /// Upper bound on the Hausdorff dimension of F + F.
    Hausdorff {
        #[arg(long, value_delimiter = ',', required = true)]
        alphabet: Vec<i64>,
    },
    /// Box eigenvalue coefficients k²/a² − m²/b².
    BoxEigen {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long, default_value_t = 10)]
        kmax: i64,
        #[arg(long, default_value_t = 10)]
        mmax: i64,
    },
    /// Values m²(k/m − α) inside an open window.
    BoxScan {
        #[arg(long)]
        alpha: String,
        #[arg(
            long,
            value_delimiter = ',',
            allow_hyphen_values = true,
            num_args = 1,
            default_value = "-1,1"
        )]
        window: Vec<f64>,
        #[arg(long, default_value_t = 1000)]
        mmax: u64,
    },
    /// Energies (n + 1/2)Ωx − (m + 1/2)Ωy on a grid.
    PuSpectrum {
        #[arg(long)]
        ox: String,
        #[arg(long)]
        oy: String,
        #[arg(long, default_value_t = 199)]
        nmax: u32,
        #[arg(long, default_value_t = 199)]
        mmax: u32,
    },
    /// Run a reproduction script, or `all`.
    Repro { name: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum WordArg {
    #[value(name = "universal-14")]
    Universal14,
    #[value(name = "universal-45")]
    Universal45,
    Spiked,
}

impl From<WordArg> for WordGenerator {
    fn from(w: WordArg) -> Self {
        match w {
            WordArg::Universal14 => WordGenerator::Universal14,
            WordArg::Universal45 => WordGenerator::Universal45,
            WordArg::Spiked => WordGenerator::Spiked,
        }
    }
}

/// Failure after a successful run: some reproduction check did not pass.
const EXIT_CHECKS_FAILED: u8 = 3;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = cli.config.clone();
    let result = (|| {
        if let Some(n) = cfg.workers.filter(|&n| n > 1) {
            approxspec::init_workers(n as usize)?;
        }
        run(&cli.command, &cfg)
    })();
    match result {
        Ok((out, ok)) => {
            match out.write(cfg.format, std::io::stdout().lock()) {
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => {
                    eprintln!(
                        "{}",
                        json!({"error": {"kind": "Io", "message": e.to_string()}})
                    );
                    return ExitCode::FAILURE;
                }
                _ => {}
            }
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_CHECKS_FAILED)
            }
        }
        Err(e) => {
            eprintln!(
                "{}",
                json!({"error": {"kind": error_kind(&e), "message": e.to_string()}})
            );
            ExitCode::FAILURE
        }
    }
}

fn error_kind(e: &Error) -> String {
    let dbg = format!("{e:?}");
    dbg.split(|c: char| !c.is_alphanumeric())
        .next()
        .unwrap_or("Error")
        .to_string()
}

fn literal(s: &str) -> approxspec::Result<Literal> {
    parse_literal(s)
}

fn exact_literal(s: &str, what: &str) -> approxspec::Result<Exact> {
    match literal(s)? {
        Literal::Exact(x) => Ok(x),
        Literal::Stream(_) => Err(Error::InvalidArgument(format!(
            "{what} must be an exact number, got {s:?}"
        ))),
    }
}

fn exact_json(x: &Exact, digits: u32) -> serde_json::Value {
    json!({ "text": x.to_string(), "decimal": x.to_decimal(digits).text, "components": x })
}

fn term_cells(v: &TermValue) -> Vec<String> {
    let i = v.interval();
    vec![
        format!("{:e}", i.lo),
        format!("{:e}", i.hi),
        v.sign().to_string(),
    ]
}

type RunResult = approxspec::Result<(Output, bool)>;

fn ok(out: Output) -> RunResult {
    Ok((out, true))
}

fn run(cmd: &Command, cfg: &RunConfig) -> RunResult {
    let exec = cfg.exec();
    let digits = cfg.precision;
    match cmd {
        Command::CfExpand { x } => {
            let lit = literal(x)?;
            let cf = lit.to_cf();
            let n = cf.len().unwrap_or(cfg.depth_or(20));
            let shown = cf.prefix(n.min(cf.len().unwrap_or(usize::MAX)))?;
            let mut t = Table::new(["index", "digit"]);
            for (i, d) in shown.iter().enumerate() {
                t.row([i.to_string(), d.to_string()]);
            }
            let (pre, period) = cf
                .period_shape()
                .map_or((None, None), |(s, l)| (Some(s), Some(l)));
            let digits_json: Vec<String> = shown.iter().map(|d| d.to_string()).collect();
            ok(Output::new(
                json!({"input": x, "expansion": cf.to_string(), "preperiod": pre, "period": period, "digits": digits_json}),
                t,
            ))
        }
        Command::CfEval { cf } => {
            let lit = literal(cf)?;
            let value = lit.exact().ok_or_else(|| {
                Error::InvalidArgument(format!(
                    "{cf:?} is a digit stream with no closed form; use approx-seq"
                ))
            })?;
            let mut t = Table::new(["field", "value"]);
            t.row(["value".into(), value.to_string()]);
            t.row(["decimal".into(), value.to_decimal(digits).text]);
            ok(Output::new(
                json!({"input": cf, "expansion": lit.to_cf().to_string(), "value": exact_json(value, digits)}),
                t,
            ))
        }
        Command::Convergents { x } => {
            let cf = literal(x)?.to_cf();
            let n = cfg.depth_or(10);
            let n = cf.len().map_or(n, |l| n.min(l - 1));
            let conv = cf.convergents(n)?;
            let mut t = Table::new(["N", "p", "q"]);
            for c in &conv {
                t.row([c.index.to_string(), c.p.to_string(), c.q.to_string()]);
            }
            ok(Output::new(json!({"input": x, "convergents": conv}), t))
        }
        Command::ApproxSeq { x } => {
            let cf = literal(x)?.to_cf();
            let terms = approx_sequence(&cf, cfg.depth_or(20), exec)?;
            let mut t = Table::new(["N", "p", "q", "value_lo", "value_hi", "sign"]);
            for term in &terms {
                let mut row = vec![
                    term.index.to_string(),
                    term.convergent.p.to_string(),
                    term.convergent.q.to_string(),
                ];
                row.extend(term_cells(&term.value));
                t.row(row);
            }
            ok(Output::new(json!({"input": x, "terms": terms}), t))
        }
        Command::QuadAccum { x } => {
            let report = match literal(x)? {
                Literal::Exact(v) => quad_accumulation_set(&v, cfg.depth_or(60), exec)?,
                Literal::Stream(cf) => stream_accumulation(
                    &cf,
                    cfg.depth_or(2000),
                    cfg.tol.unwrap_or(DEFAULT_CLUSTER_RADIUS),
                    exec,
                )?,
            };
            let mut t = Table::new(["value", "decimal", "lo", "hi"]);
            for p in &report.points {
                t.row([
                    p.value.to_string(),
                    p.value.to_decimal(digits).text,
                    String::new(),
                    String::new(),
                ]);
            }
            for c in &report.clusters {
                t.row([
                    String::new(),
                    format!("{:e}", c.center),
                    format!("{:e}", c.lo),
                    format!("{:e}", c.hi),
                ]);
            }
            ok(Output::new(
                serde_json::to_value(&report).expect("serializable"),
                t,
            ))
        }
        Command::Markov { x, numeric } => {
            let lit = literal(x)?;
            let mode = if *numeric || lit.exact().is_none() {
                MarkovMode::Numeric {
                    depth: cfg.depth_or(10_000),
                }
            } else {
                MarkovMode::ExactQuadratic
            };
            let est = markov_constant(&lit.to_cf(), mode, exec)?;
            let mut v = serde_json::to_value(&est).expect("serializable");
            if let approxspec::spectrum::MarkovEstimate::Exact { value, .. } = &est {
                v["decimal"] = json!(value.to_decimal(digits).text);
                v["text"] = json!(value.to_string());
            }
            let mut t = Table::new(["field", "value"]);
            t.row(["estimate".into(), format!("{:e}", est.to_f64())]);
            ok(Output::new(v, t))
        }
        Command::Secondary { x, n, a } => {
            let cf = literal(x)?.to_cf();
            let s = secondary_convergent_terms(&cf, *n, &BigInt::from(*a))?;
            let mut t = Table::new(["N", "a", "k", "m", "value_lo", "value_hi", "sign"]);
            let mut row = vec![
                s.index.to_string(),
                s.a.to_string(),
                s.k.to_string(),
                s.m.to_string(),
            ];
            row.extend(term_cells(&s.value));
            t.row(row);
            ok(Output::new(
                serde_json::to_value(&s).expect("serializable"),
                t,
            ))
        }
        Command::Legendre { x, qmax } => {
            let cf = literal(x)?.to_cf();
            let rep = legendre_filter(&cf, *qmax, exec)?;
            let mut t = Table::new(["p", "q", "convergent_index"]);
            for h in &rep.hits {
                t.row([
                    h.p.to_string(),
                    h.q.to_string(),
                    h.convergent_index.map_or(String::new(), |i| i.to_string()),
                ]);
            }
            let all = rep.all_convergents();
            ok(Output::new(
                json!({"input": x, "q_max": rep.q_max, "all_convergents": all, "hits": rep.hits}),
                t,
            ))
        }
        Command::Euler => {
            let depth = cfg.depth_or(30);
            let terms = term_enclosures(&euler(), 0..depth + 1, exec);
            let mut t = Table::new(["N", "digit", "value_lo", "value_hi"]);
            let mut rows = vec![];
            for (n, v) in terms.iter().enumerate() {
                let d = euler_digit(n);
                t.row([
                    n.to_string(),
                    d.to_string(),
                    format!("{:e}", v.lo),
                    format!("{:e}", v.hi),
                ]);
                rows.push(json!({"N": n, "digit": d, "value": v}));
            }
            ok(Output::new(
                json!({"expansion": euler().to_string(), "terms": rows}),
                t,
            ))
        }
        Command::WordGen { word, len } => {
            let w = WordGenerator::from(*word);
            let letters = w.prefix(*len, exec);
            let mut t = Table::new(["index", "letter"]);
            for (i, l) in letters.iter().enumerate() {
                t.row([(i + 1).to_string(), l.to_string()]);
            }
            ok(Output::new(
                json!({"word": w.name(), "letters": letters}),
                t,
            ))
        }
        Command::WordScan {
            word,
            targets,
            secondary,
            zmax,
        } => {
            let w = WordGenerator::from(*word);
            let opts = ScanOptions {
                depth: cfg.depth_or(100_000),
                tol: cfg.tol.unwrap_or(1e-3),
                include_secondary: *secondary,
                z_max: (*zmax).max(1),
            };
            let hits = target_hit_scan(&word_to_alpha(w), targets, opts, exec);
            let mut t = Table::new([
                "target",
                "N",
                "kind",
                "a",
                "z",
                "value_lo",
                "value_hi",
                "distance",
                "within_tol",
            ]);
            for h in &hits {
                let (kind, a) = match h.kind {
                    HitKind::Convergent => ("convergent", String::new()),
                    HitKind::Secondary { a } => ("secondary", a.to_string()),
                };
                t.row([
                    h.target.to_string(),
                    h.index.to_string(),
                    kind.into(),
                    a,
                    h.z.to_string(),
                    format!("{:e}", h.value.lo),
                    format!("{:e}", h.value.hi),
                    format!("{:e}", h.distance),
                    h.within_tol.to_string(),
                ]);
            }
            let all = hits.iter().all(|h| h.within_tol);
            ok(Output::new(
                json!({"word": w.name(), "options": opts, "all_within_tol": all, "hits": hits}),
                t,
            ))
        }
        Command::CantorExtrema { alphabet } => {
            let spec = CantorSpec::new(alphabet.clone())?;
            let (lo, hi) = extrema(&spec);
            let mut t = Table::new(["lo", "hi"]);
            t.row([lo.to_decimal(digits).text, hi.to_decimal(digits).text]);
            ok(Output::new(
                json!({"alphabet": spec.alphabet(), "min": exact_json(&lo, digits), "max": exact_json(&hi, digits)}),
                t,
            ))
        }
        Command::CantorSum { alphabet, cover } => {
            let spec = CantorSpec::new(alphabet.clone())?;
            let s = sumset_interval(&spec, digits);
            let mut v = json!({"alphabet": spec.alphabet(), "sumset": s});
            let mut t = Table::new(["lo", "hi"]);
            match cover {
                Some(n) => {
                    let est = ifs_cover(&spec, *n, DEFAULT_COVER_BUDGET, exec)?;
                    for (a, b) in cover_intervals(&spec, *n, DEFAULT_COVER_BUDGET, exec)? {
                        t.row([a.to_decimal(digits).text, b.to_decimal(digits).text]);
                    }
                    v["cover"] = serde_json::to_value(&est).expect("serializable");
                }
                None => t.row([s.lo_decimal.clone(), s.hi_decimal.clone()]),
            }
            ok(Output::new(v, t))
        }
        Command::Hausdorff { alphabet } => {
            let spec = CantorSpec::new(alphabet.clone())?;
            let h = hausdorff_bounds(&spec, digits);
            let mut t = Table::new(["field", "value"]);
            t.row(["upper".into(), h.upper.clone()]);
            t.row(["upper_lo".into(), h.upper_lo.clone()]);
            t.row(["upper_hi".into(), h.upper_hi.clone()]);
            t.row(["below_half".into(), h.below_half.to_string()]);
            t.row([
                "lower".into(),
                h.lower.map_or(String::new(), |l| l.to_string()),
            ]);
            ok(Output::new(
                serde_json::to_value(&h).expect("serializable"),
                t,
            ))
        }
        Command::BoxEigen { a, b, kmax, mmax } => {
            let (a, b) = (exact_literal(a, "--a")?, exact_literal(b, "--b")?);
            let eig = eigenvalues(&a, &b, *kmax, *mmax, exec)?;
            let mut t = Table::new(["k", "m", "lambda_coeff_num", "lambda_coeff_den"]);
            for e in &eig {
                let (num, den) = match &e.coeff {
                    TermValue::Exact(x) => coeff_fraction(x),
                    TermValue::Enclosure(i) => (format!("{:e}", i.mid()), "1".into()),
                };
                t.row([e.k.to_string(), e.m.to_string(), num, den]);
            }
            ok(Output::new(
                json!({"a": a.to_string(), "b": b.to_string(), "eigenvalues": eig}),
                t,
            ))
        }
        Command::BoxScan {
            alpha,
            window,
            mmax,
        } => {
            let &[lo, hi] = window.as_slice() else {
                return Err(Error::InvalidArgument(format!(
                    "--window takes lo,hi; got {} values",
                    window.len()
                )));
            };
            if lo >= hi {
                return Err(Error::InvalidArgument(format!("empty window ({lo}, {hi})")));
            }
            let cf = literal(alpha)?.to_cf();
            let hits = singular_scan(&cf, (lo, hi), *mmax, exec);
            let mut t = Table::new(["k", "m", "value_lo", "value_hi"]);
            for h in &hits {
                let i = h.value.interval();
                t.row([
                    h.k.to_string(),
                    h.m.to_string(),
                    format!("{:e}", i.lo),
                    format!("{:e}", i.hi),
                ]);
            }
            let min = min_abs_hit(&hits).map(|(v, m)| json!({"value": v, "m": m}));
            ok(Output::new(
                json!({"alpha": alpha, "window": [lo, hi], "m_max": mmax, "min_abs": min, "hits": hits}),
                t,
            ))
        }
        Command::PuSpectrum { ox, oy, nmax, mmax } => {
            let (ox, oy) = (exact_literal(ox, "--ox")?, exact_literal(oy, "--oy")?);
            let rep = pu_spectrum(&ox, &oy, *nmax, *mmax, exec)?;
            let mut t = Table::new(["n", "m", "energy_num", "energy_den"]);
            for e in &rep.energies {
                let (num, den) = coeff_fraction(&e.energy);
                t.row([e.n.to_string(), e.m.to_string(), num, den]);
            }
            ok(Output::new(
                serde_json::to_value(&rep).expect("serializable"),
                t,
            ))
        }
        Command::Repro { name } => {
            let rc = ReproConfig {
                seed: cfg.seed,
                precision: digits,
                exec,
            };
            let names: Vec<&str> = if name == "all" {
                repro::SCRIPTS.to_vec()
            } else {
                vec![name.as_str()]
            };
            let reports = names
                .iter()
                .map(|n| repro::run(n, &rc))
                .collect::<approxspec::Result<Vec<ReproReport>>>()?;
            for r in &reports {
                for line in r.lines() {
                    eprintln!("{line}");
                }
            }
            let mut t = Table::new(["script", "label", "measured", "expected", "pass"]);
            for r in &reports {
                for c in &r.checks {
                    t.row([
                        r.name.clone(),
                        c.label.clone(),
                        c.measured.clone(),
                        c.expected.clone(),
                        c.pass.to_string(),
                    ]);
                }
            }
            let all = reports.iter().all(|r| r.pass);
            let v = if reports.len() == 1 {
                serde_json::to_value(&reports[0]).expect("serializable")
            } else {
                json!({"pass": all, "reports": reports})
            };
            Ok((Output::new(v, t), all))
        }
    }
}
