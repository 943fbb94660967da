//! Command-line front end: every verification and computation of the
//! `nsverma` library as a subcommand with exact-rational I/O.
//!
//! Exit codes: 0 on success and on classification verdicts, 1 when a
//! checked identity fails, 2 on usage errors (unknown flags, malformed
//! rationals, invalid labels).  JSON output is deterministic: maps are
//! serialized in sorted key order and identical invocations produce
//! byte-identical bytes.

mod verify;

use std::io::Write;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use nsverma::exactnum::{parse_rat, HalfInt, Rat};
use nsverma::fqs::{classification_to_json, classify, discrete_series};
use nsverma::gramkac::{
    gram_matrix, gram_point_to_json, gram_symbolic_to_json, kac_factors, kac_verify,
    kernel_census, kernel_census_expected, rank_kernel_signature, vector_to_json, GramKacError,
    KacMode,
};
use nsverma::nsalgebra::VermaModule;
use nsverma::qseries::{chi_ns, gamma_sum_normalized, mult_character, theta, theta_nm};

pub use verify::{verify_all, VerifyItem, VerifyOptions};

#[derive(Parser)]
#[command(name = "nsverma", version, disable_help_subcommand = true)]
/// Exact computations in Neveu-Schwarz Verma modules: Gram matrices, Kac
/// determinants, singular vectors, unitarity classification and q-series
/// character identities.
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Plain,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Point,
    Symbolic,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum KacModeArg {
    Symbolic,
    Pointwise,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SeriesKind {
    /// chi_NS(t), the Verma-module partition series
    Chi,
    /// theta(t,z) = sum_k t^{k^2/2} z^k
    Theta,
    /// theta_{n,m}(t,z)
    ThetaNm,
    /// The normalized character numerator for a discrete label (m,p,q)
    Gamma,
    /// The discrete-series character for a label (m,p,q)
    Mult,
}

#[derive(Subcommand)]
enum Cmd {
    /// Gram matrix of the contravariant form at one level
    Gram {
        /// Level, a half-integer like 3/2
        #[arg(long)]
        level: String,
        #[arg(long, value_enum, default_value_t = Mode::Symbolic)]
        mode: Mode,
        /// Central charge (point mode), rational p/q
        #[arg(long, allow_hyphen_values = true)]
        c: Option<String>,
        /// Highest weight (point mode), rational p/q
        #[arg(long, allow_hyphen_values = true)]
        h: Option<String>,
    },
    /// Kac determinant factorization at one level
    Kacdet {
        #[arg(long)]
        level: String,
        /// Verify det_n = A_n * prod phi_pq^d(n-pq/2) and report A_n
        #[arg(long)]
        verify: bool,
        /// Verification mode; defaults to symbolic for level <= 3, else pointwise
        #[arg(long, value_enum)]
        mode: Option<KacModeArg>,
    },
    /// Exact truncated series
    Series {
        #[arg(long, value_enum)]
        kind: SeriesKind,
        /// Truncation order (terms strictly below), rational
        #[arg(long, default_value = "8")]
        order: String,
        /// Theta index n (theta-nm)
        #[arg(long)]
        n: Option<i64>,
        /// Theta modulus or discrete label m
        #[arg(long)]
        m: Option<i64>,
        /// Discrete label p (gamma, mult)
        #[arg(long)]
        p: Option<i64>,
        /// Discrete label q (gamma, mult)
        #[arg(long)]
        q: Option<i64>,
    },
    /// Classify a rational (c,h): continuum, discrete series, or ghost
    Classify {
        #[arg(long, allow_hyphen_values = true)]
        c: String,
        #[arg(long, allow_hyphen_values = true)]
        h: String,
        /// Deepest level searched for ghosts
        #[arg(long, default_value = "3")]
        max_level: String,
    },
    /// Kernel basis of the Gram matrix at a point, with singularity checks
    Singular {
        #[arg(long, allow_hyphen_values = true)]
        c: String,
        #[arg(long, allow_hyphen_values = true)]
        h: String,
        #[arg(long)]
        level: String,
    },
    /// Enumerate the discrete series
    Discrete {
        #[arg(long, default_value_t = 6)]
        m_max: i64,
        /// One representative per (c,h) via the (p,q) <-> (m-p,m+2-q) duality
        #[arg(long, default_value_t = true, action = clap::ArgAction::Set)]
        dedupe: bool,
        /// Emit (m,c,h) curve sample rows (CSV)
        #[arg(long)]
        emit_curves: bool,
    },
    /// Verify a denominator-free coset decomposition identity
    Coset {
        /// Spin j, half-integer (with --ell)
        #[arg(long)]
        j: Option<String>,
        /// Level ell >= 0 (with --j)
        #[arg(long)]
        ell: Option<i64>,
        /// Check the free-fermion decomposition identity instead
        #[arg(long)]
        frenkel: bool,
        #[arg(long, default_value = "6")]
        order: String,
    },
    /// Kernel dimension profile at a discrete point
    Census {
        #[arg(long)]
        m: i64,
        #[arg(long)]
        p: i64,
        #[arg(long)]
        q: i64,
        /// Deepest level; defaults to max(pq/2, p'q'/2)
        #[arg(long)]
        max_level: Option<String>,
    },
    /// Run the whole verification suite and report per-item pass/fail
    VerifyAll {
        #[arg(long, default_value = "3")]
        max_level: String,
        #[arg(long, default_value = "8")]
        order: String,
        #[arg(long, default_value_t = 8)]
        m_max: i64,
        /// Worker threads for independent items
        #[arg(long, default_value_t = 1)]
        threads: usize,
    },
}

/// Run the CLI on `argv` (including the program name), writing to the
/// given streams, and return the exit code.
pub fn run(argv: &[String], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let kind = e.kind();
            if kind == ErrorKind::DisplayHelp || kind == ErrorKind::DisplayVersion {
                let _ = write!(out, "{e}");
                return 0;
            }
            let _ = write!(err, "{e}");
            return 2;
        }
    };
    match dispatch(&cli) {
        Ok(Rendered { payload, failed }) => {
            let text = match cli.format {
                Format::Json => {
                    let mut s = serde_json::to_string_pretty(&payload.json)
                        .expect("value serializes");
                    s.push('\n');
                    s
                }
                Format::Csv => payload.csv,
                Format::Plain => payload.plain,
            };
            let _ = out.write_all(text.as_bytes());
            if failed {
                1
            } else {
                0
            }
        }
        Err(CmdError::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
        Err(CmdError::Verification(msg)) => {
            let _ = writeln!(err, "verification failed: {msg}");
            1
        }
    }
}

/// Convenience wrapper used by tests: capture stdout/stderr as strings.
pub fn run_capture(args: &[&str]) -> (i32, String, String) {
    let mut argv = vec!["nsverma".to_string()];
    argv.extend(args.iter().map(|s| s.to_string()));
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(&argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).expect("utf8 stdout"),
        String::from_utf8(err).expect("utf8 stderr"),
    )
}

struct Output {
    json: Value,
    plain: String,
    csv: String,
}

struct Rendered {
    payload: Output,
    /// Exit with code 1 (verification failure) even though output rendered.
    failed: bool,
}

enum CmdError {
    Usage(String),
    Verification(String),
}

fn usage<E: std::fmt::Display>(e: E) -> CmdError {
    CmdError::Usage(e.to_string())
}

fn parse_level(s: &str) -> Result<HalfInt, CmdError> {
    let l: HalfInt = s.parse().map_err(usage)?;
    if l.is_negative() {
        return Err(CmdError::Usage(format!("level {l} must be nonnegative")));
    }
    Ok(l)
}

fn parse_rational(s: &str) -> Result<Rat, CmdError> {
    parse_rat(s).map_err(usage)
}

fn csv_field(s: &str) -> String {
    if s.contains(',') || s.contains('"') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn dispatch(cli: &Cli) -> Result<Rendered, CmdError> {
    match &cli.cmd {
        Cmd::Gram { level, mode, c, h } => cmd_gram(level, *mode, c.as_deref(), h.as_deref()),
        Cmd::Kacdet { level, verify, mode } => cmd_kacdet(level, *verify, *mode),
        Cmd::Series { kind, order, n, m, p, q } => cmd_series(*kind, order, *n, *m, *p, *q),
        Cmd::Classify { c, h, max_level } => cmd_classify(c, h, max_level),
        Cmd::Singular { c, h, level } => cmd_singular(c, h, level),
        Cmd::Discrete { m_max, dedupe, emit_curves } => cmd_discrete(*m_max, *dedupe, *emit_curves),
        Cmd::Coset { j, ell, frenkel, order } => cmd_coset(j.as_deref(), *ell, *frenkel, order),
        Cmd::Census { m, p, q, max_level } => cmd_census(*m, *p, *q, max_level.as_deref()),
        Cmd::VerifyAll { max_level, order, m_max, threads } => {
            cmd_verify_all(max_level, order, *m_max, *threads)
        }
    }
}

fn cmd_gram(
    level: &str,
    mode: Mode,
    c: Option<&str>,
    h: Option<&str>,
) -> Result<Rendered, CmdError> {
    let n = parse_level(level)?;
    let (json, entries_text, basis): (Value, Vec<Vec<String>>, Vec<String>) = match mode {
        Mode::Symbolic => {
            if c.is_some() || h.is_some() {
                return Err(CmdError::Usage("--c/--h only apply to point mode".into()));
            }
            let gm = gram_matrix(&VermaModule::symbolic(), n);
            let text = gm
                .entries
                .iter()
                .map(|row| row.iter().map(|e| e.to_string()).collect())
                .collect();
            let basis = gm.basis.iter().map(|b| b.to_string()).collect();
            (gram_symbolic_to_json(&gm), text, basis)
        }
        Mode::Point => {
            let (Some(c), Some(h)) = (c, h) else {
                return Err(CmdError::Usage("point mode needs --c and --h".into()));
            };
            let module = VermaModule::point(parse_rational(c)?, parse_rational(h)?);
            let gm = gram_matrix(&module, n);
            let text = gm
                .entries
                .iter()
                .map(|row| row.iter().map(|e| e.to_string()).collect())
                .collect();
            let basis = gm.basis.iter().map(|b| b.to_string()).collect();
            (gram_point_to_json(&gm), text, basis)
        }
    };
    let mut plain = format!("level {n}\nbasis: {}\n", basis.join(" | "));
    for row in &entries_text {
        plain.push_str(&format!("[ {} ]\n", row.join(" , ")));
    }
    let mut csv = String::from("i,j,entry\n");
    for (i, row) in entries_text.iter().enumerate() {
        for (j, e) in row.iter().enumerate() {
            csv.push_str(&format!("{i},{j},{}\n", csv_field(e)));
        }
    }
    Ok(Rendered { payload: Output { json, plain, csv }, failed: false })
}

fn cmd_kacdet(level: &str, verify: bool, mode: Option<KacModeArg>) -> Result<Rendered, CmdError> {
    let n = parse_level(level)?;
    let (factors, leading, verified) = if verify {
        let mode = match mode {
            Some(KacModeArg::Symbolic) => KacMode::Symbolic,
            Some(KacModeArg::Pointwise) => KacMode::Pointwise,
            None if n <= HalfInt::from_int(3) => KacMode::Symbolic,
            None => KacMode::Pointwise,
        };
        let f = kac_verify(n, mode).map_err(|e| match e {
            GramKacError::KacMismatch { .. } => CmdError::Verification(e.to_string()),
            other => usage(other),
        })?;
        (f.factors, Some(f.leading), true)
    } else {
        (kac_factors(n), None, false)
    };
    let json = json!({
        "level": n.to_string(),
        "factors": factors.iter().map(|(p, q, e)| json!({"p": p, "q": q, "exponent": e})).collect::<Vec<_>>(),
        "leading": leading.as_ref().map(|a| a.to_string()),
        "verified": verified,
    });
    let factor_text = factors
        .iter()
        .map(|(p, q, e)| format!("phi({p},{q})^{e}"))
        .collect::<Vec<_>>()
        .join(" ");
    let plain = match &leading {
        Some(a) => format!("det_{n} = {a} * {factor_text} (verified)\n"),
        None => format!("det_{n} ~ A * {factor_text} (not verified)\n"),
    };
    let mut csv = String::from("p,q,exponent\n");
    for (p, q, e) in &factors {
        csv.push_str(&format!("{p},{q},{e}\n"));
    }
    if let Some(a) = &leading {
        csv.push_str(&format!("A,,{a}\n"));
    }
    Ok(Rendered { payload: Output { json, plain, csv }, failed: false })
}

fn one_var_output(terms: Vec<(String, String)>, extra: Option<(&str, String)>) -> Output {
    let json_terms: Vec<Value> = terms
        .iter()
        .map(|(e, c)| json!({"exp": e, "coef": c}))
        .collect();
    let json = match &extra {
        Some((k, v)) => json!({*k: v, "terms": json_terms}),
        None => json!({"terms": json_terms}),
    };
    let mut plain = String::new();
    if let Some((k, v)) = &extra {
        plain.push_str(&format!("{k}: {v}\n"));
    }
    let mut csv = String::from("exp,coef\n");
    for (e, c) in &terms {
        plain.push_str(&format!("t^{{{e}}}: {c}\n"));
        csv.push_str(&format!("{},{}\n", csv_field(e), csv_field(c)));
    }
    Output { json, plain, csv }
}

fn cmd_series(
    kind: SeriesKind,
    order: &str,
    n: Option<i64>,
    m: Option<i64>,
    p: Option<i64>,
    q: Option<i64>,
) -> Result<Rendered, CmdError> {
    let order = parse_rational(order)?;
    if order <= Rat::from_integer(0.into()) {
        return Err(CmdError::Usage(format!("order {order} must be positive")));
    }
    let label = |name: &str, v: Option<i64>| {
        v.ok_or_else(|| CmdError::Usage(format!("--{name} is required for this series kind")))
    };
    let payload = match kind {
        SeriesKind::Chi => {
            let s = chi_ns(&order);
            one_var_output(
                s.terms().map(|(e, c)| (e.to_string(), c.to_string())).collect(),
                None,
            )
        }
        SeriesKind::Theta | SeriesKind::ThetaNm => {
            let s = match kind {
                SeriesKind::Theta => theta(&order),
                _ => {
                    let (n, m) = (label("n", n)?, label("m", m)?);
                    if m < 1 {
                        return Err(CmdError::Usage("theta-nm needs m >= 1".into()));
                    }
                    theta_nm(n, m, &order)
                }
            };
            let terms: Vec<Value> = s
                .terms()
                .map(|((t, z), c)| {
                    json!({"texp": t.to_string(), "zexp": z.to_string(), "coef": c.to_string()})
                })
                .collect();
            let mut plain = String::new();
            let mut csv = String::from("texp,zexp,coef\n");
            for ((t, z), c) in s.terms() {
                plain.push_str(&format!("t^{{{t}}} z^{{{z}}}: {c}\n"));
                csv.push_str(&format!("{t},{z},{c}\n"));
            }
            Output { json: json!({"terms": terms}), plain, csv }
        }
        SeriesKind::Gamma => {
            let (m, p, q) = (label("m", m)?, label("p", p)?, label("q", q)?);
            if !nsverma::gramkac::valid_discrete_label(m, p, q) {
                return Err(CmdError::Usage(format!(
                    "({m},{p},{q}) is not a discrete-series label"
                )));
            }
            let s = gamma_sum_normalized(m, p, q, &order);
            one_var_output(
                s.terms().map(|(e, c)| (e.to_string(), c.to_string())).collect(),
                None,
            )
        }
        SeriesKind::Mult => {
            let (m, p, q) = (label("m", m)?, label("p", p)?, label("q", q)?);
            let ch = mult_character(m, p, q, &order).map_err(usage)?;
            let terms = ch
                .normalized
                .terms()
                .map(|(e, c)| (e.to_string(), c.to_string()))
                .collect();
            one_var_output(terms, Some(("prefactor", ch.prefactor_exponent.to_string())))
        }
    };
    Ok(Rendered { payload, failed: false })
}

fn cmd_classify(c: &str, h: &str, max_level: &str) -> Result<Rendered, CmdError> {
    let c = parse_rational(c)?;
    let h = parse_rational(h)?;
    let max_level = parse_level(max_level)?;
    if max_level < HalfInt::HALF {
        return Err(CmdError::Usage("max-level must be at least 1/2".into()));
    }
    let verdict = classify(&c, &h, max_level);
    let json = classification_to_json(&c, &h, &verdict);
    let plain = match &verdict {
        nsverma::fqs::Classification::UnitaryContinuum => "unitary-continuum\n".to_string(),
        nsverma::fqs::Classification::UnitaryDiscrete(pt) => {
            format!("unitary-discrete m={} p={} q={}\n", pt.m, pt.p, pt.q)
        }
        nsverma::fqs::Classification::Ghost { level, witness, norm } => {
            format!("ghost at level {level}: norm {norm}, witness {witness}\n")
        }
        nsverma::fqs::Classification::UndeterminedUpTo(l) => {
            format!("undetermined up to level {l}\n")
        }
    };
    let mut csv = String::from("key,value\n");
    if let Value::Object(map) = &json {
        for (k, v) in map {
            let vs = match v {
                Value::String(s) => s.clone(),
                other => other.to_string(),
            };
            csv.push_str(&format!("{k},{}\n", csv_field(&vs)));
        }
    }
    Ok(Rendered { payload: Output { json, plain, csv }, failed: false })
}

fn cmd_singular(c: &str, h: &str, level: &str) -> Result<Rendered, CmdError> {
    let c = parse_rational(c)?;
    let h = parse_rational(h)?;
    let n = parse_level(level)?;
    let module = VermaModule::point(c.clone(), h.clone());
    let gm = gram_matrix(&module, n);
    let (_, kernel, _) = rank_kernel_signature(&gm);
    let items: Vec<Value> = kernel
        .iter()
        .map(|v| {
            let singular = module.is_singular(v).unwrap_or(false);
            json!({"vector": vector_to_json(v), "singular": singular})
        })
        .collect();
    let json = json!({
        "c": c.to_string(),
        "h": h.to_string(),
        "level": n.to_string(),
        "kernel": items,
    });
    let mut plain = format!("kernel dimension {} at level {n}\n", kernel.len());
    let mut csv = String::from("vector,singular\n");
    for v in &kernel {
        let s = module.is_singular(v).unwrap_or(false);
        plain.push_str(&format!("{} (singular: {s})\n", v));
        csv.push_str(&format!("{},{s}\n", csv_field(&v.to_string())));
    }
    Ok(Rendered { payload: Output { json, plain, csv }, failed: false })
}

fn cmd_discrete(m_max: i64, dedupe: bool, emit_curves: bool) -> Result<Rendered, CmdError> {
    if m_max < 2 {
        return Err(CmdError::Usage("m-max must be at least 2".into()));
    }
    let points = discrete_series(m_max, dedupe);
    let json = json!({
        "points": points.iter().map(|pt| pt.to_json()).collect::<Vec<_>>(),
    });
    let mut plain = String::new();
    for pt in &points {
        plain.push_str(&format!(
            "m={} p={} q={} c={} h={}\n",
            pt.m, pt.p, pt.q, pt.c, pt.h
        ));
    }
    let csv = if emit_curves {
        let mut s = String::from("m,c,h\n");
        for pt in &points {
            s.push_str(&format!("{},{},{}\n", pt.m, pt.c, pt.h));
        }
        s
    } else {
        let mut s = String::from("m,p,q,pprime,qprime,c,h\n");
        for pt in &points {
            s.push_str(&format!(
                "{},{},{},{},{},{},{}\n",
                pt.m, pt.p, pt.q, pt.p_prime, pt.q_prime, pt.c, pt.h
            ));
        }
        s
    };
    Ok(Rendered { payload: Output { json, plain, csv }, failed: false })
}

fn cmd_coset(
    j: Option<&str>,
    ell: Option<i64>,
    frenkel: bool,
    order: &str,
) -> Result<Rendered, CmdError> {
    let order = parse_rational(order)?;
    let (name, holds, detail) = if frenkel {
        if j.is_some() || ell.is_some() {
            return Err(CmdError::Usage("--frenkel takes no --j/--ell".into()));
        }
        let ok = nsverma::qseries::frenkel_check(&order);
        ("frenkel".to_string(), ok, "F_NS = L(0,2) + L(1,2)".to_string())
    } else {
        let (Some(j), Some(ell)) = (j, ell) else {
            return Err(CmdError::Usage("coset needs --j and --ell (or --frenkel)".into()));
        };
        let j: HalfInt = j.parse().map_err(usage)?;
        if j.is_negative() || ell < 0 {
            return Err(CmdError::Usage("coset needs j >= 0 and ell >= 0".into()));
        }
        let ok = nsverma::qseries::coset_identity_check(j, ell, &order).map_err(usage)?;
        (
            format!("coset j={j} ell={ell}"),
            ok,
            "tensor decomposition, denominator-free".to_string(),
        )
    };
    let json = json!({
        "identity": name,
        "order": order.to_string(),
        "holds": holds,
        "detail": detail,
    });
    let plain = format!("{}: {name} to order {order}\n", if holds { "PASS" } else { "FAIL" });
    let csv = format!("identity,order,holds\n{},{},{holds}\n", csv_field(&name), order);
    Ok(Rendered { payload: Output { json, plain, csv }, failed: !holds })
}

fn cmd_census(m: i64, p: i64, q: i64, max_level: Option<&str>) -> Result<Rendered, CmdError> {
    let bound = {
        if !nsverma::gramkac::valid_discrete_label(m, p, q) {
            return Err(CmdError::Usage(format!(
                "({m},{p},{q}) is not a discrete-series label"
            )));
        }
        let (pp, qp) = (m - p, m + 2 - q);
        HalfInt::from_twice((p * q).max(pp * qp))
    };
    let max_level = match max_level {
        Some(s) => parse_level(s)?,
        None => bound,
    };
    let dims = kernel_census(m, p, q, max_level).map_err(usage)?;
    let expected = kernel_census_expected(m, p, q, max_level).map_err(usage)?;
    let matches = dims == expected;
    let json = json!({
        "m": m, "p": p, "q": q,
        "c": nsverma::gramkac::c_from_m_int(m).to_string(),
        "h": nsverma::gramkac::h_from_m_int(m, p, q).to_string(),
        "dims": dims.iter().map(|(l, d)| json!({"level": l.to_string(), "dim": d})).collect::<Vec<_>>(),
        "matches-two-singular-structure": matches,
    });
    let mut plain = String::new();
    let mut csv = String::from("level,dim\n");
    for (l, d) in &dims {
        plain.push_str(&format!("dim K_{{{l}}} = {d}\n"));
        csv.push_str(&format!("{l},{d}\n"));
    }
    plain.push_str(&format!(
        "two-singular-vector structure: {}\n",
        if matches { "matches" } else { "MISMATCH" }
    ));
    Ok(Rendered { payload: Output { json, plain, csv }, failed: !matches })
}

fn cmd_verify_all(
    max_level: &str,
    order: &str,
    m_max: i64,
    threads: usize,
) -> Result<Rendered, CmdError> {
    let opts = VerifyOptions {
        max_level: parse_level(max_level)?,
        order: {
            let o = parse_rational(order)?;
            if o <= Rat::from_integer(0.into()) {
                return Err(CmdError::Usage("order must be positive".into()));
            }
            o
        },
        m_max: if m_max >= 2 {
            m_max
        } else {
            return Err(CmdError::Usage("m-max must be at least 2".into()));
        },
        threads: threads.max(1),
    };
    let items = verify_all(&opts);
    let ok = items.iter().all(|i| i.pass);
    let json = json!({
        "items": items.iter().map(|i| json!({
            "name": i.name,
            "status": if i.pass { "pass" } else { "fail" },
            "detail": i.detail,
        })).collect::<Vec<_>>(),
        "ok": ok,
    });
    let mut plain = String::new();
    let mut csv = String::from("item,status,detail\n");
    for i in &items {
        plain.push_str(&format!(
            "{} {} — {}\n",
            if i.pass { "PASS" } else { "FAIL" },
            i.name,
            i.detail
        ));
        csv.push_str(&format!(
            "{},{},{}\n",
            csv_field(&i.name),
            if i.pass { "pass" } else { "fail" },
            csv_field(&i.detail)
        ));
    }
    plain.push_str(if ok { "all items passed\n" } else { "FAILURES present\n" });
    Ok(Rendered { payload: Output { json, plain, csv }, failed: !ok })
}
