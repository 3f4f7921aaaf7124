//! Command-line frontend. [`run`] is the testable entry point; [`main`] binds it to the
//! process streams.

pub mod report;
pub mod verify;

use std::fmt::Write as _;
use std::io::Write;

use clap::error::ErrorKind;
use clap::{Args, CommandFactory, Parser, Subcommand};
use num_bigint::BigInt;
use serde_json::json;

use crate::cohomology::{check_presentation_invariants, poincare_polynomial, presentation, StiefelParams};
use crate::error::{Error, Result};
use crate::geometry::{
    best_immersion_bound, best_span_bound, check_immersion_theorem, check_span_theorem,
    cp_complement_min_rank, immersion_certificate, lens_rank_bound, lens_sq2_criterion,
    normal_pontrjagin, span_certificate, tangent_pontrjagin, ClaimCheck, ImmersionCertificate,
    LensParams, RankReason, SpanCertificate,
};
use crate::ring::Modulus;
use crate::weights::{complement_chern, h_table, total_chern, WeightTuple};

use report::{bigints, num, nums, series, ClaimCheckRecord, Report};
use verify::{run_suites, VerifyOptions};

#[derive(Debug, Parser)]
#[command(name = "pstiefel", version, about = "Exact invariants of generalized projective Stiefel manifolds")]
struct Cli {
    /// Print the JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone)]
struct Weights(Vec<BigInt>);

fn parse_weights(s: &str) -> std::result::Result<Weights, String> {
    s.split(',')
        .map(|t| t.trim().parse::<BigInt>().map_err(|_| format!("invalid weight {t:?}")))
        .collect::<std::result::Result<Vec<_>, _>>()
        .map(Weights)
}

fn parse_bigint(s: &str) -> std::result::Result<BigInt, String> {
    s.trim().parse().map_err(|_| format!("invalid integer {s:?}"))
}

#[derive(Debug, Args)]
struct WeightsArg {
    /// Comma-separated signed integers, e.g. `1,-2`.
    #[arg(long, value_parser = parse_weights, allow_hyphen_values = true)]
    weights: Weights,
}

impl WeightsArg {
    fn tuple(&self) -> Result<WeightTuple> {
        WeightTuple::validate(self.weights.0.clone())
    }
}

#[derive(Debug, Args)]
struct SweepArgs {
    #[arg(long)]
    n: usize,
    #[command(flatten)]
    weights: WeightsArg,
    /// Certify at this odd prime only.
    #[arg(long, conflicts_with = "prime_bound")]
    prime: Option<u64>,
    /// Sweep all odd primes up to this bound (default 4n).
    #[arg(long)]
    prime_bound: Option<u64>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Mod-p cohomology presentation of P_l W_{n,k}.
    Cohomology {
        #[arg(long)]
        n: usize,
        /// Defaults to the number of weights.
        #[arg(long)]
        k: Option<usize>,
        #[command(flatten)]
        weights: WeightsArg,
        #[arg(long)]
        prime: u64,
    },
    /// Total Chern class of the sum of line bundles and of its complement.
    Chern {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        weights: WeightsArg,
        /// Number of coefficients kept (default n + 1).
        #[arg(long)]
        truncation: Option<usize>,
    },
    /// Pontrjagin classes of the tangent and normal bundles of P_l W_{n,2}.
    Pontrjagin {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        weights: WeightsArg,
        /// Coefficient ring Z/m; omitted or 0 means Z.
        #[arg(long, value_parser = parse_bigint)]
        modulus: Option<BigInt>,
        /// Number of coefficients kept (default n).
        #[arg(long)]
        truncation: Option<usize>,
    },
    /// Upper bound on the span of P_l W_{n,2}.
    Span(SweepArgs),
    /// Euclidean dimension in which P_l W_{n,2} does not immerse.
    Immersion(SweepArgs),
    /// Rank of a complement to a sum of line bundles over CP^n.
    Complement {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        weights: WeightsArg,
    },
    /// Rank of a complement over the lens space L^d(m).
    Lens {
        #[arg(long)]
        d: u32,
        #[arg(long, value_parser = parse_bigint)]
        m: BigInt,
        #[command(flatten)]
        weights: WeightsArg,
    },
    /// Compare the closed-form span and immersion statements with direct computation.
    CheckClaims {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        weights: WeightsArg,
    },
    /// Run the oracle suites.
    Verify {
        /// Smaller grid (n <= 12).
        #[arg(long)]
        quick: bool,
    },
}

/// A finished command: the JSON report, its text rendering and the exit code.
struct Outcome {
    report: Report,
    text: String,
    code: i32,
}

impl Outcome {
    fn ok(report: Report, text: String) -> Self {
        Outcome { report, text, code: 0 }
    }
}

pub fn main() -> i32 {
    let argv: Vec<String> = std::env::args().collect();
    run(&argv, &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}

/// Parses `argv` (program name first), runs the command and returns the exit code:
/// 0 on success, 1 on invalid input, 2 on an internal invariant violation.
pub fn run<S: AsRef<str>>(argv: &[S], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    run_with(argv, out, err, verify::VerifyOptions::new)
}

/// As [`run`], with the options for `verify` supplied by the caller.
pub fn run_with<S: AsRef<str>>(
    argv: &[S],
    out: &mut dyn Write,
    err: &mut dyn Write,
    verify_options: impl Fn(bool) -> VerifyOptions,
) -> i32 {
    let cli = match Cli::try_parse_from(argv.iter().map(AsRef::as_ref)) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    0
                }
                _ => {
                    let rendered = e.render().to_string();
                    let _ = write!(err, "{rendered}");
                    if !rendered.contains("Usage:") {
                        let _ = writeln!(err, "\n{}", Cli::command().render_usage());
                    }
                    1
                }
            };
        }
    };
    let outcome = match dispatch(&cli.command, &verify_options) {
        Ok(o) => o,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return if e.is_internal() { 2 } else { 1 };
        }
    };
    for d in &outcome.report.diagnostics {
        let _ = writeln!(err, "note: {d}");
    }
    let written = if cli.json {
        serde_json::to_string_pretty(&outcome.report)
            .map_err(std::io::Error::other)
            .and_then(|s| writeln!(out, "{s}"))
    } else {
        write!(out, "{}", outcome.text)
    };
    if written.is_err() {
        return 2;
    }
    outcome.code
}

fn dispatch(cmd: &Command, verify_options: &dyn Fn(bool) -> VerifyOptions) -> Result<Outcome> {
    match cmd {
        Command::Cohomology { n, k, weights, prime } => cohomology(*n, *k, weights, *prime),
        Command::Chern { n, weights, truncation } => chern(*n, weights, truncation.unwrap_or(n + 1)),
        Command::Pontrjagin {
            n,
            weights,
            modulus,
            truncation,
        } => pontrjagin(*n, weights, modulus.as_ref(), truncation.unwrap_or(*n)),
        Command::Span(args) => span(args),
        Command::Immersion(args) => immersion(args),
        Command::Complement { n, weights } => complement(*n, weights),
        Command::Lens { d, m, weights } => lens(*d, m, weights),
        Command::CheckClaims { n, weights } => check_claims(*n, weights),
        Command::Verify { quick } => Ok(run_verify(&verify_options(*quick))),
    }
}

fn base_report(command: &str, n_key: &str, n: impl ToString, ell: &WeightTuple) -> Report {
    let mut r = Report::new(command);
    r.param(n_key, num(n)).param("weights", bigints(ell.weights()));
    r
}

fn cohomology(n: usize, k: Option<usize>, weights: &WeightsArg, p: u64) -> Result<Outcome> {
    let ell = weights.tuple()?;
    let k = k.unwrap_or(ell.len());
    if k != ell.len() {
        return Err(Error::InvalidParams(format!("k = {k} but {} weights given", ell.len())));
    }
    let params = StiefelParams::new(n, k, ell.clone())?;
    let pres = presentation(&params, p)?;
    let poly = poincare_polynomial(&pres);
    let inv = check_presentation_invariants(&pres, &params);
    if !inv.passed {
        return Err(Error::InvariantViolation(inv.failures.join("; ")));
    }

    let mut r = base_report("cohomology", "n", n, &ell);
    r.param("k", num(k)).param("prime", num(p));
    r.result = json!({
        "N": num(pres.height),
        "relation": format!("x^{}", pres.height),
        "poly_generator_degree": num(pres.poly_gen_degree),
        "exterior_generators": pres.exterior_gens.iter().map(|j| format!("y_{j}")).collect::<Vec<_>>(),
        "exterior_degrees": nums(pres.exterior_gen_degrees()),
        "square_relations": pres.mod2_square_relations,
        "presentation": pres.to_string(),
        "poincare_polynomial": bigints(&poly.0),
        "dimension": num(params.dimension()),
        "total_rank": num(&inv.total_rank),
    });

    let mut text = String::new();
    let _ = writeln!(text, "H*(P_l W_{{{n},{k}}}; Z/{p}) with l = {ell}");
    let _ = writeln!(text, "  {pres}");
    let _ = writeln!(text, "  N = {}", pres.height);
    let _ = writeln!(text, "  Poincaré polynomial: {poly}");
    let _ = writeln!(
        text,
        "  top degree {} = dim, total rank {}, palindromic",
        inv.top_degree, inv.total_rank
    );
    Ok(Outcome::ok(r, text))
}

fn chern(n: usize, weights: &WeightsArg, truncation: usize) -> Result<Outcome> {
    let ell = weights.tuple()?;
    let total = total_chern(&ell, truncation)?;
    let comp = complement_chern(&ell, truncation)?;
    let hs = h_table(&ell, truncation.saturating_sub(1));
    let mut r = base_report("chern", "n", n, &ell);
    r.param("truncation", num(truncation));
    r.result = json!({
        "total": series(&total),
        "complement": series(&comp),
        "h": bigints(&hs),
    });
    let text = format!("c(sum)        = {total}\nc(complement) = {comp}\n");
    Ok(Outcome::ok(r, text))
}

fn pontrjagin(n: usize, weights: &WeightsArg, modulus: Option<&BigInt>, truncation: usize) -> Result<Outcome> {
    let ell = weights.tuple()?;
    StiefelParams::new(n, 2, ell.clone())?;
    let modulus = match modulus {
        Some(m) => Modulus::new(m.clone())?,
        None => Modulus::integers(),
    };
    let tau = tangent_pontrjagin(n, &ell, &modulus, truncation)?;
    let nu = normal_pontrjagin(n, &ell, &modulus, truncation)?;
    let mut r = base_report("pontrjagin", "n", n, &ell);
    r.param("modulus", num(modulus.value())).param("truncation", num(truncation));
    r.result = json!({ "tangent": series(&tau), "normal": series(&nu) });
    let text = format!("over {modulus}\np(tau) = {tau}\np(nu)  = {nu}\n");
    Ok(Outcome::ok(r, text))
}

fn sweep_report(command: &str, args: &SweepArgs, ell: &WeightTuple) -> Report {
    let mut r = base_report(command, "n", args.n, ell);
    match args.prime {
        Some(p) => r.param("prime", num(p)),
        None => r.param("prime_bound", num(prime_bound(args))),
    };
    r
}

fn prime_bound(args: &SweepArgs) -> u64 {
    args.prime_bound.unwrap_or(4 * args.n as u64)
}

fn span_line(c: &SpanCertificate) -> String {
    format!("span ≤ {}, certificate p={} i={} witness {}", c.span_bound, c.prime, c.index, c.witness)
}

fn immersion_line(c: &ImmersionCertificate) -> String {
    format!(
        "no immersion in R^{} (claimed R^{}), certificate p={} j={} witness {}",
        c.certified_non_immersion_dim, c.claimed_dim, c.prime, c.index, c.witness
    )
}

fn span(args: &SweepArgs) -> Result<Outcome> {
    let ell = args.weights.tuple()?;
    let mut r = sweep_report("span", args, &ell);
    let certs = match args.prime {
        Some(p) => span_certificate(args.n, &ell, p)?.into_iter().collect(),
        None => best_span_bound(args.n, &ell, prime_bound(args))?.certificates,
    };
    let best = certs.iter().reduce(|b, c| if c.span_bound < b.span_bound { c } else { b });
    r.certificates = certs.iter().map(Into::into).collect();
    r.result = json!({
        "dimension": num(4 * args.n - 5),
        "span_bound": best.map(|c| num(c.span_bound)),
        "best_prime": best.map(|c| num(c.prime)),
    });
    let mut text = match best {
        Some(c) => span_line(c),
        None => "no span certificate".to_string(),
    };
    text.push('\n');
    if args.prime.is_none() {
        for c in &certs {
            let _ = writeln!(text, "  {}", span_line(c));
        }
    }
    Ok(Outcome::ok(r, text))
}

fn immersion(args: &SweepArgs) -> Result<Outcome> {
    let ell = args.weights.tuple()?;
    let mut r = sweep_report("immersion", args, &ell);
    let certs = match args.prime {
        Some(p) => immersion_certificate(args.n, &ell, p)?.into_iter().collect(),
        None => best_immersion_bound(args.n, &ell, prime_bound(args))?.certificates,
    };
    let best = certs.iter().reduce(|b, c| {
        if c.certified_non_immersion_dim > b.certified_non_immersion_dim {
            c
        } else {
            b
        }
    });
    r.certificates = certs.iter().map(Into::into).collect();
    r.result = json!({
        "dimension": num(4 * args.n - 5),
        "non_immersion_dim": best.map(|c| num(c.certified_non_immersion_dim)),
        "claimed_dim": best.map(|c| num(c.claimed_dim)),
        "best_prime": best.map(|c| num(c.prime)),
    });
    if best.is_some() {
        r.diagnostics.push(
            "the closed-form dimension is one more than the vanishing of the dual class certifies; bound is the certified value".into(),
        );
    }
    let mut text = match best {
        Some(c) => immersion_line(c),
        None => "no immersion certificate".to_string(),
    };
    text.push('\n');
    if args.prime.is_none() {
        for c in &certs {
            let _ = writeln!(text, "  {}", immersion_line(c));
        }
    }
    Ok(Outcome::ok(r, text))
}

fn reason_json(reason: &RankReason) -> serde_json::Value {
    match reason {
        RankReason::ChernNonzero { index, value } => {
            json!({ "tag": reason.tag(), "index": num(index), "value": num(value) })
        }
        RankReason::PhiModM { phi, residue } => {
            json!({ "tag": reason.tag(), "phi": num(phi), "residue": num(residue) })
        }
        _ => json!({ "tag": reason.tag() }),
    }
}

fn reason_text(reason: &RankReason) -> String {
    match reason {
        RankReason::ChernNonzero { index, value } => format!("c_{index} = {value} x^{index} is nonzero"),
        RankReason::TopClassVanishes => "h_n = 0".into(),
        RankReason::PhiModM { phi, residue } => format!("phi_d = {phi} ≡ {residue}, nonzero mod m"),
        RankReason::Sq2Criterion => "Sq^2 criterion".into(),
        RankReason::None => "no obstruction".into(),
    }
}

fn complement(n: usize, weights: &WeightsArg) -> Result<Outcome> {
    let ell = weights.tuple()?;
    let rep = cp_complement_min_rank(n, &ell)?;
    let mut r = base_report("complement", "n", n, &ell);
    r.result = json!({
        "lower_bound": num(rep.lower_bound),
        "achievable": rep.achievable.map(num),
        "reason": reason_json(&rep.reason),
        "achievable_reason": rep.achievable_reason.as_ref().map(reason_json),
    });
    let mut text = format!("rank ≥ {} ({})", rep.lower_bound, reason_text(&rep.reason));
    if let Some(a) = rep.achievable {
        let _ = write!(text, ", achievable {a}");
        if let Some(why) = &rep.achievable_reason {
            let _ = write!(text, " ({})", reason_text(why));
        }
    }
    text.push('\n');
    Ok(Outcome::ok(r, text))
}

fn lens(d: u32, m: &BigInt, weights: &WeightsArg) -> Result<Outcome> {
    let ell = weights.tuple()?;
    let (l1, l2) = ell.pair()?;
    let params = LensParams::new(d, m.clone(), l1.clone(), l2.clone())?;
    let rep = lens_rank_bound(&params);
    let crit = lens_sq2_criterion(&params);
    let mut r = base_report("lens", "d", d, &ell);
    r.param("m", num(m));
    r.result = json!({
        "lower_bound": num(rep.lower_bound),
        "achievable": rep.achievable.map(num),
        "reason": reason_json(&rep.reason),
        "phi": num(&crit.phi),
        "sq2_criterion": {
            "satisfied": crit.satisfied,
            "hypotheses": crit.hypotheses.iter().map(|(name, holds)| json!({ "name": name, "holds": holds })).collect::<Vec<_>>(),
        },
    });
    r.diagnostics.extend(crit.diagnostic.clone());
    let mut text = format!("rank ≥ {} ({})", rep.lower_bound, reason_text(&rep.reason));
    if let Some(a) = rep.achievable {
        let _ = write!(text, ", achievable {a}");
    }
    let _ = writeln!(text);
    let _ = writeln!(text, "Sq^2 criterion: {}", if crit.satisfied { "holds" } else { "fails" });
    for (name, holds) in &crit.hypotheses {
        let _ = writeln!(text, "  [{}] {name}", if *holds { "x" } else { " " });
    }
    Ok(Outcome::ok(r, text))
}

fn claim_lines(text: &mut String, check: &ClaimCheck) {
    for e in &check.entries {
        let _ = write!(
            text,
            "{} p={} index {} bound {}: {}",
            e.claim.as_str(),
            e.prime,
            e.index,
            e.claimed_bound,
            e.verdict.as_str()
        );
        if let Some(ev) = &e.evaluation {
            let _ = write!(text, " (coefficient of x^{} is {} mod {})", 2 * ev.index, ev.coefficient, ev.prime);
        }
        text.push('\n');
    }
}

fn check_claims(n: usize, weights: &WeightsArg) -> Result<Outcome> {
    let ell = weights.tuple()?;
    let spans = check_span_theorem(n, &ell)?;
    let imms = check_immersion_theorem(n, &ell)?;
    let mut r = base_report("check-claims", "n", n, &ell);
    r.claim_checks = spans.entries.iter().chain(&imms.entries).map(ClaimCheckRecord::from).collect();
    r.diagnostics = spans.notes.iter().chain(&imms.notes).cloned().collect();
    r.result = json!({
        "entries": num(r.claim_checks.len()),
        "discrepant": spans.has_discrepancy() || imms.has_discrepancy(),
    });
    let mut text = String::new();
    claim_lines(&mut text, &spans);
    claim_lines(&mut text, &imms);
    if r.claim_checks.is_empty() {
        text.push_str("no applicable claims\n");
    }
    Ok(Outcome::ok(r, text))
}

fn run_verify(opts: &VerifyOptions) -> Outcome {
    let suites = run_suites(opts);
    let mut r = Report::new("verify");
    r.param("quick", opts.quick);
    let mut text = String::new();
    for s in &suites {
        let status = if s.passed() { "pass" } else { "FAIL" };
        let _ = writeln!(text, "{:<24} {:>8} checks  {status}", s.name, s.checks);
    }
    let failure = suites.iter().find_map(|s| s.failure.as_ref().map(|f| (s.name, f)));
    if let Some((name, f)) = failure {
        r.diagnostics.push(format!("counterexample in {name}: {f}"));
    }
    r.result = json!({
        "passed": failure.is_none(),
        "suites": suites.iter().map(|s| json!({
            "name": s.name,
            "checks": num(s.checks),
            "passed": s.passed(),
            "counterexample": s.failure,
        })).collect::<Vec<_>>(),
    });
    Outcome {
        report: r,
        text,
        code: if failure.is_some() { 2 } else { 0 },
    }
}
