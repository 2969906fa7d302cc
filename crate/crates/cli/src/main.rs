use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use fixord::embeddings::{self, EmbeddingReport};
use fixord::fixpoint::{
    check_conditions, check_hom, fragment_to_terms, prefix_of_terms, termination_to_fp, terms_to_fragment, unique_hom,
    System, TerminationPrefix,
};
use fixord::goodstein::{classic_step, weak_step, GTerm, WTerm};
use fixord::notations::{nf, Low, Nf, Ot, Phi, P};
use fixord::pathologies;
use fixord::predilator::{inverse_prefix, Rational, TreeShape};
use fixord::verify::{self, CheckResult};
use fixord::{Error, Predilator};
use num_bigint::BigUint;
use serde_json::{json, Value};
use std::cmp::Ordering;
use std::collections::HashMap;
use std::io::Write;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

#[derive(Parser)]
#[command(name = "fixord", version, about = "Goodstein sequences, fixed points of predilators and ordinal notations")]
struct Cli {
    /// Output as plain text or as one JSON record per line.
    #[arg(long, value_enum, default_value = "text", global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Records,
}

#[derive(Args, Clone, Copy)]
struct SizeArg {
    /// Size bound for enumerations.
    #[arg(long, env = "FIXORD_SIZE", default_value_t = 4)]
    size: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Goodstein-type sequences.
    #[command(subcommand)]
    Goodstein(GoodsteinCmd),
    /// Ordinal notation systems.
    #[command(subcommand)]
    Notation(NotationCmd),
    /// Term systems of 1-fixed points.
    #[command(subcommand)]
    Fixpoint(FixpointCmd),
    /// Embeddings between fixed points and notation systems.
    #[command(subcommand)]
    Embed(EmbedCmd),
    /// Checks on points that are not well founded or not unique.
    #[command(subcommand)]
    Patho(PathoCmd),
    /// Runs the check suites.
    Verify {
        /// Run every suite.
        #[arg(long)]
        all: bool,
        /// Run a single suite: sequences, linearity, fixpoints, embeddings or pathologies.
        #[arg(long, conflicts_with = "all")]
        suite: Option<String>,
        #[command(flatten)]
        size: SizeArg,
    },
}

#[derive(Subcommand)]
enum GoodsteinCmd {
    /// Stages of the classic or weak sequence.
    Run {
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        steps: usize,
        #[arg(long)]
        weak: bool,
    },
    /// Stages of the increasing sequence of least upper values in D(0), D(1), ….
    Inverse {
        #[arg(long)]
        predilator: String,
        #[arg(long)]
        stages: usize,
    },
}

#[derive(Subcommand)]
enum NotationCmd {
    /// Compares two terms: less, equal or greater.
    Cmp {
        /// ot, nf, phi, p or psi:<predilator>.
        #[arg(long)]
        system: String,
        a: String,
        b: String,
    },
    /// Normal form of an OT(ϑ) term.
    Normalize { a: String },
    /// All terms up to the size bound, one per line in ascending order.
    Enumerate {
        #[arg(long)]
        system: String,
        #[command(flatten)]
        size: SizeArg,
    },
}

#[derive(Subcommand)]
enum FixpointCmd {
    /// Terms of ψ₁(D) up to the size bound in ascending order.
    Enumerate {
        #[arg(long)]
        predilator: String,
        #[command(flatten)]
        size: SizeArg,
    },
    /// Checks the termination conditions on the canonical prefix and its round trip through ψ₁(D).
    Check {
        #[arg(long)]
        predilator: String,
        /// Length of the prefix.
        #[arg(long, default_value_t = 12)]
        stages: usize,
        #[command(flatten)]
        size: SizeArg,
    },
    /// The unique homomorphism from the enumerated terms of ψ₁(A) into ψ₁(B).
    Hom {
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        #[command(flatten)]
        size: SizeArg,
    },
}

#[derive(Subcommand)]
enum EmbedCmd {
    /// Applies a map to one term.
    Run {
        #[arg(long)]
        map: String,
        term: String,
    },
    /// Strict monotonicity of a map, or of every map with `--map all`.
    Verify {
        #[arg(long)]
        map: String,
        #[command(flatten)]
        size: SizeArg,
    },
    /// Both directions and both round trips of an equimorphism.
    Equimorphism {
        #[arg(long)]
        pair: String,
        #[command(flatten)]
        size: SizeArg,
    },
}

#[derive(Subcommand)]
enum PathoCmd {
    /// The fixed point of const-ℤ on a window.
    ZCheck {
        /// Window as `a,b`.
        #[arg(long, allow_hyphen_values = true)]
        window: String,
        /// Length of the descent extracted from fuel exhaustion.
        #[arg(long, default_value_t = 10)]
        descent: usize,
    },
    /// The fixed point built from a finite tree file.
    Tree {
        #[arg(long)]
        file: String,
        #[command(flatten)]
        size: SizeArg,
    },
    /// Every term of ψ₁(bump:D) has a successor.
    Successor {
        #[arg(long)]
        predilator: String,
        #[command(flatten)]
        size: SizeArg,
    },
    /// Density and unboundedness of ℚ ∖ [r, r+1].
    Dense {
        /// r as `p/q` or an integer.
        #[arg(long, allow_hyphen_values = true)]
        r: String,
        /// Largest denominator of the sample.
        #[arg(long, default_value_t = 6)]
        den: i64,
    },
}

/// One output line with its structured record.
struct Record {
    text: String,
    data: Value,
}

struct Outcome {
    records: Vec<Record>,
    violations: usize,
}

impl Outcome {
    fn ok(records: Vec<Record>) -> Outcome {
        Outcome { records, violations: 0 }
    }
}

fn rec(text: impl Into<String>, data: Value) -> Record {
    Record { text: text.into(), data }
}

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                ErrorKind::InvalidSubcommand => 3,
                _ => 2,
            });
        }
    };
    let command = command_name(&cli.command);
    match dispatch(cli.command) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            for r in &out.records {
                let line = match cli.format {
                    Format::Text => r.text.clone(),
                    Format::Records => {
                        let mut data = r.data.clone();
                        if let Value::Object(m) = &mut data {
                            m.insert("command".into(), json!(command));
                        }
                        data.to_string()
                    }
                };
                // a closed pipe ends output early without an error
                if writeln!(stdout, "{line}").is_err() {
                    break;
                }
            }
            if out.violations > 0 {
                eprintln!("{} violation(s)", out.violations);
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::Parse(_) => 2,
                Error::Violation(_) => 1,
                _ => 4,
            })
        }
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Goodstein(GoodsteinCmd::Run { .. }) => "goodstein run",
        Command::Goodstein(GoodsteinCmd::Inverse { .. }) => "goodstein inverse",
        Command::Notation(NotationCmd::Cmp { .. }) => "notation cmp",
        Command::Notation(NotationCmd::Normalize { .. }) => "notation normalize",
        Command::Notation(NotationCmd::Enumerate { .. }) => "notation enumerate",
        Command::Fixpoint(FixpointCmd::Enumerate { .. }) => "fixpoint enumerate",
        Command::Fixpoint(FixpointCmd::Check { .. }) => "fixpoint check",
        Command::Fixpoint(FixpointCmd::Hom { .. }) => "fixpoint hom",
        Command::Embed(EmbedCmd::Run { .. }) => "embed run",
        Command::Embed(EmbedCmd::Verify { .. }) => "embed verify",
        Command::Embed(EmbedCmd::Equimorphism { .. }) => "embed equimorphism",
        Command::Patho(PathoCmd::ZCheck { .. }) => "patho z-check",
        Command::Patho(PathoCmd::Tree { .. }) => "patho tree",
        Command::Patho(PathoCmd::Successor { .. }) => "patho successor",
        Command::Patho(PathoCmd::Dense { .. }) => "patho dense",
        Command::Verify { .. } => "verify",
    }
}

fn dispatch(c: Command) -> fixord::Result<Outcome> {
    match c {
        Command::Goodstein(g) => goodstein(g),
        Command::Notation(n) => notation(n),
        Command::Fixpoint(f) => fixpoint(f),
        Command::Embed(e) => embed(e),
        Command::Patho(p) => patho(p),
        Command::Verify { all, suite, size } => run_verify(all, suite, size.size),
    }
}

fn goodstein(c: GoodsteinCmd) -> fixord::Result<Outcome> {
    match c {
        GoodsteinCmd::Run { seed, steps, weak } => {
            let mut records = Vec::new();
            let mut value = BigUint::from(seed);
            let mut lifted: Option<BigUint> = None;
            for stage in 0..=steps {
                let base = stage as u64 + 2;
                let term = if weak {
                    WTerm::encode(&value, base).notation(base)
                } else {
                    GTerm::encode(&value, base).notation(base)
                };
                let mut data = json!({
                    "stage": stage, "base": base, "value": value.to_string(), "term": term,
                });
                let mut text = format!("stage {stage} base {base}: {value} = {term}");
                if let Some(l) = &lifted {
                    data["lifted"] = json!(l.to_string());
                    text = format!("stage {stage} base {base}: {l} - 1 = {value} = {term}");
                }
                records.push(rec(text, data));
                if stage == steps {
                    break;
                }
                let step = if weak { weak_step(&value, stage) } else { classic_step(&value, stage) };
                match step {
                    Some(s) => {
                        lifted = Some(s.lifted);
                        value = s.next;
                    }
                    None => break,
                }
            }
            Ok(Outcome::ok(records))
        }
        GoodsteinCmd::Inverse { predilator, stages } => {
            let d = Predilator::parse_name(&predilator)?;
            let p = inverse_prefix(&d, stages)?;
            let mut records: Vec<Record> = p
                .values
                .iter()
                .enumerate()
                .map(|(g, v)| {
                    let s = d.to_sexp(v).to_string();
                    rec(format!("A_{g} = {s}"), json!({"stage": g, "value": s}))
                })
                .collect();
            if let Some(t) = p.terminated_at {
                records.push(rec(format!("terminated at {t}"), json!({"terminated_at": t})));
            }
            Ok(Outcome::ok(records))
        }
    }
}

/// A notation system selected by name, with parsing, ordering and enumeration.
enum Notation {
    Ot,
    Nf,
    Phi,
    P,
    Psi(System),
}

impl Notation {
    fn parse_name(s: &str) -> fixord::Result<Notation> {
        match s {
            "ot" | "OT" => Ok(Notation::Ot),
            "nf" | "N" => Ok(Notation::Nf),
            "phi" => Ok(Notation::Phi),
            "p" | "P" | "pomega" => Ok(Notation::P),
            _ => match s.strip_prefix("psi:") {
                Some(d) => Ok(Notation::Psi(System::psi(Predilator::parse_name(d)?))),
                None => Err(parse_err(format!("unknown system {s}; use ot, nf, phi, p or psi:<predilator>"))),
            },
        }
    }

    fn cmp(&self, a: &str, b: &str) -> fixord::Result<Ordering> {
        Ok(match self {
            Notation::Ot => Ot::cmp(&valid_ot(a)?, &valid_ot(b)?),
            Notation::Nf => Nf::cmp(&valid_nf(a)?, &valid_nf(b)?),
            Notation::Phi => Phi::cmp(&valid_phi(a)?, &valid_phi(b)?),
            Notation::P => P::cmp(&valid_p(a)?, &valid_p(b)?),
            Notation::Psi(sys) => sys.cmp(&sys.parse(a)?, &sys.parse(b)?),
        })
    }

    fn enumerate(&self, size: usize) -> Vec<String> {
        match self {
            Notation::Ot => Ot::enumerate(size).iter().map(Ot::to_string).collect(),
            Notation::Nf => nf::enumerate(size).iter().map(Nf::to_string).collect(),
            Notation::Phi => Phi::enumerate(size).iter().map(Phi::to_string).collect(),
            Notation::P => P::enumerate(size).iter().map(P::to_string).collect(),
            Notation::Psi(sys) => sys.enumerate(size, true).iter().map(|t| sys.show(t)).collect(),
        }
    }
}

fn valid_ot(s: &str) -> fixord::Result<Ot> {
    let x = Ot::parse(s)?;
    x.validate()?;
    Ok(x)
}

fn valid_nf(s: &str) -> fixord::Result<Nf> {
    let x = Nf::parse(s)?;
    x.validate()?;
    Ok(x)
}

fn valid_low(s: &str) -> fixord::Result<Low> {
    let x = Low::from_sexp(&fixord::sexp::parse(s)?)?;
    x.validate()?;
    Ok(x)
}

fn valid_phi(s: &str) -> fixord::Result<Phi> {
    let x = Phi::parse(s)?;
    x.validate()?;
    Ok(x)
}

fn valid_p(s: &str) -> fixord::Result<P> {
    let x = P::parse(s)?;
    x.validate()?;
    Ok(x)
}

fn ord_word(o: Ordering) -> &'static str {
    match o {
        Ordering::Less => "less",
        Ordering::Equal => "equal",
        Ordering::Greater => "greater",
    }
}

fn notation(c: NotationCmd) -> fixord::Result<Outcome> {
    match c {
        NotationCmd::Cmp { system, a, b } => {
            let w = ord_word(Notation::parse_name(&system)?.cmp(&a, &b)?);
            Ok(Outcome::ok(vec![rec(w, json!({"system": system, "a": a, "b": b, "result": w}))]))
        }
        NotationCmd::Normalize { a } => {
            let x = valid_ot(&a)?;
            let n = nf::normalize(&x).to_string();
            Ok(Outcome::ok(vec![rec(n.clone(), json!({"input": a, "normal_form": n}))]))
        }
        NotationCmd::Enumerate { system, size } => {
            let terms = Notation::parse_name(&system)?.enumerate(size.size);
            Ok(Outcome::ok(
                terms
                    .into_iter()
                    .enumerate()
                    .map(|(i, t)| rec(t.clone(), json!({"system": system, "index": i, "term": t})))
                    .collect(),
            ))
        }
    }
}

fn fixpoint(c: FixpointCmd) -> fixord::Result<Outcome> {
    match c {
        FixpointCmd::Enumerate { predilator, size } => {
            let sys = System::psi(Predilator::parse_name(&predilator)?);
            Ok(Outcome::ok(
                sys.enumerate(size.size, true)
                    .iter()
                    .enumerate()
                    .map(|(i, t)| {
                        let s = sys.show(t);
                        rec(s.clone(), json!({"predilator": predilator, "index": i, "term": s}))
                    })
                    .collect(),
            ))
        }
        FixpointCmd::Check { predilator, stages, size } => {
            let d = Predilator::parse_name(&predilator)?;
            let sys = System::psi(d.clone());
            let p = TerminationPrefix { values: inverse_prefix(&d, stages)?.values };
            let r = check_conditions(&d, &p, size.size);
            let groups = [
                ("minimality", &r.minimality),
                ("cofinality", &r.cofinality),
                ("height", &r.height),
                ("strong", &r.strong),
            ];
            let mut records = Vec::new();
            let mut violations = 0;
            for (name, issues) in groups {
                violations += issues.len();
                for i in issues {
                    records.push(rec(format!("{name}: {i}"), json!({"condition": name, "violation": i})));
                }
            }
            let terms = fragment_to_terms(&sys, &termination_to_fp(&p))?;
            if prefix_of_terms(&sys, &terms)? != p {
                violations += 1;
                let msg = "prefix changed on the round trip through ψ₁(D)";
                records.push(rec(format!("round trip: {msg}"), json!({"condition": "round trip", "violation": msg})));
            }
            for (x, t) in terms.iter().enumerate() {
                let s = sys.show(t);
                records.push(rec(format!("{x}: {s}"), json!({"index": x, "term": s})));
            }
            let passed = violations == 0;
            let status = if passed { "pass" } else { "fail" };
            records.push(rec(
                format!("{status}: {} stages, {} values checked, horizon {}", p.values.len(), r.checked, r.horizon),
                json!({
                    "predilator": predilator, "size": size.size, "stages": p.values.len(),
                    "checked": r.checked, "horizon": r.horizon, "passed": passed,
                }),
            ));
            Ok(Outcome { records, violations })
        }
        FixpointCmd::Hom { from, to, size } => {
            let src = System::psi(Predilator::parse_name(&from)?);
            let dst = System::psi(Predilator::parse_name(&to)?);
            let terms = src.enumerate(size.size, true);
            let fp = terms_to_fragment(&src, &terms)?;
            let images = unique_hom(&dst, &fp)?;
            let issues = check_hom(&dst, &fp, &images);
            let mut records: Vec<Record> = terms
                .iter()
                .zip(&images)
                .map(|(s, t)| {
                    let (a, b) = (src.show(s), dst.show(t));
                    rec(format!("{a} -> {b}"), json!({"source": a, "image": b}))
                })
                .collect();
            for i in &issues {
                records.push(rec(format!("violation: {i}"), json!({"violation": i})));
            }
            Ok(Outcome { records, violations: issues.len() })
        }
    }
}

fn embedding_records(reports: &[EmbeddingReport]) -> Outcome {
    let mut records = Vec::new();
    let mut violations = 0;
    for r in reports {
        violations += r.violations.len();
        for v in &r.violations {
            records.push(rec(format!("{}: {v}", r.map), json!({"map": r.map, "violation": v})));
        }
        let status = if r.passed() { "pass" } else { "fail" };
        records.push(rec(
            format!("{status} {}: bound {} terms {} pairs {}", r.map, r.bound, r.terms, r.pairs),
            json!({
                "map": r.map, "bound": r.bound, "terms": r.terms, "pairs": r.pairs,
                "violations": r.violations.len(), "passed": r.passed(),
            }),
        ));
    }
    Outcome { records, violations }
}

fn embed(c: EmbedCmd) -> fixord::Result<Outcome> {
    match c {
        EmbedCmd::Run { map, term } => {
            let image = embed_run(&map, &term)?;
            Ok(Outcome::ok(vec![rec(image.clone(), json!({"map": map, "source": term, "image": image}))]))
        }
        EmbedCmd::Verify { map, size } => {
            let names: Vec<&str> = if map == "all" { embeddings::MAPS.to_vec() } else { vec![map.as_str()] };
            let reports = names
                .iter()
                .map(|m| embeddings::verify_map(m, size.size))
                .collect::<fixord::Result<Vec<_>>>()
                .map_err(as_usage)?;
            Ok(embedding_records(&reports))
        }
        EmbedCmd::Equimorphism { pair, size } => {
            Ok(embedding_records(&embeddings::equimorphism_suite(&pair, size.size).map_err(as_usage)?))
        }
    }
}

/// Unknown map and pair names are usage errors.
fn as_usage(e: Error) -> Error {
    match e {
        Error::Unsupported(m) => Error::Parse(m),
        e => e,
    }
}

fn embed_run(map: &str, term: &str) -> fixord::Result<String> {
    Ok(match map {
        "omega_normalize" => embeddings::omega_normalize_map(&valid_ot(term)?)?.to_string(),
        "collapse_f" => nf::collapse_f(&valid_nf(term)?).to_string(),
        "theta_g" => nf::collapse_theta_g(&valid_low(term)?).to_string(),
        "phi_to_bh" => {
            let sys = embeddings::powmul_theta();
            sys.show(&embeddings::phi_to_theta(&sys, &valid_phi(term)?)?)
        }
        "f_seq" => {
            let sx = fixord::sexp::parse(term)?;
            let items = sx.expect_tagged("s")?;
            let xs = items
                .iter()
                .map(|x| {
                    let p = P::from_sexp(x)?;
                    p.validate()?;
                    Ok(p)
                })
                .collect::<fixord::Result<Vec<P>>>()?;
            embeddings::p_f_seq(&xs).to_string()
        }
        "pi_s" => {
            let s = embeddings::PsiS;
            let x = valid_p(term)?;
            let l = s.pi(&x)?;
            let seq = Predilator::omega(Predilator::PowMul);
            let leaves: Vec<String> = l.leaves.iter().map(P::to_string).collect();
            format!("{} over [{}]", seq.to_sexp(&l.payload), leaves.join(", "))
        }
        "pomega_to_psi1w" => {
            let sys = embeddings::psi1w_system();
            sys.show(&embeddings::pomega_to_psi1w(&sys, &valid_p(term)?, &mut HashMap::new())?)
        }
        "psi1w_to_phi" => {
            let sys = embeddings::psi1w_system();
            embeddings::psi1w_to_phi(&sys.parse(term)?, &mut HashMap::new())?.to_string()
        }
        "psi1g_to_bhord" => embeddings::psi1g_to_bhord(&embeddings::psi1g_system().parse(term)?)?.to_string(),
        "bhord_to_psi1g" => {
            let s = embeddings::GoodsteinS::new();
            s.sys.show(&embeddings::bhord_to_psi1g(&s, &valid_ot(term)?, &mut HashMap::new())?)
        }
        "phi_to_pomega" => embeddings::phi_to_pomega(&valid_phi(term)?, &mut HashMap::new())?.to_string(),
        "kappa_c" | "aca_forward_g" | "aca_backward_f" => {
            return Err(parse_err(format!("{map} takes extra parameters; use `embed verify --map {map}`")))
        }
        _ => {
            return Err(parse_err(format!("unknown map {map}; known maps: {}", embeddings::MAPS.join(", "))))
        }
    })
}

fn report_outcome(r: &pathologies::Report, mut extra: Vec<Record>) -> Outcome {
    let mut records: Vec<Record> = r
        .violations
        .iter()
        .map(|v| rec(format!("violation: {v}"), json!({"check": r.name, "violation": v})))
        .collect();
    records.extend(
        r.notes.iter().map(|n| rec(format!("note: {n}"), json!({"check": r.name, "note": n}))),
    );
    records.append(&mut extra);
    let status = if r.passed() { "pass" } else { "fail" };
    records.push(rec(
        format!("{status} {}: {} checked", r.name, r.checked),
        json!({"check": r.name, "checked": r.checked, "violations": r.violations.len(), "passed": r.passed()}),
    ));
    Outcome { records, violations: r.violations.len() }
}

fn parse_rational(s: &str) -> fixord::Result<Rational> {
    let bad = || parse_err(format!("not a rational: {s}"));
    match s.split_once('/') {
        Some((p, q)) => {
            let (p, q): (i64, i64) = (p.trim().parse().map_err(|_| bad())?, q.trim().parse().map_err(|_| bad())?);
            if q == 0 {
                return Err(bad());
            }
            Ok(Rational::new(p, q))
        }
        None => Ok(Rational::from_integer(s.trim().parse().map_err(|_| bad())?)),
    }
}

fn patho(c: PathoCmd) -> fixord::Result<Outcome> {
    match c {
        PathoCmd::ZCheck { window, descent } => {
            let bad = || parse_err(format!("window must be `a,b` with a <= b, got {window}"));
            let (a, b) = window.split_once(',').ok_or_else(bad)?;
            let (lo, hi): (i64, i64) = (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?);
            if lo > hi {
                return Err(bad());
            }
            let z = pathologies::z_point_check(lo, hi, descent);
            let shown = &z.descent[..descent.min(z.descent.len())];
            let d: Vec<String> = shown.iter().map(i64::to_string).collect();
            let extra = vec![rec(
                format!("descent: {} > … ({} elements)", d.join(" > "), z.descent.len()),
                json!({"check": z.report.name, "descent": shown, "descent_length": z.descent.len()}),
            )];
            Ok(report_outcome(&z.report, extra))
        }
        PathoCmd::Tree { file, size } => {
            let src = std::fs::read_to_string(&file).map_err(|e| parse_err(format!("cannot read {file}: {e}")))?;
            let shape = Arc::new(TreeShape::parse(&src)?);
            let fp = pathologies::tree_fixed_point(shape, size.size);
            let rep = fp.check(size.size.min(3));
            let heights = fp.synthesize_heights()?;
            let extra: Vec<Record> = fp
                .elems
                .iter()
                .zip(&heights)
                .map(|(x, h)| {
                    let s = x.show();
                    rec(format!("{s} height {h}"), json!({"check": rep.name, "term": s, "height": h}))
                })
                .collect();
            let mut out = report_outcome(&rep, extra);
            let canon = fp.compare_to_canonical(size.size);
            let more = report_outcome(&canon, Vec::new());
            out.violations += more.violations;
            out.records.extend(more.records);
            Ok(out)
        }
        PathoCmd::Successor { predilator, size } => {
            let d = match Predilator::parse_name(&predilator)? {
                Predilator::Bump(d) => *d,
                _ => return Err(parse_err(format!("successor check needs a predilator bump:<D>, got {predilator}"))),
            };
            Ok(report_outcome(&pathologies::successor_check(&d, size.size), Vec::new()))
        }
        PathoCmd::Dense { r, den } => {
            let r = parse_rational(&r)?;
            if den < 1 {
                return Err(parse_err("--den must be positive"));
            }
            Ok(report_outcome(&pathologies::dense_window_check(r, den), Vec::new()))
        }
    }
}

fn check_record(r: &CheckResult) -> Record {
    let status = if r.passed { "PASS" } else { "FAIL" };
    let mut text = format!("{status} {:<12} {:<34} checked {:>7} {:>7} ms", r.suite, r.name, r.checked, r.millis);
    if !r.passed {
        text.push_str(&format!("  {}", r.detail));
    }
    rec(
        text,
        json!({
            "suite": r.suite, "name": r.name, "passed": r.passed, "checked": r.checked,
            "detail": r.detail, "millis": r.millis,
        }),
    )
}

fn run_verify(all: bool, suite: Option<String>, size: usize) -> fixord::Result<Outcome> {
    let start = Instant::now();
    let results = match (all, suite.as_deref()) {
        (true, _) | (false, None) => verify::all(size),
        (false, Some("sequences")) => verify::sequences(),
        (false, Some("linearity")) => verify::linearity(size),
        (false, Some("fixpoints")) => verify::fixpoints(size),
        (false, Some("embeddings")) => verify::embeddings(size),
        (false, Some("pathologies")) => verify::pathologies(size),
        (false, Some(s)) => return Err(parse_err(format!("unknown suite {s}"))),
    };
    let failed = results.iter().filter(|r| !r.passed).count();
    let mut records: Vec<Record> = results.iter().map(check_record).collect();
    let millis = start.elapsed().as_millis();
    records.push(rec(
        format!("{} checks, {} passed, {failed} failed, {millis} ms", results.len(), results.len() - failed),
        json!({"size": size, "checks": results.len(), "passed": results.len() - failed, "failed": failed, "millis": millis}),
    ));
    Ok(Outcome { records, violations: failed })
}
