use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use semiact::closedform::{
    classify_act_rect_band, monocyclic_closed_form, predict_completely_0_simple, predict_completely_simple,
};
use semiact::congruence::{closure, summarize, CongruenceSummary};
use semiact::enumerate::{build_atlas, EnumerationBounds, DEFAULT_BUDGET, DEFAULT_SEED};
use semiact::io::{self, ClassificationJson, CongruenceJson, Document, SemigroupJson};
use semiact::suites::{self, SuiteConfig, SUITE_NAMES};
use semiact::{catalog, rees_matrix, Error, FiniteSemigroup, ReesMatrixSpec, RightAct};

#[derive(Parser)]
#[command(name = "semiact", version, about = "Semigroups, right acts and their congruences")]
struct Cli {
    /// Emit machine-readable JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Write the report here instead of standard output.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and validate a semigroup, Rees spec or act file.
    Validate { file: PathBuf },
    /// Expand a Rees matrix spec into a semigroup file.
    Rees { file: PathBuf },
    /// Decide SI, irreducibility and uniformity of a semigroup's regular act.
    ClassifySemigroup {
        file: PathBuf,
        #[command(flatten)]
        expect: Expect,
    },
    /// Analyze an act: zeros, subacts, kernel, and the three predicates.
    ClassifyAct {
        file: PathBuf,
        /// Largest act for full subact enumeration.
        #[arg(long, default_value_t = semiact::act::DEFAULT_SUBACT_LIMIT)]
        subact_limit: usize,
        #[command(flatten)]
        expect: Expect,
    },
    /// Least right congruence containing the given pairs.
    Congruence {
        file: PathBuf,
        /// State labels, e.g. "a,b;c,d".
        #[arg(long)]
        pairs: String,
        /// Use the explicit monocyclic description and cross-check it.
        #[arg(long)]
        closed_form: bool,
    },
    /// Enumerate acts over rectangular bands and compare both classifiers.
    Atlas(AtlasArgs),
    /// Run a verification suite.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct Expect {
    /// Verdicts the input must have, e.g. "si,!uniform"; exit 1 otherwise.
    #[arg(long, value_name = "LIST")]
    expect: Option<String>,
}

impl Expect {
    /// Unmet expectations against the brute-force verdicts.
    fn unmet(&self, observed: &Value) -> Result<Vec<String>, Failure> {
        let Some(list) = &self.expect else {
            return Ok(Vec::new());
        };
        let mut unmet = Vec::new();
        for item in list.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (want, key) = match item.strip_prefix('!') {
                Some(k) => (false, k),
                None => (true, item),
            };
            let Some(seen) = observed.get(key).and_then(Value::as_bool) else {
                return Err(Failure::Input(format!(
                    "unknown verdict {key:?} in --expect; use si, irreducible, uniform"
                )));
            };
            if seen != want {
                unmet.push(format!("expected {item}, found {key}={seen}"));
            }
        }
        Ok(unmet)
    }
}

#[derive(Args)]
struct AtlasArgs {
    /// A single band, e.g. 2x1.
    #[arg(long, value_name = "IxL")]
    band: Option<String>,
    #[arg(long)]
    max_i: Option<usize>,
    #[arg(long)]
    max_lambda: Option<usize>,
    #[arg(long, default_value_t = 3)]
    max_states: usize,
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u128,
    #[arg(long)]
    override_budget: bool,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, default_value = "all")]
    suite: String,
    /// Catalog groups, e.g. "Z2..Z8,Q8,V4".
    #[arg(long)]
    groups: Option<String>,
    #[arg(long)]
    max_i: Option<usize>,
    #[arg(long)]
    max_lambda: Option<usize>,
    #[arg(long)]
    max_states: Option<usize>,
    /// Sandwich matrices sampled per shape when not exhaustive.
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long, default_value_t = 200)]
    random_acts: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
}

#[derive(Debug)]
enum Failure {
    /// A property failed or two computations disagreed.
    Violation(String),
    /// The input could not be read or is invalid.
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::DisagreementFound(_) => Failure::Violation(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

/// A finished report and whether it records a violation.
struct Outcome {
    text: String,
    violated: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(&cli).and_then(|outcome| {
        emit(cli.out.as_deref(), &outcome.text)?;
        Ok(outcome.violated)
    });
    match result {
        Ok(false) => ExitCode::SUCCESS,
        Ok(true) => ExitCode::from(1),
        Err(Failure::Violation(msg)) => {
            eprintln!("violation: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| Failure::Input(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: &Cli) -> Result<Outcome, Failure> {
    match &cli.command {
        Command::Validate { file } => validate(file, cli.json),
        Command::Rees { file } => rees(file),
        Command::ClassifySemigroup { file, expect } => classify_semigroup(file, expect, cli.json),
        Command::ClassifyAct {
            file,
            subact_limit,
            expect,
        } => classify_act(file, *subact_limit, expect, cli.json),
        Command::Congruence {
            file,
            pairs,
            closed_form,
        } => congruence(file, pairs, *closed_form, cli.json),
        Command::Atlas(args) => atlas(args, cli.json),
        Command::Verify(args) => verify(args, cli.json),
    }
}

fn ok(text: String) -> Outcome {
    Outcome { text, violated: false }
}

fn pretty(value: &Value) -> String {
    io::to_pretty(value)
}

fn validate(file: &Path, as_json: bool) -> Result<Outcome, Failure> {
    let (kind, size, detail) = match io::load(file)? {
        Document::Semigroup(s) => ("semigroup", s.order(), identity_note(&s)),
        Document::Rees(spec) => ("rees-spec", spec.order(), suites::describe_spec(&spec)),
        Document::Act { act, .. } => (
            "act",
            act.size(),
            format!("over a semigroup of order {}", act.semigroup().order()),
        ),
    };
    Ok(ok(if as_json {
        pretty(&json!({"version": 1, "valid": true, "kind": kind, "size": size}))
    } else {
        format!("valid {kind} of size {size}: {detail}\n")
    }))
}

fn identity_note(s: &FiniteSemigroup) -> String {
    match s.identity() {
        Some(e) => format!("identity {}", s.label(e)),
        None => "no identity".to_string(),
    }
}

fn rees(file: &Path) -> Result<Outcome, Failure> {
    let Document::Rees(spec) = io::load(file)? else {
        return Err(Failure::Input(format!("{} is not a Rees spec", file.display())));
    };
    let s = rees_matrix(&spec)?;
    Ok(ok(io::to_pretty(&SemigroupJson::from_semigroup(&s))))
}

fn verdicts(s: &CongruenceSummary) -> Value {
    json!({"si": s.si, "irreducible": s.irreducible, "uniform": s.uniform})
}

fn classify_semigroup(file: &Path, expect: &Expect, as_json: bool) -> Result<Outcome, Failure> {
    let (semigroup, spec) = match io::load(file)? {
        Document::Semigroup(s) => (s, None),
        Document::Rees(spec) => (rees_matrix(&spec)?, Some(spec)),
        Document::Act { .. } => return Err(Failure::Input("expected a semigroup or Rees spec, found an act".into())),
    };
    let act = RightAct::regular(Arc::new(semigroup.clone()));
    let brute = summarize(&act)?;
    let observed = verdicts(&brute);
    let unmet = expect.unmet(&observed)?;
    let predicted: Option<(Value, &str)> = if let Some(spec) = &spec {
        Some(if spec.with_zero() {
            let p = predict_completely_0_simple(spec)?;
            (
                json!({"si": p.si, "irreducible": p.irreducible, "uniform": p.uniform}),
                "completely 0-simple",
            )
        } else {
            (json!({"uniform": predict_completely_simple(spec)?.uniform}), "completely simple")
        })
    } else {
        semigroup.band_shape().map(|b| {
            let uniform = semigroup.order() <= 2 || b.i_size == 1;
            (json!({"uniform": uniform}), "rectangular band")
        })
    };
    let agree = predicted.as_ref().map(|(p, _)| {
        p.as_object()
            .expect("object")
            .iter()
            .all(|(k, v)| observed.get(k) == Some(v))
    });
    let two_sided = brute
        .least_nondiagonal
        .as_ref()
        .map(|c| semiact::congruence::two_sided_check(&semigroup, c));
    let text = if as_json {
        pretty(&json!({
            "version": 1,
            "order": semigroup.order(),
            "brute_force": observed,
            "closed_form": predicted.as_ref().map(|(p, _)| p.clone()),
            "structure": predicted.as_ref().map(|(_, s)| *s),
            "agree": agree,
            "least_is_two_sided": two_sided,
            "unmet_expectations": unmet,
        }))
    } else {
        let mut t = String::new();
        writeln!(t, "order {}, {}", semigroup.order(), identity_note(&semigroup)).unwrap();
        writeln!(t, "brute force: si={} irreducible={} uniform={}", brute.si, brute.irreducible, brute.uniform).unwrap();
        if let Some((p, structure)) = &predicted {
            writeln!(t, "closed form ({structure}): {p}").unwrap();
            writeln!(t, "agreement: {}", if agree == Some(true) { "yes" } else { "NO" }).unwrap();
        }
        if let Some(ts) = two_sided {
            writeln!(t, "least non-diagonal right congruence is two-sided: {ts}").unwrap();
        }
        for u in &unmet {
            writeln!(t, "FAIL {u}").unwrap();
        }
        t
    };
    Ok(Outcome {
        text,
        violated: agree == Some(false) || !unmet.is_empty(),
    })
}

fn classify_act(file: &Path, limit: usize, expect: &Expect, as_json: bool) -> Result<Outcome, Failure> {
    let act = load_act(file)?.0;
    let analysis = act.analyze_with_limit(limit).ok();
    let brute = summarize(&act)?;
    let unmet = expect.unmet(&verdicts(&brute))?;
    let band = act.semigroup().band_shape().is_some();
    let closed = if band { Some(classify_act_rect_band(&act)?) } else { None };
    let agree = closed
        .as_ref()
        .map(|c| c.si == brute.si && c.uniform == brute.uniform);
    let labels = |v: &[usize]| v.iter().map(|&a| act.state_label(a).to_string()).collect::<Vec<_>>();
    let text = if as_json {
        let classification = closed
            .as_ref()
            .map(|c| serde_json::to_value(ClassificationJson::from_classification(&act, c, Some(brute.irreducible))).unwrap());
        pretty(&json!({
            "version": 1,
            "states": act.size(),
            "zeros": labels(&act.zeros()),
            "subacts": analysis.as_ref().map(|a| a.subacts.iter().map(|b| labels(b)).collect::<Vec<_>>()),
            "kernel": act.kernel().map(|k| labels(&k)),
            "separated": act.is_separated(),
            "brute_force": verdicts(&brute),
            "classification": classification,
            "agree": agree,
            "unmet_expectations": unmet,
        }))
    } else {
        let mut t = String::new();
        let zeros = labels(&act.zeros());
        let zeros = if zeros.is_empty() { "none".to_string() } else { zeros.join(", ") };
        writeln!(t, "size {}, zeros: {zeros}", act.size()).unwrap();
        match &analysis {
            Some(a) => writeln!(t, "subacts: {}", a.subacts.len()).unwrap(),
            None => writeln!(t, "subacts: not enumerated (more than {limit} states)").unwrap(),
        }
        let kernel = act.kernel().map_or("none".to_string(), |k| labels(&k).join(", "));
        writeln!(t, "kernel: {kernel}").unwrap();
        writeln!(t, "separated: {}", act.is_separated()).unwrap();
        writeln!(t, "brute force: si={} irreducible={} uniform={}", brute.si, brute.irreducible, brute.uniform).unwrap();
        if let Some(c) = &closed {
            writeln!(t, "closed form: si={} uniform={} case={}", c.si, c.uniform, c.case_tag.as_str()).unwrap();
            if let Some((l1, l2)) = &c.lambda_partition {
                writeln!(t, "lambda partition: {l1:?} | {l2:?}").unwrap();
            }
            writeln!(t, "agreement: {}", if agree == Some(true) { "yes" } else { "NO" }).unwrap();
        }
        for u in &unmet {
            writeln!(t, "FAIL {u}").unwrap();
        }
        t
    };
    Ok(Outcome {
        text,
        violated: agree == Some(false) || !unmet.is_empty(),
    })
}

/// An act, read directly or as the regular act of a semigroup or spec.
fn load_act(file: &Path) -> Result<(RightAct, Option<ReesMatrixSpec>), Failure> {
    Ok(match io::load(file)? {
        Document::Act { act, rees } => (act, rees),
        Document::Semigroup(s) => (RightAct::regular(Arc::new(s)), None),
        Document::Rees(spec) => (RightAct::regular(Arc::new(rees_matrix(&spec)?)), Some(spec)),
    })
}

/// Splits `"a,b;c,d"` into label pairs. Labels may contain commas, so each
/// pair tries every comma as the separator and keeps the one that names
/// two states.
fn parse_pairs(act: &RightAct, text: &str) -> Result<Vec<(usize, usize)>, Failure> {
    text.split(';')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(|p| {
            let splits: Vec<(usize, usize)> = p
                .match_indices(',')
                .filter_map(|(k, _)| Some((act.index_of(p[..k].trim())?, act.index_of(p[k + 1..].trim())?)))
                .collect();
            match splits[..] {
                [pair] => Ok(pair),
                [] => Err(Failure::Input(format!("cannot read {p:?} as two state labels"))),
                _ => Err(Failure::Input(format!("{p:?} splits into state labels more than one way"))),
            }
        })
        .collect()
}

fn congruence(file: &Path, pairs: &str, closed_form: bool, as_json: bool) -> Result<Outcome, Failure> {
    let (act, spec) = load_act(file)?;
    let pairs = parse_pairs(&act, pairs)?;
    let engine = closure(&act, &pairs);
    let classes = CongruenceJson::from_congruence(&act, &engine);
    if !closed_form {
        return Ok(ok(if as_json {
            io::to_pretty(&classes)
        } else {
            format_classes(&classes.classes)
        }));
    }
    let Some(spec) = spec else {
        return Err(Failure::Input("--closed-form needs a Rees spec or an act over one".into()));
    };
    let [(m, n)] = pairs[..] else {
        return Err(Failure::Input("--closed-form takes exactly one pair".into()));
    };
    if act.size() != spec.order() || act.states() != rees_matrix(&spec)?.labels() {
        return Err(Failure::Input("--closed-form needs the regular act of the spec".into()));
    }
    let (closed, descriptor) = monocyclic_closed_form(&spec, &act, m, n)?;
    let agree = closed == engine;
    let text = if as_json {
        #[derive(Serialize)]
        struct Report<'a> {
            version: u32,
            classes: &'a [Vec<String>],
            x_element: Option<String>,
            cyclic_order: Option<usize>,
            cross_check: bool,
        }
        io::to_pretty(&Report {
            version: 1,
            classes: &CongruenceJson::from_congruence(&act, &closed).classes,
            x_element: descriptor.map(|d| spec.group().label(d.x_element).to_string()),
            cyclic_order: descriptor.map(|d| d.cyclic_order),
            cross_check: agree,
        })
    } else {
        let mut t = format_classes(&CongruenceJson::from_congruence(&act, &closed).classes);
        if let Some(d) = descriptor {
            writeln!(t, "X = {} of order {}", spec.group().label(d.x_element), d.cyclic_order).unwrap();
        }
        writeln!(t, "cross-check: {}", if agree { "OK" } else { "MISMATCH" }).unwrap();
        t
    };
    Ok(Outcome { text, violated: !agree })
}

fn format_classes(classes: &[Vec<String>]) -> String {
    let parts: Vec<String> = classes.iter().map(|c| format!("{{{}}}", c.join(", "))).collect();
    format!("{}\n", parts.join(" | "))
}

fn parse_band(text: &str) -> Result<(usize, usize), Failure> {
    let bad = || Failure::Input(format!("band must look like 2x1, got {text:?}"));
    let (i, l) = text.split_once('x').ok_or_else(bad)?;
    Ok((i.trim().parse().map_err(|_| bad())?, l.trim().parse().map_err(|_| bad())?))
}

fn atlas(args: &AtlasArgs, as_json: bool) -> Result<Outcome, Failure> {
    let bands: Vec<(usize, usize)> = match &args.band {
        Some(b) => vec![parse_band(b)?],
        None => {
            let (mi, ml) = (args.max_i.unwrap_or(2), args.max_lambda.unwrap_or(2));
            (1..=mi).flat_map(|i| (1..=ml).map(move |l| (i, l))).collect()
        }
    };
    let bounds = EnumerationBounds {
        max_states: args.max_states,
        budget: args.budget,
        override_budget: args.override_budget,
        ..Default::default()
    };
    let mut text = String::new();
    let mut violated = false;
    for (i, l) in bands {
        let report = build_atlas(i, l, args.max_states, &bounds)?;
        let s = &report.summary;
        violated |= !s.disagreements.is_empty() || !s.property_failures.is_empty();
        if as_json {
            text.push_str(&report.to_json_lines());
        } else {
            let t = &s.totals;
            writeln!(
                text,
                "band {i}x{l}, up to {} states: acts {}, SI {}, uniform not SI {}, neither {}",
                args.max_states, t.instances, t.si, t.uniform_not_si, t.neither
            )
            .unwrap();
            for (key, c) in &s.by_size_and_zeros {
                let (n, z) = key.split_once('/').unwrap_or((key, "?"));
                writeln!(
                    text,
                    "  size {n}, zeros {z}: acts {}, SI {}, uniform not SI {}",
                    c.instances, c.si, c.uniform_not_si
                )
                .unwrap();
            }
            for d in s.disagreements.iter().chain(&s.property_failures) {
                writeln!(text, "  FAIL {d}").unwrap();
            }
        }
    }
    Ok(Outcome { text, violated })
}

fn verify(args: &VerifyArgs, as_json: bool) -> Result<Outcome, Failure> {
    if args.suite != "all" && !SUITE_NAMES.contains(&args.suite.as_str()) {
        return Err(Failure::Input(format!(
            "unknown suite {:?}; expected one of {} or all",
            args.suite,
            SUITE_NAMES.join(", ")
        )));
    }
    let cfg = SuiteConfig {
        groups: args.groups.as_deref().map(catalog::parse_group_list).transpose()?,
        max_i: args.max_i,
        max_lambda: args.max_lambda,
        max_states: args.max_states,
        samples: args.samples,
        random_acts: args.random_acts,
        seed: args.seed,
    };
    let reports = suites::run(&args.suite, &cfg)?;
    let violated = reports.iter().any(|r| !r.passed());
    let text = if as_json {
        io::to_pretty(&json!({"version": 1, "seed": args.seed, "reports": reports}))
    } else {
        let mut t = String::new();
        for r in &reports {
            writeln!(
                t,
                "{}: {} ({} instances, {} checks, seed {})",
                r.suite,
                if r.passed() { "PASS" } else { "FAIL" },
                r.instances,
                r.checks,
                r.seed
            )
            .unwrap();
            for f in &r.failures {
                writeln!(t, "  {f}").unwrap();
            }
        }
        t
    };
    Ok(Outcome { text, violated })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pairs_with_commas_in_labels() {
        let spec = semiact::ReesMatrixSpec::new(
            catalog::group("Z2").unwrap(),
            1,
            2,
            vec![vec![semiact::SandwichEntry::Group(0)]; 2],
            true,
        )
        .unwrap();
        let act = RightAct::regular(Arc::new(rees_matrix(&spec).unwrap()));
        let pairs = parse_pairs(&act, "(0,e,0),(0,g,1); 0,(0,e,1)").unwrap();
        assert_eq!(pairs, vec![(1, 4), (0, 2)]);
        assert!(parse_pairs(&act, "x,y").is_err());
    }

    #[test]
    fn band_flag() {
        assert_eq!(parse_band("2x3").ok(), Some((2, 3)));
        assert!(parse_band("23").is_err());
    }
}
