//! Verification suites: each runs a closed-form statement against the
//! brute-force engine over a bounded instance family and reports every
//! mismatch.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::act::RightAct;
use crate::catalog;
use crate::closedform::{monocyclic_closed_form, predict_completely_0_simple, predict_completely_simple};
use crate::congruence::{
    all_congruences_bruteforce, closure, monocyclic, rees_congruence, summarize, two_sided_check, Congruence,
    CongruenceSummary,
};
use crate::enumerate::{build_atlas, enumerate_acts, enumerate_rees, EnumerationBounds, DEFAULT_SEED};
use crate::error::{Error, Result};
use crate::properties;
use crate::random::random_act;
use crate::rees::{rees_matrix, ReesMatrixSpec, SandwichEntry};
use crate::semigroup::{rectangular_band, FiniteSemigroup};

pub const SUITE_NAMES: [&str; 9] = [
    "monocyclic-closed-form",
    "zero-simple-si",
    "zero-simple-irreducible",
    "simple-uniform",
    "band-act-atlas",
    "two-sided-least",
    "idempotent-dichotomy",
    "uniform-subact-meet",
    "engine-oracle",
];

/// Overrides for a suite's default instance family. `None` keeps the
/// suite's own default.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteConfig {
    pub groups: Option<Vec<String>>,
    pub max_i: Option<usize>,
    pub max_lambda: Option<usize>,
    pub max_states: Option<usize>,
    pub samples: Option<usize>,
    pub random_acts: usize,
    pub seed: u64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            groups: None,
            max_i: None,
            max_lambda: None,
            max_states: None,
            samples: None,
            random_acts: 200,
            seed: DEFAULT_SEED,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteRow {
    pub instance: String,
    pub predicted: Value,
    pub observed: Value,
    pub agree: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub instances: usize,
    pub checks: usize,
    pub failures: Vec<String>,
    pub rows: Vec<SuiteRow>,
}

impl SuiteReport {
    fn new(suite: &str, seed: u64) -> Self {
        Self {
            suite: suite.to_string(),
            seed,
            instances: 0,
            checks: 0,
            failures: Vec::new(),
            rows: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn row(&mut self, instance: String, predicted: Value, observed: Value) {
        self.checks += 1;
        let agree = predicted == observed;
        if !agree {
            self.failures
                .push(format!("{instance}: predicted {predicted}, observed {observed}"));
        }
        self.rows.push(SuiteRow {
            instance,
            predicted,
            observed,
            agree,
        });
    }

    fn extend_failures(&mut self, context: &str, checks: usize, failures: Vec<String>) {
        self.checks += checks;
        self.failures.extend(failures.into_iter().map(|f| format!("{context}: {f}")));
    }
}

/// Runs one suite by name; `"all"` runs every suite in order.
pub fn run(name: &str, cfg: &SuiteConfig) -> Result<Vec<SuiteReport>> {
    if name == "all" {
        return SUITE_NAMES.iter().map(|n| run_one(n, cfg)).collect();
    }
    Ok(vec![run_one(name, cfg)?])
}

fn run_one(name: &str, cfg: &SuiteConfig) -> Result<SuiteReport> {
    match name {
        "monocyclic-closed-form" => monocyclic_closed_form_suite(cfg),
        "zero-simple-si" => zero_simple_suite(cfg, false),
        "zero-simple-irreducible" => zero_simple_suite(cfg, true),
        "simple-uniform" => simple_uniform_suite(cfg),
        "band-act-atlas" => band_act_atlas_suite(cfg),
        "two-sided-least" => two_sided_least_suite(cfg),
        "idempotent-dichotomy" => idempotent_dichotomy_suite(cfg),
        "uniform-subact-meet" => uniform_subact_meet_suite(cfg),
        "engine-oracle" => engine_oracle_suite(cfg),
        other => Err(Error::PreconditionViolated(format!(
            "unknown suite {other:?}; expected one of {} or all",
            SUITE_NAMES.join(", ")
        ))),
    }
}

/// `"Z4 1x2 P=[e;g] zero"`.
pub fn describe_spec(spec: &ReesMatrixSpec) -> String {
    let rows: Vec<String> = spec
        .sandwich()
        .iter()
        .map(|r| {
            r.iter()
                .map(|e| match *e {
                    SandwichEntry::Zero => "0".to_string(),
                    SandwichEntry::Group(g) => spec.group().label(g).to_string(),
                })
                .collect::<Vec<_>>()
                .join(",")
        })
        .collect();
    format!(
        "|G|={} {}x{} P=[{}]{}",
        spec.group().order(),
        spec.i_size(),
        spec.lambda_size(),
        rows.join(";"),
        if spec.with_zero() { " zero" } else { "" }
    )
}

fn group_name_prefix(name: &str, spec: &ReesMatrixSpec) -> String {
    format!("{name} {}", describe_spec(spec))
}

fn rees_family(
    groups: &[String],
    max_i: usize,
    max_lambda: usize,
    samples: impl Fn(&str) -> usize,
    with_zero: bool,
    seed: u64,
) -> Result<Vec<(String, ReesMatrixSpec)>> {
    let mut out = Vec::new();
    for g in groups {
        let bounds = EnumerationBounds {
            groups: vec![g.clone()],
            band_i: max_i,
            band_lambda: max_lambda,
            max_sandwich_samples: samples(g),
            seed,
            ..Default::default()
        };
        for spec in enumerate_rees(&bounds, with_zero)? {
            out.push((g.clone(), spec));
        }
    }
    Ok(out)
}

fn regular_of(spec: &ReesMatrixSpec) -> Result<RightAct> {
    Ok(RightAct::regular(Arc::new(rees_matrix(spec)?)))
}

fn names(list: &[&str]) -> Vec<String> {
    list.iter().map(|s| s.to_string()).collect()
}

fn monocyclic_closed_form_suite(cfg: &SuiteConfig) -> Result<SuiteReport> {
    let groups = cfg
        .groups
        .clone()
        .unwrap_or_else(|| names(&["Z2", "Z3", "Z4", "Z5", "Z6", "S3"]));
    let samples = cfg.samples.unwrap_or(50);
    let family = rees_family(
        &groups,
        1,
        cfg.max_lambda.unwrap_or(3),
        |g| {
            if catalog::group(g).map_or(0, |g| g.order()) <= 4 {
                usize::MAX
            } else {
                samples
            }
        },
        true,
        cfg.seed,
    )?;
    let results: Vec<Result<(usize, Vec<String>)>> = family
        .par_iter()
        .map(|(name, spec)| {
            let act = regular_of(spec)?;
            let mut checks = 0;
            let mut failures = Vec::new();
            for m in 1..act.size() {
                for n in 1..act.size() {
                    if m == n {
                        continue;
                    }
                    checks += 1;
                    let (closed, descriptor) = monocyclic_closed_form(spec, &act, m, n)?;
                    let engine = monocyclic(&act, m, n);
                    if closed != engine {
                        failures.push(format!(
                            "{} pair ({}, {}): closed form {:?}, engine {:?}",
                            group_name_prefix(name, spec),
                            act.state_label(m),
                            act.state_label(n),
                            closed.classes(),
                            engine.classes()
                        ));
                    }
                    let d = descriptor.expect("nonzero pair has a descriptor");
                    if spec.group().order() % d.cyclic_order != 0 {
                        failures.push(format!("order of X does not divide |G| for ({m}, {n})"));
                    }
                    if d.x_element == spec.group().identity() {
                        let merged: Vec<Vec<usize>> =
                            closed.classes().into_iter().filter(|c| c.len() > 1).collect();
                        if merged != vec![vec![m.min(n), m.max(n)]] {
                            failures.push(format!("X = e but ({m}, {n}) merges {merged:?}"));
                        }
                    }
                }
            }
            Ok((checks, failures))
        })
        .collect();
    let mut report = SuiteReport::new("monocyclic-closed-form", cfg.seed);
    for ((name, spec), r) in family.iter().zip(results) {
        let (checks, failures) = r?;
        report.instances += 1;
        let ok = failures.is_empty();
        report.extend_failures(&group_name_prefix(name, spec), checks, failures);
        report.rows.push(SuiteRow {
            instance: group_name_prefix(name, spec),
            predicted: json!(checks),
            observed: json!(checks),
            agree: ok,
        });
    }
    Ok(report)
}

fn zero_simple_family(cfg: &SuiteConfig, extended: bool) -> Result<Vec<(String, ReesMatrixSpec)>> {
    let groups = cfg.groups.clone().unwrap_or_else(|| {
        let mut g: Vec<String> = (1..=8).map(|n| format!("Z{n}")).collect();
        g.extend(names(&["V4", "S3", "Q8"]));
        g
    });
    let samples = cfg.samples.unwrap_or(64);
    let mut family = rees_family(
        &groups,
        cfg.max_i.unwrap_or(2),
        cfg.max_lambda.unwrap_or(2),
        |_| samples,
        true,
        cfg.seed,
    )?;
    if extended && cfg.groups.is_none() {
        family.extend(rees_family(&names(&["Z9", "Z10", "Z11", "Z12"]), 1, 1, |_| samples, true, cfg.seed)?);
    }
    Ok(family)
}

fn summaries(family: &[(String, ReesMatrixSpec)]) -> Result<Vec<CongruenceSummary>> {
    family
        .par_iter()
        .map(|(_, spec)| summarize(&regular_of(spec)?))
        .collect()
}

fn identity_spec(group: &str, i: usize, l: usize, with_zero: bool) -> Result<ReesMatrixSpec> {
    ReesMatrixSpec::new(
        catalog::group(group)?,
        i,
        l,
        vec![vec![SandwichEntry::Group(0); i]; l],
        with_zero,
    )
}

fn zero_simple_suite(cfg: &SuiteConfig, irreducible: bool) -> Result<SuiteReport> {
    let name = if irreducible { "zero-simple-irreducible" } else { "zero-simple-si" };
    let mut report = SuiteReport::new(name, cfg.seed);
    let family = zero_simple_family(cfg, irreducible)?;
    let observed = summaries(&family)?;
    for ((g, spec), s) in family.iter().zip(&observed) {
        report.instances += 1;
        let p = predict_completely_0_simple(spec)?;
        let (predicted, seen) = if irreducible {
            (p.irreducible, s.irreducible)
        } else {
            (p.si, s.si)
        };
        report.row(group_name_prefix(g, spec), json!(predicted), json!(seen));
        report.extend_failures(&group_name_prefix(g, spec), 1, properties::implication_chain(s));
    }
    let anchors: &[(&str, usize, usize, bool)] = if irreducible {
        &[("Z12", 1, 1, false), ("Z9", 1, 1, true), ("Z4", 1, 1, true), ("Z6", 1, 1, false)]
    } else {
        &[
            ("Z4", 1, 1, true),
            ("Q8", 1, 1, true),
            ("Z6", 1, 1, false),
            ("V4", 1, 1, false),
            ("Z4", 1, 2, false),
        ]
    };
    for &(g, i, l, expected) in anchors {
        let spec = identity_spec(g, i, l, true)?;
        let s = summarize(&regular_of(&spec)?)?;
        let seen = if irreducible { s.irreducible } else { s.si };
        report.row(format!("anchor {g} {i}x{l}"), json!(expected), json!(seen));
    }
    Ok(report)
}

fn simple_family(cfg: &SuiteConfig) -> Result<Vec<(String, ReesMatrixSpec)>> {
    let groups = cfg.groups.clone().unwrap_or_else(|| names(&["Z1", "Z2", "Z3"]));
    let samples = cfg.samples.unwrap_or(64);
    let (mi, ml) = (cfg.max_i.unwrap_or(3), cfg.max_lambda.unwrap_or(3));
    let mut family = rees_family(&groups, mi, ml, |_| samples, false, cfg.seed)?;
    family.extend(rees_family(&groups, mi, ml, |_| samples, true, cfg.seed)?);
    Ok(family)
}

fn simple_uniform_suite(cfg: &SuiteConfig) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("simple-uniform", cfg.seed);
    let family = simple_family(cfg)?;
    let observed = summaries(&family)?;
    for ((g, spec), s) in family.iter().zip(&observed) {
        report.instances += 1;
        let predicted = if spec.with_zero() {
            predict_completely_0_simple(spec)?.uniform
        } else {
            predict_completely_simple(spec)?.uniform
        };
        report.row(group_name_prefix(g, spec), json!(predicted), json!(s.uniform));
    }
    // rectangular bands: uniform exactly when |I| = 1, beyond two elements
    for i in 1..=3 {
        for l in 1..=3 {
            let band = rectangular_band(i, l)?;
            let s = summarize(&RightAct::regular(Arc::new(band)))?;
            let expected = i * l <= 2 || i == 1;
            report.row(format!("band {i}x{l}"), json!(expected), json!(s.uniform));
        }
    }
    let left_zero = identity_spec("Z1", 2, 1, false)?;
    let s = summarize(&regular_of(&left_zero)?)?;
    report.row("two-element left zero".into(), json!(true), json!(s.uniform));
    Ok(report)
}

/// Default atlas bands as `(|I|, |Λ|, max states)`.
pub const ATLAS_BANDS: [(usize, usize, usize); 5] = [(1, 2, 4), (2, 1, 4), (1, 3, 3), (3, 1, 3), (2, 2, 3)];

fn band_act_atlas_suite(cfg: &SuiteConfig) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("band-act-atlas", cfg.seed);
    let bands: Vec<(usize, usize, usize)> = match (cfg.max_i, cfg.max_lambda, cfg.max_states) {
        (None, None, None) => ATLAS_BANDS.to_vec(),
        (i, l, n) => {
            let (i, l, n) = (i.unwrap_or(2), l.unwrap_or(2), n.unwrap_or(3));
            (1..=i)
                .flat_map(|a| (1..=l).map(move |b| (a, b, n)))
                .filter(|&(a, b, _)| a * b >= 2)
                .collect()
        }
    };
    let bounds = EnumerationBounds {
        seed: cfg.seed,
        ..Default::default()
    };
    let atlases: Vec<Result<_>> = bands
        .par_iter()
        .map(|&(i, l, n)| build_atlas(i, l, n, &bounds))
        .collect();
    for (&(i, l, n), atlas) in bands.iter().zip(atlases) {
        let atlas = atlas?;
        let s = &atlas.summary;
        report.instances += s.totals.instances;
        let context = format!("band {i}x{l} n<={n}");
        report.extend_failures(&context, s.totals.instances, s.disagreements.clone());
        report.extend_failures(&context, s.totals.instances, s.property_failures.clone());
        report.rows.push(SuiteRow {
            instance: context,
            predicted: json!(0),
            observed: serde_json::to_value(&s.totals).expect("serializable"),
            agree: s.disagreements.is_empty() && s.property_failures.is_empty(),
        });
    }
    Ok(report)
}

fn two_sided_least_suite(cfg: &SuiteConfig) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("two-sided-least", cfg.seed);
    let mut family = zero_simple_family(cfg, true)?;
    family.extend(simple_family(cfg)?);
    let observed = summaries(&family)?;
    for ((g, spec), s) in family.iter().zip(&observed) {
        report.instances += 1;
        if let Some(least) = &s.least_nondiagonal {
            let sg = rees_matrix(spec)?;
            report.row(group_name_prefix(g, spec), json!(true), json!(two_sided_check(&sg, least)));
        }
    }
    for (name, sg) in catalog::semigroups() {
        let s = summarize(&RightAct::regular(Arc::new(sg.clone())))?;
        report.instances += 1;
        if let Some(least) = &s.least_nondiagonal {
            report.row(name, json!(true), json!(two_sided_check(&sg, least)));
        }
    }
    Ok(report)
}

fn idempotent_dichotomy_suite(cfg: &SuiteConfig) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("idempotent-dichotomy", cfg.seed);
    let mut semigroups = catalog::semigroups();
    for (_, spec) in zero_simple_family(cfg, false)?.into_iter().chain(simple_family(cfg)?) {
        semigroups.push((describe_spec(&spec), rees_matrix(&spec)?));
    }
    for (name, s) in &semigroups {
        report.instances += 1;
        report.extend_failures(name, 1, properties::idempotent_dichotomy(s));
    }
    Ok(report)
}

fn small_catalog(max_order: usize) -> Vec<(String, Arc<FiniteSemigroup>)> {
    catalog::semigroups()
        .into_iter()
        .filter(|(_, s)| s.order() <= max_order)
        .map(|(n, s)| (n, Arc::new(s)))
        .collect()
}

fn random_acts(cfg: &SuiteConfig) -> Vec<(String, RightAct)> {
    let pool = small_catalog(6);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let max_states = cfg.max_states.unwrap_or(6);
    (0..cfg.random_acts)
        .map(|k| {
            let (name, s) = pool.choose(&mut rng).expect("nonempty catalog");
            let act = random_act(s.clone(), max_states, &mut rng);
            (format!("random #{k} over {name}"), act)
        })
        .collect()
}

fn uniform_subact_meet_suite(cfg: &SuiteConfig) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("uniform-subact-meet", cfg.seed);
    let mut acts: Vec<(String, RightAct)> = catalog::semigroups()
        .into_iter()
        .map(|(n, s)| (format!("regular {n}"), RightAct::regular(Arc::new(s))))
        .collect();
    acts.extend(random_acts(cfg));
    let results: Vec<Result<Vec<String>>> = acts
        .par_iter()
        .map(|(_, act)| {
            let s = summarize(act)?;
            let mut f = properties::uniform_subacts_meet(act, &s);
            f.extend(properties::kernel_checks(act, &s));
            f.extend(properties::implication_chain(&s));
            Ok(f)
        })
        .collect();
    for ((name, _), r) in acts.iter().zip(results) {
        report.instances += 1;
        report.extend_failures(name, 1, r?);
    }
    Ok(report)
}

/// Compares the worklist closure with the least brute-force congruence
/// containing each pair set of size at most two, and the summary verdicts
/// with their definitions over the full congruence lattice.
pub fn engine_oracle_check(act: &RightAct) -> Result<(usize, Vec<String>)> {
    let all = all_congruences_bruteforce(act)?;
    let n = act.size();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a..n).map(move |b| (a, b))).collect();
    let mut sets: Vec<Vec<(usize, usize)>> = vec![Vec::new()];
    for (k, &p) in pairs.iter().enumerate() {
        sets.push(vec![p]);
        for &q in &pairs[k + 1..] {
            sets.push(vec![p, q]);
        }
    }
    let mut failures = Vec::new();
    for set in &sets {
        let c = closure(act, set);
        let containing: Vec<&Congruence> = all
            .iter()
            .filter(|r| set.iter().all(|&(a, b)| r.related(a, b)))
            .collect();
        let least = containing
            .iter()
            .find(|r| containing.iter().all(|o| r.is_contained_in(o)));
        if least != Some(&&c) {
            failures.push(format!(
                "pairs {set:?}: closure {:?}, least containing {:?}",
                c.classes(),
                least.map(|r| r.classes())
            ));
        }
        if !c.is_right_compatible(act) {
            failures.push(format!("pairs {set:?}: closure is not right compatible"));
        }
    }

    let nondiag: Vec<&Congruence> = all.iter().filter(|r| !r.is_diagonal()).collect();
    let si = n > 1 && {
        let least = nondiag.iter().find(|r| nondiag.iter().all(|o| r.is_contained_in(o)));
        least.is_some()
    };
    let irreducible = !nondiag.is_empty()
        && nondiag
            .iter()
            .all(|a| nondiag.iter().all(|b| a.common_pair(b).is_some()));
    let analysis = act.analyze()?;
    let uniform = analysis.subacts.iter().filter(|b| b.len() >= 2).all(|b| {
        let rb = rees_congruence(act, b).expect("enumerated subact");
        nondiag.iter().all(|r| rb.common_pair(r).is_some())
    });
    let s = summarize(act)?;
    if (s.si, s.irreducible, s.uniform) != (si, irreducible, uniform) {
        failures.push(format!(
            "summary (si, irreducible, uniform) = {:?}, lattice gives {:?}",
            (s.si, s.irreducible, s.uniform),
            (si, irreducible, uniform)
        ));
    }
    Ok((sets.len() + 1, failures))
}

fn engine_oracle_suite(cfg: &SuiteConfig) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("engine-oracle", cfg.seed);
    let mut acts: Vec<(String, RightAct)> = Vec::new();
    let exhaustive = EnumerationBounds {
        dedup: false,
        ..Default::default()
    };
    for (i, l) in [(1, 1), (1, 2), (2, 1), (1, 3), (3, 1), (2, 2), (1, 4), (4, 1)] {
        let band = Arc::new(rectangular_band(i, l)?);
        for n in 1..=3 {
            for (k, act) in enumerate_acts(band.clone(), n, &exhaustive)?.enumerate() {
                acts.push((format!("band {i}x{l} n={n} #{k}"), act));
            }
        }
    }
    acts.extend(random_acts(cfg));
    let results: Vec<Result<(usize, Vec<String>)>> = acts.par_iter().map(|(_, a)| engine_oracle_check(a)).collect();
    for ((name, _), r) in acts.iter().zip(results) {
        let (checks, failures) = r?;
        report.instances += 1;
        report.extend_failures(name, checks, failures);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn describe_is_readable() {
        let spec = identity_spec("Z4", 1, 2, true).unwrap();
        assert_eq!(describe_spec(&spec), "|G|=4 1x2 P=[e;e] zero");
    }

    #[test]
    fn unknown_suite_is_an_error() {
        assert!(run("nope", &SuiteConfig::default()).is_err());
    }

    #[test]
    fn small_closed_form_run() {
        let cfg = SuiteConfig {
            groups: Some(vec!["Z4".into()]),
            max_lambda: Some(2),
            ..Default::default()
        };
        let r = run("monocyclic-closed-form", &cfg).unwrap();
        assert!(r[0].passed(), "{:?}", r[0].failures);
        assert_eq!(r[0].instances, 4 + 16);
    }
}
