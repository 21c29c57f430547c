//! Exhaustive generation of small acts and Rees matrix specs, and the atlas
//! that runs the brute-force and closed-form classifiers side by side.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::act::RightAct;
use crate::catalog;
use crate::closedform::{classify_act_rect_band, Verdict};
use crate::congruence::summarize;
use crate::error::{Error, Result};
use crate::properties;
use crate::rees::{ReesMatrixSpec, SandwichEntry};
use crate::semigroup::{rectangular_band, FiniteSemigroup};

/// Seed for every pseudorandom sweep unless overridden; echoed in reports.
pub const DEFAULT_SEED: u64 = 0x5eed_0c0c;

/// Largest raw table count enumerated without an explicit override.
pub const DEFAULT_BUDGET: u128 = 100_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EnumerationBounds {
    pub max_states: usize,
    pub band_i: usize,
    pub band_lambda: usize,
    pub groups: Vec<String>,
    pub max_sandwich_samples: usize,
    pub dedup: bool,
    pub budget: u128,
    pub override_budget: bool,
    pub seed: u64,
}

impl Default for EnumerationBounds {
    fn default() -> Self {
        Self {
            max_states: 3,
            band_i: 2,
            band_lambda: 2,
            groups: vec!["Z2".into()],
            max_sandwich_samples: 64,
            dedup: true,
            budget: DEFAULT_BUDGET,
            override_budget: false,
            seed: DEFAULT_SEED,
        }
    }
}

impl EnumerationBounds {
    fn check(&self) -> Result<()> {
        if self.max_states == 0
            || self.band_i == 0
            || self.band_lambda == 0
            || self.max_sandwich_samples == 0
            || self.budget == 0
        {
            return Err(Error::PreconditionViolated(
                "enumeration bounds must be positive".into(),
            ));
        }
        Ok(())
    }
}

/// `states^(states·elements)`, saturating.
pub fn raw_table_count(states: usize, elements: usize) -> u128 {
    let exp = (states * elements) as u32;
    (states as u128).checked_pow(exp).unwrap_or(u128::MAX)
}

/// Every action of `semigroup` on `n` states, in row-major lexicographic
/// order of the action table. With `dedup`, only tables that are the
/// lexicographically least among their state relabelings are produced.
pub fn enumerate_acts(
    semigroup: Arc<FiniteSemigroup>,
    n: usize,
    bounds: &EnumerationBounds,
) -> Result<ActEnumerator> {
    bounds.check()?;
    if n == 0 {
        return Err(Error::PreconditionViolated("acts need at least one state".into()));
    }
    let raw = raw_table_count(n, semigroup.order());
    if raw > bounds.budget && !bounds.override_budget {
        return Err(Error::BudgetExceeded {
            raw,
            budget: bounds.budget,
        });
    }
    Ok(ActEnumerator::new(semigroup, n, bounds.dedup))
}

pub fn state_labels(n: usize) -> Vec<String> {
    (0..n).map(|k| format!("q{k}")).collect()
}

pub struct ActEnumerator {
    semigroup: Arc<FiniteSemigroup>,
    n: usize,
    m: usize,
    table: Vec<usize>,
    started: bool,
    finished: bool,
    dedup: bool,
    perms: Vec<Vec<usize>>,
    labels: Vec<String>,
}

impl ActEnumerator {
    fn new(semigroup: Arc<FiniteSemigroup>, n: usize, dedup: bool) -> Self {
        let m = semigroup.order();
        Self {
            semigroup,
            n,
            m,
            table: vec![0; n * m],
            started: false,
            finished: false,
            dedup,
            perms: if dedup { permutations(n) } else { Vec::new() },
            labels: state_labels(n),
        }
    }

    /// Checks every `a(st) = (as)t` instance whose three cells lie in the
    /// assigned prefix and one of which is `pos`.
    fn consistent_at(&self, pos: usize) -> bool {
        let (n, m) = (self.n, self.m);
        let t = &self.table;
        for a in 0..n {
            if a * m > pos {
                break;
            }
            for s in 0..m {
                let c1 = a * m + s;
                if c1 > pos {
                    break;
                }
                let b = t[c1];
                for u in 0..m {
                    let c2 = b * m + u;
                    let c3 = a * m + self.semigroup.mul(s, u);
                    if c2 > pos || c3 > pos || (c1 != pos && c2 != pos && c3 != pos) {
                        continue;
                    }
                    if t[c2] != t[c3] {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Moves to the next complete compatible table.
    fn advance(&mut self) -> bool {
        let len = self.n * self.m;
        let (mut pos, mut val) = if self.started {
            (len - 1, self.table[len - 1] + 1)
        } else {
            self.started = true;
            (0, 0)
        };
        loop {
            if val >= self.n {
                if pos == 0 {
                    return false;
                }
                pos -= 1;
                val = self.table[pos] + 1;
                continue;
            }
            self.table[pos] = val;
            if self.consistent_at(pos) {
                if pos + 1 == len {
                    return true;
                }
                pos += 1;
                val = 0;
            } else {
                val += 1;
            }
        }
    }
}

impl Iterator for ActEnumerator {
    type Item = RightAct;

    fn next(&mut self) -> Option<RightAct> {
        while !self.finished {
            if !self.advance() {
                self.finished = true;
                break;
            }
            if self.dedup && !is_canonical(&self.table, self.n, self.m, &self.perms) {
                continue;
            }
            let act = RightAct::from_flat(self.semigroup.clone(), self.labels.clone(), self.table.clone())
                .expect("enumerated tables are compatible");
            return Some(act);
        }
        None
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for k in 0..used.len() {
            if !used[k] {
                used[k] = true;
                prefix.push(k);
                go(prefix, used, out);
                prefix.pop();
                used[k] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// Relabels states by `perm` (old state `a` becomes `perm[a]`).
fn relabel(table: &[usize], m: usize, perm: &[usize]) -> Vec<usize> {
    let n = perm.len();
    let mut inv = vec![0; n];
    for (a, &p) in perm.iter().enumerate() {
        inv[p] = a;
    }
    let mut out = Vec::with_capacity(n * m);
    for &old in &inv {
        for s in 0..m {
            out.push(perm[table[old * m + s]]);
        }
    }
    out
}

fn is_canonical(table: &[usize], n: usize, m: usize, perms: &[Vec<usize>]) -> bool {
    perms.iter().all(|p| {
        debug_assert_eq!(p.len(), n);
        relabel(table, m, p).as_slice() >= table
    })
}

/// Lexicographically least action table over all state relabelings.
pub fn canonical_form(act: &RightAct) -> Vec<usize> {
    let m = act.semigroup().order();
    permutations(act.size())
        .iter()
        .map(|p| relabel(act.action_flat(), m, p))
        .min()
        .expect("at least one permutation")
}

/// Compact id of the canonical table, e.g. `3:00.11.01`.
pub fn canonical_id(act: &RightAct) -> String {
    let m = act.semigroup().order();
    let table = canonical_form(act);
    let rows: Vec<String> = table
        .chunks(m)
        .map(|r| r.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(if act.size() > 10 { "," } else { "" }))
        .collect();
    format!("{}:{}", act.size(), rows.join("."))
}

/// Rees matrix specs over the bound's groups with `|I| ≤ band_i` and
/// `|Λ| ≤ band_lambda`. Sandwich matrices are exhaustive when there are at
/// most `max_sandwich_samples` candidates, otherwise a seeded sample that
/// always includes the all-identity matrix. Irregular candidates are skipped.
pub fn enumerate_rees(bounds: &EnumerationBounds, with_zero: bool) -> Result<Vec<ReesMatrixSpec>> {
    bounds.check()?;
    let mut out = Vec::new();
    for name in &bounds.groups {
        let group = catalog::group(name)?;
        for i_size in 1..=bounds.band_i {
            for lambda_size in 1..=bounds.band_lambda {
                let seed = mix_seed(bounds.seed, name, i_size, lambda_size);
                for sandwich in sandwiches(group.order(), i_size, lambda_size, with_zero, bounds.max_sandwich_samples, seed) {
                    out.push(ReesMatrixSpec::new(group.clone(), i_size, lambda_size, sandwich, with_zero)?);
                }
            }
        }
    }
    Ok(out)
}

fn mix_seed(seed: u64, name: &str, i: usize, l: usize) -> u64 {
    // FNV-1a over the shape so every (group, I, Λ) gets its own stream
    let mut h: u64 = 0xcbf2_9ce4_8422_2325 ^ seed;
    for b in name.bytes().chain([i as u8, l as u8]) {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    h
}

fn is_regular(p: &[Vec<SandwichEntry>]) -> bool {
    let cols = p[0].len();
    p.iter().all(|r| r.iter().any(|&e| e != SandwichEntry::Zero))
        && (0..cols).all(|c| p.iter().any(|r| r[c] != SandwichEntry::Zero))
}

/// Regular sandwich matrices, exhaustive or sampled.
pub fn sandwiches(
    group_order: usize,
    i_size: usize,
    lambda_size: usize,
    with_zero: bool,
    max_samples: usize,
    seed: u64,
) -> Vec<Vec<Vec<SandwichEntry>>> {
    let alphabet: Vec<SandwichEntry> = with_zero
        .then_some(SandwichEntry::Zero)
        .into_iter()
        .chain((0..group_order).map(SandwichEntry::Group))
        .collect();
    let cells = i_size * lambda_size;
    let shape = |flat: &[usize]| -> Vec<Vec<SandwichEntry>> {
        flat.chunks(i_size)
            .map(|r| r.iter().map(|&k| alphabet[k]).collect())
            .collect()
    };
    let count = (alphabet.len() as u128).checked_pow(cells as u32).unwrap_or(u128::MAX);
    if count <= max_samples as u128 {
        let mut out = Vec::new();
        let mut digits = vec![0usize; cells];
        loop {
            let p = shape(&digits);
            if is_regular(&p) {
                out.push(p);
            }
            let Some(k) = (0..cells).rev().find(|&k| digits[k] + 1 < alphabet.len()) else {
                return out;
            };
            digits[k] += 1;
            for d in digits.iter_mut().skip(k + 1) {
                *d = 0;
            }
        }
    }
    let identity = vec![vec![SandwichEntry::Group(0); i_size]; lambda_size];
    let mut seen = BTreeSet::from([identity.clone()]);
    let mut out = vec![identity];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut attempts = 0;
    while out.len() < max_samples && attempts < max_samples * 100 {
        attempts += 1;
        let digits: Vec<usize> = (0..cells).map(|_| rng.gen_range(0..alphabet.len())).collect();
        let p = shape(&digits);
        if is_regular(&p) && seen.insert(p.clone()) {
            out.push(p);
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AtlasRow {
    pub id: String,
    pub states: usize,
    pub zero_count: usize,
    pub si: bool,
    pub irreducible: bool,
    pub uniform: bool,
    pub predicted_si: bool,
    pub predicted_uniform: bool,
    pub verdict: Verdict,
    pub case: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Census {
    pub instances: usize,
    pub si: usize,
    pub uniform_not_si: usize,
    pub neither: usize,
}

impl Census {
    fn add(&mut self, v: Verdict) {
        self.instances += 1;
        match v {
            Verdict::Si => self.si += 1,
            Verdict::UniformNotSi => self.uniform_not_si += 1,
            Verdict::Neither => self.neither += 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AtlasSummary {
    pub band: String,
    pub max_states: usize,
    pub totals: Census,
    /// Census keyed by `"<states>/<zeros>"`.
    pub by_size_and_zeros: BTreeMap<String, Census>,
    pub disagreements: Vec<String>,
    pub property_failures: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AtlasReport {
    pub rows: Vec<AtlasRow>,
    pub summary: AtlasSummary,
}

impl AtlasReport {
    pub fn ensure_agreement(&self) -> Result<()> {
        match self.summary.disagreements.first() {
            Some(d) => Err(Error::DisagreementFound(d.clone())),
            None => Ok(()),
        }
    }

    /// One JSON object per instance, then the summary object.
    pub fn to_json_lines(&self) -> String {
        let mut out = String::new();
        for row in &self.rows {
            out.push_str(&serde_json::to_string(row).expect("serializable"));
            out.push('\n');
        }
        out.push_str(&serde_json::to_string(&self.summary).expect("serializable"));
        out.push('\n');
        out
    }
}

/// Every act (up to isomorphism) on at most `max_states` states over the
/// band `I×Λ`, classified both ways and checked against the instantiated
/// band-act properties.
pub fn build_atlas(band_i: usize, band_lambda: usize, max_states: usize, bounds: &EnumerationBounds) -> Result<AtlasReport> {
    let band = Arc::new(rectangular_band(band_i, band_lambda)?);
    let per_size: Vec<_> = (1..=max_states)
        .map(|n| enumerate_acts(band.clone(), n, bounds))
        .collect::<Result<_>>()?;

    let mut rows = Vec::new();
    let mut totals = Census::default();
    let mut by_size_and_zeros: BTreeMap<String, Census> = BTreeMap::new();
    let mut disagreements = Vec::new();
    let mut property_failures = properties::idempotent_dichotomy(&band);

    for acts in per_size {
        for act in acts {
            let brute = summarize(&act)?;
            let closed = classify_act_rect_band(&act)?;
            let id = canonical_id(&act);
            if brute.si != closed.si || brute.uniform != closed.uniform {
                disagreements.push(format!(
                    "{id}: brute force si={} uniform={}, closed form si={} uniform={}; action={:?}",
                    brute.si,
                    brute.uniform,
                    closed.si,
                    closed.uniform,
                    act.action_rows()
                ));
            }
            for failure in properties::band_act_checks(&act, &brute) {
                property_failures.push(format!("{id}: {failure}"));
            }
            let zero_count = closed.zeros.len();
            totals.add(closed.verdict);
            by_size_and_zeros
                .entry(format!("{}/{}", act.size(), zero_count))
                .or_default()
                .add(closed.verdict);
            rows.push(AtlasRow {
                id,
                states: act.size(),
                zero_count,
                si: brute.si,
                irreducible: brute.irreducible,
                uniform: brute.uniform,
                predicted_si: closed.si,
                predicted_uniform: closed.uniform,
                verdict: closed.verdict,
                case: closed.case_tag.as_str().to_string(),
            });
        }
    }

    Ok(AtlasReport {
        rows,
        summary: AtlasSummary {
            band: format!("{band_i}x{band_lambda}"),
            max_states,
            totals,
            by_size_and_zeros,
            disagreements,
            property_failures,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semigroup::{left_zero, right_zero};

    fn no_dedup() -> EnumerationBounds {
        EnumerationBounds {
            dedup: false,
            ..Default::default()
        }
    }

    /// Filters every raw table through full validation.
    fn brute_count(s: &Arc<FiniteSemigroup>, n: usize) -> usize {
        let m = s.order();
        let total = n.pow((n * m) as u32);
        (0..total)
            .filter(|&code| {
                let mut c = code;
                let flat: Vec<usize> = (0..n * m)
                    .map(|_| {
                        let d = c % n;
                        c /= n;
                        d
                    })
                    .collect();
                RightAct::from_flat(s.clone(), state_labels(n), flat).is_ok()
            })
            .count()
    }

    #[test]
    fn right_zero_two_states() {
        let s = Arc::new(right_zero(2).unwrap());
        assert_eq!(brute_count(&s, 2), 5);
        assert_eq!(enumerate_acts(s, 2, &no_dedup()).unwrap().count(), 5);
    }

    #[test]
    fn matches_raw_filter_on_small_cases() {
        for (i, l) in [(1, 2), (2, 1), (2, 2), (1, 3)] {
            let s = Arc::new(rectangular_band(i, l).unwrap());
            for n in 1..=3 {
                if raw_table_count(n, s.order()) > 600_000 {
                    continue;
                }
                assert_eq!(
                    enumerate_acts(s.clone(), n, &no_dedup()).unwrap().count(),
                    brute_count(&s, n),
                    "band {i}x{l}, n={n}"
                );
            }
        }
    }

    #[test]
    fn single_state() {
        let s = Arc::new(rectangular_band(2, 2).unwrap());
        assert_eq!(enumerate_acts(s, 1, &no_dedup()).unwrap().count(), 1);
    }

    #[test]
    fn output_is_lexicographic() {
        let s = Arc::new(left_zero(2).unwrap());
        let tables: Vec<Vec<usize>> = enumerate_acts(s, 3, &no_dedup())
            .unwrap()
            .map(|a| a.action_flat().to_vec())
            .collect();
        assert!(tables.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn dedup_keeps_one_per_class() {
        let s = Arc::new(left_zero(2).unwrap());
        let all: Vec<RightAct> = enumerate_acts(s.clone(), 3, &no_dedup()).unwrap().collect();
        let classes: BTreeSet<Vec<usize>> = all.iter().map(canonical_form).collect();
        let reps: Vec<RightAct> = enumerate_acts(s, 3, &EnumerationBounds::default()).unwrap().collect();
        assert_eq!(reps.len(), classes.len());
        for r in &reps {
            assert_eq!(canonical_form(r), r.action_flat());
        }
        // the two-zero SI act {θ1, θ2, a} with a·u = θ1, a·v = θ2
        let si_act = RightAct::new(
            Arc::new(left_zero(2).unwrap()),
            state_labels(3),
            vec![vec![0, 0], vec![1, 1], vec![0, 1]],
        )
        .unwrap();
        assert!(reps.iter().any(|r| r.action_flat() == canonical_form(&si_act).as_slice()));
    }

    #[test]
    fn budget_guard() {
        let s = Arc::new(rectangular_band(2, 2).unwrap());
        let err = enumerate_acts(s.clone(), 4, &EnumerationBounds::default()).err().unwrap();
        assert_eq!(
            err,
            Error::BudgetExceeded {
                raw: 4u128.pow(16),
                budget: DEFAULT_BUDGET
            }
        );
        let ok = EnumerationBounds {
            override_budget: true,
            ..Default::default()
        };
        assert!(enumerate_acts(s, 4, &ok).is_ok());
    }

    #[test]
    fn rees_enumeration_counts() {
        let b = EnumerationBounds {
            band_i: 1,
            band_lambda: 1,
            groups: vec!["Z2".into()],
            ..Default::default()
        };
        assert_eq!(enumerate_rees(&b, true).unwrap().len(), 2);
        let b = EnumerationBounds {
            band_i: 1,
            band_lambda: 2,
            groups: vec!["Z4".into(), "Z6".into()],
            max_sandwich_samples: 1000,
            ..Default::default()
        };
        let specs = enumerate_rees(&b, true).unwrap();
        let two: Vec<_> = specs.iter().filter(|s| s.lambda_size() == 2).collect();
        assert_eq!(two.len(), 16 + 36);
        let bad = EnumerationBounds {
            groups: vec!["D5".into()],
            ..Default::default()
        };
        assert!(matches!(enumerate_rees(&bad, true), Err(Error::UnknownGroup(_))));
    }

    #[test]
    fn sampling_is_seeded_and_includes_identity() {
        let a = sandwiches(5, 2, 2, true, 10, 7);
        let b = sandwiches(5, 2, 2, true, 10, 7);
        assert_eq!(a, b);
        assert_eq!(a.len(), 10);
        assert_eq!(a[0], vec![vec![SandwichEntry::Group(0); 2]; 2]);
        assert!(a.iter().all(|p| is_regular(p)));
    }

    #[test]
    fn small_atlas_agrees() {
        let report = build_atlas(1, 2, 3, &EnumerationBounds::default()).unwrap();
        assert!(report.summary.disagreements.is_empty(), "{:?}", report.summary.disagreements);
        assert!(report.summary.property_failures.is_empty(), "{:?}", report.summary.property_failures);
        assert_eq!(report.summary.totals.instances, report.rows.len());
    }
}
