//! Subdirectly irreducible and uniform acts over rectangular bands, decided
//! from the action table by zero count.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::act::RightAct;
use crate::error::{Error, Result};
use crate::semigroup::BandShape;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    #[serde(rename = "SI")]
    Si,
    UniformNotSi,
    Neither,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CaseTag {
    NoZeroSimplePair,
    OneZeroKernel,
    TwoZeroSeparated,
    NotClassified,
}

impl CaseTag {
    pub fn as_str(self) -> &'static str {
        match self {
            CaseTag::NoZeroSimplePair => "no-zero-simple-pair",
            CaseTag::OneZeroKernel => "one-zero-kernel",
            CaseTag::TwoZeroSeparated => "two-zero-separated",
            CaseTag::NotClassified => "not-classified",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RectBandClassification {
    pub si: bool,
    pub uniform: bool,
    pub verdict: Verdict,
    pub case_tag: CaseTag,
    pub zeros: Vec<usize>,
    /// `(Λ1, Λ2)` as Λ-coordinates of the band.
    pub lambda_partition: Option<(Vec<usize>, Vec<usize>)>,
    /// `Ker(A) = {x, y}`, or the two zeros.
    pub kernel_states: Option<(usize, usize)>,
    /// Named state lists explaining a failed condition.
    pub witnesses: BTreeMap<String, Vec<usize>>,
}

struct Ctx<'a> {
    act: &'a RightAct,
    shape: BandShape,
    zeros: Vec<usize>,
    witnesses: BTreeMap<String, Vec<usize>>,
}

impl Ctx<'_> {
    fn orbit(&self, a: usize) -> BTreeSet<usize> {
        self.act.cyclic_subact(a).0.into_iter().collect()
    }

    /// `a·(I×Λ')` as a set.
    fn image_on(&self, a: usize, lambdas: &[usize]) -> BTreeSet<usize> {
        (0..self.shape.i_size)
            .flat_map(|i| lambdas.iter().map(move |&l| (i, l)))
            .map(|(i, l)| self.act.act(a, self.shape.element(i, l)))
            .collect()
    }

    /// Every pair of distinct states not matched by `skip` is separated by
    /// some element of `S`.
    fn separated_except(&mut self, skip: impl Fn(usize, usize) -> bool) -> bool {
        let n = self.act.size();
        for a in 0..n {
            for b in a + 1..n {
                if !skip(a, b) && self.act.separating_element(a, b).is_none() {
                    self.witnesses.insert("inseparable_pair".into(), vec![a, b]);
                    return false;
                }
            }
        }
        true
    }

    /// Splits Λ by where `x` sends it: `Λ1` onto `x`, `Λ2` onto `y`.
    fn lambda_split(&self, x: usize, y: usize) -> Option<(Vec<usize>, Vec<usize>)> {
        let (mut l1, mut l2) = (Vec::new(), Vec::new());
        for l in 0..self.shape.lambda_size {
            let img = self.image_on(x, &[l]);
            if img == BTreeSet::from([x]) {
                l1.push(l);
            } else if img == BTreeSet::from([y]) {
                l2.push(l);
            } else {
                return None;
            }
        }
        (!l1.is_empty() && !l2.is_empty()).then_some((l1, l2))
    }

    fn no_zero_si(&self) -> (bool, Option<(Vec<usize>, Vec<usize>)>) {
        // simple act of order 2
        if self.act.size() != 2 {
            return (false, None);
        }
        (true, self.lambda_split(0, 1))
    }

    fn no_zero_uniform(&mut self) -> bool {
        let Some(kernel) = self.act.kernel() else {
            return false;
        };
        let kernel_set: BTreeSet<usize> = kernel.iter().copied().collect();
        if let Some(a) = (0..self.act.size()).find(|&a| self.orbit(a) != kernel_set) {
            self.witnesses.insert("orbit_not_kernel".into(), vec![a]);
            return false;
        }
        self.separated_except(|a, b| kernel_set.contains(&a) && kernel_set.contains(&b))
    }

    fn one_zero_si(&mut self) -> (bool, Option<(Vec<usize>, Vec<usize>)>, Option<(usize, usize)>) {
        let theta = self.zeros[0];
        let n = self.act.size();
        if n == 2 {
            // 0-simple of order 2
            return (true, None, None);
        }
        let Some(kernel) = self.act.kernel() else {
            return (false, None, None);
        };
        let [x, y] = kernel[..] else {
            self.witnesses.insert("kernel".into(), kernel);
            return (false, None, None);
        };
        if x == theta || y == theta {
            self.witnesses.insert("kernel".into(), kernel);
            return (false, None, None);
        }
        let Some((l1, l2)) = self.lambda_split(x, y) else {
            return (false, None, Some((x, y)));
        };
        for a in (0..n).filter(|&a| a != theta) {
            let on1 = self.image_on(a, &l1);
            let on2 = self.image_on(a, &l2);
            let allowed1 = BTreeSet::from([x, theta]);
            let allowed2 = BTreeSet::from([y, theta]);
            let ok = if a == x || a == y {
                on1.is_subset(&allowed1) && on2.is_subset(&allowed2)
            } else {
                on1 == allowed1 && on2 == allowed2
            };
            if !ok {
                self.witnesses.insert("misplaced_image".into(), vec![a]);
                return (false, Some((l1, l2)), Some((x, y)));
            }
        }
        let si = self.separated_except(|a, b| (a, b) == (x.min(y), x.max(y)));
        (si, Some((l1, l2)), Some((x, y)))
    }

    fn one_zero_uniform(&mut self) -> bool {
        let theta = self.zeros[0];
        let n = self.act.size();
        if n == 2 {
            return true;
        }
        let Some(kernel) = self.act.kernel() else {
            return false;
        };
        let kernel_set: BTreeSet<usize> = kernel.iter().copied().collect();
        let mut with_zero = kernel_set.clone();
        with_zero.insert(theta);
        for a in (0..n).filter(|&a| a != theta) {
            let orbit = self.orbit(a);
            if orbit != kernel_set && orbit != with_zero {
                self.witnesses.insert("orbit_not_kernel".into(), vec![a]);
                return false;
            }
        }
        self.separated_except(|a, b| kernel_set.contains(&a) && kernel_set.contains(&b))
    }

    fn two_zero_si(&mut self) -> bool {
        let (t1, t2) = (self.zeros[0], self.zeros[1]);
        let n = self.act.size();
        let m = self.act.semigroup().order();
        for a in 0..n {
            for b in a + 1..n {
                let hit = (0..m).any(|s| {
                    let (x, y) = (self.act.act(a, s), self.act.act(b, s));
                    (x, y) == (t1, t2) || (x, y) == (t2, t1)
                });
                if !hit {
                    self.witnesses.insert("pair_missing_zeros".into(), vec![a, b]);
                    return false;
                }
            }
        }
        true
    }

    fn two_zero_uniform(&mut self) -> bool {
        let image = self.act.image();
        if image != self.zeros {
            self.witnesses.insert("image".into(), image);
            return false;
        }
        self.separated_except(|_, _| false)
    }
}

/// Classifies an act over a rectangular band by its number of zeros.
///
/// * no zero: SI iff `A` is a simple act of order 2; uniform iff every
///   `a·S` equals `Ker A` and pairs not inside `Ker A` are separated.
/// * one zero `θ`: SI iff `|A| = 2`, or `Ker A = {x, y}` with nonzero
///   `x, y`, Λ splits into `Λ1, Λ2` with `a(I×Λ1) ⊆ {x,θ}`,
///   `a(I×Λ2) ⊆ {y,θ}` for nonzero `a` (equal for `a ∉ {x,y}`), and every
///   pair other than `{x,y}` is separated. Uniform iff `|A| = 2`, or every
///   nonzero `a·S` is `Ker A` or `Ker A ∪ {θ}` and pairs not inside
///   `Ker A` are separated.
/// * two zeros: SI iff every pair of distinct states is sent onto
///   `{θ1, θ2}` by some element; uniform iff `A·S = Z(A)` and `A` is
///   separated.
/// * three or more zeros: neither, since two of the zero pairs are
///   subacts meeting in one state.
pub fn classify_act_rect_band(act: &RightAct) -> Result<RectBandClassification> {
    let shape = act.semigroup().band_shape().ok_or(Error::NotARectangularBand)?;
    let mut ctx = Ctx {
        act,
        shape,
        zeros: act.zeros(),
        witnesses: BTreeMap::new(),
    };
    let n = act.size();
    let (si, uniform, case_tag, lambda_partition, kernel_states) = if n == 1 {
        (false, true, CaseTag::NotClassified, None, None)
    } else {
        match ctx.zeros.len() {
            0 => {
                let (si, partition) = ctx.no_zero_si();
                let uniform = ctx.no_zero_uniform();
                let case = if si { CaseTag::NoZeroSimplePair } else { CaseTag::NotClassified };
                (si, uniform, case, partition, si.then_some((0, 1)))
            }
            1 => {
                let (si, partition, kernel) = ctx.one_zero_si();
                let uniform = ctx.one_zero_uniform();
                let case = if si { CaseTag::OneZeroKernel } else { CaseTag::NotClassified };
                (si, uniform, case, partition.filter(|_| si), kernel.filter(|_| si))
            }
            2 => {
                let si = ctx.two_zero_si();
                let uniform = ctx.two_zero_uniform();
                let case = if si { CaseTag::TwoZeroSeparated } else { CaseTag::NotClassified };
                let zeros = (ctx.zeros[0], ctx.zeros[1]);
                (si, uniform, case, None, si.then_some(zeros))
            }
            _ => {
                ctx.witnesses.insert("zeros".into(), ctx.zeros.clone());
                (false, false, CaseTag::NotClassified, None, None)
            }
        }
    };
    let verdict = match (si, uniform) {
        (true, _) => Verdict::Si,
        (false, true) => Verdict::UniformNotSi,
        (false, false) => Verdict::Neither,
    };
    Ok(RectBandClassification {
        si,
        uniform,
        verdict,
        case_tag,
        zeros: ctx.zeros,
        lambda_partition,
        kernel_states,
        witnesses: ctx.witnesses,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub holds: bool,
    pub states: usize,
    pub bound: u128,
    pub violations: Vec<String>,
}

/// For an SI act with two zeros over `I×Λ`: every nonzero `a` has
/// `a·S = {θ1, θ2}`, and `|A| ≤ 2^|I|`.
pub fn two_zero_bound_check(act: &RightAct) -> Result<BoundReport> {
    let shape = act.semigroup().band_shape().ok_or(Error::NotARectangularBand)?;
    let zeros = act.zeros();
    if zeros.len() != 2 {
        return Err(Error::PreconditionViolated(format!(
            "expected two zeros, found {}",
            zeros.len()
        )));
    }
    let mut violations = Vec::new();
    for a in (0..act.size()).filter(|a| !zeros.contains(a)) {
        let orbit = act.cyclic_subact(a).0;
        if orbit != zeros {
            violations.push(format!(
                "{}·S = {:?}, expected the two zeros",
                act.state_label(a),
                orbit.iter().map(|&s| act.state_label(s)).collect::<Vec<_>>()
            ));
        }
    }
    let bound = 1u128.checked_shl(shape.i_size as u32).unwrap_or(u128::MAX);
    if act.size() as u128 > bound {
        violations.push(format!("|A| = {} exceeds 2^|I| = {bound}", act.size()));
    }
    Ok(BoundReport {
        holds: violations.is_empty(),
        states: act.size(),
        bound,
        violations,
    })
}
