use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;

use crate::act::RightAct;
use crate::congruence::{summarize, Congruence};
use crate::error::{Error, Result};
use crate::rees::{rees_matrix, ReesElement, ReesMatrixSpec, SandwichEntry};

/// The group element `X = a·p_{λi}·(b·p_{μi})⁻¹` attached to a generating
/// pair `m = (i,a,λ)`, `n = (i,b,μ)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MonocyclicDescriptor {
    pub x_element: usize,
    pub generator_pair: (ReesElement, ReesElement),
    pub cyclic_order: usize,
}

fn group_entry(spec: &ReesMatrixSpec, lambda: usize) -> usize {
    match spec.entry(lambda, 0) {
        SandwichEntry::Group(p) => p,
        SandwichEntry::Zero => unreachable!("regular single-column sandwich has no zero"),
    }
}

/// `ρ(m, n)` on the regular act of `M⁰[G; {i}, Λ; P]`, from the explicit
/// description of its classes.
///
/// A pair involving the zero generates `∇`. Otherwise, with `H = ⟨X⟩`, the
/// classes are the zero, the merged cosets `H·a × {λ} ∪ H·b × {μ}`, and
/// `H·z × {ϑ}` for every other nonzero `(i,z,ϑ)`.
pub fn monocyclic_closed_form(
    spec: &ReesMatrixSpec,
    act: &RightAct,
    m: usize,
    n: usize,
) -> Result<(Congruence, Option<MonocyclicDescriptor>)> {
    if spec.i_size() != 1 || !spec.with_zero() {
        return Err(Error::PreconditionViolated(
            "closed form needs |I| = 1 and an adjoined zero".into(),
        ));
    }
    if act.size() != spec.order() {
        return Err(Error::ActMismatch);
    }
    if m == n || m >= act.size() || n >= act.size() {
        return Err(Error::PreconditionViolated(
            "generating pair must be two distinct states".into(),
        ));
    }
    let (em, en) = (spec.decode(m), spec.decode(n));
    let (
        ReesElement::Triple { g: a, lambda, .. },
        ReesElement::Triple { g: b, lambda: mu, .. },
    ) = (em, en)
    else {
        return Ok((Congruence::full(act), None));
    };

    let grp = spec.group();
    let x = grp.mul(
        grp.mul(a, group_entry(spec, lambda)),
        grp.inv(grp.mul(b, group_entry(spec, mu))),
    );
    let powers = grp.powers(x);
    let descriptor = MonocyclicDescriptor {
        x_element: x,
        generator_pair: (em, en),
        cyclic_order: powers.len(),
    };

    // coset H·z × {ϑ} is keyed by its least member
    let coset_key = |z: usize, theta: usize| {
        let rep = powers.iter().map(|&h| grp.mul(h, z)).min().expect("identity present");
        (rep, theta)
    };
    let mut key_to_class: HashMap<(usize, usize), usize> = HashMap::new();
    let generator_keys = [coset_key(a, lambda), coset_key(b, mu)];
    let mut class_of = Vec::with_capacity(act.size());
    for s in 0..act.size() {
        let class = match spec.decode(s) {
            ReesElement::Zero => 0,
            ReesElement::Triple { g, lambda: theta, .. } => {
                let mut key = coset_key(g, theta);
                if generator_keys.contains(&key) {
                    key = generator_keys[0];
                }
                let next = key_to_class.len() + 1;
                *key_to_class.entry(key).or_insert(next)
            }
        };
        class_of.push(class);
    }
    Ok((Congruence::from_classes(act, class_of), Some(descriptor)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PredictionSource {
    ClosedForm,
    /// Two-element semigroups fall outside the characterizations.
    BruteForce,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ZeroSimplePrediction {
    pub si: bool,
    pub irreducible: bool,
    pub uniform: bool,
    pub source: PredictionSource,
}

/// SI, irreducibility and uniformity of the right regular act of a
/// completely 0-simple semigroup.
///
/// Uniform iff `|I| = 1`. SI iff `|I| = |Λ| = 1` and `G` is cocyclic;
/// irreducible iff `|I| = |Λ| = 1` and nontrivial subgroups of `G` meet
/// nontrivially. The one extra case is `G` trivial with `|I| = 1`,
/// `|Λ| = 2`: the three-element semigroup `{0, e_λ, e_μ}` is the
/// two-element right zero semigroup with a zero adjoined, whose only
/// non-diagonal congruences are `{e_λ, e_μ}|{0}` and `∇`, so it is SI.
pub fn predict_completely_0_simple(spec: &ReesMatrixSpec) -> Result<ZeroSimplePrediction> {
    if !spec.with_zero() {
        return Err(Error::PreconditionViolated(
            "completely 0-simple prediction needs an adjoined zero".into(),
        ));
    }
    if spec.order() <= 2 {
        let act = RightAct::regular(Arc::new(rees_matrix(spec)?));
        let s = summarize(&act)?;
        return Ok(ZeroSimplePrediction {
            si: s.si,
            irreducible: s.irreducible,
            uniform: s.uniform,
            source: PredictionSource::BruteForce,
        });
    }
    let grp = spec.group();
    let uniform = spec.i_size() == 1;
    let single = uniform && spec.lambda_size() == 1;
    let right_zero_pair = uniform && spec.lambda_size() == 2 && grp.order() == 1;
    Ok(ZeroSimplePrediction {
        si: right_zero_pair || (single && grp.is_cocyclic()?),
        irreducible: right_zero_pair || (single && grp.nontrivial_subgroups_pairwise_intersect()?),
        uniform,
        source: PredictionSource::ClosedForm,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SimplePrediction {
    pub uniform: bool,
    pub source: PredictionSource,
}

/// Uniformity of the right regular act of a completely simple semigroup:
/// `|I| = 1` once `|S| > 2`; both two-element bands are uniform.
pub fn predict_completely_simple(spec: &ReesMatrixSpec) -> Result<SimplePrediction> {
    if spec.with_zero() {
        return Err(Error::PreconditionViolated(
            "completely simple prediction needs a spec without zero".into(),
        ));
    }
    Ok(if spec.order() <= 2 {
        SimplePrediction {
            uniform: true,
            source: PredictionSource::BruteForce,
        }
    } else {
        SimplePrediction {
            uniform: spec.i_size() == 1,
            source: PredictionSource::ClosedForm,
        }
    })
}
