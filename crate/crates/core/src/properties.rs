//! Structural consequences of SI and uniformity, checked on concrete
//! instances. Each function returns human-readable failure lines; an empty
//! list means the instance passed.

use std::sync::Arc;

use crate::act::RightAct;
use crate::closedform::two_zero_bound_check;
use crate::congruence::{monocyclic, summarize, CongruenceSummary};
use crate::semigroup::FiniteSemigroup;

/// If `S_S` is uniform, then `x·y = y` forces `x` to be a left identity or
/// `y` to be a left zero.
pub fn idempotent_dichotomy(semigroup: &FiniteSemigroup) -> Vec<String> {
    let act = RightAct::regular(Arc::new(semigroup.clone()));
    match summarize(&act) {
        Ok(s) if s.uniform => {}
        Ok(_) => return Vec::new(),
        Err(e) => return vec![format!("summary failed: {e}")],
    }
    let n = semigroup.order();
    let mut out = Vec::new();
    for x in 0..n {
        for y in 0..n {
            if semigroup.mul(x, y) == y && !semigroup.is_left_identity(x) && !semigroup.is_left_zero(y) {
                out.push(format!(
                    "uniform regular act but {}·{} = {} with neither a left identity nor a left zero",
                    semigroup.label(x),
                    semigroup.label(y),
                    semigroup.label(y)
                ));
            }
        }
    }
    out
}

/// SI implies irreducible implies uniform.
pub fn implication_chain(summary: &CongruenceSummary) -> Vec<String> {
    let mut out = Vec::new();
    if summary.si && !summary.irreducible {
        out.push("SI but not irreducible".into());
    }
    if summary.irreducible && !summary.uniform {
        out.push("irreducible but not uniform".into());
    }
    out
}

/// In a uniform act any two subacts with at least two states share at
/// least two states.
pub fn uniform_subacts_meet(act: &RightAct, summary: &CongruenceSummary) -> Vec<String> {
    if !summary.uniform {
        return Vec::new();
    }
    let analysis = match act.analyze() {
        Ok(a) => a,
        Err(e) => return vec![format!("analysis failed: {e}")],
    };
    let big: Vec<&Vec<usize>> = analysis.subacts.iter().filter(|b| b.len() >= 2).collect();
    let mut out = Vec::new();
    for (k, b) in big.iter().enumerate() {
        for c in &big[k + 1..] {
            let common = b.iter().filter(|x| c.contains(x)).count();
            if common < 2 {
                out.push(format!("uniform act with subacts {b:?} and {c:?} meeting in {common} state(s)"));
            }
        }
    }
    out
}

/// A uniform act that is not separated has a kernel, and the kernel (when
/// present) is the intersection of all subacts with at least two states.
pub fn kernel_checks(act: &RightAct, summary: &CongruenceSummary) -> Vec<String> {
    let analysis = match act.analyze() {
        Ok(a) => a,
        Err(e) => return vec![format!("analysis failed: {e}")],
    };
    let mut out = Vec::new();
    if summary.uniform && !analysis.is_separated && analysis.kernel.is_none() {
        out.push("uniform and not separated, yet no kernel".into());
    }
    let big: Vec<&Vec<usize>> = analysis.subacts.iter().filter(|b| b.len() >= 2).collect();
    if let Some(kernel) = &analysis.kernel {
        let meet: Vec<usize> = (0..act.size()).filter(|x| big.iter().all(|b| b.contains(x))).collect();
        if &meet != kernel {
            out.push(format!("kernel {kernel:?} differs from the meet {meet:?}"));
        }
    }
    if analysis.kernel != act.kernel() {
        out.push(format!(
            "kernel from subacts {:?} differs from kernel from generators {:?}",
            analysis.kernel,
            act.kernel()
        ));
    }
    out
}

/// Checks specific to acts over a rectangular band `I×Λ`.
///
/// For SI acts: without zeros there are exactly two states; with two zeros
/// every nonzero `a·S` is the zero pair, `|A| ≤ 2^|I|`, and every pair of
/// distinct states is sent onto the zero pair; and whenever
/// `x = a·(i,λ) ≠ y = a·(i,μ)`, `ρ(x,y)` merges only `x` and `y` and lies in
/// every non-diagonal monocyclic congruence. The generic checks above run
/// on every act.
pub fn band_act_checks(act: &RightAct, summary: &CongruenceSummary) -> Vec<String> {
    let mut out = implication_chain(summary);
    out.extend(uniform_subacts_meet(act, summary));
    out.extend(kernel_checks(act, summary));
    let Some(shape) = act.semigroup().band_shape() else {
        out.push("semigroup is not a rectangular band".into());
        return out;
    };
    if !summary.si {
        return out;
    }
    let zeros = act.zeros();
    let m = act.semigroup().order();
    match zeros.len() {
        0 if act.size() != 2 => out.push(format!("SI without zeros on {} states", act.size())),
        2 => {
            match two_zero_bound_check(act) {
                Ok(r) => out.extend(r.violations),
                Err(e) => out.push(format!("bound check failed: {e}")),
            }
            let (t1, t2) = (zeros[0], zeros[1]);
            for a in 0..act.size() {
                for b in a + 1..act.size() {
                    let hit = (0..m).any(|s| {
                        let pair = (act.act(a, s), act.act(b, s));
                        pair == (t1, t2) || pair == (t2, t1)
                    });
                    if !hit {
                        out.push(format!("SI with two zeros but ({a},{b}) never lands on the zero pair"));
                    }
                }
            }
        }
        _ => {}
    }

    let principal = &summary.principal_nondiagonal;
    for a in 0..act.size() {
        for i in 0..shape.i_size {
            for l in 0..shape.lambda_size {
                for mu in l + 1..shape.lambda_size {
                    let x = act.act(a, shape.element(i, l));
                    let y = act.act(a, shape.element(i, mu));
                    if x == y {
                        continue;
                    }
                    let rho = monocyclic(act, x, y);
                    let merged: Vec<Vec<usize>> = rho.classes().into_iter().filter(|c| c.len() > 1).collect();
                    if merged != vec![vec![x.min(y), x.max(y)]] {
                        out.push(format!("ρ({x},{y}) has non-singleton classes {merged:?}"));
                    }
                    if let Some(c) = principal.iter().find(|c| !rho.is_contained_in(c)) {
                        out.push(format!("ρ({x},{y}) not contained in {:?}", c.classes()));
                    }
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::semigroup::{left_zero, rectangular_band};

    #[test]
    fn catalog_passes_idempotent_dichotomy() {
        for (name, s) in catalog::semigroups() {
            assert!(idempotent_dichotomy(&s).is_empty(), "{name}");
        }
    }

    #[test]
    fn two_zero_si_act_passes() {
        let act = RightAct::new(
            Arc::new(left_zero(2).unwrap()),
            vec!["t1".into(), "t2".into(), "a".into()],
            vec![vec![0, 0], vec![1, 1], vec![0, 1]],
        )
        .unwrap();
        let s = summarize(&act).unwrap();
        assert!(s.si);
        assert!(band_act_checks(&act, &s).is_empty());
    }

    #[test]
    fn flags_broken_chain() {
        let act = RightAct::regular(Arc::new(rectangular_band(2, 2).unwrap()));
        let mut s = summarize(&act).unwrap();
        s.si = true;
        s.irreducible = false;
        assert_eq!(implication_chain(&s), vec!["SI but not irreducible".to_string()]);
    }
}
