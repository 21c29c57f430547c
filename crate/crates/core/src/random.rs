//! Seeded random acts: quotients of small free acts.

use std::sync::Arc;

use rand::Rng;

use crate::act::RightAct;
use crate::congruence::{closure, Congruence};
use crate::enumerate::state_labels;
use crate::semigroup::FiniteSemigroup;

/// `A/ρ`, states labelled `q0, q1, …` in class order.
pub fn quotient(act: &RightAct, rho: &Congruence) -> RightAct {
    let classes = rho.classes();
    let m = act.semigroup().order();
    let flat = classes
        .iter()
        .flat_map(|c| (0..m).map(|s| rho.class_of()[act.act(c[0], s)]))
        .collect();
    RightAct::from_flat(act.semigroup_arc().clone(), state_labels(classes.len()), flat)
        .expect("quotient by a right congruence is an act")
}

/// The free act on `generators` generators: states `(x, w)` with
/// `w ∈ S¹`, acted on by `(x, w)·t = (x, wt)`.
pub fn free_act(semigroup: Arc<FiniteSemigroup>, generators: usize) -> RightAct {
    let m = semigroup.order();
    // column m stands for the adjoined identity
    let width = m + 1;
    let mut flat = Vec::with_capacity(generators * width * m);
    for x in 0..generators {
        for w in 0..width {
            for t in 0..m {
                let wt = if w == m { t } else { semigroup.mul(w, t) };
                flat.push(x * width + wt);
            }
        }
    }
    RightAct::from_flat(semigroup, state_labels(generators * width), flat).expect("free acts are acts")
}

/// A random act with at most `max_states` states: a free act on one to
/// three generators, quotiented by random pairs until small enough.
pub fn random_act<R: Rng>(semigroup: Arc<FiniteSemigroup>, max_states: usize, rng: &mut R) -> RightAct {
    let generators = rng.gen_range(1..=3);
    let free = free_act(semigroup, generators);
    let target = rng.gen_range(1..=max_states.max(1));
    let n = free.size();
    let mut pairs = Vec::new();
    let mut rho = Congruence::diagonal(&free);
    while rho.class_count() > target {
        pairs.push((rng.gen_range(0..n), rng.gen_range(0..n)));
        rho = closure(&free, &pairs);
    }
    quotient(&free, &rho)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn random_acts_respect_bound_and_seed() {
        let s = Arc::new(catalog::monogenic(2, 2));
        let mut r1 = ChaCha8Rng::seed_from_u64(3);
        let mut r2 = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let a = random_act(s.clone(), 5, &mut r1);
            let b = random_act(s.clone(), 5, &mut r2);
            assert!(a.size() <= 5);
            assert_eq!(a, b);
        }
    }

    #[test]
    fn free_act_size() {
        let s = Arc::new(catalog::chain(3));
        assert_eq!(free_act(s, 2).size(), 8);
    }
}
