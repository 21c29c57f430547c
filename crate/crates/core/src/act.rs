//! Right acts over finite semigroups.

use std::collections::hash_map::DefaultHasher;
use std::collections::BTreeSet;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::semigroup::FiniteSemigroup;

/// Default bound on `|A|` for full subact enumeration.
pub const DEFAULT_SUBACT_LIMIT: usize = 12;

/// A right act `A_S`: `act(a, s)` is the index of `a·s`.
#[derive(Debug, Clone)]
pub struct RightAct {
    semigroup: Arc<FiniteSemigroup>,
    states: Vec<String>,
    action: Vec<usize>,
    fingerprint: u64,
}

impl PartialEq for RightAct {
    fn eq(&self, other: &Self) -> bool {
        self.fingerprint == other.fingerprint
            && self.action == other.action
            && self.states == other.states
            && self.semigroup == other.semigroup
    }
}

impl Eq for RightAct {}

impl RightAct {
    /// Validates an action table (`action[a][s] = a·s`) against `a(st) = (as)t`.
    pub fn new(
        semigroup: Arc<FiniteSemigroup>,
        states: Vec<String>,
        action: Vec<Vec<usize>>,
    ) -> Result<Self> {
        let n = states.len();
        let m = semigroup.order();
        if n == 0 {
            return Err(Error::ShapeMismatch("act has no states".into()));
        }
        if action.len() != n {
            return Err(Error::ShapeMismatch(format!(
                "action has {} rows for {n} states",
                action.len()
            )));
        }
        let mut flat = Vec::with_capacity(n * m);
        for (a, row) in action.iter().enumerate() {
            if row.len() != m {
                return Err(Error::ShapeMismatch(format!(
                    "action row {a} has {} entries for {m} semigroup elements",
                    row.len()
                )));
            }
            for (s, &v) in row.iter().enumerate() {
                if v >= n {
                    return Err(Error::IndexOutOfRange {
                        index: v,
                        size: n,
                        context: format!("action[{a}][{s}]"),
                    });
                }
                flat.push(v);
            }
        }
        Self::from_flat(semigroup, states, flat)
    }

    pub(crate) fn from_flat(
        semigroup: Arc<FiniteSemigroup>,
        states: Vec<String>,
        action: Vec<usize>,
    ) -> Result<Self> {
        let n = states.len();
        let m = semigroup.order();
        debug_assert_eq!(action.len(), n * m);
        for a in 0..n {
            for s in 0..m {
                let as_ = action[a * m + s];
                for t in 0..m {
                    if action[as_ * m + t] != action[a * m + semigroup.mul(s, t)] {
                        return Err(Error::IncompatibleAction { a, s, t });
                    }
                }
            }
        }
        let mut h = DefaultHasher::new();
        semigroup.hash(&mut h);
        states.hash(&mut h);
        action.hash(&mut h);
        Ok(Self {
            semigroup,
            states,
            action,
            fingerprint: h.finish(),
        })
    }

    /// The semigroup acting on itself by right multiplication.
    pub fn regular(semigroup: Arc<FiniteSemigroup>) -> Self {
        let states = semigroup.labels().to_vec();
        let n = semigroup.order();
        let action = (0..n * n).map(|k| semigroup.mul(k / n, k % n)).collect();
        Self::from_flat(semigroup, states, action).expect("associativity implies compatibility")
    }

    pub fn semigroup(&self) -> &FiniteSemigroup {
        &self.semigroup
    }

    pub fn semigroup_arc(&self) -> &Arc<FiniteSemigroup> {
        &self.semigroup
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.states.len()
    }

    #[inline]
    pub fn act(&self, a: usize, s: usize) -> usize {
        self.action[a * self.semigroup.order() + s]
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn state_label(&self, a: usize) -> &str {
        &self.states[a]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.states.iter().position(|l| l == label)
    }

    pub fn action_rows(&self) -> Vec<Vec<usize>> {
        self.action
            .chunks(self.semigroup.order())
            .map(<[usize]>::to_vec)
            .collect()
    }

    pub(crate) fn action_flat(&self) -> &[usize] {
        &self.action
    }

    /// Identifies the act; congruences remember it to reject mixing.
    pub fn fingerprint(&self) -> u64 {
        self.fingerprint
    }

    pub fn is_zero(&self, a: usize) -> bool {
        (0..self.semigroup.order()).all(|s| self.act(a, s) == a)
    }

    /// `Z(A)`.
    pub fn zeros(&self) -> Vec<usize> {
        (0..self.size()).filter(|&a| self.is_zero(a)).collect()
    }

    /// `x·S` and `x·S¹`, both sorted.
    pub fn cyclic_subact(&self, x: usize) -> (Vec<usize>, Vec<usize>) {
        let orbit: BTreeSet<usize> = (0..self.semigroup.order()).map(|s| self.act(x, s)).collect();
        let mut with_x = orbit.clone();
        with_x.insert(x);
        (orbit.into_iter().collect(), with_x.into_iter().collect())
    }

    /// `A·S`.
    pub fn image(&self) -> Vec<usize> {
        let set: BTreeSet<usize> = self.action.iter().copied().collect();
        set.into_iter().collect()
    }

    pub fn is_subact(&self, set: &[usize]) -> bool {
        let mut member = vec![false; self.size()];
        for &a in set {
            member[a] = true;
        }
        set.iter()
            .all(|&a| (0..self.semigroup.order()).all(|s| member[self.act(a, s)]))
    }

    /// Some `s ∈ S` with `a·s ≠ b·s`.
    pub fn separating_element(&self, a: usize, b: usize) -> Option<usize> {
        (0..self.semigroup.order()).find(|&s| self.act(a, s) != self.act(b, s))
    }

    /// First pair of distinct states that no element of `S` separates.
    pub fn inseparable_pair(&self) -> Option<(usize, usize)> {
        let n = self.size();
        (0..n)
            .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
            .find(|&(a, b)| self.separating_element(a, b).is_none())
    }

    pub fn is_separated(&self) -> bool {
        self.inseparable_pair().is_none()
    }

    /// Subacts with at least two states that every such subact contains:
    /// `x·S¹` for nonzero `x` and `{θ, θ'}` for zero pairs.
    pub fn minimal_subact_generators(&self) -> Vec<Vec<usize>> {
        let zeros = self.zeros();
        let mut out: Vec<Vec<usize>> = (0..self.size())
            .filter(|&x| !self.is_zero(x))
            .map(|x| self.cyclic_subact(x).1)
            .collect();
        for (k, &a) in zeros.iter().enumerate() {
            for &b in &zeros[k + 1..] {
                out.push(vec![a, b]);
            }
        }
        out
    }

    /// `Ker(A)`: the least subact with at least two states, if one is
    /// contained in all of them.
    pub fn kernel(&self) -> Option<Vec<usize>> {
        let gens = self.minimal_subact_generators();
        let mut iter = gens.into_iter();
        let mut meet = iter.next()?;
        for g in iter {
            meet.retain(|x| g.contains(x));
        }
        (meet.len() >= 2).then_some(meet)
    }

    pub fn analyze(&self) -> Result<ActAnalysis> {
        self.analyze_with_limit(DEFAULT_SUBACT_LIMIT)
    }

    /// Zeros, all subacts, kernel and separation.
    pub fn analyze_with_limit(&self, limit: usize) -> Result<ActAnalysis> {
        let n = self.size();
        if n > limit.min(64) {
            return Err(Error::SizeLimit {
                what: "subact enumeration",
                size: n,
                limit: limit.min(64),
            });
        }
        let mask = |set: &[usize]| set.iter().fold(0u64, |m, &x| m | 1 << x);
        let mut found: BTreeSet<u64> = (0..n).map(|x| mask(&self.cyclic_subact(x).1)).collect();
        let singles: Vec<u64> = found.iter().copied().collect();
        let mut frontier: Vec<u64> = singles.clone();
        while let Some(b) = frontier.pop() {
            for &c in &singles {
                let u = b | c;
                if found.insert(u) {
                    frontier.push(u);
                }
            }
        }
        let mut subacts: Vec<Vec<usize>> = found
            .into_iter()
            .map(|m| (0..n).filter(|&x| m & (1 << x) != 0).collect())
            .collect();
        subacts.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));

        let big: Vec<&Vec<usize>> = subacts.iter().filter(|b| b.len() >= 2).collect();
        let kernel = big
            .iter()
            .find(|k| big.iter().all(|b| k.iter().all(|x| b.contains(x))))
            .map(|k| (*k).clone());

        Ok(ActAnalysis {
            zeros: self.zeros(),
            subacts,
            kernel,
            is_separated: self.is_separated(),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ActAnalysis {
    pub zeros: Vec<usize>,
    /// Every nonempty subact, sorted by size then lexicographically.
    pub subacts: Vec<Vec<usize>>,
    pub kernel: Option<Vec<usize>>,
    pub is_separated: bool,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semigroup::{left_zero, rectangular_band, right_zero};

    pub(crate) fn labels(names: &[&str]) -> Vec<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    /// `{θ1, θ2, a}` over left-zero-2 with `a·u = θ1`, `a·v = θ2`.
    fn two_zero_act() -> RightAct {
        RightAct::new(
            Arc::new(left_zero(2).unwrap()),
            labels(&["t1", "t2", "a"]),
            vec![vec![0, 0], vec![1, 1], vec![0, 1]],
        )
        .unwrap()
    }

    #[test]
    fn validation_examples() {
        RightAct::regular(Arc::new(right_zero(2).unwrap()));
        two_zero_act();
        let err = RightAct::new(
            Arc::new(right_zero(2).unwrap()),
            labels(&["t1", "t2", "a"]),
            vec![vec![0, 0], vec![1, 1], vec![0, 1]],
        )
        .unwrap_err();
        // a·(s1 s2) = a·s2 = θ2 but (a·s1)·s2 = θ1
        assert_eq!(err, Error::IncompatibleAction { a: 2, s: 0, t: 1 });
        assert!(matches!(
            RightAct::new(Arc::new(right_zero(2).unwrap()), labels(&["x"]), vec![vec![0]]),
            Err(Error::ShapeMismatch(_))
        ));
    }

    #[test]
    fn regular_acts() {
        let rz = RightAct::regular(Arc::new(right_zero(2).unwrap()));
        assert_eq!(rz.act(0, 1), 1);
        assert_eq!(RightAct::regular(Arc::new(rectangular_band(2, 2).unwrap())).size(), 4);
    }

    #[test]
    fn analyze_right_zero_regular() {
        let a = RightAct::regular(Arc::new(right_zero(2).unwrap())).analyze().unwrap();
        assert!(a.zeros.is_empty());
        assert_eq!(a.subacts, vec![vec![0, 1]]);
        assert_eq!(a.kernel, Some(vec![0, 1]));
    }

    #[test]
    fn analyze_two_zero_act() {
        let act = two_zero_act();
        let a = act.analyze().unwrap();
        assert_eq!(a.zeros, vec![0, 1]);
        assert_eq!(a.subacts, vec![vec![0], vec![1], vec![0, 1], vec![0, 1, 2]]);
        assert_eq!(a.kernel, Some(vec![0, 1]));
        assert!(a.is_separated);
        assert_eq!(act.kernel(), a.kernel);
    }

    #[test]
    fn analyze_one_state() {
        let act = RightAct::new(Arc::new(right_zero(3).unwrap()), labels(&["x"]), vec![vec![0, 0, 0]])
            .unwrap();
        let a = act.analyze().unwrap();
        assert_eq!(a.zeros, vec![0]);
        assert_eq!(a.kernel, None);
        assert_eq!(act.kernel(), None);
    }

    #[test]
    fn analyze_size_limit() {
        let act = RightAct::regular(Arc::new(rectangular_band(4, 4).unwrap()));
        assert!(matches!(act.analyze(), Err(Error::SizeLimit { size: 16, .. })));
        assert!(act.analyze_with_limit(16).is_ok());
    }

    #[test]
    fn cyclic_subacts() {
        let act = two_zero_act();
        assert_eq!(act.cyclic_subact(0).0, vec![0]);
        assert_eq!(act.cyclic_subact(2), (vec![0, 1], vec![0, 1, 2]));
        let rz = RightAct::regular(Arc::new(right_zero(2).unwrap()));
        assert_eq!(rz.cyclic_subact(0).0, vec![0, 1]);
    }
}
