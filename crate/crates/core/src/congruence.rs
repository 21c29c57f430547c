//! Right congruences on acts: closure of generating pairs, Rees congruences,
//! intersections, and the brute-force SI / irreducible / uniform predicates.

use std::collections::{BTreeSet, HashMap, VecDeque};

use crate::act::RightAct;
use crate::error::{Error, Result};
use crate::semigroup::FiniteSemigroup;
use crate::unionfind::UnionFind;

/// Largest act handed to [`all_congruences_bruteforce`].
pub const BRUTEFORCE_LIMIT: usize = 8;

/// Largest act handed to [`summarize`] by default.
pub const DEFAULT_SUMMARY_LIMIT: usize = 128;

/// A partition of an act's states, ids in first-occurrence order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Congruence {
    act: u64,
    class_of: Vec<usize>,
}

impl Congruence {
    pub(crate) fn from_classes(act: &RightAct, class_of: Vec<usize>) -> Self {
        Self {
            act: act.fingerprint(),
            class_of: normalize(&class_of),
        }
    }

    pub fn diagonal(act: &RightAct) -> Self {
        Self::from_classes(act, (0..act.size()).collect())
    }

    pub fn full(act: &RightAct) -> Self {
        Self::from_classes(act, vec![0; act.size()])
    }

    pub fn class_of(&self) -> &[usize] {
        &self.class_of
    }

    pub fn related(&self, a: usize, b: usize) -> bool {
        self.class_of[a] == self.class_of[b]
    }

    pub fn class_count(&self) -> usize {
        self.class_of.iter().max().map_or(0, |m| m + 1)
    }

    pub fn is_diagonal(&self) -> bool {
        self.class_count() == self.class_of.len()
    }

    pub fn is_full(&self) -> bool {
        self.class_count() <= 1
    }

    /// Classes as sorted state lists, ordered by smallest member.
    pub fn classes(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.class_count()];
        for (a, &c) in self.class_of.iter().enumerate() {
            out[c].push(a);
        }
        out
    }

    /// `self ⊆ other` as relations.
    pub fn is_contained_in(&self, other: &Congruence) -> bool {
        let mut image = vec![usize::MAX; self.class_count()];
        for (a, &c) in self.class_of.iter().enumerate() {
            let o = other.class_of[a];
            if image[c] == usize::MAX {
                image[c] = o;
            } else if image[c] != o {
                return false;
            }
        }
        true
    }

    /// Right compatibility checked by full scan.
    pub fn is_right_compatible(&self, act: &RightAct) -> bool {
        let classes = self.classes();
        classes.iter().all(|class| {
            (0..act.semigroup().order()).all(|s| {
                let c = self.class_of[act.act(class[0], s)];
                class.iter().all(|&a| self.class_of[act.act(a, s)] == c)
            })
        })
    }

    /// Some pair of distinct states related by both congruences.
    pub fn common_pair(&self, other: &Congruence) -> Option<(usize, usize)> {
        let mut seen: HashMap<(usize, usize), usize> = HashMap::new();
        for a in 0..self.class_of.len() {
            if let Some(&b) = seen.get(&(self.class_of[a], other.class_of[a])) {
                return Some((b, a));
            }
            seen.insert((self.class_of[a], other.class_of[a]), a);
        }
        None
    }
}

fn normalize(class_of: &[usize]) -> Vec<usize> {
    let mut ids: HashMap<usize, usize> = HashMap::new();
    class_of
        .iter()
        .map(|&c| {
            let next = ids.len();
            *ids.entry(c).or_insert(next)
        })
        .collect()
}

/// The least right congruence containing `pairs`.
///
/// Union-find with a worklist: every time two classes merge, the images of
/// their representatives under each `s ∈ S` are queued for merging.
pub fn closure(act: &RightAct, pairs: &[(usize, usize)]) -> Congruence {
    let m = act.semigroup().order();
    let mut uf = UnionFind::new(act.size());
    let mut queue: VecDeque<(usize, usize)> = pairs.iter().copied().collect();
    while let Some((x, y)) = queue.pop_front() {
        if let Some((rx, ry)) = uf.union(x, y) {
            for s in 0..m {
                let (xs, ys) = (act.act(rx, s), act.act(ry, s));
                if xs != ys {
                    queue.push_back((xs, ys));
                }
            }
        }
    }
    Congruence {
        act: act.fingerprint(),
        class_of: uf.normalized(),
    }
}

/// `ρ(x, y)`.
pub fn monocyclic(act: &RightAct, x: usize, y: usize) -> Congruence {
    closure(act, &[(x, y)])
}

/// `ρ_B = (B×B) ∪ Δ_A`.
pub fn rees_congruence(act: &RightAct, subact: &[usize]) -> Result<Congruence> {
    if subact.is_empty() || !act.is_subact(subact) {
        return Err(Error::NotASubact);
    }
    let mut class_of: Vec<usize> = (0..act.size()).collect();
    for &b in subact {
        class_of[b] = subact[0];
    }
    Ok(Congruence::from_classes(act, class_of))
}

/// Pairwise class intersection.
pub fn intersect(r1: &Congruence, r2: &Congruence) -> Result<Congruence> {
    if r1.act != r2.act || r1.class_of.len() != r2.class_of.len() {
        return Err(Error::ActMismatch);
    }
    let n = r1.class_of.len();
    let k = r1.class_count();
    let class_of = (0..n).map(|a| r2.class_of[a] * k + r1.class_of[a]).collect::<Vec<_>>();
    Ok(Congruence {
        act: r1.act,
        class_of: normalize(&class_of),
    })
}

/// One congruence per unordered pair of states, deduplicated, in order of
/// first generating pair.
pub fn principal_congruences(act: &RightAct) -> Vec<(usize, usize, Congruence)> {
    let n = act.size();
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut out = Vec::new();
    for x in 0..n {
        for y in x + 1..n {
            let c = monocyclic(act, x, y);
            if seen.insert(c.class_of.clone()) {
                out.push((x, y, c));
            }
        }
    }
    out
}

fn meets_within(principal: &Congruence, subset: &[usize]) -> bool {
    let mut seen = BTreeSet::new();
    subset.iter().any(|&b| !seen.insert(principal.class_of[b]))
}

/// Largeness of a subact: every non-diagonal monocyclic congruence meets
/// `ρ_B` outside the diagonal. On failure, returns the generating pair of
/// a monocyclic congruence with `ρ_B ∩ ρ = Δ`.
pub fn is_large(act: &RightAct, subact: &[usize]) -> Result<(bool, Option<(usize, usize)>)> {
    if subact.is_empty() || !act.is_subact(subact) {
        return Err(Error::NotASubact);
    }
    let witness = principal_congruences(act)
        .into_iter()
        .find(|(_, _, c)| !meets_within(c, subact))
        .map(|(x, y, _)| (x, y));
    Ok((witness.is_none(), witness))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CongruenceSummary {
    pub principal_nondiagonal: Vec<Congruence>,
    pub least_nondiagonal: Option<Congruence>,
    pub si: bool,
    pub irreducible: bool,
    pub uniform: bool,
}

pub fn summarize(act: &RightAct) -> Result<CongruenceSummary> {
    summarize_with_limit(act, DEFAULT_SUMMARY_LIMIT)
}

/// SI, irreducibility and uniformity from the monocyclic congruences.
///
/// Every non-diagonal congruence contains a non-diagonal monocyclic one, so
/// the meet of all non-diagonal congruences is the meet of the monocyclic
/// ones. Largeness is upward closed, so uniformity only needs the subacts
/// of [`RightAct::minimal_subact_generators`].
pub fn summarize_with_limit(act: &RightAct, limit: usize) -> Result<CongruenceSummary> {
    let n = act.size();
    if n > limit {
        return Err(Error::SizeLimit {
            what: "congruence summary",
            size: n,
            limit,
        });
    }
    let principal: Vec<Congruence> = principal_congruences(act).into_iter().map(|(_, _, c)| c).collect();

    let mut least_nondiagonal = principal.first().cloned();
    for c in principal.iter().skip(1) {
        let Some(acc) = &least_nondiagonal else { break };
        let meet = intersect(acc, c)?;
        least_nondiagonal = (!meet.is_diagonal()).then_some(meet);
    }
    let si = least_nondiagonal.is_some();

    let irreducible = !principal.is_empty()
        && principal.iter().enumerate().all(|(k, a)| {
            principal[k + 1..].iter().all(|b| a.common_pair(b).is_some())
        });

    let uniform = act
        .minimal_subact_generators()
        .iter()
        .all(|b| principal.iter().all(|c| meets_within(c, b)));

    Ok(CongruenceSummary {
        principal_nondiagonal: principal,
        least_nondiagonal,
        si,
        irreducible,
        uniform,
    })
}

/// Every right congruence, by exhaustive set-partition enumeration.
pub fn all_congruences_bruteforce(act: &RightAct) -> Result<Vec<Congruence>> {
    let n = act.size();
    if n > BRUTEFORCE_LIMIT {
        return Err(Error::SizeLimit {
            what: "partition enumeration",
            size: n,
            limit: BRUTEFORCE_LIMIT,
        });
    }
    let mut out = Vec::new();
    // restricted growth strings
    let mut rgs = vec![0usize; n];
    loop {
        let candidate = Congruence {
            act: act.fingerprint(),
            class_of: rgs.clone(),
        };
        if candidate.is_right_compatible(act) {
            out.push(candidate);
        }
        // next restricted growth string
        let mut k = n;
        loop {
            if k <= 1 {
                return Ok(out);
            }
            k -= 1;
            let max_prefix = rgs[..k].iter().copied().max().unwrap_or(0);
            if rgs[k] <= max_prefix {
                rgs[k] += 1;
                for r in rgs.iter_mut().skip(k + 1) {
                    *r = 0;
                }
                break;
            }
        }
    }
}

/// Left compatibility of a right congruence on `S_S`:
/// `x ρ y ⟹ (s·x) ρ (s·y)`.
pub fn two_sided_check(semigroup: &FiniteSemigroup, rho: &Congruence) -> bool {
    let n = semigroup.order();
    if rho.class_of.len() != n {
        return false;
    }
    rho.classes().iter().all(|class| {
        (0..n).all(|s| {
            let c = rho.class_of[semigroup.mul(s, class[0])];
            class.iter().all(|&x| rho.class_of[semigroup.mul(s, x)] == c)
        })
    })
}
