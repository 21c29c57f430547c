//! Finite groups and their subgroup lattices.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::semigroup::FiniteSemigroup;

/// Largest group whose subgroups we enumerate.
pub const MAX_SUBGROUP_ORDER: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteGroup {
    base: FiniteSemigroup,
    identity: usize,
    inverse: Vec<usize>,
}

impl FiniteGroup {
    /// Checks that the semigroup has an identity and that every element is
    /// invertible; derives the inverse map.
    pub fn from_semigroup(base: FiniteSemigroup) -> Result<Self> {
        let identity = base
            .identity()
            .ok_or_else(|| Error::NotAGroup("no two-sided identity".into()))?;
        let n = base.order();
        let mut inverse = Vec::with_capacity(n);
        for x in 0..n {
            let inv = (0..n)
                .find(|&y| base.mul(x, y) == identity && base.mul(y, x) == identity)
                .ok_or_else(|| {
                    Error::NotAGroup(format!("element {:?} has no inverse", base.label(x)))
                })?;
            inverse.push(inv);
        }
        Ok(Self {
            base,
            identity,
            inverse,
        })
    }

    pub fn semigroup(&self) -> &FiniteSemigroup {
        &self.base
    }

    pub fn order(&self) -> usize {
        self.base.order()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.base.mul(x, y)
    }

    #[inline]
    pub fn inv(&self, x: usize) -> usize {
        self.inverse[x]
    }

    pub fn label(&self, x: usize) -> &str {
        self.base.label(x)
    }

    /// Order of `x`, i.e. the size of the cyclic subgroup it generates.
    pub fn element_order(&self, x: usize) -> usize {
        self.powers(x).len()
    }

    /// `[e, x, x², …]` up to the order of `x`.
    pub fn powers(&self, x: usize) -> Vec<usize> {
        let mut out = vec![self.identity];
        let mut p = x;
        while p != self.identity {
            out.push(p);
            p = self.mul(p, x);
        }
        out
    }

    fn close(&self, mut set: u32) -> u32 {
        set |= 1 << self.identity;
        loop {
            let mut next = set;
            for x in bits(set) {
                for y in bits(set) {
                    next |= 1 << self.mul(x, y);
                }
            }
            if next == set {
                return set;
            }
            set = next;
        }
    }

    /// Every subgroup, sorted by size and then lexicographically.
    pub fn subgroups(&self) -> Result<SubgroupSet> {
        let n = self.order();
        if n > MAX_SUBGROUP_ORDER {
            return Err(Error::SizeLimit {
                what: "subgroup enumeration",
                size: n,
                limit: MAX_SUBGROUP_ORDER,
            });
        }
        let cyclic: Vec<u32> = (0..n).map(|g| self.close(1 << g)).collect();
        let mut found: BTreeSet<u32> = cyclic.iter().copied().collect();
        let mut frontier: Vec<u32> = found.iter().copied().collect();
        while let Some(h) = frontier.pop() {
            for (g, &c) in cyclic.iter().enumerate() {
                if h & (1 << g) != 0 {
                    continue;
                }
                let joined = self.close(h | c);
                if found.insert(joined) {
                    frontier.push(joined);
                }
            }
        }
        let mut subgroups: Vec<Vec<usize>> = found.into_iter().map(|m| bits(m).collect()).collect();
        subgroups.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        Ok(SubgroupSet { subgroups })
    }

    /// Returns the least nontrivial subgroup when one exists. The trivial
    /// group has no nontrivial subgroup and is therefore not cocyclic.
    pub fn cocyclic_core(&self) -> Result<Option<Vec<usize>>> {
        let subs = self.subgroups()?;
        let nontrivial: Vec<&Vec<usize>> = subs.nontrivial().collect();
        let Some(first) = nontrivial.first() else {
            return Ok(None);
        };
        // sorted by size, so a least element must come first
        let least = nontrivial
            .iter()
            .all(|h| first.iter().all(|x| h.contains(x)))
            .then(|| (*first).clone());
        Ok(least)
    }

    pub fn is_cocyclic(&self) -> Result<bool> {
        Ok(self.cocyclic_core()?.is_some())
    }

    /// Any two nontrivial subgroups meet in more than the identity.
    pub fn nontrivial_subgroups_pairwise_intersect(&self) -> Result<bool> {
        let subs = self.subgroups()?;
        let nontrivial: Vec<&Vec<usize>> = subs.nontrivial().collect();
        for (k, a) in nontrivial.iter().enumerate() {
            for b in &nontrivial[k + 1..] {
                if a.iter().filter(|x| b.contains(x)).count() < 2 {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

fn bits(mut m: u32) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let b = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(b)
        }
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubgroupSet {
    pub subgroups: Vec<Vec<usize>>,
}

impl SubgroupSet {
    pub fn len(&self) -> usize {
        self.subgroups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subgroups.is_empty()
    }

    pub fn nontrivial(&self) -> impl Iterator<Item = &Vec<usize>> {
        self.subgroups.iter().filter(|h| h.len() > 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn brute_subgroups(g: &FiniteGroup) -> Vec<Vec<usize>> {
        let n = g.order();
        let mut out = Vec::new();
        for mask in 1u32..(1 << n) {
            let set: Vec<usize> = (0..n).filter(|&x| mask & (1 << x) != 0).collect();
            let closed = set.contains(&g.identity())
                && set
                    .iter()
                    .all(|&x| set.contains(&g.inv(x)) && set.iter().all(|&y| set.contains(&g.mul(x, y))));
            if closed {
                out.push(set);
            }
        }
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        out
    }

    #[test]
    fn subgroup_counts_match_subset_filter() {
        let z4 = catalog::group("Z4").unwrap();
        let subs = z4.subgroups().unwrap();
        assert_eq!(subs.len(), 3);
        assert_eq!(subs.subgroups[1], vec![0, 2]);
        assert_eq!(catalog::group("Z6").unwrap().subgroups().unwrap().len(), 4);
        assert_eq!(catalog::group("Z1").unwrap().subgroups().unwrap().len(), 1);
        for name in catalog::GROUP_NAMES {
            let g = catalog::group(name).unwrap();
            assert_eq!(g.subgroups().unwrap().subgroups, brute_subgroups(&g), "{name}");
        }
    }

    #[test]
    fn cocyclic_examples() {
        let z4 = catalog::group("Z4").unwrap();
        assert_eq!(z4.cocyclic_core().unwrap(), Some(vec![0, 2]));
        assert!(!catalog::group("Z6").unwrap().is_cocyclic().unwrap());
        assert!(!catalog::group("Z1").unwrap().is_cocyclic().unwrap());
        assert!(catalog::group("Q8").unwrap().is_cocyclic().unwrap());
    }

    #[test]
    fn pairwise_intersection_examples() {
        let check = |n: &str| {
            catalog::group(n)
                .unwrap()
                .nontrivial_subgroups_pairwise_intersect()
                .unwrap()
        };
        assert!(check("Z4"));
        assert!(!check("Z12"));
        assert!(!check("V4"));
        assert!(check("Z9"));
    }

    #[test]
    fn cocyclic_agrees_with_pairwise_intersection_on_catalog() {
        for name in catalog::GROUP_NAMES {
            let g = catalog::group(name).unwrap();
            let cocyclic = g.is_cocyclic().unwrap();
            let pairwise = g.nontrivial_subgroups_pairwise_intersect().unwrap();
            if cocyclic {
                assert!(pairwise, "{name}");
            }
            // finite groups only; the trivial group is excluded from both sides
            if g.order() > 1 {
                assert_eq!(cocyclic, pairwise, "{name}");
            }
        }
    }

    #[test]
    fn not_a_group() {
        let rz = crate::semigroup::right_zero(2).unwrap();
        assert!(matches!(
            FiniteGroup::from_semigroup(rz),
            Err(Error::NotAGroup(_))
        ));
    }
}
