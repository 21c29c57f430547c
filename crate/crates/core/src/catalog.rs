//! Bundled groups and small semigroups used by tests, suites and the CLI.
//!
//! Groups: cyclic `Z1`..`Z12`, the Klein group `V4 = Z2×Z2`, the symmetric
//! group `S3` and the quaternion group `Q8`. The identity is always index 0.

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::rees::{rees_matrix, ReesMatrixSpec, SandwichEntry};
use crate::semigroup::{rectangular_band, FiniteSemigroup};

pub const GROUP_NAMES: [&str; 15] = [
    "Z1", "Z2", "Z3", "Z4", "Z5", "Z6", "Z7", "Z8", "Z9", "Z10", "Z11", "Z12", "V4", "S3", "Q8",
];

/// Looks up a catalog group by name (`Zn`, `V4`, `S3`, `Q8`).
pub fn group(name: &str) -> Result<FiniteGroup> {
    let semigroup = match name {
        "V4" => klein(),
        "S3" => symmetric3(),
        "Q8" => quaternion(),
        _ => {
            let n = name
                .strip_prefix('Z')
                .and_then(|d| d.parse::<usize>().ok())
                .filter(|n| (1..=12).contains(n))
                .ok_or_else(|| Error::UnknownGroup(name.to_string()))?;
            return cyclic(n);
        }
    };
    FiniteGroup::from_semigroup(semigroup.expect("catalog tables are associative"))
}

/// Cyclic group of order `n` with elements `e, g, g^2, …`.
pub fn cyclic(n: usize) -> Result<FiniteGroup> {
    if n == 0 {
        return Err(Error::UnknownGroup("Z0".into()));
    }
    let elements = (0..n)
        .map(|k| match k {
            0 => "e".to_string(),
            1 => "g".to_string(),
            _ => format!("g^{k}"),
        })
        .collect();
    let table = (0..n).map(|x| (0..n).map(|y| (x + y) % n).collect()).collect();
    FiniteGroup::from_semigroup(FiniteSemigroup::new(elements, table)?)
}

fn klein() -> Result<FiniteSemigroup> {
    let elements = ["e", "a", "b", "c"].map(String::from).to_vec();
    let table = (0..4).map(|x| (0..4).map(|y| x ^ y).collect()).collect();
    FiniteSemigroup::new(elements, table)
}

fn symmetric3() -> Result<FiniteSemigroup> {
    // images of 0,1,2; x·y applies y first, then x
    let r = [1, 2, 0];
    let s = [0, 2, 1];
    let compose = |x: [usize; 3], y: [usize; 3]| [x[y[0]], x[y[1]], x[y[2]]];
    let id = [0, 1, 2];
    let r2 = compose(r, r);
    let perms = [id, r, r2, s, compose(r, s), compose(r2, s)];
    let elements = ["e", "r", "r^2", "s", "rs", "r^2s"].map(String::from).to_vec();
    let table = perms
        .iter()
        .map(|&x| {
            perms
                .iter()
                .map(|&y| {
                    let p = compose(x, y);
                    perms.iter().position(|&q| q == p).unwrap()
                })
                .collect()
        })
        .collect();
    FiniteSemigroup::new(elements, table)
}

fn quaternion() -> Result<FiniteSemigroup> {
    // element 2u + sign: unit u in {1,i,j,k}, sign bit for negation
    const UNIT: [[(usize, bool); 4]; 4] = [
        [(0, false), (1, false), (2, false), (3, false)],
        [(1, false), (0, true), (3, false), (2, true)],
        [(2, false), (3, true), (0, true), (1, false)],
        [(3, false), (2, false), (1, true), (0, true)],
    ];
    let elements = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
        .map(String::from)
        .to_vec();
    let table = (0..8)
        .map(|x| {
            (0..8)
                .map(|y| {
                    let (u, neg) = UNIT[x / 2][y / 2];
                    let sign = (x % 2 == 1) ^ (y % 2 == 1) ^ neg;
                    2 * u + usize::from(sign)
                })
                .collect()
        })
        .collect();
    FiniteSemigroup::new(elements, table)
}

/// Parses a comma-separated group list; `Za..Zb` expands to a range.
pub fn parse_group_list(list: &str) -> Result<Vec<String>> {
    let mut out = Vec::new();
    for item in list.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        if let Some((lo, hi)) = item.split_once("..") {
            let parse = |s: &str| {
                s.trim()
                    .strip_prefix('Z')
                    .and_then(|d| d.parse::<usize>().ok())
                    .ok_or_else(|| Error::UnknownGroup(item.to_string()))
            };
            let (lo, hi) = (parse(lo)?, parse(hi)?);
            for n in lo..=hi {
                let name = format!("Z{n}");
                group(&name)?;
                out.push(name);
            }
        } else {
            group(item)?;
            out.push(item.to_string());
        }
    }
    Ok(out)
}

/// Small semigroups of assorted shapes: groups, bands, zero-adjoined groups,
/// null and monogenic semigroups, semilattices.
pub fn semigroups() -> Vec<(String, FiniteSemigroup)> {
    let mut out = Vec::new();
    for name in GROUP_NAMES {
        out.push((name.to_string(), group(name).unwrap().semigroup().clone()));
    }
    for (i, l) in [(1, 2), (2, 1), (1, 3), (3, 1), (2, 2), (2, 3), (3, 2)] {
        out.push((format!("band{i}x{l}"), rectangular_band(i, l).unwrap()));
    }
    for name in ["Z1", "Z2", "Z3", "Z4"] {
        let spec = ReesMatrixSpec::new(group(name).unwrap(), 1, 1, vec![vec![SandwichEntry::Group(0)]], true)
            .unwrap();
        out.push((format!("{name}^0"), rees_matrix(&spec).unwrap()));
    }
    let spec = ReesMatrixSpec::new(
        group("Z1").unwrap(),
        2,
        2,
        vec![
            vec![SandwichEntry::Group(0), SandwichEntry::Zero],
            vec![SandwichEntry::Zero, SandwichEntry::Group(0)],
        ],
        true,
    )
    .unwrap();
    out.push(("B2".to_string(), rees_matrix(&spec).unwrap()));
    out.push(("null3".to_string(), null_semigroup(3)));
    out.push(("chain3".to_string(), chain(3)));
    out.push(("monogenic2_2".to_string(), monogenic(2, 2)));
    out.push(("monogenic3_1".to_string(), monogenic(3, 1)));
    out
}

/// `x·y = 0` for all `x, y`.
pub fn null_semigroup(n: usize) -> FiniteSemigroup {
    let elements = (0..n).map(|k| format!("n{k}")).collect();
    let table = vec![vec![0; n]; n];
    FiniteSemigroup::new(elements, table).unwrap()
}

/// The chain semilattice `0 < 1 < … < n-1` under `min`.
pub fn chain(n: usize) -> FiniteSemigroup {
    let elements = (0..n).map(|k| format!("c{k}")).collect();
    let table = (0..n).map(|x| (0..n).map(|y| x.min(y)).collect()).collect();
    FiniteSemigroup::new(elements, table).unwrap()
}

/// Monogenic semigroup `⟨a⟩` with index `m` and period `r`.
pub fn monogenic(index: usize, period: usize) -> FiniteSemigroup {
    let n = index + period - 1;
    // element k represents a^(k+1)
    let reduce = |p: usize| {
        if p <= n {
            p
        } else {
            index + (p - index) % period
        }
    };
    let elements = (1..=n).map(|k| format!("a^{k}")).collect();
    let table = (1..=n)
        .map(|x| (1..=n).map(|y| reduce(x + y) - 1).collect())
        .collect();
    FiniteSemigroup::new(elements, table).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_groups_are_groups() {
        for name in GROUP_NAMES {
            let g = group(name).unwrap();
            assert_eq!(g.identity(), 0, "{name}");
        }
        assert_eq!(group("S3").unwrap().order(), 6);
        assert_eq!(group("Q8").unwrap().order(), 8);
        // S3 is not abelian
        let s3 = group("S3").unwrap();
        assert!((0..6).any(|x| (0..6).any(|y| s3.mul(x, y) != s3.mul(y, x))));
        // Q8 has a unique involution
        let q8 = group("Q8").unwrap();
        assert_eq!((1..8).filter(|&x| q8.element_order(x) == 2).count(), 1);
    }

    #[test]
    fn unknown_names() {
        assert!(matches!(group("Z13"), Err(Error::UnknownGroup(_))));
        assert!(matches!(group("D4"), Err(Error::UnknownGroup(_))));
    }

    #[test]
    fn group_lists() {
        assert_eq!(
            parse_group_list("Z2..Z4,Q8, V4").unwrap(),
            vec!["Z2", "Z3", "Z4", "Q8", "V4"]
        );
        assert!(parse_group_list("Z2..Z20").is_err());
    }

    #[test]
    fn small_semigroups_validate() {
        let all = semigroups();
        assert!(all.iter().any(|(_, s)| s.order() <= 6 && s.identity().is_none()));
        let m = monogenic(2, 2);
        assert_eq!(m.order(), 3);
        // a^2 · a^2 = a^4 = a^2
        assert_eq!(m.mul(1, 1), 1);
    }
}
