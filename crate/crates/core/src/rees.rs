//! Rees matrix semigroups `M⁰[G; I, Λ; P]` and `M[G; I, Λ; P]`.

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::semigroup::FiniteSemigroup;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SandwichEntry {
    Zero,
    Group(usize),
}

/// Blueprint of a completely (0-)simple semigroup.
///
/// `sandwich` is a `Λ×I` matrix: `sandwich[λ][i] = p_{λi}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ReesMatrixSpec {
    group: FiniteGroup,
    i_size: usize,
    lambda_size: usize,
    sandwich: Vec<Vec<SandwichEntry>>,
    with_zero: bool,
}

/// Decoded element of a Rees matrix semigroup.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ReesElement {
    Zero,
    Triple { i: usize, g: usize, lambda: usize },
}

impl ReesMatrixSpec {
    pub fn new(
        group: FiniteGroup,
        i_size: usize,
        lambda_size: usize,
        sandwich: Vec<Vec<SandwichEntry>>,
        with_zero: bool,
    ) -> Result<Self> {
        if i_size == 0 || lambda_size == 0 {
            return Err(Error::PreconditionViolated(
                "I and Λ must be nonempty".into(),
            ));
        }
        if sandwich.len() != lambda_size || sandwich.iter().any(|r| r.len() != i_size) {
            return Err(Error::ShapeMismatch(format!(
                "sandwich must be {lambda_size}×{i_size} (Λ×I)"
            )));
        }
        for (row, entries) in sandwich.iter().enumerate() {
            for (col, e) in entries.iter().enumerate() {
                match *e {
                    SandwichEntry::Zero if !with_zero => {
                        return Err(Error::ZeroEntryWithoutZeroFlag { row, col })
                    }
                    SandwichEntry::Group(g) if g >= group.order() => {
                        return Err(Error::IndexOutOfRange {
                            index: g,
                            size: group.order(),
                            context: format!("sandwich[{row}][{col}]"),
                        })
                    }
                    _ => {}
                }
            }
        }
        if let Some(row) = sandwich
            .iter()
            .position(|r| r.iter().all(|&e| e == SandwichEntry::Zero))
        {
            return Err(Error::IrregularSandwich(format!("row {row} is all zero")));
        }
        if let Some(col) =
            (0..i_size).find(|&c| sandwich.iter().all(|r| r[c] == SandwichEntry::Zero))
        {
            return Err(Error::IrregularSandwich(format!("column {col} is all zero")));
        }
        Ok(Self {
            group,
            i_size,
            lambda_size,
            sandwich,
            with_zero,
        })
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn i_size(&self) -> usize {
        self.i_size
    }

    pub fn lambda_size(&self) -> usize {
        self.lambda_size
    }

    pub fn with_zero(&self) -> bool {
        self.with_zero
    }

    pub fn sandwich(&self) -> &[Vec<SandwichEntry>] {
        &self.sandwich
    }

    pub fn entry(&self, lambda: usize, i: usize) -> SandwichEntry {
        self.sandwich[lambda][i]
    }

    /// Number of elements of the resulting semigroup.
    pub fn order(&self) -> usize {
        self.i_size * self.group.order() * self.lambda_size + usize::from(self.with_zero)
    }

    fn offset(&self) -> usize {
        usize::from(self.with_zero)
    }

    /// Index of an element in the semigroup built by [`rees_matrix`].
    pub fn encode(&self, e: ReesElement) -> usize {
        match e {
            ReesElement::Zero => {
                assert!(self.with_zero, "no zero adjoined");
                0
            }
            ReesElement::Triple { i, g, lambda } => {
                self.offset() + (i * self.group.order() + g) * self.lambda_size + lambda
            }
        }
    }

    pub fn decode(&self, x: usize) -> ReesElement {
        if self.with_zero && x == 0 {
            return ReesElement::Zero;
        }
        let k = x - self.offset();
        let lambda = k % self.lambda_size;
        let rest = k / self.lambda_size;
        ReesElement::Triple {
            i: rest / self.group.order(),
            g: rest % self.group.order(),
            lambda,
        }
    }

    pub fn label(&self, e: ReesElement) -> String {
        match e {
            ReesElement::Zero => "0".to_string(),
            ReesElement::Triple { i, g, lambda } => {
                format!("({i},{},{lambda})", self.group.label(g))
            }
        }
    }

    pub fn product(&self, x: ReesElement, y: ReesElement) -> ReesElement {
        match (x, y) {
            (ReesElement::Zero, _) | (_, ReesElement::Zero) => ReesElement::Zero,
            (
                ReesElement::Triple { i, g: a, lambda },
                ReesElement::Triple { i: j, g: b, lambda: mu },
            ) => match self.sandwich[lambda][j] {
                SandwichEntry::Zero => ReesElement::Zero,
                SandwichEntry::Group(p) => ReesElement::Triple {
                    i,
                    g: self.group.mul(self.group.mul(a, p), b),
                    lambda: mu,
                },
            },
        }
    }
}

/// Expands a spec into its Cayley table. The zero, when adjoined, is index 0
/// and labelled `"0"`; the rest are `(i,g,λ)` in lexicographic order.
pub fn rees_matrix(spec: &ReesMatrixSpec) -> Result<FiniteSemigroup> {
    let n = spec.order();
    let decoded: Vec<ReesElement> = (0..n).map(|x| spec.decode(x)).collect();
    let elements = decoded.iter().map(|&e| spec.label(e)).collect();
    let mut table = Vec::with_capacity(n * n);
    for &x in &decoded {
        for &y in &decoded {
            table.push(spec.encode(spec.product(x, y)));
        }
    }
    FiniteSemigroup::from_flat(elements, table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::semigroup::rectangular_band;

    fn g(k: usize) -> SandwichEntry {
        SandwichEntry::Group(k)
    }

    #[test]
    fn z2_with_zero() {
        let spec = ReesMatrixSpec::new(catalog::group("Z2").unwrap(), 1, 1, vec![vec![g(0)]], true)
            .unwrap();
        let s = rees_matrix(&spec).unwrap();
        assert_eq!(s.labels(), ["0", "(0,e,0)", "(0,g,0)"]);
        assert_eq!(s.mul(2, 2), 1);
        assert!((0..3).all(|x| s.mul(0, x) == 0 && s.mul(x, 0) == 0));
    }

    fn isomorphic(a: &FiniteSemigroup, b: &FiniteSemigroup) -> bool {
        fn extend(a: &FiniteSemigroup, b: &FiniteSemigroup, map: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
            let k = map.len();
            if k == a.order() {
                return (0..k).all(|x| (0..k).all(|y| map[a.mul(x, y)] == b.mul(map[x], map[y])));
            }
            for t in 0..b.order() {
                if !used[t] {
                    used[t] = true;
                    map.push(t);
                    if extend(a, b, map, used) {
                        return true;
                    }
                    map.pop();
                    used[t] = false;
                }
            }
            false
        }
        a.order() == b.order() && extend(a, b, &mut Vec::new(), &mut vec![false; b.order()])
    }

    #[test]
    fn trivial_group_gives_rectangular_band() {
        let spec = ReesMatrixSpec::new(
            catalog::group("Z1").unwrap(),
            2,
            2,
            vec![vec![g(0), g(0)], vec![g(0), g(0)]],
            false,
        )
        .unwrap();
        let s = rees_matrix(&spec).unwrap();
        assert!(isomorphic(&s, &rectangular_band(2, 2).unwrap()));
        assert!(!isomorphic(&s, &catalog::group("V4").unwrap().semigroup().clone()));
    }

    #[test]
    fn sandwich_validation() {
        let z2 = catalog::group("Z2").unwrap();
        assert!(matches!(
            ReesMatrixSpec::new(z2.clone(), 1, 1, vec![vec![SandwichEntry::Zero]], true),
            Err(Error::IrregularSandwich(_))
        ));
        assert!(matches!(
            ReesMatrixSpec::new(z2.clone(), 2, 1, vec![vec![g(0), SandwichEntry::Zero]], false),
            Err(Error::ZeroEntryWithoutZeroFlag { row: 0, col: 1 })
        ));
        assert!(matches!(
            ReesMatrixSpec::new(
                z2.clone(),
                2,
                2,
                vec![vec![g(0), SandwichEntry::Zero], vec![g(1), SandwichEntry::Zero]],
                true
            ),
            Err(Error::IrregularSandwich(_))
        ));
        assert!(matches!(
            ReesMatrixSpec::new(z2, 1, 2, vec![vec![g(0)]], true),
            Err(Error::ShapeMismatch(_))
        ));
    }

    #[test]
    fn encode_decode_inverse() {
        let spec = ReesMatrixSpec::new(
            catalog::group("Z3").unwrap(),
            2,
            3,
            vec![vec![g(0), SandwichEntry::Zero], vec![g(1), g(2)], vec![SandwichEntry::Zero, g(0)]],
            true,
        )
        .unwrap();
        for x in 0..spec.order() {
            assert_eq!(spec.encode(spec.decode(x)), x);
        }
    }

    #[test]
    fn zero_group_single_row_has_no_zero_divisors() {
        // with I = {i} regularity forces every entry to be a group element
        for name in ["Z2", "Z3", "V4"] {
            let grp = catalog::group(name).unwrap();
            for lambda_size in 1..=3 {
                let spec = ReesMatrixSpec::new(grp.clone(), 1, lambda_size, vec![vec![g(1 % grp.order())]; lambda_size], true)
                    .unwrap();
                let s = rees_matrix(&spec).unwrap();
                for x in 1..s.order() {
                    for y in 1..s.order() {
                        assert_ne!(s.mul(x, y), 0);
                    }
                }
            }
        }
    }
}
