//! Finite semigroups given by Cayley tables.

use crate::error::{Error, Result};

/// A finite semigroup: labelled elements and a multiplication table.
///
/// `mul(x, y)` is the index of `x·y`. Every constructor checks
/// associativity, so a value of this type is always a semigroup.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteSemigroup {
    elements: Vec<String>,
    table: Vec<usize>,
    identity: Option<usize>,
}

impl FiniteSemigroup {
    /// Validates a labelled Cayley table.
    pub fn new(elements: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self> {
        let n = elements.len();
        if n == 0 {
            return Err(Error::ShapeMismatch("semigroup has no elements".into()));
        }
        if table.len() != n {
            return Err(Error::ShapeMismatch(format!(
                "table has {} rows for {} elements",
                table.len(),
                n
            )));
        }
        let mut flat = Vec::with_capacity(n * n);
        for (x, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::ShapeMismatch(format!(
                    "row {x} has {} entries for {n} elements",
                    row.len()
                )));
            }
            for (y, &v) in row.iter().enumerate() {
                if v >= n {
                    return Err(Error::IndexOutOfRange {
                        index: v,
                        size: n,
                        context: format!("table[{x}][{y}]"),
                    });
                }
                flat.push(v);
            }
        }
        Self::from_flat(elements, flat)
    }

    pub(crate) fn from_flat(elements: Vec<String>, table: Vec<usize>) -> Result<Self> {
        let n = elements.len();
        debug_assert_eq!(table.len(), n * n);
        for x in 0..n {
            for y in 0..n {
                let xy = table[x * n + y];
                for z in 0..n {
                    if table[xy * n + z] != table[x * n + table[y * n + z]] {
                        return Err(Error::NonAssociative { x, y, z });
                    }
                }
            }
        }
        let identity =
            (0..n).find(|&e| (0..n).all(|x| table[e * n + x] == x && table[x * n + e] == x));
        Ok(Self {
            elements,
            table,
            identity,
        })
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.table[x * self.order() + y]
    }

    pub fn labels(&self) -> &[String] {
        &self.elements
    }

    pub fn label(&self, x: usize) -> &str {
        &self.elements[x]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.elements.iter().position(|l| l == label)
    }

    /// Two-sided identity, if the semigroup is a monoid.
    pub fn identity(&self) -> Option<usize> {
        self.identity
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.order()).map(<[usize]>::to_vec).collect()
    }

    pub fn is_idempotent(&self, x: usize) -> bool {
        self.mul(x, x) == x
    }

    /// Left zero: `x·s = x` for all `s`.
    pub fn is_left_zero(&self, x: usize) -> bool {
        (0..self.order()).all(|s| self.mul(x, s) == x)
    }

    /// Left identity: `x·s = s` for all `s`.
    pub fn is_left_identity(&self, x: usize) -> bool {
        (0..self.order()).all(|s| self.mul(x, s) == s)
    }

    /// Tags every idempotent by how it acts from the left.
    pub fn classify_idempotents(&self) -> Vec<(usize, IdempotentTag)> {
        (0..self.order())
            .filter(|&e| self.is_idempotent(e))
            .map(|e| {
                let tag = match (self.is_left_identity(e), self.is_left_zero(e)) {
                    (true, true) => IdempotentTag::Both,
                    (true, false) => IdempotentTag::LeftIdentity,
                    (false, true) => IdempotentTag::LeftZero,
                    (false, false) => IdempotentTag::Neither,
                };
                (e, tag)
            })
            .collect()
    }

    /// Recognizes a rectangular band structurally (`x·x = x` and
    /// `x·y·x = x`) and recovers its coordinates.
    pub fn band_shape(&self) -> Option<BandShape> {
        let n = self.order();
        for x in 0..n {
            if !self.is_idempotent(x) {
                return None;
            }
            for y in 0..n {
                if self.mul(self.mul(x, y), x) != x {
                    return None;
                }
            }
        }
        // x, y share a row iff x·y = y; they share a column iff x·y = x.
        let rows = classes_by(n, |x, y| self.mul(x, y) == y);
        let cols = classes_by(n, |x, y| self.mul(x, y) == x);
        let i_size = rows.iter().max().map_or(0, |m| m + 1);
        let lambda_size = cols.iter().max().map_or(0, |m| m + 1);
        let coords = rows.into_iter().zip(cols).collect();
        Some(BandShape {
            i_size,
            lambda_size,
            coords,
        })
    }
}

fn classes_by(n: usize, same: impl Fn(usize, usize) -> bool) -> Vec<usize> {
    let mut class = vec![usize::MAX; n];
    let mut reps: Vec<usize> = Vec::new();
    for x in 0..n {
        class[x] = match reps.iter().position(|&r| same(r, x)) {
            Some(c) => c,
            None => {
                reps.push(x);
                reps.len() - 1
            }
        };
    }
    class
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IdempotentTag {
    LeftIdentity,
    LeftZero,
    Both,
    Neither,
}

/// Coordinates of a rectangular band `I×Λ`: `coords[x] = (i, λ)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BandShape {
    pub i_size: usize,
    pub lambda_size: usize,
    pub coords: Vec<(usize, usize)>,
}

impl BandShape {
    /// The element with coordinates `(i, λ)`.
    pub fn element(&self, i: usize, lambda: usize) -> usize {
        self.coords
            .iter()
            .position(|&c| c == (i, lambda))
            .expect("coordinates in range")
    }
}

/// The rectangular band `I×Λ` with `(i,λ)(j,μ) = (i,μ)`, elements in
/// row-major order.
pub fn rectangular_band(i_size: usize, lambda_size: usize) -> Result<FiniteSemigroup> {
    if i_size == 0 || lambda_size == 0 {
        return Err(Error::PreconditionViolated(
            "rectangular band needs nonempty I and Λ".into(),
        ));
    }
    let n = i_size * lambda_size;
    let elements = (0..i_size)
        .flat_map(|i| (0..lambda_size).map(move |l| format!("({i},{l})")))
        .collect();
    let mut table = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            table.push((x / lambda_size) * lambda_size + y % lambda_size);
        }
    }
    FiniteSemigroup::from_flat(elements, table)
}

/// `x·y = y`.
pub fn right_zero(n: usize) -> Result<FiniteSemigroup> {
    rectangular_band(1, n)
}

/// `x·y = x`.
pub fn left_zero(n: usize) -> Result<FiniteSemigroup> {
    rectangular_band(n, 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels(n: usize) -> Vec<String> {
        (0..n).map(|i| i.to_string()).collect()
    }

    #[test]
    fn right_zero_table_is_valid_without_identity() {
        let s = FiniteSemigroup::new(labels(2), vec![vec![0, 1], vec![0, 1]]).unwrap();
        assert_eq!(s.identity(), None);
    }

    #[test]
    fn identity_detected() {
        let s = FiniteSemigroup::new(labels(2), vec![vec![0, 1], vec![1, 1]]).unwrap();
        assert_eq!(s.identity(), Some(0));
    }

    #[test]
    fn non_associative_witness() {
        let err = FiniteSemigroup::new(labels(2), vec![vec![1, 0], vec![0, 0]]).unwrap_err();
        assert_eq!(err, Error::NonAssociative { x: 0, y: 0, z: 1 });
    }

    #[test]
    fn shape_and_range_errors() {
        assert!(matches!(
            FiniteSemigroup::new(labels(2), vec![vec![0, 1]]),
            Err(Error::ShapeMismatch(_))
        ));
        assert!(matches!(
            FiniteSemigroup::new(labels(2), vec![vec![0, 1], vec![0]]),
            Err(Error::ShapeMismatch(_))
        ));
        assert!(matches!(
            FiniteSemigroup::new(labels(2), vec![vec![0, 2], vec![0, 1]]),
            Err(Error::IndexOutOfRange { index: 2, .. })
        ));
    }

    #[test]
    fn band_projections() {
        let rz = rectangular_band(1, 2).unwrap();
        let lz = rectangular_band(2, 1).unwrap();
        for x in 0..2 {
            for y in 0..2 {
                assert_eq!(rz.mul(x, y), y);
                assert_eq!(lz.mul(x, y), x);
            }
        }
        let b = rectangular_band(2, 2).unwrap();
        // (0,0)·(1,1) = (0,1)
        assert_eq!(b.label(b.mul(0, 3)), "(0,1)");
        assert!((0..4).all(|x| b.is_idempotent(x)));
        assert!(rectangular_band(0, 3).is_err());
    }

    #[test]
    fn idempotent_tags() {
        let rz = right_zero(2).unwrap();
        assert!(rz
            .classify_idempotents()
            .iter()
            .all(|&(_, t)| t == IdempotentTag::LeftIdentity));
        let lz = left_zero(2).unwrap();
        assert!(lz
            .classify_idempotents()
            .iter()
            .all(|&(_, t)| t == IdempotentTag::LeftZero));
        let b = rectangular_band(2, 2).unwrap();
        let tags = b.classify_idempotents();
        assert_eq!(tags.len(), 4);
        assert!(tags.iter().all(|&(_, t)| t == IdempotentTag::Neither));
    }

    #[test]
    fn band_shape_recovers_coordinates() {
        let b = rectangular_band(2, 3).unwrap();
        let shape = b.band_shape().unwrap();
        assert_eq!((shape.i_size, shape.lambda_size), (2, 3));
        for x in 0..6 {
            assert_eq!(shape.coords[x], (x / 3, x % 3));
        }
        let not_band = FiniteSemigroup::new(labels(2), vec![vec![0, 1], vec![1, 1]]).unwrap();
        assert!(not_band.band_shape().is_none());
    }
}
