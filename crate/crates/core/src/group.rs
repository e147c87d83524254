//! Finitely generated abelian grading groups `Z^r x Z/m1 x ... x Z/ms`.
//!
//! The group is written additively internally: the neutral element is the
//! zero coordinate vector. Elements order lexicographically by coordinates,
//! which fixes every iteration order downstream.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("torsion modulus {0} must be at least 2")]
    BadModulus(u64),
    #[error("element has {found} coordinates, group has rank {expected}")]
    RankMismatch { expected: usize, found: usize },
    #[error("torsion coordinate {index} = {value} is not reduced modulo {modulus}")]
    NotCanonical {
        index: usize,
        value: i64,
        modulus: u64,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupSpec {
    free_rank: usize,
    torsion: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    coords: Vec<i64>,
}

impl GroupElement {
    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn is_identity(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    /// Coordinates joined by commas, e.g. `1,0`.
    pub fn label(&self) -> String {
        self.coords
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coords.len() == 1 {
            write!(f, "{}", self.coords[0])
        } else {
            write!(f, "({})", self.label())
        }
    }
}

impl GroupSpec {
    pub fn new(free_rank: usize, torsion: Vec<u64>) -> Result<Self, GroupError> {
        if let Some(&m) = torsion.iter().find(|&&m| m < 2) {
            return Err(GroupError::BadModulus(m));
        }
        Ok(GroupSpec { free_rank, torsion })
    }

    pub fn cyclic(m: u64) -> Result<Self, GroupError> {
        GroupSpec::new(0, vec![m])
    }

    pub fn integers() -> Self {
        GroupSpec {
            free_rank: 1,
            torsion: vec![],
        }
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion(&self) -> &[u64] {
        &self.torsion
    }

    /// Number of coordinates, `r + s`.
    pub fn rank(&self) -> usize {
        self.free_rank + self.torsion.len()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement {
            coords: vec![0; self.rank()],
        }
    }

    /// Builds an element, reducing torsion coordinates into range.
    pub fn element(&self, mut coords: Vec<i64>) -> Result<GroupElement, GroupError> {
        if coords.len() != self.rank() {
            return Err(GroupError::RankMismatch {
                expected: self.rank(),
                found: coords.len(),
            });
        }
        for (i, &m) in self.torsion.iter().enumerate() {
            let c = &mut coords[self.free_rank + i];
            *c = c.rem_euclid(m as i64);
        }
        Ok(GroupElement { coords })
    }

    /// Accepts only already-canonical coordinates (used when reading files).
    pub fn canonical_element(&self, coords: Vec<i64>) -> Result<GroupElement, GroupError> {
        if coords.len() != self.rank() {
            return Err(GroupError::RankMismatch {
                expected: self.rank(),
                found: coords.len(),
            });
        }
        for (i, &m) in self.torsion.iter().enumerate() {
            let value = coords[self.free_rank + i];
            if value < 0 || value >= m as i64 {
                return Err(GroupError::NotCanonical {
                    index: self.free_rank + i,
                    value,
                    modulus: m,
                });
            }
        }
        Ok(GroupElement { coords })
    }

    pub fn check(&self, a: &GroupElement) -> Result<(), GroupError> {
        self.canonical_element(a.coords.clone()).map(|_| ())
    }

    pub fn mul(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement, GroupError> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.mul_unchecked(a, b))
    }

    /// Group product for elements already known to belong to this group.
    pub(crate) fn mul_unchecked(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        let coords = a.coords.iter().zip(&b.coords).map(|(x, y)| x + y).collect();
        self.element(coords).expect("rank checked by caller")
    }

    pub fn inv(&self, a: &GroupElement) -> Result<GroupElement, GroupError> {
        self.check(a)?;
        Ok(self.inv_unchecked(a))
    }

    pub(crate) fn inv_unchecked(&self, a: &GroupElement) -> GroupElement {
        self.element(a.coords.iter().map(|c| -c).collect())
            .expect("rank checked by caller")
    }

    /// `n`-fold product of `a` (negative `n` uses the inverse).
    pub fn pow(&self, a: &GroupElement, n: i64) -> Result<GroupElement, GroupError> {
        self.check(a)?;
        Ok(self
            .element(a.coords.iter().map(|c| c * n).collect())
            .expect("rank checked"))
    }

    /// `G x H` with coordinates ordered free(G), free(H), torsion(G), torsion(H).
    pub fn product(&self, other: &GroupSpec) -> GroupSpec {
        let mut torsion = self.torsion.clone();
        torsion.extend_from_slice(&other.torsion);
        GroupSpec {
            free_rank: self.free_rank + other.free_rank,
            torsion,
        }
    }

    /// Images of `a in G` and `b in H` inside `self.product(other)`.
    pub fn embed_left(&self, other: &GroupSpec, a: &GroupElement) -> GroupElement {
        let mut coords = a.coords[..self.free_rank].to_vec();
        coords.extend(std::iter::repeat_n(0, other.free_rank));
        coords.extend_from_slice(&a.coords[self.free_rank..]);
        coords.extend(std::iter::repeat_n(0, other.torsion.len()));
        GroupElement { coords }
    }

    pub fn embed_right(&self, other: &GroupSpec, b: &GroupElement) -> GroupElement {
        let mut coords = vec![0; self.free_rank];
        coords.extend_from_slice(&b.coords[..other.free_rank]);
        coords.extend(std::iter::repeat_n(0, self.torsion.len()));
        coords.extend_from_slice(&b.coords[other.free_rank..]);
        GroupElement { coords }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = vec!["Z".to_string(); self.free_rank];
        parts.extend(self.torsion.iter().map(|m| format!("Z/{m}")));
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join(" x "))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn cyclic_product() {
        let g = GroupSpec::cyclic(3).unwrap();
        let one = g.element(vec![1]).unwrap();
        let two = g.element(vec![2]).unwrap();
        assert_eq!(g.mul(&one, &two).unwrap(), g.identity());
        assert_eq!(g.inv(&one).unwrap(), two);
    }

    #[test]
    fn mixed_product() {
        let g = GroupSpec::new(1, vec![3]).unwrap();
        let a = g.element(vec![2, 1]).unwrap();
        let b = g.element(vec![-1, 2]).unwrap();
        assert_eq!(g.mul(&a, &b).unwrap().coords(), &[1, 0]);
        assert_eq!(g.identity().coords(), &[0, 0]);
    }

    #[test]
    fn integer_inverse() {
        let z = GroupSpec::integers();
        assert_eq!(z.inv(&z.element(vec![5]).unwrap()).unwrap().coords(), &[-5]);
    }

    #[test]
    fn identity_is_self_inverse() {
        for g in [
            GroupSpec::cyclic(3).unwrap(),
            GroupSpec::new(1, vec![3]).unwrap(),
        ] {
            assert_eq!(g.inv(&g.identity()).unwrap(), g.identity());
        }
    }

    #[test]
    fn errors() {
        assert_eq!(GroupSpec::new(0, vec![1]), Err(GroupError::BadModulus(1)));
        let g = GroupSpec::cyclic(3).unwrap();
        let h = GroupSpec::new(1, vec![3]).unwrap();
        let a = h.element(vec![1, 1]).unwrap();
        assert!(matches!(
            g.mul(&a, &a),
            Err(GroupError::RankMismatch { .. })
        ));
        assert!(matches!(
            g.canonical_element(vec![3]),
            Err(GroupError::NotCanonical { .. })
        ));
    }

    #[test]
    fn product_embeddings() {
        let z = GroupSpec::integers();
        let c3 = GroupSpec::cyclic(3).unwrap();
        let p = c3.product(&z);
        assert_eq!(p.free_rank(), 1);
        assert_eq!(p.torsion(), &[3]);
        let a = c3.element(vec![2]).unwrap();
        let b = z.element(vec![-4]).unwrap();
        assert_eq!(c3.embed_left(&z, &a).coords(), &[0, 2]);
        assert_eq!(c3.embed_right(&z, &b).coords(), &[-4, 0]);
    }

    fn arb_elements() -> impl Strategy<Value = (GroupElement, GroupElement, GroupElement)> {
        let g = GroupSpec::new(2, vec![3, 4]).unwrap();
        let coords = || proptest::collection::vec(-20i64..20, 4);
        (coords(), coords(), coords()).prop_map(move |(a, b, c)| {
            (
                g.element(a).unwrap(),
                g.element(b).unwrap(),
                g.element(c).unwrap(),
            )
        })
    }

    proptest! {
        #[test]
        fn abelian_group_axioms((a, b, c) in arb_elements()) {
            let g = GroupSpec::new(2, vec![3, 4]).unwrap();
            let ab = g.mul(&a, &b).unwrap();
            prop_assert_eq!(&ab, &g.mul(&b, &a).unwrap());
            prop_assert_eq!(g.mul(&ab, &c).unwrap(), g.mul(&a, &g.mul(&b, &c).unwrap()).unwrap());
            prop_assert_eq!(g.mul(&a, &g.identity()).unwrap(), a.clone());
            prop_assert_eq!(g.mul(&a, &g.inv(&a).unwrap()).unwrap(), g.identity());
            // every result stays canonical
            prop_assert!(g.check(&ab).is_ok());
            prop_assert!(g.check(&g.inv(&c).unwrap()).is_ok());
        }
    }
}
