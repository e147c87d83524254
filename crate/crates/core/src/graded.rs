//! Graded bases, canonical graded subspaces and graded bilinear rules.
//!
//! A [`GradedSubspace`] stores, for each grade, an RREF basis of its
//! component inside the ambient homogeneous block. All constructions go
//! through [`linalg::rref`], so equal subspaces have identical blocks.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write as _;
use std::sync::Arc;

use thiserror::Error;

use crate::group::{GroupElement, GroupError, GroupSpec};
use crate::linalg;
use crate::scalar::{FieldSpec, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GradedError {
    #[error("duplicate basis name {0:?}")]
    DuplicateName(String),
    #[error("unknown basis name {0:?}")]
    UnknownName(String),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("vector mixes grades {0} and {1}")]
    MixedGrades(GroupElement, GroupElement),
    #[error("vector has length {found}, expected {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("no basis vectors at grade {0}")]
    EmptyGrade(GroupElement),
    #[error("subspace is not contained in the ambient subspace at grade {0}")]
    NotContained(GroupElement),
    #[error("basis position {0} out of range")]
    PositionOutOfRange(usize),
    #[error("{0}")]
    Scalar(#[from] crate::scalar::ScalarError),
}

/// Ordered named basis vectors, each with one grade.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedBasis {
    field: FieldSpec,
    group: GroupSpec,
    entries: Vec<(String, GroupElement)>,
    blocks: BTreeMap<GroupElement, Vec<usize>>,
    local: Vec<usize>,
    names: HashMap<String, usize>,
}

/// A vector inside one homogeneous block, in block-local coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HomogeneousVector {
    pub grade: GroupElement,
    pub coords: Vec<Scalar>,
}

/// Per-grade RREF bases; absent grades are zero.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct GradedSubspace {
    blocks: BTreeMap<GroupElement, Vec<Vec<Scalar>>>,
}

/// A linear functional on the block at `grade`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Functional {
    pub grade: GroupElement,
    pub coeffs: Vec<Scalar>,
}

impl GradedBasis {
    pub fn new(
        field: FieldSpec,
        group: GroupSpec,
        entries: Vec<(String, GroupElement)>,
    ) -> Result<Self, GradedError> {
        let mut names = HashMap::new();
        let mut blocks: BTreeMap<GroupElement, Vec<usize>> = BTreeMap::new();
        let mut local = Vec::with_capacity(entries.len());
        for (i, (name, grade)) in entries.iter().enumerate() {
            group.check(grade)?;
            if names.insert(name.clone(), i).is_some() {
                return Err(GradedError::DuplicateName(name.clone()));
            }
            let block = blocks.entry(grade.clone()).or_default();
            local.push(block.len());
            block.push(i);
        }
        Ok(GradedBasis {
            field,
            group,
            entries,
            blocks,
            local,
            names,
        })
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[(String, GroupElement)] {
        &self.entries
    }

    pub fn name(&self, i: usize) -> &str {
        &self.entries[i].0
    }

    pub fn grade(&self, i: usize) -> &GroupElement {
        &self.entries[i].1
    }

    pub fn position(&self, name: &str) -> Result<usize, GradedError> {
        self.names
            .get(name)
            .copied()
            .ok_or_else(|| GradedError::UnknownName(name.to_string()))
    }

    /// Index of basis vector `i` inside its grade block.
    pub fn local_index(&self, i: usize) -> usize {
        self.local[i]
    }

    /// Grades with a nonzero component, in lexicographic order.
    pub fn grades(&self) -> impl Iterator<Item = &GroupElement> {
        self.blocks.keys()
    }

    /// Basis positions at `grade` (empty if the component is zero).
    pub fn block(&self, grade: &GroupElement) -> &[usize] {
        self.blocks.get(grade).map_or(&[], Vec::as_slice)
    }

    pub fn block_dim(&self, grade: &GroupElement) -> usize {
        self.block(grade).len()
    }

    /// Grades other than the identity where the component is nonzero.
    pub fn support(&self) -> BTreeSet<GroupElement> {
        self.blocks
            .keys()
            .filter(|g| !g.is_identity())
            .cloned()
            .collect()
    }

    pub fn basis_vector(&self, i: usize) -> HomogeneousVector {
        let grade = self.grade(i).clone();
        let coords = linalg::unit_vector(self.field, self.block_dim(&grade), self.local[i]);
        HomogeneousVector { grade, coords }
    }

    pub fn named(&self, name: &str) -> Result<HomogeneousVector, GradedError> {
        Ok(self.basis_vector(self.position(name)?))
    }

    pub fn zero_full(&self) -> Vec<Scalar> {
        linalg::zero_vector(self.field, self.dim())
    }

    pub fn to_full(&self, v: &HomogeneousVector) -> Vec<Scalar> {
        let mut full = self.zero_full();
        for (&pos, c) in self.block(&v.grade).iter().zip(&v.coords) {
            full[pos] = c.clone();
        }
        full
    }

    /// Nonzero homogeneous components of a full coordinate vector.
    pub fn split(&self, full: &[Scalar]) -> Vec<HomogeneousVector> {
        self.blocks
            .iter()
            .filter_map(|(grade, positions)| {
                let coords: Vec<Scalar> = positions.iter().map(|&p| full[p].clone()).collect();
                (!linalg::is_zero_vector(&coords)).then(|| HomogeneousVector {
                    grade: grade.clone(),
                    coords,
                })
            })
            .collect()
    }

    /// The homogeneous vector represented by `full`, if it is homogeneous.
    /// The zero vector is reported at the identity grade.
    pub fn homogeneous(&self, full: &[Scalar]) -> Result<HomogeneousVector, GradedError> {
        if full.len() != self.dim() {
            return Err(GradedError::DimensionMismatch {
                expected: self.dim(),
                found: full.len(),
            });
        }
        let mut parts = self.split(full);
        match parts.len() {
            0 => {
                let grade = self.group.identity();
                let coords = linalg::zero_vector(self.field, self.block_dim(&grade));
                Ok(HomogeneousVector { grade, coords })
            }
            1 => Ok(parts.pop().expect("one part")),
            _ => Err(GradedError::MixedGrades(
                parts[0].grade.clone(),
                parts[1].grade.clone(),
            )),
        }
    }

    pub fn format_full(&self, full: &[Scalar]) -> String {
        let mut out = String::new();
        for (i, c) in full.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let negative = c.is_negative();
            let magnitude = if negative { -c } else { c.clone() };
            if out.is_empty() {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            if !magnitude.is_one() {
                let _ = write!(out, "{magnitude}*");
            }
            out.push_str(self.name(i));
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }

    pub fn format(&self, v: &HomogeneousVector) -> String {
        self.format_full(&self.to_full(v))
    }

    fn check_vector(&self, v: &HomogeneousVector) -> Result<(), GradedError> {
        self.group.check(&v.grade)?;
        let expected = self.block_dim(&v.grade);
        if v.coords.len() != expected {
            return Err(GradedError::DimensionMismatch {
                expected,
                found: v.coords.len(),
            });
        }
        for c in &v.coords {
            if c.field() != self.field {
                return Err(
                    crate::scalar::ScalarError::FieldMismatch(self.field, c.field()).into(),
                );
            }
        }
        Ok(())
    }

    fn check_subspace(&self, u: &GradedSubspace) -> Result<(), GradedError> {
        for (grade, rows) in &u.blocks {
            let expected = self.block_dim(grade);
            if expected == 0 {
                return Err(GradedError::EmptyGrade(grade.clone()));
            }
            if let Some(row) = rows.iter().find(|r| r.len() != expected) {
                return Err(GradedError::DimensionMismatch {
                    expected,
                    found: row.len(),
                });
            }
        }
        Ok(())
    }

    /// Canonical span of homogeneous vectors.
    pub fn span(&self, vectors: &[HomogeneousVector]) -> Result<GradedSubspace, GradedError> {
        let mut grouped: BTreeMap<GroupElement, Vec<Vec<Scalar>>> = BTreeMap::new();
        for v in vectors {
            self.check_vector(v)?;
            grouped
                .entry(v.grade.clone())
                .or_default()
                .push(v.coords.clone());
        }
        Ok(GradedSubspace::from_rows(grouped))
    }

    /// Span of full coordinate vectors, each required to be homogeneous.
    pub fn span_full(&self, vectors: &[Vec<Scalar>]) -> Result<GradedSubspace, GradedError> {
        let parts = vectors
            .iter()
            .map(|v| self.homogeneous(v))
            .collect::<Result<Vec<_>, _>>()?;
        self.span(&parts)
    }

    /// Span of all homogeneous components of arbitrary full vectors.
    pub fn span_components<'a>(
        &self,
        vectors: impl IntoIterator<Item = &'a Vec<Scalar>>,
    ) -> GradedSubspace {
        let mut grouped: BTreeMap<GroupElement, Vec<Vec<Scalar>>> = BTreeMap::new();
        for v in vectors {
            for part in self.split(v) {
                grouped.entry(part.grade).or_default().push(part.coords);
            }
        }
        GradedSubspace::from_rows(grouped)
    }

    pub fn whole(&self) -> GradedSubspace {
        let blocks = self
            .blocks
            .iter()
            .map(|(g, pos)| {
                (
                    g.clone(),
                    (0..pos.len())
                        .map(|i| linalg::unit_vector(self.field, pos.len(), i))
                        .collect(),
                )
            })
            .collect();
        GradedSubspace { blocks }
    }

    /// The full homogeneous component at `grade`.
    pub fn component(&self, grade: &GroupElement) -> GradedSubspace {
        self.whole().restrict_to(std::iter::once(grade))
    }

    /// Subspace spanned by the named basis vectors.
    pub fn span_names(&self, names: &[&str]) -> Result<GradedSubspace, GradedError> {
        let vectors = names
            .iter()
            .map(|n| self.named(n))
            .collect::<Result<Vec<_>, _>>()?;
        self.span(&vectors)
    }

    pub fn sum(
        &self,
        u: &GradedSubspace,
        v: &GradedSubspace,
    ) -> Result<GradedSubspace, GradedError> {
        self.check_subspace(u)?;
        self.check_subspace(v)?;
        Ok(u.plus(v))
    }

    pub fn intersect(
        &self,
        u: &GradedSubspace,
        v: &GradedSubspace,
    ) -> Result<GradedSubspace, GradedError> {
        self.check_subspace(u)?;
        self.check_subspace(v)?;
        let mut blocks = BTreeMap::new();
        for (grade, rows) in &u.blocks {
            if let Some(other) = v.blocks.get(grade) {
                let meet = linalg::intersect(self.field, rows, other, self.block_dim(grade));
                if !meet.is_empty() {
                    blocks.insert(grade.clone(), meet);
                }
            }
        }
        Ok(GradedSubspace { blocks })
    }

    pub fn contains(&self, u: &GradedSubspace, v: &HomogeneousVector) -> Result<bool, GradedError> {
        self.check_vector(v)?;
        Ok(u.contains(v))
    }

    /// `C` with `C ⊕ U = W` per grade, using the lowest-index rule.
    pub fn complement_in(
        &self,
        u: &GradedSubspace,
        w: &GradedSubspace,
    ) -> Result<GradedSubspace, GradedError> {
        self.check_subspace(u)?;
        self.check_subspace(w)?;
        let mut blocks = BTreeMap::new();
        for (grade, rows) in &u.blocks {
            let ambient = w.block(grade);
            if !linalg::is_subspace(rows, ambient) {
                return Err(GradedError::NotContained(grade.clone()));
            }
        }
        for (grade, rows) in &w.blocks {
            let c = linalg::complement(u.block(grade), rows);
            if !c.is_empty() {
                blocks.insert(grade.clone(), c);
            }
        }
        Ok(GradedSubspace { blocks })
    }

    /// Per-grade common kernel of the given functionals; grades without
    /// conditions contribute their whole block.
    pub fn solve_linear_conditions(
        &self,
        conditions: &[Functional],
    ) -> Result<GradedSubspace, GradedError> {
        let mut per_grade: BTreeMap<GroupElement, Vec<Vec<Scalar>>> = BTreeMap::new();
        for f in conditions {
            let expected = self.block_dim(&f.grade);
            if expected == 0 {
                return Err(GradedError::EmptyGrade(f.grade.clone()));
            }
            if f.coeffs.len() != expected {
                return Err(GradedError::DimensionMismatch {
                    expected,
                    found: f.coeffs.len(),
                });
            }
            per_grade
                .entry(f.grade.clone())
                .or_default()
                .push(f.coeffs.clone());
        }
        let mut blocks = BTreeMap::new();
        for (grade, positions) in &self.blocks {
            let kernel = match per_grade.get(grade) {
                Some(rows) => linalg::nullspace(self.field, rows, positions.len()),
                None => (0..positions.len())
                    .map(|i| linalg::unit_vector(self.field, positions.len(), i))
                    .collect(),
            };
            if !kernel.is_empty() {
                blocks.insert(grade.clone(), kernel);
            }
        }
        Ok(GradedSubspace { blocks })
    }

    /// Full coordinate vectors of every basis row of `u`.
    pub fn generators(&self, u: &GradedSubspace) -> Vec<Vec<Scalar>> {
        u.vectors().map(|v| self.to_full(&v)).collect()
    }

    pub fn format_subspace(&self, u: &GradedSubspace) -> String {
        if u.is_zero() {
            return "0".to_string();
        }
        let parts: Vec<String> = u.vectors().map(|v| self.format(&v)).collect();
        format!("<{}>", parts.join(", "))
    }
}

impl GradedSubspace {
    pub fn zero() -> Self {
        GradedSubspace::default()
    }

    /// Canonicalizes raw rows grouped by grade.
    pub fn from_rows(grouped: BTreeMap<GroupElement, Vec<Vec<Scalar>>>) -> Self {
        let blocks = grouped
            .into_iter()
            .map(|(g, rows)| (g, linalg::rref(rows)))
            .filter(|(_, rows)| !rows.is_empty())
            .collect();
        GradedSubspace { blocks }
    }

    pub fn blocks(&self) -> &BTreeMap<GroupElement, Vec<Vec<Scalar>>> {
        &self.blocks
    }

    pub fn block(&self, grade: &GroupElement) -> &[Vec<Scalar>] {
        self.blocks.get(grade).map_or(&[], Vec::as_slice)
    }

    pub fn block_dim(&self, grade: &GroupElement) -> usize {
        self.block(grade).len()
    }

    pub fn dim(&self) -> usize {
        self.blocks.values().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn grades(&self) -> impl Iterator<Item = &GroupElement> {
        self.blocks.keys()
    }

    /// Basis rows as homogeneous vectors, in grade order.
    pub fn vectors(&self) -> impl Iterator<Item = HomogeneousVector> + '_ {
        self.blocks.iter().flat_map(|(g, rows)| {
            rows.iter().map(move |r| HomogeneousVector {
                grade: g.clone(),
                coords: r.clone(),
            })
        })
    }

    pub fn contains(&self, v: &HomogeneousVector) -> bool {
        linalg::is_zero_vector(&v.coords) || linalg::in_span(self.block(&v.grade), &v.coords)
    }

    pub fn is_subspace_of(&self, other: &GradedSubspace) -> bool {
        self.blocks
            .iter()
            .all(|(g, rows)| linalg::is_subspace(rows, other.block(g)))
    }

    /// Sum without ambient checks.
    pub fn plus(&self, other: &GradedSubspace) -> GradedSubspace {
        let mut grouped = self.blocks.clone();
        for (g, rows) in &other.blocks {
            grouped
                .entry(g.clone())
                .or_default()
                .extend(rows.iter().cloned());
        }
        GradedSubspace::from_rows(grouped)
    }

    /// Components at the given grades only.
    pub fn restrict_to<'a>(
        &self,
        grades: impl IntoIterator<Item = &'a GroupElement>,
    ) -> GradedSubspace {
        let blocks = grades
            .into_iter()
            .filter_map(|g| self.blocks.get(g).map(|rows| (g.clone(), rows.clone())))
            .collect();
        GradedSubspace { blocks }
    }
}

/// A grade-compatible bilinear map given by sparse structure constants.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BilinearRule {
    left: Arc<GradedBasis>,
    right: Arc<GradedBasis>,
    codomain: Arc<GradedBasis>,
    table: BTreeMap<(usize, usize), Vec<(usize, Scalar)>>,
}

/// A table entry whose output leaves the product grade.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradeViolation {
    pub left: usize,
    pub right: usize,
    pub output: usize,
    pub expected: GroupElement,
    pub found: GroupElement,
}

impl BilinearRule {
    /// Builds a rule and rejects entries that break the grade law.
    pub fn new(
        left: Arc<GradedBasis>,
        right: Arc<GradedBasis>,
        codomain: Arc<GradedBasis>,
        entries: impl IntoIterator<Item = ((usize, usize), Vec<(usize, Scalar)>)>,
    ) -> Result<Self, GradedError> {
        let rule = BilinearRule::new_unchecked(left, right, codomain, entries)?;
        if let Some(v) = rule.grade_violations().into_iter().next() {
            return Err(GradedError::MixedGrades(v.expected, v.found));
        }
        Ok(rule)
    }

    /// Builds a rule without the grade law, for data read from files.
    /// Positions and fields are still checked; zero coefficients are dropped
    /// and repeated outputs merged.
    pub fn new_unchecked(
        left: Arc<GradedBasis>,
        right: Arc<GradedBasis>,
        codomain: Arc<GradedBasis>,
        entries: impl IntoIterator<Item = ((usize, usize), Vec<(usize, Scalar)>)>,
    ) -> Result<Self, GradedError> {
        let field = codomain.field();
        let mut table: BTreeMap<(usize, usize), BTreeMap<usize, Scalar>> = BTreeMap::new();
        for ((i, j), terms) in entries {
            if i >= left.dim() {
                return Err(GradedError::PositionOutOfRange(i));
            }
            if j >= right.dim() {
                return Err(GradedError::PositionOutOfRange(j));
            }
            let slot = table.entry((i, j)).or_default();
            for (k, c) in terms {
                if k >= codomain.dim() {
                    return Err(GradedError::PositionOutOfRange(k));
                }
                if c.field() != field {
                    return Err(crate::scalar::ScalarError::FieldMismatch(field, c.field()).into());
                }
                let acc = slot.entry(k).or_insert_with(|| field.zero());
                *acc = &*acc + &c;
            }
        }
        let table = table
            .into_iter()
            .map(|(key, terms)| {
                (
                    key,
                    terms
                        .into_iter()
                        .filter(|(_, c)| !c.is_zero())
                        .collect::<Vec<_>>(),
                )
            })
            .filter(|(_, terms)| !terms.is_empty())
            .collect();
        Ok(BilinearRule {
            left,
            right,
            codomain,
            table,
        })
    }

    pub fn zero(
        left: Arc<GradedBasis>,
        right: Arc<GradedBasis>,
        codomain: Arc<GradedBasis>,
    ) -> Self {
        BilinearRule {
            left,
            right,
            codomain,
            table: BTreeMap::new(),
        }
    }

    pub fn left(&self) -> &Arc<GradedBasis> {
        &self.left
    }

    pub fn right(&self) -> &Arc<GradedBasis> {
        &self.right
    }

    pub fn codomain(&self) -> &Arc<GradedBasis> {
        &self.codomain
    }

    pub fn table(&self) -> &BTreeMap<(usize, usize), Vec<(usize, Scalar)>> {
        &self.table
    }

    pub fn entry(&self, i: usize, j: usize) -> &[(usize, Scalar)] {
        self.table.get(&(i, j)).map_or(&[], Vec::as_slice)
    }

    pub fn is_zero(&self) -> bool {
        self.table.is_empty()
    }

    /// Value on a pair of basis vectors, as a full codomain vector.
    pub fn eval_basis(&self, i: usize, j: usize) -> Vec<Scalar> {
        let mut out = self.codomain.zero_full();
        for (k, c) in self.entry(i, j) {
            out[*k] = c.clone();
        }
        out
    }

    /// Value on full coordinate vectors.
    pub fn eval(&self, u: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
        let mut out = self.codomain.zero_full();
        for ((i, j), terms) in &self.table {
            let (a, b) = (&u[*i], &v[*j]);
            if a.is_zero() || b.is_zero() {
                continue;
            }
            let ab = a * b;
            for (k, c) in terms {
                out[*k] = &out[*k] + &(&ab * c);
            }
        }
        out
    }

    /// Canonical span of `rule(u, v)` over basis rows of `U` and `V`.
    pub fn image(&self, u: &GradedSubspace, v: &GradedSubspace) -> GradedSubspace {
        let us = self.left.generators(u);
        let vs = self.right.generators(v);
        let products: Vec<Vec<Scalar>> = us
            .iter()
            .flat_map(|x| vs.iter().map(move |y| self.eval(x, y)))
            .collect();
        self.codomain.span_components(&products)
    }

    /// Entries that land outside the product grade.
    pub fn grade_violations(&self) -> Vec<GradeViolation> {
        let group = self.codomain.group();
        let mut out = Vec::new();
        for ((i, j), terms) in &self.table {
            let expected = group.mul_unchecked(self.left.grade(*i), self.right.grade(*j));
            for (k, _) in terms {
                let found = self.codomain.grade(*k);
                if *found != expected {
                    out.push(GradeViolation {
                        left: *i,
                        right: *j,
                        output: *k,
                        expected: expected.clone(),
                        found: found.clone(),
                    });
                }
            }
        }
        out
    }

    /// Same structure constants over new (re-labelled) bases of equal shape.
    pub fn with_bases(
        &self,
        left: Arc<GradedBasis>,
        right: Arc<GradedBasis>,
        codomain: Arc<GradedBasis>,
    ) -> Self {
        BilinearRule {
            left,
            right,
            codomain,
            table: self.table.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn gf(p: u64) -> FieldSpec {
        FieldSpec::prime(p).unwrap()
    }

    fn single_block(field: FieldSpec, n: usize) -> GradedBasis {
        let z = GroupSpec::integers();
        let entries = (0..n).map(|i| (format!("v{i}"), z.identity())).collect();
        GradedBasis::new(field, z, entries).unwrap()
    }

    fn hv(basis: &GradedBasis, coords: &[i64]) -> HomogeneousVector {
        HomogeneousVector {
            grade: basis.group().identity(),
            coords: coords.iter().map(|&c| basis.field().from_i64(c)).collect(),
        }
    }

    #[test]
    fn span_examples() {
        let b = single_block(FieldSpec::rational(), 2);
        let full = b.span(&[hv(&b, &[1, 0]), hv(&b, &[1, 1])]).unwrap();
        assert_eq!(full, b.whole());
        let line = b.span(&[hv(&b, &[2, 4])]).unwrap();
        assert_eq!(line.block(&b.group().identity()), &[hv(&b, &[1, 2]).coords]);
        assert!(b.span(&[]).unwrap().is_zero());
    }

    #[test]
    fn span_rejects_bad_vectors() {
        let z = GroupSpec::integers();
        let f = FieldSpec::rational();
        let b = GradedBasis::new(
            f,
            z.clone(),
            vec![
                ("x".into(), z.element(vec![1]).unwrap()),
                ("y".into(), z.element(vec![2]).unwrap()),
            ],
        )
        .unwrap();
        let mixed = vec![f.one(), f.one()];
        assert!(matches!(
            b.span_full(&[mixed]),
            Err(GradedError::MixedGrades(..))
        ));
        let wrong = HomogeneousVector {
            grade: z.element(vec![1]).unwrap(),
            coords: vec![f.one(), f.one()],
        };
        assert!(matches!(
            b.span(&[wrong]),
            Err(GradedError::DimensionMismatch { .. })
        ));
        assert!(matches!(
            GradedBasis::new(
                f,
                z.clone(),
                vec![("x".into(), z.identity()), ("x".into(), z.identity())]
            ),
            Err(GradedError::DuplicateName(_))
        ));
    }

    #[test]
    fn sum_intersect_contains() {
        let b = single_block(FieldSpec::rational(), 2);
        let u = b.span(&[hv(&b, &[1, 0])]).unwrap();
        let v = b.span(&[hv(&b, &[1, 1])]).unwrap();
        assert_eq!(b.sum(&u, &GradedSubspace::zero()).unwrap(), u);
        assert_eq!(b.sum(&u, &v).unwrap(), b.whole());
        assert_eq!(b.intersect(&u, &u).unwrap(), u);
        assert!(b.intersect(&u, &v).unwrap().is_zero());
        assert!(b.contains(&u, &hv(&b, &[0, 0])).unwrap());
        assert!(!b.contains(&u, &hv(&b, &[0, 1])).unwrap());
    }

    #[test]
    fn complement_examples() {
        let b = single_block(FieldSpec::rational(), 2);
        let w = b.whole();
        let zero = GradedSubspace::zero();
        assert_eq!(b.complement_in(&zero, &w).unwrap(), w);
        assert!(b.complement_in(&w, &w).unwrap().is_zero());
        let diag = b.span(&[hv(&b, &[1, 1])]).unwrap();
        assert_eq!(
            b.complement_in(&diag, &w).unwrap(),
            b.span(&[hv(&b, &[0, 1])]).unwrap()
        );
        let line = b.span(&[hv(&b, &[1, 0])]).unwrap();
        assert!(matches!(
            b.complement_in(&diag, &line),
            Err(GradedError::NotContained(_))
        ));
    }

    #[test]
    fn conditions() {
        let b = single_block(FieldSpec::rational(), 3);
        assert_eq!(b.solve_linear_conditions(&[]).unwrap(), b.whole());
        let all: Vec<Functional> = (0..3)
            .map(|i| Functional {
                grade: b.group().identity(),
                coeffs: linalg::unit_vector(b.field(), 3, i),
            })
            .collect();
        assert!(b.solve_linear_conditions(&all).unwrap().is_zero());
    }

    #[test]
    fn rule_grade_law() {
        let z = GroupSpec::integers();
        let f = FieldSpec::rational();
        let g = |n| z.element(vec![n]).unwrap();
        let b = Arc::new(
            GradedBasis::new(
                f,
                z.clone(),
                vec![("x".into(), g(1)), ("y".into(), g(2)), ("w".into(), g(3))],
            )
            .unwrap(),
        );
        let ok = BilinearRule::new(
            b.clone(),
            b.clone(),
            b.clone(),
            vec![((0, 1), vec![(2, f.one())])],
        );
        assert!(ok.is_ok());
        let bad = BilinearRule::new(
            b.clone(),
            b.clone(),
            b.clone(),
            vec![((0, 0), vec![(2, f.one())])],
        );
        assert!(bad.is_err());
        let raw = BilinearRule::new_unchecked(
            b.clone(),
            b.clone(),
            b.clone(),
            vec![((0, 0), vec![(2, f.one())])],
        )
        .unwrap();
        assert_eq!(raw.grade_violations().len(), 1);
        let image = ok.unwrap().image(&b.whole(), &b.whole());
        assert_eq!(image, b.component(&g(3)));
        assert!(raw.image(&GradedSubspace::zero(), &b.whole()).is_zero());
    }

    fn arb_block_vectors(n: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
        proptest::collection::vec(proptest::collection::vec(0i64..3, n), 0..4)
    }

    proptest! {
        #[test]
        fn canonical_form(rows in arb_block_vectors(3), perm in 0usize..6) {
            let b = single_block(gf(3), 3);
            let vs: Vec<_> = rows.iter().map(|r| hv(&b, r)).collect();
            let u = b.span(&vs).unwrap();
            let mut shuffled: Vec<_> = u.vectors().collect();
            let len = shuffled.len().max(1);
            shuffled.rotate_left(perm % len);
            shuffled.extend(vs.iter().cloned());
            prop_assert_eq!(b.span(&shuffled).unwrap(), u);
        }

        #[test]
        fn dimension_formula(a in arb_block_vectors(3), c in arb_block_vectors(3)) {
            let b = single_block(gf(3), 3);
            let u = b.span(&a.iter().map(|r| hv(&b, r)).collect::<Vec<_>>()).unwrap();
            let w = b.span(&c.iter().map(|r| hv(&b, r)).collect::<Vec<_>>()).unwrap();
            let s = b.sum(&u, &w).unwrap();
            prop_assert_eq!(s.dim() + b.intersect(&u, &w).unwrap().dim(), u.dim() + w.dim());
            prop_assert_eq!(b.intersect(&s, &w).unwrap(), w.clone());
            for v in u.vectors() {
                prop_assert!(b.contains(&u, &v).unwrap());
            }
        }

        #[test]
        fn image_matches_brute_force(table in proptest::collection::vec((0usize..2, 0usize..2, 0usize..2, 0i64..3), 0..6),
                                     a in arb_block_vectors(2), c in arb_block_vectors(2)) {
            let f = gf(3);
            let b = Arc::new(single_block(f, 2));
            let entries = table.iter().map(|&(i, j, k, x)| ((i, j), vec![(k, f.from_i64(x))]));
            let rule = BilinearRule::new(b.clone(), b.clone(), b.clone(), entries).unwrap();
            let u = b.span(&a.iter().map(|r| hv(&b, r)).collect::<Vec<_>>()).unwrap();
            let w = b.span(&c.iter().map(|r| hv(&b, r)).collect::<Vec<_>>()).unwrap();
            // all elements of each subspace, not just basis rows
            let elems = |s: &GradedSubspace| -> Vec<Vec<Scalar>> {
                let gens = b.generators(s);
                let mut out = vec![b.zero_full()];
                for g in gens {
                    let mut next = Vec::new();
                    for v in &out {
                        for k in 0..3 {
                            let mut x = v.clone();
                            linalg::axpy(&mut x, &f.from_i64(k), &g);
                            next.push(x);
                        }
                    }
                    out = next;
                }
                out
            };
            let products: Vec<Vec<Scalar>> = elems(&u).iter()
                .flat_map(|x| elems(&w).into_iter().map(|y| rule.eval(x, &y)).collect::<Vec<_>>())
                .collect();
            prop_assert_eq!(rule.image(&u, &w), b.span_components(&products));
        }
    }
}
