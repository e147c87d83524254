//! Homogeneous derivations of a graded commutative algebra and the
//! instance `(Der(A), A)` with the identity anchor.

use std::collections::BTreeSet;

use crate::graded::{BilinearRule, GradedBasis};
use crate::group::GroupElement;
use crate::linalg;
use crate::scalar::Scalar;

use super::{AlgebraError, AlgebraInstance, Table};

/// A homogeneous derivation of degree `grade`; `images[i]` is `D(a_i)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Derivation {
    pub grade: GroupElement,
    pub images: Vec<Vec<Scalar>>,
}

impl Derivation {
    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        let mut out = linalg::zero_vector(
            v.first().map_or_else(|| self.field(), Scalar::field),
            self.images.len(),
        );
        for (c, img) in v.iter().zip(&self.images) {
            linalg::axpy(&mut out, c, img);
        }
        out
    }

    fn field(&self) -> crate::scalar::FieldSpec {
        self.images[0][0].field()
    }

    fn flatten(&self) -> Vec<Scalar> {
        self.images.iter().flatten().cloned().collect()
    }
}

/// Basis of the homogeneous derivations of `(A, product)`, grouped by degree
/// in increasing order.
pub fn compute_derivations(a: &GradedBasis, product: &BilinearRule) -> Vec<Derivation> {
    let n = a.dim();
    let field = a.field();
    let group = a.group();
    let shifts: BTreeSet<GroupElement> = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .map(|(i, j)| group.mul_unchecked(a.grade(j), &group.inv_unchecked(a.grade(i))))
        .collect();
    let coeff = |terms: &[(usize, Scalar)], k: usize| {
        terms
            .iter()
            .find(|(idx, _)| *idx == k)
            .map_or_else(|| field.zero(), |(_, c)| c.clone())
    };
    let mut out = Vec::new();
    for shift in shifts {
        // D(a_i) lives in the block at grade(a_i) + shift
        let targets: Vec<&[usize]> = (0..n)
            .map(|i| a.block(&group.mul_unchecked(a.grade(i), &shift)))
            .collect();
        let mut offsets = Vec::with_capacity(n);
        let mut total = 0;
        for t in &targets {
            offsets.push(total);
            total += t.len();
        }
        if total == 0 {
            continue;
        }
        let mut rows = Vec::new();
        for i in 0..n {
            for j in i..n {
                for k in 0..n {
                    let mut row = linalg::zero_vector(field, total);
                    for (m, c) in product.entry(i, j) {
                        for (t, &b) in targets[*m].iter().enumerate() {
                            if b == k {
                                row[offsets[*m] + t] = &row[offsets[*m] + t] + c;
                            }
                        }
                    }
                    for (t, &b) in targets[i].iter().enumerate() {
                        row[offsets[i] + t] = &row[offsets[i] + t] - &coeff(product.entry(b, j), k);
                    }
                    for (t, &b) in targets[j].iter().enumerate() {
                        row[offsets[j] + t] = &row[offsets[j] + t] - &coeff(product.entry(i, b), k);
                    }
                    if !linalg::is_zero_vector(&row) {
                        rows.push(row);
                    }
                }
            }
        }
        for solution in linalg::nullspace(field, &rows, total) {
            let images = (0..n)
                .map(|i| {
                    let mut img = a.zero_full();
                    for (t, &b) in targets[i].iter().enumerate() {
                        img[b] = solution[offsets[i] + t].clone();
                    }
                    img
                })
                .collect();
            out.push(Derivation {
                grade: shift.clone(),
                images,
            });
        }
    }
    out
}

/// The instance `L = Der(A)` with `ρ = id`, the bracket of operators and the
/// action `(a·D)(b) = a D(b)`. Basis vectors are named `d0, d1, ...`.
pub fn derivation_instance(
    name: impl Into<String>,
    a: &GradedBasis,
    product: &BilinearRule,
) -> Result<AlgebraInstance, AlgebraError> {
    let field = a.field();
    let ders = compute_derivations(a, product);
    let n = a.dim();
    let flat: Vec<Vec<Scalar>> = ders.iter().map(Derivation::flatten).collect();
    let entries = ders
        .iter()
        .enumerate()
        .map(|(p, d)| (format!("d{p}"), d.grade.clone()))
        .collect();
    let l = GradedBasis::new(field, a.group().clone(), entries)?;
    let express = |images: Vec<Vec<Scalar>>| -> Result<Vec<(usize, Scalar)>, AlgebraError> {
        let target: Vec<Scalar> = images.into_iter().flatten().collect();
        let coeffs = linalg::solve_combination(field, &flat, &target).ok_or_else(|| {
            AlgebraError::NotClosed {
                side: "Der(A)",
                detail: "operator is not a derivation".into(),
            }
        })?;
        Ok(coeffs
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .collect())
    };

    let mut bracket = Table::new();
    for (p, d) in ders.iter().enumerate() {
        for (q, e) in ders.iter().enumerate() {
            let images = (0..n)
                .map(|i| {
                    let de = d.apply(&e.images[i]);
                    let ed = e.apply(&d.images[i]);
                    de.iter().zip(&ed).map(|(x, y)| x - y).collect()
                })
                .collect();
            bracket.set(p, q, &express(images)?).expect("fresh entry");
        }
    }
    let mut action = Table::new();
    for i in 0..n {
        let unit = linalg::unit_vector(field, n, i);
        for (p, d) in ders.iter().enumerate() {
            let images = (0..n).map(|j| product.eval(&unit, &d.images[j])).collect();
            action.set(i, p, &express(images)?).expect("fresh entry");
        }
    }
    let mut anchor = Table::new();
    for (p, d) in ders.iter().enumerate() {
        for j in 0..n {
            let terms: Vec<(usize, Scalar)> = d.images[j]
                .iter()
                .cloned()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .collect();
            anchor.set(p, j, &terms).expect("fresh entry");
        }
    }
    let mut prod = Table::new();
    for (&(i, j), terms) in product.table() {
        prod.set(i, j, terms).expect("fresh entry");
    }
    AlgebraInstance::from_tables(name, l, a.clone(), bracket, prod, action, anchor)
}
