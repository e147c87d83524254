//! Center, annihilators, kernel of the anchor and the graded-ideal predicates.

use std::fmt;

use crate::graded::{BilinearRule, Functional, GradedBasis, GradedSubspace};
use crate::linalg;
use crate::scalar::Scalar;

use super::AlgebraInstance;

/// A product that leaves the candidate ideal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdealViolation {
    /// Rendered product, e.g. `[f, e]` or `a0 * a1`.
    pub product: String,
    pub value: String,
}

impl fmt::Display for IdealViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {} is not in the ideal", self.product, self.value)
    }
}

/// Functionals `u ↦ rule(u, y)_k` (or `rule(y, u)_k` when `left` is false)
/// on each block of the chosen side.
fn kernel_conditions(rule: &BilinearRule, left: bool) -> Vec<Functional> {
    let (side, other) = if left {
        (rule.left(), rule.right())
    } else {
        (rule.right(), rule.left())
    };
    let field = side.field();
    let mut out = Vec::new();
    for grade in side.grades() {
        let block = side.block(grade);
        for j in 0..other.dim() {
            for k in 0..rule.codomain().dim() {
                let coeffs: Vec<Scalar> = block
                    .iter()
                    .map(|&p| {
                        let terms = if left {
                            rule.entry(p, j)
                        } else {
                            rule.entry(j, p)
                        };
                        terms
                            .iter()
                            .find(|(idx, _)| *idx == k)
                            .map_or_else(|| field.zero(), |(_, c)| c.clone())
                    })
                    .collect();
                if !linalg::is_zero_vector(&coeffs) {
                    out.push(Functional {
                        grade: grade.clone(),
                        coeffs,
                    });
                }
            }
        }
    }
    out
}

fn kernel(basis: &GradedBasis, conditions: Vec<Functional>) -> GradedSubspace {
    basis
        .solve_linear_conditions(&conditions)
        .expect("conditions are built on the basis blocks")
}

impl AlgebraInstance {
    /// `Z(L) = {v : [v, L] = 0 and ρ(v) = 0}`.
    pub fn center(&self) -> GradedSubspace {
        let mut conditions = kernel_conditions(&self.bracket, true);
        conditions.extend(kernel_conditions(&self.anchor, true));
        kernel(&self.l, conditions)
    }

    /// `Ann_L(A) = {v : A·v = 0}`.
    pub fn ann_l_of_a(&self) -> GradedSubspace {
        kernel(&self.l, kernel_conditions(&self.action, false))
    }

    /// `Ann(A) = {a : aA = 0}`.
    pub fn ann_a(&self) -> GradedSubspace {
        kernel(&self.a, kernel_conditions(&self.product, true))
    }

    /// `Ker ρ`.
    pub fn ker_anchor(&self) -> GradedSubspace {
        kernel(&self.l, kernel_conditions(&self.anchor, true))
    }

    /// First product showing that `I` is not a graded ideal of `L`:
    /// `[L, I] ⊆ I`, `A·I ⊆ I` and `ρ(I)(A)·L ⊆ I` are checked in that order.
    pub fn ideal_violation_l(&self, ideal: &GradedSubspace) -> Option<IdealViolation> {
        let (l, a) = (&self.l, &self.a);
        let gens = l.generators(ideal);
        let inside = |v: &[Scalar]| l.split(v).iter().all(|part| ideal.contains(part));
        for u in &gens {
            let label = l.format_full(u);
            for x in 0..l.dim() {
                let r = self
                    .bracket
                    .eval(&linalg::unit_vector(self.field(), l.dim(), x), u);
                if !inside(&r) {
                    return Some(IdealViolation {
                        product: format!("[{}, {}]", l.name(x), label),
                        value: l.format_full(&r),
                    });
                }
            }
        }
        for u in &gens {
            let label = l.format_full(u);
            for i in 0..a.dim() {
                let r = self
                    .action
                    .eval(&linalg::unit_vector(self.field(), a.dim(), i), u);
                if !inside(&r) {
                    return Some(IdealViolation {
                        product: format!("{} * {}", a.name(i), label),
                        value: l.format_full(&r),
                    });
                }
            }
        }
        for u in &gens {
            let label = l.format_full(u);
            for i in 0..a.dim() {
                let rho = self
                    .anchor
                    .eval(u, &linalg::unit_vector(self.field(), a.dim(), i));
                if linalg::is_zero_vector(&rho) {
                    continue;
                }
                for w in 0..l.dim() {
                    let r = self
                        .action
                        .eval(&rho, &linalg::unit_vector(self.field(), l.dim(), w));
                    if !inside(&r) {
                        return Some(IdealViolation {
                            product: format!("rho({})({}) * {}", label, a.name(i), l.name(w)),
                            value: l.format_full(&r),
                        });
                    }
                }
            }
        }
        None
    }

    pub fn is_graded_ideal_l(&self, ideal: &GradedSubspace) -> bool {
        self.ideal_violation_l(ideal).is_none()
    }

    /// First product showing that `J` is not an ideal of `A`.
    pub fn ideal_violation_a(&self, ideal: &GradedSubspace) -> Option<IdealViolation> {
        let a = &self.a;
        for u in a.generators(ideal) {
            for i in 0..a.dim() {
                let r = self
                    .product
                    .eval(&u, &linalg::unit_vector(self.field(), a.dim(), i));
                if !a.split(&r).iter().all(|part| ideal.contains(part)) {
                    return Some(IdealViolation {
                        product: format!("{} * {}", a.format_full(&u), a.name(i)),
                        value: a.format_full(&r),
                    });
                }
            }
        }
        None
    }

    pub fn is_graded_ideal_a(&self, ideal: &GradedSubspace) -> bool {
        self.ideal_violation_a(ideal).is_none()
    }
}
