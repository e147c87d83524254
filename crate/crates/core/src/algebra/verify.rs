//! Exhaustive axiom checks over basis tuples.

use std::fmt;

use crate::graded::{BilinearRule, GradedBasis};
use crate::linalg;
use crate::scalar::Scalar;

use super::{AlgebraInstance, RuleKind};

/// The first failing basis tuple of a check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub elements: Vec<String>,
    /// Nonzero difference of the two sides, or a description for structural checks.
    pub residual: String,
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}): {}", self.elements.join(", "), self.residual)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub witness: Option<Witness>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn overall(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn extend(&mut self, other: VerificationReport) {
        self.checks.extend(other.checks);
    }
}

/// Runs `residual` over tuples in order and records the first nonzero one.
fn scan<I, F>(name: &'static str, basis: &GradedBasis, tuples: I, mut residual: F) -> Check
where
    I: IntoIterator<Item = Vec<String>>,
    F: FnMut(usize) -> Vec<Scalar>,
{
    for (n, elements) in tuples.into_iter().enumerate() {
        let r = residual(n);
        if !linalg::is_zero_vector(&r) {
            return Check {
                name,
                passed: false,
                witness: Some(Witness {
                    elements,
                    residual: basis.format_full(&r),
                }),
            };
        }
    }
    Check {
        name,
        passed: true,
        witness: None,
    }
}

fn sub(x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
    x.iter().zip(y).map(|(a, b)| a - b).collect()
}

fn triples(n1: usize, n2: usize, n3: usize) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::with_capacity(n1 * n2 * n3);
    for i in 0..n1 {
        for j in 0..n2 {
            for k in 0..n3 {
                out.push((i, j, k));
            }
        }
    }
    out
}

fn names3(
    b1: &GradedBasis,
    b2: &GradedBasis,
    b3: &GradedBasis,
    t: &[(usize, usize, usize)],
) -> Vec<Vec<String>> {
    t.iter()
        .map(|&(i, j, k)| {
            vec![
                b1.name(i).to_string(),
                b2.name(j).to_string(),
                b3.name(k).to_string(),
            ]
        })
        .collect()
}

impl AlgebraInstance {
    fn unit_l(&self, i: usize) -> Vec<Scalar> {
        linalg::unit_vector(self.field(), self.dim_l(), i)
    }

    fn unit_a(&self, i: usize) -> Vec<Scalar> {
        linalg::unit_vector(self.field(), self.dim_a(), i)
    }

    /// Alternating, antisymmetric and Jacobi identities.
    pub fn verify_lie(&self) -> VerificationReport {
        let l = &self.l;
        let n = l.dim();
        let br = &self.bracket;
        let alternating = scan(
            "lie.alternating",
            l,
            (0..n).map(|i| vec![l.name(i).to_string(), l.name(i).to_string()]),
            |i| br.eval_basis(i, i),
        );
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .collect();
        let antisymmetry = scan(
            "lie.antisymmetry",
            l,
            pairs
                .iter()
                .map(|&(i, j)| vec![l.name(i).to_string(), l.name(j).to_string()]),
            |t| {
                let (i, j) = pairs[t];
                let mut r = br.eval_basis(i, j);
                linalg::add_assign(&mut r, &br.eval_basis(j, i));
                r
            },
        );
        let t = triples(n, n, n);
        let jacobi = scan("lie.jacobi", l, names3(l, l, l, &t), |m| {
            let (i, j, k) = t[m];
            let (x, y, z) = (self.unit_l(i), self.unit_l(j), self.unit_l(k));
            let mut r = br.eval(&br.eval_basis(i, j), &z);
            linalg::add_assign(&mut r, &br.eval(&br.eval_basis(j, k), &x));
            linalg::add_assign(&mut r, &br.eval(&br.eval_basis(k, i), &y));
            r
        });
        VerificationReport {
            checks: vec![alternating, antisymmetry, jacobi],
        }
    }

    /// Commutativity and associativity of `A`.
    pub fn verify_assoc_comm(&self) -> VerificationReport {
        let a = &self.a;
        let n = a.dim();
        let pr = &self.product;
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .collect();
        let commutativity = scan(
            "assoc.commutativity",
            a,
            pairs
                .iter()
                .map(|&(i, j)| vec![a.name(i).to_string(), a.name(j).to_string()]),
            |t| {
                let (i, j) = pairs[t];
                sub(&pr.eval_basis(i, j), &pr.eval_basis(j, i))
            },
        );
        let t = triples(n, n, n);
        let associativity = scan("assoc.associativity", a, names3(a, a, a, &t), |m| {
            let (i, j, k) = t[m];
            let left = pr.eval(&pr.eval_basis(i, j), &self.unit_a(k));
            let right = pr.eval(&self.unit_a(i), &pr.eval_basis(j, k));
            sub(&left, &right)
        });
        VerificationReport {
            checks: vec![commutativity, associativity],
        }
    }

    /// `(ab)·v = a·(b·v)`.
    pub fn verify_module(&self) -> VerificationReport {
        let (a, l) = (&self.a, &self.l);
        let t = triples(a.dim(), a.dim(), l.dim());
        let check = scan("module.associativity", l, names3(a, a, l, &t), |m| {
            let (i, j, k) = t[m];
            let left = self
                .action
                .eval(&self.product.eval_basis(i, j), &self.unit_l(k));
            let right = self
                .action
                .eval(&self.unit_a(i), &self.action.eval_basis(j, k));
            sub(&left, &right)
        });
        VerificationReport {
            checks: vec![check],
        }
    }

    /// Leibniz rule, Lie homomorphism, `A`-linearity and the compatibility law.
    pub fn verify_anchor(&self) -> VerificationReport {
        let (a, l) = (&self.a, &self.l);
        let (rho, act, br, pr) = (&self.anchor, &self.action, &self.bracket, &self.product);

        let t = triples(l.dim(), a.dim(), a.dim());
        let leibniz = scan("anchor.leibniz", a, names3(l, a, a, &t), |m| {
            let (v, i, j) = t[m];
            let v = self.unit_l(v);
            let left = rho.eval(&v, &pr.eval_basis(i, j));
            let mut right = pr.eval(&rho.eval(&v, &self.unit_a(i)), &self.unit_a(j));
            linalg::add_assign(
                &mut right,
                &pr.eval(&self.unit_a(i), &rho.eval(&v, &self.unit_a(j))),
            );
            sub(&left, &right)
        });

        let t = triples(l.dim(), l.dim(), a.dim());
        let homomorphism = scan("anchor.lie_homomorphism", a, names3(l, l, a, &t), |m| {
            let (v, w, i) = t[m];
            let (vv, ww, ai) = (self.unit_l(v), self.unit_l(w), self.unit_a(i));
            let left = rho.eval(&br.eval_basis(v, w), &ai);
            let vw = rho.eval(&vv, &rho.eval(&ww, &ai));
            let wv = rho.eval(&ww, &rho.eval(&vv, &ai));
            sub(&left, &sub(&vw, &wv))
        });

        let t = triples(a.dim(), l.dim(), a.dim());
        let a_linear = scan("anchor.a_linearity", a, names3(a, l, a, &t), |m| {
            let (i, v, j) = t[m];
            let left = rho.eval(&act.eval_basis(i, v), &self.unit_a(j));
            let right = pr.eval(&self.unit_a(i), &rho.eval_basis(v, j));
            sub(&left, &right)
        });

        let t = triples(l.dim(), a.dim(), l.dim());
        let compatibility = scan("anchor.compatibility", l, names3(l, a, l, &t), |m| {
            let (v, i, w) = t[m];
            let vv = self.unit_l(v);
            let left = br.eval(&vv, &act.eval_basis(i, w));
            let mut right = act.eval(&self.unit_a(i), &br.eval_basis(v, w));
            linalg::add_assign(
                &mut right,
                &act.eval(&rho.eval_basis(v, i), &self.unit_l(w)),
            );
            sub(&left, &right)
        });

        VerificationReport {
            checks: vec![leibniz, homomorphism, a_linear, compatibility],
        }
    }

    /// Every table entry lands at the product grade.
    pub fn verify_grading(&self) -> VerificationReport {
        let checks = RuleKind::ALL
            .iter()
            .map(|&kind| grading_check(kind, self.rule(kind)))
            .collect();
        VerificationReport { checks }
    }
}

fn grading_check(kind: RuleKind, rule: &BilinearRule) -> Check {
    let name = match kind {
        RuleKind::Bracket => "grading.bracket",
        RuleKind::Product => "grading.product",
        RuleKind::Action => "grading.action",
        RuleKind::Anchor => "grading.anchor",
    };
    match rule.grade_violations().into_iter().next() {
        None => Check {
            name,
            passed: true,
            witness: None,
        },
        Some(v) => {
            let (left, right, out) = (rule.left(), rule.right(), rule.codomain());
            Check {
                name,
                passed: false,
                witness: Some(Witness {
                    elements: vec![
                        left.name(v.left).to_string(),
                        right.name(v.right).to_string(),
                    ],
                    residual: format!(
                        "grade {} + {} = {} but {} has grade {}",
                        left.grade(v.left),
                        right.grade(v.right),
                        v.expected,
                        out.name(v.output),
                        v.found
                    ),
                }),
            }
        }
    }
}

/// All five verifiers in order: Lie, associative-commutative, module,
/// anchor, grading.
pub fn verify(inst: &AlgebraInstance) -> VerificationReport {
    let mut report = inst.verify_lie();
    report.extend(inst.verify_assoc_comm());
    report.extend(inst.verify_module());
    report.extend(inst.verify_anchor());
    report.extend(inst.verify_grading());
    report
}
