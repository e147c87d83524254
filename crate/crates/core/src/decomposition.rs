//! Class ideals, the decompositions of `L` and `A`, tightness and the
//! pairing between `L`-ideals and `A`-ideals.
//!
//! For a `Σ`-class `[g]` the ideal of `L` is `I_[g] = L_[g],1 ⊕ V_[g]` with
//!
//! * `L_[g],1 = Σ A_{g'^{-1}} L_{g'} + Σ [L_{g'^{-1}}, L_{g'}]` over `g' ∈ [g]`,
//! * `V_[g] = ⊕ L_{g'}` over `g' ∈ [g]`.
//!
//! The `A` side is analogous with `ρ(L_{g'^{-1}})(A_{g'})` and
//! `A_{g'^{-1}} A_{g'}` in the identity component. Terms whose two factors
//! are not both nonzero contribute nothing.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::algebra::AlgebraInstance;
use crate::connections::{ConnectionPartition, Side, Supports};
use crate::graded::{GradedBasis, GradedSubspace};
use crate::group::GroupElement;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecompositionError {
    #[error("{{{}}} is not a connection class of the {side} support", format_class(.class))]
    NotAClass {
        side: Side,
        class: BTreeSet<GroupElement>,
    },
}

pub fn format_class(class: &BTreeSet<GroupElement>) -> String {
    class
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(", ")
}

/// A boolean with an explanation when it fails.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fact {
    pub holds: bool,
    pub witness: Option<String>,
}

impl Fact {
    pub fn yes() -> Self {
        Fact {
            holds: true,
            witness: None,
        }
    }

    pub fn no(witness: impl Into<String>) -> Self {
        Fact {
            holds: false,
            witness: Some(witness.into()),
        }
    }
}

impl fmt::Display for Fact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.witness {
            None => write!(f, "{}", self.holds),
            Some(w) => write!(f, "{} ({w})", self.holds),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassIdeal {
    pub side: Side,
    pub class: BTreeSet<GroupElement>,
    pub identity_part: GradedSubspace,
    pub support_part: GradedSubspace,
    pub total: GradedSubspace,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompositionReport {
    pub side: Side,
    pub partition: ConnectionPartition,
    /// The part of the identity component generated by support products.
    pub generated: GradedSubspace,
    /// Complement of `generated` in the identity component (`U` or `V`).
    pub complement: GradedSubspace,
    pub ideals: Vec<ClassIdeal>,
    /// Complement plus ideals is the whole space.
    pub spans: bool,
    /// The sum of the ideals is direct.
    pub direct: bool,
    pub complement_zero: bool,
    /// Products of ideals from distinct classes vanish.
    pub orthogonal: Fact,
    /// Every class ideal passes the ideal predicate.
    pub ideals_certified: Fact,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TightnessReport {
    pub center_zero: Fact,
    pub ann_l_of_a_zero: Fact,
    pub ann_a_zero: Fact,
    pub aa_full: Fact,
    pub al_full: Fact,
    pub l1_generated: Fact,
    pub a1_generated: Fact,
}

impl TightnessReport {
    pub fn facts(&self) -> [(&'static str, &Fact); 7] {
        [
            ("center_zero", &self.center_zero),
            ("ann_l_of_a_zero", &self.ann_l_of_a_zero),
            ("ann_a_zero", &self.ann_a_zero),
            ("aa_full", &self.aa_full),
            ("al_full", &self.al_full),
            ("l1_generated", &self.l1_generated),
            ("a1_generated", &self.a1_generated),
        ]
    }

    pub fn tight(&self) -> bool {
        self.facts().iter().all(|(_, f)| f.holds)
    }

    pub fn failing(&self) -> Vec<&'static str> {
        self.facts()
            .iter()
            .filter(|(_, f)| !f.holds)
            .map(|(n, _)| *n)
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairingStatus {
    /// Tight instance and every `L`-ideal meets exactly one `A`-ideal.
    Unique,
    /// The instance is not tight, so uniqueness is not asserted.
    NotApplicable,
    /// Tight instance with an `L`-ideal meeting zero or several `A`-ideals.
    Contradiction,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairEntry {
    pub l_class: BTreeSet<GroupElement>,
    /// `A`-classes whose ideal acts nontrivially on the `L`-ideal.
    pub a_classes: Vec<BTreeSet<GroupElement>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pairing {
    pub status: PairingStatus,
    pub entries: Vec<PairEntry>,
}

impl Pairing {
    /// The paired `A`-class of an `L`-class when it is unique.
    pub fn partner(&self, l_class: &BTreeSet<GroupElement>) -> Option<&BTreeSet<GroupElement>> {
        self.entries
            .iter()
            .find(|e| &e.l_class == l_class)
            .and_then(|e| {
                if e.a_classes.len() == 1 {
                    e.a_classes.first()
                } else {
                    None
                }
            })
    }
}

fn component(basis: &GradedBasis, grade: &GroupElement) -> GradedSubspace {
    basis.component(grade)
}

fn first_missing(
    basis: &GradedBasis,
    part: &GradedSubspace,
    whole: &GradedSubspace,
) -> Option<String> {
    let c = basis
        .complement_in(part, whole)
        .expect("part lies inside whole");
    let missing = c
        .vectors()
        .next()
        .map(|v| format!("{} is not reached", basis.format(&v)));
    missing
}

impl AlgebraInstance {
    /// `Σ_{g'} A_{g'^{-1}} L_{g'} + [L_{g'^{-1}}, L_{g'}]` over `g'` in `grades`.
    fn identity_part_l<'a>(
        &self,
        grades: impl IntoIterator<Item = &'a GroupElement>,
    ) -> GradedSubspace {
        let group = self.group();
        let mut out = GradedSubspace::zero();
        for g in grades {
            let inv = group.inv_unchecked(g);
            let lg = component(&self.l, g);
            out = out.plus(&self.action.image(&component(&self.a, &inv), &lg));
            out = out.plus(&self.bracket.image(&component(&self.l, &inv), &lg));
        }
        out
    }

    /// `Σ_{g'} ρ(L_{g'^{-1}})(A_{g'}) + A_{g'^{-1}} A_{g'}` over `g'` in `grades`.
    fn identity_part_a<'a>(
        &self,
        grades: impl IntoIterator<Item = &'a GroupElement>,
    ) -> GradedSubspace {
        let group = self.group();
        let mut out = GradedSubspace::zero();
        for g in grades {
            let inv = group.inv_unchecked(g);
            let ag = component(&self.a, g);
            out = out.plus(&self.anchor.image(&component(&self.l, &inv), &ag));
            out = out.plus(&self.product.image(&component(&self.a, &inv), &ag));
        }
        out
    }

    fn class_ideal(&self, side: Side, class: &BTreeSet<GroupElement>) -> ClassIdeal {
        let (basis, identity_part) = match side {
            Side::L => (&self.l, self.identity_part_l(class)),
            Side::A => (&self.a, self.identity_part_a(class)),
        };
        let support_part = basis.whole().restrict_to(class);
        let total = identity_part.plus(&support_part);
        ClassIdeal {
            side,
            class: class.clone(),
            identity_part,
            support_part,
            total,
        }
    }

    /// `I_[g]` for a `Σ`-class.
    pub fn build_class_ideal_l(
        &self,
        class: &BTreeSet<GroupElement>,
    ) -> Result<ClassIdeal, DecompositionError> {
        self.checked_class_ideal(Side::L, class)
    }

    /// `𝒜_[g]` for a `Λ`-class.
    pub fn build_class_ideal_a(
        &self,
        class: &BTreeSet<GroupElement>,
    ) -> Result<ClassIdeal, DecompositionError> {
        self.checked_class_ideal(Side::A, class)
    }

    fn checked_class_ideal(
        &self,
        side: Side,
        class: &BTreeSet<GroupElement>,
    ) -> Result<ClassIdeal, DecompositionError> {
        if !Supports::of(self).classes(side).is_class(class) {
            return Err(DecompositionError::NotAClass {
                side,
                class: class.clone(),
            });
        }
        Ok(self.class_ideal(side, class))
    }

    pub fn decompose_l(&self) -> DecompositionReport {
        self.decompose(Side::L)
    }

    pub fn decompose_a(&self) -> DecompositionReport {
        self.decompose(Side::A)
    }

    fn decompose(&self, side: Side) -> DecompositionReport {
        let supports = Supports::of(self);
        let partition = supports.classes(side);
        let identity = self.group().identity();
        let (basis, generated) = match side {
            Side::L => (&self.l, self.identity_part_l(&supports.sigma)),
            Side::A => (&self.a, self.identity_part_a(&supports.lambda)),
        };
        let identity_block = component(basis, &identity);
        let complement = basis
            .complement_in(&generated, &identity_block)
            .expect("generated part lies in the identity component");
        let ideals: Vec<ClassIdeal> = partition
            .classes
            .iter()
            .map(|c| self.class_ideal(side, c))
            .collect();

        let sum = ideals
            .iter()
            .fold(GradedSubspace::zero(), |acc, i| acc.plus(&i.total));
        let spans = complement.plus(&sum) == basis.whole();
        let direct = sum.dim() == ideals.iter().map(|i| i.total.dim()).sum::<usize>();

        let mut orthogonal = Fact::yes();
        'outer: for (n, x) in ideals.iter().enumerate() {
            for y in &ideals[n + 1..] {
                let image = match side {
                    Side::L => self.bracket.image(&x.total, &y.total),
                    Side::A => self.product.image(&x.total, &y.total),
                };
                if !image.is_zero() {
                    orthogonal = Fact::no(format!(
                        "classes {{{}}} and {{{}}} give {}",
                        format_class(&x.class),
                        format_class(&y.class),
                        basis.format_subspace(&image)
                    ));
                    break 'outer;
                }
            }
        }

        let mut ideals_certified = Fact::yes();
        for ideal in &ideals {
            let violation = match side {
                Side::L => self.ideal_violation_l(&ideal.total),
                Side::A => self.ideal_violation_a(&ideal.total),
            };
            if let Some(v) = violation {
                ideals_certified =
                    Fact::no(format!("class {{{}}}: {v}", format_class(&ideal.class)));
                break;
            }
        }

        DecompositionReport {
            side,
            partition,
            generated,
            complement_zero: complement.is_zero(),
            complement,
            ideals,
            spans,
            direct,
            orthogonal,
            ideals_certified,
        }
    }

    /// The seven conditions of tightness.
    pub fn check_tight(&self) -> TightnessReport {
        let zero_fact =
            |basis: &GradedBasis, s: GradedSubspace, what: &str| match s.vectors().next() {
                None => Fact::yes(),
                Some(v) => Fact::no(format!("{} lies in {what}", basis.format(&v))),
            };
        let full_fact =
            |basis: &GradedBasis, s: &GradedSubspace, whole: &GradedSubspace| match first_missing(
                basis, s, whole,
            ) {
                None => Fact::yes(),
                Some(w) => Fact::no(w),
            };
        let supports = Supports::of(self);
        let identity = self.group().identity();
        let (lw, aw) = (self.l.whole(), self.a.whole());
        TightnessReport {
            center_zero: zero_fact(&self.l, self.center(), "the center"),
            ann_l_of_a_zero: zero_fact(&self.l, self.ann_l_of_a(), "Ann_L(A)"),
            ann_a_zero: zero_fact(&self.a, self.ann_a(), "Ann(A)"),
            aa_full: full_fact(&self.a, &self.product.image(&aw, &aw), &aw),
            al_full: full_fact(&self.l, &self.action.image(&aw, &lw), &lw),
            l1_generated: full_fact(
                &self.l,
                &self.identity_part_l(&supports.sigma),
                &component(&self.l, &identity),
            ),
            a1_generated: full_fact(
                &self.a,
                &self.identity_part_a(&supports.lambda),
                &component(&self.a, &identity),
            ),
        }
    }

    /// For each `L`-ideal, the `A`-classes whose ideal acts on it nontrivially.
    pub fn pair_ideals(
        &self,
        decomp_l: &DecompositionReport,
        decomp_a: &DecompositionReport,
    ) -> Pairing {
        let tight = self.check_tight().tight();
        let entries: Vec<PairEntry> = decomp_l
            .ideals
            .iter()
            .map(|i| PairEntry {
                l_class: i.class.clone(),
                a_classes: decomp_a
                    .ideals
                    .iter()
                    .filter(|j| !self.action.image(&j.total, &i.total).is_zero())
                    .map(|j| j.class.clone())
                    .collect(),
            })
            .collect();
        let status = if !tight {
            PairingStatus::NotApplicable
        } else if entries.iter().all(|e| e.a_classes.len() == 1) {
            PairingStatus::Unique
        } else {
            PairingStatus::Contradiction
        };
        Pairing { status, entries }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn grades(inst: &AlgebraInstance, xs: &[&[i64]]) -> BTreeSet<GroupElement> {
        xs.iter()
            .map(|c| inst.group().element(c.to_vec()).unwrap())
            .collect()
    }

    #[test]
    fn e1_class_ideal() {
        let e1 = catalog::instance("E1", None).unwrap();
        let ideal = e1
            .build_class_ideal_l(&grades(&e1, &[&[1], &[-1]]))
            .unwrap();
        assert_eq!(ideal.identity_part, e1.l.span_names(&["h"]).unwrap());
        assert_eq!(ideal.support_part, e1.l.span_names(&["e", "f"]).unwrap());
        assert_eq!(ideal.total, e1.l.whole());
    }

    #[test]
    fn e2_class_ideals() {
        let e2 = catalog::instance("E2", None).unwrap();
        let cls = grades(&e2, &[&[1], &[2]]);
        let il = e2.build_class_ideal_l(&cls).unwrap();
        assert_eq!(il.identity_part, e2.l.span_names(&["l0"]).unwrap());
        assert_eq!(il.support_part, e2.l.span_names(&["l1", "l2"]).unwrap());
        let ia = e2.build_class_ideal_a(&cls).unwrap();
        assert_eq!(ia.identity_part, e2.a.span_names(&["a0"]).unwrap());
        assert_eq!(ia.total, e2.a.whole());
    }

    #[test]
    fn rejects_non_class() {
        let e1 = catalog::instance("E1", None).unwrap();
        let err = e1.build_class_ideal_l(&grades(&e1, &[&[1]])).unwrap_err();
        assert!(matches!(
            err,
            DecompositionError::NotAClass { side: Side::L, .. }
        ));
        assert!(e1
            .build_class_ideal_a(&grades(&e1, &[&[1], &[-1]]))
            .is_err());
    }

    #[test]
    fn e1_decompositions() {
        let e1 = catalog::instance("E1", None).unwrap();
        let dl = e1.decompose_l();
        assert_eq!(dl.ideals.len(), 1);
        assert!(dl.complement_zero && dl.direct && dl.spans);
        let da = e1.decompose_a();
        assert!(da.ideals.is_empty());
        assert_eq!(da.complement, e1.a.whole());
        assert!(da.spans);
    }

    #[test]
    fn e1_tightness_and_pairing() {
        let e1 = catalog::instance("E1", None).unwrap();
        let t = e1.check_tight();
        assert_eq!(t.failing(), vec!["a1_generated"]);
        assert_eq!(t.a1_generated.witness.as_deref(), Some("a0 is not reached"));
        let p = e1.pair_ideals(&e1.decompose_l(), &e1.decompose_a());
        assert_eq!(p.status, PairingStatus::NotApplicable);
        assert!(p.entries[0].a_classes.is_empty());
    }

    #[test]
    fn degenerate_abelian_instance() {
        let t1 = catalog::instance("T1", None).unwrap();
        let dl = t1.decompose_l();
        assert!(dl.ideals.is_empty());
        assert_eq!(dl.complement, t1.l.whole());
        let t = t1.check_tight();
        assert_eq!(
            t.center_zero.witness.as_deref(),
            Some("t lies in the center")
        );
    }
}
