//! Graded Lie-Rinehart instances `(L, A)` given by structure constants.
//!
//! The four structure maps are stored as [`BilinearRule`]s:
//!
//! * `bracket`: `L x L -> L`
//! * `product`: `A x A -> A`
//! * `action`: `A x L -> L`
//! * `anchor`: `L x A -> A`, the rule `(v, a) ↦ ρ(v)(a)`
//!
//! Construction does not enforce the axioms or the grade law, so that
//! hand-edited data can be loaded and diagnosed. Use [`verify`] to check them.

mod construct;
mod derivations;
mod subspaces;
mod verify;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::graded::{BilinearRule, GradedBasis, GradedError};
use crate::group::GroupSpec;
use crate::scalar::{FieldSpec, Scalar, ScalarError};

pub use construct::{base_change, change_field, direct_sum, restrict, SumEmbedding};
pub use derivations::{compute_derivations, derivation_instance, Derivation};
pub use subspaces::IdealViolation;
pub use verify::{verify, Check, VerificationReport, Witness};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error(transparent)]
    Graded(#[from] GradedError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error("{0}")]
    Mismatch(String),
    #[error("conflicting {rule} entries for ({left}, {right})")]
    Conflict {
        rule: &'static str,
        left: String,
        right: String,
    },
    #[error("{side} subspace is not closed: {detail}")]
    NotClosed { side: &'static str, detail: String },
    #[error("result fails verification: {0}")]
    Verification(String),
}

/// Which of the four structure maps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RuleKind {
    Bracket,
    Product,
    Action,
    Anchor,
}

impl RuleKind {
    pub const ALL: [RuleKind; 4] = [
        RuleKind::Bracket,
        RuleKind::Product,
        RuleKind::Action,
        RuleKind::Anchor,
    ];

    pub fn name(self) -> &'static str {
        match self {
            RuleKind::Bracket => "bracket",
            RuleKind::Product => "product",
            RuleKind::Action => "action",
            RuleKind::Anchor => "anchor",
        }
    }
}

impl fmt::Display for RuleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraInstance {
    pub name: String,
    pub l: Arc<GradedBasis>,
    pub a: Arc<GradedBasis>,
    pub bracket: BilinearRule,
    pub product: BilinearRule,
    pub action: BilinearRule,
    pub anchor: BilinearRule,
}

/// Sparse structure constants keyed by basis positions, with conflict
/// detection for mirrored entries.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Table {
    entries: BTreeMap<(usize, usize), BTreeMap<usize, Scalar>>,
}

impl Table {
    pub fn new() -> Self {
        Table::default()
    }

    /// Sets one entry; an existing entry must carry the same value.
    pub fn set(
        &mut self,
        i: usize,
        j: usize,
        terms: &[(usize, Scalar)],
    ) -> Result<(), (usize, usize)> {
        let mut value: BTreeMap<usize, Scalar> = BTreeMap::new();
        for (k, c) in terms {
            match value.remove(k) {
                Some(prev) => {
                    let s = &prev + c;
                    value.insert(*k, s);
                }
                None => {
                    value.insert(*k, c.clone());
                }
            }
        }
        value.retain(|_, c| !c.is_zero());
        match self.entries.get(&(i, j)) {
            Some(existing) if *existing != value => Err((i, j)),
            _ => {
                self.entries.insert((i, j), value);
                Ok(())
            }
        }
    }

    /// Sets `(i, j)` and `(j, i) = -terms`.
    pub fn set_antisymmetric(
        &mut self,
        i: usize,
        j: usize,
        terms: &[(usize, Scalar)],
    ) -> Result<(), (usize, usize)> {
        self.set(i, j, terms)?;
        if i != j {
            let negated: Vec<(usize, Scalar)> = terms.iter().map(|(k, c)| (*k, -c)).collect();
            self.set(j, i, &negated)?;
        }
        Ok(())
    }

    /// Sets `(i, j)` and `(j, i)` to the same value.
    pub fn set_symmetric(
        &mut self,
        i: usize,
        j: usize,
        terms: &[(usize, Scalar)],
    ) -> Result<(), (usize, usize)> {
        self.set(i, j, terms)?;
        if i != j {
            self.set(j, i, terms)?;
        }
        Ok(())
    }

    pub fn into_entries(self) -> impl Iterator<Item = ((usize, usize), Vec<(usize, Scalar)>)> {
        self.entries
            .into_iter()
            .map(|(key, v)| (key, v.into_iter().collect()))
    }
}

impl AlgebraInstance {
    /// Assembles an instance from bases and tables. The grade law is not
    /// enforced here; [`verify`] reports violations.
    pub fn from_tables(
        name: impl Into<String>,
        l: GradedBasis,
        a: GradedBasis,
        bracket: Table,
        product: Table,
        action: Table,
        anchor: Table,
    ) -> Result<Self, AlgebraError> {
        if l.field() != a.field() {
            return Err(AlgebraError::Mismatch(format!(
                "L is over {} but A is over {}",
                l.field(),
                a.field()
            )));
        }
        if l.group() != a.group() {
            return Err(AlgebraError::Mismatch(format!(
                "L is graded by {} but A by {}",
                l.group(),
                a.group()
            )));
        }
        let (l, a) = (Arc::new(l), Arc::new(a));
        Ok(AlgebraInstance {
            name: name.into(),
            bracket: BilinearRule::new_unchecked(
                l.clone(),
                l.clone(),
                l.clone(),
                bracket.into_entries(),
            )?,
            product: BilinearRule::new_unchecked(
                a.clone(),
                a.clone(),
                a.clone(),
                product.into_entries(),
            )?,
            action: BilinearRule::new_unchecked(
                a.clone(),
                l.clone(),
                l.clone(),
                action.into_entries(),
            )?,
            anchor: BilinearRule::new_unchecked(
                l.clone(),
                a.clone(),
                a.clone(),
                anchor.into_entries(),
            )?,
            l,
            a,
        })
    }

    pub fn field(&self) -> FieldSpec {
        self.l.field()
    }

    pub fn group(&self) -> &GroupSpec {
        self.l.group()
    }

    pub fn dim_l(&self) -> usize {
        self.l.dim()
    }

    pub fn dim_a(&self) -> usize {
        self.a.dim()
    }

    pub fn total_dim(&self) -> usize {
        self.dim_l() + self.dim_a()
    }

    pub fn rule(&self, kind: RuleKind) -> &BilinearRule {
        match kind {
            RuleKind::Bracket => &self.bracket,
            RuleKind::Product => &self.product,
            RuleKind::Action => &self.action,
            RuleKind::Anchor => &self.anchor,
        }
    }

    /// Copy with one raw table entry replaced (no mirroring).
    pub fn with_entry(
        &self,
        kind: RuleKind,
        i: usize,
        j: usize,
        terms: Vec<(usize, Scalar)>,
    ) -> Result<Self, AlgebraError> {
        let rule = self.rule(kind);
        let mut entries: BTreeMap<(usize, usize), Vec<(usize, Scalar)>> =
            rule.table().iter().map(|(k, v)| (*k, v.clone())).collect();
        entries.insert((i, j), terms);
        let replaced = BilinearRule::new_unchecked(
            rule.left().clone(),
            rule.right().clone(),
            rule.codomain().clone(),
            entries,
        )?;
        let mut out = self.clone();
        match kind {
            RuleKind::Bracket => out.bracket = replaced,
            RuleKind::Product => out.product = replaced,
            RuleKind::Action => out.action = replaced,
            RuleKind::Anchor => out.anchor = replaced,
        }
        Ok(out)
    }

    /// Copy with a mirrored entry: antisymmetric for the bracket, symmetric
    /// for the product, a single entry otherwise.
    pub fn with_mirrored_entry(
        &self,
        kind: RuleKind,
        i: usize,
        j: usize,
        terms: Vec<(usize, Scalar)>,
    ) -> Result<Self, AlgebraError> {
        let out = self.with_entry(kind, i, j, terms.clone())?;
        if i == j {
            return Ok(out);
        }
        match kind {
            RuleKind::Bracket => out.with_entry(
                kind,
                j,
                i,
                terms.into_iter().map(|(k, c)| (k, -c)).collect(),
            ),
            RuleKind::Product => out.with_entry(kind, j, i, terms),
            _ => Ok(out),
        }
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_conflicts() {
        let f = FieldSpec::rational();
        let mut t = Table::new();
        t.set_antisymmetric(0, 1, &[(2, f.one())]).unwrap();
        // the consistent mirrored orientation is accepted
        t.set(1, 0, &[(2, -f.one())]).unwrap();
        assert_eq!(t.set(1, 0, &[(2, f.one())]), Err((1, 0)));
        let mut s = Table::new();
        s.set_symmetric(0, 1, &[(0, f.one()), (0, f.one())])
            .unwrap();
        assert_eq!(s.set(1, 0, &[(0, f.from_i64(2))]), Ok(()));
    }
}
