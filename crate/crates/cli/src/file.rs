//! JSON instance files.
//!
//! ```json
//! {
//!   "name": "E1",
//!   "field": "Q",
//!   "group": { "free_rank": 1, "torsion": [] },
//!   "L": [{ "name": "e", "grade": [1] }],
//!   "A": [{ "name": "a0", "grade": [0] }],
//!   "bracket": [{ "left": "h", "right": "e", "value": [["e", "2"]] }],
//!   "product": [], "action": [], "anchor": []
//! }
//! ```
//!
//! Omitted pairs are zero. Bracket entries are mirrored antisymmetrically and
//! product entries symmetrically; a file giving both orientations must give
//! consistent values.

use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use grlr_core::algebra::{AlgebraError, Table};
use grlr_core::graded::GradedError;
use grlr_core::group::GroupError;
use grlr_core::scalar::ScalarError;
use grlr_core::{AlgebraInstance, BilinearRule, FieldSpec, GradedBasis, GroupSpec, Scalar};

#[derive(Debug, Error)]
pub enum LoadError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("invalid instance file: {0}")]
    Json(#[from] serde_json::Error),
    #[error("field: {0}")]
    Field(ScalarError),
    #[error("group: {0}")]
    Group(GroupError),
    #[error("basis {name:?}: {source}")]
    Grade { name: String, source: GroupError },
    #[error(transparent)]
    Basis(#[from] GradedError),
    #[error("{rule}: unknown basis name {name:?}")]
    UnknownName { rule: &'static str, name: String },
    #[error("{rule}: bad scalar {text:?}: {source}")]
    Scalar {
        rule: &'static str,
        text: String,
        source: ScalarError,
    },
    #[error("{rule}: inconsistent entries for ({left}, {right})")]
    Conflict {
        rule: &'static str,
        left: String,
        right: String,
    },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupFile {
    pub free_rank: usize,
    #[serde(default)]
    pub torsion: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BasisEntry {
    pub name: String,
    pub grade: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableEntry {
    pub left: String,
    pub right: String,
    /// `[basis name, scalar]` terms.
    pub value: Vec<(String, String)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub name: String,
    pub field: String,
    pub group: GroupFile,
    #[serde(rename = "L")]
    pub l: Vec<BasisEntry>,
    #[serde(rename = "A")]
    pub a: Vec<BasisEntry>,
    #[serde(default)]
    pub bracket: Vec<TableEntry>,
    #[serde(default)]
    pub product: Vec<TableEntry>,
    #[serde(default)]
    pub action: Vec<TableEntry>,
    #[serde(default)]
    pub anchor: Vec<TableEntry>,
}

#[derive(Clone, Copy)]
enum Mirror {
    Antisymmetric,
    Symmetric,
    None,
}

impl InstanceFile {
    pub fn read(path: &Path) -> Result<Self, LoadError> {
        let text = std::fs::read_to_string(path).map_err(|source| LoadError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self, LoadError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("instance files serialize");
        s.push('\n');
        s
    }

    pub fn to_instance(&self) -> Result<AlgebraInstance, LoadError> {
        let field: FieldSpec = self.field.parse().map_err(LoadError::Field)?;
        let group = GroupSpec::new(self.group.free_rank, self.group.torsion.clone())
            .map_err(LoadError::Group)?;
        let basis = |entries: &[BasisEntry]| -> Result<GradedBasis, LoadError> {
            let graded = entries
                .iter()
                .map(|e| {
                    let g = group
                        .element(e.grade.clone())
                        .map_err(|source| LoadError::Grade {
                            name: e.name.clone(),
                            source,
                        })?;
                    Ok((e.name.clone(), g))
                })
                .collect::<Result<Vec<_>, LoadError>>()?;
            Ok(GradedBasis::new(field, group.clone(), graded)?)
        };
        let l = basis(&self.l)?;
        let a = basis(&self.a)?;
        let bracket = table("bracket", &self.bracket, &l, &l, &l, Mirror::Antisymmetric)?;
        let product = table("product", &self.product, &a, &a, &a, Mirror::Symmetric)?;
        let action = table("action", &self.action, &a, &l, &l, Mirror::None)?;
        let anchor = table("anchor", &self.anchor, &l, &a, &a, Mirror::None)?;
        Ok(AlgebraInstance::from_tables(
            self.name.clone(),
            l,
            a,
            bracket,
            product,
            action,
            anchor,
        )?)
    }

    /// Canonical file for an instance: bracket and product entries with
    /// `left <= right` only, every nonzero entry of the other tables.
    pub fn from_instance(inst: &AlgebraInstance) -> Self {
        let group = inst.group();
        let basis = |b: &GradedBasis| {
            b.entries()
                .iter()
                .map(|(n, g)| BasisEntry {
                    name: n.clone(),
                    grade: g.coords().to_vec(),
                })
                .collect()
        };
        InstanceFile {
            name: inst.name.clone(),
            field: inst.field().to_string(),
            group: GroupFile {
                free_rank: group.free_rank(),
                torsion: group.torsion().to_vec(),
            },
            l: basis(&inst.l),
            a: basis(&inst.a),
            bracket: entries(&inst.bracket, true),
            product: entries(&inst.product, true),
            action: entries(&inst.action, false),
            anchor: entries(&inst.anchor, false),
        }
    }
}

fn table(
    rule: &'static str,
    entries: &[TableEntry],
    left: &GradedBasis,
    right: &GradedBasis,
    codomain: &GradedBasis,
    mirror: Mirror,
) -> Result<Table, LoadError> {
    let field = codomain.field();
    let resolve = |b: &GradedBasis, name: &str| {
        b.position(name).map_err(|_| LoadError::UnknownName {
            rule,
            name: name.to_string(),
        })
    };
    let mut t = Table::new();
    for e in entries {
        let (i, j) = (resolve(left, &e.left)?, resolve(right, &e.right)?);
        let terms = e
            .value
            .iter()
            .map(|(name, text)| {
                let c: Scalar = field.parse(text).map_err(|source| LoadError::Scalar {
                    rule,
                    text: text.clone(),
                    source,
                })?;
                Ok((resolve(codomain, name)?, c))
            })
            .collect::<Result<Vec<_>, LoadError>>()?;
        let result = match mirror {
            Mirror::Antisymmetric => t.set_antisymmetric(i, j, &terms),
            Mirror::Symmetric => t.set_symmetric(i, j, &terms),
            Mirror::None => t.set(i, j, &terms),
        };
        result.map_err(|_| LoadError::Conflict {
            rule,
            left: e.left.clone(),
            right: e.right.clone(),
        })?;
    }
    Ok(t)
}

fn entries(rule: &BilinearRule, upper_only: bool) -> Vec<TableEntry> {
    let (l, r, c) = (rule.left(), rule.right(), rule.codomain());
    rule.table()
        .iter()
        .filter(|((i, j), terms)| !terms.is_empty() && (!upper_only || i <= j))
        .map(|(&(i, j), terms)| TableEntry {
            left: l.name(i).to_string(),
            right: r.name(j).to_string(),
            value: terms
                .iter()
                .map(|(k, s)| (c.name(*k).to_string(), s.to_string()))
                .collect(),
        })
        .collect()
}
