//! Built-in instances.
//!
//! * `E1`: `sl2 = <e, f, h>` graded by `Z` (degrees 1, -1, 0) over `A = F`
//!   acting by scalars, with zero anchor.
//! * `E2`: `L = Der(F[x]/(x^3)) = <x∂, x^2∂, ∂>` over `A = F[x]/(x^3)`,
//!   graded by `Z/3` with `deg x = 1`, anchor the identity. Only valid in
//!   characteristic 3, so it is defined over `GF(3)` alone.
//! * `E3`: `E2 ⊕ E2` graded by `Z/3 x Z/3`, the copies in separate
//!   coordinates.
//! * `E4`: `sl2 ⊗ F[Z/2]` over the group algebra `A = F[Z/2]`, graded by
//!   `Z x Z/2`, zero anchor.
//! * `W3`: `Der(F[Z/3])` over the group algebra `F[Z/3]` in characteristic 3,
//!   built by [`derivation_instance`].
//! * `T1`: one-dimensional abelian `L = <t>` over `A = F`, zero anchor.

use thiserror::Error;

use crate::algebra::{
    derivation_instance, direct_sum, AlgebraError, AlgebraInstance, SumEmbedding, Table,
};
use crate::graded::GradedBasis;
use crate::group::GroupSpec;
use crate::scalar::{FieldSpec, Scalar};

pub const NAMES: [&str; 6] = ["E1", "E2", "E3", "E4", "W3", "T1"];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("unknown catalog instance {0:?}")]
    Unknown(String),
    #[error("catalog instance {name} is degenerate over {field}: {reason}")]
    Field {
        name: String,
        field: FieldSpec,
        reason: &'static str,
    },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Field used when none is requested.
pub fn default_field(name: &str) -> Result<FieldSpec, CatalogError> {
    match name {
        "E1" | "E4" | "T1" => Ok(FieldSpec::rational()),
        "E2" | "E3" | "W3" => Ok(gf(3)),
        _ => Err(CatalogError::Unknown(name.to_string())),
    }
}

/// Field used for exhaustive oracle runs.
pub fn oracle_field(name: &str) -> Result<FieldSpec, CatalogError> {
    match name {
        "E1" | "E4" | "T1" => Ok(gf(5)),
        "E2" | "E3" | "W3" => Ok(gf(3)),
        _ => Err(CatalogError::Unknown(name.to_string())),
    }
}

/// Rejects fields over which the named instance is not a graded
/// Lie-Rinehart algebra of the intended shape.
pub fn field_guard(name: &str, field: FieldSpec) -> Result<(), CatalogError> {
    let fail = |reason| {
        Err(CatalogError::Field {
            name: name.to_string(),
            field,
            reason,
        })
    };
    match name {
        "E1" | "E4" if field.characteristic() == 2 => fail("sl2 degenerates in characteristic 2"),
        "E2" | "E3" if field.characteristic() != 3 => {
            fail("the derivations of F[x]/(x^3) close up only in characteristic 3")
        }
        "W3" if field.characteristic() != 3 => {
            fail("F[Z/3] has no nonzero derivations outside characteristic 3")
        }
        "E1" | "E2" | "E3" | "E4" | "W3" | "T1" => Ok(()),
        _ => Err(CatalogError::Unknown(name.to_string())),
    }
}

/// The named instance over `field` (or its default field).
pub fn instance(name: &str, field: Option<FieldSpec>) -> Result<AlgebraInstance, CatalogError> {
    let field = match field {
        Some(f) => f,
        None => default_field(name)?,
    };
    field_guard(name, field)?;
    Ok(match name {
        "E1" => e1(field)?,
        "E2" => e2(field)?,
        "E3" => direct_sum(&e2(field)?, &e2(field)?, SumEmbedding::Product, "E3")?,
        "E4" => e4(field)?,
        "W3" => {
            let ga = group_algebra(3, field)?;
            derivation_instance("W3", &ga.a, &ga.product)?
        }
        "T1" => t1(field)?,
        _ => unreachable!("guarded above"),
    })
}

fn gf(p: u64) -> FieldSpec {
    FieldSpec::prime(p).expect("small prime")
}

struct Builder {
    field: FieldSpec,
    l: GradedBasis,
    a: GradedBasis,
    bracket: Table,
    product: Table,
    action: Table,
    anchor: Table,
}

impl Builder {
    fn new(
        field: FieldSpec,
        group: GroupSpec,
        l: &[(&str, Vec<i64>)],
        a: &[(&str, Vec<i64>)],
    ) -> Result<Self, AlgebraError> {
        let basis = |entries: &[(&str, Vec<i64>)]| -> Result<GradedBasis, AlgebraError> {
            let entries = entries
                .iter()
                .map(|(n, g)| {
                    Ok((
                        n.to_string(),
                        group
                            .element(g.clone())
                            .map_err(crate::graded::GradedError::from)?,
                    ))
                })
                .collect::<Result<Vec<_>, AlgebraError>>()?;
            Ok(GradedBasis::new(field, group.clone(), entries)?)
        };
        Ok(Builder {
            field,
            l: basis(l)?,
            a: basis(a)?,
            bracket: Table::new(),
            product: Table::new(),
            action: Table::new(),
            anchor: Table::new(),
        })
    }

    fn terms(&self, basis: &GradedBasis, terms: &[(&str, i64)]) -> Vec<(usize, Scalar)> {
        terms
            .iter()
            .map(|(n, c)| {
                (
                    basis.position(n).expect("catalog names resolve"),
                    self.field.from_i64(*c),
                )
            })
            .collect()
    }

    fn bracket(&mut self, x: &str, y: &str, value: &[(&str, i64)]) {
        let t = self.terms(&self.l, value);
        let (i, j) = (self.l.position(x).unwrap(), self.l.position(y).unwrap());
        self.bracket
            .set_antisymmetric(i, j, &t)
            .expect("consistent catalog entry");
    }

    fn product(&mut self, x: &str, y: &str, value: &[(&str, i64)]) {
        let t = self.terms(&self.a, value);
        let (i, j) = (self.a.position(x).unwrap(), self.a.position(y).unwrap());
        self.product
            .set_symmetric(i, j, &t)
            .expect("consistent catalog entry");
    }

    fn action(&mut self, x: &str, v: &str, value: &[(&str, i64)]) {
        let t = self.terms(&self.l, value);
        let (i, j) = (self.a.position(x).unwrap(), self.l.position(v).unwrap());
        self.action.set(i, j, &t).expect("consistent catalog entry");
    }

    fn anchor(&mut self, v: &str, x: &str, value: &[(&str, i64)]) {
        let t = self.terms(&self.a, value);
        let (i, j) = (self.l.position(v).unwrap(), self.a.position(x).unwrap());
        self.anchor.set(i, j, &t).expect("consistent catalog entry");
    }

    fn build(self, name: &str) -> Result<AlgebraInstance, AlgebraError> {
        AlgebraInstance::from_tables(
            name,
            self.l,
            self.a,
            self.bracket,
            self.product,
            self.action,
            self.anchor,
        )
    }
}

fn e1(field: FieldSpec) -> Result<AlgebraInstance, AlgebraError> {
    let mut b = Builder::new(
        field,
        GroupSpec::integers(),
        &[("e", vec![1]), ("f", vec![-1]), ("h", vec![0])],
        &[("a0", vec![0])],
    )?;
    b.bracket("h", "e", &[("e", 2)]);
    b.bracket("h", "f", &[("f", -2)]);
    b.bracket("e", "f", &[("h", 1)]);
    b.product("a0", "a0", &[("a0", 1)]);
    for v in ["e", "f", "h"] {
        b.action("a0", v, &[(v, 1)]);
    }
    b.build("E1")
}

fn e2(field: FieldSpec) -> Result<AlgebraInstance, AlgebraError> {
    let group = GroupSpec::cyclic(3).expect("valid modulus");
    // a_k = x^k, l0 = x∂, l1 = x^2∂, l2 = ∂
    let mut b = Builder::new(
        field,
        group,
        &[("l0", vec![0]), ("l1", vec![1]), ("l2", vec![2])],
        &[("a0", vec![0]), ("a1", vec![1]), ("a2", vec![2])],
    )?;
    b.bracket("l0", "l1", &[("l1", 1)]);
    b.bracket("l0", "l2", &[("l2", -1)]);
    b.bracket("l1", "l2", &[("l0", -2)]);
    for x in ["a0", "a1", "a2"] {
        b.product("a0", x, &[(x, 1)]);
    }
    b.product("a1", "a1", &[("a2", 1)]);
    for v in ["l0", "l1", "l2"] {
        b.action("a0", v, &[(v, 1)]);
    }
    b.action("a1", "l0", &[("l1", 1)]);
    b.action("a1", "l2", &[("l0", 1)]);
    b.action("a2", "l2", &[("l1", 1)]);
    b.anchor("l0", "a1", &[("a1", 1)]);
    b.anchor("l0", "a2", &[("a2", 2)]);
    b.anchor("l1", "a1", &[("a2", 1)]);
    b.anchor("l2", "a1", &[("a0", 1)]);
    b.anchor("l2", "a2", &[("a1", 2)]);
    b.build("E2")
}

fn e4(field: FieldSpec) -> Result<AlgebraInstance, AlgebraError> {
    let group = GroupSpec::new(1, vec![2]).expect("valid modulus");
    let sl2 = [("e", 1i64), ("f", -1), ("h", 0)];
    let mut l = Vec::new();
    for (x, d) in sl2 {
        l.push((x, vec![d, 0]));
    }
    let names_u: Vec<String> = sl2.iter().map(|(x, _)| format!("{x}u")).collect();
    for ((_, d), n) in sl2.iter().zip(&names_u) {
        l.push((n.as_str(), vec![*d, 1]));
    }
    let mut b = Builder::new(field, group, &l, &[("a0", vec![0, 0]), ("u", vec![0, 1])])?;
    let sl2_bracket: [(&str, &str, &str, i64); 3] =
        [("h", "e", "e", 2), ("h", "f", "f", -2), ("e", "f", "h", 1)];
    let with_u = |x: &str, u: bool| if u { format!("{x}u") } else { x.to_string() };
    for (x, y, z, c) in sl2_bracket {
        for (s, t) in [(false, false), (false, true), (true, false), (true, true)] {
            // (x ⊗ s)(y ⊗ t) with u^2 = 1
            let out = with_u(z, s ^ t);
            b.bracket(&with_u(x, s), &with_u(y, t), &[(&out, c)]);
        }
    }
    b.product("a0", "a0", &[("a0", 1)]);
    b.product("a0", "u", &[("u", 1)]);
    b.product("u", "u", &[("a0", 1)]);
    for (x, _) in sl2 {
        b.action("a0", x, &[(x, 1)]);
        b.action("a0", &with_u(x, true), &[(&with_u(x, true), 1)]);
        b.action("u", x, &[(&with_u(x, true), 1)]);
        b.action("u", &with_u(x, true), &[(x, 1)]);
    }
    b.build("E4")
}

fn t1(field: FieldSpec) -> Result<AlgebraInstance, AlgebraError> {
    let mut b = Builder::new(
        field,
        GroupSpec::integers(),
        &[("t", vec![0])],
        &[("a0", vec![0])],
    )?;
    b.product("a0", "a0", &[("a0", 1)]);
    b.action("a0", "t", &[("t", 1)]);
    b.build("T1")
}

/// The group algebra `F[Z/m]` (basis `u0 = 1, u1, ..., u_{m-1}`, `u_k` in
/// degree `k`) with `L = 0`.
pub fn group_algebra(m: u64, field: FieldSpec) -> Result<AlgebraInstance, AlgebraError> {
    let group = GroupSpec::cyclic(m).map_err(crate::graded::GradedError::from)?;
    let names: Vec<String> = (0..m).map(|k| format!("u{k}")).collect();
    let a: Vec<(&str, Vec<i64>)> = names
        .iter()
        .enumerate()
        .map(|(k, n)| (n.as_str(), vec![k as i64]))
        .collect();
    let mut b = Builder::new(field, group, &[], &a)?;
    for i in 0..m as usize {
        for j in i..m as usize {
            b.product(&names[i], &names[j], &[(&names[(i + j) % m as usize], 1)]);
        }
    }
    b.build(&format!("F[Z/{m}]"))
}

/// `A = <a>` in degree 0 with `a·a = a` if `unital`, else `a·a = 0`; `L = 0`.
pub fn one_dimensional_algebra(
    field: FieldSpec,
    unital: bool,
) -> Result<AlgebraInstance, AlgebraError> {
    let mut b = Builder::new(field, GroupSpec::integers(), &[], &[("a", vec![0])])?;
    if unital {
        b.product("a", "a", &[("a", 1)]);
    }
    b.build(if unital { "F" } else { "F0" })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{compute_derivations, verify};

    #[test]
    fn catalog_verifies() {
        for name in NAMES {
            let inst = instance(name, None).unwrap();
            let report = verify(&inst);
            assert!(
                report.overall(),
                "{name}: {:?}",
                report.failures().collect::<Vec<_>>()
            );
            let inst = instance(name, Some(oracle_field(name).unwrap())).unwrap();
            assert!(verify(&inst).overall(), "{name} over oracle field");
        }
    }

    #[test]
    fn field_guards() {
        assert!(matches!(
            instance("E1", Some(gf(2))),
            Err(CatalogError::Field { .. })
        ));
        assert!(matches!(
            instance("E2", Some(gf(7))),
            Err(CatalogError::Field { .. })
        ));
        assert!(matches!(
            instance("E3", Some(FieldSpec::rational())),
            Err(CatalogError::Field { .. })
        ));
        assert!(matches!(
            instance("nope", None),
            Err(CatalogError::Unknown(_))
        ));
        assert!(instance("E1", Some(gf(3))).is_ok());
    }

    #[test]
    fn e2_is_der_of_truncated_polynomials() {
        let e2 = instance("E2", None).unwrap();
        let ders = compute_derivations(&e2.a, &e2.product);
        let grades: Vec<String> = ders.iter().map(|d| d.grade.to_string()).collect();
        assert_eq!(grades, ["0", "1", "2"]);
        // d0 = x∂, d1 = x^2∂, d2 = ∂ in the normalization of the derivation basis
        let built = derivation_instance("E2", &e2.a, &e2.product).unwrap();
        assert_eq!(built.bracket.table(), e2.bracket.table());
        assert_eq!(built.action.table(), e2.action.table());
        assert_eq!(built.anchor.table(), e2.anchor.table());
    }

    #[test]
    fn group_algebras() {
        for (m, p) in [(2, 5), (3, 5), (3, 7), (4, 3)] {
            let ga = group_algebra(m, gf(p)).unwrap();
            assert!(verify(&ga).overall());
        }
        assert!(verify(&one_dimensional_algebra(gf(5), false).unwrap()).overall());
    }
}
