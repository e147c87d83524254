//! Constructions that preserve the axioms: restriction to a pair of ideals,
//! direct sums, graded changes of basis and reduction to another field.

use std::collections::BTreeMap;

use rand::Rng;

use crate::graded::{BilinearRule, GradedBasis, GradedSubspace};
use crate::group::{GroupElement, GroupSpec};
use crate::linalg;
use crate::scalar::{FieldSpec, Scalar};

use super::{verify, AlgebraError, AlgebraInstance, Table};

/// How the grading groups of two summands are combined.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SumEmbedding {
    /// `G x H`, first summand in the `G` coordinates.
    Product,
    /// Both summands keep their grades in a common group.
    Shared,
    /// Common group, second summand regraded by `g ↦ g^{-1}`.
    Inverted,
}

/// Basis of a subspace whose vectors are the subspace's RREF rows, with
/// coordinate lookup back from the parent.
struct SubBasis<'a> {
    parent: &'a GradedBasis,
    space: &'a GradedSubspace,
    offsets: BTreeMap<GroupElement, usize>,
}

impl<'a> SubBasis<'a> {
    fn new(parent: &'a GradedBasis, space: &'a GradedSubspace) -> Self {
        let mut offsets = BTreeMap::new();
        let mut total = 0;
        for (g, rows) in space.blocks() {
            offsets.insert(g.clone(), total);
            total += rows.len();
        }
        SubBasis {
            parent,
            space,
            offsets,
        }
    }

    fn basis(&self) -> Result<GradedBasis, AlgebraError> {
        let entries = self
            .space
            .vectors()
            .map(|v| (self.parent.format(&v), v.grade))
            .collect();
        Ok(GradedBasis::new(
            self.parent.field(),
            self.parent.group().clone(),
            entries,
        )?)
    }

    fn express(
        &self,
        full: &[Scalar],
        side: &'static str,
    ) -> Result<Vec<(usize, Scalar)>, AlgebraError> {
        let mut out = Vec::new();
        for part in self.parent.split(full) {
            let coords = linalg::coordinates(self.space.block(&part.grade), &part.coords)
                .ok_or_else(|| AlgebraError::NotClosed {
                    side,
                    detail: format!("{} leaves the subspace", self.parent.format(&part)),
                })?;
            let offset = self.offsets[&part.grade];
            out.extend(
                coords
                    .into_iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(t, c)| (offset + t, c)),
            );
        }
        Ok(out)
    }
}

/// The instance `(I, J)` with all four maps restricted. Fails if a product
/// leaves `I` or `J`.
pub fn restrict(
    inst: &AlgebraInstance,
    ideal_l: &GradedSubspace,
    ideal_a: &GradedSubspace,
    name: impl Into<String>,
) -> Result<AlgebraInstance, AlgebraError> {
    let sl = SubBasis::new(&inst.l, ideal_l);
    let sa = SubBasis::new(&inst.a, ideal_a);
    let gl = inst.l.generators(ideal_l);
    let ga = inst.a.generators(ideal_a);
    let table =
        |rule: &BilinearRule, xs: &[Vec<Scalar>], ys: &[Vec<Scalar>], target: &SubBasis, side| {
            let mut t = Table::new();
            for (p, x) in xs.iter().enumerate() {
                for (q, y) in ys.iter().enumerate() {
                    let terms = target.express(&rule.eval(x, y), side)?;
                    t.set(p, q, &terms).expect("fresh entry");
                }
            }
            Ok::<Table, AlgebraError>(t)
        };
    let bracket = table(&inst.bracket, &gl, &gl, &sl, "L")?;
    let product = table(&inst.product, &ga, &ga, &sa, "A")?;
    let action = table(&inst.action, &ga, &gl, &sl, "L")?;
    let anchor = table(&inst.anchor, &gl, &ga, &sa, "A")?;
    AlgebraInstance::from_tables(
        name,
        sl.basis()?,
        sa.basis()?,
        bracket,
        product,
        action,
        anchor,
    )
}

fn copy_table(
    rule: &BilinearRule,
    t: &mut Table,
    shift_l: usize,
    shift_r: usize,
    shift_out: usize,
) {
    for (&(i, j), terms) in rule.table() {
        let shifted: Vec<(usize, Scalar)> = terms
            .iter()
            .map(|(k, c)| (k + shift_out, c.clone()))
            .collect();
        t.set(i + shift_l, j + shift_r, &shifted)
            .expect("disjoint index ranges");
    }
}

/// `(L_x ⊕ L_y, A_x ⊕ A_y)` with all cross products zero. Basis names get the
/// suffixes `_1` and `_2`.
pub fn direct_sum(
    x: &AlgebraInstance,
    y: &AlgebraInstance,
    embedding: SumEmbedding,
    name: impl Into<String>,
) -> Result<AlgebraInstance, AlgebraError> {
    if x.field() != y.field() {
        return Err(AlgebraError::Mismatch(format!(
            "summands over {} and {}",
            x.field(),
            y.field()
        )));
    }
    let (gx, gy) = (x.group(), y.group());
    let group: GroupSpec = match embedding {
        SumEmbedding::Product => gx.product(gy),
        SumEmbedding::Shared | SumEmbedding::Inverted => {
            if gx != gy {
                return Err(AlgebraError::Mismatch(format!(
                    "summands graded by {gx} and {gy}"
                )));
            }
            gx.clone()
        }
    };
    let map_x = |g: &GroupElement| match embedding {
        SumEmbedding::Product => gx.embed_left(gy, g),
        _ => g.clone(),
    };
    let map_y = |g: &GroupElement| match embedding {
        SumEmbedding::Product => gx.embed_right(gy, g),
        SumEmbedding::Shared => g.clone(),
        SumEmbedding::Inverted => gy.inv_unchecked(g),
    };
    let join = |bx: &GradedBasis, by: &GradedBasis| {
        let entries = bx
            .entries()
            .iter()
            .map(|(n, g)| (format!("{n}_1"), map_x(g)))
            .chain(
                by.entries()
                    .iter()
                    .map(|(n, g)| (format!("{n}_2"), map_y(g))),
            )
            .collect();
        GradedBasis::new(x.field(), group.clone(), entries)
    };
    let l = join(&x.l, &y.l)?;
    let a = join(&x.a, &y.a)?;
    let (dl, da) = (x.dim_l(), x.dim_a());
    let mut bracket = Table::new();
    copy_table(&x.bracket, &mut bracket, 0, 0, 0);
    copy_table(&y.bracket, &mut bracket, dl, dl, dl);
    let mut product = Table::new();
    copy_table(&x.product, &mut product, 0, 0, 0);
    copy_table(&y.product, &mut product, da, da, da);
    let mut action = Table::new();
    copy_table(&x.action, &mut action, 0, 0, 0);
    copy_table(&y.action, &mut action, da, dl, dl);
    let mut anchor = Table::new();
    copy_table(&x.anchor, &mut anchor, 0, 0, 0);
    copy_table(&y.anchor, &mut anchor, dl, da, da);
    AlgebraInstance::from_tables(name, l, a, bracket, product, action, anchor)
}

fn random_scalar<R: Rng>(field: FieldSpec, rng: &mut R) -> Scalar {
    match field.modulus() {
        Some(p) => field.from_i64(rng.gen_range(0..p) as i64),
        None => field.from_i64(rng.gen_range(-3..=3)),
    }
}

/// Block-diagonal random invertible change of basis and its inverse.
fn random_graded_gl<R: Rng>(
    basis: &GradedBasis,
    rng: &mut R,
) -> (Vec<Vec<Scalar>>, Vec<Vec<Scalar>>) {
    let field = basis.field();
    let n = basis.dim();
    let mut p = vec![linalg::zero_vector(field, n); n];
    let mut pinv = vec![linalg::zero_vector(field, n); n];
    for grade in basis.grades() {
        let block = basis.block(grade);
        let d = block.len();
        let (m, minv) = loop {
            let m: Vec<Vec<Scalar>> = (0..d)
                .map(|_| (0..d).map(|_| random_scalar(field, rng)).collect())
                .collect();
            if let Some(inv) = linalg::invert(field, &m) {
                break (m, inv);
            }
        };
        for (r, &pr) in block.iter().enumerate() {
            for (c, &pc) in block.iter().enumerate() {
                p[pr][pc] = m[r][c].clone();
                pinv[pr][pc] = minv[r][c].clone();
            }
        }
    }
    (p, pinv)
}

/// Row vector times matrix.
fn vec_mat(v: &[Scalar], m: &[Vec<Scalar>], field: FieldSpec) -> Vec<Scalar> {
    let mut out = linalg::zero_vector(field, m.first().map_or(0, Vec::len));
    for (c, row) in v.iter().zip(m) {
        linalg::axpy(&mut out, c, row);
    }
    out
}

/// Re-expresses the instance in random homogeneous bases of `L` and `A`.
/// Basis names are kept; they now denote the new basis vectors.
pub fn base_change<R: Rng>(
    inst: &AlgebraInstance,
    rng: &mut R,
) -> Result<AlgebraInstance, AlgebraError> {
    let field = inst.field();
    let (pl, pl_inv) = random_graded_gl(&inst.l, rng);
    let (pa, pa_inv) = random_graded_gl(&inst.a, rng);
    let table = |rule: &BilinearRule,
                 left: &[Vec<Scalar>],
                 right: &[Vec<Scalar>],
                 out_inv: &[Vec<Scalar>]| {
        let mut t = Table::new();
        for (i, x) in left.iter().enumerate() {
            for (j, y) in right.iter().enumerate() {
                let v = vec_mat(&rule.eval(x, y), out_inv, field);
                let terms: Vec<(usize, Scalar)> = v
                    .into_iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .collect();
                t.set(i, j, &terms).expect("fresh entry");
            }
        }
        t
    };
    AlgebraInstance::from_tables(
        inst.name.clone(),
        (*inst.l).clone(),
        (*inst.a).clone(),
        table(&inst.bracket, &pl, &pl, &pl_inv),
        table(&inst.product, &pa, &pa, &pa_inv),
        table(&inst.action, &pa, &pl, &pl_inv),
        table(&inst.anchor, &pl, &pa, &pa_inv),
    )
}

fn convert(c: &Scalar, target: FieldSpec) -> Result<Scalar, AlgebraError> {
    match c.field().modulus() {
        None => Ok(target.parse(&c.to_string())?),
        Some(p) => {
            let v = c.to_i64().expect("residues are integers");
            let lifted = if 2 * v > p as i64 { v - p as i64 } else { v };
            Ok(target.from_i64(lifted))
        }
    }
}

/// Reinterprets the structure constants over `target` (residues are lifted
/// to the symmetric range first) and re-verifies the result.
pub fn change_field(
    inst: &AlgebraInstance,
    target: FieldSpec,
) -> Result<AlgebraInstance, AlgebraError> {
    if inst.field() == target {
        return Ok(inst.clone());
    }
    let rebase =
        |b: &GradedBasis| GradedBasis::new(target, b.group().clone(), b.entries().to_vec());
    let table = |rule: &BilinearRule| -> Result<Table, AlgebraError> {
        let mut t = Table::new();
        for (&(i, j), terms) in rule.table() {
            let mapped = terms
                .iter()
                .map(|(k, c)| Ok((*k, convert(c, target)?)))
                .collect::<Result<Vec<_>, AlgebraError>>()?;
            t.set(i, j, &mapped).expect("fresh entry");
        }
        Ok(t)
    };
    let out = AlgebraInstance::from_tables(
        inst.name.clone(),
        rebase(&inst.l)?,
        rebase(&inst.a)?,
        table(&inst.bracket)?,
        table(&inst.product)?,
        table(&inst.action)?,
        table(&inst.anchor)?,
    )?;
    let report = verify(&out);
    if let Some(failed) = report.failures().next() {
        let witness = failed
            .witness
            .as_ref()
            .map(|w| format!(" at {w}"))
            .unwrap_or_default();
        return Err(AlgebraError::Verification(format!(
            "{} over {target}{witness}",
            failed.name
        )));
    }
    Ok(out)
}
