//! Brute-force ground truth: exhaustive graded-ideal lattices over prime
//! fields, literal connection-path enumeration and a seeded template
//! generator of valid instances.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::algebra::{
    base_change, change_field, direct_sum, AlgebraError, AlgebraInstance, SumEmbedding,
};
use crate::catalog::{self, CatalogError};
use crate::connections::{ConnectionError, ConnectionPath, Side, Supports};
use crate::graded::{GradedBasis, GradedSubspace};
use crate::group::GroupElement;
use crate::scalar::{FieldSpec, Scalar};

/// Largest number of candidate subspaces an ideal enumeration may test.
pub const CANDIDATE_LIMIT: u128 = 100_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("exhaustive enumeration needs a prime field, got Q")]
    RationalField,
    #[error("{candidates} candidate subspaces exceed the limit of {limit}")]
    GuardExceeded { candidates: u128, limit: u128 },
    #[error(transparent)]
    Connection(#[from] ConnectionError),
    #[error("malformed recipe: {0}")]
    Recipe(String),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// All graded ideals of one side of an instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdealLattice {
    pub side: Side,
    /// Ordered by dimension, then by enumeration order.
    pub ideals: Vec<GradedSubspace>,
}

impl IdealLattice {
    pub fn len(&self) -> usize {
        self.ideals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ideals.is_empty()
    }

    pub fn contains(&self, s: &GradedSubspace) -> bool {
        self.ideals.contains(s)
    }
}

/// Number of subspaces of `F_q^n`, summing Gaussian binomials.
pub fn subspace_count(q: u64, n: usize) -> u128 {
    let q = q as u128;
    // row[k] = [m choose k]_q for the current m
    let mut row = vec![1u128];
    for m in 1..=n {
        let mut next = vec![1u128; m + 1];
        for k in 1..m {
            next[k] = row[k - 1].saturating_add(q.saturating_pow(k as u32).saturating_mul(row[k]));
        }
        row = next;
    }
    row.iter().fold(0u128, |a, b| a.saturating_add(*b))
}

/// Every subspace of `F_p^d` as a list of RREF rows.
pub fn all_subspaces(field: FieldSpec, d: usize) -> Vec<Vec<Vec<Scalar>>> {
    let elements = field.elements().expect("prime field");
    let mut out = Vec::new();
    for k in 0..=d {
        for pivots in combinations(d, k) {
            let free: Vec<(usize, usize)> = pivots
                .iter()
                .enumerate()
                .flat_map(|(r, &p)| {
                    (p + 1..d)
                        .filter(|c| !pivots.contains(c))
                        .map(move |c| (r, c))
                })
                .collect();
            let mut counter = vec![0usize; free.len()];
            loop {
                let mut rows: Vec<Vec<Scalar>> = pivots
                    .iter()
                    .map(|&p| {
                        let mut row = vec![field.zero(); d];
                        row[p] = field.one();
                        row
                    })
                    .collect();
                for (&(r, c), &e) in free.iter().zip(&counter) {
                    rows[r][c] = elements[e].clone();
                }
                out.push(rows);
                let mut pos = 0;
                while pos < counter.len() {
                    counter[pos] += 1;
                    if counter[pos] < elements.len() {
                        break;
                    }
                    counter[pos] = 0;
                    pos += 1;
                }
                if pos == counter.len() {
                    break;
                }
            }
        }
    }
    out
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

fn enumerate(
    basis: &GradedBasis,
    side: Side,
    is_ideal: impl Fn(&GradedSubspace) -> bool,
) -> Result<IdealLattice, OracleError> {
    let field = basis.field();
    let p = field.modulus().ok_or(OracleError::RationalField)?;
    let grades: Vec<GroupElement> = basis.grades().cloned().collect();
    let candidates = grades
        .iter()
        .map(|g| subspace_count(p, basis.block_dim(g)))
        .fold(1u128, |a, b| a.saturating_mul(b));
    if candidates > CANDIDATE_LIMIT {
        return Err(OracleError::GuardExceeded {
            candidates,
            limit: CANDIDATE_LIMIT,
        });
    }
    let lattices: Vec<Vec<Vec<Vec<Scalar>>>> = grades
        .iter()
        .map(|g| all_subspaces(field, basis.block_dim(g)))
        .collect();
    let mut ideals = Vec::new();
    let mut choice = vec![0usize; grades.len()];
    loop {
        let blocks: BTreeMap<GroupElement, Vec<Vec<Scalar>>> = grades
            .iter()
            .zip(&choice)
            .enumerate()
            .map(|(b, (g, &c))| (g.clone(), lattices[b][c].clone()))
            .collect();
        let candidate = GradedSubspace::from_rows(blocks);
        if is_ideal(&candidate) {
            ideals.push(candidate);
        }
        let mut pos = 0;
        while pos < choice.len() {
            choice[pos] += 1;
            if choice[pos] < lattices[pos].len() {
                break;
            }
            choice[pos] = 0;
            pos += 1;
        }
        if pos == choice.len() {
            break;
        }
    }
    ideals.sort_by_key(GradedSubspace::dim);
    Ok(IdealLattice { side, ideals })
}

/// All graded ideals of `L`, by testing every combination of block subspaces.
pub fn enumerate_graded_ideals_l(inst: &AlgebraInstance) -> Result<IdealLattice, OracleError> {
    enumerate(&inst.l, Side::L, |s| inst.is_graded_ideal_l(s))
}

/// All graded ideals of `A`.
pub fn enumerate_graded_ideals_a(inst: &AlgebraInstance) -> Result<IdealLattice, OracleError> {
    enumerate(&inst.a, Side::A, |s| inst.is_graded_ideal_a(s))
}

/// Gr-simplicity of `L` read off its lattice: the three products are nonzero
/// and every graded ideal is `0`, `Ker ρ` or `L`.
pub fn lattice_gr_simple_l(inst: &AlgebraInstance, lattice: &IdealLattice) -> bool {
    let (lw, aw) = (inst.l.whole(), inst.a.whole());
    let kernel = inst.ker_anchor();
    !inst.bracket.image(&lw, &lw).is_zero()
        && !inst.product.image(&aw, &aw).is_zero()
        && !inst.action.image(&aw, &lw).is_zero()
        && lattice
            .ideals
            .iter()
            .all(|s| s.is_zero() || *s == lw || *s == kernel)
}

/// Gr-simplicity of `A` read off its lattice: `AA ≠ 0` and the only graded
/// ideals are `0` and `A`.
pub fn lattice_gr_simple_a(inst: &AlgebraInstance, lattice: &IdealLattice) -> bool {
    let aw = inst.a.whole();
    !inst.product.image(&aw, &aw).is_zero()
        && lattice.ideals.iter().all(|s| s.is_zero() || *s == aw)
}

fn check_member(supports: &Supports, side: Side, g: &GroupElement) -> Result<(), ConnectionError> {
    if supports.support(side).contains(g) {
        Ok(())
    } else {
        Err(ConnectionError::NotInSupport {
            side,
            element: g.clone(),
        })
    }
}

fn hits(supports: &Supports, p: &GroupElement, target: &GroupElement) -> bool {
    p == target || *p == supports.group.inv_unchecked(target)
}

/// Every connection from `g` to `target` with at most `max_len` elements
/// (the start included), checked literally against the definition.
pub fn enumerate_connections(
    supports: &Supports,
    side: Side,
    g: &GroupElement,
    target: &GroupElement,
    max_len: usize,
) -> Result<Vec<ConnectionPath>, OracleError> {
    check_member(supports, side, g)?;
    check_member(supports, side, target)?;
    let multipliers: Vec<GroupElement> = supports.multipliers().into_iter().collect();
    let states = supports.states(side);
    let mut out = Vec::new();
    let mut stack: Vec<GroupElement> = Vec::new();
    #[allow(clippy::too_many_arguments)]
    fn go(
        supports: &Supports,
        multipliers: &[GroupElement],
        states: &BTreeSet<GroupElement>,
        start: &GroupElement,
        target: &GroupElement,
        product: &GroupElement,
        max_len: usize,
        stack: &mut Vec<GroupElement>,
        out: &mut Vec<ConnectionPath>,
    ) {
        if hits(supports, product, target) {
            out.push(ConnectionPath {
                start: start.clone(),
                multipliers: stack.clone(),
                target: target.clone(),
            });
        }
        if stack.len() + 1 >= max_len || !states.contains(product) {
            return;
        }
        for m in multipliers {
            stack.push(m.clone());
            let next = supports.group.mul_unchecked(product, m);
            go(
                supports,
                multipliers,
                states,
                start,
                target,
                &next,
                max_len,
                stack,
                out,
            );
            stack.pop();
        }
    }
    if max_len >= 1 {
        go(
            supports,
            &multipliers,
            &states,
            g,
            target,
            g,
            max_len,
            &mut stack,
            &mut out,
        );
    }
    Ok(out)
}

/// Whether some connection of at most `max_len` elements joins `g` to
/// `target`; depth-first over (partial product, length) with memoization.
pub fn connection_exists(
    supports: &Supports,
    side: Side,
    g: &GroupElement,
    target: &GroupElement,
    max_len: usize,
) -> Result<bool, OracleError> {
    check_member(supports, side, g)?;
    check_member(supports, side, target)?;
    let multipliers: Vec<GroupElement> = supports.multipliers().into_iter().collect();
    let states = supports.states(side);
    let mut memo: HashMap<(GroupElement, usize), bool> = HashMap::new();
    #[allow(clippy::too_many_arguments)]
    fn go(
        supports: &Supports,
        multipliers: &[GroupElement],
        states: &BTreeSet<GroupElement>,
        target: &GroupElement,
        product: &GroupElement,
        len: usize,
        max_len: usize,
        memo: &mut HashMap<(GroupElement, usize), bool>,
    ) -> bool {
        if hits(supports, product, target) {
            return true;
        }
        if len >= max_len || !states.contains(product) {
            return false;
        }
        if let Some(&known) = memo.get(&(product.clone(), len)) {
            return known;
        }
        let found = multipliers.iter().any(|m| {
            let next = supports.group.mul_unchecked(product, m);
            go(
                supports,
                multipliers,
                states,
                target,
                &next,
                len + 1,
                max_len,
                memo,
            )
        });
        memo.insert((product.clone(), len), found);
        found
    }
    Ok(max_len >= 1
        && go(
            supports,
            &multipliers,
            &states,
            target,
            g,
            1,
            max_len,
            &mut memo,
        ))
}

/// The default path-length bound, twice the number of multipliers.
pub fn default_max_len(supports: &Supports) -> usize {
    2 * supports.multipliers().len()
}

/// Classes of the relation decided by [`connection_exists`], each class
/// collected from its smallest member.
pub fn oracle_partition(
    supports: &Supports,
    side: Side,
    max_len: usize,
) -> Result<Vec<BTreeSet<GroupElement>>, OracleError> {
    let support: Vec<GroupElement> = supports.support(side).iter().cloned().collect();
    let mut assigned = BTreeSet::new();
    let mut classes = Vec::new();
    for g in &support {
        if assigned.contains(g) {
            continue;
        }
        let mut class = BTreeSet::new();
        for h in &support {
            if connection_exists(supports, side, g, h, max_len)? {
                class.insert(h.clone());
            }
        }
        assigned.extend(class.iter().cloned());
        classes.push(class);
    }
    Ok(classes)
}

/// One step of a template recipe.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TemplateOp {
    /// Direct sum of the current instance with `atoms[atom]`.
    DirectSum {
        atom: usize,
        embedding: SumEmbedding,
    },
    /// Random homogeneous change of basis.
    BaseChange,
    /// Reinterpretation of the structure constants over another field.
    FieldChange(FieldSpec),
}

/// A closed construction: start from `atoms[0]` over `field` and apply
/// `operations` in order. Atoms are catalog names or `F[Z/m]` for the group
/// algebra of `Z/m` with `L = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TemplateRecipe {
    pub field: FieldSpec,
    pub atoms: Vec<String>,
    pub operations: Vec<TemplateOp>,
}

impl TemplateRecipe {
    pub fn atom(name: impl Into<String>, field: FieldSpec) -> Self {
        TemplateRecipe {
            field,
            atoms: vec![name.into()],
            operations: Vec::new(),
        }
    }
}

impl fmt::Display for TemplateRecipe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.atoms.first().map_or("?", String::as_str))?;
        for op in &self.operations {
            match op {
                TemplateOp::DirectSum { atom, embedding } => {
                    let name = self.atoms.get(*atom).map_or("?", String::as_str);
                    write!(f, " + {name} [{embedding:?}]")?;
                }
                TemplateOp::BaseChange => write!(f, " ~ base change")?,
                TemplateOp::FieldChange(target) => write!(f, " -> {target}")?,
            }
        }
        write!(f, " over {}", self.field)
    }
}

fn load_atom(name: &str, field: FieldSpec) -> Result<AlgebraInstance, OracleError> {
    if let Some(m) = name.strip_prefix("F[Z/").and_then(|s| s.strip_suffix(']')) {
        let m: u64 = m
            .parse()
            .map_err(|_| OracleError::Recipe(format!("bad group algebra atom {name}")))?;
        return Ok(catalog::group_algebra(m, field)?.renamed(name));
    }
    Ok(catalog::instance(name, Some(field))?)
}

/// Builds the instance described by `recipe`; random choices come from a
/// ChaCha8 stream seeded with `seed`.
pub fn generate_instance(
    recipe: &TemplateRecipe,
    seed: u64,
) -> Result<AlgebraInstance, OracleError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let first = recipe
        .atoms
        .first()
        .ok_or_else(|| OracleError::Recipe("no atoms".into()))?;
    let mut current = load_atom(first, recipe.field)?;
    for op in &recipe.operations {
        current = match op {
            TemplateOp::DirectSum { atom, embedding } => {
                let name = recipe.atoms.get(*atom).ok_or_else(|| {
                    OracleError::Recipe(format!("atom index {atom} out of range"))
                })?;
                let other = load_atom(name, current.field())?;
                direct_sum(&current, &other, *embedding, current.name.clone())?
            }
            TemplateOp::BaseChange => base_change(&current, &mut rng)?,
            TemplateOp::FieldChange(target) => change_field(&current, *target)?,
        };
    }
    Ok(current.renamed(recipe.to_string()))
}

const SMALL_ATOMS: [&str; 5] = ["E1", "T1", "E4", "F[Z/2]", "F[Z/3]"];
const CHAR3_ATOMS: [&str; 2] = ["E2", "W3"];

fn atom_group(name: &str) -> &'static str {
    match name {
        "E1" | "T1" => "Z",
        "E4" => "Z x Z/2",
        "F[Z/2]" => "Z/2",
        _ => "Z/3",
    }
}

/// A deterministic list of `count` recipes over GF(3), GF(5) and GF(7):
/// one atom, optionally summed with a second atom and optionally followed
/// by a change of basis.
pub fn template_space(count: usize, seed: u64) -> Vec<TemplateRecipe> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let primes = [3u64, 5, 7];
    (0..count)
        .map(|_| {
            let p = primes[rng.gen_range(0..primes.len())];
            let field = FieldSpec::prime(p).expect("prime");
            let mut pool: Vec<&str> = SMALL_ATOMS.to_vec();
            if p == 3 {
                pool.extend(CHAR3_ATOMS);
            }
            let first = pool[rng.gen_range(0..pool.len())];
            let mut recipe = TemplateRecipe::atom(first, field);
            if rng.gen_bool(0.5) {
                let second = pool[rng.gen_range(0..pool.len())];
                let embedding = if atom_group(first) == atom_group(second) {
                    [
                        SumEmbedding::Product,
                        SumEmbedding::Shared,
                        SumEmbedding::Inverted,
                    ][rng.gen_range(0..3)]
                } else {
                    SumEmbedding::Product
                };
                recipe.atoms.push(second.to_string());
                recipe
                    .operations
                    .push(TemplateOp::DirectSum { atom: 1, embedding });
            }
            if rng.gen_bool(0.5) {
                recipe.operations.push(TemplateOp::BaseChange);
            }
            recipe
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    Survivor,
    /// Failing hypotheses with their witnesses.
    Rejected(Vec<(&'static str, String)>),
    GenerationFailed(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchLogEntry {
    pub index: usize,
    pub recipe: TemplateRecipe,
    pub outcome: SearchOutcome,
}

#[derive(Debug, Clone)]
pub struct SearchResult {
    pub survivors: Vec<(TemplateRecipe, AlgebraInstance)>,
    pub log: Vec<SearchLogEntry>,
}

/// Generates up to `budget` instances from `space` (recipe `i` with seed
/// `seed + i`) and keeps those satisfying every hypothesis of
/// [`crate::simplicity::Hypotheses5`].
pub fn hypothesis_search(space: &[TemplateRecipe], budget: usize, seed: u64) -> SearchResult {
    let mut survivors = Vec::new();
    let mut log = Vec::new();
    for (index, recipe) in space.iter().take(budget).enumerate() {
        let outcome = match generate_instance(recipe, seed.wrapping_add(index as u64)) {
            Err(e) => SearchOutcome::GenerationFailed(e.to_string()),
            Ok(inst) => {
                let h = inst.check_hypotheses5();
                if h.all() {
                    survivors.push((recipe.clone(), inst));
                    SearchOutcome::Survivor
                } else {
                    SearchOutcome::Rejected(
                        h.facts()
                            .iter()
                            .filter(|(_, f)| !f.holds)
                            .map(|(n, f)| (*n, f.witness.clone().unwrap_or_default()))
                            .collect(),
                    )
                }
            }
        };
        log.push(SearchLogEntry {
            index,
            recipe: recipe.clone(),
            outcome,
        });
    }
    SearchResult { survivors, log }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subspace_counts() {
        assert_eq!(subspace_count(3, 2), 6);
        assert_eq!(subspace_count(5, 2), 8);
        assert_eq!(subspace_count(2, 3), 16);
        assert_eq!(subspace_count(7, 0), 1);
        for (p, d) in [(2u64, 3usize), (3, 2), (3, 3), (5, 2)] {
            let f = FieldSpec::prime(p).unwrap();
            assert_eq!(all_subspaces(f, d).len() as u128, subspace_count(p, d));
        }
    }

    #[test]
    fn subspaces_are_distinct() {
        let f = FieldSpec::prime(3).unwrap();
        let all = all_subspaces(f, 3);
        let set: BTreeSet<String> = all.iter().map(|rows| format!("{rows:?}")).collect();
        assert_eq!(set.len(), all.len());
    }

    #[test]
    fn combinations_small() {
        assert_eq!(combinations(3, 2), vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
        assert_eq!(combinations(2, 0), vec![Vec::<usize>::new()]);
    }

    #[test]
    fn recipe_errors() {
        let f = FieldSpec::prime(5).unwrap();
        let empty = TemplateRecipe {
            field: f,
            atoms: vec![],
            operations: vec![],
        };
        assert!(matches!(
            generate_instance(&empty, 0),
            Err(OracleError::Recipe(_))
        ));
        let bad = TemplateRecipe {
            field: f,
            atoms: vec!["E1".into()],
            operations: vec![TemplateOp::DirectSum {
                atom: 3,
                embedding: SumEmbedding::Shared,
            }],
        };
        assert!(matches!(
            generate_instance(&bad, 0),
            Err(OracleError::Recipe(_))
        ));
        assert!(matches!(
            generate_instance(&TemplateRecipe::atom("F[Z/x]", f), 0),
            Err(OracleError::Recipe(_))
        ));
    }

    #[test]
    fn template_space_is_deterministic() {
        assert_eq!(template_space(20, 4), template_space(20, 4));
        assert_ne!(template_space(20, 4), template_space(20, 5));
    }
}
