//! Symmetric supports, maximal length, G-multiplicativity, homogeneous ideal
//! closures, gr-simplicity verdicts and the refinement of class ideals into
//! gr-simple summands.
//!
//! Every nonzero graded ideal contains a nonzero homogeneous vector and hence
//! its closure. So `L` has no graded ideals besides `0`, `Ker ρ` and `L` iff
//! every homogeneous closure is `Ker ρ` or `L`: an ideal strictly between
//! `Ker ρ` and `L` would contain a homogeneous vector outside `Ker ρ`, whose
//! closure would then have to be `L`.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::algebra::{restrict, AlgebraInstance, RuleKind};
use crate::connections::{Side, Supports};
use crate::decomposition::{format_class, DecompositionReport, Fact, Pairing, TightnessReport};
use crate::graded::{GradedBasis, GradedSubspace, HomogeneousVector};
use crate::group::GroupElement;
use crate::linalg;
use crate::scalar::Scalar;

/// Maximum number of closures computed by a finite-field verdict.
pub const CLOSURE_CAP: u128 = 20_000;
/// Random block vectors tried over the rationals.
pub const RATIONAL_SAMPLES: usize = 32;
const RATIONAL_SEED: u64 = 0x5eed;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SimplicityError {
    #[error("seed vector is zero")]
    ZeroSeed,
    #[error("not a proper nonzero graded ideal: {0}")]
    NotProperIdeal(String),
    #[error("Case a applies: {0} and its inverse both lie in the support of the ideal")]
    CaseA(GroupElement),
    #[error("hypotheses fail: {}", .0.join(", "))]
    Hypotheses(Vec<&'static str>),
    #[error("the complementary ideal does not split L: {0}")]
    NotDirect(String),
}

/// A pair of support grades whose product lies in a support while the
/// corresponding product of components vanishes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiplicativeFailure {
    pub rule: RuleKind,
    pub left: GroupElement,
    pub right: GroupElement,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hypotheses5 {
    pub sigma_symmetric: Fact,
    pub lambda_symmetric: Fact,
    pub maximal_length: Fact,
    pub g_multiplicative: Fact,
    pub tight: Fact,
    pub sigma_all_connected: Fact,
    pub lambda_all_connected: Fact,
    pub multiplicative_failures: Vec<MultiplicativeFailure>,
    pub tightness: TightnessReport,
}

impl Hypotheses5 {
    pub fn facts(&self) -> [(&'static str, &Fact); 7] {
        [
            ("sigma_symmetric", &self.sigma_symmetric),
            ("lambda_symmetric", &self.lambda_symmetric),
            ("maximal_length", &self.maximal_length),
            ("g_multiplicative", &self.g_multiplicative),
            ("tight", &self.tight),
            ("sigma_all_connected", &self.sigma_all_connected),
            ("lambda_all_connected", &self.lambda_all_connected),
        ]
    }

    pub fn all(&self) -> bool {
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
pub enum Status {
    GrSimple,
    NotGrSimple,
    Undecided,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::GrSimple => "gr_simple",
            Status::NotGrSimple => "not_gr_simple",
            Status::Undecided => "undecided",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certificate {
    /// One of the nonvanishing conditions fails.
    FailedCondition(&'static str),
    /// A graded ideal other than `0`, the whole space and `Ker ρ`.
    ProperIdeal(GradedSubspace),
    /// Every projective point of every block was closed.
    Enumerated { closures: usize },
    /// Only a sample of homogeneous vectors was closed.
    Sampled { closures: usize },
    /// The projective point count exceeds [`CLOSURE_CAP`].
    CapExceeded { points: u128 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicityVerdict {
    pub status: Status,
    pub certificate: Certificate,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SummandTag {
    GrSimple,
    Split {
        parts: (GradedSubspace, GradedSubspace),
    },
    Undecided(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Summand {
    pub l_class: BTreeSet<GroupElement>,
    pub a_class: Option<BTreeSet<GroupElement>>,
    pub ideal_l: GradedSubspace,
    pub ideal_a: Option<GradedSubspace>,
    pub tag: SummandTag,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FineReport {
    pub hypotheses: Hypotheses5,
    pub decomposition_l: DecompositionReport,
    pub decomposition_a: DecompositionReport,
    pub pairing: Pairing,
    /// Empty when the hypothesis gate fails.
    pub summands: Vec<Summand>,
}

impl FineReport {
    pub fn gate_passed(&self) -> bool {
        self.hypotheses.all()
    }
}

fn symmetric_fact(
    group: &crate::group::GroupSpec,
    support: &BTreeSet<GroupElement>,
    symbol: &str,
) -> Fact {
    match support
        .iter()
        .find(|g| !support.contains(&group.inv_unchecked(g)))
    {
        None => Fact::yes(),
        Some(g) => Fact::no(format!(
            "{g} lies in {symbol} but {} does not",
            group.inv_unchecked(g)
        )),
    }
}

fn connected_fact(supports: &Supports, side: Side) -> Fact {
    let partition = supports.classes(side);
    if partition.classes.len() <= 1 {
        Fact::yes()
    } else {
        let reps: Vec<String> = partition
            .classes
            .iter()
            .map(|c| format!("{{{}}}", format_class(c)))
            .collect();
        Fact::no(format!("{} classes: {}", reps.len(), reps.join(" ")))
    }
}

/// Projective points of `F_p^d`: vectors whose first nonzero entry is 1.
fn projective_points(field: crate::scalar::FieldSpec, d: usize) -> Vec<Vec<Scalar>> {
    let elements = field.elements().expect("prime field");
    let mut out = Vec::new();
    for lead in 0..d {
        let free = d - lead - 1;
        let mut counter = vec![0usize; free];
        loop {
            let mut v = linalg::zero_vector(field, d);
            v[lead] = field.one();
            for (t, &c) in counter.iter().enumerate() {
                v[lead + 1 + t] = elements[c].clone();
            }
            out.push(v);
            let mut pos = 0;
            while pos < free {
                counter[pos] += 1;
                if counter[pos] < elements.len() {
                    break;
                }
                counter[pos] = 0;
                pos += 1;
            }
            if pos == free {
                break;
            }
        }
    }
    out
}

fn projective_count(p: u64, d: usize) -> u128 {
    let p = p as u128;
    (0..d as u32).map(|k| p.pow(k)).sum()
}

/// Homogeneous seeds for a closure-based verdict: every projective point over
/// a prime field, otherwise basis vectors, pairwise sums within blocks and a
/// seeded random sample.
enum Seeds {
    Complete(Vec<HomogeneousVector>),
    Sample(Vec<HomogeneousVector>),
    TooMany(u128),
}

fn seeds(basis: &GradedBasis) -> Seeds {
    let field = basis.field();
    let grades: Vec<GroupElement> = basis.grades().cloned().collect();
    match field.modulus() {
        Some(p) => {
            let count: u128 = grades
                .iter()
                .map(|g| projective_count(p, basis.block_dim(g)))
                .sum();
            if count > CLOSURE_CAP {
                return Seeds::TooMany(count);
            }
            let out = grades
                .iter()
                .flat_map(|g| {
                    projective_points(field, basis.block_dim(g))
                        .into_iter()
                        .map(move |coords| HomogeneousVector {
                            grade: g.clone(),
                            coords,
                        })
                })
                .collect();
            Seeds::Complete(out)
        }
        None => {
            let mut out = Vec::new();
            for g in &grades {
                let d = basis.block_dim(g);
                for i in 0..d {
                    out.push(HomogeneousVector {
                        grade: g.clone(),
                        coords: linalg::unit_vector(field, d, i),
                    });
                }
                for i in 0..d {
                    for j in i + 1..d {
                        let mut v = linalg::unit_vector(field, d, i);
                        v[j] = field.one();
                        out.push(HomogeneousVector {
                            grade: g.clone(),
                            coords: v,
                        });
                    }
                }
            }
            let mut rng = ChaCha8Rng::seed_from_u64(RATIONAL_SEED);
            if !grades.is_empty() {
                for _ in 0..RATIONAL_SAMPLES {
                    let g = &grades[rng.gen_range(0..grades.len())];
                    let coords: Vec<Scalar> = (0..basis.block_dim(g))
                        .map(|_| field.from_i64(rng.gen_range(-3..=3)))
                        .collect();
                    if !linalg::is_zero_vector(&coords) {
                        out.push(HomogeneousVector {
                            grade: g.clone(),
                            coords,
                        });
                    }
                }
            }
            Seeds::Sample(out)
        }
    }
}

impl AlgebraInstance {
    pub fn check_hypotheses5(&self) -> Hypotheses5 {
        let group = self.group();
        let supports = Supports::of(self);
        let (sigma, lambda) = (&supports.sigma, &supports.lambda);

        let mut maximal_length = Fact::yes();
        let oversized = sigma
            .iter()
            .map(|g| ("L", g, self.l.block_dim(g)))
            .chain(lambda.iter().map(|k| ("A", k, self.a.block_dim(k))))
            .find(|(_, _, d)| *d != 1);
        if let Some((side, g, d)) = oversized {
            maximal_length = Fact::no(format!("dim {side}_{g} = {d}"));
        }

        let mut failures = Vec::new();
        let mut scan = |rule: RuleKind,
                        left: &BTreeSet<GroupElement>,
                        right: &BTreeSet<GroupElement>,
                        target: &BTreeSet<GroupElement>| {
            let (lb, rb) = match rule {
                RuleKind::Bracket => (&self.l, &self.l),
                RuleKind::Action => (&self.a, &self.l),
                _ => (&self.a, &self.a),
            };
            for g in left {
                for h in right {
                    if target.contains(&group.mul_unchecked(g, h))
                        && self
                            .rule(rule)
                            .image(&lb.component(g), &rb.component(h))
                            .is_zero()
                    {
                        failures.push(MultiplicativeFailure {
                            rule,
                            left: g.clone(),
                            right: h.clone(),
                        });
                    }
                }
            }
        };
        scan(RuleKind::Bracket, sigma, sigma, sigma);
        scan(RuleKind::Action, lambda, sigma, sigma);
        scan(RuleKind::Product, lambda, lambda, lambda);
        let g_multiplicative = match failures.first() {
            None => Fact::yes(),
            Some(f) => {
                let (lhs, space) = match f.rule {
                    RuleKind::Bracket => (format!("[L_{}, L_{}]", f.left, f.right), "Σ"),
                    RuleKind::Action => (format!("A_{} L_{}", f.left, f.right), "Σ"),
                    _ => (format!("A_{} A_{}", f.left, f.right), "Λ"),
                };
                Fact::no(format!(
                    "{lhs} = 0 although {} * {} = {} lies in {space}",
                    f.left,
                    f.right,
                    group.mul_unchecked(&f.left, &f.right)
                ))
            }
        };

        let tightness = self.check_tight();
        let tight = if tightness.tight() {
            Fact::yes()
        } else {
            let reasons: Vec<String> = tightness
                .facts()
                .iter()
                .filter(|(_, f)| !f.holds)
                .map(|(n, f)| format!("{n}: {}", f.witness.as_deref().unwrap_or("fails")))
                .collect();
            Fact::no(reasons.join("; "))
        };

        Hypotheses5 {
            sigma_symmetric: symmetric_fact(group, sigma, "Σ"),
            lambda_symmetric: symmetric_fact(group, lambda, "Λ"),
            maximal_length,
            g_multiplicative,
            tight,
            sigma_all_connected: connected_fact(&supports, Side::L),
            lambda_all_connected: connected_fact(&supports, Side::A),
            multiplicative_failures: failures,
            tightness,
        }
    }

    fn closure_step_l(&self, x: &GradedSubspace) -> GradedSubspace {
        let (lw, aw) = (self.l.whole(), self.a.whole());
        let anchored = self.anchor.image(x, &aw);
        x.plus(&self.bracket.image(&lw, x))
            .plus(&self.action.image(&aw, x))
            .plus(&self.action.image(&anchored, &lw))
    }

    fn closure_step_a(&self, x: &GradedSubspace) -> GradedSubspace {
        x.plus(&self.product.image(&self.a.whole(), x))
    }

    /// The smallest graded ideal of `L` containing `seed`.
    pub fn ideal_closure_l(
        &self,
        seed: &HomogeneousVector,
    ) -> Result<GradedSubspace, SimplicityError> {
        self.closure(Side::L, seed)
    }

    /// The smallest graded ideal of `A` containing `seed`.
    pub fn ideal_closure_a(
        &self,
        seed: &HomogeneousVector,
    ) -> Result<GradedSubspace, SimplicityError> {
        self.closure(Side::A, seed)
    }

    fn closure(
        &self,
        side: Side,
        seed: &HomogeneousVector,
    ) -> Result<GradedSubspace, SimplicityError> {
        if linalg::is_zero_vector(&seed.coords) {
            return Err(SimplicityError::ZeroSeed);
        }
        let basis = match side {
            Side::L => &self.l,
            Side::A => &self.a,
        };
        let mut x = basis
            .span(std::slice::from_ref(seed))
            .map_err(|_| SimplicityError::ZeroSeed)?;
        loop {
            let next = match side {
                Side::L => self.closure_step_l(&x),
                Side::A => self.closure_step_a(&x),
            };
            if next.dim() == x.dim() {
                return Ok(x);
            }
            x = next;
        }
    }

    pub fn gr_simple_l(&self) -> SimplicityVerdict {
        let (lw, aw) = (self.l.whole(), self.a.whole());
        let conditions = [
            ("[L, L] = 0", self.bracket.image(&lw, &lw).is_zero()),
            ("AA = 0", self.product.image(&aw, &aw).is_zero()),
            ("AL = 0", self.action.image(&aw, &lw).is_zero()),
        ];
        let kernel = self.ker_anchor();
        self.verdict(Side::L, &conditions, &[lw, kernel])
    }

    pub fn gr_simple_a(&self) -> SimplicityVerdict {
        let aw = self.a.whole();
        let conditions = [("AA = 0", self.product.image(&aw, &aw).is_zero())];
        self.verdict(Side::A, &conditions, &[aw])
    }

    fn verdict(
        &self,
        side: Side,
        conditions: &[(&'static str, bool)],
        allowed: &[GradedSubspace],
    ) -> SimplicityVerdict {
        if let Some((name, _)) = conditions.iter().find(|(_, failed)| *failed) {
            return SimplicityVerdict {
                status: Status::NotGrSimple,
                certificate: Certificate::FailedCondition(name),
            };
        }
        let basis = match side {
            Side::L => &self.l,
            Side::A => &self.a,
        };
        let (candidates, complete) = match seeds(basis) {
            Seeds::TooMany(points) => {
                return SimplicityVerdict {
                    status: Status::Undecided,
                    certificate: Certificate::CapExceeded { points },
                }
            }
            Seeds::Complete(v) => (v, true),
            Seeds::Sample(v) => (v, false),
        };
        for seed in &candidates {
            let closure = self.closure(side, seed).expect("seeds are nonzero");
            if !allowed.contains(&closure) {
                return SimplicityVerdict {
                    status: Status::NotGrSimple,
                    certificate: Certificate::ProperIdeal(closure),
                };
            }
        }
        let closures = candidates.len();
        if complete {
            SimplicityVerdict {
                status: Status::GrSimple,
                certificate: Certificate::Enumerated { closures },
            }
        } else {
            SimplicityVerdict {
                status: Status::Undecided,
                certificate: Certificate::Sampled { closures },
            }
        }
    }

    /// Splits `L = I ⊕ I'` when no grade of `I` has its inverse in `I`.
    pub fn split_case_b(
        &self,
        ideal: &GradedSubspace,
    ) -> Result<(GradedSubspace, GradedSubspace), SimplicityError> {
        let whole = self.l.whole();
        if ideal.is_zero() || *ideal == whole || !self.is_graded_ideal_l(ideal) {
            return Err(SimplicityError::NotProperIdeal(
                self.l.format_subspace(ideal),
            ));
        }
        let group = self.group();
        let supports = Supports::of(self);
        let sigma_i: BTreeSet<GroupElement> = supports
            .sigma
            .iter()
            .filter(|g| ideal.block_dim(g) > 0)
            .cloned()
            .collect();
        if let Some(g) = sigma_i
            .iter()
            .find(|g| sigma_i.contains(&group.inv_unchecked(g)))
        {
            return Err(SimplicityError::CaseA(g.clone()));
        }
        let hypotheses = self.check_hypotheses5();
        if !hypotheses.all() {
            return Err(SimplicityError::Hypotheses(hypotheses.failing()));
        }
        let mut other = GradedSubspace::zero();
        for g in sigma_i.iter().map(|g| group.inv_unchecked(g)) {
            let lg = self.l.component(&g);
            other = other
                .plus(
                    &self
                        .action
                        .image(&self.a.component(&group.inv_unchecked(&g)), &lg),
                )
                .plus(&lg);
        }
        let meet = self.l.intersect(ideal, &other).expect("same basis");
        if !meet.is_zero() {
            return Err(SimplicityError::NotDirect(format!(
                "I ∩ I' = {}",
                self.l.format_subspace(&meet)
            )));
        }
        if ideal.plus(&other) != whole {
            let missing = self
                .l
                .complement_in(&ideal.plus(&other), &whole)
                .expect("subspace of L");
            return Err(SimplicityError::NotDirect(format!(
                "I + I' misses {}",
                self.l.format_subspace(&missing)
            )));
        }
        Ok((ideal.clone(), other))
    }

    /// Class decompositions refined into gr-simple summands, gated on all
    /// hypotheses of [`Hypotheses5`].
    pub fn fine_decompose(&self) -> FineReport {
        let hypotheses = self.check_hypotheses5();
        let decomposition_l = self.decompose_l();
        let decomposition_a = self.decompose_a();
        let pairing = self.pair_ideals(&decomposition_l, &decomposition_a);
        let mut summands = Vec::new();
        if hypotheses.all() {
            for ideal in &decomposition_l.ideals {
                let a_class = pairing.partner(&ideal.class).cloned();
                let ideal_a = a_class
                    .as_ref()
                    .and_then(|c| decomposition_a.ideals.iter().find(|j| &j.class == c))
                    .map(|j| j.total.clone());
                let tag = match &ideal_a {
                    None => SummandTag::Undecided("no unique paired A-ideal".into()),
                    Some(ja) => self.refine(&ideal.total, ja),
                };
                summands.push(Summand {
                    l_class: ideal.class.clone(),
                    a_class,
                    ideal_l: ideal.total.clone(),
                    ideal_a,
                    tag,
                });
            }
        }
        FineReport {
            hypotheses,
            decomposition_l,
            decomposition_a,
            pairing,
            summands,
        }
    }

    fn refine(&self, ideal_l: &GradedSubspace, ideal_a: &GradedSubspace) -> SummandTag {
        let sub = match restrict(self, ideal_l, ideal_a, format!("{}|summand", self.name)) {
            Ok(sub) => sub,
            Err(e) => return SummandTag::Undecided(format!("restriction fails: {e}")),
        };
        let verdict = sub.gr_simple_l();
        match (verdict.status, verdict.certificate) {
            (Status::GrSimple, _) => SummandTag::GrSimple,
            (Status::NotGrSimple, Certificate::ProperIdeal(j)) => {
                let lifted = lift(ideal_l, &j);
                if *ideal_l != self.l.whole() {
                    return SummandTag::Undecided(
                        "proper ideal inside a proper class ideal".into(),
                    );
                }
                match self.split_case_b(&lifted) {
                    Ok(parts) => SummandTag::Split { parts },
                    Err(e) => SummandTag::Undecided(e.to_string()),
                }
            }
            (status, certificate) => {
                SummandTag::Undecided(format!("{}: {certificate:?}", status.as_str()))
            }
        }
    }
}

/// Maps a subspace of a restricted instance back to the parent. The restricted
/// basis at each grade is the list of RREF rows of `space` at that grade.
pub fn lift(space: &GradedSubspace, sub: &GradedSubspace) -> GradedSubspace {
    let mut rows = std::collections::BTreeMap::new();
    for (g, block) in sub.blocks() {
        let parent_rows = space.block(g);
        let lifted: Vec<Vec<Scalar>> = block
            .iter()
            .map(|r| {
                let mut out = linalg::zero_vector(parent_rows[0][0].field(), parent_rows[0].len());
                for (c, row) in r.iter().zip(parent_rows) {
                    linalg::axpy(&mut out, c, row);
                }
                out
            })
            .collect();
        rows.insert(g.clone(), lifted);
    }
    GradedSubspace::from_rows(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::scalar::FieldSpec;

    fn gf(p: u64) -> FieldSpec {
        FieldSpec::prime(p).unwrap()
    }

    #[test]
    fn e2_hypotheses() {
        let e2 = catalog::instance("E2", None).unwrap();
        let h = e2.check_hypotheses5();
        assert_eq!(h.failing(), vec!["g_multiplicative"]);
        let first = &h.multiplicative_failures[0];
        let one = e2.group().element(vec![1]).unwrap();
        assert_eq!(
            (first.rule, &first.left, &first.right),
            (RuleKind::Bracket, &one, &one)
        );
        assert!(h.sigma_symmetric.holds && h.maximal_length.holds);
    }

    #[test]
    fn e1_hypotheses() {
        let e1 = catalog::instance("E1", None).unwrap();
        let h = e1.check_hypotheses5();
        assert_eq!(h.failing(), vec!["tight"]);
        assert!(h.multiplicative_failures.is_empty());
        assert!(h.lambda_symmetric.holds && h.lambda_all_connected.holds);
    }

    #[test]
    fn closures() {
        let e1 = catalog::instance("E1", None).unwrap();
        assert_eq!(
            e1.ideal_closure_l(&e1.l.named("e").unwrap()).unwrap(),
            e1.l.whole()
        );
        let e2 = catalog::instance("E2", None).unwrap();
        assert_eq!(
            e2.ideal_closure_l(&e2.l.named("l2").unwrap()).unwrap(),
            e2.l.whole()
        );
        assert_eq!(
            e2.ideal_closure_a(&e2.a.named("a1").unwrap()).unwrap(),
            e2.a.span_names(&["a1", "a2"]).unwrap()
        );
        assert_eq!(
            e2.ideal_closure_a(&e2.a.named("a0").unwrap()).unwrap(),
            e2.a.whole()
        );
        let t1 = catalog::instance("T1", None).unwrap();
        assert_eq!(
            t1.ideal_closure_l(&t1.l.named("t").unwrap()).unwrap(),
            t1.l.whole()
        );
        let zero = HomogeneousVector {
            grade: e2.group().identity(),
            coords: vec![gf(3).zero()],
        };
        assert_eq!(e2.ideal_closure_l(&zero), Err(SimplicityError::ZeroSeed));
    }

    #[test]
    fn verdicts() {
        let e1 = catalog::instance("E1", Some(gf(5))).unwrap();
        assert_eq!(e1.gr_simple_l().status, Status::GrSimple);
        let e2 = catalog::instance("E2", None).unwrap();
        assert_eq!(e2.gr_simple_l().status, Status::GrSimple);
        let va = e2.gr_simple_a();
        assert_eq!(
            va.certificate,
            Certificate::ProperIdeal(e2.a.span_names(&["a1", "a2"]).unwrap())
        );
        let e1q = catalog::instance("E1", None).unwrap();
        assert!(matches!(
            e1q.gr_simple_l().certificate,
            Certificate::Sampled { .. }
        ));
        let t1 = catalog::instance("T1", Some(gf(5))).unwrap();
        assert_eq!(
            t1.gr_simple_l().certificate,
            Certificate::FailedCondition("[L, L] = 0")
        );
    }

    #[test]
    fn group_algebra_verdicts() {
        let q = catalog::group_algebra(3, FieldSpec::rational()).unwrap();
        assert_eq!(q.gr_simple_a().status, Status::Undecided);
        let f5 = catalog::group_algebra(3, gf(5)).unwrap();
        assert_eq!(f5.gr_simple_a().status, Status::GrSimple);
        let unital = catalog::one_dimensional_algebra(gf(5), true).unwrap();
        assert_eq!(unital.gr_simple_a().status, Status::GrSimple);
    }

    #[test]
    fn projective_points_count() {
        assert_eq!(projective_points(gf(5), 2).len(), 6);
        assert_eq!(
            projective_points(gf(3), 3).len() as u128,
            projective_count(3, 3)
        );
        assert!(projective_points(gf(3), 0).is_empty());
    }

    #[test]
    fn split_precondition() {
        let e3 = catalog::instance("E3", None).unwrap();
        let first = e3.gr_simple_l();
        let Certificate::ProperIdeal(l1) = first.certificate else {
            panic!("expected an ideal")
        };
        assert!(matches!(
            e3.split_case_b(&l1),
            Err(SimplicityError::CaseA(_))
        ));
        assert!(matches!(
            e3.split_case_b(&e3.l.whole()),
            Err(SimplicityError::NotProperIdeal(_))
        ));
    }

    #[test]
    fn fine_gate() {
        let e2 = catalog::instance("E2", None).unwrap();
        let r = e2.fine_decompose();
        assert!(!r.gate_passed());
        assert!(r.summands.is_empty());
        let e4 = catalog::instance("E4", Some(gf(5))).unwrap();
        let r = e4.fine_decompose();
        assert!(r.gate_passed());
        assert_eq!(r.summands.len(), 1);
        assert_eq!(r.summands[0].tag, SummandTag::GrSimple);
    }
}
