use std::collections::BTreeSet;

use proptest::prelude::*;

use grlr_core::algebra::verify;
use grlr_core::connections::{Side, Supports};
use grlr_core::decomposition::PairingStatus;
use grlr_core::oracle::{
    default_max_len, enumerate_graded_ideals_a, enumerate_graded_ideals_l, generate_instance,
    oracle_partition, template_space, IdealLattice,
};
use grlr_core::simplicity::{Certificate, Status};
use grlr_core::{AlgebraInstance, GradedSubspace};

fn generated(seed: u64) -> AlgebraInstance {
    let recipe = template_space(1, seed).remove(0);
    generate_instance(&recipe, seed).unwrap()
}

fn lattices(inst: &AlgebraInstance) -> Option<(IdealLattice, IdealLattice)> {
    Some((
        enumerate_graded_ideals_l(inst).ok()?,
        enumerate_graded_ideals_a(inst).ok()?,
    ))
}

#[test]
fn generator_always_verifies() {
    for (i, recipe) in template_space(200, 11).iter().enumerate() {
        let inst = generate_instance(recipe, i as u64).unwrap();
        assert!(verify(&inst).overall(), "{recipe}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn partitions_match_literal_paths(seed in 0u64..10_000) {
        let inst = generated(seed);
        let s = Supports::of(&inst);
        for side in [Side::L, Side::A] {
            let bfs = s.classes(side);
            prop_assert_eq!(&bfs.classes, &oracle_partition(&s, side, default_max_len(&s)).unwrap());
            let covered: BTreeSet<_> = bfs.classes.iter().flatten().cloned().collect();
            prop_assert_eq!(&covered, s.support(side));
            for g in s.support(side) {
                for h in s.support(side) {
                    let linked = s.connected(side, g, h).unwrap();
                    prop_assert_eq!(linked.is_some(), bfs.class_of(g) == bfs.class_of(h));
                    if let Some(path) = linked {
                        prop_assert!(path.replay(&s, side));
                    }
                }
            }
        }
    }

    #[test]
    fn decompositions_are_certified(seed in 0u64..10_000) {
        let inst = generated(seed);
        let (dl, da) = (inst.decompose_l(), inst.decompose_a());
        for report in [&dl, &da] {
            prop_assert!(report.spans);
            prop_assert!(report.orthogonal.holds, "{:?}", report.orthogonal);
            prop_assert!(report.ideals_certified.holds, "{:?}", report.ideals_certified);
        }
        let t = inst.check_tight();
        if t.center_zero.holds && t.l1_generated.holds {
            prop_assert!(dl.direct);
        }
        if t.ann_a_zero.holds && t.a1_generated.holds {
            prop_assert!(da.direct);
        }
        if t.tight() {
            prop_assert_eq!(inst.pair_ideals(&dl, &da).status, PairingStatus::Unique);
        }
        if let Some((ll, la)) = lattices(&inst) {
            for i in &dl.ideals {
                prop_assert!(ll.contains(&i.total));
            }
            for i in &da.ideals {
                prop_assert!(la.contains(&i.total));
            }
        }
    }

    #[test]
    fn closures_and_verdicts_match_lattices(seed in 0u64..10_000) {
        let inst = generated(seed);
        let Some((ll, la)) = lattices(&inst) else { return Ok(()) };
        for s in ll.ideals.iter() {
            prop_assert!(inst.is_graded_ideal_l(s));
        }
        prop_assert!(ll.contains(&GradedSubspace::zero()) && ll.contains(&inst.l.whole()));
        for i in 0..inst.dim_l() {
            let v = inst.l.basis_vector(i);
            let c = inst.ideal_closure_l(&v).unwrap();
            for s in ll.ideals.iter().filter(|s| s.contains(&v)) {
                prop_assert!(c.is_subspace_of(s));
            }
        }
        for i in 0..inst.dim_a() {
            let v = inst.a.basis_vector(i);
            let c = inst.ideal_closure_a(&v).unwrap();
            for s in la.ideals.iter().filter(|s| s.contains(&v)) {
                prop_assert!(c.is_subspace_of(s));
            }
        }

        let kernel = inst.ker_anchor();
        let vl = inst.gr_simple_l();
        let only_trivial_l = ll.ideals.iter().all(|s| s.is_zero() || *s == inst.l.whole() || *s == kernel);
        match (&vl.status, &vl.certificate) {
            (Status::GrSimple, _) => prop_assert!(only_trivial_l),
            (Status::NotGrSimple, Certificate::ProperIdeal(s)) => {
                prop_assert!(ll.contains(s));
                prop_assert!(!s.is_zero() && *s != inst.l.whole() && *s != kernel);
            }
            (Status::NotGrSimple, Certificate::FailedCondition(_)) => {}
            other => prop_assert!(false, "unexpected verdict {:?}", other),
        }
        if vl.status == Status::NotGrSimple && matches!(vl.certificate, Certificate::ProperIdeal(_)) {
            prop_assert!(!only_trivial_l);
        }
        let va = inst.gr_simple_a();
        let only_trivial_a = la.len() <= 2;
        match (&va.status, &va.certificate) {
            (Status::GrSimple, _) => prop_assert!(only_trivial_a),
            (Status::NotGrSimple, Certificate::ProperIdeal(s)) => {
                prop_assert!(la.contains(s) && !s.is_zero() && *s != inst.a.whole());
            }
            (Status::NotGrSimple, Certificate::FailedCondition(_)) => {}
            other => prop_assert!(false, "unexpected verdict {:?}", other),
        }

        if inst.check_hypotheses5().all() {
            let identity = inst.group().identity();
            for s in ll.ideals.iter().filter(|s| !s.is_zero()) {
                prop_assert!(s.grades().any(|g| *g != identity));
            }
        }
    }

    #[test]
    fn fine_summands_restrict_to_valid_instances(seed in 0u64..10_000) {
        let inst = generated(seed);
        let fine = inst.fine_decompose();
        for summand in &fine.summands {
            let a = summand.ideal_a.as_ref().unwrap();
            let sub = grlr_core::algebra::restrict(&inst, &summand.ideal_l, a, "summand").unwrap();
            prop_assert!(verify(&sub).overall());
        }
    }
}
