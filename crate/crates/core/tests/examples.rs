use std::collections::BTreeSet;

use grlr_core::algebra::{verify, SumEmbedding};
use grlr_core::catalog;
use grlr_core::connections::{Side, Supports};
use grlr_core::decomposition::PairingStatus;
use grlr_core::oracle::{
    connection_exists, default_max_len, enumerate_connections, enumerate_graded_ideals_a,
    enumerate_graded_ideals_l, generate_instance, hypothesis_search, OracleError, SearchOutcome,
    TemplateOp, TemplateRecipe,
};
use grlr_core::simplicity::{Certificate, Status};
use grlr_core::{AlgebraInstance, FieldSpec, GroupElement};

fn gf(p: u64) -> FieldSpec {
    FieldSpec::prime(p).unwrap()
}

fn el(inst: &AlgebraInstance, coords: &[i64]) -> GroupElement {
    inst.group().element(coords.to_vec()).unwrap()
}

fn class(inst: &AlgebraInstance, xs: &[&[i64]]) -> BTreeSet<GroupElement> {
    xs.iter().map(|c| el(inst, c)).collect()
}

#[test]
fn e3_class_ideals_are_the_summands() {
    let e3 = catalog::instance("E3", None).unwrap();
    let first = e3
        .build_class_ideal_l(&class(&e3, &[&[1, 0], &[2, 0]]))
        .unwrap();
    assert_eq!(
        first.total,
        e3.l.span_names(&["l0_1", "l1_1", "l2_1"]).unwrap()
    );
    let second = e3
        .build_class_ideal_a(&class(&e3, &[&[0, 1], &[0, 2]]))
        .unwrap();
    assert_eq!(
        second.total,
        e3.a.span_names(&["a0_2", "a1_2", "a2_2"]).unwrap()
    );
}

#[test]
fn e3_decomposes_into_two_orthogonal_ideals() {
    let e3 = catalog::instance("E3", None).unwrap();
    for report in [e3.decompose_l(), e3.decompose_a()] {
        assert_eq!(report.ideals.len(), 2);
        assert!(report.complement_zero);
        assert!(report.direct && report.spans);
        assert!(report.orthogonal.holds);
        assert!(report.ideals_certified.holds);
    }
}

#[test]
fn tightness_of_catalog() {
    let e2 = catalog::instance("E2", None).unwrap();
    assert!(e2.check_tight().tight());
    let e3 = catalog::instance("E3", None).unwrap();
    assert!(e3.check_tight().tight());
    let e1 = catalog::instance("E1", None).unwrap();
    assert_eq!(e1.check_tight().failing(), vec!["a1_generated"]);
}

#[test]
fn pairing_on_e2_and_e3() {
    let e2 = catalog::instance("E2", None).unwrap();
    let p = e2.pair_ideals(&e2.decompose_l(), &e2.decompose_a());
    assert_eq!(p.status, PairingStatus::Unique);
    let e3 = catalog::instance("E3", None).unwrap();
    let (dl, da) = (e3.decompose_l(), e3.decompose_a());
    let p = e3.pair_ideals(&dl, &da);
    assert_eq!(p.status, PairingStatus::Unique);
    let first = class(&e3, &[&[1, 0], &[2, 0]]);
    let second = class(&e3, &[&[0, 1], &[0, 2]]);
    assert_eq!(p.partner(&first), Some(&first));
    assert_eq!(p.partner(&second), Some(&second));
    let cross = e3.action.image(&da.ideals[0].total, &dl.ideals[1].total);
    assert!(cross.is_zero());
}

#[test]
fn e3_hypotheses_fail_in_both_coordinates() {
    let e3 = catalog::instance("E3", None).unwrap();
    let h = e3.check_hypotheses5();
    assert!(!h.g_multiplicative.holds);
    let pairs: Vec<(GroupElement, GroupElement)> = h
        .multiplicative_failures
        .iter()
        .map(|f| (f.left.clone(), f.right.clone()))
        .collect();
    assert!(pairs.contains(&(el(&e3, &[1, 0]), el(&e3, &[1, 0]))));
    assert!(pairs.contains(&(el(&e3, &[0, 1]), el(&e3, &[0, 1]))));
    let fine = e3.fine_decompose();
    assert!(!fine.gate_passed());
    assert_eq!(fine.decomposition_l.ideals.len(), 2);
}

#[test]
fn e3_not_gr_simple_certificates() {
    let e3 = catalog::instance("E3", None).unwrap();
    let v = e3.gr_simple_l();
    assert_eq!(v.status, Status::NotGrSimple);
    assert_eq!(
        v.certificate,
        Certificate::ProperIdeal(e3.l.span_names(&["l0_1", "l1_1", "l2_1"]).unwrap())
    );
}

#[test]
fn oracle_lattices() {
    let e1 = catalog::instance("E1", Some(gf(5))).unwrap();
    assert_eq!(
        enumerate_graded_ideals_l(&e1).unwrap().ideals,
        vec![Default::default(), e1.l.whole()]
    );
    let e2 = catalog::instance("E2", None).unwrap();
    assert_eq!(enumerate_graded_ideals_l(&e2).unwrap().len(), 2);
    let la = enumerate_graded_ideals_a(&e2).unwrap();
    assert_eq!(la.len(), 4);
    assert!(la.contains(&e2.a.span_names(&["a2"]).unwrap()));
    assert!(la.contains(&e2.a.span_names(&["a1", "a2"]).unwrap()));
    let e3 = catalog::instance("E3", None).unwrap();
    let l3 = enumerate_graded_ideals_l(&e3).unwrap();
    assert_eq!(l3.len(), 4);
    assert!(l3.contains(&e3.l.span_names(&["l0_2", "l1_2", "l2_2"]).unwrap()));
    let zero_product = catalog::one_dimensional_algebra(gf(5), false).unwrap();
    assert_eq!(enumerate_graded_ideals_a(&zero_product).unwrap().len(), 2);
}

#[test]
fn oracle_guards() {
    let e1 = catalog::instance("E1", Some(FieldSpec::rational())).unwrap();
    assert_eq!(
        enumerate_graded_ideals_l(&e1),
        Err(OracleError::RationalField)
    );
    let big = catalog::one_dimensional_algebra(gf(7), true).unwrap();
    let mut inst = big;
    for _ in 0..3 {
        inst = grlr_core::algebra::direct_sum(&inst, &inst.clone(), SumEmbedding::Shared, "big")
            .unwrap();
    }
    assert!(matches!(
        enumerate_graded_ideals_a(&inst),
        Err(OracleError::GuardExceeded { .. })
    ));
}

#[test]
fn group_algebra_lattice_agrees_with_verdict() {
    let f = catalog::group_algebra(3, gf(7)).unwrap();
    let lattice = enumerate_graded_ideals_a(&f).unwrap();
    let simple = lattice.len() == 2;
    assert_eq!(f.gr_simple_a().status == Status::GrSimple, simple);
}

#[test]
fn literal_paths() {
    let e1 = catalog::instance("E1", None).unwrap();
    let s = Supports::of(&e1);
    let paths = enumerate_connections(&s, Side::L, &el(&e1, &[1]), &el(&e1, &[-1]), 1).unwrap();
    assert_eq!(paths.len(), 1);
    assert!(paths[0].multipliers.is_empty());

    let e3 = catalog::instance("E3", None).unwrap();
    let s3 = Supports::of(&e3);
    let none =
        enumerate_connections(&s3, Side::L, &el(&e3, &[1, 0]), &el(&e3, &[0, 1]), 8).unwrap();
    assert!(none.is_empty());
    assert!(!connection_exists(&s3, Side::L, &el(&e3, &[1, 0]), &el(&e3, &[0, 1]), 8).unwrap());

    let e2 = catalog::instance("E2", None).unwrap();
    let s2 = Supports::of(&e2);
    for g in &s2.sigma {
        let own = enumerate_connections(&s2, Side::L, g, g, default_max_len(&s2)).unwrap();
        assert!(own.iter().any(|p| p.multipliers.is_empty()));
        assert!(own.iter().all(|p| p.replay(&s2, Side::L)));
    }
    assert!(enumerate_connections(&s2, Side::L, &el(&e2, &[0]), &el(&e2, &[1]), 3).is_err());
}

#[test]
fn generator_examples() {
    let e3 = generate_instance(
        &TemplateRecipe {
            field: gf(3),
            atoms: vec!["E2".into(), "E2".into()],
            operations: vec![TemplateOp::DirectSum {
                atom: 1,
                embedding: SumEmbedding::Product,
            }],
        },
        0,
    )
    .unwrap();
    let reference = catalog::instance("E3", None).unwrap();
    assert_eq!(e3.bracket.table(), reference.bracket.table());
    assert_eq!(e3.anchor.table(), reference.anchor.table());

    let mut recipe = TemplateRecipe::atom("E1", FieldSpec::rational());
    recipe.operations.push(TemplateOp::BaseChange);
    let changed = generate_instance(&recipe, 7).unwrap();
    assert!(verify(&changed).overall());
    assert_eq!(generate_instance(&recipe, 7).unwrap(), changed);

    let mut to7 = TemplateRecipe::atom("E2", gf(3));
    to7.operations.push(TemplateOp::FieldChange(gf(7)));
    assert!(matches!(
        generate_instance(&to7, 0),
        Err(OracleError::Algebra(_))
    ));
}

#[test]
fn search_over_catalog_atoms() {
    let space: Vec<TemplateRecipe> = ["E1", "E2"]
        .iter()
        .map(|n| TemplateRecipe::atom(*n, catalog::oracle_field(n).unwrap()))
        .collect();
    let result = hypothesis_search(&space, 10, 0);
    assert!(result.survivors.is_empty());
    let failing: Vec<Vec<&str>> = result
        .log
        .iter()
        .map(|e| match &e.outcome {
            SearchOutcome::Rejected(f) => f.iter().map(|(n, _)| *n).collect(),
            other => panic!("unexpected outcome {other:?}"),
        })
        .collect();
    assert_eq!(failing, vec![vec!["tight"], vec!["g_multiplicative"]]);
    assert!(hypothesis_search(&[], 5, 0).log.is_empty());
}
