//! Command-line front end for graded Lie-Rinehart algebras.
//!
//! Exit codes: 0 success, 1 mathematical failure (an axiom or a certified
//! fact fails), 2 unreadable input, 3 refused by a guard (field or size).

pub mod file;
pub mod report;

use std::collections::BTreeSet;
use std::path::Path;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use grlr_core::algebra::{change_field, restrict, verify};
use grlr_core::catalog::{self, CatalogError};
use grlr_core::connections::{Side, Supports};
use grlr_core::decomposition::{
    DecompositionReport, Fact, Pairing, PairingStatus, TightnessReport,
};
use grlr_core::oracle::{
    default_max_len, enumerate_graded_ideals_a, enumerate_graded_ideals_l, hypothesis_search,
    lattice_gr_simple_a, lattice_gr_simple_l, oracle_partition, template_space, IdealLattice,
    OracleError, SearchOutcome,
};
use grlr_core::simplicity::{
    Certificate, FineReport, Hypotheses5, SimplicityVerdict, Status, SummandTag,
};
use grlr_core::{AlgebraInstance, FieldSpec, GradedBasis, GroupElement};

use crate::file::InstanceFile;
use crate::report::Report;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_GUARD: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "grlr",
    version,
    about = "Verify and decompose graded Lie-Rinehart algebras"
)]
pub struct Cli {
    /// Print the machine-readable JSON report.
    #[arg(long, global = true)]
    pub json: bool,
    /// Reinterpret the instance over another field, e.g. `gf5` or `Q`.
    #[arg(long, global = true)]
    pub field: Option<String>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SideArg {
    #[value(name = "L", alias = "l")]
    L,
    #[value(name = "A", alias = "a")]
    A,
}

impl From<SideArg> for Side {
    fn from(s: SideArg) -> Side {
        match s {
            SideArg::L => Side::L,
            SideArg::A => Side::A,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Sides {
    #[value(name = "L", alias = "l")]
    L,
    #[value(name = "A", alias = "a")]
    A,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum What {
    Ideals,
    Paths,
    Search,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check every axiom and the grade law.
    Verify {
        /// Instance file or catalog name.
        instance: String,
    },
    /// Connection classes of one support.
    Classes {
        instance: String,
        #[arg(long, value_enum, default_value = "L")]
        side: SideArg,
    },
    /// Class ideals, complements, tightness and the ideal pairing.
    Decompose {
        instance: String,
        #[arg(long, value_enum, default_value = "both")]
        side: Sides,
        /// Refine into gr-simple summands when every hypothesis holds.
        #[arg(long)]
        fine: bool,
    },
    /// Connection graph in DOT.
    Dot {
        instance: String,
        #[arg(long, value_enum, default_value = "L")]
        side: SideArg,
    },
    /// Exhaustive cross-checks against the fast paths.
    Oracle {
        /// Instance file or catalog name; not used by `--what search`.
        instance: Option<String>,
        #[arg(long, value_enum, default_value = "ideals")]
        what: What,
        /// Number of recipes tried by `--what search`.
        #[arg(long, default_value_t = 200)]
        budget: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// List the built-in instances, or print one as an instance file.
    Catalog { name: Option<String> },
}

/// What a command prints and how it exits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

enum CmdError {
    Parse(String),
    Guard(String),
}

impl CmdError {
    fn outcome(self) -> Outcome {
        let (code, msg) = match self {
            CmdError::Parse(m) => (EXIT_PARSE, m),
            CmdError::Guard(m) => (EXIT_GUARD, m),
        };
        Outcome {
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
            code,
        }
    }
}

fn parse_field(text: &Option<String>) -> Result<Option<FieldSpec>, CmdError> {
    text.as_deref()
        .map(|t| {
            t.parse::<FieldSpec>()
                .map_err(|e| CmdError::Parse(format!("--field: {e}")))
        })
        .transpose()
}

fn catalog_name(arg: &str) -> Option<&'static str> {
    catalog::NAMES
        .iter()
        .copied()
        .find(|n| n.eq_ignore_ascii_case(arg))
}

fn catalog_error(e: CatalogError) -> CmdError {
    match e {
        CatalogError::Unknown(_) => CmdError::Parse(e.to_string()),
        _ => CmdError::Guard(e.to_string()),
    }
}

/// Loads a file path or a catalog name, honouring `--field`.
pub fn load(arg: &str, field: Option<FieldSpec>) -> Result<AlgebraInstance, String> {
    load_instance(arg, field).map_err(|e| match e {
        CmdError::Parse(m) | CmdError::Guard(m) => m,
    })
}

fn load_instance(arg: &str, field: Option<FieldSpec>) -> Result<AlgebraInstance, CmdError> {
    let path = Path::new(arg);
    if path.is_file() {
        let inst = InstanceFile::read(path)
            .and_then(|f| f.to_instance())
            .map_err(|e| CmdError::Parse(e.to_string()))?;
        return match field {
            Some(target) => change_field(&inst, target).map_err(|e| CmdError::Guard(e.to_string())),
            None => Ok(inst),
        };
    }
    match catalog_name(arg) {
        Some(name) => catalog::instance(name, field).map_err(catalog_error),
        None => Err(CmdError::Parse(format!(
            "{arg:?} is neither a readable file nor a catalog instance"
        ))),
    }
}

fn emit(cli: &Cli, report: Report, code: i32) -> Outcome {
    let stdout = if cli.json {
        report.to_json()
    } else {
        report.to_human()
    };
    Outcome {
        stdout,
        stderr: String::new(),
        code,
    }
}

pub fn run(cli: &Cli) -> Outcome {
    let field = match parse_field(&cli.field) {
        Ok(f) => f,
        Err(e) => return e.outcome(),
    };
    let loaded = |arg: &str| load_instance(arg, field);
    let result = match &cli.command {
        Command::Verify { instance } => loaded(instance).map(|inst| cmd_verify(cli, &inst)),
        Command::Classes { instance, side } => loaded(instance).map(|inst| {
            verified(cli, &inst, "classes", |i| {
                cmd_classes(cli, i, (*side).into())
            })
        }),
        Command::Decompose {
            instance,
            side,
            fine,
        } => loaded(instance).map(|inst| {
            verified(cli, &inst, "decompose", |i| {
                cmd_decompose(cli, i, *side, *fine)
            })
        }),
        Command::Dot { instance, side } => loaded(instance)
            .map(|inst| verified(cli, &inst, "dot", |i| cmd_dot(cli, i, (*side).into()))),
        Command::Oracle {
            instance,
            what,
            budget,
            seed,
        } => match what {
            What::Search => Ok(cmd_search(cli, *budget, *seed)),
            _ => match instance {
                None => Err(CmdError::Parse(
                    "oracle needs an instance unless --what search".into(),
                )),
                Some(arg) => loaded(arg).and_then(|inst| match what {
                    What::Ideals => cmd_ideals(cli, &inst),
                    _ => Ok(verified(cli, &inst, "oracle", |i| cmd_paths(cli, i))),
                }),
            },
        },
        Command::Catalog { name } => cmd_catalog(cli, name.as_deref(), field),
    };
    result.unwrap_or_else(CmdError::outcome)
}

fn verification_facts(inst: &AlgebraInstance) -> (bool, Value) {
    let report = verify(inst);
    let mut checks = Map::new();
    for c in &report.checks {
        let v = match &c.witness {
            None if c.passed => "pass".to_string(),
            None => "fail".to_string(),
            Some(w) => format!("fail at {w}"),
        };
        checks.insert(c.name.to_string(), Value::String(v));
    }
    (
        report.overall(),
        json!({ "checks": checks, "overall": report.overall() }),
    )
}

fn cmd_verify(cli: &Cli, inst: &AlgebraInstance) -> Outcome {
    let (ok, facts) = verification_facts(inst);
    let status = if ok {
        "all checks pass"
    } else {
        "verification failed"
    };
    let report = Report {
        command: "verify".into(),
        instance: inst.name.clone(),
        status: status.into(),
        facts,
    };
    emit(cli, report, if ok { EXIT_OK } else { EXIT_FAILURE })
}

/// Runs `body` only on instances that pass the verifier.
fn verified(
    cli: &Cli,
    inst: &AlgebraInstance,
    command: &str,
    body: impl FnOnce(&AlgebraInstance) -> Outcome,
) -> Outcome {
    let (ok, facts) = verification_facts(inst);
    if ok {
        return body(inst);
    }
    let report = Report {
        command: command.into(),
        instance: inst.name.clone(),
        status: "instance fails verification".into(),
        facts,
    };
    emit(cli, report, EXIT_FAILURE)
}

fn elements<'a>(xs: impl IntoIterator<Item = &'a GroupElement>) -> Value {
    Value::Array(
        xs.into_iter()
            .map(|g| Value::String(g.to_string()))
            .collect(),
    )
}

fn fact(f: &Fact) -> Value {
    json!({ "holds": f.holds, "witness": f.witness })
}

fn cmd_classes(cli: &Cli, inst: &AlgebraInstance, side: Side) -> Outcome {
    let supports = Supports::of(inst);
    let partition = supports.classes(side);
    let classes: Vec<Value> = partition
        .classes
        .iter()
        .map(|class| {
            let rep = class.iter().next().expect("classes are nonempty");
            let mut witnesses = Map::new();
            for g in class {
                if let Some(path) = partition.witnesses.get(&(rep.clone(), g.clone())) {
                    witnesses.insert(g.to_string(), Value::String(path.to_string()));
                }
            }
            json!({ "representative": rep.to_string(), "members": elements(class), "witnesses": witnesses })
        })
        .collect();
    let facts = json!({
        "side": side.to_string(),
        "support": elements(supports.support(side)),
        "multipliers": elements(&supports.multipliers()),
        "states": elements(&supports.states(side)),
        "class_count": partition.classes.len(),
        "classes": classes,
    });
    let status = format!("{} class(es)", partition.classes.len());
    emit(
        cli,
        Report {
            command: "classes".into(),
            instance: inst.name.clone(),
            status,
            facts,
        },
        EXIT_OK,
    )
}

fn decomposition_facts(basis: &GradedBasis, d: &DecompositionReport) -> Value {
    let ideals: Vec<Value> = d
        .ideals
        .iter()
        .map(|i| {
            json!({
                "class": elements(&i.class),
                "identity_part": basis.format_subspace(&i.identity_part),
                "support_part": basis.format_subspace(&i.support_part),
                "total": basis.format_subspace(&i.total),
                "dim": i.total.dim(),
            })
        })
        .collect();
    json!({
        "generated": basis.format_subspace(&d.generated),
        "complement": basis.format_subspace(&d.complement),
        "complement_zero": d.complement_zero,
        "ideal_count": d.ideals.len(),
        "ideals": ideals,
        "spans": d.spans,
        "direct": d.direct,
        "orthogonal": fact(&d.orthogonal),
        "ideals_certified": fact(&d.ideals_certified),
    })
}

fn decomposition_sound(d: &DecompositionReport) -> bool {
    d.spans && d.orthogonal.holds && d.ideals_certified.holds
}

fn tightness_facts(t: &TightnessReport) -> Value {
    let mut m = Map::new();
    for (name, f) in t.facts() {
        m.insert(name.to_string(), fact(f));
    }
    m.insert("tight".into(), Value::Bool(t.tight()));
    Value::Object(m)
}

fn pairing_facts(p: &Pairing) -> Value {
    let status = match p.status {
        PairingStatus::Unique => "unique",
        PairingStatus::NotApplicable => "not applicable",
        PairingStatus::Contradiction => "contradiction",
    };
    let map: Vec<Value> = p
        .entries
        .iter()
        .map(|e| json!({ "L": elements(&e.l_class), "A": e.a_classes.iter().map(elements).collect::<Vec<_>>() }))
        .collect();
    json!({ "status": status, "map": map })
}

fn hypotheses_facts(h: &Hypotheses5) -> Value {
    let mut m = Map::new();
    for (name, f) in h.facts() {
        m.insert(name.to_string(), fact(f));
    }
    m.insert("all".into(), Value::Bool(h.all()));
    Value::Object(m)
}

fn fine_facts(inst: &AlgebraInstance, fine: &FineReport) -> Value {
    let summands: Vec<Value> = fine
        .summands
        .iter()
        .map(|s| {
            let tag = match &s.tag {
                SummandTag::GrSimple => json!("gr_simple"),
                SummandTag::Split { parts } => json!({
                    "split": [inst.l.format_subspace(&parts.0), inst.l.format_subspace(&parts.1)]
                }),
                SummandTag::Undecided(why) => json!({ "undecided": why }),
            };
            json!({
                "L_class": elements(&s.l_class),
                "A_class": s.a_class.as_ref().map(elements),
                "ideal_L": inst.l.format_subspace(&s.ideal_l),
                "ideal_A": s.ideal_a.as_ref().map(|a| inst.a.format_subspace(a)),
                "tag": tag,
            })
        })
        .collect();
    let note = if fine.gate_passed() {
        Value::Null
    } else {
        let reasons: Vec<String> = fine
            .hypotheses
            .facts()
            .iter()
            .filter(|(_, f)| !f.holds)
            .map(|(n, f)| format!("{n}: {}", f.witness.as_deref().unwrap_or("fails")))
            .collect();
        Value::String(format!(
            "hypothesis gate failed; unrefined decomposition kept ({})",
            reasons.join("; ")
        ))
    };
    json!({
        "gate": fine.gate_passed(),
        "hypotheses": hypotheses_facts(&fine.hypotheses),
        "note": note,
        "summands": summands,
    })
}

fn cmd_decompose(cli: &Cli, inst: &AlgebraInstance, sides: Sides, fine: bool) -> Outcome {
    let mut facts = Map::new();
    let mut sound = true;
    let dl = inst.decompose_l();
    let da = inst.decompose_a();
    if sides != Sides::A {
        sound &= decomposition_sound(&dl);
        facts.insert("L".into(), decomposition_facts(&inst.l, &dl));
    }
    if sides != Sides::L {
        sound &= decomposition_sound(&da);
        facts.insert("A".into(), decomposition_facts(&inst.a, &da));
    }
    let tightness = inst.check_tight();
    facts.insert("tightness".into(), tightness_facts(&tightness));
    if sides == Sides::Both {
        let pairing = inst.pair_ideals(&dl, &da);
        sound &= pairing.status != PairingStatus::Contradiction;
        facts.insert("pairing".into(), pairing_facts(&pairing));
    }
    if fine {
        facts.insert("fine".into(), fine_facts(inst, &inst.fine_decompose()));
    }
    let status = if sound {
        "decomposed"
    } else {
        "inconsistent decomposition"
    };
    let report = Report {
        command: "decompose".into(),
        instance: inst.name.clone(),
        status: status.into(),
        facts: Value::Object(facts),
    };
    emit(cli, report, if sound { EXIT_OK } else { EXIT_FAILURE })
}

fn cmd_dot(cli: &Cli, inst: &AlgebraInstance, side: Side) -> Outcome {
    let supports = Supports::of(inst);
    let dot = supports.dot(&supports.classes(side));
    if cli.json {
        let report = Report {
            command: "dot".into(),
            instance: inst.name.clone(),
            status: "ok".into(),
            facts: json!({ "side": side.to_string(), "dot": dot }),
        };
        return emit(cli, report, EXIT_OK);
    }
    Outcome {
        stdout: dot,
        stderr: String::new(),
        code: EXIT_OK,
    }
}

fn verdict_facts(basis: &GradedBasis, v: &SimplicityVerdict) -> Value {
    let certificate = match &v.certificate {
        Certificate::FailedCondition(c) => json!({ "failed_condition": c }),
        Certificate::ProperIdeal(s) => json!({ "proper_ideal": basis.format_subspace(s) }),
        Certificate::Enumerated { closures } => json!({ "enumerated_closures": closures }),
        Certificate::Sampled { closures } => json!({ "sampled_closures": closures }),
        Certificate::CapExceeded { points } => json!({ "cap_exceeded_points": points.to_string() }),
    };
    json!({ "status": v.status.as_str(), "certificate": certificate })
}

fn lattice_facts(basis: &GradedBasis, lattice: &IdealLattice) -> Value {
    json!({
        "size": lattice.len(),
        "ideals": lattice.ideals.iter().map(|s| basis.format_subspace(s)).collect::<Vec<_>>(),
    })
}

/// A finite-field verdict agrees with the lattice when both call the space
/// gr-simple or both do not. Undecided verdicts never agree.
fn agrees(v: &SimplicityVerdict, lattice_simple: bool) -> bool {
    match v.status {
        Status::GrSimple => lattice_simple,
        Status::NotGrSimple => !lattice_simple,
        Status::Undecided => false,
    }
}

fn oracle_error(e: OracleError) -> CmdError {
    match e {
        OracleError::RationalField | OracleError::GuardExceeded { .. } => {
            CmdError::Guard(e.to_string())
        }
        other => CmdError::Parse(other.to_string()),
    }
}

fn cmd_ideals(cli: &Cli, inst: &AlgebraInstance) -> Result<Outcome, CmdError> {
    let (ok, facts) = verification_facts(inst);
    if !ok {
        let report = Report {
            command: "oracle".into(),
            instance: inst.name.clone(),
            status: "instance fails verification".into(),
            facts,
        };
        return Ok(emit(cli, report, EXIT_FAILURE));
    }
    let ll = enumerate_graded_ideals_l(inst).map_err(oracle_error)?;
    let la = enumerate_graded_ideals_a(inst).map_err(oracle_error)?;
    let (vl, va) = (inst.gr_simple_l(), inst.gr_simple_a());
    let agree_l = agrees(&vl, lattice_gr_simple_l(inst, &ll));
    let agree_a = agrees(&va, lattice_gr_simple_a(inst, &la));
    let classes_in_lattice = inst
        .decompose_l()
        .ideals
        .iter()
        .all(|i| ll.contains(&i.total))
        && inst
            .decompose_a()
            .ideals
            .iter()
            .all(|i| la.contains(&i.total));
    let agreement = agree_l && agree_a && classes_in_lattice;
    let facts = json!({
        "L": { "lattice": lattice_facts(&inst.l, &ll), "verdict": verdict_facts(&inst.l, &vl), "agrees": agree_l },
        "A": { "lattice": lattice_facts(&inst.a, &la), "verdict": verdict_facts(&inst.a, &va), "agrees": agree_a },
        "class_ideals_in_lattice": classes_in_lattice,
        "agreement": agreement,
    });
    let status = if agreement {
        "oracle agrees"
    } else {
        "oracle disagrees"
    };
    let report = Report {
        command: "oracle".into(),
        instance: inst.name.clone(),
        status: status.into(),
        facts,
    };
    Ok(emit(
        cli,
        report,
        if agreement { EXIT_OK } else { EXIT_FAILURE },
    ))
}

fn cmd_paths(cli: &Cli, inst: &AlgebraInstance) -> Outcome {
    let supports = Supports::of(inst);
    let max_len = default_max_len(&supports);
    let mut facts = Map::new();
    let mut agreement = true;
    for side in [Side::L, Side::A] {
        let bfs = supports.classes(side).classes;
        let exhaustive = oracle_partition(&supports, side, max_len).expect("support members");
        let agree = bfs == exhaustive;
        agreement &= agree;
        let show = |cs: &[BTreeSet<GroupElement>]| cs.iter().map(elements).collect::<Vec<_>>();
        facts.insert(
            side.to_string(),
            json!({ "bfs": show(&bfs), "exhaustive": show(&exhaustive), "agrees": agree }),
        );
    }
    facts.insert("max_len".into(), json!(max_len));
    facts.insert("agreement".into(), json!(agreement));
    let status = if agreement {
        "oracle agrees"
    } else {
        "oracle disagrees"
    };
    let report = Report {
        command: "oracle".into(),
        instance: inst.name.clone(),
        status: status.into(),
        facts: Value::Object(facts),
    };
    emit(cli, report, if agreement { EXIT_OK } else { EXIT_FAILURE })
}

/// Checks a survivor of the hypothesis search against the oracle: every
/// summand is gr-simple by enumeration and no nonzero graded ideal lies in
/// the identity component.
pub fn confirm_survivor(
    inst: &AlgebraInstance,
) -> Result<(Vec<(String, bool)>, bool), OracleError> {
    let fine = inst.fine_decompose();
    let mut summands = Vec::new();
    for s in &fine.summands {
        let confirmed = match (&s.tag, &s.ideal_a) {
            (SummandTag::GrSimple, Some(a)) => {
                let sub = restrict(inst, &s.ideal_l, a, "summand")?;
                lattice_gr_simple_l(&sub, &enumerate_graded_ideals_l(&sub)?)
            }
            (SummandTag::Split { parts }, _) => {
                let sub_ok = |part: &grlr_core::GradedSubspace| -> Result<bool, OracleError> {
                    let whole_a = inst.a.whole();
                    let sub = restrict(inst, part, &whole_a, "part")?;
                    Ok(lattice_gr_simple_l(&sub, &enumerate_graded_ideals_l(&sub)?))
                };
                sub_ok(&parts.0)? && sub_ok(&parts.1)?
            }
            _ => false,
        };
        let label = match &s.tag {
            SummandTag::GrSimple => "gr_simple".to_string(),
            SummandTag::Split { .. } => "split".to_string(),
            SummandTag::Undecided(why) => format!("undecided: {why}"),
        };
        summands.push((label, confirmed));
    }
    let identity = inst.group().identity();
    let identity_free = enumerate_graded_ideals_l(inst)?
        .ideals
        .iter()
        .all(|s| s.is_zero() || s.grades().any(|g| *g != identity));
    Ok((summands, identity_free))
}

fn cmd_search(cli: &Cli, budget: usize, seed: u64) -> Outcome {
    let space = template_space(budget, seed);
    let result = hypothesis_search(&space, budget, seed);
    let mut survivors = Vec::new();
    let mut confirmed_all = true;
    for (recipe, inst) in &result.survivors {
        let entry = match confirm_survivor(inst) {
            Ok((summands, identity_free)) => {
                confirmed_all &= identity_free && summands.iter().all(|(_, ok)| *ok);
                json!({
                    "recipe": recipe.to_string(),
                    "summands": summands.iter().map(|(t, ok)| json!({ "tag": t, "oracle_confirms": ok })).collect::<Vec<_>>(),
                    "identity_block_free_of_ideals": identity_free,
                })
            }
            Err(e) => json!({ "recipe": recipe.to_string(), "oracle": e.to_string() }),
        };
        survivors.push(entry);
    }
    let mut rejections = Vec::new();
    let mut failures = Vec::new();
    for entry in &result.log {
        match &entry.outcome {
            SearchOutcome::Survivor => {}
            SearchOutcome::Rejected(failing) => {
                let reasons: Map<String, Value> = failing
                    .iter()
                    .map(|(n, w)| (n.to_string(), Value::String(w.clone())))
                    .collect();
                rejections.push(json!({ "index": entry.index, "recipe": entry.recipe.to_string(), "failing": reasons }));
            }
            SearchOutcome::GenerationFailed(e) => failures.push(
                json!({ "index": entry.index, "recipe": entry.recipe.to_string(), "error": e }),
            ),
        }
    }
    let facts = json!({
        "budget": budget,
        "seed": seed,
        "tried": result.log.len(),
        "survivor_count": result.survivors.len(),
        "survivors": survivors,
        "rejection_count": rejections.len(),
        "rejections": rejections,
        "generation_failures": failures,
        "agreement": confirmed_all,
    });
    let status = format!(
        "{} survivor(s) of {}",
        result.survivors.len(),
        result.log.len()
    );
    let report = Report {
        command: "oracle".into(),
        instance: "template space".into(),
        status,
        facts,
    };
    emit(
        cli,
        report,
        if confirmed_all { EXIT_OK } else { EXIT_FAILURE },
    )
}

fn cmd_catalog(
    cli: &Cli,
    name: Option<&str>,
    field: Option<FieldSpec>,
) -> Result<Outcome, CmdError> {
    match name {
        Some(arg) => {
            let name = catalog_name(arg)
                .ok_or_else(|| CmdError::Parse(format!("unknown catalog instance {arg:?}")))?;
            let inst = catalog::instance(name, field).map_err(catalog_error)?;
            Ok(Outcome {
                stdout: InstanceFile::from_instance(&inst).to_json(),
                stderr: String::new(),
                code: EXIT_OK,
            })
        }
        None => {
            let entries: Vec<Value> = catalog::NAMES
                .iter()
                .map(|n| {
                    json!({
                        "name": n,
                        "default_field": catalog::default_field(n).expect("catalog name").to_string(),
                        "oracle_field": catalog::oracle_field(n).expect("catalog name").to_string(),
                    })
                })
                .collect();
            let report = Report {
                command: "catalog".into(),
                instance: "-".into(),
                status: format!("{} instances", entries.len()),
                facts: json!({ "instances": entries }),
            };
            Ok(emit(cli, report, EXIT_OK))
        }
    }
}
