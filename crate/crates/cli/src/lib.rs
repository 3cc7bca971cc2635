//! Batch front end for `xmodkit`: reads JSON documents, runs one task and
//! renders a text or JSON report.
//!
//! Exit codes: 0 success, 1 a mathematical negative the task treats as
//! failure, 2 malformed or invalid input, 3 a size limit was exceeded.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde_json::{json, Value};
use xmodkit::battery;
use xmodkit::io::{
    self, ClassificationReport, CrossedModuleJson, ExtensionJson, GroupJson, InputDoc, ModuleJson, OracleJson, PsiJson,
    ReducedJson,
};
use xmodkit::oracle::{enumerate_extensions_bruteforce, schreier_check};
use xmodkit::{choose_stick, classify, reduce, CrossedModule, Error, FiniteGroup, GroupHom, Limits, Result, StrictGrCat};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Validate,
    Derive,
    Reduce,
    Obstruction,
    Classify,
    Enumerate,
    SchreierCheck,
    Roundtrip,
    Check,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Output {
    Text,
    Json,
}

/// One invocation.
#[derive(Clone, Debug)]
pub struct TaskSpec {
    pub command: Command,
    /// Crossed-module document; required by every command except `check`.
    pub input: Option<PathBuf>,
    /// `ψ` document; defaults to the one embedded in the input, then to the
    /// identity of `Coker d`.
    pub psi: Option<PathBuf>,
    /// Overrides `XMODKIT_BUDGET` and the default budget.
    pub budget: Option<u128>,
    pub seed: u64,
    pub output: Output,
    /// Treat an empty classification or a nonzero obstruction as failure.
    pub expect_nonempty: bool,
}

impl TaskSpec {
    pub fn new(command: Command) -> Self {
        TaskSpec {
            command,
            input: None,
            psi: None,
            budget: None,
            seed: 0,
            output: Output::Text,
            expect_nonempty: false,
        }
    }
}

/// Exit code and the text destined for stdout and stderr.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Report {
    json: String,
    text: String,
    negative: bool,
}

pub fn run(task: &TaskSpec) -> Outcome {
    match execute(task) {
        Ok(r) => Outcome {
            code: if r.negative { EXIT_NEGATIVE } else { EXIT_OK },
            stdout: match task.output {
                Output::Json => r.json,
                Output::Text => r.text,
            },
            stderr: String::new(),
        },
        Err(e) => Outcome {
            code: exit_code(&e),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::SizeBound { .. } => EXIT_BUDGET,
        _ => EXIT_INPUT,
    }
}

fn limits(task: &TaskSpec) -> Result<Limits> {
    let limits = Limits::from_env()?;
    Ok(match task.budget {
        Some(b) => limits.with_budget(b),
        None => limits,
    })
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Input(format!("cannot read {}: {e}", path.display())))
}

fn input_doc(task: &TaskSpec) -> Result<InputDoc> {
    let path = task
        .input
        .as_ref()
        .ok_or_else(|| Error::Input("this command needs --input".into()))?;
    io::from_json(&read(path)?)
}

fn psi_for(task: &TaskSpec, doc: &InputDoc, xm: &CrossedModule, limits: &Limits) -> Result<GroupHom> {
    let dd = xm.derive()?;
    let json = match &task.psi {
        Some(path) => Some(io::from_json::<PsiJson>(&read(path)?)?),
        None => doc.psi.clone(),
    };
    match json {
        Some(j) => j.to_hom(&dd, limits),
        None => Ok(GroupHom::identity(&dd.coker.group)),
    }
}

fn execute(task: &TaskSpec) -> Result<Report> {
    let limits = limits(task)?;
    if task.command == Command::Check {
        return check(task.seed, &limits);
    }
    let doc = input_doc(task)?;
    if task.command == Command::Validate {
        return validate(&doc.crossed_module.to_parts(&limits)?);
    }
    let xm = doc.crossed_module.to_module(&limits)?;
    match task.command {
        Command::Derive => derive(&xm),
        Command::Reduce => reduced(&xm, task.seed),
        Command::Obstruction => obstruction(&xm, &psi_for(task, &doc, &xm, &limits)?, task),
        Command::Classify => classification(&xm, &psi_for(task, &doc, &xm, &limits)?, task, &limits),
        Command::Enumerate => enumerate(&xm, &psi_for(task, &doc, &xm, &limits)?, task, &limits),
        Command::SchreierCheck => schreier(&xm, &psi_for(task, &doc, &xm, &limits)?, task.seed, &limits),
        Command::Roundtrip => roundtrip(&xm),
        Command::Validate | Command::Check => unreachable!("handled above"),
    }
}

fn value_report(value: Value, text: String, negative: bool) -> Result<Report> {
    Ok(Report {
        json: io::to_json(&value)?,
        text,
        negative,
    })
}

fn describe(g: &FiniteGroup) -> String {
    format!(
        "order {}, {}, exponent {}",
        g.order(),
        if g.is_abelian() { "abelian" } else { "non-abelian" },
        g.exponent()
    )
}

fn validate(xm: &CrossedModule) -> Result<Report> {
    let report = xm.validate();
    let violations: Vec<Value> = report
        .violations
        .iter()
        .map(|v| json!({"axiom": format!("{:?}", v.axiom), "x": v.x, "b": v.b, "message": v.message}))
        .collect();
    let mut text = String::new();
    if report.is_valid() {
        writeln!(text, "valid crossed module: |B| = {}, |D| = {}", xm.group_b().order(), xm.group_d().order()).ok();
    } else {
        writeln!(text, "invalid crossed module, {} violation(s):", violations.len()).ok();
        for v in &report.violations {
            writeln!(text, "  {:?}: {}", v.axiom, v.message).ok();
        }
    }
    value_report(json!({"valid": report.is_valid(), "violations": violations}), text, !report.is_valid())
}

fn derive(xm: &CrossedModule) -> Result<Report> {
    let dd = xm.derive()?;
    let value = json!({
        "ker_d": dd.ker_d.members(),
        "im_d": dd.im_d.members(),
        "coker": GroupJson::from_group(&dd.coker.group),
        "coker_section": dd.coker.section,
        "pi1": ModuleJson { A: GroupJson::from_group(&dd.ker_group), action: dd.phi.action_table().to_vec() },
    });
    let mut text = String::new();
    writeln!(text, "Ker d = {:?} ({})", dd.ker_d.members(), describe(&dd.ker_group)).ok();
    writeln!(text, "Im d = {:?}", dd.im_d.members()).ok();
    writeln!(text, "Coker d: {}, coset representatives {:?}", describe(&dd.coker.group), dd.coker.section).ok();
    for (s, row) in dd.phi.action_table().iter().enumerate() {
        writeln!(text, "  coset {s} acts on Ker d by {row:?}").ok();
    }
    value_report(value, text, false)
}

fn reduced(xm: &CrossedModule, seed: u64) -> Result<Report> {
    let dd = xm.derive()?;
    let stick = choose_stick(xm, &dd, seed)?;
    let red = reduce(xm, &dd, &stick)?;
    let trivial = red.pi1.solve_coboundary(&red.k)?.is_some();
    let h3 = red.pi1.h_order(3)?;
    let arrows: Vec<usize> = xm.group_d().elements().map(|x| stick.arrow(x)).collect();
    let value = json!({
        "stick": {"reps": stick.reps(), "arrows": arrows},
        "reduced": ReducedJson::from_reduced(&red),
        "k_is_coboundary": trivial,
        "h3_order": h3,
    });
    let mut text = String::new();
    writeln!(text, "pi0 = Coker d: {}", describe(&red.pi0)).ok();
    writeln!(text, "pi1 = Ker d: {}", describe(red.pi1.coefficients())).ok();
    writeln!(text, "stick representatives {:?}", stick.reps()).ok();
    writeln!(
        text,
        "k is {} in H3 (|H3| = {h3})",
        if trivial { "trivial" } else { "nonzero" }
    )
    .ok();
    value_report(value, text, false)
}

fn obstruction(xm: &CrossedModule, psi: &GroupHom, task: &TaskSpec) -> Result<Report> {
    let dd = xm.derive()?;
    let red = reduce(xm, &dd, &choose_stick(xm, &dd, task.seed)?)?;
    let module = red.pi1.pullback(psi)?;
    let xi = red.k.pullback(psi)?;
    let vanishes = module.solve_coboundary(&xi)?.is_some();
    let h2 = if vanishes { Some(module.h_order(2)?) } else { None };
    let value = json!({
        "psi": PsiJson::from_hom(psi),
        "obstruction": xi.to_json(),
        "vanishes": vanishes,
        "h2_order": h2,
    });
    let text = match h2 {
        Some(h) => format!("obstruction class vanishes in H3; extensions inducing psi are classified by H2 of order {h}\n"),
        None => "obstruction class nonzero in H3; no extension of this type induces psi\n".to_string(),
    };
    value_report(value, text, task.expect_nonempty && !vanishes)
}

fn classification(xm: &CrossedModule, psi: &GroupHom, task: &TaskSpec, limits: &Limits) -> Result<Report> {
    let c = classify(xm, psi, task.seed, limits)?;
    let mut report = ClassificationReport::new(xm, &c);
    let mut disagrees = false;
    match enumerate_extensions_bruteforce(xm, psi, limits) {
        Ok(o) => {
            let agrees = o.class_count() == c.extensions.len();
            disagrees = !agrees;
            report.oracle_status = if agrees { "agrees" } else { "disagrees" }.into();
            report.oracle = Some(OracleJson {
                classes: o.class_count(),
                factor_sets: o.factor_sets.len(),
                nominal_candidates: o.nominal_candidates.to_string(),
                agrees,
            });
        }
        Err(Error::SizeBound { size, limit, .. }) => {
            report.oracle_status = format!("skipped: {size} candidates exceed the budget {limit}");
        }
        Err(e) => return Err(e),
    }
    // the emitted document must parse back and pass validation
    let json = io::to_json(&report)?;
    io::from_json::<ClassificationReport>(&json)?.revalidate(limits)?;

    let mut text = String::new();
    writeln!(
        text,
        "obstruction {}",
        if c.obstruction_vanishes { "vanishes" } else { "class nonzero in H3" }
    )
    .ok();
    writeln!(text, "|H2| = {}", c.h2_order).ok();
    writeln!(text, "{} class(es)", c.extensions.len()).ok();
    for (i, e) in c.extensions.iter().enumerate() {
        writeln!(text, "  class {i}: E of {}", describe(&e.e)).ok();
    }
    writeln!(text, "oracle: {}", report.oracle_status).ok();
    Ok(Report {
        json,
        text,
        negative: disagrees || (task.expect_nonempty && c.extensions.is_empty()),
    })
}

fn enumerate(xm: &CrossedModule, psi: &GroupHom, task: &TaskSpec, limits: &Limits) -> Result<Report> {
    let o = enumerate_extensions_bruteforce(xm, psi, limits)?;
    let reps: Vec<ExtensionJson> = o.representatives.iter().map(ExtensionJson::from_extension).collect();
    let value = json!({
        "crossed_module": CrossedModuleJson::from_module(xm),
        "psi": PsiJson::from_hom(psi),
        "nominal_candidates": o.nominal_candidates.to_string(),
        "tried": o.tried.to_string(),
        "factor_sets": o.factor_sets.len(),
        "classes": o.class_count(),
        "representatives": reps,
    });
    let text = format!(
        "{} candidates ({} nominal), {} factor sets, {} class(es)\n",
        o.tried,
        o.nominal_candidates,
        o.factor_sets.len(),
        o.class_count()
    );
    value_report(value, text, task.expect_nonempty && o.class_count() == 0)
}

fn schreier(xm: &CrossedModule, psi: &GroupHom, seed: u64, limits: &Limits) -> Result<Report> {
    let r = schreier_check(xm, psi, seed, limits)?;
    let value = json!({
        "functor_classes": r.functor_classes,
        "classified": r.classified,
        "oracle": r.oracle,
        "h2_order": r.h2_order,
        "obstruction_vanishes": r.obstruction_vanishes,
        "agrees": r.agrees(),
    });
    let text = format!(
        "functor classes {}, classify {}, oracle {}: {}\n",
        r.functor_classes,
        r.classified,
        r.oracle,
        if r.agrees() { "agree" } else { "DISAGREE" }
    );
    value_report(value, text, !r.agrees())
}

fn roundtrip(xm: &CrossedModule) -> Result<Report> {
    let cat = StrictGrCat::from_crossed_module(xm)?;
    cat.check()?;
    let m = xmodkit::grcat::round_trip_isomorphism(xm)?;
    let iso = m.is_valid() && m.is_isomorphism();
    let value = json!({
        "objects": cat.objects().order(),
        "arrows": cat.arrow_count(),
        "category_valid": true,
        "isomorphism": {"f1": m.f1.images(), "f0": m.f0.images()},
        "is_isomorphism": iso,
    });
    let text = format!(
        "strict Gr-category with {} objects and {} arrows; round trip {}\n",
        cat.objects().order(),
        cat.arrow_count(),
        if iso { "is an isomorphism" } else { "is NOT an isomorphism" }
    );
    value_report(value, text, !iso)
}

fn check(seed: u64, limits: &Limits) -> Result<Report> {
    let results = battery::run_all(seed, limits);
    let all = results.iter().all(|r| r.passed);
    let value: Vec<Value> = results
        .iter()
        .map(|r| {
            json!({
                "criterion": r.id,
                "title": r.title,
                "passed": r.passed,
                "detail": r.detail,
                "seconds": r.elapsed.as_secs_f64(),
            })
        })
        .collect();
    let mut text: String = results.iter().map(|r| format!("{r}\n")).collect();
    writeln!(text, "{}", if all { "all criteria pass" } else { "some criteria FAILED" }).ok();
    value_report(json!({"criteria": value, "passed": all}), text, !all)
}
