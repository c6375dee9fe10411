//! Executes the tasks of a workspace in declaration order.

use std::sync::Arc;

use kcat_core::hochschild::{bar_cohomology, center, hochschild_cochain_complex};
use kcat_core::kcat::{enveloping, quotient};
use kcat_core::modcat::{ext, random_module, regular_bimodule_over};
use kcat_core::theorems::{
    audit_hypotheses, cmp_pipeline, default_samples, happel_pipeline, strongly_idempotent_check, theorem_les_pipeline,
    TheoremReport,
};
use kcat_core::{Error, FieldSpec, Side};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::ast::{TaskDecl, TaskKind};
use crate::load::{load, LoadError, LoadOptions, Workspace};
use crate::parse::parse;
use crate::report::{Entry, Report, Status};

/// Random samples added to the default ones in `ideal-check`.
const RANDOM_SAMPLES: usize = 2;

#[derive(Clone, Debug)]
pub struct RunOptions {
    pub max_degree: usize,
    pub field: Option<FieldSpec>,
    pub seed: u64,
    pub verify_oracle: bool,
    pub path_bound: usize,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            max_degree: 4,
            field: None,
            seed: 0,
            verify_oracle: false,
            path_bound: LoadOptions::default().path_bound,
        }
    }
}

/// Accepts `Q`, `gf:p` and `GF(p)`.
pub fn parse_field(s: &str) -> Result<FieldSpec, String> {
    let t = s.trim();
    if t.eq_ignore_ascii_case("q") {
        return Ok(FieldSpec::Rationals);
    }
    let digits = t
        .strip_prefix("gf:")
        .or_else(|| t.strip_prefix("GF:"))
        .or_else(|| t.strip_prefix("GF(").and_then(|r| r.strip_suffix(')')))
        .ok_or_else(|| format!("unknown field `{s}`, expected Q or gf:<prime>"))?;
    let p: u32 = digits.parse().map_err(|_| format!("bad characteristic `{digits}`"))?;
    FieldSpec::prime(p).map_err(|e| e.to_string())
}

#[derive(Clone, Debug)]
pub struct Outcome {
    pub reports: Vec<Report>,
}

impl Outcome {
    /// The most severe status decides: rejected input, then hypotheses, then verification.
    pub fn exit_code(&self) -> i32 {
        let codes: Vec<i32> = self.reports.iter().map(|r| r.status.exit_code()).collect();
        [1, 2, 3].into_iter().find(|c| codes.contains(c)).unwrap_or(0)
    }
}

/// Parses, loads and runs a workspace source.
pub fn run_source(source: &str, opts: &RunOptions) -> Outcome {
    let file = match parse(source) {
        Ok(f) => f,
        Err(e) => {
            let mut r = Report::new("parse", "", opts.max_degree, opts.seed);
            r.status = Status::ParseFailed;
            r.notes.push(e.to_string());
            return Outcome { reports: vec![r] };
        }
    };
    let lopts = LoadOptions {
        field: opts.field,
        path_bound: opts.path_bound,
    };
    let ws = match load(&file, &lopts) {
        Ok(ws) => ws,
        Err(LoadError::Validation(bad)) => {
            let reports = bad
                .into_iter()
                .map(|b| {
                    let mut r = Report::new("validate", &b.name, opts.max_degree, opts.seed);
                    r.status = Status::ValidationFailed;
                    r.checks = b
                        .violations
                        .into_iter()
                        .map(|v| Entry::new("axiom", false, v))
                        .collect();
                    r.notes.push(format!("declared at line {}", b.line));
                    r
                })
                .collect();
            return Outcome { reports };
        }
        Err(e) => {
            let mut r = Report::new("load", "", opts.max_degree, opts.seed);
            r.status = Status::ParseFailed;
            r.notes.push(e.to_string());
            return Outcome { reports: vec![r] };
        }
    };
    let reports = ws
        .tasks
        .iter()
        .enumerate()
        .map(|(k, t)| run_task(&ws, t, k, opts))
        .collect();
    Outcome { reports }
}

fn category_of<'a>(ws: &'a Workspace, t: &'a TaskDecl) -> &'a str {
    match t.kind {
        TaskKind::Cohomology | TaskKind::Validate => &t.target,
        TaskKind::IdealCheck | TaskKind::Les => &ws.ideals[&t.target].category,
        TaskKind::Cmp => &ws.bimodules[&t.target].u,
        TaskKind::Happel => &ws.modules[&t.target].over,
    }
}

pub fn run_task(ws: &Workspace, t: &TaskDecl, index: usize, opts: &RunOptions) -> Report {
    let mut r = Report::new(t.kind.keyword(), &t.target, opts.max_degree, opts.seed);
    let cat = &ws.categories[category_of(ws, t)].category;
    r.field = Some(cat.field().to_string());
    let result = match t.kind {
        TaskKind::Validate => task_validate(ws, t, &mut r),
        TaskKind::Cohomology => task_cohomology(ws, t, opts, &mut r),
        TaskKind::IdealCheck => task_ideal_check(ws, t, index, opts, &mut r),
        TaskKind::Les => {
            let e = &ws.ideals[&t.target];
            let c = &ws.categories[&e.category].category;
            theorem_les_pipeline(c, &e.ideal, opts.max_degree).map(|rep| fill_theorem(&mut r, &rep))
        }
        TaskKind::Cmp => {
            let b = &ws.bimodules[&t.target];
            let (u, tt) = (&ws.categories[&b.u].category, &ws.categories[&b.t].category);
            cmp_pipeline(tt, u, &b.bimodule, opts.max_degree).map(|rep| fill_theorem(&mut r, &rep))
        }
        TaskKind::Happel => {
            let m = &ws.modules[&t.target];
            let u = &ws.categories[&m.over].category;
            happel_pipeline(u, &m.module, opts.max_degree).map(|rep| {
                fill_theorem(&mut r, &rep.theorem);
                r.checks.extend(rep.checks.iter().map(Entry::from));
                r.notes.push(format!("dim End(M) - 1 = {}", rep.h));
                r.notes.push(format!("Ext(M,M) = {:?}", rep.e));
            })
        }
    };
    match result {
        Ok(()) => r.settle(),
        Err(Error::HypothesisFailed(detail)) => {
            if let Some(e) = ws.ideals.get(&t.target) {
                if let Ok(audits) = audit_hypotheses(&e.ideal) {
                    r.hypotheses = audits.iter().map(Entry::from).collect();
                }
            }
            if r.hypotheses.iter().all(|h| h.passed) {
                r.hypotheses.push(Entry::new("hypotheses", false, detail));
            }
            r.status = Status::HypothesisFailed;
        }
        Err(e) => {
            r.status = Status::Error;
            r.notes.push(e.to_string());
        }
    }
    r
}

fn fill_theorem(r: &mut Report, rep: &TheoremReport) {
    r.hypotheses = rep.hypotheses.iter().map(Entry::from).collect();
    r.checks = rep.checks.iter().map(Entry::from).collect();
    r.degrees = rep.les.degrees.clone();
    r.dims.ext_ci = Some(rep.les.ext_ci.clone());
    r.dims.hc = Some(rep.les.hc.clone());
    r.dims.hb = Some(rep.les.hb.clone());
    r.exact_at = Some(rep.les.exact_at.clone());
    r.connecting_ranks = Some(rep.les.connecting_ranks.clone());
    for n in rep.les.notes.iter().chain(&rep.notes) {
        if !r.notes.contains(n) {
            r.notes.push(n.clone());
        }
    }
}

fn task_validate(ws: &Workspace, t: &TaskDecl, r: &mut Report) -> Result<(), Error> {
    let c = &ws.categories[&t.target].category;
    let v = c.validate();
    r.checks.push(Entry::new("axioms", v.is_valid(), v.to_string()));
    r.notes.push(format!(
        "{} objects, total Hom dimension {}",
        c.num_objects(),
        c.total_hom_dim()
    ));
    Ok(())
}

fn task_cohomology(ws: &Workspace, t: &TaskDecl, opts: &RunOptions, r: &mut Report) -> Result<(), Error> {
    let c = &ws.categories[&t.target].category;
    let n = opts.max_degree;
    let env = Arc::new(enveloping(c));
    let reg = regular_bimodule_over(c, env);
    let cx = hochschild_cochain_complex(c, &reg, n)?;
    let fails = cx.square_zero_failures();
    r.checks.push(Entry::new(
        "d∘d = 0",
        fails.is_empty(),
        if fails.is_empty() {
            format!("degrees 0..{n}")
        } else {
            format!("fails in degrees {fails:?}")
        },
    ));
    let hc = cx.cohomology();
    let z = center(c).cols();
    r.checks.push(Entry::new(
        "H0 = center",
        z == hc[0],
        format!("dim H0 {}, dim center {z}", hc[0]),
    ));
    if opts.verify_oracle {
        let m = n.min(3);
        let via_ext = ext(&reg, &reg, m)?;
        r.checks.push(Entry::new(
            "enveloping Ext oracle",
            via_ext[..] == hc[..=m],
            format!("{via_ext:?}"),
        ));
        let via_bar = bar_cohomology(c, m);
        r.checks.push(Entry::new(
            "bar resolution oracle",
            via_bar[..] == hc[..=m],
            format!("{via_bar:?}"),
        ));
    }
    r.degrees = (0..=n).collect();
    r.dims.hc = Some(hc);
    r.notes.push(format!("cochain dimensions {:?}", &cx.dims[..=n]));
    Ok(())
}

fn task_ideal_check(ws: &Workspace, t: &TaskDecl, index: usize, opts: &RunOptions, r: &mut Report) -> Result<(), Error> {
    let e = &ws.ideals[&t.target];
    let c = &ws.categories[&e.category].category;
    r.hypotheses = audit_hypotheses(&e.ideal)?.iter().map(Entry::from).collect();
    let (q, _) = quotient(c, &e.ideal)?;
    let q = Arc::new(q);
    let mut samples = default_samples(&q);
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed.wrapping_add(index as u64));
    for k in 0..RANDOM_SAMPLES {
        samples.push((format!("random {k}"), random_module(q.clone(), Side::Left, &mut rng)));
    }
    let check = strongly_idempotent_check(c, &e.ideal, opts.max_degree, Some(&samples))?;
    r.degrees = (1..=opts.max_degree).collect();
    r.checks.push(Entry::new(
        "strongly idempotent over C",
        check.direct_passed,
        String::new(),
    ));
    r.checks.push(Entry::new(
        "strongly idempotent over C^op",
        check.mirrored_passed,
        String::new(),
    ));
    for w in &check.witnesses {
        r.checks.push(Entry::new(
            format!("witness ({})", w.condition),
            false,
            format!(
                "over {} at object {} with {}: degree {} has dimension {}",
                w.category, w.object, w.sample, w.degree, w.dim
            ),
        ));
    }
    r.notes.push(format!("{} sample modules checked", check.samples_checked));
    r.notes.extend(check.notes.iter().cloned());
    // a failing ideal does not satisfy the hypotheses of the sequence
    if !check.passed {
        r.status = Status::HypothesisFailed;
    }
    Ok(())
}
