use std::path::PathBuf;
use std::process::Command;

use kcat_cli::ast::*;
use kcat_cli::{parse, parse_field, run_source, Report, RunOptions, Status};
use kcat_core::{FieldSpec, Scalar};
use proptest::prelude::*;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn source(name: &str) -> String {
    std::fs::read_to_string(data(name)).unwrap()
}

fn opts(n: usize) -> RunOptions {
    RunOptions {
        max_degree: n,
        ..RunOptions::default()
    }
}

#[test]
fn cohomology_of_dual_numbers() {
    let src = "category D over Q\n  quiver\n  object *\n  arrow x: * -> *\n  rel x*x = 0\ntask cohomology D\n";
    let o = RunOptions {
        field: Some(parse_field("gf:32003").unwrap()),
        verify_oracle: true,
        ..opts(3)
    };
    let out = run_source(src, &o);
    let r = &out.reports[0];
    assert_eq!(r.field.as_deref(), Some("GF(32003)"));
    assert_eq!(r.status, Status::Pass, "{}", r.to_human());
    // K[x]/x² is commutative, so the degree 0 group is the whole algebra
    assert_eq!(r.dims.hc, Some(vec![2, 1, 1, 1]));
    assert_eq!(r.checks.len(), 4);
    assert_eq!(out.exit_code(), 0);
}

#[test]
fn cohomology_in_characteristic_two() {
    let src = "category D over GF(2)\n  quiver\n  object *\n  arrow x: * -> *\n  rel x*x = 0\ntask cohomology D\n";
    let r = &run_source(src, &opts(3)).reports[0];
    assert_eq!(r.dims.hc, Some(vec![2, 2, 2, 2]));
}

#[test]
fn cmp_on_the_triangular_workspace_is_exact() {
    let out = run_source(&source("triangular.kcat"), &opts(3));
    let r = &out.reports[0];
    assert_eq!(r.task, "cmp");
    let exact = r.exact_at.as_ref().unwrap();
    assert_eq!(exact.len(), 12);
    assert!(exact.iter().all(|&b| b));
    assert_eq!(r.status, Status::Pass);
    assert_eq!(out.exit_code(), 0);
}

#[test]
fn happel_on_dual_numbers() {
    let out = run_source(&source("dual.kcat"), &opts(3));
    assert_eq!(out.reports.len(), 2);
    let h = &out.reports[1];
    assert_eq!(h.task, "happel");
    assert_eq!(h.dims.ext_ci, Some(vec![0, 0, 1, 1]));
    assert_eq!(h.connecting_ranks, Some(vec![0, 0, 1, 0]));
    assert_eq!(h.status, Status::Pass);
}

#[test]
fn corrupted_table_fails_validation() {
    let out = run_source(&source("corrupted.kcat"), &opts(2));
    assert_eq!(out.exit_code(), 1);
    let r = &out.reports[0];
    assert_eq!(r.status, Status::ValidationFailed);
    assert!(r.checks.iter().any(|c| c.detail.contains("unit law")));
}

#[test]
fn negative_control_exits_with_hypothesis_failure() {
    let out = run_source(&source("negative.kcat"), &opts(2));
    assert_eq!(out.exit_code(), 2);
    let check = &out.reports[0];
    assert_eq!(check.status, Status::HypothesisFailed);
    assert!(check
        .checks
        .iter()
        .any(|c| c.name.starts_with("witness") && c.detail.contains("degree 1")));
    assert_eq!(out.reports[1].status, Status::HypothesisFailed);
}

#[test]
fn parse_and_load_errors_exit_with_one() {
    let out = run_source("category C over R\n", &opts(2));
    assert_eq!(out.reports[0].status, Status::ParseFailed);
    assert!(out.reports[0].notes[0].starts_with("1:17"));
    assert_eq!(out.exit_code(), 1);
    let out = run_source("category L over Q\n  quiver\n  object *\n  arrow x: * -> *\ntask validate L\n", &opts(2));
    assert_eq!(out.exit_code(), 1);
    assert!(out.reports[0].notes[0].contains("finite"));
}

#[test]
fn task_errors_are_reported() {
    let src = "category D over Q\n  quiver\n  object *\n  arrow x: * -> *\n  rel x*x = 0\n\
               module Z over D left\n  dim * = 0\ntask happel Z\n";
    let out = run_source(src, &opts(2));
    assert_eq!(out.reports[0].status, Status::Error);
    assert_eq!(out.reports[0].notes, vec!["zero module".to_string()]);
    assert_ne!(out.exit_code(), 0);
}

#[test]
fn json_round_trips() {
    for f in ["a2.kcat", "dual.kcat", "triangular.kcat", "negative.kcat", "corrupted.kcat"] {
        for r in run_source(&source(f), &opts(2)).reports {
            let s = r.to_json();
            let back = Report::from_json(&s).unwrap();
            assert_eq!(back, r);
            assert_eq!(back.to_json(), s);
            assert_eq!(back.to_human(), r.to_human());
        }
    }
}

#[test]
fn json_has_the_documented_fields() {
    let r = &run_source(&source("triangular.kcat"), &opts(2)).reports[0];
    let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
    assert_eq!(v["schema"], 1);
    for key in ["task", "hypotheses", "degrees", "exact_at", "notes"] {
        assert!(v.get(key).is_some(), "{key}");
    }
    for key in ["ExtCI", "HC", "HB"] {
        assert!(v["dims"][key].is_array(), "{key}");
    }
}

#[test]
fn same_seed_same_output() {
    let src = source("negative.kcat");
    let o = RunOptions { seed: 7, ..opts(2) };
    let a: Vec<String> = run_source(&src, &o).reports.iter().map(Report::to_json).collect();
    let b: Vec<String> = run_source(&src, &o).reports.iter().map(Report::to_json).collect();
    assert_eq!(a, b);
}

#[test]
fn field_flag_syntax() {
    assert_eq!(parse_field("Q"), Ok(FieldSpec::Rationals));
    assert_eq!(parse_field("gf:5"), Ok(FieldSpec::prime(5).unwrap()));
    assert_eq!(parse_field("GF(7)"), Ok(FieldSpec::prime(7).unwrap()));
    assert!(parse_field("gf:6").is_err());
    assert!(parse_field("R").is_err());
}

#[test]
fn binary_end_to_end() {
    let bin = env!("CARGO_BIN_EXE_kcat");
    let out = Command::new(bin)
        .arg(data("dual.kcat"))
        .args(["--max-degree", "2", "--json", "--seed", "3"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let docs: Vec<Report> = text.lines().map(|l| Report::from_json(l).unwrap()).collect();
    assert_eq!(docs.len(), 2);
    assert_eq!(docs[0].seed, 3);
    assert_eq!(docs[0].dims.hc, Some(vec![2, 1, 1]));

    let out = Command::new(bin).arg(data("corrupted.kcat")).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8(out.stdout).unwrap().contains("unit law"));
    let out = Command::new(bin).arg(data("negative.kcat")).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = Command::new(bin).arg(data("missing.kcat")).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn data_files_print_and_reparse() {
    for f in ["a2.kcat", "dual.kcat", "triangular.kcat", "negative.kcat", "corrupted.kcat"] {
        let ws = parse(&source(f)).unwrap();
        assert_eq!(parse(&ws.to_string()).unwrap(), ws, "{f}");
    }
}

fn name() -> impl Strategy<Value = String> {
    "[a-zA-Z][a-zA-Z0-9_']{0,4}".prop_filter("keywords", |s| !s.starts_with("1_"))
}

fn object() -> impl Strategy<Value = String> {
    prop_oneof![name(), "[0-9]{1,2}".prop_map(String::from), Just("*".to_string())]
}

fn scalar() -> impl Strategy<Value = Scalar> {
    (-20i64..20, 1i64..6).prop_map(|(n, d)| Scalar::new(n.into(), d.into()))
}

fn lin_expr() -> impl Strategy<Value = LinExpr> {
    let factor = prop_oneof![name(), object().prop_map(|o| format!("1_{o}"))];
    let term = (scalar(), prop::collection::vec(factor, 1..3)).prop_map(|(coeff, path)| Term { coeff, path });
    prop::collection::vec(term, 0..3).prop_map(LinExpr)
}

fn matrix() -> impl Strategy<Value = MatrixLit> {
    (0usize..3, 0usize..3)
        .prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(scalar(), c), r))
        .prop_map(|m| if m.iter().all(|r| r.is_empty()) { Vec::new() } else { m })
}

fn field() -> impl Strategy<Value = FieldSpec> {
    prop_oneof![
        Just(FieldSpec::Rationals),
        prop::sample::select(vec![2u32, 3, 5, 32003]).prop_map(|p| FieldSpec::prime(p).unwrap())
    ]
}

fn unique(v: Vec<String>) -> Vec<String> {
    let mut out: Vec<String> = Vec::new();
    for s in v {
        if !out.contains(&s) {
            out.push(s);
        }
    }
    out
}

fn decl() -> impl Strategy<Value = Decl> {
    let l = || Just(Line(0));
    let quiver = (
        name(),
        field(),
        prop::collection::vec(object(), 0..3),
        prop::collection::vec((l(), (name(), object(), object())), 0..3),
        prop::collection::vec((l(), lin_expr()), 0..2),
    )
        .prop_map(|(name, field, objects, arrows, rels)| {
            Decl::Category(CategoryDecl {
                line: Line(0),
                name,
                field,
                body: CategoryBody::Quiver {
                    objects: unique(objects),
                    arrows: arrows
                        .into_iter()
                        .map(|(l, (name, src, dst))| (l, Arrow { name, src, dst }))
                        .collect(),
                    rels,
                },
            })
        });
    let table = (
        name(),
        field(),
        prop::collection::vec((l(), (object(), object(), prop::collection::vec(name(), 0..3))), 0..3),
        prop::collection::vec((l(), (name(), name(), lin_expr())), 0..3),
        prop::collection::vec((l(), object(), lin_expr()), 0..2),
    )
        .prop_map(|(name, field, homs, comps, ids)| {
            let homs: Vec<(Line, HomDecl)> = homs
                .into_iter()
                .map(|(l, (src, dst, basis))| (l, HomDecl { src, dst, basis }))
                .collect();
            let objects = unique(homs.iter().flat_map(|(_, h)| [h.src.clone(), h.dst.clone()]).collect());
            Decl::Category(CategoryDecl {
                line: Line(0),
                name,
                field,
                body: CategoryBody::Table {
                    objects,
                    homs,
                    comps: comps.into_iter().map(|(l, (g, f, value))| (l, CompDecl { g, f, value })).collect(),
                    ids,
                },
            })
        });
    let module = (
        name(),
        name(),
        any::<bool>(),
        prop::collection::vec((l(), object(), 0usize..4), 0..3),
        prop::collection::vec((l(), name(), matrix()), 0..3),
    )
        .prop_map(|(name, over, left, dims, acts)| {
            Decl::Module(ModuleDecl {
                line: Line(0),
                name,
                over,
                side: if left { SideDecl::Left } else { SideDecl::Right },
                dims,
                acts,
            })
        });
    let bimodule = (
        name(),
        name(),
        name(),
        prop::collection::vec((l(), object(), object(), 0usize..4), 0..3),
        prop::collection::vec((l(), name(), object(), matrix()), 0..2),
        prop::collection::vec((l(), name(), object(), matrix()), 0..2),
    )
        .prop_map(|(name, u, t, dims, lacts, racts)| {
            Decl::Bimodule(BimoduleDecl {
                line: Line(0),
                name,
                u,
                t,
                dims,
                lacts,
                racts,
            })
        });
    let ideal = (name(), name(), prop::collection::vec(lin_expr(), 0..3)).prop_map(|(name, category, gens)| {
        Decl::Ideal(IdealDecl {
            line: Line(0),
            name,
            category,
            gens,
        })
    });
    let task = (prop::sample::select(TaskKind::ALL.to_vec()), name()).prop_map(|(kind, target)| {
        Decl::Task(TaskDecl {
            line: Line(0),
            kind,
            target,
        })
    });
    prop_oneof![quiver, table, module, bimodule, ideal, task]
}

proptest! {
    #[test]
    fn printed_trees_reparse_to_themselves(decls in prop::collection::vec(decl(), 0..6)) {
        let ws = WorkspaceFile { decls };
        let printed = ws.to_string();
        let back = parse(&printed).map_err(|e| TestCaseError::fail(format!("{e}\n{printed}")))?;
        prop_assert_eq!(&back, &ws);
        prop_assert_eq!(back.to_string(), printed);
    }
}
