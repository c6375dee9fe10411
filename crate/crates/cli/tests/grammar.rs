use kcat_cli::ast::*;
use kcat_cli::parse;
use kcat_core::FieldSpec;

const Q: FieldSpec = FieldSpec::Rationals;

const QUIVER_HEAD: &str = "category C over Q\n  quiver\n  object x y\n  arrow a: x -> y\n";
const TABLE_HEAD: &str = "category C over Q\n  table\n";

/// (production, accepted, rejected, line and column of the rejection)
fn vectors() -> Vec<(&'static str, String, String, (usize, usize))> {
    vec![
        (
            "category header",
            "category C over Q\n  quiver\n".into(),
            "category C under Q\n  quiver\n".into(),
            (1, 12),
        ),
        (
            "field Q",
            "category C over Q\n  quiver\n".into(),
            "category C over R\n  quiver\n".into(),
            (1, 17),
        ),
        (
            "field GF(p)",
            "category C over GF(7)\n  quiver\n".into(),
            "category C over GF(8)\n  quiver\n".into(),
            (1, 20),
        ),
        (
            "category body",
            "category C over Q\n  table\n".into(),
            "category C over Q\n".into(),
            (2, 1),
        ),
        (
            "quiver object",
            "category C over Q\n  quiver\n  object x y *\n".into(),
            "category C over Q\n  quiver\n  object x x\n".into(),
            (3, 12),
        ),
        (
            "arrow",
            format!("{QUIVER_HEAD}  arrow b: y -> x\n"),
            format!("{QUIVER_HEAD}  arrow b: y x\n"),
            (5, 14),
        ),
        (
            "rel",
            format!("{QUIVER_HEAD}  rel a*1_x - 2/3*a = 0\n"),
            format!("{QUIVER_HEAD}  rel a = a\n"),
            (5, 11),
        ),
        (
            "table object",
            format!("{TABLE_HEAD}  object p q\n"),
            format!("{TABLE_HEAD}  object\n"),
            (3, 9),
        ),
        (
            "hom",
            format!("{TABLE_HEAD}  hom p p: e x\n"),
            format!("{TABLE_HEAD}  hom p p e x\n"),
            (3, 11),
        ),
        (
            "comp",
            format!("{TABLE_HEAD}  comp x*x = 0\n"),
            format!("{TABLE_HEAD}  comp x x = 0\n"),
            (3, 10),
        ),
        (
            "id",
            format!("{TABLE_HEAD}  id p = e - x\n"),
            format!("{TABLE_HEAD}  id p e\n"),
            (3, 8),
        ),
        (
            "module header",
            "module M over C left\n".into(),
            "module M over C both\n".into(),
            (1, 17),
        ),
        (
            "module dim",
            "module M over C right\n  dim x = 2\n".into(),
            "module M over C right\n  dim x = -2\n".into(),
            (2, 11),
        ),
        (
            "module act",
            "module M over C left\n  act a = [[1, 0], [-1/2, 3]]\n".into(),
            "module M over C left\n  act a = [[1, 0] [2]]\n".into(),
            (2, 19),
        ),
        (
            "bimodule header",
            "bimodule B over (U, T)\n".into(),
            "bimodule B over U, T\n".into(),
            (1, 17),
        ),
        (
            "bimodule dim",
            "bimodule B over (U, T)\n  dim u t = 1\n".into(),
            "bimodule B over (U, T)\n  dim u = 1\n".into(),
            (2, 9),
        ),
        (
            "lact",
            "bimodule B over (U, T)\n  lact f t = [[1]]\n".into(),
            "bimodule B over (U, T)\n  lact f = [[1]]\n".into(),
            (2, 10),
        ),
        (
            "ract",
            "bimodule B over (U, T)\n  ract g u = []\n".into(),
            "bimodule B over (U, T)\n  ract g u = [[1]\n".into(),
            (2, 18),
        ),
        (
            "ideal",
            "ideal I in C gens: a, 2*b*a - c\n".into(),
            "ideal I in C gens: a,\n".into(),
            (1, 22),
        ),
        (
            "task",
            "task ideal-check I\n".into(),
            "task homology C\n".into(),
            (1, 6),
        ),
        ("comment", "# nothing here\n\n   # indented\n".into(), "module M over C left # x\n  % bad\n".into(), (2, 3)),
    ]
}

#[test]
fn every_production_has_accepted_and_rejected_vectors() {
    for (name, good, bad, (line, col)) in vectors() {
        if let Err(e) = parse(&good) {
            panic!("{name}: accepted vector rejected: {e}");
        }
        match parse(&bad) {
            Ok(_) => panic!("{name}: rejected vector accepted"),
            Err(e) => assert_eq!((e.line, e.col), (line, col), "{name}: {e}"),
        }
    }
}

#[test]
fn keywords_outside_blocks_are_rejected() {
    let e = parse("arrow a: x -> y\n").unwrap_err();
    assert_eq!((e.line, e.col), (1, 1));
    assert!(e.message.contains("unknown keyword"));
    let e = parse("module M over C left\n  arrow a: x -> y\n").unwrap_err();
    assert!(e.message.contains("not allowed in a module block"));
    let e = parse(&format!("{QUIVER_HEAD}  hom x y: a\n")).unwrap_err();
    assert!(e.message.contains("not allowed in a quiver block"));
}

#[test]
fn paths_compose_right_to_left() {
    let ws = parse(&format!("{QUIVER_HEAD}  rel -b*a + 3*1_x = 0\n")).unwrap();
    let Decl::Category(c) = &ws.decls[0] else { panic!() };
    let CategoryBody::Quiver { rels, .. } = &c.body else { panic!() };
    let terms = &rels[0].1 .0;
    assert_eq!(terms[0].path, vec!["b".to_string(), "a".to_string()]);
    assert_eq!(terms[0].coeff, Q.from_i64(-1));
    assert_eq!(terms[1].path, vec!["1_x".to_string()]);
    assert_eq!(terms[1].coeff, Q.from_i64(3));
}

#[test]
fn headers_are_recorded() {
    let ws = parse(
        "category D over GF(32003)\n  quiver\n  object *\n  arrow x: * -> *\n  rel x*x = 0\n\
         module S over D left\n  dim * = 1\n  act x = [[0]]\n\
         task cohomology D\n",
    )
    .unwrap();
    assert_eq!(ws.decls.len(), 3);
    let Decl::Category(c) = &ws.decls[0] else { panic!() };
    assert_eq!(c.field, FieldSpec::prime(32003).unwrap());
    assert_eq!(c.line.0, 1);
    let Decl::Module(m) = &ws.decls[1] else { panic!() };
    assert_eq!(m.side, SideDecl::Left);
    assert_eq!(m.dims[0].1, "*");
    assert_eq!(ws.tasks().next().unwrap().kind, TaskKind::Cohomology);
}

#[test]
fn non_ascii_names_are_words() {
    let ws = parse("category Λ over Q\n  quiver\n  object α β\n  arrow φ: α -> β\n").unwrap();
    let Decl::Category(c) = &ws.decls[0] else { panic!() };
    assert_eq!(c.name, "Λ");
}

#[test]
fn bad_characters_report_their_column() {
    let e = parse("category C over Q\n  quiver\n  object x $y\n").unwrap_err();
    assert_eq!((e.line, e.col), (3, 12));
}
