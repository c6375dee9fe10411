//! One line per acceptance criterion; exits nonzero if any fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use kcat_cli::{run_source, RunOptions};
use kcat_core::hochschild::{center, hochschild_cochain_complex, hochschild_cohomology};
use kcat_core::ideals::{ideal_from_generators, is_idempotent, representable_ideal_module, triangular_ideal};
use kcat_core::kcat::{
    a2, dual_numbers, one_point_extension, opposite, point, random_category, tensor_category, triangular_matrix,
    Bimodule,
};
use kcat_core::modcat::{
    boxtimes, boxtimes_right, column_module, dualize, ext, hom_into_vector_space, is_projective, module_hom,
    outer_tensor_over, projective_resolution, random_module, regular_bimodule, representable, row_module, simple,
    tensor_over_cat, tor, tor_from_resolution,
};
use kcat_core::theorems::{audit_hypotheses, canonical_ses, cmp_pipeline, happel_pipeline, strongly_idempotent_check};
use kcat_core::{CatModule, FiniteKCategory, Result, Side};
use kcat_verify::{augmentation_bimodule, k_bimodule, module_matrix, standard_categories, GF, Q};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Result<Outcome> {
    Ok(Outcome {
        passed,
        detail: detail.into(),
    })
}

type Named = (String, Arc<FiniteKCategory>);
type Criterion = (&'static str, fn() -> Result<Outcome>);

const SEEDS: [u64; 3] = [0, 1, 2];

fn named(name: impl Into<String>, c: FiniteKCategory) -> Named {
    (name.into(), Arc::new(c))
}

fn random_categories(max_total_dim: usize, seeds: impl IntoIterator<Item = u64>) -> Vec<Named> {
    seeds
        .into_iter()
        .map(|s| {
            let mut rng = ChaCha8Rng::seed_from_u64(s);
            named(format!("random seed {s}"), random_category(Q, &mut rng, max_total_dim))
        })
        .collect()
}

fn test_categories() -> Vec<Named> {
    let mut out: Vec<Named> = standard_categories().into_iter().map(|(n, c)| named(n, c)).collect();
    out.extend(random_categories(6, SEEDS));
    out
}

/// Triangular categories with varying corners, including a zero bimodule.
fn triangular_inputs() -> Result<Vec<(String, FiniteKCategory)>> {
    let k = point(Q);
    let a = Arc::new(a2(Q));
    let d = dual_numbers(GF);
    let kg = point(GF);
    let s1 = simple(a.clone(), 0, Side::Left)?;
    Ok(vec![
        ("[K 0; K K]".into(), triangular_matrix(&k, &k, &k_bimodule(Q, 1))?),
        ("[K 0; 0 K]".into(), triangular_matrix(&k, &k, &Bimodule::zero(&k, &k)?)?),
        ("[K 0; S(1) A2]".into(), one_point_extension(&a, &s1)?),
        ("[D 0; K K]".into(), triangular_matrix(&d, &kg, &augmentation_bimodule(&d))?),
        ("[A2 0; 0 D]".into(), triangular_matrix(&a2(GF), &d, &Bimodule::zero(&d, &a2(GF))?)?),
    ])
}

fn c1_bar_soundness() -> Result<Outcome> {
    let mut bad = Vec::new();
    let cats = test_categories();
    for (name, c) in &cats {
        let cx = hochschild_cochain_complex(c, &regular_bimodule(c), 5)?;
        let fails = cx.square_zero_failures();
        if !fails.is_empty() {
            bad.push(format!("{name} in degrees {fails:?}"));
        }
    }
    outcome(
        bad.is_empty(),
        if bad.is_empty() {
            format!("d∘d = 0 through degree 5 on {} categories", cats.len())
        } else {
            bad.join("; ")
        },
    )
}

fn c2_center() -> Result<Outcome> {
    let mut cats = test_categories();
    cats.extend(triangular_inputs()?.into_iter().map(|(n, c)| named(n, c)));
    let mut bad = Vec::new();
    for (name, c) in &cats {
        let h0 = hochschild_cohomology(c, 0)[0];
        let z = center(c).cols();
        if h0 != z {
            bad.push(format!("{name}: H0 {h0}, center {z}"));
        }
    }
    outcome(bad.is_empty(), format!("{} categories; mismatches: {bad:?}", cats.len()))
}

fn c3_known_cohomology() -> Result<Outcome> {
    let cases: [(&str, FiniteKCategory, [usize; 4]); 3] = [
        ("K", point(Q), [1, 0, 0, 0]),
        ("A2", a2(Q), [1, 0, 0, 0]),
        ("K[x]/x² over GF(32003)", dual_numbers(GF), [1, 1, 1, 1]),
    ];
    let mut passed = true;
    let mut parts = Vec::new();
    for (name, c, want) in cases {
        let reg = regular_bimodule(&c);
        let oracle = ext(&reg, &reg, 3)?;
        let cochain = hochschild_cohomology(&c, 3);
        let ok = oracle[..] == want && cochain[..] == want;
        passed &= ok;
        parts.push(format!(
            "{name}: expected {want:?}, enveloping Ext {oracle:?}, cochains {cochain:?}{}",
            if ok { "" } else { " MISMATCH" }
        ));
    }
    outcome(passed, parts.join("; "))
}

fn c4_oracle_equivalence() -> Result<Outcome> {
    let mut cats: Vec<Named> = test_categories();
    cats.extend(random_categories(5, 10..20));
    cats.extend(triangular_inputs()?.into_iter().map(|(n, c)| named(n, c)));
    cats.retain(|(_, c)| c.total_hom_dim() <= 5);
    let mut bad = Vec::new();
    for (name, c) in &cats {
        let reg = regular_bimodule(c);
        let oracle = ext(&reg, &reg, 3)?;
        let cochain = hochschild_cohomology(c, 3);
        if oracle != cochain {
            bad.push(format!("{name}: {oracle:?} vs {cochain:?}"));
        }
    }
    outcome(
        bad.is_empty(),
        format!("{} categories with total Hom dimension ≤ 5; mismatches: {bad:?}", cats.len()),
    )
}

fn c5_les() -> Result<Outcome> {
    let k = point(Q);
    let m = k_bimodule(Q, 1);
    let d = Arc::new(dual_numbers(GF));
    let s = simple(d.clone(), 0, Side::Left)?;
    let cmp = cmp_pipeline(&k, &k, &m, 3)?;
    let happel = happel_pipeline(&d, &s, 3)?;
    let cases = [
        ("[K 0; K K]", cmp.les, Arc::new(triangular_matrix(&k, &k, &m)?), k.clone()),
        ("[K 0; S D]", happel.theorem.les, Arc::new(one_point_extension(&d, &s)?), (*d).clone()),
    ];
    let mut passed = true;
    let mut parts = Vec::new();
    for (name, les, lambda, u) in cases {
        let exact = les.exact_at.len() == 12 && les.all_exact();
        let hu = hochschild_cohomology(&u, 3);
        let i = triangular_ideal(lambda.clone())?;
        let ses = canonical_ses(&lambda, &i)?;
        let standalone = ext(&ses.mid, &ses.sub, 3)?;
        let ok = exact && les.hb == hu && les.ext_ci == standalone;
        passed &= ok;
        parts.push(format!(
            "{name}: {}/{} nodes exact, Ext(Λ,H) {:?} vs H(U) {hu:?}, Ext(Λ,I) {:?} vs standalone {standalone:?}",
            les.exact_at.iter().filter(|&&b| b).count(),
            les.exact_at.len(),
            les.hb,
            les.ext_ci
        ));
    }
    outcome(passed, parts.join("; "))
}

fn c6_triangular_structure() -> Result<Outcome> {
    let inputs = triangular_inputs()?;
    let mut bad = Vec::new();
    for (name, lambda) in &inputs {
        let lambda = Arc::new(lambda.clone());
        let i = triangular_ideal(lambda.clone())?;
        if !is_idempotent(&i) {
            bad.push(format!("{name}: not idempotent"));
        }
        for x in 0..lambda.num_objects() {
            if !is_projective(&representable_ideal_module(&i, x)?) {
                bad.push(format!("{name}: I({},−) not projective", lambda.object_name(x)));
            }
        }
    }
    let names: Vec<&str> = inputs.iter().map(|(n, _)| n.as_str()).collect();
    outcome(bad.is_empty(), format!("{} inputs {names:?}; failures: {bad:?}", inputs.len()))
}

fn c7_negative_control() -> Result<Outcome> {
    let c = Arc::new(a2(Q));
    let i = ideal_from_generators(c.clone(), &[(0, 1, c.basis(0, 1, 0))])?;
    let audits = audit_hypotheses(&i)?;
    let rejected: Vec<&str> = audits.iter().filter(|a| !a.passed).map(|a| a.name.as_str()).collect();
    let check = strongly_idempotent_check(&c, &i, 3, None)?;
    let witness = check
        .witnesses
        .iter()
        .find(|w| w.condition == "b" && w.degree == 1 && w.dim > 0);
    let detail = match witness {
        Some(w) => format!(
            "audit rejects {rejected:?}; Ext1 witness over {} at {} with {}, dimension {}",
            w.category, w.object, w.sample, w.dim
        ),
        None => format!("audit rejects {rejected:?}; no Ext1 witness among {:?}", check.witnesses),
    };
    outcome(!rejected.is_empty() && !check.passed && witness.is_some(), detail)
}

fn c8_happel() -> Result<Outcome> {
    let k = Arc::new(point(Q));
    let d = Arc::new(dual_numbers(GF));
    let pk = representable(k.clone(), 0, Side::Left)?;
    let cases = [
        ("U = K, M = K", k.clone(), pk.clone()),
        ("U = K, M = K²", k.clone(), pk.power(2)),
        ("U = D, M = S", d.clone(), simple(d.clone(), 0, Side::Left)?),
    ];
    let mut passed = true;
    let mut parts = Vec::new();
    for (name, u, m) in cases {
        let rep = happel_pipeline(&u, &m, 3)?;
        let got = &rep.theorem.les.ext_ci;
        let h = module_hom(&m, &m)?.len() - 1;
        let e = ext(&m, &m, 3)?;
        let ok = got[0] == 0 && got[1] == h && got[2] == e[1] && got[3] == e[2];
        passed &= ok;
        parts.push(format!(
            "{name}: Ext(Λ,I) {got:?}, End(M)/K {h}, Ext(M,M) {e:?}{}",
            if ok { "" } else { " MISMATCH" }
        ));
    }
    outcome(passed, parts.join("; "))
}

/// Whether `Tor_i(n, m)` vanishes for every `i ≥ 1`, certified by a finite resolution of `m`.
fn tor_vanishes(n: &CatModule, m: &CatModule) -> Result<Option<bool>> {
    const DEPTH: usize = 6;
    let res = projective_resolution(m, DEPTH)?;
    if !res.complete {
        return Ok(None);
    }
    let t = tor_from_resolution(n, &res, res.length());
    Ok(Some(t[1..].iter().all(|&d| d == 0)))
}

struct Instance {
    c: Arc<FiniteKCategory>,
    d: Arc<FiniteKCategory>,
    f: CatModule,
    g: CatModule,
    h_left: CatModule,
    h_right: CatModule,
    g_right: CatModule,
    a: usize,
}

fn draw(rng: &mut ChaCha8Rng) -> Result<Instance> {
    let c = Arc::new(random_category(Q, rng, 6));
    let d = Arc::new(random_category(Q, rng, 6));
    let base = Arc::new(tensor_category(&opposite(&c), &d)?);
    Ok(Instance {
        f: random_module(c.clone(), Side::Left, rng),
        g: random_module(base, Side::Left, rng),
        h_left: random_module(d.clone(), Side::Left, rng),
        h_right: random_module(d.clone(), Side::Right, rng),
        g_right: random_module(c.clone(), Side::Right, rng),
        a: rng.gen_range(1..=2),
        c,
        d,
    })
}

/// The vanishing hypotheses for associativity of `F ⊠ G ⊠ H`.
fn hypotheses_hold(x: &Instance) -> Result<Option<bool>> {
    for b in 0..x.d.num_objects() {
        match tor_vanishes(&column_module(&x.g, x.c.clone(), b)?, &x.f)? {
            Some(true) => {}
            other => return Ok(other),
        }
    }
    for a in 0..x.c.num_objects() {
        match tor_vanishes(&x.h_right, &row_module(&x.g, a)?)? {
            Some(true) => {}
            other => return Ok(other),
        }
    }
    Ok(Some(true))
}

fn c9_adjunctions() -> Result<Outcome> {
    const INSTANCES: u64 = 20;
    const ATTEMPTS: usize = 200;
    let mut bad = Vec::new();
    let mut rejected = 0;
    let mut checked = 0;
    for seed in 0..INSTANCES {
        let mut rng = ChaCha8Rng::seed_from_u64(1000 + seed);
        let mut found = None;
        for _ in 0..ATTEMPTS {
            let x = draw(&mut rng)?;
            if hypotheses_hold(&x)? == Some(true) {
                found = Some(x);
                break;
            }
            rejected += 1;
        }
        let Some(x) = found else {
            bad.push(format!("seed {seed}: no instance satisfies the hypotheses"));
            continue;
        };
        checked += 1;
        // Hom(G ⊗_C F, K^a) = Hom_C(G, Hom(F, K^a))
        let lhs1 = x.a * tensor_over_cat(&x.g_right, &x.f)?.dim;
        let rhs1 = module_hom(&x.g_right, &hom_into_vector_space(&x.f, x.a))?.len();
        // Hom_D(F ⊠_C G, H) = Hom(G, Hom_K(F, H))
        let lhs2 = module_hom(&boxtimes(&x.f, &x.g)?, &x.h_left)?.len();
        let rhs2 = module_hom(&x.g, &outer_tensor_over(&dualize(&x.f), &x.h_left, x.g.base().clone())?)?.len();
        // Tor^D(H, F ⊠ G) = Tor^C(G ⊠ H, F)
        let lhs3 = tor(&x.h_right, &boxtimes(&x.f, &x.g)?, 3)?;
        let rhs3 = tor(&boxtimes_right(&x.g, &x.h_right, x.c.clone())?, &x.f, 3)?;
        if lhs1 != rhs1 || lhs2 != rhs2 || lhs3 != rhs3 {
            bad.push(format!(
                "seed {seed}: {lhs1} vs {rhs1}, {lhs2} vs {rhs2}, {lhs3:?} vs {rhs3:?}"
            ));
        }
    }
    outcome(
        bad.is_empty(),
        format!("{checked} instances, {rejected} draws rejected by the vanishing hypotheses; failures: {bad:?}"),
    )
}

fn c10_duality() -> Result<Outcome> {
    let mut cats = test_categories();
    cats.retain(|(_, c)| c.num_objects() > 0);
    let mut pairs = 0;
    let mut bad = Vec::new();
    for (cname, c) in &cats {
        let mods = module_matrix(c);
        let (lefts, rights): (Vec<_>, Vec<_>) = mods.iter().partition(|(_, m)| m.side() == Side::Left);
        for (mn, m) in &lefts {
            for (nn, n) in &rights {
                pairs += 1;
                let e = ext(m, &dualize(n), 3)?;
                let t = tor(n, m, 3)?;
                if e != t {
                    bad.push(format!("{cname}: M = {mn}, N = {nn}: {e:?} vs {t:?}"));
                }
            }
        }
    }
    outcome(bad.is_empty(), format!("{pairs} pairs over {} categories; failures: {bad:?}", cats.len()))
}

fn c11_determinism() -> Result<Outcome> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../cli/tests/data");
    let mut files: Vec<PathBuf> = std::fs::read_dir(&dir)
        .map_err(|e| kcat_core::Error::InvalidModule(format!("{}: {e}", dir.display())))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "kcat"))
        .collect();
    files.sort();
    let opts = RunOptions {
        seed: 11,
        verify_oracle: true,
        ..RunOptions::default()
    };
    let run = || -> Vec<String> {
        files
            .iter()
            .flat_map(|p| {
                let src = std::fs::read_to_string(p).expect("data file is readable");
                let out = run_source(&src, &opts);
                let mut lines: Vec<String> = out.reports.iter().map(|r| r.to_json()).collect();
                lines.push(format!("exit {}", out.exit_code()));
                lines
            })
            .collect()
    };
    let (first, second) = (run(), run());
    let same = first == second;
    let bytes: usize = first.iter().map(String::len).sum();
    outcome(
        same && !files.is_empty(),
        format!(
            "{} workspaces, {} reports, {bytes} bytes of JSON{}",
            files.len(),
            first.len() - files.len(),
            if same { ", identical" } else { ", runs differ" }
        ),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("cochain complexes square to zero", c1_bar_soundness),
        ("degree zero is the center", c2_center),
        ("known cohomologies", c3_known_cohomology),
        ("enveloping Ext equals bar cochains", c4_oracle_equivalence),
        ("long exact sequences for triangular categories", c5_les),
        ("triangular ideals are idempotent with projective rows", c6_triangular_structure),
        ("negative control A2 with I = <a>", c7_negative_control),
        ("one-point extensions", c8_happel),
        ("adjunction identities and Tor associativity", c9_adjunctions),
        ("Ext against duals equals Tor", c10_duality),
        ("same seed gives identical JSON", c11_determinism),
    ];
    let total = Instant::now();
    let mut failed = 0;
    for (k, (name, run)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(run));
        let (passed, detail) = match result {
            Ok(Ok(o)) => (o.passed, o.detail),
            Ok(Err(e)) => (false, format!("error: {e}")),
            Err(_) => (false, "panicked".to_string()),
        };
        if !passed {
            failed += 1;
        }
        println!(
            "criterion {:>2} {} {name}: {detail} [{:.1}s]",
            k + 1,
            if passed { "PASS" } else { "FAIL" },
            start.elapsed().as_secs_f64()
        );
    }
    println!(
        "acceptance: {} passed, {failed} failed [{:.1}s]",
        11 - failed,
        total.elapsed().as_secs_f64()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
