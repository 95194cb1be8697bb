//! Acceptance criteria, one line each. Runs without the libtest harness so
//! the verdict lines always reach the console.

use std::collections::BTreeSet;
use std::process::ExitCode;

use proptest::prelude::*;
use proptest::test_runner::{Config as PtConfig, TestRunner};

use grad_core::algebra::{Grade, GradeMatrix, GradeVector, Semiring};
use grad_core::contexts::PlainCtx;
use grad_core::corpus;
use grad_core::dep_checker::{check_against_dep, defeq, infer_dep, DEFAULT_FUEL};
use grad_core::heap_machine::{
    count_balance, flatten_heap, transformation_matrix, DepTyper, End, Heap, Machine, SimpleTyper, StepOutcome,
    Stuck,
};
use grad_core::program::{closed_main, typer_for};
use grad_core::simple_checker::infer_simple;
use grad_core::subst_eval;
use grad_core::suites::{self, Case, Suite};
use grad_core::syntax::*;

mod common;

type Outcome = Result<(), String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn all_ok(cases: &[Case]) -> Outcome {
    match cases.iter().find(|c| c.verdict.is_err()) {
        Some(c) => Err(c.to_string()),
        None => Ok(()),
    }
}

fn g(s: &Semiring, name: &str) -> Grade {
    s.parse_grade(name).unwrap()
}

/// Flags straight from their definitions, by enumeration.
fn flags_by_definition(s: &Semiring) -> [bool; 5] {
    let els = s.elements().unwrap();
    let (z, o) = (s.zero(), s.one());
    let pairs: Vec<(Grade, Grade)> = els.iter().flat_map(|&a| els.iter().map(move |&b| (a, b))).collect();
    [
        els.iter().all(|&q| !s.leq(s.add(q, o), z)),
        els.iter().all(|&q| q == z || !s.leq(s.add(q, o), o)),
        pairs.iter().all(|&(a, b)| s.add(a, b) != z || (a == z && b == z)),
        pairs.iter().all(|&(a, b)| s.mul(a, b) != z || a == z || b == z),
        pairs.iter().all(|&(a, b)| {
            (s.add(a, b) != o || (a == o && b == z) || (a == z && b == o)) && (s.mul(a, b) != o || (a == o && b == o))
        }),
    ]
}

fn c1_semiring_tables() -> Outcome {
    let l = Semiring::linearity();
    let (zero, one, w) = (g(&l, "0"), g(&l, "1"), g(&l, "w"));
    ensure(l.add(one, one) == w, || "1+1 != w".into())?;
    ensure(l.add(w, one) == w, || "w+1 != w".into())?;
    ensure(l.mul(w, w) == w, || "w*w != w".into())?;
    ensure(l.leq(zero, w) && l.leq(one, w) && !l.leq(zero, one), || "linearity order".into())?;
    let b = Semiring::boolean_exact();
    ensure(b.add(b.one(), b.one()) == b.one(), || "bool 1+1 != 1".into())?;
    // zero-unusable, one-linear, zerosumfree, entire, linear
    let expected: [(&str, [bool; 5]); 6] = [
        ("trivial", [false, true, true, true, true]),
        ("bool", [true, false, true, true, false]),
        ("bool-ordered", [true, false, true, true, false]),
        ("linearity", [true, true, true, true, true]),
        ("five-point", [true, true, true, true, true]),
        ("security", [true, false, true, false, false]),
    ];
    for (name, want) in expected {
        let s = Semiring::by_name(name).unwrap();
        let f = s.classify().map_err(|e| e.to_string())?;
        let got = [f.zero_unusable, f.one_linear, f.zerosumfree, f.entire, f.linear];
        ensure(got == want, || format!("{name}: classify {got:?}, expected {want:?}"))?;
        let def = flags_by_definition(&s);
        ensure(got == def, || format!("{name}: classify {got:?}, definitions give {def:?}"))?;
    }
    Ok(())
}

fn c2_irrelevant_application() -> Outcome {
    let l = Semiring::linearity();
    let a = unit_ty();
    let b = sum(unit_ty(), unit_ty());
    let f_ty = arrow(l.zero(), b.clone(), arrow(l.one(), a.clone(), a.clone()));
    let ctx = PlainCtx::new().with("f", f_ty).with("x", b);
    let (ty, u) = infer_simple(&l, &ctx, &app(var("f"), var("x"))).map_err(|e| e.to_string())?;
    ensure(ty == arrow(l.one(), a.clone(), a.clone()), || format!("simple type {}", print(&l, &ty)))?;
    ensure(u.0 == vec![l.one(), l.zero()], || format!("simple usage {}", l.show_vec(&u)))?;
    // the same with abstract types A, B in the dependent checker
    let ctx = PlainCtx::new()
        .with("A", ty_())
        .with("B", ty_())
        .with("f", arrow(l.zero(), var("B"), arrow(l.one(), var("A"), var("A"))))
        .with("x", var("B"));
    let (ty, u) = infer_dep(&l, &ctx, &app(var("f"), var("x")), DEFAULT_FUEL).map_err(|e| e.to_string())?;
    ensure(print(&l, &ty) == "A -1> A", || format!("dep type {}", print(&l, &ty)))?;
    ensure(u.0 == vec![l.zero(), l.zero(), l.one(), l.zero()], || format!("dep usage {}", l.show_vec(&u)))
}

fn ty_() -> T {
    ty()
}

fn c3_dependent_identity() -> Outcome {
    let l = Semiring::linearity();
    let t = parse_term("(\\x :0 Type. \\y :1 x. y) Unit", &l).unwrap();
    let want = parse_term("Pi y :1 Unit. Unit", &l).unwrap();
    let (ty, _) = infer_dep(&l, &PlainCtx::new(), &t, DEFAULT_FUEL).map_err(|e| e.to_string())?;
    ensure(ty == want, || format!("inferred {}", print(&l, &ty)))?;
    let m = Machine { sr: &l, typer: &DepTyper::default() };
    let StepOutcome::Step(rec) = m.step(&Heap::new(), &t, l.one(), &mut BTreeSet::new(), &mut Fresh::new()) else {
        return Err("no heap step".into());
    };
    let def = &rec.added.entries[0];
    ensure(rec.added.len() == 1 && def.grade == l.zero() && def.def == Some(unit_ty()) && def.ty == ty_(), || {
        "added context is not x = Unit :0 Type".into()
    })?;
    let plain = rec.new_heap.plain();
    check_against_dep(&l, &plain, &rec.reduct, &want, DEFAULT_FUEL).map_err(|e| format!("re-check: {e}"))?;
    let (ty2, _) = infer_dep(&l, &plain, &rec.reduct, DEFAULT_FUEL).map_err(|e| e.to_string())?;
    let flat = flatten_heap(&ty2, &rec.new_heap);
    ensure(flat == want, || format!("re-inferred {}", print(&l, &flat)))
}

fn c4_count_balance() -> Outcome {
    let n = Semiring::nat();
    let v = |xs: &[u64]| GradeVector(xs.iter().map(|&x| Grade(x)).collect());
    // the heap as the machine builds it from the corpus program
    let ex = corpus::get("heap_ex").unwrap();
    let m = Machine { sr: &n, typer: &SimpleTyper };
    let (mut h, mut t) = (Heap::new(), closed_main(&ex.program).unwrap());
    let (mut support, mut fresh) = (BTreeSet::new(), Fresh::new());
    for _ in 0..3 {
        let StepOutcome::Step(rec) = m.step(&h, &t, n.one(), &mut support, &mut fresh) else {
            return Err("heap-ex did not allocate".into());
        };
        h = rec.new_heap;
        t = rec.reduct;
    }
    ensure(h.allowed() == v(&[7, 3, 1]), || format!("allowed {}", n.show_vec(&h.allowed())))?;
    let mat = transformation_matrix(&n, &h);
    let want = GradeMatrix { rows: vec![v(&[0, 0, 0]).0, v(&[2, 0, 0]).0, v(&[1, 2, 0]).0] };
    ensure(mat == want, || format!("matrix {}", n.show_matrix(&mat)))?;
    let gamma = v(&[0, 1, 1]);
    let (_, usage) = infer_simple(&n, &h.plain(), &t).map_err(|e| e.to_string())?;
    ensure(usage == gamma, || format!("term uses {}", n.show_vec(&usage)))?;
    let prod = n.vec_mat_mul(&h.allowed(), &mat).unwrap();
    ensure(prod == v(&[7, 2, 0]), || format!("H x <H> = {}", n.show_vec(&prod)))?;
    ensure(n.vec_add(&prod, &gamma).unwrap() == h.allowed(), || "H != H x <H> + G".into())?;
    ensure(count_balance(&n, &h, &gamma), || "count_balance rejects heap-ex".into())
}

fn c5_conservation() -> Outcome {
    let cases = suites::run(Suite::Conservation, &suites::Config { seed: 0, ..Default::default() });
    all_ok(&cases)?;
    let mutant_runs = cases.iter().filter(|c| !c.id.starts_with("corpus/")).count();
    ensure(mutant_runs >= 1000, || format!("only {mutant_runs} mutation runs"))?;
    for name in ["nat", "linearity", "bool-ordered"] {
        let k = cases.iter().filter(|c| c.id.starts_with(&format!("{name}/"))).count();
        ensure(k >= 333, || format!("{name}: {k} runs"))?;
    }
    Ok(())
}

fn c6_stuck_detection() -> Outcome {
    let ex = corpus::get("stuck").unwrap();
    let typer = typer_for(ex.system);
    let m = Machine { sr: &ex.semiring, typer: typer.as_ref() };
    let r = m.run(&Heap::new(), &closed_main(&ex.program).unwrap(), ex.semiring.one(), &BTreeSet::new(), &mut Fresh::new(), 100);
    let End::Stuck(Stuck::ResourceExhausted(x)) = &r.end else {
        return Err(format!("stuck.grad ended with {:?}", r.end));
    };
    ensure(base_name(x) == "x", || format!("stuck on {x}"))?;
    let i = r.heap.index_of(x).unwrap();
    let reads = r.steps.iter().filter(|s| s.consumed.0.get(i) == Some(&ex.semiring.one())).count();
    ensure(reads == 2, || format!("{reads} reads of x before getting stuck"))?;
    let ex = corpus::get("unwise").unwrap();
    let m = Machine { sr: &ex.semiring, typer: &SimpleTyper };
    let r = m.run(&Heap::new(), &closed_main(&ex.program).unwrap(), ex.semiring.one(), &BTreeSet::new(), &mut Fresh::new(), 100);
    ensure(r.end == End::Value, || format!("unwise analog ended with {:?}", r.end))
}

fn c7_determinism() -> Outcome {
    for seed in [0, 7] {
        let cases = suites::run(Suite::Determinism, &suites::Config { seed, ..Default::default() });
        ensure(cases.len() == corpus::SOURCES.len(), || "not every program ran".into())?;
        all_ok(&cases)?;
    }
    Ok(())
}

fn c8_bisimilarity() -> Outcome {
    let cases = suites::run(Suite::Bisim, &suites::Config::default());
    let typed = corpus::all().iter().filter(|e| e.system.is_some()).count();
    ensure(cases.len() == typed, || format!("{} of {typed} programs ran", cases.len()))?;
    all_ok(&cases)
}

fn c9_soundness() -> Outcome {
    all_ok(&suites::run(Suite::Soundness, &suites::Config::default()))
}

fn c10_noninterference() -> Outcome {
    let cases = suites::run(Suite::Noninterference, &suites::Config::default());
    let swaps = cases.iter().filter(|c| c.id.contains("/swap-")).count();
    let controls = cases.iter().filter(|c| c.id.contains("/control-")).count();
    ensure(swaps == 200 && controls == 20, || format!("{swaps} swaps, {controls} controls"))?;
    ensure(cases.iter().any(|c| c.id.starts_with("security/")), || "no security-lattice swaps".into())?;
    all_ok(&cases)
}

fn c11_gc_and_single_pointer() -> Outcome {
    let cfg = suites::Config::default();
    all_ok(&suites::run(Suite::Gc, &cfg))?;
    all_ok(&suites::run(Suite::SinglePointer, &cfg))
}

fn c12_defeq() -> Outcome {
    let ctx = PlainCtx::new();
    let fuel = 2000;
    let mut runner = TestRunner::new(PtConfig { cases: 256, failure_persistence: None, ..PtConfig::default() });
    runner
        .run(&(common::term(), common::term(), common::term()), |(a, b, c)| {
            if let Ok(r) = defeq(&ctx, &a, &a, fuel) {
                prop_assert!(r, "not reflexive");
            }
            if let (Ok(ab), Ok(ba)) = (defeq(&ctx, &a, &b, fuel), defeq(&ctx, &b, &a, fuel)) {
                prop_assert_eq!(ab, ba, "not symmetric");
            }
            if let (Ok(true), Ok(true), Ok(ac)) = (defeq(&ctx, &a, &b, fuel), defeq(&ctx, &b, &c, fuel), defeq(&ctx, &a, &c, fuel)) {
                prop_assert!(ac, "not transitive");
            }
            // a chain of reducts is one equivalence class
            if let Some(a1) = subst_eval::step(&a) {
                if let Some(a2) = subst_eval::step(&a1) {
                    if let (Ok(true), Ok(true), Ok(r)) =
                        (defeq(&ctx, &a, &a1, fuel), defeq(&ctx, &a1, &a2, fuel), defeq(&ctx, &a, &a2, fuel))
                    {
                        prop_assert!(r, "reduct chain not transitive");
                    }
                }
            }
            Ok(())
        })
        .map_err(|e| e.to_string())?;
    runner
        .run(&(common::term(), common::term(), common::grade(), common::grade()), |(a, b, q, r)| {
            if q != r {
                let eq = defeq(&ctx, &pi("x", q, a.clone(), b.clone()), &pi("x", r, a, b), fuel);
                prop_assert!(!matches!(eq, Ok(true)), "Pi grades {q:?} and {r:?} identified");
            }
            Ok(())
        })
        .map_err(|e| e.to_string())?;
    for ex in corpus::all() {
        let mut a = closed_main(&ex.program).unwrap();
        while let Some(b) = subst_eval::step(&a) {
            ensure(defeq(&ctx, &a, &b, DEFAULT_FUEL) == Ok(true), || format!("{}: reduct not convertible", ex.name))?;
            a = b;
        }
    }
    let l = Semiring::linearity();
    let p1 = parse_term("Pi x :0 Unit. Unit", &l).unwrap();
    let p2 = parse_term("Pi x :1 Unit. Unit", &l).unwrap();
    ensure(defeq(&ctx, &p1, &p2, fuel) == Ok(false), || "Pi grade rejection".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        ("semiring tables and classification", c1_semiring_tables),
        ("irrelevant application", c2_irrelevant_application),
        ("dependent identity", c3_dependent_identity),
        ("count balance on heap-ex", c4_count_balance),
        ("conservation over 1000 mutation runs", c5_conservation),
        ("stuck detection", c6_stuck_detection),
        ("determinism up to renaming", c7_determinism),
        ("heap and substitution bisimilarity", c8_bisimilarity),
        ("soundness clause and compat re-establishment", c9_soundness),
        ("non-interference swaps and controls", c10_noninterference),
        ("single-pointer and GC", c11_gc_and_single_pointer),
        ("defeq properties", c12_defeq),
    ];
    let mut failed = 0;
    for (i, (title, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(()) => println!("criterion {:2} {title}: PASS", i + 1),
            Err(e) => {
                failed += 1;
                println!("criterion {:2} {title}: FAIL ({e})", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
