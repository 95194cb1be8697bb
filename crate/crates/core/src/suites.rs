//! Property suites over the corpus and seeded random variants of it.

use std::fmt;
use std::rc::Rc;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{Grade, GradeVector, Semiring};
use crate::analysis::{
    bisim_check, check_conservation, conservation_is_exact, determinism, gc_candidates, noninterference,
    single_pointer, swapped_traces_agree, trace, AnalysisError, Verdict,
};
use crate::contexts::UsageCtx;
use crate::corpus::{self, Example};
use crate::heap_machine::{transformation_matrix, ErasedTyper, Heap, Machine};
use crate::program::{check_program, closed_main, closed_type, typer_for, System};
use crate::simple_checker::infer_simple;
use crate::contexts::PlainCtx;
use crate::syntax::{app, lam, parse_program, sum, unit, unit_elim, unit_ty, var, Fresh, Term, T};

pub const FUEL: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Conservation,
    Noninterference,
    Gc,
    SinglePointer,
    Bisim,
    Soundness,
    Determinism,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::Conservation,
        Suite::Noninterference,
        Suite::Gc,
        Suite::SinglePointer,
        Suite::Bisim,
        Suite::Soundness,
        Suite::Determinism,
    ];
}

impl FromStr for Suite {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Suite::ALL
            .into_iter()
            .find(|x| x.to_string() == s)
            .ok_or_else(|| format!("unknown suite `{s}`"))
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::Conservation => "conservation",
            Suite::Noninterference => "noninterference",
            Suite::Gc => "gc",
            Suite::SinglePointer => "single-pointer",
            Suite::Bisim => "bisim",
            Suite::Soundness => "soundness",
            Suite::Determinism => "determinism",
        })
    }
}

#[derive(Debug, Clone)]
pub struct Case {
    pub suite: Suite,
    pub id: String,
    pub verdict: Verdict,
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.verdict {
            Ok(()) => write!(f, "{} {} ok", self.suite, self.id),
            Err(e) => write!(f, "{} {} FAIL {}", self.suite, self.id, e),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Config {
    pub seed: u64,
    /// Restricts the semiring-parametric parts of a suite.
    pub semiring: Option<Semiring>,
    pub mutants: usize,
    pub swaps: usize,
    pub controls: usize,
}

impl Default for Config {
    fn default() -> Self {
        Config { seed: 0, semiring: None, mutants: 1000, swaps: 200, controls: 20 }
    }
}

pub fn run(suite: Suite, cfg: &Config) -> Vec<Case> {
    let mut out = Vec::new();
    let mut push = |id: String, verdict: Verdict| out.push(Case { suite, id, verdict });
    match suite {
        Suite::Conservation => conservation(cfg, &mut push),
        Suite::Noninterference => noninterference_suite(cfg, &mut push),
        Suite::Gc => gc_suite(cfg, &mut push),
        Suite::SinglePointer => single_pointer_suite(cfg, &mut push),
        Suite::Bisim => {
            for ex in typed_corpus(cfg) {
                let (main, typer) = (closed_main(&ex.program).unwrap(), typer_for(ex.system));
                let m = Machine { sr: &ex.semiring, typer: typer.as_ref() };
                push(ex.name.to_string(), bisim_check(&m, &Heap::new(), &main, FUEL));
            }
        }
        Suite::Soundness => soundness_suite(cfg, &mut push),
        Suite::Determinism => {
            for ex in corpus_for(cfg) {
                let (main, typer) = (closed_main(&ex.program).unwrap(), typer_for(ex.system));
                let m = Machine { sr: &ex.semiring, typer: typer.as_ref() };
                push(ex.name.to_string(), determinism(&m, &Heap::new(), &main, FUEL, 1000 + cfg.seed));
            }
        }
    }
    out
}

fn corpus_for(cfg: &Config) -> Vec<Example> {
    corpus::all()
        .into_iter()
        .filter(|ex| cfg.semiring.as_ref().is_none_or(|s| s.name() == ex.semiring.name()))
        .collect()
}

fn typed_corpus(cfg: &Config) -> Vec<Example> {
    corpus_for(cfg).into_iter().filter(|ex| ex.system.is_some()).collect()
}

fn semirings(cfg: &Config, defaults: &[fn() -> Semiring]) -> Vec<Semiring> {
    match &cfg.semiring {
        Some(s) => vec![s.clone()],
        None => defaults.iter().map(|f| f()).collect(),
    }
}

fn conservation(cfg: &Config, push: &mut impl FnMut(String, Verdict)) {
    for ex in corpus_for(cfg) {
        let typer = typer_for(ex.system);
        let m = Machine { sr: &ex.semiring, typer: typer.as_ref() };
        let r = trace(&m, &Heap::new(), &closed_main(&ex.program).unwrap(), None, FUEL, &mut Fresh::new());
        push(format!("corpus/{}", ex.name), r.conservation);
    }
    let srs = semirings(cfg, &[Semiring::nat, Semiring::linearity, Semiring::boolean_ordered]);
    let per = cfg.mutants.div_ceil(srs.len().max(1));
    for sr in &srs {
        let m = Machine { sr, typer: &crate::heap_machine::SimpleTyper };
        for (id, t) in mutants(sr, cfg.seed, per) {
            let r = m.run(&Heap::new(), &t, sr.one(), &Default::default(), &mut Fresh::new(), FUEL);
            let mut v = check_conservation(sr, &r);
            if v.is_ok() && !sr.is_finite() && !conservation_is_exact(sr, &r) {
                v = Err("discrete order but conservation is not an equation".into());
            }
            push(format!("{}/{id}", sr.name()), v);
        }
    }
}

fn soundness_suite(cfg: &Config, push: &mut impl FnMut(String, Verdict)) {
    for ex in typed_corpus(cfg) {
        let sys = ex.system.unwrap();
        let checked = match check_program(&ex.semiring, sys, &ex.program) {
            Ok(c) => c,
            Err(e) => {
                push(ex.name.to_string(), Err(e.to_string()));
                continue;
            }
        };
        let typer = typer_for(Some(sys));
        let m = Machine { sr: &ex.semiring, typer: typer.as_ref() };
        let ty = closed_type(&checked);
        let r = trace(&m, &Heap::new(), &closed_main(&ex.program).unwrap(), Some((&UsageCtx::new(), &ty)), FUEL, &mut Fresh::new());
        push(ex.name.to_string(), collect(&r.soundness));
    }
    let srs = semirings(cfg, &[Semiring::nat, Semiring::linearity, Semiring::boolean_ordered]);
    for sr in &srs {
        let m = Machine { sr, typer: &crate::heap_machine::SimpleTyper };
        for (id, t) in mutants(sr, cfg.seed ^ 0x5eed, 40) {
            let (ty, _) = infer_simple(sr, &PlainCtx::new(), &t).expect("mutants are well typed");
            let r = trace(&m, &Heap::new(), &t, Some((&UsageCtx::new(), &ty)), FUEL, &mut Fresh::new());
            push(format!("{}/{id}", sr.name()), collect(&r.soundness));
        }
    }
}

fn collect(vs: &[Verdict]) -> Verdict {
    for (k, v) in vs.iter().enumerate() {
        if let Err(e) = v {
            return Err(format!("step {}: {e}", k + 1));
        }
    }
    Ok(())
}

/// Γ with Γ + H̄×⟨H⟩ = H̄, taking the first solution at each index.
pub fn context_from_heap(sr: &Semiring, h: &Heap) -> Option<GradeVector> {
    let q = h.allowed();
    let demand = sr.vec_mat_mul(&q, &transformation_matrix(sr, h)).ok()?;
    q.0.iter().zip(&demand.0).map(|(&qi, &di)| sr.solve_add(di, qi).first().copied()).collect::<Option<Vec<_>>>().map(GradeVector)
}

fn heap_ex() -> Heap {
    let v = |xs: &[u64]| GradeVector(xs.iter().map(|&x| Grade(x)).collect());
    let mut h = Heap::new();
    h.push("x1", Grade(7), v(&[]), unit(), unit_ty());
    h.push("x2", Grade(3), v(&[2]), unit_elim(var("x1"), var("x1")), unit_ty());
    h.push("x3", Grade(1), v(&[1, 2]), unit_elim(var("x1"), unit_elim(var("x2"), var("x2"))), unit_ty());
    h
}

fn expect_flags<T>(r: Result<T, AnalysisError>) -> Verdict {
    match r {
        Err(AnalysisError::Flags { .. }) => Ok(()),
        Err(e) => Err(format!("expected a flags error, got {e}")),
        Ok(_) => Err("expected a flags error".into()),
    }
}

fn gc_suite(cfg: &Config, push: &mut impl FnMut(String, Verdict)) {
    let nat = Semiring::nat();
    let h = heap_ex();
    let g = GradeVector(vec![Grade(0), Grade(1), Grade(1)]);
    push(
        "heap-ex".into(),
        match gc_candidates(&nat, &h, &g) {
            Ok(s) if s.is_empty() => Ok(()),
            other => Err(format!("{other:?}")),
        },
    );
    let mut h4 = h.clone();
    h4.push("x4", Grade(0), GradeVector(vec![Grade(0); 3]), unit(), unit_ty());
    let g4 = g.padded(4, Grade(0));
    push(
        "heap-ex+x4".into(),
        match gc_candidates(&nat, &h4, &g4) {
            Ok(s) if s.iter().eq(["x4"].iter()) => Ok(()),
            other => Err(format!("{other:?}")),
        },
    );
    push("trivial-flags".into(), expect_flags(gc_candidates(&Semiring::trivial(), &Heap::new(), &GradeVector(vec![]))));
    let b = Semiring::boolean_exact();
    let flags = b.classify().unwrap();
    let expected_err = !(flags.zerosumfree && flags.entire && flags.zero_unusable && b.is_minimal(b.zero()));
    push(
        "bool-per-classify".into(),
        match (gc_candidates(&b, &Heap::new(), &GradeVector(vec![])), expected_err) {
            (Err(AnalysisError::Flags { .. }), true) | (Ok(_), false) => Ok(()),
            (r, _) => Err(format!("classify says error={expected_err}, got {r:?}")),
        },
    );
    // along every corpus run: zero-allowed entries are never read, stay at 0,
    // and are exactly what GC reports
    for ex in typed_corpus(cfg) {
        let sr = &ex.semiring;
        if gc_candidates(sr, &Heap::new(), &GradeVector(vec![])).is_err() {
            continue;
        }
        let typer = typer_for(ex.system);
        let m = Machine { sr, typer: typer.as_ref() };
        let r = m.run(&Heap::new(), &closed_main(&ex.program).unwrap(), sr.one(), &Default::default(), &mut Fresh::new(), FUEL);
        let mut verdict = Ok(());
        let mut prev = Heap::new();
        for (k, rec) in r.steps.iter().enumerate() {
            let h = &rec.new_heap;
            let zero: Vec<usize> = (0..h.len()).filter(|&i| h.entries[i].allowed == sr.zero()).collect();
            let was_zero = (0..prev.len()).filter(|&i| prev.entries[i].allowed == sr.zero());
            if was_zero.clone().any(|i| rec.consumed.0[i] != sr.zero() || h.entries[i].allowed != sr.zero()) {
                verdict = Err(format!("step {}: consumption at a zero entry", k + 1));
                break;
            }
            let Some(g) = context_from_heap(sr, h) else {
                verdict = Err(format!("step {}: heap has no balancing context", k + 1));
                break;
            };
            match gc_candidates(sr, h, &g) {
                Ok(c) if c.len() == zero.len() => {}
                other => {
                    verdict = Err(format!("step {}: {other:?}", k + 1));
                    break;
                }
            }
            prev = h.clone();
        }
        if verdict.is_ok() {
            let dead_at_alloc: Vec<usize> = r
                .steps
                .iter()
                .flat_map(|rec| {
                    let n = rec.new_heap.len() - rec.added.len();
                    (0..rec.added.len()).filter(move |&j| rec.added.entries[j].grade == sr.zero()).map(move |j| n + j)
                })
                .collect();
            if dead_at_alloc.iter().any(|&i| r.heap.entries[i].allowed != sr.zero()) {
                verdict = Err("a zero entry changed its allowance".into());
            }
        }
        push(format!("zero-dead/{}", ex.name), verdict);
    }
}

fn single_pointer_suite(cfg: &Config, push: &mut impl FnMut(String, Verdict)) {
    let l = Semiring::linearity();
    let v = |xs: &[u64]| GradeVector(xs.iter().map(|&x| Grade(x)).collect());
    let holds = |r: Result<bool, AnalysisError>| match r {
        Ok(true) => Ok(()),
        other => Err(format!("{other:?}")),
    };
    let mut h = Heap::new();
    h.push("x", l.one(), v(&[]), unit(), unit_ty());
    push("one-entry".into(), holds(single_pointer(&l, &h, &v(&[1]), "x")));
    h.push("y", l.one(), v(&[1]), unit_elim(var("x"), unit()), unit_ty());
    push("two-level/x".into(), holds(single_pointer(&l, &h, &v(&[0, 1]), "x")));
    push("two-level/y".into(), holds(single_pointer(&l, &h, &v(&[0, 1]), "y")));
    push("bool-flags".into(), expect_flags(single_pointer(&Semiring::boolean_exact(), &h, &v(&[0, 1]), "x")));
    push("bool-ordered-flags".into(), expect_flags(single_pointer(&Semiring::boolean_ordered(), &h, &v(&[0, 1]), "x")));
    push("trivial-flags".into(), expect_flags(single_pointer(&Semiring::trivial(), &Heap::new(), &v(&[]), "x")));
    // every linear entry of every heap reached by a linearity corpus run
    for ex in typed_corpus(cfg).into_iter().filter(|e| e.semiring.name() == l.name()) {
        let typer = typer_for(ex.system);
        let m = Machine { sr: &l, typer: typer.as_ref() };
        let r = m.run(&Heap::new(), &closed_main(&ex.program).unwrap(), l.one(), &Default::default(), &mut Fresh::new(), FUEL);
        let mut verdict = Ok(());
        'steps: for (k, rec) in r.steps.iter().enumerate() {
            let h = &rec.new_heap;
            let Some(g) = context_from_heap(&l, h) else {
                verdict = Err(format!("step {}: heap has no balancing context", k + 1));
                break;
            };
            for e in h.entries.iter().filter(|e| e.allowed == l.one()) {
                if let Err(err) = holds(single_pointer(&l, h, &g, &e.name)) {
                    verdict = Err(format!("step {}, {}: {err}", k + 1, e.name));
                    break 'steps;
                }
            }
        }
        push(format!("corpus/{}", ex.name), verdict);
    }
}

/// Closed values used as swapped definiens.
fn value_pool() -> Vec<T> {
    let one = Grade(1);
    vec![
        unit(),
        crate::syntax::inj1(unit()),
        crate::syntax::inj2(unit()),
        crate::syntax::pair(one, unit(), unit()),
        lam("z", one, unit_ty(), var("z")),
        crate::syntax::boxed(one, unit()),
    ]
}

/// A program that reads the public entries freely and mentions `s` only
/// under binders of grade `hidden`.
fn leaky_free_program(rng: &mut ChaCha8Rng, public: &[String], hidden: Grade, depth: usize) -> T {
    if depth == 0 {
        return match public.choose(rng) {
            Some(p) if rng.gen_bool(0.7) => var(p),
            _ => unit(),
        };
    }
    let rest = leaky_free_program(rng, public, hidden, depth - 1);
    match rng.gen_range(0..4) {
        0 => match public.choose(rng) {
            Some(p) => unit_elim(var(p), rest),
            None => rest,
        },
        1 => app(lam("z", hidden, unit_ty(), rest), var("s")),
        2 => app(lam("z", hidden, unit_ty(), rest), unit_elim(var("s"), var("s"))),
        _ => unit_elim(unit(), rest),
    }
}

fn noninterference_suite(cfg: &Config, push: &mut impl FnMut(String, Verdict)) {
    let srs = semirings(cfg, &[Semiring::linearity, Semiring::nat, Semiring::security]);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let pool = value_pool();
    for k in 0..cfg.swaps {
        let sr = &srs[k % srs.len()];
        let m = Machine { sr, typer: &ErasedTyper };
        let unusable: Vec<Grade> = match sr.elements() {
            Some(els) => els.into_iter().filter(|&g| !sr.is_usable(g)).collect(),
            None => vec![sr.zero()],
        };
        let Some(&hidden) = unusable.choose(&mut rng) else {
            push(format!("{}/swap-{k}", sr.name()), Err("no unusable grade".into()));
            continue;
        };
        let plenty = match sr.elements() {
            Some(els) => els.into_iter().find(|&g| sr.is_usable(g) && sr.decrement(g, sr.one()) == Some(g)).unwrap_or(sr.one()),
            None => Grade(8),
        };
        let mut h = Heap::new();
        let before = rng.gen_range(0..3);
        let after = rng.gen_range(0..3);
        let mut public = Vec::new();
        for i in 0..before {
            let name = format!("p{i}");
            h.push(&name, plenty, sr.zeros(h.len()), pool[0].clone(), unit_ty());
            public.push(name);
        }
        let idx = h.len();
        let orig = pool.choose(&mut rng).unwrap().clone();
        h.push("s", hidden, sr.zeros(h.len()), orig.clone(), unit_ty());
        for i in 0..after {
            let name = format!("q{i}");
            h.push(&name, plenty, sr.zeros(h.len()), unit(), unit_ty());
            public.push(name);
        }
        let alt = loop {
            let c = pool.choose(&mut rng).unwrap();
            if *c != orig {
                break c.clone();
            }
        };
        let depth = rng.gen_range(1..5);
        let b = leaky_free_program(&mut rng, &public, hidden, depth);
        let alt_ctx = h.plain().prefix(idx).with_grades(&sr.zeros(idx)).unwrap();
        let v = match noninterference(&m, &h, idx, &alt, &alt_ctx, &sum(unit_ty(), unit_ty()), &b, FUEL) {
            Ok(v) => v,
            Err(e) => Err(e.to_string()),
        };
        push(format!("{}/swap-{k}", sr.name()), v);
    }
    for k in 0..cfg.controls {
        let sr = &srs[k % srs.len()];
        let m = Machine { sr, typer: &ErasedTyper };
        let mut h = Heap::new();
        let orig = pool[k % pool.len()].clone();
        let alt = pool[(k + 1) % pool.len()].clone();
        h.push("s", sr.one(), sr.zeros(0), orig, unit_ty());
        let b = if k % 2 == 0 { var("s") } else { Rc::new(Term::App(lam("z", sr.one(), unit_ty(), var("z")), var("s"))) };
        let v = match swapped_traces_agree(&m, &h, 0, &alt, &UsageCtx::new(), &unit_ty(), &b, FUEL) {
            Ok(()) => Err("usable entry swapped without a visible difference".into()),
            Err(_) => Ok(()),
        };
        push(format!("{}/control-{k}", sr.name()), v);
    }
}

/// Random well-typed variants of the simply typed corpus programs that
/// parse under `sr`, with ids `base/k`.
pub fn mutants(sr: &Semiring, seed: u64, count: usize) -> Vec<(String, T)> {
    let bases: Vec<(&str, T)> = corpus::SOURCES
        .iter()
        .filter_map(|&(name, src)| {
            let ex = corpus::load(name, src);
            (ex.system == Some(System::Simple)).then_some(())?;
            let p = parse_program(src, sr).ok()?;
            let t = closed_main(&p)?;
            infer_simple(sr, &PlainCtx::new(), &t).ok()?;
            Some((name, t))
        })
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ name_hash(sr.name()));
    let mut out = Vec::new();
    let mut attempts = 0;
    while out.len() < count && attempts < count * 200 && !bases.is_empty() {
        attempts += 1;
        let (name, base) = bases.choose(&mut rng).unwrap();
        let mut t = base.clone();
        for _ in 0..rng.gen_range(1..=3) {
            t = mutate(sr, &mut rng, &t);
        }
        if infer_simple(sr, &PlainCtx::new(), &t).is_ok() {
            out.push((format!("{name}/{}", out.len()), t));
        }
    }
    out
}

fn name_hash(s: &str) -> u64 {
    s.bytes().fold(0xcbf29ce484222325, |h, b| (h ^ b as u64).wrapping_mul(0x100000001b3))
}

fn random_grade(sr: &Semiring, rng: &mut ChaCha8Rng) -> Grade {
    match sr.elements() {
        Some(els) => *els.choose(rng).unwrap(),
        None => Grade(rng.gen_range(0..4)),
    }
}

fn mutate(sr: &Semiring, rng: &mut ChaCha8Rng, t: &T) -> T {
    if rng.gen_bool(0.15) {
        let q = random_grade(sr, rng);
        return app(lam("w", q, unit_ty(), t.clone()), unit());
    }
    let target = rng.gen_range(0..crate::syntax::size(t));
    let mut i = 0;
    rewrite_at(t, target, &mut i, &mut |node| match &**node {
        Term::Lam(x, _, a, b) => Some(Rc::new(Term::Lam(x.clone(), random_grade(sr, rng), a.clone(), b.clone()))),
        Term::UnitVal => Some(match rng.gen_range(0..3) {
            0 => app(lam("z", random_grade(sr, rng), unit_ty(), var("z")), unit()),
            1 => app(lam("z", random_grade(sr, rng), unit_ty(), unit()), unit()),
            _ => unit_elim(unit(), unit()),
        }),
        Term::Var(x) => Some(unit_elim(unit(), var(x))),
        Term::App(f, a) => Some(app(f.clone(), unit_elim(unit(), a.clone()))),
        _ => None,
    })
}

/// Apply `f` at the `target`-th node in preorder, if it returns a rewrite.
fn rewrite_at(t: &T, target: usize, i: &mut usize, f: &mut dyn FnMut(&T) -> Option<T>) -> T {
    let here = *i;
    *i += 1;
    if here == target {
        if let Some(r) = f(t) {
            return r;
        }
    }
    let mut go = |c: &T| rewrite_at(c, target, i, f);
    use Term::*;
    Rc::new(match &**t {
        Type | Unit | UnitVal | Var(_) => return t.clone(),
        UnitElim(a, b) => UnitElim(go(a), go(b)),
        Pi(x, q, a, b) => Pi(x.clone(), *q, go(a), go(b)),
        Lam(x, q, a, b) => Lam(x.clone(), *q, go(a), go(b)),
        App(a, b) => App(go(a), go(b)),
        Sigma(x, q, a, b) => Sigma(x.clone(), *q, go(a), go(b)),
        Pair(q, a, b) => Pair(*q, go(a), go(b)),
        SigmaElim(x, y, a, b) => SigmaElim(x.clone(), y.clone(), go(a), go(b)),
        Sum(a, b) => Sum(go(a), go(b)),
        Inj1(a) => Inj1(go(a)),
        Inj2(a) => Inj2(go(a)),
        Case(q, s, a, b) => Case(*q, go(s), go(a), go(b)),
        BoxTy(q, a) => BoxTy(*q, go(a)),
        Box(q, a) => Box(*q, go(a)),
        LetBox(x, a, b) => LetBox(x.clone(), go(a), go(b)),
        Arrow(q, a, b) => Arrow(*q, go(a), go(b)),
        Tensor(a, b) => Tensor(go(a), go(b)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_suite_passes_on_a_small_config() {
        let cfg = Config { seed: 3, mutants: 60, swaps: 30, controls: 6, ..Config::default() };
        let mut failures = Vec::new();
        for s in Suite::ALL {
            let cases = run(s, &cfg);
            assert!(!cases.is_empty(), "{s} ran no cases");
            failures.extend(cases.into_iter().filter(|c| c.verdict.is_err()).map(|c| c.to_string()));
        }
        assert!(failures.is_empty(), "{}", failures.join("\n"));
    }

    #[test]
    fn mutants_are_reproducible() {
        let l = Semiring::linearity();
        assert_eq!(mutants(&l, 9, 20), mutants(&l, 9, 20));
        assert_eq!(mutants(&l, 9, 20).len(), 20);
    }

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.to_string().parse::<Suite>().unwrap(), s);
        }
    }
}
