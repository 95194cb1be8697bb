use std::collections::{BTreeMap, BTreeSet};

use proptest::prelude::*;

use grad_core::algebra::{Grade, GradeMatrix, GradeVector, Semiring};
use grad_core::contexts::PlainCtx;
use grad_core::corpus;
use grad_core::dep_checker::defeq;
use grad_core::heap_machine::{count_balance, Heap, Machine, SimpleTyper};
use grad_core::program::closed_main;
use grad_core::subst_eval;
use grad_core::suites::{context_from_heap, mutants};
use grad_core::syntax::*;

mod common;
use common::{grade, name, term};

fn finite() -> Vec<Semiring> {
    ["trivial", "bool", "bool-ordered", "linearity", "five-point", "security"]
        .iter()
        .map(|n| Semiring::by_name(n).unwrap())
        .collect()
}

fn all_semirings() -> Vec<Semiring> {
    let mut v = finite();
    v.push(Semiring::nat());
    v.push(Semiring::nat_leq());
    v
}

/// A semiring plus `n` of its elements.
fn with_elems(n: usize) -> impl Strategy<Value = (Semiring, Vec<Grade>)> {
    (0..all_semirings().len(), prop::collection::vec(0u64..64, n)).prop_map(|(i, raw)| {
        let s = all_semirings().swap_remove(i);
        let els = match s.elements() {
            Some(e) => raw.iter().map(|&r| e[r as usize % e.len()]).collect(),
            None => raw.iter().map(|&r| Grade(r % 6)).collect(),
        };
        (s, els)
    })
}

fn vec_of(s: &Semiring, raw: &[u64]) -> GradeVector {
    GradeVector(match s.elements() {
        Some(e) => raw.iter().map(|&r| e[r as usize % e.len()]).collect(),
        None => raw.iter().map(|&r| Grade(r % 6)).collect(),
    })
}

proptest! {
    #[test]
    fn semiring_laws((s, g) in with_elems(3)) {
        let (a, b, c) = (g[0], g[1], g[2]);
        prop_assert_eq!(s.add(a, b), s.add(b, a));
        prop_assert_eq!(s.add(s.add(a, b), c), s.add(a, s.add(b, c)));
        prop_assert_eq!(s.mul(s.mul(a, b), c), s.mul(a, s.mul(b, c)));
        prop_assert_eq!(s.mul(a, s.add(b, c)), s.add(s.mul(a, b), s.mul(a, c)));
        prop_assert_eq!(s.mul(s.add(a, b), c), s.add(s.mul(a, c), s.mul(b, c)));
        prop_assert_eq!(s.mul(s.zero(), a), s.zero());
        prop_assert_eq!(s.add(s.zero(), a), a);
        prop_assert_eq!(s.mul(s.one(), a), a);
    }

    #[test]
    fn order_is_monotone((s, g) in with_elems(3)) {
        let (a, b, c) = (g[0], g[1], g[2]);
        prop_assert!(s.leq(a, a));
        if s.leq(a, b) {
            prop_assert!(s.leq(s.add(a, c), s.add(b, c)));
            prop_assert!(s.leq(s.mul(a, c), s.mul(b, c)));
            prop_assert!(s.leq(s.mul(c, a), s.mul(c, b)));
            if s.leq(b, c) {
                prop_assert!(s.leq(a, c));
            }
        }
    }

    #[test]
    fn decrement_is_sound_and_maximal((s, g) in with_elems(2)) {
        let (q, r) = (g[0], g[1]);
        match s.decrement(q, r) {
            Some(d) => {
                prop_assert!(s.leq(s.add(d, r), q));
                if let Some(els) = s.elements() {
                    for e in els {
                        if s.leq(s.add(e, r), q) {
                            prop_assert!(!(s.leq(d, e) && d != e), "{} is above {}", s.show(e), s.show(d));
                        }
                    }
                }
            }
            None => {
                if let Some(els) = s.elements() {
                    prop_assert!(els.iter().all(|&e| !s.leq(s.add(e, r), q)));
                }
            }
        }
    }

    #[test]
    fn solve_add_solves((s, g) in with_elems(2)) {
        for x in s.solve_add(g[0], g[1]) {
            prop_assert_eq!(s.add(x, g[0]), g[1]);
        }
    }

    #[test]
    fn semimodule_laws((s, g) in with_elems(2), u in prop::collection::vec(0u64..64, 4), w in prop::collection::vec(0u64..64, 4)) {
        let (a, b) = (g[0], g[1]);
        let (u, w) = (vec_of(&s, &u), vec_of(&s, &w));
        let uw = s.vec_add(&u, &w).unwrap();
        prop_assert_eq!(s.vec_scale(a, &uw), s.vec_add(&s.vec_scale(a, &u), &s.vec_scale(a, &w)).unwrap());
        prop_assert_eq!(s.vec_scale(s.add(a, b), &u), s.vec_add(&s.vec_scale(a, &u), &s.vec_scale(b, &u)).unwrap());
        prop_assert_eq!(s.vec_scale(s.mul(a, b), &u), s.vec_scale(a, &s.vec_scale(b, &u)));
        prop_assert_eq!(s.vec_scale(s.one(), &u), u.clone());
        prop_assert_eq!(s.vec_add(&u, &s.zeros(4)).unwrap(), u);
    }

    #[test]
    fn matrix_products_associate(i in 0..all_semirings().len(), raw in prop::collection::vec(0u64..64, 3 + 9 + 9)) {
        let s = all_semirings().swap_remove(i);
        let v = vec_of(&s, &raw[..3]);
        let m = |r: &[u64]| GradeMatrix { rows: r.chunks(3).map(|c| vec_of(&s, c).0).collect() };
        let (a, b) = (m(&raw[3..12]), m(&raw[12..]));
        let left = s.vec_mat_mul(&s.vec_mat_mul(&v, &a).unwrap(), &b).unwrap();
        let right = s.vec_mat_mul(&v, &s.mat_mul(&a, &b).unwrap()).unwrap();
        prop_assert_eq!(left, right);
        prop_assert_eq!(s.mat_mul(&a, &s.identity(3)).unwrap(), a);
    }
}

proptest! {
    #[test]
    fn print_then_parse_is_identity(t in term()) {
        let s = Semiring::linearity();
        let text = print(&s, &t);
        let back = parse_term(&text, &s).map_err(|e| TestCaseError::fail(format!("{text}: {e}")))?;
        prop_assert_eq!(back, t, "{}", text);
    }

    #[test]
    fn substitution_free_variables(b in term(), a in term(), x in name()) {
        let r = subst(&b, &a, &x);
        let mut allowed: BTreeSet<Name> = free_vars(&b);
        allowed.remove(&x);
        if mentions(&b, &x) && free_vars(&b).contains(&x) {
            allowed.extend(free_vars(&a));
        }
        prop_assert!(free_vars(&r).is_subset(&allowed), "{:?} not within {:?}", free_vars(&r), allowed);
        if !free_vars(&b).contains(&x) {
            prop_assert!(alpha_eq(&r, &b));
        }
    }

    #[test]
    fn substituting_a_variable_for_itself(b in term(), x in name()) {
        prop_assert!(alpha_eq(&subst(&b, &var(&x), &x), &b));
    }

    #[test]
    fn renaming_bound_variables_preserves_alpha(b in term(), x in name()) {
        let l1 = lam(&x, Grade(1), unit_ty(), b.clone());
        let fresh = format!("{x}%9");
        let l2 = lam(&fresh, Grade(1), unit_ty(), subst(&b, &var(&fresh), &x));
        prop_assert!(alpha_eq(&l1, &l2));
        prop_assert!(alpha_eq(&l1, &l1));
    }

    #[test]
    fn defeq_is_reflexive_and_symmetric(a in term(), b in term()) {
        let ctx = PlainCtx::new();
        if let Ok(r) = defeq(&ctx, &a, &a, 2000) {
            prop_assert!(r);
        }
        if let (Ok(ab), Ok(ba)) = (defeq(&ctx, &a, &b, 2000), defeq(&ctx, &b, &a, 2000)) {
            prop_assert_eq!(ab, ba);
        }
    }

    #[test]
    fn defeq_contains_reduction_and_is_transitive(a in term()) {
        let ctx = PlainCtx::new();
        let Some(b) = subst_eval::step(&a) else { return Ok(()) };
        let Ok(ab) = defeq(&ctx, &a, &b, 2000) else { return Ok(()) };
        prop_assert!(ab);
        if let Some(c) = subst_eval::step(&b) {
            if let (Ok(true), Ok(ac)) = (defeq(&ctx, &b, &c, 2000), defeq(&ctx, &a, &c, 2000)) {
                prop_assert!(ac);
            }
        }
    }

    #[test]
    fn pi_grades_are_injective(a in term(), b in term(), q in grade(), r in grade()) {
        let ctx = PlainCtx::new();
        if let Ok(eq) = defeq(&ctx, &pi("x", q, a.clone(), b.clone()), &pi("x", r, a, b), 2000) {
            prop_assert_eq!(eq, q == r);
        }
    }

    #[test]
    fn machine_runs_keep_heaps_proper_and_balanced(seed in any::<u64>(), pick in 0usize..3) {
        let s = vec![Semiring::nat(), Semiring::linearity(), Semiring::boolean_ordered()].swap_remove(pick);
        let m = Machine { sr: &s, typer: &SimpleTyper };
        for (_, t) in mutants(&s, seed, 3) {
            let run = m.run(&Heap::new(), &t, s.one(), &BTreeSet::new(), &mut Fresh::new(), 10_000);
            for rec in &run.steps {
                prop_assert!(rec.new_heap.is_proper() && rec.new_heap.is_acyclic());
                prop_assert_eq!(rec.consumed.len(), rec.new_heap.len());
                let g = context_from_heap(&s, &rec.new_heap);
                prop_assert!(g.is_some());
                prop_assert!(count_balance(&s, &rec.new_heap, &g.unwrap()));
            }
        }
    }
}

#[test]
fn defeq_contains_corpus_reductions() {
    for ex in corpus::all() {
        let mut a = closed_main(&ex.program).unwrap();
        let ctx = PlainCtx::new();
        while let Some(b) = subst_eval::step(&a) {
            assert!(defeq(&ctx, &a, &b, 10_000).unwrap(), "{}", ex.name);
            a = b;
        }
    }
}

#[test]
fn rename_free_is_alpha_stable() {
    let s = Semiring::linearity();
    let t = parse_term("\\y :1 Unit. x y", &s).unwrap();
    let m: BTreeMap<Name, Name> = [("x".to_string(), "y".to_string())].into();
    let r = rename_free(&t, &m);
    assert!(free_vars(&r).contains("y"));
    assert!(!alpha_eq(&r, &parse_term("\\y :1 Unit. y y", &s).unwrap()));
}
