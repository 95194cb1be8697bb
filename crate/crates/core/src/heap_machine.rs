//! The usage-instrumented heap machine, compatibility, and the matrix and
//! graph views of a heap.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::rc::Rc;

use crate::algebra::{Grade, GradeMatrix, GradeVector, Semiring};
use crate::contexts::{grades_of, CtxEntry, PlainCtx, UsageCtx};
use crate::dep_checker::{self, DEFAULT_FUEL};
use crate::error::TypeError;
use crate::simple_checker;
use crate::subst_eval::is_value;
use crate::syntax::{alpha_eq, all_names, free_vars, print, subst_many, var, Fresh, Name, Term, T};

/// Supplies types and embedded contexts for freshly allocated entries.
pub trait Typer {
    fn infer(&self, sr: &Semiring, plain: &PlainCtx, a: &T) -> Result<(T, GradeVector), TypeError>;
    fn check(&self, sr: &Semiring, plain: &PlainCtx, a: &T, ty: &T) -> Result<GradeVector, TypeError>;
    fn same_type(&self, plain: &PlainCtx, a: &T, b: &T) -> bool;
}

pub struct SimpleTyper;

impl Typer for SimpleTyper {
    fn infer(&self, sr: &Semiring, plain: &PlainCtx, a: &T) -> Result<(T, GradeVector), TypeError> {
        simple_checker::infer_simple(sr, plain, a)
    }
    fn check(&self, sr: &Semiring, plain: &PlainCtx, a: &T, ty: &T) -> Result<GradeVector, TypeError> {
        simple_checker::check_against_simple(sr, plain, a, ty)
    }
    fn same_type(&self, _: &PlainCtx, a: &T, b: &T) -> bool {
        alpha_eq(a, b)
    }
}

pub struct DepTyper {
    pub fuel: usize,
}

impl Default for DepTyper {
    fn default() -> Self {
        DepTyper { fuel: DEFAULT_FUEL }
    }
}

impl Typer for DepTyper {
    fn infer(&self, sr: &Semiring, plain: &PlainCtx, a: &T) -> Result<(T, GradeVector), TypeError> {
        dep_checker::infer_dep(sr, plain, a, self.fuel)
    }
    fn check(&self, sr: &Semiring, plain: &PlainCtx, a: &T, ty: &T) -> Result<GradeVector, TypeError> {
        dep_checker::check_against_dep(sr, plain, a, ty, self.fuel)
    }
    fn same_type(&self, plain: &PlainCtx, a: &T, b: &T) -> bool {
        dep_checker::defeq(plain, a, b, self.fuel).unwrap_or(false)
    }
}

/// Ignores types: every allocation gets type Unit and a zero context.
pub struct ErasedTyper;

impl Typer for ErasedTyper {
    fn infer(&self, sr: &Semiring, plain: &PlainCtx, _: &T) -> Result<(T, GradeVector), TypeError> {
        Ok((Rc::new(Term::Unit), sr.zeros(plain.len())))
    }
    fn check(&self, sr: &Semiring, plain: &PlainCtx, _: &T, _: &T) -> Result<GradeVector, TypeError> {
        Ok(sr.zeros(plain.len()))
    }
    fn same_type(&self, _: &PlainCtx, _: &T, _: &T) -> bool {
        true
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeapEntry {
    pub name: Name,
    pub allowed: Grade,
    /// Embedded context, always over the full heap prefix before this entry.
    pub ctx: UsageCtx,
    pub term: T,
    pub ty: T,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Heap {
    pub entries: Vec<HeapEntry>,
}

impl Heap {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Appends an entry whose embedded context is given as a grade vector
    /// over the current heap.
    pub fn push(&mut self, name: &str, allowed: Grade, grades: GradeVector, term: T, ty: T) {
        let ctx = self.plain().with_grades(&grades).expect("embedded grades cover the heap prefix");
        self.entries.push(HeapEntry { name: name.to_string(), allowed, ctx, term, ty });
    }

    /// ⌊H⌋ with each assignment recorded as a definition.
    pub fn plain(&self) -> PlainCtx {
        PlainCtx {
            entries: self
                .entries
                .iter()
                .map(|e| CtxEntry { name: e.name.clone(), ty: e.ty.clone(), def: Some(e.term.clone()) })
                .collect(),
        }
    }

    /// H̄
    pub fn allowed(&self) -> GradeVector {
        GradeVector(self.entries.iter().map(|e| e.allowed).collect())
    }

    /// ⌊⌊H⌋⌋: names and terms only.
    pub fn bare(&self) -> Vec<(Name, T)> {
        self.entries.iter().map(|e| (e.name.clone(), e.term.clone())).collect()
    }

    pub fn index_of(&self, x: &str) -> Option<usize> {
        self.entries.iter().rposition(|e| e.name == x)
    }

    pub fn is_proper(&self) -> bool {
        let names: BTreeSet<&str> = self.entries.iter().map(|e| e.name.as_str()).collect();
        names.len() == self.entries.len()
    }

    pub fn is_acyclic(&self) -> bool {
        self.entries.iter().enumerate().all(|(i, e)| {
            let earlier: BTreeSet<&str> = self.entries[..i].iter().map(|e| e.name.as_str()).collect();
            free_vars(&e.term).iter().all(|x| earlier.contains(x.as_str()))
        })
    }

    /// Every name in the heap, for building fresh-name supports.
    pub fn names(&self) -> BTreeSet<Name> {
        let mut out = BTreeSet::new();
        for e in &self.entries {
            out.insert(e.name.clone());
            all_names(&e.term, &mut out);
            all_names(&e.ty, &mut out);
        }
        out
    }

    pub fn show(&self, sr: &Semiring) -> String {
        let parts: Vec<String> = self
            .entries
            .iter()
            .map(|e| format!("{} ↦{} {}", e.name, sr.show(e.allowed), print(sr, &e.term)))
            .collect();
        format!("[{}]", parts.join(", "))
    }
}

/// a{H}: substitute heap assignments, last first.
pub fn flatten_heap(a: &T, h: &Heap) -> T {
    crate::contexts::flatten_defs(a, &h.plain())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Stuck {
    ResourceExhausted(Name),
    CopyBelowOne(Name),
    IllFormed(String),
}

impl Stuck {
    pub fn reason(&self) -> String {
        match self {
            Stuck::ResourceExhausted(x) => format!("resource-exhausted {x}"),
            Stuck::CopyBelowOne(x) => format!("copy-below-one {x}"),
            Stuck::IllFormed(s) => format!("ill-formed {s}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepRecord {
    pub new_heap: Heap,
    pub consumed: GradeVector,
    pub added: UsageCtx,
    pub reduct: T,
    pub copy: Grade,
    pub rule: &'static str,
    /// Some allocation could not be typed and got a zero context.
    pub untyped: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StepOutcome {
    Step(StepRecord),
    Value,
    Stuck(Stuck),
}

pub struct Machine<'a> {
    pub sr: &'a Semiring,
    pub typer: &'a dyn Typer,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum End {
    Value,
    Stuck(Stuck),
    Fuel,
}

/// Result of iterating the machine.
#[derive(Debug, Clone)]
pub struct Run {
    pub initial_heap: Heap,
    pub initial_term: T,
    pub steps: Vec<StepRecord>,
    pub heap: Heap,
    pub term: T,
    /// u′ at final heap length.
    pub consumed: GradeVector,
    /// Γ′: all allocations concatenated.
    pub added: UsageCtx,
    pub end: End,
}

pub fn initial_support(h: &Heap, a: &T) -> BTreeSet<Name> {
    let mut s = h.names();
    all_names(a, &mut s);
    s
}

impl Machine<'_> {
    fn alloc_ctx(&self, h: &Heap, res: Result<GradeVector, TypeError>, untyped: &mut bool) -> UsageCtx {
        let grades = res.unwrap_or_else(|_| {
            *untyped = true;
            self.sr.zeros(h.len())
        });
        h.plain().with_grades(&grades).expect("typer returns a vector over the heap")
    }

    fn infer_or_unit(&self, h: &Heap, a: &T, untyped: &mut bool) -> (T, UsageCtx) {
        match self.typer.infer(self.sr, &h.plain(), a) {
            Ok((ty, u)) => (ty, h.plain().with_grades(&u).expect("typer returns a vector over the heap")),
            Err(_) => {
                *untyped = true;
                (Rc::new(Term::Unit), h.plain().with_grades(&self.sr.zeros(h.len())).unwrap())
            }
        }
    }

    fn fresh_name(&self, base: &str, support: &mut BTreeSet<Name>, fresh: &mut Fresh) -> Name {
        let x = fresh.name(base, |c| support.contains(c));
        support.insert(x.clone());
        x
    }

    fn no_alloc(&self, h: &Heap, reduct: T, r: Grade, rule: &'static str) -> StepOutcome {
        StepOutcome::Step(StepRecord {
            new_heap: h.clone(),
            consumed: self.sr.zeros(h.len()),
            added: UsageCtx::new(),
            reduct,
            copy: r,
            rule,
            untyped: false,
        })
    }

    #[allow(clippy::too_many_arguments)]
    fn congruence(
        &self,
        h: &Heap,
        sub: &T,
        r: Grade,
        support: &mut BTreeSet<Name>,
        fresh: &mut Fresh,
        rule: &'static str,
        wrap: impl FnOnce(T) -> T,
    ) -> StepOutcome {
        match self.step(h, sub, r, support, fresh) {
            StepOutcome::Step(mut rec) => {
                rec.reduct = wrap(rec.reduct);
                rec.rule = rule;
                StepOutcome::Step(rec)
            }
            StepOutcome::Value => StepOutcome::Stuck(Stuck::IllFormed(format!(
                "{} cannot be eliminated here",
                print(self.sr, sub)
            ))),
            stuck => stuck,
        }
    }

    /// One machine transition of `r` copies of `a`.
    pub fn step(&self, h: &Heap, a: &T, r: Grade, support: &mut BTreeSet<Name>, fresh: &mut Fresh) -> StepOutcome {
        let sr = self.sr;
        match &**a {
            Term::Var(x) => {
                let Some(i) = h.index_of(x) else {
                    return StepOutcome::Stuck(Stuck::IllFormed(format!("unbound {x}")));
                };
                if !sr.leq(sr.one(), r) {
                    return StepOutcome::Stuck(Stuck::CopyBelowOne(x.clone()));
                }
                let Some(q) = sr.decrement(h.entries[i].allowed, r) else {
                    return StepOutcome::Stuck(Stuck::ResourceExhausted(x.clone()));
                };
                let mut nh = h.clone();
                nh.entries[i].allowed = q;
                let mut consumed = sr.zeros(h.len());
                consumed.0[i] = r;
                StepOutcome::Step(StepRecord {
                    new_heap: nh,
                    consumed,
                    added: UsageCtx::new(),
                    reduct: h.entries[i].term.clone(),
                    copy: r,
                    rule: "Var",
                    untyped: false,
                })
            }
            Term::App(f, arg) => match &**f {
                Term::Lam(y, q, dom, body) => {
                    let mut untyped = false;
                    let g = self.typer.check(sr, &h.plain(), arg, dom);
                    let ctx = self.alloc_ctx(h, g, &mut untyped);
                    let x = self.fresh_name(y, support, fresh);
                    let grade = sr.mul(r, *q);
                    self.allocate(h, vec![(x.clone(), grade, ctx, arg.clone(), dom.clone())], r, "AppBeta", untyped, |m| {
                        m.insert(y.clone(), var(&x));
                        subst_many(body, m, fresh)
                    })
                }
                _ => self.congruence(h, f, r, support, fresh, "AppL", |f2| Rc::new(Term::App(f2, arg.clone()))),
            },
            Term::UnitElim(s, b) => match &**s {
                Term::UnitVal => self.no_alloc(h, b.clone(), r, "UnitBeta"),
                _ => self.congruence(h, s, r, support, fresh, "UnitL", |s2| Rc::new(Term::UnitElim(s2, b.clone()))),
            },
            Term::LetBox(y, s, b) => match &**s {
                Term::Box(q, inner) => {
                    let mut untyped = false;
                    let (ty, ctx) = self.infer_or_unit(h, inner, &mut untyped);
                    let x = self.fresh_name(y, support, fresh);
                    let grade = sr.mul(r, *q);
                    self.allocate(h, vec![(x.clone(), grade, ctx, inner.clone(), ty)], r, "LetBoxBeta", untyped, |m| {
                        m.insert(y.clone(), var(&x));
                        subst_many(b, m, fresh)
                    })
                }
                _ => self.congruence(h, s, r, support, fresh, "LetBoxL", |s2| {
                    Rc::new(Term::LetBox(y.clone(), s2, b.clone()))
                }),
            },
            Term::SigmaElim(y1, y2, s, b) => match &**s {
                Term::Pair(q, a1, a2) => {
                    let mut untyped = false;
                    let (t1, c1) = self.infer_or_unit(h, a1, &mut untyped);
                    let x1 = self.fresh_name(y1, support, fresh);
                    let g1 = sr.mul(r, *q);
                    // the second component's context sees the first entry at grade 0
                    let mut h1 = h.clone();
                    h1.entries.push(HeapEntry { name: x1.clone(), allowed: g1, ctx: c1.clone(), term: a1.clone(), ty: t1.clone() });
                    let (t2, c2) = self.infer_or_unit(&h1, a2, &mut untyped);
                    let x2 = self.fresh_name(y2, support, fresh);
                    self.allocate(
                        h,
                        vec![(x1.clone(), g1, c1, a1.clone(), t1), (x2.clone(), r, c2, a2.clone(), t2)],
                        r,
                        "ProjBeta",
                        untyped,
                        |m| {
                            m.insert(y1.clone(), var(&x1));
                            m.insert(y2.clone(), var(&x2));
                            subst_many(b, m, fresh)
                        },
                    )
                }
                _ => self.congruence(h, s, r, support, fresh, "ProjL", |s2| {
                    Rc::new(Term::SigmaElim(y1.clone(), y2.clone(), s2, b.clone()))
                }),
            },
            Term::Case(q, s, b1, b2) => match &**s {
                Term::Inj1(v) => self.no_alloc(h, Rc::new(Term::App(b1.clone(), v.clone())), r, "CaseOne"),
                Term::Inj2(v) => self.no_alloc(h, Rc::new(Term::App(b2.clone(), v.clone())), r, "CaseTwo"),
                _ => {
                    let rq = sr.mul(r, *q);
                    match self.congruence(h, s, rq, support, fresh, "CaseL", |s2| {
                        Rc::new(Term::Case(*q, s2, b1.clone(), b2.clone()))
                    }) {
                        StepOutcome::Step(mut rec) => {
                            rec.copy = r;
                            StepOutcome::Step(rec)
                        }
                        other => other,
                    }
                }
            },
            _ if is_value(a) => StepOutcome::Value,
            _ => StepOutcome::Stuck(Stuck::IllFormed(print(sr, a))),
        }
    }

    #[allow(clippy::type_complexity)]
    fn allocate(
        &self,
        h: &Heap,
        new: Vec<(Name, Grade, UsageCtx, T, T)>,
        r: Grade,
        rule: &'static str,
        untyped: bool,
        reduct: impl FnOnce(&mut std::collections::BTreeMap<Name, T>) -> T,
    ) -> StepOutcome {
        let mut nh = h.clone();
        let mut added = UsageCtx::new();
        for (x, g, ctx, term, ty) in new {
            // pad to the prefix length (the second pair component sees the first)
            let mut ctx = ctx;
            let prefix = nh.plain();
            if ctx.len() < prefix.len() {
                let grades = grades_of(&ctx).padded(prefix.len(), self.sr.zero());
                ctx = prefix.with_grades(&grades).expect("padded to prefix");
            }
            added.push(&x, g, ty.clone(), Some(term.clone()));
            nh.entries.push(HeapEntry { name: x, allowed: g, ctx, term, ty });
        }
        let mut m = std::collections::BTreeMap::new();
        let reduct = reduct(&mut m);
        StepOutcome::Step(StepRecord {
            consumed: self.sr.zeros(nh.len()),
            new_heap: nh,
            added,
            reduct,
            copy: r,
            rule,
            untyped,
        })
    }

    /// Iterate from `(h, a)` with copy `r`. The support is extended with
    /// every name in the heap and the term.
    pub fn run(&self, h: &Heap, a: &T, r: Grade, support: &BTreeSet<Name>, fresh: &mut Fresh, fuel: usize) -> Run {
        let mut support: BTreeSet<Name> = support.union(&initial_support(h, a)).cloned().collect();
        let mut run = Run {
            initial_heap: h.clone(),
            initial_term: a.clone(),
            steps: Vec::new(),
            heap: h.clone(),
            term: a.clone(),
            consumed: self.sr.zeros(h.len()),
            added: UsageCtx::new(),
            end: End::Fuel,
        };
        for _ in 0..fuel {
            match self.step(&run.heap, &run.term, r, &mut support, fresh) {
                StepOutcome::Step(rec) => {
                    let n = rec.new_heap.len();
                    let prev = run.consumed.padded(n, self.sr.zero());
                    run.consumed = self.sr.vec_add(&prev, &rec.consumed).expect("same length");
                    run.added = run.added.concat(&rec.added);
                    run.heap = rec.new_heap.clone();
                    run.term = rec.reduct.clone();
                    run.steps.push(rec);
                }
                StepOutcome::Value => {
                    run.end = End::Value;
                    return run;
                }
                StepOutcome::Stuck(s) => {
                    run.end = End::Stuck(s);
                    return run;
                }
            }
        }
        if is_value(&run.term) {
            run.end = End::Value;
        }
        run
    }
}

/// One trace line: `[H] a =>^r [H'; u'; Γ4] a'`.
pub fn show_step(sr: &Semiring, h: &Heap, a: &T, rec: &StepRecord) -> String {
    let added: Vec<String> = rec
        .added
        .entries
        .iter()
        .map(|e| format!("{} :{} {}", e.name, sr.show(e.grade), print(sr, &e.ty)))
        .collect();
    format!(
        "{} {} =>^{} [{}; {}; {}] {}",
        h.show(sr),
        print(sr, a),
        sr.show(rec.copy),
        rec.new_heap.show(sr).trim_start_matches('[').trim_end_matches(']'),
        sr.show_vec(&rec.consumed),
        added.join(", "),
        print(sr, &rec.reduct)
    )
}

/// Row i holds the embedded grades of entry i, padded with zeros.
pub fn transformation_matrix(sr: &Semiring, h: &Heap) -> GradeMatrix {
    let n = h.len();
    GradeMatrix {
        rows: h.entries.iter().map(|e| grades_of(&e.ctx).padded(n, sr.zero()).0).collect(),
    }
}

/// H ⊢ Γ: peel the last entry, which must carry exactly the context's
/// grade, check its definiens under its embedded context, and recurse with
/// Γ1 + q·Γ2.
pub fn compat(sr: &Semiring, typer: &dyn Typer, h: &Heap, usage: &UsageCtx) -> Result<(), String> {
    if h.len() != usage.len() {
        return Err(format!("heap has {} entries, context {}", h.len(), usage.len()));
    }
    for (e, u) in h.entries.iter().zip(&usage.entries) {
        if e.name != u.name {
            return Err(format!("heap entry {} against context entry {}", e.name, u.name));
        }
        if !alpha_eq(&e.ty, &u.ty) && !typer.same_type(&h.plain(), &e.ty, &u.ty) {
            return Err(format!("type of {} differs between heap and context", e.name));
        }
    }
    let mut g = grades_of(usage);
    for i in (0..h.len()).rev() {
        let e = &h.entries[i];
        if g.0[i] != e.allowed {
            return Err(format!(
                "{} is allowed {} but the context demands {}",
                e.name,
                sr.show(e.allowed),
                sr.show(g.0[i])
            ));
        }
        let prefix = PlainCtx { entries: h.plain().entries[..i].to_vec() };
        if e.ctx.len() != i || !e.ctx.erase().same_as(&prefix) {
            return Err(format!("embedded context of {} does not match the heap prefix", e.name));
        }
        let u = typer
            .check(sr, &prefix, &e.term, &e.ty)
            .map_err(|err| format!("definiens of {} does not check: {err}", e.name))?;
        let declared = grades_of(&e.ctx);
        if !sr.vec_leq(&u, &declared) {
            return Err(format!(
                "definiens of {} uses {} but its context grants {}",
                e.name,
                sr.show_vec(&u),
                sr.show_vec(&declared)
            ));
        }
        let rest = GradeVector(g.0[..i].to_vec());
        g = sr.vec_affine(&rest, e.allowed, &declared).map_err(|e| e.to_string())?;
    }
    Ok(())
}

/// H̄ = H̄ × ⟨H⟩ + Γ̄
pub fn count_balance(sr: &Semiring, h: &Heap, usage: &GradeVector) -> bool {
    let hv = h.allowed();
    let m = transformation_matrix(sr, h);
    match sr.vec_mat_mul(&hv, &m).and_then(|p| sr.vec_add(&p, usage)) {
        Ok(rhs) => rhs == hv,
        Err(_) => false,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MemoryGraph {
    /// Node 0 is the source `vg`; node i+1 is heap entry i.
    pub labels: Vec<Name>,
    pub edges: Vec<(usize, usize, Grade)>,
}

/// Weighted DAG: source edges from the context grades, entry edges from the
/// embedded contexts. Zero-weight edges are omitted.
pub fn memory_graph(sr: &Semiring, h: &Heap, usage: &GradeVector) -> MemoryGraph {
    let mut labels = vec!["vg".to_string()];
    labels.extend(h.entries.iter().map(|e| e.name.clone()));
    let mut edges = Vec::new();
    for (i, &g) in usage.0.iter().enumerate().rev() {
        if g != sr.zero() {
            edges.push((0, i + 1, g));
        }
    }
    for (j, e) in h.entries.iter().enumerate().rev() {
        for (i, ue) in e.ctx.entries.iter().enumerate().rev() {
            if ue.grade != sr.zero() {
                edges.push((j + 1, i + 1, ue.grade));
            }
        }
    }
    MemoryGraph { labels, edges }
}

impl MemoryGraph {
    /// Sum over all source paths of the product of weights, per node.
    pub fn path_sums(&self, sr: &Semiring) -> Vec<Grade> {
        let n = self.labels.len();
        let mut w = vec![sr.zero(); n];
        w[0] = sr.one();
        // nodes in topological order: source, then entries from last to first
        let order: Vec<usize> = std::iter::once(0).chain((1..n).rev()).collect();
        for &v in &order {
            for &(from, to, g) in &self.edges {
                if from == v {
                    w[to] = sr.add(w[to], sr.mul(w[v], g));
                }
            }
        }
        w
    }

    /// All source paths to `target`, as node sequences.
    pub fn paths_to(&self, target: usize) -> Vec<Vec<usize>> {
        fn go(g: &MemoryGraph, v: usize, target: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if v == target {
                out.push(cur.clone());
                return;
            }
            for &(from, to, _) in &g.edges {
                if from == v {
                    cur.push(to);
                    go(g, to, target, cur, out);
                    cur.pop();
                }
            }
        }
        let mut out = Vec::new();
        go(self, 0, target, &mut vec![0], &mut out);
        out
    }

    pub fn weight(&self, from: usize, to: usize) -> Option<Grade> {
        self.edges.iter().find(|e| e.0 == from && e.1 == to).map(|e| e.2)
    }

    pub fn to_dot(&self, sr: &Semiring) -> String {
        let mut s = String::from("digraph heap {\n");
        for (i, l) in self.labels.iter().enumerate() {
            let _ = writeln!(s, "  n{i} [label=\"{l}\"];");
        }
        for (from, to, g) in &self.edges {
            let _ = writeln!(s, "  n{from} -> n{to} [label=\"{}\"];", sr.show(*g));
        }
        s.push_str("}\n");
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::*;

    fn v(xs: &[u64]) -> GradeVector {
        GradeVector(xs.iter().map(|&x| Grade(x)).collect())
    }

    /// x1 ↦7 unit, x2 ↦3 (x1:2 ⊢ ...), x3 ↦1 (x1:1, x2:2 ⊢ ...)
    pub(crate) fn heap_ex() -> Heap {
        let mut h = Heap::new();
        h.push("x1", Grade(7), v(&[]), unit(), unit_ty());
        h.push("x2", Grade(3), v(&[2]), unit_elim(var("x1"), var("x1")), unit_ty());
        h.push(
            "x3",
            Grade(1),
            v(&[1, 2]),
            unit_elim(var("x1"), unit_elim(var("x2"), var("x2"))),
            unit_ty(),
        );
        h
    }

    fn heap_ex_ctx(h: &Heap) -> UsageCtx {
        h.plain().with_grades(&v(&[0, 1, 1])).unwrap()
    }

    #[test]
    fn var_lookup_decrements() {
        let n = Semiring::nat();
        let m = Machine { sr: &n, typer: &SimpleTyper };
        let mut h = Heap::new();
        h.push("x", Grade(3), v(&[]), unit(), unit_ty());
        let out = m.step(&h, &var("x"), Grade(1), &mut BTreeSet::new(), &mut Fresh::new());
        let StepOutcome::Step(rec) = out else { panic!("{out:?}") };
        assert_eq!(rec.new_heap.allowed(), v(&[2]));
        assert_eq!(rec.consumed, v(&[1]));
        assert_eq!(rec.reduct, unit());
    }

    #[test]
    fn app_beta_allocates() {
        let n = Semiring::nat();
        let m = Machine { sr: &n, typer: &SimpleTyper };
        let t = app(lam("y", Grade(1), unit_ty(), var("y")), unit());
        let out = m.step(&Heap::new(), &t, Grade(1), &mut BTreeSet::new(), &mut Fresh::new());
        let StepOutcome::Step(rec) = out else { panic!() };
        assert_eq!(rec.new_heap.len(), 1);
        assert_eq!(rec.new_heap.entries[0].allowed, Grade(1));
        assert_eq!(rec.consumed, v(&[0]));
        assert_eq!(rec.added.entries[0].def, Some(unit()));
        assert_eq!(rec.reduct, var(&rec.new_heap.entries[0].name));
    }

    #[test]
    fn zero_entry_is_dead() {
        let n = Semiring::nat();
        let m = Machine { sr: &n, typer: &SimpleTyper };
        let mut h = Heap::new();
        h.push("x", Grade(0), v(&[]), unit(), unit_ty());
        let out = m.step(&h, &var("x"), Grade(1), &mut BTreeSet::new(), &mut Fresh::new());
        assert_eq!(out, StepOutcome::Stuck(Stuck::ResourceExhausted("x".into())));
    }

    #[test]
    fn values_stop_with_no_consumption() {
        let n = Semiring::nat();
        let m = Machine { sr: &n, typer: &SimpleTyper };
        let run = m.run(&Heap::new(), &unit(), Grade(1), &BTreeSet::new(), &mut Fresh::new(), 10);
        assert_eq!(run.end, End::Value);
        assert!(run.steps.is_empty() && run.consumed.is_empty() && run.added.is_empty());
    }

    #[test]
    fn heap_ex_views() {
        let n = Semiring::nat();
        let h = heap_ex();
        let g = heap_ex_ctx(&h);
        compat(&n, &SimpleTyper, &h, &g).unwrap();
        let m = transformation_matrix(&n, &h);
        assert_eq!(m.rows, vec![v(&[0, 0, 0]).0, v(&[2, 0, 0]).0, v(&[1, 2, 0]).0]);
        assert!(count_balance(&n, &h, &grades_of(&g)));
        let mut bad = h.clone();
        bad.entries[0].allowed = Grade(6);
        assert!(compat(&n, &SimpleTyper, &bad, &g).is_err());
        let graph = memory_graph(&n, &h, &grades_of(&g));
        let mut edges: Vec<(String, String, u64)> = graph
            .edges
            .iter()
            .map(|&(a, b, w)| (graph.labels[a].clone(), graph.labels[b].clone(), w.0))
            .collect();
        edges.sort();
        let mut want = vec![
            ("vg".to_string(), "x3".to_string(), 1),
            ("vg".into(), "x2".into(), 1),
            ("x3".into(), "x2".into(), 2),
            ("x3".into(), "x1".into(), 1),
            ("x2".into(), "x1".into(), 2),
        ];
        want.sort();
        assert_eq!(edges, want);
        assert_eq!(graph.path_sums(&n)[1..], [Grade(7), Grade(3), Grade(1)]);
    }

    #[test]
    fn small_matrices() {
        let n = Semiring::nat();
        assert_eq!(transformation_matrix(&n, &Heap::new()).dim(), 0);
        let mut h = Heap::new();
        h.push("x", Grade(1), v(&[]), unit(), unit_ty());
        assert_eq!(transformation_matrix(&n, &h).rows, vec![vec![Grade(0)]]);
        let g = memory_graph(&n, &Heap::new(), &v(&[]));
        assert_eq!(g.labels, vec!["vg".to_string()]);
        assert!(g.edges.is_empty());
        assert!(compat(&n, &SimpleTyper, &Heap::new(), &UsageCtx::new()).is_ok());
    }

    #[test]
    fn dot_output() {
        let n = Semiring::nat();
        let h = heap_ex();
        let dot = memory_graph(&n, &h, &v(&[0, 1, 1])).to_dot(&n);
        assert!(dot.starts_with("digraph heap {"));
        assert!(dot.contains("n0 [label=\"vg\"]"));
        assert!(dot.contains("n3 -> n2 [label=\"2\"]"));
    }
}
