//! Executable checks over machine runs: conservation, soundness, the
//! non-interference, GC and single-pointer lemmas, and agreement with the
//! substitution semantics.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::algebra::{Grade, GradeVector, Semiring};
use crate::contexts::{grades_of, PlainCtx, UsageCtx};
use crate::heap_machine::{
    compat, flatten_heap, initial_support, memory_graph, transformation_matrix, End, Heap, Machine, Run, StepRecord,
    Stuck, Typer,
};
use crate::subst_eval;
use crate::syntax::{alpha_eq, print, rename_free, Fresh, Name, T};

pub type Verdict = Result<(), String>;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum AnalysisError {
    #[error("semiring {semiring} lacks {missing}")]
    Flags { semiring: String, missing: String },
    #[error("precondition violated: {0}")]
    Precondition(String),
}

/// A run plus verdicts computed from its records.
#[derive(Debug, Clone)]
pub struct TraceReport {
    pub run: Run,
    pub conservation: Verdict,
    /// One verdict per step; empty when no typing was supplied.
    pub soundness: Vec<Verdict>,
}

impl TraceReport {
    pub fn holds(&self) -> bool {
        self.conservation.is_ok() && self.soundness.iter().all(Result::is_ok)
    }
}

/// Run the machine at copy 1 and check it. With `typing = Some((Γ, A))`
/// the start configuration must satisfy H ⊢ Γ and Γ ⊢ a : A, and the
/// soundness clause is checked at every step.
pub fn trace(
    m: &Machine,
    h: &Heap,
    a: &T,
    typing: Option<(&UsageCtx, &T)>,
    fuel: usize,
    fresh: &mut Fresh,
) -> TraceReport {
    let run = m.run(h, a, m.sr.one(), &BTreeSet::new(), fresh, fuel);
    let conservation = check_conservation(m.sr, &run);
    let soundness = match typing {
        Some((g, ty)) => soundness(m.sr, m.typer, &run, g, ty),
        None => Vec::new(),
    };
    TraceReport { run, conservation, soundness }
}

/// H̄′ + u′ ≤ H̄ ⋄ Γ̄′
pub fn check_conservation(sr: &Semiring, run: &Run) -> Verdict {
    let (lhs, rhs) = conservation_sides(sr, run)?;
    if sr.vec_leq(&lhs, &rhs) {
        Ok(())
    } else {
        Err(format!("remaining + consumed {} exceeds supplied {}", sr.show_vec(&lhs), sr.show_vec(&rhs)))
    }
}

/// Under a discrete order conservation is an equation.
pub fn conservation_is_exact(sr: &Semiring, run: &Run) -> bool {
    matches!(conservation_sides(sr, run), Ok((l, r)) if l == r)
}

fn conservation_sides(sr: &Semiring, run: &Run) -> Result<(GradeVector, GradeVector), String> {
    let lhs = sr.vec_add(&run.heap.allowed(), &run.consumed).map_err(|e| e.to_string())?;
    let rhs = run.initial_heap.allowed().concat(&grades_of(&run.added));
    if lhs.len() != rhs.len() {
        return Err(format!("length mismatch: {} against {}", lhs.len(), rhs.len()));
    }
    Ok((lhs, rhs))
}

/// Soundness clause 4 at every step:
/// Γ̄′ + u′ + (𝟎 ⋄ Γ̄₄)×⟨H′⟩ ≤ (Γ̄ ⋄ 𝟎) + u′×⟨H′⟩ + (𝟎 ⋄ Γ̄₄),
/// where Γ′ is reconstructed from H′ so that H′ ⊢ Γ′ holds, and the reduct
/// checks under Γ′ at the original type.
pub fn soundness(sr: &Semiring, typer: &dyn Typer, run: &Run, g0: &UsageCtx, ty: &T) -> Vec<Verdict> {
    if let Err(e) = compat(sr, typer, &run.initial_heap, g0) {
        return vec![Err(format!("start is not compatible: {e}"))];
    }
    match typer.check(sr, &run.initial_heap.plain(), &run.initial_term, ty) {
        Ok(u) if sr.vec_leq(&u, &grades_of(g0)) => {}
        Ok(u) => return vec![Err(format!("start term uses {} beyond {}", sr.show_vec(&u), sr.show_vec(&grades_of(g0))))],
        Err(e) => return vec![Err(format!("start term does not check: {e}"))],
    }
    let mut out = Vec::new();
    let mut g = grades_of(g0);
    for rec in &run.steps {
        match clause4_step(sr, typer, &g, rec, ty) {
            Ok(next) => {
                out.push(Ok(()));
                g = next;
            }
            Err(e) => {
                out.push(Err(e));
                break;
            }
        }
    }
    out
}

fn clause4_step(sr: &Semiring, typer: &dyn Typer, g: &GradeVector, rec: &StepRecord, ty: &T) -> Result<GradeVector, String> {
    let h2 = &rec.new_heap;
    let err = |e: crate::algebra::AlgebraError| e.to_string();
    if rec.untyped {
        return Err("step allocated an untyped entry".into());
    }
    let synth = typer
        .check(sr, &h2.plain(), &rec.reduct, ty)
        .map_err(|e| format!("reduct {} does not check: {e}", print(sr, &rec.reduct)))?;
    let n = g.len();
    let m = transformation_matrix(sr, h2);
    let added = sr.zeros(n).concat(&grades_of(&rec.added));
    let lhs_rest = sr.vec_add(&rec.consumed, &sr.vec_mat_mul(&added, &m).map_err(err)?).map_err(err)?;
    let rhs = sr
        .vec_add(
            &sr.vec_add(&g.padded(h2.len(), sr.zero()), &sr.vec_mat_mul(&rec.consumed, &m).map_err(err)?)
                .map_err(err)?,
            &added,
        )
        .map_err(err)?;
    // Γ′[i] + (q × ⟨H′⟩)[i] = q[i] makes H′ ⊢ Γ′ balance at every entry
    let q = h2.allowed();
    let demand = sr.vec_mat_mul(&q, &m).map_err(err)?;
    let mut next = Vec::with_capacity(h2.len());
    for i in 0..h2.len() {
        let c = sr
            .solve_add(demand.0[i], q.0[i])
            .into_iter()
            .find(|&c| sr.leq(synth.0[i], c) && sr.leq(sr.add(c, lhs_rest.0[i]), rhs.0[i]))
            .ok_or_else(|| {
                format!(
                    "no context grade for {}: allowed {}, demanded {}, reduct uses {}, bound {}",
                    h2.entries[i].name,
                    sr.show(q.0[i]),
                    sr.show(demand.0[i]),
                    sr.show(synth.0[i]),
                    sr.show(rhs.0[i])
                )
            })?;
        next.push(c);
    }
    let next = GradeVector(next);
    let ctx = h2.plain().with_grades(&next).map_err(|e| e.to_string())?;
    compat(sr, typer, h2, &ctx).map_err(|e| format!("compatibility lost: {e}"))?;
    let closed = flatten_heap(&rec.reduct, h2);
    typer
        .check(sr, &PlainCtx::new(), &closed, ty)
        .map_err(|e| format!("flattened reduct does not check: {e}"))?;
    Ok(next)
}

/// Views used for trace comparison: heap entries without types, with the
/// entry at `skip` reduced to its name and allowance.
type EntryView = (Name, Grade, GradeVector, Option<T>);

fn heap_view(h: &Heap, skip: Option<usize>) -> Vec<EntryView> {
    h.entries
        .iter()
        .enumerate()
        .map(|(i, e)| {
            if Some(i) == skip {
                (e.name.clone(), e.allowed, GradeVector(vec![]), None)
            } else {
                (e.name.clone(), e.allowed, grades_of(&e.ctx), Some(e.term.clone()))
            }
        })
        .collect()
}

fn traces_identical(r1: &Run, r2: &Run, skip: usize) -> Result<(), String> {
    if r1.steps.len() != r2.steps.len() {
        return Err(format!("{} steps against {}", r1.steps.len(), r2.steps.len()));
    }
    for (k, (s1, s2)) in r1.steps.iter().zip(&r2.steps).enumerate() {
        let same = heap_view(&s1.new_heap, Some(skip)) == heap_view(&s2.new_heap, Some(skip))
            && s1.consumed == s2.consumed
            && s1.reduct == s2.reduct
            && s1.copy == s2.copy
            && s1.added.entries.iter().map(|e| (&e.name, e.grade, &e.def)).eq(s2
                .added
                .entries
                .iter()
                .map(|e| (&e.name, e.grade, &e.def)));
        if !same {
            return Err(format!("traces diverge at step {}", k + 1));
        }
    }
    if r1.end != r2.end || r1.term != r2.term {
        return Err("final configurations differ".into());
    }
    Ok(())
}

/// Swap the definiens of an unusable entry and run `b` under both heaps.
/// Ok(Ok(())) when the traces agree outside the swapped entry.
#[allow(clippy::too_many_arguments)]
pub fn noninterference(
    m: &Machine,
    h: &Heap,
    idx: usize,
    alt_term: &T,
    alt_ctx: &UsageCtx,
    alt_type: &T,
    b: &T,
    fuel: usize,
) -> Result<Verdict, AnalysisError> {
    let sr = m.sr;
    let flags = sr.classify().map_err(|e| AnalysisError::Precondition(e.to_string()))?;
    if !flags.zero_unusable {
        return Err(AnalysisError::Flags { semiring: sr.name().into(), missing: "zero-unusable".into() });
    }
    let e = h.entries.get(idx).ok_or_else(|| AnalysisError::Precondition(format!("no heap entry {idx}")))?;
    if sr.is_usable(e.allowed) {
        return Err(AnalysisError::Precondition(format!("{} has usable grade {}", e.name, sr.show(e.allowed))));
    }
    Ok(swapped_traces_agree(m, h, idx, alt_term, alt_ctx, alt_type, b, fuel))
}

/// Run `b` under `h` and under `h` with entry `idx` replaced; no
/// precondition on the entry's grade.
#[allow(clippy::too_many_arguments)]
pub fn swapped_traces_agree(
    m: &Machine,
    h: &Heap,
    idx: usize,
    alt_term: &T,
    alt_ctx: &UsageCtx,
    alt_type: &T,
    b: &T,
    fuel: usize,
) -> Verdict {
    let sr = m.sr;
    let mut h2 = h.clone();
    h2.entries[idx].term = alt_term.clone();
    h2.entries[idx].ctx = alt_ctx.clone();
    h2.entries[idx].ty = alt_type.clone();
    let mut support = initial_support(h, b);
    support.extend(initial_support(&h2, b));
    let r1 = m.run(h, b, sr.one(), &support, &mut Fresh::new(), fuel);
    let r2 = m.run(&h2, b, sr.one(), &support, &mut Fresh::new(), fuel);
    traces_identical(&r1, &r2, idx)
}

/// Names of zero-allowed entries, after confirming they are unreachable
/// from the source of the memory graph.
pub fn gc_candidates(sr: &Semiring, h: &Heap, usage: &GradeVector) -> Result<BTreeSet<Name>, AnalysisError> {
    let flags = sr.classify().map_err(|e| AnalysisError::Precondition(e.to_string()))?;
    let mut missing = Vec::new();
    if !flags.zerosumfree {
        missing.push("zerosumfree");
    }
    if !flags.entire {
        missing.push("entire");
    }
    if !sr.is_minimal(sr.zero()) {
        missing.push("minimal zero");
    }
    if !flags.zero_unusable {
        missing.push("zero-unusable");
    }
    if !missing.is_empty() {
        return Err(AnalysisError::Flags { semiring: sr.name().into(), missing: missing.join(", ") });
    }
    let g = memory_graph(sr, h, usage);
    let dead: BTreeSet<usize> = (0..h.len()).filter(|&i| h.entries[i].allowed == sr.zero()).map(|i| i + 1).collect();
    for &(from, to, _) in &g.edges {
        if dead.contains(&to) && !dead.contains(&from) {
            return Err(AnalysisError::Precondition(format!(
                "{} is reachable from {}; the heap is not compatible",
                g.labels[to], g.labels[from]
            )));
        }
    }
    Ok(dead.into_iter().map(|i| g.labels[i].clone()).collect())
}

/// Exactly one source path reaches `var`, all of weight 1, and every node
/// on it is itself reached by that path alone.
pub fn single_pointer(sr: &Semiring, h: &Heap, usage: &GradeVector, var: &str) -> Result<bool, AnalysisError> {
    let flags = sr.classify().map_err(|e| AnalysisError::Precondition(e.to_string()))?;
    let mut missing = Vec::new();
    for (ok, what) in [
        (flags.entire, "entire"),
        (flags.zerosumfree, "zerosumfree"),
        (flags.linear, "linear"),
        (flags.zero_unusable, "zero-unusable"),
        (flags.one_linear, "one-linear"),
        (sr.is_minimal(sr.zero()), "minimal zero"),
        (sr.is_minimal(sr.one()), "minimal one"),
    ] {
        if !ok {
            missing.push(what);
        }
    }
    if !missing.is_empty() {
        return Err(AnalysisError::Flags { semiring: sr.name().into(), missing: missing.join(", ") });
    }
    let i = h.index_of(var).ok_or_else(|| AnalysisError::Precondition(format!("{var} is not in the heap")))?;
    if h.entries[i].allowed != sr.one() {
        return Err(AnalysisError::Precondition(format!("{var} is allowed {}, not 1", sr.show(h.entries[i].allowed))));
    }
    let g = memory_graph(sr, h, usage);
    let paths = g.paths_to(i + 1);
    let [p] = paths.as_slice() else { return Ok(false) };
    let unit_weights = p.windows(2).all(|w| g.weight(w[0], w[1]) == Some(sr.one()));
    let prefixes_unique = p[1..].iter().all(|&v| g.paths_to(v).len() == 1);
    Ok(unit_weights && prefixes_unique)
}

/// Run the heap machine and the substitution evaluator side by side on
/// flattened configurations.
pub fn bisim_check(m: &Machine, h: &Heap, a: &T, fuel: usize) -> Verdict {
    let run = m.run(h, a, m.sr.one(), &BTreeSet::new(), &mut Fresh::new(), fuel);
    let mut prev = flatten_heap(a, h);
    for (k, rec) in run.steps.iter().enumerate() {
        let next = flatten_heap(&rec.reduct, &rec.new_heap);
        let related = alpha_eq(&prev, &next) || subst_eval::step(&prev).is_some_and(|p| alpha_eq(&p, &next));
        if !related {
            return Err(format!(
                "step {} ({}): {} does not reach {}",
                k + 1,
                rec.rule,
                print(m.sr, &prev),
                print(m.sr, &next)
            ));
        }
        prev = next;
    }
    match run.end {
        End::Value => {}
        End::Stuck(s) => return Err(format!("heap machine stuck: {}", s.reason())),
        End::Fuel => return Err("heap machine out of fuel".into()),
    }
    let (v, _) = subst_eval::eval(&flatten_heap(a, h), fuel).map_err(|e| e.to_string())?;
    if alpha_eq(&v, &prev) {
        Ok(())
    } else {
        Err(format!("values differ: {} against {}", print(m.sr, &v), print(m.sr, &prev)))
    }
}

/// Two runs whose fresh-name counters start apart yield α-equivalent
/// machine views after every step.
pub fn determinism(m: &Machine, h: &Heap, a: &T, fuel: usize, offset: u64) -> Verdict {
    let r1 = m.run(h, a, m.sr.one(), &BTreeSet::new(), &mut Fresh::new(), fuel);
    let r2 = m.run(h, a, m.sr.one(), &BTreeSet::new(), &mut Fresh::starting_at(offset), fuel);
    let same_end = match (&r1.end, &r2.end) {
        (End::Stuck(Stuck::ResourceExhausted(x)), End::Stuck(Stuck::ResourceExhausted(y)))
        | (End::Stuck(Stuck::CopyBelowOne(x)), End::Stuck(Stuck::CopyBelowOne(y))) => {
            r1.heap.index_of(x) == r2.heap.index_of(y)
        }
        (e1, e2) => std::mem::discriminant(e1) == std::mem::discriminant(e2),
    };
    if r1.steps.len() != r2.steps.len() || !same_end {
        return Err(format!("{} steps ({:?}) against {} ({:?})", r1.steps.len(), r1.end, r2.steps.len(), r2.end));
    }
    for (k, (s1, s2)) in r1.steps.iter().zip(&r2.steps).enumerate() {
        if !views_alpha_eq(&s1.new_heap, &s1.reduct, &s2.new_heap, &s2.reduct) {
            return Err(format!("views differ after step {}", k + 1));
        }
    }
    Ok(())
}

/// (⌊⌊H1⌋⌋, a1) and (⌊⌊H2⌋⌋, a2) agree after renaming assignees by position.
pub fn views_alpha_eq(h1: &Heap, a1: &T, h2: &Heap, a2: &T) -> bool {
    if h1.len() != h2.len() {
        return false;
    }
    let map: BTreeMap<Name, Name> =
        h2.entries.iter().zip(&h1.entries).map(|(e2, e1)| (e2.name.clone(), e1.name.clone())).collect();
    h1.bare().iter().zip(h2.bare()).all(|((_, t1), (_, t2))| alpha_eq(t1, &rename_free(&t2, &map)))
        && alpha_eq(a1, &rename_free(a2, &map))
}
