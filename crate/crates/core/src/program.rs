//! Whole-program checking and the closed term a program evaluates.

use std::fmt;
use std::str::FromStr;

use crate::algebra::{GradeVector, Semiring};
use crate::contexts::{flatten_defs, PlainCtx};
use crate::dep_checker::{self, DEFAULT_FUEL};
use crate::error::TypeError;
use crate::heap_machine::{DepTyper, ErasedTyper, SimpleTyper, Typer};
use crate::simple_checker;
use crate::syntax::{Program, T};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum System {
    Simple,
    Dep,
}

impl FromStr for System {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "simple" => Ok(System::Simple),
            "dep" => Ok(System::Dep),
            other => Err(format!("unknown system `{other}`")),
        }
    }
}

impl fmt::Display for System {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            System::Simple => "simple",
            System::Dep => "dep",
        })
    }
}

/// Typer for machine allocations; `None` types nothing.
pub fn typer_for(system: Option<System>) -> Box<dyn Typer> {
    match system {
        Some(System::Simple) => Box::new(SimpleTyper),
        Some(System::Dep) => Box::new(DepTyper::default()),
        None => Box::new(ErasedTyper),
    }
}

#[derive(Debug, Clone)]
pub struct Checked {
    /// Definitions in scope for `main`.
    pub ctx: PlainCtx,
    pub ty: T,
    /// Usage of `main` over the definitions.
    pub usage: GradeVector,
}

fn infer(sr: &Semiring, system: System, ctx: &PlainCtx, a: &T) -> Result<(T, GradeVector), TypeError> {
    match system {
        System::Simple => simple_checker::infer_simple(sr, ctx, a),
        System::Dep => dep_checker::infer_dep(sr, ctx, a, DEFAULT_FUEL),
    }
}

fn check(sr: &Semiring, system: System, ctx: &PlainCtx, a: &T, ty: &T) -> Result<GradeVector, TypeError> {
    match system {
        System::Simple => simple_checker::check_against_simple(sr, ctx, a, ty),
        System::Dep => dep_checker::check_against_dep(sr, ctx, a, ty, DEFAULT_FUEL),
    }
}

/// Check each definition against its declared type in order, then infer
/// `main` with the definitions in scope.
pub fn check_program(sr: &Semiring, system: System, prog: &Program) -> Result<Checked, TypeError> {
    let mut ctx = PlainCtx::new();
    for d in &prog.defs {
        if system == System::Dep {
            check(sr, system, &ctx, &d.ty, &crate::syntax::ty())?;
        }
        check(sr, system, &ctx, &d.body, &d.ty)?;
        ctx = ctx.with_def(&d.name, d.ty.clone(), d.body.clone());
    }
    let main = prog.main.as_ref().ok_or_else(|| TypeError::Unbound("main".into()))?;
    let (ty, usage) = infer(sr, system, &ctx, main)?;
    Ok(Checked { ctx, ty, usage })
}

/// `main` with every definition substituted in.
pub fn closed_main(prog: &Program) -> Option<T> {
    let mut ctx = PlainCtx::new();
    for d in &prog.defs {
        ctx = ctx.with_def(&d.name, d.ty.clone(), d.body.clone());
    }
    prog.main.as_ref().map(|m| flatten_defs(m, &ctx))
}

/// Type of the closed main term, with definitions flattened away.
pub fn closed_type(checked: &Checked) -> T {
    flatten_defs(&checked.ty, &checked.ctx)
}
