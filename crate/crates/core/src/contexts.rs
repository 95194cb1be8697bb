//! Graded contexts, their erasures, and the context algebra.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::algebra::{Grade, GradeVector, Semiring};
use crate::syntax::{alpha_eq, subst, Name, T};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum CtxError {
    #[error("contexts have different erasures")]
    ErasureMismatch,
    #[error("usage vector has length {0}, context has {1} entries")]
    Length(usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CtxEntry {
    pub name: Name,
    pub ty: T,
    pub def: Option<T>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PlainCtx {
    pub entries: Vec<CtxEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UsageEntry {
    pub name: Name,
    pub grade: Grade,
    pub ty: T,
    pub def: Option<T>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct UsageCtx {
    pub entries: Vec<UsageEntry>,
}

impl PlainCtx {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn push(&mut self, name: &str, ty: T, def: Option<T>) {
        self.entries.push(CtxEntry { name: name.to_string(), ty, def });
    }

    pub fn with(mut self, name: &str, ty: T) -> Self {
        self.push(name, ty, None);
        self
    }

    pub fn with_def(mut self, name: &str, ty: T, def: T) -> Self {
        self.push(name, ty, Some(def));
        self
    }

    /// Innermost binding of `x`.
    pub fn lookup(&self, x: &str) -> Option<(usize, &CtxEntry)> {
        self.entries.iter().enumerate().rev().find(|(_, e)| e.name == x)
    }

    pub fn contains(&self, x: &str) -> bool {
        self.lookup(x).is_some()
    }

    pub fn names(&self) -> BTreeSet<Name> {
        self.entries.iter().map(|e| e.name.clone()).collect()
    }

    pub fn prefix(&self, n: usize) -> PlainCtx {
        PlainCtx { entries: self.entries[..n].to_vec() }
    }

    pub fn has_defs(&self) -> bool {
        self.entries.iter().any(|e| e.def.is_some())
    }

    pub fn with_grades(&self, v: &GradeVector) -> Result<UsageCtx, CtxError> {
        if v.len() != self.len() {
            return Err(CtxError::Length(v.len(), self.len()));
        }
        Ok(UsageCtx {
            entries: self
                .entries
                .iter()
                .zip(&v.0)
                .map(|(e, &grade)| UsageEntry { name: e.name.clone(), grade, ty: e.ty.clone(), def: e.def.clone() })
                .collect(),
        })
    }

    /// Same names, types and definitions (types compared up to renaming).
    pub fn same_as(&self, other: &PlainCtx) -> bool {
        self.len() == other.len()
            && self.entries.iter().zip(&other.entries).all(|(a, b)| {
                a.name == b.name
                    && alpha_eq(&a.ty, &b.ty)
                    && match (&a.def, &b.def) {
                        (None, None) => true,
                        (Some(x), Some(y)) => alpha_eq(x, y),
                        _ => false,
                    }
            })
    }
}

impl UsageCtx {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn push(&mut self, name: &str, grade: Grade, ty: T, def: Option<T>) {
        self.entries.push(UsageEntry { name: name.to_string(), grade, ty, def });
    }

    pub fn with(mut self, name: &str, grade: Grade, ty: T) -> Self {
        self.push(name, grade, ty, None);
        self
    }

    pub fn erase(&self) -> PlainCtx {
        PlainCtx {
            entries: self
                .entries
                .iter()
                .map(|e| CtxEntry { name: e.name.clone(), ty: e.ty.clone(), def: e.def.clone() })
                .collect(),
        }
    }

    pub fn concat(&self, other: &UsageCtx) -> UsageCtx {
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().cloned());
        UsageCtx { entries }
    }

    pub fn prefix(&self, n: usize) -> UsageCtx {
        UsageCtx { entries: self.entries[..n].to_vec() }
    }
}

pub fn grades_of(g: &UsageCtx) -> GradeVector {
    GradeVector(g.entries.iter().map(|e| e.grade).collect())
}

pub fn ctx_scale(sr: &Semiring, q: Grade, g: &UsageCtx) -> UsageCtx {
    let mut out = g.clone();
    for e in &mut out.entries {
        e.grade = sr.mul(q, e.grade);
    }
    out
}

pub fn ctx_add(sr: &Semiring, g1: &UsageCtx, g2: &UsageCtx) -> Result<UsageCtx, CtxError> {
    if !g1.erase().same_as(&g2.erase()) {
        return Err(CtxError::ErasureMismatch);
    }
    let mut out = g1.clone();
    for (e, f) in out.entries.iter_mut().zip(&g2.entries) {
        e.grade = sr.add(e.grade, f.grade);
    }
    Ok(out)
}

pub fn subusage(sr: &Semiring, g1: &UsageCtx, g2: &UsageCtx) -> bool {
    g1.erase().same_as(&g2.erase())
        && g1.entries.iter().zip(&g2.entries).all(|(a, b)| sr.leq(a.grade, b.grade))
}

/// a{Δ}: substitute definitions, last definition first.
pub fn flatten_defs(a: &T, d: &PlainCtx) -> T {
    let mut t = a.clone();
    for e in d.entries.iter().rev() {
        if let Some(def) = &e.def {
            t = subst(&t, def, &e.name);
        }
    }
    t
}
