//! Checker for the simply-typed graded system. Usage is an output: each rule
//! synthesizes the least usage vector over the plain context.

use std::rc::Rc;

use crate::algebra::{Grade, GradeVector, Semiring};
use crate::contexts::{grades_of, CtxEntry, PlainCtx, UsageCtx};
use crate::error::TypeError;
use crate::syntax::{alpha_eq, print, Term, T};

/// Branch usages must agree, or have a pointwise least upper bound.
pub fn join_usage(sr: &Semiring, u1: &GradeVector, u2: &GradeVector) -> Result<GradeVector, TypeError> {
    if u1 == u2 {
        return Ok(u1.clone());
    }
    let has_lub = sr.classify().map(|f| f.has_lub).unwrap_or(false);
    match sr.vec_lub(u1, u2) {
        Some(u) if has_lub => Ok(u),
        _ => Err(TypeError::BranchJoin(sr.show_vec(u1), sr.show_vec(u2))),
    }
}

pub fn infer_simple(sr: &Semiring, plain: &PlainCtx, a: &T) -> Result<(T, GradeVector), TypeError> {
    let mut c = Simple { sr, ctx: plain.entries.clone() };
    c.infer(a)
}

/// Check mode: returns the synthesized usage.
pub fn check_against_simple(sr: &Semiring, plain: &PlainCtx, a: &T, ty: &T) -> Result<GradeVector, TypeError> {
    let mut c = Simple { sr, ctx: plain.entries.clone() };
    c.well_formed(ty)?;
    c.check(a, ty)
}

/// Δ;Γ ⊢ a : A with Δ = ⌊Γ⌋: synthesized usage must fit under the declared grades.
pub fn check_simple(sr: &Semiring, usage: &UsageCtx, a: &T, ty: &T) -> Result<(), TypeError> {
    let plain = usage.erase();
    let u = check_against_simple(sr, &plain, a, ty)?;
    fits(sr, usage, &u)
}

pub(crate) fn fits(sr: &Semiring, usage: &UsageCtx, u: &GradeVector) -> Result<(), TypeError> {
    let declared = grades_of(usage);
    if declared.len() != u.len() {
        return Err(TypeError::ContextShape);
    }
    for (i, (&need, &have)) in u.0.iter().zip(&declared.0).enumerate() {
        if !sr.leq(need, have) {
            return Err(TypeError::DeclaredInsufficient {
                var: usage.entries[i].name.clone(),
                needed: sr.show(need),
                declared: sr.show(have),
            });
        }
    }
    Ok(())
}

struct Simple<'s> {
    sr: &'s Semiring,
    ctx: Vec<CtxEntry>,
}

impl Simple<'_> {
    fn zeros(&self) -> GradeVector {
        self.sr.zeros(self.ctx.len())
    }

    fn show(&self, t: &Term) -> String {
        print(self.sr, t)
    }

    fn mismatch(&self, site: &str, expected: &str, found: &Term) -> TypeError {
        TypeError::Mismatch { site: site.into(), expected: expected.into(), found: self.show(found) }
    }

    fn add(&self, u: &GradeVector, v: &GradeVector) -> GradeVector {
        self.sr.vec_add(u, v).expect("usage vectors share the context length")
    }

    fn affine(&self, u: &GradeVector, q: Grade, v: &GradeVector) -> GradeVector {
        self.sr.vec_affine(u, q, v).expect("usage vectors share the context length")
    }

    fn well_formed(&self, t: &Term) -> Result<(), TypeError> {
        match t {
            Term::Unit => Ok(()),
            Term::Arrow(_, a, b) | Term::Tensor(a, b) | Term::Sum(a, b) => {
                self.well_formed(a)?;
                self.well_formed(b)
            }
            Term::BoxTy(_, a) => self.well_formed(a),
            other => Err(TypeError::NotSimple(format!("{} is not a simple type", self.show(other)))),
        }
    }

    /// Runs `f` with `names` bound, returning the body's result and the
    /// usage split into (outer, bound variables in order).
    fn under<R>(
        &mut self,
        binds: &[(&str, T)],
        f: impl FnOnce(&mut Self) -> Result<(R, GradeVector), TypeError>,
    ) -> Result<(R, GradeVector, Vec<Grade>), TypeError> {
        let n = self.ctx.len();
        for (x, ty) in binds {
            self.ctx.push(CtxEntry { name: x.to_string(), ty: ty.clone(), def: None });
        }
        let res = f(self);
        self.ctx.truncate(n);
        let (r, mut u) = res?;
        let inner = u.0.split_off(n);
        Ok((r, u, inner))
    }

    fn bound_ok(&self, x: &str, used: Grade, allowed: Grade) -> Result<(), TypeError> {
        if self.sr.leq(used, allowed) {
            Ok(())
        } else {
            Err(TypeError::UsageExceeded { var: x.into(), used: self.sr.show(used), allowed: self.sr.show(allowed) })
        }
    }

    fn infer(&mut self, a: &T) -> Result<(T, GradeVector), TypeError> {
        let sr = self.sr;
        match &**a {
            Term::Var(x) => {
                let i = self.ctx.iter().rposition(|e| &e.name == x).ok_or_else(|| TypeError::Unbound(x.clone()))?;
                let mut u = self.zeros();
                u.0[i] = sr.one();
                Ok((self.ctx[i].ty.clone(), u))
            }
            Term::UnitVal => Ok((Rc::new(Term::Unit), self.zeros())),
            Term::UnitElim(s, b) => {
                let u1 = self.check(s, &Rc::new(Term::Unit))?;
                let (ty, u2) = self.infer(b)?;
                Ok((ty, self.add(&u1, &u2)))
            }
            Term::Lam(x, q, dom, body) => {
                self.well_formed(dom)?;
                let (cod, u, inner) = self.under(&[(x, dom.clone())], |c| c.infer(body))?;
                self.bound_ok(x, inner[0], *q)?;
                Ok((Rc::new(Term::Arrow(*q, dom.clone(), cod)), u))
            }
            Term::App(f, arg) => {
                let (fty, u1) = self.infer(f)?;
                match &*fty {
                    Term::Arrow(q, dom, cod) => {
                        let u2 = self.check(arg, dom)?;
                        Ok((cod.clone(), self.affine(&u1, *q, &u2)))
                    }
                    _ => Err(self.mismatch("application", "a function type", &fty)),
                }
            }
            Term::Box(q, inner) => {
                let (ty, u) = self.infer(inner)?;
                Ok((Rc::new(Term::BoxTy(*q, ty)), sr.vec_scale(*q, &u)))
            }
            Term::LetBox(x, s, body) => {
                let (sty, u1) = self.infer(s)?;
                let Term::BoxTy(q, inner_ty) = &*sty else {
                    return Err(self.mismatch("let box", "a box type", &sty));
                };
                let q = *q;
                let (ty, u2, inner) = self.under(&[(x, inner_ty.clone())], |c| c.infer(body))?;
                self.bound_ok(x, inner[0], q)?;
                Ok((ty, self.add(&u1, &u2)))
            }
            Term::Pair(q, l, r) => {
                if *q != sr.one() {
                    return Err(TypeError::NotSimple(format!("graded pair {}", self.show(a))));
                }
                let (lt, u1) = self.infer(l)?;
                let (rt, u2) = self.infer(r)?;
                Ok((Rc::new(Term::Tensor(lt, rt)), self.add(&u1, &u2)))
            }
            Term::SigmaElim(x, y, s, body) => {
                let (sty, u1) = self.infer(s)?;
                let Term::Tensor(lt, rt) = &*sty else {
                    return Err(self.mismatch("let pair", "a tensor type", &sty));
                };
                let (ty, u2, inner) = self.under(&[(x, lt.clone()), (y, rt.clone())], |c| c.infer(body))?;
                self.bound_ok(x, inner[0], sr.one())?;
                self.bound_ok(y, inner[1], sr.one())?;
                Ok((ty, self.add(&u1, &u2)))
            }
            Term::Inj1(_) | Term::Inj2(_) => Err(TypeError::CannotInfer(self.show(a))),
            Term::Case(q, s, b1, b2) => {
                let q = *q;
                self.case_grade(q)?;
                let (sty, u1) = self.scrutinee(s, b1, b2)?;
                let Term::Sum(l, r) = &*sty else {
                    return Err(self.mismatch("case scrutinee", "a sum type", &sty));
                };
                let (t1, v1) = self.infer(b1)?;
                let c1 = self.branch(q, l, &t1)?;
                let (t2, v2) = self.infer(b2)?;
                let c2 = self.branch(q, r, &t2)?;
                if !alpha_eq(&c1, &c2) {
                    return Err(self.mismatch("case branches", &self.show(&c1), &c2));
                }
                let j = join_usage(sr, &v1, &v2)?;
                Ok((c1, self.affine(&j, q, &u1)))
            }
            _ => Err(TypeError::NotSimple(self.show(a))),
        }
    }

    /// Lambda branches fix the scrutinee's sum type, so injections check.
    fn scrutinee(&mut self, s: &T, b1: &T, b2: &T) -> Result<(T, GradeVector), TypeError> {
        if let (Term::Lam(_, _, l, _), Term::Lam(_, _, r, _)) = (&**b1, &**b2) {
            let sty = Rc::new(Term::Sum(l.clone(), r.clone()));
            let u = self.check(s, &sty)?;
            return Ok((sty, u));
        }
        self.infer(s)
    }

    fn case_grade(&self, q: Grade) -> Result<(), TypeError> {
        if self.sr.leq(self.sr.one(), q) {
            Ok(())
        } else {
            Err(TypeError::CaseGrade(self.sr.show(q)))
        }
    }

    fn branch(&self, q: Grade, payload: &T, bty: &T) -> Result<T, TypeError> {
        match &**bty {
            Term::Arrow(r, dom, cod) if *r == q && alpha_eq(dom, payload) => Ok(cod.clone()),
            _ => Err(self.mismatch(
                "case branch",
                &format!("{} -{}> _", self.show(payload), self.sr.show(q)),
                bty,
            )),
        }
    }

    fn check(&mut self, a: &T, ty: &T) -> Result<GradeVector, TypeError> {
        let sr = self.sr;
        match (&**a, &**ty) {
            (Term::Inj1(x), Term::Sum(l, _)) => self.check(x, l),
            (Term::Inj2(x), Term::Sum(_, r)) => self.check(x, r),
            (Term::Inj1(_) | Term::Inj2(_), _) => Err(self.mismatch("injection", "a sum type", ty)),
            (Term::Pair(q, l, r), Term::Tensor(lt, rt)) if *q == sr.one() => {
                let u1 = self.check(l, lt)?;
                let u2 = self.check(r, rt)?;
                Ok(self.add(&u1, &u2))
            }
            (Term::Box(q, x), Term::BoxTy(r, inner)) if q == r => {
                let u = self.check(x, inner)?;
                Ok(sr.vec_scale(*q, &u))
            }
            (Term::UnitElim(s, b), _) => {
                let u1 = self.check(s, &Rc::new(Term::Unit))?;
                let u2 = self.check(b, ty)?;
                Ok(self.add(&u1, &u2))
            }
            (Term::LetBox(x, s, body), _) => {
                let (sty, u1) = self.infer(s)?;
                let Term::BoxTy(q, inner_ty) = &*sty else {
                    return Err(self.mismatch("let box", "a box type", &sty));
                };
                let q = *q;
                let ((), u2, inner) = self.under(&[(x, inner_ty.clone())], |c| Ok(((), c.check(body, ty)?)))?;
                self.bound_ok(x, inner[0], q)?;
                Ok(self.add(&u1, &u2))
            }
            (Term::SigmaElim(x, y, s, body), _) => {
                let (sty, u1) = self.infer(s)?;
                let Term::Tensor(lt, rt) = &*sty else {
                    return Err(self.mismatch("let pair", "a tensor type", &sty));
                };
                let ((), u2, inner) =
                    self.under(&[(x, lt.clone()), (y, rt.clone())], |c| Ok(((), c.check(body, ty)?)))?;
                self.bound_ok(x, inner[0], sr.one())?;
                self.bound_ok(y, inner[1], sr.one())?;
                Ok(self.add(&u1, &u2))
            }
            (Term::Case(q, s, b1, b2), _) => {
                let q = *q;
                self.case_grade(q)?;
                let (sty, u1) = self.scrutinee(s, b1, b2)?;
                let Term::Sum(l, r) = &*sty else {
                    return Err(self.mismatch("case scrutinee", "a sum type", &sty));
                };
                let v1 = self.check(b1, &Rc::new(Term::Arrow(q, l.clone(), ty.clone())))?;
                let v2 = self.check(b2, &Rc::new(Term::Arrow(q, r.clone(), ty.clone())))?;
                let j = join_usage(sr, &v1, &v2)?;
                Ok(self.affine(&j, q, &u1))
            }
            _ => {
                let (found, u) = self.infer(a)?;
                if alpha_eq(&found, ty) {
                    Ok(u)
                } else {
                    Err(self.mismatch("checked term", &self.show(ty), &found))
                }
            }
        }
    }
}
