//! Checker for the dependent system: Type : Type, graded Pi and Sigma,
//! definitions in contexts, and beta-conversion modulo those definitions.

use std::collections::BTreeSet;
use std::rc::Rc;

use crate::algebra::{Grade, GradeVector, Semiring};
use crate::contexts::{flatten_defs, CtxEntry, PlainCtx, UsageCtx};
use crate::error::TypeError;
use crate::simple_checker::{fits, join_usage};
use crate::subst_eval;
use crate::syntax::{all_names, alpha_eq, free_vars, print, subst, var, Fresh, Name, Term, T};

pub const DEFAULT_FUEL: usize = 10_000;

struct Fuel {
    left: usize,
    used: usize,
}

impl Fuel {
    fn new(n: usize) -> Self {
        Fuel { left: n, used: 0 }
    }

    fn whnf(&mut self, a: &T) -> Result<T, TypeError> {
        let mut cur = a.clone();
        while let Some(next) = subst_eval::step(&cur) {
            if self.left == 0 {
                return Err(TypeError::Fuel(self.used));
            }
            self.left -= 1;
            self.used += 1;
            cur = next;
        }
        Ok(cur)
    }
}

pub fn whnf(a: &T, fuel: usize) -> Result<T, TypeError> {
    Fuel::new(fuel).whnf(a)
}

/// Pi view: Arrow is a Pi whose codomain ignores its binder.
pub fn as_pi(t: &T) -> Option<(Name, Grade, T, T)> {
    match &**t {
        Term::Pi(x, q, a, b) => Some((x.clone(), *q, a.clone(), b.clone())),
        Term::Arrow(q, a, b) => Some((unused_binder(b), *q, a.clone(), b.clone())),
        _ => None,
    }
}

/// Sigma view: Tensor is a Sigma at grade 1 with an unused binder.
pub fn as_sigma(t: &T, one: Grade) -> Option<(Name, Grade, T, T)> {
    match &**t {
        Term::Sigma(x, q, a, b) => Some((x.clone(), *q, a.clone(), b.clone())),
        Term::Tensor(a, b) => Some((unused_binder(b), one, a.clone(), b.clone())),
        _ => None,
    }
}

fn unused_binder(b: &T) -> Name {
    let fv = free_vars(b);
    Fresh::new().name("_", |c| fv.contains(c))
}

pub fn defeq(plain: &PlainCtx, a: &T, b: &T, fuel: usize) -> Result<bool, TypeError> {
    let mut conv = Conv { fuel: Fuel::new(fuel), fresh: Fresh::new() };
    conv.conv(&flatten_defs(a, plain), &flatten_defs(b, plain))
}

struct Conv {
    fuel: Fuel,
    fresh: Fresh,
}

impl Conv {
    fn conv(&mut self, a: &T, b: &T) -> Result<bool, TypeError> {
        if alpha_eq(a, b) {
            return Ok(true);
        }
        let a = self.fuel.whnf(a)?;
        let b = self.fuel.whnf(b)?;
        use Term::*;
        if let (Some((x, q, a1, a2)), Some((y, r, b1, b2))) = (as_pi(&a), as_pi(&b)) {
            return Ok(q == r && self.conv(&a1, &b1)? && self.under(&x, &a2, &y, &b2)?);
        }
        match (&*a, &*b) {
            (Type, Type) | (Unit, Unit) | (UnitVal, UnitVal) => Ok(true),
            (Var(x), Var(y)) => Ok(x == y),
            (Lam(x, q, a1, a2), Lam(y, r, b1, b2)) | (Sigma(x, q, a1, a2), Sigma(y, r, b1, b2)) => {
                Ok(q == r && self.conv(a1, b1)? && self.under(x, a2, y, b2)?)
            }
            (Tensor(a1, a2), Tensor(b1, b2))
            | (Sum(a1, a2), Sum(b1, b2))
            | (App(a1, a2), App(b1, b2))
            | (UnitElim(a1, a2), UnitElim(b1, b2)) => Ok(self.conv(a1, b1)? && self.conv(a2, b2)?),
            (Pair(q, a1, a2), Pair(r, b1, b2)) => Ok(q == r && self.conv(a1, b1)? && self.conv(a2, b2)?),
            (Inj1(x), Inj1(y)) | (Inj2(x), Inj2(y)) => self.conv(x, y),
            (Box(q, x), Box(r, y)) | (BoxTy(q, x), BoxTy(r, y)) => Ok(q == r && self.conv(x, y)?),
            (LetBox(x, s, c), LetBox(y, t, d)) => Ok(self.conv(s, t)? && self.under(x, c, y, d)?),
            (SigmaElim(x1, x2, s, c), SigmaElim(y1, y2, t, d)) => {
                if !self.conv(s, t)? {
                    return Ok(false);
                }
                let z1 = self.common(&[c, d]);
                let c1 = subst(c, &var(&z1), x1);
                let d1 = subst(d, &var(&z1), y1);
                Ok(self.under(x2, &c1, y2, &d1)?)
            }
            (Case(q, s, a1, a2), Case(r, t, b1, b2)) => {
                Ok(q == r && self.conv(s, t)? && self.conv(a1, b1)? && self.conv(a2, b2)?)
            }
            _ => Ok(false),
        }
    }

    fn common(&mut self, ts: &[&T]) -> Name {
        let mut names = BTreeSet::new();
        for t in ts {
            all_names(t, &mut names);
        }
        self.fresh.name("z", |c| names.contains(c))
    }

    fn under(&mut self, x: &str, a: &T, y: &str, b: &T) -> Result<bool, TypeError> {
        let z = self.common(&[a, b]);
        self.conv(&subst(a, &var(&z), x), &subst(b, &var(&z), y))
    }
}

pub fn infer_dep(sr: &Semiring, plain: &PlainCtx, a: &T, fuel: usize) -> Result<(T, GradeVector), TypeError> {
    Dep::new(sr, plain, fuel).infer(a)
}

/// Check mode: returns the synthesized usage.
pub fn check_against_dep(
    sr: &Semiring,
    plain: &PlainCtx,
    a: &T,
    ty: &T,
    fuel: usize,
) -> Result<GradeVector, TypeError> {
    Dep::new(sr, plain, fuel).check(a, ty)
}

pub fn check_dep(sr: &Semiring, usage: &UsageCtx, a: &T, ty: &T, fuel: usize) -> Result<(), TypeError> {
    let u = check_against_dep(sr, &usage.erase(), a, ty, fuel)?;
    fits(sr, usage, &u)
}

/// The inferred type of `a` is itself a type.
pub fn regularity_check(sr: &Semiring, plain: &PlainCtx, a: &T, fuel: usize) -> Result<(), TypeError> {
    let mut d = Dep::new(sr, plain, fuel);
    let (ty, _) = d.infer(a)?;
    d.check(&ty, &Rc::new(Term::Type)).map(|_| ())
}

struct Dep<'s> {
    sr: &'s Semiring,
    ctx: Vec<CtxEntry>,
    conv: Conv,
}

impl<'s> Dep<'s> {
    fn new(sr: &'s Semiring, plain: &PlainCtx, fuel: usize) -> Self {
        Dep { sr, ctx: plain.entries.clone(), conv: Conv { fuel: Fuel::new(fuel), fresh: Fresh::new() } }
    }

    fn zeros(&self) -> GradeVector {
        self.sr.zeros(self.ctx.len())
    }

    fn show(&self, t: &Term) -> String {
        print(self.sr, t)
    }

    fn plain(&self) -> PlainCtx {
        PlainCtx { entries: self.ctx.clone() }
    }

    fn flat(&self, t: &T) -> T {
        flatten_defs(t, &self.plain())
    }

    fn whnf_ty(&mut self, t: &T) -> Result<T, TypeError> {
        let f = self.flat(t);
        self.conv.fuel.whnf(&f)
    }

    fn defeq(&mut self, a: &T, b: &T) -> Result<bool, TypeError> {
        if alpha_eq(a, b) {
            return Ok(true);
        }
        let (fa, fb) = (self.flat(a), self.flat(b));
        self.conv.conv(&fa, &fb)
    }

    fn expect_defeq(&mut self, site: &str, expected: &T, found: &T) -> Result<(), TypeError> {
        if self.defeq(expected, found)? {
            Ok(())
        } else {
            Err(TypeError::Mismatch {
                site: site.into(),
                expected: self.show(&self.flat(expected)),
                found: self.show(&self.flat(found)),
            })
        }
    }

    fn add(&self, u: &GradeVector, v: &GradeVector) -> GradeVector {
        self.sr.vec_add(u, v).expect("usage vectors share the context length")
    }

    fn affine(&self, u: &GradeVector, q: Grade, v: &GradeVector) -> GradeVector {
        self.sr.vec_affine(u, q, v).expect("usage vectors share the context length")
    }

    /// Picks a binder name that does not clash with the context and renames
    /// it in `bodies`.
    fn fresh_binder(&mut self, x: &str, bodies: &[&T]) -> (Name, Vec<T>) {
        if !self.ctx.iter().any(|e| e.name == x) {
            return (x.to_string(), bodies.iter().map(|b| (*b).clone()).collect());
        }
        let mut avoid: BTreeSet<Name> = self.ctx.iter().map(|e| e.name.clone()).collect();
        for b in bodies {
            all_names(b, &mut avoid);
        }
        let z = self.conv.fresh.name(x, |c| avoid.contains(c));
        let zv = var(&z);
        (z, bodies.iter().map(|b| subst(b, &zv, x)).collect())
    }

    /// Runs `f` with binders pushed; returns outer usage and the binders' usage.
    fn under<R>(
        &mut self,
        binds: Vec<(Name, T)>,
        f: impl FnOnce(&mut Self) -> Result<(R, GradeVector), TypeError>,
    ) -> Result<(R, GradeVector, Vec<Grade>), TypeError> {
        let n = self.ctx.len();
        for (x, ty) in binds {
            self.ctx.push(CtxEntry { name: x, ty, def: None });
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

    fn no_escape(&self, ty: &T, xs: &[&str]) -> Result<(), TypeError> {
        let fv = free_vars(ty);
        if xs.iter().any(|x| fv.contains(*x)) {
            Err(TypeError::IllFormedMotive(self.show(ty)))
        } else {
            Ok(())
        }
    }

    fn is_type(&mut self, a: &T) -> Result<GradeVector, TypeError> {
        self.check(a, &Rc::new(Term::Type))
    }

    fn infer(&mut self, a: &T) -> Result<(T, GradeVector), TypeError> {
        let sr = self.sr;
        let type_ = || Rc::new(Term::Type);
        match &**a {
            Term::Type | Term::Unit => Ok((type_(), self.zeros())),
            Term::UnitVal => Ok((Rc::new(Term::Unit), self.zeros())),
            Term::Var(x) => {
                let i = self.ctx.iter().rposition(|e| &e.name == x).ok_or_else(|| TypeError::Unbound(x.clone()))?;
                let mut u = self.zeros();
                u.0[i] = sr.one();
                Ok((self.ctx[i].ty.clone(), u))
            }
            Term::Pi(x, _, dom, cod) | Term::Sigma(x, _, dom, cod) => {
                let u1 = self.is_type(dom)?;
                let (x, bodies) = self.fresh_binder(x, &[cod]);
                let cod = bodies[0].clone();
                let ((), u2, _) = self.under(vec![(x, dom.clone())], |c| Ok(((), c.is_type(&cod)?)))?;
                Ok((type_(), self.add(&u1, &u2)))
            }
            Term::Arrow(_, l, r) | Term::Tensor(l, r) | Term::Sum(l, r) => {
                let u1 = self.is_type(l)?;
                let u2 = self.is_type(r)?;
                Ok((type_(), self.add(&u1, &u2)))
            }
            Term::BoxTy(_, inner) => Ok((type_(), self.is_type(inner)?)),
            Term::Lam(x, q, dom, body) => {
                self.is_type(dom)?;
                let (x, bodies) = self.fresh_binder(x, &[body]);
                let body = bodies[0].clone();
                let (cod, u, inner) = self.under(vec![(x.clone(), dom.clone())], |c| {
                    let (cod, u) = c.infer(&body)?;
                    c.is_type(&cod)?;
                    Ok((cod, u))
                })?;
                self.bound_ok(&x, inner[0], *q)?;
                Ok((Rc::new(Term::Pi(x, *q, dom.clone(), cod)), u))
            }
            Term::App(f, arg) => {
                let (fty, u1) = self.infer(f)?;
                let fty_n = self.whnf_ty(&fty)?;
                let Some((y, r, dom, cod)) = as_pi(&fty_n) else {
                    return Err(TypeError::Mismatch {
                        site: "application".into(),
                        expected: "a function type".into(),
                        found: self.show(&fty_n),
                    });
                };
                let u2 = self.check(arg, &dom)?;
                Ok((subst(&cod, arg, &y), self.affine(&u1, r, &u2)))
            }
            Term::Pair(q, l, r) => {
                let (lt, u1) = self.infer(l)?;
                let (rt, u2) = self.infer(r)?;
                let z = unused_binder(&rt);
                Ok((Rc::new(Term::Sigma(z, *q, lt, rt)), self.affine(&u2, *q, &u1)))
            }
            Term::SigmaElim(..) | Term::LetBox(..) | Term::UnitElim(..) | Term::Case(..) => self.elim(a, None),
            Term::Box(q, inner) => {
                let (ty, u) = self.infer(inner)?;
                Ok((Rc::new(Term::BoxTy(*q, ty)), sr.vec_scale(*q, &u)))
            }
            Term::Inj1(_) | Term::Inj2(_) => Err(TypeError::CannotInfer(self.show(a))),
        }
    }

    /// Eliminators, in infer mode (`expected` = None) or check mode.
    fn elim(&mut self, a: &T, expected: Option<&T>) -> Result<(T, GradeVector), TypeError> {
        let sr = self.sr;
        let body_rule = |c: &mut Self, body: &T| -> Result<(T, GradeVector), TypeError> {
            match expected {
                Some(ty) => Ok((ty.clone(), c.check(body, ty)?)),
                None => c.infer(body),
            }
        };
        match &**a {
            Term::UnitElim(s, b) => {
                let u1 = self.check(s, &Rc::new(Term::Unit))?;
                let (ty, u2) = body_rule(self, b)?;
                Ok((ty, self.add(&u1, &u2)))
            }
            Term::LetBox(x, s, b) => {
                let (sty, u1) = self.infer(s)?;
                let sty_n = self.whnf_ty(&sty)?;
                let Term::BoxTy(q, inner_ty) = &*sty_n else {
                    return Err(TypeError::Mismatch {
                        site: "let box".into(),
                        expected: "a box type".into(),
                        found: self.show(&sty_n),
                    });
                };
                let q = *q;
                let (x, bodies) = self.fresh_binder(x, &[b]);
                let (ty, u2, inner) = self.under(vec![(x.clone(), inner_ty.clone())], |c| body_rule(c, &bodies[0]))?;
                self.bound_ok(&x, inner[0], q)?;
                self.no_escape(&ty, &[&x])?;
                Ok((ty, self.add(&u1, &u2)))
            }
            Term::SigmaElim(x, y, s, b) => {
                let (sty, u1) = self.infer(s)?;
                let sty_n = self.whnf_ty(&sty)?;
                let Some((z, r, lt, rt)) = as_sigma(&sty_n, sr.one()) else {
                    return Err(TypeError::Mismatch {
                        site: "let pair".into(),
                        expected: "a Sigma type".into(),
                        found: self.show(&sty_n),
                    });
                };
                let (x, bodies) = self.fresh_binder(x, &[b]);
                // y is bound after x, so it must also avoid x
                self.ctx.push(CtxEntry { name: x.clone(), ty: lt.clone(), def: None });
                let (y, bodies) = self.fresh_binder(y, &[&bodies[0]]);
                self.ctx.pop();
                let yty = subst(&rt, &var(&x), &z);
                let (ty, u2, inner) =
                    self.under(vec![(x.clone(), lt), (y.clone(), yty)], |c| body_rule(c, &bodies[0]))?;
                self.bound_ok(&x, inner[0], r)?;
                self.bound_ok(&y, inner[1], sr.one())?;
                self.no_escape(&ty, &[&x, &y])?;
                Ok((ty, self.add(&u1, &u2)))
            }
            Term::Case(q, s, b1, b2) => {
                let q = *q;
                if !sr.leq(sr.one(), q) {
                    return Err(TypeError::CaseGrade(sr.show(q)));
                }
                // lambda branches fix the scrutinee's sum type, so injections check
                let (sty, u1) = match (&**s, &**b1, &**b2) {
                    (_, Term::Lam(_, _, l, _), Term::Lam(_, _, r, _)) => {
                        let sty = Rc::new(Term::Sum(l.clone(), r.clone()));
                        let u = self.check(s, &sty)?;
                        (sty, u)
                    }
                    _ => self.infer(s)?,
                };
                let sty_n = self.whnf_ty(&sty)?;
                let Term::Sum(l, r) = &*sty_n else {
                    return Err(TypeError::Mismatch {
                        site: "case scrutinee".into(),
                        expected: "a sum type".into(),
                        found: self.show(&sty_n),
                    });
                };
                let (l, r) = (l.clone(), r.clone());
                let (ty, v1, v2) = match expected {
                    Some(ty) => {
                        let v1 = self.check(b1, &Rc::new(Term::Arrow(q, l, ty.clone())))?;
                        let v2 = self.check(b2, &Rc::new(Term::Arrow(q, r, ty.clone())))?;
                        (ty.clone(), v1, v2)
                    }
                    None => {
                        let (t1, v1) = self.infer(b1)?;
                        let c1 = self.branch(q, &l, &t1)?;
                        let (t2, v2) = self.infer(b2)?;
                        let c2 = self.branch(q, &r, &t2)?;
                        self.expect_defeq("case branches", &c1, &c2)?;
                        (c1, v1, v2)
                    }
                };
                let j = join_usage(sr, &v1, &v2)?;
                Ok((ty, self.affine(&j, q, &u1)))
            }
            _ => unreachable!("elim called on a non-eliminator"),
        }
    }

    fn branch(&mut self, q: Grade, payload: &T, bty: &T) -> Result<T, TypeError> {
        let n = self.whnf_ty(bty)?;
        let Some((x, r, dom, cod)) = as_pi(&n) else {
            return Err(TypeError::Mismatch {
                site: "case branch".into(),
                expected: "a function type".into(),
                found: self.show(&n),
            });
        };
        if r != q {
            return Err(TypeError::GradeMismatch {
                site: "case branch".into(),
                expected: self.sr.show(q),
                found: self.sr.show(r),
            });
        }
        self.expect_defeq("case branch domain", payload, &dom)?;
        self.no_escape(&cod, &[&x])?;
        Ok(cod)
    }

    fn check(&mut self, a: &T, ty: &T) -> Result<GradeVector, TypeError> {
        let sr = self.sr;
        match &**a {
            Term::Inj1(x) | Term::Inj2(x) => {
                let n = self.whnf_ty(ty)?;
                match (&**a, &*n) {
                    (Term::Inj1(_), Term::Sum(l, _)) => self.check(x, l),
                    (Term::Inj2(_), Term::Sum(_, r)) => self.check(x, r),
                    _ => Err(TypeError::Mismatch {
                        site: "injection".into(),
                        expected: "a sum type".into(),
                        found: self.show(&n),
                    }),
                }
            }
            Term::Pair(q, l, r) => {
                let n = self.whnf_ty(ty)?;
                let Some((z, p, lt, rt)) = as_sigma(&n, sr.one()) else {
                    return self.fallback(a, ty);
                };
                if p != *q {
                    return Err(TypeError::GradeMismatch {
                        site: "pair".into(),
                        expected: sr.show(p),
                        found: sr.show(*q),
                    });
                }
                let u1 = self.check(l, &lt)?;
                let u2 = self.check(r, &subst(&rt, l, &z))?;
                Ok(self.affine(&u2, *q, &u1))
            }
            Term::Box(q, x) => {
                let n = self.whnf_ty(ty)?;
                match &*n {
                    Term::BoxTy(r, inner) if r == q => Ok(sr.vec_scale(*q, &self.check(x, inner)?)),
                    _ => self.fallback(a, ty),
                }
            }
            Term::SigmaElim(..) | Term::LetBox(..) | Term::UnitElim(..) | Term::Case(..) => {
                Ok(self.elim(a, Some(ty))?.1)
            }
            _ => self.fallback(a, ty),
        }
    }

    fn fallback(&mut self, a: &T, ty: &T) -> Result<GradeVector, TypeError> {
        let (found, u) = self.infer(a)?;
        self.expect_defeq("checked term", ty, &found)?;
        Ok(u)
    }
}
