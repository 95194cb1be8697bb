//! Terms and types share one AST. Names are strings; fresh names are `base%k`.

mod parse;
mod print;

use std::collections::{BTreeMap, BTreeSet};
use std::rc::Rc;

use crate::algebra::Grade;

pub use parse::{parse_program, parse_term, Def, ParseError, Program};
pub use print::{print, print_raw};

pub type Name = String;
pub type T = Rc<Term>;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Term {
    Type,
    Var(Name),
    Unit,
    UnitVal,
    /// `let unit = a in b`
    UnitElim(T, T),
    Pi(Name, Grade, T, T),
    Lam(Name, Grade, T, T),
    App(T, T),
    Sigma(Name, Grade, T, T),
    /// Pair with its Sigma grade; the simple system only uses grade 1.
    Pair(Grade, T, T),
    /// `let (x, y) = a in b`
    SigmaElim(Name, Name, T, T),
    Sum(T, T),
    Inj1(T),
    Inj2(T),
    Case(Grade, T, T, T),
    BoxTy(Grade, T),
    Box(Grade, T),
    /// `let box x = a in b`
    LetBox(Name, T, T),
    Arrow(Grade, T, T),
    Tensor(T, T),
}

pub fn var(x: &str) -> T {
    Rc::new(Term::Var(x.to_string()))
}
pub fn ty() -> T {
    Rc::new(Term::Type)
}
pub fn unit_ty() -> T {
    Rc::new(Term::Unit)
}
pub fn unit() -> T {
    Rc::new(Term::UnitVal)
}
pub fn lam(x: &str, q: Grade, a: T, b: T) -> T {
    Rc::new(Term::Lam(x.to_string(), q, a, b))
}
pub fn pi(x: &str, q: Grade, a: T, b: T) -> T {
    Rc::new(Term::Pi(x.to_string(), q, a, b))
}
pub fn sigma(x: &str, q: Grade, a: T, b: T) -> T {
    Rc::new(Term::Sigma(x.to_string(), q, a, b))
}
pub fn app(f: T, a: T) -> T {
    Rc::new(Term::App(f, a))
}
pub fn arrow(q: Grade, a: T, b: T) -> T {
    Rc::new(Term::Arrow(q, a, b))
}
pub fn tensor(a: T, b: T) -> T {
    Rc::new(Term::Tensor(a, b))
}
pub fn sum(a: T, b: T) -> T {
    Rc::new(Term::Sum(a, b))
}
pub fn pair(q: Grade, a: T, b: T) -> T {
    Rc::new(Term::Pair(q, a, b))
}
pub fn unit_elim(a: T, b: T) -> T {
    Rc::new(Term::UnitElim(a, b))
}
pub fn spread(x: &str, y: &str, a: T, b: T) -> T {
    Rc::new(Term::SigmaElim(x.to_string(), y.to_string(), a, b))
}
pub fn inj1(a: T) -> T {
    Rc::new(Term::Inj1(a))
}
pub fn inj2(a: T) -> T {
    Rc::new(Term::Inj2(a))
}
pub fn case(q: Grade, s: T, b1: T, b2: T) -> T {
    Rc::new(Term::Case(q, s, b1, b2))
}
pub fn boxed(q: Grade, a: T) -> T {
    Rc::new(Term::Box(q, a))
}
pub fn box_ty(q: Grade, a: T) -> T {
    Rc::new(Term::BoxTy(q, a))
}
pub fn let_box(x: &str, a: T, b: T) -> T {
    Rc::new(Term::LetBox(x.to_string(), a, b))
}

/// Caller-owned fresh-name supply. Produces `base%k` names skipping anything
/// the caller says to avoid.
#[derive(Debug, Clone, Default)]
pub struct Fresh {
    next: u64,
}

impl Fresh {
    pub fn new() -> Self {
        Fresh { next: 0 }
    }

    pub fn starting_at(k: u64) -> Self {
        Fresh { next: k }
    }

    pub fn counter(&self) -> u64 {
        self.next
    }

    pub fn name(&mut self, base: &str, avoid: impl Fn(&str) -> bool) -> Name {
        let base = base_name(base);
        loop {
            let cand = format!("{base}%{}", self.next);
            self.next += 1;
            if !avoid(&cand) {
                return cand;
            }
        }
    }
}

/// `x%3` -> `x`.
pub fn base_name(x: &str) -> &str {
    x.split('%').next().unwrap_or(x)
}

pub fn free_vars(a: &Term) -> BTreeSet<Name> {
    let mut out = BTreeSet::new();
    fv_into(a, &mut Vec::new(), &mut out);
    out
}

fn fv_into<'a>(a: &'a Term, bound: &mut Vec<&'a str>, out: &mut BTreeSet<Name>) {
    use Term::*;
    match a {
        Type | Unit | UnitVal => {}
        Var(x) => {
            if !bound.contains(&x.as_str()) {
                out.insert(x.clone());
            }
        }
        Pi(x, _, d, b) | Lam(x, _, d, b) | Sigma(x, _, d, b) => {
            fv_into(d, bound, out);
            bound.push(x);
            fv_into(b, bound, out);
            bound.pop();
        }
        LetBox(x, s, b) => {
            fv_into(s, bound, out);
            bound.push(x);
            fv_into(b, bound, out);
            bound.pop();
        }
        SigmaElim(x, y, s, b) => {
            fv_into(s, bound, out);
            bound.push(x);
            bound.push(y);
            fv_into(b, bound, out);
            bound.pop();
            bound.pop();
        }
        UnitElim(a, b) | App(a, b) | Pair(_, a, b) | Sum(a, b) | Arrow(_, a, b) | Tensor(a, b) => {
            fv_into(a, bound, out);
            fv_into(b, bound, out);
        }
        Inj1(a) | Inj2(a) | Box(_, a) | BoxTy(_, a) => fv_into(a, bound, out),
        Case(_, s, b1, b2) => {
            fv_into(s, bound, out);
            fv_into(b1, bound, out);
            fv_into(b2, bound, out);
        }
    }
}

/// Every name occurring in the term, bound or free.
pub fn all_names(a: &Term, out: &mut BTreeSet<Name>) {
    use Term::*;
    match a {
        Type | Unit | UnitVal => {}
        Var(x) => {
            out.insert(x.clone());
        }
        Pi(x, _, d, b) | Lam(x, _, d, b) | Sigma(x, _, d, b) | LetBox(x, d, b) => {
            out.insert(x.clone());
            all_names(d, out);
            all_names(b, out);
        }
        SigmaElim(x, y, s, b) => {
            out.insert(x.clone());
            out.insert(y.clone());
            all_names(s, out);
            all_names(b, out);
        }
        UnitElim(a, b) | App(a, b) | Pair(_, a, b) | Sum(a, b) | Arrow(_, a, b) | Tensor(a, b) => {
            all_names(a, out);
            all_names(b, out);
        }
        Inj1(a) | Inj2(a) | Box(_, a) | BoxTy(_, a) => all_names(a, out),
        Case(_, s, b1, b2) => {
            all_names(s, out);
            all_names(b1, out);
            all_names(b2, out);
        }
    }
}

pub fn mentions(a: &Term, x: &str) -> bool {
    free_vars(a).contains(x)
}

/// Single capture-avoiding substitution b{a/x}, renaming with `fresh`.
pub fn subst_with(body: &T, repl: &T, x: &str, fresh: &mut Fresh) -> T {
    let mut m = BTreeMap::new();
    m.insert(x.to_string(), repl.clone());
    subst_many(body, &m, fresh)
}

/// b{a/x} with a private fresh supply that avoids every name in sight.
pub fn subst(body: &T, repl: &T, x: &str) -> T {
    let mut fresh = Fresh::new();
    subst_with(body, repl, x, &mut fresh)
}

/// Simultaneous capture-avoiding substitution.
pub fn subst_many(body: &T, map: &BTreeMap<Name, T>, fresh: &mut Fresh) -> T {
    let mut avoid = BTreeSet::new();
    all_names(body, &mut avoid);
    let mut range_fv = BTreeSet::new();
    for (k, v) in map {
        avoid.insert(k.clone());
        all_names(v, &mut avoid);
        range_fv.extend(free_vars(v));
    }
    let mut s = Subst { map: map.clone(), range_fv, avoid, fresh };
    s.go(body)
}

struct Subst<'f> {
    map: BTreeMap<Name, T>,
    range_fv: BTreeSet<Name>,
    avoid: BTreeSet<Name>,
    fresh: &'f mut Fresh,
}

impl Subst<'_> {
    fn go(&mut self, t: &T) -> T {
        use Term::*;
        if self.map.is_empty() {
            return t.clone();
        }
        match &**t {
            Type | Unit | UnitVal => t.clone(),
            Var(y) => self.map.get(y).cloned().unwrap_or_else(|| t.clone()),
            Pi(x, q, d, b) => {
                let d = self.go(d);
                let (x, b) = self.under(x, b);
                Rc::new(Pi(x, *q, d, b))
            }
            Lam(x, q, d, b) => {
                let d = self.go(d);
                let (x, b) = self.under(x, b);
                Rc::new(Lam(x, *q, d, b))
            }
            Sigma(x, q, d, b) => {
                let d = self.go(d);
                let (x, b) = self.under(x, b);
                Rc::new(Sigma(x, *q, d, b))
            }
            LetBox(x, s, b) => {
                let s = self.go(s);
                let (x, b) = self.under(x, b);
                Rc::new(LetBox(x, s, b))
            }
            SigmaElim(x, y, s, b) => {
                let s = self.go(s);
                let (names, b) = self.under_many(&[x.clone(), y.clone()], b);
                Rc::new(SigmaElim(names[0].clone(), names[1].clone(), s, b))
            }
            UnitElim(a, b) => Rc::new(UnitElim(self.go(a), self.go(b))),
            App(a, b) => Rc::new(App(self.go(a), self.go(b))),
            Pair(q, a, b) => Rc::new(Pair(*q, self.go(a), self.go(b))),
            Sum(a, b) => Rc::new(Sum(self.go(a), self.go(b))),
            Arrow(q, a, b) => Rc::new(Arrow(*q, self.go(a), self.go(b))),
            Tensor(a, b) => Rc::new(Tensor(self.go(a), self.go(b))),
            Inj1(a) => Rc::new(Inj1(self.go(a))),
            Inj2(a) => Rc::new(Inj2(self.go(a))),
            Box(q, a) => Rc::new(Box(*q, self.go(a))),
            BoxTy(q, a) => Rc::new(BoxTy(*q, self.go(a))),
            Case(q, s, b1, b2) => Rc::new(Case(*q, self.go(s), self.go(b1), self.go(b2))),
        }
    }

    fn under(&mut self, x: &Name, b: &T) -> (Name, T) {
        let (names, b) = self.under_many(std::slice::from_ref(x), b);
        (names.into_iter().next().unwrap(), b)
    }

    fn under_many(&mut self, xs: &[Name], b: &T) -> (Vec<Name>, T) {
        let saved_map = self.map.clone();
        for x in xs {
            self.map.remove(x);
        }
        let b_fv = free_vars(b);
        self.map.retain(|k, _| b_fv.contains(k));
        let mut names = Vec::new();
        let mut renames = Vec::new();
        for x in xs {
            if self.range_fv.contains(x) && !self.map.is_empty() {
                let avoid = &self.avoid;
                let y = self.fresh.name(x, |c| avoid.contains(c));
                self.avoid.insert(y.clone());
                renames.push((x.clone(), Rc::new(Term::Var(y.clone()))));
                names.push(y);
            } else {
                names.push(x.clone());
            }
        }
        for (x, v) in renames {
            self.map.insert(x, v);
        }
        let b = self.go(b);
        self.map = saved_map;
        (names, b)
    }
}

/// Equality up to renaming of bound variables; grades must agree exactly.
pub fn alpha_eq(a: &Term, b: &Term) -> bool {
    alpha(a, b, &mut Vec::new(), &mut Vec::new())
}

fn lookup(env: &[&str], x: &str) -> Option<usize> {
    env.iter().rposition(|y| *y == x)
}

fn alpha<'a>(a: &'a Term, b: &'a Term, la: &mut Vec<&'a str>, lb: &mut Vec<&'a str>) -> bool {
    use Term::*;
    let bind = |la: &mut Vec<&'a str>, lb: &mut Vec<&'a str>, xs: &[&'a str], ys: &[&'a str], l: &'a Term, r: &'a Term| {
        la.extend_from_slice(xs);
        lb.extend_from_slice(ys);
        let ok = alpha(l, r, la, lb);
        la.truncate(la.len() - xs.len());
        lb.truncate(lb.len() - ys.len());
        ok
    };
    match (a, b) {
        (Type, Type) | (Unit, Unit) | (UnitVal, UnitVal) => true,
        (Var(x), Var(y)) => match (lookup(la, x), lookup(lb, y)) {
            (Some(i), Some(j)) => i == j,
            (None, None) => x == y,
            _ => false,
        },
        (Pi(x, q, d, c), Pi(y, r, e, f)) | (Lam(x, q, d, c), Lam(y, r, e, f)) | (Sigma(x, q, d, c), Sigma(y, r, e, f)) => {
            q == r && alpha(d, e, la, lb) && bind(la, lb, &[x], &[y], c, f)
        }
        (LetBox(x, s, c), LetBox(y, t, f)) => alpha(s, t, la, lb) && bind(la, lb, &[x], &[y], c, f),
        (SigmaElim(x1, x2, s, c), SigmaElim(y1, y2, t, f)) => {
            alpha(s, t, la, lb) && bind(la, lb, &[x1, x2], &[y1, y2], c, f)
        }
        (UnitElim(a1, a2), UnitElim(b1, b2))
        | (App(a1, a2), App(b1, b2))
        | (Sum(a1, a2), Sum(b1, b2))
        | (Tensor(a1, a2), Tensor(b1, b2)) => alpha(a1, b1, la, lb) && alpha(a2, b2, la, lb),
        (Pair(q, a1, a2), Pair(r, b1, b2)) | (Arrow(q, a1, a2), Arrow(r, b1, b2)) => {
            q == r && alpha(a1, b1, la, lb) && alpha(a2, b2, la, lb)
        }
        (Inj1(x), Inj1(y)) | (Inj2(x), Inj2(y)) => alpha(x, y, la, lb),
        (Box(q, x), Box(r, y)) | (BoxTy(q, x), BoxTy(r, y)) => q == r && alpha(x, y, la, lb),
        (Case(q, s, a1, a2), Case(r, t, b1, b2)) => {
            q == r && alpha(s, t, la, lb) && alpha(a1, b1, la, lb) && alpha(a2, b2, la, lb)
        }
        _ => false,
    }
}

/// Structural size, used to bound generators and report sizes.
pub fn size(a: &Term) -> usize {
    use Term::*;
    1 + match a {
        Type | Unit | UnitVal | Var(_) => 0,
        Pi(_, _, d, b) | Lam(_, _, d, b) | Sigma(_, _, d, b) | LetBox(_, d, b) | SigmaElim(_, _, d, b) => size(d) + size(b),
        UnitElim(a, b) | App(a, b) | Pair(_, a, b) | Sum(a, b) | Arrow(_, a, b) | Tensor(a, b) => size(a) + size(b),
        Inj1(a) | Inj2(a) | Box(_, a) | BoxTy(_, a) => size(a),
        Case(_, s, b1, b2) => size(s) + size(b1) + size(b2),
    }
}

/// Renames free variables according to `map` (variables only, capture-avoiding).
pub fn rename_free(a: &T, map: &BTreeMap<Name, Name>) -> T {
    let m: BTreeMap<Name, T> = map.iter().map(|(k, v)| (k.clone(), var(v))).collect();
    subst_many(a, &m, &mut Fresh::new())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one() -> Grade {
        Grade(1)
    }

    #[test]
    fn subst_examples() {
        let a = var("a");
        assert_eq!(subst(&var("x"), &a, "x"), a);
        let id = lam("y", one(), var("A"), var("y"));
        assert_eq!(subst(&id, &a, "x"), id);
        let k = lam("y", one(), var("A"), var("x"));
        let r = subst(&k, &var("y"), "x");
        match &*r {
            Term::Lam(y2, _, _, body) => {
                assert_ne!(y2, "y");
                assert_eq!(**body, Term::Var("y".into()));
            }
            _ => panic!("expected lambda"),
        }
    }

    #[test]
    fn subst_respects_shadowing() {
        let t = lam("x", one(), var("A"), var("x"));
        assert_eq!(subst(&t, &unit(), "x"), t);
    }

    #[test]
    fn simultaneous_substitution_does_not_chain() {
        let body = pair(one(), var("x"), var("y"));
        let mut m = BTreeMap::new();
        m.insert("x".to_string(), var("y"));
        m.insert("y".to_string(), var("x"));
        let r = subst_many(&body, &m, &mut Fresh::new());
        assert_eq!(r, pair(one(), var("y"), var("x")));
    }

    #[test]
    fn alpha_examples() {
        assert!(alpha_eq(&lam("x", one(), var("A"), var("x")), &lam("y", one(), var("A"), var("y"))));
        assert!(!alpha_eq(&lam("x", one(), var("A"), var("x")), &lam("x", Grade(0), var("A"), var("x"))));
        assert!(!alpha_eq(&inj1(unit()), &inj2(unit())));
        assert!(!alpha_eq(&lam("x", one(), var("A"), var("y")), &lam("y", one(), var("A"), var("y"))));
    }

    #[test]
    fn free_var_examples() {
        let t = lam("x", one(), var("A"), var("x"));
        assert_eq!(free_vars(&t), ["A".to_string()].into_iter().collect());
        assert_eq!(free_vars(&app(var("f"), var("x"))).len(), 2);
        let c = case(one(), var("s"), var("b1"), var("b2"));
        assert_eq!(free_vars(&c).len(), 3);
    }

    #[test]
    fn fresh_names_skip_avoided() {
        let mut f = Fresh::new();
        let n = f.name("x%4", |c| c == "x%0");
        assert_eq!(n, "x%1");
    }
}
