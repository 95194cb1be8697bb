//! Call-by-name small-step evaluation by substitution.

use std::collections::BTreeMap;
use std::rc::Rc;

use thiserror::Error;

use crate::syntax::{subst, subst_many, Fresh, Term, T};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Shape {
    Value,
    Steps,
    /// Not a value and no rule applies (e.g. an open neutral term).
    Stuck,
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum EvalError {
    #[error("fuel exhausted after {0} steps")]
    Fuel(usize),
}

pub fn is_value(a: &Term) -> bool {
    use Term::*;
    matches!(
        a,
        UnitVal | Lam(..) | Box(..) | Pair(..) | Inj1(_) | Inj2(_) | Type | Unit | Pi(..) | Sigma(..) | Sum(..)
            | Arrow(..) | Tensor(..) | BoxTy(..)
    )
}

pub fn classify(a: &T) -> Shape {
    if is_value(a) {
        Shape::Value
    } else if step(a).is_some() {
        Shape::Steps
    } else {
        Shape::Stuck
    }
}

/// The unique call-by-name reduct, if any.
pub fn step(a: &T) -> Option<T> {
    use Term::*;
    match &**a {
        App(f, arg) => match &**f {
            Lam(x, _, _, body) => Some(subst(body, arg, x)),
            _ => step(f).map(|f2| Rc::new(App(f2, arg.clone()))),
        },
        UnitElim(s, b) => match &**s {
            UnitVal => Some(b.clone()),
            _ => step(s).map(|s2| Rc::new(UnitElim(s2, b.clone()))),
        },
        LetBox(x, s, b) => match &**s {
            Box(_, inner) => Some(subst(b, inner, x)),
            _ => step(s).map(|s2| Rc::new(LetBox(x.clone(), s2, b.clone()))),
        },
        SigmaElim(x, y, s, b) => match &**s {
            Pair(_, a1, a2) => {
                let mut m = BTreeMap::new();
                m.insert(x.clone(), a1.clone());
                m.insert(y.clone(), a2.clone());
                Some(subst_many(b, &m, &mut Fresh::new()))
            }
            _ => step(s).map(|s2| Rc::new(SigmaElim(x.clone(), y.clone(), s2, b.clone()))),
        },
        Case(q, s, b1, b2) => match &**s {
            Inj1(v) => Some(Rc::new(App(b1.clone(), v.clone()))),
            Inj2(v) => Some(Rc::new(App(b2.clone(), v.clone()))),
            _ => step(s).map(|s2| Rc::new(Case(*q, s2, b1.clone(), b2.clone()))),
        },
        _ => None,
    }
}

/// Iterate `step` to a fixpoint. Returns the final term and the step count.
pub fn eval(a: &T, fuel: usize) -> Result<(T, usize), EvalError> {
    let mut cur = a.clone();
    let mut n = 0;
    while let Some(next) = step(&cur) {
        if n == fuel {
            return Err(EvalError::Fuel(n));
        }
        cur = next;
        n += 1;
    }
    Ok((cur, n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Grade, Semiring};
    use crate::syntax::*;

    #[test]
    fn beta() {
        let t = app(lam("x", Grade(1), unit_ty(), var("x")), unit());
        assert_eq!(step(&t), Some(unit()));
        assert_eq!(eval(&t, 10).unwrap(), (unit(), 1));
    }

    #[test]
    fn case_one_beta() {
        let t = case(Grade(1), inj1(var("a")), var("b1"), var("b2"));
        assert_eq!(step(&t), Some(app(var("b1"), var("a"))));
    }

    #[test]
    fn values_do_not_step() {
        assert_eq!(step(&unit()), None);
        assert_eq!(classify(&unit()), Shape::Value);
        assert_eq!(classify(&app(var("f"), unit())), Shape::Stuck);
    }

    #[test]
    fn spread_beta() {
        let s = Semiring::linearity();
        let t = parse_term("let (x, y) = (unit, unit) in y", &s).unwrap();
        let (v, n) = eval(&t, 10).unwrap();
        assert_eq!(v, unit());
        assert!(n >= 1);
        let t = parse_term("let (x, y) = (y, x) in (x, y)", &s).unwrap();
        assert_eq!(eval(&t, 10).unwrap().0, pair(Grade(1), var("y"), var("x")));
    }

    #[test]
    fn omega_runs_out_of_fuel() {
        let s = Semiring::linearity();
        let w = parse_term("\\x :1 Type. x x", &s).unwrap();
        let t = app(w.clone(), w);
        assert_eq!(eval(&t, 100), Err(EvalError::Fuel(100)));
    }
}
