use super::Term;
use crate::algebra::{Grade, Semiring};

// precedence: 0 expr, 1 arrow, 2 sum, 3 tensor, 4 application head, 5 atom
pub fn print(sr: &Semiring, t: &Term) -> String {
    let mut out = String::new();
    go(&|g| sr.show(g), sr.one(), t, 0, &mut out);
    out
}

/// Grades printed as raw carrier indices; for debugging without a semiring.
pub fn print_raw(t: &Term) -> String {
    let mut out = String::new();
    go(&|g: Grade| g.0.to_string(), Grade(1), t, 0, &mut out);
    out
}

fn go(show: &dyn Fn(Grade) -> String, one: Grade, t: &Term, prec: u8, out: &mut String) {
    use Term::*;
    let paren = |need: bool, out: &mut String, f: &mut dyn FnMut(&mut String)| {
        if need {
            out.push('(');
        }
        f(out);
        if need {
            out.push(')');
        }
    };
    match t {
        Type => out.push_str("Type"),
        Unit => out.push_str("Unit"),
        UnitVal => out.push_str("unit"),
        Var(x) => out.push_str(x),
        Lam(x, q, a, b) | Pi(x, q, a, b) | Sigma(x, q, a, b) => paren(prec > 0, out, &mut |out| {
            let kw = match t {
                Lam(..) => "\\",
                Pi(..) => "Pi ",
                _ => "Sigma ",
            };
            out.push_str(&format!("{kw}{x} :{} ", show(*q)));
            go(show, one, a, 0, out);
            out.push_str(". ");
            go(show, one, b, 0, out);
        }),
        UnitElim(a, b) => paren(prec > 0, out, &mut |out| {
            out.push_str("let unit = ");
            go(show, one, a, 0, out);
            out.push_str(" in ");
            go(show, one, b, 0, out);
        }),
        LetBox(x, a, b) => paren(prec > 0, out, &mut |out| {
            out.push_str(&format!("let box {x} = "));
            go(show, one, a, 0, out);
            out.push_str(" in ");
            go(show, one, b, 0, out);
        }),
        SigmaElim(x, y, a, b) => paren(prec > 0, out, &mut |out| {
            out.push_str(&format!("let ({x}, {y}) = "));
            go(show, one, a, 0, out);
            out.push_str(" in ");
            go(show, one, b, 0, out);
        }),
        Case(q, s, b1, b2) => paren(prec > 0, out, &mut |out| {
            out.push_str(&format!("case {} ", show(*q)));
            go(show, one, s, 0, out);
            out.push_str(" of ");
            go(show, one, b1, 0, out);
            out.push_str(" ; ");
            go(show, one, b2, 0, out);
        }),
        Arrow(q, a, b) => paren(prec > 1, out, &mut |out| {
            go(show, one, a, 2, out);
            out.push_str(&format!(" -{}> ", show(*q)));
            go(show, one, b, 0, out);
        }),
        Sum(a, b) => paren(prec > 2, out, &mut |out| {
            go(show, one, a, 3, out);
            out.push_str(" + ");
            go(show, one, b, 2, out);
        }),
        Tensor(a, b) => paren(prec > 3, out, &mut |out| {
            go(show, one, a, 4, out);
            out.push_str(" * ");
            go(show, one, b, 3, out);
        }),
        App(f, a) => paren(prec > 4, out, &mut |out| {
            go(show, one, f, 4, out);
            out.push(' ');
            go(show, one, a, 5, out);
        }),
        Inj1(a) | Inj2(a) => paren(prec > 4, out, &mut |out| {
            out.push_str(if matches!(t, Inj1(_)) { "inj1 " } else { "inj2 " });
            go(show, one, a, 5, out);
        }),
        Box(q, a) | BoxTy(q, a) => paren(prec > 4, out, &mut |out| {
            let kw = if matches!(t, Box(..)) { "box" } else { "Box" };
            out.push_str(&format!("{kw} {} ", show(*q)));
            go(show, one, a, 5, out);
        }),
        Pair(q, a, b) => {
            out.push('(');
            if *q != one {
                out.push_str(&format!("{} | ", show(*q)));
            }
            go(show, one, a, 0, out);
            out.push_str(", ");
            go(show, one, b, 0, out);
            out.push(')');
        }
    }
}
