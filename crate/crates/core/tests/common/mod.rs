//! Random term generation shared by the property and acceptance targets.
#![allow(dead_code)]

use proptest::prelude::*;

use grad_core::algebra::Grade;
use grad_core::syntax::*;

pub fn grade() -> impl Strategy<Value = Grade> {
    (0u64..3).prop_map(Grade)
}

pub fn name() -> impl Strategy<Value = String> {
    prop::sample::select(vec!["x", "y", "z"]).prop_map(String::from)
}

pub fn term() -> impl Strategy<Value = T> {
    let leaf = prop_oneof![Just(ty()), Just(unit_ty()), Just(unit()), name().prop_map(|x| var(&x))];
    leaf.prop_recursive(4, 24, 3, |inner| {
        prop_oneof![
            (name(), grade(), inner.clone(), inner.clone()).prop_map(|(x, q, a, b)| lam(&x, q, a, b)),
            (name(), grade(), inner.clone(), inner.clone()).prop_map(|(x, q, a, b)| pi(&x, q, a, b)),
            (name(), grade(), inner.clone(), inner.clone()).prop_map(|(x, q, a, b)| sigma(&x, q, a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| app(a, b)),
            (grade(), inner.clone(), inner.clone()).prop_map(|(q, a, b)| pair(q, a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| unit_elim(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| spread("x", "y", a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| sum(a, b)),
            inner.clone().prop_map(inj1),
            inner.clone().prop_map(inj2),
            (grade(), inner.clone(), inner.clone(), inner.clone()).prop_map(|(q, s, a, b)| case(q, s, a, b)),
            (grade(), inner.clone()).prop_map(|(q, a)| box_ty(q, a)),
            (grade(), inner.clone()).prop_map(|(q, a)| boxed(q, a)),
            (name(), inner.clone(), inner.clone()).prop_map(|(x, a, b)| let_box(&x, a, b)),
            (grade(), inner.clone(), inner.clone()).prop_map(|(q, a, b)| arrow(q, a, b)),
            (inner.clone(), inner).prop_map(|(a, b)| tensor(a, b)),
        ]
    })
}
