//! Example programs shipped with the library. Each file starts with
//! `-- semiring: NAME` and `-- system: simple|dep|none` header lines.

use crate::algebra::Semiring;
use crate::program::System;
use crate::syntax::{parse_program, Program};

macro_rules! corpus {
    ($($name:literal),* $(,)?) => {
        &[$(($name, include_str!(concat!("../corpus/", $name, ".grad")))),*]
    };
}

pub const SOURCES: &[(&str, &str)] = corpus![
    "id",
    "irrelevant",
    "poly_id",
    "poly_id_applied",
    "intro_trace",
    "stuck",
    "unwise",
    "heap_ex",
    "swap",
    "case",
    "boxed",
    "twice",
    "defs",
    "zero_arg",
    "single_pointer",
    "secret",
    "type_def",
];

#[derive(Debug, Clone)]
pub struct Example {
    pub name: &'static str,
    pub source: &'static str,
    pub semiring: Semiring,
    /// The system the program is well typed in, if any.
    pub system: Option<System>,
    pub program: Program,
}

/// Value of a `-- key: value` header line.
pub fn header<'a>(src: &'a str, key: &str) -> Option<&'a str> {
    src.lines()
        .filter_map(|l| l.trim().strip_prefix("--"))
        .filter_map(|l| l.trim().strip_prefix(key))
        .filter_map(|l| l.trim_start().strip_prefix(':'))
        .map(str::trim)
        .next()
}

pub fn load(name: &'static str, source: &'static str) -> Example {
    let semiring = Semiring::by_name(header(source, "semiring").unwrap_or("linearity")).expect("corpus semiring");
    let system = match header(source, "system") {
        Some("none") => None,
        Some(s) => Some(s.parse().expect("corpus system")),
        None => Some(System::Simple),
    };
    let program = parse_program(source, &semiring).unwrap_or_else(|e| panic!("corpus {name}: {e:?}"));
    Example { name, source, semiring, system, program }
}

pub fn all() -> Vec<Example> {
    SOURCES.iter().map(|&(n, s)| load(n, s)).collect()
}

pub fn get(name: &str) -> Option<Example> {
    SOURCES.iter().find(|(n, _)| *n == name).map(|&(n, s)| load(n, s))
}
