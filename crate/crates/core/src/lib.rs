//! GraD: graded dependent types with a usage-instrumented heap machine.

pub mod algebra;
pub mod contexts;
pub mod syntax;
pub mod error;
pub mod simple_checker;
pub mod dep_checker;
pub mod subst_eval;
pub mod heap_machine;
pub mod program;
pub mod corpus;
pub mod analysis;
pub mod suites;
