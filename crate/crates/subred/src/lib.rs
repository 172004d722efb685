//! A toolchain for a small typed logic-programming language with subtyping.
//!
//! The library parses programs with type and mode declarations, statically
//! checks them (transparency, nicely-modedness, nicely-typedness via
//! principal variable typings), solves type-inequality systems for principal
//! solutions, and executes queries by moded resolution while certifying at
//! every derivation step that well-typedness is preserved.
//!
//! The pieces:
//!
//! * [`typesys`] — type expressions, the constructor order with argument
//!   injections, the subtyping decision procedure, and maximum types.
//! * [`surface`] — concrete syntax, parser, and program representation.
//! * [`subsolve`] — type-inequality systems and the four-rule simplification
//!   algorithm computing principal solutions.
//! * [`modes`] — input/output modes and the nicely-moded conditions.
//! * [`checker`] — the typing rules, principal variable typings, and
//!   nicely-typedness certificates.
//! * [`engine`] — moded resolution (double matching) with per-step
//!   subject-reduction certification.
//! * [`report`] — serializable reports backing the CLI's `--json` output.
//!
//! See the crate's `examples/` directory for one runnable walkthrough per
//! capability, and the `subred` binary for the `check`, `solve`, and `run`
//! commands.

pub mod checker;
pub mod engine;
pub mod modes;
pub mod report;
pub mod subsolve;
pub mod surface;
pub mod typesys;
