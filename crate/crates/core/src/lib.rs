//! Explicit finite quotients of free groups that separate elements from a
//! finitely generated subgroup.
//!
//! Given a free group `F` of rank `r`, a finitely generated subgroup `H`
//! (presented by generator words) and words `g_1, ..., g_n` outside `H`, this
//! crate builds a surjection from `F` onto a finite permutation group under
//! which the image of every `g_i` moves a distinguished base point while the
//! image of `H` fixes it. Three completion modes are supported:
//!
//! * **hall** — complete the traced Stallings graph to a covering on the same
//!   vertex set; the quotient is a plain finite permutation group.
//! * **alternating** — attach gadget graphs so the cover has a prime number of
//!   vertices and every generator acts as an even permutation; the quotient is
//!   verified (by exact order computation) to be the full alternating group.
//! * **symmetric** — one sign choice is flipped so the quotient is verified to
//!   be the full symmetric group.
//!
//! The pipeline lives in [`separation`]; the graph machinery in [`stallings`]
//! and [`completion`]; exact permutation-group verification in [`permgroup`].

pub mod completion;
pub mod permgroup;
mod primes;
pub mod separation;
pub mod stallings;
pub mod words;

pub use completion::{
    alternating_complete, hall_complete, partial_complete, symmetric_complete, CompletionError,
    GadgetPlan, SignVector,
};
pub use permgroup::{
    classify, evaluate_word, graph_to_perms, group_order, Classification, GroupDescription,
    PermError, Permutation,
};
pub use separation::{
    separate, verify_certificate, Mode, ProblemInstance, SeparationCertificate, SeparationError,
    VerificationReport,
};
pub use stallings::{core_graph, has_finite_index, is_member, RawGraph, StallingsGraph};
pub use words::{Letter, ParseError, Sign, Word};
