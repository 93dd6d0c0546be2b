//! Exact and certified-numeric kernels for heights of algebraic numbers,
//! p-adic splitting statistics of number-field towers, and Néron–Tate
//! canonical heights on elliptic curves over Q.
//!
//! The crate is organized around six areas:
//!
//! - [`exactpoly`]: integer polynomial arithmetic (resultants, discriminants,
//!   squarefree decomposition) and certified complex root isolation, feeding
//!   Mahler measures, houses and Weil heights.
//! - [`heights`]: relative Mahler measures and relative heights with respect
//!   to the embeddings of a base field, and the inequalities relating them.
//! - [`padic`]: valuations, factorization over F_p, splitting types (e, f),
//!   Z_p root lifting, residue clustering and the acceleration machinery.
//! - [`towers`]: prime-ideal norm counts N_q along towers of number fields,
//!   psi/xi/chi estimation, and evaluators for every explicit height floor.
//! - [`elliptic`]: Weierstrass models, minimal models, reduction types,
//!   local heights at every place, and the canonical height with an
//!   independent doubling-limit oracle.
//! - [`report`] and [`family`]: experiment configuration, reproducible JSON
//!   result envelopes, and the totally p-adic polynomial family generator.
//!
//! Every operation is a pure function of its inputs; values are immutable
//! after construction and safe to share across threads. Real-valued results
//! are returned as [`interval::Interval`] enclosures with dyadic (f64)
//! endpoints, and inequality checks only report a verdict when the relevant
//! interval endpoints separate.

pub mod elliptic;
pub mod exactpoly;
pub mod family;
pub mod heights;
pub mod interval;
pub mod padic;
pub mod report;
pub mod towers;
