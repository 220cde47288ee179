//! Exact structure and enumeration toolkit for the permutation classes
//! `Av(4213, 2143)` (class D) and `Av(4213, 2413, 2143)` (class H).
//!
//! The crate is organised bottom-up:
//!
//! * [`perm`]: permutations, classical pattern containment and exhaustive
//!   class generation (the brute-force oracle).
//! * [`structure`]: griddings in the grid class with an empty upper-left cell,
//!   increasing left and top cells and a 213-avoiding lower-right cell; Hasse
//!   forests of 213-avoiders; canonical griddings and their inverse.
//! * [`series`]: exact truncated power series with marker variables, the
//!   combinatorial grammars, closed forms, moments, distributions and
//!   coefficient asymptotics.
//! * [`sampler`]: uniform random generation by the recursive method.
//! * [`verify`]: cross-check suites used by the command-line tool.

pub mod error;
pub mod perm;
pub mod sampler;
pub mod series;
pub mod structure;
pub mod verify;

pub use error::{Error, Result};
pub use perm::{
    all_permutations, avoids_all, contains, enumerate_class, iterate_class, CountTable,
    PatternBasis, Permutation,
};
