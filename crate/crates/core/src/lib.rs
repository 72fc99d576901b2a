//! Executable constructions around membership problems in Artin groups.
//!
//! The crate is organised bottom-up:
//!
//! * [`words`]: alphabets, group words, free reduction and free-product normal forms.
//! * [`raag`]: labeled defining graphs and the word problem for right-angled Artin groups,
//!   including a fixed catalog of conjugates of the `A(P4)` generators.
//! * [`braid`]: braid words, Garside left normal forms, the projection to the symmetric
//!   group and the embedding of `A(P4)` into `B4`.
//! * [`automata`]: finite automata with ε-transitions and Benois saturation for
//!   rational subsets of free groups.
//! * [`reduction`]: compiles automata into fixed-target submonoid instances in
//!   `G * F3`, `A(P4)` and `B4`, and a bounded search used to probe such instances.
//! * [`classifier`]: forbidden induced subgraph detection and decidability verdicts
//!   for arbitrary Artin groups.

pub mod automata;
pub mod braid;
pub mod classifier;
mod error;
pub mod raag;
pub mod reduction;
pub mod words;

pub use error::{Error, Result};
