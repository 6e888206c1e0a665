//! Exact computation on sequence spaces.
//!
//! Points are infinite sequences whose `l`-th term is drawn from a finite
//! alphabet `E_l`, represented by eventually periodic descriptors. On top of
//! that the crate provides cylinders, the Cantor-set and binary codings into
//! `[0, 1]`, cylinder ultrametrics, termwise algebra and shifts, measures on
//! cylinders and integration of step functions. All arithmetic is exact.
//!
//! ```
//! use symspace::{coding, rational::rat, SequenceDescriptor};
//!
//! let x = coding::BinaryPoint::new(SequenceDescriptor::new(vec![], vec![1, 0]).unwrap()).unwrap();
//! assert_eq!(coding::tau(&x), rat(3, 4));
//! ```

pub mod coding;
pub mod dynamics;
pub mod error;
pub mod integration;
pub mod json;
pub mod measure;
pub mod metric;
pub mod rational;
pub mod space;

pub use error::{Error, Result};
pub use rational::Rational;
pub use space::{
    Alphabet, BiSequenceDescriptor, Cylinder, Label, LevelSystem, SequenceDescriptor, Symbol, Word,
    DEFAULT_BUDGET,
};
