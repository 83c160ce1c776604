//! catkit: finite enriched categories, the Grothendieck construction,
//! graded categories, fiber constructions, and mechanical adjunction
//! checking — all with exact arithmetic over two bases (finite sets and
//! finite-dimensional vector spaces over a prime field).
//!
//! The library is organized along the mathematics:
//!
//! * [`base`] — the symmetric monoidal base `V` with coproducts,
//!   equalizers, pullbacks, and the free functor from sets;
//! * [`vcat`] — finite `V`-categories, `V`-functors, `V`-natural
//!   transformations, and the free `V`-category `I⊗1`;
//! * [`comodule`] — comonoids, comodules, the cotensor product, and
//!   graded categories as comodule categories over `I⊗1`;
//! * [`diagram`] — oplax/lax functors from a finite index category into
//!   `V`-categories, their transformations and 2-morphisms;
//! * [`grothendieck`] — the Grothendieck construction as a 2-functor
//!   into graded categories;
//! * [`fibers`] — strict and comma fibers, the Γ 2-functors, and
//!   (pre/co)fibered structures;
//! * [`adjunction`] — units, counits, and triangle-identity checking for
//!   both adjunctions;
//! * [`io`] — deterministic serialization of every domain object;
//! * [`cli`] — the `catkit` command-line surface.
//!
//! Everything is immutable after construction and every operation is a
//! pure function: all arithmetic is exact, so every law check in the crate
//! is an equality of tables, never a tolerance comparison.

pub mod base;
pub mod error;
pub mod report;

pub mod vcat;

pub mod comodule;

pub mod diagram;

pub mod grothendieck;

pub mod fibers;

pub mod adjunction;

pub mod fixtures;

pub mod io;

pub mod cli;

pub use error::{Error, Result};
pub use report::{LawFailure, LawReport};
