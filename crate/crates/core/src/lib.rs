//! Exact computations with finite crossed modules, their strict Gr-categories,
//! low-degree group cohomology and group extensions of crossed-module type.
//!
//! Groups are given by Cayley tables with the identity at index 0. The
//! coefficient group `B` of a crossed module is written additively even when
//! it is not abelian; `D` is written multiplicatively.

pub mod abelian;
pub mod battery;
pub mod cohomology;
pub mod crossed;
pub mod error;
pub mod extension;
pub mod grcat;
pub mod io;
pub mod group;
pub mod limits;
pub mod oracle;
pub mod reduction;
pub mod zmod;

pub use abelian::{abelian_decompose, AbelianDecomposition};
pub use cohomology::{Cochain, CochainJson, GModule};
pub use crossed::{CrossedModule, DerivedData, ValidationReport, XModMorphism};
pub use error::{Error, Result};
pub use extension::{classify, Extension, FactorSet};
pub use grcat::{GrFunctor, StrictGrCat};
pub use group::{FiniteGroup, GroupHom, Quotient, Subgroup};
pub use limits::Limits;
pub use reduction::{choose_stick, reduce, ReducedGrCat, Stick};
