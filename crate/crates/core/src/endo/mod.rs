//! Evaluation of cellular generators in the endomorphism operad of a finite
//! graded module.
//!
//! A [`MultiMap`] is a multilinear map `A^{⊗k} → A` or `A^{⊗k} → R` stored by
//! its structure constants on basis tuples. Composition follows the Koszul
//! rule `(f ∘_i g)(a₁,…) = (−1)^{|g|(|a₁|+…+|a_{i−1}|)} f(…, g(…), …)` and the
//! Hom differential is `[D,f] = d f − (−1)^{|f|} f d`.
//!
//! [`StructureSet`] holds `d`, `μ`, `λ` and `ϱ`. The bimodule is the algebra
//! itself. [`Evaluator`] sends a generator of the cellular operad to the
//! corresponding composite of structure maps, and [`tensor`] builds the
//! structure on a tensor product from the cellular diagonal.

pub mod fixtures;
mod map;
mod structure;
pub mod tensor;

pub use map::{rational, GradedModule, MultiMap, Target, Q};
pub use structure::{chain_defect, EndElement, Evaluator, StructureSet};
