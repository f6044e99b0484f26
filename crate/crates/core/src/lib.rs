//! Exact verification of Hopf and multiplier Hopf structure.
//!
//! Given an algebra and a comultiplication, the engine solves for integrals and
//! cointegrals, checks faithfulness and bijectivity of the Galois maps, and
//! constructs the counit and antipode from the integrals (or cointegrals),
//! verifying every identity with exact rational arithmetic.

pub mod algebra;
pub mod catalog;
pub mod cointegrals;
pub mod comult;
pub mod exactlin;
pub mod integrals;
pub mod kg;
pub mod report;
pub mod ls_engine;
pub mod specfile;
pub mod tensor;
