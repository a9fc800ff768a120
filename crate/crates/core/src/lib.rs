// SPDX-License-Identifier: Apache-2.0

//! Boolean type functions of higher-order quantum theory: the algebra `F_n`,
//! Möbius expansions, type terms, structure posets, regular subtypes,
//! signalling, normal forms and a numerical check against Choi projectors.

pub mod boolfn;
pub mod catalog;
pub mod choiverify;
pub mod error;
pub mod mobius;
pub mod normalform;
pub mod poset;
pub mod signalling;
pub mod subtypes;
pub mod suite;
pub mod typeterm;

pub use boolfn::{combine, BinOp, BitString, BoolFn, IOSplit, Permutation, Subset};
pub use error::{Error, Result};
pub use mobius::MobiusCoeffs;
pub use typeterm::{ChainSpec, TypeFunction, TypeTerm};
pub use normalform::{LabelChain, NormalForm};
pub use poset::StructurePoset;
