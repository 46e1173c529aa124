// parity tests read better as `% 2` than as is_multiple_of
#![allow(clippy::manual_is_multiple_of)]

//! Symbolic computation with basic Whitehead products on wedges of spheres.
//!
//! The crate builds generator alphabets (either a finite wedge of spheres or
//! the generator family of the rationalized suspension of
//! `K(Z,2a) ∨ ⋁_j K(Z,2aj+1)`), enumerates the basic Whitehead products with
//! their weight/height bookkeeping, computes rational homotopy rank tables
//! via Hilton's decomposition, and verifies the enumeration independently by
//! expanding brackets into the tensor algebra with exact rational arithmetic
//! and by solving the PBW factorization of the Hilbert series.

pub mod alphabet;
pub mod basis;
pub mod error;
pub mod hilton;
mod linalg;
pub mod report;
pub mod tensor;

pub use alphabet::{compare, Alphabet, Family, Generator, Parity};
pub use basis::{
    enumerate_basic_products, enumerate_with_options, is_basic, BasicProduct, BasisRecord, Class,
    EnumerationOptions, RawTree, TieBreak,
};
pub use error::{Error, Result};
pub use hilton::{
    hilton_rank_table, pbw_dimension_oracle, r_sequence, sphere_rational_ranks, RankRecord,
    RankTable,
};
pub use report::{
    aut_entries, aut_ledger, census, verify, verify_alphabet, verify_with_products, AutLedgerRow,
    CensusRow, VerificationReport, VerifyRow,
};
pub use tensor::{
    expand, graded_square, span_rank, words_of_degree, Coeff, NCPoly, TwoSidedTensor, Word,
};
