//! Canonical forms of factors `I/J` of monomial ideals, together with exact
//! depth (multigraded Koszul homology) and Stanley depth (interval
//! partitions of the characteristic poset).
//!
//! Both invariants are unchanged by canonicalization, which compresses the
//! exponents of every variable to `1, 2, …, s`. The canonical form is usually
//! far smaller, so it is the natural input for the expensive Stanley depth
//! search.

pub mod bench;
pub mod canonical;
pub mod depth;
pub mod error;
pub mod grid;
pub mod limits;
pub mod linalg;
pub mod monomial;
pub mod parse;
pub mod stanley;

pub use canonical::{
    canonicalize, canonicalize_var, collapse_gap_step, gaps, is_canonical, shift_transform,
    type_wrt, VariableType,
};
pub use depth::{depth, homology_dims, pd, support, DepthOptions, DepthReport, KoszulSlice};
pub use error::{Error, Result};
pub use limits::Limits;
pub use linalg::{matrix_rank, FieldChoice, IntMatrix};
pub use monomial::{divides, join_exponents, minimalize, Factor, Monomial, MonomialIdeal, Ring};
pub use parse::{parse_factor, parse_file, parse_ideal, IdealFile};
pub use stanley::{
    char_poset, exists_partition, rho, sdepth, verify_decomposition, CharacteristicPoset, Interval,
    IntervalPartition, Sdepth,
};
