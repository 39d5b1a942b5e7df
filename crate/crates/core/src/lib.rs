//! Exact computations around the restriction map from representations of a
//! complex reductive group to those of a split real form: root data and
//! characters, graded K-theory of nilpotent cones, standard classes in
//! Grothendieck groups, and Koszul homology of finite-dimensional modules.

pub mod characters;
pub mod error;
pub mod grothendieck;
pub mod koszulhomology;
pub mod ktheory;
pub mod linalg;
pub mod pairdata;
pub mod rootdata;

pub use error::{Error, Result};
pub use pairdata::{load_pair, SymmetricPairData};
pub use rootdata::{build_root_datum, RationalWeight, RootDatum, TypeLabel, Weight};
