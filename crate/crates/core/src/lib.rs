//! Exhaustive computation on finite topological spaces: hyperspaces,
//! function spaces, filters, final topologies and choice functions.
//!
//! Points of an `n`-point space are `0..n`; subsets are [`SubsetBits`]
//! masks and families of subsets are canonically ordered [`SetFamily`]s.
//! Every finite topology is determined by the minimal open neighbourhood of
//! each point, which most algorithms here exploit.

pub mod choice;
pub mod error;
pub mod filter;
pub mod finality;
pub mod function_space;
pub mod harness;
pub mod hyperspace;
pub mod io;
pub mod limits;
pub mod map;
pub mod product;
pub mod space;
pub mod subset;

pub use error::{Error, Result};
pub use filter::{Carrier, CarrierKind, FilterOnCarrier};
pub use function_space::{CarrierChoice, FunctionSpace};
pub use hyperspace::{HyperSpace, Variant};
pub use map::FiniteMap;
pub use space::{FiniteSpace, OpenTest};
pub use subset::{SetFamily, SubsetBits};
