use thiserror::Error;

use crate::subset::SubsetBits;

/// Topology axiom reported by [`Error::NotATopology`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axiom {
    EmptySet,
    FullSet,
    Union,
    Intersection,
}

impl std::fmt::Display for Axiom {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self {
            Axiom::EmptySet => "empty set must be open",
            Axiom::FullSet => "full set must be open",
            Axiom::Union => "opens must be closed under union",
            Axiom::Intersection => "opens must be closed under intersection",
        };
        f.write_str(name)
    }
}

#[derive(Error, Debug, Clone, PartialEq)]
pub enum Error {
    #[error("not a topology: {axiom}{}", witness_suffix(.witness))]
    NotATopology {
        axiom: Axiom,
        witness: Option<(SubsetBits, SubsetBits)>,
    },
    #[error("size limit exceeded: {what} would be {size}, limit is {limit}{}", hint_suffix(.hint))]
    SizeLimitExceeded {
        what: &'static str,
        size: u128,
        limit: u128,
        hint: Option<&'static str>,
    },
    #[error("subset {set:?} does not fit a ground set of {n} points")]
    MaskOutOfRange { set: SubsetBits, n: usize },
    #[error("{0:?} is not open")]
    NotOpen(SubsetBits),
    #[error("the generating sets have empty intersection")]
    EmptyIntersection,
    #[error("domain mismatch: expected {expected} elements, found {found}")]
    DomainMismatch { expected: usize, found: usize },
    #[error("map value {value} out of range for codomain of {cod_n} points")]
    ValueOutOfRange { value: usize, cod_n: usize },
    #[error("image {image:?} is not a member of the target family")]
    ImageNotInFamily { image: SubsetBits },
    #[error("invalid family member {0:?}: members must be non-empty")]
    EmptyMember(SubsetBits),
    #[error("filter kernel must be non-empty")]
    EmptyKernel,
    #[error("element {index} outside carrier of {len} elements")]
    ElementOutOfRange { index: usize, len: usize },
    #[error("the filter is not an ultrafilter")]
    NotAnUltrafilter,
    #[error("{0} is not a member of the family")]
    NotAMember(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

fn witness_suffix(w: &Option<(SubsetBits, SubsetBits)>) -> String {
    match w {
        Some((a, b)) => format!(" (witness {a:?}, {b:?})"),
        None => String::new(),
    }
}

fn hint_suffix(h: &Option<&'static str>) -> String {
    match h {
        Some(h) => format!("; {h}"),
        None => String::new(),
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn size_guard(what: &'static str, size: u128, limit: u128) -> Result<()> {
    if size > limit {
        Err(Error::SizeLimitExceeded {
            what,
            size,
            limit,
            hint: None,
        })
    } else {
        Ok(())
    }
}
