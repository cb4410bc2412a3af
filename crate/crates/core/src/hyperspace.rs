//! Lower, upper and full Vietoris topologies on a family of subsets.
//!
//! The family is always passed explicitly. Its members become the points of
//! the hyperspace, indexed by their position in canonical order, so every
//! [`FiniteSpace`] operation applies to hyperspace topologies unchanged.

use serde::{Deserialize, Serialize};

use crate::error::{size_guard, Error, Result};
use crate::filter::{converges, FilterOnCarrier};
use crate::limits;
use crate::space::{generate_from_subbase, FiniteSpace};
use crate::subset::{SetFamily, SubsetBits, MAX_GROUND};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Variant {
    Lower,
    Upper,
    Vietoris,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HyperSpace {
    base: FiniteSpace,
    family: SetFamily,
    topology: FiniteSpace,
    variant: Variant,
}

impl HyperSpace {
    pub fn base(&self) -> &FiniteSpace {
        &self.base
    }

    pub fn family(&self) -> &SetFamily {
        &self.family
    }

    /// The topology on hyperpoint indices.
    pub fn topology(&self) -> &FiniteSpace {
        &self.topology
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn index_of(&self, a: SubsetBits) -> Option<usize> {
        self.family.index_of(a)
    }

    /// The subbase the topology was generated from.
    pub fn subbase(&self) -> SetFamily {
        variant_subbase(&self.base, &self.family, self.variant)
    }

    /// Positions of the given members.
    pub fn indices_of(&self, sub: &SetFamily) -> Result<SubsetBits> {
        sub.iter()
            .map(|a| {
                self.index_of(a)
                    .ok_or_else(|| Error::NotAMember(format!("{a:?}")))
            })
            .collect()
    }
}

/// `M⁻ = {A ∈ 𝔄 : A ∩ M ≠ ∅}`.
pub fn hit(family: &SetFamily, m: SubsetBits) -> SetFamily {
    family.iter().filter(|a| a.meets(m)).collect()
}

/// `M⁺ = {A ∈ 𝔄 : A ∩ M = ∅}`.
pub fn miss(family: &SetFamily, m: SubsetBits) -> SetFamily {
    family.iter().filter(|a| !a.meets(m)).collect()
}

fn check_family(space: &FiniteSpace, family: &SetFamily) -> Result<()> {
    family.check_fits(space.n())?;
    if let Some(e) = family.iter().find(|a| a.is_empty()) {
        return Err(Error::EmptyMember(e));
    }
    size_guard("hyperspace points", family.len() as u128, MAX_GROUND as u128)?;
    size_guard("hyperspace points", family.len() as u128, limits::max_points() as u128)
}

/// `{O⁻ : O open}` as subsets of hyperpoint indices.
pub fn lower_subbase(space: &FiniteSpace, family: &SetFamily) -> SetFamily {
    space
        .opens()
        .iter()
        .map(|o| family.select(|a| a.meets(o)))
        .collect()
}

/// `{(X∖O)⁺ : O open}` as subsets of hyperpoint indices.
pub fn upper_subbase(space: &FiniteSpace, family: &SetFamily) -> SetFamily {
    space
        .opens()
        .iter()
        .map(|o| {
            let closed = o.complement(space.n());
            family.select(|a| !a.meets(closed))
        })
        .collect()
}

fn variant_subbase(space: &FiniteSpace, family: &SetFamily, variant: Variant) -> SetFamily {
    match variant {
        Variant::Lower => lower_subbase(space, family),
        Variant::Upper => upper_subbase(space, family),
        Variant::Vietoris => lower_subbase(space, family)
            .iter()
            .chain(upper_subbase(space, family).iter())
            .collect(),
    }
}

pub fn hyperspace(space: &FiniteSpace, family: &SetFamily, variant: Variant) -> Result<HyperSpace> {
    check_family(space, family)?;
    let subbase = variant_subbase(space, family, variant);
    let topology = generate_from_subbase(family.len(), &subbase)?;
    Ok(HyperSpace {
        base: space.clone(),
        family: family.clone(),
        topology,
        variant,
    })
}

pub fn lower_vietoris(space: &FiniteSpace, family: &SetFamily) -> Result<HyperSpace> {
    hyperspace(space, family, Variant::Lower)
}

pub fn upper_vietoris(space: &FiniteSpace, family: &SetFamily) -> Result<HyperSpace> {
    hyperspace(space, family, Variant::Upper)
}

pub fn vietoris(space: &FiniteSpace, family: &SetFamily) -> Result<HyperSpace> {
    hyperspace(space, family, Variant::Vietoris)
}

/// `⟨U₁,…,U_m⟩ = {A ∈ 𝔄 : A ⊆ ⋃Uᵢ, A ∩ Uᵢ ≠ ∅ for all i}`.
pub fn vietoris_basic(space: &FiniteSpace, family: &SetFamily, cover: &[SubsetBits]) -> Result<SetFamily> {
    if let Some(&u) = cover.iter().find(|&&u| !space.is_open(u)) {
        return Err(Error::NotOpen(u));
    }
    let union = cover.iter().fold(SubsetBits::EMPTY, |acc, &u| acc | u);
    Ok(family
        .iter()
        .filter(|a| a.is_subset(union) && cover.iter().all(|u| a.meets(*u)))
        .collect())
}

/// Non-empty compact subsets, K(X).
pub fn compacts(space: &FiniteSpace) -> SetFamily {
    SetFamily::nonempty_subsets(space.n())
        .iter()
        .filter(|&k| space.is_compact_subset(k))
        .collect()
}

/// Non-empty closed subsets, Cl(X).
pub fn closeds(space: &FiniteSpace) -> SetFamily {
    space.closeds().iter().filter(|c| !c.is_empty()).collect()
}

/// Members of 𝔄 to which `filter` (on hyperpoint indices) converges in the
/// lower Vietoris topology.
pub fn lower_limits(space: &FiniteSpace, family: &SetFamily, filter: &FilterOnCarrier) -> Result<SetFamily> {
    if filter.carrier().len != family.len() {
        return Err(Error::DomainMismatch {
            expected: family.len(),
            found: filter.carrier().len,
        });
    }
    let lower = lower_vietoris(space, family)?;
    Ok(family
        .iter()
        .enumerate()
        .filter(|&(i, _)| converges(lower.topology(), filter, i))
        .map(|(_, a)| a)
        .collect())
}
