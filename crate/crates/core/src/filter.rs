//! Filters on finite carriers.
//!
//! Every filter on a finite set is principal: it consists of all supersets of
//! the intersection of its members (its kernel). Filters are therefore stored
//! by kernel, which keeps filters on large carriers such as P⁰(X) or the set
//! of choice functions cheap, and is exact.

use serde::{Deserialize, Serialize};

use crate::error::{size_guard, Error, Result};
use crate::limits;
use crate::map::FiniteMap;
use crate::space::FiniteSpace;
use crate::subset::{SubsetBits, MAX_GROUND};

/// Carriers above this size are not enumerated subset by subset.
pub const EXHAUSTIVE_CARRIER_LIMIT: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CarrierKind {
    /// Points of a space.
    Points,
    /// Members of a set family, e.g. P⁰(X).
    Subsets,
    /// A list of choice functions.
    ChoiceFunctions,
}

/// An indexed, non-empty finite set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Carrier {
    pub kind: CarrierKind,
    pub len: usize,
}

impl Carrier {
    pub fn new(kind: CarrierKind, len: usize) -> Result<Carrier> {
        if len == 0 {
            return Err(Error::Invalid("carriers must be non-empty".into()));
        }
        Ok(Carrier { kind, len })
    }

    pub fn points(len: usize) -> Result<Carrier> {
        Carrier::new(CarrierKind::Points, len)
    }

    pub fn subsets(len: usize) -> Result<Carrier> {
        Carrier::new(CarrierKind::Subsets, len)
    }

    fn check(&self, e: usize) -> Result<()> {
        if e < self.len {
            Ok(())
        } else {
            Err(Error::ElementOutOfRange {
                index: e,
                len: self.len,
            })
        }
    }
}

/// A filter, represented by its non-empty kernel (sorted element indices).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FilterOnCarrier {
    carrier: Carrier,
    kernel: Vec<u32>,
}

/// The filter `ε(e)` of all sets containing `e`.
pub fn singleton_filter(carrier: Carrier, e: usize) -> Result<FilterOnCarrier> {
    carrier.check(e)?;
    Ok(FilterOnCarrier {
        carrier,
        kernel: vec![e as u32],
    })
}

/// The filter generated by `gens`; with no generators this is `{carrier}`.
pub fn filter_from_sets<S: AsRef<[u32]>>(carrier: Carrier, gens: &[S]) -> Result<FilterOnCarrier> {
    let mut inside = vec![true; carrier.len];
    for g in gens {
        let mut hit = vec![false; carrier.len];
        for &e in g.as_ref() {
            carrier.check(e as usize)?;
            hit[e as usize] = true;
        }
        inside.iter_mut().zip(&hit).for_each(|(a, b)| *a &= b);
    }
    let kernel: Vec<u32> = (0..carrier.len as u32)
        .filter(|&e| inside[e as usize])
        .collect();
    if kernel.is_empty() {
        return Err(Error::EmptyIntersection);
    }
    Ok(FilterOnCarrier { carrier, kernel })
}

impl FilterOnCarrier {
    /// The principal filter with the given kernel.
    pub fn from_kernel<I: IntoIterator<Item = usize>>(carrier: Carrier, kernel: I) -> Result<Self> {
        let mut k: Vec<u32> = Vec::new();
        for e in kernel {
            carrier.check(e)?;
            k.push(e as u32);
        }
        k.sort_unstable();
        k.dedup();
        if k.is_empty() {
            return Err(Error::EmptyKernel);
        }
        Ok(FilterOnCarrier {
            carrier,
            kernel: k,
        })
    }

    pub fn from_kernel_bits(carrier: Carrier, kernel: SubsetBits) -> Result<Self> {
        FilterOnCarrier::from_kernel(carrier, kernel.iter())
    }

    pub fn carrier(&self) -> Carrier {
        self.carrier
    }

    pub fn kernel(&self) -> &[u32] {
        &self.kernel
    }

    /// The kernel as a bitmask, for carriers of at most 64 elements.
    pub fn kernel_bits(&self) -> Option<SubsetBits> {
        (self.carrier.len <= MAX_GROUND)
            .then(|| self.kernel.iter().map(|&e| e as usize).collect())
    }

    /// Whether `{e : member(e)}` belongs to the filter.
    pub fn contains_where(&self, member: impl Fn(usize) -> bool) -> bool {
        self.kernel.iter().all(|&e| member(e as usize))
    }

    /// Whether the set of listed elements belongs to the filter.
    pub fn contains(&self, set: &[u32]) -> bool {
        self.kernel.iter().all(|e| set.contains(e))
    }

    pub fn contains_bits(&self, set: SubsetBits) -> bool {
        self.contains_where(|e| set.contains(e))
    }

    /// Whether `self ⊇ other` as families of sets.
    pub fn refines(&self, other: &FilterOnCarrier) -> bool {
        self.carrier == other.carrier && self.kernel.iter().all(|e| other.kernel.contains(e))
    }

    pub fn is_ultrafilter(&self) -> bool {
        self.kernel.len() == 1
    }

    /// The defining test: for every subset, it or its complement is a
    /// member. Only decided for carriers up to [`EXHAUSTIVE_CARRIER_LIMIT`].
    pub fn is_ultrafilter_by_complements(&self) -> Option<bool> {
        if self.carrier.len > EXHAUSTIVE_CARRIER_LIMIT {
            return None;
        }
        let full = SubsetBits::full(self.carrier.len);
        Some(
            full.submasks()
                .all(|a| self.contains_bits(a) || self.contains_bits(a.complement(self.carrier.len))),
        )
    }

    /// All ultrafilters refining this filter: the point filters of the kernel.
    pub fn ultrafilters_over(&self) -> Vec<FilterOnCarrier> {
        self.kernel
            .iter()
            .map(|&e| FilterOnCarrier {
                carrier: self.carrier,
                kernel: vec![e],
            })
            .collect()
    }

    /// The members of the filter, for carriers up to
    /// [`EXHAUSTIVE_CARRIER_LIMIT`].
    pub fn members(&self) -> Option<Vec<SubsetBits>> {
        let kernel = self.kernel_bits()?;
        if self.carrier.len > EXHAUSTIVE_CARRIER_LIMIT {
            return None;
        }
        let rest = SubsetBits::full(self.carrier.len) - kernel;
        Some(rest.submasks().map(|s| s | kernel).collect())
    }

    /// Closed under intersections of arbitrary (here: all finite) families of
    /// members. Any subfamily's intersection contains the intersection of
    /// all members, so it suffices that the latter is a member; it is
    /// computed from the member list when the carrier is small enough to
    /// enumerate, and equals the kernel otherwise.
    pub fn is_countably_complete(&self) -> bool {
        match self.members() {
            Some(members) => {
                let meet = members
                    .iter()
                    .fold(SubsetBits::full(self.carrier.len), |acc, &m| acc & m);
                self.contains_bits(meet)
            }
            None => {
                let kernel = &self.kernel;
                self.contains(kernel)
            }
        }
    }

    /// The image filter `f(φ)` on a carrier of the given kind.
    pub fn image(&self, f: &FiniteMap, kind: CarrierKind) -> Result<FilterOnCarrier> {
        if f.dom_n() != self.carrier.len {
            return Err(Error::DomainMismatch {
                expected: self.carrier.len,
                found: f.dom_n(),
            });
        }
        let target = Carrier::new(kind, f.cod_n())?;
        FilterOnCarrier::from_kernel(target, self.kernel.iter().map(|&e| f.apply(e as usize)))
    }
}

/// `f(φ)` on a point carrier.
pub fn filter_image(f: &FiniteMap, filter: &FilterOnCarrier) -> Result<FilterOnCarrier> {
    filter.image(f, CarrierKind::Points)
}

/// The filter on the points of `space` generated by the open sets
/// containing `x`.
pub fn neighborhood_filter(space: &FiniteSpace, x: usize) -> Result<FilterOnCarrier> {
    let carrier = Carrier::points(space.n())?;
    carrier.check(x)?;
    let opens: Vec<Vec<u32>> = space
        .opens()
        .iter()
        .filter(|o| o.contains(x))
        .map(|o| o.iter().map(|p| p as u32).collect())
        .collect();
    filter_from_sets(carrier, &opens)
}

/// `φ → x`: the filter contains every open neighbourhood of `x`, i.e. its
/// kernel lies in the minimal open neighbourhood.
pub fn converges(space: &FiniteSpace, filter: &FilterOnCarrier, x: usize) -> bool {
    let n = space.minimal_open_nbhd(x);
    filter.carrier().len == space.n() && filter.kernel().iter().all(|&e| n.contains(e as usize))
}

/// All filters, one per non-empty kernel, in increasing kernel-mask order.
pub fn enumerate_filters(carrier: Carrier) -> Result<Vec<FilterOnCarrier>> {
    size_guard(
        "filter enumeration carrier",
        carrier.len as u128,
        EXHAUSTIVE_CARRIER_LIMIT as u128,
    )?;
    size_guard(
        "filters",
        (1u128 << carrier.len) - 1,
        limits::max_opens() as u128,
    )?;
    SubsetBits::full(carrier.len)
        .submasks()
        .skip(1)
        .map(|k| FilterOnCarrier::from_kernel_bits(carrier, k))
        .collect()
}

/// All ultrafilters: the point filters, in element order.
pub fn enumerate_ultrafilters(carrier: Carrier) -> Vec<FilterOnCarrier> {
    (0..carrier.len)
        .map(|e| FilterOnCarrier {
            carrier,
            kernel: vec![e as u32],
        })
        .collect()
}

/// `ℱ(φ)`: the filter generated by `F(M) = {f(m) : f ∈ F, m ∈ M}` for
/// `F ∈ ℱ`, `M ∈ φ`, where `ℱ` lives on the index set of `functions`.
///
/// For principal inputs the least generator is obtained from the two
/// kernels, so the result's kernel is `{f(m) : f ∈ ker ℱ, m ∈ ker φ}`.
pub fn function_filter_apply(
    functions: &[FiniteMap],
    family_filter: &FilterOnCarrier,
    filter: &FilterOnCarrier,
) -> Result<FilterOnCarrier> {
    if family_filter.carrier().len != functions.len() {
        return Err(Error::DomainMismatch {
            expected: functions.len(),
            found: family_filter.carrier().len,
        });
    }
    let first = &functions[family_filter.kernel()[0] as usize];
    let mut values = Vec::with_capacity(family_filter.kernel().len() * filter.kernel().len());
    for &fi in family_filter.kernel() {
        let f = &functions[fi as usize];
        if f.dom_n() != filter.carrier().len || f.cod_n() != first.cod_n() {
            return Err(Error::DomainMismatch {
                expected: filter.carrier().len,
                found: f.dom_n(),
            });
        }
        values.extend(filter.kernel().iter().map(|&m| f.apply(m as usize)));
    }
    FilterOnCarrier::from_kernel(Carrier::points(first.cod_n())?, values)
}

/// JSON literal for a filter: `{"carrier": "points", "kernel": [0, 2]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FilterLiteral {
    pub carrier: CarrierKind,
    pub kernel: Vec<u32>,
}

impl FilterLiteral {
    pub fn from_filter(f: &FilterOnCarrier) -> FilterLiteral {
        FilterLiteral {
            carrier: f.carrier().kind,
            kernel: f.kernel().to_vec(),
        }
    }

    /// Resolves the literal against a carrier of `len` elements.
    pub fn to_filter(&self, len: usize) -> Result<FilterOnCarrier> {
        FilterOnCarrier::from_kernel(
            Carrier::new(self.carrier, len)?,
            self.kernel.iter().map(|&e| e as usize),
        )
    }
}
