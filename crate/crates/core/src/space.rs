//! Finite topological spaces stored extensionally.
//!
//! A [`FiniteSpace`] keeps its open sets as a canonical [`SetFamily`], so two
//! topologies are equal exactly when their families are. Alongside the opens
//! it caches the minimal open neighbourhood of every point, which in a finite
//! space is itself open (finite intersections of opens are open).

use std::collections::HashSet;

use serde::Serialize;

use crate::error::{size_guard, Axiom, Error, Result};
use crate::limits;
use crate::map::FiniteMap;
use crate::subset::{SetFamily, SubsetBits, MAX_GROUND};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FiniteSpace {
    n: usize,
    opens: SetFamily,
    nbhd: Vec<SubsetBits>,
}

impl std::fmt::Debug for FiniteSpace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FiniteSpace")
            .field("n", &self.n)
            .field("opens", &self.opens)
            .finish()
    }
}

/// Separation and local properties of a space.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SpaceReport {
    pub t1: bool,
    pub t2: bool,
    pub t3: bool,
    pub locally_compact: bool,
    pub nested_neighbourhood: bool,
}

/// Validates `opens` against the topology axioms.
///
/// Reports the first violated axiom in the order ∅, full set, unions,
/// intersections, together with the witnessing pair for the pairwise axioms.
pub fn make_space(n: usize, opens: SetFamily) -> Result<FiniteSpace> {
    check_ground(n)?;
    opens.check_fits(n)?;
    if !opens.contains(SubsetBits::EMPTY) {
        return Err(Error::NotATopology {
            axiom: Axiom::EmptySet,
            witness: None,
        });
    }
    if !opens.contains(SubsetBits::full(n)) {
        return Err(Error::NotATopology {
            axiom: Axiom::FullSet,
            witness: None,
        });
    }
    let members = opens.members();
    for (i, &a) in members.iter().enumerate() {
        for &b in &members[i + 1..] {
            if !opens.contains(a | b) {
                return Err(Error::NotATopology {
                    axiom: Axiom::Union,
                    witness: Some((a, b)),
                });
            }
        }
    }
    for (i, &a) in members.iter().enumerate() {
        for &b in &members[i + 1..] {
            if !opens.contains(a & b) {
                return Err(Error::NotATopology {
                    axiom: Axiom::Intersection,
                    witness: Some((a, b)),
                });
            }
        }
    }
    Ok(FiniteSpace::from_opens_unchecked(n, opens))
}

fn check_ground(n: usize) -> Result<()> {
    size_guard("ground set", n as u128, limits::max_points() as u128)?;
    size_guard("bitmask ground set", n as u128, MAX_GROUND as u128)
}

/// Smallest topology on `n` points containing every member of `subbase`.
///
/// The finite intersections of subbasic sets form a base; the intersection
/// of all subbasic sets through a point (the full set when there are none)
/// is the least such basic set containing it, and every basic set is the
/// union of those. Closing these under unions, with ∅ as the empty union,
/// gives the topology.
pub fn generate_from_subbase(n: usize, subbase: &SetFamily) -> Result<FiniteSpace> {
    check_ground(n)?;
    subbase.check_fits(n)?;
    let full = SubsetBits::full(n);
    let base: Vec<SubsetBits> = (0..n)
        .map(|x| {
            subbase
                .iter()
                .filter(|s| s.contains(x))
                .fold(full, |acc, s| acc & s)
        })
        .collect();
    let opens = union_closure(&base)?;
    Ok(FiniteSpace::from_opens_unchecked(n, opens))
}

/// All unions of sub-collections of `base` (including the empty union),
/// failing once the open-count guard is exceeded.
pub(crate) fn union_closure(base: &[SubsetBits]) -> Result<SetFamily> {
    let limit = limits::max_opens();
    let mut gens: Vec<SubsetBits> = base.to_vec();
    gens.sort_unstable();
    gens.dedup();
    let mut seen: HashSet<u64> = HashSet::from([0]);
    let mut all = vec![SubsetBits::EMPTY];
    for g in gens {
        let len = all.len();
        for i in 0..len {
            let u = all[i] | g;
            if seen.insert(u.0) {
                all.push(u);
                if all.len() > limit {
                    return Err(Error::SizeLimitExceeded {
                        what: "open sets",
                        size: all.len() as u128,
                        limit: limit as u128,
                        hint: None,
                    });
                }
            }
        }
    }
    Ok(SetFamily::new(all))
}

/// Openness oracle shared by extensional and neighbourhood-based topologies.
pub trait OpenTest {
    fn point_count(&self) -> usize;
    /// Whether `{x : member(x)}` is open.
    fn is_open_where(&self, member: &dyn Fn(usize) -> bool) -> bool;
}

impl OpenTest for FiniteSpace {
    fn point_count(&self) -> usize {
        self.n
    }

    fn is_open_where(&self, member: &dyn Fn(usize) -> bool) -> bool {
        let set: SubsetBits = (0..self.n).filter(|&x| member(x)).collect();
        self.is_open(set)
    }
}

impl FiniteSpace {
    pub(crate) fn from_opens_unchecked(n: usize, opens: SetFamily) -> FiniteSpace {
        let full = SubsetBits::full(n);
        let nbhd = (0..n)
            .map(|x| {
                opens
                    .iter()
                    .filter(|o| o.contains(x))
                    .fold(full, |acc, o| acc & o)
            })
            .collect();
        FiniteSpace { n, opens, nbhd }
    }

    pub fn discrete(n: usize) -> FiniteSpace {
        FiniteSpace::from_opens_unchecked(n, SetFamily::power_set(n))
    }

    pub fn indiscrete(n: usize) -> FiniteSpace {
        FiniteSpace::from_opens_unchecked(
            n,
            SetFamily::new(vec![SubsetBits::EMPTY, SubsetBits::full(n)]),
        )
    }

    /// Two points with opens `{∅, {1}, {0,1}}`.
    pub fn sierpinski() -> FiniteSpace {
        FiniteSpace::from_opens_unchecked(
            2,
            SetFamily::new(vec![SubsetBits(0), SubsetBits(0b10), SubsetBits(0b11)]),
        )
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn opens(&self) -> &SetFamily {
        &self.opens
    }

    #[inline]
    pub fn full(&self) -> SubsetBits {
        SubsetBits::full(self.n)
    }

    #[inline]
    pub fn is_open(&self, s: SubsetBits) -> bool {
        self.opens.contains(s)
    }

    pub fn is_closed(&self, s: SubsetBits) -> bool {
        s.fits(self.n) && self.is_open(s.complement(self.n))
    }

    /// Complements of the opens, in canonical order.
    pub fn closeds(&self) -> SetFamily {
        self.opens.iter().map(|o| o.complement(self.n)).collect()
    }

    /// Intersection of all opens containing `x`.
    #[inline]
    pub fn minimal_open_nbhd(&self, x: usize) -> SubsetBits {
        self.nbhd[x]
    }

    pub fn minimal_open_nbhds(&self) -> &[SubsetBits] {
        &self.nbhd
    }

    /// Smallest open superset of `s`.
    pub fn minimal_open_superset(&self, s: SubsetBits) -> SubsetBits {
        s.iter().fold(SubsetBits::EMPTY, |acc, x| acc | self.nbhd[x])
    }

    /// Smallest closed superset: the complement of the union of all opens
    /// missing `a`.
    pub fn closure(&self, a: SubsetBits) -> SubsetBits {
        let outside = self
            .opens
            .iter()
            .filter(|o| !o.meets(a))
            .fold(SubsetBits::EMPTY, |acc, o| acc | o);
        outside.complement(self.n)
    }

    /// Largest open subset: the union of all opens inside `a`.
    pub fn interior(&self, a: SubsetBits) -> SubsetBits {
        self.opens
            .iter()
            .filter(|o| o.is_subset(a))
            .fold(SubsetBits::EMPTY, |acc, o| acc | o)
    }

    /// Every point is closed.
    pub fn is_t1(&self) -> bool {
        (0..self.n).all(|x| self.is_closed(SubsetBits::singleton(x)))
    }

    /// Distinct points have disjoint open neighbourhoods. The minimal
    /// neighbourhoods are the smallest candidates, so it suffices to test them.
    pub fn is_t2(&self) -> bool {
        (0..self.n).all(|x| (x + 1..self.n).all(|y| !self.nbhd[x].meets(self.nbhd[y])))
    }

    /// Regularity only (no T₁): every point and closed set missing it are
    /// separated by disjoint opens.
    pub fn is_t3(&self) -> bool {
        self.closeds().iter().all(|f| {
            let around_f = self.minimal_open_superset(f);
            (0..self.n)
                .filter(|&x| !f.contains(x))
                .all(|x| !self.nbhd[x].meets(around_f))
        })
    }

    /// Picks one member of `cover` per point of `k`; `None` if `cover`
    /// does not cover `k`.
    pub fn finite_subcover(&self, k: SubsetBits, cover: &[SubsetBits]) -> Option<Vec<SubsetBits>> {
        let mut chosen: Vec<SubsetBits> = Vec::new();
        for x in k.iter() {
            if chosen.iter().any(|c| c.contains(x)) {
                continue;
            }
            chosen.push(*cover.iter().find(|c| c.contains(x))?);
        }
        Some(chosen)
    }

    /// Every open cover of `k` has a finite subcover. Open covers here are
    /// subfamilies of the finite family of opens; the subcover is extracted
    /// from the cover by all opens, which any open cover refines.
    pub fn is_compact_subset(&self, k: SubsetBits) -> bool {
        k.fits(self.n)
            && self
                .finite_subcover(k, self.opens.members())
                .is_some_and(|sub| sub.len() <= k.len())
    }

    /// For every point `a` and open `U ∋ a` there are an open `O` and a
    /// compact `K` with `a ∈ O ⊆ K ⊆ U`.
    pub fn is_locally_compact(&self) -> bool {
        (0..self.n).all(|a| {
            self.opens.iter().filter(|u| u.contains(a)).all(|u| {
                self.opens
                    .iter()
                    .filter(|o| o.contains(a) && o.is_subset(u))
                    .any(|o| [o, u].iter().any(|&k| self.is_compact_subset(k)))
            })
        })
    }

    /// Every point has an open neighbourhood base totally ordered by
    /// inclusion.
    ///
    /// The only candidate bases worth considering in a finite family are the
    /// inclusion-minimal opens around the point: a chain base has a least
    /// element, and that element must then be the unique minimal open.
    pub fn is_nested_neighbourhood(&self) -> bool {
        (0..self.n).all(|x| {
            let around: Vec<SubsetBits> = self.opens.iter().filter(|o| o.contains(x)).collect();
            let minimal: Vec<SubsetBits> = around
                .iter()
                .copied()
                .filter(|&o| !around.iter().any(|&p| p != o && p.is_subset(o)))
                .collect();
            let is_chain = minimal
                .iter()
                .all(|&a| minimal.iter().all(|&b| a.is_subset(b) || b.is_subset(a)));
            let is_base = around
                .iter()
                .all(|&u| minimal.iter().any(|&b| b.is_subset(u)));
            is_chain && is_base
        })
    }

    /// An open `u` with `k ⊆ u ⊆ cl(u) ⊆ o`, the first in canonical order.
    pub fn shrink_between(&self, k: SubsetBits, o: SubsetBits) -> Result<Option<SubsetBits>> {
        k.check_fits(self.n)?;
        if !self.is_open(o) {
            return Err(Error::NotOpen(o));
        }
        Ok(self
            .opens
            .iter()
            .find(|&u| k.is_subset(u) && u.is_subset(o) && self.closure(u).is_subset(o)))
    }

    pub fn report(&self) -> SpaceReport {
        SpaceReport {
            t1: self.is_t1(),
            t2: self.is_t2(),
            t3: self.is_t3(),
            locally_compact: self.is_locally_compact(),
            nested_neighbourhood: self.is_nested_neighbourhood(),
        }
    }

    /// Whether every open of `other` is open here.
    pub fn is_finer_than(&self, other: &FiniteSpace) -> bool {
        self.n == other.n && other.opens.is_subfamily(&self.opens)
    }
}

/// The finest topology on `target_n` points making every `(source, f)`
/// continuous: `U` is open iff each `f⁻¹(U)` is open in its source.
pub fn final_topology(target_n: usize, maps: &[(&FiniteSpace, &FiniteMap)]) -> Result<FiniteSpace> {
    final_topology_by(target_n, maps)
}

/// [`final_topology`] for any openness oracle on the sources.
pub fn final_topology_by<T: OpenTest + ?Sized>(
    target_n: usize,
    maps: &[(&T, &FiniteMap)],
) -> Result<FiniteSpace> {
    check_ground(target_n)?;
    size_guard(
        "final topology candidates",
        1u128 << target_n,
        limits::max_opens() as u128,
    )?;
    for (src, f) in maps {
        if f.dom_n() != src.point_count() {
            return Err(Error::DomainMismatch {
                expected: src.point_count(),
                found: f.dom_n(),
            });
        }
        if f.cod_n() != target_n {
            return Err(Error::DomainMismatch {
                expected: target_n,
                found: f.cod_n(),
            });
        }
    }
    let opens: Vec<SubsetBits> = SubsetBits::full(target_n)
        .submasks()
        .filter(|&u| {
            maps.iter()
                .all(|(src, f)| src.is_open_where(&|x| u.contains(f.apply(x))))
        })
        .collect();
    Ok(FiniteSpace::from_opens_unchecked(target_n, SetFamily::from_sorted(opens)))
}

/// Every labelled topology on `n` points, exactly once, in canonical order.
///
/// Finite topologies correspond to preorders via `y ∈ N(x)`; each reflexive
/// transitive relation is turned into its family of up-closed sets.
pub fn enumerate_topologies(n: usize) -> Result<Vec<FiniteSpace>> {
    size_guard(
        "enumeration ground set",
        n as u128,
        limits::max_enumerate() as u128,
    )?;
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|x| (0..n).filter(move |&y| y != x).map(move |y| (x, y)))
        .collect();
    let mut spaces = Vec::new();
    for code in 0u64..(1u64 << pairs.len()) {
        let mut up: Vec<SubsetBits> = (0..n).map(SubsetBits::singleton).collect();
        for (bit, &(x, y)) in pairs.iter().enumerate() {
            if code >> bit & 1 == 1 {
                up[x] = up[x].with(y);
            }
        }
        let transitive = (0..n).all(|x| up[x].iter().all(|y| up[y].is_subset(up[x])));
        if transitive {
            let opens = union_closure(&up)?;
            spaces.push(FiniteSpace::from_opens_unchecked(n, opens));
        }
    }
    spaces.sort();
    Ok(spaces)
}

/// All topologies on `1..=max_n` points, grouped by size.
pub fn corpus(max_n: usize) -> Result<Vec<FiniteSpace>> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        out.extend(enumerate_topologies(n)?);
    }
    Ok(out)
}
