//! Choice functions on `P⁰(X)` and the convergence statements about them.
//!
//! Hyperpoints are the non-empty subsets of `X` in canonical order, so the
//! hyperpoint with index `i` is the mask `i + 1`. Filters on `P⁰(X)` live on
//! a [`CarrierKind::Subsets`] carrier of that length.

use serde::Serialize;

use crate::error::{size_guard, Error, Result};
use crate::filter::{enumerate_filters, Carrier, CarrierKind, FilterOnCarrier, EXHAUSTIVE_CARRIER_LIMIT};
use crate::hyperspace::{lower_vietoris, HyperSpace};
use crate::map::FiniteMap;
use crate::space::FiniteSpace;
use crate::subset::{SetFamily, SubsetBits};

/// Largest ground set for which choice functions are enumerated.
pub const MAX_CHOICE_POINTS: usize = 4;

/// Largest ground set for which every filter on `P⁰(X)` is enumerated.
pub const MAX_CLASSIFY_POINTS: usize = 3;

/// The choice functions over an `x_n`-point set, each stored as a map from
/// hyperpoint indices to points. Order: lexicographic in the chosen point
/// positions, the first hyperpoint most significant.
#[derive(Clone, Debug)]
pub struct ChoiceLab {
    x_n: usize,
    family: SetFamily,
    functions: Vec<FiniteMap>,
}

impl ChoiceLab {
    pub fn new(x_n: usize) -> Result<ChoiceLab> {
        if x_n == 0 {
            return Err(Error::Invalid("choice functions need a non-empty ground set".into()));
        }
        size_guard("choice-function ground set", x_n as u128, MAX_CHOICE_POINTS as u128)?;
        let family = SetFamily::nonempty_subsets(x_n);
        let options: Vec<Vec<u32>> = family
            .iter()
            .map(|a| a.iter().map(|x| x as u32).collect())
            .collect();
        let mut functions = Vec::new();
        let mut image = vec![0u32; options.len()];
        walk(&options, 0, &mut image, &mut |img| {
            functions.push(FiniteMap::new_unchecked(x_n, img.to_vec()));
        });
        Ok(ChoiceLab { x_n, family, functions })
    }

    pub fn x_n(&self) -> usize {
        self.x_n
    }

    /// `P⁰(X)` in canonical order.
    pub fn family(&self) -> &SetFamily {
        &self.family
    }

    pub fn functions(&self) -> &[FiniteMap] {
        &self.functions
    }

    /// Carrier for filters on `P⁰(X)`.
    pub fn carrier(&self) -> Carrier {
        Carrier::new(CarrierKind::Subsets, self.family.len()).expect("non-empty family")
    }

    /// The ultrafilters on `P⁰(X)`, one per hyperpoint.
    pub fn ultrafilters(&self) -> Vec<FilterOnCarrier> {
        crate::filter::enumerate_ultrafilters(self.carrier())
    }

    /// Context for statements about a fixed topology on `X`.
    pub fn on(&self, space: &FiniteSpace) -> Result<ChoiceSpace<'_>> {
        if space.n() != self.x_n {
            return Err(Error::DomainMismatch {
                expected: self.x_n,
                found: space.n(),
            });
        }
        Ok(ChoiceSpace {
            lab: self,
            space: space.clone(),
            lower: lower_vietoris(space, &self.family)?,
        })
    }

    fn check_filter(&self, phi: &FilterOnCarrier) -> Result<()> {
        if phi.carrier() != self.carrier() {
            return Err(Error::DomainMismatch {
                expected: self.family.len(),
                found: phi.carrier().len,
            });
        }
        Ok(())
    }

    /// The kernel of `f(φ)` for each choice function, as point sets.
    fn image_kernels(&self, phi: &FilterOnCarrier) -> Vec<SubsetBits> {
        self.functions
            .iter()
            .map(|f| phi.kernel().iter().map(|&m| f.apply(m as usize)).collect())
            .collect()
    }

    /// Whether every choice function maps `phi` to a singleton filter.
    pub fn has_property_a(&self, phi: &FilterOnCarrier) -> Result<PropertyAReport> {
        self.check_filter(phi)?;
        let witness = self
            .functions
            .iter()
            .zip(self.image_kernels(phi))
            .find(|(_, k)| k.len() != 1)
            .map(|(f, k)| PropertyAWitness {
                choice: f.image().to_vec(),
                image_kernel: k,
            });
        Ok(PropertyAReport {
            kernel: phi.kernel().to_vec(),
            holds: witness.is_none(),
            witness,
            is_ultrafilter: phi.is_ultrafilter(),
            is_singleton: phi.kernel().len() == 1,
            is_countably_complete: phi.is_countably_complete(),
        })
    }

    /// Every filter on `P⁰(X)`, sorted into those with and without
    /// property (A).
    pub fn classify_property_a(&self) -> Result<ClassificationReport> {
        size_guard("classification ground set", self.x_n as u128, MAX_CLASSIFY_POINTS as u128)?;
        let filters = enumerate_filters(self.carrier())?;
        let reports: Vec<PropertyAReport> = filters
            .iter()
            .map(|f| self.has_property_a(f))
            .collect::<Result<_>>()?;
        let with_a: Vec<&PropertyAReport> = reports.iter().filter(|r| r.holds).collect();
        let mismatches: Vec<Vec<u32>> = reports
            .iter()
            .filter(|r| r.holds != r.is_singleton)
            .map(|r| r.kernel.clone())
            .collect();
        Ok(ClassificationReport {
            x_n: self.x_n,
            filters: reports.len(),
            with_property_a: with_a.len(),
            singleton_filters: reports.iter().filter(|r| r.is_singleton).count(),
            mismatches,
            all_ultrafilter: with_a.iter().all(|r| r.is_ultrafilter),
            all_countably_complete: with_a.iter().all(|r| r.is_countably_complete),
        })
    }
}

fn walk(options: &[Vec<u32>], depth: usize, image: &mut Vec<u32>, visit: &mut dyn FnMut(&[u32])) {
    if depth == options.len() {
        visit(image);
        return;
    }
    for &x in &options[depth] {
        image[depth] = x;
        walk(options, depth + 1, image, visit);
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PropertyAWitness {
    /// The choice function, as its values on `P⁰(X)` in canonical order.
    pub choice: Vec<u32>,
    pub image_kernel: SubsetBits,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PropertyAReport {
    pub kernel: Vec<u32>,
    pub holds: bool,
    pub witness: Option<PropertyAWitness>,
    pub is_ultrafilter: bool,
    pub is_singleton: bool,
    pub is_countably_complete: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassificationReport {
    pub x_n: usize,
    pub filters: usize,
    pub with_property_a: usize,
    pub singleton_filters: usize,
    /// Kernels where property (A) and being a singleton filter disagree.
    pub mismatches: Vec<Vec<u32>>,
    pub all_ultrafilter: bool,
    pub all_countably_complete: bool,
}

impl ClassificationReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty() && self.all_ultrafilter && self.all_countably_complete
    }
}

/// Which filters on the choice functions enter the filterwise limit set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FilterSample {
    /// Every filter; only for at most [`EXHAUSTIVE_CARRIER_LIMIT`] functions.
    Exhaustive,
    /// Kernels of size one or two, plus the full kernel.
    UpToPairs,
    /// Singleton kernels, kernels `{i, i+1}`, plus the full kernel.
    Consecutive,
}

impl FilterSample {
    pub fn default_for(x_n: usize) -> FilterSample {
        match x_n {
            0..=2 => FilterSample::Exhaustive,
            3 => FilterSample::UpToPairs,
            _ => FilterSample::Consecutive,
        }
    }

    fn for_each_kernel(self, len: usize, visit: &mut dyn FnMut(&[usize])) -> Result<()> {
        match self {
            FilterSample::Exhaustive => {
                size_guard("exhaustive filter carrier", len as u128, EXHAUSTIVE_CARRIER_LIMIT as u128)?;
                for mask in SubsetBits::full(len).submasks().skip(1) {
                    visit(&mask.to_vec());
                }
            }
            FilterSample::UpToPairs => {
                for i in 0..len {
                    visit(&[i]);
                    for j in i + 1..len {
                        visit(&[i, j]);
                    }
                }
                visit(&(0..len).collect::<Vec<_>>());
            }
            FilterSample::Consecutive => {
                for i in 0..len {
                    visit(&[i]);
                    if i + 1 < len {
                        visit(&[i, i + 1]);
                    }
                }
                visit(&(0..len).collect::<Vec<_>>());
            }
        }
        Ok(())
    }
}

/// Outcome of an implication check `hypothesis ⇒ conclusion`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Outcome {
    pub holds: bool,
    /// The hypothesis failed, so the implication holds trivially.
    pub vacuous: bool,
    /// The structural assumption on the space (local compactness, nested
    /// neighbourhoods). The conclusion is checked either way.
    pub precondition: bool,
    pub closure: SubsetBits,
}

/// A [`ChoiceLab`] together with a topology on `X`.
pub struct ChoiceSpace<'a> {
    lab: &'a ChoiceLab,
    space: FiniteSpace,
    lower: HyperSpace,
}

impl ChoiceSpace<'_> {
    pub fn space(&self) -> &FiniteSpace {
        &self.space
    }

    pub fn lower(&self) -> &HyperSpace {
        &self.lower
    }

    fn converges_to(&self, s: SubsetBits, p: usize) -> bool {
        s.is_subset(self.space.minimal_open_nbhd(p))
    }

    /// `P = {p : f(φ) → p for some choice function f}`.
    pub fn limit_set(&self, phi: &FilterOnCarrier) -> Result<SubsetBits> {
        self.lab.check_filter(phi)?;
        let mut seen = vec![false; 1 << self.lab.x_n];
        for k in self.lab.image_kernels(phi) {
            seen[k.bits() as usize] = true;
        }
        Ok((0..self.space.n())
            .filter(|&p| {
                seen.iter()
                    .enumerate()
                    .any(|(k, &s)| s && self.converges_to(SubsetBits(k as u64), p))
            })
            .collect())
    }

    /// `P` with filters `ℱ` on the choice functions in place of single
    /// functions: `p` qualifies when `ℱ(φ) → p` for some sampled `ℱ`.
    pub fn filterwise_limit_set(&self, phi: &FilterOnCarrier, sample: FilterSample) -> Result<SubsetBits> {
        self.lab.check_filter(phi)?;
        let images = self.lab.image_kernels(phi);
        let mut seen = vec![false; 1 << self.lab.x_n];
        sample.for_each_kernel(images.len(), &mut |kernel| {
            let s = kernel.iter().fold(SubsetBits::EMPTY, |acc, &f| acc | images[f]);
            seen[s.bits() as usize] = true;
        })?;
        Ok((0..self.space.n())
            .filter(|&p| {
                seen.iter()
                    .enumerate()
                    .any(|(k, &s)| s && self.converges_to(SubsetBits(k as u64), p))
            })
            .collect())
    }

    fn lower_converges(&self, phi: &FilterOnCarrier, a: SubsetBits) -> Result<bool> {
        let j = self
            .lab
            .family
            .index_of(a)
            .ok_or_else(|| Error::NotAMember(format!("{a:?}")))?;
        Ok(crate::filter::converges(self.lower.topology(), phi, j))
    }

    fn require_ultrafilter(phi: &FilterOnCarrier) -> Result<()> {
        if phi.is_ultrafilter() {
            Ok(())
        } else {
            Err(Error::NotAnUltrafilter)
        }
    }

    /// `φ` converges to `cl(P)` in the lower Vietoris topology. When `P` is
    /// empty there is no hyperpoint `cl(P)`; convergence to `∅` imposes no
    /// condition, and the outcome is marked vacuous.
    pub fn check_lower_convergence_lemma(&self, phi: &FilterOnCarrier) -> Result<Outcome> {
        Self::require_ultrafilter(phi)?;
        let closure = self.space.closure(self.limit_set(phi)?);
        let (holds, vacuous) = if closure.is_empty() {
            (true, true)
        } else {
            (self.lower_converges(phi, closure)?, false)
        };
        Ok(Outcome {
            holds,
            vacuous,
            precondition: true,
            closure,
        })
    }

    /// If `φ → A` in the lower Vietoris topology then `A ⊆ cl(P)`.
    pub fn check_locally_compact_bound(&self, phi: &FilterOnCarrier, a: SubsetBits) -> Result<Outcome> {
        Self::require_ultrafilter(phi)?;
        let closure = self.space.closure(self.limit_set(phi)?);
        let converges = self.lower_converges(phi, a)?;
        Ok(Outcome {
            holds: !converges || a.is_subset(closure),
            vacuous: !converges,
            precondition: self.space.is_locally_compact(),
            closure,
        })
    }

    /// If `φ → A` in the lower Vietoris topology then `A` lies in the
    /// filterwise limit set (reported in `closure`).
    pub fn check_filterwise_refinement(
        &self,
        phi: &FilterOnCarrier,
        a: SubsetBits,
        sample: FilterSample,
    ) -> Result<Outcome> {
        Self::require_ultrafilter(phi)?;
        let p = self.filterwise_limit_set(phi, sample)?;
        let converges = self.lower_converges(phi, a)?;
        Ok(Outcome {
            holds: !converges || a.is_subset(p),
            vacuous: !converges,
            precondition: self.space.is_nested_neighbourhood(),
            closure: p,
        })
    }
}
