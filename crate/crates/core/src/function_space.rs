//! Set-open topologies on sets of maps, and the map `μ: f ↦ (A ↦ f(A))`.
//!
//! Function spaces outgrow materialized topologies quickly (the compact-open
//! topology on 27 maps can already have 2²⁷ opens), so a [`FunctionSpace`]
//! stores the minimal open neighbourhood of each function instead. A set of
//! functions is open iff it contains the minimal neighbourhood of each of
//! its members. [`FunctionSpace::materialize`] produces the extensional
//! topology when it fits the size guards.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{size_guard, Error, Result};
use crate::hyperspace::{compacts, vietoris, HyperSpace};
use crate::limits;
use crate::map::{all_maps, FiniteMap};
use crate::space::{generate_from_subbase, FiniteSpace, OpenTest};
use crate::subset::{SetFamily, SubsetBits, MAX_GROUND};

/// Which maps form the carrier of a function space.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CarrierChoice {
    /// `C(X, Y)`.
    Continuous,
    /// `Y^X`.
    All,
}

/// Preimages of opens are open.
pub fn is_continuous(dom: &FiniteSpace, cod: &FiniteSpace, f: &FiniteMap) -> bool {
    f.dom_n() == dom.n()
        && f.cod_n() == cod.n()
        && cod.opens().iter().all(|o| dom.is_open(f.preimage(o)))
}

fn map_count_guard(dom: &FiniteSpace, cod: &FiniteSpace) -> Result<()> {
    let count = (cod.n() as u128).checked_pow(dom.n() as u32).unwrap_or(u128::MAX);
    size_guard("function carrier", count, limits::max_points() as u128)
}

/// `C(X, Y)`, in the lexicographic order of [`all_maps`].
pub fn continuous_maps(dom: &FiniteSpace, cod: &FiniteSpace) -> Result<Vec<FiniteMap>> {
    map_count_guard(dom, cod)?;
    Ok(all_maps(dom.n(), cod.n())
        .filter(|f| is_continuous(dom, cod, f))
        .collect())
}

pub fn carrier_maps(dom: &FiniteSpace, cod: &FiniteSpace, choice: CarrierChoice) -> Result<Vec<FiniteMap>> {
    match choice {
        CarrierChoice::Continuous => continuous_maps(dom, cod),
        CarrierChoice::All => {
            map_count_guard(dom, cod)?;
            Ok(all_maps(dom.n(), cod.n()).collect())
        }
    }
}

/// A set of maps with the set-open topology generated by a family 𝔄.
#[derive(Clone, Debug)]
pub struct FunctionSpace {
    dom: FiniteSpace,
    cod: FiniteSpace,
    functions: Vec<FiniteMap>,
    family: SetFamily,
    index: HashMap<Vec<u32>, u32>,
    nbhd: Vec<Vec<u32>>,
}

/// The topology on `functions` generated by `(A, W) = {f : f(A) ⊆ W}` for
/// `A ∈ family` and `W` open in `cod`.
pub fn set_open_topology(
    dom: &FiniteSpace,
    cod: &FiniteSpace,
    functions: Vec<FiniteMap>,
    family: &SetFamily,
) -> Result<FunctionSpace> {
    family.check_fits(dom.n())?;
    size_guard("function carrier", functions.len() as u128, u32::MAX as u128)?;
    let mut index = HashMap::with_capacity(functions.len());
    for (i, f) in functions.iter().enumerate() {
        if f.dom_n() != dom.n() || f.cod_n() != cod.n() {
            return Err(Error::DomainMismatch {
                expected: dom.n(),
                found: f.dom_n(),
            });
        }
        if index.insert(f.image().to_vec(), i as u32).is_some() {
            return Err(Error::Invalid(format!("duplicate map {:?} in carrier", f.image())));
        }
    }
    let mut space = FunctionSpace {
        dom: dom.clone(),
        cod: cod.clone(),
        functions,
        family: family.clone(),
        index,
        nbhd: Vec::new(),
    };
    space.nbhd = space.compute_neighbourhoods()?;
    Ok(space)
}

/// The set-open topology generated by the compact subsets of `dom`.
pub fn compact_open(dom: &FiniteSpace, cod: &FiniteSpace, choice: CarrierChoice) -> Result<FunctionSpace> {
    set_open_topology(dom, cod, carrier_maps(dom, cod, choice)?, &compacts(dom))
}

impl FunctionSpace {
    pub fn dom(&self) -> &FiniteSpace {
        &self.dom
    }

    pub fn cod(&self) -> &FiniteSpace {
        &self.cod
    }

    pub fn functions(&self) -> &[FiniteMap] {
        &self.functions
    }

    pub fn family(&self) -> &SetFamily {
        &self.family
    }

    pub fn len(&self) -> usize {
        self.functions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.functions.is_empty()
    }

    pub fn index_of(&self, f: &FiniteMap) -> Option<usize> {
        self.index.get(f.image()).map(|&i| i as usize)
    }

    /// Minimal open neighbourhood of the `i`-th function, as sorted indices.
    pub fn neighbourhood(&self, i: usize) -> &[u32] {
        &self.nbhd[i]
    }

    /// The subbasic set `(A, W)` as sorted indices.
    pub fn subbasic(&self, a: SubsetBits, w: SubsetBits) -> Vec<u32> {
        (0..self.functions.len() as u32)
            .filter(|&i| self.functions[i as usize].image_of(a).is_subset(w))
            .collect()
    }

    /// All subbasic sets `(A, W)`, `A ∈ 𝔄`, `W` open.
    pub fn subbase(&self) -> Vec<(SubsetBits, SubsetBits, Vec<u32>)> {
        self.family
            .iter()
            .flat_map(|a| self.cod.opens().iter().map(move |w| (a, w)))
            .map(|(a, w)| (a, w, self.subbasic(a, w)))
            .collect()
    }

    /// Whether the listed functions form an open set.
    pub fn is_open_indices(&self, set: &[u32]) -> bool {
        let mut member = vec![false; self.len()];
        for &i in set {
            member[i as usize] = true;
        }
        self.is_open_where(&|i| member[i])
    }

    /// The extensional topology, generated from the subbase.
    pub fn materialize(&self) -> Result<FiniteSpace> {
        size_guard("materialized function space", self.len() as u128, MAX_GROUND as u128)?;
        let subbase: SetFamily = self
            .subbase()
            .into_iter()
            .map(|(_, _, s)| s.iter().map(|&i| i as usize).collect::<SubsetBits>())
            .collect();
        generate_from_subbase(self.len(), &subbase)
    }

    /// `N(f) = ⋂ {(A, W) : f(A) ⊆ W} = {g : g(A) ⊆ m(f(A)) for all A ∈ 𝔄}`
    /// where `m(S)` is the smallest open superset of `S`. Candidates are
    /// drawn from the product of the per-point bounds `⋂_{A ∋ z} m(f(A))`,
    /// which already implies every constraint.
    fn compute_neighbourhoods(&self) -> Result<Vec<Vec<u32>>> {
        let limit = limits::max_opens() as u128;
        let cod_full = self.cod.full();
        let mut total: u128 = 0;
        let mut out = Vec::with_capacity(self.functions.len());
        for f in &self.functions {
            let mut allowed = vec![cod_full; self.dom.n()];
            for a in self.family.iter() {
                let bound = self.cod.minimal_open_superset(f.image_of(a));
                for z in a.iter() {
                    allowed[z] = allowed[z] & bound;
                }
            }
            let candidates: u128 = allowed.iter().map(|s| s.len() as u128).product();
            total += candidates;
            if total > limit {
                return Err(Error::SizeLimitExceeded {
                    what: "function-space neighbourhood candidates",
                    size: total,
                    limit,
                    hint: None,
                });
            }
            let mut members = Vec::new();
            let choices: Vec<Vec<u32>> = allowed
                .iter()
                .map(|s| s.iter().map(|y| y as u32).collect())
                .collect();
            let mut image = vec![0u32; self.dom.n()];
            product_walk(&choices, 0, &mut image, &mut |g| {
                if let Some(&i) = self.index.get(g) {
                    members.push(i);
                }
            });
            members.sort_unstable();
            out.push(members);
        }
        Ok(out)
    }

    /// `μ(f)`: for each `A ∈ 𝔄` (in canonical order) the index of `f(A)` in
    /// `target`.
    pub fn mu(&self, i: usize, target: &SetFamily) -> Result<Vec<usize>> {
        mu(&self.family, target, &self.functions[i])
    }

    /// `π_A ∘ μ` as a map from function indices to `target` indices.
    pub fn projection(&self, a: SubsetBits, target: &SetFamily) -> Result<FiniteMap> {
        let image = self
            .functions
            .iter()
            .map(|f| {
                let fa = f.image_of(a);
                target
                    .index_of(fa)
                    .map(|j| j as u32)
                    .ok_or(Error::ImageNotInFamily { image: fa })
            })
            .collect::<Result<Vec<u32>>>()?;
        Ok(FiniteMap::new_unchecked(target.len(), image))
    }
}

fn product_walk(choices: &[Vec<u32>], depth: usize, image: &mut Vec<u32>, visit: &mut dyn FnMut(&[u32])) {
    if depth == choices.len() {
        visit(image);
        return;
    }
    for &y in &choices[depth] {
        image[depth] = y;
        product_walk(choices, depth + 1, image, visit);
    }
}

impl OpenTest for FunctionSpace {
    fn point_count(&self) -> usize {
        self.functions.len()
    }

    fn is_open_where(&self, member: &dyn Fn(usize) -> bool) -> bool {
        (0..self.functions.len())
            .filter(|&i| member(i))
            .all(|i| self.nbhd[i].iter().all(|&j| member(j as usize)))
    }
}

/// `μ(f)(A) = f(A)` for every `A ∈ family`, as indices into `target`.
pub fn mu(family: &SetFamily, target: &SetFamily, f: &FiniteMap) -> Result<Vec<usize>> {
    family
        .iter()
        .map(|a| {
            let fa = f.image_of(a);
            target.index_of(fa).ok_or(Error::ImageNotInFamily { image: fa })
        })
        .collect()
}

/// Whether `μ` is continuous, open onto its image and injective.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct EmbeddingReport {
    pub continuous: bool,
    pub open_onto_image: bool,
    pub injective: bool,
    /// The family contains every singleton of the domain.
    pub family_has_singletons: bool,
}

impl EmbeddingReport {
    pub fn is_embedding(&self) -> bool {
        self.continuous && self.open_onto_image && self.injective
    }
}

/// Checks `μ: H → ∏_{A∈𝔄} target` with the product topology, where every
/// factor is the hyperspace `target`. A report is produced even when the
/// family lacks singletons; `family_has_singletons` flags that case.
pub fn mu_embedding_report(fs: &FunctionSpace, target: &HyperSpace) -> Result<EmbeddingReport> {
    if target.base() != fs.cod() {
        return Err(Error::Invalid("target hyperspace must be built over the codomain".into()));
    }
    let family_has_singletons = (0..fs.dom().n()).all(|x| fs.family().contains(SubsetBits::singleton(x)));
    let factors = fs.family().len();
    let images: Vec<Vec<usize>> = (0..fs.len())
        .map(|i| fs.mu(i, target.family()))
        .collect::<Result<_>>()?;

    // continuity: preimages of the product subbase π_A⁻¹(V) are open
    let subbase = target.subbase();
    let continuous = (0..factors).all(|a| {
        subbase
            .iter()
            .all(|v| fs.is_open_where(&|f| v.contains(images[f][a])))
    });

    let mut points: Vec<&Vec<usize>> = images.iter().collect();
    points.sort();
    points.dedup();
    let injective = points.len() == images.len();

    // q lies in the minimal product neighbourhood of p iff it does so in
    // every factor
    let topo = target.topology();
    let below: Vec<Vec<bool>> = points
        .iter()
        .map(|p| {
            points
                .iter()
                .map(|q| (0..factors).all(|a| topo.minimal_open_nbhd(p[a]).contains(q[a])))
                .collect()
        })
        .collect();
    let point_of = |f: usize| points.binary_search(&&images[f]).expect("image point");
    let open_onto_image = fs.subbase().iter().all(|(_, _, set)| {
        let mut in_image = vec![false; points.len()];
        for &f in set {
            in_image[point_of(f as usize)] = true;
        }
        (0..points.len())
            .filter(|&p| in_image[p])
            .all(|p| (0..points.len()).all(|q| !below[p][q] || in_image[q]))
    });

    Ok(EmbeddingReport {
        continuous,
        open_onto_image,
        injective,
        family_has_singletons,
    })
}

/// [`mu_embedding_report`] for the carrier `choice`, family `family` and
/// the Vietoris hyperspace of compact subsets of `cod` as factor.
pub fn mu_embedding_report_for(
    dom: &FiniteSpace,
    cod: &FiniteSpace,
    choice: CarrierChoice,
    family: &SetFamily,
) -> Result<EmbeddingReport> {
    let fs = set_open_topology(dom, cod, carrier_maps(dom, cod, choice)?, family)?;
    let target = vietoris(cod, &compacts(cod))?;
    mu_embedding_report(&fs, &target)
}

/// `π_A ∘ μ: C(X, Y) → K(Y)` on indices.
pub fn projection_compose(dom: &FiniteSpace, cod: &FiniteSpace, a: SubsetBits) -> Result<FiniteMap> {
    a.check_fits(dom.n())?;
    let k_dom = compacts(dom);
    if !k_dom.contains(a) {
        return Err(Error::NotAMember(format!("{a:?} in K(X)")));
    }
    let maps = continuous_maps(dom, cod)?;
    let target = compacts(cod);
    let image = maps
        .iter()
        .map(|f| {
            let fa = f.image_of(a);
            target
                .index_of(fa)
                .map(|j| j as u32)
                .ok_or(Error::ImageNotInFamily { image: fa })
        })
        .collect::<Result<Vec<u32>>>()?;
    Ok(FiniteMap::new_unchecked(target.len(), image))
}
