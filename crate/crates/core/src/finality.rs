//! Final topologies on `K(Y)` with respect to the maps `f ↦ f(A)`, and the
//! finite checks around them.

use serde::Serialize;

use crate::error::{size_guard, Error, Result};
use crate::filter::{enumerate_filters, enumerate_ultrafilters, singleton_filter, Carrier};
use crate::function_space::{compact_open, CarrierChoice, FunctionSpace};
use crate::hyperspace::{compacts, hit, miss, vietoris, HyperSpace};
use crate::map::FiniteMap;
use crate::space::{final_topology_by, generate_from_subbase, FiniteSpace, OpenTest};
use crate::subset::{SetFamily, SubsetBits};

/// Function spaces up to this many maps are materialized under
/// [`Strategy::Auto`].
pub const AUTO_MATERIALIZE_MAX: usize = 16;

/// How openness in `C(X, Y)` is decided.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Strategy {
    #[default]
    Auto,
    Materialize,
    Neighbourhood,
}

/// A domain space with a compact subset; contributes `f ↦ f(A)` on `C(X, Y)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Source {
    pub dom: FiniteSpace,
    pub compact: SubsetBits,
}

impl Source {
    pub fn new(dom: FiniteSpace, compact: SubsetBits) -> Self {
        Source { dom, compact }
    }
}

enum Tester {
    Extensional(FiniteSpace),
    Neighbourhoods,
}

struct Group {
    fs: FunctionSpace,
    tester: Tester,
}

impl Group {
    fn open_test(&self) -> &dyn OpenTest {
        match &self.tester {
            Tester::Extensional(t) => t,
            Tester::Neighbourhoods => &self.fs,
        }
    }
}

pub struct FinalitySetup {
    target: HyperSpace,
    sources: Vec<Source>,
    groups: Vec<Group>,
    /// `(group, projection)` per source.
    projections: Vec<(usize, FiniteMap)>,
    computed: FiniteSpace,
}

impl std::fmt::Debug for FinalitySetup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FinalitySetup")
            .field("target", &self.target.family())
            .field("sources", &self.sources.len())
            .field("computed", &self.computed)
            .finish()
    }
}

/// The final topology on `K(cod)` for the maps `π_A ∘ μ: C(X, cod) → K(cod)`,
/// one per source, each `C(X, cod)` carrying the compact-open topology.
pub fn final_over_projections(cod: &FiniteSpace, sources: &[Source], strategy: Strategy) -> Result<FinalitySetup> {
    if sources.is_empty() {
        return Err(Error::Invalid("at least one source is required".into()));
    }
    let target = vietoris(cod, &compacts(cod))?;
    let mut groups: Vec<Group> = Vec::new();
    let mut projections = Vec::with_capacity(sources.len());
    for src in sources {
        let kx = compacts(&src.dom);
        if !src.compact.is_empty() && !kx.contains(src.compact) {
            return Err(Error::NotAMember(format!("{:?}", src.compact)));
        }
        let g = match groups.iter().position(|g| g.fs.dom() == &src.dom) {
            Some(g) => g,
            None => {
                let fs = compact_open(&src.dom, cod, CarrierChoice::Continuous)?;
                let materialize = match strategy {
                    Strategy::Materialize => true,
                    Strategy::Neighbourhood => false,
                    Strategy::Auto => fs.len() <= AUTO_MATERIALIZE_MAX,
                };
                let tester = if materialize {
                    Tester::Extensional(fs.materialize().map_err(|e| match e {
                        Error::SizeLimitExceeded { what, size, limit, .. } => Error::SizeLimitExceeded {
                            what,
                            size,
                            limit,
                            hint: Some("use the neighbourhood strategy"),
                        },
                        other => other,
                    })?)
                } else {
                    Tester::Neighbourhoods
                };
                groups.push(Group { fs, tester });
                groups.len() - 1
            }
        };
        let proj = groups[g].fs.projection(src.compact, target.family())?;
        projections.push((g, proj));
    }
    let maps: Vec<(&dyn OpenTest, &FiniteMap)> = projections
        .iter()
        .map(|(g, f)| (groups[*g].open_test(), f))
        .collect();
    let computed = final_topology_by(target.family().len(), &maps)?;
    Ok(FinalitySetup {
        target,
        sources: sources.to_vec(),
        groups,
        projections,
        computed,
    })
}

impl FinalitySetup {
    /// `vietoris(cod, K(cod))`.
    pub fn target(&self) -> &HyperSpace {
        &self.target
    }

    pub fn sources(&self) -> &[Source] {
        &self.sources
    }

    /// The final topology on `K(cod)` indices.
    pub fn computed(&self) -> &FiniteSpace {
        &self.computed
    }

    /// The projection of source `i` as a map from `C(X_i, cod)` indices.
    pub fn projection(&self, i: usize) -> &FiniteMap {
        &self.projections[i].1
    }

    pub fn function_space(&self, i: usize) -> &FunctionSpace {
        &self.groups[self.projections[i].0].fs
    }

    /// Whether the preimage of `u` under source `i` is open.
    pub fn preimage_is_open(&self, i: usize, u: SubsetBits) -> bool {
        let (g, f) = &self.projections[i];
        self.groups[*g].open_test().is_open_where(&|x| u.contains(f.apply(x)))
    }

    /// Test hook: toggles membership of `set` in the computed topology. The
    /// result need not be a topology; it exists so that the checking code
    /// can be exercised against a known-bad input.
    pub fn flip_open(&mut self, set: SubsetBits) {
        let mut opens: Vec<SubsetBits> = self.computed.opens().iter().filter(|&u| u != set).collect();
        if opens.len() == self.computed.opens().len() {
            opens.push(set);
        }
        self.computed = FiniteSpace::from_opens_unchecked(self.computed.n(), SetFamily::new(opens));
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ContainmentViolation {
    /// The Vietoris-open that is missing, as members of `K(cod)`.
    pub open: Vec<SubsetBits>,
    /// A source whose preimage of `open` is not open, if any.
    pub source: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ContainmentReport {
    pub checked: usize,
    pub violations: Vec<ContainmentViolation>,
}

impl ContainmentReport {
    pub fn contained(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks that every Vietoris-open of `K(cod)` is open in the computed
/// topology.
pub fn check_vietoris_contained(setup: &FinalitySetup) -> ContainmentReport {
    let opens = setup.target.topology().opens();
    let violations = opens
        .iter()
        .filter(|&u| !setup.computed.is_open(u))
        .map(|u| ContainmentViolation {
            open: setup.target.family().restrict(u).members().to_vec(),
            source: (0..setup.projections.len()).find(|&i| !setup.preimage_is_open(i, u)),
        })
        .collect();
    ContainmentReport {
        checked: opens.len(),
        violations,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SubbasicKind {
    /// `(Y∖F)⁺ = {B : B ⊆ O}`, preimage `(A, O)`.
    Miss,
    /// `O⁻ = {B : B ∩ O ≠ ∅}`, preimage `⋃_{a∈A} ({a}, O)`.
    Hit,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PreimageFailure {
    pub kind: SubbasicKind,
    pub open: SubsetBits,
    pub identity_holds: bool,
    pub preimage_open: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct PreimageReport {
    pub checked: usize,
    pub failures: Vec<PreimageFailure>,
}

/// For `π_A ∘ μ` on the compact-open space `fs = C(X, Y)`: every subbasic
/// Vietoris open has an open preimage, equal to the expected subbasic set
/// (or union of them) of `fs`.
pub fn check_projection_preimages(fs: &FunctionSpace, a: SubsetBits) -> Result<PreimageReport> {
    let ky = compacts(fs.cod());
    let proj = fs.projection(a, &ky)?;
    let preimage = |v: &SetFamily| -> Vec<u32> {
        (0..fs.len() as u32)
            .filter(|&i| v.contains(ky.get(proj.apply(i as usize))))
            .collect()
    };
    let mut report = PreimageReport::default();
    for o in fs.cod().opens().iter() {
        let closed = o.complement(fs.cod().n());
        let miss_pre = preimage(&miss(&ky, closed));
        let miss_expected = fs.subbasic(a, o);
        let mut hit_expected: Vec<u32> = a.iter().flat_map(|x| fs.subbasic(SubsetBits::singleton(x), o)).collect();
        hit_expected.sort_unstable();
        hit_expected.dedup();
        let hit_pre = preimage(&hit(&ky, o));
        for (kind, pre, expected) in [
            (SubbasicKind::Miss, miss_pre, miss_expected),
            (SubbasicKind::Hit, hit_pre, hit_expected),
        ] {
            report.checked += 1;
            let identity_holds = pre == expected;
            let preimage_open = fs.is_open_indices(&pre);
            if !identity_holds || !preimage_open {
                report.failures.push(PreimageFailure {
                    kind,
                    open: o,
                    identity_holds,
                    preimage_open,
                });
            }
        }
    }
    Ok(report)
}

/// Which compacts of `Z` become sources in
/// [`check_finality_discrete_square`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SourceCap {
    All,
    /// `Z`, every singleton, every row `{a}×Y`, every column `Y×{b}`, and
    /// every non-empty subset whose bitmask is a multiple of 37.
    Sample,
}

impl SourceCap {
    pub fn default_for(y_n: usize) -> SourceCap {
        if y_n <= 2 {
            SourceCap::All
        } else {
            SourceCap::Sample
        }
    }
}

/// The sampled compacts of the discrete square on `y_n × y_n` points; point
/// `(a, b)` has index `a + b·y_n`.
pub fn square_sources(y_n: usize, cap: SourceCap) -> Vec<SubsetBits> {
    let n = y_n * y_n;
    let z = SubsetBits::full(n);
    let mut out: Vec<SubsetBits> = match cap {
        SourceCap::All => SetFamily::nonempty_subsets(n).members().to_vec(),
        SourceCap::Sample => {
            let mut s = vec![z];
            s.extend((0..n).map(SubsetBits::singleton));
            for a in 0..y_n {
                s.push((0..y_n).map(|b| a + b * y_n).collect());
                s.push((0..y_n).map(|c| c + a * y_n).collect());
            }
            s.extend((1..=z.bits()).filter(|m| m % 37 == 0).map(SubsetBits));
            s
        }
    };
    out.sort();
    out.dedup();
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SquareReport {
    pub y_n: usize,
    pub cap: SourceCap,
    pub sources: usize,
    pub functions: usize,
    pub final_opens: usize,
    pub vietoris_opens: usize,
    pub contained: bool,
    pub equals_vietoris: bool,
    pub equals_discrete: bool,
    /// Subsets that are open in exactly one of the two topologies.
    pub differences: Vec<Vec<SubsetBits>>,
}

impl SquareReport {
    pub fn passed(&self) -> bool {
        self.contained && self.equals_vietoris && self.equals_discrete
    }
}

/// Y discrete on `y_n` points, Z the discrete square (its own Stone-Čech
/// compactification). Compares the final topology on `K(Y)` with the
/// Vietoris topology and the discrete topology.
pub fn check_finality_discrete_square(y_n: usize, cap: SourceCap) -> Result<SquareReport> {
    check_finality_discrete_square_with(y_n, cap, |_| {})
}

/// As [`check_finality_discrete_square`], with a hook that may alter the
/// setup before comparison.
pub fn check_finality_discrete_square_with(
    y_n: usize,
    cap: SourceCap,
    tamper: impl FnOnce(&mut FinalitySetup),
) -> Result<SquareReport> {
    if y_n == 0 {
        return Err(Error::Invalid("the codomain needs at least one point".into()));
    }
    size_guard("discrete square side", y_n as u128, 3)?;
    let y = FiniteSpace::discrete(y_n);
    let z = FiniteSpace::discrete(y_n * y_n);
    let sources: Vec<Source> = square_sources(y_n, cap)
        .into_iter()
        .map(|a| Source::new(z.clone(), a))
        .collect();
    let mut setup = final_over_projections(&y, &sources, Strategy::Auto)?;
    tamper(&mut setup);
    let containment = check_vietoris_contained(&setup);
    let computed = setup.computed();
    let v = setup.target().topology();
    let discrete = FiniteSpace::discrete(v.n());
    let differences = SubsetBits::full(v.n())
        .submasks()
        .filter(|&u| computed.is_open(u) != v.is_open(u))
        .map(|u| setup.target().family().restrict(u).members().to_vec())
        .collect();
    Ok(SquareReport {
        y_n,
        cap,
        sources: sources.len(),
        functions: setup.function_space(0).len(),
        final_opens: computed.opens().len(),
        vietoris_opens: v.opens().len(),
        contained: containment.contained(),
        equals_vietoris: computed.opens() == v.opens(),
        equals_discrete: computed.opens() == discrete.opens(),
        differences,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StoneCechReport {
    pub d_n: usize,
    pub ultrafilters: usize,
    pub w_bijective: bool,
    /// `cl(w(M))` is clopen and equals `Uf(M)` for every `M ⊆ D`.
    pub closures_clopen: bool,
    pub clopen_base: bool,
    /// Every clopen `C` equals `cl(C ∩ w(D))`.
    pub clopens_dense_trace: bool,
}

impl StoneCechReport {
    pub fn passed(&self) -> bool {
        self.w_bijective && self.closures_clopen && self.clopen_base && self.clopens_dense_trace
    }
}

/// Ultrafilter space of the discrete space on `d_n` points, topologized by
/// the base `Uf(M) = {u : M ∈ u}`.
pub fn stone_cech_finite_discrete(d_n: usize) -> Result<StoneCechReport> {
    size_guard("discrete ground set", d_n as u128, 16)?;
    let carrier = Carrier::points(d_n)?;
    let mut ultra = enumerate_ultrafilters(carrier);
    if d_n <= crate::filter::EXHAUSTIVE_CARRIER_LIMIT {
        let all: Vec<_> = enumerate_filters(carrier)?
            .into_iter()
            .filter(|f| f.is_ultrafilter_by_complements() == Some(true))
            .collect();
        if all.len() != ultra.len() {
            ultra = all;
        }
    }
    let w: Vec<Option<usize>> = (0..d_n)
        .map(|x| {
            let e = singleton_filter(carrier, x).ok()?;
            ultra.iter().position(|u| *u == e)
        })
        .collect();
    let mut hit_by_w = vec![false; ultra.len()];
    for &i in w.iter().flatten() {
        hit_by_w[i] = true;
    }
    let w_bijective = w.iter().all(Option::is_some) && hit_by_w.iter().all(|&b| b) && ultra.len() == d_n;

    let uf = |m: SubsetBits| -> SubsetBits { (0..ultra.len()).filter(|&i| ultra[i].contains_bits(m)).collect() };
    let w_of = |m: SubsetBits| -> SubsetBits { m.iter().filter_map(|x| w[x]).collect() };
    let base: SetFamily = SetFamily::power_set(d_n).iter().map(uf).collect();
    let sigma = generate_from_subbase(ultra.len(), &base)?;
    let clopen = |s: SubsetBits| sigma.is_open(s) && sigma.is_closed(s);

    let closures_clopen = SetFamily::power_set(d_n).iter().all(|m| {
        let c = sigma.closure(w_of(m));
        clopen(c) && c == uf(m)
    });
    let clopens: Vec<SubsetBits> = sigma.opens().iter().filter(|&u| clopen(u)).collect();
    let clopen_base = sigma.opens().iter().all(|u| {
        u.iter()
            .all(|p| clopens.iter().any(|&c| c.contains(p) && c.is_subset(u)))
    });
    let wd = w_of(SubsetBits::full(d_n));
    let clopens_dense_trace = clopens.iter().all(|&c| sigma.closure(c & wd) == c);
    Ok(StoneCechReport {
        d_n,
        ultrafilters: ultra.len(),
        w_bijective,
        closures_clopen,
        clopen_base,
        clopens_dense_trace,
    })
}
