//! Verification suites and the reports they produce.
//!
//! Every suite sweeps its instances in a fixed order, so reports depend only
//! on the parameters; `wall_time_ms` is the single field that varies between
//! runs. Sweeps run in parallel and are merged back in sweep order.

use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::choice::{ChoiceLab, FilterSample};
use crate::error::{Error, Result};
use crate::finality::{
    check_finality_discrete_square_with, check_projection_preimages, check_vietoris_contained,
    final_over_projections, stone_cech_finite_discrete, FinalitySetup, Source, SourceCap, Strategy,
};
use crate::function_space::{compact_open, mu_embedding_report, CarrierChoice};
use crate::hyperspace::{compacts, vietoris};
use crate::io::SpaceFile;
use crate::space::{enumerate_topologies, make_space, FiniteSpace};
use crate::subset::SubsetBits;

/// At most this many witnesses are kept per suite.
pub const MAX_WITNESSES: usize = 20;

/// Number of topologies on `n` labelled points, `n = 0..=6`.
pub const KNOWN_TOPOLOGY_COUNTS: [usize; 7] = [1, 1, 4, 29, 355, 6942, 209527];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Enumeration,
    Embedding,
    VietorisInclusion,
    FinalitySquare,
    StoneCech,
    ChoiceLemma,
    PropertyA,
    Shrink,
    All,
}

impl Suite {
    pub const PARTS: [Suite; 8] = [
        Suite::Enumeration,
        Suite::Embedding,
        Suite::VietorisInclusion,
        Suite::FinalitySquare,
        Suite::StoneCech,
        Suite::ChoiceLemma,
        Suite::PropertyA,
        Suite::Shrink,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Enumeration => "enumeration",
            Suite::Embedding => "embedding",
            Suite::VietorisInclusion => "vietoris-inclusion",
            Suite::FinalitySquare => "finality-square",
            Suite::StoneCech => "stone-cech",
            Suite::ChoiceLemma => "choice-lemma",
            Suite::PropertyA => "property-a",
            Suite::Shrink => "shrink",
            Suite::All => "all",
        }
    }

    pub fn supports_fault_injection(self) -> bool {
        matches!(self, Suite::VietorisInclusion | Suite::FinalitySquare | Suite::All)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Parameters {
    pub max_n: usize,
    pub inject_fault: bool,
}

impl Default for Parameters {
    fn default() -> Self {
        Parameters {
            max_n: 3,
            inject_fault: false,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Totals {
    pub checked: u64,
    pub passed: u64,
    pub failed: u64,
}

impl Totals {
    fn add(&mut self, other: Totals) {
        self.checked += other.checked;
        self.passed += other.passed;
        self.failed += other.failed;
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PartSummary {
    pub suite: &'static str,
    pub totals: Totals,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunReport {
    pub suite: &'static str,
    pub parameters: Parameters,
    pub totals: Totals,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub parts: Vec<PartSummary>,
    pub witnesses: Vec<Value>,
    pub wall_time_ms: u64,
}

impl RunReport {
    pub fn passed(&self) -> bool {
        self.totals.failed == 0
    }
}

/// Accumulates check outcomes in sweep order.
#[derive(Default)]
struct Tally {
    totals: Totals,
    witnesses: Vec<Value>,
}

impl Tally {
    fn record(&mut self, ok: bool, witness: impl FnOnce() -> Value) {
        self.totals.checked += 1;
        if ok {
            self.totals.passed += 1;
        } else {
            self.totals.failed += 1;
            if self.witnesses.len() < MAX_WITNESSES {
                self.witnesses.push(witness());
            }
        }
    }

    fn merge(&mut self, other: Tally) {
        self.totals.add(other.totals);
        let room = MAX_WITNESSES - self.witnesses.len();
        self.witnesses.extend(other.witnesses.into_iter().take(room));
    }

    fn merge_all(parts: Vec<Tally>) -> Tally {
        parts.into_iter().fold(Tally::default(), |mut acc, t| {
            acc.merge(t);
            acc
        })
    }
}

pub fn run(suite: Suite, params: Parameters) -> Result<RunReport> {
    if params.inject_fault && !suite.supports_fault_injection() {
        return Err(Error::Invalid(format!("suite {} has no fault-injection hook", suite.name())));
    }
    let start = Instant::now();
    let (tally, parts) = if suite == Suite::All {
        let mut tally = Tally::default();
        let mut parts = Vec::new();
        for part in Suite::PARTS {
            let mut t = run_part(part, params)?;
            for w in &mut t.witnesses {
                if let Value::Object(map) = w {
                    map.insert("suite".into(), json!(part.name()));
                }
            }
            parts.push(PartSummary {
                suite: part.name(),
                totals: t.totals,
            });
            tally.merge(t);
        }
        (tally, parts)
    } else {
        (run_part(suite, params)?, Vec::new())
    };
    Ok(RunReport {
        suite: suite.name(),
        parameters: params,
        totals: tally.totals,
        parts,
        witnesses: tally.witnesses,
        wall_time_ms: start.elapsed().as_millis() as u64,
    })
}

fn run_part(suite: Suite, p: Parameters) -> Result<Tally> {
    match suite {
        Suite::Enumeration => enumeration(p.max_n),
        Suite::Embedding => embedding(p.max_n),
        Suite::VietorisInclusion => vietoris_inclusion(p.max_n, p.inject_fault),
        Suite::FinalitySquare => finality_square(p.max_n, p.inject_fault),
        Suite::StoneCech => stone_cech(p.max_n),
        Suite::ChoiceLemma => choice_lemma(p.max_n),
        Suite::PropertyA => property_a(p.max_n),
        Suite::Shrink => shrink(p.max_n),
        Suite::All => unreachable!("expanded by run"),
    }
}

fn space_json(s: &FiniteSpace) -> Value {
    serde_json::to_value(SpaceFile::from_space(s)).expect("serializable")
}

/// All topologies on `1..=max_n` points.
fn spaces_up_to(max_n: usize) -> Result<Vec<FiniteSpace>> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        out.extend(enumerate_topologies(n)?);
    }
    Ok(out)
}

fn pairs(spaces: &[FiniteSpace]) -> Vec<(&FiniteSpace, &FiniteSpace)> {
    spaces
        .iter()
        .flat_map(|x| spaces.iter().map(move |y| (x, y)))
        .collect()
}

fn enumeration(max_n: usize) -> Result<Tally> {
    let mut tally = Tally::default();
    for n in 1..=max_n {
        let spaces = enumerate_topologies(n)?;
        let valid = spaces
            .iter()
            .all(|s| make_space(n, s.opens().clone()).as_ref() == Ok(s));
        let distinct = spaces.windows(2).all(|w| w[0] < w[1]);
        let count_ok = KNOWN_TOPOLOGY_COUNTS.get(n).is_none_or(|&c| c == spaces.len());
        tally.record(valid && distinct && count_ok, || {
            json!({"n": n, "count": spaces.len(), "valid": valid, "distinct": distinct})
        });
    }
    Ok(tally)
}

fn embedding(max_n: usize) -> Result<Tally> {
    let spaces = spaces_up_to(max_n)?;
    let results: Vec<Result<Tally>> = pairs(&spaces)
        .par_iter()
        .map(|&(x, y)| {
            let fs = compact_open(x, y, CarrierChoice::Continuous)?;
            let target = vietoris(y, &compacts(y))?;
            let r = mu_embedding_report(&fs, &target)?;
            let mut t = Tally::default();
            t.record(r.is_embedding() && r.family_has_singletons, || {
                json!({"dom": space_json(x), "cod": space_json(y), "report": r})
            });
            Ok(t)
        })
        .collect();
    Ok(Tally::merge_all(results.into_iter().collect::<Result<_>>()?))
}

/// Smallest non-trivial Vietoris open, the set flipped by fault injection.
fn fault_target(setup: &FinalitySetup) -> Option<SubsetBits> {
    let full = SubsetBits::full(setup.target().family().len());
    setup
        .target()
        .topology()
        .opens()
        .iter()
        .find(|&u| !u.is_empty() && u != full)
}

fn vietoris_inclusion(max_n: usize, inject_fault: bool) -> Result<Tally> {
    let spaces = spaces_up_to(max_n)?;
    let all_pairs = pairs(&spaces);
    // the fault goes into the first setup that has a set to flip
    let fault_at = if inject_fault {
        all_pairs.iter().position(|(_, y)| y.n() >= 2)
    } else {
        None
    };
    let results: Vec<Result<Tally>> = all_pairs
        .par_iter()
        .enumerate()
        .map(|(i, &(x, y))| {
            let mut t = Tally::default();
            let fs = compact_open(x, y, CarrierChoice::Continuous)?;
            for (j, a) in compacts(x).iter().enumerate() {
                let pre = check_projection_preimages(&fs, a)?;
                t.record(pre.failures.is_empty(), || {
                    json!({"dom": space_json(x), "cod": space_json(y), "compact": a, "preimages": pre.failures})
                });
                let mut setup = final_over_projections(y, &[Source::new(x.clone(), a)], Strategy::Auto)?;
                if fault_at == Some(i) && j == 0 {
                    if let Some(u) = fault_target(&setup) {
                        setup.flip_open(u);
                    }
                }
                let c = check_vietoris_contained(&setup);
                t.record(c.contained(), || {
                    json!({"dom": space_json(x), "cod": space_json(y), "compact": a, "violations": c.violations})
                });
            }
            Ok(t)
        })
        .collect();
    Ok(Tally::merge_all(results.into_iter().collect::<Result<_>>()?))
}

fn finality_square(max_n: usize, inject_fault: bool) -> Result<Tally> {
    let mut tally = Tally::default();
    let top = max_n.min(3);
    for y_n in 1..=top {
        let flip = inject_fault && y_n == top;
        let r = check_finality_discrete_square_with(y_n, SourceCap::default_for(y_n), |setup| {
            if flip {
                if let Some(u) = fault_target(setup) {
                    setup.flip_open(u);
                }
            }
        })?;
        tally.record(r.passed(), || serde_json::to_value(&r).expect("serializable"));
    }
    Ok(tally)
}

fn stone_cech(max_n: usize) -> Result<Tally> {
    let mut tally = Tally::default();
    for d in 1..=max_n.max(4) {
        let r = stone_cech_finite_discrete(d)?;
        tally.record(r.passed(), || serde_json::to_value(&r).expect("serializable"));
    }
    Ok(tally)
}

/// The spaces on `n` points checked by the choice suite: all of them up to
/// three points; for four points every ninth in canonical order plus the last.
pub fn choice_corpus(n: usize) -> Result<Vec<FiniteSpace>> {
    let all = enumerate_topologies(n)?;
    if n <= 3 {
        return Ok(all);
    }
    let last = all.len() - 1;
    Ok(all
        .into_iter()
        .enumerate()
        .filter(|&(i, _)| i % 9 == 0 || i == last)
        .map(|(_, s)| s)
        .collect())
}

fn choice_lemma(max_n: usize) -> Result<Tally> {
    let mut tally = Tally::default();
    for n in 1..=max_n.min(crate::choice::MAX_CHOICE_POINTS) {
        let lab = ChoiceLab::new(n)?;
        let sample = FilterSample::default_for(n);
        let spaces = choice_corpus(n)?;
        let results: Vec<Result<Tally>> = spaces
            .par_iter()
            .map(|space| {
                let ctx = lab.on(space)?;
                let mut t = Tally::default();
                for phi in lab.ultrafilters() {
                    let o = ctx.check_lower_convergence_lemma(&phi)?;
                    t.record(o.holds, || {
                        json!({"check": "lower-convergence", "space": space_json(space), "ultrafilter": phi.kernel(), "outcome": o})
                    });
                    for a in lab.family().iter() {
                        let o = ctx.check_locally_compact_bound(&phi, a)?;
                        t.record(o.holds && o.precondition, || {
                            json!({"check": "locally-compact-bound", "space": space_json(space), "ultrafilter": phi.kernel(), "hyperpoint": a, "outcome": o})
                        });
                        let o = ctx.check_filterwise_refinement(&phi, a, sample)?;
                        t.record(o.holds && o.precondition, || {
                            json!({"check": "filterwise-refinement", "space": space_json(space), "ultrafilter": phi.kernel(), "hyperpoint": a, "outcome": o})
                        });
                    }
                }
                Ok(t)
            })
            .collect();
        tally.merge(Tally::merge_all(results.into_iter().collect::<Result<_>>()?));
    }
    Ok(tally)
}

fn property_a(max_n: usize) -> Result<Tally> {
    let mut tally = Tally::default();
    for n in 1..=max_n.min(crate::choice::MAX_CLASSIFY_POINTS) {
        let r = ChoiceLab::new(n)?.classify_property_a()?;
        tally.record(r.passed(), || serde_json::to_value(&r).expect("serializable"));
    }
    Ok(tally)
}

fn shrink(max_n: usize) -> Result<Tally> {
    let mut tally = Tally::default();
    for n in 1..=max_n {
        let spaces = enumerate_topologies(n)?;
        let results: Vec<Result<Tally>> = spaces
            .par_iter()
            .filter(|s| s.is_t3())
            .map(|space| {
                let mut t = Tally::default();
                for k in SubsetBits::full(n).submasks().filter(|&k| space.is_compact_subset(k)) {
                    for o in space.opens().iter().filter(|&o| k.is_subset(o)) {
                        let u = space.shrink_between(k, o)?;
                        t.record(u.is_some(), || json!({"space": space_json(space), "compact": k, "open": o}));
                    }
                }
                Ok(t)
            })
            .collect();
        tally.merge(Tally::merge_all(results.into_iter().collect::<Result<_>>()?));
    }
    Ok(tally)
}
