//! Invariant sweeps over the small-space corpus. Each returns the number of
//! individual checks performed, or a description of the first failure.

use std::collections::BTreeSet;

use topolab::choice::{ChoiceLab, FilterSample};
use topolab::filter::{
    converges, enumerate_filters, filter_from_sets, filter_image, function_filter_apply, neighborhood_filter,
    singleton_filter, Carrier, CarrierKind, FilterOnCarrier,
};
use topolab::finality::{
    check_finality_discrete_square, check_projection_preimages, check_vietoris_contained, final_over_projections,
    stone_cech_finite_discrete, Source, SourceCap, Strategy,
};
use topolab::function_space::{carrier_maps, compact_open, continuous_maps, mu_embedding_report, set_open_topology};
use topolab::hyperspace::{closeds, compacts, hit, lower_limits, lower_vietoris, miss, upper_vietoris, vietoris, vietoris_basic};
use topolab::map::all_maps;
use topolab::product::product_space;
use topolab::space::{enumerate_topologies, final_topology, generate_from_subbase};
use topolab::{CarrierChoice, FiniteMap, FiniteSpace, OpenTest, SetFamily, SubsetBits};

use super::oracle;

pub type Checks = Result<u64, String>;

struct Counter(u64);

impl Counter {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) -> Result<(), String> {
        self.0 += 1;
        if ok {
            Ok(())
        } else {
            Err(what())
        }
    }
}

pub fn spaces_up_to(max_n: usize) -> Vec<FiniteSpace> {
    (1..=max_n).flat_map(|n| enumerate_topologies(n).unwrap()).collect()
}

pub fn masks(space: &FiniteSpace) -> Vec<u64> {
    space.opens().iter().map(|s| s.bits()).collect()
}

fn family_masks(f: &SetFamily) -> Vec<u64> {
    f.iter().map(|s| s.bits()).collect()
}

fn subsets(n: usize) -> impl Iterator<Item = SubsetBits> {
    SubsetBits::full(n).submasks()
}

fn image_vec(f: &FiniteMap) -> Vec<usize> {
    f.image().iter().map(|&y| y as usize).collect()
}

// ---------------------------------------------------------------- spaces

pub fn space(max_n: usize) -> Checks {
    let mut c = Counter(0);
    let corpus = spaces_up_to(max_n);
    for s in &corpus {
        let n = s.n();
        let om = masks(s);
        c.check(oracle::is_topology(n, &om), || format!("not a topology: {s:?}"))?;
        for a in subsets(n) {
            let cl = s.closure(a);
            c.check(cl.bits() == oracle::closure(n, &om, a.bits()), || format!("closure {a:?} in {s:?}"))?;
            c.check(a.is_subset(cl) && s.closure(cl) == cl, || format!("closure not extensive/idempotent: {a:?} in {s:?}"))?;
            c.check(s.interior(a).bits() == oracle::interior(&om, a.bits()), || format!("interior {a:?} in {s:?}"))?;
            c.check(
                s.interior(a) == s.closure(a.complement(n)).complement(n),
                || format!("interior duality {a:?} in {s:?}"),
            )?;
            for b in subsets(n) {
                c.check(s.closure(a | b) == cl | s.closure(b), || format!("closure additivity {a:?},{b:?} in {s:?}"))?;
                if a.is_subset(b) {
                    c.check(cl.is_subset(s.closure(b)), || format!("closure monotonicity {a:?},{b:?} in {s:?}"))?;
                }
            }
        }
        let r = s.report();
        c.check(!r.t2 || r.t1, || format!("T2 without T1: {s:?}"))?;
        c.check(!r.t1 || *s == FiniteSpace::discrete(n), || format!("T1 but not discrete: {s:?}"))?;
        c.check(r.locally_compact, || format!("finite space not locally compact: {s:?}"))?;
        if r.t3 {
            for k in subsets(n) {
                for o in s.opens().iter().filter(|&o| k.is_subset(o)) {
                    c.check(s.shrink_between(k, o).unwrap().is_some(), || format!("no shrink {k:?} ⊆ {o:?} in {s:?}"))?;
                }
            }
        }
    }
    generate_minimality(&mut c, max_n.min(3), &corpus)?;
    final_topologies(&mut c, max_n.min(2))?;
    products(&mut c, max_n.min(2))?;
    Ok(c.0)
}

fn generate_minimality(c: &mut Counter, max_n: usize, corpus: &[FiniteSpace]) -> Result<(), String> {
    for n in 1..=max_n {
        let all: Vec<SubsetBits> = subsets(n).collect();
        let subbases: Vec<Vec<SubsetBits>> = if n <= 2 {
            (0u64..1 << all.len())
                .map(|m| oracle::points(m).map(|i| all[i]).collect())
                .collect()
        } else {
            all.iter()
                .flat_map(|&a| all.iter().map(move |&b| vec![a, b]))
                .collect()
        };
        for sb in subbases {
            let fam = SetFamily::new(sb.clone());
            let t = generate_from_subbase(n, &fam).unwrap();
            let raw: Vec<u64> = sb.iter().map(|s| s.bits()).collect();
            c.check(masks(&t) == oracle::generate(n, &raw), || format!("generate {sb:?} on {n}"))?;
            for other in corpus.iter().filter(|o| o.n() == n) {
                if sb.iter().all(|&u| other.is_open(u)) {
                    c.check(other.is_finer_than(&t), || format!("generated {sb:?} not below {other:?}"))?;
                }
            }
        }
    }
    Ok(())
}

fn final_topologies(c: &mut Counter, max_n: usize) -> Result<(), String> {
    let corpus = spaces_up_to(max_n);
    for target_n in 1..=max_n {
        for x in &corpus {
            for f in all_maps(x.n(), target_n) {
                for y in &corpus {
                    for g in all_maps(y.n(), target_n) {
                        let t = final_topology(target_n, &[(x, &f), (y, &g)]).unwrap();
                        let expected = oracle::finest_final(
                            target_n,
                            &[(masks(x), image_vec(&f)), (masks(y), image_vec(&g))],
                        );
                        c.check(masks(&t) == expected, || format!("final topology for {f:?} from {x:?}, {g:?} from {y:?}"))?;
                        c.check(oracle::is_topology(target_n, &expected), || "final is not a topology".into())?;
                        for u in subsets(target_n) {
                            let continuous = x.is_open(f.preimage(u)) && y.is_open(g.preimage(u));
                            c.check(continuous == t.is_open(u), || format!("finest property fails at {u:?}"))?;
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

fn products(c: &mut Counter, max_n: usize) -> Result<(), String> {
    let corpus = spaces_up_to(max_n);
    for x in &corpus {
        for y in &corpus {
            let (p, codec) = product_space(&[x.clone(), y.clone()]).unwrap();
            let mut cylinders = Vec::new();
            for o in x.opens().iter() {
                cylinders.push((0..p.n()).filter(|&i| o.contains(codec.coordinate(i, 0))).fold(0u64, |a, i| a | 1 << i));
            }
            for o in y.opens().iter() {
                cylinders.push((0..p.n()).filter(|&i| o.contains(codec.coordinate(i, 1))).fold(0u64, |a, i| a | 1 << i));
            }
            c.check(masks(&p) == oracle::generate(p.n(), &cylinders), || format!("product of {x:?} and {y:?}"))?;
            for i in 0..p.n() {
                c.check(codec.encode(&codec.decode(i)) == i, || "codec round trip".into())?;
            }
        }
    }
    Ok(())
}

// --------------------------------------------------------------- filters

pub fn filter(max_carrier: usize) -> Checks {
    let mut c = Counter(0);
    for len in 1..=max_carrier.min(4) {
        let carrier = Carrier::points(len).unwrap();
        let nonempty: Vec<u64> = (1..=oracle::full(len)).collect();
        let mut found: Vec<u64> = Vec::new();
        // every upward closed, intersection closed family of non-empty sets
        for fam in 1u64..1 << nonempty.len() {
            let members: BTreeSet<u64> = oracle::points(fam).map(|i| nonempty[i]).collect();
            let upward = members.iter().all(|&a| nonempty.iter().all(|&b| a & !b != 0 || members.contains(&b)));
            let meets = members.iter().all(|&a| members.iter().all(|&b| members.contains(&(a & b))));
            if upward && meets {
                let kernel = members.iter().fold(oracle::full(len), |k, &m| k & m);
                let f = FilterOnCarrier::from_kernel_bits(carrier, SubsetBits(kernel)).unwrap();
                let listed: BTreeSet<u64> = f.members().unwrap().iter().map(|s| s.bits()).collect();
                c.check(listed == members, || format!("kernel {kernel:b} does not reproduce its family"))?;
                found.push(kernel);
            }
        }
        found.sort_unstable();
        let enumerated: Vec<u64> = enumerate_filters(carrier)
            .unwrap()
            .iter()
            .map(|f| f.kernel_bits().unwrap().bits())
            .collect();
        c.check(found == enumerated, || format!("filters on {len} elements: {} vs {}", found.len(), enumerated.len()))?;
    }
    for a in 1..=3 {
        let ca = Carrier::points(a).unwrap();
        let filters = enumerate_filters(ca).unwrap();
        for b in 1..=3 {
            for f in all_maps(a, b) {
                for cn in 1..=3 {
                    for g in all_maps(b, cn) {
                        let gf = f.then(&g).unwrap();
                        for phi in &filters {
                            let lhs = filter_image(&gf, phi).unwrap();
                            let rhs = filter_image(&g, &filter_image(&f, phi).unwrap()).unwrap();
                            c.check(lhs == rhs, || format!("functoriality fails for {f:?}, {g:?}, {phi:?}"))?;
                        }
                    }
                }
            }
        }
    }
    for len in 1..=max_carrier.max(5) {
        for phi in enumerate_filters(Carrier::points(len).unwrap()).unwrap() {
            c.check(phi.is_ultrafilter_by_complements() == Some(phi.is_ultrafilter()), || format!("ultrafilter tests disagree on {phi:?}"))?;
            c.check(phi.is_countably_complete(), || format!("{phi:?} not countably complete"))?;
        }
    }
    for s in spaces_up_to(3) {
        let carrier = Carrier::points(s.n()).unwrap();
        let filters = enumerate_filters(carrier).unwrap();
        for x in 0..s.n() {
            let nf = neighborhood_filter(&s, x).unwrap();
            c.check(nf.kernel_bits() == Some(s.minimal_open_nbhd(x)), || format!("neighbourhood filter at {x} in {s:?}"))?;
            // all neighbourhoods, not only open ones, generate the same filter
            let all_nbhds: Vec<Vec<u32>> = subsets(s.n())
                .filter(|&v| s.opens().iter().any(|o| o.contains(x) && o.is_subset(v)))
                .map(|v| v.iter().map(|p| p as u32).collect())
                .collect();
            c.check(filter_from_sets(carrier, &all_nbhds).unwrap() == nf, || format!("neighbourhood filters differ at {x}"))?;
            for phi in &filters {
                if converges(&s, phi, x) {
                    for psi in filters.iter().filter(|psi| psi.refines(phi)) {
                        c.check(converges(&s, psi, x), || format!("convergence not monotone: {phi:?} ⊆ {psi:?}"))?;
                    }
                }
            }
        }
    }
    Ok(c.0)
}

// ----------------------------------------------------------- hyperspaces

pub fn hyperspace(max_n: usize) -> Checks {
    let mut c = Counter(0);
    for n in 1..=max_n {
        let p0 = SetFamily::nonempty_subsets(n);
        let families: Vec<SetFamily> = if n <= 2 {
            (1u64..1 << p0.len()).map(|m| p0.restrict(SubsetBits(m))).collect()
        } else {
            vec![p0.clone()]
        };
        for fam in &families {
            for m in subsets(n) {
                let h = hit(fam, m);
                let ms = miss(fam, m);
                let union: SetFamily = h.iter().chain(ms.iter()).collect();
                c.check(union == *fam && h.len() + ms.len() == fam.len(), || format!("hit/miss partition at {m:?}"))?;
                for m2 in subsets(n).filter(|&m2| m.is_subset(m2)) {
                    c.check(
                        h.is_subfamily(&hit(fam, m2)) && miss(fam, m2).is_subfamily(&ms),
                        || format!("hit/miss monotonicity at {m:?} ⊆ {m2:?}"),
                    )?;
                }
            }
        }
    }
    for s in spaces_up_to(max_n) {
        let n = s.n();
        let om = masks(&s);
        let mut families = vec![SetFamily::nonempty_subsets(n), compacts(&s), closeds(&s)];
        if n == 3 {
            // every subfamily of P⁰ with at most four members
            let p0 = SetFamily::nonempty_subsets(3);
            families.extend(
                (1u64..1 << 7)
                    .filter(|m| m.count_ones() <= 4)
                    .map(|m| p0.restrict(SubsetBits(m))),
            );
        }
        for fam in &families {
            let fm = family_masks(fam);
            let l = lower_vietoris(&s, fam).unwrap();
            let u = upper_vietoris(&s, fam).unwrap();
            let v = vietoris(&s, fam).unwrap();
            let (lt, ut, vt) = (l.topology(), u.topology(), v.topology());
            c.check(vt.is_finer_than(lt) && vt.is_finer_than(ut), || format!("Vietoris not finer on {fam:?} over {s:?}"))?;
            c.check(masks(lt) == oracle::generate(fam.len(), &oracle::lower_subbase(&fm, &om)), || "lower Vietoris differs from oracle".into())?;
            c.check(masks(vt) == oracle::generate(fam.len(), &oracle::vietoris_subbase(&fm, &om)), || "Vietoris differs from oracle".into())?;
            if fam.len() <= 4 {
                let smallest = oracle::smallest_containing(fam.len(), &[&masks(lt), &masks(ut)]);
                c.check(masks(vt) == smallest, || format!("Vietoris not the smallest join on {fam:?} over {s:?}"))?;
            }
        }
        vietoris_bases(&mut c, &s)?;
        let p0 = SetFamily::nonempty_subsets(n);
        let carrier = Carrier::subsets(p0.len()).unwrap();
        for phi in enumerate_filters(carrier).unwrap() {
            let limits = lower_limits(&s, &p0, &phi).unwrap();
            for b in limits.iter() {
                for a in b.submasks().skip(1) {
                    c.check(limits.contains(a), || format!("lower limits of {phi:?} not downward closed in {s:?}"))?;
                }
            }
        }
    }
    for n in 1..=max_n.max(4) {
        let d = FiniteSpace::discrete(n);
        let v = vietoris(&d, &compacts(&d)).unwrap();
        c.check(*v.topology() == FiniteSpace::discrete(v.family().len()), || format!("Vietoris over discrete({n}) not discrete"))?;
    }
    Ok(c.0)
}

fn vietoris_bases(c: &mut Counter, s: &FiniteSpace) -> Result<(), String> {
    let fam = SetFamily::nonempty_subsets(s.n());
    let v = vietoris(s, &fam).unwrap();
    let opens: Vec<SubsetBits> = s.opens().iter().collect();
    let mut basics: BTreeSet<SubsetBits> = BTreeSet::new();
    let mut covers: Vec<Vec<SubsetBits>> = vec![vec![]];
    for _ in 0..s.n() {
        covers = covers
            .into_iter()
            .flat_map(|cv| {
                let start = cv.last().map_or(0, |last| opens.iter().position(|o| o == last).unwrap());
                let opens = &opens;
                (start..opens.len()).map(move |i| {
                    let mut next = cv.clone();
                    next.push(opens[i]);
                    next
                })
            })
            .collect();
        for cv in &covers {
            let b = vietoris_basic(s, &fam, cv).unwrap();
            let union = cv.iter().fold(SubsetBits::EMPTY, |acc, &u| acc | u);
            let expected = cv
                .iter()
                .fold(miss(&fam, union.complement(s.n())), |acc, &u| {
                    let h = hit(&fam, u);
                    acc.iter().filter(|&a| h.contains(a)).collect()
                });
            c.check(b == expected, || format!("basic set {cv:?} in {s:?}"))?;
            let idx = v.indices_of(&b).unwrap();
            c.check(v.topology().is_open(idx), || format!("basic set {cv:?} not open in {s:?}"))?;
            basics.insert(idx);
        }
    }
    for u in v.topology().opens().iter() {
        let covered = basics.iter().filter(|b| b.is_subset(u)).fold(SubsetBits::EMPTY, |acc, &b| acc | b);
        c.check(covered == u, || format!("Vietoris open {u:?} is not a union of basic sets in {s:?}"))?;
    }
    Ok(())
}

// -------------------------------------------------------- function spaces

pub fn function_space(max_n: usize) -> Checks {
    let mut c = Counter(0);
    let small = spaces_up_to(max_n.min(2));
    for x in &small {
        for y in spaces_up_to(max_n.min(3)).iter().filter(|y| y.n() <= 3 && x.n() * y.n() <= 6) {
            let all = carrier_maps(x, y, CarrierChoice::All).unwrap();
            let cont = continuous_maps(x, y).unwrap();
            let expected: Vec<Vec<usize>> = oracle::all_maps(x.n(), y.n())
                .into_iter()
                .filter(|f| oracle::is_continuous(&masks(x), &masks(y), f))
                .collect();
            c.check(cont.iter().map(image_vec).collect::<Vec<_>>() == expected, || format!("C({x:?},{y:?})"))?;
            let kx = compacts(x);
            let fs_all = set_open_topology(x, y, all.clone(), &kx).unwrap();
            for a in subsets(x.n()) {
                for a2 in subsets(x.n()).filter(|&a2| a.is_subset(a2)) {
                    for w in y.opens().iter() {
                        let big: BTreeSet<u32> = fs_all.subbasic(a, w).into_iter().collect();
                        c.check(fs_all.subbasic(a2, w).iter().all(|i| big.contains(i)), || "(A, W) not antitone in A".into())?;
                        for w2 in y.opens().iter().filter(|&w2| w.is_subset(w2)) {
                            let wider: BTreeSet<u32> = fs_all.subbasic(a, w2).into_iter().collect();
                            c.check(big.is_subset(&wider), || "(A, W) not monotone in W".into())?;
                        }
                    }
                }
            }
            for carrier in [all.clone(), cont.clone()] {
                let co = set_open_topology(x, y, carrier.clone(), &kx).unwrap();
                let co_t = co.materialize().unwrap();
                let fvec: Vec<Vec<usize>> = carrier.iter().map(image_vec).collect();
                c.check(
                    masks(&co_t) == oracle::set_open(&fvec, &family_masks(&kx), &masks(y)),
                    || format!("compact-open on {x:?} → {y:?} differs from oracle"),
                )?;
                for u in subsets(co.len()) {
                    c.check(co.is_open_where(&|i| u.contains(i)) == co_t.is_open(u), || "strategies disagree".into())?;
                }
                for m in 0u64..1 << kx.len() {
                    let sub = kx.restrict(SubsetBits(m));
                    let t = set_open_topology(x, y, carrier.clone(), &sub).unwrap().materialize().unwrap();
                    c.check(co_t.is_finer_than(&t), || format!("compact-open not finer than set-open for {sub:?}"))?;
                }
                let target = vietoris(y, &compacts(y)).unwrap();
                let r = mu_embedding_report(&co, &target).unwrap();
                c.check(
                    r.is_embedding() == oracle::is_mu_embedding(&fvec, &family_masks(&kx), y.n(), &masks(y)),
                    || format!("embedding report {r:?} disagrees with oracle on {x:?} → {y:?}"),
                )?;
            }
        }
    }
    let corpus = spaces_up_to(max_n);
    for x in &corpus {
        for y in &corpus {
            let fs = compact_open(x, y, CarrierChoice::Continuous).unwrap();
            let target = vietoris(y, &compacts(y)).unwrap();
            let r = mu_embedding_report(&fs, &target).unwrap();
            c.check(r.is_embedding() && r.family_has_singletons, || format!("μ not an embedding for {x:?} → {y:?}: {r:?}"))?;
            let p0y = vietoris(y, &SetFamily::nonempty_subsets(y.n())).unwrap();
            c.check(mu_embedding_report(&fs, &p0y).unwrap().is_embedding(), || "μ into P⁰(Y) not an embedding".into())?;
            for a in compacts(x).iter() {
                let pre = check_projection_preimages(&fs, a).unwrap();
                c.check(pre.failures.is_empty(), || format!("preimage identities fail for {a:?}, {x:?} → {y:?}: {:?}", pre.failures))?;
            }
        }
    }
    Ok(c.0)
}

// --------------------------------------------------------------- finality

pub fn finality(max_n: usize) -> Checks {
    let mut c = Counter(0);
    let small = spaces_up_to(max_n.min(2));
    for x in &small {
        for y in &small {
            let fs = compact_open(x, y, CarrierChoice::Continuous).unwrap();
            let fvec: Vec<Vec<usize>> = fs.functions().iter().map(image_vec).collect();
            let co = oracle::set_open(&fvec, &family_masks(&compacts(x)), &masks(y));
            let ky = compacts(y);
            let kx: Vec<SubsetBits> = compacts(x).iter().collect();
            let mut previous: Option<FiniteSpace> = None;
            for (i, &a) in kx.iter().enumerate() {
                let single = final_over_projections(y, &[Source::new(x.clone(), a)], Strategy::Neighbourhood).unwrap();
                let proj: Vec<usize> = fvec
                    .iter()
                    .map(|f| ky.index_of(SubsetBits(oracle::image(f, a.bits()))).unwrap())
                    .collect();
                let expected = oracle::finest_final(ky.len(), &[(co.clone(), proj)]);
                c.check(masks(single.computed()) == expected, || format!("final topology for {a:?}, {x:?} → {y:?}"))?;
                let materialized = final_over_projections(y, &[Source::new(x.clone(), a)], Strategy::Materialize).unwrap();
                c.check(materialized.computed() == single.computed(), || "strategies disagree on final topology".into())?;
                c.check(check_vietoris_contained(&single).contained(), || format!("Vietoris not contained for {a:?}"))?;
                // adding sources only removes opens
                let sources: Vec<Source> = kx[..=i].iter().map(|&b| Source::new(x.clone(), b)).collect();
                let cumulative = final_over_projections(y, &sources, Strategy::Auto).unwrap();
                c.check(single.computed().is_finer_than(cumulative.computed()), || "extra source refined the topology".into())?;
                if let Some(prev) = &previous {
                    c.check(prev.is_finer_than(cumulative.computed()), || "final topology not monotone in sources".into())?;
                }
                previous = Some(cumulative.computed().clone());
            }
        }
    }
    let corpus = spaces_up_to(max_n);
    for x in &corpus {
        for y in &corpus {
            for a in compacts(x).iter() {
                let setup = final_over_projections(y, &[Source::new(x.clone(), a)], Strategy::Auto).unwrap();
                c.check(check_vietoris_contained(&setup).contained(), || format!("Vietoris not contained: {a:?}, {x:?} → {y:?}"))?;
            }
        }
    }
    for y_n in 1..=max_n.min(3) {
        let r = check_finality_discrete_square(y_n, SourceCap::default_for(y_n)).unwrap();
        c.check(r.passed(), || format!("discrete square {y_n}: {r:?}"))?;
    }
    for d in 1..=4 {
        let r = stone_cech_finite_discrete(d).unwrap();
        c.check(r.passed() && r.ultrafilters == d, || format!("Stone-Čech {d}: {r:?}"))?;
    }
    Ok(c.0)
}

// ---------------------------------------------------------------- choice

pub fn choice(max_n: usize) -> Checks {
    let mut c = Counter(0);
    for n in 1..=max_n.min(4) {
        let lab = ChoiceLab::new(n).unwrap();
        let expected: usize = lab.family().iter().map(|a| a.len()).product();
        c.check(lab.functions().len() == expected, || format!("{n} points: {} choice functions", lab.functions().len()))?;
        for f in lab.functions() {
            c.check(lab.family().iter().enumerate().all(|(i, a)| a.contains(f.apply(i))), || format!("{f:?} is not a choice function"))?;
        }
    }
    for n in 1..=max_n.min(3) {
        let lab = ChoiceLab::new(n).unwrap();
        let filters = enumerate_filters(lab.carrier()).unwrap();
        for f in lab.functions() {
            for phi in &filters {
                let img = phi.image(f, CarrierKind::Points).unwrap();
                let expected: SubsetBits = phi.kernel().iter().map(|&a| f.apply(a as usize)).collect();
                c.check(img.kernel_bits() == Some(expected), || format!("image of {phi:?} under {f:?}"))?;
            }
        }
        for s in enumerate_topologies(n).unwrap() {
            let ctx = lab.on(&s).unwrap();
            for phi in lab.ultrafilters() {
                let h0 = lab.family().get(phi.kernel()[0] as usize);
                let p = ctx.limit_set(&phi).unwrap();
                c.check(p == s.closure(h0), || format!("limit set of ε({h0:?}) in {s:?}"))?;
                let sample = FilterSample::default_for(n);
                let q = ctx.filterwise_limit_set(&phi, sample).unwrap();
                c.check(p.is_subset(q), || "filterwise limit set misses pointwise limits".into())?;
                // single-function filters evaluated directly stay inside it
                let fcarrier = Carrier::new(CarrierKind::ChoiceFunctions, lab.functions().len()).unwrap();
                let mut direct = SubsetBits::EMPTY;
                for i in 0..lab.functions().len().min(4) {
                    let ff = singleton_filter(fcarrier, i).unwrap();
                    let img = function_filter_apply(lab.functions(), &ff, &phi).unwrap();
                    direct = direct | (0..n).filter(|&x| converges(&s, &img, x)).collect();
                }
                c.check(direct.is_subset(q), || "direct filter evaluation outside filterwise set".into())?;
                let o = ctx.check_lower_convergence_lemma(&phi).unwrap();
                c.check(o.holds, || format!("lower convergence fails for {phi:?} in {s:?}"))?;
                for a in lab.family().iter() {
                    let b = ctx.check_locally_compact_bound(&phi, a).unwrap();
                    c.check(b.holds && b.precondition, || format!("bound fails for {a:?}, {phi:?} in {s:?}"))?;
                    let r = ctx.check_filterwise_refinement(&phi, a, sample).unwrap();
                    c.check(r.holds && r.precondition, || format!("refinement fails for {a:?}, {phi:?} in {s:?}"))?;
                }
            }
        }
        let r = lab.classify_property_a().unwrap();
        c.check(r.passed() && r.with_property_a == r.singleton_filters, || format!("property (A) classification on {n}: {r:?}"))?;
    }
    Ok(c.0)
}
