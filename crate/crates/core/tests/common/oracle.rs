//! Brute-force reference implementations. They work on raw `u64` masks and
//! follow the textbook definitions literally, sharing no code with the
//! library beyond the types used to hand results back.

use std::collections::BTreeSet;
use std::sync::OnceLock;

pub fn full(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

pub fn points(mask: u64) -> impl Iterator<Item = usize> {
    (0..64).filter(move |&i| mask >> i & 1 == 1)
}

/// Contains ∅ and the full set, closed under pairwise ∪ and ∩.
pub fn is_topology(n: usize, opens: &[u64]) -> bool {
    let set: BTreeSet<u64> = opens.iter().copied().collect();
    set.contains(&0)
        && set.contains(&full(n))
        && set
            .iter()
            .all(|&a| set.iter().all(|&b| set.contains(&(a | b)) && set.contains(&(a & b))))
}

/// Every topology on `n` points, found by scanning all families of
/// non-trivial subsets. Each topology is returned as its sorted opens.
pub fn all_topologies(n: usize) -> Vec<Vec<u64>> {
    let middle: Vec<u64> = (1..full(n)).collect();
    let mut out = Vec::new();
    for choice in 0u64..(1u64 << middle.len()) {
        let mut opens = vec![0, full(n)];
        opens.extend(points(choice).map(|i| middle[i]));
        opens.sort_unstable();
        opens.dedup();
        if is_topology(n, &opens) {
            out.push(opens);
        }
    }
    out.sort();
    out
}

/// Closure of `{∅, X} ∪ subbase` under pairwise unions and intersections,
/// iterated to a fixpoint.
pub fn generate(n: usize, subbase: &[u64]) -> Vec<u64> {
    let mut set: BTreeSet<u64> = subbase.iter().copied().collect();
    set.insert(0);
    set.insert(full(n));
    loop {
        let current: Vec<u64> = set.iter().copied().collect();
        let before = set.len();
        for &a in &current {
            for &b in &current {
                set.insert(a | b);
                set.insert(a & b);
            }
        }
        if set.len() == before {
            return set.into_iter().collect();
        }
    }
}

/// Intersection of all closed supersets.
pub fn closure(n: usize, opens: &[u64], a: u64) -> u64 {
    opens
        .iter()
        .map(|&o| full(n) & !o)
        .filter(|&c| a & !c == 0)
        .fold(full(n), |acc, c| acc & c)
}

/// Union of all open subsets.
pub fn interior(opens: &[u64], a: u64) -> u64 {
    opens.iter().filter(|&&o| o & !a == 0).fold(0, |acc, &o| acc | o)
}

pub fn preimage(map: &[usize], u: u64) -> u64 {
    map.iter()
        .enumerate()
        .filter(|&(_, &y)| u >> y & 1 == 1)
        .fold(0, |acc, (x, _)| acc | 1 << x)
}

pub fn image(map: &[usize], a: u64) -> u64 {
    points(a).fold(0, |acc, x| acc | 1 << map[x])
}

/// All `U` whose preimage under every `(source opens, map)` is open.
pub fn finest_final(target_n: usize, maps: &[(Vec<u64>, Vec<usize>)]) -> Vec<u64> {
    (0..=full(target_n))
        .filter(|&u| maps.iter().all(|(opens, f)| opens.contains(&preimage(f, u))))
        .collect()
}

pub fn is_continuous(dom_opens: &[u64], cod_opens: &[u64], f: &[usize]) -> bool {
    cod_opens.iter().all(|&o| dom_opens.contains(&preimage(f, o)))
}

/// All maps `dom_n → cod_n` as value vectors.
pub fn all_maps(dom_n: usize, cod_n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..dom_n {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..cod_n).map(move |y| {
                    let mut w = v.clone();
                    w.push(y);
                    w
                })
            })
            .collect();
    }
    out
}

/// The set-open topology on `functions` (as function-index masks) with
/// subbase `(A, W) = {f : f(A) ⊆ W}`.
pub fn set_open(functions: &[Vec<usize>], family: &[u64], cod_opens: &[u64]) -> Vec<u64> {
    let mut subbase = Vec::new();
    for &a in family {
        for &w in cod_opens {
            let s = functions
                .iter()
                .enumerate()
                .filter(|(_, f)| image(f, a) & !w == 0)
                .fold(0u64, |acc, (i, _)| acc | 1 << i);
            subbase.push(s);
        }
    }
    generate(functions.len(), &subbase)
}

/// Hit sets `{B : B ∩ O ≠ ∅}` and miss sets `{B : B ⊆ O}` for open `O`,
/// as masks over positions in `family`.
pub fn vietoris_subbase(family: &[u64], opens: &[u64]) -> Vec<u64> {
    let select = |pred: &dyn Fn(u64) -> bool| -> u64 {
        family
            .iter()
            .enumerate()
            .filter(|&(_, &b)| pred(b))
            .fold(0, |acc, (i, _)| acc | 1 << i)
    };
    let mut out = Vec::new();
    for &o in opens {
        out.push(select(&|b| b & o != 0));
        out.push(select(&|b| b & !o == 0));
    }
    out
}

pub fn lower_subbase(family: &[u64], opens: &[u64]) -> Vec<u64> {
    opens
        .iter()
        .map(|&o| {
            family
                .iter()
                .enumerate()
                .filter(|&(_, &b)| b & o != 0)
                .fold(0, |acc, (i, _)| acc | 1 << i)
        })
        .collect()
}

/// Whether `f ↦ (A ↦ f(A))` is a topological embedding of the set-open
/// space on `functions` into the product of Vietoris hyperspaces: the
/// topology must equal the one pulled back from the product subbase, and
/// the map must be injective.
pub fn is_mu_embedding(functions: &[Vec<usize>], family: &[u64], cod_n: usize, cod_opens: &[u64]) -> bool {
    let own = set_open(functions, family, cod_opens);
    let targets: Vec<u64> = (1..=full(cod_n)).collect();
    let tuples: Vec<Vec<u64>> = functions
        .iter()
        .map(|f| family.iter().map(|&a| image(f, a)).collect())
        .collect();
    let injective = tuples.iter().collect::<BTreeSet<_>>().len() == tuples.len();
    let mut pulled = Vec::new();
    for (k, _) in family.iter().enumerate() {
        for v in vietoris_subbase(&targets, cod_opens) {
            let s = tuples
                .iter()
                .enumerate()
                .filter(|(_, t)| {
                    let pos = targets.iter().position(|&b| b == t[k]).unwrap();
                    v >> pos & 1 == 1
                })
                .fold(0u64, |acc, (i, _)| acc | 1 << i);
            pulled.push(s);
        }
    }
    injective && generate(functions.len(), &pulled) == own
}

/// Smallest topology containing every listed family: the intersection of
/// all topologies on `n` points that contain them.
pub fn smallest_containing(n: usize, families: &[&[u64]]) -> Vec<u64> {
    static CACHE: [OnceLock<Vec<Vec<u64>>>; 5] = [const { OnceLock::new() }; 5];
    assert!(n < CACHE.len(), "brute-force scan limited to 4 points");
    let needed: BTreeSet<u64> = families.iter().flat_map(|f| f.iter().copied()).collect();
    CACHE[n]
        .get_or_init(|| all_topologies(n))
        .iter()
        .filter(|t| needed.iter().all(|u| t.contains(u)))
        .fold(None::<BTreeSet<u64>>, |acc, t| {
            let t: BTreeSet<u64> = t.iter().copied().collect();
            Some(match acc {
                None => t,
                Some(a) => a.intersection(&t).copied().collect(),
            })
        })
        .map(|s| s.into_iter().collect())
        .unwrap_or_default()
}
