//! Corpora and brute-force oracles shared by the integration tests.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet};

use polymat::families::{
    enumerate_matroidal, enumerate_polymatroidal, veronese_type, EnumerationMode, VeroneseSpec,
};
use polymat::{parse_ideal, Monomial, MonomialIdeal};

pub const SEED: u64 = 20_240_611;

pub const QUADRICS: &str = "ring 6\n\
    x1*x3, x1*x4, x1*x5, x1*x6, x2*x3, x2*x4, x2*x5, x2*x6, x3*x5, x3*x6, x4*x5, x4*x6\n";

pub const CUBICS: &str = "ring 4\n\
    x1*x2*x3, x2^2*x3, x2*x3^2, x1*x2*x4, x2^2*x4, x2*x4^2, x1*x3*x4, x3^2*x4, x3*x4^2, x2*x3*x4\n";

pub fn quadrics() -> MonomialIdeal {
    parse_ideal(QUADRICS).unwrap()
}

pub fn cubics() -> MonomialIdeal {
    parse_ideal(CUBICS).unwrap()
}

fn dedup(ideals: impl IntoIterator<Item = MonomialIdeal>) -> Vec<MonomialIdeal> {
    let mut seen = HashSet::new();
    ideals.into_iter().filter(|i| seen.insert(i.clone())).collect()
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Exhaustive matroidal ideals with at most 20 square-free candidates, plus
/// `random` seeded cubics on 7 variables.
pub fn matroidal_corpus(random: usize) -> Vec<MonomialIdeal> {
    let mut out = Vec::new();
    for n in 2..=6usize {
        for d in 1..n {
            if binomial(n, d) <= 20 {
                out.extend(enumerate_matroidal(n, d as u32, EnumerationMode::Exhaustive).unwrap());
            }
        }
    }
    let mode = EnumerationMode::Random { seed: SEED, count: random };
    out.extend(enumerate_matroidal(7, 3, mode).unwrap());
    dedup(out)
}

/// Exhaustive polymatroidal ideals of degree 2 on up to 5 variables and degree
/// 3 on up to 4, seeded samples on 5 and 6 variables, Veronese types, and the
/// fixed cubic.
pub fn polymatroidal_corpus(random: usize) -> Vec<MonomialIdeal> {
    let mut out = Vec::new();
    for (n, d) in [(2, 2), (3, 2), (4, 2), (5, 2), (2, 3), (3, 3), (4, 3)] {
        out.extend(enumerate_polymatroidal(n, d, EnumerationMode::Exhaustive).unwrap());
    }
    for (n, d, s) in [(5, 3, SEED + 1), (6, 2, SEED + 2)] {
        let mode = EnumerationMode::Random { seed: s, count: random };
        out.extend(enumerate_polymatroidal(n, d, mode).unwrap());
    }
    for n in 2..=5usize {
        for d in 2..=3u32 {
            for caps in ascending_caps(n, d) {
                let ideal = veronese_type(&VeroneseSpec::new(n, d, caps).unwrap()).unwrap();
                if let Ok(norm) = ideal.normalize() {
                    out.push(norm.ideal);
                }
            }
        }
    }
    out.push(cubics());
    dedup(out)
}

pub fn ascending_caps(n: usize, d: u32) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|c: Vec<u32>| {
                let lo = c.last().copied().unwrap_or(1);
                (lo..=d).map(move |a| {
                    let mut c = c.clone();
                    c.push(a);
                    c
                })
            })
            .collect();
    }
    out.retain(|c| c.iter().sum::<u32>() >= d);
    out
}

/// `v ∈ I^k` by peeling one generator at a time.
pub fn in_power(gens: &[Monomial], v: &Monomial, k: u32) -> bool {
    if k == 0 {
        return true;
    }
    gens.iter()
        .filter(|g| g.divides(v))
        .any(|g| in_power(gens, &v.checked_div(g).unwrap(), k - 1))
}

/// Whether the square-free ideal is the product of primes on some partition of
/// its support into `d` blocks, by trying every set partition.
pub fn is_product_of_disjoint_primes(ideal: &MonomialIdeal, d: usize) -> bool {
    let n = ideal.n();
    let gens: BTreeSet<Vec<u32>> = ideal
        .generators()
        .iter()
        .map(|g| g.exponents().to_vec())
        .collect();
    if gens.iter().any(|g| g.iter().any(|&e| e > 1)) {
        return false;
    }
    let support: Vec<usize> = (0..n)
        .filter(|&v| gens.iter().any(|g| g[v] > 0))
        .collect();
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    partitions(&support, 0, d, &mut blocks, &mut |blocks| {
        let mut product = BTreeSet::new();
        let mut choice = vec![0u32; n];
        transversals(blocks, 0, &mut choice, &mut product);
        product == gens
    })
}

fn partitions(
    items: &[usize],
    i: usize,
    d: usize,
    blocks: &mut Vec<Vec<usize>>,
    test: &mut dyn FnMut(&[Vec<usize>]) -> bool,
) -> bool {
    if i == items.len() {
        return blocks.len() == d && test(blocks);
    }
    for b in 0..blocks.len() {
        blocks[b].push(items[i]);
        let found = partitions(items, i + 1, d, blocks, test);
        blocks[b].pop();
        if found {
            return true;
        }
    }
    if blocks.len() < d {
        blocks.push(vec![items[i]]);
        let found = partitions(items, i + 1, d, blocks, test);
        blocks.pop();
        if found {
            return true;
        }
    }
    false
}

fn transversals(blocks: &[Vec<usize>], i: usize, choice: &mut Vec<u32>, out: &mut BTreeSet<Vec<u32>>) {
    if i == blocks.len() {
        out.insert(choice.clone());
        return;
    }
    for &v in &blocks[i] {
        choice[v] += 1;
        transversals(blocks, i + 1, choice, out);
        choice[v] -= 1;
    }
}
