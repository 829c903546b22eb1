//! Test corpora. Every corpus ideal is full-supported with gcd 1.

use std::collections::HashSet;

use crate::error::Result;
use crate::families::{
    almost_squarefree_veronese, enumerate_matroidal, enumerate_polymatroidal, squarefree_veronese,
    veronese_type, EnumerationMode, VeroneseSpec, EXHAUSTIVE_LIMIT,
};
use crate::format::parse_ideal;
use crate::monomial::MonomialIdeal;

#[derive(Clone, Debug)]
pub(crate) struct Instance {
    /// Where the ideal came from, e.g. `matroidal n=6 d=3 exhaustive`.
    pub source: String,
    pub ideal: MonomialIdeal,
}

impl Instance {
    pub fn new(source: String, ideal: MonomialIdeal) -> Self {
        Instance { source, ideal }
    }
}

/// The twelve quadrics in `x, y, z, u, v, w = x1..x6` whose linear relation
/// graph is connected but whose localizations are all primes.
pub fn quadratic_counterexample() -> MonomialIdeal {
    parse_ideal(
        "ring 6\n\
         x1*x3, x1*x4, x1*x5, x1*x6, x2*x3, x2*x4, x2*x5, x2*x6, x3*x5, x3*x6, x4*x5, x4*x6\n",
    )
    .expect("fixed ideal parses")
}

/// A cubic polymatroidal ideal in four variables with the maximal ideal
/// already associated to `I`, where `dstab = 1` but `astab = 2`.
pub fn cubic_counterexample() -> MonomialIdeal {
    parse_ideal(
        "ring 4\n\
         x1*x2*x3, x2^2*x3, x2*x3^2, x1*x2*x4, x2^2*x4, x2*x4^2, x1*x3*x4, x3^2*x4, x3*x4^2, x2*x3*x4\n",
    )
    .expect("fixed ideal parses")
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn push_unique(out: &mut Vec<Instance>, seen: &mut HashSet<MonomialIdeal>, inst: Instance) {
    if seen.insert(inst.ideal.clone()) {
        out.push(inst);
    }
}

/// Every matroidal ideal with at most 20 candidate generators (`n <= 6`),
/// square-free quadrics on 7 variables, and `count` seeded cubics on 7 variables.
pub(crate) fn matroidal(seed: u64, count: usize) -> Result<Vec<Instance>> {
    let mut out = Vec::new();
    let mut seen = HashSet::new();
    for n in 2..=6 {
        for d in 1..n {
            if binomial(n, d) > EXHAUSTIVE_LIMIT {
                continue;
            }
            for ideal in enumerate_matroidal(n, d as u32, EnumerationMode::Exhaustive)? {
                let source = format!("matroidal n={n} d={d} exhaustive");
                push_unique(&mut out, &mut seen, Instance::new(source, ideal));
            }
        }
    }
    let random = [(2, count / 4, seed.wrapping_add(2)), (3, count, seed)];
    for (d, k, s) in random {
        for ideal in enumerate_matroidal(7, d, EnumerationMode::Random { seed: s, count: k })? {
            let source = format!("matroidal n=7 d={d} random seed={s}");
            push_unique(&mut out, &mut seen, Instance::new(source, ideal));
        }
    }
    Ok(out)
}

/// Exhaustive polymatroidal ideals of degrees 2 and 3 on few variables,
/// seeded random ones on 5 and 6 variables, and normalized Veronese types.
pub(crate) fn polymatroidal(seed: u64, count: usize) -> Result<Vec<Instance>> {
    let mut out = Vec::new();
    let mut seen = HashSet::new();
    for (n, d) in [(2, 2), (3, 2), (4, 2), (5, 2), (2, 3), (3, 3), (4, 3)] {
        for ideal in enumerate_polymatroidal(n, d, EnumerationMode::Exhaustive)? {
            let source = format!("polymatroidal n={n} d={d} exhaustive");
            push_unique(&mut out, &mut seen, Instance::new(source, ideal));
        }
    }
    let k = count / 2;
    for (n, d, s) in [(5, 3, seed.wrapping_add(3)), (6, 2, seed.wrapping_add(4))] {
        for ideal in enumerate_polymatroidal(n, d, EnumerationMode::Random { seed: s, count: k })? {
            let source = format!("polymatroidal n={n} d={d} random seed={s}");
            push_unique(&mut out, &mut seen, Instance::new(source, ideal));
        }
    }
    for n in 2..=5usize {
        for d in 2..=3u32 {
            for caps in ascending_caps(n, d) {
                let spec = VeroneseSpec::new(n, d, caps.clone())?;
                let Ok(norm) = veronese_type(&spec)?.normalize() else {
                    continue;
                };
                let source = format!("veronese type n={n} d={d} caps={caps:?}");
                push_unique(&mut out, &mut seen, Instance::new(source, norm.ideal));
            }
        }
    }
    push_unique(
        &mut out,
        &mut seen,
        Instance::new("fixed cubic".into(), cubic_counterexample()),
    );
    Ok(out)
}

fn ascending_caps(n: usize, d: u32) -> Vec<Vec<u32>> {
    fn go(n: usize, d: u32, lo: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == n {
            if cur.iter().sum::<u32>() >= d {
                out.push(cur.clone());
            }
            return;
        }
        for a in lo..=d {
            cur.push(a);
            go(n, d, a, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, d, 1, &mut Vec::new(), &mut out);
    out
}

/// Square-free Veronese ideals with at most one generator removed, for
/// `3 <= n <= 6` and `2 <= d < n`, keeping those with gcd 1.
pub(crate) fn almost_veronese() -> Result<Vec<Instance>> {
    let mut out = Vec::new();
    for n in 3..=6usize {
        for d in 2..n as u32 {
            let full = squarefree_veronese(n, d)?;
            let omissions = std::iter::once(None).chain(full.generators().iter().map(Some));
            for omit in omissions {
                let ideal = almost_squarefree_veronese(n, d, omit)?;
                let info = ideal.support_and_gcd()?;
                if !(info.full_supported && info.gcd.is_one()) {
                    continue;
                }
                let source = match omit {
                    Some(u) => format!("almost square-free veronese n={n} d={d} omit {u}"),
                    None => format!("square-free veronese n={n} d={d}"),
                };
                out.push(Instance::new(source, ideal));
            }
        }
    }
    Ok(out)
}

/// Union of two corpora, first occurrence wins.
pub(crate) fn union(a: &[Instance], b: &[Instance]) -> Vec<Instance> {
    let mut out = Vec::new();
    let mut seen = HashSet::new();
    for inst in a.iter().chain(b) {
        push_unique(&mut out, &mut seen, inst.clone());
    }
    out
}
