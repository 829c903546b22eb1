//! Constructors for Veronese type ideals, square-free and almost square-free
//! Veronese ideals, products of primes on disjoint variable sets, and
//! enumerators of matroidal and polymatroidal ideals for test corpora.

use std::collections::{HashMap, HashSet};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::monomial::{minimalize, Monomial, MonomialIdeal, MonomialPrime};

/// Degree `d` and exponent caps `a_1 <= ... <= a_n` of a Veronese type ideal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VeroneseSpec {
    n: usize,
    d: u32,
    caps: Vec<u32>,
}

impl VeroneseSpec {
    pub fn new(n: usize, d: u32, caps: Vec<u32>) -> Result<Self> {
        if caps.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: caps.len(),
            });
        }
        if d == 0 {
            return Err(Error::InvalidArgument("degree must be positive".into()));
        }
        if caps.iter().any(|&a| a == 0 || a > d) {
            return Err(Error::InvalidArgument(format!(
                "caps must lie in 1..={d}, got {caps:?}"
            )));
        }
        if caps.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::InvalidArgument(format!(
                "caps must be ascending, got {caps:?}"
            )));
        }
        if caps.iter().map(|&a| a as u64).sum::<u64>() < d as u64 {
            return Err(Error::InvalidArgument(format!(
                "caps {caps:?} admit no monomial of degree {d}"
            )));
        }
        Ok(VeroneseSpec { n, d, caps })
    }

    /// All caps equal to one: the square-free Veronese ideal `I_{d;n}`.
    pub fn squarefree(n: usize, d: u32) -> Result<Self> {
        VeroneseSpec::new(n, d, vec![1; n])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn caps(&self) -> &[u32] {
        &self.caps
    }
}

/// Every monomial of degree `d` with `deg_{x_j} <= a_j`.
pub fn veronese_type(spec: &VeroneseSpec) -> Result<MonomialIdeal> {
    fn fill(caps: &[u32], left: u32, pos: usize, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if pos == caps.len() {
            if left == 0 {
                out.push(Monomial::new(cur.clone()));
            }
            return;
        }
        let room: u32 = caps[pos + 1..].iter().sum();
        let lo = left.saturating_sub(room);
        for e in lo..=caps[pos].min(left) {
            cur[pos] = e;
            fill(caps, left - e, pos + 1, cur, out);
        }
        cur[pos] = 0;
    }
    let mut out = Vec::new();
    fill(&spec.caps, spec.d, 0, &mut vec![0; spec.n], &mut out);
    minimalize(out, spec.n)
}

pub fn squarefree_veronese(n: usize, d: u32) -> Result<MonomialIdeal> {
    veronese_type(&VeroneseSpec::squarefree(n, d)?)
}

/// `G(I_{d;n})` with at most one generator removed.
pub fn almost_squarefree_veronese(
    n: usize,
    d: u32,
    omit: Option<&Monomial>,
) -> Result<MonomialIdeal> {
    let full = squarefree_veronese(n, d)?;
    let Some(omit) = omit else {
        return Ok(full);
    };
    if !full.generators().contains(omit) {
        return Err(Error::InvalidArgument(format!(
            "{omit} is not a generator of the square-free Veronese ideal of degree {d} in {n} variables"
        )));
    }
    if full.len() == 1 {
        return Err(Error::InvalidArgument(
            "omitting the only generator leaves the zero ideal".into(),
        ));
    }
    minimalize(full.generators().iter().filter(|g| *g != omit).cloned(), n)
}

/// `p_1 ... p_d` for primes on pairwise disjoint, nonempty variable sets.
pub fn product_of_primes(n: usize, parts: &[Vec<usize>]) -> Result<MonomialIdeal> {
    if parts.is_empty() {
        return Err(Error::InvalidArgument("no prime factors given".into()));
    }
    let mut seen = HashSet::new();
    for part in parts {
        if part.is_empty() {
            return Err(Error::InvalidArgument("empty prime factor".into()));
        }
        for &v in part {
            if v >= n {
                return Err(Error::InvalidArgument(format!(
                    "variable x{} outside ring of {n} variables",
                    v + 1
                )));
            }
            if !seen.insert(v) {
                return Err(Error::InvalidArgument(format!(
                    "prime factors overlap in x{}",
                    v + 1
                )));
            }
        }
    }
    let mut acc = MonomialPrime::new(parts[0].clone()).to_ideal(n)?;
    for part in &parts[1..] {
        acc = acc.multiply(&MonomialPrime::new(part.clone()).to_ideal(n)?)?;
    }
    Ok(acc)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EnumerationMode {
    /// Every generator subset; refused when the candidate set exceeds 20 monomials.
    Exhaustive,
    /// `count` distinct ideals from a seeded sampler.
    Random { seed: u64, count: usize },
}

/// Largest candidate set the exhaustive mode accepts.
pub const EXHAUSTIVE_LIMIT: usize = 20;

/// Degree-`d` monomials with precomputed exchange moves `a -> x_j a / x_i`.
struct ExchangeUniverse {
    n: usize,
    monos: Vec<Vec<u32>>,
    /// `moves[a][i * n + j]`: index of `x_j a / x_i` when it is a candidate.
    moves: Vec<Vec<Option<usize>>>,
}

impl ExchangeUniverse {
    fn new(n: usize, d: u32, squarefree: bool) -> Result<Self> {
        let caps = vec![if squarefree { 1 } else { d }; n];
        let spec = VeroneseSpec::new(n, d, caps)?;
        let monos: Vec<Vec<u32>> = veronese_type(&spec)?
            .generators()
            .iter()
            .map(|g| g.exponents().to_vec())
            .collect();
        let index: HashMap<&[u32], usize> =
            monos.iter().enumerate().map(|(k, m)| (m.as_slice(), k)).collect();
        let moves = monos
            .iter()
            .map(|a| {
                let mut row = vec![None; n * n];
                for i in 0..n {
                    if a[i] == 0 {
                        continue;
                    }
                    for j in 0..n {
                        if j == i {
                            continue;
                        }
                        let mut b = a.clone();
                        b[i] -= 1;
                        b[j] += 1;
                        row[i * n + j] = index.get(b.as_slice()).copied();
                    }
                }
                row
            })
            .collect();
        Ok(ExchangeUniverse { n, monos, moves })
    }

    fn len(&self) -> usize {
        self.monos.len()
    }

    /// First exchange violation `(a, b, i)` of the chosen set, if any.
    fn violation(&self, chosen: &[usize], member: impl Fn(usize) -> bool) -> Option<(usize, usize, usize)> {
        let n = self.n;
        for &a in chosen {
            let ea = &self.monos[a];
            for &b in chosen {
                if a == b {
                    continue;
                }
                let eb = &self.monos[b];
                for i in 0..n {
                    if ea[i] <= eb[i] {
                        continue;
                    }
                    let ok = (0..n).any(|j| {
                        ea[j] < eb[j] && self.moves[a][i * n + j].is_some_and(&member)
                    });
                    if !ok {
                        return Some((a, b, i));
                    }
                }
            }
        }
        None
    }

    /// Full support and gcd 1.
    fn normalized(&self, chosen: &[usize]) -> bool {
        (0..self.n).all(|v| {
            let present = chosen.iter().filter(|&&k| self.monos[k][v] > 0).count();
            present > 0 && chosen.iter().any(|&k| self.monos[k][v] == 0)
        })
    }

    fn ideal(&self, chosen: &[usize]) -> Result<MonomialIdeal> {
        minimalize(chosen.iter().map(|&k| Monomial::new(self.monos[k].clone())), self.n)
    }

    fn exhaustive(&self) -> Result<Vec<MonomialIdeal>> {
        let m = self.len();
        if m > EXHAUSTIVE_LIMIT {
            return Err(Error::BudgetExceeded {
                what: "exhaustive enumeration candidates",
                cost: m as u128,
                limit: EXHAUSTIVE_LIMIT as u128,
            });
        }
        let mut out = Vec::new();
        let mut chosen = Vec::with_capacity(m);
        for mask in 1u32..(1u32 << m) {
            chosen.clear();
            chosen.extend((0..m).filter(|&k| mask >> k & 1 == 1));
            if !self.normalized(&chosen) {
                continue;
            }
            if self.violation(&chosen, |k| mask >> k & 1 == 1).is_none() {
                out.push(self.ideal(&chosen)?);
            }
        }
        Ok(out)
    }

    /// Random start, then repeatedly add a generator forced by the first exchange
    /// violation until the set is exchange-closed.
    fn random(&self, seed: u64, count: usize) -> Result<Vec<MonomialIdeal>> {
        let m = self.len();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        let max_attempts = count.saturating_mul(200).max(1000);
        let mut all: Vec<usize> = (0..m).collect();
        for _ in 0..max_attempts {
            if out.len() == count {
                break;
            }
            let start = rng.gen_range(2..=m.clamp(2, 6));
            all.shuffle(&mut rng);
            let mut member = vec![false; m];
            let mut chosen: Vec<usize> = all[..start.min(m)].to_vec();
            for &k in &chosen {
                member[k] = true;
            }
            while let Some((a, b, i)) = self.violation(&chosen, |k| member[k]) {
                let (ea, eb) = (&self.monos[a], &self.monos[b]);
                let options: Vec<usize> = (0..self.n)
                    .filter(|&j| ea[j] < eb[j])
                    .filter_map(|j| self.moves[a][i * self.n + j])
                    .collect();
                let pick = *options
                    .choose(&mut rng)
                    .expect("the full candidate set is exchange-closed");
                member[pick] = true;
                chosen.push(pick);
            }
            chosen.sort_unstable();
            if self.normalized(&chosen) && seen.insert(chosen.clone()) {
                out.push(self.ideal(&chosen)?);
            }
        }
        Ok(out)
    }
}

fn enumerate(n: usize, d: u32, squarefree: bool, mode: EnumerationMode) -> Result<Vec<MonomialIdeal>> {
    if squarefree && d as usize > n {
        return Err(Error::InvalidArgument(format!(
            "no square-free monomials of degree {d} in {n} variables"
        )));
    }
    let universe = ExchangeUniverse::new(n, d, squarefree)?;
    match mode {
        EnumerationMode::Exhaustive => universe.exhaustive(),
        EnumerationMode::Random { seed, count } => universe.random(seed, count),
    }
}

/// Full-supported, gcd-1 matroidal ideals of degree `d` in `n` variables.
///
/// Random mode may return fewer than `count` ideals when the family is small.
pub fn enumerate_matroidal(n: usize, d: u32, mode: EnumerationMode) -> Result<Vec<MonomialIdeal>> {
    enumerate(n, d, true, mode)
}

/// Full-supported, gcd-1 polymatroidal ideals of degree `d` in `n` variables.
pub fn enumerate_polymatroidal(
    n: usize,
    d: u32,
    mode: EnumerationMode,
) -> Result<Vec<MonomialIdeal>> {
    enumerate(n, d, false, mode)
}
