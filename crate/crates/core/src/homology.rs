//! Depth of `R/I` computed independently of linear quotients.
//!
//! Multigraded Betti numbers come from upper Koszul simplicial complexes:
//! `beta_{i,a}(I) = dim H~_{i-1}(K^a(I); Q)` where `K^a(I)` is the set of
//! square-free `tau <= a` with `x^{a - tau}` in `I`. Nonzero Betti numbers only
//! live at multidegrees in the lcm lattice. Auslander–Buchsbaum then gives
//! `depth R/I = n - pd(R/I)`.
//!
//! Ranks are computed exactly over the rationals by fraction-free elimination,
//! so results are those of characteristic zero.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::monomial::{canonical_cmp, Monomial, MonomialIdeal};

/// Guards on the oracle's work.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HomologyBudget {
    /// Maximum number of elements of the lcm lattice.
    pub lattice: usize,
    /// Maximum of `sum over lattice of 2^|supp a| * |G(I)|`.
    pub cost: u128,
}

impl Default for HomologyBudget {
    fn default() -> Self {
        HomologyBudget {
            lattice: 200_000,
            cost: 200_000_000,
        }
    }
}

/// All lcms of nonempty subsets of `G(I)`, in canonical order.
///
/// Computed as the closure of the generators under `lcm` with a generator,
/// which reaches every subset lcm without enumerating subsets.
pub fn lcm_lattice(ideal: &MonomialIdeal, max_size: usize) -> Result<Vec<Monomial>> {
    if ideal.is_zero() {
        return Err(Error::ZeroIdeal);
    }
    let gens = ideal.generators();
    let mut seen: HashSet<Monomial> = gens.iter().cloned().collect();
    let mut frontier: Vec<Monomial> = gens.to_vec();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for a in &frontier {
            for g in gens {
                let l = a.lcm(g);
                if !seen.contains(&l) {
                    seen.insert(l.clone());
                    next.push(l);
                }
            }
        }
        if seen.len() > max_size {
            return Err(Error::BudgetExceeded {
                what: "lcm lattice",
                cost: seen.len() as u128,
                limit: max_size as u128,
            });
        }
        frontier = next;
    }
    let mut out: Vec<Monomial> = seen.into_iter().collect();
    out.sort_by(canonical_cmp);
    Ok(out)
}

/// The upper Koszul simplicial complex of `I` at multidegree `a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UpperKoszulComplex {
    pub degree: Monomial,
    /// Faces as sorted variable lists, ordered by size then lexicographically.
    /// Includes the empty face when `x^a` is in `I`.
    pub faces: Vec<Vec<usize>>,
}

impl UpperKoszulComplex {
    pub fn new(ideal: &MonomialIdeal, degree: &Monomial) -> Self {
        let support = degree.support();
        let mut faces = Vec::new();
        let mut probe = degree.clone();
        for mask in 0u64..(1u64 << support.len()) {
            let face: Vec<usize> = support
                .iter()
                .enumerate()
                .filter(|(k, _)| mask >> k & 1 == 1)
                .map(|(_, &v)| v)
                .collect();
            for &v in &face {
                probe.exps_mut()[v] -= 1;
            }
            if ideal.contains(&probe) {
                faces.push(face.clone());
            }
            for &v in &face {
                probe.exps_mut()[v] += 1;
            }
        }
        faces.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        UpperKoszulComplex {
            degree: degree.clone(),
            faces,
        }
    }

    /// `dim H~_{k-1}` indexed by face size `k` (so entry 0 is `H~_{-1}`).
    pub fn reduced_homology_by_size(&self) -> Vec<usize> {
        let max = self.faces.last().map_or(0, Vec::len);
        let by_size: Vec<Vec<&Vec<usize>>> = (0..=max)
            .map(|k| self.faces.iter().filter(|f| f.len() == k).collect())
            .collect();
        // rank of the boundary from size k to size k-1
        let mut ranks = vec![0usize; max + 2];
        for k in 1..=max {
            let rows = &by_size[k - 1];
            let cols = &by_size[k];
            if rows.is_empty() || cols.is_empty() {
                continue;
            }
            let mut mat = vec![vec![0i128; cols.len()]; rows.len()];
            for (c, face) in cols.iter().enumerate() {
                for drop in 0..face.len() {
                    let mut sub = (*face).clone();
                    sub.remove(drop);
                    let r = rows
                        .binary_search_by(|f| f.as_slice().cmp(sub.as_slice()))
                        .expect("complex is closed under subsets");
                    mat[r][c] = if drop % 2 == 0 { 1 } else { -1 };
                }
            }
            ranks[k] = exact_rank(mat);
        }
        (0..=max)
            .map(|k| by_size[k].len() - ranks[k] - ranks[k + 1])
            .collect()
    }
}

/// Rank over the rationals; tries machine integers and falls back to big integers.
pub fn exact_rank(mat: Vec<Vec<i128>>) -> usize {
    match bareiss_rank_i128(mat.clone()) {
        Some(r) => r,
        None => bareiss_rank_big(
            mat.into_iter()
                .map(|row| row.into_iter().map(BigInt::from).collect())
                .collect(),
        ),
    }
}

/// Fraction-free elimination: every intermediate entry is a minor of the input,
/// so each division is exact.
fn bareiss_rank_i128(mut m: Vec<Vec<i128>>) -> Option<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut prev: i128 = 1;
    let mut rank = 0;
    for col in 0..cols {
        let Some(p) = (rank..rows).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(p, rank);
        for r in rank + 1..rows {
            for c in col + 1..cols {
                let t = m[r][c]
                    .checked_mul(m[rank][col])?
                    .checked_sub(m[r][col].checked_mul(m[rank][c])?)?;
                m[r][c] = t / prev;
            }
            m[r][col] = 0;
        }
        prev = m[rank][col];
        rank += 1;
        if rank == rows {
            break;
        }
    }
    Some(rank)
}

fn bareiss_rank_big(mut m: Vec<Vec<BigInt>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut rank = 0;
    for col in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(p, rank);
        for r in rank + 1..rows {
            for c in col + 1..cols {
                let t = &m[r][c] * &m[rank][col] - &m[r][col] * &m[rank][c];
                m[r][c] = t / &prev;
            }
            m[r][col] = BigInt::zero();
        }
        prev = m[rank][col].clone();
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiEntry {
    /// Homological index of `I` (generators are `i = 0`).
    pub i: usize,
    pub degree: Monomial,
    pub rank: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiTable {
    pub n: usize,
    /// Nonzero `beta_{i,a}(I)`, ordered by `i` then canonical multidegree.
    pub entries: Vec<BettiEntry>,
    /// Projective dimension of `R/I`.
    pub pd: usize,
    pub depth: usize,
}

impl BettiTable {
    pub fn to_json(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct EntryJson {
            i: usize,
            a: Vec<u32>,
            rank: usize,
        }
        #[derive(Serialize)]
        struct TableJson {
            pd: usize,
            depth: usize,
            betti: Vec<EntryJson>,
        }
        let json = TableJson {
            pd: self.pd,
            depth: self.depth,
            betti: self
                .entries
                .iter()
                .map(|e| EntryJson {
                    i: e.i,
                    a: e.degree.exponents().to_vec(),
                    rank: e.rank,
                })
                .collect(),
        };
        serde_json::to_value(json).expect("plain data serializes")
    }
}

pub fn betti_table(ideal: &MonomialIdeal, budget: &HomologyBudget) -> Result<BettiTable> {
    let lattice = lcm_lattice(ideal, budget.lattice)?;
    let cost: u128 = lattice
        .iter()
        .map(|a| (1u128 << a.support_len()) * ideal.len() as u128)
        .sum();
    if cost > budget.cost {
        return Err(Error::BudgetExceeded {
            what: "upper Koszul homology",
            cost,
            limit: budget.cost,
        });
    }
    let mut entries: Vec<BettiEntry> = lattice
        .par_iter()
        .flat_map_iter(|a| {
            let h = UpperKoszulComplex::new(ideal, a).reduced_homology_by_size();
            h.into_iter()
                .enumerate()
                .filter(|&(_, r)| r > 0)
                .map(|(i, rank)| BettiEntry {
                    i,
                    degree: a.clone(),
                    rank,
                })
                .collect::<Vec<_>>()
        })
        .collect();
    entries.sort_by(|x, y| x.i.cmp(&y.i).then_with(|| canonical_cmp(&x.degree, &y.degree)));
    let max_i = entries.iter().map(|e| e.i).max().unwrap_or(0);
    let pd = max_i + 1;
    Ok(BettiTable {
        n: ideal.n(),
        entries,
        pd,
        depth: ideal.n().saturating_sub(pd),
    })
}

/// `depth R/I = n - pd(R/I)` from the Betti table.
pub fn depth_oracle(ideal: &MonomialIdeal) -> Result<usize> {
    Ok(betti_table(ideal, &HomologyBudget::default())?.depth)
}
