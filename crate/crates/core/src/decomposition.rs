//! Associated primes of `R/I` for monomial ideals.
//!
//! Three independent routes: radicals of an irredundant irreducible
//! decomposition, a brute-force scan of colon ideals `I : u`, and for
//! polymatroidal ideals a test of depth zero after localizing at each prime.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::{Arc, Mutex};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::monomial::{minimalize, Monomial, MonomialIdeal, MonomialPrime};
use crate::structure::{is_polymatroidal, q_by_exchange};

/// Default cap on memoized sub-decompositions.
pub const DEFAULT_MEMO_LIMIT: usize = 100_000;

/// Default cap on the number of divisors of `lcm(G(I))` the colon oracle scans.
pub const DEFAULT_COLON_BUDGET: u128 = 1 << 20;

/// An irreducible monomial ideal `(x_i^{a_i} : i in bounds)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct IrreducibleComponent {
    bounds: Vec<(usize, u32)>,
}

impl IrreducibleComponent {
    pub fn new(mut bounds: Vec<(usize, u32)>) -> Self {
        bounds.sort_unstable();
        IrreducibleComponent { bounds }
    }

    pub fn bounds(&self) -> &[(usize, u32)] {
        &self.bounds
    }

    pub fn radical(&self) -> MonomialPrime {
        MonomialPrime::new(self.bounds.iter().map(|&(v, _)| v).collect())
    }

    fn bound(&self, var: usize) -> Option<u32> {
        self.bounds
            .binary_search_by_key(&var, |&(v, _)| v)
            .ok()
            .map(|k| self.bounds[k].1)
    }

    pub fn contains(&self, u: &Monomial) -> bool {
        self.bounds.iter().any(|&(v, a)| u.exponent(v) >= a)
    }

    pub fn is_subset_of(&self, other: &IrreducibleComponent) -> bool {
        self.bounds
            .iter()
            .all(|&(v, a)| other.bound(v).is_some_and(|b| b <= a))
    }

    pub fn to_ideal(&self, n: usize) -> Result<MonomialIdeal> {
        minimalize(
            self.bounds.iter().map(|&(v, a)| {
                let mut e = vec![0; n];
                e[v] = a;
                Monomial::new(e)
            }),
            n,
        )
    }
}

/// A set of associated primes, with membership of the maximal ideal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AssociatedPrimesSet {
    n: usize,
    primes: BTreeSet<MonomialPrime>,
}

impl AssociatedPrimesSet {
    pub fn new(n: usize, primes: impl IntoIterator<Item = MonomialPrime>) -> Self {
        AssociatedPrimesSet {
            n,
            primes: primes.into_iter().collect(),
        }
    }

    pub fn primes(&self) -> &BTreeSet<MonomialPrime> {
        &self.primes
    }

    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    pub fn contains(&self, p: &MonomialPrime) -> bool {
        self.primes.contains(p)
    }

    pub fn contains_maximal(&self) -> bool {
        self.primes.contains(&MonomialPrime::maximal(self.n))
    }

    pub fn is_subset_of(&self, other: &AssociatedPrimesSet) -> bool {
        self.primes.is_subset(&other.primes)
    }

    /// Primes as 1-based variable lists.
    pub fn to_lists(&self) -> Vec<Vec<usize>> {
        self.primes.iter().map(MonomialPrime::one_based).collect()
    }
}

impl std::fmt::Display for AssociatedPrimesSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{{")?;
        for (k, p) in self.primes.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "}}")
    }
}

type ComponentList = Arc<Vec<IrreducibleComponent>>;

/// Irreducible decomposition by splitting generators into coprime factors:
/// `J + (m1 m2) = (J + m1) ∩ (J + m2)` when `gcd(m1, m2) = 1`.
///
/// Sub-results are memoized by canonical ideal, so one decomposer can be shared
/// across the powers of a trace and across threads.
pub struct Decomposer {
    memo: Mutex<HashMap<MonomialIdeal, ComponentList>>,
    memo_limit: usize,
}

impl Default for Decomposer {
    fn default() -> Self {
        Decomposer::new(DEFAULT_MEMO_LIMIT)
    }
}

impl Decomposer {
    pub fn new(memo_limit: usize) -> Self {
        Decomposer {
            memo: Mutex::new(HashMap::new()),
            memo_limit,
        }
    }

    /// Irredundant irreducible decomposition, sorted.
    pub fn decompose(&self, ideal: &MonomialIdeal) -> Result<Vec<IrreducibleComponent>> {
        if ideal.is_zero() {
            return Err(Error::ZeroIdeal);
        }
        let all = self.expand(ideal)?;
        // Redundancy pruning after the full expansion: drop any component that
        // contains a different one.
        let mut kept: Vec<IrreducibleComponent> = all
            .iter()
            .filter(|c| !all.iter().any(|d| d != *c && d.is_subset_of(c)))
            .cloned()
            .collect();
        kept.sort();
        Ok(kept)
    }

    fn expand(&self, ideal: &MonomialIdeal) -> Result<ComponentList> {
        if let Some(hit) = self.memo.lock().expect("memo lock").get(ideal) {
            return Ok(hit.clone());
        }
        let n = ideal.n();
        let pivot = ideal.generators().iter().find(|g| g.support_len() >= 2);
        let result: ComponentList = match pivot {
            None => {
                let bounds = ideal
                    .generators()
                    .iter()
                    .map(|g| {
                        let v = g.support()[0];
                        (v, g.exponent(v))
                    })
                    .collect();
                Arc::new(vec![IrreducibleComponent::new(bounds)])
            }
            Some(g) => {
                let k = *g.support().last().expect("support has two variables");
                let mut power = Monomial::one(n);
                power.exps_mut()[k] = g.exponent(k);
                let rest = g.colon(&power);
                let with = |m: Monomial| {
                    minimalize(ideal.generators().iter().cloned().chain([m]), n)
                };
                let left = with(power)?;
                let right = with(rest)?;
                let (a, b) = if ideal.len() > 8 {
                    rayon::join(|| self.expand(&left), || self.expand(&right))
                } else {
                    (self.expand(&left), self.expand(&right))
                };
                let mut merged: BTreeSet<IrreducibleComponent> = a?.iter().cloned().collect();
                merged.extend(b?.iter().cloned());
                Arc::new(merged.into_iter().collect())
            }
        };
        let mut memo = self.memo.lock().expect("memo lock");
        if memo.len() < self.memo_limit {
            memo.insert(ideal.clone(), result.clone());
        }
        Ok(result)
    }
}

/// Irredundant irreducible decomposition with a fresh memo table.
pub fn irreducible_decomposition(ideal: &MonomialIdeal) -> Result<Vec<IrreducibleComponent>> {
    Decomposer::default().decompose(ideal)
}

/// Whether the components intersect to exactly `ideal`.
pub fn verify_decomposition(
    ideal: &MonomialIdeal,
    components: &[IrreducibleComponent],
) -> Result<bool> {
    let n = ideal.n();
    let mut acc: Option<MonomialIdeal> = None;
    for c in components {
        let ci = c.to_ideal(n)?;
        acc = Some(match acc {
            None => ci,
            Some(a) => a.intersect(&ci)?,
        });
    }
    Ok(acc.as_ref() == Some(ideal))
}

/// `Ass(R/I)`: the radicals of the irreducible components.
pub fn associated_primes(ideal: &MonomialIdeal) -> Result<AssociatedPrimesSet> {
    associated_primes_with(&Decomposer::default(), ideal)
}

pub fn associated_primes_with(
    decomposer: &Decomposer,
    ideal: &MonomialIdeal,
) -> Result<AssociatedPrimesSet> {
    let comps = decomposer.decompose(ideal)?;
    Ok(AssociatedPrimesSet::new(
        ideal.n(),
        comps.iter().map(IrreducibleComponent::radical),
    ))
}

/// Brute force: `p` is associated iff `p = I : u` for a monomial `u`; `u` ranges
/// over the divisors of `lcm(G(I))`.
pub fn ass_colon_oracle(ideal: &MonomialIdeal, budget: u128) -> Result<AssociatedPrimesSet> {
    let lcm = ideal.lcm()?;
    let count = lcm
        .exponents()
        .iter()
        .try_fold(1u128, |acc, &e| acc.checked_mul(e as u128 + 1))
        .unwrap_or(u128::MAX);
    if count > budget {
        return Err(Error::BudgetExceeded {
            what: "colon oracle divisor scan",
            cost: count,
            limit: budget,
        });
    }
    let n = ideal.n();
    let mut primes = BTreeSet::new();
    let mut u = vec![0u32; n];
    loop {
        let um = Monomial::new(u.clone());
        if !ideal.contains(&um) {
            let colon = ideal.colon(&um)?;
            let vars: Option<Vec<usize>> =
                colon.generators().iter().map(Monomial::as_variable).collect();
            if let Some(vars) = vars {
                primes.insert(MonomialPrime::new(vars));
            }
        }
        // odometer over the divisors of lcm
        let mut i = 0;
        loop {
            if i == n {
                return Ok(AssociatedPrimesSet::new(n, primes));
            }
            if u[i] < lcm.exponent(i) {
                u[i] += 1;
                break;
            }
            u[i] = 0;
            i += 1;
        }
    }
}

/// Depth-zero test for the localization at the prime on `vars`, valid when the
/// localization has linear quotients (any localization of a polymatroidal ideal).
pub(crate) fn localization_has_depth_zero(ideal: &MonomialIdeal, vars: &[usize]) -> Result<bool> {
    let local = match ideal.restrict(vars) {
        Ok(l) => l,
        Err(Error::UnitIdeal) => return Ok(false),
        Err(e) => return Err(e),
    };
    Ok(local_depth_zero(&local))
}

/// `depth = 0` for an ideal with linear quotients, over its own ring.
pub(crate) fn local_depth_zero(local: &MonomialIdeal) -> bool {
    let n = local.n();
    if !local.support_and_gcd().is_ok_and(|s| s.full_supported) {
        // a variable outside the support is a nonzerodivisor
        return false;
    }
    q_by_exchange(local) + 1 == n
}

/// Subsets of `{0..n}` as sorted index lists, for `n <= 20`.
pub(crate) fn variable_subsets(n: usize) -> Result<impl Iterator<Item = Vec<usize>>> {
    if n > 20 {
        return Err(Error::BudgetExceeded {
            what: "prime enumeration",
            cost: 1u128 << n.min(127),
            limit: 1 << 20,
        });
    }
    Ok((1u32..(1u32 << n)).map(move |mask| (0..n).filter(|&i| mask >> i & 1 == 1).collect()))
}

/// Polymatroidal fast path: `p` is associated iff `I(p)` has depth zero over the
/// ring generated by the variables of `p`.
pub fn ass_polymatroidal_fast(ideal: &MonomialIdeal) -> Result<AssociatedPrimesSet> {
    if !is_polymatroidal(ideal)? {
        return Err(Error::NotPolymatroidal);
    }
    let n = ideal.n();
    let mut primes = BTreeSet::new();
    for vars in variable_subsets(n)? {
        if localization_has_depth_zero(ideal, &vars)? {
            primes.insert(MonomialPrime::new(vars));
        }
    }
    Ok(AssociatedPrimesSet::new(n, primes))
}

pub fn decomposition_to_json(
    components: &[IrreducibleComponent],
    ass: &AssociatedPrimesSet,
) -> serde_json::Value {
    #[derive(Serialize)]
    struct ComponentJson {
        bounds: BTreeMap<String, u32>,
    }
    #[derive(Serialize)]
    struct DecompositionJson {
        components: Vec<ComponentJson>,
        ass: Vec<Vec<usize>>,
    }
    let json = DecompositionJson {
        components: components
            .iter()
            .map(|c| ComponentJson {
                bounds: c
                    .bounds()
                    .iter()
                    .map(|&(v, a)| ((v + 1).to_string(), a))
                    .collect(),
            })
            .collect(),
        ass: ass.to_lists(),
    };
    serde_json::to_value(json).expect("plain data serializes")
}
