//! Traces of `Ass(I^t)` and `depth R/I^t` over powers, and the stability indices
//! `astab(I)` and `dstab(I)` read off them.
//!
//! For polymatroidal `I` both indices are below the analytic spread `l(I)`, so a
//! trace up to `t = l(I) - 1` settles them; such results are certified. Any other
//! input is traced up to a power budget and the result is only budget-stable.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use rayon::prelude::*;
use serde_json::json;

use crate::decomposition::{
    associated_primes_with, local_depth_zero, variable_subsets, AssociatedPrimesSet, Decomposer,
    DEFAULT_MEMO_LIMIT,
};
use crate::error::{Error, Result};
use crate::homology::{betti_table, HomologyBudget};
use crate::monomial::{Monomial, MonomialIdeal, MonomialPrime};
use crate::structure::{
    is_polymatroidal, linear_quotients_q, linear_relation_graph, q_by_exchange, spread_of_graph,
};

pub const DEFAULT_MAX_POWER: u32 = 10;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilityOptions {
    /// Highest power traced for inputs without a proven bound, and a cap on
    /// the proven bound itself.
    pub max_power: u32,
    pub homology: HomologyBudget,
    pub decomposition_memo: usize,
    /// Largest `|G(I^t)|` the general (non-polymatroidal) path will decompose.
    pub max_generators: usize,
}

impl Default for StabilityOptions {
    fn default() -> Self {
        StabilityOptions {
            max_power: DEFAULT_MAX_POWER,
            homology: HomologyBudget::default(),
            decomposition_memo: DEFAULT_MEMO_LIMIT,
            max_generators: 400,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerStep {
    pub t: u32,
    pub generators: usize,
    pub ass: AssociatedPrimesSet,
    /// `None` when neither the linear-quotients formula nor the homology oracle
    /// could certify the depth.
    pub depth: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerTrace {
    pub steps: Vec<PowerStep>,
    /// Powers were handled by the polymatroidal fast paths.
    pub polymatroidal: bool,
    /// The power the trace was asked to reach.
    pub bound: u32,
    pub budget_exhausted: bool,
    pub diagnostics: Vec<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StabilityIndex {
    Stable(u32),
    Unstabilized,
}

impl StabilityIndex {
    pub fn value(self) -> Option<u32> {
        match self {
            StabilityIndex::Stable(t) => Some(t),
            StabilityIndex::Unstabilized => None,
        }
    }

    fn to_json(self) -> serde_json::Value {
        match self {
            StabilityIndex::Stable(t) => json!(t),
            StabilityIndex::Unstabilized => json!("unstabilized"),
        }
    }
}

impl fmt::Display for StabilityIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StabilityIndex::Stable(t) => write!(f, "{t}"),
            StabilityIndex::Unstabilized => write!(f, "unstabilized"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilityReport {
    pub astab: StabilityIndex,
    pub dstab: StabilityIndex,
    /// `Ass` at the last traced power, `Ass^infinity(I)` when certified.
    pub stable_ass: AssociatedPrimesSet,
    pub stable_depth: Option<usize>,
    pub analytic_spread: Option<usize>,
    /// Polymatroidal input traced up to `l(I) - 1` without exhausting a budget.
    pub certified: bool,
    pub trace: PowerTrace,
}

impl StabilityReport {
    pub fn m_in_stable_ass(&self) -> bool {
        self.stable_ass.contains_maximal()
    }

    pub fn ass_at(&self, t: u32) -> Option<&AssociatedPrimesSet> {
        self.trace.steps.get(t as usize - 1).map(|s| &s.ass)
    }

    pub fn depth_at(&self, t: u32) -> Option<usize> {
        self.trace.steps.get(t as usize - 1).and_then(|s| s.depth)
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "astab": self.astab.to_json(),
            "dstab": self.dstab.to_json(),
            "certified": self.certified,
            "ell": self.analytic_spread,
            "trace": self.trace.steps.iter().map(|s| json!({
                "t": s.t,
                "ass": s.ass.to_lists(),
                "depth": s.depth,
                "gens": s.generators,
            })).collect::<Vec<_>>(),
        })
    }
}

/// Ass and depth of `I^t` for `t = 1..=bound` of a polymatroidal ideal.
///
/// `p` is associated to `I^t` iff `I(p)^t` has depth zero over the ring on the
/// variables of `p`; localization commutes with powers, so each candidate prime
/// powers its own (smaller) localization. Powers of polymatroidal ideals are
/// polymatroidal, so linear quotients hold throughout.
fn polymatroidal_steps(ideal: &MonomialIdeal, bound: u32) -> Result<Vec<PowerStep>> {
    let n = ideal.n();
    let mut candidates = Vec::new();
    for vars in variable_subsets(n)? {
        if vars.len() == n {
            continue;
        }
        match ideal.restrict(&vars) {
            Ok(local) => {
                if local.support_and_gcd()?.full_supported {
                    candidates.push((vars, local));
                }
            }
            Err(Error::UnitIdeal) => {}
            Err(e) => return Err(e),
        }
    }
    let local_flags: Vec<(Vec<usize>, Vec<bool>)> = candidates
        .into_par_iter()
        .map(|(vars, local)| {
            let mut flags = Vec::with_capacity(bound as usize);
            let mut power = local.clone();
            for t in 1..=bound {
                if t > 1 {
                    power = power.multiply(&local)?;
                }
                flags.push(local_depth_zero(&power));
            }
            Ok((vars, flags))
        })
        .collect::<Result<_>>()?;

    let mut steps = Vec::with_capacity(bound as usize);
    let mut power = ideal.clone();
    for t in 1..=bound {
        if t > 1 {
            power = power.multiply(ideal)?;
        }
        let q = q_by_exchange(&power);
        let depth = n.saturating_sub(q + 1);
        let mut primes: Vec<MonomialPrime> = local_flags
            .iter()
            .filter(|(_, f)| f[t as usize - 1])
            .map(|(vars, _)| MonomialPrime::new(vars.clone()))
            .collect();
        if depth == 0 {
            primes.push(MonomialPrime::maximal(n));
        }
        steps.push(PowerStep {
            t,
            generators: power.len(),
            ass: AssociatedPrimesSet::new(n, primes),
            depth: Some(depth),
        });
    }
    Ok(steps)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DepthMethod {
    LinearQuotients,
    Homology,
}

impl fmt::Display for DepthMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DepthMethod::LinearQuotients => "linear-quotients",
            DepthMethod::Homology => "homology",
        })
    }
}

/// `depth R/I` from linear quotients in canonical order when they hold (with
/// the exchange shortcut for polymatroidal ideals), else from the homology oracle.
pub fn depth_with_method(ideal: &MonomialIdeal, budget: &HomologyBudget) -> Result<(usize, DepthMethod)> {
    let n = ideal.n();
    if is_polymatroidal(ideal)? {
        return Ok((n.saturating_sub(q_by_exchange(ideal) + 1), DepthMethod::LinearQuotients));
    }
    let report = linear_quotients_q(ideal)?;
    if report.linear {
        return Ok((n.saturating_sub(report.q + 1), DepthMethod::LinearQuotients));
    }
    Ok((betti_table(ideal, budget)?.depth, DepthMethod::Homology))
}

/// General route: decomposition for Ass; depth from linear quotients when they
/// hold, else the homology oracle.
fn general_steps(
    ideal: &MonomialIdeal,
    bound: u32,
    opts: &StabilityOptions,
    diagnostics: &mut Vec<String>,
) -> (Vec<PowerStep>, bool) {
    let decomposer = Decomposer::new(opts.decomposition_memo);
    let mut steps = Vec::new();
    let mut power = ideal.clone();
    for t in 1..=bound {
        if t > 1 {
            power = match power.multiply(ideal) {
                Ok(p) => p,
                Err(e) => {
                    diagnostics.push(format!("power {t}: {e}"));
                    return (steps, true);
                }
            };
        }
        if power.len() > opts.max_generators {
            diagnostics.push(format!(
                "power {t}: {} generators exceed the budget of {}",
                power.len(),
                opts.max_generators
            ));
            return (steps, true);
        }
        let ass = match associated_primes_with(&decomposer, &power) {
            Ok(a) => a,
            Err(e) => {
                diagnostics.push(format!("power {t}: associated primes: {e}"));
                return (steps, true);
            }
        };
        let depth = match depth_with_method(&power, &opts.homology) {
            Ok((d, _)) => Some(d),
            Err(e) => {
                diagnostics.push(format!("power {t}: depth unknown: {e}"));
                None
            }
        };
        steps.push(PowerStep {
            t,
            generators: power.len(),
            ass,
            depth,
        });
    }
    (steps, false)
}

fn trace_to(
    ideal: &MonomialIdeal,
    bound: u32,
    polymatroidal: bool,
    opts: &StabilityOptions,
) -> Result<PowerTrace> {
    if ideal.is_zero() {
        return Err(Error::ZeroIdeal);
    }
    if bound == 0 {
        return Err(Error::ZeroPower);
    }
    let mut diagnostics = Vec::new();
    let (steps, budget_exhausted) = if polymatroidal {
        (polymatroidal_steps(ideal, bound)?, false)
    } else {
        general_steps(ideal, bound, opts, &mut diagnostics)
    };
    Ok(PowerTrace {
        steps,
        polymatroidal,
        bound,
        budget_exhausted,
        diagnostics,
    })
}

/// Trace up to `min(max_power, l(I) - 1)` for polymatroidal input, else `max_power`.
pub fn power_trace(ideal: &MonomialIdeal, opts: &StabilityOptions) -> Result<PowerTrace> {
    Ok(stability_report(ideal, opts)?.trace)
}

/// Trace exactly `t_max` powers, ignoring the analytic spread bound.
pub fn power_trace_to(
    ideal: &MonomialIdeal,
    t_max: u32,
    opts: &StabilityOptions,
) -> Result<PowerTrace> {
    if ideal.is_zero() {
        return Err(Error::ZeroIdeal);
    }
    trace_to(ideal, t_max, is_polymatroidal(ideal)?, opts)
}

/// Least `t0` with `values[t]` constant for `t0 <= t <= last`.
fn stabilization_index<T: PartialEq>(values: &[T]) -> Option<u32> {
    let last = values.last()?;
    let mut t0 = values.len();
    while t0 > 1 && values[t0 - 2] == *last {
        t0 -= 1;
    }
    Some(t0 as u32)
}

pub fn stability_report(ideal: &MonomialIdeal, opts: &StabilityOptions) -> Result<StabilityReport> {
    if ideal.is_zero() {
        return Err(Error::ZeroIdeal);
    }
    if opts.max_power == 0 {
        return Err(Error::ZeroPower);
    }
    let polymatroidal = is_polymatroidal(ideal)?;
    let ell = if polymatroidal {
        Some(spread_of_graph(&linear_relation_graph(ideal)?))
    } else {
        None
    };
    let needed = ell.map(|l| (l as u32).saturating_sub(1).max(1));
    let bound = match needed {
        Some(b) => b.min(opts.max_power),
        None => opts.max_power,
    };
    let trace = trace_to(ideal, bound, polymatroidal, opts)?;
    let complete = !trace.budget_exhausted && trace.steps.len() == bound as usize;
    let certified = complete && needed.is_some_and(|b| bound >= b);

    let ass: Vec<&AssociatedPrimesSet> = trace.steps.iter().map(|s| &s.ass).collect();
    let astab = match (complete, stabilization_index(&ass)) {
        (true, Some(t)) => StabilityIndex::Stable(t),
        _ => StabilityIndex::Unstabilized,
    };
    let depths: Option<Vec<usize>> = trace.steps.iter().map(|s| s.depth).collect();
    let dstab = match (complete, depths.as_deref().and_then(stabilization_index)) {
        (true, Some(t)) => StabilityIndex::Stable(t),
        _ => StabilityIndex::Unstabilized,
    };
    let stable_ass = trace
        .steps
        .last()
        .map(|s| s.ass.clone())
        .unwrap_or_else(|| AssociatedPrimesSet::new(ideal.n(), []));
    let stable_depth = trace.steps.last().and_then(|s| s.depth);
    Ok(StabilityReport {
        astab,
        dstab,
        stable_ass,
        stable_depth,
        analytic_spread: ell,
        certified,
        trace,
    })
}

pub fn astab(ideal: &MonomialIdeal, opts: &StabilityOptions) -> Result<StabilityIndex> {
    Ok(stability_report(ideal, opts)?.astab)
}

pub fn dstab(ideal: &MonomialIdeal, opts: &StabilityOptions) -> Result<StabilityIndex> {
    Ok(stability_report(ideal, opts)?.dstab)
}

/// Generators `u, v, w` and variables `x_i, x_j` with `x_i u = x_j v` and `x_i x_j | w`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationWitness {
    pub u: Monomial,
    pub v: Monomial,
    pub w: Monomial,
    pub i: usize,
    pub j: usize,
}

pub fn relation_witness(ideal: &MonomialIdeal) -> Option<RelationWitness> {
    let gens = ideal.generators();
    for u in gens {
        for v in gens {
            if u == v || u.degree() != v.degree() {
                continue;
            }
            let g = u.gcd(v);
            let (Some(j), Some(i)) = (u.colon(&g).as_variable(), v.colon(&g).as_variable()) else {
                continue;
            };
            if let Some(w) = gens
                .iter()
                .find(|w| w.exponent(i) > 0 && w.exponent(j) > 0)
            {
                return Some(RelationWitness {
                    u: u.clone(),
                    v: v.clone(),
                    w: w.clone(),
                    i,
                    j,
                });
            }
        }
    }
    None
}

/// Stability reports memoized by ideal, shareable across threads.
pub struct StabilityCache {
    opts: StabilityOptions,
    map: Mutex<HashMap<MonomialIdeal, Arc<StabilityReport>>>,
}

impl StabilityCache {
    pub fn new(opts: StabilityOptions) -> Self {
        StabilityCache {
            opts,
            map: Mutex::new(HashMap::new()),
        }
    }

    pub fn options(&self) -> &StabilityOptions {
        &self.opts
    }

    pub fn report(&self, ideal: &MonomialIdeal) -> Result<Arc<StabilityReport>> {
        if let Some(r) = self.map.lock().expect("cache lock").get(ideal) {
            return Ok(r.clone());
        }
        let report = Arc::new(stability_report(ideal, &self.opts)?);
        self.map
            .lock()
            .expect("cache lock")
            .insert(ideal.clone(), report.clone());
        Ok(report)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ideal(n: usize, rows: &[&[u32]]) -> MonomialIdeal {
        MonomialIdeal::from_exponents(n, rows).unwrap()
    }

    #[test]
    fn stabilization_index_is_suffix_based() {
        assert_eq!(stabilization_index(&[3, 2, 2]), Some(2));
        assert_eq!(stabilization_index(&[2, 3, 2]), Some(3));
        assert_eq!(stabilization_index(&[1]), Some(1));
        assert_eq!(stabilization_index::<u8>(&[]), None);
    }

    #[test]
    fn maximal_ideal_is_stable_from_the_start() {
        let opts = StabilityOptions::default();
        let trace = power_trace_to(&MonomialIdeal::maximal(3), 3, &opts).unwrap();
        for step in &trace.steps {
            assert_eq!(step.depth, Some(0));
            assert_eq!(step.ass.to_lists(), vec![vec![1, 2, 3]]);
        }
        let r = stability_report(&MonomialIdeal::maximal(3), &opts).unwrap();
        assert_eq!((r.astab, r.dstab), (StabilityIndex::Stable(1), StabilityIndex::Stable(1)));
        assert!(r.certified);
    }

    #[test]
    fn squarefree_veronese_2_4() {
        let i = ideal(
            4,
            &[
                &[1, 1, 0, 0],
                &[1, 0, 1, 0],
                &[0, 1, 1, 0],
                &[1, 0, 0, 1],
                &[0, 1, 0, 1],
                &[0, 0, 1, 1],
            ],
        );
        let r = stability_report(&i, &StabilityOptions::default()).unwrap();
        assert_eq!(r.analytic_spread, Some(4));
        assert_eq!(r.depth_at(1), Some(1));
        assert_eq!(r.depth_at(2), Some(0));
        assert_eq!(r.dstab, StabilityIndex::Stable(2));
        assert_eq!(r.astab, StabilityIndex::Stable(2));
        assert!(r.m_in_stable_ass());
    }

    #[test]
    fn budget_limits_are_not_certified() {
        let opts = StabilityOptions {
            max_power: 1,
            ..StabilityOptions::default()
        };
        let i = ideal(3, &[&[1, 1, 0], &[0, 1, 1], &[1, 0, 1]]);
        let r = stability_report(&i, &opts).unwrap();
        assert!(!r.certified);
        // non-polymatroidal input is never certified
        let j = ideal(2, &[&[2, 0], &[0, 2]]);
        let r = stability_report(&j, &StabilityOptions::default()).unwrap();
        assert!(!r.certified);
        assert_eq!(r.trace.steps.len(), DEFAULT_MAX_POWER as usize);
        assert_eq!(r.astab, StabilityIndex::Stable(1));
    }

    #[test]
    fn general_path_reports_exhaustion() {
        let opts = StabilityOptions {
            max_generators: 5,
            ..StabilityOptions::default()
        };
        let j = ideal(3, &[&[2, 0, 0], &[0, 2, 0], &[0, 0, 3]]);
        let r = stability_report(&j, &opts).unwrap();
        assert!(r.trace.budget_exhausted);
        assert_eq!(r.astab, StabilityIndex::Unstabilized);
        assert!(!r.trace.diagnostics.is_empty());
    }

    #[test]
    fn witness_finder() {
        let i = ideal(3, &[&[1, 1, 0], &[0, 1, 1], &[1, 0, 1]]);
        let w = relation_witness(&i).unwrap();
        let lhs = w.u.checked_mul(&Monomial::var(3, w.i)).unwrap();
        let rhs = w.v.checked_mul(&Monomial::var(3, w.j)).unwrap();
        assert_eq!(lhs, rhs);
        assert!(w.w.exponent(w.i) > 0 && w.w.exponent(w.j) > 0);
        // a product of disjoint primes has no such triple
        let p = ideal(4, &[&[1, 0, 1, 0], &[1, 0, 0, 1], &[0, 1, 1, 0], &[0, 1, 0, 1]]);
        assert_eq!(relation_witness(&p), None);
    }

    #[test]
    fn report_json_shape() {
        let r = stability_report(&MonomialIdeal::maximal(2), &StabilityOptions::default()).unwrap();
        assert_eq!(
            r.to_json(),
            json!({
                "astab": 1, "dstab": 1, "certified": true, "ell": 2,
                "trace": [{"t": 1, "ass": [[1, 2]], "depth": 0, "gens": 2}]
            })
        );
    }
}
