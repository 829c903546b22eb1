//! Per-instance predicates behind each check.

use std::collections::BTreeMap;
use std::sync::Arc;
use std::time::Duration;

use rayon::prelude::*;

use super::corpus::{cubic_counterexample, quadratic_counterexample, Instance};
use super::{CheckId, Context, Finding, Status, TheoremCheckResult, MAX_WITNESSES};
use crate::decomposition::{
    ass_colon_oracle, ass_polymatroidal_fast, associated_primes, irreducible_decomposition,
    AssociatedPrimesSet, DEFAULT_COLON_BUDGET,
};
use crate::error::Error;
use crate::families::squarefree_veronese;
use crate::monomial::{Monomial, MonomialIdeal, MonomialPrime};
use crate::stability::{relation_witness, StabilityCache, StabilityIndex, StabilityReport};
use crate::structure::{disjoint_prime_factors, is_matroidal, is_polymatroidal, linear_relation_graph};

enum Verdict {
    /// The instance is outside the hypothesis.
    Skip,
    /// The conclusion holds; the optional tag is tallied into the notes.
    Pass(Option<String>),
    /// The conclusion holds and was established by an explicit witness.
    Witness(String),
    Fail(String),
}

/// Invariants the check needs could not be certified.
struct Unknown(String);

impl From<Error> for Unknown {
    fn from(e: Error) -> Self {
        Unknown(e.to_string())
    }
}

type Eval = Result<Verdict, Unknown>;

fn certified(cache: &StabilityCache, ideal: &MonomialIdeal) -> Result<Arc<StabilityReport>, Unknown> {
    let r = cache.report(ideal)?;
    if r.certified {
        return Ok(r);
    }
    let mut why = format!(
        "trace reached t={} of the t={} needed",
        r.trace.steps.len(),
        r.analytic_spread.map_or(0, |l| l.saturating_sub(1).max(1))
    );
    if !r.trace.diagnostics.is_empty() {
        why.push_str(&format!(" ({})", r.trace.diagnostics.join("; ")));
    }
    Err(Unknown(why))
}

fn degree(ideal: &MonomialIdeal) -> u64 {
    ideal.equigenerated_degree().unwrap_or(0)
}

fn index(i: StabilityIndex) -> String {
    i.to_string()
}

fn is_one(i: StabilityIndex) -> bool {
    i == StabilityIndex::Stable(1)
}

fn verdict(errors: Vec<String>, tag: Option<String>) -> Verdict {
    if errors.is_empty() {
        Verdict::Pass(tag)
    } else {
        Verdict::Fail(errors.join("; "))
    }
}

/// The primes of `I = p_1 ∩ ... ∩ p_k` when `I` is radical, else `None`.
fn prime_components(ideal: &MonomialIdeal) -> crate::error::Result<Option<Vec<MonomialPrime>>> {
    let comps = irreducible_decomposition(ideal)?;
    if comps.iter().all(|c| c.bounds().iter().all(|&(_, a)| a == 1)) {
        let mut primes: Vec<MonomialPrime> = comps.iter().map(|c| c.radical()).collect();
        primes.sort();
        Ok(Some(primes))
    } else {
        Ok(None)
    }
}

fn pairwise_disjoint(primes: &[MonomialPrime]) -> bool {
    primes
        .iter()
        .enumerate()
        .all(|(k, p)| primes[k + 1..].iter().all(|q| p.is_disjoint(q)))
}

fn show_primes(primes: &[MonomialPrime]) -> String {
    primes
        .iter()
        .map(|p| p.to_string())
        .collect::<Vec<_>>()
        .join(" ∩ ")
}

fn others(n: usize, k: usize) -> Vec<usize> {
    (0..n).filter(|&v| v != k).collect()
}

fn matroidal_components(ctx: &Context, ideal: &MonomialIdeal) -> Eval {
    if !is_matroidal(ideal)? {
        return Ok(Verdict::Skip);
    }
    let d = degree(ideal) as usize;
    let n = ideal.n();
    let graph = linear_relation_graph(ideal)?;
    let s = graph.component_count();
    let r = certified(ctx.cache(), ideal)?;
    let dstab_one = is_one(r.dstab);
    let product = disjoint_prime_factors(ideal)?.is_some_and(|f| f.len() == d);
    let mut errors = Vec::new();
    if s > d {
        errors.push(format!("s = {s} > d = {d}"));
    }
    if graph.vertex_count() != n {
        errors.push(format!("graph has {} of {n} variables as vertices", graph.vertex_count()));
    }
    for p in graph.component_primes() {
        if let Some(u) = ideal
            .generators()
            .iter()
            .find(|u| !p.vars().iter().any(|&v| u.exponent(v) > 0))
        {
            errors.push(format!("generator {u} not in component prime {p}"));
        }
    }
    if (s == d) != dstab_one {
        errors.push(format!("s = {s}, d = {d} but dstab = {}", index(r.dstab)));
    }
    if product != dstab_one {
        errors.push(format!(
            "product of disjoint primes: {product}, dstab = {}",
            index(r.dstab)
        ));
    }
    Ok(verdict(errors, dstab_one.then(|| "dstab = 1, product of primes".into())))
}

/// Single-variable localizations of a degree `d >= 3` polymatroidal ideal that
/// are all intersections of `d - 1` disjoint primes force `I` to be one of `d`.
fn disjoint_prime_intersection(_: &Context, ideal: &MonomialIdeal) -> Eval {
    let d = degree(ideal) as usize;
    if d < 3 || !is_polymatroidal(ideal)? {
        return Ok(Verdict::Skip);
    }
    let n = ideal.n();
    let mut local = Vec::with_capacity(n);
    for k in 0..n {
        let loc = match ideal.localize(&MonomialPrime::omitting(n, &[k])) {
            Ok(l) => l,
            Err(Error::UnitIdeal) => return Ok(Verdict::Skip),
            Err(e) => return Err(e.into()),
        };
        match prime_components(&loc)? {
            Some(ps) if ps.len() == d - 1 && pairwise_disjoint(&ps) => local.push(ps),
            _ => return Ok(Verdict::Skip),
        }
    }
    match prime_components(ideal)? {
        Some(ps) if ps.len() == d && pairwise_disjoint(&ps) => Ok(Verdict::Witness(format!(
            "I = {}; I(p_k) = {}",
            show_primes(&ps),
            local
                .iter()
                .map(|l| show_primes(l))
                .collect::<Vec<_>>()
                .join(" | ")
        ))),
        _ => Ok(Verdict::Fail(format!(
            "every localization is an intersection of {} disjoint primes but I has decomposition {:?}",
            d - 1,
            irreducible_decomposition(ideal)?
        ))),
    }
}

/// The degree-2 fixed ideal meets the localization hypothesis but is not an
/// intersection of two disjoint primes.
fn quadratic_pin() -> Eval {
    let ideal = quadratic_counterexample();
    let n = ideal.n();
    for k in 0..n {
        let loc = ideal.localize(&MonomialPrime::omitting(n, &[k]))?;
        match prime_components(&loc)? {
            Some(ps) if ps.len() == 1 => {}
            other => {
                return Ok(Verdict::Fail(format!(
                    "localization at x{} is {loc}, components {other:?}",
                    k + 1
                )))
            }
        }
    }
    match prime_components(&ideal)? {
        Some(ps) if ps.len() == 2 && pairwise_disjoint(&ps) => Ok(Verdict::Fail(format!(
            "fixed quadrics decompose as {}",
            show_primes(&ps)
        ))),
        _ => Ok(Verdict::Pass(Some(
            "degree 2 fixed quadrics: hypothesis holds, conclusion fails".into(),
        ))),
    }
}

fn astab_one_iff_dstab_one(ctx: &Context, ideal: &MonomialIdeal) -> Eval {
    if !is_matroidal(ideal)? {
        return Ok(Verdict::Skip);
    }
    let r = certified(ctx.cache(), ideal)?;
    let (a1, d1) = (is_one(r.astab), is_one(r.dstab));
    let mut errors = Vec::new();
    if a1 != d1 {
        errors.push(format!("astab = {}, dstab = {}", index(r.astab), index(r.dstab)));
    }
    if a1 {
        let d = degree(ideal) as usize;
        if !disjoint_prime_factors(ideal)?.is_some_and(|f| f.len() == d) {
            errors.push("astab = 1 but I is not a product of disjoint primes".into());
        }
    }
    Ok(verdict(errors, a1.then(|| "astab = dstab = 1".into())))
}

fn localization_components(_: &Context, ideal: &MonomialIdeal) -> Eval {
    if degree(ideal) < 2 || !is_matroidal(ideal)? {
        return Ok(Verdict::Skip);
    }
    let n = ideal.n();
    let all: Vec<usize> = (0..n).collect();
    let s = linear_relation_graph(ideal)?.components_in_ring(&all);
    let ring: Vec<usize> = (0..n - 1).collect();
    let mut errors = Vec::new();
    for k in 0..n {
        let loc = match ideal.restrict(&others(n, k)) {
            Ok(l) => l,
            Err(Error::UnitIdeal) => continue,
            Err(e) => return Err(e.into()),
        };
        let sk = linear_relation_graph(&loc)?.components_in_ring(&ring);
        if sk < s {
            errors.push(format!("s(I(p_{})) = {sk} < s(I) = {s}", k + 1));
        }
    }
    Ok(verdict(errors, None))
}

fn maximal_ideal_lifts(ctx: &Context, ideal: &MonomialIdeal) -> Eval {
    let d = degree(ideal);
    if d < 2 || !is_polymatroidal(ideal)? {
        return Ok(Verdict::Skip);
    }
    let n = ideal.n();
    let mut hypothesis = None;
    for k in 0..n {
        let loc = match ideal.restrict(&others(n, k)) {
            Ok(l) => l,
            Err(Error::UnitIdeal) => continue,
            Err(e) => return Err(e.into()),
        };
        if loc.equigenerated_degree() != Some(d - 1) || !is_polymatroidal(&loc)? {
            continue;
        }
        if certified(ctx.cache(), &loc)?.m_in_stable_ass() {
            hypothesis = Some(k);
            break;
        }
    }
    let Some(k) = hypothesis else {
        return Ok(Verdict::Skip);
    };
    let r = certified(ctx.cache(), ideal)?;
    if r.m_in_stable_ass() {
        Ok(Verdict::Pass(None))
    } else {
        Ok(Verdict::Fail(format!(
            "maximal ideal stably associated to I(p_{}) but stable Ass(I) = {}",
            k + 1,
            r.stable_ass
        )))
    }
}

fn relation_witness_exists(_: &Context, ideal: &MonomialIdeal) -> Eval {
    let d = degree(ideal) as usize;
    if d < 2 || !is_matroidal(ideal)? {
        return Ok(Verdict::Skip);
    }
    let s = linear_relation_graph(ideal)?.component_count();
    if s >= d {
        return Ok(Verdict::Skip);
    }
    let Some(w) = relation_witness(ideal) else {
        return Ok(Verdict::Fail(format!("s = {s} < d = {d} but no witness exists")));
    };
    let n = ideal.n();
    let xi = Monomial::var(n, w.i);
    let xj = Monomial::var(n, w.j);
    let gens = ideal.generators();
    let valid = xi.checked_mul(&w.u)? == xj.checked_mul(&w.v)?
        && xi.checked_mul(&xj)?.divides(&w.w)
        && [&w.u, &w.v, &w.w].iter().all(|g| gens.contains(g));
    if valid {
        Ok(Verdict::Witness(format!(
            "u = {}, v = {}, w = {}, x_i = x{}, x_j = x{}",
            w.u,
            w.v,
            w.w,
            w.i + 1,
            w.j + 1
        )))
    } else {
        Ok(Verdict::Fail(format!("invalid witness {w:?}")))
    }
}

fn depth_drops_at_square(ctx: &Context, ideal: &MonomialIdeal) -> Eval {
    if !is_matroidal(ideal)? {
        return Ok(Verdict::Skip);
    }
    let r = certified(ctx.cache(), ideal)?;
    if is_one(r.dstab) {
        return Ok(Verdict::Skip);
    }
    let (d1, d2) = (r.depth_at(1), r.depth_at(2));
    match (d1, d2) {
        (Some(a), Some(b)) if b < a => Ok(Verdict::Pass(None)),
        _ => Ok(Verdict::Fail(format!(
            "dstab = {} but depths {d1:?} at t=1, {d2:?} at t=2",
            index(r.dstab)
        ))),
    }
}

/// `astab = dstab`, optionally bounded, with the common value as the tag.
fn equal_indices(r: &StabilityReport, bound: Option<u32>) -> Verdict {
    let (a, d) = (r.astab, r.dstab);
    let mut errors = Vec::new();
    if a != d || a.value().is_none() {
        errors.push(format!("astab = {} but dstab = {}", index(a), index(d)));
    }
    if let (Some(b), Some(v)) = (bound, a.value()) {
        if v > b {
            errors.push(format!("astab = {v} exceeds {b}"));
        }
    }
    verdict(errors, Some(format!("astab = dstab = {}", index(a))))
}

fn cubic_matroidal_without_maximal(ctx: &Context, ideal: &MonomialIdeal) -> Eval {
    if degree(ideal) != 3 || !is_matroidal(ideal)? {
        return Ok(Verdict::Skip);
    }
    let r = certified(ctx.cache(), ideal)?;
    if r.m_in_stable_ass() {
        return Ok(Verdict::Skip);
    }
    Ok(equal_indices(&r, Some(2)))
}

fn quadratic_with_maximal(ctx: &Context, ideal: &MonomialIdeal) -> Eval {
    if degree(ideal) != 2 || !is_polymatroidal(ideal)? {
        return Ok(Verdict::Skip);
    }
    let r = certified(ctx.cache(), ideal)?;
    if !r.m_in_stable_ass() {
        return Ok(Verdict::Skip);
    }
    Ok(equal_indices(&r, Some(2)))
}

fn cubic_maximal_embedded(ctx: &Context, ideal: &MonomialIdeal) -> Eval {
    if degree(ideal) != 3 || !is_polymatroidal(ideal)? {
        return Ok(Verdict::Skip);
    }
    let r = certified(ctx.cache(), ideal)?;
    let in_first = r.ass_at(1).is_some_and(AssociatedPrimesSet::contains_maximal);
    if !r.m_in_stable_ass() || in_first {
        return Ok(Verdict::Skip);
    }
    Ok(equal_indices(&r, None))
}

/// The fixed cubic has the maximal ideal already in `Ass(I)` and unequal indices.
fn cubic_pin(ctx: &Context) -> Eval {
    let ideal = cubic_counterexample();
    let r = certified(ctx.regression_cache(), &ideal)?;
    let in_first = r.ass_at(1).is_some_and(AssociatedPrimesSet::contains_maximal);
    if in_first && r.astab != r.dstab {
        Ok(Verdict::Pass(Some(format!(
            "fixed cubic with m in Ass(I): astab = {} != dstab = {}",
            index(r.astab),
            index(r.dstab)
        ))))
    } else {
        Ok(Verdict::Fail(format!(
            "fixed cubic: m in Ass(I) = {in_first}, astab = {}, dstab = {}",
            index(r.astab),
            index(r.dstab)
        )))
    }
}

fn cubic_matroidal_equality(ctx: &Context, ideal: &MonomialIdeal) -> Eval {
    if degree(ideal) != 3 || !is_matroidal(ideal)? {
        return Ok(Verdict::Skip);
    }
    let r = certified(ctx.cache(), ideal)?;
    Ok(match equal_indices(&r, None) {
        Verdict::Pass(_) => Verdict::Pass(Some(format!(
            "m {}stably associated, astab = dstab = {}",
            if r.m_in_stable_ass() { "" } else { "not " },
            index(r.astab)
        ))),
        other => other,
    })
}

fn cubic_without_maximal(ctx: &Context, ideal: &MonomialIdeal) -> Eval {
    if degree(ideal) != 3 || !is_polymatroidal(ideal)? {
        return Ok(Verdict::Skip);
    }
    let r = certified(ctx.cache(), ideal)?;
    if r.m_in_stable_ass() {
        return Ok(Verdict::Skip);
    }
    Ok(equal_indices(&r, None))
}

/// `(d, omitted generator)` when the ideal is `I_{d;n}` minus at most one
/// generator, with `d >= 2` and gcd 1.
fn almost_veronese_shape(ideal: &MonomialIdeal) -> crate::error::Result<Option<(u32, Option<Monomial>)>> {
    let d = degree(ideal);
    if d < 2 || !ideal.is_squarefree() || d as usize > ideal.n() {
        return Ok(None);
    }
    let full = squarefree_veronese(ideal.n(), d as u32)?;
    if ideal.len() + 1 < full.len() || !ideal.support_and_gcd()?.gcd.is_one() {
        return Ok(None);
    }
    let omitted = full
        .generators()
        .iter()
        .find(|g| !ideal.generators().contains(g))
        .cloned();
    Ok(Some((d as u32, omitted)))
}

fn almost_veronese_maximal(ctx: &Context, ideal: &MonomialIdeal) -> Eval {
    if almost_veronese_shape(ideal)?.is_none() {
        return Ok(Verdict::Skip);
    }
    let r = certified(ctx.cache(), ideal)?;
    if r.m_in_stable_ass() {
        Ok(Verdict::Pass(None))
    } else {
        Ok(Verdict::Fail(format!("stable Ass = {}", r.stable_ass)))
    }
}

/// `J^k : u^{k-1} x_1 ... x_{d-1}` with the variables relabeled so that `u`
/// is the product of the last `d` of them.
fn colon_identity(
    ideal: &MonomialIdeal,
    omitted: &Monomial,
    d: u32,
    k: u32,
) -> crate::error::Result<Vec<String>> {
    let n = ideal.n();
    let support = omitted.support();
    let order: Vec<usize> = (0..n)
        .filter(|v| !support.contains(v))
        .chain(support.iter().copied())
        .collect();
    let head = Monomial::squarefree(n, &order[..d as usize - 1]);
    let w = omitted.checked_pow(k - 1)?.checked_mul(&head)?;
    let m = MonomialIdeal::maximal(n);
    let full = squarefree_veronese(n, d)?;
    let mut errors = Vec::new();
    for (name, base) in [("J", ideal), ("I", &full)] {
        match base.power(k)?.colon(&w) {
            Ok(c) if c == m => {}
            Ok(c) => errors.push(format!("{name}^{k} : {w} = {c}")),
            Err(Error::UnitIdeal) => errors.push(format!("{name}^{k} : {w} is the unit ideal")),
            Err(e) => return Err(e),
        }
    }
    Ok(errors)
}

fn almost_veronese_indices(ctx: &Context, ideal: &MonomialIdeal) -> Eval {
    let Some((d, omitted)) = almost_veronese_shape(ideal)? else {
        return Ok(Verdict::Skip);
    };
    let n = ideal.n() as u32;
    let k = (n - 1).div_ceil(n - d);
    let r = certified(ctx.cache(), ideal)?;
    let mut errors = Vec::new();
    let expected = StabilityIndex::Stable(k);
    if r.astab != expected || r.dstab != expected {
        errors.push(format!(
            "astab = {}, dstab = {}, expected {k}",
            index(r.astab),
            index(r.dstab)
        ));
    }
    let mut tag = format!("n={n} d={d}: astab = dstab = {k}");
    if let Some(u) = omitted.filter(|_| d + 2 <= n) {
        errors.extend(colon_identity(ideal, &u, d, k)?);
        tag.push_str(", colon identity");
    }
    Ok(verdict(errors, Some(tag)))
}

type Evaluator = fn(&Context, &MonomialIdeal) -> Eval;

fn evaluator(id: CheckId) -> Option<Evaluator> {
    use CheckId::*;
    Some(match id {
        MatroidalComponents => matroidal_components,
        DisjointPrimeIntersection => disjoint_prime_intersection,
        AstabOneIffDstabOne => astab_one_iff_dstab_one,
        LocalizationComponents => localization_components,
        MaximalIdealLifts => maximal_ideal_lifts,
        RelationWitness => relation_witness_exists,
        DepthDropsAtSquare => depth_drops_at_square,
        CubicMatroidalWithoutMaximal => cubic_matroidal_without_maximal,
        QuadraticWithMaximal => quadratic_with_maximal,
        CubicMaximalEmbedded => cubic_maximal_embedded,
        CubicMatroidalEquality => cubic_matroidal_equality,
        CubicWithoutMaximal => cubic_without_maximal,
        AlmostVeroneseMaximal => almost_veronese_maximal,
        AlmostVeroneseIndices => almost_veronese_indices,
        QuadraticCounterexample | CubicMaximalAssociated => return None,
    })
}

fn corpus_for(
    id: CheckId,
    ctx: &Context,
) -> crate::error::Result<(String, &[Instance])> {
    use CheckId::*;
    let c = ctx.config();
    Ok(match id {
        MatroidalComponents | AstabOneIffDstabOne | LocalizationComponents | RelationWitness
        | DepthDropsAtSquare | CubicMatroidalWithoutMaximal | CubicMatroidalEquality => (
            format!(
                "matroidal: exhaustive n <= 6, random n=7 d=3 x{} and d=2 x{}, seed {}",
                c.random_count,
                c.random_count / 4,
                c.seed
            ),
            ctx.matroidal()?,
        ),
        DisjointPrimeIntersection | MaximalIdealLifts | QuadraticWithMaximal
        | CubicMaximalEmbedded | CubicWithoutMaximal => (
            format!(
                "matroidal and polymatroidal: exhaustive small cases, Veronese types, random, seed {}",
                c.seed
            ),
            ctx.all_polymatroidal()?,
        ),
        AlmostVeroneseMaximal | AlmostVeroneseIndices => (
            "almost square-free Veronese, 3 <= n <= 6, 2 <= d < n, every omission, gcd 1".into(),
            ctx.almost_veronese()?,
        ),
        QuadraticCounterexample | CubicMaximalAssociated => unreachable!("regressions have no corpus"),
    })
}

#[derive(Default)]
struct Tally {
    instances: usize,
    skipped: usize,
    failures: Vec<Finding>,
    inconclusive: Vec<Finding>,
    witnesses: Vec<Finding>,
    witness_count: usize,
    tags: BTreeMap<String, usize>,
    notes: Vec<String>,
}

impl Tally {
    fn add(&mut self, source: &str, ideal: &MonomialIdeal, eval: Eval) {
        let finding = |detail: String| Finding {
            source: source.to_string(),
            ideal: ideal.clone(),
            detail,
        };
        match eval {
            Ok(Verdict::Skip) => self.skipped += 1,
            Ok(Verdict::Pass(tag)) => {
                self.instances += 1;
                if let Some(t) = tag {
                    *self.tags.entry(t).or_default() += 1;
                }
            }
            Ok(Verdict::Witness(w)) => {
                self.instances += 1;
                self.witness_count += 1;
                if self.witnesses.len() < MAX_WITNESSES {
                    self.witnesses.push(finding(w));
                }
            }
            Ok(Verdict::Fail(why)) => {
                self.instances += 1;
                self.failures.push(finding(why));
            }
            Err(Unknown(why)) => self.inconclusive.push(finding(why)),
        }
    }

    fn finish(self, id: CheckId, corpus: String) -> TheoremCheckResult {
        let status = if !self.failures.is_empty() {
            Status::Fail
        } else if !self.inconclusive.is_empty() || self.instances == 0 {
            Status::Inconclusive
        } else {
            Status::Pass
        };
        let mut notes = self.notes;
        notes.extend(self.tags.into_iter().map(|(t, k)| format!("{k} x {t}")));
        if self.skipped > 0 {
            notes.push(format!("{} instances outside the hypothesis", self.skipped));
        }
        TheoremCheckResult {
            id,
            status,
            corpus,
            instances: self.instances,
            skipped: self.skipped,
            failures: self.failures,
            inconclusive: self.inconclusive,
            witnesses: self.witnesses,
            witness_count: self.witness_count,
            notes,
            elapsed: Duration::ZERO,
        }
    }
}

pub(super) fn run(id: CheckId, ctx: &Context, input: Option<&[Instance]>) -> TheoremCheckResult {
    let Some(eval) = evaluator(id) else {
        return regression(id, ctx);
    };
    let (corpus, instances) = match input {
        Some(v) => ("input ideals, normalized".to_string(), v),
        None => match corpus_for(id, ctx) {
            Ok(c) => c,
            Err(e) => {
                let mut t = Tally::default();
                t.notes.push(format!("corpus generation failed: {e}"));
                return t.finish(id, "unavailable".into());
            }
        },
    };
    let evaluated: Vec<(Option<MonomialIdeal>, Eval)> = instances
        .par_iter()
        .map(|inst| {
            let ideal = if input.is_some() {
                match inst.ideal.normalize() {
                    Ok(norm) => norm.ideal,
                    Err(_) => return (None, Ok(Verdict::Skip)),
                }
            } else {
                inst.ideal.clone()
            };
            let e = eval(ctx, &ideal);
            (Some(ideal), e)
        })
        .collect();
    let mut tally = Tally::default();
    for (inst, (ideal, e)) in instances.iter().zip(evaluated) {
        tally.add(&inst.source, ideal.as_ref().unwrap_or(&inst.ideal), e);
    }
    if input.is_none() {
        match id {
            CheckId::DisjointPrimeIntersection => {
                tally.add("fixed quadrics", &quadratic_counterexample(), quadratic_pin())
            }
            CheckId::CubicMaximalEmbedded => {
                tally.add("fixed cubic", &cubic_counterexample(), cubic_pin(ctx))
            }
            _ => {}
        }
    }
    tally.finish(id, corpus)
}

fn regression(id: CheckId, ctx: &Context) -> TheoremCheckResult {
    let (ideal, eval) = match id {
        CheckId::QuadraticCounterexample => (quadratic_counterexample(), quadratic_regression()),
        _ => (cubic_counterexample(), cubic_regression(ctx)),
    };
    let mut tally = Tally::default();
    tally.add("fixed ideal", &ideal, eval);
    tally.finish(id, "fixed ideal".into())
}

fn prime(vars: &[usize]) -> MonomialPrime {
    MonomialPrime::new(vars.to_vec())
}

/// The twelve quadrics in `x, y, z, u, v, w = x1..x6`.
fn quadratic_regression() -> Eval {
    let ideal = quadratic_counterexample();
    let n = ideal.n();
    let mut errors = Vec::new();
    if !is_matroidal(&ideal)? || degree(&ideal) != 2 {
        errors.push("not a matroidal ideal of degree 2".into());
    }
    let expected = AssociatedPrimesSet::new(
        n,
        [prime(&[0, 1, 2, 3]), prime(&[2, 3, 4, 5]), prime(&[0, 1, 4, 5])],
    );
    let routes = [
        ("decomposition", associated_primes(&ideal)?),
        ("colon scan", ass_colon_oracle(&ideal, DEFAULT_COLON_BUDGET)?),
        ("fast path", ass_polymatroidal_fast(&ideal)?),
    ];
    for (name, ass) in routes {
        if ass != expected {
            errors.push(format!("Ass by {name} = {ass}"));
        }
    }
    let mut meet = prime(&[0, 1, 2, 3]).to_ideal(n)?;
    for p in [prime(&[2, 3, 4, 5]), prime(&[0, 1, 4, 5])] {
        meet = meet.intersect(&p.to_ideal(n)?)?;
    }
    if meet != ideal {
        errors.push(format!("intersection of the three primes is {meet}"));
    }
    let localizations = [
        (0, [2, 3, 4, 5]),
        (1, [2, 3, 4, 5]),
        (2, [0, 1, 4, 5]),
        (3, [0, 1, 4, 5]),
        (4, [0, 1, 2, 3]),
        (5, [0, 1, 2, 3]),
    ];
    for (k, vars) in localizations {
        let loc = ideal.localize(&MonomialPrime::omitting(n, &[k]))?;
        if loc != prime(&vars).to_ideal(n)? {
            errors.push(format!("I(p_{{x{}}}) = {loc}", k + 1));
        }
    }
    // every split of the variables into two disjoint nonempty sets
    for code in 0..3u32.pow(n as u32) {
        let (mut a, mut b) = (Vec::new(), Vec::new());
        let mut c = code;
        for v in 0..n {
            match c % 3 {
                1 => a.push(v),
                2 => b.push(v),
                _ => {}
            }
            c /= 3;
        }
        if a.is_empty() || b.is_empty() {
            continue;
        }
        if prime(&a).to_ideal(n)?.intersect(&prime(&b).to_ideal(n)?)? == ideal {
            errors.push(format!("I = {} ∩ {}", prime(&a), prime(&b)));
        }
    }
    Ok(verdict(errors, None))
}

fn cubic_regression(ctx: &Context) -> Eval {
    let ideal = cubic_counterexample();
    let n = ideal.n();
    let mut errors = Vec::new();
    if !is_polymatroidal(&ideal)? || degree(&ideal) != 3 {
        errors.push("not a polymatroidal ideal of degree 3".into());
    }
    let m = MonomialPrime::maximal(n);
    if !associated_primes(&ideal)?.contains(&m) {
        errors.push("maximal ideal not in Ass(I) by decomposition".into());
    }
    if !ass_polymatroidal_fast(&ideal)?.contains(&m) {
        errors.push("maximal ideal not in Ass(I) by the fast path".into());
    }
    let r = certified(ctx.regression_cache(), &ideal)?;
    if r.dstab != StabilityIndex::Stable(1) {
        errors.push(format!("dstab = {}", index(r.dstab)));
    }
    if r.astab != StabilityIndex::Stable(2) {
        errors.push(format!("astab = {}", index(r.astab)));
    }
    match (r.ass_at(1), r.ass_at(2)) {
        (Some(a1), Some(a2)) if a1.is_subset_of(a2) && a1 != a2 && *a2 == r.stable_ass => {}
        (a1, a2) => errors.push(format!("Ass(I) = {a1:?}, Ass(I^2) = {a2:?}")),
    }
    Ok(verdict(errors, None))
}
