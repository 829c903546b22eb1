//! Executable theorem suite. Each check evaluates an implication or equality
//! on every instance of a corpus of normalized ideals and reports PASS, FAIL,
//! or INCONCLUSIVE with re-runnable witnesses.

mod checks;
mod corpus;

use std::fmt;
use std::fs;
use std::path::Path;
use std::str::FromStr;
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde_json::json;

use crate::error::{Error, Result};
use crate::format::format_ideal;
use crate::monomial::MonomialIdeal;
use crate::stability::{StabilityCache, StabilityOptions, DEFAULT_MAX_POWER};

pub use corpus::{cubic_counterexample, quadratic_counterexample};
use corpus::Instance;

macro_rules! check_ids {
    ($($variant:ident => $id:literal, $title:literal;)*) => {
        /// The sixteen checks, in suite order.
        #[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub enum CheckId {
            $($variant,)*
        }

        impl CheckId {
            pub const ALL: [CheckId; 16] = [$(CheckId::$variant,)*];

            /// Stable identifier used in reports and on the command line.
            pub fn as_str(self) -> &'static str {
                match self {
                    $(CheckId::$variant => $id,)*
                }
            }

            /// What the check asserts.
            pub fn title(self) -> &'static str {
                match self {
                    $(CheckId::$variant => $title,)*
                }
            }
        }

        impl FromStr for CheckId {
            type Err = Error;

            fn from_str(s: &str) -> Result<Self> {
                match s {
                    $($id => Ok(CheckId::$variant),)*
                    _ => Err(Error::InvalidArgument(format!("unknown check `{s}`"))),
                }
            }
        }
    };
}

check_ids! {
    MatroidalComponents => "thm-1.1", "matroidal: s <= d, every variable a vertex, I in the component primes, s = d iff dstab = 1 iff I is a product of disjoint primes";
    DisjointPrimeIntersection => "lem-2.1", "degree >= 3: localizations intersections of d-1 disjoint primes imply I is an intersection of d disjoint primes";
    QuadraticCounterexample => "ex-2.2", "fixed quadrics: three associated primes, prime localizations, no two-prime disjoint decomposition";
    AstabOneIffDstabOne => "thm-2.3", "matroidal: astab = 1 iff dstab = 1, and then I is a product of disjoint primes";
    LocalizationComponents => "lem-2.4", "matroidal: s(I(p_k)) >= s(I) for every single-variable localization";
    MaximalIdealLifts => "prop-2.5", "polymatroidal: maximal ideal stably associated to a degree d-1 localization lifts to I";
    RelationWitness => "lem-2.6", "matroidal with s < d: generators u, v, w with x_i u = x_j v and x_i x_j | w";
    DepthDropsAtSquare => "prop-2.7", "matroidal with dstab > 1: depth R/I^2 < depth R/I";
    CubicMatroidalWithoutMaximal => "prop-2.8", "matroidal cubic, m not stably associated: astab = dstab <= 2";
    QuadraticWithMaximal => "lem-2.9", "polymatroidal quadric, m stably associated: astab = dstab <= 2";
    CubicMaximalEmbedded => "prop-2.10", "polymatroidal cubic, m stably associated but not associated to I: astab = dstab";
    CubicMaximalAssociated => "ex-2.11", "fixed cubic: polymatroidal, m associated to I, dstab = 1, astab = 2";
    CubicMatroidalEquality => "cor-2.12-2.13", "matroidal cubic: astab = dstab";
    CubicWithoutMaximal => "prop-2.14", "polymatroidal cubic, m not stably associated: astab = dstab";
    AlmostVeroneseMaximal => "prop-2.15", "almost square-free Veronese with gcd 1: m stably associated";
    AlmostVeroneseIndices => "thm-2.16", "almost square-free Veronese with gcd 1: astab = dstab = ceil((n-1)/(n-d)), with the colon identity";
}

impl CheckId {
    /// Checks on fixed ideals rather than corpora.
    pub fn is_regression(self) -> bool {
        matches!(
            self,
            CheckId::QuadraticCounterexample | CheckId::CubicMaximalAssociated
        )
    }
}

impl fmt::Display for CheckId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Inconclusive => "INCONCLUSIVE",
        })
    }
}

/// An ideal together with what was observed on it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Finding {
    pub source: String,
    pub ideal: MonomialIdeal,
    pub detail: String,
}

impl Finding {
    fn to_json(&self) -> serde_json::Value {
        json!({
            "source": self.source,
            "ideal": format_ideal(&self.ideal),
            "detail": self.detail,
        })
    }
}

/// Witnesses kept per check; the count of all of them is still reported.
pub const MAX_WITNESSES: usize = 25;

#[derive(Clone, Debug)]
pub struct TheoremCheckResult {
    pub id: CheckId,
    pub status: Status,
    pub corpus: String,
    /// Instances meeting the hypothesis and evaluated to a verdict.
    pub instances: usize,
    /// Instances outside the hypothesis.
    pub skipped: usize,
    pub failures: Vec<Finding>,
    /// Instances whose invariants could not be certified within budget.
    pub inconclusive: Vec<Finding>,
    /// Witnesses for existential statements, at most [`MAX_WITNESSES`].
    pub witnesses: Vec<Finding>,
    pub witness_count: usize,
    pub notes: Vec<String>,
    pub elapsed: Duration,
}

impl TheoremCheckResult {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "id": self.id.as_str(),
            "status": self.status.to_string(),
            "corpus": self.corpus,
            "instances": self.instances,
            "skipped": self.skipped,
            "failures": self.failures.iter().map(Finding::to_json).collect::<Vec<_>>(),
            "inconclusive": self.inconclusive.iter().map(Finding::to_json).collect::<Vec<_>>(),
            "witnesses": self.witnesses.iter().map(Finding::to_json).collect::<Vec<_>>(),
            "witness_count": self.witness_count,
            "notes": self.notes,
            "elapsed_ms": self.elapsed.as_millis() as u64,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteConfig {
    /// Cap on traced powers for corpus checks; regressions always use the default.
    pub max_power: u32,
    pub seed: u64,
    /// Random cubic matroidal instances on 7 variables; other random corpora scale from it.
    pub random_count: usize,
    pub regressions_only: bool,
    /// Restrict to these checks when set.
    pub only: Option<Vec<CheckId>>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            max_power: DEFAULT_MAX_POWER,
            seed: 2_718_281,
            random_count: 200,
            regressions_only: false,
            only: None,
        }
    }
}

impl SuiteConfig {
    pub fn selected(&self) -> Vec<CheckId> {
        CheckId::ALL
            .into_iter()
            .filter(|id| !self.regressions_only || id.is_regression())
            .filter(|id| self.only.as_ref().is_none_or(|only| only.contains(id)))
            .collect()
    }

    fn options(&self) -> StabilityOptions {
        StabilityOptions {
            max_power: self.max_power,
            ..StabilityOptions::default()
        }
    }
}

/// Shared state for one suite run: lazily built corpora and memoized reports.
pub struct Context {
    config: SuiteConfig,
    cache: StabilityCache,
    regression_cache: StabilityCache,
    matroidal: OnceLock<Result<Vec<Instance>>>,
    polymatroidal: OnceLock<Result<Vec<Instance>>>,
    all_polymatroidal: OnceLock<Result<Vec<Instance>>>,
    almost_veronese: OnceLock<Result<Vec<Instance>>>,
}

impl Context {
    pub fn new(config: SuiteConfig) -> Self {
        let cache = StabilityCache::new(config.options());
        Context {
            config,
            cache,
            regression_cache: StabilityCache::new(StabilityOptions::default()),
            matroidal: OnceLock::new(),
            polymatroidal: OnceLock::new(),
            all_polymatroidal: OnceLock::new(),
            almost_veronese: OnceLock::new(),
        }
    }

    pub fn config(&self) -> &SuiteConfig {
        &self.config
    }

    pub fn cache(&self) -> &StabilityCache {
        &self.cache
    }

    pub(crate) fn regression_cache(&self) -> &StabilityCache {
        &self.regression_cache
    }

    pub(crate) fn matroidal(&self) -> Result<&[Instance]> {
        let c = &self.config;
        get_corpus(&self.matroidal, || corpus::matroidal(c.seed, c.random_count))
    }

    pub(crate) fn polymatroidal(&self) -> Result<&[Instance]> {
        let c = &self.config;
        get_corpus(&self.polymatroidal, || {
            corpus::polymatroidal(c.seed, c.random_count)
        })
    }

    /// Matroidal and polymatroidal corpora together.
    pub(crate) fn all_polymatroidal(&self) -> Result<&[Instance]> {
        get_corpus(&self.all_polymatroidal, || {
            Ok(corpus::union(self.matroidal()?, self.polymatroidal()?))
        })
    }

    pub(crate) fn almost_veronese(&self) -> Result<&[Instance]> {
        get_corpus(&self.almost_veronese, corpus::almost_veronese)
    }
}

fn get_corpus(
    cell: &OnceLock<Result<Vec<Instance>>>,
    build: impl FnOnce() -> Result<Vec<Instance>>,
) -> Result<&[Instance]> {
    match cell.get_or_init(build) {
        Ok(v) => Ok(v),
        Err(e) => Err(e.clone()),
    }
}

/// Runs one check against its own corpus.
pub fn check(id: CheckId, ctx: &Context) -> TheoremCheckResult {
    let start = Instant::now();
    let mut result = checks::run(id, ctx, None);
    result.elapsed = start.elapsed();
    result
}

/// Runs one check on the given ideals instead of its corpus; regressions
/// ignore the input and rerun their fixed ideal.
pub fn check_ideals(id: CheckId, ctx: &Context, ideals: &[MonomialIdeal]) -> TheoremCheckResult {
    let start = Instant::now();
    let instances: Vec<Instance> = ideals
        .iter()
        .enumerate()
        .map(|(k, ideal)| Instance::new(format!("input #{}", k + 1), ideal.clone()))
        .collect();
    let mut result = checks::run(id, ctx, Some(&instances));
    result.elapsed = start.elapsed();
    result
}

#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub results: Vec<TheoremCheckResult>,
    pub elapsed: Duration,
}

impl SuiteReport {
    pub fn all_pass(&self) -> bool {
        self.results.iter().all(|r| r.status == Status::Pass)
    }

    pub fn any_fail(&self) -> bool {
        self.results.iter().any(|r| r.status == Status::Fail)
    }

    /// 1 if any check failed, else 0; INCONCLUSIVE alone does not fail the run.
    pub fn exit_code(&self) -> i32 {
        i32::from(self.any_fail())
    }

    pub fn table(&self) -> String {
        let mut out = format!(
            "{:<14} {:<13} {:>9} {:>8} {:>9} {:>10}\n",
            "check", "status", "instances", "failures", "witnesses", "time"
        );
        for r in &self.results {
            out.push_str(&format!(
                "{:<14} {:<13} {:>9} {:>8} {:>9} {:>9.2}s\n",
                r.id.as_str(),
                r.status.to_string(),
                r.instances,
                r.failures.len(),
                r.witness_count,
                r.elapsed.as_secs_f64()
            ));
            for note in &r.notes {
                out.push_str(&format!("    {note}\n"));
            }
            for f in r.failures.iter().chain(&r.inconclusive).take(3) {
                out.push_str(&format!("    {}: {} {}\n", f.source, f.ideal, f.detail));
            }
        }
        let count = |s: Status| self.results.iter().filter(|r| r.status == s).count();
        out.push_str(&format!(
            "{} checks: {} pass, {} fail, {} inconclusive in {:.1}s\n",
            self.results.len(),
            count(Status::Pass),
            count(Status::Fail),
            count(Status::Inconclusive),
            self.elapsed.as_secs_f64()
        ));
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "checks": self.results.iter().map(TheoremCheckResult::to_json).collect::<Vec<_>>(),
            "elapsed_ms": self.elapsed.as_millis() as u64,
        })
    }

    /// Writes each failure, inconclusive instance, and witness as an ideal text file
    /// named `<check>-<kind>-<k>.txt`; returns the number of files written.
    pub fn write_witnesses(&self, dir: &Path) -> std::io::Result<usize> {
        fs::create_dir_all(dir)?;
        let mut written = 0;
        for r in &self.results {
            let groups = [
                ("failure", &r.failures),
                ("inconclusive", &r.inconclusive),
                ("witness", &r.witnesses),
            ];
            for (kind, findings) in groups {
                for (k, f) in findings.iter().enumerate() {
                    let mut text = format!("# check {} {kind}\n# source: {}\n", r.id, f.source);
                    for line in f.detail.lines() {
                        text.push_str(&format!("# {line}\n"));
                    }
                    text.push_str(&format_ideal(&f.ideal));
                    fs::write(dir.join(format!("{}-{kind}-{}.txt", r.id, k + 1)), text)?;
                    written += 1;
                }
            }
        }
        Ok(written)
    }
}

/// Runs the selected checks in parallel; results come back in suite order.
pub fn run_suite(config: SuiteConfig) -> SuiteReport {
    let start = Instant::now();
    let ids = config.selected();
    let ctx = Context::new(config);
    let results = ids.par_iter().map(|&id| check(id, &ctx)).collect();
    SuiteReport {
        results,
        elapsed: start.elapsed(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_round_trip() {
        for id in CheckId::ALL {
            assert_eq!(id.as_str().parse::<CheckId>().unwrap(), id);
        }
        assert!("thm-9.9".parse::<CheckId>().is_err());
        assert_eq!(CheckId::ALL.iter().filter(|i| i.is_regression()).count(), 2);
    }

    #[test]
    fn selection() {
        let regress = SuiteConfig {
            regressions_only: true,
            ..SuiteConfig::default()
        };
        assert_eq!(
            regress.selected(),
            vec![CheckId::QuadraticCounterexample, CheckId::CubicMaximalAssociated]
        );
        assert_eq!(SuiteConfig::default().selected().len(), 16);
    }

    #[test]
    fn regressions_pass() {
        let report = run_suite(SuiteConfig {
            regressions_only: true,
            ..SuiteConfig::default()
        });
        assert!(report.all_pass(), "{}", report.table());
        assert_eq!(report.exit_code(), 0);
    }
}
