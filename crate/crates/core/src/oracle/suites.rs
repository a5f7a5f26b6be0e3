//! Exhaustive verification suites over a bounded code population.
//!
//! Each suite turns into a list of independent cases that are checked in
//! parallel. Failures are sorted by subject size and then by text, so the
//! first reported counterexample is minimal and stable across runs and
//! seeds.

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::enumerate::{enumerate, CodePopulation, PopulationBounds};
use super::generation::GenerationStages;
use crate::code::{Code, Family, RelFamily};
use crate::decode::{self, Cardinality};
use crate::error::{Error, Result};
use crate::limits::{
    self, all_maps, check_universal, default_targets, quotient_closure, Diagram, MapTable,
    Universal,
};
use crate::ordinal::{sup, RankOrdinal};
use crate::rank::{level_member, rk, TowerConfig};
use crate::resize::{check_adjunction, is_hprop, prop_res, PropCode};
use crate::syntax::{print, print_value};
use crate::tower::{check_cumulativity, check_pi_preservation, lift, LeveledCode};
use crate::value::Value;

/// Failures kept in a report; the total is always given.
pub const MAX_REPORTED_FAILURES: usize = 20;

/// Largest carrier for the identity and quotient sweeps.
pub const SMALL_CARRIER: u128 = 4;

/// Largest `Fin` object for universal-property checks against `Fin k`,
/// `k ≤ 4` targets, where the cone count grows as `5^(sum of object sizes)`.
const UNIVERSAL_CHECK_FIN: u64 = 2;

/// Codes with at most this many elements get their maps to `⋆` enumerated.
const TERMINAL_CHECK_BOUND: u128 = 256;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    RankAdequacy,
    PiSigmaClosure,
    DecodeCounts,
    IdClosure,
    Limits,
    Colimits,
    QuotientStability,
    Cumulativity,
    LiftPi,
    Adjunction,
    MaclanePushout,
}

impl Suite {
    pub const ALL: [Suite; 11] = [
        Suite::RankAdequacy,
        Suite::PiSigmaClosure,
        Suite::DecodeCounts,
        Suite::IdClosure,
        Suite::Limits,
        Suite::Colimits,
        Suite::QuotientStability,
        Suite::Cumulativity,
        Suite::LiftPi,
        Suite::Adjunction,
        Suite::MaclanePushout,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::RankAdequacy => "rank-adequacy",
            Suite::PiSigmaClosure => "pi-sigma-closure",
            Suite::DecodeCounts => "decode-counts",
            Suite::IdClosure => "id-closure",
            Suite::Limits => "limits",
            Suite::Colimits => "colimits",
            Suite::QuotientStability => "quotient-stability",
            Suite::Cumulativity => "cumulativity",
            Suite::LiftPi => "lift-pi",
            Suite::Adjunction => "adjunction",
            Suite::MaclanePushout => "maclane-pushout",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::UnknownSuite(s.to_string()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Failure {
    pub size: usize,
    pub subject: String,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub max_size: usize,
    pub max_fin: u64,
    pub checked: usize,
    pub passed: usize,
    /// Cases outside the decidable fragment (infinite or over-cap decodings).
    pub skipped: usize,
    pub failure_count: usize,
    /// The smallest failures, at most [`MAX_REPORTED_FAILURES`].
    pub failures: Vec<Failure>,
}

impl SuiteReport {
    pub fn is_clean(&self) -> bool {
        self.failure_count == 0
    }
}

enum Outcome {
    Pass,
    Skip,
    Fail(Failure),
}

fn pass_if(
    ok: bool,
    size: usize,
    subject: impl FnOnce() -> String,
    detail: impl FnOnce() -> String,
) -> Outcome {
    if ok {
        Outcome::Pass
    } else {
        Outcome::Fail(Failure {
            size,
            subject: subject(),
            detail: detail(),
        })
    }
}

fn failed(size: usize, subject: String, detail: impl ToString) -> Outcome {
    Outcome::Fail(Failure {
        size,
        subject,
        detail: detail.to_string(),
    })
}

/// Runs suites over one population, built on first use.
pub struct Harness {
    bounds: PopulationBounds,
    cfg: TowerConfig,
    seed: Option<u64>,
    population: OnceLock<CodePopulation>,
}

impl Harness {
    pub fn new(bounds: PopulationBounds, cfg: TowerConfig) -> Self {
        Harness {
            bounds,
            cfg,
            seed: None,
            population: OnceLock::new(),
        }
    }

    /// Shuffles the evaluation order. Reports do not depend on it.
    pub fn with_seed(mut self, seed: Option<u64>) -> Self {
        self.seed = seed;
        self
    }

    pub fn bounds(&self) -> PopulationBounds {
        self.bounds
    }

    pub fn population(&self) -> Result<&CodePopulation> {
        if let Some(p) = self.population.get() {
            return Ok(p);
        }
        let built = enumerate(self.bounds)?;
        Ok(self.population.get_or_init(|| built))
    }

    pub fn run(&self, suite: Suite) -> Result<SuiteReport> {
        let outcomes = match suite {
            Suite::RankAdequacy => self.rank_adequacy()?,
            Suite::PiSigmaClosure => self.pi_sigma_closure()?,
            Suite::DecodeCounts => self.decode_counts()?,
            Suite::IdClosure => self.id_closure()?,
            Suite::Limits => self.limits()?,
            Suite::Colimits => self.colimits()?,
            Suite::QuotientStability => self.quotient_stability()?,
            Suite::Cumulativity => self.cumulativity()?,
            Suite::LiftPi => self.lift_pi()?,
            Suite::Adjunction => self.adjunction()?,
            Suite::MaclanePushout => self.maclane_pushout()?,
        };
        Ok(self.report(suite, outcomes))
    }

    pub fn run_all(&self) -> Result<Vec<SuiteReport>> {
        Suite::ALL.into_iter().map(|s| self.run(s)).collect()
    }

    fn report(&self, suite: Suite, outcomes: Vec<Outcome>) -> SuiteReport {
        let mut report = SuiteReport {
            suite,
            max_size: self.bounds.max_size,
            max_fin: self.bounds.max_fin,
            checked: 0,
            passed: 0,
            skipped: 0,
            failure_count: 0,
            failures: Vec::new(),
        };
        let mut failures = Vec::new();
        for o in outcomes {
            match o {
                Outcome::Pass => {
                    report.checked += 1;
                    report.passed += 1;
                }
                Outcome::Skip => report.skipped += 1,
                Outcome::Fail(f) => {
                    report.checked += 1;
                    failures.push(f);
                }
            }
        }
        failures.sort();
        report.failure_count = failures.len();
        failures.truncate(MAX_REPORTED_FAILURES);
        report.failures = failures;
        report
    }

    /// Checks every item in parallel, in seed order when a seed is set.
    fn sweep<T, F>(&self, mut items: Vec<T>, check: F) -> Vec<Outcome>
    where
        T: Send + Sync,
        F: Fn(&T) -> Vec<Outcome> + Sync + Send,
    {
        if let Some(seed) = self.seed {
            items.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        }
        items.par_iter().flat_map_iter(&check).collect()
    }

    fn codes(&self) -> Result<Vec<&Code>> {
        Ok(self.population()?.iter().collect())
    }

    /// Population members with at most `bound` elements, with their elements.
    fn small_carriers(&self, bound: u128) -> Result<Vec<(&Code, Vec<Value>)>> {
        Ok(self
            .population()?
            .codes
            .par_iter()
            .filter_map(|c| match decode::cardinality(c) {
                Ok(Cardinality::Finite(n)) if n <= bound => {
                    decode::elements(c).ok().map(|xs| (c, xs))
                }
                _ => None,
            })
            .collect())
    }

    fn fin_objects(&self, bound: u64) -> Vec<Code> {
        (0..=bound.min(self.bounds.max_fin))
            .map(Code::fin)
            .collect()
    }

    fn rank_adequacy(&self) -> Result<Vec<Outcome>> {
        let pop = self.population()?;
        let stages = GenerationStages::compute(pop);
        let mut out = vec![pass_if(
            stages.is_monotone() && stages.never_entered() == 0,
            0,
            || "stage sequence".into(),
            || {
                format!(
                    "monotone = {}, never entered = {}",
                    stages.is_monotone(),
                    stages.never_entered()
                )
            },
        )];
        out.extend(self.sweep(self.codes()?, |c| {
            let c = *c;
            vec![match stages.stage(c) {
                Ok(g) => {
                    let r = rk(c);
                    pass_if(
                        g == r,
                        c.size(),
                        || print(c),
                        || format!("generation rank {g}, rk {r}"),
                    )
                }
                Err(e) => failed(c.size(), print(c), e),
            }]
        }));
        Ok(out)
    }

    fn pi_sigma_closure(&self) -> Result<Vec<Outcome>> {
        let cfg = &self.cfg;
        let at_zero = |c: &Code| level_member(c, 0, cfg).unwrap_or(false);
        let check = |domain: &Code, fam: &Family| -> Vec<Outcome> {
            if !at_zero(domain) || !fam.codes().into_iter().all(at_zero) {
                return vec![Outcome::Skip];
            }
            [Code::pi as fn(Code, Family) -> Result<Code>, Code::sigma]
                .into_iter()
                .map(|former| match former(domain.clone(), fam.clone()) {
                    Ok(c) => pass_if(
                        at_zero(&c),
                        c.size(),
                        || print(&c),
                        || format!("rank {} leaves level 0", rk(&c)),
                    ),
                    Err(e) => failed(domain.size(), print(domain), e),
                })
                .collect()
        };

        // Every Π/Σ member, rebuilt from its parts.
        let formers: Vec<&Code> = self
            .codes()?
            .into_iter()
            .filter(|c| matches!(c, Code::Pi(..) | Code::Sigma(..)))
            .collect();
        let mut out = self.sweep(formers, |c| match c {
            Code::Pi(d, fam) | Code::Sigma(d, fam) => check(d, fam),
            _ => unreachable!(),
        });

        // All constant-family pairs among the small members, beyond the size bound.
        let half: Vec<&Code> = self
            .codes()?
            .into_iter()
            .filter(|c| c.size() <= self.bounds.max_size.div_ceil(2))
            .collect();
        let pairs: Vec<(&Code, &Code)> = half
            .iter()
            .flat_map(|a| half.iter().map(move |b| (*a, *b)))
            .collect();
        out.extend(self.sweep(pairs, |(a, b)| check(a, &Family::constant((*b).clone()))));
        Ok(out)
    }

    fn decode_counts(&self) -> Result<Vec<Outcome>> {
        let formers: Vec<&Code> = self
            .codes()?
            .into_iter()
            .filter(|c| matches!(c, Code::Pi(..) | Code::Sigma(..)))
            .collect();
        Ok(self.sweep(formers, |c| vec![check_counting_law(c)]))
    }

    fn id_closure(&self) -> Result<Vec<Outcome>> {
        let carriers = self.small_carriers(SMALL_CARRIER)?;
        Ok(self.sweep(carriers, |(u, xs)| {
            let mut out = Vec::new();
            // Canonical elements are pairwise distinct.
            for (i, s) in xs.iter().enumerate() {
                for (j, t) in xs.iter().enumerate() {
                    out.push(check_identity(u, s, t, i == j));
                }
            }
            // Raw class members of a quotient, compared by the stepwise closure.
            if let Code::Quot(inner, rel) = u {
                match decode::elements(inner)
                    .and_then(|ys| Ok((limits::closure::iterated_partition(&ys, rel)?.0, ys)))
                {
                    Ok((partition, ys)) => {
                        for a in &ys {
                            for b in &ys {
                                let same = partition.representative_of(a)
                                    == partition.representative_of(b);
                                out.push(check_identity(
                                    u,
                                    &Value::class(a.clone()),
                                    &Value::class(b.clone()),
                                    same,
                                ));
                            }
                        }
                    }
                    Err(e) => out.push(failed(u.size(), print(u), e)),
                }
            }
            out
        }))
    }

    fn quotient_stability(&self) -> Result<Vec<Outcome>> {
        let mut cases: Vec<(Code, RelFamily)> = Vec::new();
        // Every relation on Fin n, n ≤ 4.
        for n in 0..=SMALL_CARRIER as u64 {
            let xs: Vec<Value> = (0..n).map(Value::Fin).collect();
            let all_pairs: Vec<(Value, Value)> = xs
                .iter()
                .flat_map(|a| xs.iter().map(move |b| (a.clone(), b.clone())))
                .collect();
            for mask in 0u64..(1 << all_pairs.len()) {
                let rel: Vec<(Value, Value)> = (0..all_pairs.len())
                    .filter(|i| mask & (1 << i) != 0)
                    .map(|i| all_pairs[i].clone())
                    .collect();
                cases.push((Code::fin(n), rel.into()));
            }
        }
        // Every other small member: the empty and full relations, each single
        // pair, and a chain through all elements (which needs transitivity).
        for (u, xs) in self.small_carriers(SMALL_CARRIER)? {
            if matches!(u, Code::Fin(_)) {
                continue;
            }
            let all_pairs: Vec<(Value, Value)> = xs
                .iter()
                .flat_map(|a| xs.iter().map(move |b| (a.clone(), b.clone())))
                .collect();
            let chain: Vec<(Value, Value)> = xs
                .windows(2)
                .map(|w| (w[0].clone(), w[1].clone()))
                .collect();
            let mut rels: BTreeSet<RelFamily> = BTreeSet::new();
            rels.insert(RelFamily::new());
            rels.insert(all_pairs.clone().into());
            rels.insert(chain.into());
            rels.extend(all_pairs.into_iter().map(|p| RelFamily::from(vec![p])));
            cases.extend(rels.into_iter().map(|r| (u.clone(), r)));
        }
        // Quotients already in the population.
        for c in self.codes()? {
            if let Code::Quot(u, rel) = c {
                cases.push(((**u).clone(), rel.clone()));
            }
        }
        let cfg = &self.cfg;
        Ok(self.sweep(cases, |(u, rel)| vec![check_quotient(u, rel, cfg)]))
    }

    fn limits(&self) -> Result<Vec<Outcome>> {
        let mut out = Vec::new();
        let fins = self.fin_objects(u64::MAX);

        // Equalisers of every parallel pair between small Fin objects.
        let parallel = parallel_pairs(&fins)?;
        out.extend(self.sweep(parallel.clone(), |(f, g)| vec![check_equaliser(f, g)]));
        let small: Vec<_> = parallel
            .into_iter()
            .filter(|(f, _)| within(f, UNIVERSAL_CHECK_FIN))
            .collect();
        out.extend(self.sweep(small, |(f, g)| {
            vec![check_universal_of(
                Universal::Limit,
                Diagram::parallel(f.clone(), g.clone()),
                &map_subject(f, g),
            )]
        }));

        // Products: counting law across small members, universal property over Fin objects.
        let half: Vec<&Code> = self
            .codes()?
            .into_iter()
            .filter(|c| c.size() <= self.bounds.max_size.div_ceil(2))
            .collect();
        let pairs: Vec<(&Code, &Code)> = half
            .iter()
            .flat_map(|a| half.iter().map(move |b| (*a, *b)))
            .collect();
        out.extend(self.sweep(pairs, |(a, b)| vec![check_product_count(a, b)]));
        let fin_pairs: Vec<(Code, Code)> = self
            .fin_objects(UNIVERSAL_CHECK_FIN)
            .iter()
            .flat_map(|a| {
                self.fin_objects(UNIVERSAL_CHECK_FIN)
                    .into_iter()
                    .map(move |b| (a.clone(), b))
            })
            .collect();
        out.extend(self.sweep(fin_pairs, |(a, b)| {
            vec![check_universal_of(
                Universal::Limit,
                Ok(Diagram::discrete(a.clone(), b.clone())),
                &format!("{} x {}", print(a), print(b)),
            )]
        }));

        // Terminal object.
        out.push(check_universal_of(
            Universal::Limit,
            Ok(Diagram::default()),
            "terminal",
        ));
        let mut objects: Vec<&Code> = self
            .small_carriers(TERMINAL_CHECK_BOUND)?
            .into_iter()
            .map(|(c, _)| c)
            .collect();
        let extra: Vec<Code> = (0..=4).map(Code::fin).collect();
        objects.extend(extra.iter());
        out.extend(self.sweep(objects, |a| {
            vec![match all_maps(a, &Code::Star) {
                Ok(maps) => pass_if(
                    maps.len() == 1 && limits::terminal_map(a).is_ok_and(|t| t == maps[0]),
                    a.size(),
                    || print(a),
                    || format!("{} maps to *", maps.len()),
                ),
                Err(e) => failed(a.size(), print(a), e),
            }]
        }));
        Ok(out)
    }

    fn colimits(&self) -> Result<Vec<Outcome>> {
        let mut out = Vec::new();

        // Initial object.
        out.push(check_universal_of(
            Universal::Colimit,
            Ok(Diagram::default()),
            "initial",
        ));
        let mut objects: Vec<&Code> = self
            .small_carriers(TERMINAL_CHECK_BOUND)?
            .into_iter()
            .map(|(c, _)| c)
            .collect();
        let extra: Vec<Code> = (0..=4).map(Code::fin).collect();
        objects.extend(extra.iter());
        out.extend(self.sweep(objects, |a| {
            vec![match all_maps(&Code::Zero, a) {
                Ok(maps) => pass_if(
                    maps.len() == 1 && maps[0] == limits::initial_map(a),
                    a.size(),
                    || print(a),
                    || format!("{} maps from 0", maps.len()),
                ),
                Err(e) => failed(a.size(), print(a), e),
            }]
        }));

        // Coproducts of Fin objects.
        let fins = self.fin_objects(u64::MAX);
        let fin_pairs: Vec<(Code, Code)> = fins
            .iter()
            .flat_map(|a| fins.iter().map(move |b| (a.clone(), b.clone())))
            .collect();
        out.extend(self.sweep(fin_pairs, |(a, b)| {
            vec![check_universal_of(
                Universal::Colimit,
                Ok(Diagram::discrete(a.clone(), b.clone())),
                &format!("{} + {}", print(a), print(b)),
            )]
        }));

        // Coequalisers of every parallel pair.
        out.extend(self.sweep(parallel_pairs(&fins)?, |(p, q)| {
            vec![check_universal_of(
                Universal::Colimit,
                Diagram::parallel(p.clone(), q.clone()),
                &map_subject(p, q),
            )]
        }));

        // Pushouts of small spans.
        let spans: Vec<_> = spans(&self.fin_objects(UNIVERSAL_CHECK_FIN))?;
        out.extend(
            self.sweep(spans, |(f, g)| match Diagram::span(f.clone(), g.clone()) {
                Ok(d) => vec![check_universal_of(
                    Universal::Colimit,
                    Ok(d),
                    &map_subject(f, g),
                )],
                Err(e) => vec![failed(0, map_subject(f, g), e)],
            }),
        );
        Ok(out)
    }

    fn cumulativity(&self) -> Result<Vec<Outcome>> {
        let cfg = &self.cfg;
        let codes: Vec<Code> = self.population()?.codes.clone();
        let report = check_cumulativity(&codes, cfg);
        let mut out: Vec<Outcome> = report
            .violations
            .iter()
            .map(|v| {
                failed(
                    0,
                    v.code.clone(),
                    format!(
                        "member at level {} but not at {}",
                        v.member_at, v.missing_at
                    ),
                )
            })
            .collect();
        let violating: HashSet<&str> = report.violations.iter().map(|v| v.code.as_str()).collect();
        out.extend((violating.len()..report.codes_checked).map(|_| Outcome::Pass));

        // Lifting is strictly functorial from the least level upwards.
        out.extend(self.sweep(self.codes()?, |c| {
            let c = *c;
            let levels = cfg.levels();
            let base = match LeveledCode::least(c.clone(), cfg) {
                Ok(b) => b,
                Err(_) => return vec![Outcome::Skip],
            };
            let fail = |detail: String| vec![failed(c.size(), print(c), detail)];
            match lift(&base, base.level(), cfg) {
                Ok(same) if same == base => {}
                _ => return fail("lift to the same level is not the identity".into()),
            }
            for j in base.level()..levels {
                let Ok(mid) = lift(&base, j, cfg) else {
                    return fail(format!("lift to level {j} failed"));
                };
                if mid.code() != c {
                    return fail(format!("lift to level {j} changed the code"));
                }
                for k in j..levels {
                    match (lift(&mid, k, cfg), lift(&base, k, cfg)) {
                        (Ok(a), Ok(b)) if a == b => {}
                        _ => {
                            return fail(format!(
                                "lift through level {j} to {k} disagrees with the direct lift"
                            ))
                        }
                    }
                }
            }
            vec![Outcome::Pass]
        }));
        Ok(out)
    }

    fn lift_pi(&self) -> Result<Vec<Outcome>> {
        let cfg = &self.cfg;
        let pis: Vec<&Code> = self
            .codes()?
            .into_iter()
            .filter(|c| matches!(c, Code::Pi(..)))
            .collect();
        Ok(self.sweep(pis, |c| {
            let Code::Pi(dom, fam) = *c else {
                unreachable!()
            };
            let Some(from) = cfg.least_level(c) else {
                return vec![Outcome::Skip];
            };
            let top = cfg.levels() - 1;
            BTreeSet::from([from, (from + 1).min(top), top])
                .into_iter()
                .map(|to| match check_pi_preservation(dom, fam, from, to, cfg) {
                    Ok(ok) => pass_if(
                        ok,
                        c.size(),
                        || print(c),
                        || format!("lift {from} -> {to} is not preserved"),
                    ),
                    Err(e) => failed(c.size(), print(c), e),
                })
                .collect()
        }))
    }

    fn adjunction(&self) -> Result<Vec<Outcome>> {
        let cfg = &self.cfg;
        let targets = [
            PropCode::new(Code::fin(0), 0, cfg)?,
            PropCode::new(Code::fin(1), 0, cfg)?,
        ];
        let props: Vec<&Code> = self.codes()?.into_iter().filter(|c| is_hprop(c)).collect();
        let top = cfg.levels() - 1;
        Ok(self.sweep(props, |c| {
            let c = *c;
            let Some(least) = cfg.least_level(c) else {
                return vec![Outcome::Skip];
            };
            if decode::elements(c).is_err() {
                return vec![Outcome::Skip];
            }
            let mut out = Vec::new();
            for level in [least, top] {
                let p = match PropCode::new(c.clone(), level, cfg) {
                    Ok(p) => p,
                    Err(e) => return vec![failed(c.size(), print(c), e)],
                };
                let report = check_adjunction(std::slice::from_ref(&p), &targets, cfg);
                out.push(pass_if(
                    report.is_clean(),
                    c.size(),
                    || print(c),
                    || report.violations.join("; "),
                ));
                out.push(match prop_res(&p, cfg) {
                    Ok(r) => pass_if(
                        rk(r.prop.code()).is_zero() && r.prop.level() == 0,
                        c.size(),
                        || print(c),
                        || {
                            format!(
                                "resized to {} of rank {}",
                                print(r.prop.code()),
                                rk(r.prop.code())
                            )
                        },
                    ),
                    Err(e) => failed(c.size(), print(c), e),
                });
            }
            out
        }))
    }

    fn maclane_pushout(&self) -> Result<Vec<Outcome>> {
        let spans = spans(&self.fin_objects(u64::MAX))?;
        Ok(self.sweep(spans, |(f, g)| vec![check_pushout(f, g)]))
    }
}

/// Runs one suite on a fresh population under the default tower.
pub fn run_suite(suite: Suite, bounds: PopulationBounds) -> Result<SuiteReport> {
    Harness::new(bounds, TowerConfig::default()).run(suite)
}

fn within(f: &MapTable, bound: u64) -> bool {
    [f.src(), f.dst()]
        .iter()
        .all(|c| matches!(c, Code::Fin(n) if *n <= bound))
}

fn map_subject(f: &MapTable, g: &MapTable) -> String {
    let graph = |m: &MapTable| {
        m.graph()
            .iter()
            .map(|(x, y)| format!("{}->{}", print_value(x), print_value(y)))
            .collect::<Vec<_>>()
            .join(" ")
    };
    format!(
        "{} -> {} / {} -> {}: [{}] [{}]",
        print(f.src()),
        print(f.dst()),
        print(g.src()),
        print(g.dst()),
        graph(f),
        graph(g)
    )
}

fn maps_between(src: &Code, dst: &Code) -> Result<Vec<MapTable>> {
    all_maps(src, dst)
}

/// Every pair of maps `R -> S` between the given objects.
fn parallel_pairs(objects: &[Code]) -> Result<Vec<(MapTable, MapTable)>> {
    let mut out = Vec::new();
    for r in objects {
        for s in objects {
            let maps = maps_between(r, s)?;
            for f in &maps {
                for g in &maps {
                    out.push((f.clone(), g.clone()));
                }
            }
        }
    }
    Ok(out)
}

/// Every span `B <- A -> C` between the given objects.
fn spans(objects: &[Code]) -> Result<Vec<(MapTable, MapTable)>> {
    let mut out = Vec::new();
    for a in objects {
        for b in objects {
            let left = maps_between(a, b)?;
            for c in objects {
                let right = maps_between(a, c)?;
                for f in &left {
                    for g in &right {
                        out.push((f.clone(), g.clone()));
                    }
                }
            }
        }
    }
    Ok(out)
}

fn check_universal_of(kind: Universal, diagram: Result<Diagram>, subject: &str) -> Outcome {
    let diagram = match diagram {
        Ok(d) => d,
        Err(e) => return failed(0, subject.to_string(), e),
    };
    let size = diagram.objects.iter().map(Code::size).sum();
    let cone = match kind {
        Universal::Limit => diagram.limit(),
        Universal::Colimit => diagram.colimit(),
    };
    match cone {
        Ok(cone) => {
            let report = check_universal(kind, &diagram, &cone, &default_targets(&diagram));
            pass_if(
                report.holds,
                size,
                || subject.to_string(),
                || report.counterexample.unwrap_or_default(),
            )
        }
        Err(e) => failed(size, subject.to_string(), e),
    }
}

/// Element count, by enumeration when within the cap and from the exact
/// cardinality otherwise; `None` when infinite.
fn count(c: &Code) -> Option<u128> {
    match decode::elements(c) {
        Ok(xs) => Some(xs.len() as u128),
        Err(_) => decode::cardinality(c).ok().and_then(Cardinality::finite),
    }
}

fn check_counting_law(c: &Code) -> Outcome {
    let (Code::Pi(dom, fam) | Code::Sigma(dom, fam)) = c else {
        unreachable!("only Π and Σ codes are swept")
    };
    let Ok(domain) = decode::elements(dom) else {
        return Outcome::Skip;
    };
    let mut fibres = Vec::with_capacity(domain.len());
    for x in &domain {
        match fam.at(x).and_then(count) {
            Some(n) => fibres.push(n),
            None => return Outcome::Skip,
        }
    }
    let expected = match c {
        Code::Pi(..) => fibres.iter().try_fold(1u128, |acc, &n| acc.checked_mul(n)),
        _ => fibres.iter().try_fold(0u128, |acc, &n| acc.checked_add(n)),
    };
    let Some(expected) = expected else {
        return Outcome::Skip;
    };
    match count(c) {
        Some(actual) => pass_if(
            actual == expected,
            c.size(),
            || print(c),
            || format!("decoded {actual} elements, counting law gives {expected}"),
        ),
        None => Outcome::Skip,
    }
}

fn check_identity(u: &Code, s: &Value, t: &Value, expected: bool) -> Outcome {
    let subject = || format!("Id {} {} {}", print(u), print_value(s), print_value(t));
    let size = u.size() + 1;
    let id = match Code::id(u.clone(), s.clone(), t.clone()) {
        Ok(id) => id,
        Err(e) => return failed(size, subject(), e),
    };
    let decoded = match decode::elements(&id) {
        Ok(xs) => xs,
        Err(e) => return failed(size, subject(), e),
    };
    let eq = match decode::value_eq(u, s, t) {
        Ok(eq) => eq,
        Err(e) => return failed(size, subject(), e),
    };
    pass_if(
        decoded.len() <= 1 && (decoded.len() == 1) == expected && eq == expected,
        size,
        subject,
        || {
            format!(
                "{} elements, value_eq {eq}, expected {expected}",
                decoded.len()
            )
        },
    )
}

fn check_quotient(u: &Code, rel: &RelFamily, cfg: &TowerConfig) -> Outcome {
    let size = 1 + u.size() + rel.len();
    let q = match Code::quot(u.clone(), rel.clone()) {
        Ok(q) => q,
        Err(e) => return failed(size, format!("Quot {}", print(u)), e),
    };
    let subject = || print(&q);
    let expected_rank = sup([rk(u), RankOrdinal::ZERO]).add_omega();
    if rk(&q) != expected_rank || rk(&q) > rk(u).add_omega() {
        return failed(
            size,
            subject(),
            format!("rank {} but expected {expected_rank}", rk(&q)),
        );
    }
    for level in 0..cfg.levels() {
        let before = level_member(u, level, cfg).unwrap_or(false);
        let after = level_member(&q, level, cfg).unwrap_or(false);
        if before && !after {
            return failed(
                size,
                subject(),
                format!("carrier at level {level} but quotient is not"),
            );
        }
    }
    let closure = match quotient_closure(u, rel) {
        Ok(c) => c,
        Err(e) => return failed(size, subject(), e),
    };
    let carrier_len = closure.partition.blocks.iter().map(Vec::len).sum::<usize>();
    if !closure.agree() {
        return failed(size, subject(), "union-find and stepwise closure disagree");
    }
    if closure.steps > carrier_len {
        return failed(
            size,
            subject(),
            format!(
                "closure took {} steps on {carrier_len} elements",
                closure.steps
            ),
        );
    }
    match decode::elements(&q) {
        Ok(xs) => pass_if(xs.len() == closure.partition.len(), size, subject, || {
            format!(
                "{} classes decoded, {} blocks",
                xs.len(),
                closure.partition.len()
            )
        }),
        Err(e) => failed(size, subject(), e),
    }
}

fn check_equaliser(f: &MapTable, g: &MapTable) -> Outcome {
    let size = f.src().size() + f.dst().size();
    let subject = || map_subject(f, g);
    // The filter compares graph entries directly: Fin values are canonical.
    let filtered: Vec<Value> = f
        .graph()
        .iter()
        .filter(|(a, fa)| g.graph()[*a] == **fa)
        .map(|(a, _)| a.clone())
        .collect();
    let included = limits::equaliser_inclusion(f, g).and_then(|incl| {
        decode::elements(incl.src())?
            .iter()
            .map(|v| Ok(incl.apply(v).cloned().unwrap_or(Value::Star)))
            .collect::<Result<Vec<_>>>()
    });
    match (included, limits::pointwise_agreement(f, g)) {
        (Ok(incl), Ok(agree)) => {
            pass_if(incl == filtered && agree == filtered, size, subject, || {
                format!(
                    "{} included, {} agree, {} filtered",
                    incl.len(),
                    agree.len(),
                    filtered.len()
                )
            })
        }
        (Err(e), _) | (_, Err(e)) => failed(size, subject(), e),
    }
}

fn check_product_count(a: &Code, b: &Code) -> Outcome {
    let (Ok(xs), Ok(ys)) = (decode::elements(a), decode::elements(b)) else {
        return Outcome::Skip;
    };
    let prod = limits::product(a.clone(), b.clone());
    match decode::elements(&prod) {
        Ok(ps) => pass_if(
            ps.len() == xs.len() * ys.len(),
            prod.size(),
            || print(&prod),
            || {
                format!(
                    "{} elements, expected {} x {}",
                    ps.len(),
                    xs.len(),
                    ys.len()
                )
            },
        ),
        Err(Error::ExtensionTooLarge { .. }) => Outcome::Skip,
        Err(e) => failed(prod.size(), print(&prod), e),
    }
}

/// Tagged union of the two codomains, glued by relabelling until stable.
fn direct_pushout_size(f: &MapTable, g: &MapTable) -> Result<usize> {
    let left = decode::elements(f.dst())?;
    let right = decode::elements(g.dst())?;
    let mut label: Vec<usize> = (0..left.len() + right.len()).collect();
    let position = |xs: &[Value], v: &Value| {
        xs.iter()
            .position(|x| x == v)
            .expect("map images lie in the codomain")
    };
    loop {
        let mut changed = false;
        for (a, fa) in f.graph() {
            let i = position(&left, fa);
            let j = left.len() + position(&right, &g.graph()[a]);
            let (lo, hi) = (label[i].min(label[j]), label[i].max(label[j]));
            if lo != hi {
                for l in label.iter_mut().filter(|l| **l == hi) {
                    *l = lo;
                }
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    Ok(label.into_iter().collect::<HashSet<_>>().len())
}

fn check_pushout(f: &MapTable, g: &MapTable) -> Outcome {
    let size = f.src().size() + f.dst().size() + g.dst().size();
    let subject = || map_subject(f, g);
    let result = (|| -> Result<(usize, usize, bool)> {
        let p = limits::pushout(f, g)?;
        let decoded = decode::elements(&p)?.len();
        let direct = direct_pushout_size(f, g)?;
        let (l, r) = limits::pushout_maps(f, g)?;
        let commutes = l.after(f)? == r.after(g)?;
        Ok((decoded, direct, commutes))
    })();
    match result {
        Ok((decoded, direct, commutes)) => {
            pass_if(decoded == direct && commutes, size, subject, || {
                format!("pushout has {decoded} elements, direct colimit {direct}, square commutes: {commutes}")
            })
        }
        Err(e) => failed(size, subject(), e),
    }
}
