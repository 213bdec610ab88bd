//! Verification sweeps over Weyl groups and parabolics, collected into a
//! deterministic report.
//!
//! Work is spread over rayon with order-preserving collects, and every
//! random draw uses its own ChaCha stream, so a report depends only on the
//! configuration and never on the thread count.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::invariants::{
    cell_degree_root, cell_structure, ideal_restriction_weights, order_identity_terms, profile,
    scod, scod_via_levi, tau_pair,
};
use crate::perversity::{
    build_orbit_poset, build_perversity, check_codim_gaps, cover_gaps, PerversityError,
    FULL_PAIR_LIMIT,
};
use crate::rootsys::{CartanType, LatticeVector, RootSystem, RootVec};
use crate::torusmod::{conormal_weights, model_for_cell, run_sweep, scod_via_torus, TorusSweep};
use crate::weyl::{format_word, Parabolic, WeylElement, DEFAULT_CAP};

/// Rank at and below which the order suite enumerates every triple.
pub const ORDER_EXHAUSTIVE_MAX_RANK: usize = 3;
pub const DEFAULT_SAMPLE_SIZE: usize = 100_000;
pub const DEFAULT_ORDER_SEED: u64 = 42;
pub const DEFAULT_TORUS_TRIALS: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Refl,
    Prod,
    Neg,
    Order,
    Identities,
    IdealDegree,
    Codim,
    Torus,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::Refl,
        Suite::Prod,
        Suite::Neg,
        Suite::Order,
        Suite::Identities,
        Suite::IdealDegree,
        Suite::Codim,
        Suite::Torus,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Refl => "refl",
            Suite::Prod => "prod",
            Suite::Neg => "neg",
            Suite::Order => "order",
            Suite::Identities => "identities",
            Suite::IdealDegree => "ideal-degree",
            Suite::Codim => "codim",
            Suite::Torus => "torus",
        }
    }

    /// Whether the suite runs once per parabolic rather than once per system.
    pub fn per_parabolic(self) -> bool {
        matches!(self, Suite::Identities | Suite::IdealDegree | Suite::Codim)
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
            .find(|x| x.name() == s.trim())
            .ok_or_else(|| Error::InvalidConfig(format!("unknown suite {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exhaustive,
    Sample,
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exhaustive" => Ok(Mode::Exhaustive),
            "sample" => Ok(Mode::Sample),
            _ => Err(Error::InvalidConfig(format!("unknown mode {s:?}"))),
        }
    }
}

/// Which parabolics to sweep: every subset of the simple roots, or one
/// subset (0-based).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParabolicChoice {
    All,
    Subset(Vec<usize>),
}

impl Serialize for ParabolicChoice {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            ParabolicChoice::All => s.serialize_str("all"),
            ParabolicChoice::Subset(v) => {
                let one_based: Vec<usize> = v.iter().map(|i| i + 1).collect();
                one_based.serialize(s)
            }
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyConfig {
    pub systems: Vec<CartanType>,
    pub parabolic: ParabolicChoice,
    pub suites: Vec<Suite>,
    pub mode: Mode,
    pub sample_size: usize,
    pub seed: Option<u64>,
    pub torus_trials: usize,
    /// Restrict element sweeps to this 0-based word.
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "ser_word")]
    pub element: Option<Vec<usize>>,
    pub cap: usize,
    #[serde(skip)]
    pub timings: bool,
}

fn ser_word<S: serde::Serializer>(w: &Option<Vec<usize>>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match w {
        Some(w) => s.serialize_str(&format_word(w)),
        None => s.serialize_none(),
    }
}

impl VerifyConfig {
    pub fn new(systems: Vec<CartanType>) -> Self {
        VerifyConfig {
            systems,
            parabolic: ParabolicChoice::All,
            suites: Suite::ALL.to_vec(),
            mode: Mode::Exhaustive,
            sample_size: DEFAULT_SAMPLE_SIZE,
            seed: None,
            torus_trials: DEFAULT_TORUS_TRIALS,
            element: None,
            cap: DEFAULT_CAP,
            timings: false,
        }
    }

    pub fn with_suites(mut self, suites: &[Suite]) -> Self {
        self.suites = suites.to_vec();
        self
    }

    fn validate(&self) -> Result<()> {
        if self.systems.is_empty() && self.suites.iter().any(|s| *s != Suite::Torus) {
            return Err(Error::InvalidConfig("no root system given".into()));
        }
        if self.mode == Mode::Sample && self.seed.is_none() {
            return Err(Error::InvalidConfig("sample mode requires a seed".into()));
        }
        if self.mode == Mode::Sample && self.sample_size == 0 {
            return Err(Error::InvalidConfig("sample size must be positive".into()));
        }
        if self.element.is_some() && self.systems.len() != 1 {
            return Err(Error::InvalidConfig(
                "an element rerun needs exactly one root system".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub system: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub parabolic: Option<String>,
    /// Reduced words and other data needed for a single-element rerun.
    pub witness: BTreeMap<String, String>,
    pub detail: String,
}

/// Per-length tallies: `elements[k]` elements of length `k` were examined and
/// produced `instances[k]` checks.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct LengthProfile {
    pub elements: Vec<u64>,
    pub instances: Vec<u64>,
}

impl LengthProfile {
    fn record(&mut self, length: usize, instances: u64) {
        if self.elements.len() <= length {
            self.elements.resize(length + 1, 0);
            self.instances.resize(length + 1, 0);
        }
        self.elements[length] += 1;
        self.instances[length] += instances;
    }

    fn merge(&mut self, other: &LengthProfile) {
        for (k, (&e, &i)) in other.elements.iter().zip(&other.instances).enumerate() {
            if self.elements.len() <= k {
                self.elements.resize(k + 1, 0);
                self.instances.resize(k + 1, 0);
            }
            self.elements[k] += e;
            self.instances[k] += i;
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub system: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub parabolic: Option<String>,
    pub method: String,
    pub instances: u64,
    pub violations: Vec<Violation>,
    pub coverage: BTreeMap<String, u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub by_length: Option<LengthProfile>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_ms: Option<f64>,
}

impl SuiteReport {
    pub fn pass(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub schema: u32,
    pub pass: bool,
    pub config: VerifyConfig,
    pub suites: Vec<SuiteReport>,
}

impl VerificationReport {
    pub fn total_instances(&self) -> u64 {
        self.suites.iter().map(|s| s.instances).sum()
    }

    pub fn total_violations(&self) -> usize {
        self.suites.iter().map(|s| s.violations.len()).sum()
    }

    pub fn find(&self, suite: Suite, system: &str, parabolic: Option<&str>) -> Option<&SuiteReport> {
        self.suites
            .iter()
            .find(|r| r.suite == suite && r.system == system && r.parabolic.as_deref() == parabolic)
    }
}

/// Accumulator for one sweep block.
#[derive(Debug, Default)]
struct Tally {
    instances: u64,
    violations: Vec<Violation>,
    coverage: BTreeMap<String, u64>,
    by_length: LengthProfile,
}

impl Tally {
    fn bump(&mut self, key: &str) {
        *self.coverage.entry(key.to_string()).or_insert(0) += 1;
    }

    fn merge(mut self, other: Tally) -> Tally {
        self.instances += other.instances;
        self.violations.extend(other.violations);
        for (k, v) in other.coverage {
            *self.coverage.entry(k).or_insert(0) += v;
        }
        self.by_length.merge(&other.by_length);
        self
    }
}

/// Map `f` over `items` in parallel and fold the tallies in input order.
fn sweep<T: Sync, F>(items: &[T], f: F) -> Tally
where
    F: Fn(&T) -> Tally + Sync + Send,
{
    items
        .par_iter()
        .map(f)
        .collect::<Vec<_>>()
        .into_iter()
        .fold(Tally::default(), Tally::merge)
}

struct Ctx<'a> {
    sys: &'a RootSystem,
    name: String,
    parabolic: Option<&'a Parabolic>,
}

impl Ctx<'_> {
    fn violation(&self, witness: &[(&str, String)], detail: String) -> Violation {
        Violation {
            system: self.name.clone(),
            parabolic: self.parabolic.map(Parabolic::label),
            witness: witness.iter().map(|(k, v)| (k.to_string(), v.clone())).collect(),
            detail,
        }
    }

    fn word(&self, w: &WeylElement) -> String {
        self.sys.word_string(w)
    }
}

/// Run every configured suite and assemble the report.
pub fn run_verification(config: &VerifyConfig) -> Result<VerificationReport> {
    config.validate()?;
    let mut suites = Vec::new();
    let mut wanted = config.suites.clone();
    wanted.sort();
    wanted.dedup();

    for &ct in &config.systems {
        let sys = RootSystem::new(ct)?;
        let elements = element_list(&sys, config)?;
        let parabolics = match &config.parabolic {
            ParabolicChoice::All => sys.all_parabolics(),
            ParabolicChoice::Subset(s) => vec![sys.parabolic(s)?],
        };
        for &suite in wanted.iter().filter(|s| **s != Suite::Torus) {
            if suite.per_parabolic() {
                for p in &parabolics {
                    suites.push(timed(config, || run_suite(suite, &sys, Some(p), &elements, config))?);
                }
            } else {
                suites.push(timed(config, || run_suite(suite, &sys, None, &elements, config))?);
            }
        }
    }
    if wanted.contains(&Suite::Torus) {
        suites.push(timed(config, || torus_suite(config))?);
    }
    Ok(VerificationReport {
        schema: 1,
        pass: suites.iter().all(SuiteReport::pass),
        config: config.clone(),
        suites,
    })
}

fn timed<F: FnOnce() -> Result<SuiteReport>>(config: &VerifyConfig, f: F) -> Result<SuiteReport> {
    let start = Instant::now();
    let mut report = f()?;
    if config.timings {
        report.wall_ms = Some(start.elapsed().as_secs_f64() * 1e3);
    }
    Ok(report)
}

/// Elements swept by the per-element suites.
fn element_list(sys: &RootSystem, config: &VerifyConfig) -> Result<Vec<WeylElement>> {
    if let Some(word) = &config.element {
        if let Some(&bad) = word.iter().find(|&&i| i >= sys.rank()) {
            return Err(Error::BadSimpleIndex {
                index: bad,
                rank: sys.rank(),
            });
        }
        return Ok(vec![sys.element_from_word(word)]);
    }
    match config.mode {
        Mode::Exhaustive => sys.enumerate_group(config.cap),
        Mode::Sample => {
            let seed = config.seed.expect("validated");
            Ok((0..config.sample_size)
                .into_par_iter()
                .map(|j| random_element(sys, seed, j as u64))
                .collect())
        }
    }
}

/// Random walk of `3|Φ⁺|` simple reflections on its own RNG stream.
fn random_element(sys: &RootSystem, seed: u64, stream: u64) -> WeylElement {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    let steps = 3 * sys.num_positive();
    (0..steps).fold(sys.identity(), |w, _| sys.mul_simple(&w, rng.gen_range(0..sys.rank())))
}

fn method_name(config: &VerifyConfig) -> String {
    match (&config.element, config.mode) {
        (Some(_), _) => "element".into(),
        (None, Mode::Exhaustive) => "exhaustive".into(),
        (None, Mode::Sample) => format!("sample:{}", config.sample_size),
    }
}

fn run_suite(
    suite: Suite,
    sys: &RootSystem,
    parabolic: Option<&Parabolic>,
    elements: &[WeylElement],
    config: &VerifyConfig,
) -> Result<SuiteReport> {
    let ctx = Ctx {
        sys,
        name: sys.name(),
        parabolic,
    };
    let mut method = method_name(config);
    let mut tally = match suite {
        Suite::Refl => sweep(elements, |w| refl_check(&ctx, w)),
        Suite::Prod => sweep(elements, |w| prod_check(&ctx, w)),
        Suite::Neg => sweep(elements, |w| neg_check(&ctx, w)),
        Suite::Order => {
            let (t, m) = order_suite(&ctx, config)?;
            method = m;
            t
        }
        Suite::Identities => {
            let p = parabolic.expect("per-parabolic suite");
            sweep(elements, |w| identities_check(&ctx, p, w))
        }
        Suite::IdealDegree => {
            let p = parabolic.expect("per-parabolic suite");
            sweep(elements, |w| ideal_degree_check(&ctx, p, w))
        }
        Suite::Codim => {
            let p = parabolic.expect("per-parabolic suite");
            let (t, m) = codim_suite(&ctx, p, elements, config)?;
            method = m;
            t
        }
        Suite::Torus => unreachable!("torus runs once per report"),
    };
    let by_length = matches!(suite, Suite::Refl | Suite::Prod | Suite::Neg)
        .then(|| std::mem::take(&mut tally.by_length));
    Ok(SuiteReport {
        suite,
        system: ctx.name.clone(),
        parabolic: parabolic.map(Parabolic::label),
        method,
        instances: tally.instances,
        violations: tally.violations,
        coverage: tally.coverage,
        by_length,
        wall_ms: None,
    })
}

/// `s_i(x) = x − ⟨α_i∨, x⟩ α_i`.
fn reflect(sys: &RootSystem, i: usize, x: &RootVec) -> RootVec {
    let a = sys.simple_root(i);
    *x - a.scaled(sys.coroot_pairing_int(&a, x))
}

/// Simple indices `i` with `α_i ∈ ψ_same(w)`, i.e. `ℓ(s_i w) > ℓ(w)`.
fn left_ascents(sys: &RootSystem, w: &WeylElement) -> Vec<usize> {
    (0..sys.rank())
        .filter(|&i| sys.simple_mul(i, w).length() > w.length())
        .collect()
}

fn refl_check(ctx: &Ctx, w: &WeylElement) -> Tally {
    let sys = ctx.sys;
    let mut t = Tally::default();
    let (same, opp) = tau_pair(w, sys);
    let ascents = left_ascents(sys, w);
    for &i in &ascents {
        let sw = sys.simple_mul(i, w);
        let (same_sw, opp_sw) = tau_pair(&sw, sys);
        let alpha = sys.simple_root(i);
        t.instances += 1;
        let want_same = reflect(sys, i, &same) + alpha;
        let want_opp = reflect(sys, i, &opp) + alpha;
        if same_sw != want_same || opp_sw != want_opp {
            t.violations.push(ctx.violation(
                &[("w", ctx.word(w)), ("s", format!("s{}", i + 1))],
                format!(
                    "τ(sw) = ({same_sw:?}, {opp_sw:?}) but s·τ(w) + α = ({want_same:?}, {want_opp:?})"
                ),
            ));
        }
    }
    t.by_length.record(w.length(), ascents.len() as u64);
    t
}

fn prod_check(ctx: &Ctx, w: &WeylElement) -> Tally {
    let sys = ctx.sys;
    let mut t = Tally::default();
    let (same, opp) = tau_pair(w, sys);
    let pairing = sys.pairing_int(&same, &opp);
    t.instances = 1;
    if pairing != 0 {
        t.violations.push(ctx.violation(
            &[("w", ctx.word(w))],
            format!("⟨τ_same, τ_opp⟩ = {pairing}"),
        ));
    }
    t.by_length.record(w.length(), 1);
    t
}

/// Which branch of the inductive argument for the sign of `⟨α, τ_opp(w)⟩`
/// handles the pair `(w, α_i)`, with `t` the smallest left descent of `w`.
fn neg_case(sys: &RootSystem, w: &WeylElement, i: usize) -> &'static str {
    let Some(t) = (0..sys.rank()).find(|&t| sys.simple_mul(t, w).length() < w.length()) else {
        return "base";
    };
    let tw = sys.simple_mul(t, w);
    if sys.simple_mul(i, &tw).length() > tw.length() {
        return "case1";
    }
    let stw = sys.simple_mul(i, &tw);
    if sys.simple_mul(t, &stw).length() > stw.length() {
        return "case2";
    }
    match sys.cartan()[i][t] * sys.cartan()[t][i] {
        2 => "case3",
        3 => "case4",
        _ => "case_other",
    }
}

fn neg_check(ctx: &Ctx, w: &WeylElement) -> Tally {
    let sys = ctx.sys;
    let mut t = Tally::default();
    let (_, opp) = tau_pair(w, sys);
    let ascents = left_ascents(sys, w);
    for &i in &ascents {
        t.instances += 1;
        t.bump(neg_case(sys, w, i));
        let v = sys.pairing_int(&sys.simple_root(i), &opp);
        if v > 0 {
            t.violations.push(ctx.violation(
                &[("w", ctx.word(w)), ("alpha", format!("a{}", i + 1))],
                format!("⟨α, τ_opp(w)⟩ = {v} > 0"),
            ));
        }
    }
    t.by_length.record(w.length(), ascents.len() as u64);
    t
}

/// An admissible triple: `s` a right ascent of `v` and `ℓ(vsw) = ℓ(vs) + ℓ(w)`.
struct Triple {
    v: WeylElement,
    s: usize,
    w: WeylElement,
}

fn order_check(ctx: &Ctx, tr: &Triple) -> Tally {
    let sys = ctx.sys;
    let mut t = Tally {
        instances: 1,
        ..Tally::default()
    };
    let vs = sys.mul_simple(&tr.v, tr.s);
    let witness = [
        ("v", ctx.word(&tr.v)),
        ("s", format!("s{}", tr.s + 1)),
        ("w", ctx.word(&tr.w)),
    ];
    if vs.length() != tr.v.length() + 1 || !sys.is_length_additive(&vs, &tr.w) {
        t.violations
            .push(ctx.violation(&witness, "triple is not length additive".into()));
        return t;
    }
    let (lhs, rhs) = order_identity_terms(sys, &tr.v, tr.s, &tr.w);
    if lhs != rhs || lhs <= 0 {
        t.violations.push(ctx.violation(
            &witness,
            format!("difference {lhs}, predicted {rhs}; expected equal and positive"),
        ));
    }
    t
}

fn order_suite(ctx: &Ctx, config: &VerifyConfig) -> Result<(Tally, String)> {
    let sys = ctx.sys;
    let exhaustive = config.mode == Mode::Exhaustive && sys.rank() <= ORDER_EXHAUSTIVE_MAX_RANK;
    if let Some(word) = &config.element {
        // fixed v; every ascent s and every admissible w
        let v = sys.element_from_word(word);
        let group = sys.enumerate_group(config.cap)?;
        let triples = triples_for(sys, &v, &group);
        return Ok((sweep(&triples, |tr| order_check(ctx, tr)), "element".into()));
    }
    if exhaustive {
        let group = sys.enumerate_group(config.cap)?;
        let per_v: Vec<Tally> = group
            .par_iter()
            .map(|v| {
                let triples = triples_for(sys, v, &group);
                triples
                    .iter()
                    .map(|tr| order_check(ctx, tr))
                    .fold(Tally::default(), Tally::merge)
            })
            .collect();
        let t = per_v.into_iter().fold(Tally::default(), Tally::merge);
        return Ok((t, "exhaustive".into()));
    }
    let seed = config.seed.unwrap_or(DEFAULT_ORDER_SEED);
    let group = sys.enumerate_group(config.cap).ok();
    let n = config.sample_size;
    let triples: Vec<Triple> = (0..n)
        .into_par_iter()
        .map(|j| sample_triple(sys, group.as_deref(), seed, j as u64))
        .collect();
    Ok((
        sweep(&triples, |tr| order_check(ctx, tr)),
        format!("sample:{n}:seed={seed}"),
    ))
}

fn triples_for(sys: &RootSystem, v: &WeylElement, group: &[WeylElement]) -> Vec<Triple> {
    let mut out = Vec::new();
    for s in (0..sys.rank()).filter(|&s| !v.has_right_descent(s)) {
        let vs = sys.mul_simple(v, s);
        for w in group {
            if sys.is_length_additive(&vs, w) {
                out.push(Triple {
                    v: v.clone(),
                    s,
                    w: w.clone(),
                });
            }
        }
    }
    out
}

/// `v` uniform (or a long random walk when the group is not listed), `s`
/// uniform among the right ascents of `v`, and `w` a walk of uniform length
/// that keeps `vs·w` reduced.
fn sample_triple(sys: &RootSystem, group: Option<&[WeylElement]>, seed: u64, stream: u64) -> Triple {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    let n = sys.num_positive();
    loop {
        let v = match group {
            Some(g) => g[rng.gen_range(0..g.len())].clone(),
            None => (0..3 * n).fold(sys.identity(), |w, _| sys.mul_simple(&w, rng.gen_range(0..sys.rank()))),
        };
        let ascents: Vec<usize> = (0..sys.rank()).filter(|&s| !v.has_right_descent(s)).collect();
        if ascents.is_empty() {
            continue;
        }
        let s = ascents[rng.gen_range(0..ascents.len())];
        let mut cur = sys.mul_simple(&v, s);
        let target = rng.gen_range(0..=n - cur.length());
        let mut w = sys.identity();
        for _ in 0..target {
            let up: Vec<usize> = (0..sys.rank()).filter(|&t| !cur.has_right_descent(t)).collect();
            let t = up[rng.gen_range(0..up.len())];
            cur = sys.mul_simple(&cur, t);
            w = sys.mul_simple(&w, t);
        }
        return Triple { v, s, w };
    }
}

fn identities_check(ctx: &Ctx, p: &Parabolic, w: &WeylElement) -> Tally {
    let sys = ctx.sys;
    let mut t = Tally::default();
    let fail = |t: &mut Tally, what: &str, detail: String| {
        t.violations
            .push(ctx.violation(&[("w", ctx.word(w))], format!("{what}: {detail}")));
    };
    let two_rho = sys.two_rho();
    let prof = profile(sys, w, p);

    t.instances += 1;
    if prof.tau_same + prof.tau_opp != two_rho {
        fail(&mut t, "sum", format!("τ_same + τ_opp = {:?}", prof.tau_same + prof.tau_opp));
    }
    t.instances += 1;
    let w_two_rho = w.apply(&two_rho);
    if prof.tau_same - prof.tau_opp != w_two_rho {
        fail(&mut t, "difference", format!("τ_same − τ_opp ≠ w(2ρ) = {w_two_rho:?}"));
    }
    t.instances += 1;
    if prof.psi_opp.len() != w.length() {
        fail(&mut t, "length", format!("|ψ_opp| = {} but ℓ = {}", prof.psi_opp.len(), w.length()));
    }
    for i in 0..sys.rank() {
        t.instances += 1;
        let sw = sys.simple_mul(i, w);
        let up = sw.length() == w.length() + 1;
        if !up && sw.length() + 1 != w.length() {
            fail(&mut t, "parity", format!("ℓ(s{}w) = {}", i + 1, sw.length()));
        }
        let in_same = prof.psi_same.contains(&i);
        if up != in_same {
            fail(&mut t, "ascent", format!("ℓ(s{}w) > ℓ(w) is {up} but α ∈ ψ_same is {in_same}", i + 1));
        }
    }
    t.instances += 1;
    if !prof.psi_same_l.iter().all(|j| prof.psi_same.contains(j))
        || !prof.psi_opp_l.iter().all(|j| prof.psi_opp.contains(j))
    {
        fail(&mut t, "inclusion", "L-variant inversion sets are not subsets".into());
    }
    t.instances += 1;
    if let Err(e) = cell_structure(sys, w, p) {
        fail(&mut t, "cell decomposition", e.to_string());
    }
    t.instances += 1;
    let direct = scod(sys, w, p);
    let levi = scod_via_levi(sys, w, p);
    match scod_via_torus(sys, w, p) {
        Ok(torus) if torus == direct && levi == direct => {}
        Ok(torus) => fail(&mut t, "scod", format!("maximal {direct}, levi {levi}, torus {torus}")),
        Err(e) => fail(&mut t, "scod", e.to_string()),
    }
    t
}

fn ideal_degree_check(ctx: &Ctx, p: &Parabolic, w: &WeylElement) -> Tally {
    let sys = ctx.sys;
    let mut t = Tally::default();
    let weights = ideal_restriction_weights(sys, w, p);
    for lambda in &weights {
        t.instances += 1;
        let d = cell_degree_root(sys, lambda);
        if d > -1 {
            t.violations.push(ctx.violation(
                &[("w", ctx.word(w)), ("weight", format!("{lambda:?}"))],
                format!("cell degree {d} > -1"),
            ));
        }
    }
    // the same weights must come out of the torus model of the cell
    let mut expected: Vec<LatticeVector> = weights
        .iter()
        .map(|r| LatticeVector::from_root(r, sys.rank()))
        .collect();
    expected.sort();
    match model_for_cell(sys, w, p) {
        Ok(model) if conormal_weights(&model) == expected => t.bump("torus_bridge_agree"),
        Ok(_) => t.violations.push(ctx.violation(
            &[("w", ctx.word(w))],
            "conormal weights of the cell model differ from the ideal weights".into(),
        )),
        Err(e) => t
            .violations
            .push(ctx.violation(&[("w", ctx.word(w))], e.to_string())),
    }
    t
}

fn codim_suite(
    ctx: &Ctx,
    p: &Parabolic,
    elements: &[WeylElement],
    config: &VerifyConfig,
) -> Result<(Tally, String)> {
    let sys = ctx.sys;
    if config.mode == Mode::Sample || config.element.is_some() {
        let t = sweep(elements, |w| codim_covers_below(ctx, p, w));
        return Ok((t, method_name(config)));
    }
    let poset = build_orbit_poset(sys, p, config.cap)?;
    let graph = &poset.graph;
    let mut t = Tally::default();
    let full = graph.len() <= FULL_PAIR_LIMIT;
    t.instances = if full {
        graph.comparable_pairs().len() as u64
    } else {
        graph.covers.len() as u64
    };
    t.coverage.insert("nodes".into(), graph.len() as u64);
    t.coverage.insert("covers".into(), graph.covers.len() as u64);
    t.coverage.insert("full_pairs".into(), full as u64);
    for g in cover_gaps(graph) {
        t.bump(&format!("cover_gap_{g}"));
    }
    for gap in check_codim_gaps(graph) {
        t.violations.push(ctx.violation(
            &[("lower", gap.lower.clone()), ("upper", gap.upper.clone())],
            format!("scod gap {} − {} < 2", gap.lower_scod, gap.upper_scod),
        ));
    }
    match build_perversity(graph) {
        Ok(_) => t.bump("perversity_ok"),
        // already reported pair by pair
        Err(PerversityError::GapsTooSmall(_)) => {}
        Err(PerversityError::Sandwich {
            lower,
            upper,
            dp,
            dscod,
        }) => t.violations.push(ctx.violation(
            &[("lower", lower), ("upper", upper)],
            format!("perversity sandwich 0 < {dp} < {dscod} fails"),
        )),
    }
    let method = if full { "exhaustive" } else { "exhaustive:covers" };
    Ok((t, method.into()))
}

/// Gap check on the covers of the orbit of `w`: letter deletions of its
/// minimal representative that stay in `W^L` with length one less.
fn codim_covers_below(ctx: &Ctx, p: &Parabolic, w: &WeylElement) -> Tally {
    let sys = ctx.sys;
    let mut t = Tally::default();
    let top = sys.min_coset_rep(w, p);
    let word = sys.reduced_word(&top);
    let top_scod = scod(sys, &top, p);
    for pos in 0..word.len() {
        let mut del = word.clone();
        del.remove(pos);
        let x = sys.element_from_word(&del);
        if x.length() + 1 != top.length() || !sys.is_min_coset_rep(&x, p) {
            continue;
        }
        t.instances += 1;
        let gap = scod(sys, &x, p) - top_scod;
        t.bump(&format!("cover_gap_{gap}"));
        if gap < 2 {
            t.violations.push(ctx.violation(
                &[("lower", ctx.word(&x)), ("upper", ctx.word(&top))],
                format!("scod gap {gap} < 2"),
            ));
        }
    }
    t
}

fn torus_suite(config: &VerifyConfig) -> Result<SuiteReport> {
    let seed = config.seed.unwrap_or(DEFAULT_ORDER_SEED);
    let sweep = TorusSweep::random(config.torus_trials, seed);
    let report = run_sweep(&sweep)?;
    let mut coverage = BTreeMap::new();
    coverage.insert("passed".to_string(), report.passed as u64);
    coverage.insert("single_degree_trials".to_string(), report.single_degree_trials as u64);
    let violations = report
        .failures
        .iter()
        .map(|f| Violation {
            system: "torus".into(),
            parabolic: None,
            witness: [
                ("n".to_string(), f.n.to_string()),
                ("m".to_string(), f.m.to_string()),
                ("mu".to_string(), f.mu.to_string()),
                (
                    "weights".to_string(),
                    f.weights.iter().map(|w| w.to_string()).collect::<Vec<_>>().join(";"),
                ),
            ]
            .into_iter()
            .collect(),
            detail: f.failure.clone().unwrap_or_default(),
        })
        .collect();
    Ok(SuiteReport {
        suite: Suite::Torus,
        system: "torus".into(),
        parabolic: None,
        method: format!("sample:{}:seed={seed}", config.torus_trials),
        instances: report.trials as u64,
        violations,
        coverage,
        by_length: None,
        wall_ms: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(name: &str, suites: &[Suite]) -> VerifyConfig {
        VerifyConfig::new(vec![name.parse().unwrap()]).with_suites(suites)
    }

    #[test]
    fn g2_all_suites_pass() {
        let r = run_verification(&cfg("G2", &Suite::ALL)).unwrap();
        assert!(r.pass, "{:#?}", r.suites.iter().filter(|s| !s.pass()).collect::<Vec<_>>());
    }

    #[test]
    fn g2_neg_hits_case4_and_every_length() {
        let r = run_verification(&cfg("G2", &[Suite::Neg])).unwrap();
        let s = &r.suites[0];
        assert!(s.coverage["case4"] > 0);
        assert!(!s.coverage.contains_key("case_other"));
        let bl = s.by_length.as_ref().unwrap();
        assert_eq!(bl.elements, vec![1, 2, 2, 2, 2, 2, 1]);
        assert_eq!(bl.instances[6], 0);
    }

    #[test]
    fn a1_codim_gap_table() {
        let r = run_verification(&cfg("A1", &[Suite::Codim])).unwrap();
        let borel = r.find(Suite::Codim, "A1", Some("{}")).unwrap();
        assert_eq!(borel.coverage["cover_gap_3"], 1);
        assert_eq!(borel.instances, 1);
    }

    #[test]
    fn sample_mode_requires_seed() {
        let mut c = cfg("A2", &[Suite::Prod]);
        c.mode = Mode::Sample;
        assert!(matches!(run_verification(&c), Err(Error::InvalidConfig(_))));
        c.seed = Some(1);
        c.sample_size = 50;
        assert_eq!(run_verification(&c).unwrap().suites[0].instances, 50);
    }

    #[test]
    fn element_rerun_checks_one_element() {
        let mut c = cfg("B3", &[Suite::Prod, Suite::Order]);
        c.element = Some(vec![0, 1]);
        let r = run_verification(&c).unwrap();
        assert!(r.pass);
        assert_eq!(r.suites[0].instances, 1);
        assert_eq!(r.suites[1].method, "element");
    }

    #[test]
    fn sampled_triples_are_admissible() {
        let sys = RootSystem::of("B4").unwrap();
        let g = sys.enumerate_group(DEFAULT_CAP).unwrap();
        for j in 0..200 {
            let tr = sample_triple(&sys, Some(&g), 7, j);
            let vs = sys.mul_simple(&tr.v, tr.s);
            assert_eq!(vs.length(), tr.v.length() + 1);
            assert!(sys.is_length_additive(&vs, &tr.w));
        }
    }

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("bogus".parse::<Suite>().is_err());
    }
}
