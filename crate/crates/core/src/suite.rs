//! The check suite: named checks over permutative fixtures, each producing a
//! [`Report`] with concrete counterexamples on failure.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::Serialize;

use crate::factop::{check_pullback_functoriality, counit_zigzag, lax_pasting_check, lax_square, psi, segal_witness, FactComparison, FactTower};
use crate::fincat::{comma_probe, Violation};
use crate::finstar::{all_maps, check_factorization, check_nabla};
use crate::permcat::{LawBounds, PermRelCategory};
use crate::permconstr::{alpha_beta_check, counit_functor, perm_build, pi0_unmaterialized, PermBounds, TruncatedSegalFunctor};
use crate::relcat::path_adjunction_witness;
use crate::sset::{epsilon, nerve_truncate, MarkedSSet};

/// At most this many counterexamples are kept per report.
pub const MAX_COUNTEREXAMPLES: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Check {
    Factorization,
    Nabla,
    PermcatLaws,
    FactWitness,
    LaxSquares,
    Segal,
    PermLaws,
    Counit,
    Pi0,
    CommaProbe,
    AlphaBeta,
    Epsilon,
}

impl Check {
    pub const ALL: [Check; 12] = [
        Check::Factorization,
        Check::Nabla,
        Check::PermcatLaws,
        Check::FactWitness,
        Check::LaxSquares,
        Check::Segal,
        Check::PermLaws,
        Check::Counit,
        Check::Pi0,
        Check::CommaProbe,
        Check::AlphaBeta,
        Check::Epsilon,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::Factorization => "factorization",
            Check::Nabla => "nabla",
            Check::PermcatLaws => "permcat-laws",
            Check::FactWitness => "fact-witness",
            Check::LaxSquares => "lax-squares",
            Check::Segal => "segal",
            Check::PermLaws => "perm-laws",
            Check::Counit => "counit",
            Check::Pi0 => "pi0",
            Check::CommaProbe => "comma-probe",
            Check::AlphaBeta => "alpha-beta",
            Check::Epsilon => "epsilon",
        }
    }

    /// The statement the check certifies.
    pub fn anchor(self) -> &'static str {
        match self {
            Check::Factorization => "Fin_*: unique (strongly inert, active) factorization",
            Check::Nabla => "Delta^op = nabla via S |-> u^-1(S)",
            Check::PermcatLaws => "permutative relative category laws",
            Check::FactWitness => "Phi o Psi = id, Psi o Phi(A) -> A",
            Check::LaxSquares => "lax squares of Phi and pullback functoriality",
            Check::Segal => "Segal condition for n |-> Fact_n(C)",
            Check::PermLaws => "Perm_N(Fact(C)) is permutative",
            Check::Counit => "counit Perm(Fact(C)) -> C is strict symmetric monoidal",
            Check::Pi0 => "pi_0(F<1>) = pi_0(Perm_N(F))",
            Check::CommaProbe => "comma categories Tw(C) x_C C/c are contractible",
            Check::AlphaBeta => "Id <- Path(eta_F) -> Fact o Perm(F), beta o sigma = eta",
            Check::Epsilon => "epsilon_X: N(Delta/X) -> X and the marking M_(X,S)",
        }
    }

    /// Checks that do not depend on a fixture.
    pub fn is_global(self) -> bool {
        matches!(self, Check::Factorization | Check::Nabla)
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Check {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Check::ALL.into_iter().find(|c| c.name() == s).ok_or_else(|| {
            let names: Vec<&str> = Check::ALL.iter().map(|c| c.name()).collect();
            format!("unknown check {s:?}; expected one of {}", names.join(", "))
        })
    }
}

/// A named permutative relative category to run checks on.
#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: String,
    pub perm: Arc<PermRelCategory>,
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    /// Truncation bound; individual checks cap it where noted in [`Bounds`].
    pub max_n: usize,
    pub fixtures: Vec<Fixture>,
    /// Empty selects every check.
    pub checks: BTreeSet<Check>,
}

impl RunConfig {
    pub const DEFAULT_MAX_N: usize = 3;

    pub fn new(fixtures: Vec<Fixture>) -> Self {
        RunConfig { max_n: Self::DEFAULT_MAX_N, fixtures, checks: BTreeSet::new() }
    }

    pub fn selected(&self) -> Vec<Check> {
        Check::ALL.into_iter().filter(|c| self.checks.is_empty() || self.checks.contains(c)).collect()
    }

    pub fn bounds(&self) -> Bounds {
        Bounds::from_max_n(self.max_n)
    }
}

/// The bounds each check runs at, derived from `max_n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bounds {
    /// `n, m <= finstar` for factorization.
    pub finstar: usize,
    pub nabla: usize,
    /// Arity of the sampled `Fact` tower.
    pub fact: usize,
    /// `N` for the materialized `Perm_N`.
    pub perm: usize,
    /// `N` for the object-level `pi_0` comparison.
    pub pi0: usize,
    pub eta: usize,
    /// Nerve dimension for `epsilon`.
    pub sset: usize,
}

impl Bounds {
    pub fn from_max_n(max_n: usize) -> Self {
        Bounds {
            finstar: max_n + 1,
            nabla: max_n,
            fact: max_n.min(3),
            perm: max_n.min(2),
            pi0: max_n.min(3),
            eta: max_n.min(2),
            sset: max_n.clamp(1, 3),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub check: String,
    /// `None` for fixture-independent checks.
    pub fixture: Option<String>,
    pub anchor: String,
    pub passed: bool,
    /// `kind: detail`, truncated to [`MAX_COUNTEREXAMPLES`].
    pub counterexamples: Vec<String>,
    pub violation_count: usize,
    pub bounds: BTreeMap<String, usize>,
}

impl Report {
    pub fn new(check: Check, fixture: Option<&str>, violations: &[Violation], bounds: &[(&str, usize)]) -> Self {
        Report {
            check: check.name().to_string(),
            fixture: fixture.map(str::to_string),
            anchor: check.anchor().to_string(),
            passed: violations.is_empty(),
            counterexamples: violations.iter().take(MAX_COUNTEREXAMPLES).map(|v| format!("{}: {}", v.kind, v.detail)).collect(),
            violation_count: violations.len(),
            bounds: bounds.iter().map(|&(k, v)| (k.to_string(), v)).collect(),
        }
    }

    /// `PASS check [fixture]` or `FAIL ...` followed by counterexamples.
    pub fn to_text(&self) -> String {
        let status = if self.passed { "PASS" } else { "FAIL" };
        let fixture = self.fixture.as_deref().map(|f| format!(" [{f}]")).unwrap_or_default();
        let bounds: Vec<String> = self.bounds.iter().map(|(k, v)| format!("{k}={v}")).collect();
        let bounds = if bounds.is_empty() { String::new() } else { format!(" ({})", bounds.join(" ")) };
        let mut out = format!("{status} {}{fixture}{bounds}: {}\n", self.check, self.anchor);
        for c in &self.counterexamples {
            out.push_str(&format!("    {c}\n"));
        }
        if self.violation_count > self.counterexamples.len() {
            out.push_str(&format!("    ... {} more\n", self.violation_count - self.counterexamples.len()));
        }
        out
    }
}

pub fn all_passed(reports: &[Report]) -> bool {
    reports.iter().all(|r| r.passed)
}

/// Runs the selected checks, global ones first, then per fixture in the
/// given order; the result depends only on the configuration. Fixtures are
/// checked on separate threads.
pub fn run_suite(config: &RunConfig) -> Vec<Report> {
    let bounds = config.bounds();
    let selected = config.selected();
    let mut out: Vec<Report> = selected.iter().filter(|c| c.is_global()).map(|&c| run_global(c, &bounds)).collect();
    let per_fixture: Vec<Check> = selected.into_iter().filter(|c| !c.is_global()).collect();
    let per_fixture = &per_fixture;
    std::thread::scope(|scope| {
        let handles: Vec<_> = config
            .fixtures
            .iter()
            .map(|fx| {
                scope.spawn(move || {
                    let mut ctx = FixtureContext::new(fx, bounds);
                    per_fixture.iter().map(|&c| ctx.run(c)).collect::<Vec<_>>()
                })
            })
            .collect();
        for h in handles {
            out.extend(h.join().expect("check thread panicked"));
        }
    });
    out
}

pub fn run_global(check: Check, bounds: &Bounds) -> Report {
    match check {
        Check::Factorization => Report::new(check, None, &check_factorization(bounds.finstar), &[("n", bounds.finstar)]),
        Check::Nabla => Report::new(check, None, &check_nabla(bounds.nabla), &[("n", bounds.nabla)]),
        _ => panic!("{check} needs a fixture"),
    }
}

/// Lazily built data shared between the checks on one fixture: the sampled
/// tower and its functor `n |-> Fact_n(C)`, per bound.
pub struct FixtureContext<'a> {
    pub fixture: &'a Fixture,
    pub bounds: Bounds,
    towers: BTreeMap<usize, (FactTower, Arc<TruncatedSegalFunctor>)>,
}

impl<'a> FixtureContext<'a> {
    pub fn new(fixture: &'a Fixture, bounds: Bounds) -> Self {
        FixtureContext { fixture, bounds, towers: BTreeMap::new() }
    }

    fn sample(&mut self, bound: usize) -> &(FactTower, Arc<TruncatedSegalFunctor>) {
        let perm = self.fixture.perm.clone();
        self.towers.entry(bound).or_insert_with(|| {
            let tower = FactTower::sample(perm, bound);
            let f = Arc::new(TruncatedSegalFunctor::from_fact_tower(&tower));
            (tower, f)
        })
    }

    fn tower(&mut self, bound: usize) -> &FactTower {
        &self.sample(bound).0
    }

    fn functor(&mut self, bound: usize) -> Arc<TruncatedSegalFunctor> {
        self.sample(bound).1.clone()
    }

    pub fn run(&mut self, check: Check) -> Report {
        let name = self.fixture.name.clone();
        let b = self.bounds;
        let (violations, bounds): (Vec<Violation>, Vec<(&str, usize)>) = match check {
            Check::PermcatLaws => (self.fixture.perm.validate_permutative(&LawBounds::default()), vec![]),
            Check::FactWitness => (self.fact_witness(), vec![("n", b.fact)]),
            Check::LaxSquares => (self.lax_squares(), vec![("n", b.fact)]),
            Check::Segal => (self.segal(), vec![("n", b.fact)]),
            Check::PermLaws => (self.perm_laws(), vec![("N", b.perm)]),
            Check::Counit => (self.counit(), vec![("N", b.perm)]),
            Check::Pi0 => (self.pi0(), vec![("N", b.pi0), ("materialized", b.perm)]),
            Check::CommaProbe => (self.comma_probe(), vec![]),
            Check::AlphaBeta => (self.alpha_beta(), vec![("n", b.eta)]),
            Check::Epsilon => (self.epsilon(), vec![("dim", b.sset)]),
            Check::Factorization | Check::Nabla => return run_global(check, &b),
        };
        Report::new(check, Some(&name), &violations, &bounds)
    }

    fn fact_witness(&mut self) -> Vec<Violation> {
        let c = self.fixture.perm.clone();
        let n_max = self.bounds.fact;
        let mut out = Vec::new();
        let objs = c.base().object_count();
        for n in 0..=n_max {
            for code in 0..objs.pow(n as u32) {
                let xs: Vec<usize> = (0..n).map(|i| code / objs.pow(i as u32) % objs).collect();
                match psi(&c, &xs) {
                    Some(a) if a.phi() == xs => {}
                    _ => out.push(Violation::new("phi-psi", format!("Phi(Psi({xs:?})) != {xs:?}"))),
                }
            }
        }
        let tower = self.tower(n_max);
        for level in &tower.levels {
            for a in &level.algebras {
                if let Err(v) = counit_zigzag(&c, a) {
                    out.push(Violation::new(v.kind, format!("{}: {}", a.label(&c), v.detail)));
                }
            }
            let w = FactComparison::new(tower, level.n).witness();
            out.extend(w.verify().into_iter().map(|v| Violation::new(v.kind, format!("<{}>: {}", level.n, v.detail))));
        }
        out
    }

    fn lax_squares(&mut self) -> Vec<Violation> {
        let n_max = self.bounds.fact;
        let tower = self.tower(n_max);
        let mut out = check_pullback_functoriality(tower);
        for n in 0..=n_max {
            for m in 0..=n_max {
                for u in all_maps(n, m) {
                    out.extend(lax_square(tower, &u).check().into_iter().map(|v| Violation::new(v.kind, format!("[{u}]: {}", v.detail))));
                    for k in 0..=n_max.min(2) {
                        if n > 2 || m > 2 {
                            continue;
                        }
                        for v in all_maps(m, k) {
                            out.extend(lax_pasting_check(tower, &u, &v));
                        }
                    }
                }
            }
        }
        out
    }

    fn segal(&mut self) -> Vec<Violation> {
        let n_max = self.bounds.fact;
        let tower = self.tower(n_max);
        (0..=n_max)
            .flat_map(|n| segal_witness(tower, n).verify().into_iter().map(move |v| Violation::new(v.kind, format!("<{n}>: {}", v.detail))))
            .collect()
    }

    fn perm_laws(&mut self) -> Vec<Violation> {
        let n = self.bounds.perm;
        let f = self.functor(n);
        match perm_build(&f, PermBounds::square(n)) {
            Ok(b) => b.perm.validate_permutative(&LawBounds::default()),
            Err(e) => vec![Violation::new("build", e.to_string())],
        }
    }

    fn counit(&mut self) -> Vec<Violation> {
        let n = self.bounds.perm;
        let (tower, f) = self.sample(n);
        let build = match perm_build(&f, PermBounds::square(n)) {
            Ok(b) => b,
            Err(e) => return vec![Violation::new("build", e.to_string())],
        };
        match counit_functor(tower, &build) {
            Ok(counit) => counit.check(tower, &build),
            Err(e) => vec![Violation::new("build", e.to_string())],
        }
    }

    /// Materialized comparison for `N <= perm`, cross-checked against the
    /// object-level one, which alone covers `perm < N <= pi0`.
    fn pi0(&mut self) -> Vec<Violation> {
        let b = self.bounds;
        let (tower, f) = self.sample(b.pi0);
        let mut out = Vec::new();
        let flagged = match TruncatedSegalFunctor::from_fact_tower(tower).with_segal_witnesses(tower) {
            Ok(g) => g.is_segal(),
            Err(bad) => {
                out.extend(bad);
                false
            }
        };
        if !flagged {
            out.push(Violation::new("segal", "functor is not Segal-flagged"));
        }
        for n in 1..=b.pi0 {
            let bounds = PermBounds::square(n);
            let objects_only = match pi0_unmaterialized(&f, bounds) {
                Ok(r) => r,
                Err(e) => {
                    out.push(Violation::new("build", e.to_string()));
                    continue;
                }
            };
            if !objects_only.bijective() {
                out.push(Violation::new("pi0", format!("N = {n}: {objects_only:?}")));
            }
            if n <= b.perm {
                match perm_build(&f, bounds) {
                    Ok(build) => {
                        let r = build.pi0_report();
                        if (r.source_components, r.total_components, r.injective, r.surjective)
                            != (objects_only.source_components, objects_only.total_components, objects_only.injective, objects_only.surjective)
                        {
                            out.push(Violation::new("pi0", format!("N = {n}: materialized {r:?} disagrees with {objects_only:?}")));
                        }
                    }
                    Err(e) => out.push(Violation::new("build", e.to_string())),
                }
            }
        }
        out
    }

    fn comma_probe(&mut self) -> Vec<Violation> {
        let c = self.fixture.perm.base();
        c.objects()
            .filter_map(|o| {
                let r = comma_probe(c, o);
                (!r.looks_contractible()).then(|| {
                    Violation::new(
                        "probe",
                        format!("{}: components {}, H1 rank {}, torsion {:?}", c.object_label(o), r.component_count, r.h1_rank, r.h1_torsion),
                    )
                })
            })
            .collect()
    }

    fn alpha_beta(&mut self) -> Vec<Violation> {
        let n_max = self.bounds.eta;
        let f = self.functor(n_max);
        let mut out = Vec::new();
        let mut maps: Vec<_> = f.action.keys().filter(|u| u.n <= n_max && u.m <= n_max).cloned().collect();
        maps.sort();
        for u in maps {
            let w = path_adjunction_witness(f.apply(&u));
            out.extend(w.check().into_iter().map(|v| Violation::new(v.kind, format!("Path([{u}]): {}", v.detail))));
        }
        match alpha_beta_check(&f, n_max) {
            Ok((_, _, r)) => out.extend(r.witnesses.into_iter().chain(r.section).chain(r.naturality)),
            Err(e) => out.push(Violation::new("build", e.to_string())),
        }
        out
    }

    /// `epsilon` on the nerve of the fixture category, and monotonicity of
    /// the marking in the marked edges: none, weak equivalences, all.
    fn epsilon(&mut self) -> Vec<Violation> {
        let dim = self.bounds.sset;
        let rel = &self.fixture.perm.rel;
        let nerve = nerve_truncate(&rel.base, dim);
        let x = &nerve.sset;
        let eps = epsilon(x, 1, dim);
        let mut out = Vec::new();
        if let Some((kind, k, s)) = eps.simplicial_violation(x) {
            out.push(Violation::new("simplicial", format!("{kind} fails at {k}-simplex {s}")));
        }
        let weq_edges: Vec<usize> = rel.base.morphisms().filter(|&f| rel.is_weq(f)).map(|f| nerve.simplex_of(rel.base.dom(f), &[f])).collect();
        let marked = MarkedSSet::new(x.clone(), &weq_edges);
        if !marked.degenerate_edges_marked() {
            out.push(Violation::new("marking", "a degenerate edge is unmarked"));
        }
        let all: Vec<usize> = (0..x.count(1)).collect();
        let chain = [eps.marking(x, &[]), eps.marking(x, &weq_edges), eps.marking(x, &all)];
        for pair in chain.windows(2) {
            if let Some(m) = (0..pair[0].len()).find(|&m| pair[0][m] && !pair[1][m]) {
                out.push(Violation::new("monotone", format!("morphism {m} of Delta/X loses its mark")));
            }
        }
        let c = &eps.simplices.category;
        if let Some(o) = c.objects().find(|&o| !chain[0][c.identity(o)]) {
            out.push(Violation::new("marking", format!("identity at simplex {o} is unmarked")));
        }
        out
    }
}

/// The built-in fixtures under their file names.
pub fn builtin_fixtures() -> Vec<Fixture> {
    crate::fixtures::perm_fixtures()
        .into_iter()
        .map(|fx| Fixture { name: fx.name.to_string(), perm: Arc::new(fx.perm) })
        .collect()
}
