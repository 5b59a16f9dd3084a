//! Randomised and exhaustive self-checks with a JSON report.

use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::comatlas::{all_families, build_orbit_poset, CominusculeFamily, FamilyKind};
use crate::error::{Error, Result};
use crate::exactla::int;
use crate::isolab::{
    act, build_hasse, classify, degeneration_witness, enumerate_orbits, oracle, orbit_dim,
    random_group_element, representative, IsoContext, OrbitTriplet,
};
use crate::io::tangent_json;
use crate::rootsys::RootSystem;
use crate::weylcomb::exhaustive_cascade_length;

/// Deliberate bugs used to check that the suites notice them.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Fault {
    /// Flips the sign of the `h^2` term of the orbit dimension formula.
    DimSign,
}

impl FromStr for Fault {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dim-sign" => Ok(Fault::DimSign),
            _ => Err(Error::Parse(format!("unknown fault `{s}`"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub seed: u64,
    /// Families of rank up to this bound for the table cross-check; `None` skips it.
    pub max_rank: Option<usize>,
    /// Isotropic Grassmannians for the invariance and witness suites.
    pub contexts: Vec<IsoContext>,
    /// Largest `N` for the exhaustive dimension check.
    pub max_dim_n: usize,
    /// Random group elements per orbit.
    pub samples: usize,
    pub fault: Option<Fault>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            seed: 42,
            max_rank: Some(8),
            contexts: vec![IsoContext::new(4, 3).expect("valid")],
            max_dim_n: 5,
            samples: 100,
            fault: None,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub name: String,
    pub checks: usize,
    pub failures: usize,
    /// First failing case in enumeration order.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Value>,
}

impl SuiteReport {
    fn new(name: &str) -> Self {
        SuiteReport {
            name: name.into(),
            checks: 0,
            failures: 0,
            counterexample: None,
        }
    }

    fn check(&mut self, ok: bool, case: impl FnOnce() -> Value) {
        self.checks += 1;
        if !ok {
            self.failures += 1;
            if self.counterexample.is_none() {
                self.counterexample = Some(case());
            }
        }
    }

    fn merge(mut self, other: SuiteReport) -> Self {
        self.checks += other.checks;
        self.failures += other.failures;
        if self.counterexample.is_none() {
            self.counterexample = other.counterexample;
        }
        self
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fault: Option<Fault>,
    pub passed: bool,
    pub suites: Vec<SuiteReport>,
}

fn claimed_dim(ctx: &IsoContext, o: OrbitTriplet, fault: Option<Fault>) -> Result<i64> {
    let d = orbit_dim(ctx, o)? as i64;
    Ok(match fault {
        Some(Fault::DimSign) => d + 2 * (o.h * o.h) as i64,
        None => d,
    })
}

fn model_d(kind: FamilyKind) -> usize {
    match kind {
        FamilyKind::Grassmannian { k, .. } => k,
        FamilyKind::Quadric { .. } | FamilyKind::CayleyPlane => 2,
        FamilyKind::Lagrangian { n } => n,
        FamilyKind::Spinor { n, .. } => n / 2,
        FamilyKind::Freudenthal => 3,
    }
}

/// Cascade length against the family models and clique search, and the secant dimension bound.
pub fn table_suite(max_rank: usize) -> SuiteReport {
    let families: Vec<CominusculeFamily> = all_families(max_rank);
    families
        .par_iter()
        .map(|f| {
            let mut rep = SuiteReport::new("table");
            let sys = RootSystem::new(f.dynkin);
            let exhaustive = exhaustive_cascade_length(&sys, f.node).unwrap_or(usize::MAX);
            let bound = (2 * f.dim_x + 1).min(f.ambient_dim);
            let poset = build_orbit_poset(f);
            let case = || {
                json!({
                    "family": f.name, "dynkin": f.dynkin.to_string(), "node": f.node,
                    "d": f.d, "exhaustive": exhaustive, "sigma2_dim": f.sigma2_dim,
                })
            };
            rep.check(f.d == model_d(f.kind), case);
            rep.check(f.d == exhaustive, case);
            rep.check(f.sigma2_dim <= bound, case);
            rep.check(poset.is_acyclic() && poset.is_transitively_reduced(), case);
            rep
        })
        .reduce(|| SuiteReport::new("table"), SuiteReport::merge)
}

/// Closed-form orbit dimensions against the rank of the infinitesimal action.
pub fn dimension_suite(max_n: usize, fault: Option<Fault>) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new("dimensions");
    for n in 3..=max_n {
        for k in 2..n {
            let ctx = IsoContext::new(n, k)?;
            for o in enumerate_orbits(&ctx) {
                let x = representative(&ctx, o)?;
                let oracle_dim = oracle::orbit_dim_infinitesimal(&ctx, &x)? as i64;
                let claimed = claimed_dim(&ctx, o, fault)?;
                rep.check(claimed == oracle_dim, || {
                    json!({
                        "context": ctx.name(), "orbit": o, "formula": claimed,
                        "infinitesimal": oracle_dim,
                    })
                });
            }
        }
    }
    Ok(rep)
}

fn orbit_seed(seed: u64, ctx: &IsoContext, index: usize) -> u64 {
    seed ^ ((ctx.n() as u64) << 48) ^ ((ctx.k() as u64) << 40) ^ index as u64
}

/// `classify(g . x) = classify(x)` for orbit representatives and random parabolic `g`.
pub fn invariance_suite(ctx: &IsoContext, samples: usize, seed: u64) -> Result<SuiteReport> {
    let orbits = enumerate_orbits(ctx);
    let reports = orbits
        .par_iter()
        .enumerate()
        .map(|(i, &o)| -> Result<SuiteReport> {
            let mut rep = SuiteReport::new("invariance");
            let mut rng = ChaCha8Rng::seed_from_u64(orbit_seed(seed, ctx, i));
            let x = representative(ctx, o)?;
            for _ in 0..samples {
                let g = random_group_element(ctx, &mut rng);
                let y = act(ctx, &g, &x)?;
                let got = classify(ctx, &y)?;
                rep.check(got == o, || {
                    json!({
                        "context": ctx.name(), "orbit": o, "classified": got,
                        "image": serde_json::from_str::<Value>(&tangent_json(ctx, &y)).ok(),
                    })
                });
            }
            Ok(rep)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(reports
        .into_iter()
        .fold(SuiteReport::new("invariance"), SuiteReport::merge))
}

/// Every closure edge has a curve whose points lie in the upper orbit and whose limit is lower.
pub fn witness_suite(ctx: &IsoContext) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new("witnesses");
    let hasse = build_hasse(ctx);
    for e in &hasse.edges {
        let (lo, up) = (hasse.nodes[e.lower].triplet, hasse.nodes[e.upper].triplet);
        let w = match degeneration_witness(ctx, lo, up) {
            Ok(w) => w,
            Err(err) => {
                rep.check(false, || json!({ "context": ctx.name(), "edge": [lo, up], "error": err.to_string() }));
                continue;
            }
        };
        for eps in [1, 2, 7] {
            let got = classify(ctx, &w.at(&int(eps)))?;
            rep.check(got == up, || {
                json!({ "context": ctx.name(), "edge": [lo, up], "epsilon": eps, "classified": got })
            });
        }
        let got = classify(ctx, &w.limit())?;
        rep.check(got == lo, || {
            json!({ "context": ctx.name(), "edge": [lo, up], "limit": got })
        });
    }
    Ok(rep)
}

pub fn run(cfg: &VerifyConfig) -> Result<VerifyReport> {
    let mut suites = Vec::new();
    if let Some(r) = cfg.max_rank {
        suites.push(table_suite(r));
    }
    if !cfg.contexts.is_empty() {
        suites.push(dimension_suite(cfg.max_dim_n, cfg.fault)?);
        let mut inv = SuiteReport::new("invariance");
        let mut wit = SuiteReport::new("witnesses");
        for ctx in &cfg.contexts {
            inv = inv.merge(invariance_suite(ctx, cfg.samples, cfg.seed)?);
            wit = wit.merge(witness_suite(ctx)?);
        }
        suites.push(inv);
        suites.push(wit);
    }
    Ok(VerifyReport {
        seed: cfg.seed,
        fault: cfg.fault,
        passed: suites.iter().all(SuiteReport::passed),
        suites,
    })
}
