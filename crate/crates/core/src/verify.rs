//! Verification harness: runs selected check suites for one Cartan type
//! and assembles a deterministic report.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cartan::CartanType;
use crate::cascade::{compute_cascade, verify_cascade, Cascade};
use crate::coadjoint::{
    random_equivariance_sample, random_torus_point, verify_equivariance, verify_isotropy, verify_open_orbit,
};
use crate::error::{Error, Result};
use crate::invariants::{
    default_max_degree, random_oracle_sample, verify_generators, verify_group_invariance, verify_multiplicity_one,
    verify_torus_restriction, weight_spectrum, Spectrum,
};
use crate::irrep::{dimension_bound, weyl_dimension};
use crate::lipswolf::{verify_joseph, verify_lambda_routes, verify_lipsman_wolf, LipsmanWolfReport};
use crate::report::{Status, VerificationReport};
use crate::rootsys::{RootSystem, Weight};

/// Size of `S^D(n)` above which the invariant-ring checks are skipped.
pub const INVARIANT_MONOMIAL_LIMIT: u128 = 150_000;
/// Positive-root count above which the coadjoint sample checks are skipped.
pub const COADJOINT_ROOT_LIMIT: usize = 120;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckId {
    T1,
    T2,
    T3,
    T4,
    T6,
    T7,
    T8,
    T9,
    Joseph,
}

impl CheckId {
    pub const ALL: [CheckId; 9] = [
        CheckId::T1,
        CheckId::T2,
        CheckId::T3,
        CheckId::T4,
        CheckId::T6,
        CheckId::T7,
        CheckId::T8,
        CheckId::T9,
        CheckId::Joseph,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CheckId::T1 => "t1",
            CheckId::T2 => "t2",
            CheckId::T3 => "t3",
            CheckId::T4 => "t4",
            CheckId::T6 => "t6",
            CheckId::T7 => "t7",
            CheckId::T8 => "t8",
            CheckId::T9 => "t9",
            CheckId::Joseph => "joseph",
        }
    }

    fn stream(self) -> u64 {
        self as u64 + 1
    }

    pub fn needs_spectrum(self) -> bool {
        matches!(self, CheckId::T6 | CheckId::T7 | CheckId::T8 | CheckId::Joseph)
    }
}

impl fmt::Display for CheckId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CheckId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CheckId::ALL
            .into_iter()
            .find(|c| c.name() == s.trim().to_ascii_lowercase())
            .ok_or_else(|| Error::UnknownCheck(s.to_string()))
    }
}

/// Parses a comma-separated check list; the whole list is rejected on any unknown id.
pub fn parse_checks(s: &str) -> Result<Vec<CheckId>> {
    let mut out: Vec<CheckId> = s.split(',').filter(|x| !x.trim().is_empty()).map(str::parse).collect::<Result<_>>()?;
    out.sort();
    out.dedup();
    Ok(out)
}

/// Number of monomials of degree `d` in `n` variables.
pub fn monomial_count(n: usize, d: u32) -> u128 {
    (1..=d as u128).fold(1, |acc, k| acc * (n as u128 + k - 1) / k)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SampleCounts {
    pub torus: usize,
    pub equivariance: usize,
    pub oracle: usize,
    pub lambda_routes: usize,
}

impl Default for SampleCounts {
    fn default() -> Self {
        Self {
            torus: 5,
            equivariance: 20,
            oracle: 20,
            lambda_routes: 20,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub cartan_type: CartanType,
    /// Defaults per type when absent.
    pub max_degree: Option<u32>,
    /// All checks when absent.
    pub checks: Option<Vec<CheckId>>,
    /// Highest weight for `t9`; every fundamental weight within the dimension bound when absent.
    pub weight: Option<Weight>,
    pub seed: u64,
    pub joseph_bound: i64,
    pub samples: SampleCounts,
}

impl RunConfig {
    pub fn new(cartan_type: CartanType) -> Self {
        Self {
            cartan_type,
            max_degree: None,
            checks: None,
            weight: None,
            seed: 0,
            joseph_bound: 2,
            samples: SampleCounts::default(),
        }
    }

    pub fn max_degree(&self) -> u32 {
        self.max_degree.unwrap_or_else(|| {
            let rs = RootSystem::new(self.cartan_type.clone());
            default_max_degree(&rs, &compute_cascade(&rs))
        })
    }

    pub fn checks(&self) -> Vec<CheckId> {
        self.checks.clone().unwrap_or_else(|| CheckId::ALL.to_vec())
    }

    /// Rejects configurations before any computation.
    pub fn validate(&self) -> Result<()> {
        if self.max_degree == Some(0) {
            return Err(Error::Config("max degree must be at least 1".into()));
        }
        if let Some(w) = &self.weight {
            if w.fw().len() != self.cartan_type.rank() {
                return Err(Error::RankMismatch {
                    expected: self.cartan_type.rank(),
                    got: w.fw().len(),
                });
            }
            if !w.is_dominant() {
                return Err(Error::NotDominant(w.fw().to_vec()));
            }
        }
        Ok(())
    }

    fn rng(&self, check: CheckId) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(check.stream());
        rng
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckReport {
    pub id: CheckId,
    pub status: Status,
    pub clauses: Vec<crate::report::Clause>,
    #[serde(skip)]
    pub elapsed: Duration,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunReport {
    #[serde(rename = "type")]
    pub type_name: String,
    pub seed: u64,
    pub max_degree: u32,
    pub status: Status,
    pub checks: Vec<CheckReport>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub lipsman_wolf: Vec<LipsmanWolfReport>,
    #[serde(skip)]
    pub spectrum_elapsed: Option<Duration>,
}

impl RunReport {
    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).unwrap()
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "verify {}  seed {}  max degree {}  => {:?}\n",
            self.type_name, self.seed, self.max_degree, self.status
        );
        if let Some(t) = self.spectrum_elapsed {
            out.push_str(&format!("invariant spectrum computed in {:.3}s\n", t.as_secs_f64()));
        }
        for c in &self.checks {
            out.push_str(&format!("{:<7}{:<8}{:.3}s\n", c.id.name(), status_word(c.status), c.elapsed.as_secs_f64()));
            for cl in &c.clauses {
                out.push_str(&format!("    {:<8}{}: {}\n", status_word(cl.status), cl.id, cl.detail));
                for w in cl.witnesses.iter().take(5) {
                    out.push_str(&format!("        witness {w}\n"));
                }
            }
        }
        out
    }
}

pub fn status_word(s: Status) -> &'static str {
    match s {
        Status::Pass => "pass",
        Status::Fail => "FAIL",
        Status::Skipped => "skipped",
    }
}

struct Context<'a> {
    config: &'a RunConfig,
    rs: RootSystem,
    cascade: Cascade,
    spectrum: Option<Spectrum>,
    spectrum_size: u128,
}

pub fn run(config: &RunConfig) -> Result<RunReport> {
    config.validate()?;
    let rs = RootSystem::new(config.cartan_type.clone());
    let cascade = compute_cascade(&rs);
    let checks = config.checks();
    let npos = rs.num_positive();
    let spectrum_size = monomial_count(npos, config.max_degree());
    let start = Instant::now();
    let spectrum = (checks.iter().any(|c| c.needs_spectrum()) && spectrum_size <= INVARIANT_MONOMIAL_LIMIT)
        .then(|| weight_spectrum(&rs, config.max_degree()));
    let spectrum_elapsed = spectrum.as_ref().map(|_| start.elapsed());
    let ctx = Context {
        config,
        rs,
        cascade,
        spectrum,
        spectrum_size,
    };
    let mut reports = Vec::new();
    let mut lipsman_wolf = Vec::new();
    for &id in &checks {
        let start = Instant::now();
        let clauses = run_check(&ctx, id, &mut lipsman_wolf);
        reports.push(CheckReport {
            id,
            status: clauses.status(),
            clauses: clauses.clauses,
            elapsed: start.elapsed(),
        });
    }
    let status = if reports.iter().any(|r| r.status == Status::Fail) {
        Status::Fail
    } else if reports.iter().all(|r| r.status == Status::Skipped) {
        Status::Skipped
    } else {
        Status::Pass
    };
    Ok(RunReport {
        type_name: config.cartan_type.to_string(),
        seed: config.seed,
        max_degree: config.max_degree(),
        status,
        checks: reports,
        lipsman_wolf,
        spectrum_elapsed,
    })
}

fn run_check(ctx: &Context, id: CheckId, lw: &mut Vec<LipsmanWolfReport>) -> VerificationReport {
    let (rs, c, cfg) = (&ctx.rs, &ctx.cascade, ctx.config);
    let mut rng = cfg.rng(id);
    let npos = rs.num_positive();
    let mut report = VerificationReport::new();
    if matches!(id, CheckId::T2 | CheckId::T3 | CheckId::T4) && npos > COADJOINT_ROOT_LIMIT {
        report.skip(id.name(), format!("{npos} positive roots exceeds the sample-check limit {COADJOINT_ROOT_LIMIT}"));
        return report;
    }
    if id.needs_spectrum() && ctx.spectrum.is_none() {
        report.skip(
            id.name(),
            format!(
                "S^{}(n) has {} monomials, above the limit {INVARIANT_MONOMIAL_LIMIT}",
                cfg.max_degree(),
                ctx.spectrum_size
            ),
        );
        return report;
    }
    match id {
        CheckId::T1 => report.extend(verify_cascade(rs)),
        CheckId::T2 => {
            let pts: Vec<_> = (0..cfg.samples.torus).map(|_| random_torus_point(&mut rng, c.m())).collect();
            report.extend(verify_isotropy(rs, c, &pts));
        }
        CheckId::T3 => {
            let s: Vec<_> = (0..cfg.samples.equivariance)
                .map(|_| random_equivariance_sample(&mut rng, rs, c))
                .collect();
            report.extend(verify_equivariance(rs, c, &s));
        }
        CheckId::T4 => {
            let pts: Vec<_> = (0..cfg.samples.torus).map(|_| random_torus_point(&mut rng, c.m())).collect();
            report.extend(verify_open_orbit(rs, c, &pts));
        }
        CheckId::T6 => {
            let s = ctx.spectrum.as_ref().unwrap();
            report.extend(verify_multiplicity_one(rs, c, s));
            let polys: Vec<_> = s.entries.iter().flat_map(|e| &e.basis).collect();
            let samples: Vec<_> = (0..cfg.samples.oracle).map(|_| random_oracle_sample(&mut rng, rs)).collect();
            report.extend(verify_group_invariance(rs, &polys, &samples));
        }
        CheckId::T7 => report.extend(verify_generators(rs, c, ctx.spectrum.as_ref().unwrap())),
        CheckId::T8 => report.extend(verify_torus_restriction(rs, c, ctx.spectrum.as_ref().unwrap())),
        CheckId::T9 => {
            report.extend(verify_lambda_routes(rs, c, &mut rng, cfg.samples.lambda_routes));
            let weights: Vec<Weight> = match &cfg.weight {
                Some(w) => vec![w.clone()],
                None => (0..rs.rank()).map(|i| rs.fundamental_weight(i)).collect(),
            };
            for w in weights {
                let required = weyl_dimension(rs, &w).unwrap_or(0);
                if required > dimension_bound() {
                    report.skip(
                        &format!("irrep {w}"),
                        format!("dimension {required} above the bound {}", dimension_bound()),
                    );
                    continue;
                }
                match verify_lipsman_wolf(rs, c, &w, &mut rng) {
                    Ok((summary, r)) => {
                        for mut cl in r.clauses {
                            cl.id = format!("{w} {}", cl.id);
                            report.clauses.push(cl);
                        }
                        lw.push(summary);
                    }
                    Err(e) => report.skip(&format!("irrep {w}"), e.to_string()),
                }
            }
        }
        CheckId::Joseph => report.extend(verify_joseph(rs, c, ctx.spectrum.as_ref().unwrap(), cfg.joseph_bound)),
    }
    report
}
