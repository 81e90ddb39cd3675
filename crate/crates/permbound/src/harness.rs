//! Corpus-level runs: verification over degree ranges, the `f(n)` table,
//! construction sweeps and the wreath-lemma family.
//!
//! Per-group work runs on a rayon pool of `jobs` threads; results are
//! collected in catalog order, so output never depends on scheduling.

use std::ops::RangeInclusive;
use std::path::PathBuf;

use anyhow::{Context, Result};
use permbound_core::bounds::{analyze, check_main_lemma, lemma_instances, AnalysisConfig};
use permbound_core::construct::{soluble_transitive_alt, two_orbit_pprime, TwoOrbitOutcome};
use permbound_core::enumerate::{EnumerateOptions, FTableRow, Mode, TransitiveCatalog};
use permbound_core::genrank::{d_bounds, d_exact};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::catalog::load_or_enumerate;
use crate::report::{
    CheckJson, ConstructionJson, FTableCsvRow, GroupReport, InfeasibilityJson, RankJson,
    SCHEMA_VERSION,
};

#[derive(Clone, Debug)]
pub struct Harness {
    pub cfg: AnalysisConfig,
    pub mode: Mode,
    /// Worker threads; `None` uses every available core.
    pub jobs: Option<usize>,
    pub cache: Option<PathBuf>,
}

impl Default for Harness {
    fn default() -> Self {
        Harness {
            cfg: AnalysisConfig::default(),
            mode: Mode::Exhaustive,
            jobs: None,
            cache: None,
        }
    }
}

impl Harness {
    fn pool(&self) -> Result<rayon::ThreadPool> {
        let mut b = rayon::ThreadPoolBuilder::new();
        if let Some(j) = self.jobs {
            b = b.num_threads(j.max(1));
        }
        b.build().context("building thread pool")
    }

    fn install<T: Send>(&self, f: impl FnOnce() -> Result<T> + Send) -> Result<T> {
        self.pool()?.install(f)
    }

    pub fn catalog(&self, degree: usize) -> Result<TransitiveCatalog> {
        let opts = EnumerateOptions {
            mode: self.mode,
            ..EnumerateOptions::default()
        };
        load_or_enumerate(degree, &opts, self.cache.as_deref())
            .with_context(|| format!("degree {degree}"))
    }

    /// Catalogs for every degree in `degrees`, computed in parallel.
    pub fn catalogs(&self, degrees: RangeInclusive<usize>) -> Result<Vec<TransitiveCatalog>> {
        self.install(|| {
            degrees
                .collect::<Vec<_>>()
                .into_par_iter()
                .map(|n| self.catalog(n))
                .collect()
        })
    }

    pub fn analyze_catalog(&self, catalog: &TransitiveCatalog) -> Result<Vec<GroupReport>> {
        self.install(|| {
            catalog
                .entries
                .par_iter()
                .map(|e| {
                    let a = analyze(&e.group, &self.cfg).with_context(|| e.id())?;
                    Ok(GroupReport::new(&e.id(), &e.group, &a, &self.cfg))
                })
                .collect()
        })
    }

    /// Runs every check on every catalog group of the given degrees.
    pub fn verify(&self, degrees: RangeInclusive<usize>) -> Result<VerifyReport> {
        let catalogs = self.catalogs(degrees)?;
        let mut summary = Vec::new();
        let mut groups = Vec::new();
        for cat in &catalogs {
            let reports = self.analyze_catalog(cat)?;
            let count = |status: &str| {
                reports
                    .iter()
                    .flat_map(|r| &r.checks)
                    .filter(|c| c.status == status)
                    .count()
            };
            summary.push(DegreeSummary {
                degree: cat.degree,
                groups: reports.len(),
                checks: reports.iter().map(|r| r.checks.len()).sum(),
                violations: count("fails"),
                upper_bound_checks: count("upper-bound check"),
                inconclusive: count("inconclusive"),
                skipped: count("skipped"),
            });
            groups.extend(reports);
        }
        Ok(VerifyReport {
            schema_version: SCHEMA_VERSION,
            mode: self.mode.as_str().to_string(),
            seed: self.cfg.seed,
            degrees: summary,
            groups,
        })
    }

    /// `f(n)` for `n` in `degrees` over complete catalogs, with `d` computed by
    /// exhaustive tuple search and cross-checked by the randomized method.
    pub fn ftable(&self, degrees: RangeInclusive<usize>) -> Result<Vec<FTableEntry>> {
        let catalogs = self.catalogs(degrees)?;
        let mut out = Vec::new();
        for cat in &catalogs {
            let ranks: Vec<(usize, (usize, usize))> = self.install(|| {
                cat.entries
                    .par_iter()
                    .map(|e| {
                        let cap = self.cfg.d_cap.max(e.group.order_u64().unwrap_or(u64::MAX));
                        let exact = d_exact(&e.group, cap).with_context(|| e.id())?;
                        let rnd = d_bounds(&e.group, self.cfg.trials, self.cfg.seed);
                        Ok((exact.upper, (rnd.lower, rnd.upper)))
                    })
                    .collect::<Result<_>>()
            })?;
            let row = FTableRow::best(
                cat.degree,
                cat.entries
                    .iter()
                    .zip(&ranks)
                    .map(|(e, r)| (e.id(), r.0, &e.order)),
            )
            .with_context(|| format!("degree {} catalog is empty", cat.degree))?;
            let w = cat
                .entries
                .iter()
                .position(|e| e.id() == row.witness)
                .expect("witness comes from the catalog");
            let (exact, (lo, hi)) = ranks[w];
            out.push(FTableEntry {
                n: row.n,
                f: row.f,
                f_over_n2: row.f_over_n2,
                witness: row.witness,
                witness_order: row.witness_order.to_string(),
                witness_d_exhaustive: exact,
                witness_d_randomized: [lo, hi],
                groups: ranks.len(),
                randomized_certified: ranks.iter().filter(|(d, (l, u))| l == u && u == d).count(),
                disagreements: ranks.iter().filter(|(d, (l, u))| d < l || d > u).count(),
            });
        }
        Ok(out)
    }

    /// Builds and checks every construction for `3 <= n <= max_n` (all
    /// `n <= max_n` for the two-orbit family) and every prime in `primes`.
    pub fn construction_survey(&self, max_n: usize, primes: &[u64]) -> Result<ConstructionSurvey> {
        let alt: Vec<ConstructionJson> = self.install(|| {
            (3..=max_n)
                .into_par_iter()
                .map(|n| {
                    let c = soluble_transitive_alt(n)?;
                    Ok(ConstructionJson::new("soluble-alt", n, None, None, &c))
                })
                .collect::<Result<_>>()
        })?;
        let params: Vec<(usize, u64, bool)> = (1..=max_n)
            .flat_map(|n| {
                primes
                    .iter()
                    .flat_map(move |&p| [(n, p, false), (n, p, true)])
            })
            .collect();
        let two: Vec<TwoOrbitJson> = self.install(|| {
            params
                .par_iter()
                .map(|&(n, p, in_alt)| {
                    Ok(match two_orbit_pprime(n, p, in_alt)? {
                        TwoOrbitOutcome::Witness(c) => TwoOrbitJson::Witness(
                            ConstructionJson::new("two-orbit", n, Some(p), Some(in_alt), &c),
                        ),
                        TwoOrbitOutcome::Infeasible(inf) => {
                            TwoOrbitJson::Infeasible(InfeasibilityJson::from(&inf))
                        }
                    })
                })
                .collect::<Result<_>>()
        })?;

        let witnesses = || {
            two.iter().filter_map(|t| match t {
                TwoOrbitJson::Witness(c) => Some(c),
                TwoOrbitJson::Infeasible(_) => None,
            })
        };
        let summary = SurveySummary {
            soluble_alt_total: alt.len(),
            soluble_alt_paper: alt.iter().filter(|c| c.strategy == "paper").count(),
            soluble_alt_fallback: alt.iter().filter(|c| c.strategy == "fallback").count(),
            soluble_alt_unverified: alt.iter().filter(|c| !c.verified).map(|c| c.n).collect(),
            two_mod_four_gap: alt
                .iter()
                .filter(|c| c.uses_two_mod_four_gap)
                .map(|c| c.n)
                .collect(),
            two_orbit_total: two.len(),
            two_orbit_paper: witnesses().filter(|c| c.strategy == "paper").count(),
            two_orbit_fallback: witnesses().filter(|c| c.strategy == "fallback").count(),
            two_orbit_unverified: witnesses().filter(|c| !c.verified).count(),
            two_orbit_infeasible: two
                .iter()
                .filter_map(|t| match t {
                    TwoOrbitJson::Infeasible(i) => Some((i.n, i.p, i.in_alt)),
                    TwoOrbitJson::Witness(_) => None,
                })
                .collect(),
        };
        Ok(ConstructionSurvey {
            schema_version: SCHEMA_VERSION,
            summary,
            soluble_alt: alt,
            two_orbit: two,
        })
    }

    /// The wreath-lemma inequality on the built-in instance family.
    pub fn lemma_survey(&self) -> Result<Vec<LemmaRecord>> {
        let instances = lemma_instances();
        self.install(|| {
            instances
                .par_iter()
                .map(|inst| {
                    let largeness = inst.verify_largeness()?;
                    let check =
                        check_main_lemma(inst, &self.cfg).with_context(|| inst.name.clone())?;
                    let rank = |r: &permbound_core::genrank::GenRankResult| RankJson {
                        lower: r.lower,
                        upper: r.upper,
                        exact: r.exact,
                        method: if r.exact { "exhaustive" } else { "randomized" }.to_string(),
                        witness: r.witness.iter().map(ToString::to_string).collect(),
                    };
                    Ok(LemmaRecord {
                        name: inst.name.clone(),
                        degree: inst.g.degree(),
                        order: inst.g.order().to_string(),
                        largeness,
                        a_r: check.a_r,
                        v: inst.v.degree(),
                        d_g: rank(&check.d_g),
                        d_s: rank(&check.d_s),
                        check: CheckJson::from(&check.report),
                    })
                })
                .collect()
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DegreeSummary {
    pub degree: usize,
    pub groups: usize,
    pub checks: usize,
    pub violations: usize,
    pub upper_bound_checks: usize,
    pub inconclusive: usize,
    pub skipped: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub schema_version: u32,
    pub mode: String,
    pub seed: u64,
    pub degrees: Vec<DegreeSummary>,
    pub groups: Vec<GroupReport>,
}

impl VerifyReport {
    pub fn violations(&self) -> impl Iterator<Item = (&GroupReport, &CheckJson)> {
        self.groups
            .iter()
            .flat_map(|g| g.violations().map(move |c| (g, c)))
    }

    pub fn all_hold(&self) -> bool {
        self.violations().next().is_none()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FTableEntry {
    pub n: usize,
    pub f: f64,
    pub f_over_n2: f64,
    pub witness: String,
    pub witness_order: String,
    pub witness_d_exhaustive: usize,
    /// `[lower, upper]` from random tuples plus the abelianization bound.
    pub witness_d_randomized: [usize; 2],
    pub groups: usize,
    /// Groups whose randomized bounds collapse to the exhaustive value.
    pub randomized_certified: usize,
    /// Groups whose exhaustive value lies outside the randomized bounds.
    pub disagreements: usize,
}

impl FTableEntry {
    pub fn csv_row(&self) -> FTableCsvRow {
        FTableCsvRow {
            n: self.n,
            f: self.f,
            f_over_n2: self.f_over_n2,
            witness: self.witness.clone(),
        }
    }

    pub fn methods_agree(&self) -> bool {
        let [lo, hi] = self.witness_d_randomized;
        lo == hi && hi == self.witness_d_exhaustive
    }
}

pub fn write_ftable_csv<W: std::io::Write>(rows: &[FTableEntry], w: W) -> Result<()> {
    let mut wr = csv::Writer::from_writer(w);
    for r in rows {
        wr.serialize(r.csv_row())?;
    }
    wr.flush()?;
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "lowercase")]
pub enum TwoOrbitJson {
    Witness(ConstructionJson),
    Infeasible(InfeasibilityJson),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SurveySummary {
    pub soluble_alt_total: usize,
    pub soluble_alt_paper: usize,
    pub soluble_alt_fallback: usize,
    pub soluble_alt_unverified: Vec<usize>,
    /// Degrees `n = 2 mod 4` whose witness is not the tower recipe.
    pub two_mod_four_gap: Vec<usize>,
    pub two_orbit_total: usize,
    pub two_orbit_paper: usize,
    pub two_orbit_fallback: usize,
    pub two_orbit_unverified: usize,
    pub two_orbit_infeasible: Vec<(usize, u64, bool)>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConstructionSurvey {
    pub schema_version: u32,
    pub summary: SurveySummary,
    pub soluble_alt: Vec<ConstructionJson>,
    pub two_orbit: Vec<TwoOrbitJson>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LemmaRecord {
    pub name: String,
    pub degree: usize,
    pub order: String,
    pub largeness: bool,
    pub a_r: usize,
    pub v: usize,
    pub d_g: RankJson,
    pub d_s: RankJson,
    pub check: CheckJson,
}
