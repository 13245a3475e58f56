//! Orchestration: run the full pipeline per prime and over prime ranges,
//! collect per-step timings, and compare results against the golden per-prime
//! fixture shipped in `data/tables.csv`.

use std::sync::OnceLock;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::classify::{class_count, classify_and_dedupe, CurveRecord};
use crate::error::Error;
use crate::fieldcore::FieldCtx;
use crate::par;
use crate::solver::{filter_nonsingular, solve_cm_zero};
use crate::{cartier, DEFAULT_ORACLE_BOUND, DEFAULT_SEED};

/// Run-wide knobs. The seed feeds every randomized subroutine (factorization
/// probes, modulus search); results are canonicalized, so it affects
/// reproducibility of internals, never the reported output.
#[derive(Clone, Copy, Debug)]
pub struct SearchConfig {
    pub seed: u64,
    /// Largest p accepted by the brute-force oracle.
    pub oracle_bound: u64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            seed: DEFAULT_SEED,
            oracle_bound: DEFAULT_ORACLE_BOUND,
        }
    }
}

/// Outcome of the enumeration for one prime.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerationReport {
    pub p: u64,
    pub p_mod_3: u8,
    /// Number of isomorphism classes over the algebraic closure.
    pub num_classes: usize,
    /// Degree of the gcd of the resultants computed in step 2.
    pub gcd_degree: usize,
    pub records: Vec<CurveRecord>,
    pub t_step1_ms: u64,
    pub t_step2_ms: u64,
    /// Absent for p = 1 mod 3 (no curves to classify).
    pub t_step3_ms: Option<u64>,
    pub t_total_ms: u64,
}

/// Run the three pipeline steps for one prime and time each.
pub fn enumerate_prime(p: u64, config: &SearchConfig) -> Result<EnumerationReport, Error> {
    enumerate_prime_inner(p, config).map_err(|e| e.at_prime(p))
}

fn enumerate_prime_inner(p: u64, config: &SearchConfig) -> Result<EnumerationReport, Error> {
    let ctx = FieldCtx::new(p)?;
    let t0 = Instant::now();
    let matrix = cartier::parametric_cm(&ctx)?;
    let t1 = Instant::now();
    let solution = solve_cm_zero(&matrix, &ctx, config.seed)?;
    let survivors = filter_nonsingular(&solution, &ctx);
    let t2 = Instant::now();
    let records = classify_and_dedupe(&ctx, &survivors, config.seed)?;
    let t3 = Instant::now();

    let num_classes = class_count(&records);
    let gcd_degree = solution.gcd_degree.unwrap_or(0);
    // structural sanity: each class is backed by a verified pair, and every
    // pair's b0 is a gcd root with at most max-deg_a companions in a
    debug_assert!(num_classes <= records.len());
    if let Some(deg) = solution.gcd_degree {
        let max_deg_a = matrix
            .nonzero_entries()
            .iter()
            .filter_map(|(_, e)| e.deg_a())
            .max()
            .unwrap_or(0);
        debug_assert!(solution.pairs.len() <= deg.max(1) * max_deg_a.max(1));
    }

    Ok(EnumerationReport {
        p,
        p_mod_3: (p % 3) as u8,
        num_classes,
        gcd_degree,
        records,
        t_step1_ms: t1.duration_since(t0).as_millis() as u64,
        t_step2_ms: t2.duration_since(t1).as_millis() as u64,
        t_step3_ms: if p % 3 == 1 {
            None
        } else {
            Some(t3.duration_since(t2).as_millis() as u64)
        },
        t_total_ms: t3.duration_since(t0).as_millis() as u64,
    })
}

/// Simple sieve of Eratosthenes.
pub fn sieve_primes(lo: u64, hi: u64) -> Vec<u64> {
    if hi < 2 || hi < lo {
        return Vec::new();
    }
    let n = hi as usize;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for cand in 2..=n {
        if composite[cand] {
            continue;
        }
        if cand as u64 >= lo {
            primes.push(cand as u64);
        }
        let mut m = cand * cand;
        while m <= n {
            composite[m] = true;
            m += cand;
        }
    }
    primes
}

/// Enumerate every prime in [p_min, p_max], in ascending order. Primes are
/// processed independently (in parallel with the default feature); the result
/// order is restored by p, so parallel and sequential runs agree.
pub fn enumerate_range(
    p_min: u64,
    p_max: u64,
    config: &SearchConfig,
) -> Result<Vec<EnumerationReport>, Error> {
    if p_min > p_max {
        return Ok(Vec::new());
    }
    if p_min < 7 {
        return Err(Error::InvalidPrime(p_min));
    }
    let primes = sieve_primes(p_min, p_max);
    let config = *config;
    let mut reports = par::try_map_collect(primes, move |p| enumerate_prime(p, &config))?;
    reports.sort_by_key(|r| r.p);
    Ok(reports)
}

/// One golden row of the published count tables.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FixtureRow {
    pub p: u64,
    pub p_mod_3: u8,
    pub num_classes: usize,
    pub gcd_degree: usize,
}

static FIXTURE: OnceLock<Vec<FixtureRow>> = OnceLock::new();

/// The golden per-prime counts for every prime 17 <= p < 1000, parsed from
/// the CSV shipped with the crate.
pub fn fixture_rows() -> &'static [FixtureRow] {
    FIXTURE.get_or_init(|| {
        let raw = include_str!("../data/tables.csv");
        let mut rows = Vec::new();
        for (idx, line) in raw.lines().enumerate() {
            if idx == 0 {
                assert_eq!(
                    line, "p,p_mod_3,num_classes,gcd_degree",
                    "fixture header drifted"
                );
                continue;
            }
            if line.trim().is_empty() {
                continue;
            }
            let mut parts = line.split(',');
            let mut next = || {
                parts
                    .next()
                    .expect("fixture row has four fields")
                    .trim()
                    .parse::<u64>()
                    .expect("fixture field is numeric")
            };
            rows.push(FixtureRow {
                p: next(),
                p_mod_3: next() as u8,
                num_classes: next() as usize,
                gcd_degree: next() as usize,
            });
        }
        rows.sort_by_key(|r| r.p);
        rows
    })
}

pub fn fixture_row(p: u64) -> Option<FixtureRow> {
    fixture_rows()
        .binary_search_by_key(&p, |r| r.p)
        .ok()
        .map(|i| fixture_rows()[i])
}

/// A disagreement between a computed report and the fixture.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Discrepancy {
    pub p: u64,
    /// "num_classes" or "gcd_degree".
    pub quantity: &'static str,
    pub expected: usize,
    pub got: usize,
}

impl std::fmt::Display for Discrepancy {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "p={}: {} expected {}, got {}",
            self.p, self.quantity, self.expected, self.got
        )
    }
}

/// Result of comparing reports against the fixture. Timing columns are never
/// compared. Primes missing from the fixture are listed as uncovered, which
/// is not a failure.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FixtureComparison {
    pub discrepancies: Vec<Discrepancy>,
    pub uncovered: Vec<u64>,
}

impl FixtureComparison {
    pub fn is_clean(&self) -> bool {
        self.discrepancies.is_empty()
    }
}

/// Compare (num_classes, gcd_degree) of each report with the fixture.
pub fn check_against_fixture(reports: &[EnumerationReport]) -> FixtureComparison {
    let mut out = FixtureComparison::default();
    for report in reports {
        let Some(row) = fixture_row(report.p) else {
            out.uncovered.push(report.p);
            continue;
        };
        if report.num_classes != row.num_classes {
            out.discrepancies.push(Discrepancy {
                p: report.p,
                quantity: "num_classes",
                expected: row.num_classes,
                got: report.num_classes,
            });
        }
        if report.gcd_degree != row.gcd_degree {
            out.discrepancies.push(Discrepancy {
                p: report.p,
                quantity: "gcd_degree",
                expected: row.gcd_degree,
                got: report.gcd_degree,
            });
        }
    }
    out
}
