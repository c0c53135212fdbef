//! Named certificates for the nodal septic scroll computations.
//!
//! Each claim runs one pipeline of `nodal-core` and returns a
//! [`Certificate`]: a verdict, the witnesses it was based on and the
//! configuration needed to reproduce it. [`run_all`] aggregates every
//! registered claim into a [`Report`].

mod claims;

use std::fmt;
use std::time::Instant;

use nodal_core::lattice::GramLattice;
use serde::Serialize;
use serde_json::Value;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

pub const DEFAULT_PRIME: u64 = 1009;
pub const DEFAULT_SLICE_PRIME: u64 = 13;
pub const DEFAULT_RANK_PRIME: u64 = 10007;
pub const DEFAULT_SEED: u64 = 42;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    /// Passed a check that only covers rational points.
    HeuristicPass,
}

impl Verdict {
    pub fn is_success(self) -> bool {
        !matches!(self, Verdict::Fail)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::HeuristicPass => "heuristic-pass",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Config {
    /// Prime for point scans and frame sampling.
    pub prime: u64,
    /// Prime for Grassmannian slices.
    pub slice_prime: u64,
    /// Prime for rank computations.
    pub rank_prime: u64,
    pub seed: u64,
    /// Repeat every rank computation over Q.
    pub exact_rationals: bool,
    /// Replaces the configuration lattice in the lattice claims.
    pub gram_override: Option<GramLattice>,
}

impl Default for Config {
    fn default() -> Self {
        Self {
            prime: DEFAULT_PRIME,
            slice_prime: DEFAULT_SLICE_PRIME,
            rank_prime: DEFAULT_RANK_PRIME,
            seed: DEFAULT_SEED,
            exact_rationals: false,
            gram_override: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Certificate {
    pub claim_id: String,
    pub paper_anchor: String,
    pub prime: u64,
    pub slice_prime: u64,
    pub rank_prime: u64,
    pub seed: u64,
    pub exact_rationals: bool,
    pub verdict: Verdict,
    pub witnesses: Value,
    pub elapsed_ms: u64,
    pub tool_version: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnknownClaim(pub String);

impl fmt::Display for UnknownClaim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "unknown claim '{}'; known claims: {}",
            self.0,
            claim_ids().join(", ")
        )
    }
}

impl std::error::Error for UnknownClaim {}

pub(crate) struct Outcome {
    verdict: Verdict,
    witnesses: Value,
}

pub(crate) type ClaimResult = Result<Outcome, Box<dyn std::error::Error>>;

pub struct Claim {
    pub id: &'static str,
    pub anchor: &'static str,
    check: fn(&Config) -> ClaimResult,
}

pub fn registry() -> &'static [Claim] {
    claims::REGISTRY
}

pub fn claim_ids() -> Vec<&'static str> {
    registry().iter().map(|c| c.id).collect()
}

/// Runs one claim. Mathematical failures, including errors raised by the
/// pipeline, become a `fail` verdict carrying the error as a witness.
pub fn run(claim_id: &str, config: &Config) -> Result<Certificate, UnknownClaim> {
    let claim = registry()
        .iter()
        .find(|c| c.id == claim_id)
        .ok_or_else(|| UnknownClaim(claim_id.to_string()))?;
    let start = Instant::now();
    let outcome = (claim.check)(config).unwrap_or_else(|e| Outcome {
        verdict: Verdict::Fail,
        witnesses: serde_json::json!({ "error": e.to_string() }),
    });
    Ok(Certificate {
        claim_id: claim.id.to_string(),
        paper_anchor: claim.anchor.to_string(),
        prime: config.prime,
        slice_prime: config.slice_prime,
        rank_prime: config.rank_prime,
        seed: config.seed,
        exact_rationals: config.exact_rationals,
        verdict: outcome.verdict,
        witnesses: outcome.witnesses,
        elapsed_ms: start.elapsed().as_millis() as u64,
        tool_version: TOOL_VERSION.to_string(),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub tool_version: String,
    pub config: Config,
    pub certificates: Vec<Certificate>,
    pub all_passed: bool,
}

impl Report {
    pub fn new(config: &Config, certificates: Vec<Certificate>) -> Self {
        Self {
            tool_version: TOOL_VERSION.to_string(),
            config: config.clone(),
            all_passed: certificates.iter().all(|c| c.verdict.is_success()),
            certificates,
        }
    }

    pub fn exit_code(&self) -> i32 {
        if self.all_passed {
            0
        } else {
            1
        }
    }
}

/// Runs every registered claim in registry order.
pub fn run_all(config: &Config) -> Report {
    let certificates = registry()
        .iter()
        .map(|c| run(c.id, config).expect("registered claim"))
        .collect();
    Report::new(config, certificates)
}

/// The report with every timing field zeroed, for comparing runs.
pub fn without_timing(report: &Report) -> Report {
    let mut r = report.clone();
    for c in &mut r.certificates {
        c.elapsed_ms = 0;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_ids_are_unique_and_ordered() {
        let ids = claim_ids();
        assert_eq!(ids.len(), 20);
        assert_eq!(ids.first(), Some(&"bb-gamma"));
        assert_eq!(ids.last(), Some(&"dimension-ledger"));
        let mut sorted = ids.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), ids.len());
    }

    #[test]
    fn every_anchor_carries_one_quote() {
        for c in registry() {
            let (label, quote) = c.anchor.split_once(": ").expect(c.id);
            assert!(!label.is_empty(), "{}", c.id);
            assert!(
                quote.len() > 2 && quote.starts_with('"') && quote.ends_with('"'),
                "{}",
                c.id
            );
            assert_eq!(quote.matches('"').count(), 2, "{}", c.id);
        }
    }

    #[test]
    fn unknown_claim_is_rejected() {
        let e = run("nope", &Config::default()).unwrap_err();
        assert!(e.to_string().contains("bb-gamma"));
    }

    #[test]
    fn pipeline_errors_become_failures() {
        let config = Config {
            prime: 4,
            ..Config::default()
        };
        let cert = run("scroll-ideal", &config).unwrap();
        assert_eq!(cert.verdict, Verdict::Fail);
        assert!(cert.witnesses["error"].is_string());
    }

    #[test]
    fn certificates_echo_the_configuration() {
        let config = Config {
            seed: 9,
            ..Config::default()
        };
        let cert = run("bb-gamma", &config).unwrap();
        assert_eq!(
            (cert.prime, cert.slice_prime, cert.rank_prime, cert.seed),
            (1009, 13, 10007, 9)
        );
        assert_eq!(cert.tool_version, TOOL_VERSION);
    }

    #[test]
    fn timing_is_the_only_field_cleared() {
        let config = Config::default();
        let report = Report::new(&config, vec![run("c14-remark", &config).unwrap()]);
        let bare = without_timing(&report);
        assert_eq!(bare.certificates[0].elapsed_ms, 0);
        assert_eq!(
            bare.certificates[0].witnesses,
            report.certificates[0].witnesses
        );
        assert_eq!(report.exit_code(), 0);
    }
}
