use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::GeomError;
use crate::exact::modp::ModRing;
use crate::exact::{Fp, PrimeField};
use crate::lattice::{arith_genus, gram_l, GramLattice, LatticeClass};
use crate::scroll::{build_projection, sample_secant_frame, SecantFrame};

use super::kappa::{kappa, kappa_inputs, KappaCertificate};
use super::ruling::{bisecant_certificate, p1_points, ruling_curve, BisecantCertificate};
use super::slice::{line_components, residual_analysis, slice_grassmannian, RawPoint, SliceReport};

/// Full attempts per prime before moving to the next slicing prime.
pub const SLICE_RETRY_BUDGET: u32 = 64;

/// Slicing primes tried after the requested one.
pub const FALLBACK_SLICE_PRIMES: [u64; 3] = [13, 11, 17];

/// One discarded attempt.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Rejection {
    pub prime: u64,
    pub seed: u64,
    pub stage: String,
    pub reason: String,
}

/// The accepted forward instance.
#[derive(Debug, Clone, Serialize)]
pub struct ForwardSlice {
    pub frame: SecantFrame,
    pub curve_degree: usize,
    pub curve_span_rank: usize,
    pub bisecants: BisecantCertificate,
    pub report: SliceReport,
    pub line_components: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct SliceSearch {
    pub primes: Vec<u64>,
    pub rejected: Vec<Rejection>,
    pub accepted: Option<ForwardSlice>,
}

/// The requested prime first, then the remaining fallbacks.
pub fn slice_primes(p: u64) -> Vec<u64> {
    std::iter::once(p)
        .chain(FALLBACK_SLICE_PRIMES.into_iter().filter(|&q| q != p))
        .collect()
}

fn attempt_seeds(seed: u64, budget: u32) -> Vec<u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..budget).map(|_| rng.gen()).collect()
}

fn reject(rejected: &mut Vec<Rejection>, prime: u64, seed: u64, stage: &str, reason: String) {
    rejected.push(Rejection {
        prime,
        seed,
        stage: stage.into(),
        reason,
    });
}

fn raw(ring: &ModRing, v: &[Fp]) -> RawPoint {
    let mut r: RawPoint = v.iter().map(Fp::value).collect();
    ring.normalize(&mut r);
    r
}

/// Runs the forward pipeline until an instance decomposes cleanly: ruling
/// curve, three disjoint bisecants, and a slice whose residual points span a
/// P^4 meeting each bisecant once.
pub fn forward_slice(p: u64, seed: u64, budget: u32) -> Result<SliceSearch, GeomError> {
    let primes = slice_primes(p);
    let mut rejected = Vec::new();
    for &q in &primes {
        let field = PrimeField::new(q)?;
        let ring = ModRing::new(field);
        for s in attempt_seeds(seed, budget) {
            let frame = match sample_secant_frame(q, s) {
                Ok(f) => f,
                Err(e) => {
                    reject(&mut rejected, q, s, "frame", e.to_string());
                    continue;
                }
            };
            let proj = build_projection::<Fp>(&frame, &field)?;
            let curve = match ruling_curve(&proj) {
                Ok(c) => c,
                Err(e) => {
                    reject(&mut rejected, q, s, "ruling curve", e.to_string());
                    continue;
                }
            };
            let bisecants = match bisecant_certificate(&curve, &frame) {
                Ok(b) if b.passed => b,
                Ok(b) => {
                    reject(&mut rejected, q, s, "bisecants", b.failures.join("; "));
                    continue;
                }
                Err(e) => {
                    reject(&mut rejected, q, s, "bisecants", e.to_string());
                    continue;
                }
            };
            let span: Vec<RawPoint> = curve
                .coefficient_span()
                .iter()
                .map(|v| v.iter().map(Fp::value).collect())
                .collect();
            let points = slice_grassmannian(&span, q)?;
            let mut curve_points: Vec<RawPoint> = p1_points(q)
                .map(|[a, b]| {
                    raw(
                        &ring,
                        &curve.eval(&field.elem(a as i64), &field.elem(b as i64)),
                    )
                })
                .collect();
            curve_points.sort();
            curve_points.dedup();
            let lines: Vec<[RawPoint; 2]> = bisecants
                .node_rulings
                .iter()
                .map(|[a, b]| [a.clone(), b.clone()])
                .collect();
            let report = residual_analysis(&span, &points, &curve_points, &lines, q)?;
            let n_lines = line_components(&points, q)?.len();
            if !report.passed {
                let extra = n_lines.saturating_sub(3);
                reject(
                    &mut rejected,
                    q,
                    s,
                    "slice",
                    format!(
                        "{} extra line components; {}",
                        extra,
                        report.failures.join("; ")
                    ),
                );
                continue;
            }
            return Ok(SliceSearch {
                primes,
                rejected,
                accepted: Some(ForwardSlice {
                    frame,
                    curve_degree: curve.degree,
                    curve_span_rank: curve.span_rank()?,
                    bisecants,
                    report,
                    line_components: n_lines,
                }),
            });
        }
    }
    Ok(SliceSearch {
        primes,
        rejected,
        accepted: None,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct KappaSearch {
    pub primes: Vec<u64>,
    pub rejected: Vec<Rejection>,
    pub accepted: Option<KappaCertificate>,
    /// The last certificate examined, when none was accepted.
    pub last: Option<KappaCertificate>,
}

/// Draws plane triples and runs the reverse construction until one passes.
pub fn kappa_search(p: u64, seed: u64, budget: u32) -> Result<KappaSearch, GeomError> {
    let primes = slice_primes(p);
    let mut rejected = Vec::new();
    let mut last = None;
    for &q in &primes {
        for (s, input) in kappa_inputs(q, seed)?.take(budget as usize) {
            let cert = match kappa(&input, q) {
                Ok(c) => c,
                Err(e) => {
                    reject(&mut rejected, q, s, "span", e.to_string());
                    continue;
                }
            };
            if cert.passed {
                return Ok(KappaSearch {
                    primes,
                    rejected,
                    accepted: Some(cert),
                    last: None,
                });
            }
            reject(&mut rejected, q, s, "slice", cert.failures.join("; "));
            last = Some(cert);
        }
    }
    Ok(KappaSearch {
        primes,
        rejected,
        accepted: None,
        last,
    })
}

/// Intersection numbers read off a forward slice against the configuration lattice.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GenusLedger {
    /// Gram matrix with the measured entries substituted.
    pub measured: GramLattice,
    /// Measured entries that differ from the configuration lattice.
    pub mismatches: Vec<String>,
    pub genus_curve_and_lines: i64,
    pub genus_total: i64,
}

/// Curve-line, quartic-line and line-line incidences from the slice; the
/// curve-quartic number is not visible over F_p and is taken from the lattice.
pub fn genus_ledger(report: &SliceReport) -> Result<GenusLedger, crate::error::LatticeError> {
    let reference = gram_l();
    let mut measured = reference.clone();
    for i in 0..3 {
        let gl = report.curve_points_on_lines.get(i).copied().unwrap_or(0) as i64;
        let ql = report.residual_closure_on_lines.get(i).map_or(0, Vec::len) as i64;
        measured.gram[0][2 + i] = gl;
        measured.gram[2 + i][0] = gl;
        measured.gram[1][2 + i] = ql;
        measured.gram[2 + i][1] = ql;
    }
    // disjoint lines share no slice point
    let ll = if report.line_overlaps == 0 { 0 } else { 1 };
    for i in 0..3 {
        for j in 0..3 {
            if i != j {
                measured.gram[2 + i][2 + j] = ll;
            }
        }
    }
    let mut mismatches = Vec::new();
    for (r, (a, b)) in measured.gram.iter().zip(&reference.gram).enumerate() {
        for c in r + 1..a.len() {
            if a[c] != b[c] {
                mismatches.push(format!(
                    "{}.{} = {}, lattice has {}",
                    measured.basis_names[r], measured.basis_names[c], a[c], b[c]
                ));
            }
        }
    }
    let e = |i| LatticeClass::basis(5, i);
    Ok(GenusLedger {
        genus_curve_and_lines: arith_genus(&[e(0), e(2), e(3), e(4)], &measured)?,
        genus_total: arith_genus(&[e(0), e(1), e(2), e(3), e(4)], &measured)?,
        measured,
        mismatches,
    })
}
