use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::GeomError;
use crate::exact::modp::{projective_count, projective_point, to_raw, ModRing};
use crate::exact::{span_rank, ExactMatrix, Fp, MultiPoly, PrimeField};

use super::frame::{project_raw, ProjectionMap, SecantFrame};
use super::{on_secant_raw, s34_image_raw, Determinantal, MinorSystem};

/// Largest prime for which the P^2 scans are run.
pub const MAX_SCAN_PRIME: u64 = 2000;

const SCAN_LIMITATION: &str = "only F_p-rational points are scanned; identifications defined over extensions are not detected";

/// A point of F_1 over F_p: a plane point away from the base point, or a
/// point (s:t) of the exceptional curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum F1Point {
    Plane([u64; 3]),
    Exceptional([u64; 2]),
}

impl F1Point {
    fn image(&self, ring: &ModRing) -> [u64; 9] {
        match *self {
            F1Point::Plane(z) => s34_image_raw(ring, z),
            F1Point::Exceptional([s, t]) => {
                let (s2, t2) = (ring.mul(s, s), ring.mul(t, t));
                [
                    ring.mul(s2, s),
                    ring.mul(s2, t),
                    ring.mul(s, t2),
                    ring.mul(t2, t),
                    0,
                    0,
                    0,
                    0,
                    0,
                ]
            }
        }
    }
}

/// Enumeration order: P^2 minus its first point (the base point), then E.
fn f1_point(p: u64, index: u64) -> F1Point {
    let plane = projective_count(p, 2);
    if index < plane - 1 {
        let z = projective_point(p, 2, index + 1);
        F1Point::Plane([z[0], z[1], z[2]])
    } else {
        let e = projective_point(p, 1, index - (plane - 1));
        F1Point::Exceptional([e[0], e[1]])
    }
}

fn f1_count(p: u64) -> u64 {
    projective_count(p, 2) - 1 + projective_count(p, 1)
}

#[derive(Debug, Clone, Serialize)]
pub struct NodeCertificate {
    pub prime: u64,
    pub seed: u64,
    /// Points of F_1(F_p) scanned.
    pub scanned: u64,
    /// The three node images, normalized.
    pub node_images: Vec<Vec<u64>>,
    /// Each chord's endpoints have the same image.
    pub endpoints_identified: bool,
    /// Scanned points whose image is undefined (they lie over the centre).
    pub undefined_images: Vec<F1Point>,
    pub collision_pairs: Vec<[F1Point; 2]>,
    pub collisions_match_chords: bool,
    /// Rank of the three node vectors; 3 means they span a plane.
    pub node_span_rank: usize,
    /// Distinct image points lying in the plane of the nodes.
    pub plane_image_points: Vec<Vec<u64>>,
    pub immersion_samples: usize,
    /// Parameters where the differential drops rank.
    pub immersion_failures: Vec<[u64; 3]>,
    /// Projective rank of the differential at x1, y1, ..., y3.
    pub node_preimage_ranks: Vec<usize>,
    pub limitation: String,
    pub failures: Vec<String>,
    pub passed: bool,
}

fn normalized_key(ring: &ModRing, mut v: [u64; 6]) -> Option<[u16; 6]> {
    ring.normalize(&mut v).then(|| v.map(|x| x as u16))
}

fn to_array3(z: &[i64; 3]) -> [u64; 3] {
    z.map(|v| v as u64)
}

/// Differential of the composed parametrization, one row per form.
struct Differential {
    partials: Vec<[MultiPoly<Fp>; 3]>,
}

impl Differential {
    fn new(forms: &[MultiPoly<Fp>]) -> Self {
        Self {
            partials: forms
                .iter()
                .map(|f| [f.derivative(0), f.derivative(1), f.derivative(2)])
                .collect(),
        }
    }

    /// Projective rank at z: affine rank of the 6x3 Jacobian minus one.
    fn projective_rank(&self, z: &[Fp]) -> Result<usize, GeomError> {
        let rows = self
            .partials
            .iter()
            .map(|d| d.iter().map(|g| g.eval(z)).collect())
            .collect();
        Ok(ExactMatrix::from_rows(rows)?.rank()?.saturating_sub(1))
    }
}

/// Certifies that the projected scroll has exactly the three constructed
/// nodes among F_p-rational points, that they span a plane meeting the
/// image only in the nodes, and that the map is an immersion on samples.
pub fn certify_nodes(
    frame: &SecantFrame,
    proj: &ProjectionMap<Fp>,
    p: u64,
) -> Result<NodeCertificate, GeomError> {
    if p > MAX_SCAN_PRIME {
        return Err(GeomError::PrimeOutOfRange(p));
    }
    let field = PrimeField::new(p)?;
    if proj.forms.get(0, 0).modulus() != p || frame.prime != p {
        return Err(GeomError::Degenerate(format!(
            "frame and projection must live over F_{p}"
        )));
    }
    let ring = ModRing::new(field);
    let rows = proj.raw_rows();
    let mut failures = Vec::new();

    // (a) chord endpoints are identified
    let mut node_images = Vec::new();
    let mut endpoints_identified = true;
    for [x, y] in &frame.chords {
        let px = normalized_key(
            &ring,
            project_raw(&ring, &rows, &s34_image_raw(&ring, to_array3(x))),
        );
        let py = normalized_key(
            &ring,
            project_raw(&ring, &rows, &s34_image_raw(&ring, to_array3(y))),
        );
        match (px, py) {
            (Some(a), Some(b)) if a == b => node_images.push(a.map(u64::from).to_vec()),
            _ => {
                endpoints_identified = false;
                failures.push(format!("chord endpoints {x:?}, {y:?} not identified"));
            }
        }
    }

    // (b) full collision scan
    let total = f1_count(p);
    let mut keyed: Vec<([u16; 6], u32)> = Vec::with_capacity(total as usize);
    let mut undefined_images = Vec::new();
    let scanned: Vec<Result<([u16; 6], u32), u32>> = (0..total)
        .into_par_iter()
        .map(|i| {
            let pt = f1_point(p, i);
            normalized_key(&ring, project_raw(&ring, &rows, &pt.image(&ring)))
                .map(|k| (k, i as u32))
                .ok_or(i as u32)
        })
        .collect();
    for r in scanned {
        match r {
            Ok(kv) => keyed.push(kv),
            Err(i) => undefined_images.push(f1_point(p, u64::from(i))),
        }
    }
    if !undefined_images.is_empty() {
        failures.push(format!(
            "{} parameters map into the centre",
            undefined_images.len()
        ));
    }
    keyed.par_sort_unstable();

    let mut collision_pairs = Vec::new();
    let mut start = 0;
    while start < keyed.len() {
        let mut end = start + 1;
        while end < keyed.len() && keyed[end].0 == keyed[start].0 {
            end += 1;
        }
        for a in start..end {
            for b in a + 1..end {
                let mut pair = [
                    f1_point(p, u64::from(keyed[a].1)),
                    f1_point(p, u64::from(keyed[b].1)),
                ];
                pair.sort();
                collision_pairs.push(pair);
            }
        }
        start = end;
    }
    collision_pairs.sort();
    let mut expected: Vec<[F1Point; 2]> = frame
        .chords
        .iter()
        .map(|[x, y]| {
            let mut pair = [F1Point::Plane(to_array3(x)), F1Point::Plane(to_array3(y))];
            pair.sort();
            pair
        })
        .collect();
    expected.sort();
    let collisions_match_chords = collision_pairs == expected;
    if !collisions_match_chords {
        failures.push(format!(
            "found {} collision pairs, expected the 3 chord pairs",
            collision_pairs.len()
        ));
    }

    // (c) the nodes span a plane
    let node_vectors: Vec<Vec<Fp>> = node_images.iter().map(|v| ring.to_fp(v)).collect();
    let node_span_rank = if node_vectors.is_empty() {
        0
    } else {
        span_rank(&node_vectors)?
    };
    if node_span_rank != 3 {
        failures.push(format!("nodes span rank {node_span_rank}, expected 3"));
    }

    // (d) the plane of the nodes meets the image only in the nodes
    let mut plane_image_points = Vec::new();
    if node_span_rank == 3 {
        let annihilator: Vec<Vec<u64>> = ExactMatrix::from_rows(node_vectors)?
            .kernel_vectors()?
            .iter()
            .map(|v| to_raw(v))
            .collect();
        let mut last: Option<[u16; 6]> = None;
        for (key, _) in &keyed {
            if last == Some(*key) {
                continue;
            }
            last = Some(*key);
            let v = key.map(u64::from);
            if annihilator.iter().all(|h| ring.dot(h, &v) == 0) {
                plane_image_points.push(v.to_vec());
            }
        }
        let mut sorted_nodes = node_images.clone();
        sorted_nodes.sort();
        if plane_image_points != sorted_nodes {
            failures.push(format!(
                "plane of the nodes meets the image in {} points",
                plane_image_points.len()
            ));
        }
    }

    // (e) immersion at random parameters and at the node preimages
    let differential = Differential::new(&proj.composed_forms());
    let mut rng = ChaCha8Rng::seed_from_u64(frame.seed ^ 0x696d_6d65_7273_696f);
    let immersion_samples = 100;
    let mut immersion_failures = Vec::new();
    for _ in 0..immersion_samples {
        let z = loop {
            let z = [
                rng.gen_range(0..p),
                rng.gen_range(0..p),
                rng.gen_range(0..p),
            ];
            if z[1] != 0 || z[2] != 0 {
                break z;
            }
        };
        if differential.projective_rank(&ring.to_fp(&z))? != 2 {
            immersion_failures.push(z);
        }
    }
    let node_preimage_ranks = frame
        .parameter_points()
        .iter()
        .map(|z| differential.projective_rank(&ring.to_fp(&to_array3(z))))
        .collect::<Result<Vec<_>, _>>()?;
    if !immersion_failures.is_empty() || node_preimage_ranks.iter().any(|&r| r != 2) {
        failures.push("differential drops rank".to_string());
    }

    Ok(NodeCertificate {
        prime: p,
        seed: frame.seed,
        scanned: total,
        node_images,
        endpoints_identified,
        undefined_images,
        collision_pairs,
        collisions_match_chords,
        node_span_rank,
        plane_image_points,
        immersion_samples,
        immersion_failures,
        node_preimage_ranks,
        limitation: SCAN_LIMITATION.to_string(),
        passed: failures.is_empty(),
        failures,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct SecantSliceReport {
    pub prime: u64,
    /// Points of the centre plane examined, p^2 + p + 1.
    pub candidates: u64,
    /// Normalized points of the plane lying on Sec.
    pub solutions: Vec<Vec<u64>>,
    /// Rank of the secant minors' Jacobian restricted to the plane, per solution.
    pub jacobian_ranks: Vec<usize>,
    /// The solutions are exactly the three chord points.
    pub matches_chord_points: bool,
}

/// Intersects the centre plane with Sec(S(3,4)) over F_p by enumeration.
/// The frame's integer data are reduced modulo `p`.
pub fn secant_slice(frame: &SecantFrame, p: u64) -> Result<SecantSliceReport, GeomError> {
    if p > MAX_SCAN_PRIME {
        return Err(GeomError::PrimeOutOfRange(p));
    }
    let field = PrimeField::new(p)?;
    let ring = ModRing::new(field);
    let centre = frame.centre::<Fp>(&field)?;
    if centre.rank()? != 3 {
        return Err(GeomError::CentreRank(centre.rank()?));
    }
    let lambda: Vec<[u64; 9]> = (0..3)
        .map(|r| std::array::from_fn(|c| centre.get(r, c).value()))
        .collect();
    let candidates = projective_count(p, 2);
    let mut solutions: Vec<Vec<u64>> = (0..candidates)
        .into_par_iter()
        .filter_map(|i| {
            let u = projective_point(p, 2, i);
            let pt: [u64; 9] = std::array::from_fn(|c| {
                ring.add(
                    ring.add(ring.mul(u[0], lambda[0][c]), ring.mul(u[1], lambda[1][c])),
                    ring.mul(u[2], lambda[2][c]),
                )
            });
            on_secant_raw(&ring, &pt).then(|| {
                let mut v = pt.to_vec();
                ring.normalize(&mut v);
                v
            })
        })
        .collect();
    solutions.sort();

    let system = MinorSystem::<Fp>::new(&field, Determinantal::Secant);
    let lambda_t = centre.transpose();
    let jacobian_ranks = solutions
        .iter()
        .map(|s| Ok(system.jacobian(&ring.to_fp(s))?.mul(&lambda_t)?.rank()?))
        .collect::<Result<Vec<_>, GeomError>>()?;

    let mut chord_points: Vec<Vec<u64>> = frame
        .chord_points::<Fp>(&field)
        .iter()
        .map(|a| {
            let mut v = to_raw(a);
            ring.normalize(&mut v);
            v
        })
        .collect();
    chord_points.sort();
    Ok(SecantSliceReport {
        prime: p,
        candidates,
        matches_chord_points: solutions == chord_points,
        solutions,
        jacobian_ranks,
    })
}
