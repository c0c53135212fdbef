use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::GeomError;
use crate::exact::modp::ModRing;
use crate::exact::{span_rank, FieldScalar, Fp, PrimeField};

use super::pluecker::{
    decode, intersection_point, lines_meet, pair_index, pluecker_line, PlueckerVector,
};
use super::ruling::p1_points;
use super::slice::{pencil_points, slice_grassmannian, tangent_dimension, RawPoint};

/// Draws allowed when sampling the extra plane points.
pub const KAPPA_RETRY_BUDGET: u32 = 64;

/// Marked points of the quartic scroll in P^5, with a second point on the
/// ruling through each.
pub const MARKED_POINTS: [[i64; 6]; 3] =
    [[0, 0, 1, 0, 0, 0], [0, 0, 0, 1, 0, 0], [1, 1, 1, 1, 1, 1]];
pub const MARKED_RULINGS: [[i64; 6]; 3] =
    [[0, 0, 0, 0, 0, 1], [1, 0, 0, 0, 0, 0], [1, 1, 1, 0, 0, 0]];

/// The point of each plane off its ruling; the plane is spanned by the
/// ruling and this point.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KappaInput {
    pub plane_points: [[i64; 6]; 3],
}

/// Pluecker point of the ruling of S(2,2) over `v`.
///
/// The scroll is `(u0 m(v), u1 m(v))` with `m(v) = (v0^2, v0 v1, v1^2)`.
pub fn quartic_ruling<F: FieldScalar>(v0: &F, v1: &F) -> Vec<F> {
    let ctx = v0.ctx();
    let m = [
        v0.clone() * v0.clone(),
        v0.clone() * v1.clone(),
        v1.clone() * v1.clone(),
    ];
    let mut out = vec![F::zero(&ctx); 15];
    for i in 0..3 {
        for j in 0..3 {
            out[pair_index(i, 3 + j)] = m[i].clone() * m[j].clone();
        }
    }
    out
}

/// Coefficient vectors of the quartic ruling curve, one per monomial `v0^(4-k) v1^k`.
pub fn quartic_ruling_span(ctx: &<Fp as FieldScalar>::Ctx) -> Vec<Vec<Fp>> {
    // m_i m_j has the single monomial v0^(4-i-j) v1^(i+j)
    (0..5)
        .map(|k| {
            let mut out = vec![Fp::zero(ctx); 15];
            for i in 0..3 {
                for j in 0..3 {
                    if i + j == k {
                        out[pair_index(i, 3 + j)] = Fp::one(ctx);
                    }
                }
            }
            out
        })
        .collect()
}

/// The three lines L_i of P^14: pencils of lines through each marked point in its plane.
fn pencil_spans(f: &PrimeField, input: &KappaInput) -> Result<Vec<[Vec<Fp>; 2]>, GeomError> {
    let e = |v: &[i64; 6]| v.iter().map(|&x| f.elem(x)).collect::<Vec<Fp>>();
    (0..3)
        .map(|i| {
            let (o, r, w) = (
                e(&MARKED_POINTS[i]),
                e(&MARKED_RULINGS[i]),
                e(&input.plane_points[i]),
            );
            if span_rank(&[o.clone(), r.clone(), w.clone()])? != 3 {
                return Err(GeomError::Degenerate(format!(
                    "plane point {i} lies on its ruling"
                )));
            }
            Ok([pluecker_line(&o, &r)?.coords, pluecker_line(&o, &w)?.coords])
        })
        .collect()
}

fn normalized(ring: &ModRing, v: &[Fp]) -> RawPoint {
    let mut r: RawPoint = v.iter().map(Fp::value).collect();
    ring.normalize(&mut r);
    r
}

/// Singular points of the slice on each pencil.
fn singular_on_pencils(
    ring: &ModRing,
    span: &[Vec<Fp>],
    pencils: &[[Vec<Fp>; 2]],
) -> Result<Vec<Vec<RawPoint>>, GeomError> {
    pencils
        .iter()
        .map(|[a, b]| {
            let (a, b) = (normalized(ring, a), normalized(ring, b));
            let mut sing = Vec::new();
            for x in pencil_points(ring, &a, &b) {
                if tangent_dimension(span, &ring.to_fp(&x))? >= 3 {
                    sing.push(x);
                }
            }
            Ok(sing)
        })
        .collect()
}

fn full_span(f: &PrimeField, pencils: &[[Vec<Fp>; 2]]) -> Vec<Vec<Fp>> {
    let mut span = quartic_ruling_span(f);
    span.extend(pencils.iter().map(|[_, b]| b.clone()));
    span
}

/// Raw draws allowed before a stream of screened inputs gives up.
const MAX_DRAWS: u64 = 1 << 16;

/// Plane points drawn from one seed, keeping those whose pencils each carry
/// three rational singular points of the slice (the quartic ruling and two
/// points of the residual curve). Items are `(draw number, input)`.
pub fn kappa_inputs(
    p: u64,
    seed: u64,
) -> Result<impl Iterator<Item = (u64, KappaInput)>, GeomError> {
    let f = PrimeField::new(p)?;
    let ring = ModRing::new(f);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok((1..=MAX_DRAWS).filter_map(move |draw| {
        let input = KappaInput {
            plane_points: std::array::from_fn(|_| {
                std::array::from_fn(|_| rng.gen_range(0..p as i64))
            }),
        };
        let pencils = pencil_spans(&f, &input).ok()?;
        let span = full_span(&f, &pencils);
        if span_rank(&span).ok()? != 8 {
            return None;
        }
        let sing = singular_on_pencils(&ring, &span, &pencils).ok()?;
        sing.iter().all(|s| s.len() == 3).then_some((draw, input))
    }))
}

/// The first screened input within [`KAPPA_RETRY_BUDGET`] draws.
pub fn sample_kappa_input(p: u64, seed: u64) -> Result<(KappaInput, u32), GeomError> {
    match kappa_inputs(p, seed)?.next() {
        Some((draw, input)) if draw <= KAPPA_RETRY_BUDGET as u64 => Ok((input, draw as u32)),
        _ => Err(GeomError::DegenerateSample {
            prime: p,
            seed,
            attempts: KAPPA_RETRY_BUDGET,
        }),
    }
}

/// Lines recovered from the two residual points of one pencil.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReconstructedPair {
    pub residual_points: Vec<RawPoint>,
    /// Two spanning points of P^5 per recovered line.
    pub lines: Vec<[Vec<u64>; 2]>,
    pub lines_meet: bool,
    pub meeting_point: Option<Vec<u64>>,
    pub meeting_point_in_plane: bool,
    pub meeting_point_is_marked: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KappaCertificate {
    pub prime: u64,
    pub input: KappaInput,
    pub quartic_span_rank: usize,
    pub total_span_rank: usize,
    pub slice_points: usize,
    pub quartic_points: usize,
    pub pencil_points: Vec<usize>,
    pub pencil_overlaps: usize,
    /// The quartic meets each pencil in its marked ruling only.
    pub quartic_on_pencils: Vec<usize>,
    pub residual_points: usize,
    /// Singular points of the slice on the quartic curve, off the pencils.
    pub quartic_residual_meetings: usize,
    pub pairs: Vec<ReconstructedPair>,
    pub failures: Vec<String>,
    pub passed: bool,
}

/// Rebuilds the residual rulings through the three marked points and checks
/// each pair meets inside its plane.
pub fn kappa(input: &KappaInput, p: u64) -> Result<KappaCertificate, GeomError> {
    let f = PrimeField::new(p)?;
    let ring = ModRing::new(f);
    let mut failures = Vec::new();
    let pencils = pencil_spans(&f, input)?;
    let quartic_span = quartic_ruling_span(&f);
    let quartic_span_rank = span_rank(&quartic_span)?;
    let span = full_span(&f, &pencils);
    let total_span_rank = span_rank(&span)?;
    if total_span_rank != 8 {
        return Err(GeomError::NonGeneric(format!(
            "span has rank {total_span_rank}"
        )));
    }
    for (i, [a, _]) in pencils.iter().enumerate() {
        let mut with = quartic_span.clone();
        with.push(a.clone());
        if span_rank(&with)? != quartic_span_rank {
            failures.push(format!("marked ruling {i} is not on the quartic curve"));
        }
    }

    let raw_span: Vec<RawPoint> = span
        .iter()
        .map(|v| v.iter().map(Fp::value).collect())
        .collect();
    let points = slice_grassmannian(&raw_span, p)?;
    let quartic: HashSet<RawPoint> = p1_points(p)
        .map(|[s, t]| normalized(&ring, &quartic_ruling(&f.elem(s as i64), &f.elem(t as i64))))
        .collect();
    let pencil_sets: Vec<HashSet<RawPoint>> = pencils
        .iter()
        .map(|[a, b]| {
            pencil_points(&ring, &normalized(&ring, a), &normalized(&ring, b))
                .into_iter()
                .collect()
        })
        .collect();
    let all: HashSet<&RawPoint> = points.iter().collect();
    if quartic
        .iter()
        .chain(pencil_sets.iter().flatten())
        .any(|x| !all.contains(x))
    {
        failures.push("known components are not contained in the slice".into());
    }
    let pencil_counts: Vec<usize> = pencil_sets
        .iter()
        .map(|l| points.iter().filter(|x| l.contains(*x)).count())
        .collect();
    let pencil_overlaps = points
        .iter()
        .filter(|x| pencil_sets.iter().filter(|l| l.contains(*x)).count() > 1)
        .count();
    if pencil_overlaps > 0 {
        failures.push(format!("{pencil_overlaps} points lie on two pencils"));
    }
    let quartic_on_pencils: Vec<usize> = pencil_sets
        .iter()
        .map(|l| quartic.iter().filter(|x| l.contains(*x)).count())
        .collect();
    if quartic_on_pencils.iter().any(|&n| n != 1) {
        failures.push(format!(
            "quartic meets the pencils in {quartic_on_pencils:?} points"
        ));
    }
    let residual = points
        .iter()
        .filter(|x| !quartic.contains(*x) && pencil_sets.iter().all(|l| !l.contains(*x)))
        .count();

    // the residual curve is a smooth rational septic: its p + 1 points are the
    // residual ones, six on the pencils and those it shares with the quartic
    let quartic_residual_meetings = quartic
        .iter()
        .filter(|x| pencil_sets.iter().all(|l| !l.contains(*x)))
        .map(|x| tangent_dimension(&span, &ring.to_fp(x)))
        .collect::<Result<Vec<_>, _>>()?
        .into_iter()
        .filter(|&d| d >= 3)
        .count();
    if residual + 6 + quartic_residual_meetings != p as usize + 1 {
        failures.push(format!(
            "residual curve has {} rational points, expected {}",
            residual + 6 + quartic_residual_meetings,
            p + 1
        ));
    }

    let singular = singular_on_pencils(&ring, &span, &pencils)?;
    let mut pairs = Vec::new();
    for (i, sing) in singular.into_iter().enumerate() {
        let marked = normalized(&ring, &pencils[i][0]);
        if !sing.contains(&marked) {
            failures.push(format!("marked ruling {i} is a smooth point of the slice"));
        }
        let residual_points: Vec<RawPoint> = sing.into_iter().filter(|x| *x != marked).collect();
        if residual_points.len() != 2 {
            failures.push(format!(
                "pencil {i} carries {} residual points",
                residual_points.len()
            ));
            pairs.push(ReconstructedPair {
                residual_points,
                lines: Vec::new(),
                lines_meet: false,
                meeting_point: None,
                meeting_point_in_plane: false,
                meeting_point_is_marked: false,
            });
            continue;
        }
        pairs.push(reconstruct(&f, input, i, residual_points)?);
        let last = pairs.last().unwrap();
        if !(last.lines_meet && last.meeting_point_in_plane) {
            failures.push(format!(
                "recovered lines over marked point {i} do not meet in the plane"
            ));
        }
    }

    Ok(KappaCertificate {
        prime: p,
        input: input.clone(),
        quartic_span_rank,
        total_span_rank,
        slice_points: points.len(),
        quartic_points: quartic.len(),
        pencil_points: pencil_counts,
        pencil_overlaps,
        quartic_on_pencils,
        residual_points: residual,
        quartic_residual_meetings,
        pairs,
        passed: failures.is_empty(),
        failures,
    })
}

fn reconstruct(
    f: &PrimeField,
    input: &KappaInput,
    i: usize,
    residual_points: Vec<RawPoint>,
) -> Result<ReconstructedPair, GeomError> {
    let e = |v: &[i64; 6]| v.iter().map(|&x| f.elem(x)).collect::<Vec<Fp>>();
    let ring = ModRing::new(*f);
    let a = PlueckerVector::new(ring.to_fp(&residual_points[0]))?;
    let b = PlueckerVector::new(ring.to_fp(&residual_points[1]))?;
    let (la, lb) = (decode(&a)?, decode(&b)?);
    let meet = lines_meet(&a, &b)?;
    let (point, in_plane, is_marked) = if meet {
        let x = intersection_point(&la, &lb)?;
        let plane = [
            e(&MARKED_POINTS[i]),
            e(&MARKED_RULINGS[i]),
            e(&input.plane_points[i]),
        ];
        let mut with = plane.to_vec();
        with.push(x.clone());
        let in_plane = span_rank(&with)? == 3;
        let is_marked = span_rank(&[x.clone(), plane[0].clone()])? == 1;
        (Some(normalized(&ring, &x)), in_plane, is_marked)
    } else {
        (None, false, false)
    };
    let raw = |l: &[Vec<Fp>; 2]| [normalized(&ring, &l[0]), normalized(&ring, &l[1])];
    Ok(ReconstructedPair {
        residual_points,
        lines: vec![raw(&la), raw(&lb)],
        lines_meet: meet,
        meeting_point: point,
        meeting_point_in_plane: in_plane,
        meeting_point_is_marked: is_marked,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grass::pluecker::in_grassmannian;

    #[test]
    fn quartic_rulings() {
        let f = PrimeField::new(13).unwrap();
        let v = quartic_ruling(&f.elem(1), &f.elem(0));
        assert_eq!(v[pair_index(0, 3)], f.elem(1));
        assert_eq!(v.iter().filter(|x| !x.is_zero()).count(), 1);
        assert_eq!(span_rank(&quartic_ruling_span(&f)).unwrap(), 5);
        for t in 0..13 {
            let v = quartic_ruling(&f.elem(1), &f.elem(t));
            assert!(in_grassmannian(&v).unwrap());
            let mut with = quartic_ruling_span(&f);
            with.push(v);
            assert_eq!(span_rank(&with).unwrap(), 5);
        }
    }

    #[test]
    fn marked_points_lie_on_their_rulings() {
        let f = PrimeField::new(13).unwrap();
        let e = |v: &[i64; 6]| v.iter().map(|&x| f.elem(x)).collect::<Vec<Fp>>();
        for (i, (s, t)) in [(0, 1), (1, 0), (1, 1)].into_iter().enumerate() {
            let ruling = pluecker_line(&e(&MARKED_POINTS[i]), &e(&MARKED_RULINGS[i])).unwrap();
            let q = quartic_ruling(&f.elem(s), &f.elem(t));
            assert_eq!(span_rank(&[ruling.coords, q]).unwrap(), 1);
        }
    }

    #[test]
    fn plane_point_on_ruling_is_rejected() {
        let input = KappaInput {
            plane_points: [MARKED_RULINGS[0], [0, 1, 0, 0, 0, 0], [0, 1, 0, 0, 0, 0]],
        };
        assert!(matches!(kappa(&input, 11), Err(GeomError::Degenerate(_))));
    }

    #[test]
    fn screened_inputs_have_three_singular_points_per_pencil() {
        let f = PrimeField::new(11).unwrap();
        let ring = ModRing::new(f);
        let (input, attempts) = sample_kappa_input(11, 42).unwrap();
        assert!(attempts <= KAPPA_RETRY_BUDGET);
        let pencils = pencil_spans(&f, &input).unwrap();
        let span = full_span(&f, &pencils);
        assert_eq!(span_rank(&span).unwrap(), 8);
        for (i, sing) in singular_on_pencils(&ring, &span, &pencils)
            .unwrap()
            .iter()
            .enumerate()
        {
            assert_eq!(sing.len(), 3);
            assert!(sing.contains(&normalized(&ring, &pencils[i][0])));
        }
    }

    #[test]
    fn certificate_is_reproducible() {
        let (input, _) = sample_kappa_input(11, 7).unwrap();
        let a = kappa(&input, 11).unwrap();
        let b = kappa(&input, 11).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.quartic_on_pencils, vec![1, 1, 1]);
        assert_eq!(a.pencil_points, vec![12, 12, 12]);
        assert_eq!(a.pencil_overlaps, 0);
    }
}
