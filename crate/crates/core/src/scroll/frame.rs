use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::GeomError;
use crate::exact::modp::ModRing;
use crate::exact::{ExactMatrix, FieldScalar, Fp, MultiPoly, PrimeField};

use super::{is_on, s34_image, Determinantal, S34_MONOMIALS};

/// Reseeds allowed when a sampled frame is degenerate.
pub const FRAME_RETRY_BUDGET: u32 = 16;

/// Three chords of S(3,4) and a point on each, sampled over F_p.
///
/// Parameter points and chord scalars are stored as integers in `0..p`, so
/// the same frame can be replayed over the rationals.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SecantFrame {
    pub prime: u64,
    pub seed: u64,
    /// Sampling attempts consumed, including the successful one.
    pub attempts: u32,
    /// `(x_i, y_i)` parameter points in P^2, normalized, never the base point.
    pub chords: [[[i64; 3]; 2]; 3],
    /// `c_i` with `a_i = phi(x_i) + c_i phi(y_i)`, nonzero.
    pub chord_scalars: [i64; 3],
}

impl SecantFrame {
    /// x1, y1, x2, y2, x3, y3.
    pub fn parameter_points(&self) -> Vec<[i64; 3]> {
        self.chords.iter().flat_map(|c| c.iter().copied()).collect()
    }

    /// The three chord points a_i in P^8 over the field of `ctx`.
    pub fn chord_points<F: FieldScalar>(&self, ctx: &F::Ctx) -> Vec<Vec<F>> {
        self.chords
            .iter()
            .zip(self.chord_scalars)
            .map(|([x, y], c)| {
                let c = F::from_i64(ctx, c);
                s34_image::<F>(ctx, x)
                    .into_iter()
                    .zip(s34_image::<F>(ctx, y))
                    .map(|(u, v)| u + c.clone() * v)
                    .collect()
            })
            .collect()
    }

    /// The 3x9 matrix of the a_i.
    pub fn centre<F: FieldScalar>(&self, ctx: &F::Ctx) -> Result<ExactMatrix<F>, GeomError> {
        Ok(ExactMatrix::from_rows(self.chord_points(ctx))?)
    }

    pub fn field(&self) -> PrimeField {
        PrimeField::new(self.prime).expect("frames are sampled over a prime field")
    }
}

fn random_parameter(rng: &mut ChaCha8Rng, ring: &ModRing) -> [i64; 3] {
    loop {
        let mut z = [
            rng.gen_range(0..ring.p()),
            rng.gen_range(0..ring.p()),
            rng.gen_range(0..ring.p()),
        ];
        if z[1] == 0 && z[2] == 0 {
            continue;
        }
        ring.normalize(&mut z);
        return z.map(|v| v as i64);
    }
}

/// Samples three general points of Sec(S(3,4)) on chords whose six endpoints
/// lie on distinct rulings, reseeding on degeneracy up to
/// [`FRAME_RETRY_BUDGET`] times.
pub fn sample_secant_frame(p: u64, seed: u64) -> Result<SecantFrame, GeomError> {
    if p < 11 {
        return Err(GeomError::PrimeOutOfRange(p));
    }
    let field = PrimeField::new(p)?;
    let ring = ModRing::new(field);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for attempt in 1..=FRAME_RETRY_BUDGET {
        let params: Vec<[i64; 3]> = (0..6).map(|_| random_parameter(&mut rng, &ring)).collect();
        let scalars: [i64; 3] = std::array::from_fn(|_| rng.gen_range(1..p) as i64);
        // distinct rulings, which also makes the points distinct
        let rulings: Vec<[u64; 2]> = params
            .iter()
            .map(|z| {
                let mut r = [z[1] as u64, z[2] as u64];
                ring.normalize(&mut r);
                r
            })
            .collect();
        let distinct = (0..6).all(|i| (i + 1..6).all(|j| rulings[i] != rulings[j]));
        if !distinct {
            continue;
        }
        let frame = SecantFrame {
            prime: p,
            seed,
            attempts: attempt,
            chords: [
                [params[0], params[1]],
                [params[2], params[3]],
                [params[4], params[5]],
            ],
            chord_scalars: scalars,
        };
        if frame_is_valid(&frame, &field)? {
            return Ok(frame);
        }
    }
    Err(GeomError::DegenerateSample {
        prime: p,
        seed,
        attempts: FRAME_RETRY_BUDGET,
    })
}

fn frame_is_valid(frame: &SecantFrame, field: &PrimeField) -> Result<bool, GeomError> {
    let points = frame.chord_points::<Fp>(field);
    for a in &points {
        if a.iter().all(Fp::is_zero) {
            return Ok(false);
        }
        if !is_on(a, Determinantal::Secant)? || is_on(a, Determinantal::Scroll)? {
            return Ok(false);
        }
    }
    Ok(frame.centre::<Fp>(field)?.rank()? == 3)
}

/// Linear projection P^8 -> P^5 from the plane spanned by the chord points.
#[derive(Debug, Clone)]
pub struct ProjectionMap<F: FieldScalar> {
    /// 6x9; each row is a linear form vanishing on the centre.
    pub forms: ExactMatrix<F>,
}

/// The annihilator of the centre plane, as six linear forms.
pub fn build_projection<F: FieldScalar>(
    frame: &SecantFrame,
    ctx: &F::Ctx,
) -> Result<ProjectionMap<F>, GeomError> {
    let centre = frame.centre::<F>(ctx)?;
    let rk = centre.rref_rank()?;
    if rk.rank != 3 {
        return Err(GeomError::CentreRank(rk.rank));
    }
    Ok(ProjectionMap {
        forms: rk.kernel.transpose(),
    })
}

impl<F: FieldScalar> ProjectionMap<F> {
    pub fn project(&self, pt: &[F]) -> Result<Vec<F>, GeomError> {
        Ok(self.forms.apply(pt)?)
    }

    /// The six quartic forms in (z0, z1, z2) parametrizing the projected scroll.
    pub fn composed_forms(&self) -> Vec<MultiPoly<F>> {
        let ctx = self.forms.get(0, 0).ctx();
        (0..6)
            .map(|r| {
                MultiPoly::from_terms(
                    &ctx,
                    3,
                    S34_MONOMIALS
                        .iter()
                        .zip(self.forms.row(r))
                        .map(|(e, c)| (e.to_vec(), c.clone())),
                )
                .expect("three variables")
            })
            .collect()
    }
}

impl ProjectionMap<Fp> {
    /// Rows as raw residues.
    pub fn raw_rows(&self) -> Vec<[u64; 9]> {
        (0..6)
            .map(|r| std::array::from_fn(|c| self.forms.get(r, c).value()))
            .collect()
    }
}

/// Applies raw projection rows to a raw point of P^8.
#[inline]
pub(crate) fn project_raw(ring: &ModRing, rows: &[[u64; 9]], pt: &[u64; 9]) -> [u64; 6] {
    std::array::from_fn(|r| ring.dot(&rows[r], pt))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Rational;

    #[test]
    fn sampled_frames_satisfy_their_invariants() {
        for seed in 0..10 {
            let frame = sample_secant_frame(1009, seed).unwrap();
            let f = frame.field();
            assert_eq!(frame.centre::<Fp>(&f).unwrap().rank().unwrap(), 3);
            for a in frame.chord_points::<Fp>(&f) {
                assert!(is_on(&a, Determinantal::Secant).unwrap());
                assert!(!is_on(&a, Determinantal::Scroll).unwrap());
            }
            let pts = frame.parameter_points();
            for i in 0..6 {
                for j in i + 1..6 {
                    assert_ne!(pts[i], pts[j]);
                    // (z1 : z2) differ projectively
                    assert_ne!(
                        (pts[i][1] * pts[j][2] - pts[i][2] * pts[j][1]).rem_euclid(1009),
                        0
                    );
                }
            }
        }
    }

    #[test]
    fn small_primes_are_rejected() {
        assert_eq!(
            sample_secant_frame(7, 1).unwrap_err(),
            GeomError::PrimeOutOfRange(7)
        );
    }

    #[test]
    fn sampling_is_deterministic() {
        assert_eq!(
            sample_secant_frame(1009, 42).unwrap(),
            sample_secant_frame(1009, 42).unwrap()
        );
    }

    #[test]
    fn projection_annihilates_centre_and_has_rank_six() {
        let frame = sample_secant_frame(10007, 3).unwrap();
        let f = frame.field();
        let proj = build_projection::<Fp>(&frame, &f).unwrap();
        assert_eq!(proj.forms.rank().unwrap(), 6);
        for a in frame.chord_points::<Fp>(&f) {
            assert!(proj.project(&a).unwrap().iter().all(Fp::is_zero));
        }
    }

    #[test]
    fn projection_over_the_rationals() {
        let frame = sample_secant_frame(1009, 5).unwrap();
        let proj = build_projection::<Rational>(&frame, &()).unwrap();
        assert_eq!(proj.forms.rank().unwrap(), 6);
        for a in frame.chord_points::<Rational>(&()) {
            assert!(proj.project(&a).unwrap().iter().all(FieldScalar::is_zero));
        }
        // the chord endpoints are identified
        for ([x, y], c) in frame.chords.iter().zip(frame.chord_scalars) {
            let px = proj.project(&s34_image::<Rational>(&(), x)).unwrap();
            let py = proj.project(&s34_image::<Rational>(&(), y)).unwrap();
            let c = Rational::from_integer(c.into());
            for (u, v) in px.iter().zip(&py) {
                assert_eq!(u.clone(), -(c.clone() * v.clone()));
            }
        }
    }

    #[test]
    fn degenerate_centre_is_rejected() {
        let mut frame = sample_secant_frame(1009, 8).unwrap();
        frame.chords[1] = frame.chords[0];
        frame.chord_scalars[1] = frame.chord_scalars[0];
        let f = frame.field();
        assert!(matches!(
            build_projection::<Fp>(&frame, &f),
            Err(GeomError::CentreRank(2))
        ));
    }

    #[test]
    fn composed_forms_agree_with_projecting_images() {
        let frame = sample_secant_frame(1009, 2).unwrap();
        let f = frame.field();
        let proj = build_projection::<Fp>(&frame, &f).unwrap();
        let forms = proj.composed_forms();
        for z in [[1, 2, 3], [0, 1, 5], [7, 0, 1]] {
            let zf: Vec<Fp> = z.iter().map(|&v| f.elem(v)).collect();
            let direct = proj.project(&s34_image::<Fp>(&f, &z)).unwrap();
            let via: Vec<Fp> = forms.iter().map(|g| g.eval(&zf)).collect();
            assert_eq!(direct, via);
        }
    }
}
