//! Linear systems of cubics through the projected scroll, and the plane
//! curve systems on F_1 that account for their dimension.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::GeomError;
use crate::exact::modp::{projective_count, projective_point, ModRing};
use crate::exact::{
    compose_form, ExactMatrix, Exponents, FieldScalar, Fp, MonomialBasis, MultiPoly, PrimeField,
};
use crate::scroll::{build_projection, h0_f1, s34_image, F1Class, ProjectionMap, SecantFrame};

/// Largest prime for the exhaustive P^5 smoothness scan.
pub const MAX_SMOOTHNESS_PRIME: u64 = 13;

/// Tries per smoothness check before the instance is declared singular.
pub const SMOOTHNESS_ATTEMPTS: u32 = 8;

/// Coefficients of every cubic monomial in six variables composed with the
/// six projected quartics: 91 rows (degree-12 ternary monomials) by 56
/// columns (cubic monomials).
#[derive(Debug, Clone)]
pub struct EvaluationMatrix<F: FieldScalar> {
    pub matrix: ExactMatrix<F>,
    pub cubic_basis: MonomialBasis,
    pub target_basis: MonomialBasis,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LinearSystemReport {
    pub domain: String,
    pub rows: usize,
    pub cols: usize,
    pub rank: usize,
    /// Cubics containing the scroll.
    pub h0: usize,
    /// `h0 - (node_system - f1_system)`.
    pub h1: i64,
    /// Cubics through the three nodes.
    pub node_system: usize,
    /// Sections of |12l - 9E| vanishing at the six chord endpoints.
    pub f1_system: usize,
}

fn ctx_of<F: FieldScalar>(proj: &ProjectionMap<F>) -> F::Ctx {
    proj.forms.get(0, 0).ctx()
}

pub fn evaluation_matrix<F: FieldScalar>(
    proj: &ProjectionMap<F>,
) -> Result<EvaluationMatrix<F>, GeomError> {
    let ctx = ctx_of(proj);
    let quartics = proj.composed_forms();
    let cubic_basis = MonomialBasis::new(6, 3);
    let target_basis = MonomialBasis::new(3, 12);
    let mut columns = Vec::with_capacity(cubic_basis.len());
    for e in cubic_basis.monomials() {
        let m = MultiPoly::monomial(&ctx, e.clone(), F::one(&ctx));
        let composed = compose_form(&m, &quartics)?;
        columns.push(composed.dense_coefficients(&target_basis)?);
    }
    let matrix = ExactMatrix::from_rows(columns)?.transpose();
    Ok(EvaluationMatrix {
        matrix,
        cubic_basis,
        target_basis,
    })
}

/// Images of the chord endpoints, one per chord.
pub fn node_points<F: FieldScalar>(
    frame: &SecantFrame,
    proj: &ProjectionMap<F>,
) -> Result<Vec<Vec<F>>, GeomError> {
    let ctx = ctx_of(proj);
    frame
        .chords
        .iter()
        .map(|[x, _]| proj.project(&s34_image::<F>(&ctx, x)))
        .collect()
}

/// Dimension of cubics containing the projected scroll, with the two
/// constituent systems that predict it.
pub fn cubics_through_scroll<F: FieldScalar>(
    frame: &SecantFrame,
    proj: &ProjectionMap<F>,
) -> Result<LinearSystemReport, GeomError> {
    let ctx = ctx_of(proj);
    let eval = evaluation_matrix(proj)?;
    let rank = eval.matrix.rank()?;
    let h0 = eval.cubic_basis.len() - rank;
    let node_system = cubics_through_points(&node_points(frame, proj)?)?;
    let f1_system = sing_conditions_on_r::<F>(frame, &ctx)?;
    Ok(LinearSystemReport {
        domain: F::one(&ctx).domain().to_string(),
        rows: eval.matrix.nrows(),
        cols: eval.matrix.ncols(),
        rank,
        h0,
        h1: h0 as i64 - (node_system as i64 - f1_system as i64),
        node_system,
        f1_system,
    })
}

fn projectively_equal<F: FieldScalar>(a: &[F], b: &[F]) -> Result<bool, GeomError> {
    Ok(ExactMatrix::from_rows(vec![a.to_vec(), b.to_vec()])?.rank()? < 2)
}

/// Dimension of cubics in six variables vanishing at the given points.
pub fn cubics_through_points<F: FieldScalar>(points: &[Vec<F>]) -> Result<usize, GeomError> {
    let basis = MonomialBasis::new(6, 3);
    if points.is_empty() {
        return Ok(basis.len());
    }
    for (i, a) in points.iter().enumerate() {
        if a.len() != 6 {
            return Err(GeomError::Degenerate(format!(
                "point of P^5 needs 6 coordinates, got {}",
                a.len()
            )));
        }
        if a.iter().all(F::is_zero) {
            return Err(GeomError::ZeroVector);
        }
        for b in &points[..i] {
            if projectively_equal(a, b)? {
                return Err(GeomError::DuplicatePoint);
            }
        }
    }
    let rows = points.iter().map(|pt| basis.evaluate(pt)).collect();
    Ok(basis.len() - ExactMatrix::from_rows(rows)?.rank()?)
}

/// Monomials of degree `a` whose (z1, z2)-degree is at least `b`: a basis of |a l - b E|.
fn f1_basis(a: u32, b: u32) -> Vec<Exponents> {
    MonomialBasis::new(3, a)
        .monomials()
        .iter()
        .filter(|e| e[1] + e[2] >= b)
        .cloned()
        .collect()
}

fn eval_monomial<F: FieldScalar>(ctx: &F::Ctx, e: &[u32], z: &[F]) -> F {
    e.iter()
        .zip(z)
        .fold(F::one(ctx), |acc, (&k, v)| acc * v.pow(u64::from(k)))
}

fn f1_evaluation<F: FieldScalar>(
    frame: &SecantFrame,
    ctx: &F::Ctx,
    basis: &[Exponents],
) -> Result<ExactMatrix<F>, GeomError> {
    let rows = frame
        .parameter_points()
        .iter()
        .map(|z| {
            let z: Vec<F> = z.iter().map(|&v| F::from_i64(ctx, v)).collect();
            basis.iter().map(|e| eval_monomial(ctx, e, &z)).collect()
        })
        .collect();
    Ok(ExactMatrix::from_rows(rows)?)
}

/// Sections of |12l - 9E| on F_1 vanishing at the six chord endpoints.
pub fn sing_conditions_on_r<F: FieldScalar>(
    frame: &SecantFrame,
    ctx: &F::Ctx,
) -> Result<usize, GeomError> {
    let basis = f1_basis(12, 9);
    debug_assert_eq!(basis.len() as u64, h0_f1(F1Class::new(12, 9))?);
    let rank = f1_evaluation::<F>(frame, ctx, &basis)?.rank()?;
    Ok(basis.len() - rank)
}

/// The unique member of |3l - 2E| through the six chord endpoints.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SexticSection<F: FieldScalar> {
    pub monomials: Vec<Exponents>,
    pub coefficients: Vec<F>,
    pub evaluation_rank: usize,
    pub kernel_dimension: usize,
}

pub fn unique_sextic<F: FieldScalar>(
    frame: &SecantFrame,
    ctx: &F::Ctx,
) -> Result<SexticSection<F>, GeomError> {
    let monomials = f1_basis(3, 2);
    let m = f1_evaluation::<F>(frame, ctx, &monomials)?;
    let rk = m.rref_rank()?;
    let kernel_dimension = monomials.len() - rk.rank;
    if kernel_dimension != 1 {
        return Err(GeomError::NonGeneric(format!(
            "|3l-2E| through the six points has dimension {kernel_dimension}, expected 1"
        )));
    }
    let coefficients = rk.kernel.column(0);
    if m.apply(&coefficients)?.iter().any(|v| !v.is_zero()) {
        return Err(GeomError::NonGeneric(
            "sextic section does not vanish at the points".into(),
        ));
    }
    Ok(SexticSection {
        monomials,
        coefficients,
        evaluation_rank: rk.rank,
        kernel_dimension,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct SmoothnessReport {
    pub prime: u64,
    pub seed: u64,
    /// Dimension of the space of cubics through the scroll on this instance.
    pub h0: usize,
    pub attempts: u32,
    /// Coefficients of the accepted cubic on the 56 cubic monomials.
    pub cubic: Vec<u64>,
    pub contains_scroll: bool,
    /// Points of P^5(F_p) scanned for common zeros of the partials.
    pub scanned: u64,
    /// Rational singular points of each rejected or accepted sample.
    pub singular_points: Vec<Vec<u64>>,
    pub node_gradients_nonzero: bool,
    /// Always true: only rational points are checked.
    pub heuristic: bool,
    pub passed: bool,
}

/// Cubic in six variables with dense coefficients, and its partials.
struct DenseCubic {
    ring: ModRing,
    basis: MonomialBasis,
    quadrics: MonomialBasis,
    partials: Vec<Vec<u64>>,
}

impl DenseCubic {
    fn new(ring: ModRing, coeffs: &[u64]) -> Result<Self, GeomError> {
        let field = ring.field();
        let basis = MonomialBasis::new(6, 3);
        let quadrics = MonomialBasis::new(6, 2);
        let poly = MultiPoly::from_terms(
            &field,
            6,
            basis
                .monomials()
                .iter()
                .zip(coeffs)
                .map(|(e, &c)| (e.clone(), field.elem(c as i64))),
        )?;
        let partials = (0..6)
            .map(|i| {
                let d = poly.derivative(i).dense_coefficients(&quadrics)?;
                Ok(d.iter().map(Fp::value).collect())
            })
            .collect::<Result<Vec<_>, GeomError>>()?;
        Ok(Self {
            ring,
            basis,
            quadrics,
            partials,
        })
    }

    fn gradient(&self, x: &[u64]) -> Vec<u64> {
        let mons: Vec<u64> = self
            .quadrics
            .monomials()
            .iter()
            .map(|e| {
                e.iter().zip(x).fold(1, |acc, (&k, &v)| {
                    self.ring.mul(acc, self.ring.pow(v, u64::from(k)))
                })
            })
            .collect();
        self.partials
            .iter()
            .map(|d| self.ring.dot(d, &mons))
            .collect()
    }

    fn singular_points(&self) -> Vec<Vec<u64>> {
        let p = self.ring.p();
        (0..projective_count(p, 5))
            .filter_map(|i| {
                let x = projective_point(p, 5, i);
                self.gradient(&x).iter().all(|&g| g == 0).then_some(x)
            })
            .collect()
    }
}

/// Draws random cubics through the scroll over a small field and scans all
/// of P^5(F_p) for rational singular points. The verdict is heuristic.
pub fn random_cubic_smoothness(
    frame: &SecantFrame,
    proj: &ProjectionMap<Fp>,
    seed: u64,
) -> Result<SmoothnessReport, GeomError> {
    let field: PrimeField = ctx_of(proj);
    let p = field.modulus();
    if p > MAX_SMOOTHNESS_PRIME {
        return Err(GeomError::PrimeOutOfRange(p));
    }
    let ring = ModRing::new(field);
    let eval = evaluation_matrix(proj)?;
    let kernel = eval.matrix.rref_rank()?.kernel;
    let h0 = kernel.ncols();
    if h0 != 13 {
        return Err(GeomError::NonGeneric(format!(
            "cubics through the scroll have dimension {h0} over F_{p}, expected 13"
        )));
    }
    let nodes: Vec<Vec<u64>> = node_points(frame, proj)?
        .iter()
        .map(|v| v.iter().map(Fp::value).collect())
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut singular_points = Vec::new();
    let mut last = None;
    for attempt in 1..=SMOOTHNESS_ATTEMPTS {
        let weights: Vec<u64> = (0..h0).map(|_| rng.gen_range(0..p)).collect();
        let cubic: Vec<u64> = (0..kernel.nrows())
            .map(|r| {
                let row: Vec<u64> = (0..h0).map(|c| kernel.get(r, c).value()).collect();
                ring.dot(&row, &weights)
            })
            .collect();
        if cubic.iter().all(|&c| c == 0) {
            continue;
        }
        let composed = eval.matrix.apply(&ring.to_fp(&cubic))?;
        let contains_scroll = composed.iter().all(|v| v.value() == 0);
        let dense = DenseCubic::new(ring.clone(), &cubic)?;
        debug_assert_eq!(dense.basis.len(), cubic.len());
        let node_gradients_nonzero = nodes
            .iter()
            .all(|n| dense.gradient(n).iter().any(|&g| g != 0));
        let found = dense.singular_points();
        let passed = contains_scroll && node_gradients_nonzero && found.is_empty();
        singular_points.extend(found);
        let report = SmoothnessReport {
            prime: p,
            seed,
            h0,
            attempts: attempt,
            cubic,
            contains_scroll,
            scanned: projective_count(p, 5),
            singular_points: singular_points.clone(),
            node_gradients_nonzero,
            heuristic: true,
            passed,
        };
        if passed {
            return Ok(report);
        }
        last = Some(report);
    }
    last.ok_or_else(|| GeomError::NonGeneric("every sampled cubic was zero".into()))
}

/// Samples a frame over a small prime and runs [`random_cubic_smoothness`].
pub fn smoothness_over(p: u64, seed: u64) -> Result<SmoothnessReport, GeomError> {
    let frame = crate::scroll::sample_secant_frame(p, seed)?;
    let field = frame.field();
    let proj = build_projection::<Fp>(&frame, &field)?;
    random_cubic_smoothness(&frame, &proj, seed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{Rational, RANK_PRIME};
    use crate::scroll::sample_secant_frame;

    fn instance(p: u64, seed: u64) -> (SecantFrame, ProjectionMap<Fp>) {
        let frame = sample_secant_frame(p, seed).unwrap();
        let proj = build_projection::<Fp>(&frame, &frame.field()).unwrap();
        (frame, proj)
    }

    #[test]
    fn matrix_shape() {
        let (_, proj) = instance(1009, 42);
        let eval = evaluation_matrix(&proj).unwrap();
        assert_eq!(eval.matrix.shape(), (91, 56));
    }

    #[test]
    fn thirteen_cubics_through_the_scroll() {
        let (frame, proj) = instance(RANK_PRIME, 42);
        let r = cubics_through_scroll(&frame, &proj).unwrap();
        assert_eq!((r.rank, r.h0, r.h1), (43, 13, 0));
        assert_eq!((r.node_system, r.f1_system), (53, 40));
    }

    #[test]
    fn two_primes_agree() {
        for (p, seed) in [(1009, 1), (10007, 2)] {
            let (frame, proj) = instance(p, seed);
            assert_eq!(cubics_through_scroll(&frame, &proj).unwrap().h0, 13);
        }
    }

    #[test]
    fn rational_rank_matches_modular_rank() {
        let (frame, proj) = instance(1009, 42);
        let modular = cubics_through_scroll(&frame, &proj).unwrap();
        let qproj = build_projection::<Rational>(&frame, &()).unwrap();
        let rational = cubics_through_scroll(&frame, &qproj).unwrap();
        assert_eq!(rational.rank, modular.rank);
        assert_eq!(rational.h0, 13);
        assert_eq!(rational.domain, "Q");
    }

    #[test]
    fn point_conditions() {
        let f = PrimeField::new(1009).unwrap();
        assert_eq!(cubics_through_points::<Fp>(&[]).unwrap(), 56);
        let a: Vec<Fp> = [1, 2, 3, 4, 5, 6].iter().map(|&v| f.elem(v)).collect();
        assert_eq!(cubics_through_points(std::slice::from_ref(&a)).unwrap(), 55);
        let twice: Vec<Fp> = a.iter().map(|v| *v * f.elem(2)).collect();
        assert_eq!(
            cubics_through_points(&[a, twice]).unwrap_err(),
            GeomError::DuplicatePoint
        );
    }

    #[test]
    fn point_conditions_are_monotone() {
        let f = PrimeField::new(10007).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let mut pts: Vec<Vec<Fp>> = Vec::new();
        let mut dim = 56;
        for _ in 0..20 {
            pts.push((0..6).map(|_| f.elem(rng.gen_range(0..10007))).collect());
            let next = cubics_through_points(&pts).unwrap();
            assert_eq!(next + 1, dim);
            dim = next;
        }
    }

    #[test]
    fn ambient_f1_systems() {
        assert_eq!(f1_basis(12, 9).len(), 46);
        assert_eq!(f1_basis(3, 2).len(), 7);
        let (frame, _) = instance(1009, 42);
        let f = frame.field();
        assert_eq!(
            f1_evaluation::<Fp>(&frame, &f, &f1_basis(12, 9))
                .unwrap()
                .rank()
                .unwrap(),
            6
        );
        assert_eq!(sing_conditions_on_r::<Fp>(&frame, &f).unwrap(), 40);
    }

    #[test]
    fn sextic_is_unique_and_vanishes() {
        let (frame, _) = instance(1009, 42);
        let f = frame.field();
        let s = unique_sextic::<Fp>(&frame, &f).unwrap();
        assert_eq!((s.kernel_dimension, s.evaluation_rank), (1, 6));
        let x2: Vec<Fp> = frame.chords[1][0].iter().map(|&v| f.elem(v)).collect();
        let value = s
            .monomials
            .iter()
            .zip(&s.coefficients)
            .fold(f.elem(0), |acc, (e, c)| {
                acc + *c * eval_monomial(&f, e, &x2)
            });
        assert!(value.is_zero());
    }

    #[test]
    fn sextic_over_the_rationals() {
        let (frame, _) = instance(1009, 9);
        assert_eq!(
            unique_sextic::<Rational>(&frame, &())
                .unwrap()
                .kernel_dimension,
            1
        );
    }

    #[test]
    fn degenerate_points_break_uniqueness() {
        let (mut frame, _) = instance(1009, 42);
        // six points on one line through the base point impose too few conditions
        frame.chords = [
            [[0, 1, 1], [1, 1, 1]],
            [[2, 1, 1], [3, 1, 1]],
            [[4, 1, 1], [5, 1, 1]],
        ];
        let f = frame.field();
        assert!(matches!(
            unique_sextic::<Fp>(&frame, &f),
            Err(GeomError::NonGeneric(_))
        ));
    }

    #[test]
    fn smoothness_over_f11() {
        let r = smoothness_over(11, 42).unwrap();
        assert!(r.passed && r.heuristic);
        assert!(r.contains_scroll && r.node_gradients_nonzero);
        assert_eq!(r.scanned, 177_156);
    }
}
