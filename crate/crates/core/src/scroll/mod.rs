//! The smooth septic scroll S(3,4) in P^8, its secant variety, projections
//! from 3-secant planes and the node certificates of the image in P^5.
//!
//! Coordinates on P^8 follow the parametrization of F_1 by quartics through
//! the blown-up point (1:0:0) with multiplicity 3. Slots 0..4 hold
//! `y_j = z0 z1^(3-j) z2^j` (the span of the exceptional twisted cubic),
//! slots 4..9 hold `x_i = z1^(4-i) z2^i` (a rational normal quartic).

mod f1;
mod frame;
mod nodes;

pub use f1::{h0_f1, F1Class};
pub use frame::{
    build_projection, sample_secant_frame, ProjectionMap, SecantFrame, FRAME_RETRY_BUDGET,
};
pub use nodes::{certify_nodes, secant_slice, F1Point, NodeCertificate, SecantSliceReport};

use crate::error::GeomError;
use crate::exact::modp::ModRing;
use crate::exact::{ExactMatrix, FieldScalar, MultiPoly};

/// Default prime for P^2 enumerations.
pub const SCAN_PRIME: u64 = 1009;

/// Exponents (z0, z1, z2) of the nine coordinate forms, in slot order.
pub const S34_MONOMIALS: [[u32; 3]; 9] = [
    [1, 3, 0],
    [1, 2, 1],
    [1, 1, 2],
    [1, 0, 3],
    [0, 4, 0],
    [0, 3, 1],
    [0, 2, 2],
    [0, 1, 3],
    [0, 0, 4],
];

/// Slot indices of the 2x7 matrix whose 2x2 minors cut out the scroll.
pub const SCROLL_MATRIX: [[usize; 7]; 2] = [[4, 5, 6, 7, 0, 1, 2], [5, 6, 7, 8, 1, 2, 3]];

/// Slot indices of the 1-generic 3x5 matrix whose 3x3 minors cut out Sec.
pub const SECANT_MATRIX: [[usize; 5]; 3] = [[4, 5, 6, 0, 1], [5, 6, 7, 1, 2], [6, 7, 8, 2, 3]];

/// Rational parametrization of a scroll by homogeneous forms in (z0, z1, z2).
#[derive(Debug, Clone)]
pub struct ScrollParam<F: FieldScalar> {
    pub forms: Vec<MultiPoly<F>>,
    pub base_point: [i64; 3],
}

/// The nine quartics of |4l - 3E| on F_1, embedding it as S(3,4) in P^8.
pub fn s34_param<F: FieldScalar>(ctx: &F::Ctx) -> ScrollParam<F> {
    let forms = S34_MONOMIALS
        .iter()
        .map(|e| MultiPoly::monomial(ctx, e.to_vec(), F::one(ctx)))
        .collect();
    ScrollParam {
        forms,
        base_point: [1, 0, 0],
    }
}

impl<F: FieldScalar> ScrollParam<F> {
    /// Image of a parameter point; the base point has no image.
    pub fn image(&self, z: &[F]) -> Result<Vec<F>, GeomError> {
        let v: Vec<F> = self.forms.iter().map(|f| f.eval(z)).collect();
        if v.iter().all(F::is_zero) {
            return Err(GeomError::BasePoint(format!("{z:?}")));
        }
        Ok(v)
    }
}

/// Image of an integer parameter point under the S(3,4) forms.
pub fn s34_image<F: FieldScalar>(ctx: &F::Ctx, z: &[i64; 3]) -> Vec<F> {
    let z: Vec<F> = z.iter().map(|&v| F::from_i64(ctx, v)).collect();
    S34_MONOMIALS
        .iter()
        .map(|e| {
            e.iter()
                .zip(&z)
                .fold(F::one(ctx), |acc, (&k, x)| acc * x.pow(k as u64))
        })
        .collect()
}

/// Raw residue version of [`s34_image`] for scans.
#[inline]
pub fn s34_image_raw(ring: &ModRing, z: [u64; 3]) -> [u64; 9] {
    let [z0, z1, z2] = z;
    let z1_2 = ring.mul(z1, z1);
    let z2_2 = ring.mul(z2, z2);
    let z1_3 = ring.mul(z1_2, z1);
    let z2_3 = ring.mul(z2_2, z2);
    let c = [z1_3, ring.mul(z1_2, z2), ring.mul(z1, z2_2), z2_3];
    [
        ring.mul(z0, c[0]),
        ring.mul(z0, c[1]),
        ring.mul(z0, c[2]),
        ring.mul(z0, c[3]),
        ring.mul(z1_3, z1),
        ring.mul(z1_3, z2),
        ring.mul(z1_2, z2_2),
        ring.mul(z1, z2_3),
        ring.mul(z2_3, z2),
    ]
}

/// Which determinantal variety to test against.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Determinantal {
    /// 2x2 minors of the 2x7 matrix: the scroll itself (21 equations).
    Scroll,
    /// 3x3 minors of the 3x5 matrix: the secant variety (10 equations).
    Secant,
}

fn pairs(n: usize) -> Vec<[usize; 2]> {
    let mut v = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            v.push([a, b]);
        }
    }
    v
}

fn triples(n: usize) -> Vec<[usize; 3]> {
    let mut v = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                v.push([a, b, c]);
            }
        }
    }
    v
}

fn det3<F: FieldScalar>(m: [[&F; 3]; 3]) -> F {
    let t = |a: &F, b: &F, c: &F| a.clone() * b.clone() * c.clone();
    t(m[0][0], m[1][1], m[2][2]) + t(m[0][1], m[1][2], m[2][0]) + t(m[0][2], m[1][0], m[2][1])
        - t(m[0][2], m[1][1], m[2][0])
        - t(m[0][0], m[1][2], m[2][1])
        - t(m[0][1], m[1][0], m[2][2])
}

/// All minors of the chosen matrix evaluated at `pt`; membership holds iff
/// every residual is zero.
pub fn determinantal_residuals<F: FieldScalar>(
    pt: &[F],
    which: Determinantal,
) -> Result<Vec<F>, GeomError> {
    if pt.len() != 9 {
        return Err(GeomError::Degenerate(format!(
            "point of P^8 needs 9 coordinates, got {}",
            pt.len()
        )));
    }
    if pt.iter().all(F::is_zero) {
        return Err(GeomError::ZeroVector);
    }
    Ok(match which {
        Determinantal::Scroll => pairs(7)
            .into_iter()
            .map(|[a, b]| {
                let m = SCROLL_MATRIX;
                pt[m[0][a]].clone() * pt[m[1][b]].clone()
                    - pt[m[0][b]].clone() * pt[m[1][a]].clone()
            })
            .collect(),
        Determinantal::Secant => triples(5)
            .into_iter()
            .map(|cols| {
                let m = SECANT_MATRIX;
                let e = |r: usize, c: usize| &pt[m[r][cols[c]]];
                det3([
                    [e(0, 0), e(0, 1), e(0, 2)],
                    [e(1, 0), e(1, 1), e(1, 2)],
                    [e(2, 0), e(2, 1), e(2, 2)],
                ])
            })
            .collect(),
    })
}

pub fn is_on<F: FieldScalar>(pt: &[F], which: Determinantal) -> Result<bool, GeomError> {
    Ok(determinantal_residuals(pt, which)?.iter().all(F::is_zero))
}

/// True iff all ten secant minors vanish, on raw residues. Exits on the first nonzero minor.
#[inline]
pub fn on_secant_raw(ring: &ModRing, pt: &[u64; 9]) -> bool {
    let m = SECANT_MATRIX;
    for [a, b, c] in SECANT_TRIPLES {
        let e = |r: usize, k: usize| pt[m[r][k]];
        let (a0, b0, c0) = (e(0, a), e(0, b), e(0, c));
        let (a1, b1, c1) = (e(1, a), e(1, b), e(1, c));
        let (a2, b2, c2) = (e(2, a), e(2, b), e(2, c));
        let p = ring.p();
        let pos = (a0 * ring.mul(b1, c2) + b0 * ring.mul(c1, a2) + c0 * ring.mul(a1, b2)) % p;
        let neg = (c0 * ring.mul(b1, a2) + a0 * ring.mul(c1, b2) + b0 * ring.mul(a1, c2)) % p;
        if pos != neg {
            return false;
        }
    }
    true
}

const SECANT_TRIPLES: [[usize; 3]; 10] = [
    [0, 1, 2],
    [0, 1, 3],
    [0, 1, 4],
    [0, 2, 3],
    [0, 2, 4],
    [0, 3, 4],
    [1, 2, 3],
    [1, 2, 4],
    [1, 3, 4],
    [2, 3, 4],
];

/// The minors of one determinantal matrix as polynomials in the nine
/// coordinates, with their gradients, for Jacobian-rank tests.
#[derive(Debug, Clone)]
pub struct MinorSystem<F: FieldScalar> {
    pub equations: Vec<MultiPoly<F>>,
    gradients: Vec<Vec<MultiPoly<F>>>,
}

impl<F: FieldScalar> MinorSystem<F> {
    pub fn new(ctx: &F::Ctx, which: Determinantal) -> Self {
        let var = |i: usize| MultiPoly::<F>::var(ctx, 9, i);
        let equations: Vec<MultiPoly<F>> = match which {
            Determinantal::Scroll => pairs(7)
                .into_iter()
                .map(|[a, b]| {
                    let m = SCROLL_MATRIX;
                    var(m[0][a])
                        .mul(&var(m[1][b]))
                        .sub(&var(m[0][b]).mul(&var(m[1][a])))
                })
                .collect(),
            Determinantal::Secant => triples(5)
                .into_iter()
                .map(|cols| {
                    let m = SECANT_MATRIX;
                    let e = |r: usize, c: usize| var(m[r][cols[c]]);
                    let mut acc = MultiPoly::zero(ctx, 9);
                    // Leibniz expansion over the six permutations of three columns
                    for (perm, sign) in [
                        ([0, 1, 2], 1),
                        ([1, 2, 0], 1),
                        ([2, 0, 1], 1),
                        ([2, 1, 0], -1),
                        ([0, 2, 1], -1),
                        ([1, 0, 2], -1),
                    ] {
                        let t = e(0, perm[0]).mul(&e(1, perm[1])).mul(&e(2, perm[2]));
                        acc = if sign > 0 { acc.add(&t) } else { acc.sub(&t) };
                    }
                    acc
                })
                .collect(),
        };
        let gradients = equations
            .iter()
            .map(|f| (0..9).map(|i| f.derivative(i)).collect())
            .collect();
        Self {
            equations,
            gradients,
        }
    }

    pub fn residuals(&self, pt: &[F]) -> Vec<F> {
        self.equations.iter().map(|f| f.eval(pt)).collect()
    }

    /// Jacobian matrix (equations x 9) at `pt`.
    pub fn jacobian(&self, pt: &[F]) -> Result<ExactMatrix<F>, GeomError> {
        Ok(ExactMatrix::from_rows(
            self.gradients
                .iter()
                .map(|g| g.iter().map(|d| d.eval(pt)).collect())
                .collect(),
        )?)
    }

    pub fn jacobian_rank(&self, pt: &[F]) -> Result<usize, GeomError> {
        Ok(self.jacobian(pt)?.rank()?)
    }
}
