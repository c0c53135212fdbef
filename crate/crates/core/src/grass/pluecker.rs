use crate::error::GeomError;
use crate::exact::{span_rank, ExactMatrix, FieldScalar};

/// Index pairs (i, j), i < j < 6, in lexicographic order.
pub const PAIRS: [(usize, usize); 15] = [
    (0, 1),
    (0, 2),
    (0, 3),
    (0, 4),
    (0, 5),
    (1, 2),
    (1, 3),
    (1, 4),
    (1, 5),
    (2, 3),
    (2, 4),
    (2, 5),
    (3, 4),
    (3, 5),
    (4, 5),
];

/// Position of `p_ij` (i < j) in a Pluecker vector.
pub const fn pair_index(i: usize, j: usize) -> usize {
    // pairs starting below i, then offset within row i
    i * (11 - i) / 2 + (j - i - 1)
}

/// For each quadruple i<j<k<l, the coordinate indices of
/// `p_ij p_kl - p_ik p_jl + p_il p_jk`.
pub const RELATIONS: [[usize; 6]; 15] = relations();

const fn relations() -> [[usize; 6]; 15] {
    let mut out = [[0; 6]; 15];
    let mut n = 0;
    let mut i = 0;
    while i < 6 {
        let mut j = i + 1;
        while j < 6 {
            let mut k = j + 1;
            while k < 6 {
                let mut l = k + 1;
                while l < 6 {
                    out[n] = [
                        pair_index(i, j),
                        pair_index(k, l),
                        pair_index(i, k),
                        pair_index(j, l),
                        pair_index(i, l),
                        pair_index(j, k),
                    ];
                    n += 1;
                    l += 1;
                }
                k += 1;
            }
            j += 1;
        }
        i += 1;
    }
    out
}

/// A point of P^14 in Pluecker coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PlueckerVector<F: FieldScalar> {
    pub coords: Vec<F>,
}

impl<F: FieldScalar> PlueckerVector<F> {
    pub fn new(coords: Vec<F>) -> Result<Self, GeomError> {
        if coords.len() != 15 {
            return Err(GeomError::Degenerate(format!(
                "Pluecker vector needs 15 coordinates, got {}",
                coords.len()
            )));
        }
        Ok(Self { coords })
    }

    pub fn get(&self, i: usize, j: usize) -> F {
        if i < j {
            self.coords[pair_index(i, j)].clone()
        } else if i > j {
            -self.coords[pair_index(j, i)].clone()
        } else {
            F::zero(&self.coords[0].ctx())
        }
    }
}

/// `a ^ b`.
pub fn pluecker_line<F: FieldScalar>(a: &[F], b: &[F]) -> Result<PlueckerVector<F>, GeomError> {
    if a.len() != 6 || b.len() != 6 {
        return Err(GeomError::Degenerate(
            "points of P^5 need 6 coordinates".into(),
        ));
    }
    let coords: Vec<F> = PAIRS
        .iter()
        .map(|&(i, j)| a[i].clone() * b[j].clone() - a[j].clone() * b[i].clone())
        .collect();
    if coords.iter().all(F::is_zero) {
        return Err(GeomError::Proportional);
    }
    Ok(PlueckerVector { coords })
}

fn relation<F: FieldScalar>(v: &[F], r: &[usize; 6]) -> F {
    v[r[0]].clone() * v[r[1]].clone() - v[r[2]].clone() * v[r[3]].clone()
        + v[r[4]].clone() * v[r[5]].clone()
}

/// The 15 Pluecker quadrics at `v`.
pub fn pluecker_residuals<F: FieldScalar>(v: &[F]) -> Result<Vec<F>, GeomError> {
    if v.len() != 15 {
        return Err(GeomError::Degenerate(format!(
            "expected 15 coordinates, got {}",
            v.len()
        )));
    }
    if v.iter().all(F::is_zero) {
        return Err(GeomError::ZeroVector);
    }
    Ok(RELATIONS.iter().map(|r| relation(v, r)).collect())
}

pub fn in_grassmannian<F: FieldScalar>(v: &[F]) -> Result<bool, GeomError> {
    Ok(pluecker_residuals(v)?.iter().all(F::is_zero))
}

/// Polarizations `B(v, w)` of the 15 quadrics.
pub fn polarized<F: FieldScalar>(v: &[F], w: &[F]) -> Vec<F> {
    RELATIONS
        .iter()
        .map(|r| {
            let t = |a: usize, b: usize| {
                v[r[a]].clone() * w[r[b]].clone() + w[r[a]].clone() * v[r[b]].clone()
            };
            t(0, 1) - t(2, 3) + t(4, 5)
        })
        .collect()
}

/// True iff the lines with Pluecker vectors `v1`, `v2` meet in P^5.
pub fn lines_meet<F: FieldScalar>(
    v1: &PlueckerVector<F>,
    v2: &PlueckerVector<F>,
) -> Result<bool, GeomError> {
    for v in [v1, v2] {
        if !in_grassmannian(&v.coords)? {
            return Err(GeomError::NonGeneric(
                "vector is not a point of G(1,5)".into(),
            ));
        }
    }
    if span_rank(&[v1.coords.clone(), v2.coords.clone()])? < 2 {
        return Err(GeomError::Proportional);
    }
    Ok(polarized(&v1.coords, &v2.coords).iter().all(F::is_zero))
}

/// Two points of P^5 spanning the line of a decomposable Pluecker vector.
pub fn decode<F: FieldScalar>(v: &PlueckerVector<F>) -> Result<[Vec<F>; 2], GeomError> {
    if !in_grassmannian(&v.coords)? {
        return Err(GeomError::NonGeneric(
            "vector is not a point of G(1,5)".into(),
        ));
    }
    let (k, &(i, j)) = PAIRS
        .iter()
        .enumerate()
        .find(|(k, _)| !v.coords[*k].is_zero())
        .expect("nonzero vector");
    debug_assert_eq!(pair_index(i, j), k);
    // rows i and j of the skew matrix span the line when p_ij != 0
    let row = |r: usize| (0..6).map(|c| v.get(r, c)).collect::<Vec<F>>();
    Ok([row(i), row(j)])
}

/// Intersection point of two meeting lines, each given by two spanning points.
pub fn intersection_point<F: FieldScalar>(
    a: &[Vec<F>; 2],
    b: &[Vec<F>; 2],
) -> Result<Vec<F>, GeomError> {
    // solve s0 a0 + s1 a1 - t0 b0 - t1 b1 = 0
    let cols = [
        a[0].clone(),
        a[1].clone(),
        b[0].iter().map(|x| -x.clone()).collect(),
        b[1].iter().map(|x| -x.clone()).collect(),
    ];
    let m = ExactMatrix::from_rows(cols.to_vec())?.transpose();
    let kernel = m.kernel_vectors()?;
    let [s] = &kernel[..] else {
        return Err(GeomError::NonGeneric(format!(
            "lines meet in a space of dimension {}",
            kernel.len() as i64 - 1
        )));
    };
    Ok((0..6)
        .map(|c| s[0].clone() * a[0][c].clone() + s[1].clone() * a[1][c].clone())
        .collect())
}

/// Raw residue test of the 15 quadrics, exiting on the first failure.
#[inline]
pub(crate) fn in_grassmannian_raw(v: &[u32; 15], p: u32) -> bool {
    let pp = p * p;
    RELATIONS
        .iter()
        .all(|r| (v[r[0]] * v[r[1]] + v[r[4]] * v[r[5]] + pp - v[r[2]] * v[r[3]]).is_multiple_of(p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{Fp, PrimeField};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn f() -> PrimeField {
        PrimeField::new(1009).unwrap()
    }

    fn pt(v: [i64; 6]) -> Vec<Fp> {
        v.iter().map(|&x| f().elem(x)).collect()
    }

    fn random_point(rng: &mut ChaCha8Rng) -> Vec<Fp> {
        (0..6).map(|_| f().elem(rng.gen_range(0..1009))).collect()
    }

    #[test]
    fn indexing_is_lexicographic() {
        for (k, &(i, j)) in PAIRS.iter().enumerate() {
            assert_eq!(pair_index(i, j), k);
        }
        assert_eq!(RELATIONS[0], [0, 9, 1, 6, 2, 5]);
    }

    #[test]
    fn coordinate_lines() {
        let v = pluecker_line(&pt([1, 0, 0, 0, 0, 0]), &pt([0, 1, 0, 0, 0, 0])).unwrap();
        assert_eq!(v.coords[0], f().elem(1));
        assert!(v.coords[1..].iter().all(|c| c.is_zero()));
        let v = pluecker_line(&pt([1, 0, 0, 0, 0, 0]), &pt([0, 0, 0, 1, 0, 0])).unwrap();
        assert_eq!(v.coords[pair_index(0, 3)], f().elem(1));
        let a = pt([1, 2, 3, 4, 5, 6]);
        let twice: Vec<Fp> = a.iter().map(|x| *x * f().elem(2)).collect();
        assert_eq!(
            pluecker_line(&a, &twice).unwrap_err(),
            GeomError::Proportional
        );
    }

    #[test]
    fn wedges_satisfy_relations_and_random_vectors_do_not() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..200 {
            let v = pluecker_line(&random_point(&mut rng), &random_point(&mut rng)).unwrap();
            assert!(in_grassmannian(&v.coords).unwrap());
        }
        let mut misses = 0;
        for _ in 0..2000 {
            let v: Vec<Fp> = (0..15).map(|_| f().elem(rng.gen_range(0..1009))).collect();
            if in_grassmannian(&v).unwrap() {
                misses += 1;
            }
        }
        assert_eq!(misses, 0);
        assert_eq!(
            pluecker_residuals(&vec![f().elem(0); 15]).unwrap_err(),
            GeomError::ZeroVector
        );
    }

    #[test]
    fn sum_of_disjoint_lines_is_not_decomposable() {
        let a = pluecker_line(&pt([1, 0, 0, 0, 0, 0]), &pt([0, 1, 0, 0, 0, 0])).unwrap();
        let b = pluecker_line(&pt([0, 0, 1, 0, 0, 0]), &pt([0, 0, 0, 1, 0, 0])).unwrap();
        let sum: Vec<Fp> = a
            .coords
            .iter()
            .zip(&b.coords)
            .map(|(x, y)| *x + *y)
            .collect();
        assert!(!in_grassmannian(&sum).unwrap());
    }

    /// Independent oracle: two lines meet iff their four spanning points have rank <= 3.
    #[test]
    fn lines_meet_matches_rank_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let (mut met, mut missed) = (0, 0);
        for k in 0..1000 {
            let (a0, a1) = (random_point(&mut rng), random_point(&mut rng));
            let b0 = random_point(&mut rng);
            // half the pairs share a point by construction
            let b1 = if k % 2 == 0 {
                let (s, t) = (
                    f().elem(rng.gen_range(0..1009)),
                    f().elem(rng.gen_range(1..1009)),
                );
                a0.iter().zip(&a1).map(|(x, y)| s * *x + t * *y).collect()
            } else {
                random_point(&mut rng)
            };
            let v1 = pluecker_line(&a0, &a1).unwrap();
            let v2 = pluecker_line(&b0, &b1).unwrap();
            let oracle = span_rank(&[a0, a1, b0, b1]).unwrap() <= 3;
            assert_eq!(lines_meet(&v1, &v2).unwrap(), oracle);
            assert_eq!(lines_meet(&v2, &v1).unwrap(), oracle);
            if oracle {
                met += 1;
            } else {
                missed += 1;
            }
        }
        assert!(met >= 500 && missed > 400);
    }

    #[test]
    fn proportional_inputs_are_rejected() {
        let v = pluecker_line(&pt([1, 0, 0, 0, 0, 0]), &pt([0, 1, 0, 0, 0, 0])).unwrap();
        let w = PlueckerVector::new(v.coords.iter().map(|x| *x * f().elem(5)).collect()).unwrap();
        assert_eq!(lines_meet(&v, &w).unwrap_err(), GeomError::Proportional);
    }

    #[test]
    fn decode_recovers_the_line() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..100 {
            let (a, b) = (random_point(&mut rng), random_point(&mut rng));
            let v = pluecker_line(&a, &b).unwrap();
            let [c, d] = decode(&v).unwrap();
            assert_eq!(
                span_rank(&[a.clone(), b.clone(), c.clone(), d.clone()]).unwrap(),
                2
            );
            let w = pluecker_line(&c, &d).unwrap();
            assert_eq!(span_rank(&[v.coords.clone(), w.coords]).unwrap(), 1);
        }
    }

    #[test]
    fn intersection_of_meeting_lines() {
        let o = pt([1, 2, 3, 4, 5, 6]);
        let a = [o.clone(), pt([0, 1, 0, 0, 7, 0])];
        let b = [pt([3, 0, 0, 1, 0, 2]), o.clone()];
        let x = intersection_point(&a, &b).unwrap();
        assert_eq!(span_rank(&[x, o]).unwrap(), 1);
    }

    #[test]
    fn raw_relations_match_generic() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let small = PrimeField::new(13).unwrap();
        for k in 0..500 {
            let v: Vec<Fp> = if k % 2 == 0 {
                let a: Vec<Fp> = (0..6).map(|_| small.elem(rng.gen_range(0..13))).collect();
                let b: Vec<Fp> = (0..6).map(|_| small.elem(rng.gen_range(0..13))).collect();
                PAIRS
                    .iter()
                    .map(|&(i, j)| a[i] * b[j] - a[j] * b[i])
                    .collect()
            } else {
                (0..15).map(|_| small.elem(rng.gen_range(0..13))).collect()
            };
            if v.iter().all(|x| x.is_zero()) {
                continue;
            }
            let raw: [u32; 15] = std::array::from_fn(|i| v[i].value() as u32);
            assert_eq!(in_grassmannian_raw(&raw, 13), in_grassmannian(&v).unwrap());
        }
    }
}
