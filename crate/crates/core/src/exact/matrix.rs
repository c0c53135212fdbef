use std::fmt;

use crate::error::ExactError;

use super::field::{check_domain, FieldScalar};

/// Dense row-major matrix over an exact field.
#[derive(Clone, PartialEq, Eq)]
pub struct ExactMatrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

/// Output of [`ExactMatrix::rref_rank`].
#[derive(Debug, Clone)]
pub struct RankKernel<F> {
    pub rank: usize,
    /// `cols x (cols - rank)`; its columns form a basis of the null space.
    pub kernel: ExactMatrix<F>,
    /// Pivot column of each nonzero row of the reduced form.
    pub pivots: Vec<usize>,
}

impl<F: FieldScalar> ExactMatrix<F> {
    pub fn new(rows: usize, cols: usize, data: Vec<F>) -> Result<Self, ExactError> {
        if data.len() != rows * cols {
            return Err(ExactError::Shape(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(ctx: &F::Ctx, rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![F::zero(ctx); rows * cols],
        }
    }

    pub fn identity(ctx: &F::Ctx, n: usize) -> Self {
        let mut m = Self::zeros(ctx, n, n);
        for i in 0..n {
            m.set(i, i, F::one(ctx));
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Result<Self, ExactError> {
        let cols = rows.first().map_or(0, Vec::len);
        let nrows = rows.len();
        let mut data = Vec::with_capacity(nrows * cols);
        for r in rows {
            if r.len() != cols {
                return Err(ExactError::Ragged {
                    expected: cols,
                    found: r.len(),
                });
            }
            data.extend(r);
        }
        Ok(Self {
            rows: nrows,
            cols,
            data,
        })
    }

    pub fn from_i64_rows(ctx: &F::Ctx, rows: &[Vec<i64>]) -> Result<Self, ExactError> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| F::from_i64(ctx, v)).collect())
                .collect(),
        )
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &F {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: F) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[F] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<F> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn row_vecs(&self) -> Vec<Vec<F>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                data.push(self.get(r, c).clone());
            }
        }
        Self {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self, ExactError> {
        if self.cols != other.rows {
            return Err(ExactError::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        check_domain(self.data.iter().chain(other.data.iter()))?;
        let ctx = self
            .data
            .first()
            .or(other.data.first())
            .ok_or(ExactError::EmptyMatrix)?
            .ctx();
        let mut out = Self::zeros(&ctx, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j).clone() + a.clone() * other.get(k, j).clone();
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[F]) -> Result<Vec<F>, ExactError> {
        if v.len() != self.cols {
            return Err(ExactError::Shape(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .map(|(a, b)| a.clone() * b.clone())
                    .reduce(|x, y| x + y)
                    .expect("nonempty row")
            })
            .collect())
    }

    /// Stacks the rows of `other` under `self`.
    pub fn vstack(&self, other: &Self) -> Result<Self, ExactError> {
        if self.cols != other.cols {
            return Err(ExactError::Shape("column counts differ".into()));
        }
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Ok(Self {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    /// Exact rank and a null-space basis by Gauss-Jordan elimination.
    pub fn rref_rank(&self) -> Result<RankKernel<F>, ExactError> {
        if self.rows == 0 || self.cols == 0 {
            return Err(ExactError::EmptyMatrix);
        }
        check_domain(self.data.iter())?;
        let ctx = self.data[0].ctx();
        let mut a = self.data.clone();
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(pr) = (r..rows).find(|&i| !a[i * cols + c].is_zero()) else {
                continue;
            };
            if pr != r {
                for j in 0..cols {
                    a.swap(pr * cols + j, r * cols + j);
                }
            }
            let inv = a[r * cols + c].inv().expect("pivot is nonzero");
            for j in c..cols {
                a[r * cols + j] = a[r * cols + j].clone() * inv.clone();
            }
            for i in 0..rows {
                if i == r || a[i * cols + c].is_zero() {
                    continue;
                }
                let factor = a[i * cols + c].clone();
                for j in c..cols {
                    let v = a[i * cols + j].clone() - factor.clone() * a[r * cols + j].clone();
                    a[i * cols + j] = v;
                }
            }
            pivots.push(c);
            r += 1;
        }
        let rank = pivots.len();
        let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
        let mut kernel = ExactMatrix::zeros(&ctx, cols, free.len());
        for (k, &fc) in free.iter().enumerate() {
            kernel.set(fc, k, F::one(&ctx));
            for (pr, &pc) in pivots.iter().enumerate() {
                kernel.set(pc, k, -a[pr * cols + fc].clone());
            }
        }
        Ok(RankKernel {
            rank,
            kernel,
            pivots,
        })
    }

    pub fn rank(&self) -> Result<usize, ExactError> {
        Ok(self.rref_rank()?.rank)
    }

    /// Null-space basis as a list of vectors.
    pub fn kernel_vectors(&self) -> Result<Vec<Vec<F>>, ExactError> {
        let rk = self.rref_rank()?;
        Ok((0..rk.kernel.ncols())
            .map(|c| rk.kernel.column(c))
            .collect())
    }

    /// Inverse of a square matrix of full rank.
    pub fn inverse(&self) -> Result<Option<Self>, ExactError> {
        if self.rows != self.cols {
            return Err(ExactError::Shape("inverse of a non-square matrix".into()));
        }
        if self.rows == 0 {
            return Err(ExactError::EmptyMatrix);
        }
        let n = self.rows;
        let ctx = self.data[0].ctx();
        let mut aug = Vec::with_capacity(n);
        for i in 0..n {
            let mut row = self.row(i).to_vec();
            row.extend((0..n).map(|j| if i == j { F::one(&ctx) } else { F::zero(&ctx) }));
            aug.push(row);
        }
        let aug = Self::from_rows(aug)?;
        // Reduce only over the left block: a zero column there means singular.
        let left_rank = Self::from_rows(self.row_vecs())?.rank()?;
        if left_rank < n {
            return Ok(None);
        }
        let reduced = aug.reduced_form()?;
        let mut inv = Self::zeros(&ctx, n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, reduced.get(i, n + j).clone());
            }
        }
        Ok(Some(inv))
    }

    /// Reduced row echelon form.
    pub fn reduced_form(&self) -> Result<Self, ExactError> {
        if self.rows == 0 || self.cols == 0 {
            return Err(ExactError::EmptyMatrix);
        }
        check_domain(self.data.iter())?;
        let mut m = self.clone();
        let (rows, cols) = (m.rows, m.cols);
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(pr) = (r..rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            for j in 0..cols {
                m.data.swap(pr * cols + j, r * cols + j);
            }
            let inv = m.get(r, c).inv().expect("pivot is nonzero");
            for j in 0..cols {
                let v = m.get(r, j).clone() * inv.clone();
                m.set(r, j, v);
            }
            for i in 0..rows {
                if i != r && !m.get(i, c).is_zero() {
                    let f = m.get(i, c).clone();
                    for j in 0..cols {
                        let v = m.get(i, j).clone() - f.clone() * m.get(r, j).clone();
                        m.set(i, j, v);
                    }
                }
            }
            r += 1;
        }
        Ok(m)
    }

    pub fn entries(&self) -> &[F] {
        &self.data
    }
}

impl<F: fmt::Debug> fmt::Debug for ExactMatrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ExactMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", &self.data[r * self.cols..(r + 1) * self.cols])?;
        }
        write!(f, "]")
    }
}

/// Rank of a list of vectors of equal length.
pub fn span_rank<F: FieldScalar>(vectors: &[Vec<F>]) -> Result<usize, ExactError> {
    if vectors.is_empty() {
        return Ok(0);
    }
    ExactMatrix::from_rows(vectors.to_vec())?.rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{Fp, PrimeField};
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use proptest::prelude::*;

    fn q(v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }

    #[test]
    fn identity_has_full_rank() {
        let f = PrimeField::new(10007).unwrap();
        let rk = ExactMatrix::<Fp>::identity(&f, 4).rref_rank().unwrap();
        assert_eq!(rk.rank, 4);
        assert_eq!(rk.kernel.ncols(), 0);
    }

    #[test]
    fn proportional_rows() {
        let m = ExactMatrix::<BigRational>::from_i64_rows(&(), &[vec![1, 2, 3], vec![2, 4, 6]])
            .unwrap();
        let rk = m.rref_rank().unwrap();
        assert_eq!(rk.rank, 1);
        assert_eq!(rk.kernel.ncols(), 2);
        for c in 0..2 {
            let v = m.apply(&rk.kernel.column(c)).unwrap();
            assert!(v.iter().all(|x| x == &q(0)));
        }
    }

    #[test]
    fn mixed_moduli_rejected() {
        let a = PrimeField::new(11).unwrap();
        let b = PrimeField::new(13).unwrap();
        let m = ExactMatrix::from_rows(vec![vec![a.elem(1), b.elem(2)]]).unwrap();
        assert!(matches!(m.rref_rank(), Err(ExactError::DomainMismatch(..))));
    }

    #[test]
    fn empty_matrix_rejected() {
        let m = ExactMatrix::<BigRational>::from_rows(vec![]).unwrap();
        assert_eq!(m.rref_rank().unwrap_err(), ExactError::EmptyMatrix);
    }

    fn random_fp_matrix(f: &PrimeField, n: usize, seed: &[u64]) -> ExactMatrix<Fp> {
        let data = (0..n * n)
            .map(|i| f.elem((seed[i % seed.len()].wrapping_mul(i as u64 + 7) % 10007) as i64))
            .collect();
        ExactMatrix::new(n, n, data).unwrap()
    }

    proptest! {
        #[test]
        fn rank_plus_nullity(rows in 1usize..6, cols in 1usize..6, vals in proptest::collection::vec(-5i64..5, 36)) {
            let data: Vec<Vec<i64>> = (0..rows).map(|r| (0..cols).map(|c| vals[r * 6 + c]).collect()).collect();
            let m = ExactMatrix::<BigRational>::from_i64_rows(&(), &data).unwrap();
            let rk = m.rref_rank().unwrap();
            prop_assert!(rk.rank <= rows.min(cols));
            prop_assert_eq!(rk.rank + rk.kernel.ncols(), cols);
            if rk.kernel.ncols() > 0 {
                prop_assert_eq!(rk.kernel.rank().unwrap(), rk.kernel.ncols());
            }
        }

        #[test]
        fn modular_rank_never_exceeds_rational(vals in proptest::collection::vec(-40i64..40, 25)) {
            let data: Vec<Vec<i64>> = vals.chunks(5).map(|c| c.to_vec()).collect();
            let rq = ExactMatrix::<BigRational>::from_i64_rows(&(), &data).unwrap().rank().unwrap();
            let f = PrimeField::new(7).unwrap();
            let rp = ExactMatrix::<Fp>::from_i64_rows(&f, &data).unwrap().rank().unwrap();
            prop_assert!(rp <= rq);
        }

        #[test]
        fn inverse_reproduces_identity(seed in proptest::collection::vec(1u64..1_000_000, 4)) {
            let f = PrimeField::new(10007).unwrap();
            let m = random_fp_matrix(&f, 5, &seed);
            if let Some(inv) = m.inverse().unwrap() {
                prop_assert_eq!(m.mul(&inv).unwrap(), ExactMatrix::identity(&f, 5));
            } else {
                prop_assert!(m.rank().unwrap() < 5);
            }
        }
    }

    #[test]
    fn modular_rank_bounded_by_rational_on_many_integer_matrices() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let f = PrimeField::new(10007).unwrap();
        for _ in 0..100 {
            let rows = rng.gen_range(1..7);
            let cols = rng.gen_range(1..7);
            let data: Vec<Vec<i64>> = (0..rows)
                .map(|_| (0..cols).map(|_| rng.gen_range(-3..4)).collect())
                .collect();
            let rq = ExactMatrix::<BigRational>::from_i64_rows(&(), &data)
                .unwrap()
                .rank()
                .unwrap();
            let rp = ExactMatrix::<Fp>::from_i64_rows(&f, &data)
                .unwrap()
                .rank()
                .unwrap();
            assert!(rp <= rq);
        }
    }
}
