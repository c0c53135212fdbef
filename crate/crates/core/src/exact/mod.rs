//! Exact scalars, matrices and polynomials.
//!
//! Everything downstream reduces to rank computations, evaluation and
//! substitution over F_p or Q; there is no floating point anywhere.

mod field;
mod matrix;
pub mod modp;
mod poly;

pub use field::{check_domain, is_prime, reduce_rational, Domain, FieldScalar, Fp, PrimeField};
pub use matrix::{span_rank, ExactMatrix, RankKernel};
pub use poly::{binomial, compose_form, Exponents, MonomialBasis, MultiPoly};

/// Default prime for screening rank computations.
pub const RANK_PRIME: u64 = 10007;

/// Rational scalars.
pub type Rational = num_rational::BigRational;

/// Rank over `F` of an integer matrix, given as rows.
pub fn integer_rank<F: FieldScalar>(
    ctx: &F::Ctx,
    rows: &[Vec<i64>],
) -> Result<usize, crate::ExactError> {
    ExactMatrix::<F>::from_i64_rows(ctx, rows)?.rank()
}
