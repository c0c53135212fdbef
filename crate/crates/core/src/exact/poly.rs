use std::collections::BTreeMap;

use crate::error::ExactError;

use super::field::FieldScalar;

/// Exponent vector of a monomial.
pub type Exponents = Vec<u32>;

/// Sparse multivariate polynomial over an exact field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiPoly<F: FieldScalar> {
    nvars: usize,
    ctx: F::Ctx,
    terms: BTreeMap<Exponents, F>,
}

impl<F: FieldScalar> MultiPoly<F> {
    pub fn zero(ctx: &F::Ctx, nvars: usize) -> Self {
        Self {
            nvars,
            ctx: ctx.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ctx: &F::Ctx, nvars: usize, c: F) -> Self {
        Self::monomial(ctx, vec![0; nvars], c)
    }

    pub fn monomial(ctx: &F::Ctx, exps: Exponents, coeff: F) -> Self {
        let mut p = Self::zero(ctx, exps.len());
        if !coeff.is_zero() {
            p.terms.insert(exps, coeff);
        }
        p
    }

    pub fn var(ctx: &F::Ctx, nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(ctx, e, F::one(ctx))
    }

    pub fn from_terms(
        ctx: &F::Ctx,
        nvars: usize,
        terms: impl IntoIterator<Item = (Exponents, F)>,
    ) -> Result<Self, ExactError> {
        let mut p = Self::zero(ctx, nvars);
        for (e, c) in terms {
            if e.len() != nvars {
                return Err(ExactError::Shape(format!(
                    "exponent vector of length {} in {nvars} variables",
                    e.len()
                )));
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    fn add_term(&mut self, e: Exponents, c: F) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(old) => {
                let s = old.clone() + c;
                if s.is_zero() {
                    self.terms.remove(&e);
                } else {
                    *old = s;
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn ctx(&self) -> &F::Ctx {
        &self.ctx
    }

    pub fn terms(&self) -> &BTreeMap<Exponents, F> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: &[u32]) -> F {
        self.terms
            .get(e)
            .cloned()
            .unwrap_or_else(|| F::zero(&self.ctx))
    }

    /// Total degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// All exponent sums agree. The zero polynomial counts as homogeneous.
    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|e| e.iter().sum::<u32>());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|x| x == d),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars, "variable counts differ");
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-F::one(&self.ctx)))
    }

    pub fn scale(&self, c: &F) -> Self {
        let mut out = Self::zero(&self.ctx, self.nvars);
        for (e, v) in &self.terms {
            out.add_term(e.clone(), v.clone() * c.clone());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars, "variable counts differ");
        let mut out = Self::zero(&self.ctx, self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Exponents = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1.clone() * c2.clone());
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::constant(&self.ctx, self.nvars, F::one(&self.ctx));
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn eval(&self, point: &[F]) -> F {
        assert_eq!(point.len(), self.nvars, "point has wrong dimension");
        let mut acc = F::zero(&self.ctx);
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e) {
                if k > 0 {
                    t = t * x.pow(k as u64);
                }
            }
            acc = acc + t;
        }
        acc
    }

    /// Partial derivative in variable `i`.
    pub fn derivative(&self, i: usize) -> Self {
        let mut out = Self::zero(&self.ctx, self.nvars);
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[i] -= 1;
            out.add_term(e2, c.clone() * F::from_i64(&self.ctx, e[i] as i64));
        }
        out
    }

    /// Coefficients in the order of `basis`. Terms outside the basis are an error.
    pub fn dense_coefficients(&self, basis: &MonomialBasis) -> Result<Vec<F>, ExactError> {
        let mut out = vec![F::zero(&self.ctx); basis.len()];
        for (e, c) in &self.terms {
            let idx = basis
                .index_of(e)
                .ok_or_else(|| ExactError::Shape(format!("monomial {e:?} outside basis")))?;
            out[idx] = c.clone();
        }
        Ok(out)
    }
}

/// Substitutes `map_forms[i]` for variable `i` of `f`.
///
/// The forms must share one degree `d`; a homogeneous `f` of degree `k`
/// yields a homogeneous result of degree `k * d`.
pub fn compose_form<F: FieldScalar>(
    f: &MultiPoly<F>,
    map_forms: &[MultiPoly<F>],
) -> Result<MultiPoly<F>, ExactError> {
    if f.nvars() != map_forms.len() {
        return Err(ExactError::Arity {
            vars: f.nvars(),
            forms: map_forms.len(),
        });
    }
    let Some(first) = map_forms.first() else {
        return Ok(f.clone());
    };
    let target_vars = first.nvars();
    let degree = first.degree();
    for g in map_forms {
        if g.nvars() != target_vars || !g.is_homogeneous() || (!g.is_zero() && g.degree() != degree)
        {
            return Err(ExactError::InhomogeneousSubstitution);
        }
    }
    let ctx = f.ctx().clone();
    // powers[i][k] = map_forms[i]^k, built lazily up to the largest exponent used
    let max_exp: Vec<u32> = (0..f.nvars())
        .map(|i| f.terms().keys().map(|e| e[i]).max().unwrap_or(0))
        .collect();
    let powers: Vec<Vec<MultiPoly<F>>> = map_forms
        .iter()
        .zip(&max_exp)
        .map(|(g, &m)| {
            let mut v = vec![MultiPoly::constant(&ctx, target_vars, F::one(&ctx))];
            for k in 1..=m as usize {
                let next = v[k - 1].mul(g);
                v.push(next);
            }
            v
        })
        .collect();
    let mut out = MultiPoly::zero(&ctx, target_vars);
    for (e, c) in f.terms() {
        let mut t = MultiPoly::constant(&ctx, target_vars, c.clone());
        for (i, &k) in e.iter().enumerate() {
            if k > 0 {
                t = t.mul(&powers[i][k as usize]);
            }
        }
        out = out.add(&t);
    }
    Ok(out)
}

/// All monomials of a fixed degree in a fixed number of variables, in
/// lexicographically decreasing order (x0^d first).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialBasis {
    nvars: usize,
    degree: u32,
    monomials: Vec<Exponents>,
    index: BTreeMap<Exponents, usize>,
}

impl MonomialBasis {
    pub fn new(nvars: usize, degree: u32) -> Self {
        let mut monomials = Vec::new();
        let mut cur = vec![0u32; nvars];
        fill(&mut monomials, &mut cur, 0, degree);
        let index = monomials
            .iter()
            .enumerate()
            .map(|(i, e)| (e.clone(), i))
            .collect();
        Self {
            nvars,
            degree,
            monomials,
            index,
        }
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn monomials(&self) -> &[Exponents] {
        &self.monomials
    }

    pub fn index_of(&self, e: &[u32]) -> Option<usize> {
        self.index.get(e).copied()
    }

    /// Evaluates every basis monomial at `point`.
    pub fn evaluate<F: FieldScalar>(&self, point: &[F]) -> Vec<F> {
        let ctx = point[0].ctx();
        self.monomials
            .iter()
            .map(|e| {
                e.iter()
                    .zip(point)
                    .fold(F::one(&ctx), |acc, (&k, x)| acc * x.pow(k as u64))
            })
            .collect()
    }
}

fn fill(out: &mut Vec<Exponents>, cur: &mut Exponents, var: usize, remaining: u32) {
    if var + 1 == cur.len() {
        cur[var] = remaining;
        out.push(cur.clone());
        return;
    }
    if cur.is_empty() {
        return;
    }
    for k in (0..=remaining).rev() {
        cur[var] = k;
        fill(out, cur, var + 1, remaining - k);
    }
    cur[var] = 0;
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}
