use serde::Serialize;

use crate::error::GeomError;
use crate::exact::modp::to_raw;
use crate::exact::{span_rank, ExactMatrix, FieldScalar, Fp};
use crate::scroll::{ProjectionMap, SecantFrame};

use super::pluecker::{in_grassmannian, lines_meet, PlueckerVector, PAIRS};

/// Binary forms in (s, t), coefficient `k` on `s^(d-k) t^k`.
type Form<F> = Vec<F>;

fn form_mul<F: FieldScalar>(a: &[F], b: &[F]) -> Form<F> {
    let ctx = a[0].ctx();
    let mut out = vec![F::zero(&ctx); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = out[i + j].clone() + x.clone() * y.clone();
        }
    }
    out
}

fn form_sub<F: FieldScalar>(a: &[F], b: &[F]) -> Form<F> {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.clone() - y.clone())
        .collect()
}

fn degree<F: FieldScalar>(p: &[F]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

/// Remainder and quotient of univariate polynomials (coefficient `k` on `t^k`).
fn div_rem<F: FieldScalar>(a: &[F], b: &[F]) -> (Vec<F>, Vec<F>) {
    let db = degree(b).expect("nonzero divisor");
    let lead_inv = b[db].inv().expect("nonzero leading coefficient");
    let ctx = b[0].ctx();
    let mut rem = a.to_vec();
    let mut quot = vec![F::zero(&ctx); a.len().saturating_sub(db).max(1)];
    while let Some(dr) = degree(&rem) {
        if dr < db {
            break;
        }
        let c = rem[dr].clone() * lead_inv.clone();
        for k in 0..=db {
            rem[dr - db + k] = rem[dr - db + k].clone() - c.clone() * b[k].clone();
        }
        quot[dr - db] = c;
    }
    (quot, rem)
}

fn poly_gcd<F: FieldScalar>(a: Vec<F>, b: Vec<F>) -> Vec<F> {
    let (mut a, mut b) = (a, b);
    while degree(&b).is_some() {
        let (_, r) = div_rem(&a, &b);
        a = b;
        b = r;
    }
    a
}

/// The curve of rulings of a projected scroll, as a map P^1 -> P^14.
#[derive(Debug, Clone)]
pub struct RulingCurve<F: FieldScalar> {
    /// One binary form per Pluecker coordinate, all of degree `degree`.
    pub forms: Vec<Vec<F>>,
    pub degree: usize,
    /// Degree of the common factor removed from the wedge forms.
    pub content_degree: usize,
}

impl<F: FieldScalar> RulingCurve<F> {
    pub fn eval(&self, s: &F, t: &F) -> Vec<F> {
        let ctx = s.ctx();
        let sp: Vec<F> = (0..=self.degree).map(|k| s.pow(k as u64)).collect();
        let tp: Vec<F> = (0..=self.degree).map(|k| t.pow(k as u64)).collect();
        self.forms
            .iter()
            .map(|f| {
                f.iter().enumerate().fold(F::zero(&ctx), |acc, (k, c)| {
                    acc + c.clone() * sp[self.degree - k].clone() * tp[k].clone()
                })
            })
            .collect()
    }

    /// d/dt of the curve in the chart s = 1.
    pub fn derivative(&self, t: &F) -> Vec<F> {
        let ctx = t.ctx();
        self.forms
            .iter()
            .map(|f| {
                f.iter()
                    .enumerate()
                    .skip(1)
                    .fold(F::zero(&ctx), |acc, (k, c)| {
                        acc + F::from_i64(&ctx, k as i64) * c.clone() * t.pow(k as u64 - 1)
                    })
            })
            .collect()
    }

    /// 15 x (degree + 1) coefficient matrix.
    pub fn coefficients(&self) -> Result<ExactMatrix<F>, GeomError> {
        Ok(ExactMatrix::from_rows(self.forms.clone())?)
    }

    /// Coefficient vectors in P^14, one per monomial; they span the curve.
    pub fn coefficient_span(&self) -> Vec<Vec<F>> {
        self.coefficients()
            .expect("rectangular")
            .transpose()
            .row_vecs()
    }

    pub fn span_rank(&self) -> Result<usize, GeomError> {
        Ok(self.coefficients()?.rank()?)
    }
}

/// Wedge forms of the projected rulings, before content removal.
pub fn ruling_wedges<F: FieldScalar>(proj: &ProjectionMap<F>) -> Vec<Form<F>> {
    let rows = proj.forms.row_vecs();
    // ruling over (s:t) is spanned by P(s^3, s^2 t, s t^2, t^3, 0..) and P(0.., s^4, .., t^4)
    let cubic: Vec<Form<F>> = rows.iter().map(|r| r[0..4].to_vec()).collect();
    let quartic: Vec<Form<F>> = rows.iter().map(|r| r[4..9].to_vec()).collect();
    PAIRS
        .iter()
        .map(|&(i, j)| {
            form_sub(
                &form_mul(&cubic[i], &quartic[j]),
                &form_mul(&cubic[j], &quartic[i]),
            )
        })
        .collect()
}

/// Divides the 15 binary forms by their common factor.
pub fn remove_content<F: FieldScalar>(forms: &[Form<F>]) -> Result<RulingCurve<F>, GeomError> {
    let d = forms[0].len() - 1;
    let nonzero: Vec<&Form<F>> = forms.iter().filter(|f| degree(f).is_some()).collect();
    if nonzero.is_empty() {
        return Err(GeomError::ZeroVector);
    }
    // factors of s show up as a drop in the t-degree
    let s_power = nonzero
        .iter()
        .map(|f| d - degree(f).unwrap())
        .min()
        .unwrap();
    let g = nonzero
        .iter()
        .fold(nonzero[0].to_vec(), |g, f| poly_gcd(g, f.to_vec()));
    let gdeg = degree(&g).unwrap();
    let reduced_degree = d - s_power - gdeg;
    let ctx = forms[0][0].ctx();
    let reduced = forms
        .iter()
        .map(|f| {
            if degree(f).is_none() {
                return vec![F::zero(&ctx); reduced_degree + 1];
            }
            let (q, r) = div_rem(f, &g);
            debug_assert!(degree(&r).is_none());
            let mut q = q;
            q.resize(reduced_degree + 1, F::zero(&ctx));
            q
        })
        .collect();
    Ok(RulingCurve {
        forms: reduced,
        degree: reduced_degree,
        content_degree: s_power + gdeg,
    })
}

/// The ruling curve of the projected scroll; must be a degree 7 curve spanning a P^7.
pub fn ruling_curve<F: FieldScalar>(proj: &ProjectionMap<F>) -> Result<RulingCurve<F>, GeomError> {
    let curve = remove_content(&ruling_wedges(proj))?;
    if curve.degree != 7 {
        return Err(GeomError::NonGeneric(format!(
            "ruling curve has degree {}",
            curve.degree
        )));
    }
    let rank = curve.span_rank()?;
    if rank != 8 {
        return Err(GeomError::NonGeneric(format!(
            "ruling curve spans a space of rank {rank}"
        )));
    }
    Ok(curve)
}

/// Ruling parameter `(z1 : z2)` of a point of F_1 off the exceptional curve.
pub fn ruling_parameter(z: &[i64; 3]) -> [i64; 2] {
    [z[1], z[2]]
}

/// The bisecant lines of the ruling curve through the pairs of rulings over each node.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BisecantCertificate {
    pub prime: u64,
    /// Pluecker points of the two rulings over each node.
    pub node_rulings: Vec<[Vec<u64>; 2]>,
    pub rulings_meet: Vec<bool>,
    /// Every sampled point of each bisecant is a line of P^5.
    pub pencils_in_grassmannian: Vec<bool>,
    /// Rank of the four spanning vectors of each pair of bisecants.
    pub pair_span_ranks: Vec<usize>,
    /// Meeting pairs among rulings over different nodes.
    pub cross_meetings: usize,
    /// Parameters in P^1(F_p) whose ruling lies on each bisecant.
    pub parameters_on_bisecant: Vec<Vec<[u64; 2]>>,
    pub expected_parameters: Vec<[[u64; 2]; 2]>,
    pub failures: Vec<String>,
    pub passed: bool,
}

fn normalize_param(p: u64, st: [i64; 2]) -> [u64; 2] {
    let ring = crate::exact::modp::ModRing::new(crate::exact::PrimeField::new(p).expect("prime"));
    let mut v = [ring.reduce(st[0]), ring.reduce(st[1])];
    ring.normalize(&mut v);
    v
}

/// Points of P^1(F_p): `(1 : t)` for each t, then `(0 : 1)`.
pub fn p1_points(p: u64) -> impl Iterator<Item = [u64; 2]> {
    (0..p).map(|t| [1, t]).chain(std::iter::once([0, 1]))
}

/// Checks the three bisecants over F_p.
pub fn bisecant_certificate(
    curve: &RulingCurve<Fp>,
    frame: &SecantFrame,
) -> Result<BisecantCertificate, GeomError> {
    let f = curve.forms[0][0].ctx();
    let p = f.modulus();
    let at = |st: [u64; 2]| curve.eval(&f.elem(st[0] as i64), &f.elem(st[1] as i64));
    let mut failures = Vec::new();
    let mut node_rulings = Vec::new();
    let mut rulings_meet = Vec::new();
    let mut pencils = Vec::new();
    let mut expected = Vec::new();
    let mut lines = Vec::new();
    for (i, [x, y]) in frame.chords.iter().enumerate() {
        let u = normalize_param(p, ruling_parameter(x));
        let v = normalize_param(p, ruling_parameter(y));
        let (a, b) = (at(u), at(v));
        if a.iter().all(Fp::is_zero) || b.iter().all(Fp::is_zero) {
            return Err(GeomError::NonGeneric(format!(
                "ruling curve undefined over node {i}"
            )));
        }
        let meet = lines_meet(
            &PlueckerVector::new(a.clone())?,
            &PlueckerVector::new(b.clone())?,
        )?;
        if !meet {
            failures.push(format!("rulings over node {i} do not meet"));
        }
        let mut pencil_ok = true;
        for (s, t) in [(1i64, 1i64), (1, 2), (3, -1), (5, 7)] {
            let c: Vec<Fp> = a
                .iter()
                .zip(&b)
                .map(|(x, y)| f.elem(s) * *x + f.elem(t) * *y)
                .collect();
            pencil_ok &= in_grassmannian(&c)?;
        }
        if !pencil_ok {
            failures.push(format!("bisecant {i} leaves the Grassmannian"));
        }
        rulings_meet.push(meet);
        pencils.push(pencil_ok);
        node_rulings.push([to_raw(&a), to_raw(&b)]);
        expected.push([u.min(v), u.max(v)]);
        lines.push([a, b]);
    }

    let mut pair_span_ranks = Vec::new();
    let mut cross_meetings = 0;
    for i in 0..3 {
        for j in i + 1..3 {
            let r = span_rank(&[
                lines[i][0].clone(),
                lines[i][1].clone(),
                lines[j][0].clone(),
                lines[j][1].clone(),
            ])?;
            if r != 4 {
                failures.push(format!("bisecants {i} and {j} meet"));
            }
            pair_span_ranks.push(r);
            for a in &lines[i] {
                for b in &lines[j] {
                    if lines_meet(
                        &PlueckerVector::new(a.clone())?,
                        &PlueckerVector::new(b.clone())?,
                    )? {
                        cross_meetings += 1;
                    }
                }
            }
        }
    }
    if cross_meetings != 0 {
        failures.push(format!(
            "{cross_meetings} rulings over different nodes meet"
        ));
    }

    let mut on_bisecant = vec![Vec::new(); 3];
    for st in p1_points(p) {
        let g = at(st);
        for (i, l) in lines.iter().enumerate() {
            if span_rank(&[l[0].clone(), l[1].clone(), g.clone()])? == 2 {
                on_bisecant[i].push(st);
            }
        }
    }
    for (i, found) in on_bisecant.iter_mut().enumerate() {
        found.sort();
        if found[..] != expected[i][..] {
            failures.push(format!("bisecant {i} meets the ruling curve at {found:?}"));
        }
    }

    Ok(BisecantCertificate {
        prime: p,
        node_rulings,
        rulings_meet,
        pencils_in_grassmannian: pencils,
        pair_span_ranks,
        cross_meetings,
        parameters_on_bisecant: on_bisecant,
        expected_parameters: expected,
        passed: failures.is_empty(),
        failures,
    })
}
