use std::collections::HashSet;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::GeomError;
use crate::exact::modp::ModRing;
use crate::exact::{span_rank, ExactMatrix, FieldScalar, Fp, PrimeField};

use super::pluecker::{in_grassmannian, in_grassmannian_raw, polarized};

/// Largest number of spanning vectors accepted by [`slice_grassmannian`].
pub const MAX_SLICE_SPAN: usize = 8;

/// Largest prime accepted by [`slice_grassmannian`].
pub const MAX_SLICE_PRIME: u64 = 17;

/// Normalized point of P^14 as raw residues.
pub type RawPoint = Vec<u64>;

fn ring(p: u64) -> Result<ModRing, GeomError> {
    Ok(ModRing::new(PrimeField::new(p)?))
}

/// All F_p-points of G(1,5) in the projective span of `span`, normalized and sorted.
pub fn slice_grassmannian(span: &[RawPoint], p: u64) -> Result<Vec<RawPoint>, GeomError> {
    let k = span.len();
    if k > MAX_SLICE_SPAN {
        return Err(GeomError::SearchTooLarge(format!("span of {k} vectors")));
    }
    if p > MAX_SLICE_PRIME {
        return Err(GeomError::PrimeOutOfRange(p));
    }
    let ring = ring(p)?;
    if span.iter().any(|v| v.len() != 15) {
        return Err(GeomError::Degenerate(
            "span vectors need 15 coordinates".into(),
        ));
    }
    if k == 0 || span_rank(&span.iter().map(|v| ring.to_fp(v)).collect::<Vec<_>>())? != k {
        return Err(GeomError::Degenerate("span vectors are dependent".into()));
    }
    let p32 = p as u32;
    let rows: Vec<[u32; 15]> = span
        .iter()
        .map(|v| std::array::from_fn(|c| (v[c] % p) as u32))
        .collect();

    let mut found: Vec<RawPoint> = Vec::new();
    for lead in 0..k {
        let free = k - 1 - lead;
        // split the first two free digits across threads
        let split = free.min(2);
        let chunks = (p as usize).pow(split as u32);
        let part: Vec<RawPoint> = (0..chunks)
            .into_par_iter()
            .flat_map_iter(|chunk| {
                let mut v = rows[lead];
                let mut c = chunk;
                for d in 0..split {
                    let digit = c % p as usize;
                    c /= p as usize;
                    for _ in 0..digit {
                        add_row(&mut v, &rows[lead + 1 + d], p32);
                    }
                }
                let inner = &rows[lead + 1 + split..];
                let mut out = Vec::new();
                odometer(v, inner, p32, |v| {
                    if in_grassmannian_raw(v, p32) {
                        out.push(v.iter().map(|&x| x as u64).collect::<RawPoint>());
                    }
                });
                out.into_iter()
            })
            .collect();
        found.extend(part);
    }
    for v in found.iter_mut() {
        ring.normalize(v);
    }
    found.sort_unstable();
    Ok(found)
}

#[inline]
fn add_row(v: &mut [u32; 15], r: &[u32; 15], p: u32) {
    for (x, y) in v.iter_mut().zip(r) {
        *x += y;
        if *x >= p {
            *x -= p;
        }
    }
}

/// Visits `v + sum c_j rows[j]` for all digit vectors c in F_p^len(rows).
fn odometer(mut v: [u32; 15], rows: &[[u32; 15]], p: u32, mut visit: impl FnMut(&[u32; 15])) {
    let mut digits = vec![0u32; rows.len()];
    loop {
        visit(&v);
        let mut d = rows.len();
        loop {
            if d == 0 {
                return;
            }
            d -= 1;
            add_row(&mut v, &rows[d], p);
            digits[d] += 1;
            if digits[d] < p {
                break;
            }
            // p additions of a row return v to where it was
            digits[d] = 0;
        }
    }
}

/// Dimension of the affine tangent cone of G(1,5) intersected with `span`, at `x`.
///
/// Two at a smooth point of a curve section, at least three at a singular point.
pub fn tangent_dimension<F: FieldScalar>(span: &[Vec<F>], x: &[F]) -> Result<usize, GeomError> {
    let cols: Vec<Vec<F>> = span.iter().map(|r| polarized(x, r)).collect();
    let m = ExactMatrix::from_rows(cols)?;
    Ok(span.len() - m.rank()?)
}

/// Points of the pencil spanned by `a`, `b`, normalized.
pub fn pencil_points(ring: &ModRing, a: &[u64], b: &[u64]) -> Vec<RawPoint> {
    let p = ring.p();
    (0..p)
        .map(|t| (1, t))
        .chain(std::iter::once((0, 1)))
        .map(|(s, t)| {
            let mut v: RawPoint = a
                .iter()
                .zip(b)
                .map(|(&x, &y)| ring.add(ring.mul(s, x), ring.mul(t, y)))
                .collect();
            ring.normalize(&mut v);
            v
        })
        .collect()
}

/// Lines of P^14 all of whose F_p-points are among `points`, each given by
/// two normalized points.
pub fn line_components(points: &[RawPoint], p: u64) -> Result<Vec<[RawPoint; 2]>, GeomError> {
    let ring = ring(p)?;
    let all: HashSet<&RawPoint> = points.iter().collect();
    let mut covered: HashSet<(usize, usize)> = HashSet::new();
    let index: std::collections::HashMap<&RawPoint, usize> =
        points.iter().enumerate().map(|(i, x)| (x, i)).collect();
    let mut out = Vec::new();
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            if covered.contains(&(i, j)) {
                continue;
            }
            let line = pencil_points(&ring, &points[i], &points[j]);
            if line.iter().all(|x| all.contains(x)) {
                let mut ids: Vec<usize> = line.iter().map(|x| index[x]).collect();
                ids.sort_unstable();
                for (k, &a) in ids.iter().enumerate() {
                    for &b in &ids[k + 1..] {
                        covered.insert((a, b));
                    }
                }
                out.push([points[ids[0]].clone(), points[ids[1]].clone()]);
            }
        }
    }
    Ok(out)
}

/// Linear forms cutting out the span, for post hoc membership checks.
fn annihilator(span: &[Vec<Fp>]) -> Result<Vec<Vec<Fp>>, GeomError> {
    Ok(ExactMatrix::from_rows(span.to_vec())?.kernel_vectors()?)
}

/// Classification of a slice of G(1,5) by a P^7 spanned by a rational curve and three bisecants.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SliceReport {
    pub prime: u64,
    pub span_rank: usize,
    pub points: usize,
    /// Slice points failing the Pluecker relations or the span equations.
    pub unverified: usize,
    pub curve_points: usize,
    pub curve_points_missing: usize,
    pub line_points: Vec<usize>,
    /// Points on two of the lines.
    pub line_overlaps: usize,
    pub curve_points_on_lines: Vec<usize>,
    pub residual_points: usize,
    pub residual_span_rank: usize,
    /// Points of each line inside the span of the residual points.
    pub residual_closure_on_lines: Vec<Vec<RawPoint>>,
    /// Points of each line where the slice is singular.
    pub singular_on_lines: Vec<Vec<RawPoint>>,
    pub failures: Vec<String>,
    pub passed: bool,
}

/// Classifies the points of a forward slice: the ruling curve, its three
/// bisecants and the residual quartic.
///
/// `curve` lists the curve's F_p-points, `lines` the spanning pairs of the bisecants.
pub fn residual_analysis(
    span: &[RawPoint],
    points: &[RawPoint],
    curve: &[RawPoint],
    lines: &[[RawPoint; 2]],
    p: u64,
) -> Result<SliceReport, GeomError> {
    let ring = ring(p)?;
    let mut failures = Vec::new();
    let span_fp: Vec<Vec<Fp>> = span.iter().map(|v| ring.to_fp(v)).collect();
    let ann = annihilator(&span_fp)?;
    let unverified = points
        .iter()
        .filter(|x| {
            let xf = ring.to_fp(x);
            !in_grassmannian(&xf).unwrap_or(false)
                || ann.iter().any(|a| {
                    !a.iter()
                        .zip(&xf)
                        .fold(ring.field().elem(0), |s, (u, v)| s + *u * *v)
                        .is_zero()
                })
        })
        .count();
    if unverified > 0 {
        failures.push(format!("{unverified} slice points fail re-verification"));
    }

    let all: HashSet<&RawPoint> = points.iter().collect();
    let curve_set: HashSet<RawPoint> = curve.iter().cloned().collect();
    let line_sets: Vec<HashSet<RawPoint>> = lines
        .iter()
        .map(|[a, b]| pencil_points(&ring, a, b).into_iter().collect())
        .collect();
    let curve_missing = curve_set.iter().filter(|x| !all.contains(x)).count();
    if curve_missing > 0 {
        failures.push(format!(
            "{curve_missing} curve points missing from the slice"
        ));
    }
    for (i, l) in line_sets.iter().enumerate() {
        let missing = l.iter().filter(|x| !all.contains(x)).count();
        if missing > 0 {
            failures.push(format!(
                "{missing} points of line {i} missing from the slice"
            ));
        }
    }

    let line_points: Vec<usize> = line_sets
        .iter()
        .map(|l| points.iter().filter(|x| l.contains(*x)).count())
        .collect();
    let line_overlaps = points
        .iter()
        .filter(|x| line_sets.iter().filter(|l| l.contains(*x)).count() > 1)
        .count();
    if line_overlaps > 0 {
        failures.push(format!("{line_overlaps} points lie on two lines"));
    }
    let curve_points_on_lines: Vec<usize> = line_sets
        .iter()
        .map(|l| curve_set.iter().filter(|x| l.contains(*x)).count())
        .collect();
    let residual: Vec<&RawPoint> = points
        .iter()
        .filter(|x| !curve_set.contains(*x) && line_sets.iter().all(|l| !l.contains(*x)))
        .collect();
    let lo = p.saturating_sub(5) as usize;
    if residual.len() < lo || residual.len() > p as usize + 1 {
        failures.push(format!(
            "{} residual points, expected {lo}..={}",
            residual.len(),
            p + 1
        ));
    }
    let residual_fp: Vec<Vec<Fp>> = residual.iter().map(|v| ring.to_fp(v)).collect();
    let residual_span_rank = if residual_fp.is_empty() {
        0
    } else {
        span_rank(&residual_fp)?
    };
    if residual_span_rank != 5 {
        failures.push(format!(
            "residual points span rank {residual_span_rank}, expected 5"
        ));
    }

    let mut closure = Vec::new();
    let mut singular = Vec::new();
    for (i, [a, b]) in lines.iter().enumerate() {
        let mut on_span = Vec::new();
        let mut sing = Vec::new();
        for x in pencil_points(&ring, a, b) {
            let xf = ring.to_fp(&x);
            let mut with = residual_fp.clone();
            with.push(xf.clone());
            if residual_span_rank > 0 && span_rank(&with)? == residual_span_rank {
                on_span.push(x.clone());
            }
            if tangent_dimension(&span_fp, &xf)? >= 3 {
                sing.push(x);
            }
        }
        if on_span.len() != 1 {
            failures.push(format!(
                "line {i} has {} points in the residual span",
                on_span.len()
            ));
        }
        // the two curve points and the residual closure point
        let expected: HashSet<&RawPoint> = curve_set
            .iter()
            .filter(|x| line_sets[i].contains(*x))
            .chain(on_span.iter())
            .collect();
        if sing.len() != 3 || sing.iter().any(|x| !expected.contains(x)) {
            failures.push(format!("line {i} has singular points {sing:?}"));
        }
        closure.push(on_span);
        singular.push(sing);
    }
    for (i, &n) in curve_points_on_lines.iter().enumerate() {
        if n != 2 {
            failures.push(format!("line {i} meets the curve in {n} rational points"));
        }
    }

    Ok(SliceReport {
        prime: p,
        span_rank: span.len(),
        points: points.len(),
        unverified,
        curve_points: curve_set.len(),
        curve_points_missing: curve_missing,
        line_points,
        line_overlaps,
        curve_points_on_lines,
        residual_points: residual.len(),
        residual_span_rank,
        residual_closure_on_lines: closure,
        singular_on_lines: singular,
        passed: failures.is_empty(),
        failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::modp::projective_count;
    use crate::grass::pluecker::{pluecker_line, PAIRS};

    fn raw_line(ring: &ModRing, a: [u64; 6], b: [u64; 6]) -> RawPoint {
        let v = pluecker_line(&ring.to_fp(&a), &ring.to_fp(&b)).unwrap();
        let mut r: RawPoint = v.coords.iter().map(Fp::value).collect();
        ring.normalize(&mut r);
        r
    }

    #[test]
    fn odometer_visits_every_combination_once() {
        let rows: Vec<[u32; 15]> = (0..3)
            .map(|i| std::array::from_fn(|c| (c == i) as u32))
            .collect();
        let mut seen = HashSet::new();
        odometer([0; 15], &rows, 5, |v| {
            assert!(seen.insert(*v));
        });
        assert_eq!(seen.len(), 125);
    }

    /// Oracle: brute force over every point of P^(k-1) through the generic relations.
    #[test]
    fn slice_matches_brute_force() {
        let p = 7;
        let ring = ring(p).unwrap();
        let span = vec![
            raw_line(&ring, [1, 0, 0, 0, 0, 0], [0, 1, 0, 0, 0, 0]),
            raw_line(&ring, [0, 0, 1, 0, 0, 0], [0, 0, 0, 1, 0, 0]),
            raw_line(&ring, [1, 0, 1, 0, 0, 0], [0, 0, 0, 0, 1, 0]),
            vec![1, 2, 3, 4, 5, 6, 0, 1, 2, 3, 4, 5, 6, 0, 1],
        ];
        let found = slice_grassmannian(&span, p).unwrap();
        let mut brute = Vec::new();
        for idx in 0..projective_count(p, 3) {
            let c = crate::exact::modp::projective_point(p, 3, idx);
            let mut v: RawPoint = (0..15)
                .map(|j| (0..4).fold(0, |s, i| ring.add(s, ring.mul(c[i], span[i][j]))))
                .collect();
            if in_grassmannian(&ring.to_fp(&v)).unwrap() {
                ring.normalize(&mut v);
                brute.push(v);
            }
        }
        brute.sort();
        assert_eq!(found, brute);
        assert!(found.len() >= 3);
    }

    #[test]
    fn pencil_through_a_point_is_entirely_in_the_slice() {
        let p = 11;
        let ring = ring(p).unwrap();
        let a = raw_line(&ring, [1, 0, 0, 0, 0, 0], [0, 1, 0, 0, 0, 0]);
        let b = raw_line(&ring, [1, 0, 0, 0, 0, 0], [0, 0, 1, 0, 0, 0]);
        let found = slice_grassmannian(&[a.clone(), b.clone()], p).unwrap();
        assert_eq!(found.len(), 12);
        let pencil: HashSet<RawPoint> = pencil_points(&ring, &a, &b).into_iter().collect();
        assert!(found.iter().all(|x| pencil.contains(x)));
    }

    #[test]
    fn line_components_of_two_pencils() {
        let p = 7;
        let ring = ring(p).unwrap();
        let common = raw_line(&ring, [1, 0, 0, 0, 0, 0], [0, 1, 0, 0, 0, 0]);
        let a = raw_line(&ring, [1, 0, 0, 0, 0, 0], [0, 0, 1, 0, 0, 0]);
        let b = raw_line(&ring, [0, 1, 0, 0, 0, 0], [0, 0, 0, 1, 0, 0]);
        let pts = slice_grassmannian(&[common, a, b], p).unwrap();
        assert_eq!(pts.len(), 15);
        assert_eq!(line_components(&pts, p).unwrap().len(), 2);
    }

    #[test]
    fn rejects_large_or_dependent_inputs() {
        let v: RawPoint = (0..15).map(|i| (i == 0) as u64).collect();
        let nine = vec![v.clone(); 9];
        assert!(matches!(
            slice_grassmannian(&nine, 11),
            Err(GeomError::SearchTooLarge(_))
        ));
        assert_eq!(
            slice_grassmannian(std::slice::from_ref(&v), 19).unwrap_err(),
            GeomError::PrimeOutOfRange(19)
        );
        assert!(matches!(
            slice_grassmannian(&[v.clone(), v], 11),
            Err(GeomError::Degenerate(_))
        ));
    }

    #[test]
    fn tangent_dimension_detects_the_vertex_of_a_line_pair() {
        // two pencils meeting in one line: singular at the common point
        let p = 13;
        let ring = ring(p).unwrap();
        let common = raw_line(&ring, [1, 0, 0, 0, 0, 0], [0, 1, 0, 0, 0, 0]);
        let a = raw_line(&ring, [1, 0, 0, 0, 0, 0], [0, 0, 1, 0, 0, 0]);
        let b = raw_line(&ring, [0, 1, 0, 0, 0, 0], [0, 0, 0, 1, 0, 0]);
        let span: Vec<Vec<Fp>> = [&common, &a, &b].iter().map(|v| ring.to_fp(v)).collect();
        assert_eq!(tangent_dimension(&span, &ring.to_fp(&common)).unwrap(), 3);
        assert_eq!(tangent_dimension(&span, &ring.to_fp(&a)).unwrap(), 2);
        assert_eq!(PAIRS.len(), 15);
    }
}
