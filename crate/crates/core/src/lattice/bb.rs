use num_integer::Integer;
use num_rational::Rational64;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::LatticeError;

/// Divisor class `x f + y delta` on the Hilbert square of a genus-g K3 surface.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BBClass {
    pub x: i64,
    pub y: i64,
    pub g: i64,
}

impl BBClass {
    pub fn new(x: i64, y: i64, g: i64) -> Self {
        Self { x, y, g }
    }

    pub fn f(g: i64) -> Self {
        Self::new(1, 0, g)
    }

    pub fn delta(g: i64) -> Self {
        Self::new(0, 1, g)
    }
}

/// Curve class `a f_p + b delta_p`, dual to the divisor basis up to
/// `f . f_p = 2g - 2`, `delta . delta_p = -1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CurveClass {
    pub a: i64,
    pub b: i64,
    pub g: i64,
}

impl CurveClass {
    pub fn new(a: i64, b: i64, g: i64) -> Self {
        Self { a, b, g }
    }

    /// `a f_p - b delta_p`.
    pub fn minus(a: i64, b: i64, g: i64) -> Self {
        Self::new(a, -b, g)
    }

    pub fn f_p(g: i64) -> Self {
        Self::new(1, 0, g)
    }

    pub fn delta_p(g: i64) -> Self {
        Self::new(0, 1, g)
    }
}

fn same_genus(g1: i64, g2: i64) -> Result<(), LatticeError> {
    if g1 == g2 {
        Ok(())
    } else {
        Err(LatticeError::GenusMismatch(g1, g2))
    }
}

/// The Beauville-Bogomolov form `(2g-2) x1 x2 - 2 y1 y2`.
pub fn bb_q(c1: &BBClass, c2: &BBClass) -> Result<i64, LatticeError> {
    same_genus(c1.g, c2.g)?;
    Ok((2 * c1.g - 2) * c1.x * c2.x - 2 * c1.y * c2.y)
}

/// Intersection of a curve class with a divisor class.
pub fn n1_dot(c: &CurveClass, d: &BBClass) -> Result<i64, LatticeError> {
    same_genus(c.g, d.g)?;
    Ok((2 * c.g - 2) * c.a * d.x - c.b * d.y)
}

/// Rational divisor `w` with `q(w, u) = c . u` for every divisor `u`.
fn dual_divisor(c: &CurveClass) -> (Rational64, Rational64) {
    (Rational64::from_integer(c.a), Rational64::new(c.b, 2))
}

fn q_rational(g: i64, u: (Rational64, Rational64), v: (Rational64, Rational64)) -> Rational64 {
    Rational64::from_integer(2 * g - 2) * u.0 * v.0 - Rational64::from_integer(2) * u.1 * v.1
}

/// `q(w_c, w_c)` for the dual divisor `w_c` of a curve class.
pub fn q_curve(c: &CurveClass) -> Rational64 {
    let w = dual_divisor(c);
    q_rational(c.g, w, w)
}

/// `q(w_c, w_d)`, the bilinear extension of [`q_curve`].
pub fn q_curve_pair(c: &CurveClass, d: &CurveClass) -> Result<Rational64, LatticeError> {
    same_genus(c.g, d.g)?;
    Ok(q_rational(c.g, dual_divisor(c), dual_divisor(d)))
}

/// Quadratic `c2 k^2 + c1 k + c0` in an integer parameter.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Quadratic {
    c2: Rational64,
    c1: Rational64,
    c0: Rational64,
}

impl Quadratic {
    /// Square of the affine function `u + v k`.
    fn square_of(u: Rational64, v: Rational64) -> Self {
        Self {
            c2: v * v,
            c1: Rational64::from_integer(2) * u * v,
            c0: u * u,
        }
    }

    fn scale(self, s: Rational64) -> Self {
        Self {
            c2: self.c2 * s,
            c1: self.c1 * s,
            c0: self.c0 * s,
        }
    }

    fn add(self, o: Self) -> Self {
        Self {
            c2: self.c2 + o.c2,
            c1: self.c1 + o.c1,
            c0: self.c0 + o.c0,
        }
    }

    /// Positive multiple with coprime integer coefficients.
    fn primitive(self) -> [i64; 3] {
        let den = [self.c2, self.c1, self.c0]
            .iter()
            .fold(1i64, |acc, c| acc.lcm(c.denom()));
        let ints = [self.c2, self.c1, self.c0].map(|c| (c * den).to_integer());
        let g = ints.iter().fold(0i64, |acc, c| acc.gcd(c));
        let sign = if ints[0] < 0 { -1 } else { 1 };
        ints.map(|c| sign * c / g.max(1))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Scrolls1Certificate {
    pub genus: i64,
    pub divisor: BBClass,
    /// `[m, n, r]` meaning `m a - n b = r` for `R = a f_p - b delta_p`.
    pub degree_relation: [i64; 3],
    /// `a = a0 + da k`, `b = b0 + db k`.
    pub particular: [i64; 2],
    pub step: [i64; 2],
    pub q_lower_bound: Rational64,
    /// `[c2, c1, c0]` of the reduced inequality `c2 k^2 + c1 k + c0 <= 0`.
    pub inequality: [i64; 3],
    pub discriminant: i64,
    /// Every integer solution satisfies `|k| <= search_bound`.
    pub search_bound: i64,
    pub integer_solutions: Vec<i64>,
    pub class: CurveClass,
    pub class_q: Rational64,
    pub class_degree: i64,
}

/// Classifies curve classes `R = a f_p - b delta_p` of degree 7 against
/// `2f - 7 delta` at genus 14 with `q(R, R) >= -5/2`.
pub fn scrolls1_certificate() -> Result<Scrolls1Certificate, LatticeError> {
    let g = 14;
    let divisor = BBClass::new(2, -7, g);
    let degree = 7;
    let q_lower_bound = Rational64::new(-5, 2);

    // R . divisor = m a - n b
    let m = n1_dot(&CurveClass::f_p(g), &divisor)?;
    let n = n1_dot(&CurveClass::delta_p(g), &divisor)?;
    let egcd = m.extended_gcd(&-n);
    if degree % egcd.gcd != 0 {
        return Err(LatticeError::NoSolution(format!("{m}a - {n}b = {degree}")));
    }
    let scale = degree / egcd.gcd;
    let (da, db) = (n / egcd.gcd, m / egcd.gcd);
    // reduce the particular solution so that 0 <= a0 < da
    let (mut a0, mut b0) = (egcd.x * scale, egcd.y * scale);
    let shift = Integer::div_floor(&a0, &da);
    a0 -= shift * da;
    b0 -= shift * db;
    debug_assert_eq!(m * a0 - n * b0, degree);

    // q(R, R) = (2g - 2) a^2 - b^2 / 2, as a quadratic in k
    let qa = Quadratic::square_of(a0.into(), da.into()).scale(Rational64::from_integer(2 * g - 2));
    let qb = Quadratic::square_of(b0.into(), db.into()).scale(Rational64::new(-1, 2));
    let q = qa.add(qb);
    // q(k) >= bound  <=>  bound - q(k) <= 0
    let reduced = q.scale(Rational64::from_integer(-1)).add(Quadratic {
        c2: Rational64::zero(),
        c1: Rational64::zero(),
        c0: q_lower_bound,
    });
    if !reduced.c2.is_positive() {
        return Err(LatticeError::NotDefinite);
    }
    let inequality = reduced.primitive();
    let [c2, c1, c0] = inequality;
    let discriminant = c1 * c1 - 4 * c2 * c0;
    let search_bound = (c1.abs() + c0.abs()) / c2 + 1;
    let integer_solutions: Vec<i64> = (-search_bound..=search_bound)
        .filter(|k| c2 * k * k + c1 * k + c0 <= 0)
        .collect();
    let [k] = integer_solutions[..] else {
        return Err(LatticeError::NoSolution(format!(
            "expected a single integer solution, found {integer_solutions:?}"
        )));
    };
    let class = CurveClass::minus(a0 + da * k, b0 + db * k, g);
    Ok(Scrolls1Certificate {
        genus: g,
        divisor,
        degree_relation: [m, n, degree],
        particular: [a0, b0],
        step: [da, db],
        q_lower_bound,
        inequality,
        discriminant,
        search_bound,
        integer_solutions,
        class_q: q_curve(&class),
        class_degree: n1_dot(&class, &divisor)?,
        class,
    })
}
