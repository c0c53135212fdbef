use num_integer::Roots;
use num_rational::Rational64;
use num_traits::{Signed, Zero};
use serde::Serialize;

use super::gram::GramLattice;
use crate::error::LatticeError;

/// Constraints on `D = x e0 + y e1 + z1 e2 + z2 e3 + z3 e4` from prescribed
/// `D^2` and `C . D`, with the three last basis vectors mutually orthogonal
/// of equal square and equal pairings with `e0` and `e1`:
///
/// `z1 + z2 + z3 = sum_x x + sum_y y + sum_c`
/// `z1^2 + z2^2 + z3^2 = xx x^2 + xy x y + yy y^2 + lx x + ly y + c`
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ReducedEquation {
    pub square: i64,
    pub dot_with_c: i64,
    pub sum_x: Rational64,
    pub sum_y: Rational64,
    pub sum_c: Rational64,
    pub xx: Rational64,
    pub xy: Rational64,
    pub yy: Rational64,
    pub lx: Rational64,
    pub ly: Rational64,
    pub c: Rational64,
}

impl ReducedEquation {
    /// Same system with the constant of the square-sum replaced.
    pub fn with_constant(mut self, c: i64) -> Self {
        self.c = c.into();
        self
    }

    fn sum_at(&self, x: i64, y: i64) -> Rational64 {
        self.sum_x * x + self.sum_y * y + self.sum_c
    }

    fn squares_at(&self, x: i64, y: i64) -> Rational64 {
        self.xx * x * x + self.xy * x * y + self.yy * y * y + self.lx * x + self.ly * y + self.c
    }

    fn is_negative_definite(&self) -> bool {
        let four = Rational64::from_integer(4);
        self.xx.is_negative() && four * self.xx * self.yy - self.xy * self.xy > Rational64::zero()
    }
}

/// Eliminates `z1 + z2 + z3` using `C . D = dot_with_c` and solves
/// `D^2 = square` for `z1^2 + z2^2 + z3^2`.
pub fn diophantine_reduce(
    l: &GramLattice,
    square: i64,
    dot_with_c: i64,
) -> Result<ReducedEquation, LatticeError> {
    let g = &l.gram;
    let shape_ok = l.is_symmetric() && g.len() == 5;
    let tail_ok = shape_ok
        && (2..5).all(|i| {
            g[0][i] == g[0][2]
                && g[1][i] == g[1][2]
                && (2..5).all(|j| g[i][j] == if i == j { g[2][2] } else { 0 })
        });
    if !tail_ok || g[2][2] == 0 {
        return Err(LatticeError::NoSolution(
            "lattice does not have three orthogonal interchangeable tail vectors".into(),
        ));
    }
    let r = |v: i64| Rational64::from_integer(v);
    let (a, b, ab) = (r(g[0][0]), r(g[1][1]), r(g[0][1]));
    let (u, v, w) = (r(g[0][2]), r(g[1][2]), r(g[2][2]));
    // C . e_i is the i-th row sum
    let deg: Vec<Rational64> = g.iter().map(|row| r(row.iter().sum())).collect();
    if deg[2].is_zero() {
        return Err(LatticeError::NoSolution(
            "tail vectors are orthogonal to C".into(),
        ));
    }
    // s = (dot - deg0 x - deg1 y) / deg2
    let (sum_x, sum_y, sum_c) = (-deg[0] / deg[2], -deg[1] / deg[2], r(dot_with_c) / deg[2]);
    // D^2 = a x^2 + 2 ab x y + b y^2 + 2 (u x + v y) s + w sum z^2
    let two = r(2);
    let xx = -(a + two * u * sum_x) / w;
    let yy = -(b + two * v * sum_y) / w;
    let xy = -(two * ab + two * u * sum_y + two * v * sum_x) / w;
    let lx = -(two * u * sum_c) / w;
    let ly = -(two * v * sum_c) / w;
    let c = r(square) / w;
    Ok(ReducedEquation {
        square,
        dot_with_c,
        sum_x,
        sum_y,
        sum_c,
        xx,
        xy,
        yy,
        lx,
        ly,
        c,
    })
}

/// Integer box containing every real (x, y) where the square-sum is nonnegative.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SearchBox {
    pub x: (i64, i64),
    pub y: (i64, i64),
}

/// Integer interval containing the real solutions of `a t^2 + b t + c >= 0`, `a < 0`.
fn concave_interval(a: Rational64, b: Rational64, c: Rational64) -> Option<(i64, i64)> {
    // clear denominators: A t^2 + B t + C >= 0 with A < 0
    let den = [a, b, c].iter().fold(1i128, |acc, q| {
        num_integer::lcm(acc, i128::from(*q.denom()))
    });
    let int = |q: Rational64| i128::from(*q.numer()) * (den / i128::from(*q.denom()));
    let (a, b, c) = (-int(a), int(b), int(c));
    // a t^2 - b t - c <= 0 with a > 0; roots (b +- sqrt(disc)) / 2a
    let disc = b * b + 4 * a * c;
    if disc < 0 {
        return None;
    }
    let s = disc.sqrt() + 1;
    let lo = (b - s).div_euclid(2 * a);
    let hi = (b + s).div_euclid(2 * a) + 1;
    Some((lo as i64, hi as i64))
}

impl ReducedEquation {
    /// Bounds from maximizing the square-sum over one variable and
    /// requiring the remaining concave quadratic to be nonnegative.
    pub fn search_box(&self) -> Result<Option<SearchBox>, LatticeError> {
        if !self.is_negative_definite() {
            return Err(LatticeError::NotDefinite);
        }
        let four = Rational64::from_integer(4);
        // max over y of yy y^2 + (xy x + ly) y + rest(x)
        let x = concave_interval(
            self.xx - self.xy * self.xy / (four * self.yy),
            self.lx - self.xy * self.ly / (Rational64::from_integer(2) * self.yy),
            self.c - self.ly * self.ly / (four * self.yy),
        );
        let y = concave_interval(
            self.yy - self.xy * self.xy / (four * self.xx),
            self.ly - self.xy * self.lx / (Rational64::from_integer(2) * self.xx),
            self.c - self.lx * self.lx / (four * self.xx),
        );
        Ok(x.zip(y).map(|(x, y)| SearchBox { x, y }))
    }
}

/// All integer `(x, y, z1, z2, z3)` satisfying both constraints.
pub fn diophantine_enumerate(eq: &ReducedEquation) -> Result<Vec<[i64; 5]>, LatticeError> {
    diophantine_enumerate_with_margin(eq, 0)
}

/// As [`diophantine_enumerate`], searching a box enlarged by `margin` on every side.
pub fn diophantine_enumerate_with_margin(
    eq: &ReducedEquation,
    margin: i64,
) -> Result<Vec<[i64; 5]>, LatticeError> {
    let Some(b) = eq.search_box()? else {
        return Ok(Vec::new());
    };
    let mut out = Vec::new();
    for x in b.x.0 - margin..=b.x.1 + margin {
        for y in b.y.0 - margin..=b.y.1 + margin {
            let (s, t) = (eq.sum_at(x, y), eq.squares_at(x, y));
            if !s.is_integer() || !t.is_integer() || t.is_negative() {
                continue;
            }
            let (s, t) = (s.to_integer(), t.to_integer());
            let r = t.sqrt();
            for z1 in -r..=r {
                for z2 in -r..=r {
                    let z3 = s - z1 - z2;
                    if z1 * z1 + z2 * z2 + z3 * z3 == t {
                        out.push([x, y, z1, z2, z3]);
                    }
                }
            }
        }
    }
    out.sort();
    Ok(out)
}
