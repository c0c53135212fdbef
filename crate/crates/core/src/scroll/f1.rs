use serde::{Deserialize, Serialize};

use crate::error::GeomError;
use crate::exact::binomial;

/// Divisor class `a*l - b*E` on F_1, with l^2 = 1, E^2 = -1, l.E = 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct F1Class {
    pub a: i64,
    pub b: i64,
}

impl F1Class {
    pub const LINE: F1Class = F1Class { a: 1, b: 0 };
    pub const EXCEPTIONAL: F1Class = F1Class { a: 0, b: -1 };
    pub const RULING: F1Class = F1Class { a: 1, b: 1 };

    pub fn new(a: i64, b: i64) -> Self {
        Self { a, b }
    }

    pub fn dot(&self, other: &F1Class) -> i64 {
        self.a * other.a - self.b * other.b
    }

    pub fn sub(&self, other: &F1Class) -> F1Class {
        F1Class::new(self.a - other.a, self.b - other.b)
    }
}

/// Number of degree-`a` plane monomials vanishing to order `b` at the blown-up
/// point: `C(a+2, 2) - C(b+1, 2)` for `a >= b >= 0`. The class E itself is the
/// one documented exception and returns 1.
pub fn h0_f1(c: F1Class) -> Result<u64, GeomError> {
    if c == F1Class::EXCEPTIONAL {
        return Ok(1);
    }
    if c.b < 0 || c.a < c.b {
        return Err(GeomError::UnsupportedClass { a: c.a, b: c.b });
    }
    let (a, b) = (c.a as u64, c.b as u64);
    Ok(binomial(a + 2, 2) - binomial(b + 1, 2))
}
