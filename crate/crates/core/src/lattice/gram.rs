use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::LatticeError;

/// Integral symmetric bilinear form on a named basis.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GramLattice {
    pub basis_names: Vec<String>,
    pub gram: Vec<Vec<i64>>,
}

/// Integer coordinates in the basis of a [`GramLattice`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct LatticeClass {
    pub coords: Vec<i64>,
}

impl LatticeClass {
    pub fn new(coords: Vec<i64>) -> Self {
        Self { coords }
    }

    /// The i-th basis vector of a rank-n lattice.
    pub fn basis(n: usize, i: usize) -> Self {
        let mut coords = vec![0; n];
        coords[i] = 1;
        Self { coords }
    }
}

/// Facts about the lattice and the sum `C` of its basis vectors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GramReport {
    pub symmetric: bool,
    pub even: bool,
    /// (positive, negative, zero) eigenvalue counts.
    pub signature: (usize, usize, usize),
    pub c_square: i64,
    /// `C . e_i` for each basis vector.
    pub c_degrees: Vec<i64>,
}

/// Lattice spanned by the ruling curve, the residual quartic and the three
/// bisecant lines, in that order.
pub fn gram_l() -> GramLattice {
    GramLattice {
        basis_names: ["Gamma", "Q", "L1", "L2", "L3"].map(String::from).to_vec(),
        gram: vec![
            vec![-2, 3, 2, 2, 2],
            vec![3, -2, 1, 1, 1],
            vec![2, 1, -2, 0, 0],
            vec![2, 1, 0, -2, 0],
            vec![2, 1, 0, 0, -2],
        ],
    }
}

impl GramLattice {
    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.rank();
        self.gram.iter().all(|r| r.len() == n)
            && (0..n).all(|i| (0..n).all(|j| self.gram[i][j] == self.gram[j][i]))
    }

    pub fn is_even(&self) -> bool {
        self.gram.iter().enumerate().all(|(i, r)| r[i] % 2 == 0)
    }

    /// Sylvester signature by symmetric congruence diagonalization over Q.
    #[allow(clippy::needless_range_loop)]
    pub fn signature(&self) -> (usize, usize, usize) {
        let n = self.rank();
        let mut a: Vec<Vec<BigRational>> = self
            .gram
            .iter()
            .map(|r| {
                r.iter()
                    .map(|&v| BigRational::from_integer(BigInt::from(v)))
                    .collect()
            })
            .collect();
        let mut diag = Vec::with_capacity(n);
        for k in 0..n {
            if let Some(i) = (k..n).find(|&i| !a[i][i].is_zero()) {
                swap_sym(&mut a, k, i);
            } else if let Some((i, j)) = (k..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .find(|&(i, j)| !a[i][j].is_zero())
            {
                // e_i + e_j has square 2 a_ij, nonzero
                add_sym(&mut a, i, j);
                swap_sym(&mut a, k, i);
            } else {
                diag.extend(std::iter::repeat_n(BigRational::zero(), n - k));
                break;
            }
            let pivot = a[k][k].clone();
            for i in k + 1..n {
                let f = &a[i][k] / &pivot;
                if f.is_zero() {
                    continue;
                }
                for j in k..n {
                    let v = &a[i][j] - &f * &a[k][j];
                    a[i][j] = v;
                }
                for j in k..n {
                    let v = &a[j][i] - &f * &a[j][k];
                    a[j][i] = v;
                }
            }
            diag.push(pivot);
        }
        let pos = diag.iter().filter(|d| d.is_positive()).count();
        let neg = diag.iter().filter(|d| d.is_negative()).count();
        (pos, neg, n - pos - neg)
    }

    pub fn report(&self) -> GramReport {
        let n = self.rank();
        let c = LatticeClass::new(vec![1; n]);
        GramReport {
            symmetric: self.is_symmetric(),
            even: self.is_even(),
            signature: self.signature(),
            c_square: class_dot(self, &c, &c),
            c_degrees: (0..n)
                .map(|i| class_dot(self, &c, &LatticeClass::basis(n, i)))
                .collect(),
        }
    }
}

fn swap_sym(a: &mut [Vec<BigRational>], i: usize, j: usize) {
    if i == j {
        return;
    }
    a.swap(i, j);
    for row in a.iter_mut() {
        row.swap(i, j);
    }
}

/// Replaces basis vector i by e_i + e_j.
#[allow(clippy::needless_range_loop)]
fn add_sym(a: &mut [Vec<BigRational>], i: usize, j: usize) {
    let n = a.len();
    for k in 0..n {
        let v = &a[i][k] + &a[j][k];
        a[i][k] = v;
    }
    for k in 0..n {
        let v = &a[k][i] + &a[k][j];
        a[k][i] = v;
    }
}

/// `u^T G v`.
pub fn class_dot(l: &GramLattice, u: &LatticeClass, v: &LatticeClass) -> i64 {
    l.gram
        .iter()
        .zip(&u.coords)
        .map(|(row, &ui)| ui * row.iter().zip(&v.coords).map(|(g, vj)| g * vj).sum::<i64>())
        .sum()
}

/// Arithmetic genus of a nodal union of smooth rational curves:
/// total pairwise intersection minus the number of components plus one.
pub fn arith_genus(components: &[LatticeClass], l: &GramLattice) -> Result<i64, LatticeError> {
    let mut total = 0;
    for (i, u) in components.iter().enumerate() {
        for (j, v) in components.iter().enumerate().skip(i + 1) {
            if u == v {
                return Err(LatticeError::RepeatedComponent(j));
            }
            let d = class_dot(l, u, v);
            if d < 0 {
                return Err(LatticeError::NegativeIntersection(i, j));
            }
            total += d;
        }
    }
    Ok(total - components.len() as i64 + 1)
}
