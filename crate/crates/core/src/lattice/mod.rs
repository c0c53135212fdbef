//! Integral lattice arithmetic: Beauville-Bogomolov classes on a Hilbert
//! square, the rank-5 lattice of the ruling-curve configuration, bounded
//! Diophantine searches and a few enumerative formulas.

mod bb;
mod diophantine;
mod formulas;
mod gram;

pub use bb::{
    bb_q, n1_dot, q_curve, q_curve_pair, scrolls1_certificate, BBClass, CurveClass,
    Scrolls1Certificate,
};
pub use diophantine::{
    diophantine_enumerate, diophantine_enumerate_with_margin, diophantine_reduce, ReducedEquation,
    SearchBox,
};
pub use formulas::{
    dimension_ledger, discriminant2, double_point, DimensionIdentity, DiscriminantData,
    DoublePointData,
};
pub use gram::{arith_genus, class_dot, gram_l, GramLattice, GramReport, LatticeClass};
