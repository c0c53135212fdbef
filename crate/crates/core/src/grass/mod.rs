//! Lines of P^5 in Pluecker coordinates: the ruling curve of a projected
//! scroll, its bisecants, linear slices of G(1,5) and the inverse
//! construction from a quartic scroll with three marked points.

mod kappa;
mod pluecker;
mod ruling;
mod search;
mod slice;

pub use kappa::{
    kappa, kappa_inputs, quartic_ruling, quartic_ruling_span, sample_kappa_input, KappaCertificate,
    KappaInput, ReconstructedPair, KAPPA_RETRY_BUDGET, MARKED_POINTS, MARKED_RULINGS,
};
pub use pluecker::{
    decode, in_grassmannian, intersection_point, lines_meet, pair_index, pluecker_line,
    pluecker_residuals, polarized, PlueckerVector, PAIRS, RELATIONS,
};
pub use ruling::{
    bisecant_certificate, p1_points, remove_content, ruling_curve, ruling_parameter, ruling_wedges,
    BisecantCertificate, RulingCurve,
};
pub use search::{
    forward_slice, genus_ledger, kappa_search, slice_primes, ForwardSlice, GenusLedger,
    KappaSearch, Rejection, SliceSearch, FALLBACK_SLICE_PRIMES, SLICE_RETRY_BUDGET,
};
pub use slice::{
    line_components, pencil_points, residual_analysis, slice_grassmannian, tangent_dimension,
    RawPoint, SliceReport, MAX_SLICE_PRIME, MAX_SLICE_SPAN,
};
