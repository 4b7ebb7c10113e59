//! Shared workloads for the criterion benches.

use holobreak::l2_model::{L2Fn1, L2Params};
use holobreak::rc_transform::{rc_test_library, RcParams};
use holobreak::{Complex64, HoloSum, Qi};

/// Exact parameters `(5/2, 7/3, l)`.
pub fn exact_rc_params(ell: u32) -> RcParams<Qi> {
    RcParams::new(Qi::ratio(5, 2), Qi::ratio(7, 3), ell)
}

/// The largest sum in the exact test library.
pub fn heaviest_library_sum() -> HoloSum<Qi> {
    rc_test_library().into_iter().max_by_key(|f| f.len()).expect("library is nonempty")
}

/// `z^(lambda'''+1) e^{-z}` together with its parameters.
pub fn l2_input(l1: f64, l2: f64, ell: u32) -> (L2Params, L2Fn1) {
    let p = L2Params::new(l1, l2, ell);
    let h = L2Fn1::monomial_exp(p.l3(), Complex64::new(1.0, 0.0), p.l3() + 1.0, 1.0);
    (p, h)
}

/// A fixed pair of points in the upper half-plane.
pub fn half_plane_pair() -> (Complex64, Complex64) {
    (Complex64::new(0.3, 1.1), Complex64::new(-0.4, 0.7))
}
