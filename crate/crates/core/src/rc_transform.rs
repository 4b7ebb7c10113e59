//! Rankin-Cohen symmetry breaking operators on the upper half-plane, the
//! holographic operator `Psi`, the Plancherel constants, the Casimir operator,
//! projection and inversion, and the zero set of `c_l`.

use std::cell::RefCell;
use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::poly::{MultiPoly, PolyTwoVar};
use crate::quadrature::{integrate_adaptive, Domain};
use crate::scalar::{Qi, Scalar};
use crate::special_poly::{beta, factorial, factorial_f64, gamma, jacobi_inflated, jacobi_variant, pochhammer, rgamma};
use crate::term_algebra::{apply_diff_op, sl2_action, sl2_action_tensor, Factor, HoloSum, Sl2, Substitution};

/// Parameters `(l1, l2, ell)` of one Rankin-Cohen operator; the target
/// weight is `l3 = l1 + l2 + 2 ell`.
#[derive(Clone, Debug, PartialEq)]
pub struct RcParams<S> {
    pub l1: S,
    pub l2: S,
    pub ell: u32,
}

impl<S: Scalar> RcParams<S> {
    pub fn new(l1: S, l2: S, ell: u32) -> Self {
        RcParams { l1, l2, ell }
    }

    pub fn l3(&self) -> S {
        self.l1.clone() + self.l2.clone() + S::from_i64(2 * self.ell as i64)
    }

    pub fn alpha(&self) -> S {
        self.l1.clone() - S::one()
    }

    pub fn beta(&self) -> S {
        self.l2.clone() - S::one()
    }

    pub fn to_c64(&self) -> RcParams<Complex64> {
        RcParams { l1: self.l1.to_c64(), l2: self.l2.to_c64(), ell: self.ell }
    }
}

/// Which closed form of the operator symbol to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RcRoute {
    /// `sum_j (-1)^j (l1+l-j)_j (l2+j)_{l-j} / (j!(l-j)!) x^{l-j} y^j`.
    Coefficients,
    /// Inflated Jacobi polynomial with parameters `(l1-1, l2-1)`.
    Inflated,
    /// `(-1)^l` times the variant Jacobi form with parameters `(l1-1, 1-l3)`.
    Variant,
}

impl RcRoute {
    pub const ALL: [RcRoute; 3] = [RcRoute::Coefficients, RcRoute::Inflated, RcRoute::Variant];
}

/// Symbol of the bidifferential operator as a polynomial in `(d1, d2)`.
pub fn rc_symbol<S: Scalar>(p: &RcParams<S>, route: RcRoute) -> PolyTwoVar<S> {
    let l = p.ell;
    match route {
        RcRoute::Coefficients => {
            let mut out = MultiPoly::zero(2);
            for j in 0..=l {
                let a = pochhammer(&(p.l1.clone() + S::from_i64((l - j) as i64)), j);
                let b = pochhammer(&(p.l2.clone() + S::from_i64(j as i64)), l - j);
                let c = a * b / (factorial::<S>(j) * factorial::<S>(l - j));
                out.add_term(vec![l - j, j], if j % 2 == 0 { c } else { -c });
            }
            out
        }
        RcRoute::Inflated => jacobi_inflated(l, &p.alpha(), &p.beta()),
        RcRoute::Variant => {
            let v = jacobi_variant(l, &p.alpha(), &(S::one() - p.l3()));
            if l.is_multiple_of(2) {
                v
            } else {
                -&v
            }
        }
    }
}

/// `RC(f) = Rest_{z2=z1} symbol(d1, d2) f`.
pub fn rc_apply<S: Scalar>(p: &RcParams<S>, f: &HoloSum<S>, route: RcRoute) -> Result<HoloSum<S>> {
    if f.nvars() != 2 {
        return Err(Error::Arity { expected: 2, got: f.nvars() });
    }
    apply_diff_op(&rc_symbol(p, route), f).restrict(&Substitution::diagonal())
}

/// Outcome of a pole-safe evaluation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum PoleSafe {
    Finite(Complex64),
    /// A pole of the numerator with a nonzero denominator.
    Infinite,
    /// A numerator pole meets a denominator zero; no value is asserted.
    Collision,
}

fn is_pole(z: Complex64) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re.fract() == 0.0
}

/// `c_l = Gamma(l1+l)Gamma(l2+l) / ((l3-1) Gamma(l1+l2+l-1) l!)`, evaluated
/// through the reciprocal gamma so that denominator poles give exact zeros.
pub fn c_ell_pole_safe(l1: Complex64, l2: Complex64, ell: u32) -> PoleSafe {
    let l = ell as f64;
    let l3 = l1 + l2 + 2.0 * l;
    let num_pole = is_pole(l1 + l) || is_pole(l2 + l);
    let rg = rgamma(l1 + l2 + l - 1.0);
    let den_zero = rg.norm() == 0.0 || (l3 - 1.0).norm() == 0.0;
    match (num_pole, den_zero) {
        (true, true) => PoleSafe::Collision,
        (true, false) => PoleSafe::Infinite,
        (false, _) if (l3 - 1.0).norm() == 0.0 => PoleSafe::Infinite,
        (false, _) => {
            let num = gamma(l1 + l).expect("checked") * gamma(l2 + l).expect("checked");
            PoleSafe::Finite(num * rg / ((l3 - 1.0) * factorial_f64(ell)))
        }
    }
}

/// `c_l(l1, l2)`; errors where the value is infinite or indeterminate.
pub fn c_ell(l1: Complex64, l2: Complex64, ell: u32) -> Result<Complex64> {
    match c_ell_pole_safe(l1, l2, ell) {
        PoleSafe::Finite(v) => Ok(v),
        _ => Err(Error::Pole(format!("c_{ell}({l1}, {l2})"))),
    }
}

/// `b(l) = 2^{2-l} pi Gamma(l-1)`.
pub fn b_const(lambda: Complex64) -> Result<Complex64> {
    Ok(Complex64::new(2.0, 0.0).powc(2.0 - lambda) * PI * gamma(lambda - 1.0)?)
}

/// `r_l = Gamma(l3-1) / (2^{2l+2} pi Gamma(l1-1) Gamma(l2-1))`.
pub fn r_ell(l1: Complex64, l2: Complex64, ell: u32) -> Result<Complex64> {
    let l3 = l1 + l2 + 2.0 * ell as f64;
    Ok(gamma(l3 - 1.0)? * rgamma(l1 - 1.0) * rgamma(l2 - 1.0) / (2f64.powi(2 * ell as i32 + 2) * PI))
}

fn check_unitary(l1: f64, l2: f64) -> Result<()> {
    if l1 > 1.0 && l2 > 1.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!("unitary range needs l1, l2 > 1, got ({l1}, {l2})")))
    }
}

/// Squared operator norm `r_l c_l` of the Rankin-Cohen operator between
/// weighted Bergman spaces.
pub fn rc_operator_norm_sq(l1: f64, l2: f64, ell: u32) -> Result<f64> {
    check_unitary(l1, l2)?;
    let (a, b) = (Complex64::new(l1, 0.0), Complex64::new(l2, 0.0));
    Ok((r_ell(a, b, ell)? * c_ell(a, b, ell)?).re)
}

/// Plancherel weights `(1/(r_l c_l), c_l/r_l)`.
pub fn plancherel_weights(l1: f64, l2: f64, ell: u32) -> Result<(f64, f64)> {
    check_unitary(l1, l2)?;
    let (a, b) = (Complex64::new(l1, 0.0), Complex64::new(l2, 0.0));
    let (r, c) = (r_ell(a, b, ell)?.re, c_ell(a, b, ell)?.re);
    Ok((1.0 / (r * c), c / r))
}

/// `Psi(g)(z1, z2)` by Gauss-Jacobi quadrature along the segment `[z1, z2]`
/// with weight `(1-v)^{l1+l-1} (1+v)^{l2+l-1}`.
pub fn psi_quadrature(
    l1: f64,
    l2: f64,
    ell: u32,
    g: &dyn Fn(Complex64) -> Result<Complex64>,
    z1: Complex64,
    z2: Complex64,
    tol: f64,
) -> Result<Complex64> {
    let (a, b) = (l1 + ell as f64 - 1.0, l2 + ell as f64 - 1.0);
    if !(a > -1.0 && b > -1.0) {
        return Err(Error::Domain(format!("Psi needs l1+l > 0 and l2+l > 0, got ({l1}, {l2}, {ell})")));
    }
    if ell > 0 && z1 == z2 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let failure = RefCell::new(None);
    let est = integrate_adaptive(
        |v| {
            let z = ((z2 - z1) * v + z1 + z2) * 0.5;
            g(z).unwrap_or_else(|e| {
                failure.borrow_mut().get_or_insert(e);
                Complex64::new(0.0, 0.0)
            })
        },
        Domain::Jacobi { alpha: a, beta: b },
        tol,
    )?;
    if let Some(e) = failure.into_inner() {
        return Err(e);
    }
    let pre = (z1 - z2).powu(ell) / (2f64.powf(l1 + l2 + 2.0 * ell as f64 - 1.0) * factorial_f64(ell));
    Ok(pre * est.value)
}

/// `z + i` in `n` variables, shifted in coordinate `k`.
fn shifted<S: Scalar>(n: usize, k: usize) -> MultiPoly<S> {
    &MultiPoly::var(n, k) + &MultiPoly::constant(n, S::i())
}

/// The generator `(z + i)^{-lambda}` of one-variable weight `lambda`.
pub fn lowest_weight_vector<S: Scalar>(lambda: &S) -> HoloSum<S> {
    HoloSum::power(shifted(1, 0), -lambda.clone())
}

/// Bare minimal K-type `(z1-z2)^l (z1+i)^{-l1-l} (z2+i)^{-l2-l}`.
pub fn ktype_term<S: Scalar>(p: &RcParams<S>) -> HoloSum<S> {
    let l = S::from_i64(p.ell as i64);
    let diff = &MultiPoly::var(2, 0) - &MultiPoly::var(2, 1);
    HoloSum::term(
        S::one(),
        vec![0, 0],
        vec![
            Factor::new(diff, l.clone()),
            Factor::new(shifted(2, 0), -(p.l1.clone() + l.clone())),
            Factor::new(shifted(2, 1), -(p.l2.clone() + l)),
        ],
    )
}

/// `B(l1+l, l2+l) / l!`, the scalar relating [`ktype_term`] to `Psi` of the
/// lowest weight vector.
pub fn ktype_prefactor(l1: Complex64, l2: Complex64, ell: u32) -> Result<Complex64> {
    let l = ell as f64;
    Ok(beta(l1 + l, l2 + l)? / factorial_f64(ell))
}

/// Closed form of `Psi((z+i)^{-l3})`.
pub fn psi_ktype_closed_form(p: &RcParams<Complex64>) -> Result<HoloSum<Complex64>> {
    Ok(ktype_term(p).scale(&ktype_prefactor(p.l1, p.l2, p.ell)?))
}

/// Exact scalar `(l1+l2+l-1)_l` with `RC(ktype_term) = (l1+l2+l-1)_l (z+i)^{-l3}`.
pub fn ktype_rc_factor<S: Scalar>(p: &RcParams<S>) -> S {
    let base = p.l1.clone() + p.l2.clone() + S::from_i64(p.ell as i64 - 1);
    pochhammer(&base, p.ell)
}

/// `P f = (z1-z2)^2 d1 d2 f - l2 (z1-z2) d1 f + l1 (z1-z2) d2 f`.
pub fn casimir_p<S: Scalar>(l1: &S, l2: &S, f: &HoloSum<S>) -> Result<HoloSum<S>> {
    if f.nvars() != 2 {
        return Err(Error::Arity { expected: 2, got: f.nvars() });
    }
    let diff = &MultiPoly::var(2, 0) - &MultiPoly::var(2, 1);
    let d1 = f.differentiate(0);
    let d2 = f.differentiate(1);
    let d12 = d1.differentiate(1);
    let lin = &d2.scale(l1) - &d1.scale(l2);
    Ok(&d12.mul_poly(&diff.pow(2)) + &lin.mul_poly(&diff))
}

/// Eigenvalue `-l (l1+l2+l-1)` of [`casimir_p`] on the minimal K-type.
pub fn casimir_eigenvalue<S: Scalar>(p: &RcParams<S>) -> S {
    let l = S::from_i64(p.ell as i64);
    -(l.clone() * (p.l1.clone() + p.l2.clone() + l - S::one()))
}

/// Checks `RC o dpi(Z) = dpi_{l3}(Z) o RC` on `f` for one generator, exactly.
pub fn intertwining_defect<S: Scalar>(p: &RcParams<S>, g: Sl2, f: &HoloSum<S>) -> Result<HoloSum<S>> {
    let lhs = rc_apply(p, &sl2_action_tensor(g, &[p.l1.clone(), p.l2.clone()], f)?, RcRoute::Coefficients)?;
    let rhs = sl2_action(g, &p.l3(), &rc_apply(p, f, RcRoute::Coefficients)?)?;
    Ok(&lhs - &rhs)
}

/// `(1/c_l) Psi(RC f)` evaluated at `(z1, z2)`; parameters must be real.
pub fn project(p: &RcParams<Complex64>, f: &HoloSum<Complex64>, z1: Complex64, z2: Complex64, tol: f64) -> Result<Complex64> {
    let g = rc_apply(p, f, RcRoute::Coefficients)?;
    let c = c_ell(p.l1, p.l2, p.ell)?;
    Ok(psi_quadrature(p.l1.re, p.l2.re, p.ell, &|z| g.evaluate(&[z]), z1, z2, tol)? / c)
}

/// Truncated inverse `f_L = sum_l (1/c_l) Psi_l(g_l)` of the Rankin-Cohen
/// transform, evaluated pointwise.
#[derive(Clone, Debug)]
pub struct RcInverse {
    pub l1: f64,
    pub l2: f64,
    pub components: Vec<(u32, HoloSum<Complex64>)>,
}

impl RcInverse {
    pub fn new(l1: f64, l2: f64, components: Vec<(u32, HoloSum<Complex64>)>) -> Result<Self> {
        check_unitary(l1, l2)?;
        for (_, g) in &components {
            if g.nvars() != 1 {
                return Err(Error::Arity { expected: 1, got: g.nvars() });
            }
        }
        Ok(RcInverse { l1, l2, components })
    }

    pub fn eval(&self, z1: Complex64, z2: Complex64, tol: f64) -> Result<Complex64> {
        let mut acc = Complex64::new(0.0, 0.0);
        for (ell, g) in &self.components {
            let c = c_ell(Complex64::new(self.l1, 0.0), Complex64::new(self.l2, 0.0), *ell)?;
            acc += psi_quadrature(self.l1, self.l2, *ell, &|z| g.evaluate(&[z]), z1, z2, tol)? / c;
        }
        Ok(acc)
    }
}

/// Integer parameter triple classified against the vanishing of `c_l`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ZeroCase {
    pub l1: i64,
    pub l2: i64,
    pub l3: i64,
    pub ell: u32,
    /// `2 >= l1 + l2 + l3` and `l3 >= |l1 - l2| + 2`.
    pub predicate: bool,
    pub value: PoleSafe,
}

impl ZeroCase {
    /// Whether the pole-safe value vanishes; `None` at a collision.
    pub fn vanishes(&self) -> Option<bool> {
        match self.value {
            PoleSafe::Finite(v) => Some(v.norm() == 0.0),
            PoleSafe::Infinite => Some(false),
            PoleSafe::Collision => None,
        }
    }

    /// Predicate and evaluation agree, or the case is a collision.
    pub fn consistent(&self) -> Option<bool> {
        self.vanishes().map(|v| v == self.predicate)
    }
}

/// Classifies an integer triple with `(l3 - l1 - l2)/2` a natural number.
pub fn zero_classification(l1: i64, l2: i64, l3: i64) -> Result<ZeroCase> {
    let gap = l3 - l1 - l2;
    if gap < 0 || gap % 2 != 0 {
        return Err(Error::Domain(format!("(l3 - l1 - l2)/2 must be natural, got ({l1}, {l2}, {l3})")));
    }
    let ell = (gap / 2) as u32;
    let predicate = 2 >= l1 + l2 + l3 && l3 >= (l1 - l2).abs() + 2;
    let value = c_ell_pole_safe(Complex64::new(l1 as f64, 0.0), Complex64::new(l2 as f64, 0.0), ell);
    Ok(ZeroCase { l1, l2, l3, ell, predicate, value })
}

/// Twelve two-variable test functions in exact arithmetic.
pub fn rc_test_library() -> Vec<HoloSum<Qi>> {
    let q = Qi::ratio;
    let z1 = MultiPoly::<Qi>::var(2, 0);
    let z2 = MultiPoly::<Qi>::var(2, 1);
    let c = |v: Qi| MultiPoly::constant(2, v);
    let s1 = &z1 + &c(Qi::i());
    let s2 = &z2 + &c(Qi::i());
    let mixed = &(&z1 + &z2.scale(&Qi::int(2))) + &c(Qi::int(3) * Qi::i());
    let quad = &(&z1 * &z2) + &c(Qi::int(-1));
    vec![
        HoloSum::from_poly(&(&z1.pow(3) * &z2)),
        HoloSum::from_poly(&(&(&z1 - &z2).pow(4) + &z2.pow(2).scale(&q(5, 2)))),
        HoloSum::power(s1.clone(), q(-5, 2)).mul_factor(&s2, &q(-3, 2)),
        HoloSum::power(s1.clone(), Qi::int(-4)).mul_factor(&s2, &Qi::int(-3)),
        HoloSum::power(mixed.clone(), q(-7, 3)),
        HoloSum::power(s1.clone(), q(1, 3)).mul_monomial(&[0, 2], &q(-2, 5)),
        HoloSum::power(s2.clone(), q(-9, 4)).mul_poly(&(&z1.pow(2) + &c(Qi::int(1)))),
        HoloSum::power(quad.clone(), q(-1, 2)),
        HoloSum::power(&z1 - &z2, Qi::int(2)).mul_factor(&s1, &Qi::int(-3)).mul_factor(&s2, &q(-7, 2)),
        HoloSum::power(&s1 + &z2.scale(&q(1, 3)), q(-11, 5)).scale(&(Qi::int(2) + Qi::i())),
        &HoloSum::power(s1.clone(), q(-3, 2)) + &HoloSum::power(s2.clone(), q(-5, 3)).mul_monomial(&[1, 0], &Qi::int(3)),
        HoloSum::power(mixed, q(-3, 2)).mul_factor(&quad, &q(1, 2)),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term_algebra::{equal, sample_points, Equality, SampleDomain, DEFAULT_SEED, SAMPLE_COUNT};
    use proptest::prelude::*;

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn constant_examples() {
        assert!((c_ell(c(2.0), c(2.0), 0).unwrap() - 1.0 / 6.0).norm() < 1e-15);
        assert!((r_ell(c(2.0), c(2.0), 0).unwrap() - 1.0 / (2.0 * PI)).norm() < 1e-15);
        assert!((rc_operator_norm_sq(2.0, 2.0, 0).unwrap() - 1.0 / (12.0 * PI)).abs() < 1e-15);
        assert!(c_ell(c(2.0), c(2.0), 1).unwrap().norm() > 0.0);
        assert!(b_const(c(1.0)).is_err());
        for (l1, l2, ell) in [(2.0, 2.0, 0), (2.5, 3.0, 2), (4.0, 1.5, 3)] {
            let (a, b) = (c(l1), c(l2));
            let l3 = a + b + 2.0 * ell as f64;
            let ratio = b_const(l3).unwrap() / (b_const(a).unwrap() * b_const(b).unwrap());
            assert!((r_ell(a, b, ell).unwrap() - ratio).norm() < 1e-13 * ratio.norm());
        }
    }

    #[test]
    fn symbol_low_degree() {
        let p = RcParams::new(Qi::ratio(5, 2), Qi::ratio(7, 3), 1);
        let s = rc_symbol(&p, RcRoute::Coefficients);
        assert_eq!(s, MultiPoly::from_terms(2, [(vec![1, 0], Qi::ratio(7, 3)), (vec![0, 1], Qi::ratio(-5, 2))]));
        for route in RcRoute::ALL {
            assert_eq!(rc_symbol(&p, route), s);
        }
        let p0 = RcParams::new(Qi::int(3), Qi::int(2), 0);
        let f = &rc_test_library()[2];
        assert_eq!(rc_apply(&p0, f, RcRoute::Coefficients).unwrap(), f.restrict(&Substitution::diagonal()).unwrap());
    }

    #[test]
    fn variant_differs_from_inflated_by_sign() {
        for ell in 0..5 {
            let p = RcParams::new(Qi::ratio(5, 2), Qi::ratio(4, 3), ell);
            let raw = jacobi_variant(ell, &p.alpha(), &(Qi::one() - p.l3()));
            let inflated = jacobi_inflated(ell, &p.alpha(), &p.beta());
            let sign = if ell % 2 == 0 { Qi::int(1) } else { Qi::int(-1) };
            assert_eq!(raw.scale(&sign), inflated);
        }
    }

    #[test]
    fn ktype_rc_and_casimir() {
        for ell in 0..4 {
            let p = RcParams::new(Qi::ratio(5, 2), Qi::ratio(3, 2), ell);
            let k = ktype_term(&p);
            let rc = rc_apply(&p, &k, RcRoute::Inflated).unwrap();
            let expect = lowest_weight_vector(&p.l3()).scale(&ktype_rc_factor(&p));
            assert!(equal(&rc, &expect, Equality::Exact).unwrap());
            let pk = casimir_p(&p.l1, &p.l2, &k).unwrap();
            assert!(equal(&pk, &k.scale(&casimir_eigenvalue(&p)), Equality::Exact).unwrap());
            let f = ktype_prefactor(c(2.5), c(1.5), ell).unwrap() * ktype_rc_factor(&p.to_c64());
            let cl = c_ell(c(2.5), c(1.5), ell).unwrap();
            assert!((f - cl).norm() < 1e-13 * cl.norm());
        }
    }

    #[test]
    fn rc_kills_other_ktypes() {
        for ell in 0..4 {
            for other in 0..4 {
                if other == ell {
                    continue;
                }
                let p = RcParams::new(Qi::int(2), Qi::ratio(5, 2), ell);
                let k = ktype_term(&RcParams::new(Qi::int(2), Qi::ratio(5, 2), other));
                assert!(rc_apply(&p, &k, RcRoute::Coefficients).unwrap().is_zero_exact().unwrap());
            }
        }
    }

    #[test]
    fn psi_matches_closed_form() {
        let pts = sample_points(SampleDomain::UpperHalfPlane, 2, SAMPLE_COUNT, DEFAULT_SEED);
        for ell in 0..3 {
            let pc = RcParams::new(c(2.5), c(3.0), ell);
            let l3 = pc.l3();
            let closed = psi_ktype_closed_form(&pc).unwrap();
            let g = |z: Complex64| lowest_weight_vector(&l3).evaluate(&[z]);
            for pt in &pts {
                let q = psi_quadrature(2.5, 3.0, ell, &g, pt[0], pt[1], 1e-13).unwrap();
                let e = closed.evaluate(pt).unwrap();
                assert!((q - e).norm() <= 1e-10 * e.norm(), "l={ell} {q} vs {e}");
            }
        }
        let one = psi_quadrature(2.5, 1.5, 0, &|_| Ok(c(1.0)), c(0.3), c(-0.7), 1e-14).unwrap();
        assert!((one - beta(c(2.5), c(1.5)).unwrap()).norm() < 1e-14);
        assert_eq!(psi_quadrature(2.0, 2.0, 2, &|_| Ok(c(1.0)), c(0.5), c(0.5), 1e-12).unwrap(), c(0.0));
        assert!(psi_quadrature(-1.5, 2.0, 0, &|_| Ok(c(1.0)), c(0.5), c(1.0), 1e-12).is_err());
    }

    #[test]
    fn projection_fixes_ktype() {
        let p = RcParams::new(c(2.0), c(3.0), 2);
        let k = psi_ktype_closed_form(&p).unwrap();
        let mixed = &k + &psi_ktype_closed_form(&RcParams::new(c(2.0), c(3.0), 1)).unwrap();
        for pt in sample_points(SampleDomain::UpperHalfPlane, 2, 4, 11) {
            let v = project(&p, &mixed, pt[0], pt[1], 1e-13).unwrap();
            let e = k.evaluate(&pt).unwrap();
            assert!((v - e).norm() <= 1e-10 * e.norm());
        }
    }

    #[test]
    fn zero_classification_examples() {
        let a = zero_classification(2, 2, 6).unwrap();
        assert!(!a.predicate && a.vanishes() == Some(false));
        let b = zero_classification(0, 0, 2).unwrap();
        assert!(b.predicate && b.vanishes() == Some(true));
        let d = zero_classification(1, 1, 2).unwrap();
        assert!(!d.predicate && d.consistent() == Some(true));
        assert!(zero_classification(1, 1, 3).is_err());
    }

    proptest! {
        #[test]
        fn c_ell_nonzero_in_right_half_plane(a in 0.01f64..6.0, b in 0.01f64..6.0, ai in -3.0f64..3.0, ell in 0u32..12) {
            let v = c_ell(Complex64::new(a, ai), c(b), ell).unwrap();
            prop_assert!(v.norm() > 0.0);
        }

        #[test]
        fn plancherel_weights_positive(a in 1.001f64..8.0, b in 1.001f64..8.0, ell in 0u32..=20) {
            let (w1, w2) = plancherel_weights(a, b, ell).unwrap();
            prop_assert!(w1 > 0.0 && w2 > 0.0);
        }
    }
}
