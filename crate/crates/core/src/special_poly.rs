//! Gamma-family scalars and the Jacobi / Gegenbauer polynomial families.
//!
//! Reciprocal gamma is the primitive: it is entire and vanishes exactly at
//! the non-positive integers, so constants whose gamma quotients cancel poles
//! can be evaluated without producing infinities.
//!
//! Polynomials are built from their explicit finite sums, so complex and
//! exact-rational parameters work uniformly. Floating point evaluation uses
//! the three-term recurrence, which avoids the cancellation in the power sum,
//! and drops back to the sum only at degenerate parameters. No attempt is made to detect degree drop at degenerate
//! parameters; the returned polynomial is whatever the explicit sum gives.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::poly::{MultiPoly, PolyOneVar, PolyTwoVar};
use crate::scalar::Scalar;

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// Ascending factorial `(x)_k = x(x+1)...(x+k-1)`, with `(x)_0 = 1`.
pub fn pochhammer<S: Scalar>(x: &S, k: u32) -> S {
    let mut acc = S::one();
    for j in 0..k {
        acc = acc * (x.clone() + S::from_i64(j as i64));
    }
    acc
}

/// `k!` in the requested tier.
pub fn factorial<S: Scalar>(k: u32) -> S {
    pochhammer(&S::one(), k)
}

pub fn factorial_f64(k: u32) -> f64 {
    (1..=k).fold(1.0, |acc, j| acc * j as f64)
}

fn is_nonpositive_integer(z: Complex64) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re.fract() == 0.0
}

/// `sin(pi z)` with exact zeros at the integers.
fn sin_pi(z: Complex64) -> Complex64 {
    let r = z.re - 2.0 * (z.re / 2.0).round();
    let (s, c) = if r.fract() == 0.0 {
        (0.0, if r == 0.0 { 1.0 } else { -1.0 })
    } else if (r.abs() - 0.5).abs() == 0.0 {
        (r.signum(), 0.0)
    } else {
        ((PI * r).sin(), (PI * r).cos())
    };
    let y = PI * z.im;
    Complex64::new(s * y.cosh(), c * y.sinh())
}

fn lanczos(z: Complex64) -> Complex64 {
    let z = z - 1.0;
    let mut x = Complex64::new(LANCZOS[0], 0.0);
    for (i, c) in LANCZOS.iter().enumerate().skip(1) {
        x += *c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    (2.0 * PI).sqrt() * t.powc(z + 0.5) * (-t).exp() * x
}

fn small_factorial(z: Complex64) -> Option<f64> {
    if z.im == 0.0 && z.re >= 1.0 && z.re <= 171.0 && z.re.fract() == 0.0 {
        Some(factorial_f64(z.re as u32 - 1))
    } else {
        None
    }
}

/// Complex gamma function; errors at the poles `0, -1, -2, ...`.
pub fn gamma(z: Complex64) -> Result<Complex64> {
    if is_nonpositive_integer(z) {
        return Err(Error::Pole(format!("{z}")));
    }
    if let Some(f) = small_factorial(z) {
        return Ok(Complex64::new(f, 0.0));
    }
    if z.re < 0.5 {
        Ok(PI / (sin_pi(z) * lanczos(1.0 - z)))
    } else {
        Ok(lanczos(z))
    }
}

/// Reciprocal gamma `1/Gamma(z)`; entire, exactly zero at the poles of gamma.
pub fn rgamma(z: Complex64) -> Complex64 {
    if is_nonpositive_integer(z) {
        return Complex64::new(0.0, 0.0);
    }
    if let Some(f) = small_factorial(z) {
        return Complex64::new(1.0 / f, 0.0);
    }
    if z.re < 0.5 {
        sin_pi(z) * lanczos(1.0 - z) / PI
    } else {
        1.0 / lanczos(z)
    }
}

pub fn gamma_real(x: f64) -> Result<f64> {
    gamma(Complex64::new(x, 0.0)).map(|g| g.re)
}

pub fn rgamma_real(x: f64) -> f64 {
    rgamma(Complex64::new(x, 0.0)).re
}

/// Euler beta `Gamma(a)Gamma(b)/Gamma(a+b)`.
///
/// When `a` (or `b`) sits on a pole together with `a+b`, the residue ratio
/// gives the finite limit along fixed `b` (or `a`).
pub fn beta(a: Complex64, b: Complex64) -> Result<Complex64> {
    let pa = is_nonpositive_integer(a);
    let pb = is_nonpositive_integer(b);
    let pab = is_nonpositive_integer(a + b);
    match (pa, pb) {
        (false, false) => Ok(gamma(a)? * gamma(b)? * rgamma(a + b)),
        (true, true) => Err(Error::Pole(format!("beta({a}, {b})"))),
        (true, false) | (false, true) => {
            let (p, other) = if pa { (a, b) } else { (b, a) };
            if !pab {
                return Err(Error::Pole(format!("beta({a}, {b})")));
            }
            // Res Gamma(-m) / Res Gamma(-k) = (-1)^{m-k} k!/m!
            let m = (-p.re) as u32;
            let k = (-(a + b).re) as u32;
            let sign = if (m + k).is_multiple_of(2) { 1.0 } else { -1.0 };
            Ok(gamma(other)? * sign * factorial_f64(k) / factorial_f64(m))
        }
    }
}

pub fn beta_real(a: f64, b: f64) -> Result<f64> {
    beta(Complex64::new(a, 0.0), Complex64::new(b, 0.0)).map(|v| v.re)
}

/// Coefficients `c_j` of the explicit Jacobi sum
/// `P = sum_j c_j ((t-1)/2)^j`, `c_j = (a+b+l+1)_j (a+j+1)_{l-j} / ((l-j)! j!)`.
pub fn jacobi_sum_coeffs<S: Scalar>(ell: u32, alpha: &S, beta: &S) -> Vec<S> {
    let s = alpha.clone() + beta.clone() + S::from_i64(ell as i64 + 1);
    (0..=ell)
        .map(|j| {
            pochhammer(&s, j) * pochhammer(&(alpha.clone() + S::from_i64(j as i64 + 1)), ell - j)
                / (factorial::<S>(ell - j) * factorial::<S>(j))
        })
        .collect()
}

/// Jacobi polynomial `P_l^{a,b}(t)` normalised by `P(1) = (a+1)_l / l!`.
pub fn jacobi_poly<S: Scalar>(ell: u32, alpha: &S, beta: &S) -> PolyOneVar<S> {
    let half = S::from_ratio(1, 2);
    let shifted = PolyOneVar::linear(-half.clone(), half);
    let mut acc = PolyOneVar::zero();
    let mut power = PolyOneVar::constant(S::one());
    for c in jacobi_sum_coeffs(ell, alpha, beta) {
        acc = &acc + &power.scale(&c);
        power = &power * &shifted;
    }
    acc
}

/// Floating evaluation of `P_l^{a,b}(t)` by the three-term recurrence in
/// complex arithmetic. When a recurrence denominator vanishes (degenerate
/// `a+b`) it falls back to the explicit sum in powers of `(t-1)/2`, reflected
/// through `(-1)^l P_l^{b,a}(-t)` for `Re t < 0`.
pub fn jacobi_eval(ell: u32, alpha: Complex64, beta: Complex64, t: Complex64) -> Complex64 {
    jacobi_recurrence_c64(ell, alpha, beta, t).unwrap_or_else(|| jacobi_sum_eval(ell, alpha, beta, t))
}

fn jacobi_recurrence_c64(ell: u32, alpha: Complex64, beta: Complex64, t: Complex64) -> Option<Complex64> {
    let one = Complex64::new(1.0, 0.0);
    if ell == 0 {
        return Some(one);
    }
    let ab = alpha + beta;
    let mut prev = one;
    let mut cur = (alpha - beta + (ab + 2.0) * t) * 0.5;
    for n in 2..=ell {
        let n = n as f64;
        let s = ab + 2.0 * n;
        let a = (n + ab) * (s - 2.0) * (2.0 * n);
        if a.norm() < 1e-12 * (1.0 + s.norm()).powi(2) {
            return None;
        }
        let b = (s - 1.0) * (s * (s - 2.0) * t + alpha * alpha - beta * beta);
        let c = (n + alpha - 1.0) * (n + beta - 1.0) * s * 2.0;
        let next = (b * cur - c * prev) / a;
        prev = cur;
        cur = next;
    }
    Some(cur)
}

fn jacobi_sum_eval(ell: u32, alpha: Complex64, beta: Complex64, t: Complex64) -> Complex64 {
    let (a, b, t, sign) = if t.re < 0.0 {
        (beta, alpha, -t, if ell.is_multiple_of(2) { 1.0 } else { -1.0 })
    } else {
        (alpha, beta, t, 1.0)
    };
    let u = (t - 1.0) * 0.5;
    let mut acc = Complex64::new(0.0, 0.0);
    for c in jacobi_sum_coeffs(ell, &a, &b).iter().rev() {
        acc = acc * u + c;
    }
    sign * acc
}

/// Floating evaluation of `C_l^a(t)` through the Jacobi bridge
/// `C_l^a = (2a)_l / (a+1/2)_l P_l^{a-1/2,a-1/2}`, falling back to the power
/// sum when `(a+1/2)_l` vanishes.
pub fn gegenbauer_eval(ell: u32, alpha: Complex64, t: Complex64) -> Complex64 {
    let den = pochhammer(&(alpha + 0.5), ell);
    if den.norm() == 0.0 {
        return gegenbauer_poly(ell, &alpha).eval_c64(t);
    }
    let p = jacobi_eval(ell, alpha - 0.5, alpha - 0.5, t);
    pochhammer(&(alpha * 2.0), ell) / den * p
}

/// Inflated Jacobi polynomial
/// `(-1)^l (x+y)^l P_l^{a,b}((y-x)/(x+y)) = sum_j (-1)^{l-j} c_j (x+y)^{l-j} x^j`.
pub fn jacobi_inflated<S: Scalar>(ell: u32, alpha: &S, beta: &S) -> PolyTwoVar<S> {
    let x = MultiPoly::var(2, 0);
    let sum = &x + &MultiPoly::var(2, 1);
    let mut out = MultiPoly::zero(2);
    for (j, c) in jacobi_sum_coeffs(ell, alpha, beta).into_iter().enumerate() {
        let sign = if (ell as usize - j).is_multiple_of(2) { c } else { -c };
        let term = &sum.pow(ell - j as u32) * &x.pow(j as u32);
        out = &out + &term.scale(&sign);
    }
    out
}

/// Variant two-variable Jacobi form `y^l P_l^{a,b}(1 + 2x/y) = sum_j c_j x^j y^{l-j}`.
pub fn jacobi_variant<S: Scalar>(ell: u32, alpha: &S, beta: &S) -> PolyTwoVar<S> {
    MultiPoly::from_terms(
        2,
        jacobi_sum_coeffs(ell, alpha, beta)
            .into_iter()
            .enumerate()
            .map(|(j, c)| (vec![j as u32, ell - j as u32], c)),
    )
}

/// Three-term recurrence evaluation for real parameters.
pub fn jacobi_recurrence_eval(ell: u32, alpha: f64, beta: f64, t: f64) -> f64 {
    let p1 = 0.5 * (alpha - beta + (alpha + beta + 2.0) * t);
    if ell == 0 {
        return 1.0;
    }
    let (mut prev, mut cur) = (1.0, p1);
    for n in 2..=ell {
        let n = n as f64;
        let s = 2.0 * n + alpha + beta;
        let a = 2.0 * n * (n + alpha + beta) * (s - 2.0);
        let b = (s - 1.0) * (s * (s - 2.0) * t + alpha * alpha - beta * beta);
        let c = 2.0 * (n + alpha - 1.0) * (n + beta - 1.0) * s;
        let next = (b * cur - c * prev) / a;
        prev = cur;
        cur = next;
    }
    cur
}

/// Gegenbauer coefficient
/// `a_k(l, a) = (-1)^k 2^{l-2k} (a)_{l-k} / (k! (l-2k)!)`.
pub fn gegenbauer_ak<S: Scalar>(ell: u32, k: u32, alpha: &S) -> Result<S> {
    if 2 * k > ell {
        return Err(Error::Domain(format!("a_k needs l >= 2k, got l={ell}, k={k}")));
    }
    let sign = if k.is_multiple_of(2) { S::one() } else { -S::one() };
    Ok(sign * S::from_i64(2).powi((ell - 2 * k) as i64) * pochhammer(alpha, ell - k)
        / (factorial::<S>(k) * factorial::<S>(ell - 2 * k)))
}

/// Gegenbauer polynomial `C_l^a(t) = sum_k a_k(l, a) t^{l-2k}`.
pub fn gegenbauer_poly<S: Scalar>(ell: u32, alpha: &S) -> PolyOneVar<S> {
    let mut coeffs = vec![S::zero(); ell as usize + 1];
    for k in 0..=ell / 2 {
        coeffs[(ell - 2 * k) as usize] = gegenbauer_ak(ell, k, alpha).expect("k within range");
    }
    PolyOneVar::new(coeffs)
}

/// Inflated Gegenbauer polynomial `sum_k a_k(l, a) u^k v^{l-2k}`, keyed `[k, l-2k]`.
pub fn gegenbauer_inflated<S: Scalar>(ell: u32, alpha: &S) -> PolyTwoVar<S> {
    MultiPoly::from_terms(
        2,
        (0..=ell / 2).map(|k| (vec![k, ell - 2 * k], gegenbauer_ak(ell, k, alpha).expect("k within range"))),
    )
}

/// `int_{-1}^{1} |P_l^{a,b}(x)|^2 (1-x)^a (1+x)^b dx`.
pub fn jacobi_norm_sq(ell: u32, alpha: f64, beta: f64) -> Result<f64> {
    if !(alpha > -1.0 && beta > -1.0) {
        return Err(Error::Domain(format!("Jacobi weight needs a,b > -1, got ({alpha}, {beta})")));
    }
    let two = 2f64.powf(alpha + beta + 1.0);
    if ell == 0 {
        return Ok(two * beta_real(alpha + 1.0, beta + 1.0)?);
    }
    let l = ell as f64;
    Ok(two * gamma_real(l + alpha + 1.0)? * gamma_real(l + beta + 1.0)? * rgamma_real(l + alpha + beta + 1.0)
        / ((2.0 * l + alpha + beta + 1.0) * factorial_f64(ell)))
}

/// `int_{-1}^{1} |C_l^a(v)|^2 (1-v^2)^{a-1/2} dv`.
pub fn gegenbauer_norm_sq(ell: u32, alpha: f64) -> Result<f64> {
    if alpha <= -0.5 {
        return Err(Error::Domain(format!("Gegenbauer weight needs a > -1/2, got {alpha}")));
    }
    if ell == 0 {
        return Ok(PI.sqrt() * gamma_real(alpha + 0.5)? * rgamma_real(alpha + 1.0));
    }
    let l = ell as f64;
    let r = rgamma_real(alpha);
    Ok(PI * 2f64.powf(1.0 - 2.0 * alpha) * gamma_real(l + 2.0 * alpha)? * r * r / (factorial_f64(ell) * (l + alpha)))
}

/// Jacobi-transform weight
/// `d_l(a,b) = l!(a+b+2l+1)Gamma(a+b+l+1) / (2^{a+b+1} Gamma(a+l+1) Gamma(b+l+1))`,
/// the reciprocal of [`jacobi_norm_sq`].
pub fn d_ell_weight(ell: u32, alpha: f64, beta: f64) -> Result<f64> {
    Ok(1.0 / jacobi_norm_sq(ell, alpha, beta)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Qi;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn pochhammer_examples() {
        assert_eq!(pochhammer(&Qi::ratio(3, 7), 0), Qi::int(1));
        assert_eq!(pochhammer(&Qi::int(2), 3), Qi::int(24));
        assert_eq!(pochhammer(&Qi::int(2), 1), Qi::int(2));
    }

    #[test]
    fn gamma_values() {
        assert_eq!(gamma(c(1.0, 0.0)).unwrap(), c(1.0, 0.0));
        assert!((gamma(c(0.5, 0.0)).unwrap().re - PI.sqrt()).abs() < 1e-15);
        assert!((gamma(c(-0.5, 0.0)).unwrap().re + 2.0 * PI.sqrt()).abs() < 1e-14);
        let g = gamma(c(1.0, 1.0)).unwrap();
        assert!((g - c(0.498_015_668_118_356, -0.154_949_828_301_810_7)).norm() < 1e-14);
        assert!(matches!(gamma(c(-2.0, 0.0)), Err(Error::Pole(_))));
        assert_eq!(rgamma(c(0.0, 0.0)), c(0.0, 0.0));
        assert_eq!(rgamma(c(-3.0, 0.0)), c(0.0, 0.0));
    }

    #[test]
    fn beta_values() {
        assert!((beta_real(2.0, 3.0).unwrap() - 1.0 / 12.0).abs() < 1e-16);
        assert!((beta_real(0.5, 0.5).unwrap() - PI).abs() < 1e-14);
        // B(-1, 3) = Gamma(3) * (-1)^{1+...} limit: Gamma(-1+e)/Gamma(2+e) -> ratio of residues.
        // Direct: B(a,3) = 2/(a(a+1)(a+2)) -> at a=-1 this is a pole, a+b = 2 is not: error.
        assert!(beta_real(-1.0, 3.0).is_err());
        // B(a, 1) = 1/a is finite at a = -1 with a+b = 0 on a pole: limit is -1.
        assert!((beta_real(-1.0, 1.0).unwrap() + 1.0).abs() < 1e-15);
    }

    #[test]
    fn jacobi_low_degree() {
        let a = Qi::ratio(3, 2);
        let b = Qi::ratio(-1, 3);
        assert_eq!(jacobi_poly(0, &a, &b).coeffs(), &[Qi::int(1)]);
        let p1 = jacobi_poly(1, &a, &b);
        let half = Qi::ratio(1, 2);
        assert_eq!(p1.coeff(0), half.clone() * (a.clone() - b.clone()));
        assert_eq!(p1.coeff(1), half * (Qi::int(2) + a + b));
    }

    #[test]
    fn jacobi_at_one() {
        let p = jacobi_poly(3, &Qi::ratio(1, 2), &Qi::ratio(3, 2));
        assert_eq!(p.eval(&Qi::int(1)), Qi::ratio(3, 2) * Qi::ratio(5, 2) * Qi::ratio(7, 2) / Qi::int(6));
        for ell in 0..10 {
            let a = Qi::ratio(5, 3);
            assert_eq!(
                jacobi_poly(ell, &a, &Qi::ratio(-2, 7)).eval(&Qi::int(1)),
                pochhammer(&(a.clone() + Qi::int(1)), ell) / factorial::<Qi>(ell)
            );
        }
    }

    #[test]
    fn jacobi_ode_exact() {
        let grid = [Qi::int(0), Qi::ratio(1, 2), Qi::int(1), Qi::ratio(5, 2), Qi::ratio(-1, 3)];
        for ell in 0..=12u32 {
            for a in &grid {
                for b in &grid {
                    let y = jacobi_poly(ell, a, b);
                    let y1 = y.derivative();
                    let y2 = y1.derivative();
                    let one_minus_t2 = PolyOneVar::new(vec![Qi::int(1), Qi::int(0), Qi::int(-1)]);
                    let lin = PolyOneVar::linear(b.clone() - a.clone(), -(a.clone() + b.clone() + Qi::int(2)));
                    let mu = Qi::from_i64(ell as i64) * (Qi::from_i64(ell as i64 + 1) + a.clone() + b.clone());
                    let r = &(&(&one_minus_t2 * &y2) + &(&lin * &y1)) + &y.scale(&mu);
                    assert!(r.is_zero(), "ODE residual at l={ell}, a={a}, b={b}: {r}");
                }
            }
        }
    }

    #[test]
    fn inflated_examples() {
        let a = Qi::ratio(2, 5);
        let b = Qi::ratio(7, 4);
        assert_eq!(jacobi_inflated(0, &a, &b), MultiPoly::constant(2, Qi::int(1)));
        // -(a+1)(x+y) + (a+b+2)x
        let x = MultiPoly::var(2, 0);
        let y = MultiPoly::var(2, 1);
        let expect = &(&x + &y).scale(&-(a.clone() + Qi::int(1))) + &x.scale(&(a.clone() + b.clone() + Qi::int(2)));
        assert_eq!(jacobi_inflated(1, &a, &b), expect);
        for ell in 0..7 {
            assert!(jacobi_inflated(ell, &a, &b).is_homogeneous(ell));
            assert!(jacobi_variant(ell, &a, &b).is_homogeneous(ell));
        }
    }

    #[test]
    fn inflated_on_iota() {
        // P~(z(1-v)/2, z(1+v)/2) = (-1)^l z^l P(v)
        let a = Complex64::new(1.5, 0.0);
        let b = Complex64::new(0.25, 0.0);
        for ell in 0..8 {
            let pt = jacobi_inflated(ell, &a, &b);
            let p = jacobi_poly(ell, &a, &b);
            for &(z, v) in &[(0.7, 0.3), (2.5, -0.8), (1.1, 0.95)] {
                let x = Complex64::new(z * (1.0 - v) / 2.0, 0.0);
                let y = Complex64::new(z * (1.0 + v) / 2.0, 0.0);
                let lhs = pt.eval_c64(&[x, y]);
                let sign = if ell % 2 == 0 { 1.0 } else { -1.0 };
                let rhs = sign * z.powi(ell as i32) * p.eval_f64(v);
                assert!((lhs - rhs).norm() <= 1e-12 * (1.0 + rhs.norm()));
            }
        }
    }

    #[test]
    fn gegenbauer_examples() {
        let a = Qi::ratio(3, 4);
        let u = MultiPoly::var(2, 0);
        let v = MultiPoly::var(2, 1);
        assert_eq!(gegenbauer_inflated(0, &a), MultiPoly::constant(2, Qi::int(1)));
        assert_eq!(gegenbauer_inflated(1, &a), v.scale(&(Qi::int(2) * a.clone())));
        let two_v2 = v.pow(2).scale(&(Qi::int(2) * (a.clone() + Qi::int(1))));
        assert_eq!(gegenbauer_inflated(2, &a), (&two_v2 - &u).scale(&a));
        assert!(gegenbauer_ak(3, 2, &a).is_err());
        for ell in 0..10 {
            let c = gegenbauer_poly(ell, &a);
            assert_eq!(c.eval(&Qi::int(1)), pochhammer(&(Qi::int(2) * a.clone()), ell) / factorial::<Qi>(ell));
            let inf = gegenbauer_inflated(ell, &a);
            assert!(inf.terms().all(|(e, _)| 2 * e[0] + e[1] == ell));
            let one = MultiPoly::constant(1, Qi::int(1));
            let t = MultiPoly::var(1, 0);
            assert_eq!(inf.substitute(&[one, t]), c.to_multi(1, 0));
        }
    }

    /// Coefficient of r^l in (1 - 2tr + r^2)^{-a}, from the binomial series
    /// (1-w)^{-a} = sum_m (a)_m/m! w^m with w = 2tr - r^2.
    fn generating_coefficient(ell: u32, a: &Qi) -> PolyOneVar<Qi> {
        let mut out = PolyOneVar::zero();
        for m in 0..=ell {
            // w^m = r^m (2t - r)^m ; need r^{l-m} from (2t - r)^m
            let j = ell - m;
            if j > m {
                continue;
            }
            let binom = factorial::<Qi>(m) / (factorial::<Qi>(j) * factorial::<Qi>(m - j));
            let sign = if j.is_multiple_of(2) { Qi::int(1) } else { Qi::int(-1) };
            let coef = pochhammer(a, m) / factorial::<Qi>(m) * binom * sign * Qi::int(2).powi((m - j) as i64);
            let mut c = vec![Qi::int(0); (m - j) as usize + 1];
            c[(m - j) as usize] = coef;
            out = &out + &PolyOneVar::new(c);
        }
        out
    }

    #[test]
    fn gegenbauer_generating_function() {
        for a in [Qi::ratio(1, 2), Qi::ratio(7, 3), Qi::int(2)] {
            for ell in 0..=8 {
                assert_eq!(gegenbauer_poly(ell, &a), generating_coefficient(ell, &a));
            }
        }
    }

    #[test]
    fn jacobi_gegenbauer_bridge() {
        for a in [Qi::ratio(1, 2), Qi::ratio(4, 3), Qi::int(3)] {
            for ell in 0..=9 {
                let scale = pochhammer(&(Qi::int(2) * a.clone() + Qi::int(1)), ell)
                    / pochhammer(&(a.clone() + Qi::int(1)), ell);
                let lhs = jacobi_poly(ell, &a, &a).scale(&scale);
                assert_eq!(lhs, gegenbauer_poly(ell, &(a.clone() + Qi::ratio(1, 2))));
            }
        }
    }

    #[test]
    fn norm_examples() {
        assert!((jacobi_norm_sq(0, 0.0, 0.0).unwrap() - 2.0).abs() < 1e-15);
        assert!((d_ell_weight(0, 0.0, 0.0).unwrap() - 0.5).abs() < 1e-15);
        assert!(jacobi_norm_sq(1, -1.0, 0.0).is_err());
        assert!(gegenbauer_norm_sq(1, -0.5).is_err());
        // Legendre: 2/(2l+1)
        for ell in 0..8 {
            assert!((jacobi_norm_sq(ell, 0.0, 0.0).unwrap() - 2.0 / (2.0 * ell as f64 + 1.0)).abs() < 1e-14);
        }
        // Chebyshev-like: C_l^1 = U_l, norm pi/2
        for ell in 0..6 {
            assert!((gegenbauer_norm_sq(ell, 1.0).unwrap() - PI / 2.0).abs() < 1e-13);
        }
    }

    proptest! {
        #[test]
        fn explicit_sum_matches_recurrence(ell in 0u32..10, a in -0.9f64..5.0, b in -0.9f64..5.0, t in -1.0f64..1.0) {
            let p = jacobi_sum_eval(ell, Complex64::new(a, 0.0), Complex64::new(b, 0.0), Complex64::new(t, 0.0)).re;
            let r = jacobi_recurrence_eval(ell, a, b, t);
            prop_assert!((p - r).abs() <= 1e-9 * (1.0 + r.abs()));
        }

        #[test]
        fn gamma_recurrence(re in -6.0f64..8.0, im in -3.0f64..3.0) {
            let z = Complex64::new(re, im);
            prop_assume!(im.abs() > 1e-3 || (re - re.round()).abs() > 1e-3);
            let lhs = gamma(z + 1.0).unwrap();
            let rhs = z * gamma(z).unwrap();
            prop_assert!((lhs - rhs).norm() <= 1e-12 * lhs.norm().max(1e-300));
        }

        #[test]
        fn gamma_reflection(re in -4.0f64..4.0, im in -2.0f64..2.0) {
            let z = Complex64::new(re, im);
            prop_assume!(im.abs() > 1e-3 || (re - re.round()).abs() > 1e-3);
            let lhs = gamma(z).unwrap() * gamma(1.0 - z).unwrap() * sin_pi(z);
            prop_assert!((lhs - PI).norm() <= 1e-12 * PI);
        }

        #[test]
        fn rgamma_is_reciprocal(re in -5.0f64..10.0, im in -2.0f64..2.0) {
            let z = Complex64::new(re, im);
            prop_assume!(im.abs() > 1e-3 || (re - re.round()).abs() > 1e-3);
            prop_assert!((gamma(z).unwrap() * rgamma(z) - 1.0).norm() < 1e-12);
        }
    }
}
