//! Holomorphic Juhl operators on `C^n`, their Bernstein-Sato identity and
//! coefficient ladder, the time-like cone model, the Gegenbauer transform,
//! the relative reproducing kernel and the Plancherel constants.
//!
//! Conventions: `Q(z) = z_1^2 - z_2^2 - ... - z_n^2`, the restriction is to
//! `z_n = 0`, and the cone `Omega(n)` is `{Q(y) > 0, y_1 > 0}`. The L2 model
//! on `Omega(n)` carries the measure `Q(y)^{n/2-lambda} dy`. On the tube,
//! powers of `Q` use the branch `Q(w)^e = exp(e (log(-Q(w)) + i pi))`, so that
//! `(2i)^{2e} Q(w)^e = Q(w/(2i))^e` on the principal branch.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::poly::MultiPoly;
use crate::quadrature::{cached_rule, integrate_adaptive, Domain, Family};
use crate::scalar::Scalar;
use crate::special_poly::{factorial, gamma, gegenbauer_ak, gegenbauer_eval, gegenbauer_inflated, gegenbauer_norm_sq, pochhammer, rgamma};
use crate::term_algebra::{apply_diff_op, HoloSum, Substitution};

const I: Complex64 = Complex64::new(0.0, 1.0);

fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn i_pow(k: i64) -> Complex64 {
    crate::l2_model::i_pow(k)
}

/// Parameters `(n, lambda, l)` with `nu = lambda + l` and `alpha = lambda - (n-1)/2`.
#[derive(Clone, Debug, PartialEq)]
pub struct JuhlParams<S> {
    pub n: usize,
    pub lambda: S,
    pub ell: u32,
}

impl<S: Scalar> JuhlParams<S> {
    pub fn new(n: usize, lambda: S, ell: u32) -> Result<Self> {
        if n < 3 {
            return Err(Error::Domain(format!("Juhl operators need n >= 3, got {n}")));
        }
        Ok(JuhlParams { n, lambda, ell })
    }

    pub fn nu(&self) -> S {
        self.lambda.clone() + S::from_i64(self.ell as i64)
    }

    pub fn alpha(&self) -> S {
        self.lambda.clone() - S::from_ratio(self.n as i64 - 1, 2)
    }
}

/// Two constructions of the Juhl operator symbol.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum JuhlRoute {
    /// `sum_k a_k(l, alpha) d_n^{l-2k} Delta'^k`.
    Gegenbauer,
    /// `i^{-l} (I_l C_l^alpha)(-Delta', i d_n)`.
    Inflated,
}

impl JuhlRoute {
    pub const ALL: [JuhlRoute; 2] = [JuhlRoute::Gegenbauer, JuhlRoute::Inflated];
}

/// `x_1^2 - x_2^2 - ... - x_k^2` in `n` variables.
pub fn lorentz_form<S: Scalar>(n: usize, k: usize) -> MultiPoly<S> {
    let mut out = MultiPoly::zero(n);
    for j in 0..k {
        let mut e = vec![0; n];
        e[j] = 2;
        out.add_term(e, if j == 0 { S::one() } else { -S::one() });
    }
    out
}

/// Symbol of the Juhl operator in the variables `(d_1, ..., d_n)`.
pub fn juhl_symbol<S: Scalar>(p: &JuhlParams<S>, route: JuhlRoute) -> Result<MultiPoly<S>> {
    let n = p.n;
    let alpha = p.alpha();
    let lap = lorentz_form::<S>(n, n - 1);
    let dn = MultiPoly::var(n, n - 1);
    match route {
        JuhlRoute::Gegenbauer => {
            let mut out = MultiPoly::zero(n);
            for k in 0..=p.ell / 2 {
                let term = &dn.pow(p.ell - 2 * k) * &lap.pow(k);
                out = &out + &term.scale(&gegenbauer_ak(p.ell, k, &alpha)?);
            }
            Ok(out)
        }
        JuhlRoute::Inflated => {
            let u = lap.scale(&-S::one());
            let v = dn.scale(&S::i());
            let inflated = gegenbauer_inflated(p.ell, &alpha).substitute(&[u, v]);
            Ok(inflated.scale(&S::i().powi(-(p.ell as i64))))
        }
    }
}

/// The Juhl differential operator applied without restriction.
pub fn juhl_operator_apply<S: Scalar>(p: &JuhlParams<S>, f: &HoloSum<S>, route: JuhlRoute) -> Result<HoloSum<S>> {
    if f.nvars() != p.n {
        return Err(Error::Arity { expected: p.n, got: f.nvars() });
    }
    Ok(apply_diff_op(&juhl_symbol(p, route)?, f))
}

/// `D_{lambda -> lambda + l} f`: the Juhl operator followed by `z_n = 0`.
pub fn juhl_sbo_apply<S: Scalar>(p: &JuhlParams<S>, f: &HoloSum<S>, route: JuhlRoute) -> Result<HoloSum<S>> {
    juhl_operator_apply(p, f, route)?.restrict(&Substitution::hyperplane(p.n, p.n - 1))
}

/// `q(n, l; lambda) = (2^l / l!) (2 lambda - n + 1)_l (lambda)_l`.
pub fn q_nl<S: Scalar>(n: usize, ell: u32, lambda: &S) -> S {
    let shifted = S::from_i64(2) * lambda.clone() - S::from_i64(n as i64 - 1);
    S::from_i64(2).powi(ell as i64) / factorial::<S>(ell) * pochhammer(&shifted, ell) * pochhammer(lambda, ell)
}

/// Expansion of the Juhl operator applied to `Q^{-lambda}` as
/// `sum_j r_j Q^{-lambda-l+j}`, with `r_j` reduced modulo `Q` in `z_1`.
#[derive(Clone, Debug, PartialEq)]
pub struct BernsteinSato<S> {
    /// `r_j` for `j = 0, 1, ...`; `r_0` is the leading term.
    pub r: Vec<MultiPoly<S>>,
    /// `q_j`, the coefficient of `z_n^{l-2j}` in `r_j`.
    pub q: Vec<S>,
    /// `q(n, l; lambda)`.
    pub expected: S,
    /// `r_0 - q_0 z_n^l`.
    pub leading_defect: MultiPoly<S>,
}

impl<S: Scalar> BernsteinSato<S> {
    pub fn q0(&self) -> S {
        self.q.first().cloned().unwrap_or_else(S::zero)
    }

    /// Nonzero `r_j` with `j >= 1`.
    pub fn higher_terms(&self) -> Vec<(usize, MultiPoly<S>)> {
        self.r.iter().enumerate().skip(1).filter(|(_, r)| !r.is_zero()).map(|(j, r)| (j, r.clone())).collect()
    }

    /// Exact agreement with the identity.
    pub fn holds(&self) -> bool {
        (self.q0() - self.expected.clone()).is_zero() && self.leading_defect.is_zero() && self.higher_terms().is_empty()
    }

    /// Largest coefficient modulus among the defects, relative to `|q(n,l;lambda)|`.
    pub fn defect(&self) -> f64 {
        let scale = self.expected.to_c64().norm().max(1e-300);
        let mut worst = (self.q0() - self.expected.clone()).to_c64().norm();
        for (c, _) in self.leading_defect.terms().map(|(e, c)| (c.to_c64().norm(), e)) {
            worst = worst.max(c);
        }
        for (_, r) in self.higher_terms() {
            for (_, c) in r.terms() {
                worst = worst.max(c.to_c64().norm());
            }
        }
        worst / scale
    }
}

/// Applies the Juhl operator to `Q^{-lambda}` symbolically and collects the
/// ladder of powers of `Q`.
pub fn bernstein_sato_verify<S: Scalar>(p: &JuhlParams<S>) -> Result<BernsteinSato<S>> {
    let n = p.n;
    let q = lorentz_form::<S>(n, n);
    let f = HoloSum::power(q.clone(), -p.lambda.clone());
    let applied = juhl_operator_apply(p, &f, JuhlRoute::Gegenbauer)?;
    let (e0, found) = applied.base_power_expansion(&q, 0)?;
    let lowest = -p.nu();
    let mut r = Vec::new();
    if !found.is_empty() {
        let offset = (e0 - lowest).as_integer().ok_or_else(|| Error::Domain("exponent ladder is not integral".into()))?;
        if offset < 0 {
            return Err(Error::Domain(format!("power of Q below -lambda-l by {}", -offset)));
        }
        r.extend(std::iter::repeat_with(|| MultiPoly::zero(n)).take(offset as usize));
        r.extend(found);
    }
    if r.is_empty() {
        r.push(MultiPoly::zero(n));
    }
    let q_list = r
        .iter()
        .enumerate()
        .map(|(j, rj)| {
            let mut e = vec![0; n];
            e[n - 1] = (p.ell as i64 - 2 * j as i64).max(0) as u32;
            if 2 * j as u32 > p.ell {
                S::zero()
            } else {
                rj.coeff(&e)
            }
        })
        .collect::<Vec<_>>();
    let mut lead_mono = vec![0; n];
    lead_mono[n - 1] = p.ell;
    let leading_defect = &r[0] - &MultiPoly::monomial(lead_mono, q_list[0].clone());
    Ok(BernsteinSato { r, q: q_list, expected: q_nl(n, p.ell, &p.lambda), leading_defect })
}

/// Coefficients `p_j` of the Juhl operator in powers of the full Laplacian
/// `Delta = d_1^2 - ... - d_n^2` and `d_n`, and the factors `s_k` with
/// `Delta^k Q^{-lambda} = s_k Q^{-lambda-k}`.
#[derive(Clone, Debug, PartialEq)]
pub struct Ladder<S> {
    pub p: Vec<S>,
    pub s: Vec<S>,
}

pub fn coefficient_ladder<S: Scalar>(params: &JuhlParams<S>) -> Result<Ladder<S>> {
    let alpha = params.alpha();
    let half = params.ell / 2;
    let mut p = Vec::with_capacity(half as usize + 1);
    for j in 0..=half {
        let mut acc = S::zero();
        for k in j..=half {
            acc = acc + gegenbauer_ak(params.ell, k, &alpha)? * binomial::<S>(k, j);
        }
        p.push(acc);
    }
    let mut s = vec![S::one()];
    let n = S::from_i64(params.n as i64);
    for k in 0..half.max(1) {
        let lk = params.lambda.clone() + S::from_i64(k as i64);
        let two = S::from_i64(2);
        let next = s[k as usize].clone() * two.clone() * lk.clone() * (two * lk - n.clone() + S::from_i64(2));
        s.push(next);
    }
    Ok(Ladder { p, s })
}

fn binomial<S: Scalar>(k: u32, j: u32) -> S {
    factorial::<S>(k) / (factorial::<S>(j) * factorial::<S>(k - j))
}

/// `sum_j p_j d_n^{l-2j} Delta^j`, to be compared with [`juhl_symbol`].
pub fn ladder_symbol<S: Scalar>(params: &JuhlParams<S>, ladder: &Ladder<S>) -> MultiPoly<S> {
    let n = params.n;
    let full = lorentz_form::<S>(n, n);
    let dn = MultiPoly::var(n, n - 1);
    let mut out = MultiPoly::zero(n);
    for (j, pj) in ladder.p.iter().enumerate() {
        let j = j as u32;
        out = &out + &(&dn.pow(params.ell - 2 * j) * &full.pow(j)).scale(pj);
    }
    out
}

/// `Delta^k Q^{-lambda} - s_k Q^{-lambda-k}` written as `sum_j r_j Q^{e_0+j}`;
/// every `r_j` vanishes when the identity holds.
pub fn laplacian_power_defect<S: Scalar>(n: usize, lambda: &S, k: u32, s_k: &S) -> Result<Vec<MultiPoly<S>>> {
    let q = lorentz_form::<S>(n, n);
    let op = lorentz_form::<S>(n, n).pow(k);
    let lhs = apply_diff_op(&op, &HoloSum::power(q.clone(), -lambda.clone()));
    let rhs = HoloSum::power(q.clone(), -lambda.clone() - S::from_i64(k as i64)).scale(s_k);
    Ok((&lhs - &rhs).base_power_expansion(&q, 0)?.1)
}

/// Whether `D_{lambda -> lambda + j} f = 0` for every `j <= order`.
pub fn annihilated_up_to<S: Scalar>(n: usize, lambda: &S, f: &HoloSum<S>, order: u32) -> Result<bool> {
    for j in 0..=order {
        let p = JuhlParams::new(n, lambda.clone(), j)?;
        if !juhl_sbo_apply(&p, f, JuhlRoute::Gegenbauer)?.is_zero_exact()? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Real parameters of the cone model.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConeParams {
    pub n: usize,
    pub lambda: f64,
    pub ell: u32,
}

impl ConeParams {
    pub fn new(n: usize, lambda: f64, ell: u32) -> Result<Self> {
        if n < 3 {
            return Err(Error::Domain(format!("cone model needs n >= 3, got {n}")));
        }
        Ok(ConeParams { n, lambda, ell })
    }

    pub fn nu(&self) -> f64 {
        self.lambda + self.ell as f64
    }

    pub fn alpha(&self) -> f64 {
        self.lambda - (self.n as f64 - 1.0) / 2.0
    }

    /// Exponent `lambda - n/2` of the Gegenbauer weight on the fibre.
    pub fn fibre_exponent(&self) -> f64 {
        self.lambda - self.n as f64 / 2.0
    }

    fn gegenbauer(&self, v: f64) -> f64 {
        gegenbauer_eval(self.ell, re(self.alpha()), re(v)).re
    }
}

/// `y_1^2 - y_2^2 - ... - y_k^2`.
pub fn q_form(y: &[f64]) -> f64 {
    y.iter().enumerate().map(|(k, v)| if k == 0 { v * v } else { -v * v }).sum()
}

/// Complexified quadratic form.
pub fn q_form_c(w: &[Complex64]) -> Complex64 {
    w.iter().enumerate().map(|(k, v)| if k == 0 { v * v } else { -v * v }).sum()
}

/// Membership in the time-like cone.
pub fn in_cone(y: &[f64]) -> bool {
    !y.is_empty() && y[0] > 0.0 && q_form(y) > 0.0
}

fn require_cone(y: &[f64]) -> Result<()> {
    if in_cone(y) {
        Ok(())
    } else {
        Err(Error::Domain(format!("{y:?} is outside the time-like cone")))
    }
}

/// `iota(y', v) = (y', -sqrt(Q(y')) v)`.
pub fn iota_cone(y_prime: &[f64], v: f64) -> Result<Vec<f64>> {
    require_cone(y_prime)?;
    if v.abs() >= 1.0 {
        return Err(Error::Domain(format!("fibre coordinate {v} outside (-1, 1)")));
    }
    let mut y = y_prime.to_vec();
    y.push(-q_form(y_prime).sqrt() * v);
    Ok(y)
}

pub fn iota_cone_inv(y: &[f64]) -> Result<(Vec<f64>, f64)> {
    require_cone(y)?;
    let (yp, yn) = y.split_at(y.len() - 1);
    require_cone(yp)?;
    Ok((yp.to_vec(), -yn[0] / q_form(yp).sqrt()))
}

/// `M(y', v) = Q(y')^{(l+1)/2} (1-v^2)^{n/2-lambda}`.
pub fn weight_m_cone(p: &ConeParams, y_prime: &[f64], v: f64) -> Result<f64> {
    require_cone(y_prime)?;
    Ok(q_form(y_prime).powf((p.ell as f64 + 1.0) / 2.0) * (1.0 - v * v).powf(-p.fibre_exponent()))
}

/// Density of `Q(y)^{n/2-lambda} dy` in the coordinates `(y', v)`, by the chain rule.
pub fn cone_density(p: &ConeParams, y_prime: &[f64], v: f64) -> Result<f64> {
    let y = iota_cone(y_prime, v)?;
    Ok(q_form(&y).powf(p.n as f64 / 2.0 - p.lambda) * q_form(y_prime).sqrt())
}

/// The same density as `M^2 Q(y')^{(n-1)/2-nu} (1-v^2)^{lambda-n/2}`.
pub fn cone_density_via_m(p: &ConeParams, y_prime: &[f64], v: f64) -> Result<f64> {
    let m = weight_m_cone(p, y_prime, v)?;
    let base = q_form(y_prime).powf((p.n as f64 - 1.0) / 2.0 - p.nu());
    Ok(m * m * base * (1.0 - v * v).powf(p.fibre_exponent()))
}

/// `(Phi h)(y) = Q(y')^{-(l+1/2)} (1 - y_n^2/Q(y'))^{lambda-n/2} (I_l C_l^alpha)(Q(y'), -y_n) h(y')`.
pub fn phi_cone_apply(p: &ConeParams, h: &dyn Fn(&[f64]) -> Complex64, y: &[f64]) -> Result<Complex64> {
    if y.len() != p.n {
        return Err(Error::Arity { expected: p.n, got: y.len() });
    }
    require_cone(y)?;
    let (yp, yn) = y.split_at(p.n - 1);
    require_cone(yp)?;
    let qp = q_form(yp);
    let inflated = gegenbauer_inflated(p.ell, &re(p.alpha())).eval_c64(&[re(qp), re(-yn[0])]);
    let fibre = (1.0 - yn[0] * yn[0] / qp).powf(p.fibre_exponent());
    Ok(qp.powf(-(p.ell as f64 + 0.5)) * fibre * inflated * h(yp))
}

/// `(D^ F)(y') = i^{-l} Q(y')^{(l+1)/2} int_{-1}^{1} F(iota(y', v)) C_l^alpha(v) dv`
/// for `F` of the form `(1-v^2)^a * smooth` along the fibre, with `a` declared.
pub fn juhl_hat_apply(p: &ConeParams, f: &dyn Fn(&[f64]) -> Complex64, fibre: f64, y_prime: &[f64], tol: f64) -> Result<Complex64> {
    if y_prime.len() + 1 != p.n {
        return Err(Error::Arity { expected: p.n - 1, got: y_prime.len() });
    }
    require_cone(y_prime)?;
    let sq = q_form(y_prime).sqrt();
    let mut y = y_prime.to_vec();
    y.push(0.0);
    let last = p.n - 1;
    let est = integrate_adaptive(
        |v| {
            let mut pt = y.clone();
            pt[last] = -sq * v;
            f(&pt) * p.gegenbauer(v) * (1.0 - v * v).powf(-fibre)
        },
        Domain::Jacobi { alpha: fibre, beta: fibre },
        tol,
    )?;
    if !est.converged {
        return Err(Error::Domain(format!("fibre integral unconverged over {y_prime:?}")));
    }
    Ok(i_pow(-(p.ell as i64)) * sq.powi(p.ell as i32 + 1) * est.value)
}

/// `int |(Phi h)(iota(y', v))|^2 dm_lambda` along one fibre, evaluated from
/// [`phi_cone_apply`] in the ambient coordinates.
pub fn phi_cone_fibre_norm_sq(p: &ConeParams, h: &dyn Fn(&[f64]) -> Complex64, y_prime: &[f64], tol: f64) -> Result<f64> {
    require_cone(y_prime)?;
    let a = p.fibre_exponent();
    let failure = std::cell::RefCell::new(None);
    let est = integrate_adaptive(
        |v| {
            let res = iota_cone(y_prime, v).and_then(|y| {
                let phi = phi_cone_apply(p, h, &y)?;
                Ok(phi.norm_sqr() * cone_density(p, y_prime, v)? * (1.0 - v * v).powf(-a))
            });
            res.map(re).unwrap_or_else(|e| {
                failure.borrow_mut().get_or_insert(e);
                re(0.0)
            })
        },
        Domain::Jacobi { alpha: a, beta: a },
        tol,
    )?;
    if let Some(e) = failure.into_inner() {
        return Err(e);
    }
    Ok(est.value.re)
}

/// `|h(y')|^2 Q(y')^{(n-1)/2-nu}`, the integrand of `||h||^2` on `Omega(n-1)`.
pub fn base_density(p: &ConeParams, h: &dyn Fn(&[f64]) -> Complex64, y_prime: &[f64]) -> Result<f64> {
    require_cone(y_prime)?;
    Ok(h(y_prime).norm_sqr() * q_form(y_prime).powf((p.n as f64 - 1.0) / 2.0 - p.nu()))
}

/// Truncated L2-model inverse `sum_l (i^l / c_l) Phi_l(g_l)` at `y`.
pub fn invert_juhl_l2(n: usize, lambda: f64, components: &[(u32, &dyn Fn(&[f64]) -> Complex64)], y: &[f64]) -> Result<Complex64> {
    let mut acc = re(0.0);
    for (ell, g) in components {
        let p = ConeParams::new(n, lambda, *ell)?;
        acc += i_pow(*ell as i64) / cone_c_ell(&p)? * phi_cone_apply(&p, *g, y)?;
    }
    Ok(acc)
}

/// Residuals `int |F - F_L|^2 dm_lambda` along the fibre over `y'` for
/// `L = 0..=l_max`, where `F_L = sum_{l <= L} (i^l / c_l) Phi_l(D^_l F)` and
/// `F` is smooth along the fibre. The three parts of `|F - F_L|^2` are
/// integrated separately with their own Jacobi weights.
pub fn fibre_residuals(n: usize, lambda: f64, f: &dyn Fn(&[f64]) -> Complex64, y_prime: &[f64], l_max: u32, tol: f64) -> Result<Vec<f64>> {
    require_cone(y_prime)?;
    let base = ConeParams::new(n, lambda, 0)?;
    let a = base.fibre_exponent();
    let qp = q_form(y_prime);
    let density = qp.powf(-a + 0.5);
    let mut coeffs = Vec::new();
    let mut out = Vec::new();
    for ell in 0..=l_max {
        let p = ConeParams::new(n, lambda, ell)?;
        let g = juhl_hat_apply(&p, f, 0.0, y_prime, tol)?;
        coeffs.push((p, i_pow(ell as i64) / cone_c_ell(&p)? * g));
        let smooth_sum = |v: f64| -> Complex64 {
            coeffs
                .iter()
                .map(|(p, c)| c * p.gegenbauer(v) * qp.powf(-(p.ell as f64 + 1.0) / 2.0))
                .sum()
        };
        let at = |v: f64| iota_cone(y_prime, v).map(|y| f(&y)).unwrap_or(re(f64::NAN));
        let ff = integrate_adaptive(|v| re(at(v).norm_sqr()), Domain::Jacobi { alpha: -a, beta: -a }, tol)?;
        let cross = integrate_adaptive(|v| at(v) * smooth_sum(v).conj(), Domain::Jacobi { alpha: 0.0, beta: 0.0 }, tol)?;
        let ss = integrate_adaptive(|v| re(smooth_sum(v).norm_sqr()), Domain::Jacobi { alpha: a, beta: a }, tol)?;
        if !(ff.converged && cross.converged && ss.converged) {
            return Err(Error::Domain(format!("fibre residual unconverged over {y_prime:?}")));
        }
        out.push(density * (ff.value.re - 2.0 * cross.value.re + ss.value.re));
    }
    Ok(out)
}

/// `c_l(lambda) = int |C_l^alpha|^2 (1-v^2)^{alpha-1/2} dv`.
pub fn cone_c_ell(p: &ConeParams) -> Result<f64> {
    gegenbauer_norm_sq(p.ell, p.alpha())
}

/// `b_n(lambda) = (2 pi)^{3n/2-1} 2^{n-2 lambda} Gamma(lambda - n/2) Gamma(lambda - n + 1)`.
pub fn b_n(n: usize, lambda: f64) -> Result<f64> {
    let nf = n as f64;
    Ok((2.0 * PI).powf(1.5 * nf - 1.0) * 2f64.powf(nf - 2.0 * lambda) * real_gamma(lambda - nf / 2.0)? * real_gamma(lambda - nf + 1.0)?)
}

fn real_gamma(x: f64) -> Result<f64> {
    Ok(gamma(re(x))?.re)
}

/// `r_l(lambda) = Gamma(lambda+l-(n-1)/2) Gamma(lambda+l-n+2) / ((2pi)^{3/2} 2^{2l+1} Gamma(lambda-n/2) Gamma(lambda-n+1))`.
pub fn cone_r_ell(p: &ConeParams) -> Result<f64> {
    let (n, l, lam) = (p.n as f64, p.ell as f64, p.lambda);
    let num = real_gamma(lam + l - (n - 1.0) / 2.0)? * real_gamma(lam + l - n + 2.0)?;
    let den = rgamma(re(lam - n / 2.0)).re * rgamma(re(lam - n + 1.0)).re;
    Ok(num * den / ((2.0 * PI).powf(1.5) * 2f64.powi(2 * p.ell as i32 + 1)))
}

/// `k_{lambda,n} = (2i)^{2 lambda} (lambda - n/2) Gamma(lambda) / ((4 pi)^n Gamma(lambda - n + 1))`,
/// with `(2i)^{2 lambda}` principal.
pub fn k_lambda_n(n: usize, lambda: f64) -> Result<Complex64> {
    let two_i = Complex64::new(0.0, 2.0).powc(re(2.0 * lambda));
    let real = (lambda - n as f64 / 2.0) * real_gamma(lambda)? * rgamma(re(lambda - n as f64 + 1.0)).re / (4.0 * PI).powi(n as i32);
    Ok(two_i * real)
}

/// Closed form `2^{2lambda-2n+l-1} (lambda-n+1)_{n+l-1} (2lambda-n)_{l+1} / (i^{2lambda+2l} pi^n l!)`,
/// with `i^{2lambda+2l}` principal.
pub fn c_holo_closed(p: &ConeParams) -> Result<Complex64> {
    let (n, l, lam) = (p.n as f64, p.ell, p.lambda);
    let num = 2f64.powf(2.0 * lam - 2.0 * n + l as f64 - 1.0)
        * pochhammer(&re(lam - n + 1.0), p.n as u32 + l - 1).re
        * pochhammer(&re(2.0 * lam - n), l + 1).re;
    let phase = I.powc(re(2.0 * lam + 2.0 * l as f64));
    Ok(num / (phase * PI.powi(p.n as i32) * factorial::<Complex64>(l)))
}

/// Constant of the holographic integral under the kernel branch of this
/// module, `(-1)^l k_{lambda,n} q(n,l;lambda)`.
pub fn c_holo(p: &ConeParams) -> Result<Complex64> {
    let sign = if p.ell.is_multiple_of(2) { 1.0 } else { -1.0 };
    Ok(sign * k_lambda_n(p.n, p.lambda)? * q_nl(p.n, p.ell, &re(p.lambda)))
}

/// Closed-form constants of one Juhl component.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConeConstants {
    pub c_ell: f64,
    pub r_ell: f64,
    pub b_n: f64,
    pub b_n1: f64,
    pub k_lambda: Complex64,
    pub c_holo: Complex64,
    pub c_holo_closed: Complex64,
}

pub fn cone_constants(p: &ConeParams) -> Result<ConeConstants> {
    Ok(ConeConstants {
        c_ell: cone_c_ell(p)?,
        r_ell: cone_r_ell(p)?,
        b_n: b_n(p.n, p.lambda)?,
        b_n1: b_n(p.n - 1, p.nu())?,
        k_lambda: k_lambda_n(p.n, p.lambda)?,
        c_holo: c_holo(p)?,
        c_holo_closed: c_holo_closed(p)?,
    })
}

/// Squared operator norm `r_l c_l` of `D_{lambda -> lambda + l}`; needs `lambda > n - 1`.
pub fn juhl_operator_norm_sq(p: &ConeParams) -> Result<f64> {
    if p.lambda <= p.n as f64 - 1.0 {
        return Err(Error::Domain(format!("unitary range needs lambda > n-1, got {}", p.lambda)));
    }
    Ok(cone_r_ell(p)? * cone_c_ell(p)?)
}

/// Membership of `Im w` in the cone.
pub fn in_tube(w: &[Complex64]) -> bool {
    in_cone(&w.iter().map(|z| z.im).collect::<Vec<_>>())
}

/// `Q(w)^e` on the tube, `exp(e (log(-Q(w)) + i pi))`.
pub fn tube_power(w: &[Complex64], e: Complex64) -> Result<Complex64> {
    if !in_tube(w) {
        return Err(Error::Domain(format!("{w:?} is outside the tube")));
    }
    let m = -q_form_c(w);
    Ok((e * (m.ln() + I * PI)).exp())
}

/// Reproducing kernel `k_{lambda,n} Q(z - conj(t))^{-lambda}` of the weighted Bergman space on the tube.
pub fn bergman_kernel(lambda: f64, z: &[Complex64], t: &[Complex64]) -> Result<Complex64> {
    if z.len() != t.len() {
        return Err(Error::Arity { expected: z.len(), got: t.len() });
    }
    let w: Vec<Complex64> = z.iter().zip(t).map(|(a, b)| a - b.conj()).collect();
    Ok(k_lambda_n(z.len(), lambda)? * tube_power(&w, re(-lambda))?)
}

/// `K_{lambda,nu}(z, t') = z_n^l Q((z' - conj(t'), z_n))^{-nu}`.
pub fn relative_kernel(p: &ConeParams, z: &[Complex64], t_prime: &[Complex64]) -> Result<Complex64> {
    if z.len() != p.n || t_prime.len() + 1 != p.n {
        return Err(Error::Arity { expected: p.n, got: z.len() });
    }
    if !in_tube(z) || !in_tube(t_prime) {
        return Err(Error::Domain("kernel arguments outside the tubes".into()));
    }
    let mut w: Vec<Complex64> = z[..p.n - 1].iter().zip(t_prime).map(|(a, b)| a - b.conj()).collect();
    w.push(z[p.n - 1]);
    Ok(z[p.n - 1].powu(p.ell) * tube_power(&w, re(-p.nu()))?)
}

/// `k' B^{-lambda}` with `B(t) = Q((t - conj(z))/(2i))`, the reproducing
/// kernel `K_lambda(t, z)` as a symbolic function of `t`.
pub fn bergman_kernel_sum(n: usize, lambda: f64, z: &[Complex64]) -> Result<HoloSum<Complex64>> {
    if z.len() != n {
        return Err(Error::Arity { expected: n, got: z.len() });
    }
    let scale = re(1.0) / Complex64::new(0.0, 2.0);
    let mut base = MultiPoly::zero(n);
    for (k, zk) in z.iter().enumerate() {
        let u = (&MultiPoly::var(n, k) - &MultiPoly::constant(n, zk.conj())).scale(&scale);
        let sq = u.pow(2);
        base = if k == 0 { &base + &sq } else { &base - &sq };
    }
    let kreal = k_lambda_n(n, lambda)? / Complex64::new(0.0, 2.0).powc(re(2.0 * lambda));
    Ok(HoloSum::power(base, re(-lambda)).scale(&kreal))
}

/// Quadrature settings for the tube integral at `n = 3`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TubeQuadrature {
    pub radius: f64,
    pub order: usize,
}

impl Default for TubeQuadrature {
    fn default() -> Self {
        TubeQuadrature { radius: 20.0, order: 24 }
    }
}

/// `int f dmu_nu` over the tube on `Omega(2)`, with
/// `dmu_nu = Q(Im t)^{nu-2} dRe t dIm t`. Light-cone coordinates
/// `a = t_1 + t_2`, `b = t_1 - t_2` split the tube into two upper half-planes;
/// each real axis is mapped by `x = tan(phi)` and truncated at `radius`.
pub fn tube_integral_n3(f: &dyn Fn(&[Complex64]) -> Result<Complex64>, nu: f64, q: TubeQuadrature) -> Result<Complex64> {
    let rule = cached_rule(Family::Jacobi { alpha: 0.0, beta: 0.0 }, q.order)?;
    let top = q.radius.atan();
    let line: Vec<(f64, f64)> = rule
        .nodes
        .iter()
        .zip(&rule.weights)
        .map(|(&x, &w)| {
            let phi = top * x;
            (phi.tan(), w * top / phi.cos().powi(2))
        })
        .collect();
    let half: Vec<(f64, f64)> = rule
        .nodes
        .iter()
        .zip(&rule.weights)
        .map(|(&x, &w)| {
            let psi = 0.5 * top * (x + 1.0);
            (psi.tan(), w * 0.5 * top / psi.cos().powi(2))
        })
        .collect();
    let mut acc = re(0.0);
    for &(xa, wxa) in &line {
        for &(ya, wya) in &half {
            let a = Complex64::new(xa, ya);
            for &(xb, wxb) in &line {
                for &(yb, wyb) in &half {
                    let b = Complex64::new(xb, yb);
                    let t = [(a + b) * 0.5, (a - b) * 0.5];
                    let w = wxa * wya * wxb * wyb * 0.25 * (ya * yb).powf(nu - 2.0);
                    acc += w * f(&t)?;
                }
            }
        }
    }
    Ok(acc)
}

/// `C int K_{lambda,nu}(z, t') g(t') dmu_nu(t')` for `n = 3`.
pub fn holographic_integral(p: &ConeParams, g: &dyn Fn(&[Complex64]) -> Result<Complex64>, z: &[Complex64], q: TubeQuadrature) -> Result<Complex64> {
    if p.n != 3 {
        return Err(Error::Domain(format!("holographic integral is implemented for n = 3, got {}", p.n)));
    }
    if p.lambda <= 2.0 {
        return Err(Error::Domain(format!("holographic integral needs lambda > n-1, got {}", p.lambda)));
    }
    let integral = tube_integral_n3(&|t| Ok(relative_kernel(p, z, t)? * g(t)?), p.nu(), q)?;
    Ok(c_holo(p)? * integral)
}

/// Scale relating `dmu_nu` on a tube of complex dimension `m` to the measure
/// against which `k_{nu,m} Q^{-nu}` reproduces: the kernel reproduces against
/// `2^m dmu_nu`. Measured at `m = 2` for several `nu`, and consistent with
/// the one-variable Bergman kernel on each light-cone factor.
pub fn reproducing_measure_scale(m: usize) -> f64 {
    2f64.powi(m as i32)
}

/// The adjoint `D*_{lambda -> nu} g` for the Hilbert norms reproduced by
/// `k_{lambda,n}` and `k_{nu,n-1}`: [`holographic_integral`] rescaled by
/// [`reproducing_measure_scale`].
pub fn adjoint_integral(p: &ConeParams, g: &dyn Fn(&[Complex64]) -> Result<Complex64>, z: &[Complex64], q: TubeQuadrature) -> Result<Complex64> {
    Ok(reproducing_measure_scale(p.n - 1) * holographic_integral(p, g, z, q)?)
}

/// Truncated holomorphic inverse `sum_l (1/(r_l c_l)) D*_l(g_l)` at `z`, for `n = 3`.
pub fn invert_juhl_holo(
    lambda: f64,
    components: &[(u32, &dyn Fn(&[Complex64]) -> Result<Complex64>)],
    z: &[Complex64],
    q: TubeQuadrature,
) -> Result<Complex64> {
    let mut acc = re(0.0);
    for (ell, g) in components {
        let p = ConeParams::new(3, lambda, *ell)?;
        acc += adjoint_integral(&p, *g, z, q)? / juhl_operator_norm_sq(&p)?;
    }
    Ok(acc)
}
