//! The L2 model on the half-line and the quadrant: the fibration `iota`, the
//! multiplication operator `Phi`, the Jacobi transform form of the
//! symmetry breaking operator, its inversion, weighted norms, and the
//! Fourier-Laplace bridge to the holomorphic model.
//!
//! Functions are finite sums of structured pieces. On the half-line a piece
//! is `c z^p e^{-s z}`. On the quadrant a piece is written in fibre
//! coordinates `(z, v) = iota^{-1}(x, y)` as
//! `c (1-v)^a (1+v)^b J(v) z^p e^{-s z}` with `J` either `1` or a Jacobi
//! polynomial. Inner products of pieces split into one Gauss-Jacobi and one
//! generalized Gauss-Laguerre integral.

use std::cell::RefCell;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::quadrature::{integrate_adaptive, integrate_region, Axis, Domain};
use crate::rc_transform::c_ell;
use crate::special_poly::{gamma, jacobi_eval};

const I: Complex64 = Complex64::new(0.0, 1.0);

fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// `i^k` without rounding.
pub fn i_pow(k: i64) -> Complex64 {
    match k.rem_euclid(4) {
        0 => re(1.0),
        1 => I,
        2 => re(-1.0),
        _ => -I,
    }
}

/// Real parameters `(l1, l2, ell)` of the quadrant model.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct L2Params {
    pub l1: f64,
    pub l2: f64,
    pub ell: u32,
}

impl L2Params {
    pub fn new(l1: f64, l2: f64, ell: u32) -> Self {
        L2Params { l1, l2, ell }
    }

    pub fn l3(&self) -> f64 {
        self.l1 + self.l2 + 2.0 * self.ell as f64
    }

    pub fn alpha(&self) -> f64 {
        self.l1 - 1.0
    }

    pub fn beta(&self) -> f64 {
        self.l2 - 1.0
    }

    pub fn c_ell(&self) -> Result<f64> {
        Ok(c_ell(re(self.l1), re(self.l2), self.ell)?.re)
    }

    fn check(&self) -> Result<()> {
        if self.l1 > 1.0 && self.l2 > 1.0 {
            Ok(())
        } else {
            Err(Error::Domain(format!("L2 model needs l1, l2 > 1, got ({}, {})", self.l1, self.l2)))
        }
    }
}

/// `iota(z, v) = (z(1-v)/2, z(1+v)/2)`.
pub fn iota(z: f64, v: f64) -> (f64, f64) {
    (0.5 * z * (1.0 - v), 0.5 * z * (1.0 + v))
}

pub fn iota_inv(x: f64, y: f64) -> (f64, f64) {
    let z = x + y;
    (z, (y - x) / z)
}

/// `M(z, v) = 2^{a+b} z^{l+1} (1-v)^{-a} (1+v)^{-b}`.
pub fn weight_m(p: &L2Params, z: f64, v: f64) -> Result<f64> {
    let (a, b) = (p.alpha(), p.beta());
    if (v >= 1.0 && a > 0.0) || (v <= -1.0 && b > 0.0) || v.abs() > 1.0 {
        return Err(Error::Domain(format!("M is singular at v = {v}")));
    }
    Ok(2f64.powf(a + b) * z.powi(p.ell as i32 + 1) * (1.0 - v).powf(-a) * (1.0 + v).powf(-b))
}

/// Density of `x^{1-l1} y^{1-l2} dx dy` in fibre coordinates, computed by
/// the chain rule.
pub fn quadrant_density(p: &L2Params, z: f64, v: f64) -> f64 {
    let (x, y) = iota(z, v);
    x.powf(1.0 - p.l1) * y.powf(1.0 - p.l2) * 0.5 * z
}

/// The same density as `2^{-a-b-1} M^2 z^{1-l3} (1-v)^a (1+v)^b`.
pub fn quadrant_density_via_m(p: &L2Params, z: f64, v: f64) -> Result<f64> {
    let (a, b) = (p.alpha(), p.beta());
    let m = weight_m(p, z, v)?;
    Ok(2f64.powf(-a - b - 1.0) * m * m * z.powf(1.0 - p.l3()) * (1.0 - v).powf(a) * (1.0 + v).powf(b))
}

/// Piece `c z^p e^{-s z}` of a half-line function.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Piece1 {
    pub coeff: Complex64,
    pub p: f64,
    pub s: f64,
}

/// Element of `L2(R_+, z^{1-lambda} dz)` given as a sum of [`Piece1`].
#[derive(Clone, Debug, PartialEq)]
pub struct L2Fn1 {
    pub lambda: f64,
    pub pieces: Vec<Piece1>,
}

impl L2Fn1 {
    pub fn zero(lambda: f64) -> Self {
        L2Fn1 { lambda, pieces: Vec::new() }
    }

    /// `c z^p e^{-s z}`.
    pub fn monomial_exp(lambda: f64, coeff: Complex64, p: f64, s: f64) -> Self {
        L2Fn1 { lambda, pieces: vec![Piece1 { coeff, p, s }] }
    }

    pub fn eval(&self, z: f64) -> Complex64 {
        self.pieces.iter().map(|q| q.coeff * z.powf(q.p) * (-q.s * z).exp()).sum()
    }

    pub fn scale(&self, c: Complex64) -> Self {
        let pieces = self.pieces.iter().map(|q| Piece1 { coeff: q.coeff * c, ..*q }).collect();
        L2Fn1 { lambda: self.lambda, pieces }
    }

    /// `<f, g> = int f conj(g) z^{1-lambda} dz`, pairwise by Gauss-Laguerre.
    pub fn inner(&self, other: &L2Fn1, tol: f64) -> Result<Complex64> {
        same_weight(self.lambda, other.lambda)?;
        let mut acc = re(0.0);
        for a in &self.pieces {
            for b in &other.pieces {
                let gamma = a.p + b.p + 1.0 - self.lambda;
                let est = integrate_adaptive(|_| re(1.0), Domain::HalfLine { gamma, scale: a.s + b.s }, tol)?;
                acc += a.coeff * b.coeff.conj() * est.value;
            }
        }
        Ok(acc)
    }

    pub fn norm_sq(&self, tol: f64) -> Result<f64> {
        Ok(self.inner(self, tol)?.re)
    }
}

fn same_weight(a: f64, b: f64) -> Result<()> {
    if (a - b).abs() <= 1e-12 * a.abs().max(1.0) {
        Ok(())
    } else {
        Err(Error::Domain(format!("weights differ: {a} vs {b}")))
    }
}

/// Jacobi factor `P_l^{a,b}(v)` of a quadrant piece.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct JacobiFactor {
    pub ell: u32,
    pub alpha: f64,
    pub beta: f64,
}

impl JacobiFactor {
    fn eval(&self, v: f64) -> Complex64 {
        jacobi_eval(self.ell, re(self.alpha), re(self.beta), re(v))
    }
}

/// Piece `c (1-v)^a (1+v)^b J(v) z^p e^{-s z}` in fibre coordinates.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Piece2 {
    pub coeff: Complex64,
    pub a: f64,
    pub b: f64,
    pub jacobi: Option<JacobiFactor>,
    pub p: f64,
    pub s: f64,
}

impl Piece2 {
    fn fibre_smooth(&self, v: f64) -> Complex64 {
        self.jacobi.map_or(re(1.0), |j| j.eval(v))
    }

    fn eval_zv(&self, z: f64, v: f64) -> Complex64 {
        self.coeff * (1.0 - v).powf(self.a) * (1.0 + v).powf(self.b) * self.fibre_smooth(v) * z.powf(self.p) * (-self.s * z).exp()
    }
}

/// Element of `L2(R_+^2, x^{1-l1} y^{1-l2} dx dy)` given as a sum of [`Piece2`].
#[derive(Clone, Debug, PartialEq)]
pub struct L2Fn2 {
    pub l1: f64,
    pub l2: f64,
    pub pieces: Vec<Piece2>,
}

impl L2Fn2 {
    pub fn zero(l1: f64, l2: f64) -> Self {
        L2Fn2 { l1, l2, pieces: Vec::new() }
    }

    /// `c e^{-s(x+y)}`.
    pub fn exp_sum(l1: f64, l2: f64, coeff: Complex64, s: f64) -> Self {
        L2Fn2 { l1, l2, pieces: vec![Piece2 { coeff, a: 0.0, b: 0.0, jacobi: None, p: 0.0, s }] }
    }

    pub fn eval_zv(&self, z: f64, v: f64) -> Complex64 {
        self.pieces.iter().map(|q| q.eval_zv(z, v)).sum()
    }

    pub fn eval(&self, x: f64, y: f64) -> Complex64 {
        let (z, v) = iota_inv(x, y);
        self.eval_zv(z, v)
    }

    pub fn scale(&self, c: Complex64) -> Self {
        let pieces = self.pieces.iter().map(|q| Piece2 { coeff: q.coeff * c, ..*q }).collect();
        L2Fn2 { l1: self.l1, l2: self.l2, pieces }
    }

    pub fn add(&self, other: &L2Fn2) -> Result<Self> {
        same_weight(self.l1, other.l1)?;
        same_weight(self.l2, other.l2)?;
        let mut pieces = self.pieces.clone();
        pieces.extend_from_slice(&other.pieces);
        Ok(L2Fn2 { l1: self.l1, l2: self.l2, pieces })
    }

    pub fn sub(&self, other: &L2Fn2) -> Result<Self> {
        self.add(&other.scale(re(-1.0)))
    }

    /// `<F, G>` against `x^{1-l1} y^{1-l2} dx dy`, evaluated in fibre
    /// coordinates as `2^{l1+l2-3} int int F conj(G) z^{3-l1-l2} (1-v)^{1-l1} (1+v)^{1-l2} dz dv`.
    pub fn inner(&self, other: &L2Fn2, tol: f64) -> Result<Complex64> {
        same_weight(self.l1, other.l1)?;
        same_weight(self.l2, other.l2)?;
        let (al, be) = (self.l1 - 1.0, self.l2 - 1.0);
        let mut acc = re(0.0);
        for a in &self.pieces {
            for b in &other.pieces {
                let fa = a.a + b.a - al;
                let fb = a.b + b.b - be;
                let fibre = integrate_adaptive(
                    |v| a.fibre_smooth(v) * b.fibre_smooth(v).conj(),
                    Domain::Jacobi { alpha: fa, beta: fb },
                    tol,
                )?;
                let gamma = a.p + b.p + 3.0 - self.l1 - self.l2;
                let radial = integrate_adaptive(|_| re(1.0), Domain::HalfLine { gamma, scale: a.s + b.s }, tol)?;
                acc += a.coeff * b.coeff.conj() * fibre.value * radial.value;
            }
        }
        Ok(acc * 2f64.powf(self.l1 + self.l2 - 3.0))
    }

    pub fn norm_sq(&self, tol: f64) -> Result<f64> {
        Ok(self.inner(self, tol)?.re)
    }
}

/// `(Phi h)(x,y) = x^{l1-1} y^{l2-1} (x+y)^{-(l1+l2+l-1)} P_l^{l1-1,l2-1}((y-x)/(x+y)) h(x+y)`,
/// stored in fibre coordinates as `M(z,v)^{-1} P_l(v) h(z)`.
pub fn phi_apply(p: &L2Params, h: &L2Fn1) -> Result<L2Fn2> {
    p.check()?;
    same_weight(h.lambda, p.l3())?;
    let (a, b) = (p.alpha(), p.beta());
    let jac = JacobiFactor { ell: p.ell, alpha: a, beta: b };
    let pre = 2f64.powf(-a - b);
    let pieces = h
        .pieces
        .iter()
        .map(|q| Piece2 { coeff: q.coeff * pre, a, b, jacobi: Some(jac), p: q.p - p.ell as f64 - 1.0, s: q.s })
        .collect();
    Ok(L2Fn2 { l1: p.l1, l2: p.l2, pieces })
}

/// Direct evaluation of `Phi h` in the quadrant coordinates.
pub fn phi_pointwise(p: &L2Params, h: &dyn Fn(f64) -> Complex64, x: f64, y: f64) -> Complex64 {
    let s = x + y;
    let t = (y - x) / s;
    let jac = jacobi_eval(p.ell, re(p.alpha()), re(p.beta()), re(t));
    x.powf(p.alpha()) * y.powf(p.beta()) * s.powf(-(p.l1 + p.l2 + p.ell as f64 - 1.0)) * jac * h(s)
}

/// `(RC^ F)(z) = z^{l+1}/(2 i^l) int_{-1}^{1} P_l(v) F(iota(z,v)) dv`, for
/// a pointwise `F` of the form `(1-v)^a (1+v)^b * smooth`. The declared
/// fibre exponents `(a, b)` select the Gauss-Jacobi rule; pass `(0, 0)` for a
/// smooth integrand.
pub fn rchat_apply(
    p: &L2Params,
    f: &dyn Fn(f64, f64) -> Complex64,
    fibre: (f64, f64),
    z: f64,
    tol: f64,
) -> Result<Complex64> {
    let (fa, fb) = fibre;
    let (a, b) = (p.alpha(), p.beta());
    let est = integrate_adaptive(
        |v| {
            let (x, y) = iota(z, v);
            let strip = (1.0 - v).powf(-fa) * (1.0 + v).powf(-fb);
            jacobi_eval(p.ell, re(a), re(b), re(v)) * f(x, y) * strip
        },
        Domain::Jacobi { alpha: fa, beta: fb },
        tol,
    )?;
    if !est.converged {
        return Err(Error::Domain(format!("fibre integral unconverged at z = {z}")));
    }
    Ok(z.powi(p.ell as i32 + 1) / (2.0 * i_pow(p.ell as i64)) * est.value)
}

/// `RC^ F` of a structured function, returned in structured form.
pub fn rchat_structured(p: &L2Params, f: &L2Fn2, tol: f64) -> Result<L2Fn1> {
    p.check()?;
    same_weight(f.l1, p.l1)?;
    same_weight(f.l2, p.l2)?;
    let (a, b) = (p.alpha(), p.beta());
    let pre = 0.5 / i_pow(p.ell as i64);
    let mut out = L2Fn1::zero(p.l3());
    for q in &f.pieces {
        let fibre = integrate_adaptive(
            |v| jacobi_eval(p.ell, re(a), re(b), re(v)) * q.fibre_smooth(v),
            Domain::Jacobi { alpha: q.a, beta: q.b },
            tol,
        )?;
        out.pieces.push(Piece1 { coeff: pre * q.coeff * fibre.value, p: q.p + p.ell as f64 + 1.0, s: q.s });
    }
    Ok(out)
}

/// `F_L = sum_l (i^l / c_l) Phi_l(G_l)` over the supplied components.
pub fn invert_rchat(l1: f64, l2: f64, components: &[(u32, L2Fn1)]) -> Result<L2Fn2> {
    let mut out = L2Fn2::zero(l1, l2);
    for (ell, g) in components {
        let p = L2Params::new(l1, l2, *ell);
        let phi = phi_apply(&p, g)?;
        out = out.add(&phi.scale(i_pow(*ell as i64) / p.c_ell()?))?;
    }
    Ok(out)
}

/// `int_0^inf F(z) e^{i zeta z} dz` by generalized Gauss-Laguerre on each piece.
pub fn fourier_laplace(f: &L2Fn1, zeta: Complex64, tol: f64) -> Result<Complex64> {
    if zeta.im <= 0.0 {
        return Err(Error::Domain(format!("zeta must lie in the upper half-plane, got {zeta}")));
    }
    let mut acc = re(0.0);
    for q in &f.pieces {
        let est = integrate_adaptive(|z| (I * zeta * z).exp(), Domain::HalfLine { gamma: q.p, scale: q.s }, tol)?;
        acc += q.coeff * est.value;
    }
    Ok(acc)
}

/// Closed form `sum c Gamma(p+1) (s - i zeta)^{-p-1}` of [`fourier_laplace`].
pub fn fourier_laplace_closed(f: &L2Fn1, zeta: Complex64) -> Result<Complex64> {
    let mut acc = re(0.0);
    for q in &f.pieces {
        acc += q.coeff * gamma(re(q.p + 1.0))? * (q.s - I * zeta).powc(re(-q.p - 1.0));
    }
    Ok(acc)
}

/// Weighted Bergman norm `int int |G(x+iy)|^2 y^{lambda-2} dx dy` over the
/// truncated half-plane `|x| < radius`, `0 < y < radius`.
pub fn bergman_norm_sq(g: &dyn Fn(Complex64) -> Result<Complex64>, lambda: f64, radius: f64, tol: f64) -> Result<f64> {
    let failure = RefCell::new(None);
    let f = |pt: &[f64]| -> Complex64 {
        match g(Complex64::new(pt[1], pt[0])) {
            Ok(v) => re(v.norm_sqr() * pt[0].powf(lambda - 2.0)),
            Err(e) => {
                failure.borrow_mut().get_or_insert(e);
                re(0.0)
            }
        }
    };
    let est = integrate_region(
        &f,
        &[Axis::HalfLine { start: 0.0, radius }, Axis::Interval { a: -radius, b: radius }],
        tol,
    )?;
    if let Some(e) = failure.into_inner() {
        return Err(e);
    }
    Ok(est.value.re)
}
