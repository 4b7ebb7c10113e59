//! Gaussian quadrature for the Jacobi, generalised Laguerre and Legendre
//! weights, plus adaptive one-dimensional and product-region drivers.
//!
//! Rules come from the Golub-Welsch construction: the symmetric tridiagonal
//! Jacobi matrix of the weight's recurrence is diagonalised by an implicit QL
//! sweep that tracks only the first eigenvector components. Nodes are then
//! polished with Newton steps on the orthonormal recurrence and weights are
//! recomputed from the Christoffel sum.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::special_poly::{beta_real, gamma_real};

/// Weight family of a rule.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Family {
    /// `(1-x)^alpha (1+x)^beta` on `(-1, 1)`.
    Jacobi { alpha: f64, beta: f64 },
    /// `z^gamma e^{-z}` on `(0, inf)`.
    Laguerre { gamma: f64 },
    /// Unit weight on `(a, b)`.
    Legendre { a: f64, b: f64 },
}

/// Nodes and positive weights for one [`Family`].
#[derive(Clone, Debug)]
pub struct QuadratureRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub family: Family,
}

/// Result of an adaptive integration.
#[derive(Clone, Copy, Debug)]
pub struct Estimate {
    pub value: Complex64,
    pub error: f64,
    pub converged: bool,
    /// Rule order or panel count reached.
    pub order: usize,
}

impl QuadratureRule {
    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    /// Weighted node sum `sum_i w_i f(x_i)`.
    pub fn integrate<F: Fn(f64) -> Complex64>(&self, f: F) -> Complex64 {
        self.nodes.iter().zip(&self.weights).map(|(&x, &w)| w * f(x)).sum()
    }

    pub fn integrate_real<F: Fn(f64) -> f64>(&self, f: F) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(&x, &w)| w * f(x)).sum()
    }
}

/// Recurrence data for the monic orthogonal polynomials of a weight:
/// `p_{k+1} = (x - a_k) p_k - b_k p_{k-1}`, together with `mu0 = int w`.
fn recurrence(family: Family, n: usize) -> Result<(Vec<f64>, Vec<f64>, f64)> {
    match family {
        Family::Jacobi { alpha, beta } => {
            if !(alpha > -1.0 && beta > -1.0) {
                return Err(Error::Domain(format!("Jacobi weight needs a,b > -1, got ({alpha}, {beta})")));
            }
            let s = alpha + beta;
            let mut a = Vec::with_capacity(n);
            let mut b = vec![0.0; n];
            for k in 0..n {
                let kf = k as f64;
                if k == 0 {
                    a.push((beta - alpha) / (s + 2.0));
                } else {
                    a.push((beta * beta - alpha * alpha) / ((2.0 * kf + s) * (2.0 * kf + s + 2.0)));
                }
                if k == 1 {
                    b[1] = 4.0 * (1.0 + alpha) * (1.0 + beta) / ((2.0 + s).powi(2) * (3.0 + s));
                } else if k > 1 {
                    let t = 2.0 * kf + s;
                    b[k] = 4.0 * kf * (kf + alpha) * (kf + beta) * (kf + s) / (t * t * (t + 1.0) * (t - 1.0));
                }
            }
            let mu0 = 2f64.powf(s + 1.0) * beta_real(alpha + 1.0, beta + 1.0)?;
            Ok((a, b, mu0))
        }
        Family::Laguerre { gamma } => {
            if gamma <= -1.0 {
                return Err(Error::Domain(format!("Laguerre weight needs gamma > -1, got {gamma}")));
            }
            let a = (0..n).map(|k| 2.0 * k as f64 + gamma + 1.0).collect();
            let b = (0..n).map(|k| k as f64 * (k as f64 + gamma)).collect();
            Ok((a, b, gamma_real(gamma + 1.0)?))
        }
        Family::Legendre { a, b } => {
            if !(a < b) {
                return Err(Error::Domain(format!("Legendre interval needs a < b, got ({a}, {b})")));
            }
            recurrence(Family::Jacobi { alpha: 0.0, beta: 0.0 }, n)
        }
    }
}

/// Implicit QL on a symmetric tridiagonal matrix. `d` is the diagonal,
/// `e[i]` couples rows `i` and `i+1`. On return `d` holds the eigenvalues and
/// `z` the first components of the normalised eigenvectors.
fn tridiagonal_ql(d: &mut [f64], e: &mut [f64], z: &mut [f64]) -> Result<()> {
    let n = d.len();
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 60 {
                return Err(Error::Domain("tridiagonal QL did not converge".into()));
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut deflated = false;
            let mut i = m;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                let zf = z[i + 1];
                z[i + 1] = s * z[i] + c * zf;
                z[i] = c * z[i] - s * zf;
            }
            if deflated {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok(())
}

/// Orthonormal recurrence at `x`: returns `(p_n, p_n', log of the Christoffel sum)`
/// with the first two values sharing an arbitrary positive scale.
fn orthonormal_eval(a: &[f64], b: &[f64], mu0: f64, x: f64) -> (f64, f64, f64) {
    let n = a.len();
    let (mut p0, mut p1) = (0.0, 1.0 / mu0.sqrt());
    let (mut d0, mut d1) = (0.0, 0.0);
    let mut sum = 0.0;
    let mut log_scale = 0.0;
    for k in 0..n {
        sum += p1 * p1;
        let sb_next = if k + 1 < n { b[k + 1].sqrt() } else { 1.0 };
        let sb = b[k].sqrt();
        let p2 = ((x - a[k]) * p1 - sb * p0) / sb_next;
        let d2 = (p1 + (x - a[k]) * d1 - sb * d0) / sb_next;
        p0 = p1;
        p1 = p2;
        d0 = d1;
        d1 = d2;
        let big = p1.abs().max(p0.abs());
        if big > 1e100 {
            p0 /= 1e100;
            p1 /= 1e100;
            d0 /= 1e100;
            d1 /= 1e100;
            sum /= 1e200;
            log_scale += 200.0 * std::f64::consts::LN_10;
        }
    }
    (p1, d1, sum.ln() + log_scale)
}

/// Golub-Welsch rule of the given order.
pub fn build_rule(family: Family, order: usize) -> Result<QuadratureRule> {
    if order == 0 {
        return Err(Error::Domain("quadrature order must be at least 1".into()));
    }
    let (a, b, mu0) = recurrence(family, order)?;
    let mut d = a.clone();
    let mut e: Vec<f64> = (0..order).map(|k| if k + 1 < order { b[k + 1].sqrt() } else { 0.0 }).collect();
    let mut z = vec![0.0; order];
    z[0] = 1.0;
    tridiagonal_ql(&mut d, &mut e, &mut z)?;
    let mut pairs: Vec<(f64, f64)> = d.into_iter().zip(z.into_iter().map(|v| mu0 * v * v)).collect();
    pairs.sort_by(|x, y| x.0.total_cmp(&y.0));
    for pair in pairs.iter_mut() {
        let mut x = pair.0;
        for _ in 0..3 {
            let (p, dp, _) = orthonormal_eval(&a, &b, mu0, x);
            if !(p.is_finite() && dp.is_finite()) || dp == 0.0 {
                break;
            }
            let step = p / dp;
            if step.abs() > 1e-6 * (1.0 + x.abs()) {
                break;
            }
            x -= step;
        }
        let (_, _, log_sum) = orthonormal_eval(&a, &b, mu0, x);
        let w = (-log_sum).exp();
        pair.0 = x;
        if w.is_finite() && w > 0.0 {
            pair.1 = w;
        }
    }
    let (mut nodes, mut weights): (Vec<f64>, Vec<f64>) = pairs.into_iter().unzip();
    if let Family::Legendre { a: lo, b: hi } = family {
        let half = 0.5 * (hi - lo);
        let mid = 0.5 * (hi + lo);
        for x in nodes.iter_mut() {
            *x = mid + half * *x;
        }
        for w in weights.iter_mut() {
            *w *= half;
        }
    }
    Ok(QuadratureRule { nodes, weights, family })
}

type RuleKey = (u8, u64, u64, usize);

fn rule_key(family: Family, order: usize) -> RuleKey {
    match family {
        Family::Jacobi { alpha, beta } => (0, alpha.to_bits(), beta.to_bits(), order),
        Family::Laguerre { gamma } => (1, gamma.to_bits(), 0, order),
        Family::Legendre { a, b } => (2, a.to_bits(), b.to_bits(), order),
    }
}

/// Memoised [`build_rule`]; rules are immutable and shared.
pub fn cached_rule(family: Family, order: usize) -> Result<Arc<QuadratureRule>> {
    static CACHE: OnceLock<Mutex<HashMap<RuleKey, Arc<QuadratureRule>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let key = rule_key(family, order);
    if let Some(r) = cache.lock().expect("rule cache poisoned").get(&key) {
        return Ok(r.clone());
    }
    let rule = Arc::new(build_rule(family, order)?);
    cache.lock().expect("rule cache poisoned").insert(key, rule.clone());
    Ok(rule)
}

/// One-dimensional integration domain for [`integrate_adaptive`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Domain {
    /// `int_a^b f(x) dx`.
    Interval { a: f64, b: f64 },
    /// `int_{-1}^{1} (1-x)^alpha (1+x)^beta f(x) dx`.
    Jacobi { alpha: f64, beta: f64 },
    /// `int_0^inf z^gamma e^{-scale z} f(z) dz`.
    HalfLine { gamma: f64, scale: f64 },
}

const ORDER_START: usize = 8;
const ORDER_BUDGET: usize = 1024;

fn rule_sum<F: Fn(f64) -> Complex64>(f: &F, domain: Domain, order: usize) -> Result<(Complex64, f64)> {
    let (family, map): (Family, Box<dyn Fn(f64, f64) -> (f64, f64)>) = match domain {
        Domain::Interval { a, b } => (Family::Legendre { a, b }, Box::new(|x, w| (x, w))),
        Domain::Jacobi { alpha, beta } => (Family::Jacobi { alpha, beta }, Box::new(|x, w| (x, w))),
        Domain::HalfLine { gamma, scale } => {
            if !(scale > 0.0) {
                return Err(Error::Domain(format!("half-line scale must be positive, got {scale}")));
            }
            let jac = scale.powf(-gamma - 1.0);
            (Family::Laguerre { gamma }, Box::new(move |x, w| (x / scale, w * jac)))
        }
    };
    let rule = cached_rule(family, order)?;
    let mut total = Complex64::new(0.0, 0.0);
    let mut abs_total = 0.0;
    for (&x, &w) in rule.nodes.iter().zip(&rule.weights) {
        let (t, wt) = map(x, w);
        let v = wt * f(t);
        total += v;
        abs_total += v.norm();
    }
    Ok((total, abs_total))
}

fn accept(err: f64, value: Complex64, scale: f64, tol: f64) -> bool {
    err <= tol * value.norm() || err <= 1e-15 * scale
}

/// Gauss rule on `domain`, doubling the order from 8 until two successive
/// estimates differ by less than `tol` (relative), or the budget of 1024 nodes
/// is reached, in which case the last estimate is returned unconverged.
pub fn integrate_adaptive<F: Fn(f64) -> Complex64>(f: F, domain: Domain, tol: f64) -> Result<Estimate> {
    let (mut prev, _) = rule_sum(&f, domain, ORDER_START)?;
    let mut order = ORDER_START;
    loop {
        order *= 2;
        let (cur, scale) = rule_sum(&f, domain, order)?;
        let err = (cur - prev).norm();
        if accept(err, cur, scale, tol) || order >= ORDER_BUDGET {
            return Ok(Estimate { value: cur, error: err, converged: accept(err, cur, scale, tol), order });
        }
        prev = cur;
    }
}

/// One axis of a product region.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Axis {
    Interval { a: f64, b: f64 },
    /// `(start, inf)`, truncated at `start + radius`.
    HalfLine { start: f64, radius: f64 },
}

impl Axis {
    fn bounds(&self) -> (f64, f64) {
        match *self {
            Axis::Interval { a, b } => (a, b),
            Axis::HalfLine { start, radius } => (start, start + radius),
        }
    }
}

/// Default truncation radius for unbounded axes.
pub const DEFAULT_TRUNCATION: f64 = 1.0e3;

const PANEL_ORDER: usize = 12;
const PANEL_BUDGET: usize = 400;
const INITIAL_PANELS: usize = 8;

struct Panel {
    a: f64,
    b: f64,
    value: Complex64,
    error: f64,
}

fn panel_rule(g: &mut dyn FnMut(f64) -> Complex64, a: f64, b: f64, rule: &QuadratureRule) -> Complex64 {
    let half = 0.5 * (b - a);
    let mid = 0.5 * (b + a);
    rule.nodes.iter().zip(&rule.weights).map(|(&x, &w)| w * half * g(mid + half * x)).sum()
}

fn make_panel(g: &mut dyn FnMut(f64) -> Complex64, a: f64, b: f64, rule: &QuadratureRule) -> Panel {
    let whole = panel_rule(g, a, b, rule);
    let m = 0.5 * (a + b);
    let split = panel_rule(g, a, m, rule) + panel_rule(g, m, b, rule);
    Panel { a, b, value: split, error: (split - whole).norm() }
}

/// Globally adaptive panel bisection with a Gauss-Legendre panel rule.
fn adaptive_panels(g: &mut dyn FnMut(f64) -> Complex64, a: f64, b: f64, tol: f64) -> Result<Estimate> {
    let rule = cached_rule(Family::Jacobi { alpha: 0.0, beta: 0.0 }, PANEL_ORDER)?;
    let h = (b - a) / INITIAL_PANELS as f64;
    let mut panels: Vec<Panel> =
        (0..INITIAL_PANELS).map(|k| make_panel(g, a + k as f64 * h, a + (k + 1) as f64 * h, &rule)).collect();
    loop {
        let value: Complex64 = panels.iter().map(|p| p.value).sum();
        let error: f64 = panels.iter().map(|p| p.error).sum();
        let scale: f64 = panels.iter().map(|p| p.value.norm()).sum();
        let converged = accept(error, value, scale, tol);
        if converged || panels.len() >= PANEL_BUDGET {
            return Ok(Estimate { value, error, converged, order: panels.len() });
        }
        let worst = panels
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.error.total_cmp(&y.1.error))
            .map(|(k, _)| k)
            .expect("panels nonempty");
        let p = panels.swap_remove(worst);
        let m = 0.5 * (p.a + p.b);
        panels.push(make_panel(g, p.a, m, &rule));
        panels.push(make_panel(g, m, p.b, &rule));
    }
}

/// Integrates `f` over a product of up to four axes by nested adaptive panel
/// quadrature. Unbounded axes are truncated at their declared radius. The
/// returned error combines the outer estimate with the worst inner relative
/// error.
pub fn integrate_region(f: &dyn Fn(&[f64]) -> Complex64, axes: &[Axis], tol: f64) -> Result<Estimate> {
    if axes.is_empty() || axes.len() > 4 {
        return Err(Error::Domain(format!("region dimension must be 1..=4, got {}", axes.len())));
    }
    let mut point = vec![0.0; axes.len()];
    region_rec(f, axes, 0, &mut point, tol)
}

fn region_rec(f: &dyn Fn(&[f64]) -> Complex64, axes: &[Axis], depth: usize, point: &mut Vec<f64>, tol: f64) -> Result<Estimate> {
    let (a, b) = axes[depth].bounds();
    if depth + 1 == axes.len() {
        let mut g = |x: f64| {
            point[depth] = x;
            f(point)
        };
        return adaptive_panels(&mut g, a, b, tol);
    }
    let mut inner_rel: f64 = 0.0;
    let mut inner_ok = true;
    let mut failure: Option<Error> = None;
    let mut g = |x: f64| {
        point[depth] = x;
        let mut p = point.clone();
        match region_rec(f, axes, depth + 1, &mut p, tol) {
            Ok(est) => {
                inner_ok &= est.converged;
                if est.value.norm() > 0.0 {
                    inner_rel = inner_rel.max(est.error / est.value.norm());
                }
                est.value
            }
            Err(e) => {
                failure.get_or_insert(e);
                Complex64::new(0.0, 0.0)
            }
        }
    };
    let outer = adaptive_panels(&mut g, a, b, tol)?;
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(Estimate {
        value: outer.value,
        error: outer.error + inner_rel * outer.value.norm(),
        converged: outer.converged && inner_ok,
        order: outer.order,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{Qi, Scalar};
    use crate::special_poly::{factorial, jacobi_eval, jacobi_norm_sq, pochhammer};
    use proptest::prelude::*;

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn legendre_small_orders() {
        let r = build_rule(Family::Legendre { a: -1.0, b: 1.0 }, 1).unwrap();
        assert_eq!(r.nodes.len(), 1);
        assert!(r.nodes[0].abs() < 1e-16 && (r.weights[0] - 2.0).abs() < 1e-15);
        let r = build_rule(Family::Jacobi { alpha: 0.0, beta: 0.0 }, 2).unwrap();
        let s = 1.0 / 3f64.sqrt();
        assert!((r.nodes[0] + s).abs() < 1e-15 && (r.nodes[1] - s).abs() < 1e-15);
        assert!((r.weights[0] - 1.0).abs() < 1e-15 && (r.weights[1] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn invalid_parameters() {
        assert!(build_rule(Family::Jacobi { alpha: -1.0, beta: 0.0 }, 4).is_err());
        assert!(build_rule(Family::Laguerre { gamma: -1.5 }, 4).is_err());
        assert!(build_rule(Family::Legendre { a: 1.0, b: 0.0 }, 4).is_err());
        assert!(build_rule(Family::Legendre { a: 0.0, b: 1.0 }, 0).is_err());
    }

    #[test]
    fn jacobi_mass_and_simple_integrals() {
        let r = build_rule(Family::Jacobi { alpha: 1.0, beta: 1.0 }, 6).unwrap();
        assert!((r.integrate(|_| c(1.0)).re - 4.0 / 3.0).abs() < 1e-14);
        for &(a, b) in &[(0.5, 2.5), (-0.5, 0.0), (2.5, -0.7)] {
            let r = build_rule(Family::Jacobi { alpha: a, beta: b }, 10).unwrap();
            let mass: f64 = r.weights.iter().sum();
            let expect = 2f64.powf(a + b + 1.0) * beta_real(a + 1.0, b + 1.0).unwrap();
            assert!((mass - expect).abs() <= 1e-14 * expect);
        }
    }

    #[test]
    fn half_line_constant() {
        // int z^{l-1} e^{-2z} z^{1-l} dz = 1/2
        let lam = 3.5;
        let est = integrate_adaptive(|z: f64| c(z.powf(lam - 1.0) * z.powf(1.0 - lam)), Domain::HalfLine { gamma: 0.0, scale: 2.0 }, 1e-13).unwrap();
        assert!(est.converged && (est.value.re - 0.5).abs() < 1e-14);
    }

    #[test]
    fn orthogonality_under_jacobi_rule() {
        for &(a, b) in &[(0.0, 0.0), (0.5, 2.5), (1.0, 0.5), (2.5, 2.5)] {
            let rule = build_rule(Family::Jacobi { alpha: a, beta: b }, 12).unwrap();
            let ca = c(a);
            let cb = c(b);
            for l in 0..=10u32 {
                for m in 0..=10u32 {
                    let v = rule.integrate(|x| jacobi_eval(l, ca, cb, c(x)) * jacobi_eval(m, ca, cb, c(x))).re;
                    if l == m {
                        let n = jacobi_norm_sq(l, a, b).unwrap();
                        assert!((v - n).abs() <= 1e-12 * n);
                    } else {
                        assert!(v.abs() <= 1e-12, "({a},{b}) l={l} m={m}: {v}");
                    }
                }
            }
        }
    }

    #[test]
    fn unconverged_is_flagged() {
        let est = integrate_adaptive(|x: f64| c((1.0 / (x.abs() + 1e-12)).sqrt().sin() * 1e3), Domain::Interval { a: -1.0, b: 1.0 }, 1e-15).unwrap();
        assert!(!est.converged);
        assert_eq!(est.order, ORDER_BUDGET);
    }

    #[test]
    fn region_product_of_exponentials() {
        // int int e^{-x-y} x^{1-l'} y^{1-l''} x^{l'-1} y^{l''-1} = 1
        let (l1, l2) = (2.5, 3.0);
        let f = |p: &[f64]| c((-p[0] - p[1]).exp() * p[0].powf(1.0 - l1) * p[1].powf(1.0 - l2) * p[0].powf(l1 - 1.0) * p[1].powf(l2 - 1.0));
        let axes = [Axis::HalfLine { start: 0.0, radius: 60.0 }, Axis::HalfLine { start: 0.0, radius: 60.0 }];
        let est = integrate_region(&f, &axes, 1e-10).unwrap();
        assert!(est.converged);
        assert!((est.value.re - 1.0).abs() < 1e-9);
        assert!(integrate_region(&f, &[], 1e-3).is_err());
    }

    #[test]
    fn exactness_on_monomials() {
        let fams = [
            Family::Jacobi { alpha: 0.0, beta: 0.0 },
            Family::Jacobi { alpha: 0.5, beta: -0.5 },
            Family::Jacobi { alpha: 2.5, beta: 1.0 },
            Family::Laguerre { gamma: 0.0 },
            Family::Laguerre { gamma: 1.5 },
            Family::Legendre { a: 0.0, b: 2.0 },
        ];
        for fam in fams {
            for n in [1usize, 3, 8, 15] {
                let r = build_rule(fam, n).unwrap();
                for k in 0..(2 * n) as i32 {
                    let got = r.integrate_real(|t| t.powi(k));
                    let expect = monomial_moment(fam, k);
                    let tol = 1e-13 * expect.abs().max(moment_scale(fam, k));
                    assert!((got - expect).abs() <= tol, "{fam:?} n={n} k={k}: {got} vs {expect}");
                }
            }
        }
    }

    /// Exact moments. For Jacobi weights the ratio to the total mass is the
    /// rational sum `sum_j C(k,j) 2^j (-1)^{k-j} (b+1)_j / (a+b+2)_j`,
    /// accumulated in exact arithmetic so only the final conversion rounds.
    fn monomial_moment(fam: Family, k: i32) -> f64 {
        match fam {
            Family::Jacobi { alpha, beta } => {
                let q = |x: f64| Qi::ratio((x * 2.0).round() as i64, 2);
                let (a, b) = (q(alpha), q(beta));
                let mut s = Qi::int(0);
                for j in 0..=k as u32 {
                    let binom = factorial::<Qi>(k as u32) / (factorial::<Qi>(j) * factorial::<Qi>(k as u32 - j));
                    let sign = if (k as u32 - j).is_multiple_of(2) { Qi::int(1) } else { Qi::int(-1) };
                    s = s + sign * binom * Qi::int(2).powi(j as i64) * pochhammer(&(b.clone() + Qi::int(1)), j)
                        / pochhammer(&(a.clone() + b.clone() + Qi::int(2)), j);
                }
                let mass = 2f64.powf(alpha + beta + 1.0) * beta_real(alpha + 1.0, beta + 1.0).unwrap();
                s.to_c64().re * mass
            }
            Family::Laguerre { gamma } => gamma_real(gamma + k as f64 + 1.0).unwrap(),
            Family::Legendre { a, b } => (b.powi(k + 1) - a.powi(k + 1)) / (k + 1) as f64,
        }
    }

    /// Natural scale for moments that vanish by symmetry.
    fn moment_scale(fam: Family, k: i32) -> f64 {
        match fam {
            Family::Jacobi { alpha, beta } => 2f64.powf(alpha + beta + 1.0) * beta_real(alpha + 1.0, beta + 1.0).unwrap(),
            _ => monomial_moment(fam, k).abs(),
        }
    }

    proptest! {
        #[test]
        fn weights_positive_nodes_increasing(a in -0.95f64..4.0, b in -0.95f64..4.0, n in 1usize..40) {
            let r = build_rule(Family::Jacobi { alpha: a, beta: b }, n).unwrap();
            prop_assert!(r.weights.iter().all(|&w| w > 0.0));
            prop_assert!(r.nodes.windows(2).all(|p| p[0] < p[1]));
            prop_assert!(r.nodes.iter().all(|&x| x > -1.0 && x < 1.0));
            let mass: f64 = r.weights.iter().sum();
            let expect = 2f64.powf(a + b + 1.0) * beta_real(a + 1.0, b + 1.0).unwrap();
            prop_assert!((mass - expect).abs() <= 1e-12 * expect);
        }

        #[test]
        fn laguerre_nodes_positive(g in -0.95f64..5.0, n in 1usize..60) {
            let r = build_rule(Family::Laguerre { gamma: g }, n).unwrap();
            prop_assert!(r.weights.iter().all(|&w| w >= 0.0));
            prop_assert!(r.nodes.windows(2).all(|p| p[0] < p[1]));
            prop_assert!(r.nodes[0] > 0.0);
        }
    }
}
