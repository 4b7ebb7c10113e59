//! Verification suites: each expands its grid into independent cases.

use std::collections::BTreeMap;
use std::time::Instant;

use holobreak::juhl::{
    adjoint_integral, base_density, bergman_kernel, bergman_kernel_sum, bernstein_sato_verify, c_holo, c_holo_closed,
    coefficient_ladder, cone_c_ell, cone_density, cone_density_via_m, invert_juhl_l2, juhl_hat_apply, juhl_sbo_apply,
    juhl_symbol, k_lambda_n, ladder_symbol, phi_cone_fibre_norm_sq, q_nl, relative_kernel, ConeParams, JuhlParams,
    JuhlRoute, TubeQuadrature,
};
use holobreak::l2_model::{
    fourier_laplace, fourier_laplace_closed, i_pow, invert_rchat, phi_apply, rchat_apply, rchat_structured, L2Fn1,
    L2Params,
};
use holobreak::quadrature::{integrate_adaptive, Domain};
use holobreak::rc_transform::{
    c_ell, casimir_eigenvalue, casimir_p, ktype_prefactor, ktype_rc_factor, ktype_term, lowest_weight_vector,
    psi_ktype_closed_form, psi_quadrature, rc_apply, rc_test_library, RcInverse, RcParams, RcRoute,
};
use holobreak::special_poly::{gegenbauer_eval, gegenbauer_norm_sq, jacobi_eval, jacobi_norm_sq, jacobi_recurrence_eval};
use holobreak::term_algebra::{max_relative_deviation, sample_points, sl2_action, sl2_action_tensor, SampleDomain, Sl2, SAMPLE_COUNT};
use holobreak::{Complex64, HoloSum, MultiPoly, Qi, Scalar};
use rayon::prelude::*;

use crate::config::{Suite, SuiteConfig, Tier, Value};
use crate::report::{Record, Summary, VerificationReport};
use crate::CliError;

/// Result of one check before it is stamped into a [`Record`].
#[derive(Clone, Debug)]
pub struct Check {
    pub computed: String,
    pub reference: String,
    pub abs: Option<f64>,
    pub rel: Option<f64>,
    pub pass: bool,
}

impl Check {
    fn exact_zero(zero: bool, what: &str) -> Check {
        Check {
            computed: if zero { format!("{what} = 0") } else { format!("{what} != 0") },
            reference: format!("{what} = 0"),
            abs: zero.then_some(0.0),
            rel: zero.then_some(0.0),
            pass: zero,
        }
    }

    fn exact_value<S: Scalar>(computed: &S, reference: &S, extra_ok: bool) -> Check {
        let diff = (computed.clone() - reference.clone()).to_c64().norm();
        let scale = reference.to_c64().norm();
        Check {
            computed: computed.to_sexpr(),
            reference: reference.to_sexpr(),
            abs: Some(diff),
            rel: Some(if scale > 0.0 { diff / scale } else { diff }),
            pass: extra_ok && (computed.clone() - reference.clone()).is_zero(),
        }
    }

    fn complex(computed: Complex64, reference: Complex64, tol: f64) -> Check {
        let abs = (computed - reference).norm();
        let scale = computed.norm().max(reference.norm());
        let rel = if scale > 0.0 { abs / scale } else { 0.0 };
        Check {
            computed: computed.to_string(),
            reference: reference.to_string(),
            abs: Some(abs),
            rel: Some(rel),
            pass: rel <= tol && rel.is_finite(),
        }
    }

    fn real(computed: f64, reference: f64, tol: f64) -> Check {
        Check::complex(Complex64::new(computed, 0.0), Complex64::new(reference, 0.0), tol)
    }

    /// A worst-case relative deviation over several comparisons.
    fn worst(rel: f64, tol: f64, computed: String, reference: String) -> Check {
        Check { computed, reference, abs: None, rel: Some(rel), pass: rel <= tol && rel.is_finite() }
    }
}

type Job = Box<dyn Fn() -> holobreak::Result<Check> + Send + Sync>;

/// One grid point of one identity.
pub struct Case {
    pub identity: &'static str,
    pub params: BTreeMap<String, String>,
    job: Job,
}

fn case(identity: &'static str, params: &[(&str, String)], job: impl Fn() -> holobreak::Result<Check> + Send + Sync + 'static) -> Case {
    Case {
        identity,
        params: params.iter().map(|(k, v)| (k.to_string(), v.clone())).collect(),
        job: Box::new(job),
    }
}

/// Runs every case concurrently and assembles an order-stable report.
pub fn run_suite(cfg: &SuiteConfig) -> Result<VerificationReport, CliError> {
    let cases = build_cases(cfg)?;
    if cases.is_empty() {
        return Err(CliError::Config(format!("empty grid: suite {} has no cases for this configuration", cfg.suite)));
    }
    let start = Instant::now();
    let mut records: Vec<Record> = cases
        .into_par_iter()
        .map(|c| {
            let t = Instant::now();
            let outcome = (c.job)();
            let wall_ms = t.elapsed().as_secs_f64() * 1e3;
            let base = Record {
                suite: cfg.suite.name().to_string(),
                identity: c.identity.to_string(),
                tier: cfg.tier.name().to_string(),
                params: c.params,
                computed: String::new(),
                reference: String::new(),
                abs_residual: None,
                rel_residual: None,
                pass: false,
                error: None,
                wall_ms,
            };
            match outcome {
                Ok(ch) => Record {
                    computed: ch.computed,
                    reference: ch.reference,
                    abs_residual: ch.abs,
                    rel_residual: ch.rel,
                    pass: ch.pass,
                    ..base
                },
                Err(e) => Record { error: Some(e.to_string()), ..base },
            }
        })
        .collect();
    records.sort_by(|a, b| a.identity.cmp(&b.identity));
    let passed = records.iter().filter(|r| r.pass).count();
    let worst = records.iter().filter_map(|r| r.rel_residual).fold(None, |acc: Option<f64>, x| Some(acc.map_or(x, |a| a.max(x))));
    let summary = Summary {
        summary: true,
        suite: cfg.suite.name().to_string(),
        tier: cfg.tier.name().to_string(),
        seed: cfg.seed,
        config: cfg.describe(),
        total: records.len(),
        passed,
        failed: records.len() - passed,
        worst_rel_residual: worst,
        wall_ms: start.elapsed().as_secs_f64() * 1e3,
    };
    Ok(VerificationReport { records, summary })
}

/// Expands the configured grid into cases without running them.
pub fn build_cases(cfg: &SuiteConfig) -> Result<Vec<Case>, CliError> {
    let mut out = Vec::new();
    match cfg.suite {
        Suite::RcIdentities => {
            for (a, b) in pairs(&cfg.lambda1, &cfg.lambda2) {
                for ell in 0..=cfg.ell_max {
                    match cfg.tier {
                        Tier::Exact => rc_identity_cases(&mut out, a.rational()?, b.rational()?, a, b, ell, cfg),
                        Tier::Float => {
                            rc_identity_cases(&mut out, Complex64::new(a.float, 0.0), Complex64::new(b.float, 0.0), a, b, ell, cfg)
                        }
                    }
                }
            }
        }
        Suite::RcPlancherel => {
            for (a, b) in pairs(&cfg.lambda1, &cfg.lambda2) {
                for ell in 0..=cfg.ell_max {
                    rc_plancherel_cases(&mut out, a, b, ell, cfg);
                }
            }
        }
        Suite::L2Plancherel => {
            for (a, b) in pairs(&cfg.lambda1, &cfg.lambda2) {
                for ell in 0..=cfg.ell_max {
                    l2_cases(&mut out, a, b, ell, cfg);
                }
            }
        }
        Suite::BernsteinSato => {
            for &n in &cfg.n {
                for lam in &cfg.lambda {
                    for ell in 0..=cfg.ell_max {
                        match cfg.tier {
                            Tier::Exact => bs_cases(&mut out, n, lam.rational()?, lam, ell, cfg),
                            Tier::Float => bs_cases(&mut out, n, Complex64::new(lam.float, 0.0), lam, ell, cfg),
                        }
                    }
                }
            }
        }
        Suite::JuhlPlancherel => {
            for &n in &cfg.n {
                for lam in &cfg.lambda {
                    for ell in 0..=cfg.ell_max {
                        juhl_l2_cases(&mut out, n, lam, ell, cfg);
                    }
                }
            }
        }
        Suite::Kernels => {
            for &n in &cfg.n {
                for lam in &cfg.lambda {
                    for ell in 0..=cfg.ell_max {
                        kernel_cases(&mut out, n, lam, ell, cfg);
                    }
                }
            }
        }
        Suite::OrthoPoly => ortho_cases(&mut out, cfg),
    }
    Ok(out)
}

fn pairs<'a>(xs: &'a [Value], ys: &'a [Value]) -> Vec<(&'a Value, &'a Value)> {
    xs.iter().flat_map(|x| ys.iter().map(move |y| (x, y))).collect()
}

fn rc_keys(a: &Value, b: &Value, ell: u32) -> Vec<(&'static str, String)> {
    vec![("lambda1", a.text.clone()), ("lambda2", b.text.clone()), ("ell", ell.to_string())]
}

/// Exact comparison in the rational tier, sampled comparison otherwise.
fn compare<S: Scalar>(f: &HoloSum<S>, g: &HoloSum<S>, tier: Tier, seed: u64) -> holobreak::Result<Option<f64>> {
    match tier {
        Tier::Exact => Ok((f - g).is_zero_exact()?.then_some(0.0)),
        Tier::Float => {
            let pts = sample_points(SampleDomain::UpperHalfPlane, f.nvars(), SAMPLE_COUNT, seed);
            Ok(Some(max_relative_deviation(&f.to_c64(), &g.to_c64(), &pts)?))
        }
    }
}

fn gap_check(gaps: Vec<Option<f64>>, tol: f64, what: &str) -> Check {
    let failed = gaps.iter().filter(|g| !matches!(g, Some(x) if *x <= tol)).count();
    let worst = gaps.iter().map(|g| g.unwrap_or(f64::INFINITY)).fold(0.0, f64::max);
    Check {
        computed: format!("{} of {} {what} agree", gaps.len() - failed, gaps.len()),
        reference: format!("{} of {} {what} agree", gaps.len(), gaps.len()),
        abs: None,
        rel: worst.is_finite().then_some(worst),
        pass: failed == 0,
    }
}

fn rc_identity_cases<S: Scalar + Send + Sync + 'static>(out: &mut Vec<Case>, l1: S, l2: S, a: &Value, b: &Value, ell: u32, cfg: &SuiteConfig) {
    let keys = rc_keys(a, b, ell);
    let (tier, seed) = (cfg.tier, cfg.seed);
    let tol = if tier == Tier::Exact { 0.0 } else { cfg.tol };
    let p = RcParams::new(l1.clone(), l2.clone(), ell);
    let library: Vec<HoloSum<S>> = rc_test_library().into_iter().map(|f| convert(&f)).collect();

    let (pp, lib) = (p.clone(), library.clone());
    out.push(case("rc.route-equality", &keys, move || {
        let mut gaps = Vec::new();
        for f in &lib {
            let base = rc_apply(&pp, f, RcRoute::Coefficients)?;
            for route in [RcRoute::Inflated, RcRoute::Variant] {
                gaps.push(compare(&base, &rc_apply(&pp, f, route)?, tier, seed)?);
            }
        }
        Ok(gap_check(gaps, tol, "route pairs"))
    }));

    let (pp, lib) = (p.clone(), library);
    out.push(case("rc.sl2-intertwining", &keys, move || {
        let lambdas = [pp.l1.clone(), pp.l2.clone()];
        let mut gaps = Vec::new();
        for f in &lib {
            let image = rc_apply(&pp, f, RcRoute::Coefficients)?;
            for g in [Sl2::H, Sl2::X, Sl2::Y] {
                let lhs = rc_apply(&pp, &sl2_action_tensor(g, &lambdas, f)?, RcRoute::Coefficients)?;
                gaps.push(compare(&lhs, &sl2_action(g, &pp.l3(), &image)?, tier, seed)?);
            }
        }
        Ok(gap_check(gaps, tol, "generator actions"))
    }));

    let pp = p.clone();
    out.push(case("rc.casimir-ktype", &keys, move || {
        let t = ktype_term(&pp);
        let lhs = casimir_p(&pp.l1, &pp.l2, &t)?;
        let rhs = t.scale(&casimir_eigenvalue(&pp));
        Ok(match tier {
            Tier::Exact => Check::exact_zero(compare(&lhs, &rhs, tier, seed)?.is_some(), "(P - eigenvalue) K-type"),
            Tier::Float => {
                // The eigenvalue vanishes at l = 0, so scale by the term as well.
                let mut worst: f64 = 0.0;
                for pt in sample_points(SampleDomain::UpperHalfPlane, 2, SAMPLE_COUNT, seed) {
                    let (l, r, x) = (lhs.to_c64().evaluate(&pt)?, rhs.to_c64().evaluate(&pt)?, t.to_c64().evaluate(&pt)?);
                    worst = worst.max((l - r).norm() / (l.norm() + r.norm() + x.norm()));
                }
                Check::worst(worst, tol, format!("max deviation {worst:e}"), "P K-type = eigenvalue K-type".into())
            }
        })
    }));

    let pp = p;
    out.push(case("rc.ktype-composition", &keys, move || {
        let expect = lowest_weight_vector(&pp.l3()).scale(&ktype_rc_factor(&pp));
        let mut gaps = Vec::new();
        for route in RcRoute::ALL {
            gaps.push(compare(&rc_apply(&pp, &ktype_term(&pp), route)?, &expect, tier, seed)?);
        }
        Ok(gap_check(gaps, tol, "routes"))
    }));
}

fn convert<S: Scalar>(f: &HoloSum<Qi>) -> HoloSum<S> {
    HoloSum::parse(&f.to_sexpr()).expect("library sums round-trip through text")
}

fn rc_plancherel_cases(out: &mut Vec<Case>, a: &Value, b: &Value, ell: u32, cfg: &SuiteConfig) {
    let keys = rc_keys(a, b, ell);
    let (l1, l2, tol, seed) = (a.float, b.float, cfg.tol, cfg.seed);
    let c = |x: f64| Complex64::new(x, 0.0);

    out.push(case("rc.constant-assembly", &keys, move || {
        let p = RcParams::new(c(l1), c(l2), ell);
        Ok(Check::complex(ktype_prefactor(p.l1, p.l2, ell)? * ktype_rc_factor(&p), c_ell(p.l1, p.l2, ell)?, tol))
    }));

    out.push(case("rc.psi-closed-form", &keys, move || {
        let p = RcParams::new(c(l1), c(l2), ell);
        let closed = psi_ktype_closed_form(&p)?;
        let l3 = p.l3();
        let g = |z: Complex64| Ok((z + Complex64::i()).powc(-l3));
        let mut worst: f64 = 0.0;
        for pt in sample_points(SampleDomain::UpperHalfPlane, 2, SAMPLE_COUNT, seed) {
            let quad = psi_quadrature(l1, l2, ell, &g, pt[0], pt[1], 1e-14)?;
            let cf = closed.evaluate(&pt)?;
            worst = worst.max((quad - cf).norm() / cf.norm());
        }
        Ok(Check::worst(worst, tol, format!("max deviation {worst:e}"), "quadrature = closed form".into()))
    }));

    out.push(case("rc.inversion", &keys, move || {
        let p = RcParams::new(c(l1), c(l2), ell);
        let input = psi_ktype_closed_form(&p)?;
        let inverse = RcInverse::new(l1, l2, vec![(ell, rc_apply(&p, &input, RcRoute::Coefficients)?)])?;
        let mut worst: f64 = 0.0;
        for pt in sample_points(SampleDomain::UpperHalfPlane, 2, 6, seed) {
            let a = inverse.eval(pt[0], pt[1], 1e-14)?;
            let b = input.evaluate(&pt)?;
            worst = worst.max((a - b).norm() / b.norm());
        }
        Ok(Check::worst(worst, tol, format!("max deviation {worst:e}"), "round trip = input".into()))
    }));
}

fn l2_cases(out: &mut Vec<Case>, a: &Value, b: &Value, ell: u32, cfg: &SuiteConfig) {
    let keys = rc_keys(a, b, ell);
    let (l1, l2, tol) = (a.float, b.float, cfg.tol);
    let qtol = 1e-13;

    out.push(case("l2.phi-plancherel", &keys, move || {
        let p = L2Params::new(l1, l2, ell);
        let c = p.c_ell()?;
        let mut worst: f64 = 0.0;
        for h in exponential_family(p.l3()) {
            let ratio = phi_apply(&p, &h)?.norm_sq(qtol)? / h.norm_sq(qtol)?;
            worst = worst.max((ratio - c).abs() / c.abs());
        }
        Ok(Check::worst(worst, tol, format!("max |ratio - c_l| / c_l = {worst:e}"), format!("c_l = {c:e}")))
    }));

    out.push(case("l2.rchat-of-phi", &keys, move || {
        let p = L2Params::new(l1, l2, ell);
        let scale = i_pow(-(ell as i64)) * p.c_ell()?;
        let h = L2Fn1::monomial_exp(p.l3(), Complex64::new(1.0, -0.5), p.l3() + 0.5, 1.25);
        let phi = phi_apply(&p, &h)?;
        let back = rchat_structured(&p, &phi, qtol)?;
        let mut worst: f64 = 0.0;
        for z in [0.2, 0.9, 2.5, 6.0] {
            let expect = h.eval(z) * scale;
            let pointwise = rchat_apply(&p, &|x, y| phi.eval(x, y), (p.alpha(), p.beta()), z, qtol)?;
            worst = worst.max((back.eval(z) - expect).norm() / expect.norm());
            worst = worst.max((pointwise - expect).norm() / expect.norm());
        }
        Ok(Check::worst(worst, tol, format!("max deviation {worst:e}"), "i^-l c_l h".into()))
    }));

    out.push(case("l2.inversion", &keys, move || {
        let p = L2Params::new(l1, l2, ell);
        let g = L2Fn1::monomial_exp(p.l3(), Complex64::new(1.0, 0.5), p.l3(), 1.5);
        let f = invert_rchat(l1, l2, &[(ell, g.clone())])?;
        let back = rchat_structured(&p, &f, qtol)?;
        let worst = [0.3, 1.0, 2.2, 5.0].iter().map(|&z| (back.eval(z) - g.eval(z)).norm() / g.eval(z).norm()).fold(0.0, f64::max);
        Ok(Check::worst(worst, tol, format!("max deviation {worst:e}"), "round trip = input".into()))
    }));

    out.push(case("l2.fourier-laplace", &keys, move || {
        let lambda = L2Params::new(l1, l2, ell).l3();
        let f = L2Fn1::monomial_exp(lambda, Complex64::new(1.0, 0.0), lambda - 1.0, 1.0);
        let mut worst: f64 = 0.0;
        // Real-axis quadrature loses (|1 - i zeta| / (1 + Im zeta))^lambda digits to
        // cancellation, so the points keep that ratio near one.
        for zeta in [Complex64::new(0.5, 0.25), Complex64::new(-1.0, 2.0), Complex64::new(0.0, 0.5)] {
            let a = fourier_laplace(&f, zeta, qtol)?;
            let b = fourier_laplace_closed(&f, zeta)?;
            worst = worst.max((a - b).norm() / b.norm());
        }
        Ok(Check::worst(worst, tol, format!("max deviation {worst:e}"), "quadrature = closed form".into()))
    }));
}

fn exponential_family(lambda: f64) -> Vec<L2Fn1> {
    let mut out = Vec::new();
    for k in 0..3 {
        for s in [1.0, 2.5] {
            out.push(L2Fn1::monomial_exp(lambda, Complex64::new(1.0, 0.0), lambda - 1.0 + k as f64, s));
        }
    }
    out
}

fn poly_gap<S: Scalar>(a: &MultiPoly<S>, b: &MultiPoly<S>) -> f64 {
    let scale = b.terms().map(|(_, c)| c.to_c64().norm()).fold(0.0, f64::max).max(1e-300);
    (a - b).terms().map(|(_, c)| c.to_c64().norm()).fold(0.0, f64::max) / scale
}

fn bs_cases<S: Scalar + Send + Sync + 'static>(out: &mut Vec<Case>, n: usize, lambda: S, v: &Value, ell: u32, cfg: &SuiteConfig) {
    let keys = vec![("n", n.to_string()), ("lambda", v.text.clone()), ("ell", ell.to_string())];
    let (tier, tol) = (cfg.tier, cfg.tol);

    let lam = lambda.clone();
    out.push(case("juhl.bernstein-sato", &keys, move || {
        let bs = bernstein_sato_verify(&JuhlParams::new(n, lam.clone(), ell)?)?;
        let expect = q_nl(n, ell, &lam);
        Ok(match tier {
            Tier::Exact => Check::exact_value(&bs.q0(), &expect, bs.holds()),
            Tier::Float => {
                let d = bs.defect();
                Check { computed: bs.q0().to_c64().to_string(), reference: expect.to_c64().to_string(), abs: None, rel: Some(d), pass: d <= tol }
            }
        })
    }));

    let lam = lambda.clone();
    out.push(case("juhl.symbol-routes", &keys, move || {
        let p = JuhlParams::new(n, lam.clone(), ell)?;
        let a = juhl_symbol(&p, JuhlRoute::Gegenbauer)?;
        let b = juhl_symbol(&p, JuhlRoute::Inflated)?;
        Ok(match tier {
            Tier::Exact => Check::exact_zero(a == b, "Gegenbauer symbol - inflated symbol"),
            Tier::Float => Check::worst(poly_gap(&a, &b), tol, "Gegenbauer symbol".into(), "inflated symbol".into()),
        })
    }));

    out.push(case("juhl.coefficient-ladder", &keys, move || {
        let p = JuhlParams::new(n, lambda.clone(), ell)?;
        let ladder = coefficient_ladder(&p)?;
        let a = ladder_symbol(&p, &ladder);
        let b = juhl_symbol(&p, JuhlRoute::Gegenbauer)?;
        Ok(match tier {
            Tier::Exact => Check::exact_zero(a == b, "ladder symbol - Gegenbauer symbol"),
            Tier::Float => Check::worst(poly_gap(&a, &b), tol, "ladder symbol".into(), "Gegenbauer symbol".into()),
        })
    }));
}

fn base_points(dim: usize) -> Vec<Vec<f64>> {
    (0..8)
        .map(|k| {
            let t = k as f64 / 8.0;
            let y1 = 0.5 + 2.0 * t;
            let r = 0.8 * y1 * (0.5 + 0.5 * (5.0 * t).sin());
            let th = 7.0 * t;
            let mut y = vec![y1, r * th.cos()];
            if dim > 2 {
                y.push(r * th.sin());
            }
            y.truncate(dim);
            y
        })
        .collect()
}

fn juhl_l2_cases(out: &mut Vec<Case>, n: usize, v: &Value, ell: u32, cfg: &SuiteConfig) {
    let keys = vec![("n", n.to_string()), ("lambda", v.text.clone()), ("ell", ell.to_string())];
    let (lambda, tol) = (v.float, cfg.tol);
    let h = |y: &[f64]| Complex64::new((-y[0]).exp(), 0.3 * y[1]);

    out.push(case("juhl.cone-isometry", &keys, move || {
        let p = ConeParams::new(n, lambda, ell)?;
        let c = cone_c_ell(&p)?;
        let mut worst: f64 = 0.0;
        for yp in base_points(n - 1) {
            let ratio = phi_cone_fibre_norm_sq(&p, &h, &yp, 1e-13)? / base_density(&p, &h, &yp)?;
            worst = worst.max((ratio - c).abs() / c.abs());
        }
        Ok(Check::worst(worst, tol, format!("max |ratio - c_l| / c_l = {worst:e}"), format!("c_l = {c:e}")))
    }));

    out.push(case("juhl.gegenbauer-constant", &keys, move || {
        let p = ConeParams::new(n, lambda, ell)?;
        let e = p.fibre_exponent();
        let quad = integrate_adaptive(
            |t| Complex64::new(gegenbauer_eval(ell, Complex64::new(p.alpha(), 0.0), Complex64::new(t, 0.0)).norm_sqr(), 0.0),
            Domain::Jacobi { alpha: e, beta: e },
            1e-14,
        )?;
        Ok(Check::real(cone_c_ell(&p)?, quad.value.re, tol))
    }));

    out.push(case("juhl.cone-density", &keys, move || {
        let p = ConeParams::new(n, lambda, ell)?;
        let mut worst: f64 = 0.0;
        for yp in base_points(n - 1) {
            for v in [-0.7, 0.0, 0.4, 0.95] {
                let a = cone_density(&p, &yp, v)?;
                let b = cone_density_via_m(&p, &yp, v)?;
                worst = worst.max((a - b).abs() / a.abs().max(b.abs()));
            }
        }
        Ok(Check::worst(worst, tol, format!("max deviation {worst:e}"), "pushforward density = M-weighted density".into()))
    }));

    out.push(case("juhl.inversion", &keys, move || {
        let p = ConeParams::new(n, lambda, ell)?;
        let comps: [(u32, &dyn Fn(&[f64]) -> Complex64); 1] = [(ell, &h)];
        let f = |y: &[f64]| invert_juhl_l2(n, lambda, &comps, y).unwrap_or(Complex64::new(f64::NAN, 0.0));
        let mut worst: f64 = 0.0;
        for yp in base_points(n - 1) {
            let back = juhl_hat_apply(&p, &f, p.fibre_exponent(), &yp, 1e-14)?;
            worst = worst.max((back - h(&yp)).norm() / h(&yp).norm());
        }
        Ok(Check::worst(worst, tol, format!("max deviation {worst:e}"), "round trip = input".into()))
    }));
}

fn kernel_cases(out: &mut Vec<Case>, n: usize, v: &Value, ell: u32, cfg: &SuiteConfig) {
    let keys = vec![("n", n.to_string()), ("lambda", v.text.clone()), ("ell", ell.to_string())];
    let (lambda, tol, seed) = (v.float, cfg.tol, cfg.seed);
    let quad = TubeQuadrature { radius: cfg.radius, order: cfg.order };
    let coarse = tol.max(1e-2);
    let c = |x: f64| Complex64::new(x, 0.0);

    out.push(case("kernel.juhl-of-bergman", &keys, move || {
        let p = ConeParams::new(n, lambda, ell)?;
        let jp = JuhlParams::new(n, c(lambda), ell)?;
        let sign = if ell.is_multiple_of(2) { 1.0 } else { -1.0 };
        let factor = k_lambda_n(n, lambda)?.conj() * q_nl(n, ell, &c(lambda)) * sign;
        let mut worst: f64 = 0.0;
        for z in sample_points(SampleDomain::LightConeTube, n, 3, seed) {
            let d = juhl_sbo_apply(&jp, &bergman_kernel_sum(n, lambda, &z)?, JuhlRoute::Gegenbauer)?;
            for t in sample_points(SampleDomain::LightConeTube, n - 1, 3, seed ^ 1) {
                let expect = factor * relative_kernel(&p, &z, &t)?.conj();
                worst = worst.max((d.evaluate(&t)? - expect).norm() / expect.norm());
            }
        }
        Ok(Check::worst(worst, tol.max(1e-10), format!("max deviation {worst:e}"), "(-1)^l conj(k) q conj(K_rel)".into()))
    }));

    out.push(case("kernel.constant-modulus", &keys, move || {
        let p = ConeParams::new(n, lambda, ell)?;
        Ok(Check::real(c_holo(&p)?.norm(), c_holo_closed(&p)?.norm(), tol.max(1e-12)))
    }));

    if n == 3 {
        out.push(case("kernel.holographic-adjoint", &keys, move || {
            let p = ConeParams::new(n, lambda, ell)?;
            let z = [Complex64::new(0.3, 1.2), Complex64::new(-0.1, 0.2), Complex64::new(0.4, 0.3)];
            let w = [Complex64::new(0.2, 1.0), Complex64::new(0.5, 0.3)];
            let g = |s: &[Complex64]| bergman_kernel(p.nu(), s, &w);
            let integral = adjoint_integral(&p, &g, &z, quad)?;
            let jp = JuhlParams::new(n, c(lambda), ell)?;
            let d = juhl_sbo_apply(&jp, &bergman_kernel_sum(n, lambda, &z)?, JuhlRoute::Gegenbauer)?;
            Ok(Check::complex(integral, d.evaluate(&w)?.conj(), coarse))
        }));
    }
}

fn ortho_cases(out: &mut Vec<Case>, cfg: &SuiteConfig) {
    let tol = cfg.tol;
    let c = |x: f64| Complex64::new(x, 0.0);
    for (a, b) in pairs(&cfg.lambda1, &cfg.lambda2) {
        for ell in 0..=cfg.ell_max {
            let keys = vec![("alpha", a.text.clone()), ("beta", b.text.clone()), ("ell", ell.to_string())];
            let (al, be) = (a.float, b.float);
            out.push(case("ortho.jacobi-norm", &keys, move || {
                let quad = integrate_adaptive(|t| c(jacobi_eval(ell, c(al), c(be), c(t)).norm_sqr()), Domain::Jacobi { alpha: al, beta: be }, 1e-14)?;
                Ok(Check::real(quad.value.re, jacobi_norm_sq(ell, al, be)?, tol))
            }));
            out.push(case("ortho.jacobi-recurrence", &keys, move || {
                let mut worst: f64 = 0.0;
                for t in [-0.95, -0.4, 0.0, 0.3, 0.77, 1.0] {
                    let a = jacobi_recurrence_eval(ell, al, be, t);
                    let b = jacobi_eval(ell, c(al), c(be), c(t)).re;
                    let scale = a.abs().max(b.abs());
                    if scale > 0.0 {
                        worst = worst.max((a - b).abs() / scale);
                    }
                }
                Ok(Check::worst(worst, tol, format!("max deviation {worst:e}"), "three-term recurrence = explicit sum".into()))
            }));
        }
    }
    for a in &cfg.lambda {
        for ell in 0..=cfg.ell_max {
            let keys = vec![("alpha", a.text.clone()), ("ell", ell.to_string())];
            let al = a.float;
            out.push(case("ortho.gegenbauer-norm", &keys, move || {
                let quad = integrate_adaptive(
                    |t| c(gegenbauer_eval(ell, c(al), c(t)).norm_sqr()),
                    Domain::Jacobi { alpha: al - 0.5, beta: al - 0.5 },
                    1e-14,
                )?;
                Ok(Check::real(quad.value.re, gegenbauer_norm_sq(ell, al)?, tol))
            }));
        }
    }
}
