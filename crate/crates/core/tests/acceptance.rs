//! Acceptance suite: one PASS/FAIL line per criterion, with the worst
//! residual observed and the wall time against its budget.

use std::time::Instant;

use holobreak::juhl::{
    bernstein_sato_verify, cone_c_ell, fibre_residuals, invert_juhl_l2, juhl_hat_apply, phi_cone_apply, base_density,
    phi_cone_fibre_norm_sq, q_nl, ConeParams, JuhlParams,
};
use holobreak::l2_model::{
    bergman_norm_sq, fourier_laplace, fourier_laplace_closed, invert_rchat, phi_apply, rchat_apply, rchat_structured, L2Fn1,
    L2Fn2, L2Params,
};
use holobreak::quadrature::{integrate_adaptive, Domain};
use holobreak::rc_transform::{
    b_const, c_ell, casimir_eigenvalue, casimir_p, ktype_prefactor, ktype_rc_factor, ktype_term, lowest_weight_vector,
    psi_ktype_closed_form, psi_quadrature, rc_apply, rc_test_library, zero_classification, RcInverse, RcParams, RcRoute,
};
use holobreak::special_poly::{gegenbauer_eval, gegenbauer_norm_sq, jacobi_eval, jacobi_norm_sq};
use holobreak::term_algebra::{equal, max_relative_deviation, sample_points, sl2_action, Equality, SampleDomain, Sl2, DEFAULT_SEED, SAMPLE_COUNT};
use holobreak::{Complex64, HoloSum, Qi, Result};

struct Outcome {
    pass: bool,
    detail: String,
}

fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn q(p: i64, d: i64) -> Qi {
    Qi::ratio(p, d)
}

fn run(id: u32, name: &str, limit: f64, body: impl FnOnce() -> Result<Outcome>) -> bool {
    let start = Instant::now();
    let out = body();
    let secs = start.elapsed().as_secs_f64();
    let (ok, detail) = match out {
        Ok(o) => (o.pass && secs < limit, o.detail),
        Err(e) => (false, format!("error: {e}")),
    };
    println!("{} {id:>2} {name}: {detail} [{secs:.2} s of {limit} s]", if ok { "PASS" } else { "FAIL" });
    ok
}

fn rel(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        (a - b).abs() / a.abs().max(b.abs())
    }
}

fn orthogonal_norms() -> Result<Outcome> {
    let grid = [0.0, 0.5, 1.0, 2.5];
    let mut worst: f64 = 0.0;
    for &a in &grid {
        for &b in &grid {
            for ell in 0..=10 {
                let quad = integrate_adaptive(
                    |x| re(jacobi_eval(ell, re(a), re(b), re(x)).norm_sqr()),
                    Domain::Jacobi { alpha: a, beta: b },
                    1e-14,
                )?;
                worst = worst.max(rel(quad.value.re, jacobi_norm_sq(ell, a, b)?));
            }
        }
        for ell in 0..=10 {
            let quad = integrate_adaptive(
                |x| re(gegenbauer_eval(ell, re(a), re(x)).norm_sqr()),
                Domain::Jacobi { alpha: a - 0.5, beta: a - 0.5 },
                1e-14,
            )?;
            worst = worst.max(rel(quad.value.re, gegenbauer_norm_sq(ell, a)?));
        }
    }
    Ok(Outcome { pass: worst <= 1e-10, detail: format!("worst relative error {worst:.2e}") })
}

fn rc_equivalence() -> Result<Outcome> {
    let library = rc_test_library();
    let pairs = [(Qi::int(2), Qi::int(2)), (q(5, 2), q(7, 3))];
    let mut checks = 0;
    let mut failures = Vec::new();
    for (l1, l2) in &pairs {
        for ell in 0..=6 {
            let p = RcParams::new(l1.clone(), l2.clone(), ell);
            for (k, f) in library.iter().enumerate() {
                let base = rc_apply(&p, f, RcRoute::Coefficients)?;
                for route in [RcRoute::Inflated, RcRoute::Variant] {
                    checks += 1;
                    if !equal(&base, &rc_apply(&p, f, route)?, Equality::Exact)? {
                        failures.push(format!("{route:?} l={ell} f{k}"));
                    }
                }
                for g in [Sl2::H, Sl2::X, Sl2::Y] {
                    checks += 1;
                    let lhs = rc_apply(&p, &holobreak::term_algebra::sl2_action_tensor(g, &[l1.clone(), l2.clone()], f)?, RcRoute::Coefficients)?;
                    let rhs = sl2_action(g, &p.l3(), &base)?;
                    if !equal(&lhs, &rhs, Equality::Exact)? {
                        failures.push(format!("{g:?} l={ell} f{k}"));
                    }
                }
            }
        }
    }
    Ok(Outcome {
        pass: failures.is_empty(),
        detail: format!("{checks} exact checks over {} functions, {} failed {:?}", library.len(), failures.len(), failures),
    })
}

fn casimir() -> Result<Outcome> {
    let pairs = [(Qi::int(2), Qi::int(2)), (q(5, 2), Qi::int(3)), (q(7, 3), q(5, 4)), (Qi::int(4), q(3, 2)), (q(-1, 2), q(11, 5))];
    let mut failures = 0;
    let mut checks = 0;
    for (l1, l2) in &pairs {
        for ell in 0..=6 {
            let p = RcParams::new(l1.clone(), l2.clone(), ell);
            let t = ktype_term(&p);
            let lhs = &casimir_p(l1, l2, &t)? - &t.scale(&casimir_eigenvalue(&p));
            checks += 1;
            if !lhs.is_zero_exact()? {
                failures += 1;
            }
        }
    }
    Ok(Outcome { pass: failures == 0, detail: format!("{checks} exact checks, {failures} failed") })
}

fn composition() -> Result<Outcome> {
    let mut exact_fail = 0;
    let mut exact_checks = 0;
    for (l1, l2) in [(Qi::int(2), Qi::int(2)), (q(5, 2), Qi::int(3)), (q(7, 3), q(5, 4))] {
        for ell in 0..=4 {
            let p = RcParams::new(l1.clone(), l2.clone(), ell);
            let expect = lowest_weight_vector(&p.l3()).scale(&ktype_rc_factor(&p));
            for route in RcRoute::ALL {
                exact_checks += 1;
                if !equal(&rc_apply(&p, &ktype_term(&p), route)?, &expect, Equality::Exact)? {
                    exact_fail += 1;
                }
            }
        }
    }
    let mut worst_const: f64 = 0.0;
    let mut worst_psi: f64 = 0.0;
    let pts = sample_points(SampleDomain::UpperHalfPlane, 2, SAMPLE_COUNT, DEFAULT_SEED);
    for (l1, l2) in [(2.0, 2.0), (2.5, 3.0), (4.0, 1.5)] {
        for ell in 0..=4 {
            let p = RcParams::new(re(l1), re(l2), ell);
            let c = c_ell(p.l1, p.l2, ell)?;
            let assembled = ktype_prefactor(p.l1, p.l2, ell)? * ktype_rc_factor(&p);
            worst_const = worst_const.max((assembled - c).norm() / c.norm());
            let closed = psi_ktype_closed_form(&p)?;
            let l3 = p.l3().re;
            let g = |z: Complex64| Ok((z + Complex64::i()).powc(re(-l3)));
            for pt in &pts {
                let quad = psi_quadrature(l1, l2, ell, &g, pt[0], pt[1], 1e-14)?;
                let cf = closed.evaluate(pt)?;
                worst_psi = worst_psi.max((quad - cf).norm() / cf.norm());
            }
        }
    }
    Ok(Outcome {
        pass: exact_fail == 0 && worst_const < 1e-12 && worst_psi < 1e-9,
        detail: format!(
            "{exact_checks} exact compositions ({exact_fail} failed); B/l! x (l1+l2+l-1)_l vs c_l {worst_const:.1e}; Psi quadrature vs closed form {worst_psi:.1e} at {} points",
            pts.len()
        ),
    })
}

fn bernstein_sato() -> Result<Outcome> {
    let lambdas = [(3, [q(5, 2), q(7, 2), q(10, 3)]), (4, [q(7, 2), q(9, 2), q(13, 3)]), (5, [q(9, 2), q(11, 2), q(17, 3)])];
    let mut checks = 0;
    let mut failures = Vec::new();
    for (n, ls) in &lambdas {
        for lam in ls {
            for ell in 0..=6 {
                let p = JuhlParams::new(*n, lam.clone(), ell)?;
                let bs = bernstein_sato_verify(&p)?;
                checks += 1;
                if !(bs.holds() && bs.q0() == q_nl(*n, ell, lam)) {
                    failures.push(format!("n={n} l={ell} lambda={lam}"));
                }
            }
        }
    }
    Ok(Outcome { pass: failures.is_empty(), detail: format!("{checks} exact expansions, {} failed {:?}", failures.len(), failures) })
}

fn exponential_family(lambda: f64) -> Vec<L2Fn1> {
    let mut out = Vec::new();
    for k in 0..3 {
        for s in [1.0, 2.5] {
            out.push(L2Fn1::monomial_exp(lambda, re(1.0), lambda - 1.0 + k as f64, s));
        }
    }
    let mut mixed = L2Fn1::monomial_exp(lambda, Complex64::new(0.5, -1.0), lambda, 1.0);
    mixed.pieces.extend(L2Fn1::monomial_exp(lambda, Complex64::new(2.0, 0.25), lambda + 1.5, 3.0).pieces);
    out.push(mixed);
    out
}

fn l2_plancherel() -> Result<Outcome> {
    let tol = 1e-13;
    let mut worst_single: f64 = 0.0;
    let mut worst_mixed: f64 = 0.0;
    for (l1, l2) in [(2.0, 2.0), (2.5, 3.0), (4.0, 2.0)] {
        let mut mixed = L2Fn2::zero(l1, l2);
        let mut expect_mixed = 0.0;
        let mut components = Vec::new();
        for ell in 0..=4 {
            let p = L2Params::new(l1, l2, ell);
            let c = p.c_ell()?;
            let family = exponential_family(p.l3());
            for h in &family {
                let ratio = phi_apply(&p, h)?.norm_sq(tol)? / h.norm_sq(tol)?;
                worst_single = worst_single.max(rel(ratio, c));
            }
            let h = &family[ell as usize % family.len()];
            mixed = mixed.add(&phi_apply(&p, h)?)?;
            expect_mixed += c * h.norm_sq(tol)?;
            components.push(p);
        }
        let total = mixed.norm_sq(tol)?;
        worst_mixed = worst_mixed.max(rel(total, expect_mixed));
        let mut via_transform = 0.0;
        for p in &components {
            via_transform += rchat_structured(p, &mixed, tol)?.norm_sq(tol)? / p.c_ell()?;
        }
        worst_mixed = worst_mixed.max(rel(total, via_transform));
    }
    Ok(Outcome {
        pass: worst_single < 1e-7 && worst_mixed < 1e-6,
        detail: format!("single-component ratio vs c_l {worst_single:.1e}; mixed Plancherel sums {worst_mixed:.1e}"),
    })
}

fn cone_points(dim: usize) -> Vec<Vec<f64>> {
    let mut out = Vec::new();
    for k in 0..20 {
        let t = k as f64 / 20.0;
        let y1 = 0.4 + 2.5 * t;
        let r = 0.9 * y1 * ((7.0 * t).sin() * 0.5 + 0.5);
        let th = 11.0 * t;
        let mut y = vec![y1, r * th.cos()];
        if dim == 3 {
            y.push(r * th.sin());
        }
        out.push(y);
    }
    out
}

fn cone_isometry() -> Result<Outcome> {
    let mut worst: f64 = 0.0;
    let mut worst_closed: f64 = 0.0;
    for n in [3, 4] {
        let lambda = n as f64 + 0.5;
        let h = |y: &[f64]| Complex64::new((-y[0]).exp(), 0.3 * y[1]);
        for ell in 0..=4 {
            let p = ConeParams::new(n, lambda, ell)?;
            let c = cone_c_ell(&p)?;
            let quad = integrate_adaptive(
                |v| re(gegenbauer_eval(ell, re(p.alpha()), re(v)).norm_sqr()),
                Domain::Jacobi { alpha: p.fibre_exponent(), beta: p.fibre_exponent() },
                1e-14,
            )?;
            worst_closed = worst_closed.max(rel(quad.value.re, c));
            for yp in cone_points(n - 1) {
                let ratio = phi_cone_fibre_norm_sq(&p, &h, &yp, 1e-13)? / base_density(&p, &h, &yp)?;
                worst = worst.max(rel(ratio, c));
            }
        }
    }
    Ok(Outcome {
        pass: worst < 1e-7 && worst_closed < 1e-10,
        detail: format!("fibre norm ratio vs c_l(lambda) {worst:.1e} at 20 base points; closed form vs quadrature {worst_closed:.1e}"),
    })
}

fn fourier_laplace_isometry() -> Result<Outcome> {
    let mut worst: f64 = 0.0;
    let mut worst_doubling: f64 = 0.0;
    let mut worst_pointwise: f64 = 0.0;
    let mut report = Vec::new();
    for lambda in [3.0, 4.0] {
        let f = L2Fn1::monomial_exp(lambda, re(1.0), lambda - 1.0, 1.0);
        for zeta in [Complex64::new(0.5, 0.25), Complex64::new(-3.0, 2.0), Complex64::new(10.0, 0.05)] {
            let a = fourier_laplace(&f, zeta, 1e-13)?;
            let b = fourier_laplace_closed(&f, zeta)?;
            worst_pointwise = worst_pointwise.max((a - b).norm() / b.norm());
        }
        let g = |z: Complex64| fourier_laplace_closed(&f, z);
        let norm = f.norm_sq(1e-14)?;
        let r1 = bergman_norm_sq(&g, lambda, 500.0, 1e-9)? / norm;
        let r2 = bergman_norm_sq(&g, lambda, 1000.0, 1e-9)? / norm;
        let b = b_const(re(lambda))?.re;
        worst = worst.max(rel(r2, b));
        worst_doubling = worst_doubling.max(rel(r1, r2));
        report.push(format!("lambda={lambda}: {r2:.6} vs b={b:.6}"));
    }
    Ok(Outcome {
        pass: worst < 1e-3 && worst_doubling < 1e-3 && worst_pointwise < 1e-9,
        detail: format!(
            "{}; ratio error {worst:.1e}, truncation doubling {worst_doubling:.1e}, transform vs closed form {worst_pointwise:.1e}",
            report.join(", ")
        ),
    })
}

fn strictly_decreasing(v: &[f64]) -> bool {
    v.windows(2).all(|w| w[1] < w[0])
}

fn inversion() -> Result<Outcome> {
    let mut notes = Vec::new();
    let mut pass = true;

    // Holomorphic Rankin-Cohen model.
    let pts = sample_points(SampleDomain::UpperHalfPlane, 2, 6, DEFAULT_SEED);
    let mut worst_holo: f64 = 0.0;
    let mut leak = 0;
    for ell in 0..=3 {
        let p = RcParams::new(re(2.5), re(3.0), ell);
        let input = psi_ktype_closed_form(&p)?;
        for other in 0..=3 {
            if other != ell {
                let po = RcParams::new(re(2.5), re(3.0), other);
                let g = rc_apply(&po, &input, RcRoute::Coefficients)?;
                if max_relative_deviation(&g, &HoloSum::zero(1), &sample_points(SampleDomain::UpperHalfPlane, 1, 4, 1))? > 0.0
                    && g.evaluate(&[Complex64::new(0.3, 1.1)])?.norm() > 1e-10
                {
                    leak += 1;
                }
            }
        }
        let g = rc_apply(&p, &input, RcRoute::Coefficients)?;
        let inverse = RcInverse::new(2.5, 3.0, vec![(ell, g)])?;
        for pt in &pts {
            let a = inverse.eval(pt[0], pt[1], 1e-14)?;
            let b = input.evaluate(pt)?;
            worst_holo = worst_holo.max((a - b).norm() / b.norm());
        }
    }
    pass &= worst_holo < 1e-8 && leak == 0;
    notes.push(format!("RC holomorphic round trip {worst_holo:.1e}, {leak} leaking components"));

    // L2 Rankin-Cohen model.
    let mut worst_l2: f64 = 0.0;
    for ell in 0..=4 {
        let p = L2Params::new(2.5, 3.0, ell);
        let g = L2Fn1::monomial_exp(p.l3(), Complex64::new(1.0, 0.5), p.l3(), 1.5);
        let f = invert_rchat(2.5, 3.0, &[(ell, g.clone())])?;
        let back = rchat_structured(&p, &f, 1e-14)?;
        for z in [0.3, 1.0, 2.2, 5.0] {
            let pointwise = rchat_apply(&p, &|x, y| f.eval(x, y), (p.alpha(), p.beta()), z, 1e-14)?;
            let expect = g.eval(z);
            worst_l2 = worst_l2.max((back.eval(z) - expect).norm() / expect.norm());
            worst_l2 = worst_l2.max((pointwise - expect).norm() / expect.norm());
        }
    }
    let (l1, l2) = (1.5, 1.25);
    let target = L2Fn2::exp_sum(l1, l2, re(1.0), 1.0);
    let mut comps = Vec::new();
    let mut residuals = Vec::new();
    for ell in 0..=8 {
        comps.push((ell, rchat_structured(&L2Params::new(l1, l2, ell), &target, 1e-14)?));
        residuals.push(target.sub(&invert_rchat(l1, l2, &comps)?)?.norm_sq(1e-14)?);
    }
    pass &= worst_l2 < 1e-8 && strictly_decreasing(&residuals);
    notes.push(format!(
        "RC L2 round trip {worst_l2:.1e}, residual L=0..8 {:.3e} -> {:.3e} monotone={}",
        residuals[0],
        residuals[8],
        strictly_decreasing(&residuals)
    ));

    // L2 Juhl model.
    let mut worst_juhl: f64 = 0.0;
    let h = |y: &[f64]| Complex64::new((-y[0]).exp(), 0.5 * y[1]);
    let yp = [1.4, 0.3];
    for ell in 0..=4 {
        let comps: [(u32, &dyn Fn(&[f64]) -> Complex64); 1] = [(ell, &h)];
        let f = |y: &[f64]| invert_juhl_l2(3, 3.5, &comps, y).unwrap_or(re(f64::NAN));
        let p = ConeParams::new(3, 3.5, ell)?;
        let back = juhl_hat_apply(&p, &f, p.fibre_exponent(), &yp, 1e-14)?;
        worst_juhl = worst_juhl.max((back - h(&yp)).norm() / h(&yp).norm());
        let direct = phi_cone_apply(&p, &h, &[1.4, 0.3, 0.2])?;
        let via = invert_juhl_l2(3, 3.5, &comps, &[1.4, 0.3, 0.2])? * cone_c_ell(&p)? / holobreak::l2_model::i_pow(ell as i64);
        worst_juhl = worst_juhl.max((direct - via).norm() / direct.norm());
    }
    let f = |y: &[f64]| re((-y[0] - 0.5 * y[2]).exp());
    let fres = fibre_residuals(3, 2.25, &f, &yp, 8, 1e-12)?;
    pass &= worst_juhl < 1e-8 && strictly_decreasing(&fres);
    notes.push(format!(
        "Juhl L2 round trip {worst_juhl:.1e}, fibre residual L=0..8 {:.3e} -> {:.3e} monotone={}",
        fres[0],
        fres[8],
        strictly_decreasing(&fres)
    ));
    Ok(Outcome { pass, detail: notes.join("; ") })
}

fn zero_classification_grid() -> Result<Outcome> {
    let mut agree = 0;
    let mut disagree = Vec::new();
    let mut collisions = 0;
    let mut vanishing = 0;
    for l1 in -6..=6 {
        for l2 in -6..=6 {
            for ell in 0..=4 {
                let case = zero_classification(l1, l2, l1 + l2 + 2 * ell)?;
                match case.consistent() {
                    None => collisions += 1,
                    Some(true) => {
                        agree += 1;
                        if case.predicate {
                            vanishing += 1;
                        }
                    }
                    Some(false) => disagree.push((l1, l2, ell)),
                }
            }
        }
    }
    Ok(Outcome {
        pass: disagree.is_empty(),
        detail: format!(
            "{agree} triples agree ({vanishing} with c_l = 0), {} disagree {:?}, {collisions} collisions reported",
            disagree.len(),
            disagree
        ),
    })
}

fn main() {
    let results = [
        run(1, "Jacobi/Gegenbauer norms", 5.0, orthogonal_norms),
        run(2, "RC formula equivalence and sl2 intertwining", 30.0, rc_equivalence),
        run(3, "Casimir eigen-identity on the minimal K-type", 10.0, casimir),
        run(4, "RC composition with the K-type and Psi quadrature", 20.0, composition),
        run(5, "Bernstein-Sato identity", 60.0, bernstein_sato),
        run(6, "L2 Plancherel for Phi", 60.0, l2_plancherel),
        run(7, "cone-model isometry", 30.0, cone_isometry),
        run(8, "Fourier-Laplace isometry constant", 120.0, fourier_laplace_isometry),
        run(9, "inversion round trips", 120.0, inversion),
        run(10, "zero classification", 5.0, zero_classification_grid),
    ];
    let passed = results.iter().filter(|&&r| r).count();
    println!("acceptance: {passed}/{} criteria passed", results.len());
    if passed != results.len() {
        std::process::exit(1);
    }
}
