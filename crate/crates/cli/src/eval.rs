//! `eval`: evaluates a textual sum or a named transform at a point.

use holobreak::juhl::{b_n, cone_c_ell, juhl_sbo_apply, q_nl, ConeParams, JuhlParams, JuhlRoute};
use holobreak::rc_transform::{b_const, c_ell, psi_ktype_closed_form, psi_quadrature, r_ell, rc_apply, RcParams, RcRoute};
use holobreak::special_poly::{gamma, gegenbauer_eval, jacobi_eval};
use holobreak::{Complex64, HoloSum};

use crate::CliError;

/// Names accepted in place of a bare sum, with their argument lists.
pub const NAMED: &[(&str, &str)] = &[
    ("c_ell", "L1 L2 ELL"),
    ("r_ell", "L1 L2 ELL"),
    ("b", "LAMBDA"),
    ("b_n", "N LAMBDA"),
    ("cone_c_ell", "N LAMBDA ELL"),
    ("q_nl", "N ELL LAMBDA"),
    ("gamma", "(at z)"),
    ("jacobi", "ELL ALPHA BETA (at t)"),
    ("gegenbauer", "ELL ALPHA (at t)"),
    ("psi", "L1 L2 ELL SUM (at z1,z2)"),
    ("psi_ktype", "L1 L2 ELL (at z1,z2)"),
    ("rc", "L1 L2 ELL SUM (at z)"),
    ("juhl", "N LAMBDA ELL SUM (at n-1 points)"),
];

/// Comma-separated complex numbers such as `0.5+1.2i,-1+0.3i`.
pub fn parse_point(text: &str) -> Result<Vec<Complex64>, CliError> {
    text.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| {
            let s = s.trim();
            s.parse::<Complex64>().map_err(|_| CliError::Expr(format!("invalid complex number '{s}'")))
        })
        .collect()
}

fn real_arg(args: &[&str], k: usize, name: &str) -> Result<f64, CliError> {
    let a = args.get(k).ok_or_else(|| CliError::Expr(format!("{name}: missing argument {}", k + 1)))?;
    match holobreak::Qi::parse_rational(a) {
        Some(q) => Ok(holobreak::Scalar::to_c64(&q).re),
        None => a.parse().map_err(|_| CliError::Expr(format!("{name}: invalid number '{a}'"))),
    }
}

fn nat_arg<T: std::str::FromStr>(args: &[&str], k: usize, name: &str) -> Result<T, CliError> {
    let a = args.get(k).ok_or_else(|| CliError::Expr(format!("{name}: missing argument {}", k + 1)))?;
    a.parse().map_err(|_| CliError::Expr(format!("{name}: expected a natural number, got '{a}'")))
}

fn coord(point: &[Complex64], need: usize, name: &str) -> Result<(), CliError> {
    if point.len() == need {
        Ok(())
    } else {
        Err(CliError::Expr(format!("{name}: expected a point with {need} coordinates, got {}", point.len())))
    }
}

fn arity(args: &[&str], need: usize, name: &str) -> Result<(), CliError> {
    if args.len() == need {
        Ok(())
    } else {
        Err(CliError::Expr(format!("{name}: expected {need} arguments, got {}", args.len())))
    }
}

fn parse_sum(text: Option<&str>, name: &str) -> Result<HoloSum<Complex64>, CliError> {
    let text = text.ok_or_else(|| CliError::Expr(format!("{name}: missing (sum ...) argument")))?;
    Ok(HoloSum::parse(text)?)
}

/// Evaluates `expr` at `point`.
pub fn evaluate(expr: &str, point: &[Complex64]) -> Result<Complex64, CliError> {
    let expr = expr.trim();
    if expr.starts_with('(') {
        let sum: HoloSum<Complex64> = HoloSum::parse(expr)?;
        return Ok(sum.evaluate(point)?);
    }
    if let Ok(z) = expr.parse::<Complex64>() {
        return Ok(z);
    }
    let (head, sum_text) = match expr.find('(') {
        Some(i) => (&expr[..i], Some(&expr[i..])),
        None => (expr, None),
    };
    let words: Vec<&str> = head.split_whitespace().collect();
    let (name, args) = words.split_first().ok_or_else(|| CliError::Expr("empty expression".into()))?;
    let name = *name;
    let c = |x: f64| Complex64::new(x, 0.0);
    if sum_text.is_some() && !matches!(name, "psi" | "rc" | "juhl") {
        return Err(CliError::Expr(format!("{name}: unexpected (sum ...) argument")));
    }
    let value = match name {
        "c_ell" | "r_ell" | "psi_ktype" => {
            arity(args, 3, name)?;
            let (l1, l2, ell) = (real_arg(args, 0, name)?, real_arg(args, 1, name)?, nat_arg(args, 2, name)?);
            match name {
                "c_ell" => c_ell(c(l1), c(l2), ell)?,
                "r_ell" => r_ell(c(l1), c(l2), ell)?,
                _ => {
                    coord(point, 2, name)?;
                    psi_ktype_closed_form(&RcParams::new(c(l1), c(l2), ell))?.evaluate(point)?
                }
            }
        }
        "b" => {
            arity(args, 1, name)?;
            b_const(c(real_arg(args, 0, name)?))?
        }
        "b_n" => {
            arity(args, 2, name)?;
            c(b_n(nat_arg(args, 0, name)?, real_arg(args, 1, name)?)?)
        }
        "cone_c_ell" => {
            arity(args, 3, name)?;
            let p = ConeParams::new(nat_arg(args, 0, name)?, real_arg(args, 1, name)?, nat_arg(args, 2, name)?)?;
            c(cone_c_ell(&p)?)
        }
        "q_nl" => {
            arity(args, 3, name)?;
            q_nl(nat_arg(args, 0, name)?, nat_arg(args, 1, name)?, &c(real_arg(args, 2, name)?))
        }
        "gamma" => {
            arity(args, 0, name)?;
            coord(point, 1, name)?;
            gamma(point[0])?
        }
        "jacobi" => {
            arity(args, 3, name)?;
            coord(point, 1, name)?;
            jacobi_eval(nat_arg(args, 0, name)?, c(real_arg(args, 1, name)?), c(real_arg(args, 2, name)?), point[0])
        }
        "gegenbauer" => {
            arity(args, 2, name)?;
            coord(point, 1, name)?;
            gegenbauer_eval(nat_arg(args, 0, name)?, c(real_arg(args, 1, name)?), point[0])
        }
        "psi" => {
            arity(args, 3, name)?;
            coord(point, 2, name)?;
            let g = parse_sum(sum_text, name)?;
            if g.nvars() != 1 {
                return Err(CliError::Expr(format!("psi: input must have 1 variable, got {}", g.nvars())));
            }
            let f = |z: Complex64| g.evaluate(&[z]);
            psi_quadrature(real_arg(args, 0, name)?, real_arg(args, 1, name)?, nat_arg(args, 2, name)?, &f, point[0], point[1], 1e-14)?
        }
        "rc" => {
            arity(args, 3, name)?;
            coord(point, 1, name)?;
            let f = parse_sum(sum_text, name)?;
            let p = RcParams::new(c(real_arg(args, 0, name)?), c(real_arg(args, 1, name)?), nat_arg(args, 2, name)?);
            rc_apply(&p, &f, RcRoute::Coefficients)?.evaluate(point)?
        }
        "juhl" => {
            arity(args, 3, name)?;
            let n: usize = nat_arg(args, 0, name)?;
            coord(point, n.saturating_sub(1), name)?;
            let f = parse_sum(sum_text, name)?;
            let p = JuhlParams::new(n, c(real_arg(args, 1, name)?), nat_arg(args, 2, name)?)?;
            juhl_sbo_apply(&p, &f, JuhlRoute::Gegenbauer)?.evaluate(point)?
        }
        other => return Err(CliError::Expr(format!("unknown expression '{other}'"))),
    };
    Ok(value)
}
