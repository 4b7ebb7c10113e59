//! Symbolic holomorphic functions as finite sums of
//! `coefficient * monomial * prod base^exponent`, with polynomial bases and
//! arbitrary (rational or complex) exponents.
//!
//! The representation is closed under partial derivatives, affine
//! restriction, multiplication by polynomials or by base powers, and
//! principal-branch evaluation. Bases are compared by value, so two terms
//! merge whenever their bases agree coefficient by coefficient. Bases that
//! differ by a constant factor are not identified, since that would move a
//! transcendental constant into the coefficient.
//!
//! General term-by-term multiplication is deliberately absent.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::poly::MultiPoly;
use crate::scalar::Scalar;

/// A powered base `base^exp`.
#[derive(Clone, Debug, PartialEq)]
pub struct Factor<S> {
    pub base: MultiPoly<S>,
    pub exp: S,
}

impl<S: Scalar> Factor<S> {
    pub fn new(base: MultiPoly<S>, exp: S) -> Self {
        Factor { base, exp }
    }

    fn cmp_key(&self, other: &Self) -> Ordering {
        self.base.cmp_total(&other.base).then_with(|| self.exp.total_cmp(&other.exp))
    }
}

/// Monomial exponents plus canonically ordered factors.
#[derive(Clone, Debug)]
struct Signature<S> {
    mono: Vec<u32>,
    factors: Vec<Factor<S>>,
}

impl<S: Scalar> Ord for Signature<S> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.mono.cmp(&other.mono).then_with(|| {
            for (a, b) in self.factors.iter().zip(&other.factors) {
                let o = a.cmp_key(b);
                if o != Ordering::Equal {
                    return o;
                }
            }
            self.factors.len().cmp(&other.factors.len())
        })
    }
}

impl<S: Scalar> PartialOrd for Signature<S> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<S: Scalar> PartialEq for Signature<S> {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl<S: Scalar> Eq for Signature<S> {}

/// One term `coeff * z^mono * prod base^exp`, as exposed by [`HoloSum::terms`].
#[derive(Clone, Debug, PartialEq)]
pub struct HoloTerm<S> {
    pub coeff: S,
    pub mono: Vec<u32>,
    pub factors: Vec<Factor<S>>,
}

/// Normalized finite sum of [`HoloTerm`]s in `nvars` variables.
#[derive(Clone, Debug)]
pub struct HoloSum<S> {
    nvars: usize,
    terms: BTreeMap<Signature<S>, S>,
}

impl<S: Scalar> PartialEq for HoloSum<S> {
    fn eq(&self, other: &Self) -> bool {
        self.nvars == other.nvars
            && self.terms.len() == other.terms.len()
            && self.terms.iter().zip(&other.terms).all(|((sa, ca), (sb, cb))| sa == sb && ca == cb)
    }
}

/// Affine substitution `z_k -> images[k]` into a space of `target` variables.
#[derive(Clone, Debug)]
pub struct Substitution<S> {
    images: Vec<MultiPoly<S>>,
    target: usize,
}

impl<S: Scalar> Substitution<S> {
    /// Requires every image to have total degree at most one.
    pub fn affine(images: Vec<MultiPoly<S>>, target: usize) -> Result<Self> {
        for p in &images {
            if p.nvars() != target {
                return Err(Error::Arity { expected: target, got: p.nvars() });
            }
            if p.total_degree() > 1 {
                return Err(Error::Domain("substitution images must be affine".into()));
            }
        }
        Ok(Substitution { images, target })
    }

    /// `z_2 := z_1` on two variables.
    pub fn diagonal() -> Self {
        let z = MultiPoly::var(1, 0);
        Substitution { images: vec![z.clone(), z], target: 1 }
    }

    /// `z_var := 0` on `n` variables, renumbering the rest.
    pub fn hyperplane(n: usize, var: usize) -> Self {
        let images = (0..n)
            .map(|k| match k.cmp(&var) {
                Ordering::Less => MultiPoly::var(n - 1, k),
                Ordering::Equal => MultiPoly::zero(n - 1),
                Ordering::Greater => MultiPoly::var(n - 1, k - 1),
            })
            .collect();
        Substitution { images, target: n - 1 }
    }

    pub fn source_arity(&self) -> usize {
        self.images.len()
    }

    pub fn target_arity(&self) -> usize {
        self.target
    }
}

impl<S: Scalar> HoloSum<S> {
    pub fn zero(nvars: usize) -> Self {
        HoloSum { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: S) -> Self {
        let mut f = Self::zero(nvars);
        f.add_raw(c, vec![0; nvars], Vec::new());
        f
    }

    /// The single term `coeff * z^mono * prod factors`.
    pub fn term(coeff: S, mono: Vec<u32>, factors: Vec<Factor<S>>) -> Self {
        let mut f = Self::zero(mono.len());
        for fa in &factors {
            assert_eq!(fa.base.nvars(), mono.len(), "factor arity");
        }
        f.add_raw(coeff, mono, factors);
        f
    }

    /// `base^exp` as a one-term sum.
    pub fn power(base: MultiPoly<S>, exp: S) -> Self {
        let n = base.nvars();
        Self::term(S::one(), vec![0; n], vec![Factor::new(base, exp)])
    }

    /// A polynomial viewed as a sum without factors.
    pub fn from_poly(p: &MultiPoly<S>) -> Self {
        let mut f = Self::zero(p.nvars());
        for (e, c) in p.terms() {
            f.add_raw(c.clone(), e.clone(), Vec::new());
        }
        f
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Structural zero test: no terms after normalization.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = HoloTerm<S>> + '_ {
        self.terms.iter().map(|(sig, c)| HoloTerm {
            coeff: c.clone(),
            mono: sig.mono.clone(),
            factors: sig.factors.clone(),
        })
    }

    /// Inserts a raw term after bringing it to canonical form.
    fn add_raw(&mut self, coeff: S, mono: Vec<u32>, factors: Vec<Factor<S>>) {
        let Some((sig, c)) = canonical(coeff, mono, factors) else { return };
        match self.terms.get_mut(&sig) {
            Some(v) => {
                let s = v.clone() + c;
                if s.is_zero() {
                    self.terms.remove(&sig);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(sig, c);
            }
        }
    }

    pub fn scale(&self, c: &S) -> Self {
        let mut out = Self::zero(self.nvars);
        if c.is_zero() {
            return out;
        }
        for (sig, a) in &self.terms {
            out.add_raw(a.clone() * c.clone(), sig.mono.clone(), sig.factors.clone());
        }
        out
    }

    /// Multiplies by `c * z^mono`.
    pub fn mul_monomial(&self, mono: &[u32], c: &S) -> Self {
        assert_eq!(mono.len(), self.nvars, "monomial arity");
        let mut out = Self::zero(self.nvars);
        for (sig, a) in &self.terms {
            let m = sig.mono.iter().zip(mono).map(|(x, y)| x + y).collect();
            out.add_raw(a.clone() * c.clone(), m, sig.factors.clone());
        }
        out
    }

    pub fn mul_poly(&self, p: &MultiPoly<S>) -> Self {
        assert_eq!(p.nvars(), self.nvars, "polynomial arity");
        let mut out = Self::zero(self.nvars);
        for (e, c) in p.terms() {
            out = &out + &self.mul_monomial(e, c);
        }
        out
    }

    /// Multiplies every term by `base^exp`, merging with an existing factor on
    /// the same base.
    pub fn mul_factor(&self, base: &MultiPoly<S>, exp: &S) -> Self {
        assert_eq!(base.nvars(), self.nvars, "factor arity");
        let mut out = Self::zero(self.nvars);
        for (sig, a) in &self.terms {
            let mut factors = sig.factors.clone();
            factors.push(Factor::new(base.clone(), exp.clone()));
            out.add_raw(a.clone(), sig.mono.clone(), factors);
        }
        out
    }

    /// Partial derivative in variable `var`.
    pub fn differentiate(&self, var: usize) -> Self {
        assert!(var < self.nvars, "variable index out of range");
        let mut out = Self::zero(self.nvars);
        for (sig, c) in &self.terms {
            let k = sig.mono[var];
            if k > 0 {
                let mut m = sig.mono.clone();
                m[var] -= 1;
                out.add_raw(c.clone() * S::from_i64(k as i64), m, sig.factors.clone());
            }
            for (i, fa) in sig.factors.iter().enumerate() {
                let db = fa.base.derivative(var);
                if db.is_zero() {
                    continue;
                }
                let mut factors = sig.factors.clone();
                factors[i].exp = fa.exp.clone() - S::one();
                let scale = c.clone() * fa.exp.clone();
                for (e, d) in db.terms() {
                    let m = sig.mono.iter().zip(e).map(|(x, y)| x + y).collect();
                    out.add_raw(scale.clone() * d.clone(), m, factors.clone());
                }
            }
        }
        out
    }

    /// Iterated partial derivative `d^alpha`.
    pub fn differentiate_multi(&self, alpha: &[u32]) -> Self {
        let mut f = self.clone();
        for (var, &k) in alpha.iter().enumerate() {
            for _ in 0..k {
                f = f.differentiate(var);
            }
        }
        f
    }

    /// Applies an affine substitution. A base that vanishes identically
    /// kills its term when raised to a positive integer power and is an
    /// error otherwise.
    pub fn restrict(&self, sub: &Substitution<S>) -> Result<Self> {
        if sub.source_arity() != self.nvars {
            return Err(Error::Arity { expected: self.nvars, got: sub.source_arity() });
        }
        let mut out = Self::zero(sub.target);
        let mut powers: Vec<Vec<MultiPoly<S>>> =
            sub.images.iter().map(|p| vec![MultiPoly::constant(sub.target, S::one()), p.clone()]).collect();
        for (sig, c) in &self.terms {
            let mut factors = Vec::with_capacity(sig.factors.len());
            let mut vanishes = false;
            for fa in &sig.factors {
                let b = fa.base.substitute(&sub.images);
                if b.is_zero() {
                    match fa.exp.as_integer() {
                        Some(k) if k > 0 => vanishes = true,
                        _ => {
                            return Err(Error::SingularRestriction(format!(
                                "base {} vanishes with exponent {}",
                                fa.base,
                                fa.exp.to_sexpr()
                            )))
                        }
                    }
                }
                factors.push(Factor::new(b, fa.exp.clone()));
            }
            if vanishes {
                continue;
            }
            let mut image = MultiPoly::constant(sub.target, c.clone());
            for (k, &d) in sig.mono.iter().enumerate() {
                if d == 0 {
                    continue;
                }
                while powers[k].len() <= d as usize {
                    let next = powers[k].last().map(|p| p * &sub.images[k]).expect("seeded");
                    powers[k].push(next);
                }
                image = &image * &powers[k][d as usize];
            }
            for (e, a) in image.terms() {
                out.add_raw(a.clone(), e.clone(), factors.clone());
            }
        }
        Ok(out)
    }

    /// Expands every factor with a nonnegative integer exponent into its
    /// polynomial.
    pub fn expand_integer_powers(&self) -> Self {
        let mut out = Self::zero(self.nvars);
        for (sig, c) in &self.terms {
            let mut poly = MultiPoly::monomial(sig.mono.clone(), c.clone());
            let mut rest = Vec::new();
            for fa in &sig.factors {
                match fa.exp.as_integer() {
                    Some(k) if k >= 0 => poly = &poly * &fa.base.pow(k as u32),
                    _ => rest.push(fa.clone()),
                }
            }
            for (e, a) in poly.terms() {
                out.add_raw(a.clone(), e.clone(), rest.clone());
            }
        }
        out
    }

    /// The polynomial this sum equals, if every exponent is a nonnegative
    /// integer.
    pub fn to_polynomial(&self) -> Option<MultiPoly<S>> {
        let e = self.expand_integer_powers();
        let mut p = MultiPoly::zero(self.nvars);
        for (sig, c) in &e.terms {
            if !sig.factors.is_empty() {
                return None;
            }
            p.add_term(sig.mono.clone(), c.clone());
        }
        Some(p)
    }

    /// Principal-branch evaluation. Non-integer powers of a base value within
    /// `1e-10` of the negative real axis raise [`Error::BranchAmbiguity`].
    pub fn evaluate(&self, point: &[Complex64]) -> Result<Complex64> {
        if point.len() != self.nvars {
            return Err(Error::Arity { expected: self.nvars, got: point.len() });
        }
        let mut acc = Complex64::new(0.0, 0.0);
        for (sig, c) in &self.terms {
            let mut v = c.to_c64();
            for (x, &k) in point.iter().zip(&sig.mono) {
                if k > 0 {
                    v *= x.powu(k);
                }
            }
            for fa in &sig.factors {
                v *= principal_power(fa.base.eval_c64(point), fa.exp.to_c64(), fa.exp.as_integer())?;
            }
            acc += v;
        }
        Ok(acc)
    }

    /// Exact zero test. Terms are grouped by the fractional parts of their
    /// non-integer exponents; inside a group the common denominator is
    /// cleared and the resulting polynomial must vanish. A `true` answer is
    /// a proof. A `false` answer is definitive whenever the bases are
    /// pairwise non-proportional and multiplicatively independent.
    pub fn is_zero_exact(&self) -> Result<bool> {
        if !S::is_exact() {
            return Err(Error::NotExact("zero test needs the exact tier".into()));
        }
        let mut classes: BTreeMap<FactorKey<S>, Vec<(&Signature<S>, &S)>> = BTreeMap::new();
        for (sig, c) in &self.terms {
            let mut key = Vec::new();
            for fa in &sig.factors {
                if fa.exp.as_integer().is_some() {
                    continue;
                }
                let fl = fa
                    .exp
                    .floor_real()
                    .ok_or_else(|| Error::NotExact(format!("complex exponent {}", fa.exp.to_sexpr())))?;
                key.push(Factor::new(fa.base.clone(), fa.exp.clone() - S::from_i64(fl)));
            }
            classes.entry(FactorKey(key)).or_default().push((sig, c));
        }
        for members in classes.values() {
            let mut mins: Vec<(&MultiPoly<S>, S)> = Vec::new();
            for (sig, _) in members {
                for fa in &sig.factors {
                    match mins.iter_mut().find(|(b, _)| b.cmp_total(&fa.base) == Ordering::Equal) {
                        Some((_, e)) => {
                            if fa.exp.total_cmp(e) == Ordering::Less {
                                *e = fa.exp.clone();
                            }
                        }
                        None => mins.push((&fa.base, fa.exp.clone())),
                    }
                }
            }
            // Bases missing from a term carry exponent zero there.
            for (b, e) in mins.iter_mut() {
                let everywhere = members
                    .iter()
                    .all(|(sig, _)| sig.factors.iter().any(|fa| fa.base.cmp_total(b) == Ordering::Equal));
                if !everywhere && e.total_cmp(&S::zero()) == Ordering::Greater {
                    *e = S::zero();
                }
            }
            let mut sum = MultiPoly::zero(self.nvars);
            for (sig, c) in members {
                let mut p = MultiPoly::monomial(sig.mono.clone(), (*c).clone());
                for (b, emin) in &mins {
                    let e = sig
                        .factors
                        .iter()
                        .find(|fa| fa.base.cmp_total(b) == Ordering::Equal)
                        .map(|fa| fa.exp.clone())
                        .unwrap_or_else(S::zero);
                    let shift = (e - emin.clone()).as_integer().expect("same class differs by integers");
                    p = &p * &b.pow(shift as u32);
                }
                sum = &sum + &p;
            }
            if !sum.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Writes `self = sum_j r_j * base^(e0 + j)` with polynomials `r_j` of
    /// degree below `deg_var(base)` in `var`. Every term must carry exactly
    /// the factor `base` with exponents congruent modulo the integers.
    /// Requires `base` to have a constant leading coefficient in `var`.
    pub fn base_power_expansion(&self, base: &MultiPoly<S>, var: usize) -> Result<(S, Vec<MultiPoly<S>>)> {
        let mut e0: Option<S> = None;
        for sig in self.terms.keys() {
            let ok = sig.factors.len() == 1 && sig.factors[0].base.cmp_total(base) == Ordering::Equal;
            if !ok {
                return Err(Error::Domain("term is not a pure power of the expansion base".into()));
            }
            let e = &sig.factors[0].exp;
            match &e0 {
                None => e0 = Some(e.clone()),
                Some(m) => {
                    if (e.clone() - m.clone()).as_integer().is_none() {
                        return Err(Error::Domain("exponents differ by a non-integer".into()));
                    }
                    if e.total_cmp(m) == Ordering::Less {
                        e0 = Some(e.clone());
                    }
                }
            }
        }
        let Some(e0) = e0 else { return Ok((S::zero(), Vec::new())) };
        let mut rest = MultiPoly::zero(self.nvars);
        for (sig, c) in &self.terms {
            let shift = (sig.factors[0].exp.clone() - e0.clone()).as_integer().expect("checked") as u32;
            rest = &rest + &(&MultiPoly::monomial(sig.mono.clone(), c.clone()) * &base.pow(shift));
        }
        let mut out = Vec::new();
        while !rest.is_zero() {
            let (q, r) = rest.divrem_in_var(base, var);
            out.push(r);
            rest = q;
        }
        Ok((e0, out))
    }

    /// Coefficients moved to the floating tier.
    pub fn to_c64(&self) -> HoloSum<Complex64> {
        let mut out = HoloSum::zero(self.nvars);
        for (sig, c) in &self.terms {
            let factors = sig.factors.iter().map(|fa| Factor::new(poly_to_c64(&fa.base), fa.exp.to_c64())).collect();
            out.add_raw(c.to_c64(), sig.mono.clone(), factors);
        }
        out
    }

    /// Text form read back by [`HoloSum::parse`].
    pub fn to_sexpr(&self) -> String {
        let mut s = format!("(sum {}", self.nvars);
        for (sig, c) in &self.terms {
            s.push_str(&format!(" (term {} (mono", c.to_sexpr()));
            for e in &sig.mono {
                s.push_str(&format!(" {e}"));
            }
            s.push(')');
            for fa in &sig.factors {
                s.push_str(" (pow (poly");
                for (e, a) in fa.base.terms() {
                    s.push_str(&format!(" ({}", a.to_sexpr()));
                    for k in e {
                        s.push_str(&format!(" {k}"));
                    }
                    s.push(')');
                }
                s.push_str(&format!(") {})", fa.exp.to_sexpr()));
            }
            s.push(')');
        }
        s.push(')');
        s
    }

    /// Parses the text form produced by [`HoloSum::to_sexpr`].
    pub fn parse(text: &str) -> Result<Self> {
        Parser::new(text)?.sum()
    }
}

/// Ordering wrapper so factor lists can key a map.
#[derive(Clone, Debug)]
struct FactorKey<S>(Vec<Factor<S>>);

impl<S: Scalar> Ord for FactorKey<S> {
    fn cmp(&self, other: &Self) -> Ordering {
        for (a, b) in self.0.iter().zip(&other.0) {
            let o = a.cmp_key(b);
            if o != Ordering::Equal {
                return o;
            }
        }
        self.0.len().cmp(&other.0.len())
    }
}

impl<S: Scalar> PartialOrd for FactorKey<S> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<S: Scalar> PartialEq for FactorKey<S> {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl<S: Scalar> Eq for FactorKey<S> {}

fn poly_to_c64<S: Scalar>(p: &MultiPoly<S>) -> MultiPoly<Complex64> {
    MultiPoly::from_terms(p.nvars(), p.terms().map(|(e, c)| (e.clone(), c.to_c64())))
}

/// `b^e` on the principal branch, with integer exponents taken exactly.
pub fn principal_power(b: Complex64, e: Complex64, integer: Option<i64>) -> Result<Complex64> {
    if let Some(k) = integer {
        if b.norm() == 0.0 && k < 0 {
            return Err(Error::Domain("negative power of zero".into()));
        }
        return Ok(if k >= 0 { b.powu(k as u32) } else { b.powu(k.unsigned_abs() as u32).inv() });
    }
    if b.norm() == 0.0 {
        if e.re > 0.0 {
            return Ok(Complex64::new(0.0, 0.0));
        }
        return Err(Error::Domain("non-positive power of zero".into()));
    }
    if std::f64::consts::PI - b.arg().abs() < 1e-10 {
        return Err(Error::BranchAmbiguity(format!("base value {b} on the cut")));
    }
    Ok((e * b.ln()).exp())
}

/// Brings a raw term to canonical form: factors sorted and merged, trivial
/// factors dropped, constant bases with integer exponent folded into the
/// coefficient, and single-monomial bases with nonnegative integer exponent
/// folded into the monomial.
fn canonical<S: Scalar>(mut coeff: S, mut mono: Vec<u32>, mut factors: Vec<Factor<S>>) -> Option<(Signature<S>, S)> {
    if coeff.is_zero() {
        return None;
    }
    factors.sort_by(|a, b| a.base.cmp_total(&b.base));
    let mut merged: Vec<Factor<S>> = Vec::with_capacity(factors.len());
    for fa in factors {
        match merged.last_mut() {
            Some(last) if last.base.cmp_total(&fa.base) == Ordering::Equal => {
                last.exp = last.exp.clone() + fa.exp;
            }
            _ => merged.push(fa),
        }
    }
    let mut kept = Vec::with_capacity(merged.len());
    for fa in merged {
        if fa.exp.is_zero() {
            continue;
        }
        if let Some(c) = fa.base.as_constant() {
            if c == S::one() {
                continue;
            }
            if let Some(k) = fa.exp.as_integer() {
                if c.is_zero() {
                    if k > 0 {
                        return None;
                    }
                    kept.push(fa);
                    continue;
                }
                coeff = coeff * c.powi(k);
                continue;
            }
        }
        if fa.base.len() == 1 {
            if let Some(k) = fa.exp.as_integer().filter(|&k| k >= 0) {
                let (e, c) = fa.base.terms().next().expect("one term");
                coeff = coeff * c.powi(k);
                for (m, d) in mono.iter_mut().zip(e) {
                    *m += d * k as u32;
                }
                continue;
            }
        }
        kept.push(fa);
    }
    if coeff.is_zero() {
        return None;
    }
    Some((Signature { mono, factors: kept }, coeff))
}

impl<S: Scalar> Add for &HoloSum<S> {
    type Output = HoloSum<S>;
    fn add(self, o: &HoloSum<S>) -> HoloSum<S> {
        assert_eq!(self.nvars, o.nvars, "sum arity");
        let mut out = self.clone();
        for (sig, c) in &o.terms {
            out.add_raw(c.clone(), sig.mono.clone(), sig.factors.clone());
        }
        out
    }
}

impl<S: Scalar> Sub for &HoloSum<S> {
    type Output = HoloSum<S>;
    fn sub(self, o: &HoloSum<S>) -> HoloSum<S> {
        self + &(-o)
    }
}

impl<S: Scalar> Neg for &HoloSum<S> {
    type Output = HoloSum<S>;
    fn neg(self) -> HoloSum<S> {
        self.scale(&-S::one())
    }
}

impl<S: Scalar> fmt::Display for HoloSum<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_sexpr())
    }
}

/// Constant-coefficient differential operator `sum_a c_a d^a`, given by its
/// symbol polynomial. Shared partial derivatives are computed once.
pub fn apply_diff_op<S: Scalar>(op: &MultiPoly<S>, f: &HoloSum<S>) -> HoloSum<S> {
    assert_eq!(op.nvars(), f.nvars(), "operator arity");
    let mut memo: BTreeMap<Vec<u32>, HoloSum<S>> = BTreeMap::new();
    memo.insert(vec![0; f.nvars()], f.clone());
    let mut out = HoloSum::zero(f.nvars());
    for (alpha, c) in op.terms() {
        let d = derivative_memo(&mut memo, alpha);
        out = &out + &d.scale(c);
    }
    out
}

fn derivative_memo<S: Scalar>(memo: &mut BTreeMap<Vec<u32>, HoloSum<S>>, alpha: &[u32]) -> HoloSum<S> {
    if let Some(d) = memo.get(alpha) {
        return d.clone();
    }
    let var = alpha.iter().rposition(|&k| k > 0).expect("zero multi-index is seeded");
    let mut parent = alpha.to_vec();
    parent[var] -= 1;
    let d = derivative_memo(memo, &parent).differentiate(var);
    memo.insert(alpha.to_vec(), d.clone());
    d
}

/// Generators of the Lie algebra `sl2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sl2 {
    H,
    X,
    Y,
}

/// Tensor-product action on `n` variables, each carrying its own `lambda_k`:
/// `H = sum(-lambda_k - 2 z_k d_k)`, `X = -sum d_k`,
/// `Y = sum(lambda_k z_k + z_k^2 d_k)`.
pub fn sl2_action_tensor<S: Scalar>(g: Sl2, lambdas: &[S], f: &HoloSum<S>) -> Result<HoloSum<S>> {
    let n = f.nvars();
    if lambdas.len() != n {
        return Err(Error::Arity { expected: n, got: lambdas.len() });
    }
    let mut out = HoloSum::zero(n);
    for (k, lam) in lambdas.iter().enumerate() {
        let d = f.differentiate(k);
        let mut unit = vec![0; n];
        let term = match g {
            Sl2 ::H => {
                unit[k] = 1;
                &f.scale(&-lam.clone()) - &d.mul_monomial(&unit, &S::from_i64(2))
            }
            Sl2::X => -&d,
            Sl2::Y => {
                unit[k] = 1;
                let lin = f.mul_monomial(&unit, lam);
                unit[k] = 2;
                &lin + &d.mul_monomial(&unit, &S::one())
            }
        };
        out = &out + &term;
    }
    Ok(out)
}

/// Action of `g` on functions of one variable with parameter `lambda`.
pub fn sl2_action<S: Scalar>(g: Sl2, lambda: &S, f: &HoloSum<S>) -> Result<HoloSum<S>> {
    if f.nvars() != 1 {
        return Err(Error::Arity { expected: 1, got: f.nvars() });
    }
    sl2_action_tensor(g, std::slice::from_ref(lambda), f)
}

/// Casimir element `(H^2 + 2XY + 2YX)/8` of the tensor action.
pub fn casimir_tensor<S: Scalar>(lambdas: &[S], f: &HoloSum<S>) -> Result<HoloSum<S>> {
    let act = |g, h: &HoloSum<S>| sl2_action_tensor(g, lambdas, h);
    let hh = act(Sl2::H, &act(Sl2::H, f)?)?;
    let xy = act(Sl2::X, &act(Sl2::Y, f)?)?;
    let yx = act(Sl2::Y, &act(Sl2::X, f)?)?;
    let two = S::from_i64(2);
    let sum = &(&hh + &xy.scale(&two)) + &yx.scale(&two);
    Ok(sum.scale(&S::from_ratio(1, 8)))
}

/// Diagonal Casimir on functions of two variables.
pub fn casimir_diag<S: Scalar>(l1: &S, l2: &S, f: &HoloSum<S>) -> Result<HoloSum<S>> {
    if f.nvars() != 2 {
        return Err(Error::Arity { expected: 2, got: f.nvars() });
    }
    casimir_tensor(&[l1.clone(), l2.clone()], f)
}

/// Where sampled equality draws its points.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SampleDomain {
    /// Every coordinate in the upper half-plane.
    UpperHalfPlane,
    /// Imaginary part in the forward time-like cone.
    LightConeTube,
}

pub const SAMPLE_COUNT: usize = 20;
pub const DEFAULT_SEED: u64 = 0x5eed_2024;

/// Deterministic sample points of the given domain.
pub fn sample_points(domain: SampleDomain, nvars: usize, count: usize, seed: u64) -> Vec<Vec<Complex64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| match domain {
            SampleDomain::UpperHalfPlane => (0..nvars)
                .map(|_| Complex64::new(rng.gen_range(-2.0..2.0), rng.gen_range(0.2..3.0)))
                .collect(),
            SampleDomain::LightConeTube => {
                let y0: f64 = rng.gen_range(1.0..3.0);
                let spread = 0.6 * y0 / ((nvars.max(2) - 1) as f64).sqrt();
                (0..nvars)
                    .map(|k| {
                        let im = if k == 0 { y0 } else { rng.gen_range(-spread..spread) };
                        Complex64::new(rng.gen_range(-1.0..1.0), im)
                    })
                    .collect()
            }
        })
        .collect()
}

/// Largest pointwise relative deviation `|f-g| / max(|f|,|g|)` over `points`.
pub fn max_relative_deviation(
    f: &HoloSum<Complex64>,
    g: &HoloSum<Complex64>,
    points: &[Vec<Complex64>],
) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for p in points {
        let a = f.evaluate(p)?;
        let b = g.evaluate(p)?;
        let scale = a.norm().max(b.norm());
        if scale > 0.0 {
            worst = worst.max((a - b).norm() / scale);
        }
    }
    Ok(worst)
}

/// Comparison mode for [`equal`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Equality {
    Exact,
    Sampled { tol: f64, domain: SampleDomain, seed: u64 },
}

/// Compares two sums exactly or at [`SAMPLE_COUNT`] seeded points.
pub fn equal<S: Scalar>(f: &HoloSum<S>, g: &HoloSum<S>, mode: Equality) -> Result<bool> {
    if f.nvars() != g.nvars() {
        return Err(Error::Arity { expected: f.nvars(), got: g.nvars() });
    }
    match mode {
        Equality::Exact => (f - g).is_zero_exact(),
        Equality::Sampled { tol, domain, seed } => {
            let pts = sample_points(domain, f.nvars(), SAMPLE_COUNT, seed);
            Ok(max_relative_deviation(&f.to_c64(), &g.to_c64(), &pts)? < tol)
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Open,
    Close,
    Atom(String),
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    len: usize,
}

impl Parser {
    fn new(text: &str) -> Result<Self> {
        let mut toks = Vec::new();
        let mut chars = text.char_indices().peekable();
        while let Some(&(i, ch)) = chars.peek() {
            match ch {
                '(' => {
                    toks.push((i, Tok::Open));
                    chars.next();
                }
                ')' => {
                    toks.push((i, Tok::Close));
                    chars.next();
                }
                c if c.is_whitespace() => {
                    chars.next();
                }
                _ => {
                    let mut s = String::new();
                    while let Some(&(_, c)) = chars.peek() {
                        if c == '(' || c == ')' || c.is_whitespace() {
                            break;
                        }
                        s.push(c);
                        chars.next();
                    }
                    toks.push((i, Tok::Atom(s)));
                }
            }
        }
        Ok(Parser { toks, pos: 0, len: text.len() })
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map(|t| t.0).unwrap_or(self.len)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: self.here(), msg: msg.into() })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.1)
    }

    fn expect(&mut self, t: Tok) -> Result<()> {
        if self.peek() == Some(&t) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(format!("expected {}", if t == Tok::Open { "'('" } else { "')'" }))
        }
    }

    fn atom(&mut self) -> Result<String> {
        match self.peek() {
            Some(Tok::Atom(s)) => {
                let s = s.clone();
                self.pos += 1;
                Ok(s)
            }
            _ => self.err("expected an atom"),
        }
    }

    fn keyword(&mut self, kw: &str) -> Result<()> {
        let at = self.pos;
        let a = self.atom()?;
        if a == kw {
            Ok(())
        } else {
            self.pos = at;
            self.err(format!("expected '{kw}'"))
        }
    }

    fn natural(&mut self) -> Result<u32> {
        let at = self.pos;
        let a = self.atom()?;
        a.parse().or_else(|_| {
            self.pos = at;
            self.err(format!("expected a natural number, got '{a}'"))
        })
    }

    fn opens(&mut self, kw: &str) -> bool {
        let is = self.peek() == Some(&Tok::Open)
            && matches!(self.toks.get(self.pos + 1), Some((_, Tok::Atom(a))) if a == kw);
        if is {
            self.pos += 2;
        }
        is
    }

    fn number<S: Scalar>(&mut self) -> Result<S> {
        if self.opens("c") {
            let re = self.real::<S>()?;
            let im = self.real::<S>()?;
            self.expect(Tok::Close)?;
            return Ok(re + S::i() * im);
        }
        self.real()
    }

    fn real<S: Scalar>(&mut self) -> Result<S> {
        let at = self.pos;
        let a = self.atom()?;
        S::parse_real(&a).map_or_else(
            || {
                self.pos = at;
                self.err(format!("invalid number '{a}'"))
            },
            Ok,
        )
    }

    fn exps(&mut self, n: usize) -> Result<Vec<u32>> {
        let mut e = Vec::with_capacity(n);
        while let Some(Tok::Atom(_)) = self.peek() {
            e.push(self.natural()?);
        }
        if e.len() != n {
            return self.err(format!("expected {n} exponents, got {}", e.len()));
        }
        Ok(e)
    }

    fn sum<S: Scalar>(&mut self) -> Result<HoloSum<S>> {
        self.expect(Tok::Open)?;
        self.keyword("sum")?;
        let n = self.natural()? as usize;
        let mut out = HoloSum::zero(n);
        while self.opens("term") {
            let coeff = self.number::<S>()?;
            if !self.opens("mono") {
                return self.err("expected (mono ...)");
            }
            let mono = self.exps(n)?;
            self.expect(Tok::Close)?;
            let mut factors = Vec::new();
            while self.opens("pow") {
                if !self.opens("poly") {
                    return self.err("expected (poly ...)");
                }
                let mut base = MultiPoly::zero(n);
                while self.peek() == Some(&Tok::Open) {
                    self.pos += 1;
                    let c = self.number::<S>()?;
                    let e = self.exps(n)?;
                    self.expect(Tok::Close)?;
                    base.add_term(e, c);
                }
                self.expect(Tok::Close)?;
                let exp = self.number::<S>()?;
                self.expect(Tok::Close)?;
                factors.push(Factor::new(base, exp));
            }
            self.expect(Tok::Close)?;
            out.add_raw(coeff, mono, factors);
        }
        self.expect(Tok::Close)?;
        if self.pos != self.toks.len() {
            return self.err("trailing input");
        }
        Ok(out)
    }
}
