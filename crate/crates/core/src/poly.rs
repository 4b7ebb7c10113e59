//! Dense univariate and sparse multivariate polynomials over a [`Scalar`].

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::scalar::Scalar;

/// Univariate polynomial in the power basis; `coeffs[k]` multiplies `t^k`.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyOneVar<S> {
    coeffs: Vec<S>,
}

impl<S: Scalar> PolyOneVar<S> {
    pub fn new(mut coeffs: Vec<S>) -> Self {
        while coeffs.len() > 1 && coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(S::zero());
        }
        PolyOneVar { coeffs }
    }

    pub fn zero() -> Self {
        Self::new(vec![S::zero()])
    }

    pub fn constant(c: S) -> Self {
        Self::new(vec![c])
    }

    /// The identity polynomial `t`.
    pub fn t() -> Self {
        Self::new(vec![S::zero(), S::one()])
    }

    /// `a + b t`.
    pub fn linear(a: S, b: S) -> Self {
        Self::new(vec![a, b])
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> S {
        self.coeffs.get(k).cloned().unwrap_or_else(S::zero)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_zero()
    }

    /// Horner evaluation in the scalar's own tier.
    pub fn eval(&self, t: &S) -> S {
        let mut acc = S::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * t.clone() + c.clone();
        }
        acc
    }

    pub fn eval_c64(&self, t: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            acc = acc * t + c.to_c64();
        }
        acc
    }

    pub fn eval_f64(&self, t: f64) -> Complex64 {
        self.eval_c64(Complex64::new(t, 0.0))
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() == 1 {
            return Self::zero();
        }
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.clone() * S::from_i64(k as i64))
                .collect(),
        )
    }

    pub fn scale(&self, c: &S) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::constant(S::one());
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Embeds the polynomial as a function of variable `var` among `nvars`.
    pub fn to_multi(&self, nvars: usize, var: usize) -> MultiPoly<S> {
        let mut out = MultiPoly::zero(nvars);
        for (k, c) in self.coeffs.iter().enumerate() {
            let mut e = vec![0u32; nvars];
            e[var] = k as u32;
            out.add_term(e, c.clone());
        }
        out
    }
}

impl<S: Scalar> Add for &PolyOneVar<S> {
    type Output = PolyOneVar<S>;
    fn add(self, o: &PolyOneVar<S>) -> PolyOneVar<S> {
        let n = self.coeffs.len().max(o.coeffs.len());
        PolyOneVar::new((0..n).map(|k| self.coeff(k) + o.coeff(k)).collect())
    }
}

impl<S: Scalar> Sub for &PolyOneVar<S> {
    type Output = PolyOneVar<S>;
    fn sub(self, o: &PolyOneVar<S>) -> PolyOneVar<S> {
        let n = self.coeffs.len().max(o.coeffs.len());
        PolyOneVar::new((0..n).map(|k| self.coeff(k) - o.coeff(k)).collect())
    }
}

impl<S: Scalar> Mul for &PolyOneVar<S> {
    type Output = PolyOneVar<S>;
    fn mul(self, o: &PolyOneVar<S>) -> PolyOneVar<S> {
        let mut out = vec![S::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        PolyOneVar::new(out)
    }
}

impl<S: Scalar> fmt::Display for PolyOneVar<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() && self.coeffs.len() > 1 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*t")?,
                _ => write!(f, "{c}*t^{k}")?,
            }
        }
        Ok(())
    }
}

/// Sparse polynomial in `nvars` variables keyed by exponent vectors.
#[derive(Clone, Debug, PartialEq)]
pub struct MultiPoly<S> {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, S>,
}

/// Bivariate polynomial; monomial `x^i y^j` is keyed by `[i, j]`.
pub type PolyTwoVar<S> = MultiPoly<S>;

impl<S: Scalar> MultiPoly<S> {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: S) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn var(nvars: usize, k: usize) -> Self {
        let mut e = vec![0; nvars];
        e[k] = 1;
        Self::monomial(e, S::one())
    }

    pub fn monomial(exps: Vec<u32>, c: S) -> Self {
        let mut p = Self::zero(exps.len());
        p.add_term(exps, c);
        p
    }

    /// Builds from `(exponents, coefficient)` pairs, merging duplicates.
    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Vec<u32>, S)>) -> Self {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &S)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exps: &[u32]) -> S {
        self.terms.get(exps).cloned().unwrap_or_else(S::zero)
    }

    pub fn add_term(&mut self, exps: Vec<u32>, c: S) {
        assert_eq!(exps.len(), self.nvars, "exponent vector arity");
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&exps) {
            Some(v) => {
                let s = v.clone() + c;
                if s.is_zero() {
                    self.terms.remove(&exps);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(exps, c);
            }
        }
    }

    /// The constant value if the polynomial has no non-constant monomial.
    pub fn as_constant(&self) -> Option<S> {
        match self.terms.len() {
            0 => Some(S::zero()),
            1 => self.terms.get(&vec![0; self.nvars]).cloned(),
            _ => None,
        }
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|e| e[var]).max().unwrap_or(0)
    }

    /// True when every monomial has total degree `d`.
    pub fn is_homogeneous(&self, d: u32) -> bool {
        self.terms.keys().all(|e| e.iter().sum::<u32>() == d)
    }

    pub fn scale(&self, c: &S) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, a)| (e.clone(), a.clone() * c.clone())).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::constant(self.nvars, S::one());
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn derivative(&self, var: usize) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[var] == 0 {
                continue;
            }
            let mut f = e.clone();
            f[var] -= 1;
            out.add_term(f, c.clone() * S::from_i64(e[var] as i64));
        }
        out
    }

    pub fn eval_c64(&self, point: &[Complex64]) -> Complex64 {
        assert_eq!(point.len(), self.nvars);
        let mut acc = Complex64::new(0.0, 0.0);
        for (e, c) in &self.terms {
            let mut m = c.to_c64();
            for (x, &k) in point.iter().zip(e) {
                if k > 0 {
                    m *= x.powu(k);
                }
            }
            acc += m;
        }
        acc
    }

    pub fn eval(&self, point: &[S]) -> S {
        assert_eq!(point.len(), self.nvars);
        let mut acc = S::zero();
        for (e, c) in &self.terms {
            let mut m = c.clone();
            for (x, &k) in point.iter().zip(e) {
                if k > 0 {
                    m = m * x.powi(k as i64);
                }
            }
            acc = acc + m;
        }
        acc
    }

    /// Composition: variable `k` is replaced by `images[k]`, all of which
    /// share one target arity.
    pub fn substitute(&self, images: &[MultiPoly<S>]) -> MultiPoly<S> {
        assert_eq!(images.len(), self.nvars);
        let target = images.first().map(|p| p.nvars).unwrap_or(0);
        let mut cache: Vec<Vec<MultiPoly<S>>> = images
            .iter()
            .map(|p| vec![MultiPoly::constant(target, S::one()), p.clone()])
            .collect();
        let mut out = MultiPoly::zero(target);
        for (e, c) in &self.terms {
            let mut m = MultiPoly::constant(target, c.clone());
            for (k, &d) in e.iter().enumerate() {
                if d == 0 {
                    continue;
                }
                while cache[k].len() <= d as usize {
                    let next = cache[k].last().map(|last| last * &images[k]).expect("seeded");
                    cache[k].push(next);
                }
                m = &m * &cache[k][d as usize];
            }
            out = &out + &m;
        }
        out
    }

    /// Long division by a divisor whose highest power of `var` has a unit
    /// constant coefficient. Returns `(quotient, remainder)` with
    /// `deg_var(remainder) < deg_var(divisor)`.
    pub fn divrem_in_var(&self, divisor: &MultiPoly<S>, var: usize) -> (MultiPoly<S>, MultiPoly<S>) {
        let d = divisor.degree_in(var);
        let lead: Vec<(&Vec<u32>, &S)> = divisor.terms().filter(|(e, _)| e[var] == d).collect();
        assert!(
            lead.len() == 1 && lead[0].0.iter().enumerate().all(|(k, &x)| k == var || x == 0),
            "divisor must have a constant leading coefficient in the division variable"
        );
        let lc = lead[0].1.clone();
        let mut q = MultiPoly::zero(self.nvars);
        let mut r = self.clone();
        loop {
            let top = r.terms().filter(|(e, _)| e[var] >= d).map(|(e, c)| (e.clone(), c.clone())).next();
            let Some((e, c)) = top else { break };
            let mut shift = e.clone();
            shift[var] -= d;
            let factor = MultiPoly::monomial(shift, c / lc.clone());
            r = &r - &(&factor * divisor);
            q = &q + &factor;
        }
        (q, r)
    }

    pub(crate) fn cmp_total(&self, other: &Self) -> Ordering {
        self.nvars.cmp(&other.nvars).then_with(|| {
            let mut a = self.terms.iter();
            let mut b = other.terms.iter();
            loop {
                match (a.next(), b.next()) {
                    (None, None) => return Ordering::Equal,
                    (None, Some(_)) => return Ordering::Less,
                    (Some(_), None) => return Ordering::Greater,
                    (Some((ea, ca)), Some((eb, cb))) => {
                        let o = ea.cmp(eb).then_with(|| ca.total_cmp(cb));
                        if o != Ordering::Equal {
                            return o;
                        }
                    }
                }
            }
        })
    }
}

impl<S: Scalar> Add for &MultiPoly<S> {
    type Output = MultiPoly<S>;
    fn add(self, o: &MultiPoly<S>) -> MultiPoly<S> {
        assert_eq!(self.nvars, o.nvars);
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl<S: Scalar> Sub for &MultiPoly<S> {
    type Output = MultiPoly<S>;
    fn sub(self, o: &MultiPoly<S>) -> MultiPoly<S> {
        assert_eq!(self.nvars, o.nvars);
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }
}

impl<S: Scalar> Neg for &MultiPoly<S> {
    type Output = MultiPoly<S>;
    fn neg(self) -> MultiPoly<S> {
        self.scale(&-S::one())
    }
}

impl<S: Scalar> Mul for &MultiPoly<S> {
    type Output = MultiPoly<S>;
    fn mul(self, o: &MultiPoly<S>) -> MultiPoly<S> {
        assert_eq!(self.nvars, o.nvars);
        let mut out = MultiPoly::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &o.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca.clone() * cb.clone());
            }
        }
        out
    }
}

impl<S: Scalar> fmt::Display for MultiPoly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{c}")?;
            for (k, &d) in e.iter().enumerate() {
                match d {
                    0 => {}
                    1 => write!(f, "*z{}", k + 1)?,
                    _ => write!(f, "*z{}^{}", k + 1, d)?,
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Qi;

    #[test]
    fn univariate_ops() {
        let p = PolyOneVar::new(vec![Qi::int(1), Qi::int(2), Qi::int(0)]);
        assert_eq!(p.degree(), 1);
        let q = &p * &p;
        assert_eq!(q.coeffs(), &[Qi::int(1), Qi::int(4), Qi::int(4)]);
        assert_eq!(q.derivative().coeffs(), &[Qi::int(4), Qi::int(8)]);
        assert_eq!(q.eval(&Qi::int(1)), Qi::int(9));
    }

    #[test]
    fn multivariate_division() {
        // Q = z1^2 - z2^2, P = z1^3 = z1 Q + z1 z2^2
        let z1 = MultiPoly::<Qi>::var(2, 0);
        let z2 = MultiPoly::<Qi>::var(2, 1);
        let q = &(&z1 * &z1) - &(&z2 * &z2);
        let p = z1.pow(3);
        let (quo, rem) = p.divrem_in_var(&q, 0);
        assert_eq!(quo, z1);
        assert_eq!(rem, &z1 * &(&z2 * &z2));
    }

    #[test]
    fn substitution_onto_diagonal() {
        let z1 = MultiPoly::<Qi>::var(2, 0);
        let z2 = MultiPoly::<Qi>::var(2, 1);
        let p = &z1 - &z2;
        let t = MultiPoly::<Qi>::var(1, 0);
        assert!(p.substitute(&[t.clone(), t]).is_zero());
    }
}
