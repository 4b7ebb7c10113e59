//! Dual numeric tower.
//!
//! [`Qi`] holds exact Gaussian rationals (big-rational real and imaginary
//! parts) and drives the zero-tolerance identity checks. [`Complex64`] is the
//! floating tier used by quadrature and pointwise evaluation. Code that must
//! run in both tiers is generic over [`Scalar`].

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

/// Field operations shared by the exact and floating tiers.
pub trait Scalar:
    Clone
    + fmt::Debug
    + fmt::Display
    + PartialEq
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(n: i64) -> Self;
    fn from_ratio(p: i64, q: i64) -> Self;
    /// The imaginary unit.
    fn i() -> Self;
    fn is_zero(&self) -> bool;
    fn conj(&self) -> Self;
    fn to_c64(&self) -> Complex64;
    /// Total order used only to build canonical keys.
    fn total_cmp(&self, other: &Self) -> Ordering;
    /// `Some(n)` when the value is exactly the integer `n`.
    fn as_integer(&self) -> Option<i64>;
    /// Floor of a real value, available only in the exact tier.
    fn floor_real(&self) -> Option<i64>;
    /// Whether arithmetic in this tier is exact.
    fn is_exact() -> bool;
    /// Parses a real literal of this tier.
    fn parse_real(tok: &str) -> Option<Self>;
    /// Text form that [`Scalar::parse_real`] and the `(c re im)` form read back.
    fn to_sexpr(&self) -> String;

    fn powi(&self, k: i64) -> Self {
        let mut base = if k < 0 { Self::one() / self.clone() } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            base = base.clone() * base;
            e >>= 1;
        }
        acc
    }
}

/// Exact Gaussian rational `re + i·im`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Qi {
    pub re: BigRational,
    pub im: BigRational,
}

impl Qi {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Qi { re, im }
    }

    pub fn real(re: BigRational) -> Self {
        Qi { re, im: BigRational::zero() }
    }

    pub fn int(n: i64) -> Self {
        Qi::real(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn ratio(p: i64, q: i64) -> Self {
        Qi::real(BigRational::new(BigInt::from(p), BigInt::from(q)))
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// Parses `p`, `p/q`, or `-p/q` into a real exact value.
    pub fn parse_rational(s: &str) -> Option<Qi> {
        let s = s.trim();
        let (num, den) = match s.split_once('/') {
            Some((a, b)) => (a.trim(), b.trim()),
            None => (s, "1"),
        };
        let p: BigInt = num.parse().ok()?;
        let q: BigInt = den.parse().ok()?;
        if q.is_zero() {
            return None;
        }
        Some(Qi::real(BigRational::new(p, q)))
    }

    fn norm_sq(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }
}

fn rat_to_f64(r: &BigRational) -> f64 {
    // Divide in f64 after scaling so large numerators and denominators survive.
    match (r.numer().to_f64(), r.denom().to_f64()) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
        _ => {
            let shift = r.numer().bits().max(r.denom().bits()) as i64 - 60;
            let shift = shift.max(0) as u32;
            let n = (r.numer() >> shift).to_f64().unwrap_or(0.0);
            let d = (r.denom() >> shift).to_f64().unwrap_or(1.0);
            n / d
        }
    }
}

fn fmt_rat(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Qi {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", fmt_rat(&self.re))
        } else {
            write!(f, "(c {} {})", fmt_rat(&self.re), fmt_rat(&self.im))
        }
    }
}

impl Add for Qi {
    type Output = Qi;
    fn add(self, o: Qi) -> Qi {
        Qi { re: self.re + o.re, im: self.im + o.im }
    }
}

impl Sub for Qi {
    type Output = Qi;
    fn sub(self, o: Qi) -> Qi {
        Qi { re: self.re - o.re, im: self.im - o.im }
    }
}

impl Mul for Qi {
    type Output = Qi;
    fn mul(self, o: Qi) -> Qi {
        if self.im.is_zero() && o.im.is_zero() {
            return Qi::real(self.re * o.re);
        }
        Qi {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }
}

impl Div for Qi {
    type Output = Qi;
    fn div(self, o: Qi) -> Qi {
        assert!(!Scalar::is_zero(&o), "division by exact zero");
        if o.im.is_zero() {
            return Qi { re: self.re / &o.re, im: self.im / o.re };
        }
        let d = o.norm_sq();
        let num = self * o.conj();
        Qi { re: num.re / &d, im: num.im / d }
    }
}

impl Neg for Qi {
    type Output = Qi;
    fn neg(self) -> Qi {
        Qi { re: -self.re, im: -self.im }
    }
}

impl Scalar for Qi {
    fn zero() -> Self {
        Qi::int(0)
    }
    fn one() -> Self {
        Qi::int(1)
    }
    fn from_i64(n: i64) -> Self {
        Qi::int(n)
    }
    fn from_ratio(p: i64, q: i64) -> Self {
        Qi::ratio(p, q)
    }
    fn i() -> Self {
        Qi::new(BigRational::zero(), BigRational::one())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    fn conj(&self) -> Self {
        Qi { re: self.re.clone(), im: -self.im.clone() }
    }
    fn to_c64(&self) -> Complex64 {
        Complex64::new(rat_to_f64(&self.re), rat_to_f64(&self.im))
    }
    fn total_cmp(&self, other: &Self) -> Ordering {
        self.re.cmp(&other.re).then_with(|| self.im.cmp(&other.im))
    }
    fn as_integer(&self) -> Option<i64> {
        if self.im.is_zero() && self.re.is_integer() {
            self.re.numer().to_i64()
        } else {
            None
        }
    }
    fn floor_real(&self) -> Option<i64> {
        if !self.im.is_zero() {
            return None;
        }
        let (q, _) = self.re.numer().div_mod_floor(self.re.denom());
        q.to_i64()
    }
    fn is_exact() -> bool {
        true
    }
    fn parse_real(tok: &str) -> Option<Self> {
        Qi::parse_rational(tok)
    }
    fn to_sexpr(&self) -> String {
        self.to_string()
    }
}

impl Scalar for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn from_i64(n: i64) -> Self {
        Complex64::new(n as f64, 0.0)
    }
    fn from_ratio(p: i64, q: i64) -> Self {
        Complex64::new(p as f64 / q as f64, 0.0)
    }
    fn i() -> Self {
        Complex64::new(0.0, 1.0)
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn conj(&self) -> Self {
        Complex64::conj(self)
    }
    fn to_c64(&self) -> Complex64 {
        *self
    }
    fn total_cmp(&self, other: &Self) -> Ordering {
        self.re.total_cmp(&other.re).then_with(|| self.im.total_cmp(&other.im))
    }
    fn as_integer(&self) -> Option<i64> {
        if self.im == 0.0 && self.re.fract() == 0.0 && self.re.abs() < 9.0e15 {
            Some(self.re as i64)
        } else {
            None
        }
    }
    fn floor_real(&self) -> Option<i64> {
        None
    }
    fn is_exact() -> bool {
        false
    }
    fn parse_real(tok: &str) -> Option<Self> {
        if let Ok(x) = tok.parse::<f64>() {
            return Some(Complex64::new(x, 0.0));
        }
        Qi::parse_rational(tok).map(|q| q.to_c64())
    }
    fn to_sexpr(&self) -> String {
        if self.im == 0.0 {
            format!("{:?}", self.re)
        } else {
            format!("(c {:?} {:?})", self.re, self.im)
        }
    }
}
