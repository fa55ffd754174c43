//! Scalars used throughout the crate.
//!
//! In exact mode a scalar is a Laurent polynomial in the formal symbol `τ`
//! (standing for `2π`) whose coefficients are Gaussian rationals. This keeps
//! Chern normalisations such as `1/(iτ)` exact. Float mode carries an
//! ordinary `Complex<f64>`; mixing the two yields a float.

use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Q = BigRational;
pub type GaussQ = Complex<BigRational>;
pub type C64 = Complex<f64>;

/// Numerical value substituted for `τ` when an exact scalar is evaluated.
pub const TAU: f64 = core::f64::consts::TAU;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qr(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn q_to_f64(x: &Q) -> f64 {
    // BigRational::to_f64 handles huge numerators/denominators gracefully.
    x.to_f64().unwrap_or_else(|| {
        let n = x.numer().to_f64().unwrap_or(f64::NAN);
        let d = x.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

fn gauss_is_zero(c: &GaussQ) -> bool {
    c.re.is_zero() && c.im.is_zero()
}

/// Laurent polynomial in `τ` with Gaussian-rational coefficients.
/// Terms are sorted by exponent and never zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct TauPoly {
    terms: Vec<(i32, GaussQ)>,
}

impl TauPoly {
    pub fn zero() -> Self {
        TauPoly { terms: Vec::new() }
    }

    pub fn monomial(power: i32, coeff: GaussQ) -> Self {
        if gauss_is_zero(&coeff) {
            return Self::zero();
        }
        TauPoly {
            terms: alloc::vec![(power, coeff)],
        }
    }

    /// Builds from arbitrary (possibly unsorted, repeated, zero) terms.
    pub fn from_terms(mut raw: Vec<(i32, GaussQ)>) -> Self {
        raw.sort_by(|a, b| a.0.cmp(&b.0));
        let mut terms: Vec<(i32, GaussQ)> = Vec::with_capacity(raw.len());
        for (p, c) in raw {
            match terms.last_mut() {
                Some(last) if last.0 == p => last.1 = &last.1 + &c,
                _ => terms.push((p, c)),
            }
        }
        terms.retain(|t| !gauss_is_zero(&t.1));
        TauPoly { terms }
    }

    pub fn terms(&self) -> &[(i32, GaussQ)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn merge(&self, other: &Self, sign: bool) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() || j < other.terms.len() {
            let ord = match (self.terms.get(i), other.terms.get(j)) {
                (Some(a), Some(b)) => a.0.cmp(&b.0),
                (Some(_), None) => Ordering::Less,
                _ => Ordering::Greater,
            };
            match ord {
                Ordering::Less => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    let (p, c) = &other.terms[j];
                    out.push((*p, if sign { -c.clone() } else { c.clone() }));
                    j += 1;
                }
                Ordering::Equal => {
                    let (p, a) = &self.terms[i];
                    let b = &other.terms[j].1;
                    let c = if sign { a - b } else { a + b };
                    if !gauss_is_zero(&c) {
                        out.push((*p, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        TauPoly { terms: out }
    }

    fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if self.terms.len() == 1 && other.terms.len() == 1 {
            let (p, a) = &self.terms[0];
            let (r, b) = &other.terms[0];
            return Self::monomial(p + r, a * b);
        }
        let mut raw = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (p, a) in &self.terms {
            for (r, b) in &other.terms {
                raw.push((p + r, a * b));
            }
        }
        Self::from_terms(raw)
    }

    fn eval(&self) -> C64 {
        let mut acc = C64::new(0.0, 0.0);
        for (p, c) in &self.terms {
            let t = libm::pow(TAU, *p as f64);
            acc += C64::new(q_to_f64(&c.re) * t, q_to_f64(&c.im) * t);
        }
        acc
    }
}

#[derive(Clone, Debug)]
pub enum Scalar {
    Exact(TauPoly),
    Float(C64),
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Exact(TauPoly::zero())
    }

    pub fn one() -> Self {
        Self::from_q(Q::one())
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_q(q(n))
    }

    pub fn from_q(x: Q) -> Self {
        Scalar::Exact(TauPoly::monomial(0, GaussQ::new(x, Q::zero())))
    }

    pub fn from_gauss(c: GaussQ) -> Self {
        Scalar::Exact(TauPoly::monomial(0, c))
    }

    pub fn ratio(n: i64, d: i64) -> Self {
        Self::from_q(qr(n, d))
    }

    /// `c · τ^power`
    pub fn tau_monomial(power: i32, c: GaussQ) -> Self {
        Scalar::Exact(TauPoly::monomial(power, c))
    }

    pub fn tau() -> Self {
        Self::tau_monomial(1, GaussQ::new(Q::one(), Q::zero()))
    }

    pub fn i() -> Self {
        Self::from_gauss(GaussQ::new(Q::zero(), Q::one()))
    }

    pub fn float(x: f64) -> Self {
        Scalar::Float(C64::new(x, 0.0))
    }

    pub fn complex(c: C64) -> Self {
        Scalar::Float(c)
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Exact(t) => t.is_zero(),
            Scalar::Float(c) => c.re == 0.0 && c.im == 0.0,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Scalar::Exact(_))
    }

    pub fn to_c64(&self) -> C64 {
        match self {
            Scalar::Exact(t) => t.eval(),
            Scalar::Float(c) => *c,
        }
    }

    pub fn to_float(&self) -> Scalar {
        Scalar::Float(self.to_c64())
    }

    /// Absolute value of the numerical evaluation.
    pub fn abs(&self) -> f64 {
        self.to_c64().norm()
    }

    pub fn re(&self) -> Scalar {
        match self {
            Scalar::Exact(t) => Scalar::Exact(TauPoly::from_terms(
                t.terms
                    .iter()
                    .map(|(p, c)| (*p, GaussQ::new(c.re.clone(), Q::zero())))
                    .collect(),
            )),
            Scalar::Float(c) => Scalar::Float(C64::new(c.re, 0.0)),
        }
    }

    pub fn im(&self) -> Scalar {
        match self {
            Scalar::Exact(t) => Scalar::Exact(TauPoly::from_terms(
                t.terms
                    .iter()
                    .map(|(p, c)| (*p, GaussQ::new(c.im.clone(), Q::zero())))
                    .collect(),
            )),
            Scalar::Float(c) => Scalar::Float(C64::new(c.im, 0.0)),
        }
    }

    pub fn conj(&self) -> Scalar {
        match self {
            Scalar::Exact(t) => Scalar::Exact(TauPoly {
                terms: t.terms.iter().map(|(p, c)| (*p, c.conj())).collect(),
            }),
            Scalar::Float(c) => Scalar::Float(c.conj()),
        }
    }

    /// `true` when the imaginary part vanishes (exactly, or to 0.0 in float mode).
    pub fn is_real(&self) -> bool {
        match self {
            Scalar::Exact(t) => t.terms.iter().all(|(_, c)| c.im.is_zero()),
            Scalar::Float(c) => c.im == 0.0,
        }
    }

    /// The rational value if this is an exact real constant (no τ).
    pub fn as_q(&self) -> Option<Q> {
        match self {
            Scalar::Exact(t) => match t.terms.as_slice() {
                [] => Some(Q::zero()),
                [(0, c)] if c.im.is_zero() => Some(c.re.clone()),
                _ => None,
            },
            Scalar::Float(_) => None,
        }
    }

    /// The integer value if this is an exact integer constant.
    pub fn as_integer(&self) -> Option<BigInt> {
        self.as_q().filter(|x| x.is_integer()).map(|x| x.to_integer())
    }

    pub fn mul_q(&self, x: &Q) -> Scalar {
        if x.is_zero() {
            return Scalar::zero();
        }
        match self {
            Scalar::Exact(t) => Scalar::Exact(TauPoly {
                terms: t
                    .terms
                    .iter()
                    .map(|(p, c)| (*p, GaussQ::new(&c.re * x, &c.im * x)))
                    .collect(),
            }),
            Scalar::Float(c) => Scalar::Float(c * q_to_f64(x)),
        }
    }

    /// Multiplicative inverse. Exact scalars are invertible only when they are a
    /// single `c·τ^p` term.
    pub fn inv(&self) -> Option<Scalar> {
        match self {
            Scalar::Exact(t) => match t.terms.as_slice() {
                [(p, c)] => {
                    let n = &c.re * &c.re + &c.im * &c.im;
                    let inv = GaussQ::new(&c.re / &n, -(&c.im / &n));
                    Some(Scalar::tau_monomial(-p, inv))
                }
                _ => None,
            },
            Scalar::Float(c) => {
                if c.norm() == 0.0 {
                    None
                } else {
                    Some(Scalar::Float(c.inv()))
                }
            }
        }
    }

    pub fn pow(&self, n: u32) -> Scalar {
        let mut acc = Scalar::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// `|a - b| <= tol · (1 + |a|)` on numerical values.
    pub fn approx_eq(&self, other: &Scalar, tol: f64) -> bool {
        let a = self.to_c64();
        let b = other.to_c64();
        (a - b).norm() <= tol * (1.0 + a.norm())
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => a == b,
            _ => self.to_c64() == other.to_c64(),
        }
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl From<Q> for Scalar {
    fn from(x: Q) -> Self {
        Scalar::from_q(x)
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &'a Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Exact(a), Scalar::Exact(b)) => Scalar::Exact(a.merge(b, false)),
            _ => Scalar::Float(self.to_c64() + rhs.to_c64()),
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &'a Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Exact(a), Scalar::Exact(b)) => Scalar::Exact(a.merge(b, true)),
            _ => Scalar::Float(self.to_c64() - rhs.to_c64()),
        }
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &'a Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Exact(a), Scalar::Exact(b)) => Scalar::Exact(a.mul(b)),
            _ => Scalar::Float(self.to_c64() * rhs.to_c64()),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Exact(t) => Scalar::Exact(TauPoly {
                terms: t.terms.iter().map(|(p, c)| (*p, -c.clone())).collect(),
            }),
            Scalar::Float(c) => Scalar::Float(-c),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &'a Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = &*self - rhs;
    }
}

fn fmt_q(x: &Q, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if x.is_integer() {
        write!(f, "{}", x.numer())
    } else {
        write!(f, "{}/{}", x.numer(), x.denom())
    }
}

/// Canonical text form.
///
/// Exact: `[c@p;c@p;...]` where `c` is `re`, `re+imi` or `re-imi` and `p` the
/// power of `τ`. Float: `<f:re,im>` using the shortest round-trip decimal form.
impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Exact(t) => {
                f.write_str("[")?;
                if t.is_zero() {
                    f.write_str("0@0")?;
                }
                for (n, (p, c)) in t.terms.iter().enumerate() {
                    if n > 0 {
                        f.write_str(";")?;
                    }
                    fmt_q(&c.re, f)?;
                    if !c.im.is_zero() {
                        if c.im.is_negative() {
                            f.write_str("-")?;
                            fmt_q(&(-c.im.clone()), f)?;
                        } else {
                            f.write_str("+")?;
                            fmt_q(&c.im, f)?;
                        }
                        f.write_str("i")?;
                    }
                    write!(f, "@{}", p)?;
                }
                f.write_str("]")
            }
            Scalar::Float(c) => write!(f, "<f:{:?},{:?}>", c.re, c.im),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tau_arithmetic_is_exact() {
        let t = Scalar::tau();
        let inv = t.inv().unwrap();
        assert_eq!(&t * &inv, Scalar::one());
        let s = &(&t + &Scalar::one()) * &(&t - &Scalar::one());
        // τ² - 1
        let expected = &(&t * &t) - &Scalar::one();
        assert_eq!(s, expected);
        assert!((&s - &expected).is_zero());
    }

    #[test]
    fn i_over_i_tau() {
        // (i a τ) / (i τ) = a
        let a = Scalar::ratio(3, 7);
        let x = &(&Scalar::i() * &a) * &Scalar::tau();
        let denom = &Scalar::i() * &Scalar::tau();
        assert_eq!(&x * &denom.inv().unwrap(), a);
    }

    #[test]
    fn float_mixing_evaluates_tau() {
        let x = &Scalar::tau() + &Scalar::float(1.0);
        assert!((x.to_c64().re - (TAU + 1.0)).abs() < 1e-15);
        assert!(!x.is_exact());
    }

    #[test]
    fn non_monomial_has_no_exact_inverse() {
        let x = &Scalar::tau() + &Scalar::one();
        assert!(x.inv().is_none());
    }

    #[test]
    fn display_forms() {
        let x = &(&Scalar::ratio(1, 2) * &Scalar::tau().inv().unwrap())
            + &Scalar::from_gauss(GaussQ::new(q(2), qr(-3, 4)));
        assert_eq!(alloc::format!("{}", x), "[1/2@-1;2-3/4i@0]");
        assert_eq!(alloc::format!("{}", Scalar::zero()), "[0@0]");
    }
}
