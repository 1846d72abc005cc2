//! Gaussian rationals: the exact coefficient field of every series in the crate.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use malachite_base::num::arithmetic::traits::Reciprocal;
use malachite_base::num::basic::traits::{One, Zero};
use malachite_q::Rational;

use crate::error::Error;

/// An exact complex number `re + i*im` with rational parts.
///
/// Both parts are `malachite` rationals, which are always kept in lowest terms
/// with a positive denominator, so derived equality and hashing are structural.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussQ {
    pub re: Rational,
    pub im: Rational,
}

impl GaussQ {
    pub fn new(re: Rational, im: Rational) -> Self {
        GaussQ { re, im }
    }

    pub fn zero() -> Self {
        GaussQ { re: Rational::ZERO, im: Rational::ZERO }
    }

    pub fn one() -> Self {
        GaussQ { re: Rational::ONE, im: Rational::ZERO }
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        GaussQ { re: Rational::ZERO, im: Rational::ONE }
    }

    pub fn real(re: Rational) -> Self {
        GaussQ { re, im: Rational::ZERO }
    }

    pub fn imag(im: Rational) -> Self {
        GaussQ { re: Rational::ZERO, im }
    }

    pub fn from_int(n: i64) -> Self {
        GaussQ::real(Rational::from(n))
    }

    /// `num/den + 0i`. Panics if `den == 0`.
    pub fn ratio(num: i64, den: i64) -> Self {
        GaussQ::real(Rational::from_signeds(num, den))
    }

    /// `(a/b) + (c/d) i`.
    pub fn from_parts(a: i64, b: i64, c: i64, d: i64) -> Self {
        GaussQ::new(Rational::from_signeds(a, b), Rational::from_signeds(c, d))
    }

    pub fn is_zero(&self) -> bool {
        self.re == Rational::ZERO && self.im == Rational::ZERO
    }

    pub fn is_one(&self) -> bool {
        self.re == Rational::ONE && self.im == Rational::ZERO
    }

    pub fn is_real(&self) -> bool {
        self.im == Rational::ZERO
    }

    pub fn conj(&self) -> Self {
        GaussQ { re: self.re.clone(), im: -&self.im }
    }

    /// `|a|^2 = re^2 + im^2`.
    pub fn norm_sqr(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Result<Self, Error> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.im == Rational::ZERO {
            return Ok(GaussQ::real((&self.re).reciprocal()));
        }
        let n = self.norm_sqr().reciprocal();
        Ok(GaussQ { re: &self.re * &n, im: -(&self.im * n) })
    }

    pub fn checked_div(&self, rhs: &GaussQ) -> Result<Self, Error> {
        Ok(self * &rhs.inv()?)
    }

    pub fn scale(&self, r: &Rational) -> Self {
        GaussQ { re: &self.re * r, im: &self.im * r }
    }

    /// Multiplication by `i`.
    pub fn mul_i(&self) -> Self {
        GaussQ { re: -&self.im, im: self.re.clone() }
    }

    /// `self += a * b`, skipping the products that vanish when either factor is real
    /// or purely imaginary. This is the inner loop of series multiplication.
    pub fn add_mul(&mut self, a: &GaussQ, b: &GaussQ) {
        let a_re = a.re != Rational::ZERO;
        let a_im = a.im != Rational::ZERO;
        let b_re = b.re != Rational::ZERO;
        let b_im = b.im != Rational::ZERO;
        if a_re && b_re {
            self.re += &a.re * &b.re;
        }
        if a_im && b_im {
            self.re -= &a.im * &b.im;
        }
        if a_re && b_im {
            self.im += &a.re * &b.im;
        }
        if a_im && b_re {
            self.im += &a.im * &b.re;
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = GaussQ::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Canonical string of a rational: `p` for integers, `p/q` otherwise.
    pub fn rational_string(r: &Rational) -> String {
        r.to_string()
    }

    pub fn parse_rational(s: &str) -> Result<Rational, Error> {
        let t = s.trim();
        Rational::from_str(t).map_err(|_| Error::Parse(format!("not an exact rational: {s:?}")))
    }
}

impl fmt::Debug for GaussQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for GaussQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re == Rational::ZERO, self.im == Rational::ZERO) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => write!(f, "({})i", self.im),
            (false, false) => write!(f, "{} + ({})i", self.re, self.im),
        }
    }
}

impl From<i64> for GaussQ {
    fn from(n: i64) -> Self {
        GaussQ::from_int(n)
    }
}

impl From<Rational> for GaussQ {
    fn from(r: Rational) -> Self {
        GaussQ::real(r)
    }
}

impl<'a> Add<&'a GaussQ> for &'a GaussQ {
    type Output = GaussQ;
    fn add(self, rhs: &GaussQ) -> GaussQ {
        GaussQ { re: &self.re + &rhs.re, im: &self.im + &rhs.im }
    }
}

impl Add for GaussQ {
    type Output = GaussQ;
    fn add(self, rhs: GaussQ) -> GaussQ {
        GaussQ { re: self.re + rhs.re, im: self.im + rhs.im }
    }
}

impl<'a> Sub<&'a GaussQ> for &'a GaussQ {
    type Output = GaussQ;
    fn sub(self, rhs: &GaussQ) -> GaussQ {
        GaussQ { re: &self.re - &rhs.re, im: &self.im - &rhs.im }
    }
}

impl Sub for GaussQ {
    type Output = GaussQ;
    fn sub(self, rhs: GaussQ) -> GaussQ {
        GaussQ { re: self.re - rhs.re, im: self.im - rhs.im }
    }
}

impl<'a> Mul<&'a GaussQ> for &'a GaussQ {
    type Output = GaussQ;
    fn mul(self, rhs: &GaussQ) -> GaussQ {
        let mut out = GaussQ::zero();
        out.add_mul(self, rhs);
        out
    }
}

impl Mul for GaussQ {
    type Output = GaussQ;
    fn mul(self, rhs: GaussQ) -> GaussQ {
        &self * &rhs
    }
}

/// Panics on a zero divisor; use [`GaussQ::checked_div`] to get an error instead.
impl<'a> Div<&'a GaussQ> for &'a GaussQ {
    type Output = GaussQ;
    fn div(self, rhs: &GaussQ) -> GaussQ {
        self.checked_div(rhs).expect("GaussQ division by zero")
    }
}

impl Div for GaussQ {
    type Output = GaussQ;
    fn div(self, rhs: GaussQ) -> GaussQ {
        &self / &rhs
    }
}

impl Neg for GaussQ {
    type Output = GaussQ;
    fn neg(self) -> GaussQ {
        GaussQ { re: -self.re, im: -self.im }
    }
}

impl<'a> Neg for &'a GaussQ {
    type Output = GaussQ;
    fn neg(self) -> GaussQ {
        GaussQ { re: -&self.re, im: -&self.im }
    }
}

impl<'a> AddAssign<&'a GaussQ> for GaussQ {
    fn add_assign(&mut self, rhs: &GaussQ) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl AddAssign for GaussQ {
    fn add_assign(&mut self, rhs: GaussQ) {
        self.re += rhs.re;
        self.im += rhs.im;
    }
}

impl<'a> SubAssign<&'a GaussQ> for GaussQ {
    fn sub_assign(&mut self, rhs: &GaussQ) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl<'a> MulAssign<&'a GaussQ> for GaussQ {
    fn mul_assign(&mut self, rhs: &GaussQ) {
        *self = &*self * rhs;
    }
}
