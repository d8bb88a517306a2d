//! Exact arithmetic over the number field Q(i, √2).
//!
//! Every amplitude that appears in a balanced beam-splitter network acting on
//! creation-operator monomials lies in this field: the splitter entries are
//! `1/√2` and `i/√2`, and products of those never leave it. An [`Amplitude`]
//! is stored as `a + b·√2` with `a`, `b` Gaussian rationals, so all four
//! coordinates are arbitrary-precision rationals and equality is exact.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Shorthand for an exact rational.
pub type Rational = BigRational;

pub fn rational(num: i64, den: i64) -> Rational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Renders a rational as `num/den`, always with an explicit denominator.
pub fn rational_string(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Lossy conversion used only for reporting.
pub fn rational_to_f64(q: &Rational) -> f64 {
    num_traits::ToPrimitive::to_f64(q).unwrap_or(f64::NAN)
}

/// A complex number with rational real and imaginary parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct GaussianRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        Self { re, im }
    }

    pub fn from_rational(re: Rational) -> Self {
        Self { re, im: Rational::zero() }
    }

    pub fn zero() -> Self {
        Self { re: Rational::zero(), im: Rational::zero() }
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    pub fn i() -> Self {
        Self { re: Rational::zero(), im: Rational::one() }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self { re: self.re.clone(), im: -&self.im }
    }

    /// `|z|²`, always a non-negative rational.
    pub fn norm_sq(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn scale(&self, q: &Rational) -> Self {
        Self { re: &self.re * q, im: &self.im * q }
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm_sq();
        Some(Self { re: &self.re / &n, im: -&self.im / &n })
    }

    /// Real part of `self · conj(other)`.
    fn re_mul_conj(&self, other: &Self) -> Rational {
        &self.re * &other.re + &self.im * &other.im
    }
}

impl Add for &GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: Self) -> GaussianRational {
        GaussianRational { re: &self.re + &rhs.re, im: &self.im + &rhs.im }
    }
}

impl Sub for &GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: Self) -> GaussianRational {
        GaussianRational { re: &self.re - &rhs.re, im: &self.im - &rhs.im }
    }
}

impl Mul for &GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: Self) -> GaussianRational {
        GaussianRational {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational { re: -&self.re, im: -&self.im }
    }
}

impl AddAssign<&GaussianRational> for GaussianRational {
    fn add_assign(&mut self, rhs: &GaussianRational) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

/// An element `rational + sqrt2·√2` of the real subfield Q(√2).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RealSqrt2 {
    pub rational: Rational,
    pub sqrt2: Rational,
}

impl RealSqrt2 {
    /// The rational value, when the √2 part vanishes.
    pub fn as_rational(&self) -> Option<&Rational> {
        self.sqrt2.is_zero().then_some(&self.rational)
    }

    pub fn to_f64(&self) -> f64 {
        rational_to_f64(&self.rational) + std::f64::consts::SQRT_2 * rational_to_f64(&self.sqrt2)
    }
}

/// An element `a + b·√2` of Q(i, √2).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Amplitude {
    pub a: GaussianRational,
    pub b: GaussianRational,
}

impl Amplitude {
    pub fn new(a: GaussianRational, b: GaussianRational) -> Self {
        Self { a, b }
    }

    pub fn zero() -> Self {
        Self { a: GaussianRational::zero(), b: GaussianRational::zero() }
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    pub fn i() -> Self {
        Self { a: GaussianRational::i(), b: GaussianRational::zero() }
    }

    pub fn from_rational(q: Rational) -> Self {
        Self { a: GaussianRational::from_rational(q), b: GaussianRational::zero() }
    }

    pub fn from_gaussian(a: GaussianRational) -> Self {
        Self { a, b: GaussianRational::zero() }
    }

    /// Builds `(re_a + i·im_a) + (re_b + i·im_b)·√2`.
    pub fn from_parts(re_a: Rational, im_a: Rational, re_b: Rational, im_b: Rational) -> Self {
        Self { a: GaussianRational::new(re_a, im_a), b: GaussianRational::new(re_b, im_b) }
    }

    /// `(√2)^k` for any integer `k`.
    pub fn sqrt2_pow(k: i32) -> Self {
        let half = k.div_euclid(2);
        let odd = k.rem_euclid(2) == 1;
        let two = BigInt::from(2);
        let power = if half >= 0 {
            Rational::from_integer(num_traits::pow(two, half as usize))
        } else {
            Rational::new(BigInt::one(), num_traits::pow(two, (-half) as usize))
        };
        if odd {
            Self { a: GaussianRational::zero(), b: GaussianRational::from_rational(power) }
        } else {
            Self::from_rational(power)
        }
    }

    /// `i^k` for any integer `k`.
    pub fn i_pow(k: i32) -> Self {
        let one = Rational::one();
        match k.rem_euclid(4) {
            0 => Self::from_rational(one),
            1 => Self::i(),
            2 => Self::from_rational(-one),
            _ => -&Self::i(),
        }
    }

    /// Exact zero test; there is no tolerance anywhere in this type.
    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self { a: self.a.conj(), b: self.b.conj() }
    }

    /// `z · conj(z)` as an element of Q(√2).
    pub fn norm_sq(&self) -> RealSqrt2 {
        let two = Rational::from_integer(BigInt::from(2));
        RealSqrt2 {
            rational: self.a.norm_sq() + two.clone() * self.b.norm_sq(),
            sqrt2: two * self.a.re_mul_conj(&self.b),
        }
    }

    pub fn scale(&self, q: &Rational) -> Self {
        Self { a: self.a.scale(q), b: self.b.scale(q) }
    }

    /// Multiplicative inverse, `None` for zero.
    ///
    /// Uses `(a + b√2)⁻¹ = (a − b√2) / (a² − 2b²)`; the denominator is a
    /// nonzero Gaussian rational because √2 is irrational over Q(i).
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let two = GaussianRational::from_rational(Rational::from_integer(BigInt::from(2)));
        let den = &(&self.a * &self.a) - &(&two * &(&self.b * &self.b));
        let den_inv = den.inv()?;
        Some(Self { a: &self.a * &den_inv, b: -&(&self.b * &den_inv) })
    }

    /// Approximate complex value `(re, im)` for reporting only.
    pub fn to_complex_f64(&self) -> (f64, f64) {
        let s = std::f64::consts::SQRT_2;
        (
            rational_to_f64(&self.a.re) + s * rational_to_f64(&self.b.re),
            rational_to_f64(&self.a.im) + s * rational_to_f64(&self.b.im),
        )
    }

    /// Canonical rendering `(p/q) + (r/s)·sqrt2 + i·[(t/u) + (v/w)·sqrt2]`.
    pub fn canonical_string(&self) -> String {
        format!(
            "({}) + ({})·sqrt2 + i·[({}) + ({})·sqrt2]",
            rational_string(&self.a.re),
            rational_string(&self.b.re),
            rational_string(&self.a.im),
            rational_string(&self.b.im)
        )
    }
}

impl Add for &Amplitude {
    type Output = Amplitude;
    fn add(self, rhs: Self) -> Amplitude {
        Amplitude { a: &self.a + &rhs.a, b: &self.b + &rhs.b }
    }
}

impl Sub for &Amplitude {
    type Output = Amplitude;
    fn sub(self, rhs: Self) -> Amplitude {
        Amplitude { a: &self.a - &rhs.a, b: &self.b - &rhs.b }
    }
}

impl Mul for &Amplitude {
    type Output = Amplitude;
    fn mul(self, rhs: Self) -> Amplitude {
        // (a1 + b1√2)(a2 + b2√2) = (a1a2 + 2b1b2) + (a1b2 + b1a2)√2
        let bb = &self.b * &rhs.b;
        Amplitude {
            a: &(&self.a * &rhs.a) + &(&bb + &bb),
            b: &(&self.a * &rhs.b) + &(&self.b * &rhs.a),
        }
    }
}

impl Neg for &Amplitude {
    type Output = Amplitude;
    fn neg(self) -> Amplitude {
        Amplitude { a: -&self.a, b: -&self.b }
    }
}

impl AddAssign<&Amplitude> for Amplitude {
    fn add_assign(&mut self, rhs: &Amplitude) {
        self.a += &rhs.a;
        self.b += &rhs.b;
    }
}

macro_rules! forward_owned_binop {
    ($tr:ident, $method:ident, $ty:ty) => {
        impl $tr for $ty {
            type Output = $ty;
            fn $method(self, rhs: $ty) -> $ty {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add, Amplitude);
forward_owned_binop!(Sub, sub, Amplitude);
forward_owned_binop!(Mul, mul, Amplitude);
forward_owned_binop!(Add, add, GaussianRational);
forward_owned_binop!(Sub, sub, GaussianRational);
forward_owned_binop!(Mul, mul, GaussianRational);

impl Neg for Amplitude {
    type Output = Amplitude;
    fn neg(self) -> Amplitude {
        -&self
    }
}

fn push_term(out: &mut String, q: &Rational, unit: &str) {
    if q.is_zero() {
        return;
    }
    let magnitude = q.abs();
    match (out.is_empty(), q.is_negative()) {
        (true, true) => out.push('-'),
        (true, false) => {}
        (false, true) => out.push_str(" - "),
        (false, false) => out.push_str(" + "),
    }
    if unit.is_empty() {
        out.push_str(&magnitude.to_string());
    } else if magnitude.is_one() {
        out.push_str(unit);
    } else {
        out.push_str(&format!("{}·{}", magnitude, unit));
    }
}

/// Compact human-readable form, e.g. `-1/8`, `1/4·i√2`.
impl fmt::Display for Amplitude {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        push_term(&mut out, &self.a.re, "");
        push_term(&mut out, &self.b.re, "√2");
        push_term(&mut out, &self.a.im, "i");
        push_term(&mut out, &self.b.im, "i√2");
        if out.is_empty() {
            out.push('0');
        }
        f.write_str(&out)
    }
}
