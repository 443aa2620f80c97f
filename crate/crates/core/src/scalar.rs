//! Scalar fields: exact Gaussian rationals `a + bi` with `a, b ∈ ℚ`, and
//! binary64 complex numbers compared up to a tolerance.
//!
//! Both implement [`Scalar`], so every matrix, polynomial and series routine
//! in this crate is generic over the backend. A single computation is always
//! monomorphised over one scalar type, so backends never mix.

use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Default comparison tolerance of the float backend.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// Distance from an integer tolerated when rounding float traces and series
/// coefficients. Kept well above [`DEFAULT_TOLERANCE`] because it absorbs error
/// accumulated over `|G|` terms and several degrees.
pub const ROUNDING_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BackendKind {
    Exact,
    Float,
}

impl fmt::Display for BackendKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BackendKind::Exact => f.write_str("exact"),
            BackendKind::Float => f.write_str("float"),
        }
    }
}

/// Backend tag plus the tolerance every approximate decision derives from.
/// The exact backend ignores the tolerance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScalarBackend {
    pub kind: BackendKind,
    pub tolerance: f64,
}

impl ScalarBackend {
    pub fn exact() -> Self {
        ScalarBackend {
            kind: BackendKind::Exact,
            tolerance: 0.0,
        }
    }

    pub fn float(tolerance: f64) -> Self {
        ScalarBackend {
            kind: BackendKind::Float,
            tolerance,
        }
    }

    pub fn for_scalar<S: Scalar>(tolerance: f64) -> Self {
        match S::KIND {
            BackendKind::Exact => Self::exact(),
            BackendKind::Float => Self::float(tolerance),
        }
    }
}

/// The field contract shared by both backends.
///
/// Arithmetic goes through `*_ref` methods so big-integer operands are never
/// cloned just to be consumed.
pub trait Scalar: Clone + fmt::Debug + fmt::Display + PartialEq + Send + Sync + 'static {
    /// Hash key used to bucket values that compare equal under a tolerance.
    type Key: Hash + Eq + Clone + Send + Sync;

    const KIND: BackendKind;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(n: i64) -> Self;
    /// `num / den`; `den` must be nonzero.
    fn from_ratio(num: i64, den: i64) -> Self;

    fn add_ref(&self, rhs: &Self) -> Self;
    fn sub_ref(&self, rhs: &Self) -> Self;
    fn mul_ref(&self, rhs: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    fn div_ref(&self, rhs: &Self) -> Result<Self>;
    fn conj(&self) -> Self;

    /// Exact zero test (`0.0` for floats).
    fn is_zero(&self) -> bool;
    /// Zero up to `tol`. Identical to [`Scalar::is_zero`] on the exact backend.
    fn is_negligible(&self, tol: f64) -> bool;
    /// Modulus as a float; used for pivot selection and diagnostics only.
    fn magnitude(&self) -> f64;
    fn to_complex64(&self) -> Complex64;
    fn hash_key(&self, tol: f64) -> Self::Key;
    /// The integer this value denotes, if any. Float values must be within
    /// `tol` of a real integer.
    fn round_to_integer(&self, tol: f64) -> Option<i64>;

    fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.sub_ref(other).is_negligible(tol)
    }

    fn is_one(&self) -> bool {
        *self == Self::one()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Div,
}

pub fn field_arith<S: Scalar>(a: &S, b: &S, op: FieldOp) -> Result<S> {
    Ok(match op {
        FieldOp::Add => a.add_ref(b),
        FieldOp::Sub => a.sub_ref(b),
        FieldOp::Mul => a.mul_ref(b),
        FieldOp::Div => a.div_ref(b)?,
    })
}

// ---------------------------------------------------------------------------
// Gaussian rationals

/// Exact complex number with rational real and imaginary parts.
///
/// `BigRational` keeps both parts reduced with a positive denominator after
/// every operation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussianRational {
    re: BigRational,
    im: BigRational,
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussianRational { re, im }
    }

    pub fn from_parts(re: (i64, i64), im: (i64, i64)) -> Self {
        GaussianRational {
            re: BigRational::new(re.0.into(), re.1.into()),
            im: BigRational::new(im.0.into(), im.1.into()),
        }
    }

    pub fn i() -> Self {
        GaussianRational {
            re: BigRational::zero(),
            im: BigRational::one(),
        }
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }
}

impl Scalar for GaussianRational {
    type Key = GaussianRational;

    const KIND: BackendKind = BackendKind::Exact;

    fn zero() -> Self {
        GaussianRational::default()
    }

    fn one() -> Self {
        Self::from_i64(1)
    }

    fn from_i64(n: i64) -> Self {
        GaussianRational {
            re: BigRational::from_integer(n.into()),
            im: BigRational::zero(),
        }
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        GaussianRational {
            re: BigRational::new(num.into(), den.into()),
            im: BigRational::zero(),
        }
    }

    fn add_ref(&self, rhs: &Self) -> Self {
        GaussianRational {
            re: &self.re + &rhs.re,
            im: &self.im + &rhs.im,
        }
    }

    fn sub_ref(&self, rhs: &Self) -> Self {
        GaussianRational {
            re: &self.re - &rhs.re,
            im: &self.im - &rhs.im,
        }
    }

    fn mul_ref(&self, rhs: &Self) -> Self {
        GaussianRational {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }

    fn neg_ref(&self) -> Self {
        GaussianRational {
            re: -&self.re,
            im: -&self.im,
        }
    }

    fn div_ref(&self, rhs: &Self) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::Arithmetic(format!("division of {self} by zero")));
        }
        // (a+bi)/(c+di) = (a+bi)(c-di) / (c²+d²)
        let n = rhs.norm_sqr();
        let p = self.mul_ref(&rhs.conj());
        Ok(GaussianRational {
            re: p.re / &n,
            im: p.im / n,
        })
    }

    fn conj(&self) -> Self {
        GaussianRational {
            re: self.re.clone(),
            im: -&self.im,
        }
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn is_negligible(&self, _tol: f64) -> bool {
        self.is_zero()
    }

    fn magnitude(&self) -> f64 {
        self.to_complex64().norm()
    }

    fn to_complex64(&self) -> Complex64 {
        Complex64::new(
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }

    fn hash_key(&self, _tol: f64) -> Self::Key {
        self.clone()
    }

    fn round_to_integer(&self, _tol: f64) -> Option<i64> {
        if self.im.is_zero() && self.re.is_integer() {
            self.re.to_integer().to_i64()
        } else {
            None
        }
    }
}

impl From<i64> for GaussianRational {
    fn from(n: i64) -> Self {
        Self::from_i64(n)
    }
}

impl fmt::Display for GaussianRational {
    /// Canonical literal: real part first, reduced terms, no spaces.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn rational(f: &mut fmt::Formatter<'_>, r: &BigRational) -> fmt::Result {
            if r.denom().is_one() {
                write!(f, "{}", r.numer())
            } else {
                write!(f, "{}/{}", r.numer(), r.denom())
            }
        }
        if self.im.is_zero() {
            return rational(f, &self.re);
        }
        if !self.re.is_zero() {
            rational(f, &self.re)?;
            f.write_str(if self.im.is_negative() { "-" } else { "+" })?;
        } else if self.im.is_negative() {
            f.write_str("-")?;
        }
        let mag = self.im.abs();
        if !mag.is_one() {
            rational(f, &mag)?;
        }
        f.write_str("i")
    }
}

impl FromStr for GaussianRational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_scalar(s)
    }
}

struct LiteralParser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl LiteralParser<'_> {
    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Option<BigInt> {
        let start = self.pos;
        while matches!(self.peek(), Some(b'0'..=b'9')) {
            self.pos += 1;
        }
        if start == self.pos {
            return None;
        }
        // ASCII digits only, so the slice is valid UTF-8 and parses.
        std::str::from_utf8(&self.bytes[start..self.pos])
            .ok()?
            .parse()
            .ok()
    }

    /// `uint ["/" posint]`, or `None` if no digits are present.
    fn magnitude(&mut self) -> Result<Option<BigRational>> {
        let Some(num) = self.digits() else {
            return Ok(None);
        };
        if !self.eat(b'/') {
            return Ok(Some(BigRational::from_integer(num)));
        }
        let at = self.pos;
        let den = self
            .digits()
            .ok_or_else(|| Error::parse(at, "expected denominator digits"))?;
        if den.is_zero() {
            return Err(Error::parse(at, "zero denominator"));
        }
        Ok(Some(BigRational::new(num, den)))
    }

    fn finish(&self) -> Result<()> {
        match self.peek() {
            None => Ok(()),
            Some(c) => Err(Error::parse(
                self.pos,
                format!("unexpected character {:?}", c as char),
            )),
        }
    }
}

/// Parses an exact literal such as `1/2`, `-i`, `3/4-2/5i` or `2i`.
pub fn parse_scalar(text: &str) -> Result<GaussianRational> {
    let mut p = LiteralParser {
        bytes: text.as_bytes(),
        pos: 0,
    };
    let negative = p.eat(b'-');
    let sign = |r: BigRational, neg: bool| if neg { -r } else { r };

    let lead = p.magnitude()?;
    if p.eat(b'i') {
        p.finish()?;
        let im = sign(lead.unwrap_or_else(BigRational::one), negative);
        return Ok(GaussianRational {
            re: BigRational::zero(),
            im,
        });
    }
    let Some(re) = lead else {
        return Err(Error::parse(p.pos, "expected digits or `i`"));
    };
    let re = sign(re, negative);
    if p.peek().is_none() {
        return Ok(GaussianRational {
            re,
            im: BigRational::zero(),
        });
    }
    let im_negative = match p.peek() {
        Some(b'+') => false,
        Some(b'-') => true,
        Some(c) => {
            return Err(Error::parse(
                p.pos,
                format!("unexpected character {:?}", c as char),
            ))
        }
        None => unreachable!(),
    };
    p.pos += 1;
    let coeff = p.magnitude()?.unwrap_or_else(BigRational::one);
    if !p.eat(b'i') {
        return Err(Error::parse(p.pos, "expected `i` after imaginary part"));
    }
    p.finish()?;
    Ok(GaussianRational {
        re,
        im: sign(coeff, im_negative),
    })
}

/// Parses a float-backend literal: a decimal real, optionally followed by an
/// imaginary part, e.g. `0.5`, `-0.25i`, `0.5-0.866i`, `i`. Exact-grammar
/// literals such as `1/2` are accepted as well.
pub fn parse_complex_float(text: &str) -> Result<ComplexFloat> {
    if let Ok(q) = parse_scalar(text) {
        return Ok(ComplexFloat::from(&q));
    }
    let real = |s: &str, offset: usize| {
        s.parse::<f64>()
            .ok()
            .filter(|x| x.is_finite())
            .ok_or_else(|| Error::parse(offset, format!("invalid number {s:?}")))
    };
    let Some(body) = text.strip_suffix('i') else {
        return Ok(ComplexFloat::new(real(text, 0)?, 0.0));
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| matches!(bytes[k], b'+' | b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let imag = |s: &str, offset: usize| match s {
        "" | "+" => Ok(1.0),
        "-" => Ok(-1.0),
        _ => real(s, offset),
    };
    match split {
        Some(k) => Ok(ComplexFloat::new(
            real(&body[..k], 0)?,
            imag(&body[k..], k)?,
        )),
        None => Ok(ComplexFloat::new(0.0, imag(body, 0)?)),
    }
}

// ---------------------------------------------------------------------------
// Complex floats

/// Binary64 complex number. Equality decisions take an explicit tolerance.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ComplexFloat(pub Complex64);

impl ComplexFloat {
    pub fn new(re: f64, im: f64) -> Self {
        ComplexFloat(Complex64::new(re, im))
    }

    pub fn re(&self) -> f64 {
        self.0.re
    }

    pub fn im(&self) -> f64 {
        self.0.im
    }
}

fn lattice(x: f64, pitch: f64) -> i64 {
    if pitch > 0.0 {
        (x / pitch).round() as i64
    } else {
        // Zero tolerance degenerates to bitwise identity; fold -0.0 into 0.0.
        (x + 0.0).to_bits() as i64
    }
}

impl Scalar for ComplexFloat {
    type Key = (i64, i64);

    const KIND: BackendKind = BackendKind::Float;

    fn zero() -> Self {
        ComplexFloat::default()
    }

    fn one() -> Self {
        ComplexFloat::new(1.0, 0.0)
    }

    fn from_i64(n: i64) -> Self {
        ComplexFloat::new(n as f64, 0.0)
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        ComplexFloat::new(num as f64 / den as f64, 0.0)
    }

    fn add_ref(&self, rhs: &Self) -> Self {
        ComplexFloat(self.0 + rhs.0)
    }

    fn sub_ref(&self, rhs: &Self) -> Self {
        ComplexFloat(self.0 - rhs.0)
    }

    fn mul_ref(&self, rhs: &Self) -> Self {
        ComplexFloat(self.0 * rhs.0)
    }

    fn neg_ref(&self) -> Self {
        ComplexFloat(-self.0)
    }

    fn div_ref(&self, rhs: &Self) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::Arithmetic(format!("division of {self} by zero")));
        }
        Ok(ComplexFloat(self.0 / rhs.0))
    }

    fn conj(&self) -> Self {
        ComplexFloat(self.0.conj())
    }

    fn is_zero(&self) -> bool {
        self.0.re == 0.0 && self.0.im == 0.0
    }

    fn is_negligible(&self, tol: f64) -> bool {
        self.0.re.abs() <= tol && self.0.im.abs() <= tol
    }

    fn magnitude(&self) -> f64 {
        self.0.norm()
    }

    fn to_complex64(&self) -> Complex64 {
        self.0
    }

    fn hash_key(&self, tol: f64) -> Self::Key {
        (lattice(self.0.re, tol), lattice(self.0.im, tol))
    }

    fn round_to_integer(&self, tol: f64) -> Option<i64> {
        let r = self.0.re.round();
        ((self.0.re - r).abs() <= tol && self.0.im.abs() <= tol && r.abs() < i64::MAX as f64)
            .then_some(r as i64)
    }
}

impl From<f64> for ComplexFloat {
    fn from(x: f64) -> Self {
        ComplexFloat::new(x, 0.0)
    }
}

impl From<&GaussianRational> for ComplexFloat {
    fn from(z: &GaussianRational) -> Self {
        ComplexFloat(z.to_complex64())
    }
}

impl fmt::Display for ComplexFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // `+ 0.0` maps -0.0 to 0.0 so output is sign-stable.
        let (re, im) = (self.0.re + 0.0, self.0.im + 0.0);
        if im == 0.0 {
            return write!(f, "{re}");
        }
        if re != 0.0 {
            write!(f, "{re}{}", if im < 0.0 { "-" } else { "+" })?;
        } else if im < 0.0 {
            f.write_str("-")?;
        }
        if im.abs() != 1.0 {
            write!(f, "{}", im.abs())?;
        }
        f.write_str("i")
    }
}

// Operator sugar for concrete types; generic code uses the trait methods.
macro_rules! impl_ops {
    ($t:ty) => {
        impl Add for $t {
            type Output = $t;
            fn add(self, rhs: $t) -> $t {
                self.add_ref(&rhs)
            }
        }
        impl Sub for $t {
            type Output = $t;
            fn sub(self, rhs: $t) -> $t {
                self.sub_ref(&rhs)
            }
        }
        impl Mul for $t {
            type Output = $t;
            fn mul(self, rhs: $t) -> $t {
                self.mul_ref(&rhs)
            }
        }
        impl Neg for $t {
            type Output = $t;
            fn neg(self) -> $t {
                self.neg_ref()
            }
        }
        impl<'a> Add<&'a $t> for &'a $t {
            type Output = $t;
            fn add(self, rhs: &$t) -> $t {
                self.add_ref(rhs)
            }
        }
        impl<'a> Sub<&'a $t> for &'a $t {
            type Output = $t;
            fn sub(self, rhs: &$t) -> $t {
                self.sub_ref(rhs)
            }
        }
        impl<'a> Mul<&'a $t> for &'a $t {
            type Output = $t;
            fn mul(self, rhs: &$t) -> $t {
                self.mul_ref(rhs)
            }
        }
    };
}

impl_ops!(GaussianRational);
impl_ops!(ComplexFloat);
