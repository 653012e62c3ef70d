//! Exact scalar types: rationals, complex rationals, and roots of unity.
//!
//! All parameter arithmetic in this crate is exact. `QQ` wraps an
//! arbitrary-precision reduced rational, `CQ` is a complex number with
//! rational real and imaginary parts, and `RootOfUnity` is a canonical
//! e^{2πi j/k} used for the finite-order part of unramified characters.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as DeError;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Exact rational number, always in reduced form with positive denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QQ(BigRational);

impl QQ {
    /// Build `n/d`. Panics if `d == 0`.
    pub fn new(n: i64, d: i64) -> Self {
        assert!(d != 0, "QQ: zero denominator");
        QQ(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn from_int(n: i64) -> Self {
        QQ(BigRational::from_integer(BigInt::from(n)))
    }

    /// Build `n/d` from arbitrary-precision parts. `None` if `d == 0`.
    pub fn from_big(n: BigInt, d: BigInt) -> Option<Self> {
        (!d.is_zero()).then(|| QQ(BigRational::new(n, d)))
    }

    pub fn zero() -> Self {
        QQ(BigRational::zero())
    }

    pub fn one() -> Self {
        QQ(BigRational::one())
    }

    pub fn half() -> Self {
        QQ::new(1, 2)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    /// The integer value, if the denominator is 1.
    pub fn to_integer(&self) -> Option<BigInt> {
        self.is_integer().then(|| self.0.to_integer())
    }

    /// True iff this is an integer in {0, -2, -4, ...}.
    pub fn is_nonpositive_even_integer(&self) -> bool {
        match self.to_integer() {
            Some(n) => !n.is_positive() && n.is_even(),
            None => false,
        }
    }

    /// True iff this is an integer in {0, -1, -2, ...}.
    pub fn is_nonpositive_integer(&self) -> bool {
        match self.to_integer() {
            Some(n) => !n.is_positive(),
            None => false,
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().expect("QQ: conversion to f64")
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }
}

impl fmt::Display for QQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for QQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Parses "p", "-p", "p/q", "-p/q". Arbitrary-precision digits accepted.
impl FromStr for QQ {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (num_str, den_str) = match s.split_once('/') {
            Some((n, d)) => (n, d),
            None => (s, "1"),
        };
        let n = BigInt::from_str(num_str.trim()).map_err(|_| format!("bad numerator in {s:?}"))?;
        let d =
            BigInt::from_str(den_str.trim()).map_err(|_| format!("bad denominator in {s:?}"))?;
        if d.is_zero() {
            return Err(format!("zero denominator in {s:?}"));
        }
        Ok(QQ(BigRational::new(n, d)))
    }
}

impl Serialize for QQ {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for QQ {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(D::Error::custom)
    }
}

macro_rules! qq_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for QQ {
            type Output = QQ;
            fn $method(self, rhs: QQ) -> QQ {
                QQ((self.0).$method(rhs.0))
            }
        }
        impl $trait for &QQ {
            type Output = QQ;
            fn $method(self, rhs: &QQ) -> QQ {
                QQ((&self.0).$method(&rhs.0))
            }
        }
        impl $trait<&QQ> for QQ {
            type Output = QQ;
            fn $method(self, rhs: &QQ) -> QQ {
                QQ((self.0).$method(&rhs.0))
            }
        }
    };
}

qq_binop!(Add, add);
qq_binop!(Sub, sub);
qq_binop!(Mul, mul);

impl AddAssign<&QQ> for QQ {
    fn add_assign(&mut self, rhs: &QQ) {
        self.0 += &rhs.0;
    }
}

impl Neg for QQ {
    type Output = QQ;
    fn neg(self) -> QQ {
        QQ(-self.0)
    }
}

impl Neg for &QQ {
    type Output = QQ;
    fn neg(self) -> QQ {
        QQ(-&self.0)
    }
}

/// Exact complex rational a + bi, componentwise reduced.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CQ {
    pub re: QQ,
    pub im: QQ,
}

impl CQ {
    pub fn new(re: QQ, im: QQ) -> Self {
        CQ { re, im }
    }

    pub fn real(re: QQ) -> Self {
        CQ { re, im: QQ::zero() }
    }

    pub fn from_int(n: i64) -> Self {
        CQ::real(QQ::from_int(n))
    }

    pub fn rational(n: i64, d: i64) -> Self {
        CQ::real(QQ::new(n, d))
    }

    pub fn zero() -> Self {
        CQ::real(QQ::zero())
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// Shift the real part by a rational amount, leaving the imaginary part.
    pub fn shift_re(&self, t: &QQ) -> CQ {
        CQ {
            re: &self.re + t,
            im: self.im.clone(),
        }
    }

    pub fn to_c64(&self) -> num_complex::Complex64 {
        num_complex::Complex64::new(self.re.to_f64(), self.im.to_f64())
    }
}

impl Add for &CQ {
    type Output = CQ;
    fn add(self, rhs: &CQ) -> CQ {
        CQ {
            re: &self.re + &rhs.re,
            im: &self.im + &rhs.im,
        }
    }
}

impl Neg for &CQ {
    type Output = CQ;
    fn neg(self) -> CQ {
        CQ {
            re: -&self.re,
            im: -&self.im,
        }
    }
}

impl fmt::Display for CQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else if self.im.is_negative() {
            write!(f, "{}-{}i", self.re, -&self.im)
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

impl fmt::Debug for CQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A root of unity e^{2πi j/k}, stored as the canonical reduced pair (j, k).
///
/// Invariants: k ≥ 1, 0 ≤ j < k, gcd(j, k) = 1 except for the trivial
/// value which is (0, 1). The multiplicative order is exactly k.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RootOfUnity {
    order: u64,
    index: u64,
}

impl RootOfUnity {
    /// e^{2πi j/k}, canonicalized. Panics if `k == 0`.
    pub fn new(j: u64, k: u64) -> Self {
        assert!(k >= 1, "RootOfUnity: order must be >= 1");
        let j = j % k;
        if j == 0 {
            return RootOfUnity { order: 1, index: 0 };
        }
        let g = j.gcd(&k);
        RootOfUnity {
            order: k / g,
            index: j / g,
        }
    }

    pub fn one() -> Self {
        RootOfUnity { order: 1, index: 0 }
    }

    /// -1, the unique root of order 2.
    pub fn minus_one() -> Self {
        RootOfUnity { order: 2, index: 1 }
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    /// Multiplicative order k.
    pub fn order(&self) -> u64 {
        self.order
    }

    /// Reduced index j with ζ = e^{2πi j/k}.
    pub fn index(&self) -> u64 {
        self.index
    }

    pub fn mul(&self, rhs: &RootOfUnity) -> RootOfUnity {
        // j1/k1 + j2/k2 mod 1
        let k = self.order.lcm(&rhs.order);
        let j = (self.index * (k / self.order) + rhs.index * (k / rhs.order)) % k;
        RootOfUnity::new(j, k)
    }

    pub fn inv(&self) -> RootOfUnity {
        if self.index == 0 {
            RootOfUnity::one()
        } else {
            RootOfUnity {
                order: self.order,
                index: self.order - self.index,
            }
        }
    }

    pub fn to_c64(&self) -> num_complex::Complex64 {
        let theta = 2.0 * std::f64::consts::PI * (self.index as f64) / (self.order as f64);
        num_complex::Complex64::new(theta.cos(), theta.sin())
    }
}

impl fmt::Display for RootOfUnity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.index, self.order)
    }
}

impl fmt::Debug for RootOfUnity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "zeta({}/{})", self.index, self.order)
    }
}

impl FromStr for RootOfUnity {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (j, k) = s
            .split_once('/')
            .ok_or_else(|| format!("expected j/k, got {s:?}"))?;
        let j: u64 = j
            .trim()
            .parse()
            .map_err(|_| format!("bad index in {s:?}"))?;
        let k: u64 = k
            .trim()
            .parse()
            .map_err(|_| format!("bad order in {s:?}"))?;
        if k == 0 {
            return Err(format!("zero order in {s:?}"));
        }
        Ok(RootOfUnity::new(j, k))
    }
}

impl Serialize for RootOfUnity {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for RootOfUnity {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(D::Error::custom)
    }
}

/// All reduced rationals p/q with 1 ≤ q ≤ `max_denom` lying in [lo, hi],
/// ascending. Used by the pole-window checks.
pub fn rationals_in_window(max_denom: i64, lo: &QQ, hi: &QQ) -> Vec<QQ> {
    let mut out: Vec<QQ> = Vec::new();
    for q in 1..=max_denom {
        // p/q in [lo, hi]  =>  p in [lo*q, hi*q]
        let lo_scaled = lo * &QQ::from_int(q);
        let hi_scaled = hi * &QQ::from_int(q);
        let p_min = lo_scaled.0.ceil().to_integer().to_i64().unwrap();
        let p_max = hi_scaled.0.floor().to_integer().to_i64().unwrap();
        for p in p_min..=p_max {
            if p.gcd(&q) == 1 {
                out.push(QQ::new(p, q));
            }
        }
    }
    out.sort();
    out
}
