//! Exact arithmetic in the rational Hamilton quaternions and the canonical
//! form of their classes modulo the center.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// A quaternion `x0 + x1 i + x2 j + x3 k` with exact rational coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quaternion {
    c: [BigRational; 4],
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl Quaternion {
    pub fn new(x0: BigRational, x1: BigRational, x2: BigRational, x3: BigRational) -> Self {
        Quaternion {
            c: [x0, x1, x2, x3],
        }
    }

    pub fn from_ints(x0: i64, x1: i64, x2: i64, x3: i64) -> Self {
        Quaternion {
            c: [rat(x0), rat(x1), rat(x2), rat(x3)],
        }
    }

    pub fn from_integers(c: &[BigInt; 4]) -> Self {
        Quaternion {
            c: c.clone().map(BigRational::from_integer),
        }
    }

    pub fn zero() -> Self {
        Self::from_ints(0, 0, 0, 0)
    }

    pub fn one() -> Self {
        Self::from_ints(1, 0, 0, 0)
    }

    pub fn scalar(x: BigRational) -> Self {
        Quaternion::new(
            x,
            BigRational::zero(),
            BigRational::zero(),
            BigRational::zero(),
        )
    }

    pub fn coords(&self) -> &[BigRational; 4] {
        &self.c
    }

    /// Real part `x0`.
    pub fn re(&self) -> &BigRational {
        &self.c[0]
    }

    pub fn imag(&self) -> [&BigRational; 3] {
        [&self.c[1], &self.c[2], &self.c[3]]
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Zero::is_zero)
    }

    /// True when every coordinate is an integer.
    pub fn is_integral(&self) -> bool {
        self.c.iter().all(BigRational::is_integer)
    }

    /// Integer coordinates, if the quaternion is integral.
    pub fn to_integers(&self) -> Option<[BigInt; 4]> {
        if !self.is_integral() {
            return None;
        }
        Some(self.c.clone().map(|x| x.to_integer()))
    }

    pub fn conj(&self) -> Self {
        conj(self)
    }

    pub fn norm_sq(&self) -> BigRational {
        norm_sq(self)
    }

    /// Exact inverse `conj(q) / |q|^2`.
    pub fn inverse(&self) -> Result<Self> {
        let n = self.norm_sq();
        if n.is_zero() {
            return Err(Error::ZeroQuaternion);
        }
        let inv = n.recip();
        Ok(self.conj().scale(&inv))
    }

    pub fn scale(&self, s: &BigRational) -> Self {
        Quaternion {
            c: [0, 1, 2, 3].map(|i| &self.c[i] * s),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Quaternion::one();
        let mut base = self.clone();
        let mut e = e;
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

    /// Signed power; negative exponents use the exact inverse.
    pub fn powi(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        Ok(base.pow(e.unsigned_abs() as u32))
    }
}

/// The Hamilton product, with `ij = -ji = k`.
pub fn mul(a: &Quaternion, b: &Quaternion) -> Quaternion {
    let [a0, a1, a2, a3] = &a.c;
    let [b0, b1, b2, b3] = &b.c;
    Quaternion {
        c: [
            a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
            a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
            a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1,
            a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0,
        ],
    }
}

pub fn conj(q: &Quaternion) -> Quaternion {
    let [x0, x1, x2, x3] = &q.c;
    Quaternion {
        c: [x0.clone(), -x1, -x2, -x3],
    }
}

pub fn norm_sq(q: &Quaternion) -> BigRational {
    q.c.iter().map(|x| x * x).sum()
}

/// Cross product of the imaginary parts.
pub fn imag_cross(a: &Quaternion, b: &Quaternion) -> [BigRational; 3] {
    let [_, a1, a2, a3] = &a.c;
    let [_, b1, b2, b3] = &b.c;
    [a2 * b3 - a3 * b2, a3 * b1 - a1 * b3, a1 * b2 - a2 * b1]
}

/// Two quaternions commute iff their imaginary vectors are linearly dependent.
pub fn commutes(a: &Quaternion, b: &Quaternion) -> bool {
    imag_cross(a, b).iter().all(Zero::is_zero)
}

/// Primitive integer vector spanning the line through the imaginary part,
/// first nonzero entry positive.
pub fn tau_direction(q: &Quaternion) -> Result<[BigInt; 3]> {
    let v = [q.c[1].clone(), q.c[2].clone(), q.c[3].clone()];
    if v.iter().all(Zero::is_zero) {
        return Err(Error::RealQuaternion);
    }
    Ok(primitive_integer_vector(&v))
}

/// Clears denominators, divides by the content and makes the first nonzero
/// coordinate positive.
pub(crate) fn primitive_integer_vector<const N: usize>(v: &[BigRational; N]) -> [BigInt; N] {
    let den = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let mut ints: [BigInt; N] = v.clone().map(|x| (x * &den).to_integer());
    let content = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !content.is_zero() {
        for x in ints.iter_mut() {
            *x /= &content;
        }
    }
    if let Some(first) = ints.iter().find(|x| !x.is_zero()) {
        if first.is_negative() {
            for x in ints.iter_mut() {
                *x = -&*x;
            }
        }
    }
    ints
}

/// A quaternion is central iff its imaginary part vanishes. Zero is not
/// treated as central since it is not a unit.
pub fn is_central(q: &Quaternion) -> bool {
    !q.c[0].is_zero() && q.c[1..].iter().all(Zero::is_zero)
}

/// The class of a nonzero quaternion modulo nonzero rational scalars,
/// represented by a primitive integer quaternion whose first nonzero
/// coordinate is positive.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    rep: [BigInt; 4],
}

impl GroupElement {
    pub fn identity() -> Self {
        GroupElement {
            rep: [
                BigInt::one(),
                BigInt::zero(),
                BigInt::zero(),
                BigInt::zero(),
            ],
        }
    }

    pub fn rep(&self) -> &[BigInt; 4] {
        &self.rep
    }

    pub fn lift(&self) -> Quaternion {
        Quaternion::from_integers(&self.rep)
    }

    pub fn is_identity(&self) -> bool {
        self.rep[1..].iter().all(Zero::is_zero)
    }

    /// Norm of the primitive representative.
    pub fn norm(&self) -> BigInt {
        self.rep.iter().map(|x| x * x).sum()
    }

    pub fn inverse(&self) -> Self {
        reduce_canonical(&self.lift().conj()).expect("canonical reps are nonzero")
    }

    pub fn mul(&self, other: &GroupElement) -> Self {
        reduce_canonical(&(&self.lift() * &other.lift())).expect("product of units is nonzero")
    }

    pub fn pow(&self, e: i64) -> Self {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        reduce_canonical(&base.lift().pow(e.unsigned_abs() as u32)).expect("power of a unit")
    }
}

pub fn reduce_canonical(q: &Quaternion) -> Result<GroupElement> {
    if q.is_zero() {
        return Err(Error::ZeroQuaternion);
    }
    Ok(GroupElement {
        rep: primitive_integer_vector(&q.c),
    })
}

impl Mul for &Quaternion {
    type Output = Quaternion;
    fn mul(self, rhs: &Quaternion) -> Quaternion {
        mul(self, rhs)
    }
}

impl Mul for Quaternion {
    type Output = Quaternion;
    fn mul(self, rhs: Quaternion) -> Quaternion {
        mul(&self, &rhs)
    }
}

impl Add for &Quaternion {
    type Output = Quaternion;
    fn add(self, rhs: &Quaternion) -> Quaternion {
        Quaternion {
            c: [0, 1, 2, 3].map(|i| &self.c[i] + &rhs.c[i]),
        }
    }
}

impl Sub for &Quaternion {
    type Output = Quaternion;
    fn sub(self, rhs: &Quaternion) -> Quaternion {
        Quaternion {
            c: [0, 1, 2, 3].map(|i| &self.c[i] - &rhs.c[i]),
        }
    }
}

impl Neg for &Quaternion {
    type Output = Quaternion;
    fn neg(self) -> Quaternion {
        Quaternion {
            c: [0, 1, 2, 3].map(|i| -&self.c[i]),
        }
    }
}

fn write_terms<T: fmt::Display + Signed + PartialEq>(
    f: &mut fmt::Formatter<'_>,
    c: &[T; 4],
) -> fmt::Result {
    let mut wrote = false;
    for (i, x) in c.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        let unit = ["", "i", "j", "k"][i];
        let neg = x.is_negative();
        if neg {
            write!(f, "-")?;
        } else if wrote {
            write!(f, "+")?;
        }
        let a = x.abs();
        if i == 0 || !a.is_one() {
            write!(f, "{a}")?;
        }
        write!(f, "{unit}")?;
        wrote = true;
    }
    if !wrote {
        write!(f, "0")?;
    }
    Ok(())
}

impl fmt::Display for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, &self.c)
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, &self.rep)
    }
}

/// Parses literals such as `3+2i+2j`, `-5+j+k` or `1+4k`. Coefficients are
/// integers, terms may come in any order, each unit at most once.
impl FromStr for Quaternion {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::Parse("empty quaternion literal".into()));
        }
        let bad = || Error::Parse(format!("malformed quaternion literal {s:?}"));
        let mut coords: [Option<BigInt>; 4] = Default::default();
        let bytes = s.as_bytes();
        let mut pos = 0;
        while pos < bytes.len() {
            let mut neg = false;
            if bytes[pos] == b'+' || bytes[pos] == b'-' {
                neg = bytes[pos] == b'-';
                pos += 1;
            } else if pos > 0 {
                return Err(bad());
            }
            let start = pos;
            while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                pos += 1;
            }
            let digits = &s[start..pos];
            let unit = match bytes.get(pos) {
                Some(b'i') => 1,
                Some(b'j') => 2,
                Some(b'k') => 3,
                Some(b'+') | Some(b'-') | None => 0,
                Some(_) => return Err(bad()),
            };
            if unit != 0 {
                pos += 1;
            }
            let mut value = if digits.is_empty() {
                if unit == 0 {
                    return Err(bad());
                }
                BigInt::one()
            } else {
                digits.parse::<BigInt>().map_err(|_| bad())?
            };
            if neg {
                value = -value;
            }
            if coords[unit].replace(value).is_some() {
                return Err(Error::Parse(format!("repeated term in {s:?}")));
            }
        }
        let c = coords.map(|x| x.unwrap_or_default());
        Ok(Quaternion::from_integers(&c))
    }
}
