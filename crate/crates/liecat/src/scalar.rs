//! Exact arithmetic over the base field: the rationals, or a quadratic
//! extension Q(sqrt(d)) together with its conjugation automorphism.
//!
//! Scalars are immutable values; all arithmetic is exact (arbitrary-precision
//! rationals underneath, no rounding anywhere). Each computation fixes one
//! field; mixing scalars from different fields is a hard error.

use crate::error::{Error, Result};
use num::{BigInt, BigRational, One, Zero};
use std::fmt;

/// The base field of a computation: Q, or Q(sqrt(d)) for a squarefree d.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Field {
    Rational,
    /// Quadratic extension by sqrt(d); `d` is a nonzero squarefree integer,
    /// never 1, so the extension is proper and conjugation is nontrivial.
    QuadExt(i64),
}

impl Field {
    /// Validates the extension parameter: nonzero, not 1, squarefree.
    pub fn quad_ext(d: i64) -> Result<Field> {
        if d == 0 || d == 1 {
            return Err(Error::BadSpec(format!("d = {d} does not give a field extension")));
        }
        let mut m = d.unsigned_abs();
        let mut p = 2u64;
        while p * p <= m {
            if m.is_multiple_of(p * p) {
                return Err(Error::BadSpec(format!("d = {d} is not squarefree")));
            }
            while m.is_multiple_of(p) {
                m /= p;
            }
            p += 1;
        }
        Ok(Field::QuadExt(d))
    }

    pub fn is_quad(&self) -> bool {
        matches!(self, Field::QuadExt(_))
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "q"),
            Field::QuadExt(d) => write!(f, "q-sqrt:{d}"),
        }
    }
}

/// An element of the base field, stored exactly: `a + b*sqrt(d)`.
/// Over `Field::Rational` the surd part `b` is always zero.
#[derive(Clone, Debug)]
pub struct Scalar {
    a: BigRational,
    b: BigRational,
    field: Field,
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        // A quadratic element with zero surd part equals the plain rational
        // it embeds; the field tag only matters once sqrt(d) participates.
        self.a == other.a && self.b == other.b && (self.b.is_zero() || self.field == other.field)
    }
}

impl Eq for Scalar {}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl Scalar {
    pub fn zero(field: Field) -> Scalar {
        Scalar { a: BigRational::zero(), b: BigRational::zero(), field }
    }

    pub fn one(field: Field) -> Scalar {
        Scalar { a: BigRational::one(), b: BigRational::zero(), field }
    }

    pub fn from_integer(n: i64, field: Field) -> Scalar {
        Scalar { a: rat(n, 1), b: BigRational::zero(), field }
    }

    pub fn from_ratio(n: i64, d: i64, field: Field) -> Result<Scalar> {
        if d == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(Scalar { a: rat(n, d), b: BigRational::zero(), field })
    }

    pub fn from_rational(a: BigRational, field: Field) -> Scalar {
        Scalar { a, b: BigRational::zero(), field }
    }

    /// Builds `a + b*sqrt(d)`; the field must be a quadratic extension.
    pub fn quad(a: BigRational, b: BigRational, field: Field) -> Result<Scalar> {
        if !field.is_quad() && !b.is_zero() {
            return Err(Error::FieldMismatch);
        }
        Ok(Scalar { a, b, field })
    }

    /// sqrt(d) itself.
    pub fn surd(field: Field) -> Result<Scalar> {
        if !field.is_quad() {
            return Err(Error::FieldMismatch);
        }
        Ok(Scalar { a: BigRational::zero(), b: BigRational::one(), field })
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.a
    }

    pub fn surd_part(&self) -> &BigRational {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }

    /// True iff the element lies in the prime subfield, i.e. in Q.
    pub fn in_prime_subfield(&self) -> bool {
        self.b.is_zero()
    }

    /// True iff the element is a rational integer.
    pub fn is_integer(&self) -> bool {
        self.b.is_zero() && self.a.is_integer()
    }

    fn join(&self, other: &Scalar) -> Result<Field> {
        if self.field == other.field {
            Ok(self.field)
        } else {
            Err(Error::FieldMismatch)
        }
    }

    fn d_value(&self) -> BigRational {
        match self.field {
            Field::Rational => BigRational::zero(),
            Field::QuadExt(d) => rat(d, 1),
        }
    }

    pub fn checked_add(&self, other: &Scalar) -> Result<Scalar> {
        let field = self.join(other)?;
        Ok(Scalar { a: &self.a + &other.a, b: &self.b + &other.b, field })
    }

    pub fn checked_sub(&self, other: &Scalar) -> Result<Scalar> {
        let field = self.join(other)?;
        Ok(Scalar { a: &self.a - &other.a, b: &self.b - &other.b, field })
    }

    pub fn checked_mul(&self, other: &Scalar) -> Result<Scalar> {
        let field = self.join(other)?;
        // (a1 + b1 w)(a2 + b2 w) = a1 a2 + d b1 b2 + (a1 b2 + a2 b1) w
        let d = self.d_value();
        Ok(Scalar {
            a: &self.a * &other.a + d * &self.b * &other.b,
            b: &self.a * &other.b + &other.a * &self.b,
            field,
        })
    }

    pub fn negate(&self) -> Scalar {
        Scalar { a: -&self.a, b: -&self.b, field: self.field }
    }

    /// Exact inverse. The norm a^2 - d b^2 vanishes only at zero because d
    /// is squarefree and not 1, hence never a rational square.
    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let norm = &self.a * &self.a - self.d_value() * &self.b * &self.b;
        if norm.is_zero() {
            return Err(Error::Internal("quadratic norm vanished on nonzero element".into()));
        }
        Ok(Scalar { a: &self.a / &norm, b: -&self.b / &norm, field: self.field })
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar> {
        self.checked_mul(&other.inv()?)
    }

    pub fn pow(&self, exp: i64) -> Result<Scalar> {
        let base = if exp < 0 { self.inv()? } else { self.clone() };
        let mut acc = Scalar::one(self.field);
        for _ in 0..exp.unsigned_abs() {
            acc = acc.checked_mul(&base)?;
        }
        Ok(acc)
    }

    /// Canonical text form: `p`, `p/q`, or `(a)+(b)*w` once sqrt(d) appears.
    pub fn canonical_text(&self) -> String {
        if self.b.is_zero() {
            format_rational(&self.a)
        } else {
            format!("({})+({})*w", format_rational(&self.a), format_rational(&self.b))
        }
    }
}

fn format_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.canonical_text())
    }
}

/// An automorphism of the base field: the identity, or conjugation
/// `a + b*sqrt(d) -> a - b*sqrt(d)` over a quadratic extension.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum FieldAut {
    Identity,
    Conjugation,
}

impl FieldAut {
    /// Applies the automorphism. Conjugation requires a quadratic field;
    /// every rational is fixed either way.
    pub fn apply(&self, x: &Scalar) -> Result<Scalar> {
        match self {
            FieldAut::Identity => Ok(x.clone()),
            FieldAut::Conjugation => {
                if !x.field.is_quad() {
                    return Err(Error::FieldMismatch);
                }
                Ok(Scalar { a: x.a.clone(), b: -&x.b, field: x.field })
            }
        }
    }

    pub fn valid_for(&self, field: Field) -> bool {
        match self {
            FieldAut::Identity => true,
            FieldAut::Conjugation => field.is_quad(),
        }
    }
}
