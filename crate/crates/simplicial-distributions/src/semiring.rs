//! Commutative semiring scalars with exact arithmetic.
//!
//! Three semirings are supported: nonnegative rationals, the Boolean
//! algebra `{0,1}` with OR/AND, and the field of (signed) rationals.
//! The structural flags (`zero_sum_free`, `integral`, `has_negation`)
//! are what the decision procedures condition on. All arithmetic is
//! exact; no floating point enters any decision path.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SemiringKind {
    /// Q_{>=0}: ordered, zero-sum-free, integral, no negation.
    NonnegRational,
    /// {0,1} with OR/AND: ordered, zero-sum-free, integral, no negation.
    Boolean,
    /// Q with sign: ordered, not zero-sum-free, integral, has negation.
    RealField,
}

impl SemiringKind {
    pub fn ordered(self) -> bool {
        true
    }

    pub fn zero_sum_free(self) -> bool {
        !matches!(self, SemiringKind::RealField)
    }

    pub fn integral(self) -> bool {
        true
    }

    pub fn has_negation(self) -> bool {
        matches!(self, SemiringKind::RealField)
    }

    /// Every nonzero element has a multiplicative inverse. True for all
    /// three kinds; recorded as an explicit capability because the
    /// gluing construction requires it.
    pub fn division(self) -> bool {
        true
    }

    pub fn zero(self) -> Scalar {
        match self {
            SemiringKind::Boolean => Scalar {
                kind: self,
                value: Value::Bool(false),
            },
            _ => Scalar {
                kind: self,
                value: Value::Rat(BigRational::zero()),
            },
        }
    }

    pub fn one(self) -> Scalar {
        match self {
            SemiringKind::Boolean => Scalar {
                kind: self,
                value: Value::Bool(true),
            },
            _ => Scalar {
                kind: self,
                value: Value::Rat(BigRational::one()),
            },
        }
    }

    /// Parse a scalar literal: `p/q` or an integer string for the
    /// rational kinds, `0`/`1` for Boolean.
    pub fn parse_scalar(self, s: &str) -> Result<Scalar> {
        let s = s.trim();
        match self {
            SemiringKind::Boolean => match s {
                "0" => Ok(self.zero()),
                "1" => Ok(self.one()),
                _ => Err(Error::InvalidScalar(format!(
                    "boolean scalar must be 0 or 1, got {s:?}"
                ))),
            },
            _ => {
                let r = parse_rational(s)?;
                Scalar::from_rational(r, self)
            }
        }
    }
}

impl fmt::Display for SemiringKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SemiringKind::NonnegRational => write!(f, "rational"),
            SemiringKind::Boolean => write!(f, "boolean"),
            SemiringKind::RealField => write!(f, "real"),
        }
    }
}

impl FromStr for SemiringKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "rational" => Ok(SemiringKind::NonnegRational),
            "boolean" => Ok(SemiringKind::Boolean),
            "real" => Ok(SemiringKind::RealField),
            _ => Err(Error::Parse(format!(
                "unknown semiring {s:?} (expected rational, boolean or real)"
            ))),
        }
    }
}

fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = |_| Error::InvalidScalar(format!("cannot parse rational literal {s:?}"));
    if let Some((num, den)) = s.split_once('/') {
        let n = BigInt::from_str(num.trim()).map_err(bad)?;
        let d = BigInt::from_str(den.trim()).map_err(bad)?;
        if d.is_zero() {
            return Err(Error::InvalidScalar(format!("zero denominator in {s:?}")));
        }
        Ok(BigRational::new(n, d))
    } else {
        let n = BigInt::from_str(s).map_err(bad)?;
        Ok(BigRational::from_integer(n))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
enum Value {
    Rat(BigRational),
    Bool(bool),
}

/// An element of one of the supported semirings. Rationals are kept in
/// lowest terms by `BigRational` itself; explicit zeros are legal values
/// here (distributions drop them at their own level).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Scalar {
    kind: SemiringKind,
    value: Value,
}

impl Scalar {
    pub fn kind(&self) -> SemiringKind {
        self.kind
    }

    pub fn from_rational(r: BigRational, kind: SemiringKind) -> Result<Scalar> {
        match kind {
            SemiringKind::Boolean => Err(Error::InvalidScalar(
                "rational value in the Boolean semiring".into(),
            )),
            SemiringKind::NonnegRational => {
                if r.is_negative() {
                    Err(Error::InvalidScalar(format!(
                        "negative value {r} in the nonnegative-rational semiring"
                    )))
                } else {
                    Ok(Scalar {
                        kind,
                        value: Value::Rat(r),
                    })
                }
            }
            SemiringKind::RealField => Ok(Scalar {
                kind,
                value: Value::Rat(r),
            }),
        }
    }

    pub fn from_int(n: i64, kind: SemiringKind) -> Result<Scalar> {
        match kind {
            SemiringKind::Boolean => match n {
                0 => Ok(kind.zero()),
                1 => Ok(kind.one()),
                _ => Err(Error::InvalidScalar(format!("boolean scalar from {n}"))),
            },
            _ => Scalar::from_rational(BigRational::from_integer(n.into()), kind),
        }
    }

    pub fn ratio(num: i64, den: i64, kind: SemiringKind) -> Result<Scalar> {
        if den == 0 {
            return Err(Error::InvalidScalar("zero denominator".into()));
        }
        match kind {
            SemiringKind::Boolean => Err(Error::InvalidScalar(
                "ratio in the Boolean semiring".into(),
            )),
            _ => Scalar::from_rational(BigRational::new(num.into(), den.into()), kind),
        }
    }

    /// The underlying rational, for the two rational-valued kinds.
    pub fn as_rational(&self) -> Option<&BigRational> {
        match &self.value {
            Value::Rat(r) => Some(r),
            Value::Bool(_) => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.value {
            Value::Rat(r) => r.is_zero(),
            Value::Bool(b) => !b,
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.value {
            Value::Rat(r) => r.is_one(),
            Value::Bool(b) => *b,
        }
    }

    fn check_kind(&self, other: &Scalar) -> Result<()> {
        if self.kind != other.kind {
            Err(Error::MixedSemirings(self.kind, other.kind))
        } else {
            Ok(())
        }
    }

    pub fn add(&self, other: &Scalar) -> Result<Scalar> {
        self.check_kind(other)?;
        let value = match (&self.value, &other.value) {
            (Value::Rat(a), Value::Rat(b)) => Value::Rat(a + b),
            (Value::Bool(a), Value::Bool(b)) => Value::Bool(*a || *b),
            _ => unreachable!("kind check"),
        };
        Ok(Scalar {
            kind: self.kind,
            value,
        })
    }

    pub fn mul(&self, other: &Scalar) -> Result<Scalar> {
        self.check_kind(other)?;
        let value = match (&self.value, &other.value) {
            (Value::Rat(a), Value::Rat(b)) => Value::Rat(a * b),
            (Value::Bool(a), Value::Bool(b)) => Value::Bool(*a && *b),
            _ => unreachable!("kind check"),
        };
        Ok(Scalar {
            kind: self.kind,
            value,
        })
    }

    /// Division by a nonzero element. Defined in all three kinds since
    /// each is a division semiring.
    pub fn div(&self, other: &Scalar) -> Result<Scalar> {
        self.check_kind(other)?;
        if other.is_zero() {
            return Err(Error::InvalidScalar("division by zero".into()));
        }
        let value = match (&self.value, &other.value) {
            (Value::Rat(a), Value::Rat(b)) => Value::Rat(a / b),
            (Value::Bool(a), Value::Bool(_)) => Value::Bool(*a),
            _ => unreachable!("kind check"),
        };
        Ok(Scalar {
            kind: self.kind,
            value,
        })
    }

    /// Decimal approximation, for display only.
    pub fn to_f64(&self) -> f64 {
        match &self.value {
            Value::Rat(r) => rational_to_f64(r),
            Value::Bool(b) => {
                if *b {
                    1.0
                } else {
                    0.0
                }
            }
        }
    }
}

pub(crate) fn rational_to_f64(r: &BigRational) -> f64 {
    let n = r.numer();
    let d = r.denom();
    // good enough for display; decisions never touch floats
    let nf = n.to_string().parse::<f64>().unwrap_or(f64::NAN);
    let df = d.to_string().parse::<f64>().unwrap_or(f64::NAN);
    nf / df
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.value {
            Value::Rat(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Value::Bool(b) => write!(f, "{}", if *b { 1 } else { 0 }),
        }
    }
}
