//! Exact rational scalars.
//!
//! Operator orders, base points, and grid offsets are all exact rationals, so
//! every gamma argument that an operator produces is rational and pole
//! detection is a matter of exact arithmetic, never of floating tolerance.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// An exact rational number in canonical reduced form (denominator > 0,
/// gcd(numerator, denominator) = 1). Addition, subtraction, and comparison
/// are exact.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rat(BigRational);

impl Rat {
    pub fn zero() -> Self {
        Rat(BigRational::zero())
    }

    pub fn one() -> Self {
        Rat(BigRational::one())
    }

    /// p/q with q != 0. Canonicalization (sign, gcd) is automatic.
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Rat(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_int(n: i64) -> Self {
        Rat(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    /// The integer value, if this rational is an integer that fits in i64.
    pub fn as_i64(&self) -> Option<i64> {
        if self.0.is_integer() {
            self.0.to_integer().to_i64()
        } else {
            None
        }
    }

    /// Greatest integer <= self.
    pub fn floor_i64(&self) -> i64 {
        self.0
            .floor()
            .to_integer()
            .to_i64()
            .expect("rational floor out of i64 range")
    }

    /// Least integer >= self.
    pub fn ceil_i64(&self) -> i64 {
        self.0
            .ceil()
            .to_integer()
            .to_i64()
            .expect("rational ceil out of i64 range")
    }

    pub fn abs(&self) -> Rat {
        Rat(self.0.abs())
    }

    pub fn recip(&self) -> Rat {
        assert!(!self.is_zero(), "reciprocal of zero");
        Rat(self.0.recip())
    }

    /// Nearest f64. Numerator and denominator are converted separately
    /// (each correctly rounded), so the result is within a couple of ulps.
    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().expect("rational out of f64 range")
    }

    /// Exact difference test: does `self - other` lie in Z?
    pub fn congruent_mod_1(&self, other: &Rat) -> bool {
        (self - other).is_integer()
    }

    pub fn numer_string(&self) -> String {
        self.0.numer().to_string()
    }

    pub fn denom_string(&self) -> String {
        self.0.denom().to_string()
    }
}

/// Parses "p/q", a plain integer, or a decimal literal. Decimal text is
/// converted exactly in base 10 ("0.25" -> 1/4), so grid offsets never pick
/// up binary-float noise.
impl FromStr for Rat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Rat> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Parse("empty rational literal".into()));
        }
        if let Some((num, den)) = s.split_once('/') {
            let n = BigInt::from_str(num.trim())
                .map_err(|_| Error::Parse(format!("bad numerator in {s:?}")))?;
            let d = BigInt::from_str(den.trim())
                .map_err(|_| Error::Parse(format!("bad denominator in {s:?}")))?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            return Ok(Rat(BigRational::new(n, d)));
        }
        if let Some((int_part, frac_part)) = s.split_once('.') {
            let neg = int_part.trim_start().starts_with('-');
            let int_part = if int_part.is_empty() || int_part == "-" || int_part == "+" {
                format!("{int_part}0")
            } else {
                int_part.to_string()
            };
            let i = BigInt::from_str(&int_part)
                .map_err(|_| Error::Parse(format!("bad decimal literal {s:?}")))?;
            if !frac_part.bytes().all(|b| b.is_ascii_digit()) {
                return Err(Error::Parse(format!("bad decimal literal {s:?}")));
            }
            let f = if frac_part.is_empty() {
                BigInt::zero()
            } else {
                BigInt::from_str(frac_part)
                    .map_err(|_| Error::Parse(format!("bad decimal literal {s:?}")))?
            };
            let scale = BigInt::from(10u32).pow(frac_part.len() as u32);
            let mag = BigRational::new(i.abs() * &scale + f, scale);
            return Ok(Rat(if neg { -mag } else { mag }));
        }
        let n = BigInt::from_str(s).map_err(|_| Error::Parse(format!("bad rational {s:?}")))?;
        Ok(Rat(BigRational::from_integer(n)))
    }
}

/// Integers render bare ("3"), everything else as "p/q".
impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl From<i64> for Rat {
    fn from(n: i64) -> Self {
        Rat::from_int(n)
    }
}

impl PartialEq<i64> for Rat {
    fn eq(&self, other: &i64) -> bool {
        self.0 == BigRational::from_integer(BigInt::from(*other))
    }
}

impl PartialOrd<i64> for Rat {
    fn partial_cmp(&self, other: &i64) -> Option<Ordering> {
        self.0
            .partial_cmp(&BigRational::from_integer(BigInt::from(*other)))
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Rat {
            type Output = Rat;
            fn $method(self, rhs: Rat) -> Rat {
                Rat((self.0).$method(rhs.0))
            }
        }
        impl $trait<&Rat> for &Rat {
            type Output = Rat;
            fn $method(self, rhs: &Rat) -> Rat {
                Rat((&self.0).$method(&rhs.0))
            }
        }
        impl $trait<&Rat> for Rat {
            type Output = Rat;
            fn $method(self, rhs: &Rat) -> Rat {
                Rat((self.0).$method(&rhs.0))
            }
        }
        impl $trait<Rat> for &Rat {
            type Output = Rat;
            fn $method(self, rhs: Rat) -> Rat {
                Rat((&self.0).$method(rhs.0))
            }
        }
        impl $trait<i64> for &Rat {
            type Output = Rat;
            fn $method(self, rhs: i64) -> Rat {
                Rat((&self.0).$method(BigRational::from_integer(BigInt::from(rhs))))
            }
        }
        impl $trait<i64> for Rat {
            type Output = Rat;
            fn $method(self, rhs: i64) -> Rat {
                Rat((self.0).$method(BigRational::from_integer(BigInt::from(rhs))))
            }
        }
    };
}

binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);
binop!(Div, div);

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-self.0)
    }
}

impl Neg for &Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-&self.0)
    }
}
