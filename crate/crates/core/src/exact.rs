//! Exact scalars over the rationals and prime fields.
//!
//! Every scalar carries enough information to identify its field, so mixing
//! fields is detected by the checked [`arith`] entry point. The operator
//! impls (`&a + &b` and friends) are for internal hot loops where the field
//! has already been validated; they panic on a mismatch.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Largest accepted prime modulus; products of two residues fit in a `u64`.
const MAX_MODULUS: u64 = 1 << 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Field {
    Rationals,
    Prime(u64),
}

impl Field {
    /// The prime field F_p. Rejects composite moduli.
    pub fn prime(p: u64) -> Result<Self> {
        if p >= MAX_MODULUS || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Field::Prime(p))
    }

    pub fn characteristic(&self) -> u64 {
        match *self {
            Field::Rationals => 0,
            Field::Prime(p) => p,
        }
    }

    /// True when the characteristic divides `n` (never for Q).
    pub fn char_divides(&self, n: u64) -> bool {
        match *self {
            Field::Rationals => false,
            Field::Prime(p) => n.is_multiple_of(p),
        }
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match *self {
            Field::Rationals => Scalar::Rational(BigRational::from_integer(BigInt::from(n))),
            Field::Prime(p) => Scalar::Residue {
                value: n.rem_euclid(p as i64) as u64,
                modulus: p,
            },
        }
    }

    pub fn contains(&self, x: &Scalar) -> bool {
        x.field() == *self
    }

    /// Parses "a", "-a" or "a/b". Over F_p the denominator must be invertible.
    pub fn parse(&self, s: &str) -> Result<Scalar> {
        let s = s.trim();
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), Some(d.trim())),
            None => (s, None),
        };
        let parse_int = |t: &str| {
            t.parse::<BigInt>()
                .map_err(|_| Error::Parse(format!("invalid scalar {s:?}")))
        };
        let num = parse_int(num)?;
        let den = match den {
            Some(d) => parse_int(d)?,
            None => BigInt::one(),
        };
        if den.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        match *self {
            Field::Rationals => Ok(Scalar::Rational(BigRational::new(num, den))),
            Field::Prime(p) => {
                let n = self.reduce_bigint(&num);
                let d = self.reduce_bigint(&den);
                n.div(&d)
                    .map_err(|_| Error::Parse(format!("denominator of {s:?} vanishes mod {p}")))
            }
        }
    }

    fn reduce_bigint(&self, n: &BigInt) -> Scalar {
        let Field::Prime(p) = *self else {
            return Scalar::Rational(BigRational::from_integer(n.clone()));
        };
        let r = n.mod_floor_u64(p);
        Scalar::Residue {
            value: r,
            modulus: p,
        }
    }

    /// The smallest primitive `n`-th root of unity in the field.
    ///
    /// Over F_p the multiplicative group is searched exhaustively in
    /// increasing order of canonical representative.
    pub fn primitive_root_of_unity(&self, n: u64) -> Result<Scalar> {
        if n == 0 {
            return Err(Error::NoSuchRoot { field: *self, n });
        }
        match *self {
            Field::Rationals => match n {
                1 => Ok(self.one()),
                2 => Ok(self.from_i64(-1)),
                _ => Err(Error::NoSuchRoot { field: *self, n }),
            },
            Field::Prime(p) => {
                if (p - 1) % n != 0 {
                    return Err(Error::NoSuchRoot { field: *self, n });
                }
                (1..p)
                    .map(|v| Scalar::Residue {
                        value: v,
                        modulus: p,
                    })
                    .find(|x| multiplicative_order(x) == Some(n))
                    .ok_or(Error::NoSuchRoot { field: *self, n })
            }
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "Q"),
            Field::Prime(p) => write!(f, "F_{p}"),
        }
    }
}

fn multiplicative_order(x: &Scalar) -> Option<u64> {
    let Scalar::Residue { modulus, .. } = *x else {
        return None;
    };
    let one = Field::Prime(modulus).one();
    let mut acc = x.clone();
    for k in 1..modulus {
        if acc == one {
            return Some(k);
        }
        acc = &acc * x;
    }
    None
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

trait ModFloorU64 {
    fn mod_floor_u64(&self, p: u64) -> u64;
}

impl ModFloorU64 for BigInt {
    fn mod_floor_u64(&self, p: u64) -> u64 {
        let m = BigInt::from(p);
        let r = ((self % &m) + &m) % &m;
        u64::try_from(r).expect("residue fits in u64")
    }
}

/// An exact field element: a rational in lowest terms, or a residue in `[0, p)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Scalar {
    Rational(BigRational),
    Residue { value: u64, modulus: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Checked field arithmetic.
pub fn arith(op: ArithOp, x: &Scalar, y: &Scalar) -> Result<Scalar> {
    if x.field() != y.field() {
        return Err(Error::FieldMismatch(x.field(), y.field()));
    }
    Ok(match op {
        ArithOp::Add => x + y,
        ArithOp::Sub => x - y,
        ArithOp::Mul => x * y,
        ArithOp::Div => return x.div(y),
    })
}

impl Scalar {
    pub fn field(&self) -> Field {
        match *self {
            Scalar::Rational(_) => Field::Rationals,
            Scalar::Residue { modulus, .. } => Field::Prime(modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Residue { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_one(),
            Scalar::Residue { value, .. } => *value == 1,
        }
    }

    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match *self {
            Scalar::Rational(ref r) => Scalar::Rational(r.recip()),
            Scalar::Residue { value, modulus } => Scalar::Residue {
                value: pow_mod(value, modulus - 2, modulus),
                modulus,
            },
        })
    }

    pub fn div(&self, rhs: &Scalar) -> Result<Scalar> {
        if self.field() != rhs.field() {
            return Err(Error::FieldMismatch(self.field(), rhs.field()));
        }
        Ok(self * &rhs.inv()?)
    }

    pub fn pow(&self, mut e: u64) -> Scalar {
        let mut base = self.clone();
        let mut acc = self.field().one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// `self += a * b`, avoiding a temporary for residues.
    pub fn add_mul(&mut self, a: &Scalar, b: &Scalar) {
        match (&mut *self, a, b) {
            (
                Scalar::Residue { value, modulus },
                Scalar::Residue {
                    value: x,
                    modulus: m1,
                },
                Scalar::Residue {
                    value: y,
                    modulus: m2,
                },
            ) => {
                assert!(*modulus == *m1 && *m1 == *m2, "field mismatch");
                *value = (*value + x * y % *modulus) % *modulus;
            }
            (Scalar::Rational(acc), Scalar::Rational(x), Scalar::Rational(y)) => {
                *acc += x * y;
            }
            _ => panic!("field mismatch"),
        }
    }
}

fn pow_mod(mut base: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        e >>= 1;
    }
    acc
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) if r.denom().is_one() => write!(f, "{}", r.numer()),
            Scalar::Rational(r) => write!(f, "{}/{}", r.numer(), r.denom()),
            Scalar::Residue { value, .. } => write!(f, "{value}"),
        }
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $residue:expr, $rational:expr) => {
        impl<'a> $trait<&'a Scalar> for &'a Scalar {
            type Output = Scalar;

            fn $method(self, rhs: &'a Scalar) -> Scalar {
                match (self, rhs) {
                    (
                        Scalar::Residue {
                            value: x,
                            modulus: p,
                        },
                        Scalar::Residue {
                            value: y,
                            modulus: q,
                        },
                    ) => {
                        assert_eq!(p, q, "field mismatch");
                        Scalar::Residue {
                            value: $residue(*x, *y, *p),
                            modulus: *p,
                        }
                    }
                    (Scalar::Rational(x), Scalar::Rational(y)) => Scalar::Rational($rational(x, y)),
                    _ => panic!("field mismatch"),
                }
            }
        }
    };
}

binop!(Add, add, |x, y, p| (x + y) % p, |x: &BigRational, y| x + y);
binop!(Sub, sub, |x, y, p| (x + p - y) % p, |x: &BigRational, y| x
    - y);
binop!(Mul, mul, |x, y, p| x * y % p, |x: &BigRational, y| x * y);

impl Neg for &Scalar {
    type Output = Scalar;

    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(r) => Scalar::Rational(-r),
            Scalar::Residue { value, modulus } => Scalar::Residue {
                value: (modulus - value) % modulus,
                modulus: *modulus,
            },
        }
    }
}

/// Sign of a rational, used only for pretty-printing coefficients.
pub(crate) fn is_negative(x: &Scalar) -> bool {
    matches!(x, Scalar::Rational(r) if r.is_negative())
}
