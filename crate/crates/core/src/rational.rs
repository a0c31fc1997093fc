//! Exact rational numbers.
//!
//! Values are kept in lowest terms with a positive denominator. Small values
//! live inline as a pair of `i64`; anything that does not fit is promoted to
//! a [`BigRational`]. The representation is canonical: a value that fits in
//! the small form is never stored as a big one, so structural equality and
//! hashing agree with numeric equality.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Clone)]
pub struct Rational(Repr);

#[derive(Clone)]
enum Repr {
    /// `den > 0` and `gcd(num, den) == 1`.
    Small {
        num: i64,
        den: i64,
    },
    Big(Box<BigRational>),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseRationalError {
    #[error("empty rational literal")]
    Empty,
    #[error("malformed rational literal `{0}`")]
    Malformed(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
}

fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    if a == 0 {
        return b;
    }
    if b == 0 {
        return a;
    }
    let shift = (a | b).trailing_zeros();
    a >>= a.trailing_zeros();
    loop {
        b >>= b.trailing_zeros();
        if a > b {
            std::mem::swap(&mut a, &mut b);
        }
        b -= a;
        if b == 0 {
            return a << shift;
        }
    }
}

/// `n / g` for a divisor `g` of `n`; `g` may exceed `i64::MAX` only when
/// `n == i64::MIN`.
fn div_small(n: i64, g: u64) -> i64 {
    if g == 1 {
        n
    } else if g > i64::MAX as u64 {
        -1
    } else {
        n / g as i64
    }
}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    if a == 0 {
        return b;
    }
    if b == 0 {
        return a;
    }
    if a <= u64::MAX as u128 && b <= u64::MAX as u128 {
        return gcd_u64(a as u64, b as u64) as u128;
    }
    let shift = (a | b).trailing_zeros();
    a >>= a.trailing_zeros();
    loop {
        b >>= b.trailing_zeros();
        if a > b {
            std::mem::swap(&mut a, &mut b);
        }
        b -= a;
        if b == 0 {
            return a << shift;
        }
    }
}

impl Rational {
    pub fn zero() -> Self {
        Rational(Repr::Small { num: 0, den: 1 })
    }

    pub fn one() -> Self {
        Rational(Repr::Small { num: 1, den: 1 })
    }

    pub fn from_integer(n: i64) -> Self {
        Rational(Repr::Small { num: n, den: 1 })
    }

    /// `num / den`; panics if `den == 0`.
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Self::from_i128(num as i128, den as i128)
    }

    pub fn from_big(value: BigRational) -> Self {
        // BigRational is already reduced with a positive denominator.
        match (value.numer().to_i64(), value.denom().to_i64()) {
            (Some(num), Some(den)) => Rational(Repr::Small { num, den }),
            _ => Rational(Repr::Big(Box::new(value))),
        }
    }

    pub fn from_bigints(num: BigInt, den: BigInt) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        Self::from_big(BigRational::new(num, den))
    }

    /// `num / den` for `den > 0`.
    fn reduce_small(num: i64, den: i64) -> Self {
        debug_assert!(den > 0);
        let g = gcd_u64(num.unsigned_abs(), den as u64);
        if g > 1 {
            Rational(Repr::Small {
                num: div_small(num, g),
                den: div_small(den, g),
            })
        } else {
            Rational(Repr::Small { num, den })
        }
    }

    fn from_i128(num: i128, den: i128) -> Self {
        debug_assert!(den != 0);
        let (mut num, mut den) = if den < 0 { (-num, -den) } else { (num, den) };
        let g = gcd_u128(num.unsigned_abs(), den as u128);
        if g > 1 {
            num /= g as i128;
            den /= g as i128;
        }
        match (i64::try_from(num), i64::try_from(den)) {
            (Ok(num), Ok(den)) => Rational(Repr::Small { num, den }),
            _ => Rational(Repr::Big(Box::new(BigRational::new_raw(
                BigInt::from(num),
                BigInt::from(den),
            )))),
        }
    }

    /// Nearest value `m / 2^bits` to `x`. Used to bring floating point
    /// search results back into exact arithmetic.
    pub fn from_f64_dyadic(x: f64, bits: u32) -> Self {
        assert!(x.is_finite(), "non-finite value");
        let scaled = (x * (bits as f64).exp2()).round();
        let num = BigInt::from(scaled as i128);
        let den = BigInt::one() << bits as usize;
        Self::from_bigints(num, den)
    }

    pub fn to_big(&self) -> BigRational {
        match &self.0 {
            Repr::Small { num, den } => {
                BigRational::new_raw(BigInt::from(*num), BigInt::from(*den))
            }
            Repr::Big(b) => (**b).clone(),
        }
    }

    pub fn numer(&self) -> BigInt {
        match &self.0 {
            Repr::Small { num, .. } => BigInt::from(*num),
            Repr::Big(b) => b.numer().clone(),
        }
    }

    pub fn denom(&self) -> BigInt {
        match &self.0 {
            Repr::Small { den, .. } => BigInt::from(*den),
            Repr::Big(b) => b.denom().clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small { num: 0, .. })
    }

    pub fn is_one(&self) -> bool {
        matches!(self.0, Repr::Small { num: 1, den: 1 })
    }

    pub fn is_integer(&self) -> bool {
        match &self.0 {
            Repr::Small { den, .. } => *den == 1,
            Repr::Big(b) => b.is_integer(),
        }
    }

    pub fn signum(&self) -> i32 {
        match &self.0 {
            Repr::Small { num, .. } => num.signum() as i32,
            Repr::Big(b) => {
                if b.is_positive() {
                    1
                } else if b.is_negative() {
                    -1
                } else {
                    0
                }
            }
        }
    }

    pub fn is_positive(&self) -> bool {
        self.signum() > 0
    }

    pub fn is_negative(&self) -> bool {
        self.signum() < 0
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    pub fn recip(&self) -> Self {
        assert!(!self.is_zero(), "reciprocal of zero");
        match &self.0 {
            Repr::Small { num, den } => Self::from_i128(*den as i128, *num as i128),
            Repr::Big(b) => Self::from_big(b.recip()),
        }
    }

    pub fn to_f64(&self) -> f64 {
        match &self.0 {
            Repr::Small { num, den } => {
                if num.unsigned_abs() < (1 << 53) && *den < (1 << 53) {
                    *num as f64 / *den as f64
                } else {
                    self.to_big().to_f64().unwrap_or(f64::NAN)
                }
            }
            Repr::Big(b) => b.to_f64().unwrap_or(f64::NAN),
        }
    }

    /// `self += factor * other`, the inner step of every elimination loop.
    pub fn add_mul(&mut self, factor: &Rational, other: &Rational) {
        if factor.is_zero() || other.is_zero() {
            return;
        }
        let product = factor * other;
        *self += &product;
    }

    fn add_impl(&self, rhs: &Rational) -> Rational {
        match (&self.0, &rhs.0) {
            (Repr::Small { num: an, den: 1 }, Repr::Small { num: bn, den: 1 }) => {
                match an.checked_add(*bn) {
                    Some(n) => Rational(Repr::Small { num: n, den: 1 }),
                    None => Rational::from_i128(*an as i128 + *bn as i128, 1),
                }
            }
            (Repr::Small { num: an, den: ad }, Repr::Small { num: bn, den: bd }) => {
                if *an == 0 {
                    return rhs.clone();
                }
                if *bn == 0 {
                    return self.clone();
                }
                let (an, ad, bn, bd) = (*an, *ad, *bn, *bd);
                if ad == bd {
                    if let Some(n) = an.checked_add(bn) {
                        return Rational::reduce_small(n, ad);
                    }
                    return Rational::from_i128(an as i128 + bn as i128, ad as i128);
                }
                let g = gcd_u64(ad as u64, bd as u64) as i64;
                let (ad_g, bd_g) = (ad / g, bd / g);
                let fast = an
                    .checked_mul(bd_g)
                    .zip(bn.checked_mul(ad_g))
                    .and_then(|(x, y)| x.checked_add(y))
                    .zip(ad.checked_mul(bd_g));
                match fast {
                    Some((n, d)) => Rational::reduce_small(n, d),
                    None => {
                        let (an, ad, bn, bd) = (an as i128, ad as i128, bn as i128, bd as i128);
                        Rational::from_i128(an * bd + bn * ad, ad * bd)
                    }
                }
            }
            _ => Rational::from_big(self.to_big() + rhs.to_big()),
        }
    }

    fn mul_impl(&self, rhs: &Rational) -> Rational {
        match (&self.0, &rhs.0) {
            (Repr::Small { num: an, den: ad }, Repr::Small { num: bn, den: bd }) => {
                if *an == 0 || *bn == 0 {
                    return Rational::zero();
                }
                if *ad == 1 && *bd == 1 {
                    if let Some(n) = an.checked_mul(*bn) {
                        return Rational(Repr::Small { num: n, den: 1 });
                    }
                }
                // Cross-cancel first so the products stay small.
                let g1 = gcd_u64(an.unsigned_abs(), bd.unsigned_abs());
                let g2 = gcd_u64(bn.unsigned_abs(), ad.unsigned_abs());
                let (an, bn) = (div_small(*an, g1), div_small(*bn, g2));
                let (ad, bd) = (div_small(*ad, g2), div_small(*bd, g1));
                match an.checked_mul(bn).zip(ad.checked_mul(bd)) {
                    Some((num, den)) => Rational(Repr::Small { num, den }),
                    None => Rational::from_i128(an as i128 * bn as i128, ad as i128 * bd as i128),
                }
            }
            _ => Rational::from_big(self.to_big() * rhs.to_big()),
        }
    }

    fn neg_impl(&self) -> Rational {
        match &self.0 {
            Repr::Small { num, den } => match num.checked_neg() {
                Some(n) => Rational(Repr::Small { num: n, den: *den }),
                None => Rational::from_i128(-(*num as i128), *den as i128),
            },
            Repr::Big(b) => Rational::from_big(-(**b).clone()),
        }
    }
}

impl Default for Rational {
    fn default() -> Self {
        Rational::zero()
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_integer(n)
    }
}

impl From<i32> for Rational {
    fn from(n: i32) -> Self {
        Rational::from_integer(n as i64)
    }
}

impl From<u64> for Rational {
    fn from(n: u64) -> Self {
        Rational::from_i128(n as i128, 1)
    }
}

impl From<usize> for Rational {
    fn from(n: usize) -> Self {
        Rational::from_i128(n as i128, 1)
    }
}

impl From<BigRational> for Rational {
    fn from(b: BigRational) -> Self {
        Rational::from_big(b)
    }
}

impl PartialEq for Rational {
    fn eq(&self, other: &Self) -> bool {
        match (&self.0, &other.0) {
            (Repr::Small { num: a, den: b }, Repr::Small { num: c, den: d }) => a == c && b == d,
            (Repr::Big(a), Repr::Big(b)) => a == b,
            _ => false,
        }
    }
}

impl Eq for Rational {}

impl Hash for Rational {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match &self.0 {
            Repr::Small { num, den } => {
                0u8.hash(state);
                num.hash(state);
                den.hash(state);
            }
            Repr::Big(b) => {
                1u8.hash(state);
                b.numer().hash(state);
                b.denom().hash(state);
            }
        }
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.0, &other.0) {
            (Repr::Small { num: an, den: ad }, Repr::Small { num: bn, den: bd }) => {
                (*an as i128 * *bd as i128).cmp(&(*bn as i128 * *ad as i128))
            }
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small { num, den: 1 } => write!(f, "{num}"),
            Repr::Small { num, den } => write!(f, "{num}/{den}"),
            Repr::Big(b) if b.is_integer() => write!(f, "{}", b.numer()),
            Repr::Big(b) => write!(f, "{}/{}", b.numer(), b.denom()),
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = ParseRationalError;

    /// Accepts `n`, `n/d`, and decimal literals such as `-0.25` or `1.5e-3`;
    /// decimals are converted exactly.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() {
            return Err(ParseRationalError::Empty);
        }
        let malformed = || ParseRationalError::Malformed(s.to_string());
        if let Some((n, d)) = s.split_once('/') {
            let num: BigInt = parse_int(n.trim()).ok_or_else(malformed)?;
            let den: BigInt = parse_int(d.trim()).ok_or_else(malformed)?;
            if den.is_zero() {
                return Err(ParseRationalError::ZeroDenominator(s.to_string()));
            }
            return Ok(Rational::from_bigints(num, den));
        }
        parse_decimal(s).ok_or_else(malformed)
    }
}

fn parse_int(s: &str) -> Option<BigInt> {
    let digits = s.strip_prefix(['+', '-']).unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.strip_prefix('+').unwrap_or(s).parse().ok()
}

fn parse_decimal(s: &str) -> Option<Rational> {
    let (negative, body) = match s.as_bytes()[0] {
        b'-' => (true, &s[1..]),
        b'+' => (false, &s[1..]),
        _ => (false, s),
    };
    let (mantissa, exponent) = match body.find(['e', 'E']) {
        Some(i) => {
            let e = &body[i + 1..];
            let digits = e.strip_prefix(['+', '-']).unwrap_or(e);
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return None;
            }
            (&body[..i], e.parse::<i32>().ok()?)
        }
        None => (body, 0),
    };
    let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part
        .bytes()
        .chain(frac_part.bytes())
        .all(|b| b.is_ascii_digit())
    {
        return None;
    }
    let digits = format!("{int_part}{frac_part}");
    let mut num: BigInt = digits.parse().ok()?;
    if negative {
        num = -num;
    }
    let scale = exponent - frac_part.len() as i32;
    let ten = BigInt::from(10);
    let value = if scale >= 0 {
        BigRational::from_integer(num * num_traits::pow(ten, scale as usize))
    } else {
        BigRational::new(num, num_traits::pow(ten, (-scale) as usize))
    };
    Some(Rational::from_big(value))
}

macro_rules! forward_binop {
    ($Trait:ident, $method:ident, $Assign:ident, $assign:ident, $imp:expr) => {
        impl $Trait<&Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                $imp(self, rhs)
            }
        }
        impl $Trait<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                $imp(&self, &rhs)
            }
        }
        impl $Trait<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                $imp(&self, rhs)
            }
        }
        impl $Trait<Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                $imp(self, &rhs)
            }
        }
        impl $Assign<&Rational> for Rational {
            fn $assign(&mut self, rhs: &Rational) {
                *self = $imp(&*self, rhs);
            }
        }
        impl $Assign<Rational> for Rational {
            fn $assign(&mut self, rhs: Rational) {
                *self = $imp(&*self, &rhs);
            }
        }
    };
}

forward_binop!(
    Add,
    add,
    AddAssign,
    add_assign,
    |a: &Rational, b: &Rational| a.add_impl(b)
);
forward_binop!(
    Sub,
    sub,
    SubAssign,
    sub_assign,
    |a: &Rational, b: &Rational| a.add_impl(&b.neg_impl())
);
forward_binop!(
    Mul,
    mul,
    MulAssign,
    mul_assign,
    |a: &Rational, b: &Rational| a.mul_impl(b)
);
forward_binop!(
    Div,
    div,
    DivAssign,
    div_assign,
    |a: &Rational, b: &Rational| a.mul_impl(&b.recip())
);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        self.neg_impl()
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        self.neg_impl()
    }
}

impl Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Rational {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a Rational> for Rational {
    fn sum<I: Iterator<Item = &'a Rational>>(iter: I) -> Rational {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}
