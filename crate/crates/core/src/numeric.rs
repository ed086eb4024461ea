//! Exact arithmetic helpers: rationals, decimal parsing and printing, and
//! [`Length`], an exact non-negative distance that may be the square root of
//! a rational (Euclidean distances between rational points).

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses a JSON-style decimal literal (`-12`, `0.25`, `1.5e-3`) or a
/// fraction `p/q` into an exact rational.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let s = text.trim();
    if let Some((p, q)) = s.split_once('/') {
        let p = BigInt::from_str(p.trim()).map_err(|_| Error::Parse(format!("bad numerator in {text:?}")))?;
        let q = BigInt::from_str(q.trim()).map_err(|_| Error::Parse(format!("bad denominator in {text:?}")))?;
        if q.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {text:?}")));
        }
        return Ok(Rational::new(p, q));
    }
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(pos) => {
            let e = s[pos + 1..]
                .parse::<i32>()
                .map_err(|_| Error::Parse(format!("bad exponent in {text:?}")))?;
            (&s[..pos], e)
        }
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty()
        || !int_part.bytes().all(|b| b.is_ascii_digit())
        || !frac_part.bytes().all(|b| b.is_ascii_digit())
    {
        return Err(Error::Parse(format!("not a number: {text:?}")));
    }
    let all_digits = format!("{int_part}{frac_part}");
    let mut value = Rational::from_integer(
        BigInt::from_str(if all_digits.is_empty() { "0" } else { &all_digits }).unwrap(),
    );
    let shift = exponent - frac_part.len() as i32;
    let ten = Rational::from_integer(BigInt::from(10));
    if shift >= 0 {
        value *= num_traits::pow(ten, shift as usize);
    } else {
        value /= num_traits::pow(ten, (-shift) as usize);
    }
    if negative {
        value = -value;
    }
    Ok(value)
}

/// Exact decimal text when the expansion terminates, `p/q` otherwise.
pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        return r.numer().to_string();
    }
    let mut den = r.denom().clone();
    let two = BigInt::from(2);
    let five = BigInt::from(5);
    let (mut twos, mut fives) = (0usize, 0usize);
    while den.is_even() {
        den /= &two;
        twos += 1;
    }
    while (&den % &five).is_zero() {
        den /= &five;
        fives += 1;
    }
    if !den.is_one() {
        return format!("{}/{}", r.numer(), r.denom());
    }
    let places = twos.max(fives);
    let scaled = r * Rational::from_integer(num_traits::pow(BigInt::from(10), places));
    let digits = scaled.to_integer().abs().to_string();
    let digits = format!("{digits:0>width$}", width = places + 1);
    let (i, f) = digits.split_at(digits.len() - places);
    let sign = if r.is_negative() { "-" } else { "" };
    format!("{sign}{i}.{f}")
}

pub fn rational_to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

fn exact_sqrt(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let (n, d) = (r.numer(), r.denom());
    let (sn, sd) = (n.sqrt(), d.sqrt());
    (&sn * &sn == *n && &sd * &sd == *d).then(|| Rational::new(sn, sd))
}

/// Exact non-negative length, stored as its square.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Length {
    sq: Rational,
}

impl Length {
    pub fn zero() -> Self {
        Length { sq: Rational::zero() }
    }

    pub fn from_rational(d: &Rational) -> Result<Self> {
        if d.is_negative() {
            return Err(Error::InvalidInstance(format!("negative distance {}", format_rational(d))));
        }
        Ok(Length { sq: d * d })
    }

    pub fn from_integer(d: u64) -> Self {
        let d = Rational::from_integer(BigInt::from(d));
        Length { sq: &d * &d }
    }

    pub fn from_squared(sq: Rational) -> Result<Self> {
        if sq.is_negative() {
            return Err(Error::InvalidInstance("negative squared distance".into()));
        }
        Ok(Length { sq })
    }

    pub fn squared(&self) -> &Rational {
        &self.sq
    }

    pub fn is_zero(&self) -> bool {
        self.sq.is_zero()
    }

    /// `c * self` for a non-negative integer factor.
    pub fn times(&self, c: u64) -> Length {
        let c = Rational::from_integer(BigInt::from(c));
        Length { sq: &self.sq * &c * &c }
    }

    /// The value as a rational, when it is one.
    pub fn as_rational(&self) -> Option<Rational> {
        exact_sqrt(&self.sq)
    }

    /// Decides `self <= a + b` exactly.
    pub fn le_sum(&self, a: &Length, b: &Length) -> bool {
        // sqrt(x) <= sqrt(y) + sqrt(z)  <=>  x - y - z <= 2 sqrt(yz)
        let t = &self.sq - &a.sq - &b.sq;
        if !t.is_positive() {
            return true;
        }
        &t * &t <= int(4) * &a.sq * &b.sq
    }

    pub fn to_f64(&self) -> f64 {
        rational_to_f64(&self.sq).sqrt()
    }

    /// `self / other` as a float; `None` when `other` is zero.
    pub fn ratio(&self, other: &Length) -> Option<f64> {
        if other.is_zero() {
            return None;
        }
        Some(rational_to_f64(&(&self.sq / &other.sq)).sqrt())
    }

    pub fn to_exact_string(&self) -> String {
        match exact_sqrt(&self.sq) {
            Some(r) => format_rational(&r),
            None => format!("sqrt({})", format_rational(&self.sq)),
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let s = text.trim();
        if let Some(inner) = s.strip_prefix("sqrt(").and_then(|r| r.strip_suffix(')')) {
            return Length::from_squared(parse_rational(inner)?);
        }
        Length::from_rational(&parse_rational(s)?)
    }
}

impl PartialOrd for Length {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Length {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sq.cmp(&other.sq)
    }
}

impl fmt::Display for Length {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_exact_string())
    }
}

/// Serde helper writing a length as its exact string.
pub fn serialize_length<S: serde::Serializer>(value: &Length, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&value.to_exact_string())
}

pub fn serialize_length_opt<S: serde::Serializer>(value: &Option<Length>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match value {
        Some(v) => serialize_length(v, s),
        None => s.serialize_none(),
    }
}

/// Least common multiple of the denominators, used to scale rational
/// capacities onto integer flow networks.
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

pub fn to_u64(value: &BigInt, what: &'static str) -> Result<u64> {
    if value.sign() == Sign::Minus {
        return Err(Error::Overflow(what));
    }
    value.to_u64().ok_or(Error::Overflow(what))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_decimals_exactly() {
        assert_eq!(parse_rational("0.1").unwrap(), rat(1, 10));
        assert_eq!(parse_rational("-2.50").unwrap(), rat(-5, 2));
        assert_eq!(parse_rational("1.5e2").unwrap(), int(150));
        assert_eq!(parse_rational("25e-2").unwrap(), rat(1, 4));
        assert_eq!(parse_rational("3/6").unwrap(), rat(1, 2));
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("").is_err());
    }

    #[test]
    fn formats_terminating_and_repeating() {
        assert_eq!(format_rational(&rat(3, 8)), "0.375");
        assert_eq!(format_rational(&rat(-1, 20)), "-0.05");
        assert_eq!(format_rational(&int(7)), "7");
        assert_eq!(format_rational(&rat(1, 3)), "1/3");
    }

    #[test]
    fn length_order_and_display() {
        let five = Length::from_squared(int(5)).unwrap();
        let two = Length::from_integer(2);
        let three = Length::from_integer(3);
        assert!(two < five && five < three);
        assert_eq!(five.to_string(), "sqrt(5)");
        assert_eq!(Length::parse("sqrt(5)").unwrap(), five);
        assert_eq!(Length::parse("1.5").unwrap().to_string(), "1.5");
        assert_eq!(two.times(3), Length::from_integer(6));
    }

    #[test]
    fn triangle_with_square_roots() {
        let one = Length::from_integer(1);
        let root2 = Length::from_squared(int(2)).unwrap();
        assert!(root2.le_sum(&one, &one));
        assert!(Length::from_integer(2).le_sum(&one, &one));
        assert!(!Length::from_squared(int(5)).unwrap().le_sum(&one, &one));
    }
}
