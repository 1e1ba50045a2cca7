//! Exact rational scalars and small helpers around [`BigRational`].

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;
pub type RatVec = Vec<Rational>;
pub type IntVec = Vec<i64>;

pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn int(p: i64) -> Rational {
    Rational::from_integer(BigInt::from(p))
}

pub fn from_bigint(p: BigInt) -> Rational {
    Rational::from_integer(p)
}

/// Parses `p/q`, `p` or `-p/q`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.parse().ok()?;
            let q: BigInt = q.parse().ok()?;
            if q.is_zero() {
                return None;
            }
            Some(Rational::new(p, q))
        }
        None => s.parse::<BigInt>().ok().map(Rational::from_integer),
    }
}

/// Always `p/q`, even for integers, so output is uniform.
pub fn fmt_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn lcm_denominators<'a>(xs: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    xs.into_iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

pub fn gcd_slice(xs: &[i64]) -> i64 {
    xs.iter().fold(0i64, |g, &x| g.gcd(&x))
}

pub fn to_i64(x: &BigInt) -> Result<i64> {
    x.to_i64().ok_or(Error::Overflow("i64 conversion"))
}

pub fn rat_to_f64(x: &Rational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// A rational vector written as `num / den` with a common positive denominator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ScaledVec {
    pub num: Vec<i64>,
    pub den: i64,
}

impl ScaledVec {
    pub fn from_rats(v: &[Rational]) -> Result<Self> {
        let den = lcm_denominators(v.iter());
        let num = v
            .iter()
            .map(|x| to_i64(&(x.numer() * (&den / x.denom()))))
            .collect::<Result<Vec<_>>>()?;
        Ok(ScaledVec {
            num,
            den: to_i64(&den)?,
        })
    }

    pub fn from_ints(v: &[i64]) -> Self {
        ScaledVec {
            num: v.to_vec(),
            den: 1,
        }
    }

    pub fn to_rats(&self) -> RatVec {
        self.num.iter().map(|&x| rat(x, self.den)).collect()
    }
}

/// Exact square root of a nonnegative rational, if it is a perfect square.
pub fn rational_sqrt(x: &Rational) -> Option<Rational> {
    if x.is_negative() {
        return None;
    }
    let p = x.numer().sqrt();
    let q = x.denom().sqrt();
    if &(&p * &p) == x.numer() && &(&q * &q) == x.denom() {
        Some(Rational::new(p, q))
    } else {
        None
    }
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter()
        .zip(b)
        .fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

pub fn ints_to_rats(v: &[i64]) -> RatVec {
    v.iter().map(|&x| int(x)).collect()
}

pub fn is_integral(v: &[Rational]) -> bool {
    v.iter().all(|x| x.is_integer())
}

pub fn rats_to_ints(v: &[Rational]) -> Result<IntVec> {
    v.iter()
        .map(|x| {
            if x.is_integer() {
                to_i64(x.numer())
            } else {
                Err(Error::Verification(format!(
                    "expected integer, found {}",
                    fmt_rational(x)
                )))
            }
        })
        .collect()
}
