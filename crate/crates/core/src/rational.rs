//! Exact rational scalars and their string encoding.
//!
//! Every number in the toolkit is a [`Rational`] (an arbitrary precision
//! fraction kept in lowest terms). On the wire a rational is the string
//! `"p/q"`, or `"p"` when the denominator is one.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;
pub type Vector = Vec<Rational>;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn zero() -> Rational {
    Rational::zero()
}

pub fn one() -> Rational {
    Rational::one()
}

pub fn zeros(n: usize) -> Vector {
    vec![Rational::zero(); n]
}

pub fn unit_vector(n: usize, i: usize) -> Vector {
    let mut v = zeros(n);
    v[i] = Rational::one();
    v
}

pub fn ints(xs: &[i64]) -> Vector {
    xs.iter().map(|&x| int(x)).collect()
}

pub fn format(r: &Rational) -> String {
    r.to_string()
}

pub fn parse(s: &str) -> Result<Rational> {
    let t = s.trim();
    if let Ok(r) = t.parse::<Rational>() {
        return Ok(r);
    }
    // plain decimals such as "0.25" are accepted on input and converted exactly
    if let Some((whole, fracpart)) = t.split_once('.') {
        let neg = whole.starts_with('-');
        let digits = format!("{}{}", whole.trim_start_matches(['-', '+']), fracpart);
        if !digits.is_empty() && digits.chars().all(|c| c.is_ascii_digit()) {
            let num: BigInt = digits.parse().map_err(|_| Error::Parse(s.to_string()))?;
            let den = num_traits::pow(BigInt::from(10), fracpart.len());
            let r = Rational::new(num, den);
            return Ok(if neg { -r } else { r });
        }
    }
    Err(Error::Parse(format!("not a rational number: {s:?}")))
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Closest rational with denominator at most `max_den` (continued fractions).
/// Used only to build preset geometry, never inside a decision.
pub fn approximate(x: f64, max_den: i64) -> Rational {
    let neg = x < 0.0;
    let mut y = x.abs();
    let (mut p0, mut q0, mut p1, mut q1) = (0i64, 1i64, 1i64, 0i64);
    loop {
        let a = y.floor();
        if a > i64::MAX as f64 / 4.0 {
            break;
        }
        let a = a as i64;
        let p2 = a.saturating_mul(p1).saturating_add(p0);
        let q2 = a.saturating_mul(q1).saturating_add(q0);
        if q2 > max_den {
            break;
        }
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
        let f = y - a as f64;
        if f < 1e-15 {
            break;
        }
        y = 1.0 / f;
    }
    if q1 == 0 {
        return int(if neg { -p1.max(1) } else { p1.max(1) });
    }
    let r = frac(p1, q1);
    if neg {
        -r
    } else {
        r
    }
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    assert_eq!(a.len(), b.len(), "dimension mismatch in dot product");
    let mut s = Rational::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            s += x * y;
        }
    }
    s
}

pub fn add(a: &[Rational], b: &[Rational]) -> Vector {
    assert_eq!(a.len(), b.len(), "dimension mismatch in vector sum");
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[Rational], b: &[Rational]) -> Vector {
    assert_eq!(a.len(), b.len(), "dimension mismatch in vector difference");
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale(a: &[Rational], s: &Rational) -> Vector {
    a.iter().map(|x| x * s).collect()
}

/// `acc += s * v`
pub fn axpy(acc: &mut [Rational], s: &Rational, v: &[Rational]) {
    assert_eq!(acc.len(), v.len(), "dimension mismatch in axpy");
    if s.is_zero() {
        return;
    }
    for (a, x) in acc.iter_mut().zip(v) {
        if !x.is_zero() {
            *a += s * x;
        }
    }
}

pub fn is_zero_vec(v: &[Rational]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// Scale a rational vector to the primitive integer vector with the same
/// direction (positive multiple).
pub fn primitive_integer(v: &[Rational]) -> Vec<BigInt> {
    let mut l = BigInt::one();
    for x in v {
        l = l.lcm(x.denom());
    }
    let mut out: Vec<BigInt> = v.iter().map(|x| x.numer() * (&l / x.denom())).collect();
    normalize_integer(&mut out);
    out
}

/// Divide an integer vector by the gcd of its entries.
pub fn normalize_integer(v: &mut [BigInt]) {
    let mut g = BigInt::zero();
    for x in v.iter() {
        if !x.is_zero() {
            g = g.gcd(x);
            if g.is_one() {
                return;
            }
        }
    }
    if g.is_zero() || g.is_one() {
        return;
    }
    for x in v.iter_mut() {
        *x = &*x / &g;
    }
}

pub fn from_integers(v: &[BigInt]) -> Vector {
    v.iter()
        .map(|x| Rational::from_integer(x.clone()))
        .collect()
}

pub fn sign(r: &Rational) -> i8 {
    if r.is_positive() {
        1
    } else if r.is_negative() {
        -1
    } else {
        0
    }
}

/// A vector that serializes as an array of `"p/q"` strings, for nesting in
/// other containers.
#[derive(
    Clone,
    Debug,
    PartialEq,
    Eq,
    PartialOrd,
    Ord,
    Hash,
    Default,
    serde::Serialize,
    serde::Deserialize,
)]
#[serde(transparent)]
pub struct RVec(#[serde(with = "serde_str::vec")] pub Vector);

impl From<Vector> for RVec {
    fn from(v: Vector) -> Self {
        RVec(v)
    }
}

impl std::ops::Deref for RVec {
    type Target = Vector;
    fn deref(&self) -> &Vector {
        &self.0
    }
}

/// Serde adapters for the `"p/q"` string encoding.
pub mod serde_str {
    use super::{format, parse, Rational};
    use serde::de::Error as _;
    use serde::{Deserialize, Deserializer, Serializer};

    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Loose {
        Str(String),
        Int(i64),
    }

    fn from_loose<E: serde::de::Error>(l: Loose) -> Result<Rational, E> {
        match l {
            Loose::Str(s) => parse(&s).map_err(E::custom),
            Loose::Int(i) => Ok(super::int(i)),
        }
    }

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        from_loose(Loose::deserialize(d)?)
    }

    pub mod option {
        use super::*;
        use serde::Serialize;

        pub fn serialize<S: Serializer>(r: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
            r.as_ref().map(format).serialize(s)
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Rational>, D::Error> {
            match Option::<Loose>::deserialize(d)? {
                None => Ok(None),
                Some(l) => from_loose(l).map(Some),
            }
        }
    }

    pub mod vec {
        use super::*;
        use serde::ser::SerializeSeq;

        pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
            let mut seq = s.serialize_seq(Some(v.len()))?;
            for x in v {
                seq.serialize_element(&format(x))?;
            }
            seq.end()
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
            Vec::<Loose>::deserialize(d)?
                .into_iter()
                .map(from_loose::<D::Error>)
                .collect()
        }
    }

    pub mod mat {
        use super::*;
        use serde::ser::SerializeSeq;

        struct Row<'a>(&'a [Rational]);

        impl serde::Serialize for Row<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
                super::vec::serialize(self.0, s)
            }
        }

        pub fn serialize<S: Serializer>(m: &[Vec<Rational>], s: S) -> Result<S::Ok, S::Error> {
            let mut seq = s.serialize_seq(Some(m.len()))?;
            for row in m {
                seq.serialize_element(&Row(row))?;
            }
            seq.end()
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(
            d: D,
        ) -> Result<Vec<Vec<Rational>>, D::Error> {
            let raw = Vec::<Vec<Loose>>::deserialize(d)?;
            raw.into_iter()
                .map(|row| row.into_iter().map(from_loose::<D::Error>).collect())
                .collect::<Result<Vec<_>, _>>()
                .map_err(D::Error::custom)
        }
    }
}
