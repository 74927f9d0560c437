//! Cyclic quotient surface types `X(d;a,b)` and weighted blow-up charts.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactnum::{gcd, gcd3, mod_inverse, rat, Rat};

/// Normalized cyclic quotient type; `a`, `b` are kept in `[0, d)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct QuotType {
    d: i64,
    a: i64,
    b: i64,
}

impl QuotType {
    pub fn smooth() -> Self {
        QuotType { d: 1, a: 0, b: 0 }
    }

    pub fn new(d: i64, a: i64, b: i64) -> Result<Self> {
        normalize_type(d, a, b)
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    pub fn a(&self) -> i64 {
        self.a
    }

    pub fn b(&self) -> i64 {
        self.b
    }

    pub fn is_smooth(&self) -> bool {
        self.d == 1
    }

    /// Character residue `a i + b j mod d` of the monomial `x^i y^j`.
    pub fn residue(&self, i: u32, j: u32) -> i64 {
        (self.a * i as i64 + self.b * j as i64).rem_euclid(self.d)
    }
}

/// Serialized as the string `X(d;a,b)`.
impl Serialize for QuotType {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for QuotType {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for QuotType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "X({};{},{})", self.d, self.a, self.b)
    }
}

impl FromStr for QuotType {
    type Err = Error;

    /// Accepts `X(d;a,b)` (whitespace tolerant) and normalizes it.
    fn from_str(s: &str) -> Result<Self> {
        let (d, a, b) = parse_type_triple(s)?;
        normalize_type(d, a, b)
    }
}

/// The raw `(d, a, b)` of `X(d;a,b)`, before normalization.
pub fn parse_type_triple(s: &str) -> Result<(i64, i64, i64)> {
    let bad = || Error::BadType(format!("expected X(d;a,b), got `{s}`"));
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let inner = t
        .strip_prefix("X(")
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(bad)?;
    let (d, ab) = inner.split_once(';').ok_or_else(bad)?;
    let (a, b) = ab.split_once(',').ok_or_else(bad)?;
    let p = |x: &str| x.parse::<i64>().map_err(|_| bad());
    Ok((p(d)?, p(a)?, p(b)?))
}

/// Result of normalization plus the exponent divisors it induces on germs:
/// `x` exponents are divided by `div_x` and `y` exponents by `div_y`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Normalization {
    pub t: QuotType,
    pub div_x: i64,
    pub div_y: i64,
}

/// Iterates `X(d;a,b) -> X(d/((d,a)(d,b)); a/(d,a), b/(d,b))` to a fixed point.
pub fn normalize_with_divisors(d: i64, a: i64, b: i64) -> Result<Normalization> {
    if d < 1 {
        return Err(Error::BadType(format!("order must be positive, got {d}")));
    }
    if gcd3(d, a, b) != 1 {
        return Err(Error::BadType(format!("gcd({d},{a},{b}) != 1")));
    }
    let (mut d, mut a, mut b) = (d, a.rem_euclid(d), b.rem_euclid(d));
    let (mut div_x, mut div_y) = (1, 1);
    loop {
        let ga = gcd(d, a);
        let gb = gcd(d, b);
        if d == 1 || (ga == 1 && gb == 1) {
            break;
        }
        d /= ga * gb;
        a = (a / ga).rem_euclid(d);
        b = (b / gb).rem_euclid(d);
        div_x *= gb;
        div_y *= ga;
    }
    if d == 1 {
        a = 0;
        b = 0;
    }
    Ok(Normalization {
        t: QuotType { d, a, b },
        div_x,
        div_y,
    })
}

pub fn normalize_type(d: i64, a: i64, b: i64) -> Result<QuotType> {
    Ok(normalize_with_divisors(d, a, b)?.t)
}

/// Same surface germ up to swapping coordinates and changing the generator.
pub fn types_isomorphic(t1: &QuotType, t2: &QuotType) -> bool {
    if t1.d != t2.d {
        return false;
    }
    let d = t1.d;
    if d == 1 {
        return true;
    }
    (1..d).filter(|u| gcd(*u, d) == 1).any(|u| {
        let (a, b) = ((u * t1.a).rem_euclid(d), (u * t1.b).rem_euclid(d));
        (a, b) == (t2.a, t2.b) || (b, a) == (t2.a, t2.b)
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BlowupCharts {
    pub parent: QuotType,
    pub weights: (i64, i64),
    pub e: i64,
    pub chart1: QuotType,
    pub chart2: QuotType,
}

/// Chart types of the `(p,q)`-weighted blow-up of the origin of `t`.
pub fn blowup_charts(t: &QuotType, p: i64, q: i64) -> Result<BlowupCharts> {
    if p < 1 || q < 1 || gcd(p, q) != 1 {
        return Err(Error::Degenerate(format!(
            "weights ({p},{q}) must be coprime and positive"
        )));
    }
    let (d, a, b) = (t.d, t.a, t.b);
    let e = gcd(d, p * b - q * a);
    let a1 = mod_inverse(a, d)?;
    let b1 = mod_inverse(b, d)?;
    let n1 = -q + a1 * p * b;
    let n2 = -p + b1 * q * a;
    assert!(
        n1 % e == 0 && n2 % e == 0 && (p * d) % e == 0 && (q * d) % e == 0,
        "non-exact chart division"
    );
    Ok(BlowupCharts {
        parent: *t,
        weights: (p, q),
        e,
        chart1: normalize_type(p * d / e, 1, n1 / e)?,
        chart2: normalize_type(q * d / e, n2 / e, 1)?,
    })
}

/// `(ν/e, e ν/(p q d))`: multiplicity of the exceptional divisor in the
/// pullback and its intersection with the strict transform.
pub fn exceptional_data(bc: &BlowupCharts, nu: i64) -> (Rat, Rat) {
    let (p, q) = bc.weights;
    (rat(nu, bc.e), rat(bc.e * nu, p * q * bc.parent.d))
}
