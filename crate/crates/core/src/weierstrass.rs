//! Weierstrass models over Q, their invariants, changes of coordinates and
//! the quadratic, quartic and sextic twists.
//!
//! A general model is `y² + a1·xy + a3·y = x³ + a2·x² + a4·x + a6`; a short
//! model is `y² = x³ + A·x + B`. Models with zero discriminant can be built
//! (they show up at cusps of parametrizations) and report themselves as
//! singular; operations that need an elliptic curve check for it.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::arith::{int, parse_rational, serialize_opt_rational, serialize_rational, Rational};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GeneralModel {
    pub a1: Rational,
    pub a2: Rational,
    pub a3: Rational,
    pub a4: Rational,
    pub a6: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ShortModel {
    pub a: Rational,
    pub b: Rational,
}

/// `x = u²x' + r`, `y = u³y' + u²s·x' + t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChangeOfVariables {
    pub u: Rational,
    pub r: Rational,
    pub s: Rational,
    pub t: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Invariants {
    #[serde(serialize_with = "serialize_rational")]
    pub b2: Rational,
    #[serde(serialize_with = "serialize_rational")]
    pub b4: Rational,
    #[serde(serialize_with = "serialize_rational")]
    pub b6: Rational,
    #[serde(serialize_with = "serialize_rational")]
    pub b8: Rational,
    #[serde(serialize_with = "serialize_rational")]
    pub c4: Rational,
    #[serde(serialize_with = "serialize_rational")]
    pub c6: Rational,
    #[serde(serialize_with = "serialize_rational")]
    pub discriminant: Rational,
    /// `None` when the discriminant vanishes.
    #[serde(serialize_with = "serialize_opt_rational")]
    pub j: Option<Rational>,
}

impl GeneralModel {
    pub fn new(a1: Rational, a2: Rational, a3: Rational, a4: Rational, a6: Rational) -> Self {
        GeneralModel { a1, a2, a3, a4, a6 }
    }

    pub fn from_ints(a: [i64; 5]) -> Self {
        let [a1, a2, a3, a4, a6] = a.map(int);
        GeneralModel { a1, a2, a3, a4, a6 }
    }

    pub fn invariants(&self) -> Invariants {
        let GeneralModel { a1, a2, a3, a4, a6 } = self;
        let b2 = a1 * a1 + int(4) * a2;
        let b4 = int(2) * a4 + a1 * a3;
        let b6 = a3 * a3 + int(4) * a6;
        let b8 = a1 * a1 * a6 + int(4) * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
        let c4 = &b2 * &b2 - int(24) * &b4;
        let c6 = -(&b2 * &b2 * &b2) + int(36) * &b2 * &b4 - int(216) * &b6;
        let discriminant = -(&b2 * &b2 * &b8) - int(8) * &b4 * &b4 * &b4 - int(27) * &b6 * &b6
            + int(9) * &b2 * &b4 * &b6;
        let j = (!discriminant.is_zero()).then(|| &c4 * &c4 * &c4 / &discriminant);
        Invariants {
            b2,
            b4,
            b6,
            b8,
            c4,
            c6,
            discriminant,
            j,
        }
    }

    pub fn discriminant(&self) -> Rational {
        self.invariants().discriminant
    }

    pub fn j_invariant(&self) -> Option<Rational> {
        self.invariants().j
    }

    pub fn is_singular(&self) -> bool {
        self.discriminant().is_zero()
    }

    pub fn require_nonsingular(&self) -> Result<&Self> {
        if self.is_singular() {
            Err(Error::SingularModel)
        } else {
            Ok(self)
        }
    }

    /// Coefficients of the model in the new coordinates `(x', y')`.
    pub fn transform(&self, c: &ChangeOfVariables) -> Result<GeneralModel> {
        if c.u.is_zero() {
            return Err(Error::ZeroParameter("u"));
        }
        let GeneralModel { a1, a2, a3, a4, a6 } = self;
        let ChangeOfVariables { u, r, s, t } = c;
        let u2 = u * u;
        let u3 = &u2 * u;
        let u4 = &u2 * &u2;
        let u6 = &u3 * &u3;
        let two = int(2);
        let three = int(3);
        Ok(GeneralModel {
            a1: (a1 + &two * s) / u,
            a2: (a2 - s * a1 + &three * r - s * s) / &u2,
            a3: (a3 + r * a1 + &two * t) / &u3,
            a4: (a4 - s * a3 + &two * r * a2 - (t + r * s) * a1 + &three * r * r - &two * s * t) / &u4,
            a6: (a6 + r * a4 + r * r * a2 + r * r * r - t * a3 - t * t - r * t * a1) / &u6,
        })
    }

    pub fn is_short(&self) -> bool {
        self.a1.is_zero() && self.a2.is_zero() && self.a3.is_zero()
    }

    /// A short model isomorphic to `self` and the change of variables that
    /// takes `self` to it. Already-short models come back unchanged.
    pub fn short_form(&self) -> (ShortModel, ChangeOfVariables) {
        if self.is_short() {
            return (
                ShortModel::new(self.a4.clone(), self.a6.clone()),
                ChangeOfVariables::identity(),
            );
        }
        let inv = self.invariants();
        // complete the square and remove the x² term, then scale by u = 1/(6d)
        // with d clearing every coefficient denominator, which gives
        // y² = x³ - 27 c4' x - 54 c6' with c4', c6' integral.
        let d = [&self.a1, &self.a2, &self.a3, &self.a4, &self.a6]
            .iter()
            .fold(BigInt::one(), |acc, a| acc.lcm(a.denom()));
        let u = Rational::new(BigInt::one(), BigInt::from(6) * d);
        let r = -&inv.b2 / int(12);
        let s = -&self.a1 / int(2);
        let t = -(&self.a1 * &r + &self.a3) / int(2);
        let c = ChangeOfVariables { u, r, s, t };
        let m = self.transform(&c).expect("u is nonzero");
        debug_assert!(m.is_short());
        (ShortModel::new(m.a4, m.a6), c)
    }
}

impl ChangeOfVariables {
    pub fn new(u: Rational, r: Rational, s: Rational, t: Rational) -> Result<Self> {
        if u.is_zero() {
            return Err(Error::ZeroParameter("u"));
        }
        Ok(ChangeOfVariables { u, r, s, t })
    }

    pub fn identity() -> Self {
        ChangeOfVariables {
            u: Rational::one(),
            r: Rational::zero(),
            s: Rational::zero(),
            t: Rational::zero(),
        }
    }

    /// Pure scaling `x = u²x'`, `y = u³y'`.
    pub fn scaling(u: Rational) -> Result<Self> {
        ChangeOfVariables::new(u, Rational::zero(), Rational::zero(), Rational::zero())
    }

    pub fn inverse(&self) -> Self {
        let ChangeOfVariables { u, r, s, t } = self;
        let u2 = u * u;
        ChangeOfVariables {
            u: u.recip(),
            r: -r / &u2,
            s: -s / u,
            t: (r * s - t) / (&u2 * u),
        }
    }
}

impl ShortModel {
    pub fn new(a: Rational, b: Rational) -> Self {
        ShortModel { a, b }
    }

    pub fn from_ints(a: i64, b: i64) -> Self {
        ShortModel::new(int(a), int(b))
    }

    /// `-16(4A³ + 27B²)`.
    pub fn discriminant(&self) -> Rational {
        int(-16) * (int(4) * &self.a * &self.a * &self.a + int(27) * &self.b * &self.b)
    }

    /// `-1728 (4A)³ / Δ`.
    pub fn j_invariant(&self) -> Option<Rational> {
        let d = self.discriminant();
        if d.is_zero() {
            return None;
        }
        let four_a = int(4) * &self.a;
        Some(int(-1728) * &four_a * &four_a * &four_a / d)
    }

    pub fn is_singular(&self) -> bool {
        self.discriminant().is_zero()
    }

    pub fn require_nonsingular(&self) -> Result<&Self> {
        if self.is_singular() {
            Err(Error::SingularModel)
        } else {
            Ok(self)
        }
    }

    pub fn to_general(&self) -> GeneralModel {
        let z = Rational::zero;
        GeneralModel::new(z(), z(), z(), self.a.clone(), self.b.clone())
    }

    /// The model after `x = u²x'`, `y = u³y'`: `(A/u⁴, B/u⁶)`.
    pub fn scale(&self, u: &Rational) -> Result<ShortModel> {
        if u.is_zero() {
            return Err(Error::ZeroParameter("u"));
        }
        let u2 = u * u;
        let u4 = &u2 * &u2;
        Ok(ShortModel::new(&self.a / &u4, &self.b / (&u4 * &u2)))
    }

    /// `x³ + Ax + B` as a polynomial in x.
    pub fn cubic(&self) -> crate::poly::Poly {
        crate::poly::Poly::new(vec![self.b.clone(), self.a.clone(), Rational::zero(), Rational::one()])
    }
}

impl Serialize for ShortModel {
    /// As `["A", "B"]`.
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [self.a.to_string(), self.b.to_string()].serialize(s)
    }
}

impl Serialize for GeneralModel {
    /// As `["a1", "a2", "a3", "a4", "a6"]`.
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [&self.a1, &self.a2, &self.a3, &self.a4, &self.a6]
            .map(|a| a.to_string())
            .serialize(s)
    }
}

impl fmt::Display for ShortModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "y^2 = x^3 + ({})x + ({})", self.a, self.b)
    }
}

impl fmt::Display for GeneralModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}, {}, {}, {}, {}]",
            self.a1, self.a2, self.a3, self.a4, self.a6
        )
    }
}

/// `E^d: y² = x³ + d²Ax + d³B`, with Δ multiplied by d⁶.
pub fn quadratic_twist(m: &ShortModel, d: &Rational) -> Result<ShortModel> {
    if d.is_zero() {
        return Err(Error::ZeroParameter("d"));
    }
    let d2 = d * d;
    Ok(ShortModel::new(&d2 * &m.a, &d2 * d * &m.b))
}

/// `y² = x³ + dAx`, the twist of `y² = x³ + Ax` by `d` in Q*/(Q*)⁴.
pub fn quartic_twist(a: &Rational, d: &Rational) -> Result<ShortModel> {
    if a.is_zero() {
        return Err(Error::ZeroParameter("A"));
    }
    if d.is_zero() {
        return Err(Error::ZeroParameter("d"));
    }
    Ok(ShortModel::new(d * a, Rational::zero()))
}

/// `y² = x³ + dB`, the twist of `y² = x³ + B` by `d` in Q*/(Q*)⁶.
pub fn sextic_twist(b: &Rational, d: &Rational) -> Result<ShortModel> {
    if b.is_zero() {
        return Err(Error::ZeroParameter("B"));
    }
    if d.is_zero() {
        return Err(Error::ZeroParameter("d"));
    }
    Ok(ShortModel::new(Rational::zero(), d * b))
}

/// A curve as read from the command line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CurveInput {
    General(GeneralModel),
    Short(ShortModel),
}

impl CurveInput {
    pub fn to_general(&self) -> GeneralModel {
        match self {
            CurveInput::General(m) => m.clone(),
            CurveInput::Short(m) => m.to_general(),
        }
    }
}

/// Parses `[a1,a2,a3,a4,a6]` or `[A,B]`; entries are rationals, optionally
/// quoted (`["-1", "0"]` and `[-1, 0]` are the same curve).
pub fn parse_curve(s: &str) -> Result<CurveInput> {
    let inner = s
        .trim()
        .strip_prefix('[')
        .and_then(|r| r.strip_suffix(']'))
        .ok_or_else(|| Error::Parse(format!("curve must be a bracketed list: {s:?}")))?;
    let vals = inner
        .split(',')
        .map(parse_rational)
        .collect::<Result<Vec<_>>>()?;
    match <[Rational; 5]>::try_from(vals) {
        Ok([a1, a2, a3, a4, a6]) => Ok(CurveInput::General(GeneralModel::new(a1, a2, a3, a4, a6))),
        Err(vals) => match <[Rational; 2]>::try_from(vals) {
            Ok([a, b]) => Ok(CurveInput::Short(ShortModel::new(a, b))),
            Err(v) => Err(Error::Parse(format!(
                "expected 2 or 5 coefficients, got {}",
                v.len()
            ))),
        },
    }
}

/// `["a1","a2","a3","a4","a6"]`.
pub fn serialize_general(m: &GeneralModel) -> String {
    let parts = [&m.a1, &m.a2, &m.a3, &m.a4, &m.a6].map(|a| format!("\"{a}\""));
    format!("[{}]", parts.join(","))
}

/// `["A","B"]`.
pub fn serialize_short(m: &ShortModel) -> String {
    format!("[\"{}\",\"{}\"]", m.a, m.b)
}
