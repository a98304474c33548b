//! Rational functions over Q, kept reduced with a monic denominator.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::Serialize;

use crate::arith::{Rational, SquareClassRep};
use crate::error::{Error, Result};
use crate::factor::FactorConfig;
use crate::poly::{is_perfect_square_poly, odd_part, poly_gcd, Poly};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: Poly,
    den: Poly,
}

impl RationalFunction {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if num.is_zero() {
            return Ok(RationalFunction::zero());
        }
        let g = poly_gcd(&num, &den)?;
        let num = num.exact_div(&g).expect("gcd divides");
        let den = den.exact_div(&g).expect("gcd divides");
        let lc = den.leading().recip();
        Ok(RationalFunction {
            num: num.scale(&lc),
            den: den.scale(&lc),
        })
    }

    pub fn zero() -> Self {
        RationalFunction {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Self {
        RationalFunction::from_poly(Poly::one())
    }

    pub fn constant(c: Rational) -> Self {
        RationalFunction::from_poly(Poly::constant(c))
    }

    pub fn from_poly(p: Poly) -> Self {
        RationalFunction {
            num: p,
            den: Poly::one(),
        }
    }

    /// The identity function `x`.
    pub fn x() -> Self {
        RationalFunction::from_poly(Poly::x())
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn as_poly(&self) -> Option<&Poly> {
        self.den.is_one().then_some(&self.num)
    }

    pub fn recip(&self) -> Result<Self> {
        RationalFunction::new(self.den.clone(), self.num.clone())
    }

    pub fn checked_div(&self, rhs: &RationalFunction) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        RationalFunction::new(&self.num * &rhs.den, &self.den * &rhs.num)
    }

    pub fn pow(&self, e: u32) -> Self {
        RationalFunction {
            num: self.num.pow(e),
            den: self.den.pow(e),
        }
    }

    /// Whether `x0` is a root of the denominator.
    pub fn is_pole(&self, x0: &Rational) -> bool {
        self.den.eval(x0).is_zero()
    }

    pub fn eval(&self, x0: &Rational) -> Result<Rational> {
        let d = self.den.eval(x0);
        if d.is_zero() {
            return Err(Error::Pole { at: x0.clone() });
        }
        Ok(self.num.eval(x0) / d)
    }

    /// `self(inner)`. Fails when `inner` is a constant pole of `self`.
    pub fn compose(&self, inner: &RationalFunction) -> Result<Self> {
        let p = self.num.degree().unwrap_or(0);
        let q = self.den.degree().unwrap_or(0);
        let k = p.max(q);
        let (a, b) = (&inner.num, &inner.den);
        // Σ c_i a^i b^(k-i)
        let homogenize = |f: &Poly| {
            let mut acc = Poly::zero();
            let mut a_pow = Poly::one();
            let b_pows: Vec<Poly> = (0..=k).map(|e| b.pow(e as u32)).collect();
            for (i, c) in f.coeffs().iter().enumerate() {
                if !c.is_zero() {
                    acc = &acc + &(&a_pow * &b_pows[k - i]).scale(c);
                }
                a_pow = &a_pow * a;
            }
            acc
        };
        let den = homogenize(&self.den);
        if den.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        RationalFunction::new(homogenize(&self.num), den)
    }

    /// `g` with `g² = self`, when one exists over Q.
    pub fn sqrt(&self) -> Option<RationalFunction> {
        let n = is_perfect_square_poly(&self.num)?;
        let d = is_perfect_square_poly(&self.den)?;
        RationalFunction::new(n, d).ok()
    }

    /// Class of `self` in Q(x)* modulo squares.
    pub fn mod_square_class(&self) -> Result<ModSquareClass> {
        self.mod_square_class_with(&FactorConfig::default())
    }

    pub fn mod_square_class_with(&self, cfg: &FactorConfig) -> Result<ModSquareClass> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        ModSquareClass::of_poly_with(&(&self.num * &self.den), cfg)
    }

    pub fn display(&self, var: &str) -> String {
        if self.den.is_one() {
            self.num.display(var)
        } else {
            format!("({})/({})", self.num.display(var), self.den.display(var))
        }
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalFunction({})", self.display("x"))
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display("x"))
    }
}

impl From<Poly> for RationalFunction {
    fn from(p: Poly) -> Self {
        RationalFunction::from_poly(p)
    }
}

impl Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        if self.den == rhs.den {
            return RationalFunction::new(&self.num + &rhs.num, self.den.clone()).expect("nonzero den");
        }
        RationalFunction::new(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
        .expect("nonzero den")
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &(-rhs)
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        RationalFunction::new(&self.num * &rhs.num, &self.den * &rhs.den).expect("nonzero den")
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for RationalFunction {
            type Output = RationalFunction;
            fn $m(self, rhs: RationalFunction) -> RationalFunction { (&self).$m(&rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

/// A class of Q(x)* modulo squares: the monic product of the odd-multiplicity
/// factors, together with the square class of the leading constant.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ModSquareClass {
    #[serde(serialize_with = "serialize_poly")]
    pub poly: Poly,
    pub constant: SquareClassRep,
}

fn serialize_poly<S: serde::Serializer>(p: &Poly, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&p.display("h"))
}

impl ModSquareClass {
    pub fn of_poly(p: &Poly) -> Result<Self> {
        Self::of_poly_with(p, &FactorConfig::default())
    }

    pub fn of_poly_with(p: &Poly, cfg: &FactorConfig) -> Result<Self> {
        if p.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        Ok(ModSquareClass {
            poly: odd_part(p)?,
            constant: cfg.squarefree_part(&p.leading())?,
        })
    }

    pub fn is_trivial(&self) -> bool {
        self.poly.is_one() && self.constant.is_trivial()
    }
}

/// Evaluates `f` at `x0`; see [`RationalFunction::eval`].
pub fn rf_evaluate(f: &RationalFunction, x0: &Rational) -> Result<Rational> {
    f.eval(x0)
}

impl Default for RationalFunction {
    fn default() -> Self {
        RationalFunction::zero()
    }
}

impl RationalFunction {
    /// Equality as functions, i.e. after reduction; `==` already has this
    /// meaning because both sides are kept normalized.
    pub fn same_function(&self, other: &RationalFunction) -> bool {
        self == other
    }

    pub fn constant_value(&self) -> Option<Rational> {
        self.is_constant().then(|| self.num.coeff(0) / self.den.coeff(0))
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }
}

impl Zero for RationalFunction {
    fn zero() -> Self {
        RationalFunction::zero()
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for RationalFunction {
    fn one() -> Self {
        RationalFunction::one()
    }
}
