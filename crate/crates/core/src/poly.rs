//! Dense univariate polynomials over Q.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{big, rational_sqrt, Rational};
use crate::error::{Error, Result};

/// Coefficients in ascending degree; the last one is nonzero, the zero
/// polynomial is empty.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| Rational::from_integer(c.into())).collect())
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Poly::new(vec![c])
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        Poly::from_ints(&[0, 1])
    }

    pub fn monomial(c: Rational, degree: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); degree + 1];
        coeffs[degree] = c;
        Poly::new(coeffs)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        Poly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Monic associate; the zero polynomial stays zero.
    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let inv = self.leading().recip();
        self.scale(&inv)
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut out = Poly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                out = &out * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        out
    }

    /// `self(inner)`.
    pub fn compose(&self, inner: &Poly) -> Poly {
        let mut acc = Poly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * inner) + &Poly::constant(c.clone());
        }
        acc
    }

    /// Euclidean division. Panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        let dd = divisor.degree().expect("polynomial division by zero");
        let Some(nd) = self.degree() else {
            return (Poly::zero(), Poly::zero());
        };
        if nd < dd {
            return (Poly::zero(), self.clone());
        }
        let lc_inv = divisor.leading().recip();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rational::zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let c = &rem[k + dd] * &lc_inv;
            if c.is_zero() {
                continue;
            }
            for (i, d) in divisor.coeffs.iter().enumerate() {
                rem[k + i] -= &c * d;
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Poly::new(quot), Poly::new(rem))
    }

    /// Quotient when `divisor` divides `self` exactly.
    pub fn exact_div(&self, divisor: &Poly) -> Option<Poly> {
        let (q, r) = self.div_rem(divisor);
        r.is_zero().then_some(q)
    }

    /// Clears denominators and removes the integer content, keeping the sign
    /// of the leading coefficient. Returns the integer coefficients, ascending.
    pub fn primitive_integer(&self) -> Vec<BigInt> {
        let l = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * big(l.clone())).to_integer())
            .collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if g.is_zero() {
            return ints;
        }
        ints.into_iter().map(|c| c / &g).collect()
    }

    /// Distinct rational roots, ascending.
    pub fn rational_roots(&self) -> Vec<Rational> {
        let Some(deg) = self.degree() else {
            return Vec::new();
        };
        if deg == 0 {
            return Vec::new();
        }
        let radical = squarefree_part_poly(self).expect("nonzero");
        let ints = radical.primitive_integer();
        let n = ints.len() - 1;
        let lead = ints[n].clone();
        // y = lead·x turns lead^(n-1)·f(y/lead) into a monic integer polynomial
        // whose rational roots are integers.
        let monic: Vec<Rational> = ints
            .iter()
            .enumerate()
            .map(|(i, c)| {
                if i == n {
                    Rational::one()
                } else {
                    big(c * num_traits::pow(lead.clone(), n - 1 - i))
                }
            })
            .collect();
        let g = Poly::new(monic);
        let roots = integer_roots(&g);
        let lead = big(lead);
        let mut out: Vec<Rational> = roots.into_iter().map(|y| big(y) / &lead).collect();
        out.sort();
        out
    }

    /// Writes the polynomial with `var` as the variable name.
    pub fn display(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if s.is_empty() {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            if i == 0 {
                s.push_str(&a.to_string());
            } else if a.is_one() {
                s.push_str(&mono);
            } else if a.is_integer() {
                s.push_str(&format!("{a}*{mono}"));
            } else {
                s.push_str(&format!("({a})*{mono}"));
            }
        }
        s
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({})", self.display("x"))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display("x"))
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly { (&self).$m(&rhs) }
        }
        impl $tr<&Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: &Poly) -> Poly { (&self).$m(rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

/// Monic gcd.
pub fn poly_gcd(p: &Poly, q: &Poly) -> Result<Poly> {
    if p.is_zero() && q.is_zero() {
        return Err(Error::BothZero);
    }
    let (mut a, mut b) = (p.monic(), q.monic());
    while !b.is_zero() {
        let (_, r) = a.div_rem(&b);
        a = b;
        b = r.monic();
    }
    Ok(a.monic())
}

/// Monic product of the distinct irreducible factors: `p / gcd(p, p')`.
pub fn squarefree_part_poly(p: &Poly) -> Result<Poly> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let g = poly_gcd(p, &p.derivative())?;
    Ok(p.exact_div(&g).expect("gcd divides").monic())
}

pub fn is_squarefree(p: &Poly) -> bool {
    !p.is_zero() && poly_gcd(p, &p.derivative()).is_ok_and(|g| g.is_one())
}

/// Yun's algorithm: monic `a_1, a_2, ...` with `p = lc(p) · Π a_i^i`,
/// pairwise coprime and squarefree. Trailing ones are dropped.
pub fn squarefree_decomposition(p: &Poly) -> Result<Vec<Poly>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let p = p.monic();
    if p.is_constant() {
        return Ok(Vec::new());
    }
    let dp = p.derivative();
    let a0 = poly_gcd(&p, &dp)?;
    let mut b = p.exact_div(&a0).expect("gcd divides");
    let mut c = dp.exact_div(&a0).expect("gcd divides");
    let mut d = &c - &b.derivative();
    let mut out = Vec::new();
    while !b.is_constant() {
        let a = poly_gcd(&b, &d)?;
        b = b.exact_div(&a).expect("gcd divides");
        c = d.exact_div(&a).expect("gcd divides");
        d = &c - &b.derivative();
        out.push(a);
    }
    while out.last().is_some_and(|a| a.is_one()) {
        out.pop();
    }
    Ok(out)
}

/// Monic product of the factors of odd multiplicity: the class of `p`
/// modulo squares in Q[x], up to the leading coefficient.
pub fn odd_part(p: &Poly) -> Result<Poly> {
    let parts = squarefree_decomposition(p)?;
    Ok(parts
        .iter()
        .enumerate()
        .filter(|(i, _)| i % 2 == 0)
        .fold(Poly::one(), |acc, (_, a)| &acc * a))
}

/// `q` with `q² = p` and positive leading coefficient, by matching
/// coefficients from the top down.
pub fn is_perfect_square_poly(p: &Poly) -> Option<Poly> {
    let Some(n) = p.degree() else {
        return Some(Poly::zero());
    };
    if n % 2 == 1 {
        return None;
    }
    let m = n / 2;
    let top = rational_sqrt(&p.leading())?;
    let mut q = vec![Rational::zero(); m + 1];
    let two_top = &top + &top;
    q[m] = top;
    for k in (0..m).rev() {
        // coefficient of x^(m+k) in q²: 2 q_m q_k + Σ_{k<i<m} q_i q_{m+k-i}
        let mut acc = p.coeff(m + k);
        for i in (k + 1)..m {
            acc -= &q[i] * &q[m + k - i];
        }
        q[k] = acc / &two_top;
    }
    let q = Poly::new(q);
    (&q * &q == *p).then_some(q)
}

fn sturm_sequence(p: &Poly) -> Vec<Poly> {
    let mut seq = vec![p.clone(), p.derivative()];
    loop {
        let n = seq.len();
        if seq[n - 1].is_zero() {
            seq.pop();
            break;
        }
        let (_, r) = seq[n - 2].div_rem(&seq[n - 1]);
        if r.is_zero() {
            break;
        }
        seq.push(-&r);
    }
    seq
}

fn sign_changes(seq: &[Poly], x: &Rational) -> usize {
    let mut changes = 0;
    let mut last: Option<bool> = None;
    for p in seq {
        let v = p.eval(x);
        if v.is_zero() {
            continue;
        }
        let pos = v.is_positive();
        if last.is_some_and(|l| l != pos) {
            changes += 1;
        }
        last = Some(pos);
    }
    changes
}

/// Integer roots of a squarefree monic polynomial with integer
/// coefficients, by Sturm bisection over integer intervals.
fn integer_roots(g: &Poly) -> Vec<BigInt> {
    let bound = g
        .coeffs
        .iter()
        .map(|c| c.abs().to_integer())
        .max()
        .unwrap_or_default()
        + BigInt::one();
    let seq = sturm_sequence(g);
    let mut roots = Vec::new();
    let lo = -&bound - BigInt::one();
    let v_lo = sign_changes(&seq, &big(lo.clone()));
    let v_hi = sign_changes(&seq, &big(bound.clone()));
    let mut stack = vec![(lo, v_lo, bound, v_hi)];
    while let Some((a, va, b, vb)) = stack.pop() {
        if va <= vb {
            continue;
        }
        if &b - &a == BigInt::one() {
            if g.eval(&big(b.clone())).is_zero() {
                roots.push(b);
            }
            continue;
        }
        let mid: BigInt = (&a + &b).div_floor(&BigInt::from(2));
        let vm = sign_changes(&seq, &big(mid.clone()));
        stack.push((a, va, mid.clone(), vm));
        stack.push((mid, vm, b, vb));
    }
    roots
}
