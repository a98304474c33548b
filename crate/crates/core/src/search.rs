//! Genus of `y² = f(h)` and bounded-height search for affine rational points
//! on C_N: y² = F_N(h) and X_N: y² = F_N(h), z² = G_N(h).
//!
//! The height of `h = a/b` (lowest terms, `b > 0`) is `max(|a|, b)`. Only h is
//! enumerated; y and z are the rational square roots, taken with both signs.
//! Points at infinity are not searched.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::arith::{big, exact_isqrt, rat, rational_sqrt, Rational};
use crate::error::{Error, Result};
use crate::families::Catalog;
use crate::poly::{is_squarefree, Poly};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AffinePointC {
    pub h: Rational,
    pub y: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AffinePointX {
    pub h: Rational,
    pub y: Rational,
    pub z: Rational,
}

impl AffinePointC {
    pub fn new(h: Rational, y: Rational) -> Self {
        AffinePointC { h, y }
    }
}

impl AffinePointX {
    pub fn new(h: Rational, y: Rational, z: Rational) -> Self {
        AffinePointX { h, y, z }
    }
}

/// Denominator of h, then numerator, then the other coordinates.
fn canonical(a: &Rational, b: &Rational) -> Ordering {
    a.denom().cmp(b.denom()).then_with(|| a.numer().cmp(b.numer()))
}

impl Ord for AffinePointC {
    fn cmp(&self, other: &Self) -> Ordering {
        canonical(&self.h, &other.h).then_with(|| self.y.cmp(&other.y))
    }
}

impl PartialOrd for AffinePointC {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for AffinePointX {
    fn cmp(&self, other: &Self) -> Ordering {
        canonical(&self.h, &other.h)
            .then_with(|| self.y.cmp(&other.y))
            .then_with(|| self.z.cmp(&other.z))
    }
}

impl PartialOrd for AffinePointX {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for AffinePointC {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.h, self.y)
    }
}

impl fmt::Display for AffinePointX {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.h, self.y, self.z)
    }
}

impl Serialize for AffinePointC {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [self.h.to_string(), self.y.to_string()].serialize(s)
    }
}

impl Serialize for AffinePointX {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [self.h.to_string(), self.y.to_string(), self.z.to_string()].serialize(s)
    }
}

/// `⌊(deg f - 1)/2⌋` for squarefree `f` of degree at least 1.
pub fn genus_hyperelliptic(f: &Poly) -> Result<u32> {
    let d = match f.degree() {
        None => return Err(Error::ZeroPolynomial),
        Some(0) => return Err(Error::Parse("genus needs a nonconstant polynomial".into())),
        Some(d) => d as u32,
    };
    if !is_squarefree(f) {
        return Err(Error::NotSquarefree);
    }
    Ok((d - 1) / 2)
}

/// Number of points at infinity on the smooth model of `y² = f(h)`.
pub fn points_at_infinity(f: &Poly) -> u32 {
    match f.degree() {
        Some(d) if d % 2 == 1 => 1,
        Some(_) if rational_sqrt(&f.leading()).is_some() => 2,
        _ => 0,
    }
}

/// All `h` of height at most `height`, in canonical order.
fn heights(height: u64) -> impl ParallelIterator<Item = Vec<Rational>> {
    let h = height as i64;
    (1..=h).into_par_iter().map(move |b| {
        (-h..=h)
            .filter(|a| a.gcd(&b) == 1)
            .map(|a| rat(a, b))
            .collect()
    })
}

fn with_signs(r: Rational) -> Vec<Rational> {
    if r.is_zero() {
        vec![r]
    } else {
        vec![-r.clone(), r]
    }
}

/// Affine points of `y² = f(h)` with `height(h) ≤ height`.
pub fn search_c_poly(f: &Poly, height: u64) -> Vec<AffinePointC> {
    let mut out: Vec<AffinePointC> = heights(height)
        .flat_map_iter(|hs| {
            hs.into_iter()
                .filter_map(|h| rational_sqrt(&f.eval(&h)).map(|y| (h, y)))
                .flat_map(|(h, y)| with_signs(y).into_iter().map(move |y| AffinePointC::new(h.clone(), y)))
                .collect::<Vec<_>>()
        })
        .collect();
    out.sort();
    out
}

/// Affine points of `y² = f(h), z² = g(h)` with `height(h) ≤ height`.
pub fn search_x_poly(f: &Poly, g: &Poly, height: u64) -> Vec<AffinePointX> {
    let mut out: Vec<AffinePointX> = heights(height)
        .flat_map_iter(|hs| {
            let mut pts = Vec::new();
            for h in hs {
                let Some(y) = rational_sqrt(&f.eval(&h)) else {
                    continue;
                };
                let Some(z) = rational_sqrt(&g.eval(&h)) else {
                    continue;
                };
                for ys in with_signs(y) {
                    for zs in with_signs(z.clone()) {
                        pts.push(AffinePointX::new(h.clone(), ys.clone(), zs));
                    }
                }
            }
            pts
        })
        .collect();
    out.sort();
    out
}

pub fn search_c(cat: &Catalog, n: u32, height: u64) -> Result<Vec<AffinePointC>> {
    Ok(search_c_poly(&cat.family(n)?.f, height))
}

pub fn search_x(cat: &Catalog, n: u32, height: u64) -> Result<Vec<AffinePointX>> {
    let fam = cat.family(n)?;
    Ok(search_x_poly(&fam.f, &fam.g, height))
}

/// `b^(2k)·f(a/b)` with `k = ⌈deg f / 2⌉`, computed on integers.
fn homogenized(f: &Poly, h: &Rational) -> Option<(BigInt, u32)> {
    let d = f.degree()?;
    let k = d.div_ceil(2) as u32;
    let (a, b) = (h.numer(), h.denom());
    let ints = f.primitive_integer();
    // f = c · primitive with c rational; fold c into the check below
    let c = &f.leading() / big(ints[d].clone());
    let mut acc = BigInt::zero();
    for (i, ci) in ints.iter().enumerate() {
        acc += ci * a.pow(i as u32) * b.pow(2 * k - i as u32);
    }
    let scaled = c * big(acc);
    scaled.is_integer().then(|| (scaled.to_integer(), k))
}

/// Checks `y² = f(h)` by integer arithmetic on the homogenized form,
/// independently of [`Poly::eval`].
pub fn on_curve_homogeneous(f: &Poly, h: &Rational, y: &Rational) -> bool {
    let Some((v, k)) = homogenized(f, h) else {
        // non-integral scaling; fall back to the definition
        return y * y == f.eval(h);
    };
    if v.is_negative() {
        return false;
    }
    let Some(r) = exact_isqrt(v.magnitude()) else {
        return false;
    };
    let yb = y * big(h.denom().pow(k));
    yb.abs() == big(BigInt::from(r))
}

/// Whether `h` is a pole of the j-map (`"j"`) or of the dual map (`"j'"`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CuspVerdict {
    /// `"C"` or `"X"`.
    pub curve: &'static str,
    pub point: String,
    pub pole_of: Vec<&'static str>,
    pub holds: bool,
}

/// Every listed point of positive-genus C_N and X_N lies over a cusp: a pole
/// of `j_map` for C_N, of `j_map` or `jprime_map` for X_N.
pub fn cusp_check(cat: &Catalog, n: u32) -> Result<Vec<CuspVerdict>> {
    let fam = cat.family(n)?;
    let poles = |h: &Rational| {
        let mut v = Vec::new();
        if fam.j_map.is_pole(h) {
            v.push("j");
        }
        if fam.jprime_map.is_pole(h) {
            v.push("j'");
        }
        v
    };
    let mut out = Vec::new();
    if fam.genus_c.is_some_and(|g| g >= 1) {
        for p in &fam.known_points_c {
            let pole_of = poles(&p.h);
            out.push(CuspVerdict {
                curve: "C",
                point: p.to_string(),
                holds: pole_of.contains(&"j"),
                pole_of,
            });
        }
    }
    if fam.genus_x.is_some_and(|g| g >= 1) {
        for p in &fam.known_points_x {
            let pole_of = poles(&p.h);
            out.push(CuspVerdict {
                curve: "X",
                point: p.to_string(),
                holds: !pole_of.is_empty(),
                pole_of,
            });
        }
    }
    if out.is_empty() {
        return Err(Error::NoPointSet(n));
    }
    Ok(out)
}

/// For genus-0 C_N: a parameter `t` with `(h_param_c(t), y(t)) = p`.
pub fn c_preimage(cat: &Catalog, n: u32, p: &AffinePointC) -> Result<Option<Rational>> {
    let fam = cat.family(n)?;
    let (Some(hc), Some(yc)) = (&fam.h_param_c, cat.c_parametrization_y(n)?) else {
        return Ok(None);
    };
    // num(t) - h·den(t) = 0
    let eq = hc.num() - &hc.den().scale(&p.h);
    Ok(eq
        .rational_roots()
        .into_iter()
        .find(|t| !hc.is_pole(t) && yc.eval(t).is_ok_and(|y| y == p.y)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;
    use crate::families::SINGLE_LEVELS;
    use proptest::prelude::*;

    fn cat() -> &'static Catalog {
        Catalog::builtin()
    }

    fn pc(h: i64, y: i64) -> AffinePointC {
        AffinePointC::new(int(h), int(y))
    }

    #[test]
    fn genus() {
        let f = |n| cat().family(n).unwrap().f.clone();
        assert_eq!(genus_hyperelliptic(&f(5)).unwrap(), 1);
        assert_eq!(genus_hyperelliptic(&f(2)).unwrap(), 0);
        assert_eq!(genus_hyperelliptic(&f(25)).unwrap(), 3);
        let square = Poly::from_ints(&[1, 2, 1]);
        assert_eq!(genus_hyperelliptic(&square), Err(Error::NotSquarefree));
        assert_eq!(
            Error::NotSquarefree.to_string(),
            "model is singular; take squarefree part first"
        );
    }

    #[test]
    fn searches_reproduce_small_cases() {
        let mut expected = vec![pc(-1, -5), pc(-1, 5), pc(0, 0), pc(4, 0)];
        expected.sort();
        assert_eq!(search_c(cat(), 10, 30).unwrap(), expected);
        let mut expected = vec![pc(0, -3), pc(0, 3), pc(3, 0), pc(-3, 0), pc(1, 0), pc(-1, 0)];
        expected.sort();
        assert_eq!(search_c(cat(), 12, 10).unwrap(), expected);
        assert_eq!(search_c(cat(), 5, 30).unwrap(), vec![pc(0, 0)]);
        let x8 = search_x(cat(), 8, 10).unwrap();
        assert_eq!(
            x8,
            vec![
                AffinePointX::new(int(4), int(0), int(-2)),
                AffinePointX::new(int(4), int(0), int(2))
            ]
        );
        assert_eq!(search_x(cat(), 6, 12).unwrap().len(), 6);
    }

    #[test]
    fn x3_points_are_squares() {
        let pts = search_x(cat(), 3, 5).unwrap();
        for p in &pts {
            assert!(crate::arith::is_square_rational(&p.h));
            assert_eq!(&p.y * &p.y, p.h);
            assert_eq!(&p.z * &p.z, p.h);
            let member = cat().cstar_membership(3, &p.h).unwrap();
            assert_eq!(member, !p.h.is_zero());
        }
        assert!(pts.iter().any(|p| p.h == int(4) && p.y == int(2) && p.z == int(-2)));
        assert!(pts.iter().any(|p| p.h == rat(1, 4)));
    }

    #[test]
    fn ordering_is_by_denominator_first() {
        let pts = search_c_poly(&Poly::from_ints(&[0, 1]), 4);
        let hs: Vec<String> = pts.iter().map(|p| p.h.to_string()).collect();
        assert_eq!(hs[..4], ["0", "1", "1", "4"]);
        assert_eq!(pts[1].y, int(-1));
    }

    #[test]
    fn cusps() {
        let v = cusp_check(cat(), 10).unwrap();
        assert!(v.iter().all(|c| c.holds));
        let m1 = v.iter().find(|c| c.point == "(-1, 5)").unwrap();
        assert_eq!(m1.pole_of, vec!["j", "j'"]);
        assert!(cusp_check(cat(), 5).unwrap().iter().all(|c| c.holds));
        let v6 = cusp_check(cat(), 6).unwrap();
        assert_eq!(v6.len(), 6);
        assert!(v6.iter().all(|c| c.holds && c.curve == "X"));
        assert!(v6.iter().any(|c| c.point.starts_with("(-9") && c.pole_of.contains(&"j")));
        assert_eq!(cusp_check(cat(), 2), Err(Error::NoPointSet(2)));
    }

    #[test]
    fn genus_zero_points_are_parametrized() {
        for n in SINGLE_LEVELS {
            for p in search_c(cat(), n, 12).unwrap() {
                let t = c_preimage(cat(), n, &p).unwrap();
                assert!(t.is_some(), "N = {n}: {p} has no parameter");
            }
        }
    }

    #[test]
    fn infinity_counts() {
        assert_eq!(points_at_infinity(&cat().family(5).unwrap().f), 1);
        assert_eq!(points_at_infinity(&cat().family(2).unwrap().f), 2);
        assert_eq!(points_at_infinity(&Poly::from_ints(&[1, 0, -1])), 0);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(16))]

        #[test]
        fn monotone_in_height(n_idx in 0usize..14, h1 in 1u64..12, extra in 0u64..8) {
            let n = crate::families::FAMILY_LEVELS[n_idx];
            let small = search_c(cat(), n, h1).unwrap();
            let large = search_c(cat(), n, h1 + extra).unwrap();
            prop_assert!(small.iter().all(|p| large.contains(p)));
            let f = &cat().family(n).unwrap().f;
            for p in &large {
                prop_assert!(on_curve_homogeneous(f, &p.h, &p.y));
            }
        }
    }
}
