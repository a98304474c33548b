//! Independent isogeny oracles: Vélu steps of degree 2 and 3 with a chain
//! search for composite degrees, and evaluation of the classical modular
//! polynomials Φ_2, Φ_3, Φ_7.
//!
//! Vélu on `y² = x³ + Ax + B` with kernel generated by a point with
//! x-coordinate `x0`:
//!
//! * degree 2: `t = 3x0² + A`, `w = x0·t`;
//! * degree 3: `t = 6x0² + 2A`, `w = 4(x0³ + Ax0 + B) + x0·t`;
//!
//! and the codomain is `y² = x³ + (A - 5t)x + (B - 7w)`.

use std::collections::{BTreeMap, HashSet};
use std::path::Path;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::arith::{big, int, serialize_rational, Rational};
use crate::classify::curve_from_j;
use crate::error::{Error, Result};
use crate::families::Catalog;
use crate::poly::Poly;
use crate::sample::Sampler;
use crate::weierstrass::ShortModel;

/// Levels reachable by chains of rational 2- and 3-isogenies.
pub const CHAIN_LEVELS: [u32; 5] = [2, 3, 4, 6, 8];
const CHAIN_LEVELS_STR: &str = "{2,3,4,6,8}";
/// Levels with modular polynomial data.
pub const MODPOLY_LEVELS: [u32; 3] = [2, 3, 7];
const MODPOLY_LEVELS_STR: &str = "{2,3,7}";

const BUILTIN_MODPOLY: &str = include_str!("../data/modular_polynomials.txt");
pub const MODPOLY_FILE: &str = "modular_polynomials.txt";

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IsogenyStep {
    pub degree: u32,
    pub domain: ShortModel,
    pub codomain: ShortModel,
    #[serde(serialize_with = "serialize_rational")]
    pub kernel_x: Rational,
}

/// Rational roots of `x³ + Ax + B`.
pub fn two_torsion_x(m: &ShortModel) -> Vec<Rational> {
    m.cubic().rational_roots()
}

/// Codomain of the 2-isogeny with kernel `(x0, 0)`.
pub fn velu_2(m: &ShortModel, x0: &Rational) -> Result<ShortModel> {
    m.require_nonsingular()?;
    if !m.cubic().eval(x0).is_zero() {
        return Err(Error::InvalidKernel(x0.clone()));
    }
    let t = int(3) * x0 * x0 + &m.a;
    let w = x0 * &t;
    Ok(ShortModel::new(&m.a - int(5) * &t, &m.b - int(7) * &w))
}

/// `ψ₃ = 3x⁴ + 6Ax² + 12Bx - A²`.
pub fn three_division_poly(m: &ShortModel) -> Poly {
    Poly::new(vec![
        -(&m.a * &m.a),
        int(12) * &m.b,
        int(6) * &m.a,
        Rational::zero(),
        int(3),
    ])
}

/// Rational roots of ψ₃: x-coordinates of kernels of rational 3-isogenies.
pub fn three_kernel_x(m: &ShortModel) -> Vec<Rational> {
    three_division_poly(m).rational_roots()
}

/// Codomain of the odd-degree isogeny whose kernel is `{O, ±P}` with
/// `x(P) = x0`. Only degree 3 is supported.
pub fn velu_odd(m: &ShortModel, x0: &Rational, degree: u32) -> Result<ShortModel> {
    if degree != 3 {
        return Err(Error::UnsupportedDegree(degree));
    }
    m.require_nonsingular()?;
    if !three_division_poly(m).eval(x0).is_zero() {
        return Err(Error::InvalidKernel(x0.clone()));
    }
    let t = int(6) * x0 * x0 + int(2) * &m.a;
    let u = int(4) * m.cubic().eval(x0);
    let w = u + x0 * &t;
    Ok(ShortModel::new(&m.a - int(5) * &t, &m.b - int(7) * &w))
}

/// The x-coordinate of the kernel of the dual of `velu_2(m, x0)`: the other
/// two 2-torsion points both map to `-2·x0`.
pub fn dual_kernel_x_2(x0: &Rational) -> Rational {
    int(-2) * x0
}

fn kernels(m: &ShortModel, degree: u32) -> Vec<Rational> {
    match degree {
        2 => two_torsion_x(m),
        _ => three_kernel_x(m),
    }
}

fn step(m: &ShortModel, x0: &Rational, degree: u32) -> Result<ShortModel> {
    match degree {
        2 => velu_2(m, x0),
        d => velu_odd(m, x0, d),
    }
}

/// Orders of prime-degree steps whose composite is cyclic of degree `n`.
pub fn chain_degrees(n: u32) -> Result<Vec<Vec<u32>>> {
    Ok(match n {
        2 => vec![vec![2]],
        3 => vec![vec![3]],
        4 => vec![vec![2, 2]],
        6 => vec![vec![2, 3], vec![3, 2]],
        8 => vec![vec![2, 2, 2]],
        _ => return Err(Error::UnsupportedLevel(n, CHAIN_LEVELS_STR)),
    })
}

/// Models to start a chain from for a given j. Quadratic twists scale the
/// kernel x-coordinates and so do not change which kernels are rational;
/// at j = 0 and 1728 the larger twist families need one representative per
/// class that can carry a rational kernel.
pub fn start_models(j: &Rational) -> Vec<ShortModel> {
    if j.is_zero() {
        // x³ + B: 2-torsion when B is a cube, a second 3-kernel when -4B is
        vec![ShortModel::from_ints(0, 1), ShortModel::from_ints(0, 2)]
    } else if *j == int(1728) {
        // x³ + Dx: extra 2-torsion when -D is a square
        vec![ShortModel::from_ints(1, 0), ShortModel::from_ints(-1, 0)]
    } else {
        vec![curve_from_j(j)]
    }
}

/// A non-backtracking chain of Vélu steps of total degree `n` from `start`
/// to a curve with j-invariant `target`, if one exists. All rational
/// kernels are tried at each step, breadth first, in ascending order.
pub fn find_chain_from(start: &ShortModel, n: u32, target: &Rational) -> Result<Option<Vec<IsogenyStep>>> {
    start.require_nonsingular()?;
    for degrees in chain_degrees(n)? {
        // state: model, x of the dual kernel after a 2-step, path so far
        let mut level: Vec<(ShortModel, Option<Rational>, Vec<IsogenyStep>)> =
            vec![(start.clone(), None, Vec::new())];
        for &d in &degrees {
            let mut next = Vec::new();
            let mut seen = HashSet::new();
            for (m, dual, path) in &level {
                for x0 in kernels(m, d) {
                    if d == 2 && dual.as_ref() == Some(&x0) {
                        continue;
                    }
                    let codomain = step(m, &x0, d)?;
                    let new_dual = (d == 2).then(|| dual_kernel_x_2(&x0));
                    if !seen.insert((codomain.clone(), new_dual.clone())) {
                        continue;
                    }
                    let mut p = path.clone();
                    p.push(IsogenyStep {
                        degree: d,
                        domain: m.clone(),
                        codomain: codomain.clone(),
                        kernel_x: x0,
                    });
                    next.push((codomain, new_dual, p));
                }
            }
            level = next;
        }
        if let Some((_, _, path)) = level
            .into_iter()
            .find(|(m, _, _)| m.j_invariant().as_ref() == Some(target))
        {
            return Ok(Some(path));
        }
    }
    Ok(None)
}

/// Whether some curve with j-invariant `j1` has a cyclic rational
/// `n`-isogeny, built from Vélu steps, to a curve with j-invariant `j2`.
pub fn chain_check_pair(n: u32, j1: &Rational, j2: &Rational) -> Result<bool> {
    for m in start_models(j1) {
        if find_chain_from(&m, n, j2)?.is_some() {
            return Ok(true);
        }
    }
    Ok(false)
}

/// [`chain_check_pair`] on `(j_map(h0), jprime_map(h0))` of level `n`.
pub fn chain_check(cat: &Catalog, n: u32, h0: &Rational) -> Result<bool> {
    chain_degrees(n)?;
    let fam = cat.family(n)?;
    let j1 = fam.j_map.eval(h0)?;
    let j2 = fam.jprime_map.eval(h0)?;
    chain_check_pair(n, &j1, &j2)
}

/// Φ_N(X, Y) with integer coefficients, stored for `i ≥ k` only.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModularPolynomial {
    pub n: u32,
    /// `(i, k, c)`: c is the coefficient of `X^i Y^k` and of `X^k Y^i`.
    pub coefficients: Vec<(u32, u32, BigInt)>,
}

impl ModularPolynomial {
    pub fn degree(&self) -> u32 {
        self.coefficients.iter().map(|(i, _, _)| *i).max().unwrap_or(0)
    }

    pub fn eval(&self, x: &Rational, y: &Rational) -> Rational {
        let d = self.degree() as usize;
        let powers = |v: &Rational| {
            let mut p = vec![Rational::one()];
            for _ in 0..d {
                let last = p.last().expect("nonempty") * v;
                p.push(last);
            }
            p
        };
        let (px, py) = (powers(x), powers(y));
        let mut acc = Rational::zero();
        for (i, k, c) in &self.coefficients {
            let (i, k) = (*i as usize, *k as usize);
            let mut term = &px[i] * &py[k];
            if i != k {
                term += &px[k] * &py[i];
            }
            acc += big(c.clone()) * term;
        }
        acc
    }
}

/// One load-time check on the modular polynomial data.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpotCheck {
    pub name: String,
    pub holds: bool,
}

#[derive(Debug, Clone)]
pub struct ModularPolynomials {
    polys: BTreeMap<u32, ModularPolynomial>,
    checks: Vec<SpotCheck>,
}

/// Seed for the sampled spot checks.
pub const SPOT_CHECK_SEED: u64 = 7;
pub const SPOT_CHECK_SAMPLES: usize = 20;

impl ModularPolynomials {
    /// The compiled-in data, checked against the built-in catalog.
    pub fn builtin() -> &'static ModularPolynomials {
        static DATA: OnceLock<ModularPolynomials> = OnceLock::new();
        DATA.get_or_init(|| {
            ModularPolynomials::parse(BUILTIN_MODPOLY, Catalog::builtin())
                .expect("built-in modular polynomial data passes its checks")
        })
    }

    pub fn from_dir(dir: &Path, cat: &Catalog) -> Result<ModularPolynomials> {
        let text = std::fs::read_to_string(dir.join(MODPOLY_FILE))?;
        ModularPolynomials::parse(&text, cat)
    }

    /// Parses lines `N i k c` and runs the spot checks; any failure rejects
    /// the data.
    pub fn parse(text: &str, cat: &Catalog) -> Result<ModularPolynomials> {
        let mut polys: BTreeMap<u32, ModularPolynomial> = BTreeMap::new();
        let mut seen = HashSet::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let bad = || Error::Parse(format!("line {}: expected \"N i k c\"", lineno + 1));
            let fields: Vec<&str> = line.split_whitespace().collect();
            let [n, i, k, c] = fields[..] else {
                return Err(bad());
            };
            let n: u32 = n.parse().map_err(|_| bad())?;
            let i: u32 = i.parse().map_err(|_| bad())?;
            let k: u32 = k.parse().map_err(|_| bad())?;
            let c: BigInt = c.parse().map_err(|_| bad())?;
            if !MODPOLY_LEVELS.contains(&n) {
                return Err(Error::UnsupportedLevel(n, MODPOLY_LEVELS_STR));
            }
            if i < k {
                return Err(Error::DataCheck(format!(
                    "line {}: symmetric storage needs i >= k",
                    lineno + 1
                )));
            }
            if !seen.insert((n, i, k)) {
                return Err(Error::DataCheck(format!("duplicate entry N={n} i={i} k={k}")));
            }
            polys
                .entry(n)
                .or_insert_with(|| ModularPolynomial {
                    n,
                    coefficients: Vec::new(),
                })
                .coefficients
                .push((i, k, c));
        }
        let data = ModularPolynomials {
            polys,
            checks: Vec::new(),
        };
        let checks = data.spot_checks(cat)?;
        if let Some(failed) = checks.iter().find(|c| !c.holds) {
            return Err(Error::DataCheck(format!("spot check failed: {}", failed.name)));
        }
        Ok(ModularPolynomials { checks, ..data })
    }

    pub fn get(&self, n: u32) -> Result<&ModularPolynomial> {
        self.polys
            .get(&n)
            .ok_or(Error::UnsupportedLevel(n, MODPOLY_LEVELS_STR))
    }

    /// The checks that were run when the data was loaded.
    pub fn load_checks(&self) -> &[SpotCheck] {
        &self.checks
    }

    /// `Φ_N(j1, j2) = 0`.
    pub fn modular_poly_check(&self, n: u32, j1: &Rational, j2: &Rational) -> Result<bool> {
        Ok(self.get(n)?.eval(j1, j2).is_zero())
    }

    fn spot_checks(&self, cat: &Catalog) -> Result<Vec<SpotCheck>> {
        let mut out = Vec::new();
        let mut push = |name: String, holds: bool| out.push(SpotCheck { name, holds });
        for n in MODPOLY_LEVELS {
            let phi = self.get(n).map_err(|_| Error::DataCheck(format!("no data for N = {n}")))?;
            let top = phi
                .coefficients
                .iter()
                .find(|(i, k, _)| *i == n + 1 && *k == 0)
                .map(|(_, _, c)| c.clone());
            push(
                format!("N={n}: degree N+1 with leading X^(N+1) coefficient 1"),
                phi.degree() == n + 1 && top == Some(BigInt::one()),
            );
            let fam = cat.family(n)?;
            let mut sampler = Sampler::fork(SPOT_CHECK_SEED, n as u64);
            let mut hits = 0;
            let mut tries = 0;
            while hits < SPOT_CHECK_SAMPLES && tries < 1000 {
                tries += 1;
                let h = sampler.rational();
                let (Ok(a), Ok(b)) = (fam.j_map.eval(&h), fam.jprime_map.eval(&h)) else {
                    continue;
                };
                hits += 1;
                push(format!("N={n}: Phi(j(h), j'(h)) = 0 at h = {h}"), phi.eval(&a, &b).is_zero());
            }
            let (x, y) = (sampler.rational(), sampler.rational());
            push(
                format!("N={n}: Phi({x}, {y}) = Phi({y}, {x})"),
                phi.eval(&x, &y) == phi.eval(&y, &x),
            );
            // a cusp-adjacent value against a mismatched partner
            let h = Rational::new(BigInt::one(), BigInt::from(1000));
            let mismatched = phi.eval(&fam.j_map.eval(&h)?, &fam.jprime_map.eval(&(&h + int(1)))?);
            push(format!("N={n}: Phi(j(h), j'(h+1)) != 0 at h = {h}"), !mismatched.is_zero());
        }
        push(
            "Phi_2(1728, 287496) = 0".into(),
            self.get(2)?.eval(&int(1728), &int(287496)).is_zero(),
        );
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use crate::weierstrass::quadratic_twist;
    use proptest::prelude::*;

    fn m(a: i64, b: i64) -> ShortModel {
        ShortModel::from_ints(a, b)
    }

    #[test]
    fn two_torsion() {
        assert_eq!(two_torsion_x(&m(-1, 0)), vec![int(-1), int(0), int(1)]);
        assert!(two_torsion_x(&m(-11, 14)).contains(&int(2)));
        assert_eq!(two_torsion_x(&m(0, 1)), vec![int(-1)]);
    }

    #[test]
    fn velu_two() {
        assert_eq!(velu_2(&m(-1, 0), &int(0)).unwrap(), m(4, 0));
        let e = velu_2(&m(-11, 14), &int(2)).unwrap();
        assert_eq!(e, m(-16, 0));
        assert_eq!(e.j_invariant(), Some(int(1728)));
        let e = velu_2(&m(-1, 0), &int(1)).unwrap();
        assert_eq!(e, m(-11, -14));
        assert_eq!(e.j_invariant(), Some(int(287496)));
        assert_eq!(velu_2(&m(-1, 0), &int(2)), Err(Error::InvalidKernel(int(2))));
    }

    #[test]
    fn three_kernels() {
        assert!(three_kernel_x(&m(0, 4)).contains(&int(0)));
        assert!(three_kernel_x(&m(1, 0)).is_empty());
        assert!(three_kernel_x(&m(-1, 0)).is_empty());
        assert_eq!(three_kernel_x(&m(0, 16)), vec![int(-4), int(0)]);
    }

    #[test]
    fn velu_three() {
        let e = velu_odd(&m(0, 16), &int(0), 3).unwrap();
        assert_eq!(e, m(0, -432));
        assert_eq!(e.j_invariant(), Some(int(0)));
        let e = velu_odd(&m(0, 16), &int(-4), 3).unwrap();
        assert_eq!(e.j_invariant(), Some(int(-12288000)));
        assert_eq!(velu_odd(&m(0, 16), &int(1), 3), Err(Error::InvalidKernel(int(1))));
        assert_eq!(velu_odd(&m(0, 16), &int(0), 5), Err(Error::UnsupportedDegree(5)));

        let cat = Catalog::builtin();
        let f3 = cat.family(3).unwrap();
        for h in [int(9), int(1)] {
            let j = f3.j_map.eval(&h).unwrap();
            let jp = f3.jprime_map.eval(&h).unwrap();
            let start = curve_from_j(&j);
            let hit = three_kernel_x(&start)
                .into_iter()
                .any(|x| velu_odd(&start, &x, 3).unwrap().j_invariant() == Some(jp.clone()));
            assert!(hit, "h = {h}");
        }
        assert_eq!(f3.j_map.eval(&int(1)).unwrap(), int(1792));
        assert_eq!(f3.jprime_map.eval(&int(9)).unwrap(), int(790272));
    }

    #[test]
    fn chains() {
        let cat = Catalog::builtin();
        assert!(chain_check(cat, 2, &int(36)).unwrap());
        assert!(chain_check(cat, 4, &int(9)).unwrap());
        assert_eq!(cat.family(4).unwrap().j_map.eval(&int(9)).unwrap(), rat(241 * 241 * 241, 225));
        let h6 = rat(8, 3);
        assert!(chain_check(cat, 6, &h6).unwrap());
        assert!(chain_check(cat, 8, &rat(5, 2)).unwrap());
        assert!(chain_check(cat, 3, &int(9)).unwrap());
        assert!(matches!(chain_check(cat, 2, &int(0)), Err(Error::Pole { .. })));
        assert!(matches!(chain_check(cat, 7, &int(1)), Err(Error::UnsupportedLevel(7, _))));
        // j = 1728 at h = 8 needs the y² = x³ - x twist
        assert!(chain_check(cat, 2, &int(8)).unwrap());
        // a 4-chain never returns to its start
        let path = find_chain_from(&curve_from_j(&rat(241 * 241 * 241, 225)), 4, &cat.family(4).unwrap().jprime_map.eval(&int(9)).unwrap())
            .unwrap()
            .unwrap();
        assert_eq!(path.len(), 2);
        assert_ne!(path[1].kernel_x, dual_kernel_x_2(&path[0].kernel_x));
    }

    #[test]
    fn modular_polynomials() {
        let mp = ModularPolynomials::builtin();
        assert!(mp.load_checks().iter().all(|c| c.holds));
        assert!(mp.load_checks().len() >= 3 * SPOT_CHECK_SAMPLES);
        assert!(mp.modular_poly_check(2, &int(1728), &int(287496)).unwrap());
        // y² = x³ + x is 2-isogenous to y² = x³ - 4x, so this vanishes too
        assert!(mp.modular_poly_check(2, &int(1728), &int(1728)).unwrap());
        assert!(!mp.modular_poly_check(2, &int(1728), &int(1729)).unwrap());
        let f7 = Catalog::builtin().family(7).unwrap();
        let (a, b) = (f7.j_map.eval(&int(1)).unwrap(), f7.jprime_map.eval(&int(1)).unwrap());
        assert!(mp.modular_poly_check(7, &a, &b).unwrap());
        assert!(matches!(mp.modular_poly_check(5, &a, &b), Err(Error::UnsupportedLevel(5, _))));
        let phi2 = mp.get(2).unwrap();
        assert_eq!(phi2.degree(), 3);
        // Φ_2(X, Y) = X³ + Y³ - X²Y² + 1488(X²Y + XY²) - 162000(X² + Y²) + ...
        let c = |i, k| phi2.coefficients.iter().find(|e| e.0 == i && e.1 == k).map(|e| e.2.clone());
        assert_eq!(c(2, 2), Some(BigInt::from(-1)));
        assert_eq!(c(2, 1), Some(BigInt::from(1488)));
        assert_eq!(c(2, 0), Some(BigInt::from(-162000)));
        assert_eq!(c(0, 0), Some(BigInt::from(-157464000000000i64)));
    }

    #[test]
    fn tampered_data_is_rejected() {
        let cat = Catalog::builtin();
        let bad = BUILTIN_MODPOLY.replacen("2 2 1 1488", "2 2 1 1489", 1);
        assert_ne!(bad, BUILTIN_MODPOLY);
        assert!(matches!(ModularPolynomials::parse(&bad, cat), Err(Error::DataCheck(_))));
        let swapped = BUILTIN_MODPOLY.replacen("2 2 1 1488", "2 1 2 1488", 1);
        assert!(ModularPolynomials::parse(&swapped, cat).is_err());
        assert!(ModularPolynomials::parse("5 6 0 1", cat).is_err());
    }

    /// Laurent series in q with an explicit precision: coefficients are known
    /// for exponents `val .. prec`.
    #[derive(Clone)]
    struct Laurent {
        val: i64,
        prec: i64,
        c: Vec<BigInt>,
    }

    impl Laurent {
        fn mul(&self, o: &Laurent) -> Laurent {
            let val = self.val + o.val;
            let prec = (self.prec + o.val).min(o.prec + self.val);
            let len = (prec - val).max(0) as usize;
            let mut c = vec![BigInt::zero(); len];
            for (i, a) in self.c.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (j, b) in o.c.iter().enumerate() {
                    if i + j >= len {
                        break;
                    }
                    c[i + j] += a * b;
                }
            }
            Laurent { val, prec, c }
        }

        fn scale(&self, k: &BigInt) -> Laurent {
            Laurent {
                c: self.c.iter().map(|a| a * k).collect(),
                ..self.clone()
            }
        }

        fn one(prec: i64) -> Laurent {
            let mut c = vec![BigInt::zero(); prec as usize];
            c[0] = BigInt::one();
            Laurent { val: 0, prec, c }
        }

        fn coeff(&self, e: i64) -> BigInt {
            if e < self.val {
                return BigInt::zero();
            }
            self.c.get((e - self.val) as usize).cloned().unwrap_or_default()
        }
    }

    /// q-expansion of j to `prec` terms past q⁻¹: `E4³ / (q ∏(1 - qⁿ)²⁴)`.
    fn j_series(prec: usize) -> Laurent {
        let sigma3 = |n: usize| -> BigInt { (1..=n).filter(|d| n % d == 0).map(|d| BigInt::from(d).pow(3)).sum() };
        let mut e4: Vec<BigInt> = (0..prec).map(|n| BigInt::from(240) * sigma3(n)).collect();
        e4[0] = BigInt::one();
        let mul = |a: &[BigInt], b: &[BigInt]| -> Vec<BigInt> {
            let mut c = vec![BigInt::zero(); prec];
            for (i, x) in a.iter().enumerate() {
                for (j, y) in b.iter().take(prec - i).enumerate() {
                    c[i + j] += x * y;
                }
            }
            c
        };
        let e4_3 = mul(&mul(&e4, &e4), &e4);
        // η-product ∏(1 - qⁿ), its 24th power, then the series inverse
        let mut eta = vec![BigInt::zero(); prec];
        eta[0] = BigInt::one();
        for n in 1..prec {
            for i in (n..prec).rev() {
                let v = eta[i - n].clone();
                eta[i] -= v;
            }
        }
        let e2 = mul(&eta, &eta);
        let e8 = mul(&mul(&e2, &e2), &mul(&e2, &e2));
        let e24 = mul(&mul(&e8, &e8), &e8);
        let mut inv = vec![BigInt::zero(); prec];
        inv[0] = BigInt::one();
        for i in 1..prec {
            let acc: BigInt = (1..=i).map(|k| &e24[k] * &inv[i - k]).sum();
            inv[i] = -acc;
        }
        let c = mul(&e4_3, &inv);
        Laurent {
            val: -1,
            prec: prec as i64 - 1,
            c,
        }
    }

    /// `j(q^n)` from `j(q)`.
    fn dilate(s: &Laurent, n: i64) -> Laurent {
        let val = s.val * n;
        let prec = (s.prec - 1) * n + 1;
        let mut c = vec![BigInt::zero(); (prec - val) as usize];
        for (i, a) in s.c.iter().enumerate() {
            let e = (s.val + i as i64) * n;
            if e < prec {
                c[(e - val) as usize] = a.clone();
            }
        }
        Laurent { val, prec, c }
    }

    fn phi_of_series(phi: &ModularPolynomial, x: &Laurent, y: &Laurent, prec: i64) -> (i64, Vec<BigInt>) {
        let d = phi.degree() as usize;
        let mut px = vec![Laurent::one(prec)];
        let mut py = vec![Laurent::one(prec)];
        for _ in 0..d {
            px.push(px.last().unwrap().mul(x));
            py.push(py.last().unwrap().mul(y));
        }
        let mut terms = Vec::new();
        for (i, k, c) in &phi.coefficients {
            let (i, k) = (*i as usize, *k as usize);
            terms.push(px[i].mul(&py[k]).scale(c));
            if i != k {
                terms.push(px[k].mul(&py[i]).scale(c));
            }
        }
        let lo = terms.iter().map(|t| t.val).min().unwrap();
        let hi = terms.iter().map(|t| t.prec).min().unwrap();
        let sums = (lo..hi)
            .map(|e| terms.iter().map(|t| t.coeff(e)).sum())
            .collect();
        (hi, sums)
    }

    #[test]
    fn j_series_starts_correctly() {
        let j = j_series(6);
        let expected = [1i64, 744, 196884, 21493760, 864299970];
        for (e, v) in expected.iter().enumerate() {
            assert_eq!(j.coeff(e as i64 - 1), BigInt::from(*v));
        }
    }

    #[test]
    fn phi_vanishes_on_q_expansions() {
        let mp = ModularPolynomials::builtin();
        for (n, prec) in [(2u32, 24usize), (3, 30), (7, 80)] {
            let j = j_series(prec);
            let jn = dilate(&j, n as i64);
            let (hi, sums) = phi_of_series(mp.get(n).unwrap(), &j, &jn, prec as i64);
            assert!(hi > 0, "N = {n}: not enough precision ({hi})");
            assert!(sums.iter().all(Zero::is_zero), "N = {n}");
        }
    }

    fn chain_rat() -> impl Strategy<Value = Rational> {
        (-40i64..40, 1i64..40).prop_map(|(a, b)| rat(a, b))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(50))]

        #[test]
        fn chain_is_twist_invariant(n_idx in 0usize..5, h0 in chain_rat(), d in chain_rat()) {
            prop_assume!(!d.is_zero());
            let n = CHAIN_LEVELS[n_idx];
            let fam = Catalog::builtin().family(n).unwrap();
            let (Ok(j1), Ok(j2)) = (fam.j_map.eval(&h0), fam.jprime_map.eval(&h0)) else {
                return Ok(());
            };
            prop_assume!(!j1.is_zero() && j1 != int(1728));
            let start = curve_from_j(&j1);
            let twisted = quadratic_twist(&start, &d).unwrap();
            let a = find_chain_from(&start, n, &j2).unwrap().is_some();
            let b = find_chain_from(&twisted, n, &j2).unwrap().is_some();
            prop_assert!(a);
            prop_assert_eq!(a, b);
        }

        #[test]
        fn dual_step_returns(a in -30i64..30, r in -10i64..10) {
            // y² = (x - r)(x² + rx + a) has 2-torsion at r
            let m = ShortModel::new(int(a - r * r), int(-r * a));
            prop_assume!(!m.is_singular());
            let e = velu_2(&m, &int(r)).unwrap();
            let back = two_torsion_x(&e)
                .into_iter()
                .any(|x| velu_2(&e, &x).unwrap().j_invariant() == m.j_invariant());
            prop_assert!(back);
            prop_assert!(two_torsion_x(&e).contains(&dual_kernel_x_2(&int(r))));
        }
    }
}
