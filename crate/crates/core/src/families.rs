//! The catalog of isogeny families over genus-0 modular curves and the
//! checks built on it.
//!
//! The catalog is read from `families.txt` (compiled in, or from a data
//! directory). Loading validates the file: factored and expanded forms must
//! agree, every level must be present, and listed points must lie on their
//! curves.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::OnceLock;

use serde::Serialize;

use crate::arith::{int, is_square_rational, parse_rational, serialize_rational, Rational};
use crate::classify::is_cm_j;
use crate::error::{Error, Result};
use crate::factor::FactorConfig;
use crate::expr::{parse_constant, parse_rf};
use crate::poly::Poly;
use crate::ratfunc::{ModSquareClass, RationalFunction};
use crate::search::{AffinePointC, AffinePointX};

/// Levels N for which X_0(N) has genus 0.
pub const FAMILY_LEVELS: [u32; 14] = [2, 3, 4, 5, 6, 7, 8, 9, 10, 12, 13, 16, 18, 25];
/// Levels admitting an N-isogeny from a curve with square discriminant.
pub const SINGLE_LEVELS: [u32; 6] = [2, 3, 4, 6, 7, 8];
/// Levels admitting an N-isogeny between two curves with square discriminant.
pub const PAIR_LEVELS: [u32; 4] = [2, 3, 4, 7];
/// Levels with finitely many N-isogenous j-invariants.
pub const FINITE_LEVELS: [u32; 11] = [11, 14, 15, 17, 19, 21, 27, 37, 43, 67, 163];

const FAMILY_LEVELS_STR: &str = "{2,3,4,5,6,7,8,9,10,12,13,16,18,25}";
const SINGLE_LEVELS_STR: &str = "{2,3,4,6,7,8}";
const PAIR_LEVELS_STR: &str = "{2,3,4,7}";

const BUILTIN: &str = include_str!("../data/families.txt");
pub const CATALOG_FILE: &str = "families.txt";

#[derive(Debug, Clone)]
pub struct IsogenyFamily {
    pub n: u32,
    /// j(E) as a function of h.
    pub j_map: RationalFunction,
    /// j(E') as a function of h.
    pub jprime_map: RationalFunction,
    pub f: Poly,
    pub g: Poly,
    /// h as a function of t on C_N, for genus 0.
    pub h_param_c: Option<RationalFunction>,
    /// h as a function of t on X_N, for genus 0.
    pub h_param_x: Option<RationalFunction>,
    /// Closed form of `j_map(h_param_c(t))`.
    pub thm1_j: Option<RationalFunction>,
    /// Closed form of `(j_map, jprime_map)(h_param_x(t))`.
    pub thm2_pair: Option<(RationalFunction, RationalFunction)>,
    pub genus_c: Option<u32>,
    pub genus_x: Option<u32>,
    pub known_points_c: Vec<AffinePointC>,
    pub known_points_x: Vec<AffinePointX>,
    pub label_c: Option<String>,
    pub label_x: Option<String>,
    /// Factored source text per key, for display.
    pub sources: BTreeMap<String, String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FiniteIsogenyCase {
    pub n: u32,
    #[serde(serialize_with = "serialize_rational")]
    pub j: Rational,
    #[serde(serialize_with = "serialize_rational")]
    pub j_prime: Rational,
    pub has_cm: bool,
}

#[derive(Debug, Clone)]
pub struct Catalog {
    families: BTreeMap<u32, IsogenyFamily>,
    finite: Vec<FiniteIsogenyCase>,
}

/// Outcome of [`Catalog::verify_congruence`] for one side.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CongruenceSide {
    pub holds: bool,
    /// Class of `j - 1728` modulo squares.
    pub class: ModSquareClass,
    /// `√((j - 1728)·F)` (or with G) as a rational function of h.
    pub witness: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CongruenceVerdict {
    pub n: u32,
    pub f_side: CongruenceSide,
    pub g_side: CongruenceSide,
}

impl CongruenceVerdict {
    pub fn holds(&self) -> bool {
        self.f_side.holds && self.g_side.holds
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FiniteCaseVerdict {
    pub n: u32,
    /// "j" or "j'".
    pub side: &'static str,
    #[serde(serialize_with = "serialize_rational")]
    pub j: Rational,
    pub j_minus_1728_is_square: bool,
    pub flagged_cm: bool,
    pub in_cm_set: bool,
}

impl FiniteCaseVerdict {
    /// Non-square for the non-CM levels, and CM flag consistent with the set.
    pub fn holds(&self) -> bool {
        let square_ok = !FINITE_NONCM_LEVELS.contains(&self.n) || !self.j_minus_1728_is_square;
        square_ok && self.flagged_cm == self.in_cm_set
    }
}

/// Finite levels whose curves have no CM.
pub const FINITE_NONCM_LEVELS: [u32; 5] = [11, 15, 17, 21, 37];

impl Catalog {
    /// The compiled-in catalog.
    pub fn builtin() -> &'static Catalog {
        static CATALOG: OnceLock<Catalog> = OnceLock::new();
        CATALOG.get_or_init(|| Catalog::parse(BUILTIN).expect("built-in catalog is valid"))
    }

    /// Reads `families.txt` from `dir`.
    pub fn from_dir(dir: &Path) -> Result<Catalog> {
        let text = std::fs::read_to_string(dir.join(CATALOG_FILE))?;
        Catalog::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Catalog> {
        let raw = parse_sections(text)?;
        let mut families = BTreeMap::new();
        let mut finite = Vec::new();
        for (name, entries) in raw {
            if name == "finite" {
                for (key, value) in entries {
                    if key != "case" {
                        return Err(Error::Parse(format!("unknown key {key:?} in [finite]")));
                    }
                    finite.push(parse_finite_case(&value)?);
                }
                continue;
            }
            let n: u32 = name
                .parse()
                .map_err(|_| Error::Parse(format!("bad section name [{name}]")))?;
            families.insert(n, build_family(n, entries)?);
        }
        let present: Vec<u32> = families.keys().copied().collect();
        if present != FAMILY_LEVELS {
            return Err(Error::DataCheck(format!(
                "catalog levels {present:?}, expected {FAMILY_LEVELS_STR}"
            )));
        }
        let mut finite_levels: Vec<u32> = finite.iter().map(|c| c.n).collect();
        finite_levels.dedup();
        if finite_levels != FINITE_LEVELS {
            return Err(Error::DataCheck(format!(
                "finite cases cover levels {finite_levels:?}"
            )));
        }
        Ok(Catalog { families, finite })
    }

    pub fn family(&self, n: u32) -> Result<&IsogenyFamily> {
        self.families
            .get(&n)
            .ok_or(Error::UnsupportedLevel(n, FAMILY_LEVELS_STR))
    }

    pub fn families(&self) -> impl Iterator<Item = &IsogenyFamily> {
        self.families.values()
    }

    pub fn finite_cases(&self) -> &[FiniteIsogenyCase] {
        &self.finite
    }

    /// The j-invariant of the curve over `t` on C_N, from the closed form.
    pub fn theorem1_j(&self, n: u32, t: &Rational) -> Result<Rational> {
        self.thm1_form(n)?.eval(t)
    }

    /// `j_map(h_param_c(t))`, evaluated in two steps.
    pub fn theorem1_j_composed(&self, n: u32, t: &Rational) -> Result<Rational> {
        self.thm1_form(n)?;
        let fam = self.family(n)?;
        let h = fam.h_param_c.as_ref().expect("present with thm1").eval(t)?;
        fam.j_map.eval(&h)
    }

    fn thm1_form(&self, n: u32) -> Result<&RationalFunction> {
        self.family(n)
            .ok()
            .and_then(|f| f.thm1_j.as_ref())
            .ok_or(Error::UnsupportedLevel(n, SINGLE_LEVELS_STR))
    }

    fn thm2_forms(&self, n: u32) -> Result<&(RationalFunction, RationalFunction)> {
        self.family(n)
            .ok()
            .and_then(|f| f.thm2_pair.as_ref())
            .ok_or(Error::UnsupportedLevel(n, PAIR_LEVELS_STR))
    }

    /// The pair of j-invariants over `t` on X_N, from the closed forms.
    pub fn theorem2_pair(&self, n: u32, t: &Rational) -> Result<(Rational, Rational)> {
        let (a, b) = self.thm2_forms(n)?;
        Ok((a.eval(t)?, b.eval(t)?))
    }

    /// `(j_map, jprime_map)(h_param_x(t))`, evaluated in two steps.
    pub fn theorem2_pair_composed(&self, n: u32, t: &Rational) -> Result<(Rational, Rational)> {
        self.thm2_forms(n)?;
        let fam = self.family(n)?;
        let h = fam.h_param_x.as_ref().expect("present with thm2").eval(t)?;
        Ok((fam.j_map.eval(&h)?, fam.jprime_map.eval(&h)?))
    }

    /// Whether the closed form equals `j_map ∘ h_param_c` as a function.
    pub fn theorem1_identity(&self, n: u32) -> Result<bool> {
        let closed = self.thm1_form(n)?;
        let fam = self.family(n)?;
        let composed = fam.j_map.compose(fam.h_param_c.as_ref().expect("present"))?;
        Ok(composed.same_function(closed))
    }

    /// Both pair components against the composition with `h_param_x`.
    pub fn theorem2_identity(&self, n: u32) -> Result<(bool, bool)> {
        let (a, b) = self.thm2_forms(n)?;
        let fam = self.family(n)?;
        let hx = fam.h_param_x.as_ref().expect("present");
        Ok((
            fam.j_map.compose(hx)?.same_function(a),
            fam.jprime_map.compose(hx)?.same_function(b),
        ))
    }

    /// Values of t at which the closed form of the single-curve family is
    /// undefined (its poles and those of `h_param_c`).
    pub fn degenerate_t_single(&self, n: u32) -> Result<Vec<Rational>> {
        let fam = self.family(n)?;
        let mut out = self.thm1_form(n)?.den().rational_roots();
        out.extend(fam.h_param_c.as_ref().expect("present").den().rational_roots());
        out.sort();
        out.dedup();
        Ok(out)
    }

    /// Values of t where the pair family is undefined.
    pub fn degenerate_t_pair(&self, n: u32) -> Result<Vec<Rational>> {
        let (a, b) = self.thm2_forms(n)?;
        let fam = self.family(n)?;
        let mut out = a.den().rational_roots();
        out.extend(b.den().rational_roots());
        out.extend(fam.h_param_x.as_ref().expect("present").den().rational_roots());
        out.sort();
        out.dedup();
        Ok(out)
    }

    /// `j - 1728 ≡ F` and `j' - 1728 ≡ G` modulo squares in Q(h), with the
    /// square roots of the products as witnesses.
    pub fn verify_congruence(&self, n: u32) -> Result<CongruenceVerdict> {
        self.verify_congruence_with(n, &FactorConfig::default())
    }

    /// [`Catalog::verify_congruence`] with an explicit factoring budget.
    pub fn verify_congruence_with(&self, n: u32, cfg: &FactorConfig) -> Result<CongruenceVerdict> {
        let fam = self.family(n)?;
        let side = |j: &RationalFunction, p: &Poly| -> Result<CongruenceSide> {
            let shifted = j - &RationalFunction::constant(int(1728));
            let class = shifted.mod_square_class_with(cfg)?;
            let expected = ModSquareClass::of_poly_with(p, cfg)?;
            let witness = (&shifted * &RationalFunction::from_poly(p.clone())).sqrt();
            Ok(CongruenceSide {
                holds: class == expected && witness.is_some(),
                class,
                witness: witness.map(|w| w.display("h")),
            })
        };
        Ok(CongruenceVerdict {
            n,
            f_side: side(&fam.j_map, &fam.f)?,
            g_side: side(&fam.jprime_map, &fam.g)?,
        })
    }

    /// Both j-invariants of every finite case, with the square and CM checks.
    pub fn finite_cases_scan(&self) -> Vec<FiniteCaseVerdict> {
        self.finite
            .iter()
            .flat_map(|c| {
                [("j", &c.j), ("j'", &c.j_prime)].map(|(side, j)| FiniteCaseVerdict {
                    n: c.n,
                    side,
                    j: j.clone(),
                    j_minus_1728_is_square: is_square_rational(&(j - int(1728))),
                    flagged_cm: c.has_cm,
                    in_cm_set: is_cm_j(j),
                })
            })
            .collect()
    }

    /// `h0 ∈ C*_N(Q)`: F_N(h0) is a square and h0 is not a cusp of `j_map`.
    pub fn cstar_membership(&self, n: u32, h0: &Rational) -> Result<bool> {
        let fam = self.family(n)?;
        Ok(!fam.j_map.is_pole(h0) && is_square_rational(&fam.f.eval(h0)))
    }

    /// `y(t)` with `y² = F(h_param_c(t))`, for genus-0 C_N.
    pub fn c_parametrization_y(&self, n: u32) -> Result<Option<RationalFunction>> {
        let fam = self.family(n)?;
        let Some(hc) = &fam.h_param_c else {
            return Ok(None);
        };
        Ok(RationalFunction::from_poly(fam.f.clone()).compose(hc)?.sqrt())
    }

    /// `(y(t), z(t))` on genus-0 X_N.
    pub fn x_parametrization_yz(
        &self,
        n: u32,
    ) -> Result<Option<(RationalFunction, RationalFunction)>> {
        let fam = self.family(n)?;
        let Some(hx) = &fam.h_param_x else {
            return Ok(None);
        };
        let y = RationalFunction::from_poly(fam.f.clone()).compose(hx)?.sqrt();
        let z = RationalFunction::from_poly(fam.g.clone()).compose(hx)?.sqrt();
        Ok(y.zip(z))
    }
}

impl IsogenyFamily {
    pub fn source(&self, key: &str) -> Option<&str> {
        self.sources.get(key).map(String::as_str)
    }
}

type Sections = Vec<(String, Vec<(String, String)>)>;

fn parse_sections(text: &str) -> Result<Sections> {
    let mut out: Sections = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(name) = line.strip_prefix('[').and_then(|l| l.strip_suffix(']')) {
            out.push((name.trim().to_string(), Vec::new()));
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("line {}: expected key = value", lineno + 1)))?;
        let section = out
            .last_mut()
            .ok_or_else(|| Error::Parse(format!("line {}: entry outside a section", lineno + 1)))?;
        section.1.push((key.trim().to_string(), value.trim().to_string()));
    }
    Ok(out)
}

fn variable_of(key: &str) -> Option<char> {
    match key {
        "jmap" | "jpmap" | "F" | "G" => Some('h'),
        "hC" | "hX" | "thm1" | "thm2.j" | "thm2.jp" => Some('t'),
        _ => None,
    }
}

fn parse_coeff_list(s: &str) -> Result<Poly> {
    let inner = s
        .trim()
        .strip_prefix('[')
        .and_then(|r| r.strip_suffix(']'))
        .ok_or_else(|| Error::Parse(format!("expected a coefficient list: {s:?}")))?;
    if inner.trim().is_empty() {
        return Ok(Poly::zero());
    }
    Ok(Poly::new(
        inner.split(',').map(parse_rational).collect::<Result<_>>()?,
    ))
}

fn parse_expanded(s: &str) -> Result<RationalFunction> {
    let (num, den) = s
        .split_once("] / [")
        .ok_or_else(|| Error::Parse(format!("expected \"[..] / [..]\": {s:?}")))?;
    RationalFunction::new(
        parse_coeff_list(&format!("{num}]"))?,
        parse_coeff_list(&format!("[{den}"))?,
    )
}

fn parse_points(s: &str, arity: usize) -> Result<Vec<Vec<Rational>>> {
    let mut out = Vec::new();
    let mut rest = s.trim();
    while !rest.is_empty() {
        let close = rest
            .find(')')
            .ok_or_else(|| Error::Parse(format!("unclosed point in {s:?}")))?;
        let inner = rest[..close]
            .strip_prefix('(')
            .ok_or_else(|| Error::Parse(format!("expected '(' in {s:?}")))?;
        let coords: Vec<Rational> = inner.split(',').map(parse_rational).collect::<Result<_>>()?;
        if coords.len() != arity {
            return Err(Error::Parse(format!("point ({inner}) should have {arity} coordinates")));
        }
        out.push(coords);
        rest = rest[close + 1..].trim_start();
    }
    Ok(out)
}

fn parse_finite_case(s: &str) -> Result<FiniteIsogenyCase> {
    let parts: Vec<&str> = s.split('|').map(str::trim).collect();
    let [n, j, jp, cm] = parts[..] else {
        return Err(Error::Parse(format!("finite case needs 4 fields: {s:?}")));
    };
    let n: u32 = n
        .parse()
        .map_err(|_| Error::Parse(format!("bad level {n:?}")))?;
    if !FINITE_LEVELS.contains(&n) {
        return Err(Error::DataCheck(format!("{n} is not a finite level")));
    }
    let has_cm = match cm {
        "yes" => true,
        "no" => false,
        other => return Err(Error::Parse(format!("CM flag must be yes/no, got {other:?}"))),
    };
    Ok(FiniteIsogenyCase {
        n,
        j: parse_constant(j)?,
        j_prime: parse_constant(jp)?,
        has_cm,
    })
}

fn as_poly(n: u32, key: &str, f: &RationalFunction) -> Result<Poly> {
    f.as_poly()
        .filter(|p| !p.is_zero())
        .cloned()
        .ok_or_else(|| Error::DataCheck(format!("N = {n}: {key} must be a nonzero polynomial")))
}

fn build_family(n: u32, entries: Vec<(String, String)>) -> Result<IsogenyFamily> {
    let check = |cond: bool, msg: &str| -> Result<()> {
        if cond {
            Ok(())
        } else {
            Err(Error::DataCheck(format!("N = {n}: {msg}")))
        }
    };
    if !FAMILY_LEVELS.contains(&n) {
        return Err(Error::DataCheck(format!("{n} is not a genus-0 level")));
    }
    let mut functions: BTreeMap<String, RationalFunction> = BTreeMap::new();
    let mut expanded: BTreeMap<String, RationalFunction> = BTreeMap::new();
    let mut sources = BTreeMap::new();
    let mut other: BTreeMap<String, String> = BTreeMap::new();
    for (key, value) in entries {
        if let Some(base) = key.strip_suffix(".expanded") {
            check(variable_of(base).is_some(), &format!("unexpected key {key}"))?;
            expanded.insert(base.to_string(), parse_expanded(&value)?);
        } else if let Some(var) = variable_of(&key) {
            functions.insert(key.clone(), parse_rf(&value, var)?);
            sources.insert(key, value);
        } else {
            match key.as_str() {
                "genusC" | "genusX" | "pointsC" | "pointsX" | "labelC" | "labelX" => {
                    other.insert(key, value);
                }
                _ => return Err(Error::Parse(format!("N = {n}: unknown key {key:?}"))),
            }
        }
    }
    for (key, f) in &functions {
        let e = expanded
            .get(key)
            .ok_or_else(|| Error::DataCheck(format!("N = {n}: {key} has no expanded form")))?;
        check(
            e.same_function(f),
            &format!("factored and expanded forms of {key} differ"),
        )?;
    }
    for key in expanded.keys() {
        check(functions.contains_key(key), &format!("{key}.expanded without {key}"))?;
    }

    let take = |key: &str| functions.get(key).cloned();
    let need = |key: &str| take(key).ok_or_else(|| Error::DataCheck(format!("N = {n}: missing {key}")));
    let j_map = need("jmap")?;
    let jprime_map = need("jpmap")?;
    check(!j_map.is_constant() && !jprime_map.is_constant(), "j-maps must be nonconstant")?;
    let f = as_poly(n, "F", &need("F")?)?;
    let g = as_poly(n, "G", &need("G")?)?;
    if n == 3 || n == 7 {
        check(f == g, "F and G must coincide")?;
    }

    let single = SINGLE_LEVELS.contains(&n);
    let pair = PAIR_LEVELS.contains(&n);
    let h_param_c = take("hC");
    let thm1_j = take("thm1");
    check(h_param_c.is_some() == single && thm1_j.is_some() == single, "hC/thm1 presence")?;
    let h_param_x = take("hX");
    let thm2_pair = take("thm2.j").zip(take("thm2.jp"));
    check(h_param_x.is_some() == pair && thm2_pair.is_some() == pair, "hX/thm2 presence")?;

    let genus = |key: &str| -> Result<Option<u32>> {
        other
            .get(key)
            .map(|v| v.parse().map_err(|_| Error::Parse(format!("N = {n}: bad {key} {v:?}"))))
            .transpose()
    };
    let genus_c = genus("genusC")?;
    let genus_x = genus("genusX")?;
    check(genus_c.is_some(), "missing genusC")?;

    let known_points_c: Vec<AffinePointC> = match other.get("pointsC") {
        Some(s) => parse_points(s, 2)?
            .into_iter()
            .map(|c| AffinePointC::new(c[0].clone(), c[1].clone()))
            .collect(),
        None => Vec::new(),
    };
    let known_points_x: Vec<AffinePointX> = match other.get("pointsX") {
        Some(s) => parse_points(s, 3)?
            .into_iter()
            .map(|c| AffinePointX::new(c[0].clone(), c[1].clone(), c[2].clone()))
            .collect(),
        None => Vec::new(),
    };
    for p in &known_points_c {
        check(&p.y * &p.y == f.eval(&p.h), &format!("listed point {p} is not on C_N"))?;
    }
    for p in &known_points_x {
        let on = &p.y * &p.y == f.eval(&p.h) && &p.z * &p.z == g.eval(&p.h);
        check(on, &format!("listed point {p} is not on X_N"))?;
    }

    Ok(IsogenyFamily {
        n,
        j_map,
        jprime_map,
        f,
        g,
        h_param_c,
        h_param_x,
        thm1_j,
        thm2_pair,
        genus_c,
        genus_x,
        known_points_c,
        known_points_x,
        label_c: other.get("labelC").cloned(),
        label_x: other.get("labelX").cloned(),
        sources,
    })
}

/// `y` of the explicit C_2 parametrization `t ↦ (16t²/(t+1), 16t(t+2)/(t+1))`.
pub fn c2_explicit_y() -> RationalFunction {
    parse_rf("16t(t+2)/(t+1)", 't').expect("valid expression")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn cat() -> &'static Catalog {
        Catalog::builtin()
    }

    fn p(c: &[i64]) -> Poly {
        Poly::from_ints(c)
    }

    #[test]
    fn builtin_loads() {
        assert_eq!(cat().families().count(), 14);
        assert_eq!(cat().finite_cases().len(), 14);
        let f2 = cat().family(2).unwrap();
        assert_eq!(f2.f, p(&[0, 64, 1]));
        assert_eq!(f2.g, p(&[64, 1]));
        assert_eq!(f2.h_param_c.as_ref().unwrap().display("t"), "(16*t^2)/(t + 1)");
        let f25 = cat().family(25).unwrap();
        let expected = &(&p(&[-1, 1]) * &p(&[4, 0, 1])) * &p(&[11, 6, 6, 1, 1]);
        assert_eq!(f25.f, expected);
        assert_eq!(f25.genus_c, Some(3));
        assert!(matches!(cat().family(11), Err(Error::UnsupportedLevel(11, _))));
        assert!(cat().family(5).unwrap().thm1_j.is_none());
    }

    #[test]
    fn theorem1_values() {
        assert_eq!(cat().theorem1_j(2, &int(1)).unwrap(), int(1728));
        assert!(matches!(cat().theorem1_j(2, &int(0)), Err(Error::Pole { .. })));
        assert!(matches!(cat().theorem1_j(5, &int(1)), Err(Error::UnsupportedLevel(5, _))));
        // N = 3 is j_3(t²)
        let t = rat(5, 7);
        assert_eq!(
            cat().theorem1_j(3, &t).unwrap(),
            cat().family(3).unwrap().j_map.eval(&(&t * &t)).unwrap()
        );
        assert_eq!(cat().theorem1_j(7, &int(1)).unwrap(), int(21609));
        for n in SINGLE_LEVELS {
            assert!(cat().theorem1_identity(n).unwrap(), "N = {n}");
        }
    }

    #[test]
    fn theorem2_values() {
        assert_eq!(cat().theorem2_pair(3, &int(3)).unwrap(), (int(6912), int(790272)));
        for t in [-1, 0, 1] {
            assert!(matches!(cat().theorem2_pair(2, &int(t)), Err(Error::Pole { .. })));
        }
        let (a, b) = cat().theorem2_pair(7, &int(1)).unwrap();
        let f7 = cat().family(7).unwrap();
        assert_eq!((a, b), (f7.j_map.eval(&int(1)).unwrap(), f7.jprime_map.eval(&int(1)).unwrap()));
        for n in PAIR_LEVELS {
            assert_eq!(cat().theorem2_identity(n).unwrap(), (true, true), "N = {n}");
        }
        assert_eq!(cat().degenerate_t_pair(2).unwrap(), vec![int(-1), int(0), int(1)]);
    }

    #[test]
    fn congruences() {
        let v = cat().verify_congruence(2).unwrap();
        assert!(v.holds());
        // (j_2 - 1728)·F_2 = ((h - 8)(h + 64))²
        assert_eq!(v.f_side.witness.as_deref(), Some("h^2 + 56*h - 512"));
        // (j'_2 - 1728)·G_2 = ((h - 512)(h + 64)/h)²
        assert_eq!(v.g_side.witness.as_deref(), Some("(h^2 - 448*h - 32768)/(h)"));
        for n in FAMILY_LEVELS {
            assert!(cat().verify_congruence(n).unwrap().holds(), "N = {n}");
        }
    }

    #[test]
    fn finite_cases() {
        let scan = cat().finite_cases_scan();
        assert_eq!(scan.len(), 28);
        assert!(scan.iter().all(FiniteCaseVerdict::holds));
        let e = scan.iter().find(|v| v.n == 15 && v.side == "j'" && v.j > int(0)).unwrap();
        assert_eq!(e.j, rat(5 * 211 * 211 * 211, 32768));
        assert!(e.j < int(1728));
        assert!(scan.iter().any(|v| v.n == 11 && v.j == int(-32768) && v.flagged_cm && v.in_cm_set));
    }

    #[test]
    fn cstar() {
        assert!(cat().cstar_membership(2, &int(36)).unwrap());
        assert!(!cat().cstar_membership(2, &int(0)).unwrap());
        assert!(!cat().cstar_membership(5, &int(1)).unwrap());
        assert_eq!(cat().family(5).unwrap().f.eval(&int(1)), int(148));
    }

    #[test]
    fn parametrizations() {
        let y = cat().c_parametrization_y(2).unwrap().unwrap();
        let explicit = c2_explicit_y();
        assert!(y == explicit || y == -&explicit);
        for n in SINGLE_LEVELS {
            assert!(cat().c_parametrization_y(n).unwrap().is_some(), "N = {n}");
        }
        for n in PAIR_LEVELS {
            assert!(cat().x_parametrization_yz(n).unwrap().is_some(), "N = {n}");
        }
        assert!(cat().c_parametrization_y(5).unwrap().is_none());
    }

    #[test]
    fn remark_levels_have_equal_conditions() {
        for n in [3, 7] {
            let f = cat().family(n).unwrap();
            assert_eq!(f.f, f.g);
        }
    }

    #[test]
    fn rejects_tampered_data() {
        let bad = BUILTIN.replacen("F = h(h+64)", "F = h(h+65)", 1);
        assert!(matches!(Catalog::parse(&bad), Err(Error::DataCheck(_))));
        let bad = BUILTIN.replacen("pointsC = (3,0)", "pointsC = (3,1)", 1);
        assert!(matches!(Catalog::parse(&bad), Err(Error::DataCheck(_))));
        let bad = BUILTIN.replacen("[25]", "[26]", 1);
        assert!(Catalog::parse(&bad).is_err());
        let bad = BUILTIN.replacen("| -11^2 | no", "| -11^2 | maybe", 1);
        assert!(matches!(Catalog::parse(&bad), Err(Error::Parse(_))));
    }
}
