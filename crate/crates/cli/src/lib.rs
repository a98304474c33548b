//! The commands behind the `sqdisc` binary, as functions returning reports.

use std::path::Path;

use serde_json::json;
use sqdisc_core::arith::{parse_rational, rational_sqrt, Rational};
use sqdisc_core::classify::{cm_square_disc_expected, is_cm_j, square_disc_by_j, square_disc_direct, CmRecord};
use sqdisc_core::families::{Catalog, SINGLE_LEVELS};
use sqdisc_core::isogeny::{find_chain_from, ModularPolynomials, CHAIN_LEVELS, MODPOLY_LEVELS};
use sqdisc_core::report::Report;
use sqdisc_core::search::{genus_hyperelliptic, on_curve_homogeneous, search_c, search_x};
use sqdisc_core::suites::{family_member, run_suite, Context, SuiteOptions};
use sqdisc_core::weierstrass::{parse_curve, serialize_general, serialize_short};
use sqdisc_core::{Error, Result};

/// Catalog and modular polynomials, from a directory or compiled in.
pub struct Data {
    catalog: Catalog,
    modpoly: ModularPolynomials,
}

impl Data {
    pub fn load(dir: Option<&Path>) -> Result<Data> {
        match dir {
            Some(d) => {
                let catalog = Catalog::from_dir(d)?;
                let modpoly = ModularPolynomials::from_dir(d, &catalog)?;
                Ok(Data { catalog, modpoly })
            }
            None => Ok(Data {
                catalog: Catalog::builtin().clone(),
                modpoly: ModularPolynomials::builtin().clone(),
            }),
        }
    }

    pub fn context(&self) -> Context<'_> {
        Context {
            catalog: &self.catalog,
            modpoly: &self.modpoly,
        }
    }
}

fn s(r: &Rational) -> String {
    r.to_string()
}

pub fn cmd_classify(curve: &str) -> Result<Report> {
    let mut r = Report::new("classify");
    r.input("curve", curve);
    let input = parse_curve(curve)?;
    let m = input.to_general();
    m.require_nonsingular()?;
    let (short, _) = m.short_form();
    let delta = m.discriminant();
    let j = m.j_invariant().expect("nonsingular");
    let direct = square_disc_direct(&m)?;
    let by_j = square_disc_by_j(&m)?;
    r.result("model", serialize_general(&m))
        .result("short_model", serialize_short(&short))
        .result("discriminant", s(&delta))
        .result("j", s(&j))
        .result("square_disc", direct)
        .result("square_disc_by_j", &by_j)
        .result("sqrt_discriminant", rational_sqrt(&delta).map(|w| s(&w)))
        .result("cm", CmRecord::of(&j));
    r.check(
        "direct and j-invariant methods agree",
        direct == by_j.is_square,
        Some(json!({"direct": direct, "by_j": by_j.is_square})),
    );
    if let Some(expected) = cm_square_disc_expected(&m)? {
        r.check(
            "CM curves: square iff y^2 = x^3 - s^2 x",
            expected == direct,
            Some(json!({"expected": expected, "direct": direct})),
        );
    }
    Ok(r)
}

pub fn cmd_family(data: &Data, n: u32, t: &str) -> Result<Report> {
    let mut r = Report::new("family");
    r.input("N", n).input("t", t);
    let t = parse_rational(t)?;
    if !SINGLE_LEVELS.contains(&n) {
        return Err(Error::UnsupportedLevel(n, "{2,3,4,6,7,8}"));
    }
    let cat = &data.catalog;
    if cat.degenerate_t_single(n)?.contains(&t) {
        return Err(Error::Pole { at: t });
    }
    let fam = cat.family(n)?;
    let j = cat.theorem1_j(n, &t)?;
    let h = fam.h_param_c.as_ref().expect("present for single levels").eval(&t)?;
    let jp = fam.jprime_map.eval(&h)?;
    let model = family_member(&j);
    let g = model.to_general();
    let delta = model.discriminant();
    let cert = rational_sqrt(&delta);
    r.result("j", s(&j))
        .result("h", s(&h))
        .result("j_prime", s(&jp))
        .result("model", serialize_short(&model))
        .result("discriminant", s(&delta))
        .result("sqrt_discriminant", cert.as_ref().map(s))
        .result("cm", is_cm_j(&j));
    r.check(
        "closed form equals j_map(h_param_C(t))",
        cat.theorem1_j_composed(n, &t)? == j,
        None,
    );
    r.check(
        "square-disc certificate",
        cert.as_ref().is_some_and(|w| w * w == delta),
        None,
    );
    let by_j = square_disc_by_j(&g)?;
    r.check(
        "square-disc by j",
        by_j.is_square,
        Some(json!({"branch": by_j.branch})),
    );
    if CHAIN_LEVELS.contains(&n) {
        let chain = find_chain_from(&model, n, &jp)?;
        r.result("isogeny_chain", &chain);
        r.check(format!("{n}-isogeny chain to j'"), chain.is_some(), None);
    }
    if MODPOLY_LEVELS.contains(&n) {
        r.check(
            format!("Phi_{n}(j, j') = 0"),
            data.modpoly.modular_poly_check(n, &j, &jp)?,
            None,
        );
    }
    Ok(r)
}

pub fn cmd_verify(data: &Data, suite: &str, opts: &SuiteOptions) -> Result<Report> {
    run_suite(suite, &data.context(), opts)
}

pub fn cmd_search(data: &Data, n: u32, which: &str, height: u64) -> Result<Report> {
    let mut r = Report::new("search");
    r.input("N", n).input("which", which).input("height", height);
    let fam = data.catalog.family(n)?;
    r.result("genus_C", genus_hyperelliptic(&fam.f)?);
    match which {
        "C" => {
            let pts = search_c(&data.catalog, n, height)?;
            let bad: Vec<String> = pts
                .iter()
                .filter(|p| !on_curve_homogeneous(&fam.f, &p.h, &p.y))
                .map(|p| p.to_string())
                .collect();
            r.result("count", pts.len()).result("points", &pts);
            r.check("points lie on C", bad.is_empty(), Some(json!({"off_curve": bad})));
        }
        "X" => {
            let pts = search_x(&data.catalog, n, height)?;
            let bad: Vec<String> = pts
                .iter()
                .filter(|p| !on_curve_homogeneous(&fam.f, &p.h, &p.y) || !on_curve_homogeneous(&fam.g, &p.h, &p.z))
                .map(|p| p.to_string())
                .collect();
            r.result("count", pts.len()).result("points", &pts);
            r.check("points lie on X", bad.is_empty(), Some(json!({"off_curve": bad})));
        }
        other => return Err(Error::Parse(format!("curve must be C or X, got {other:?}"))),
    }
    Ok(r)
}
