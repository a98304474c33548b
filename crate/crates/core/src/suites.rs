//! The named verification suites behind `sqdisc verify`.
//!
//! Every suite fills a [`Report`]. Items may be computed in parallel, but
//! they are merged in a fixed order (by level, then by sample index), so a
//! report depends only on the suite name and its options.

use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::arith::{int, is_square_rational, rat, Rational};
use crate::classify::{
    cm_isogeny_graph, cm_j_invariants, cm_nonsquare_scan, cm_square_disc_expected, curve_from_j,
    model_discriminant_formula, square_disc_by_j, square_disc_direct, Branch,
};
use crate::error::{Error, Result};
use crate::factor::FactorConfig;
use crate::families::{Catalog, FAMILY_LEVELS, FINITE_NONCM_LEVELS, PAIR_LEVELS, SINGLE_LEVELS};
use crate::isogeny::{chain_check_pair, ModularPolynomials};
use crate::report::Report;
use crate::sample::{Sampler, DEFAULT_SEED};
use crate::search::{c_preimage, cusp_check, genus_hyperelliptic, on_curve_homogeneous, search_c, search_x};
use crate::weierstrass::{quadratic_twist, quartic_twist, sextic_twist, ChangeOfVariables, ShortModel};

/// Suite names accepted by [`run_suite`], in the order `all` runs them.
pub const SUITES: [&str; 11] = [
    "congruences",
    "genus",
    "finite-cases",
    "cm",
    "model-curve",
    "prop-equivalence",
    "thm1",
    "thm2",
    "oracles",
    "tables-C",
    "tables-X",
];

pub const DEFAULT_HEIGHT: u64 = 50;
pub const THM1_SAMPLES: usize = 100;
pub const THM2_SAMPLES: usize = 50;
pub const EQUIVALENCE_SAMPLES: usize = 1000;
pub const MODEL_CURVE_SAMPLES: usize = 100;
pub const ORACLE_SAMPLES: usize = 100;
/// Heights above this are capped in the genus-0 parametrization check,
/// where the number of points grows quickly with the height.
const GENUS0_HEIGHT_CAP: u64 = 20;

#[derive(Debug, Clone)]
pub struct SuiteOptions {
    pub height: u64,
    /// Overrides the per-suite sample count when set.
    pub samples: Option<usize>,
    pub seed: u64,
    pub factor: FactorConfig,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            height: DEFAULT_HEIGHT,
            samples: None,
            seed: DEFAULT_SEED,
            factor: FactorConfig::default(),
        }
    }
}

impl SuiteOptions {
    fn samples_or(&self, default: usize) -> usize {
        self.samples.unwrap_or(default)
    }
}

/// Data the suites read: the family catalog and the modular polynomials.
#[derive(Clone, Copy)]
pub struct Context<'a> {
    pub catalog: &'a Catalog,
    pub modpoly: &'a ModularPolynomials,
}

impl Context<'static> {
    pub fn builtin() -> Self {
        Context {
            catalog: Catalog::builtin(),
            modpoly: ModularPolynomials::builtin(),
        }
    }
}

/// Runs suite `name` (or every suite for `"all"`).
pub fn run_suite(name: &str, ctx: &Context, opts: &SuiteOptions) -> Result<Report> {
    let mut r = Report::new("verify");
    r.input("suite", name)
        .input("height", opts.height)
        .input("samples", opts.samples)
        .input("seed", opts.seed)
        .input("factor_bound", opts.factor.trial_bound);
    if name == "all" {
        for s in SUITES {
            let mut sub = Report::new(s);
            run_one(s, ctx, opts, &mut sub)?;
            r.absorb(&format!("{s}/"), sub);
        }
    } else {
        run_one(name, ctx, opts, &mut r)?;
    }
    Ok(r)
}

fn run_one(name: &str, ctx: &Context, opts: &SuiteOptions, r: &mut Report) -> Result<()> {
    match name {
        "congruences" => congruences(ctx, opts, r),
        "genus" => genus(ctx, opts, r),
        "finite-cases" => finite_cases(ctx, r),
        "cm" => cm(r),
        "model-curve" => model_curve(opts, r),
        "prop-equivalence" => prop_equivalence(opts, r),
        "thm1" => thm1(ctx, opts, r),
        "thm2" => thm2(ctx, opts, r),
        "oracles" => oracles(ctx, opts, r),
        "tables-C" => tables_c(ctx, opts, r),
        "tables-X" => tables_x(ctx, opts, r),
        other => return Err(Error::UnknownSuite(other.into())),
    }
    Ok(())
}

fn s(r: &Rational) -> String {
    r.to_string()
}

/// `k` distinct draws accepted by `keep`, or fewer if the pool runs dry.
fn distinct_samples(sampler: &mut Sampler, k: usize, keep: impl Fn(&Rational) -> bool) -> Vec<Rational> {
    let mut out: Vec<Rational> = Vec::with_capacity(k);
    let mut tries = 0;
    while out.len() < k && tries < 100_000 {
        tries += 1;
        let t = sampler.rational();
        if keep(&t) && !out.contains(&t) {
            out.push(t);
        }
    }
    out
}

/// The model of a family member with j-invariant `j`. The value 1728 is
/// sent to `y² = x³ - x`, the j = 1728 curve with full rational 2-torsion;
/// everything else goes through [`curve_from_j`].
pub fn family_member(j: &Rational) -> ShortModel {
    if *j == int(1728) {
        ShortModel::from_ints(-1, 0)
    } else {
        curve_from_j(j)
    }
}

/// The square-disc criterion on a family member, with both methods.
/// Returns `(holds, branch)`.
fn square_criterion(j: &Rational) -> Result<(bool, Branch)> {
    let m = family_member(j).to_general();
    let by_j = square_disc_by_j(&m)?;
    let direct = square_disc_direct(&m)?;
    Ok((by_j.is_square && direct, by_j.branch))
}

fn congruences(ctx: &Context, opts: &SuiteOptions, r: &mut Report) {
    let items: Vec<_> = FAMILY_LEVELS
        .par_iter()
        .map(|&n| (n, ctx.catalog.verify_congruence_with(n, &opts.factor)))
        .collect();
    for (n, v) in items {
        r.check_result(
            format!("N={n}"),
            v,
            |v| v.holds(),
            |v| {
                Some(json!({
                    "F": {"holds": v.f_side.holds, "witness": v.f_side.witness},
                    "G": {"holds": v.g_side.holds, "witness": v.g_side.witness},
                }))
            },
        );
    }
}

fn genus(ctx: &Context, opts: &SuiteOptions, r: &mut Report) {
    for n in FAMILY_LEVELS {
        let fam = ctx.catalog.family(n).expect("every level is present");
        let expected = fam.genus_c;
        r.check_result(
            format!("genus C N={n}"),
            genus_hyperelliptic(&fam.f),
            |g| Some(*g) == expected,
            |g| Some(json!({"computed": g, "expected": expected})),
        );
    }
    for n in [3, 7] {
        let fam = ctx.catalog.family(n).expect("present");
        r.check(format!("F = G N={n}"), fam.f == fam.g, None);
    }
    let height = opts.height.min(GENUS0_HEIGHT_CAP);
    let items: Vec<_> = SINGLE_LEVELS
        .par_iter()
        .map(|&n| {
            let pts = search_c(ctx.catalog, n, height)?;
            let mut missing = Vec::new();
            for p in &pts {
                if c_preimage(ctx.catalog, n, p)?.is_none() {
                    missing.push(p.to_string());
                }
            }
            Ok((pts.len(), missing))
        })
        .collect();
    for (n, item) in SINGLE_LEVELS.iter().zip(items) {
        r.check_result(
            format!("parametrized C N={n} H={height}"),
            item,
            |(_, missing): &(usize, Vec<String>)| missing.is_empty(),
            |(count, missing)| Some(json!({"points": count, "without_parameter": missing})),
        );
    }
}

fn finite_cases(ctx: &Context, r: &mut Report) {
    for v in ctx.catalog.finite_cases_scan() {
        let noncm = FINITE_NONCM_LEVELS.contains(&v.n);
        r.check(
            format!("N={} {}={}", v.n, v.side, v.j),
            v.holds(),
            Some(json!({
                "j_minus_1728_is_square": v.j_minus_1728_is_square,
                "non_cm_level": noncm,
                "flagged_cm": v.flagged_cm,
                "in_cm_set": v.in_cm_set,
            })),
        );
    }
}

/// Parameters of the CM isogeny graph checked by the `cm` suite.
pub fn cm_parameters() -> [Rational; 4] {
    [int(1), int(2), int(3), rat(5, 2)]
}

fn cm(r: &mut Report) {
    for t in cm_parameters() {
        let graph = cm_isogeny_graph(&t).expect("t is nonzero");
        let t6 = t.pow(6);
        for c in &graph {
            let m = c.model.to_general();
            let d = m.discriminant();
            let direct = square_disc_direct(&m).expect("nonsingular");
            let by_j = square_disc_by_j(&m).expect("nonsingular");
            let expected_square = c.label == "E_{-t^2}";
            let expected_disc = match c.label {
                "E_{-t^2}" => int(64) * &t6,
                "E_{4t^2}" => -int(4096) * &t6,
                _ => int(512) * &t6,
            };
            r.check(
                format!("t={t} {} discriminant", c.label),
                d == expected_disc,
                Some(json!({"computed": s(&d), "expected": s(&expected_disc)})),
            );
            r.check(
                format!("t={t} {} square-disc", c.label),
                direct == expected_square && by_j.is_square == expected_square,
                Some(json!({"direct": direct, "by_j": by_j.is_square, "branch": by_j.branch})),
            );
        }
    }
    let scan = cm_nonsquare_scan();
    r.check(
        "CM j != 1728: j - 1728 non-square",
        scan.len() == 12 && scan.iter().all(|e| !e.j_minus_1728_is_square),
        Some(json!({"count": scan.len(), "squares": scan.iter().filter(|e| e.j_minus_1728_is_square).map(|e| s(&e.j)).collect::<Vec<_>>()})),
    );
    let mut bad = Vec::new();
    for j in cm_j_invariants().iter().filter(|j| **j != int(1728)) {
        let m = curve_from_j(j).to_general();
        let by_j = square_disc_by_j(&m).expect("nonsingular");
        let direct = square_disc_direct(&m).expect("nonsingular");
        let expected = cm_square_disc_expected(&m).expect("nonsingular");
        if by_j.is_square || direct || expected != Some(false) {
            bad.push(s(j));
        }
    }
    r.check(
        "CM j != 1728 curves fail the square criterion",
        bad.is_empty(),
        Some(json!({"failures": bad})),
    );
}

fn model_curve(opts: &SuiteOptions, r: &mut Report) {
    let mut sampler = Sampler::fork(opts.seed, 0x6d63);
    let js = distinct_samples(&mut sampler, opts.samples_or(MODEL_CURVE_SAMPLES), |j| {
        !j.is_zero() && *j != int(1728)
    });
    let mut bad = Vec::new();
    for j in &js {
        let m = curve_from_j(j);
        let d = m.discriminant();
        let expected = model_discriminant_formula(j);
        if d != expected || m.j_invariant().as_ref() != Some(j) {
            bad.push(json!({"j0": s(j), "discriminant": s(&d), "expected": s(&expected)}));
        }
    }
    r.result("samples", js.len());
    r.check(
        "discriminant of curve_from_j",
        bad.is_empty() && !js.is_empty(),
        Some(json!({"failures": bad})),
    );
}

/// The `i`-th curve of the equivalence suite, drawn from its own stream.
fn equivalence_curve(seed: u64, i: u64) -> (&'static str, crate::weierstrass::GeneralModel) {
    let mut sm = Sampler::fork(seed, 0x7072_0000 + i);
    let square = |sm: &mut Sampler| {
        let q = sm.nonzero_rational();
        &q * &q
    };
    loop {
        let (kind, model) = match i % 5 {
            0 => {
                // j - 1728 of either sign, a square about half the time
                let q = square(&mut sm);
                let j = if sm.choose(2) == 0 { int(1728) + q } else { int(1728) - q };
                ("j-shift", curve_from_j(&j))
            }
            1 => {
                let m = ShortModel::new(sm.rational(), sm.rational());
                let d = sm.nonzero_rational();
                match quadratic_twist(&m, &d) {
                    Ok(t) => ("quadratic", t),
                    Err(_) => continue,
                }
            }
            2 => {
                let a = sm.nonzero_rational();
                let d = if sm.choose(2) == 0 { -square(&mut sm) } else { sm.nonzero_rational() };
                ("quartic", quartic_twist(&a, &d).expect("nonzero"))
            }
            3 => {
                let b = sm.nonzero_rational();
                let d = sm.nonzero_rational();
                ("sextic", sextic_twist(&b, &d).expect("nonzero"))
            }
            _ => ("general", ShortModel::new(sm.rational(), sm.rational())),
        };
        if model.is_singular() {
            continue;
        }
        let mut g = model.to_general();
        if kind == "general" {
            let c = ChangeOfVariables::new(sm.nonzero_rational(), sm.rational(), sm.rational(), sm.rational())
                .expect("u is nonzero");
            g = g.transform(&c).expect("u is nonzero");
        }
        return (kind, g);
    }
}

fn prop_equivalence(opts: &SuiteOptions, r: &mut Report) {
    let k = opts.samples_or(EQUIVALENCE_SAMPLES) as u64;
    let rows: Vec<_> = (0..k)
        .into_par_iter()
        .map(|i| {
            let (kind, m) = equivalence_curve(opts.seed, i);
            let direct = square_disc_direct(&m).expect("nonsingular by construction");
            let by_j = square_disc_by_j(&m).expect("nonsingular by construction");
            (i, kind, m, direct, by_j)
        })
        .collect();
    let mut disagreements = Vec::new();
    let mut squares = 0usize;
    let mut branches = std::collections::BTreeMap::<&str, usize>::new();
    for (i, kind, m, direct, by_j) in &rows {
        *branches.entry(by_j.branch.as_str()).or_default() += 1;
        if *direct {
            squares += 1;
        }
        if *direct != by_j.is_square {
            disagreements.push(json!({
                "index": i,
                "kind": kind,
                "model": crate::weierstrass::serialize_general(m),
                "direct": direct,
                "by_j": by_j.is_square,
            }));
        }
    }
    r.result("curves", rows.len());
    r.result("square_discriminants", squares);
    r.result("branches", &branches);
    r.check(
        "square_disc_by_j = square_disc_direct",
        disagreements.is_empty(),
        Some(json!({"disagreements": disagreements})),
    );
}

fn thm1(ctx: &Context, opts: &SuiteOptions, r: &mut Report) {
    let k = opts.samples_or(THM1_SAMPLES);
    let items: Vec<_> = SINGLE_LEVELS
        .par_iter()
        .map(|&n| thm1_level(ctx.catalog, n, k, opts.seed))
        .collect();
    for (n, item) in SINGLE_LEVELS.iter().zip(items) {
        match item {
            Ok(sub) => r.absorb(&format!("N={n} "), sub),
            Err(e) => {
                r.check(format!("N={n}"), false, Some(Value::String(e.to_string())));
            }
        }
    }
}

fn thm1_level(cat: &Catalog, n: u32, k: usize, seed: u64) -> Result<Report> {
    let mut r = Report::new("thm1");
    r.check_result("identity", cat.theorem1_identity(n), |b| *b, |_| None);
    let degenerate = cat.degenerate_t_single(n)?;
    let fam = cat.family(n)?;
    let hc = fam.h_param_c.as_ref().ok_or(Error::UnsupportedLevel(n, "{2,3,4,6,7,8}"))?;
    let yc = cat.c_parametrization_y(n)?;
    let ts = distinct_samples(&mut Sampler::fork(seed, n as u64), k, |t| !degenerate.contains(t));
    let mut failures = Vec::new();
    let mut hits_1728 = Vec::new();
    let mut image_bad = Vec::new();
    for t in &ts {
        let j = cat.theorem1_j(n, t)?;
        let composed = cat.theorem1_j_composed(n, t)?;
        let (holds, branch) = square_criterion(&j)?;
        if branch == Branch::J1728 {
            hits_1728.push(s(t));
        }
        if !holds || composed != j || branch == Branch::JZero {
            failures.push(json!({"t": s(t), "j": s(&j), "composed": s(&composed)}));
        }
        let h = hc.eval(t)?;
        let on_curve = match &yc {
            Some(y) => {
                let y = y.eval(t)?;
                &y * &y == fam.f.eval(&h) && on_curve_homogeneous(&fam.f, &h, &y)
            }
            None => false,
        };
        if !on_curve {
            image_bad.push(s(t));
        }
    }
    r.result("j_1728_hits", &hits_1728);
    r.check(
        "j - 1728 square",
        failures.is_empty() && ts.len() == k,
        Some(json!({"samples": ts.len(), "failures": failures})),
    );
    r.check(
        "image on C",
        image_bad.is_empty(),
        Some(json!({"failures": image_bad})),
    );
    Ok(r)
}

fn thm2(ctx: &Context, opts: &SuiteOptions, r: &mut Report) {
    let k = opts.samples_or(THM2_SAMPLES);
    for n in PAIR_LEVELS {
        match thm2_level(ctx, n, k, opts.seed) {
            Ok(sub) => r.absorb(&format!("N={n} "), sub),
            Err(e) => {
                r.check(format!("N={n}"), false, Some(Value::String(e.to_string())));
            }
        }
    }
}

fn thm2_level(ctx: &Context, n: u32, k: usize, seed: u64) -> Result<Report> {
    let cat = ctx.catalog;
    let mut r = Report::new("thm2");
    r.check_result(
        "identity",
        cat.theorem2_identity(n),
        |(a, b)| *a && *b,
        |(a, b)| Some(json!({"j": a, "j'": b})),
    );
    let degenerate = cat.degenerate_t_pair(n)?;
    let ts = distinct_samples(&mut Sampler::fork(seed, 0x200 + n as u64), k, |t| {
        !degenerate.contains(t)
    });
    let oracle = if n == 4 { "chain" } else { "modular polynomial" };
    let rows: Vec<Result<Option<Value>>> = ts
        .par_iter()
        .map(|t| {
            let (j1, j2) = cat.theorem2_pair(n, t)?;
            let composed = cat.theorem2_pair_composed(n, t)?;
            let (sq1, _) = square_criterion(&j1)?;
            let (sq2, _) = square_criterion(&j2)?;
            let isogenous = if n == 4 {
                chain_check_pair(n, &j1, &j2)?
            } else {
                ctx.modpoly.modular_poly_check(n, &j1, &j2)?
            };
            let ok = sq1 && sq2 && isogenous && composed == (j1.clone(), j2.clone());
            Ok((!ok).then(|| {
                json!({"t": s(t), "j": s(&j1), "j'": s(&j2), "square": [sq1, sq2], "isogenous": isogenous})
            }))
        })
        .collect();
    let mut failures = Vec::new();
    for row in rows {
        match row {
            Ok(None) => {}
            Ok(Some(v)) => failures.push(v),
            Err(e) => failures.push(Value::String(e.to_string())),
        }
    }
    r.check(
        format!("square pair and {oracle} oracle"),
        failures.is_empty() && ts.len() == k,
        Some(json!({"samples": ts.len(), "failures": failures})),
    );
    Ok(r)
}

fn oracles(ctx: &Context, opts: &SuiteOptions, r: &mut Report) {
    for c in ctx.modpoly.load_checks() {
        r.check(format!("load: {}", c.name), c.holds, None);
    }
    let k = opts.samples_or(ORACLE_SAMPLES);
    for n in [2u32, 3] {
        let fam = ctx.catalog.family(n).expect("present");
        let usable = |h: &Rational| !fam.j_map.is_pole(h) && !fam.jprime_map.is_pole(h);
        let mut sampler = Sampler::fork(opts.seed, 0x300 + n as u64);
        let hs = distinct_samples(&mut sampler, k, usable);
        // every other pair is mismatched: the dual j taken at the next sample
        let pairs: Vec<(Rational, Rational, bool)> = hs
            .iter()
            .enumerate()
            .map(|(i, h)| {
                let j1 = fam.j_map.eval(h).expect("not a pole");
                if i % 2 == 0 {
                    (j1, fam.jprime_map.eval(h).expect("not a pole"), true)
                } else {
                    let other = &hs[(i + 1) % hs.len()];
                    (j1, fam.jprime_map.eval(other).expect("not a pole"), false)
                }
            })
            .collect();
        let rows: Vec<Result<(bool, bool)>> = pairs
            .par_iter()
            .map(|(j1, j2, _)| Ok((chain_check_pair(n, j1, j2)?, ctx.modpoly.modular_poly_check(n, j1, j2)?)))
            .collect();
        let mut disagreements = Vec::new();
        let mut matched_missed = Vec::new();
        let mut agree_true = 0usize;
        for ((j1, j2, matched), row) in pairs.iter().zip(rows) {
            match row {
                Ok((chain, modp)) => {
                    if chain != modp {
                        disagreements.push(json!({"j": s(j1), "j'": s(j2), "chain": chain, "modular": modp}));
                    } else if chain {
                        agree_true += 1;
                    }
                    if *matched && !(chain && modp) {
                        matched_missed.push(json!({"j": s(j1), "j'": s(j2)}));
                    }
                }
                Err(e) => disagreements.push(Value::String(e.to_string())),
            }
        }
        r.result(&format!("N={n} isogenous pairs"), agree_true);
        r.check(
            format!("N={n} chain = modular polynomial"),
            disagreements.is_empty() && pairs.len() == k,
            Some(json!({"pairs": pairs.len(), "disagreements": disagreements})),
        );
        r.check(
            format!("N={n} family pairs isogenous"),
            matched_missed.is_empty(),
            Some(json!({"failures": matched_missed})),
        );
    }
}

fn tables_c(ctx: &Context, opts: &SuiteOptions, r: &mut Report) {
    let levels: Vec<u32> = FAMILY_LEVELS
        .into_iter()
        .filter(|&n| ctx.catalog.family(n).is_ok_and(|f| f.genus_c.is_some_and(|g| g >= 1)))
        .collect();
    let found: Vec<_> = levels
        .par_iter()
        .map(|&n| search_c(ctx.catalog, n, opts.height))
        .collect();
    for (&n, pts) in levels.iter().zip(found) {
        let fam = ctx.catalog.family(n).expect("present");
        let mut expected = fam.known_points_c.clone();
        expected.sort();
        r.check_result(
            format!("C N={n} H={}", opts.height),
            pts,
            |p| *p == expected && p.iter().all(|q| on_curve_homogeneous(&fam.f, &q.h, &q.y)),
            |p| Some(json!({"found": p, "expected": expected})),
        );
        cusps(ctx, n, "C", r);
    }
}

fn tables_x(ctx: &Context, opts: &SuiteOptions, r: &mut Report) {
    let levels: Vec<u32> = FAMILY_LEVELS
        .into_iter()
        .filter(|&n| ctx.catalog.family(n).is_ok_and(|f| f.genus_x.is_some_and(|g| g >= 1)))
        .collect();
    for n in levels {
        let fam = ctx.catalog.family(n).expect("present");
        let mut expected = fam.known_points_x.clone();
        expected.sort();
        r.check_result(
            format!("X N={n} H={}", opts.height),
            search_x(ctx.catalog, n, opts.height),
            |p| {
                *p == expected
                    && p.iter().all(|q| {
                        on_curve_homogeneous(&fam.f, &q.h, &q.y) && on_curve_homogeneous(&fam.g, &q.h, &q.z)
                    })
            },
            |p| Some(json!({"found": p, "expected": expected})),
        );
        cusps(ctx, n, "X", r);
    }
    // h = -4 on X_8: F is a square there but G is negative
    if let Ok(fam) = ctx.catalog.family(8) {
        let h = int(-4);
        let (f, g) = (fam.f.eval(&h), fam.g.eval(&h));
        r.result(
            "N=8 h=-4",
            json!({"F": s(&f), "G": s(&g), "F_square": is_square_rational(&f), "G_negative": g.is_negative()}),
        );
    }
}

fn cusps(ctx: &Context, n: u32, curve: &str, r: &mut Report) {
    match cusp_check(ctx.catalog, n) {
        Ok(vs) => {
            for v in vs.into_iter().filter(|v| v.curve == curve) {
                r.check(
                    format!("cusp {curve} N={n} {}", v.point),
                    v.holds,
                    Some(json!({"pole_of": v.pole_of})),
                );
            }
        }
        Err(e) => {
            r.check(format!("cusp {curve} N={n}"), false, Some(Value::String(e.to_string())));
        }
    }
}
