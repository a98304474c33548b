//! Whether a curve over Q has square discriminant, decided two ways: directly
//! from Δ and through the j-invariant, plus the CM j-invariants and the
//! isogeny class of `y² = x³ - t²x`.

use std::sync::OnceLock;

use num_traits::Zero;
use serde::Serialize;

use crate::arith::{int, is_square_rational, rational_sqrt, serialize_opt_rational, serialize_rational, Rational};
use crate::error::{Error, Result};
use crate::expr::parse_constant;
use crate::weierstrass::{GeneralModel, ShortModel};

/// Which case of the criterion decided the verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Branch {
    #[serde(rename = "generic-j")]
    GenericJ,
    #[serde(rename = "j-zero")]
    JZero,
    #[serde(rename = "j-1728")]
    J1728,
}

impl Branch {
    pub fn as_str(&self) -> &'static str {
        match self {
            Branch::GenericJ => "generic-j",
            Branch::JZero => "j-zero",
            Branch::J1728 => "j-1728",
        }
    }
}

/// When `is_square`, the witness is the positive `t` with `j = t² + 1728` on
/// the generic branch, or the positive `s` with `-A = s²` for the short form
/// `y² = x³ + Ax` on the j-1728 branch. It is absent otherwise.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SquareDiscVerdict {
    pub is_square: bool,
    pub branch: Branch,
    #[serde(serialize_with = "serialize_opt_rational")]
    pub witness: Option<Rational>,
}

/// `√Δ ∈ Q`, read off the discriminant.
pub fn square_disc_direct(m: &GeneralModel) -> Result<bool> {
    let d = m.require_nonsingular()?.discriminant();
    Ok(is_square_rational(&d))
}

/// `√Δ ∈ Q`, read off the j-invariant, with the j = 0 and j = 1728 cases
/// decided on the model itself.
pub fn square_disc_by_j(m: &GeneralModel) -> Result<SquareDiscVerdict> {
    let j = m.require_nonsingular()?.j_invariant().expect("nonsingular");
    if j.is_zero() {
        return Ok(SquareDiscVerdict {
            is_square: false,
            branch: Branch::JZero,
            witness: None,
        });
    }
    if j == int(1728) {
        let (short, _) = m.short_form();
        debug_assert!(short.b.is_zero());
        let witness = rational_sqrt(&-&short.a);
        return Ok(SquareDiscVerdict {
            is_square: witness.is_some(),
            branch: Branch::J1728,
            witness,
        });
    }
    let witness = rational_sqrt(&(j - int(1728)));
    Ok(SquareDiscVerdict {
        is_square: witness.is_some(),
        branch: Branch::GenericJ,
        witness,
    })
}

/// A rational square root of Δ(m), when there is one.
pub fn sqrt_discriminant(m: &GeneralModel) -> Option<Rational> {
    rational_sqrt(&m.discriminant())
}

/// A short model with j-invariant `j0`: `y² = x³ + 1` for 0, `y² = x³ + x`
/// for 1728, and `y² = x³ - 27k·x + 54k` with `k = j0/(j0 - 1728)` otherwise.
pub fn curve_from_j(j0: &Rational) -> ShortModel {
    if j0.is_zero() {
        return ShortModel::from_ints(0, 1);
    }
    if *j0 == int(1728) {
        return ShortModel::from_ints(1, 0);
    }
    let k = j0 / (j0 - int(1728));
    ShortModel::new(int(-27) * &k, int(54) * &k)
}

/// `2¹²·3¹²·j0² / (j0 - 1728)³`, the discriminant of [`curve_from_j`] away
/// from 0 and 1728.
pub fn model_discriminant_formula(j0: &Rational) -> Rational {
    let d = j0 - int(1728);
    int(46656) * int(46656) * j0 * j0 / (&d * &d * &d)
}

const CM_J: [&str; 13] = [
    "0",
    "2^4*3^3*5^3",
    "-2^15*3*5^3",
    "2^6*3^3",
    "2^3*3^3*11^3",
    "-3^3*5^3",
    "3^3*5^3*17^3",
    "2^6*5^3",
    "-2^15",
    "-2^15*3^3",
    "-2^18*3^3*5^3",
    "-2^15*3^3*5^3*11^3",
    "-2^18*3^3*5^3*23^3*29^3",
];

/// The thirteen j-invariants of elliptic curves over Q with complex
/// multiplication.
pub fn cm_j_invariants() -> &'static [Rational] {
    static SET: OnceLock<Vec<Rational>> = OnceLock::new();
    SET.get_or_init(|| {
        CM_J.iter()
            .map(|s| parse_constant(s).expect("valid constant"))
            .collect()
    })
}

pub fn is_cm_j(j: &Rational) -> bool {
    cm_j_invariants().contains(j)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CmRecord {
    #[serde(serialize_with = "serialize_rational")]
    pub j: Rational,
    pub in_cm_set: bool,
}

impl CmRecord {
    pub fn of(j: &Rational) -> Self {
        CmRecord {
            j: j.clone(),
            in_cm_set: is_cm_j(j),
        }
    }
}

/// For a CM curve: square discriminant exactly when j = 1728 and the curve
/// is `y² = x³ - s²x` up to isomorphism. `None` for curves without CM.
pub fn cm_square_disc_expected(m: &GeneralModel) -> Result<Option<bool>> {
    let j = m.require_nonsingular()?.j_invariant().expect("nonsingular");
    if !is_cm_j(&j) {
        return Ok(None);
    }
    if j != int(1728) {
        return Ok(Some(false));
    }
    let (short, _) = m.short_form();
    Ok(Some(is_square_rational(&-short.a)))
}

/// A vertex of the isogeny graph of `y² = x³ - t²x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledCurve {
    pub label: &'static str,
    pub model: ShortModel,
}

/// `E_{-t²}: y² = x³ - t²x`, `E_{4t²}: y² = x³ + 4t²x` and
/// `E'_{±t}: y² = x³ - 11t²x ± 14t³`, in that order.
pub fn cm_isogeny_graph(t: &Rational) -> Result<Vec<LabeledCurve>> {
    if t.is_zero() {
        return Err(Error::ZeroParameter("t"));
    }
    let t2 = t * t;
    let t3 = &t2 * t;
    Ok(vec![
        LabeledCurve {
            label: "E_{-t^2}",
            model: ShortModel::new(-&t2, Rational::zero()),
        },
        LabeledCurve {
            label: "E_{4t^2}",
            model: ShortModel::new(int(4) * &t2, Rational::zero()),
        },
        LabeledCurve {
            label: "E'_{+t}",
            model: ShortModel::new(int(-11) * &t2, int(14) * &t3),
        },
        LabeledCurve {
            label: "E'_{-t}",
            model: ShortModel::new(int(-11) * &t2, int(-14) * &t3),
        },
    ])
}

/// One line of [`cm_nonsquare_scan`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CmScanEntry {
    #[serde(serialize_with = "serialize_rational")]
    pub j: Rational,
    pub j_minus_1728_is_square: bool,
}

/// `j - 1728` for every CM j-invariant other than 1728.
pub fn cm_nonsquare_scan() -> Vec<CmScanEntry> {
    cm_j_invariants()
        .iter()
        .filter(|j| **j != int(1728))
        .map(|j| CmScanEntry {
            j: j.clone(),
            j_minus_1728_is_square: is_square_rational(&(j - int(1728))),
        })
        .collect()
}
