//! Seshadri constants through the closed forms on projective space, the
//! Hirzebruch surface `X_2` and the Bott tower `X_3`.
//!
//! Every branch is gated by a [`HypothesisReport`]; equalities are only
//! claimed when the governing theorem guarantees them.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fan::{Fan, FanFamily};
use crate::klyachko::RestrictionProfile;
use crate::lattice::{fmt_rational, parse_rational, rat_int, Int, Rational};
use crate::par::{par_map, Execution};

/// Open question carried by uncertified projective-space results.
pub const PROJECTIVE_OPEN_QUESTION: &str =
    "open question: does the lower bound min_i mu_min(E|l_i) always equal the Seshadri constant?";

/// Homogeneous coordinates `[z_1:w_1:...:z_n:w_n]` on a Bott tower.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TowerPoint {
    coords: Vec<(Rational, Rational)>,
}

impl TowerPoint {
    pub fn new(coords: Vec<(Rational, Rational)>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::InvalidPoint("a tower point needs at least one (z, w) pair".into()));
        }
        if let Some(i) = coords.iter().position(|(z, w)| z.is_zero() && w.is_zero()) {
            return Err(Error::InvalidPoint(format!("(z_{0}, w_{0}) = (0, 0)", i + 1)));
        }
        Ok(TowerPoint { coords })
    }

    pub fn from_i64(flat: &[i64]) -> Result<Self> {
        let qs: Vec<Rational> = flat.iter().map(|&x| rat_int(&Int::from(x))).collect();
        Self::from_flat(qs)
    }

    fn from_flat(qs: Vec<Rational>) -> Result<Self> {
        if !qs.len().is_multiple_of(2) {
            return Err(Error::InvalidPoint(format!("expected pairs z:w, got {} coordinates", qs.len())));
        }
        Self::new(qs.chunks(2).map(|c| (c[0].clone(), c[1].clone())).collect())
    }

    pub fn height(&self) -> usize {
        self.coords.len()
    }

    pub fn z(&self, i: usize) -> &Rational {
        &self.coords[i - 1].0
    }
}

impl FromStr for TowerPoint {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::from_flat(parse_coords(s)?)
    }
}

impl fmt::Display for TowerPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> =
            self.coords.iter().flat_map(|(z, w)| [fmt_rational(z), fmt_rational(w)]).collect();
        write!(f, "[{}]", parts.join(":"))
    }
}

/// A point `[x_0:...:x_n]` of projective space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectivePoint {
    coords: Vec<Rational>,
}

impl ProjectivePoint {
    pub fn new(coords: Vec<Rational>) -> Result<Self> {
        if coords.len() < 2 || coords.iter().all(Zero::is_zero) {
            return Err(Error::InvalidPoint("projective coordinates must be at least two and not all zero".into()));
        }
        Ok(ProjectivePoint { coords })
    }

    pub fn dim(&self) -> usize {
        self.coords.len() - 1
    }
}

impl FromStr for ProjectivePoint {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::new(parse_coords(s)?)
    }
}

impl fmt::Display for ProjectivePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(fmt_rational).collect();
        write!(f, "[{}]", parts.join(":"))
    }
}

fn parse_coords(s: &str) -> Result<Vec<Rational>> {
    let body = s.trim().trim_start_matches('[').trim_end_matches(']');
    body.split(':')
        .map(|c| parse_rational(c).map_err(|e| Error::InvalidPoint(format!("{s:?}: {e}"))))
        .collect()
}

/// A point on whichever variety the fan describes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Point {
    Projective(ProjectivePoint),
    Tower(TowerPoint),
}

impl Point {
    /// Parses `a:b:...` according to the fan family and checks its length.
    pub fn parse_for(fan: &Fan, s: &str) -> Result<Point> {
        match fan.family() {
            FanFamily::ProjectiveSpace { n } => {
                let p: ProjectivePoint = s.parse()?;
                if p.dim() != *n {
                    return Err(Error::InvalidPoint(format!("{s} has {} coordinates, P^{n} needs {}", p.dim() + 1, n + 1)));
                }
                Ok(Point::Projective(p))
            }
            FanFamily::BottTower { bott } => {
                let p: TowerPoint = s.parse()?;
                if p.height() != bott.height() {
                    return Err(Error::InvalidPoint(format!(
                        "{s} has {} pairs, X_{} needs {}",
                        p.height(),
                        bott.height(),
                        bott.height()
                    )));
                }
                Ok(Point::Tower(p))
            }
        }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Projective(p) => p.fmt(f),
            Point::Tower(p) => p.fmt(f),
        }
    }
}

/// Smallest `i` with `z_j = 0` for every `j > i`; the point lies on
/// `Gamma_n^(i)` exactly for `i >= level`.
pub fn gamma_level(fan: &Fan, x: &TowerPoint) -> Result<usize> {
    let n = fan
        .bott_numbers()
        .ok_or_else(|| Error::Precondition("Gamma levels are defined on Bott towers".into()))?
        .height();
    if x.height() != n {
        return Err(Error::InvalidPoint(format!("point {x} has {} pairs, expected {n}", x.height())));
    }
    Ok((1..=n).rev().find(|&i| !x.z(i).is_zero()).unwrap_or(1).max(1))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Theorem {
    /// Projective space, uniform over all lines.
    Projective,
    /// Hirzebruch surface `X_2`.
    Hirzebruch,
    /// Bott tower `X_3`.
    BottTower3,
}

impl Theorem {
    pub fn for_fan(fan: &Fan) -> Option<Theorem> {
        match fan.family() {
            FanFamily::ProjectiveSpace { n } if *n >= 2 => Some(Theorem::Projective),
            FanFamily::BottTower { bott } if bott.height() == 2 => Some(Theorem::Hirzebruch),
            FanFamily::BottTower { bott } if bott.height() == 3 => Some(Theorem::BottTower3),
            _ => None,
        }
    }

    fn applies_to(self, fan: &Fan) -> bool {
        Theorem::for_fan(fan) == Some(self)
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Theorem::Projective => "projective-space theorem",
            Theorem::Hirzebruch => "Hirzebruch-surface theorem",
            Theorem::BottTower3 => "X_3 theorem",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Condition {
    pub name: String,
    pub requirement: String,
    pub actual: String,
    pub passed: bool,
    /// Gating conditions must pass for the theorem to apply; the others
    /// only decide between an interval and an exact value.
    pub gating: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypothesisReport {
    pub theorem: Theorem,
    pub conditions: Vec<Condition>,
}

impl HypothesisReport {
    pub fn all_gating_pass(&self) -> bool {
        self.conditions.iter().filter(|c| c.gating).all(|c| c.passed)
    }

    pub fn condition(&self, name: &str) -> Option<&Condition> {
        self.conditions.iter().find(|c| c.name == name)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Condition> {
        self.conditions.iter().filter(|c| c.gating && !c.passed)
    }
}

/// Why the "all lines" hypothesis on projective space may be assumed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    /// A builtin family known to be uniform.
    Builtin(String),
    /// Asserted by the user.
    Asserted,
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Certificate::Builtin(name) => write!(f, "builtin uniform family ({name})"),
            Certificate::Asserted => f.write_str("asserted by manifest (uniform_A1)"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SeshadriValue {
    Exact(#[serde(with = "crate::serde_int::rational")] Rational),
    /// `upper` is absent when no upper bound is established.
    Interval {
        #[serde(with = "crate::serde_int::rational")]
        lower: Rational,
        #[serde(with = "crate::serde_int::option_rational")]
        upper: Option<Rational>,
    },
}

impl SeshadriValue {
    /// Collapses `[a, a]` to `Exact(a)`.
    fn between(lower: Rational, upper: Rational) -> SeshadriValue {
        debug_assert!(lower <= upper);
        if lower == upper {
            SeshadriValue::Exact(lower)
        } else {
            SeshadriValue::Interval { lower, upper: Some(upper) }
        }
    }

    pub fn exact(&self) -> Option<&Rational> {
        match self {
            SeshadriValue::Exact(v) => Some(v),
            SeshadriValue::Interval { .. } => None,
        }
    }

    pub fn lower(&self) -> &Rational {
        match self {
            SeshadriValue::Exact(v) => v,
            SeshadriValue::Interval { lower, .. } => lower,
        }
    }

    pub fn upper(&self) -> Option<&Rational> {
        match self {
            SeshadriValue::Exact(v) => Some(v),
            SeshadriValue::Interval { upper, .. } => upper.as_ref(),
        }
    }

    fn min_with(&self, x: &Rational) -> SeshadriValue {
        match self {
            SeshadriValue::Exact(v) => SeshadriValue::Exact(v.min(x).clone()),
            SeshadriValue::Interval { lower, upper } => SeshadriValue::Interval {
                lower: lower.min(x).clone(),
                upper: Some(upper.as_ref().map_or(x.clone(), |u| u.min(x).clone())),
            },
        }
    }
}

impl fmt::Display for SeshadriValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeshadriValue::Exact(v) => write!(f, "{}", fmt_rational(v)),
            SeshadriValue::Interval { lower, upper: Some(u) } => {
                write!(f, "[{}, {}]", fmt_rational(lower), fmt_rational(u))
            }
            SeshadriValue::Interval { lower, upper: None } => write!(f, "[{}, open)", fmt_rational(lower)),
        }
    }
}

/// The recursive form on `X_3`: the Hirzebruch slice through `x` and the
/// resulting value, checked against the direct minimum over levels.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SliceCheck {
    pub slice: SeshadriValue,
    pub recursive: SeshadriValue,
    /// `min { gamma_mu(i) : i >= level }`.
    #[serde(with = "crate::serde_int")]
    pub corollary: Int,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeshadriResult {
    pub theorem: Theorem,
    pub point: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub level: Option<usize>,
    pub value: SeshadriValue,
    pub report: HypothesisReport,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub per_gamma_mu: BTreeMap<usize, crate::serde_int::IntRepr>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub slice_check: Option<SliceCheck>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

fn mu(profile: &RestrictionProfile, label: &str) -> Result<Int> {
    profile.mu(label).ok_or_else(|| Error::Internal(format!("profile has no curve {label}")))
}

fn x3_mu(profile: &RestrictionProfile, j: usize) -> Result<Int> {
    mu(profile, &format!("l{j}"))
}

fn show(names: &[&str], vals: &[&Int]) -> String {
    names.iter().zip(vals).map(|(n, v)| format!("{n} = {v}")).collect::<Vec<_>>().join(", ")
}

fn nef_condition(profile: &RestrictionProfile) -> Condition {
    let v = crate::positivity::is_nef(profile);
    Condition {
        name: "nef".into(),
        requirement: "every degree on every invariant curve >= 0".into(),
        actual: match &v.witness {
            Some(w) => format!("{} has degree {}", w.curve, w.degree),
            None => "all degrees >= 0".into(),
        },
        passed: v.holds,
        gating: true,
    }
}

fn equal_condition(name: &str, labels: &[&str], vals: &[Int]) -> Condition {
    let refs: Vec<&Int> = vals.iter().collect();
    Condition {
        name: name.into(),
        requirement: labels.join(" = "),
        actual: show(labels, &refs),
        passed: vals.windows(2).all(|w| w[0] == w[1]),
        gating: true,
    }
}

/// `lhs_j >= factor * rhs` for every listed `lhs_j`.
fn ge_condition(name: &str, lhs: &[(&str, Int)], factor: (&str, Int), rhs: (&str, Int)) -> Condition {
    let bound = &factor.1 * &rhs.1;
    let lhs_names: Vec<&str> = lhs.iter().map(|(n, _)| *n).collect();
    let scaled = if factor.0.is_empty() { rhs.0.to_string() } else { format!("{}*{}", factor.0, rhs.0) };
    Condition {
        name: name.into(),
        requirement: format!("{} >= {scaled}", lhs_names.join(", ")),
        actual: format!(
            "{}; {scaled} = {bound}",
            lhs.iter().map(|(n, v)| format!("{n} = {v}")).collect::<Vec<_>>().join(", ")
        ),
        passed: lhs.iter().all(|(_, v)| v >= &bound),
        gating: true,
    }
}

/// Evaluates every condition of the theorem; never fails.
pub fn check_hypotheses(
    fan: &Fan,
    profile: &RestrictionProfile,
    theorem: Theorem,
    certificate: Option<&Certificate>,
) -> Result<HypothesisReport> {
    if !theorem.applies_to(fan) {
        return Err(Error::Precondition(format!("{theorem} does not apply to {}", fan.family_name())));
    }
    let mut conditions = vec![nef_condition(profile)];
    match theorem {
        Theorem::Projective => {
            let mus: Vec<Int> = profile.rows.iter().map(|r| r.mu_min()).collect();
            let (lo, hi) = (mus.iter().min().unwrap(), mus.iter().max().unwrap());
            conditions.push(Condition {
                name: "uniform_invariant_lines".into(),
                requirement: "mu_min equal on every invariant line".into(),
                actual: format!("mu_min ranges over [{lo}, {hi}]"),
                passed: lo == hi,
                gating: true,
            });
            conditions.push(Condition {
                name: "uniformity_certificate".into(),
                requirement: "mu_min(E|l) <= min_i mu_min(E|l_i) for all lines l, certified".into(),
                actual: certificate.map_or("no certificate".into(), |c| c.to_string()),
                passed: certificate.is_some(),
                gating: true,
            });
        }
        Theorem::Hirzebruch => {
            let (m1, m1p, m2) = (mu(profile, "D_1")?, mu(profile, "D'_1")?, mu(profile, "D_2")?);
            conditions.push(equal_condition("mu1_eq_mu1p", &["mu(D_1)", "mu(D'_1)"], &[m1.clone(), m1p]));
            conditions.push(Condition {
                name: "mu2_ge_mu1".into(),
                requirement: "mu(D_2) >= mu(D_1) (exactness)".into(),
                actual: show(&["mu(D_2)", "mu(D_1)"], &[&m2, &m1]),
                passed: m2 >= m1,
                gating: false,
            });
        }
        Theorem::BottTower3 => {
            let bott = fan.bott_numbers().expect("X_3 is a tower");
            let (c12, c13, c23) = (bott.get(1, 2).clone(), bott.get(1, 3).clone(), bott.get(2, 3).clone());
            let m: Vec<Int> = (0..=12).map(|j| if j == 0 { Ok(Int::zero()) } else { x3_mu(profile, j) }).collect::<Result<_>>()?;
            let p = |j: usize| (["", "mu1", "mu2", "mu3", "mu4", "mu5", "mu6", "mu7", "mu8", "mu9", "mu10", "mu11", "mu12"][j], m[j].clone());
            let one = ("", Int::from(1));
            conditions.push(equal_condition(
                "mu1_mu3_mu6_mu10_equal",
                &["mu1", "mu3", "mu6", "mu10"],
                &[m[1].clone(), m[3].clone(), m[6].clone(), m[10].clone()],
            ));
            conditions.push(equal_condition("mu2_eq_mu8", &["mu2", "mu8"], &[m[2].clone(), m[8].clone()]));
            conditions.push(ge_condition("mu7_mu9_mu12_ge_mu5", &[p(7), p(9), p(12)], one.clone(), p(5)));
            conditions.push(ge_condition("mu4_mu11_ge_c23_mu8", &[p(4), p(11)], ("c23", c23.clone()), p(8)));
            conditions.push(ge_condition("mu9_mu12_ge_c12_mu8", &[p(9), p(12)], ("c12", c12.clone()), p(8)));
            conditions.push(ge_condition("mu7_ge_c13_mu10", &[p(7)], ("c13", c13.clone()), p(10)));
            conditions.push(ge_condition(
                "mu12_ge_c13_plus_c12c23_mu10",
                &[p(12)],
                ("(c13+c12*c23)", &c13 + &c12 * &c23),
                p(10),
            ));
            conditions.push(Condition {
                name: "slice_exactness".into(),
                requirement: "mu11 >= mu10 (Hirzebruch slice is exact)".into(),
                actual: show(&["mu11", "mu10"], &[&m[11], &m[10]]),
                passed: m[11] >= m[10],
                gating: false,
            });
        }
    }
    Ok(HypothesisReport { theorem, conditions })
}

/// `mu_min` of the restriction to `Gamma_n^(level)`, valid when the
/// governing theorem's hypotheses hold.
pub fn gamma_mu(profile: &RestrictionProfile, fan: &Fan, level: usize) -> Result<Int> {
    let theorem = Theorem::for_fan(fan)
        .filter(|t| *t != Theorem::Projective)
        .ok_or_else(|| Error::Precondition(format!("Gamma curves are only tabulated on X_2 and X_3, not {}", fan.family_name())))?;
    let report = check_hypotheses(fan, profile, theorem, None)?;
    if !report.all_gating_pass() {
        return Err(Error::Precondition(format!("hypotheses of the {theorem} are not satisfied")));
    }
    gamma_mu_unchecked(profile, theorem, level)
}

fn gamma_mu_unchecked(profile: &RestrictionProfile, theorem: Theorem, level: usize) -> Result<Int> {
    let label = match (theorem, level) {
        (Theorem::Hirzebruch, 1) => "D'_2",
        (Theorem::Hirzebruch, 2) => "D_1",
        (Theorem::BottTower3, 1) => "l5",
        (Theorem::BottTower3, 2) => "l8",
        (Theorem::BottTower3, 3) => "l10",
        _ => return Err(Error::Precondition(format!("no Gamma level {level} for the {theorem}"))),
    };
    mu(profile, label)
}

fn require_nef(report: &HypothesisReport) -> Result<()> {
    match report.condition("nef") {
        Some(c) if !c.passed => Err(Error::Precondition(format!("bundle is not nef: {}", c.actual))),
        _ => Ok(()),
    }
}

pub fn seshadri_projective(
    fan: &Fan,
    profile: &RestrictionProfile,
    certificate: Option<&Certificate>,
    x: Option<&ProjectivePoint>,
) -> Result<SeshadriResult> {
    let report = check_hypotheses(fan, profile, Theorem::Projective, certificate)?;
    require_nef(&report)?;
    if let Some(p) = x {
        if p.dim() != fan.dim() {
            return Err(Error::InvalidPoint(format!("{p} is not a point of P^{}", fan.dim())));
        }
    }
    let lower = rat_int(&profile.rows.iter().map(|r| r.mu_min()).min().expect("nonempty profile"));
    let (value, notes) = if report.all_gating_pass() {
        (SeshadriValue::Exact(lower), Vec::new())
    } else {
        (SeshadriValue::Interval { lower, upper: None }, vec![PROJECTIVE_OPEN_QUESTION.to_string()])
    };
    Ok(SeshadriResult {
        theorem: Theorem::Projective,
        point: x.map_or("any".into(), |p| p.to_string()),
        level: None,
        value,
        report,
        per_gamma_mu: BTreeMap::new(),
        slice_check: None,
        notes,
    })
}

/// Bounds on `X_2` from `mu_1 = mu(D_1)`, `mu'_1`, `mu_2 = mu(D_2)` and
/// `mu'_2`; `in_gamma` says whether the point lies on `Gamma_2 = D'_2`.
fn hirzebruch_value(m1: &Int, m2: &Int, m2p: &Int, in_gamma: bool) -> SeshadriValue {
    let (m1, m2, m2p) = (rat_int(m1), rat_int(m2), rat_int(m2p));
    if in_gamma {
        let upper = m1.clone().min(m2p.clone());
        SeshadriValue::between(upper.clone().min(m2), upper)
    } else {
        SeshadriValue::between(m1.clone().min(m2), m1)
    }
}

pub fn seshadri_hirzebruch(fan: &Fan, profile: &RestrictionProfile, x: &TowerPoint) -> Result<SeshadriResult> {
    let report = check_hypotheses(fan, profile, Theorem::Hirzebruch, None)?;
    require_nef(&report)?;
    if !report.all_gating_pass() {
        return Err(Error::Hypothesis(Box::new(report)));
    }
    let level = gamma_level(fan, x)?;
    let (m1, m2, m2p) = (mu(profile, "D_1")?, mu(profile, "D_2")?, mu(profile, "D'_2")?);
    let value = hirzebruch_value(&m1, &m2, &m2p, level == 1);
    let per_gamma_mu = (1..=2)
        .map(|i| Ok((i, crate::serde_int::IntRepr(gamma_mu_unchecked(profile, Theorem::Hirzebruch, i)?))))
        .collect::<Result<_>>()?;
    Ok(SeshadriResult {
        theorem: Theorem::Hirzebruch,
        point: x.to_string(),
        level: Some(level),
        value,
        report,
        per_gamma_mu,
        slice_check: None,
        notes: Vec::new(),
    })
}

pub fn seshadri_x3(fan: &Fan, profile: &RestrictionProfile, x: &TowerPoint) -> Result<SeshadriResult> {
    let report = check_hypotheses(fan, profile, Theorem::BottTower3, None)?;
    require_nef(&report)?;
    if !report.all_gating_pass() {
        return Err(Error::Hypothesis(Box::new(report)));
    }
    let level = gamma_level(fan, x)?;
    let per: BTreeMap<usize, Int> =
        (1..=3).map(|i| Ok((i, gamma_mu_unchecked(profile, Theorem::BottTower3, i)?))).collect::<Result<_>>()?;
    let corollary = per.range(level..).map(|(_, v)| v).min().expect("levels 1..=3").clone();

    // The slice through x is a Hirzebruch surface with Bott number c23:
    // D'_1 -> l6, D'_2 -> l8, D_1 -> l10, D_2 -> l11; x is on its
    // negative section exactly when z_3 = 0.
    let slice = hirzebruch_value(&x3_mu(profile, 10)?, &x3_mu(profile, 11)?, &x3_mu(profile, 8)?, level <= 2);
    let recursive = if level == 1 { slice.min_with(&rat_int(&x3_mu(profile, 5)?)) } else { slice.clone() };
    let c = rat_int(&corollary);
    let consistent = match &recursive {
        SeshadriValue::Exact(v) => *v == c,
        SeshadriValue::Interval { lower, upper } => *lower <= c && upper.as_ref().is_none_or(|u| c <= *u),
    };
    if !consistent {
        return Err(Error::Internal(format!(
            "level minimum {corollary} disagrees with the recursive value {recursive} at {x}"
        )));
    }
    let mut notes = Vec::new();
    if recursive.exact().is_none() {
        notes.push(format!(
            "Hirzebruch slice is not exact (mu11 < mu10); the recursive form only gives {recursive}"
        ));
    }
    Ok(SeshadriResult {
        theorem: Theorem::BottTower3,
        point: x.to_string(),
        level: Some(level),
        value: SeshadriValue::Exact(c),
        report,
        per_gamma_mu: per.into_iter().map(|(k, v)| (k, crate::serde_int::IntRepr(v))).collect(),
        slice_check: Some(SliceCheck { slice, recursive, corollary }),
        notes,
    })
}

/// Dispatches on the fan family.
pub fn seshadri(
    fan: &Fan,
    profile: &RestrictionProfile,
    x: &Point,
    certificate: Option<&Certificate>,
) -> Result<SeshadriResult> {
    match (Theorem::for_fan(fan), x) {
        (Some(Theorem::Projective), Point::Projective(p)) => seshadri_projective(fan, profile, certificate, Some(p)),
        (Some(Theorem::Hirzebruch), Point::Tower(p)) => seshadri_hirzebruch(fan, profile, p),
        (Some(Theorem::BottTower3), Point::Tower(p)) => seshadri_x3(fan, profile, p),
        (None, _) => Err(Error::Precondition(format!(
            "no Seshadri formula for {} (supported: P^n with n >= 2, X_2, X_3)",
            fan.family_name()
        ))),
        _ => Err(Error::InvalidPoint(format!("{x} does not match {}", fan.family_name()))),
    }
}

/// Evaluates many points, in parallel when requested.
pub fn seshadri_batch(
    fan: &Fan,
    profile: &RestrictionProfile,
    points: &[Point],
    certificate: Option<&Certificate>,
    exec: Execution,
) -> Vec<Result<SeshadriResult>> {
    par_map(exec, points, |x| seshadri(fan, profile, x, certificate))
}
