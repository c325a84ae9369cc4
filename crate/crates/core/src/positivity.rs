//! Nefness and ampleness from split restrictions, and the Mori cone
//! generators of the projectivized bundle.

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fan::{CurveClass, DivisorClass};
use crate::klyachko::{RestrictionProfile, SplittingType};
use crate::lattice::Int;

pub fn mu_min(s: &SplittingType) -> Int {
    s.mu_min()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub curve: String,
    #[serde(with = "crate::serde_int")]
    pub degree: Int,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub holds: bool,
    /// The curve carrying the smallest degree, when the property fails.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

fn lowest(profile: &RestrictionProfile) -> Option<Witness> {
    profile
        .rows
        .iter()
        .min_by(|a, b| a.mu_min().cmp(&b.mu_min()))
        .map(|r| Witness { curve: r.label.clone(), degree: r.mu_min() })
}

fn verdict(profile: &RestrictionProfile, threshold: i64) -> Verdict {
    match lowest(profile) {
        Some(w) if w.degree < Int::from(threshold) => Verdict { holds: false, witness: Some(w) },
        _ => Verdict { holds: true, witness: None },
    }
}

/// Nef iff every degree on every invariant curve is nonnegative.
pub fn is_nef(profile: &RestrictionProfile) -> Verdict {
    verdict(profile, 0)
}

/// Ample iff every degree on every invariant curve is positive.
pub fn is_ample(profile: &RestrictionProfile) -> Verdict {
    verdict(profile, 1)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoriGenerator {
    pub name: String,
    /// Invariant curve `l_j` under the section, absent for the fibre.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub curve: Option<String>,
    /// `pi_* C`; zero for the fibre.
    pub pushforward: CurveClass,
    /// `xi . C`.
    #[serde(with = "crate::serde_int")]
    pub xi: Int,
    /// `deg - mu_min` on the curve, absent for the fibre.
    #[serde(default, skip_serializing_if = "Option::is_none", with = "crate::serde_int::option")]
    pub m: Option<Int>,
}

/// The fibre class `C_0` and one section class `C_j` per invariant curve.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoriGenerators {
    pub fiber: MoriGenerator,
    pub sections: Vec<MoriGenerator>,
}

impl MoriGenerators {
    pub fn iter(&self) -> impl Iterator<Item = &MoriGenerator> {
        std::iter::once(&self.fiber).chain(&self.sections)
    }

    pub fn section(&self, curve: &str) -> Option<&MoriGenerator> {
        self.sections.iter().find(|g| g.curve.as_deref() == Some(curve))
    }
}

pub fn mori_generators(profile: &RestrictionProfile) -> MoriGenerators {
    let basis = profile.rows.first().map_or(0, |r| r.class.gamma_coords.len());
    let fiber = MoriGenerator {
        name: "C_0".into(),
        curve: None,
        pushforward: CurveClass { gamma_coords: vec![Int::zero(); basis] },
        xi: Int::from(1),
        m: None,
    };
    let sections = profile
        .rows
        .iter()
        .map(|r| MoriGenerator {
            name: format!("C_{}", r.label),
            curve: Some(r.label.clone()),
            pushforward: r.class.clone(),
            xi: r.mu_min(),
            m: Some(r.deg() - r.mu_min()),
        })
        .collect();
    MoriGenerators { fiber, sections }
}

/// Whether `a xi + pi^* D` is nonnegative on every generator. `D . pi_* C`
/// is read off the pushforward class, whose coordinates are dual to the
/// Picard basis.
pub fn pe_class_nef(a: &Int, d: &DivisorClass, gens: &MoriGenerators) -> Result<bool> {
    if a.is_negative() {
        return Err(Error::Validation(format!("multiple of xi must be nonnegative, got {a}")));
    }
    for g in gens.iter() {
        let coords = &g.pushforward.gamma_coords;
        if coords.len() != d.coefficients.len() {
            return Err(Error::Dimension { expected: coords.len(), found: d.coefficients.len() });
        }
        let d_dot: Int = coords.iter().zip(&d.coefficients).map(|(x, y)| x * y).sum();
        if a * &g.xi + d_dot < Int::zero() {
            return Ok(false);
        }
    }
    Ok(true)
}
