//! Splitting types of restrictions to invariant curves.
//!
//! In filtration mode the fibre over the curve is first graded by the
//! weights of the wall rays (an adapted decomposition of their filtrations).
//! Each graded piece `F_t / F_>t` inherits filtrations from the two
//! opposite rays, whose adapted decomposition gives jumps `(p, q)` and the
//! degree `p + q + sum_k b_k t_k`. A single decomposition adapted to every
//! ray of both cones does not exist in general (three distinct lines in a
//! plane), so the grading step is what keeps this well defined.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use super::bundle::{BundleData, EquivariantBundle};
use super::decomposition::adapted_decomposition;
use super::filtration::Filtration;
use crate::error::{Error, Result};
use crate::fan::{CurveClass, DivisorClass, Fan, InvariantCurve};
use crate::lattice::{divide_along, pairing, Int, LatticeVec};
use crate::par::{par_map, Execution};
use crate::subspace::{coordinates, QVec, Subspace};

/// Degrees `(a_1, ..., a_r)` of `O(a_1) ⊕ ... ⊕ O(a_r)`, ascending.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SplittingType {
    #[serde(with = "crate::serde_int::vec")]
    degrees: Vec<Int>,
}

impl SplittingType {
    pub fn new(mut degrees: Vec<Int>) -> Self {
        degrees.sort();
        SplittingType { degrees }
    }

    pub fn from_i64(d: &[i64]) -> Self {
        Self::new(d.iter().map(|&x| Int::from(x)).collect())
    }

    pub fn degrees(&self) -> &[Int] {
        &self.degrees
    }

    pub fn rank(&self) -> usize {
        self.degrees.len()
    }

    pub fn deg(&self) -> Int {
        self.degrees.iter().sum()
    }

    /// Smallest degree, which on `P^1` is the minimal slope of a quotient.
    pub fn mu_min(&self) -> Int {
        self.degrees[0].clone()
    }

    pub fn shifted(&self, by: &Int) -> SplittingType {
        SplittingType { degrees: self.degrees.iter().map(|a| a + by).collect() }
    }
}

impl fmt::Display for SplittingType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.degrees.iter().map(|d| d.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// One row of a restriction profile.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveRestriction {
    pub label: String,
    pub class: CurveClass,
    pub splitting: SplittingType,
    /// Splitting stated in the literature for builtin examples, when known.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reference: Option<SplittingType>,
}

impl CurveRestriction {
    pub fn mu_min(&self) -> Int {
        self.splitting.mu_min()
    }

    pub fn deg(&self) -> Int {
        self.splitting.deg()
    }

    pub fn disagrees_with_reference(&self) -> bool {
        self.reference.as_ref().is_some_and(|r| r != &self.splitting)
    }
}

/// Splitting types for every invariant curve, in wall order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RestrictionProfile {
    pub rows: Vec<CurveRestriction>,
}

impl RestrictionProfile {
    pub fn get(&self, label: &str) -> Option<&CurveRestriction> {
        self.rows.iter().find(|r| r.label == label)
    }

    /// `mu_min` on the curve with the given label.
    pub fn mu(&self, label: &str) -> Option<Int> {
        self.get(label).map(CurveRestriction::mu_min)
    }

    pub fn rank(&self) -> usize {
        self.rows.first().map_or(0, |r| r.splitting.rank())
    }

    /// Shifts every degree on `l` by `D . l`.
    pub fn twist(&self, fan: &Fan, d: &DivisorClass) -> Result<RestrictionProfile> {
        let rows = self
            .rows
            .iter()
            .map(|row| {
                let w = fan
                    .wall_by_label(&row.label)
                    .ok_or_else(|| Error::Validation(format!("profile curve {} not on this fan", row.label)))?;
                let by = fan.intersection_number(d, w)?;
                Ok(CurveRestriction {
                    label: row.label.clone(),
                    class: row.class.clone(),
                    splitting: row.splitting.shifted(&by),
                    reference: row.reference.as_ref().map(|r| r.shifted(&by)),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(RestrictionProfile { rows })
    }
}

/// Restriction of the bundle to `V(tau)`.
pub fn restrict_to_curve(bundle: &EquivariantBundle, curve: &InvariantCurve) -> Result<SplittingType> {
    match bundle.data() {
        BundleData::Filtrations(fs) => restrict_filtrations(bundle.fan(), fs, curve),
        BundleData::Characters(_) => restrict_characters(bundle, curve),
    }
}

pub fn restriction_profile(bundle: &EquivariantBundle, exec: Execution) -> Result<RestrictionProfile> {
    let fan = bundle.fan();
    let splittings = par_map(exec, fan.walls(), |w| restrict_to_curve(bundle, w));
    let rows = fan
        .walls()
        .iter()
        .zip(splittings)
        .map(|(w, s)| {
            Ok(CurveRestriction {
                label: w.label.clone(),
                class: fan.curve_class(w),
                splitting: s?,
                reference: bundle.reference().map(|r| r[w.index].clone()),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(RestrictionProfile { rows })
}

fn restrict_filtrations(fan: &Fan, fs: &[Filtration], curve: &InvariantCurve) -> Result<SplittingType> {
    let rank = fs[0].rank();
    let (a, b) = curve.opposite_rays;
    let tau_family: Vec<Filtration> = curve.wall_rays.iter().map(|&r| fs[r].clone()).collect();

    // Lines graded by their weights on the wall rays.
    let graded: Vec<(QVec, Vec<Int>)> = if tau_family.is_empty() {
        (0..rank).map(|i| (crate::subspace::unit(rank, i), Vec::new())).collect()
    } else {
        adapted_decomposition(&tau_family)
            .ok_or_else(|| Error::Incompatible { cone: format!("wall {}", curve.label) })?
            .into_iter()
            .map(|l| (l.vector, l.jumps))
            .collect()
    };

    let groups: BTreeSet<&Vec<Int>> = graded.iter().map(|(_, t)| t).collect();

    let mut degrees = Vec::with_capacity(rank);
    for t in groups {
        let dominates = |j: &[Int]| j.iter().zip(t).all(|(x, y)| x >= y);
        // Lines of weight exactly t first, then the strictly deeper ones.
        let mut basis: Vec<QVec> = graded.iter().filter(|(_, j)| j == t).map(|(v, _)| v.clone()).collect();
        let m = basis.len();
        basis.extend(graded.iter().filter(|(_, j)| j != t && dominates(j)).map(|(v, _)| v.clone()));
        let f_t = Subspace::span(rank, basis.iter().cloned());

        let induce = |f: &Filtration| -> Result<Filtration> {
            let steps = f
                .steps()
                .map(|(p, step)| {
                    let meet = step.intersection(&f_t);
                    let projected = meet.basis().iter().map(|v| {
                        let c = coordinates(&basis, v).expect("vector lies in F_t");
                        c[..m].to_vec()
                    });
                    (p.clone(), Subspace::span(m, projected))
                })
                .collect();
            Filtration::new(m, f.full_through().clone(), steps)
        };
        let fa = induce(&fs[a])?;
        let fb = induce(&fs[b])?;
        let lines = adapted_decomposition(&[fa, fb]).ok_or_else(|| {
            Error::Internal(format!("graded piece {t:?} on wall {} does not split", curve.label))
        })?;
        let shift: Int = curve.wall_relation.iter().zip(t).map(|(bk, tk)| bk * tk).sum();
        for l in lines {
            degrees.push(&l.jumps[0] + &l.jumps[1] + &shift);
        }
    }
    debug_assert_eq!(degrees.len(), rank, "{}", fan.family_name());
    Ok(SplittingType::new(degrees))
}

/// Pairs `u(sigma)` with `u(sigma')` inside classes of equal pairings with
/// the wall rays. A class is ambiguous when both sides hold two or more
/// distinct characters; otherwise every pairing gives the same degrees.
fn restrict_characters(bundle: &EquivariantBundle, curve: &InvariantCurve) -> Result<SplittingType> {
    let fan = bundle.fan();
    let (s, s2) = curve.adjacent_cones;
    let key = |u: &LatticeVec| -> Result<Vec<Int>> {
        curve.wall_rays.iter().map(|&r| pairing(u, &fan.rays()[r])).collect()
    };
    let mut classes: BTreeMap<Vec<Int>, (Vec<&LatticeVec>, Vec<&LatticeVec>)> = BTreeMap::new();
    for u in bundle.associated_characters(s) {
        classes.entry(key(u)?).or_default().0.push(u);
    }
    for u in bundle.associated_characters(s2) {
        classes.entry(key(u)?).or_default().1.push(u);
    }

    let mut degrees = Vec::with_capacity(bundle.rank());
    for (k, (xs, ys)) in classes {
        if xs.len() != ys.len() {
            return Err(Error::InconsistentData {
                wall: curve.label.clone(),
                detail: format!(
                    "residue class {k:?} has {} characters on {} but {} on {}",
                    xs.len(),
                    fan.cone_label(s),
                    ys.len(),
                    fan.cone_label(s2)
                ),
            });
        }
        let distinct = |v: &[&LatticeVec]| v.iter().any(|u| *u != v[0]);
        if distinct(&xs) && distinct(&ys) {
            let names: Vec<String> = xs.iter().chain(&ys).map(|u| u.to_string()).collect();
            return Err(Error::AmbiguousPairing { wall: curve.label.clone(), characters: names.join(", ") });
        }
        for (x, y) in xs.iter().zip(&ys) {
            let diff = x.try_sub(y)?;
            degrees.push(divide_along(&diff, &curve.m_tau)?);
        }
    }
    Ok(SplittingType::new(degrees))
}
