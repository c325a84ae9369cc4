use std::collections::BTreeMap;
use std::sync::{Arc, OnceLock};

use num_traits::Zero;

use super::decomposition::{adapted_decomposition, DecompLine, MAX_RANK};
use super::filtration::Filtration;
use super::restriction::{RestrictionProfile, SplittingType};
use crate::error::{Error, Result};
use crate::fan::{DivisorClass, Fan};
use crate::lattice::{pairing, Int, LatticeVec};

#[derive(Clone, Debug)]
pub enum BundleData {
    /// One filtration per ray, in ray order.
    Filtrations(Vec<Filtration>),
    /// One character multiset per maximal cone, in cone order.
    Characters(Vec<Vec<LatticeVec>>),
}

/// An equivariant vector bundle, validated at construction.
#[derive(Clone, Debug)]
pub struct EquivariantBundle {
    fan: Arc<Fan>,
    rank: usize,
    data: BundleData,
    characters: Vec<Vec<LatticeVec>>,
    name: String,
    uniform_family: Option<String>,
    reference: Option<Vec<SplittingType>>,
    profile: OnceLock<RestrictionProfile>,
}

impl EquivariantBundle {
    /// Validates Klyachko compatibility on every maximal cone and caches
    /// the associated characters.
    pub fn from_filtrations(fan: Arc<Fan>, filtrations: Vec<Filtration>) -> Result<Self> {
        if filtrations.len() != fan.rays().len() {
            return Err(Error::Validation(format!(
                "expected one filtration per ray ({}), got {}",
                fan.rays().len(),
                filtrations.len()
            )));
        }
        let rank = filtrations[0].rank();
        if let Some(f) = filtrations.iter().find(|f| f.rank() != rank) {
            return Err(Error::Dimension { expected: rank, found: f.rank() });
        }
        if rank > MAX_RANK {
            return Err(Error::Validation(format!("rank {rank} exceeds the supported bound {MAX_RANK}")));
        }
        let characters = (0..fan.cones().len())
            .map(|c| {
                let d = cone_decomposition(&fan, &filtrations, c)?;
                Ok(characters_from_lines(&fan, c, &d))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::assemble(fan, rank, BundleData::Filtrations(filtrations), characters, "filtrations"))
    }

    /// Character input. Wall consistency is checked here; ambiguous walls
    /// are only reported when a restriction needs them.
    pub fn from_characters(fan: Arc<Fan>, per_cone: Vec<Vec<LatticeVec>>) -> Result<Self> {
        if per_cone.len() != fan.cones().len() {
            return Err(Error::Validation(format!(
                "expected characters for {} maximal cones, got {}",
                fan.cones().len(),
                per_cone.len()
            )));
        }
        let rank = per_cone[0].len();
        if rank == 0 {
            return Err(Error::Validation("character multisets must be nonempty".into()));
        }
        for (c, us) in per_cone.iter().enumerate() {
            if us.len() != rank {
                return Err(Error::Validation(format!(
                    "cone {} has {} characters, expected {rank}",
                    fan.cone_label(c),
                    us.len()
                )));
            }
            if let Some(u) = us.iter().find(|u| u.dim() != fan.dim()) {
                return Err(Error::Dimension { expected: fan.dim(), found: u.dim() });
            }
        }
        let characters: Vec<Vec<LatticeVec>> = per_cone
            .into_iter()
            .map(|mut us| {
                us.sort();
                us
            })
            .collect();
        for w in fan.walls() {
            let key = |c: usize| -> Result<Vec<Vec<Int>>> {
                let mut ks = characters[c]
                    .iter()
                    .map(|u| w.wall_rays.iter().map(|&r| pairing(u, &fan.rays()[r])).collect())
                    .collect::<Result<Vec<Vec<Int>>>>()?;
                ks.sort();
                Ok(ks)
            };
            if key(w.adjacent_cones.0)? != key(w.adjacent_cones.1)? {
                return Err(Error::InconsistentData {
                    wall: w.label.clone(),
                    detail: format!(
                        "characters of {} and {} disagree on the wall rays",
                        fan.cone_label(w.adjacent_cones.0),
                        fan.cone_label(w.adjacent_cones.1)
                    ),
                });
            }
        }
        let data = BundleData::Characters(characters.clone());
        Ok(Self::assemble(fan, rank, data, characters, "characters"))
    }

    fn assemble(
        fan: Arc<Fan>,
        rank: usize,
        data: BundleData,
        characters: Vec<Vec<LatticeVec>>,
        name: &str,
    ) -> Self {
        EquivariantBundle {
            fan,
            rank,
            data,
            characters,
            name: name.to_string(),
            uniform_family: None,
            reference: None,
            profile: OnceLock::new(),
        }
    }

    pub(crate) fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub(crate) fn with_uniform_family(mut self, family: impl Into<String>) -> Self {
        self.uniform_family = Some(family.into());
        self
    }

    pub(crate) fn with_reference(mut self, reference: Vec<SplittingType>) -> Self {
        self.reference = Some(reference);
        self
    }

    pub fn fan(&self) -> &Arc<Fan> {
        &self.fan
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn data(&self) -> &BundleData {
        &self.data
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn filtrations(&self) -> Option<&[Filtration]> {
        match &self.data {
            BundleData::Filtrations(f) => Some(f),
            BundleData::Characters(_) => None,
        }
    }

    /// Set for builtin families known to be uniform on projective space.
    pub fn uniform_family(&self) -> Option<&str> {
        self.uniform_family.as_deref()
    }

    /// Splitting types stated for this bundle in the literature, per wall.
    pub fn reference(&self) -> Option<&[SplittingType]> {
        self.reference.as_deref()
    }

    /// Associated characters `u(sigma)`, sorted.
    pub fn associated_characters(&self, cone: usize) -> &[LatticeVec] {
        &self.characters[cone]
    }

    /// Cached restriction profile.
    pub fn profile(&self) -> Result<&RestrictionProfile> {
        if let Some(p) = self.profile.get() {
            return Ok(p);
        }
        let p = super::restriction::restriction_profile(self, crate::par::Execution::default())?;
        Ok(self.profile.get_or_init(|| p))
    }

    /// `E ⊗ O(D)`: filtrations shift by the ray coefficients of `D` and
    /// characters by the local character of `D` on each cone.
    pub fn twisted(&self, d: &DivisorClass) -> Result<Self> {
        let on_rays = self.fan.divisor_on_rays(d)?;
        if on_rays.iter().all(Zero::is_zero) {
            return Ok(self.clone());
        }
        let characters: Vec<Vec<LatticeVec>> = self
            .fan
            .cones()
            .iter()
            .zip(&self.characters)
            .map(|(cone, us)| {
                let mut m = LatticeVec::zero(self.fan.dim());
                for (k, &r) in cone.rays.iter().enumerate() {
                    m = &m + &cone.dual[k].scale(&on_rays[r]);
                }
                let mut shifted: Vec<LatticeVec> = us.iter().map(|u| u + &m).collect();
                shifted.sort();
                shifted
            })
            .collect();
        let data = match &self.data {
            BundleData::Filtrations(fs) => {
                BundleData::Filtrations(fs.iter().zip(&on_rays).map(|(f, a)| f.shift(a)).collect())
            }
            BundleData::Characters(_) => BundleData::Characters(characters.clone()),
        };
        let reference = match &self.reference {
            Some(rows) => Some(
                self.fan
                    .walls()
                    .iter()
                    .zip(rows)
                    .map(|(w, s)| Ok(s.shifted(&self.fan.intersection_number(d, w)?)))
                    .collect::<Result<Vec<_>>>()?,
            ),
            None => None,
        };
        Ok(EquivariantBundle {
            fan: self.fan.clone(),
            rank: self.rank,
            data,
            characters,
            name: format!("{} ⊗ O({})", self.name, d),
            uniform_family: self.uniform_family.clone(),
            reference,
            profile: OnceLock::new(),
        })
    }
}

/// Adapted decomposition of the ray filtrations of one maximal cone.
pub(crate) fn cone_decomposition(fan: &Fan, filtrations: &[Filtration], cone: usize) -> Result<Vec<DecompLine>> {
    let family: Vec<Filtration> = fan.cones()[cone].rays.iter().map(|&r| filtrations[r].clone()).collect();
    adapted_decomposition(&family).ok_or_else(|| Error::Incompatible { cone: fan.cone_label(cone) })
}

/// `u` with `<u, v_rho> = jump_rho` for the rays of the cone.
pub(crate) fn characters_from_lines(fan: &Fan, cone: usize, lines: &[DecompLine]) -> Vec<LatticeVec> {
    let c = &fan.cones()[cone];
    let mut us: Vec<LatticeVec> = lines
        .iter()
        .map(|l| {
            let mut u = LatticeVec::zero(fan.dim());
            for (k, j) in l.jumps.iter().enumerate() {
                u = &u + &c.dual[k].scale(j);
            }
            u
        })
        .collect();
    us.sort();
    us
}

/// Sorted multiset of characters as a map, for comparisons in tests.
pub fn character_counts(us: &[LatticeVec]) -> BTreeMap<LatticeVec, usize> {
    let mut m = BTreeMap::new();
    for u in us {
        *m.entry(u.clone()).or_insert(0) += 1;
    }
    m
}
