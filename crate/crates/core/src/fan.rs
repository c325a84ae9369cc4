//! Fans of projective spaces and Bott towers.
//!
//! Both families go through one generic path: given rays and maximal
//! cones, walls (codimension-one cones) are found by grouping facets, and
//! every wall gets its integer wall relation
//! `v_a + v_b + sum_k b_k v_k = 0` and the primitive generator `m_tau` of
//! `tau^perp` that pairs to 1 with `v_a`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{dual_basis, int, pairing, Int, LatticeVec};

/// Largest tower height accepted by the public constructor.
pub const MAX_TOWER_HEIGHT: usize = 10;

/// Bott numbers `c_{i,j}` for `1 <= i < j <= n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BottNumbers {
    n: usize,
    values: BTreeMap<(usize, usize), Int>,
}

impl BottNumbers {
    pub fn new(n: usize, values: BTreeMap<(usize, usize), Int>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Validation("tower height must be at least 1".into()));
        }
        for i in 1..=n {
            for j in (i + 1)..=n {
                match values.get(&(i, j)) {
                    None => {
                        return Err(Error::Validation(format!("missing Bott number c_{{{i},{j}}}")))
                    }
                    Some(c) if !c.is_positive() => {
                        return Err(Error::Validation(format!(
                            "Bott number c_{{{i},{j}}} = {c} must be a positive integer"
                        )))
                    }
                    _ => {}
                }
            }
        }
        if let Some(&(i, j)) = values.keys().find(|&&(i, j)| !(1 <= i && i < j && j <= n)) {
            return Err(Error::Validation(format!("Bott number index ({i},{j}) out of range")));
        }
        Ok(BottNumbers { n, values })
    }

    /// All Bott numbers equal to `c`.
    pub fn uniform(n: usize, c: i64) -> Result<Self> {
        let mut values = BTreeMap::new();
        for i in 1..=n {
            for j in (i + 1)..=n {
                values.insert((i, j), int(c));
            }
        }
        Self::new(n, values)
    }

    /// `c_{1,2}`, `c_{1,3}`, `c_{2,3}`, ... listed row by row.
    pub fn from_rows(n: usize, cs: &[i64]) -> Result<Self> {
        let mut it = cs.iter();
        let mut values = BTreeMap::new();
        for i in 1..=n {
            for j in (i + 1)..=n {
                let c = it.next().ok_or_else(|| {
                    Error::Validation(format!("expected {} Bott numbers", n * (n - 1) / 2))
                })?;
                values.insert((i, j), int(*c));
            }
        }
        if it.next().is_some() {
            return Err(Error::Validation(format!("expected {} Bott numbers", n * (n - 1) / 2)));
        }
        Self::new(n, values)
    }

    pub fn height(&self) -> usize {
        self.n
    }

    /// `c_{i,j}` with 1-based indices, `i < j`.
    pub fn get(&self, i: usize, j: usize) -> &Int {
        &self.values[&(i, j)]
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(usize, usize), &Int)> {
        self.values.iter()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FanFamily {
    ProjectiveSpace { n: usize },
    BottTower { bott: BottNumbers },
}

#[derive(Clone, Debug)]
pub struct MaxCone {
    /// Sorted ray indices.
    pub rays: Vec<usize>,
    /// `dual[k]` pairs to 1 with `rays[k]` and 0 with the other rays.
    pub dual: Vec<LatticeVec>,
}

impl MaxCone {
    pub fn dual_of(&self, ray: usize) -> Option<&LatticeVec> {
        self.rays.iter().position(|&r| r == ray).map(|k| &self.dual[k])
    }
}

/// A torus-invariant curve `V(tau)` for a wall `tau`.
#[derive(Clone, Debug)]
pub struct InvariantCurve {
    pub index: usize,
    pub label: String,
    pub wall_rays: Vec<usize>,
    /// `(sigma, sigma')`; `m_tau` is positive on `sigma`.
    pub adjacent_cones: (usize, usize),
    /// `(v_a, v_b)` with `v_a` in `sigma` and `v_b` in `sigma'`.
    pub opposite_rays: (usize, usize),
    /// `b_k` aligned with `wall_rays`.
    pub wall_relation: Vec<Int>,
    pub m_tau: LatticeVec,
}

impl InvariantCurve {
    pub fn relation_coefficient(&self, ray: usize) -> Option<&Int> {
        self.wall_rays.iter().position(|&r| r == ray).map(|k| &self.wall_relation[k])
    }
}

/// A class in `Pic(X)`: the basis `D_1, ..., D_n` for a Bott tower and the
/// hyperplane class for projective space.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DivisorClass {
    #[serde(with = "crate::serde_int::vec")]
    pub coefficients: Vec<Int>,
}

impl DivisorClass {
    pub fn new(coefficients: Vec<Int>) -> Self {
        DivisorClass { coefficients }
    }

    pub fn from_i64(c: &[i64]) -> Self {
        DivisorClass { coefficients: c.iter().map(|&x| int(x)).collect() }
    }

    pub fn zero(rank: usize) -> Self {
        DivisorClass { coefficients: vec![Int::zero(); rank] }
    }

    pub fn add(&self, other: &DivisorClass) -> DivisorClass {
        DivisorClass {
            coefficients: self.coefficients.iter().zip(&other.coefficients).map(|(a, b)| a + b).collect(),
        }
    }
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coefficients.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// Numerical class of a curve in the dual basis of `Pic(X)`: coordinates
/// on `Gamma_n, Gamma_n^(2), ..., Gamma_n^(n)` for a Bott tower, or the
/// multiple of a line for projective space.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CurveClass {
    #[serde(with = "crate::serde_int::vec")]
    pub gamma_coords: Vec<Int>,
}

#[derive(Clone, Debug)]
pub struct Fan {
    family: FanFamily,
    rays: Vec<LatticeVec>,
    cones: Vec<MaxCone>,
    walls: Vec<InvariantCurve>,
}

impl Fan {
    /// Fan of the Bott tower with the given Bott numbers.
    pub fn bott_tower(bott: BottNumbers) -> Result<Fan> {
        let n = bott.height();
        if n > MAX_TOWER_HEIGHT {
            return Err(Error::Validation(format!("tower height {n} exceeds {MAX_TOWER_HEIGHT}")));
        }
        let mut rays: Vec<LatticeVec> = (0..n).map(|i| LatticeVec::unit(n, i)).collect();
        for i in 0..n {
            let mut v = LatticeVec::zero(n);
            v.0[i] = -Int::one();
            for j in (i + 1)..n {
                v.0[j] = bott.get(i + 1, j + 1).clone();
            }
            rays.push(v);
        }
        let cones = (0..(1usize << n))
            .map(|mask| {
                let mut c: Vec<usize> =
                    (0..n).map(|i| if mask >> i & 1 == 1 { n + i } else { i }).collect();
                c.sort_unstable();
                c
            })
            .collect();
        Self::build(FanFamily::BottTower { bott }, rays, cones)
    }

    /// Fan of `P^n` with rays `e_0 = -(e_1 + ... + e_n), e_1, ..., e_n`.
    pub fn projective_space(n: usize) -> Result<Fan> {
        if n == 0 {
            return Err(Error::Validation("projective space dimension must be at least 1".into()));
        }
        if n > 12 {
            return Err(Error::Validation(format!("projective space dimension {n} too large")));
        }
        let mut rays = vec![LatticeVec::new(vec![-Int::one(); n])];
        rays.extend((0..n).map(|i| LatticeVec::unit(n, i)));
        let cones = (0..=n).map(|skip| (0..=n).filter(|&r| r != skip).collect()).collect();
        Self::build(FanFamily::ProjectiveSpace { n }, rays, cones)
    }

    fn build(family: FanFamily, rays: Vec<LatticeVec>, cone_rays: Vec<Vec<usize>>) -> Result<Fan> {
        let cones = cone_rays
            .into_iter()
            .map(|rs| {
                let refs: Vec<&LatticeVec> = rs.iter().map(|&r| &rays[r]).collect();
                let dual = dual_basis(&refs)?;
                Ok(MaxCone { rays: rs, dual })
            })
            .collect::<Result<Vec<_>>>()?;

        let mut facets: BTreeMap<Vec<usize>, Vec<(usize, usize)>> = BTreeMap::new();
        for (ci, cone) in cones.iter().enumerate() {
            for (k, &opp) in cone.rays.iter().enumerate() {
                let mut face = cone.rays.clone();
                face.remove(k);
                facets.entry(face).or_default().push((ci, opp));
            }
        }

        let mut walls = Vec::with_capacity(facets.len());
        for (index, (face, adj)) in facets.into_iter().enumerate() {
            let [(s, a), (s2, b)] = adj[..] else {
                return Err(Error::Validation(format!(
                    "fan is not complete: facet {face:?} lies in {} maximal cones",
                    adj.len()
                )));
            };
            let sigma = &cones[s];
            let neg_vb = -&rays[b];
            // -v_b = v_a + sum_k b_k v_k in the basis of sigma.
            let coeff = |ray: usize| pairing(sigma.dual_of(ray).unwrap(), &neg_vb);
            if !coeff(a)?.is_one() {
                return Err(Error::Validation(format!("wall {face:?} is not smooth")));
            }
            let wall_relation = face.iter().map(|&r| coeff(r)).collect::<Result<Vec<_>>>()?;
            let m_tau = sigma.dual_of(a).unwrap().clone();
            walls.push(InvariantCurve {
                index,
                label: String::new(),
                wall_rays: face,
                adjacent_cones: (s, s2),
                opposite_rays: (a, b),
                wall_relation,
                m_tau,
            });
        }

        let mut fan = Fan { family, rays, cones, walls };
        let labels: Vec<String> = (0..fan.walls.len()).map(|i| fan.default_wall_label(i)).collect();
        for (w, l) in fan.walls.iter_mut().zip(labels) {
            w.label = l;
        }
        Ok(fan)
    }

    fn default_wall_label(&self, i: usize) -> String {
        match &self.family {
            FanFamily::BottTower { bott } if bott.height() == 2 => {
                // walls {v_1}, {v_2}, {v_3}, {v_4}
                ["D'_1", "D'_2", "D_1", "D_2"][i].to_string()
            }
            _ => format!("l{}", i + 1),
        }
    }

    pub fn family(&self) -> &FanFamily {
        &self.family
    }

    pub fn bott_numbers(&self) -> Option<&BottNumbers> {
        match &self.family {
            FanFamily::BottTower { bott } => Some(bott),
            _ => None,
        }
    }

    pub fn is_projective_space(&self) -> bool {
        matches!(self.family, FanFamily::ProjectiveSpace { .. })
    }

    /// Lattice rank `n`.
    pub fn dim(&self) -> usize {
        self.rays[0].dim()
    }

    /// Rank of `Pic(X)`.
    pub fn picard_rank(&self) -> usize {
        match &self.family {
            FanFamily::ProjectiveSpace { .. } => 1,
            FanFamily::BottTower { bott } => bott.height(),
        }
    }

    /// A one-dimensional variety: its single "wall" is the zero cone and
    /// the invariant curve is the whole space.
    pub fn is_degenerate(&self) -> bool {
        self.dim() == 1
    }

    pub fn rays(&self) -> &[LatticeVec] {
        &self.rays
    }

    pub fn cones(&self) -> &[MaxCone] {
        &self.cones
    }

    pub fn walls(&self) -> &[InvariantCurve] {
        &self.walls
    }

    pub fn wall_by_label(&self, label: &str) -> Option<&InvariantCurve> {
        self.walls.iter().find(|w| w.label == label)
    }

    pub fn wall_by_rays(&self, rays: &[usize]) -> Option<&InvariantCurve> {
        let mut r = rays.to_vec();
        r.sort_unstable();
        self.walls.iter().find(|w| w.wall_rays == r)
    }

    pub fn family_name(&self) -> String {
        match &self.family {
            FanFamily::ProjectiveSpace { n } => format!("P^{n}"),
            FanFamily::BottTower { bott } => {
                let cs: Vec<String> =
                    bott.iter().map(|((i, j), c)| format!("c{i}{j}={c}")).collect();
                if cs.is_empty() {
                    format!("X_{}", bott.height())
                } else {
                    format!("X_{} ({})", bott.height(), cs.join(", "))
                }
            }
        }
    }

    /// Divisor name of a ray: `D'_i` / `D_i` on a tower, `D_i` on `P^n`.
    pub fn ray_label(&self, ray: usize) -> String {
        match &self.family {
            FanFamily::ProjectiveSpace { .. } => format!("D_{ray}"),
            FanFamily::BottTower { bott } => {
                let n = bott.height();
                if ray < n {
                    format!("D'_{}", ray + 1)
                } else {
                    format!("D_{}", ray - n + 1)
                }
            }
        }
    }

    /// `sigma_{i,j,...}` with the ray numbering used for the family
    /// (`v_1..v_2n` on a tower, `e_0..e_n` on projective space).
    pub fn cone_label(&self, cone: usize) -> String {
        let offset = usize::from(!self.is_projective_space());
        let idx: Vec<String> =
            self.cones[cone].rays.iter().map(|r| (r + offset).to_string()).collect();
        format!("sigma_{{{}}}", idx.join(","))
    }

    pub fn ray_name(&self, ray: usize) -> String {
        if self.is_projective_space() {
            format!("e_{ray}")
        } else {
            format!("v_{}", ray + 1)
        }
    }

    /// `D_rho . V(tau)` from the wall relation.
    pub fn ray_intersection(&self, ray: usize, curve: &InvariantCurve) -> Int {
        if ray == curve.opposite_rays.0 || ray == curve.opposite_rays.1 {
            return Int::one();
        }
        curve.relation_coefficient(ray).cloned().unwrap_or_else(Int::zero)
    }

    /// Coefficients on rays of a divisor class (primed divisors absent).
    pub fn divisor_on_rays(&self, d: &DivisorClass) -> Result<Vec<Int>> {
        self.check_divisor(d)?;
        let mut out = vec![Int::zero(); self.rays.len()];
        match &self.family {
            FanFamily::ProjectiveSpace { .. } => out[0] = d.coefficients[0].clone(),
            FanFamily::BottTower { bott } => {
                let n = bott.height();
                for (i, a) in d.coefficients.iter().enumerate() {
                    out[n + i] = a.clone();
                }
            }
        }
        Ok(out)
    }

    fn check_divisor(&self, d: &DivisorClass) -> Result<()> {
        if d.coefficients.len() != self.picard_rank() {
            return Err(Error::Validation(format!(
                "divisor {d} has {} coefficients; {} expects {}",
                d.coefficients.len(),
                self.family_name(),
                self.picard_rank()
            )));
        }
        Ok(())
    }

    pub fn intersection_number(&self, d: &DivisorClass, curve: &InvariantCurve) -> Result<Int> {
        let on_rays = self.divisor_on_rays(d)?;
        Ok(on_rays.iter().enumerate().map(|(r, a)| a * self.ray_intersection(r, curve)).sum())
    }

    /// Rewrites `sum_rho a_rho D_rho` in the Picard basis using
    /// `D'_1 ~ D_1`, `D'_i ~ D_i - sum_{k<i} c_{k,i} D_k`.
    pub fn reduce_divisor(&self, on_rays: &[Int]) -> Result<DivisorClass> {
        if on_rays.len() != self.rays.len() {
            return Err(Error::Dimension { expected: self.rays.len(), found: on_rays.len() });
        }
        match &self.family {
            FanFamily::ProjectiveSpace { .. } => {
                Ok(DivisorClass::new(vec![on_rays.iter().sum()]))
            }
            FanFamily::BottTower { bott } => {
                let n = bott.height();
                let mut out: Vec<Int> = on_rays[n..].to_vec();
                for i in 0..n {
                    let a = &on_rays[i];
                    out[i] += a;
                    for k in 0..i {
                        out[k] -= a * bott.get(k + 1, i + 1);
                    }
                }
                Ok(DivisorClass::new(out))
            }
        }
    }

    pub fn curve_class(&self, curve: &InvariantCurve) -> CurveClass {
        let basis = self.picard_rank();
        let gamma_coords = (0..basis)
            .map(|i| {
                let mut e = DivisorClass::zero(basis);
                e.coefficients[i] = Int::one();
                self.intersection_number(&e, curve).expect("basis divisor has the right rank")
            })
            .collect();
        CurveClass { gamma_coords }
    }

    /// Invariant curve numerically equal to `Gamma_n^(i)` (1-based):
    /// `D_1 ∩ .. ∩ D_{i-1} ∩ D'_{i+1} ∩ .. ∩ D'_n`.
    pub fn gamma_representative(&self, i: usize) -> Option<&InvariantCurve> {
        let n = self.bott_numbers()?.height();
        if i == 0 || i > n {
            return None;
        }
        let rays: Vec<usize> = (1..i).map(|j| n + j - 1).chain((i + 1..=n).map(|j| j - 1)).collect();
        self.wall_by_rays(&rays)
    }

    pub fn divisor_nef(&self, d: &DivisorClass) -> Result<bool> {
        self.check_divisor(d)?;
        Ok(d.coefficients.iter().all(|a| !a.is_negative()))
    }

    pub fn divisor_ample(&self, d: &DivisorClass) -> Result<bool> {
        self.check_divisor(d)?;
        Ok(d.coefficients.iter().all(|a| a.is_positive()))
    }

    /// Cone index containing exactly the given rays.
    pub fn cone_index(&self, rays: &[usize]) -> Option<usize> {
        let mut r = rays.to_vec();
        r.sort_unstable();
        self.cones.iter().position(|c| c.rays == r)
    }
}
