//! The JSON manifest: one variety, one bundle, an optional twist and
//! optional points. Unknown keys are rejected everywhere.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fan::{BottNumbers, DivisorClass, Fan};
use crate::klyachko::{builtin, Builtin, EquivariantBundle, Filtration};
use crate::lattice::{Int, LatticeVec};
use crate::serde_int::{IntRepr, RationalRepr};
use crate::subspace::Subspace;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Manifest {
    pub variety: VarietySpec,
    pub bundle: BundleSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub twist: Option<Vec<IntRepr>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub points: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub assertions: Option<Assertions>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum VarietySpec {
    ProjectiveSpace(usize),
    BottTower(TowerSpec),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TowerSpec {
    pub n: usize,
    /// Keys `"i,j"` with `1 <= i < j <= n`.
    #[serde(default)]
    pub bott_numbers: BTreeMap<String, IntRepr>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum BundleSpec {
    Builtin(Box<BuiltinSpec>),
    Filtrations(FiltrationSpec),
    Characters(CharacterSpec),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BuiltinName {
    Tangent,
    LineBundleSum,
    HirzIndecomposable,
    X3Indecomposable,
}

/// `divisors` belongs to `line_bundle_sum`, `lines` to the two
/// indecomposable examples.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BuiltinSpec {
    pub name: BuiltinName,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub divisors: Option<Vec<Vec<IntRepr>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lines: Option<[[RationalRepr; 2]; 3]>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FiltrationSpec {
    pub rank: usize,
    /// One entry per ray, in the fan's ray order.
    pub rays: Vec<RayFiltrationSpec>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RayFiltrationSpec {
    /// `E(i)` is the whole space for `i <= full_through`.
    pub full_through: IntRepr,
    #[serde(default)]
    pub steps: Vec<StepSpec>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StepSpec {
    pub at: IntRepr,
    /// Generator rows of `E(at)`.
    pub basis: Vec<Vec<RationalRepr>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CharacterSpec {
    pub cones: Vec<ConeCharacters>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConeCharacters {
    /// Ray numbers as in the fan output (`v_1..v_2n`, or `e_0..e_n`).
    pub rays: Vec<usize>,
    pub characters: Vec<Vec<IntRepr>>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Assertions {
    #[serde(rename = "uniform_A1", default)]
    pub uniform_a1: bool,
}

/// A schema violation with the JSON path of the offending field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchemaError {
    pub path: String,
    pub message: String,
}

impl std::fmt::Display for SchemaError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "manifest field `{}`: {}", self.path, self.message)
    }
}

fn at(path: impl Into<String>, e: Error) -> SchemaError {
    SchemaError { path: path.into(), message: e.to_string() }
}

impl Manifest {
    pub fn parse(text: &str) -> std::result::Result<Manifest, SchemaError> {
        let de = &mut serde_json::Deserializer::from_str(text);
        serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            SchemaError { path, message: e.into_inner().to_string() }
        })
    }

    pub fn fan(&self) -> std::result::Result<Fan, SchemaError> {
        match &self.variety {
            VarietySpec::ProjectiveSpace(n) => Fan::projective_space(*n).map_err(|e| at("variety.projective_space", e)),
            VarietySpec::BottTower(t) => {
                let mut values = BTreeMap::new();
                for (key, c) in &t.bott_numbers {
                    let path = format!("variety.bott_tower.bott_numbers.{key:?}");
                    let ij = parse_pair(key).ok_or_else(|| SchemaError {
                        path: path.clone(),
                        message: "keys must be \"i,j\" with 1 <= i < j".into(),
                    })?;
                    values.insert(ij, c.0.clone());
                }
                let bott = BottNumbers::new(t.n, values).map_err(|e| at("variety.bott_tower", e))?;
                Fan::bott_tower(bott).map_err(|e| at("variety.bott_tower", e))
            }
        }
    }

    pub fn twist(&self, fan: &Fan) -> std::result::Result<Option<DivisorClass>, SchemaError> {
        match &self.twist {
            None => Ok(None),
            Some(cs) => {
                let d = DivisorClass::new(cs.iter().map(|c| c.0.clone()).collect());
                fan.divisor_on_rays(&d).map_err(|e| at("twist", e))?;
                Ok(Some(d))
            }
        }
    }

    /// Builds the bundle. Structural problems come back as schema errors;
    /// data errors (incompatible filtrations, inconsistent characters) as
    /// engine errors.
    pub fn bundle(&self, fan: Arc<Fan>) -> std::result::Result<Result<EquivariantBundle>, SchemaError> {
        match &self.bundle {
            BundleSpec::Builtin(spec) => {
                let b = builtin_of(spec, &fan)?;
                Ok(builtin(fan, &b).map_err(|e| match e {
                    Error::Validation(_) | Error::Dimension { .. } => Error::Validation(format!("bundle.builtin: {e}")),
                    e => e,
                }))
            }
            BundleSpec::Filtrations(spec) => {
                let fs = filtrations_of(spec, &fan)?;
                Ok(EquivariantBundle::from_filtrations(fan, fs))
            }
            BundleSpec::Characters(spec) => {
                let per_cone = characters_of(spec, &fan)?;
                Ok(EquivariantBundle::from_characters(fan, per_cone))
            }
        }
    }
}

pub(crate) fn parse_pair(key: &str) -> Option<(usize, usize)> {
    let (i, j) = key.split_once(',')?;
    Some((i.trim().parse().ok()?, j.trim().parse().ok()?))
}

fn builtin_of(spec: &BuiltinSpec, fan: &Fan) -> std::result::Result<Builtin, SchemaError> {
    let unexpected = |field: &str| SchemaError {
        path: format!("bundle.builtin.{field}"),
        message: format!("not accepted by builtin {:?}", spec.name),
    };
    if spec.divisors.is_some() && spec.name != BuiltinName::LineBundleSum {
        return Err(unexpected("divisors"));
    }
    let indecomposable = matches!(spec.name, BuiltinName::HirzIndecomposable | BuiltinName::X3Indecomposable);
    if spec.lines.is_some() && !indecomposable {
        return Err(unexpected("lines"));
    }
    let lines = spec.lines.as_ref().map(|ls| ls.clone().map(|l| l.into_iter().map(|q| q.0).collect::<Vec<_>>()));
    Ok(match spec.name {
        BuiltinName::Tangent => Builtin::Tangent,
        BuiltinName::LineBundleSum => {
            let divisors = spec.divisors.as_ref().ok_or_else(|| SchemaError {
                path: "bundle.builtin.divisors".into(),
                message: "line_bundle_sum needs a list of divisor classes".into(),
            })?;
            let ds: Vec<DivisorClass> =
                divisors.iter().map(|d| DivisorClass::new(d.iter().map(|c| c.0.clone()).collect())).collect();
            for (k, d) in ds.iter().enumerate() {
                fan.divisor_on_rays(d).map_err(|e| at(format!("bundle.builtin.divisors[{k}]"), e))?;
            }
            Builtin::LineBundleSum(ds)
        }
        BuiltinName::HirzIndecomposable => lines.map_or_else(Builtin::hirz_default, Builtin::HirzIndecomposable),
        BuiltinName::X3Indecomposable => lines.map_or_else(Builtin::x3_default, Builtin::X3Indecomposable),
    })
}

fn filtrations_of(spec: &FiltrationSpec, fan: &Fan) -> std::result::Result<Vec<Filtration>, SchemaError> {
    if spec.rays.len() != fan.rays().len() {
        return Err(SchemaError {
            path: "bundle.filtrations.rays".into(),
            message: format!("{} has {} rays, got {} filtrations", fan.family_name(), fan.rays().len(), spec.rays.len()),
        });
    }
    if spec.rank == 0 {
        return Err(SchemaError { path: "bundle.filtrations.rank".into(), message: "rank must be positive".into() });
    }
    spec.rays
        .iter()
        .enumerate()
        .map(|(r, ray)| {
            let mut steps = Vec::with_capacity(ray.steps.len());
            for (s, step) in ray.steps.iter().enumerate() {
                let path = format!("bundle.filtrations.rays[{r}].steps[{s}].basis");
                if let Some(bad) = step.basis.iter().position(|row| row.len() != spec.rank) {
                    return Err(SchemaError {
                        path: format!("{path}[{bad}]"),
                        message: format!("rows must have {} entries", spec.rank),
                    });
                }
                let rows = step.basis.iter().map(|row| row.iter().map(|q| q.0.clone()).collect());
                steps.push((step.at.0.clone(), Subspace::span(spec.rank, rows)));
            }
            Filtration::new(spec.rank, ray.full_through.0.clone(), steps)
                .map_err(|e| at(format!("bundle.filtrations.rays[{r}]"), e))
        })
        .collect()
}

fn characters_of(spec: &CharacterSpec, fan: &Fan) -> std::result::Result<Vec<Vec<LatticeVec>>, SchemaError> {
    let offset = usize::from(!fan.is_projective_space());
    let mut per_cone: Vec<Option<Vec<LatticeVec>>> = vec![None; fan.cones().len()];
    for (k, cone) in spec.cones.iter().enumerate() {
        let path = format!("bundle.characters.cones[{k}]");
        let rays: Option<Vec<usize>> = cone.rays.iter().map(|&r| r.checked_sub(offset)).collect();
        let c = rays.and_then(|rs| fan.cone_index(&rs)).ok_or_else(|| SchemaError {
            path: format!("{path}.rays"),
            message: format!("{:?} is not a maximal cone of {}", cone.rays, fan.family_name()),
        })?;
        if per_cone[c].is_some() {
            return Err(SchemaError { path: format!("{path}.rays"), message: format!("{} listed twice", fan.cone_label(c)) });
        }
        if let Some(bad) = cone.characters.iter().position(|u| u.len() != fan.dim()) {
            return Err(SchemaError {
                path: format!("{path}.characters[{bad}]"),
                message: format!("characters must have {} coordinates", fan.dim()),
            });
        }
        per_cone[c] = Some(
            cone.characters.iter().map(|u| LatticeVec::new(u.iter().map(|x| x.0.clone()).collect::<Vec<Int>>())).collect(),
        );
    }
    per_cone
        .into_iter()
        .enumerate()
        .map(|(c, us)| {
            us.ok_or_else(|| SchemaError {
                path: "bundle.characters.cones".into(),
                message: format!("missing characters for {}", fan.cone_label(c)),
            })
        })
        .collect()
}
