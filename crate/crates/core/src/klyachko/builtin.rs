//! Built-in bundles: tangent bundles, sums of line bundles, and the two
//! rank-2 indecomposable examples on `X_2` and `X_3`.

use std::sync::Arc;

use super::bundle::EquivariantBundle;
use super::filtration::Filtration;
use super::restriction::SplittingType;
use crate::error::{Error, Result};
use crate::fan::{DivisorClass, Fan};
use crate::lattice::{int, rat, Int};
use crate::subspace::{fmt_qvec, unit, QVec, Subspace};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Builtin {
    Tangent,
    LineBundleSum(Vec<DivisorClass>),
    /// Lines on `v_1, v_2, v_3` of `X_2`.
    HirzIndecomposable([QVec; 3]),
    /// Lines on `v_1, v_2, v_4` of `X_3`.
    X3Indecomposable([QVec; 3]),
}

fn default_lines() -> [QVec; 3] {
    [vec![rat(1, 1), rat(0, 1)], vec![rat(0, 1), rat(1, 1)], vec![rat(1, 1), rat(1, 1)]]
}

impl Builtin {
    pub fn hirz_default() -> Self {
        Builtin::HirzIndecomposable(default_lines())
    }

    pub fn x3_default() -> Self {
        Builtin::X3Indecomposable(default_lines())
    }

    pub fn name(&self) -> &'static str {
        match self {
            Builtin::Tangent => "tangent",
            Builtin::LineBundleSum(_) => "line_bundle_sum",
            Builtin::HirzIndecomposable(_) => "hirz_indecomposable",
            Builtin::X3Indecomposable(_) => "x3_indecomposable",
        }
    }
}

pub fn builtin(fan: Arc<Fan>, b: &Builtin) -> Result<EquivariantBundle> {
    match b {
        Builtin::Tangent => tangent(fan),
        Builtin::LineBundleSum(ds) => line_bundle_sum(fan, ds),
        Builtin::HirzIndecomposable(lines) => hirz_indecomposable(fan, lines),
        Builtin::X3Indecomposable(lines) => x3_indecomposable(fan, lines),
    }
}

/// `E^rho(1) = span(v_rho)`, full at `i <= 0`.
fn tangent(fan: Arc<Fan>) -> Result<EquivariantBundle> {
    let n = fan.dim();
    let fs = fan
        .rays()
        .iter()
        .map(|v| Filtration::new(n, int(0), vec![(int(1), Subspace::line(v.to_rational()))]))
        .collect::<Result<Vec<_>>>()?;
    let reference = tangent_reference(&fan);
    let uniform = fan.is_projective_space();
    let mut b = EquivariantBundle::from_filtrations(fan, fs)?.with_name("tangent");
    if let Some(r) = reference {
        b = b.with_reference(r);
    }
    if uniform {
        b = b.with_uniform_family("tangent bundle");
    }
    Ok(b)
}

fn tangent_reference(fan: &Fan) -> Option<Vec<SplittingType>> {
    if fan.is_projective_space() {
        let n = fan.dim();
        let mut row = vec![1; n - 1];
        row.push(2);
        return Some(fan.walls().iter().map(|_| SplittingType::from_i64(&row)).collect());
    }
    let bott = fan.bott_numbers()?;
    if bott.height() != 2 {
        return None;
    }
    let c = bott.get(1, 2).clone();
    // D'_1, D'_2, D_1, D_2
    let rows = [vec![int(0), int(2)], vec![-c.clone(), int(2)], vec![int(0), int(2)], vec![c, int(2)]];
    Some(rows.into_iter().map(SplittingType::new).collect())
}

/// Summand `j` is the coordinate line `e_j` with weight `a_{j,rho}` on ray
/// `rho`.
fn line_bundle_sum(fan: Arc<Fan>, ds: &[DivisorClass]) -> Result<EquivariantBundle> {
    if ds.is_empty() {
        return Err(Error::Validation("line_bundle_sum needs at least one divisor".into()));
    }
    let r = ds.len();
    let lifted = ds.iter().map(|d| fan.divisor_on_rays(d)).collect::<Result<Vec<_>>>()?;
    let fs = (0..fan.rays().len())
        .map(|rho| {
            let lines: Vec<(QVec, Int)> = (0..r).map(|j| (unit(r, j), lifted[j][rho].clone())).collect();
            Filtration::from_weighted_lines(r, &lines)
        })
        .collect::<Result<Vec<_>>>()?;
    let uniform = fan.is_projective_space();
    let names: Vec<String> = ds.iter().map(|d| format!("O({d})")).collect();
    let mut b = EquivariantBundle::from_filtrations(fan, fs)?.with_name(names.join(" ⊕ "));
    if uniform {
        b = b.with_uniform_family("sum of line bundles");
    }
    Ok(b)
}

fn check_lines(lines: &[QVec; 3], names: [&str; 3]) -> Result<[Subspace; 3]> {
    let subs = lines
        .iter()
        .zip(names)
        .map(|(v, name)| {
            if v.len() != 2 {
                return Err(Error::Validation(format!("{name} must be a vector in Q^2, got {}", fmt_qvec(v))));
            }
            let s = Subspace::line(v.clone());
            if s.is_zero() {
                return Err(Error::Validation(format!("{name} is the zero vector")));
            }
            Ok(s)
        })
        .collect::<Result<Vec<_>>>()?;
    for i in 0..3 {
        for j in (i + 1)..3 {
            if subs[i] == subs[j] {
                return Err(Error::Validation(format!(
                    "lines {} and {} must be distinct, both are spanned by {}",
                    names[i],
                    names[j],
                    fmt_qvec(&lines[i])
                )));
            }
        }
    }
    Ok([subs[0].clone(), subs[1].clone(), subs[2].clone()])
}

/// Rank 2 with `E(1) = L` on the rays in `lined` and trivial elsewhere.
fn lined_filtrations(fan: &Fan, lined: [usize; 3], lines: [Subspace; 3]) -> Result<Vec<Filtration>> {
    (0..fan.rays().len())
        .map(|rho| match lined.iter().position(|&r| r == rho) {
            Some(k) => Filtration::new(2, int(0), vec![(int(1), lines[k].clone())]),
            None => Filtration::new(2, int(0), Vec::new()),
        })
        .collect()
}

fn hirz_indecomposable(fan: Arc<Fan>, lines: &[QVec; 3]) -> Result<EquivariantBundle> {
    let c = match fan.bott_numbers() {
        Some(b) if b.height() == 2 => b.get(1, 2).clone(),
        _ => return Err(Error::Validation("hirz_indecomposable is defined on X_2 only".into())),
    };
    let subs = check_lines(lines, ["L1", "L2", "L3"])?;
    let fs = lined_filtrations(&fan, [0, 1, 2], subs)?;
    // D'_1, D'_2, D_1, D_2 as stated in the literature.
    let reference = [vec![int(0), int(1)], vec![-c, int(2)], vec![int(0), int(1)], vec![int(0), int(2)]]
        .into_iter()
        .map(SplittingType::new)
        .collect();
    Ok(EquivariantBundle::from_filtrations(fan, fs)?
        .with_name("hirz_indecomposable")
        .with_reference(reference))
}

fn x3_indecomposable(fan: Arc<Fan>, lines: &[QVec; 3]) -> Result<EquivariantBundle> {
    let c12 = match fan.bott_numbers() {
        Some(b) if b.height() == 3 => b.get(1, 2).clone(),
        _ => return Err(Error::Validation("x3_indecomposable is defined on X_3 only".into())),
    };
    let subs = check_lines(lines, ["L1", "L2", "L4"])?;
    let fs = lined_filtrations(&fan, [0, 1, 3], subs)?;
    let z = || vec![int(0), int(0)];
    let one = || vec![int(0), int(1)];
    let two = || vec![int(0), int(2)];
    let neg = || vec![-c12.clone(), int(2)];
    let reference = [z(), one(), z(), one(), neg(), z(), neg(), one(), two(), z(), one(), two()]
        .into_iter()
        .map(SplittingType::new)
        .collect();
    Ok(EquivariantBundle::from_filtrations(fan, fs)?
        .with_name("x3_indecomposable")
        .with_reference(reference))
}
