//! Brute-force cross-checks for the engine.
//!
//! None of these share the computation they check with the engine:
//! decompositions are found by exhaustive search over candidate lines
//! instead of backtracking, the grading on a wall is read off the
//! filtrations directly, and intersection numbers come from principal
//! divisors rather than wall relations.

use std::collections::BTreeSet;

use num_traits::{One, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fan::Fan;
use crate::klyachko::{restrict_to_curve, EquivariantBundle, Filtration, SplittingType};
use crate::lattice::{int, pairing, rat, solve_square, Int, LatticeVec, Rational};
use crate::par::{par_map, Execution};
use crate::subspace::{coordinates, QVec, Subspace};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleConfig {
    /// Largest rank the exhaustive search accepts.
    pub rank_bound: usize,
    /// Random generic lines drawn inside each lattice element of dimension
    /// at least two.
    pub random_lines: usize,
    /// Coefficient bound for the random combinations.
    pub coefficient_bound: i64,
    pub seed: u64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig { rank_bound: 3, random_lines: 3, coefficient_bound: 7, seed: 0x5e5a }
    }
}

/// A decomposition as lines with their jump vectors.
pub type Decomposition = Vec<(QVec, Vec<Int>)>;

/// All decompositions into candidate lines adapted to every filtration.
///
/// Candidates are the one-dimensional elements of the intersection
/// semilattice generated by the steps, plus random generic lines inside
/// every larger element.
pub fn oracle_decompositions(family: &[Filtration], cfg: &OracleConfig) -> Result<Vec<Decomposition>> {
    let rank = family.first().map(Filtration::rank).ok_or_else(|| Error::Validation("empty family".into()))?;
    if rank > cfg.rank_bound {
        return Err(Error::Validation(format!("oracle rank bound is {}, got {rank}", cfg.rank_bound)));
    }
    let steps: Vec<Subspace> = family.iter().flat_map(|f| f.steps().map(|(_, s)| s.clone())).collect();
    let lattice = meet_closure(rank, &steps);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut candidates: Vec<Subspace> = Vec::new();
    for s in &lattice {
        match s.dim() {
            0 => {}
            1 => candidates.push(s.clone()),
            _ => {
                for _ in 0..cfg.random_lines {
                    let v = random_vector_in(s, cfg.coefficient_bound, &mut rng);
                    candidates.push(Subspace::line(v));
                }
            }
        }
    }
    let mut seen = BTreeSet::new();
    candidates.retain(|c| seen.insert(format!("{c:?}")));

    let mut out = Vec::new();
    let mut chosen = Vec::new();
    enumerate(&candidates, 0, rank, &mut chosen, &steps, &mut out);
    Ok(out
        .into_iter()
        .map(|lines| {
            lines
                .into_iter()
                .map(|l| {
                    let v = l.basis()[0].clone();
                    let jumps = family.iter().map(|f| deepest_step(f, &l)).collect();
                    (v, jumps)
                })
                .collect()
        })
        .collect())
}

fn meet_closure(rank: usize, steps: &[Subspace]) -> Vec<Subspace> {
    let mut set: Vec<Subspace> = Vec::new();
    let push = |s: Subspace, set: &mut Vec<Subspace>| {
        if !set.contains(&s) {
            set.push(s);
            true
        } else {
            false
        }
    };
    push(Subspace::full(rank), &mut set);
    for s in steps {
        push(s.clone(), &mut set);
    }
    loop {
        let mut grew = false;
        let snapshot = set.clone();
        for i in 0..snapshot.len() {
            for j in (i + 1)..snapshot.len() {
                grew |= push(snapshot[i].intersection(&snapshot[j]), &mut set);
            }
        }
        if !grew {
            return set;
        }
    }
}

fn random_vector_in(s: &Subspace, bound: i64, rng: &mut ChaCha8Rng) -> QVec {
    loop {
        let mut v = vec![Rational::zero(); s.ambient()];
        for row in s.basis() {
            let c = rat(rng.gen_range(-bound..=bound), 1);
            for (x, y) in v.iter_mut().zip(row) {
                *x += &c * y;
            }
        }
        if v.iter().any(|x| !x.is_zero()) {
            return v;
        }
    }
}

fn enumerate(
    cands: &[Subspace],
    start: usize,
    rank: usize,
    chosen: &mut Vec<Subspace>,
    steps: &[Subspace],
    out: &mut Vec<Vec<Subspace>>,
) {
    if chosen.len() == rank {
        let fits = steps.iter().all(|s| chosen.iter().filter(|l| s.contains(l)).count() == s.dim());
        if fits {
            out.push(chosen.clone());
        }
        return;
    }
    let span = chosen.iter().fold(Subspace::zero(rank), |acc, l| acc.sum(l));
    for i in start..cands.len() {
        if cands.len() - i < rank - chosen.len() {
            break;
        }
        if span.contains(&cands[i]) {
            continue;
        }
        chosen.push(cands[i].clone());
        enumerate(cands, i + 1, rank, chosen, steps, out);
        chosen.pop();
    }
}

fn deepest_step(f: &Filtration, line: &Subspace) -> Int {
    let mut best = f.full_through().clone();
    for (k, s) in f.steps() {
        if s.contains(line) && *k > best {
            best = k.clone();
        }
    }
    best
}

/// Restriction to the curve of `wall`, from all oracle decompositions of
/// every graded piece. Errors if the decompositions disagree.
pub fn oracle_restriction(bundle: &EquivariantBundle, wall: usize, cfg: &OracleConfig) -> Result<SplittingType> {
    let fs = bundle
        .filtrations()
        .ok_or_else(|| Error::Validation("the oracle needs filtration data".into()))?;
    let fan = bundle.fan();
    let curve = &fan.walls()[wall];
    let rank = bundle.rank();
    let tau: Vec<&Filtration> = curve.wall_rays.iter().map(|&r| &fs[r]).collect();
    let (a, b) = curve.opposite_rays;

    // Grading pieces F_t / F_>t, with F_>t the sum over one-step bumps.
    let meet = |t: &[Int]| -> Subspace {
        tau.iter().zip(t).fold(Subspace::full(rank), |acc, (f, i)| acc.intersection(f.at(i)))
    };
    let weights: Vec<Vec<Int>> = cartesian(&tau.iter().map(|f| f.jumps().cloned().collect()).collect::<Vec<_>>());
    let mut degrees: Vec<Int> = Vec::new();
    for t in weights {
        let f_t = meet(&t);
        let deeper = (0..t.len()).fold(Subspace::zero(rank), |acc, k| {
            let mut bumped = t.clone();
            bumped[k] += Int::one();
            acc.sum(&meet(&bumped))
        });
        let m = f_t.dim() - deeper.dim();
        if m == 0 {
            continue;
        }
        // Complement of F_>t in F_t from the echelon rows of F_t.
        let mut complement: Vec<QVec> = Vec::new();
        let mut acc = deeper.clone();
        for row in f_t.basis() {
            if !acc.contains_vec(row) {
                acc = acc.sum(&Subspace::line(row.clone()));
                complement.push(row.clone());
            }
        }
        let c_space = Subspace::span(rank, complement.iter().cloned());
        let induce = |f: &Filtration| -> Result<Filtration> {
            let steps = f
                .steps()
                .map(|(p, s)| {
                    let image = s.intersection(&f_t).sum(&deeper).intersection(&c_space);
                    let coords = image
                        .basis()
                        .iter()
                        .map(|v| coordinates(&complement, v).expect("image lies in the complement"))
                        .collect::<Vec<_>>();
                    (p.clone(), Subspace::span(m, coords))
                })
                .collect();
            Filtration::new(m, f.full_through().clone(), steps)
        };
        let pair = [induce(&fs[a])?, induce(&fs[b])?];
        let shift: Int = curve.wall_relation.iter().zip(&t).map(|(bk, tk)| bk * tk).sum();
        let decs = oracle_decompositions(&pair, cfg)?;
        let types: BTreeSet<Vec<Int>> = decs
            .iter()
            .map(|d| {
                let mut v: Vec<Int> = d.iter().map(|(_, j)| &j[0] + &j[1] + &shift).collect();
                v.sort();
                v
            })
            .collect();
        match types.len() {
            0 => return Err(Error::Internal(format!("oracle found no decomposition on wall {}", curve.label))),
            1 => degrees.extend(types.into_iter().next().unwrap()),
            _ => {
                return Err(Error::Internal(format!(
                    "oracle decompositions on wall {} give different splittings {types:?}",
                    curve.label
                )))
            }
        }
    }
    Ok(SplittingType::new(degrees))
}

fn cartesian(sets: &[Vec<Int>]) -> Vec<Vec<Int>> {
    sets.iter().fold(vec![Vec::new()], |acc, set| {
        acc.iter()
            .flat_map(|prefix| {
                set.iter().map(move |x| {
                    let mut p = prefix.clone();
                    p.push(x.clone());
                    p
                })
            })
            .collect()
    })
}

/// `D_rho . V(tau)` for every ray and wall, via principal divisors: for
/// `rho` in `tau` pick `m` vanishing on the other wall rays and on `v_a`
/// with `<m, v_rho> = 1`; then `D_rho . C = -<m, v_b>`.
pub fn oracle_intersections(fan: &Fan) -> Result<Vec<Vec<Int>>> {
    let n = fan.dim();
    let mut matrix = vec![vec![Int::zero(); fan.walls().len()]; fan.rays().len()];
    for (w, curve) in fan.walls().iter().enumerate() {
        let (a, b) = curve.opposite_rays;
        matrix[a][w] = Int::one();
        matrix[b][w] = Int::one();
        for &rho in &curve.wall_rays {
            let mut rows: Vec<Vec<Rational>> = Vec::with_capacity(n);
            let mut rhs: Vec<Rational> = Vec::with_capacity(n);
            for &k in curve.wall_rays.iter().chain(std::iter::once(&a)) {
                rows.push(fan.rays()[k].to_rational());
                rhs.push(if k == rho { Rational::one() } else { Rational::zero() });
            }
            let m = solve_square(&rows, &rhs)
                .ok_or_else(|| Error::Internal(format!("wall {} is not simplicial", curve.label)))?;
            let vb = fan.rays()[b].to_rational();
            let val: Rational = m.iter().zip(&vb).map(|(x, y)| x * y).sum();
            if !val.is_integer() {
                return Err(Error::Internal(format!("non-integral intersection on {}", curve.label)));
            }
            matrix[rho][w] = -val.to_integer();
        }
    }
    Ok(matrix)
}

/// Curve classes from the oracle matrix: rows of the Picard basis divisors.
pub fn oracle_curve_classes(fan: &Fan, matrix: &[Vec<Int>]) -> Vec<Vec<Int>> {
    let basis_rays: Vec<usize> = match fan.bott_numbers() {
        Some(b) => (b.height()..2 * b.height()).collect(),
        None => vec![0],
    };
    (0..fan.walls().len()).map(|w| basis_rays.iter().map(|&r| matrix[r][w].clone()).collect()).collect()
}

/// The `Gamma^(i)` representatives pair to the Kronecker delta with the
/// Picard basis, and every column satisfies `sum_rho (D_rho . C) v_rho = 0`.
pub fn oracle_duality_holds(fan: &Fan, matrix: &[Vec<Int>]) -> bool {
    let balanced = (0..fan.walls().len()).all(|w| {
        let mut sum = LatticeVec::zero(fan.dim());
        for (rho, v) in fan.rays().iter().enumerate() {
            sum = &sum + &v.scale(&matrix[rho][w]);
        }
        sum.is_zero()
    });
    let Some(bott) = fan.bott_numbers() else {
        return balanced;
    };
    let n = bott.height();
    let classes = oracle_curve_classes(fan, matrix);
    let dual = (1..=n).all(|i| {
        // D_1 ∩ .. ∩ D_{i-1} ∩ D'_{i+1} ∩ .. ∩ D'_n
        let mut rays: Vec<usize> = (1..i).map(|j| n + j - 1).chain((i + 1..=n).map(|j| j - 1)).collect();
        rays.sort_unstable();
        match fan.walls().iter().position(|w| w.wall_rays == rays) {
            Some(w) => classes[w].iter().enumerate().all(|(j, x)| *x == int(i64::from(j + 1 == i))),
            None => false,
        }
    });
    balanced && dual
}

/// Total degree on the curve from the characters alone:
/// `sum_{u in u(sigma)} <u, v_a> - sum_{u' in u(sigma')} <u', v_a>`.
pub fn oracle_splitting_deg(bundle: &EquivariantBundle, wall: usize) -> Result<Int> {
    let fan = bundle.fan();
    let curve = &fan.walls()[wall];
    let va = &fan.rays()[curve.opposite_rays.0];
    let side = |c: usize| -> Result<Int> {
        bundle.associated_characters(c).iter().map(|u| pairing(u, va)).sum()
    };
    Ok(side(curve.adjacent_cones.0)? - side(curve.adjacent_cones.1)?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleCheck {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleReport {
    pub checks: Vec<OracleCheck>,
}

impl OracleReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Fan-level checks: intersection matrix and duality.
pub fn check_fan(fan: &Fan) -> Vec<OracleCheck> {
    let mut checks = Vec::new();
    match oracle_intersections(fan) {
        Ok(m) => {
            let mismatches: Vec<String> = fan
                .walls()
                .iter()
                .enumerate()
                .flat_map(|(w, curve)| {
                    let m = &m;
                    (0..fan.rays().len()).filter_map(move |r| {
                        let engine = fan.ray_intersection(r, curve);
                        (engine != m[r][w]).then(|| format!("{}.{}: {} vs {}", fan.ray_label(r), curve.label, engine, m[r][w]))
                    })
                })
                .collect();
            checks.push(OracleCheck {
                name: "intersection_matrix".into(),
                passed: mismatches.is_empty(),
                detail: if mismatches.is_empty() { "principal-divisor matrix matches".into() } else { mismatches.join("; ") },
            });
            checks.push(OracleCheck {
                name: "gamma_duality".into(),
                passed: oracle_duality_holds(fan, &m),
                detail: "Gamma representatives dual to the Picard basis".into(),
            });
        }
        Err(e) => checks.push(OracleCheck { name: "intersection_matrix".into(), passed: false, detail: e.to_string() }),
    }
    checks
}

/// Bundle-level checks: degree sums on every wall, and for filtration data
/// of small rank the exhaustive restriction and cone decompositions.
pub fn check_bundle(bundle: &EquivariantBundle, cfg: &OracleConfig, exec: Execution) -> OracleReport {
    let fan = bundle.fan();
    let mut checks = check_fan(fan);
    let walls: Vec<usize> = (0..fan.walls().len()).collect();
    let per_wall = par_map(exec, &walls, |&w| -> Vec<OracleCheck> {
        let label = &fan.walls()[w].label;
        let mut out = Vec::new();
        let engine = restrict_to_curve(bundle, &fan.walls()[w]);
        match (&engine, &oracle_splitting_deg(bundle, w)) {
            (Ok(s), Ok(d)) => out.push(OracleCheck {
                name: format!("degree_sum[{label}]"),
                passed: s.deg() == *d,
                detail: format!("engine {} vs characters {d}", s.deg()),
            }),
            (Err(e), _) | (_, Err(e)) => {
                out.push(OracleCheck { name: format!("degree_sum[{label}]"), passed: false, detail: e.to_string() })
            }
        }
        if bundle.filtrations().is_some() && bundle.rank() <= cfg.rank_bound {
            let check = match (&engine, &oracle_restriction(bundle, w, cfg)) {
                (Ok(s), Ok(o)) => OracleCheck {
                    name: format!("restriction[{label}]"),
                    passed: s == o,
                    detail: format!("engine {s} vs oracle {o}"),
                },
                (_, Err(e)) | (Err(e), _) => {
                    OracleCheck { name: format!("restriction[{label}]"), passed: false, detail: e.to_string() }
                }
            };
            out.push(check);
        }
        out
    });
    checks.extend(per_wall.into_iter().flatten());
    if let Some(fs) = bundle.filtrations() {
        if bundle.rank() <= cfg.rank_bound {
            for (c, cone) in fan.cones().iter().enumerate() {
                let family: Vec<Filtration> = cone.rays.iter().map(|&r| fs[r].clone()).collect();
                let found = oracle_decompositions(&family, cfg).map(|d| d.len()).unwrap_or(0);
                checks.push(OracleCheck {
                    name: format!("cone_decomposition[{}]", fan.cone_label(c)),
                    passed: found > 0,
                    detail: format!("{found} adapted decompositions"),
                });
            }
        }
    }
    OracleReport { checks }
}

/// A random filtration of `Q^rank`: a random basis from small vectors with
/// random weights, so lines on different rays often coincide.
pub fn random_filtration(rank: usize, rng: &mut ChaCha8Rng) -> Filtration {
    loop {
        let vs: Vec<QVec> = (0..rank)
            .map(|_| (0..rank).map(|_| rat(rng.gen_range(-1..=1), 1)).collect())
            .collect();
        if !Subspace::span(rank, vs.iter().cloned()).is_full() {
            continue;
        }
        let lines: Vec<(QVec, Int)> = vs.into_iter().map(|v| (v, int(rng.gen_range(-1..=2)))).collect();
        return Filtration::from_weighted_lines(rank, &lines).expect("lines span");
    }
}

/// Random bundle on a surface, where any two filtrations are compatible.
pub fn random_surface_bundle(fan: std::sync::Arc<Fan>, rank: usize, rng: &mut ChaCha8Rng) -> Result<EquivariantBundle> {
    if fan.dim() != 2 {
        return Err(Error::Validation("random bundles are generated on surfaces".into()));
    }
    let fs = (0..fan.rays().len()).map(|_| random_filtration(rank, rng)).collect();
    EquivariantBundle::from_filtrations(fan, fs)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::fan::BottNumbers;
    use crate::klyachko::{builtin, Builtin};

    fn line(v: &[i64]) -> Filtration {
        let q: QVec = v.iter().map(|&x| rat(x, 1)).collect();
        Filtration::new(v.len(), int(0), vec![(int(1), Subspace::line(q))]).unwrap()
    }

    fn jump_types(decs: &[Decomposition]) -> BTreeSet<Vec<Vec<Int>>> {
        decs.iter()
            .map(|d| {
                let mut j: Vec<Vec<Int>> = d.iter().map(|(_, j)| j.clone()).collect();
                j.sort();
                j
            })
            .collect()
    }

    #[test]
    fn identical_lines_only_cross() {
        let f = line(&[1, 2]);
        let decs = oracle_decompositions(&[f.clone(), f], &OracleConfig::default()).unwrap();
        assert!(!decs.is_empty());
        assert_eq!(jump_types(&decs), BTreeSet::from([vec![vec![int(0), int(0)], vec![int(1), int(1)]]]));
    }

    #[test]
    fn distinct_lines_split() {
        let decs = oracle_decompositions(&[line(&[1, 0]), line(&[1, 1])], &OracleConfig::default()).unwrap();
        assert_eq!(jump_types(&decs), BTreeSet::from([vec![vec![int(0), int(1)], vec![int(1), int(0)]]]));
    }

    #[test]
    fn three_lines_in_plane_have_no_decomposition() {
        let fam = [line(&[1, 0]), line(&[0, 1]), line(&[1, 1])];
        assert!(oracle_decompositions(&fam, &OracleConfig::default()).unwrap().is_empty());
    }

    #[test]
    fn hirzebruch_tangent_cones_decompose() {
        let fan = Arc::new(Fan::bott_tower(BottNumbers::from_rows(2, &[2]).unwrap()).unwrap());
        let b = builtin(fan.clone(), &Builtin::Tangent).unwrap();
        let report = check_bundle(&b, &OracleConfig::default(), Execution::Sequential);
        assert!(report.all_pass(), "{report:?}");
    }

    #[test]
    fn intersections_known_values() {
        let fan = Fan::bott_tower(BottNumbers::from_rows(3, &[1, 1, 1]).unwrap()).unwrap();
        let m = oracle_intersections(&fan).unwrap();
        let l12 = fan.wall_by_label("l12").unwrap().index;
        assert_eq!(m[5][l12], int(2));
        let x2 = Fan::bott_tower(BottNumbers::from_rows(2, &[3]).unwrap()).unwrap();
        let m = oracle_intersections(&x2).unwrap();
        let d2p = x2.wall_by_label("D'_2").unwrap().index;
        // D_1 . D'_2 = 1
        assert_eq!(m[2][d2p], int(1));
        assert!(oracle_duality_holds(&x2, &m));
        let p2 = Fan::projective_space(2).unwrap();
        let m = oracle_intersections(&p2).unwrap();
        assert!(m[0].iter().all(|x| *x == int(1)));
    }

    #[test]
    fn degree_sum_on_disputed_wall() {
        let fan = Arc::new(Fan::bott_tower(BottNumbers::from_rows(2, &[2]).unwrap()).unwrap());
        let b = builtin(fan.clone(), &Builtin::hirz_default()).unwrap();
        let w = fan.wall_by_label("D_2").unwrap().index;
        assert_eq!(oracle_splitting_deg(&b, w).unwrap(), int(2));
        let t = builtin(fan.clone(), &Builtin::Tangent).unwrap();
        assert_eq!(oracle_splitting_deg(&t, w).unwrap(), int(2 + 2));
    }
}
