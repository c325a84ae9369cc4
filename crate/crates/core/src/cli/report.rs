//! Machine (JSON) and human (table) views of one command's result. The
//! table is rendered from the same [`Report`] value that is serialized.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::fan::{CurveClass, DivisorClass, Fan};
use crate::klyachko::{RestrictionProfile, SplittingType};
use crate::lattice::Int;
use crate::oracle::OracleReport;
use crate::positivity::{MoriGenerators, Verdict};
use crate::serde_int::IntRepr;
use crate::seshadri::{HypothesisReport, SeshadriResult, SeshadriValue, Theorem};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Report {
    pub command: String,
    pub variety: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bundle: Option<BundleSummary>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub twist: Option<DivisorClass>,
    pub result: Body,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleReport>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BundleSummary {
    pub name: String,
    pub rank: usize,
    pub input: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Body {
    Fan(FanBody),
    Restrict(RestrictBody),
    Nef(NefBody),
    Mori(MoriGenerators),
    Check(HypothesisReport),
    Seshadri(SeshadriBody),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RayRow {
    pub ray: String,
    pub divisor: String,
    #[serde(with = "crate::serde_int::vec")]
    pub coords: Vec<Int>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConeRow {
    pub cone: String,
    pub rays: Vec<String>,
    /// Dual basis, one vector per ray of the cone.
    pub dual: Vec<Vec<IntRepr>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WallRow {
    pub curve: String,
    pub wall: Vec<String>,
    pub cones: Vec<String>,
    pub relation: String,
    pub class: CurveClass,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FanBody {
    pub dim: usize,
    pub picard_basis: Vec<String>,
    pub rays: Vec<RayRow>,
    pub cones: Vec<ConeRow>,
    pub walls: Vec<WallRow>,
    pub nef_criterion: String,
    pub ample_criterion: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RestrictRow {
    pub curve: String,
    pub class: CurveClass,
    pub splitting: SplittingType,
    #[serde(with = "crate::serde_int")]
    pub deg: Int,
    #[serde(with = "crate::serde_int")]
    pub mu_min: Int,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reference: Option<SplittingType>,
    pub discrepancy: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RestrictBody {
    pub rows: Vec<RestrictRow>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NefBody {
    pub nef: Verdict,
    pub ample: Verdict,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PointStatus {
    Exact,
    Interval,
    HypothesisFailed,
    NotNef,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PointOutcome {
    pub point: String,
    pub status: PointStatus,
    /// Absent when the theorem does not apply.
    pub value: Option<SeshadriValue>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<SeshadriResult>,
    /// The failed hypotheses, when the theorem does not apply.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub report: Option<HypothesisReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub message: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeshadriBody {
    pub theorem: Theorem,
    pub points: Vec<PointOutcome>,
}

pub fn fan_body(fan: &Fan) -> FanBody {
    let rays = (0..fan.rays().len())
        .map(|r| RayRow { ray: fan.ray_name(r), divisor: fan.ray_label(r), coords: fan.rays()[r].coords().to_vec() })
        .collect();
    let cones = fan
        .cones()
        .iter()
        .enumerate()
        .map(|(c, cone)| ConeRow {
            cone: fan.cone_label(c),
            rays: cone.rays.iter().map(|&r| fan.ray_name(r)).collect(),
            dual: cone.dual.iter().map(|u| u.coords().iter().cloned().map(IntRepr).collect()).collect(),
        })
        .collect();
    let walls = fan
        .walls()
        .iter()
        .map(|w| WallRow {
            curve: w.label.clone(),
            wall: w.wall_rays.iter().map(|&r| fan.ray_name(r)).collect(),
            cones: vec![fan.cone_label(w.adjacent_cones.0), fan.cone_label(w.adjacent_cones.1)],
            relation: relation_string(fan, w),
            class: fan.curve_class(w),
        })
        .collect();
    let picard_basis = match fan.bott_numbers() {
        Some(b) => (1..=b.height()).map(|i| format!("D_{i}")).collect(),
        None => vec!["H".to_string()],
    };
    FanBody {
        dim: fan.dim(),
        picard_basis,
        rays,
        cones,
        walls,
        nef_criterion: "sum a_i D_i is nef iff every a_i >= 0".into(),
        ample_criterion: "sum a_i D_i is ample iff every a_i > 0".into(),
    }
}

/// `v_a + v_b + sum b_k v_k = 0`, omitting zero terms.
fn relation_string(fan: &Fan, w: &crate::fan::InvariantCurve) -> String {
    let mut terms: Vec<(Int, String)> = vec![
        (Int::from(1), fan.ray_name(w.opposite_rays.0)),
        (Int::from(1), fan.ray_name(w.opposite_rays.1)),
    ];
    for (b, &r) in w.wall_relation.iter().zip(&w.wall_rays) {
        if *b != Int::from(0) {
            terms.push((b.clone(), fan.ray_name(r)));
        }
    }
    let mut s = String::new();
    for (k, (b, name)) in terms.iter().enumerate() {
        let neg = *b < Int::from(0);
        let mag = if neg { -b.clone() } else { b.clone() };
        match (k, neg) {
            (0, _) => {}
            (_, true) => s.push_str(" - "),
            (_, false) => s.push_str(" + "),
        }
        if mag != Int::from(1) {
            let _ = write!(s, "{mag} ");
        }
        s.push_str(name);
    }
    s.push_str(" = 0");
    s
}

pub fn restrict_body(profile: &RestrictionProfile) -> RestrictBody {
    let rows: Vec<RestrictRow> = profile
        .rows
        .iter()
        .map(|r| RestrictRow {
            curve: r.label.clone(),
            class: r.class.clone(),
            splitting: r.splitting.clone(),
            deg: r.deg(),
            mu_min: r.mu_min(),
            reference: r.reference.clone(),
            discrepancy: r.disagrees_with_reference(),
        })
        .collect();
    let notes = profile
        .rows
        .iter()
        .filter(|r| r.disagrees_with_reference())
        .map(|r| {
            format!(
                "{}: computed {} (deg {}), literature states {} (deg {})",
                r.label,
                r.splitting,
                r.deg(),
                r.reference.as_ref().expect("disagreement implies a reference"),
                r.reference.as_ref().expect("disagreement implies a reference").deg()
            )
        })
        .collect();
    RestrictBody { rows, notes }
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

fn class_str(c: &CurveClass) -> String {
    format!("({})", join(&c.gamma_coords))
}

/// Left-aligned columns separated by two spaces.
pub fn table(headers: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = headers.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: Vec<&str>| -> String {
        let mut s = String::new();
        for (k, (cell, w)) in cells.iter().zip(&widths).enumerate() {
            if k > 0 {
                s.push_str("  ");
            }
            s.push_str(cell);
            if k + 1 < cells.len() {
                s.push_str(&" ".repeat(w - cell.chars().count()));
            }
        }
        s.push('\n');
        s
    };
    let mut out = line(headers.to_vec());
    out.push_str(&line(widths.iter().map(|w| "-".repeat(*w)).collect::<Vec<_>>().iter().map(String::as_str).collect()));
    for row in rows {
        out.push_str(&line(row.iter().map(String::as_str).collect()));
    }
    out
}

fn hypothesis_table(r: &HypothesisReport) -> String {
    let rows: Vec<Vec<String>> = r
        .conditions
        .iter()
        .map(|c| {
            vec![
                c.name.clone(),
                if c.passed { "pass".into() } else { "FAIL".into() },
                if c.gating { "yes".into() } else { "no".into() },
                c.requirement.clone(),
                c.actual.clone(),
            ]
        })
        .collect();
    format!("{}\n{}", r.theorem, table(&["condition", "status", "gating", "requirement", "actual"], &rows))
}

fn verdict_line(what: &str, v: &Verdict) -> String {
    match &v.witness {
        None => format!("{what}: yes\n"),
        Some(w) => format!("{what}: no; witness {} degree {}\n", w.curve, w.degree),
    }
}

impl Report {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "variety: {}", self.variety);
        if let Some(b) = &self.bundle {
            let _ = writeln!(out, "bundle: {} (rank {}, from {})", b.name, b.rank, b.input);
        }
        if let Some(d) = &self.twist {
            let _ = writeln!(out, "twist: {d}");
        }
        out.push('\n');
        match &self.result {
            Body::Fan(f) => {
                let rays: Vec<Vec<String>> =
                    f.rays.iter().map(|r| vec![r.ray.clone(), r.divisor.clone(), format!("({})", join(&r.coords))]).collect();
                out.push_str(&table(&["ray", "divisor", "coords"], &rays));
                out.push('\n');
                let cones: Vec<Vec<String>> = f
                    .cones
                    .iter()
                    .map(|c| {
                        let dual: Vec<String> = c.dual.iter().map(|u| format!("({})", join(&u.iter().map(|x| x.0.clone()).collect::<Vec<_>>()))).collect();
                        vec![c.cone.clone(), c.rays.join(" "), dual.join(" ")]
                    })
                    .collect();
                out.push_str(&table(&["cone", "rays", "dual basis"], &cones));
                out.push('\n');
                let walls: Vec<Vec<String>> = f
                    .walls
                    .iter()
                    .map(|w| vec![w.curve.clone(), w.wall.join(" "), w.cones.join(" | "), w.relation.clone(), class_str(&w.class)])
                    .collect();
                let class_header = format!("class in dual of {}", f.picard_basis.join(","));
                out.push_str(&table(&["curve", "wall", "cones", "relation", &class_header], &walls));
                let _ = write!(out, "\n{}\n{}\n", f.nef_criterion, f.ample_criterion);
            }
            Body::Restrict(r) => {
                let has_ref = r.rows.iter().any(|row| row.reference.is_some());
                let rows: Vec<Vec<String>> = r
                    .rows
                    .iter()
                    .map(|row| {
                        let mut cells = vec![
                            row.curve.clone(),
                            class_str(&row.class),
                            row.splitting.to_string(),
                            row.deg.to_string(),
                            row.mu_min.to_string(),
                        ];
                        if has_ref {
                            cells.push(row.reference.as_ref().map_or("-".into(), ToString::to_string));
                            cells.push(if row.discrepancy { "DIFFERS".into() } else { String::new() });
                        }
                        cells
                    })
                    .collect();
                let mut headers = vec!["curve", "class", "splitting", "deg", "mu_min"];
                if has_ref {
                    headers.extend(["literature", "discrepancy"]);
                }
                out.push_str(&table(&headers, &rows));
                for n in &r.notes {
                    let _ = writeln!(out, "note: {n}");
                }
            }
            Body::Nef(n) => {
                out.push_str(&verdict_line("nef", &n.nef));
                out.push_str(&verdict_line("ample", &n.ample));
            }
            Body::Mori(m) => {
                let rows: Vec<Vec<String>> = m
                    .iter()
                    .map(|g| {
                        vec![
                            g.name.clone(),
                            g.curve.clone().unwrap_or_else(|| "-".into()),
                            class_str(&g.pushforward),
                            g.xi.to_string(),
                            g.m.as_ref().map_or("-".into(), ToString::to_string),
                        ]
                    })
                    .collect();
                out.push_str(&table(&["generator", "curve", "pushforward", "xi.C", "m"], &rows));
            }
            Body::Check(h) => {
                out.push_str(&hypothesis_table(h));
                let _ = writeln!(out, "gating hypotheses: {}", if h.all_gating_pass() { "all pass" } else { "FAILED" });
            }
            Body::Seshadri(s) => {
                let _ = writeln!(out, "{}", s.theorem);
                let rows: Vec<Vec<String>> = s
                    .points
                    .iter()
                    .map(|p| {
                        let level = p.detail.as_ref().and_then(|d| d.level).map_or("-".into(), |l| l.to_string());
                        let status = match p.status {
                            PointStatus::Exact => "exact",
                            PointStatus::Interval => "interval",
                            PointStatus::HypothesisFailed => "hypothesis failed",
                            PointStatus::NotNef => "not nef",
                        };
                        vec![
                            p.point.clone(),
                            level,
                            status.to_string(),
                            p.value.as_ref().map_or("-".into(), ToString::to_string),
                        ]
                    })
                    .collect();
                out.push_str(&table(&["point", "level", "status", "epsilon"], &rows));
                for p in &s.points {
                    if let Some(d) = &p.detail {
                        if let Some(sc) = &d.slice_check {
                            let _ = writeln!(
                                out,
                                "{}: slice {}, recursive {}, level minimum {}",
                                p.point, sc.slice, sc.recursive, sc.corollary
                            );
                        }
                        for n in &d.notes {
                            let _ = writeln!(out, "{}: {n}", p.point);
                        }
                    }
                    if let Some(m) = &p.message {
                        let _ = writeln!(out, "{}: {m}", p.point);
                    }
                    if let Some(r) = &p.report {
                        out.push('\n');
                        out.push_str(&hypothesis_table(r));
                    }
                }
            }
        }
        if let Some(o) = &self.oracle {
            out.push('\n');
            let rows: Vec<Vec<String>> = o
                .checks
                .iter()
                .map(|c| vec![c.name.clone(), if c.passed { "pass".into() } else { "FAIL".into() }, c.detail.clone()])
                .collect();
            out.push_str(&table(&["oracle check", "status", "detail"], &rows));
        }
        out
    }
}
