//! Serializable reports. Field order and map ordering are fixed so that
//! output is byte-stable.

use std::collections::BTreeMap;
use std::fmt::Write;

use serde::{Deserialize, Serialize};
use thetagraph_core::predictor::{PredictedCensus, SidePrediction, TreeShape};
use thetagraph_core::verify::VerifyReport;
use thetagraph_core::{ComponentSummary, FieldSpec, GraphSummary, PartitionClass, Side};

pub const SCHEMA: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ReportKind {
    Predict,
    Enumerate,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleEntry {
    pub length: u64,
    pub count: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeReport {
    pub depth: u32,
    pub level_widths: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SideReport {
    /// `π₅ⁿ ∓ 1` and its factorization (predictions only).
    pub element: Option<String>,
    pub factorization: Option<String>,
    pub cycles: Vec<CycleEntry>,
    /// Tree on ordinary cycle vertices (predictions only).
    pub tree: Option<TreeReport>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sides {
    #[serde(rename = "A")]
    pub a: Option<SideReport>,
    #[serde(rename = "B")]
    pub b: Option<SideReport>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionReport {
    #[serde(rename = "A")]
    pub a: u64,
    #[serde(rename = "B")]
    pub b: u64,
    #[serde(rename = "C")]
    pub c: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentReport {
    pub side: Option<String>,
    pub cycle_length: u64,
    pub size: u64,
    pub depth: u32,
    pub level_widths: Vec<u64>,
    /// Smallest vertex id on the cycle (enumeration only).
    pub cycle_min_vertex: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub schema: u32,
    pub kind: ReportKind,
    pub p: u32,
    pub n: u32,
    /// Modulus coefficients, constant term first.
    pub modulus: Vec<u32>,
    /// `None` when `p ≠ 5`.
    pub sides: Option<Sides>,
    pub infinity_tree: Option<TreeReport>,
    pub partition: Option<PartitionReport>,
    pub components: Vec<ComponentReport>,
    /// All cycles regardless of side.
    pub spectrum: Vec<CycleEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyDocument {
    pub schema: u32,
    pub n: u32,
    pub passed: bool,
    pub mismatches: Vec<String>,
}

fn entries(map: &BTreeMap<u64, u64>) -> Vec<CycleEntry> {
    map.iter()
        .map(|(&length, &count)| CycleEntry { length, count })
        .collect()
}

fn tree(t: &TreeShape) -> TreeReport {
    TreeReport {
        depth: t.depth,
        level_widths: t.level_widths.clone(),
    }
}

fn side_report(s: &SidePrediction) -> SideReport {
    SideReport {
        element: Some(s.element.to_string()),
        factorization: Some(s.factorization.to_string()),
        cycles: entries(&s.spectrum.entries),
        tree: Some(tree(&s.tree)),
    }
}

fn merged(maps: impl IntoIterator<Item = BTreeMap<u64, u64>>) -> Vec<CycleEntry> {
    let mut all = BTreeMap::new();
    for m in maps {
        for (l, c) in m {
            *all.entry(l).or_insert(0) += c;
        }
    }
    entries(&all)
}

/// Prediction report; `only` restricts the sides (components are kept whole).
pub fn from_prediction(field: &FieldSpec, pred: &PredictedCensus, only: Option<Side>) -> Report {
    let keep = |s: Side| only.map_or(true, |o| o == s);
    let sides = Sides {
        a: keep(Side::A).then(|| side_report(&pred.a)),
        b: keep(Side::B).then(|| side_report(&pred.b)),
    };
    Report {
        schema: SCHEMA,
        kind: ReportKind::Predict,
        p: field.p(),
        n: pred.n,
        modulus: field.modulus().to_vec(),
        sides: Some(sides),
        infinity_tree: Some(tree(&pred.infinity_tree)),
        partition: Some(PartitionReport {
            a: pred.partition.a,
            b: pred.partition.b,
            c: pred.partition.c,
        }),
        components: pred
            .components
            .iter()
            .filter(|c| keep(c.side))
            .map(|c| ComponentReport {
                side: Some(c.side.to_string()),
                cycle_length: c.cycle_length,
                size: c.size,
                depth: c.depth,
                level_widths: c.level_widths.clone(),
                cycle_min_vertex: None,
            })
            .collect(),
        spectrum: merged([&pred.a, &pred.b].into_iter().filter(|s| keep(s.side)).map(|s| s.spectrum.entries.clone())),
    }
}

fn component(c: &ComponentSummary) -> ComponentReport {
    let t = &c.roots[0];
    ComponentReport {
        side: c.class.map(|k| format!("{k:?}")),
        cycle_length: c.cycle_length,
        size: c.size,
        depth: t.depth,
        level_widths: t.level_widths.clone(),
        cycle_min_vertex: Some(c.cycle_min_vertex),
    }
}

/// Enumeration report; side data and the partition only exist for `p = 5`.
pub fn from_census(field: &FieldSpec, census: &GraphSummary) -> Report {
    let tagged = census.partition.is_some();
    let side = |class| SideReport {
        element: None,
        factorization: None,
        cycles: entries(&census.spectrum(Some(class))),
        tree: None,
    };
    Report {
        schema: SCHEMA,
        kind: ReportKind::Enumerate,
        p: census.p,
        n: census.n as u32,
        modulus: field.modulus().to_vec(),
        sides: tagged.then(|| Sides {
            a: Some(side(PartitionClass::A)),
            b: Some(side(PartitionClass::B)),
        }),
        infinity_tree: None,
        partition: census.partition.map(|(a, b, c)| PartitionReport { a, b, c }),
        components: census.components.iter().map(component).collect(),
        spectrum: merged(census.spectra.values().cloned()),
    }
}

pub fn verify_document(report: &VerifyReport) -> VerifyDocument {
    VerifyDocument {
        schema: SCHEMA,
        n: report.n,
        passed: report.passed(),
        mismatches: report.mismatches.iter().map(|m| m.to_string()).collect(),
    }
}

/// Polynomial in `t` from coefficients, constant term first.
pub fn poly_string(coeffs: &[u32]) -> String {
    let mut terms = Vec::new();
    for (k, &c) in coeffs.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let coef = if c == 1 && k > 0 { String::new() } else { c.to_string() };
        terms.push(match k {
            0 => coef,
            1 => format!("{coef}t"),
            _ => format!("{coef}t^{k}"),
        });
    }
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join("+")
    }
}

fn spectrum_text(cycles: &[CycleEntry]) -> String {
    let parts: Vec<String> = cycles.iter().map(|e| format!("{}x{}", e.length, e.count)).collect();
    format!("{{{}}}", parts.join(", "))
}

fn tree_text(t: &TreeReport) -> String {
    format!("depth {}, widths {:?}", t.depth, t.level_widths)
}

/// Human-readable rendering.
pub fn render_text(r: &Report) -> String {
    let mut out = String::new();
    let w = &mut out;
    let what = match r.kind {
        ReportKind::Predict => "prediction",
        ReportKind::Enumerate => "enumeration",
    };
    let _ = writeln!(w, "{what} for P1(F_{}^{}), modulus {}", r.p, r.n, poly_string(&r.modulus));
    if let Some(sides) = &r.sides {
        for (name, side) in [("A", &sides.a), ("B", &sides.b)] {
            let Some(s) = side else { continue };
            let _ = write!(w, "{name}: {}", spectrum_text(&s.cycles));
            if let Some(t) = &s.tree {
                let _ = write!(w, "; tree {}", tree_text(t));
            }
            let _ = writeln!(w);
            if let (Some(e), Some(f)) = (&s.element, &s.factorization) {
                let _ = writeln!(w, "   {e} = {f}");
            }
        }
    } else {
        let _ = writeln!(w, "cycles: {}", spectrum_text(&r.spectrum));
    }
    if let Some(t) = &r.infinity_tree {
        let _ = writeln!(w, "inf: tree {}", tree_text(t));
    }
    if let Some(p) = &r.partition {
        let _ = writeln!(w, "partition: |A|={} |B|={} |C|={}", p.a, p.b, p.c);
    }
    let total: u64 = r.components.iter().map(|c| c.size).sum();
    let _ = writeln!(w, "components: {} ({} vertices)", r.components.len(), total);
    for c in &r.components {
        let side = c.side.as_deref().unwrap_or("-");
        let _ = write!(
            w,
            "  {side} cycle {} size {} depth {} widths {:?}",
            c.cycle_length, c.size, c.depth, c.level_widths
        );
        if let Some(v) = c.cycle_min_vertex {
            let _ = write!(w, " at {v}");
        }
        let _ = writeln!(w);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomials() {
        assert_eq!(poly_string(&[3, 3, 0, 1]), "t^3+3t+3");
        assert_eq!(poly_string(&[0, 1]), "t");
        assert_eq!(poly_string(&[0, 0]), "0");
        assert_eq!(poly_string(&[1, 0, 2]), "2t^2+1");
    }

    #[test]
    fn spectrum_formatting() {
        let s = [CycleEntry { length: 1, count: 1 }, CycleEntry { length: 9, count: 2 }];
        assert_eq!(spectrum_text(&s), "{1x1, 9x2}");
        assert_eq!(spectrum_text(&[]), "{}");
    }
}
