//! Prediction versus enumeration.

use std::collections::BTreeMap;
use std::fmt;

use crate::dynamo::{census, GraphSummary};
use crate::error::{Error, Result};
use crate::ffield::{FieldSpec, PartitionClass};
use crate::predictor::{ComponentShape, PartitionSizes, PredictedCensus, Predictor, Side, TreeShape};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Mismatch {
    Spectrum {
        side: Side,
        predicted: BTreeMap<u64, u64>,
        observed: BTreeMap<u64, u64>,
    },
    Partition {
        predicted: PartitionSizes,
        observed: PartitionSizes,
    },
    VertexTotal {
        predicted: u64,
        observed: u64,
    },
    /// Components present on one side of the comparison only (multiset difference).
    Components {
        missing: Vec<ComponentShape>,
        unexpected: Vec<ComponentShape>,
    },
    /// A cycle vertex whose tree breaks the predicted width/children pattern.
    TreeRule {
        vertex: u32,
        detail: String,
    },
    /// A cycle made of C-class vertices, which the partition rules out.
    CycleInC {
        vertex: u32,
    },
    /// The predictor broke one of its own counting identities.
    Prediction(String),
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mismatch::Spectrum {
                side,
                predicted,
                observed,
            } => write!(
                f,
                "side {side} cycle spectrum: predicted {} observed {}",
                fmt_spectrum(predicted),
                fmt_spectrum(observed)
            ),
            Mismatch::Partition {
                predicted,
                observed,
            } => write!(
                f,
                "partition |A|,|B|,|C|: predicted {},{},{} observed {},{},{}",
                predicted.a, predicted.b, predicted.c, observed.a, observed.b, observed.c
            ),
            Mismatch::VertexTotal {
                predicted,
                observed,
            } => write!(f, "vertex total: predicted {predicted} observed {observed}"),
            Mismatch::Components {
                missing,
                unexpected,
            } => {
                write!(f, "components:")?;
                for c in missing {
                    write!(f, "\n  - predicted only: {}", fmt_shape(c))?;
                }
                for c in unexpected {
                    write!(f, "\n  + observed only:  {}", fmt_shape(c))?;
                }
                Ok(())
            }
            Mismatch::TreeRule { vertex, detail } => {
                write!(f, "tree rooted at vertex {vertex}: {detail}")
            }
            Mismatch::CycleInC { vertex } => write!(f, "cycle through C-vertex {vertex}"),
            Mismatch::Prediction(detail) => write!(f, "prediction is inconsistent: {detail}"),
        }
    }
}

pub(crate) fn fmt_spectrum(s: &BTreeMap<u64, u64>) -> String {
    let parts: Vec<String> = s.iter().map(|(l, c)| format!("{l}x{c}")).collect();
    format!("{{{}}}", parts.join(", "))
}

fn fmt_shape(c: &ComponentShape) -> String {
    format!(
        "side {} cycle {} size {} depth {} widths {:?}",
        c.side, c.cycle_length, c.size, c.depth, c.level_widths
    )
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub n: u32,
    pub mismatches: Vec<Mismatch>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            return write!(f, "PASS n={}", self.n);
        }
        write!(f, "FAIL n={} ({} mismatches)", self.n, self.mismatches.len())?;
        for m in &self.mismatches {
            write!(f, "\n{m}")?;
        }
        Ok(())
    }
}

/// Checks every cycle vertex's tree against the predicted shapes.
pub fn audit_trees(predicted: &PredictedCensus, observed: &GraphSummary) -> Vec<Mismatch> {
    let mut out = Vec::new();
    for comp in &observed.components {
        let side = match comp.class {
            Some(PartitionClass::A) => Side::A,
            Some(PartitionClass::B) => Side::B,
            _ => {
                out.push(Mismatch::CycleInC {
                    vertex: comp.cycle_min_vertex,
                });
                continue;
            }
        };
        // ∞ is the largest vertex id and the only fixed point
        let is_infinity = side == Side::A && comp.cycle_length == 1;
        let expected: &TreeShape = if is_infinity {
            &predicted.infinity_tree
        } else {
            &predicted.side(side).tree
        };
        for tree in &comp.roots {
            let mut problems = Vec::new();
            if tree.level_widths != expected.level_widths {
                problems.push(format!(
                    "widths {:?}, expected {:?}",
                    tree.level_widths, expected.level_widths
                ));
            }
            for (level, hist) in tree.level_children.iter().enumerate() {
                let want = expected.expected_children(level as u32) as u32;
                if let Some((&k, _)) = hist.iter().find(|(&k, _)| k != want) {
                    problems.push(format!(
                        "a level-{level} vertex has {k} children, expected {want}"
                    ));
                }
            }
            if !problems.is_empty() {
                out.push(Mismatch::TreeRule {
                    vertex: comp.cycle_min_vertex,
                    detail: problems.join("; "),
                });
                break;
            }
        }
    }
    out
}

/// Full comparison of a prediction with an enumeration of the same field.
pub fn compare(predicted: &PredictedCensus, observed: &GraphSummary) -> VerifyReport {
    let mut mismatches = Vec::new();
    for side in [Side::A, Side::B] {
        let class = match side {
            Side::A => PartitionClass::A,
            Side::B => PartitionClass::B,
        };
        let p = predicted.side(side).spectrum.entries.clone();
        let o = observed.spectrum(Some(class));
        if p != o {
            mismatches.push(Mismatch::Spectrum {
                side,
                predicted: p,
                observed: o,
            });
        }
    }
    if let Some((a, b, c)) = observed.partition {
        let obs = PartitionSizes { a, b, c };
        if obs != predicted.partition {
            mismatches.push(Mismatch::Partition {
                predicted: predicted.partition,
                observed: obs,
            });
        }
    }
    if predicted.total_vertices() != observed.total_vertices() {
        mismatches.push(Mismatch::VertexTotal {
            predicted: predicted.total_vertices(),
            observed: observed.total_vertices(),
        });
    }

    let mut counts: BTreeMap<ComponentShape, i64> = BTreeMap::new();
    for c in &predicted.components {
        *counts.entry(c.clone()).or_insert(0) += 1;
    }
    for c in observed.components.iter().filter_map(|c| c.shape()) {
        *counts.entry(c).or_insert(0) -= 1;
    }
    let mut missing = Vec::new();
    let mut unexpected = Vec::new();
    for (shape, k) in counts {
        for _ in 0..k.max(0) {
            missing.push(shape.clone());
        }
        for _ in 0..(-k).max(0) {
            unexpected.push(shape.clone());
        }
    }
    if !missing.is_empty() || !unexpected.is_empty() {
        mismatches.push(Mismatch::Components {
            missing,
            unexpected,
        });
    }
    mismatches.extend(audit_trees(predicted, observed));
    VerifyReport {
        n: predicted.n,
        mismatches,
    }
}

/// Predicts and enumerates `P¹(F_{5^n})` (default modulus) and compares.
pub fn verify(n: u32, predictor: &Predictor) -> Result<VerifyReport> {
    let field = FieldSpec::new(5, n as usize)?;
    verify_field(&field, predictor)
}

pub fn verify_field(field: &FieldSpec, predictor: &Predictor) -> Result<VerifyReport> {
    if field.p() != 5 {
        return Err(Error::unsupported("verification needs p = 5"));
    }
    let observed = census(field)?;
    match predictor.predict_summary(field.n() as u32) {
        Ok(predicted) => Ok(compare(&predicted, &observed)),
        Err(Error::Inconsistent(detail)) => Ok(VerifyReport {
            n: field.n() as u32,
            mismatches: vec![Mismatch::Prediction(detail)],
        }),
        Err(e) => Err(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_fields_pass() {
        for n in 1..=3 {
            let r = verify(n, &Predictor::default()).unwrap();
            assert!(r.passed(), "{r}");
        }
    }

    #[test]
    fn broken_rule_is_reported() {
        let r = verify(3, &Predictor::default().with_rule(crate::EpsilonRule::Inverted)).unwrap();
        assert!(!r.passed());
    }

    #[test]
    fn report_formatting() {
        let r = VerifyReport {
            n: 3,
            mismatches: vec![Mismatch::VertexTotal {
                predicted: 1,
                observed: 2,
            }],
        };
        assert_eq!(r.to_string(), "FAIL n=3 (1 mismatches)\nvertex total: predicted 1 observed 2");
    }
}
