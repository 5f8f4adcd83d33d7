//! Graphviz rendering of a successor table.
//!
//! One edge line per vertex, in vertex-id order: generator exponents
//! ascending, then `zero`, then `inf`.

use std::fmt::Write;

use crate::dynamo::{element_of, SuccessorTable};
use crate::ffield::{FieldSpec, P1Element};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum LabelStyle {
    /// Exponent `k` of `gᵏ`, plus `zero` and `inf`.
    #[default]
    Exponent,
    /// Quoted polynomial in `t`, plus `inf`.
    Poly,
}

fn label(field: &FieldSpec, table: &SuccessorTable, v: u32, style: LabelStyle) -> String {
    match style {
        LabelStyle::Exponent if v == table.infinity_vertex() => "inf".to_string(),
        LabelStyle::Exponent if v == table.zero_vertex() => "zero".to_string(),
        LabelStyle::Exponent => v.to_string(),
        LabelStyle::Poly => match element_of(field, v) {
            P1Element::Infinity => "inf".to_string(),
            P1Element::Finite(x) => format!("\"{x}\""),
        },
    }
}

fn render(
    field: &FieldSpec,
    table: &SuccessorTable,
    style: LabelStyle,
    vertices: impl Iterator<Item = u32>,
) -> String {
    let mut out = String::from("digraph{\n");
    for v in vertices {
        let s = table.successor(v);
        writeln!(
            out,
            "{} -> {};",
            label(field, table, v, style),
            label(field, table, s, style)
        )
        .expect("writing to a String cannot fail");
    }
    out.push_str("}\n");
    out
}

/// The whole graph as one `digraph`.
pub fn to_dot(field: &FieldSpec, table: &SuccessorTable, style: LabelStyle) -> String {
    render(field, table, style, 0..table.len() as u32)
}

/// One `digraph` per connected component, ordered by smallest vertex id.
pub fn split_components(field: &FieldSpec, table: &SuccessorTable, style: LabelStyle) -> Vec<String> {
    let comp = component_ids(table);
    let count = comp.iter().copied().max().map_or(0, |m| m as usize + 1);
    (0..count as u32)
        .map(|c| {
            render(
                field,
                table,
                style,
                (0..table.len() as u32).filter(|&v| comp[v as usize] == c),
            )
        })
        .collect()
}

/// Component index per vertex, numbered by first appearance in id order.
fn component_ids(table: &SuccessorTable) -> Vec<u32> {
    // union-find over the edges v -> succ(v)
    let len = table.len();
    let mut parent: Vec<u32> = (0..len as u32).collect();
    fn find(parent: &mut [u32], mut v: u32) -> u32 {
        while parent[v as usize] != v {
            parent[v as usize] = parent[parent[v as usize] as usize];
            v = parent[v as usize];
        }
        v
    }
    for v in 0..len as u32 {
        let a = find(&mut parent, v);
        let b = find(&mut parent, table.successor(v));
        if a != b {
            parent[a.max(b) as usize] = a.min(b);
        }
    }
    let mut ids = vec![u32::MAX; len];
    let mut next = 0;
    let mut out = Vec::with_capacity(len);
    for v in 0..len as u32 {
        let r = find(&mut parent, v) as usize;
        if ids[r] == u32::MAX {
            ids[r] = next;
            next += 1;
        }
        out.push(ids[r]);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamo::build_graph;

    #[test]
    fn f5_graph() {
        let f = FieldSpec::new(5, 1).unwrap();
        let t = build_graph(&f).unwrap();
        let dot = to_dot(&f, &t, LabelStyle::Exponent);
        assert_eq!(
            dot,
            "digraph{\n0 -> 1;\n1 -> zero;\n2 -> 3;\n3 -> zero;\nzero -> inf;\ninf -> inf;\n}\n"
        );
        assert_eq!(split_components(&f, &t, LabelStyle::Exponent), vec![dot]);
    }

    #[test]
    fn poly_labels() {
        let f = FieldSpec::new(5, 1).unwrap();
        let t = build_graph(&f).unwrap();
        let dot = to_dot(&f, &t, LabelStyle::Poly);
        assert!(dot.contains("\"1\" -> \"2\";"));
        assert!(dot.contains("\"0\" -> inf;"));
    }

    #[test]
    fn f125_splits_into_four() {
        let f = FieldSpec::new(5, 3).unwrap();
        let t = build_graph(&f).unwrap();
        let parts = split_components(&f, &t, LabelStyle::Exponent);
        assert_eq!(parts.len(), 4);
        let edges: usize = parts.iter().map(|p| p.lines().count() - 2).sum();
        assert_eq!(edges, 126);
    }
}
