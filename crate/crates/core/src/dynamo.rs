//! Brute-force functional graph of θ on `P¹(F_{p^n})`.
//!
//! Vertex ids follow the generator-exponent labelling: `0..q−1` is `gᵏ`,
//! `q − 1` is the zero element and `q` is ∞.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::ffield::{FieldSpec, P1Element, PartitionClass};
use crate::predictor::{ComponentShape, Side};

/// Default cap on the number of vertices [`build_graph`] will enumerate.
pub const DEFAULT_VERTEX_BUDGET: u64 = 10_000_000;

/// `succ[v] = θ(v)` for every vertex id.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuccessorTable {
    order: u64,
    succ: Vec<u32>,
}

impl SuccessorTable {
    /// Field size `q`; there are `q + 1` vertices.
    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn len(&self) -> usize {
        self.succ.len()
    }

    pub fn is_empty(&self) -> bool {
        self.succ.is_empty()
    }

    pub fn successor(&self, v: u32) -> u32 {
        self.succ[v as usize]
    }

    pub fn successors(&self) -> &[u32] {
        &self.succ
    }

    pub fn zero_vertex(&self) -> u32 {
        (self.order - 1) as u32
    }

    pub fn infinity_vertex(&self) -> u32 {
        self.order as u32
    }
}

/// Vertex id of a point of `P¹`.
pub fn vertex_of(field: &FieldSpec, x: &P1Element) -> Result<u32> {
    Ok(match x {
        P1Element::Infinity => field.order() as u32,
        P1Element::Finite(v) if v.is_zero() => (field.order() - 1) as u32,
        P1Element::Finite(v) => field.dlog(v)? as u32,
    })
}

/// Point of `P¹` named by a vertex id.
pub fn element_of(field: &FieldSpec, v: u32) -> P1Element {
    let q = field.order();
    match v as u64 {
        k if k == q => P1Element::Infinity,
        k if k == q - 1 => P1Element::Finite(field.zero()),
        k => P1Element::Finite(field.pow(field.generator(), k)),
    }
}

pub fn build_graph(field: &FieldSpec) -> Result<SuccessorTable> {
    build_graph_with_budget(field, DEFAULT_VERTEX_BUDGET)
}

/// θ on every vertex, using `gᵏ + g^{−k}` and the discrete-log table.
pub fn build_graph_with_budget(field: &FieldSpec, budget: u64) -> Result<SuccessorTable> {
    let q = field.order();
    if q + 1 > budget {
        return Err(Error::resource(format!(
            "P1(F_{}^{}) has {} vertices, over the budget of {budget}",
            field.p(),
            field.n(),
            q + 1
        )));
    }
    let dlog = field.dlog_table()?;
    let powers = field.power_table();
    let group = q - 1;
    let zero = (q - 1) as u32;
    let inf = q as u32;
    let mut succ: Vec<u32> = (0..group)
        .into_par_iter()
        .map(|k| {
            let x = field.decode(powers[k as usize]);
            let x_inv = field.decode(powers[((group - k) % group) as usize]);
            let s = field.add(&x, &x_inv);
            if s.is_zero() {
                zero
            } else {
                dlog[field.encode(&s) as usize]
            }
        })
        .collect();
    succ.push(inf);
    succ.push(inf);
    Ok(SuccessorTable { order: q, succ })
}

/// Partition class of every vertex, indexed by id (`p = 5` only).
///
/// For `x = gᵏ`, `x³ + x = gᵏ(g²ᵏ + 1)` is a square iff it is zero or
/// `k + dlog(g²ᵏ + 1)` is even.
pub fn classify_vertices(field: &FieldSpec) -> Result<Vec<PartitionClass>> {
    if field.p() != 5 {
        return Err(Error::unsupported(format!(
            "the A/B/C partition is defined for p = 5 only (got p = {})",
            field.p()
        )));
    }
    let q = field.order();
    let group = q - 1;
    let dlog = field.dlog_table()?;
    let powers = field.power_table();
    let one = field.one();
    let odd_n = field.n() % 2 == 1;
    let mut out: Vec<PartitionClass> = (0..group)
        .into_par_iter()
        .map(|k| {
            if odd_n && (k == 0 || k == group / 2) {
                return PartitionClass::C;
            }
            let x2 = field.decode(powers[((2 * k) % group) as usize]);
            let s = field.add(&x2, &one);
            if s.is_zero() || (k + dlog[field.encode(&s) as usize] as u64) % 2 == 0 {
                PartitionClass::A
            } else {
                PartitionClass::B
            }
        })
        .collect();
    out.push(PartitionClass::A);
    out.push(PartitionClass::A);
    Ok(out)
}

/// Reversed-tree statistics for one cycle vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TreeProfile {
    pub depth: u32,
    /// Vertices at levels `1..=depth`.
    pub level_widths: Vec<u64>,
    /// For levels `0..=depth`: number of tree children → number of vertices.
    pub level_children: Vec<BTreeMap<u32, u64>>,
}

impl TreeProfile {
    pub fn size(&self) -> u64 {
        1 + self.level_widths.iter().sum::<u64>()
    }

    /// Children count → number of vertices, over the whole tree.
    pub fn children_histogram(&self) -> BTreeMap<u32, u64> {
        let mut out = BTreeMap::new();
        for level in &self.level_children {
            for (&k, &c) in level {
                *out.entry(k).or_insert(0) += c;
            }
        }
        out
    }
}

/// A successor table with cycles found and predecessor lists built.
pub struct FunctionalGraph {
    table: SuccessorTable,
    cyclic: Vec<bool>,
    /// Each cycle starts at its smallest vertex and follows θ.
    cycles: Vec<Vec<u32>>,
    pred_start: Vec<u32>,
    preds: Vec<u32>,
}

impl FunctionalGraph {
    /// Cycle detection by three-state colouring of the successor array.
    pub fn new(table: SuccessorTable) -> Self {
        const WHITE: u8 = 0;
        const GREY: u8 = 1;
        const BLACK: u8 = 2;
        let len = table.len();
        let mut colour = vec![WHITE; len];
        let mut cyclic = vec![false; len];
        let mut cycles = Vec::new();
        let mut path = Vec::new();
        for start in 0..len as u32 {
            if colour[start as usize] != WHITE {
                continue;
            }
            let mut v = start;
            while colour[v as usize] == WHITE {
                colour[v as usize] = GREY;
                path.push(v);
                v = table.successor(v);
            }
            if colour[v as usize] == GREY {
                // v closes a new cycle on the current path
                let pos = path.iter().position(|&u| u == v).expect("grey vertices lie on the path");
                let mut cycle = path[pos..].to_vec();
                for &u in &cycle {
                    cyclic[u as usize] = true;
                }
                let min_at = cycle
                    .iter()
                    .enumerate()
                    .min_by_key(|(_, &u)| u)
                    .map(|(i, _)| i)
                    .unwrap();
                cycle.rotate_left(min_at);
                cycles.push(cycle);
            }
            for &u in &path {
                colour[u as usize] = BLACK;
            }
            path.clear();
        }
        cycles.sort();

        let mut indeg = vec![0u32; len + 1];
        for &s in table.successors() {
            indeg[s as usize + 1] += 1;
        }
        for i in 0..len {
            indeg[i + 1] += indeg[i];
        }
        let pred_start = indeg;
        let mut fill = pred_start.clone();
        let mut preds = vec![0u32; len];
        for (v, &s) in table.successors().iter().enumerate() {
            preds[fill[s as usize] as usize] = v as u32;
            fill[s as usize] += 1;
        }
        FunctionalGraph {
            table,
            cyclic,
            cycles,
            pred_start,
            preds,
        }
    }

    pub fn table(&self) -> &SuccessorTable {
        &self.table
    }

    pub fn is_cyclic(&self, v: u32) -> bool {
        self.cyclic[v as usize]
    }

    pub fn cycles(&self) -> &[Vec<u32>] {
        &self.cycles
    }

    pub fn predecessors(&self, v: u32) -> &[u32] {
        let a = self.pred_start[v as usize] as usize;
        let b = self.pred_start[v as usize + 1] as usize;
        &self.preds[a..b]
    }

    /// Predecessors that are not on a cycle.
    fn tree_children(&self, v: u32) -> impl Iterator<Item = u32> + '_ {
        self.predecessors(v).iter().copied().filter(|&u| !self.cyclic[u as usize])
    }

    /// Breadth-first walk of the reversed tree rooted at a cycle vertex.
    pub fn tree_profile(&self, root: u32) -> Result<TreeProfile> {
        if root as usize >= self.table.len() || !self.is_cyclic(root) {
            return Err(Error::usage(format!("vertex {root} is not on a cycle")));
        }
        let mut level = vec![root];
        let mut widths = Vec::new();
        let mut level_children = Vec::new();
        loop {
            let mut next = Vec::new();
            let mut hist = BTreeMap::new();
            for &v in &level {
                let before = next.len();
                next.extend(self.tree_children(v));
                *hist.entry((next.len() - before) as u32).or_insert(0u64) += 1;
            }
            level_children.push(hist);
            if next.is_empty() {
                break;
            }
            widths.push(next.len() as u64);
            level = next;
        }
        Ok(TreeProfile {
            depth: widths.len() as u32,
            level_widths: widths,
            level_children,
        })
    }

    /// Number of steps from `v` to its cycle, bounded by the vertex count.
    pub fn steps_to_cycle(&self, mut v: u32) -> Option<usize> {
        for steps in 0..=self.table.len() {
            if self.is_cyclic(v) {
                return Some(steps);
            }
            v = self.table.successor(v);
        }
        None
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentSummary {
    /// Partition class of the cycle vertices (`p = 5` only).
    pub class: Option<PartitionClass>,
    pub cycle_length: u64,
    pub size: u64,
    /// Smallest vertex id on the cycle.
    pub cycle_min_vertex: u32,
    /// One profile per cycle vertex, in cycle order.
    pub roots: Vec<TreeProfile>,
}

impl ComponentSummary {
    /// The common tree profile, if every cycle vertex has the same one.
    pub fn uniform_tree(&self) -> Option<&TreeProfile> {
        let first = self.roots.first()?;
        self.roots.iter().all(|t| t == first).then_some(first)
    }

    /// For the comparison with the predictor: the tree rooted at the
    /// smallest vertex stands for the component.
    pub fn shape(&self) -> Option<ComponentShape> {
        let side = match self.class? {
            PartitionClass::A => Side::A,
            PartitionClass::B => Side::B,
            PartitionClass::C => return None,
        };
        let tree = &self.roots[0];
        Some(ComponentShape {
            side,
            cycle_length: self.cycle_length,
            size: self.size,
            depth: tree.depth,
            level_widths: tree.level_widths.clone(),
        })
    }
}

/// Empirical census of the whole graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphSummary {
    pub p: u32,
    pub n: usize,
    /// Sorted by cycle minimum vertex.
    pub components: Vec<ComponentSummary>,
    /// `|A|, |B|, |C|` (`p = 5` only).
    pub partition: Option<(u64, u64, u64)>,
    /// Cycle length → count, split by the class of the cycle vertices
    /// (`None` key when `p ≠ 5`).
    pub spectra: BTreeMap<Option<PartitionClass>, BTreeMap<u64, u64>>,
}

impl GraphSummary {
    pub fn total_vertices(&self) -> u64 {
        self.components.iter().map(|c| c.size).sum()
    }

    pub fn spectrum(&self, class: Option<PartitionClass>) -> BTreeMap<u64, u64> {
        self.spectra.get(&class).cloned().unwrap_or_default()
    }
}

/// Builds the graph over `field` and summarizes it.
pub fn census(field: &FieldSpec) -> Result<GraphSummary> {
    let graph = FunctionalGraph::new(build_graph(field)?);
    census_of(field, &graph)
}

pub fn census_of(field: &FieldSpec, graph: &FunctionalGraph) -> Result<GraphSummary> {
    let classes = if field.p() == 5 {
        Some(classify_vertices(field)?)
    } else {
        None
    };
    let class_of = |v: u32| classes.as_ref().map(|c| c[v as usize]);
    let mut components = Vec::with_capacity(graph.cycles().len());
    let mut spectra: BTreeMap<Option<PartitionClass>, BTreeMap<u64, u64>> = BTreeMap::new();
    for cycle in graph.cycles() {
        let roots = cycle
            .iter()
            .map(|&v| graph.tree_profile(v))
            .collect::<Result<Vec<_>>>()?;
        let size = roots.iter().map(TreeProfile::size).sum();
        let class = class_of(cycle[0]);
        *spectra
            .entry(class)
            .or_default()
            .entry(cycle.len() as u64)
            .or_insert(0) += 1;
        components.push(ComponentSummary {
            class,
            cycle_length: cycle.len() as u64,
            size,
            cycle_min_vertex: cycle[0],
            roots,
        });
    }
    let partition = classes.as_ref().map(|c| {
        c.iter().fold((0, 0, 0), |(a, b, cc), class| match class {
            PartitionClass::A => (a + 1, b, cc),
            PartitionClass::B => (a, b + 1, cc),
            PartitionClass::C => (a, b, cc + 1),
        })
    });
    Ok(GraphSummary {
        p: field.p(),
        n: field.n(),
        components,
        partition,
        spectra,
    })
}
