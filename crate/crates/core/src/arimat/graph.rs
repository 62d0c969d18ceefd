use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{Pow, Signed};

use crate::exactmat::IntMatrix;
use crate::subset::Subset;

use super::group_list::GroupList;
use super::ArimatError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EdgeKind {
    Regular,
    Dotted,
}

impl FromStr for EdgeKind {
    type Err = String;
    fn from_str(s: &str) -> Result<EdgeKind, String> {
        match s {
            "regular" => Ok(EdgeKind::Regular),
            "dotted" => Ok(EdgeKind::Dotted),
            _ => Err(format!("unknown edge kind `{s}`, expected regular or dotted")),
        }
    }
}

impl fmt::Display for EdgeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EdgeKind::Regular => "regular",
            EdgeKind::Dotted => "dotted",
        })
    }
}

/// An oriented edge from `tail` to `head` (0-based vertices).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabelledEdge {
    pub tail: usize,
    pub head: usize,
    pub label: BigInt,
    pub kind: EdgeKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabelledGraph {
    pub vertices: usize,
    pub edges: Vec<LabelledEdge>,
}

impl LabelledGraph {
    pub fn new(vertices: usize, edges: Vec<LabelledEdge>) -> Result<LabelledGraph, ArimatError> {
        for (i, e) in edges.iter().enumerate() {
            if e.tail >= vertices || e.head >= vertices {
                return Err(ArimatError::BadGraph(format!("edge {} uses a vertex outside 1..={vertices}", i + 1)));
            }
            if e.tail == e.head {
                return Err(ArimatError::LoopEdge(i + 1));
            }
            if !e.label.is_positive() {
                return Err(ArimatError::BadGraph(format!("edge {} has non-positive label {}", i + 1, e.label)));
            }
        }
        Ok(LabelledGraph { vertices, edges })
    }

    /// Indices of regular edges; these are the elements of the list.
    pub fn regular_edges(&self) -> Vec<usize> {
        (0..self.edges.len()).filter(|&i| self.edges[i].kind == EdgeKind::Regular).collect()
    }

    /// Oriented incidence matrix scaled by labels: `-ℓ` at the tail, `+ℓ` at the head.
    pub fn incidence(&self) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.vertices, self.edges.len());
        for (j, e) in self.edges.iter().enumerate() {
            m.set(e.tail, j, -e.label.clone());
            m.set(e.head, j, e.label.clone());
        }
        m
    }

    /// The same graph with every label raised to the `k`-th power.
    pub fn power(&self, k: u32) -> LabelledGraph {
        let edges = self
            .edges
            .iter()
            .map(|e| LabelledEdge { label: Pow::pow(&e.label, k), ..e.clone() })
            .collect();
        LabelledGraph { vertices: self.vertices, edges }
    }
}

/// Regular edges as elements of `Z^V / ⟨dotted edges⟩`.
pub fn labelled_to_list(g: &LabelledGraph) -> Result<GroupList, ArimatError> {
    let g = LabelledGraph::new(g.vertices, g.edges.clone())?;
    let reg = g.regular_edges();
    let dotted: Vec<usize> = (0..g.edges.len()).filter(|i| !reg.contains(i)).collect();
    let mut order = reg.clone();
    order.extend(&dotted);
    let m = g.incidence().select_columns(&order);
    let y = Subset::from_indices(reg.len()..order.len());
    Ok(GroupList::quotient(&m, y))
}

/// The list of the graph with labels `ℓ^k`.
pub fn labelled_power(g: &LabelledGraph, k: u32) -> Result<GroupList, ArimatError> {
    labelled_to_list(&g.power(k))
}
