//! The annotated P-graph of a Pommaret basis.

use std::fmt::Write as _;

use crate::basis::PommaretBasis;
use crate::error::{Error, Result};
use crate::monomial::{Monomial, Ring};

/// Edge `h_source -> h_target` obtained from the non-multiplicative variable
/// `var`, labelled with `t = x_var * h_source / h_target`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PEdge {
    pub source: usize,
    pub target: usize,
    pub var: usize,
    pub t: Monomial,
}

#[derive(Clone, Debug)]
pub struct PGraph {
    vertices: Vec<Monomial>,
    edges: Vec<PEdge>,
}

/// Multidegree of a path together with its validity (`md == 1`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathDegree {
    pub md: Monomial,
    pub valid: bool,
}

pub fn build_p_graph(basis: &PommaretBasis) -> PGraph {
    let mut edges = Vec::new();
    for alpha in 0..basis.len() {
        for k in basis.non_multiplicative(alpha).iter() {
            let d = basis.delta_map(alpha, k).expect("k is non-multiplicative");
            edges.push(PEdge {
                source: alpha,
                target: d.target,
                var: k,
                t: d.t.clone(),
            });
        }
    }
    PGraph {
        vertices: basis.elements().to_vec(),
        edges,
    }
}

impl PGraph {
    pub fn vertices(&self) -> &[Monomial] {
        &self.vertices
    }

    pub fn edges(&self) -> &[PEdge] {
        &self.edges
    }

    /// Index of the edge leaving `source` along variable `var`.
    pub fn edge_index(&self, source: usize, var: usize) -> Option<usize> {
        self.edges
            .iter()
            .position(|e| e.source == source && e.var == var)
    }

    /// Product of the `t` labels along `path` (a list of edge indices).
    /// Consecutive edges must connect, and edge variables must strictly
    /// increase along the path.
    pub fn path_multidegree(&self, path: &[usize]) -> Result<PathDegree> {
        let n = self.vertices.first().map_or(1, Monomial::arity);
        let mut md = Monomial::one(n);
        for (pos, &e) in path.iter().enumerate() {
            let edge = &self.edges[e];
            if pos > 0 {
                let prev = &self.edges[path[pos - 1]];
                if prev.target != edge.source {
                    return Err(Error::NotAPath(path[pos - 1], e));
                }
                if prev.var >= edge.var {
                    return Err(Error::VariablesNotIncreasing);
                }
            }
            md = md.mul(&edge.t);
        }
        let valid = md.is_one();
        Ok(PathDegree { md, valid })
    }

    /// Graphviz rendering; node ids are the monomial strings.
    pub fn to_dot(&self, ring: &Ring) -> String {
        let mut out = String::from("digraph pgraph {\n");
        for v in &self.vertices {
            let _ = writeln!(out, "  \"{}\";", ring.format(v));
        }
        for e in &self.edges {
            let _ = writeln!(
                out,
                "  \"{}\" -> \"{}\" [label=\"{} | t={}\"];",
                ring.format(&self.vertices[e.source]),
                ring.format(&self.vertices[e.target]),
                ring.name(e.var),
                ring.format(&e.t)
            );
        }
        out.push_str("}\n");
        out
    }
}
