//! Explicit grid graphs, built edge by edge from a validated spec.

use std::collections::BTreeSet;

use crate::alphabet::WordKind;
use crate::error::Error;
use crate::family::GridSpec;

pub(super) const UP: usize = 0;
pub(super) const DOWN: usize = 1;
pub(super) const LEFT: usize = 2;
pub(super) const RIGHT: usize = 3;

/// A concrete grid: vertices in row-major order, undirected edges, and per
/// vertex the edge occupying each of its four ports (up, down, left, right).
///
/// This is the ground-truth object the transfer-matrix pipeline is checked
/// against; it knows nothing about columns or letters.
#[derive(Debug, Clone)]
pub struct GridGraph {
    spec: GridSpec,
    edges: Vec<(usize, usize)>,
    incident: Vec<Vec<usize>>,
    ports: Vec<[Option<usize>; 4]>,
}

impl GridGraph {
    pub fn build(spec: &GridSpec) -> Result<GridGraph, Error> {
        spec.check_geometric()?;
        let (m, n) = (spec.m(), spec.n());
        let mut graph = GridGraph {
            spec: *spec,
            edges: Vec::new(),
            incident: vec![Vec::new(); m * n],
            ports: vec![[None; 4]; m * n],
        };
        let mut seen = BTreeSet::new();

        for col in 1..=n {
            for row in 1..m {
                graph.add_edge(&mut seen, (row, col), DOWN, (row + 1, col), UP)?;
            }
            if spec.kind() == WordKind::Circular {
                graph.add_edge(&mut seen, (m, col), DOWN, (1, col), UP)?;
            }
        }
        for row in 1..=m {
            for col in 1..n {
                graph.add_edge(&mut seen, (row, col), RIGHT, (row, col + 1), LEFT)?;
            }
        }
        for row in 1..=m {
            if let Some(target) = spec.family().wrap_target(m, spec.twist(), row) {
                graph.add_edge(&mut seen, (row, n), RIGHT, (target, 1), LEFT)?;
            }
        }
        Ok(graph)
    }

    fn add_edge(
        &mut self,
        seen: &mut BTreeSet<(usize, usize)>,
        from: (usize, usize),
        from_port: usize,
        to: (usize, usize),
        to_port: usize,
    ) -> Result<(), Error> {
        let u = self.vertex(from.0, from.1);
        let v = self.vertex(to.0, to.1);
        let degenerate = |reason: String| Error::DegenerateGrid {
            family: self.spec.family().label(),
            m: self.spec.m(),
            n: self.spec.n(),
            reason,
        };
        if u == v {
            return Err(degenerate(format!(
                "edge from ({}, {}) back to itself",
                from.0, from.1
            )));
        }
        if !seen.insert((u.min(v), u.max(v))) {
            return Err(degenerate(format!(
                "doubled edge between ({}, {}) and ({}, {})",
                from.0, from.1, to.0, to.1
            )));
        }
        if self.ports[u][from_port].is_some() || self.ports[v][to_port].is_some() {
            return Err(degenerate(format!(
                "two edges claim one port at ({}, {})",
                from.0, from.1
            )));
        }
        let id = self.edges.len();
        self.edges.push((u, v));
        self.incident[u].push(id);
        self.incident[v].push(id);
        self.ports[u][from_port] = Some(id);
        self.ports[v][to_port] = Some(id);
        Ok(())
    }

    pub fn spec(&self) -> &GridSpec {
        &self.spec
    }

    pub fn vertex_count(&self) -> usize {
        self.incident.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn endpoints(&self, edge: usize) -> (usize, usize) {
        self.edges[edge]
    }

    pub fn incident(&self, vertex: usize) -> &[usize] {
        &self.incident[vertex]
    }

    pub fn degree(&self, vertex: usize) -> usize {
        self.incident[vertex].len()
    }

    /// Edge ids on the four ports of a vertex: `[up, down, left, right]`.
    pub fn ports(&self, vertex: usize) -> [Option<usize>; 4] {
        self.ports[vertex]
    }

    /// Row-major vertex id of 1-based coordinates.
    pub fn vertex(&self, row: usize, col: usize) -> usize {
        (row - 1) * self.spec.n() + (col - 1)
    }

    /// 1-based `(row, col)` of a vertex id.
    pub fn coords(&self, vertex: usize) -> (usize, usize) {
        (vertex / self.spec.n() + 1, vertex % self.spec.n() + 1)
    }
}
