//! Exhaustive enumeration of 2-factors by backtracking.
//!
//! Vertices are settled in row-major order; at each one we branch over the
//! ways to bring its degree to exactly two using its still-undecided edges.
//! Every edge joins the current vertex to a later one by construction, so a
//! single left-to-right sweep decides the whole graph. Subsets are tried in
//! ascending edge order, which makes the visit order (and any census built
//! from it) deterministic.

use std::collections::BTreeMap;

use crate::config::Limits;
use crate::error::Error;

use super::grid::GridGraph;

/// An edge subset in which every vertex has degree exactly two.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoFactor {
    in_factor: Vec<bool>,
}

impl TwoFactor {
    pub(crate) fn from_flags(in_factor: Vec<bool>) -> TwoFactor {
        TwoFactor { in_factor }
    }

    pub fn contains(&self, edge: usize) -> bool {
        self.in_factor[edge]
    }

    pub fn edge_flags(&self) -> &[bool] {
        &self.in_factor
    }

    pub fn edge_count(&self) -> usize {
        self.in_factor.iter().filter(|&&b| b).count()
    }

    /// Number of disjoint cycles the chosen edges form.
    pub fn cycle_count(&self, graph: &GridGraph) -> usize {
        let mut seen = vec![false; graph.vertex_count()];
        let mut cycles = 0;
        for start in 0..graph.vertex_count() {
            if seen[start] {
                continue;
            }
            cycles += 1;
            let mut at = start;
            let mut via = usize::MAX;
            loop {
                seen[at] = true;
                let step = graph
                    .incident(at)
                    .iter()
                    .copied()
                    .find(|&e| self.in_factor[e] && e != via)
                    .expect("factor is not 2-regular");
                let (a, b) = graph.endpoints(step);
                at = if a == at { b } else { a };
                via = step;
                if at == start {
                    break;
                }
            }
        }
        cycles
    }
}

/// Totals of an exhaustive enumeration, split by cycle count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Census {
    pub total: u128,
    pub by_cycle_count: BTreeMap<usize, u128>,
}

/// Count every 2-factor of the grid and histogram them by cycle count.
pub fn census(graph: &GridGraph, limits: &Limits) -> Result<Census, Error> {
    let mut total: u128 = 0;
    let mut by_cycle_count = BTreeMap::new();
    for_each_two_factor(graph, limits, |factor| {
        total += 1;
        *by_cycle_count.entry(factor.cycle_count(graph)).or_insert(0) += 1;
    })?;
    Ok(Census {
        total,
        by_cycle_count,
    })
}

/// Visit every 2-factor of the grid once, in a deterministic order.
pub fn for_each_two_factor<F>(graph: &GridGraph, limits: &Limits, mut visit: F) -> Result<(), Error>
where
    F: FnMut(&TwoFactor),
{
    if graph.vertex_count() > limits.census_vertex_cap {
        return Err(Error::CensusCap {
            vertices: graph.vertex_count(),
            cap: limits.census_vertex_cap,
        });
    }
    let mut state: Vec<Option<bool>> = vec![None; graph.edge_count()];
    settle(graph, 0, &mut state, &mut visit);
    Ok(())
}

fn settle<F: FnMut(&TwoFactor)>(
    graph: &GridGraph,
    vertex: usize,
    state: &mut Vec<Option<bool>>,
    visit: &mut F,
) {
    if vertex == graph.vertex_count() {
        let flags = state.iter().map(|s| *s == Some(true)).collect();
        visit(&TwoFactor::from_flags(flags));
        return;
    }
    let chosen = graph
        .incident(vertex)
        .iter()
        .filter(|&&e| state[e] == Some(true))
        .count();
    if chosen > 2 {
        return;
    }
    let need = 2 - chosen;
    let mut open: Vec<usize> = graph
        .incident(vertex)
        .iter()
        .copied()
        .filter(|&e| state[e].is_none())
        .collect();
    if open.len() < need {
        return;
    }
    open.sort_unstable();

    // an edge may be taken only if its far end still has room
    let fits = |state: &[Option<bool>], edge: usize| {
        let (a, b) = graph.endpoints(edge);
        let other = if a == vertex { b } else { a };
        let taken = graph
            .incident(other)
            .iter()
            .filter(|&&e| state[e] == Some(true))
            .count();
        taken < 2
    };

    let mut descend = |state: &mut Vec<Option<bool>>, picks: &[usize]| {
        for &e in &open {
            state[e] = Some(picks.contains(&e));
        }
        settle(graph, vertex + 1, state, visit);
        for &e in &open {
            state[e] = None;
        }
    };

    match need {
        0 => descend(state, &[]),
        1 => {
            for &e in &open {
                if fits(state, e) {
                    descend(state, &[e]);
                }
            }
        }
        _ => {
            for i in 0..open.len() {
                if !fits(state, open[i]) {
                    continue;
                }
                for j in i + 1..open.len() {
                    if fits(state, open[j]) {
                        descend(state, &[open[i], open[j]]);
                    }
                }
            }
        }
    }
}
