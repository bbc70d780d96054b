//! Exact reference solvers: list-coloring search with singleton propagation
//! at every node, coloring counting, and brute-force formula evaluation.

use crate::formula::{Cnf3, NaeFormula};
use crate::graph::{Coloring, Instance, OrderedGraph};
use crate::kernel::ListState;
use crate::patterns::Pattern;
use itertools::Itertools;

/// Finds a proper list coloring or proves none exists.
///
/// Branches on the lowest surviving vertex, trying its colors in ascending
/// order, and propagates singletons after every choice. After the first
/// propagation the connected components of the surviving graph are searched
/// separately; the result is the same coloring the plain search finds.
pub fn solve_exact(inst: &Instance) -> Option<Coloring> {
    let mut state = ListState::from_instance(inst);
    state.propagate().ok()?;
    search_components(&state)
}

/// Same as [`solve_exact`] on the instance with some vertices pinned.
pub fn solve_pinned(inst: &Instance, pins: &[(usize, u32)]) -> Option<Coloring> {
    let mut state = ListState::from_instance(inst);
    for &(v, c) in pins {
        state.fix(v, c).ok()?;
    }
    state.propagate().ok()?;
    search_components(&state)
}

fn search_components(state: &ListState<'_>) -> Option<Coloring> {
    let (residual, index_map) = state.residual();
    let mut colors = vec![0u32; residual.n()];
    for comp in components(residual.graph()) {
        let sub = residual.induced(&comp).expect("component is increasing");
        let col = search(ListState::from_instance(&sub))?;
        for (i, &v) in comp.iter().enumerate() {
            colors[v] = col.color(i);
        }
    }
    Some(state.complete(&index_map, &Coloring(colors)))
}

/// Connected components, each as an increasing vertex list, ordered by first vertex.
pub fn components(g: &OrderedGraph) -> Vec<Vec<usize>> {
    let mut seen = vec![false; g.n()];
    let mut out = Vec::new();
    for root in 0..g.n() {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let mut comp = vec![root];
        let mut stack = vec![root];
        while let Some(v) = stack.pop() {
            for &w in g.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    comp.push(w);
                    stack.push(w);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

fn search(state: ListState<'_>) -> Option<Coloring> {
    let Some(v) = (0..state.lists().len()).find(|&v| !state.is_removed(v)) else {
        return state.forced_coloring();
    };
    for c in state.list(v).iter() {
        let mut child = state.clone();
        if child.fix(v, c).is_ok() && child.propagate().is_ok() {
            if let Some(col) = search(child) {
                return Some(col);
            }
        }
    }
    None
}

/// Number of proper list colorings.
pub fn count_colorings(inst: &Instance) -> u128 {
    let mut state = ListState::from_instance(inst);
    if state.propagate().is_err() {
        return 0;
    }
    count(&state)
}

// Propagation only removes colors no proper coloring can use, so counts are preserved.
fn count(state: &ListState<'_>) -> u128 {
    let Some(v) = (0..state.lists().len()).find(|&v| !state.is_removed(v)) else {
        return 1;
    };
    state
        .list(v)
        .iter()
        .map(|c| {
            let mut child = state.clone();
            if child.fix(v, c).is_ok() && child.propagate().is_ok() {
                count(&child)
            } else {
                0
            }
        })
        .sum()
}

/// Lexicographically first increasing vertex tuple inducing `p`, by trying
/// every tuple in order.
pub fn find_induced_brute(g: &OrderedGraph, p: &Pattern) -> Option<Vec<usize>> {
    let k = p.n();
    (0..g.n()).combinations(k).find(|t| {
        (0..k).all(|a| (a + 1..k).all(|b| g.has_edge(t[a], t[b]) == p.graph.has_edge(a, b)))
    })
}

/// Assignments in the fixed enumeration order: the integers from `2^n - 1`
/// down to `0`, where bit `i` is the value of variable `i + 1`.
/// The all-true assignment comes first.
pub fn assignments(num_vars: usize) -> impl Iterator<Item = Vec<bool>> {
    assert!(num_vars < 64, "too many variables to enumerate");
    (0..1u64 << num_vars)
        .rev()
        .map(move |mask| (0..num_vars).map(|i| mask >> i & 1 == 1).collect())
}

pub fn sat_brute(f: &Cnf3) -> Option<Vec<bool>> {
    assignments(f.num_vars()).find(|a| f.is_satisfied(a))
}

pub fn nae_brute(f: &NaeFormula) -> Option<Vec<bool>> {
    assignments(f.num_vars()).find(|a| f.is_satisfied(a))
}
