//! Compiles a 3-CNF formula into a list 4-coloring instance on a
//! fork-tail-free ordered graph, and decodes colorings back to assignments.
//!
//! Every variable gets a vertex with list {1,2}; color 1 means true. Every
//! occurrence gets a vertex with list {3,4} (color 3 when the literal is true)
//! and two vertices that tie it to its variable. Every clause gets four
//! vertices that admit a coloring only if one of its literals is true.
//! Vertices are ordered occurrence ties, occurrences, clauses, variables.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::formula::Cnf3;
use crate::graph::{ensure_proper, ColorSet, Coloring, Instance, OrderedGraph};
use crate::patterns::{find_induced, fork_tail};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Occurrence {
    /// 1-based variable.
    pub var: usize,
    /// 0-based clause index.
    pub clause: usize,
    pub positive: bool,
    pub y: usize,
    pub z1: usize,
    pub z2: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClauseVertices {
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub d: usize,
}

/// Where each part of the formula ended up in the compiled instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CnfLayout {
    pub num_vars: usize,
    pub formula: Vec<[i32; 3]>,
    /// `variables[i]` is the vertex of variable `i + 1`.
    pub variables: Vec<usize>,
    /// Sorted by (variable, clause).
    pub occurrences: Vec<Occurrence>,
    pub clauses: Vec<ClauseVertices>,
    /// First vertex of the tie, occurrence, clause and variable blocks, then `n`.
    pub block_starts: [usize; 5],
}

impl CnfLayout {
    pub fn formula(&self) -> Result<Cnf3> {
        Cnf3::new(self.num_vars, self.formula.clone())
    }
}

pub fn build_cnf_instance(f: &Cnf3) -> Result<(Instance, CnfLayout)> {
    let n_vars = f.num_vars();
    let m = f.clauses().len();
    let mut occ: Vec<(usize, usize, bool)> = f
        .clauses()
        .iter()
        .enumerate()
        .flat_map(|(j, c)| c.iter().map(move |&lit| (lit.unsigned_abs() as usize, j, lit > 0)))
        .collect();
    occ.sort_unstable();
    let t = occ.len();
    let z_start = 0;
    let y_start = 2 * t;
    let c_start = y_start + t;
    let x_start = c_start + 4 * m;
    let n = x_start + n_vars;

    let occurrences: Vec<Occurrence> = occ
        .iter()
        .enumerate()
        .map(|(o, &(var, clause, positive))| Occurrence {
            var,
            clause,
            positive,
            y: y_start + o,
            z1: z_start + 2 * o,
            z2: z_start + 2 * o + 1,
        })
        .collect();
    let clauses: Vec<ClauseVertices> = (0..m)
        .map(|j| {
            let base = c_start + 4 * j;
            ClauseVertices { a: base, b: base + 1, c: base + 2, d: base + 3 }
        })
        .collect();
    let variables: Vec<usize> = (0..n_vars).map(|i| x_start + i).collect();

    let mut lists = vec![ColorSet::new(); n];
    let mut edges = Vec::new();
    for &x in &variables {
        lists[x] = ColorSet::from([1, 2]);
    }
    for o in &occurrences {
        lists[o.y] = ColorSet::from([3, 4]);
        let (l1, l2) = if o.positive { ([1, 4], [2, 3]) } else { ([1, 3], [2, 4]) };
        lists[o.z1] = ColorSet::from(l1);
        lists[o.z2] = ColorSet::from(l2);
        let x = variables[o.var - 1];
        edges.extend([(o.z1, x), (o.z2, x), (o.z1, o.y), (o.z2, o.y)]);
        edges.extend(variables.iter().map(|&x| (o.y, x)));
    }
    for (j, cv) in clauses.iter().enumerate() {
        lists[cv.a] = ColorSet::from([1, 4]);
        lists[cv.b] = ColorSet::from([2, 4]);
        lists[cv.c] = ColorSet::from([3, 4]);
        lists[cv.d] = ColorSet::from([1, 2, 3]);
        edges.extend([(cv.a, cv.d), (cv.b, cv.d), (cv.c, cv.d)]);
        for (guard, lit) in [cv.a, cv.b, cv.c].into_iter().zip(f.clauses()[j]) {
            let var = lit.unsigned_abs() as usize;
            let o = occurrences
                .iter()
                .find(|o| o.var == var && o.clause == j)
                .expect("every literal has an occurrence");
            edges.push((o.y, guard));
        }
    }
    let graph = OrderedGraph::new(n, edges)?;
    if let Some(w) = find_induced(&graph, &fork_tail()) {
        return Err(Error::invariant(format!("compiled graph contains a fork-tail at {w:?}")));
    }
    let inst = Instance::with_bound(graph, lists, 4)?;
    let layout = CnfLayout {
        num_vars: n_vars,
        formula: f.clauses().to_vec(),
        variables,
        occurrences,
        clauses,
        block_starts: [z_start, y_start, c_start, x_start, n],
    };
    Ok((inst, layout))
}

/// Reads the assignment off a proper coloring of the compiled instance:
/// a variable is true iff its vertex has color 1.
pub fn decode_assignment(layout: &CnfLayout, col: &Coloring) -> Result<Vec<bool>> {
    let (inst, _) = build_cnf_instance(&layout.formula()?)?;
    ensure_proper(&inst, col)?;
    Ok(layout.variables.iter().map(|&x| col.color(x) == 1).collect())
}
