//! Exhaustive application of the two reduction rules:
//! a vertex with an empty list means the instance is a no-instance, and a
//! vertex with a single color `a` is deleted after `a` is removed from the
//! lists of its neighbors.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::graph::{ensure_proper, ColorSet, Coloring, Instance, OrderedGraph};

/// Returned when the reduction rules hit an empty list.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Conflict {
    pub vertex: usize,
}

/// Working lists over the full vertex set of a fixed graph.
///
/// Vertices deleted by singleton propagation keep their forced color as a
/// one-element list and are flagged as removed; restricting such a vertex to a
/// set that misses its color is a conflict. After a successful
/// [`propagate`](ListState::propagate) every surviving vertex has at least
/// two colors.
#[derive(Clone, Debug)]
pub struct ListState<'g> {
    graph: &'g OrderedGraph,
    lists: Vec<ColorSet>,
    removed: Vec<bool>,
    trace: Vec<(usize, u32)>,
}

impl<'g> ListState<'g> {
    pub fn new(graph: &'g OrderedGraph, lists: Vec<ColorSet>) -> Self {
        debug_assert_eq!(graph.n(), lists.len());
        let n = lists.len();
        ListState { graph, lists, removed: vec![false; n], trace: Vec::new() }
    }

    pub fn from_instance(inst: &'g Instance) -> Self {
        Self::new(inst.graph(), inst.lists().to_vec())
    }

    pub fn graph(&self) -> &'g OrderedGraph {
        self.graph
    }

    pub fn list(&self, v: usize) -> &ColorSet {
        &self.lists[v]
    }

    pub fn lists(&self) -> &[ColorSet] {
        &self.lists
    }

    pub fn is_removed(&self, v: usize) -> bool {
        self.removed[v]
    }

    /// Vertices removed so far with their forced colors, in removal order.
    pub fn trace(&self) -> &[(usize, u32)] {
        &self.trace
    }

    /// Surviving vertices in increasing order.
    pub fn surviving(&self) -> Vec<usize> {
        (0..self.lists.len()).filter(|&v| !self.removed[v]).collect()
    }

    pub fn surviving_count(&self) -> usize {
        self.removed.iter().filter(|r| !**r).count()
    }

    /// Intersects the list of `v` with the colors accepted by `keep`.
    pub fn restrict(&mut self, v: usize, mut keep: impl FnMut(u32) -> bool) -> Result<(), Conflict> {
        self.lists[v].retain(&mut keep);
        if self.lists[v].is_empty() {
            Err(Conflict { vertex: v })
        } else {
            Ok(())
        }
    }

    pub fn fix(&mut self, v: usize, c: u32) -> Result<(), Conflict> {
        self.restrict(v, |x| x == c)
    }

    pub fn forbid(&mut self, v: usize, c: u32) -> Result<(), Conflict> {
        self.restrict(v, |x| x != c)
    }

    /// Applies the reduction rules until no surviving vertex has fewer than
    /// two colors. Singletons are processed first-in first-out, seeded in
    /// increasing vertex order.
    pub fn propagate(&mut self) -> Result<(), Conflict> {
        let mut queue = VecDeque::new();
        for v in 0..self.lists.len() {
            if self.removed[v] {
                continue;
            }
            match self.lists[v].len() {
                0 => return Err(Conflict { vertex: v }),
                1 => queue.push_back(v),
                _ => {}
            }
        }
        let mut queued = vec![false; self.lists.len()];
        for &v in &queue {
            queued[v] = true;
        }
        while let Some(v) = queue.pop_front() {
            let color = self.lists[v].first().expect("queued vertices are singletons");
            self.removed[v] = true;
            self.trace.push((v, color));
            for &u in self.graph.neighbors(v) {
                if self.removed[u] || !self.lists[u].remove(color) {
                    continue;
                }
                match self.lists[u].len() {
                    0 => return Err(Conflict { vertex: u }),
                    1 if !queued[u] => {
                        queued[u] = true;
                        queue.push_back(u);
                    }
                    _ => {}
                }
            }
        }
        Ok(())
    }

    /// Sub-instance on the surviving vertices plus its index map.
    pub fn residual(&self) -> (Instance, Vec<usize>) {
        let keep = self.surviving();
        let graph = self.graph.induced_unchecked(&keep);
        let lists = keep.iter().map(|&v| self.lists[v].clone()).collect();
        let inst = Instance::new(graph, lists).expect("residual lists match the graph");
        (inst, keep)
    }

    /// Full coloring from the forced colors plus a coloring of the surviving
    /// vertices listed in `index_map`.
    pub fn complete(&self, index_map: &[usize], residual: &Coloring) -> Coloring {
        let mut colors: Vec<u32> = self.lists.iter().map(|l| l.first().unwrap_or(0)).collect();
        for (i, &v) in index_map.iter().enumerate() {
            colors[v] = residual.color(i);
        }
        Coloring(colors)
    }

    /// The coloring when every vertex is removed.
    pub fn forced_coloring(&self) -> Option<Coloring> {
        self.removed
            .iter()
            .all(|&r| r)
            .then(|| Coloring(self.lists.iter().map(|l| l.first().expect("forced")).collect()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Kernel {
    /// Some list became empty.
    No,
    Reduced(ReducedInstance),
}

impl Kernel {
    pub fn is_no(&self) -> bool {
        matches!(self, Kernel::No)
    }

    pub fn reduced(&self) -> Option<&ReducedInstance> {
        match self {
            Kernel::No => None,
            Kernel::Reduced(r) => Some(r),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedInstance {
    /// The instance on the surviving vertices; every list has at least two colors.
    pub instance: Instance,
    /// Removed vertices with their forced colors, in removal order.
    pub trace: Vec<(usize, u32)>,
    /// `index_map[i]` is the original index of surviving vertex `i`.
    pub index_map: Vec<usize>,
    pub original_n: usize,
}

pub fn kernelize(inst: &Instance) -> Kernel {
    let mut state = ListState::from_instance(inst);
    if state.propagate().is_err() {
        return Kernel::No;
    }
    let (instance, index_map) = state.residual();
    Kernel::Reduced(ReducedInstance {
        instance,
        trace: state.trace,
        index_map,
        original_n: inst.n(),
    })
}

impl ReducedInstance {
    /// Lifts a proper coloring of the reduced instance back to the original.
    pub fn lift(&self, col: &Coloring) -> Result<Coloring> {
        ensure_proper(&self.instance, col)?;
        let mut colors = vec![0u32; self.original_n];
        for &(v, c) in &self.trace {
            colors[v] = c;
        }
        for (i, &v) in self.index_map.iter().enumerate() {
            colors[v] = col.color(i);
        }
        if colors.contains(&0) {
            return Err(Error::invariant("trace and index map do not cover every vertex"));
        }
        Ok(Coloring(colors))
    }
}
