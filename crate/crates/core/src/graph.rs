//! Ordered graphs, list-coloring instances and colorings.
//!
//! Vertices are the indices `0..n` and the index order is the linear order of
//! the ordered graph: `u` precedes `v` exactly when `u < v`.

use std::fmt;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::{Error, Result};

/// Format tag accepted in the optional `"format"` field of instance JSON.
pub const INSTANCE_FORMAT: &str = "olc-instance-v1";

/// A finite set of positive colors, kept sorted.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ColorSet(SmallVec<[u32; 4]>);

impl ColorSet {
    pub fn new() -> Self {
        ColorSet(SmallVec::new())
    }

    pub fn singleton(c: u32) -> Self {
        let mut s = SmallVec::new();
        s.push(c);
        ColorSet(s)
    }

    /// `{1, .., k}`.
    pub fn range(k: u32) -> Self {
        (1..=k).collect()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, c: u32) -> bool {
        self.0.binary_search(&c).is_ok()
    }

    pub fn insert(&mut self, c: u32) -> bool {
        match self.0.binary_search(&c) {
            Ok(_) => false,
            Err(pos) => {
                self.0.insert(pos, c);
                true
            }
        }
    }

    pub fn remove(&mut self, c: u32) -> bool {
        match self.0.binary_search(&c) {
            Ok(pos) => {
                self.0.remove(pos);
                true
            }
            Err(_) => false,
        }
    }

    pub fn retain(&mut self, mut keep: impl FnMut(u32) -> bool) {
        self.0.retain(|c| keep(*c));
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn first(&self) -> Option<u32> {
        self.0.first().copied()
    }

    pub fn last(&self) -> Option<u32> {
        self.0.last().copied()
    }

    pub fn intersects(&self, other: &ColorSet) -> bool {
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].cmp(&other.0[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => return true,
            }
        }
        false
    }

    pub fn intersection(&self, other: &ColorSet) -> ColorSet {
        self.iter().filter(|c| other.contains(*c)).collect()
    }

    pub fn is_subset(&self, other: &ColorSet) -> bool {
        self.iter().all(|c| other.contains(c))
    }
}

impl FromIterator<u32> for ColorSet {
    fn from_iter<I: IntoIterator<Item = u32>>(iter: I) -> Self {
        let mut v: SmallVec<[u32; 4]> = iter.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        ColorSet(v)
    }
}

impl<const N: usize> From<[u32; N]> for ColorSet {
    fn from(arr: [u32; N]) -> Self {
        arr.into_iter().collect()
    }
}

impl fmt::Debug for ColorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.0.iter()).finish()
    }
}

/// A simple undirected graph whose vertex order is the index order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct OrderedGraph {
    adj: Vec<Vec<usize>>,
}

impl OrderedGraph {
    /// Builds a graph on `n` vertices. Duplicate pairs collapse.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for nb in &mut adj {
            nb.sort_unstable();
            nb.dedup();
        }
        Ok(OrderedGraph { adj })
    }

    pub fn edgeless(n: usize) -> Self {
        OrderedGraph { adj: vec![Vec::new(); n] }
    }

    pub fn complete(n: usize) -> Self {
        let adj = (0..n).map(|v| (0..n).filter(|&u| u != v).collect()).collect();
        OrderedGraph { adj }
    }

    /// The path `0 - 1 - ... - (n-1)`.
    pub fn path(n: usize) -> Self {
        Self::new(n, (1..n).map(|v| (v - 1, v))).expect("path edges are valid")
    }

    /// The cycle `0 - 1 - ... - (n-1) - 0`, for `n >= 3`.
    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a cycle needs at least three vertices");
        Self::new(n, (0..n).map(|v| (v, (v + 1) % n))).expect("cycle edges are valid")
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, nb)| self.forward_slice(u, nb).iter().map(move |&v| (u, v)))
    }

    fn forward_slice<'a>(&self, v: usize, nb: &'a [usize]) -> &'a [usize] {
        let split = nb.partition_point(|&u| u < v);
        &nb[split..]
    }

    /// Sorted neighbors of `v`.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Neighbors of `v` that come after it, sorted.
    pub fn forward_neighbors(&self, v: usize) -> &[usize] {
        self.forward_slice(v, &self.adj[v])
    }

    /// Neighbors of `v` that come before it, sorted.
    pub fn backward_neighbors(&self, v: usize) -> &[usize] {
        let nb = &self.adj[v];
        &nb[..nb.partition_point(|&u| u < v)]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// Subgraph induced by `vs`, which must be strictly increasing. Vertex
    /// `vs[i]` becomes vertex `i`, so the relative order is preserved.
    pub fn induced(&self, vs: &[usize]) -> Result<OrderedGraph> {
        let n = self.n();
        for w in vs.windows(2) {
            if w[0] >= w[1] {
                return Err(Error::NotIncreasing);
            }
        }
        if let Some(&last) = vs.last() {
            if last >= n {
                return Err(Error::VertexOutOfRange { vertex: last, n });
            }
        }
        Ok(self.induced_unchecked(vs))
    }

    pub(crate) fn induced_unchecked(&self, vs: &[usize]) -> OrderedGraph {
        let mut local = vec![usize::MAX; self.n()];
        for (i, &v) in vs.iter().enumerate() {
            local[v] = i;
        }
        let adj = vs
            .iter()
            .map(|&v| {
                self.adj[v]
                    .iter()
                    .filter_map(|&u| (local[u] != usize::MAX).then_some(local[u]))
                    .collect()
            })
            .collect();
        OrderedGraph { adj }
    }

    /// The same graph with the order reversed: vertex `i` becomes `n - 1 - i`.
    pub fn reverse(&self) -> OrderedGraph {
        let n = self.n();
        let adj = (0..n)
            .rev()
            .map(|v| {
                let mut nb: Vec<usize> = self.adj[v].iter().map(|&u| n - 1 - u).collect();
                nb.reverse();
                nb
            })
            .collect();
        OrderedGraph { adj }
    }

    /// Copy of the graph without the edges for which `drop` returns true.
    pub fn without_edges(&self, mut drop: impl FnMut(usize, usize) -> bool) -> OrderedGraph {
        let kept: Vec<(usize, usize)> = self.edges().filter(|&(u, v)| !drop(u, v)).collect();
        OrderedGraph::new(self.n(), kept).expect("subset of valid edges")
    }

    pub fn is_complete(&self) -> bool {
        let n = self.n();
        self.adj.iter().all(|nb| nb.len() + 1 == n)
    }

    /// True when the vertices in `vs` are pairwise adjacent.
    pub fn is_clique(&self, vs: &[usize]) -> bool {
        vs.iter()
            .enumerate()
            .all(|(i, &u)| vs[i + 1..].iter().all(|&v| self.has_edge(u, v)))
    }

    /// True when the vertices in `vs` are pairwise non-adjacent.
    pub fn is_independent(&self, vs: &[usize]) -> bool {
        vs.iter()
            .enumerate()
            .all(|(i, &u)| vs[i + 1..].iter().all(|&v| !self.has_edge(u, v)))
    }
}

impl fmt::Debug for OrderedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("OrderedGraph")
            .field("n", &self.n())
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

/// An ordered graph together with a color list per vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    graph: OrderedGraph,
    lists: Vec<ColorSet>,
    k: Option<u32>,
}

impl Instance {
    pub fn new(graph: OrderedGraph, lists: Vec<ColorSet>) -> Result<Self> {
        Self::build(graph, lists, None)
    }

    /// An instance of List k-Coloring: every list must lie inside `[k]`.
    pub fn with_bound(graph: OrderedGraph, lists: Vec<ColorSet>, k: u32) -> Result<Self> {
        Self::build(graph, lists, Some(k))
    }

    fn build(graph: OrderedGraph, lists: Vec<ColorSet>, k: Option<u32>) -> Result<Self> {
        if lists.len() != graph.n() {
            return Err(Error::LengthMismatch { expected: graph.n(), actual: lists.len() });
        }
        for list in &lists {
            if let Some(0) = list.first() {
                return Err(Error::InvalidColor(0));
            }
            if let (Some(k), Some(max)) = (k, list.last()) {
                if max > k {
                    return Err(Error::precondition(format!("color {max} exceeds the bound k = {k}")));
                }
            }
        }
        Ok(Instance { graph, lists, k })
    }

    /// Every vertex gets the list `[k]`.
    pub fn uniform(graph: OrderedGraph, k: u32) -> Self {
        let lists = vec![ColorSet::range(k); graph.n()];
        Instance { graph, lists, k: Some(k) }
    }

    pub fn graph(&self) -> &OrderedGraph {
        &self.graph
    }

    pub fn lists(&self) -> &[ColorSet] {
        &self.lists
    }

    pub fn list(&self, v: usize) -> &ColorSet {
        &self.lists[v]
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn k(&self) -> Option<u32> {
        self.k
    }

    /// Largest color mentioned in any list (0 when all lists are empty).
    pub fn max_color(&self) -> u32 {
        self.lists.iter().filter_map(ColorSet::last).max().unwrap_or(0)
    }

    /// Fails unless every list lies inside `[k]`.
    pub fn check_palette(&self, k: u32) -> Result<()> {
        match self.lists.iter().enumerate().find(|(_, l)| l.last().is_some_and(|c| c > k)) {
            Some((v, l)) => Err(Error::precondition(format!(
                "list of vertex {v} is {l:?}, not a subset of [{k}]"
            ))),
            None => Ok(()),
        }
    }

    /// Sub-instance induced by the strictly increasing vertex list `vs`.
    pub fn induced(&self, vs: &[usize]) -> Result<Instance> {
        let graph = self.graph.induced(vs)?;
        let lists = vs.iter().map(|&v| self.lists[v].clone()).collect();
        Ok(Instance { graph, lists, k: self.k })
    }

    /// Same lists on a different graph with the same vertex count.
    pub fn with_graph(&self, graph: OrderedGraph) -> Result<Instance> {
        Self::build(graph, self.lists.clone(), self.k)
    }

    pub fn with_lists(&self, lists: Vec<ColorSet>) -> Result<Instance> {
        Self::build(self.graph.clone(), lists, self.k)
    }

    /// Copy with each `(v, c)` pinned: the list of `v` becomes `{c}`, or empty
    /// when `c` was not in it.
    pub fn pin(&self, pins: &[(usize, u32)]) -> Instance {
        let mut lists = self.lists.clone();
        for &(v, c) in pins {
            lists[v] = if lists[v].contains(c) { ColorSet::singleton(c) } else { ColorSet::new() };
        }
        Instance { graph: self.graph.clone(), lists, k: self.k }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&InstanceJson::from(self)).expect("instance serializes")
    }

    pub fn from_json(text: &str) -> Result<Instance> {
        let raw: InstanceJson = serde_json::from_str(text)?;
        raw.try_into()
    }
}

/// Wire form of an [`Instance`].
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct InstanceJson {
    #[serde(default, skip_serializing)]
    pub format: Option<String>,
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
    pub lists: Vec<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<u32>,
}

impl From<&Instance> for InstanceJson {
    fn from(inst: &Instance) -> Self {
        InstanceJson {
            format: None,
            n: inst.n(),
            edges: inst.graph.edges().map(|(u, v)| [u, v]).collect(),
            lists: inst.lists.iter().map(|l| l.iter().collect()).collect(),
            k: inst.k,
        }
    }
}

impl TryFrom<InstanceJson> for Instance {
    type Error = Error;

    fn try_from(raw: InstanceJson) -> Result<Instance> {
        if let Some(fmt) = &raw.format {
            if fmt != INSTANCE_FORMAT {
                return Err(Error::Parse(format!("unknown instance format {fmt:?}")));
            }
        }
        let graph = OrderedGraph::new(raw.n, raw.edges.iter().map(|e| (e[0], e[1])))?;
        let lists = raw.lists.into_iter().map(ColorSet::from_iter).collect();
        Instance::build(graph, lists, raw.k)
    }
}

/// One color per vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Coloring(pub Vec<u32>);

impl Coloring {
    pub fn colors(&self) -> &[u32] {
        &self.0
    }

    pub fn color(&self, v: usize) -> u32 {
        self.0[v]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl From<Vec<u32>> for Coloring {
    fn from(v: Vec<u32>) -> Self {
        Coloring(v)
    }
}

/// Why a coloring fails to be a proper list coloring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    NotInList { vertex: usize, color: u32 },
    Monochromatic { u: usize, v: usize, color: u32 },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotInList { vertex, color } => {
                write!(f, "vertex {vertex} has color {color}, which is not in its list")
            }
            Violation::Monochromatic { u, v, color } => {
                write!(f, "edge {u}-{v} is monochromatic in color {color}")
            }
        }
    }
}

/// First violation of `col` against `inst`, or `None` for a proper list coloring.
pub fn find_violation(inst: &Instance, col: &Coloring) -> Result<Option<Violation>> {
    if col.len() != inst.n() {
        return Err(Error::LengthMismatch { expected: inst.n(), actual: col.len() });
    }
    for v in 0..inst.n() {
        if !inst.list(v).contains(col.color(v)) {
            return Ok(Some(Violation::NotInList { vertex: v, color: col.color(v) }));
        }
    }
    Ok(inst
        .graph()
        .edges()
        .find(|&(u, v)| col.color(u) == col.color(v))
        .map(|(u, v)| Violation::Monochromatic { u, v, color: col.color(u) }))
}

pub fn is_proper(inst: &Instance, col: &Coloring) -> Result<bool> {
    Ok(find_violation(inst, col)?.is_none())
}

/// Like [`is_proper`], but turns a violation into an error.
pub fn ensure_proper(inst: &Instance, col: &Coloring) -> Result<()> {
    match find_violation(inst, col)? {
        None => Ok(()),
        Some(v) => Err(Error::ImproperColoring(v.to_string())),
    }
}

/// Wire form of a solver answer: `{"status":"sat","colors":[..]}` or `{"status":"unsat"}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum ColoringJson {
    Sat { colors: Vec<u32> },
    Unsat,
}

impl From<Option<&Coloring>> for ColoringJson {
    fn from(c: Option<&Coloring>) -> Self {
        match c {
            Some(c) => ColoringJson::Sat { colors: c.0.clone() },
            None => ColoringJson::Unsat,
        }
    }
}

impl ColoringJson {
    pub fn into_coloring(self) -> Option<Coloring> {
        match self {
            ColoringJson::Sat { colors } => Some(Coloring(colors)),
            ColoringJson::Unsat => None,
        }
    }
}
