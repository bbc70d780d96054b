//! Named forbidden ordered patterns and induced ordered subgraph detection.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::OrderedGraph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PatternKind {
    /// `ell + 2` vertices, the first adjacent to the last.
    EdgeSpan(usize),
    /// `3 ell + 2` vertices, single edge `(ell, 2 ell + 1)`.
    PaddedEdge(usize),
    /// Edges `(0,1)` and `(0,2)` on three vertices.
    Fork,
    /// A fork followed by one isolated vertex.
    ForkTail,
    /// `ell` isolated vertices followed by a fork.
    PaddedFork(usize),
    /// Edge `(0,3)` nested over edge `(1,2)`.
    NestedPair,
    /// A complete graph, used for clique-free checks.
    Clique(usize),
}

impl fmt::Display for PatternKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PatternKind::EdgeSpan(l) => write!(f, "edge-span:{l}"),
            PatternKind::PaddedEdge(l) => write!(f, "padded-edge:{l}"),
            PatternKind::Fork => write!(f, "fork"),
            PatternKind::ForkTail => write!(f, "fork-tail"),
            PatternKind::PaddedFork(l) => write!(f, "padded-fork:{l}"),
            PatternKind::NestedPair => write!(f, "nested-pair"),
            PatternKind::Clique(s) => write!(f, "clique:{s}"),
        }
    }
}

impl FromStr for PatternKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (name, param) = match s.split_once(':') {
            Some((name, p)) => {
                let p = p
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad pattern parameter in {s:?}")))?;
                (name, Some(p))
            }
            None => (s, None),
        };
        let kind = match (name, param) {
            ("fork", None) => PatternKind::Fork,
            ("fork-tail", None) => PatternKind::ForkTail,
            ("nested-pair", None) => PatternKind::NestedPair,
            ("edge-span", Some(l)) => PatternKind::EdgeSpan(l),
            ("padded-edge", Some(l)) => PatternKind::PaddedEdge(l),
            ("padded-fork", Some(l)) => PatternKind::PaddedFork(l),
            ("clique", Some(s)) if s >= 1 => PatternKind::Clique(s),
            _ => return Err(Error::Parse(format!("unknown pattern {s:?}"))),
        };
        Ok(kind)
    }
}

/// A small named ordered graph to be excluded as an induced ordered subgraph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pattern {
    pub name: String,
    pub graph: OrderedGraph,
}

impl Pattern {
    pub fn new(name: impl Into<String>, graph: OrderedGraph) -> Self {
        Pattern { name: name.into(), graph }
    }

    pub fn of(kind: PatternKind) -> Self {
        let name = kind.to_string();
        let graph = match kind {
            PatternKind::EdgeSpan(l) => pattern_graph(l + 2, &[(0, l + 1)]),
            PatternKind::PaddedEdge(l) => pattern_graph(3 * l + 2, &[(l, 2 * l + 1)]),
            PatternKind::Fork => pattern_graph(3, &[(0, 1), (0, 2)]),
            PatternKind::ForkTail => pattern_graph(4, &[(0, 1), (0, 2)]),
            PatternKind::PaddedFork(l) => pattern_graph(l + 3, &[(l, l + 1), (l, l + 2)]),
            PatternKind::NestedPair => pattern_graph(4, &[(0, 3), (1, 2)]),
            PatternKind::Clique(s) => OrderedGraph::complete(s),
        };
        Pattern { name, graph }
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    /// The mirror pattern, matching inside reversed graphs.
    pub fn reverse(&self) -> Pattern {
        Pattern { name: format!("reverse({})", self.name), graph: self.graph.reverse() }
    }
}

fn pattern_graph(n: usize, edges: &[(usize, usize)]) -> OrderedGraph {
    OrderedGraph::new(n, edges.iter().copied()).expect("catalog patterns are well formed")
}

pub fn edge_span(ell: usize) -> Pattern {
    Pattern::of(PatternKind::EdgeSpan(ell))
}

pub fn padded_edge(ell: usize) -> Pattern {
    Pattern::of(PatternKind::PaddedEdge(ell))
}

pub fn fork() -> Pattern {
    Pattern::of(PatternKind::Fork)
}

pub fn fork_tail() -> Pattern {
    Pattern::of(PatternKind::ForkTail)
}

pub fn padded_fork(ell: usize) -> Pattern {
    Pattern::of(PatternKind::PaddedFork(ell))
}

pub fn nested_pair() -> Pattern {
    Pattern::of(PatternKind::NestedPair)
}

/// Lexicographically smallest strictly increasing tuple of vertices of `g`
/// inducing a graph order-isomorphic to `p`.
///
/// The search walks increasing tuples in lexicographic order. A position is
/// drawn from the forward neighbors of an earlier matched vertex whenever the
/// pattern demands an edge there, and is capped by the last neighbor of any
/// matched vertex that still needs a later neighbor. Both cuts only skip
/// tuples that cannot match, so the first full match is the smallest one.
pub fn find_induced(g: &OrderedGraph, p: &Pattern) -> Option<Vec<usize>> {
    let k = p.n();
    if k == 0 {
        return Some(Vec::new());
    }
    if k > g.n() {
        return None;
    }
    let pat = &p.graph;
    let last_pattern_nb: Vec<Option<usize>> =
        (0..k).map(|s| pat.neighbors(s).last().copied()).collect();
    let mut tuple = Vec::with_capacity(k);
    if extend(g, pat, &last_pattern_nb, &mut tuple) {
        Some(tuple)
    } else {
        None
    }
}

fn extend(g: &OrderedGraph, pat: &OrderedGraph, last_nb: &[Option<usize>], tuple: &mut Vec<usize>) -> bool {
    let k = pat.n();
    let t = tuple.len();
    if t == k {
        return true;
    }
    let lo = tuple.last().map_or(0, |&v| v + 1);
    let mut hi = g.n() - (k - t); // inclusive
    for (s, &vs) in tuple.iter().enumerate() {
        if let Some(u) = last_nb[s] {
            if u >= t {
                // pattern vertex u must land on a neighbor of vs after position t
                match g.neighbors(vs).last() {
                    Some(&m) if m >= u - t => hi = hi.min(m - (u - t)),
                    _ => return false,
                }
            }
        }
    }
    if lo > hi {
        return false;
    }
    // anchor: earlier pattern neighbor of t with the fewest graph neighbors
    let anchor = pat
        .backward_neighbors(t)
        .iter()
        .map(|&s| tuple[s])
        .min_by_key(|&v| g.degree(v));
    let fits = |tuple: &[usize], v: usize| {
        tuple
            .iter()
            .enumerate()
            .all(|(s, &w)| g.has_edge(w, v) == pat.has_edge(s, t))
    };
    match anchor {
        Some(a) => {
            let nb = g.neighbors(a);
            let start = nb.partition_point(|&v| v < lo);
            for &v in &nb[start..] {
                if v > hi {
                    break;
                }
                if fits(tuple, v) {
                    tuple.push(v);
                    if extend(g, pat, last_nb, tuple) {
                        return true;
                    }
                    tuple.pop();
                }
            }
        }
        None => {
            for v in lo..=hi {
                if fits(tuple, v) {
                    tuple.push(v);
                    if extend(g, pat, last_nb, tuple) {
                        return true;
                    }
                    tuple.pop();
                }
            }
        }
    }
    false
}

pub fn is_free(g: &OrderedGraph, p: &Pattern) -> bool {
    find_induced(g, p).is_none()
}

/// Errors with the witness when `g` contains `p`.
pub fn ensure_free(g: &OrderedGraph, p: &Pattern) -> Result<()> {
    match find_induced(g, p) {
        None => Ok(()),
        Some(witness) => Err(Error::PatternFound { pattern: p.name.clone(), witness }),
    }
}

/// Some clique on `s` vertices, as an increasing vertex list.
pub fn contains_clique(g: &OrderedGraph, s: usize) -> Option<Vec<usize>> {
    if s == 0 {
        return Some(Vec::new());
    }
    let mut clique = Vec::with_capacity(s);
    (0..g.n()).find_map(|v| {
        clique.clear();
        clique.push(v);
        grow_clique(g, s, &mut clique).then(|| clique.clone())
    })
}

fn grow_clique(g: &OrderedGraph, s: usize, clique: &mut Vec<usize>) -> bool {
    if clique.len() == s {
        return true;
    }
    let last = *clique.last().expect("nonempty");
    for &v in g.forward_neighbors(last) {
        if clique.iter().all(|&u| g.has_edge(u, v)) {
            clique.push(v);
            if grow_clique(g, s, clique) {
                return true;
            }
            clique.pop();
        }
    }
    false
}
