//! List k-coloring of ordered graphs with no induced `padded_edge(ℓ)`.
//!
//! The solver recurses on the palette. If some color can be used on fewer
//! than `2ℓ` vertices, it guesses that color class and drops the color.
//! Otherwise it guesses the first and last `ℓ` vertices of every color class
//! and finishes with a dynamic program over vertex prefixes that remembers,
//! per color, the last `ℓ` vertices using it.

use std::collections::HashSet;
use std::sync::atomic::{AtomicU64, Ordering};

use itertools::Itertools;
use crate::branch::first_sat;
use crate::easy::solve_two_lists;
use crate::error::{Error, Result};
use crate::graph::{ColorSet, Coloring, Instance, OrderedGraph};
use crate::kernel::ListState;
use crate::patterns::{edge_span, ensure_free, find_induced, padded_edge, Pattern};

/// For each color `1..=k`, up to `ℓ` independent vertices, pairwise disjoint
/// across colors. `blocks[i]` belongs to color `i + 1` and is increasing.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BlockTuple {
    pub blocks: Vec<Vec<usize>>,
}

impl BlockTuple {
    fn empty(k: usize) -> Self {
        BlockTuple { blocks: vec![Vec::new(); k] }
    }

    pub fn block(&self, color: u32) -> &[usize] {
        &self.blocks[color as usize - 1]
    }
}

/// Predecessor of an entry: its index in the previous row and the color
/// given to the newest vertex.
pub type BackPointer = (usize, u32);

/// Row `j` holds the true entries for the prefix of the first `j + 1`
/// vertices, each with its back pointer (none in row 0).
#[derive(Clone, Debug, Default)]
pub struct DpTable {
    pub k: u32,
    pub ell: usize,
    pub rows: Vec<Vec<(BlockTuple, Option<BackPointer>)>>,
}

impl DpTable {
    pub fn row(&self, j: usize) -> impl Iterator<Item = &BlockTuple> {
        self.rows[j].iter().map(|(t, _)| t)
    }

    pub fn entry_count(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    /// The coloring certifying entry `idx` of the last row.
    fn trace_back(&self, mut idx: usize) -> Coloring {
        let mut colors = vec![0u32; self.rows.len()];
        for j in (0..self.rows.len()).rev() {
            let (tuple, back) = &self.rows[j][idx];
            match back {
                Some((prev, c)) => {
                    colors[j] = *c;
                    idx = *prev;
                }
                None => {
                    colors[j] = (1..=self.k).find(|&c| tuple.block(c) == [j]).expect("row 0 has one block");
                }
            }
        }
        Coloring(colors)
    }
}

/// Is `col` (a coloring of the first `prefix.len()` vertices) compatible
/// with `tuple`: a block shorter than `ℓ` is the whole color class, a full
/// block is the last `ℓ` vertices of its class.
pub fn is_compatible(tuple: &BlockTuple, prefix: &[u32], ell: usize) -> bool {
    tuple.blocks.iter().enumerate().all(|(i, block)| {
        let color = i as u32 + 1;
        let class: Vec<usize> = (0..prefix.len()).filter(|&v| prefix[v] == color).collect();
        if block.len() < ell {
            class == *block
        } else {
            class.len() >= ell && class[class.len() - ell..] == block[..]
        }
    })
}

/// Runs the block dynamic program on `inst` with palette `[k]`.
///
/// Requires that, for every color `i`, the vertices listing `i` induce an
/// `edge_span(ℓ)`-free graph; a violation is reported as an invariant error.
pub fn dp_fixed_ends(inst: &Instance, k: u32, ell: usize) -> Result<(DpTable, Option<Coloring>)> {
    if ell == 0 {
        return Err(Error::precondition("ℓ must be at least 1"));
    }
    inst.check_palette(k)?;
    let span = edge_span(ell);
    for i in 1..=k {
        let xi: Vec<usize> = (0..inst.n()).filter(|&v| inst.list(v).contains(i)).collect();
        let sub = inst.graph().induced_unchecked(&xi);
        if let Some(w) = find_induced(&sub, &span) {
            return Err(Error::invariant(format!(
                "vertices listing color {i} contain {} at {:?}",
                span.name,
                w.iter().map(|&x| xi[x]).collect::<Vec<_>>()
            )));
        }
    }
    let g = inst.graph();
    let mut table = DpTable { k, ell, rows: Vec::with_capacity(inst.n()) };
    for j in 0..inst.n() {
        let mut row: Vec<(BlockTuple, Option<BackPointer>)> = Vec::new();
        let mut seen: HashSet<BlockTuple> = HashSet::new();
        let mut push = |t: BlockTuple, back: Option<BackPointer>| {
            if seen.insert(t.clone()) {
                row.push((t, back));
            }
        };
        if j == 0 {
            for c in inst.list(0).iter() {
                let mut t = BlockTuple::empty(k as usize);
                t.blocks[c as usize - 1].push(0);
                push(t, None);
            }
        } else {
            for (idx, (prev, _)) in table.rows[j - 1].iter().enumerate() {
                for c in inst.list(j).iter() {
                    let block = &prev.blocks[c as usize - 1];
                    if block.iter().any(|&u| g.has_edge(u, j)) {
                        continue;
                    }
                    let mut t = prev.clone();
                    let b = &mut t.blocks[c as usize - 1];
                    if b.len() == ell {
                        b.remove(0);
                    }
                    b.push(j);
                    push(t, Some((idx, c)));
                }
            }
        }
        if row.is_empty() {
            table.rows.push(row);
            return Ok((table, None));
        }
        table.rows.push(row);
    }
    let col = if inst.n() == 0 { Some(Coloring(Vec::new())) } else { Some(table.trace_back(0)) };
    Ok((table, col))
}

/// Branch counters of one solver run.
#[derive(Debug, Default)]
pub struct SingleEdgeStats {
    pub small_class_branches: AtomicU64,
    pub end_tuples: AtomicU64,
    pub dp_runs: AtomicU64,
}

impl SingleEdgeStats {
    pub fn end_tuples(&self) -> u64 {
        self.end_tuples.load(Ordering::Relaxed)
    }
}

/// Solves List k-Coloring on a `padded_edge(ℓ)`-free ordered graph.
pub fn solve_single_edge_free(inst: &Instance, k: u32, ell: usize) -> Result<Option<Coloring>> {
    solve_single_edge_free_with_stats(inst, k, ell, &SingleEdgeStats::default())
}

pub fn solve_single_edge_free_with_stats(
    inst: &Instance,
    k: u32,
    ell: usize,
    stats: &SingleEdgeStats,
) -> Result<Option<Coloring>> {
    if k < 1 {
        return Err(Error::precondition("k must be at least 1"));
    }
    if ell < 1 {
        return Err(Error::precondition("ℓ must be at least 1"));
    }
    inst.check_palette(k)?;
    ensure_free(inst.graph(), &padded_edge(ell))?;
    let mut state = ListState::from_instance(inst);
    if state.propagate().is_err() {
        return Ok(None);
    }
    let solver = Solver { graph: inst.graph(), ell, stats };
    solver.solve(state, ColorSet::range(k))
}

/// Solves an instance whose graph excludes a one-edge pattern `h`, using the
/// smallest `ℓ` such that `h` is an induced subgraph of `padded_edge(ℓ)`.
pub fn solve_excluding_one_edge(inst: &Instance, k: u32, h: &Pattern) -> Result<Option<Coloring>> {
    let ell = embedding_pad(h)?;
    ensure_free(inst.graph(), h)?;
    solve_single_edge_free(inst, k, ell)
}

/// Smallest `ℓ ≥ 1` with `h` an induced subgraph of `padded_edge(ℓ)`.
pub fn embedding_pad(h: &Pattern) -> Result<usize> {
    if h.graph.edge_count() != 1 {
        return Err(Error::precondition(format!("{} must have exactly one edge", h.name)));
    }
    let (u, v) = h.graph.edges().next().expect("one edge");
    let need = u.max(v - u - 1).max(h.n() - 1 - v).max(1);
    debug_assert!(find_induced(&padded_edge(need).graph, h).is_some());
    Ok(need)
}

struct Solver<'a> {
    graph: &'a OrderedGraph,
    ell: usize,
    stats: &'a SingleEdgeStats,
}

impl Solver<'_> {
    fn solve(&self, state: ListState<'_>, palette: ColorSet) -> Result<Option<Coloring>> {
        if let Some(col) = state.forced_coloring() {
            return Ok(Some(col));
        }
        if palette.len() <= 2 {
            let (residual, map) = state.residual();
            return Ok(solve_two_lists(&residual)?.map(|c| state.complete(&map, &c)));
        }
        if let Some(col) = self.small_class(&state, &palette)? {
            return Ok(Some(col));
        }
        self.end_blocks(&state, &palette)
    }

    /// Some color class has at most `2ℓ - 1` vertices.
    fn small_class(&self, state: &ListState<'_>, palette: &ColorSet) -> Result<Option<Coloring>> {
        let alive = state.surviving();
        let mut branches = Vec::new();
        for i in palette.iter() {
            let holders: Vec<usize> = alive.iter().copied().filter(|&v| state.list(v).contains(i)).collect();
            for size in 0..2 * self.ell {
                for set in holders.iter().copied().combinations(size) {
                    if self.graph.is_independent(&set) {
                        branches.push((i, set));
                    }
                }
            }
        }
        first_sat(branches, |(i, set)| {
            self.stats.small_class_branches.fetch_add(1, Ordering::Relaxed);
            let mut child = state.clone();
            let ok = alive.iter().all(|&v| {
                if set.binary_search(&v).is_ok() {
                    child.fix(v, i).is_ok()
                } else {
                    child.forbid(v, i).is_ok()
                }
            });
            if !ok || child.propagate().is_err() {
                return Ok(None);
            }
            let mut rest = palette.clone();
            rest.remove(i);
            self.solve(child, rest)
        })
    }

    /// Every color class has at least `2ℓ` vertices: guess its first and last `ℓ`.
    fn end_blocks(&self, state: &ListState<'_>, palette: &ColorSet) -> Result<Option<Coloring>> {
        let base = state.surviving();
        let colors: Vec<u32> = palette.iter().collect();
        let bound = (base.len() as u64).saturating_pow((2 * colors.len() * self.ell) as u32);
        let firsts = self.block_pairs(state, &base, colors[0], &[]);
        let found = first_sat(firsts, |(a, b)| {
            let mut used: Vec<usize> = a.iter().chain(&b).copied().collect();
            let Some(child) = self.apply_blocks(state, &base, colors[0], &a, &b) else {
                return Ok(None);
            };
            used.sort_unstable();
            self.end_blocks_from(child, &base, &colors[1..], &mut used)
        })?;
        let tuples = self.stats.end_tuples();
        if tuples > bound {
            return Err(Error::invariant(format!("{tuples} end-block tuples exceed the bound {bound}")));
        }
        Ok(found)
    }

    fn end_blocks_from(
        &self,
        state: ListState<'_>,
        base: &[usize],
        colors: &[u32],
        used: &mut Vec<usize>,
    ) -> Result<Option<Coloring>> {
        let Some((&i, rest)) = colors.split_first() else {
            self.stats.end_tuples.fetch_add(1, Ordering::Relaxed);
            return self.finish(&state);
        };
        for (a, b) in self.block_pairs(&state, base, i, used) {
            let Some(child) = self.apply_blocks(&state, base, i, &a, &b) else {
                continue;
            };
            let before = used.len();
            used.extend(a.iter().chain(&b));
            used.sort_unstable();
            let found = self.end_blocks_from(child, base, rest, used)?;
            used.retain(|v| !a.contains(v) && !b.contains(v));
            debug_assert_eq!(used.len(), before);
            if found.is_some() {
                return Ok(found);
            }
        }
        Ok(None)
    }

    /// Pairs `(A, B)` of `ℓ`-sets with `A` entirely before `B`, `A ∪ B`
    /// independent, avoiding `used`, drawn from vertices that can take `i`.
    fn block_pairs(&self, state: &ListState<'_>, base: &[usize], i: u32, used: &[usize]) -> Vec<(Vec<usize>, Vec<usize>)> {
        let cand: Vec<usize> = base
            .iter()
            .copied()
            .filter(|&v| state.list(v).contains(i) && used.binary_search(&v).is_err())
            .collect();
        let mut out = Vec::new();
        for a in cand.iter().copied().combinations(self.ell) {
            if !self.graph.is_independent(&a) {
                continue;
            }
            let last_a = *a.last().expect("ℓ ≥ 1");
            let later: Vec<usize> = cand.iter().copied().filter(|&v| v > last_a).collect();
            for b in later.into_iter().combinations(self.ell) {
                let both: Vec<usize> = a.iter().chain(&b).copied().collect();
                if self.graph.is_independent(&both) {
                    out.push((a.clone(), b));
                }
            }
        }
        out
    }

    fn apply_blocks<'g>(&self, state: &ListState<'g>, base: &[usize], i: u32, a: &[usize], b: &[usize]) -> Option<ListState<'g>> {
        let mut child = state.clone();
        let last_a = *a.last()?;
        let first_b = *b.first()?;
        for &v in base {
            let r = if a.contains(&v) || b.contains(&v) {
                child.fix(v, i)
            } else if v < last_a || v > first_b {
                child.forbid(v, i)
            } else {
                Ok(())
            };
            r.ok()?;
        }
        child.propagate().ok()?;
        Some(child)
    }

    fn finish(&self, state: &ListState<'_>) -> Result<Option<Coloring>> {
        if let Some(col) = state.forced_coloring() {
            return Ok(Some(col));
        }
        self.stats.dp_runs.fetch_add(1, Ordering::Relaxed);
        let (residual, map) = state.residual();
        let k = residual.max_color();
        let (_, col) = dp_fixed_ends(&residual, k, self.ell)?;
        Ok(col.map(|c| state.complete(&map, &c)))
    }
}
