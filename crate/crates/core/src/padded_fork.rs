//! List 4-coloring of ordered graphs with no induced `padded_fork(ℓ)`.
//!
//! After rejecting `K5`, the solver first looks for colorings in which some
//! color is used fewer than `ℓ` times (handed to a 3-coloring subsolver).
//! Otherwise it runs four branching phases:
//!
//! 1. guess the first `ℓ` vertices of every color and classify forward
//!    neighbors as safe or dangerous;
//! 2. if few vertices are good, guess them and finish with 2-SAT; otherwise
//!    guess the first good vertices `D` with their forward neighborhoods,
//!    which splits the rest into a prefix `P` of bad vertices and a suffix;
//! 3. for each two-color list, guess how the prefix vertices with that list
//!    start using each of its colors;
//! 4. guess the safe forward neighbors of the guessed blocks, drop edges
//!    between complementary lists at the prefix, and solve the now fork-free
//!    graph exactly.
//!
//! Every branch only restricts lists, so any coloring found is valid. The
//! structural facts the branching relies on are checked at runtime; a
//! failure is reported as [`Error::Invariant`].

use std::sync::atomic::{AtomicU64, Ordering};

use itertools::Itertools;

use crate::branch::first_sat;
use crate::easy::{solve_fork_free, solve_two_lists};
use crate::error::{Error, Result};
use crate::graph::{ensure_proper, ColorSet, Coloring, Instance, OrderedGraph};
use crate::kernel::ListState;
use crate::oracle::solve_exact;
use crate::patterns::{contains_clique, ensure_free, find_induced, fork, padded_fork};

/// Solver for the instances where some color is used fewer than `ℓ` times;
/// lists passed in avoid at least one of the four colors.
pub trait ThreeColorSolver: Sync {
    fn solve(&self, inst: &Instance) -> Result<Option<Coloring>>;
}

/// Exact search.
#[derive(Clone, Copy, Debug, Default)]
pub struct OracleSub3;

impl ThreeColorSolver for OracleSub3 {
    fn solve(&self, inst: &Instance) -> Result<Option<Coloring>> {
        Ok(solve_exact(inst))
    }
}

/// 2-SAT when every list has at most two colors, exact search otherwise.
#[derive(Clone, Copy, Debug, Default)]
pub struct TwoListsFirstSub3;

impl ThreeColorSolver for TwoListsFirstSub3 {
    fn solve(&self, inst: &Instance) -> Result<Option<Coloring>> {
        if inst.lists().iter().all(|l| l.len() <= 2) {
            solve_two_lists(inst)
        } else {
            Ok(solve_exact(inst))
        }
    }
}

pub struct Config<'a> {
    pub ell: usize,
    pub sub3: &'a dyn ThreeColorSolver,
    /// When false, only colorings using every color at least `ℓ` times are
    /// searched for.
    pub small_classes: bool,
}

impl Config<'static> {
    pub fn new(ell: usize) -> Self {
        Config { ell, sub3: &OracleSub3, small_classes: true }
    }
}

/// Branch and audit counters of one run.
#[derive(Debug, Default)]
pub struct Stats {
    pub small_class_branches: AtomicU64,
    pub first_block_tuples: AtomicU64,
    pub few_good_branches: AtomicU64,
    pub prefix_branches: AtomicU64,
    pub prefix_vertices: AtomicU64,
    pub list_group_branches: AtomicU64,
    pub final_instances: AtomicU64,
    pub final_guessed: AtomicU64,
    pub deleted_edges: AtomicU64,
    pub common_color_forks: AtomicU64,
    pub bad_vertices: AtomicU64,
    pub two_list_audits: AtomicU64,
}

impl Stats {
    pub fn get(counter: &AtomicU64) -> u64 {
        counter.load(Ordering::Relaxed)
    }

    fn bump(counter: &AtomicU64, by: u64) {
        counter.fetch_add(by, Ordering::Relaxed);
    }
}

/// Binomial upper bound `C(s + t - 2, s - 1)` on the Ramsey number `R(s, t)`.
pub fn ramsey_upper(s: usize, t: usize) -> usize {
    assert!(s >= 1 && t >= 1, "Ramsey arguments start at 1");
    let (n, k) = (s + t - 2, s - 1);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// Forward neighbors of each vertex split by whether their list meets the
/// vertex's list.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct NeighborClassification {
    pub safe: Vec<Vec<usize>>,
    pub dangerous: Vec<Vec<usize>>,
    pub bad: Vec<bool>,
}

impl NeighborClassification {
    pub fn good(&self, v: usize) -> bool {
        !self.bad[v]
    }
}

/// Classifies the forward neighbors of every vertex of `inst` and checks
/// the bounds that hold after the first-block guess: at most 12 safe forward
/// neighbors, bad vertices carry two colors, good vertices have at most
/// `3ℓ + 15` forward neighbors.
pub fn classify_neighbors(inst: &Instance, ell: usize) -> Result<NeighborClassification> {
    let alive = vec![true; inst.n()];
    classify(inst.graph(), inst.lists(), &alive, ell)
}

fn classify(g: &OrderedGraph, lists: &[ColorSet], alive: &[bool], ell: usize) -> Result<NeighborClassification> {
    let n = g.n();
    let mut out = NeighborClassification {
        safe: vec![Vec::new(); n],
        dangerous: vec![Vec::new(); n],
        bad: vec![false; n],
    };
    for v in (0..n).filter(|&v| alive[v]) {
        for &u in g.forward_neighbors(v).iter().filter(|&&u| alive[u]) {
            if lists[u].intersects(&lists[v]) {
                out.safe[v].push(u);
            } else {
                out.dangerous[v].push(u);
            }
        }
        if out.safe[v].len() > 12 {
            return Err(Error::invariant(format!("vertex {v} has {} safe forward neighbors", out.safe[v].len())));
        }
        out.bad[v] = out.dangerous[v].len() >= 3 * ell + 4;
        if out.bad[v] && lists[v].len() != 2 {
            return Err(Error::invariant(format!("bad vertex {v} has {} colors", lists[v].len())));
        }
        let forward = out.safe[v].len() + out.dangerous[v].len();
        if !out.bad[v] && forward > 3 * ell + 15 {
            return Err(Error::invariant(format!("good vertex {v} has {forward} forward neighbors")));
        }
    }
    Ok(out)
}

pub fn solve4_padded_fork_free(inst: &Instance, ell: usize) -> Result<Option<Coloring>> {
    solve4_padded_fork_free_with(inst, &Config::new(ell), &Stats::default())
}

pub fn solve4_padded_fork_free_with(inst: &Instance, config: &Config<'_>, stats: &Stats) -> Result<Option<Coloring>> {
    let ell = config.ell;
    if ell < 1 {
        return Err(Error::precondition("ℓ must be at least 1; use the fork-free solver for ℓ = 0"));
    }
    inst.check_palette(4)?;
    ensure_free(inst.graph(), &padded_fork(ell))?;
    if contains_clique(inst.graph(), 5).is_some() {
        return Ok(None);
    }
    let mut state = ListState::from_instance(inst);
    if state.propagate().is_err() {
        return Ok(None);
    }
    let solver = Solver { g: inst.graph(), ell, ram: ramsey_upper(5, ell), config, stats };
    let found = if config.small_classes { solver.small_classes(&state)? } else { None };
    let found = match found {
        Some(c) => Some(c),
        None => solver.first_blocks(&state)?,
    };
    if let Some(col) = &found {
        ensure_proper(inst, col).map_err(|e| Error::invariant(format!("assembled coloring is invalid: {e}")))?;
    }
    Ok(found)
}

struct Solver<'a> {
    g: &'a OrderedGraph,
    ell: usize,
    ram: usize,
    config: &'a Config<'a>,
    stats: &'a Stats,
}

/// Per-branch data carried from phase 2 onwards.
#[derive(Clone)]
struct Prefix {
    /// Prefix vertices grouped by their two-color list at the end of phase 2,
    /// in lexicographic order of the lists.
    groups: Vec<([u32; 2], Vec<usize>)>,
    /// For each list group that took the block branch, the block guessed for its smaller color.
    first_blocks: Vec<([u32; 2], Vec<usize>)>,
}

impl Solver<'_> {
    fn small_classes(&self, state: &ListState<'_>) -> Result<Option<Coloring>> {
        let alive = state.surviving();
        let mut branches = Vec::new();
        for i in 1..=4u32 {
            let holders: Vec<usize> = alive.iter().copied().filter(|&v| state.list(v).contains(i)).collect();
            for size in 0..self.ell {
                for set in holders.iter().copied().combinations(size) {
                    if self.g.is_independent(&set) {
                        branches.push((i, set));
                    }
                }
            }
        }
        first_sat(branches, |(i, set)| {
            Stats::bump(&self.stats.small_class_branches, 1);
            let mut child = state.clone();
            let ok = alive.iter().all(|&v| {
                if set.contains(&v) {
                    child.fix(v, i).is_ok()
                } else {
                    child.forbid(v, i).is_ok()
                }
            });
            if !ok || child.propagate().is_err() {
                return Ok(None);
            }
            let (residual, map) = child.residual();
            Ok(self.config.sub3.solve(&residual)?.map(|c| child.complete(&map, &c)))
        })
    }

    /// Phase 1: the first `ℓ` vertices of every color.
    fn first_blocks(&self, state: &ListState<'_>) -> Result<Option<Coloring>> {
        let base = state.surviving();
        let firsts = self.blocks_for(state, &base, 1, &[]);
        first_sat(firsts, |a| {
            let Some(child) = self.apply_first_block(state, &base, 1, &a) else {
                return Ok(None);
            };
            let mut used = a.clone();
            self.first_blocks_from(child, &base, 2, &mut used)
        })
    }

    fn first_blocks_from(&self, state: ListState<'_>, base: &[usize], i: u32, used: &mut Vec<usize>) -> Result<Option<Coloring>> {
        if i > 4 {
            Stats::bump(&self.stats.first_block_tuples, 1);
            return self.after_first_blocks(state);
        }
        for a in self.blocks_for(&state, base, i, used) {
            let Some(child) = self.apply_first_block(&state, base, i, &a) else {
                continue;
            };
            used.extend(&a);
            let found = self.first_blocks_from(child, base, i + 1, used)?;
            used.truncate(used.len() - a.len());
            if found.is_some() {
                return Ok(found);
            }
        }
        Ok(None)
    }

    fn blocks_for(&self, state: &ListState<'_>, base: &[usize], i: u32, used: &[usize]) -> Vec<Vec<usize>> {
        let cand: Vec<usize> = base
            .iter()
            .copied()
            .filter(|&v| state.list(v).contains(i) && !used.contains(&v))
            .collect();
        cand.into_iter()
            .combinations(self.ell)
            .filter(|a| self.g.is_independent(a))
            .collect()
    }

    fn apply_first_block<'g>(&self, state: &ListState<'g>, base: &[usize], i: u32, a: &[usize]) -> Option<ListState<'g>> {
        let mut child = state.clone();
        let last = *a.last()?;
        for &v in base {
            if a.contains(&v) {
                child.fix(v, i).ok()?;
            } else if v < last {
                child.forbid(v, i).ok()?;
            }
        }
        child.propagate().ok()?;
        Some(child)
    }

    fn alive_mask(state: &ListState<'_>) -> Vec<bool> {
        (0..state.lists().len()).map(|v| !state.is_removed(v)).collect()
    }

    /// Audits, classification and phase 2.
    fn after_first_blocks(&self, state: ListState<'_>) -> Result<Option<Coloring>> {
        if let Some(col) = state.forced_coloring() {
            return Ok(Some(col));
        }
        let alive = Self::alive_mask(&state);
        self.audit_common_color(&state, &alive)?;
        let class = classify(self.g, state.lists(), &alive, self.ell)?;
        self.audit_bad_non_neighbors(&state, &alive, &class)?;
        let survivors = state.surviving();
        let good: Vec<usize> = survivors.iter().copied().filter(|&v| class.good(v)).collect();
        Stats::bump(&self.stats.bad_vertices, (survivors.len() - good.len()) as u64);

        if good.len() < self.ram {
            Stats::bump(&self.stats.few_good_branches, 1);
            return self.guess_then(state, &good, &mut |s| {
                let (residual, map) = s.residual();
                if residual.lists().iter().any(|l| l.len() > 2) {
                    return Err(Error::invariant("a vertex outside the guessed good set has more than two colors"));
                }
                Ok(solve_two_lists(&residual)?.map(|c| s.complete(&map, &c)))
            });
        }

        let d = &good[..self.ram];
        let last_d = *d.last().expect("ram ≥ 1");
        let mut guessed: Vec<usize> = d.to_vec();
        for &v in d {
            guessed.extend(self.g.forward_neighbors(v).iter().filter(|&&u| alive[u]));
        }
        guessed.sort_unstable();
        guessed.dedup();
        let before_d: Vec<usize> = survivors.iter().copied().filter(|&v| v < last_d && !d.contains(&v)).collect();
        if let Some(&v) = before_d.iter().find(|&&v| class.good(v)) {
            return Err(Error::invariant(format!("vertex {v} before the first good block is good")));
        }
        self.guess_then(state, &guessed, &mut |s| {
            Stats::bump(&self.stats.prefix_branches, 1);
            let prefix: Vec<usize> = before_d.iter().copied().filter(|&v| !s.is_removed(v)).collect();
            Stats::bump(&self.stats.prefix_vertices, prefix.len() as u64);
            self.prefix_phase(s, &prefix)
        })
    }

    /// Forks of the current graph have no color common to all three lists.
    fn audit_common_color(&self, state: &ListState<'_>, alive: &[bool]) -> Result<()> {
        let mut forks = 0u64;
        for x in (0..alive.len()).filter(|&x| alive[x]) {
            let fwd: Vec<usize> = self.g.forward_neighbors(x).iter().copied().filter(|&u| alive[u]).collect();
            for (a, &y) in fwd.iter().enumerate() {
                for &z in &fwd[a + 1..] {
                    if self.g.has_edge(y, z) {
                        continue;
                    }
                    forks += 1;
                    let common = state.list(x).intersection(state.list(y)).intersection(state.list(z));
                    if !common.is_empty() {
                        return Err(Error::invariant(format!(
                            "fork ({x}, {y}, {z}) shares colors {common:?} after the first-block guess"
                        )));
                    }
                }
            }
        }
        Stats::bump(&self.stats.common_color_forks, forks);
        Ok(())
    }

    /// Each bad vertex misses at most `ram - 1` earlier bad vertices with another list.
    fn audit_bad_non_neighbors(&self, state: &ListState<'_>, alive: &[bool], class: &NeighborClassification) -> Result<()> {
        let bad: Vec<usize> = (0..alive.len()).filter(|&v| alive[v] && class.bad[v]).collect();
        for (idx, &v) in bad.iter().enumerate() {
            let missed = bad[..idx]
                .iter()
                .filter(|&&u| state.list(u) != state.list(v) && !self.g.has_edge(u, v))
                .count();
            if missed + 1 > self.ram {
                return Err(Error::invariant(format!(
                    "bad vertex {v} misses {missed} earlier bad vertices with other lists"
                )));
            }
        }
        Ok(())
    }

    /// Guesses a color for every vertex of `vs` in order, propagating after
    /// each guess, and calls `then` on every consistent outcome.
    fn guess_then<'g>(
        &self,
        state: ListState<'g>,
        vs: &[usize],
        then: &mut dyn FnMut(ListState<'g>) -> Result<Option<Coloring>>,
    ) -> Result<Option<Coloring>> {
        let Some((&v, rest)) = vs.split_first() else {
            return then(state);
        };
        for c in state.list(v).iter() {
            let mut child = state.clone();
            if child.fix(v, c).is_err() || child.propagate().is_err() {
                continue;
            }
            if let Some(col) = self.guess_then(child, rest, then)? {
                return Ok(Some(col));
            }
        }
        Ok(None)
    }

    /// Phase 3 entry: group the prefix by list and check bipartiteness.
    fn prefix_phase(&self, state: ListState<'_>, prefix: &[usize]) -> Result<Option<Coloring>> {
        let mut groups = Vec::new();
        for x in [1u32, 2, 3, 4].into_iter().combinations(2) {
            let x = [x[0], x[1]];
            let members: Vec<usize> = prefix.iter().copied().filter(|&v| state.list(v).as_slice() == x).collect();
            if !members.is_empty() {
                if !is_bipartite(self.g, &members) {
                    return Ok(None);
                }
                groups.push((x, members));
            }
        }
        let grouped: usize = groups.iter().map(|(_, m)| m.len()).sum();
        if grouped != prefix.len() {
            return Err(Error::invariant("a prefix vertex does not have a two-color list"));
        }
        let ctx = Prefix { groups, first_blocks: Vec::new() };
        self.group_branches(state, ctx, 0)
    }

    fn group_branches(&self, state: ListState<'_>, ctx: Prefix, idx: usize) -> Result<Option<Coloring>> {
        let Some((x, members)) = ctx.groups.get(idx).cloned() else {
            return self.final_phase(state, &ctx);
        };
        let [i, j] = x;
        if members.len() < 2 * self.ell {
            return self.guess_then(state, &members, &mut |s| {
                Stats::bump(&self.stats.list_group_branches, 1);
                self.group_branches(s, ctx.clone(), idx + 1)
            });
        }
        // one color of the pair is used fewer than ℓ times on the group
        for iota in [i, j] {
            for size in 0..self.ell {
                for u in members.iter().copied().combinations(size) {
                    Stats::bump(&self.stats.list_group_branches, 1);
                    let mut child = state.clone();
                    let ok = members.iter().all(|&v| {
                        if u.contains(&v) {
                            child.fix(v, iota).is_ok()
                        } else {
                            child.forbid(v, iota).is_ok()
                        }
                    });
                    if !ok || child.propagate().is_err() {
                        continue;
                    }
                    if let Some(col) = self.group_branches(child, ctx.clone(), idx + 1)? {
                        return Ok(Some(col));
                    }
                }
            }
        }
        // both colors used at least ℓ times: guess the first ℓ of each
        let independent: Vec<Vec<usize>> = members
            .iter()
            .copied()
            .combinations(self.ell)
            .filter(|u| self.g.is_independent(u))
            .collect();
        for ui in &independent {
            for uj in &independent {
                if ui.iter().any(|v| uj.contains(v)) {
                    continue;
                }
                Stats::bump(&self.stats.list_group_branches, 1);
                let Some(child) = self.apply_group_blocks(&state, &members, (i, ui), (j, uj)) else {
                    continue;
                };
                let mut next = ctx.clone();
                next.first_blocks.push((x, ui.clone()));
                if let Some(col) = self.group_branches(child, next, idx + 1)? {
                    return Ok(Some(col));
                }
            }
        }
        Ok(None)
    }

    fn apply_group_blocks<'g>(
        &self,
        state: &ListState<'g>,
        members: &[usize],
        (i, ui): (u32, &[usize]),
        (j, uj): (u32, &[usize]),
    ) -> Option<ListState<'g>> {
        let mut child = state.clone();
        let (last_i, last_j) = (*ui.last()?, *uj.last()?);
        for &v in members {
            if ui.contains(&v) {
                child.fix(v, i).ok()?;
            } else if uj.contains(&v) {
                child.fix(v, j).ok()?;
            }
        }
        for &v in members {
            if !ui.contains(&v) && v < last_i {
                child.forbid(v, i).ok()?;
            }
            if !uj.contains(&v) && v < last_j {
                child.forbid(v, j).ok()?;
            }
        }
        child.propagate().ok()?;
        Some(child)
    }

    /// Phase 4.
    fn final_phase(&self, state: ListState<'_>, ctx: &Prefix) -> Result<Option<Coloring>> {
        let prefix_alive: Vec<usize> = ctx
            .groups
            .iter()
            .flat_map(|(_, m)| m.iter().copied())
            .filter(|&v| !state.is_removed(v))
            .collect();
        Stats::bump(&self.stats.two_list_audits, 1);
        let mut lists: Vec<ColorSet> = Vec::new();
        for &v in &prefix_alive {
            let l = state.list(v);
            if let Some(other) = lists.iter().find(|o| *o != l && o.intersects(l)) {
                return Err(Error::invariant(format!(
                    "prefix vertex {v} has list {l:?} overlapping another prefix list {other:?}"
                )));
            }
            if !lists.contains(l) {
                lists.push(l.clone());
            }
        }
        let mut y = Vec::new();
        for l in &lists {
            let pair = [l.as_slice()[0], l.as_slice()[1]];
            let Some((_, block)) = ctx.first_blocks.iter().find(|(x, _)| *x == pair) else {
                return Err(Error::invariant(format!("surviving prefix list {l:?} has no guessed first block")));
            };
            for &u in block {
                for &w in self.g.forward_neighbors(u) {
                    if !state.is_removed(w) && state.list(w).intersects(l) {
                        y.push(w);
                    }
                }
            }
        }
        y.sort_unstable();
        y.dedup();
        Stats::bump(&self.stats.final_guessed, y.len() as u64);
        let in_prefix = {
            let mut mask = vec![false; self.g.n()];
            for (_, m) in &ctx.groups {
                for &v in m {
                    mask[v] = true;
                }
            }
            mask
        };
        self.guess_then(state, &y, &mut |s| {
            Stats::bump(&self.stats.final_instances, 1);
            let (residual, map) = s.residual();
            let complementary = |a: &ColorSet, b: &ColorSet| {
                lists.iter().any(|l| a == l) && a.len() == 2 && b.len() == 2 && !a.intersects(b)
            };
            let graph = residual.graph().without_edges(|a, b| {
                (in_prefix[map[a]] || in_prefix[map[b]])
                    && (complementary(residual.list(a), residual.list(b)) || complementary(residual.list(b), residual.list(a)))
            });
            Stats::bump(&self.stats.deleted_edges, (residual.graph().edge_count() - graph.edge_count()) as u64);
            if let Some(w) = find_induced(&graph, &fork()) {
                let w: Vec<usize> = w.iter().map(|&x| map[x]).collect();
                return Err(Error::invariant(format!("final graph contains a fork at {w:?}")));
            }
            let reduced = residual.with_graph(graph)?;
            Ok(solve_fork_free(&reduced)?.map(|c| s.complete(&map, &c)))
        })
    }
}

fn is_bipartite(g: &OrderedGraph, vs: &[usize]) -> bool {
    let sub = g.induced_unchecked(vs);
    let mut side: Vec<Option<bool>> = vec![None; sub.n()];
    for root in 0..sub.n() {
        if side[root].is_some() {
            continue;
        }
        side[root] = Some(false);
        let mut stack = vec![root];
        while let Some(v) = stack.pop() {
            let s = side[v].expect("visited");
            for &u in sub.neighbors(v) {
                match side[u] {
                    None => {
                        side[u] = Some(!s);
                        stack.push(u);
                    }
                    Some(t) if t == s => return false,
                    _ => {}
                }
            }
        }
    }
    true
}
