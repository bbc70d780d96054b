//! Links: ordered list-labeled graphs whose first vertices are inputs and
//! last vertices are outputs, free of the nested-pair pattern. Chaining two
//! links identifies the outputs of the first with the inputs of the second
//! and keeps the pattern out. Built here: wires, rotations and general
//! permutations, plus an enumeration-based semantics checker.
//!
//! Positions, permutations and rotations are 0-based. A permutation `sigma`
//! sends input `i` to output `sigma[i]`.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{ColorSet, Instance, OrderedGraph};
use crate::oracle::solve_pinned;
use crate::patterns::{find_induced, nested_pair};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Link {
    instance: Instance,
    inputs: usize,
    outputs: usize,
}

fn wire_list() -> ColorSet {
    ColorSet::from([1, 2])
}

impl Link {
    /// Checks every link condition, reporting a nested pair with its witness.
    pub fn new(instance: Instance, inputs: usize, outputs: usize) -> Result<Link> {
        let n = instance.n();
        if inputs + outputs > n {
            return Err(Error::precondition(format!(
                "{inputs} inputs and {outputs} outputs do not fit in {n} vertices"
            )));
        }
        let ins: Vec<usize> = (0..inputs).collect();
        let outs: Vec<usize> = (n - outputs..n).collect();
        let g = instance.graph();
        if !g.is_independent(&ins) || !g.is_independent(&outs) {
            return Err(Error::precondition("input and output vertices must be independent"));
        }
        if let Some(&v) = ins.iter().chain(&outs).find(|&&v| instance.list(v) != &wire_list()) {
            return Err(Error::precondition(format!("terminal {v} must have list {{1,2}}")));
        }
        if let Some(witness) = find_induced(g, &nested_pair()) {
            return Err(Error::PatternFound { pattern: nested_pair().name, witness });
        }
        Ok(Link { instance, inputs, outputs })
    }

    // For constructions that are free of the pattern by design: a violation is a bug.
    pub(crate) fn certified(instance: Instance, inputs: usize, outputs: usize) -> Result<Link> {
        Link::new(instance, inputs, outputs).map_err(|e| match e {
            Error::PatternFound { witness, .. } => {
                Error::invariant(format!("constructed link contains a nested pair at {witness:?}"))
            }
            other => other,
        })
    }

    pub fn instance(&self) -> &Instance {
        &self.instance
    }

    pub fn into_instance(self) -> Instance {
        self.instance
    }

    pub fn n(&self) -> usize {
        self.instance.n()
    }

    pub fn inputs(&self) -> usize {
        self.inputs
    }

    pub fn outputs(&self) -> usize {
        self.outputs
    }

    pub fn input(&self, i: usize) -> usize {
        assert!(i < self.inputs);
        i
    }

    pub fn output(&self, i: usize) -> usize {
        assert!(i < self.outputs);
        self.n() - self.outputs + i
    }

    /// The same link with colors 1 and 2 exchanged in every list.
    pub fn swap_colors(&self) -> Link {
        let swap = |c: u32| match c {
            1 => 2,
            2 => 1,
            c => c,
        };
        let lists = self.instance.lists().iter().map(|l| l.iter().map(swap).collect()).collect();
        Link {
            instance: self.instance.with_lists(lists).expect("same vertex count"),
            inputs: self.inputs,
            outputs: self.outputs,
        }
    }
}

pub fn chain(a: &Link, b: &Link) -> Result<Link> {
    chain_all(&[a.clone(), b.clone()])
}

/// Chains the links left to right in one pass.
pub fn chain_all(links: &[Link]) -> Result<Link> {
    let Some(first) = links.first() else {
        return Err(Error::precondition("nothing to chain"));
    };
    for (i, w) in links.windows(2).enumerate() {
        if w[0].outputs != w[1].inputs {
            return Err(Error::precondition(format!(
                "link {i} has {} outputs but link {} has {} inputs",
                w[0].outputs,
                i + 1,
                w[1].inputs
            )));
        }
        for t in 0..w[1].inputs {
            if w[0].instance.list(w[0].output(t)) != w[1].instance.list(t) {
                return Err(Error::precondition(format!("identified terminal {t} of link {i} has a different list")));
            }
        }
    }
    let mut lists: Vec<ColorSet> = first.instance.lists().to_vec();
    let mut edges: Vec<(usize, usize)> = first.instance.graph().edges().collect();
    for link in &links[1..] {
        // the inputs of `link` are the last `inputs` vertices built so far
        let offset = lists.len() - link.inputs;
        lists.extend(link.instance.lists()[link.inputs..].iter().cloned());
        edges.extend(link.instance.graph().edges().map(|(u, v)| (u + offset, v + offset)));
    }
    let n = lists.len();
    let last = links.last().expect("nonempty");
    let inst = Instance::new(OrderedGraph::new(n, edges)?, lists)?;
    Link::certified(inst, first.inputs, last.outputs)
}

/// Parallel paths `x_i - m_i - y_i` on `3 * ell` vertices.
pub fn identity_link(ell: usize) -> Result<Link> {
    if ell == 0 {
        return Err(Error::precondition("a wire bundle needs at least one wire"));
    }
    let edges = (0..ell).flat_map(|i| [(i, ell + i), (ell + i, 2 * ell + i)]);
    let inst = Instance::new(OrderedGraph::new(3 * ell, edges)?, vec![wire_list(); 3 * ell])?;
    Link::certified(inst, ell, ell)
}

/// Cyclic shift of positions `j..=k` of `0..len`: position `k` moves to `j`
/// and each of `j..k` moves up by one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Rotation {
    pub len: usize,
    pub j: usize,
    pub k: usize,
}

impl Rotation {
    pub fn apply(&self, i: usize) -> usize {
        if i < self.j || i > self.k {
            i
        } else if i < self.k {
            i + 1
        } else {
            self.j
        }
    }

    pub fn is_identity(&self) -> bool {
        self.j == self.k
    }

    pub fn as_permutation(&self) -> Vec<usize> {
        (0..self.len).map(|i| self.apply(i)).collect()
    }
}

/// Permutation link for the rotation `(len; j, k)` with `j < k`, on
/// `5 * len + 2` vertices in five layers of sizes len, len+1, len, len+1, len.
pub fn rotation_gadget(len: usize, j: usize, k: usize) -> Result<Link> {
    if !(j < k && k < len) {
        return Err(Error::precondition(format!("rotation needs j < k < len, got j={j}, k={k}, len={len}")));
    }
    let l = len;
    // 1-based layer-local indices below
    let (j1, k1) = (j + 1, k + 1);
    let starts = [0, l, 2 * l + 1, 3 * l + 1, 4 * l + 2];
    let s = |p: usize, i: usize| starts[p - 1] + i - 1;
    let n = 5 * l + 2;
    let mut lists = vec![wire_list(); n];
    lists[s(2, k1)] = ColorSet::from([1, 4]);
    lists[s(4, j1)] = ColorSet::from([1, 4]);
    lists[s(2, k1 + 1)] = ColorSet::from([2, 3]);
    lists[s(4, j1 + 1)] = ColorSet::from([2, 3]);
    lists[s(3, k1)] = ColorSet::from([3, 4]);

    let mut edges = Vec::new();
    for i in 1..=k1 {
        edges.push((s(1, i), s(2, i)));
    }
    for i in k1..=l {
        edges.push((s(1, i), s(2, i + 1)));
    }
    for i in 1..=k1 {
        edges.push((s(2, i), s(3, i)));
    }
    for i in k1 + 1..=l + 1 {
        edges.push((s(2, i), s(3, i - 1)));
    }
    for i in (1..=l).filter(|&i| i != k1) {
        edges.push((s(3, k1), s(3, i)));
    }
    for i in 1..j1 {
        edges.push((s(3, i), s(4, i)));
    }
    for i in j1..k1 {
        edges.push((s(3, i), s(4, i + 2)));
    }
    edges.push((s(3, k1), s(4, j1)));
    edges.push((s(3, k1), s(4, j1 + 1)));
    for i in k1 + 1..=l {
        edges.push((s(3, i), s(4, i + 1)));
    }
    for i in 1..=j1 {
        edges.push((s(4, i), s(5, i)));
    }
    for i in j1 + 1..=l + 1 {
        edges.push((s(4, i), s(5, i - 1)));
    }
    let inst = Instance::new(OrderedGraph::new(n, edges)?, lists)?;
    Link::certified(inst, l, l)
}

pub fn ensure_permutation(sigma: &[usize]) -> Result<()> {
    let mut seen = vec![false; sigma.len()];
    for &s in sigma {
        if s >= sigma.len() || std::mem::replace(&mut seen[s], true) {
            return Err(Error::precondition(format!("{sigma:?} is not a permutation")));
        }
    }
    Ok(())
}

pub fn inverse(sigma: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; sigma.len()];
    for (i, &s) in sigma.iter().enumerate() {
        inv[s] = i;
    }
    inv
}

/// Writes `sigma` as `len - 1` rotations `r_1, ..., r_{len-1}` with
/// `sigma = r_{len-1} ∘ ... ∘ r_1`, selection-sort style: step `p` moves the
/// element destined for position `p` there from its current position.
pub fn decompose_rotations(sigma: &[usize]) -> Result<Vec<Rotation>> {
    ensure_permutation(sigma)?;
    let len = sigma.len();
    let target = inverse(sigma);
    let mut cur: Vec<usize> = (0..len).collect();
    let mut out = Vec::new();
    for p in 0..len.saturating_sub(1) {
        let r = Rotation { len, j: p, k: cur[target[p]] };
        for c in cur.iter_mut() {
            *c = r.apply(*c);
        }
        out.push(r);
    }
    Ok(out)
}

/// A link whose colorings copy input `i` to output `sigma[i]`, chained from
/// rotation gadgets; identity steps become wire bundles.
pub fn permutation_gadget(sigma: &[usize]) -> Result<Link> {
    ensure_permutation(sigma)?;
    let rotations = decompose_rotations(sigma)?;
    if rotations.is_empty() {
        return identity_link(sigma.len());
    }
    let links = rotations
        .iter()
        .map(|r| if r.is_identity() { identity_link(r.len) } else { rotation_gadget(r.len, r.j, r.k) })
        .collect::<Result<Vec<_>>>()?;
    chain_all(&links)
}

/// Achievable output tuples for one input assignment; `None` when the
/// assignment does not extend to a coloring.
pub type Outputs = Option<BTreeSet<Vec<u32>>>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub input: Vec<u32>,
    pub expected: Outputs,
    pub actual: Outputs,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SemanticsReport {
    pub inputs_checked: usize,
    pub mismatches: Vec<Mismatch>,
}

impl SemanticsReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// All tuples over {1,2} of length `len`, lexicographically.
pub fn wire_tuples(len: usize) -> Vec<Vec<u32>> {
    assert!(len < 32, "too many wires to enumerate");
    (0..1u32 << len)
        .map(|m| (0..len).map(|i| if m >> (len - 1 - i) & 1 == 0 { 1 } else { 2 }).collect())
        .collect()
}

/// Outputs reachable from `input` by some coloring of the link.
pub fn achievable_outputs(link: &Link, input: &[u32]) -> Outputs {
    let mut pins: Vec<(usize, u32)> = input.iter().enumerate().map(|(i, &c)| (link.input(i), c)).collect();
    solve_pinned(link.instance(), &pins)?;
    let mut found = BTreeSet::new();
    let mut prefix = Vec::new();
    collect_outputs(link, &mut pins, &mut prefix, &mut found);
    Some(found)
}

fn collect_outputs(link: &Link, pins: &mut Vec<(usize, u32)>, prefix: &mut Vec<u32>, found: &mut BTreeSet<Vec<u32>>) {
    if prefix.len() == link.outputs() {
        found.insert(prefix.clone());
        return;
    }
    let v = link.output(prefix.len());
    for c in [1, 2] {
        pins.push((v, c));
        if solve_pinned(link.instance(), pins).is_some() {
            prefix.push(c);
            collect_outputs(link, pins, prefix, found);
            prefix.pop();
        }
        pins.pop();
    }
}

/// Compares, for every input assignment, the achievable outputs with `expected`.
pub fn verify_link_semantics(link: &Link, expected: impl Fn(&[u32]) -> Outputs + Sync) -> SemanticsReport {
    let inputs = wire_tuples(link.inputs());
    let mismatches: Vec<Mismatch> = inputs
        .par_iter()
        .filter_map(|input| {
            let actual = achievable_outputs(link, input);
            let expected = expected(input);
            (actual != expected).then(|| Mismatch { input: input.clone(), expected, actual })
        })
        .collect();
    SemanticsReport { inputs_checked: inputs.len(), mismatches }
}

/// Reference semantics of a permutation link: always feasible, outputs forced.
pub fn permutation_semantics(sigma: &[usize]) -> impl Fn(&[u32]) -> Outputs + Sync + '_ {
    move |input| {
        let mut out = vec![0; sigma.len()];
        for (i, &s) in sigma.iter().enumerate() {
            out[s] = input[i];
        }
        Some(BTreeSet::from([out]))
    }
}
