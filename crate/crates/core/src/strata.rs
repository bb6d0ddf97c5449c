//! Boundary-stratum combinatorics for the two compactifications.
//!
//! Chain-side strata are ordered set partitions of the marking set
//! ([`LMType`], blocks listed from the 0-end to the ∞-end). Translation-
//! side strata are stable marked rooted trees ([`PnType`]): the root is
//! the `p_infty` component; markings live on leaves; internal vertices
//! need total degree ≥ 3 and the root needs ≥ 2 children unless the tree
//! is a single vertex carrying everything.
//!
//! The closure order is combinatorial: merging adjacent blocks on the
//! chain side, and validity-preserving edge contraction on the tree side,
//! computed by search. Both are validated against the limit sampler
//! rather than asserted.

use crate::curve::{ChartPoint, Component, CurvePoint, MarkedCurve, Node};
use crate::exactalg::rat::rat;
use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StrataError {
    #[error("n = {0} is out of the supported range 1..={1}")]
    OutOfRange(usize, usize),
    #[error("stratum types over different marking sets: n = {0} vs {1}")]
    KindMismatch(usize, usize),
    #[error("invalid stratum type: {0}")]
    BadType(String),
}

pub const LM_MAX_N: usize = 6;
pub const PN_MAX_N: usize = 5;

// ---------------------------------------------------------------------------
// Chain-side types
// ---------------------------------------------------------------------------

/// An ordered set partition of `{1..n}`, blocks from the 0-end to the
/// ∞-end of the chain.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LMType {
    n: usize,
    blocks: Vec<BTreeSet<usize>>,
}

impl LMType {
    pub fn new(n: usize, blocks: Vec<BTreeSet<usize>>) -> Result<Self, StrataError> {
        let mut seen = BTreeSet::new();
        for b in &blocks {
            if b.is_empty() {
                return Err(StrataError::BadType("empty block".into()));
            }
            for &e in b {
                if e < 1 || e > n || !seen.insert(e) {
                    return Err(StrataError::BadType(format!("bad or repeated element {e}")));
                }
            }
        }
        if seen.len() != n {
            return Err(StrataError::BadType("blocks do not exhaust the marking set".into()));
        }
        Ok(LMType { n, blocks })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[BTreeSet<usize>] {
        &self.blocks
    }

    /// Parses `"12|3"`-style notation (single-digit markings, blocks from
    /// the 0-end).
    pub fn parse(s: &str, n: usize) -> Result<Self, StrataError> {
        let mut blocks = Vec::new();
        for part in s.split('|') {
            let mut block = BTreeSet::new();
            for ch in part.trim().chars() {
                let d = ch
                    .to_digit(10)
                    .ok_or_else(|| StrataError::BadType(format!("bad marking {ch:?}")))?;
                block.insert(d as usize);
            }
            blocks.push(block);
        }
        LMType::new(n, blocks)
    }

    pub fn render(&self) -> String {
        self.blocks
            .iter()
            .map(|b| b.iter().map(|e| e.to_string()).collect::<String>())
            .collect::<Vec<_>>()
            .join("|")
    }

    /// Relabels markings through the permutation `perm` (1-based:
    /// marking `i` becomes `perm[i-1]`).
    pub fn relabel(&self, perm: &[usize]) -> LMType {
        let blocks = self
            .blocks
            .iter()
            .map(|b| b.iter().map(|&e| perm[e - 1]).collect())
            .collect();
        LMType::new(self.n, blocks).expect("permutation keeps the type valid")
    }
}

impl fmt::Display for LMType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

/// All ordered set partitions of `{1..n}`, built by repeated insertion
/// (element `i` joins an existing block or founds a new one at any gap),
/// in a deterministic order.
pub fn lm_types(n: usize) -> Result<Vec<LMType>, StrataError> {
    if !(1..=LM_MAX_N).contains(&n) {
        return Err(StrataError::OutOfRange(n, LM_MAX_N));
    }
    let mut partial: Vec<Vec<BTreeSet<usize>>> = vec![vec![BTreeSet::from([1])]];
    for i in 2..=n {
        let mut next = Vec::new();
        for p in &partial {
            for pos in 0..p.len() {
                let mut q = p.clone();
                q[pos].insert(i);
                next.push(q);
            }
            for gap in 0..=p.len() {
                let mut q = p.clone();
                q.insert(gap, BTreeSet::from([i]));
                next.push(q);
            }
        }
        partial = next;
    }
    partial.sort();
    partial.dedup();
    Ok(partial
        .into_iter()
        .map(|blocks| LMType { n, blocks })
        .collect())
}

/// Chain-side closure order: `a ≤ b` iff `b` is obtained from `a` by
/// merging adjacent blocks.
pub fn lm_closure_leq(a: &LMType, b: &LMType) -> Result<bool, StrataError> {
    if a.n != b.n {
        return Err(StrataError::KindMismatch(a.n, b.n));
    }
    let mut i = 0;
    for target in &b.blocks {
        let mut acc = BTreeSet::new();
        while acc.len() < target.len() && i < a.blocks.len() {
            acc.extend(a.blocks[i].iter().copied());
            i += 1;
        }
        if acc != *target {
            return Ok(false);
        }
    }
    Ok(i == a.blocks.len())
}

// ---------------------------------------------------------------------------
// Translation-side types
// ---------------------------------------------------------------------------

/// A vertex of a stable marked rooted tree: a leaf carrying markings or
/// an internal vertex with ≥ 2 children (children kept sorted).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PnVertex {
    Leaf(BTreeSet<usize>),
    Internal(Vec<PnVertex>),
}

impl PnVertex {
    fn marks(&self, out: &mut BTreeSet<usize>) {
        match self {
            PnVertex::Leaf(b) => out.extend(b.iter().copied()),
            PnVertex::Internal(ch) => ch.iter().for_each(|c| c.marks(out)),
        }
    }

    fn validate(&self, is_root: bool) -> Result<(), StrataError> {
        match self {
            PnVertex::Leaf(b) => {
                if b.is_empty() {
                    return Err(StrataError::BadType("leaf without markings".into()));
                }
                Ok(())
            }
            PnVertex::Internal(ch) => {
                // root needs ≥ 2 children; a non-root internal vertex has a
                // parent, so ≥ 2 children give total degree ≥ 3
                if ch.len() < 2 {
                    return Err(StrataError::BadType(format!(
                        "{} vertex with {} children",
                        if is_root { "root" } else { "internal" },
                        ch.len()
                    )));
                }
                if ch.windows(2).any(|w| w[0] > w[1]) {
                    return Err(StrataError::BadType("children out of canonical order".into()));
                }
                ch.iter().try_for_each(|c| c.validate(false))
            }
        }
    }

    fn render(&self) -> String {
        match self {
            PnVertex::Leaf(b) => format!(
                "leaf{{{}}}",
                b.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(",")
            ),
            PnVertex::Internal(ch) => format!(
                "int[{}]",
                ch.iter().map(|c| c.render()).collect::<Vec<_>>().join(", ")
            ),
        }
    }
}

/// A translation-side stratum type: either a single vertex carrying all
/// markings, or a root (the `p_infty` component, no markings) with ≥ 2
/// child subtrees.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PnType {
    n: usize,
    tree: PnVertex,
}

impl PnType {
    pub fn new(n: usize, tree: PnVertex) -> Result<Self, StrataError> {
        tree.validate(true)?;
        let mut marks = BTreeSet::new();
        tree.marks(&mut marks);
        let expected: BTreeSet<usize> = (1..=n).collect();
        if marks != expected {
            return Err(StrataError::BadType(format!(
                "markings {marks:?} do not exhaust 1..={n}"
            )));
        }
        // disjointness: total count must match
        fn count(v: &PnVertex) -> usize {
            match v {
                PnVertex::Leaf(b) => b.len(),
                PnVertex::Internal(ch) => ch.iter().map(count).sum(),
            }
        }
        if count(&tree) != n {
            return Err(StrataError::BadType("marking sets overlap".into()));
        }
        Ok(PnType { n, tree })
    }

    /// The one-vertex type.
    pub fn open(n: usize) -> Self {
        PnType {
            n,
            tree: PnVertex::Leaf((1..=n).collect()),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn tree(&self) -> &PnVertex {
        &self.tree
    }

    pub fn is_open(&self) -> bool {
        matches!(self.tree, PnVertex::Leaf(_))
    }

    pub fn render(&self) -> String {
        match &self.tree {
            PnVertex::Leaf(b) => format!(
                "vertex{{{}}}",
                b.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(",")
            ),
            PnVertex::Internal(ch) => format!(
                "root[{}]",
                ch.iter().map(|c| c.render()).collect::<Vec<_>>().join(", ")
            ),
        }
    }

    /// Relabels markings through the permutation (1-based).
    pub fn relabel(&self, perm: &[usize]) -> PnType {
        fn go(v: &PnVertex, perm: &[usize]) -> PnVertex {
            match v {
                PnVertex::Leaf(b) => PnVertex::Leaf(b.iter().map(|&e| perm[e - 1]).collect()),
                PnVertex::Internal(ch) => {
                    let mut kids: Vec<PnVertex> = ch.iter().map(|c| go(c, perm)).collect();
                    kids.sort();
                    PnVertex::Internal(kids)
                }
            }
        }
        PnType::new(self.n, go(&self.tree, perm)).expect("permutation keeps the type valid")
    }
}

impl fmt::Display for PnType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

/// Builds an internal vertex, sorting the children canonically.
pub fn pn_internal(mut children: Vec<PnVertex>) -> PnVertex {
    children.sort();
    PnVertex::Internal(children)
}

fn set_partitions(elems: &[usize]) -> Vec<Vec<BTreeSet<usize>>> {
    let mut parts: Vec<Vec<BTreeSet<usize>>> = vec![vec![]];
    for &e in elems {
        let mut next = Vec::new();
        for p in &parts {
            for i in 0..p.len() {
                let mut q = p.clone();
                q[i].insert(e);
                next.push(q);
            }
            let mut q = p.clone();
            q.push(BTreeSet::from([e]));
            next.push(q);
        }
        parts = next;
    }
    parts
}

fn subtrees_over(marks: &BTreeSet<usize>) -> Vec<PnVertex> {
    let mut out = vec![PnVertex::Leaf(marks.clone())];
    if marks.len() >= 2 {
        let elems: Vec<usize> = marks.iter().copied().collect();
        for partition in set_partitions(&elems) {
            if partition.len() < 2 {
                continue;
            }
            let choices: Vec<Vec<PnVertex>> = partition.iter().map(subtrees_over).collect();
            for assignment in cartesian(&choices) {
                out.push(pn_internal(assignment));
            }
        }
    }
    out
}

fn cartesian(choices: &[Vec<PnVertex>]) -> Vec<Vec<PnVertex>> {
    let mut acc: Vec<Vec<PnVertex>> = vec![vec![]];
    for c in choices {
        let mut next = Vec::new();
        for partial in &acc {
            for item in c {
                let mut q = partial.clone();
                q.push(item.clone());
                next.push(q);
            }
        }
        acc = next;
    }
    acc
}

/// All translation-side stratum types on `n` markings, duplicate-free,
/// in a deterministic order.
pub fn pn_types(n: usize) -> Result<Vec<PnType>, StrataError> {
    if !(1..=PN_MAX_N).contains(&n) {
        return Err(StrataError::OutOfRange(n, PN_MAX_N));
    }
    let mut out = vec![PnType::open(n)];
    let elems: Vec<usize> = (1..=n).collect();
    for partition in set_partitions(&elems) {
        if partition.len() < 2 {
            continue;
        }
        let choices: Vec<Vec<PnVertex>> = partition.iter().map(subtrees_over).collect();
        for assignment in cartesian(&choices) {
            out.push(PnType {
                n,
                tree: pn_internal(assignment),
            });
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// A stratum type handle for dimension and closure queries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StratumType {
    Lm(LMType),
    Pn(PnType),
}

/// Dimension of the chain-side stratum: `n − #blocks`.
pub fn lm_dim(t: &LMType) -> usize {
    t.n - t.blocks.len()
}

/// Dimension of the translation-side stratum: leaf moduli are positions
/// modulo translation, internal moduli are node positions modulo the
/// chart group, and the root has `p_infty` pinned.
pub fn pn_dim(t: &PnType) -> usize {
    match &t.tree {
        PnVertex::Leaf(_) => t.n - 1,
        PnVertex::Internal(children) => {
            fn go(v: &PnVertex, is_root: bool) -> usize {
                match v {
                    PnVertex::Leaf(b) => b.len() - 1,
                    PnVertex::Internal(ch) => {
                        let sub: usize = ch.iter().map(|c| go(c, false)).sum();
                        let deg = ch.len() + usize::from(!is_root);
                        // root: deg − 2; internal: deg − 3
                        sub + deg - if is_root { 2 } else { 3 }
                    }
                }
            }
            children.iter().map(|c| go(c, false)).sum::<usize>() + children.len() - 2
        }
    }
}

pub fn stratum_dim(t: &StratumType) -> usize {
    match t {
        StratumType::Lm(t) => lm_dim(t),
        StratumType::Pn(t) => pn_dim(t),
    }
}

// ---------------------------------------------------------------------------
// Translation-side closure order
// ---------------------------------------------------------------------------

/// Single contraction steps from a type: contracting one edge between two
/// non-leaf vertices, or collapsing a vertex whose children are all
/// leaves onto one marked leaf (the only way a leaf edge can contract
/// while keeping the absorbing vertex legal).
fn pn_steps(t: &PnType) -> Vec<PnType> {
    let mut out = Vec::new();

    // Collapse of the whole root star (root plus all-leaf children).
    if let PnVertex::Internal(children) = &t.tree {
        if children.iter().all(|c| matches!(c, PnVertex::Leaf(_))) {
            out.push(PnType::open(t.n));
        }
    }

    // Rewrites inside the tree. Returns every variant of `v` obtained by
    // performing exactly one step in its subtree.
    fn variants(v: &PnVertex, is_root: bool) -> Vec<PnVertex> {
        let PnVertex::Internal(children) = v else {
            return vec![];
        };
        let mut out = Vec::new();

        for (i, child) in children.iter().enumerate() {
            if let PnVertex::Internal(grandkids) = child {
                // contract the edge v -- child: v absorbs the grandchildren
                let mut merged: Vec<PnVertex> = children
                    .iter()
                    .enumerate()
                    .filter(|(j, _)| *j != i)
                    .map(|(_, c)| c.clone())
                    .collect();
                merged.extend(grandkids.iter().cloned());
                out.push(pn_internal(merged));

                // collapse the child's leaf star: child becomes a leaf
                if grandkids.iter().all(|g| matches!(g, PnVertex::Leaf(_))) {
                    let mut union = BTreeSet::new();
                    child.marks(&mut union);
                    let mut replaced = children.clone();
                    replaced[i] = PnVertex::Leaf(union);
                    out.push(pn_internal(replaced));
                }

                // recurse deeper
                for variant in variants(child, false) {
                    let mut replaced = children.clone();
                    replaced[i] = variant;
                    out.push(pn_internal(replaced));
                }
            }
        }
        let _ = is_root;
        out
    }

    for tree in variants(&t.tree, true) {
        if let Ok(t2) = PnType::new(t.n, tree) {
            out.push(t2);
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Translation-side closure order, the reflexive-transitive closure of
/// the contraction steps, computed by search.
pub fn pn_closure_leq(a: &PnType, b: &PnType) -> Result<bool, StrataError> {
    if a.n != b.n {
        return Err(StrataError::KindMismatch(a.n, b.n));
    }
    if a == b {
        return Ok(true);
    }
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::from([a.clone()]);
    while let Some(t) = queue.pop_front() {
        for next in pn_steps(&t) {
            if next == *b {
                return Ok(true);
            }
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    Ok(false)
}

pub fn closure_leq(a: &StratumType, b: &StratumType) -> Result<bool, StrataError> {
    match (a, b) {
        (StratumType::Lm(a), StratumType::Lm(b)) => lm_closure_leq(a, b),
        (StratumType::Pn(a), StratumType::Pn(b)) => pn_closure_leq(a, b),
        _ => Err(StrataError::BadType("mixed stratum families".into())),
    }
}

/// Counts of chain-side types by dimension (index = dimension). The count
/// at dimension 0 is `n!`, the permutohedron vertices.
pub fn perm_f_vector(n: usize) -> Result<Vec<usize>, StrataError> {
    let types = lm_types(n)?;
    let mut counts = vec![0usize; n];
    for t in &types {
        counts[lm_dim(t)] += 1;
    }
    Ok(counts)
}

// ---------------------------------------------------------------------------
// Witness curves
// ---------------------------------------------------------------------------

/// A marked curve realizing the stratum type: the root carries `p_infty`
/// at ∞ and children at 1, 2, …; leaves carry the translation field with
/// markings at 0, 1, …; internal vertices carry the zero field.
pub fn pn_witness(t: &PnType) -> MarkedCurve {
    let mut components = Vec::new();
    let mut nodes = Vec::new();
    let mut markings: Vec<(usize, CurvePoint)> = Vec::new();
    let mut next_id = 0u32;

    fn build(
        v: &PnVertex,
        components: &mut Vec<Component>,
        nodes: &mut Vec<Node>,
        markings: &mut Vec<(usize, CurvePoint)>,
        next_id: &mut u32,
    ) -> u32 {
        let id = *next_id;
        *next_id += 1;
        match v {
            PnVertex::Leaf(marks) => {
                components.push(Component {
                    id,
                    field: [rat(1), rat(0), rat(0)],
                });
                for (k, &m) in marks.iter().enumerate() {
                    markings.push((m, CurvePoint::new(id, ChartPoint::Finite(rat(k as i64)))));
                }
            }
            PnVertex::Internal(children) => {
                components.push(Component {
                    id,
                    field: [rat(0), rat(0), rat(0)],
                });
                for (k, child) in children.iter().enumerate() {
                    let child_id = build(child, components, nodes, markings, next_id);
                    nodes.push(Node::new(
                        CurvePoint::new(id, ChartPoint::Finite(rat(1 + k as i64))),
                        CurvePoint::new(child_id, ChartPoint::Inf),
                    ));
                }
            }
        }
        id
    }

    let root = build(&t.tree, &mut components, &mut nodes, &mut markings, &mut next_id);
    markings.sort_by_key(|(m, _)| *m);
    MarkedCurve::new(
        components,
        nodes,
        CurvePoint::new(root, ChartPoint::Inf),
        markings.into_iter().map(|(_, p)| p).collect(),
    )
}
