//! Planar polynomial-functor signatures and their trees.
//!
//! A signature is a finite list of operations with ordered input slots. The
//! trees over it are the least solution of `X ≅ 1 + P(X)`: a tree is either
//! the bare edge [`PTree::Nil`] or an operation whose slots are filled with
//! trees. Leaves are the `Nil` edges; nodes are the operations.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hopf::HckElem;
use crate::linear::Rational;
use crate::trees::{graft, Forest};

/// Default bound on node counts for enumeration.
pub const DEFAULT_MAX_NODES: usize = 10;
/// Default bound on leaf counts for enumeration.
pub const DEFAULT_MAX_LEAVES: usize = 10;
/// Largest Kleene layer that will be materialized.
pub const MAX_LAYER_SIZE: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Operation {
    pub name: String,
    pub arity: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Signature {
    ops: Vec<Operation>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SignatureDoc {
    ops: Vec<Operation>,
}

fn valid_name(name: &str) -> bool {
    !name.is_empty()
        && name
            .chars()
            .all(|c| !c.is_whitespace() && !matches!(c, '(' | ')' | ',' | '|' | '*'))
}

impl Signature {
    pub fn new(ops: Vec<Operation>) -> Result<Self> {
        let mut seen = HashSet::new();
        for op in &ops {
            if !valid_name(&op.name) {
                return Err(Error::InvalidSignature(format!("bad operation name {:?}", op.name)));
            }
            if !seen.insert(op.name.as_str()) {
                return Err(Error::InvalidSignature(format!("duplicate operation {:?}", op.name)));
            }
        }
        Ok(Signature { ops })
    }

    fn from_arities(prefix: &str, arities: impl IntoIterator<Item = usize>) -> Self {
        Signature {
            ops: arities
                .into_iter()
                .map(|a| Operation {
                    name: format!("{prefix}{a}"),
                    arity: a,
                })
                .collect(),
        }
    }

    /// One unary operation `s`; its trees are the ladders, i.e. the naturals.
    pub fn identity() -> Self {
        Signature {
            ops: vec![Operation {
                name: "s".into(),
                arity: 1,
            }],
        }
    }

    /// One binary operation `b`.
    pub fn binary() -> Self {
        Signature {
            ops: vec![Operation {
                name: "b".into(),
                arity: 2,
            }],
        }
    }

    /// The list functor truncated at arity `max_arity`: operations `l0 … lK`.
    pub fn list(max_arity: usize) -> Self {
        Self::from_arities("l", 0..=max_arity)
    }

    /// Stable planar trees up to arity `max_arity`: operations `c2 … cK`.
    pub fn stable(max_arity: usize) -> Self {
        Self::from_arities("c", 2..=max_arity)
    }

    /// Parses the JSON form `{"ops": [{"name": "b", "arity": 2}]}`.
    pub fn from_json(text: &str) -> Result<Self> {
        let doc: SignatureDoc =
            serde_json::from_str(text).map_err(|e| Error::InvalidSignature(e.to_string()))?;
        Self::new(doc.ops)
    }

    pub fn ops(&self) -> &[Operation] {
        &self.ops
    }

    pub fn arity(&self, name: &str) -> Option<usize> {
        self.ops.iter().find(|o| o.name == name).map(|o| o.arity)
    }

    pub fn max_arity(&self) -> usize {
        self.ops.iter().map(|o| o.arity).max().unwrap_or(0)
    }

    /// No nullary and no unary operations.
    pub fn is_stable(&self) -> bool {
        self.ops.iter().all(|o| o.arity >= 2)
    }

    pub fn has_nullary(&self) -> bool {
        self.ops.iter().any(|o| o.arity == 0)
    }

    /// Checks that every node of `t` is an operation of this signature with
    /// the right number of children.
    pub fn check_tree(&self, t: &PTree) -> Result<()> {
        let mut stack = vec![t];
        while let Some(t) = stack.pop() {
            if let PTree::Node { op, children } = t {
                let arity = self
                    .arity(op)
                    .ok_or_else(|| Error::UnknownOperation(op.to_string()))?;
                if arity != children.len() {
                    return Err(Error::ArityMismatch {
                        op: op.to_string(),
                        expected: arity,
                        found: children.len(),
                    });
                }
                stack.extend(children);
            }
        }
        Ok(())
    }
}

/// A tree over a planar signature.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PTree {
    /// The bare edge: no nodes, one leaf.
    Nil,
    Node { op: Arc<str>, children: Vec<PTree> },
}

impl PTree {
    pub fn node(op: impl Into<Arc<str>>, children: Vec<PTree>) -> Self {
        PTree::Node {
            op: op.into(),
            children,
        }
    }

    pub fn is_nil(&self) -> bool {
        matches!(self, PTree::Nil)
    }

    pub fn node_count(&self) -> usize {
        match self {
            PTree::Nil => 0,
            PTree::Node { children, .. } => 1 + children.iter().map(PTree::node_count).sum::<usize>(),
        }
    }

    pub fn leaf_count(&self) -> usize {
        match self {
            PTree::Nil => 1,
            PTree::Node { children, .. } => children.iter().map(PTree::leaf_count).sum(),
        }
    }

    /// Number of Kleene steps needed to build the tree, minus one: `Nil` and
    /// nullary nodes have height 0, an operation with children sits one above
    /// its tallest child.
    pub fn height(&self) -> usize {
        match self {
            PTree::Nil => 0,
            PTree::Node { children, .. } => children.iter().map(|c| c.height() + 1).max().unwrap_or(0),
        }
    }

    /// The `k`-ladder over the identity signature.
    pub fn ladder(k: usize) -> Self {
        (0..k).fold(PTree::Nil, |t, _| PTree::node("s", vec![t]))
    }

    pub fn code(&self) -> String {
        self.to_string()
    }
}

/// `|` for `Nil`; `name(child,child,…)` in slot order otherwise.
impl fmt::Display for PTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PTree::Nil => f.write_str("|"),
            PTree::Node { op, children } => {
                write!(f, "{op}(")?;
                for (i, c) in children.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{c}")?;
                }
                f.write_str(")")
            }
        }
    }
}

impl fmt::Debug for PTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PTree({self})")
    }
}

impl FromStr for PTree {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut p = CodeParser { src: s, bytes: s.as_bytes(), pos: 0 };
        let t = p.tree()?;
        if p.pos != p.bytes.len() {
            return Err(p.error("trailing input"));
        }
        Ok(t)
    }
}

struct CodeParser<'a> {
    src: &'a str,
    bytes: &'a [u8],
    pos: usize,
}

impl CodeParser<'_> {
    fn error(&self, why: &str) -> Error {
        Error::MalformedCode {
            input: self.src.to_string(),
            reason: format!("{why} at byte {}", self.pos),
        }
    }

    fn tree(&mut self) -> Result<PTree> {
        if self.bytes.get(self.pos) == Some(&b'|') {
            self.pos += 1;
            return Ok(PTree::Nil);
        }
        let start = self.pos;
        while self.pos < self.bytes.len() && !matches!(self.bytes[self.pos], b'(' | b')' | b',' | b'|') {
            self.pos += 1;
        }
        let name = &self.src[start..self.pos];
        if !valid_name(name) {
            return Err(self.error("expected an operation name or '|'"));
        }
        if self.bytes.get(self.pos) != Some(&b'(') {
            return Err(self.error("expected '('"));
        }
        self.pos += 1;
        let mut children = Vec::new();
        if self.bytes.get(self.pos) == Some(&b')') {
            self.pos += 1;
            return Ok(PTree::node(name, children));
        }
        loop {
            children.push(self.tree()?);
            match self.bytes.get(self.pos) {
                Some(b',') => self.pos += 1,
                Some(b')') => {
                    self.pos += 1;
                    return Ok(PTree::node(name, children));
                }
                _ => return Err(self.error("expected ',' or ')'")),
            }
        }
    }
}

/// An element of `1 + P(X)`: either the nil summand or an operation with
/// one `X` value per slot.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Layer<T> {
    Nil,
    Op { op: Arc<str>, args: Vec<T> },
}

impl<T> Layer<T> {
    pub fn map<U>(self, f: impl FnMut(T) -> U) -> Layer<U> {
        match self {
            Layer::Nil => Layer::Nil,
            Layer::Op { op, args } => Layer::Op {
                op,
                args: args.into_iter().map(f).collect(),
            },
        }
    }
}

/// The structure map `1 + P(Trees) → Trees`.
pub fn structure_map(layer: Layer<PTree>) -> PTree {
    match layer {
        Layer::Nil => PTree::Nil,
        Layer::Op { op, args } => PTree::Node { op, children: args },
    }
}

/// Inverse of [`structure_map`]: exposes the top constructor.
pub fn unfold(t: &PTree) -> Layer<PTree> {
    match t {
        PTree::Nil => Layer::Nil,
        PTree::Node { op, children } => Layer::Op {
            op: op.clone(),
            args: children.clone(),
        },
    }
}

/// Every element of `1 + P(X)` for the finite set `xs`.
pub fn one_plus_p(sig: &Signature, xs: &[PTree]) -> Vec<Layer<PTree>> {
    let mut out = vec![Layer::Nil];
    for op in sig.ops() {
        let name: Arc<str> = op.name.as_str().into();
        let slots = vec![xs; op.arity];
        for args in cartesian(&slots) {
            out.push(Layer::Op {
                op: name.clone(),
                args,
            });
        }
    }
    out
}

/// All ways of picking one element from each list, in lexicographic order.
fn cartesian(lists: &[&[PTree]]) -> Vec<Vec<PTree>> {
    let mut out: Vec<Vec<PTree>> = vec![Vec::new()];
    for list in lists {
        let mut next = Vec::with_capacity(out.len() * list.len());
        for prefix in &out {
            for t in list.iter() {
                let mut v = prefix.clone();
                v.push(t.clone());
                next.push(v);
            }
        }
        out = next;
    }
    out
}

/// Compositions of `total` into `parts` summands, each at least `min`.
fn compositions(total: usize, parts: usize, min: usize) -> Vec<Vec<usize>> {
    fn go(total: usize, parts: usize, min: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if parts == 0 {
            if total == 0 {
                out.push(cur.clone());
            }
            return;
        }
        if total < min * parts {
            return;
        }
        for first in min..=(total - min * (parts - 1)) {
            cur.push(first);
            go(total - first, parts - 1, min, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(total, parts, min, &mut Vec::new(), &mut out);
    out
}

/// Builds trees graded by some size, from a table of smaller ones.
fn grow(
    sig: &Signature,
    table: &[Vec<PTree>],
    budget_for: impl Fn(usize) -> Option<(usize, usize)>,
) -> Vec<PTree> {
    let mut out = Vec::new();
    for op in sig.ops() {
        let Some((total, min)) = budget_for(op.arity) else {
            continue;
        };
        let name: Arc<str> = op.name.as_str().into();
        for comp in compositions(total, op.arity, min) {
            let lists: Vec<&[PTree]> = comp.iter().map(|&k| table[k].as_slice()).collect();
            for children in cartesian(&lists) {
                out.push(PTree::Node {
                    op: name.clone(),
                    children,
                });
            }
        }
    }
    out
}

fn check_limit(what: &'static str, requested: usize, limit: usize) -> Result<()> {
    if requested > limit {
        return Err(Error::SizeLimit {
            what,
            requested,
            limit,
        });
    }
    Ok(())
}

/// Trees with 0..=n nodes, indexed by node count.
fn node_table(sig: &Signature, n: usize) -> Vec<Vec<PTree>> {
    let mut table = vec![vec![PTree::Nil]];
    for k in 1..=n {
        let mut level = grow(sig, &table, |arity| {
            if arity == 0 {
                (k == 1).then_some((0, 0))
            } else {
                Some((k - 1, 0))
            }
        });
        level.sort();
        table.push(level);
    }
    table
}

/// Every tree with exactly `n` nodes, sorted.
pub fn enumerate_by_nodes(sig: &Signature, n: usize) -> Result<Vec<PTree>> {
    enumerate_by_nodes_bounded(sig, n, DEFAULT_MAX_NODES)
}

pub fn enumerate_by_nodes_bounded(sig: &Signature, n: usize, max_nodes: usize) -> Result<Vec<PTree>> {
    check_limit("P-tree nodes", n, max_nodes)?;
    Ok(node_table(sig, n).swap_remove(n))
}

/// Every tree with at most `n` nodes, by increasing node count.
pub fn enumerate_up_to_nodes(sig: &Signature, n: usize) -> Result<Vec<PTree>> {
    check_limit("P-tree nodes", n, DEFAULT_MAX_NODES)?;
    Ok(node_table(sig, n).into_iter().flatten().collect())
}

/// Every tree with exactly `n` leaves, sorted. Requires a stable signature;
/// see [`enumerate_by_leaves_within`] otherwise.
pub fn enumerate_by_leaves(sig: &Signature, n: usize) -> Result<Vec<PTree>> {
    if !sig.is_stable() {
        return Err(Error::Nonfinite);
    }
    check_limit("P-tree leaves", n, DEFAULT_MAX_LEAVES)?;
    let mut table: Vec<Vec<PTree>> = vec![Vec::new(), vec![PTree::Nil]];
    for k in 2..=n {
        let mut level = grow(sig, &table, |arity| Some((k, 1)).filter(|_| arity <= k));
        level.sort();
        table.push(level);
    }
    Ok(table.into_iter().nth(n).unwrap_or_default())
}

/// Every tree with exactly `n` leaves and at most `max_nodes` nodes.
pub fn enumerate_by_leaves_within(sig: &Signature, n: usize, max_nodes: usize) -> Result<Vec<PTree>> {
    let mut out: Vec<PTree> = enumerate_up_to_nodes(sig, max_nodes)?
        .into_iter()
        .filter(|t| t.leaf_count() == n)
        .collect();
    out.sort();
    Ok(out)
}

/// The `k`-th Kleene approximation `X_k` of the least fixpoint:
/// `X_0 = ∅`, `X_{k+1} = 1 + P(X_k)`. Equals the set of trees of height < k.
pub fn kleene_layer(sig: &Signature, k: usize) -> Result<BTreeSet<PTree>> {
    let mut size: usize = 0;
    for step in 0..k {
        let mut next: usize = 1;
        for op in sig.ops() {
            let term = u32::try_from(op.arity)
                .ok()
                .and_then(|a| size.checked_pow(a))
                .and_then(|t| next.checked_add(t));
            next = match term {
                Some(n) if n <= MAX_LAYER_SIZE => n,
                _ => {
                    return Err(Error::SizeLimit {
                        what: "Kleene layer (height)",
                        requested: step + 1,
                        limit: step,
                    })
                }
            };
        }
        size = next;
    }
    let mut layer: Vec<PTree> = Vec::new();
    for _ in 0..k {
        layer = one_plus_p(sig, &layer).into_iter().map(structure_map).collect();
    }
    Ok(layer.into_iter().collect())
}

/// The combinatorial tree of inner edges: decorations, leaf edges and the
/// root edge are dropped. `Nil` has the empty forest as core.
pub fn core(t: &PTree) -> Forest {
    match t {
        PTree::Nil => Forest::unit(),
        PTree::Node { children, .. } => {
            let inner = children.iter().fold(Forest::unit(), |acc, c| acc.union(&core(c)));
            Forest::single(graft(&inner))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Grading {
    Nodes,
    Leaves,
}

impl FromStr for Grading {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "nodes" => Ok(Grading::Nodes),
            "leaves" => Ok(Grading::Leaves),
            other => Err(format!("expected 'nodes' or 'leaves', got {other:?}")),
        }
    }
}

pub fn enumerate(sig: &Signature, k: usize, by: Grading) -> Result<Vec<PTree>> {
    match by {
        Grading::Nodes => enumerate_by_nodes(sig, k),
        Grading::Leaves => enumerate_by_leaves(sig, k),
    }
}

/// Number of trees of size `k` with each core.
pub fn core_census(sig: &Signature, k: usize, by: Grading) -> Result<BTreeMap<Forest, u64>> {
    let mut census = BTreeMap::new();
    for t in enumerate(sig, k, by)? {
        *census.entry(core(&t)).or_insert(0) += 1;
    }
    Ok(census)
}

/// A census read as an element of the tree Hopf algebra.
pub fn census_element(census: &BTreeMap<Forest, u64>) -> HckElem {
    census
        .iter()
        .map(|(f, &n)| (f.clone(), Rational::from_integer(n.into())))
        .collect()
}
