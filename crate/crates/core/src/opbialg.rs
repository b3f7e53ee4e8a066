//! The bialgebra of P-trees.
//!
//! The coproduct is indexed by root subtrees: down-closed node sets, where
//! every kept node keeps all of its incident edges. The pieces above a root
//! subtree form its crown: one upper tree per cut inner edge and one bare
//! edge per original leaf that was kept. Cut edges are split, never deleted,
//! so each piece still obeys the arities of the signature. Bare edges are
//! degree-zero elements distinct from the unit, which makes the bialgebra
//! non-connected.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num::One;

use crate::error::{Error, Result};
use crate::hopf::{self, HckTensor};
use crate::linear::{LinComb, Pair, Rational};
use crate::ptrees::{core, enumerate_up_to_nodes, PTree, Signature};
use crate::report::CheckReport;
use crate::trees::Forest;

/// Largest node bound accepted by [`check_faa_di_bruno`] and [`green`].
pub const MAX_GREEN_NODES: usize = 6;

/// A finite multiset of P-trees. Bare edges count as members.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct OpForest {
    trees: Vec<PTree>,
}

impl OpForest {
    pub fn unit() -> Self {
        Self::default()
    }

    pub fn single(t: PTree) -> Self {
        OpForest { trees: vec![t] }
    }

    pub fn from_trees(mut trees: Vec<PTree>) -> Self {
        trees.sort();
        OpForest { trees }
    }

    pub fn trees(&self) -> &[PTree] {
        &self.trees
    }

    pub fn len(&self) -> usize {
        self.trees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.trees.is_empty()
    }

    /// Total node count.
    pub fn degree(&self) -> usize {
        self.trees.iter().map(PTree::node_count).sum()
    }

    pub fn union(&self, other: &OpForest) -> OpForest {
        let mut trees = self.trees.clone();
        trees.extend(other.trees.iter().cloned());
        OpForest::from_trees(trees)
    }

    /// Product of the cores of the members.
    pub fn core(&self) -> Forest {
        self.trees.iter().fold(Forest::unit(), |acc, t| acc.union(&core(t)))
    }
}

impl fmt::Display for OpForest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.trees.is_empty() {
            return f.write_str("1");
        }
        for (i, t) in self.trees.iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for OpForest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "OpForest({self})")
    }
}

pub type OpElem = LinComb<OpForest>;
pub type OpTensor = LinComb<Pair<OpForest, OpForest>>;
type OpTensor3 = LinComb<Pair<OpForest, Pair<OpForest, OpForest>>>;

/// Root subtrees that contain the root node of `t`, with their crowns in
/// slot order.
fn rooted_subtrees(op: &Arc<str>, children: &[PTree]) -> Vec<(Vec<PTree>, PTree)> {
    let mut partial: Vec<(Vec<PTree>, Vec<PTree>)> = vec![(Vec::new(), Vec::new())];
    for child in children {
        let options: Vec<(Vec<PTree>, PTree)> = match child {
            // an original leaf stays a leaf of the root subtree
            PTree::Nil => vec![(vec![PTree::Nil], PTree::Nil)],
            PTree::Node { op, children } => {
                let mut opts = vec![(vec![child.clone()], PTree::Nil)];
                opts.extend(rooted_subtrees(op, children));
                opts
            }
        };
        let mut next = Vec::with_capacity(partial.len() * options.len());
        for (crown, kept) in &partial {
            for (c, k) in &options {
                let mut crown = crown.clone();
                crown.extend(c.iter().cloned());
                let mut kept = kept.clone();
                kept.push(k.clone());
                next.push((crown, kept));
            }
        }
        partial = next;
    }
    partial
        .into_iter()
        .map(|(crown, kept)| {
            (
                crown,
                PTree::Node {
                    op: op.clone(),
                    children: kept,
                },
            )
        })
        .collect()
}

/// Every root subtree of `t` with its crown, the bare root edge included.
pub fn root_subtrees(t: &PTree) -> Vec<(OpForest, PTree)> {
    let mut out = vec![(OpForest::single(t.clone()), PTree::Nil)];
    if let PTree::Node { op, children } = t {
        out.extend(
            rooted_subtrees(op, children)
                .into_iter()
                .map(|(crown, r)| (OpForest::from_trees(crown), r)),
        );
    }
    out
}

/// `Δ(t) = Σ_R crown(R) ⊗ R`.
pub fn op_coproduct(t: &PTree) -> OpTensor {
    root_subtrees(t)
        .into_iter()
        .map(|(crown, r)| (Pair(crown, OpForest::single(r)), Rational::one()))
        .collect()
}

pub fn op_tensor_product(a: &OpTensor, b: &OpTensor) -> OpTensor {
    a.bilinear(b, |x, y| Pair(x.0.union(&y.0), x.1.union(&y.1)))
}

/// Multiplicative extension of [`op_coproduct`].
pub fn op_coproduct_forest(f: &OpForest) -> OpTensor {
    f.trees().iter().fold(
        OpTensor::basis(Pair(OpForest::unit(), OpForest::unit())),
        |acc, t| op_tensor_product(&acc, &op_coproduct(t)),
    )
}

pub fn op_product(x: &OpElem, y: &OpElem) -> OpElem {
    x.bilinear(y, OpForest::union)
}

/// Grafts `children` onto a new node labelled `op`.
pub fn op_bplus(sig: &Signature, op: &str, children: Vec<PTree>) -> Result<PTree> {
    let arity = sig
        .arity(op)
        .ok_or_else(|| Error::UnknownOperation(op.to_string()))?;
    if arity != children.len() {
        return Err(Error::ArityMismatch {
            op: op.to_string(),
            expected: arity,
            found: children.len(),
        });
    }
    Ok(PTree::node(op, children))
}

/// An input on which `Δ∘B_b = (Id⊗B_b)∘Δ + B_b⊗1` fails.
#[derive(Debug, Clone)]
pub struct CocycleWitness {
    pub input: PTree,
    pub lhs: OpTensor,
    pub rhs: OpTensor,
}

impl CocycleWitness {
    /// `lhs − rhs`.
    pub fn difference(&self) -> OpTensor {
        &self.lhs - &self.rhs
    }
}

/// Right-hand side of the cocycle identity for `B_b(children)`: the planar
/// `Id⊗B_b` applied to `Δ(t_1)⋯Δ(t_k)` slotwise, plus `B_b(children) ⊗ 1`.
fn cocycle_rhs(op: &Arc<str>, children: &[PTree]) -> OpTensor {
    // (left forest, right factors in slot order, coefficient)
    let mut partial: Vec<(OpForest, Vec<PTree>, Rational)> =
        vec![(OpForest::unit(), Vec::new(), Rational::one())];
    for child in children {
        let mut next = Vec::new();
        for (left, rights, c) in &partial {
            for (Pair(l, r), c2) in &op_coproduct(child) {
                let mut rights = rights.clone();
                rights.push(r.trees()[0].clone());
                next.push((left.union(l), rights, c * c2));
            }
        }
        partial = next;
    }
    let mut rhs: OpTensor = partial
        .into_iter()
        .map(|(l, rights, c)| {
            (
                Pair(
                    l,
                    OpForest::single(PTree::Node {
                        op: op.clone(),
                        children: rights,
                    }),
                ),
                c,
            )
        })
        .collect();
    let whole = PTree::Node {
        op: op.clone(),
        children: children.to_vec(),
    };
    rhs.add_term(Pair(OpForest::single(whole), OpForest::unit()), Rational::one());
    rhs
}

/// Searches trees with at most `node_bound` nodes, smallest first, for an
/// input on which the operadic `B_b` fails the 1-cocycle identity.
pub fn cocycle_counterexample(sig: &Signature, node_bound: usize) -> Result<Option<CocycleWitness>> {
    for t in enumerate_up_to_nodes(sig, node_bound)? {
        let PTree::Node { op, children } = &t else {
            continue;
        };
        let lhs = op_coproduct(&t);
        let rhs = cocycle_rhs(op, children);
        if lhs != rhs {
            return Ok(Some(CocycleWitness { input: t, lhs, rhs }));
        }
    }
    Ok(None)
}

/// The cocycle identity for every operation, as a report. Expected to fail.
pub fn check_op_cocycle(sig: &Signature, node_bound: usize) -> Result<CheckReport> {
    let mut report = CheckReport::new("operadic cocycle", format!("nodes ≤ {node_bound}"));
    for t in enumerate_up_to_nodes(sig, node_bound)? {
        if let PTree::Node { op, children } = &t {
            report.record(&t, &cocycle_rhs(op, children), &op_coproduct(&t));
        }
    }
    Ok(report)
}

fn then_left(x: &OpTensor) -> OpTensor3 {
    let mut out = OpTensor3::zero();
    for (Pair(l, r), c) in x {
        for (Pair(ll, lr), c2) in &op_coproduct_forest(l) {
            out.add_term(Pair(ll.clone(), Pair(lr.clone(), r.clone())), c * c2);
        }
    }
    out
}

fn then_right(x: &OpTensor) -> OpTensor3 {
    let mut out = OpTensor3::zero();
    for (Pair(l, r), c) in x {
        for (Pair(rl, rr), c2) in &op_coproduct_forest(r) {
            out.add_term(Pair(l.clone(), Pair(rl.clone(), rr.clone())), c * c2);
        }
    }
    out
}

/// `(Δ⊗Id)Δ = (Id⊗Δ)Δ` on every tree with at most `node_bound` nodes.
pub fn check_op_coassociativity(sig: &Signature, node_bound: usize) -> Result<CheckReport> {
    let mut report = CheckReport::new("operadic coassociativity", format!("nodes ≤ {node_bound}"));
    for t in enumerate_up_to_nodes(sig, node_bound)? {
        let d = op_coproduct(&t);
        report.record(&t, &then_left(&d), &then_right(&d));
    }
    Ok(report)
}

/// `(core⊗core)` applied to an operadic tensor.
pub fn core_tensor(x: &OpTensor) -> HckTensor {
    x.iter()
        .map(|(Pair(l, r), c)| (Pair(l.core(), r.core()), c.clone()))
        .collect()
}

/// `(core⊗core)∘Δ = Δ∘core` on every tree with at most `node_bound` nodes.
pub fn check_core_homomorphism(sig: &Signature, node_bound: usize) -> Result<CheckReport> {
    let mut report = CheckReport::new("core homomorphism", format!("nodes ≤ {node_bound}"));
    for t in enumerate_up_to_nodes(sig, node_bound)? {
        let lhs = core_tensor(&op_coproduct(&t));
        let rhs = hopf::coproduct_forest(&core(&t));
        report.record(&t, &rhs, &lhs);
    }
    Ok(report)
}

/// The Green function truncated by node count: every tree weighted by the
/// inverse order of its automorphism group, graded by leaf count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GreenSeries {
    node_bound: usize,
    weights: BTreeMap<PTree, Rational>,
}

impl GreenSeries {
    pub fn node_bound(&self) -> usize {
        self.node_bound
    }

    pub fn weights(&self) -> &BTreeMap<PTree, Rational> {
        &self.weights
    }

    /// Leaf counts that occur, ascending.
    pub fn leaf_grades(&self) -> Vec<usize> {
        let mut grades: Vec<usize> = self.weights.keys().map(PTree::leaf_count).collect();
        grades.sort_unstable();
        grades.dedup();
        grades
    }

    /// `g_n`: the part made of trees with `n` leaves.
    pub fn g(&self, n: usize) -> OpElem {
        self.weights
            .iter()
            .filter(|(t, _)| t.leaf_count() == n)
            .map(|(t, w)| (OpForest::single(t.clone()), w.clone()))
            .collect()
    }

    /// The trees with exactly `k` nodes.
    pub fn by_nodes(&self, k: usize) -> OpElem {
        self.as_element().filtered(|f| f.degree() == k)
    }

    pub fn as_element(&self) -> OpElem {
        self.weights
            .iter()
            .map(|(t, w)| (OpForest::single(t.clone()), w.clone()))
            .collect()
    }
}

/// One `g_n = …` line per leaf grade.
impl fmt::Display for GreenSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for n in self.leaf_grades() {
            writeln!(f, "g_{n} = {}", self.g(n))?;
        }
        Ok(())
    }
}

/// Green function over `sig` restricted to trees with ≤ `node_bound` nodes.
pub fn green(sig: &Signature, node_bound: usize) -> Result<GreenSeries> {
    if node_bound > MAX_GREEN_NODES {
        return Err(Error::SizeLimit {
            what: "Green function nodes",
            requested: node_bound,
            limit: MAX_GREEN_NODES,
        });
    }
    // Planar trees are rigid, so every automorphism group is trivial.
    let weights = enumerate_up_to_nodes(sig, node_bound)?
        .into_iter()
        .map(|t| (t, Rational::one()))
        .collect();
    Ok(GreenSeries { node_bound, weights })
}

/// `x^n` keeping only forests of degree ≤ `max_degree`.
fn truncated_power(x: &OpElem, n: usize, max_degree: usize) -> OpElem {
    let mut acc = OpElem::basis(OpForest::unit());
    for _ in 0..n {
        let mut next = OpElem::zero();
        for (a, ca) in &acc {
            for (b, cb) in x {
                if a.degree() + b.degree() <= max_degree {
                    next.add_term(a.union(b), ca * cb);
                }
            }
        }
        acc = next;
    }
    acc
}

/// Compares `Δ(G)` with `Σ_n G^n ⊗ g_n` on every tensor term of total node
/// count ≤ `node_bound`. Both sides are grouped by their right factor.
pub fn check_faa_di_bruno(sig: &Signature, node_bound: usize) -> Result<CheckReport> {
    let g = green(sig, node_bound)?;
    let mut report = CheckReport::new("Faà di Bruno", format!("nodes ≤ {node_bound}"));

    let mut lhs = OpTensor::zero();
    for (t, w) in g.weights() {
        lhs.add_scaled(&op_coproduct(t), w);
    }

    let whole = g.as_element();
    let mut powers: BTreeMap<usize, OpElem> = BTreeMap::new();
    let mut rhs = OpTensor::zero();
    for n in g.leaf_grades() {
        let gn = g.g(n);
        let power = powers
            .entry(n)
            .or_insert_with(|| truncated_power(&whole, n, node_bound));
        for (right, wr) in &gn {
            let budget = node_bound - right.degree();
            for (left, cl) in power.iter() {
                if left.degree() <= budget {
                    rhs.add_term(Pair(left.clone(), right.clone()), cl * wr);
                }
            }
        }
    }

    for t in g.weights().keys() {
        let right = OpForest::single(t.clone());
        let l = lhs.filtered(|p| p.1 == right);
        let r = rhs.filtered(|p| p.1 == right);
        report.record(t, &r, &l);
    }
    // any stray right factors on either side
    let rights = |x: &OpTensor| x.keys().filter(|p| p.1.len() != 1).count();
    if rights(&lhs) + rights(&rhs) > 0 {
        report.fail("right factors", "single trees", "forests");
    }
    Ok(report)
}
