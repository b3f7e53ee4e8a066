//! Structural recursion over P-trees.
//!
//! The trees over a signature are the initial `(1+P)`-algebra: a value for
//! the nil constructor plus one function per operation determine a unique
//! map out of the trees, the fold. This module evaluates folds, checks their
//! computation rules, checks uniqueness against candidate maps, and checks
//! that the structure map is a bijection on finite truncations.

use std::collections::BTreeSet;
use std::fmt::Debug;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ptrees::{kleene_layer, one_plus_p, structure_map, unfold, Layer, PTree, Signature};
use crate::ptrees::enumerate_up_to_nodes;
use crate::report::CheckReport;

/// A `(1+P)`-algebra: where `nil` goes and how each operation combines the
/// values of its slots.
pub trait FoldAlgebra {
    type Carrier;

    fn nil(&self) -> Self::Carrier;

    /// Called with exactly `arity(op)` values, in slot order.
    fn interp(&self, op: &str, args: Vec<Self::Carrier>) -> Self::Carrier;
}

/// A [`FoldAlgebra`] from a nil value and a closure.
pub struct FnAlgebra<C, F> {
    nil: C,
    interp: F,
}

impl<C: Clone, F: Fn(&str, Vec<C>) -> C> FnAlgebra<C, F> {
    pub fn new(nil: C, interp: F) -> Self {
        FnAlgebra { nil, interp }
    }
}

impl<C: Clone, F: Fn(&str, Vec<C>) -> C> FoldAlgebra for FnAlgebra<C, F> {
    type Carrier = C;

    fn nil(&self) -> C {
        self.nil.clone()
    }

    fn interp(&self, op: &str, args: Vec<C>) -> C {
        (self.interp)(op, args)
    }
}

/// Counts nodes: `nil ↦ 0`, `b ↦ 1 + Σ`.
pub struct NodeCount;

impl FoldAlgebra for NodeCount {
    type Carrier = usize;

    fn nil(&self) -> usize {
        0
    }

    fn interp(&self, _op: &str, args: Vec<usize>) -> usize {
        1 + args.into_iter().sum::<usize>()
    }
}

/// Counts leaves: `nil ↦ 1`, `b ↦ Σ`.
pub struct LeafCount;

impl FoldAlgebra for LeafCount {
    type Carrier = usize;

    fn nil(&self) -> usize {
        1
    }

    fn interp(&self, _op: &str, args: Vec<usize>) -> usize {
        args.into_iter().sum()
    }
}

/// The trees themselves, with the constructors as structure. Folding into
/// it is the identity.
pub struct Rebuild;

impl FoldAlgebra for Rebuild {
    type Carrier = PTree;

    fn nil(&self) -> PTree {
        PTree::Nil
    }

    fn interp(&self, op: &str, args: Vec<PTree>) -> PTree {
        PTree::node(op, args)
    }
}

enum Frame<'a> {
    Enter(&'a PTree),
    Exit(&'a Arc<str>, usize),
}

/// The fold of `alg` applied to `t`. Uses an explicit stack, so depth is
/// bounded by memory rather than by the call stack.
pub fn fold<A: FoldAlgebra>(sig: &Signature, alg: &A, t: &PTree) -> Result<A::Carrier> {
    let mut frames = vec![Frame::Enter(t)];
    let mut values: Vec<A::Carrier> = Vec::new();
    while let Some(frame) = frames.pop() {
        match frame {
            Frame::Enter(PTree::Nil) => values.push(alg.nil()),
            Frame::Enter(PTree::Node { op, children }) => {
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
                frames.push(Frame::Exit(op, children.len()));
                frames.extend(children.iter().rev().map(Frame::Enter));
            }
            Frame::Exit(op, n) => {
                let args = values.split_off(values.len() - n);
                values.push(alg.interp(op, args));
            }
        }
    }
    Ok(values.pop().expect("fold leaves exactly one value"))
}

/// Checks the computation rules for an arbitrary evaluator `eval` on every
/// tree with at most `bound` nodes:
/// `eval(nil) = nil_value` and `eval(b(t…)) = interp(b, eval(t)…)`.
pub fn check_computation_rules_with<A, E>(sig: &Signature, alg: &A, bound: usize, mut eval: E) -> Result<CheckReport>
where
    A: FoldAlgebra,
    A::Carrier: PartialEq + Debug,
    E: FnMut(&PTree) -> A::Carrier,
{
    let mut report = CheckReport::new("computation rules", format!("nodes ≤ {bound}"));
    for t in enumerate_up_to_nodes(sig, bound)? {
        let expected = match &t {
            PTree::Nil => alg.nil(),
            PTree::Node { op, children } => alg.interp(op, children.iter().map(&mut eval).collect()),
        };
        report.record_debug(&t, &expected, &eval(&t));
    }
    Ok(report)
}

/// [`check_computation_rules_with`] for [`fold`] itself.
pub fn check_computation_rules<A>(sig: &Signature, alg: &A, bound: usize) -> Result<CheckReport>
where
    A: FoldAlgebra,
    A::Carrier: PartialEq + Debug,
{
    check_computation_rules_with(sig, alg, bound, |t| {
        fold(sig, alg, t).expect("enumerated trees obey the signature")
    })
}

/// Checks that `candidate`, if it satisfies the computation rules on trees
/// with at most `bound` nodes, coincides with the fold there. A candidate
/// that breaks a rule is reported as a failure at the offending tree.
pub fn check_fold_uniqueness<A, F>(sig: &Signature, alg: &A, mut candidate: F, bound: usize) -> Result<CheckReport>
where
    A: FoldAlgebra,
    A::Carrier: PartialEq + Debug,
    F: FnMut(&PTree) -> A::Carrier,
{
    let mut report = CheckReport::new("fold uniqueness", format!("nodes ≤ {bound}"));
    let rules = check_computation_rules_with(sig, alg, bound, &mut candidate)?;
    if !rules.passed() {
        for c in rules.counterexamples {
            report.fail(format!("computation rule at {}", c.input), c.expected, c.actual);
        }
        report.checked = rules.checked;
        return Ok(report);
    }
    // trees come by increasing node count, so this walks the induction
    for t in enumerate_up_to_nodes(sig, bound)? {
        let expected = fold(sig, alg, &t)?;
        report.record_debug(&t, &expected, &candidate(&t));
    }
    Ok(report)
}

/// Induction principle, checked extensionally: if `pred` holds on `nil` and
/// is preserved by every operation, it holds on every tree with at most
/// `bound` nodes.
pub fn check_induction<P>(sig: &Signature, bound: usize, mut pred: P) -> Result<CheckReport>
where
    P: FnMut(&PTree) -> bool,
{
    let mut report = CheckReport::new("induction", format!("nodes ≤ {bound}"));
    let trees = enumerate_up_to_nodes(sig, bound)?;
    let hypotheses_hold = trees.iter().all(|t| match t {
        PTree::Nil => pred(t),
        PTree::Node { children, .. } => !children.iter().all(&mut pred) || pred(t),
    });
    if !hypotheses_hold {
        report.fail("hypotheses", "base and step cases hold", "a case fails");
        return Ok(report);
    }
    for t in &trees {
        report.record(t, &true, &pred(t));
    }
    Ok(report)
}

/// Checks that the structure map `1 + P(X_k) → X_{k+1}` is a bijection:
/// injective on the enumerated domain, and every element of `X_{k+1}`
/// unfolds to a domain element that maps back to it.
pub fn lambek_check(sig: &Signature, k: usize) -> Result<CheckReport> {
    let mut report = CheckReport::new("Lambek", format!("layer {k}"));
    let xk: Vec<PTree> = kleene_layer(sig, k)?.into_iter().collect();
    let next = kleene_layer(sig, k + 1)?;
    let xk_set: BTreeSet<&PTree> = xk.iter().collect();

    let domain = one_plus_p(sig, &xk);
    let images: Vec<PTree> = domain.iter().cloned().map(structure_map).collect();
    let distinct: BTreeSet<&PTree> = images.iter().collect();
    report.record("injectivity (distinct images)", &domain.len(), &distinct.len());
    report.record("cardinality", &domain.len(), &next.len());
    for img in &images {
        report.record(format!("image {img} lies in the next layer"), &true, &next.contains(img));
    }
    for t in &next {
        let layer = unfold(t);
        let in_domain = match &layer {
            Layer::Nil => true,
            Layer::Op { op, args } => {
                sig.arity(op) == Some(args.len()) && args.iter().all(|a| xk_set.contains(a))
            }
        };
        report.record(format!("{t} unfolds into 1+P(X_{k})"), &true, &in_domain);
        report.record(format!("{t} round-trips"), t, &structure_map(layer));
    }
    Ok(report)
}

/// Primitive recursion on `n`, through the fold over the `n`-ladder.
pub fn nat_rec<C: Clone>(n: usize, zero: C, step: impl Fn(C) -> C) -> C {
    let alg = FnAlgebra::new(zero, |_op: &str, mut args: Vec<C>| step(args.pop().expect("unary")));
    fold(&Signature::identity(), &alg, &PTree::ladder(n)).expect("ladders obey the identity signature")
}

/// Length of a ladder over the identity signature.
pub fn ladder_length(t: &PTree) -> Result<usize> {
    let succ = FnAlgebra::new(0usize, |_op: &str, args: Vec<usize>| args[0] + 1);
    fold(&Signature::identity(), &succ, t)
}
