//! The Connes–Kreimer Hopf algebra of rooted trees.
//!
//! Elements are rational linear combinations of forests; multiplication is
//! forest union. The coproduct sends a tree to the sum over admissible cuts
//! of `upper forest ⊗ root part`, where the root part ranges over every
//! root-containing subtree plus the empty forest.

use std::collections::HashMap;

use num::One;

use crate::error::Result;
use crate::linear::{LinComb, Pair, Rational};
use crate::report::CheckReport;
use crate::trees::{enumerate_forests_up_to, graft, CombTree, Forest};

pub type HckElem = LinComb<Forest>;
pub type HckTensor = LinComb<Pair<Forest, Forest>>;
type HckTensor3 = LinComb<Pair<Forest, Pair<Forest, Forest>>>;

/// The unit `1` (the empty forest).
pub fn unit() -> HckElem {
    HckElem::basis(Forest::unit())
}

pub fn tree(t: CombTree) -> HckElem {
    HckElem::basis(Forest::single(t))
}

pub fn forest(f: Forest) -> HckElem {
    HckElem::basis(f)
}

/// Commutative product: bilinear extension of forest union.
pub fn product(x: &HckElem, y: &HckElem) -> HckElem {
    x.bilinear(y, Forest::union)
}

/// `x^m`, with `x^0 = 1`.
pub fn power(x: &HckElem, m: usize) -> HckElem {
    (0..m).fold(unit(), |acc, _| product(&acc, x))
}

/// Root-containing subtrees of `t`, each paired with the forest cut off
/// above it. One entry per down-closed node set, so repeats are possible.
fn rooted_cuts(t: &CombTree) -> Vec<(Vec<CombTree>, CombTree)> {
    let mut partial: Vec<(Vec<CombTree>, Vec<CombTree>)> = vec![(Vec::new(), Vec::new())];
    for child in t.children() {
        let below = rooted_cuts(child);
        let mut next = Vec::with_capacity(partial.len() * (below.len() + 1));
        for (upper, kept) in &partial {
            // cut the edge to `child`
            let mut u = upper.clone();
            u.push(child.clone());
            next.push((u, kept.clone()));
            for (cu, ck) in &below {
                let mut u = upper.clone();
                u.extend(cu.iter().cloned());
                let mut k = kept.clone();
                k.push(ck.clone());
                next.push((u, k));
            }
        }
        partial = next;
    }
    partial
        .into_iter()
        .map(|(upper, kept)| (upper, CombTree::from_children(kept)))
        .collect()
}

/// Every admissible cut of `t` as `(upper forest, root part)`, including the
/// cut below the root (root part empty) and the trivial cut (upper empty).
pub fn admissible_cuts(t: &CombTree) -> Vec<(Forest, Forest)> {
    let mut cuts: Vec<(Forest, Forest)> = rooted_cuts(t)
        .into_iter()
        .map(|(upper, kept)| (Forest::from_trees(upper), Forest::single(kept)))
        .collect();
    cuts.push((Forest::single(t.clone()), Forest::unit()));
    cuts
}

fn coproduct_tree(t: &CombTree) -> HckTensor {
    admissible_cuts(t)
        .into_iter()
        .map(|(p, s)| (Pair(p, s), Rational::one()))
        .collect()
}

/// Product in `H ⊗ H`, factorwise.
pub fn tensor_product(a: &HckTensor, b: &HckTensor) -> HckTensor {
    a.bilinear(b, |x, y| Pair(x.0.union(&y.0), x.1.union(&y.1)))
}

/// Coproduct of a forest monomial, extended multiplicatively.
pub fn coproduct_forest(f: &Forest) -> HckTensor {
    f.trees().iter().fold(
        HckTensor::basis(Pair(Forest::unit(), Forest::unit())),
        |acc, t| tensor_product(&acc, &coproduct_tree(t)),
    )
}

pub fn coproduct(x: &HckElem) -> HckTensor {
    x.map_linear(coproduct_forest)
}

/// Coefficient of the empty forest.
pub fn counit(x: &HckElem) -> Rational {
    x.coefficient(&Forest::unit())
}

/// Linear extension of grafting.
pub fn bplus(x: &HckElem) -> HckElem {
    x.map_linear(|f| tree(graft(f)))
}

/// The antipode, via the recursion over proper cuts, extended
/// multiplicatively and linearly.
pub fn antipode(x: &HckElem) -> HckElem {
    let mut memo = HashMap::new();
    x.map_linear(|f| antipode_forest(f, &mut memo))
}

fn antipode_forest(f: &Forest, memo: &mut HashMap<CombTree, HckElem>) -> HckElem {
    f.trees()
        .iter()
        .fold(unit(), |acc, t| product(&acc, &antipode_tree(t, memo)))
}

fn antipode_tree(t: &CombTree, memo: &mut HashMap<CombTree, HckElem>) -> HckElem {
    if let Some(s) = memo.get(t) {
        return s.clone();
    }
    // S(T) = -T - sum over proper cuts of S(P_c) S_c
    let mut s = -&tree(t.clone());
    for (upper, kept) in rooted_cuts(t) {
        if upper.is_empty() {
            continue;
        }
        let sp = antipode_forest(&Forest::from_trees(upper), memo);
        let term = product(&sp, &tree(kept));
        s.add_scaled(&term, &-Rational::one());
    }
    memo.insert(t.clone(), s.clone());
    s
}

/// `m ∘ (f ⊗ g)` applied to a tensor.
fn multiply_through(
    x: &HckTensor,
    mut left: impl FnMut(&Forest) -> HckElem,
    mut right: impl FnMut(&Forest) -> HckElem,
) -> HckElem {
    let mut out = HckElem::zero();
    for (Pair(l, r), c) in x {
        out.add_scaled(&product(&left(l), &right(r)), c);
    }
    out
}

/// Applies `f` to the right tensor factor, linearly.
fn map_right(x: &HckTensor, mut f: impl FnMut(&Forest) -> HckElem) -> HckTensor {
    let mut out = HckTensor::zero();
    for (Pair(l, r), c) in x {
        for (r2, c2) in &f(r) {
            out.add_term(Pair(l.clone(), r2.clone()), c * c2);
        }
    }
    out
}

pub(crate) fn scope(degree_bound: usize) -> String {
    format!("degree ≤ {degree_bound}")
}

/// Checks `Δ∘B₊ = (Id⊗B₊)∘Δ + B₊⊗ηε∘Δ` on every forest of degree ≤ bound.
pub fn check_cocycle(degree_bound: usize) -> Result<CheckReport> {
    let mut report = CheckReport::new("cocycle", scope(degree_bound));
    for f in enumerate_forests_up_to(degree_bound)? {
        let x = forest(f.clone());
        let lhs = coproduct(&bplus(&x));
        let mut rhs = map_right(&coproduct(&x), |r| bplus(&forest(r.clone())));
        // (B₊ ⊗ ηε)Δ(x) = B₊(x) ⊗ 1, because (Id⊗ε)Δ = Id
        for (g, c) in &bplus(&x) {
            rhs.add_term(Pair(g.clone(), Forest::unit()), c.clone());
        }
        report.record(&f, &lhs, &rhs);
    }
    Ok(report)
}

fn coproduct_left_then(x: &HckTensor) -> HckTensor3 {
    let mut out = HckTensor3::zero();
    for (Pair(l, r), c) in x {
        for (Pair(ll, lr), c2) in &coproduct_forest(l) {
            out.add_term(Pair(ll.clone(), Pair(lr.clone(), r.clone())), c * c2);
        }
    }
    out
}

fn coproduct_right_then(x: &HckTensor) -> HckTensor3 {
    let mut out = HckTensor3::zero();
    for (Pair(l, r), c) in x {
        for (Pair(rl, rr), c2) in &coproduct_forest(r) {
            out.add_term(Pair(l.clone(), Pair(rl.clone(), rr.clone())), c * c2);
        }
    }
    out
}

/// Checks `(Δ⊗Id)Δ = (Id⊗Δ)Δ` on every forest of degree ≤ bound.
pub fn check_coassociativity(degree_bound: usize) -> Result<CheckReport> {
    let mut report = CheckReport::new("coassociativity", scope(degree_bound));
    for f in enumerate_forests_up_to(degree_bound)? {
        let d = coproduct_forest(&f);
        report.record(&f, &coproduct_left_then(&d), &coproduct_right_then(&d));
    }
    Ok(report)
}

/// Checks `(ε⊗Id)Δ = Id = (Id⊗ε)Δ` on every forest of degree ≤ bound.
pub fn check_counit(degree_bound: usize) -> Result<CheckReport> {
    let mut report = CheckReport::new("counit", scope(degree_bound));
    let eps = |f: &Forest| HckElem::term(Forest::unit(), counit(&forest(f.clone())));
    for f in enumerate_forests_up_to(degree_bound)? {
        let x = forest(f.clone());
        let d = coproduct(&x);
        report.record(format!("left, {f}"), &x, &multiply_through(&d, eps, |r| forest(r.clone())));
        report.record(format!("right, {f}"), &x, &multiply_through(&d, |l| forest(l.clone()), eps));
    }
    Ok(report)
}

/// Checks `m(S⊗Id)Δ = ηε = m(Id⊗S)Δ` on every forest of degree ≤ bound.
pub fn check_antipode(degree_bound: usize) -> Result<CheckReport> {
    let mut report = CheckReport::new("antipode", scope(degree_bound));
    let mut memo = HashMap::new();
    for f in enumerate_forests_up_to(degree_bound)? {
        let x = forest(f.clone());
        let d = coproduct(&x);
        let expected = unit().scaled(&counit(&x));
        let left = {
            let mut out = HckElem::zero();
            for (Pair(l, r), c) in &d {
                out.add_scaled(&product(&antipode_forest(l, &mut memo), &forest(r.clone())), c);
            }
            out
        };
        let right = {
            let mut out = HckElem::zero();
            for (Pair(l, r), c) in &d {
                out.add_scaled(&product(&forest(l.clone()), &antipode_forest(r, &mut memo)), c);
            }
            out
        };
        report.record(format!("S⊗Id, {f}"), &expected, &left);
        report.record(format!("Id⊗S, {f}"), &expected, &right);
    }
    Ok(report)
}

/// Whether `x` is a sum of single-tree forests only.
pub fn is_tree_combination(x: &HckElem) -> bool {
    x.keys().all(|f| f.len() == 1)
}

/// Degree-`d` part of `x`.
pub fn homogeneous_part(x: &HckElem, d: usize) -> HckElem {
    x.filtered(|f| f.degree() == d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linear::int;
    use crate::trees::parse_code;

    fn t(s: &str) -> HckElem {
        tree(parse_code(s).unwrap())
    }

    fn f(s: &str) -> Forest {
        s.parse().unwrap()
    }

    fn tensor(terms: &[(&str, &str, i64)]) -> HckTensor {
        terms
            .iter()
            .map(|(l, r, c)| (Pair(f(l), f(r)), int(*c)))
            .collect()
    }

    #[test]
    fn product_examples() {
        let x = &t("()").scaled(&int(2)) + &t("(())").scaled(&int(0));
        assert_eq!(product(&unit(), &x), x);
        assert_eq!(product(&t("()"), &t("()")).to_string(), "1*()*()");
        let p = product(&t("()").scaled(&int(2)), &t("(())").scaled(&int(3)));
        assert_eq!(p.to_string(), "6*(())*()");
    }

    #[test]
    fn coproduct_examples() {
        assert_eq!(coproduct(&unit()), tensor(&[("1", "1", 1)]));
        assert_eq!(coproduct(&t("()")), tensor(&[("1", "()", 1), ("()", "1", 1)]));
        assert_eq!(
            coproduct(&t("(())")),
            tensor(&[("1", "(())", 1), ("()", "()", 1), ("(())", "1", 1)])
        );
        assert_eq!(
            coproduct(&t("(()())")),
            tensor(&[
                ("1", "(()())", 1),
                ("()", "(())", 2),
                ("()*()", "()", 1),
                ("(()())", "1", 1)
            ])
        );
    }

    #[test]
    fn counit_examples() {
        assert_eq!(counit(&unit()), int(1));
        assert_eq!(counit(&t("()")), int(0));
        let x = &unit().scaled(&int(3)) + &t("(())").scaled(&int(2));
        assert_eq!(counit(&x), int(3));
    }

    #[test]
    fn antipode_examples() {
        assert_eq!(antipode(&unit()), unit());
        assert_eq!(antipode(&t("()")), -&t("()"));
        let expected = &(-&t("(())")) + &product(&t("()"), &t("()"));
        assert_eq!(antipode(&t("(())")), expected);
    }

    #[test]
    fn bplus_examples() {
        assert_eq!(bplus(&unit()), t("()"));
        assert_eq!(bplus(&forest(f("()*()"))), t("(()())"));
        assert_eq!(bplus(&t("()").scaled(&int(2))), t("(())").scaled(&int(2)));
    }

    #[test]
    fn ladder_cut_counts() {
        for n in 1..=8 {
            assert_eq!(admissible_cuts(&CombTree::ladder(n)).len(), n + 1);
        }
    }

    #[test]
    fn law_checks_small() {
        assert!(check_cocycle(0).unwrap().passed());
        assert_eq!(check_cocycle(0).unwrap().checked, 1);
        assert!(check_cocycle(4).unwrap().passed());
        assert!(check_coassociativity(4).unwrap().passed());
        assert!(check_counit(4).unwrap().passed());
        assert!(check_antipode(4).unwrap().passed());
    }

    #[test]
    fn cocycle_on_unit_by_hand() {
        let lhs = coproduct(&bplus(&unit()));
        assert_eq!(lhs, tensor(&[("1", "()", 1), ("()", "1", 1)]));
    }

    #[test]
    fn text_form() {
        let x = &t("((()))").scaled(&int(4)) + &t("(()())");
        assert_eq!(x.to_string(), "4*((())) + 1*(()())");
    }
}
