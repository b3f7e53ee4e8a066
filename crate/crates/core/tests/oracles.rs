//! Brute-force oracles, independent of the library's recursive algorithms.
//!
//! Trees here are labelled parent arrays: node 0 is the root and
//! `parent[i] < i` for every other node.

use std::collections::BTreeSet;

use itertools::Itertools;
use treefix_core::dse::{solve, DseSpec};
use treefix_core::hopf::{antipode, coproduct, tree, HckElem, HckTensor};
use treefix_core::linear::{int, Pair};
use treefix_core::ptrees::{enumerate_by_leaves, enumerate_by_nodes, Signature};
use treefix_core::trees::{aut_order, enumerate_comb_trees, parse_code, CombTree, Forest};

type Parents = Vec<Option<usize>>;

fn all_parent_arrays(n: usize) -> Vec<Parents> {
    let mut out = vec![vec![None]];
    for i in 1..n {
        out = out
            .into_iter()
            .flat_map(|p| {
                (0..i).map(move |j| {
                    let mut q = p.clone();
                    q.push(Some(j));
                    q
                })
            })
            .collect();
    }
    out
}

/// AHU-style canonical string, built directly from the labelled array.
fn ahu(parents: &Parents, v: usize) -> String {
    let mut kids: Vec<String> = (0..parents.len())
        .filter(|&c| parents[c] == Some(v))
        .map(|c| ahu(parents, c))
        .collect();
    kids.sort();
    format!("({})", kids.concat())
}

/// Nodes of the subtree rooted at `v` in a labelled tree.
fn subtree_nodes(parents: &Parents, v: usize) -> BTreeSet<usize> {
    let mut out = BTreeSet::from([v]);
    let mut grown = true;
    while grown {
        grown = false;
        for c in 0..parents.len() {
            if let Some(p) = parents[c] {
                if out.contains(&p) && out.insert(c) {
                    grown = true;
                }
            }
        }
    }
    out
}

/// Canonical code of the subgraph induced on `keep`, rooted at `root`.
fn induced_code(parents: &Parents, keep: &BTreeSet<usize>, root: usize) -> String {
    let mut kids: Vec<String> = keep
        .iter()
        .copied()
        .filter(|&c| parents[c] == Some(root))
        .map(|c| induced_code(parents, keep, c))
        .collect();
    kids.sort();
    format!("({})", kids.concat())
}

fn to_parents(t: &CombTree) -> Parents {
    fn go(t: &CombTree, parent: Option<usize>, out: &mut Parents) {
        let me = out.len();
        out.push(parent);
        for c in t.children() {
            go(c, Some(me), out);
        }
    }
    let mut out = Vec::new();
    go(t, None, &mut out);
    out
}

fn forest_of(codes: Vec<String>) -> Forest {
    Forest::from_trees(codes.iter().map(|c| parse_code(c).unwrap()).collect())
}

#[test]
fn comb_tree_counts_match_brute_force() {
    for n in 1..=8 {
        let classes: BTreeSet<String> = all_parent_arrays(n).iter().map(|p| ahu(p, 0)).collect();
        let ours: BTreeSet<String> = enumerate_comb_trees(n)
            .unwrap()
            .iter()
            .map(|t| t.code().to_string())
            .collect();
        assert_eq!(ours, classes, "n = {n}");
    }
    let counts: Vec<usize> = (1..=6).map(|n| enumerate_comb_trees(n).unwrap().len()).collect();
    assert_eq!(counts, [1, 1, 2, 4, 9, 20]);
}

#[test]
fn aut_order_matches_permutation_count() {
    for n in 1..=7 {
        for t in enumerate_comb_trees(n).unwrap() {
            let parents = to_parents(&t);
            let autos = (0..n)
                .permutations(n)
                .filter(|sigma| (0..n).all(|i| parents[sigma[i]] == parents[i].map(|p| sigma[p])))
                .count();
            assert_eq!(aut_order(&t), autos as u128, "{t}");
        }
    }
}

/// Δ(T) from down-closed node subsets of the labelled tree.
fn brute_coproduct(t: &CombTree) -> HckTensor {
    let parents = to_parents(t);
    let n = parents.len();
    let mut out = HckTensor::zero();
    for mask in 0u32..(1 << n) {
        let keep: BTreeSet<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
        let closed = keep.iter().all(|&i| parents[i].map_or(true, |p| keep.contains(&p)));
        if !closed {
            continue;
        }
        let root_part = if keep.is_empty() {
            Forest::unit()
        } else {
            forest_of(vec![induced_code(&parents, &keep, 0)])
        };
        // an upper component is rooted at a dropped node whose parent is kept,
        // or at the root itself when nothing is kept
        let upper_roots = (0..n).filter(|&i| {
            !keep.contains(&i) && parents[i].map_or(true, |p| keep.contains(&p))
        });
        let upper = forest_of(
            upper_roots
                .map(|r| induced_code(&parents, &subtree_nodes(&parents, r), r))
                .collect(),
        );
        out.add_term(Pair(upper, root_part), int(1));
    }
    out
}

#[test]
fn coproduct_matches_down_set_enumeration() {
    for n in 1..=7 {
        for t in enumerate_comb_trees(n).unwrap() {
            assert_eq!(coproduct(&tree(t.clone())), brute_coproduct(&t), "{t}");
        }
    }
}

/// S(T) = Σ over edge subsets E' of (−1)^{|E'|+1} · (forest left after cutting E').
fn brute_antipode(t: &CombTree) -> HckElem {
    let parents = to_parents(t);
    let n = parents.len();
    let edges: Vec<usize> = (1..n).collect(); // edge i joins i to its parent
    let mut out = HckElem::zero();
    for mask in 0u32..(1 << edges.len()) {
        let cut: BTreeSet<usize> = edges
            .iter()
            .enumerate()
            .filter(|(b, _)| mask & (1 << b) != 0)
            .map(|(_, &e)| e)
            .collect();
        let pruned: Parents = parents
            .iter()
            .enumerate()
            .map(|(i, p)| if cut.contains(&i) { None } else { *p })
            .collect();
        let components: Vec<String> = (0..n)
            .filter(|&i| pruned[i].is_none())
            .map(|r| ahu(&pruned, r))
            .collect();
        let sign = if cut.len() % 2 == 0 { -1 } else { 1 };
        out.add_term(forest_of(components), int(sign));
    }
    out
}

#[test]
fn antipode_matches_edge_subset_formula() {
    for n in 1..=7 {
        for t in enumerate_comb_trees(n).unwrap() {
            assert_eq!(antipode(&tree(t.clone())), brute_antipode(&t), "{t}");
        }
    }
}

/// Coefficients of the least solution of `y = x^shift · Σ_k a_k y^k`, by
/// iterating the equation on truncated integer series.
fn fixpoint_series(terms: &dyn Fn(usize) -> i128, base: &[i128], len: usize) -> Vec<i128> {
    let mul = |a: &[i128], b: &[i128]| {
        let mut c = vec![0i128; len];
        for i in 0..len {
            for j in 0..len - i {
                c[i + j] += a[i] * b[j];
            }
        }
        c
    };
    let mut y = vec![0i128; len];
    for _ in 0..len + 1 {
        // rhs = base + Σ_{k≥1} terms(k) y^k
        let mut rhs = base.to_vec();
        rhs.resize(len, 0);
        let mut pow = vec![0i128; len];
        pow[0] = 1;
        for k in 1..len + 2 {
            pow = mul(&pow, &y);
            let a = terms(k);
            for i in 0..len {
                rhs[i] += a * pow[i];
            }
        }
        y = rhs;
    }
    y
}

#[test]
fn catalan_oracle_for_binary_trees() {
    // B = 1 + x B²: shift x by treating coefficients of x·B² via base
    let len = 8;
    let mut b = vec![0i128; len];
    b[0] = 1;
    for _ in 0..len {
        let mut sq = vec![0i128; len];
        for i in 0..len {
            for j in 0..len - i {
                sq[i + j] += b[i] * b[j];
            }
        }
        let mut next = vec![0i128; len];
        next[0] = 1;
        next[1..len].copy_from_slice(&sq[..len - 1]);
        b = next;
    }
    assert_eq!(&b[..7], &[1, 1, 2, 5, 14, 42, 132]);
    for n in 0..=6 {
        assert_eq!(
            enumerate_by_nodes(&Signature::binary(), n).unwrap().len() as i128,
            b[n]
        );
    }
}

#[test]
fn schroder_oracle_for_stable_trees() {
    // S = x + Σ_{k≥2} S^k, coefficient of x^n counts stable trees with n leaves
    let len = 9;
    let s = fixpoint_series(&|k| if k >= 2 { 1 } else { 0 }, &[0, 1], len);
    assert_eq!(&s[1..8], &[1, 1, 3, 11, 45, 197, 903]);
    for n in 1..=7 {
        let ours = enumerate_by_leaves(&Signature::stable(n), n).unwrap().len();
        assert_eq!(ours as i128, s[n], "n = {n}");
    }
}

fn catalan(n: usize) -> u64 {
    let mut c = 1u64;
    for i in 0..n as u64 {
        c = c * 2 * (2 * i + 1) / (i + 2);
    }
    c
}

#[test]
fn dse_coefficient_sums() {
    let quad = solve(&DseSpec::quadratic(6)).unwrap();
    let geo = solve(&DseSpec::geometric(6)).unwrap();
    let schroder = fixpoint_series(&|k| if k >= 2 { 1 } else { 0 }, &[0, 1], 9);
    for k in 0..=6 {
        assert_eq!(quad.coefficient(k).unwrap().coefficient_sum(), int(catalan(k) as i64));
        assert_eq!(
            geo.coefficient(k).unwrap().coefficient_sum(),
            int(schroder[k + 1] as i64),
            "k = {k}"
        );
    }
}

#[test]
fn dse_coefficients_are_positive_tree_sums() {
    for spec in [DseSpec::linear(6), DseSpec::quadratic(6), DseSpec::geometric(6)] {
        let x = solve(&spec).unwrap();
        assert_eq!(x.coefficient(0).unwrap().to_string(), "1*1");
        for (k, c) in x.coefficients().iter().enumerate().skip(1) {
            assert!(c.is_nonnegative_integral());
            assert!(c.keys().all(|f| f.len() == 1));
            if spec.terms.len() == 1 {
                assert!(c.keys().all(|f| f.degree() == k));
            }
        }
    }
}
