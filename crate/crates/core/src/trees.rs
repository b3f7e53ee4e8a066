//! Combinatorial rooted trees (unordered children) in canonical form, and
//! forests of them.
//!
//! A tree is identified with its canonical parenthesis code: `"()"` is the
//! single node, and a node with children is `"(" + sorted child codes + ")"`.
//! Equality, ordering and hashing all go through that code, so two trees
//! compare equal exactly when they are isomorphic.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;

use crate::error::{Error, Result};

/// Default upper bound on the node count accepted by [`enumerate_comb_trees`].
pub const DEFAULT_MAX_COMB_NODES: usize = 12;

/// An isomorphism class of finite rooted trees.
#[derive(Clone)]
pub struct CombTree {
    children: Vec<CombTree>,
    code: String,
    nodes: usize,
}

impl CombTree {
    /// The one-node tree.
    pub fn node() -> Self {
        Self::from_children(Vec::new())
    }

    /// Builds the tree whose root has the given children, in any order.
    pub fn from_children(mut children: Vec<CombTree>) -> Self {
        children.sort();
        let mut code = String::with_capacity(2 + children.iter().map(|c| c.code.len()).sum::<usize>());
        code.push('(');
        for c in &children {
            code.push_str(&c.code);
        }
        code.push(')');
        let nodes = 1 + children.iter().map(|c| c.nodes).sum::<usize>();
        CombTree { children, code, nodes }
    }

    /// The `n`-node ladder (a path hanging from the root).
    pub fn ladder(n: usize) -> Self {
        assert!(n >= 1, "a ladder has at least one node");
        let mut t = Self::node();
        for _ in 1..n {
            t = Self::from_children(vec![t]);
        }
        t
    }

    /// The root's child subtrees, sorted by canonical code.
    pub fn children(&self) -> &[CombTree] {
        &self.children
    }

    pub fn node_count(&self) -> usize {
        self.nodes
    }

    /// Canonical parenthesis code.
    pub fn code(&self) -> &str {
        &self.code
    }
}

impl PartialEq for CombTree {
    fn eq(&self, other: &Self) -> bool {
        self.code == other.code
    }
}

impl Eq for CombTree {}

impl Hash for CombTree {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.code.hash(state);
    }
}

impl PartialOrd for CombTree {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for CombTree {
    fn cmp(&self, other: &Self) -> Ordering {
        self.code.as_bytes().cmp(other.code.as_bytes())
    }
}

impl fmt::Display for CombTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.code)
    }
}

impl fmt::Debug for CombTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CombTree({})", self.code)
    }
}

impl FromStr for CombTree {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_code(s)
    }
}

/// Returns the canonical code of `t`.
pub fn canon_code(t: &CombTree) -> String {
    t.code.clone()
}

/// Parses a parenthesis code into a canonical tree.
///
/// Children may appear in any order; they are sorted on the way in. Any byte
/// other than `(` or `)`, an unbalanced string, or more than one top-level
/// tree is rejected.
pub fn parse_code(s: &str) -> Result<CombTree> {
    let malformed = |why: &str| Error::MalformedCode {
        input: s.to_string(),
        reason: why.to_string(),
    };
    if s.is_empty() {
        return Err(malformed("empty input"));
    }
    // Children under construction, one frame per open parenthesis.
    let mut stack: Vec<Vec<CombTree>> = Vec::new();
    let mut done: Option<CombTree> = None;
    for (i, b) in s.bytes().enumerate() {
        if done.is_some() {
            return Err(malformed(&format!("trailing input at byte {i}")));
        }
        match b {
            b'(' => stack.push(Vec::new()),
            b')' => {
                let children = stack
                    .pop()
                    .ok_or_else(|| malformed(&format!("unmatched ')' at byte {i}")))?;
                let t = CombTree::from_children(children);
                match stack.last_mut() {
                    Some(parent) => parent.push(t),
                    None => done = Some(t),
                }
            }
            other => {
                return Err(malformed(&format!(
                    "unexpected character {:?} at byte {i}",
                    other as char
                )))
            }
        }
    }
    done.ok_or_else(|| malformed("unbalanced parentheses"))
}

/// A finite multiset of combinatorial trees; a monomial in the free
/// commutative algebra on trees. The empty forest is the unit.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Forest {
    trees: Vec<CombTree>,
}

impl Forest {
    /// The empty forest.
    pub fn unit() -> Self {
        Forest { trees: Vec::new() }
    }

    pub fn single(t: CombTree) -> Self {
        Forest { trees: vec![t] }
    }

    pub fn from_trees(mut trees: Vec<CombTree>) -> Self {
        trees.sort();
        Forest { trees }
    }

    pub fn trees(&self) -> &[CombTree] {
        &self.trees
    }

    pub fn is_unit(&self) -> bool {
        self.trees.is_empty()
    }

    pub fn len(&self) -> usize {
        self.trees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.trees.is_empty()
    }

    /// Total node count.
    pub fn degree(&self) -> usize {
        self.trees.iter().map(CombTree::node_count).sum()
    }

    /// Multiset union.
    pub fn union(&self, other: &Forest) -> Forest {
        let mut trees = Vec::with_capacity(self.trees.len() + other.trees.len());
        trees.extend_from_slice(&self.trees);
        trees.extend_from_slice(&other.trees);
        Forest::from_trees(trees)
    }

    /// Codes joined by `*`, or `1` for the empty forest.
    pub fn code(&self) -> String {
        self.to_string()
    }

    fn code_bytes(&self) -> impl Iterator<Item = u8> + '_ {
        let unit: &[u8] = if self.trees.is_empty() { b"1" } else { b"" };
        let body = self.trees.iter().enumerate().flat_map(|(i, t)| {
            let sep: &[u8] = if i == 0 { b"" } else { b"*" };
            sep.iter().chain(t.code.as_bytes()).copied()
        });
        unit.iter().copied().chain(body)
    }
}

impl From<CombTree> for Forest {
    fn from(t: CombTree) -> Self {
        Forest::single(t)
    }
}

impl FromIterator<CombTree> for Forest {
    fn from_iter<I: IntoIterator<Item = CombTree>>(iter: I) -> Self {
        Forest::from_trees(iter.into_iter().collect())
    }
}

// Forests order by their text code so that every listing comes out in
// ascending code order.
impl PartialOrd for Forest {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Forest {
    fn cmp(&self, other: &Self) -> Ordering {
        self.code_bytes().cmp(other.code_bytes())
    }
}

impl fmt::Display for Forest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.trees.is_empty() {
            return f.write_str("1");
        }
        for (i, t) in self.trees.iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            f.write_str(&t.code)?;
        }
        Ok(())
    }
}

impl fmt::Debug for Forest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Forest({self})")
    }
}

impl FromStr for Forest {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "1" {
            return Ok(Forest::unit());
        }
        s.split('*').map(parse_code).collect()
    }
}

/// The grafting operator: attaches every tree of `f` to a fresh root.
pub fn graft(f: &Forest) -> CombTree {
    CombTree::from_children(f.trees.clone())
}

fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

/// Order of the automorphism group of `t`.
pub fn aut_order(t: &CombTree) -> u128 {
    let mut total = 1u128;
    let kids = t.children();
    let mut i = 0;
    while i < kids.len() {
        let mut j = i;
        while j < kids.len() && kids[j] == kids[i] {
            j += 1;
        }
        let sub = aut_order(&kids[i]);
        total *= factorial(j - i) * sub.pow((j - i) as u32);
        i = j;
    }
    total
}

/// Every tree with exactly `n` nodes, ascending by code.
pub fn enumerate_comb_trees(n: usize) -> Result<Vec<CombTree>> {
    enumerate_comb_trees_bounded(n, DEFAULT_MAX_COMB_NODES)
}

/// As [`enumerate_comb_trees`] with an explicit node-count bound.
pub fn enumerate_comb_trees_bounded(n: usize, max_nodes: usize) -> Result<Vec<CombTree>> {
    if n > max_nodes {
        return Err(Error::SizeLimit {
            what: "combinatorial tree nodes",
            requested: n,
            limit: max_nodes,
        });
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    // by_size[k] = all trees with k nodes, built from forests of size k-1.
    let mut by_size: Vec<Vec<CombTree>> = vec![Vec::new(), vec![CombTree::node()]];
    for k in 2..=n {
        let forests = forests_from(&by_size, k - 1);
        let mut trees: Vec<CombTree> = forests.iter().map(graft).collect();
        trees.sort();
        trees.dedup();
        by_size.push(trees);
    }
    Ok(by_size.swap_remove(n))
}

/// All forests of total degree exactly `degree` whose trees are drawn from
/// `by_size` (indexed by node count).
fn forests_from(by_size: &[Vec<CombTree>], degree: usize) -> Vec<Forest> {
    // Flatten trees into one list sorted by (size, code) and pick
    // non-decreasing index sequences, so each multiset appears once.
    let pool: Vec<&CombTree> = by_size.iter().flatten().collect();
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn go<'a>(
        pool: &[&'a CombTree],
        start: usize,
        remaining: usize,
        current: &mut Vec<&'a CombTree>,
        out: &mut Vec<Forest>,
    ) {
        if remaining == 0 {
            out.push(current.iter().map(|t| (*t).clone()).collect());
            return;
        }
        for i in start..pool.len() {
            let size = pool[i].node_count();
            if size > remaining {
                continue;
            }
            current.push(pool[i]);
            go(pool, i, remaining - size, current, out);
            current.pop();
        }
    }
    go(&pool, 0, degree, &mut current, &mut out);
    out
}

/// Every forest of total degree exactly `degree`, ascending by code.
pub fn enumerate_forests(degree: usize) -> Result<Vec<Forest>> {
    let mut by_size = vec![Vec::new()];
    for k in 1..=degree {
        by_size.push(enumerate_comb_trees(k)?);
    }
    let mut out = forests_from(&by_size, degree);
    out.sort();
    Ok(out)
}

/// Every forest of degree at most `bound`, grouped by degree.
pub fn enumerate_forests_up_to(bound: usize) -> Result<Vec<Forest>> {
    let mut out = Vec::new();
    for d in 0..=bound {
        out.extend(enumerate_forests(d)?);
    }
    Ok(out)
}

/// Distinct trees of `n` nodes as a set; convenience for membership checks.
pub fn comb_tree_set(n: usize) -> Result<BTreeSet<CombTree>> {
    Ok(enumerate_comb_trees(n)?.into_iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(s: &str) -> CombTree {
        parse_code(s).unwrap()
    }

    #[test]
    fn codes_of_small_trees() {
        assert_eq!(canon_code(&CombTree::node()), "()");
        assert_eq!(canon_code(&CombTree::ladder(2)), "(())");
        let v = CombTree::from_children(vec![CombTree::node(), CombTree::node()]);
        assert_eq!(canon_code(&v), "(()())");
    }

    #[test]
    fn parse_normalizes_child_order() {
        assert_eq!(t("(()(()))"), t("((())())"));
        assert_eq!(t("(()(()))").code(), "((())())");
        assert_eq!(t("(()())").code(), "(()())");
    }

    #[test]
    fn parse_rejects_bad_input() {
        for bad in ["", "(()( ))", "(", ")", "(()", "())", "()()", "(x)", "1"] {
            assert!(
                matches!(parse_code(bad), Err(Error::MalformedCode { .. })),
                "{bad:?} should be rejected"
            );
        }
    }

    #[test]
    fn graft_examples() {
        assert_eq!(graft(&Forest::unit()).code(), "()");
        let two_dots = Forest::from_trees(vec![CombTree::node(), CombTree::node()]);
        assert_eq!(graft(&two_dots).code(), "(()())");
        assert_eq!(graft(&Forest::single(t("(())"))).code(), "((()))");
    }

    #[test]
    fn graft_node_count() {
        let f: Forest = "()*(())*(()())".parse().unwrap();
        assert_eq!(graft(&f).node_count(), f.degree() + 1);
    }

    #[test]
    fn aut_order_examples() {
        for n in 1..8 {
            assert_eq!(aut_order(&CombTree::ladder(n)), 1);
        }
        assert_eq!(aut_order(&t("(()()())")), 6);
        assert_eq!(aut_order(&t("(()())")), 2);
        assert_eq!(aut_order(&t("((()())(()()))")), 8);
    }

    #[test]
    fn forest_text_form() {
        assert_eq!(Forest::unit().to_string(), "1");
        let f: Forest = "(())*()".parse().unwrap();
        assert_eq!(f.to_string(), "(())*()");
        assert_eq!("1".parse::<Forest>().unwrap(), Forest::unit());
        assert!("(*)".parse::<Forest>().is_err());
    }

    #[test]
    fn forest_order_matches_code_order() {
        let mut fs: Vec<Forest> = ["1", "()", "()*()", "(())", "(()())"]
            .iter()
            .map(|s| s.parse().unwrap())
            .collect();
        fs.sort();
        let mut codes: Vec<String> = fs.iter().map(Forest::code).collect();
        let sorted_codes = {
            let mut c = codes.clone();
            c.sort();
            c
        };
        assert_eq!(codes, sorted_codes);
        codes.dedup();
        assert_eq!(codes.len(), 5);
    }

    #[test]
    fn small_enumerations() {
        let one = enumerate_comb_trees(1).unwrap();
        assert_eq!(one.iter().map(|t| t.code()).collect::<Vec<_>>(), ["()"]);
        let three = enumerate_comb_trees(3).unwrap();
        assert_eq!(
            three.iter().map(|t| t.code()).collect::<Vec<_>>(),
            ["((()))", "(()())"]
        );
        assert_eq!(enumerate_comb_trees(4).unwrap().len(), 4);
    }

    #[test]
    fn enumeration_size_limit() {
        assert!(matches!(
            enumerate_comb_trees(13),
            Err(Error::SizeLimit { limit: 12, .. })
        ));
        assert!(enumerate_comb_trees_bounded(5, 4).is_err());
    }

    #[test]
    fn forest_counts() {
        // forests of degree d are trees of d+1 nodes under the root
        for d in 0..6 {
            assert_eq!(
                enumerate_forests(d).unwrap().len(),
                enumerate_comb_trees(d + 1).unwrap().len()
            );
        }
    }
}
