//! Planar rooted hierarchy trees of non-crossing partitions, admissible edge
//! cuts and the cut coproduct on trees.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::coeff::Coefficient;
use crate::error::{Error, Result};
use crate::hopf::{coproduct, BarWord, Linear, Variant};
use crate::partition::{nc_partitions_cached, NonCrossingPartition};

/// A planar rooted tree given by the ordered subtrees of its root.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Tree(Vec<Tree>);

/// An ordered forest; the empty forest is the unit.
pub type Forest = Vec<Tree>;

/// `Σ c · R ⊗ P` with `R` a tree or the unit (empty) and `P` a forest.
pub type TreeTensor = Linear<(Forest, Forest)>;

impl Tree {
    /// The bare root.
    pub fn root() -> Self {
        Tree(Vec::new())
    }

    pub fn new(children: Vec<Tree>) -> Self {
        Tree(children)
    }

    pub fn children(&self) -> &[Tree] {
        &self.0
    }

    /// Number of non-root vertices.
    pub fn degree(&self) -> usize {
        self.0.iter().map(|c| 1 + c.degree()).sum()
    }
}

/// Smaller trees first, then children left to right.
impl Ord for Tree {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Tree {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for c in &self.0 {
            c.fmt(f)?;
        }
        f.write_str(")")
    }
}

impl FromStr for Tree {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut stack: Vec<Vec<Tree>> = Vec::new();
        let mut done = None;
        for (i, ch) in s.chars().enumerate() {
            if done.is_some() {
                return Err(Error::Parse(format!("trailing input after position {i} in `{s}`")));
            }
            match ch {
                '(' => stack.push(Vec::new()),
                ')' => {
                    let node = Tree(stack.pop().ok_or_else(|| Error::Parse(format!("unbalanced `)` in `{s}`")))?);
                    match stack.last_mut() {
                        Some(parent) => parent.push(node),
                        None => done = Some(node),
                    }
                }
                c if c.is_whitespace() => {}
                c => return Err(Error::Parse(format!("unexpected `{c}` in tree `{s}`"))),
            }
        }
        done.ok_or_else(|| Error::Parse(format!("incomplete tree `{s}`")))
    }
}

/// `ρ(L)`: one vertex per block, hung below the innermost block enclosing it
/// (or the root), children ordered by their minima.
pub fn hierarchy_tree(l: &NonCrossingPartition) -> Tree {
    let nested = l.nesting_matrix();
    let blocks = l.blocks();
    let k = blocks.len();
    // Among enclosing blocks the innermost one has the largest minimum.
    let parent: Vec<Option<usize>> =
        (0..k).map(|i| (0..k).filter(|&j| nested[i][j]).max_by_key(|&j| blocks[j][0])).collect();
    fn build(v: Option<usize>, parent: &[Option<usize>]) -> Tree {
        // Blocks are stored by increasing minimum, so index order is planar order.
        Tree((0..parent.len()).filter(|&i| parent[i] == v).map(|i| build(Some(i), parent)).collect())
    }
    build(None, &parent)
}

/// A set of edges, each named by the child-index path from the root to its
/// lower vertex, in pre-order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct EdgeCut(pub Vec<Vec<usize>>);

impl fmt::Display for EdgeCut {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> =
            self.0.iter().map(|p| p.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(".")).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// All edge sets meeting each root-to-leaf path at most once.
pub fn admissible_edge_cuts(t: &Tree) -> Vec<EdgeCut> {
    fn below(t: &Tree, prefix: &mut Vec<usize>) -> Vec<Vec<Vec<usize>>> {
        let mut acc: Vec<Vec<Vec<usize>>> = vec![Vec::new()];
        for (i, c) in t.0.iter().enumerate() {
            prefix.push(i);
            let mut options: Vec<Vec<Vec<usize>>> = below(c, prefix);
            options.push(vec![prefix.clone()]);
            prefix.pop();
            let mut next = Vec::with_capacity(acc.len() * options.len());
            for a in &acc {
                for o in &options {
                    let mut v = a.clone();
                    v.extend(o.iter().cloned());
                    next.push(v);
                }
            }
            acc = next;
        }
        acc
    }
    below(t, &mut Vec::new()).into_iter().map(EdgeCut).collect()
}

/// `(R_c, P_c)`: the part still attached to the root, and the pruned forest
/// in which every maximal run of consecutive cut siblings hangs below one new
/// root.
pub fn apply_cut(t: &Tree, cut: &EdgeCut) -> (Tree, Forest) {
    fn walk(t: &Tree, path: &mut Vec<usize>, cut: &EdgeCut, pruned: &mut Forest) -> Tree {
        let mut kept = Vec::new();
        let mut run: Vec<Tree> = Vec::new();
        for (i, c) in t.0.iter().enumerate() {
            path.push(i);
            if cut.0.contains(path) {
                run.push(c.clone());
            } else {
                if !run.is_empty() {
                    pruned.push(Tree(std::mem::take(&mut run)));
                }
                kept.push(walk(c, path, cut, pruned));
            }
            path.pop();
        }
        if !run.is_empty() {
            pruned.push(Tree(run));
        }
        Tree(kept)
    }
    let mut pruned = Vec::new();
    let root = walk(t, &mut Vec::new(), cut, &mut pruned);
    (root, pruned)
}

/// `Δ̃(t) = Σ_c R_c ⊗ P_c` over admissible cuts; a bare-root `R_c` is the unit.
pub fn tree_coproduct(t: &Tree) -> TreeTensor {
    let mut out = Linear::zero();
    for c in admissible_edge_cuts(t) {
        let (r, p) = apply_cut(t, &c);
        let left = if r.0.is_empty() && t.degree() > 0 { Vec::new() } else { vec![r] };
        out.add_one((left, p));
    }
    out
}

/// `(ρ ⊗ ρ̄)` applied to a tensor of bar words of partitions.
pub fn transport(t: &Linear<(BarWord<NonCrossingPartition>, BarWord<NonCrossingPartition>)>) -> TreeTensor {
    let forest = |b: &BarWord<NonCrossingPartition>| b.parts().iter().map(hierarchy_tree).collect::<Forest>();
    t.iter().map(|((l, r), c)| ((forest(l), forest(r)), c.clone())).collect()
}

pub fn render_forest(f: &[Tree]) -> String {
    if f.is_empty() {
        return "1".to_string();
    }
    f.iter().map(Tree::to_string).collect::<Vec<_>>().join("|")
}

pub fn render_tree_tensor(t: &TreeTensor) -> String {
    if t.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, ((l, r), c)) in t.iter().enumerate() {
        if i > 0 {
            out.push_str(if c.is_negative() { " - " } else { " + " });
        } else if c.is_negative() {
            out.push('-');
        }
        let mag = if c.is_negative() { -c.clone() } else { c.clone() };
        if !mag.is_one() {
            out.push_str(&format!("{mag}·"));
        }
        out.push_str(&format!("{} ⊗ {}", render_forest(l), render_forest(r)));
    }
    out
}

/// One partition on which the transported coproduct and the tree coproduct
/// disagree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeMismatch {
    pub partition: NonCrossingPartition,
    pub transported: TreeTensor,
    pub on_trees: TreeTensor,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TreeConsistencyReport {
    pub checked: usize,
    pub mismatches: Vec<TreeMismatch>,
    /// Partitions whose admissible-split count differs from the cut count.
    pub count_differences: Vec<NonCrossingPartition>,
}

impl TreeConsistencyReport {
    pub fn is_consistent(&self) -> bool {
        self.mismatches.is_empty() && self.count_differences.is_empty()
    }
}

/// Compares `(ρ⊗ρ̄)∘Δ` with `Δ̃∘ρ` on every `L ∈ NC_n`, `1 ≤ n ≤ max_n`.
pub fn tree_consistency(max_n: usize) -> Result<TreeConsistencyReport> {
    let mut report = TreeConsistencyReport::default();
    for n in 1..=max_n {
        for l in nc_partitions_cached(n)?.iter() {
            report.checked += 1;
            let t = hierarchy_tree(l);
            let transported = transport(&coproduct(&BarWord::atom(l.clone()), Variant::Full));
            let on_trees = tree_coproduct(&t);
            if l.admissible_splits().len() != admissible_edge_cuts(&t).len() {
                report.count_differences.push(l.clone());
            }
            if transported != on_trees {
                report.mismatches.push(TreeMismatch { partition: l.clone(), transported, on_trees });
            }
        }
    }
    Ok(report)
}

/// Multiplicity of `left ⊗ right` in a tree tensor, for display and tests.
pub fn tree_coefficient(t: &TreeTensor, left: &[Tree], right: &[Tree]) -> Coefficient {
    t.coefficient(&(left.to_vec(), right.to_vec()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tr(s: &str) -> Tree {
        s.parse().unwrap()
    }

    fn nc(s: &str) -> NonCrossingPartition {
        s.parse().unwrap()
    }

    #[test]
    fn parse_and_display() {
        for s in ["()", "(())", "(()())", "((())())"] {
            assert_eq!(tr(s).to_string(), s);
        }
        assert!("(()".parse::<Tree>().is_err());
        assert!("())".parse::<Tree>().is_err());
        assert!("(x)".parse::<Tree>().is_err());
        assert_eq!(tr("((())())").degree(), 3);
        assert_eq!(serde_json::to_string(&tr("(()())")).unwrap(), "[[],[]]");
    }

    #[test]
    fn hierarchy_examples() {
        let a = hierarchy_tree(&nc("{1,4}{2,3}{5,6,7}"));
        let b = hierarchy_tree(&nc("{1,3}{2}{4,5}"));
        assert_eq!(a, tr("((())())"));
        assert_eq!(a, b);
        assert_eq!(hierarchy_tree(&nc("{1}")), tr("(())"));
        // The innermost enclosing block is the parent.
        assert_eq!(hierarchy_tree(&nc("{1,6}{2,5}{3,4}")), tr("(((())))"));
        assert_eq!(hierarchy_tree(&nc("{1,3,5}{2}{4}")), tr("((()()))"));
    }

    #[test]
    fn cut_counts() {
        assert_eq!(admissible_edge_cuts(&tr("(())")).len(), 2);
        assert_eq!(admissible_edge_cuts(&tr("(()()())")).len(), 8);
        let chain = admissible_edge_cuts(&tr("((()))"));
        assert_eq!(chain.len(), 3);
        assert!(!chain.contains(&EdgeCut(vec![vec![0], vec![0, 0]])));
    }

    #[test]
    fn three_leaf_display() {
        let (t1, t2) = (tr("(())"), tr("(()())"));
        let t = tr("(()()())");
        let d = tree_coproduct(&t);
        let mut expect = TreeTensor::zero();
        expect.add_one((vec![t.clone()], vec![]));
        expect.add_one((vec![], vec![t.clone()]));
        expect.add_term((vec![t2.clone()], vec![t1.clone()]), Coefficient::from_int(3));
        expect.add_term((vec![t1.clone()], vec![t2.clone()]), Coefficient::from_int(2));
        expect.add_one((vec![t1.clone()], vec![t1.clone(), t1.clone()]));
        assert_eq!(d, expect);
    }

    #[test]
    fn nested_display_has_six_terms() {
        let t = tr("((())())");
        let d = tree_coproduct(&t);
        assert_eq!(d.len(), 6);
        let t1 = tr("(())");
        assert!(tree_coefficient(&d, std::slice::from_ref(&t1), &[t1.clone(), t1.clone()]).is_one());
        assert!(tree_coefficient(&d, &[tr("(()())")], std::slice::from_ref(&t1)).is_one());
        assert!(tree_coefficient(&d, std::slice::from_ref(&t1), &[tr("((()))")]).is_one());
        assert!(tree_coefficient(&d, &[tr("((()))")], &[t1]).is_one());
    }

    #[test]
    fn primitive_leaf() {
        let t = tr("(())");
        assert_eq!(render_tree_tensor(&tree_coproduct(&t)), "1 ⊗ (()) + (()) ⊗ 1");
    }

    #[test]
    fn transported_worked_partitions_agree() {
        for s in ["{1,4}{2,3}{5,6,7}", "{1,3}{2}{4,5}", "{1,2}{3,4}{5,6}", "{1,4}{2}{3}"] {
            let l = nc(s);
            let lhs = transport(&coproduct(&BarWord::atom(l.clone()), Variant::Full));
            assert_eq!(lhs, tree_coproduct(&hierarchy_tree(&l)), "{s}");
        }
    }

    #[test]
    fn separated_siblings_break_tree_only_transport() {
        // Same tree as {1,4}{2}{3}, but the inner blocks sit in different
        // components once the outer block is removed.
        let l = nc("{1,3,5}{2}{4}");
        let lhs = transport(&coproduct(&BarWord::atom(l.clone()), Variant::Full));
        assert_ne!(lhs, tree_coproduct(&hierarchy_tree(&l)));
        assert_eq!(hierarchy_tree(&l), hierarchy_tree(&nc("{1,4}{2}{3}")));
    }

    #[test]
    fn small_corpus() {
        let r = tree_consistency(4).unwrap();
        assert_eq!(r.checked, 1 + 2 + 5 + 14);
        assert!(r.is_consistent());
        let r = tree_consistency(5).unwrap();
        assert!(r.count_differences.is_empty());
        assert!(!r.mismatches.is_empty());
    }
}
