//! Lattice paths weakly below the diagonal, the binary words encoding them,
//! and the binary trees and polygon triangulations obtained from full
//! (Dyck) paths.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Enumeration workload bound for [`gen_paths`].
pub const MAX_PATH_N: usize = 14;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("size {n} exceeds the enumeration bound {max}")]
    BoundExceeded { n: usize, max: usize },
    #[error("k = {k} exceeds n = {n}")]
    InvalidShape { n: usize, k: usize },
    #[error("invalid step character {0:?}: expected E or N")]
    BadStepChar(char),
    #[error("invalid word character {0:?}: expected 0 or 1")]
    BadWordChar(char),
    #[error("prefix condition fails at step {position}: more N than E steps")]
    PrefixViolation { position: usize },
    #[error("path ends at ({n}, {k}), not on the diagonal")]
    NotFull { n: usize, k: usize },
    #[error("expected a tree with {expected} nodes, got {got}")]
    SizeMismatch { expected: usize, got: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Step {
    E,
    N,
}

/// Path of unit E and N steps from the origin staying weakly below the
/// diagonal: every prefix has at least as many E as N steps.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LatticePath {
    steps: Vec<Step>,
}

impl LatticePath {
    pub fn new(steps: Vec<Step>) -> Result<Self, LatticeError> {
        let mut e = 0usize;
        let mut n = 0usize;
        for (i, s) in steps.iter().enumerate() {
            match s {
                Step::E => e += 1,
                Step::N => n += 1,
            }
            if n > e {
                return Err(LatticeError::PrefixViolation { position: i });
            }
        }
        Ok(LatticePath { steps })
    }

    pub fn empty() -> Self {
        LatticePath { steps: Vec::new() }
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    /// Number of E steps.
    pub fn n(&self) -> usize {
        self.steps.iter().filter(|s| **s == Step::E).count()
    }

    /// Number of N steps.
    pub fn k(&self) -> usize {
        self.steps.len() - self.n()
    }

    /// Whether the endpoint lies on the diagonal.
    pub fn is_full(&self) -> bool {
        self.n() == self.k()
    }
}

impl fmt::Display for LatticePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.steps {
            f.write_str(match s {
                Step::E => "E",
                Step::N => "N",
            })?;
        }
        Ok(())
    }
}

impl FromStr for LatticePath {
    type Err = LatticeError;

    fn from_str(s: &str) -> Result<Self, LatticeError> {
        let steps = s
            .trim()
            .chars()
            .map(|c| match c {
                'E' | 'e' => Ok(Step::E),
                'N' | 'n' => Ok(Step::N),
                other => Err(LatticeError::BadStepChar(other)),
            })
            .collect::<Result<_, _>>()?;
        LatticePath::new(steps)
    }
}

/// Binary word; a plain container with no prefix condition.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BinWord {
    bits: Vec<u8>,
}

impl BinWord {
    /// Bits must be 0 or 1.
    pub fn new(bits: Vec<u8>) -> Result<Self, LatticeError> {
        if let Some(&b) = bits.iter().find(|&&b| b > 1) {
            return Err(LatticeError::BadWordChar((b'0' + b) as char));
        }
        Ok(BinWord { bits })
    }

    pub fn bits(&self) -> &[u8] {
        &self.bits
    }
}

impl fmt::Display for BinWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.bits {
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

impl FromStr for BinWord {
    type Err = LatticeError;

    fn from_str(s: &str) -> Result<Self, LatticeError> {
        let bits = s
            .trim()
            .chars()
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                other => Err(LatticeError::BadWordChar(other)),
            })
            .collect::<Result<_, _>>()?;
        Ok(BinWord { bits })
    }
}

/// Rooted binary tree: every internal node has exactly two children.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum BinTree {
    Leaf,
    Node(Box<BinTree>, Box<BinTree>),
}

impl BinTree {
    pub fn node(left: BinTree, right: BinTree) -> Self {
        BinTree::Node(Box::new(left), Box::new(right))
    }

    /// Number of internal nodes.
    pub fn size(&self) -> usize {
        match self {
            BinTree::Leaf => 0,
            BinTree::Node(l, r) => 1 + l.size() + r.size(),
        }
    }
}

impl fmt::Display for BinTree {
    /// Leaf as `.`, node as `(<left><right>)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BinTree::Leaf => f.write_str("."),
            BinTree::Node(l, r) => write!(f, "({l}{r})"),
        }
    }
}

/// All paths from the origin to (n, k) weakly below the diagonal, in
/// lexicographic step order with E < N.
pub fn gen_paths(n: usize, k: usize) -> Result<Vec<LatticePath>, LatticeError> {
    if n > MAX_PATH_N {
        return Err(LatticeError::BoundExceeded { n, max: MAX_PATH_N });
    }
    if k > n {
        return Err(LatticeError::InvalidShape { n, k });
    }
    let mut out = Vec::new();
    let mut steps = Vec::with_capacity(n + k);
    extend_paths(n, k, 0, 0, &mut steps, &mut out);
    Ok(out)
}

fn extend_paths(
    n: usize,
    k: usize,
    e: usize,
    nn: usize,
    steps: &mut Vec<Step>,
    out: &mut Vec<LatticePath>,
) {
    if e == n && nn == k {
        out.push(LatticePath {
            steps: steps.clone(),
        });
        return;
    }
    if e < n {
        steps.push(Step::E);
        extend_paths(n, k, e + 1, nn, steps, out);
        steps.pop();
    }
    if nn < k && nn < e {
        steps.push(Step::N);
        extend_paths(n, k, e, nn + 1, steps, out);
        steps.pop();
    }
}

/// Number of unit cells between the path and the x-axis: each E step
/// contributes the number of N steps before it.
pub fn area(path: &LatticePath) -> usize {
    let mut height = 0;
    let mut total = 0;
    for s in path.steps() {
        match s {
            Step::N => height += 1,
            Step::E => total += height,
        }
    }
    total
}

/// Encodes E as 0 and N as 1.
pub fn path_to_word(path: &LatticePath) -> BinWord {
    BinWord {
        bits: path
            .steps()
            .iter()
            .map(|s| if *s == Step::N { 1 } else { 0 })
            .collect(),
    }
}

/// Decodes 0 as E and 1 as N, checking the prefix condition.
pub fn word_to_path(word: &BinWord) -> Result<LatticePath, LatticeError> {
    LatticePath::new(
        word.bits()
            .iter()
            .map(|&b| if b == 1 { Step::N } else { Step::E })
            .collect(),
    )
}

/// Inversions of a binary word: pairs i < j with w_i = 1 and w_j = 0.
///
/// Counted literally over all pairs, independently of any path geometry.
pub fn word_inv(word: &BinWord) -> usize {
    let bits = word.bits();
    let mut count = 0;
    for i in 0..bits.len() {
        for j in i + 1..bits.len() {
            if bits[i] == 1 && bits[j] == 0 {
                count += 1;
            }
        }
    }
    count
}

/// Appends N steps until the endpoint reaches the diagonal. Trailing N
/// steps pass no E step, so the area is unchanged.
pub fn complete_path(path: &LatticePath) -> LatticePath {
    let mut steps = path.steps().to_vec();
    steps.extend(std::iter::repeat(Step::N).take(path.n() - path.k()));
    LatticePath { steps }
}

/// First-return decomposition of a full path into a binary tree: writing
/// the path as E alpha N beta with alpha the segment before the first
/// return to the diagonal, the tree is Node(tree(alpha), tree(beta)).
pub fn path_to_tree(path: &LatticePath) -> Result<BinTree, LatticeError> {
    if !path.is_full() {
        return Err(LatticeError::NotFull {
            n: path.n(),
            k: path.k(),
        });
    }
    Ok(decompose(path.steps()))
}

fn decompose(steps: &[Step]) -> BinTree {
    if steps.is_empty() {
        return BinTree::Leaf;
    }
    debug_assert_eq!(steps[0], Step::E, "full path starts with E");
    let mut depth = 0isize;
    for (i, s) in steps.iter().enumerate() {
        depth += match s {
            Step::E => 1,
            Step::N => -1,
        };
        if depth == 0 {
            return BinTree::node(decompose(&steps[1..i]), decompose(&steps[i + 1..]));
        }
    }
    unreachable!("full path returns to the diagonal");
}

/// Sum over all internal nodes of the size of the left subtree.
pub fn tree_stat(tree: &BinTree) -> usize {
    fn go(t: &BinTree) -> (usize, usize) {
        match t {
            BinTree::Leaf => (0, 0),
            BinTree::Node(l, r) => {
                let (ls, lstat) = go(l);
                let (rs, rstat) = go(r);
                (1 + ls + rs, lstat + rstat + ls)
            }
        }
    }
    go(tree).1
}

/// Diagonals of the triangulation of a convex (n+2)-gon associated to a
/// binary tree with n nodes.
///
/// Vertices are numbered 0..=n+1. Each node spans a sub-polygon with base
/// edge (lo, hi) and splits it at the apex lo + |left| + 1; the two sides
/// of each triangle that are not polygon edges are the diagonals. A tree
/// with n >= 1 nodes yields exactly n - 1 diagonals, sorted.
pub fn tree_to_triangulation(
    tree: &BinTree,
    n: usize,
) -> Result<Vec<(usize, usize)>, LatticeError> {
    let got = tree.size();
    if got != n {
        return Err(LatticeError::SizeMismatch { expected: n, got });
    }
    let mut out = Vec::new();
    collect_diagonals(tree, 0, n + 1, &mut out);
    out.sort_unstable();
    Ok(out)
}

fn collect_diagonals(t: &BinTree, lo: usize, hi: usize, out: &mut Vec<(usize, usize)>) {
    if let BinTree::Node(l, r) = t {
        let apex = lo + l.size() + 1;
        if apex - lo >= 2 {
            out.push((lo, apex));
        }
        if hi - apex >= 2 {
            out.push((apex, hi));
        }
        collect_diagonals(l, lo, apex, out);
        collect_diagonals(r, apex, hi, out);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::choose2;

    fn path(s: &str) -> LatticePath {
        s.parse().unwrap()
    }

    #[test]
    fn construction_checks_the_prefix_condition() {
        assert!("EENNE".parse::<LatticePath>().is_ok());
        assert_eq!(
            "ENN".parse::<LatticePath>(),
            Err(LatticeError::PrefixViolation { position: 2 })
        );
        assert_eq!(
            "NE".parse::<LatticePath>(),
            Err(LatticeError::PrefixViolation { position: 0 })
        );
        assert_eq!(
            "EX".parse::<LatticePath>(),
            Err(LatticeError::BadStepChar('X'))
        );
        let p = path("EENEN");
        assert_eq!((p.n(), p.k()), (3, 2));
        assert!(!p.is_full());
        assert!(path("EN").is_full());
    }

    #[test]
    fn enumeration_matches_the_worked_cell() {
        let got: Vec<String> = gen_paths(3, 2)
            .unwrap()
            .iter()
            .map(LatticePath::to_string)
            .collect();
        assert_eq!(got, vec!["EEENN", "EENEN", "EENNE", "ENEEN", "ENENE"]);
        let areas: Vec<usize> = gen_paths(3, 2).unwrap().iter().map(area).collect();
        assert_eq!(areas, vec![0, 1, 2, 2, 3]);
    }

    #[test]
    fn enumeration_counts_are_triangle_numbers() {
        // |D'_{n,k}| follows the classical Catalan triangle column counts.
        let expected = [
            vec![1],
            vec![1, 1],
            vec![1, 2, 2],
            vec![1, 3, 5, 5],
            vec![1, 4, 9, 14, 14],
            vec![1, 5, 14, 28, 42, 42],
        ];
        for (n, row) in expected.iter().enumerate() {
            for (k, &c) in row.iter().enumerate() {
                assert_eq!(gen_paths(n, k).unwrap().len(), c, "(n, k) = ({n}, {k})");
            }
        }
        assert_eq!(
            gen_paths(15, 3),
            Err(LatticeError::BoundExceeded { n: 15, max: 14 })
        );
        assert_eq!(
            gen_paths(2, 3),
            Err(LatticeError::InvalidShape { n: 2, k: 3 })
        );
    }

    #[test]
    fn word_encoding_roundtrips() {
        for n in 0..=6 {
            for k in 0..=n {
                for p in gen_paths(n, k).unwrap() {
                    let w = path_to_word(&p);
                    assert_eq!(word_to_path(&w).unwrap(), p);
                }
            }
        }
        assert_eq!(path_to_word(&path("EENEN")).to_string(), "00101");
        let w: BinWord = "101".parse().unwrap();
        assert_eq!(
            word_to_path(&w),
            Err(LatticeError::PrefixViolation { position: 0 })
        );
        assert!("102".parse::<BinWord>().is_err());
    }

    #[test]
    fn word_inversion_pair_counts() {
        // word_inv is a literal pair count and is defined on any word,
        // valid path encoding or not; agreement with area is checked
        // exhaustively in the verification suite.
        assert_eq!(word_inv(&"0".parse().unwrap()), 0);
        assert_eq!(word_inv(&"10".parse().unwrap()), 1);
        assert_eq!(word_inv(&"1100".parse().unwrap()), 4);
        assert_eq!(word_inv(&"00101".parse().unwrap()), 1);
    }

    #[test]
    fn completion_preserves_area_and_is_injective() {
        for n in 0..=6 {
            let mut images = std::collections::BTreeSet::new();
            for k in 0..=n {
                for p in gen_paths(n, k).unwrap() {
                    let full = complete_path(&p);
                    assert!(full.is_full());
                    assert_eq!(full.n(), n);
                    assert_eq!(area(&full), area(&p));
                    assert!(
                        images.insert((p.k(), full.clone())),
                        "completion collided on {p}"
                    );
                }
            }
            // Within one k, completion is injective outright.
            for k in 0..=n {
                let set: std::collections::BTreeSet<_> =
                    gen_paths(n, k).unwrap().iter().map(complete_path).collect();
                assert_eq!(set.len(), gen_paths(n, k).unwrap().len());
            }
        }
    }

    #[test]
    fn first_return_decomposition_worked_cases() {
        // EEENNN: everything hangs off the left spine.
        let chain3 = path_to_tree(&path("EEENNN")).unwrap();
        assert_eq!(chain3.to_string(), "(((..).).)");
        assert_eq!(tree_stat(&chain3), 3);
        // ENENEN: right chain, statistic zero.
        let right3 = path_to_tree(&path("ENENEN")).unwrap();
        assert_eq!(right3.to_string(), "(.(.(..)))");
        assert_eq!(tree_stat(&right3), 0);
        assert_eq!(tree_stat(&path_to_tree(&path("EENENN")).unwrap()), 2);
        assert_eq!(tree_stat(&path_to_tree(&path("EENNEN")).unwrap()), 1);
        assert_eq!(path_to_tree(&LatticePath::empty()).unwrap(), BinTree::Leaf);
        assert_eq!(
            path_to_tree(&path("EEN")),
            Err(LatticeError::NotFull { n: 2, k: 1 })
        );
    }

    #[test]
    fn tree_statistic_complements_area() {
        for n in 0..=8 {
            for p in gen_paths(n, n).unwrap() {
                let t = path_to_tree(&p).unwrap();
                assert_eq!(t.size(), n);
                assert_eq!(tree_stat(&t) + area(&p), choose2(n), "path {p}");
            }
        }
    }

    #[test]
    fn decomposition_is_injective() {
        for n in 0..=7 {
            let paths = gen_paths(n, n).unwrap();
            let trees: std::collections::BTreeSet<String> = paths
                .iter()
                .map(|p| path_to_tree(p).unwrap().to_string())
                .collect();
            assert_eq!(trees.len(), paths.len());
        }
    }

    #[test]
    fn triangulations_have_n_minus_1_sorted_diagonals() {
        // Left chain on 3 nodes fans out of vertex 0.
        let chain3 = path_to_tree(&path("EEENNN")).unwrap();
        assert_eq!(
            tree_to_triangulation(&chain3, 3).unwrap(),
            vec![(0, 2), (0, 3)]
        );
        let right3 = path_to_tree(&path("ENENEN")).unwrap();
        assert_eq!(
            tree_to_triangulation(&right3, 3).unwrap(),
            vec![(1, 4), (2, 4)]
        );
        assert_eq!(
            tree_to_triangulation(&BinTree::Leaf, 1),
            Err(LatticeError::SizeMismatch {
                expected: 1,
                got: 0
            })
        );
        assert_eq!(tree_to_triangulation(&BinTree::Leaf, 0).unwrap(), vec![]);
        for n in 1..=7 {
            let mut seen = std::collections::BTreeSet::new();
            for p in gen_paths(n, n).unwrap() {
                let t = path_to_tree(&p).unwrap();
                let d = tree_to_triangulation(&t, n).unwrap();
                assert_eq!(d.len(), n - 1, "tree {t}");
                assert!(d.windows(2).all(|w| w[0] < w[1]), "unsorted output");
                for &(a, b) in &d {
                    assert!(b > a + 1 && b <= n + 1, "({a}, {b}) is not a diagonal");
                    assert!(!(a == 0 && b == n + 1), "base edge listed as diagonal");
                }
                assert!(seen.insert(d), "triangulation collision for {t}");
            }
        }
    }
}
