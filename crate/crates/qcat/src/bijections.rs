//! Statistic-preserving bijections between the combinatorial families
//! refined by the q-Catalan triangle: 312-avoiders carrying inversions,
//! lattice paths carrying area, and the derived word and tree encodings.

use thiserror::Error;

pub use crate::perm::phi_insert;

use crate::choose2;
use crate::lattice::{
    area, tree_stat, word_inv, word_to_path, BinTree, BinWord, LatticeError, LatticePath, Step,
};
use crate::perm::{cell_index, coinv, contains_pattern, inv, PatternTag, Perm, PermError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BijectionError {
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error("permutation lies in cell {cell}, outside the prefix union up to {k}")]
    NotInCell { cell: usize, k: usize },
    #[error("path ends at ({got_n}, {got_k}), expected ({n}, {k})")]
    EndpointMismatch {
        n: usize,
        k: usize,
        got_n: usize,
        got_k: usize,
    },
    #[error("object has size {got}, expected {expected}")]
    SizeMismatch { expected: usize, got: usize },
}

/// The path bijection S'_{n,k}(312) -> D'_{n,k}.
///
/// Peels the argument apart by recursion: a permutation in a cell strictly
/// below k maps through the (n, k-1) instance followed by an N step; one in
/// cell exactly k is the insertion of n into its truncation, which maps
/// through the (n-1, k) instance followed by an E step. At k = 0 the unique
/// 312-avoider in cell 0 is the decreasing permutation, sent to E^n.
///
/// Transports statistics: area(psi(pi)) = coinv(pi).
pub fn psi(pi: &Perm, n: usize, k: usize) -> Result<LatticePath, BijectionError> {
    if pi.len() != n {
        return Err(PermError::LengthMismatch {
            expected: n,
            got: pi.len(),
        }
        .into());
    }
    if k > n {
        return Err(PermError::InvalidCell { n, k }.into());
    }
    let cell = cell_index(pi, PatternTag::P312)?;
    if cell > k {
        return Err(BijectionError::NotInCell { cell, k });
    }
    let mut steps = Vec::with_capacity(n + k);
    build_path(pi.clone(), n, k, &mut steps);
    Ok(LatticePath::new(steps).expect("construction keeps the prefix condition"))
}

fn build_path(pi: Perm, n: usize, k: usize, steps: &mut Vec<Step>) {
    if n == 0 {
        return;
    }
    if k == 0 {
        // Cell 0 under 312-avoidance forces the decreasing permutation.
        steps.extend(std::iter::repeat(Step::E).take(n));
        return;
    }
    let cell = cell_index(&pi, PatternTag::P312).expect("avoider by invariant");
    if cell < k {
        build_path(pi, n, k - 1, steps);
        steps.push(Step::N);
    } else {
        build_path(pi.delete_max(), n - 1, k, steps);
        steps.push(Step::E);
    }
}

/// Inverse of [`psi`]: reads the path back to front, undoing an N step by
/// lowering k and an E step by removing the insertion of the maximum.
pub fn psi_inverse(path: &LatticePath, n: usize, k: usize) -> Result<Perm, BijectionError> {
    if path.n() != n || path.k() != k {
        return Err(BijectionError::EndpointMismatch {
            n,
            k,
            got_n: path.n(),
            got_k: path.k(),
        });
    }
    rebuild(path.steps(), n, k)
}

fn rebuild(steps: &[Step], n: usize, k: usize) -> Result<Perm, BijectionError> {
    match steps.split_last() {
        None => Ok(Perm::empty()),
        Some((Step::N, prefix)) => rebuild(prefix, n, k - 1),
        Some((Step::E, prefix)) => {
            let hat = rebuild(prefix, n - 1, k)?;
            Ok(phi_insert(&hat, n, k)?)
        }
    }
}

/// Member of one of the families counted by the prefix-union cells, tagged
/// by its family so the right statistic can be read off.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum UniversalMember {
    /// 312-avoider carrying inv.
    Perm312(Perm),
    /// 231-avoider carrying inv.
    Perm231(Perm),
    /// 213-avoider carrying coinv.
    Perm213(Perm),
    /// 132-avoider carrying coinv.
    Perm132(Perm),
    /// Path to (n, k) carrying the area complement.
    Path(LatticePath),
    /// Binary word carrying the inversion complement.
    Word(BinWord),
    /// Binary tree carrying the left-subtree-size sum.
    Tree(BinTree),
}

/// The one statistic all families share: its generating function over the
/// (n, k) family is the q-Catalan triangle cell.
///
/// Reads inv on 312/231-avoiders, coinv on 213/132-avoiders,
/// choose2(n) - area on paths, choose2(n) - inv on words, and the sum of
/// left subtree sizes on trees. Validates that the member belongs to the
/// (n, k) family it is tagged with.
pub fn universal_sigma(x: &UniversalMember, n: usize, k: usize) -> Result<usize, BijectionError> {
    match x {
        UniversalMember::Perm312(p) => perm_sigma(p, n, k, PatternTag::P312).map(|_| inv(p)),
        UniversalMember::Perm231(p) => perm_sigma(p, n, k, PatternTag::P231).map(|_| inv(p)),
        UniversalMember::Perm213(p) => perm_sigma(p, n, k, PatternTag::P213).map(|_| coinv(p)),
        UniversalMember::Perm132(p) => perm_sigma(p, n, k, PatternTag::P132).map(|_| coinv(p)),
        UniversalMember::Path(path) => {
            if path.n() != n || path.k() != k {
                return Err(BijectionError::EndpointMismatch {
                    n,
                    k,
                    got_n: path.n(),
                    got_k: path.k(),
                });
            }
            Ok(choose2(n) - area(path))
        }
        UniversalMember::Word(w) => {
            let path = word_to_path(w)?;
            if path.n() != n || path.k() != k {
                return Err(BijectionError::EndpointMismatch {
                    n,
                    k,
                    got_n: path.n(),
                    got_k: path.k(),
                });
            }
            Ok(choose2(n) - word_inv(w))
        }
        UniversalMember::Tree(t) => {
            let got = t.size();
            if got != n {
                return Err(BijectionError::SizeMismatch { expected: n, got });
            }
            Ok(tree_stat(t))
        }
    }
}

fn perm_sigma(p: &Perm, n: usize, k: usize, tau: PatternTag) -> Result<(), BijectionError> {
    if p.len() != n {
        return Err(PermError::LengthMismatch {
            expected: n,
            got: p.len(),
        }
        .into());
    }
    if contains_pattern(p, tau) {
        return Err(PermError::ContainsPattern {
            perm: p.to_string(),
            pattern: tau,
        }
        .into());
    }
    let cell = cell_index(p, tau)?;
    if cell > k {
        return Err(BijectionError::NotInCell { cell, k });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{complete_path, gen_paths, path_to_tree};
    use crate::perm::s_prime;
    use std::collections::BTreeSet;

    fn p(s: &str) -> Perm {
        s.parse().unwrap()
    }

    fn path(s: &str) -> LatticePath {
        s.parse().unwrap()
    }

    #[test]
    fn worked_images_at_n_3_k_2() {
        let expect = [
            ("123", "ENENE"),
            ("132", "ENEEN"),
            ("213", "EENNE"),
            ("231", "EENEN"),
            ("321", "EEENN"),
        ];
        for (perm, image) in expect {
            assert_eq!(psi(&p(perm), 3, 2).unwrap(), path(image), "pi = {perm}");
            assert_eq!(
                psi_inverse(&path(image), 3, 2).unwrap(),
                p(perm),
                "gamma = {image}"
            );
        }
    }

    #[test]
    fn psi_rejects_members_outside_the_cell_union() {
        assert_eq!(
            psi(&p("123"), 3, 1),
            Err(BijectionError::NotInCell { cell: 2, k: 1 })
        );
        assert!(matches!(
            psi(&p("312"), 3, 2),
            Err(BijectionError::Perm(PermError::ContainsPattern { .. }))
        ));
        assert!(matches!(
            psi(&p("21"), 3, 1),
            Err(BijectionError::Perm(PermError::LengthMismatch { .. }))
        ));
        assert_eq!(
            psi_inverse(&path("EEN"), 2, 0),
            Err(BijectionError::EndpointMismatch {
                n: 2,
                k: 0,
                got_n: 2,
                got_k: 1
            })
        );
    }

    #[test]
    fn psi_is_a_statistic_transporting_bijection() {
        for n in 0..=7 {
            for k in 0..=n {
                let dom = s_prime(n, k, PatternTag::P312).unwrap();
                let codom: BTreeSet<LatticePath> = gen_paths(n, k).unwrap().into_iter().collect();
                let mut images = BTreeSet::new();
                for pi in &dom {
                    let gamma = psi(pi, n, k).unwrap();
                    assert!(codom.contains(&gamma), "image {gamma} outside D'_{n},{k}");
                    assert_eq!(
                        area(&gamma),
                        coinv(pi),
                        "statistic mismatch at pi = {pi}, n = {n}, k = {k}"
                    );
                    assert_eq!(psi_inverse(&gamma, n, k).unwrap(), *pi, "roundtrip failed");
                    images.insert(gamma);
                }
                assert_eq!(images.len(), dom.len(), "psi not injective at ({n}, {k})");
                assert_eq!(
                    images.len(),
                    codom.len(),
                    "psi not surjective at ({n}, {k})"
                );
            }
        }
    }

    #[test]
    fn trailing_run_of_images_in_the_exact_cell() {
        // Members of the exact cell k (not below) map to paths whose
        // trailing N-run has length exactly k - cell-recursion depth; the
        // measured rule on full enumerations: the image of a cell-j member
        // ends with exactly k - j N steps.
        for n in 1..=6 {
            for k in 0..=n {
                for pi in s_prime(n, k, PatternTag::P312).unwrap() {
                    let j = cell_index(&pi, PatternTag::P312).unwrap();
                    let gamma = psi(&pi, n, k).unwrap();
                    let run = gamma
                        .steps()
                        .iter()
                        .rev()
                        .take_while(|s| **s == Step::N)
                        .count();
                    assert_eq!(run, k - j, "pi = {pi}, n = {n}, k = {k}");
                }
            }
        }
    }

    #[test]
    fn universal_statistic_agrees_across_families() {
        // At each (n, k), the multiset of sigma values is the same for all
        // seven tagged families.
        for n in 0..=5 {
            for k in 0..=n {
                let from_312: Vec<usize> = s_prime(n, k, PatternTag::P312)
                    .unwrap()
                    .iter()
                    .map(|q| universal_sigma(&UniversalMember::Perm312(q.clone()), n, k).unwrap())
                    .collect();
                let mut sorted_312 = from_312.clone();
                sorted_312.sort_unstable();

                let collect_sorted = |xs: Vec<usize>| {
                    let mut v = xs;
                    v.sort_unstable();
                    v
                };

                for tau in [PatternTag::P231, PatternTag::P213, PatternTag::P132] {
                    let vals: Vec<usize> = s_prime(n, k, tau)
                        .unwrap()
                        .iter()
                        .map(|q| {
                            let m = match tau {
                                PatternTag::P231 => UniversalMember::Perm231(q.clone()),
                                PatternTag::P213 => UniversalMember::Perm213(q.clone()),
                                _ => UniversalMember::Perm132(q.clone()),
                            };
                            universal_sigma(&m, n, k).unwrap()
                        })
                        .collect();
                    assert_eq!(collect_sorted(vals), sorted_312, "tau = {tau}, ({n}, {k})");
                }

                let paths = gen_paths(n, k).unwrap();
                let path_vals: Vec<usize> = paths
                    .iter()
                    .map(|g| universal_sigma(&UniversalMember::Path(g.clone()), n, k).unwrap())
                    .collect();
                assert_eq!(collect_sorted(path_vals), sorted_312, "paths at ({n}, {k})");

                let word_vals: Vec<usize> = paths
                    .iter()
                    .map(|g| {
                        universal_sigma(
                            &UniversalMember::Word(crate::lattice::path_to_word(g)),
                            n,
                            k,
                        )
                        .unwrap()
                    })
                    .collect();
                assert_eq!(collect_sorted(word_vals), sorted_312, "words at ({n}, {k})");

                let tree_vals: Vec<usize> = paths
                    .iter()
                    .map(|g| {
                        let t = path_to_tree(&complete_path(g)).unwrap();
                        universal_sigma(&UniversalMember::Tree(t), n, n).unwrap()
                    })
                    .collect();
                assert_eq!(collect_sorted(tree_vals), sorted_312, "trees at ({n}, {k})");
            }
        }
    }

    #[test]
    fn universal_statistic_validates_membership() {
        assert!(matches!(
            universal_sigma(&UniversalMember::Perm312(p("312")), 3, 3),
            Err(BijectionError::Perm(PermError::ContainsPattern { .. }))
        ));
        assert_eq!(
            universal_sigma(&UniversalMember::Perm312(p("123")), 3, 1),
            Err(BijectionError::NotInCell { cell: 2, k: 1 })
        );
        assert_eq!(
            universal_sigma(&UniversalMember::Path(path("EEN")), 2, 0),
            Err(BijectionError::EndpointMismatch {
                n: 2,
                k: 0,
                got_n: 2,
                got_k: 1
            })
        );
        assert_eq!(
            universal_sigma(&UniversalMember::Tree(BinTree::Leaf), 1, 1),
            Err(BijectionError::SizeMismatch {
                expected: 1,
                got: 0
            })
        );
        // A word that is no path encoding is rejected outright.
        assert!(universal_sigma(&UniversalMember::Word("10".parse().unwrap()), 1, 1).is_err());
    }

    #[test]
    fn insertion_is_reexported() {
        assert_eq!(phi_insert(&p("21"), 3, 1).unwrap(), p("231"));
    }
}
