//! Exact computation and verification toolkit for the q-Catalan triangle
//! `C_{n,k}(q)` and its relatives: the mirror triangle, the two-variable
//! (q,p) triangle, multivariate and cyclotomic refinements, the statistics
//! on pattern-avoiding permutations, lattice paths, binary words and binary
//! trees that realize them, and the bijections tying those families together.
//!
//! Everything is computed over exact integers ([`num_bigint::BigInt`]); no
//! floating point is used anywhere.
//!
//! ```
//! use qcat::triangles::q_triangle;
//!
//! let t = q_triangle(3);
//! assert_eq!(t.get(3, 2).unwrap().to_string(), "1+2q+q^2+q^3");
//! ```

pub mod bijections;
pub mod lattice;
pub mod perm;
pub mod poly;
pub mod triangles;
pub mod verify;

/// `n` choose 2, the top degree of every statistic on objects of size `n`.
pub fn choose2(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}
