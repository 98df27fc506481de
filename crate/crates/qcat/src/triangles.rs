//! Recurrence engines for the Catalan triangle and its refinements.
//!
//! Every table is built row by row from the defining recurrence
//! `C_{n,k} = C_{n,k-1} + w * C_{n-1,k}` with a kind-specific weight `w`
//! and column-0 base case. At k = n the cell above does not exist and the
//! recurrence degenerates to `C_{n,n} = C_{n,n-1}`; the weight is never
//! formed in that case.

use num_bigint::BigInt;
use num_traits::One;

use crate::choose2;
use crate::poly::{CycInt, MultiPoly, PolyError, UniPoly};

/// Which table a [`TriangleTable`] holds.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TriangleKind {
    Classical,
    Q,
    Mirror,
    QP,
    Multi { mu: u32 },
    Cyclotomic { mu: u32 },
}

impl TriangleKind {
    pub fn name(&self) -> &'static str {
        match self {
            TriangleKind::Classical => "classical",
            TriangleKind::Q => "q",
            TriangleKind::Mirror => "mirror",
            TriangleKind::QP => "qp",
            TriangleKind::Multi { .. } => "multi",
            TriangleKind::Cyclotomic { .. } => "cyclotomic",
        }
    }
}

/// Triangular table with rows 0..=n_max; row n has cells k = 0..=n.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriangleTable<T> {
    kind: TriangleKind,
    rows: Vec<Vec<T>>,
}

impl<T> TriangleTable<T> {
    fn new(kind: TriangleKind, rows: Vec<Vec<T>>) -> Self {
        debug_assert!(rows.iter().enumerate().all(|(n, row)| row.len() == n + 1));
        TriangleTable { kind, rows }
    }

    pub fn kind(&self) -> TriangleKind {
        self.kind
    }

    pub fn n_max(&self) -> usize {
        self.rows.len() - 1
    }

    /// `None` when k > n or n is out of range; those cells are zero by
    /// convention and are never stored.
    pub fn get(&self, n: usize, k: usize) -> Option<&T> {
        self.rows.get(n).and_then(|row| row.get(k))
    }

    pub fn rows(&self) -> &[Vec<T>] {
        &self.rows
    }

    pub fn map<U>(&self, f: impl Fn(&T) -> U) -> TriangleTable<U> {
        TriangleTable {
            kind: self.kind,
            rows: self
                .rows
                .iter()
                .map(|row| row.iter().map(&f).collect())
                .collect(),
        }
    }
}

/// Builds a table from a column-0 base and the weighted recurrence.
fn build_table<T: Clone>(
    kind: TriangleKind,
    n_max: usize,
    base: impl Fn(usize) -> T,
    add: impl Fn(&T, &T) -> T,
    weighted_up: impl Fn(usize, usize, &T) -> T,
) -> TriangleTable<T> {
    let mut rows: Vec<Vec<T>> = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let mut row = Vec::with_capacity(n + 1);
        row.push(base(n));
        for k in 1..=n {
            let left = &row[k - 1];
            let cell = if k < n {
                add(left, &weighted_up(n, k, &rows[n - 1][k]))
            } else {
                left.clone()
            };
            row.push(cell);
        }
        rows.push(row);
    }
    TriangleTable::new(kind, rows)
}

/// Catalan triangle of integers: C_{n,k} = C_{n,k-1} + C_{n-1,k}.
pub fn classical_triangle(n_max: usize) -> TriangleTable<BigInt> {
    build_table(
        TriangleKind::Classical,
        n_max,
        |_| BigInt::one(),
        |a, b| a + b,
        |_, _, up| up.clone(),
    )
}

/// q-analogue: C_{n,k}(q) = C_{n,k-1}(q) + q^(n-k-1) C_{n-1,k}(q) with
/// C_{n,0} = q^choose2(n).
pub fn q_triangle(n_max: usize) -> TriangleTable<UniPoly> {
    build_table(
        TriangleKind::Q,
        n_max,
        |n| UniPoly::monomial(choose2(n)),
        |a, b| a + b,
        |n, k, up| up.shift_mul(n - k - 1),
    )
}

/// Mirror table: reversed coefficients of the q-analogue, built directly
/// from its own recurrence with weight q^k and base 1.
pub fn mirror_triangle(n_max: usize) -> TriangleTable<UniPoly> {
    build_table(
        TriangleKind::Mirror,
        n_max,
        |_| UniPoly::one(),
        |a, b| a + b,
        |_, k, up| up.shift_mul(k),
    )
}

/// Two-variable refinement with weight q^(n-k-1) p^k and base q^choose2(n).
pub fn qp_triangle(n_max: usize) -> TriangleTable<MultiPoly> {
    build_table(
        TriangleKind::QP,
        n_max,
        |n| MultiPoly::monomial(2, vec![choose2(n) as u32, 0]),
        |a, b| a.add(b),
        |n, k, up| up.mul_monomial(&[(n - k - 1) as u32, k as u32]),
    )
}

/// Residue-class exponent of the multivariate base monomial: the number of
/// pairs 1 <= a < b <= n whose smaller member a lies in class i, i.e. the
/// sum of n - a over those a.
pub fn e_exponent(i: u32, n: usize, mu: u32) -> usize {
    assert!(
        mu >= 1 && (1..=mu).contains(&i),
        "residue class out of range"
    );
    (1..=n)
        .filter(|a| (*a as u32 - 1) % mu + 1 == i)
        .map(|a| n - a)
        .sum()
}

/// Multivariate refinement in mu variables: weight q_{r(n)}^(n-k-1) with
/// r(n) = ((n-1) mod mu) + 1, the residue class of the row's new maximal
/// value n, and base prod_i q_i^(e_i(n)).
pub fn multi_triangle(n_max: usize, mu: u32) -> TriangleTable<MultiPoly> {
    assert!(mu >= 1, "need at least one residue class");
    let m = mu as usize;
    build_table(
        TriangleKind::Multi { mu },
        n_max,
        |n| {
            let exps = (1..=mu).map(|i| e_exponent(i, n, mu) as u32).collect();
            MultiPoly::monomial(m, exps)
        },
        |a, b| a.add(b),
        |n, k, up| {
            let r = (n as u32 - 1) % mu;
            let mut shift = vec![0u32; m];
            shift[r as usize] = (n - k - 1) as u32;
            up.mul_monomial(&shift)
        },
    )
}

/// The multivariate table with every variable evaluated at a primitive
/// mu-th root of unity.
pub fn cyclotomic_triangle(n_max: usize, mu: u32) -> Result<TriangleTable<CycInt>, PolyError> {
    let multi = multi_triangle(n_max, mu);
    let mut rows = Vec::with_capacity(n_max + 1);
    for row in multi.rows() {
        rows.push(
            row.iter()
                .map(|p| p.eval_at_root(mu))
                .collect::<Result<Vec<_>, _>>()?,
        );
    }
    Ok(TriangleTable::new(TriangleKind::Cyclotomic { mu }, rows))
}

/// q-Catalan numbers by the convolution recurrence
/// C_n(q) = sum_{k=0}^{n-1} q^k C_k(q) C_{n-1-k}(q), C_0 = 1.
///
/// Independent of the triangle recurrence; the diagonal of [`q_triangle`]
/// must reproduce it.
pub fn carlitz_qcatalan(n_max: usize) -> Vec<UniPoly> {
    let mut c = vec![UniPoly::one()];
    for n in 1..=n_max {
        let mut sum = UniPoly::zero();
        for k in 0..n {
            sum = &sum + &(&c[k] * &c[n - 1 - k]).shift_mul(k);
        }
        c.push(sum);
    }
    c
}

/// Two-variable Catalan sequence from the convolution recurrence
/// C_n(q,p) = C_{n-1}(q,p) + sum_{k=0}^{n-2} q p^k C_k(q,p) C_{n-1-k}(q,p)
/// with C_0 = C_1 = 1.
///
/// This family is distinct from the diagonal of [`qp_triangle`]; at
/// q = p = 1 both collapse to the Catalan numbers.
pub fn randrianarivony_qpcatalan(n_max: usize) -> Vec<MultiPoly> {
    let mut c = vec![MultiPoly::one(2)];
    if n_max == 0 {
        return c;
    }
    c.push(MultiPoly::one(2));
    for n in 2..=n_max {
        let mut sum = c[n - 1].clone();
        for k in 0..=n - 2 {
            let prod = c[k].mul(&c[n - 1 - k]);
            sum = sum.add(&prod.mul_monomial(&[1, k as u32]));
        }
        c.push(sum);
    }
    c
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::euler_phi;

    fn upoly(coeffs: &[i64]) -> UniPoly {
        UniPoly::from_i64_coeffs(coeffs)
    }

    #[test]
    fn classical_rows_up_to_six() {
        let t = classical_triangle(6);
        let got: Vec<Vec<i64>> = t
            .rows()
            .iter()
            .map(|row| row.iter().map(|c| i64::try_from(c).unwrap()).collect())
            .collect();
        assert_eq!(
            got,
            vec![
                vec![1],
                vec![1, 1],
                vec![1, 2, 2],
                vec![1, 3, 5, 5],
                vec![1, 4, 9, 14, 14],
                vec![1, 5, 14, 28, 42, 42],
                vec![1, 6, 20, 48, 90, 132, 132],
            ]
        );
        assert_eq!(t.get(2, 3), None);
        assert_eq!(t.get(7, 0), None);
        assert_eq!(t.n_max(), 6);
    }

    #[test]
    fn q_rows_up_to_four() {
        let t = q_triangle(4);
        assert_eq!(t.get(0, 0).unwrap(), &UniPoly::one());
        assert_eq!(t.get(2, 0).unwrap(), &upoly(&[0, 1]));
        assert_eq!(t.get(2, 1).unwrap(), &upoly(&[1, 1]));
        assert_eq!(t.get(2, 2).unwrap(), &upoly(&[1, 1]));
        assert_eq!(t.get(3, 0).unwrap(), &upoly(&[0, 0, 0, 1]));
        assert_eq!(t.get(3, 1).unwrap(), &upoly(&[0, 1, 1, 1]));
        assert_eq!(t.get(3, 2).unwrap(), &upoly(&[1, 2, 1, 1]));
        assert_eq!(t.get(3, 3).unwrap(), &upoly(&[1, 2, 1, 1]));
        assert_eq!(t.get(4, 0).unwrap(), &UniPoly::monomial(6));
        assert_eq!(t.get(4, 1).unwrap(), &upoly(&[0, 0, 0, 1, 1, 1, 1]));
        assert_eq!(t.get(4, 2).unwrap(), &upoly(&[0, 1, 2, 2, 2, 1, 1]));
        assert_eq!(t.get(4, 3).unwrap(), &upoly(&[1, 3, 3, 3, 2, 1, 1]));
        assert_eq!(t.get(4, 4).unwrap(), t.get(4, 3).unwrap());
    }

    #[test]
    fn q_specializes_to_classical() {
        let q = q_triangle(8);
        let c = classical_triangle(8);
        for n in 0..=8 {
            for k in 0..=n {
                assert_eq!(
                    &q.get(n, k).unwrap().coeff_sum(),
                    c.get(n, k).unwrap(),
                    "(n, k) = ({n}, {k})"
                );
            }
        }
    }

    #[test]
    fn mirror_is_reversal_of_q() {
        let q = q_triangle(12);
        let m = mirror_triangle(12);
        for n in 0..=12 {
            for k in 0..=n {
                assert_eq!(
                    m.get(n, k).unwrap(),
                    &q.get(n, k).unwrap().reverse(choose2(n)).unwrap(),
                    "(n, k) = ({n}, {k})"
                );
            }
        }
        assert_eq!(m.get(3, 2).unwrap(), &upoly(&[1, 1, 2, 1]));
    }

    #[test]
    fn qp_cells_match_hand_expansion() {
        let t = qp_triangle(3);
        let cell = |n: usize, k: usize| t.get(n, k).unwrap().to_string();
        assert_eq!(cell(2, 1), "p+q");
        assert_eq!(cell(2, 2), "p+q");
        assert_eq!(cell(3, 1), "q*p^2+q^2*p+q^3");
        assert_eq!(cell(3, 2), "p^3+2*q*p^2+q^2*p+q^3");
        assert_eq!(cell(3, 3), cell(3, 2));
        // Every cell is homogeneous of degree choose2(n).
        let t = qp_triangle(7);
        for n in 0..=7 {
            for k in 0..=n {
                assert_eq!(
                    t.get(n, k).unwrap().homogeneous_degree(),
                    Some(choose2(n) as u32),
                    "(n, k) = ({n}, {k})"
                );
            }
        }
    }

    #[test]
    fn qp_projects_onto_q_and_mirror() {
        let t = qp_triangle(9);
        let q = q_triangle(9);
        let m = mirror_triangle(9);
        for n in 0..=9 {
            for k in 0..=n {
                let cell = t.get(n, k).unwrap();
                // p := 1 recovers the q-analogue; q := 1 recovers the mirror
                // with p in the role of its variable.
                assert_eq!(&cell.project_var(0), q.get(n, k).unwrap());
                assert_eq!(&cell.project_var(1), m.get(n, k).unwrap());
            }
        }
    }

    #[test]
    fn base_exponents_by_residue_class() {
        // n = 3, mu = 2: pairs (a < b) with smaller member in class i.
        assert_eq!(e_exponent(1, 3, 2), 2);
        assert_eq!(e_exponent(2, 3, 2), 1);
        assert_eq!(e_exponent(1, 4, 2), 4);
        assert_eq!(e_exponent(2, 4, 2), 2);
        // mu = 1 collapses to choose2.
        for n in 0..=9 {
            assert_eq!(e_exponent(1, n, 1), choose2(n));
        }
        // The classes partition all pairs.
        for mu in 1..=5u32 {
            for n in 0..=9 {
                let total: usize = (1..=mu).map(|i| e_exponent(i, n, mu)).sum();
                assert_eq!(total, choose2(n));
            }
        }
    }

    #[test]
    fn multi_with_one_class_is_the_q_triangle() {
        let multi = multi_triangle(9, 1);
        let q = q_triangle(9);
        for n in 0..=9 {
            for k in 0..=n {
                assert_eq!(
                    &multi.get(n, k).unwrap().identify_vars(),
                    q.get(n, k).unwrap(),
                    "(n, k) = ({n}, {k})"
                );
            }
        }
    }

    #[test]
    fn multi_identified_collapses_to_q() {
        // Identifying all variables removes the residue bookkeeping, so any
        // mu gives back the q-analogue.
        let q = q_triangle(8);
        for mu in [2, 3, 5] {
            let multi = multi_triangle(8, mu);
            for n in 0..=8 {
                for k in 0..=n {
                    assert_eq!(
                        &multi.get(n, k).unwrap().identify_vars(),
                        q.get(n, k).unwrap(),
                        "mu = {mu}, (n, k) = ({n}, {k})"
                    );
                }
            }
        }
    }

    #[test]
    fn multi_base_cells_use_e_exponents() {
        // Two class counts render as q, p; three and more as q1, q2, ...
        let t = multi_triangle(4, 2);
        assert_eq!(t.get(2, 0).unwrap().to_string(), "q");
        assert_eq!(t.get(3, 0).unwrap().to_string(), "q^2*p");
        assert_eq!(t.get(4, 0).unwrap().to_string(), "q^4*p^2");
        let t = multi_triangle(3, 3);
        assert_eq!(t.get(3, 0).unwrap().to_string(), "q1^2*q2");
    }

    #[test]
    fn cyclotomic_at_mu_2_is_sign_alternating_evaluation() {
        let t = cyclotomic_triangle(5, 2).unwrap();
        let q = q_triangle(5);
        for n in 0..=5 {
            for k in 0..=n {
                let expect = q.get(n, k).unwrap().eval_int(&BigInt::from(-1));
                assert_eq!(
                    t.get(n, k).unwrap().as_int(),
                    Some(expect),
                    "(n, k) = ({n}, {k})"
                );
            }
        }
        assert_eq!(t.get(2, 0).unwrap().as_int(), Some(BigInt::from(-1)));
        assert_eq!(t.get(3, 3).unwrap().as_int(), Some(BigInt::from(-1)));
        assert_eq!(t.get(5, 5).unwrap().as_int(), Some(BigInt::from(2)));
    }

    #[test]
    fn cyclotomic_representatives_have_totient_length() {
        for mu in [1u32, 3, 4, 6] {
            let t = cyclotomic_triangle(4, mu).unwrap();
            for row in t.rows() {
                for cell in row {
                    assert_eq!(cell.rep().len() as u32, euler_phi(mu));
                }
            }
        }
        assert!(cyclotomic_triangle(2, 31).is_err());
    }

    #[test]
    fn convolution_matches_triangle_diagonal() {
        let c = carlitz_qcatalan(10);
        let q = q_triangle(10);
        for n in 0..=10 {
            assert_eq!(&c[n], q.get(n, n).unwrap(), "n = {n}");
        }
        assert_eq!(c[3], upoly(&[1, 2, 1, 1]));
        assert_eq!(c[4], upoly(&[1, 3, 3, 3, 2, 1, 1]));
    }

    #[test]
    fn qp_convolution_sequence() {
        let c = randrianarivony_qpcatalan(6);
        assert_eq!(c[0].to_string(), "1");
        assert_eq!(c[1].to_string(), "1");
        assert_eq!(c[2].to_string(), "1+q");
        assert_eq!(c[3].to_string(), "1+2*q+q*p+q^2");
        // At q = p = 1 the sequence is Catalan.
        let catalan = [1, 1, 2, 5, 14, 42, 132];
        for (n, expect) in catalan.iter().enumerate() {
            assert_eq!(c[n].eval_all_one(), BigInt::from(*expect), "n = {n}");
        }
    }
}
