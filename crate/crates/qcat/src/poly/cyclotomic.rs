use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::unipoly::UniPoly;
use super::PolyError;

const MU_MAX: u32 = 30;

fn check_mu(mu: u32) -> Result<(), PolyError> {
    if (1..=MU_MAX).contains(&mu) {
        Ok(())
    } else {
        Err(PolyError::UnsupportedMu { mu })
    }
}

/// Euler's totient, the degree of the mu-th cyclotomic polynomial.
pub fn euler_phi(mu: u32) -> u32 {
    (1..=mu).filter(|j| j.gcd(&mu) == 1).count() as u32
}

/// Quotient of `a` by a monic divisor, asserting exact divisibility.
fn div_exact_by_monic(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    debug_assert!(b.last().is_some_and(One::is_one));
    let mut rem = a.to_vec();
    let db = b.len() - 1;
    let mut quot = vec![BigInt::zero(); rem.len() - db];
    while rem.len() > db {
        let lead = rem.pop().unwrap();
        let shift = rem.len() - db;
        if lead.is_zero() {
            continue;
        }
        for i in 0..db {
            rem[shift + i] -= &lead * &b[i];
        }
        quot[shift] = lead;
    }
    assert!(rem.iter().all(Zero::is_zero), "division was not exact");
    quot
}

/// The mu-th cyclotomic polynomial, via x^mu - 1 divided by the cyclotomic
/// polynomials of the proper divisors of mu.
pub fn cyclotomic_polynomial(mu: u32) -> Result<UniPoly, PolyError> {
    check_mu(mu)?;
    let mut table: Vec<Vec<BigInt>> = Vec::with_capacity(mu as usize);
    for m in 1..=mu {
        // x^m - 1.
        let mut num = vec![BigInt::zero(); m as usize + 1];
        num[0] = BigInt::from(-1);
        num[m as usize] = BigInt::one();
        for d in 1..m {
            if m % d == 0 {
                num = div_exact_by_monic(&num, &table[d as usize - 1]);
            }
        }
        table.push(num);
    }
    Ok(UniPoly::from_coeffs(table.pop().unwrap()))
}

/// Reduces `a` modulo a monic modulus, returning exactly `deg modulus`
/// coefficients (zero-padded).
fn rem_by_monic(mut a: Vec<BigInt>, modulus: &[BigInt]) -> Vec<BigInt> {
    let d = modulus.len() - 1;
    while a.len() > d {
        let lead = a.pop().unwrap();
        if lead.is_zero() {
            continue;
        }
        let shift = a.len() - d;
        for i in 0..d {
            a[shift + i] -= &lead * &modulus[i];
        }
    }
    a.resize(d, BigInt::zero());
    a
}

/// Element of Z[x]/(Phi_mu), i.e. the ring generated over the integers by a
/// primitive mu-th root of unity.
///
/// Stored as the canonical representative of degree below `euler_phi(mu)`;
/// equality of representatives is equality in the ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycInt {
    mu: u32,
    rep: Vec<BigInt>,
}

impl CycInt {
    pub fn zero(mu: u32) -> Result<Self, PolyError> {
        check_mu(mu)?;
        Ok(CycInt {
            mu,
            rep: vec![BigInt::zero(); euler_phi(mu) as usize],
        })
    }

    pub fn from_int(mu: u32, value: BigInt) -> Result<Self, PolyError> {
        let mut c = CycInt::zero(mu)?;
        c.rep[0] = value;
        Ok(c)
    }

    /// The image of x: a primitive mu-th root of unity.
    pub fn root(mu: u32) -> Result<Self, PolyError> {
        check_mu(mu)?;
        let modulus = cyclotomic_polynomial(mu)?;
        let rep = rem_by_monic(vec![BigInt::zero(), BigInt::one()], modulus.coeffs());
        Ok(CycInt { mu, rep })
    }

    pub fn mu(&self) -> u32 {
        self.mu
    }

    /// Canonical coefficients, length `euler_phi(mu)`.
    pub fn rep(&self) -> &[BigInt] {
        &self.rep
    }

    pub fn is_zero(&self) -> bool {
        self.rep.iter().all(Zero::is_zero)
    }

    /// `Some(value)` when the element lies in the rational integers.
    pub fn as_int(&self) -> Option<BigInt> {
        if self.rep[1..].iter().all(Zero::is_zero) {
            Some(self.rep[0].clone())
        } else {
            None
        }
    }

    pub fn add(&self, other: &CycInt) -> CycInt {
        assert_eq!(self.mu, other.mu, "mixed cyclotomic orders");
        let rep = self
            .rep
            .iter()
            .zip(&other.rep)
            .map(|(a, b)| a + b)
            .collect();
        CycInt { mu: self.mu, rep }
    }

    pub fn mul(&self, other: &CycInt) -> CycInt {
        assert_eq!(self.mu, other.mu, "mixed cyclotomic orders");
        let d = self.rep.len();
        let mut prod = vec![BigInt::zero(); 2 * d.max(1) - 1];
        for (i, a) in self.rep.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.rep.iter().enumerate() {
                prod[i + j] += a * b;
            }
        }
        let modulus = cyclotomic_polynomial(self.mu).expect("mu validated at construction");
        CycInt {
            mu: self.mu,
            rep: rem_by_monic(prod, modulus.coeffs()),
        }
    }

    pub fn mul_int(&self, c: &BigInt) -> CycInt {
        CycInt {
            mu: self.mu,
            rep: self.rep.iter().map(|a| a * c).collect(),
        }
    }
}

impl fmt::Display for CycInt {
    /// Renders as a polynomial in `w`, the chosen primitive root.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&UniPoly::from_coeffs(self.rep.clone()).render("w"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn phi_coeffs(mu: u32) -> Vec<i64> {
        cyclotomic_polynomial(mu)
            .unwrap()
            .coeffs()
            .iter()
            .map(|c| i64::try_from(c).unwrap())
            .collect()
    }

    #[test]
    fn cyclotomic_polynomials_small_orders() {
        assert_eq!(phi_coeffs(1), vec![-1, 1]);
        assert_eq!(phi_coeffs(2), vec![1, 1]);
        assert_eq!(phi_coeffs(3), vec![1, 1, 1]);
        assert_eq!(phi_coeffs(4), vec![1, 0, 1]);
        assert_eq!(phi_coeffs(5), vec![1, 1, 1, 1, 1]);
        assert_eq!(phi_coeffs(6), vec![1, -1, 1]);
        assert_eq!(phi_coeffs(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(phi_coeffs(30), vec![1, 1, 0, -1, -1, -1, 0, 1, 1]);
    }

    #[test]
    fn degrees_match_totient() {
        for mu in 1..=30 {
            assert_eq!(
                cyclotomic_polynomial(mu).unwrap().degree().unwrap() as u32,
                euler_phi(mu),
                "mu = {mu}"
            );
        }
        assert_eq!(euler_phi(1), 1);
        assert_eq!(euler_phi(2), 1);
        assert_eq!(euler_phi(12), 4);
        assert_eq!(euler_phi(30), 8);
    }

    #[test]
    fn mu_bounds_are_enforced() {
        assert_eq!(
            cyclotomic_polynomial(0),
            Err(PolyError::UnsupportedMu { mu: 0 })
        );
        assert_eq!(
            cyclotomic_polynomial(31),
            Err(PolyError::UnsupportedMu { mu: 31 })
        );
        assert!(CycInt::zero(31).is_err());
    }

    #[test]
    fn root_has_multiplicative_order_mu() {
        for mu in 1..=12 {
            let w = CycInt::root(mu).unwrap();
            let one = CycInt::from_int(mu, BigInt::one()).unwrap();
            let mut pow = one.clone();
            for j in 1..=mu {
                pow = pow.mul(&w);
                if j < mu {
                    assert_ne!(pow, one, "w^{j} = 1 too early for mu = {mu}");
                }
            }
            assert_eq!(pow, one, "w^{mu} != 1");
        }
    }

    #[test]
    fn mu_2_is_evaluation_at_minus_one() {
        let p = UniPoly::from_i64_coeffs(&[1, 1, 1]);
        let v = p.eval_at_root(2).unwrap();
        assert_eq!(v.as_int(), Some(BigInt::one()));
        // C_{2,0}(q) = q at q = -1.
        let v = UniPoly::monomial(1).eval_at_root(2).unwrap();
        assert_eq!(v.as_int(), Some(BigInt::from(-1)));
        assert_eq!(v.to_string(), "-1");
    }

    #[test]
    fn mu_4_reduces_squares() {
        // 1 + q + q^2 at q = i is exactly i.
        let p = UniPoly::from_i64_coeffs(&[1, 1, 1]);
        let v = p.eval_at_root(4).unwrap();
        assert_eq!(v.as_int(), None);
        assert_eq!(v.rep(), &[BigInt::zero(), BigInt::one()]);
        assert_eq!(v.to_string(), "w");
    }

    #[test]
    fn mu_1_collapses_to_coefficient_sum() {
        let p = UniPoly::from_i64_coeffs(&[1, 2, 1, 1]);
        let v = p.eval_at_root(1).unwrap();
        assert_eq!(v.as_int(), Some(BigInt::from(5)));
    }

    #[test]
    fn ring_ops_reduce_canonically() {
        let w = CycInt::root(6).unwrap();
        // Phi_6 = w^2 - w + 1, so w^2 = w - 1.
        let sq = w.mul(&w);
        assert_eq!(sq.rep(), &[BigInt::from(-1), BigInt::one()]);
        let six = CycInt::from_int(6, BigInt::from(6)).unwrap();
        assert_eq!(
            six.mul_int(&BigInt::from(-2)).as_int(),
            Some(BigInt::from(-12))
        );
        assert_eq!(w.add(&sq).rep(), &[BigInt::from(-1), BigInt::from(2)]);
    }
}
