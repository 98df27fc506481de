use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::cyclotomic::CycInt;
use super::unipoly::UniPoly;
use super::PolyError;

/// Sparse polynomial in `mu` variables over the integers.
///
/// Terms map an exponent vector of length `mu` to a nonzero coefficient.
/// The map is ordered, so iteration, equality and rendering are canonical.
/// With `mu = 2` the variables are written q, p; in general q_1, ..., q_mu.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiPoly {
    mu: usize,
    terms: BTreeMap<Vec<u32>, BigInt>,
}

impl MultiPoly {
    pub fn zero(mu: usize) -> Self {
        assert!(mu >= 1, "need at least one variable");
        MultiPoly {
            mu,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(mu: usize) -> Self {
        MultiPoly::monomial(mu, vec![0; mu])
    }

    pub fn constant(mu: usize, c: BigInt) -> Self {
        let mut p = MultiPoly::zero(mu);
        p.add_term(vec![0; mu], c);
        p
    }

    /// Single monomial with coefficient one.
    pub fn monomial(mu: usize, exps: Vec<u32>) -> Self {
        let mut p = MultiPoly::zero(mu);
        p.add_term(exps, BigInt::one());
        p
    }

    /// Generating function of a multiset of exponent vectors.
    pub fn from_exponent_vectors<I: IntoIterator<Item = Vec<u32>>>(mu: usize, it: I) -> Self {
        let mut p = MultiPoly::zero(mu);
        for exps in it {
            p.add_term(exps, BigInt::one());
        }
        p
    }

    fn add_term(&mut self, exps: Vec<u32>, c: BigInt) {
        assert_eq!(exps.len(), self.mu, "exponent vector has wrong arity");
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    pub fn mu(&self) -> usize {
        self.mu
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms ascending in lexicographic exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &BigInt)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn coeff(&self, exps: &[u32]) -> BigInt {
        self.terms.get(exps).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn add(&self, other: &MultiPoly) -> MultiPoly {
        assert_eq!(self.mu, other.mu, "mixed arities");
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn mul(&self, other: &MultiPoly) -> MultiPoly {
        assert_eq!(self.mu, other.mu, "mixed arities");
        let mut out = MultiPoly::zero(self.mu);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let exps = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.add_term(exps, ca * cb);
            }
        }
        out
    }

    /// Multiplication by the monomial with the given exponent vector.
    pub fn mul_monomial(&self, shift: &[u32]) -> MultiPoly {
        assert_eq!(shift.len(), self.mu, "exponent vector has wrong arity");
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| (e.iter().zip(shift).map(|(x, y)| x + y).collect(), c.clone()))
            .collect();
        MultiPoly { mu: self.mu, terms }
    }

    /// Value with every variable set to one.
    pub fn eval_all_one(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Identifies all variables: the univariate polynomial in q obtained by
    /// sending each q_i to q.
    pub fn identify_vars(&self) -> UniPoly {
        let mut coeffs: Vec<BigInt> = Vec::new();
        for (e, c) in &self.terms {
            let total = e.iter().map(|&x| x as usize).sum::<usize>();
            if coeffs.len() <= total {
                coeffs.resize(total + 1, BigInt::zero());
            }
            coeffs[total] += c;
        }
        UniPoly::from_coeffs(coeffs)
    }

    /// Keeps variable `var` (0-based) and sets every other variable to one.
    pub fn project_var(&self, var: usize) -> UniPoly {
        assert!(var < self.mu, "variable index out of range");
        let mut coeffs: Vec<BigInt> = Vec::new();
        for (e, c) in &self.terms {
            let d = e[var] as usize;
            if coeffs.len() <= d {
                coeffs.resize(d + 1, BigInt::zero());
            }
            coeffs[d] += c;
        }
        UniPoly::from_coeffs(coeffs)
    }

    /// `Some(d)` when every term has the same total degree `d`.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degrees = self.terms.keys().map(|e| e.iter().sum::<u32>());
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    /// Value with every variable set to the same primitive root of unity.
    pub fn eval_at_root(&self, mu_root: u32) -> Result<CycInt, PolyError> {
        let root = CycInt::root(mu_root)?;
        let max_deg = self
            .terms
            .keys()
            .map(|e| e.iter().map(|&x| x as usize).sum::<usize>())
            .max()
            .unwrap_or(0);
        let mut pows = Vec::with_capacity(max_deg + 1);
        pows.push(CycInt::from_int(mu_root, BigInt::one())?);
        for _ in 0..max_deg {
            pows.push(pows.last().unwrap().mul(&root));
        }
        let mut acc = CycInt::zero(mu_root)?;
        for (e, c) in &self.terms {
            let total = e.iter().map(|&x| x as usize).sum::<usize>();
            acc = acc.add(&pows[total].mul_int(c));
        }
        Ok(acc)
    }

    fn var_name(&self, i: usize) -> String {
        match (self.mu, i) {
            (1, 0) => "q".to_string(),
            (2, 0) => "q".to_string(),
            (2, 1) => "p".to_string(),
            _ => format!("q{}", i + 1),
        }
    }
}

impl fmt::Display for MultiPoly {
    /// Plain-text sparse term list, e.g. `q^3+q^2*p+2*q*p^2+p^3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut out = String::new();
        for (e, c) in &self.terms {
            if c.is_negative() {
                out.push('-');
            } else if !out.is_empty() {
                out.push('+');
            }
            let a = c.abs();
            let mut factors: Vec<String> = Vec::new();
            if !a.is_one() || e.iter().all(|&x| x == 0) {
                factors.push(a.to_string());
            }
            for (i, &x) in e.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                if x == 1 {
                    factors.push(self.var_name(i));
                } else {
                    factors.push(format!("{}^{}", self.var_name(i), x));
                }
            }
            out.push_str(&factors.join("*"));
        }
        f.write_str(&out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qp(pairs: &[(u32, u32, i64)]) -> MultiPoly {
        let mut p = MultiPoly::zero(2);
        for &(a, b, c) in pairs {
            p.add_term(vec![a, b], BigInt::from(c));
        }
        p
    }

    #[test]
    fn canonical_form_drops_cancelled_terms() {
        let a = qp(&[(1, 0, 1), (0, 1, 2)]);
        let b = qp(&[(0, 1, -2)]);
        let s = a.add(&b);
        assert_eq!(s, qp(&[(1, 0, 1)]));
        assert_eq!(s.num_terms(), 1);
        assert!(a.add(&qp(&[(1, 0, -1), (0, 1, -2)])).is_zero());
    }

    #[test]
    fn mul_matches_hand_expansion() {
        // (q + p)^2 = q^2 + 2qp + p^2.
        let s = qp(&[(1, 0, 1), (0, 1, 1)]);
        assert_eq!(s.mul(&s), qp(&[(2, 0, 1), (1, 1, 2), (0, 2, 1)]));
        assert_eq!(s.mul_monomial(&[2, 1]), qp(&[(3, 1, 1), (2, 2, 1)]));
    }

    #[test]
    fn specializations() {
        // q^3 + q^2 p + 2 q p^2 + p^3.
        let c32 = qp(&[(3, 0, 1), (2, 1, 1), (1, 2, 2), (0, 3, 1)]);
        assert_eq!(c32.eval_all_one(), BigInt::from(5));
        assert_eq!(c32.identify_vars(), UniPoly::from_i64_coeffs(&[0, 0, 0, 5]));
        assert_eq!(c32.project_var(1), UniPoly::from_i64_coeffs(&[1, 1, 2, 1]));
        assert_eq!(c32.project_var(0), UniPoly::from_i64_coeffs(&[1, 2, 1, 1]));
        assert_eq!(c32.homogeneous_degree(), Some(3));
        assert_eq!(qp(&[(1, 0, 1), (0, 2, 1)]).homogeneous_degree(), None);
    }

    #[test]
    fn root_evaluation_uses_total_degree() {
        let c32 = qp(&[(3, 0, 1), (2, 1, 1), (1, 2, 2), (0, 3, 1)]);
        // All terms are cubic, so at q = p = -1 the value is -5.
        assert_eq!(
            c32.eval_at_root(2).unwrap().as_int(),
            Some(BigInt::from(-5))
        );
        assert_eq!(c32.eval_at_root(1).unwrap().as_int(), Some(BigInt::from(5)));
    }

    #[test]
    fn rendering_is_lex_ascending() {
        let c32 = qp(&[(3, 0, 1), (2, 1, 1), (1, 2, 2), (0, 3, 1)]);
        assert_eq!(c32.to_string(), "p^3+2*q*p^2+q^2*p+q^3");
        assert_eq!(MultiPoly::zero(2).to_string(), "0");
        assert_eq!(MultiPoly::constant(2, BigInt::from(-3)).to_string(), "-3");
        let tri = MultiPoly::monomial(3, vec![2, 0, 1]);
        assert_eq!(tri.to_string(), "q1^2*q3");
        assert_eq!(MultiPoly::monomial(1, vec![2]).to_string(), "q^2");
    }
}
