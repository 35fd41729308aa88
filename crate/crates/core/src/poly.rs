//! Sparse multivariate polynomials with exact rational coefficients.
//!
//! A polynomial is a canonical map from exponent vectors to nonzero
//! rational coefficients. Two equal polynomials always have identical
//! term maps, which makes printing, hashing and certificate checks
//! deterministic. All values are immutable after construction and all
//! operations are pure, so everything here is safe to share across
//! threads.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::rational::Rational;

/// Ordered list of distinct variable names; the position in the list is
/// the coordinate index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VariableContext {
    names: Vec<String>,
}

impl VariableContext {
    pub fn new<I, S>(names: I) -> Result<Self, Error>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(Error::EmptyContext);
        }
        for (i, name) in names.iter().enumerate() {
            if names[..i].contains(name) {
                return Err(Error::DuplicateVariable(name.clone()));
            }
        }
        Ok(Self { names })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        false // invariant: at least one name
    }

    pub fn name(&self, index: usize) -> &str {
        &self.names[index]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

/// Exponent vector of a monomial: delta in N^n.
///
/// The derived ordering is *graded lexicographic* (total degree first,
/// then lexicographic with coordinate 0 most significant); it is the
/// canonical key order for term storage and printing. Term orders used
/// for gradings live in [`crate::grading`] and are independent of this.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ExponentVector(Vec<u64>);

impl ExponentVector {
    pub fn new(entries: Vec<u64>) -> Self {
        Self(entries)
    }

    pub fn zeros(n: usize) -> Self {
        Self(vec![0; n])
    }

    /// Exponent vector of the single variable `index`.
    pub fn unit(n: usize, index: usize) -> Self {
        let mut e = vec![0; n];
        e[index] = 1;
        Self(e)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[u64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn total_degree(&self) -> u64 {
        self.0.iter().sum()
    }

    /// Componentwise sum; used for monomial multiplication.
    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.len(), other.len());
        Self(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a.checked_add(*b).expect("exponent overflow"))
                .collect(),
        )
    }

    /// Weighted degree `z . delta`, computed without overflow.
    pub fn weighted_degree(&self, weights: &[i64]) -> i128 {
        debug_assert_eq!(self.len(), weights.len());
        self.0
            .iter()
            .zip(weights)
            .map(|(&e, &w)| e as i128 * w as i128)
            .sum()
    }

    /// Componentwise parity, i.e. the residue modulo 2Z^n.
    pub fn parity(&self) -> Vec<u8> {
        self.0.iter().map(|e| (e % 2) as u8).collect()
    }
}

impl Ord for ExponentVector {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for ExponentVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial over the rationals in `n` variables.
///
/// Invariants: no stored zero coefficients; the zero polynomial is the
/// empty map; all exponent vectors have length `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    n: usize,
    terms: BTreeMap<ExponentVector, Rational>,
}

impl Polynomial {
    pub fn zero(n: usize) -> Self {
        Self {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n: usize) -> Self {
        Self::constant(n, Rational::one())
    }

    pub fn constant(n: usize, value: Rational) -> Self {
        let mut p = Self::zero(n);
        if !value.is_zero() {
            p.terms.insert(ExponentVector::zeros(n), value);
        }
        p
    }

    pub fn variable(n: usize, index: usize) -> Self {
        assert!(index < n, "variable index {index} out of range for {n} variables");
        let mut p = Self::zero(n);
        p.terms.insert(ExponentVector::unit(n, index), Rational::one());
        p
    }

    pub fn monomial(n: usize, exponent: ExponentVector, coefficient: Rational) -> Self {
        assert_eq!(exponent.len(), n, "exponent length must equal the variable count");
        let mut p = Self::zero(n);
        if !coefficient.is_zero() {
            p.terms.insert(exponent, coefficient);
        }
        p
    }

    /// Builds a polynomial from arbitrary (exponent, coefficient) pairs,
    /// accumulating duplicates and dropping zero totals.
    pub fn from_terms<I>(n: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (ExponentVector, Rational)>,
    {
        let mut p = Self::zero(n);
        for (exp, coeff) in terms {
            p.add_term(exp, coeff);
        }
        p
    }

    fn add_term(&mut self, exponent: ExponentVector, coefficient: Rational) {
        assert_eq!(exponent.len(), self.n, "exponent length must equal the variable count");
        if coefficient.is_zero() {
            return;
        }
        match self.terms.entry(exponent) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coefficient);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += coefficient;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn n_vars(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending canonical (graded-lex) key order.
    pub fn terms(&self) -> impl Iterator<Item = (&ExponentVector, &Rational)> {
        self.terms.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &ExponentVector> {
        self.terms.keys()
    }

    pub fn coefficient(&self, exponent: &ExponentVector) -> Rational {
        self.terms.get(exponent).cloned().unwrap_or_else(Rational::zero)
    }

    fn assert_same_vars(&self, other: &Self) {
        assert_eq!(
            self.n, other.n,
            "variable count mismatch: {} vs {}",
            self.n, other.n
        );
    }

    pub fn neg(&self) -> Self {
        Self {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), -c.clone()))
                .collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.assert_same_vars(other);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.assert_same_vars(other);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.assert_same_vars(other);
        let mut out = Self::zero(self.n);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                out.add_term(ea.add(eb), ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        if factor.is_zero() {
            return Self::zero(self.n);
        }
        Self {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), c * factor))
                .collect(),
        }
    }

    pub fn pow(&self, exponent: u64) -> Self {
        let mut out = Self::one(self.n);
        for _ in 0..exponent {
            out = out.mul(self);
        }
        out
    }

    /// Exact evaluation at a rational point. Evaluation is a ring
    /// homomorphism.
    pub fn evaluate(&self, point: &[Rational]) -> Result<Rational, Error> {
        if point.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: point.len(),
            });
        }
        let mut total = Rational::zero();
        for (exp, coeff) in &self.terms {
            let mut term = coeff.clone();
            for (&e, x) in exp.entries().iter().zip(point) {
                if e > 0 {
                    term *= num_traits::pow(x.clone(), e as usize);
                }
            }
            total += term;
        }
        Ok(total)
    }

    /// Canonical display against a variable context. The output always
    /// re-parses to the same polynomial.
    pub fn display<'a>(&'a self, ctx: &'a VariableContext) -> PolyDisplay<'a> {
        assert_eq!(ctx.len(), self.n, "context size must equal the variable count");
        PolyDisplay { poly: self, ctx }
    }
}

impl std::ops::Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: Self) -> Polynomial {
        Polynomial::add(self, rhs)
    }
}

impl std::ops::Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: Self) -> Polynomial {
        Polynomial::sub(self, rhs)
    }
}

impl std::ops::Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Self) -> Polynomial {
        Polynomial::mul(self, rhs)
    }
}

impl std::ops::Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::neg(self)
    }
}

pub struct PolyDisplay<'a> {
    poly: &'a Polynomial,
    ctx: &'a VariableContext,
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        // Highest canonical term first.
        for (i, (exp, coeff)) in self.poly.terms.iter().rev().enumerate() {
            let negative = coeff.is_negative();
            if i == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mag = coeff.abs();
            let mut factors: Vec<String> = Vec::new();
            if !mag.is_one() || exp.is_zero() {
                factors.push(mag.to_string());
            }
            for (idx, &e) in exp.entries().iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.ctx.name(idx).to_string()),
                    _ => factors.push(format!("{}^{}", self.ctx.name(idx), e)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_polynomial;

    fn ctx_xy() -> VariableContext {
        VariableContext::new(["x", "y"]).unwrap()
    }

    fn rat(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    #[test]
    fn context_rejects_duplicates_and_empty() {
        assert!(matches!(
            VariableContext::new(["x", "x"]),
            Err(Error::DuplicateVariable(_))
        ));
        assert!(matches!(
            VariableContext::new(Vec::<String>::new()),
            Err(Error::EmptyContext)
        ));
    }

    #[test]
    fn canonical_form_is_insertion_order_independent() {
        let a = Polynomial::from_terms(
            2,
            vec![
                (ExponentVector::new(vec![2, 0]), rat(2)),
                (ExponentVector::new(vec![0, 1]), rat(-1)),
            ],
        );
        let b = Polynomial::from_terms(
            2,
            vec![
                (ExponentVector::new(vec![0, 1]), rat(-1)),
                (ExponentVector::new(vec![2, 0]), rat(2)),
            ],
        );
        assert_eq!(a, b);
        let pairs_a: Vec<_> = a.terms().collect();
        let pairs_b: Vec<_> = b.terms().collect();
        assert_eq!(pairs_a, pairs_b);
    }

    #[test]
    fn additive_inverse_cancels_to_zero() {
        let ctx = ctx_xy();
        let f = parse_polynomial("y - x^2", &ctx).unwrap();
        let g = parse_polynomial("x^2 - y", &ctx).unwrap();
        assert!(f.add(&g).is_zero());
    }

    #[test]
    fn product_of_variables() {
        let x = Polynomial::variable(2, 0);
        let y = Polynomial::variable(2, 1);
        let xy = x.mul(&y);
        assert_eq!(xy.num_terms(), 1);
        assert_eq!(xy.coefficient(&ExponentVector::new(vec![1, 1])), rat(1));
    }

    #[test]
    fn difference_of_squares() {
        let ctx = ctx_xy();
        let f = parse_polynomial("x - 1", &ctx).unwrap();
        let g = parse_polynomial("x + 1", &ctx).unwrap();
        let expect = parse_polynomial("x^2 - 1", &ctx).unwrap();
        assert_eq!(f.mul(&g), expect);
    }

    #[test]
    fn scalar_multiples_and_powers() {
        let ctx = ctx_xy();
        let f = parse_polynomial("x - y", &ctx).unwrap();
        assert_eq!(
            f.scale(&Rational::new(1.into(), 2.into())),
            parse_polynomial("1/2*x - 1/2*y", &ctx).unwrap()
        );
        assert!(f.scale(&Rational::zero()).is_zero());
        assert_eq!(
            f.pow(2),
            parse_polynomial("x^2 - 2*x*y + y^2", &ctx).unwrap()
        );
        assert_eq!(f.pow(0), Polynomial::one(2));
    }

    #[test]
    #[should_panic(expected = "variable count mismatch")]
    fn mixed_variable_counts_panic() {
        let f = Polynomial::variable(2, 0);
        let g = Polynomial::variable(3, 0);
        let _ = f.add(&g);
    }

    #[test]
    fn evaluation_examples() {
        let ctx = ctx_xy();
        let point = vec![rat(1), Rational::new(3.into(), 2.into())];
        let f = parse_polynomial("y - x^2", &ctx).unwrap();
        assert_eq!(f.evaluate(&point).unwrap(), Rational::new(1.into(), 2.into()));
        let g = parse_polynomial("2*x^2 - y", &ctx).unwrap();
        assert_eq!(g.evaluate(&point).unwrap(), Rational::new(1.into(), 2.into()));
        let one = Polynomial::one(2);
        assert_eq!(one.evaluate(&point).unwrap(), rat(1));
        assert!(matches!(
            one.evaluate(&[rat(1)]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn display_round_trips() {
        let ctx = ctx_xy();
        for text in [
            "2*x^2 - y",
            "-x*y + 1/2",
            "0",
            "x^2*y^3 - 7*x + 5/3",
            "-1",
            "x",
        ] {
            let p = parse_polynomial(text, &ctx).unwrap();
            let printed = p.display(&ctx).to_string();
            let reparsed = parse_polynomial(&printed, &ctx).unwrap();
            assert_eq!(p, reparsed, "round trip failed for `{text}` -> `{printed}`");
        }
    }

    #[test]
    fn grlex_key_order() {
        let a = ExponentVector::new(vec![2, 0]);
        let b = ExponentVector::new(vec![1, 1]);
        let c = ExponentVector::new(vec![0, 1]);
        // same total degree: lex on entries; lower degree sorts first
        assert!(a > b);
        assert!(b > c);
        assert!(c < a);
    }
}
