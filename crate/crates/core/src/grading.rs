//! Gradings of the polynomial ring.
//!
//! Two families are supported: weighted degrees given by an integer
//! vector `z` (monomial `X^delta` sits in degree `z . delta`), and term
//! orders (pure lexicographic or total-degree-then-lexicographic), under
//! which every monomial is homogeneous of its own exponent. Degrees of
//! the two families are unified in [`GradedDegree`], with an explicit
//! bottom element for the zero polynomial.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::poly::{ExponentVector, Polynomial, VariableContext};
use crate::rational::Rational;

/// Integer weight vector defining a grading. The zero vector is
/// rejected: it grades everything in degree 0 and makes every stability
/// criterion vacuous. Deserialization goes through the same validation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "Vec<i64>", try_from = "Vec<i64>")]
pub struct ZVector(Vec<i64>);

impl From<ZVector> for Vec<i64> {
    fn from(z: ZVector) -> Self {
        z.0
    }
}

impl TryFrom<Vec<i64>> for ZVector {
    type Error = Error;
    fn try_from(entries: Vec<i64>) -> Result<Self, Error> {
        Self::new(entries)
    }
}

impl ZVector {
    pub fn new(entries: Vec<i64>) -> Result<Self, Error> {
        if entries.is_empty() || entries.iter().all(|&w| w == 0) {
            return Err(Error::ZeroGradingVector);
        }
        Ok(Self(entries))
    }

    /// Parses comma-separated integers, e.g. `1,-1`.
    pub fn parse(text: &str) -> Result<Self, Error> {
        let entries: Result<Vec<i64>, _> = text
            .split(',')
            .map(|part| part.trim().parse::<i64>())
            .collect();
        match entries {
            Ok(e) => Self::new(e).map_err(|_| Error::BadVectorSpec(text.to_string())),
            Err(_) => Err(Error::BadVectorSpec(text.to_string())),
        }
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn is_strictly_positive(&self) -> bool {
        self.0.iter().all(|&w| w > 0)
    }
}

impl std::fmt::Display for ZVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|w| w.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TermOrderKind {
    /// Pure lexicographic. The induced filtration has infinite
    /// dimensional pieces, so a verdict under it certifies total
    /// stability for this grading only.
    Lex,
    /// Total degree first, then lexicographic. The induced filtration
    /// pieces are finite dimensional.
    Deglex,
}

/// A term order on exponent vectors: a translation-invariant linear
/// order. `priority` lists variable indices from highest to lowest.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermOrder {
    kind: TermOrderKind,
    priority: Vec<usize>,
}

impl TermOrder {
    pub fn new(kind: TermOrderKind, priority: Vec<usize>) -> Result<Self, Error> {
        let n = priority.len();
        let mut seen = vec![false; n];
        for &i in &priority {
            if i >= n || seen[i] {
                return Err(Error::BadPriority(format!("{priority:?}")));
            }
            seen[i] = true;
        }
        if n == 0 {
            return Err(Error::BadPriority("[]".to_string()));
        }
        Ok(Self { kind, priority })
    }

    /// Parses `deglex:x,y` or `lex:x,y` (variables highest-priority
    /// first; every context variable must appear exactly once).
    pub fn parse_spec(spec: &str, ctx: &VariableContext) -> Result<Self, Error> {
        let bad = || Error::BadOrderSpec(spec.to_string());
        let (kind_str, vars_str) = spec.split_once(':').ok_or_else(bad)?;
        let kind = match kind_str.trim() {
            "lex" => TermOrderKind::Lex,
            "deglex" => TermOrderKind::Deglex,
            _ => return Err(bad()),
        };
        let mut priority = Vec::new();
        for name in vars_str.split(',') {
            let idx = ctx.index_of(name.trim()).ok_or_else(bad)?;
            priority.push(idx);
        }
        if priority.len() != ctx.len() {
            return Err(bad());
        }
        Self::new(kind, priority).map_err(|_| bad())
    }

    pub fn kind(&self) -> TermOrderKind {
        self.kind
    }

    pub fn priority(&self) -> &[usize] {
        &self.priority
    }

    pub fn n_vars(&self) -> usize {
        self.priority.len()
    }

    /// Renders the CLI spelling of this order, e.g. `deglex:x,y`.
    pub fn spec_string(&self, ctx: &VariableContext) -> String {
        let kind = match self.kind {
            TermOrderKind::Lex => "lex",
            TermOrderKind::Deglex => "deglex",
        };
        let vars: Vec<&str> = self.priority.iter().map(|&i| ctx.name(i)).collect();
        format!("{kind}:{}", vars.join(","))
    }

    /// Total, translation-invariant comparison of exponent vectors.
    pub fn compare(&self, a: &ExponentVector, b: &ExponentVector) -> Ordering {
        assert_eq!(a.len(), self.priority.len(), "exponent length mismatch");
        assert_eq!(b.len(), self.priority.len(), "exponent length mismatch");
        if self.kind == TermOrderKind::Deglex {
            match a.total_degree().cmp(&b.total_degree()) {
                Ordering::Equal => {}
                ord => return ord,
            }
        }
        for &idx in &self.priority {
            match a.entries()[idx].cmp(&b.entries()[idx]) {
                Ordering::Equal => {}
                ord => return ord,
            }
        }
        Ordering::Equal
    }
}

/// See [`TermOrder::compare`].
pub fn compare_exponents(ord: &TermOrder, a: &ExponentVector, b: &ExponentVector) -> Ordering {
    ord.compare(a, b)
}

/// Degree of a polynomial under a grading. `Bottom` is the degree of
/// the zero polynomial and is absorbing under addition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GradedDegree {
    Bottom,
    Int(i64),
    Exponent(ExponentVector),
}

impl GradedDegree {
    pub fn is_bottom(&self) -> bool {
        matches!(self, GradedDegree::Bottom)
    }

    /// Residue class modulo doubling of the degree group, as a label:
    /// `"0"`/`"1"` for integer degrees, comma-separated parities for
    /// exponent degrees. `Bottom` has no residue.
    pub fn residue_mod_two(&self) -> Option<String> {
        match self {
            GradedDegree::Bottom => None,
            GradedDegree::Int(d) => Some(d.rem_euclid(2).to_string()),
            GradedDegree::Exponent(e) => {
                let parts: Vec<String> = e.parity().iter().map(|p| p.to_string()).collect();
                Some(parts.join(","))
            }
        }
    }
}

/// Either a z-grading or a term-order grading.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum GradingSpec {
    Z { z: ZVector },
    TermOrder { order: TermOrder },
}

impl GradingSpec {
    pub fn n_vars(&self) -> usize {
        match self {
            GradingSpec::Z { z } => z.len(),
            GradingSpec::TermOrder { order } => order.n_vars(),
        }
    }

    /// Degree of `f` under this grading; `Bottom` for the zero
    /// polynomial.
    pub fn degree(&self, f: &Polynomial) -> GradedDegree {
        match self {
            GradingSpec::Z { z } => z_degree(f, z),
            GradingSpec::TermOrder { order } => match term_order_leading(f, order) {
                Ok((exp, _)) => GradedDegree::Exponent(exp),
                Err(_) => GradedDegree::Bottom,
            },
        }
    }

    /// Highest-degree part of a nonzero `f` under this grading.
    pub fn max_part(&self, f: &Polynomial) -> Result<Polynomial, Error> {
        match self {
            GradingSpec::Z { z } => z_max_part(f, z),
            GradingSpec::TermOrder { order } => {
                let (exp, coeff) = term_order_leading(f, order)?;
                Ok(Polynomial::monomial(f.n_vars(), exp, coeff))
            }
        }
    }
}

fn degree_from_i128(d: i128) -> i64 {
    i64::try_from(d).expect("weighted degree exceeds i64")
}

/// `max { z . delta : delta in support(f) }`; `Bottom` for `f = 0`.
pub fn z_degree(f: &Polynomial, z: &ZVector) -> GradedDegree {
    assert_eq!(f.n_vars(), z.len(), "grading dimension mismatch");
    f.support()
        .map(|e| e.weighted_degree(z.entries()))
        .max()
        .map(|d| GradedDegree::Int(degree_from_i128(d)))
        .unwrap_or(GradedDegree::Bottom)
}

/// Sum of the terms of `f` of maximal weighted degree. The result is
/// nonzero and homogeneous for the grading.
pub fn z_max_part(f: &Polynomial, z: &ZVector) -> Result<Polynomial, Error> {
    assert_eq!(f.n_vars(), z.len(), "grading dimension mismatch");
    let top = f
        .support()
        .map(|e| e.weighted_degree(z.entries()))
        .max()
        .ok_or(Error::ZeroPolynomial)?;
    Ok(Polynomial::from_terms(
        f.n_vars(),
        f.terms()
            .filter(|(e, _)| e.weighted_degree(z.entries()) == top)
            .map(|(e, c)| (e.clone(), c.clone())),
    ))
}

/// Splits a nonzero `f` into homogeneous parts with strictly increasing
/// degrees; the parts sum back to `f`.
pub fn z_homogeneous_decomposition(
    f: &Polynomial,
    z: &ZVector,
) -> Result<Vec<(i64, Polynomial)>, Error> {
    assert_eq!(f.n_vars(), z.len(), "grading dimension mismatch");
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut by_degree: std::collections::BTreeMap<i64, Vec<(ExponentVector, Rational)>> =
        std::collections::BTreeMap::new();
    for (e, c) in f.terms() {
        let d = degree_from_i128(e.weighted_degree(z.entries()));
        by_degree.entry(d).or_default().push((e.clone(), c.clone()));
    }
    Ok(by_degree
        .into_iter()
        .map(|(d, terms)| (d, Polynomial::from_terms(f.n_vars(), terms)))
        .collect())
}

/// Leading term of a nonzero `f` under the given term order: the
/// order-maximal exponent of the support together with its coefficient.
pub fn term_order_leading(
    f: &Polynomial,
    ord: &TermOrder,
) -> Result<(ExponentVector, Rational), Error> {
    assert_eq!(f.n_vars(), ord.n_vars(), "grading dimension mismatch");
    let lead = f
        .support()
        .max_by(|a, b| ord.compare(a, b))
        .ok_or(Error::ZeroPolynomial)?
        .clone();
    let coeff = f.coefficient(&lead);
    Ok((lead, coeff))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_polynomial;

    fn ctx_xy() -> VariableContext {
        VariableContext::new(["x", "y"]).unwrap()
    }

    fn zv(entries: &[i64]) -> ZVector {
        ZVector::new(entries.to_vec()).unwrap()
    }

    fn p(text: &str) -> Polynomial {
        parse_polynomial(text, &ctx_xy()).unwrap()
    }

    #[test]
    fn zero_vector_is_rejected() {
        assert!(matches!(ZVector::new(vec![0, 0]), Err(Error::ZeroGradingVector)));
        assert!(ZVector::parse("0,0").is_err());
        assert_eq!(ZVector::parse("1,-1").unwrap(), zv(&[1, -1]));
        assert!(ZVector::parse("1,a").is_err());
    }

    #[test]
    fn weighted_degrees() {
        assert_eq!(z_degree(&p("y - x^2"), &zv(&[1, 2])), GradedDegree::Int(2));
        assert_eq!(z_degree(&p("1"), &zv(&[3, -7])), GradedDegree::Int(0));
        assert_eq!(z_degree(&p("1 - x^2*y"), &zv(&[-1, 2])), GradedDegree::Int(0));
        assert_eq!(z_degree(&p("0"), &zv(&[1, 1])), GradedDegree::Bottom);
    }

    #[test]
    fn max_parts() {
        assert_eq!(z_max_part(&p("y - x^2"), &zv(&[1, 2])).unwrap(), p("y - x^2"));
        assert_eq!(z_max_part(&p("1 - x*y"), &zv(&[1, 1])).unwrap(), p("-x*y"));
        assert_eq!(z_max_part(&p("x"), &zv(&[1, 0])).unwrap(), p("x"));
        assert!(matches!(
            z_max_part(&p("0"), &zv(&[1, 0])),
            Err(Error::ZeroPolynomial)
        ));
    }

    #[test]
    fn homogeneous_decomposition() {
        let parts = z_homogeneous_decomposition(&p("1 - x^2*y"), &zv(&[1, 1])).unwrap();
        assert_eq!(parts, vec![(0, p("1")), (3, p("-x^2*y"))]);

        let parts = z_homogeneous_decomposition(&p("y - x^2"), &zv(&[1, 2])).unwrap();
        assert_eq!(parts, vec![(2, p("y - x^2"))]);

        let parts = z_homogeneous_decomposition(&p("x + 1"), &zv(&[1, 0])).unwrap();
        assert_eq!(parts, vec![(0, p("1")), (1, p("x"))]);

        // parts sum back to f and are homogeneous
        let f = p("x^3 - 2*x*y + y - 5");
        let z = zv(&[2, -1]);
        let parts = z_homogeneous_decomposition(&f, &z).unwrap();
        let mut sum = Polynomial::zero(2);
        let mut last: Option<i64> = None;
        for (d, part) in &parts {
            assert!(!part.is_zero());
            assert_eq!(z_max_part(part, &z).unwrap(), *part);
            assert_eq!(z_degree(part, &z), GradedDegree::Int(*d));
            if let Some(prev) = last {
                assert!(*d > prev);
            }
            last = Some(*d);
            sum = sum.add(part);
        }
        assert_eq!(sum, f);
    }

    #[test]
    fn term_order_leading_terms() {
        let ctx = ctx_xy();
        let deglex = TermOrder::parse_spec("deglex:x,y", &ctx).unwrap();
        let lex = TermOrder::parse_spec("lex:x,y", &ctx).unwrap();

        let (e, c) = term_order_leading(&p("1 - x*y"), &deglex).unwrap();
        assert_eq!(e, ExponentVector::new(vec![1, 1]));
        assert_eq!(c, Rational::from_integer((-1).into()));

        let (e, c) = term_order_leading(&p("x"), &deglex).unwrap();
        assert_eq!(e, ExponentVector::new(vec![1, 0]));
        assert_eq!(c, Rational::from_integer(1.into()));

        let f = p("x^2 + x*y^2");
        let (e, _) = term_order_leading(&f, &lex).unwrap();
        assert_eq!(e, ExponentVector::new(vec![2, 0]));
        let (e, _) = term_order_leading(&f, &deglex).unwrap();
        assert_eq!(e, ExponentVector::new(vec![1, 2]));
    }

    #[test]
    fn exponent_comparisons() {
        let ctx = ctx_xy();
        let deglex = TermOrder::parse_spec("deglex:x,y", &ctx).unwrap();
        let lex = TermOrder::parse_spec("lex:x,y", &ctx).unwrap();
        let e = |a: u64, b: u64| ExponentVector::new(vec![a, b]);

        assert_eq!(deglex.compare(&e(1, 1), &e(2, 0)), Ordering::Less);
        assert_eq!(deglex.compare(&e(0, 0), &e(0, 0)), Ordering::Equal);
        assert_eq!(lex.compare(&e(1, 0), &e(0, 5)), Ordering::Greater);
        // priority reversed: y > x
        let deglex_yx = TermOrder::parse_spec("deglex:y,x", &ctx).unwrap();
        assert_eq!(deglex_yx.compare(&e(1, 1), &e(2, 0)), Ordering::Greater);
    }

    #[test]
    fn order_spec_validation() {
        let ctx = ctx_xy();
        assert!(TermOrder::parse_spec("deglex:x", &ctx).is_err());
        assert!(TermOrder::parse_spec("deglex:x,x", &ctx).is_err());
        assert!(TermOrder::parse_spec("foo:x,y", &ctx).is_err());
        assert!(TermOrder::parse_spec("deglex", &ctx).is_err());
        let ord = TermOrder::parse_spec("lex:y,x", &ctx).unwrap();
        assert_eq!(ord.spec_string(&ctx), "lex:y,x");
    }

    #[test]
    fn residues() {
        assert_eq!(GradedDegree::Int(-3).residue_mod_two(), Some("1".to_string()));
        assert_eq!(GradedDegree::Int(4).residue_mod_two(), Some("0".to_string()));
        assert_eq!(
            GradedDegree::Exponent(ExponentVector::new(vec![3, 2])).residue_mod_two(),
            Some("1,0".to_string())
        );
        assert_eq!(GradedDegree::Bottom.residue_mod_two(), None);
    }
}
