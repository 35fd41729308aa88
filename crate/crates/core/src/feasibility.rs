//! Exact rational linear feasibility and its integer consequences.
//!
//! The kernel is Fourier-Motzkin elimination over arbitrary-precision
//! rationals, which is complete: a `None` answer really means the
//! system has no solution. Variables are eliminated in ascending index
//! order and the back substitution follows a fixed value-picking rule,
//! so results are reproducible across runs and across the parallel and
//! sequential builds.
//!
//! On top of the kernel sit the combinatorial questions about grading
//! vectors: does a nonnegative integer combination of `z`-vectors have
//! all coordinates positive (and if not, which monomial witnesses the
//! obstruction), and is one grading covered by a family of others.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::exec;
use crate::grading::ZVector;
use crate::poly::ExponentVector;
use crate::rational::{clear_denominators, serde_bigint_vec, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Relation {
    /// `coeffs . x >= rhs`
    Ge,
    /// `coeffs . x > rhs`
    Gt,
}

/// One row of a linear system.
#[derive(Debug, Clone)]
pub struct LinearRow {
    pub coeffs: Vec<Rational>,
    pub relation: Relation,
    pub rhs: Rational,
}

impl LinearRow {
    pub fn ge(coeffs: Vec<Rational>, rhs: Rational) -> Self {
        Self {
            coeffs,
            relation: Relation::Ge,
            rhs,
        }
    }

    pub fn gt(coeffs: Vec<Rational>, rhs: Rational) -> Self {
        Self {
            coeffs,
            relation: Relation::Gt,
            rhs,
        }
    }

    fn holds_at(&self, point: &[Rational]) -> bool {
        let lhs: Rational = self
            .coeffs
            .iter()
            .zip(point)
            .map(|(c, x)| c * x)
            .sum();
        match self.relation {
            Relation::Ge => lhs >= self.rhs,
            Relation::Gt => lhs > self.rhs,
        }
    }
}

/// A conjunction of `>=` / `>` rows over a common variable count.
#[derive(Debug, Clone)]
pub struct LinearSystem {
    rows: Vec<LinearRow>,
    num_vars: usize,
}

impl LinearSystem {
    pub fn new(rows: Vec<LinearRow>) -> Result<Self, Error> {
        let num_vars = rows.first().ok_or(Error::EmptySystem)?.coeffs.len();
        for row in &rows {
            if row.coeffs.len() != num_vars {
                return Err(Error::DimensionMismatch {
                    expected: num_vars,
                    found: row.coeffs.len(),
                });
            }
        }
        Ok(Self { rows, num_vars })
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn rows(&self) -> &[LinearRow] {
        &self.rows
    }

    /// Exact satisfaction check; strict rows must hold strictly.
    pub fn is_satisfied_by(&self, point: &[Rational]) -> bool {
        point.len() == self.num_vars && self.rows.iter().all(|r| r.holds_at(point))
    }
}

#[derive(Clone)]
struct FmRow {
    coeffs: Vec<Rational>,
    strict: bool,
    rhs: Rational,
}

fn combine(lower: &FmRow, upper: &FmRow, var: usize) -> FmRow {
    // lower has coeffs[var] > 0, upper has coeffs[var] < 0; the positive
    // combination below zeroes the variable out exactly.
    let lf = -upper.coeffs[var].clone();
    let uf = lower.coeffs[var].clone();
    let coeffs = lower
        .coeffs
        .iter()
        .zip(&upper.coeffs)
        .map(|(a, b)| a * &lf + b * &uf)
        .collect();
    FmRow {
        coeffs,
        strict: lower.strict || upper.strict,
        rhs: &lower.rhs * &lf + &upper.rhs * &uf,
    }
}

/// Exact Fourier-Motzkin elimination. Returns a solution satisfying
/// every row (strict rows strictly), or `None` iff the system is
/// infeasible.
pub fn rational_feasible(sys: &LinearSystem, nonneg_vars: bool) -> Option<Vec<Rational>> {
    let k = sys.num_vars;
    let mut rows: Vec<FmRow> = sys
        .rows
        .iter()
        .map(|r| FmRow {
            coeffs: r.coeffs.clone(),
            strict: r.relation == Relation::Gt,
            rhs: r.rhs.clone(),
        })
        .collect();
    if nonneg_vars {
        for j in 0..k {
            let mut coeffs = vec![Rational::zero(); k];
            coeffs[j] = Rational::one();
            rows.push(FmRow {
                coeffs,
                strict: false,
                rhs: Rational::zero(),
            });
        }
    }

    // Eliminate in ascending index order, keeping each level's rows for
    // the back substitution.
    let mut levels: Vec<Vec<FmRow>> = Vec::with_capacity(k);
    for j in 0..k {
        let mut lowers = Vec::new();
        let mut uppers = Vec::new();
        let mut rest = Vec::new();
        for row in rows {
            if row.coeffs[j].is_positive() {
                lowers.push(row);
            } else if row.coeffs[j].is_negative() {
                uppers.push(row);
            } else {
                rest.push(row);
            }
        }
        let mut next = rest;
        for l in &lowers {
            for u in &uppers {
                next.push(combine(l, u, j));
            }
        }
        let mut level = lowers;
        level.append(&mut uppers);
        levels.push(level);
        rows = next;
    }

    // Only constant rows remain: 0 >= rhs (or >).
    for row in &rows {
        let ok = if row.strict {
            row.rhs.is_negative()
        } else {
            !row.rhs.is_positive()
        };
        if !ok {
            return None;
        }
    }

    // Back-substitute in reverse order; level j rows involve only
    // variables >= j.
    let mut point = vec![Rational::zero(); k];
    for j in (0..k).rev() {
        let mut lower: Option<(Rational, bool)> = None;
        let mut upper: Option<(Rational, bool)> = None;
        for row in &levels[j] {
            let mut rest = row.rhs.clone();
            for (c, x) in row.coeffs[j + 1..].iter().zip(&point[j + 1..]) {
                rest -= c * x;
            }
            let bound = rest / &row.coeffs[j];
            if row.coeffs[j].is_positive() {
                lower = Some(match lower {
                    None => (bound, row.strict),
                    Some((cur, s)) => match bound.cmp(&cur) {
                        std::cmp::Ordering::Greater => (bound, row.strict),
                        std::cmp::Ordering::Equal => (cur, s || row.strict),
                        std::cmp::Ordering::Less => (cur, s),
                    },
                });
            } else {
                upper = Some(match upper {
                    None => (bound, row.strict),
                    Some((cur, s)) => match bound.cmp(&cur) {
                        std::cmp::Ordering::Less => (bound, row.strict),
                        std::cmp::Ordering::Equal => (cur, s || row.strict),
                        std::cmp::Ordering::Greater => (cur, s),
                    },
                });
            }
        }
        point[j] = match (lower, upper) {
            (None, None) => Rational::zero(),
            (Some((l, strict)), None) => {
                if strict {
                    l + Rational::one()
                } else {
                    l
                }
            }
            (None, Some((u, strict))) => {
                if strict {
                    u - Rational::one()
                } else {
                    u
                }
            }
            (Some((l, ls)), Some((u, us))) => {
                if l == u {
                    debug_assert!(!ls && !us, "degenerate strict interval survived elimination");
                    l
                } else {
                    (l + u) / Rational::from_integer(2.into())
                }
            }
        };
    }
    debug_assert!(sys.is_satisfied_by(&point));
    debug_assert!(!nonneg_vars || point.iter().all(|x| !x.is_negative()));
    Some(point)
}

/// Result of [`positive_combination`]: either nonnegative integer
/// multipliers `r` with `sum r_j z_j` strictly positive in every
/// coordinate, or an exponent vector `delta != 0` with
/// `delta . z_j <= 0` for all `j`. Exactly one of the two exists.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum FeasibilityOutcome {
    Multipliers {
        #[serde(with = "serde_bigint_vec")]
        r: Vec<BigInt>,
    },
    FarkasWitness {
        delta: ExponentVector,
    },
}

fn common_dimension(zs: &[ZVector]) -> Result<usize, Error> {
    let n = zs.first().ok_or(Error::EmptySystem)?.len();
    for z in zs {
        if z.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: z.len(),
            });
        }
    }
    Ok(n)
}

/// `sum r_j z_j > 0` componentwise, with `r` nonnegative?
pub fn verify_multipliers(zs: &[ZVector], r: &[BigInt]) -> bool {
    if r.len() != zs.len() || zs.is_empty() || r.iter().any(|v| v.is_negative()) {
        return false;
    }
    let n = zs[0].len();
    (0..n).all(|i| {
        let total: BigInt = zs
            .iter()
            .zip(r)
            .map(|(z, rj)| BigInt::from(z.entries()[i]) * rj)
            .sum();
        total.is_positive()
    })
}

/// `delta != 0` and `delta . z_j <= 0` for every `j`?
pub fn verify_farkas_witness(zs: &[ZVector], delta: &ExponentVector) -> bool {
    if zs.is_empty() || zs[0].len() != delta.len() || delta.is_zero() {
        return false;
    }
    zs.iter().all(|z| delta.weighted_degree(z.entries()) <= 0)
}

/// Decides the alternative for a family of grading vectors: returns
/// `Multipliers` with `sum r_j z_j` strictly positive, or the mutually
/// exclusive `FarkasWitness`.
///
/// The strict system is homogeneous, so rational feasibility of
/// `sum r_j z_j >= 1 (componentwise), r >= 0` plus denominator clearing
/// is complete; no integer search is needed.
pub fn positive_combination(zs: &[ZVector]) -> Result<FeasibilityOutcome, Error> {
    let n = common_dimension(zs)?;
    let m = zs.len();

    let primal_rows: Vec<LinearRow> = (0..n)
        .map(|i| {
            LinearRow::ge(
                zs.iter()
                    .map(|z| Rational::from_integer(z.entries()[i].into()))
                    .collect(),
                Rational::one(),
            )
        })
        .collect();
    let primal = LinearSystem::new(primal_rows).expect("n >= 1 by ZVector invariant");

    if let Some(solution) = rational_feasible(&primal, true) {
        let r = clear_denominators(&solution);
        assert!(
            verify_multipliers(zs, &r),
            "internal error: scaled multipliers failed exact re-verification"
        );
        return Ok(FeasibilityOutcome::Multipliers { r });
    }

    // Alternative system: delta >= 0, sum delta_i >= 1, delta . z_j <= 0.
    let mut alt_rows = vec![LinearRow::ge(vec![Rational::one(); n], Rational::one())];
    for z in zs {
        alt_rows.push(LinearRow::ge(
            z.entries()
                .iter()
                .map(|&w| Rational::from_integer((-w).into()))
                .collect(),
            Rational::zero(),
        ));
    }
    let alternative = LinearSystem::new(alt_rows).expect("nonempty by construction");
    let solution = rational_feasible(&alternative, true).unwrap_or_else(|| {
        panic!("internal error: neither multipliers nor a witness exist for {m} vectors")
    });
    let scaled = clear_denominators(&solution);
    let gcd = scaled
        .iter()
        .fold(BigInt::zero(), |acc, v| acc.gcd(v));
    let delta = ExponentVector::new(
        scaled
            .iter()
            .map(|v| {
                u64::try_from(v / &gcd).expect("internal error: witness entry out of range")
            })
            .collect(),
    );
    assert!(
        verify_farkas_witness(zs, &delta),
        "internal error: scaled witness failed exact re-verification"
    );
    Ok(FeasibilityOutcome::FarkasWitness { delta })
}

/// Are the only polynomials bounded on the associated tentacle union
/// the constants?
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum BoundedMonomials {
    OnlyConstants,
    /// `X^delta` is a nonconstant monomial bounded on the union.
    Witness { delta: ExponentVector },
}

/// Classifies the monomials bounded on the tentacle union of the given
/// directions: `OnlyConstants` iff a strictly positive combination of
/// the directions exists.
pub fn bounded_monomials(zs: &[ZVector]) -> Result<BoundedMonomials, Error> {
    Ok(match positive_combination(zs)? {
        FeasibilityOutcome::Multipliers { .. } => BoundedMonomials::OnlyConstants,
        FeasibilityOutcome::FarkasWitness { delta } => BoundedMonomials::Witness { delta },
    })
}

/// Mutual degree-bound data showing that the `z`-grading is covered by
/// the `z_j`-gradings: `sum r_j z_j >= z` and `t_j z >= z_j`, all
/// componentwise over nonnegative integers.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoveringCertificate {
    pub r: Vec<u64>,
    pub t: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum CoveringOutcome {
    Certified(CoveringCertificate),
    /// The rational relaxation of one of the required inequality
    /// families is infeasible, so no integer certificate exists at any
    /// bound.
    Infeasible,
    /// The relaxation is feasible but no integer point was found within
    /// the bound.
    Unknown,
}

/// Componentwise `sum r_j z_j >= z`.
fn dominates(zs: &[ZVector], r: &[u64], z: &ZVector) -> bool {
    (0..z.len()).all(|i| {
        let total: i128 = zs
            .iter()
            .zip(r)
            .map(|(zj, &rj)| zj.entries()[i] as i128 * rj as i128)
            .sum();
        total >= z.entries()[i] as i128
    })
}

fn scalar_dominates(t: u64, z: &ZVector, zj: &ZVector) -> bool {
    z.entries()
        .iter()
        .zip(zj.entries())
        .all(|(&zi, &zji)| t as i128 * zi as i128 >= zji as i128)
}

const MAX_COVERING_BOUND: u64 = 1 << 20;

/// Searches for a covering certificate with all entries in
/// `0..=bound`. Returns `Infeasible` when the rational relaxation
/// already rules a certificate out, `Unknown` when the bounded integer
/// search is exhausted, and the lexicographically smallest valid `r`
/// otherwise.
pub fn covering_check(
    z: &ZVector,
    zs: &[ZVector],
    bound: u64,
) -> Result<CoveringOutcome, Error> {
    let n = common_dimension(zs)?;
    if z.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: z.len(),
        });
    }
    if bound == 0 || bound > MAX_COVERING_BOUND {
        return Err(Error::BadBound);
    }
    let m = zs.len();

    // Rational relaxations first; infeasibility there is conclusive.
    let r_relax_rows: Vec<LinearRow> = (0..n)
        .map(|i| {
            LinearRow::ge(
                zs.iter()
                    .map(|zj| Rational::from_integer(zj.entries()[i].into()))
                    .collect(),
                Rational::from_integer(z.entries()[i].into()),
            )
        })
        .collect();
    let r_relax = LinearSystem::new(r_relax_rows).expect("n >= 1");
    if rational_feasible(&r_relax, true).is_none() {
        return Ok(CoveringOutcome::Infeasible);
    }
    for zj in zs {
        let t_rows: Vec<LinearRow> = (0..n)
            .map(|i| {
                LinearRow::ge(
                    vec![Rational::from_integer(z.entries()[i].into())],
                    Rational::from_integer(zj.entries()[i].into()),
                )
            })
            .collect();
        let t_relax = LinearSystem::new(t_rows).expect("n >= 1");
        if rational_feasible(&t_relax, true).is_none() {
            return Ok(CoveringOutcome::Infeasible);
        }
    }

    // Bounded integer search. Indices enumerate r lexicographically, so
    // the first match is the lexicographically smallest valid r.
    let base = bound + 1;
    let count = (0..m).try_fold(1u128, |acc, _| acc.checked_mul(base as u128))
        .filter(|&c| c <= u64::MAX as u128)
        .ok_or(Error::SearchSpaceTooLarge(u128::MAX))?;
    if count > (1u128 << 40) {
        return Err(Error::SearchSpaceTooLarge(count));
    }
    let decode = |idx: u64| {
        let mut r = vec![0u64; m];
        let mut rem = idx;
        for j in (0..m).rev() {
            r[j] = rem % base;
            rem /= base;
        }
        r
    };
    let r = match exec::first_match(count as u64, |idx| dominates(zs, &decode(idx), z)) {
        Some(idx) => decode(idx),
        None => return Ok(CoveringOutcome::Unknown),
    };

    let mut t = Vec::with_capacity(m);
    for zj in zs {
        match (0..=bound).find(|&cand| scalar_dominates(cand, z, zj)) {
            Some(tj) => t.push(tj),
            None => return Ok(CoveringOutcome::Unknown),
        }
    }

    let certificate = CoveringCertificate { r, t };
    assert!(
        verify_covering(z, zs, &certificate),
        "internal error: covering certificate failed exact re-verification"
    );
    Ok(CoveringOutcome::Certified(certificate))
}

/// Exact check of both inequality families of a covering certificate.
pub fn verify_covering(z: &ZVector, zs: &[ZVector], cert: &CoveringCertificate) -> bool {
    cert.r.len() == zs.len()
        && cert.t.len() == zs.len()
        && dominates(zs, &cert.r, z)
        && zs
            .iter()
            .zip(&cert.t)
            .all(|(zj, &tj)| scalar_dominates(tj, z, zj))
}
