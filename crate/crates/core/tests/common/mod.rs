//! Shared helpers and independent oracles for the integration suites.
//!
//! Everything here recomputes answers from first principles (exhaustive
//! enumeration, Gaussian elimination on vertex candidates) and never
//! calls into the code paths it is used to check.

#![allow(dead_code)]

use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use qmstab_core::{
    parse_polynomial, ExponentVector, GeneratorSystem, LinearRow, LinearSystem, Polynomial,
    Rational, Relation, VariableContext, ZVector,
};

pub fn ctx(vars: &[&str]) -> VariableContext {
    VariableContext::new(vars.to_vec()).unwrap()
}

pub fn system(vars: &[&str], gens: &[&str]) -> GeneratorSystem {
    let ctx = ctx(vars);
    let polys = gens
        .iter()
        .map(|g| parse_polynomial(g, &ctx).unwrap())
        .collect();
    GeneratorSystem::new(ctx, polys).unwrap()
}

pub fn zv(entries: &[i64]) -> ZVector {
    ZVector::new(entries.to_vec()).unwrap()
}

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// Random nonzero polynomial with small support; deterministic under
/// the caller's RNG.
pub fn random_poly(rng: &mut ChaCha8Rng, n: usize, max_terms: usize, max_exp: u64) -> Polynomial {
    loop {
        let terms = (0..rng.gen_range(1..=max_terms))
            .map(|_| {
                let exp = ExponentVector::new((0..n).map(|_| rng.gen_range(0..=max_exp)).collect());
                let mut c = 0;
                while c == 0 {
                    c = rng.gen_range(-9i64..=9);
                }
                (exp, rat(c))
            })
            .collect::<Vec<_>>();
        let p = Polynomial::from_terms(n, terms);
        if !p.is_zero() {
            return p;
        }
    }
}

/// Random grading vector with entries in `[-5, 5]`, not all zero.
pub fn random_z(rng: &mut ChaCha8Rng, n: usize) -> ZVector {
    loop {
        let entries: Vec<i64> = (0..n).map(|_| rng.gen_range(-5i64..=5)).collect();
        if let Ok(z) = ZVector::new(entries) {
            return z;
        }
    }
}

/// Exhaustive search for a Farkas witness `delta` with sup-norm at most
/// `max_entry`: exists iff some nonzero `delta >= 0` has
/// `delta . z_j <= 0` for all `j`. Independent of the feasibility
/// kernel.
pub fn exhaustive_farkas_exists(zs: &[ZVector], max_entry: u64) -> bool {
    let n = zs[0].len();
    let width = max_entry + 1;
    let total = width.pow(n as u32);
    'candidates: for code in 1..total {
        let mut delta = Vec::with_capacity(n);
        let mut rem = code;
        for _ in 0..n {
            delta.push(rem % width);
            rem /= width;
        }
        for z in zs {
            let dot: i128 = delta
                .iter()
                .zip(z.entries())
                .map(|(&d, &w)| d as i128 * w as i128)
                .sum();
            if dot > 0 {
                continue 'candidates;
            }
        }
        return true;
    }
    false
}

/// Exact Gaussian elimination on a square system; `None` when singular.
fn solve_square(mut a: Vec<Vec<Rational>>, mut b: Vec<Rational>) -> Option<Vec<Rational>> {
    let k = b.len();
    for col in 0..k {
        let pivot = (col..k).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        b.swap(col, pivot);
        let scale = a[col][col].clone();
        for entry in a[col].iter_mut() {
            *entry /= &scale;
        }
        b[col] /= &scale;
        let pivot_row = a[col].clone();
        let pivot_b = b[col].clone();
        for row in 0..k {
            if row != col && !a[row][col].is_zero() {
                let factor = a[row][col].clone();
                for (d, s) in a[row].iter_mut().zip(pivot_row.iter()) {
                    *d -= &factor * s;
                }
                b[row] -= &factor * &pivot_b;
            }
        }
    }
    Some(b)
}

/// Independent feasibility oracle for systems of non-strict rows with
/// small integer data: boxes the polyhedron and enumerates candidate
/// vertices as solutions of square subsystems. The box constant is far
/// larger than any basic solution of the bounded random data used in
/// the suites.
pub fn vertex_enumeration_feasible(sys: &LinearSystem) -> bool {
    assert!(
        sys.rows().iter().all(|r| r.relation == Relation::Ge),
        "oracle covers non-strict systems"
    );
    let k = sys.num_vars();
    let big = rat(100_000_000);
    let mut rows: Vec<(Vec<Rational>, Rational)> = sys
        .rows()
        .iter()
        .map(|r| (r.coeffs.clone(), r.rhs.clone()))
        .collect();
    for i in 0..k {
        let mut lo = vec![Rational::zero(); k];
        lo[i] = Rational::one();
        rows.push((lo, -big.clone()));
        let mut hi = vec![Rational::zero(); k];
        hi[i] = -Rational::one();
        rows.push((hi, -big.clone()));
    }

    let indices: Vec<usize> = (0..rows.len()).collect();
    let mut subset = vec![0usize; k];
    fn combos(
        indices: &[usize],
        k: usize,
        start: usize,
        subset: &mut Vec<usize>,
        depth: usize,
        rows: &[(Vec<Rational>, Rational)],
        sys: &LinearSystem,
    ) -> bool {
        if depth == k {
            let a: Vec<Vec<Rational>> = subset.iter().map(|&i| rows[i].0.clone()).collect();
            let b: Vec<Rational> = subset.iter().map(|&i| rows[i].1.clone()).collect();
            if let Some(point) = solve_square(a, b) {
                if sys.is_satisfied_by(&point) {
                    return true;
                }
            }
            return false;
        }
        for pos in start..indices.len() {
            subset[depth] = indices[pos];
            if combos(indices, k, pos + 1, subset, depth + 1, rows, sys) {
                return true;
            }
        }
        false
    }
    combos(&indices, k, 0, &mut subset, 0, &rows, sys)
}

/// Builds a `>=` system from integer data.
pub fn ge_system(rows: &[(Vec<i64>, i64)]) -> LinearSystem {
    LinearSystem::new(
        rows.iter()
            .map(|(coeffs, rhs)| {
                LinearRow::ge(coeffs.iter().map(|&c| rat(c)).collect(), rat(*rhs))
            })
            .collect(),
    )
    .unwrap()
}

/// The six bundled example systems with their check methods and the
/// expected verdicts used by the golden acceptance runs.
pub enum Method {
    Z(&'static [&'static [i64]]),
    Order(&'static str),
}

pub struct GoldenSystem {
    pub name: &'static str,
    pub vars: &'static [&'static str],
    pub gens: &'static [&'static str],
    pub method: Method,
}

pub const GOLDEN_SYSTEMS: [GoldenSystem; 6] = [
    GoldenSystem {
        name: "parabola-strip",
        vars: &["x", "y"],
        gens: &["x", "y - x^2", "2*x^2 - y"],
        method: Method::Z(&[&[1, 2]]),
    },
    GoldenSystem {
        name: "cross-cylinders",
        vars: &["x", "y"],
        gens: &["x", "y", "1 - (x - 1)*(y - 1)"],
        method: Method::Z(&[&[1, 0], &[0, 1]]),
    },
    GoldenSystem {
        name: "half-cylinder-hyperbola",
        vars: &["x", "y"],
        gens: &["x", "y", "1 - (x - 1)*y"],
        method: Method::Z(&[&[0, 1], &[1, -1]]),
    },
    GoldenSystem {
        name: "narrow-tentacles",
        vars: &["x", "y"],
        gens: &["x", "1 - x^2*y", "x*y + 1"],
        method: Method::Z(&[&[-1, 2], &[1, -1]]),
    },
    GoldenSystem {
        name: "quadrant-hyperbola",
        vars: &["x", "y"],
        gens: &["x", "y", "1 - x*y"],
        method: Method::Order("deglex:x,y"),
    },
    GoldenSystem {
        name: "compact-hyperbola-patch",
        vars: &["x", "y"],
        gens: &["x - 1/2", "y - 1/2", "1 - x*y"],
        method: Method::Order("deglex:x,y"),
    },
];
