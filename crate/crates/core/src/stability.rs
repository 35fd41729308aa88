//! The stability decision pipeline.
//!
//! Generators are first partitioned by degree modulo doubling, which
//! reduces total stability of the whole module to total stability of
//! the class modules. Under a term order the class criterion is an
//! exact sign condition on leading coefficients, so the verdict is
//! definitive in both directions. Under a z-grading, a strict
//! positivity witness for the highest-degree parts of a class
//! certifies stability; the search for a witness is one-sided, so a
//! failed search surfaces as `Unknown`, never as a refutation. A
//! family of certified directions whose nonnegative integer
//! combination is strictly positive in every coordinate upgrades the
//! per-grading results to stability with respect to a
//! finite-dimensional filtration, with closedness and the failure of
//! the strong moment property (in two or more variables) as recorded
//! consequences.
//!
//! Every `Stable` verdict carries a certificate that
//! [`verify_certificate`] re-derives from scratch with exact
//! arithmetic.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::feasibility::{positive_combination, verify_multipliers, FeasibilityOutcome};
use crate::grading::{z_max_part, GradingSpec, TermOrder, TermOrderKind, ZVector};
use crate::poly::{ExponentVector, Polynomial, VariableContext};
use crate::rational::{rational_pow, serde_rational, serde_rational_vec, Rational};
use crate::witness::{find_positivity_witness, PositivityWitness, SearchConfig};

/// A named generator list for a quadratic module. The constant
/// generator 1 is implicit and participates in every check as member
/// index 0; generator `i` of the list is member index `i + 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorSystem {
    ctx: VariableContext,
    generators: Vec<Polynomial>,
}

impl GeneratorSystem {
    pub fn new(ctx: VariableContext, generators: Vec<Polynomial>) -> Result<Self, Error> {
        if generators.is_empty() {
            return Err(Error::NoGenerators);
        }
        for (i, g) in generators.iter().enumerate() {
            if g.n_vars() != ctx.len() {
                return Err(Error::DimensionMismatch {
                    expected: ctx.len(),
                    found: g.n_vars(),
                });
            }
            if g.is_zero() {
                return Err(Error::ZeroGenerator { index: i + 1 });
            }
        }
        Ok(Self { ctx, generators })
    }

    pub fn ctx(&self) -> &VariableContext {
        &self.ctx
    }

    pub fn n_vars(&self) -> usize {
        self.ctx.len()
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    /// Member polynomial by partition index: 0 is the implicit 1.
    pub fn member(&self, index: usize) -> Polynomial {
        if index == 0 {
            Polynomial::one(self.n_vars())
        } else {
            self.generators[index - 1].clone()
        }
    }

    pub fn member_count(&self) -> usize {
        self.generators.len() + 1
    }

    /// Closes the generator list under square-free products, so the
    /// preordering generated by the original list can be checked with
    /// the quadratic-module pipeline. Exact duplicates are dropped,
    /// first occurrence wins; products are enumerated in binary-counter
    /// order over the subsets.
    pub fn preordering_closure(&self) -> Result<GeneratorSystem, Error> {
        let t = self.generators.len();
        if t > 16 {
            return Err(Error::TooManyGenerators(t));
        }
        let mut products: Vec<Polynomial> = Vec::new();
        for mask in 1u32..(1u32 << t) {
            let mut prod = Polynomial::one(self.n_vars());
            for (j, g) in self.generators.iter().enumerate() {
                if mask & (1 << j) != 0 {
                    prod = prod.mul(g);
                }
            }
            if !products.contains(&prod) {
                products.push(prod);
            }
        }
        GeneratorSystem::new(self.ctx.clone(), products)
    }
}

/// One residue class of the mod-2 partition. `members` are partition
/// indices (0 = implicit 1), ascending.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResidueClass {
    pub residue: String,
    pub members: Vec<usize>,
}

/// Partition of the members by degree modulo twice the degree group,
/// classes ordered by residue label.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassPartition {
    pub grading: GradingSpec,
    pub classes: Vec<ResidueClass>,
}

/// Groups the members (including the implicit 1, which always lands in
/// the residue-0 class) by degree mod 2Gamma under the given grading.
pub fn partition_mod_two(sys: &GeneratorSystem, grading: &GradingSpec) -> ClassPartition {
    assert_eq!(
        grading.n_vars(),
        sys.n_vars(),
        "grading dimension must match the system"
    );
    let mut by_residue: std::collections::BTreeMap<String, Vec<usize>> =
        std::collections::BTreeMap::new();
    for index in 0..sys.member_count() {
        let member = sys.member(index);
        let residue = grading
            .degree(&member)
            .residue_mod_two()
            .expect("members are nonzero");
        by_residue.entry(residue).or_default().push(index);
    }
    ClassPartition {
        grading: grading.clone(),
        classes: by_residue
            .into_iter()
            .map(|(residue, members)| ResidueClass { residue, members })
            .collect(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StabilityStatus {
    Stable,
    NotTotallyStable,
    Unknown,
}

/// What a `Stable` verdict means. Stability with respect to a
/// filtration of finite-dimensional subspaces (and its closedness and
/// moment-property consequences) is only claimed when the certificate
/// ends in a strictly positive direction combination or a
/// degree-then-lex order; a pure-lex or single-grading certificate
/// certifies total stability for that grading only.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum VerdictScope {
    FiniteFiltration,
    GivenGradingOnly,
}

/// Named results applied along the way, recorded in order on the
/// verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ChainStep {
    #[serde(rename = "modtwo")]
    ModTwo,
    #[serde(rename = "stabmain")]
    StabMain,
    #[serde(rename = "xxx")]
    Xxx,
    #[serde(rename = "qcover")]
    QCover,
    #[serde(rename = "cost")]
    Cost,
    #[serde(rename = "all")]
    All,
    #[serde(rename = "term-order-criterion")]
    TermOrderCriterion,
}

impl ChainStep {
    pub fn name(&self) -> &'static str {
        match self {
            ChainStep::ModTwo => "modtwo",
            ChainStep::StabMain => "stabmain",
            ChainStep::Xxx => "xxx",
            ChainStep::QCover => "qcover",
            ChainStep::Cost => "cost",
            ChainStep::All => "all",
            ChainStep::TermOrderCriterion => "term-order-criterion",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub struct Consequences {
    pub closed: bool,
    pub fails_smp: bool,
}

/// Per-class witness for one grading direction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassWitness {
    pub residue: String,
    pub members: Vec<usize>,
    pub witness: PositivityWitness,
}

/// Certified total stability with respect to one z-grading.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DirectionCertificate {
    pub z: ZVector,
    pub classes: Vec<ClassWitness>,
}

/// Leading data of one residue class under a term order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassSignAnalysis {
    pub residue: String,
    pub members: Vec<usize>,
    pub leading_exponents: Vec<ExponentVector>,
    #[serde(with = "serde_rational_vec")]
    pub leading_coefficients: Vec<Rational>,
}

impl ClassSignAnalysis {
    /// The class rule: leading coefficients share one sign, and are all
    /// positive when the residue is 0 (the class of the implicit 1).
    pub fn satisfies_sign_rule(&self) -> bool {
        let positives = self.leading_coefficients.iter().filter(|c| c.is_positive()).count();
        let negatives = self.leading_coefficients.len() - positives;
        if self.residue.split(',').all(|p| p == "0") {
            negatives == 0
        } else {
            positives == 0 || negatives == 0
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum StabilityCertificate {
    /// Witnessed directions, optionally combined by multipliers with a
    /// strictly positive sum.
    ZGradings {
        directions: Vec<DirectionCertificate>,
        #[serde(with = "crate::rational::serde_bigint_vec_opt")]
        multipliers: Option<Vec<BigInt>>,
    },
    /// Complete class analysis under a term order.
    TermOrder {
        order: TermOrder,
        classes: Vec<ClassSignAnalysis>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Evidence {
    /// A residue class whose leading coefficients violate the sign
    /// rule; definitive for the given term order.
    ViolatingClass {
        residue: String,
        members: Vec<usize>,
        #[serde(with = "serde_rational_vec")]
        leading_coefficients: Vec<Rational>,
    },
    /// The witness search ran out of budget on this class.
    SearchExhausted { z: ZVector, residue: String },
    /// Partial progress of the multi-direction pipeline: which
    /// directions were certified, which stayed unknown, and the Farkas
    /// witness blocking the positive combination, if one was computed.
    Obstruction {
        stable_directions: Vec<ZVector>,
        unknown_directions: Vec<ZVector>,
        farkas: Option<ExponentVector>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabilityVerdict {
    pub status: StabilityStatus,
    pub scope: Option<VerdictScope>,
    pub chain: Vec<ChainStep>,
    pub consequences: Consequences,
    pub certificate: Option<StabilityCertificate>,
    pub evidence: Option<Evidence>,
}

impl StabilityVerdict {
    fn unknown(chain: Vec<ChainStep>, evidence: Evidence) -> Self {
        Self {
            status: StabilityStatus::Unknown,
            scope: None,
            chain,
            consequences: Consequences::default(),
            certificate: None,
            evidence: Some(evidence),
        }
    }
}

fn leading_of_member(
    sys: &GeneratorSystem,
    ord: &TermOrder,
    index: usize,
) -> (ExponentVector, Rational) {
    if index == 0 {
        (ExponentVector::zeros(sys.n_vars()), Rational::one())
    } else {
        crate::grading::term_order_leading(&sys.generators()[index - 1], ord)
            .expect("generators are nonzero")
    }
}

fn term_order_analysis(sys: &GeneratorSystem, ord: &TermOrder) -> Vec<ClassSignAnalysis> {
    let partition = partition_mod_two(
        sys,
        &GradingSpec::TermOrder { order: ord.clone() },
    );
    partition
        .classes
        .iter()
        .map(|class| {
            let mut exps = Vec::with_capacity(class.members.len());
            let mut coeffs = Vec::with_capacity(class.members.len());
            for &i in &class.members {
                let (e, c) = leading_of_member(sys, ord, i);
                exps.push(e);
                coeffs.push(c);
            }
            ClassSignAnalysis {
                residue: class.residue.clone(),
                members: class.members.clone(),
                leading_exponents: exps,
                leading_coefficients: coeffs,
            }
        })
        .collect()
}

/// Exact and complete total-stability test under a term order: after
/// the mod-2 reduction the highest-degree parts are single monomials,
/// so the verdict is a sign condition on the leading coefficients and
/// never `Unknown`.
pub fn term_order_total_stability(sys: &GeneratorSystem, ord: &TermOrder) -> StabilityVerdict {
    assert_eq!(ord.n_vars(), sys.n_vars(), "order dimension must match the system");
    let classes = term_order_analysis(sys, ord);
    let violation = classes.iter().find(|c| !c.satisfies_sign_rule()).cloned();
    let chain = vec![ChainStep::ModTwo, ChainStep::TermOrderCriterion];
    match violation {
        None => {
            let (scope, consequences) = match ord.kind() {
                TermOrderKind::Deglex => (
                    VerdictScope::FiniteFiltration,
                    Consequences {
                        closed: true,
                        fails_smp: sys.n_vars() >= 2,
                    },
                ),
                TermOrderKind::Lex => (VerdictScope::GivenGradingOnly, Consequences::default()),
            };
            StabilityVerdict {
                status: StabilityStatus::Stable,
                scope: Some(scope),
                chain,
                consequences,
                certificate: Some(StabilityCertificate::TermOrder {
                    order: ord.clone(),
                    classes,
                }),
                evidence: None,
            }
        }
        Some(bad) => StabilityVerdict {
            status: StabilityStatus::NotTotallyStable,
            scope: Some(VerdictScope::GivenGradingOnly),
            chain,
            consequences: Consequences::default(),
            certificate: Some(StabilityCertificate::TermOrder {
                order: ord.clone(),
                classes,
            }),
            evidence: Some(Evidence::ViolatingClass {
                residue: bad.residue,
                members: bad.members,
                leading_coefficients: bad.leading_coefficients,
            }),
        },
    }
}

fn max_part_of_member(sys: &GeneratorSystem, z: &ZVector, index: usize) -> Polynomial {
    if index == 0 {
        Polynomial::one(sys.n_vars())
    } else {
        z_max_part(&sys.generators()[index - 1], z).expect("generators are nonzero")
    }
}

/// Searches per-class positivity witnesses for the highest-degree
/// parts under the z-grading. All classes witnessed means the module
/// is totally stable with respect to this grading; a failed search is
/// reported as `Unknown`.
pub fn z_total_stability(
    sys: &GeneratorSystem,
    z: &ZVector,
    cfg: &SearchConfig,
) -> Result<StabilityVerdict, Error> {
    if z.len() != sys.n_vars() {
        return Err(Error::DimensionMismatch {
            expected: sys.n_vars(),
            found: z.len(),
        });
    }
    let partition = partition_mod_two(sys, &GradingSpec::Z { z: z.clone() });
    let mut classes = Vec::with_capacity(partition.classes.len());
    for class in &partition.classes {
        let parts: Vec<Polynomial> = class
            .members
            .iter()
            .map(|&i| max_part_of_member(sys, z, i))
            .collect();
        match find_positivity_witness(&parts, cfg)? {
            Some(witness) => classes.push(ClassWitness {
                residue: class.residue.clone(),
                members: class.members.clone(),
                witness,
            }),
            None => {
                return Ok(StabilityVerdict::unknown(
                    vec![ChainStep::ModTwo, ChainStep::StabMain],
                    Evidence::SearchExhausted {
                        z: z.clone(),
                        residue: class.residue.clone(),
                    },
                ))
            }
        }
    }
    Ok(StabilityVerdict {
        status: StabilityStatus::Stable,
        scope: Some(VerdictScope::GivenGradingOnly),
        chain: vec![ChainStep::ModTwo, ChainStep::StabMain],
        consequences: Consequences::default(),
        certificate: Some(StabilityCertificate::ZGradings {
            directions: vec![DirectionCertificate {
                z: z.clone(),
                classes,
            }],
            multipliers: None,
        }),
        evidence: None,
    })
}

/// The composed pipeline: certifies total stability per direction,
/// then looks for nonnegative integer multipliers whose direction
/// combination is strictly positive in every coordinate. Success means
/// stability with respect to a finite-dimensional filtration, hence
/// closedness, and failure of the strong moment property when the
/// ambient dimension is at least two. Anything short of that is
/// `Unknown` with partial evidence, never a refutation.
pub fn stability_verdict(
    sys: &GeneratorSystem,
    zs: &[ZVector],
    cfg: &SearchConfig,
) -> Result<StabilityVerdict, Error> {
    if zs.is_empty() {
        return Err(Error::NoDirections);
    }
    let mut directions = Vec::new();
    let mut stable_zs = Vec::new();
    let mut unknown_zs = Vec::new();
    for z in zs {
        let verdict = z_total_stability(sys, z, cfg)?;
        match verdict.certificate {
            Some(StabilityCertificate::ZGradings {
                directions: mut dir,
                ..
            }) if verdict.status == StabilityStatus::Stable => {
                stable_zs.push(z.clone());
                directions.append(&mut dir);
            }
            _ => unknown_zs.push(z.clone()),
        }
    }

    if stable_zs.is_empty() {
        return Ok(StabilityVerdict::unknown(
            vec![ChainStep::ModTwo, ChainStep::StabMain],
            Evidence::Obstruction {
                stable_directions: stable_zs,
                unknown_directions: unknown_zs,
                farkas: None,
            },
        ));
    }

    match positive_combination(&stable_zs)? {
        FeasibilityOutcome::Multipliers { r } => Ok(StabilityVerdict {
            status: StabilityStatus::Stable,
            scope: Some(VerdictScope::FiniteFiltration),
            chain: vec![
                ChainStep::ModTwo,
                ChainStep::StabMain,
                ChainStep::Xxx,
                ChainStep::QCover,
                ChainStep::Cost,
                ChainStep::All,
            ],
            consequences: Consequences {
                closed: true,
                fails_smp: sys.n_vars() >= 2,
            },
            certificate: Some(StabilityCertificate::ZGradings {
                directions,
                multipliers: Some(r),
            }),
            evidence: None,
        }),
        FeasibilityOutcome::FarkasWitness { delta } => Ok(StabilityVerdict::unknown(
            vec![ChainStep::ModTwo, ChainStep::StabMain, ChainStep::All],
            Evidence::Obstruction {
                stable_directions: stable_zs,
                unknown_directions: unknown_zs,
                farkas: Some(delta),
            },
        )),
    }
}

fn expected_meta(cert: &StabilityCertificate, n: usize) -> (VerdictScope, Consequences) {
    match cert {
        StabilityCertificate::ZGradings {
            multipliers: Some(_),
            ..
        } => (
            VerdictScope::FiniteFiltration,
            Consequences {
                closed: true,
                fails_smp: n >= 2,
            },
        ),
        StabilityCertificate::ZGradings {
            multipliers: None, ..
        } => (VerdictScope::GivenGradingOnly, Consequences::default()),
        StabilityCertificate::TermOrder { order, .. } => match order.kind() {
            TermOrderKind::Deglex => (
                VerdictScope::FiniteFiltration,
                Consequences {
                    closed: true,
                    fails_smp: n >= 2,
                },
            ),
            TermOrderKind::Lex => (VerdictScope::GivenGradingOnly, Consequences::default()),
        },
    }
}

fn shape_err(msg: &str) -> Error {
    Error::CertificateShape(msg.to_string())
}

/// Re-derives every certified inequality of a verdict from the system
/// alone: partitions, highest-degree parts, witness values, multiplier
/// sums and sign analyses are all recomputed exactly. Returns `false`
/// when any link fails; structural mismatch between the verdict and
/// the system is an error.
pub fn verify_certificate(v: &StabilityVerdict, sys: &GeneratorSystem) -> Result<bool, Error> {
    let n = sys.n_vars();
    match v.status {
        StabilityStatus::Unknown => return Ok(true),
        StabilityStatus::Stable | StabilityStatus::NotTotallyStable => {}
    }
    let cert = match &v.certificate {
        Some(c) => c,
        None => return Ok(false),
    };

    match cert {
        StabilityCertificate::ZGradings {
            directions,
            multipliers,
        } => {
            if directions.is_empty() {
                return Err(shape_err("no directions in certificate"));
            }
            if v.status != StabilityStatus::Stable {
                // the z-route never produces definitive negatives
                return Ok(false);
            }
            for dir in directions {
                if dir.z.len() != n {
                    return Err(shape_err("direction dimension mismatch"));
                }
                let partition = partition_mod_two(sys, &GradingSpec::Z { z: dir.z.clone() });
                if partition.classes.len() != dir.classes.len() {
                    return Ok(false);
                }
                for (expected, claimed) in partition.classes.iter().zip(&dir.classes) {
                    if claimed.members.iter().any(|&i| i >= sys.member_count()) {
                        return Err(shape_err("member index out of range"));
                    }
                    if claimed.witness.point.len() != n
                        || claimed.witness.values.len() != claimed.members.len()
                    {
                        return Err(shape_err("witness shape mismatch"));
                    }
                    if expected.residue != claimed.residue || expected.members != claimed.members {
                        return Ok(false);
                    }
                    for (&i, stored) in claimed.members.iter().zip(&claimed.witness.values) {
                        let part = max_part_of_member(sys, &dir.z, i);
                        let value = part
                            .evaluate(&claimed.witness.point)
                            .expect("dimension checked above");
                        if &value != stored || !value.is_positive() {
                            return Ok(false);
                        }
                    }
                }
            }
            if let Some(r) = multipliers {
                let zs: Vec<ZVector> = directions.iter().map(|d| d.z.clone()).collect();
                if !verify_multipliers(&zs, r) {
                    return Ok(false);
                }
            }
            let (scope, consequences) = expected_meta(cert, n);
            Ok(v.scope == Some(scope) && v.consequences == consequences)
        }
        StabilityCertificate::TermOrder { order, classes } => {
            if order.n_vars() != n {
                return Err(shape_err("order dimension mismatch"));
            }
            let recomputed = term_order_analysis(sys, order);
            if &recomputed != classes {
                return Ok(false);
            }
            let violations: Vec<&ClassSignAnalysis> = recomputed
                .iter()
                .filter(|c| !c.satisfies_sign_rule())
                .collect();
            match v.status {
                StabilityStatus::Stable => {
                    if !violations.is_empty() {
                        return Ok(false);
                    }
                    let (scope, consequences) = expected_meta(cert, n);
                    Ok(v.scope == Some(scope) && v.consequences == consequences)
                }
                StabilityStatus::NotTotallyStable => match &v.evidence {
                    Some(Evidence::ViolatingClass { residue, .. }) => {
                        Ok(violations.iter().any(|c| &c.residue == residue))
                    }
                    _ => Ok(false),
                },
                StabilityStatus::Unknown => unreachable!("handled above"),
            }
        }
    }
}

/// A tentacle: the image of a box `K` under
/// `(x_1, ..., x_n) -> (lambda^{z_1} x_1, ..., lambda^{z_n} x_n)`
/// for `lambda >= 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TentacleSpec {
    pub z: ZVector,
    /// Closed rational intervals with nonempty interior, one per
    /// coordinate.
    pub intervals: Vec<(Rational, Rational)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TentacleViolation {
    /// 1-based generator index.
    pub generator: usize,
    #[serde(with = "serde_rational")]
    pub lambda: Rational,
    #[serde(with = "serde_rational_vec")]
    pub point: Vec<Rational>,
    #[serde(with = "serde_rational")]
    pub value: Rational,
}

/// Result of sampling generators over a tentacle lattice. A violation
/// falsifies claimed tentacle containment; an empty list is evidence,
/// not proof.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TentacleReport {
    pub points_checked: u64,
    pub violations: Vec<TentacleViolation>,
}

const MAX_LATTICE_POINTS: u128 = 1 << 20;

/// Evaluates every generator on a `grid^n` lattice over the box,
/// scaled by each `lambda`, and reports exact negative values.
pub fn tentacle_sample_check(
    sys: &GeneratorSystem,
    spec: &TentacleSpec,
    lambdas: &[Rational],
    grid: u32,
) -> Result<TentacleReport, Error> {
    let n = sys.n_vars();
    if spec.z.len() != n || spec.intervals.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: spec.z.len().max(spec.intervals.len()),
        });
    }
    if grid == 0 {
        return Err(Error::BadBound);
    }
    if lambdas.iter().any(|l| l < &Rational::one()) {
        return Err(Error::LambdaBelowOne);
    }
    for (i, (lo, hi)) in spec.intervals.iter().enumerate() {
        if lo >= hi {
            return Err(Error::DegenerateBox(i));
        }
    }
    let total = (grid as u128).checked_pow(n as u32).ok_or(Error::SearchSpaceTooLarge(u128::MAX))?;
    if total > MAX_LATTICE_POINTS {
        return Err(Error::SearchSpaceTooLarge(total));
    }

    // Lattice coordinates per axis; a single-point grid samples the
    // midpoint.
    let axes: Vec<Vec<Rational>> = spec
        .intervals
        .iter()
        .map(|(lo, hi)| {
            if grid == 1 {
                vec![(lo + hi) / Rational::from_integer(2.into())]
            } else {
                (0..grid)
                    .map(|t| {
                        lo + (hi - lo) * Rational::new(t.into(), (grid - 1).into())
                    })
                    .collect()
            }
        })
        .collect();

    let mut report = TentacleReport {
        points_checked: 0,
        violations: Vec::new(),
    };
    for lambda in lambdas {
        let powers: Vec<Rational> = spec
            .z
            .entries()
            .iter()
            .map(|&w| rational_pow(lambda, w))
            .collect();
        let mut index = vec![0usize; n];
        loop {
            let point: Vec<Rational> = (0..n).map(|i| &powers[i] * &axes[i][index[i]]).collect();
            report.points_checked += 1;
            for (g, generator) in sys.generators().iter().enumerate() {
                let value = generator.evaluate(&point).expect("dimensions match");
                if value.is_negative() {
                    report.violations.push(TentacleViolation {
                        generator: g + 1,
                        lambda: lambda.clone(),
                        point: point.clone(),
                        value,
                    });
                }
            }
            // advance the multi-index
            let mut axis = 0;
            loop {
                if axis == n {
                    break;
                }
                index[axis] += 1;
                if index[axis] < axes[axis].len() {
                    break;
                }
                index[axis] = 0;
                axis += 1;
            }
            if axis == n {
                break;
            }
        }
    }
    Ok(report)
}

const MAX_SUGGEST_POINTS: u128 = 1 << 22;

/// Enumerates primitive integer directions with sup-norm at most
/// `bound`, in ascending lexicographic order of their entries. Both a
/// vector and its negative are kept: they induce different gradings.
pub fn suggest_z_vectors(n: usize, bound: i64) -> Result<Vec<ZVector>, Error> {
    if bound < 1 {
        return Err(Error::BadBound);
    }
    assert!(n >= 1, "need at least one variable");
    let width = (2 * bound + 1) as u128;
    let total = (0..n).try_fold(1u128, |acc, _| acc.checked_mul(width))
        .ok_or(Error::SearchSpaceTooLarge(u128::MAX))?;
    if total > MAX_SUGGEST_POINTS {
        return Err(Error::SearchSpaceTooLarge(total));
    }

    let mut out = Vec::new();
    let mut entries = vec![-bound; n];
    'outer: loop {
        let gcd = entries
            .iter()
            .fold(0u64, |acc, &w| acc.gcd(&w.unsigned_abs()));
        if gcd == 1 {
            out.push(ZVector::new(entries.clone()).expect("nonzero since gcd is 1"));
        }
        // advance counter, last coordinate fastest
        let mut axis = n;
        loop {
            if axis == 0 {
                break 'outer;
            }
            axis -= 1;
            if entries[axis] < bound {
                entries[axis] += 1;
                for e in entries.iter_mut().skip(axis + 1) {
                    *e = -bound;
                }
                break;
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_polynomial;
    use num_traits::Zero;

    fn system(vars: &[&str], gens: &[&str]) -> GeneratorSystem {
        let ctx = VariableContext::new(vars.to_vec()).unwrap();
        let polys = gens
            .iter()
            .map(|g| parse_polynomial(g, &ctx).unwrap())
            .collect();
        GeneratorSystem::new(ctx, polys).unwrap()
    }

    fn zv(entries: &[i64]) -> ZVector {
        ZVector::new(entries.to_vec()).unwrap()
    }

    #[test]
    fn system_validation() {
        let ctx = VariableContext::new(["x", "y"]).unwrap();
        assert!(matches!(
            GeneratorSystem::new(ctx.clone(), vec![]),
            Err(Error::NoGenerators)
        ));
        assert!(matches!(
            GeneratorSystem::new(ctx, vec![Polynomial::zero(2)]),
            Err(Error::ZeroGenerator { index: 1 })
        ));
    }

    #[test]
    fn partition_by_z_parity() {
        let sys = system(&["x", "y"], &["x", "y", "1 - x*y"]);
        let partition = partition_mod_two(&sys, &GradingSpec::Z { z: zv(&[1, 1]) });
        // degrees: 1 -> 0, x -> 1, y -> 1, 1 - xy -> 2
        assert_eq!(partition.classes.len(), 2);
        assert_eq!(partition.classes[0].residue, "0");
        assert_eq!(partition.classes[0].members, vec![0, 3]);
        assert_eq!(partition.classes[1].residue, "1");
        assert_eq!(partition.classes[1].members, vec![1, 2]);
    }

    #[test]
    fn partition_by_term_order_gives_singletons() {
        let sys = system(&["x", "y"], &["x", "y", "1 - x*y"]);
        let ord = TermOrder::parse_spec("deglex:x,y", sys.ctx()).unwrap();
        let partition = partition_mod_two(&sys, &GradingSpec::TermOrder { order: ord });
        // leading exponents (0,0), (1,0), (0,1), (1,1): four singleton classes
        assert_eq!(partition.classes.len(), 4);
        for class in &partition.classes {
            assert_eq!(class.members.len(), 1);
        }
        assert_eq!(partition.classes[0].residue, "0,0");
        assert_eq!(partition.classes[0].members, vec![0]);
    }

    #[test]
    fn partition_single_even_generator() {
        let sys = system(&["x", "y"], &["x^2"]);
        let partition = partition_mod_two(&sys, &GradingSpec::Z { z: zv(&[1, 0]) });
        assert_eq!(partition.classes.len(), 1);
        assert_eq!(partition.classes[0].residue, "0");
        assert_eq!(partition.classes[0].members, vec![0, 1]);
    }

    #[test]
    fn term_order_verdicts() {
        let m1 = system(&["x", "y"], &["x", "y", "1 - x*y"]);
        let ord = TermOrder::parse_spec("deglex:x,y", m1.ctx()).unwrap();
        let v = term_order_total_stability(&m1, &ord);
        assert_eq!(v.status, StabilityStatus::Stable);
        assert_eq!(v.scope, Some(VerdictScope::FiniteFiltration));
        assert!(v.consequences.closed && v.consequences.fails_smp);
        assert!(verify_certificate(&v, &m1).unwrap());

        let m2 = system(&["x", "y"], &["x - 1/2", "y - 1/2", "1 - x*y"]);
        let v = term_order_total_stability(&m2, &ord);
        assert_eq!(v.status, StabilityStatus::Stable);
        assert!(verify_certificate(&v, &m2).unwrap());

        let bad = system(&["x", "y"], &["x", "-x"]);
        let v = term_order_total_stability(&bad, &ord);
        assert_eq!(v.status, StabilityStatus::NotTotallyStable);
        match &v.evidence {
            Some(Evidence::ViolatingClass { residue, members, .. }) => {
                assert_eq!(residue, "1,0");
                assert_eq!(members, &vec![1, 2]);
            }
            other => panic!("expected violating class, got {other:?}"),
        }
        assert!(verify_certificate(&v, &bad).unwrap());
    }

    #[test]
    fn lex_verdict_has_no_consequences() {
        let m1 = system(&["x", "y"], &["x", "y", "1 - x*y"]);
        let ord = TermOrder::parse_spec("lex:x,y", m1.ctx()).unwrap();
        let v = term_order_total_stability(&m1, &ord);
        assert_eq!(v.status, StabilityStatus::Stable);
        assert_eq!(v.scope, Some(VerdictScope::GivenGradingOnly));
        assert!(!v.consequences.closed && !v.consequences.fails_smp);
        assert!(verify_certificate(&v, &m1).unwrap());
    }

    #[test]
    fn z_total_stability_on_the_parabola_strip() {
        let sys = system(&["x", "y"], &["x", "y - x^2", "2*x^2 - y"]);
        let v = z_total_stability(&sys, &zv(&[1, 2]), &SearchConfig::default()).unwrap();
        assert_eq!(v.status, StabilityStatus::Stable);
        assert_eq!(v.scope, Some(VerdictScope::GivenGradingOnly));
        assert!(verify_certificate(&v, &sys).unwrap());
    }

    #[test]
    fn z_total_stability_per_class_splits_signs() {
        // max parts under (1,0): x, y, -xy; no single point works but the
        // classes {1, y} and {x, 1 - xy + y -> -xy} have separate witnesses.
        let sys = system(&["x", "y"], &["x", "y", "1 - (x - 1)*y"]);
        let v = z_total_stability(&sys, &zv(&[1, 0]), &SearchConfig::default()).unwrap();
        assert_eq!(v.status, StabilityStatus::Stable);
        assert!(verify_certificate(&v, &sys).unwrap());
    }

    #[test]
    fn z_total_stability_trivial_direction() {
        let sys = system(&["x", "y"], &["x"]);
        let v = z_total_stability(&sys, &zv(&[0, 1]), &SearchConfig::default()).unwrap();
        assert_eq!(v.status, StabilityStatus::Stable);
        assert!(verify_certificate(&v, &sys).unwrap());
    }

    #[test]
    fn verdict_with_farkas_obstruction() {
        let sys = system(&["x", "y"], &["x", "y"]);
        let v = stability_verdict(
            &sys,
            &[zv(&[1, -1]), zv(&[-1, 1])],
            &SearchConfig::default(),
        )
        .unwrap();
        assert_eq!(v.status, StabilityStatus::Unknown);
        match &v.evidence {
            Some(Evidence::Obstruction { farkas, .. }) => {
                assert_eq!(farkas, &Some(ExponentVector::new(vec![1, 1])));
            }
            other => panic!("expected obstruction, got {other:?}"),
        }
    }

    #[test]
    fn tampered_certificates_fail_verification() {
        let sys = system(&["x", "y"], &["x", "y - x^2", "2*x^2 - y"]);
        let good = stability_verdict(&sys, &[zv(&[1, 2])], &SearchConfig::default()).unwrap();
        assert_eq!(good.status, StabilityStatus::Stable);
        assert!(verify_certificate(&good, &sys).unwrap());

        let mut tampered = good.clone();
        if let Some(StabilityCertificate::ZGradings { directions, .. }) =
            tampered.certificate.as_mut()
        {
            directions[0].classes[0].witness.values[0] += Rational::one();
        }
        assert!(!verify_certificate(&tampered, &sys).unwrap());

        let mut tampered = good.clone();
        if let Some(StabilityCertificate::ZGradings { multipliers, .. }) =
            tampered.certificate.as_mut()
        {
            *multipliers = Some(vec![BigInt::zero()]);
        }
        assert!(!verify_certificate(&tampered, &sys).unwrap());

        let mut tampered = good;
        if let Some(StabilityCertificate::ZGradings { directions, .. }) =
            tampered.certificate.as_mut()
        {
            directions[0].classes[0].residue = "1".to_string();
        }
        assert!(!verify_certificate(&tampered, &sys).unwrap());
    }

    #[test]
    fn preordering_closure_products() {
        let sys = system(&["x", "y"], &["x", "y"]);
        let closed = sys.preordering_closure().unwrap();
        let expect = system(&["x", "y"], &["x", "y", "x*y"]);
        assert_eq!(closed.generators(), expect.generators());
    }

    #[test]
    fn tentacle_sampling() {
        let sys = system(&["x", "y"], &["x", "y - x^2", "2*x^2 - y"]);
        // box inside x^2 < y < 2x^2 for x in [1, 9/8]
        let spec = TentacleSpec {
            z: zv(&[1, 2]),
            intervals: vec![
                (Rational::from_integer(1.into()), Rational::new(9.into(), 8.into())),
                (Rational::new(3.into(), 2.into()), Rational::new(7.into(), 4.into())),
            ],
        };
        let lambdas = vec![
            Rational::from_integer(1.into()),
            Rational::from_integer(2.into()),
            Rational::from_integer(4.into()),
        ];
        let report = tentacle_sample_check(&sys, &spec, &lambdas, 3).unwrap();
        assert_eq!(report.points_checked, 27);
        assert!(report.violations.is_empty());

        let neg = system(&["x", "y"], &["-x"]);
        let spec = TentacleSpec {
            z: zv(&[1, 0]),
            intervals: vec![
                (Rational::from_integer(1.into()), Rational::from_integer(2.into())),
                (Rational::from_integer(0.into()), Rational::from_integer(1.into())),
            ],
        };
        let report =
            tentacle_sample_check(&neg, &spec, &[Rational::from_integer(1.into())], 2).unwrap();
        assert!(!report.violations.is_empty());
        assert_eq!(report.violations[0].generator, 1);

        let ones = system(&["x", "y"], &["1"]);
        let report =
            tentacle_sample_check(&ones, &spec, &[Rational::from_integer(1.into())], 2).unwrap();
        assert!(report.violations.is_empty());

        assert!(matches!(
            tentacle_sample_check(
                &ones,
                &spec,
                &[Rational::new(1.into(), 2.into())],
                2
            ),
            Err(Error::LambdaBelowOne)
        ));
    }

    #[test]
    fn suggested_directions() {
        let got = suggest_z_vectors(2, 1).unwrap();
        let expect: Vec<ZVector> = [
            [-1, -1],
            [-1, 0],
            [-1, 1],
            [0, -1],
            [0, 1],
            [1, -1],
            [1, 0],
            [1, 1],
        ]
        .iter()
        .map(|e| zv(e))
        .collect();
        assert_eq!(got, expect);

        let got = suggest_z_vectors(1, 1).unwrap();
        assert_eq!(got, vec![zv(&[-1]), zv(&[1])]);

        assert!(matches!(suggest_z_vectors(2, 0), Err(Error::BadBound)));

        // primitivity: (2,2) and (0,2) excluded at bound 2
        let got = suggest_z_vectors(2, 2).unwrap();
        assert!(!got.contains(&zv(&[2, 2])));
        assert!(!got.contains(&zv(&[0, 2])));
        assert!(got.contains(&zv(&[2, 1])));
    }
}
