//! Measures of noncompactness on the structured class.
//!
//! Every measure here factors through the radii-cone embedding: it evaluates
//! a convex, monotone scalarization of the per-block tail radii of the
//! convexified set, vanishing exactly on compact sets. The catalog is
//! compositional so that convexity, monotonicity and the zero-at-zero
//! normalization are verifiable by construction plus sampling, instead of
//! being trusted on arbitrary user code.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sample::{dyadic, SetSampler};
use crate::sets::{StructuredSet, VElement};

/// Axiom tiers, ordered from weakest to strongest.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MncClass {
    Convex,
    Sublinear,
    Homogeneous,
    Regular,
}

impl MncClass {
    pub fn is_sublinear(self) -> bool {
        self >= MncClass::Sublinear
    }

    pub fn name(self) -> &'static str {
        match self {
            MncClass::Convex => "convex",
            MncClass::Sublinear => "sublinear",
            MncClass::Homogeneous => "homogeneous",
            MncClass::Regular => "regular",
        }
    }
}

/// Norms of the radii vector available to the scalarization catalog.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NormKind {
    Sup,
    Sum,
    Euclid,
}

impl NormKind {
    fn eval(self, v: &[f64]) -> f64 {
        match self {
            NormKind::Sup => v.iter().copied().fold(0.0, f64::max),
            NormKind::Sum => v.iter().sum(),
            NormKind::Euclid => v.iter().map(|x| x * x).sum::<f64>().sqrt(),
        }
    }
}

/// Convex, componentwise-nondecreasing scalarizations with value zero at the
/// origin, built compositionally.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PhiSpec {
    /// `norm(v) ^ power` with `power >= 1`.
    NormPower { norm: NormKind, power: f64 },
    /// `<weights, v>` with nonnegative weights.
    Linear { weights: Vec<f64> },
    /// Nonnegative linear combination of sub-scalarizations.
    Combination { terms: Vec<(f64, PhiSpec)> },
    /// Pointwise max of sub-scalarizations.
    Max { items: Vec<PhiSpec> },
}

impl PhiSpec {
    pub fn eval(&self, v: &[f64]) -> f64 {
        match self {
            PhiSpec::NormPower { norm, power } => {
                let x = norm.eval(v);
                if *power == 1.0 {
                    x
                } else if power.fract() == 0.0 && *power <= 32.0 {
                    x.powi(*power as i32)
                } else {
                    x.powf(*power)
                }
            }
            PhiSpec::Linear { weights } => weights.iter().zip(v).map(|(w, x)| w * x).sum(),
            PhiSpec::Combination { terms } => {
                terms.iter().map(|(c, p)| c * p.eval(v)).sum()
            }
            PhiSpec::Max { items } => items.iter().map(|p| p.eval(v)).fold(0.0, f64::max),
        }
    }

    fn validate(&self, blocks: usize) -> Result<()> {
        match self {
            PhiSpec::NormPower { power, .. } => {
                if !power.is_finite() || *power < 1.0 {
                    return Err(Error::InvalidMncSpec(format!(
                        "norm power must be >= 1, got {power}"
                    )));
                }
            }
            PhiSpec::Linear { weights } => {
                if weights.len() != blocks {
                    return Err(Error::InvalidMncSpec(format!(
                        "linear weights length {} does not match {} blocks",
                        weights.len(),
                        blocks
                    )));
                }
                if weights.iter().any(|w| !w.is_finite() || *w < 0.0) {
                    return Err(Error::InvalidMncSpec("linear weights must be nonnegative".into()));
                }
            }
            PhiSpec::Combination { terms } => {
                if terms.is_empty() {
                    return Err(Error::InvalidMncSpec("empty combination".into()));
                }
                for (c, p) in terms {
                    if !c.is_finite() || *c < 0.0 {
                        return Err(Error::InvalidMncSpec(
                            "combination coefficients must be nonnegative".into(),
                        ));
                    }
                    p.validate(blocks)?;
                }
            }
            PhiSpec::Max { items } => {
                if items.is_empty() {
                    return Err(Error::InvalidMncSpec("empty max".into()));
                }
                for p in items {
                    p.validate(blocks)?;
                }
            }
        }
        Ok(())
    }

    /// Positively homogeneous of degree one by structure.
    fn degree_one(&self) -> bool {
        match self {
            PhiSpec::NormPower { power, .. } => *power == 1.0,
            PhiSpec::Linear { .. } => true,
            PhiSpec::Combination { terms } => terms.iter().all(|(_, p)| p.degree_one()),
            PhiSpec::Max { items } => items.iter().all(PhiSpec::degree_one),
        }
    }

    /// Evaluation stays exact on dyadic inputs (no roots, no fractional
    /// powers), so axiom checks can compare without tolerance.
    fn dyadic_exact(&self) -> bool {
        match self {
            PhiSpec::NormPower { norm, power } => {
                *norm != NormKind::Euclid && power.fract() == 0.0 && *power <= 8.0
            }
            PhiSpec::Linear { .. } => true,
            PhiSpec::Combination { terms } => terms.iter().all(|(_, p)| p.dyadic_exact()),
            PhiSpec::Max { items } => items.iter().all(PhiSpec::dyadic_exact),
        }
    }

    /// Finite set of nonnegative vectors whose pairing max reproduces the
    /// scalarization, when the structure admits one.
    fn finite_functionals(&self, blocks: usize) -> Option<Vec<Vec<f64>>> {
        const CAP: usize = 4096;
        match self {
            PhiSpec::Linear { weights } => Some(vec![weights.clone()]),
            PhiSpec::NormPower { norm, power } if *power == 1.0 => match norm {
                NormKind::Sup => Some((0..blocks).map(|j| unit(blocks, j)).collect()),
                NormKind::Sum => Some(vec![vec![1.0; blocks]]),
                NormKind::Euclid => None,
            },
            PhiSpec::NormPower { .. } => None,
            PhiSpec::Max { items } => {
                let mut out = Vec::new();
                for p in items {
                    out.extend(p.finite_functionals(blocks)?);
                    if out.len() > CAP {
                        return None;
                    }
                }
                Some(out)
            }
            PhiSpec::Combination { terms } => {
                let mut out = vec![vec![0.0; blocks]];
                for (c, p) in terms {
                    let reps = p.finite_functionals(blocks)?;
                    let mut next = Vec::with_capacity(out.len() * reps.len());
                    for x in &out {
                        for y in &reps {
                            next.push(
                                x.iter().zip(y).map(|(a, b)| a + c * b).collect::<Vec<_>>(),
                            );
                        }
                    }
                    if next.len() > CAP {
                        return None;
                    }
                    out = next;
                }
                Some(out)
            }
        }
    }
}

fn unit(k: usize, j: usize) -> Vec<f64> {
    let mut v = vec![0.0; k];
    v[j] = 1.0;
    v
}

/// Declarative description of a measure from the catalog.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MncSpec {
    /// Sup of the tail radii: the ball-covering measure.
    Hausdorff,
    /// Sum of the tail radii across blocks.
    Sum,
    /// Max of pairings with a finite set of nonnegative weight vectors.
    WeightedSup { weights: Vec<Vec<f64>> },
    /// Convex scalarization of the radii vector.
    ConvexOfRadii { phi: PhiSpec },
}

enum Scalarization {
    Catalog(MncSpec),
    /// Constant value regardless of the set; a deliberately broken control
    /// for exercising the axiom fuzzer.
    Constant(f64),
}

/// An evaluable measure: a scalarization of the radii vector plus its
/// declared axiom tier.
pub struct Mnc {
    scalar: Scalarization,
    class: MncClass,
    blocks: usize,
    label: String,
}

impl Mnc {
    pub fn class(&self) -> MncClass {
        self.class
    }

    pub fn blocks(&self) -> usize {
        self.blocks
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn spec(&self) -> Option<&MncSpec> {
        match &self.scalar {
            Scalarization::Catalog(s) => Some(s),
            Scalarization::Constant(_) => None,
        }
    }

    /// The ball-covering measure on a `k`-block model.
    pub fn hausdorff(blocks: usize) -> Mnc {
        make_mnc(MncSpec::Hausdorff, blocks).expect("hausdorff spec is always valid")
    }

    /// Constant control measure; violates the vanishing-on-compacts axiom by
    /// design and exists so the fuzzer's failure paths stay honest.
    pub fn constant_control(blocks: usize, value: f64) -> Mnc {
        Mnc {
            scalar: Scalarization::Constant(value),
            class: MncClass::Regular,
            blocks,
            label: format!("constant({value})"),
        }
    }

    /// Builds a measure with an explicitly declared tier instead of the
    /// derived one. Intended for negative controls, e.g. declaring a
    /// quadratic scalarization sublinear to watch the homogeneity check fail.
    pub fn with_declared_class(spec: MncSpec, blocks: usize, class: MncClass) -> Result<Mnc> {
        let mut m = make_mnc(spec, blocks)?;
        m.label = format!("{} as {}", m.label, class.name());
        m.class = class;
        Ok(m)
    }

    /// Scalarization value on a radii vector.
    pub fn eval_radii(&self, v: &VElement) -> f64 {
        assert_eq!(v.block_count(), self.blocks, "radii vector from a different block model");
        match &self.scalar {
            Scalarization::Catalog(MncSpec::Hausdorff) => v.norm(),
            Scalarization::Catalog(MncSpec::Sum) => v.radii().iter().sum(),
            Scalarization::Catalog(MncSpec::WeightedSup { weights }) => weights
                .iter()
                .map(|w| w.iter().zip(v.radii()).map(|(a, b)| a * b).sum())
                .fold(0.0, f64::max),
            Scalarization::Catalog(MncSpec::ConvexOfRadii { phi }) => phi.eval(v.radii()),
            Scalarization::Constant(c) => *c,
        }
    }

    /// Measure of a structured set: scalarization of the convexified set's
    /// tail radii.
    pub fn eval_set(&self, set: &StructuredSet) -> f64 {
        self.eval_radii(&set.v_embed())
    }

    /// True when evaluation involves only additions, multiplications and
    /// maxima, so dyadic test inputs stay exact.
    pub fn arithmetic_exact(&self) -> bool {
        match &self.scalar {
            Scalarization::Catalog(MncSpec::ConvexOfRadii { phi }) => phi.dyadic_exact(),
            _ => true,
        }
    }
}

/// Builds an evaluable measure from a spec, deriving the axiom tier: the
/// sup-of-radii kind is regular; sums and weighted sups are sublinear;
/// convex scalarizations are sublinear exactly when structurally
/// degree-one homogeneous, convex otherwise.
pub fn make_mnc(spec: MncSpec, blocks: usize) -> Result<Mnc> {
    if blocks == 0 {
        return Err(Error::InvalidMncSpec("a model needs at least one block".into()));
    }
    let (class, label) = match &spec {
        MncSpec::Hausdorff => (MncClass::Regular, "hausdorff".to_string()),
        MncSpec::Sum => (MncClass::Sublinear, "sum".to_string()),
        MncSpec::WeightedSup { weights } => {
            if weights.is_empty() {
                return Err(Error::InvalidMncSpec("weighted_sup needs at least one vector".into()));
            }
            for w in weights {
                if w.len() != blocks {
                    return Err(Error::InvalidMncSpec(format!(
                        "weight vector length {} does not match {} blocks",
                        w.len(),
                        blocks
                    )));
                }
                if w.iter().any(|x| !x.is_finite() || *x < 0.0) {
                    return Err(Error::InvalidMncSpec("weights must be nonnegative".into()));
                }
            }
            for j in 0..blocks {
                if !weights.iter().any(|w| w[j] > 0.0) {
                    return Err(Error::InvalidMncSpec(format!(
                        "no weight vector sees block {j}; the measure would vanish on noncompact sets"
                    )));
                }
            }
            (MncClass::Sublinear, "weighted_sup".to_string())
        }
        MncSpec::ConvexOfRadii { phi } => {
            phi.validate(blocks)?;
            let z = phi.eval(&vec![0.0; blocks]);
            if z != 0.0 {
                return Err(Error::InvalidMncSpec(format!(
                    "scalarization must vanish at the origin, got {z}"
                )));
            }
            for j in 0..blocks {
                if phi.eval(&unit(blocks, j)) <= 0.0 {
                    return Err(Error::InvalidMncSpec(format!(
                        "scalarization vanishes on block {j}; the measure would vanish on noncompact sets"
                    )));
                }
            }
            sampled_shape_check(phi, blocks)?;
            let class = if phi.degree_one() {
                MncClass::Sublinear
            } else {
                MncClass::Convex
            };
            (class, format!("convex_of_radii({phi:?})"))
        }
    };
    Ok(Mnc {
        scalar: Scalarization::Catalog(spec),
        class,
        blocks,
        label,
    })
}

/// Sampled convexity and monotonicity check over the positive orthant.
fn sampled_shape_check(phi: &PhiSpec, blocks: usize) -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x9e37_79b9);
    let tol = if phi.dyadic_exact() { 0.0 } else { 1e-12 };
    for _ in 0..64 {
        let v: Vec<f64> = (0..blocks).map(|_| dyadic(&mut rng, 0, 32, 16.0)).collect();
        let w: Vec<f64> = (0..blocks).map(|_| dyadic(&mut rng, 0, 32, 16.0)).collect();
        let lambda = dyadic(&mut rng, 0, 8, 8.0);
        let mix: Vec<f64> = v
            .iter()
            .zip(&w)
            .map(|(a, b)| lambda * a + (1.0 - lambda) * b)
            .collect();
        let lhs = phi.eval(&mix);
        let rhs = lambda * phi.eval(&v) + (1.0 - lambda) * phi.eval(&w);
        if lhs > rhs + tol + 1e-12 * rhs.abs() {
            return Err(Error::InvalidMncSpec(format!(
                "scalarization is not convex: phi(mix) = {lhs} > {rhs}"
            )));
        }
        let bigger: Vec<f64> = v.iter().zip(&w).map(|(a, b)| a + b).collect();
        if phi.eval(&bigger) + tol < phi.eval(&v) {
            return Err(Error::InvalidMncSpec("scalarization is not monotone".into()));
        }
    }
    Ok(())
}

/// Evaluates the measure on a structured set.
pub fn mnc_eval(m: &Mnc, set: &StructuredSet) -> f64 {
    m.eval_set(set)
}

/// A finite set of nonnegative vectors acting as positive functionals on the
/// radii cone.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FunctionalSet {
    pub vectors: Vec<Vec<f64>>,
}

impl FunctionalSet {
    /// Max pairing over the set.
    pub fn eval(&self, v: &VElement) -> f64 {
        self.vectors
            .iter()
            .map(|w| w.iter().zip(v.radii()).map(|(a, b)| a * b).sum())
            .fold(0.0, f64::max)
    }
}

/// Positive-functional representation of a sublinear measure: a finite set
/// `M` with `mu(A) = max over w in M of <w, radii(A)>`, exactly.
pub fn represent_sublinear(m: &Mnc) -> Result<FunctionalSet> {
    if !m.class.is_sublinear() {
        return Err(Error::NotSublinear(m.label.clone()));
    }
    let vectors = match &m.scalar {
        Scalarization::Catalog(MncSpec::Hausdorff) => {
            (0..m.blocks).map(|j| unit(m.blocks, j)).collect()
        }
        Scalarization::Catalog(MncSpec::Sum) => vec![vec![1.0; m.blocks]],
        Scalarization::Catalog(MncSpec::WeightedSup { weights }) => weights.clone(),
        Scalarization::Catalog(MncSpec::ConvexOfRadii { phi }) => phi
            .finite_functionals(m.blocks)
            .ok_or_else(|| Error::UnsupportedRepresentation(m.label.clone()))?,
        Scalarization::Constant(_) => {
            return Err(Error::NotSublinear(m.label.clone()));
        }
    };
    Ok(FunctionalSet { vectors })
}

/// One Lipschitz-bound verification on a pair of sets: the measure gap must
/// be at most `c_r` times the sup distance of the radii vectors, where `c_r`
/// is the measure of the `(1 + r)`-ball and `r` bounds both radii norms. For
/// sublinear measures the unit-ball constant works as well.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WitnessReport {
    pub r: f64,
    pub c_r: f64,
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
    pub sublinear_c: Option<f64>,
    pub sublinear_rhs: Option<f64>,
    pub sublinear_holds: Option<bool>,
}

/// Tolerance added to the Lipschitz comparisons.
pub const WITNESS_TOL: f64 = 1e-12;

pub fn lipschitz_witness(m: &Mnc, a: &StructuredSet, b: &StructuredSet) -> WitnessReport {
    let va = a.v_embed();
    let vb = b.v_embed();
    let r = va.norm().max(vb.norm());
    let ball = StructuredSet::ball(m.blocks, 1.0 + r);
    let c_r = m.eval_set(&ball);
    let gap = va.sup_diff(&vb);
    let lhs = (m.eval_set(a) - m.eval_set(b)).abs();
    let rhs = c_r * gap;
    let holds = lhs <= rhs + WITNESS_TOL;
    let (sublinear_c, sublinear_rhs, sublinear_holds) = if m.class.is_sublinear() {
        let c = m.eval_set(&StructuredSet::unit_ball(m.blocks));
        let srhs = c * gap;
        (Some(c), Some(srhs), Some(lhs <= srhs + WITNESS_TOL))
    } else {
        (None, None, None)
    };
    WitnessReport {
        r,
        c_r,
        lhs,
        rhs,
        holds,
        sublinear_c,
        sublinear_rhs,
        sublinear_holds,
    }
}

// ---------------------------------------------------------------------------
// Axiom fuzzer
// ---------------------------------------------------------------------------

/// A concrete counterexample to one axiom: the sets involved, any scalars,
/// and the measure values that violate the property.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Counterexample {
    pub detail: String,
    pub sets: Vec<StructuredSet>,
    pub scalars: Vec<f64>,
    pub values: Vec<f64>,
}

/// Outcome of one property over the sampled sets.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AxiomCheck {
    pub property: String,
    pub anchor: String,
    pub exact: bool,
    pub tolerance: f64,
    pub samples_run: usize,
    pub passed: bool,
    pub counterexample: Option<Counterexample>,
}

/// Full fuzzer report; `passed` is the conjunction over checks.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AxiomReport {
    pub mnc: String,
    pub declared_class: MncClass,
    pub samples: usize,
    pub seed: u64,
    pub passed: bool,
    pub checks: Vec<AxiomCheck>,
}

struct CheckCtx<'a> {
    m: &'a Mnc,
    sampler: SetSampler,
    samples: usize,
    tol: f64,
}

/// Property-based check of the axiom subset required by the measure's
/// declared tier, plus the translation/union-with-compacts consequences and
/// a bounded nested-intersection test. Sampled sets use dyadic coordinates
/// so the closed-form checks compare exactly; the stated tolerance is only
/// applied where the scalarization itself rounds.
pub fn check_axioms(m: &Mnc, sample_count: usize, seed: u64) -> Result<AxiomReport> {
    if sample_count == 0 {
        return Err(Error::InvalidParameter("sample_count must be at least 1".into()));
    }
    let ctx = CheckCtx {
        m,
        sampler: SetSampler::new(m.blocks),
        samples: sample_count,
        tol: if m.arithmetic_exact() { 0.0 } else { 1e-12 },
    };

    let mut checks = Vec::new();
    let class = m.class;
    let run = |name: &str,
                   anchor: &str,
                   checks: &mut Vec<AxiomCheck>,
                   f: &dyn Fn(&CheckCtx, &mut ChaCha8Rng) -> Option<Counterexample>| {
        // Independent stream per property so failures stay reproducible when
        // the property list changes with the declared class.
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ hash_name(name));
        let ce = f(&ctx, &mut rng);
        checks.push(AxiomCheck {
            property: name.to_string(),
            anchor: anchor.to_string(),
            exact: ctx.tol == 0.0,
            tolerance: ctx.tol,
            samples_run: ctx.samples,
            passed: ce.is_none(),
            counterexample: ce,
        });
    };

    run("noncompactness", "vanishes exactly on compact sets", &mut checks, &check_noncompactness);
    run("monotonicity", "nondecreasing under set inclusion", &mut checks, &check_monotonicity);
    run(
        "convexification-invariance",
        "unchanged by taking the closed convex hull",
        &mut checks,
        &check_convexification,
    );
    run("convexity", "convex along Minkowski mixtures", &mut checks, &check_convexity);
    if class >= MncClass::Sublinear {
        run("subadditivity", "subadditive under Minkowski sums", &mut checks, &check_subadditivity);
        run(
            "positive-homogeneity",
            "scales linearly under nonnegative dilation",
            &mut checks,
            &check_positive_homogeneity,
        );
    }
    if class >= MncClass::Homogeneous {
        run(
            "absolute-homogeneity",
            "scales with the absolute dilation factor",
            &mut checks,
            &check_absolute_homogeneity,
        );
    }
    if class >= MncClass::Regular {
        run(
            "order-preservation",
            "union evaluates to the max of the parts",
            &mut checks,
            &check_order_preservation,
        );
    }
    run(
        "representation-invariance",
        "independent of the member-list presentation (closure invariance)",
        &mut checks,
        &check_representation_invariance,
    );
    run(
        "translation-invariance",
        "unchanged by Minkowski translation with compact sets",
        &mut checks,
        &check_translation_invariance,
    );
    run(
        "compact-union-negligibility",
        "unchanged by union with compact sets",
        &mut checks,
        &check_compact_union,
    );
    run(
        "nested-intersection",
        "decaying nested sequences pin a common point",
        &mut checks,
        &check_nested_intersection,
    );

    let passed = checks.iter().all(|c| c.passed);
    Ok(AxiomReport {
        mnc: m.label.clone(),
        declared_class: m.class,
        samples: sample_count,
        seed,
        passed,
        checks,
    })
}

fn hash_name(name: &str) -> u64 {
    // FNV-1a, stable across platforms.
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in name.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h
}

fn check_noncompactness(ctx: &CheckCtx, rng: &mut ChaCha8Rng) -> Option<Counterexample> {
    for _ in 0..ctx.samples {
        let compact = ctx.sampler.sample_compact(rng);
        let v = ctx.m.eval_set(&compact);
        if v != 0.0 {
            return Some(Counterexample {
                detail: "nonzero value on a compact set".into(),
                sets: vec![compact],
                scalars: vec![],
                values: vec![v],
            });
        }
        let noncompact = ctx.sampler.sample_noncompact(rng);
        let v = ctx.m.eval_set(&noncompact);
        if v <= 0.0 {
            return Some(Counterexample {
                detail: "zero value on a noncompact set".into(),
                sets: vec![noncompact],
                scalars: vec![],
                values: vec![v],
            });
        }
    }
    None
}

fn check_monotonicity(ctx: &CheckCtx, rng: &mut ChaCha8Rng) -> Option<Counterexample> {
    for _ in 0..ctx.samples {
        let small = ctx.sampler.sample(rng);
        let big = ctx.sampler.inflate(rng, &small);
        let (vs, vb) = (ctx.m.eval_set(&small), ctx.m.eval_set(&big));
        if vb < vs {
            return Some(Counterexample {
                detail: "larger set got a smaller value".into(),
                sets: vec![big, small],
                scalars: vec![],
                values: vec![vb, vs],
            });
        }
    }
    None
}

fn check_convexification(ctx: &CheckCtx, rng: &mut ChaCha8Rng) -> Option<Counterexample> {
    for _ in 0..ctx.samples {
        let a = ctx.sampler.sample(rng);
        let (v, vc) = (ctx.m.eval_set(&a), ctx.m.eval_set(&a.convex_hull()));
        if v != vc {
            return Some(Counterexample {
                detail: "value changed under convexification".into(),
                sets: vec![a],
                scalars: vec![],
                values: vec![v, vc],
            });
        }
    }
    None
}

fn check_convexity(ctx: &CheckCtx, rng: &mut ChaCha8Rng) -> Option<Counterexample> {
    for _ in 0..ctx.samples {
        let a = ctx.sampler.sample(rng);
        let b = ctx.sampler.sample(rng);
        let lambda = dyadic(rng, 0, 8, 8.0);
        let mix = a.scale(lambda).minkowski_sum(&b.scale(1.0 - lambda));
        let lhs = ctx.m.eval_set(&mix);
        let rhs = lambda * ctx.m.eval_set(&a) + (1.0 - lambda) * ctx.m.eval_set(&b);
        if lhs > rhs + ctx.tol {
            return Some(Counterexample {
                detail: "convexity inequality failed".into(),
                sets: vec![a, b],
                scalars: vec![lambda],
                values: vec![lhs, rhs],
            });
        }
    }
    None
}

fn check_subadditivity(ctx: &CheckCtx, rng: &mut ChaCha8Rng) -> Option<Counterexample> {
    for _ in 0..ctx.samples {
        let a = ctx.sampler.sample(rng);
        let b = ctx.sampler.sample(rng);
        let lhs = ctx.m.eval_set(&a.minkowski_sum(&b));
        let rhs = ctx.m.eval_set(&a) + ctx.m.eval_set(&b);
        if lhs > rhs + ctx.tol {
            return Some(Counterexample {
                detail: "subadditivity failed".into(),
                sets: vec![a, b],
                scalars: vec![],
                values: vec![lhs, rhs],
            });
        }
    }
    None
}

fn check_positive_homogeneity(ctx: &CheckCtx, rng: &mut ChaCha8Rng) -> Option<Counterexample> {
    for _ in 0..ctx.samples {
        let a = ctx.sampler.sample(rng);
        let k = dyadic(rng, 0, 16, 4.0);
        let lhs = ctx.m.eval_set(&a.scale(k));
        let rhs = k * ctx.m.eval_set(&a);
        if (lhs - rhs).abs() > ctx.tol {
            return Some(Counterexample {
                detail: "positive homogeneity failed".into(),
                sets: vec![a],
                scalars: vec![k],
                values: vec![lhs, rhs],
            });
        }
    }
    None
}

fn check_absolute_homogeneity(ctx: &CheckCtx, rng: &mut ChaCha8Rng) -> Option<Counterexample> {
    for _ in 0..ctx.samples {
        let a = ctx.sampler.sample(rng);
        let k = dyadic(rng, -16, 16, 4.0);
        let lhs = ctx.m.eval_set(&a.scale(k));
        let rhs = k.abs() * ctx.m.eval_set(&a);
        if (lhs - rhs).abs() > ctx.tol {
            return Some(Counterexample {
                detail: "absolute homogeneity failed".into(),
                sets: vec![a],
                scalars: vec![k],
                values: vec![lhs, rhs],
            });
        }
    }
    None
}

fn check_order_preservation(ctx: &CheckCtx, rng: &mut ChaCha8Rng) -> Option<Counterexample> {
    for _ in 0..ctx.samples {
        let a = ctx.sampler.sample(rng);
        let b = ctx.sampler.sample(rng);
        let lhs = ctx.m.eval_set(&a.union(&b));
        let rhs = ctx.m.eval_set(&a).max(ctx.m.eval_set(&b));
        if lhs != rhs {
            return Some(Counterexample {
                detail: "union value differs from the max of the parts".into(),
                sets: vec![a, b],
                scalars: vec![],
                values: vec![lhs, rhs],
            });
        }
    }
    None
}

fn check_representation_invariance(ctx: &CheckCtx, rng: &mut ChaCha8Rng) -> Option<Counterexample> {
    for _ in 0..ctx.samples {
        let a = ctx.sampler.sample(rng);
        let mut members = a.members.clone();
        members.reverse();
        members.push(a.members[0].clone());
        let b = StructuredSet {
            members,
            convexified: a.convexified,
        };
        let (va, vb) = (ctx.m.eval_set(&a), ctx.m.eval_set(&b));
        if va != vb {
            return Some(Counterexample {
                detail: "value depends on the member-list presentation".into(),
                sets: vec![a, b],
                scalars: vec![],
                values: vec![va, vb],
            });
        }
    }
    None
}

fn check_translation_invariance(ctx: &CheckCtx, rng: &mut ChaCha8Rng) -> Option<Counterexample> {
    for _ in 0..ctx.samples {
        let a = ctx.sampler.sample(rng);
        let c = ctx.sampler.sample_compact(rng);
        let lhs = ctx.m.eval_set(&a.minkowski_sum(&c));
        let rhs = ctx.m.eval_set(&a);
        if lhs != rhs {
            return Some(Counterexample {
                detail: "value changed under translation by a compact set".into(),
                sets: vec![a, c],
                scalars: vec![],
                values: vec![lhs, rhs],
            });
        }
    }
    None
}

fn check_compact_union(ctx: &CheckCtx, rng: &mut ChaCha8Rng) -> Option<Counterexample> {
    for _ in 0..ctx.samples {
        let a = ctx.sampler.sample(rng);
        let c = ctx.sampler.sample_compact(rng);
        let joined = a.convexify_union(&c);
        if joined.v_embed() != a.v_embed() {
            return Some(Counterexample {
                detail: "tail radii changed under union with a compact set".into(),
                sets: vec![a, c],
                scalars: vec![],
                values: vec![],
            });
        }
        let lhs = ctx.m.eval_set(&joined);
        let rhs = ctx.m.eval_set(&a);
        if lhs != rhs {
            return Some(Counterexample {
                detail: "value changed under union with a compact set".into(),
                sets: vec![a, c],
                scalars: vec![],
                values: vec![lhs, rhs],
            });
        }
    }
    None
}

fn check_nested_intersection(ctx: &CheckCtx, rng: &mut ChaCha8Rng) -> Option<Counterexample> {
    const LEVELS: usize = 20;
    let trials = (ctx.samples / 10).max(1);
    for _ in 0..trials {
        let base = ctx.sampler.sample_single_body(rng);
        let center: Vec<Vec<f64>> = base.members[0]
            .blocks
            .iter()
            .map(|b| b.center.clone())
            .collect();
        let mut values = Vec::with_capacity(LEVELS);
        let mut sets = Vec::with_capacity(LEVELS);
        for n in 0..LEVELS {
            let shrink = 0.5_f64.powi(n as i32);
            let mut s = base.clone();
            for blk in &mut s.members[0].blocks {
                for r in &mut blk.head_radii {
                    *r *= shrink;
                }
                blk.tail_radius *= shrink;
            }
            values.push(ctx.m.eval_set(&s));
            sets.push(s);
        }
        for w in values.windows(2) {
            if w[1] > w[0] {
                return Some(Counterexample {
                    detail: "values not monotone along a nested shrinking sequence".into(),
                    sets: vec![sets[0].clone()],
                    scalars: vec![],
                    values: values.clone(),
                });
            }
        }
        // When the values decay, the common point must be exhibitable: the
        // shared center lies in every level.
        if *values.last().unwrap() < 1e-6 {
            for s in &sets {
                if !s.members[0].contains_point(&center) {
                    return Some(Counterexample {
                        detail: "limit center escaped a nested level".into(),
                        sets: vec![s.clone()],
                        scalars: vec![],
                        values: values.clone(),
                    });
                }
            }
        }
    }
    None
}

/// A deterministic slate of catalog measures on `k` blocks, used by sweeps
/// and demos: the ball-covering measure, the radii sum, a weighted sup, the
/// squared sup, and a mixed combination.
pub fn demo_catalog(blocks: usize) -> Vec<Mnc> {
    let mut weights = vec![vec![1.0; blocks]];
    for j in 0..blocks {
        weights.push(unit(blocks, j));
    }
    let mut out = vec![
        make_mnc(MncSpec::Hausdorff, blocks).unwrap(),
        make_mnc(MncSpec::Sum, blocks).unwrap(),
        make_mnc(MncSpec::WeightedSup { weights }, blocks).unwrap(),
        make_mnc(
            MncSpec::ConvexOfRadii {
                phi: PhiSpec::NormPower {
                    norm: NormKind::Sup,
                    power: 2.0,
                },
            },
            blocks,
        )
        .unwrap(),
    ];
    out.push(
        make_mnc(
            MncSpec::ConvexOfRadii {
                phi: PhiSpec::Combination {
                    terms: vec![
                        (
                            0.5,
                            PhiSpec::NormPower {
                                norm: NormKind::Sup,
                                power: 1.0,
                            },
                        ),
                        (
                            0.25,
                            PhiSpec::NormPower {
                                norm: NormKind::Sum,
                                power: 2.0,
                            },
                        ),
                    ],
                },
            },
            blocks,
        )
        .unwrap(),
    );
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sets::{BlockBox, BoxTail};

    #[test]
    fn make_mnc_classes() {
        assert_eq!(Mnc::hausdorff(3).class(), MncClass::Regular);
        assert_eq!(make_mnc(MncSpec::Sum, 3).unwrap().class(), MncClass::Sublinear);
        let sq = make_mnc(
            MncSpec::ConvexOfRadii {
                phi: PhiSpec::NormPower {
                    norm: NormKind::Sup,
                    power: 2.0,
                },
            },
            3,
        )
        .unwrap();
        assert_eq!(sq.class(), MncClass::Convex);
        assert!(!sq.class().is_sublinear());
        // Quadratic scalarization is genuinely inhomogeneous.
        let ball = StructuredSet::unit_ball(3);
        assert_eq!(sq.eval_set(&ball.scale(2.0)), 4.0);
        assert_eq!(2.0 * sq.eval_set(&ball), 2.0);
    }

    #[test]
    fn make_mnc_rejects_bad_specs() {
        // Shifted scalarization: nonzero at the origin.
        let shifted = make_mnc(
            MncSpec::ConvexOfRadii {
                phi: PhiSpec::Combination {
                    terms: vec![(
                        1.0,
                        PhiSpec::NormPower {
                            norm: NormKind::Sup,
                            power: 0.5,
                        },
                    )],
                },
            },
            2,
        );
        assert!(shifted.is_err());
        // Weight family missing a block.
        let partial = make_mnc(
            MncSpec::WeightedSup {
                weights: vec![vec![1.0, 0.0]],
            },
            2,
        );
        assert!(partial.is_err());
        // Linear scalarization blind to one block.
        let blind = make_mnc(
            MncSpec::ConvexOfRadii {
                phi: PhiSpec::Linear {
                    weights: vec![1.0, 0.0],
                },
            },
            2,
        );
        assert!(blind.is_err());
    }

    #[test]
    fn eval_examples() {
        let beta = Mnc::hausdorff(1);
        assert_eq!(beta.eval_set(&StructuredSet::ball(1, 2.0)), 2.0);

        let sq = make_mnc(
            MncSpec::ConvexOfRadii {
                phi: PhiSpec::NormPower {
                    norm: NormKind::Sup,
                    power: 2.0,
                },
            },
            1,
        )
        .unwrap();
        assert_eq!(sq.eval_set(&StructuredSet::ball(1, 3.0)), 9.0);

        let sum = make_mnc(MncSpec::Sum, 3).unwrap();
        let s = StructuredSet::body(
            BoxTail::new(vec![
                BlockBox::tail_ball(1.0),
                BlockBox::tail_ball(2.0),
                BlockBox::tail_ball(0.0),
            ])
            .unwrap(),
        );
        assert_eq!(sum.eval_set(&s), 3.0);
    }

    #[test]
    fn axiom_suite_accepts_the_ball_covering_measure() {
        let report = check_axioms(&Mnc::hausdorff(3), 200, 42).unwrap();
        assert!(report.passed, "{report:?}");
    }

    #[test]
    fn axiom_suite_rejects_the_constant_control() {
        let report = check_axioms(&Mnc::constant_control(3, 1.0), 50, 7).unwrap();
        assert!(!report.passed);
        let nc = report
            .checks
            .iter()
            .find(|c| c.property == "noncompactness")
            .unwrap();
        assert!(!nc.passed);
        let ce = nc.counterexample.as_ref().unwrap();
        assert_eq!(ce.values[0], 1.0);
    }

    #[test]
    fn axiom_suite_rejects_squared_sup_declared_sublinear() {
        let m = Mnc::with_declared_class(
            MncSpec::ConvexOfRadii {
                phi: PhiSpec::NormPower {
                    norm: NormKind::Sup,
                    power: 2.0,
                },
            },
            3,
            MncClass::Sublinear,
        )
        .unwrap();
        let report = check_axioms(&m, 100, 11).unwrap();
        assert!(!report.passed);
        let hom = report
            .checks
            .iter()
            .find(|c| c.property == "positive-homogeneity")
            .unwrap();
        assert!(!hom.passed);
        assert!(hom.counterexample.is_some());
        // The convex subset itself is fine.
        for name in ["noncompactness", "monotonicity", "convexity", "convexification-invariance"] {
            assert!(report.checks.iter().find(|c| c.property == name).unwrap().passed);
        }
    }

    #[test]
    fn witness_examples() {
        let sq = make_mnc(
            MncSpec::ConvexOfRadii {
                phi: PhiSpec::NormPower {
                    norm: NormKind::Sup,
                    power: 2.0,
                },
            },
            1,
        )
        .unwrap();
        let a = StructuredSet::ball(1, 1.0);
        let b = StructuredSet::ball(1, 1.2);
        let w = lipschitz_witness(&sq, &a, &b);
        assert!((w.lhs - 0.44).abs() < 1e-12);
        assert!((w.rhs - 2.2 * 2.2 * 0.2).abs() < 1e-12);
        assert!(w.holds);

        let beta = Mnc::hausdorff(1);
        let w = lipschitz_witness(&beta, &StructuredSet::ball(1, 1.0), &StructuredSet::ball(1, 3.0));
        assert_eq!(w.lhs, 2.0);
        assert_eq!(w.sublinear_c, Some(1.0));
        assert_eq!(w.sublinear_rhs, Some(2.0));
        assert_eq!(w.sublinear_holds, Some(true));

        let same = lipschitz_witness(&beta, &a, &a);
        assert_eq!(same.lhs, 0.0);
        assert!(same.holds);
    }

    #[test]
    fn representation_examples() {
        let beta = Mnc::hausdorff(3);
        let f = represent_sublinear(&beta).unwrap();
        assert_eq!(f.vectors.len(), 3);
        assert!(f.vectors.contains(&vec![1.0, 0.0, 0.0]));

        let sum = make_mnc(MncSpec::Sum, 3).unwrap();
        assert_eq!(represent_sublinear(&sum).unwrap().vectors, vec![vec![1.0, 1.0, 1.0]]);

        let weights = vec![vec![1.0, 0.5, 0.0], vec![0.0, 0.0, 2.0]];
        let ws = make_mnc(
            MncSpec::WeightedSup {
                weights: weights.clone(),
            },
            3,
        )
        .unwrap();
        assert_eq!(represent_sublinear(&ws).unwrap().vectors, weights);

        let sq = make_mnc(
            MncSpec::ConvexOfRadii {
                phi: PhiSpec::NormPower {
                    norm: NormKind::Sup,
                    power: 2.0,
                },
            },
            3,
        )
        .unwrap();
        assert!(matches!(represent_sublinear(&sq), Err(Error::NotSublinear(_))));
    }
}
