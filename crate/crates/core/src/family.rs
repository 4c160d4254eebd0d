//! Parametric set-valued families `s -> G(s)` over `[0, a]`.
//!
//! A family is a single body whose centers and radii follow
//! piecewise-polynomial paths. The family denotes the set of all measurable
//! selections of the path, so pointwise evaluation yields the structured set
//! itself, and the set-valued integral of a ball-valued path is the ball of
//! integrated radius about the integrated center. Path regularity is
//! certifiable by construction: continuous paths are equicontinuous,
//! discontinuous piecewise polynomials have one-sided limits everywhere
//! (equiregulated), and step paths form a uniformly measurable family of
//! simple functions.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::PiecewisePoly;
use crate::sets::{BlockBox, BoxTail, StructuredSet};

/// Measurability class of a family, derived from its path class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RegularityTag {
    Equicontinuous,
    Equiregulated,
    UniformlyMeasurable,
}

/// A parametric path of structured sets on `[0, interval]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SetFamily {
    /// Right end of the parameter interval; the left end is 0.
    pub interval: f64,
    /// Per block, per head coordinate: the center path.
    pub center_paths: Vec<Vec<PiecewisePoly>>,
    /// Per block, per head coordinate: the nonnegative head radius path.
    pub head_radius_paths: Vec<Vec<PiecewisePoly>>,
    /// Per block: the nonnegative tail radius path.
    pub tail_paths: Vec<PiecewisePoly>,
}

impl SetFamily {
    /// Single-block family with only a tail radius path.
    pub fn tail_only(tail: PiecewisePoly) -> Result<Self> {
        let interval = tail.domain_end();
        let fam = SetFamily {
            interval,
            center_paths: vec![Vec::new()],
            head_radius_paths: vec![Vec::new()],
            tail_paths: vec![tail],
        };
        fam.validate()?;
        Ok(fam)
    }

    pub fn block_count(&self) -> usize {
        self.tail_paths.len()
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.interval > 0.0) || !self.interval.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "family interval end must be positive, got {}",
                self.interval
            )));
        }
        let k = self.tail_paths.len();
        if k == 0 {
            return Err(Error::InvalidParameter("family needs at least one block".into()));
        }
        if self.center_paths.len() != k || self.head_radius_paths.len() != k {
            return Err(Error::BlockMismatch {
                left: k,
                right: self.center_paths.len().max(self.head_radius_paths.len()),
            });
        }
        for (c, r) in self.center_paths.iter().zip(&self.head_radius_paths) {
            if c.len() != r.len() {
                return Err(Error::InvalidParameter(
                    "center and head radius paths must pair up per coordinate".into(),
                ));
            }
        }
        for p in self.all_paths() {
            if p.domain_end() < self.interval {
                return Err(Error::InvalidPath(format!(
                    "path domain ends at {} before the family interval {}",
                    p.domain_end(),
                    self.interval
                )));
            }
        }
        for p in self.tail_paths.iter().chain(self.head_radius_paths.iter().flatten()) {
            let min = p.sampled_min();
            if min < 0.0 {
                return Err(Error::InvalidPath(format!(
                    "radius path dips to {min}; radii must stay nonnegative"
                )));
            }
        }
        Ok(())
    }

    fn all_paths(&self) -> impl Iterator<Item = &PiecewisePoly> {
        self.center_paths
            .iter()
            .flatten()
            .chain(self.head_radius_paths.iter().flatten())
            .chain(self.tail_paths.iter())
    }

    /// Derived measurability class: continuous everywhere is the strongest,
    /// pure step paths the weakest supported class, anything else keeps
    /// one-sided limits.
    pub fn regularity_tag(&self) -> RegularityTag {
        if self.all_paths().all(PiecewisePoly::is_continuous) {
            RegularityTag::Equicontinuous
        } else if self.all_paths().all(PiecewisePoly::is_piecewise_constant) {
            RegularityTag::UniformlyMeasurable
        } else {
            RegularityTag::Equiregulated
        }
    }

    /// Interior breakpoints of any path inside `(0, t)`, for quadrature.
    pub fn breakpoints_before(&self, t: f64) -> Vec<f64> {
        let mut cuts: Vec<f64> = self
            .all_paths()
            .flat_map(|p| p.interior_breakpoints(t))
            .collect();
        cuts.sort_by(f64::total_cmp);
        cuts.dedup();
        cuts
    }

    fn body_at(&self, s: f64) -> BoxTail {
        let blocks = (0..self.block_count())
            .map(|j| BlockBox {
                center: self.center_paths[j].iter().map(|p| p.eval(s)).collect(),
                head_radii: self.head_radius_paths[j]
                    .iter()
                    .map(|p| p.eval(s).max(0.0))
                    .collect(),
                tail_radius: self.tail_paths[j].eval(s).max(0.0),
            })
            .collect();
        BoxTail { blocks }
    }
}

/// The set `G(s)`: the pointwise evaluation of the family.
pub fn family_eval(family: &SetFamily, s: f64) -> Result<StructuredSet> {
    if !(0.0..=family.interval).contains(&s) {
        return Err(Error::OutOfInterval {
            s,
            a: family.interval,
        });
    }
    Ok(StructuredSet::body(family.body_at(s)))
}

/// One sampled support description: the body parameters at `s` determine the
/// support function in closed form (center pairing plus radii).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SupportPathSample {
    pub s: f64,
    pub body: BoxTail,
}

/// The sampled support path together with the measurability class that
/// certifies it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SupportPath {
    pub samples: Vec<SupportPathSample>,
    pub tag: RegularityTag,
}

/// Samples the support-function path at the given parameters.
pub fn support_path(family: &SetFamily, sample_points: &[f64]) -> Result<SupportPath> {
    let mut samples = Vec::with_capacity(sample_points.len());
    for &s in sample_points {
        if !(0.0..=family.interval).contains(&s) {
            return Err(Error::OutOfInterval {
                s,
                a: family.interval,
            });
        }
        samples.push(SupportPathSample {
            s,
            body: family.body_at(s),
        });
    }
    Ok(SupportPath {
        samples,
        tag: family.regularity_tag(),
    })
}

/// Set-valued integral over `[0, t]`: the body whose center and radii are
/// the exact path integrals. This is the integral of all measurable
/// selections of the path.
pub fn aumann_integral(family: &SetFamily, t: f64) -> Result<StructuredSet> {
    if !(t > 0.0) || t > family.interval {
        return Err(Error::OutOfInterval {
            s: t,
            a: family.interval,
        });
    }
    let blocks = (0..family.block_count())
        .map(|j| BlockBox {
            center: family.center_paths[j].iter().map(|p| p.integral(t)).collect(),
            head_radii: family.head_radius_paths[j]
                .iter()
                .map(|p| p.integral(t).max(0.0))
                .collect(),
            tail_radius: family.tail_paths[j].integral(t).max(0.0),
        })
        .collect();
    Ok(StructuredSet::body(BoxTail { blocks }))
}
