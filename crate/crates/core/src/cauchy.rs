//! A fixed-point solver for initial value problems `x' = f(t, x)` on the
//! head coordinates of the block model, with a decay certificate for the
//! noncompactness channel.
//!
//! Two coupled iterations run side by side:
//!
//! * a point iteration of the integral operator `x -> x0 + integral of
//!   f(s, x(s))` on a uniform grid, driven to a verified residual;
//! * a set iteration at the level of enclosures: head interval boxes
//!   propagated by interval evaluation of `f`, and a scalar tail channel
//!   driven by the comparison-function update `u <- integral of w(s, u(s))`,
//!   clamped monotone. The sequence of sup values of the tail channel is the
//!   decay certificate.
//!
//! The certificate is conservative: it certifies the decay of the measured
//! enclosure, not a formal existence proof.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::mnc::Mnc;
use crate::poly::{PiecewisePoly, Polynomial};
use crate::quad::{cumulative_trapezoid, cumulative_uniform};
use crate::sets::VElement;

/// Comparison rates from the catalog: `w(t, u) = rate(t) * u` with a
/// constant or piecewise-polynomial integrable rate. Both vanish at `u = 0`
/// and admit only the zero subsolution through zero.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum KamkeFn {
    Linear { rate: f64 },
    Weighted { rate: PiecewisePoly },
}

impl KamkeFn {
    pub fn eval(&self, t: f64, u: f64) -> f64 {
        match self {
            KamkeFn::Linear { rate } => rate * u,
            KamkeFn::Weighted { rate } => rate.eval(t) * u,
        }
    }

    fn validate(&self, horizon: f64) -> Result<()> {
        match self {
            KamkeFn::Linear { rate } => {
                if !rate.is_finite() || *rate < 0.0 {
                    return Err(Error::InvalidProblem(format!(
                        "comparison rate must be nonnegative, got {rate}"
                    )));
                }
            }
            KamkeFn::Weighted { rate } => {
                if rate.domain_end() < horizon {
                    return Err(Error::InvalidProblem(
                        "comparison rate path ends before the horizon".into(),
                    ));
                }
                if rate.sampled_min() < 0.0 {
                    return Err(Error::InvalidProblem(
                        "comparison rate must stay nonnegative".into(),
                    ));
                }
            }
        }
        Ok(())
    }
}

/// One monomial term of the right-hand side: `coef * prod x_j ^ pow` added
/// to coordinate `target`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Monomial {
    pub target: usize,
    pub coef: f64,
    pub powers: Vec<(usize, u32)>,
}

/// Catalog right-hand side on the flattened head coordinates: a linear map,
/// bounded-degree monomial couplings, and a polynomial forcing in `t`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RhsHead {
    /// Dense `d x d` matrix applied to the head vector.
    pub linear: Vec<Vec<f64>>,
    #[serde(default)]
    pub monomials: Vec<Monomial>,
    /// Per coordinate, polynomial coefficients in `t` (empty means zero).
    #[serde(default)]
    pub forcing: Vec<Polynomial>,
}

impl RhsHead {
    pub fn dim(&self) -> usize {
        self.linear.len()
    }

    pub fn eval(&self, t: f64, x: &[f64]) -> Vec<f64> {
        let d = self.dim();
        let mut out = vec![0.0; d];
        for (i, row) in self.linear.iter().enumerate() {
            out[i] = row.iter().zip(x).map(|(a, b)| a * b).sum();
        }
        for m in &self.monomials {
            let mut v = m.coef;
            for &(j, p) in &m.powers {
                v *= x[j].powi(p as i32);
            }
            out[m.target] += v;
        }
        for (i, p) in self.forcing.iter().enumerate() {
            out[i] += p.eval(t);
        }
        out
    }

    fn eval_interval(&self, t: Interval, x: &[Interval]) -> Vec<Interval> {
        let d = self.dim();
        let mut out = vec![Interval::point(0.0); d];
        for (i, row) in self.linear.iter().enumerate() {
            for (a, xi) in row.iter().zip(x) {
                out[i] = out[i].add(xi.scale(*a));
            }
        }
        for m in &self.monomials {
            let mut v = Interval::point(m.coef);
            for &(j, p) in &m.powers {
                v = v.mul(x[j].pow(p));
            }
            out[m.target] = out[m.target].add(v);
        }
        for (i, p) in self.forcing.iter().enumerate() {
            let mut v = Interval::point(0.0);
            for &c in p.coeffs.iter().rev() {
                v = v.mul(t).add(Interval::point(c));
            }
            out[i] = out[i].add(v);
        }
        out
    }

    /// Interval bound on `sup |d f_i / d x_j|` over the box, summed per row:
    /// a certified sup-norm Lipschitz constant.
    fn lipschitz_over(&self, t: Interval, x: &[Interval]) -> f64 {
        let d = self.dim();
        let _ = t;
        let mut worst = 0.0_f64;
        for i in 0..d {
            let mut row = 0.0;
            for j in 0..d {
                let mut bound = self.linear[i][j].abs();
                for m in &self.monomials {
                    if m.target != i {
                        continue;
                    }
                    if let Some(&(_, p)) = m.powers.iter().find(|&&(v, _)| v == j) {
                        let mut v = Interval::point(m.coef * p as f64);
                        if p > 1 {
                            v = v.mul(x[j].pow(p - 1));
                        }
                        for &(o, q) in &m.powers {
                            if o != j {
                                v = v.mul(x[o].pow(q));
                            }
                        }
                        bound += v.abs_sup();
                    }
                }
                row += bound;
            }
            worst = worst.max(row);
        }
        worst
    }

    fn validate(&self) -> Result<()> {
        let d = self.dim();
        if d == 0 {
            return Err(Error::InvalidProblem("right-hand side needs at least one coordinate".into()));
        }
        for row in &self.linear {
            if row.len() != d {
                return Err(Error::InvalidProblem("linear part must be square".into()));
            }
            if row.iter().any(|c| !c.is_finite()) {
                return Err(Error::InvalidProblem("non-finite linear coefficient".into()));
            }
        }
        for m in &self.monomials {
            if m.target >= d || !m.coef.is_finite() {
                return Err(Error::InvalidProblem("bad monomial".into()));
            }
            for &(j, p) in &m.powers {
                if j >= d || p == 0 || p > 8 {
                    return Err(Error::InvalidProblem(
                        "monomial powers must reference valid coordinates with degree 1..=8".into(),
                    ));
                }
            }
        }
        if self.forcing.len() > d {
            return Err(Error::InvalidProblem("more forcing rows than coordinates".into()));
        }
        Ok(())
    }
}

/// An initial value problem on the head coordinates, with certified
/// right-hand-side bounds over the working box.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CauchyProblem {
    pub horizon: f64,
    pub blocks: usize,
    /// Head dimension per block; their sum is the flattened dimension.
    pub head_dims: Vec<usize>,
    /// Flattened initial head coordinates.
    pub initial_point: Vec<f64>,
    pub rhs: RhsHead,
    pub tail_comparison: KamkeFn,
    /// Radius of the working ball about the initial point.
    pub radius: f64,
    /// Certified bound on `sup |f|` over the horizon times the working ball;
    /// computed by interval evaluation at construction, never trusted from
    /// input.
    #[serde(default)]
    pub xi: f64,
    /// Certified sup-norm Lipschitz constant of `f` over the same box.
    #[serde(default)]
    pub head_lipschitz: f64,
}

impl CauchyProblem {
    pub fn new(
        horizon: f64,
        blocks: usize,
        head_dims: Vec<usize>,
        initial_point: Vec<f64>,
        rhs: RhsHead,
        tail_comparison: KamkeFn,
        radius: f64,
    ) -> Result<Self> {
        let mut p = CauchyProblem {
            horizon,
            blocks,
            head_dims,
            initial_point,
            rhs,
            tail_comparison,
            radius,
            xi: 0.0,
            head_lipschitz: 0.0,
        };
        p.certify()?;
        Ok(p)
    }

    /// Recomputes the certified bounds; called by the constructor and after
    /// deserialization so input values are never trusted.
    pub fn certify(&mut self) -> Result<()> {
        if !(self.horizon > 0.0) || !self.horizon.is_finite() {
            return Err(Error::InvalidProblem(format!(
                "horizon must be positive, got {}",
                self.horizon
            )));
        }
        if self.blocks == 0 || self.head_dims.len() != self.blocks {
            return Err(Error::InvalidProblem("head dimensions must cover every block".into()));
        }
        let d: usize = self.head_dims.iter().sum();
        if d == 0 {
            return Err(Error::InvalidProblem("at least one head coordinate is required".into()));
        }
        if self.initial_point.len() != d || self.rhs.dim() != d {
            return Err(Error::InvalidProblem(format!(
                "dimension mismatch: {} head coordinates, initial point {}, rhs {}",
                d,
                self.initial_point.len(),
                self.rhs.dim()
            )));
        }
        if !(self.radius > 0.0) || !self.radius.is_finite() {
            return Err(Error::InvalidProblem("working radius must be positive".into()));
        }
        self.rhs.validate()?;
        self.tail_comparison.validate(self.horizon)?;

        let t = Interval::new(0.0, self.horizon);
        let x: Vec<Interval> = self
            .initial_point
            .iter()
            .map(|&c| Interval::new(c - self.radius, c + self.radius))
            .collect();
        let f = self.rhs.eval_interval(t, &x);
        self.xi = f.iter().map(|i| i.abs_sup()).fold(0.0, f64::max);
        self.head_lipschitz = self.rhs.lipschitz_over(t, &x);
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.head_dims.iter().sum()
    }
}

/// Scalar grid function on a uniform grid starting at 0.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridFn {
    pub step: f64,
    pub values: Vec<f64>,
}

impl GridFn {
    pub fn sup(&self) -> f64 {
        self.values.iter().copied().fold(0.0, f64::max)
    }
}

/// Vector-valued grid function (flattened head coordinates per node).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HeadGrid {
    pub step: f64,
    pub values: Vec<Vec<f64>>,
}

impl HeadGrid {
    pub fn constant(step: f64, nodes: usize, value: &[f64]) -> Self {
        HeadGrid {
            step,
            values: vec![value.to_vec(); nodes],
        }
    }

    pub fn sup_distance(&self, other: &HeadGrid) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .flat_map(|(a, b)| a.iter().zip(b).map(|(x, y)| (x - y).abs()))
            .fold(0.0, f64::max)
    }
}

/// One step of the integral operator: `x0 + integral of f(s, x(s))` by
/// cumulative trapezoid on the grid, with a step-halving error estimate.
/// Errors out when the input leaves the working ball.
pub fn picard_step(p: &CauchyProblem, x: &HeadGrid) -> Result<(HeadGrid, f64)> {
    let h = x.step;
    let n = x.values.len();
    for (i, node) in x.values.iter().enumerate() {
        let dist = node
            .iter()
            .zip(&p.initial_point)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        if dist > p.radius + 1e-12 {
            return Err(Error::LeftWorkingBall {
                t: i as f64 * h,
                radius: p.radius,
            });
        }
    }
    let d = p.dim();
    let fvals: Vec<Vec<f64>> = (0..n)
        .map(|i| p.rhs.eval(i as f64 * h, &x.values[i]))
        .collect();
    let mut out = vec![vec![0.0; d]; n];
    let mut coarse_end = vec![0.0; d];
    for c in 0..d {
        let col: Vec<f64> = fvals.iter().map(|v| v[c]).collect();
        let cum = cumulative_trapezoid(&col, h);
        for i in 0..n {
            out[i][c] = p.initial_point[c] + cum[i];
        }
        // Same rule at doubled step for the Richardson error estimate.
        let coarse: Vec<f64> = col.iter().step_by(2).copied().collect();
        let ccum = cumulative_trapezoid(&coarse, 2.0 * h);
        let at = ((coarse.len() - 1) * 2).min(n - 1);
        coarse_end[c] = (ccum.last().copied().unwrap_or(0.0) - cum[at]).abs();
    }
    let err = coarse_end.iter().copied().fold(0.0, f64::max) / 3.0;
    Ok((HeadGrid { step: h, values: out }, err))
}

/// Comparison-function iteration: `u_{k+1}(t) = integral over [0, t] of
/// w(s, u_k(s))`, by cumulative quadrature on the grid. Returns the
/// iterates `u_1..u_n`.
pub fn kamke_iterate(w: &KamkeFn, u0: &GridFn, iterations: usize) -> Vec<GridFn> {
    let h = u0.step;
    let mut out = Vec::with_capacity(iterations);
    let mut current = u0.values.clone();
    for _ in 0..iterations {
        let integrand: Vec<f64> = current
            .iter()
            .enumerate()
            .map(|(i, &u)| w.eval(i as f64 * h, u))
            .collect();
        current = cumulative_uniform(&integrand, h);
        out.push(GridFn {
            step: h,
            values: current.clone(),
        });
    }
    out
}

/// Enclosure tube: per grid node, one interval per head coordinate and one
/// tail radius per block, under a shared velocity bound.
#[derive(Debug, Clone)]
pub struct Tube {
    pub grid: Vec<f64>,
    pub head: Vec<Vec<Interval>>,
    pub tails: Vec<Vec<f64>>,
    pub lipschitz_bound: f64,
}

/// Modulus of continuity of the tube: the velocity bound times the window.
pub fn modulus_of_continuity(tube: &Tube, eps: f64) -> f64 {
    tube.lipschitz_bound * eps.max(0.0)
}

/// Decay certificate of the tail channel.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    /// Sup over the grid of the tail channel, per iteration (index 0 is the
    /// initial tube).
    pub u_history: Vec<f64>,
    pub iterations: usize,
    pub converged: bool,
    /// Per iteration, sup of `u_{n+1} - integral of w(s, u_n)`; nonpositive
    /// by construction of the clamped update.
    pub kamke_residuals: Vec<f64>,
    /// Horizon actually solved on.
    pub horizon: f64,
    /// Whether the horizon was truncated to 1 because the measure is convex
    /// but not sublinear.
    pub horizon_truncated: bool,
    /// Whether the certified bound satisfied `xi <= radius`.
    pub ball_hypothesis_ok: bool,
    pub xi: f64,
    pub radius: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveOptions {
    pub grid_step: f64,
    pub residual_tol: f64,
    pub certificate_tol: f64,
    pub max_point_iterations: usize,
    pub max_certificate_iterations: usize,
    /// Refuse to run when the certified bound exceeds the working radius.
    /// Disabling records the failed hypothesis in the certificate instead;
    /// the runtime containment checks still apply.
    pub enforce_ball_hypothesis: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            grid_step: 1e-3,
            residual_tol: 1e-9,
            certificate_tol: 1e-6,
            max_point_iterations: 200,
            max_certificate_iterations: 60,
            enforce_ball_hypothesis: true,
        }
    }
}

/// Solver output: grid samples of the approximate solution, the verified
/// residual, the final tube, and the decay certificate.
#[derive(Debug, Clone)]
pub struct SolveOutput {
    pub grid: Vec<f64>,
    pub samples: Vec<Vec<f64>>,
    pub residual: f64,
    pub point_iterations: usize,
    pub certificate: Certificate,
    pub tube: Tube,
}

/// Runs the point iteration and the enclosure iteration for the problem
/// under the given measure.
///
/// The horizon is truncated to `min(1, a)` unless the measure is sublinear.
/// With `enforce_ball_hypothesis` set (the default), a certified bound above
/// the working radius is a refusal; otherwise it is recorded and the run
/// relies on the runtime containment checks.
pub fn solve(p: &CauchyProblem, m: &Mnc, opts: &SolveOptions) -> Result<SolveOutput> {
    if m.blocks() != p.blocks {
        return Err(Error::BlockMismatch {
            left: m.blocks(),
            right: p.blocks,
        });
    }
    if !(opts.grid_step > 0.0) {
        return Err(Error::InvalidParameter("grid step must be positive".into()));
    }
    let ball_ok = p.xi <= p.radius;
    if opts.enforce_ball_hypothesis && !ball_ok {
        return Err(Error::BallHypothesis {
            xi: p.xi,
            radius: p.radius,
        });
    }

    let truncated = !m.class().is_sublinear() && p.horizon > 1.0;
    let a1 = if truncated { 1.0 } else { p.horizon };
    let nodes = ((a1 / opts.grid_step).round() as usize).max(1);
    let h = a1 / nodes as f64;
    let n = nodes + 1;
    let grid: Vec<f64> = (0..n).map(|i| i as f64 * h).collect();

    // Point channel.
    let mut x = HeadGrid::constant(h, n, &p.initial_point);
    let mut residual = f64::INFINITY;
    let mut point_iterations = 0;
    let mut converged_point = false;
    while point_iterations < opts.max_point_iterations {
        let (next, _quad_err) = picard_step(p, &x)?;
        let delta = next.sup_distance(&x);
        x = next;
        point_iterations += 1;
        if delta <= 0.5 * opts.residual_tol {
            residual = doubled_resolution_residual(p, &x)?;
            if residual <= opts.residual_tol {
                converged_point = true;
                break;
            }
        }
    }
    if !converged_point {
        return Err(Error::NoConvergence {
            channel: "point",
            iterations: point_iterations,
            detail: format!("verified residual {residual:e} above {:e}", opts.residual_tol),
        });
    }

    // Initial enclosure: velocity bound xi from the initial point, clipped
    // to the working ball so interval evaluation stays inside the certified
    // box.
    let clip = |w: f64| w.min(p.radius);
    let mut head: Vec<Vec<Interval>> = grid
        .iter()
        .map(|&t| {
            p.initial_point
                .iter()
                .map(|&c| {
                    let w = clip(p.xi * t);
                    Interval::new(c - w, c + w)
                })
                .collect()
        })
        .collect();
    let mut u: Vec<f64> = grid.iter().map(|&t| clip(p.xi * t)).collect();
    let radii_of = |u: f64| VElement::uniform(p.blocks, u.max(0.0));
    let mut u_mu: Vec<f64> = u.iter().map(|&v| m.eval_radii(&radii_of(v))).collect();

    let mut u_history = vec![u_mu.iter().copied().fold(0.0, f64::max)];
    let mut kamke_residuals = Vec::new();
    let mut converged_cert = false;
    let mut cert_iterations = 0;
    for _ in 0..opts.max_certificate_iterations {
        // Head channel: interval cumulative integral of f over the hull of
        // adjacent enclosures, intersected with the previous tube.
        let mut acc: Vec<Interval> = vec![Interval::point(0.0); p.dim()];
        let mut next_head = Vec::with_capacity(n);
        next_head.push(p.initial_point.iter().map(|&c| Interval::point(c)).collect::<Vec<_>>());
        for i in 0..n - 1 {
            let hull: Vec<Interval> = head[i]
                .iter()
                .zip(&head[i + 1])
                .map(|(a, b)| a.hull(*b))
                .collect();
            let t = Interval::new(grid[i], grid[i + 1]);
            let f = p.rhs.eval_interval(t, &hull);
            for (a, df) in acc.iter_mut().zip(&f) {
                *a = a.add(df.scale(h));
            }
            let enclosure: Vec<Interval> = p
                .initial_point
                .iter()
                .zip(&acc)
                .zip(&head[i + 1])
                .map(|((&c, inc), prev)| {
                    Interval::new(c + inc.lo, c + inc.hi)
                        .intersect(*prev)
                        .unwrap_or(*prev)
                })
                .collect();
            next_head.push(enclosure);
        }
        head = next_head;

        // Tail channel: comparison update, clamped to stay below the
        // previous level.
        let integrand: Vec<f64> = u
            .iter()
            .enumerate()
            .map(|(i, &v)| p.tail_comparison.eval(grid[i], v))
            .collect();
        let integral = cumulative_uniform(&integrand, h);
        let next_u: Vec<f64> = integral
            .iter()
            .zip(&u)
            .map(|(a, b)| a.min(*b).max(0.0))
            .collect();
        let resid = next_u
            .iter()
            .zip(&integral)
            .map(|(nu, int)| nu - int)
            .fold(f64::NEG_INFINITY, f64::max);
        kamke_residuals.push(resid);
        u = next_u;
        u_mu = u.iter().map(|&v| m.eval_radii(&radii_of(v))).collect();
        u_history.push(u_mu.iter().copied().fold(0.0, f64::max));
        cert_iterations += 1;
        if *u_history.last().unwrap() <= opts.certificate_tol {
            converged_cert = true;
            break;
        }
    }

    let tails: Vec<Vec<f64>> = u.iter().map(|&v| vec![v; p.blocks]).collect();
    let tube = Tube {
        grid: grid.clone(),
        head,
        tails,
        lipschitz_bound: p.xi,
    };
    let certificate = Certificate {
        u_history,
        iterations: cert_iterations,
        converged: converged_cert,
        kamke_residuals,
        horizon: a1,
        horizon_truncated: truncated,
        ball_hypothesis_ok: ball_ok,
        xi: p.xi,
        radius: p.radius,
    };
    Ok(SolveOutput {
        grid,
        samples: x.values,
        residual,
        point_iterations,
        certificate,
        tube,
    })
}

/// Residual of the fixed point recomputed independently at half the step:
/// the grid function is interpolated linearly onto the refined grid, the
/// operator applied there, and the sup gap taken at the original nodes.
fn doubled_resolution_residual(p: &CauchyProblem, x: &HeadGrid) -> Result<f64> {
    let n = x.values.len();
    if n < 2 {
        return Ok(0.0);
    }
    let h2 = 0.5 * x.step;
    let mut fine = Vec::with_capacity(2 * n - 1);
    for i in 0..n - 1 {
        fine.push(x.values[i].clone());
        fine.push(
            x.values[i]
                .iter()
                .zip(&x.values[i + 1])
                .map(|(a, b)| 0.5 * (a + b))
                .collect(),
        );
    }
    fine.push(x.values[n - 1].clone());
    let fine_grid = HeadGrid {
        step: h2,
        values: fine,
    };
    let (ax, _) = picard_step(p, &fine_grid)?;
    let mut resid = 0.0_f64;
    for i in 0..n {
        for (a, b) in x.values[i].iter().zip(&ax.values[2 * i]) {
            resid = resid.max((a - b).abs());
        }
    }
    Ok(resid)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mnc::Mnc;

    fn decay_problem(radius: f64) -> CauchyProblem {
        CauchyProblem::new(
            1.0,
            1,
            vec![1],
            vec![1.0],
            RhsHead {
                linear: vec![vec![-1.0]],
                monomials: vec![],
                forcing: vec![],
            },
            KamkeFn::Linear { rate: 1.0 },
            radius,
        )
        .unwrap()
    }

    fn relaxed() -> SolveOptions {
        SolveOptions {
            enforce_ball_hypothesis: false,
            ..SolveOptions::default()
        }
    }

    #[test]
    fn certification_bounds() {
        let p = decay_problem(2.0);
        // sup |x| over [1 - 2, 1 + 2].
        assert_eq!(p.xi, 3.0);
        assert_eq!(p.head_lipschitz, 1.0);
    }

    #[test]
    fn picard_step_examples() {
        let p = decay_problem(2.0);
        let h = 1.0 / 1024.0; // dyadic so the constant-integrand case is exact
        let x = HeadGrid::constant(h, 1025, &[1.0]);
        let (ax, _) = picard_step(&p, &x).unwrap();
        for (i, v) in ax.values.iter().enumerate() {
            assert_eq!(v[0], 1.0 - i as f64 * h);
        }

        let zero = CauchyProblem::new(
            1.0,
            1,
            vec![1],
            vec![1.0],
            RhsHead {
                linear: vec![vec![0.0]],
                monomials: vec![],
                forcing: vec![],
            },
            KamkeFn::Linear { rate: 1.0 },
            1.0,
        )
        .unwrap();
        let (ax, _) = picard_step(&zero, &x).unwrap();
        assert!(ax.values.iter().all(|v| v[0] == 1.0));
    }

    #[test]
    fn picard_iteration_reaches_the_exponential() {
        let p = decay_problem(2.0);
        let h = 1e-3;
        let n = 1001;
        let mut x = HeadGrid::constant(h, n, &[1.0]);
        for _ in 0..25 {
            let (next, _) = picard_step(&p, &x).unwrap();
            x = next;
        }
        let at_one = x.values[n - 1][0];
        assert!(
            (at_one - (-1.0_f64).exp()).abs() <= 1e-6,
            "x(1) = {at_one}"
        );
    }

    #[test]
    fn picard_step_rejects_escaped_iterates() {
        let p = decay_problem(0.5);
        let x = HeadGrid::constant(1e-2, 101, &[2.0]);
        assert!(matches!(
            picard_step(&p, &x),
            Err(Error::LeftWorkingBall { .. })
        ));
    }

    #[test]
    fn kamke_examples() {
        let n = 1000;
        let h = 1.0 / n as f64;
        let w = KamkeFn::Linear { rate: 1.0 };
        let ones = GridFn {
            step: h,
            values: vec![1.0; n + 1],
        };
        let iterates = kamke_iterate(&w, &ones, 5);
        let u5 = iterates[4].values[n];
        assert!((u5 - 1.0 / 120.0).abs() <= 1e-9, "u5(1) = {u5}");

        let zeros = GridFn {
            step: h,
            values: vec![0.0; n + 1],
        };
        for it in kamke_iterate(&w, &zeros, 3) {
            assert!(it.values.iter().all(|&v| v == 0.0));
        }

        let ramp = GridFn {
            step: h,
            values: (0..=n).map(|i| i as f64 * h).collect(),
        };
        let u1 = &kamke_iterate(&w, &ramp, 1)[0];
        for (i, &v) in u1.values.iter().enumerate() {
            let t = i as f64 * h;
            assert!((v - 0.5 * t * t).abs() <= 1e-12, "u1({t}) = {v}");
        }
    }

    #[test]
    fn solve_zero_field_is_exact() {
        let p = CauchyProblem::new(
            1.0,
            1,
            vec![1],
            vec![1.0],
            RhsHead {
                linear: vec![vec![0.0]],
                monomials: vec![],
                forcing: vec![],
            },
            KamkeFn::Linear { rate: 1.0 },
            1.0,
        )
        .unwrap();
        // xi = 0 <= radius: the gate passes on its own.
        let out = solve(&p, &Mnc::hausdorff(1), &SolveOptions::default()).unwrap();
        assert!(out.samples.iter().all(|v| v[0] == 1.0));
        assert_eq!(out.residual, 0.0);
        assert!(out.certificate.converged);
        assert!(out.certificate.ball_hypothesis_ok);
        // u vanishes from the first update on.
        assert!(out.certificate.u_history[1] <= 1e-12);
    }

    #[test]
    fn solve_gate_refuses_oversized_bounds() {
        let p = decay_problem(2.0); // xi = 3 > 2
        let err = solve(&p, &Mnc::hausdorff(1), &SolveOptions::default()).unwrap_err();
        assert!(matches!(err, Error::BallHypothesis { .. }));
    }

    #[test]
    fn solve_decay_problem() {
        let p = decay_problem(2.0);
        let out = solve(&p, &Mnc::hausdorff(1), &relaxed()).unwrap();
        let last = out.samples.last().unwrap()[0];
        assert!((last - (-1.0_f64).exp()).abs() <= 1e-6, "x(1) = {last}");
        assert!(out.residual <= 1e-9);
        assert!(!out.certificate.ball_hypothesis_ok);
        assert!(out.certificate.converged);
        // Monotone decay of the certificate.
        for w in out.certificate.u_history.windows(2) {
            assert!(w[1] <= w[0] + 1e-15);
        }
        // Clamped comparison updates stay below their integrals.
        for r in &out.certificate.kamke_residuals {
            assert!(*r <= 1e-15);
        }
    }

    #[test]
    fn solve_rotation_problem() {
        let p = CauchyProblem::new(
            1.0,
            1,
            vec![2],
            vec![1.0, 0.0],
            RhsHead {
                linear: vec![vec![0.0, 1.0], vec![-1.0, 0.0]],
                monomials: vec![],
                forcing: vec![],
            },
            KamkeFn::Linear { rate: 1.0 },
            2.0,
        )
        .unwrap();
        let out = solve(&p, &Mnc::hausdorff(1), &relaxed()).unwrap();
        let last = out.samples.last().unwrap();
        assert!((last[0] - 1.0_f64.cos()).abs() <= 1e-6, "{last:?}");
        assert!((last[1] + 1.0_f64.sin()).abs() <= 1e-6, "{last:?}");
        assert!(out.certificate.converged);
    }

    #[test]
    fn horizon_truncation_for_convex_measures() {
        let mut p = decay_problem(2.0);
        p.horizon = 2.0;
        p.certify().unwrap();
        let sq = crate::mnc::make_mnc(
            crate::mnc::MncSpec::ConvexOfRadii {
                phi: crate::mnc::PhiSpec::NormPower {
                    norm: crate::mnc::NormKind::Sup,
                    power: 2.0,
                },
            },
            1,
        )
        .unwrap();
        let out = solve(&p, &sq, &relaxed()).unwrap();
        assert!(out.certificate.horizon_truncated);
        assert_eq!(out.certificate.horizon, 1.0);
        assert!((out.grid.last().unwrap() - 1.0).abs() < 1e-12);

        let out = solve(&p, &Mnc::hausdorff(1), &relaxed()).unwrap();
        assert!(!out.certificate.horizon_truncated);
        assert!((out.grid.last().unwrap() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn modulus_examples() {
        let tube = Tube {
            grid: vec![0.0, 1.0],
            head: vec![vec![], vec![]],
            tails: vec![vec![0.0], vec![0.0]],
            lipschitz_bound: 2.0,
        };
        assert_eq!(modulus_of_continuity(&tube, 0.1), 0.2);
        assert_eq!(modulus_of_continuity(&tube, 0.0), 0.0);
    }
}
