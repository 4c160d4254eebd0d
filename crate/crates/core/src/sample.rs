//! Deterministic random generators for structured sets and set families.
//!
//! All coordinates are drawn from a dyadic lattice (multiples of a power of
//! two) so that the closed-form set algebra stays exact in f64 and the axiom
//! checks can compare without tolerance.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::family::SetFamily;
use crate::poly::{PiecewisePoly, Polynomial};
use crate::sets::{BlockBox, BoxTail, StructuredSet};

/// Random multiple of `1 / denom` with numerator in `[lo, hi]`.
pub fn dyadic(rng: &mut ChaCha8Rng, lo: i32, hi: i32, denom: f64) -> f64 {
    rng.gen_range(lo..=hi) as f64 / denom
}

/// Generator for random structured sets on a fixed block model.
#[derive(Debug, Clone)]
pub struct SetSampler {
    pub blocks: usize,
    pub max_members: usize,
    pub max_head: usize,
}

impl SetSampler {
    pub fn new(blocks: usize) -> Self {
        SetSampler {
            blocks,
            max_members: 3,
            max_head: 3,
        }
    }

    fn sample_block(&self, rng: &mut ChaCha8Rng, compact: bool) -> BlockBox {
        let n = rng.gen_range(0..=self.max_head);
        let center = (0..n).map(|_| dyadic(rng, -32, 32, 16.0)).collect();
        let head_radii = (0..n).map(|_| dyadic(rng, 0, 32, 16.0)).collect();
        let tail_radius = if compact { 0.0 } else { dyadic(rng, 0, 32, 16.0) };
        BlockBox {
            center,
            head_radii,
            tail_radius,
        }
    }

    fn sample_body(&self, rng: &mut ChaCha8Rng, compact: bool) -> BoxTail {
        BoxTail {
            blocks: (0..self.blocks).map(|_| self.sample_block(rng, compact)).collect(),
        }
    }

    /// Random union of bodies, possibly compact, possibly convexified.
    pub fn sample(&self, rng: &mut ChaCha8Rng) -> StructuredSet {
        let members = rng.gen_range(1..=self.max_members);
        let compact = rng.gen_bool(0.25);
        StructuredSet {
            members: (0..members).map(|_| self.sample_body(rng, compact)).collect(),
            convexified: rng.gen_bool(0.5),
        }
    }

    /// Random single-body convex set.
    pub fn sample_single_body(&self, rng: &mut ChaCha8Rng) -> StructuredSet {
        StructuredSet::body(self.sample_body(rng, false))
    }

    /// Random set with every tail radius zero.
    pub fn sample_compact(&self, rng: &mut ChaCha8Rng) -> StructuredSet {
        let members = rng.gen_range(1..=self.max_members);
        StructuredSet {
            members: (0..members).map(|_| self.sample_body(rng, true)).collect(),
            convexified: rng.gen_bool(0.5),
        }
    }

    /// Random set with at least one strictly positive tail radius.
    pub fn sample_noncompact(&self, rng: &mut ChaCha8Rng) -> StructuredSet {
        let mut s = self.sample(rng);
        let m = rng.gen_range(0..s.members.len());
        let j = rng.gen_range(0..self.blocks);
        let r = &mut s.members[m].blocks[j].tail_radius;
        if *r == 0.0 {
            *r = dyadic(rng, 1, 32, 16.0);
        }
        s
    }

    /// Constructive superset: inflates every radius of every member of `s`
    /// by a shared nonnegative dyadic amount, and may append extra members.
    pub fn inflate(&self, rng: &mut ChaCha8Rng, s: &StructuredSet) -> StructuredSet {
        let bump = dyadic(rng, 0, 16, 16.0);
        let mut members: Vec<BoxTail> = s
            .members
            .iter()
            .map(|m| BoxTail {
                blocks: m
                    .blocks
                    .iter()
                    .map(|b| BlockBox {
                        center: b.center.clone(),
                        head_radii: b.head_radii.iter().map(|r| r + bump).collect(),
                        tail_radius: b.tail_radius + bump,
                    })
                    .collect(),
            })
            .collect();
        if rng.gen_bool(0.3) {
            members.push(members[0].clone());
        }
        StructuredSet {
            members,
            convexified: s.convexified,
        }
    }

    /// Random compact set confined to at most `dims` effective coordinates
    /// of block zero, suitable for the inflation oracle. With three
    /// dimensions the result is a single body.
    pub fn sample_zero_tail_low_dim(&self, rng: &mut ChaCha8Rng, dims: usize) -> StructuredSet {
        assert!((1..=3).contains(&dims));
        let members = if dims == 3 { 1 } else { rng.gen_range(1..=3) };
        let mk = |rng: &mut ChaCha8Rng| {
            let center = (0..dims).map(|_| dyadic(rng, -24, 24, 16.0)).collect();
            let head_radii = (0..dims).map(|_| dyadic(rng, 0, 24, 16.0)).collect();
            let mut blocks = vec![BlockBox {
                center,
                head_radii,
                tail_radius: 0.0,
            }];
            for _ in 1..self.blocks {
                blocks.push(BlockBox::point(Vec::new()));
            }
            BoxTail { blocks }
        };
        StructuredSet {
            members: (0..members).map(|_| mk(rng)).collect(),
            convexified: true,
        }
    }
}

/// Path regularity requested from the family generator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PathStyle {
    Continuous,
    Jumpy,
    Steps,
}

/// Random set family on `[0, horizon]`: per block a nonnegative
/// piecewise-polynomial tail path, plus short head center/radius paths.
pub fn sample_family(
    rng: &mut ChaCha8Rng,
    blocks: usize,
    horizon: f64,
    style: PathStyle,
) -> SetFamily {
    let breaks = sample_breakpoints(rng, horizon);
    let tail_paths = (0..blocks)
        .map(|_| sample_path(rng, &breaks, style, true))
        .collect();
    let center_paths = (0..blocks)
        .map(|_| {
            let n = rng.gen_range(0..=2);
            (0..n).map(|_| sample_path(rng, &breaks, style, false)).collect()
        })
        .collect();
    let head_radius_paths = (0..blocks)
        .map(|_| Vec::new())
        .collect();
    let mut fam = SetFamily {
        interval: horizon,
        center_paths,
        head_radius_paths,
        tail_paths,
    };
    // Head radius paths mirror the head center count.
    fam.head_radius_paths = fam
        .center_paths
        .iter()
        .map(|paths| {
            paths
                .iter()
                .map(|_| sample_path(rng, &breaks, style, true))
                .collect()
        })
        .collect();
    fam.validate().expect("generated family is valid by construction");
    fam
}

fn sample_breakpoints(rng: &mut ChaCha8Rng, horizon: f64) -> Vec<f64> {
    let pieces = rng.gen_range(1..=3);
    let mut cuts: Vec<f64> = (0..pieces - 1)
        .map(|_| dyadic(rng, 1, 15, 16.0) * horizon)
        .collect();
    cuts.sort_by(f64::total_cmp);
    cuts.dedup();
    let mut breaks = vec![0.0];
    breaks.extend(cuts.into_iter().filter(|c| *c > 0.0 && *c < horizon));
    breaks.push(horizon);
    breaks
}

fn sample_path(rng: &mut ChaCha8Rng, breaks: &[f64], style: PathStyle, nonneg: bool) -> PiecewisePoly {
    let lo = if nonneg { 0 } else { -16 };
    let pieces: Vec<Polynomial> = (0..breaks.len() - 1)
        .map(|_| {
            let coeffs = match style {
                PathStyle::Steps => vec![dyadic(rng, lo, 16, 8.0)],
                _ => {
                    let deg = rng.gen_range(0..=2);
                    (0..=deg).map(|_| dyadic(rng, lo, 16, 8.0)).collect()
                }
            };
            Polynomial::new(coeffs)
        })
        .collect();
    let mut pp = PiecewisePoly::new(breaks.to_vec(), pieces).expect("valid by construction");
    if style == PathStyle::Continuous {
        pp.make_continuous();
    }
    pp
}

/// The slate of sets used by the inequivalence demo: seeded random sets plus
/// the unit ball, where the sum-to-sup ratio peaks at exactly the block count.
pub fn inequivalence_demo_sets(blocks: usize, count: usize, seed: u64) -> Vec<StructuredSet> {
    use rand::SeedableRng;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sampler = SetSampler::new(blocks);
    let mut sets: Vec<StructuredSet> = (0..count).map(|_| sampler.sample(&mut rng)).collect();
    sets.push(StructuredSet::unit_ball(blocks));
    sets
}
