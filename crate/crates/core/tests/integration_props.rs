//! Randomized verification of the set-integral inequalities, the underlying
//! mean-value convexity, and a selection-hull oracle for the set-valued
//! integral.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use mnc_core::family::{aumann_integral, SetFamily};
use mnc_core::inequality::{verify_inequality, DEFAULT_QUAD_TOL};
use mnc_core::mnc::demo_catalog;
use mnc_core::poly::{PiecewisePoly, Polynomial};
use mnc_core::quad::adaptive_simpson;
use mnc_core::sample::{sample_family, PathStyle};
use mnc_core::sets::{BlockBox, BoxTail, StructuredSet, VElement};
use mnc_core::support::hausdorff_distance;

fn styles(i: usize) -> PathStyle {
    match i % 3 {
        0 => PathStyle::Continuous,
        1 => PathStyle::Jumpy,
        _ => PathStyle::Steps,
    }
}

#[test]
fn scaled_inequality_never_fails_and_plain_holds_in_scope() {
    let mut rng = ChaCha8Rng::seed_from_u64(51);
    let blocks = 2;
    let catalog = demo_catalog(blocks);
    for i in 0..60 {
        let horizon = [0.5, 1.0, 2.0][i % 3];
        let fam = sample_family(&mut rng, blocks, horizon, styles(i));
        for m in &catalog {
            for frac in [0.3, 0.7, 1.0] {
                let t = horizon * frac;
                let r = verify_inequality(m, &fam, t, DEFAULT_QUAD_TOL).unwrap();
                assert!(
                    r.holds_scaled,
                    "{} at t = {t}: {} > {}",
                    m.label(),
                    r.lhs,
                    r.rhs_scaled
                );
                if t <= 1.0 || m.class().is_sublinear() {
                    assert!(
                        r.holds_plain,
                        "{} at t = {t}: {} > {}",
                        m.label(),
                        r.lhs,
                        r.rhs_plain
                    );
                }
            }
        }
    }
}

#[test]
fn mean_value_convexity_of_the_scalarization() {
    // phi of the mean radii vector never exceeds the mean of phi.
    let mut rng = ChaCha8Rng::seed_from_u64(52);
    let blocks = 2;
    let catalog = demo_catalog(blocks);
    for i in 0..40 {
        let fam = sample_family(&mut rng, blocks, 1.0, styles(i));
        let t = rng.gen_range(2..=10) as f64 / 10.0;
        let mean = aumann_integral(&fam, t).unwrap().v_embed().scale(1.0 / t);
        let cuts = fam.breakpoints_before(t);
        for m in &catalog {
            let f = |s: f64| {
                let radii: Vec<f64> = fam.tail_paths.iter().map(|p| p.eval(s).max(0.0)).collect();
                m.eval_radii(&VElement::new(radii).unwrap())
            };
            let (int, err) = adaptive_simpson(&f, 0.0, t, DEFAULT_QUAD_TOL, &cuts).unwrap();
            let lhs = m.eval_radii(&mean);
            let rhs = int / t;
            assert!(
                lhs <= rhs + err / t + 1e-10 * (1.0 + rhs),
                "{}: {} > {}",
                m.label(),
                lhs,
                rhs
            );
        }
    }
}

// --- selection-hull oracle --------------------------------------------------

fn cross(o: [f64; 2], a: [f64; 2], b: [f64; 2]) -> f64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

fn hull_2d(mut pts: Vec<[f64; 2]>) -> Vec<[f64; 2]> {
    pts.sort_by(|a, b| a.partial_cmp(b).unwrap());
    pts.dedup();
    if pts.len() <= 2 {
        return pts;
    }
    let mut lower: Vec<[f64; 2]> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0.0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<[f64; 2]> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0.0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// Two-coordinate compact family with polynomial paths.
fn planar_family(rng: &mut ChaCha8Rng) -> SetFamily {
    let poly = |rng: &mut ChaCha8Rng, nonneg: bool| {
        let lo = if nonneg { 0 } else { -8 };
        let deg = rng.gen_range(0..=2);
        PiecewisePoly::single(
            1.0,
            Polynomial::new((0..=deg).map(|_| rng.gen_range(lo..=8) as f64 / 8.0).collect()),
        )
    };
    SetFamily {
        interval: 1.0,
        center_paths: vec![vec![poly(rng, false), poly(rng, false)]],
        head_radius_paths: vec![vec![poly(rng, true), poly(rng, true)]],
        tail_paths: vec![PiecewisePoly::constant(1.0, 0.0)],
    }
}

#[test]
fn selection_hull_oracle_recovers_the_set_integral() {
    let mut rng = ChaCha8Rng::seed_from_u64(53);
    let steps = 200usize;
    let ds = 1.0 / steps as f64;
    for _ in 0..5 {
        let fam = planar_family(&mut rng);
        fam.validate().unwrap();
        let integral = aumann_integral(&fam, 1.0).unwrap();

        let eval = |s: f64, signs: [f64; 2]| -> [f64; 2] {
            let c0 = fam.center_paths[0][0].eval(s);
            let c1 = fam.center_paths[0][1].eval(s);
            let a0 = fam.head_radius_paths[0][0].eval(s).max(0.0);
            let a1 = fam.head_radius_paths[0][1].eval(s).max(0.0);
            [c0 + signs[0] * a0, c1 + signs[1] * a1]
        };
        // 10^4 Riemann sums of measurable selections: constant corner
        // patterns (hitting extreme points) plus sign paths flipping at a
        // random time (interior points).
        let mut points: Vec<[f64; 2]> = Vec::with_capacity(10_000);
        for i in 0..10_000 {
            let (first, second): ([f64; 2], [f64; 2]) = if i < 8 {
                let pat = [
                    if i & 1 == 1 { 1.0 } else { -1.0 },
                    if i & 2 == 2 { 1.0 } else { -1.0 },
                ];
                (pat, pat)
            } else {
                let r = |rng: &mut ChaCha8Rng| if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
                ([r(&mut rng), r(&mut rng)], [r(&mut rng), r(&mut rng)])
            };
            let flip = rng.gen_range(0..=steps);
            let mut acc = [0.0_f64; 2];
            for j in 0..steps {
                let s = (j as f64 + 0.5) * ds;
                let signs = if j < flip { first } else { second };
                let g = eval(s, signs);
                acc[0] += g[0] * ds;
                acc[1] += g[1] * ds;
            }
            points.push(acc);
        }
        let hull = hull_2d(points);
        let members: Vec<BoxTail> = hull
            .iter()
            .map(|p| BoxTail::new(vec![BlockBox::point(vec![p[0], p[1]])]).unwrap())
            .collect();
        let hull_set = StructuredSet::new(members, true).unwrap();
        let d = hausdorff_distance(&hull_set, &integral);
        assert!(
            d.value <= 1e-2 + d.tolerance,
            "selection hull is {} away from the set integral",
            d.value
        );
    }
}
