//! Minimal interval arithmetic for certifying right-hand-side bounds and for
//! the containment channel of the set iteration. Outward rounding is not
//! modeled; the certified quantities tolerate f64 rounding at the scale of
//! the comparisons they feed.

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Self {
        debug_assert!(lo <= hi, "interval [{lo}, {hi}]");
        Interval { lo, hi }
    }

    pub fn point(x: f64) -> Self {
        Interval { lo: x, hi: x }
    }

    pub fn add(self, other: Interval) -> Interval {
        Interval::new(self.lo + other.lo, self.hi + other.hi)
    }

    pub fn mul(self, other: Interval) -> Interval {
        let c = [
            self.lo * other.lo,
            self.lo * other.hi,
            self.hi * other.lo,
            self.hi * other.hi,
        ];
        Interval::new(
            c.iter().copied().fold(f64::INFINITY, f64::min),
            c.iter().copied().fold(f64::NEG_INFINITY, f64::max),
        )
    }

    pub fn scale(self, k: f64) -> Interval {
        if k >= 0.0 {
            Interval::new(self.lo * k, self.hi * k)
        } else {
            Interval::new(self.hi * k, self.lo * k)
        }
    }

    pub fn pow(self, p: u32) -> Interval {
        if p == 0 {
            return Interval::point(1.0);
        }
        let mut out = self;
        for _ in 1..p {
            out = out.mul(self);
        }
        // Even powers of sign-crossing intervals floor at zero.
        if p % 2 == 0 && self.lo < 0.0 && self.hi > 0.0 {
            out.lo = 0.0;
        }
        out
    }

    pub fn hull(self, other: Interval) -> Interval {
        Interval::new(self.lo.min(other.lo), self.hi.max(other.hi))
    }

    pub fn intersect(self, other: Interval) -> Option<Interval> {
        let lo = self.lo.max(other.lo);
        let hi = self.hi.min(other.hi);
        (lo <= hi).then_some(Interval { lo, hi })
    }

    pub fn abs_sup(self) -> f64 {
        self.lo.abs().max(self.hi.abs())
    }

    pub fn width(self) -> f64 {
        self.hi - self.lo
    }

    pub fn contains(self, x: f64) -> bool {
        (self.lo..=self.hi).contains(&x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic() {
        let a = Interval::new(-1.0, 2.0);
        let b = Interval::new(0.5, 3.0);
        assert_eq!(a.add(b), Interval::new(-0.5, 5.0));
        assert_eq!(a.mul(b), Interval::new(-3.0, 6.0));
        assert_eq!(a.pow(2), Interval::new(0.0, 4.0));
        assert_eq!(a.scale(-2.0), Interval::new(-4.0, 2.0));
        assert_eq!(a.abs_sup(), 2.0);
        assert_eq!(a.intersect(b), Some(Interval::new(0.5, 2.0)));
        assert_eq!(Interval::new(-1.0, 0.0).intersect(Interval::new(0.5, 1.0)), None);
    }
}
