//! Polynomials and piecewise polynomials on `[0, a]`, with exact
//! antiderivatives. These are the path class of set families and weighted
//! comparison rates: integrability and one-sided limits hold by construction.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Dense polynomial in the monomial basis: `coeffs[i] * s^i`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Polynomial {
    pub coeffs: Vec<f64>,
}

impl Polynomial {
    pub fn new(coeffs: Vec<f64>) -> Self {
        Polynomial { coeffs }
    }

    pub fn constant(c: f64) -> Self {
        Polynomial { coeffs: vec![c] }
    }

    pub fn eval(&self, s: f64) -> f64 {
        let mut v = 0.0;
        for &c in self.coeffs.iter().rev() {
            v = v * s + c;
        }
        v
    }

    /// Degree after ignoring trailing zero coefficients.
    pub fn degree(&self) -> usize {
        let mut d = 0;
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c != 0.0 {
                d = i;
            }
        }
        d
    }

    /// Antiderivative with zero constant term.
    pub fn antiderivative(&self) -> Polynomial {
        let mut coeffs = vec![0.0];
        coeffs.extend(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, &c)| c / (i as f64 + 1.0)),
        );
        Polynomial { coeffs }
    }
}

/// Piecewise polynomial over strictly increasing breakpoints starting at 0.
/// Evaluation is right-continuous at interior breakpoints; the final point
/// uses the last piece.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PiecewisePoly {
    pub breakpoints: Vec<f64>,
    pub pieces: Vec<Polynomial>,
}

impl PiecewisePoly {
    pub fn new(breakpoints: Vec<f64>, pieces: Vec<Polynomial>) -> Result<Self> {
        if breakpoints.len() != pieces.len() + 1 || pieces.is_empty() {
            return Err(Error::InvalidPath(format!(
                "{} breakpoints cannot delimit {} pieces",
                breakpoints.len(),
                pieces.len()
            )));
        }
        if breakpoints[0] != 0.0 {
            return Err(Error::InvalidPath("breakpoints must start at 0".into()));
        }
        for w in breakpoints.windows(2) {
            if !(w[1] > w[0]) {
                return Err(Error::InvalidPath("breakpoints must be strictly increasing".into()));
            }
        }
        for b in &breakpoints {
            if !b.is_finite() {
                return Err(Error::InvalidPath("non-finite breakpoint".into()));
            }
        }
        for p in &pieces {
            if p.coeffs.iter().any(|c| !c.is_finite()) {
                return Err(Error::InvalidPath("non-finite coefficient".into()));
            }
        }
        Ok(PiecewisePoly {
            breakpoints,
            pieces,
        })
    }

    pub fn constant(domain_end: f64, c: f64) -> Self {
        PiecewisePoly {
            breakpoints: vec![0.0, domain_end],
            pieces: vec![Polynomial::constant(c)],
        }
    }

    /// Single polynomial piece over `[0, domain_end]`.
    pub fn single(domain_end: f64, p: Polynomial) -> Self {
        PiecewisePoly {
            breakpoints: vec![0.0, domain_end],
            pieces: vec![p],
        }
    }

    pub fn domain_end(&self) -> f64 {
        *self.breakpoints.last().unwrap()
    }

    fn piece_index(&self, s: f64) -> usize {
        // Right-continuous: the piece whose half-open interval holds s.
        match self
            .breakpoints
            .binary_search_by(|b| b.total_cmp(&s))
        {
            Ok(i) => i.min(self.pieces.len() - 1),
            Err(i) => (i - 1).min(self.pieces.len() - 1),
        }
    }

    pub fn eval(&self, s: f64) -> f64 {
        self.pieces[self.piece_index(s)].eval(s)
    }

    /// Exact integral over `[0, t]` via piece antiderivatives.
    pub fn integral(&self, t: f64) -> f64 {
        let mut total = 0.0;
        for (i, p) in self.pieces.iter().enumerate() {
            let lo = self.breakpoints[i];
            if t <= lo {
                break;
            }
            let hi = self.breakpoints[i + 1].min(t);
            let anti = p.antiderivative();
            total += anti.eval(hi) - anti.eval(lo);
        }
        total
    }

    /// Interior breakpoints inside `(0, t)`, for quadrature splitting.
    pub fn interior_breakpoints(&self, t: f64) -> Vec<f64> {
        self.breakpoints[1..self.breakpoints.len() - 1]
            .iter()
            .copied()
            .filter(|b| *b > 0.0 && *b < t)
            .collect()
    }

    /// Left and right one-sided values at an interior breakpoint index.
    fn one_sided(&self, i: usize) -> (f64, f64) {
        let b = self.breakpoints[i];
        (self.pieces[i - 1].eval(b), self.pieces[i].eval(b))
    }

    /// True when all interior joins match exactly.
    pub fn is_continuous(&self) -> bool {
        (1..self.breakpoints.len() - 1).all(|i| {
            let (l, r) = self.one_sided(i);
            l == r
        })
    }

    /// True when every piece is a constant.
    pub fn is_piecewise_constant(&self) -> bool {
        self.pieces.iter().all(|p| p.degree() == 0)
    }

    /// Adjusts each piece's constant term so interior joins match the left
    /// limit exactly.
    pub fn make_continuous(&mut self) {
        for i in 1..self.breakpoints.len() - 1 {
            let (l, r) = self.one_sided(i);
            self.pieces[i].coeffs[0] += l - r;
        }
    }

    /// Minimum over a dense sample plus endpoints; used to certify
    /// nonnegativity of radius paths.
    pub fn sampled_min(&self) -> f64 {
        let mut min = f64::INFINITY;
        for (i, p) in self.pieces.iter().enumerate() {
            let (lo, hi) = (self.breakpoints[i], self.breakpoints[i + 1]);
            for k in 0..=128 {
                let s = lo + (hi - lo) * k as f64 / 128.0;
                min = min.min(p.eval(s));
            }
        }
        min
    }
}
