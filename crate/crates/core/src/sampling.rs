//! Deterministic exact sample points.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::expr::{ExprError, Polynomial, Q};
use crate::geometry::{Chart, PointP, RF};

pub const DEFAULT_SAMPLES: usize = 25;
pub const MAX_RESAMPLES: usize = 100;
pub const DEFAULT_SEED: u64 = 20240917;
/// Seed used to pick generic witness points, independent of the user seed.
pub const WITNESS_SEED: u64 = 7;

/// Seeded stream of small rationals `p/q` with `|p| ≤ 7`, `1 ≤ q ≤ 3`.
#[derive(Clone, Debug)]
pub struct Sampler {
    rng: ChaCha8Rng,
    seed: u64,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
            seed,
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn rational(&mut self) -> Q {
        let p: i64 = self.rng.random_range(-7..=7);
        let q: i64 = self.rng.random_range(1..=3);
        Q::new(p.into(), q.into())
    }

    pub fn point(&mut self, chart: &Chart) -> PointP {
        let coords = (0..chart.dim()).map(|_| self.rational()).collect();
        PointP::new(chart, coords).expect("dimension matches")
    }

    /// Polynomial of total degree at most `degree` with small rational coefficients.
    pub fn polynomial(&mut self, chart: &Chart, degree: u32) -> RF {
        let n = chart.dim();
        let mut exps: Vec<Vec<u32>> = vec![vec![0; n]];
        for _ in 0..degree {
            let mut next = exps.clone();
            for e in &exps {
                for i in 0..n {
                    let mut f = e.clone();
                    f[i] += 1;
                    if !next.contains(&f) {
                        next.push(f);
                    }
                }
            }
            exps = next;
        }
        let terms: Vec<(Vec<u32>, Q)> = exps.into_iter().map(|e| (e, self.rational())).collect();
        RF::from_poly(Polynomial::from_terms(chart.vars(), terms))
    }

    /// Draws points until `f` succeeds, skipping degenerate points.
    pub fn point_where<T>(
        &mut self,
        chart: &Chart,
        mut f: impl FnMut(&PointP) -> Result<T>,
    ) -> Result<(PointP, T)> {
        for _ in 0..MAX_RESAMPLES {
            let p = self.point(chart);
            match f(&p) {
                Ok(v) => return Ok((p, v)),
                Err(e) if is_degenerate_point(&e) => continue,
                Err(e) => return Err(e),
            }
        }
        Err(Error::SamplingExhausted(MAX_RESAMPLES))
    }
}

/// Errors that only mean the sample point was unlucky.
pub fn is_degenerate_point(e: &Error) -> bool {
    matches!(
        e,
        Error::Expr(ExprError::PoleAtPoint)
            | Error::RankDeficientAtPoint(_)
            | Error::SingularSystem(_)
    ) || matches!(
        e,
        Error::Geometry(crate::geometry::GeometryError::Expr(ExprError::PoleAtPoint))
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stream_is_reproducible() {
        let c = Chart::new("M", ["x", "y"]).unwrap();
        let a: Vec<_> = (0..5).map(|_| Sampler::new(3).point(&c)).collect();
        let mut s = Sampler::new(3);
        let first = s.point(&c);
        assert_eq!(a[0], first);
        let mut t = Sampler::new(3);
        let pts: Vec<_> = (0..4).map(|_| t.point(&c)).collect();
        let mut u = Sampler::new(3);
        assert_eq!(pts, (0..4).map(|_| u.point(&c)).collect::<Vec<_>>());
    }

    #[test]
    fn resamples_past_poles() {
        let c = Chart::new("M", ["x"]).unwrap();
        let f = c.parse("1/(x - x*x)").unwrap();
        let mut s = Sampler::new(1);
        let (p, v) = s
            .point_where(&c, |p| Ok(f.evaluate_at(&p.coords)?))
            .unwrap();
        assert!(p.coords[0] != Q::from_integer(0.into()));
        assert_eq!(v, f.evaluate_at(&p.coords).unwrap());
    }
}
