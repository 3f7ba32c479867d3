//! Seeded point sampling inside a safe box away from poles and axes.

use std::f64::consts::{PI, TAU};

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use frw_spin_core::{ChartId, Point, SpinMatrix2};
use num_complex::Complex64;

pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    fn stereo_axis(&mut self) -> f64 {
        let v = self.rng.gen_range(0.2..3.0);
        if self.rng.gen_bool(0.5) {
            -v
        } else {
            v
        }
    }

    pub fn point(&mut self, chart: ChartId) -> Point {
        let eta = self.rng.gen_range(-1.0..=1.0);
        let coords = match chart {
            ChartId::NorthStereo | ChartId::SouthStereo => [
                eta,
                self.stereo_axis(),
                self.stereo_axis(),
                self.stereo_axis(),
            ],
            ChartId::Spherical => [
                eta,
                self.rng.gen_range(0.2..=PI - 0.2),
                self.rng.gen_range(0.2..=PI - 0.2),
                self.rng.gen_range(0.0..TAU),
            ],
        };
        Point::new(chart, coords).expect("sampling box lies inside every chart")
    }

    pub fn points(&mut self, chart: ChartId, n: usize) -> Vec<Point> {
        (0..n).map(|_| self.point(chart)).collect()
    }

    /// A random element of SL(2,C) with entries of moderate size.
    pub fn sl2c(&mut self) -> SpinMatrix2 {
        loop {
            let mut z = || Complex64::new(self.rng.gen_range(-1.0..1.0), self.rng.gen_range(-1.0..1.0));
            let m = SpinMatrix2::new(z(), z(), z(), z());
            let det = m.determinant();
            if det.norm() > 0.25 {
                return m / det.sqrt();
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_points() {
        let a = Sampler::new(7).points(ChartId::NorthStereo, 5);
        let b = Sampler::new(7).points(ChartId::NorthStereo, 5);
        assert_eq!(a, b);
        assert_ne!(a, Sampler::new(8).points(ChartId::NorthStereo, 5));
    }

    #[test]
    fn points_stay_in_the_box() {
        let mut s = Sampler::new(1);
        for p in s.points(ChartId::SouthStereo, 200) {
            let c = p.coords();
            assert!((-1.0..=1.0).contains(&c[0]));
            assert!(c[1..].iter().all(|v| (0.2..3.0).contains(&v.abs())));
        }
        for p in s.points(ChartId::Spherical, 200) {
            let c = p.coords();
            assert!(c[1] >= 0.2 && c[1] <= PI - 0.2 && c[3] < TAU);
        }
    }

    #[test]
    fn sl2c_has_unit_determinant() {
        let mut s = Sampler::new(3);
        for _ in 0..50 {
            assert!((s.sl2c().determinant() - Complex64::new(1.0, 0.0)).norm() < 1e-12);
        }
    }
}
