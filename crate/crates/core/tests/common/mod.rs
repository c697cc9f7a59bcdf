#![allow(dead_code)]

use nalgebra::DMatrix;
use netcorr::scan::random_graph;
use netcorr::{Graph, Signal};
use rand_chacha::rand_core::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub struct TestRng(ChaCha8Rng);

impl TestRng {
    pub fn new(seed: u64) -> Self {
        Self(ChaCha8Rng::seed_from_u64(seed))
    }

    /// Uniform in [0, 1).
    pub fn unit(&mut self) -> f64 {
        (self.0.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }

    pub fn range(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.unit()
    }

    /// Uniform integer in lo..=hi.
    pub fn int(&mut self, lo: usize, hi: usize) -> usize {
        lo + (self.0.next_u64() % (hi - lo + 1) as u64) as usize
    }

    pub fn seed(&mut self) -> u64 {
        self.0.next_u64()
    }

    pub fn signal(&mut self, n: usize) -> Signal {
        loop {
            let v: Vec<f64> = (0..n).map(|_| self.range(-5.0, 5.0)).collect();
            let s = Signal::new(v).unwrap();
            if !s.is_constant() {
                return s;
            }
        }
    }

    /// Connected G(n, p) with n in lo..=hi; resamples until connected.
    pub fn connected_graph(&mut self, lo: usize, hi: usize) -> Graph {
        loop {
            let n = self.int(lo, hi);
            let p = self.range(0.15, 0.7);
            let g = random_graph(n, p, self.seed()).unwrap();
            if g.is_connected() {
                return g;
            }
        }
    }

    pub fn points(&mut self, n: usize, d: usize, spread: f64) -> DMatrix<f64> {
        DMatrix::from_fn(n, d, |_, _| self.range(-spread, spread))
    }
}

/// Classical Pearson from raw sums:
/// (n Sxy - Sx Sy) / sqrt((n Sxx - Sx^2)(n Syy - Sy^2)).
pub fn textbook_pearson(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    let (mut sx, mut sy, mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0, 0.0, 0.0);
    for (&a, &b) in x.iter().zip(y) {
        sx += a;
        sy += b;
        sxy += a * b;
        sxx += a * a;
        syy += b * b;
    }
    (n * sxy - sx * sy) / ((n * sxx - sx * sx) * (n * syy - sy * sy)).sqrt()
}

/// sum_ij W_ij (x_i - mean x)(y_j - mean y), plain double loop.
pub fn double_sum(w: &DMatrix<f64>, x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let mut s = 0.0;
    for i in 0..x.len() {
        for j in 0..y.len() {
            s += w[(i, j)] * (x[i] - mx) * (y[j] - my);
        }
    }
    s
}

pub const K_GRID: [f64; 6] = [0.1, 0.25, 0.5, 1.0, 2.0, 5.0];

/// Smallest centered eigenvalue of exp(-P/4) on K(2,3): Rayleigh quotient of
/// (-3,-3,2,2,2)/sqrt(30).
pub fn k23_quarter_min() -> f64 {
    1.0 + 1.4 * (-0.5f64).exp() - 2.4 * (-0.25f64).exp()
}
