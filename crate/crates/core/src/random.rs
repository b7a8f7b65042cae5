//! Seeded generators for randomized checks.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exact_linear::{q, RatMatrix};
use crate::modules::PresentedModule;
use crate::poly::{FreeElement, GradedPolyRing, Poly};

/// Deterministic source of small random algebraic objects.
pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    /// Uniform in `-2..=2`.
    pub fn coeff(&mut self) -> i64 {
        self.rng.gen_range(-2..=2)
    }

    fn nonzero_coeff(&mut self) -> i64 {
        *[-2, -1, 1, 2].choose(&mut self.rng).unwrap()
    }

    /// Homogeneous polynomial with at most `max_terms` terms; may be zero.
    pub fn homogeneous_poly(
        &mut self,
        ring: &GradedPolyRing,
        degree: i64,
        max_terms: usize,
    ) -> Poly {
        let monos = ring.monomials_of_degree(degree);
        if monos.is_empty() {
            return Poly::zero();
        }
        let k = self.rng.gen_range(0..=max_terms.min(monos.len()));
        let picked: Vec<_> = monos.choose_multiple(&mut self.rng, k).cloned().collect();
        Poly::from_terms(picked.into_iter().map(|m| (m, q(self.nonzero_coeff()))))
    }

    /// One or two generators in degree 0 or 2 and up to two homogeneous
    /// relations with coefficients in `-2..=2`.
    pub fn module(&mut self, ring: &GradedPolyRing) -> PresentedModule {
        let ngens = self.rng.gen_range(1..=2);
        let degs: Vec<i64> = (0..ngens)
            .map(|_| if self.rng.gen_bool(0.5) { 0 } else { 2 })
            .collect();
        let top = *degs.iter().max().unwrap();
        let nrels = self.rng.gen_range(0..=2);
        let mut rels = Vec::new();
        for _ in 0..nrels {
            let d = top + 2 * self.rng.gen_range(0..=3);
            let comps: Vec<Poly> = degs
                .iter()
                .map(|&a| self.homogeneous_poly(ring, d - a, 2))
                .collect();
            let e = FreeElement::new(comps);
            if !e.is_zero() {
                rels.push(e);
            }
        }
        PresentedModule::new(ring.clone(), degs, rels).expect("sampled relations are homogeneous")
    }

    pub fn modules(&mut self, ring: &GradedPolyRing, count: usize) -> Vec<PresentedModule> {
        (0..count).map(|_| self.module(ring)).collect()
    }

    /// Matrix with entries in `-2..=2`, each nonzero with probability
    /// `density`.
    pub fn matrix(&mut self, rows: usize, cols: usize, density: f64) -> RatMatrix {
        let mut trip = Vec::new();
        for r in 0..rows {
            for c in 0..cols {
                if self.rng.gen_bool(density) {
                    trip.push((r, c, q(self.nonzero_coeff())));
                }
            }
        }
        RatMatrix::from_triples(rows, cols, trip)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_and_homogeneous() {
        let ring = GradedPolyRing::new([("a", 2), ("b", 4)]).unwrap();
        let a = Sampler::new(7).modules(&ring, 20);
        let b = Sampler::new(7).modules(&ring, 20);
        assert_eq!(a, b);
        for m in &a {
            assert!(m.rank() >= 1 && m.rank() <= 2);
            assert!(m.relations().len() <= 2);
            assert!(m.gen_degrees().iter().all(|d| *d == 0 || *d == 2));
        }
    }
}
