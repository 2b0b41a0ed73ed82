//! Seeded point sampling for the verification suites, plus the `[re, im]`
//! serde representation used across the JSON interfaces.

use num::complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::lattice::Lattice;

/// Fraction of the shortest vector kept clear of every lattice point.
pub const POLE_CLEARANCE: f64 = 0.05;

/// Draws points uniformly from the fundamental cell, resampling anything
/// within the pole clearance. All randomness is ChaCha8 from the caller's
/// seed, so identical seeds give identical draws.
pub struct PointSampler<'a> {
    lat: &'a Lattice,
    rng: ChaCha8Rng,
}

impl<'a> PointSampler<'a> {
    pub fn new(lat: &'a Lattice, seed: u64) -> Self {
        PointSampler { lat, rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    fn raw_point(&mut self) -> Result<Complex64> {
        let w1 = 2.0 * self.lat.omega1().ok_or(Error::InvariantsOnly)?;
        let w2 = 2.0 * self.lat.omega2().ok_or(Error::InvariantsOnly)?;
        let a: f64 = self.rng.gen_range(-0.5..0.5);
        let b: f64 = self.rng.gen_range(-0.5..0.5);
        Ok(a * w1 + b * w2)
    }

    /// One point clear of poles.
    pub fn point(&mut self) -> Result<Complex64> {
        self.point_where(|_| true)
    }

    /// One point clear of poles and satisfying `accept`; gives up after 10⁴
    /// draws (a predicate that rejects everything is a caller bug).
    pub fn point_where(&mut self, accept: impl Fn(Complex64) -> bool) -> Result<Complex64> {
        let clearance = POLE_CLEARANCE
            * self
                .lat
                .shortest_vector_length()
                .ok_or(Error::InvariantsOnly)?;
        for _ in 0..10_000 {
            let z = self.raw_point()?;
            if self.lat.pole_distance(z)? < clearance {
                continue;
            }
            if accept(z) {
                return Ok(z);
            }
        }
        Err(Error::Numeric("point sampler exhausted 10000 draws".into()))
    }

    /// `n` points, pairwise distinct mod Λ (separation ≥ clearance) and with
    /// the partial sums clear of poles, satisfying `accept` jointly.
    pub fn points_where(
        &mut self,
        n: usize,
        accept: impl Fn(&[Complex64]) -> bool,
    ) -> Result<Vec<Complex64>> {
        let clearance = POLE_CLEARANCE
            * self
                .lat
                .shortest_vector_length()
                .ok_or(Error::InvariantsOnly)?;
        'outer: for _ in 0..10_000 {
            let mut pts = Vec::with_capacity(n);
            for _ in 0..n {
                pts.push(self.point()?);
            }
            for i in 0..n {
                for j in i + 1..n {
                    if self.lat.pole_distance(pts[i] - pts[j])? < clearance {
                        continue 'outer;
                    }
                }
            }
            let total: Complex64 = pts.iter().sum();
            if self.lat.pole_distance(total)? < clearance {
                continue;
            }
            if accept(&pts) {
                return Ok(pts);
            }
        }
        Err(Error::Numeric("point sampler exhausted 10000 draws".into()))
    }

    pub fn points(&mut self, n: usize) -> Result<Vec<Complex64>> {
        self.points_where(n, |_| true)
    }

    /// Uniform complex value in the given annulus of magnitudes (for weights
    /// and scalars rather than lattice arguments).
    pub fn scalar(&mut self, min_mag: f64, max_mag: f64) -> Complex64 {
        let mag: f64 = self.rng.gen_range(min_mag..max_mag);
        let angle: f64 = self.rng.gen_range(0.0..std::f64::consts::TAU);
        mag * Complex64::new(0.0, angle).exp()
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }
}

/// Serializes `Complex64` as `[re, im]`.
pub mod complex_pair {
    use num::complex::Complex64;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(c: &Complex64, s: S) -> std::result::Result<S::Ok, S::Error> {
        [c.re, c.im].serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Complex64, D::Error> {
        let pair = <[f64; 2]>::deserialize(d)?;
        Ok(Complex64::new(pair[0], pair[1]))
    }
}

/// Serializes `Vec<Complex64>` as `[[re, im], ...]`.
pub mod complex_vec {
    use num::complex::Complex64;
    use serde::ser::SerializeSeq;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(
        v: &[Complex64],
        s: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for c in v {
            seq.serialize_element(&[c.re, c.im])?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Vec<Complex64>, D::Error> {
        let pairs = Vec::<[f64; 2]>::deserialize(d)?;
        Ok(pairs.into_iter().map(|p| Complex64::new(p[0], p[1])).collect())
    }
}
