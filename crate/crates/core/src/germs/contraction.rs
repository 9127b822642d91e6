//! Advisory contraction bounds for a germ.
//!
//! Only the first-order condition `ρ(d_0γ) < 1` is certified, exactly; it is
//! what the jet-level invertibility needs. The ball estimate `|γ(z)| <= C|z|`
//! is sampled in floating point and is not a proof.

use num::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::operator::{contraction_certificate, ContractionCertificate};
use super::poly::PolyGermMap;
use super::scalar::to_c64;
use crate::report::Check;

/// Radii of the sampled spheres.
pub const SAMPLE_RADII: [f64; 5] = [1e-6, 0.25, 0.5, 0.75, 1.0];
/// Random directions per sphere, on top of coordinate and diagonal ones.
pub const RANDOM_DIRECTIONS: usize = 256;
const SAMPLE_SEED: u64 = 0x5eed_c0de;
const LEMMA_TOLERANCE: f64 = 1e-4;

pub const SAMPLING_NOTE: &str =
    "non-rigorous: maximum of |γ(z)|/|z| over sampled points on spheres of radius <= 1";
pub const GAP_NOTE: &str =
    "contraction on the closed ball is not certified; only the first-order condition ρ(d_0γ) < 1 is";
pub const SUFFICIENCY_NOTE: &str =
    "the condition is sufficient only; failing it does not preclude invertibility";

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SufficientCondition {
    pub p: usize,
    /// `(2Ĉ)^p · n!/(n−p)!`
    pub value: f64,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ContractionReport {
    pub n: usize,
    /// `min_k ‖L^k‖^{1/k}` in floating point, an upper bound for `ρ(L)`.
    pub spectral_radius_bound: f64,
    pub certificate: Option<ContractionCertificate>,
    pub sampled_c: f64,
    pub sampled_c_note: String,
    pub sample_count: usize,
    pub max_linear_entry: f64,
    pub lemma_control: Check,
    /// Set when `Ĉ >= 1`, some `|∂γ_i/∂z_j(0)| >= 1`, or no certificate exists.
    pub first_order_warning: bool,
    pub warnings: Vec<String>,
    pub sufficient_conditions: Vec<SufficientCondition>,
    pub notes: Vec<String>,
}

type CMat = Vec<Vec<Complex<f64>>>;

fn inf_norm(a: &CMat) -> f64 {
    a.iter()
        .map(|r| r.iter().map(|z| z.norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

fn spectral_radius_bound(l: &CMat) -> f64 {
    let n = l.len();
    let mut power = l.clone();
    let mut best = inf_norm(&power);
    for k in 2..=32 {
        power = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).map(|m| power[i][m] * l[m][j]).sum())
                    .collect()
            })
            .collect();
        best = best.min(inf_norm(&power).powf(1.0 / k as f64));
    }
    best
}

fn unit(v: Vec<Complex<f64>>) -> Vec<Complex<f64>> {
    let r = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    v.into_iter().map(|z| z / r).collect()
}

/// Coordinate axes (also times `i`), pairwise diagonals, then seeded random
/// directions.
pub fn sample_directions(n: usize) -> Vec<Vec<Complex<f64>>> {
    let zero = Complex::new(0.0, 0.0);
    let mut dirs = Vec::new();
    for j in 0..n {
        for u in [Complex::new(1.0, 0.0), Complex::new(0.0, 1.0)] {
            let mut v = vec![zero; n];
            v[j] = u;
            dirs.push(v);
        }
        for k in j + 1..n {
            for s in [1.0, -1.0] {
                let mut v = vec![zero; n];
                v[j] = Complex::new(1.0, 0.0);
                v[k] = Complex::new(s, 0.0);
                dirs.push(unit(v));
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SAMPLE_SEED);
    for _ in 0..RANDOM_DIRECTIONS {
        let v = (0..n)
            .map(|_| Complex::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect::<Vec<_>>();
        if v.iter().any(|z| z.norm() > 1e-3) {
            dirs.push(unit(v));
        }
    }
    dirs
}

fn falling_factorial(n: usize, p: usize) -> f64 {
    (n - p + 1..=n).map(|k| k as f64).product()
}

pub fn contraction_report(germ: &PolyGermMap) -> ContractionReport {
    let n = germ.n();
    let l: CMat = germ
        .linear_part()
        .iter()
        .map(|r| r.iter().map(to_c64).collect())
        .collect();
    let spectral_radius_bound = spectral_radius_bound(&l);
    let certificate = contraction_certificate(germ);

    let dirs = sample_directions(n);
    let mut sampled_c: f64 = 0.0;
    for r in SAMPLE_RADII {
        for d in &dirs {
            let z: Vec<_> = d.iter().map(|x| x * r).collect();
            let w = germ.eval_c64(&z);
            let ratio = w.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt() / r;
            sampled_c = sampled_c.max(ratio);
        }
    }
    let sample_count = dirs.len() * SAMPLE_RADII.len();

    let max_linear_entry = l.iter().flatten().map(|z| z.norm()).fold(0.0, f64::max);
    let lemma_control = Check::new(
        "lemma_control",
        max_linear_entry <= sampled_c + LEMMA_TOLERANCE,
        format!("max |∂γ_i/∂z_j(0)| = {max_linear_entry:.6} vs Ĉ = {sampled_c:.6}"),
    );

    let mut warnings = Vec::new();
    if sampled_c >= 1.0 {
        warnings.push(format!("sampled Ĉ = {sampled_c:.6} >= 1"));
    }
    if max_linear_entry >= 1.0 {
        warnings.push(format!("a first derivative at 0 has modulus {max_linear_entry:.6} >= 1"));
    }
    if certificate.is_none() {
        warnings.push("spectral radius of d_0γ not certified below 1".into());
    }

    let sufficient_conditions = (0..=n)
        .map(|p| {
            let value = (2.0 * sampled_c).powi(p as i32) * falling_factorial(n, p);
            SufficientCondition {
                p,
                value,
                holds: value < 1.0,
            }
        })
        .collect();

    ContractionReport {
        n,
        spectral_radius_bound,
        certificate,
        sampled_c,
        sampled_c_note: SAMPLING_NOTE.into(),
        sample_count,
        max_linear_entry,
        lemma_control,
        first_order_warning: !warnings.is_empty(),
        warnings,
        sufficient_conditions,
        notes: vec![GAP_NOTE.into(), SUFFICIENCY_NOTE.into()],
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::germs::operator::beta_matrix;
    use crate::germs::poly::{tests::sample_germ, Poly};
    use crate::germs::scalar::real;

    #[test]
    fn half_fails_condition_but_is_invertible() {
        let g = PolyGermMap::scalar_multiple(3, real(1, 2)).unwrap();
        let r = contraction_report(&g);
        assert!((r.sampled_c - 0.5).abs() < 1e-12);
        assert!((r.spectral_radius_bound - 0.5).abs() < 1e-12);
        let c = &r.sufficient_conditions[1];
        assert!((c.value - 3.0).abs() < 1e-9 && !c.holds);
        assert!(r.lemma_control.pass && !r.first_order_warning);
        assert!(beta_matrix(&g, 1, 2).unwrap().report.invertible);
    }

    #[test]
    fn twentieth_satisfies_condition() {
        let g = PolyGermMap::scalar_multiple(3, real(1, 20)).unwrap();
        let r = contraction_report(&g);
        assert!((r.sampled_c - 0.05).abs() < 1e-12);
        let c = &r.sufficient_conditions[1];
        assert!((c.value - 0.3).abs() < 1e-9 && c.holds);
        // (2Ĉ)^3 · 3! = 0.006
        assert!(r.sufficient_conditions[3].holds);
    }

    #[test]
    fn large_derivative_is_flagged() {
        let g = PolyGermMap::new(vec![Poly::var(2, 1), Poly::var(2, 1).scale(&real(1, 4))]).unwrap();
        let r = contraction_report(&g);
        assert!(r.sampled_c >= 1.0);
        assert!(r.first_order_warning);
        assert!(r.lemma_control.pass);
    }

    #[test]
    fn sampled_constant_bounds_derivatives() {
        let r = contraction_report(&sample_germ());
        assert!(r.lemma_control.pass, "{}", r.lemma_control.detail);
        assert!(r.certificate.is_some());
        assert!(r.sampled_c >= 0.5);
        assert_eq!(r.notes.len(), 2);
    }

    #[test]
    fn deterministic() {
        let a = contraction_report(&sample_germ());
        let b = contraction_report(&sample_germ());
        assert_eq!(a, b);
    }
}
