//! Seeded random contraction germs with exact rational coefficients.
//!
//! Linear part: diagonal entries with `|re| + |im| <= 1/4`, off-diagonal
//! entries with `|re| + |im| <= 1/(4(n−1))`, so every row of `d_0γ` has
//! `|re|+|im|`-sum at most 1/2 and the first-order certificate holds at the
//! first power. Higher-order coefficients have `|re|, |im| <= 1/8`.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::poly::{monomials_of_degree, Poly, PolyGermMap};
use super::scalar::{gaussian, rational, Scalar};

/// Caps for the random battery.
pub const BATTERY_MAX_N: usize = 3;
pub const BATTERY_MAX_DEGREE: u32 = 3;
pub const BATTERY_MAX_D: u32 = 4;

fn small_pair<R: Rng>(rng: &mut R, l1: i64) -> (i64, i64) {
    let pairs: Vec<(i64, i64)> = (-l1..=l1)
        .flat_map(|a| (-l1..=l1).map(move |b| (a, b)))
        .filter(|(a, b)| a.abs() + b.abs() <= l1)
        .collect();
    *pairs.choose(rng).expect("nonempty")
}

fn coefficient<R: Rng>(rng: &mut R, l1: i64, denom: i64) -> Scalar {
    let (a, b) = small_pair(rng, l1);
    gaussian(rational(a, denom), rational(b, denom))
}

/// A germ of dimension `n` and degree `<= degree` (at least 1).
pub fn random_germ<R: Rng>(rng: &mut R, n: usize, degree: u32) -> PolyGermMap {
    let off_denom = 8 * (n.max(2) as i64 - 1);
    let components = (0..n)
        .map(|i| {
            let mut p = Poly::zero(n);
            for j in 0..n {
                let c = if i == j {
                    coefficient(rng, 2, 8)
                } else {
                    coefficient(rng, 2, off_denom)
                };
                p.add_assign(&Poly::var(n, j).scale(&c));
            }
            for k in 2..=degree {
                for alpha in monomials_of_degree(n, k) {
                    if rng.gen_ratio(1, 3) {
                        let c = gaussian(
                            rational(rng.gen_range(-1..=1), 8),
                            rational(rng.gen_range(-1..=1), 8),
                        );
                        p.add_term(alpha, c);
                    }
                }
            }
            p
        })
        .collect();
    PolyGermMap::new(components).expect("zero constant terms by construction")
}

/// One entry of the seeded battery: a germ and a truncation order.
#[derive(Debug, Clone)]
pub struct BatteryCase {
    pub index: usize,
    pub germ: PolyGermMap,
    pub d: u32,
}

/// `count` cases with `n <= 3`, degree `<= 3` and `1 <= d <= 4`, reproducible
/// from `seed`.
pub fn germ_battery(seed: u64, count: usize) -> Vec<BatteryCase> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|index| {
            let n = rng.gen_range(1..=BATTERY_MAX_N);
            let degree = rng.gen_range(1..=BATTERY_MAX_DEGREE);
            let d = rng.gen_range(1..=BATTERY_MAX_D);
            BatteryCase {
                index,
                germ: random_germ(&mut rng, n, degree),
                d,
            }
        })
        .collect()
}
