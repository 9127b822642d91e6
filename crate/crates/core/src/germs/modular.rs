//! Exact linear algebra over `Q(i)` through reduction modulo primes
//! `p ≡ 1 (mod 4)`.
//!
//! For such `p` there is `s` with `s² ≡ −1`, and `a + bi ↦ a + b s` is a ring
//! map from the Gaussian rationals with denominators prime to `p` onto
//! `F_p`. Minors map to minors, so the rank modulo `p` is a lower bound for
//! the rank over `Q(i)` and a nonzero determinant modulo `p` proves
//! invertibility.
//!
//! Exact inverses are reconstructed from the adjugate of the integral matrix
//! `M = D·A`: both embeddings `s` and `−s` give real and imaginary parts
//! modulo `p`, and Garner's algorithm lifts them past twice the Hadamard
//! bound, which bounds every minor of `M`.

use num::bigint::{BigInt, Sign};
use num::integer::Integer;
use num::{BigRational, Complex, One, ToPrimitive, Zero};

use super::matrix::ExactMatrix;
use super::scalar::Scalar;
use crate::error::{Error, Result};

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

/// Deterministic Miller–Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &b in &BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let (mut d, mut r) = (n - 1, 0);
    while d % 2 == 0 {
        d /= 2;
        r += 1;
    }
    'outer: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..r {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

/// A prime `p ≡ 1 (mod 4)` with a square root `s` of `−1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ModPrime {
    pub p: u64,
    pub s: u64,
}

impl ModPrime {
    fn new(p: u64) -> Self {
        let s = (2..)
            .map(|t| pow_mod(t, (p - 1) / 4, p))
            .find(|&x| mul_mod(x, x, p) == p - 1)
            .expect("p ≡ 1 mod 4");
        Self { p, s }
    }
}

/// Primes `≡ 1 (mod 4)` below `2^62`, descending.
pub fn primes() -> impl Iterator<Item = ModPrime> {
    let start = (1u64 << 62) - 3; // ≡ 1 (mod 4)
    (0..)
        .map(move |k| start - 4 * k)
        .filter(|&p| is_prime(p))
        .map(ModPrime::new)
}

fn bigint_mod(x: &BigInt, p: u64) -> u64 {
    let r = x.mod_floor(&BigInt::from(p));
    r.to_u64().expect("0 <= r < p")
}

fn rational_mod(r: &BigRational, p: u64) -> Option<u64> {
    let den = bigint_mod(r.denom(), p);
    if den == 0 {
        return None;
    }
    Some(mul_mod(bigint_mod(r.numer(), p), inv_mod(den, p), p))
}

/// Image of `a + bi` under `i ↦ s` (or `−s`).
pub fn reduce_scalar(z: &Scalar, prime: ModPrime, conjugate: bool) -> Option<u64> {
    let (p, s) = (prime.p, if conjugate { prime.p - prime.s } else { prime.s });
    let re = rational_mod(&z.re, p)?;
    let im = rational_mod(&z.im, p)?;
    Some((re + mul_mod(im, s, p)) % p)
}

pub fn reduce_matrix(m: &ExactMatrix, prime: ModPrime, conjugate: bool) -> Option<Vec<Vec<u64>>> {
    (0..m.nrows())
        .map(|i| {
            m.row(i)
                .iter()
                .map(|z| reduce_scalar(z, prime, conjugate))
                .collect()
        })
        .collect()
}

/// Rank and (for square input) determinant over `F_p`.
pub fn rank_det_mod(mut a: Vec<Vec<u64>>, p: u64) -> (usize, Option<u64>) {
    let nr = a.len();
    let nc = a.first().map_or(0, Vec::len);
    let mut det = 1u64;
    let mut r = 0;
    for c in 0..nc {
        if r == nr {
            break;
        }
        let Some(piv) = (r..nr).find(|&i| a[i][c] != 0) else {
            continue;
        };
        if piv != r {
            a.swap(piv, r);
            det = (p - det) % p;
        }
        det = mul_mod(det, a[r][c], p);
        let inv = inv_mod(a[r][c], p);
        let (top, bottom) = a.split_at_mut(r + 1);
        let prow = &top[r];
        for row in bottom.iter_mut() {
            if row[c] == 0 {
                continue;
            }
            let f = mul_mod(row[c], inv, p);
            for j in c..nc {
                if prow[j] != 0 {
                    row[j] = (row[j] + p - mul_mod(f, prow[j], p)) % p;
                }
            }
        }
        r += 1;
    }
    let det = (nr == nc).then_some(if r < nr { 0 } else { det });
    (r, det)
}

/// Inverse and determinant over `F_p`, or `None` if singular.
pub fn inverse_mod(a: &[Vec<u64>], p: u64) -> Option<(Vec<Vec<u64>>, u64)> {
    let n = a.len();
    let mut m: Vec<Vec<u64>> = a
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..n).map(|j| u64::from(i == j)));
            row
        })
        .collect();
    let mut det = 1u64;
    for c in 0..n {
        let piv = (c..n).find(|&i| m[i][c] != 0)?;
        if piv != c {
            m.swap(piv, c);
            det = (p - det) % p;
        }
        det = mul_mod(det, m[c][c], p);
        let inv = inv_mod(m[c][c], p);
        for v in m[c].iter_mut() {
            *v = mul_mod(*v, inv, p);
        }
        let prow = m[c].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == c || row[c] == 0 {
                continue;
            }
            let f = row[c];
            for j in c..2 * n {
                if prow[j] != 0 {
                    row[j] = (row[j] + p - mul_mod(f, prow[j], p)) % p;
                }
            }
        }
    }
    Some((m.into_iter().map(|r| r[n..].to_vec()).collect(), det))
}

/// Lower bound for the rank over `Q(i)`: the largest rank over the first
/// `tries` usable primes.
pub fn rank_lower_bound(m: &ExactMatrix, tries: usize) -> usize {
    primes()
        .filter_map(|pr| reduce_matrix(m, pr, false).map(|a| rank_det_mod(a, pr.p).0))
        .take(tries)
        .max()
        .unwrap_or(0)
}

/// `A⁻¹ = scale · adj / det`, with `adj` and `det` Gaussian integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactInverse {
    pub det: Complex<BigInt>,
    pub adj: Vec<Vec<Complex<BigInt>>>,
    pub scale: BigInt,
}

fn lcm_of_denominators(m: &ExactMatrix) -> BigInt {
    let mut d = BigInt::one();
    for i in 0..m.nrows() {
        for z in m.row(i) {
            d = d.lcm(z.re.denom()).lcm(z.im.denom());
        }
    }
    d
}

/// Garner reconstruction into the symmetric range.
struct Crt {
    moduli: Vec<u64>,
    inv: Vec<Vec<u64>>,
    product: BigInt,
}

impl Crt {
    fn new(moduli: Vec<u64>) -> Self {
        let inv = (0..moduli.len())
            .map(|k| (0..k).map(|j| inv_mod(moduli[j] % moduli[k], moduli[k])).collect())
            .collect();
        let product = moduli.iter().fold(BigInt::one(), |a, &p| a * p);
        Self {
            moduli,
            inv,
            product,
        }
    }

    fn lift(&self, residues: &[u64]) -> BigInt {
        let k = self.moduli.len();
        let mut digits = vec![0u64; k];
        for i in 0..k {
            let p = self.moduli[i];
            let mut t = residues[i];
            for j in 0..i {
                t = mul_mod((t + p - digits[j] % p) % p, self.inv[i][j], p);
            }
            digits[i] = t;
        }
        let mut x = BigInt::zero();
        for i in (0..k).rev() {
            x = x * self.moduli[i] + digits[i];
        }
        if &x * 2u32 > self.product {
            x - &self.product
        } else {
            x
        }
    }
}

/// Exact inverse via modular adjugates. Falls back to rational Gauss–Jordan
/// if the matrix looks singular modulo several primes.
pub fn exact_inverse(m: &ExactMatrix) -> Result<ExactInverse> {
    let n = m.nrows();
    if !m.is_square() {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: m.ncols(),
        });
    }
    let scale = lcm_of_denominators(m);
    let scale_q = BigRational::from_integer(scale.clone());
    let integral: Vec<Vec<(BigInt, BigInt)>> = (0..n)
        .map(|i| {
            m.row(i)
                .iter()
                .map(|z| {
                    let re = &z.re * &scale_q;
                    let im = &z.im * &scale_q;
                    (re.to_integer(), im.to_integer())
                })
                .collect()
        })
        .collect();

    // Every minor of M is bounded by the product of its row norms (>= 1).
    let bound_bits: u64 = integral
        .iter()
        .map(|row| {
            let sq: BigInt = row.iter().map(|(a, b)| a * a + b * b).sum();
            sq.bits().div_ceil(2)
        })
        .sum();
    let needed_bits = bound_bits + 2;

    let mut moduli = Vec::new();
    let mut residues: Vec<Vec<u64>> = Vec::new(); // per prime: det re, det im, adj re/im row-major
    let mut bits = 0u64;
    let mut singular_hits = 0;
    for prime in primes() {
        if bits >= needed_bits {
            break;
        }
        let p = prime.p;
        let reduce = |s: u64| -> Vec<Vec<u64>> {
            integral
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|(a, b)| (bigint_mod(a, p) + mul_mod(bigint_mod(b, p), s, p)) % p)
                        .collect()
                })
                .collect()
        };
        let plus = inverse_mod(&reduce(prime.s), p);
        let minus = inverse_mod(&reduce(p - prime.s), p);
        let (Some((inv_u, det_u)), Some((inv_v, det_v))) = (plus, minus) else {
            singular_hits += 1;
            if singular_hits >= 3 && moduli.is_empty() {
                return rational_fallback(m);
            }
            continue;
        };
        let half = inv_mod(2, p);
        let inv_2s = inv_mod(mul_mod(2, prime.s, p), p);
        let split = |u: u64, v: u64| -> (u64, u64) {
            (
                mul_mod((u + v) % p, half, p),
                mul_mod((u + p - v) % p, inv_2s, p),
            )
        };
        let mut r = Vec::with_capacity(2 + 2 * n * n);
        let (dr, di) = split(det_u, det_v);
        r.push(dr);
        r.push(di);
        for i in 0..n {
            for j in 0..n {
                let (ar, ai) = split(mul_mod(inv_u[i][j], det_u, p), mul_mod(inv_v[i][j], det_v, p));
                r.push(ar);
                r.push(ai);
            }
        }
        residues.push(r);
        moduli.push(p);
        bits += 61;
    }

    let crt = Crt::new(moduli);
    let k = residues.len();
    let value = |idx: usize| -> BigInt {
        let rs: Vec<u64> = (0..k).map(|t| residues[t][idx]).collect();
        crt.lift(&rs)
    };
    let det = Complex::new(value(0), value(1));
    let adj = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let base = 2 + 2 * (i * n + j);
                    Complex::new(value(base), value(base + 1))
                })
                .collect()
        })
        .collect();
    Ok(ExactInverse { det, adj, scale })
}

fn rational_fallback(m: &ExactMatrix) -> Result<ExactInverse> {
    let inv = m.inverse()?;
    let n = m.nrows();
    let mut den = BigInt::one();
    for i in 0..n {
        for z in inv.row(i) {
            den = den.lcm(z.re.denom()).lcm(z.im.denom());
        }
    }
    let den_q = BigRational::from_integer(den.clone());
    let adj = (0..n)
        .map(|i| {
            inv.row(i)
                .iter()
                .map(|z| Complex::new((&z.re * &den_q).to_integer(), (&z.im * &den_q).to_integer()))
                .collect()
        })
        .collect();
    Ok(ExactInverse {
        det: Complex::new(den, BigInt::zero()),
        adj,
        scale: BigInt::one(),
    })
}

/// `num / den` for big integers, robust to magnitudes beyond `f64`.
fn ratio_c64(num: &Complex<BigInt>, den: &Complex<BigInt>) -> Complex<f64> {
    let bits = [&num.re, &num.im, &den.re, &den.im]
        .iter()
        .map(|x| x.bits())
        .max()
        .unwrap_or(0);
    let shift = bits.saturating_sub(400);
    let f = |x: &BigInt| -> f64 {
        let y: BigInt = if x.sign() == Sign::Minus {
            -((-x) >> shift)
        } else {
            x >> shift
        };
        y.to_f64().unwrap_or(0.0)
    };
    Complex::new(f(&num.re), f(&num.im)) / Complex::new(f(&den.re), f(&den.im))
}

impl ExactInverse {
    pub fn dim(&self) -> usize {
        self.adj.len()
    }

    /// Entry `(i, j)` as an exact scalar.
    pub fn entry(&self, i: usize, j: usize) -> Scalar {
        let num = &self.adj[i][j] * &self.scale;
        let num = Complex::new(BigRational::from_integer(num.re), BigRational::from_integer(num.im));
        let den = Complex::new(
            BigRational::from_integer(self.det.re.clone()),
            BigRational::from_integer(self.det.im.clone()),
        );
        num / den
    }

    pub fn to_exact(&self) -> ExactMatrix {
        let n = self.dim();
        ExactMatrix::from_rows((0..n).map(|i| (0..n).map(|j| self.entry(i, j)).collect()).collect())
            .expect("square")
    }

    pub fn to_c64(&self) -> Vec<Vec<Complex<f64>>> {
        self.adj
            .iter()
            .map(|row| row.iter().map(|a| ratio_c64(&(a * &self.scale), &self.det)).collect())
            .collect()
    }

    /// `A⁻¹ b`, exactly.
    pub fn apply(&self, b: &[Scalar]) -> Result<Vec<Scalar>> {
        let n = self.dim();
        if b.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: b.len(),
            });
        }
        // Clear the denominators of b, multiply by the integer adjugate, divide once.
        let mut d = BigInt::one();
        for z in b {
            d = d.lcm(z.re.denom()).lcm(z.im.denom());
        }
        let dq = BigRational::from_integer(d.clone());
        let c: Vec<Complex<BigInt>> = b
            .iter()
            .map(|z| Complex::new((&z.re * &dq).to_integer(), (&z.im * &dq).to_integer()))
            .collect();
        let den = Complex::new(
            BigRational::from_integer(&self.det.re * &d),
            BigRational::from_integer(&self.det.im * &d),
        );
        Ok(self
            .adj
            .iter()
            .map(|row| {
                let mut acc = Complex::new(BigInt::zero(), BigInt::zero());
                for (a, x) in row.iter().zip(&c) {
                    if !x.is_zero() && !a.is_zero() {
                        acc += a * x;
                    }
                }
                let acc = acc * &self.scale;
                Complex::new(BigRational::from_integer(acc.re), BigRational::from_integer(acc.im)) / &den
            })
            .collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::germs::scalar::{gaussian, rational, real};
    use proptest::prelude::*;

    #[test]
    fn primes_are_1_mod_4() {
        let ps: Vec<_> = primes().take(5).collect();
        for w in ps.windows(2) {
            assert!(w[0].p > w[1].p);
        }
        for pr in ps {
            assert_eq!(pr.p % 4, 1);
            assert!(pr.p > 1 << 61);
            assert_eq!(mul_mod(pr.s, pr.s, pr.p), pr.p - 1);
        }
        assert!(is_prime(2) && is_prime(97) && !is_prime(91) && !is_prime(1));
        assert!(is_prime(18446744073709551557));
    }

    #[test]
    fn reduction_is_a_ring_map() {
        let pr = primes().next().unwrap();
        let a = gaussian(rational(3, 7), rational(-5, 11));
        let b = gaussian(rational(-2, 9), rational(1, 4));
        let f = |z: &Scalar| reduce_scalar(z, pr, false).unwrap();
        assert_eq!(f(&(&a * &b)), mul_mod(f(&a), f(&b), pr.p));
        assert_eq!(f(&(&a + &b)), (f(&a) + f(&b)) % pr.p);
        assert_eq!(f(&gaussian(rational(0, 1), rational(1, 1))), pr.s);
    }

    #[test]
    fn inverse_of_small_matrix() {
        let m = ExactMatrix::from_rows(vec![
            vec![real(1, 2), gaussian(rational(1, 3), rational(1, 1))],
            vec![real(-1, 5), real(2, 1)],
        ])
        .unwrap();
        let inv = exact_inverse(&m).unwrap();
        assert_eq!(inv.to_exact(), m.inverse().unwrap());
        let b = vec![real(1, 1), gaussian(rational(0, 1), rational(2, 3))];
        assert_eq!(inv.apply(&b).unwrap(), m.solve(&b).unwrap());
        let f = inv.to_c64();
        let e = m.inverse().unwrap().to_c64();
        for i in 0..2 {
            for j in 0..2 {
                assert!((f[i][j] - e[i][j]).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn singular_matrix_falls_back_and_errors() {
        let m = ExactMatrix::from_rows(vec![vec![real(1, 1), real(2, 1)], vec![real(2, 1), real(4, 1)]]).unwrap();
        assert!(exact_inverse(&m).is_err());
        assert_eq!(rank_lower_bound(&m, 2), 1);
    }

    #[test]
    fn huge_ratio_to_float() {
        let big = BigInt::one() << 3000u32;
        let num = Complex::new(&big * 3, BigInt::zero());
        let den = Complex::new(big.clone() * 2, big.clone() * 2);
        let z = ratio_c64(&num, &den);
        assert!((z - Complex::new(0.75, -0.75)).norm() < 1e-15);
    }

    fn arb_matrix(n: usize) -> impl Strategy<Value = ExactMatrix> {
        proptest::collection::vec((-4i64..=4, 1i64..=6, -3i64..=3, 1i64..=5), n * n).prop_map(move |v| {
            ExactMatrix::from_rows(
                v.chunks(n)
                    .map(|r| r.iter().map(|&(a, b, c, d)| gaussian(rational(a, b), rational(c, d))).collect())
                    .collect(),
            )
            .unwrap()
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn modular_inverse_matches_rational(m in arb_matrix(4)) {
            match m.inverse() {
                Ok(inv) => prop_assert_eq!(exact_inverse(&m).unwrap().to_exact(), inv),
                Err(_) => prop_assert!(exact_inverse(&m).is_err()),
            }
        }

        #[test]
        fn modular_rank_matches_rational(m in arb_matrix(4)) {
            prop_assert_eq!(rank_lower_bound(&m, 2), m.rank());
        }
    }
}
