//! Sparse polynomials over the Gaussian rationals and polynomial germs
//! `γ: (Cⁿ, 0) → (Cⁿ, 0)`.

use std::collections::BTreeMap;

use num::{Complex, One, Zero};
use serde::{Deserialize, Serialize};

use super::scalar::{to_c64, Scalar, ScalarJson};
use crate::error::{Error, Result};

/// Exponent vector `α`, one entry per variable.
pub type Exponent = Vec<u32>;

pub fn total_degree(alpha: &[u32]) -> u32 {
    alpha.iter().sum()
}

/// Monomials of degree exactly `k` in `n` variables, `z_1^k` first.
pub fn monomials_of_degree(n: usize, k: u32) -> Vec<Exponent> {
    fn rec(i: usize, n: usize, left: u32, cur: &mut Exponent, out: &mut Vec<Exponent>) {
        if i + 1 == n {
            cur[i] = left;
            out.push(cur.clone());
            return;
        }
        for e in (0..=left).rev() {
            cur[i] = e;
            rec(i + 1, n, left - e, cur, out);
        }
        cur[i] = 0;
    }
    let mut out = Vec::new();
    if n == 0 {
        if k == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(0, n, k, &mut vec![0; n], &mut out);
    out
}

/// Monomials of degree `<= d`, by degree and then lexicographically with
/// `z_1 > z_2 > … > z_n`.
pub fn monomials_up_to(n: usize, d: u32) -> Vec<Exponent> {
    (0..=d).flat_map(|k| monomials_of_degree(n, k)).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    n: usize,
    terms: BTreeMap<Exponent, Scalar>,
}

impl Poly {
    pub fn zero(n: usize) -> Self {
        Self {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(n: usize, c: Scalar) -> Self {
        Self::monomial(n, vec![0; n], c)
    }

    pub fn one(n: usize) -> Self {
        Self::constant(n, Scalar::one())
    }

    /// `z_i`, zero-based.
    pub fn var(n: usize, i: usize) -> Self {
        let mut alpha = vec![0; n];
        alpha[i] = 1;
        Self::monomial(n, alpha, Scalar::one())
    }

    pub fn monomial(n: usize, alpha: Exponent, c: Scalar) -> Self {
        assert_eq!(alpha.len(), n, "exponent length");
        let mut p = Self::zero(n);
        p.add_term(alpha, c);
        p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, alpha: &[u32]) -> Scalar {
        self.terms.get(alpha).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, alpha: Exponent, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(alpha) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_assign(&mut self, other: &Poly) {
        for (a, c) in &other.terms {
            self.add_term(a.clone(), c.clone());
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.scale(&-Scalar::one()))
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.n);
        }
        Poly {
            n: self.n,
            terms: self.terms.iter().map(|(a, v)| (a.clone(), v * c)).collect(),
        }
    }

    /// Product with all terms of degree `> d` dropped.
    pub fn mul_trunc(&self, other: &Poly, d: u32) -> Poly {
        let mut out = Poly::zero(self.n);
        for (a, x) in &self.terms {
            let da = total_degree(a);
            if da > d {
                continue;
            }
            for (b, y) in &other.terms {
                if da + total_degree(b) > d {
                    continue;
                }
                let ab = a.iter().zip(b).map(|(s, t)| s + t).collect();
                out.add_term(ab, x * y);
            }
        }
        out
    }

    pub fn truncate(&self, d: u32) -> Poly {
        Poly {
            n: self.n,
            terms: self
                .terms
                .iter()
                .filter(|(a, _)| total_degree(a) <= d)
                .map(|(a, c)| (a.clone(), c.clone()))
                .collect(),
        }
    }

    /// `∂/∂z_i`.
    pub fn derivative(&self, i: usize) -> Poly {
        let mut out = Poly::zero(self.n);
        for (a, c) in &self.terms {
            if a[i] == 0 {
                continue;
            }
            let mut b = a.clone();
            b[i] -= 1;
            out.add_term(b, c * Scalar::from(num::BigRational::from_integer(a[i].into())));
        }
        out
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|a| total_degree(a)).max()
    }

    /// Lowest degree present.
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().map(|a| total_degree(a)).min()
    }

    pub fn constant_term(&self) -> Scalar {
        self.coeff(&vec![0; self.n])
    }

    pub fn eval_c64(&self, z: &[Complex<f64>]) -> Complex<f64> {
        self.terms
            .iter()
            .map(|(a, c)| {
                a.iter()
                    .zip(z)
                    .fold(to_c64(c), |acc, (&e, zi)| acc * zi.powu(e))
            })
            .sum()
    }
}

/// Degree cap for germ components read from input.
pub const MAX_GERM_DEGREE: u32 = 6;

/// A polynomial germ with `γ(0) = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "GermJson", into = "GermJson")]
pub struct PolyGermMap {
    n: usize,
    components: Vec<Poly>,
}

impl PolyGermMap {
    pub fn new(components: Vec<Poly>) -> Result<Self> {
        let n = components.len();
        if n == 0 {
            return Err(Error::InvalidDimension(0));
        }
        for (i, c) in components.iter().enumerate() {
            if c.n() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: c.n(),
                });
            }
            if !c.constant_term().is_zero() {
                return Err(Error::InvalidInput(format!(
                    "component {} has a nonzero constant term; the germ must fix 0",
                    i + 1
                )));
            }
            if c.degree().unwrap_or(0) > MAX_GERM_DEGREE {
                return Err(Error::InvalidInput(format!(
                    "component {} has degree above {MAX_GERM_DEGREE}",
                    i + 1
                )));
            }
        }
        Ok(Self { n, components })
    }

    /// `z ↦ L z`.
    pub fn linear(l: &[Vec<Scalar>]) -> Result<Self> {
        let n = l.len();
        let comps = l
            .iter()
            .map(|row| {
                if row.len() != n {
                    return Err(Error::DimensionMismatch {
                        expected: n,
                        got: row.len(),
                    });
                }
                let mut p = Poly::zero(n);
                for (j, c) in row.iter().enumerate() {
                    p.add_assign(&Poly::var(n, j).scale(c));
                }
                Ok(p)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(comps)
    }

    /// `z ↦ c z`.
    pub fn scalar_multiple(n: usize, c: Scalar) -> Result<Self> {
        Self::new((0..n).map(|i| Poly::var(n, i).scale(&c)).collect())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn components(&self) -> &[Poly] {
        &self.components
    }

    pub fn degree(&self) -> u32 {
        self.components.iter().filter_map(Poly::degree).max().unwrap_or(0)
    }

    /// `d_0 γ`, with `L[i][j] = ∂γ_i/∂z_j(0)`.
    pub fn linear_part(&self) -> Vec<Vec<Scalar>> {
        self.components
            .iter()
            .map(|c| {
                (0..self.n)
                    .map(|j| {
                        let mut e = vec![0; self.n];
                        e[j] = 1;
                        c.coeff(&e)
                    })
                    .collect()
            })
            .collect()
    }

    /// The germ `z ↦ d_0 γ (z)`.
    pub fn linearization(&self) -> PolyGermMap {
        Self {
            n: self.n,
            components: self.components.iter().map(|c| c.truncate(1)).collect(),
        }
    }

    /// `f ∘ γ` truncated at degree `d`.
    pub fn compose_poly(&self, f: &Poly, d: u32) -> Poly {
        let mut powers: Vec<Vec<Poly>> = self
            .components
            .iter()
            .map(|_| vec![Poly::one(self.n)])
            .collect();
        let mut out = Poly::zero(self.n);
        for (alpha, c) in f.terms() {
            // γ has order >= 1, so higher monomials only feed degrees > d.
            if total_degree(alpha) > d {
                continue;
            }
            let mut term = Poly::constant(self.n, c.clone());
            for (i, &e) in alpha.iter().enumerate() {
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap().mul_trunc(&self.components[i], d);
                    powers[i].push(next);
                }
                term = term.mul_trunc(&powers[i][e as usize], d);
            }
            out.add_assign(&term);
        }
        out
    }

    /// `self ∘ inner`, truncated at degree `d`.
    pub fn compose(&self, inner: &PolyGermMap, d: u32) -> Result<PolyGermMap> {
        if inner.n != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: inner.n,
            });
        }
        Ok(Self {
            n: self.n,
            components: self
                .components
                .iter()
                .map(|c| inner.compose_poly(c, d))
                .collect(),
        })
    }

    pub fn eval_c64(&self, z: &[Complex<f64>]) -> Vec<Complex<f64>> {
        self.components.iter().map(|c| c.eval_c64(z)).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub coeff: ScalarJson,
    pub exponents: Vec<u32>,
}

/// `{"n": 3, "components": [[{"coeff": {"re": "1/2", "im": "0/1"}, "exponents": [1,0,0]}], …]}`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GermJson {
    pub n: usize,
    pub components: Vec<Vec<TermJson>>,
}

impl TryFrom<GermJson> for PolyGermMap {
    type Error = Error;

    fn try_from(j: GermJson) -> Result<Self> {
        if j.components.len() != j.n {
            return Err(Error::DimensionMismatch {
                expected: j.n,
                got: j.components.len(),
            });
        }
        let mut comps = Vec::with_capacity(j.n);
        for (i, terms) in j.components.iter().enumerate() {
            let mut p = Poly::zero(j.n);
            for t in terms {
                if t.exponents.len() != j.n {
                    return Err(Error::DimensionMismatch {
                        expected: j.n,
                        got: t.exponents.len(),
                    });
                }
                if p.terms.contains_key(&t.exponents) {
                    return Err(Error::Parse(format!(
                        "component {} repeats exponents {:?}",
                        i + 1,
                        t.exponents
                    )));
                }
                p.add_term(t.exponents.clone(), t.coeff.parse()?);
            }
            comps.push(p);
        }
        PolyGermMap::new(comps)
    }
}

impl From<PolyGermMap> for GermJson {
    fn from(g: PolyGermMap) -> Self {
        GermJson {
            n: g.n,
            components: g
                .components
                .iter()
                .map(|c| {
                    c.terms()
                        .map(|(a, v)| TermJson {
                            coeff: ScalarJson::from(v),
                            exponents: a.clone(),
                        })
                        .collect()
                })
                .collect(),
        }
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::germs::scalar::{gaussian, rational, real};

    /// `(z_1/2 + z_2²/4, z_2/3, z_3/2)`.
    pub(crate) fn sample_germ() -> PolyGermMap {
        PolyGermMap::new(vec![
            Poly::var(3, 0)
                .scale(&real(1, 2))
                .add(&Poly::monomial(3, vec![0, 2, 0], real(1, 4))),
            Poly::var(3, 1).scale(&real(1, 3)),
            Poly::var(3, 2).scale(&real(1, 2)),
        ])
        .unwrap()
    }

    #[test]
    fn monomial_order() {
        let m = monomials_up_to(2, 2);
        assert_eq!(
            m,
            vec![vec![0, 0], vec![1, 0], vec![0, 1], vec![2, 0], vec![1, 1], vec![0, 2]]
        );
        // C(n+d, n) monomials.
        assert_eq!(monomials_up_to(3, 4).len(), 35);
        assert_eq!(monomials_up_to(4, 5).len(), 126);
        assert_eq!(monomials_up_to(1, 3).len(), 4);
    }

    #[test]
    fn truncated_product() {
        let x = Poly::var(2, 0);
        let y = Poly::var(2, 1);
        let s = x.add(&y);
        let sq = s.mul_trunc(&s, 2);
        assert_eq!(sq.coeff(&[1, 1]), real(2, 1));
        assert_eq!(s.mul_trunc(&sq, 2), Poly::zero(2));
        assert_eq!(sq.degree(), Some(2));
        assert_eq!(sq.sub(&sq), Poly::zero(2));
    }

    #[test]
    fn derivative_and_eval() {
        let p = Poly::monomial(2, vec![3, 1], real(2, 1));
        assert_eq!(p.derivative(0), Poly::monomial(2, vec![2, 1], real(6, 1)));
        assert!(p.derivative(1).derivative(1).is_zero());
        let v = p.eval_c64(&[Complex::new(1.0, 0.0), Complex::new(0.0, 1.0)]);
        assert!((v - Complex::new(0.0, 2.0)).norm() < 1e-15);
    }

    #[test]
    fn germ_validation() {
        assert!(PolyGermMap::new(vec![Poly::one(1)]).is_err());
        assert!(PolyGermMap::new(vec![Poly::var(2, 0)]).is_err());
        assert!(PolyGermMap::new(vec![]).is_err());
        let g = sample_germ();
        assert_eq!(g.degree(), 2);
        assert_eq!(g.linear_part()[0][0], real(1, 2));
        assert_eq!(g.linear_part()[1][1], real(1, 3));
        assert!(g.linear_part()[0][1].is_zero());
    }

    #[test]
    fn composition() {
        // γ∘γ for the sample germ: first component z_1/4 + z_2²/8 + z_2²/36.
        let g = sample_germ();
        let gg = g.compose(&g, 3).unwrap();
        let c = &gg.components()[0];
        assert_eq!(c.coeff(&[1, 0, 0]), real(1, 4));
        assert_eq!(c.coeff(&[0, 2, 0]), Scalar::from(rational(1, 8) + rational(1, 36)));
        assert_eq!(gg.components()[1], Poly::var(3, 1).scale(&real(1, 9)));
    }

    #[test]
    fn germ_json_round_trip() {
        let g = PolyGermMap::new(vec![
            Poly::var(2, 1).scale(&gaussian(rational(1, 3), rational(-1, 5))),
            Poly::monomial(2, vec![1, 1], real(1, 4)),
        ])
        .unwrap();
        let s = serde_json::to_string(&g).unwrap();
        assert_eq!(
            s,
            r#"{"n":2,"components":[[{"coeff":{"re":"1/3","im":"-1/5"},"exponents":[0,1]}],[{"coeff":{"re":"1/4","im":"0/1"},"exponents":[1,1]}]]}"#
        );
        let back: PolyGermMap = serde_json::from_str(&s).unwrap();
        assert_eq!(back, g);
        let bad = r#"{"n":1,"components":[[{"coeff":{"re":"1"},"exponents":[0]}]]}"#;
        assert!(serde_json::from_str::<PolyGermMap>(bad).is_err());
        let dup = r#"{"n":1,"components":[[{"coeff":{"re":"1"},"exponents":[1]},{"coeff":{"re":"1"},"exponents":[1]}]]}"#;
        assert!(serde_json::from_str::<PolyGermMap>(dup).is_err());
    }
}
