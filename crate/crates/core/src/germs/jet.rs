//! Polynomial p-forms truncated at coefficient degree `d` and their pullback
//! by a polynomial germ.
//!
//! Since `γ(0) = 0`, `γ*` never lowers coefficient order, so truncating after
//! pulling back is compatible with composition: `(γ*ω) mod deg > d` only
//! depends on `ω mod deg > d`.

use std::collections::{BTreeMap, HashMap};

use num::{Complex, One, Zero};

use super::matrix::ExactMatrix;
use super::poly::{monomials_of_degree, total_degree, Exponent, Poly, PolyGermMap};
use super::scalar::{to_c64, Scalar};
use crate::error::{Error, Result};

/// Strictly increasing index sets of size `p` in `0..n`, lexicographically.
pub fn index_sets(n: usize, p: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, p: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == p {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if p <= n {
        rec(0, n, p, &mut Vec::new(), &mut out);
    }
    out
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k.min(n - k)).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// `C(n,p)·C(n+d,n)`.
pub fn jet_dimension(n: usize, p: usize, d: u32) -> usize {
    binomial(n, p) * binomial(n + d as usize, n)
}

/// Ordered basis `z^α dz_I`: by `|α|`, then `α` (`z_1 > … > z_n`), then `I`.
#[derive(Debug, Clone)]
pub struct JetBasis {
    n: usize,
    p: usize,
    d: u32,
    elements: Vec<(Exponent, Vec<usize>)>,
    index: HashMap<(Exponent, Vec<usize>), usize>,
    offsets: Vec<usize>,
}

impl JetBasis {
    pub fn new(n: usize, p: usize, d: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidDimension(0));
        }
        if p > n {
            return Err(Error::InvalidInput(format!("form degree {p} exceeds n = {n}")));
        }
        let sets = index_sets(n, p);
        let mut elements = Vec::new();
        let mut offsets = Vec::new();
        for k in 0..=d {
            offsets.push(elements.len());
            for alpha in monomials_of_degree(n, k) {
                for i in &sets {
                    elements.push((alpha.clone(), i.clone()));
                }
            }
        }
        offsets.push(elements.len());
        let index = elements
            .iter()
            .enumerate()
            .map(|(k, e)| (e.clone(), k))
            .collect();
        Ok(Self {
            n,
            p,
            d,
            elements,
            index,
            offsets,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn element(&self, k: usize) -> (&Exponent, &Vec<usize>) {
        let (a, i) = &self.elements[k];
        (a, i)
    }

    pub fn position(&self, alpha: &[u32], i: &[usize]) -> Option<usize> {
        self.index.get(&(alpha.to_vec(), i.to_vec())).copied()
    }

    /// Start of each degree block, followed by the total length.
    pub fn degree_offsets(&self) -> &[usize] {
        &self.offsets
    }

    pub fn block(&self, k: u32) -> std::ops::Range<usize> {
        self.offsets[k as usize]..self.offsets[k as usize + 1]
    }

    pub fn form(&self, k: usize) -> JetForm {
        let (a, i) = &self.elements[k];
        JetForm::monomial(self.n, self.d, i.clone(), a.clone(), Scalar::one())
    }
}

/// `Σ_I f_I dz_I` with every `f_I` truncated at degree `d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JetForm {
    n: usize,
    p: usize,
    d: u32,
    components: BTreeMap<Vec<usize>, Poly>,
}

/// Sign of the shuffle sorting `I ∪ J`, or `None` if they overlap.
fn merge_sign(i: &[usize], j: &[usize]) -> Option<(Vec<usize>, bool)> {
    let mut inversions = 0usize;
    for a in i {
        for b in j {
            if a == b {
                return None;
            }
            if a > b {
                inversions += 1;
            }
        }
    }
    let mut k: Vec<usize> = i.iter().chain(j).copied().collect();
    k.sort_unstable();
    Some((k, inversions % 2 == 1))
}

impl JetForm {
    pub fn zero(n: usize, p: usize, d: u32) -> Self {
        Self {
            n,
            p,
            d,
            components: BTreeMap::new(),
        }
    }

    /// A 0-form.
    pub fn function(f: &Poly, d: u32) -> Self {
        let mut w = Self::zero(f.n(), 0, d);
        w.add_component(Vec::new(), f.truncate(d));
        w
    }

    /// `c z^α dz_I`; `I` must be strictly increasing.
    pub fn monomial(n: usize, d: u32, i: Vec<usize>, alpha: Exponent, c: Scalar) -> Self {
        assert!(i.windows(2).all(|w| w[0] < w[1]), "index set must be increasing");
        let mut w = Self::zero(n, i.len(), d);
        if total_degree(&alpha) <= d {
            w.add_component(i, Poly::monomial(n, alpha, c));
        }
        w
    }

    /// `dz_i`.
    pub fn dz(n: usize, i: usize, d: u32) -> Self {
        Self::monomial(n, d, vec![i], vec![0; n], Scalar::one())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn components(&self) -> impl Iterator<Item = (&Vec<usize>, &Poly)> {
        self.components.iter()
    }

    pub fn component(&self, i: &[usize]) -> Poly {
        self.components.get(i).cloned().unwrap_or_else(|| Poly::zero(self.n))
    }

    pub fn coefficient(&self, i: &[usize], alpha: &[u32]) -> Scalar {
        self.components
            .get(i)
            .map_or_else(Scalar::zero, |f| f.coeff(alpha))
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    fn add_component(&mut self, i: Vec<usize>, f: Poly) {
        if f.is_zero() {
            return;
        }
        let slot = self.components.entry(i.clone()).or_insert_with(|| Poly::zero(f.n()));
        slot.add_assign(&f);
        if slot.is_zero() {
            self.components.remove(&i);
        }
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: other.n,
            });
        }
        if self.p != other.p || self.d != other.d {
            return Err(Error::InvalidInput(format!(
                "jet spaces differ: (p, d) = ({}, {}) vs ({}, {})",
                self.p, self.d, other.p, other.d
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (i, f) in &other.components {
            out.add_component(i.clone(), f.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-Scalar::one()))
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut out = Self::zero(self.n, self.p, self.d);
        for (i, f) in &self.components {
            out.add_component(i.clone(), f.scale(c));
        }
        out
    }

    /// `f·ω`, truncated.
    pub fn mul_function(&self, f: &Poly) -> Self {
        let mut out = Self::zero(self.n, self.p, self.d);
        for (i, g) in &self.components {
            out.add_component(i.clone(), f.mul_trunc(g, self.d));
        }
        out
    }

    /// `ω ∧ η`, truncated at the smaller of the two orders.
    pub fn wedge(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: other.n,
            });
        }
        let d = self.d.min(other.d);
        let mut out = Self::zero(self.n, self.p + other.p, d);
        for (i, f) in &self.components {
            for (j, g) in &other.components {
                if let Some((k, odd)) = merge_sign(i, j) {
                    let mut c = f.mul_trunc(g, d);
                    if odd {
                        c = c.scale(&-Scalar::one());
                    }
                    out.add_component(k, c);
                }
            }
        }
        Ok(out)
    }

    /// Coordinates in `basis`.
    pub fn to_vector(&self, basis: &JetBasis) -> Result<Vec<Scalar>> {
        if basis.n != self.n || basis.p != self.p || basis.d != self.d {
            return Err(Error::InvalidInput("form does not live in this jet space".into()));
        }
        let mut v = vec![Scalar::zero(); basis.len()];
        for (i, f) in &self.components {
            for (a, c) in f.terms() {
                let k = basis
                    .position(a, i)
                    .ok_or_else(|| Error::InvalidInput(format!("term z^{a:?} dz_{i:?} outside the jet space")))?;
                v[k] = c.clone();
            }
        }
        Ok(v)
    }

    pub fn from_vector(basis: &JetBasis, v: &[Scalar]) -> Result<Self> {
        if v.len() != basis.len() {
            return Err(Error::DimensionMismatch {
                expected: basis.len(),
                got: v.len(),
            });
        }
        let mut out = Self::zero(basis.n, basis.p, basis.d);
        for (k, c) in v.iter().enumerate() {
            if !c.is_zero() {
                let (a, i) = &basis.elements[k];
                out.add_component(i.clone(), Poly::monomial(basis.n, a.clone(), c.clone()));
            }
        }
        Ok(out)
    }

    /// Largest coefficient modulus, in floating point.
    pub fn max_norm(&self) -> f64 {
        self.components
            .values()
            .flat_map(|f| f.terms().map(|(_, c)| to_c64(c).norm()))
            .fold(0.0, f64::max)
    }

    pub fn to_c64_vector(&self, basis: &JetBasis) -> Result<Vec<Complex<f64>>> {
        Ok(self.to_vector(basis)?.iter().map(to_c64).collect())
    }
}

/// `γ*` on the jets of order `d`, caching `γ^α` and `dγ_I`.
pub struct Pullback<'a> {
    germ: &'a PolyGermMap,
    d: u32,
    monomials: HashMap<Exponent, Poly>,
    wedges: HashMap<Vec<usize>, JetForm>,
    differentials: Vec<JetForm>,
}

impl<'a> Pullback<'a> {
    pub fn new(germ: &'a PolyGermMap, d: u32) -> Self {
        let n = germ.n();
        let differentials = germ
            .components()
            .iter()
            .map(|g| {
                let mut w = JetForm::zero(n, 1, d);
                for j in 0..n {
                    w.add_component(vec![j], g.derivative(j).truncate(d));
                }
                w
            })
            .collect();
        Self {
            germ,
            d,
            monomials: HashMap::new(),
            wedges: HashMap::new(),
            differentials,
        }
    }

    pub fn germ(&self) -> &PolyGermMap {
        self.germ
    }

    /// `γ^α` truncated at `d`.
    fn monomial_image(&mut self, alpha: &Exponent) -> Poly {
        if let Some(p) = self.monomials.get(alpha) {
            return p.clone();
        }
        let n = self.germ.n();
        let img = match alpha.iter().position(|&e| e > 0) {
            None => Poly::one(n),
            Some(_) if total_degree(alpha) > self.d => Poly::zero(n),
            Some(i) => {
                let mut lower = alpha.clone();
                lower[i] -= 1;
                self.monomial_image(&lower)
                    .mul_trunc(&self.germ.components()[i], self.d)
            }
        };
        self.monomials.insert(alpha.clone(), img.clone());
        img
    }

    /// `f ∘ γ` truncated at `d`.
    pub fn compose(&mut self, f: &Poly) -> Poly {
        let mut out = Poly::zero(self.germ.n());
        for (a, c) in f.terms() {
            out.add_assign(&self.monomial_image(a).scale(c));
        }
        out
    }

    /// `dγ_{i_1} ∧ … ∧ dγ_{i_p}` truncated at `d`.
    fn wedge_image(&mut self, i: &[usize]) -> JetForm {
        if let Some(w) = self.wedges.get(i) {
            return w.clone();
        }
        let n = self.germ.n();
        let w = match i.split_last() {
            None => JetForm::function(&Poly::one(n), self.d),
            Some((&last, rest)) => self
                .wedge_image(rest)
                .wedge(&self.differentials[last])
                .expect("same dimension"),
        };
        self.wedges.insert(i.to_vec(), w.clone());
        w
    }

    pub fn apply(&mut self, w: &JetForm) -> Result<JetForm> {
        if w.n != self.germ.n() {
            return Err(Error::DimensionMismatch {
                expected: self.germ.n(),
                got: w.n,
            });
        }
        if w.d != self.d {
            return Err(Error::InvalidInput(format!(
                "pullback prepared for order {} applied to a form of order {}",
                self.d, w.d
            )));
        }
        let mut out = JetForm::zero(w.n, w.p, w.d);
        for (i, f) in &w.components {
            let coeff = self.compose(f);
            let image = self.wedge_image(i).mul_function(&coeff);
            out = out.add(&image)?;
        }
        Ok(out)
    }

    /// The matrix of `γ*` in `basis`; column `k` is `γ*` of basis element `k`.
    pub fn matrix(&mut self, basis: &JetBasis) -> Result<ExactMatrix> {
        if basis.d != self.d || basis.n != self.germ.n() {
            return Err(Error::InvalidInput("basis does not match the pullback".into()));
        }
        let cols = (0..basis.len())
            .map(|k| self.apply(&basis.form(k))?.to_vector(basis))
            .collect::<Result<Vec<_>>>()?;
        ExactMatrix::from_columns(basis.len(), &cols)
    }
}

/// `γ*ω`, truncated at the order of `ω`.
pub fn pullback_jet(germ: &PolyGermMap, w: &JetForm) -> Result<JetForm> {
    Pullback::new(germ, w.d).apply(w)
}
