//! Neumann series `S = Σ_{m>=0} (γ*)^m η` for `(Id − γ*) S = η`.

use num::{Complex, Zero};
use serde::Serialize;

use super::jet::{JetForm, Pullback};
use super::matrix::ExactMatrix;
use super::modular::exact_inverse;
use super::operator::{beta_matrix, BetaAnalysis};
use super::poly::PolyGermMap;
use super::scalar::Scalar;
use crate::error::{Error, Result};
use crate::report::Check;

/// Default agreement tolerance between partial sums and the exact solution.
pub const NEUMANN_TOLERANCE: f64 = 1e-9;

/// How a residual sequence decays.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Decay {
    /// First index from which the sequence never increases.
    pub monotone_from: usize,
    /// `(r_last / r_mid)^{1/(last − mid)}`; 0 once the residual vanishes.
    pub rate: f64,
    pub geometric: bool,
}

/// Non-increasing after a transient of at most half the terms, with an
/// estimated rate below 1.
pub fn decay(residuals: &[f64]) -> Decay {
    let m = residuals.len();
    let mut monotone_from = m.saturating_sub(1);
    while monotone_from > 0 && residuals[monotone_from] <= residuals[monotone_from - 1] {
        monotone_from -= 1;
    }
    let (mid, last) = (m / 2, m.saturating_sub(1));
    let rate = if m < 2 || residuals[last] == 0.0 {
        0.0
    } else if residuals[mid] == 0.0 {
        f64::INFINITY
    } else {
        (residuals[last] / residuals[mid]).powf(1.0 / (last - mid) as f64)
    };
    Decay {
        monotone_from,
        rate,
        geometric: monotone_from <= m / 2 && rate < 1.0,
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct NeumannResult {
    #[serde(skip)]
    pub partial_sums: Vec<JetForm>,
    #[serde(skip)]
    pub exact: JetForm,
    /// `‖(Id − γ*) S^{(m)} − η‖_max` for `m = 1..=M`.
    pub residuals: Vec<f64>,
    /// `‖S^{(m)} − S‖_max` against the exact solution.
    pub errors: Vec<f64>,
    pub decay: Decay,
    pub checks: Vec<Check>,
}

/// Exact solution of `(Id − γ*) x = η`. For functions the solution with zero
/// constant term is returned; a nonzero constant term in `η` has no solution.
pub fn exact_solve(analysis: &BetaAnalysis, eta: &JetForm) -> Result<JetForm> {
    let basis = &analysis.basis;
    let v = eta.to_vector(basis)?;
    let x = if basis.p() == 0 {
        if !v[0].is_zero() {
            return Err(Error::NoSolution(
                "the image of Id − γ* on functions consists of functions vanishing at 0".into(),
            ));
        }
        let reduced = analysis.beta.minor(0, 0);
        let mut x = vec![Scalar::zero()];
        x.extend(exact_inverse(&reduced)?.apply(&v[1..])?);
        x
    } else {
        exact_inverse(&analysis.beta)?.apply(&v)?
    };
    JetForm::from_vector(basis, &x)
}

/// The first `terms` partial sums of the Neumann series of `η`, computed by
/// iterating the exact pullback, compared against the exact solve.
pub fn neumann_solve(germ: &PolyGermMap, eta: &JetForm, terms: usize) -> Result<NeumannResult> {
    if eta.n() != germ.n() {
        return Err(Error::DimensionMismatch {
            expected: germ.n(),
            got: eta.n(),
        });
    }
    if terms == 0 {
        return Err(Error::InvalidInput("at least one term is needed".into()));
    }
    let analysis = beta_matrix(germ, eta.p(), eta.d())?;
    let exact = exact_solve(&analysis, eta)?;
    let mut pb = Pullback::new(germ, eta.d());

    let mut partial_sums = Vec::with_capacity(terms);
    let mut residuals = Vec::with_capacity(terms);
    let mut errors = Vec::with_capacity(terms);
    let mut sum = JetForm::zero(eta.n(), eta.p(), eta.d());
    let mut term = eta.clone();
    for _ in 0..terms {
        sum = sum.add(&term)?;
        let image = pb.apply(&sum)?;
        residuals.push(sum.sub(&image)?.sub(eta)?.max_norm());
        errors.push(sum.sub(&exact)?.max_norm());
        partial_sums.push(sum.clone());
        term = pb.apply(&term)?;
    }
    let decay = decay(&residuals);
    let last = *errors.last().expect("terms >= 1");
    let checks = vec![
        Check::new(
            "matches_exact_solve",
            last < NEUMANN_TOLERANCE,
            format!("max-norm distance {last:.3e} after {terms} terms"),
        ),
        Check::new(
            "geometric_decay",
            decay.geometric,
            format!(
                "non-increasing from term {}, rate {:.4}",
                decay.monotone_from + 1,
                decay.rate
            ),
        ),
    ];
    Ok(NeumannResult {
        partial_sums,
        exact,
        residuals,
        errors,
        decay,
        checks,
    })
}

type CMat = Vec<Vec<Complex<f64>>>;

fn cmul(a: &CMat, b: &CMat) -> CMat {
    let n = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            let mut out = vec![Complex::zero(); n];
            for (k, x) in row.iter().enumerate() {
                if *x != Complex::zero() {
                    for (o, y) in out.iter_mut().zip(&b[k]) {
                        *o += x * y;
                    }
                }
            }
            out
        })
        .collect()
}

fn max_norm(a: &CMat) -> f64 {
    a.iter().flatten().map(|z| z.norm()).fold(0.0, f64::max)
}

#[derive(Debug, Clone, Serialize)]
pub struct BasisNeumannReport {
    pub terms: usize,
    pub residuals: Vec<f64>,
    pub error: f64,
    pub decay: Decay,
    pub checks: Vec<Check>,
}

/// Floating-point battery over the whole basis: `S_M = Σ_{m<M} G^m` against
/// the exact inverse of `Id − G`, where `G` is `γ*` (restricted to functions
/// vanishing at 0 when `p = 0`).
///
/// The residual `‖(Id − G) S_m − Id‖` telescopes to `‖G^m‖`, which is what
/// is recorded; this avoids the cancellation floor of forming the product.
pub fn neumann_basis_check(analysis: &BetaAnalysis, terms: usize) -> Result<BasisNeumannReport> {
    let (g, beta) = if analysis.basis.p() == 0 {
        (analysis.pullback.minor(0, 0), analysis.beta.minor(0, 0))
    } else {
        (analysis.pullback.clone(), analysis.beta.clone())
    };
    let inverse = exact_inverse(&beta)?.to_c64();
    let gf = g.to_c64();
    let dim = gf.len();
    let identity: CMat = ExactMatrix::identity(dim).to_c64();
    let mut power = identity.clone();
    let mut sum: CMat = vec![vec![Complex::zero(); dim]; dim];
    let mut residuals = Vec::with_capacity(terms);
    for _ in 0..terms {
        for (s, p) in sum.iter_mut().zip(&power) {
            for (x, y) in s.iter_mut().zip(p) {
                *x += y;
            }
        }
        power = cmul(&gf, &power);
        residuals.push(max_norm(&power));
    }
    let error = sum
        .iter()
        .zip(&inverse)
        .flat_map(|(a, b)| a.iter().zip(b).map(|(x, y)| (x - y).norm()))
        .fold(0.0, f64::max);
    let decay = decay(&residuals);
    let checks = vec![
        Check::new(
            "basis_matches_exact_inverse",
            error < NEUMANN_TOLERANCE,
            format!("max-norm distance {error:.3e} after {terms} terms"),
        ),
        Check::new(
            "basis_geometric_decay",
            decay.geometric,
            format!(
                "non-increasing from term {}, rate {:.4}",
                decay.monotone_from + 1,
                decay.rate
            ),
        ),
    ];
    Ok(BasisNeumannReport {
        terms,
        residuals,
        error,
        decay,
        checks,
    })
}
