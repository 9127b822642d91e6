//! `β = Id − γ*` on a jet space: matrix, rank, kernel and the block structure
//! coming from the degree filtration.

use num::{BigRational, One, Zero};
use serde::Serialize;

use super::jet::{JetBasis, Pullback};
use super::matrix::ExactMatrix;
use super::modular::{primes, rank_det_mod, rank_lower_bound, reduce_matrix};
use super::poly::PolyGermMap;
use super::scalar::{format_rational, l1_abs};
use crate::error::{Error, Result};
use crate::report::Check;

/// Highest power of `d_0γ` tried when certifying first-order contraction.
pub const CERTIFICATE_MAX_POWER: u32 = 64;

/// Exact proof that `ρ(d_0γ) < 1`: some power of the linear part has
/// row-sum norm (with `|re| + |im|` entrywise) below 1.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ContractionCertificate {
    pub power: u32,
    pub norm: String,
}

fn linear_power_norms(germ: &PolyGermMap) -> impl Iterator<Item = (u32, BigRational)> {
    let l = ExactMatrix::from_rows(germ.linear_part()).expect("square linear part");
    let mut power = ExactMatrix::identity(germ.n());
    (1..=CERTIFICATE_MAX_POWER).map(move |k| {
        power = power.mul(&l).expect("square");
        let norm = (0..power.nrows())
            .map(|i| power.row(i).iter().map(l1_abs).fold(BigRational::zero(), |a, b| a + b))
            .max()
            .unwrap_or_else(BigRational::zero);
        (k, norm)
    })
}

pub fn contraction_certificate(germ: &PolyGermMap) -> Option<ContractionCertificate> {
    linear_power_norms(germ)
        .find(|(_, norm)| *norm < BigRational::one())
        .map(|(power, norm)| ContractionCertificate {
            power,
            norm: format_rational(&norm),
        })
}

fn require_contraction(germ: &PolyGermMap) -> Result<ContractionCertificate> {
    contraction_certificate(germ).ok_or_else(|| {
        Error::NotAContraction(format!(
            "no power up to {CERTIFICATE_MAX_POWER} of the linear part has norm below 1"
        ))
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OperatorReport {
    pub p: usize,
    pub d: u32,
    pub jet_dimension: usize,
    pub rank: usize,
    /// How the rank was certified.
    pub rank_method: String,
    pub kernel_dim: usize,
    pub image_codim: usize,
    pub invertible: bool,
    pub determinant_is_zero: bool,
    pub block_triangular: bool,
    pub certificate: ContractionCertificate,
    pub checks: Vec<Check>,
}

impl OperatorReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

/// Everything computed for one `(γ, p, d)`.
#[derive(Debug, Clone)]
pub struct BetaAnalysis {
    pub basis: JetBasis,
    /// Matrix of `γ*`.
    pub pullback: ExactMatrix,
    /// Matrix of `Id − γ*`.
    pub beta: ExactMatrix,
    pub report: OperatorReport,
}

struct CertifiedRank {
    rank: usize,
    method: String,
}

/// Primes tried before falling back to rational elimination.
const RANK_PRIMES: usize = 3;

/// Exact rank. The rank modulo a prime is a lower bound; the upper bound is
/// `dim`, or `dim − 1` when the constants are visibly in the kernel. When the
/// bounds meet no rational elimination is needed.
fn certified_rank(m: &ExactMatrix, p: usize, constant_column_zero: bool) -> CertifiedRank {
    let dim = m.ncols();
    let upper = if p == 0 && constant_column_zero { dim - 1 } else { dim };
    let lower = rank_lower_bound(m, RANK_PRIMES);
    if lower == upper {
        let why = if upper < dim { ", constant column zero" } else { "" };
        return CertifiedRank {
            rank: lower,
            method: format!("modular lower bound meets upper bound{why}"),
        };
    }
    CertifiedRank {
        rank: m.rank(),
        method: "rational elimination".into(),
    }
}

/// Determinant of the whole matrix against the product over the diagonal
/// blocks, both modulo the first prime not dividing any denominator.
fn determinant_routes(m: &ExactMatrix, blocks: &[ExactMatrix]) -> (bool, u64) {
    for prime in primes() {
        let Some(full) = reduce_matrix(m, prime, false) else {
            continue;
        };
        let Some(reduced) = blocks
            .iter()
            .map(|b| reduce_matrix(b, prime, false))
            .collect::<Option<Vec<_>>>()
        else {
            continue;
        };
        let det = rank_det_mod(full, prime.p).1.expect("square");
        let product = reduced.into_iter().fold(1u64, |acc, b| {
            let d = rank_det_mod(b, prime.p).1.expect("square");
            ((acc as u128 * d as u128) % prime.p as u128) as u64
        });
        return (det == product, prime.p);
    }
    unreachable!("only finitely many primes divide the denominators")
}

/// Builds `Id − γ*` on `p`-forms with coefficients of degree `<= d` and
/// checks its structure.
///
/// For `p >= 1` the operator is expected to be invertible; for `p = 0` its
/// kernel should be the constants and its image the functions vanishing at 0.
pub fn beta_matrix(germ: &PolyGermMap, p: usize, d: u32) -> Result<BetaAnalysis> {
    let certificate = require_contraction(germ)?;
    let n = germ.n();
    let basis = JetBasis::new(n, p, d)?;
    let dim = basis.len();
    let g = Pullback::new(germ, d).matrix(&basis)?;
    let beta = ExactMatrix::identity(dim).sub(&g)?;

    let offsets = basis.degree_offsets().to_vec();
    let block_triangular = beta.is_block_lower_triangular(&offsets);
    let constant_column_zero = p == 0 && beta.column(0).iter().all(Zero::is_zero);

    let mut checks = Vec::new();
    checks.push(Check::new(
        "block_lower_triangular",
        block_triangular,
        "no entry maps a coefficient degree to a lower one",
    ));

    // The diagonal blocks only see the linear part.
    let lin = germ.linearization();
    let g_lin = Pullback::new(&lin, d).matrix(&basis)?;
    let mut blocks_match = g_lin.is_block_lower_triangular(&offsets);
    let mut blocks = Vec::new();
    for k in 0..=d {
        let r = basis.block(k);
        let b = beta.submatrix(r.clone(), r.clone());
        let expect = ExactMatrix::identity(r.len()).sub(&g_lin.submatrix(r.clone(), r.clone()))?;
        blocks_match &= b == expect;
        blocks.push(b);
        // Off-diagonal parts of the linear pullback must vanish entirely.
        for (k2, w) in offsets.windows(2).enumerate() {
            if k2 as u32 != k && !g_lin.submatrix(r.clone(), w[0]..w[1]).is_zero() {
                blocks_match = false;
            }
        }
    }
    checks.push(Check::new(
        "diagonal_blocks_from_linear_part",
        blocks_match,
        "degree-k diagonal blocks equal those of the linearized germ",
    ));

    let rank = certified_rank(&beta, p, constant_column_zero);
    let (routes_agree, prime) = determinant_routes(&beta, &blocks);
    checks.push(Check::new(
        "determinant_routes_agree",
        routes_agree,
        format!("full elimination vs product of diagonal-block determinants, modulo {prime}"),
    ));

    let kernel_dim = dim - rank.rank;
    let image_codim = dim - rank.rank;
    if p >= 1 {
        checks.push(Check::new(
            "invertible",
            rank.rank == dim,
            format!("rank {} of {dim} ({})", rank.rank, rank.method),
        ));
    } else {
        let constants_in_kernel = constant_column_zero;
        let constant_row_zero = beta.row(0).iter().all(Zero::is_zero);
        checks.push(Check::new(
            "kernel_is_constants",
            kernel_dim == 1 && constants_in_kernel,
            format!("kernel dimension {kernel_dim}; constants in kernel: {constants_in_kernel}"),
        ));
        checks.push(Check::new(
            "image_vanishes_at_zero",
            image_codim == 1 && constant_row_zero,
            format!("image codimension {image_codim}; constant row zero: {constant_row_zero}"),
        ));
    }

    let report = OperatorReport {
        p,
        d,
        jet_dimension: dim,
        rank: rank.rank,
        rank_method: rank.method,
        kernel_dim,
        image_codim,
        invertible: rank.rank == dim,
        determinant_is_zero: rank.rank < dim,
        block_triangular,
        certificate,
        checks,
    };
    Ok(BetaAnalysis {
        basis,
        pullback: g,
        beta,
        report,
    })
}
