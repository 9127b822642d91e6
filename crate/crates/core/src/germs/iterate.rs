//! Iterated pullbacks against matrix powers, and `(γ∘γ)* = (γ*)²`.

use serde::Serialize;

use super::jet::{JetBasis, Pullback};
use super::poly::PolyGermMap;
use crate::error::{Error, Result};
use crate::report::Check;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IterateReport {
    pub p: usize,
    pub d: u32,
    pub r: u32,
    pub checks: Vec<Check>,
}

impl IterateReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

/// On every basis element of the `(p, d)` jet space: `r` successive
/// pullbacks agree with the `r`-th power of the matrix of `γ*`, and pulling
/// back by `γ∘γ` agrees with pulling back twice. `γ∘γ` is truncated at
/// degree `d + 1`, which is all its differential needs at order `d`.
pub fn iterate_pullback_check(germ: &PolyGermMap, p: usize, d: u32, r: u32) -> Result<IterateReport> {
    if r == 0 {
        return Err(Error::InvalidInput("r must be at least 1".into()));
    }
    let basis = JetBasis::new(germ.n(), p, d)?;
    let mut pb = Pullback::new(germ, d);
    let g = pb.matrix(&basis)?;
    let gr = g.pow(r)?;

    let mut power_mismatch = Vec::new();
    for k in 0..basis.len() {
        let mut w = basis.form(k);
        for _ in 0..r {
            w = pb.apply(&w)?;
        }
        if w.to_vector(&basis)? != gr.column(k) {
            power_mismatch.push(k);
        }
    }

    let gg = germ.compose(germ, d + 1)?;
    let g2 = Pullback::new(&gg, d).matrix(&basis)?;
    let composition_ok = g2 == g.mul(&g)?;

    let dim = basis.len();
    let checks = vec![
        Check::new(
            "iterated_pullback_matches_power",
            power_mismatch.is_empty(),
            if power_mismatch.is_empty() {
                format!("{dim} basis forms, r = {r}")
            } else {
                format!("mismatch on basis elements {power_mismatch:?}")
            },
        ),
        Check::new(
            "composition_pullback",
            composition_ok,
            format!("(γ∘γ)* vs (γ*)² on {dim} basis forms"),
        ),
    ];
    Ok(IterateReport { p, d, r, checks })
}
