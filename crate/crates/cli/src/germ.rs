use kato_hodge::germs::{
    beta_matrix, contraction_report, iterate_pullback_check, jet_dimension, neumann_basis_check,
    BasisNeumannReport, ContractionReport, IterateReport, OperatorReport, PolyGermMap,
};
use kato_hodge::{Check, Error};
use serde::Serialize;

use crate::{read_input, to_json, Produced, RunConfig};

pub const MAX_N: usize = 4;
pub const MAX_D: u32 = 5;
pub const MAX_TERMS: usize = 10_000;
/// Largest jet dimension for the exact inverse behind the Neumann check and
/// for the exact matrix powers behind the iterate check. The rank
/// certificate runs at every size.
pub const EXACT_DIM_CAP: usize = 140;
pub const ITERATE_POWER: u32 = 2;

#[derive(Serialize)]
struct OperatorOutput {
    p: usize,
    jet_dimension: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    operator: Option<OperatorReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    neumann: Option<BasisNeumannReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    iterate: Option<IterateReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    skipped: Option<String>,
}

#[derive(Serialize)]
struct GermOutput {
    n: usize,
    d: u32,
    terms: usize,
    germ: PolyGermMap,
    contraction: ContractionReport,
    operators: Vec<OperatorOutput>,
    checks: Vec<Check>,
    notes: Vec<String>,
}

fn validate(config: &RunConfig, n: usize) -> Result<Vec<usize>, String> {
    if n > MAX_N {
        return Err(format!("germ dimension {n} exceeds the cap n <= {MAX_N}"));
    }
    if config.d > MAX_D {
        return Err(format!("truncation order {} exceeds the cap d <= {MAX_D}", config.d));
    }
    if config.terms == 0 || config.terms > MAX_TERMS {
        return Err(format!("--terms must lie in 1..={MAX_TERMS}"));
    }
    match config.p {
        Some(p) if p > n => Err(format!("form degree {p} exceeds the dimension {n}")),
        Some(p) => Ok(vec![p]),
        None => Ok((0..=n).collect()),
    }
}

fn prefixed(p: usize, checks: &[Check]) -> impl Iterator<Item = Check> + '_ {
    checks.iter().map(move |c| Check {
        name: format!("p{p}/{}", c.name),
        ..c.clone()
    })
}

pub(crate) fn run_germ(config: &RunConfig) -> Result<Produced, String> {
    let germ: PolyGermMap =
        serde_json::from_str(&read_input(config)?).map_err(|e| format!("invalid germ: {e}"))?;
    let n = germ.n();
    let degrees = validate(config, n)?;
    let d = config.d;

    let contraction = contraction_report(&germ);
    let mut checks = vec![contraction.lemma_control.clone()];
    let mut notes = contraction.warnings.clone();
    let mut operators = Vec::new();

    for p in degrees {
        let dim = jet_dimension(n, p, d);
        let mut out = OperatorOutput {
            p,
            jet_dimension: dim,
            operator: None,
            neumann: None,
            iterate: None,
            skipped: None,
        };
        let analysis = match beta_matrix(&germ, p, d) {
            Ok(a) => a,
            Err(Error::NotAContraction(msg)) => {
                checks.push(Check::fail(format!("p{p}/first_order_contraction"), msg));
                operators.push(out);
                continue;
            }
            Err(e) => return Err(e.to_string()),
        };
        checks.extend(prefixed(p, &analysis.report.checks));

        if dim <= EXACT_DIM_CAP {
            let neumann = neumann_basis_check(&analysis, config.terms).map_err(|e| e.to_string())?;
            checks.extend(prefixed(p, &neumann.checks));
            let iterate =
                iterate_pullback_check(&germ, p, d, ITERATE_POWER).map_err(|e| e.to_string())?;
            checks.extend(prefixed(p, &iterate.checks));
            out.neumann = Some(neumann);
            out.iterate = Some(iterate);
        } else {
            let msg = format!(
                "jet dimension {dim} exceeds {EXACT_DIM_CAP}: Neumann and iterate checks skipped"
            );
            notes.push(format!("p={p}: {msg}"));
            out.skipped = Some(msg);
        }
        out.operator = Some(analysis.report);
        operators.push(out);
    }

    let out = GermOutput {
        n,
        d,
        terms: config.terms,
        germ,
        contraction,
        operators,
        checks,
        notes,
    };
    let pass = out.checks.iter().all(|c| c.pass);
    let mut stderr = String::new();
    for note in &out.notes {
        stderr.push_str(&format!("note: {note}\n"));
    }
    for c in out.checks.iter().filter(|c| !c.pass) {
        stderr.push_str(&format!("check failed: {}: {}\n", c.name, c.detail));
    }
    Ok(Produced {
        payload: to_json(&out),
        pass,
        extra_stdout: String::new(),
        stderr,
    })
}
