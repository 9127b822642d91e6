use kato_hodge::diamond::{render_diamond, BettiVector, HodgeDiamond, PartialHermitianTable};
use kato_hodge::kato::{kato_numbers, KatoInput};
use kato_hodge::modifications::ModificationSequence;
use kato_hodge::{Check, Error};
use serde::Serialize;

use crate::{read_input, to_json, Produced, RunConfig};

pub const REALIZABILITY_NOTE: &str =
    "numbers only: whether the centers of this sequence embed as stated is not checked";

#[derive(Serialize)]
struct HodgeOutput {
    n: usize,
    sequence: ModificationSequence,
    #[serde(skip_serializing_if = "Option::is_none")]
    hodge: Option<HodgeDiamond>,
    #[serde(skip_serializing_if = "Option::is_none")]
    betti: Option<BettiVector>,
    #[serde(skip_serializing_if = "Option::is_none")]
    bc: Option<PartialHermitianTable>,
    #[serde(skip_serializing_if = "Option::is_none")]
    aeppli: Option<PartialHermitianTable>,
    checks: Vec<Check>,
    notes: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    rendered: Option<String>,
}

pub(crate) fn run_hodge(config: &RunConfig) -> Result<Produced, String> {
    let text = read_input(config)?;
    let sequence: ModificationSequence =
        serde_json::from_str(&text).map_err(|e| format!("invalid modification sequence: {e}"))?;
    let input = KatoInput::new(sequence.clone()).map_err(|e| e.to_string())?;
    let mut out = HodgeOutput {
        n: input.n(),
        sequence,
        hodge: None,
        betti: None,
        bc: None,
        aeppli: None,
        checks: Vec::new(),
        notes: vec![REALIZABILITY_NOTE.to_string()],
        rendered: None,
    };
    match kato_numbers(&input) {
        Ok(report) => {
            out.checks.push(Check::pass("sequence_feasible", "every modified Hodge and Betti number is non-negative"));
            out.checks.extend(report.checks);
            out.notes.extend(report.notes);
            if config.render {
                out.rendered = Some(render_diamond(&report.hodge));
            }
            out.hodge = Some(report.hodge);
            out.betti = Some(report.betti);
            out.bc = Some(report.bc);
            out.aeppli = Some(report.aeppli);
        }
        Err(Error::Infeasible(msg)) => out.checks.push(Check::fail("sequence_feasible", msg)),
        Err(e) => return Err(e.to_string()),
    }

    let pass = out.checks.iter().all(|c| c.pass);
    let mut stderr = format!("note: {REALIZABILITY_NOTE}\n");
    for c in out.checks.iter().filter(|c| !c.pass) {
        stderr.push_str(&format!("check failed: {}: {}\n", c.name, c.detail));
    }
    Ok(Produced {
        payload: to_json(&out),
        pass,
        extra_stdout: out.rendered.clone().unwrap_or_default(),
        stderr,
    })
}
