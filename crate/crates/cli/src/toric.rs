use kato_hodge::diamond::{check_decomposition, render_diamond};
use kato_hodge::kato::blowup_points_kato;
use kato_hodge::toric::{
    fan_from_script, toric_kato_numbers, validate_fan, Fan, FanReport, ToricKatoNumbers,
};
use kato_hodge::{Check, Error};
use serde::{Deserialize, Serialize};

use crate::{read_input, to_json, Produced, RunConfig};

pub const SUPPORT_NOTE: &str =
    "the fan was given directly: that its support is the whole orthant is not checked";

/// Either an explicit fan or star subdivisions applied to the orthant.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub(crate) enum ToricInput {
    Script { n: usize, subdivisions: Vec<Vec<usize>> },
    Fan(Fan),
}

#[derive(Serialize)]
pub(crate) struct ToricOutput {
    pub fan: Fan,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub subdivisions: Option<Vec<Vec<usize>>>,
    pub validation: FanReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub numbers: Option<ToricKatoNumbers>,
    pub checks: Vec<Check>,
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rendered: Option<String>,
}

pub(crate) fn parse_toric(text: &str) -> Result<ToricInput, String> {
    serde_json::from_str(text).map_err(|e| format!("invalid fan or subdivision script: {e}"))
}

pub(crate) fn analyze(input: ToricInput, render: bool) -> Result<ToricOutput, String> {
    let (fan, script) = match input {
        ToricInput::Script { n, subdivisions } => {
            if n < 3 {
                return Err(Error::InvalidDimension(n).to_string());
            }
            (fan_from_script(n, &subdivisions).map_err(|e| e.to_string())?, Some(subdivisions))
        }
        ToricInput::Fan(fan) => (fan, None),
    };
    if fan.n < 3 {
        return Err(Error::InvalidDimension(fan.n).to_string());
    }
    let validation = validate_fan(&fan);
    let mut checks: Vec<Check> = validation.checks.clone();
    let mut notes = Vec::new();
    if script.is_none() {
        notes.push(SUPPORT_NOTE.to_string());
    }

    let numbers = match toric_kato_numbers(&fan) {
        Ok(t) => Some(t),
        Err(Error::InvalidFan(msg)) => {
            checks.push(Check::fail("toric_numbers", msg));
            None
        }
        Err(e) => return Err(e.to_string()),
    };

    if let Some(t) = &numbers {
        let dec = check_decomposition(&t.hodge, &t.betti).map_err(|e| e.to_string())?;
        checks.push(Check::new("hodge_decomposition", dec.pass, dec.to_string()));
        if let Some(script) = &script {
            if script.iter().all(|c| c.len() == fan.n) && !script.is_empty() {
                let (h, b) = blowup_points_kato(fan.n, script.len()).map_err(|e| e.to_string())?;
                checks.push(Check::new(
                    "matches_point_blowups",
                    h == t.hodge && b == t.betti,
                    format!("maximal-cone subdivisions: {}", script.len()),
                ));
            }
        }
    }

    Ok(ToricOutput {
        rendered: numbers.as_ref().filter(|_| render).map(|t| render_diamond(&t.hodge)),
        fan,
        subdivisions: script,
        validation,
        numbers,
        checks,
        notes,
    })
}

pub(crate) fn run_toric(config: &RunConfig) -> Result<Produced, String> {
    let out = analyze(parse_toric(&read_input(config)?)?, config.render)?;
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
        extra_stdout: out.rendered.clone().unwrap_or_default(),
        stderr,
    })
}
