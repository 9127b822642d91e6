use std::fs;
use std::path::Path;

use kato_hodge::corpus::{all_maximal_subdivisions, builtin_fans, builtin_sequences};
use kato_hodge::diamond::{BettiVector, HodgeDiamond};
use kato_hodge::germs::scalar::real;
use kato_hodge::germs::{beta_matrix, contraction_report, germ_battery, neumann_basis_check, PolyGermMap};
use kato_hodge::kato::{blowup_points_kato, kato_numbers, KatoInput};
use kato_hodge::modifications::ModificationSequence;
use kato_hodge::toric::{cone_counts, orthant_fan, toric_cpn_hat_sums, toric_kato_numbers};
use kato_hodge::Check;
use serde::Deserialize;

use crate::toric::{analyze, ToricInput};
use crate::{read_file, Produced, RunConfig};

pub const MAX_GERM_COUNT: usize = 1000;

struct Suite {
    checks: Vec<Check>,
}

impl Suite {
    fn add(&mut self, prefix: &str, c: &Check) {
        self.checks.push(Check {
            name: format!("{prefix}/{}", c.name),
            ..c.clone()
        });
    }

    fn record(&mut self, name: impl Into<String>, pass: bool, detail: impl Into<String>) {
        self.checks.push(Check::new(name, pass, detail));
    }
}

fn sequences(s: &mut Suite) {
    for case in builtin_sequences() {
        let prefix = format!("hodge/{}", case.name);
        match kato_numbers(&case.input) {
            Ok(r) => {
                for c in &r.checks {
                    s.add(&prefix, c);
                }
                if let Some(rest) = case.name.strip_prefix("points_n") {
                    let (n, r_count) = rest.split_once("_r").expect("points_n<n>_r<r>");
                    let (n, r_count) = (n.parse().expect("n"), r_count.parse().expect("r"));
                    let (h, b) = blowup_points_kato(n, r_count).expect("closed form");
                    s.record(
                        format!("{prefix}/closed_form"),
                        h == r.hodge && b == r.betti,
                        format!("{r_count} point blow-ups in dimension {n}"),
                    );
                }
                if case.name == "elliptic_n4" {
                    let got = (r.hodge.entry(1, 2), r.hodge.entry(2, 1), r.betti.get(3));
                    s.record(
                        format!("{prefix}/elliptic_center"),
                        got == (1, 1, 2),
                        format!("(h^(1,2), h^(2,1), b_3) = {got:?}"),
                    );
                }
            }
            Err(e) => s.record(format!("{prefix}/sequence_feasible"), false, e.to_string()),
        }
    }
}

fn fans(s: &mut Suite) {
    for case in builtin_fans() {
        let prefix = format!("toric/{}", case.name);
        let input = ToricInput::Script {
            n: case.fan.n,
            subdivisions: case.script.clone(),
        };
        match analyze(input, false) {
            Ok(out) => {
                for c in &out.checks {
                    s.add(&prefix, c);
                }
            }
            Err(e) => s.record(format!("{prefix}/analysis"), false, e),
        }
    }
    for n in 3..=4 {
        for r in 0..=3 {
            let expected = if r == 0 {
                toric_kato_numbers(&orthant_fan(n).expect("orthant"))
                    .map(|t| (t.hodge, t.betti))
                    .expect("orthant numbers")
            } else {
                blowup_points_kato(n, r).expect("closed form")
            };
            let fans = all_maximal_subdivisions(n, r);
            let bad = fans
                .iter()
                .filter(|f| {
                    toric_kato_numbers(f).map_or(true, |t| (t.hodge, t.betti) != expected)
                })
                .count();
            s.record(
                format!("toric/maximal_n{n}_r{r}/matches_point_blowups"),
                bad == 0,
                format!("{} fans, {bad} mismatches", fans.len()),
            );
        }
    }
    for n in 1..=10 {
        let sums = toric_cpn_hat_sums(&cone_counts(&orthant_fan(n).expect("orthant")));
        s.record(
            format!("toric/orthant_n{n:02}/binomial_identity"),
            sums.iter().all(|&v| v == 1),
            format!("{sums:?}"),
        );
    }
}

fn germs(s: &mut Suite, seed: u64, count: usize, terms: usize) {
    for case in germ_battery(seed, count) {
        let n = case.germ.n();
        for p in 0..=n {
            let prefix = format!("germ/{:04}/p{p}", case.index);
            let a = match beta_matrix(&case.germ, p, case.d) {
                Ok(a) => a,
                Err(e) => {
                    s.record(format!("{prefix}/operator"), false, e.to_string());
                    continue;
                }
            };
            for c in &a.report.checks {
                s.add(&prefix, c);
            }
            let r = &a.report;
            let detail = format!("n={n} d={} dim={} rank={}", case.d, r.jet_dimension, r.rank);
            if p >= 1 {
                s.record(format!("{prefix}/beta_invertible"), r.invertible && !r.determinant_is_zero, detail);
            } else {
                s.record(
                    format!("{prefix}/beta_kernel_and_cokernel"),
                    r.kernel_dim == 1 && r.image_codim == 1,
                    format!("{detail} kernel={} codim={}", r.kernel_dim, r.image_codim),
                );
            }
            match neumann_basis_check(&a, terms) {
                Ok(nr) => nr.checks.iter().for_each(|c| s.add(&prefix, c)),
                Err(e) => s.record(format!("{prefix}/neumann"), false, e.to_string()),
            }
        }
    }

    let small = contraction_report(&PolyGermMap::scalar_multiple(3, real(1, 20)).expect("germ"));
    let c = &small.sufficient_conditions[1];
    s.record("germ/sufficiency/small_germ_holds", c.holds, format!("value {:.6}", c.value));
    let half = PolyGermMap::scalar_multiple(3, real(1, 2)).expect("germ");
    let c = contraction_report(&half).sufficient_conditions[1].clone();
    let invertible = beta_matrix(&half, 1, 3).is_ok_and(|a| a.report.invertible);
    s.record(
        "germ/sufficiency/half_fails_yet_invertible",
        !c.holds && invertible,
        format!("value {:.6}, invertible {invertible}", c.value),
    );
}

/// A corpus file: an input of either kind plus the numbers it must produce.
#[derive(Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
enum CorpusEntry {
    Hodge {
        input: ModificationSequence,
        #[serde(default)]
        expected: Expected,
    },
    Toric {
        input: serde_json::Value,
        #[serde(default)]
        expected: Expected,
    },
}

#[derive(Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct Expected {
    hodge: Option<HodgeDiamond>,
    betti: Option<BettiVector>,
}

fn compare(s: &mut Suite, prefix: &str, expected: &Expected, hodge: &HodgeDiamond, betti: &BettiVector) {
    if let Some(h) = &expected.hodge {
        s.record(format!("{prefix}/expected_hodge"), h == hodge, "computed diamond against expected");
    }
    if let Some(b) = &expected.betti {
        s.record(
            format!("{prefix}/expected_betti"),
            b == betti,
            format!("computed {:?}, expected {:?}", betti.as_slice(), b.as_slice()),
        );
    }
}

fn corpus_file(s: &mut Suite, path: &Path) {
    let stem = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    let prefix = format!("corpus/{stem}");
    let entry: CorpusEntry = match read_file(path).and_then(|t| serde_json::from_str(&t).map_err(|e| e.to_string())) {
        Ok(e) => e,
        Err(e) => return s.record(format!("{prefix}/parse"), false, e),
    };
    match entry {
        CorpusEntry::Hodge { input, expected } => {
            let report = KatoInput::new(input).and_then(|i| kato_numbers(&i));
            match report {
                Ok(r) => {
                    r.checks.iter().for_each(|c| s.add(&prefix, c));
                    compare(s, &prefix, &expected, &r.hodge, &r.betti);
                }
                Err(e) => s.record(format!("{prefix}/analysis"), false, e.to_string()),
            }
        }
        CorpusEntry::Toric { input, expected } => {
            let out = serde_json::from_value::<ToricInput>(input)
                .map_err(|e| e.to_string())
                .and_then(|i| analyze(i, false));
            match out {
                Ok(out) => {
                    out.checks.iter().for_each(|c| s.add(&prefix, c));
                    match &out.numbers {
                        Some(t) => compare(s, &prefix, &expected, &t.hodge, &t.betti),
                        None => s.record(format!("{prefix}/analysis"), false, "no numbers for an invalid fan"),
                    }
                }
                Err(e) => s.record(format!("{prefix}/analysis"), false, e),
            }
        }
    }
}

fn corpus_dir(s: &mut Suite, dir: &Path) -> Result<(), String> {
    let mut files: Vec<_> = fs::read_dir(dir)
        .map_err(|e| format!("cannot read corpus {}: {e}", dir.display()))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();
    for f in &files {
        corpus_file(s, f);
    }
    Ok(())
}

pub(crate) fn run_verify(config: &RunConfig) -> Result<Produced, String> {
    if config.germ_count > MAX_GERM_COUNT {
        return Err(format!("--germ-count exceeds {MAX_GERM_COUNT}"));
    }
    if config.terms == 0 || config.terms > crate::MAX_TERMS {
        return Err(format!("--terms must lie in 1..={}", crate::MAX_TERMS));
    }
    let mut s = Suite { checks: Vec::new() };
    if let Some(dir) = &config.corpus {
        corpus_dir(&mut s, dir)?;
    }
    sequences(&mut s);
    fans(&mut s);
    germs(&mut s, config.seed, config.germ_count, config.terms);

    s.checks.sort_by(|a, b| a.name.cmp(&b.name));
    let mut payload = String::new();
    for c in &s.checks {
        let status = if c.pass { "PASS" } else { "FAIL" };
        payload.push_str(&format!("{status} {}: {}\n", c.name, c.detail));
    }
    let failed = s.checks.iter().filter(|c| !c.pass).count();
    Ok(Produced {
        payload,
        pass: failed == 0,
        extra_stdout: String::new(),
        stderr: format!("{} checks, {failed} failed\n", s.checks.len()),
    })
}
